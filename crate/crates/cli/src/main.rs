use clap::Parser;

fn main() {
    let cli = bracket_cli::Cli::parse();
    std::process::exit(bracket_cli::run(&cli) as i32);
}
