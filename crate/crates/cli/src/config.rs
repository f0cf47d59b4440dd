//! Run configuration: an optional TOML file merged with command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use bracket_core::pieri::PieriKind;
use bracket_core::quotient::{Algebra, ExtraRelation, RelationList, DEFAULT_BUDGET};
use bracket_core::relations::Mode;
use bracket_core::roots::{CoxeterType, RootSystem};
use bracket_core::scalar::Scalar;
use bracket_core::verify::Suite;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Environment variable naming the directory that receives reports when no
/// output path is given.
pub const OUTPUT_DIR_VAR: &str = "BRACKET_OUTPUT_DIR";

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl Format {
    pub fn extension(&self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum TableKind {
    Schubert,
    QuantumSchubert,
    Gw,
    Invariants,
    Relations,
    Dunkl,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct HilbertConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<Algebra>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<RelationList>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra: Vec<ExtraRelation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct PieriConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<PieriKind>,
}

/// Everything a run depends on. Unset fields take the documented defaults
/// when the run starts, so a file only needs the fields it changes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Family letter (`A`, `B`, `D`, `G`, `I2`) or a full name such as `B3` or `I2(5)`.
    #[serde(rename = "type", default, skip_serializing_if = "Option::is_none")]
    pub type_name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    /// Values for `q1, q2, ...` applied to emitted quantum tables, as
    /// integers or fractions (`"1/2"`).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub q: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<Suite>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span_degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leibniz_samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<TableKind>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub hilbert: HilbertConfig,
    #[serde(default, skip_serializing_if = "is_default")]
    pub pieri: PieriConfig,
}

fn is_default<T: Default + PartialEq>(x: &T) -> bool {
    *x == T::default()
}

fn pick<T: Clone>(flag: &Option<T>, file: &Option<T>) -> Option<T> {
    flag.clone().or_else(|| file.clone())
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        RunConfig::from_toml(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn from_toml(text: &str) -> Result<RunConfig, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configuration serializes")
    }

    /// Flags in `self` win over values in `file`.
    pub fn over(&self, file: &RunConfig) -> RunConfig {
        RunConfig {
            type_name: pick(&self.type_name, &file.type_name),
            rank: pick(&self.rank, &file.rank),
            m: pick(&self.m, &file.m),
            mode: pick(&self.mode, &file.mode),
            q: {
                let mut q = file.q.clone();
                q.extend(self.q.clone());
                q
            },
            suites: if self.suites.is_empty() { file.suites.clone() } else { self.suites.clone() },
            output: pick(&self.output, &file.output),
            format: pick(&self.format, &file.format),
            max_degree: pick(&self.max_degree, &file.max_degree),
            budget: pick(&self.budget, &file.budget),
            span_degree: pick(&self.span_degree, &file.span_degree),
            seed: pick(&self.seed, &file.seed),
            leibniz_samples: pick(&self.leibniz_samples, &file.leibniz_samples),
            threads: pick(&self.threads, &file.threads),
            timings: pick(&self.timings, &file.timings),
            table: pick(&self.table, &file.table),
            hilbert: HilbertConfig {
                algebra: pick(&self.hilbert.algebra, &file.hilbert.algebra),
                relations: pick(&self.hilbert.relations, &file.hilbert.relations),
                extra: if self.hilbert.extra.is_empty() { file.hilbert.extra.clone() } else { self.hilbert.extra.clone() },
            },
            pieri: PieriConfig {
                m: pick(&self.pieri.m, &file.pieri.m),
                k: pick(&self.pieri.k, &file.pieri.k),
                kind: pick(&self.pieri.kind, &file.pieri.kind),
            },
        }
    }

    pub fn coxeter_type(&self) -> Result<CoxeterType, CliError> {
        let name = self.type_name.as_deref().ok_or_else(|| CliError::Config("no type given (use --type)".into()))?;
        let upper = name.trim().to_ascii_uppercase();
        let has_digits = upper.chars().any(|c| c.is_ascii_digit());
        let full = match upper.as_str() {
            "I2" | "I" => format!("I2({})", self.m.ok_or_else(|| CliError::Config("I2 needs --m".into()))?),
            "G" => "G2".to_string(),
            _ if has_digits => upper.clone(),
            _ => format!("{upper}{}", self.rank.ok_or_else(|| CliError::Config(format!("type {name} needs --rank")))?),
        };
        let t: CoxeterType = full.parse().map_err(|e: bracket_core::Error| CliError::Config(e.to_string()))?;
        if has_digits || upper == "G" {
            if let Some(r) = self.rank {
                if r != t.rank {
                    return Err(CliError::Config(format!("--rank {r} contradicts type {t}")));
                }
            }
        }
        Ok(t)
    }

    pub fn mode(&self) -> Mode {
        self.mode.unwrap_or(Mode::Classical)
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn budget(&self) -> usize {
        self.budget.unwrap_or(DEFAULT_BUDGET)
    }

    pub fn timings(&self) -> bool {
        self.timings.unwrap_or(false)
    }

    /// Type and mode checks that must fail before any computation.
    pub fn validate(&self) -> Result<(CoxeterType, RootSystem), CliError> {
        let t = self.coxeter_type()?;
        if self.mode() != Mode::Classical && !t.crystallographic() {
            return Err(CliError::Config(format!("{t} is not crystallographic; only classical mode is available")));
        }
        let rs = RootSystem::build(t).map_err(|e| CliError::Config(e.to_string()))?;
        if self.mode() == Mode::Quantum {
            rs.quantum_data().map_err(|e| CliError::Config(e.to_string()))?;
        }
        self.q_point(rs.rank())?;
        if self.threads == Some(0) {
            return Err(CliError::Config("--threads must be positive".into()));
        }
        Ok((t, rs))
    }

    /// The q-specialization as `(variable index, value)` pairs, with
    /// `q1` the first parameter.
    pub fn q_point(&self, nq: usize) -> Result<Vec<(usize, Scalar)>, CliError> {
        let mut out = Vec::new();
        for (name, value) in &self.q {
            let i: usize = name
                .strip_prefix('q')
                .and_then(|s| s.parse().ok())
                .filter(|&i| (1..=nq).contains(&i))
                .ok_or_else(|| CliError::Config(format!("unknown parameter {name:?} (expected q1..q{nq})")))?;
            out.push((i - 1, parse_rational(value).ok_or_else(|| CliError::Config(format!("bad value {value:?} for {name}")))?));
        }
        Ok(out)
    }
}

/// `"3"`, `"-2"` or `"1/2"`.
pub fn parse_rational(s: &str) -> Option<Scalar> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (i64, i64) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
            (b != 0).then(|| Scalar::from_ratio(a, b))
        }
        None => s.parse().ok().map(Scalar::from_int),
    }
}
