//! Acceptance criteria, one PASS/FAIL line each. Every identity is exact;
//! the only numeric thresholds are the wall-clock budgets below.

use std::sync::Arc;
use std::time::{Duration, Instant};

use bracket_core::group::WeylGroup;
use bracket_core::invariants::{g6_corrected, kim_invariants_d, variable_names};
use bracket_core::nc::{first_nonvanishing, NcExpr};
use bracket_core::ops::{dunkl_family, BruhatRep, CommutingFamily, Normalization};
use bracket_core::pieri::{subsets, Pieri};
use bracket_core::poly::parse_poly;
use bracket_core::quotient::{bracket_presentation, expand_product, hilbert_series, Algebra, ExtraRelation, RelationList, DEFAULT_BUDGET};
use bracket_core::relations::{Letters, Mode};
use bracket_core::roots::CoxeterType;
use bracket_core::verify::{run_suite, Check, Status, Suite, VerifyOptions};
use bracket_core::{RootSystem, Scalar};

const RELATIONS_BUDGET: Duration = Duration::from_secs(5 * 60);
const D4_SPAN_BUDGET: Duration = Duration::from_secs(30 * 60);
const D5_HILBERT_BUDGET: Duration = Duration::from_secs(30 * 60);

#[derive(Default)]
struct Criterion {
    ok: bool,
    notes: Vec<String>,
}

impl Criterion {
    fn new() -> Criterion {
        Criterion { ok: true, notes: Vec::new() }
    }

    fn require(&mut self, what: impl Into<String>, holds: bool) {
        let what = what.into();
        if !holds {
            self.ok = false;
            self.notes.push(format!("FAILED: {what}"));
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    /// Every check must pass; skipped checks are listed, informational ones noted.
    fn checks(&mut self, label: &str, checks: &[Check]) {
        for c in checks {
            match c.status {
                Status::Pass => {}
                Status::Fail => self.require(format!("{label}: {}: {}", c.name, c.detail), false),
                Status::Skip | Status::Info => self.note(format!("{label}: {} ({:?}): {}", c.name, c.status, c.detail)),
            }
        }
    }

    fn error(&mut self, label: &str, e: bracket_core::Error) {
        self.require(format!("{label}: {e}"), false);
    }
}

fn ty(s: &str) -> CoxeterType {
    s.parse().unwrap()
}

fn suite(ctype: CoxeterType, s: Suite, mode: Mode) -> bracket_core::Result<Vec<Check>> {
    let opts = VerifyOptions { mode, ..VerifyOptions::default() };
    run_suite(ctype, s, &opts)
}

fn run_checks(c: &mut Criterion, t: &str, s: Suite, mode: Mode, keep: impl Fn(&Check) -> bool) {
    let label = format!("{t} {mode:?}");
    match suite(ty(t), s, mode) {
        Ok(checks) => {
            let kept: Vec<Check> = checks.into_iter().filter(|x| keep(x)).collect();
            if kept.is_empty() {
                c.require(format!("{label}: no {s:?} checks ran"), false);
            }
            c.checks(&label, &kept);
        }
        Err(e) => c.error(&label, e),
    }
}

const CRYSTALLOGRAPHIC: [&str; 10] = ["A1", "A2", "A3", "B2", "B3", "D4", "G2", "I2(3)", "I2(4)", "I2(6)"];
const DIHEDRAL_NONCRYSTALLOGRAPHIC: [&str; 3] = ["I2(5)", "I2(7)", "I2(8)"];

fn criterion_1() -> Criterion {
    let mut c = Criterion::new();
    let t0 = Instant::now();
    let relation_lists = |x: &Check| x.name.starts_with("generic relations") || x.name.starts_with("explicit relations");
    for t in CRYSTALLOGRAPHIC {
        for mode in [Mode::Classical, Mode::Quantum] {
            run_checks(&mut c, t, Suite::Relations, mode, relation_lists);
        }
    }
    for t in DIHEDRAL_NONCRYSTALLOGRAPHIC {
        run_checks(&mut c, t, Suite::Relations, Mode::Classical, relation_lists);
    }
    for t in ["A1", "A2", "A3", "B2", "B3", "G2", "I2(3)", "I2(4)", "I2(5)", "I2(6)", "I2(7)", "I2(8)"] {
        run_checks(&mut c, t, Suite::CalogeroMoser, Mode::Classical, |_| true);
    }
    let el = t0.elapsed();
    c.note(format!("elapsed {:.1} s (budget {} s)", el.as_secs_f64(), RELATIONS_BUDGET.as_secs()));
    c.require("runtime within budget", el <= RELATIONS_BUDGET);
    c
}

fn criterion_2() -> Criterion {
    let mut c = Criterion::new();
    for t in CRYSTALLOGRAPHIC {
        for mode in [Mode::Classical, Mode::Quantum] {
            run_checks(&mut c, t, Suite::Dunkl, mode, |_| true);
        }
    }
    for t in DIHEDRAL_NONCRYSTALLOGRAPHIC {
        run_checks(&mut c, t, Suite::Dunkl, Mode::Classical, |_| true);
    }
    // The scaled type-B family is part of the suite; make sure all three ran.
    if let Ok(checks) = suite(ty("B3"), Suite::Dunkl, Mode::Quantum) {
        let scaled = checks.iter().filter(|x| x.name.contains("ScaledB")).count();
        c.require(format!("three scaled type-B families checked (found {scaled})"), scaled == 3);
    }
    c
}

fn criterion_3() -> Criterion {
    let mut c = Criterion::new();
    let vanish = |x: &Check| x.name.ends_with("vanishes");
    for t in ["B2", "B3", "D4", "G2"] {
        run_checks(&mut c, t, Suite::Invariants, Mode::Quantum, vanish);
    }
    for m in 3..=7 {
        run_checks(&mut c, &format!("I2({m})"), Suite::Invariants, Mode::Classical, vanish);
    }
    let g = Arc::new(WeylGroup::build(CoxeterType::g2()).unwrap());
    let rep = BruhatRep::quantum(g.clone()).unwrap();
    let fam = CommutingFamily::new(&rep, dunkl_family(&g, Normalization::Explicit).unwrap().theta).unwrap();
    c.note(format!("diagnostic: corrected g6 vanishes: {}", fam.annihilates(&g6_corrected()).unwrap()));
    c
}

const D4_PRINTED: [(&str, &str); 4] = [
    ("J^D_1", "- e1^2- e2^2- e3^2- e4^2+2 q1 +2 q2 +2 q3 +2 q4"),
    (
        "J^D_2",
        "q3^2 +2 q1 e1 e2+ q4^2-2 q4 e3 e4 +2 q2 q4 +2 q3 e3 e4 + q2^2-2 q3 q4 +2 q1 q2 +4 q1 q3 +2 q2 q3 + q1^2 +4 q1 q4 \
         +2 q2 e2 e3 -2 q1 e3^2-2 q2 e4^2-2 q4 e1^2+ e1^2 e3^2-2 q2 e1^2 + e3^2 e4^2 + e1^2 e2^2-2 q1 e4^2 -2 q3 e1^2 \
         + e1^2 e4^2+ e2^2 e4 ^2 + e2^2 e3^2-2 q4 e2^2-2 q3 e2^2",
    ),
    (
        "J^D_3",
        "-2 q2 q3 e1^2- e1^2 e3^2 e4^2-2 q2 q4 e1^2+2 q4 e1^2 e2^2-2 q1 q2 e4 ^2 - e2^2 e3^2 e4^2+2 q3 e1 ^2 e2^2 \
         + 2 q1 e3^2 e4^2- e1^2 e2^2 e4^2+4 q1 q3 e3 e4 -4 q1 q3 q4 +2 q1 q3^2 +2 q2 e1^2 e4^2- e1^2 e2^2 e3^2+2 q3 q4 e1^2 \
         +2 q1 q2 q3 +2 q1 q2 q4+2 q3 q4 e2^2- q1^2 e4^2- q1^2 e3^2 +2 q4 q1^2- q4^2 e1^2+2 q4^2 q1 +2 q3 q1^2 \
         - q3^2 e1^2 - q3^2 e2^2- q2^2 e1^2- q2 ^2 e4^2- 2 q1 q2 e1 e3-2 q2 q3 e2 e4 -2 q1 e1 e2 e3^2 + 4 q1 q4 e1 e2 \
         +2 q4 e1^2 e3 e4-2 q2 e1^2 e2 e3 +4 q1 q3 e1 e2 -4 q1 q4 e3 e4- q4^2 e2^2-2 q3 e2^2 e3 e4 \
         -2 q1 e1 e2 e4^2 +2 q4 e2^2 e3 e4- 2 q3 e1^2 e3 e4+2 q2 q4 e2 e4 -2 q2 e2 e3 e4^2",
    ),
    ("Jbar", "e1 e2 e3 e4 + q1 e3 e4 + q2 e1 e4 + q3 e1 e2 - q4 e1 e2 + q1 q3 - q1 q4"),
];

fn criterion_4() -> Criterion {
    let mut c = Criterion::new();
    let k = kim_invariants_d(4).unwrap();
    let names = variable_names("e", 4, 4);
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    c.require("four D4 invariants", k.polys.len() == 4);
    for ((name, text), got) in D4_PRINTED.iter().zip(&k.polys) {
        let printed = parse_poly(text, &refs).unwrap();
        let same = &printed == got;
        c.require(format!("{name} matches term by term ({} printed terms, {} computed)", printed.len(), got.len()), same);
    }
    run_checks(&mut c, "B2", Suite::Invariants, Mode::Quantum, |x| x.name == "B2 ideal equality");
    c
}

fn criterion_5() -> Criterion {
    let mut c = Criterion::new();
    match suite(ty("B2"), Suite::Schubert, Mode::Quantum) {
        Ok(checks) => {
            let ids: Vec<Check> = checks.into_iter().filter(|x| x.name.starts_with("B2 identity")).collect();
            c.require(format!("five identities evaluated (found {})", ids.len()), ids.len() == 5);
            c.checks("B2", &ids);
        }
        Err(e) => c.error("B2", e),
    }
    c
}

fn criterion_6() -> Criterion {
    let mut c = Criterion::new();
    for t in ["A2", "B2", "G2"] {
        run_checks(&mut c, t, Suite::Schubert, Mode::Quantum, |x| x.name == "[P_w](e) = w" || x.name == "quantum Chevalley formula");
    }
    c
}

fn span_check(c: &mut Criterion, t: &str, expected: usize, assert: bool) {
    match suite(ty(t), Suite::Span, Mode::Classical) {
        Ok(checks) => {
            for x in &checks {
                c.note(format!("{t}: {} [{}]", x.detail, if x.status == Status::Pass { "equals |W|" } else { "differs from |W|" }));
            }
            if assert {
                c.require(format!("{t} span dimension {expected}"), checks.iter().all(|x| x.status == Status::Pass) && !checks.is_empty());
            }
        }
        Err(e) => c.error(t, e),
    }
}

fn criterion_7() -> Criterion {
    let mut c = Criterion::new();
    for (t, n) in [("A2", 6), ("A3", 24), ("B2", 8), ("B3", 48), ("I2(5)", 10), ("I2(7)", 14)] {
        span_check(&mut c, t, n, true);
    }
    let t0 = Instant::now();
    span_check(&mut c, "D4", 192, true);
    let el = t0.elapsed();
    c.note(format!("D4 elapsed {:.1} s (budget {} s)", el.as_secs_f64(), D4_SPAN_BUDGET.as_secs()));
    c.require("D4 within budget", el <= D4_SPAN_BUDGET);
    span_check(&mut c, "G2", 12, false);
    c
}

fn criterion_8() -> Criterion {
    let mut c = Criterion::new();
    match suite(ty("B3"), Suite::Symmetric, Mode::Classical) {
        Ok(checks) => {
            let names: Vec<&str> = checks.iter().map(|x| x.name.as_str()).collect();
            for p in ["p2", "p4", "p6"] {
                c.require(format!("{p} checked"), names.iter().any(|n| n.starts_with(p)));
            }
            c.checks("B3", &checks);
        }
        Err(e) => c.error("B3", e),
    }
    c
}

fn criterion_9() -> Criterion {
    let mut c = Criterion::new();
    for t in ["B2", "B3", "B4"] {
        run_checks(&mut c, t, Suite::Pieri, Mode::Classical, |_| true);
    }
    let g = Arc::new(WeylGroup::build(CoxeterType::b(4)).unwrap());
    let rep = BruhatRep::classical(g.clone());
    let mut p = Pieri::new(&g.rs).unwrap();
    let mut bad = Vec::new();
    for s in subsets(4) {
        let d = &p.k(2, &s).unwrap() - &p.k(1, &s).unwrap().pow(2);
        if first_nonvanishing(&rep, &d).is_some() {
            bad.push(format!("{s:?}"));
        }
    }
    c.require(format!("K_2(S) = K_1(S)^2 for all S in {{1..4}} (failing: {bad:?})"), bad.is_empty());

    let rs = RootSystem::build(CoxeterType::b(6)).unwrap();
    let l = Letters::new(&rs);
    let target: Vec<u32> = [(1, 2), (3, 4), (5, 6)].iter().map(|&(i, j)| l.bar(i, j).terms().next().unwrap().0[0]).collect();
    let mut p6 = Pieri::new(&rs).unwrap();
    let e3 = p6.elementary_rhs(6, 3).unwrap();
    let mult = p6.multiplicity(&e3, &target).unwrap();
    c.note(format!("multiplicity of ~[1,2]~[3,4]~[5,6] in the e_3 expansion: {mult}"));
    let direct = direct_e3(&rs);
    let direct_mult = p6.multiplicity(&direct, &target).unwrap();
    c.note(format!("diagnostic: multiplicity in sum theta_a theta_b theta_c: {direct_mult}"));
    let k3 = p6.k(3, &[1, 2, 3, 4, 5, 6]).unwrap();
    c.note(format!("diagnostic: multiplicity in K_3({{1..6}}): {}", p6.multiplicity(&k3, &target).unwrap()));
    c.require("multiplicity in the e_3 expansion equals 4", mult == Scalar::from_int(4));
    c
}

/// `e_3` of the coordinate Dunkl elements of `B6` expanded in the free algebra.
fn direct_e3(rs: &RootSystem) -> NcExpr {
    let theta: Vec<NcExpr> = (0..rs.dim())
        .map(|i| {
            let mut e = NcExpr::zero();
            for k in 0..rs.num_positive() {
                let c = &rs.coroots[k][i];
                if !c.is_zero() {
                    e.add_scaled(&NcExpr::gen(k), c);
                }
            }
            e
        })
        .collect();
    let mut out = NcExpr::zero();
    for a in 0..6 {
        for b in a + 1..6 {
            let ab = &theta[a] * &theta[b];
            for t in &theta[b + 1..] {
                out += &(&ab * t);
            }
        }
    }
    out
}

fn hilbert(c: &mut Criterion, t: &str, algebra: Algebra, list: RelationList, extra: &[ExtraRelation], max_degree: usize, expected: &[usize]) -> Duration {
    let t0 = Instant::now();
    let g = WeylGroup::build(ty(t)).unwrap();
    let result = bracket_presentation(&g, algebra, list, extra).and_then(|p| hilbert_series(&p, algebra, max_degree, DEFAULT_BUDGET));
    let el = t0.elapsed();
    match result {
        Ok(r) => {
            let got: Vec<usize> = (0..expected.len()).map(|d| r.coefficient(d).unwrap_or(usize::MAX)).collect();
            c.note(format!("{t} {algebra:?}: {:?} in {:.1} s", r.coefficients(), el.as_secs_f64()));
            c.require(format!("{t} {algebra:?} = {expected:?} (cutoff {:?})", r.cutoff), got == expected && r.cutoff.is_none());
        }
        Err(e) => c.error(t, e),
    }
    el
}

fn criterion_10() -> Criterion {
    let mut c = Criterion::new();
    hilbert(&mut c, "D4", Algebra::Commutative, RelationList::Generic, &[], 13, &[1, 12, 50, 84, 48, 0]);
    let el = hilbert(&mut c, "D5", Algebra::Commutative, RelationList::Generic, &[], 21, &[1, 20, 150, 520, 824, 480, 0]);
    c.require("D5 within budget", el <= D5_HILBERT_BUDGET);
    let mut b2: Vec<usize> = expand_product(&[vec![1, 1], vec![1, 1], vec![1, 1], vec![1, 1], vec![1, 0, 1], vec![1, 0, 1]])
        .into_iter()
        .map(|x| x as usize)
        .collect();
    b2.push(0);
    hilbert(&mut c, "B2", Algebra::Free, RelationList::Explicit, &[ExtraRelation::B2Quartic], 9, &b2);
    let lhs = expand_product(&[vec![1, 2], vec![1, 4], vec![1, 6, 6]]);
    let mut rhs = expand_product(&[vec![1, 1], vec![1, 3], vec![1, 3], vec![1, 5]]);
    rhs[4] += 3;
    c.require("D4 factorizations agree with 1,12,50,84,48", lhs == [1, 12, 50, 84, 48] && rhs == lhs);
    c.note("rational and F_p eliminations are compared in every degree; a mismatch aborts with an error");
    c
}

fn criterion_11() -> Criterion {
    let mut c = Criterion::new();
    for t in ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "D5", "G2", "I2(3)", "I2(4)", "I2(6)"] {
        run_checks(&mut c, t, Suite::Lemmas, Mode::Classical, |x| x.name.starts_with("length bound"));
    }
    for t in ["B3", "A3"] {
        run_checks(&mut c, t, Suite::Lemmas, Mode::Classical, |x| x.name.starts_with("parabolic"));
    }
    for t in ["B3", "B4", "D4"] {
        run_checks(&mut c, t, Suite::Lemmas, Mode::Classical, |x| x.name.starts_with("cyclic"));
    }
    run_checks(&mut c, "B4", Suite::Lemmas, Mode::Classical, |x| x.name == "derived four-term relation");
    run_checks(&mut c, "B3", Suite::Lemmas, Mode::Classical, |x| x.name == "derivation formulas" || x.name.starts_with("nabla"));
    c
}

fn criterion_12() -> Criterion {
    let mut c = Criterion::new();
    let runs = [("B2", Suite::Relations, Mode::Quantum), ("B3", Suite::Pieri, Mode::Classical), ("G2", Suite::Schubert, Mode::Quantum), ("I2(5)", Suite::Dunkl, Mode::Classical)];
    for (t, s, mode) in runs {
        let a = suite(ty(t), s, mode).map(|x| serde_json::to_vec(&x).unwrap());
        let b = suite(ty(t), s, mode).map(|x| serde_json::to_vec(&x).unwrap());
        c.require(format!("{t} {s:?} {mode:?} reports identical"), a.is_ok() && a == b);
    }
    let g = WeylGroup::build(ty("A3")).unwrap();
    let p = bracket_presentation(&g, Algebra::Free, RelationList::Generic, &[]).unwrap();
    let a = serde_json::to_vec(&hilbert_series(&p, Algebra::Free, 4, DEFAULT_BUDGET).unwrap()).unwrap();
    let b = serde_json::to_vec(&hilbert_series(&p, Algebra::Free, 4, DEFAULT_BUDGET).unwrap()).unwrap();
    c.require("A3 free Hilbert report identical", a == b);
    c
}

/// Failures analysed in the decisions ledger. A criterion containing one of
/// these still prints FAIL; the process only exits nonzero for failures not
/// listed here, or when a listed failure no longer occurs.
const KNOWN_RED: [(usize, &str); 6] = [
    (1, "I2(5) Classical: generic relations, divided differences"),
    (1, "I2(7) Classical: generic relations, divided differences"),
    (3, "G2 Quantum: g6 vanishes"),
    (9, "multiplicity in the e_3 expansion equals 4"),
    (11, "cyclic relations (2) exchange"),
    (11, "nabla representation on F^B_3"),
];

fn main() {
    let criteria: [(&str, fn() -> Criterion); 12] = [
        ("relations vanish in the Bruhat, quantum Bruhat and divided-difference representations", criterion_1),
        ("Dunkl elements commute", criterion_2),
        ("quantum invariants vanish on the Dunkl elements", criterion_3),
        ("printed D4 invariants and the B2 ideal", criterion_4),
        ("B2 quantum Schubert identities", criterion_5),
        ("quantum BGG table and quantum Chevalley formula", criterion_6),
        ("span dimension equals the group order", criterion_7),
        ("even power sums vanish in B3", criterion_8),
        ("Pieri formulas", criterion_9),
        ("Hilbert series of graded quotients", criterion_10),
        ("structural lemmas", criterion_11),
        ("determinism", criterion_12),
    ];
    let mut failed = 0;
    let mut unexpected = Vec::new();
    let mut seen = [false; KNOWN_RED.len()];
    for (i, (title, f)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let c = f();
        let tag = if c.ok { "PASS" } else { "FAIL" };
        println!("{tag} criterion {:>2}: {title} ({:.1} s)", i + 1, t0.elapsed().as_secs_f64());
        for n in &c.notes {
            println!("       {n}");
        }
        if !c.ok {
            failed += 1;
        }
        for n in c.notes.iter().filter_map(|n| n.strip_prefix("FAILED: ")) {
            match KNOWN_RED.iter().position(|&(k, pat)| k == i + 1 && n.contains(pat)) {
                Some(j) => seen[j] = true,
                None => unexpected.push(format!("criterion {}: {n}", i + 1)),
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    for (j, &(k, pat)) in KNOWN_RED.iter().enumerate() {
        if !seen[j] {
            unexpected.push(format!("criterion {k}: documented failure {pat:?} did not occur"));
        }
    }
    if !unexpected.is_empty() {
        for u in &unexpected {
            println!("UNEXPECTED {u}");
        }
        std::process::exit(1);
    }
    println!("all failures are documented");
}
