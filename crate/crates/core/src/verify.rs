//! Named verification suites over one Coxeter type. Every check yields a
//! [`Check`] record; the order of records is fixed, so reports built from
//! them are reproducible.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{parabolic_agreement, WeylGroup};
use crate::invariants::{
    g6_corrected, ideals_equal, kim_invariants_a, kim_invariants_b, kim_invariants_d, special_invariants, standard_weights,
    variable_names,
};
use crate::nc::{first_nonvanishing, twisted_derivation, NcExpr};
use crate::nabla::{nabla_representation_check, Leibniz};
use crate::ops::{dunkl_family, BruhatRep, CommutingFamily, Normalization};
use crate::pieri::{degeneration_check, pieri_check, PieriKind};
use crate::poly::{parse_poly, symmetric_poly, MultiPoly, SymmetricKind};
use crate::relations::{
    check_relations, cyclic_relations, derivation_formula_check, derived_four_term, explicit_relations, generic_relations,
    simple_reflection_images, CyclicItem, Mode, Relation,
};
use crate::roots::{CoxeterType, Family};
use crate::scalar::Scalar;
use crate::schubert::{
    b2_table_identities, calogero_moser_check, check_degree_one, check_word_independence, coordinate_family, quantum_bgg_table,
    quantum_chevalley_check, schubert_polynomials, PolyAction,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Relations,
    CalogeroMoser,
    Dunkl,
    Invariants,
    Schubert,
    Span,
    Symmetric,
    Pieri,
    Lemmas,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Relations,
        Suite::CalogeroMoser,
        Suite::Dunkl,
        Suite::Invariants,
        Suite::Schubert,
        Suite::Span,
        Suite::Symmetric,
        Suite::Pieri,
        Suite::Lemmas,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::CalogeroMoser => "calogero-moser",
            Suite::Dunkl => "dunkl",
            Suite::Invariants => "invariants",
            Suite::Schubert => "schubert",
            Suite::Span => "span",
            Suite::Symmetric => "symmetric",
            Suite::Pieri => "pieri",
            Suite::Lemmas => "lemmas",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .iter()
            .copied()
            .find(|x| x.name() == s || (s == "cm" && *x == Suite::CalogeroMoser))
            .ok_or_else(|| Error::Unsupported(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Not applicable to this type or mode.
    Skip,
    /// Computed and reported without an assertion.
    Info,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

impl Check {
    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub mode: Mode,
    /// Degree bound for the span computation; `None` means `l(w0) + 1`.
    pub span_degree: Option<usize>,
    pub leibniz_samples: usize,
    pub seed: u64,
    pub timings: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            mode: Mode::Classical,
            span_degree: None,
            leibniz_samples: 100,
            seed: 20_240_601,
            timings: false,
        }
    }
}

struct Ctx<'a> {
    g: Arc<WeylGroup>,
    opts: &'a VerifyOptions,
    suite: Suite,
    out: Vec<Check>,
}

impl Ctx<'_> {
    fn run(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<(Status, String)>) -> Result<()> {
        let t = Instant::now();
        let (status, detail) = f()?;
        self.out.push(Check {
            suite: self.suite,
            name: name.into(),
            status,
            detail,
            millis: self.opts.timings.then(|| t.elapsed().as_millis() as u64),
        });
        Ok(())
    }

    fn skip(&mut self, name: impl Into<String>, why: impl Into<String>) {
        self.out.push(Check {
            suite: self.suite,
            name: name.into(),
            status: Status::Skip,
            detail: why.into(),
            millis: None,
        });
    }

    fn quantum(&self) -> bool {
        self.opts.mode == Mode::Quantum
    }
}

fn pass(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// Runs one suite. Requests that cannot be satisfied at all (quantum mode
/// for a non-crystallographic type) are errors; checks that do not apply
/// to the type are recorded as skipped.
pub fn run_suite(ctype: CoxeterType, suite: Suite, opts: &VerifyOptions) -> Result<Vec<Check>> {
    let g = Arc::new(WeylGroup::build(ctype)?);
    if opts.mode == Mode::Quantum {
        g.rs.quantum_data()?;
    }
    let mut ctx = Ctx {
        g,
        opts,
        suite,
        out: Vec::new(),
    };
    match suite {
        Suite::Relations => relations_suite(&mut ctx)?,
        Suite::CalogeroMoser => cm_suite(&mut ctx)?,
        Suite::Dunkl => dunkl_suite(&mut ctx)?,
        Suite::Invariants => invariants_suite(&mut ctx)?,
        Suite::Schubert => schubert_suite(&mut ctx)?,
        Suite::Span => span_suite(&mut ctx)?,
        Suite::Symmetric => symmetric_suite(&mut ctx)?,
        Suite::Pieri => pieri_suite(&mut ctx)?,
        Suite::Lemmas => lemmas_suite(&mut ctx)?,
    }
    Ok(ctx.out)
}

fn representation(g: &Arc<WeylGroup>, quantum: bool) -> Result<BruhatRep> {
    if quantum {
        BruhatRep::quantum(g.clone())
    } else {
        Ok(BruhatRep::classical(g.clone()))
    }
}

fn failure_detail(total: usize, failures: &[crate::relations::Failure]) -> String {
    match failures.first() {
        None => format!("{total} relations vanish"),
        Some(f) => format!("{} of {total} fail; first: {} on {}", failures.len(), f.relation, f.basis_element),
    }
}

fn relations_suite(ctx: &mut Ctx) -> Result<()> {
    let g = ctx.g.clone();
    let mode = ctx.opts.mode;
    let generic = generic_relations(&g, mode)?;
    let explicit = explicit_relations(&g.rs, mode)?;
    if mode == Mode::Multiparameter {
        let n = generic.len();
        ctx.run("multiparameter relations", || Ok((Status::Info, format!("{n} relations generated; no group-ring representation realizes them"))))?;
        return Ok(());
    }
    let rep = representation(&g, ctx.quantum())?;
    let label = if ctx.quantum() { "quantum Bruhat" } else { "Bruhat" };
    ctx.run(format!("generic relations, {label}"), || {
        let f = check_relations(&rep, &generic.relations)?;
        Ok((pass(f.is_empty()), failure_detail(generic.len(), &f)))
    })?;
    match &explicit {
        Some(set) => ctx.run(format!("explicit relations, {label}"), || {
            let f = check_relations(&rep, &set.relations)?;
            Ok((pass(f.is_empty()), failure_detail(set.len(), &f)))
        })?,
        None => ctx.skip(format!("explicit relations, {label}"), "no explicit list for this type"),
    }
    let images = simple_reflection_images(&g, &generic.relations);
    ctx.run(format!("W-stability, {label}"), || {
        let f = check_relations(&rep, &images)?;
        let status = if mode == Mode::Classical { pass(f.is_empty()) } else { Status::Info };
        Ok((status, failure_detail(images.len(), &f)))
    })?;
    let samples = ctx.opts.leibniz_samples;
    let seed = ctx.opts.seed;
    ctx.run("twisted Leibniz rule", || {
        let (ok, detail) = leibniz_samples(&g, samples, seed);
        Ok((pass(ok), detail))
    })?;
    Ok(())
}

/// Random word pairs `x, y` and roots `gamma`: checks
/// `D(xy) = D(x) y + s(x) D(y)` in the free algebra.
pub fn leibniz_samples(g: &WeylGroup, samples: usize, seed: u64) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.rs.num_positive();
    let word = |rng: &mut ChaCha8Rng| -> NcExpr {
        let len = rng.gen_range(1..=3);
        let w: Vec<u32> = (0..len).map(|_| rng.gen_range(0..n) as u32).collect();
        NcExpr::monomial(w, Scalar::from_int(rng.gen_range(1..=3)))
    };
    for i in 0..samples {
        let k = rng.gen_range(0..n);
        let x = word(&mut rng);
        let y = word(&mut rng);
        let s = g.reflections[k];
        let lhs = twisted_derivation(g, k, &(&x * &y));
        let rhs = &(&twisted_derivation(g, k, &x) * &y) + &(&x.act(g, s) * &twisted_derivation(g, k, &y));
        if lhs != rhs {
            return (false, format!("sample {i} fails for root {}", g.rs.labels[k]));
        }
    }
    (true, format!("{samples} samples"))
}

fn cm_suite(ctx: &mut Ctx) -> Result<()> {
    let g = ctx.g.clone();
    if g.rs.rank() > 3 {
        ctx.skip("Calogero-Moser", "checked for rank at most 3");
        return Ok(());
    }
    let action = PolyAction::new(g.clone());
    let top = g.length(g.longest()) as u32;
    let mut sets = vec![("generic", generic_relations(&g, Mode::Classical)?.relations)];
    if let Some(e) = explicit_relations(&g.rs, Mode::Classical)? {
        sets.push(("explicit", e.relations));
    }
    for (name, rels) in sets {
        ctx.run(format!("{name} relations, divided differences, degree <= {top}"), || {
            let r = calogero_moser_check(&action, &rels, top)?;
            let detail = match r.failures.first() {
                None => format!("{} relations on {} monomials", r.relations, r.monomials),
                Some(f) => format!("{} fail; first: {} on {}", r.failures.len(), f.relation, f.monomial),
            };
            Ok((pass(r.failures.is_empty()), detail))
        })?;
    }
    Ok(())
}

fn normalizations(ctype: CoxeterType) -> Vec<Normalization> {
    let mut v = vec![Normalization::Cartan, Normalization::Explicit];
    if ctype.family == Family::B {
        v.extend([0, 1, 3].map(Normalization::ScaledB));
    }
    v
}

fn dunkl_suite(ctx: &mut Ctx) -> Result<()> {
    let g = ctx.g.clone();
    let rep = representation(&g, ctx.quantum())?;
    for norm in normalizations(g.rs.ctype) {
        ctx.run(format!("commutativity, {norm:?}"), || {
            let fam = dunkl_family(&g, norm)?;
            Ok(match CommutingFamily::new(&rep, fam.theta) {
                Ok(_) => (Status::Pass, "pairwise commuting".into()),
                Err(Error::NonCommuting(i, j)) => (Status::Fail, format!("theta_{} and theta_{} do not commute", i + 1, j + 1)),
                Err(e) => return Err(e),
            })
        })?;
    }
    Ok(())
}

/// Kim-type invariants of the type, in the ring of the coordinate Dunkl
/// elements followed by `q_1..q_r`, with a display name for each.
pub fn invariant_list(ctype: CoxeterType) -> Result<Vec<(String, MultiPoly)>> {
    let n = ctype.rank;
    Ok(match ctype.family {
        Family::A => kim_invariants_a(n)?.polys.into_iter().enumerate().map(|(i, p)| (format!("E_{}", i + 1), p)).collect(),
        Family::B => kim_invariants_b(n)?.polys.into_iter().enumerate().map(|(i, p)| (format!("J^B_{}", i + 1), p)).collect(),
        Family::D => {
            let polys = kim_invariants_d(n)?.polys;
            let last = polys.len() - 1;
            polys
                .into_iter()
                .enumerate()
                .map(|(i, p)| (if i == last { "Jbar".to_string() } else { format!("J^D_{}", i + 1) }, p))
                .collect()
        }
        Family::G2 => {
            let s = special_invariants(ctype)?;
            vec![("g2".into(), s[0].clone()), ("g6".into(), s[1].clone())]
        }
        Family::I2 => {
            let s = special_invariants(ctype)?;
            let m = ctype.m.unwrap();
            vec![("f2".into(), s[0].clone()), (format!("f{m}"), s[1].clone())]
        }
    })
}

fn classical_limit(p: &MultiPoly, ncoords: usize) -> MultiPoly {
    let nq = p.nvars() - ncoords;
    p.specialize(&(ncoords..ncoords + nq).map(|i| (i, Scalar::zero())).collect::<Vec<_>>())
}

fn invariants_suite(ctx: &mut Ctx) -> Result<()> {
    let g = ctx.g.clone();
    let ctype = g.rs.ctype;
    let quantum = ctx.quantum();
    if quantum && ctype.family == Family::I2 {
        ctx.skip("dihedral invariants", "f2 and f_m are classical statements");
        return Ok(());
    }
    let rep = representation(&g, quantum)?;
    let theta = dunkl_family(&g, Normalization::Explicit)?.theta;
    let k = theta.len();
    let fam = CommutingFamily::new(&rep, theta)?;
    for (name, p) in invariant_list(ctype)? {
        let p = if quantum { p } else { classical_limit(&p, k) };
        ctx.run(format!("{name} vanishes"), || Ok((pass(fam.annihilates(&p)?), if quantum { "q generic" } else { "q = 0" }.into())))?;
    }
    if quantum && ctype.family == Family::G2 {
        ctx.run("g6 corrected (diagnostic)", || {
            Ok((Status::Info, format!("vanishes: {}", fam.annihilates(&g6_corrected())?)))
        })?;
    }
    if ctype == CoxeterType::d(4) {
        ctx.run("D4 printed invariants", || {
            let k = kim_invariants_d(4)?;
            let names = variable_names("e", 4, 4);
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            let j1 = parse_poly("-e1^2-e2^2-e3^2-e4^2+2q1+2q2+2q3+2q4", &refs).map_err(Error::Internal)?;
            let jbar = parse_poly("e1e2e3e4+q1e3e4+q2e1e4+q3e1e2-q4e1e2+q1q3-q1q4", &refs).map_err(Error::Internal)?;
            let ok = k.polys[0] == j1 && k.polys[3] == jbar;
            Ok((pass(ok), "J^D_1 and Jbar".into()))
        })?;
    }
    if ctype == CoxeterType::b(2) {
        ctx.run("B2 ideal equality", || {
            let k = kim_invariants_b(2)?;
            let names = variable_names("e", 2, 2);
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            let printed = vec![
                parse_poly("e1^2+e2^2-2q1-4q2", &refs).map_err(Error::Internal)?,
                parse_poly("e1^2e2^2+2q1e1e2-4q2e1^2+q1^2", &refs).map_err(Error::Internal)?,
            ];
            Ok((pass(ideals_equal(&k.polys, &printed, &standard_weights(2, 2))?), "graded ideal comparison".into()))
        })?;
    }
    Ok(())
}

fn schubert_suite(ctx: &mut Ctx) -> Result<()> {
    let g = ctx.g.clone();
    let action = PolyAction::new(g.clone());
    let table = schubert_polynomials(&action)?;
    let t2 = table.clone();
    ctx.run("BGG table", || {
        let tried = check_word_independence(&action, &t2, 4)?;
        Ok((Status::Pass, format!("{} polynomials, {tried} reduced words agree", t2.len())))
    })?;
    ctx.run("degree-one polynomials", || Ok((pass(check_degree_one(&action, &table)?), "X_s versus omega_s".into())))?;
    if !ctx.quantum() {
        return Ok(());
    }
    let rep = BruhatRep::quantum(g.clone())?;
    let qt = quantum_bgg_table(&g, &table, &rep)?;
    ctx.run("[P_w](e) = w", || {
        let fam = CommutingFamily::new(&rep, coordinate_family(&g))?;
        let e = crate::ops::basis_vector(rep.nq, 0);
        for (w, p) in qt.iter().enumerate() {
            let v = fam.apply_polynomial(p, &e)?;
            if v.len() != 1 || v.get(&w) != Some(&MultiPoly::one(rep.nq)) {
                return Ok((Status::Fail, format!("fails at {}", g.word_string(w))));
            }
        }
        Ok((Status::Pass, format!("{} elements", qt.len())))
    })?;
    ctx.run("quantum Chevalley formula", || {
        let r = quantum_chevalley_check(&g, &qt, &rep)?;
        let detail = match r.failures.first() {
            None => format!("{} pairs", r.pairs),
            Some(f) => format!("{} of {} fail; first at s{} {}", r.failures.len(), r.pairs, f.simple + 1, f.element),
        };
        Ok((pass(r.failures.is_empty()), detail))
    })?;
    if g.rs.ctype == CoxeterType::b(2) {
        let ids = b2_table_identities(&g, &rep)?;
        for id in ids {
            ctx.run(format!("B2 identity {} = {}", id.polynomial, id.expected), || Ok((pass(id.holds), id.value.clone())))?;
        }
    }
    Ok(())
}

fn span_suite(ctx: &mut Ctx) -> Result<()> {
    let g = ctx.g.clone();
    let rep = BruhatRep::classical(g.clone());
    let theta = dunkl_family(&g, Normalization::Explicit)?.theta;
    let fam = CommutingFamily::new(&rep, theta)?;
    let point = vec![Scalar::zero(); rep.nq];
    let degree = ctx.opts.span_degree.unwrap_or(g.length(g.longest()) + 1);
    let order = g.order();
    ctx.run(format!("span dimension equals |W| = {order}"), || {
        let r = crate::ops::span_dimension(&fam, &point, degree)?;
        let status = if !r.closed {
            Status::Fail
        } else {
            pass(r.total == order)
        };
        Ok((status, format!("dimension {} by degree {:?}", r.total, r.dims)))
    })?;
    Ok(())
}

fn symmetric_suite(ctx: &mut Ctx) -> Result<()> {
    let g = ctx.g.clone();
    if g.rs.ctype.family != Family::B {
        ctx.skip("power sums", "stated for type B");
        return Ok(());
    }
    let rep = BruhatRep::classical(g.clone());
    let n = g.rs.rank();
    let fam = CommutingFamily::new(&rep, coordinate_family(&g))?;
    for k in 1..=n {
        let p = symmetric_poly(SymmetricKind::Power, 2 * k, n + rep.nq, &(0..n).collect::<Vec<_>>());
        ctx.run(format!("p{} of the Dunkl elements vanishes", 2 * k), || Ok((pass(fam.annihilates(&p)?), "classical".into())))?;
    }
    Ok(())
}

fn pieri_suite(ctx: &mut Ctx) -> Result<()> {
    let g = ctx.g.clone();
    if g.rs.ctype.family != Family::B {
        ctx.skip("Pieri formulas", "stated for type B");
        return Ok(());
    }
    let n = g.rs.rank();
    let mut cases: Vec<(usize, usize, PieriKind)> = Vec::new();
    if n <= 3 {
        for m in 1..=n {
            for k in 1..=m {
                cases.push((m, k, PieriKind::Elementary));
            }
            cases.push((m, 2, PieriKind::Complete2));
            for k in (2 * n + 1 - m).max(1)..=8 {
                cases.push((m, k, PieriKind::CompleteVanish));
            }
        }
    } else if n == 4 {
        cases.extend([(2, 2, PieriKind::Elementary), (3, 2, PieriKind::Elementary), (1, 2, PieriKind::Complete2), (2, 2, PieriKind::Complete2)]);
    }
    if cases.is_empty() {
        ctx.skip("Pieri formulas", "checked for rank at most 4");
    }
    for (m, k, kind) in cases {
        let label = match kind {
            PieriKind::Elementary => format!("e_{k}(theta_1..theta_{m})"),
            PieriKind::Complete2 => format!("h_2(theta_1..theta_{m})"),
            PieriKind::CompleteVanish => format!("h_{k}(theta_1..theta_{m}) = 0"),
        };
        ctx.run(label, || {
            let r = pieri_check(&g, m, k, kind)?;
            let detail = match &r.witness {
                None => format!("{} right-hand terms", r.rhs_terms),
                Some(w) => format!("differs at {w}"),
            };
            Ok((pass(r.holds), detail))
        })?;
    }
    if n == 3 {
        for m in 1..=n {
            for k in 1..=m {
                ctx.run(format!("degenerations of e_{k}(theta_1..theta_{m})"), || {
                    let (d, a) = degeneration_check(n, m, k)?;
                    Ok((pass(d && a), format!("type D: {d}, type A: {a}")))
                })?;
            }
        }
    }
    Ok(())
}

fn evaluate_all(rep: &BruhatRep, rels: &[Relation]) -> (usize, Option<String>) {
    let mut bad = 0;
    let mut first = None;
    for r in rels {
        if let Some((w, _)) = first_nonvanishing(rep, &r.expr) {
            bad += 1;
            first.get_or_insert_with(|| format!("{} on {}", r.source, rep.group.word_string(w)));
        }
    }
    (bad, first)
}

/// Ordered tuples of distinct indices from `2..=n` of every length in `lens`.
pub fn index_tuples(n: usize, lens: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(n: usize, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for a in 2..=n {
            if !cur.contains(&a) {
                cur.push(a);
                rec(n, len, cur, out);
                cur.pop();
            }
        }
    }
    for &len in lens {
        rec(n, len, &mut Vec::new(), &mut out);
    }
    out
}

fn lemmas_suite(ctx: &mut Ctx) -> Result<()> {
    let g = ctx.g.clone();
    let ctype = g.rs.ctype;
    ctx.run("length bound 2(rho, gamma^vee) - 1 >= l(s_gamma)", || {
        let rows = g.lemma_length_bound();
        let bad: Vec<String> = rows.iter().filter(|r| !r.3).map(|r| g.rs.labels[r.0].clone()).collect();
        Ok((pass(bad.is_empty()), if bad.is_empty() { format!("{} roots", rows.len()) } else { format!("fails for {}", bad.join(", ")) }))
    })?;
    let parabolic: Vec<(CoxeterType, Vec<usize>)> = match (ctype.family, ctype.rank) {
        (Family::B, 3) => vec![(CoxeterType::b(2), vec![1, 2])],
        (Family::A, 3) => vec![(CoxeterType::a(2), vec![0, 1]), (CoxeterType::a(2), vec![1, 2])],
        _ => vec![],
    };
    for (small, subset) in parabolic {
        let sg = WeylGroup::build(small)?;
        for quantum in [false, true] {
            ctx.run(format!("parabolic {small} at {subset:?}, {}", if quantum { "quantum graph" } else { "Bruhat graph" }), || {
                Ok((pass(parabolic_agreement(&g, &subset, &sg, quantum)?), "arrow sets agree".into()))
            })?;
        }
    }
    let cyclic_lens: &[usize] = match (ctype.family, ctype.rank) {
        (Family::B, 3) => &[2],
        (Family::B, 4) => &[2, 3],
        (Family::D, 4) => &[2],
        _ => &[],
    };
    if !cyclic_lens.is_empty() {
        let rep = BruhatRep::classical(g.clone());
        let mut items = vec![("(1) cyclic", CyclicItem::Cyclic), ("(2) exchange", CyclicItem::Exchange)];
        if ctype.family == Family::B {
            items.push(("(3) symmetric", CyclicItem::Symmetric));
        }
        for (name, item) in items {
            ctx.run(format!("cyclic relations {name}"), || {
                let mut rels = Vec::new();
                for a in index_tuples(ctype.rank, cyclic_lens) {
                    rels.extend(cyclic_relations(&g.rs, &a, &[item])?);
                }
                let (bad, first) = evaluate_all(&rep, &rels);
                let detail = match first {
                    None => format!("{} relations vanish", rels.len()),
                    Some(f) => format!("{bad} of {} fail; first: {f}", rels.len()),
                };
                Ok((pass(bad == 0), detail))
            })?;
        }
    }
    if ctype == CoxeterType::b(4) {
        let rep = BruhatRep::classical(g.clone());
        ctx.run("derived four-term relation", || {
            let d = derived_four_term(&g, [2, 3, 4]);
            let vanish = first_nonvanishing(&rep, &d.derived).is_none();
            Ok((pass(vanish), format!("vanishes: {vanish}, equals the symmetric relation literally: {}", d.literal)))
        })?;
    }
    if ctype.family == Family::B {
        let rep = BruhatRep::classical(g.clone());
        ctx.run("derivation formulas", || {
            let (count, failures) = derivation_formula_check(&rep)?;
            Ok((pass(failures.is_empty()), format!("{count} formulas, {} fail", failures.len())))
        })?;
    }
    if ctype == CoxeterType::b(3) {
        for rule in [Leibniz::Left, Leibniz::Right] {
            let name = match rule {
                Leibniz::Left => "nabla representation on F^B_3, degree <= 4",
                Leibniz::Right => "nabla with mirrored Leibniz rule (diagnostic)",
            };
            ctx.run(name, || {
                let r = nabla_representation_check(3, 4, rule)?;
                let status = match rule {
                    Leibniz::Left => pass(r.relations_vanish()),
                    Leibniz::Right => Status::Info,
                };
                let first = r.failures.first().map(|f| format!("; first: {} on {}", f.relation, f.word)).unwrap_or_default();
                Ok((
                    status,
                    format!(
                        "{} of {} checks fail, ideal preserved: {}{first}",
                        r.failures.len(),
                        r.checks,
                        r.well_defined()
                    ),
                ))
            })?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn quantum_h3_is_rejected() {
        let opts = VerifyOptions {
            mode: Mode::Quantum,
            ..Default::default()
        };
        assert!(matches!(run_suite(CoxeterType::i2(5), Suite::Relations, &opts), Err(Error::NotCrystallographic(_))));
    }

    #[test]
    fn a1_quantum_relations_pass() {
        let opts = VerifyOptions {
            mode: Mode::Quantum,
            ..Default::default()
        };
        let checks = run_suite(CoxeterType::a(1), Suite::Relations, &opts).unwrap();
        assert!(checks.iter().all(|c| !c.failed()), "{checks:?}");
    }

    #[test]
    fn tuples() {
        assert_eq!(index_tuples(3, &[2]), vec![vec![2, 3], vec![3, 2]]);
        assert_eq!(index_tuples(4, &[3]).len(), 6);
    }
}
