//! Defining relations of the bracket algebras and their quantizations,
//! generated from rank-2 subsystems and from the explicit type-specific
//! lists, together with the cyclic relations of type B.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::WeylGroup;
use crate::nc::{evaluate_basis, twisted_derivation, NcExpr};
use crate::ops::{gvec_add_scaled, BruhatRep, GVec};
use crate::poly::{Monomial, MultiPoly};
use crate::roots::{Family, RootSystem};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Classical,
    Quantum,
    Multiparameter,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "classical" => Ok(Mode::Classical),
            "quantum" => Ok(Mode::Quantum),
            "multiparameter" => Ok(Mode::Multiparameter),
            _ => Err(Error::Unsupported(format!("unknown mode {s:?}"))),
        }
    }
}

/// Right-hand side of a relation `expr = value`: zero, a monomial in the
/// `q_s`, or the independent parameter `Q_gamma` of a positive root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Central {
    Zero,
    Q(Vec<u16>),
    Param(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub expr: NcExpr,
    pub value: Central,
    pub source: String,
    pub subsystem: Option<usize>,
}

impl Relation {
    fn new(expr: NcExpr, source: impl Into<String>) -> Relation {
        Relation {
            expr,
            value: Central::Zero,
            source: source.into(),
            subsystem: None,
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.expr.homogeneous_degree()
    }

    pub fn format(&self, rs: &RootSystem, nq: usize) -> String {
        let lhs = self.expr.format(&rs.labels);
        match &self.value {
            Central::Zero => format!("{lhs} = 0"),
            Central::Q(e) => {
                let names: Vec<String> = (1..=nq).map(|i| format!("q{i}")).collect();
                let names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
                format!("{lhs} = {}", MultiPoly::term(Monomial::from_exps(e), Scalar::one()).format_with(&names))
            }
            Central::Param(k) => format!("{lhs} = Q[{}]", rs.labels[*k]),
        }
    }

    pub fn to_json(&self, rs: &RootSystem) -> serde_json::Value {
        serde_json::json!({
            "source": self.source,
            "subsystem": self.subsystem,
            "expr": self.expr.to_json(),
            "value": self.value,
            "text": self.format(rs, rs.rank()),
        })
    }
}

#[derive(Clone, Debug)]
pub struct RelationSet {
    pub mode: Mode,
    pub relations: Vec<Relation>,
    /// Value of `[gamma]^2` for every positive root.
    pub squares: Vec<Central>,
}

impl RelationSet {
    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn to_json(&self, rs: &RootSystem) -> serde_json::Value {
        serde_json::json!({
            "type": rs.ctype.to_string(),
            "mode": self.mode,
            "labels": rs.labels,
            "relations": self.relations.iter().map(|r| r.to_json(rs)).collect::<Vec<_>>(),
        })
    }
}

/// Square values per positive root in the given mode.
pub fn square_values(rs: &RootSystem, mode: Mode) -> Result<Vec<Central>> {
    if mode != Mode::Classical && !rs.ctype.crystallographic() {
        return Err(Error::NotCrystallographic(rs.ctype.to_string()));
    }
    let n = rs.num_positive();
    Ok((0..n)
        .map(|k| match mode {
            Mode::Classical => Central::Zero,
            Mode::Multiparameter => Central::Param(k),
            Mode::Quantum => match rs.simple_index.iter().position(|&i| i == k) {
                Some(s) => {
                    let mut e = vec![0u16; rs.rank()];
                    e[s] = 1;
                    Central::Q(e)
                }
                None => Central::Zero,
            },
        })
        .collect())
}

/// Removes relations that coincide up to sign, keeping the first occurrence.
fn dedup(rels: Vec<Relation>) -> Vec<Relation> {
    let mut seen: BTreeSet<Vec<(Vec<u32>, String)>> = BTreeSet::new();
    let mut out = Vec::new();
    for r in rels {
        if r.expr.is_zero() && r.value == Central::Zero {
            continue;
        }
        let key: Vec<(Vec<u32>, String)> = r.expr.normalized().terms().map(|(w, c)| (w.clone(), c.to_string())).collect();
        let mut key = key;
        key.push((Vec::new(), format!("{:?}", r.value)));
        if seen.insert(key) {
            out.push(r);
        }
    }
    out
}

fn square_relations(rs: &RootSystem, squares: &[Central]) -> Vec<Relation> {
    (0..rs.num_positive())
        .map(|k| Relation {
            expr: NcExpr::gen(k).pow(2),
            value: squares[k].clone(),
            source: "square".into(),
            subsystem: None,
        })
        .collect()
}

/// The relations of the definition, instantiated on every rank-2
/// subsystem in both angular orientations: squares, the quadratic
/// relations `sum_{i=0}^{m-1} [g_i][g_{i+k}] = 0` for `1 <= k <= m/2`
/// with `g_{j+m} = -g_j`, and the four-term relations for `m >= 4`
/// (guarded by the length condition outside classical mode).
pub fn generic_relations(g: &WeylGroup, mode: Mode) -> Result<RelationSet> {
    let rs = &g.rs;
    let squares = square_values(rs, mode)?;
    let mut rels = square_relations(rs, &squares);
    let heights = if mode == Mode::Classical { None } else { Some(rs.quantum_data()?.heights.clone()) };
    for (si, sub) in rs.rank2_subsystems().iter().enumerate() {
        let m = sub.m;
        for orientation in [false, true] {
            let mut order = sub.roots.clone();
            if orientation {
                order.reverse();
            }
            let at = |j: usize| -> (usize, bool) { (order[j % m], (j / m) % 2 == 0) };
            for k in 1..=m / 2 {
                let mut e = NcExpr::zero();
                for i in 0..m {
                    e += &NcExpr::signed_word(&[at(i), at(i + k)]);
                }
                rels.push(Relation {
                    expr: e,
                    value: Central::Zero,
                    source: format!("quadratic k={k}"),
                    subsystem: Some(si),
                });
            }
            if m >= 4 {
                let k = m / 2 - 1;
                let mid = at(k);
                if let Some(h) = &heights {
                    let len = g.length(g.reflections[mid.0]) as i64;
                    if len == 2 * h[mid.0] - 1 {
                        continue;
                    }
                }
                let fwd: Vec<(usize, bool)> = (0..=2 * k).map(at).collect();
                let bwd: Vec<(usize, bool)> = fwd.iter().rev().copied().collect();
                let cat = |a: &[(usize, bool)], b: &[(usize, bool)]| -> Vec<(usize, bool)> { a.iter().chain(b).copied().collect() };
                let mut e = NcExpr::zero();
                e += &NcExpr::signed_word(&cat(&[mid], &fwd));
                e += &NcExpr::signed_word(&cat(&fwd, &[mid]));
                e += &NcExpr::signed_word(&cat(&[mid], &bwd));
                e += &NcExpr::signed_word(&cat(&bwd, &[mid]));
                rels.push(Relation {
                    expr: e,
                    value: Central::Zero,
                    source: "four-term".into(),
                    subsystem: Some(si),
                });
            }
        }
    }
    Ok(RelationSet {
        mode,
        relations: dedup(rels),
        squares,
    })
}

/// Named generators of the classical types in the orthonormal basis:
/// `[i,j] = e_i - e_j`, `~[i,j] = e_i + e_j`, `[i] = e_i` (1-based).
pub struct Letters<'a> {
    rs: &'a RootSystem,
    index: HashMap<String, usize>,
}

impl<'a> Letters<'a> {
    pub fn new(rs: &'a RootSystem) -> Letters<'a> {
        Letters {
            rs,
            index: rs.labels.iter().enumerate().map(|(k, l)| (l.clone(), k)).collect(),
        }
    }

    fn get(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// `[i,j]`, with `[j,i] = -[i,j]`.
    pub fn br(&self, i: usize, j: usize) -> NcExpr {
        assert_ne!(i, j, "[i,i] is not a root");
        let (a, b, pos) = if i < j { (i, j, true) } else { (j, i, false) };
        NcExpr::signed_gen(self.get(&format!("[{a},{b}]")).unwrap_or_else(|| panic!("no root [{a},{b}] in {}", self.rs.ctype)), pos)
    }

    /// `~[i,j] = ~[j,i]`.
    pub fn bar(&self, i: usize, j: usize) -> NcExpr {
        assert_ne!(i, j, "~[i,i] is not a root");
        let (a, b) = (i.min(j), i.max(j));
        NcExpr::gen(self.get(&format!("~[{a},{b}]")).unwrap_or_else(|| panic!("no root ~[{a},{b}] in {}", self.rs.ctype)))
    }

    /// `[i]` (type B only).
    pub fn single(&self, i: usize) -> NcExpr {
        NcExpr::gen(self.get(&format!("[{i}]")).unwrap_or_else(|| panic!("no root [{i}] in {}", self.rs.ctype)))
    }

    /// `{i,j}`: `[i,j]` when `barred` is false, `~[i,j]` otherwise.
    pub fn brace(&self, i: usize, j: usize, barred: bool) -> NcExpr {
        if barred {
            self.bar(i, j)
        } else {
            self.br(i, j)
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.get(label)
    }
}

fn prod(xs: &[NcExpr]) -> NcExpr {
    xs.iter().fold(NcExpr::one(), |acc, x| &acc * x)
}

fn comm(a: &NcExpr, b: &NcExpr) -> NcExpr {
    &(a * b) - &(b * a)
}

/// The explicit list for type B_n (n >= 2).
fn explicit_b(rs: &RootSystem, squares: &[Central]) -> Vec<Relation> {
    let n = rs.ctype.rank;
    let l = Letters::new(rs);
    let mut rels = square_relations(rs, squares);
    let idx: Vec<usize> = (1..=n).collect();
    for &i in &idx {
        for &j in &idx {
            for &k in &idx {
                for &m in &idx {
                    if i == j || k == m || [i, j].contains(&k) || [i, j].contains(&m) {
                        continue;
                    }
                    rels.push(Relation::new(comm(&l.br(i, j), &l.br(k, m)), "(2)"));
                    rels.push(Relation::new(comm(&l.bar(i, j), &l.br(k, m)), "(2)"));
                    rels.push(Relation::new(comm(&l.bar(i, j), &l.bar(k, m)), "(2)"));
                }
            }
        }
    }
    for &i in &idx {
        for &j in &idx {
            if i == j {
                continue;
            }
            rels.push(Relation::new(comm(&l.single(i), &l.single(j)), "(3)"));
            rels.push(Relation::new(comm(&l.br(i, j), &l.bar(i, j)), "(3)"));
            for &k in &idx {
                if k != i && k != j {
                    rels.push(Relation::new(comm(&l.br(i, j), &l.single(k)), "(3)"));
                    rels.push(Relation::new(comm(&l.bar(i, j), &l.single(k)), "(3)"));
                }
            }
        }
    }
    rels.extend(three_term_families(&l, n));
    for &i in &idx {
        for &j in &idx {
            if i == j {
                continue;
            }
            let (x, b, s) = (l.br(i, j), l.bar(i, j), l.single(i));
            rels.push(Relation::new(
                &(&(&prod(&[l.br(i, j), s.clone()]) + &prod(&[l.single(j), l.br(j, i)])) + &prod(&[s.clone(), b.clone()])) + &prod(&[b.clone(), l.single(j)]),
                "(4)",
            ));
            if i < j {
                rels.push(Relation::new(
                    &(&(&prod(&[x.clone(), s.clone(), b.clone(), s.clone()]) + &prod(&[b.clone(), s.clone(), x.clone(), s.clone()]))
                        + &prod(&[s.clone(), x.clone(), s.clone(), b.clone()]))
                        + &prod(&[s.clone(), b.clone(), s.clone(), x.clone()]),
                    "(5)",
                ));
            }
        }
    }
    rels
}

/// The two three-term families shared by types B and D.
fn three_term_families(l: &Letters, n: usize) -> Vec<Relation> {
    let mut rels = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if i == j || j == k || i == k {
                    continue;
                }
                let a = &(&(&l.br(i, j) * &l.br(j, k)) + &(&l.br(j, k) * &l.br(k, i))) + &(&l.br(k, i) * &l.br(i, j));
                rels.push(Relation::new(a, "(4)"));
                let b = &(&(&l.bar(i, k) * &l.br(i, j)) + &(&l.br(j, i) * &l.bar(j, k))) + &(&l.bar(k, j) * &l.bar(i, k));
                rels.push(Relation::new(b, "(4)"));
            }
        }
    }
    rels
}

/// The explicit list for type D_n.
fn explicit_d(rs: &RootSystem, squares: &[Central]) -> Vec<Relation> {
    let n = rs.ctype.rank;
    let l = Letters::new(rs);
    let mut rels = square_relations(rs, squares);
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for m in 1..=n {
                    if i == j || k == m || [i, j].contains(&k) || [i, j].contains(&m) {
                        continue;
                    }
                    rels.push(Relation::new(comm(&l.br(i, j), &l.br(k, m)), "(2)"));
                    rels.push(Relation::new(comm(&l.bar(i, j), &l.br(k, m)), "(2)"));
                    rels.push(Relation::new(comm(&l.bar(i, j), &l.bar(k, m)), "(2)"));
                }
            }
            if i != j {
                rels.push(Relation::new(comm(&l.br(i, j), &l.bar(i, j)), "(3)"));
            }
        }
    }
    rels.extend(three_term_families(&l, n));
    rels
}

/// The explicit list for type B_2 in the letters `[12]`, `~[12]`, `[1]`, `[2]`.
fn explicit_b2(rs: &RootSystem, squares: &[Central]) -> Vec<Relation> {
    let l = Letters::new(rs);
    let (x, b, s1, s2) = (l.br(1, 2), l.bar(1, 2), l.single(1), l.single(2));
    let mut rels = square_relations(rs, squares);
    rels.push(Relation::new(comm(&x, &b), "(ii)"));
    rels.push(Relation::new(comm(&s1, &s2), "(ii)"));
    let sum = |ts: Vec<NcExpr>| ts.iter().fold(NcExpr::zero(), |acc, t| &acc + t);
    rels.push(Relation::new(
        sum(vec![&x * &s1, -&(&s2 * &x), &s1 * &b, &b * &s2]),
        "(iii)",
    ));
    rels.push(Relation::new(
        sum(vec![&s1 * &x, -&(&x * &s2), &b * &s1, &s2 * &b]),
        "(iii)",
    ));
    rels.push(Relation::new(
        sum(vec![
            prod(&[x.clone(), s1.clone(), b.clone(), s1.clone()]),
            prod(&[b.clone(), s1.clone(), x.clone(), s1.clone()]),
            prod(&[s1.clone(), x.clone(), s1.clone(), b.clone()]),
            prod(&[s1.clone(), b.clone(), s1.clone(), x.clone()]),
        ]),
        "(iv)",
    ));
    rels
}

/// The explicit list for G2 in the letters `a..f`.
fn explicit_g2(rs: &RootSystem, squares: &[Central]) -> Vec<Relation> {
    let idx: HashMap<char, usize> = rs.labels.iter().enumerate().map(|(k, l)| (l.chars().next().unwrap(), k)).collect();
    let w = |s: &str| -> NcExpr { NcExpr::monomial(s.chars().map(|c| idx[&c] as u32).collect(), Scalar::one()) };
    let sum = |s: &str| -> NcExpr { s.split('+').fold(NcExpr::zero(), |acc, t| &acc + &w(t)) };
    let eq = |l: &str, r: &str| -> NcExpr { &sum(l) - &sum(r) };
    let mut rels = square_relations(rs, squares);
    for (l, r) in [
        ("ea", "ce+ac"),
        ("ae", "ec+ca"),
        ("fb", "df+bd"),
        ("bf", "fd+db"),
        ("eb", "be"),
        ("cf", "fc"),
        ("ad", "da"),
        ("af", "ba+cb+dc+ed+fe"),
        ("fa", "ab+bc+cd+de+ef"),
    ] {
        rels.push(Relation::new(eq(l, r), "(2)"));
    }
    for s in ["bcdefd+dbcdef+fedcbd+dfedcb", "fabcdb+bfabcd+dcbafb+bdcbaf", "defabf+fdefab+bafedf+fbafed"] {
        rels.push(Relation::new(sum(s), "(3)"));
    }
    rels
}

/// The explicit relation list of types B, D and G2, if there is one.
pub fn explicit_relations(rs: &RootSystem, mode: Mode) -> Result<Option<RelationSet>> {
    let squares = square_values(rs, mode)?;
    let rels = match (rs.ctype.family, rs.ctype.rank) {
        (Family::B, 2) => {
            let mut r = explicit_b2(rs, &squares);
            r.extend(explicit_b(rs, &squares));
            r
        }
        (Family::B, _) => explicit_b(rs, &squares),
        (Family::D, n) if n >= 3 => explicit_d(rs, &squares),
        (Family::G2, _) => explicit_g2(rs, &squares),
        _ => return Ok(None),
    };
    Ok(Some(RelationSet {
        mode,
        relations: dedup(rels),
        squares,
    }))
}

/// `expr(w) - value * w` in a group-ring representation.
pub fn relation_residual(rep: &BruhatRep, rel: &Relation, w: usize) -> Result<GVec> {
    let mut v = evaluate_basis(rep, &rel.expr, w);
    match &rel.value {
        Central::Zero => {}
        Central::Q(e) => {
            let mut single = GVec::new();
            single.insert(w, MultiPoly::term(Monomial::from_exps(e), Scalar::one()));
            gvec_add_scaled(&mut v, &single, &MultiPoly::constant(rep.nq, Scalar::from_int(-1)));
        }
        Central::Param(_) => {
            return Err(Error::Unsupported("no group-ring representation realizes independent square parameters".into()));
        }
    }
    Ok(v)
}

/// A relation that does not vanish, with the witness basis element.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub relation: String,
    pub source: String,
    pub basis_element: String,
    pub residual: String,
}

/// Checks every relation on every basis vector. Relations are evaluated
/// in parallel; the result lists the failures in relation order.
pub fn check_relations(rep: &BruhatRep, rels: &[Relation]) -> Result<Vec<Failure>> {
    use rayon::prelude::*;
    let g = &rep.group;
    let names: Vec<String> = (1..=rep.nq).map(|i| format!("q{i}")).collect();
    let names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let out: Vec<Result<Option<Failure>>> = rels
        .par_iter()
        .map(|rel| {
            for w in 0..rep.dim() {
                let v = relation_residual(rep, rel, w)?;
                if !v.is_empty() {
                    let residual = v.iter().map(|(u, c)| format!("({})*{}", c.format_with(&names), g.word_string(*u))).collect::<Vec<_>>().join(" + ");
                    return Ok(Some(Failure {
                        relation: rel.format(&g.rs, rep.nq),
                        source: rel.source.clone(),
                        basis_element: g.word_string(w),
                        residual,
                    }));
                }
            }
            Ok(None)
        })
        .collect();
    let mut failures = Vec::new();
    for r in out {
        if let Some(f) = r? {
            failures.push(f);
        }
    }
    Ok(failures)
}

/// Images of the relations under every simple reflection.
pub fn simple_reflection_images(g: &WeylGroup, rels: &[Relation]) -> Vec<Relation> {
    let mut out = Vec::new();
    for i in 0..g.rs.rank() {
        let s = g.rmul_simple(0, i);
        for r in rels {
            out.push(Relation {
                expr: r.expr.act(g, s),
                value: r.value.clone(),
                source: format!("s{} . {}", i + 1, r.source),
                subsystem: r.subsystem,
            });
        }
    }
    out
}

/// Generic and explicit relation lists must both vanish in every supplied
/// representation; the first failure of either list is an error.
pub fn cross_check(g: &WeylGroup, mode: Mode, reps: &[&BruhatRep]) -> Result<(usize, usize)> {
    let generic = generic_relations(g, mode)?;
    let Some(explicit) = explicit_relations(&g.rs, mode)? else {
        return Ok((generic.len(), 0));
    };
    for rep in reps {
        for (name, set) in [("generic", &generic), ("explicit", &explicit)] {
            if let Some(f) = check_relations(rep, &set.relations)?.into_iter().next() {
                return Err(Error::Internal(format!(
                    "{} list inconsistent with the {} representation: {} fails on {}",
                    name,
                    if rep.quantum { "quantum Bruhat" } else { "Bruhat" },
                    f.relation,
                    f.basis_element
                )));
            }
        }
    }
    Ok((generic.len(), explicit.len()))
}

/// Which of the cyclic families to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CyclicItem {
    Cyclic,
    Exchange,
    Symmetric,
}

/// `A(a_1..a_k) = sum_j (-1)^(j-1) [1,a_j]..[1,a_k] [1] ~[1,a_1]..~[1,a_j]`
/// (with `barred = false`) and the overlined variant with the roles of
/// `[1,a]` and `~[1,a]` exchanged and signs `(-1)^(k-j)`.
pub fn a_element(l: &Letters, a: &[usize], barred: bool) -> NcExpr {
    let k = a.len();
    let mut out = NcExpr::zero();
    for j in 1..=k {
        let mut factors: Vec<NcExpr> = (j..=k).map(|m| l.brace(1, a[m - 1], barred)).collect();
        factors.push(l.single(1));
        factors.extend((1..=j).map(|m| l.brace(1, a[m - 1], !barred)));
        let sign = if barred { (k - j) % 2 } else { (j - 1) % 2 };
        out.add_scaled(&prod(&factors), &Scalar::from_int(if sign == 0 { 1 } else { -1 }));
    }
    out
}

/// Cyclic relations for the distinct indices `a_1..a_k` in `2..=n`, over all
/// assignments of `[1,a_m]` or `~[1,a_m]` to the braces. The symmetric
/// item involves `[1]` and is produced only in type B.
pub fn cyclic_relations(rs: &RootSystem, a: &[usize], items: &[CyclicItem]) -> Result<Vec<Relation>> {
    let n = rs.ctype.rank;
    let k = a.len();
    if !matches!(rs.ctype.family, Family::B | Family::D) {
        return Err(Error::Unsupported("cyclic relations exist for types B and D".into()));
    }
    let distinct: BTreeSet<usize> = a.iter().copied().collect();
    if k == 0 || distinct.len() != k || a.iter().any(|&x| x < 2 || x > n) {
        return Err(Error::Unsupported(format!("indices {a:?} must be distinct and lie in 2..={n}")));
    }
    let l = Letters::new(rs);
    let mut rels = Vec::new();
    for mask in 0..(1u32 << k) {
        let brace = |m: usize, flip: bool| -> NcExpr { l.brace(1, a[m], ((mask >> m) & 1 == 1) != flip) };
        if items.contains(&CyclicItem::Cyclic) {
            let mut e = NcExpr::zero();
            for c in 0..k {
                let factors: Vec<NcExpr> = (0..=k).map(|t| brace((c + t) % k, false)).collect();
                e += &prod(&factors);
            }
            rels.push(Relation::new(e, format!("cyclic {a:?} mask {mask:b}")));
        }
        if items.contains(&CyclicItem::Exchange) {
            let mut e = NcExpr::zero();
            for j in 0..k {
                let mut lhs: Vec<NcExpr> = (j..k).map(|m| brace(m, false)).collect();
                lhs.extend((0..=j).map(|m| brace(m, true)));
                e += &prod(&lhs);
                let mut rhs = vec![brace(j, true)];
                rhs.extend((j + 1..k).map(|m| brace(m, false)));
                rhs.extend((0..j).map(|m| brace(m, true)));
                rhs.push(brace(j, false));
                e -= &prod(&rhs);
            }
            rels.push(Relation::new(e, format!("exchange {a:?} mask {mask:b}")));
        }
    }
    if items.contains(&CyclicItem::Symmetric) {
        if rs.ctype.family != Family::B {
            return Err(Error::Unsupported("the symmetric cyclic relation needs the generator [1]".into()));
        }
        let s = &a_element(&l, a, false) + &a_element(&l, a, true);
        let one = l.single(1);
        rels.push(Relation::new(&(&one * &s) + &(&s * &one), format!("symmetric {a:?}")));
    }
    Ok(rels)
}

/// Result of applying `D_[a2,a3] D_[a1,a2]` to the four-term relation in
/// type B_n, compared with the symmetric cyclic relation for `(a1,a2,a3)`.
pub struct DerivedRelation {
    pub derived: NcExpr,
    pub target: NcExpr,
    /// The two expressions coincide in the free algebra.
    pub literal: bool,
}

pub fn derived_four_term(g: &WeylGroup, a: [usize; 3]) -> DerivedRelation {
    let rs = &g.rs;
    let l = Letters::new(rs);
    let (one, x, b) = (l.single(1), l.br(1, a[0]), l.bar(1, a[0]));
    let r4 = &(&(&prod(&[one.clone(), x.clone(), one.clone(), b.clone()]) + &prod(&[x.clone(), one.clone(), b.clone(), one.clone()]))
        + &prod(&[one.clone(), b.clone(), one.clone(), x.clone()]))
        + &prod(&[b.clone(), one.clone(), x.clone(), one.clone()]);
    let root_index = |e: &NcExpr| -> (usize, Scalar) {
        let (w, c) = e.terms().next().unwrap();
        (w[0] as usize, c.clone())
    };
    let apply = |e: &NcExpr, gen: &NcExpr| -> NcExpr {
        let (k, c) = root_index(gen);
        twisted_derivation(g, k, e).scale(&c)
    };
    let first = apply(&r4, &l.br(a[0], a[1]));
    let derived = apply(&first, &l.br(a[1], a[2]));
    let s = &a_element(&l, &a, false) + &a_element(&l, &a, true);
    let target = &(&one * &s) + &(&s * &one);
    let literal = derived == target || derived == -&target;
    DerivedRelation { derived, target, literal }
}

/// Letters of the subalgebra generated by `x_i = [i,n]`, `y_i = ~[i,n]`, `z = [n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum XyzLetter {
    X(usize),
    Y(usize),
    Z,
}

/// Root types of the subsystem `B_{n-1}` acting by twisted derivations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubRoot {
    /// `[i,j]` with `i < j`.
    Minus(usize, usize),
    /// `~[i,j]` with `i < j`.
    Plus(usize, usize),
    Short(usize),
}

impl SubRoot {
    pub fn from_label(label: &str) -> Option<SubRoot> {
        let (bar, body) = match label.strip_prefix('~') {
            Some(b) => (true, b),
            None => (false, label),
        };
        let inner = body.strip_prefix('[')?.strip_suffix(']')?;
        let parts: Vec<usize> = inner.split(',').map(|p| p.parse().ok()).collect::<Option<Vec<_>>>()?;
        match (bar, parts.as_slice()) {
            (false, [i]) => Some(SubRoot::Short(*i)),
            (false, [i, j]) => Some(SubRoot::Minus(*i, *j)),
            (true, [i, j]) => Some(SubRoot::Plus(*i, *j)),
            _ => None,
        }
    }

    /// Image of a letter under the reflection in this root, with its sign.
    pub fn reflect(&self, l: XyzLetter) -> (XyzLetter, bool) {
        use XyzLetter::*;
        match (*self, l) {
            (_, Z) => (Z, true),
            (SubRoot::Minus(i, j), X(k)) => (X(swap(i, j, k)), true),
            (SubRoot::Minus(i, j), Y(k)) => (Y(swap(i, j, k)), true),
            (SubRoot::Plus(i, j), X(k)) if k == i || k == j => (Y(swap(i, j, k)), false),
            (SubRoot::Plus(i, j), Y(k)) if k == i || k == j => (X(swap(i, j, k)), false),
            (SubRoot::Short(i), X(k)) if k == i => (Y(i), false),
            (SubRoot::Short(i), Y(k)) if k == i => (X(i), false),
            (_, other) => (other, true),
        }
    }

    /// The displayed derivation formulas: image of a letter as a signed
    /// combination of two-letter words.
    pub fn derivation(&self, l: XyzLetter) -> Vec<(Vec<XyzLetter>, i64)> {
        use XyzLetter::*;
        match (*self, l) {
            (_, Z) => vec![],
            (SubRoot::Minus(i, j), X(k)) if k == i => vec![(vec![X(i), X(j)], -1)],
            (SubRoot::Minus(i, j), X(k)) if k == j => vec![(vec![X(j), X(i)], 1)],
            (SubRoot::Minus(i, j), Y(k)) if k == i => vec![(vec![Y(i), Y(j)], -1)],
            (SubRoot::Minus(i, j), Y(k)) if k == j => vec![(vec![Y(j), Y(i)], 1)],
            (SubRoot::Plus(i, j), X(k)) if k == i => vec![(vec![X(i), Y(j)], 1)],
            (SubRoot::Plus(i, j), X(k)) if k == j => vec![(vec![X(j), Y(i)], 1)],
            (SubRoot::Plus(i, j), Y(k)) if k == i => vec![(vec![Y(i), X(j)], 1)],
            (SubRoot::Plus(i, j), Y(k)) if k == j => vec![(vec![Y(j), X(i)], 1)],
            (SubRoot::Short(i), X(k)) if k == i => vec![(vec![X(i), Z], 1), (vec![Z, Y(i)], -1)],
            (SubRoot::Short(i), Y(k)) if k == i => vec![(vec![Z, X(i)], 1), (vec![Y(i), Z], -1)],
            _ => vec![],
        }
    }
}

fn swap(i: usize, j: usize, k: usize) -> usize {
    if k == i {
        j
    } else if k == j {
        i
    } else {
        k
    }
}

/// A mismatch between a twisted derivation and its displayed formula.
#[derive(Clone, Debug, Serialize)]
pub struct FormulaFailure {
    pub root: String,
    pub letter: String,
    pub basis_element: String,
}

/// Compares `D_gamma(l)` with the displayed formula for every root of
/// `B_{n-1}` and every letter `x_i, y_i, z` in the Bruhat representation of `B_n`.
pub fn derivation_formula_check(rep: &BruhatRep) -> Result<(usize, Vec<FormulaFailure>)> {
    let g = &rep.group;
    let rs = &g.rs;
    if rs.ctype.family != Family::B {
        return Err(Error::Unsupported("the derivation formulas are stated for type B".into()));
    }
    let n = rs.ctype.rank;
    let l = Letters::new(rs);
    let to_expr = |x: XyzLetter| -> NcExpr {
        match x {
            XyzLetter::X(i) => l.br(i, n),
            XyzLetter::Y(i) => l.bar(i, n),
            XyzLetter::Z => l.single(n),
        }
    };
    let mut letters: Vec<XyzLetter> = (1..n).flat_map(|i| [XyzLetter::X(i), XyzLetter::Y(i)]).collect();
    letters.push(XyzLetter::Z);
    let mut count = 0;
    let mut failures = Vec::new();
    for k in 0..rs.num_positive() {
        let Some(root) = SubRoot::from_label(&rs.labels[k]) else { continue };
        let inside = match root {
            SubRoot::Minus(i, j) | SubRoot::Plus(i, j) => i < n && j < n,
            SubRoot::Short(i) => i < n,
        };
        if !inside {
            continue;
        }
        for &x in &letters {
            let lhs = twisted_derivation(g, k, &to_expr(x));
            let mut rhs = NcExpr::zero();
            for (word, c) in root.derivation(x) {
                rhs.add_scaled(&prod(&word.iter().map(|&y| to_expr(y)).collect::<Vec<_>>()), &Scalar::from_int(c));
            }
            count += 1;
            if let Some((w, _)) = crate::nc::first_nonvanishing(rep, &(&lhs - &rhs)) {
                failures.push(FormulaFailure {
                    root: rs.labels[k].clone(),
                    letter: format!("{x:?}"),
                    basis_element: g.word_string(w),
                });
            }
        }
    }
    Ok((count, failures))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::CoxeterType;
    use std::sync::Arc;

    fn group(t: CoxeterType) -> Arc<WeylGroup> {
        Arc::new(WeylGroup::build(t).unwrap())
    }

    #[test]
    fn a2_quadratic_relations() {
        let g = group(CoxeterType::a(2));
        let set = generic_relations(&g, Mode::Classical).unwrap();
        let quad: Vec<&Relation> = set.relations.iter().filter(|r| r.source.starts_with("quadratic")).collect();
        assert_eq!(quad.len(), 2);
        assert!(quad.iter().all(|r| r.expr.len() == 3));
        assert_eq!(set.relations.len(), 5);
    }

    #[test]
    fn generic_relations_vanish() {
        for (t, q) in [(CoxeterType::a(3), true), (CoxeterType::b(2), true), (CoxeterType::g2(), true), (CoxeterType::i2(5), false)] {
            let g = group(t);
            let rep = BruhatRep::classical(g.clone());
            let set = generic_relations(&g, Mode::Classical).unwrap();
            assert!(check_relations(&rep, &set.relations).unwrap().is_empty(), "{t}");
            if q {
                let rep = BruhatRep::quantum(g.clone()).unwrap();
                let set = generic_relations(&g, Mode::Quantum).unwrap();
                assert!(check_relations(&rep, &set.relations).unwrap().is_empty(), "{t} quantum");
            }
        }
    }

    #[test]
    fn b2_explicit_list_contains_printed_four_term() {
        let g = group(CoxeterType::b(2));
        let set = explicit_relations(&g.rs, Mode::Quantum).unwrap().unwrap();
        assert!(set.relations.iter().any(|r| r.source == "(iv)"));
        let rep = BruhatRep::quantum(g.clone()).unwrap();
        assert!(check_relations(&rep, &set.relations).unwrap().is_empty());
    }

    #[test]
    fn g2_list_contains_fb() {
        let g = group(CoxeterType::g2());
        let set = explicit_relations(&g.rs, Mode::Quantum).unwrap().unwrap();
        let texts: Vec<String> = set.relations.iter().map(|r| r.format(&g.rs, 2)).collect();
        assert!(texts.iter().any(|t| t.contains("fb") && t.contains("df") && t.contains("bd")));
        let rep = BruhatRep::quantum(g.clone()).unwrap();
        assert!(check_relations(&rep, &set.relations).unwrap().is_empty());
    }

    #[test]
    fn cyclic_relations_vanish_in_b3() {
        let g = group(CoxeterType::b(3));
        let rep = BruhatRep::classical(g.clone());
        for a in [vec![2], vec![3], vec![2, 3], vec![3, 2]] {
            for item in [CyclicItem::Cyclic, CyclicItem::Symmetric] {
                let rels = cyclic_relations(&g.rs, &a, &[item]).unwrap();
                let f = check_relations(&rep, &rels).unwrap();
                assert!(f.is_empty(), "{a:?} {item:?} {:?}", f.first());
            }
        }
    }

    #[test]
    fn symmetric_k1_is_four_term() {
        let g = group(CoxeterType::b(2));
        let rels = cyclic_relations(&g.rs, &[2], &[CyclicItem::Symmetric]).unwrap();
        let l = Letters::new(&g.rs);
        let (x, b, s) = (l.br(1, 2), l.bar(1, 2), l.single(1));
        let four = &(&(&prod(&[x.clone(), s.clone(), b.clone(), s.clone()]) + &prod(&[b.clone(), s.clone(), x.clone(), s.clone()]))
            + &prod(&[s.clone(), x.clone(), s.clone(), b.clone()]))
            + &prod(&[s.clone(), b.clone(), s.clone(), x.clone()]);
        assert_eq!(rels[0].expr, four);
    }

    #[test]
    fn bad_indices_rejected() {
        let g = group(CoxeterType::b(3));
        assert!(cyclic_relations(&g.rs, &[2, 2], &[CyclicItem::Cyclic]).is_err());
        assert!(cyclic_relations(&g.rs, &[1], &[CyclicItem::Cyclic]).is_err());
    }

    #[test]
    fn derived_four_term_matches_symmetric_relation_in_b4() {
        let g = group(CoxeterType::b(4));
        let rep = BruhatRep::classical(g.clone());
        let d = derived_four_term(&g, [2, 3, 4]);
        assert!(crate::nc::first_nonvanishing(&rep, &(&d.derived - &d.target)).is_none());
        assert!(crate::nc::first_nonvanishing(&rep, &d.derived).is_none());
    }

    #[test]
    fn derivation_formulas_b3() {
        let g = group(CoxeterType::b(3));
        let rep = BruhatRep::classical(g);
        let (count, failures) = derivation_formula_check(&rep).unwrap();
        assert!(count > 0);
        assert!(failures.is_empty(), "{failures:?}");
    }

    #[test]
    fn quantum_mode_rejected_for_h2() {
        let g = group(CoxeterType::i2(5));
        assert!(generic_relations(&g, Mode::Quantum).is_err());
    }
}
