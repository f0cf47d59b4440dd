//! Operators on the group ring `Q[q]<W>`: the Bruhat and quantum Bruhat
//! generators, Chevalley and Dunkl elements, polynomial evaluation in
//! commuting operators and dimensions of the algebras they generate.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::WeylGroup;
use crate::linalg::{root_of_unity, Echelon, Fp, SparseRow, PRIME};
use crate::poly::{Monomial, MultiPoly};
use crate::roots::Family;
use crate::scalar::Scalar;

/// Vector of the group ring; coefficients are polynomials in the `q` variables.
pub type GVec = BTreeMap<usize, MultiPoly>;

/// Formal combination `sum c_k [gamma_k]` of generators.
pub type LinComb = Vec<(usize, Scalar)>;

pub fn basis_vector(nq: usize, w: usize) -> GVec {
    let mut v = GVec::new();
    v.insert(w, MultiPoly::one(nq));
    v
}

pub fn gvec_add_scaled(acc: &mut GVec, v: &GVec, c: &MultiPoly) {
    for (w, x) in v {
        let t = x * c;
        if t.is_zero() {
            continue;
        }
        let e = acc.entry(*w).or_insert_with(|| MultiPoly::zero(t.nvars()));
        *e += &t;
        if e.is_zero() {
            acc.remove(w);
        }
    }
}

/// One of the two group-ring representations.
#[derive(Clone, Debug)]
pub struct BruhatRep {
    pub group: Arc<WeylGroup>,
    pub quantum: bool,
    /// Number of `q` variables (the rank).
    pub nq: usize,
    /// `maps[k][w]`: image of `w` under the generator of `gamma_k`, which is
    /// zero or a single basis element times a `q` monomial.
    pub maps: Vec<Vec<Option<(u32, Monomial)>>>,
}

impl BruhatRep {
    pub fn classical(group: Arc<WeylGroup>) -> BruhatRep {
        Self::build(group, false).expect("classical representation always exists")
    }

    pub fn quantum(group: Arc<WeylGroup>) -> Result<BruhatRep> {
        Self::build(group, true)
    }

    fn build(group: Arc<WeylGroup>, quantum: bool) -> Result<BruhatRep> {
        let nq = group.rs.rank();
        let qdata = if quantum { Some(group.rs.quantum_data()?.clone()) } else { None };
        let n = group.rs.num_positive();
        let maps = (0..n)
            .map(|k| {
                (0..group.order())
                    .map(|w| {
                        let v = group.rmul[w][k];
                        let (lw, lv) = (group.length(w) as i64, group.length(v as usize) as i64);
                        if lv == lw + 1 {
                            return Some((v, Monomial::one(nq)));
                        }
                        let q = qdata.as_ref()?;
                        (lv == lw - 2 * q.heights[k] + 1)
                            .then(|| (v, Monomial(q.coroot_coords[k].iter().map(|&e| e as u16).collect())))
                    })
                    .collect()
            })
            .collect();
        Ok(BruhatRep {
            group,
            quantum,
            nq,
            maps,
        })
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn apply_generator(&self, k: usize, v: &GVec) -> GVec {
        let mut out = GVec::new();
        for (w, c) in v {
            if let Some((t, m)) = &self.maps[k][*w] {
                let term = c.mul_monomial(m, &Scalar::one());
                let e = out.entry(*t as usize).or_insert_with(|| MultiPoly::zero(self.nq));
                *e += &term;
                if e.is_zero() {
                    out.remove(&(*t as usize));
                }
            }
        }
        out
    }

    pub fn apply_linear(&self, lin: &LinComb, v: &GVec) -> GVec {
        let mut out = GVec::new();
        for (k, c) in lin {
            for (w, x) in v {
                if let Some((t, m)) = &self.maps[*k][*w] {
                    let term = x.mul_monomial(m, c);
                    let e = out.entry(*t as usize).or_insert_with(|| MultiPoly::zero(self.nq));
                    *e += &term;
                    if e.is_zero() {
                        out.remove(&(*t as usize));
                    }
                }
            }
        }
        out
    }

    /// Applies the product `[g_1] ... [g_r]` (rightmost first) to the basis
    /// vector `w`; the image is zero or a single basis element times a monomial.
    pub fn apply_word_basis(&self, word: &[usize], w: usize) -> Option<(usize, Monomial)> {
        let mut cur = w;
        let mut mono = Monomial::one(self.nq);
        for &k in word.iter().rev() {
            let (t, m) = self.maps[k][cur].as_ref()?;
            cur = *t as usize;
            mono = mono.mul(m);
        }
        Some((cur, mono))
    }

    pub fn generator_operator(&self, k: usize) -> Operator {
        self.linear_operator(&vec![(k, Scalar::one())])
    }

    pub fn linear_operator(&self, lin: &LinComb) -> Operator {
        Operator {
            nq: self.nq,
            cols: (0..self.dim()).map(|w| self.apply_linear(lin, &basis_vector(self.nq, w))).collect(),
        }
    }

    /// `[a, b]` applied to every basis vector; true when it vanishes.
    pub fn commute(&self, a: &LinComb, b: &LinComb) -> bool {
        (0..self.dim()).all(|w| {
            let e = basis_vector(self.nq, w);
            self.apply_linear(a, &self.apply_linear(b, &e)) == self.apply_linear(b, &self.apply_linear(a, &e))
        })
    }
}

/// Column-sparse operator on the group ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    pub nq: usize,
    pub cols: Vec<GVec>,
}

impl Operator {
    pub fn zero(dim: usize, nq: usize) -> Operator {
        Operator {
            nq,
            cols: vec![GVec::new(); dim],
        }
    }

    pub fn identity(dim: usize, nq: usize) -> Operator {
        Operator {
            nq,
            cols: (0..dim).map(|w| basis_vector(nq, w)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn apply(&self, v: &GVec) -> GVec {
        let mut out = GVec::new();
        for (w, c) in v {
            gvec_add_scaled(&mut out, &self.cols[*w], c);
        }
        out
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Operator) -> Operator {
        Operator {
            nq: self.nq,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add_scaled(&self, other: &Operator, c: &MultiPoly) -> Operator {
        let mut cols = self.cols.clone();
        for (col, o) in cols.iter_mut().zip(&other.cols) {
            gvec_add_scaled(col, o, c);
        }
        Operator { nq: self.nq, cols }
    }

    pub fn sub(&self, other: &Operator) -> Operator {
        self.add_scaled(other, &MultiPoly::constant(self.nq, Scalar::from_int(-1)))
    }

    pub fn commutator(&self, other: &Operator) -> Operator {
        self.compose(other).sub(&other.compose(self))
    }

    /// Every coefficient evaluated at `q = point`.
    pub fn specialize(&self, point: &[Scalar]) -> Vec<BTreeMap<usize, Scalar>> {
        self.cols
            .iter()
            .map(|c| c.iter().map(|(w, x)| (*w, x.eval(point))).filter(|(_, x)| !x.is_zero()).collect())
            .collect()
    }

    /// Triples `(input word, output word, coefficient)` in canonical element order.
    pub fn to_json(&self, g: &WeylGroup) -> serde_json::Value {
        let names: Vec<String> = (1..=self.nq).map(|i| format!("q{i}")).collect();
        let names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let mut out = Vec::new();
        for (w, col) in self.cols.iter().enumerate() {
            for (u, c) in col {
                out.push(serde_json::json!([g.word(w), g.word(*u), c.format_with(&names)]));
            }
        }
        serde_json::Value::Array(out)
    }
}

/// Pairwise commuting linear combinations of generators in a fixed
/// representation. Construction checks commutativity, so polynomial
/// evaluation is well defined.
#[derive(Clone, Debug)]
pub struct CommutingFamily<'a> {
    pub rep: &'a BruhatRep,
    pub ops: Vec<LinComb>,
}

impl<'a> CommutingFamily<'a> {
    pub fn new(rep: &'a BruhatRep, ops: Vec<LinComb>) -> Result<Self> {
        for i in 0..ops.len() {
            for j in i + 1..ops.len() {
                if !rep.commute(&ops[i], &ops[j]) {
                    return Err(Error::NonCommuting(i, j));
                }
            }
        }
        Ok(CommutingFamily { rep, ops })
    }

    /// `p(ops; q) v` where variables `0..k` of `p` are the operators and the
    /// trailing `nq` variables are the central parameters `q`.
    pub fn apply_polynomial(&self, p: &MultiPoly, v: &GVec) -> Result<GVec> {
        let k = self.ops.len();
        let nq = self.rep.nq;
        if p.nvars() != k + nq {
            return Err(Error::Unsupported(format!(
                "polynomial has {} variables, expected {} operators plus {} parameters",
                p.nvars(),
                k,
                nq
            )));
        }
        let mut cache: HashMap<Vec<u16>, GVec> = HashMap::new();
        cache.insert(vec![0; k], v.clone());
        let mut out = GVec::new();
        for (m, c) in p.terms() {
            let (op_part, q_part) = m.exps().split_at(k);
            let image = self.power_image(op_part, &mut cache);
            let coef = MultiPoly::term(Monomial::from_exps(q_part), c.clone());
            gvec_add_scaled(&mut out, &image, &coef);
        }
        Ok(out)
    }

    fn power_image(&self, exps: &[u16], cache: &mut HashMap<Vec<u16>, GVec>) -> GVec {
        if let Some(v) = cache.get(exps) {
            return v.clone();
        }
        let i = exps.iter().position(|&e| e > 0).unwrap();
        let mut lower = exps.to_vec();
        lower[i] -= 1;
        let prev = self.power_image(&lower, cache);
        let v = self.rep.apply_linear(&self.ops[i], &prev);
        cache.insert(exps.to_vec(), v.clone());
        v
    }

    /// The operator `p(ops; q)`.
    pub fn operator_polynomial(&self, p: &MultiPoly) -> Result<Operator> {
        let nq = self.rep.nq;
        let cols = (0..self.rep.dim()).map(|w| self.apply_polynomial(p, &basis_vector(nq, w))).collect::<Result<Vec<_>>>()?;
        Ok(Operator { nq, cols })
    }

    /// True when `p(ops; q)` is the zero operator.
    pub fn annihilates(&self, p: &MultiPoly) -> Result<bool> {
        for w in 0..self.rep.dim() {
            if !self.apply_polynomial(p, &basis_vector(self.rep.nq, w))?.is_empty() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// `theta_s = sum_{s'} (alpha_s, alpha_{s'}) eta_{s'}`.
    Cartan,
    /// Coordinate forms: `sum_gamma <e_k, gamma^vee> [gamma]` in the
    /// orthonormal coordinates of types A, B, D and I2, and
    /// `eta_a - eta_f`, `eta_f` for G2.
    Explicit,
    /// Explicit type-B elements with `2[i]` replaced by `c[i]`.
    ScaledB(i64),
    /// The dihedral combinations of `eta` as printed in the literature,
    /// kept as a diagnostic.
    DihedralPrinted,
}

impl std::str::FromStr for Normalization {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cartan" => Ok(Normalization::Cartan),
            "explicit" => Ok(Normalization::Explicit),
            "dihedral-printed" => Ok(Normalization::DihedralPrinted),
            _ => {
                if let Some(c) = s.strip_prefix("scaled-b:") {
                    return c.parse().map(Normalization::ScaledB).map_err(|_| Error::Unsupported(format!("bad scaling {c:?}")));
                }
                Err(Error::Unsupported(format!("unknown normalization {s:?}")))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct DunklFamily {
    pub normalization: Normalization,
    /// Chevalley elements `eta_s = sum <omega_s, gamma^vee> [gamma]`.
    pub eta: Vec<LinComb>,
    pub theta: Vec<LinComb>,
}

fn combine(terms: &[(Scalar, &LinComb)]) -> LinComb {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (c, lin) in terms {
        for (k, x) in lin.iter() {
            let e = acc.entry(*k).or_insert_with(Scalar::zero);
            *e += &(c * x);
        }
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

pub fn dunkl_family(g: &WeylGroup, normalization: Normalization) -> Result<DunklFamily> {
    let rs = &g.rs;
    let n = rs.num_positive();
    let eta: Vec<LinComb> = rs
        .fundamental_weights
        .iter()
        .map(|w| (0..n).map(|k| (k, rs.pairing(w, k))).filter(|(_, c)| !c.is_zero()).collect())
        .collect();
    let coordinate = || -> Vec<LinComb> {
        (0..rs.dim())
            .map(|i| (0..n).map(|k| (k, rs.coroots[k][i].clone())).filter(|(_, c)| !c.is_zero()).collect())
            .collect()
    };
    let theta = match normalization {
        Normalization::Cartan => (0..rs.rank())
            .map(|s| {
                let terms: Vec<(Scalar, &LinComb)> = (0..rs.rank()).map(|t| (rs.cartan[s][t].clone(), &eta[t])).collect();
                combine(&terms)
            })
            .collect(),
        Normalization::Explicit => match rs.ctype.family {
            Family::G2 => {
                let (a, f) = (&eta[0], &eta[1]);
                vec![combine(&[(Scalar::one(), a), (Scalar::from_int(-1), f)]), f.clone()]
            }
            _ => coordinate(),
        },
        Normalization::ScaledB(c) => {
            if rs.ctype.family != Family::B {
                return Err(Error::Unsupported("the scaled family exists only in type B".into()));
            }
            let half_c = Scalar::from_ratio(c, 2);
            coordinate()
                .into_iter()
                .map(|lin| {
                    lin.into_iter()
                        .map(|(k, x)| if rs.labels[k].starts_with("[") && !rs.labels[k].contains(',') { (k, &x * &half_c) } else { (k, x) })
                        .filter(|(_, x)| !x.is_zero())
                        .collect()
                })
                .collect()
        }
        Normalization::DihedralPrinted => {
            let Some(f) = rs.field.as_ref().filter(|_| rs.ctype.family == Family::I2) else {
                return Err(Error::Unsupported("the printed dihedral family exists only for I2(m)".into()));
            };
            let m = rs.ctype.m.unwrap() as i64;
            let lam = f.sin_pi(1, m);
            let mu = f.cos_pi(1, m);
            let lam_inv = lam.inv().unwrap();
            let (e0, e1) = (&eta[0], &eta[1]);
            vec![
                combine(&[(Scalar::one(), e0), (lam.clone(), e1)]),
                combine(&[(&(&mu * &lam_inv) + &Scalar::one(), e0), (&lam_inv + &mu, e1)]),
            ]
        }
    };
    Ok(DunklFamily {
        normalization,
        eta,
        theta,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanReport {
    /// Number of new independent operators contributed at each degree.
    pub dims: Vec<usize>,
    pub modular_dims: Vec<usize>,
    pub total: usize,
    /// The algebra closed (a degree contributed nothing) within the budget.
    pub closed: bool,
}

/// Dimensions, degree by degree, of the algebra generated by the family
/// with `q` set to `point`. The degree-`d` candidates are `theta_i b` for
/// the operators `b` found at degree `d-1`. Ranks are computed exactly and
/// again modulo a large prime; a disagreement is an error.
pub fn span_dimension(family: &CommutingFamily, point: &[Scalar], max_degree: usize) -> Result<SpanReport> {
    let rep = family.rep;
    let dim = rep.dim();
    // Generator maps with q specialised.
    let spec_maps: Vec<Vec<Option<(u32, Scalar)>>> = rep
        .maps
        .iter()
        .map(|row| row.iter().map(|e| e.as_ref().map(|(t, m)| (*t, MultiPoly::term(m.clone(), Scalar::one()).eval(point)))).collect())
        .collect();
    let apply = |lin: &LinComb, col: &BTreeMap<usize, Scalar>| -> BTreeMap<usize, Scalar> {
        let mut out: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (k, c) in lin {
            for (w, x) in col {
                if let Some((t, s)) = &spec_maps[*k][*w] {
                    if s.is_zero() {
                        continue;
                    }
                    let e = out.entry(*t as usize).or_insert_with(Scalar::zero);
                    *e += &(&(x * c) * s);
                }
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    };
    let flatten = |op: &[BTreeMap<usize, Scalar>]| -> SparseRow<Scalar> {
        let mut row = SparseRow::new();
        for (w, col) in op.iter().enumerate() {
            for (u, x) in col {
                row.insert(w * dim + u, x.clone());
            }
        }
        row
    };
    let order = rep.group.rs.field.as_ref().map(|f| f.order() as u64);
    let root = match order {
        Some(o) => Some(root_of_unity(o).ok_or_else(|| Error::Unsupported(format!("no {o}-th root of unity modulo the prime")))?),
        None => None,
    };
    let to_fp = |row: &SparseRow<Scalar>| -> Result<SparseRow<Fp>> {
        let mut out = SparseRow::new();
        for (c, x) in row {
            let v = x.reduce_mod(PRIME, root.unwrap_or(1)).ok_or_else(|| Error::Internal("coefficient not reducible modulo the prime".into()))?;
            if v != 0 {
                out.insert(*c, Fp(v));
            }
        }
        Ok(out)
    };

    let mut exact: Echelon<Scalar> = Echelon::new();
    let mut modular: Echelon<Fp> = Echelon::new();
    let ident: Vec<BTreeMap<usize, Scalar>> = (0..dim).map(|w| BTreeMap::from([(w, Scalar::one())])).collect();
    let r = flatten(&ident);
    modular.insert(to_fp(&r)?);
    exact.insert(r);
    let mut dims = vec![1];
    let mut modular_dims = vec![1];
    let mut frontier = vec![ident];
    let mut closed = false;
    for _ in 1..=max_degree {
        let mut next = Vec::new();
        let (r0, m0) = (exact.rank(), modular.rank());
        for b in &frontier {
            for lin in &family.ops {
                let op: Vec<BTreeMap<usize, Scalar>> = b.iter().map(|col| apply(lin, col)).collect();
                let row = flatten(&op);
                if row.is_empty() {
                    continue;
                }
                modular.insert(to_fp(&row)?);
                if exact.insert(row) {
                    next.push(op);
                }
            }
        }
        dims.push(exact.rank() - r0);
        modular_dims.push(modular.rank() - m0);
        if next.is_empty() {
            closed = true;
            break;
        }
        frontier = next;
    }
    if dims != modular_dims {
        return Err(Error::Internal(format!("rational ranks {dims:?} disagree with modular ranks {modular_dims:?}")));
    }
    while dims.len() > 1 && *dims.last().unwrap() == 0 {
        dims.pop();
        modular_dims.pop();
    }
    let total = dims.iter().sum();
    Ok(SpanReport {
        dims,
        modular_dims,
        total,
        closed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::CoxeterType;

    fn rep(t: CoxeterType, quantum: bool) -> BruhatRep {
        let g = Arc::new(WeylGroup::build(t).unwrap());
        if quantum {
            BruhatRep::quantum(g).unwrap()
        } else {
            BruhatRep::classical(g)
        }
    }

    #[test]
    fn classical_generators_square_to_zero() {
        let r = rep(CoxeterType::b(2), false);
        for k in 0..4 {
            let op = r.generator_operator(k);
            assert!(op.compose(&op).is_zero());
            let w0 = r.group.longest();
            assert!(op.cols[w0].is_empty());
        }
    }

    #[test]
    fn identity_moves_only_under_simple_roots() {
        let r = rep(CoxeterType::a(2), false);
        for k in 0..3 {
            let simple = r.group.rs.simple_index.contains(&k);
            assert_eq!(r.maps[k][0].is_some(), simple);
        }
    }

    #[test]
    fn quantum_squares() {
        let r = rep(CoxeterType::b(2), true);
        for k in 0..4 {
            let op = r.generator_operator(k);
            let sq = op.compose(&op);
            if let Some(s) = r.group.rs.simple_index.iter().position(|&i| i == k) {
                let q = MultiPoly::var(2, s);
                assert_eq!(sq, Operator::zero(8, 2).add_scaled(&Operator::identity(8, 2), &q));
            } else {
                assert!(sq.is_zero());
            }
        }
    }

    #[test]
    fn quantum_rejected_for_h2_type() {
        let g = Arc::new(WeylGroup::build(CoxeterType::i2(5)).unwrap());
        assert!(matches!(BruhatRep::quantum(g), Err(Error::NotCrystallographic(_))));
    }

    #[test]
    fn b2_explicit_theta() {
        let g = WeylGroup::build(CoxeterType::b(2)).unwrap();
        let fam = dunkl_family(&g, Normalization::Explicit).unwrap();
        let idx = |l: &str| g.rs.index_of_label(l).unwrap();
        let mut t1 = fam.theta[0].clone();
        t1.sort_by_key(|x| x.0);
        let mut want = vec![(idx("[1,2]"), Scalar::one()), (idx("~[1,2]"), Scalar::one()), (idx("[1]"), Scalar::from_int(2))];
        want.sort_by_key(|x| x.0);
        assert_eq!(t1, want);
    }

    #[test]
    fn g2_chevalley_elements() {
        let g = WeylGroup::build(CoxeterType::g2()).unwrap();
        let fam = dunkl_family(&g, Normalization::Explicit).unwrap();
        let coef = |lin: &LinComb, l: &str| {
            let k = g.rs.index_of_label(l).unwrap();
            lin.iter().find(|x| x.0 == k).map(|x| x.1.as_i64().unwrap()).unwrap_or(0)
        };
        let got: Vec<i64> = ["a", "b", "c", "d", "e", "f"].iter().map(|l| coef(&fam.eta[0], l)).collect();
        assert_eq!(got, vec![1, 3, 2, 3, 1, 0]);
        let got: Vec<i64> = ["a", "b", "c", "d", "e", "f"].iter().map(|l| coef(&fam.eta[1], l)).collect();
        assert_eq!(got, vec![0, 1, 1, 2, 1, 1]);
    }

    #[test]
    fn dunkl_commute_everywhere() {
        for (t, q) in [
            (CoxeterType::a(3), true),
            (CoxeterType::b(3), true),
            (CoxeterType::g2(), true),
            (CoxeterType::i2(5), false),
            (CoxeterType::i2(6), true),
        ] {
            let r = rep(t, q);
            for norm in [Normalization::Cartan, Normalization::Explicit] {
                let fam = dunkl_family(&r.group, norm).unwrap();
                assert!(CommutingFamily::new(&r, fam.theta.clone()).is_ok(), "{t} {norm:?}");
            }
        }
    }

    #[test]
    fn non_commuting_inputs_rejected() {
        let r = rep(CoxeterType::a(2), false);
        let ops = vec![vec![(0, Scalar::one())], vec![(2, Scalar::one())]];
        if !r.commute(&ops[0], &ops[1]) {
            assert!(matches!(CommutingFamily::new(&r, ops), Err(Error::NonCommuting(0, 1))));
        }
    }

    #[test]
    fn polynomial_one_is_identity() {
        let r = rep(CoxeterType::a(2), true);
        let fam = dunkl_family(&r.group, Normalization::Explicit).unwrap();
        let cf = CommutingFamily::new(&r, fam.theta).unwrap();
        let nv = cf.ops.len() + r.nq;
        let op = cf.operator_polynomial(&MultiPoly::one(nv)).unwrap();
        assert_eq!(op, Operator::identity(6, 2));
    }

    #[test]
    fn f2_vanishes_for_h2() {
        let r = rep(CoxeterType::i2(5), false);
        let fam = dunkl_family(&r.group, Normalization::Explicit).unwrap();
        let cf = CommutingFamily::new(&r, fam.theta).unwrap();
        let p = &MultiPoly::var(4, 0).pow(2) + &MultiPoly::var(4, 1).pow(2);
        assert!(cf.annihilates(&p).unwrap());
    }

    #[test]
    fn nilpotent_span() {
        let r = rep(CoxeterType::a(1), false);
        let cf = CommutingFamily::new(&r, vec![vec![(0, Scalar::one())]]).unwrap();
        let s = span_dimension(&cf, &[Scalar::zero()], 4).unwrap();
        assert_eq!(s.dims, vec![1, 1]);
        assert!(s.closed);
    }

    #[test]
    fn coinvariant_dimension_a2() {
        let r = rep(CoxeterType::a(2), false);
        let fam = dunkl_family(&r.group, Normalization::Cartan).unwrap();
        let cf = CommutingFamily::new(&r, fam.theta).unwrap();
        let s = span_dimension(&cf, &[Scalar::zero(), Scalar::zero()], 10).unwrap();
        assert_eq!(s.total, 6);
        assert_eq!(s.dims, vec![1, 2, 2, 1]);
    }

    #[test]
    fn normalization_parse() {
        assert_eq!("scaled-b:3".parse::<Normalization>().unwrap(), Normalization::ScaledB(3));
        assert!("bogus".parse::<Normalization>().is_err());
    }
}
