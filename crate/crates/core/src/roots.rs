//! Root systems of types A, B, D, G2 and the dihedral types I2(m).
//!
//! Classical types live in an orthonormal coordinate space. G2 uses the
//! simple-root basis with an explicit Gram matrix: the first simple root
//! is long, the second short, and every root is labelled by the letter
//! of its coroot. Dihedral systems use unit roots `(cos(i pi/m), sin(i pi/m))`
//! with coordinates in `Q(zeta_{4m})`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{det_dense, solve_dense};
use crate::scalar::{CyclotomicField, Scalar};

pub type Vector = Vec<Scalar>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    D,
    G2,
    I2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoxeterType {
    pub family: Family,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
}

impl CoxeterType {
    pub fn new(family: Family, rank: usize, m: Option<usize>) -> Result<Self> {
        let t = CoxeterType { family, rank, m };
        t.validate()?;
        Ok(t)
    }

    pub fn a(n: usize) -> Self {
        Self::new(Family::A, n, None).expect("valid type A")
    }

    pub fn b(n: usize) -> Self {
        Self::new(Family::B, n, None).expect("valid type B")
    }

    pub fn d(n: usize) -> Self {
        Self::new(Family::D, n, None).expect("valid type D")
    }

    pub fn g2() -> Self {
        Self::new(Family::G2, 2, None).expect("valid type G2")
    }

    pub fn i2(m: usize) -> Self {
        Self::new(Family::I2, 2, Some(m)).expect("valid dihedral type")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |s: &str| Err(Error::InvalidType(format!("{self}: {s}")));
        match self.family {
            Family::A if self.rank < 1 => bad("type A requires rank >= 1"),
            Family::B if self.rank < 2 => bad("type B requires rank >= 2"),
            Family::D if self.rank < 2 => bad("type D requires rank >= 2"),
            Family::G2 if self.rank != 2 => bad("G2 has rank exactly 2"),
            Family::I2 if self.rank != 2 => bad("I2 has rank exactly 2"),
            Family::I2 if self.m.is_none_or(|m| m < 2) => bad("I2 requires m >= 2"),
            Family::A | Family::B | Family::D | Family::G2 if self.m.is_some() => bad("m is only meaningful for I2"),
            _ => Ok(()),
        }
    }

    pub fn crystallographic(&self) -> bool {
        match self.family {
            Family::I2 => matches!(self.m, Some(2 | 3 | 4 | 6)),
            _ => true,
        }
    }

    /// Expected number of positive roots.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B => n * n,
            Family::D => n * (n - 1),
            Family::G2 => 6,
            Family::I2 => self.m.unwrap(),
        }
    }

    /// Expected group order.
    pub fn group_order(&self) -> usize {
        let n = self.rank;
        let fact: usize = (1..=n).product();
        match self.family {
            Family::A => fact * (n + 1),
            Family::B => fact << n,
            Family::D => fact << (n - 1),
            Family::G2 => 12,
            Family::I2 => 2 * self.m.unwrap(),
        }
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A => write!(f, "A{}", self.rank),
            Family::B => write!(f, "B{}", self.rank),
            Family::D => write!(f, "D{}", self.rank),
            Family::G2 => write!(f, "G2"),
            Family::I2 => write!(f, "I2({})", self.m.unwrap_or(0)),
        }
    }
}

impl FromStr for CoxeterType {
    type Err = Error;

    /// Parses `A3`, `B2`, `D4`, `G2`, `I2(5)` or `I2_5`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = || Error::InvalidType(format!("cannot parse {s:?}"));
        let upper = s.to_ascii_uppercase();
        if upper == "G2" {
            return CoxeterType::new(Family::G2, 2, None);
        }
        if let Some(rest) = upper.strip_prefix("I2") {
            let m = rest.trim_start_matches(['(', '_']).trim_end_matches(')');
            let m: usize = m.parse().map_err(|_| err())?;
            return CoxeterType::new(Family::I2, 2, Some(m));
        }
        let (head, num) = upper.split_at(1);
        let rank: usize = num.parse().map_err(|_| err())?;
        let family = match head {
            "A" => Family::A,
            "B" => Family::B,
            "D" => Family::D,
            _ => return Err(err()),
        };
        CoxeterType::new(family, rank, None)
    }
}

/// Integral coroot data needed by the quantum Bruhat representation.
#[derive(Clone, Debug)]
pub struct QuantumData {
    /// Coefficients of each positive coroot over the simple coroots.
    pub coroot_coords: Vec<Vec<i64>>,
    /// `(rho, gamma^vee)`, the sum of the coroot coefficients.
    pub heights: Vec<i64>,
}

/// An ordered rank-2 subsystem: consecutive roots span cones containing
/// no other positive root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rank2Subsystem {
    pub m: usize,
    pub roots: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub ctype: CoxeterType,
    /// Ambient inner product matrix.
    pub gram: Vec<Vec<Scalar>>,
    pub simple: Vec<Vector>,
    pub positive: Vec<Vector>,
    /// Coordinates of each positive root over the simple roots.
    pub simple_coords: Vec<Vec<Scalar>>,
    pub coroots: Vec<Vector>,
    pub fundamental_weights: Vec<Vector>,
    pub rho: Vector,
    /// `(alpha_s, alpha_t)`.
    pub cartan: Vec<Vec<Scalar>>,
    /// Labels of the positive roots, e.g. `[1,2]`, `~[1,2]`, `[1]`, `a`.
    pub labels: Vec<String>,
    /// Index of each simple root in the positive-root list.
    pub simple_index: Vec<usize>,
    pub quantum: Option<QuantumData>,
    pub field: Option<Arc<CyclotomicField>>,
    lookup: HashMap<Vector, (usize, i8)>,
}

fn unit(dim: usize, i: usize) -> Vector {
    (0..dim).map(|k| if k == i { Scalar::one() } else { Scalar::zero() }).collect()
}

fn vsub(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn vadd(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn vscale(a: &[Scalar], c: &Scalar) -> Vector {
    a.iter().map(|x| x * c).collect()
}

fn vneg(a: &[Scalar]) -> Vector {
    a.iter().map(|x| -x).collect()
}

fn identity_gram(dim: usize) -> Vec<Vec<Scalar>> {
    (0..dim).map(|i| unit(dim, i)).collect()
}

/// Lexicographic comparison of real scalar vectors.
fn lex_cmp(a: &[Scalar], b: &[Scalar]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match (x - y).signum() {
            0 => continue,
            1 => return std::cmp::Ordering::Greater,
            _ => return std::cmp::Ordering::Less,
        }
    }
    std::cmp::Ordering::Equal
}

impl RootSystem {
    pub fn build(ctype: CoxeterType) -> Result<RootSystem> {
        ctype.validate()?;
        let n = ctype.rank;
        let (gram, simple, field) = match ctype.family {
            Family::A => {
                let dim = n + 1;
                let simple = (0..n).map(|i| vsub(&unit(dim, i), &unit(dim, i + 1))).collect();
                (identity_gram(dim), simple, None)
            }
            Family::B => {
                let mut simple: Vec<Vector> = (0..n - 1).map(|i| vsub(&unit(n, i), &unit(n, i + 1))).collect();
                simple.push(unit(n, n - 1));
                (identity_gram(n), simple, None)
            }
            Family::D => {
                let mut simple: Vec<Vector> = (0..n - 1).map(|i| vsub(&unit(n, i), &unit(n, i + 1))).collect();
                simple.push(vadd(&unit(n, n - 2), &unit(n, n - 1)));
                (identity_gram(n), simple, None)
            }
            Family::G2 => {
                let g = |a: i64, b: i64, c: i64, d: i64| {
                    vec![vec![Scalar::from_int(a), Scalar::from_int(b)], vec![Scalar::from_int(c), Scalar::from_int(d)]]
                };
                (g(6, -3, -3, 2), vec![unit(2, 0), unit(2, 1)], None)
            }
            Family::I2 => {
                let m = ctype.m.unwrap();
                let f = CyclotomicField::get(4 * m);
                let a0 = vec![f.cos_pi(0, m as i64), f.sin_pi(0, m as i64)];
                let last = vec![f.cos_pi(m as i64 - 1, m as i64), f.sin_pi(m as i64 - 1, m as i64)];
                (identity_gram(2), vec![a0, last], Some(f))
            }
        };
        Self::from_simple(ctype, gram, simple, field)
    }

    fn from_simple(ctype: CoxeterType, gram: Vec<Vec<Scalar>>, simple: Vec<Vector>, field: Option<Arc<CyclotomicField>>) -> Result<RootSystem> {
        let rank = simple.len();
        let ip = |u: &[Scalar], v: &[Scalar]| inner(&gram, u, v);
        let cartan: Vec<Vec<Scalar>> = simple.iter().map(|a| simple.iter().map(|b| ip(a, b)).collect()).collect();

        // Closure of the simple roots under simple reflections.
        let mut all: Vec<Vector> = simple.clone();
        let mut seen: std::collections::HashSet<Vector> = all.iter().cloned().collect();
        let mut frontier = all.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for r in &frontier {
                for s in &simple {
                    let t = reflect_with(&gram, s, r);
                    if seen.insert(t.clone()) {
                        all.push(t.clone());
                        next.push(t);
                    }
                }
            }
            frontier = next;
        }

        let coords_of = |v: &[Scalar]| -> Result<Vec<Scalar>> {
            let rhs: Vec<Scalar> = simple.iter().map(|s| ip(v, s)).collect();
            solve_dense(cartan.clone(), rhs).ok_or_else(|| Error::Internal("simple roots are degenerate".into()))
        };
        let mut pos: Vec<(Vec<Scalar>, Vector)> = Vec::new();
        for r in &all {
            let c = coords_of(r)?;
            let nonneg = c.iter().all(|x| x.signum() >= 0);
            let nonpos = c.iter().all(|x| x.signum() <= 0);
            if nonneg == nonpos {
                return Err(Error::Internal(format!("root {r:?} is neither positive nor negative")));
            }
            if nonneg {
                pos.push((c, r.clone()));
            }
        }
        pos.sort_by(|a, b| lex_cmp(&a.0, &b.0));
        let simple_coords: Vec<Vec<Scalar>> = pos.iter().map(|p| p.0.clone()).collect();
        let positive: Vec<Vector> = pos.into_iter().map(|p| p.1).collect();
        if positive.len() != ctype.positive_root_count() {
            return Err(Error::Internal(format!("{ctype}: found {} positive roots", positive.len())));
        }

        let two = Scalar::from_int(2);
        let coroots: Vec<Vector> = positive.iter().map(|g| vscale(g, &(&two / &ip(g, g)))).collect();
        let mut lookup = HashMap::new();
        for (k, g) in positive.iter().enumerate() {
            lookup.insert(g.clone(), (k, 1i8));
            lookup.insert(vneg(g), (k, -1i8));
        }
        let simple_index: Vec<usize> = simple.iter().map(|s| lookup[s].0).collect();

        // Fundamental weights: combinations of simple roots dual to the simple coroots.
        let simple_coroots: Vec<Vector> = simple.iter().map(|s| vscale(s, &(&two / &ip(s, s)))).collect();
        let pairing: Vec<Vec<Scalar>> = simple_coroots.iter().map(|c| simple.iter().map(|a| ip(a, c)).collect()).collect();
        let dim = gram.len();
        let mut fundamental_weights = Vec::with_capacity(rank);
        for s in 0..rank {
            let rhs: Vec<Scalar> = (0..rank).map(|t| if s == t { Scalar::one() } else { Scalar::zero() }).collect();
            let x = solve_dense(pairing.clone(), rhs).ok_or_else(|| Error::Internal("singular pairing".into()))?;
            let mut w = vec![Scalar::zero(); dim];
            for (u, c) in x.iter().enumerate() {
                w = vadd(&w, &vscale(&simple[u], c));
            }
            fundamental_weights.push(w);
        }
        let mut rho = vec![Scalar::zero(); dim];
        for g in &positive {
            rho = vadd(&rho, g);
        }
        let rho = vscale(&rho, &Scalar::from_ratio(1, 2));

        let mut rs = RootSystem {
            ctype,
            gram,
            simple,
            positive,
            simple_coords,
            coroots,
            fundamental_weights,
            rho,
            cartan,
            labels: Vec::new(),
            simple_index,
            quantum: None,
            field,
            lookup,
        };
        rs.labels = (0..rs.positive.len()).map(|k| rs.make_label(k)).collect();
        if ctype.crystallographic() {
            rs.quantum = Some(rs.integral_coroot_data()?);
        }
        Ok(rs)
    }

    fn make_label(&self, k: usize) -> String {
        let v = &self.positive[k];
        match self.ctype.family {
            Family::A | Family::B | Family::D => {
                let nz: Vec<(usize, i64)> =
                    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i + 1, x.as_i64().unwrap())).collect();
                match nz.as_slice() {
                    [(i, 1)] => format!("[{i}]"),
                    [(i, 1), (j, -1)] => format!("[{i},{j}]"),
                    [(i, 1), (j, 1)] => format!("~[{i},{j}]"),
                    _ => format!("r{k}"),
                }
            }
            Family::G2 => {
                let c = self.coroot_simple_coords(k);
                let c: Vec<i64> = c.iter().map(|x| x.as_i64().unwrap()).collect();
                match (c[0], c[1]) {
                    (1, 0) => "a",
                    (3, 1) => "b",
                    (2, 1) => "c",
                    (3, 2) => "d",
                    (1, 1) => "e",
                    (0, 1) => "f",
                    _ => "?",
                }
                .to_string()
            }
            Family::I2 => {
                let m = self.ctype.m.unwrap();
                let f = self.field.as_ref().unwrap();
                let i = (0..m)
                    .find(|&i| v[0] == f.cos_pi(i as i64, m as i64) && v[1] == f.sin_pi(i as i64, m as i64))
                    .expect("dihedral root has an angle index");
                format!("a{i}")
            }
        }
    }

    /// Index of the dihedral root `a_i` (only for I2).
    pub fn dihedral_index(&self, k: usize) -> Option<usize> {
        (self.ctype.family == Family::I2).then(|| self.labels[k][1..].parse().unwrap())
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn inner(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        inner(&self.gram, u, v)
    }

    /// `<lambda, gamma^vee>` for the `k`-th positive root.
    pub fn pairing(&self, lambda: &[Scalar], k: usize) -> Scalar {
        self.inner(lambda, &self.coroots[k])
    }

    pub fn coroot(&self, gamma: &[Scalar]) -> Result<Vector> {
        let (k, sign) = self.find_root(gamma)?;
        Ok(if sign > 0 { self.coroots[k].clone() } else { vneg(&self.coroots[k]) })
    }

    /// Index and sign of a root vector.
    pub fn find_root(&self, gamma: &[Scalar]) -> Result<(usize, i8)> {
        self.lookup.get(gamma).copied().ok_or_else(|| Error::NotARoot {
            system: self.ctype.to_string(),
            vector: format_vector(gamma),
        })
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `lambda - 2 (gamma, lambda) / (gamma, gamma) gamma`.
    pub fn reflect(&self, gamma: &[Scalar], lambda: &[Scalar]) -> Result<Vector> {
        if gamma.iter().all(|x| x.is_zero()) {
            return Err(Error::Unsupported("reflection in the zero vector".into()));
        }
        Ok(reflect_with(&self.gram, gamma, lambda))
    }

    /// Coordinates of `gamma^vee` over the simple coroots.
    fn coroot_simple_coords(&self, k: usize) -> Vec<Scalar> {
        let two = Scalar::from_int(2);
        let sc: Vec<Vector> = self.simple.iter().map(|s| vscale(s, &(&two / &self.inner(s, s)))).collect();
        let mat: Vec<Vec<Scalar>> = sc.iter().map(|a| sc.iter().map(|b| self.inner(a, b)).collect()).collect();
        let rhs: Vec<Scalar> = sc.iter().map(|a| self.inner(&self.coroots[k], a)).collect();
        solve_dense(mat, rhs).expect("simple coroots form a basis")
    }

    /// Root vectors in the crystallographic normalization used for
    /// integral coroot data. Differs from `positive` only for I2(4), I2(6).
    pub fn crystallographic_roots(&self) -> Option<Vec<Vector>> {
        if !self.ctype.crystallographic() {
            return None;
        }
        if self.ctype.family != Family::I2 || !matches!(self.ctype.m, Some(4 | 6)) {
            return Some(self.positive.clone());
        }
        let m = self.ctype.m.unwrap() as i64;
        let f = self.field.as_ref().unwrap();
        let t = &f.cos_pi(1, m) * &Scalar::from_int(2);
        Some(
            (0..self.positive.len())
                .map(|k| {
                    let i = self.dihedral_index(k).unwrap();
                    if i % 2 == 1 {
                        vscale(&self.positive[k], &t)
                    } else {
                        self.positive[k].clone()
                    }
                })
                .collect(),
        )
    }

    fn integral_coroot_data(&self) -> Result<QuantumData> {
        let roots = self.crystallographic_roots().unwrap();
        let two = Scalar::from_int(2);
        let cor: Vec<Vector> = roots.iter().map(|g| vscale(g, &(&two / &self.inner(g, g)))).collect();
        let sc: Vec<Vector> = self.simple_index.iter().map(|&k| cor[k].clone()).collect();
        let mat: Vec<Vec<Scalar>> = sc.iter().map(|a| sc.iter().map(|b| self.inner(a, b)).collect()).collect();
        let mut coords = Vec::with_capacity(cor.len());
        for c in &cor {
            let rhs: Vec<Scalar> = sc.iter().map(|a| self.inner(c, a)).collect();
            let x = solve_dense(mat.clone(), rhs).ok_or_else(|| Error::Internal("singular coroot basis".into()))?;
            let ints: Option<Vec<i64>> = x.iter().map(|v| v.as_i64()).collect();
            coords.push(ints.ok_or_else(|| Error::Internal(format!("{}: non-integral coroot expansion", self.ctype)))?);
        }
        let heights = coords.iter().map(|c| c.iter().sum()).collect();
        Ok(QuantumData {
            coroot_coords: coords,
            heights,
        })
    }

    pub fn quantum_data(&self) -> Result<&QuantumData> {
        self.quantum.as_ref().ok_or_else(|| Error::NotCrystallographic(self.ctype.to_string()))
    }

    /// Every maximal rank-2 subsystem of the positive roots, ordered so that
    /// consecutive roots bound cones with no other positive root.
    pub fn rank2_subsystems(&self) -> Vec<Rank2Subsystem> {
        let n = self.positive.len();
        let mut assigned: HashMap<(usize, usize), usize> = HashMap::new();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if assigned.contains_key(&(i, j)) {
                    continue;
                }
                let (a, b) = (&self.positive[i], &self.positive[j]);
                let members: Vec<usize> = (0..n)
                    .filter(|&k| {
                        let c = &self.positive[k];
                        let g = vec![
                            vec![self.inner(a, a), self.inner(a, b), self.inner(a, c)],
                            vec![self.inner(b, a), self.inner(b, b), self.inner(b, c)],
                            vec![self.inner(c, a), self.inner(c, b), self.inner(c, c)],
                        ];
                        det_dense(g).is_zero()
                    })
                    .collect();
                for (x, &p) in members.iter().enumerate() {
                    for &q in &members[x + 1..] {
                        assigned.insert((p, q), out.len());
                    }
                }
                out.push(self.order_plane(&members));
            }
        }
        out
    }

    fn order_plane(&self, members: &[usize]) -> Rank2Subsystem {
        let coords = |b1: usize, b2: usize, k: usize| -> (Scalar, Scalar) {
            let (u, v, w) = (&self.positive[b1], &self.positive[b2], &self.positive[k]);
            let mat = vec![vec![self.inner(u, u), self.inner(u, v)], vec![self.inner(v, u), self.inner(v, v)]];
            let x = solve_dense(mat, vec![self.inner(w, u), self.inner(w, v)]).unwrap();
            (x[0].clone(), x[1].clone())
        };
        let mut base = None;
        'outer: for (x, &p) in members.iter().enumerate() {
            for &q in &members[x + 1..] {
                if members.iter().all(|&k| {
                    let (s, t) = coords(p, q, k);
                    s.signum() >= 0 && t.signum() >= 0
                }) {
                    base = Some((p, q));
                    break 'outer;
                }
            }
        }
        let (b1, b2) = base.expect("rank-2 subsystem has a simple basis");
        let mut keyed: Vec<(usize, Scalar, Scalar)> = members.iter().map(|&k| {
            let (s, t) = coords(b1, b2, k);
            (k, s, t)
        }).collect();
        // Angular order from b1 to b2: increasing t / (s + t).
        keyed.sort_by(|x, y| {
            let lhs = &x.2 * &y.1;
            let rhs = &y.2 * &x.1;
            match (&lhs - &rhs).signum() {
                0 => std::cmp::Ordering::Equal,
                1 => std::cmp::Ordering::Greater,
                _ => std::cmp::Ordering::Less,
            }
        });
        Rank2Subsystem {
            m: members.len(),
            roots: keyed.into_iter().map(|x| x.0).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vecs = |vs: &[Vector]| -> Vec<Vec<serde_json::Value>> { vs.iter().map(|v| v.iter().map(|x| x.to_json()).collect()).collect() };
        serde_json::json!({
            "type": self.ctype.to_string(),
            "family": self.ctype.family,
            "rank": self.ctype.rank,
            "m": self.ctype.m,
            "crystallographic": self.ctype.crystallographic(),
            "cyclotomic_order": self.field.as_ref().map(|f| f.order()),
            "simple_roots": vecs(&self.simple),
            "positive_roots": vecs(&self.positive),
            "labels": self.labels,
        })
    }
}

pub fn inner(gram: &[Vec<Scalar>], u: &[Scalar], v: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (i, x) in u.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in v.iter().enumerate() {
            if y.is_zero() || gram[i][j].is_zero() {
                continue;
            }
            acc += &(&(x * &gram[i][j]) * y);
        }
    }
    acc
}

fn reflect_with(gram: &[Vec<Scalar>], gamma: &[Scalar], lambda: &[Scalar]) -> Vector {
    let c = &(&Scalar::from_int(2) * &inner(gram, gamma, lambda)) / &inner(gram, gamma, gamma);
    vsub(lambda, &vscale(gamma, &c))
}

pub fn format_vector(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vector {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn type_validation() {
        assert!(CoxeterType::new(Family::B, 1, None).is_err());
        assert!(CoxeterType::new(Family::D, 1, None).is_err());
        assert!(CoxeterType::new(Family::G2, 3, None).is_err());
        assert!(CoxeterType::new(Family::I2, 2, Some(1)).is_err());
        assert!(CoxeterType::new(Family::I2, 2, None).is_err());
        assert!(CoxeterType::new(Family::A, 0, None).is_err());
        let err = CoxeterType::new(Family::B, 1, None).unwrap_err().to_string();
        assert!(err.contains("rank >= 2"), "{err}");
    }

    #[test]
    fn crystallographic_flag() {
        for m in 2..=9 {
            assert_eq!(CoxeterType::i2(m).crystallographic(), matches!(m, 2 | 3 | 4 | 6));
        }
        assert!(CoxeterType::g2().crystallographic());
    }

    #[test]
    fn parse_names() {
        assert_eq!("B3".parse::<CoxeterType>().unwrap(), CoxeterType::b(3));
        assert_eq!("i2(5)".parse::<CoxeterType>().unwrap(), CoxeterType::i2(5));
        assert_eq!("G2".parse::<CoxeterType>().unwrap(), CoxeterType::g2());
        assert!("E8".parse::<CoxeterType>().is_err());
    }

    #[test]
    fn positive_root_counts() {
        for t in [
            CoxeterType::a(1),
            CoxeterType::a(3),
            CoxeterType::b(2),
            CoxeterType::b(4),
            CoxeterType::d(4),
            CoxeterType::d(5),
            CoxeterType::g2(),
            CoxeterType::i2(5),
            CoxeterType::i2(8),
        ] {
            let rs = RootSystem::build(t).unwrap();
            assert_eq!(rs.num_positive(), t.positive_root_count(), "{t}");
        }
    }

    #[test]
    fn a1_rho() {
        let rs = RootSystem::build(CoxeterType::a(1)).unwrap();
        assert_eq!(rs.positive, vec![ints(&[1, -1])]);
        assert_eq!(rs.rho, vec![Scalar::from_ratio(1, 2), Scalar::from_ratio(-1, 2)]);
    }

    #[test]
    fn b3_rho() {
        let rs = RootSystem::build(CoxeterType::b(3)).unwrap();
        assert_eq!(rs.num_positive(), 9);
        assert_eq!(rs.rho, vec![Scalar::from_ratio(5, 2), Scalar::from_ratio(3, 2), Scalar::from_ratio(1, 2)]);
    }

    #[test]
    fn g2_roots_and_letters() {
        let rs = RootSystem::build(CoxeterType::g2()).unwrap();
        let mut labels = rs.labels.clone();
        labels.sort();
        assert_eq!(labels, vec!["a", "b", "c", "d", "e", "f"]);
        // Letters are coroot coordinates: b = 3a + f etc.
        let q = rs.quantum_data().unwrap();
        let idx = |l: &str| rs.index_of_label(l).unwrap();
        assert_eq!(q.coroot_coords[idx("b")], vec![3, 1]);
        assert_eq!(q.coroot_coords[idx("c")], vec![2, 1]);
        assert_eq!(q.coroot_coords[idx("d")], vec![3, 2]);
        assert_eq!(q.coroot_coords[idx("e")], vec![1, 1]);
        assert_eq!(q.heights[idx("d")], 5);
    }

    #[test]
    fn coroots_in_b2() {
        let rs = RootSystem::build(CoxeterType::b(2)).unwrap();
        assert_eq!(rs.coroot(&ints(&[1, -1])).unwrap(), ints(&[1, -1]));
        let c = rs.coroot(&ints(&[0, 1])).unwrap();
        assert_eq!(c, ints(&[0, 2]));
        assert_eq!(rs.inner(&ints(&[0, 1]), &c), Scalar::from_int(2));
        assert!(rs.coroot(&ints(&[1, 2])).is_err());
    }

    #[test]
    fn reflections() {
        let rs = RootSystem::build(CoxeterType::b(2)).unwrap();
        let g = ints(&[1, -1]);
        assert_eq!(rs.reflect(&g, &g).unwrap(), ints(&[-1, 1]));
        assert_eq!(rs.reflect(&g, &ints(&[1, 1])).unwrap(), ints(&[1, 1]));
        assert_eq!(rs.reflect(&ints(&[0, 1]), &ints(&[1, -1])).unwrap(), ints(&[1, 1]));
        assert!(rs.reflect(&ints(&[0, 0]), &g).is_err());
    }

    #[test]
    fn fundamental_weights_are_dual() {
        for t in [CoxeterType::a(3), CoxeterType::b(3), CoxeterType::d(4), CoxeterType::g2(), CoxeterType::i2(5)] {
            let rs = RootSystem::build(t).unwrap();
            for (s, w) in rs.fundamental_weights.iter().enumerate() {
                for (u, &k) in rs.simple_index.iter().enumerate() {
                    let v = rs.pairing(w, k);
                    assert_eq!(v, if s == u { Scalar::one() } else { Scalar::zero() }, "{t}");
                }
            }
        }
    }

    #[test]
    fn integral_pairings_in_crystallographic_types() {
        for t in [CoxeterType::b(3), CoxeterType::d(4), CoxeterType::g2(), CoxeterType::a(3), CoxeterType::i2(4), CoxeterType::i2(6)] {
            let rs = RootSystem::build(t).unwrap();
            let roots = rs.crystallographic_roots().unwrap();
            for g in &roots {
                for d in &roots {
                    let c = &(&Scalar::from_int(2) * &rs.inner(d, g)) / &rs.inner(g, g);
                    assert!(c.as_integer().is_some(), "{t}: {c}");
                }
            }
        }
    }

    #[test]
    fn heights_sum_coroot_coords() {
        let rs = RootSystem::build(CoxeterType::b(2)).unwrap();
        let q = rs.quantum_data().unwrap();
        let k = rs.index_of_label("~[1,2]").unwrap();
        assert_eq!(q.heights[k], q.coroot_coords[k].iter().sum::<i64>());
        let rho = &rs.rho;
        assert_eq!(rs.pairing(rho, k), Scalar::from_int(q.heights[k]));
    }

    #[test]
    fn dihedral_non_crystallographic_has_no_quantum_data() {
        let rs = RootSystem::build(CoxeterType::i2(5)).unwrap();
        assert!(rs.quantum_data().is_err());
        let rs = RootSystem::build(CoxeterType::i2(4)).unwrap();
        assert!(rs.quantum_data().is_ok());
    }

    /// Groups unordered pairs of positive roots by the plane they span.
    fn brute_force_planes(rs: &RootSystem) -> Vec<Vec<usize>> {
        let n = rs.num_positive();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut plane: Vec<usize> = (0..n)
                    .filter(|&k| {
                        // k lies in span(i, j) iff the 3x3 minor rank drops
                        let v = |x: usize| rs.positive[x].clone();
                        let m = vec![v(i), v(j), v(k)];
                        let g: Vec<Vec<Scalar>> = m.iter().map(|a| m.iter().map(|b| rs.inner(a, b)).collect()).collect();
                        det_dense(g).is_zero()
                    })
                    .collect();
                plane.sort();
                if !groups.contains(&plane) {
                    groups.push(plane);
                }
            }
        }
        groups
    }

    #[test]
    fn rank2_subsystems_of_b3() {
        let rs = RootSystem::build(CoxeterType::b(3)).unwrap();
        let subs = rs.rank2_subsystems();
        let count = |m: usize| subs.iter().filter(|s| s.m == m).count();
        let oracle = brute_force_planes(&rs);
        assert_eq!(subs.len(), oracle.len());
        assert_eq!(count(4), 3);
        assert_eq!(count(3), 4);
        assert_eq!(count(2), 6);
        assert_eq!(subs.iter().map(|s| s.m * (s.m - 1) / 2).sum::<usize>(), 9 * 8 / 2);
    }

    #[test]
    fn rank2_cone_condition() {
        for t in [CoxeterType::a(2), CoxeterType::b(3), CoxeterType::g2(), CoxeterType::i2(7)] {
            let rs = RootSystem::build(t).unwrap();
            for sub in rs.rank2_subsystems() {
                for w in sub.roots.windows(2) {
                    // No other member lies strictly inside the cone of a consecutive pair.
                    let (u, v) = (&rs.positive[w[0]], &rs.positive[w[1]]);
                    let mat = vec![vec![rs.inner(u, u), rs.inner(u, v)], vec![rs.inner(v, u), rs.inner(v, v)]];
                    for &k in &sub.roots {
                        if k == w[0] || k == w[1] {
                            continue;
                        }
                        let x = &rs.positive[k];
                        let c = solve_dense(mat.clone(), vec![rs.inner(x, u), rs.inner(x, v)]).unwrap();
                        assert!(!(c[0].signum() > 0 && c[1].signum() > 0), "{t}");
                    }
                }
            }
        }
    }

    #[test]
    fn small_rank2_cases() {
        let a2 = RootSystem::build(CoxeterType::a(2)).unwrap();
        let s = a2.rank2_subsystems();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].m, 3);
        let g2 = RootSystem::build(CoxeterType::g2()).unwrap();
        let s = g2.rank2_subsystems();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].m, 6);
    }

    #[test]
    fn closure_is_stable_under_simple_reflections() {
        for t in [CoxeterType::b(3), CoxeterType::d(4), CoxeterType::g2(), CoxeterType::i2(7)] {
            let rs = RootSystem::build(t).unwrap();
            for g in &rs.positive {
                for s in &rs.simple {
                    let r = rs.reflect(s, g).unwrap();
                    assert!(rs.find_root(&r).is_ok());
                }
            }
        }
    }
}
