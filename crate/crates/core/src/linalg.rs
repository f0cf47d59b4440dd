//! Exact sparse row reduction over Q (or a cyclotomic field) and over `F_p`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, ToPrimitive, Zero};

use crate::scalar::Scalar;

/// Prime used for modular double checks. `PRIME - 1` is divisible by
/// 3360, so `F_p` contains the `4m`-th roots of unity for every `m <= 8`.
pub const PRIME: u64 = 2_147_480_161;

/// A generator of the multiplicative group of `F_PRIME`.
pub const PRIMITIVE_ROOT: u64 = 19;

/// A primitive `n`-th root of unity in `F_PRIME`.
pub fn root_of_unity(n: u64) -> Option<u64> {
    ((PRIME - 1) % n == 0).then(|| modp_pow(PRIMITIVE_ROOT, (PRIME - 1) / n, PRIME))
}

pub fn modp_pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

pub fn modp_inv(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod p");
    modp_pow(a, p - 2, p)
}

/// Minimal field interface for the elimination routines.
pub trait FieldElem: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl FieldElem for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        Scalar::inv(self).expect("inverse of zero")
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
}

/// Element of `F_p` for the fixed [`PRIME`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Fp(pub u64);

impl Fp {
    pub fn new(v: i64) -> Fp {
        Fp(v.rem_euclid(PRIME as i64) as u64)
    }
}

impl FieldElem for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        Fp((self.0 + other.0) % PRIME)
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(self.0 * other.0 % PRIME)
    }
    fn neg(&self) -> Self {
        Fp((PRIME - self.0) % PRIME)
    }
    fn inv(&self) -> Self {
        Fp(modp_inv(self.0, PRIME))
    }
}

/// Rational number kept in machine words while it fits, promoted to a
/// big rational on overflow. Used by the large eliminations, where almost
/// every entry stays small.
#[derive(Clone, Debug)]
pub enum Rat {
    Small(Ratio<i64>),
    Big(BigRational),
}

impl Rat {
    pub fn from_int(n: i64) -> Rat {
        Rat::Small(Ratio::from_integer(n))
    }

    fn big(&self) -> BigRational {
        match self {
            Rat::Small(r) => BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Rat::Big(b) => b.clone(),
        }
    }

    fn shrink(b: BigRational) -> Rat {
        match (b.numer().to_i64(), b.denom().to_i64()) {
            (Some(n), Some(d)) => Rat::Small(Ratio::new_raw(n, d)),
            _ => Rat::Big(b),
        }
    }

    pub fn to_scalar(&self) -> Scalar {
        Scalar::from_rational(self.big())
    }

    /// Image in `F_PRIME`; the denominator must be a unit there.
    pub fn to_fp(&self) -> Fp {
        let p = BigInt::from(PRIME);
        let b = self.big();
        let n = (b.numer() % &p + &p) % &p;
        let d = (b.denom() % &p + &p) % &p;
        let n = Fp(n.to_u64().expect("residue"));
        let d = Fp(d.to_u64().expect("residue"));
        n.mul(&d.inv())
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Rat::Small(a), Rat::Small(b)) => a == b,
            _ => self.big() == other.big(),
        }
    }
}

impl FieldElem for Rat {
    fn zero() -> Self {
        Rat::from_int(0)
    }
    fn one() -> Self {
        Rat::from_int(1)
    }
    fn is_zero(&self) -> bool {
        match self {
            Rat::Small(r) => r.is_zero(),
            Rat::Big(b) => b.is_zero(),
        }
    }
    fn add(&self, other: &Self) -> Self {
        if let (Rat::Small(a), Rat::Small(b)) = (self, other) {
            if let Some(c) = a.checked_add(b) {
                return Rat::Small(c);
            }
        }
        Rat::shrink(self.big() + other.big())
    }
    fn mul(&self, other: &Self) -> Self {
        if let (Rat::Small(a), Rat::Small(b)) = (self, other) {
            if let Some(c) = a.checked_mul(b) {
                return Rat::Small(c);
            }
        }
        Rat::shrink(self.big() * other.big())
    }
    fn neg(&self) -> Self {
        match self {
            Rat::Small(r) if *r.numer() != i64::MIN => Rat::Small(-r),
            _ => Rat::shrink(-self.big()),
        }
    }
    fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Rat::Small(r) if *r.numer() != i64::MIN => Rat::Small(r.recip()),
            _ => Rat::shrink(self.big().recip()),
        }
    }
    fn sub(&self, other: &Self) -> Self {
        if let (Rat::Small(a), Rat::Small(b)) = (self, other) {
            if let Some(c) = a.checked_sub(b) {
                return Rat::Small(c);
            }
        }
        Rat::shrink(self.big() - other.big())
    }
}

/// Sparse vector keyed by column index.
pub type SparseRow<F> = BTreeMap<usize, F>;

/// Incrementally maintained row-echelon basis. Every stored row has a
/// distinct pivot (its smallest column) with coefficient one.
#[derive(Clone, Debug)]
pub struct Echelon<F: FieldElem> {
    rows: Vec<SparseRow<F>>,
    pivots: HashMap<usize, usize>,
}

impl<F: FieldElem> Default for Echelon<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: FieldElem> Echelon<F> {
    pub fn new() -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after eliminating every pivot column of the basis.
    pub fn reduce(&self, mut v: SparseRow<F>) -> SparseRow<F> {
        let mut cursor = 0usize;
        loop {
            let next = v.range(cursor..).find(|(c, _)| self.pivots.contains_key(c)).map(|(c, x)| (*c, x.clone()));
            let Some((col, coef)) = next else { break };
            let row = &self.rows[self.pivots[&col]];
            for (c, x) in row {
                let delta = coef.mul(x);
                let entry = v.entry(*c).or_insert_with(F::zero);
                *entry = entry.sub(&delta);
                if entry.is_zero() {
                    v.remove(c);
                }
            }
            cursor = col + 1;
        }
        v
    }

    /// Adds `v` to the span; returns true if the rank grew.
    pub fn insert(&mut self, v: SparseRow<F>) -> bool {
        let r = self.reduce(v);
        let Some((&pivot, lead)) = r.iter().next() else {
            return false;
        };
        let scale = lead.inv();
        let row: SparseRow<F> = r.iter().map(|(c, x)| (*c, x.mul(&scale))).collect();
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    pub fn contains(&self, v: SparseRow<F>) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Rank of a list of sparse rows.
pub fn rank<F: FieldElem>(rows: impl IntoIterator<Item = SparseRow<F>>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Solves the square system `a x = b` by Gaussian elimination; `None`
/// if `a` is singular.
pub fn solve_dense(mut a: Vec<Vec<Scalar>>, mut b: Vec<Scalar>) -> Option<Vec<Scalar>> {
    let n = a.len();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(k, p);
        b.swap(k, p);
        let inv = a[k][k].inv()?;
        for j in k..n {
            a[k][j] = &a[k][j] * &inv;
        }
        b[k] = &b[k] * &inv;
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= &t;
            }
            let t = &f * &b[k];
            b[i] -= &t;
        }
    }
    Some(b)
}

/// Determinant of a small dense matrix by elimination.
pub fn det_dense(mut a: Vec<Vec<Scalar>>) -> Scalar {
    let n = a.len();
    let mut det = Scalar::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Scalar::zero();
        };
        if p != k {
            a.swap(k, p);
            det = -det;
        }
        det *= &a[k][k];
        let inv = a[k][k].inv().expect("nonzero pivot");
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] * &inv;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= &t;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[(usize, i64)]) -> SparseRow<Scalar> {
        v.iter().map(|(c, x)| (*c, Scalar::from_int(*x))).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![row(&[(0, 1), (1, 2)]), row(&[(1, 1), (2, 1)]), row(&[(0, 1), (1, 3), (2, 1)])];
        assert_eq!(rank(rows), 2);
    }

    #[test]
    fn modular_rank_matches_rational_rank() {
        let data: Vec<Vec<(usize, i64)>> = vec![
            vec![(0, 3), (2, -1), (4, 2)],
            vec![(1, 1), (2, 5)],
            vec![(0, 6), (1, 1), (2, 3), (4, 4)],
            vec![(3, 7)],
        ];
        let q = rank(data.iter().map(|r| row(r)));
        let p = rank(data.iter().map(|r| r.iter().map(|(c, x)| (*c, Fp::new(*x))).collect::<SparseRow<Fp>>()));
        assert_eq!(q, 3);
        assert_eq!(p, 3);
    }

    #[test]
    fn membership() {
        let mut e = Echelon::new();
        e.insert(row(&[(0, 1), (1, 1)]));
        e.insert(row(&[(1, 1), (2, -1)]));
        assert!(e.contains(row(&[(0, 1), (2, 1)])));
        assert!(!e.contains(row(&[(2, 1)])));
    }

    #[test]
    fn roots_of_unity_have_exact_order() {
        for m in 2..=8u64 {
            let n = 4 * m;
            let z = root_of_unity(n).unwrap();
            assert_eq!(modp_pow(z, n, PRIME), 1);
            for d in 1..n {
                if n % d == 0 {
                    assert_ne!(modp_pow(z, d, PRIME), 1);
                }
            }
        }
    }

    #[test]
    fn dense_solve_and_det() {
        let a = vec![
            vec![Scalar::from_int(2), Scalar::from_int(-1)],
            vec![Scalar::from_int(-1), Scalar::from_int(2)],
        ];
        let x = solve_dense(a.clone(), vec![Scalar::one(), Scalar::zero()]).unwrap();
        assert_eq!(x, vec![Scalar::from_ratio(2, 3), Scalar::from_ratio(1, 3)]);
        assert_eq!(det_dense(a), Scalar::from_int(3));
        let singular = vec![vec![Scalar::one(), Scalar::one()], vec![Scalar::one(), Scalar::one()]];
        assert!(solve_dense(singular.clone(), vec![Scalar::one(), Scalar::one()]).is_none());
        assert!(det_dense(singular).is_zero());
    }

    #[test]
    fn small_rationals_promote_on_overflow() {
        let big = Rat::from_int(i64::MAX);
        let sum = big.add(&big);
        assert!(matches!(sum, Rat::Big(_)));
        let back = sum.mul(&Rat::Small(Ratio::new(1, 2)));
        assert_eq!(back, big);
        assert!(matches!(back, Rat::Small(_)));
        assert_eq!(Rat::Small(Ratio::new(1, 3)).to_fp().mul(&Fp(3)), Fp(1));
        assert_eq!(Rat::from_int(-1).to_fp(), Fp(PRIME - 1));
    }

    #[test]
    fn inverse_mod_prime() {
        for a in [1u64, 2, 3, 12345, PRIME - 1] {
            assert_eq!(a * modp_inv(a, PRIME) % PRIME, 1);
        }
    }
}
