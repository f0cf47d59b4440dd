//! Exact scalars: rationals and elements of cyclotomic fields.
//!
//! A [`Scalar`] is either a rational number or an element of `Q(zeta_n)`
//! stored as a coefficient vector reduced modulo the `n`-th cyclotomic
//! polynomial. Values whose cyclotomic part vanishes are demoted to the
//! rational variant, so structural equality is field equality.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense polynomial over Q, lowest degree first, no trailing zeros.
type QPoly = Vec<BigRational>;

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn qpoly_mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn qpoly_sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out: QPoly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by a nonzero `b`.
fn qpoly_divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let mut rem: QPoly = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() > db && !rem.is_empty() {
        let k = rem.len() - 1 - db;
        let c = rem.last().unwrap() / &lead;
        for (j, y) in b.iter().enumerate() {
            rem[k + j] -= &c * y;
        }
        quot[k] = c;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// The cyclotomic field `Q(zeta_n)` presented as `Q[x] / Phi_n(x)`.
#[derive(Debug)]
pub struct CyclotomicField {
    order: usize,
    modulus: QPoly,
}

impl CyclotomicField {
    /// Shared instance for `Q(zeta_n)`; fields with equal order compare equal.
    pub fn get(order: usize) -> Arc<CyclotomicField> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CyclotomicField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("cyclotomic cache poisoned");
        guard
            .entry(order)
            .or_insert_with(|| {
                Arc::new(CyclotomicField {
                    order,
                    modulus: cyclotomic_polynomial(order),
                })
            })
            .clone()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Degree over Q, i.e. Euler's totient of the order.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Integer coefficients of the defining polynomial, lowest degree first.
    pub fn modulus(&self) -> Vec<BigInt> {
        self.modulus.iter().map(|c| c.to_integer()).collect()
    }

    fn reduce(&self, p: QPoly) -> QPoly {
        qpoly_divrem(&p, &self.modulus).1
    }

    /// `zeta^k` for any integer `k`.
    pub fn zeta_pow(self: &Arc<Self>, k: i64) -> Scalar {
        let e = k.rem_euclid(self.order as i64) as usize;
        let mut p = vec![BigRational::zero(); e + 1];
        p[e] = BigRational::one();
        Scalar::from_cyclotomic(self.clone(), self.reduce(p))
    }

    /// `cos(k * pi / m)` where `order` is a multiple of `2m`.
    pub fn cos_pi(self: &Arc<Self>, k: i64, m: i64) -> Scalar {
        let step = self.order as i64 / (2 * m);
        assert_eq!(step * 2 * m, self.order as i64, "order must be divisible by 2m");
        let half = Scalar::from_ratio(1, 2);
        (self.zeta_pow(k * step) + self.zeta_pow(-k * step)) * half
    }

    /// `sin(k * pi / m)` where `order` is a multiple of `4m`.
    pub fn sin_pi(self: &Arc<Self>, k: i64, m: i64) -> Scalar {
        let step = self.order as i64 / (2 * m);
        assert_eq!(self.order as i64 % (4 * m), 0, "order must be divisible by 4m");
        // i = zeta^(order/4); sin x = (z - z^-1) / (2i)
        let i = self.zeta_pow(self.order as i64 / 4);
        let diff = self.zeta_pow(k * step) - self.zeta_pow(-k * step);
        let two_i = i * Scalar::from_int(2);
        diff * two_i.inv().expect("2i is invertible")
    }
}

/// `Phi_n` with integer coefficients, computed by dividing `x^n - 1` by
/// `Phi_d` for every proper divisor `d` of `n`.
pub fn cyclotomic_polynomial(n: usize) -> Vec<BigRational> {
    assert!(n >= 1);
    let mut p = vec![BigRational::zero(); n + 1];
    p[0] = -BigRational::one();
    p[n] = BigRational::one();
    for d in 1..n {
        if n % d == 0 {
            let (q, r) = qpoly_divrem(&p, &cyclotomic_polynomial(d));
            debug_assert!(r.is_empty());
            p = q;
        }
    }
    p
}

/// Exact number in Q or in a cyclotomic extension of Q.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Cyclotomic(Arc<CyclotomicField>, Vec<BigRational>),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar::Rational(BigRational::from_integer(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Rational(r)
    }

    fn from_cyclotomic(field: Arc<CyclotomicField>, mut coeffs: QPoly) -> Self {
        trim(&mut coeffs);
        if coeffs.len() <= 1 {
            return Scalar::Rational(coeffs.pop().unwrap_or_else(BigRational::zero));
        }
        Scalar::Cyclotomic(field, coeffs)
    }

    fn coeffs(&self) -> QPoly {
        match self {
            Scalar::Rational(r) if r.is_zero() => Vec::new(),
            Scalar::Rational(r) => vec![r.clone()],
            Scalar::Cyclotomic(_, c) => c.clone(),
        }
    }

    fn field_of(a: &Scalar, b: &Scalar) -> Option<Arc<CyclotomicField>> {
        match (a, b) {
            (Scalar::Cyclotomic(f, _), Scalar::Cyclotomic(g, _)) => {
                assert_eq!(f.order, g.order, "mixing cyclotomic fields of different order");
                Some(f.clone())
            }
            (Scalar::Cyclotomic(f, _), _) | (_, Scalar::Cyclotomic(f, _)) => Some(f.clone()),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Cyclotomic(..) => None,
        }
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|n| n.to_i64())
    }

    pub fn field(&self) -> Option<&Arc<CyclotomicField>> {
        match self {
            Scalar::Cyclotomic(f, _) => Some(f),
            Scalar::Rational(_) => None,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) if r.is_zero() => None,
            Scalar::Rational(r) => Some(Scalar::Rational(r.recip())),
            Scalar::Cyclotomic(f, c) => {
                // Extended Euclid: find u with u * c = 1 mod Phi.
                let (mut r0, mut r1) = (f.modulus.clone(), c.clone());
                let (mut t0, mut t1): (QPoly, QPoly) = (Vec::new(), vec![BigRational::one()]);
                while !r1.is_empty() {
                    let (q, r) = qpoly_divrem(&r0, &r1);
                    let t2 = qpoly_sub(&t0, &qpoly_mul(&q, &t1));
                    r0 = std::mem::replace(&mut r1, r);
                    t0 = std::mem::replace(&mut t1, t2);
                }
                // r0 is a nonzero constant since Phi is irreducible.
                assert_eq!(r0.len(), 1, "cyclotomic modulus not irreducible");
                let scale = r0[0].recip();
                let u: QPoly = t0.into_iter().map(|x| x * &scale).collect();
                Some(Scalar::from_cyclotomic(f.clone(), f.reduce(u)))
            }
        }
    }

    /// Complex value under the embedding `zeta_n -> exp(2 pi i / n)`.
    pub fn approx(&self) -> (f64, f64) {
        match self {
            Scalar::Rational(r) => (r.to_f64().unwrap_or(f64::NAN), 0.0),
            Scalar::Cyclotomic(f, c) => {
                let mut re = 0.0;
                let mut im = 0.0;
                for (k, x) in c.iter().enumerate() {
                    let ang = 2.0 * std::f64::consts::PI * k as f64 / f.order as f64;
                    let v = x.to_f64().unwrap_or(f64::NAN);
                    re += v * ang.cos();
                    im += v * ang.sin();
                }
                (re, im)
            }
        }
    }

    /// Sign of a real value. Exact for rationals; cyclotomic values are
    /// tested for zero exactly and signed through the complex embedding.
    pub fn signum(&self) -> i32 {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Scalar::Cyclotomic(..) => {
                let (re, im) = self.approx();
                debug_assert!(im.abs() < 1e-9, "signum of a non-real number");
                if re > 0.0 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Image in `F_p` under `zeta -> root`, where `root` is a primitive
    /// `n`-th root of unity mod `p`. `None` if a denominator vanishes mod `p`.
    pub fn reduce_mod(&self, p: u64, root: u64) -> Option<u64> {
        let red = |r: &BigRational| -> Option<u64> {
            let pb = BigInt::from(p);
            let num = r.numer().mod_floor(&pb).to_u64()?;
            let den = r.denom().mod_floor(&pb).to_u64()?;
            if den == 0 {
                return None;
            }
            Some(num * crate::linalg::modp_inv(den, p) % p)
        };
        match self {
            Scalar::Rational(r) => red(r),
            Scalar::Cyclotomic(_, c) => {
                let mut acc = 0u64;
                let mut pw = 1u64;
                for x in c {
                    acc = (acc + red(x)? * pw) % p;
                    pw = pw * root % p;
                }
                Some(acc)
            }
        }
    }

    /// JSON-facing form: `"p/q"` for rationals, coefficient strings plus
    /// the field order for cyclotomic values.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Rational(r) => serde_json::Value::String(rational_string(r)),
            Scalar::Cyclotomic(f, c) => serde_json::json!({
                "cyclotomic_order": f.order,
                "coefficients": c.iter().map(rational_string).collect::<Vec<_>>(),
            }),
        }
    }
}

/// `"p/q"` with `q` omitted when it is one.
pub fn rational_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (Scalar::Cyclotomic(f, a), Scalar::Cyclotomic(g, b)) => f.order == g.order && a == b,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Scalar::Rational(r) => {
                0u8.hash(state);
                r.hash(state);
            }
            Scalar::Cyclotomic(f, c) => {
                1u8.hash(state);
                f.order.hash(state);
                c.hash(state);
            }
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rational(r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", rational_string(r)),
            Scalar::Cyclotomic(field, c) => {
                let mut first = true;
                write!(f, "(")?;
                for (k, x) in c.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    match k {
                        0 => write!(f, "{}", rational_string(x))?,
                        1 => write!(f, "{}*z{}", rational_string(x), field.order)?,
                        _ => write!(f, "{}*z{}^{}", rational_string(x), field.order, k)?,
                    }
                }
                write!(f, ")")
            }
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            _ => {
                let f = Scalar::field_of(self, rhs).unwrap();
                let (a, b) = (self.coeffs(), rhs.coeffs());
                let n = a.len().max(b.len());
                let c = (0..n)
                    .map(|i| {
                        let mut x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
                        if let Some(y) = b.get(i) {
                            x += y;
                        }
                        x
                    })
                    .collect();
                Scalar::from_cyclotomic(f, c)
            }
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Rational(a), Scalar::Cyclotomic(f, c)) | (Scalar::Cyclotomic(f, c), Scalar::Rational(a)) => {
                if a.is_zero() {
                    return Scalar::zero();
                }
                Scalar::from_cyclotomic(f.clone(), c.iter().map(|x| x * a).collect())
            }
            (Scalar::Cyclotomic(f, a), Scalar::Cyclotomic(_, b)) => {
                let _ = Scalar::field_of(self, rhs);
                Scalar::from_cyclotomic(f.clone(), f.reduce(qpoly_mul(a, b)))
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Cyclotomic(f, c) => Scalar::Cyclotomic(f.clone(), c.iter().map(|x| -x).collect()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            _ => self + &(-rhs),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (&mut *self, rhs) {
            *a += b;
            return;
        }
        *self = &*self + rhs;
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (&mut *self, rhs) {
            *a -= b;
            return;
        }
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_coeffs(n: usize) -> Vec<i64> {
        cyclotomic_polynomial(n).iter().map(|c| c.to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(int_coeffs(1), vec![-1, 1]);
        assert_eq!(int_coeffs(4), vec![1, 0, 1]);
        assert_eq!(int_coeffs(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(int_coeffs(20), vec![1, 0, -1, 0, 1, 0, -1, 0, 1]);
        assert_eq!(CyclotomicField::get(28).degree(), 12);
    }

    #[test]
    fn zeta_has_full_order() {
        for m in 2..=8i64 {
            let f = CyclotomicField::get(4 * m as usize);
            let z = f.zeta_pow(1);
            assert!(z.pow(4 * m as u32).is_one());
            assert!(!z.pow(2 * m as u32).is_one());
        }
    }

    #[test]
    fn sine_cosine_identities() {
        for m in 2..=8i64 {
            let f = CyclotomicField::get(4 * m as usize);
            for i in 0..m {
                let c = f.cos_pi(i, m);
                let s = f.sin_pi(i, m);
                assert!((&c * &c + &s * &s).is_one());
                let (cr, _) = c.approx();
                let (sr, _) = s.approx();
                let ang = std::f64::consts::PI * i as f64 / m as f64;
                assert!((cr - ang.cos()).abs() < 1e-12);
                assert!((sr - ang.sin()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rational_values_demote() {
        let f = CyclotomicField::get(12);
        // cos(pi/3) = 1/2
        assert_eq!(f.cos_pi(1, 3), Scalar::from_ratio(1, 2));
        let s = f.sin_pi(1, 3);
        assert_eq!(&s * &s, Scalar::from_ratio(3, 4));
    }

    #[test]
    fn inverse_roundtrip() {
        let f = CyclotomicField::get(20);
        let x = f.zeta_pow(1) + f.zeta_pow(3) * Scalar::from_int(2) + Scalar::from_int(5);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn reduction_is_a_ring_map() {
        let p = 13u64;
        // 2 has order 12 mod 13
        let root = 2u64;
        let f = CyclotomicField::get(12);
        let a = f.zeta_pow(1) + Scalar::from_ratio(1, 3);
        let b = f.zeta_pow(5) * Scalar::from_int(4);
        let lhs = (&a * &b).reduce_mod(p, root).unwrap();
        let rhs = a.reduce_mod(p, root).unwrap() * b.reduce_mod(p, root).unwrap() % p;
        assert_eq!(lhs, rhs);
    }
}
