//! Sparse multivariate polynomials with exact coefficients.
//!
//! Monomials are exponent vectors ordered graded-lexicographically, so
//! the last entry of the term map is the leading term.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use smallvec::SmallVec;

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Self::term(Monomial::var(nvars, i), Scalar::one())
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let nvars = m.0.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { nvars, terms }
    }

    /// Linear form `sum_i coeffs[i] * x_i`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut p = MultiPoly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, i), c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn coeff_of(&self, exps: &[u16]) -> Scalar {
        self.coeff(&Monomial::from_exps(exps))
    }

    /// Constant term.
    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        self.is_constant().then(|| self.constant_term())
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert_eq!(m.0.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &MultiPoly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Replace variable `i` by `vals[i]` for every `i`.
    pub fn substitute(&self, vals: &[MultiPoly]) -> MultiPoly {
        assert_eq!(vals.len(), self.nvars);
        let target = vals.first().map(|v| v.nvars).unwrap_or(0);
        let mut cache: Vec<Vec<MultiPoly>> = vals.iter().map(|v| vec![MultiPoly::one(v.nvars), v.clone()]).collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().unwrap() * &vals[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e as usize];
            }
            out += &t;
        }
        out
    }

    /// Evaluate with every variable set to a scalar.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= &point[i].pow(e as u32);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Set variables listed in `fixed` to the given values, keeping the rest.
    pub fn specialize(&self, fixed: &[(usize, Scalar)]) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut exps = m.clone();
            let mut t = c.clone();
            for (i, v) in fixed {
                let e = exps.0[*i];
                if e > 0 {
                    t *= &v.pow(e as u32);
                    exps.0[*i] = 0;
                }
            }
            out.add_term(exps, t);
        }
        out
    }

    /// Re-embed into a ring with `nvars` variables, sending variable `i` to `map[i]`.
    pub fn rename(&self, nvars: usize, map: &[usize]) -> MultiPoly {
        let mut out = MultiPoly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = Monomial::one(nvars);
            for (i, &k) in m.0.iter().enumerate() {
                e.0[map[i]] += k;
            }
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (lm, lc) = d.leading()?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.div(lm)?;
            let qc = &c * &lc_inv;
            let step = d.mul_monomial(&qm, &qc);
            rem -= &step;
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Polynomial square root by leading-term lifting; `None` if `self`
    /// is not a square with rational coefficients. The result has a
    /// positive leading coefficient.
    pub fn sqrt_exact(&self) -> Option<MultiPoly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let (lm, lc) = self.leading()?;
        let root_m = Monomial(lm.0.iter().map(|&e| if e % 2 == 0 { Some(e / 2) } else { None }).collect::<Option<_>>()?);
        let root_c = rational_sqrt(lc.as_rational()?)?;
        let lead = MultiPoly::term(root_m.clone(), Scalar::from_rational(root_c.clone()));
        let two_lead_inv = Scalar::from_rational(root_c * BigRational::from_integer(BigInt::from(2))).inv()?;
        let mut root = lead;
        loop {
            let rem = self - &(&root * &root);
            let Some((m, c)) = rem.leading() else { return Some(root) };
            let qm = m.div(&root_m)?;
            if qm >= root_m {
                return None;
            }
            root.add_term(qm, c * &two_lead_inv);
        }
    }

    pub fn format_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { names[i].to_string() } else { format!("{}^{}", names[i], e) })
                .collect();
            let neg = c.as_rational().map(|r| r.is_negative()).unwrap_or(false);
            let mag = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                s.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    s.push_str(&mag.to_string());
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }

    /// Sorted monomial/coefficient records for serialization.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .rev()
                .map(|(m, c)| serde_json::json!({ "exponents": m.0.to_vec(), "coefficient": c.to_json() }))
                .collect(),
        )
    }
}

/// Parses `+ - * / ^` expressions with integer constants, parentheses and
/// the given variable names. Juxtaposition means multiplication and names
/// are matched greedily, so `3q2(q1+q2)` and `x1^3x2^3` are accepted.
/// Division is allowed by nonzero integer constants only.
pub fn parse_poly(src: &str, names: &[&str]) -> Result<MultiPoly, String> {
    let mut p = Parser {
        s: src.as_bytes(),
        pos: 0,
        names,
    };
    let out = p.sum()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(format!("unexpected input at byte {} of {src:?}", p.pos));
    }
    Ok(out)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    names: &'a [&'a str],
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<MultiPoly, String> {
        let n = self.names.len();
        let mut acc = MultiPoly::zero(n);
        let mut sign = 1i64;
        match self.peek() {
            Some(b'-') => {
                sign = -1;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.product()?;
            acc.add_assign_scaled(&t, &Scalar::from_int(sign));
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Result<MultiPoly, String> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.integer()?;
                    if d == 0 {
                        return Err("division by zero".into());
                    }
                    acc = acc.scale(&Scalar::from_ratio(1, d));
                    continue;
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {}
                _ => return Ok(acc),
            }
            let f = self.power()?;
            acc = &acc * &f;
        }
    }

    fn power(&mut self) -> Result<MultiPoly, String> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| "bad exponent".to_string())?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, String> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().map_err(|_| format!("expected a number at byte {start}"))
    }

    fn atom(&mut self) -> Result<MultiPoly, String> {
        let n = self.names.len();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err("missing closing parenthesis".into());
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(MultiPoly::constant(n, Scalar::from_int(self.integer()?))),
            Some(_) => {
                let rest = &self.s[self.pos..];
                let best = self
                    .names
                    .iter()
                    .enumerate()
                    .filter(|(_, name)| rest.starts_with(name.as_bytes()))
                    .max_by_key(|(_, name)| name.len());
                let Some((i, name)) = best else {
                    return Err(format!("unknown symbol at byte {}", self.pos));
                };
                self.pos += name.len();
                Ok(MultiPoly::var(n, i))
            }
            None => Err("unexpected end of input".into()),
        }
    }
}

fn bigint_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    Some(BigRational::new(bigint_sqrt(r.numer())?, bigint_sqrt(r.denom())?))
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        write!(f, "{}", self.format_with(&refs))
    }
}

impl std::ops::AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl std::ops::SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&Scalar::from_int(-1))
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

/// Elementary, complete homogeneous and power-sum symmetric polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymmetricKind {
    Elementary,
    Complete,
    Power,
}

/// Symmetric polynomial of degree `k` in the listed variables of an
/// `nvars`-variable ring.
pub fn symmetric_poly(kind: SymmetricKind, k: usize, nvars: usize, vars: &[usize]) -> MultiPoly {
    assert!(!vars.is_empty(), "symmetric polynomial needs at least one variable");
    let mut out = MultiPoly::zero(nvars);
    match kind {
        SymmetricKind::Elementary => {
            for subset in combinations(vars.len(), k) {
                let mut m = Monomial::one(nvars);
                for i in subset {
                    m.0[vars[i]] += 1;
                }
                out.add_term(m, Scalar::one());
            }
        }
        SymmetricKind::Complete => {
            for multiset in multisets(vars.len(), k) {
                let mut m = Monomial::one(nvars);
                for i in multiset {
                    m.0[vars[i]] += 1;
                }
                out.add_term(m, Scalar::one());
            }
        }
        SymmetricKind::Power => {
            if k == 0 {
                return MultiPoly::constant(nvars, Scalar::from_int(vars.len() as i64));
            }
            for &v in vars {
                let mut m = Monomial::one(nvars);
                m.0[v] = k as u16;
                out.add_term(m, Scalar::one());
            }
        }
    }
    out
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All weakly increasing length-`k` sequences over `0..n`.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All monomials of total degree exactly `d` in `nvars` variables.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    multisets(nvars, d as usize)
        .into_iter()
        .map(|ms| {
            let mut m = Monomial::one(nvars);
            for i in ms {
                m.0[i] += 1;
            }
            m
        })
        .collect()
}

/// Determinant by fraction-free Bareiss elimination with row pivoting.
pub fn bareiss_det(matrix: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = matrix.len();
    assert!(matrix.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    let nvars = matrix.first().and_then(|r| r.first()).map(|p| p.nvars()).unwrap_or(0);
    if n == 0 {
        return MultiPoly::one(nvars);
    }
    let mut a: Vec<Vec<MultiPoly>> = matrix.to_vec();
    let mut sign = Scalar::one();
    let mut prev = MultiPoly::one(nvars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return MultiPoly::zero(nvars);
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss step must divide exactly");
            }
            a[i][k] = MultiPoly::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].scale(&sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    fn c(n: usize, v: i64) -> MultiPoly {
        MultiPoly::constant(n, Scalar::from_int(v))
    }

    /// Laplace expansion along the first row.
    fn laplace(m: &[Vec<MultiPoly>]) -> MultiPoly {
        let n = m.len();
        let nv = m[0][0].nvars();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = MultiPoly::zero(nv);
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<MultiPoly>> =
                (1..n).map(|i| (0..n).filter(|&k| k != j).map(|k| m[i][k].clone()).collect()).collect();
            let t = &m[0][j] * &laplace(&minor);
            if j % 2 == 0 {
                acc += &t;
            } else {
                acc -= &t;
            }
        }
        acc
    }

    #[test]
    fn graded_lex_leading_term() {
        let p = &(&x(2, 0) * &x(2, 1)) + &x(2, 0).pow(2);
        let (m, _) = p.leading().unwrap();
        assert_eq!(m.exps(), &[2, 0]);
        let q = &p + &x(2, 1).pow(3);
        assert_eq!(q.leading().unwrap().0.exps(), &[0, 3]);
    }

    #[test]
    fn exact_division_and_failure() {
        let a = &x(3, 0) + &x(3, 1);
        let b = &x(3, 2) - &c(3, 2);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!((&prod + &c(3, 1)).div_exact(&a).is_none());
    }

    #[test]
    fn square_root_roundtrip() {
        let p = &(&x(3, 0) * &x(3, 1)) - &(&c(3, 3) * &x(3, 2));
        let p = &p + &c(3, 5);
        let sq = &p * &p;
        let r = sq.sqrt_exact().unwrap();
        assert!(r == p || r == -&p);
        assert!((&sq + &x(3, 0)).sqrt_exact().is_none());
    }

    #[test]
    fn bareiss_agrees_with_laplace() {
        let n = 3;
        let m = vec![
            vec![&x(n, 0) + &c(n, 1), x(n, 1), c(n, 0), c(n, 2)],
            vec![c(n, -1), x(n, 2), &x(n, 0) * &x(n, 1), c(n, 0)],
            vec![c(n, 0), c(n, 3), x(n, 1), x(n, 0)],
            vec![x(n, 2), c(n, 0), c(n, 1), &x(n, 2) - &c(n, 1)],
        ];
        assert_eq!(bareiss_det(&m), laplace(&m));
        let zero_pivot = vec![vec![c(n, 0), x(n, 0)], vec![x(n, 1), c(n, 1)]];
        assert_eq!(bareiss_det(&zero_pivot), laplace(&zero_pivot));
    }

    #[test]
    fn symmetric_basics() {
        let e0 = symmetric_poly(SymmetricKind::Elementary, 0, 3, &[0, 1, 2]);
        assert_eq!(e0, MultiPoly::one(3));
        let h0 = symmetric_poly(SymmetricKind::Complete, 0, 3, &[0, 1, 2]);
        assert_eq!(h0, MultiPoly::one(3));
        let e2 = symmetric_poly(SymmetricKind::Elementary, 2, 3, &[0, 1, 2]);
        let expect = &(&(&x(3, 0) * &x(3, 1)) + &(&x(3, 0) * &x(3, 2))) + &(&x(3, 1) * &x(3, 2));
        assert_eq!(e2, expect);
        assert!(symmetric_poly(SymmetricKind::Elementary, 4, 3, &[0, 1, 2]).is_zero());
    }

    #[test]
    fn newton_identities() {
        // k e_k = sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i  and  k h_k = sum h_{k-i} p_i
        let n = 4;
        let vars = [0, 1, 2, 3];
        for k in 1..=6usize {
            let mut lhs_e = MultiPoly::zero(n);
            let mut lhs_h = MultiPoly::zero(n);
            for i in 1..=k {
                let p = symmetric_poly(SymmetricKind::Power, i, n, &vars);
                let e = symmetric_poly(SymmetricKind::Elementary, k - i, n, &vars);
                let h = symmetric_poly(SymmetricKind::Complete, k - i, n, &vars);
                let t = &e * &p;
                if i % 2 == 1 {
                    lhs_e += &t;
                } else {
                    lhs_e -= &t;
                }
                lhs_h += &(&h * &p);
            }
            let kk = Scalar::from_int(k as i64);
            assert_eq!(lhs_e, symmetric_poly(SymmetricKind::Elementary, k, n, &vars).scale(&kk));
            assert_eq!(lhs_h, symmetric_poly(SymmetricKind::Complete, k, n, &vars).scale(&kk));
        }
    }

    #[test]
    fn h2_in_two_variables() {
        let h2 = symmetric_poly(SymmetricKind::Complete, 2, 2, &[0, 1]);
        let expect = &(&x(2, 0).pow(2) + &(&x(2, 0) * &x(2, 1))) + &x(2, 1).pow(2);
        assert_eq!(h2, expect);
    }

    #[test]
    fn substitution_is_composition() {
        let p = &(&x(2, 0) * &x(2, 1)) + &c(2, 1);
        let vals = vec![&x(2, 0) + &x(2, 1), &x(2, 0) - &x(2, 1)];
        let s = p.substitute(&vals);
        let expect = &(&x(2, 0).pow(2) - &x(2, 1).pow(2)) + &c(2, 1);
        assert_eq!(s, expect);
    }

    #[test]
    fn parser_roundtrip() {
        let names = ["x1", "x2", "q1", "q2"];
        let p = parse_poly("x1^3x2^3 - 3q2 x1^2 x2^2 + 3q2(q1+q2)x1x2 - 6*q1*q2^2", &names).unwrap();
        let x = |i| MultiPoly::var(4, i);
        let c = |v| MultiPoly::constant(4, Scalar::from_int(v));
        let want = &(&(&(&x(0).pow(3) * &x(1).pow(3)) - &(&(&c(3) * &x(3)) * &(&x(0).pow(2) * &x(1).pow(2))))
            + &(&(&(&c(3) * &x(3)) * &(&x(2) + &x(3))) * &(&x(0) * &x(1))))
            - &(&(&c(6) * &x(2)) * &x(3).pow(2));
        assert_eq!(p, want);
        assert!(parse_poly("x3", &names).is_err());
        assert_eq!(parse_poly("-(x1)", &names).unwrap(), x(0).scale(&Scalar::from_int(-1)));
    }
}
