//! Invariant polynomials: Kim's quantum invariants of types A, B and D from
//! characteristic polynomials, the G2 pair `g2, g6`, the dihedral pair
//! `f2, f_m`, and ideal comparison by weighted degree-wise spans.
//!
//! Polynomials are in `2n` variables: the coordinates `e_1..e_n` (or
//! `xi_1, xi_2`) followed by `q_1..q_n`.

use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::poly::{bareiss_det, parse_poly, Monomial, MultiPoly};
use crate::roots::{CoxeterType, Family};
use crate::scalar::Scalar;

/// Variable names `e1..en, q1..qn` (or `x1..xk` for A-type coordinates).
pub fn variable_names(coord: &str, ncoords: usize, nq: usize) -> Vec<String> {
    (1..=ncoords).map(|i| format!("{coord}{i}")).chain((1..=nq).map(|i| format!("q{i}"))).collect()
}

fn elem(i: usize, j: usize, c: MultiPoly, m: &mut [Vec<MultiPoly>]) {
    m[i - 1][j - 1] += &c;
}

fn cst(nv: usize, v: i64) -> MultiPoly {
    MultiPoly::constant(nv, Scalar::from_int(v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum KimKind {
    B,
    D,
}

/// `X(e, q)` for type B or D, entries in `2n + 1` variables (the last is `t`,
/// unused here).
fn kim_matrix(n: usize, kind: KimKind) -> Vec<Vec<MultiPoly>> {
    let nv = 2 * n + 1;
    let size = 2 * n;
    let mut x = vec![vec![MultiPoly::zero(nv); size]; size];
    let e = |i: usize| MultiPoly::var(nv, i - 1);
    let q = |i: usize| MultiPoly::var(nv, n + i - 1);
    for i in 1..=n {
        elem(i, i, e(i), &mut x);
        elem(i + n, i + n, e(i).scale(&Scalar::from_int(-1)), &mut x);
    }
    for i in 1..n {
        // E_{alpha_i^vee} = -E_{i+1,i} + E_{i+n,i+n+1}
        elem(i + 1, i, cst(nv, -1), &mut x);
        elem(i + n, i + n + 1, cst(nv, 1), &mut x);
        // q_i E_{-alpha_i^vee} = q_i (E_{i,i+1} - E_{i+n+1,i+n})
        elem(i, i + 1, q(i), &mut x);
        elem(i + n + 1, i + n, q(i).scale(&Scalar::from_int(-1)), &mut x);
    }
    match kind {
        KimKind::B => {
            elem(2 * n, n, cst(nv, -2), &mut x);
            elem(n, 2 * n, q(n).scale(&Scalar::from_int(2)), &mut x);
        }
        KimKind::D => {
            elem(2 * n - 1, n, cst(nv, -1), &mut x);
            elem(2 * n, n - 1, cst(nv, 1), &mut x);
            elem(n, 2 * n - 1, q(n), &mut x);
            elem(n - 1, 2 * n, q(n).scale(&Scalar::from_int(-1)), &mut x);
        }
    }
    x
}

/// Coefficients `c_k` of `t^k` in `det(t I + X)`, as polynomials in the
/// first `2n` variables.
fn char_coefficients(x: &[Vec<MultiPoly>]) -> Vec<MultiPoly> {
    let size = x.len();
    let nv = x[0][0].nvars();
    let t = MultiPoly::var(nv, nv - 1);
    let mut m = x.to_vec();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] += &t;
    }
    let det = bareiss_det(&m);
    let mut coeffs = vec![MultiPoly::zero(nv - 1); size + 1];
    for (mono, c) in det.terms() {
        let k = mono.exps()[nv - 1] as usize;
        let rest = Monomial::from_exps(&mono.exps()[..nv - 1]);
        coeffs[k].add_term(rest, c.clone());
    }
    coeffs
}

#[derive(Clone, Debug)]
pub struct KimInvariants {
    pub polys: Vec<MultiPoly>,
    /// All odd powers of `t` had zero coefficient.
    pub even: bool,
}

/// `J^B_1 .. J^B_n`, the coefficients of `t^{2(n-v)}` in `det(tI + X^B)`.
pub fn kim_invariants_b(n: usize) -> Result<KimInvariants> {
    if n < 1 {
        return Err(Error::InvalidType("type B invariants need n >= 1".into()));
    }
    let c = char_coefficients(&kim_matrix(n, KimKind::B));
    let even = (1..2 * n).step_by(2).all(|k| c[k].is_zero());
    Ok(KimInvariants {
        polys: (1..=n).map(|v| c[2 * (n - v)].clone()).collect(),
        even,
    })
}

/// `J^D_1 .. J^D_{n-1}` and the square root of `(-1)^n J^D_n`, signed so
/// that the coefficient of `e_1 ... e_n` is `+1`. For odd `n` the constant
/// coefficient of the characteristic polynomial is minus a square.
pub fn kim_invariants_d(n: usize) -> Result<KimInvariants> {
    if n < 2 {
        return Err(Error::InvalidType("type D invariants need n >= 2".into()));
    }
    let c = char_coefficients(&kim_matrix(n, KimKind::D));
    let even = (1..2 * n).step_by(2).all(|k| c[k].is_zero());
    let mut polys: Vec<MultiPoly> = (1..n).map(|v| c[2 * (n - v)].clone()).collect();
    let top = if n % 2 == 0 { c[0].clone() } else { c[0].scale(&Scalar::from_int(-1)) };
    let root = top
        .sqrt_exact()
        .ok_or_else(|| Error::Internal(format!("J^D_{n} is not a perfect square")))?;
    let mut e_all = vec![0u16; 2 * n];
    e_all[..n].iter_mut().for_each(|x| *x = 1);
    let lead = root.coeff_of(&e_all);
    let root = match lead.signum() {
        1 => root,
        -1 => root.scale(&Scalar::from_int(-1)),
        _ => return Err(Error::Internal("square root lacks the e_1...e_n term".into())),
    };
    polys.push(root);
    Ok(KimInvariants { polys, even })
}

/// Quantum elementary functions of type `A_n`: coefficients of
/// `det(t I + A)` with `A` tridiagonal (`x_i` on the diagonal, `q_i` above,
/// `-1` below), in variables `x_1..x_{n+1}, q_1..q_n`.
pub fn kim_invariants_a(n: usize) -> Result<KimInvariants> {
    if n < 1 {
        return Err(Error::InvalidType("type A invariants need n >= 1".into()));
    }
    let size = n + 1;
    let nv = size + n + 1;
    let mut a = vec![vec![MultiPoly::zero(nv); size]; size];
    for i in 0..size {
        a[i][i] = MultiPoly::var(nv, i);
    }
    for i in 0..n {
        a[i][i + 1] = MultiPoly::var(nv, size + i);
        a[i + 1][i] = cst(nv, -1);
    }
    let c = char_coefficients(&a);
    Ok(KimInvariants {
        polys: (1..=size).map(|k| c[size - k].clone()).collect(),
        even: true,
    })
}

/// `(g2, g6)` for G2 and `(f2, f_m)` for I2(m), exactly as displayed in
/// the literature, in variables `xi_1, xi_2, q_1, q_2`.
pub fn special_invariants(ctype: CoxeterType) -> Result<Vec<MultiPoly>> {
    let names = ["x1", "x2", "q1", "q2"];
    let p = |s: &str| parse_poly(s, &names).map_err(Error::Internal);
    match ctype.family {
        Family::G2 => Ok(vec![
            p("x1^2 + x2^2 - x1x2 - q1 - 3q2")?,
            p("x1^3x2^3 - 3q2x1^2x2^2 + q1x1x2^3 + q1x2^4 + q1q2x1^2 + 3q2(q1+q2)x1x2 + 2q1q2x2^2 + q1^2q2 - 6q1q2^2 - q2^3")?,
        ]),
        Family::I2 => {
            let m = ctype.m.unwrap();
            Ok(vec![p("x1^2 + x2^2")?, dihedral_fm(m)])
        }
        _ => Err(Error::Unsupported(format!("no special invariants for {ctype}"))),
    }
}

/// `f_m = sum_i (-1)^i C(m, 2i) xi_1^{2i} xi_2^{m-2i}`.
pub fn dihedral_fm(m: usize) -> MultiPoly {
    let mut f = MultiPoly::zero(4);
    let mut binom = vec![1i64; m + 1];
    for k in 1..=m {
        binom[k] = binom[k - 1] * (m - k + 1) as i64 / k as i64;
    }
    for i in 0..=m / 2 {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        f.add_term(Monomial::from_exps(&[(2 * i) as u16, (m - 2 * i) as u16, 0, 0]), Scalar::from_int(sign * binom[2 * i]));
    }
    f
}

/// The corrected degree-six G2 invariant (kernel element of the evaluation
/// map on the quantum Dunkl elements); differs from the displayed `g6` in
/// six coefficients.
pub fn g6_corrected() -> MultiPoly {
    parse_poly(
        "x1^3x2^3 + 3q2x1^2x2^2 - q1x1x2^3 - q1x2^4 + q1q2x1^2 + 3q2(q1+q2)x1x2 + 2q1q2x2^2 - q1^2q2 + q2^3",
        &["x1", "x2", "q1", "q2"],
    )
    .expect("static polynomial parses")
}

fn weighted_degree(m: &Monomial, weights: &[u32]) -> u32 {
    m.exps().iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum()
}

/// Weighted-homogeneous degree of `p`, or `None` if `p` is not homogeneous.
pub fn homogeneous_degree(p: &MultiPoly, weights: &[u32]) -> Option<u32> {
    let mut degs = p.terms().map(|(m, _)| weighted_degree(m, weights));
    let first = degs.next()?;
    degs.all(|d| d == first).then_some(first)
}

fn monomials_of_weighted_degree(weights: &[u32], d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; weights.len()];
    fn rec(i: usize, left: u32, weights: &[u32], cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if left == 0 {
                out.push(Monomial::from_exps(cur));
            }
            return;
        }
        let w = weights[i];
        let mut e = 0;
        loop {
            cur[i] = e as u16;
            rec(i + 1, left - e * w, weights, cur, out);
            if (e + 1) * w > left || w == 0 {
                break;
            }
            e += 1;
        }
        cur[i] = 0;
    }
    rec(0, d, weights, &mut cur, &mut out);
    out
}

/// Membership of a weighted-homogeneous `f` in the ideal generated by the
/// weighted-homogeneous `gens`: `f` lies in the ideal iff it lies in the
/// span of `m g` over monomials `m` of complementary weighted degree.
pub fn ideal_contains(gens: &[MultiPoly], f: &MultiPoly, weights: &[u32]) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let d = homogeneous_degree(f, weights).ok_or_else(|| Error::Unsupported("polynomial is not weighted homogeneous".into()))?;
    let mut index: std::collections::HashMap<Monomial, usize> = std::collections::HashMap::new();
    let mut row_of = |p: &MultiPoly| -> crate::linalg::SparseRow<Scalar> {
        p.terms()
            .map(|(m, c)| {
                let n = index.len();
                (*index.entry(m.clone()).or_insert(n), c.clone())
            })
            .collect()
    };
    let mut ech: Echelon<Scalar> = Echelon::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let dg = homogeneous_degree(g, weights).ok_or_else(|| Error::Unsupported("generator is not weighted homogeneous".into()))?;
        if dg > d {
            continue;
        }
        for m in monomials_of_weighted_degree(weights, d - dg) {
            ech.insert(row_of(&g.mul_monomial(&m, &Scalar::one())));
        }
    }
    let r = row_of(f);
    Ok(ech.contains(r))
}

/// Ideal equality by mutual containment of generators.
pub fn ideals_equal(a: &[MultiPoly], b: &[MultiPoly], weights: &[u32]) -> Result<bool> {
    for f in a {
        if !ideal_contains(b, f, weights)? {
            return Ok(false);
        }
    }
    for f in b {
        if !ideal_contains(a, f, weights)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sufficient membership test after specialising some variables: `f` is
/// certified to lie in the ideal when it is in the span of `m g` with
/// `deg(m g) <= bound`.
pub fn ideal_contains_bounded(gens: &[MultiPoly], f: &MultiPoly, bound: u32) -> bool {
    let nv = f.nvars();
    let mut index: std::collections::HashMap<Monomial, usize> = std::collections::HashMap::new();
    let mut row_of = |p: &MultiPoly| -> crate::linalg::SparseRow<Scalar> {
        p.terms()
            .map(|(m, c)| {
                let n = index.len();
                (*index.entry(m.clone()).or_insert(n), c.clone())
            })
            .collect()
    };
    let mut ech: Echelon<Scalar> = Echelon::new();
    for g in gens {
        let Some(dg) = g.degree() else { continue };
        for d in 0..=bound.saturating_sub(dg) {
            for m in crate::poly::monomials_of_degree(nv, d) {
                ech.insert(row_of(&g.mul_monomial(&m, &Scalar::one())));
            }
        }
    }
    let r = row_of(f);
    ech.contains(r)
}

/// Weights `deg e_i = 1`, `deg q_j = 2` for `k` coordinates and `nq` parameters.
pub fn standard_weights(k: usize, nq: usize) -> Vec<u32> {
    std::iter::repeat_n(1, k).chain(std::iter::repeat_n(2, nq)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        variable_names("e", n, n)
    }

    fn parse(s: &str, n: usize) -> MultiPoly {
        let nm = names(n);
        let refs: Vec<&str> = nm.iter().map(|s| s.as_str()).collect();
        parse_poly(s, &refs).unwrap()
    }

    #[test]
    fn b1_invariant() {
        let k = kim_invariants_b(1).unwrap();
        assert!(k.even);
        assert_eq!(k.polys[0], parse("4q1 - e1^2", 1));
    }

    #[test]
    fn b2_classical_limit() {
        let k = kim_invariants_b(2).unwrap();
        assert!(k.even);
        let zero_q: Vec<MultiPoly> = k.polys.iter().map(|p| p.specialize(&[(2, Scalar::zero()), (3, Scalar::zero())])).collect();
        let classical = vec![parse("e1^2 + e2^2", 2), parse("e1^2e2^2", 2)];
        assert!(ideals_equal(&zero_q, &classical, &standard_weights(2, 2)).unwrap());
    }

    #[test]
    fn b2_ideal() {
        let k = kim_invariants_b(2).unwrap();
        let printed = vec![parse("e1^2+e2^2-2q1-4q2", 2), parse("e1^2e2^2+2q1e1e2-4q2e1^2+q1^2", 2)];
        assert!(ideals_equal(&k.polys, &printed, &standard_weights(2, 2)).unwrap());
        let wrong = vec![parse("e1^2+e2^2-2q1-4q2", 2), parse("e1^2e2^2+2q1e1e2-4q2e2^2+q1^2", 2)];
        assert!(!ideals_equal(&k.polys, &wrong, &standard_weights(2, 2)).unwrap());
    }

    #[test]
    fn d_square_roots() {
        for n in 2..=4 {
            let k = kim_invariants_d(n).unwrap();
            assert!(k.even, "D{n}");
            let c = char_coefficients(&kim_matrix(n, KimKind::D));
            let r = k.polys.last().unwrap();
            let sign = Scalar::from_int(if n % 2 == 0 { 1 } else { -1 });
            assert_eq!(&(r * r), &c[0].scale(&sign));
        }
    }

    #[test]
    fn d4_printed() {
        let k = kim_invariants_d(4).unwrap();
        assert_eq!(k.polys[0], parse("-e1^2-e2^2-e3^2-e4^2+2q1+2q2+2q3+2q4", 4));
        assert_eq!(k.polys[3], parse("e1e2e3e4+q1e3e4+q2e1e4+q3e1e2-q4e1e2+q1q3-q1q4", 4));
    }

    #[test]
    fn d2_is_two_a1() {
        let k = kim_invariants_d(2).unwrap();
        // Roots e1 - e2 and e1 + e2 with coroot coordinates u, v.
        let a1 = vec![parse("(e1-e2)^2 - 4q1", 2), parse("(e1+e2)^2 - 4q2", 2)];
        assert!(ideals_equal(&k.polys, &a1, &standard_weights(2, 2)).unwrap());
    }

    #[test]
    fn d3_matches_a3() {
        let d3 = kim_invariants_d(3).unwrap().polys;
        let a3 = kim_invariants_a(3).unwrap().polys;
        // x_i in terms of e: the standard identification of D3 with A3.
        let x = [
            parse("e1+e2+e3", 3),
            parse("e1-e2-e3", 3),
            parse("-e1+e2-e3", 3),
            parse("-e1-e2+e3", 3),
        ];
        let half = Scalar::from_ratio(1, 2);
        let mut found = false;
        for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let mut subs: Vec<MultiPoly> = x.iter().map(|p| p.scale(&half)).collect();
            for &j in &perm {
                subs.push(MultiPoly::var(6, 3 + j));
            }
            let mapped: Vec<MultiPoly> = a3.iter().map(|p| p.substitute(&subs)).collect();
            if ideals_equal(&mapped, &d3, &standard_weights(3, 3)).unwrap() {
                found = true;
            }
        }
        assert!(found);
    }

    #[test]
    fn a1_invariants() {
        let k = kim_invariants_a(1).unwrap();
        let names = ["x1", "x2", "q1"];
        assert_eq!(k.polys[0], parse_poly("x1+x2", &names).unwrap());
        assert_eq!(k.polys[1], parse_poly("x1x2+q1", &names).unwrap());
    }

    #[test]
    fn dihedral_polys() {
        let names = ["x1", "x2", "q1", "q2"];
        assert_eq!(dihedral_fm(5), parse_poly("x2^5 - 10x1^2x2^3 + 5x1^4x2", &names).unwrap());
        assert_eq!(dihedral_fm(2), parse_poly("x2^2 - x1^2", &names).unwrap());
        let g = special_invariants(CoxeterType::g2()).unwrap();
        let q_only = g[1].specialize(&[(0, Scalar::zero()), (1, Scalar::zero())]);
        assert_eq!(q_only, parse_poly("q1^2q2 - 6q1q2^2 - q2^3", &names).unwrap());
        assert!(special_invariants(CoxeterType::b(2)).is_err());
    }
}
