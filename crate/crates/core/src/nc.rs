//! Formal noncommutative expressions in the bracket generators and their
//! evaluation in the group-ring representations.

use std::collections::BTreeMap;
use std::fmt;

use crate::group::WeylGroup;
use crate::ops::{gvec_add_scaled, BruhatRep, GVec, Operator};
use crate::poly::MultiPoly;
use crate::roots::RootSystem;
use crate::scalar::Scalar;

/// A word in the generators `[gamma_k]`, `gamma_k` positive, written left to right.
pub type Word = Vec<u32>;

/// Scalar combination of words in the positive-root generators. Negative
/// roots are folded in with a sign when an expression is built, so every
/// stored letter is a positive-root index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NcExpr {
    terms: BTreeMap<Word, Scalar>,
}

impl NcExpr {
    pub fn zero() -> NcExpr {
        NcExpr::default()
    }

    pub fn one() -> NcExpr {
        NcExpr::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> NcExpr {
        let mut e = NcExpr::zero();
        e.add_term(Vec::new(), c);
        e
    }

    pub fn gen(k: usize) -> NcExpr {
        NcExpr::signed_gen(k, true)
    }

    /// `[gamma_k]` or `[-gamma_k] = -[gamma_k]`.
    pub fn signed_gen(k: usize, positive: bool) -> NcExpr {
        let mut e = NcExpr::zero();
        e.add_term(vec![k as u32], if positive { Scalar::one() } else { Scalar::from_int(-1) });
        e
    }

    /// The generator of an arbitrary root vector.
    pub fn root(rs: &RootSystem, gamma: &[Scalar]) -> crate::Result<NcExpr> {
        let (k, s) = rs.find_root(gamma)?;
        Ok(NcExpr::signed_gen(k, s > 0))
    }

    pub fn monomial(word: Word, c: Scalar) -> NcExpr {
        let mut e = NcExpr::zero();
        e.add_term(word, c);
        e
    }

    /// Product of signed letters `(k, positive)`.
    pub fn signed_word(letters: &[(usize, bool)]) -> NcExpr {
        let neg = letters.iter().filter(|l| !l.1).count() % 2 == 1;
        NcExpr::monomial(letters.iter().map(|l| l.0 as u32).collect(), if neg { Scalar::from_int(-1) } else { Scalar::one() })
    }

    pub fn add_term(&mut self, word: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(word) {
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

    pub fn add_scaled(&mut self, other: &NcExpr, c: &Scalar) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &[u32]) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn scale(&self, c: &Scalar) -> NcExpr {
        let mut out = NcExpr::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn pow(&self, e: u32) -> NcExpr {
        (0..e).fold(NcExpr::one(), |acc, _| &acc * self)
    }

    /// Word lengths occurring in the expression.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|w| w.len()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The common length of all words, if there is one.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    /// Replaces every letter by an expression and multiplies out.
    pub fn substitute(&self, f: &dyn Fn(u32) -> NcExpr) -> NcExpr {
        let images: BTreeMap<u32, NcExpr> = self.terms.keys().flatten().map(|&l| (l, f(l))).collect();
        let mut out = NcExpr::zero();
        for (w, c) in &self.terms {
            let mut acc = NcExpr::constant(c.clone());
            for l in w {
                acc = &acc * &images[l];
                if acc.is_zero() {
                    break;
                }
            }
            out += &acc;
        }
        out
    }

    /// Drops every word containing a letter outside `keep`.
    pub fn restrict(&self, keep: &dyn Fn(u32) -> bool) -> NcExpr {
        NcExpr {
            terms: self.terms.iter().filter(|(w, _)| w.iter().all(|&l| keep(l))).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// Generator-wise action `[gamma] -> [w(gamma)]` of a group element.
    pub fn act(&self, g: &WeylGroup, w: usize) -> NcExpr {
        let img = &g.root_images[w];
        let mut out = NcExpr::zero();
        for (word, c) in &self.terms {
            let neg = word.iter().filter(|&&l| !img[l as usize].positive).count() % 2 == 1;
            let mapped: Word = word.iter().map(|&l| img[l as usize].index).collect();
            out.add_term(mapped, if neg { -c } else { c.clone() });
        }
        out
    }

    /// Sign-normalized copy: the first term gets a positive rational
    /// coefficient, so relations equal up to sign share a key.
    pub fn normalized(&self) -> NcExpr {
        match self.terms.values().next() {
            Some(c) if c.signum() < 0 => self.scale(&Scalar::from_int(-1)),
            _ => self.clone(),
        }
    }

    pub fn format(&self, labels: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.signum() < 0;
            let mag = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let body: String = w.iter().map(|&l| labels[l as usize].clone()).collect::<Vec<_>>().join("");
            if w.is_empty() {
                s.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    s.push_str(&mag.to_string());
                    s.push('*');
                }
                s.push_str(&body);
            }
        }
        s
    }

    /// Words as root-index arrays with exact coefficient strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.terms.iter().map(|(w, c)| serde_json::json!({ "word": w, "coefficient": c.to_string() })).collect())
    }
}

impl std::ops::AddAssign<&NcExpr> for NcExpr {
    fn add_assign(&mut self, rhs: &NcExpr) {
        self.add_scaled(rhs, &Scalar::one());
    }
}

impl std::ops::SubAssign<&NcExpr> for NcExpr {
    fn sub_assign(&mut self, rhs: &NcExpr) {
        self.add_scaled(rhs, &Scalar::from_int(-1));
    }
}

impl std::ops::Add for &NcExpr {
    type Output = NcExpr;
    fn add(self, rhs: &NcExpr) -> NcExpr {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl std::ops::Sub for &NcExpr {
    type Output = NcExpr;
    fn sub(self, rhs: &NcExpr) -> NcExpr {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl std::ops::Neg for &NcExpr {
    type Output = NcExpr;
    fn neg(self) -> NcExpr {
        self.scale(&Scalar::from_int(-1))
    }
}

impl std::ops::Mul for &NcExpr {
    type Output = NcExpr;
    fn mul(self, rhs: &NcExpr) -> NcExpr {
        let mut out = NcExpr::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, x * y);
            }
        }
        out
    }
}

impl fmt::Display for NcExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (0..=self.terms.keys().flatten().copied().max().unwrap_or(0)).map(|k| format!("g{k}")).collect();
        write!(f, "{}", self.format(&labels))
    }
}

/// `D_gamma(x) = [gamma] x - s_gamma(x) [gamma]` for the positive root `gamma_k`.
pub fn twisted_derivation(g: &WeylGroup, k: usize, x: &NcExpr) -> NcExpr {
    let gen = NcExpr::gen(k);
    let s = g.reflections[k];
    &(&gen * x) - &(&x.act(g, s) * &gen)
}

/// Image of the basis vector `w` under the expression.
pub fn evaluate_basis(rep: &BruhatRep, x: &NcExpr, w: usize) -> GVec {
    let mut out = GVec::new();
    for (word, c) in x.terms() {
        let word: Vec<usize> = word.iter().map(|&l| l as usize).collect();
        if let Some((t, m)) = rep.apply_word_basis(&word, w) {
            let mut single = GVec::new();
            single.insert(t, MultiPoly::term(m, c.clone()));
            gvec_add_scaled(&mut out, &single, &MultiPoly::one(rep.nq));
        }
    }
    out
}

pub fn evaluate_vector(rep: &BruhatRep, x: &NcExpr, v: &GVec) -> GVec {
    let mut out = GVec::new();
    for (w, c) in v {
        gvec_add_scaled(&mut out, &evaluate_basis(rep, x, *w), c);
    }
    out
}

pub fn evaluate(rep: &BruhatRep, x: &NcExpr) -> Operator {
    Operator {
        nq: rep.nq,
        cols: (0..rep.dim()).map(|w| evaluate_basis(rep, x, w)).collect(),
    }
}

/// First basis vector on which the expression does not vanish, with the residual.
pub fn first_nonvanishing(rep: &BruhatRep, x: &NcExpr) -> Option<(usize, GVec)> {
    (0..rep.dim()).find_map(|w| {
        let v = evaluate_basis(rep, x, w);
        (!v.is_empty()).then_some((w, v))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::CoxeterType;
    use std::sync::Arc;

    #[test]
    fn sign_rule_and_products() {
        let x = NcExpr::signed_gen(2, false);
        assert_eq!(x.coeff(&[2]), Scalar::from_int(-1));
        let y = &x * &x;
        assert_eq!(y.coeff(&[2, 2]), Scalar::one());
        assert!((&y - &y).is_zero());
        assert_eq!(y.homogeneous_degree(), Some(2));
    }

    #[test]
    fn derivation_of_generator() {
        let g = WeylGroup::build(CoxeterType::b(2)).unwrap();
        for k in 0..4 {
            let d = twisted_derivation(&g, k, &NcExpr::gen(k));
            assert_eq!(d, NcExpr::monomial(vec![k as u32, k as u32], Scalar::from_int(2)));
            assert!(twisted_derivation(&g, k, &NcExpr::one()).is_zero());
        }
    }

    #[test]
    fn square_vanishes_in_bruhat() {
        let g = Arc::new(WeylGroup::build(CoxeterType::a(2)).unwrap());
        let rep = BruhatRep::classical(g);
        for k in 0..3 {
            assert!(first_nonvanishing(&rep, &NcExpr::gen(k).pow(2)).is_none());
        }
    }

    #[test]
    fn action_is_multiplicative() {
        let g = WeylGroup::build(CoxeterType::b(3)).unwrap();
        let a = &NcExpr::gen(1) + &NcExpr::gen(4);
        let b = &NcExpr::gen(2) * &NcExpr::gen(7);
        for w in [3, 11, 40] {
            assert_eq!((&a * &b).act(&g, w), &a.act(&g, w) * &b.act(&g, w));
        }
    }
}
