//! The algebra on letters `X_i, Y_i, Z` (`1 <= i < n`) modulo squares and
//! the four-term relations `Z X_i Z Y_i + X_i Z Y_i Z + Z Y_i Z X_i + Y_i Z X_i Z`,
//! with operators `nabla_gamma` for the roots of `B_{n-1}` acting by the
//! derivation formulas of [`SubRoot::derivation`] and the twisted Leibniz rule.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::WeylGroup;
use crate::linalg::{FieldElem, Rat};
use crate::nc::Word;
use crate::quotient::{FreeQuotient, Presentation, DEFAULT_BUDGET};
use crate::relations::{explicit_relations, generic_relations, Mode, SubRoot, XyzLetter};
use crate::roots::CoxeterType;

/// Integer combination of words in the letters `X_1..X_{n-1}, Y_1..Y_{n-1}, Z`.
pub type Combination = BTreeMap<Word, i64>;

/// How an operator is extended from letters to words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Leibniz {
    /// `D(xy) = D(x) y + s(x) D(y)`, the rule of the twisted derivations.
    Left,
    /// `D(xy) = D(x) s(y) + x D(y)`; offered as a comparison only.
    Right,
}

#[derive(Clone, Debug)]
pub struct XyzAlgebra {
    pub n: usize,
}

impl XyzAlgebra {
    pub fn new(n: usize) -> Result<XyzAlgebra> {
        if n < 3 {
            return Err(Error::Unsupported("the operators need a root system B_{n-1} with n >= 3".into()));
        }
        Ok(XyzAlgebra { n })
    }

    pub fn num_letters(&self) -> usize {
        2 * (self.n - 1) + 1
    }

    pub fn index(&self, l: XyzLetter) -> u32 {
        let m = self.n - 1;
        (match l {
            XyzLetter::X(i) => i - 1,
            XyzLetter::Y(i) => m + i - 1,
            XyzLetter::Z => 2 * m,
        }) as u32
    }

    pub fn letter(&self, k: u32) -> XyzLetter {
        let m = self.n - 1;
        let k = k as usize;
        if k < m {
            XyzLetter::X(k + 1)
        } else if k < 2 * m {
            XyzLetter::Y(k - m + 1)
        } else {
            XyzLetter::Z
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.num_letters() as u32)
            .map(|k| match self.letter(k) {
                XyzLetter::X(i) => format!("X{i}"),
                XyzLetter::Y(i) => format!("Y{i}"),
                XyzLetter::Z => format!("Z{}", self.n),
            })
            .collect()
    }

    /// Defining ideal: squares of all letters and one four-term element per `i`.
    pub fn ideal(&self) -> Vec<Combination> {
        let mut out = Vec::new();
        for k in 0..self.num_letters() as u32 {
            out.push(Combination::from([(vec![k, k], 1)]));
        }
        let z = self.index(XyzLetter::Z);
        for i in 1..self.n {
            let x = self.index(XyzLetter::X(i));
            let y = self.index(XyzLetter::Y(i));
            out.push(Combination::from([
                (vec![z, x, z, y], 1),
                (vec![x, z, y, z], 1),
                (vec![z, y, z, x], 1),
                (vec![y, z, x, z], 1),
            ]));
        }
        out
    }

    pub fn presentation(&self) -> Presentation {
        let relations = self
            .ideal()
            .into_iter()
            .map(|c| c.into_iter().map(|(w, x)| (w, Rat::from_int(x))).collect())
            .collect();
        Presentation {
            letters: self.labels(),
            relations,
        }
    }

    fn act_letter(&self, root: SubRoot, k: u32) -> (u32, i64) {
        let (l, pos) = root.reflect(self.letter(k));
        (self.index(l), if pos { 1 } else { -1 })
    }

    /// `nabla_root` on a word, expanded by the chosen Leibniz rule.
    pub fn nabla_word(&self, rule: Leibniz, root: SubRoot, word: &[u32], out: &mut Combination, coeff: i64) {
        // Images s(x) of the letters, with the product of their signs.
        let images: Vec<(u32, i64)> = word.iter().map(|&x| self.act_letter(root, x)).collect();
        for (i, &x) in word.iter().enumerate() {
            let mut sign = coeff;
            let mut head: Word = Vec::with_capacity(word.len() + 1);
            let mut tail: Word = Vec::new();
            match rule {
                Leibniz::Left => {
                    for &(y, e) in &images[..i] {
                        head.push(y);
                        sign *= e;
                    }
                    tail.extend_from_slice(&word[i + 1..]);
                }
                Leibniz::Right => {
                    head.extend_from_slice(&word[..i]);
                    for &(y, e) in &images[i + 1..] {
                        tail.push(y);
                        sign *= e;
                    }
                }
            }
            for (pair, c) in root.derivation(self.letter(x)) {
                let mut w = head.clone();
                w.extend(pair.iter().map(|&l| self.index(l)));
                w.extend_from_slice(&tail);
                add(out, w, sign * c);
            }
        }
    }

    pub fn nabla(&self, rule: Leibniz, root: SubRoot, c: &Combination) -> Combination {
        let mut out = Combination::new();
        for (w, x) in c {
            self.nabla_word(rule, root, w, &mut out, *x);
        }
        out
    }

    pub fn format(&self, c: &Combination) -> String {
        let labels = self.labels();
        if c.is_empty() {
            return "0".into();
        }
        c.iter()
            .map(|(w, x)| {
                let body: String = w.iter().map(|&k| labels[k as usize].as_str()).collect::<Vec<_>>().join(" ");
                format!("{x:+}*{body}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn add(c: &mut Combination, w: Word, x: i64) {
    if x == 0 {
        return;
    }
    let e = c.entry(w.clone()).or_insert(0);
    *e += x;
    if *e == 0 {
        c.remove(&w);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NablaFailure {
    pub relation: String,
    pub word: String,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct NablaReport {
    pub n: usize,
    pub rule: Leibniz,
    pub max_degree: usize,
    pub dimensions: Vec<usize>,
    pub relations: usize,
    pub checks: usize,
    pub failures: Vec<NablaFailure>,
    /// Pairs (operator, ideal generator) whose image leaves the ideal;
    /// empty means the operators descend to the quotient.
    pub ideal_failures: Vec<String>,
}

impl NablaReport {
    /// Every relation kills every basis word (computed on representatives).
    pub fn relations_vanish(&self) -> bool {
        self.failures.is_empty()
    }

    /// The operators map the defining ideal into itself.
    pub fn well_defined(&self) -> bool {
        self.ideal_failures.is_empty()
    }
}

/// Applies every defining relation of `BE(B_{n-1})`, with `[gamma]`
/// acting as `nabla_gamma`, to every basis word of degree at most
/// `max_degree` and reduces the result in the quotient.
pub fn nabla_representation_check(n: usize, max_degree: usize, rule: Leibniz) -> Result<NablaReport> {
    let alg = XyzAlgebra::new(n)?;
    let g = WeylGroup::build(CoxeterType::b(n - 1))?;
    let rs = &g.rs;
    let roots: Vec<SubRoot> = rs
        .labels
        .iter()
        .map(|l| SubRoot::from_label(l).ok_or_else(|| Error::Internal(format!("unexpected root label {l}"))))
        .collect::<Result<_>>()?;

    let mut rels = generic_relations(&g, Mode::Classical)?.relations;
    if let Some(extra) = explicit_relations(rs, Mode::Classical)? {
        rels.extend(extra.relations);
    }
    let rel_degree = rels.iter().filter_map(|r| r.degree()).max().unwrap_or(0);

    let mut q = FreeQuotient::new(&alg.presentation())?;
    let top = max_degree + rel_degree.max(1);
    while q.degree() < top {
        if !q.extend(DEFAULT_BUDGET)? {
            return Err(Error::Budget(format!("quotient degree {}", q.degree() + 1)));
        }
    }
    let reduce = |c: &Combination| -> bool {
        let el: Vec<(Word, Rat)> = c.iter().map(|(w, x)| (w.clone(), Rat::from_int(*x))).collect();
        q.reduce_element(&el).values().all(|x| x.is_zero())
    };

    let mut ideal_failures = Vec::new();
    for (k, root) in roots.iter().enumerate() {
        for gen in alg.ideal() {
            let image = alg.nabla(rule, *root, &gen);
            if !reduce(&image) {
                ideal_failures.push(format!("nabla_{} ({})", rs.labels[k], alg.format(&gen)));
            }
        }
    }

    let mut failures = Vec::new();
    let mut checks = 0;
    for d in 0..=max_degree {
        for word in q.standard_words(d).to_vec() {
            let start = Combination::from([(word.clone(), 1)]);
            for rel in &rels {
                let mut total = Combination::new();
                for (letters, c) in rel.expr.terms() {
                    let c = c
                        .as_rational()
                        .and_then(|r| r.is_integer().then(|| r.to_integer()))
                        .and_then(|z| i64::try_from(z).ok())
                        .ok_or_else(|| Error::Unsupported("non-integral relation coefficient".into()))?;
                    let mut cur = start.clone();
                    for &k in letters.iter().rev() {
                        cur = alg.nabla(rule, roots[k as usize], &cur);
                    }
                    for (w, x) in cur {
                        add(&mut total, w, c * x);
                    }
                }
                checks += 1;
                if !reduce(&total) {
                    failures.push(NablaFailure {
                        relation: rel.format(rs, 0),
                        word: alg.format(&start),
                        residual: alg.format(&total),
                    });
                }
            }
        }
    }
    Ok(NablaReport {
        n,
        rule,
        max_degree,
        dimensions: (0..=top).map(|d| q.dimension(d)).collect(),
        relations: rels.len(),
        checks,
        failures,
        ideal_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operators_kill_z() {
        let alg = XyzAlgebra::new(4).unwrap();
        let z = Combination::from([(vec![alg.index(XyzLetter::Z)], 1)]);
        for root in [SubRoot::Minus(1, 2), SubRoot::Plus(1, 3), SubRoot::Short(2)] {
            assert!(alg.nabla(Leibniz::Left, root, &z).is_empty());
        }
    }

    #[test]
    fn disjoint_support_vanishes() {
        let alg = XyzAlgebra::new(4).unwrap();
        for i in 1..4 {
            for (k, l) in [(1, 2), (1, 3), (2, 3)] {
                if i == k || i == l {
                    continue;
                }
                for letter in [XyzLetter::X(i), XyzLetter::Y(i)] {
                    let c = Combination::from([(vec![alg.index(letter)], 1)]);
                    assert!(alg.nabla(Leibniz::Left, SubRoot::Minus(k, l), &c).is_empty());
                    assert!(alg.nabla(Leibniz::Left, SubRoot::Plus(k, l), &c).is_empty());
                }
            }
        }
    }

    #[test]
    fn twisted_leibniz_on_a_product() {
        let alg = XyzAlgebra::new(3).unwrap();
        let x1 = alg.index(XyzLetter::X(1));
        let z = alg.index(XyzLetter::Z);
        let root = SubRoot::Short(1);
        // nabla(X1 Z) = nabla(X1) Z + s(X1) nabla(Z) = X1 Z Z - Z Y1 Z.
        let y1 = alg.index(XyzLetter::Y(1));
        let got = alg.nabla(Leibniz::Left, root, &Combination::from([(vec![x1, z], 1)]));
        assert_eq!(got, Combination::from([(vec![x1, z, z], 1), (vec![z, y1, z], -1)]));
        // nabla(X1 Z) = nabla(X1) s(Z) + X1 nabla(Z) under the mirrored rule.
        let got = alg.nabla(Leibniz::Right, root, &Combination::from([(vec![x1, z], 1)]));
        assert_eq!(got, Combination::from([(vec![x1, z, z], 1), (vec![z, y1, z], -1)]));
        let got = alg.nabla(Leibniz::Left, root, &Combination::from([(vec![x1, x1], 1)]));
        assert_eq!(got.len(), 4);
    }

    #[test]
    fn commutator_of_orthogonal_pair_on_x1() {
        let alg = XyzAlgebra::new(3).unwrap();
        let x1 = Combination::from([(vec![alg.index(XyzLetter::X(1))], 1)]);
        let (a, b) = (SubRoot::Minus(1, 2), SubRoot::Plus(1, 2));
        let comm = |rule| {
            let mut c = alg.nabla(rule, a, &alg.nabla(rule, b, &x1));
            for (w, x) in alg.nabla(rule, b, &alg.nabla(rule, a, &x1)) {
                add(&mut c, w, -x);
            }
            c
        };
        // Four distinct squarefree words survive under the stated rule.
        assert_eq!(comm(Leibniz::Left).len(), 4);
        assert!(comm(Leibniz::Right).is_empty());
    }

    #[test]
    fn small_rank_is_rejected() {
        assert!(XyzAlgebra::new(2).is_err());
    }
}
