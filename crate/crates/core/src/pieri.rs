//! Pieri elements `K_l(S)` of the type-B bracket algebra and the
//! expansions of `e_k` and `h_2` of Dunkl elements built from them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::WeylGroup;
use crate::nc::{evaluate, NcExpr, Word};
use crate::ops::{BruhatRep, CommutingFamily, Operator};
use crate::poly::{symmetric_poly, SymmetricKind};
use crate::relations::{Letters, SubRoot};
use crate::roots::{Family, RootSystem};
use crate::scalar::Scalar;
use crate::schubert::coordinate_family;

/// Index support of every positive root of a classical type, as a bit mask.
fn supports(rs: &RootSystem) -> Vec<u64> {
    rs.labels
        .iter()
        .map(|l| match SubRoot::from_label(l) {
            Some(SubRoot::Minus(i, j)) | Some(SubRoot::Plus(i, j)) => (1 << i) | (1 << j),
            Some(SubRoot::Short(i)) => 1 << i,
            None => 0,
        })
        .collect()
}

/// Letters commute when their index supports are disjoint, and `[i,j]`
/// commutes with `~[i,j]`.
fn letters_commute(a: u32, b: u32, support: &[u64]) -> bool {
    let (sa, sb) = (support[a as usize], support[b as usize]);
    sa & sb == 0 || (a != b && sa == sb && sa.count_ones() == 2)
}

/// Lexicographically least word of the commutation class generated by
/// [`letters_commute`].
pub fn trace_normal_form(word: &[u32], support: &[u64]) -> Word {
    let mut rest: Vec<u32> = word.to_vec();
    let mut out = Vec::with_capacity(word.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for (p, &l) in rest.iter().enumerate() {
            let free = rest[..p].iter().all(|&x| letters_commute(x, l, support));
            if free && best.is_none_or(|b| l < rest[b]) {
                best = Some(p);
            }
        }
        let p = best.expect("the first letter is always free");
        out.push(rest.remove(p));
    }
    out
}

/// Memoized builder of the Pieri elements for type `B_r` or its
/// specializations.
pub struct Pieri<'a> {
    rs: &'a RootSystem,
    letters: Letters<'a>,
    memo: HashMap<(usize, u64), NcExpr>,
    positive_memo: HashMap<(usize, u64), NcExpr>,
    support: Vec<u64>,
}

fn members(s: u64) -> Vec<usize> {
    (0..64).filter(|i| s >> i & 1 == 1).collect()
}

impl<'a> Pieri<'a> {
    pub fn new(rs: &'a RootSystem) -> Result<Pieri<'a>> {
        if rs.ctype.family != Family::B {
            return Err(Error::Unsupported("Pieri elements are defined in type B".into()));
        }
        Ok(Pieri {
            rs,
            letters: Letters::new(rs),
            memo: HashMap::new(),
            positive_memo: HashMap::new(),
            support: supports(rs),
        })
    }

    fn check_set(&self, s: &[usize]) -> Result<u64> {
        let mut mask = 0u64;
        for &i in s {
            if i == 0 || i > self.rs.ctype.rank {
                return Err(Error::Unsupported(format!("index {i} outside 1..={}", self.rs.ctype.rank)));
            }
            mask |= 1 << i;
        }
        Ok(mask)
    }

    fn k1(&self, s: u64) -> NcExpr {
        let idx = members(s);
        let mut out = NcExpr::zero();
        for &i in &idx {
            out += &self.letters.single(i);
        }
        for (p, &i) in idx.iter().enumerate() {
            for &j in &idx[p + 1..] {
                out += &self.letters.bar(i, j);
            }
        }
        out
    }

    /// `theta_{r,S} = sum_{a in S, a != r} (-[a,r] + ~[a,r]) + 2[r]`.
    pub fn theta_rs(&self, r: usize, s: u64) -> NcExpr {
        let l = &self.letters;
        let mut out = l.single(r).scale(&Scalar::from_int(2));
        for a in members(s) {
            if a != r {
                out -= &l.br(a, r);
                out += &l.bar(a, r);
            }
        }
        out
    }

    fn k_mask(&mut self, l: usize, s: u64) -> NcExpr {
        if (s.count_ones() as usize) < l || l == 0 {
            return NcExpr::zero();
        }
        if l == 1 {
            return self.k1(s);
        }
        if let Some(x) = self.memo.get(&(l, s)) {
            return x.clone();
        }
        let r = 63 - s.leading_zeros() as usize;
        let without_r = s & !(1 << r);
        let mut out = self.k_mask(l, without_r);
        for a in members(without_r) {
            let f = &self.letters.br(a, r) + &self.letters.bar(a, r);
            let k = self.k_mask(l - 1, s & !(1 << a));
            out += &(&f * &k);
        }
        let k = self.k_mask(l - 1, without_r);
        out += &(&k * &self.theta_rs(r, s));
        self.memo.insert((l, s), out.clone());
        out
    }

    /// `K_l(S)` by the defining recursion.
    pub fn k(&mut self, l: usize, s: &[usize]) -> Result<NcExpr> {
        let mask = self.check_set(s)?;
        Ok(self.k_mask(l, mask))
    }

    /// `sum_a (~[a,r][a] + [r]~[a,r] + sum_b ~[b,r]~[a,b])` over `a, b` in `S` other than `r`.
    fn correction(&self, r: usize, a: usize, s: u64) -> NcExpr {
        let l = &self.letters;
        let mut out = &(&l.bar(a, r) * &l.single(a)) + &(&l.single(r) * &l.bar(a, r));
        for b in members(s) {
            if b != a && b != r {
                out += &(&l.bar(b, r) * &l.bar(a, b));
            }
        }
        out
    }

    fn positive_mask(&mut self, l: usize, s: u64) -> Result<NcExpr> {
        if (s.count_ones() as usize) < l || l == 0 {
            return Ok(NcExpr::zero());
        }
        if let Some(x) = self.positive_memo.get(&(l, s)) {
            return Ok(x.clone());
        }
        let out = match l {
            1 => self.k1(s),
            2 => self.k1(s).pow(2),
            3 => {
                let r = 63 - s.leading_zeros() as usize;
                let without_r = s & !(1 << r);
                let letters = &self.letters;
                let mut tail = letters.single(r).scale(&Scalar::from_int(2));
                for a in members(without_r) {
                    tail += &letters.bar(a, r);
                }
                let mut out = self.positive_mask(3, without_r)?;
                for a in members(without_r) {
                    let bar = self.letters.bar(a, r);
                    out += &(&bar * &self.positive_mask(2, s & !(1 << a))?);
                }
                out += &(&self.positive_mask(2, without_r)? * &tail);
                let mut total_corr = NcExpr::zero();
                for a in members(without_r) {
                    let c = self.correction(r, a, s);
                    out += &(&c * &self.positive_mask(1, s & !(1 << a))?);
                    total_corr += &c;
                }
                out += &(&self.positive_mask(1, without_r)? * &total_corr);
                out
            }
            _ => return Err(Error::Unsupported("positive forms are given for l <= 3".into())),
        };
        self.positive_memo.insert((l, s), out.clone());
        Ok(out)
    }

    /// The displayed positive forms: `K_1`, `K_1^2` and the expansion of `K_3`.
    pub fn k_positive(&mut self, l: usize, s: &[usize]) -> Result<NcExpr> {
        let mask = self.check_set(s)?;
        self.positive_mask(l, mask)
    }

    /// Sum of the coefficients of all words in the commutation class of `target`.
    pub fn multiplicity(&self, expr: &NcExpr, target: &[u32]) -> Result<Scalar> {
        for (p, &a) in target.iter().enumerate() {
            for &b in &target[p + 1..] {
                if !letters_commute(a, b, &self.support) {
                    return Err(Error::Unsupported("the target word has letters that do not commute".into()));
                }
            }
        }
        let key = trace_normal_form(target, &self.support);
        let mut acc = Scalar::zero();
        for (w, c) in expr.terms() {
            if w.len() == target.len() && trace_normal_form(w, &self.support) == key {
                acc += c;
            }
        }
        Ok(acc)
    }

    /// One representative (coefficient 1) per commutation class of the
    /// given words.
    fn distinct(&self, words: impl IntoIterator<Item = (Word, u64)>) -> BTreeMap<Word, u64> {
        let mut out = BTreeMap::new();
        for (w, tag) in words {
            out.entry(trace_normal_form(&w, &self.support)).or_insert(tag);
        }
        out
    }

    fn brace_word(&self, pairs: &[(usize, usize, bool)]) -> Word {
        pairs
            .iter()
            .map(|&(i, j, b)| {
                let e = self.letters.brace(i, j, b);
                let (w, _) = e.terms().next().unwrap();
                w[0]
            })
            .collect()
    }

    /// Products `{i_1,j_1}..{i_t,j_t}` with `1 <= i_a <= m < j_a <= n`,
    /// distinct `i_a`, up to commutation; tagged by the set of `i_a`.
    fn star_products(&self, m: usize, t: usize) -> BTreeMap<Word, u64> {
        let n = self.rs.ctype.rank;
        let mut found = Vec::new();
        let mut cur: Vec<(usize, usize, bool)> = Vec::new();
        fn rec(m: usize, n: usize, t: usize, cur: &mut Vec<(usize, usize, bool)>, found: &mut Vec<Vec<(usize, usize, bool)>>) {
            if cur.len() == t {
                found.push(cur.clone());
                return;
            }
            for i in 1..=m {
                if cur.iter().any(|c| c.0 == i) {
                    continue;
                }
                for j in m + 1..=n {
                    for b in [false, true] {
                        cur.push((i, j, b));
                        rec(m, n, t, cur, found);
                        cur.pop();
                    }
                }
            }
        }
        rec(m, n, t, &mut cur, &mut found);
        self.distinct(found.into_iter().map(|p| {
            let tag = p.iter().fold(0u64, |acc, c| acc | 1 << c.0);
            (self.brace_word(&p), tag)
        }))
    }

    /// Right-hand side of the `e_k` expansion for `theta_1..theta_m`.
    pub fn elementary_rhs(&mut self, m: usize, k: usize) -> Result<NcExpr> {
        let n = self.rs.ctype.rank;
        if m > n || m == 0 {
            return Err(Error::Unsupported(format!("need 1 <= m <= {n}")));
        }
        let full: u64 = (1..=m).fold(0, |acc, i| acc | 1 << i);
        let mut out = NcExpr::zero();
        for w in self.star_products(m, k).into_keys() {
            out.add_term(w, Scalar::one());
        }
        for l in 1..=k {
            for (w, tag) in self.star_products(m, k - l) {
                let kl = self.k_mask(l, full & !tag);
                let prefix = NcExpr::monomial(w, Scalar::from_int(2));
                out += &(&prefix * &kl);
            }
        }
        Ok(out)
    }

    /// Right-hand side of the `h_2` expansion for `theta_1..theta_m`.
    /// The mixed sum over a common `j` admits `i_1 = i_2`, where the two
    /// words `~[i,j][i,j]` and `[i,j]~[i,j]` are one monomial.
    pub fn complete2_rhs(&mut self, m: usize) -> Result<NcExpr> {
        let n = self.rs.ctype.rank;
        if m > n || m == 0 {
            return Err(Error::Unsupported(format!("need 1 <= m <= {n}")));
        }
        let l = Letters::new(self.rs);
        let full: u64 = (1..=m).fold(0, |acc, i| acc | 1 << i);
        let mut out = NcExpr::zero();
        let mut pairs = Vec::new();
        for i1 in 1..=m {
            for j1 in m + 1..=n {
                for i2 in 1..=m {
                    for j2 in m + 1..=n {
                        if j1 == j2 {
                            continue;
                        }
                        for b1 in [false, true] {
                            for b2 in [false, true] {
                                pairs.push((self.brace_word(&[(i1, j1, b1), (i2, j2, b2)]), 0));
                            }
                        }
                    }
                }
            }
        }
        for w in self.distinct(pairs).into_keys() {
            out.add_term(w, Scalar::one());
        }
        let two = Scalar::from_int(2);
        for i in 1..=m {
            for j in m + 1..=n {
                for b in [false, true] {
                    let br = l.brace(i, j, b);
                    let k1 = self.k_mask(1, full & !(1 << i));
                    out.add_scaled(&(&br * &k1), &two);
                    out.add_scaled(&(&(&br * &l.single(i)) + &(&l.single(i) * &br)), &two);
                }
            }
        }
        out.add_scaled(&self.k_mask(2, full), &two);
        let mut mixed = Vec::new();
        for i1 in 1..=m {
            for i2 in 1..=m {
                for j in m + 1..=n {
                    mixed.push((self.brace_word(&[(i1, j, true), (i2, j, false)]), 0));
                    mixed.push((self.brace_word(&[(i1, j, false), (i2, j, true)]), 0));
                }
            }
        }
        for w in self.distinct(mixed).into_keys() {
            out.add_term(w, two.clone());
        }
        Ok(out)
    }
}

/// Kind of Pieri identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PieriKind {
    Elementary,
    Complete2,
    CompleteVanish,
}

impl std::str::FromStr for PieriKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<PieriKind> {
        match s {
            "e" | "elementary" => Ok(PieriKind::Elementary),
            "h2" | "complete2" => Ok(PieriKind::Complete2),
            "hk" | "complete-vanish" => Ok(PieriKind::CompleteVanish),
            _ => Err(Error::Unsupported(format!("unknown Pieri kind {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PieriReport {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub kind: PieriKind,
    pub rhs_terms: usize,
    pub holds: bool,
    /// First basis element where the two sides differ.
    pub witness: Option<String>,
}

/// `p(theta_1..theta_m)` for the coordinate Dunkl elements of the representation.
pub fn symmetric_of_dunkl(rep: &BruhatRep, kind: SymmetricKind, k: usize, m: usize) -> Result<Operator> {
    let g = &rep.group;
    let family: Vec<_> = coordinate_family(g).into_iter().take(m).collect();
    let fam = CommutingFamily::new(rep, family)?;
    let p = symmetric_poly(kind, k, m + rep.nq, &(0..m).collect::<Vec<_>>());
    fam.operator_polynomial(&p)
}

fn compare(g: &WeylGroup, lhs: &Operator, rhs: &Operator) -> Option<String> {
    (0..lhs.cols.len()).find(|&w| lhs.cols[w] != rhs.cols[w]).map(|w| g.word_string(w))
}

/// Checks one Pieri identity in the classical Bruhat representation of `B_n`.
pub fn pieri_check(g: &Arc<WeylGroup>, m: usize, k: usize, kind: PieriKind) -> Result<PieriReport> {
    let rs = &g.rs;
    let n = rs.ctype.rank;
    let rep = BruhatRep::classical(g.clone());
    let mut p = Pieri::new(rs)?;
    let (lhs, rhs) = match kind {
        PieriKind::Elementary => (symmetric_of_dunkl(&rep, SymmetricKind::Elementary, k, m)?, Some(p.elementary_rhs(m, k)?)),
        PieriKind::Complete2 => (symmetric_of_dunkl(&rep, SymmetricKind::Complete, 2, m)?, Some(p.complete2_rhs(m)?)),
        PieriKind::CompleteVanish => {
            if k + m <= 2 * n {
                return Err(Error::Unsupported(format!("the vanishing statement needs k + m > {}", 2 * n)));
            }
            (symmetric_of_dunkl(&rep, SymmetricKind::Complete, k, m)?, None)
        }
    };
    let rhs_terms = rhs.as_ref().map_or(0, |r| r.len());
    let rhs_op = match &rhs {
        Some(r) => evaluate(&rep, r),
        None => Operator::zero(rep.dim(), rep.nq),
    };
    let witness = compare(g, &lhs, &rhs_op);
    Ok(PieriReport {
        n,
        m,
        k: if kind == PieriKind::Complete2 { 2 } else { k },
        kind,
        rhs_terms,
        holds: witness.is_none(),
        witness,
    })
}

/// Rewrites an expression in the letters of another classical root system
/// by label, dropping letters whose label is in `drop` or absent.
pub fn transfer(expr: &NcExpr, from: &RootSystem, to: &RootSystem, drop: &dyn Fn(&str) -> bool) -> NcExpr {
    let map: Vec<Option<u32>> = from
        .labels
        .iter()
        .map(|l| if drop(l) { None } else { to.index_of_label(l).map(|k| k as u32) })
        .collect();
    let mut out = NcExpr::zero();
    for (w, c) in expr.terms() {
        let mapped: Option<Word> = w.iter().map(|&x| map[x as usize]).collect();
        if let Some(word) = mapped {
            out.add_term(word, c.clone());
        }
    }
    out
}

/// True for the labels `[i]` of short roots.
pub fn is_short_label(l: &str) -> bool {
    matches!(SubRoot::from_label(l), Some(SubRoot::Short(_)))
}

/// True for the labels `~[i,j]`.
pub fn is_plus_label(l: &str) -> bool {
    l.starts_with('~')
}

/// Degenerations of the `e_k` expansion of `B_n`: with `[i] = 0` it must give
/// `e_k` of the `D_n` Dunkl elements, and with `~[i,j] = 0` as well the
/// `e_k` of the `A_{n-1}` Dunkl elements `sum_{j != i} [i,j]`.
pub fn degeneration_check(n: usize, m: usize, k: usize) -> Result<(bool, bool)> {
    let gb = WeylGroup::build(crate::roots::CoxeterType::b(n))?;
    let mut p = Pieri::new(&gb.rs)?;
    let rhs = p.elementary_rhs(m, k)?;
    let gd = Arc::new(WeylGroup::build(crate::roots::CoxeterType::d(n))?);
    let ga = Arc::new(WeylGroup::build(crate::roots::CoxeterType::a(n - 1))?);
    let d_rhs = transfer(&rhs, &gb.rs, &gd.rs, &is_short_label);
    let a_rhs = transfer(&rhs, &gb.rs, &ga.rs, &|l| is_short_label(l) || is_plus_label(l));
    let mut results = Vec::new();
    for (g, r) in [(&gd, &d_rhs), (&ga, &a_rhs)] {
        let rep = BruhatRep::classical(g.clone());
        let lhs = symmetric_of_dunkl(&rep, SymmetricKind::Elementary, k, m)?;
        results.push(compare(g, &lhs, &evaluate(&rep, r)).is_none());
    }
    Ok((results[0], results[1]))
}

/// `K_l({1..l})` with every `[a]` set to zero, evaluated in the type-D
/// Bruhat representation; true when it vanishes.
pub fn vanishes_without_short_roots(l: usize) -> Result<bool> {
    let r = l.max(2);
    let gb = WeylGroup::build(crate::roots::CoxeterType::b(r))?;
    let gd = Arc::new(WeylGroup::build(crate::roots::CoxeterType::d(r))?);
    let mut p = Pieri::new(&gb.rs)?;
    let s: Vec<usize> = (1..=l).collect();
    let k = transfer(&p.k(l, &s)?, &gb.rs, &gd.rs, &is_short_label);
    let rep = BruhatRep::classical(gd);
    Ok(crate::nc::first_nonvanishing(&rep, &k).is_none())
}

/// Nonnegative integer coefficients, and only the letters `[i]`, `~[i,j]`.
pub fn is_positive_form(rs: &RootSystem, expr: &NcExpr) -> bool {
    expr.terms().all(|(w, c)| {
        c.as_integer().is_some_and(|v| v.sign() != num_bigint::Sign::Minus)
            && w.iter().all(|&x| {
                let l = &rs.labels[x as usize];
                is_short_label(l) || is_plus_label(l)
            })
    })
}

/// Subsets of `1..=n` as sorted index lists.
pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0u64..1 << n).map(|mask| (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect()).collect()
}

/// The distinct words of all `K_l(S)` for the given sets, for reporting.
pub fn support_words(expr: &NcExpr) -> BTreeSet<Word> {
    expr.terms().map(|(w, _)| w.clone()).collect()
}
