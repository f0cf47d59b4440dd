//! Graded quotients of free and polynomial algebras by homogeneous
//! relations, computed degree by degree over Q with an independent
//! elimination over `F_p`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::WeylGroup;
use crate::linalg::{Echelon, FieldElem, Fp, Rat, SparseRow};
use crate::nc::{NcExpr, Word};
use crate::relations::{explicit_relations, generic_relations, Letters, Mode, Relation};
use crate::roots::RootSystem;

pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algebra {
    Commutative,
    Free,
}

impl std::str::FromStr for Algebra {
    type Err = Error;
    fn from_str(s: &str) -> Result<Algebra> {
        match s {
            "commutative" | "comm" => Ok(Algebra::Commutative),
            "free" | "noncommutative" | "noncomm" => Ok(Algebra::Free),
            _ => Err(Error::Unsupported(format!("unknown algebra kind {s:?}"))),
        }
    }
}

/// Homogeneous element as a list of words with rational coefficients.
pub type Element = Vec<(Word, Rat)>;

/// Generators and homogeneous relations.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub letters: Vec<String>,
    pub relations: Vec<Element>,
}

impl Presentation {
    /// Builds a presentation from expressions with rational coefficients.
    /// Inhomogeneous or non-rational input is rejected.
    pub fn from_exprs(letters: Vec<String>, exprs: &[NcExpr]) -> Result<Presentation> {
        let mut relations = Vec::new();
        for e in exprs {
            if e.is_zero() {
                continue;
            }
            if e.homogeneous_degree().is_none() {
                return Err(Error::Unsupported("graded quotients need homogeneous relations".into()));
            }
            let mut el = Element::new();
            for (w, c) in e.terms() {
                let r = c
                    .as_rational()
                    .ok_or_else(|| Error::Unsupported("graded quotients need rational coefficients".into()))?;
                el.push((w.clone(), scalar_to_rat(r)));
            }
            relations.push(el);
        }
        Ok(Presentation { letters, relations })
    }

    /// Relations with zero right-hand side only; the others are refused.
    pub fn from_relations(rs: &RootSystem, rels: &[Relation], extra: &[NcExpr]) -> Result<Presentation> {
        let mut exprs = Vec::new();
        for r in rels {
            if r.value != crate::relations::Central::Zero {
                return Err(Error::Unsupported(format!("relation {} is not homogeneous", r.format(rs, rs.rank()))));
            }
            exprs.push(r.expr.clone());
        }
        exprs.extend(extra.iter().cloned());
        Presentation::from_exprs(rs.labels.clone(), &exprs)
    }
}

fn scalar_to_rat(r: &num_rational::BigRational) -> Rat {
    use num_traits::ToPrimitive;
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(n), Some(d)) => Rat::Small(num_rational::Ratio::new(n, d)),
        _ => Rat::Big(r.clone()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertRow {
    pub degree: usize,
    /// Size of the spanning set the relations act on.
    pub words: usize,
    pub relation_rows: usize,
    pub rank: usize,
    pub dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertReport {
    pub algebra: Algebra,
    pub rows: Vec<HilbertRow>,
    /// First degree that was not computed because of the row budget.
    pub cutoff: Option<usize>,
}

impl HilbertReport {
    pub fn coefficients(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.dimension).collect()
    }

    /// Dimension in degree `d`. A vanishing component forces every later
    /// one to vanish, so those are known even when not computed.
    pub fn coefficient(&self, d: usize) -> Option<usize> {
        match self.rows.get(d) {
            Some(r) => Some(r.dimension),
            None if self.rows.last().is_some_and(|r| r.dimension == 0) => Some(0),
            None => None,
        }
    }

    pub fn total_dimension(&self) -> usize {
        self.rows.iter().map(|r| r.dimension).sum()
    }
}

/// Hilbert coefficients up to `max_degree`; rows beyond `budget` in a
/// single degree stop the computation and set `cutoff`.
pub fn hilbert_series(p: &Presentation, algebra: Algebra, max_degree: usize, budget: usize) -> Result<HilbertReport> {
    match algebra {
        Algebra::Free => {
            let mut q = FreeQuotient::new(p)?;
            let mut cutoff = None;
            for d in 1..=max_degree {
                if q.dimension(d - 1) == 0 {
                    break;
                }
                if !q.extend(budget)? {
                    cutoff = Some(d);
                    break;
                }
            }
            let rows = q.rows.clone();
            Ok(HilbertReport { algebra, rows, cutoff })
        }
        Algebra::Commutative => commutative_series(p, max_degree, budget),
    }
}

struct Level {
    std: Vec<Word>,
    rat: Echelon<Rat>,
    /// Candidate column -> index in `std` for the non-pivot columns.
    col_std: HashMap<usize, usize>,
}

/// Incremental normal forms in a free algebra modulo a homogeneous
/// two-sided ideal. Degree `d` is spanned by `std(d-1) x letters`
/// modulo `std(d-r) * R` for the relations `R` of degree `r`.
pub struct FreeQuotient {
    n: usize,
    by_degree: BTreeMap<usize, Vec<Element>>,
    levels: Vec<Level>,
    rows: Vec<HilbertRow>,
    cache: RefCell<HashMap<Word, SparseRow<Rat>>>,
}

impl FreeQuotient {
    pub fn new(p: &Presentation) -> Result<FreeQuotient> {
        let n = p.letters.len();
        let mut by_degree: BTreeMap<usize, Vec<Element>> = BTreeMap::new();
        for r in &p.relations {
            let Some((w0, _)) = r.first() else { continue };
            let d = w0.len();
            if d == 0 || r.iter().any(|(w, _)| w.len() != d || w.iter().any(|&x| x as usize >= n)) {
                return Err(Error::Unsupported("relations must be homogeneous of positive degree".into()));
            }
            by_degree.entry(d).or_default().push(r.clone());
        }
        let base = Level {
            std: vec![Word::new()],
            rat: Echelon::new(),
            col_std: HashMap::from([(0, 0)]),
        };
        Ok(FreeQuotient {
            n,
            by_degree,
            levels: vec![base],
            rows: vec![HilbertRow {
                degree: 0,
                words: 1,
                relation_rows: 0,
                rank: 0,
                dimension: 1,
            }],
            cache: RefCell::new(HashMap::new()),
        })
    }

    /// Highest degree computed so far.
    pub fn degree(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn dimension(&self, d: usize) -> usize {
        self.levels[d].std.len()
    }

    /// Standard monomials of degree `d`; they form a basis of that component.
    pub fn standard_words(&self, d: usize) -> &[Word] {
        &self.levels[d].std
    }

    pub fn rows(&self) -> &[HilbertRow] {
        &self.rows
    }

    fn pre(&self, word: &[u32]) -> SparseRow<Rat> {
        let (last, head) = word.split_last().expect("nonempty word");
        self.normal_form(head)
            .into_iter()
            .map(|(s, c)| (s * self.n + *last as usize, c))
            .collect()
    }

    /// Coordinates of a word in the standard basis of its degree.
    pub fn normal_form(&self, word: &[u32]) -> SparseRow<Rat> {
        let d = word.len();
        assert!(d <= self.degree(), "degree {d} not computed");
        if d == 0 {
            return SparseRow::from([(0, Rat::one())]);
        }
        if let Some(v) = self.cache.borrow().get(word) {
            return v.clone();
        }
        let level = &self.levels[d];
        let v: SparseRow<Rat> = level
            .rat
            .reduce(self.pre(word))
            .into_iter()
            .map(|(c, x)| (level.col_std[&c], x))
            .collect();
        if d + 1 < self.levels.len() || self.cache.borrow().len() < 4_000_000 {
            self.cache.borrow_mut().insert(word.to_vec(), v.clone());
        }
        v
    }

    /// Normal form of a homogeneous combination of words of degree `d`.
    pub fn reduce_element(&self, el: &[(Word, Rat)]) -> SparseRow<Rat> {
        let mut acc = SparseRow::new();
        for (w, c) in el {
            for (k, x) in self.normal_form(w) {
                add_into(&mut acc, k, &x.mul(c));
            }
        }
        acc
    }

    /// Computes the next degree. Returns false, leaving the state
    /// unchanged, if more than `budget` relation rows would be needed.
    pub fn extend(&mut self, budget: usize) -> Result<bool> {
        let d = self.degree() + 1;
        let prev = &self.levels[d - 1];
        let words = prev.std.len() * self.n;
        let mut count = 0usize;
        for (&r, rels) in self.by_degree.range(..=d) {
            count += self.levels[d - r].std.len() * rels.len();
        }
        if count > budget {
            return Ok(false);
        }
        let mut rat = Echelon::<Rat>::new();
        let mut modp = Echelon::<Fp>::new();
        for (&r, rels) in self.by_degree.range(..=d) {
            for s in 0..self.levels[d - r].std.len() {
                let prefix = self.levels[d - r].std[s].clone();
                for rel in rels {
                    let mut row = SparseRow::new();
                    for (w, c) in rel {
                        let mut full = prefix.clone();
                        full.extend_from_slice(w);
                        for (k, x) in self.pre(&full) {
                            add_into(&mut row, k, &x.mul(c));
                        }
                    }
                    let rp: SparseRow<Fp> = row.iter().map(|(k, x)| (*k, x.to_fp())).filter(|(_, x)| !x.is_zero()).collect();
                    rat.insert(row);
                    modp.insert(rp);
                }
            }
        }
        if rat.rank() != modp.rank() {
            return Err(Error::Internal(format!(
                "rational rank {} and modular rank {} differ in degree {d}",
                rat.rank(),
                modp.rank()
            )));
        }
        let mut std = Vec::new();
        let mut col_std = HashMap::new();
        for c in 0..words {
            if !rat.is_pivot(c) {
                let mut w = prev.std[c / self.n].clone();
                w.push((c % self.n) as u32);
                col_std.insert(c, std.len());
                std.push(w);
            }
        }
        self.rows.push(HilbertRow {
            degree: d,
            words,
            relation_rows: count,
            rank: rat.rank(),
            dimension: std.len(),
        });
        self.levels.push(Level { std, rat, col_std });
        Ok(true)
    }
}

fn add_into<F: FieldElem>(row: &mut SparseRow<F>, k: usize, x: &F) {
    if x.is_zero() {
        return;
    }
    let e = row.entry(k).or_insert_with(F::zero);
    *e = e.add(x);
    if e.is_zero() {
        row.remove(&k);
    }
}

/// Sorted multiset of letters.
type Mono = Vec<u32>;

fn divides(small: &[u32], big: &[u32]) -> bool {
    let mut j = 0;
    for &x in small {
        while j < big.len() && big[j] < x {
            j += 1;
        }
        if j == big.len() || big[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

fn merge(a: &[u32], b: &[u32]) -> Mono {
    let mut m: Mono = a.iter().chain(b).copied().collect();
    m.sort_unstable();
    m
}

fn monomials(n: usize, d: usize, forbidden: &[Mono]) -> Vec<Mono> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(n: usize, d: usize, start: u32, cur: &mut Mono, forbidden: &[Mono], out: &mut Vec<Mono>) {
        if forbidden.iter().any(|f| divides(f, cur)) {
            return;
        }
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for x in start..n as u32 {
            cur.push(x);
            rec(n, d, x, cur, forbidden, out);
            cur.pop();
        }
    }
    rec(n, d, 0, &mut cur, forbidden, &mut out);
    out
}

fn commutative_series(p: &Presentation, max_degree: usize, budget: usize) -> Result<HilbertReport> {
    let n = p.letters.len();
    let mut forbidden: Vec<Mono> = Vec::new();
    let mut polys: Vec<Vec<(Mono, Rat)>> = Vec::new();
    for r in &p.relations {
        let mut acc: BTreeMap<Mono, Rat> = BTreeMap::new();
        for (w, c) in r {
            let mut m = w.clone();
            m.sort_unstable();
            let e = acc.entry(m).or_insert_with(Rat::zero);
            *e = e.add(c);
        }
        acc.retain(|_, c| !c.is_zero());
        match acc.len() {
            0 => {}
            1 => forbidden.push(acc.into_keys().next().unwrap()),
            _ => polys.push(acc.into_iter().collect()),
        }
    }
    forbidden.sort();
    forbidden.dedup();
    let mut rows = vec![HilbertRow {
        degree: 0,
        words: 1,
        relation_rows: 0,
        rank: 0,
        dimension: 1,
    }];
    let mut cutoff = None;
    let mut normal: Vec<Vec<Mono>> = vec![vec![Mono::new()]];
    for d in 1..=max_degree {
        let cols = monomials(n, d, &forbidden);
        let index: HashMap<&Mono, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut count = 0;
        for rel in &polys {
            let r = rel[0].0.len();
            if r <= d {
                count += normal[d - r].len();
            }
        }
        if count > budget {
            cutoff = Some(d);
            break;
        }
        let mut matrix: Vec<SparseRow<Rat>> = Vec::with_capacity(count);
        for rel in &polys {
            let r = rel[0].0.len();
            if r > d {
                continue;
            }
            for m in &normal[d - r] {
                let mut row = SparseRow::new();
                for (w, c) in rel {
                    if let Some(&k) = index.get(&merge(m, w)) {
                        add_into(&mut row, k, c);
                    }
                }
                if !row.is_empty() {
                    matrix.push(row);
                }
            }
        }
        let (rq, rp) = rayon::join(
            || {
                let mut e = Echelon::<Rat>::new();
                for row in &matrix {
                    e.insert(row.clone());
                }
                e.rank()
            },
            || {
                let mut e = Echelon::<Fp>::new();
                for row in &matrix {
                    e.insert(row.iter().map(|(k, x)| (*k, x.to_fp())).filter(|(_, x)| !x.is_zero()).collect());
                }
                e.rank()
            },
        );
        if rq != rp {
            return Err(Error::Internal(format!("rational rank {rq} and modular rank {rp} differ in degree {d}")));
        }
        rows.push(HilbertRow {
            degree: d,
            words: cols.len(),
            relation_rows: count,
            rank: rq,
            dimension: cols.len() - rq,
        });
        normal.push(cols);
        if rows.last().is_some_and(|r| r.dimension == 0) {
            break;
        }
    }
    Ok(HilbertReport {
        algebra: Algebra::Commutative,
        rows,
        cutoff,
    })
}

/// Commutative image of the bracket algebra of a Weyl group: the
/// abelianized quadratic relations and the squares. The second component
/// reports whether every abelianized four-term relation already lies in
/// the monomial ideal of squares, which is why they can be left out.
pub fn commutative_bracket_presentation(g: &WeylGroup) -> Result<(Presentation, bool)> {
    let rels = generic_relations(g, Mode::Classical)?;
    let mut keep = Vec::new();
    let mut redundant = true;
    for r in &rels.relations {
        if r.source == "four-term" {
            redundant &= r.expr.terms().all(|(w, _)| has_repeat(w));
            continue;
        }
        keep.push(r.expr.clone());
    }
    Ok((Presentation::from_exprs(g.rs.labels.clone(), &keep)?, redundant))
}

fn has_repeat(w: &[u32]) -> bool {
    let mut s = w.to_vec();
    s.sort_unstable();
    s.windows(2).any(|p| p[0] == p[1])
}

/// Which relation list of the bracket algebra a quotient is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationList {
    Generic,
    Explicit,
}

impl std::str::FromStr for RelationList {
    type Err = Error;
    fn from_str(s: &str) -> Result<RelationList> {
        match s {
            "generic" => Ok(RelationList::Generic),
            "explicit" => Ok(RelationList::Explicit),
            _ => Err(Error::Unsupported(format!("unknown relation list {s:?}"))),
        }
    }
}

/// Named additional relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtraRelation {
    /// `[1][1,2][1][1,2] - [1,2][1][1,2][1]` in type B2.
    B2Quartic,
}

impl std::str::FromStr for ExtraRelation {
    type Err = Error;
    fn from_str(s: &str) -> Result<ExtraRelation> {
        match s {
            "b2-quartic" => Ok(ExtraRelation::B2Quartic),
            _ => Err(Error::Unsupported(format!("unknown extra relation {s:?}"))),
        }
    }
}

impl ExtraRelation {
    pub fn expr(&self, rs: &RootSystem) -> Result<NcExpr> {
        match self {
            ExtraRelation::B2Quartic => {
                if rs.ctype != crate::roots::CoxeterType::b(2) {
                    return Err(Error::Unsupported(format!("b2-quartic is a relation of B2, not {}", rs.ctype)));
                }
                let l = Letters::new(rs);
                let (a, b) = (l.single(1), l.br(1, 2));
                let ab = &a * &b;
                let ba = &b * &a;
                Ok(&(&ab * &ab) - &(&ba * &ba))
            }
        }
    }
}

/// Presentation of a quotient of the classical bracket algebra. The
/// commutative image always uses [`commutative_bracket_presentation`];
/// the free one uses the chosen relation list plus the extra relations.
pub fn bracket_presentation(g: &WeylGroup, algebra: Algebra, list: RelationList, extra: &[ExtraRelation]) -> Result<Presentation> {
    let rs = &g.rs;
    let extra: Vec<NcExpr> = extra.iter().map(|e| e.expr(rs)).collect::<Result<_>>()?;
    match algebra {
        Algebra::Commutative => {
            let (mut p, redundant) = commutative_bracket_presentation(g)?;
            if !redundant {
                return Err(Error::Internal("an abelianized four-term relation is not a multiple of a square".into()));
            }
            for e in &extra {
                p.relations.push(element_from_expr(e)?);
            }
            Ok(p)
        }
        Algebra::Free => {
            let rels = match list {
                RelationList::Generic => generic_relations(g, Mode::Classical)?,
                RelationList::Explicit => explicit_relations(rs, Mode::Classical)?
                    .ok_or_else(|| Error::Unsupported(format!("no explicit relation list for {}", rs.ctype)))?,
            };
            Presentation::from_relations(rs, &rels.relations, &extra)
        }
    }
}

/// Polynomial with integer coefficients as a coefficient list.
pub fn expand_product(factors: &[Vec<i64>]) -> Vec<i64> {
    let mut acc = vec![1i64];
    for f in factors {
        let mut next = vec![0i64; acc.len() + f.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in f.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    acc
}

/// A single expression converted to the quotient's coefficients.
pub fn element_from_expr(e: &NcExpr) -> Result<Element> {
    Presentation::from_exprs(Vec::new(), std::slice::from_ref(e)).map(|p| p.relations.into_iter().next().unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::CoxeterType;
    use std::sync::Arc;

    fn group(s: &str) -> Arc<WeylGroup> {
        Arc::new(WeylGroup::build(s.parse::<CoxeterType>().unwrap()).unwrap())
    }

    fn rel(terms: &[(&[u32], i64)]) -> Element {
        terms.iter().map(|(w, c)| (w.to_vec(), Rat::from_int(*c))).collect()
    }

    #[test]
    fn exterior_algebra_in_both_modes() {
        // x^2, y^2, xy + yx on two letters: dimensions 1, 2, 1.
        let p = Presentation {
            letters: vec!["x".into(), "y".into()],
            relations: vec![rel(&[(&[0, 0], 1)]), rel(&[(&[1, 1], 1)]), rel(&[(&[0, 1], 1), (&[1, 0], 1)])],
        };
        let free = hilbert_series(&p, Algebra::Free, 4, DEFAULT_BUDGET).unwrap();
        assert_eq!(free.coefficients(), vec![1, 2, 1, 0]);
        assert_eq!(free.coefficient(7), Some(0));
        let comm = hilbert_series(&p, Algebra::Commutative, 4, DEFAULT_BUDGET).unwrap();
        // Commutatively xy + yx = 2xy, so degree two dies.
        assert_eq!(comm.coefficients()[..3], [1, 2, 0]);
    }

    #[test]
    fn free_algebra_without_relations() {
        let p = Presentation {
            letters: vec!["a".into(), "b".into(), "c".into()],
            relations: vec![],
        };
        let r = hilbert_series(&p, Algebra::Free, 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.coefficients(), vec![1, 3, 9, 27]);
    }

    #[test]
    fn budget_cutoff_is_reported() {
        let p = Presentation {
            letters: vec!["a".into(), "b".into()],
            relations: vec![rel(&[(&[0, 1], 1), (&[1, 0], -1)])],
        };
        let r = hilbert_series(&p, Algebra::Free, 6, 2).unwrap();
        assert_eq!(r.cutoff, Some(4));
        assert_eq!(r.coefficients(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn normal_forms_respect_relations() {
        // ab = ba: the free quotient is the polynomial ring.
        let p = Presentation {
            letters: vec!["a".into(), "b".into()],
            relations: vec![rel(&[(&[0, 1], 1), (&[1, 0], -1)])],
        };
        let mut q = FreeQuotient::new(&p).unwrap();
        for _ in 0..4 {
            assert!(q.extend(DEFAULT_BUDGET).unwrap());
        }
        assert_eq!(q.dimension(4), 5);
        assert_eq!(q.normal_form(&[0, 1, 0, 1]), q.normal_form(&[1, 1, 0, 0]));
        assert_ne!(q.normal_form(&[0, 1, 0, 1]), q.normal_form(&[1, 1, 1, 0]));
    }

    #[test]
    fn a2_commutative_quotient() {
        let (p, redundant) = commutative_bracket_presentation(&group("A2")).unwrap();
        assert!(redundant);
        let r = hilbert_series(&p, Algebra::Commutative, 4, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.coefficients(), [1, 3, 2, 0]);
    }

    #[test]
    fn a2_free_quotient_has_dimension_twelve() {
        let g = group("A2");
        let rels = generic_relations(&g, Mode::Classical).unwrap();
        let p = Presentation::from_relations(&g.rs, &rels.relations, &[]).unwrap();
        let r = hilbert_series(&p, Algebra::Free, 5, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.coefficients(), vec![1, 3, 4, 3, 1, 0]);
    }

    #[test]
    fn product_expansion() {
        assert_eq!(expand_product(&[vec![1, 1], vec![1, 1]]), vec![1, 2, 1]);
        assert_eq!(expand_product(&[vec![1, 0, 1], vec![1, 1]]), vec![1, 1, 1, 1]);
    }

    #[test]
    fn b2_quartic_quotient() {
        let g = group("B2");
        let p = bracket_presentation(&g, Algebra::Free, RelationList::Explicit, &[ExtraRelation::B2Quartic]).unwrap();
        let r = hilbert_series(&p, Algebra::Free, 9, DEFAULT_BUDGET).unwrap();
        let expected = expand_product(&[vec![1, 1], vec![1, 1], vec![1, 1], vec![1, 1], vec![1, 0, 1], vec![1, 0, 1]]);
        let got: Vec<i64> = r.coefficients().iter().map(|&c| c as i64).collect();
        assert_eq!(got, [expected, vec![0]].concat());
    }

    #[test]
    fn quartic_preset_needs_b2() {
        let g = group("B3");
        assert!(bracket_presentation(&g, Algebra::Free, RelationList::Generic, &[ExtraRelation::B2Quartic]).is_err());
    }
}
