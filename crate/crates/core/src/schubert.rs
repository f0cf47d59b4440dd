//! Divided differences on polynomial functions of the ambient space, the
//! BGG polynomials `X_w`, their quantum corrections `P_w` and the
//! Chevalley and structure-constant checks built on them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{BruhatGraph, WeylGroup};
use crate::ops::{basis_vector, gvec_add_scaled, BruhatRep, CommutingFamily, GVec, LinComb};
use crate::poly::{Monomial, MultiPoly};
use crate::relations::{Central, Relation};
use crate::scalar::Scalar;

/// Polynomial functions on the ambient space with the `W` action
/// `(w f)(x) = f(w^{-1} x)` and the divided differences of positive roots.
pub struct PolyAction {
    pub group: Arc<WeylGroup>,
    /// `linear_forms[k]`: `x -> (gamma_k, x)`.
    pub linear_forms: Vec<MultiPoly>,
    reflection_subs: Vec<Vec<MultiPoly>>,
    cache: Mutex<HashMap<(usize, Monomial), MultiPoly>>,
}

impl PolyAction {
    pub fn new(group: Arc<WeylGroup>) -> PolyAction {
        let rs = group.rs.clone();
        let dim = rs.dim();
        let linear_forms = rs
            .positive
            .iter()
            .map(|gamma| {
                let coeffs: Vec<Scalar> = (0..dim).map(|k| (0..dim).map(|j| &rs.gram[k][j] * &gamma[j]).fold(Scalar::zero(), |a, b| &a + &b)).collect();
                MultiPoly::linear(&coeffs)
            })
            .collect();
        let reflection_subs = (0..rs.num_positive()).map(|k| Self::subs_for(&group, group.reflections[k])).collect();
        PolyAction {
            group,
            linear_forms,
            reflection_subs,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn nvars(&self) -> usize {
        self.group.rs.dim()
    }

    fn subs_for(g: &WeylGroup, w: usize) -> Vec<MultiPoly> {
        let m = &g.elements[g.inverse[w]].matrix;
        m.iter().map(|row| MultiPoly::linear(row)).collect()
    }

    /// `w f`.
    pub fn act(&self, w: usize, f: &MultiPoly) -> MultiPoly {
        f.substitute(&Self::subs_for(&self.group, w))
    }

    pub fn reflect(&self, k: usize, f: &MultiPoly) -> MultiPoly {
        f.substitute(&self.reflection_subs[k])
    }

    /// The linear form `x -> (lambda, x)`.
    pub fn linear_form(&self, lambda: &[Scalar]) -> MultiPoly {
        let rs = &self.group.rs;
        let dim = rs.dim();
        let coeffs: Vec<Scalar> = (0..dim).map(|k| (0..dim).map(|j| &rs.gram[k][j] * &lambda[j]).fold(Scalar::zero(), |a, b| &a + &b)).collect();
        MultiPoly::linear(&coeffs)
    }

    fn dd_monomial(&self, k: usize, m: &Monomial) -> Result<MultiPoly> {
        if let Some(v) = self.cache.lock().unwrap().get(&(k, m.clone())) {
            return Ok(v.clone());
        }
        let f = MultiPoly::term(m.clone(), Scalar::one());
        let num = &f - &self.reflect(k, &f);
        let q = num.div_exact(&self.linear_forms[k]).ok_or_else(|| {
            Error::Internal(format!("divided difference by {} left a remainder", self.group.rs.labels[k]))
        })?;
        self.cache.lock().unwrap().insert((k, m.clone()), q.clone());
        Ok(q)
    }

    /// `(f - s_gamma f) / gamma` for the positive root `gamma_k`.
    pub fn divided_difference(&self, k: usize, f: &MultiPoly) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(f.nvars());
        for (m, c) in f.terms() {
            out.add_assign_scaled(&self.dd_monomial(k, m)?, c);
        }
        Ok(out)
    }

    /// `d_{gamma_1} ... d_{gamma_r} f` (rightmost applied first).
    pub fn apply_root_word(&self, word: &[usize], f: &MultiPoly) -> Result<MultiPoly> {
        let mut cur = f.clone();
        for &k in word.iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = self.divided_difference(k, &cur)?;
        }
        Ok(cur)
    }

    /// `d_w` along a word in the simple reflections.
    pub fn apply_simple_word(&self, word: &[usize], f: &MultiPoly) -> Result<MultiPoly> {
        let roots: Vec<usize> = word.iter().map(|&i| self.group.rs.simple_index[i]).collect();
        self.apply_root_word(&roots, f)
    }
}

/// The BGG polynomials and, when built, their quantum corrections.
#[derive(Clone, Debug)]
pub struct SchubertTable {
    /// `classical[w] = X_w` in the ambient coordinates.
    pub classical: Vec<MultiPoly>,
    /// `quantum[w] = P_w` in the ambient coordinates followed by `q_1..q_r`.
    pub quantum: Option<Vec<MultiPoly>>,
}

/// `X_{w0} = prod gamma / |W|` and `X_w = d_{w^{-1} w0} X_{w0}`.
///
/// The table is filled downward in length with `X_w = d_i X_{w s_i}` for
/// every ascent `i` of `w`; all ascents must give the same polynomial,
/// which is equivalent to independence of the reduced word of
/// `w^{-1} w0`. Descents must give zero.
pub fn schubert_polynomials(action: &PolyAction) -> Result<Vec<MultiPoly>> {
    let g = &action.group;
    let n = action.nvars();
    let mut top = MultiPoly::constant(n, Scalar::from_ratio(1, g.order() as i64));
    for l in &action.linear_forms {
        top = &top * l;
    }
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&w| std::cmp::Reverse(g.length(w)));
    let mut table: Vec<Option<MultiPoly>> = vec![None; g.order()];
    table[g.longest()] = Some(top);
    for &w in &order {
        if w == g.longest() {
            continue;
        }
        let mut value: Option<MultiPoly> = None;
        for i in 0..g.rs.rank() {
            let up = g.rmul_simple(w, i);
            if g.length(up) != g.length(w) + 1 {
                continue;
            }
            let cand = action.apply_simple_word(&[i], table[up].as_ref().expect("longer elements are filled first"))?;
            match &value {
                None => value = Some(cand),
                Some(v) if *v == cand => {}
                Some(_) => {
                    return Err(Error::Internal(format!("divided differences depend on the reduced word at {}", g.word_string(w))));
                }
            }
        }
        table[w] = value;
    }
    let table: Vec<MultiPoly> = table.into_iter().map(|x| x.expect("every element below w0 has an ascent")).collect();
    for w in 0..g.order() {
        for i in 0..g.rs.rank() {
            let down = g.rmul_simple(w, i);
            if g.length(down) < g.length(w) {
                let d = action.apply_simple_word(&[i], &table[w])?;
                if d != table[down] {
                    return Err(Error::Internal(format!("d_{} X_{} is not X_{}", i + 1, g.word_string(w), g.word_string(down))));
                }
            } else if !action.apply_simple_word(&[i], &table[w])?.is_zero() {
                return Err(Error::Internal(format!("d_{} X_{} is nonzero at an ascent", i + 1, g.word_string(w))));
            }
        }
    }
    Ok(table)
}

/// Applies `d_u` for every reduced word of `u = w^{-1} w0` directly to
/// `X_{w0}` and compares with the table; `max_words` bounds the number of
/// words tried per element.
pub fn check_word_independence(action: &PolyAction, table: &[MultiPoly], max_words: usize) -> Result<usize> {
    let g = &action.group;
    let top = &table[g.longest()];
    let mut tried = 0;
    for w in 0..g.order() {
        let u = g.mul(g.inverse[w], g.longest());
        for word in g.reduced_words(u).into_iter().take(max_words) {
            tried += 1;
            if action.apply_simple_word(&word, top)? != table[w] {
                return Err(Error::Internal(format!("word {word:?} gives a different X_{}", g.word_string(w))));
            }
        }
    }
    Ok(tried)
}

/// Checks `d_t X_s = delta_{st}` and that `X_s - (omega_s, .)` is `W`-invariant.
pub fn check_degree_one(action: &PolyAction, table: &[MultiPoly]) -> Result<bool> {
    let g = &action.group;
    let rs = &g.rs;
    for s in 0..rs.rank() {
        let xs = &table[g.rmul_simple(0, s)];
        for t in 0..rs.rank() {
            let d = action.apply_simple_word(&[t], xs)?;
            let expected = MultiPoly::constant(action.nvars(), if s == t { Scalar::one() } else { Scalar::zero() });
            if d != expected {
                return Ok(false);
            }
        }
        let diff = xs - &action.linear_form(&rs.fundamental_weights[s]);
        for t in 0..rs.rank() {
            if action.apply_simple_word(&[t], &diff)? != MultiPoly::zero(action.nvars()) {
                return Ok(false);
            }
            if action.act(g.rmul_simple(0, t), &diff) != diff {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A relation that fails in the Calogero-Moser representation.
#[derive(Clone, Debug, Serialize)]
pub struct CmFailure {
    pub relation: String,
    pub monomial: String,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CmReport {
    pub relations: usize,
    pub max_degree: u32,
    pub monomials: usize,
    pub failures: Vec<CmFailure>,
}

/// Evaluates every relation, with `[gamma]` acting as the divided
/// difference, on all monomials of degree at most `max_degree`.
pub fn calogero_moser_check(action: &PolyAction, rels: &[Relation], max_degree: u32) -> Result<CmReport> {
    let rs = &action.group.rs;
    let n = action.nvars();
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let monomials: Vec<Monomial> = (0..=max_degree).flat_map(|d| crate::poly::monomials_of_degree(n, d)).collect();
    let mut failures = Vec::new();
    for rel in rels {
        if rel.value != Central::Zero {
            return Err(Error::Unsupported("divided differences realize the classical relations only".into()));
        }
        for m in &monomials {
            let f = MultiPoly::term(m.clone(), Scalar::one());
            let mut acc = MultiPoly::zero(n);
            for (word, c) in rel.expr.terms() {
                let word: Vec<usize> = word.iter().map(|&k| k as usize).collect();
                acc.add_assign_scaled(&action.apply_root_word(&word, &f)?, c);
            }
            if !acc.is_zero() {
                failures.push(CmFailure {
                    relation: rel.format(rs, 0),
                    monomial: f.format_with(&names),
                    residual: acc.format_with(&names),
                });
                break;
            }
        }
    }
    Ok(CmReport {
        relations: rels.len(),
        max_degree,
        monomials: monomials.len(),
        failures,
    })
}

/// Coordinate Dunkl elements `theta_k = sum_gamma (gamma^vee)_k [gamma]`,
/// the images of the coordinate functions `x_k`.
pub fn coordinate_family(g: &WeylGroup) -> Vec<LinComb> {
    let rs = &g.rs;
    (0..rs.dim())
        .map(|i| (0..rs.num_positive()).map(|k| (k, rs.coroots[k][i].clone())).filter(|(_, c)| !c.is_zero()).collect())
        .collect()
}

/// Embeds a polynomial in the coordinates into the ring with `nq` trailing `q` variables.
pub fn pad_coordinates(p: &MultiPoly, nq: usize) -> MultiPoly {
    let n = p.nvars();
    p.rename(n + nq, &(0..n).collect::<Vec<_>>())
}

/// Embeds a polynomial in `q` only after `ncoords` coordinates.
pub fn pad_parameters(p: &MultiPoly, ncoords: usize) -> MultiPoly {
    let nq = p.nvars();
    p.rename(ncoords + nq, &(ncoords..ncoords + nq).collect::<Vec<_>>())
}

/// Builds `P_w` in length order: `[X_w](e) = w + sum c_v v` with
/// `l(v) < l(w)`, and `P_w = X_w - sum c_v P_v`.
pub fn quantum_bgg_table(g: &Arc<WeylGroup>, classical: &[MultiPoly], rep: &BruhatRep) -> Result<Vec<MultiPoly>> {
    if !rep.quantum {
        return Err(Error::Unsupported("the quantum table needs the quantum Bruhat representation".into()));
    }
    let family = CommutingFamily::new(rep, coordinate_family(g))?;
    let n = g.rs.dim();
    let nq = rep.nq;
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&w| g.length(w));
    let mut table: Vec<Option<MultiPoly>> = vec![None; g.order()];
    let e = basis_vector(nq, 0);
    for &w in &order {
        let x = pad_coordinates(&classical[w], nq);
        let v = family.apply_polynomial(&x, &e)?;
        if v.get(&w) != Some(&MultiPoly::one(nq)) {
            return Err(Error::Internal(format!("[X_{}](e) does not contain the element with coefficient 1", g.word_string(w))));
        }
        let mut p = x;
        for (u, c) in &v {
            if *u == w {
                continue;
            }
            if g.length(*u) >= g.length(w) {
                return Err(Error::Internal(format!("[X_{}](e) has a term of length {} at {}", g.word_string(w), g.length(*u), g.word_string(*u))));
            }
            let lower = table[*u].as_ref().expect("shorter elements are filled first");
            p -= &(&pad_parameters(c, n) * lower);
        }
        table[w] = Some(p);
    }
    Ok(table.into_iter().map(|x| x.unwrap()).collect())
}

/// `[P_w](u) = sum_v c^v_{wu}(q) v`.
pub fn gw_constants(family: &CommutingFamily, table: &[MultiPoly], w: usize, u: usize) -> Result<GVec> {
    family.apply_polynomial(&table[w], &basis_vector(family.rep.nq, u))
}

/// A disagreement between the two sides of the quantum Chevalley formula.
#[derive(Clone, Debug, Serialize)]
pub struct ChevalleyFailure {
    pub simple: usize,
    pub element: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChevalleyReport {
    pub pairs: usize,
    pub failures: Vec<ChevalleyFailure>,
}

fn gvec_string(g: &WeylGroup, v: &GVec, names: &[&str]) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter().map(|(u, c)| format!("({})*{}", c.format_with(names), g.word_string(*u))).collect::<Vec<_>>().join(" + ")
}

/// Compares `[P_s P_w](e)`, computed from the polynomial product, with the
/// sum over arrows `w -> w'` of the quantum Bruhat graph weighted by
/// `<omega_s, gamma^vee>` and, for extended arrows, `q^{gamma^vee}`.
pub fn quantum_chevalley_check(g: &Arc<WeylGroup>, table: &[MultiPoly], rep: &BruhatRep) -> Result<ChevalleyReport> {
    let rs = &g.rs;
    let family = CommutingFamily::new(rep, coordinate_family(g))?;
    let graph = BruhatGraph::build(g, true)?;
    let qd = rs.quantum_data()?;
    let nq = rep.nq;
    let names: Vec<String> = (1..=nq).map(|i| format!("q{i}")).collect();
    let names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let e = basis_vector(nq, 0);
    let mut failures = Vec::new();
    let mut pairs = 0;
    for s in 0..rs.rank() {
        let ps = &table[g.rmul_simple(0, s)];
        for w in 0..g.order() {
            pairs += 1;
            let lhs = family.apply_polynomial(&(ps * &table[w]), &e)?;
            let mut rhs = GVec::new();
            for a in &graph.out[w] {
                let c = rs.pairing(&rs.fundamental_weights[s], a.root);
                if c.is_zero() {
                    continue;
                }
                let mono = match a.kind {
                    crate::group::ArrowKind::Classical => Monomial::one(nq),
                    crate::group::ArrowKind::Extended => {
                        let exps: Vec<u16> = qd.coroot_coords[a.root].iter().map(|&x| x as u16).collect();
                        Monomial::from_exps(&exps)
                    }
                };
                let mut single = GVec::new();
                single.insert(a.target, MultiPoly::term(mono, c));
                gvec_add_scaled(&mut rhs, &single, &MultiPoly::one(nq));
            }
            if lhs != rhs {
                failures.push(ChevalleyFailure {
                    simple: s,
                    element: g.word_string(w),
                    lhs: gvec_string(g, &lhs, &names),
                    rhs: gvec_string(g, &rhs, &names),
                });
            }
        }
    }
    Ok(ChevalleyReport { pairs, failures })
}

/// One of the displayed B2 identities `[p(theta; q)](e) = w`.
#[derive(Clone, Debug, Serialize)]
pub struct TableIdentity {
    pub polynomial: String,
    pub expected: String,
    pub value: String,
    pub holds: bool,
}

/// The five displayed quantum Schubert identities of B2, with
/// `theta_1`, `theta_2` the coordinate Dunkl elements and the simple
/// reflections `s12 = s_{e1-e2}` (index 0) and `s2 = s_{e2}` (index 1).
pub fn b2_table_identities(g: &Arc<WeylGroup>, rep: &BruhatRep) -> Result<Vec<TableIdentity>> {
    if g.rs.ctype != crate::roots::CoxeterType::b(2) || !rep.quantum {
        return Err(Error::Unsupported("the table identities are stated for quantum B2".into()));
    }
    let family = CommutingFamily::new(rep, coordinate_family(g))?;
    let names = ["t1", "t2", "q1", "q2"];
    let rows: [(&str, &[usize]); 5] = [
        ("(t1^2 - q1)/2", &[1, 0]),
        ("(t1*t2 + q1)/2", &[0, 1]),
        ("(t1^3 - 2*q1*t1 - q1*t2)/2", &[0, 1, 0]),
        ("(t1^2*t2 - t1^3 + 3*q1*t1 + q1*t2)/4", &[1, 0, 1]),
        ("(t1^3*t2 + q1*t1^2 - q1*t1*t2 - q1^2 - 4*q1*q2)/4", &[0, 1, 0, 1]),
    ];
    let word_names = |w: &[usize]| w.iter().map(|&i| if i == 0 { "s12" } else { "s2" }).collect::<Vec<_>>().join(" ");
    let qnames = ["q1", "q2"];
    let mut out = Vec::new();
    for (src, word) in rows {
        let p = crate::poly::parse_poly(src, &names).map_err(Error::Internal)?;
        let v = family.apply_polynomial(&p, &basis_vector(2, 0))?;
        let target = g.from_word(word);
        let holds = v.len() == 1 && v.get(&target) == Some(&MultiPoly::one(2));
        out.push(TableIdentity {
            polynomial: src.to_string(),
            expected: word_names(word),
            value: gvec_string(g, &v, &qnames),
            holds,
        });
    }
    Ok(out)
}
