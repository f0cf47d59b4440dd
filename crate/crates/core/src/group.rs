//! The finite group `W` generated by the simple reflections, with lengths,
//! reduced words, reflections and the (extended) Bruhat graphs.
//!
//! Elements are identified by their exact matrices. Internally an element is
//! keyed by `w(rho)`, which determines `w` because `rho` is regular, and all
//! multiplication tables are derived from the action on roots.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::roots::{CoxeterType, RootSystem, Vector};
use crate::scalar::Scalar;

pub type Matrix = Vec<Vec<Scalar>>;

/// A signed reference to a root: `sign * positive[index]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedRoot {
    pub index: u32,
    pub positive: bool,
}

#[derive(Clone, Debug)]
pub struct GroupElement {
    pub matrix: Matrix,
    pub length: usize,
    /// Word `i_1 ... i_k` with `w = s_{i_1} ... s_{i_k}` (BFS-first reduced word).
    pub word: Vec<usize>,
}

#[derive(Debug)]
pub struct WeylGroup {
    pub rs: Arc<RootSystem>,
    pub elements: Vec<GroupElement>,
    /// `root_images[w][k] = w(gamma_k)`.
    pub root_images: Vec<Vec<SignedRoot>>,
    /// `rmul[w][k]` is the index of `w s_{gamma_k}`.
    pub rmul: Vec<Vec<u32>>,
    /// Index of the reflection `s_{gamma_k}`.
    pub reflections: Vec<usize>,
    pub inverse: Vec<usize>,
    lookup: HashMap<Vector, usize>,
    w_rho: Vec<Vector>,
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = Scalar::zero();
                    for k in 0..n {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            acc += &(&a[i][k] * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[Scalar]) -> Vector {
    a.iter()
        .map(|row| {
            let mut acc = Scalar::zero();
            for (x, y) in row.iter().zip(v) {
                if !x.is_zero() && !y.is_zero() {
                    acc += &(x * y);
                }
            }
            acc
        })
        .collect()
}

fn identity_matrix(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect()
}

/// Matrix of the reflection in `gamma` acting on ambient coordinates.
pub fn reflection_matrix(rs: &RootSystem, gamma: &[Scalar]) -> Matrix {
    let n = rs.dim();
    let cols: Vec<Vector> = (0..n)
        .map(|k| {
            let e: Vector = (0..n).map(|i| if i == k { Scalar::one() } else { Scalar::zero() }).collect();
            rs.reflect(gamma, &e).expect("nonzero root")
        })
        .collect();
    (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
}

impl WeylGroup {
    pub fn new(rs: Arc<RootSystem>) -> WeylGroup {
        let n = rs.num_positive();
        let rank = rs.rank();
        let dim = rs.dim();

        let signed = |v: &[Scalar]| -> SignedRoot {
            let (k, s) = rs.find_root(v).expect("image of a root is a root");
            SignedRoot {
                index: k as u32,
                positive: s > 0,
            }
        };
        // How each simple reflection permutes the roots.
        let simple_perm: Vec<Vec<SignedRoot>> = (0..rank)
            .map(|i| {
                let a = &rs.simple[i];
                (0..n).map(|k| signed(&rs.reflect(a, &rs.positive[k]).unwrap())).collect()
            })
            .collect();
        let simple_mats: Vec<Matrix> = rs.simple.iter().map(|a| reflection_matrix(&rs, a)).collect();

        let mut elements = vec![GroupElement {
            matrix: identity_matrix(dim),
            length: 0,
            word: Vec::new(),
        }];
        let mut root_images: Vec<Vec<SignedRoot>> = vec![(0..n)
            .map(|k| SignedRoot {
                index: k as u32,
                positive: true,
            })
            .collect()];
        let mut w_rho = vec![rs.rho.clone()];
        let mut lookup: HashMap<Vector, usize> = HashMap::new();
        lookup.insert(rs.rho.clone(), 0);

        let root_vec = |s: SignedRoot| -> Vector {
            let v = &rs.positive[s.index as usize];
            if s.positive {
                v.clone()
            } else {
                v.iter().map(|x| -x).collect()
            }
        };

        let mut layer = vec![0usize];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for &w in &layer {
                for i in 0..rank {
                    // w s_i (rho) = w(rho) - w(alpha_i), since <rho, alpha_i^vee> = 1.
                    let wa = root_images[w][rs.simple_index[i]];
                    let wa_vec = root_vec(wa);
                    let key: Vector = w_rho[w].iter().zip(&wa_vec).map(|(x, y)| x - y).collect();
                    if lookup.contains_key(&key) {
                        continue;
                    }
                    let idx = elements.len();
                    lookup.insert(key.clone(), idx);
                    w_rho.push(key);
                    let imgs: Vec<SignedRoot> = (0..n)
                        .map(|k| {
                            let s = simple_perm[i][k];
                            let t = root_images[w][s.index as usize];
                            SignedRoot {
                                index: t.index,
                                positive: t.positive == s.positive,
                            }
                        })
                        .collect();
                    root_images.push(imgs);
                    let mut word = elements[w].word.clone();
                    word.push(i);
                    elements.push(GroupElement {
                        matrix: mat_mul(&elements[w].matrix, &simple_mats[i]),
                        length: elements[w].length + 1,
                        word,
                    });
                    next.push(idx);
                }
            }
            layer = next;
        }

        let heights: Vec<Scalar> = (0..n).map(|k| rs.pairing(&rs.rho, k)).collect();
        let rmul: Vec<Vec<u32>> = (0..elements.len())
            .map(|w| {
                (0..n)
                    .map(|k| {
                        let wg = root_vec(root_images[w][k]);
                        let key: Vector = w_rho[w].iter().zip(&wg).map(|(x, y)| x - &(&heights[k] * y)).collect();
                        lookup[&key] as u32
                    })
                    .collect()
            })
            .collect();
        let reflections: Vec<usize> = (0..n).map(|k| rmul[0][k] as usize).collect();

        let mut g = WeylGroup {
            rs,
            elements,
            root_images,
            rmul,
            reflections,
            inverse: Vec::new(),
            lookup,
            w_rho,
        };
        g.inverse = (0..g.order()).map(|w| {
            let mut word = g.elements[w].word.clone();
            word.reverse();
            g.from_word(&word)
        }).collect();
        g
    }

    pub fn build(ctype: CoxeterType) -> Result<WeylGroup> {
        Ok(WeylGroup::new(Arc::new(RootSystem::build(ctype)?)))
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn length(&self, w: usize) -> usize {
        self.elements[w].length
    }

    pub fn word(&self, w: usize) -> &[usize] {
        &self.elements[w].word
    }

    pub fn longest(&self) -> usize {
        (0..self.order()).max_by_key(|&w| self.length(w)).unwrap()
    }

    /// `w s_i` for a simple index `i`.
    pub fn rmul_simple(&self, w: usize, i: usize) -> usize {
        self.rmul[w][self.rs.simple_index[i]] as usize
    }

    pub fn from_word(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |w, &i| self.rmul_simple(w, i))
    }

    pub fn mul(&self, u: usize, v: usize) -> usize {
        self.elements[v].word.iter().fold(u, |w, &i| self.rmul_simple(w, i))
    }

    /// Index of the element with the given matrix, if any.
    pub fn find_matrix(&self, m: &Matrix) -> Option<usize> {
        self.lookup.get(&mat_vec(m, &self.rs.rho)).copied()
    }

    /// `s_gamma` for a root vector.
    pub fn reflection_element(&self, gamma: &[Scalar]) -> Result<usize> {
        let (k, _) = self.rs.find_root(gamma)?;
        Ok(self.reflections[k])
    }

    pub fn act_on_root(&self, w: usize, gamma: &[Scalar]) -> Result<Vector> {
        let (k, s) = self.rs.find_root(gamma)?;
        let img = self.root_images[w][k];
        let v = &self.rs.positive[img.index as usize];
        Ok(if img.positive == (s > 0) { v.clone() } else { v.iter().map(|x| -x).collect() })
    }

    /// `|{gamma > 0 : w(gamma) < 0}|`.
    pub fn inversion_count(&self, w: usize) -> usize {
        self.root_images[w].iter().filter(|s| !s.positive).count()
    }

    /// `w(rho)`, the regular orbit point identifying `w`.
    pub fn rho_image(&self, w: usize) -> &Vector {
        &self.w_rho[w]
    }

    /// All reduced words of `w`.
    pub fn reduced_words(&self, w: usize) -> Vec<Vec<usize>> {
        if w == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in 0..self.rs.rank() {
            let v = self.rmul_simple(w, i);
            if self.length(v) + 1 == self.length(w) {
                for mut word in self.reduced_words(v) {
                    word.push(i);
                    out.push(word);
                }
            }
        }
        out
    }

    /// Integer exponents `n_s` with `gamma^vee = sum n_s alpha_s^vee`.
    pub fn q_exponent(&self, k: usize) -> Result<Vec<i64>> {
        Ok(self.rs.quantum_data()?.coroot_coords[k].clone())
    }

    pub fn word_string(&self, w: usize) -> String {
        if w == 0 {
            return "e".to_string();
        }
        self.word(w).iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join(" ")
    }

    /// Checks `2 (rho, gamma^vee) - 1 >= l(s_gamma)` for every positive root.
    pub fn lemma_length_bound(&self) -> Vec<(usize, Scalar, usize, bool)> {
        let rs = &self.rs;
        (0..rs.num_positive())
            .map(|k| {
                let bound = match &rs.quantum {
                    Some(q) => Scalar::from_int(2 * q.heights[k] - 1),
                    None => &(&Scalar::from_int(2) * &rs.pairing(&rs.rho, k)) - &Scalar::one(),
                };
                let len = self.length(self.reflections[k]);
                let ok = (&bound - &Scalar::from_int(len as i64)).signum() >= 0;
                (k, bound, len, ok)
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type": self.rs.ctype.to_string(),
            "order": self.order(),
            "elements": (0..self.order()).map(|w| self.word(w).to_vec()).collect::<Vec<_>>(),
            "lengths": (0..self.order()).map(|w| self.length(w)).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ArrowKind {
    Classical,
    Extended,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub root: usize,
    pub kind: ArrowKind,
}

#[derive(Clone, Debug)]
pub struct BruhatGraph {
    pub quantum: bool,
    pub classical: Vec<Arrow>,
    pub extended: Vec<Arrow>,
    /// Arrows grouped by source vertex.
    pub out: Vec<Vec<Arrow>>,
}

impl BruhatGraph {
    pub fn build(g: &WeylGroup, quantum: bool) -> Result<BruhatGraph> {
        let heights = if quantum { Some(g.rs.quantum_data()?.heights.clone()) } else { None };
        let mut classical = Vec::new();
        let mut extended = Vec::new();
        let mut out = vec![Vec::new(); g.order()];
        for v in 0..g.order() {
            let lv = g.length(v) as i64;
            for k in 0..g.rs.num_positive() {
                let w = g.rmul[v][k] as usize;
                let lw = g.length(w) as i64;
                if lw == lv + 1 {
                    let a = Arrow {
                        source: v,
                        target: w,
                        root: k,
                        kind: ArrowKind::Classical,
                    };
                    classical.push(a);
                    out[v].push(a);
                } else if let Some(h) = &heights {
                    if lw == lv - 2 * h[k] + 1 {
                        let a = Arrow {
                            source: v,
                            target: w,
                            root: k,
                            kind: ArrowKind::Extended,
                        };
                        extended.push(a);
                        out[v].push(a);
                    }
                }
            }
        }
        Ok(BruhatGraph {
            quantum,
            classical,
            extended,
            out,
        })
    }

    pub fn arrows(&self) -> impl Iterator<Item = &Arrow> {
        self.classical.iter().chain(self.extended.iter())
    }

    pub fn to_json(&self, g: &WeylGroup) -> serde_json::Value {
        let enc = |a: &Arrow| serde_json::json!([g.word(a.source), g.word(a.target), a.root]);
        serde_json::json!({
            "type": g.rs.ctype.to_string(),
            "quantum": self.quantum,
            "classical_arrows": self.classical.iter().map(enc).collect::<Vec<_>>(),
            "extended_arrows": self.extended.iter().map(enc).collect::<Vec<_>>(),
        })
    }
}

/// Compares the arrows of `big` between elements of the parabolic subgroup
/// generated by `subset` with the graph of the standalone group `small`,
/// whose simple reflection `t` corresponds to `subset[t]`.
pub fn parabolic_agreement(big: &WeylGroup, subset: &[usize], small: &WeylGroup, quantum: bool) -> Result<bool> {
    if small.rs.rank() != subset.len() {
        return Err(Error::Unsupported("parabolic subset size does not match the small rank".into()));
    }
    let gbig = BruhatGraph::build(big, quantum)?;
    let gsmall = BruhatGraph::build(small, quantum)?;
    // Embed the small group by words.
    let embed: Vec<usize> = (0..small.order())
        .map(|w| big.from_word(&small.word(w).iter().map(|&t| subset[t]).collect::<Vec<_>>()))
        .collect();
    let back: HashMap<usize, usize> = embed.iter().enumerate().map(|(s, &b)| (b, s)).collect();
    if back.len() != small.order() {
        return Ok(false);
    }
    let mut from_big: Vec<(usize, usize, ArrowKind)> = gbig
        .arrows()
        .filter_map(|a| match (back.get(&a.source), back.get(&a.target)) {
            (Some(&s), Some(&t)) => Some((s, t, a.kind)),
            _ => None,
        })
        .collect();
    let mut from_small: Vec<(usize, usize, ArrowKind)> = gsmall.arrows().map(|a| (a.source, a.target, a.kind)).collect();
    from_big.sort();
    from_small.sort();
    Ok(from_big == from_small)
}

/// Diagnostic: for each rank-2 subsystem, counts the length-two paths
/// `v -> u -> w` of the extended graph whose arrows are labelled by roots of
/// the subsystem, and histograms the number of such paths per `(v, w)`.
pub fn two_path_histogram(g: &WeylGroup, graph: &BruhatGraph) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for sub in g.rs.rank2_subsystems() {
        let member: std::collections::HashSet<usize> = sub.roots.iter().copied().collect();
        for v in 0..g.order() {
            let mut counts: HashMap<usize, usize> = HashMap::new();
            for a in graph.out[v].iter().filter(|a| member.contains(&a.root)) {
                for b in graph.out[a.target].iter().filter(|b| member.contains(&b.root)) {
                    if a.kind != b.kind {
                        *counts.entry(b.target).or_default() += 1;
                    }
                }
            }
            for c in counts.values() {
                *hist.entry(*c).or_default() += 1;
            }
        }
    }
    hist
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        for t in [
            CoxeterType::a(1),
            CoxeterType::a(3),
            CoxeterType::b(2),
            CoxeterType::b(3),
            CoxeterType::d(4),
            CoxeterType::g2(),
            CoxeterType::i2(5),
            CoxeterType::i2(8),
        ] {
            let g = WeylGroup::build(t).unwrap();
            assert_eq!(g.order(), t.group_order(), "{t}");
            let w0 = g.longest();
            assert_eq!(g.length(w0), t.positive_root_count());
            assert_eq!(g.mul(w0, w0), 0);
        }
    }

    #[test]
    fn length_is_inversion_count() {
        for t in [CoxeterType::b(3), CoxeterType::g2(), CoxeterType::i2(7), CoxeterType::d(4)] {
            let g = WeylGroup::build(t).unwrap();
            for w in 0..g.order() {
                assert_eq!(g.length(w), g.inversion_count(w));
            }
        }
    }

    #[test]
    fn matrices_are_faithful_and_consistent() {
        let g = WeylGroup::build(CoxeterType::b(2)).unwrap();
        for w in 0..g.order() {
            assert_eq!(g.find_matrix(&g.elements[w].matrix), Some(w));
            assert_eq!(mat_vec(&g.elements[w].matrix, &g.rs.rho), *g.rho_image(w));
            for k in 0..g.rs.num_positive() {
                let img = mat_vec(&g.elements[w].matrix, &g.rs.positive[k]);
                assert_eq!(g.act_on_root(w, &g.rs.positive[k]).unwrap(), img);
                let ws = g.rmul[w][k] as usize;
                let m = mat_mul(&g.elements[w].matrix, &reflection_matrix(&g.rs, &g.rs.positive[k]));
                assert_eq!(g.elements[ws].matrix, m);
            }
        }
    }

    #[test]
    fn reflections_square_to_identity() {
        let g = WeylGroup::build(CoxeterType::g2()).unwrap();
        for k in 0..g.rs.num_positive() {
            let s = g.reflections[k];
            assert_eq!(g.mul(s, s), 0);
            let neg: Vector = g.rs.positive[k].iter().map(|x| -x).collect();
            assert_eq!(g.act_on_root(s, &g.rs.positive[k]).unwrap(), neg);
        }
        let b2 = WeylGroup::build(CoxeterType::b(2)).unwrap();
        let e1 = vec![Scalar::one(), Scalar::zero()];
        assert_eq!(b2.length(b2.reflection_element(&e1).unwrap()), 3);
    }

    #[test]
    fn length_criterion_on_b2() {
        let g = WeylGroup::build(CoxeterType::b(2)).unwrap();
        for w in 0..g.order() {
            for k in 0..g.rs.num_positive() {
                let up = g.length(g.rmul[w][k] as usize) > g.length(w);
                assert_eq!(up, g.root_images[w][k].positive);
            }
        }
    }

    #[test]
    fn inverse_table() {
        let g = WeylGroup::build(CoxeterType::a(3)).unwrap();
        for w in 0..g.order() {
            assert_eq!(g.mul(w, g.inverse[w]), 0);
        }
    }

    #[test]
    fn a1_graph() {
        let g = WeylGroup::build(CoxeterType::a(1)).unwrap();
        let gr = BruhatGraph::build(&g, true).unwrap();
        assert_eq!(gr.classical.len(), 1);
        assert_eq!(gr.extended.len(), 1);
        assert_eq!((gr.extended[0].source, gr.extended[0].target), (1, 0));
    }

    #[test]
    fn quantum_graph_rejected_for_noncrystallographic() {
        let g = WeylGroup::build(CoxeterType::i2(5)).unwrap();
        assert!(BruhatGraph::build(&g, true).is_err());
        assert!(BruhatGraph::build(&g, false).is_ok());
    }

    #[test]
    fn classical_arrow_count_b2() {
        let g = WeylGroup::build(CoxeterType::b(2)).unwrap();
        let gr = BruhatGraph::build(&g, false).unwrap();
        let mut brute = 0;
        for v in 0..g.order() {
            for k in 0..4 {
                let w = g.mul(v, g.reflections[k]);
                if g.length(w) == g.length(v) + 1 {
                    brute += 1;
                }
            }
        }
        assert_eq!(gr.classical.len(), brute);
    }

    #[test]
    fn extended_arrows_drop_length() {
        let g = WeylGroup::build(CoxeterType::g2()).unwrap();
        let gr = BruhatGraph::build(&g, true).unwrap();
        let h = &g.rs.quantum_data().unwrap().heights;
        for a in &gr.extended {
            assert_eq!(g.length(a.source) as i64 - g.length(a.target) as i64, 2 * h[a.root] - 1);
        }
    }

    #[test]
    fn length_bound_everywhere() {
        for t in [CoxeterType::b(3), CoxeterType::g2(), CoxeterType::d(4), CoxeterType::i2(5), CoxeterType::i2(4)] {
            let g = WeylGroup::build(t).unwrap();
            assert!(g.lemma_length_bound().iter().all(|x| x.3), "{t}");
        }
    }

    #[test]
    fn parabolic_subgraphs() {
        let b3 = WeylGroup::build(CoxeterType::b(3)).unwrap();
        let b2 = WeylGroup::build(CoxeterType::b(2)).unwrap();
        assert!(parabolic_agreement(&b3, &[1, 2], &b2, true).unwrap());
        let a3 = WeylGroup::build(CoxeterType::a(3)).unwrap();
        let a2 = WeylGroup::build(CoxeterType::a(2)).unwrap();
        assert!(parabolic_agreement(&a3, &[0, 1], &a2, true).unwrap());
        assert!(parabolic_agreement(&a3, &[1, 2], &a2, false).unwrap());
    }

    #[test]
    fn reduced_words_of_longest_a2() {
        let g = WeylGroup::build(CoxeterType::a(2)).unwrap();
        let mut w = g.reduced_words(g.longest());
        w.sort();
        assert_eq!(w, vec![vec![0, 1, 0], vec![1, 0, 1]]);
    }

    #[test]
    fn g2_highest_coroot_exponent() {
        let g = WeylGroup::build(CoxeterType::g2()).unwrap();
        let d = g.rs.index_of_label("d").unwrap();
        let e = g.q_exponent(d).unwrap();
        assert_eq!(e.iter().sum::<i64>(), 5);
        let s = g.rs.simple_index[0];
        assert_eq!(g.q_exponent(s).unwrap(), vec![1, 0]);
    }
}
