//! Weyl group elements, reduced words, commutation classes and the
//! `hat` action on `Phi^+ x Z`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::cartan::{identity, mat_mul, mat_vec, Basis, CartanDatum, LatticeVec, Mat};
use crate::error::{Error, Result};

pub type Word = Vec<usize>;

/// Parse a comma-separated 1-based word such as `1,2,3,1`.
pub fn parse_word(s: &str, n: usize) -> Result<Word> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            let k: usize = t
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad letter `{}`", t.trim())))?;
            if k == 0 || k > n {
                return Err(Error::IndexOutOfRange(k, n));
            }
            Ok(k - 1)
        })
        .collect()
}

pub fn format_word(w: &[usize]) -> String {
    w.iter()
        .map(|k| (k + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// A Weyl group element stored by its action matrices on weight and on
/// root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub weight: Mat,
    pub root: Mat,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement {
            weight: identity(n),
            root: identity(n),
        }
    }

    pub fn simple(dt: &CartanDatum, i: usize) -> Self {
        WeylElement {
            weight: dt.reflection_matrix(i, Basis::Weight),
            root: dt.reflection_matrix(i, Basis::Root),
        }
    }

    /// `s_{w_1} s_{w_2} ... s_{w_r}`.
    pub fn from_word(dt: &CartanDatum, word: &[usize]) -> Self {
        let mut w = WeylElement::identity(dt.n);
        for &i in word {
            w = w.compose(&WeylElement::simple(dt, i));
        }
        w
    }

    /// `self * other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        WeylElement {
            weight: mat_mul(&self.weight, &other.weight),
            root: mat_mul(&self.root, &other.root),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        let n = self.weight.len();
        let mut out = WeylElement::identity(n);
        for _ in 0..k {
            out = out.compose(self);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.weight == identity(self.weight.len())
    }

    pub fn apply(&self, x: &LatticeVec) -> LatticeVec {
        let m = match x.basis {
            Basis::Weight => &self.weight,
            Basis::Root => &self.root,
        };
        LatticeVec {
            basis: x.basis,
            coords: mat_vec(m, &x.coords),
        }
    }
}

/// All positive roots, by closure of the simple roots under simple
/// reflections, sorted by height then coordinates.
pub fn positive_roots(dt: &CartanDatum) -> Vec<LatticeVec> {
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..dt.n {
        let a = dt.alpha(i);
        seen.insert(a.coords.clone());
        queue.push_back(a);
    }
    while let Some(b) = queue.pop_front() {
        for i in 0..dt.n {
            let r = dt.simple_reflection(i, &b);
            if r.is_positive() && seen.insert(r.coords.clone()) {
                queue.push_back(r);
            }
        }
    }
    let mut out: Vec<LatticeVec> = seen.into_iter().map(LatticeVec::root).collect();
    out.sort_by_key(|r| (r.coords.iter().sum::<i64>(), r.coords.clone()));
    out
}

/// `beta_k = s_{i_1} ... s_{i_{k-1}} alpha_{i_k}` and whether the word is reduced.
pub fn beta_sequence(dt: &CartanDatum, word: &[usize]) -> (Vec<LatticeVec>, bool) {
    let mut prefix = WeylElement::identity(dt.n);
    let mut out = Vec::with_capacity(word.len());
    let mut seen = BTreeSet::new();
    let mut reduced = true;
    for &i in word {
        let b = prefix.apply(&dt.alpha(i));
        if !b.is_positive() || !seen.insert(b.coords.clone()) {
            reduced = false;
        }
        out.push(b);
        prefix = prefix.compose(&WeylElement::simple(dt, i));
    }
    (out, reduced)
}

/// Length of `w` as the number of positive roots sent to negatives.
pub fn length(dt: &CartanDatum, w: &WeylElement) -> usize {
    positive_roots(dt)
        .iter()
        .filter(|b| w.apply(b).is_negative())
        .count()
}

/// A reduced word of `w_0`, built greedily by appending letters that
/// increase the length.
pub fn longest_element_word(dt: &CartanDatum) -> Word {
    let mut word = Vec::new();
    let mut w = WeylElement::identity(dt.n);
    loop {
        // l(w s_i) > l(w) iff w(alpha_i) > 0
        let next = (0..dt.n).find(|&i| w.apply(&dt.alpha(i)).is_positive());
        match next {
            Some(i) => {
                word.push(i);
                w = w.compose(&WeylElement::simple(dt, i));
            }
            None => return word,
        }
    }
}

pub fn longest_element(dt: &CartanDatum) -> WeylElement {
    WeylElement::from_word(dt, &longest_element_word(dt))
}

/// The involution `i -> i*` with `w_0 alpha_i = -alpha_{i*}`.
pub fn star_involution(dt: &CartanDatum) -> Vec<usize> {
    let w0 = longest_element(dt);
    (0..dt.n)
        .map(|i| {
            let v = w0.apply(&dt.alpha(i)).neg();
            v.coords
                .iter()
                .position(|&c| c == 1)
                .expect("w0 maps simple roots to negative simple roots")
        })
        .collect()
}

/// The Hasse quiver of the convex order attached to a reduced word of `w_0`.
///
/// Vertex `k` is `beta_k`; arrows point from later to earlier positions.
#[derive(Debug, Clone, Serialize)]
pub struct HasseQuiver {
    pub vertices: Vec<LatticeVec>,
    pub residues: Vec<usize>,
    /// `(source, target, multiplicity)` as vertex indices.
    pub arrows: Vec<(usize, usize, i64)>,
    #[serde(skip)]
    reach: Vec<Vec<bool>>,
    #[serde(skip)]
    index: HashMap<Vec<i64>, usize>,
}

/// Labeled quiver in canonical form: vertex labels with residues and
/// arrows between labels.
pub type LabeledQuiver = (
    BTreeSet<(Vec<i64>, usize)>,
    BTreeSet<(Vec<i64>, Vec<i64>, i64)>,
);

impl HasseQuiver {
    pub fn new(dt: &CartanDatum, word: &[usize]) -> Result<Self> {
        let (betas, reduced) = beta_sequence(dt, word);
        let nroots = positive_roots(dt).len();
        if !reduced || word.len() != nroots {
            return Err(Error::NotLongestWord);
        }
        let r = word.len();
        let mut arrows = Vec::new();
        for k in 0..r {
            let ik = word[k];
            let prev_same = (0..k).rev().find(|&j| word[j] == ik);
            for j in dt.neighbors(ik) {
                if let Some(l) = (0..k).rev().find(|&m| word[m] == j) {
                    if prev_same.map_or(true, |ps| l > ps) {
                        arrows.push((k, l, -dt.c[ik][j]));
                    }
                }
            }
        }
        // arrows always decrease the index, so a reverse sweep gives reachability
        let mut reach = vec![vec![false; r]; r];
        let mut out_adj = vec![Vec::new(); r];
        for &(s, t, _) in &arrows {
            out_adj[s].push(t);
        }
        for k in 0..r {
            reach[k][k] = true;
            for &t in &out_adj[k] {
                let row_t = reach[t].clone();
                for (x, y) in reach[k].iter_mut().zip(row_t) {
                    *x |= y;
                }
            }
        }
        let index = betas
            .iter()
            .enumerate()
            .map(|(k, b)| (b.coords.clone(), k))
            .collect();
        Ok(HasseQuiver {
            vertices: betas,
            residues: word.to_vec(),
            arrows,
            reach,
            index,
        })
    }

    pub fn position(&self, root: &LatticeVec) -> Option<usize> {
        self.index.get(&root.coords).copied()
    }

    /// `a` precedes or equals `b`: a directed path runs from `b` to `a`.
    pub fn convex_leq(&self, a: &LatticeVec, b: &LatticeVec) -> Result<bool> {
        let ia = self
            .position(a)
            .ok_or_else(|| Error::UnknownRoot(a.coords.clone()))?;
        let ib = self
            .position(b)
            .ok_or_else(|| Error::UnknownRoot(b.coords.clone()))?;
        Ok(self.reach[ib][ia])
    }

    pub fn leq_index(&self, a: usize, b: usize) -> bool {
        self.reach[b][a]
    }

    pub fn residue_of(&self, root: &LatticeVec) -> Option<usize> {
        self.position(root).map(|k| self.residues[k])
    }

    pub fn labeled(&self) -> LabeledQuiver {
        let v = self
            .vertices
            .iter()
            .zip(&self.residues)
            .map(|(b, &i)| (b.coords.clone(), i))
            .collect();
        let a = self
            .arrows
            .iter()
            .map(|&(s, t, m)| {
                (
                    self.vertices[s].coords.clone(),
                    self.vertices[t].coords.clone(),
                    m,
                )
            })
            .collect();
        (v, a)
    }
}

pub fn hasse_quiver(dt: &CartanDatum, word: &[usize]) -> Result<HasseQuiver> {
    HasseQuiver::new(dt, word)
}

/// Commutation-class equality of two reduced words of `w_0`.
pub fn same_commutation_class(dt: &CartanDatum, w1: &[usize], w2: &[usize]) -> Result<bool> {
    Ok(hasse_quiver(dt, w1)?.labeled() == hasse_quiver(dt, w2)?.labeled())
}

/// An element `(beta, k)` of `Phi^+ x Z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PhiHat {
    pub root: LatticeVec,
    pub level: i64,
}

impl PhiHat {
    pub fn new(root: LatticeVec, level: i64) -> Self {
        PhiHat { root, level }
    }
}

fn hat_simple(dt: &CartanDatum, i: usize, x: &PhiHat) -> PhiHat {
    let r = dt.simple_reflection(i, &x.root);
    if r.is_positive() {
        PhiHat::new(r, x.level)
    } else {
        PhiHat::new(r.neg(), x.level - 1)
    }
}

fn hat_simple_inv(dt: &CartanDatum, i: usize, x: &PhiHat) -> PhiHat {
    let r = dt.simple_reflection(i, &x.root);
    if r.is_positive() {
        PhiHat::new(r, x.level)
    } else {
        PhiHat::new(r.neg(), x.level + 1)
    }
}

/// `hat(w)(x)` for `w = s_{w_1} ... s_{w_r}`, letter by letter.
pub fn hat_action(dt: &CartanDatum, word: &[usize], x: &PhiHat) -> PhiHat {
    let root = dt
        .to_root_basis(&x.root)
        .expect("PhiHat roots are root-lattice vectors");
    let mut y = PhiHat::new(root, x.level);
    for &i in word.iter().rev() {
        y = hat_simple(dt, i, &y);
    }
    y
}

/// `hat(w)^{-1}(x)`.
pub fn hat_action_inverse(dt: &CartanDatum, word: &[usize], x: &PhiHat) -> PhiHat {
    let root = dt
        .to_root_basis(&x.root)
        .expect("PhiHat roots are root-lattice vectors");
    let mut y = PhiHat::new(root, x.level);
    for &i in word {
        y = hat_simple_inv(dt, i, &y);
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::build_datum;

    #[test]
    fn counts() {
        for (t, k) in [("A1", 1), ("B3", 9), ("G2", 6), ("F4", 24), ("E8", 120)] {
            let dt = build_datum(t.parse().unwrap());
            assert_eq!(positive_roots(&dt).len(), k, "{t}");
            assert_eq!(longest_element_word(&dt).len(), k, "{t}");
        }
    }

    #[test]
    fn a3_star() {
        let dt = build_datum("A3".parse().unwrap());
        assert_eq!(star_involution(&dt), vec![2, 1, 0]);
    }

    #[test]
    fn a2_hasse() {
        let dt = build_datum("A2".parse().unwrap());
        let h = hasse_quiver(&dt, &[0, 1, 0]).unwrap();
        assert_eq!(h.arrows.len(), 2);
        assert!(!same_commutation_class(&dt, &[0, 1, 0], &[1, 0, 1]).unwrap());
    }
}
