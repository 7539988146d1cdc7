//! Compatible pairs `(Lambda, B)` attached to index sequences, their
//! forms on `Gamma`-coordinates, and the matrix `Lambda^{[Q]}` on positive
//! roots.
//!
//! Positions are 0-based; the successor of the last occurrence of a
//! letter is the sentinel `r`.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::cartan::{CartanDatum, LatticeVec, Mat};
use crate::error::{Error, Result};
use crate::quiver::{DynkinQuiver, RepVertex};
use crate::torus::Torus;
use crate::weyl::{self, WeylElement, Word};

/// Successor and predecessor maps of a finite index sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceIndex {
    pub word: Word,
    /// Next position with the same letter, or `r`.
    pub kplus: Vec<usize>,
    /// Previous position with the same letter.
    pub kminus: Vec<Option<usize>>,
    pub jf: Vec<usize>,
    pub je: Vec<usize>,
}

impl SequenceIndex {
    pub fn new(word: &[usize]) -> Self {
        let r = word.len();
        let mut kplus = vec![r; r];
        let mut kminus = vec![None; r];
        let mut last: BTreeMap<usize, usize> = BTreeMap::new();
        for (k, &i) in word.iter().enumerate() {
            if let Some(&j) = last.get(&i) {
                kplus[j] = k;
                kminus[k] = Some(j);
            }
            last.insert(i, k);
        }
        let (je, jf) = (0..r).partition(|&k| kplus[k] < r);
        SequenceIndex {
            word: word.to_vec(),
            kplus,
            kminus,
            jf,
            je,
        }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

/// `(Lambda, B)` for a sequence, with `B` restricted to the columns `J_e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairMatrices {
    pub index: SequenceIndex,
    pub lambda: Mat,
    /// `r x |J_e|`; column `c` belongs to position `index.je[c]`.
    pub b: Mat,
    /// `d_{i_t}` for `t` in `J_e`.
    pub d_col: Vec<i64>,
}

fn check_letters(dt: &CartanDatum, w: &[usize]) -> Result<()> {
    match w.iter().find(|&&i| i >= dt.n) {
        Some(&i) => Err(Error::IndexOutOfRange(i + 1, dt.n)),
        None => Ok(()),
    }
}

/// Entry `b_{s,t}` of the exchange matrix (five-case rule).
pub fn exchange_entry(dt: &CartanDatum, idx: &SequenceIndex, s: usize, t: usize) -> i64 {
    let (sp, tp) = (idx.kplus[s], idx.kplus[t]);
    let c = dt.c[idx.word[s]][idx.word[t]];
    if t == sp {
        1
    } else if s == tp {
        -1
    } else if s < t && t < sp && sp < tp {
        c
    } else if t < s && s < tp && tp < sp {
        -c
    } else {
        0
    }
}

/// The `J x J_e` exchange matrix.
pub fn exchange_matrix(dt: &CartanDatum, w: &[usize]) -> Result<(SequenceIndex, Mat)> {
    check_letters(dt, w)?;
    let idx = SequenceIndex::new(w);
    let b = (0..w.len())
        .map(|s| idx.je.iter().map(|&t| exchange_entry(dt, &idx, s, t)).collect())
        .collect();
    Ok((idx, b))
}

/// `w_{<=k} varpi_{i_k}` for every position `k`.
pub fn prefix_weights(dt: &CartanDatum, w: &[usize]) -> Vec<LatticeVec> {
    let mut prefix = WeylElement::identity(dt.n);
    w.iter()
        .map(|&i| {
            prefix = prefix.compose(&WeylElement::simple(dt, i));
            prefix.apply(&dt.varpi(i))
        })
        .collect()
}

/// `Lambda_{s,t} = (varpi_{i_s} - w_{<=s} varpi_{i_s}, varpi_{i_t} + w_{<=t} varpi_{i_t})`
/// for `s < t`, extended skew-symmetrically.
pub fn lambda_matrix(dt: &CartanDatum, w: &[usize]) -> Result<Mat> {
    check_letters(dt, w)?;
    let lam = prefix_weights(dt, w);
    let r = w.len();
    let mut m = vec![vec![0i64; r]; r];
    for s in 0..r {
        let x = dt.varpi(w[s]).sub(&lam[s]);
        for t in s + 1..r {
            let y = dt.varpi(w[t]).add(&lam[t]);
            let v = dt.pair(&x, &y)?;
            m[s][t] = v;
            m[t][s] = -v;
        }
    }
    Ok(m)
}

pub fn pair_matrices(dt: &CartanDatum, w: &[usize]) -> Result<PairMatrices> {
    let lambda = lambda_matrix(dt, w)?;
    let (index, b) = exchange_matrix(dt, w)?;
    let d_col = index.je.iter().map(|&t| dt.d[w[t]]).collect();
    Ok(PairMatrices {
        index,
        lambda,
        b,
        d_col,
    })
}

impl PairMatrices {
    /// `Lambda B`, an `r x |J_e|` matrix.
    pub fn product(&self) -> Mat {
        let r = self.lambda.len();
        let cols = self.index.je.len();
        (0..r)
            .map(|s| {
                (0..cols)
                    .map(|c| (0..r).map(|g| self.lambda[s][g] * self.b[g][c]).sum())
                    .collect()
            })
            .collect()
    }

    /// `(Lambda B)_{t,t}` for `t` in `J_e`.
    pub fn product_diag(&self) -> Vec<i64> {
        let p = self.product();
        self.index
            .je
            .iter()
            .enumerate()
            .map(|(c, &t)| p[t][c])
            .collect()
    }

    /// First `(s, t)` with `(Lambda B)_{s,t} != -2 d_{i_t} delta(s = t)`.
    pub fn compatibility_defect(&self) -> Option<(usize, usize, i64)> {
        let p = self.product();
        for (s, row) in p.iter().enumerate() {
            for (c, &t) in self.index.je.iter().enumerate() {
                let want = if s == t { -2 * self.d_col[c] } else { 0 };
                if row[c] != want {
                    return Some((s, t, row[c]));
                }
            }
        }
        None
    }

    pub fn check_compatible(&self) -> bool {
        self.compatibility_defect().is_none()
    }

    /// `sum_g b_{g,a} Lambda_{g,b} = 2 d_{i_a} delta(a = b)` for `a` in `J_e`.
    pub fn check_transposed(&self) -> bool {
        let r = self.lambda.len();
        self.index.je.iter().enumerate().all(|(c, &a)| {
            (0..r).all(|bb| {
                let v: i64 = (0..r).map(|g| self.b[g][c] * self.lambda[g][bb]).sum();
                v == if a == bb { 2 * self.d_col[c] } else { 0 }
            })
        })
    }

    /// `d_s b_{s,t} = -d_t b_{t,s}` on `J_e x J_e`.
    pub fn check_skew_symmetrizable(&self) -> bool {
        let je = &self.index.je;
        let col: BTreeMap<usize, usize> = je.iter().enumerate().map(|(c, &t)| (t, c)).collect();
        je.iter().enumerate().all(|(cs, &s)| {
            je.iter().enumerate().all(|(ct, &t)| {
                self.d_col[cs] * self.b[s][col[&t]] == -self.d_col[ct] * self.b[t][col[&s]]
            })
        })
    }

    pub fn is_skew(&self) -> bool {
        let r = self.lambda.len();
        (0..r).all(|s| (0..r).all(|t| self.lambda[s][t] == -self.lambda[t][s]))
    }
}

/// `Lambda'` and `B'` on `Gamma^{[w]}_0`, in the order of the sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaForms {
    /// `eta^{-1}(k)` for each position `k`.
    pub vertices: Vec<RepVertex>,
    pub lambda: Mat,
    /// Columns follow `(Gamma_0)_e` in sequence order.
    pub b: Mat,
}

fn gamma_b_entry(dt: &CartanDatum, a: RepVertex, c: RepVertex) -> i64 {
    let sign = if c.p > a.p { -1 } else { 1 };
    match (a.p - c.p).abs() {
        1 if dt.dist[a.i][c.i] == 1 => sign * dt.c[a.i][c.i],
        2 if a.i == c.i => sign,
        _ => 0,
    }
}

/// The forms of `Lambda` and `B` written in `Gamma`-coordinates for a
/// `Q`-adapted sequence.
pub fn gamma_forms(q: &DynkinQuiver, torus: &Torus, w: &[usize]) -> Result<GammaForms> {
    let vertices = q.adapted_positions(w)?;
    let idx = SequenceIndex::new(w);
    let monos: Vec<_> = vertices
        .iter()
        .map(|v| torus.interval_monomial(v.i, v.p, q.xi[v.i]))
        .collect::<Result<_>>()?;
    let lambda = monos
        .iter()
        .map(|a| {
            monos
                .iter()
                .map(|b| torus.n_monomials(&a.exps, &b.exps))
                .collect()
        })
        .collect();
    let b = vertices
        .iter()
        .map(|&a| {
            idx.je
                .iter()
                .map(|&t| gamma_b_entry(&q.datum, a, vertices[t]))
                .collect()
        })
        .collect();
    Ok(GammaForms {
        vertices,
        lambda,
        b,
    })
}

/// `Lambda^{[Q]}` on positive roots, listed in the compatible reading order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LambdaQ {
    pub vertices: Vec<RepVertex>,
    pub roots: Vec<LatticeVec>,
    pub residues: Vec<usize>,
    /// `lambda_alpha = tau^{(xi_i - p)/2 + 1} varpi_i`.
    pub lambda: Vec<LatticeVec>,
    pub matrix: Mat,
}

impl LambdaQ {
    pub fn position(&self, root: &LatticeVec) -> Option<usize> {
        self.roots.iter().position(|r| r.coords == root.coords)
    }
}

pub fn lambda_q(q: &DynkinQuiver) -> Result<LambdaQ> {
    let dt = &q.datum;
    let vertices = q.compatible_reading();
    let word: Word = vertices.iter().map(|v| v.i).collect();
    let hasse = weyl::hasse_quiver(dt, &word)?;
    let roots: Vec<LatticeVec> = vertices
        .iter()
        .map(|v| q.phi(v.i, v.p).map(|x| x.root))
        .collect::<Result<_>>()?;
    let lambda: Vec<LatticeVec> = vertices
        .iter()
        .map(|v| q.tau_varpi(v.i, (q.xi[v.i] - v.p) / 2 + 1).clone())
        .collect();
    let r = vertices.len();
    let entry = |a: usize, b: usize| -> Result<i64> {
        let (i, j) = (vertices[a].i, vertices[b].i);
        dt.pair(&dt.varpi(i).sub(&lambda[a]), &dt.varpi(j).add(&lambda[b]))
    };
    let mut matrix = vec![vec![0i64; r]; r];
    for a in 0..r {
        for b in 0..r {
            // the formula applies when beta is not below alpha
            matrix[a][b] = if a == b {
                0
            } else if !hasse.leq_index(b, a) {
                entry(a, b)?
            } else {
                -entry(b, a)?
            };
        }
    }
    Ok(LambdaQ {
        residues: word,
        vertices,
        roots,
        lambda,
        matrix,
    })
}

/// First pair of `Gamma_Q` where `N(m^i[p,xi_i], m^j[s,xi_j]) != Lambda^{[Q]}`.
pub fn torus_iso_defect(q: &DynkinQuiver, torus: &Torus) -> Result<Option<(RepVertex, RepVertex)>> {
    let lq = lambda_q(q)?;
    let monos: Vec<_> = lq
        .vertices
        .iter()
        .map(|v| torus.interval_monomial(v.i, v.p, q.xi[v.i]))
        .collect::<Result<_>>()?;
    for a in 0..monos.len() {
        for b in 0..monos.len() {
            if torus.n_monomials(&monos[a].exps, &monos[b].exps) != lq.matrix[a][b] {
                return Ok(Some((lq.vertices[a], lq.vertices[b])));
            }
        }
    }
    Ok(None)
}

pub fn check_torus_iso(q: &DynkinQuiver, torus: &Torus) -> Result<bool> {
    Ok(torus_iso_defect(q, torus)?.is_none())
}

/// Whether every window of at most `l(w_0)` consecutive letters is reduced.
pub fn satisfies_window_condition(dt: &CartanDatum, w: &[usize]) -> bool {
    let l = weyl::longest_element_word(dt).len();
    (0..w.len()).all(|b| {
        let a = (b + 1).saturating_sub(l);
        weyl::beta_sequence(dt, &w[a..=b]).1
    })
}

/// A random sequence of length `len` satisfying the window condition.
pub fn random_window_sequence<R: Rng>(dt: &CartanDatum, len: usize, rng: &mut R) -> Word {
    let l = weyl::longest_element_word(dt).len();
    let mut w: Word = Vec::with_capacity(len);
    while w.len() < len {
        let a = (w.len() + 1).saturating_sub(l);
        let ok: Vec<usize> = (0..dt.n)
            .filter(|&i| {
                let mut tail = w[a..].to_vec();
                tail.push(i);
                weyl::beta_sequence(dt, &tail).1
            })
            .collect();
        // the window is a reduced word of length < l(w_0) or the last l - 1
        // letters of one, so some letter always extends it
        w.push(ok[rng.gen_range(0..ok.len())]);
    }
    w
}

/// Run the compatibility check on sequences satisfying the window
/// condition. The identity is proved only for adapted sequences; this
/// reports every sequence where it fails.
pub fn conjecture_counterexamples(dt: &CartanDatum, words: &[Word]) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    for w in words {
        if !satisfies_window_condition(dt, w) {
            return Err(Error::Precondition(format!(
                "{} violates the window condition",
                weyl::format_word(w)
            )));
        }
        if !pair_matrices(dt, w)?.check_compatible() {
            out.push(w.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::build_datum;

    #[test]
    fn b3_small() {
        let dt = build_datum("B3".parse().unwrap());
        let w = [0, 1, 2, 0];
        let pm = pair_matrices(&dt, &w).unwrap();
        assert_eq!(pm.index.je, vec![0]);
        assert_eq!(pm.b, vec![vec![0], vec![1], vec![0], vec![-1]]);
        let l = &pm.lambda;
        assert_eq!(
            [l[0][1], l[0][2], l[0][3], l[1][2], l[1][3], l[2][3]],
            [-2, -2, 2, -2, 0, 2]
        );
        assert_eq!(pm.product_diag(), vec![-4]);
        assert!(pm.check_compatible());
    }
}
