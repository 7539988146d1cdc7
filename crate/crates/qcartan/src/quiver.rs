//! Dynkin quivers given by height functions, the bijection `phi` from the
//! repetition quiver onto `Phi^+ x Z`, and the AR-quiver `Gamma_Q`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::cartan::{CartanDatum, LatticeVec};
use crate::error::{Error, Result};
use crate::weyl::{self, PhiHat, WeylElement, Word};

/// A vertex `(i, p)` of the repetition quiver. Orders by `p`, then `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RepVertex {
    pub p: i64,
    pub i: usize,
}

impl RepVertex {
    pub fn new(i: usize, p: i64) -> Self {
        RepVertex { p, i }
    }
}

impl fmt::Display for RepVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i + 1, self.p)
    }
}

#[derive(Debug, Clone)]
pub struct DynkinQuiver {
    pub datum: CartanDatum,
    pub xi: Vec<i64>,
    pub star: Vec<usize>,
    pub tau: WeylElement,
    coxeter: Word,
    gamma: Vec<LatticeVec>,
    /// `orbit[i][m] = tau^m gamma_i` for `0 <= m < h`.
    orbit: Vec<Vec<LatticeVec>>,
    /// `varpi_orbit[i][m] = tau^m varpi_i` for `0 <= m < h`.
    varpi_orbit: Vec<Vec<LatticeVec>>,
    /// `flips[i][m]` counts sign changes along `orbit[i]` up to `m`, `0 <= m <= h`.
    flips: Vec<Vec<i64>>,
    gamma_q: HashMap<Vec<i64>, RepVertex>,
}

/// Validate a height function.
pub fn check_height(dt: &CartanDatum, xi: &[i64]) -> Result<()> {
    if xi.len() != dt.n {
        return Err(Error::DimensionMismatch(xi.len(), dt.n));
    }
    for i in 0..dt.n {
        for j in dt.neighbors(i) {
            if (xi[i] - xi[j]).abs() != 1 {
                return Err(Error::InvalidHeight(format!(
                    "|xi_{} - xi_{}| != 1",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

fn bfs_order(dt: &CartanDatum) -> Vec<(usize, Option<usize>)> {
    let mut seen = vec![false; dt.n];
    let mut out = Vec::new();
    let mut q = VecDeque::from([(0usize, None)]);
    seen[0] = true;
    while let Some((v, parent)) = q.pop_front() {
        out.push((v, parent));
        for w in dt.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                q.push_back((w, Some(v)));
            }
        }
    }
    out
}

/// Heights from one `+1/-1` choice per edge of the BFS tree from node 1.
pub fn heights_from_signs(dt: &CartanDatum, start: i64, signs: &[i64]) -> Vec<i64> {
    let mut xi = vec![0; dt.n];
    let mut edge = 0;
    for (v, parent) in bfs_order(dt) {
        match parent {
            None => xi[v] = start,
            Some(p) => {
                xi[v] = xi[p] + signs[edge];
                edge += 1;
            }
        }
    }
    xi
}

/// Parse `linear`, `sink-source` or an explicit comma list.
///
/// `linear` decreases by one along every edge away from node 1, which is
/// `n - i + 1` on a chain.
pub fn parse_height(dt: &CartanDatum, spec: &str) -> Result<Vec<i64>> {
    let spec = spec.trim();
    let xi = match spec {
        "linear" => heights_from_signs(dt, dt.n as i64, &vec![-1; dt.n.saturating_sub(1)]),
        "sink-source" => {
            let order = bfs_order(dt);
            let mut depth = vec![0i64; dt.n];
            for (v, parent) in order {
                if let Some(p) = parent {
                    depth[v] = depth[p] + 1;
                }
            }
            depth.iter().map(|d| 1 - d % 2).collect()
        }
        _ => spec
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad height `{}`", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?,
    };
    check_height(dt, &xi)?;
    Ok(xi)
}

/// Every orientation, normalized so that node 1 has height 0.
pub fn all_orientations(dt: &CartanDatum) -> Vec<Vec<i64>> {
    let e = dt.n - 1;
    (0..1u64 << e)
        .map(|mask| {
            let signs: Vec<i64> = (0..e)
                .map(|k| if mask >> k & 1 == 1 { 1 } else { -1 })
                .collect();
            heights_from_signs(dt, 0, &signs)
        })
        .collect()
}

pub fn random_heights<R: Rng>(dt: &CartanDatum, rng: &mut R) -> Vec<i64> {
    let signs: Vec<i64> = (0..dt.n.saturating_sub(1))
        .map(|_| if rng.gen_bool(0.5) { 1 } else { -1 })
        .collect();
    let start = rng.gen_range(-3..=3);
    heights_from_signs(dt, start, &signs)
}

impl DynkinQuiver {
    pub fn new(datum: CartanDatum, xi: Vec<i64>) -> Result<Self> {
        check_height(&datum, &xi)?;
        let n = datum.n;
        let h = datum.h as usize;
        let star = weyl::star_involution(&datum);
        let mut coxeter: Word = (0..n).collect();
        coxeter.sort_by_key(|&i| (-xi[i], i));
        let tau = WeylElement::from_word(&datum, &coxeter);
        let mut gamma = Vec::with_capacity(n);
        let mut varpi_orbit = Vec::with_capacity(n);
        for i in 0..n {
            let mut orb = Vec::with_capacity(h);
            let mut v = datum.varpi(i);
            for _ in 0..h {
                orb.push(v.clone());
                v = tau.apply(&v);
            }
            let g = datum
                .to_root_basis(&orb[0].sub(&orb[1 % h]))
                .expect("(1 - tau) varpi is in the root lattice");
            gamma.push(g);
            varpi_orbit.push(orb);
        }
        let mut orbit = Vec::with_capacity(n);
        let mut flips = Vec::with_capacity(n);
        for g in &gamma {
            let mut orb = Vec::with_capacity(h);
            let mut v = g.clone();
            for _ in 0..h {
                orb.push(v.clone());
                v = tau.apply(&v);
            }
            let mut f = vec![0i64; h + 1];
            for m in 0..h {
                let a = orb[m].is_positive();
                let b = orb[(m + 1) % h].is_positive();
                f[m + 1] = f[m] + i64::from(a != b);
            }
            orbit.push(orb);
            flips.push(f);
        }
        let mut q = DynkinQuiver {
            datum,
            xi,
            star,
            tau,
            coxeter,
            gamma,
            orbit,
            varpi_orbit,
            flips,
            gamma_q: HashMap::new(),
        };
        let mut gq = HashMap::new();
        for v in q.gamma_q_vertices() {
            let x = q.phi_unchecked(v.i, v.p);
            debug_assert_eq!(x.level, 0);
            gq.insert(x.root.coords, v);
        }
        q.gamma_q = gq;
        Ok(q)
    }

    pub fn from_spec(datum: CartanDatum, spec: &str) -> Result<Self> {
        let xi = parse_height(&datum, spec)?;
        DynkinQuiver::new(datum, xi)
    }

    pub fn n(&self) -> usize {
        self.datum.n
    }

    pub fn h(&self) -> i64 {
        self.datum.h
    }

    pub fn is_source(&self, i: usize) -> bool {
        self.datum.neighbors(i).all(|j| self.xi[i] > self.xi[j])
    }

    pub fn is_sink(&self, i: usize) -> bool {
        self.datum.neighbors(i).all(|j| self.xi[i] < self.xi[j])
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.is_source(i)).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.is_sink(i)).collect()
    }

    /// `s_i Q` for a source `i`.
    pub fn reflect(&self, i: usize) -> Result<DynkinQuiver> {
        if i >= self.n() {
            return Err(Error::IndexOutOfRange(i + 1, self.n()));
        }
        if !self.is_source(i) {
            return Err(Error::NotSource(i + 1));
        }
        let mut xi = self.xi.clone();
        xi[i] -= 2;
        DynkinQuiver::new(self.datum.clone(), xi)
    }

    /// Vertices sorted by decreasing height, ties by index.
    pub fn coxeter_word(&self) -> Word {
        self.coxeter.clone()
    }

    pub fn gamma(&self, i: usize) -> LatticeVec {
        self.gamma[i].clone()
    }

    /// `tau^m gamma_i` for any integer `m`.
    pub fn tau_gamma(&self, i: usize, m: i64) -> &LatticeVec {
        &self.orbit[i][m.rem_euclid(self.h()) as usize]
    }

    /// `tau^m varpi_i` for any integer `m`.
    pub fn tau_varpi(&self, i: usize, m: i64) -> &LatticeVec {
        &self.varpi_orbit[i][m.rem_euclid(self.h()) as usize]
    }

    fn flip_count(&self, i: usize, e: i64) -> i64 {
        let h = self.h();
        e.div_euclid(h) * self.flips[i][h as usize] + self.flips[i][e.rem_euclid(h) as usize]
    }

    pub fn check_parity(&self, i: usize, p: i64) -> Result<()> {
        if i >= self.n() {
            return Err(Error::IndexOutOfRange(i + 1, self.n()));
        }
        if (self.xi[i] - p).rem_euclid(2) != 0 {
            return Err(Error::Parity { i: i + 1, p });
        }
        Ok(())
    }

    pub fn valid(&self, i: usize, p: i64) -> bool {
        (self.xi[i] - p).rem_euclid(2) == 0
    }

    fn phi_unchecked(&self, i: usize, p: i64) -> PhiHat {
        let e = (self.xi[i] - p) / 2;
        let v = self.tau_gamma(i, e);
        let root = if v.is_positive() { v.clone() } else { v.neg() };
        PhiHat::new(root, -self.flip_count(i, e))
    }

    /// `phi_Q(i, p)`.
    pub fn phi(&self, i: usize, p: i64) -> Result<PhiHat> {
        self.check_parity(i, p)?;
        Ok(self.phi_unchecked(i, p))
    }

    /// Signed root `(-1)^k beta` for `phi_Q(i,p) = (beta, k)`.
    pub fn signed_root(&self, i: usize, p: i64) -> LatticeVec {
        self.tau_gamma(i, (self.xi[i] - p) / 2).clone()
    }

    pub fn phi_inverse(&self, x: &PhiHat) -> Result<RepVertex> {
        let root = self.datum.to_root_basis(&x.root)?;
        let v = self
            .gamma_q
            .get(&root.coords)
            .ok_or_else(|| Error::UnknownRoot(root.coords.clone()))?;
        let i = if x.level.rem_euclid(2) == 0 {
            v.i
        } else {
            self.star[v.i]
        };
        Ok(RepVertex::new(i, v.p + x.level * self.h()))
    }

    pub fn in_gamma_q(&self, i: usize, p: i64) -> bool {
        self.valid(i, p) && self.xi[self.star[i]] - self.h() < p && p <= self.xi[i]
    }

    /// Vertices of `Gamma_Q`, sorted by `(p, i)`.
    pub fn gamma_q_vertices(&self) -> Vec<RepVertex> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            let lo = self.xi[self.star[i]] - self.h();
            let mut p = self.xi[i];
            while p > lo {
                out.push(RepVertex::new(i, p));
                p -= 2;
            }
        }
        out.sort();
        out
    }

    pub fn ar_quiver(&self) -> ArQuiver {
        let verts = self.gamma_q_vertices();
        let vertices: Vec<(RepVertex, LatticeVec)> = verts
            .iter()
            .map(|v| (*v, self.phi_unchecked(v.i, v.p).root))
            .collect();
        let mut arrows = Vec::new();
        for v in &verts {
            for j in self.datum.neighbors(v.i) {
                if self.in_gamma_q(j, v.p + 1) {
                    arrows.push((*v, RepVertex::new(j, v.p + 1), -self.datum.c[v.i][j]));
                }
            }
        }
        arrows.sort();
        ArQuiver { vertices, arrows }
    }

    /// The reading of `Gamma_Q` by descending `p`, then ascending `i`.
    pub fn compatible_reading(&self) -> Vec<RepVertex> {
        let mut v = self.gamma_q_vertices();
        v.sort_by_key(|x| (-x.p, x.i));
        v
    }

    /// The `Q`-adapted reduced word of `w_0` read off the compatible reading.
    pub fn longest_word(&self) -> Word {
        self.compatible_reading().iter().map(|v| v.i).collect()
    }

    /// Index of the first letter that is not a source of the reflected quiver.
    pub fn first_non_adapted(&self, w: &[usize]) -> Option<usize> {
        let mut xi = self.xi.clone();
        for (k, &i) in w.iter().enumerate() {
            if i >= self.n() || !self.datum.neighbors(i).all(|j| xi[i] > xi[j]) {
                return Some(k);
            }
            xi[i] -= 2;
        }
        None
    }

    pub fn is_adapted(&self, w: &[usize]) -> bool {
        self.first_non_adapted(w).is_none()
    }

    /// Positions `p_k = xi_{i_k} - 2 #{j < k : i_j = i_k}`.
    pub fn adapted_positions(&self, w: &[usize]) -> Result<Vec<RepVertex>> {
        if let Some(k) = self.first_non_adapted(w) {
            return Err(Error::NotAdapted(k + 1));
        }
        let mut count = vec![0i64; self.n()];
        Ok(w.iter()
            .map(|&i| {
                let p = self.xi[i] - 2 * count[i];
                count[i] += 1;
                RepVertex::new(i, p)
            })
            .collect())
    }

    /// A random `Q`-adapted sequence: repeatedly pick a source.
    pub fn random_adapted<R: Rng>(&self, len: usize, rng: &mut R) -> Word {
        let mut xi = self.xi.clone();
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            let src: Vec<usize> = (0..self.n())
                .filter(|&i| self.datum.neighbors(i).all(|j| xi[i] > xi[j]))
                .collect();
            let i = src[rng.gen_range(0..src.len())];
            xi[i] -= 2;
            out.push(i);
        }
        out
    }

    /// First `(i, l)` where the additive identity fails, if any.
    pub fn check_additive(&self) -> Option<(usize, i64)> {
        let dt = &self.datum;
        for i in 0..self.n() {
            for l in 0..=self.h() {
                let lhs = self.tau_gamma(i, l).add(self.tau_gamma(i, l + 1));
                let mut rhs = LatticeVec::zero(lhs.basis, self.n());
                for j in dt.neighbors(i) {
                    let m = l + (self.xi[j] - self.xi[i] + 1) / 2;
                    rhs = rhs.add(&self.tau_gamma(j, m).scale(-dt.c[j][i]));
                }
                if lhs != rhs {
                    return Some((i, l));
                }
            }
        }
        None
    }
}

/// The AR-quiver `Gamma_Q`.
#[derive(Debug, Clone, Serialize)]
pub struct ArQuiver {
    pub vertices: Vec<(RepVertex, LatticeVec)>,
    pub arrows: Vec<(RepVertex, RepVertex, i64)>,
}

impl ArQuiver {
    pub fn label(&self, v: RepVertex) -> Option<&LatticeVec> {
        self.vertices.iter().find(|(w, _)| *w == v).map(|(_, r)| r)
    }

    /// Same canonical form as [`weyl::HasseQuiver::labeled`].
    pub fn labeled(&self) -> weyl::LabeledQuiver {
        let lab: BTreeMap<RepVertex, &LatticeVec> =
            self.vertices.iter().map(|(v, r)| (*v, r)).collect();
        let v: BTreeSet<_> = self
            .vertices
            .iter()
            .map(|(v, r)| (r.coords.clone(), v.i))
            .collect();
        let a: BTreeSet<_> = self
            .arrows
            .iter()
            .map(|(s, t, m)| (lab[s].coords.clone(), lab[t].coords.clone(), *m))
            .collect();
        (v, a)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph ar {\n  rankdir=LR;\n");
        for (v, r) in &self.vertices {
            let coords: Vec<String> = r.coords.iter().map(|c| c.to_string()).collect();
            s.push_str(&format!(
                "  \"{}_{}\" [label=\"{}: {}\"];\n",
                v.i + 1,
                v.p,
                v,
                coords.join(",")
            ));
        }
        for (a, b, m) in &self.arrows {
            let attr = if *m > 1 {
                format!(" [label=\"{m}\"]")
            } else {
                String::new()
            };
            s.push_str(&format!(
                "  \"{}_{}\" -> \"{}_{}\"{};\n",
                a.i + 1,
                a.p,
                b.i + 1,
                b.p,
                attr
            ));
        }
        s.push_str("}\n");
        s
    }
}

/// Number of distinct commutation classes over all orientations.
///
/// Fails if two different orientations share a class, which would
/// contradict that equal classes force a constant height shift.
pub fn class_census(dt: &CartanDatum) -> Result<usize> {
    if dt.n > 6 {
        return Err(Error::Unsupported(format!(
            "census needs rank <= 6, got {}",
            dt.n
        )));
    }
    let mut seen: HashMap<weyl::LabeledQuiver, Vec<i64>> = HashMap::new();
    for xi in all_orientations(dt) {
        let q = DynkinQuiver::new(dt.clone(), xi.clone())?;
        let hq = weyl::hasse_quiver(dt, &q.longest_word())?;
        if let Some(prev) = seen.insert(hq.labeled(), xi.clone()) {
            let shift = xi[0] - prev[0];
            if xi.iter().zip(&prev).any(|(a, b)| a - b != shift) {
                return Err(Error::Precondition(format!(
                    "heights {prev:?} and {xi:?} share a class"
                )));
            }
        }
    }
    Ok(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::build_datum;

    fn b3() -> DynkinQuiver {
        DynkinQuiver::new(build_datum("B3".parse().unwrap()), vec![3, 2, 1]).unwrap()
    }

    #[test]
    fn b3_gamma() {
        let q = b3();
        assert_eq!(q.gamma(0).coords, vec![1, 0, 0]);
        assert_eq!(q.gamma(1).coords, vec![1, 1, 0]);
        assert_eq!(q.gamma(2).coords, vec![1, 1, 1]);
        assert_eq!(q.coxeter_word(), vec![0, 1, 2]);
    }

    #[test]
    fn b3_reading() {
        let q = b3();
        let w = q.longest_word();
        assert_eq!(w, vec![0, 1, 0, 2, 1, 0, 2, 1, 2]);
        let target = [0, 1, 2, 0, 1, 2, 0, 1, 2];
        assert!(weyl::same_commutation_class(&q.datum, &w, &target).unwrap());
    }

    #[test]
    fn linear_heights() {
        let dt = build_datum("A4".parse().unwrap());
        assert_eq!(parse_height(&dt, "linear").unwrap(), vec![4, 3, 2, 1]);
        assert_eq!(parse_height(&dt, "sink-source").unwrap(), vec![1, 0, 1, 0]);
        assert!(parse_height(&dt, "1,1,1,1").is_err());
    }
}
