//! Finite Cartan data and exact lattice arithmetic.
//!
//! Nodes are 0-based internally; node `k` is the paper's node `k+1`.
//! Labeling: `B_n` has its short node last, `C_n` its long node last,
//! `F_4` has long nodes {1,2}, `G_2` has long node 2 and the `E` series
//! attaches node 2 to node 4 of the chain 1-3-4-5-...

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let (ok, allowed) = match family {
            Family::A => (rank >= 1, "n >= 1"),
            Family::B => (rank >= 2, "n >= 2"),
            Family::C => (rank >= 2, "n >= 2"),
            Family::D => (rank >= 4, "n >= 4"),
            Family::E => ((6..=8).contains(&rank), "n in {6,7,8}"),
            Family::F => (rank == 4, "n = 4"),
            Family::G => (rank == 2, "n = 2"),
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::InvalidRank {
                family: family.letter(),
                rank,
                allowed,
            })
        }
    }

    /// True for types A, D, E.
    pub fn simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    /// Every valid type of rank at most `max_rank`.
    pub fn all_up_to(max_rank: usize) -> Vec<CartanType> {
        let mut out = Vec::new();
        for fam in [
            Family::A,
            Family::B,
            Family::C,
            Family::D,
            Family::E,
            Family::F,
            Family::G,
        ] {
            for r in 1..=max_rank {
                if let Ok(t) = CartanType::new(fam, r) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::UnknownType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnknownType(s.to_string()))?;
        CartanType::new(fam, rank)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    Weight,
    Root,
}

/// Integer vector in the fundamental-weight basis or the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeVec {
    pub basis: Basis,
    pub coords: Vec<i64>,
}

impl PartialOrd for Basis {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Basis {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (*self as u8).cmp(&(*other as u8))
    }
}

impl LatticeVec {
    pub fn root(coords: Vec<i64>) -> Self {
        LatticeVec {
            basis: Basis::Root,
            coords,
        }
    }

    pub fn weight(coords: Vec<i64>) -> Self {
        LatticeVec {
            basis: Basis::Weight,
            coords,
        }
    }

    pub fn zero(basis: Basis, n: usize) -> Self {
        LatticeVec {
            basis,
            coords: vec![0; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Nonzero with all coordinates nonnegative.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.coords.iter().all(|&c| c >= 0)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.coords.iter().all(|&c| c <= 0)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.basis, other.basis, "basis mismatch");
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        LatticeVec {
            basis: self.basis,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        LatticeVec {
            basis: self.basis,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn scale(&self, k: i64) -> Self {
        LatticeVec {
            basis: self.basis,
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }
}

impl fmt::Display for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.basis {
            Basis::Root => "a",
            Basis::Weight => "w",
        };
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}({})", tag, parts.join(","))
    }
}

pub type Mat = Vec<Vec<i64>>;

pub(crate) fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for l in 0..k {
            let x = a[i][l];
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += x * b[l][j];
            }
        }
    }
    out
}

pub(crate) fn mat_vec(a: &Mat, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub(crate) fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// A finite Cartan datum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanDatum {
    pub ty: CartanType,
    pub n: usize,
    /// `c[i][j] = <h_i, alpha_j>`.
    pub c: Mat,
    /// `d[i] = (alpha_i, alpha_i) / 2`.
    pub d: Vec<i64>,
    /// `bsym[i][j] = (alpha_i, alpha_j)`.
    pub bsym: Mat,
    pub dist: Vec<Vec<usize>>,
    /// Coxeter number.
    pub h: i64,
    det: i64,
    adj: Mat,
}

impl CartanDatum {
    pub fn new(ty: CartanType) -> Self {
        build_datum(ty)
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.dist[i][j] == 1)
    }

    pub fn alpha(&self, i: usize) -> LatticeVec {
        let mut v = vec![0; self.n];
        v[i] = 1;
        LatticeVec::root(v)
    }

    pub fn varpi(&self, i: usize) -> LatticeVec {
        let mut v = vec![0; self.n];
        v[i] = 1;
        LatticeVec::weight(v)
    }

    /// Weight coordinates `<h_i, x>` of a vector given in either basis.
    pub fn to_weight_basis(&self, x: &LatticeVec) -> LatticeVec {
        match x.basis {
            Basis::Weight => x.clone(),
            Basis::Root => LatticeVec::weight(mat_vec(&self.c, &x.coords)),
        }
    }

    /// Exact change of basis to simple-root coordinates.
    pub fn to_root_basis(&self, x: &LatticeVec) -> Result<LatticeVec> {
        if x.dim() != self.n {
            return Err(Error::DimensionMismatch(x.dim(), self.n));
        }
        match x.basis {
            Basis::Root => Ok(x.clone()),
            Basis::Weight => {
                let y = mat_vec(&self.adj, &x.coords);
                let mut out = Vec::with_capacity(self.n);
                for v in y {
                    if v % self.det != 0 {
                        return Err(Error::NotInRootLattice);
                    }
                    out.push(v / self.det);
                }
                Ok(LatticeVec::root(out))
            }
        }
    }

    /// Root coordinates of a weight as exact rationals.
    pub fn to_root_rational(&self, x: &LatticeVec) -> Vec<Ratio<i64>> {
        match x.basis {
            Basis::Root => x.coords.iter().map(|&c| Ratio::from_integer(c)).collect(),
            Basis::Weight => mat_vec(&self.adj, &x.coords)
                .into_iter()
                .map(|v| Ratio::new(v, self.det))
                .collect(),
        }
    }

    /// `C^{-1}` as exact rationals.
    pub fn cartan_inverse(&self) -> Vec<Vec<Ratio<i64>>> {
        self.adj
            .iter()
            .map(|r| r.iter().map(|&x| Ratio::new(x, self.det)).collect())
            .collect()
    }

    /// `(x, y)` as an exact rational.
    pub fn bilinear(&self, x: &LatticeVec, y: &LatticeVec) -> Result<Ratio<i64>> {
        if x.dim() != self.n || y.dim() != self.n {
            return Err(Error::DimensionMismatch(x.dim(), y.dim()));
        }
        let xr = self.to_root_rational(x);
        let yw = self.to_weight_basis_rational(y);
        Ok(xr
            .iter()
            .zip(&yw)
            .zip(&self.d)
            .map(|((a, b), &dk)| a * b * dk)
            .sum())
    }

    fn to_weight_basis_rational(&self, y: &LatticeVec) -> Vec<Ratio<i64>> {
        self.to_weight_basis(y)
            .coords
            .into_iter()
            .map(Ratio::from_integer)
            .collect()
    }

    /// `(x, y)` when the value is an integer, which holds as soon as one
    /// argument lies in the root lattice.
    pub fn pair(&self, x: &LatticeVec, y: &LatticeVec) -> Result<i64> {
        if x.dim() != self.n || y.dim() != self.n {
            return Err(Error::DimensionMismatch(x.dim(), y.dim()));
        }
        let (r, other) = if x.basis == Basis::Root {
            (x.clone(), y)
        } else if y.basis == Basis::Root {
            (y.clone(), x)
        } else if let Ok(r) = self.to_root_basis(x) {
            (r, y)
        } else {
            (self.to_root_basis(y)?, x)
        };
        let w = self.to_weight_basis(other);
        Ok(r
            .coords
            .iter()
            .zip(&w.coords)
            .zip(&self.d)
            .map(|((a, b), dk)| a * b * dk)
            .sum())
    }

    /// `<h_i, x>`.
    pub fn coroot_pairing(&self, i: usize, x: &LatticeVec) -> i64 {
        match x.basis {
            Basis::Weight => x.coords[i],
            Basis::Root => (0..self.n).map(|k| self.c[i][k] * x.coords[k]).sum(),
        }
    }

    /// `s_i x = x - <h_i, x> alpha_i`, computed in the vector's own basis.
    pub fn simple_reflection(&self, i: usize, x: &LatticeVec) -> LatticeVec {
        assert!(i < self.n, "index out of range");
        let k = self.coroot_pairing(i, x);
        let mut out = x.clone();
        match x.basis {
            Basis::Root => out.coords[i] -= k,
            Basis::Weight => {
                for j in 0..self.n {
                    out.coords[j] -= k * self.c[j][i];
                }
            }
        }
        out
    }

    /// Reflection matrix acting on coordinates in the given basis.
    pub fn reflection_matrix(&self, i: usize, basis: Basis) -> Mat {
        let mut m = identity(self.n);
        match basis {
            Basis::Root => {
                for k in 0..self.n {
                    m[i][k] -= self.c[i][k];
                }
            }
            Basis::Weight => {
                for j in 0..self.n {
                    m[j][i] -= self.c[j][i];
                }
            }
        }
        m
    }
}

fn edges(ty: CartanType) -> Vec<(usize, usize)> {
    let n = ty.rank;
    let chain = |m: usize| (0..m.saturating_sub(1)).map(|k| (k, k + 1)).collect::<Vec<_>>();
    match ty.family {
        Family::A | Family::B | Family::C | Family::F | Family::G => chain(n),
        Family::D => {
            let mut e = chain(n - 1);
            e.push((n - 3, n - 1));
            e
        }
        Family::E => {
            // chain 1-3-4-...-n, node 2 attached to node 4
            let mut e = vec![(0, 2), (1, 3)];
            for k in 2..n - 1 {
                e.push((k, k + 1));
            }
            e
        }
    }
}

fn symmetrizer(ty: CartanType) -> Vec<i64> {
    let n = ty.rank;
    match ty.family {
        Family::A | Family::D | Family::E => vec![1; n],
        Family::B => (0..n).map(|k| if k + 1 < n { 2 } else { 1 }).collect(),
        Family::C => (0..n).map(|k| if k + 1 < n { 1 } else { 2 }).collect(),
        Family::F => vec![2, 2, 1, 1],
        Family::G => vec![1, 3],
    }
}

fn coxeter_number(ty: CartanType) -> i64 {
    let n = ty.rank as i64;
    match ty.family {
        Family::A => n + 1,
        Family::B | Family::C => 2 * n,
        Family::D => 2 * n - 2,
        Family::E => match n {
            6 => 12,
            7 => 18,
            _ => 30,
        },
        Family::F => 12,
        Family::G => 6,
    }
}

/// Determinant and adjugate of an integer matrix, by exact rational elimination.
fn det_adj(c: &Mat) -> (i64, Mat) {
    let n = c.len();
    let mut a: Vec<Vec<Ratio<i64>>> = c
        .iter()
        .map(|r| r.iter().map(|&x| Ratio::from_integer(x)).collect())
        .collect();
    let mut inv: Vec<Vec<Ratio<i64>>> = identity(n)
        .into_iter()
        .map(|r| r.into_iter().map(Ratio::from_integer).collect())
        .collect();
    let mut det = Ratio::from_integer(1i64);
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| a[r][col] != Ratio::from_integer(0))
            .expect("Cartan matrix is invertible");
        if piv != col {
            a.swap(piv, col);
            inv.swap(piv, col);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col];
                if f != Ratio::from_integer(0) {
                    for j in 0..n {
                        let (x, y) = (a[col][j], inv[col][j]);
                        a[r][j] -= f * x;
                        inv[r][j] -= f * y;
                    }
                }
            }
        }
    }
    assert!(det.is_integer());
    let d = det.to_integer();
    let adj = inv
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| {
                    let y = x * d;
                    assert!(y.is_integer());
                    y.to_integer()
                })
                .collect()
        })
        .collect();
    (d, adj)
}

/// Build the Cartan datum of a type with the fixed labeling.
pub fn build_datum(ty: CartanType) -> CartanDatum {
    let n = ty.rank;
    let d = symmetrizer(ty);
    let mut c = identity(n);
    for row in c.iter_mut() {
        for x in row.iter_mut() {
            *x *= 2;
        }
    }
    let mut adjacency = vec![Vec::new(); n];
    for (a, b) in edges(ty) {
        adjacency[a].push(b);
        adjacency[b].push(a);
        // c_ij = -max(d_j / d_i, 1)
        c[a][b] = -std::cmp::max(d[b] / d[a], 1);
        c[b][a] = -std::cmp::max(d[a] / d[b], 1);
    }
    let bsym = (0..n)
        .map(|i| (0..n).map(|j| d[i] * c[i][j]).collect())
        .collect();
    let mut dist = vec![vec![usize::MAX; n]; n];
    for (s, row) in dist.iter_mut().enumerate() {
        row[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &w in &adjacency[v] {
                if row[w] == usize::MAX {
                    row[w] = row[v] + 1;
                    q.push_back(w);
                }
            }
        }
    }
    let (det, adj) = det_adj(&c);
    CartanDatum {
        ty,
        n,
        c,
        d,
        bsym,
        dist,
        h: coxeter_number(ty),
        det,
        adj,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b3() -> CartanDatum {
        build_datum("B3".parse().unwrap())
    }

    #[test]
    fn b3_matrix() {
        let dt = b3();
        assert_eq!(dt.c, vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]);
        assert_eq!(dt.d, vec![2, 2, 1]);
    }

    #[test]
    fn g2_bsym() {
        let dt = build_datum("g2".parse().unwrap());
        assert_eq!(dt.d, vec![1, 3]);
        assert_eq!(dt.bsym, vec![vec![2, -3], vec![-3, 6]]);
    }

    #[test]
    fn a1() {
        let dt = build_datum("A1".parse().unwrap());
        assert_eq!(dt.c, vec![vec![2]]);
        assert_eq!(dt.h, 2);
    }

    #[test]
    fn rank_errors() {
        assert!(matches!(
            "D3".parse::<CartanType>(),
            Err(Error::InvalidRank { .. })
        ));
        assert!("E9".parse::<CartanType>().is_err());
        assert!("Z9".parse::<CartanType>().is_err());
    }

    #[test]
    fn b3_pairings() {
        let dt = b3();
        assert_eq!(dt.pair(&dt.alpha(1), &dt.alpha(2)).unwrap(), -2);
        assert_eq!(dt.pair(&dt.varpi(0), &dt.alpha(0)).unwrap(), 2);
        let a12 = dt.alpha(0).add(&dt.alpha(1));
        assert_eq!(dt.pair(&dt.alpha(0), &a12).unwrap(), 2);
    }

    #[test]
    fn b3_reflection() {
        let dt = b3();
        let r = dt.simple_reflection(2, &dt.alpha(1));
        assert_eq!(r.coords, vec![0, 1, 2]);
    }

    #[test]
    fn change_of_basis() {
        let dt = b3();
        let w1 = dt.varpi(0);
        let diff = w1.sub(&dt.simple_reflection(0, &w1));
        assert_eq!(dt.to_root_basis(&diff).unwrap().coords, vec![1, 0, 0]);
        assert!(dt.to_root_basis(&dt.varpi(2)).is_err());
    }
}
