//! The quantum torus attached to the t-quantized Cartan matrix.
//!
//! Monomials are stored in normal order (ascending `(p, i)`) together with
//! a power of `q^{1/2}` kept as a doubled integer.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::cartan::LatticeVec;
use crate::error::{Error, Result};
use crate::quiver::{DynkinQuiver, RepVertex};
use crate::tcartan::{inverse_via_eta, TildeBTable};

pub type Exps = BTreeMap<RepVertex, i64>;

/// `q^{qpow2/2} X^{exps}` with the variables in normal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TorusMonomial {
    pub qpow2: i64,
    pub exps: Exps,
}

impl TorusMonomial {
    pub fn one() -> Self {
        TorusMonomial {
            qpow2: 0,
            exps: Exps::new(),
        }
    }

    pub fn var(i: usize, p: i64) -> Self {
        Self::from_exps([(RepVertex::new(i, p), 1)])
    }

    pub fn from_exps(it: impl IntoIterator<Item = (RepVertex, i64)>) -> Self {
        let mut exps = Exps::new();
        for (v, e) in it {
            *exps.entry(v).or_insert(0) += e;
        }
        exps.retain(|_, e| *e != 0);
        TorusMonomial { qpow2: 0, exps }
    }

    pub fn with_qpow2(mut self, qpow2: i64) -> Self {
        self.qpow2 = qpow2;
        self
    }

    pub fn exponent(&self, i: usize, p: i64) -> i64 {
        self.exps.get(&RepVertex::new(i, p)).copied().unwrap_or(0)
    }
}

impl fmt::Display for TorusMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.qpow2 != 0 {
            parts.push(fmt_qpow(self.qpow2));
        }
        for (v, e) in &self.exps {
            if *e == 1 {
                parts.push(format!("X[{},{}]", v.i + 1, v.p));
            } else {
                parts.push(format!("X[{},{}]^{}", v.i + 1, v.p, e));
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

fn fmt_qpow(qpow2: i64) -> String {
    if qpow2 % 2 == 0 {
        format!("q^{}", qpow2 / 2)
    } else {
        format!("q^({}/2)", qpow2)
    }
}

/// A finite integer combination of torus monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct TorusElement {
    terms: BTreeMap<(Exps, i64), i64>,
}

impl TorusElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_monomial(m: TorusMonomial) -> Self {
        let mut e = Self::zero();
        e.add_monomial(1, m);
        e
    }

    pub fn add_monomial(&mut self, c: i64, m: TorusMonomial) {
        if c == 0 {
            return;
        }
        let key = (m.exps, m.qpow2);
        let slot = self.terms.entry(key.clone()).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut e = self.clone();
        for ((x, q), c) in &o.terms {
            e.add_monomial(
                *c,
                TorusMonomial {
                    qpow2: *q,
                    exps: x.clone(),
                },
            );
        }
        e
    }

    /// `(coefficient, monomial)` pairs in canonical order.
    pub fn terms(&self) -> Vec<(i64, TorusMonomial)> {
        self.terms
            .iter()
            .map(|((x, q), c)| {
                (
                    *c,
                    TorusMonomial {
                        qpow2: *q,
                        exps: x.clone(),
                    },
                )
            })
            .collect()
    }

    /// Distinct exponent maps occurring in the element.
    pub fn supports(&self) -> Vec<Exps> {
        let mut v: Vec<Exps> = self.terms.keys().map(|(x, _)| x.clone()).collect();
        v.dedup();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .into_iter()
            .map(|(c, m)| match c {
                1 => m.to_string(),
                _ => format!("{}*{}", c, m),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The torus: the `N`-form from a table, plus the parity class of `xi`.
#[derive(Debug, Clone)]
pub struct Torus {
    pub table: TildeBTable,
    pub xi_parity: Vec<i64>,
}

impl Torus {
    pub fn new(table: TildeBTable, xi: &[i64]) -> Self {
        Torus {
            table,
            xi_parity: xi.iter().map(|x| x.rem_euclid(2)).collect(),
        }
    }

    pub fn for_quiver(q: &DynkinQuiver) -> Self {
        Torus::new(inverse_via_eta(q), &q.xi)
    }

    pub fn valid(&self, v: RepVertex) -> bool {
        v.i < self.table.n && (v.p - self.xi_parity[v.i]).rem_euclid(2) == 0
    }

    fn check(&self, v: RepVertex) -> Result<()> {
        if v.i >= self.table.n {
            return Err(Error::IndexOutOfRange(v.i + 1, self.table.n));
        }
        if !self.valid(v) {
            return Err(Error::Parity { i: v.i + 1, p: v.p });
        }
        Ok(())
    }

    fn n_raw(&self, a: RepVertex, b: RepVertex) -> i64 {
        let t = &self.table;
        let u = a.p - b.p;
        t.teta(a.i, b.i, u - 1) - t.teta(a.i, b.i, u + 1)
    }

    /// `N(i,p; j,s)` with `X_a X_b = q^N X_b X_a`.
    pub fn n_pairing(&self, a: RepVertex, b: RepVertex) -> Result<i64> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.n_raw(a, b))
    }

    /// Bilinear extension of `N` to exponent maps.
    pub fn n_monomials(&self, m1: &Exps, m2: &Exps) -> i64 {
        let mut s = 0;
        for (a, x) in m1 {
            for (b, y) in m2 {
                s += x * y * self.n_raw(*a, *b);
            }
        }
        s
    }

    pub fn multiply_monomials(&self, m1: &TorusMonomial, m2: &TorusMonomial) -> TorusMonomial {
        // move every variable of m2 left past the larger variables of m1
        let mut qpow2 = m1.qpow2 + m2.qpow2;
        for (a, x) in &m1.exps {
            for (b, y) in m2.exps.range(..*a) {
                qpow2 += 2 * x * y * self.n_raw(*a, *b);
            }
        }
        let mut exps = m1.exps.clone();
        for (v, e) in &m2.exps {
            *exps.entry(*v).or_insert(0) += e;
        }
        exps.retain(|_, e| *e != 0);
        TorusMonomial { qpow2, exps }
    }

    pub fn multiply(&self, e1: &TorusElement, e2: &TorusElement) -> TorusElement {
        let mut out = TorusElement::zero();
        for (c1, m1) in e1.terms() {
            for (c2, m2) in e2.terms() {
                out.add_monomial(c1 * c2, self.multiply_monomials(&m1, &m2));
            }
        }
        out
    }

    /// `sum_{a<b} u_a u_b N(a,b)` over the normal order.
    fn ordered_self_pairing(&self, exps: &Exps) -> i64 {
        let mut s = 0;
        for (b, y) in exps {
            for (a, x) in exps.range(..*b) {
                s += x * y * self.n_raw(*a, *b);
            }
        }
        s
    }

    fn weight_d(&self, exps: &Exps) -> i64 {
        exps.iter().map(|(v, e)| self.table.d[v.i] * e).sum()
    }

    pub fn bar_monomial(&self, m: &TorusMonomial) -> TorusMonomial {
        TorusMonomial {
            qpow2: -m.qpow2 + 2 * self.weight_d(&m.exps) - 2 * self.ordered_self_pairing(&m.exps),
            exps: m.exps.clone(),
        }
    }

    /// The anti-involution with `q^{1/2} -> q^{-1/2}` and `X_{i,p} -> q^{d_i} X_{i,p}`.
    pub fn bar(&self, e: &TorusElement) -> TorusElement {
        let mut out = TorusElement::zero();
        for (c, m) in e.terms() {
            out.add_monomial(c, self.bar_monomial(&m));
        }
        out
    }

    /// The unique `q^r m` fixed by bar.
    pub fn bar_normalize(&self, m: &TorusMonomial) -> TorusMonomial {
        TorusMonomial {
            qpow2: self.weight_d(&m.exps) - self.ordered_self_pairing(&m.exps),
            exps: m.exps.clone(),
        }
    }

    pub fn inverse(&self, m: &TorusMonomial) -> TorusMonomial {
        let neg: Exps = m.exps.iter().map(|(v, e)| (*v, -e)).collect();
        let probe = self.multiply_monomials(
            &TorusMonomial {
                qpow2: m.qpow2,
                exps: m.exps.clone(),
            },
            &TorusMonomial {
                qpow2: 0,
                exps: neg.clone(),
            },
        );
        TorusMonomial {
            qpow2: -probe.qpow2,
            exps: neg,
        }
    }

    /// `m^{(i)}[a,b]`: the bar-invariant product of `X_{i,p}`, `a <= p <= b`.
    pub fn interval_monomial(&self, i: usize, a: i64, b: i64) -> Result<TorusMonomial> {
        if a > b {
            return Err(Error::Precondition(format!("interval [{a},{b}] is empty")));
        }
        if i >= self.table.n {
            return Err(Error::IndexOutOfRange(i + 1, self.table.n));
        }
        let exps = (a..=b)
            .filter(|&p| self.valid(RepVertex::new(i, p)))
            .map(|p| (RepVertex::new(i, p), 1));
        Ok(self.bar_normalize(&TorusMonomial::from_exps(exps)))
    }

    /// `B_{i,p}`: bar-invariant `X_{i,p-1} X_{i,p+1} prod_{j~i} X_{j,p}^{c_{j,i}}`.
    pub fn b_monomial(&self, q: &DynkinQuiver, i: usize, p: i64) -> Result<TorusMonomial> {
        self.check(RepVertex::new(i, p + 1))?;
        let dt = &q.datum;
        let mut ex = vec![(RepVertex::new(i, p - 1), 1), (RepVertex::new(i, p + 1), 1)];
        for j in dt.neighbors(i) {
            ex.push((RepVertex::new(j, p), dt.c[j][i]));
        }
        Ok(self.bar_normalize(&TorusMonomial::from_exps(ex)))
    }

    /// `X_{i,l} (1 + q^{-d_i} B_{i,l+1}^{-1})`.
    pub fn kq_generator(&self, q: &DynkinQuiver, i: usize, l: i64) -> Result<TorusElement> {
        self.check(RepVertex::new(i, l))?;
        let x = TorusMonomial::var(i, l);
        let binv = self.inverse(&self.b_monomial(q, i, l + 1)?);
        let mut second = self.multiply_monomials(&x, &binv);
        second.qpow2 -= 2 * self.table.d[i];
        let mut e = TorusElement::from_monomial(x);
        e.add_monomial(1, second);
        Ok(e)
    }

    /// Parse literals such as `q^1*X[1,1] + q^-1*X[1,7]^-1`.
    ///
    /// A term is a product of an optional integer, powers `q^k` or
    /// `q^(k/2)`, and factors `X[i,p]` or `X[i,p]^e` with 1-based `i`. The
    /// factors are multiplied in the order written.
    pub fn parse_element(&self, s: &str) -> Result<TorusElement> {
        let mut out = TorusElement::zero();
        for (sign, term) in split_terms(s)? {
            let mut coeff = sign;
            let mut m = TorusMonomial::one();
            for f in term.split('*').map(str::trim) {
                if f.is_empty() {
                    return Err(Error::Parse(format!("empty factor in `{term}`")));
                }
                if let Some(rest) = f.strip_prefix('X') {
                    let (v, e) = parse_var(rest)?;
                    self.check(v)?;
                    let mut x = TorusMonomial::from_exps([(v, 1)]);
                    if e < 0 {
                        x = self.inverse(&x);
                    }
                    for _ in 0..e.abs() {
                        m = self.multiply_monomials(&m, &x);
                    }
                } else if let Some(rest) = f.strip_prefix('q') {
                    m.qpow2 += parse_qpow2(rest)?;
                } else {
                    coeff *= f
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad factor `{f}`")))?;
                }
            }
            out.add_monomial(coeff, m);
        }
        Ok(out)
    }
}

fn split_terms(s: &str) -> Result<Vec<(i64, String)>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut sign = 1;
    let mut depth = 0i32;
    let mut prev = ' ';
    for ch in s.chars() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ => {}
        }
        let at_split = depth == 0 && (ch == '+' || ch == '-') && prev != '^';
        if at_split {
            if !cur.trim().is_empty() {
                out.push((sign, cur.trim().to_string()));
            }
            cur.clear();
            sign = if ch == '-' { -1 } else { 1 };
        } else {
            cur.push(ch);
        }
        if !ch.is_whitespace() {
            prev = ch;
        }
    }
    if cur.trim().is_empty() {
        return Err(Error::Parse(format!("dangling sign in `{s}`")));
    }
    out.push((sign, cur.trim().to_string()));
    Ok(out)
}

fn parse_var(s: &str) -> Result<(RepVertex, i64)> {
    let s = s.trim();
    let body = s
        .strip_prefix('[')
        .ok_or_else(|| Error::Parse(format!("expected `[` in `X{s}`")))?;
    let close = body
        .find(']')
        .ok_or_else(|| Error::Parse(format!("expected `]` in `X{s}`")))?;
    let (a, b) = body[..close]
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("expected `i,p` in `X{s}`")))?;
    let i: usize = a
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad index `{a}`")))?;
    let p: i64 = b
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad position `{b}`")))?;
    if i == 0 {
        return Err(Error::Parse("indices are 1-based".into()));
    }
    let rest = body[close + 1..].trim();
    let e = match rest.strip_prefix('^') {
        Some(x) => x
            .trim()
            .parse::<i64>()
            .map_err(|_| Error::Parse(format!("bad exponent `{x}`")))?,
        None if rest.is_empty() => 1,
        None => return Err(Error::Parse(format!("trailing `{rest}`"))),
    };
    Ok((RepVertex::new(i - 1, p), e))
}

fn parse_qpow2(s: &str) -> Result<i64> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(2);
    }
    let x = s
        .strip_prefix('^')
        .ok_or_else(|| Error::Parse(format!("bad q power `q{s}`")))?
        .trim();
    let x = x
        .strip_prefix('(')
        .and_then(|y| y.strip_suffix(')'))
        .unwrap_or(x);
    match x.split_once('/') {
        Some((a, "2")) => a
            .trim()
            .parse::<i64>()
            .map_err(|_| Error::Parse(format!("bad q power `{x}`"))),
        Some(_) => Err(Error::Parse(format!("only halves allowed in `{x}`"))),
        None => x
            .parse::<i64>()
            .map(|k| 2 * k)
            .map_err(|_| Error::Parse(format!("bad q power `{x}`"))),
    }
}

/// `(-1)^{delta(p >= s)} (wt X_a, wt X_b)` for `a != b`, else 0.
pub fn n_via_roots(q: &DynkinQuiver, a: RepVertex, b: RepVertex) -> Result<i64> {
    q.check_parity(a.i, a.p)?;
    q.check_parity(b.i, b.p)?;
    if a == b {
        return Ok(0);
    }
    let v = q.datum.pair(&q.signed_root(a.i, a.p), &q.signed_root(b.i, b.p))?;
    Ok(if a.p >= b.p { -v } else { v })
}

/// `wt_Q(m) = sum u_{i,p} (-1)^k beta` over `phi_Q(i,p) = (beta,k)`.
pub fn wt_q(q: &DynkinQuiver, m: &Exps) -> LatticeVec {
    let mut acc = LatticeVec::zero(crate::cartan::Basis::Root, q.n());
    for (v, e) in m {
        acc = acc.add(&q.signed_root(v.i, v.p).scale(*e));
    }
    acc
}

/// Right-hand side of the interval identity for `N(m^i[p,p'], m^j[s,s'])`.
pub fn nnkr_rhs(q: &DynkinQuiver, i: usize, p: i64, p2: i64, j: usize, s: i64, s2: i64) -> i64 {
    let x = q
        .tau_varpi(i, (q.xi[i] - p) / 2 + 1)
        .add(q.tau_varpi(i, (q.xi[i] - p2) / 2));
    let y = q
        .tau_varpi(j, (q.xi[j] - s) / 2 + 1)
        .sub(q.tau_varpi(j, (q.xi[j] - s2) / 2));
    q.datum.pair(&x, &y).expect("second argument lies in the root lattice")
}

/// Compare both sides of the interval identity.
#[allow(clippy::too_many_arguments)]
pub fn check_nnkr(
    q: &DynkinQuiver,
    torus: &Torus,
    i: usize,
    p: i64,
    p2: i64,
    j: usize,
    s: i64,
    s2: i64,
) -> Result<bool> {
    for (k, x) in [(i, p), (i, p2), (j, s), (j, s2)] {
        q.check_parity(k, x)?;
    }
    let d = q.datum.dist[i][j] as i64;
    if p > p2 || s > s2 || p - s > d || s2 - p2 > d {
        return Err(Error::Precondition(format!(
            "interval identity needs p <= p', s <= s', p - s <= {d}, s' - p' <= {d}"
        )));
    }
    let lhs = torus.n_monomials(
        &torus.interval_monomial(i, p, p2)?.exps,
        &torus.interval_monomial(j, s, s2)?.exps,
    );
    Ok(lhs == nnkr_rhs(q, i, p, p2, j, s, s2))
}

/// Expected `N(X_{i,p}, B_{j,s}^{-1})`.
pub fn ya_beta(q: &DynkinQuiver, i: usize, p: i64, j: usize, s: i64) -> i64 {
    if i != j {
        return 0;
    }
    let aa = q.datum.bsym[i][i];
    match p - s {
        1 => -aa,
        -1 => aa,
        _ => 0,
    }
}

/// Expected `N(B_{i,t}^{-1}, B_{j,u}^{-1})`.
pub fn ya_alpha(q: &DynkinQuiver, i: usize, t: i64, j: usize, u: i64) -> i64 {
    let dt = &q.datum;
    if i == j {
        match t - u {
            2 => dt.bsym[i][i],
            -2 => -dt.bsym[i][i],
            _ => 0,
        }
    } else if dt.dist[i][j] == 1 {
        match t - u {
            1 => 2 * dt.bsym[i][j],
            -1 => -2 * dt.bsym[i][j],
            _ => 0,
        }
    } else {
        0
    }
}

/// Check both commutation formulas for all vertices with `lo <= p <= hi`.
/// Returns the first failing case.
pub fn check_ya(q: &DynkinQuiver, torus: &Torus, lo: i64, hi: i64) -> Option<String> {
    let n = q.n();
    let verts: Vec<RepVertex> = (lo..=hi)
        .flat_map(|p| (0..n).map(move |i| RepVertex::new(i, p)))
        .filter(|v| q.valid(v.i, v.p))
        .collect();
    // B_{j,s} needs (j, s+1) valid
    let binv: Vec<(RepVertex, Exps)> = (lo..=hi)
        .flat_map(|s| (0..n).map(move |j| RepVertex::new(j, s)))
        .filter(|v| q.valid(v.i, v.p + 1))
        .map(|v| {
            let b = torus.b_monomial(q, v.i, v.p).expect("parity checked");
            (v, torus.inverse(&b).exps)
        })
        .collect();
    for a in &verts {
        let xa = Exps::from([(*a, 1)]);
        for (b, e) in &binv {
            let got = torus.n_monomials(&xa, e);
            let want = ya_beta(q, a.i, a.p, b.i, b.p);
            if got != want {
                return Some(format!("beta({a};{b}) = {got}, expected {want}"));
            }
        }
    }
    for (a, ea) in &binv {
        for (b, eb) in &binv {
            let got = torus.n_monomials(ea, eb);
            let want = ya_alpha(q, a.i, a.p, b.i, b.p);
            if got != want {
                return Some(format!("alpha({a};{b}) = {got}, expected {want}"));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::build_datum;

    fn b3() -> (DynkinQuiver, Torus) {
        let q = DynkinQuiver::new(build_datum("B3".parse().unwrap()), vec![3, 2, 1]).unwrap();
        let t = Torus::for_quiver(&q);
        (q, t)
    }

    #[test]
    fn b3_pairing() {
        let (q, t) = b3();
        let a = RepVertex::new(0, 3);
        let b = RepVertex::new(1, 2);
        assert_eq!(t.n_pairing(a, b).unwrap(), -2);
        assert_eq!(n_via_roots(&q, a, b).unwrap(), -2);
        assert!(t.n_pairing(RepVertex::new(0, 2), b).is_err());
    }

    #[test]
    fn bar_normalized_var() {
        let (_, t) = b3();
        let m = t.bar_normalize(&TorusMonomial::var(0, 1));
        assert_eq!(m.qpow2, 2);
        assert_eq!(t.bar_monomial(&m), m);
    }

    #[test]
    fn parse_roundtrip() {
        let (_, t) = b3();
        let e = t.parse_element("q^1*X[1,1] + q^-1*X[1,7]^-1").unwrap();
        assert_eq!(e.terms().len(), 2);
        assert_eq!(t.parse_element(&e.to_string()).unwrap(), e);
        assert!(t.parse_element("X[1,2]").is_err());
    }
}
