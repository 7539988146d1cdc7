//! Sparse Laurent polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Laurent polynomial in one variable.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

fn rat(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: i64, e: i64) -> Self {
        Self::monomial_rat(rat(c), e)
    }

    pub fn monomial_rat(c: BigRational, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    /// Polynomial from coefficients of degrees `0, 1, 2, ...`.
    pub fn from_coeffs(cs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (e, &c) in cs.iter().enumerate() {
            p.add_term(e as i64, rat(c));
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut p = Self::zero();
        for (e, x) in &self.terms {
            p.add_term(*e, x * c);
        }
        p
    }

    /// `x -> x^{-1}`.
    pub fn invert_variable(&self) -> Self {
        let mut p = Self::zero();
        for (e, x) in &self.terms {
            p.add_term(-e, x.clone());
        }
        p
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut p = Self::zero();
        for (e, x) in &self.terms {
            p.add_term(e + k, x.clone());
        }
        p
    }

    pub fn eval_at_one(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |a, b| a + b)
    }

    /// Integer coefficients for degrees `0..len`, if all lie there and are integral.
    pub fn to_int_coeffs(&self, len: usize) -> Option<Vec<i64>> {
        let mut out = vec![0i64; len];
        for (e, c) in &self.terms {
            if *e < 0 || *e as usize >= len || !c.is_integer() {
                return None;
            }
            out[*e as usize] = i64::try_from(c.to_integer()).ok()?;
        }
        Some(out)
    }

    /// Quantum integer `[k]_x = (x^k - x^{-k}) / (x - x^{-1})`, `k >= 0`.
    pub fn quantum_int(k: i64) -> Self {
        let mut p = Self::zero();
        for s in 0..k {
            p.add_term(k - 1 - 2 * s, BigRational::one());
        }
        p
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, c.clone());
        }
        p
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: LaurentPoly) -> LaurentPoly {
        &self + &o
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        self + &(-o)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&rat(-1))
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                p.add_term(a + b, x * y);
            }
        }
        p
    }
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("({})", c)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| match *e {
                0 => fmt_coeff(c),
                _ => format!("{}*t^{}", fmt_coeff(c), e),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Laurent polynomial in two variables `q, t`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QtPoly {
    terms: BTreeMap<(i64, i64), BigRational>,
}

impl QtPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: i64, qe: i64, te: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(qe, te, rat(c));
        p
    }

    pub fn add_term(&mut self, qe: i64, te: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry((qe, te))
            .or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(qe, te));
        }
    }

    pub fn coeff(&self, qe: i64, te: i64) -> BigRational {
        self.terms
            .get(&(qe, te))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// Substitute `q = 1`.
    pub fn at_q_one(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for ((_, te), c) in &self.terms {
            p.add_term(*te, c.clone());
        }
        p
    }

    /// Substitute `t = 1`, leaving a polynomial in `q`.
    pub fn at_t_one(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for ((qe, _), c) in &self.terms {
            p.add_term(*qe, c.clone());
        }
        p
    }
}

impl Add for &QtPoly {
    type Output = QtPoly;
    fn add(self, o: &QtPoly) -> QtPoly {
        let mut p = self.clone();
        for ((a, b), c) in &o.terms {
            p.add_term(*a, *b, c.clone());
        }
        p
    }
}

impl Sub for &QtPoly {
    type Output = QtPoly;
    fn sub(self, o: &QtPoly) -> QtPoly {
        let mut p = self.clone();
        for ((a, b), c) in &o.terms {
            p.add_term(*a, *b, -c.clone());
        }
        p
    }
}

impl fmt::Display for QtPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| format!("{}*q^{}*t^{}", fmt_coeff(c), a, b))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
