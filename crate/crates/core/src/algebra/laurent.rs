//! Laurent polynomials K[t, t⁻¹] and the t-adic valuation.

use std::collections::BTreeMap;
use std::fmt;

use super::field::{Ring, Scalar, ScalarField};
use crate::error::{Error, Result};

/// t-adic valuation. The zero element has valuation `NegInfinity`, which
/// sorts below every integer.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Valuation {
    NegInfinity,
    Finite(i64),
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::NegInfinity => None,
        }
    }

    /// True for a genuine pole (finite and negative).
    pub fn is_pole(self) -> bool {
        matches!(self, Valuation::Finite(v) if v < 0)
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::NegInfinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::NegInfinity => write!(f, "-inf"),
            Valuation::Finite(v) => write!(f, "{v}"),
        }
    }
}

/// A finite sum Σ c_k t^k with nonzero base-field coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentScalar {
    coeffs: BTreeMap<i64, Scalar>,
}

impl LaurentScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c · t^k`.
    pub fn monomial(field: &ScalarField, c: Scalar, k: i64) -> Self {
        let mut s = Self::zero();
        if !field.is_zero(&c) {
            s.coeffs.insert(k, c);
        }
        s
    }

    pub fn from_terms(field: &ScalarField, terms: impl IntoIterator<Item = (i64, Scalar)>) -> Self {
        let mut s = Self::zero();
        for (k, c) in terms {
            s.add_term(field, k, &c);
        }
        s
    }

    fn add_term(&mut self, field: &ScalarField, k: i64, c: &Scalar) {
        let sum = match self.coeffs.get(&k) {
            Some(old) => field.add(old, c),
            None => c.clone(),
        };
        if field.is_zero(&sum) {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^k`.
    pub fn coefficient(&self, field: &ScalarField, k: i64) -> Scalar {
        self.coeffs.get(&k).cloned().unwrap_or_else(|| field.zero())
    }

    /// Nonzero terms `(k, c_k)` in ascending order of `k`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn valuation(&self) -> Valuation {
        match self.coeffs.keys().next() {
            Some(k) => Valuation::Finite(*k),
            None => Valuation::NegInfinity,
        }
    }

    /// Largest exponent of `t`, or `None` for zero.
    pub fn top_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Value at `t = 0`; an error carrying ν when there is a pole.
    pub fn value_at_zero(&self, field: &ScalarField) -> Result<Scalar> {
        match self.valuation() {
            Valuation::Finite(v) if v < 0 => Err(Error::Pole(Valuation::Finite(v))),
            _ => Ok(self.coefficient(field, 0)),
        }
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentScalar {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitute `t ↦ t^m` for `m ≥ 1`.
    pub fn substitute_power(&self, m: i64) -> Self {
        assert!(m >= 1);
        LaurentScalar {
            coeffs: self.coeffs.iter().map(|(e, c)| (e * m, c.clone())).collect(),
        }
    }

    /// Evaluate at `t = c` with `c ≠ 0`.
    pub fn evaluate(&self, field: &ScalarField, c: &Scalar) -> Scalar {
        let inv = field.inv(c).expect("evaluation point must be nonzero");
        let mut acc = field.zero();
        for (k, a) in &self.coeffs {
            let p = if *k >= 0 {
                field.pow(c, *k as u64)
            } else {
                field.pow(&inv, k.unsigned_abs())
            };
            acc = field.add(&acc, &field.mul(a, &p));
        }
        acc
    }

    /// `Some((c, k))` when the element is a single term `c t^k`.
    pub fn as_monomial(&self) -> Option<(Scalar, i64)> {
        if self.coeffs.len() == 1 {
            let (k, c) = self.coeffs.iter().next().unwrap();
            Some((c.clone(), *k))
        } else {
            None
        }
    }
}

/// The ring K[t, t⁻¹] over a base field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct LaurentRing {
    pub base: ScalarField,
}

impl LaurentRing {
    pub fn new(base: ScalarField) -> Self {
        LaurentRing { base }
    }

    /// The parameter `t`.
    pub fn t(&self) -> LaurentScalar {
        self.t_pow(1)
    }

    pub fn t_pow(&self, k: i64) -> LaurentScalar {
        LaurentScalar::monomial(&self.base, self.base.one(), k)
    }

    /// Scalar `c · t^k`.
    pub fn term(&self, c: Scalar, k: i64) -> LaurentScalar {
        LaurentScalar::monomial(&self.base, c, k)
    }
}

impl Ring for LaurentRing {
    type Elem = LaurentScalar;

    fn zero(&self) -> LaurentScalar {
        LaurentScalar::zero()
    }

    fn one(&self) -> LaurentScalar {
        self.t_pow(0)
    }

    fn is_zero(&self, a: &LaurentScalar) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &LaurentScalar, b: &LaurentScalar) -> LaurentScalar {
        let mut out = a.clone();
        for (k, c) in &b.coeffs {
            out.add_term(&self.base, *k, c);
        }
        out
    }

    fn neg(&self, a: &LaurentScalar) -> LaurentScalar {
        LaurentScalar {
            coeffs: a.coeffs.iter().map(|(k, c)| (*k, self.base.neg(c))).collect(),
        }
    }

    fn mul(&self, a: &LaurentScalar, b: &LaurentScalar) -> LaurentScalar {
        let mut out = LaurentScalar::zero();
        for (i, x) in &a.coeffs {
            for (j, y) in &b.coeffs {
                out.add_term(&self.base, i + j, &self.base.mul(x, y));
            }
        }
        out
    }

    fn try_divide(&self, a: &LaurentScalar, b: &LaurentScalar) -> Option<LaurentScalar> {
        let vb = b.valuation().finite()?;
        if a.is_zero() {
            return Some(LaurentScalar::zero());
        }
        let va = a.valuation().finite()?;
        // Long division of a·t^-va by b·t^-vb, both ordinary polynomials with
        // nonzero constant term, starting from the top.
        let mut rem = a.shift(-va);
        let den = b.shift(-vb);
        let top_b = den.top_exponent()?;
        let lead_inv = self.base.inv(&den.coefficient(&self.base, top_b))?;
        let mut quot = LaurentScalar::zero();
        while let Some(top) = rem.top_exponent() {
            if top < top_b {
                return None;
            }
            let c = self.base.mul(&rem.coefficient(&self.base, top), &lead_inv);
            let k = top - top_b;
            quot.add_term(&self.base, k, &c);
            let sub = self.mul(&den, &self.term(c, k));
            rem = self.sub(&rem, &sub);
        }
        Some(quot.shift(va - vb))
    }

    fn base_field(&self) -> ScalarField {
        self.base
    }

    fn embed(&self, c: &Scalar) -> LaurentScalar {
        LaurentScalar::monomial(&self.base, c.clone(), 0)
    }

    fn expand(&self, a: &LaurentScalar) -> Vec<(i64, Scalar)> {
        a.coeffs.iter().rev().map(|(k, c)| (*k, c.clone())).collect()
    }
}
