//! Dense univariate polynomials, used for the `P(x2)` part of triangular maps
//! and for the difference operators in positive characteristic.

use super::field::Ring;
use super::poly::{Degree, Monomial, MultiPoly};

#[derive(Clone, Debug)]
pub struct UniPoly<R: Ring> {
    ring: R,
    /// Coefficients from degree 0 upwards; the last one is nonzero.
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> PartialEq for UniPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.coeffs == other.coeffs
    }
}

impl<R: Ring> Eq for UniPoly<R> {}

impl<R: Ring> UniPoly<R> {
    pub fn new(ring: &R, mut coeffs: Vec<R::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly {
            ring: ring.clone(),
            coeffs,
        }
    }

    pub fn zero(ring: &R) -> Self {
        Self::new(ring, vec![])
    }

    pub fn constant(ring: &R, c: R::Elem) -> Self {
        Self::new(ring, vec![c])
    }

    pub fn x(ring: &R) -> Self {
        Self::new(ring, vec![ring.zero(), ring.one()])
    }

    /// `c · x^k`.
    pub fn monomial(ring: &R, c: R::Elem, k: usize) -> Self {
        let mut v = vec![ring.zero(); k + 1];
        v[k] = c;
        Self::new(ring, v)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite((n - 1) as u32),
        }
    }

    pub fn coeff(&self, k: usize) -> R::Elem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn lead(&self) -> Option<&R::Elem> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|k| self.ring.add(&self.coeff(k), &other.coeff(k))).collect();
        Self::new(&self.ring, v)
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.ring, self.coeffs.iter().map(|c| self.ring.neg(c)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        Self::new(&self.ring, self.coeffs.iter().map(|x| self.ring.mul(x, c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        let mut v = vec![self.ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = self.ring.add(&v[i + j], &self.ring.mul(a, b));
            }
        }
        Self::new(&self.ring, v)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(&self.ring, self.ring.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, x: &R::Elem) -> R::Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(self.ring.zero(), |acc, c| self.ring.add(&self.ring.mul(&acc, x), c))
    }

    /// `P(q(x))` by Horner's rule.
    pub fn compose(&self, q: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(&self.ring), |acc, c| {
            acc.mul(q).add(&Self::constant(&self.ring, c.clone()))
        })
    }

    /// `P(a x + b)`.
    pub fn compose_linear(&self, a: &R::Elem, b: &R::Elem) -> Self {
        self.compose(&Self::new(&self.ring, vec![b.clone(), a.clone()]))
    }

    /// `P(x + c)`.
    pub fn shift(&self, c: &R::Elem) -> Self {
        self.compose_linear(&self.ring.one(), c)
    }

    /// Substitute `x ↦ x^m`.
    pub fn inflate(&self, m: usize) -> Self {
        let mut v = vec![self.ring.zero(); (self.coeffs.len().max(1) - 1) * m + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[k * m] = c.clone();
        }
        Self::new(&self.ring, v)
    }

    /// Embed as a polynomial in variable `var` of `nvars` variables.
    pub fn to_multi(&self, nvars: usize, var: usize) -> MultiPoly<R> {
        MultiPoly::from_terms(
            &self.ring,
            nvars,
            self.coeffs.iter().enumerate().map(|(k, c)| {
                let mut e = vec![0; nvars];
                e[var] = k as u32;
                (Monomial(e), c.clone())
            }),
        )
    }

    /// Read a multivariate polynomial that only involves variable `var`.
    pub fn from_multi(p: &MultiPoly<R>, var: usize) -> Option<Self> {
        let ring = p.ring();
        let mut v = vec![ring.zero(); p.degree_in(var).map_or(0, |d| d as usize + 1)];
        for (m, c) in p.terms() {
            if m.0.iter().enumerate().any(|(i, e)| i != var && *e != 0) {
                return None;
            }
            v[m.0[var] as usize] = c.clone();
        }
        Some(Self::new(ring, v))
    }

    /// Division with remainder by a polynomial whose leading coefficient is
    /// a unit. `None` if `other` is zero or its leading coefficient is not
    /// invertible.
    pub fn div_rem(&self, other: &Self) -> Option<(Self, Self)> {
        let lead_inv = self.ring.unit_inverse(other.lead()?)?;
        let m = other.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.ring.zero(); rem.len().saturating_sub(m)];
        while rem.len() > m {
            let top = rem.len() - 1;
            let c = self.ring.mul(&rem[top], &lead_inv);
            if !self.ring.is_zero(&c) {
                for (i, b) in other.coeffs.iter().enumerate() {
                    let k = top - m + i;
                    rem[k] = self.ring.sub(&rem[k], &self.ring.mul(&c, b));
                }
            }
            quot[top - m] = c;
            rem.pop();
        }
        Some((Self::new(&self.ring, quot), Self::new(&self.ring, rem)))
    }

    /// Monic greatest common divisor over a field.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("field coefficients");
            a = b;
            b = r;
        }
        match a.lead().cloned() {
            Some(l) => a.scale(&self.ring.unit_inverse(&l).expect("field coefficients")),
            None => a,
        }
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| self.ring.mul(c, &self.ring.from_i64(k as i64)))
            .collect();
        Self::new(&self.ring, v)
    }
}
