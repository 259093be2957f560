//! Sparse multivariate polynomials.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops;

use super::field::Ring;
use crate::error::{Error, Result};

/// Total degree with a distinguished value for the zero polynomial.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }

    /// Finite value, with the zero polynomial mapped to `0`.
    pub fn or_zero(self) -> u32 {
        self.finite().unwrap_or(0)
    }
}

impl ops::Add for Degree {
    type Output = Degree;

    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Exponent vector, ordered graded-lexicographically: first by total
/// degree, then lexicographically with `x1` most significant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `nvars` variables over a coefficient ring.
#[derive(Clone, Debug)]
pub struct MultiPoly<R: Ring> {
    ring: R,
    nvars: usize,
    terms: BTreeMap<Monomial, R::Elem>,
}

impl<R: Ring> PartialEq for MultiPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.nvars == other.nvars && self.terms == other.terms
    }
}

impl<R: Ring> Eq for MultiPoly<R> {}

impl<R: Ring> MultiPoly<R> {
    pub fn zero(ring: &R, nvars: usize) -> Self {
        MultiPoly {
            ring: ring.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &R, nvars: usize) -> Self {
        Self::constant(ring, nvars, ring.one())
    }

    pub fn constant(ring: &R, nvars: usize, c: R::Elem) -> Self {
        Self::from_terms(ring, nvars, [(Monomial::one(nvars), c)])
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(ring: &R, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        Self::from_terms(ring, nvars, [(Monomial::var(nvars, i), ring.one())])
    }

    /// `c · x^e`.
    pub fn monomial(ring: &R, exps: Vec<u32>, c: R::Elem) -> Self {
        let n = exps.len();
        Self::from_terms(ring, n, [(Monomial(exps), c)])
    }

    /// Build from terms; repeated monomials are summed and zeros dropped.
    pub fn from_terms(ring: &R, nvars: usize, terms: impl IntoIterator<Item = (Monomial, R::Elem)>) -> Self {
        let mut p = Self::zero(ring, nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "exponent vector length");
            p.add_term(m, &c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: &R::Elem) {
        if self.ring.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = self.ring.add(old, c);
                if self.ring.is_zero(&s) {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> R::Elem {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn constant_term(&self) -> R::Elem {
        self.coefficient(&vec![0; self.nvars])
    }

    pub fn is_constant(&self) -> bool {
        self.degree() <= Degree::Finite(0)
    }

    /// The largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &R::Elem)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Degree {
        match self.terms.keys().next_back() {
            Some(m) => Degree::Finite(m.total_degree()),
            None => Degree::NegInfinity,
        }
    }

    /// Largest exponent of variable `i`, or `None` for zero.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::total_degree);
        match it.next() {
            Some(d) => it.all(|e| e == d),
            None => true,
        }
    }

    /// Sum of the terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        MultiPoly {
            ring: self.ring.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring, self.nvars));
        }
        let mut acc: HashMap<Monomial, R::Elem> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                let c = self.ring.mul(c1, c2);
                match acc.get_mut(&m) {
                    Some(old) => *old = self.ring.add(old, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let ring = &self.ring;
        Ok(MultiPoly {
            ring: ring.clone(),
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !ring.is_zero(c)).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        self.map_terms(|c| self.ring.neg(c))
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &R::Elem) -> Self {
        self.map_terms(|x| self.ring.mul(x, c))
    }

    fn map_terms(&self, f: impl Fn(&R::Elem) -> R::Elem) -> Self {
        let ring = &self.ring;
        MultiPoly {
            ring: ring.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f(c)))
                .filter(|(_, c)| !ring.is_zero(c))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitute `args[i]` for `x_{i+1}`. The arguments may live in a
    /// different number of variables but share the ring.
    pub fn compose(&self, args: &[MultiPoly<R>]) -> Result<Self> {
        if args.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: args.len(),
            });
        }
        let Some(first) = args.first() else {
            return Ok(self.clone());
        };
        let m = first.nvars;
        for a in args {
            if a.ring != self.ring {
                return Err(Error::RingMismatch);
            }
            if a.nvars != m {
                return Err(Error::ArityMismatch {
                    expected: m,
                    found: a.nvars,
                });
            }
        }
        // Powers of each argument, built lazily up to the largest exponent.
        let mut powers: Vec<Vec<MultiPoly<R>>> = Vec::with_capacity(self.nvars);
        for (i, a) in args.iter().enumerate() {
            let top = self.degree_in(i).unwrap_or(0) as usize;
            let mut pw = Vec::with_capacity(top + 1);
            pw.push(Self::one(&self.ring, m));
            for k in 1..=top {
                let next = &pw[k - 1] * a;
                pw.push(next);
            }
            powers.push(pw);
        }
        // Collect the terms sharing all exponents but the last, so each
        // group costs one linear combination of powers of the last argument
        // and a product per remaining variable.
        let last = self.nvars - 1;
        let mut groups: HashMap<&[u32], Self> = HashMap::new();
        for (mono, c) in &self.terms {
            let inner = groups
                .entry(&mono.0[..last])
                .or_insert_with(|| Self::zero(&self.ring, m));
            for (mm, cc) in &powers[last][mono.0[last] as usize].terms {
                inner.add_term(mm.clone(), &self.ring.mul(c, cc));
            }
        }
        let mut out = Self::zero(&self.ring, m);
        for (prefix, mut t) in groups {
            for (i, e) in prefix.iter().enumerate() {
                if *e > 0 {
                    t = &t * &powers[i][*e as usize];
                }
            }
            for (mm, cc) in t.terms {
                out.add_term(mm, &cc);
            }
        }
        Ok(out)
    }

    /// Partial derivative with respect to `x_{i+1}`.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.ring, self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            let k = self.ring.from_i64(e as i64);
            out.add_term(Monomial(exps), &self.ring.mul(c, &k));
        }
        out
    }

    /// Evaluate at a point of `R^n`.
    pub fn eval(&self, point: &[R::Elem]) -> R::Elem {
        assert_eq!(point.len(), self.nvars);
        let mut acc = self.ring.zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, e) in point.iter().zip(&m.0) {
                if *e > 0 {
                    v = self.ring.mul(&v, &self.ring.pow(x, *e as u64));
                }
            }
            acc = self.ring.add(&acc, &v);
        }
        acc
    }

    /// Apply a coefficient map into another ring; zero images are dropped.
    pub fn map_coefficients<S: Ring>(&self, target: &S, f: impl Fn(&R::Elem) -> S::Elem) -> MultiPoly<S> {
        self.try_map_coefficients(target, |c| Ok(f(c))).expect("infallible map")
    }

    pub fn try_map_coefficients<S: Ring>(
        &self,
        target: &S,
        f: impl Fn(&R::Elem) -> Result<S::Elem>,
    ) -> Result<MultiPoly<S>> {
        let mut out = MultiPoly::zero(target, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c)?);
        }
        Ok(out)
    }

    /// Divide every coefficient exactly by `c`.
    pub fn try_divide_scalar(&self, c: &R::Elem) -> Option<Self> {
        let mut out = Self::zero(&self.ring, self.nvars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), &self.ring.try_divide(a, c)?);
        }
        Some(out)
    }
}

impl<'a, R: Ring> ops::Add<&'a MultiPoly<R>> for &'a MultiPoly<R> {
    type Output = MultiPoly<R>;

    fn add(self, rhs: &'a MultiPoly<R>) -> MultiPoly<R> {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl<'a, R: Ring> ops::Sub<&'a MultiPoly<R>> for &'a MultiPoly<R> {
    type Output = MultiPoly<R>;

    fn sub(self, rhs: &'a MultiPoly<R>) -> MultiPoly<R> {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl<'a, R: Ring> ops::Mul<&'a MultiPoly<R>> for &'a MultiPoly<R> {
    type Output = MultiPoly<R>;

    fn mul(self, rhs: &'a MultiPoly<R>) -> MultiPoly<R> {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl<R: Ring> ops::Neg for &MultiPoly<R> {
    type Output = MultiPoly<R>;

    fn neg(self) -> MultiPoly<R> {
        MultiPoly::neg(self)
    }
}
