//! Exact coefficient arithmetic.
//!
//! Coefficient rings are runtime values implementing [`Ring`]; elements are
//! plain data and every operation goes through the ring object. The two base
//! fields (ℚ and 𝔽_p) share one descriptor type, [`ScalarField`], so that the
//! CLI and the C API can pick the field at runtime without monomorphizing the
//! whole library twice.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest prime for which the library will enumerate all field elements.
pub const ENUMERATION_LIMIT: u64 = 1 << 20;

/// A commutative ring with decidable equality, given as a runtime descriptor.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Exact division: `Some(q)` with `q * b == a`, or `None` if `b` does not
    /// divide `a` in this ring.
    fn try_divide(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// The field the ring is built over.
    fn base_field(&self) -> ScalarField;

    /// Embed a base-field scalar.
    fn embed(&self, c: &Scalar) -> Self::Elem;

    /// Expansion `a = Σ c_k t^k` over the base field, as `(k, c_k)` pairs
    /// with nonzero `c_k`, sorted by descending `k`. Rings without a
    /// parameter report everything at `k = 0`.
    fn expand(&self, a: &Self::Elem) -> Vec<(i64, Scalar)>;

    fn characteristic(&self) -> u64 {
        self.base_field().characteristic()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.embed(&self.base_field().from_i64(n))
    }

    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        self.try_divide(&self.one(), a)
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// The base field K: either ℚ or a prime field 𝔽_p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ScalarField {
    Rationals,
    Prime(u64),
}

/// An element of a [`ScalarField`]. Residues are always reduced into `0..p`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Residue(u64),
}

/// Outcome of a root search in the base field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RootSearch {
    /// All roots lying in K (possibly none).
    Found(Vec<Scalar>),
    /// The field is too large to search exhaustively.
    Undecided,
}

impl ScalarField {
    pub fn rationals() -> Self {
        ScalarField::Rationals
    }

    pub fn prime(p: u64) -> Result<Self> {
        if p >= 2 && primal_check::miller_rabin(p) && p < (1 << 62) {
            Ok(ScalarField::Prime(p))
        } else {
            Err(Error::InvalidField(format!("Fp:{p}")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            ScalarField::Rationals => 0,
            ScalarField::Prime(p) => *p,
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            ScalarField::Rationals => Scalar::Rational(BigRational::from_integer(n.into())),
            ScalarField::Prime(p) => Scalar::Residue(n.rem_euclid(*p as i64) as u64),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            ScalarField::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            ScalarField::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Scalar::Residue(r.to_u64().expect("residue fits in u64"))
            }
        }
    }

    /// Map a rational number into the field; fails in 𝔽_p when the
    /// denominator vanishes mod p.
    pub fn from_rational(&self, q: &BigRational) -> Option<Scalar> {
        match self {
            ScalarField::Rationals => Some(Scalar::Rational(q.clone())),
            ScalarField::Prime(_) => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                self.div(&num, &den)
            }
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (ScalarField::Rationals, Scalar::Rational(q)) => (!q.is_zero()).then(|| Scalar::Rational(q.recip())),
            (ScalarField::Prime(p), Scalar::Residue(v)) => (*v != 0).then(|| Scalar::Residue(pow_mod(*v, p - 2, *p))),
            _ => panic!("scalar {a:?} does not belong to {self}"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// Elements of a small prime field, in the order 0, 1, …, p−1.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            ScalarField::Prime(p) if *p <= ENUMERATION_LIMIT => Some((0..*p).map(Scalar::Residue).collect()),
            _ => None,
        }
    }

    /// All `x ∈ K` with `x^n = a`, for `n ≥ 1` and `a ≠ 0`.
    pub fn nth_roots(&self, a: &Scalar, n: u32) -> RootSearch {
        assert!(n >= 1);
        match (self, a) {
            (ScalarField::Rationals, Scalar::Rational(q)) => {
                if q.is_zero() {
                    return RootSearch::Found(vec![self.zero()]);
                }
                let negative = q.is_negative();
                if negative && n.is_multiple_of(2) {
                    return RootSearch::Found(vec![]);
                }
                let num = q.numer().abs();
                let den = q.denom().clone();
                let (Some(rn), Some(rd)) = (exact_root(&num, n), exact_root(&den, n)) else {
                    return RootSearch::Found(vec![]);
                };
                let mut r = BigRational::new(rn, rd);
                if negative {
                    r = -r;
                }
                let mut roots = vec![Scalar::Rational(r.clone())];
                if n.is_multiple_of(2) {
                    roots.push(Scalar::Rational(-r));
                }
                RootSearch::Found(roots)
            }
            (ScalarField::Prime(p), Scalar::Residue(_)) => {
                if *p > ENUMERATION_LIMIT {
                    return RootSearch::Undecided;
                }
                let roots = (0..*p)
                    .map(Scalar::Residue)
                    .filter(|x| self.pow(x, n as u64) == *a)
                    .collect();
                RootSearch::Found(roots)
            }
            _ => panic!("scalar {a:?} does not belong to {self}"),
        }
    }

    /// Smallest `m ≥ 1` with `a^m = 1`, or `None` if `a` has infinite order
    /// (or is zero).
    pub fn multiplicative_order(&self, a: &Scalar) -> Option<u64> {
        if self.is_zero(a) {
            return None;
        }
        match self {
            ScalarField::Rationals => {
                if self.is_one(a) {
                    Some(1)
                } else if *a == self.from_i64(-1) {
                    Some(2)
                } else {
                    None
                }
            }
            ScalarField::Prime(p) => {
                let mut order = p - 1;
                for (q, _) in factorize(p - 1) {
                    while order % q == 0 && self.is_one(&self.pow(a, order / q)) {
                        order /= q;
                    }
                }
                Some(order)
            }
        }
    }

    /// Roots in K of `x^2 + b x + c`.
    pub fn quadratic_roots(&self, b: &Scalar, c: &Scalar) -> RootSearch {
        match self {
            ScalarField::Prime(2) => {
                let roots = [0u64, 1]
                    .into_iter()
                    .map(Scalar::Residue)
                    .filter(|x| {
                        let v = self.add(&self.add(&self.mul(x, x), &self.mul(b, x)), c);
                        self.is_zero(&v)
                    })
                    .collect();
                RootSearch::Found(roots)
            }
            _ => {
                let four = self.from_i64(4);
                let disc = self.sub(&self.mul(b, b), &self.mul(&four, c));
                let two = self.from_i64(2);
                let sqrt = match self.sqrt(&disc) {
                    Some(s) => s,
                    None => return RootSearch::Found(vec![]),
                };
                let mut roots = Vec::new();
                for s in [sqrt.clone(), self.neg(&sqrt)] {
                    let r = self.div(&self.sub(&s, b), &two).expect("char ≠ 2");
                    if !roots.contains(&r) {
                        roots.push(r);
                    }
                }
                RootSearch::Found(roots)
            }
        }
    }

    /// A square root in K, if one exists.
    pub fn sqrt(&self, a: &Scalar) -> Option<Scalar> {
        match (self, a) {
            (ScalarField::Rationals, _) => match self.nth_roots(a, 2) {
                RootSearch::Found(v) => v.into_iter().next(),
                RootSearch::Undecided => None,
            },
            (ScalarField::Prime(p), Scalar::Residue(v)) => tonelli_shanks(*v, *p).map(Scalar::Residue),
            _ => panic!("scalar {a:?} does not belong to {self}"),
        }
    }

    /// Integer representative of a residue, or the rational itself.
    pub fn to_rational(&self, a: &Scalar) -> BigRational {
        match a {
            Scalar::Rational(q) => q.clone(),
            Scalar::Residue(v) => BigRational::from_integer((*v).into()),
        }
    }
}

impl Ring for ScalarField {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue(v) => *v == 0,
        }
    }

    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (ScalarField::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (ScalarField::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            _ => panic!("operands {a:?}, {b:?} do not belong to {self}"),
        }
    }

    fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (ScalarField::Rationals, Scalar::Rational(x)) => Scalar::Rational(-x),
            (ScalarField::Prime(p), Scalar::Residue(x)) => Scalar::Residue(if *x == 0 { 0 } else { p - x }),
            _ => panic!("operand {a:?} does not belong to {self}"),
        }
    }

    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (ScalarField::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (ScalarField::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => Scalar::Residue(mul_mod(*x, *y, *p)),
            _ => panic!("operands {a:?}, {b:?} do not belong to {self}"),
        }
    }

    fn try_divide(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.div(a, b)
    }

    fn base_field(&self) -> ScalarField {
        *self
    }

    fn embed(&self, c: &Scalar) -> Scalar {
        c.clone()
    }

    fn expand(&self, a: &Scalar) -> Vec<(i64, Scalar)> {
        if self.is_zero(a) {
            vec![]
        } else {
            vec![(0, a.clone())]
        }
    }
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarField::Rationals => write!(f, "Q"),
            ScalarField::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for ScalarField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(ScalarField::Rationals);
        }
        let p = s
            .strip_prefix("Fp:")
            .and_then(|rest| rest.parse::<u64>().ok())
            .ok_or_else(|| Error::InvalidField(s.to_string()))?;
        ScalarField::prime(p).map_err(|_| Error::InvalidField(s.to_string()))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue(v) => write!(f, "{v}"),
        }
    }
}

impl Scalar {
    /// True when the printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Residue(_) => false,
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn tonelli_shanks(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 || p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    debug_assert!(n.sign() != Sign::Minus);
    let r = n.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == *n).then_some(r)
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Convenience: rational scalar `num/den`.
pub fn rat(num: i64, den: i64) -> Scalar {
    Scalar::Rational(BigRational::new(num.into(), den.into()))
}
