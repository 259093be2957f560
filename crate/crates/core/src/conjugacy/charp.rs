//! The difference operator `δ(R) = R(x+1) − R(x)`, the period sum
//! `N(F) = F(x) + F(x+1) + ... + F(x+p−1)`, and the splitting
//! `K[x] = V ⊕ Im δ` where `V` is spanned by the `x^k` with `k ≡ p−1 mod p`.

use crate::algebra::{Ring, ScalarField, UniPoly};
use crate::error::{Error, Result};

pub type Poly = UniPoly<ScalarField>;

pub fn delta_map(r: &Poly) -> Poly {
    let field = *r.ring();
    r.shift(&field.one()).sub(r)
}

pub fn n_map(f: &Poly) -> Result<Poly> {
    let field = *f.ring();
    let p = field.characteristic();
    if p == 0 {
        return Err(Error::Unsupported(
            "the period sum needs positive characteristic".into(),
        ));
    }
    let mut acc = Poly::zero(&field);
    for i in 0..p {
        acc = acc.add(&f.shift(&field.from_i64(i as i64)));
    }
    Ok(acc)
}

/// Every exponent is `≡ p−1 mod p`.
pub fn in_v(f: &Poly) -> bool {
    let field = *f.ring();
    let p = field.characteristic();
    p > 0
        && f.coeffs()
            .iter()
            .enumerate()
            .all(|(k, c)| field.is_zero(c) || (k as u64) % p == p - 1)
}

/// `F = v + δ(r)` with `v ∈ V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPDecomposition {
    pub input: Poly,
    pub v: Poly,
    pub r: Poly,
}

impl CharPDecomposition {
    /// `P` with `v = x^{p−1} P(x^p)`.
    pub fn v_part(&self) -> Poly {
        compress(&self.v)
    }
}

/// Read `P` off `v = x^{p−1} P(x^p)`.
pub fn compress(v: &Poly) -> Poly {
    let field = *v.ring();
    let p = field.characteristic() as usize;
    if p == 0 {
        return Poly::zero(&field);
    }
    let coeffs = v.coeffs().iter().skip(p - 1).step_by(p).cloned().collect();
    Poly::new(&field, coeffs)
}

/// `x^{m−1} P(x^m)`.
pub fn expand(p: &Poly, m: usize) -> Poly {
    let field = *p.ring();
    p.inflate(m).mul(&Poly::monomial(&field, field.one(), m - 1))
}

/// Split `F` as `v + δ(r)`, killing from the top every coefficient whose
/// degree `m` has `m + 1` invertible. In characteristic 0 this always ends
/// with `v = 0`.
pub fn split_difference(f: &Poly) -> CharPDecomposition {
    let field = *f.ring();
    let mut rest = f.clone();
    let mut r = Poly::zero(&field);
    loop {
        let top = rest
            .coeffs()
            .iter()
            .enumerate()
            .rev()
            .find(|(k, c)| !field.is_zero(c) && !field.is_zero(&field.from_i64(*k as i64 + 1)));
        let Some((m, a)) = top else { break };
        let c = field.div(a, &field.from_i64(m as i64 + 1)).expect("m + 1 invertible");
        let step = Poly::monomial(&field, c, m + 1);
        rest = rest.sub(&delta_map(&step));
        r = r.add(&step);
    }
    CharPDecomposition {
        input: f.clone(),
        v: rest,
        r,
    }
}

pub fn decompose_v_delta(f: &Poly) -> Result<CharPDecomposition> {
    if f.ring().characteristic() == 0 {
        return Err(Error::Unsupported(
            "the V-decomposition needs positive characteristic".into(),
        ));
    }
    Ok(split_difference(f))
}
