//! Explicit families of conjugates whose value at `t = 0` leaves the
//! conjugacy class.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{LaurentRing, LaurentScalar, MultiPoly, Ring, Scalar, ScalarField, UniPoly};
use crate::endo::Endo;
use crate::error::{Error, Result};

use super::family::{
    diagonal, family_at, family_inverse, family_valuation, family_value_at_zero, lift, substitute_power, tc, TFamily,
};

type Poly = UniPoly<ScalarField>;
type LPoly = MultiPoly<LaurentRing>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Limit `(x1, x2 + 1)`.
    F1,
    /// Limit `(x1, x2)`.
    F2,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::F1 => "F1",
            Variant::F2 => "F2",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "F1" | "f1" => Ok(Variant::F1),
            "F2" | "f2" => Ok(Variant::F2),
            _ => Err(Error::InvalidArgument(format!(
                "unknown variant `{s}` (expected F1 or F2)"
            ))),
        }
    }
}

/// A named verification outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool) -> Self {
        Check {
            name: name.into(),
            passed,
        }
    }
}

/// Parameters of the translation-family construction.
#[derive(Clone, Debug, PartialEq)]
pub struct TranslationParameters {
    pub d: u32,
    pub mu: Scalar,
    pub q: u64,
    pub lambda: Scalar,
    /// Exponent of the substitution `t ↦ t^m` (second variant only).
    pub m: Option<u32>,
    /// `P` with `α⁻¹ f α = (x1 + μ + t P, x2 − λ t^{q−d} P^q)`.
    pub remainder: LPoly,
}

/// `family = conjugator⁻¹ ∘ source ∘ conjugator` with `ν(family) ≥ 0` and
/// `limit = family(0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DegenerationWitness {
    pub source: Endo<ScalarField>,
    pub conjugator: TFamily,
    pub family: TFamily,
    pub limit: Endo<ScalarField>,
    pub parameters: Option<TranslationParameters>,
    pub checks: Vec<Check>,
}

impl DegenerationWitness {
    fn build(
        source: Endo<ScalarField>,
        conjugator: TFamily,
        family: TFamily,
        expected_limit: &Endo<ScalarField>,
    ) -> Result<Self> {
        let identity = conjugator.compose(&family)? == lift(&source).compose(&conjugator)?;
        let pole_free = !family_valuation(&family).is_pole();
        let limit = family_value_at_zero(&family)?;
        let field = *source.ring();
        let mut w = DegenerationWitness {
            source,
            conjugator,
            family,
            limit,
            parameters: None,
            checks: vec![],
        };
        w.checks.push(Check::new("conjugation identity", identity));
        w.checks.push(Check::new("no pole at t=0", pole_free));
        w.checks.push(Check::new("limit", w.limit == *expected_limit));
        let pts = specialization_points(&field, 3);
        let agree = w.check_specializations(&pts)?;
        w.checks
            .push(Check::new(format!("specializations at {} points", pts.len()), agree));
        Ok(w)
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// `conjugator(c) ∘ family(c) = source ∘ conjugator(c)` at each `c ≠ 0`.
    pub fn check_specializations(&self, points: &[Scalar]) -> Result<bool> {
        let field = *self.source.ring();
        for c in points {
            if field.is_zero(c) {
                return Err(Error::InvalidArgument("specialization point must be nonzero".into()));
            }
            let conj = family_at(&self.conjugator, c)?;
            let fam = family_at(&self.family, c)?;
            if conj.compose(&fam)? != self.source.compose(&conj)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Up to `n` distinct nonzero elements from `2, -1, 3, 1/2, 5, ...`.
pub fn specialization_points(field: &ScalarField, n: usize) -> Vec<Scalar> {
    let ladder = [(2, 1), (-1, 1), (3, 1), (1, 2), (5, 1), (1, 1), (-2, 1), (7, 1)];
    let mut out: Vec<Scalar> = Vec::new();
    for (a, b) in ladder {
        let Some(c) = field.div(&field.from_i64(a), &field.from_i64(b)) else {
            continue;
        };
        if !field.is_zero(&c) && !out.contains(&c) {
            out.push(c);
        }
        if out.len() == n {
            break;
        }
    }
    out
}

fn plane(c1: MultiPoly<ScalarField>, c2: MultiPoly<ScalarField>) -> Endo<ScalarField> {
    Endo::new(vec![c1, c2]).expect("plane map")
}

/// `(x1 + P(x2), x2)` conjugated by `(t⁻¹ x1, t x2)` gives `(x1 + t P(t x2), x2)`.
pub fn degenerate_family_ii(p: &Poly) -> Result<DegenerationWitness> {
    let field = *p.ring();
    let ring = LaurentRing::new(field);
    let x1 = MultiPoly::var(&field, 2, 0);
    let x2 = MultiPoly::var(&field, 2, 1);
    let f = plane(&x1 + &p.to_multi(2, 1), x2.clone());
    let conj = diagonal(&field, -1, 1);
    let fam = family_inverse(&conj)?.compose(&lift(&f))?.compose(&conj)?;
    let tp = UniPoly::new(
        &ring,
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| tc(&field, c.clone(), k as i64 + 1))
            .collect(),
    );
    let closed = Endo::new(vec![
        &MultiPoly::var(&ring, 2, 0) + &tp.to_multi(2, 1),
        MultiPoly::var(&ring, 2, 1),
    ])?;
    let mut w = DegenerationWitness::build(f, conj, fam, &Endo::identity(&field, 2))?;
    w.checks.push(Check::new("closed form", w.family == closed));
    Ok(w)
}

/// `(ζ x1 + x2^{m−1} P(x2^m), ζ⁻¹ x2)` conjugated by `(t⁻¹ x1, t x2)`.
pub fn degenerate_family_iii(zeta: &Scalar, m: u64, p: &Poly) -> Result<DegenerationWitness> {
    let field = *p.ring();
    if p.is_zero() || m < 2 || field.multiplicative_order(zeta) != Some(m) {
        return Err(Error::InvalidArgument(format!(
            "{zeta} must have order m = {m} ≥ 2 and P must be nonzero"
        )));
    }
    let ring = LaurentRing::new(field);
    let zinv = field.inv(zeta).expect("unit");
    let x1 = MultiPoly::var(&field, 2, 0);
    let x2 = MultiPoly::var(&field, 2, 1);
    let tail = crate::conjugacy::charp::expand(p, m as usize);
    let f = plane(&x1.scale(zeta) + &tail.to_multi(2, 1), x2.scale(&zinv));
    let conj = diagonal(&field, -1, 1);
    let fam = family_inverse(&conj)?.compose(&lift(&f))?.compose(&conj)?;
    // t^m x2^{m−1} P(t^m x2^m): the coefficient of x2^k picks up t^{k+1}
    let ttail = UniPoly::new(
        &ring,
        tail.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| tc(&field, c.clone(), k as i64 + 1))
            .collect(),
    );
    let closed = Endo::new(vec![
        &MultiPoly::var(&ring, 2, 0).scale(&ring.embed(zeta)) + &ttail.to_multi(2, 1),
        MultiPoly::var(&ring, 2, 1).scale(&ring.embed(&zinv)),
    ])?;
    let limit = plane(x1.scale(zeta), x2.scale(&zinv));
    let mut w = DegenerationWitness::build(f, conj, fam, &limit)?;
    w.checks.push(Check::new("closed form", w.family == closed));
    Ok(w)
}

/// `(x1 + Q(x2), x2 + 1)` in characteristic `p` degenerates to
/// `(x1, x2 + 1)` (`F1`) or to the identity (`F2`).
pub fn degenerate_family_iv(q_poly: &Poly, variant: Variant) -> Result<DegenerationWitness> {
    let field = *q_poly.ring();
    let p = field.characteristic();
    if p == 0 {
        return Err(Error::Unsupported("needs positive characteristic".into()));
    }
    let ring = LaurentRing::new(field);
    let x1 = MultiPoly::var(&field, 2, 0);
    let x2 = MultiPoly::var(&field, 2, 1);
    let one = MultiPoly::one(&field, 2);
    let f = plane(&x1 + &q_poly.to_multi(2, 1), &x2 + &one);
    let translation = plane(x1.clone(), &x2 + &one);
    if q_poly.is_zero() {
        return match variant {
            Variant::F1 => {
                DegenerationWitness::build(f.clone(), lift(&Endo::identity(&field, 2)), lift(&f), &translation)
            }
            Variant::F2 => {
                let conj = diagonal(&field, 1, -1);
                let fam = family_inverse(&conj)?.compose(&lift(&f))?.compose(&conj)?;
                DegenerationWitness::build(f, conj, fam, &Endo::identity(&field, 2))
            }
        };
    }
    let d = q_poly.degree().or_zero();
    let mu = q_poly.lead().expect("nonzero").clone();
    let mut q = p;
    while q <= d as u64 {
        q *= p;
    }
    let lambda = field.inv(&field.pow(&mu, q)).expect("unit");
    let (d_i, q_u) = (
        d as i64,
        u32::try_from(q).map_err(|_| Error::Unsupported("exponent too large".into()))?,
    );
    let l1 = MultiPoly::var(&ring, 2, 0);
    let l2 = MultiPoly::var(&ring, 2, 1);
    let lc = |c: LaurentScalar| MultiPoly::constant(&ring, 2, c);
    let alpha2 = &(&l2.scale(&ring.t_pow(d_i)) + &l1.pow(q_u).scale(&ring.embed(&lambda))) + &lc(ring.t_pow(-1));
    let alpha = Endo::new(vec![l1.scale(&ring.t_pow(-d_i)), alpha2.clone()])?;
    let alpha_inv = family_inverse(&alpha)?;
    let g = alpha_inv.compose(&lift(&f))?.compose(&alpha)?;

    // (G1 − x1 − μ) / t
    let rem = &(g.component(0) - &l1) - &lc(ring.embed(&mu));
    let remainder = rem.scale(&ring.t_pow(-1));
    let mut checks = Vec::new();
    let expected2 = &l2 - &remainder.pow(q_u).scale(&tc(&field, lambda.clone(), q as i64 - d_i));
    checks.push(Check::new(
        "second component is x2 - lambda t^(q-d) P^q",
        *g.component(1) == expected2,
    ));
    checks.push(Check::new(
        "P has no pole",
        remainder.terms().all(|(_, c)| !c.valuation().is_pole()),
    ));
    let q_lifted = lift(&plane(q_poly.to_multi(2, 1), x2.clone())).component(0).clone();
    let q_at = q_lifted.compose(&[l1.clone(), alpha2])?;
    let rhs = &lc(tc(&field, mu.clone(), -d_i)) + &remainder.scale(&ring.t_pow(1 - d_i));
    checks.push(Check::new("Q(alpha2) = mu/t^d + P/t^(d-1)", q_at == rhs));

    let mut params = TranslationParameters {
        d,
        mu: mu.clone(),
        q,
        lambda,
        m: None,
        remainder: remainder.clone(),
    };
    let mut w = match variant {
        Variant::F1 => {
            // σ = (−μ x2, μ⁻¹ x1) sends (x1 + μ, x2) to (x1, x2 + 1)
            let muinv = field.inv(&mu).expect("unit");
            let sigma = plane(x2.scale(&field.neg(&mu)), x1.scale(&muinv));
            let sigma_inv = plane(x2.scale(&mu), x1.scale(&field.neg(&muinv)));
            let fam = lift(&sigma).compose(&g)?.compose(&lift(&sigma_inv))?;
            let conj = alpha.compose(&lift(&sigma_inv))?;
            DegenerationWitness::build(f, conj, fam, &translation)?
        }
        Variant::F2 => {
            let e1 = remainder.degree_in(0).unwrap_or(0) as u64;
            let cap = e1.max((1 + q * e1) / (q - d as u64)) + 1;
            let shrink = diagonal(&field, 1, -1);
            let grow = diagonal(&field, -1, 1);
            let mut found = None;
            for m in 1..=cap as i64 {
                let beta = substitute_power(&alpha, m);
                let beta_inv = substitute_power(&alpha_inv, m);
                let gb = beta_inv.compose(&lift(&f))?.compose(&beta)?;
                let fam = shrink.compose(&gb)?.compose(&grow)?;
                if !family_valuation(&fam).is_pole() && family_value_at_zero(&fam)?.is_identity() {
                    found = Some((m, beta.compose(&grow)?, fam));
                    break;
                }
            }
            let Some((m, conj, fam)) = found else {
                return Err(Error::Unsupported(format!(
                    "no substitution exponent up to {cap} removes the pole"
                )));
            };
            params.m = Some(m as u32);
            DegenerationWitness::build(f, conj, fam, &Endo::identity(&field, 2))?
        }
    };
    w.parameters = Some(params);
    w.checks.extend(checks);
    Ok(w)
}
