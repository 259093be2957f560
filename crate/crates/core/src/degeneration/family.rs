//! Families of maps with coefficients in K[t, t⁻¹].

use crate::algebra::{LaurentRing, LaurentScalar, Ring, Scalar, ScalarField, Valuation};
use crate::amalgam::{elementary_factors, AmalgamWord};
use crate::endo::{Endo, InfinityPoint, PlaneAut};
use crate::error::{Error, Result};

pub type TFamily = Endo<LaurentRing>;

/// Minimum valuation over all coefficients.
pub fn family_valuation(alpha: &TFamily) -> Valuation {
    alpha
        .components()
        .iter()
        .flat_map(|c| c.terms().map(|(_, a)| a.valuation()))
        .min()
        .unwrap_or(Valuation::NegInfinity)
}

/// Specialization at `t = 0`; errors with ν when there is a pole.
pub fn family_value_at_zero(alpha: &TFamily) -> Result<Endo<ScalarField>> {
    let field = alpha.ring().base;
    match family_valuation(alpha) {
        Valuation::Finite(v) if v < 0 => Err(Error::Pole(Valuation::Finite(v))),
        _ => alpha.try_map_coefficients(&field, |c| c.value_at_zero(&field)),
    }
}

/// Specialization at `t = c ≠ 0`.
pub fn family_at(alpha: &TFamily, c: &Scalar) -> Result<Endo<ScalarField>> {
    let field = alpha.ring().base;
    if field.is_zero(c) {
        return family_value_at_zero(alpha);
    }
    Ok(alpha.map_coefficients(&field, |a| a.evaluate(&field, c)))
}

/// View a map over K as a constant family.
pub fn lift(map: &Endo<ScalarField>) -> TFamily {
    let ring = LaurentRing::new(*map.ring());
    map.map_coefficients(&ring, |c| ring.embed(c))
}

/// Substitute `t ↦ t^m`.
pub fn substitute_power(alpha: &TFamily, m: i64) -> TFamily {
    alpha.map_coefficients(alpha.ring(), |c| c.substitute_power(m))
}

/// `(t^a x1, t^b x2)`.
pub fn diagonal(field: &ScalarField, a: i64, b: i64) -> TFamily {
    let ring = LaurentRing::new(*field);
    let x = |i: usize, k: i64| crate::algebra::MultiPoly::var(&ring, 2, i).scale(&ring.t_pow(k));
    Endo::new(vec![x(0, a), x(1, b)]).expect("plane map")
}

/// Inverse of a plane family, found by factoring over K[t, t⁻¹] and checked
/// by composition on both sides.
pub fn family_inverse(alpha: &TFamily) -> Result<TFamily> {
    let ring = *alpha.ring();
    let factors = elementary_factors(alpha)?;
    let inverse = AmalgamWord::new(&ring, factors).inverse().recompose();
    if !alpha.compose(&inverse)?.is_identity() || !inverse.compose(alpha)?.is_identity() {
        return Err(Error::NotInvertible("family inverse failed to verify".into()));
    }
    Ok(inverse)
}

/// `α⁻¹ ∘ f ∘ α` for a map over K.
pub fn conjugate_family(f: &Endo<ScalarField>, alpha: &TFamily) -> Result<TFamily> {
    family_inverse(alpha)?.compose(&lift(f))?.compose(alpha)
}

/// The reduced tuple `α̃ = (t^m α)(0)` for `m = −ν(α) > 0`, and the
/// normalized images `[0 : α̃(y)]` of sample points.
#[derive(Clone, Debug, PartialEq)]
pub struct XAlphaSet {
    pub pole_order: i64,
    pub reduced: Endo<ScalarField>,
    pub points: Vec<InfinityPoint>,
}

/// Bound on the number of sample points tried.
pub const SAMPLE_LIMIT: usize = 64;

fn sample_points(field: &ScalarField, n: usize) -> Vec<Vec<Scalar>> {
    let per_axis: Vec<Scalar> = match field.elements() {
        Some(all) if all.len() <= 5 => all,
        _ => (-2..=2).map(|k| field.from_i64(k)).collect(),
    };
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                per_axis.iter().map(move |c| {
                    let mut q = p.clone();
                    q.push(c.clone());
                    q
                })
            })
            .collect();
    }
    out.truncate(SAMPLE_LIMIT);
    out
}

pub fn x_alpha(alpha: &TFamily) -> Result<XAlphaSet> {
    let field = alpha.ring().base;
    let m = match family_valuation(alpha) {
        Valuation::Finite(v) if v < 0 => -v,
        v => return Err(Error::NoPole(v)),
    };
    let scaled = alpha.map_coefficients(alpha.ring(), |c| c.shift(m));
    let reduced = family_value_at_zero(&scaled)?;
    let mut points: Vec<InfinityPoint> = Vec::new();
    for y in sample_points(&field, alpha.nvars()) {
        if let Some(p) = InfinityPoint::new(&field, &reduced.eval(&y)) {
            if !points.contains(&p) {
                points.push(p);
            }
        }
    }
    Ok(XAlphaSet {
        pole_order: m,
        reduced,
        points,
    })
}

/// Sampled hypothesis `X_α ⊄ I_f` against the valuations of `α⁻¹ f α` and
/// `α⁻¹ f⁻¹ α`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolePropagation {
    pub indeterminacy: InfinityPoint,
    pub x_alpha: XAlphaSet,
    /// Some sampled point of `X_α` differs from `I_f`.
    pub hypothesis: bool,
    pub conjugate_valuation: Valuation,
    pub inverse_conjugate_valuation: Valuation,
}

impl PolePropagation {
    /// The hypothesis forces a pole of `α⁻¹ f α`.
    pub fn conclusion_holds(&self) -> bool {
        !self.hypothesis || self.conjugate_valuation.is_pole()
    }

    /// One of the two conjugates has a pole.
    pub fn dichotomy_holds(&self) -> bool {
        self.conjugate_valuation.is_pole() || self.inverse_conjugate_valuation.is_pole()
    }
}

pub fn pole_propagation_check(f: &PlaneAut, alpha: &TFamily) -> Result<PolePropagation> {
    if f.degree().or_zero() < 2 {
        return Err(Error::DegreeOne);
    }
    if alpha.ring().base != f.field() {
        return Err(Error::RingMismatch);
    }
    let x_alpha = x_alpha(alpha)?;
    let indeterminacy = f.indeterminacy_point()?;
    let hypothesis = x_alpha.points.iter().any(|p| *p != indeterminacy);
    let inv = family_inverse(alpha)?;
    let conj = inv.compose(&lift(f.forward()))?.compose(alpha)?;
    let conj_inv = inv.compose(&lift(f.inverse()))?.compose(alpha)?;
    Ok(PolePropagation {
        indeterminacy,
        x_alpha,
        hypothesis,
        conjugate_valuation: family_valuation(&conj),
        inverse_conjugate_valuation: family_valuation(&conj_inv),
    })
}

/// `c t^k` as a coefficient.
pub(crate) fn tc(field: &ScalarField, c: Scalar, k: i64) -> LaurentScalar {
    LaurentScalar::monomial(field, c, k)
}
