//! Validated automorphisms of the affine plane.

use crate::algebra::{Degree, Ring, Scalar, ScalarField};
use crate::amalgam::{factor_map, AmalgamWord};
use crate::error::{Error, Result};

use super::infinity::{image_point_at_infinity, indeterminacy_point, InfinityPoint};
use super::map::Endo;

/// An automorphism of the plane over K with its inverse and reduced word.
///
/// Construction factors the map into affine and triangular pieces and checks
/// that the word recomposes to the input exactly; the inverse is the
/// recomposition of the inverted word.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneAut {
    forward: Endo<ScalarField>,
    inverse: Endo<ScalarField>,
    jacobian: Scalar,
    word: AmalgamWord<ScalarField>,
}

impl PlaneAut {
    pub fn new(forward: Endo<ScalarField>) -> Result<Self> {
        if forward.nvars() != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: forward.nvars(),
            });
        }
        let jac = forward.jacobian();
        if !jac.is_constant() || jac.is_zero() {
            return Err(Error::NotInvertible(format!("Jacobian is {jac}")));
        }
        let jacobian = jac.constant_term();
        let word = factor_map(&forward)?;
        let inverse = word.inverse().recompose();
        debug_assert_eq!(forward.degree(), inverse.degree());
        debug_assert_eq!(
            forward.degree().or_zero() as u64,
            word.jonquieres_degree_product().max(1)
        );
        Ok(PlaneAut {
            forward,
            inverse,
            jacobian,
            word,
        })
    }

    pub fn from_word(word: &AmalgamWord<ScalarField>) -> Result<Self> {
        Self::new(word.recompose())
    }

    pub fn identity(field: &ScalarField) -> Self {
        Self::new(Endo::identity(field, 2)).expect("identity")
    }

    pub fn field(&self) -> ScalarField {
        *self.forward.ring()
    }

    pub fn forward(&self) -> &Endo<ScalarField> {
        &self.forward
    }

    pub fn inverse(&self) -> &Endo<ScalarField> {
        &self.inverse
    }

    pub fn jacobian(&self) -> &Scalar {
        &self.jacobian
    }

    pub fn is_special(&self) -> bool {
        self.field().is_one(&self.jacobian)
    }

    pub fn word(&self) -> &AmalgamWord<ScalarField> {
        &self.word
    }

    pub fn degree(&self) -> Degree {
        self.forward.degree()
    }

    pub fn inverted(&self) -> PlaneAut {
        let field = self.field();
        PlaneAut {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
            jacobian: field.inv(&self.jacobian).expect("unit"),
            word: self.word.inverse().reduce(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &PlaneAut) -> Result<PlaneAut> {
        let field = self.field();
        let forward = self.forward.compose(&other.forward)?;
        let inverse = other.inverse.compose(&self.inverse)?;
        let word = self.word.concat(&other.word).reduce();
        let jacobian = field.mul(&self.jacobian, &other.jacobian);
        Ok(PlaneAut {
            forward,
            inverse,
            jacobian,
            word,
        })
    }

    /// `self^k` for any integer `k`.
    pub fn power(&self, k: i64) -> PlaneAut {
        let base = if k < 0 { self.inverted() } else { self.clone() };
        let mut acc = PlaneAut::identity(&self.field());
        for _ in 0..k.unsigned_abs() {
            acc = base.compose(&acc).expect("same field");
        }
        acc
    }

    /// `h ∘ self ∘ h⁻¹`.
    pub fn conjugate_by(&self, h: &PlaneAut) -> Result<PlaneAut> {
        h.compose(self)?.compose(&h.inverted())
    }

    pub fn indeterminacy_point(&self) -> Result<InfinityPoint> {
        indeterminacy_point(&self.forward)
    }

    pub fn image_point_at_infinity(&self) -> Result<InfinityPoint> {
        image_point_at_infinity(&self.forward)
    }

    /// `deg(f ∘ f)`, read off the reduced word of `f ∘ f`: the degree of a
    /// reduced word is the product of its triangular degrees.
    pub fn square_degree(&self) -> Degree {
        Degree::Finite(self.word.concat(&self.word).reduce().jonquieres_degree_product() as u32)
    }

    /// Bounded degree sequence, decided by `deg(f^2) ≤ deg(f)`.
    pub fn is_algebraic(&self) -> bool {
        self.square_degree() <= self.degree()
    }

    /// `deg f ≥ 2` and `deg(f^2) = deg(f)^2`.
    pub fn is_dynamically_regular(&self) -> bool {
        self.regularity().regular
    }

    /// Degree criterion plus the comparison of the two indeterminacy points
    /// when both are rational.
    pub fn regularity(&self) -> RegularityReport {
        let d = self.degree().or_zero();
        let sq = self.square_degree();
        let regular = d >= 2 && sq == Degree::Finite(d * d);
        let points = if d >= 2 {
            match (indeterminacy_point(&self.forward), indeterminacy_point(&self.inverse)) {
                (Ok(a), Ok(b)) => Some((a, b)),
                _ => None,
            }
        } else {
            None
        };
        let points_agree = points.as_ref().map(|(a, b)| (a != b) == regular);
        RegularityReport {
            regular,
            degree: self.degree(),
            square_degree: sq,
            points,
            points_agree,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegularityReport {
    pub regular: bool,
    pub degree: Degree,
    pub square_degree: Degree,
    /// `(I_f, I_{f⁻¹})` when both are rational.
    pub points: Option<(InfinityPoint, InfinityPoint)>,
    /// Whether the point comparison agrees with the degree criterion.
    pub points_agree: Option<bool>,
}

/// Outcome of comparing `deg(g ∘ f)` with `deg g · deg f`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplicativityReport {
    pub multiplicative: bool,
    pub degree_of_composite: Degree,
    pub product_of_degrees: u64,
    /// `(X_f, I_g)`, or the error met while computing them.
    pub witness: std::result::Result<(InfinityPoint, InfinityPoint), Error>,
    /// Whether `X_f ≠ I_g` agrees with the degree comparison.
    pub consistent: Option<bool>,
}

/// Decide `deg(g ∘ f) = deg g · deg f` directly and by comparing `X_f` with `I_g`.
pub fn degree_multiplicativity_test(f: &PlaneAut, g: &PlaneAut) -> Result<MultiplicativityReport> {
    let (df, dg) = (f.degree().or_zero(), g.degree().or_zero());
    if df < 2 || dg < 2 {
        return Err(Error::DegreeOne);
    }
    let comp = g.forward.compose(&f.forward)?.degree();
    let product = df as u64 * dg as u64;
    let multiplicative = comp == Degree::Finite(product as u32);
    let witness = f
        .image_point_at_infinity()
        .and_then(|x| Ok((x, g.indeterminacy_point()?)));
    let consistent = witness.as_ref().ok().map(|(x, i)| (x != i) == multiplicative);
    Ok(MultiplicativityReport {
        multiplicative,
        degree_of_composite: comp,
        product_of_degrees: product,
        witness,
        consistent,
    })
}
