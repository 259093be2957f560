//! Representatives of the conjugacy classes of algebraic special automorphisms.

use std::fmt;

use crate::algebra::{Ring, Scalar, ScalarField, UniPoly};
use crate::amalgam::{henon_normalize, AffineFactor, AmalgamWord, Factor, JonquieresFactor, Normalized};
use crate::endo::PlaneAut;
use crate::error::{Error, Result};

use super::charp::{compress, expand, split_difference};

pub type Poly = UniPoly<ScalarField>;

/// Family representative. Polynomials are stored compressed: `RootOfUnity`
/// stands for `(ζ x1 + x2^{m−1} P(x2^m), ζ⁻¹ x2)` and `Translation` for
/// `(x1 + x2^{p−1} P(x2^p), x2 + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalForm {
    /// `(a x1, a⁻¹ x2)`, `a ≠ 0, 1`.
    Diagonal {
        a: Scalar,
    },
    /// `(x1 + P(x2), x2)`.
    Elementary {
        p: Poly,
    },
    RootOfUnity {
        zeta: Scalar,
        m: u64,
        p: Poly,
    },
    /// In characteristic 0, `P = 0`.
    Translation {
        p: Poly,
    },
}

impl NormalForm {
    pub fn family(&self) -> &'static str {
        match self {
            NormalForm::Diagonal { .. } => "I",
            NormalForm::Elementary { .. } => "II",
            NormalForm::RootOfUnity { .. } => "III",
            NormalForm::Translation { .. } => "IV",
        }
    }

    pub fn to_factor(&self, field: &ScalarField) -> JonquieresFactor<ScalarField> {
        let one = field.one();
        match self {
            NormalForm::Diagonal { a } => JonquieresFactor::new(
                field,
                a.clone(),
                Poly::zero(field),
                field.inv(a).expect("unit"),
                field.zero(),
            ),
            NormalForm::Elementary { p } => JonquieresFactor::elementary(field, p.clone()),
            NormalForm::RootOfUnity { zeta, m, p } => JonquieresFactor::new(
                field,
                zeta.clone(),
                expand(p, *m as usize),
                field.inv(zeta).expect("unit"),
                field.zero(),
            ),
            NormalForm::Translation { p } => {
                let v = match field.characteristic() {
                    0 => Poly::zero(field),
                    c => expand(p, c as usize),
                };
                JonquieresFactor::new(field, one.clone(), v, one, field.one())
            }
        }
    }

    pub fn to_aut(&self, field: &ScalarField) -> PlaneAut {
        PlaneAut::new(self.to_factor(field).to_endo()).expect("triangular maps are invertible")
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalForm::Diagonal { a } => write!(f, "I(a={a})"),
            NormalForm::Elementary { p } => write!(f, "II(P={})", show(p)),
            NormalForm::RootOfUnity { zeta, m, p } => write!(f, "III(zeta={zeta}, m={m}, P={})", show(p)),
            NormalForm::Translation { p } => write!(f, "IV(P={})", show(p)),
        }
    }
}

fn show(p: &Poly) -> String {
    p.to_multi(1, 0).to_string().replace("x1", "x")
}

/// `representative = conjugator ∘ f ∘ conjugator⁻¹`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalFormResult {
    pub form: NormalForm,
    pub representative: PlaneAut,
    pub conjugator: PlaneAut,
}

fn jonq(field: &ScalarField, a: Scalar, p: Poly, b: Scalar, c: Scalar) -> Factor<ScalarField> {
    Factor::Jonquieres(JonquieresFactor::new(field, a, p, b, c))
}

pub fn normal_form(f: &PlaneAut) -> Result<NormalFormResult> {
    if !f.is_special() {
        return Err(Error::NotSpecial(f.jacobian().to_string()));
    }
    if !f.is_algebraic() {
        return Err(Error::NotAlgebraic);
    }
    let field = f.field();
    let (j, h1) = match henon_normalize(f.word())? {
        Normalized::Triangular {
            representative,
            conjugator,
        } => (representative, conjugator),
        Normalized::Henon(_) => return Err(Error::NotAlgebraic),
    };
    // steps[k] applied after steps[k-1]; the total conjugator is steps.rev() ∘ h1
    let mut steps: Vec<Factor<ScalarField>> = Vec::new();
    let one = field.one();
    let zero = field.zero();
    let a = j.a.clone();
    let form = if !field.is_one(&a) {
        let ainv = field.inv(&a).expect("unit");
        // (x1, x2 + s) with s = ac/(1 − a) moves the fixed line to x2 = 0
        let s = field.div(&field.mul(&a, &j.c), &field.sub(&one, &a)).expect("a ≠ 1");
        let p_hat = j.p.shift(&field.neg(&s));
        if !field.is_zero(&s) {
            steps.push(jonq(&field, one.clone(), Poly::zero(&field), one.clone(), s));
        }
        // (x1 + R(x2), x2) changes P(y) into P(y) − a R(y) + R(a⁻¹ y)
        let mut kill = vec![zero.clone(); p_hat.coeffs().len()];
        let mut keep = vec![zero.clone(); p_hat.coeffs().len()];
        for (n, pn) in p_hat.coeffs().iter().enumerate() {
            if field.is_zero(pn) {
                continue;
            }
            let gap = field.sub(&a, &field.pow(&ainv, n as u64));
            match field.div(pn, &gap) {
                Some(r) => kill[n] = r,
                None => keep[n] = pn.clone(),
            }
        }
        let kill = Poly::new(&field, kill);
        if !kill.is_zero() {
            steps.push(jonq(&field, one.clone(), kill, one.clone(), zero.clone()));
        }
        let keep = Poly::new(&field, keep);
        if keep.is_zero() {
            NormalForm::Diagonal { a }
        } else {
            let m = field
                .multiplicative_order(&a)
                .expect("a surviving term forces finite order");
            NormalForm::RootOfUnity {
                zeta: a,
                m,
                p: compress_order(&keep, m as usize),
            }
        }
    } else if field.is_zero(&j.c) && j.p.degree().finite() == Some(0) {
        // (x1 + c, x2) becomes (x1, x2 + 1) under (−c x2, c⁻¹ x1)
        let c = j.p.coeff(0);
        let k = [
            zero.clone(),
            field.neg(&c),
            field.inv(&c).expect("nonzero"),
            zero.clone(),
            zero.clone(),
            zero.clone(),
        ];
        steps.push(Factor::Affine(AffineFactor::new(&field, k)));
        NormalForm::Translation { p: Poly::zero(&field) }
    } else if field.is_zero(&j.c) {
        NormalForm::Elementary { p: j.p.clone() }
    } else {
        let c = j.c.clone();
        let cinv = field.inv(&c).expect("nonzero");
        steps.push(jonq(&field, c.clone(), Poly::zero(&field), cinv, zero.clone()));
        // (x1 + Q(x2), x2 + 1) with Q(y) = c P(c y)
        let q = j.p.compose_linear(&c, &zero).scale(&c);
        // (x1 + R(x2), x2) adds δ(R) to Q
        let split = split_difference(&q);
        if !split.r.is_zero() {
            steps.push(jonq(&field, one.clone(), split.r.neg(), one.clone(), zero.clone()));
        }
        NormalForm::Translation { p: compress(&split.v) }
    };
    let mut factors: Vec<Factor<ScalarField>> = steps.into_iter().rev().collect();
    factors.extend(h1.into_factors());
    let conjugator = PlaneAut::from_word(&AmalgamWord::new(&field, factors))?;
    let representative = form.to_aut(&field);
    if !super::decide::conjugates(f, &representative, &conjugator)? {
        return Err(Error::Unsupported("normal form conjugation failed to verify".into()));
    }
    Ok(NormalFormResult {
        form,
        representative,
        conjugator,
    })
}

/// `P` with `poly = x^{m−1} P(x^m)`.
fn compress_order(poly: &Poly, m: usize) -> Poly {
    let field = *poly.ring();
    let coeffs = poly.coeffs().iter().skip(m - 1).step_by(m).cloned().collect();
    let p = Poly::new(&field, coeffs);
    debug_assert_eq!(expand(&p, m), *poly);
    p
}

/// Affine maps used as conjugators by the decision procedure.
pub(crate) fn affine_aut(field: &ScalarField, coeffs: [Scalar; 6]) -> PlaneAut {
    PlaneAut::new(AffineFactor::new(field, coeffs).to_endo()).expect("invertible affine map")
}
