//! Points on the hyperplane at infinity and the behavior of plane maps there.

use std::fmt;

use crate::algebra::{Degree, MultiPoly, Ring, Scalar, ScalarField, UniPoly};
use crate::error::{Error, Result};

use super::map::Endo;

/// A point `[0 : y1 : ... : yn]` with the first nonzero `yi` equal to 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct InfinityPoint {
    coords: Vec<Scalar>,
}

impl InfinityPoint {
    /// Normalize `[0 : y]`; `None` if `y` is zero.
    pub fn new(field: &ScalarField, y: &[Scalar]) -> Option<Self> {
        let pivot = y.iter().find(|c| !field.is_zero(c))?;
        let inv = field.inv(pivot).expect("nonzero");
        Some(InfinityPoint {
            coords: y.iter().map(|c| field.mul(c, &inv)).collect(),
        })
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    /// Image of the point under a linear map given by the degree-1 part of
    /// an affine map (translations act trivially at infinity).
    pub fn apply_linear(&self, map: &Endo<ScalarField>) -> Option<InfinityPoint> {
        let field = *map.ring();
        let lin = Endo::new(map.components().iter().map(|c| c.homogeneous_part(1)).collect()).ok()?;
        InfinityPoint::new(&field, &lin.eval(&self.coords))
    }
}

impl fmt::Display for InfinityPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[0")?;
        for c in &self.coords {
            write!(f, ":{c}")?;
        }
        write!(f, "]")
    }
}

/// Dehomogenize a binary form of degree `d` at `y2 = 1`, returning the
/// univariate polynomial in `u = y1/y2`.
fn dehomogenize(form: &MultiPoly<ScalarField>, d: u32) -> UniPoly<ScalarField> {
    let field = *form.ring();
    let mut v = vec![field.zero(); d as usize + 1];
    for (m, c) in form.terms() {
        v[m.exponents()[0] as usize] = c.clone();
    }
    UniPoly::new(&field, v)
}

/// The single root of `g = lead · (u − r)^k`, or an error if `g` is not of
/// that shape over the field.
fn unique_root(g: &UniPoly<ScalarField>) -> Result<Scalar> {
    let field = *g.ring();
    let k = g.degree().or_zero() as usize;
    let lead = g.lead().expect("nonzero").clone();
    let check = |r: &Scalar| {
        let lin = UniPoly::new(&field, vec![field.neg(r), field.one()]);
        lin.pow(k as u32).scale(&lead) == *g
    };
    let kk = field.from_i64(k as i64);
    if !field.is_zero(&kk) {
        // lead·(u − r)^k has u^{k-1} coefficient −k·r·lead.
        let r = field.neg(&field.div(&g.coeff(k - 1), &field.mul(&kk, &lead)).expect("unit"));
        if check(&r) {
            return Ok(r);
        }
    } else if let Some(all) = field.elements() {
        if let Some(r) = all.into_iter().find(|r| check(r)) {
            return Ok(r);
        }
    }
    Err(Error::FieldExtension(format!(
        "common factor {} has no rational root",
        show(g)
    )))
}

fn show(g: &UniPoly<ScalarField>) -> String {
    g.to_multi(1, 0).to_string().replace("x1", "u")
}

/// The indeterminacy point of a plane map of degree ≥ 2: the common zero at
/// infinity of the two top-degree forms.
pub fn indeterminacy_point(f: &Endo<ScalarField>) -> Result<InfinityPoint> {
    if f.nvars() != 2 {
        return Err(Error::Unsupported(
            "indeterminacy point is computed for plane maps only".into(),
        ));
    }
    let d = match f.degree() {
        Degree::Finite(d) if d >= 2 => d,
        _ => return Err(Error::DegreeOne),
    };
    let field = *f.ring();
    let top = f.highest_part();
    let forms: Vec<_> = top.components().iter().filter(|c| !c.is_zero()).collect();
    // Multiplicity of the root [1:0] is the drop in degree after setting y2 = 1.
    let polys: Vec<_> = forms.iter().map(|c| dehomogenize(c, d)).collect();
    let at_y1 = polys
        .iter()
        .map(|p| d - p.degree().or_zero())
        .min()
        .expect("some top form");
    let g = polys.iter().fold(UniPoly::zero(&field), |acc, p| acc.gcd(p));
    let affine_roots = g.degree().or_zero();
    match (at_y1 > 0, affine_roots > 0) {
        (true, false) => Ok(InfinityPoint::new(&field, &[field.one(), field.zero()]).expect("nonzero")),
        (false, true) => {
            let r = unique_root(&g)?;
            Ok(InfinityPoint::new(&field, &[r, field.one()]).expect("nonzero"))
        }
        (true, true) => Err(Error::Unsupported(
            "top forms have several common zeros at infinity (not an automorphism)".into(),
        )),
        (false, false) => Err(Error::Unsupported(
            "top forms have no common zero at infinity (not an automorphism)".into(),
        )),
    }
}

/// Deterministic sample ladder `(1,0), (1,1), (1,2), ...` in the plane,
/// followed by `(0,1)` for finite fields.
fn plane_ladder(field: &ScalarField) -> Vec<[Scalar; 2]> {
    let n = match field {
        ScalarField::Prime(p) => (*p).min(64),
        ScalarField::Rationals => 64,
    };
    let mut pts: Vec<[Scalar; 2]> = (0..n).map(|k| [field.one(), field.from_i64(k as i64)]).collect();
    pts.push([field.zero(), field.one()]);
    pts
}

/// The image point at infinity of a plane map of degree ≥ 2: the common
/// value of the top-degree part at sample points outside the
/// indeterminacy point. Two agreeing samples are required.
pub fn image_point_at_infinity(f: &Endo<ScalarField>) -> Result<InfinityPoint> {
    if f.nvars() != 2 {
        return Err(Error::Unsupported("image point is computed for plane maps only".into()));
    }
    if !matches!(f.degree(), Degree::Finite(d) if d >= 2) {
        return Err(Error::DegreeOne);
    }
    let field = *f.ring();
    let top = f.highest_part();
    let mut seen: Vec<InfinityPoint> = Vec::new();
    for y in plane_ladder(&field) {
        if let Some(p) = InfinityPoint::new(&field, &top.eval(&y)) {
            if let Some(prev) = seen.first() {
                if *prev != p {
                    return Err(Error::Unsupported(
                        "top part does not contract the line at infinity (not an automorphism)".into(),
                    ));
                }
            }
            seen.push(p);
            if seen.len() == 2 {
                return Ok(seen.swap_remove(0));
            }
        }
    }
    Err(Error::Unsupported(
        "fewer than two sample points avoid the indeterminacy point".into(),
    ))
}
