//! Words in the affine and triangular generators, their reduction, and the
//! factorization of a plane automorphism into such a word.

use std::fmt;

use crate::algebra::{Degree, Ring, UniPoly};
use crate::endo::Endo;
use crate::error::{Error, Result};

use super::factor::{AffineFactor, Factor, JonquieresFactor, Tag};

/// A product `w[0] ∘ w[1] ∘ ... ∘ w[k-1]` of affine and triangular factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmalgamWord<R: Ring> {
    ring: R,
    factors: Vec<Factor<R>>,
    reduced: bool,
}

impl<R: Ring> AmalgamWord<R> {
    pub fn new(ring: &R, factors: Vec<Factor<R>>) -> Self {
        AmalgamWord {
            ring: ring.clone(),
            factors,
            reduced: false,
        }
    }

    pub fn identity(ring: &R) -> Self {
        AmalgamWord {
            ring: ring.clone(),
            factors: vec![],
            reduced: true,
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn factors(&self) -> &[Factor<R>] {
        &self.factors
    }

    pub fn into_factors(self) -> Vec<Factor<R>> {
        self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn tags(&self) -> Vec<Tag> {
        self.factors.iter().map(Factor::tag).collect()
    }

    /// Product of the degrees of the triangular factors.
    pub fn jonquieres_degree_product(&self) -> u64 {
        self.factors.iter().map(|f| f.degree() as u64).product()
    }

    pub fn recompose(&self) -> Endo<R> {
        let maps: Vec<_> = self.factors.iter().map(Factor::to_endo).collect();
        Endo::compose_all(&self.ring, 2, &maps).expect("plane maps over one ring")
    }

    pub fn inverse(&self) -> Self {
        AmalgamWord {
            ring: self.ring.clone(),
            factors: self.factors.iter().rev().map(Factor::inverse).collect(),
            reduced: self.reduced,
        }
    }

    /// `self ∘ other`, unreduced.
    pub fn concat(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Self::new(&self.ring, factors)
    }

    /// Merge adjacent factors of the same kind, absorb factors lying in the
    /// intersection into a neighbor, then bring every factor but the last to
    /// a fixed representative of its left coset modulo the intersection.
    pub fn reduce(&self) -> Self {
        let mut out: Vec<Factor<R>> = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            push_merged(&mut out, f.clone());
        }
        let n = out.len();
        for i in 0..n.saturating_sub(1) {
            let (rep, rest) = coset_split(&out[i]);
            out[i] = rep;
            let next = &out[i + 1];
            let rest = rest.retag(next.tag()).expect("intersection element");
            out[i + 1] = rest.compose_same(next).expect("same tag");
        }
        AmalgamWord {
            ring: self.ring.clone(),
            factors: out,
            reduced: true,
        }
    }
}

fn push_merged<R: Ring>(out: &mut Vec<Factor<R>>, f: Factor<R>) {
    if f.is_identity() {
        return;
    }
    let Some(last) = out.last() else {
        out.push(f);
        return;
    };
    let tag = if last.tag() == f.tag() || f.in_intersection() {
        Some(last.tag())
    } else if last.in_intersection() {
        Some(f.tag())
    } else {
        None
    };
    match tag {
        Some(tag) => {
            let last = out.pop().expect("nonempty");
            let l = last.retag(tag).expect("retaggable");
            let r = f.retag(tag).expect("retaggable");
            push_merged(out, l.compose_same(&r).expect("same tag"));
        }
        None => out.push(f),
    }
}

/// Write a factor outside the intersection as `rep ∘ rest`, where `rest`
/// lies in the intersection and `rep` depends only on the left coset.
///
/// Affine representatives are `(w x1 − x2, x1)`; triangular ones are
/// `(x1 + P0(x2), x2)` with `P0` free of terms of degree below 2.
fn coset_split<R: Ring>(f: &Factor<R>) -> (Factor<R>, Factor<R>) {
    match f {
        Factor::Affine(g) => {
            let r = &g.ring;
            let ci = r.unit_inverse(&g.c).expect("outside the intersection, c is a unit");
            let w = r.mul(&g.a, &ci);
            let rep = AffineFactor::new(r, [w.clone(), r.neg(&r.one()), r.one(), r.zero(), r.zero(), r.zero()]);
            let rest = AffineFactor::new(
                r,
                [
                    g.c.clone(),
                    g.d.clone(),
                    r.zero(),
                    r.mul(&g.det(), &ci),
                    g.f.clone(),
                    r.sub(&r.mul(&w, &g.f), &g.e),
                ],
            );
            (Factor::Affine(rep), Factor::Affine(rest))
        }
        Factor::Jonquieres(j) => {
            let r = &j.ring;
            let bi = r.unit_inverse(&j.b).expect("unit");
            // P((z − c)/b) split into its linear part s1 z + s0 and the rest.
            let q = j.p.compose_linear(&bi, &r.neg(&r.mul(&j.c, &bi)));
            let (s0, s1) = (q.coeff(0), q.coeff(1));
            let mut high = q.coeffs().to_vec();
            for c in high.iter_mut().take(2) {
                *c = r.zero();
            }
            let rep = JonquieresFactor::elementary(r, UniPoly::new(r, high));
            let beta = r.mul(&s1, &j.b);
            let eps = r.add(&s0, &r.mul(&s1, &j.c));
            let rest = JonquieresFactor::new(
                r,
                j.a.clone(),
                UniPoly::new(r, vec![eps, beta]),
                j.b.clone(),
                j.c.clone(),
            );
            (Factor::Jonquieres(rep), Factor::Jonquieres(rest))
        }
    }
}

impl<R: Ring> fmt::Display for AmalgamWord<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// Factor a plane automorphism with constant unit Jacobian into affine and
/// elementary triangular maps by repeatedly lowering the degree.
///
/// At each step the top-degree part is `(c1 M, c2 M)` for one form `M`. An
/// affine map `s` kills the second top part; then the first top part must be
/// a multiple of a power of the second, which an elementary map removes.
pub fn elementary_factors<R: Ring>(map: &Endo<R>) -> Result<Vec<Factor<R>>> {
    if map.nvars() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: map.nvars(),
        });
    }
    let r = map.ring().clone();
    let fail = |why: &str| Error::NotInvertible(why.to_string());
    let mut left: Vec<Factor<R>> = Vec::new();
    let mut cur = map.clone();
    while let Degree::Finite(d) = cur.degree() {
        if d < 2 {
            break;
        }
        let top = cur.highest_part();
        let (a1, a2) = (top.component(0), top.component(1));
        let (m, _) = if a1.is_zero() {
            a2.leading_term()
        } else {
            a1.leading_term()
        }
        .expect("degree d");
        let exps = m.exponents().to_vec();
        let (c1, c2) = (a1.coefficient(&exps), a2.coefficient(&exps));
        if a1.scale(&c2) != a2.scale(&c1) {
            return Err(fail("top-degree parts are not proportional"));
        }
        let s = if r.is_zero(&c2) {
            None
        } else if r.is_zero(&c1) {
            Some(AffineFactor::swap(&r))
        } else {
            let ratio = r
                .try_divide(&c2, &c1)
                .ok_or_else(|| fail("leading coefficient is not a unit"))?;
            Some(AffineFactor::shear(&r, r.neg(&ratio)))
        };
        let h = match &s {
            Some(s) => s.to_endo().compose(&cur)?,
            None => cur.clone(),
        };
        let e = match h.component(1).degree() {
            Degree::Finite(e) if e >= 1 && e < d && d % e == 0 => e,
            _ => return Err(fail("degrees of the components are incompatible")),
        };
        let k = d / e;
        let top1 = h.component(0).homogeneous_part(d);
        let pw = h.component(1).homogeneous_part(e).pow(k);
        let (lm, lc) = pw.leading_term().expect("nonzero power");
        let lambda = r
            .try_divide(&top1.coefficient(lm.exponents()), lc)
            .ok_or_else(|| fail("leading coefficient is not a unit"))?;
        if top1 != pw.scale(&lambda) {
            return Err(fail("top part is not a power of the second component"));
        }
        let lower = |sign: bool| {
            let c = if sign { lambda.clone() } else { r.neg(&lambda) };
            JonquieresFactor::elementary(&r, UniPoly::monomial(&r, c, k as usize))
        };
        let jm = lower(false);
        cur = jm.to_endo().compose(&h)?;
        if let Some(s) = s {
            left.push(Factor::Affine(s.inverse()));
        }
        left.push(Factor::Jonquieres(lower(true)));
    }
    let last = AffineFactor::from_endo(&cur).ok_or_else(|| fail("remaining affine part is not invertible"))?;
    left.push(Factor::Affine(last));
    Ok(left)
}

/// Reduced word of a plane automorphism; the recomposition is checked.
pub fn factor_map<R: Ring>(map: &Endo<R>) -> Result<AmalgamWord<R>> {
    let raw = elementary_factors(map)?;
    let word = AmalgamWord::new(map.ring(), raw).reduce();
    if word.recompose() != *map {
        return Err(Error::NotInvertible("factorization does not recompose".into()));
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::ScalarField;
    use crate::algebra::text::{parse_components, ParsedComponents};

    fn endo(src: &str, field: &ScalarField) -> Endo<ScalarField> {
        match parse_components(src, field).unwrap() {
            ParsedComponents::Plain(v) => Endo::new(v).unwrap(),
            ParsedComponents::Family(_) => panic!("family"),
        }
    }

    fn show(w: &AmalgamWord<ScalarField>) -> String {
        w.to_string()
    }

    #[test]
    fn henon_factorization() {
        let q = ScalarField::Rationals;
        let w = factor_map(&endo("(-x2, x1 + x2^2)", &q)).unwrap();
        assert_eq!(show(&w), "[A:(-x2, x1), J:(x2^2 + x1, x2)]");
    }

    #[test]
    fn affine_and_triangular_inputs() {
        let q = ScalarField::Rationals;
        let w = factor_map(&endo("(x1 + 2*x2 + 1, x2 - 3)", &q)).unwrap();
        assert_eq!(w.len(), 1);
        let w = factor_map(&endo("(2*x1 + x2^3, 1/2*x2 + 1)", &q)).unwrap();
        assert_eq!(w.tags(), vec![Tag::Jonquieres]);
    }

    #[test]
    fn reduction_rules() {
        let q = ScalarField::Rationals;
        let a = Factor::Affine(AffineFactor::swap(&q));
        let aa = AmalgamWord::new(&q, vec![a.clone(), a.clone()]).reduce();
        assert_eq!(aa.len(), 1);
        assert_eq!(aa.recompose(), endo("(-x1, -x2)", &q));

        let j_aff = Factor::Jonquieres(JonquieresFactor::elementary(&q, UniPoly::x(&q)));
        let w = AmalgamWord::new(&q, vec![j_aff, a.clone()]).reduce();
        assert_eq!(w.tags(), vec![Tag::Affine]);
        assert_eq!(w.recompose(), endo("(x2 - x1, -x1)", &q));

        let already = factor_map(&endo("(-x2, x1 + x2^2)", &q)).unwrap();
        assert_eq!(already.reduce(), already);
    }

    #[test]
    fn cubic_conjugate_factors() {
        let q = ScalarField::Rationals;
        let j = endo("(x1 + x2^3, x2)", &q);
        let jinv = endo("(x1 - x2^3, x2)", &q);
        let h = endo("(-x2, x1 + x2^2)", &q);
        let f = jinv.compose(&h).unwrap().compose(&j).unwrap();
        assert_eq!(f.degree(), Degree::Finite(9));
        let w = factor_map(&f).unwrap();
        assert_eq!(w.recompose(), f);
        assert_eq!(w.tags(), vec![Tag::Jonquieres, Tag::Affine, Tag::Jonquieres]);
        assert_eq!(w.factors()[0].degree(), 3);
    }

    #[test]
    fn not_an_automorphism() {
        let q = ScalarField::Rationals;
        assert!(matches!(
            factor_map(&endo("(x1^2, x2)", &q)),
            Err(Error::NotInvertible(_))
        ));
        assert!(matches!(
            factor_map(&endo("(x1 + x2^2, x2^2)", &q)),
            Err(Error::NotInvertible(_))
        ));
    }
}
