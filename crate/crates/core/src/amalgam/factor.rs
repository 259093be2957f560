//! Affine and triangular (de Jonquières) factors of plane automorphisms.

use std::fmt;

use crate::algebra::{Degree, MultiPoly, Ring, UniPoly};
use crate::endo::Endo;

/// `(a x1 + b x2 + e, c x1 + d x2 + f)` with `ad − bc` a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFactor<R: Ring> {
    pub ring: R,
    pub a: R::Elem,
    pub b: R::Elem,
    pub c: R::Elem,
    pub d: R::Elem,
    pub e: R::Elem,
    pub f: R::Elem,
}

/// `(a x1 + P(x2), b x2 + c)` with `a`, `b` units. Special maps have
/// `b = a⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JonquieresFactor<R: Ring> {
    pub ring: R,
    pub a: R::Elem,
    pub p: UniPoly<R>,
    pub b: R::Elem,
    pub c: R::Elem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tag {
    Affine,
    Jonquieres,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::Affine => "A",
            Tag::Jonquieres => "J",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor<R: Ring> {
    Affine(AffineFactor<R>),
    Jonquieres(JonquieresFactor<R>),
}

impl<R: Ring> AffineFactor<R> {
    pub fn new(ring: &R, [a, b, c, d, e, f]: [R::Elem; 6]) -> Self {
        AffineFactor {
            ring: ring.clone(),
            a,
            b,
            c,
            d,
            e,
            f,
        }
    }

    pub fn identity(ring: &R) -> Self {
        Self::new(
            ring,
            [
                ring.one(),
                ring.zero(),
                ring.zero(),
                ring.one(),
                ring.zero(),
                ring.zero(),
            ],
        )
    }

    /// `(x2, −x1)`.
    pub fn swap(ring: &R) -> Self {
        let (z, o) = (ring.zero(), ring.one());
        Self::new(ring, [z.clone(), o.clone(), ring.neg(&o), z.clone(), z.clone(), z])
    }

    /// `(x1, x2 + r x1)`.
    pub fn shear(ring: &R, r: R::Elem) -> Self {
        let (z, o) = (ring.zero(), ring.one());
        Self::new(ring, [o.clone(), z.clone(), r, o, z.clone(), z])
    }

    pub fn det(&self) -> R::Elem {
        let r = &self.ring;
        r.sub(&r.mul(&self.a, &self.d), &r.mul(&self.b, &self.c))
    }

    /// Lies in the intersection with the triangular group.
    pub fn is_triangular(&self) -> bool {
        self.ring.is_zero(&self.c)
    }

    pub fn to_endo(&self) -> Endo<R> {
        let r = &self.ring;
        let x1 = MultiPoly::var(r, 2, 0);
        let x2 = MultiPoly::var(r, 2, 1);
        let k = |c: &R::Elem| MultiPoly::constant(r, 2, c.clone());
        let f1 = &(&x1.scale(&self.a) + &x2.scale(&self.b)) + &k(&self.e);
        let f2 = &(&x1.scale(&self.c) + &x2.scale(&self.d)) + &k(&self.f);
        Endo::new(vec![f1, f2]).expect("plane map")
    }

    /// Read an affine map; `None` if the degree exceeds 1 or the linear part
    /// is not invertible.
    pub fn from_endo(map: &Endo<R>) -> Option<Self> {
        if map.nvars() != 2 || map.degree() > Degree::Finite(1) {
            return None;
        }
        let (p, q) = (map.component(0), map.component(1));
        let fac = Self::new(
            map.ring(),
            [
                p.coefficient(&[1, 0]),
                p.coefficient(&[0, 1]),
                q.coefficient(&[1, 0]),
                q.coefficient(&[0, 1]),
                p.constant_term(),
                q.constant_term(),
            ],
        );
        fac.ring.unit_inverse(&fac.det()).map(|_| fac)
    }

    /// `self ∘ other`.
    pub fn compose(&self, o: &Self) -> Self {
        let r = &self.ring;
        let dot = |x: &R::Elem, y: &R::Elem, z: &R::Elem, w: &R::Elem| r.add(&r.mul(x, y), &r.mul(z, w));
        Self::new(
            r,
            [
                dot(&self.a, &o.a, &self.b, &o.c),
                dot(&self.a, &o.b, &self.b, &o.d),
                dot(&self.c, &o.a, &self.d, &o.c),
                dot(&self.c, &o.b, &self.d, &o.d),
                r.add(&dot(&self.a, &o.e, &self.b, &o.f), &self.e),
                r.add(&dot(&self.c, &o.e, &self.d, &o.f), &self.f),
            ],
        )
    }

    pub fn inverse(&self) -> Self {
        let r = &self.ring;
        let inv = r.unit_inverse(&self.det()).expect("invertible linear part");
        let a = r.mul(&self.d, &inv);
        let b = r.neg(&r.mul(&self.b, &inv));
        let c = r.neg(&r.mul(&self.c, &inv));
        let d = r.mul(&self.a, &inv);
        let e = r.neg(&r.add(&r.mul(&a, &self.e), &r.mul(&b, &self.f)));
        let f = r.neg(&r.add(&r.mul(&c, &self.e), &r.mul(&d, &self.f)));
        Self::new(r, [a, b, c, d, e, f])
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.ring)
    }

    /// The same map written as a triangular factor (requires `c = 0`).
    pub fn as_jonquieres(&self) -> Option<JonquieresFactor<R>> {
        self.is_triangular().then(|| JonquieresFactor {
            ring: self.ring.clone(),
            a: self.a.clone(),
            p: UniPoly::new(&self.ring, vec![self.e.clone(), self.b.clone()]),
            b: self.d.clone(),
            c: self.f.clone(),
        })
    }
}

impl<R: Ring> JonquieresFactor<R> {
    pub fn new(ring: &R, a: R::Elem, p: UniPoly<R>, b: R::Elem, c: R::Elem) -> Self {
        JonquieresFactor {
            ring: ring.clone(),
            a,
            p,
            b,
            c,
        }
    }

    /// `(x1 + P(x2), x2)`.
    pub fn elementary(ring: &R, p: UniPoly<R>) -> Self {
        Self::new(ring, ring.one(), p, ring.one(), ring.zero())
    }

    pub fn identity(ring: &R) -> Self {
        Self::elementary(ring, UniPoly::zero(ring))
    }

    pub fn degree(&self) -> u32 {
        self.p.degree().or_zero().max(1)
    }

    pub fn is_affine(&self) -> bool {
        self.p.degree() <= Degree::Finite(1)
    }

    pub fn to_endo(&self) -> Endo<R> {
        let r = &self.ring;
        let x1 = MultiPoly::var(r, 2, 0);
        let x2 = MultiPoly::var(r, 2, 1);
        let f1 = &x1.scale(&self.a) + &self.p.to_multi(2, 1);
        let f2 = &x2.scale(&self.b) + &MultiPoly::constant(r, 2, self.c.clone());
        Endo::new(vec![f1, f2]).expect("plane map")
    }

    /// Read a triangular map `(a x1 + P(x2), b x2 + c)`.
    pub fn from_endo(map: &Endo<R>) -> Option<Self> {
        if map.nvars() != 2 {
            return None;
        }
        let r = map.ring();
        let (f1, f2) = (map.component(0), map.component(1));
        let a = f1.coefficient(&[1, 0]);
        let rest = f1 - &MultiPoly::monomial(r, vec![1, 0], a.clone());
        let p = UniPoly::from_multi(&rest, 1)?;
        let b = f2.coefficient(&[0, 1]);
        let c = f2.constant_term();
        let expect2 = &MultiPoly::monomial(r, vec![0, 1], b.clone()) + &MultiPoly::constant(r, 2, c.clone());
        if *f2 != expect2 {
            return None;
        }
        r.unit_inverse(&a)?;
        r.unit_inverse(&b)?;
        Some(Self::new(r, a, p, b, c))
    }

    /// `self ∘ other`.
    pub fn compose(&self, o: &Self) -> Self {
        let r = &self.ring;
        let p = o.p.scale(&self.a).add(&self.p.compose_linear(&o.b, &o.c));
        Self::new(
            r,
            r.mul(&self.a, &o.a),
            p,
            r.mul(&self.b, &o.b),
            r.add(&r.mul(&self.b, &o.c), &self.c),
        )
    }

    pub fn inverse(&self) -> Self {
        let r = &self.ring;
        let ai = r.unit_inverse(&self.a).expect("unit");
        let bi = r.unit_inverse(&self.b).expect("unit");
        let shift = r.neg(&r.mul(&self.c, &bi));
        let p = self.p.compose_linear(&bi, &shift).scale(&r.neg(&ai));
        Self::new(r, ai, p, bi, shift)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.ring)
    }

    /// The same map as an affine factor (requires `deg P ≤ 1`).
    pub fn as_affine(&self) -> Option<AffineFactor<R>> {
        self.is_affine().then(|| {
            AffineFactor::new(
                &self.ring,
                [
                    self.a.clone(),
                    self.p.coeff(1),
                    self.ring.zero(),
                    self.b.clone(),
                    self.p.coeff(0),
                    self.c.clone(),
                ],
            )
        })
    }
}

impl<R: Ring> Factor<R> {
    pub fn tag(&self) -> Tag {
        match self {
            Factor::Affine(_) => Tag::Affine,
            Factor::Jonquieres(_) => Tag::Jonquieres,
        }
    }

    /// Lies in the intersection of the affine and triangular groups.
    pub fn in_intersection(&self) -> bool {
        match self {
            Factor::Affine(a) => a.is_triangular(),
            Factor::Jonquieres(j) => j.is_affine(),
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            Factor::Affine(_) => 1,
            Factor::Jonquieres(j) => j.degree(),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Factor::Affine(a) => a.is_identity(),
            Factor::Jonquieres(j) => j.is_identity(),
        }
    }

    pub fn to_endo(&self) -> Endo<R> {
        match self {
            Factor::Affine(a) => a.to_endo(),
            Factor::Jonquieres(j) => j.to_endo(),
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Factor::Affine(a) => Factor::Affine(a.inverse()),
            Factor::Jonquieres(j) => Factor::Jonquieres(j.inverse()),
        }
    }

    /// Rewrite with the given tag; `None` unless the tag already matches or
    /// the factor lies in the intersection.
    pub fn retag(&self, tag: Tag) -> Option<Self> {
        match (self, tag) {
            (Factor::Affine(_), Tag::Affine) | (Factor::Jonquieres(_), Tag::Jonquieres) => Some(self.clone()),
            (Factor::Affine(a), Tag::Jonquieres) => a.as_jonquieres().map(Factor::Jonquieres),
            (Factor::Jonquieres(j), Tag::Affine) => j.as_affine().map(Factor::Affine),
        }
    }

    /// `self ∘ other` for factors of the same tag.
    pub fn compose_same(&self, other: &Self) -> Option<Self> {
        match (self, other) {
            (Factor::Affine(a), Factor::Affine(b)) => Some(Factor::Affine(a.compose(b))),
            (Factor::Jonquieres(a), Factor::Jonquieres(b)) => Some(Factor::Jonquieres(a.compose(b))),
            _ => None,
        }
    }
}

impl<R: Ring> fmt::Display for Factor<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.tag(), self.to_endo())
    }
}
