//! Polynomial self-maps of affine n-space.

use std::fmt;

use crate::algebra::{Degree, MultiPoly, Ring, Scalar, ScalarField};
use crate::error::{Error, Result};

/// A polynomial map `(f1, ..., fn)` of affine n-space over a ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endo<R: Ring> {
    ring: R,
    components: Vec<MultiPoly<R>>,
    degree: Degree,
}

impl<R: Ring> Endo<R> {
    pub fn new(components: Vec<MultiPoly<R>>) -> Result<Self> {
        let n = components.len();
        let Some(first) = components.first() else {
            return Err(Error::InvalidArgument("a map needs at least one component".into()));
        };
        let ring = first.ring().clone();
        for c in &components {
            if *c.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if c.nvars() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: c.nvars(),
                });
            }
        }
        let degree = components.iter().map(MultiPoly::degree).max().expect("nonempty");
        Ok(Endo {
            ring,
            components,
            degree,
        })
    }

    pub fn identity(ring: &R, n: usize) -> Self {
        Self::new((0..n).map(|i| MultiPoly::var(ring, n, i)).collect()).expect("well formed")
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MultiPoly<R>] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &MultiPoly<R> {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<MultiPoly<R>> {
        self.components
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.ring, self.nvars())
    }

    /// `self ∘ g`: apply `g` first.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if self.ring != g.ring {
            return Err(Error::RingMismatch);
        }
        if self.nvars() != g.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.nvars(),
                found: g.nvars(),
            });
        }
        let comps = self
            .components
            .iter()
            .map(|c| c.compose(&g.components))
            .collect::<Result<Vec<_>>>()?;
        Self::new(comps)
    }

    /// Composition of a list of maps, `maps[0] ∘ maps[1] ∘ ...`.
    pub fn compose_all<'a>(ring: &R, n: usize, maps: impl IntoIterator<Item = &'a Self>) -> Result<Self>
    where
        R: 'a,
    {
        let mut acc = Self::identity(ring, n);
        for m in maps {
            acc = acc.compose(m)?;
        }
        Ok(acc)
    }

    /// `self^k` by repeated composition (`k = 0` gives the identity).
    pub fn power(&self, k: u32) -> Self {
        let mut acc = Self::identity(&self.ring, self.nvars());
        for _ in 0..k {
            acc = self.compose(&acc).expect("same ring and arity");
        }
        acc
    }

    /// Determinant of the matrix of partial derivatives.
    pub fn jacobian(&self) -> MultiPoly<R> {
        let n = self.nvars();
        let matrix: Vec<Vec<MultiPoly<R>>> = self
            .components
            .iter()
            .map(|f| (0..n).map(|j| f.partial(j)).collect())
            .collect();
        let cols: Vec<usize> = (0..n).collect();
        determinant(&self.ring, n, &matrix, 0, &cols)
    }

    /// Degree-`deg f` homogeneous part of every component.
    pub fn highest_part(&self) -> Self {
        let d = self.degree.or_zero();
        let comps = self.components.iter().map(|c| c.homogeneous_part(d)).collect();
        Self::new(comps).expect("same shape")
    }

    pub fn eval(&self, point: &[R::Elem]) -> Vec<R::Elem> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    pub fn map_coefficients<S: Ring>(&self, target: &S, f: impl Fn(&R::Elem) -> S::Elem) -> Endo<S> {
        Endo::new(self.components.iter().map(|c| c.map_coefficients(target, &f)).collect()).expect("same shape")
    }

    pub fn try_map_coefficients<S: Ring>(
        &self,
        target: &S,
        f: impl Fn(&R::Elem) -> Result<S::Elem>,
    ) -> Result<Endo<S>> {
        let comps = self
            .components
            .iter()
            .map(|c| c.try_map_coefficients(target, &f))
            .collect::<Result<Vec<_>>>()?;
        Endo::new(comps)
    }
}

fn determinant<R: Ring>(ring: &R, n: usize, m: &[Vec<MultiPoly<R>>], row: usize, cols: &[usize]) -> MultiPoly<R> {
    if cols.is_empty() {
        return MultiPoly::one(ring, n);
    }
    let mut acc = MultiPoly::zero(ring, n);
    for (k, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = determinant(ring, n, m, row + 1, &rest);
        let term = &m[row][c] * &minor;
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

impl<R: Ring> fmt::Display for Endo<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Primes used to reduce rational maps before probing leading forms.
const PROBE_PRIMES: [u64; 3] = [2_305_843_009_213_693_951, 1_000_000_007, 998_244_353];

/// Sample points at which a leading form is evaluated.
fn probe_points(field: &ScalarField, n: usize) -> Vec<Vec<Scalar>> {
    if let ScalarField::Prime(p) = field {
        let total = (*p as u128).checked_pow(n as u32);
        if total.is_some_and(|t| t <= 4096) {
            let mut pts = vec![vec![]];
            for _ in 0..n {
                pts = pts
                    .into_iter()
                    .flat_map(|v| {
                        (0..*p).map(move |x| {
                            let mut w = v.clone();
                            w.push(Scalar::Residue(x));
                            w
                        })
                    })
                    .collect();
            }
            return pts;
        }
    }
    let mut pts = Vec::new();
    for i in 0..n {
        pts.push((0..n).map(|j| field.from_i64((i == j) as i64)).collect());
    }
    for j in 0..8i64 {
        pts.push(
            (0..n as u32)
                .map(|i| field.from_i64((j + 2).pow(i + 1) + i as i64))
                .collect(),
        );
    }
    pts
}

/// Whether the k-th iterate of the homogeneous map `top` is nonzero,
/// decided by evaluation at sample points. `Some(true)` is a proof;
/// `None` means every sample vanished and nothing is concluded.
fn top_power_nonzero(top: &Endo<ScalarField>, k: u32) -> Option<bool> {
    let field = *top.ring();
    let reductions: Vec<Endo<ScalarField>> = match field {
        ScalarField::Prime(_) => vec![top.clone()],
        ScalarField::Rationals => PROBE_PRIMES
            .iter()
            .filter_map(|&l| {
                let fl = ScalarField::prime(l).expect("probe primes are prime");
                top.try_map_coefficients(&fl, |c| {
                    fl.from_rational(&field.to_rational(c))
                        .ok_or_else(|| Error::InvalidArgument("denominator".into()))
                })
                .ok()
            })
            .collect(),
    };
    for map in &reductions {
        let f = *map.ring();
        for y in probe_points(&f, map.nvars()) {
            let mut v = y;
            for _ in 0..k {
                v = map.eval(&v);
            }
            if v.iter().any(|c| !f.is_zero(c)) {
                return Some(true);
            }
        }
    }
    None
}

fn checked_degree_power(d: u32, k: u32) -> Result<Degree> {
    d.checked_pow(k)
        .map(Degree::Finite)
        .ok_or_else(|| Error::Unsupported(format!("degree {d}^{k} exceeds the supported range")))
}

impl Endo<ScalarField> {
    /// `[deg f, deg f^2, ..., deg f^m]`.
    ///
    /// The top-degree part of `f^k` is the k-th iterate of the top-degree
    /// part of `f`; whenever that iterate is seen to be nonzero at a sample
    /// point the degree is `deg(f)^k` and no symbolic power is formed.
    pub fn degree_sequence(&self, m: u32) -> Result<Vec<Degree>> {
        let d = self.degree;
        let top = self.highest_part();
        let mut out = Vec::with_capacity(m as usize);
        let mut symbolic: Option<(u32, Endo<ScalarField>)> = None;
        for k in 1..=m {
            if let Degree::Finite(dd) = d {
                if dd >= 2 && top_power_nonzero(&top, k) == Some(true) {
                    out.push(checked_degree_power(dd, k)?);
                    continue;
                }
            }
            let (mut have, mut pw) = symbolic.take().unwrap_or((0, Self::identity(&self.ring, self.nvars())));
            while have < k {
                pw = self.compose(&pw)?;
                have += 1;
            }
            out.push(pw.degree());
            symbolic = Some((have, pw));
        }
        Ok(out)
    }

    /// `deg(f ∘ f)`.
    pub fn square_degree(&self) -> Degree {
        if let Degree::Finite(d) = self.degree {
            if d >= 2 && top_power_nonzero(&self.highest_part(), 2) == Some(true) {
                return Degree::Finite(d * d);
            }
        }
        self.compose(self).expect("same shape").degree()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::rat;
    use crate::algebra::text::{parse_components, ParsedComponents};

    fn endo(src: &str, field: &ScalarField) -> Endo<ScalarField> {
        match parse_components(src, field).unwrap() {
            ParsedComponents::Plain(v) => Endo::new(v).unwrap(),
            ParsedComponents::Family(_) => panic!("family"),
        }
    }

    fn q() -> ScalarField {
        ScalarField::Rationals
    }

    #[test]
    fn composition_examples() {
        let f = endo("(x1 + x2^2, x2 + x3^2, x3)", &q());
        let f2 = f.compose(&f).unwrap();
        assert_eq!(f2, endo("(x1 + 2*x2^2 + 2*x2*x3^2 + x3^4, x2 + 2*x3^2, x3)", &q()));
        assert_eq!(f.compose(&Endo::identity(&q(), 3)).unwrap(), f);
        let a = endo("(-x2, x1)", &q());
        let j = endo("(x1 + x2^2, x2)", &q());
        assert_eq!(a.compose(&j).unwrap(), endo("(-x2, x1 + x2^2)", &q()));
    }

    #[test]
    fn jacobians() {
        let one = MultiPoly::one(&q(), 2);
        assert_eq!(endo("(x1 + x2^2, x2)", &q()).jacobian(), one);
        assert_eq!(endo("(-x2, x1 + x2^2)", &q()).jacobian(), one);
        assert_eq!(
            endo("(2*x1, x2)", &q()).jacobian(),
            MultiPoly::constant(&q(), 2, rat(2, 1))
        );
        let f = endo("(x1 + x2^2, x2 + x3^2, x3)", &q());
        assert_eq!(f.jacobian(), MultiPoly::one(&q(), 3));
    }

    #[test]
    fn highest_parts() {
        let f = endo("(x1 + x2^2, x2 + x3^2, x3)", &q());
        assert_eq!(f.highest_part(), endo("(x2^2, x3^2, 0)", &q()));
        let l = endo("(x1 + 2*x2 + 1, x2)", &q());
        assert_eq!(l.highest_part(), endo("(x1 + 2*x2, x2)", &q()));
        assert_eq!(endo("(-x2, x1 + x2^2)", &q()).highest_part(), endo("(0, x2^2)", &q()));
    }

    #[test]
    fn degree_sequences() {
        let f = endo("(x1 + x2^2, x2 + x3^2, x3)", &q());
        let d: Vec<_> = f.degree_sequence(4).unwrap().into_iter().map(|d| d.or_zero()).collect();
        assert_eq!(d, vec![2, 4, 4, 4]);
        let h = endo("(-x2, x1 + x2^2)", &q());
        let d: Vec<_> = h.degree_sequence(3).unwrap().into_iter().map(|d| d.or_zero()).collect();
        assert_eq!(d, vec![2, 4, 8]);
        let id = Endo::identity(&q(), 2);
        let d: Vec<_> = id
            .degree_sequence(3)
            .unwrap()
            .into_iter()
            .map(|d| d.or_zero())
            .collect();
        assert_eq!(d, vec![1, 1, 1]);
    }

    #[test]
    fn sequence_matches_symbolic_powers() {
        for src in ["(-x2, x1 + x2^2)", "(x1 + x2^3, x2)", "(x2, x1 + x2^3 + x1*x2 + 1)"] {
            for field in [q(), ScalarField::prime(2).unwrap(), ScalarField::prime(5).unwrap()] {
                let f = endo(src, &field);
                let seq = f.degree_sequence(3).unwrap();
                for (k, d) in seq.iter().enumerate() {
                    assert_eq!(*d, f.power(k as u32 + 1).degree(), "{src} over {field}, k={}", k + 1);
                }
            }
        }
    }
}
