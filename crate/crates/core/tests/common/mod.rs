//! Random generators and parsing helpers shared by the integration tests.
#![allow(dead_code)]

use polyaut::algebra::text::{parse_components, ParsedComponents};
use polyaut::algebra::{Ring, Scalar, ScalarField, UniPoly};
use polyaut::amalgam::{AffineFactor, AmalgamWord, Factor, JonquieresFactor};
use polyaut::degeneration::{lift, TFamily};
use polyaut::endo::{Endo, PlaneAut};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type Rng8 = ChaCha8Rng;
pub type Poly = UniPoly<ScalarField>;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q() -> ScalarField {
    ScalarField::Rationals
}

pub fn fp(p: u64) -> ScalarField {
    ScalarField::prime(p).unwrap()
}

pub fn endo(src: &str, field: &ScalarField) -> Endo<ScalarField> {
    match parse_components(src, field).unwrap() {
        ParsedComponents::Plain(v) => Endo::new(v).unwrap(),
        ParsedComponents::Family(_) => panic!("{src} is a family"),
    }
}

pub fn aut(src: &str, field: &ScalarField) -> PlaneAut {
    PlaneAut::new(endo(src, field)).unwrap()
}

pub fn family(src: &str, field: &ScalarField) -> TFamily {
    match parse_components(src, field).unwrap() {
        ParsedComponents::Family(v) => Endo::new(v).unwrap(),
        ParsedComponents::Plain(v) => lift(&Endo::new(v).unwrap()),
    }
}

/// Small scalar; over Q a fraction with numerator in [-4, 4] and
/// denominator in [1, 3].
pub fn scalar(field: &ScalarField, r: &mut Rng8) -> Scalar {
    match field {
        ScalarField::Rationals => field
            .div(
                &field.from_i64(r.gen_range(-4..=4)),
                &field.from_i64(r.gen_range(1..=3)),
            )
            .unwrap(),
        ScalarField::Prime(p) => field.from_i64(r.gen_range(0..*p as i64)),
    }
}

pub fn nonzero(field: &ScalarField, r: &mut Rng8) -> Scalar {
    loop {
        let c = scalar(field, r);
        if !field.is_zero(&c) {
            return c;
        }
    }
}

/// Polynomial of exact degree `deg`.
pub fn poly_of_degree(field: &ScalarField, r: &mut Rng8, deg: usize) -> Poly {
    let mut c: Vec<Scalar> = (0..deg).map(|_| scalar(field, r)).collect();
    c.push(nonzero(field, r));
    UniPoly::new(field, c)
}

/// Polynomial of degree at most `deg`, possibly zero.
pub fn poly_up_to(field: &ScalarField, r: &mut Rng8, deg: usize) -> Poly {
    UniPoly::new(field, (0..=deg).map(|_| scalar(field, r)).collect())
}

/// Special affine factor outside the triangular subgroup.
pub fn affine_factor(field: &ScalarField, r: &mut Rng8) -> Factor<ScalarField> {
    let (a, d, c) = (scalar(field, r), scalar(field, r), nonzero(field, r));
    // ad - bc = 1
    let b = field.div(&field.sub(&field.mul(&a, &d), &field.one()), &c).unwrap();
    let (e, f) = (scalar(field, r), scalar(field, r));
    Factor::Affine(AffineFactor::new(field, [a, b, c, d, e, f]))
}

/// Special triangular factor `(a x1 + P(x2), a⁻¹ x2 + c)` with `deg P` in
/// `2..=max_deg`.
pub fn jonquieres_factor(field: &ScalarField, r: &mut Rng8, max_deg: usize) -> Factor<ScalarField> {
    let a = nonzero(field, r);
    let deg = r.gen_range(2..=max_deg);
    let p = poly_of_degree(field, r, deg);
    let c = scalar(field, r);
    Factor::Jonquieres(JonquieresFactor::new(field, a.clone(), p, field.inv(&a).unwrap(), c))
}

/// `a_m ∘ j_m ∘ ... ∘ a_1 ∘ j_1`.
pub fn henon_word(field: &ScalarField, r: &mut Rng8, m: usize, max_deg: usize) -> AmalgamWord<ScalarField> {
    let mut factors = Vec::new();
    for _ in 0..m {
        factors.push(affine_factor(field, r));
        factors.push(jonquieres_factor(field, r, max_deg));
    }
    AmalgamWord::new(field, factors)
}

/// Alternating word of the given length with a random first tag.
pub fn alternating_word(field: &ScalarField, r: &mut Rng8, len: usize, max_deg: usize) -> AmalgamWord<ScalarField> {
    let mut affine = r.gen_bool(0.5);
    let mut factors = Vec::new();
    for _ in 0..len {
        factors.push(if affine {
            affine_factor(field, r)
        } else {
            jonquieres_factor(field, r, max_deg)
        });
        affine = !affine;
    }
    AmalgamWord::new(field, factors)
}

/// `h ∘ j ∘ h⁻¹` with `j` triangular and `h = a ∘ j'`.
pub fn triangular_conjugate(field: &ScalarField, r: &mut Rng8, max_deg: usize) -> PlaneAut {
    let j = PlaneAut::from_word(&AmalgamWord::new(field, vec![jonquieres_factor(field, r, max_deg)])).unwrap();
    let h = PlaneAut::from_word(&AmalgamWord::new(
        field,
        vec![affine_factor(field, r), jonquieres_factor(field, r, 2)],
    ))
    .unwrap();
    j.conjugate_by(&h).unwrap()
}

/// `g ∘ h = h ∘ f`, by composing the polynomial maps.
pub fn conjugates_by_composition(f: &PlaneAut, g: &PlaneAut, h: &PlaneAut) -> bool {
    g.forward().compose(h.forward()).unwrap() == h.forward().compose(f.forward()).unwrap()
}

/// Random special conjugator: a word of length `len` with degrees ≤ 2.
pub fn conjugator(field: &ScalarField, r: &mut Rng8, len: usize) -> PlaneAut {
    PlaneAut::from_word(&alternating_word(field, r, len, 2)).unwrap()
}

/// Test-side arithmetic on dense coefficient vectors mod p, independent of
/// the library's polynomial code.
pub mod modp {
    pub fn binom(n: usize, k: usize, p: u64) -> u64 {
        // Pascal's triangle row by row
        let mut row = vec![1u64];
        for _ in 0..n {
            let mut next = vec![1u64; row.len() + 1];
            for i in 1..row.len() {
                next[i] = (row[i - 1] + row[i]) % p;
            }
            row = next;
        }
        row.get(k).copied().unwrap_or(0)
    }

    pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    /// Coefficients of `(x + c)^k`.
    pub fn shifted_power(k: usize, c: u64, p: u64) -> Vec<u64> {
        (0..=k)
            .map(|i| {
                let mut pw = 1u64;
                for _ in 0..(k - i) {
                    pw = pw * c % p;
                }
                binom(k, i, p) * pw % p
            })
            .collect()
    }

    /// `F(x + 1) − F(x)`.
    pub fn delta(f: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; f.len()];
        for (k, &a) in f.iter().enumerate() {
            for (i, b) in shifted_power(k, 1, p).into_iter().enumerate() {
                out[i] = (out[i] + a * b) % p;
            }
            out[k] = (out[k] + p - a % p) % p;
        }
        trim(out)
    }

    /// `F(x) + F(x + 1) + ... + F(x + p − 1)`.
    pub fn norm(f: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; f.len()];
        for c in 0..p {
            for (k, &a) in f.iter().enumerate() {
                for (i, b) in shifted_power(k, c, p).into_iter().enumerate() {
                    out[i] = (out[i] + a * b) % p;
                }
            }
        }
        trim(out)
    }

    /// Basis of the null space of the columns `cols` (each a coefficient
    /// vector) over F_p, as coefficient vectors in the column index.
    pub fn kernel(cols: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
        let n = cols.len();
        let rows = cols.iter().map(Vec::len).max().unwrap_or(0);
        let mut m: Vec<Vec<u64>> = (0..rows)
            .map(|r| (0..n).map(|c| cols[c].get(r).copied().unwrap_or(0)).collect())
            .collect();
        let inv = |a: u64| {
            let mut r = 1u64;
            let (mut b, mut e) = (a % p, p - 2);
            while e > 0 {
                if e & 1 == 1 {
                    r = r * b % p;
                }
                b = b * b % p;
                e >>= 1;
            }
            r
        };
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(pr) = (row..rows).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(row, pr);
            let iv = inv(m[row][col]);
            for c in 0..n {
                m[row][c] = m[row][c] * iv % p;
            }
            for r in 0..rows {
                if r != row && m[r][col] != 0 {
                    let factor = m[r][col];
                    for c in 0..n {
                        m[r][c] = (m[r][c] + p * p - factor * m[row][c] % p) % p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u64; n];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - m[r][fc]) % p;
                }
                v
            })
            .collect()
    }
}

pub fn to_poly(field: &ScalarField, v: &[u64]) -> Poly {
    UniPoly::new(field, v.iter().map(|&c| field.from_i64(c as i64)).collect())
}
