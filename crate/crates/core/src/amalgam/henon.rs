//! Conjugating a plane automorphism to a triangular map or to a cyclically
//! reduced alternating word `a_m j_m ... a_1 j_1`.

use crate::algebra::{Ring, RootSearch, ScalarField};
use crate::endo::Endo;
use crate::error::{Error, Result};

use super::factor::{AffineFactor, Factor, JonquieresFactor, Tag};
use super::word::AmalgamWord;

/// `a_m ∘ j_m ∘ ... ∘ a_1 ∘ j_1` together with a conjugator `h` such that
/// the original map equals `h⁻¹ ∘ core ∘ h`.
#[derive(Clone, Debug, PartialEq)]
pub struct HenonForm {
    pub core: AmalgamWord<ScalarField>,
    pub conjugator: AmalgamWord<ScalarField>,
}

/// Outcome of cyclic reduction.
#[derive(Clone, Debug, PartialEq)]
pub enum Normalized {
    /// Conjugate to a triangular map: original = `h⁻¹ ∘ rep ∘ h`.
    Triangular {
        representative: JonquieresFactor<ScalarField>,
        conjugator: AmalgamWord<ScalarField>,
    },
    Henon(HenonForm),
}

impl HenonForm {
    /// Number of alternating pairs.
    pub fn length(&self) -> usize {
        self.core.len() / 2
    }

    /// Degrees `(deg j_1, ..., deg j_m)`.
    pub fn jonquieres_degrees(&self) -> Vec<u32> {
        self.core
            .factors()
            .iter()
            .rev()
            .filter(|f| f.tag() == Tag::Jonquieres)
            .map(Factor::degree)
            .collect()
    }

    /// The outermost affine factor `a_m`.
    pub fn outer_affine(&self) -> &Factor<ScalarField> {
        &self.core.factors()[0]
    }

    pub fn core_map(&self) -> Endo<ScalarField> {
        self.core.recompose()
    }
}

impl Normalized {
    pub fn conjugator(&self) -> &AmalgamWord<ScalarField> {
        match self {
            Normalized::Triangular { conjugator, .. } => conjugator,
            Normalized::Henon(h) => &h.conjugator,
        }
    }

    /// The conjugated map (`rep` or the core word).
    pub fn core_map(&self) -> Endo<ScalarField> {
        match self {
            Normalized::Triangular { representative, .. } => representative.to_endo(),
            Normalized::Henon(h) => h.core_map(),
        }
    }
}

/// Lexicographically minimal rotation of a cyclic sequence.
pub fn minimal_rotation(v: &[u32]) -> Vec<u32> {
    (0..v.len().max(1))
        .map(|i| v.iter().cycle().skip(i).take(v.len()).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// Cyclic invariant of a Hénon form: the degrees of its triangular factors
/// up to rotation, together with their count.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HenonInvariants {
    pub degrees: Vec<u32>,
    pub length: usize,
}

pub fn henon_invariants(h: &HenonForm) -> HenonInvariants {
    let degrees = minimal_rotation(&h.jonquieres_degrees());
    HenonInvariants {
        length: degrees.len(),
        degrees,
    }
}

/// Conjugate `word` (a reduced word of some map `f`) to a triangular map or
/// a cyclically reduced Hénon word, and check `f = h⁻¹ ∘ core ∘ h`.
pub fn henon_normalize(word: &AmalgamWord<ScalarField>) -> Result<Normalized> {
    let field = *word.ring();
    let original = word.recompose();
    let mut w = word.reduce();
    // Conjugator h with current = h ∘ original ∘ h⁻¹.
    let mut h: Vec<Factor<ScalarField>> = Vec::new();
    let result = loop {
        let n = w.len();
        if n == 0 {
            break Normalized::Triangular {
                representative: JonquieresFactor::identity(&field),
                conjugator: AmalgamWord::new(&field, h.clone()),
            };
        }
        if n == 1 {
            let f = &w.factors()[0];
            if let Some(Factor::Jonquieres(j)) = f.retag(Tag::Jonquieres) {
                break Normalized::Triangular {
                    representative: j,
                    conjugator: AmalgamWord::new(&field, h.clone()),
                };
            }
            let Factor::Affine(a) = f else {
                unreachable!("non-affine single factor retags")
            };
            let s = triangularizing_rotation(a)?;
            let rep = s.compose(a).compose(&s.inverse());
            h.insert(0, Factor::Affine(s));
            let representative = rep.as_jonquieres().expect("triangular after rotation");
            break Normalized::Triangular {
                representative,
                conjugator: AmalgamWord::new(&field, h.clone()),
            };
        }
        let first = w.factors()[0].clone();
        let last = w.factors()[n - 1].clone();
        if first.tag() == last.tag() {
            // w1⁻¹ ∘ (w1 ... wk) ∘ w1 = w2 ... (wk w1)
            let inv = first.inverse();
            let mut fs = w.factors()[1..].to_vec();
            fs.push(first);
            w = AmalgamWord::new(&field, fs).reduce();
            h.insert(0, inv);
            continue;
        }
        if first.tag() == Tag::Jonquieres {
            // wk ∘ (w1 ... wk) ∘ wk⁻¹ = wk w1 ... w(k-1)
            let mut fs = vec![last.clone()];
            fs.extend_from_slice(&w.factors()[..n - 1]);
            w = AmalgamWord::new(&field, fs).reduce();
            h.insert(0, last);
        }
        break Normalized::Henon(HenonForm {
            core: w.clone(),
            conjugator: AmalgamWord::new(&field, h.clone()),
        });
    };
    let conj = result.conjugator().reduce();
    let result = match result {
        Normalized::Triangular { representative, .. } => Normalized::Triangular {
            representative,
            conjugator: conj,
        },
        Normalized::Henon(hf) => Normalized::Henon(HenonForm {
            core: hf.core,
            conjugator: conj,
        }),
    };
    let hmap = result.conjugator().recompose();
    let hinv = result.conjugator().inverse().recompose();
    let back = hinv.compose(&result.core_map())?.compose(&hmap)?;
    if back != original {
        return Err(Error::Unsupported("conjugation identity failed to verify".into()));
    }
    Ok(result)
}

/// A special linear map `s` such that `s ∘ a ∘ s⁻¹` is triangular, found
/// from an eigenvector of the linear part of `a`.
fn triangularizing_rotation(a: &AffineFactor<ScalarField>) -> Result<AffineFactor<ScalarField>> {
    let f = a.ring;
    let tr = f.add(&a.a, &a.d);
    let roots = match f.quadratic_roots(&f.neg(&tr), &a.det()) {
        RootSearch::Found(r) => r,
        RootSearch::Undecided => vec![],
    };
    let Some(lambda) = roots.into_iter().next() else {
        return Err(Error::FieldExtension(format!(
            "eigenvalues of the linear part of {} are not in {}",
            a.to_endo(),
            f
        )));
    };
    // (λ − d, c) is an eigenvector since c ≠ 0.
    let v1 = f.sub(&lambda, &a.d);
    if f.is_zero(&v1) {
        Ok(AffineFactor::swap(&f))
    } else {
        let y = f.div(&a.c, &v1).expect("nonzero");
        Ok(AffineFactor::shear(&f, f.neg(&y)))
    }
}
