//! Deciding conjugacy in the special automorphism group.

use crate::algebra::{Degree, Ring, RootSearch, Scalar, ScalarField, UniPoly};
use crate::amalgam::{henon_invariants, henon_normalize, AmalgamWord, Factor, HenonForm, Normalized};
use crate::endo::PlaneAut;
use crate::error::{Error, Result};

use super::charp::{expand, split_difference};
use super::normal_form::{affine_aut, normal_form, NormalForm, NormalFormResult};

type Poly = UniPoly<ScalarField>;

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// `g = conjugator ∘ f ∘ conjugator⁻¹`, checked by composition.
    Yes {
        conjugator: PlaneAut,
    },
    No {
        reason: String,
    },
    /// Undecided over K; `needs_extension` when the obstruction is a missing root.
    Unknown {
        reason: String,
        needs_extension: bool,
    },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes { .. } => "yes",
            Verdict::No { .. } => "no",
            Verdict::Unknown { .. } => "unknown",
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No { .. })
    }

    pub fn conjugator(&self) -> Option<&PlaneAut> {
        match self {
            Verdict::Yes { conjugator } => Some(conjugator),
            _ => None,
        }
    }
}

/// Decision between two algebraic special maps, with both normal forms.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicDecision {
    pub verdict: Verdict,
    pub source: NormalFormResult,
    pub target: NormalFormResult,
}

fn no(reason: impl Into<String>) -> Result<Step> {
    Ok(Step::No(reason.into()))
}

fn unknown(reason: impl Into<String>, needs_extension: bool) -> Result<Step> {
    Ok(Step::Unknown(reason.into(), needs_extension))
}

/// Outcome between two representatives: a conjugator `k` with `G = k F k⁻¹`.
enum Step {
    Yes(PlaneAut),
    No(String),
    Unknown(String, bool),
}

pub fn are_conjugate_algebraic(f: &PlaneAut, g: &PlaneAut) -> Result<AlgebraicDecision> {
    if f.field() != g.field() {
        return Err(Error::RingMismatch);
    }
    let nf = normal_form(f)?;
    let ng = normal_form(g)?;
    let field = f.field();
    let step = decide_forms(&field, &nf.form, &ng.form)?;
    let verdict = match step {
        Step::Yes(k) => {
            // g = H_g⁻¹ G H_g and G = k F k⁻¹ with F = H_f f H_f⁻¹
            let h = ng.conjugator.inverted().compose(&k)?.compose(&nf.conjugator)?;
            if !conjugates(f, g, &h)? {
                return Err(Error::Unsupported("conjugator failed to verify".into()));
            }
            Verdict::Yes { conjugator: h }
        }
        Step::No(reason) => Verdict::No { reason },
        Step::Unknown(reason, needs_extension) => Verdict::Unknown {
            reason,
            needs_extension,
        },
    };
    Ok(AlgebraicDecision {
        verdict,
        source: nf,
        target: ng,
    })
}

/// `g ∘ h = h ∘ f`, decided on amalgam words: `h⁻¹ ∘ g ∘ h ∘ f⁻¹` is the
/// identity exactly when its reduced word is empty, since a reduced word
/// with a factor left is never the identity.
pub fn conjugates(f: &PlaneAut, g: &PlaneAut, h: &PlaneAut) -> Result<bool> {
    if f.field() != g.field() || g.field() != h.field() {
        return Err(Error::RingMismatch);
    }
    let word = h
        .word()
        .inverse()
        .concat(g.word())
        .concat(h.word())
        .concat(&f.word().inverse())
        .reduce();
    Ok(word.factors().iter().all(Factor::is_identity))
}

fn decide_forms(field: &ScalarField, nf: &NormalForm, ng: &NormalForm) -> Result<Step> {
    use NormalForm::*;
    let k = *field;
    let (zero, one) = (k.zero(), k.one());
    match (nf, ng) {
        (Diagonal { a }, Diagonal { a: b }) => {
            if a == b {
                Ok(Step::Yes(PlaneAut::identity(field)))
            } else if k.is_one(&k.mul(a, b)) {
                Ok(Step::Yes(affine_aut(
                    field,
                    [zero.clone(), one.clone(), k.neg(&one), zero.clone(), zero.clone(), zero],
                )))
            } else {
                no(format!("eigenvalues {a} and {b} differ up to inversion"))
            }
        }
        (Elementary { p }, Elementary { p: q }) => solve_elementary(field, p, q),
        (RootOfUnity { zeta, m, p }, RootOfUnity { zeta: xi, m: m2, p: q }) => {
            if zeta != xi || m != m2 {
                return no(format!("eigenvalue {zeta} differs from {xi}"));
            }
            solve_root_of_unity(field, *m, p, q)
        }
        (Translation { p }, Translation { p: q }) => solve_translation(field, p, q, nf, ng),
        _ => no(format!(
            "families {} and {} are not conjugate",
            nf.family(),
            ng.family()
        )),
    }
}

/// Candidates `s ∈ K` with `s^n = target`.
fn roots(field: &ScalarField, target: &Scalar, n: u32) -> Option<Vec<Scalar>> {
    match field.nth_roots(target, n) {
        RootSearch::Found(r) => Some(r),
        RootSearch::Undecided => None,
    }
}

/// `Q(y) = a P(a y + b)`; the conjugator is `(a x1, a⁻¹(x2 − b))`.
fn solve_elementary(field: &ScalarField, p: &Poly, q: &Poly) -> Result<Step> {
    let k = *field;
    let zero = k.zero();
    if p.is_zero() || q.is_zero() {
        return if p.is_zero() && q.is_zero() {
            Ok(Step::Yes(PlaneAut::identity(field)))
        } else {
            no("only the identity is conjugate to the identity")
        };
    }
    let (d, e) = (p.degree().or_zero(), q.degree().or_zero());
    if d != e {
        return no(format!("degrees {d} and {e} differ"));
    }
    let ratio = k.div(q.lead().unwrap(), p.lead().unwrap()).unwrap();
    let Some(cands) = roots(field, &ratio, d + 1) else {
        return unknown(format!("root search for a^{} = {ratio} is too large", d + 1), false);
    };
    if cands.is_empty() {
        return unknown(format!("a^{} = {ratio} has no root in {k}", d + 1), true);
    }
    let mut undecided = false;
    for a in cands {
        let bs: Vec<Scalar> = if d == 0 {
            vec![zero.clone()]
        } else {
            let dd = k.from_i64(d as i64);
            if !k.is_zero(&dd) {
                // coefficient of y^{d−1}: a^d (d p_d b + p_{d−1})
                let ad = k.pow(&a, d as u64);
                let lhs = k.sub(&k.div(&q.coeff(d as usize - 1), &ad).unwrap(), &p.coeff(d as usize - 1));
                vec![k.div(&lhs, &k.mul(&dd, p.lead().unwrap())).unwrap()]
            } else if let Some(all) = k.elements() {
                all
            } else {
                undecided = true;
                continue;
            }
        };
        for b in bs {
            if p.compose_linear(&a, &b).scale(&a) == *q {
                let ainv = k.inv(&a).unwrap();
                let h = affine_aut(
                    field,
                    [
                        a.clone(),
                        zero.clone(),
                        zero.clone(),
                        ainv.clone(),
                        zero.clone(),
                        k.neg(&k.mul(&ainv, &b)),
                    ],
                );
                return Ok(Step::Yes(h));
            }
        }
    }
    if undecided {
        unknown("translation parameter search is too large", false)
    } else {
        no("no a, b in K with Q(y) = a P(a y + b)")
    }
}

/// `Q(u) = s P(s u)` with `s = α^m`; the conjugator is `(α x1, α⁻¹ x2)`.
fn solve_root_of_unity(field: &ScalarField, m: u64, p: &Poly, q: &Poly) -> Result<Step> {
    let k = *field;
    let zero = k.zero();
    let (d, e) = (p.degree().or_zero(), q.degree().or_zero());
    if d != e {
        return no(format!("degrees {d} and {e} differ"));
    }
    let ratio = k.div(q.lead().unwrap(), p.lead().unwrap()).unwrap();
    let Some(cands) = roots(field, &ratio, d + 1) else {
        return unknown(format!("root search for s^{} = {ratio} is too large", d + 1), false);
    };
    let mut missing = false;
    let mut found_scale = false;
    for s in cands {
        if p.compose_linear(&s, &zero).scale(&s) != *q {
            continue;
        }
        found_scale = true;
        let Some(alphas) = roots(field, &s, m as u32) else {
            return unknown("root search is too large", false);
        };
        if let Some(alpha) = alphas.into_iter().next() {
            let ainv = k.inv(&alpha).unwrap();
            let h = affine_aut(
                field,
                [alpha, zero.clone(), zero.clone(), ainv, zero.clone(), zero.clone()],
            );
            return Ok(Step::Yes(h));
        }
        missing = true;
    }
    if missing || !found_scale && roots(field, &ratio, d + 1).is_some_and(|r| r.is_empty()) {
        unknown(
            format!("the scaling needs an {m}-th or {}-th root outside {k}", d + 1),
            true,
        )
    } else {
        no("no scaling s with Q(u) = s P(s u)")
    }
}

/// `P̃`, `Q̃` from the p-th powers, then `c` with `Q̃(y) = P̃(y + c)` and a
/// difference correction. The conjugator is `(x1 + r(x2), x2) ∘ (x1, x2 − c)`.
fn solve_translation(field: &ScalarField, p: &Poly, q: &Poly, nf: &NormalForm, ng: &NormalForm) -> Result<Step> {
    let k = *field;
    let zero = k.zero();
    let one = k.one();
    let ch = k.characteristic();
    if ch == 0 || p == q {
        return Ok(Step::Yes(PlaneAut::identity(field)));
    }
    let tilde = |form: &NormalForm| -> Result<Poly> {
        let pw = form.to_aut(field).power(ch as i64);
        let first = pw.forward().component(0) - &crate::algebra::MultiPoly::var(field, 2, 0);
        UniPoly::from_multi(&first, 1).ok_or_else(|| Error::Unsupported("p-th power is not elementary".into()))
    };
    let (pt, qt) = (tilde(nf)?, tilde(ng)?);
    if pt.degree() != qt.degree() {
        return no("p-th powers have different degrees");
    }
    let cands: Vec<Scalar> = match pt.degree().finite() {
        None | Some(0) => vec![zero.clone()],
        Some(e) => {
            let ee = k.from_i64(e as i64);
            if !k.is_zero(&ee) {
                let num = k.sub(&qt.coeff(e as usize - 1), &pt.coeff(e as usize - 1));
                vec![k.div(&num, &k.mul(&ee, pt.lead().unwrap())).unwrap()]
            } else if let Some(all) = k.elements() {
                all
            } else {
                return unknown("translation parameter search is too large", false);
            }
        }
    };
    let (vp, vq) = (expand(p, ch as usize), expand(q, ch as usize));
    for c in cands {
        if pt.shift(&c) != qt {
            continue;
        }
        let w = vq.sub(&vp.shift(&c));
        let split = split_difference(&w);
        if !split.v.is_zero() {
            continue;
        }
        let shift =
            crate::amalgam::JonquieresFactor::new(field, one.clone(), Poly::zero(field), one.clone(), k.neg(&c));
        let fix = crate::amalgam::JonquieresFactor::new(field, one.clone(), split.r, one.clone(), zero.clone());
        let h = PlaneAut::new(fix.compose(&shift).to_endo())?;
        return Ok(Step::Yes(h));
    }
    no("no c in K with Q̃(y) = P̃(y + c)")
}

/// Decision for arbitrary special maps: algebraic pairs go through the
/// normal forms, Hénon pairs through invariants and rotations of the core.
pub fn are_conjugate(f: &PlaneAut, g: &PlaneAut) -> Result<Verdict> {
    if !f.is_special() {
        return Err(Error::NotSpecial(f.jacobian().to_string()));
    }
    if !g.is_special() {
        return Err(Error::NotSpecial(g.jacobian().to_string()));
    }
    match (f.is_algebraic(), g.is_algebraic()) {
        (true, true) => Ok(are_conjugate_algebraic(f, g)?.verdict),
        (false, false) => decide_henon(f, g),
        _ => Ok(Verdict::No {
            reason: "exactly one map has bounded degree sequence".into(),
        }),
    }
}

fn henon_of(f: &PlaneAut) -> Result<HenonForm> {
    match henon_normalize(f.word())? {
        Normalized::Henon(h) => Ok(h),
        Normalized::Triangular { .. } => Err(Error::Unsupported("expected a Hénon word".into())),
    }
}

fn decide_henon(f: &PlaneAut, g: &PlaneAut) -> Result<Verdict> {
    let (hf, hg) = (henon_of(f)?, henon_of(g)?);
    let (inv_f, inv_g) = (henon_invariants(&hf), henon_invariants(&hg));
    if inv_f != inv_g {
        return Ok(Verdict::No {
            reason: format!(
                "triangular degrees {:?} and {:?} differ up to rotation",
                inv_f.degrees, inv_g.degrees
            ),
        });
    }
    let field = f.field();
    let core_g = hg.core_map();
    let factors = hf.core.factors().to_vec();
    let n = factors.len();
    // rotating the last 2i factors to the front conjugates by their product
    for i in 0..n / 2 {
        let split = n - 2 * i;
        let mut rotated = factors[split..].to_vec();
        rotated.extend_from_slice(&factors[..split]);
        if AmalgamWord::new(&field, rotated).recompose() != core_g {
            continue;
        }
        let x: Vec<Factor<ScalarField>> = factors[split..].to_vec();
        let k = PlaneAut::from_word(&AmalgamWord::new(&field, x))?;
        let hf_aut = PlaneAut::from_word(&hf.conjugator)?;
        let hg_aut = PlaneAut::from_word(&hg.conjugator)?;
        let h = hg_aut.inverted().compose(&k)?.compose(&hf_aut)?;
        if !conjugates(f, g, &h)? {
            return Err(Error::Unsupported("conjugator failed to verify".into()));
        }
        return Ok(Verdict::Yes { conjugator: h });
    }
    Ok(Verdict::Unknown {
        reason: "equal invariants but no rotation of the cores matches".into(),
        needs_extension: false,
    })
}

/// Result of checking a conjugator and the degree bounds it satisfies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub valid: bool,
    pub conjugator_degree: Degree,
    pub target_degree: Degree,
    /// `deg(h)^2 ≤ deg(g)`.
    pub square_bound: bool,
    /// `deg(h) ≤ deg(g)`.
    pub linear_bound: bool,
}

pub fn verify_conjugacy_certificate(f: &PlaneAut, g: &PlaneAut, h: &PlaneAut) -> CertificateReport {
    let valid = f.field() == g.field() && g.field() == h.field() && conjugates(f, g, h).unwrap_or(false);
    let dh = h.degree().or_zero() as u64;
    let dg = g.degree().or_zero() as u64;
    CertificateReport {
        valid,
        conjugator_degree: h.degree(),
        target_degree: g.degree(),
        square_bound: dh * dh <= dg,
        linear_bound: dh <= dg,
    }
}

/// Replace `h` by a lower-degree `h ∘ f^l`, walking `l` in whichever
/// direction lowers the degree for at most `⌈log_d deg h⌉ + 1` steps,
/// `d = deg f ≥ 2`. Every candidate conjugates `f` to the same map.
pub fn minimize_conjugator(f: &PlaneAut, h: &PlaneAut) -> Result<PlaneAut> {
    let d = f.degree().or_zero();
    if d < 2 {
        return Err(Error::DegreeOne);
    }
    let dh = h.degree().or_zero().max(1) as f64;
    let bound = (dh.ln() / (d as f64).ln()).ceil() as usize + 1;
    let mut best = h.clone();
    for step in [f.clone(), f.inverted()] {
        let mut cur = h.clone();
        for _ in 0..bound {
            cur = cur.compose(&step)?;
            if cur.degree() >= best.degree() {
                break;
            }
            best = cur.clone();
        }
        if best != *h {
            break;
        }
    }
    Ok(best)
}
