use serde_json::{json, Value};

use crate::algebra::text::{parse_components, parse_polynomial, ParsedComponents};
use crate::algebra::{Degree, ScalarField, UniPoly};
use crate::amalgam::{henon_invariants, henon_normalize, Normalized};
use crate::conjugacy::{
    are_conjugate, decompose_v_delta, delta_map, in_v, minimize_conjugator, n_map, normal_form,
    verify_conjugacy_certificate, NormalForm, Verdict,
};
use crate::degeneration::{
    degenerate_family_ii, degenerate_family_iii, degenerate_family_iv, family_inverse, family_valuation,
    family_value_at_zero, lift, pole_propagation_check, x_alpha, TFamily,
};
use crate::endo::{Endo, PlaneAut};
use crate::error::Error;

use super::{Command, Failure, Report, ReportCheck, Verb};

fn parse(src: &str, field: &ScalarField) -> Result<ParsedComponents, Failure> {
    parse_components(src, field).map_err(|e| Failure::from(Error::Parse(e)))
}

fn plain(src: &str, field: &ScalarField) -> Result<Endo<ScalarField>, Failure> {
    match parse(src, field)? {
        ParsedComponents::Plain(v) => Ok(Endo::new(v)?),
        // a family stands for its value at t = 0
        ParsedComponents::Family(v) => Ok(family_value_at_zero(&Endo::new(v)?)?),
    }
}

fn aut(src: &str, field: &ScalarField) -> Result<PlaneAut, Failure> {
    Ok(PlaneAut::new(plain(src, field)?)?)
}

fn family(src: &str, field: &ScalarField) -> Result<TFamily, Failure> {
    match parse(src, field)? {
        ParsedComponents::Plain(v) => Ok(lift(&Endo::new(v)?)),
        ParsedComponents::Family(v) => Ok(Endo::new(v)?),
    }
}

fn check(name: impl Into<String>, passed: bool) -> ReportCheck {
    ReportCheck {
        name: name.into(),
        passed,
    }
}

fn degree_json(d: Degree) -> Value {
    match d.finite() {
        Some(k) => json!(k),
        None => json!("-inf"),
    }
}

struct Builder {
    verb: Verb,
    lines: Vec<String>,
    checks: Vec<ReportCheck>,
}

impl Builder {
    fn new(verb: Verb) -> Self {
        Builder {
            verb,
            lines: vec![],
            checks: vec![],
        }
    }

    fn line(&mut self, key: &str, value: impl std::fmt::Display) {
        self.lines.push(format!("{key}: {value}"));
    }

    fn finish(self, verdict: impl Into<String>, data: Value) -> Result<Report, Failure> {
        Ok(Report {
            verb: self.verb,
            verdict: verdict.into(),
            data,
            checks: self.checks,
            lines: self.lines,
        })
    }
}

pub(super) fn run(cmd: &Command) -> Result<Report, Failure> {
    let f = &cmd.field;
    let inp = &cmd.inputs;
    let mut b = Builder::new(cmd.verb);
    match cmd.verb {
        Verb::Compose => {
            let parsed = inp.iter().map(|s| parse(s, f)).collect::<Result<Vec<_>, _>>()?;
            let any_family = parsed.iter().any(|p| matches!(p, ParsedComponents::Family(_)));
            let result = if any_family {
                let fams = inp.iter().map(|s| family(s, f)).collect::<Result<Vec<_>, _>>()?;
                let n = fams[0].nvars();
                Endo::compose_all(fams[0].ring(), n, &fams)?.to_string()
            } else {
                let maps = inp.iter().map(|s| plain(s, f)).collect::<Result<Vec<_>, _>>()?;
                Endo::compose_all(f, maps[0].nvars(), &maps)?.to_string()
            };
            b.line("composite", &result);
            b.finish("ok", json!({"composite": result}))
        }
        Verb::Inverse => match parse(&inp[0], f)? {
            ParsedComponents::Family(_) => {
                let a = family(&inp[0], f)?;
                let inv = family_inverse(&a)?;
                b.line("inverse", &inv);
                b.checks.push(check("composition with the input is the identity", true));
                b.finish(
                    "ok",
                    json!({"inverse": inv.to_string(), "valuation": family_valuation(&inv).to_string()}),
                )
            }
            ParsedComponents::Plain(_) => {
                let a = aut(&inp[0], f)?;
                b.line("inverse", a.inverse());
                b.line("jacobian", a.jacobian());
                b.checks
                    .push(check("f o f^-1 = id", a.forward().compose(a.inverse())?.is_identity()));
                b.checks
                    .push(check("f^-1 o f = id", a.inverse().compose(a.forward())?.is_identity()));
                b.finish(
                    "ok",
                    json!({"inverse": a.inverse().to_string(), "jacobian": a.jacobian().to_string(), "degree": degree_json(a.degree())}),
                )
            }
        },
        Verb::Factor => {
            let a = aut(&inp[0], f)?;
            let w = a.word();
            let tags: String = w.tags().iter().map(|t| t.to_string()).collect();
            b.line("word", w);
            b.line("tags", &tags);
            b.line("degree", a.degree());
            b.checks.push(check("recomposition", w.recompose() == *a.forward()));
            let normalization = match henon_normalize(w) {
                Ok(Normalized::Triangular {
                    representative,
                    conjugator,
                }) => {
                    b.line("triangular form", representative.to_endo());
                    b.line("conjugator", &conjugator);
                    json!({"kind": "triangular", "representative": representative.to_endo().to_string(), "conjugator": conjugator.to_string()})
                }
                Ok(Normalized::Henon(h)) => {
                    let inv = henon_invariants(&h);
                    b.line("henon core", &h.core);
                    b.line("conjugator", &h.conjugator);
                    b.checks.push(check(
                        "degree is the product of the triangular degrees",
                        h.core_map().degree().finite().map(u64::from) == Some(h.core.jonquieres_degree_product()),
                    ));
                    json!({"kind": "henon", "core": h.core.to_string(), "conjugator": h.conjugator.to_string(),
                           "degrees": inv.degrees, "length": inv.length})
                }
                Err(e) => {
                    b.line("normalization", &e);
                    json!({"kind": "error", "message": e.to_string()})
                }
            };
            b.finish(
                "ok",
                json!({"word": w.to_string(), "tags": tags, "length": w.len(), "degree": degree_json(a.degree()),
                       "normalization": normalization}),
            )
        }
        Verb::Classify => {
            let a = aut(&inp[0], f)?;
            if a.is_algebraic() {
                let r = normal_form(&a)?;
                b.line("family", r.form.family());
                b.line("normal form", &r.form);
                b.line("representative", r.representative.forward());
                b.line("conjugator", r.conjugator.forward());
                let rep_ok = r.representative.forward().compose(r.conjugator.forward())?
                    == r.conjugator.forward().compose(a.forward())?;
                b.checks.push(check("representative = h o f o h^-1", rep_ok));
                let params = form_json(&r.form);
                b.finish(
                    r.form.family(),
                    json!({"algebraic": true, "family": r.form.family(), "normal_form": r.form.to_string(),
                           "parameters": params, "representative": r.representative.forward().to_string(),
                           "conjugator": r.conjugator.forward().to_string()}),
                )
            } else {
                let h = match henon_normalize(a.word())? {
                    Normalized::Henon(h) => h,
                    Normalized::Triangular { .. } => unreachable!("unbounded degrees"),
                };
                let inv = henon_invariants(&h);
                b.line("family", "henon");
                b.line("core", &h.core);
                b.line("triangular degrees", format!("{:?}", inv.degrees));
                b.finish(
                    "henon",
                    json!({"algebraic": false, "core": h.core.to_string(), "conjugator": h.conjugator.to_string(),
                           "degrees": inv.degrees, "length": inv.length, "degree": degree_json(a.degree())}),
                )
            }
        }
        Verb::ConjTest => {
            let (x, y) = (aut(&inp[0], f)?, aut(&inp[1], f)?);
            let v = are_conjugate(&x, &y)?;
            b.line("verdict", v.label());
            let family = if x.is_algebraic() {
                normal_form(&x)?.form.family()
            } else {
                "henon"
            };
            b.line("family of f", family);
            let mut data = json!({"verdict": v.label(), "family": family});
            match &v {
                Verdict::Yes { conjugator } => {
                    let h = if x.degree().or_zero() >= 2 && !x.is_algebraic() {
                        minimize_conjugator(&x, conjugator)?
                    } else {
                        conjugator.clone()
                    };
                    let rep = verify_conjugacy_certificate(&x, &y, &h);
                    b.line("conjugator", h.forward());
                    b.checks.push(check("g o h = h o f", rep.valid));
                    b.line("deg(h)^2 <= deg(g)", rep.square_bound);
                    b.line("deg(h) <= deg(g)", rep.linear_bound);
                    data["conjugator"] = json!(h.forward().to_string());
                    data["conjugator_word"] = json!(h.word().to_string());
                    data["square_bound"] = json!(rep.square_bound);
                    data["linear_bound"] = json!(rep.linear_bound);
                }
                Verdict::No { reason } => {
                    b.line("reason", reason);
                    data["reason"] = json!(reason);
                }
                Verdict::Unknown {
                    reason,
                    needs_extension,
                } => {
                    b.line("reason", reason);
                    b.line("needs extension", needs_extension);
                    data["reason"] = json!(reason);
                    data["needs_extension"] = json!(needs_extension);
                }
            }
            b.finish(v.label(), data)
        }
        Verb::Degseq => {
            let m = plain(&inp[0], f)?;
            let seq = m.degree_sequence(cmd.n)?;
            let shown: Vec<String> = seq.iter().map(|d| d.to_string()).collect();
            b.line("degrees", format!("[{}]", shown.join(", ")));
            b.finish(
                "ok",
                json!({"degrees": seq.iter().map(|d| degree_json(*d)).collect::<Vec<_>>()}),
            )
        }
        Verb::Regular => {
            let a = aut(&inp[0], f)?;
            let r = a.regularity();
            let verdict = if r.regular { "yes" } else { "no" };
            b.line("regular", verdict);
            b.line("degree", r.degree);
            b.line("degree of square", r.square_degree);
            let mut data = json!({"regular": r.regular, "degree": degree_json(r.degree), "square_degree": degree_json(r.square_degree)});
            if let Some((i, j)) = &r.points {
                b.line("I_f", i);
                b.line("I_f^-1", j);
                data["indeterminacy"] = json!(i.to_string());
                data["inverse_indeterminacy"] = json!(j.to_string());
            }
            if let Some(ok) = r.points_agree {
                b.checks.push(check("I_f != I_f^-1 agrees with the degree test", ok));
            }
            b.finish(verdict, data)
        }
        Verb::Degenerate => {
            let a = aut(&inp[0], f)?;
            let r = normal_form(&a)?;
            let w = match &r.form {
                NormalForm::Diagonal { .. } => {
                    return Err(Error::InvalidArgument("diagonal maps are already the limit".into()).into())
                }
                NormalForm::Elementary { p } => degenerate_family_ii(p)?,
                NormalForm::RootOfUnity { zeta, m, p } => degenerate_family_iii(zeta, *m, p)?,
                NormalForm::Translation { p } => {
                    let q = match f.characteristic() {
                        0 => {
                            return Err(Error::Unsupported(
                                "in characteristic 0 the translation is conjugate to (x1 + 1, x2)".into(),
                            )
                            .into())
                        }
                        c => crate::conjugacy::charp::expand(p, c as usize),
                    };
                    degenerate_family_iv(&q, cmd.variant)?
                }
            };
            b.line("family", r.form.family());
            b.line("representative", &w.source);
            b.line("conjugator", &w.conjugator);
            b.line("degeneration", &w.family);
            b.line("limit", &w.limit);
            for c in &w.checks {
                b.checks.push(check(c.name.clone(), c.passed));
            }
            let mut data = json!({"family": r.form.family(), "representative": w.source.to_string(),
                                  "normalizing_conjugator": r.conjugator.forward().to_string(),
                                  "conjugator": w.conjugator.to_string(), "degeneration": w.family.to_string(),
                                  "limit": w.limit.to_string()});
            if let Some(p) = &w.parameters {
                b.line(
                    "parameters",
                    format!(
                        "d={} mu={} q={} lambda={} m={}",
                        p.d,
                        p.mu,
                        p.q,
                        p.lambda,
                        p.m.map_or("-".to_string(), |m| m.to_string())
                    ),
                );
                data["variant"] = json!(cmd.variant.to_string());
                data["parameters"] = json!({"d": p.d, "mu": p.mu.to_string(), "q": p.q, "lambda": p.lambda.to_string(),
                                            "m": p.m, "P": p.remainder.to_string()});
            }
            if !w.passed() {
                return Err(Error::Unsupported("degeneration checks failed".into()).into());
            }
            b.finish("ok", data)
        }
        Verb::Xalpha => {
            let a = family(&inp[0], f)?;
            let x = x_alpha(&a)?;
            let pts: Vec<String> = x.points.iter().map(|p| p.to_string()).collect();
            b.line("pole order", x.pole_order);
            b.line("reduced", &x.reduced);
            b.line("sampled points", pts.join(" "));
            b.finish(
                "ok",
                json!({"pole_order": x.pole_order, "reduced": x.reduced.to_string(), "points": pts}),
            )
        }
        Verb::PoleCheck => {
            let a = aut(&inp[0], f)?;
            let alpha = family(&inp[1], f)?;
            let r = pole_propagation_check(&a, &alpha)?;
            let verdict = if r.conjugate_valuation.is_pole() {
                "pole"
            } else {
                "no-pole"
            };
            let pts: Vec<String> = r.x_alpha.points.iter().map(|p| p.to_string()).collect();
            b.line("I_f", &r.indeterminacy);
            b.line("sampled X_alpha", pts.join(" "));
            b.line("hypothesis (some sample avoids I_f)", r.hypothesis);
            b.line("valuation of alpha^-1 f alpha", r.conjugate_valuation);
            b.line("valuation of alpha^-1 f^-1 alpha", r.inverse_conjugate_valuation);
            b.checks.push(check("hypothesis implies a pole", r.conclusion_holds()));
            b.checks
                .push(check("one of the two conjugates has a pole", r.dichotomy_holds()));
            b.finish(
                verdict,
                json!({"indeterminacy": r.indeterminacy.to_string(), "x_alpha": pts, "hypothesis": r.hypothesis,
                       "conjugate_valuation": r.conjugate_valuation.to_string(),
                       "inverse_conjugate_valuation": r.inverse_conjugate_valuation.to_string()}),
            )
        }
        Verb::DecomposeVp => {
            let src = inp[0].trim();
            let poly = parse_polynomial(src, f, 1).map_err(|e| Failure::from(Error::Parse(e)))?;
            let uni = UniPoly::from_multi(&poly, 0).expect("one variable");
            let d = decompose_v_delta(&uni)?;
            let show = |p: &UniPoly<ScalarField>| p.to_multi(1, 0).to_string();
            b.line("v", show(&d.v));
            b.line("r", show(&d.r));
            b.line("P (v = x1^(p-1) P(x1^p))", show(&d.v_part()));
            let recon = d.v.add(&delta_map(&d.r)) == uni;
            b.checks.push(check("F = v + delta(r)", recon));
            b.checks.push(check("v in V", in_v(&d.v) || d.v.is_zero()));
            b.checks.push(check("N(F) = N(v)", n_map(&uni)? == n_map(&d.v)?));
            b.finish("ok", json!({"v": show(&d.v), "r": show(&d.r), "P": show(&d.v_part())}))
        }
    }
}

fn form_json(form: &NormalForm) -> Value {
    let show = |p: &UniPoly<ScalarField>| p.to_multi(1, 0).to_string();
    match form {
        NormalForm::Diagonal { a } => json!({"a": a.to_string()}),
        NormalForm::Elementary { p } => json!({"P": show(p)}),
        NormalForm::RootOfUnity { zeta, m, p } => json!({"zeta": zeta.to_string(), "m": m, "P": show(p)}),
        NormalForm::Translation { p } => json!({"P": show(p)}),
    }
}
