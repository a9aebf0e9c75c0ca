use std::path::Path;

use artinv_core::algebra::{ArtinianAlgebra, Element, IdealInA};
use artinv_core::arith::FieldSpec;
use artinv_core::fixtures;
use artinv_core::hilbert::{self, OSequence};
use artinv_core::invariants::{
    self, Certificate, Effort, ExactnessVerdict, InvariantError, ReesMode, ReesResult, XiFamily,
};
use artinv_core::par::Parallelism;
use artinv_core::presentation::Presentation;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("io: cannot read {0}: {1}")]
    Io(String, String),
    #[error(transparent)]
    Core(#[from] artinv_core::Error),
    #[error("input: {0}")]
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => e.exit_code() as u8,
            CliError::Io(..) | CliError::Input(_) => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn core<E: Into<artinv_core::Error>>(e: E) -> CliError {
    CliError::Core(e.into())
}

pub struct Context {
    pub cap: u64,
    pub mode: Option<ReesMode>,
    pub sequential: bool,
}

#[derive(Clone, Copy)]
pub enum Spec<'a> {
    Report,
    Hilbert,
    Rees,
    Dilworth,
    Socle,
    Mu(&'a str),
    Annihilator(&'a str),
    Lefschetz(Option<&'a str>),
    Exactness,
    QuotientLength(&'a [String]),
    Xi(&'a str),
    FactMain(&'a str, &'a str),
}

pub fn load(src: &str) -> Result<Presentation> {
    Presentation::from_toml_str(src).map_err(core)
}

pub fn digest(p: &Presentation) -> String {
    hex::encode(Sha256::digest(p.canonical().as_bytes()))
}

pub fn presentation_json(p: &Presentation, file: &Path) -> Value {
    let registered: Map<String, Value> = p.registered.iter().map(|(n, g)| (n.clone(), json!(g))).collect();
    json!({
        "file": file.display().to_string(),
        "name": p.name,
        "field": p.field.to_string(),
        "vars": p.vars,
        "ideal": p.ideal,
        "params": p.params,
        "registered_ideals": registered,
        "digest": digest(p),
    })
}

fn effort(p: &Presentation, a: &ArtinianAlgebra, ctx: &Context) -> Result<Effort> {
    Ok(Effort {
        cap: ctx.cap,
        parallelism: if ctx.sequential {
            Parallelism::Sequential
        } else {
            Parallelism::Parallel
        },
        registered: p.registered_ideals(a).map_err(core)?,
        rees_mode: ctx.mode,
        ..Effort::default()
    })
}

fn poly(a: &ArtinianAlgebra, e: &Element) -> String {
    a.to_poly(e).to_string()
}

/// A minimal generating set, as polynomials.
fn generators(a: &ArtinianAlgebra, n: &IdealInA) -> Vec<String> {
    a.m_times(n.space())
        .complement_in(n.space())
        .into_iter()
        .map(|v| poly(a, &Element::new(v)))
        .collect()
}

fn element(a: &ArtinianAlgebra, src: &str) -> Result<Element> {
    a.parse_element(src).map_err(core)
}

fn named_ideal(p: &Presentation, a: &ArtinianAlgebra, name: &str) -> Result<IdealInA> {
    if name == "m" {
        return Ok(a.maximal_ideal());
    }
    if let Some(k) = name.strip_prefix("m^") {
        let k: usize = k
            .parse()
            .map_err(|_| CliError::Input(format!("bad power in `{name}`")))?;
        return Ok(a.mpow(k));
    }
    p.registered_ideal(a, name).map_err(core)
}

fn hf(a: &ArtinianAlgebra) -> Result<Vec<usize>> {
    a.hilbert_function().map_err(core)
}

pub fn dispatch(spec: Spec<'_>, p: &Presentation, ctx: &Context) -> Result<Value> {
    let a = p.build().map_err(core)?;
    let e = effort(p, &a, ctx)?;
    match spec {
        Spec::Report => report(&a, &e, ctx),
        Spec::Hilbert => {
            let h = hf(&a)?;
            let seq = OSequence::try_from(h.as_slice()).map_err(core)?;
            Ok(json!({
                "length": a.dim(),
                "hilbert_function": h,
                "loewy_length": a.loewy_length().map_err(core)?,
                "homogeneous": a.is_homogeneous(),
                "admissible": hilbert::is_admissible(&seq),
                "shape": hilbert::classify_shape(&seq),
            }))
        }
        Spec::Rees => Ok(rees_json(&a, &invariants::best_rees(&a, &e).map_err(core)?)),
        Spec::Dilworth => dilworth(&a, &e, ctx, true),
        Spec::Socle => {
            let s = a.socle().map_err(core)?;
            let basis: Vec<String> = s
                .space()
                .rows()
                .iter()
                .map(|r| poly(&a, &Element::new(r.clone())))
                .collect();
            Ok(json!({
                "dimension": s.dim(),
                "basis": basis,
                "gorenstein": s.dim() == 1,
            }))
        }
        Spec::Mu(name) => {
            let n = named_ideal(p, &a, name)?;
            Ok(json!({
                "ideal": name,
                "mu": invariants::mu(&a, &n).map_err(core)?,
                "dimension": n.dim(),
                "generators": generators(&a, &n),
            }))
        }
        Spec::Annihilator(src) => {
            let x = element(&a, src)?;
            let ann = a.annihilator(&x);
            Ok(json!({
                "element": poly(&a, &x),
                "dimension": ann.dim(),
                "generators": generators(&a, &ann),
                "colength": invariants::colength(&a, &x),
            }))
        }
        Spec::Lefschetz(Some(src)) => {
            let l = element(&a, src)?;
            let w = invariants::weak_lefschetz(&a, &l).map_err(core)?;
            Ok(json!({
                "element": poly(&a, &l),
                "holds": w.holds,
                "colength": w.colength,
                "max_hilbert": hf(&a)?.into_iter().max(),
                "rows": wl_rows(&w.rows),
            }))
        }
        Spec::Lefschetz(None) => {
            let g = invariants::has_wl_generic(&a).map_err(core)?;
            Ok(json!({
                "element": "generic",
                "holds": g.holds,
                "cross_check": g.cross_check,
                "rows": wl_rows(&g.rows),
            }))
        }
        Spec::Exactness => Ok(verdict_json(&a, &invariants::exactness(&a, &e).map_err(core)?)),
        Spec::QuotientLength(srcs) => {
            let xs = srcs.iter().map(|s| element(&a, s)).collect::<Result<Vec<_>>>()?;
            Ok(json!({
                "elements": xs.iter().map(|x| poly(&a, x)).collect::<Vec<_>>(),
                "quotient_length": a.quotient_length(&xs),
            }))
        }
        Spec::Xi(family) => {
            let fam = match family {
                "degree1" => XiFamily::DegreeOne,
                "all" => XiFamily::AllOfM,
                other => {
                    return Err(CliError::Input(format!(
                        "unknown family `{other}` (expected degree1 or all)"
                    )))
                }
            };
            let s = invariants::xi_certificate_search(&a, fam, &e).map_err(core)?;
            Ok(json!({
                "family": family,
                "witness": s.witness.as_ref().map(|x| poly(&a, x)),
                "colength": s.witness.as_ref().map(|x| invariants::colength(&a, x)),
                "mu_m": invariants::mu(&a, &a.maximal_ideal()).map_err(core)?,
                "examined": s.examined,
                "exhausted": s.exhausted,
            }))
        }
        Spec::FactMain(src, name) => {
            let x = element(&a, src)?;
            let n = named_ideal(p, &a, name)?;
            let r = invariants::fact_main_check(&a, &x, &n).map_err(core)?;
            Ok(json!({
                "element": poly(&a, &x),
                "ideal": name,
                "annihilator_in_n": r.annihilator_in_n,
                "m_n_equals_a_n": r.m_n_equals_a_n,
                "mu": r.mu,
                "colength": r.colength,
                "equality": r.equality,
                "biconditional_holds": r.biconditional_holds,
            }))
        }
    }
}

fn wl_rows(rows: &[invariants::WlRow]) -> Value {
    rows.iter()
        .map(|r| {
            json!({
                "degree": r.degree,
                "rank": r.rank,
                "source_dim": r.source_dim,
                "target_dim": r.target_dim,
                "maximal": r.maximal,
            })
        })
        .collect()
}

fn report(a: &ArtinianAlgebra, e: &Effort, ctx: &Context) -> Result<Value> {
    let mut out = json!({
        "length": a.dim(),
        "variables": a.nvars(),
        "homogeneous": a.is_homogeneous(),
        "monomial": a.is_monomial(),
        "local": a.is_local(),
    });
    if !a.is_local() {
        return Ok(out);
    }
    let obj = out.as_object_mut().expect("object");
    let h = hf(a)?;
    obj.insert("hilbert_function".into(), json!(h));
    obj.insert("loewy_length".into(), json!(a.loewy_length().map_err(core)?));
    obj.insert(
        "embedding_dimension".into(),
        json!(invariants::mu(a, &a.maximal_ideal()).map_err(core)?),
    );
    obj.insert("socle_dimension".into(), json!(a.socle().map_err(core)?.dim()));
    obj.insert("gorenstein".into(), json!(a.is_gorenstein().map_err(core)?));
    obj.insert(
        "complete_intersection".into(),
        json!(a.is_complete_intersection().map_err(core)?),
    );
    obj.insert("rees".into(), rees_json(a, &invariants::best_rees(a, e).map_err(core)?));
    obj.insert("dilworth".into(), dilworth(a, e, ctx, false)?);
    obj.insert(
        "verdict".into(),
        verdict_json(a, &invariants::exactness(a, e).map_err(core)?),
    );
    Ok(out)
}

fn rees_json(a: &ArtinianAlgebra, r: &ReesResult) -> Value {
    json!({
        "value": r.value,
        "mode": r.mode.to_string(),
        "exact": r.exact,
        "witness": r.witness.as_ref().map(|x| poly(a, x)),
        "examined": r.examined,
    })
}

/// The oracle over finite fields unless another mode is forced; bounds
/// otherwise. With `strict` a forced oracle that cannot run is an error.
fn dilworth(a: &ArtinianAlgebra, e: &Effort, ctx: &Context, strict: bool) -> Result<Value> {
    let want_oracle = match ctx.mode {
        Some(ReesMode::ExhaustiveAll) => true,
        Some(_) => false,
        None => a.field().is_finite(),
    };
    let mut note = Value::Null;
    if want_oracle {
        match invariants::dilworth_oracle(a, e) {
            Ok(o) => {
                return Ok(json!({
                    "method": "oracle",
                    "value": o.value,
                    "lower": o.value,
                    "upper": o.value,
                    "maximizer": generators(a, &o.maximizer),
                    "maximizer_count": o.maximizers.len(),
                    "ideal_count": o.ideal_count,
                    "note": null,
                }))
            }
            Err(err @ (InvariantError::CapExceeded { .. } | InvariantError::NotFiniteField)) if !strict => {
                note = json!(format!("oracle skipped: {err}"));
            }
            Err(err) => return Err(core(err)),
        }
    }
    let b = invariants::dilworth_bounds(a, e).map_err(core)?;
    Ok(json!({
        "method": "bounds",
        "value": (b.lower == b.upper).then_some(b.lower),
        "lower": b.lower,
        "upper": b.upper,
        "lower_source": b.lower_source,
        "maximizer": generators(a, &b.lower_ideal),
        "rees_mode": b.rees.mode.to_string(),
        "note": note,
    }))
}

fn cert_json(a: &ArtinianAlgebra, c: &Certificate) -> Value {
    match c {
        Certificate::XiWitness { xi } => json!({ "kind": c.kind(), "xi": poly(a, xi) }),
        Certificate::IdealWitness { ideal, label, element } => json!({
            "kind": c.kind(),
            "ideal": label,
            "ideal_generators": generators(a, ideal),
            "element": poly(a, element),
        }),
        Certificate::MonomialCriterionFailure { deficit } => json!({ "kind": c.kind(), "deficit": deficit }),
        Certificate::ExhaustiveEnumeration {
            ideal_count,
            maximizer,
            rees_witness,
        } => json!({
            "kind": c.kind(),
            "ideal_count": ideal_count,
            "maximizer_generators": generators(a, maximizer),
            "rees_witness": poly(a, rees_witness),
        }),
        Certificate::Trivial => json!({ "kind": c.kind() }),
    }
}

fn verdict_json(a: &ArtinianAlgebra, v: &ExactnessVerdict) -> Value {
    let (lower, upper, rees, cert) = match v {
        ExactnessVerdict::Exact { value, witness } => (*value, json!(value), json!(value), cert_json(a, witness)),
        ExactnessVerdict::NotExact {
            dilworth_lower,
            dilworth_upper,
            rees,
            evidence,
        } => (
            *dilworth_lower,
            json!(dilworth_upper),
            json!(rees),
            cert_json(a, evidence),
        ),
        ExactnessVerdict::Unknown { lower, upper } => (*lower, Value::Null, json!(upper), Value::Null),
    };
    json!({
        "label": v.label(),
        "display": v.to_string(),
        "dilworth_lower": lower,
        "dilworth_upper": upper,
        "rees": rees,
        "certificate": cert,
    })
}

pub fn char_compare(spec: Spec<'_>, p: &Presentation, q: u64, ctx: &Context, base: &Value) -> Result<Value> {
    let field = FieldSpec::prime(q).map_err(|e| CliError::Input(format!("--char-compare: {e}")))?;
    let other = p.with_field(field);
    let results = match dispatch(spec, &other, ctx) {
        Ok(v) => v,
        Err(e) => json!({ "error": e.to_string() }),
    };
    let differences: Vec<String> = match (base.as_object(), results.as_object()) {
        (Some(x), Some(y)) => x
            .keys()
            .chain(y.keys().filter(|k| !x.contains_key(*k)))
            .filter(|k| x.get(*k) != y.get(*k))
            .cloned()
            .collect(),
        _ => Vec::new(),
    };
    Ok(json!({
        "field": field.to_string(),
        "digest": digest(&other),
        "results": results,
        "differences": differences,
    }))
}

pub fn macaulay(src: &str) -> Result<Value> {
    let h: OSequence = src.parse().map_err(core)?;
    let v = h.values();
    let steps: Vec<Value> = (1..v.len().saturating_sub(1))
        .map(|i| {
            let bound = hilbert::macaulay_bound(v[i], i as u64);
            let rep: Vec<String> = hilbert::macaulay_representation(v[i], i as u64)
                .iter()
                .map(|(a, j)| format!("C({a},{j})"))
                .collect();
            json!({
                "i": i,
                "h_i": v[i],
                "representation": rep.join(" + "),
                "bound": bound,
                "h_next": v[i + 1],
                "ok": v[i + 1] <= bound,
            })
        })
        .collect();
    Ok(json!({
        "sequence": h.to_string(),
        "admissible": hilbert::is_admissible(&h),
        "steps": steps,
        "shape": hilbert::classify_shape(&h),
    }))
}

pub fn fixtures() -> (Value, Option<String>) {
    let outcomes = fixtures::run_suite();
    let failed: Vec<&fixtures::Outcome> = outcomes.iter().filter(|o| !o.passed).collect();
    let rows: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            json!({
                "status": if o.passed { "pass" } else { "FAIL" },
                "fixture": o.fixture,
                "claim": o.claim,
                "expected": o.expected,
                "actual": o.actual,
            })
        })
        .collect();
    let first = failed.first().map(|o| format!("{}: {}", o.fixture, o.claim));
    let v = json!({
        "total": outcomes.len(),
        "passed": outcomes.len() - failed.len(),
        "failed": failed.len(),
        "first_failure": first,
        "outcomes": rows,
    });
    (v, first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use artinv_core::algebra::AlgebraError;

    #[test]
    fn exit_codes_follow_the_contract() {
        let internal = CliError::Core(InvariantError::Internal("x".into()).into());
        assert_eq!(internal.exit_code(), 3);
        let cap = CliError::Core(
            InvariantError::CapExceeded {
                what: "x".into(),
                cap: 1,
            }
            .into(),
        );
        assert_eq!(cap.exit_code(), 2);
        assert_eq!(CliError::Core(AlgebraError::TooLarge(10).into()).exit_code(), 2);
        assert_eq!(
            CliError::Core(AlgebraError::NotArtinian("x".into()).into()).exit_code(),
            1
        );
        assert_eq!(CliError::Io("f".into(), "gone".into()).exit_code(), 1);
    }
}
