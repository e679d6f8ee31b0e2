use std::fs;
use std::io::{self, Read};
use std::path::Path;

use gitstab::exact::{approx, fmt_rational, parse_rational, parse_rational_list};
use gitstab::lp::solve_traced;
use gitstab::stability::cone_probe;
use gitstab::{
    build_degeneration, classify_torus, classify_with_bases, destabilizer, euler_check,
    from_destabilizer, futaki_from_kappa, futaki_of_limit, limit_poly, mu, oracle_classify,
    parse_field, parse_poly, theorem_crosscheck, weight_spectrum, Error, FutakiValue, HPoly,
    Result, StabilityClass, StabilityVerdict, VerdictScope, WeightVector, Q,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::input::read_poly;
use crate::sweep::random_bases;
use crate::{PolyInput, Settings};

const DEFAULT_BOUND: i64 = 4;

/// Exact value, with a decimal hint for non-integers.
fn human(x: &Q) -> String {
    if x.is_integer() {
        fmt_rational(x)
    } else {
        format!("{} (≈ {:.6})", fmt_rational(x), approx(x))
    }
}

fn emit(settings: &Settings, value: &Value, text: impl FnOnce() -> String) {
    if settings.json {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        println!("{}", text());
    }
}

fn read_weights(text: &str, f: &HPoly) -> Result<WeightVector> {
    let w = parse_rational_list(text)?;
    if w.len() != f.n_vars() {
        return Err(Error::DimensionMismatch { expected: f.n_vars(), actual: w.len() });
    }
    Ok(WeightVector::new(w))
}

fn exit_for(class: StabilityClass) -> u8 {
    match class {
        StabilityClass::Stable => 0,
        StabilityClass::WeaklyStableNotStable => 3,
        StabilityClass::NotWeaklyStable => 4,
    }
}

fn scope_label(v: &StabilityVerdict) -> String {
    match v.scope {
        VerdictScope::GivenBasis => "given basis".into(),
        VerdictScope::WithinBox(b) => format!("within box [-{b}, {b}]"),
        VerdictScope::TriedBases(k) => format!("relative to tried bases: {k} random + given"),
    }
}

fn verdict_json(v: &StabilityVerdict) -> Value {
    let mut j = v.to_json();
    j["scope"] = Value::String(scope_label(v));
    if let VerdictScope::TriedBases(k) = v.scope {
        j["bases_tried"] = Value::from(k + 1);
    }
    j
}

fn verdict_text(v: &StabilityVerdict) -> String {
    let mut out = format!("class: {} ({})\n", v.class.as_str(), scope_label(v));
    match &v.destabilizer {
        Some(w) => out.push_str(&format!("destabilizer: {w}\n")),
        None => out.push_str("destabilizer: none\n"),
    }
    if let Some(m) = &v.certificate_mu {
        out.push_str(&format!("mu: {}\n", human(m)));
    }
    out.push_str(&format!("fixing subspace dim: {}", v.fixing_subspace_dim));
    if let Some(p) = &v.basis {
        out.push_str(&format!("\nbasis: {p}"));
    }
    out
}

fn classify(settings: &Settings, f: &HPoly) -> Result<StabilityVerdict> {
    if settings.basis_sweep == 0 {
        return Ok(classify_torus(f));
    }
    let bases = random_bases(f.n_vars(), settings.basis_sweep, settings.seed);
    classify_with_bases(f, &bases)
}

pub fn cmd_parse(settings: &Settings, input: &PolyInput) -> Result<u8> {
    let f = read_poly(input)?;
    let d = euler_check(&f);
    let support: Vec<Vec<u32>> = f.terms().map(|(m, _)| m.exponents().to_vec()).collect();
    let j = json!({
        "f": f.to_string(),
        "n_vars": f.n_vars(),
        "degree": d,
        "terms": f.len(),
        "support": support,
    });
    emit(settings, &j, || {
        format!("{f}\nvariables: {}, degree: {d}, terms: {}", f.n_vars(), f.len())
    });
    Ok(0)
}

pub fn cmd_mu(settings: &Settings, input: &PolyInput, weights: &str) -> Result<u8> {
    let f = read_poly(input)?;
    let lambda = read_weights(weights, &f)?;
    let m = mu(&lambda, &f)?;
    let spectrum = weight_spectrum(&lambda, &f)?;
    let limit = limit_poly(&lambda, &f)?;
    let strata: Vec<Value> = spectrum
        .entries()
        .iter()
        .map(|(w, p)| json!({"weight": fmt_rational(w), "terms": p.to_string()}))
        .collect();
    let j = json!({
        "f": f.to_string(),
        "weights": lambda.to_strings(),
        "mu": fmt_rational(&m),
        "spectrum": strata,
        "limit": limit.to_string(),
    });
    emit(settings, &j, || {
        let mut out = format!("mu = {}\nspectrum:\n", human(&m));
        for (w, p) in spectrum.entries() {
            out.push_str(&format!("  {}: {p}\n", human(w)));
        }
        out.push_str(&format!("limit = {limit}"));
        out
    });
    Ok(0)
}

pub fn cmd_limit(settings: &Settings, input: &PolyInput, weights: &str) -> Result<u8> {
    let f = read_poly(input)?;
    let lambda = read_weights(weights, &f)?;
    let m = mu(&lambda, &f)?;
    let limit = limit_poly(&lambda, &f)?;
    let j = json!({"limit": limit.to_string(), "mu": fmt_rational(&m)});
    emit(settings, &j, || limit.to_string());
    Ok(0)
}

pub fn cmd_stability(settings: &Settings, input: &PolyInput, oracle: bool) -> Result<u8> {
    let f = read_poly(input)?;
    let verdict = classify(settings, &f)?;
    let mut j = verdict_json(&verdict);
    let mut text = verdict_text(&verdict);
    if oracle {
        let bound = settings.bound.unwrap_or(DEFAULT_BOUND);
        let o = oracle_classify(&f, bound)?;
        j["oracle"] = verdict_json(&o);
        text.push_str(&format!("\noracle: {}", verdict_text(&o).replace('\n', "\n  ")));
    }
    emit(settings, &j, || text);
    Ok(exit_for(verdict.class))
}

pub fn cmd_destabilize(settings: &Settings, input: &PolyInput) -> Result<u8> {
    let f = read_poly(input)?;
    let found = destabilizer(&f);
    let m = match &found {
        Some(w) => Some(mu(w, &f)?),
        None => None,
    };
    let j = json!({
        "destabilizer": found.as_ref().map(WeightVector::to_strings),
        "mu": m.as_ref().map(fmt_rational),
    });
    emit(settings, &j, || match (&found, &m) {
        (Some(w), Some(m)) => format!("{w}  (mu = {})", human(m)),
        _ => "none".into(),
    });
    Ok(0)
}

fn futaki_json(v: &FutakiValue) -> Value {
    json!({
        "futaki": fmt_rational(&v.value),
        "kappa": fmt_rational(&v.kappa),
        "n": v.n,
        "d": v.d,
    })
}

pub fn cmd_futaki(
    settings: &Settings,
    input: &PolyInput,
    weights: Option<&str>,
    kappa: Option<&str>,
    dim: Option<usize>,
    degree: Option<u32>,
) -> Result<u8> {
    let v = match (kappa, weights) {
        (Some(k), _) => {
            let (n, d) = dim.zip(degree).ok_or_else(|| Error::InvalidArgument("--kappa needs --dim and --degree".into()))?;
            futaki_from_kappa(n, d, parse_rational(k)?)?
        }
        (None, Some(w)) => {
            let f = read_poly(input)?;
            futaki_of_limit(&read_weights(w, &f)?, &f)?
        }
        (None, None) => return Err(Error::InvalidArgument("need -w/--weights or --kappa".into())),
    };
    emit(settings, &futaki_json(&v), || {
        format!("futaki = {}  (kappa = {}, n = {}, d = {})", human(&v.value), human(&v.kappa), v.n, v.d)
    });
    Ok(0)
}

pub fn cmd_degenerate(
    settings: &Settings,
    input: &PolyInput,
    field: Option<&str>,
    from: Option<&str>,
) -> Result<u8> {
    let f = read_poly(input)?;
    let report = match (field, from) {
        (Some(text), _) => build_degeneration(&f, &parse_field(text)?)?,
        (None, Some("")) => {
            let lambda = destabilizer(&f).ok_or_else(|| {
                Error::InvalidArgument("no destabilizing weight: f is weakly stable for the torus".into())
            })?;
            from_destabilizer(&f, &lambda)?
        }
        (None, Some(w)) => from_destabilizer(&f, &read_weights(w, &f)?)?,
        (None, None) => return Err(Error::InvalidArgument("need --field or --from-destabilizer".into())),
    };
    emit(settings, &report.to_json(), || {
        let fam = &report.family;
        let mut out = format!("f = {}\ngenerator: {}\ns rescale: {}\n", fam.base_poly, fam.generator, fam.s_rescale);
        for (e, p) in &fam.strata {
            out.push_str(&format!("  s^{e}: {p}\n"));
        }
        out.push_str(&format!("special fiber: {}\ntrivial: {}\n", report.special_fiber, report.trivial));
        match &report.futaki {
            Some(v) => out.push_str(&format!(
                "futaki: {} for {}",
                human(&v.value),
                report.normalized_trace_zero_generator
            )),
            None => out.push_str("futaki: n/a (outside the Fano window)"),
        }
        out
    });
    Ok(0)
}

pub fn cmd_crosscheck(settings: &Settings, input: &PolyInput) -> Result<u8> {
    let f = read_poly(input)?;
    let bound = settings.bound.unwrap_or(DEFAULT_BOUND);
    let report = theorem_crosscheck(&f, bound)?;
    emit(settings, &report.to_json(), || {
        let mut out = format!(
            "{}: torus verdict {}, {} degenerations in box [-{bound}, {bound}], {} with F < 0 or nontrivial F = 0",
            if report.agreement { "agreement" } else { "DISAGREEMENT" },
            report.torus.class.as_str(),
            report.enumerated,
            report.violations.len(),
        );
        let mut shown: Vec<_> = report.violations.iter().collect();
        shown.sort_by(|a, b| a.futaki.cmp(&b.futaki));
        for w in shown.into_iter().take(5) {
            out.push_str(&format!("\n  {}: F = {}", w.lambda, human(&w.futaki)));
        }
        if let Some(w) = &report.outside_box_witness {
            out.push_str(&format!("\noutside box: {}: F = {}", w.lambda, human(&w.futaki)));
        }
        out
    });
    Ok(if report.agreement { 0 } else { 5 })
}

fn corpus_line(settings: &Settings, line: &str) -> Result<Value> {
    let entry: Value =
        serde_json::from_str(line).map_err(|e| Error::InvalidArgument(format!("bad JSON: {e}")))?;
    let text = entry["f"]
        .as_str()
        .ok_or_else(|| Error::InvalidArgument("missing string field \"f\"".into()))?;
    let n = match &entry["n_vars"] {
        Value::Null => crate::input::infer_n_vars(text),
        v => v
            .as_u64()
            .ok_or_else(|| Error::InvalidArgument("\"n_vars\" must be a nonnegative integer".into()))?
            as usize,
    };
    let f = parse_poly(text, n)?;
    let verdict = classify(settings, &f)?;
    Ok(json!({"f": f.to_string(), "n_vars": n, "verdict": verdict_json(&verdict)}))
}

pub fn cmd_corpus(settings: &Settings, path: &Path) -> Result<u8> {
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::InvalidArgument(format!("stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?
    };
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (i + 1, l))
        .collect();
    let results: Vec<(usize, Result<Value>)> =
        lines.par_iter().map(|&(i, l)| (i, corpus_line(settings, l))).collect();
    let mut failed = false;
    for (i, r) in results {
        let mut v = match r {
            Ok(v) => v,
            Err(e) => {
                failed = true;
                json!({"error": e.to_string()})
            }
        };
        v["line"] = Value::from(i);
        println!("{}", serde_json::to_string(&v).expect("serializable"));
    }
    Ok(if failed { 2 } else { 0 })
}

pub fn cmd_lp_debug(input: &PolyInput) -> Result<u8> {
    let f = read_poly(input)?;
    let (outcome, tableaus) = solve_traced(&cone_probe(&f));
    for (i, t) in tableaus.iter().enumerate() {
        println!("-- step {i}\n{t}");
    }
    println!("status: {:?}", outcome.status());
    if let Some(v) = outcome.value() {
        println!("value: {}", fmt_rational(v));
    }
    if let Some(w) = outcome.witness() {
        println!("witness: {}", w.iter().map(fmt_rational).collect::<Vec<_>>().join(", "));
    }
    Ok(0)
}
