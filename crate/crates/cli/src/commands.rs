//! One function per command. Each returns a [`Report`] holding both the
//! text and the JSON rendering; the caller picks one.

use std::fmt::Write as _;

use blowup_core::blowup::{blowup_charts, controlled_transform, strict_transform, total_transform, Center, TransformRule};
use blowup_core::divisors::{failure_locus, monomial_check, separate_components, snc_check_at_point, snc_check_global, strnorm_surface, FactoredDivisor, SncVerdict};
use blowup_core::resolve::{principalize_strict_transform, resolve_plane_curve, separate_and_principalize, verify_resolution, ResolutionTrace};
use blowup_core::singularity::{is_smooth, jacobian_ideal, order_at, order_locus, singular_locus_ideal};
use blowup_core::{Error, Ideal, Polynomial, QuotientPresentation, Rational};
use serde_json::{json, Map, Value};

use crate::config::RunConfig;
use crate::problem::ProblemFile;

pub const COMMANDS: [&str; 16] = [
    "gb",
    "membership",
    "saturate",
    "blowup",
    "transform",
    "jacobian-ideal",
    "smooth-check",
    "singular-locus",
    "max-order",
    "snc-check",
    "monomial-check",
    "separate",
    "principalize",
    "strnorm",
    "resolve-curve",
    "verify",
];

/// Default bound on the power of the center tried by `principalize`.
const DEFAULT_N_MAX: u32 = 8;

pub struct Report {
    pub text: String,
    pub json: Value,
}

type Outcome = Result<Report, Error>;

fn input(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(Polynomial::to_string).collect()
}

fn list(ps: &[Polynomial]) -> String {
    if ps.is_empty() {
        return "(0)".into();
    }
    format!("({})", strings(ps).join(", "))
}

fn point_text(p: &[Rational]) -> String {
    format!("({})", p.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

/// Reduced generators, so that equal ideals print identically.
fn canonical(ideal: &Ideal) -> Result<Vec<Polynomial>, Error> {
    Ok(ideal.reduced()?.gens().to_vec())
}

/// The ideal named by parameter `key`, else the `fallback`-th declared ideal.
fn pick_ideal<'a>(file: &'a ProblemFile, key: &str, fallback: usize) -> Result<(&'a str, &'a Ideal), Error> {
    if let Some(name) = file.param(key) {
        let ideal = file.ideal(name).ok_or_else(|| input(format!("parameter `{key}` names unknown ideal `{name}`")))?;
        let (n, _) = file.ideals.iter().find(|(n, _)| n == name).expect("found above");
        return Ok((n.as_str(), ideal));
    }
    file.ideals
        .get(fallback)
        .map(|(n, i)| (n.as_str(), i))
        .ok_or_else(|| input(format!("this command needs an ideal (set `param {key} = NAME` or declare {} ideal(s))", fallback + 1)))
}

/// A polynomial named by parameter `key`, else the first `poly`, else the
/// single generator of the first ideal.
fn pick_poly<'a>(file: &'a ProblemFile, key: &str) -> Result<(&'a str, &'a Polynomial), Error> {
    if let Some(name) = file.param(key) {
        return file
            .polys
            .iter()
            .find(|(n, _)| n == name)
            .map(|(n, p)| (n.as_str(), p))
            .ok_or_else(|| input(format!("parameter `{key}` names unknown polynomial `{name}`")));
    }
    if let Some((n, p)) = file.polys.first() {
        return Ok((n.as_str(), p));
    }
    match file.ideals.first() {
        Some((n, i)) if i.gens().len() == 1 => Ok((n.as_str(), &i.gens()[0])),
        _ => Err(input("this command needs a polynomial (declare `poly f = ...`)")),
    }
}

/// The ambient space: the declared relations, or the whole affine space.
fn ambient(file: &ProblemFile) -> QuotientPresentation {
    match &file.relations {
        Some(r) => QuotientPresentation::new(r.clone()),
        None => QuotientPresentation::polynomial_ring(&file.ring),
    }
}

/// The scheme whose smoothness is asked about: the relations if declared,
/// else the first ideal.
fn scheme(file: &ProblemFile) -> Result<QuotientPresentation, Error> {
    if let Some(r) = &file.relations {
        return Ok(QuotientPresentation::new(r.clone()));
    }
    let (_, ideal) = pick_ideal(file, "ideal", 0)?;
    Ok(QuotientPresentation::new(ideal.clone()))
}

fn divisor(file: &ProblemFile) -> Result<FactoredDivisor, Error> {
    let block = file.divisor.as_ref().ok_or_else(|| input("this command needs a divisor (declare `divisor D = (f)^k ...`)"))?;
    FactoredDivisor::new(ambient(file), block.factors.clone())
}

fn u32_param(file: &ProblemFile, key: &str, default: u32) -> Result<u32, Error> {
    match file.param(key) {
        None => Ok(default),
        Some(v) => v.parse().map_err(|_| input(format!("parameter `{key}` must be a non-negative integer, got `{v}`"))),
    }
}

pub fn run(command: &str, file: &ProblemFile, config: &RunConfig) -> Outcome {
    match command {
        "gb" => gb(file),
        "membership" => membership(file),
        "saturate" => saturate(file),
        "blowup" => blowup(file),
        "transform" => transform(file),
        "jacobian-ideal" => jacobian(file),
        "smooth-check" => smooth_check(file),
        "singular-locus" => singular_locus(file),
        "max-order" => max_order(file),
        "snc-check" => snc(file),
        "monomial-check" => monomial(file),
        "separate" => separate(file),
        "principalize" => principalize(file),
        "strnorm" => strnorm(file, config),
        "resolve-curve" => resolve(file, config),
        "verify" => verify(file, config),
        other => Err(input(format!("unknown command `{other}`; expected one of {}", COMMANDS.join(", ")))),
    }
}

fn gb(file: &ProblemFile) -> Outcome {
    let (name, ideal) = pick_ideal(file, "ideal", 0)?;
    let basis = ideal.groebner()?.basis().to_vec();
    let order = file.ring.order().to_string();
    Ok(Report {
        text: format!("ideal: {name}\norder: {order}\nbasis: {}\n", list(&basis)),
        json: json!({ "command": "gb", "ideal": name, "order": order, "basis": strings(&basis) }),
    })
}

fn membership(file: &ProblemFile) -> Outcome {
    let (iname, ideal) = pick_ideal(file, "ideal", 0)?;
    let (pname, f) = pick_poly(file, "poly")?;
    let target = ambient(file).lift(ideal)?;
    let remainder = target.normal_form(f)?;
    let member = remainder.is_zero();
    Ok(Report {
        text: format!("member: {member}\nremainder: {remainder}\n"),
        json: json!({ "command": "membership", "ideal": iname, "poly": pname, "member": member, "remainder": remainder.to_string() }),
    })
}

fn saturate(file: &ProblemFile) -> Outcome {
    let (iname, ideal) = pick_ideal(file, "ideal", 0)?;
    let (jname, by) = pick_ideal(file, "by", 1)?;
    let (sat, exponent) = ideal.saturation(by)?;
    let gens = canonical(&sat)?;
    Ok(Report {
        text: format!("saturation: {}\nexponent: {exponent}\n", list(&gens)),
        json: json!({ "command": "saturate", "ideal": iname, "by": jname, "saturation": strings(&gens), "exponent": exponent }),
    })
}

fn center_from(file: &ProblemFile, key: &str, fallback: usize) -> Result<(String, Center), Error> {
    let (name, ideal) = pick_ideal(file, key, fallback)?;
    Ok((name.to_string(), Center::new(ambient(file), ideal.clone())?))
}

fn blowup(file: &ProblemFile) -> Outcome {
    let (name, center) = center_from(file, "center", 0)?;
    let step = blowup_charts(&center)?;
    let mut text = format!("center {name}: {}\ncharts: {}\n", list(center.gens()), step.charts.len());
    let mut charts = Vec::new();
    for chart in &step.charts {
        let relations = chart.relations().gens().to_vec();
        let subs: Map<String, Value> = chart
            .parent_ring()
            .vars()
            .iter()
            .zip(chart.substitution())
            .map(|(v, p)| (v.clone(), Value::String(p.to_string())))
            .collect();
        let empty = chart.is_empty()?;
        let _ = writeln!(
            text,
            "chart {} generator {}\n  vars: {}\n  relations: {}\n  empty: {empty}",
            chart.generator_index(),
            chart.generator(),
            chart.ring().vars().join(", "),
            list(&relations)
        );
        charts.push(json!({
            "generator_index": chart.generator_index(),
            "generator": chart.generator().to_string(),
            "vars": chart.ring().vars(),
            "relations": strings(&relations),
            "substitution": subs,
            "exceptional": strings(chart.exceptional().gens()),
            "empty": empty,
        }));
    }
    Ok(Report { text, json: json!({ "command": "blowup", "center": strings(center.gens()), "charts": charts }) })
}

fn transform(file: &ProblemFile) -> Outcome {
    let (iname, ideal) = pick_ideal(file, "ideal", 0)?;
    let (cname, center) = center_from(file, "center", 1)?;
    let rule_text = file.param("rule").unwrap_or("strict");
    let rule = TransformRule::parse(rule_text).ok_or_else(|| input(format!("unknown transform rule `{rule_text}`")))?;
    let step = blowup_charts(&center)?;
    let mut text = format!("ideal {iname} center {cname} rule {rule}\n");
    let mut charts = Vec::new();
    for chart in &step.charts {
        let image = match rule {
            TransformRule::Total => total_transform(chart, ideal)?,
            TransformRule::Strict => strict_transform(chart, ideal)?,
            TransformRule::Controlled(c) => controlled_transform(chart, ideal, c)?,
        };
        let p = chart.presentation();
        let gens = p.lift(&image)?.modulo(p.relations())?;
        let _ = writeln!(text, "chart {} generator {}: {}", chart.generator_index(), chart.generator(), list(&gens));
        charts.push(json!({
            "generator_index": chart.generator_index(),
            "generator": chart.generator().to_string(),
            "vars": chart.ring().vars(),
            "transform": strings(&gens),
        }));
    }
    Ok(Report {
        text,
        json: json!({ "command": "transform", "ideal": iname, "center": cname, "rule": rule.to_string(), "charts": charts }),
    })
}

fn jacobian(file: &ProblemFile) -> Outcome {
    let p = scheme(file)?;
    let gens = canonical(&jacobian_ideal(&p)?)?;
    Ok(Report {
        text: format!("jacobian-ideal: {}\n", list(&gens)),
        json: json!({ "command": "jacobian-ideal", "jacobian_ideal": strings(&gens) }),
    })
}

fn smooth_check(file: &ProblemFile) -> Outcome {
    let verdict = is_smooth(&scheme(file)?)?;
    let mut text = format!("smooth: {}\n", verdict.smooth);
    if !verdict.smooth {
        let _ = writeln!(text, "witness: {}", list(&verdict.witness));
    }
    Ok(Report { text, json: json!({ "command": "smooth-check", "smooth": verdict.smooth, "witness": strings(&verdict.witness) }) })
}

fn singular_locus(file: &ProblemFile) -> Outcome {
    let locus = singular_locus_ideal(&scheme(file)?)?;
    let gens = canonical(&locus)?;
    let empty = locus.contains_one()?;
    let mut text = format!("singular-locus: {}\nempty: {empty}\n", list(&gens));
    let mut points = Vec::new();
    if !empty && locus.dimension()? == 0 {
        for p in locus.rational_points()? {
            let _ = writeln!(text, "point: {}", point_text(&p));
            points.push(point_text(&p));
        }
    }
    Ok(Report { text, json: json!({ "command": "singular-locus", "locus": strings(&gens), "empty": empty, "rational_points": points }) })
}

fn max_order(file: &ProblemFile) -> Outcome {
    let p = ambient(file);
    let (name, ideal) = if file.param("ideal").is_some() || file.polys.is_empty() {
        let (n, i) = pick_ideal(file, "ideal", 0)?;
        (n, i.clone())
    } else {
        let (n, f) = pick_poly(file, "poly")?;
        (n, Ideal::principal(f.clone()))
    };
    let (order, locus) = order_locus(&p, &ideal)?;
    let gens = canonical(&locus)?;
    let mut text = format!("input: {name}\norder: {order}\nlocus: {}\n", list(&gens));
    let mut at = Map::new();
    for (pname, point) in &file.points {
        let k = order_at(&p, &ideal, point)?;
        let _ = writeln!(text, "order at {pname} {}: {k}", point_text(point));
        at.insert(pname.clone(), json!(k));
    }
    Ok(Report {
        text,
        json: json!({ "command": "max-order", "ideal": name, "order": order, "locus": strings(&gens), "order_at": at }),
    })
}

fn verdict_json(d: &FactoredDivisor, v: &SncVerdict) -> Value {
    let failures: Vec<Value> = v
        .failures
        .iter()
        .map(|f| {
            let names: Vec<&str> = f.subset.iter().map(|&i| d.factors()[i].name.as_str()).collect();
            json!({ "components": names, "reason": f.reason.to_string() })
        })
        .collect();
    json!({ "snc": v.snc, "failures": failures })
}

fn verdict_text(d: &FactoredDivisor, v: &SncVerdict, out: &mut String) {
    let _ = writeln!(out, "snc: {}", v.snc);
    for f in &v.failures {
        let names: Vec<&str> = f.subset.iter().map(|&i| d.factors()[i].name.as_str()).collect();
        let _ = writeln!(out, "  {} {}", names.join(","), f.reason);
    }
}

fn components_text(d: &FactoredDivisor) -> String {
    d.factors()
        .iter()
        .map(|c| format!("{} = {}^{}", c.name, list(&c.gens), c.multiplicity))
        .collect::<Vec<_>>()
        .join("; ")
}

fn snc(file: &ProblemFile) -> Outcome {
    let d = divisor(file)?;
    let mut text = format!("divisor: {}\n", components_text(&d));
    if file.points.is_empty() {
        let v = snc_check_global(&d)?;
        verdict_text(&d, &v, &mut text);
        let mut js = verdict_json(&d, &v);
        if !v.snc {
            let locus = canonical(&failure_locus(&d, &v)?)?;
            let _ = writeln!(text, "failure-locus: {}", list(&locus));
            js["failure_locus"] = json!(strings(&locus));
        }
        js["command"] = json!("snc-check");
        return Ok(Report { text, json: js });
    }
    let mut at = Map::new();
    for (pname, point) in &file.points {
        let v = snc_check_at_point(&d, point)?;
        let _ = writeln!(text, "at {pname} {}:", point_text(point));
        verdict_text(&d, &v, &mut text);
        at.insert(pname.clone(), verdict_json(&d, &v));
    }
    Ok(Report { text, json: json!({ "command": "snc-check", "at": at }) })
}

fn monomial(file: &ProblemFile) -> Outcome {
    let d = divisor(file)?;
    let m = monomial_check(&d)?;
    Ok(Report {
        text: format!("divisor: {}\nmonomial: {m}\n", components_text(&d)),
        json: json!({ "command": "monomial-check", "monomial": m }),
    })
}

/// The two subschemes to separate: parameters `first`/`second`, else the
/// first two ideals, else the first two polynomials.
fn pair(file: &ProblemFile) -> Result<(Ideal, Ideal), Error> {
    if file.param("first").is_some() || file.ideals.len() >= 2 {
        let (_, a) = pick_ideal(file, "first", 0)?;
        let (_, b) = pick_ideal(file, "second", 1)?;
        return Ok((a.clone(), b.clone()));
    }
    match file.polys.as_slice() {
        [(_, f), (_, g), ..] => Ok((Ideal::principal(f.clone()), Ideal::principal(g.clone()))),
        _ => Err(input("this command needs two ideals or two polynomials")),
    }
}

fn separate(file: &ProblemFile) -> Outcome {
    let (a, b) = pair(file)?;
    let (step, separated) = separate_components(&ambient(file), &a, &b)?;
    Ok(Report {
        text: format!("center: {}\ncharts: {}\nseparated: {separated}\n", list(step.center.gens()), step.charts.len()),
        json: json!({ "command": "separate", "center": strings(step.center.gens()), "charts": step.charts.len(), "separated": separated }),
    })
}

fn principalize(file: &ProblemFile) -> Outcome {
    let n_max = u32_param(file, "n_max", DEFAULT_N_MAX)?;
    let mode = file.param("mode").unwrap_or("strict");
    let result = match mode {
        "strict" => {
            let (_, i) = pick_ideal(file, "ideal", 0)?;
            let (_, j) = pick_ideal(file, "center", 1)?;
            principalize_strict_transform(&ambient(file), i, j, n_max)?
        }
        "separate" => {
            let (a, b) = pair(file)?;
            separate_and_principalize(&ambient(file), &a, &b, n_max)?
        }
        other => return Err(input(format!("unknown principalize mode `{other}` (strict or separate)"))),
    };
    let mut text = format!("n: {}\ncenter: {}\nprincipal: {}\n", result.n, list(result.step.center.gens()), result.all_principal());
    let mut certs = Vec::new();
    for c in &result.certificates {
        let chart = &result.step.charts[c.chart];
        if c.empty {
            let _ = writeln!(text, "chart {} generator {}: empty", c.chart, chart.generator());
        } else {
            let _ = writeln!(
                text,
                "chart {} generator {}: exponents [{}] generators {}{}",
                c.chart,
                chart.generator(),
                c.exponents.iter().map(u32::to_string).collect::<Vec<_>>().join(", "),
                list(&c.generators),
                c.disjoint.map_or(String::new(), |d| format!(" disjoint {d}"))
            );
        }
        certs.push(json!({
            "chart": c.chart,
            "generator": chart.generator().to_string(),
            "vars": chart.ring().vars(),
            "empty": c.empty,
            "exponents": c.exponents,
            "generators": strings(&c.generators),
            "disjoint": c.disjoint,
        }));
    }
    Ok(Report {
        text,
        json: json!({
            "command": "principalize",
            "mode": mode,
            "n": result.n,
            "center": strings(result.step.center.gens()),
            "principal": result.all_principal(),
            "certificates": certs,
        }),
    })
}

fn strnorm(file: &ProblemFile, config: &RunConfig) -> Outcome {
    // Normal crossings ignore multiplicities; the loop wants reduced input.
    let d = divisor(file)?.reduction();
    let result = strnorm_surface(&d, config.max_steps)?;
    let tree = &result.tree;
    let mut text = format!("divisor: {}\nsteps: {}\n", components_text(&d), result.steps.len());
    let mut steps = Vec::new();
    for s in &result.steps {
        let gens = s.center.gens().to_vec();
        let _ = writeln!(text, "blow up chart [{}] center {}", tree.path_label(s.node), list(&gens));
        steps.push(json!({ "path": tree.path_label(s.node), "center": strings(&gens) }));
    }
    let mut verdicts = Vec::new();
    let all = result.verdicts.iter().all(|v| v.verdict.snc);
    for v in &result.verdicts {
        let _ = writeln!(text, "leaf [{}] snc {}", tree.path_label(v.node), v.verdict.snc);
        verdicts.push(json!({ "path": tree.path_label(v.node), "snc": v.verdict.snc }));
    }
    let _ = writeln!(text, "snc: {all}");
    let mut js = match tree.to_json() {
        Value::Object(m) => m,
        _ => Map::new(),
    };
    js.insert("command".into(), json!("strnorm"));
    js.insert("steps".into(), Value::Array(steps));
    js.insert("verdicts".into(), Value::Array(verdicts));
    js.insert("snc".into(), json!(all));
    Ok(Report { text, json: Value::Object(js) })
}

fn trace_of(file: &ProblemFile, config: &RunConfig) -> Result<ResolutionTrace, Error> {
    if file.ring.arity() != 2 {
        return Err(input(format!("curves live in a plane; the ring has {} variables", file.ring.arity())));
    }
    let (_, f) = pick_poly(file, "curve")?;
    resolve_plane_curve(f, config.max_steps)
}

fn resolve(file: &ProblemFile, config: &RunConfig) -> Outcome {
    let trace = trace_of(file, config)?;
    let mut text = trace.summary();
    if !config.summary {
        let _ = writeln!(
            text,
            "steps: {} (phase 1: {}, phase 2: {})\nresolved: {}",
            trace.steps.len(),
            trace.phase_steps(1),
            trace.phase_steps(2),
            trace.resolved()
        );
    }
    let mut js = trace.to_json();
    js["command"] = json!("resolve-curve");
    js["resolved"] = json!(trace.resolved());
    Ok(Report { text, json: js })
}

/// Verifies a saved trace (`param trace = path.json`) or, without one, a
/// fresh resolution of the file's curve.
fn verify(file: &ProblemFile, config: &RunConfig) -> Outcome {
    let trace = match file.param("trace") {
        Some(path) => {
            let path = match &file.origin {
                Some(dir) => dir.join(path),
                None => path.into(),
            };
            let body = std::fs::read_to_string(&path).map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
            let value: Value = serde_json::from_str(&body).map_err(|e| input(format!("{}: {e}", path.display())))?;
            ResolutionTrace::from_json(&value)?
        }
        None => trace_of(file, config)?,
    };
    let report = verify_resolution(&trace)?;
    let mut text = format!("verified: {}\n", report.ok);
    for f in &report.failures {
        let _ = writeln!(text, "  {f}");
    }
    Ok(Report { text, json: json!({ "command": "verify", "verified": report.ok, "failures": report.failures }) })
}
