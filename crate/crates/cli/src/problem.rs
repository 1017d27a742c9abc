//! Line-oriented problem files. The grammar is documented in
//! `docs/problem-format.md` at the repository root.

use std::collections::BTreeMap;
use std::path::PathBuf;

use blowup_core::poly::parse_polynomial;
use blowup_core::{Error as CoreError, Ideal, MonomialOrder, PolyRing, Polynomial, Rational, Ring};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ProblemError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug)]
pub struct DivisorBlock {
    pub name: String,
    pub factors: Vec<(Polynomial, u32)>,
}

#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub ring: Ring,
    pub ideals: Vec<(String, Ideal)>,
    pub polys: Vec<(String, Polynomial)>,
    pub relations: Option<Ideal>,
    pub divisor: Option<DivisorBlock>,
    pub points: Vec<(String, Vec<Rational>)>,
    pub params: BTreeMap<String, String>,
    /// Directory of the file, for resolving relative paths in parameters.
    pub origin: Option<PathBuf>,
}

impl ProblemFile {
    pub fn ideal(&self, name: &str) -> Option<&Ideal> {
        self.ideals.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }

    pub fn param(&self, name: &str) -> Option<&str> {
        self.params.get(name).map(String::as_str)
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ProblemError {
    ProblemError { line, column, message: message.into() }
}

/// Byte column (1-based) of `part` inside `line`.
fn column_of(line: &str, part: &str) -> usize {
    part.as_ptr() as usize - line.as_ptr() as usize + 1
}

fn poly_in(ring: &Ring, text: &str, line_no: usize, line: &str) -> Result<Polynomial, ProblemError> {
    let start = column_of(line, text);
    parse_polynomial(ring, text).map_err(|e| match e {
        CoreError::Parse { offset, message } => err(line_no, start + offset, message),
        CoreError::UnknownVariable { name, offset } => err(line_no, start + offset, format!("unknown variable `{name}`")),
        CoreError::ZeroDenominator { offset } => err(line_no, start + offset, "zero denominator"),
        other => err(line_no, start, other.to_string()),
    })
}

/// Splits on commas, keeping slices into the original line.
fn split_commas(text: &str) -> Vec<&str> {
    text.split(',').map(str::trim).collect()
}

fn parse_name<'a>(rest: &'a str, line_no: usize, line: &str) -> Result<(&'a str, &'a str), ProblemError> {
    let Some((name, body)) = rest.split_once('=') else {
        return Err(err(line_no, column_of(line, rest), "expected `name = ...`"));
    };
    let name = name.trim();
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(err(line_no, column_of(line, rest), "invalid name"));
    }
    Ok((name, body.trim()))
}

fn parse_rational(text: &str) -> Option<Rational> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    compact.parse().ok()
}

fn parse_order(text: &str) -> Option<MonomialOrder> {
    MonomialOrder::parse(text.trim())
}

/// Byte index of the `)` closing the `(` that starts `text`.
fn matching_paren(text: &str) -> Option<usize> {
    let mut depth = 0usize;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

/// Factors written `(poly)^k`, optionally separated by `*`.
fn parse_factors(ring: &Ring, body: &str, line_no: usize, line: &str) -> Result<Vec<(Polynomial, u32)>, ProblemError> {
    let mut out = Vec::new();
    let mut rest = body.trim_start();
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix('*') {
            rest = r.trim_start();
            continue;
        }
        if !rest.starts_with('(') {
            return Err(err(line_no, column_of(line, rest), "expected `(` starting a divisor factor"));
        }
        let Some(close) = matching_paren(rest) else {
            return Err(err(line_no, column_of(line, rest), "unclosed `(`"));
        };
        let inner = rest[1..close].trim();
        let f = poly_in(ring, inner, line_no, line)?;
        rest = rest[close + 1..].trim_start();
        let mut mult = 1u32;
        if let Some(r) = rest.strip_prefix('^') {
            let r = r.trim_start();
            let digits = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
            mult = r[..digits].parse().map_err(|_| err(line_no, column_of(line, r), "expected a multiplicity"))?;
            if mult == 0 {
                return Err(err(line_no, column_of(line, r), "multiplicity must be positive"));
            }
            rest = r[digits..].trim_start();
        }
        out.push((f, mult));
    }
    if out.is_empty() {
        return Err(err(line_no, column_of(line, body), "empty divisor"));
    }
    Ok(out)
}

/// The bracketed form `divisor: [ {factor: "...", mult: k}, ... ]`, read as
/// JSON once the two keys are quoted.
fn parse_bracket_divisor(ring: &Ring, text: &str, line_no: usize) -> Result<Vec<(Polynomial, u32)>, ProblemError> {
    let json = text.replace("factor:", "\"factor\":").replace("mult:", "\"mult\":");
    let value: serde_json::Value = serde_json::from_str(&json).map_err(|e| err(line_no, e.column(), format!("malformed divisor block: {e}")))?;
    let items = value.as_array().ok_or_else(|| err(line_no, 1, "divisor block must be a list"))?;
    let mut out = Vec::new();
    for item in items {
        let f = item.get("factor").and_then(|v| v.as_str()).ok_or_else(|| err(line_no, 1, "divisor entry needs a factor string"))?;
        let m = item.get("mult").map_or(Some(1), |v| v.as_u64()).filter(|&m| m > 0).ok_or_else(|| err(line_no, 1, "mult must be a positive integer"))?;
        let p = parse_polynomial(ring, f).map_err(|e| err(line_no, 1, format!("factor `{f}`: {e}")))?;
        out.push((p, m as u32));
    }
    if out.is_empty() {
        return Err(err(line_no, 1, "empty divisor"));
    }
    Ok(out)
}

pub fn parse_problem(text: &str, order_override: Option<MonomialOrder>) -> Result<ProblemFile, ProblemError> {
    let mut ring: Option<Ring> = None;
    let mut file = ProblemFile {
        ring: PolyRing::grevlex(["x"]).expect("valid ring"),
        ideals: Vec::new(),
        polys: Vec::new(),
        relations: None,
        divisor: None,
        points: Vec::new(),
        params: BTreeMap::new(),
        origin: None,
    };
    let lines: Vec<&str> = text.lines().collect();
    let mut i = 0;
    let mut names: Vec<String> = Vec::new();
    let mut claim = |name: &str, line_no: usize, col: usize| -> Result<(), ProblemError> {
        if names.iter().any(|n| n == name) {
            return Err(err(line_no, col, format!("`{name}` is declared twice")));
        }
        names.push(name.to_string());
        Ok(())
    };
    while i < lines.len() {
        let raw = lines[i];
        let line_no = i + 1;
        i += 1;
        let line = raw.split('#').next().unwrap_or("");
        let stmt = line.trim();
        if stmt.is_empty() {
            continue;
        }
        let (keyword, rest) = match stmt.find(|c: char| c.is_whitespace() || c == ':') {
            Some(p) => (&stmt[..p], stmt[p..].trim_start()),
            None => (stmt, ""),
        };
        if keyword == "ring" {
            if ring.is_some() {
                return Err(err(line_no, column_of(raw, stmt), "ring declared twice"));
            }
            let (vars, order) = match rest.split_once(" order ") {
                Some((v, o)) => {
                    let o = parse_order(o).ok_or_else(|| err(line_no, column_of(raw, o.trim()), format!("unknown order `{}`", o.trim())))?;
                    (v, o)
                }
                None => (rest, MonomialOrder::GrevLex),
            };
            let vars: Vec<&str> = split_commas(vars);
            let order = order_override.unwrap_or(order);
            let r = PolyRing::new(vars.iter().copied(), order).map_err(|e| err(line_no, column_of(raw, rest), e.to_string()))?;
            ring = Some(r);
            continue;
        }
        let Some(r) = ring.clone() else {
            return Err(err(line_no, column_of(raw, stmt), "the ring must be declared first"));
        };
        match keyword {
            "ideal" => {
                let (name, body) = parse_name(rest, line_no, raw)?;
                claim(name, line_no, column_of(raw, name))?;
                let gens = split_commas(body).into_iter().map(|g| poly_in(&r, g, line_no, raw)).collect::<Result<Vec<_>, _>>()?;
                let ideal = Ideal::new(&r, gens).map_err(|e| err(line_no, column_of(raw, body), e.to_string()))?;
                file.ideals.push((name.to_string(), ideal));
            }
            "poly" => {
                let (name, body) = parse_name(rest, line_no, raw)?;
                claim(name, line_no, column_of(raw, name))?;
                file.polys.push((name.to_string(), poly_in(&r, body, line_no, raw)?));
            }
            "relations" => {
                if file.relations.is_some() {
                    return Err(err(line_no, column_of(raw, stmt), "relations declared twice"));
                }
                let body = rest.strip_prefix('=').map_or(rest, str::trim);
                let gens = split_commas(body).into_iter().map(|g| poly_in(&r, g, line_no, raw)).collect::<Result<Vec<_>, _>>()?;
                file.relations = Some(Ideal::new(&r, gens).map_err(|e| err(line_no, column_of(raw, body), e.to_string()))?);
            }
            "divisor" => {
                if file.divisor.is_some() {
                    return Err(err(line_no, column_of(raw, stmt), "only one divisor may be declared"));
                }
                if let Some(block) = rest.strip_prefix(':') {
                    let mut text = block.to_string();
                    let mut depth: i64 = text.matches('[').count() as i64 - text.matches(']').count() as i64;
                    while depth > 0 && i < lines.len() {
                        let more = lines[i].split('#').next().unwrap_or("");
                        depth += more.matches('[').count() as i64 - more.matches(']').count() as i64;
                        text.push('\n');
                        text.push_str(more);
                        i += 1;
                    }
                    let factors = parse_bracket_divisor(&r, &text, line_no)?;
                    claim("D", line_no, 1)?;
                    file.divisor = Some(DivisorBlock { name: "D".into(), factors });
                } else {
                    let (name, body) = parse_name(rest, line_no, raw)?;
                    claim(name, line_no, column_of(raw, name))?;
                    let factors = parse_factors(&r, body, line_no, raw)?;
                    file.divisor = Some(DivisorBlock { name: name.to_string(), factors });
                }
            }
            "point" => {
                let (name, body) = parse_name(rest, line_no, raw)?;
                claim(name, line_no, column_of(raw, name))?;
                let inner = body
                    .strip_prefix('(')
                    .and_then(|b| b.strip_suffix(')'))
                    .ok_or_else(|| err(line_no, column_of(raw, body), "a point is written `(a, b, ...)`"))?;
                let coords = split_commas(inner)
                    .into_iter()
                    .map(|c| parse_rational(c).ok_or_else(|| err(line_no, column_of(raw, c), format!("`{c}` is not a rational number"))))
                    .collect::<Result<Vec<_>, _>>()?;
                if coords.len() != r.arity() {
                    return Err(err(line_no, column_of(raw, body), format!("expected {} coordinates, got {}", r.arity(), coords.len())));
                }
                file.points.push((name.to_string(), coords));
            }
            "param" => {
                let (name, body) = parse_name(rest, line_no, raw)?;
                if file.params.insert(name.to_string(), body.to_string()).is_some() {
                    return Err(err(line_no, column_of(raw, name), format!("parameter `{name}` set twice")));
                }
            }
            other => return Err(err(line_no, column_of(raw, stmt), format!("unknown statement `{other}`"))),
        }
    }
    file.ring = ring.ok_or_else(|| err(1, 1, "missing `ring` declaration"))?;
    Ok(file)
}
