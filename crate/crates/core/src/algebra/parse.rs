//! Text forms of polynomials and vectors of Laurent polynomials.
//!
//! Terms look like `3`, `x`, `2*x^5`, `x^-4` and are joined by `+` or `-`.
//! A Laurent polynomial may also be written `x^k*(body)`. Every exponent
//! may appear at most once and every coefficient must be nonzero mod `p`,
//! so each polynomial has exactly one spelling up to term order.

use std::collections::BTreeMap;

use super::laurent::LaurentPoly;
use super::poly::Poly;
use crate::error::{Error, Result};

fn parse_exponent(s: &str, line: usize) -> Result<i64> {
    s.trim()
        .parse::<i64>()
        .map_err(|_| Error::parse(line, format!("bad exponent {s:?}")))
}

fn parse_term(t: &str, line: usize) -> Result<(i64, i64)> {
    let t = t.trim();
    if t.is_empty() {
        return Err(Error::parse(line, "empty term"));
    }
    let (coef, mono) = match t.split_once('*') {
        Some((c, m)) => (Some(c.trim()), Some(m.trim())),
        None if t.starts_with('x') => (None, Some(t)),
        None => (Some(t), None),
    };
    let c = match coef {
        Some(c) => c
            .parse::<i64>()
            .map_err(|_| Error::parse(line, format!("bad coefficient {c:?}")))?,
        None => 1,
    };
    let k = match mono {
        None => 0,
        Some("x") => 1,
        Some(m) => match m.strip_prefix("x^") {
            Some(e) => parse_exponent(e, line)?,
            None => return Err(Error::parse(line, format!("bad monomial {m:?}"))),
        },
    };
    Ok((c, k))
}

/// Splits a sum into signed terms, keeping `-` in front of negative ones.
/// A `-` right after `^` belongs to an exponent. Empty terms are kept so
/// that they can be rejected.
fn split_terms(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut prev = None;
    for ch in s.chars().filter(|c| !c.is_whitespace()) {
        let sign = (ch == '+' || ch == '-') && prev != Some('^');
        if sign && !(prev.is_none() && ch == '-') {
            out.push(std::mem::take(&mut cur));
        }
        if ch != '+' || !sign {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    out.push(cur);
    out
}

fn parse_sum(s: &str, p: u32, line: usize) -> Result<BTreeMap<i64, u32>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::parse(line, "empty polynomial"));
    }
    let mut terms = BTreeMap::new();
    if s == "0" {
        return Ok(terms);
    }
    for raw in split_terms(s) {
        if raw.is_empty() || raw == "-" {
            return Err(Error::parse(line, format!("empty term in {s:?}")));
        }
        let (neg, body) = match raw.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, raw.as_str()),
        };
        let (c, k) = parse_term(body, line)?;
        let c = (if neg { -c } else { c }).rem_euclid(p as i64) as u32;
        if c == 0 {
            return Err(Error::parse(line, format!("zero coefficient in {raw:?}")));
        }
        if terms.insert(k, c).is_some() {
            return Err(Error::parse(line, format!("exponent {k} appears twice")));
        }
    }
    Ok(terms)
}

pub(crate) fn laurent_at(s: &str, p: u32, line: usize) -> Result<LaurentPoly> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("x^") {
        if let Some((e, body)) = rest.split_once("*(") {
            let body = body
                .strip_suffix(')')
                .ok_or_else(|| Error::parse(line, "unclosed parenthesis"))?;
            let k = parse_exponent(e, line)?;
            return Ok(laurent_at(body, p, line)?.mul_x_pow(k));
        }
    }
    let terms: Vec<(i64, i64)> = parse_sum(s, p, line)?
        .into_iter()
        .map(|(k, c)| (k, c as i64))
        .collect();
    Ok(LaurentPoly::from_terms(&terms, p))
}

/// Parses a Laurent polynomial over F_p.
pub fn parse_laurent(s: &str, p: u32) -> Result<LaurentPoly> {
    laurent_at(s, p, 1)
}

/// Parses an ordinary polynomial over F_p. Negative exponents are rejected.
pub fn parse_poly(s: &str, p: u32) -> Result<Poly> {
    let l = parse_laurent(s, p)?;
    l.to_poly()
        .ok_or_else(|| Error::parse(1, format!("negative exponent in {s:?}")))
}

pub(crate) fn vector_at(s: &str, p: u32, line: usize) -> Result<Vec<LaurentPoly>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::parse(line, "vector must be written [a, b, ...]"))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner.split(',').map(|e| laurent_at(e, p, line)).collect()
}

/// Parses `[a, b, ...]` into Laurent polynomials over F_p.
pub fn parse_vector(s: &str, p: u32) -> Result<Vec<LaurentPoly>> {
    vector_at(s, p, 1)
}

/// Inverse of [`parse_vector`].
pub fn format_vector(v: &[LaurentPoly]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}
