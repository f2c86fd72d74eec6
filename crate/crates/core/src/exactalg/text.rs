//! Shared helpers for the canonical text forms of the exact types.
//!
//! A rendered sum is a list of terms joined by ` + `; a term is a product of
//! factors joined by `*`. Two-part Gaussian coefficients are parenthesised.

use super::gaussian::GaussianRational;
use super::rational::parse_rational;
use crate::error::{Error, Result};

pub(crate) struct Term {
    pub coeff: GaussianRational,
    pub exps: Vec<i64>,
}

/// Split `text` on `sep` outside parentheses. Returns (offset, piece).
pub(crate) fn split_top_level<'a>(text: &'a str, sep: &str) -> Vec<(usize, &'a str)> {
    let bytes = text.as_bytes();
    let mut depth = 0i32;
    let mut out = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && text[i..].starts_with(sep) {
            out.push((start, &text[start..i]));
            i += sep.len();
            start = i;
            continue;
        }
        i += 1;
    }
    out.push((start, &text[start..]));
    out
}

pub(crate) fn parse_terms(text: &str, vars: &[&str]) -> Result<Vec<Term>> {
    let mut terms = Vec::new();
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "0" {
        return Ok(terms);
    }
    for (off, piece) in split_top_level(trimmed, " + ") {
        terms.push(parse_term(piece.trim(), off, vars)?);
    }
    Ok(terms)
}

fn parse_term(text: &str, offset: usize, vars: &[&str]) -> Result<Term> {
    let mut coeff = GaussianRational::one();
    let mut exps = vec![0i64; vars.len()];
    for (off, raw) in split_top_level(text, "*") {
        let pos = offset + off;
        let mut f = raw.trim();
        if f.is_empty() {
            return Err(Error::parse(pos, "empty factor"));
        }
        if f.starts_with('(') && f.ends_with(')') {
            coeff = &coeff * &GaussianRational::parse(&f[1..f.len() - 1])?;
            continue;
        }
        let mut sign = 1;
        if let Some(rest) = f.strip_prefix('-') {
            sign = -1;
            f = rest;
        }
        if sign < 0 {
            coeff = -coeff;
        }
        if f == "i" {
            coeff = &coeff * &GaussianRational::i();
            continue;
        }
        let var_hit = vars
            .iter()
            .enumerate()
            .filter(|(_, v)| f.starts_with(**v))
            .max_by_key(|(_, v)| v.len());
        if let Some((idx, v)) = var_hit {
            let rest = &f[v.len()..];
            let e = if rest.is_empty() {
                1
            } else if let Some(e) = rest.strip_prefix('^') {
                e.parse::<i64>()
                    .map_err(|_| Error::parse(pos, format!("bad exponent in `{raw}`")))?
            } else {
                return Err(Error::parse(pos, format!("unexpected factor `{raw}`")));
            };
            exps[idx] += e;
            continue;
        }
        let r = parse_rational(f).map_err(|_| Error::parse(pos, format!("unexpected factor `{raw}`")))?;
        coeff = &coeff * &GaussianRational::from(r);
    }
    Ok(Term { coeff, exps })
}

/// Render `coeff * monomial`, eliding unit coefficients.
pub(crate) fn render_term(coeff: &GaussianRational, monomial: &str) -> String {
    if monomial.is_empty() {
        return coeff.render_in_sum();
    }
    if coeff.is_one() {
        monomial.to_string()
    } else if (-coeff.clone()).is_one() {
        format!("-{monomial}")
    } else {
        format!("{}*{monomial}", coeff.render_in_sum())
    }
}

pub(crate) fn render_monomial(vars: &[&str], exps: &[i64]) -> String {
    vars.iter()
        .zip(exps)
        .filter(|(_, e)| **e != 0)
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}
