//! The `c0 + c1*q + c2*q^2` text form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

pub(super) fn render(p: &IntPoly) -> String {
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.magnitude();
        let body = match (i, mag.is_one()) {
            (0, _) => mag.to_string(),
            (1, true) => "q".to_string(),
            (1, false) => format!("{mag}*q"),
            (_, true) => format!("q^{i}"),
            (_, false) => format!("{mag}*q^{i}"),
        };
        match (out.is_empty(), c.is_negative()) {
            (true, false) => {}
            (true, true) => out.push('-'),
            (false, false) => out.push_str(" + "),
            (false, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub(super) fn parse(input: &str) -> Result<IntPoly> {
    let err = |reason: &str| Error::Parse {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let glued = |c: char| c.is_ascii_alphanumeric() || c == '^';
    let words: Vec<&str> = input.split_whitespace().collect();
    if words.windows(2).any(|w| w[0].ends_with(glued) && w[1].starts_with(glued)) {
        return Err(err("whitespace inside a term"));
    }
    let compact: String = words.concat();
    if compact.is_empty() {
        return Err(err("empty input"));
    }

    let mut coeffs: Vec<BigInt> = Vec::new();
    let bytes = compact.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let negative = match bytes[pos] {
            b'+' if pos > 0 => {
                pos += 1;
                false
            }
            b'-' => {
                pos += 1;
                true
            }
            _ if pos == 0 => false,
            _ => return Err(err("expected '+' or '-' between terms")),
        };
        let end = bytes[pos..]
            .iter()
            .position(|&b| b == b'+' || b == b'-')
            .map_or(bytes.len(), |off| pos + off);
        let (mut coeff, degree) = parse_term(&compact[pos..end]).ok_or_else(|| err("malformed term"))?;
        if negative {
            coeff = -coeff;
        }
        if coeffs.len() <= degree {
            coeffs.resize(degree + 1, BigInt::zero());
        }
        coeffs[degree] += coeff;
        pos = end;
    }
    Ok(IntPoly::from_coeffs(coeffs))
}

/// One unsigned term: `c`, `q`, `q^e`, `c*q`, `c*q^e` (the `*` is optional).
fn parse_term(term: &str) -> Option<(BigInt, usize)> {
    if term.is_empty() {
        return None;
    }
    let Some(qpos) = term.find('q') else {
        return Some((parse_digits(term)?, 0));
    };
    let head = &term[..qpos];
    let head = head.strip_suffix('*').unwrap_or(head);
    let coeff = if head.is_empty() {
        if term[..qpos].ends_with('*') {
            return None;
        }
        BigInt::one()
    } else {
        parse_digits(head)?
    };
    let tail = &term[qpos + 1..];
    let degree = if tail.is_empty() {
        1
    } else {
        tail.strip_prefix('^')?.parse::<usize>().ok()?
    };
    Some((coeff, degree))
}

fn parse_digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}
