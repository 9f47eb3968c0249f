//! Plain-text ring element files.
//!
//! ```text
//! group L^1
//! 1/2 * [ f1:{} s1:0 ]
//! -1/2 * [ f1:{0} s1:0 ]
//! ```
//!
//! Quotient descriptors are written `group L_<N>^<d>`. Terms appear in the
//! canonical order (shift vector, then lamp lists).

use super::lamplighter::{Factor, GroupElement, Lamplighter};
use super::ring::RingElement;
use super::AlgebraError;
use crate::rational::{fmt_rational, parse_rational};

pub fn header(group: &Lamplighter) -> String {
    match group.modulus {
        None => format!("group L^{}", group.dim),
        Some(n) => format!("group L_{}^{}", n, group.dim),
    }
}

pub fn to_text(x: &RingElement) -> String {
    let mut out = header(&x.group());
    out.push('\n');
    for (g, c) in x.terms() {
        out.push_str(&format!("{} * {}\n", fmt_rational(c), g));
    }
    out
}

fn bad(line: usize, msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Format {
        line,
        message: msg.into(),
    }
}

pub fn parse_header(line: &str, lineno: usize) -> Result<Lamplighter, AlgebraError> {
    let rest = line
        .trim()
        .strip_prefix("group ")
        .ok_or_else(|| bad(lineno, "expected `group L^<d>` header"))?
        .trim();
    let rest = rest
        .strip_prefix('L')
        .ok_or_else(|| bad(lineno, "group name must start with L"))?;
    let (modulus, dim) = match rest.split_once('^') {
        Some((m, d)) => (m, d),
        None => return Err(bad(lineno, "missing ^<d>")),
    };
    let dim: usize = dim.trim().parse().map_err(|_| bad(lineno, "bad dimension"))?;
    if dim == 0 {
        return Err(bad(lineno, "dimension must be positive"));
    }
    if modulus.is_empty() {
        Ok(Lamplighter::new(dim))
    } else {
        let n: u32 = modulus
            .strip_prefix('_')
            .and_then(|m| m.parse().ok())
            .filter(|&n| n >= 1)
            .ok_or_else(|| bad(lineno, "bad quotient modulus"))?;
        Ok(Lamplighter::quotient(dim, n))
    }
}

/// Parses the bracketed element `[ f1:{..} s1:.. | ... ]`.
pub fn parse_element(text: &str, dim: usize, lineno: usize) -> Result<GroupElement, AlgebraError> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| bad(lineno, "element must be bracketed"))?;
    let parts: Vec<&str> = inner.split('|').collect();
    if parts.len() != dim {
        return Err(bad(lineno, format!("expected {dim} factors, found {}", parts.len())));
    }
    let mut factors = Vec::with_capacity(dim);
    for (idx, part) in parts.iter().enumerate() {
        let i = idx + 1;
        let mut fields = part.split_whitespace();
        let f = fields.next().ok_or_else(|| bad(lineno, "missing lamp field"))?;
        let s = fields.next().ok_or_else(|| bad(lineno, "missing shift field"))?;
        if fields.next().is_some() {
            return Err(bad(lineno, "trailing tokens in factor"));
        }
        let set = f
            .strip_prefix(&format!("f{i}:"))
            .and_then(|x| x.strip_prefix('{'))
            .and_then(|x| x.strip_suffix('}'))
            .ok_or_else(|| bad(lineno, format!("bad lamp field `{f}`")))?;
        let mut lamps = Vec::new();
        for p in set.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            lamps.push(p.parse::<i64>().map_err(|_| bad(lineno, format!("bad lamp `{p}`")))?);
        }
        if lamps.windows(2).any(|w| w[0] >= w[1]) {
            return Err(bad(lineno, "lamps must be strictly increasing"));
        }
        let shift: i64 = s
            .strip_prefix(&format!("s{i}:"))
            .and_then(|x| x.parse().ok())
            .ok_or_else(|| bad(lineno, format!("bad shift field `{s}`")))?;
        factors.push(Factor::new(lamps, shift));
    }
    Ok(GroupElement::from_factors(factors))
}

pub fn from_text(text: &str) -> Result<RingElement, AlgebraError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
    let (hline, h) = lines.next().ok_or_else(|| bad(1, "missing header"))?;
    let group = parse_header(h, hline)?;
    let mut terms = Vec::new();
    for (lineno, line) in lines {
        let (coeff, elem) = line
            .split_once('*')
            .ok_or_else(|| bad(lineno, "expected `<rational> * [ ... ]`"))?;
        let c = parse_rational(coeff).ok_or_else(|| bad(lineno, "bad coefficient"))?;
        let g = parse_element(elem, group.dim, lineno)?;
        if g != group.canonical(&g) {
            return Err(bad(lineno, "element not reduced for the quotient"));
        }
        terms.push((g, c));
    }
    Ok(RingElement::from_terms(group, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::word::{parse_word, GeneratorAlphabet};

    #[test]
    fn renders_expected_layout() {
        let x = parse_word("1 - a1", &GeneratorAlphabet::lamplighter(1)).unwrap();
        let text = to_text(&x);
        assert_eq!(text, "group L^1\n1 * [ f1:{} s1:0 ]\n-1 * [ f1:{0} s1:0 ]\n");
        assert_eq!(from_text(&text).unwrap(), x);
    }

    #[test]
    fn quotient_header() {
        let g = Lamplighter::quotient(2, 5);
        assert_eq!(header(&g), "group L_5^2");
        assert_eq!(parse_header("group L_5^2", 1).unwrap(), g);
    }

    #[test]
    fn rejects_garbage() {
        assert!(from_text("").is_err());
        assert!(from_text("group X^1").is_err());
        assert!(from_text("group L^1\n1 [ f1:{} s1:0 ]").is_err());
        assert!(from_text("group L^1\n1 * [ f1:{2,1} s1:0 ]").is_err());
        assert!(from_text("group L^2\n1 * [ f1:{} s1:0 ]").is_err());
        assert!(from_text("group L_3^1\n1 * [ f1:{4} s1:0 ]").is_err());
    }
}
