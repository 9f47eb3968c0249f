//! The word language: generator symbols joined into terms, terms joined by
//! `+` / `-`.
//!
//! ```text
//! word := [sign] term { sign term }
//! term := '1' | gen+
//! sign := '+' | '-'
//! ```
//!
//! Tokens are whitespace separated. The Unicode minus `−` is accepted as `-`.

use num_traits::One;

use super::lamplighter::{GroupElement, Lamplighter};
use super::ring::RingElement;
use super::AlgebraError;
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub value: GroupElement,
    /// Index of the symbol whose value is the inverse of this one.
    pub inverse: usize,
}

/// A symmetric generating sequence with names.
#[derive(Clone, Debug)]
pub struct GeneratorAlphabet {
    dim: usize,
    symbols: Vec<Generator>,
}

impl GeneratorAlphabet {
    /// `a1..ad`, `t1..td`, `T1..Td` with `Ti = ti^-1` and `ai` self-paired.
    pub fn lamplighter(dim: usize) -> Self {
        let mut symbols = Vec::with_capacity(3 * dim);
        for i in 1..=dim {
            let base = symbols.len();
            symbols.push(Generator {
                name: format!("a{i}"),
                value: GroupElement::a(i, dim),
                inverse: base,
            });
            symbols.push(Generator {
                name: format!("t{i}"),
                value: GroupElement::t(i, dim),
                inverse: base + 2,
            });
            symbols.push(Generator {
                name: format!("T{i}"),
                value: GroupElement::t(i, dim).inv(),
                inverse: base + 1,
            });
        }
        GeneratorAlphabet { dim, symbols }
    }

    /// The sequence `(t, t^-1, a)` for a single factor, the order used by the
    /// sofic checks.
    pub fn walker_lamp() -> Self {
        let t = GroupElement::t(1, 1);
        GeneratorAlphabet {
            dim: 1,
            symbols: vec![
                Generator { name: "t1".into(), value: t.clone(), inverse: 1 },
                Generator { name: "T1".into(), value: t.inv(), inverse: 0 },
                Generator { name: "a1".into(), value: GroupElement::a(1, 1), inverse: 2 },
            ],
        }
    }

    pub fn new(dim: usize, symbols: Vec<Generator>) -> Result<Self, AlgebraError> {
        let alphabet = GeneratorAlphabet { dim, symbols };
        alphabet.check_symmetric()?;
        Ok(alphabet)
    }

    fn check_symmetric(&self) -> Result<(), AlgebraError> {
        for (i, g) in self.symbols.iter().enumerate() {
            let partner = self
                .symbols
                .get(g.inverse)
                .ok_or_else(|| AlgebraError::NotSymmetric(g.name.clone()))?;
            if partner.inverse != i || partner.value != g.value.inv() || g.value.dim() != self.dim {
                return Err(AlgebraError::NotSymmetric(g.name.clone()));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn symbols(&self) -> &[Generator] {
        &self.symbols
    }

    pub fn lookup(&self, name: &str) -> Option<&Generator> {
        self.symbols.iter().find(|g| g.name == name)
    }

    pub fn values(&self) -> Vec<GroupElement> {
        self.symbols.iter().map(|g| g.value.clone()).collect()
    }
}

fn sign_of(token: &str) -> Option<bool> {
    match token {
        "+" => Some(true),
        "-" | "\u{2212}" => Some(false),
        _ => None,
    }
}

/// Parses a word into a ring element over `(Z/2 wr Z)^d`.
pub fn parse_word(text: &str, alphabet: &GeneratorAlphabet) -> Result<RingElement, AlgebraError> {
    let group = Lamplighter::new(alphabet.dim());
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(AlgebraError::EmptyWord);
    }
    let mut out = RingElement::zero(group);
    let mut i = 0;
    let mut positive = true;
    if let Some(sign) = sign_of(tokens[0]) {
        positive = sign;
        i = 1;
    }
    loop {
        // one term starting at token i
        let start = i;
        let mut value = GroupElement::identity(alphabet.dim());
        if tokens.get(i) == Some(&"1") {
            i += 1;
        } else {
            while let Some(tok) = tokens.get(i) {
                if sign_of(tok).is_some() {
                    break;
                }
                if *tok == "1" {
                    return Err(AlgebraError::MisplacedOne(i));
                }
                let g = alphabet
                    .lookup(tok)
                    .ok_or_else(|| AlgebraError::UnknownSymbol(tok.to_string()))?;
                value = value.mul_unchecked(&g.value);
                i += 1;
            }
            if i == start {
                return Err(AlgebraError::EmptyTerm(start));
            }
        }
        let coeff = if positive { Rational::one() } else { -Rational::one() };
        out = out.add(&RingElement::monomial(group, value, coeff))?;
        match tokens.get(i) {
            None => break,
            Some(tok) => match sign_of(tok) {
                Some(sign) => {
                    positive = sign;
                    i += 1;
                    if i == tokens.len() {
                        return Err(AlgebraError::EmptyTerm(i));
                    }
                }
                None => return Err(AlgebraError::MisplacedOne(i)),
            },
        }
    }
    Ok(out)
}

/// Writes a generator word for a single group element using the
/// `lamplighter` alphabet: lamps are lit by `t^p a t^-p`, then the walker
/// moves to its final shift.
fn element_word(g: &GroupElement) -> Vec<String> {
    let mut out = Vec::new();
    for (idx, factor) in g.factors().iter().enumerate() {
        let i = idx + 1;
        let walk = |out: &mut Vec<String>, from: i64, to: i64| {
            let (sym, n) = if to >= from { ("t", to - from) } else { ("T", from - to) };
            for _ in 0..n {
                out.push(format!("{sym}{i}"));
            }
        };
        let mut pos = 0;
        for &lamp in factor.lamps() {
            walk(&mut out, pos, lamp);
            out.push(format!("a{i}"));
            pos = lamp;
        }
        walk(&mut out, pos, factor.shift());
    }
    out
}

/// Serializes an integral element as a word; fails on non-integral or zero
/// elements, which the word language cannot express.
pub fn to_word(x: &RingElement) -> Result<String, AlgebraError> {
    if x.is_zero() {
        return Err(AlgebraError::EmptyWord);
    }
    let mut parts: Vec<String> = Vec::new();
    for (g, c) in x.terms() {
        if !c.is_integer() {
            return Err(AlgebraError::NotIntegral);
        }
        let n = c.to_integer();
        let positive = n > num_bigint::BigInt::from(0);
        let count: usize = num_traits::ToPrimitive::to_usize(&num_traits::Signed::abs(&n))
            .ok_or(AlgebraError::NotIntegral)?;
        let mut body = element_word(g);
        if body.is_empty() {
            body.push("1".into());
        }
        let body = body.join(" ");
        for _ in 0..count {
            if !parts.is_empty() || !positive {
                parts.push(if positive { "+".into() } else { "-".into() });
            }
            parts.push(body.clone());
        }
    }
    Ok(parts.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn alpha() -> GeneratorAlphabet {
        GeneratorAlphabet::lamplighter(1)
    }

    #[test]
    fn base_case() {
        let x = parse_word("a1 - t1", &alpha()).unwrap();
        assert_eq!(x.coeff(&GroupElement::a(1, 1)), int(1));
        assert_eq!(x.coeff(&GroupElement::t(1, 1)), int(-1));
        assert_eq!(x.len(), 2);
    }

    #[test]
    fn torsion_test_element() {
        let x = parse_word("1 - a1", &alpha()).unwrap();
        assert_eq!(x.coeff(&GroupElement::identity(1)), int(1));
        assert_eq!(x.coeff(&GroupElement::a(1, 1)), int(-1));
    }

    #[test]
    fn cancellation_and_accumulation() {
        let x = parse_word("t1 T1 + a1 + a1", &alpha()).unwrap();
        assert_eq!(x.coeff(&GroupElement::identity(1)), int(1));
        assert_eq!(x.coeff(&GroupElement::a(1, 1)), int(2));
        assert_eq!(x.len(), 2);
    }

    #[test]
    fn leading_sign_and_unicode_minus() {
        let x = parse_word("- a1 \u{2212} 1", &alpha()).unwrap();
        assert_eq!(x.coeff(&GroupElement::a(1, 1)), int(-1));
        assert_eq!(x.coeff(&GroupElement::identity(1)), int(-1));
    }

    #[test]
    fn zero_coefficients_drop() {
        let x = parse_word("a1 - a1", &alpha()).unwrap();
        assert!(x.is_zero());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_word("", &alpha()), Err(AlgebraError::EmptyWord)));
        assert!(matches!(parse_word("   ", &alpha()), Err(AlgebraError::EmptyWord)));
        assert!(matches!(parse_word("b9", &alpha()), Err(AlgebraError::UnknownSymbol(_))));
        assert!(matches!(parse_word("a1 + + t1", &alpha()), Err(AlgebraError::EmptyTerm(_))));
        assert!(matches!(parse_word("a1 -", &alpha()), Err(AlgebraError::EmptyTerm(_))));
        assert!(matches!(parse_word("-", &alpha()), Err(AlgebraError::EmptyTerm(_))));
        assert!(matches!(parse_word("1 a1", &alpha()), Err(AlgebraError::MisplacedOne(_))));
        assert!(matches!(parse_word("a1 1", &alpha()), Err(AlgebraError::MisplacedOne(_))));
    }

    #[test]
    fn word_round_trip() {
        let x = parse_word("2 - t1 a1 T1 T1 - T1 + a1 t1 t1 a1", &alpha()).unwrap_err();
        assert!(matches!(x, AlgebraError::UnknownSymbol(_)));
        let x = parse_word("1 + 1 - t1 a1 T1 T1 - T1 + a1 t1 t1 a1", &alpha()).unwrap();
        let w = to_word(&x).unwrap();
        assert_eq!(parse_word(&w, &alpha()).unwrap(), x);
    }

    #[test]
    fn alphabet_is_symmetric() {
        assert!(GeneratorAlphabet::new(2, GeneratorAlphabet::lamplighter(2).symbols).is_ok());
        let bad = vec![Generator { name: "t1".into(), value: GroupElement::t(1, 1), inverse: 0 }];
        assert!(GeneratorAlphabet::new(1, bad).is_err());
    }
}
