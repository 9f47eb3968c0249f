//! The explicit exponent bound and the `C / log n` convergence check, with
//! rigorous interval arithmetic for `e^x` and `ln n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::RingElement;
use crate::rational::{fmt_rational, Rational};

use super::moment::moments;
use super::SpectralError;

/// `floor(e^x)` for a non-negative integer `x`, by a Taylor series on
/// scaled integers with directed rounding, refined until both ends agree.
pub fn floor_exp(x: u64) -> BigInt {
    let xb = BigInt::from(x);
    let mut prec: u64 = 64 + 2 * x;
    loop {
        let one = BigInt::one() << prec;
        let (mut lo, mut hi) = (BigInt::zero(), BigInt::zero());
        let (mut tl, mut tu) = (one.clone(), one.clone());
        let mut i: u64 = 0;
        loop {
            lo += &tl;
            hi += &tu;
            i += 1;
            tl = (&tl * &xb).div_floor(&BigInt::from(i));
            tu = (&tu * &xb + BigInt::from(i - 1)).div_floor(&BigInt::from(i));
            // past 2x the terms at least halve, so the tail is below 2 * tu
            if i > 2 * x && tu <= BigInt::one() {
                hi += &tu * 2 + 2;
                break;
            }
        }
        let (a, b) = (lo >> prec, hi >> prec);
        if a == b {
            return a;
        }
        prec *= 2;
    }
}

/// Least `n >= 2` with `3C / ln n < 1 / (3k)`, i.e. `floor(e^(9Ck)) + 1`
/// (`e^x` is irrational for integer `x > 0`, so the inequality is strict there).
pub fn required_exponent(c: u64, k: u64) -> BigInt {
    assert!(c >= 1 && k >= 1);
    let x = 9 * c * k;
    std::cmp::max(floor_exp(x) + 1, BigInt::from(2))
}

/// Closed interval with rational endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// `2 atanh(z) = ln((1+z)/(1-z))` for rational `0 <= z <= 1/3`, with the tail
/// bounded by a geometric series.
fn two_atanh(z: &Rational, tol: &Rational) -> Interval {
    let z2 = z * z;
    let mut power = z.clone();
    let mut sum = Rational::zero();
    let mut i: u64 = 0;
    loop {
        sum += &power / Rational::from_integer((2 * i + 1).into());
        power *= &z2;
        i += 1;
        // remaining terms <= power / (2i+1) / (1 - z^2)
        let tail = &power / Rational::from_integer((2 * i + 1).into()) / (Rational::one() - &z2);
        if &tail * Rational::from_integer(2.into()) < *tol {
            let two = Rational::from_integer(2.into());
            return Interval { lo: &sum * &two, hi: (sum + tail) * two };
        }
    }
}

/// Rational enclosure of `ln n` of width below `tol`.
pub fn ln_interval(n: &BigInt, tol: &Rational) -> Interval {
    assert!(n.is_positive());
    let bits = n.bits() - 1; // n = 2^bits * r, 1 <= r < 2
    let r = Rational::new(n.clone(), BigInt::one() << bits);
    let third = Rational::new(1.into(), 3.into());
    let inner_tol = tol / Rational::from_integer((bits + 2).into());
    // ln 2 = 2 atanh(1/3);  ln r = 2 atanh((r-1)/(r+1))
    let ln2 = two_atanh(&third, &inner_tol);
    let z = (&r - Rational::one()) / (&r + Rational::one());
    let lr = two_atanh(&z, &inner_tol);
    let b = Rational::from_integer(bits.into());
    let out = Interval { lo: &ln2.lo * &b + lr.lo, hi: &ln2.hi * &b + lr.hi };
    debug_assert!(out.width() < *tol);
    out
}

/// Interval width used for every `C / log n` comparison.
pub fn log_tolerance() -> Rational {
    Rational::new(1.into(), BigInt::from(10).pow(31))
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundRow {
    pub n: u64,
    /// `|moment - mu0|` as `p/q`.
    pub deviation: String,
    /// `3C / ln n - deviation`, decimal, for display only.
    pub margin: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub c: String,
    pub mu0: String,
    pub max_interval_width: f64,
    pub rows: Vec<BoundRow>,
}

impl BoundReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

/// Check `|tr_vN((1-P)^n) - mu0| < 3C / ln n` for each `n`.
pub fn verify_lueck_bound(
    p: &RingElement,
    mu0: &Rational,
    ns: &[u64],
    budget: u64,
) -> Result<BoundReport, SpectralError> {
    if let Some(&bad) = ns.iter().find(|&&n| n < 2) {
        return Err(SpectralError::ExponentTooSmall(bad));
    }
    let c = p.elem().denominator_lcm();
    let max_n = ns.iter().copied().max().unwrap_or(2);
    let ms = moments(p, max_n, budget)?;
    let tol = log_tolerance();
    let three_c = Rational::from_integer(&c * 3);
    let mut width = Rational::zero();
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let dev = (&ms[n as usize] - mu0).abs();
        let ln = ln_interval(&BigInt::from(n), &tol);
        width = width.max(ln.width());
        // dev < 3C / ln n  <=>  dev * ln n < 3C; use the upper end of ln n
        let holds = &dev * &ln.hi < three_c;
        let margin = (&three_c / &ln.lo).to_f64().unwrap_or(f64::NAN) - dev.to_f64().unwrap_or(f64::NAN);
        rows.push(BoundRow { n, deviation: fmt_rational(&dev), margin, holds });
    }
    Ok(BoundReport {
        c: c.to_string(),
        mu0: fmt_rational(mu0),
        max_interval_width: width.to_f64().unwrap_or(f64::NAN),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_exponentials() {
        assert_eq!(floor_exp(0), BigInt::from(1));
        assert_eq!(floor_exp(1), BigInt::from(2));
        assert_eq!(floor_exp(2), BigInt::from(7));
        assert_eq!(floor_exp(9), BigInt::from(8103));
        assert_eq!(floor_exp(20), BigInt::from(485_165_195u64));
    }

    #[test]
    fn exponent_bound() {
        assert_eq!(required_exponent(1, 1), BigInt::from(8104));
        // e^36 = 4311231547115195.227...
        assert_eq!(required_exponent(2, 2), BigInt::from(4_311_231_547_115_196u64));
    }

    #[test]
    fn log_enclosures() {
        let tol = log_tolerance();
        for n in [1u64, 2, 3, 10, 100, 8104, 1 << 40] {
            let i = ln_interval(&BigInt::from(n), &tol);
            assert!(i.width() < tol);
            let f = (n as f64).ln();
            assert!(i.lo.to_f64().unwrap() <= f + 1e-12 && f - 1e-12 <= i.hi.to_f64().unwrap());
        }
    }
}
