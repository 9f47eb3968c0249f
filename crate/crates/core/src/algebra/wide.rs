//! Factors of `(Z/2)^m wr Z`: lamps carry `m`-bit values.

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WideFactor {
    /// `(position, value)` pairs, positions strictly increasing, values nonzero.
    lamps: Vec<(i64, u32)>,
    shift: i64,
}

impl WideFactor {
    pub fn identity() -> Self {
        WideFactor::default()
    }

    pub fn new(lamps: impl IntoIterator<Item = (i64, u32)>, shift: i64) -> Self {
        let mut v: Vec<(i64, u32)> = lamps.into_iter().collect();
        v.sort_by_key(|&(p, _)| p);
        let mut out: Vec<(i64, u32)> = Vec::with_capacity(v.len());
        for (p, x) in v {
            match out.last_mut() {
                Some(last) if last.0 == p => last.1 ^= x,
                _ => out.push((p, x)),
            }
        }
        out.retain(|&(_, x)| x != 0);
        WideFactor { lamps: out, shift }
    }

    pub fn shift_only(shift: i64) -> Self {
        WideFactor { lamps: Vec::new(), shift }
    }

    pub fn lamps(&self) -> &[(i64, u32)] {
        &self.lamps
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn is_identity(&self) -> bool {
        self.lamps.is_empty() && self.shift == 0
    }

    pub fn mul(&self, other: &WideFactor) -> WideFactor {
        let mut out = Vec::with_capacity(self.lamps.len() + other.lamps.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.lamps;
        let b = &other.lamps;
        while i < a.len() || j < b.len() {
            let bp = b.get(j).map(|&(p, x)| (p + self.shift, x));
            match (a.get(i), bp) {
                (Some(&(p, x)), Some((q, y))) => match p.cmp(&q) {
                    Ordering::Less => {
                        out.push((p, x));
                        i += 1;
                    }
                    Ordering::Greater => {
                        out.push((q, y));
                        j += 1;
                    }
                    Ordering::Equal => {
                        if x ^ y != 0 {
                            out.push((p, x ^ y));
                        }
                        i += 1;
                        j += 1;
                    }
                },
                (Some(&(p, x)), None) => {
                    out.push((p, x));
                    i += 1;
                }
                (None, Some((q, y))) => {
                    out.push((q, y));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        WideFactor {
            lamps: out,
            shift: self.shift + other.shift,
        }
    }

    pub fn inv(&self) -> WideFactor {
        WideFactor {
            lamps: self.lamps.iter().map(|&(p, x)| (p - self.shift, x)).collect(),
            shift: -self.shift,
        }
    }
}

impl fmt::Display for WideFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lamps: Vec<String> = self.lamps.iter().map(|(p, x)| format!("{p}:{x}")).collect();
        write!(f, "{{{}}}", lamps.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xor_merge_and_inverse() {
        let x = WideFactor::new([(0, 3), (2, 1)], 1);
        let y = WideFactor::new([(-1, 3), (0, 2)], -1);
        let p = x.mul(&y);
        assert_eq!(p, WideFactor::new([(1, 2), (2, 1)], 0));
        assert!(x.mul(&x.inv()).is_identity());
        assert!(x.inv().mul(&x).is_identity());
    }
}
