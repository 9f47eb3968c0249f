//! Operators over `(Z/2^m wr Z)^k x H` kept as sums of `c * g * chi_C`, where
//! `chi_C` is a cylinder idempotent that is never expanded into characters
//! unless asked to.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{Factor, Group, GroupElement, GroupRingElem, RingElement, WideFactor};
use crate::rational::{fmt_rational, parse_rational, Rational};

use super::embed::{block_embed, tensor_embed, EmbeddingDescriptor};
use super::f2::{dot, mask, AffineElem, F2Matrix};
use super::finite_group::{affine_elements, FiniteGroupTable};
use super::matrix_units::MAX_EXPANDED_SIZE;
use super::DualityError;

/// The finite factor `H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HGroup {
    Cyclic(u32),
    /// `(Z/2)^n x| GL(n, 2)`.
    Affine(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HElem {
    Cyclic(u32),
    Affine(AffineElem),
}

impl HGroup {
    pub fn order(&self) -> BigInt {
        match *self {
            HGroup::Cyclic(k) => k.into(),
            HGroup::Affine(n) => {
                // 2^n * prod_{i<n} (2^n - 2^i)
                let two_n = BigInt::one() << n;
                (0..n).fold(two_n.clone(), |acc, i| acc * (&two_n - (BigInt::one() << i)))
            }
        }
    }

    /// Explicit table plus the element listing it indexes; guarded by size.
    pub fn table(&self) -> Result<(FiniteGroupTable, Vec<HElem>), DualityError> {
        let order = self.order();
        if order > BigInt::from(MAX_EXPANDED_SIZE) {
            return Err(DualityError::TooLarge {
                what: "finite group order",
                size: usize::try_from(&order).unwrap_or(usize::MAX),
                limit: MAX_EXPANDED_SIZE,
            });
        }
        Ok(match *self {
            HGroup::Cyclic(k) => (
                FiniteGroupTable::cyclic(k as usize),
                (0..k).map(HElem::Cyclic).collect(),
            ),
            HGroup::Affine(n) => (
                FiniteGroupTable::affine(n),
                affine_elements(n).into_iter().map(HElem::Affine).collect(),
            ),
        })
    }

    fn state_bits(&self) -> Option<usize> {
        match *self {
            HGroup::Affine(n) => Some(n),
            HGroup::Cyclic(_) => None,
        }
    }
}

impl Group for HGroup {
    type Elem = HElem;

    fn identity(&self) -> HElem {
        match *self {
            HGroup::Cyclic(_) => HElem::Cyclic(0),
            HGroup::Affine(n) => HElem::Affine(AffineElem::identity(n)),
        }
    }

    fn mul(&self, a: &HElem, b: &HElem) -> HElem {
        match (self, a, b) {
            (HGroup::Cyclic(k), HElem::Cyclic(x), HElem::Cyclic(y)) => HElem::Cyclic((x + y) % k),
            (HGroup::Affine(_), HElem::Affine(x), HElem::Affine(y)) => HElem::Affine(x.mul(y)),
            _ => panic!("element does not belong to {self:?}"),
        }
    }

    fn inv(&self, a: &HElem) -> HElem {
        match (self, a) {
            (HGroup::Cyclic(k), HElem::Cyclic(x)) => HElem::Cyclic((k - x) % k),
            (HGroup::Affine(_), HElem::Affine(x)) => HElem::Affine(x.inv()),
            _ => panic!("element does not belong to {self:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SourceElem {
    pub tapes: Vec<WideFactor>,
    pub h: HElem,
}

impl SourceElem {
    /// Conjugation `g chi_C g^-1` acts on cylinders by this map.
    fn shifts(&self) -> impl Iterator<Item = i64> + '_ {
        self.tapes.iter().map(WideFactor::shift)
    }

    /// True when the element lies in the abelian dual part (no shifts, no GL part).
    fn is_character(&self) -> bool {
        self.shifts().all(|s| s == 0)
            && match &self.h {
                HElem::Cyclic(x) => *x == 0,
                HElem::Affine(e) => e.a.is_identity(),
            }
    }
}

/// `(Z/2^m wr Z)^tapes x H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceGroup {
    pub tapes: usize,
    pub m: u32,
    pub h: HGroup,
}

impl Group for SourceGroup {
    type Elem = SourceElem;

    fn identity(&self) -> SourceElem {
        SourceElem {
            tapes: vec![WideFactor::identity(); self.tapes],
            h: self.h.identity(),
        }
    }

    fn mul(&self, a: &SourceElem, b: &SourceElem) -> SourceElem {
        SourceElem {
            tapes: a.tapes.iter().zip(&b.tapes).map(|(x, y)| x.mul(y)).collect(),
            h: self.h.mul(&a.h, &b.h),
        }
    }

    fn inv(&self, a: &SourceElem) -> SourceElem {
        SourceElem {
            tapes: a.tapes.iter().map(WideFactor::inv).collect(),
            h: self.h.inv(&a.h),
        }
    }
}

/// A cylinder of `(prod_Z (Z/2)^m)^k x (Z/2)^n`: per tape, positions pinned to
/// sets of letters (bitmask over the `2^m` letters), and optionally an exact state.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StructCylinder {
    pub tapes: Vec<BTreeMap<i64, u64>>,
    pub state: Option<u32>,
}

pub fn full_mask(m: u32) -> u64 {
    assert!(m <= 6, "letter sets are stored as 64-bit masks");
    if m == 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << m)) - 1
    }
}

impl StructCylinder {
    pub fn full(tapes: usize) -> Self {
        StructCylinder { tapes: vec![BTreeMap::new(); tapes], state: None }
    }

    /// Pin `tape` at `pos` to the letter set `set`; `None` if that empties the cylinder.
    pub fn restrict(mut self, m: u32, tape: usize, pos: i64, set: u64) -> Option<Self> {
        let cur = self.tapes[tape].get(&pos).copied().unwrap_or(full_mask(m));
        let new = cur & set;
        if new == 0 {
            return None;
        }
        if new == full_mask(m) {
            self.tapes[tape].remove(&pos);
        } else {
            self.tapes[tape].insert(pos, new);
        }
        Some(self)
    }

    pub fn with_state(mut self, state: u32) -> Option<Self> {
        match self.state {
            Some(s) if s != state => None,
            _ => {
                self.state = Some(state);
                Some(self)
            }
        }
    }

    pub fn intersect(&self, other: &StructCylinder, m: u32) -> Option<StructCylinder> {
        let mut out = self.clone();
        for (t, map) in other.tapes.iter().enumerate() {
            for (&p, &set) in map {
                out = out.restrict(m, t, p, set)?;
            }
        }
        match other.state {
            Some(s) => out.with_state(s),
            None => Some(out),
        }
    }

    /// The cylinder `C'` with `g chi_C g^-1 = chi_C'`.
    pub fn conjugate(&self, g: &SourceElem) -> StructCylinder {
        let tapes = self
            .tapes
            .iter()
            .zip(g.shifts())
            .map(|(map, s)| map.iter().map(|(&p, &set)| (p + s, set)).collect())
            .collect();
        let state = match (&g.h, self.state) {
            (HElem::Affine(e), Some(sigma)) => {
                // A chi_sigma A^-1 = chi_{A^-T sigma}
                let a_inv_t = e.a.inverse().expect("invertible").transpose();
                Some(a_inv_t.apply(sigma))
            }
            (_, s) => s,
        };
        StructCylinder { tapes, state }
    }

    /// Haar measure.
    pub fn measure(&self, m: u32, n: Option<usize>) -> Rational {
        let mut out = Rational::one();
        for map in &self.tapes {
            for &set in map.values() {
                out *= Rational::new(set.count_ones().into(), BigInt::one() << m);
            }
        }
        if self.state.is_some() {
            out /= Rational::from_integer(BigInt::one() << n.expect("state constraint needs an affine H"));
        }
        out
    }

    pub fn constrained_positions(&self) -> usize {
        self.tapes.iter().map(BTreeMap::len).sum()
    }

    /// Whether the configuration (letter at each tape position, state) lies in the cylinder.
    pub fn contains(&self, letter: impl Fn(usize, i64) -> u32, state: u32) -> bool {
        self.state.is_none_or(|s| s == state)
            && self
                .tapes
                .iter()
                .enumerate()
                .all(|(t, map)| map.iter().all(|(&p, &set)| set >> letter(t, p) & 1 == 1))
    }
}

/// Fourier coefficient of the letter-set indicator on the character `w`.
fn set_character(m: u32, set: u64, w: u32) -> Rational {
    let mut s: i64 = 0;
    for v in 0..(1u32 << m) {
        if set >> v & 1 == 1 {
            s += if dot(v, w) == 1 { -1 } else { 1 };
        }
    }
    Rational::new(s.into(), BigInt::one() << m)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct StructTerm {
    pub g: SourceElem,
    pub chi: StructCylinder,
    pub coeff: Rational,
}

/// `sum c * g * chi_C` together with the embedding chain down to `(Z/2 wr Z)^(k+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuredOperator {
    pub group: SourceGroup,
    pub chain: Vec<EmbeddingDescriptor>,
    terms: Vec<StructTerm>,
}

impl StructuredOperator {
    pub fn default_chain(group: &SourceGroup) -> Vec<EmbeddingDescriptor> {
        let mut chain: Vec<EmbeddingDescriptor> = (1..=group.tapes)
            .map(|f| EmbeddingDescriptor::block_lamp(group.m, f))
            .collect();
        chain.push(EmbeddingDescriptor::tensor(group.h.order(), group.tapes + 1));
        chain
    }

    pub fn zero(group: SourceGroup) -> Self {
        StructuredOperator { chain: Self::default_chain(&group), group, terms: Vec::new() }
    }

    pub fn from_terms(group: SourceGroup, terms: Vec<StructTerm>) -> Self {
        let mut out = StructuredOperator { chain: Self::default_chain(&group), group, terms };
        out.collect_terms();
        out
    }

    pub fn one(group: SourceGroup) -> Self {
        Self::cylinder(group, StructCylinder::full(group.tapes))
    }

    pub fn cylinder(group: SourceGroup, chi: StructCylinder) -> Self {
        Self::from_terms(group, vec![StructTerm { g: group.identity(), chi, coeff: Rational::one() }])
    }

    pub fn terms(&self) -> &[StructTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Merge equal `(g, chi)` pairs, drop zeros, sort.
    fn collect_terms(&mut self) {
        let mut map: BTreeMap<(SourceElem, StructCylinder), Rational> = BTreeMap::new();
        for t in self.terms.drain(..) {
            *map.entry((t.g, t.chi)).or_insert_with(Rational::zero) += t.coeff;
        }
        self.terms = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((g, chi), coeff)| StructTerm { g, chi, coeff })
            .collect();
    }

    fn check(&self, other: &Self) -> Result<(), DualityError> {
        if self.group != other.group {
            return Err(DualityError::SourceMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, DualityError> {
        self.check(other)?;
        let terms = self.terms.iter().chain(&other.terms).cloned().collect();
        Ok(Self::from_terms(self.group, terms))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| StructTerm { coeff: &t.coeff * c, ..t.clone() })
            .collect();
        Self::from_terms(self.group, terms)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, DualityError> {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Left multiplication by a group element.
    pub fn left_mul(&self, g: &SourceElem) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| StructTerm { g: self.group.mul(g, &t.g), ..t.clone() })
            .collect();
        Self::from_terms(self.group, terms)
    }

    /// `(c g chi_C)(d h chi_D) = cd gh chi_{h^-1 C h cap D}`.
    pub fn mul(&self, other: &Self) -> Result<Self, DualityError> {
        self.check(other)?;
        let m = self.group.m;
        let mut terms = Vec::new();
        for y in &other.terms {
            let h_inv = self.group.inv(&y.g);
            for x in &self.terms {
                let moved = x.chi.conjugate(&h_inv);
                if let Some(chi) = moved.intersect(&y.chi, m) {
                    terms.push(StructTerm {
                        g: self.group.mul(&x.g, &y.g),
                        chi,
                        coeff: &x.coeff * &y.coeff,
                    });
                }
            }
        }
        Ok(Self::from_terms(self.group, terms))
    }

    /// `(c g chi_C)^* = c g^-1 chi_{g C g^-1}`.
    pub fn star(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| StructTerm {
                g: self.group.inv(&t.g),
                chi: t.chi.conjugate(&t.g),
                coeff: t.coeff.clone(),
            })
            .collect();
        Self::from_terms(self.group, terms)
    }

    /// Coefficient of the identity, by cylinder combinatorics.
    pub fn trace(&self) -> Rational {
        let m = self.group.m;
        let n = self.group.h.state_bits();
        let mut out = Rational::zero();
        for t in &self.terms {
            if !t.g.is_character() {
                continue;
            }
            // coefficient of the character g^-1 = g in chi_C
            let mut c = t.coeff.clone();
            for (tape, map) in t.g.tapes.iter().zip(&t.chi.tapes) {
                let lamps: BTreeMap<i64, u32> = tape.lamps().iter().copied().collect();
                if lamps.keys().any(|p| !map.contains_key(p)) {
                    c = Rational::zero();
                    break;
                }
                for (&p, &set) in map {
                    c *= set_character(m, set, lamps.get(&p).copied().unwrap_or(0));
                }
            }
            if c.is_zero() {
                continue;
            }
            let v = match &t.g.h {
                HElem::Affine(e) => e.v,
                HElem::Cyclic(_) => 0,
            };
            match t.chi.state {
                Some(sigma) => {
                    let bits = n.expect("state constraint needs an affine H");
                    c /= Rational::from_integer(BigInt::one() << bits);
                    if dot(sigma, v) == 1 {
                        c = -c;
                    }
                }
                None if v != 0 => continue,
                None => {}
            }
            out += c;
        }
        out
    }

    /// Exact equality of the operators (not of their presentations).
    pub fn equals(&self, other: &Self) -> Result<bool, DualityError> {
        Ok(self.sub(other)?.is_zero())
    }

    /// Zero test: for each `g`, the function `sum c 1_C` must vanish.
    pub fn is_zero(&self) -> bool {
        let mut by_g: BTreeMap<&SourceElem, Vec<(Rational, StructCylinder)>> = BTreeMap::new();
        for t in &self.terms {
            by_g.entry(&t.g).or_default().push((t.coeff.clone(), t.chi.clone()));
        }
        let m = self.group.m;
        let n = self.group.h.state_bits();
        by_g.into_values().all(|fs| function_is_zero(fs, m, n))
    }

    /// Characters of `(Z/2)^n` as elements of `H`.
    fn state_characters(&self, sigma: Option<u32>) -> Vec<(HElem, Rational)> {
        match (self.group.h, sigma) {
            (_, None) => vec![(self.group.h.identity(), Rational::one())],
            (HGroup::Affine(n), Some(sigma)) => {
                let scale = Rational::new(BigInt::one(), BigInt::one() << n);
                (0..=mask(n))
                    .map(|u| {
                        let c = if dot(sigma, u) == 1 { -scale.clone() } else { scale.clone() };
                        (HElem::Affine(AffineElem::translation(n, u)), c)
                    })
                    .collect()
            }
            (HGroup::Cyclic(_), Some(_)) => panic!("state constraint needs an affine H"),
        }
    }

    /// Expand every `chi_C` into characters: an element of `Q[source group]`.
    pub fn lower(&self, max_terms: usize) -> Result<GroupRingElem<SourceElem>, DualityError> {
        let m = self.group.m;
        let mut out: GroupRingElem<SourceElem> = GroupRingElem::zero();
        for t in &self.terms {
            let mut partial: Vec<(SourceElem, Rational)> = vec![(t.g.clone(), t.coeff.clone())];
            for (tape, map) in t.chi.tapes.iter().enumerate() {
                for (&p, &set) in map {
                    let chars: Vec<(u32, Rational)> = (0..1u32 << m)
                        .map(|w| (w, set_character(m, set, w)))
                        .filter(|(_, c)| !c.is_zero())
                        .collect();
                    if partial.len() * chars.len() > max_terms {
                        return Err(DualityError::TooLarge { what: "lowered term count", size: partial.len() * chars.len(), limit: max_terms });
                    }
                    let mut next = Vec::with_capacity(partial.len() * chars.len());
                    for (g, c) in &partial {
                        for (w, d) in &chars {
                            let mut lamp = self.group.identity();
                            lamp.tapes[tape] = WideFactor::new([(p, *w)], 0);
                            next.push((self.group.mul(g, &lamp), c * d));
                        }
                    }
                    partial = next;
                }
            }
            let states = self.state_characters(t.chi.state);
            for (g, c) in partial {
                for (u, d) in &states {
                    let mut e = self.group.identity();
                    e.h = u.clone();
                    out.add_term(self.group.mul(&g, &e), &c * d);
                }
            }
            if out.len() > max_terms {
                return Err(DualityError::TooLarge { what: "lowered term count", size: out.len(), limit: max_terms });
            }
        }
        Ok(out)
    }

    /// Run the embedding chain: a flat element of `Q[(Z/2 wr Z)^(k+1)]`.
    pub fn expand(&self, max_terms: usize) -> Result<RingElement, DualityError> {
        let (table, elems) = self.group.h.table()?;
        let index: HashMap<&HElem, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let lowered = self.lower(max_terms)?;
        let k = self.group.tapes;
        let mid: GroupRingElem<(GroupElement, usize)> = GroupRingElem::from_terms(lowered.terms().map(|(g, c)| {
            let factors: Vec<Factor> = g.tapes.iter().map(|f| block_embed(self.group.m, f)).collect();
            ((GroupElement::from_factors(factors), index[&g.h]), c.clone())
        }));
        let per_unit = 1usize << (table.order() + 2);
        if mid.len().saturating_mul(per_unit) > max_terms {
            return Err(DualityError::TooLarge { what: "expanded term count", size: mid.len().saturating_mul(per_unit), limit: max_terms });
        }
        tensor_embed(&mid, k, &table)
    }

    /// A common denominator `D` such that `D * self` expands to an integral element.
    pub fn clearing_denominator(&self) -> BigInt {
        use num_integer::Integer;
        let m = self.group.m as usize;
        let n = self.group.h.state_bits().unwrap_or(0);
        let mut lcm = BigInt::one();
        let mut bits = 0usize;
        for t in &self.terms {
            lcm = lcm.lcm(t.coeff.denom());
            bits = bits.max(t.chi.constrained_positions() * m + if t.chi.state.is_some() { n } else { 0 });
        }
        let h_bits = usize::try_from(&self.group.h.order()).ok().map(|h| h + 2);
        lcm << (bits + h_bits.unwrap_or(0))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("structured\n");
        let h = match self.group.h {
            HGroup::Cyclic(k) => format!("cyclic:{k}"),
            HGroup::Affine(n) => format!("affine:{n}"),
        };
        writeln!(out, "source tapes={} m={} h={}", self.group.tapes, self.group.m, h).unwrap();
        for d in &self.chain {
            writeln!(out, "embed {d}").unwrap();
        }
        for t in &self.terms {
            out.push_str(&fmt_rational(&t.coeff));
            out.push_str(" * [ ");
            for (i, f) in t.g.tapes.iter().enumerate() {
                let lamps: Vec<String> = f.lamps().iter().map(|(p, v)| format!("{p}:{v}")).collect();
                write!(out, "f{}:{{{}}} s{}:{} | ", i + 1, lamps.join(","), i + 1, f.shift()).unwrap();
            }
            match &t.g.h {
                HElem::Cyclic(x) => write!(out, "h:{x} ]").unwrap(),
                HElem::Affine(e) => write!(out, "h:{e} ]").unwrap(),
            }
            out.push_str(" chi [ ");
            for (i, map) in t.chi.tapes.iter().enumerate() {
                let cells: Vec<String> = map.iter().map(|(p, s)| format!("{p}:{s:x}")).collect();
                write!(out, "c{}:{{{}}} | ", i + 1, cells.join(",")).unwrap();
            }
            match t.chi.state {
                Some(s) => write!(out, "state:{s} ]").unwrap(),
                None => out.push_str("state:* ]"),
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, DualityError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
        let err = |line: usize, message: &str| DualityError::Format { line, message: message.to_string() };
        let (ln, first) = lines.next().ok_or_else(|| err(0, "empty input"))?;
        if first != "structured" {
            return Err(err(ln, "expected `structured` header"));
        }
        let (ln, source) = lines.next().ok_or_else(|| err(ln, "missing source line"))?;
        let group = parse_source(source).map_err(|m| err(ln, &m))?;
        let mut chain = Vec::new();
        let mut terms = Vec::new();
        for (ln, line) in lines {
            if let Some(rest) = line.strip_prefix("embed ") {
                chain.push(rest.parse::<EmbeddingDescriptor>().map_err(|m| err(ln, &m))?);
            } else {
                terms.push(parse_term(line, &group).map_err(|m| err(ln, &m))?);
            }
        }
        let mut out = StructuredOperator::from_terms(group, terms);
        if chain != out.chain {
            return Err(err(0, "embedding chain does not match the source group"));
        }
        out.chain = chain;
        Ok(out)
    }
}

impl fmt::Display for StructuredOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn parse_source(line: &str) -> Result<SourceGroup, String> {
    let rest = line.strip_prefix("source ").ok_or("expected `source` line")?;
    let mut tapes = None;
    let mut m = None;
    let mut h = None;
    for w in rest.split_whitespace() {
        match w.split_once('=') {
            Some(("tapes", v)) => tapes = v.parse().ok(),
            Some(("m", v)) => m = v.parse().ok().filter(|&m: &u32| (1..=6).contains(&m)),
            Some(("h", v)) => {
                h = match v.split_once(':') {
                    Some(("cyclic", k)) => k.parse().ok().filter(|&k| k > 0).map(HGroup::Cyclic),
                    Some(("affine", n)) => n.parse().ok().filter(|&n| n <= 32).map(HGroup::Affine),
                    _ => None,
                }
            }
            _ => return Err(format!("bad source parameter `{w}`")),
        }
    }
    Ok(SourceGroup {
        tapes: tapes.ok_or("bad or missing `tapes`")?,
        m: m.ok_or("bad or missing `m`")?,
        h: h.ok_or("bad or missing `h`")?,
    })
}

fn parse_braced<T>(s: &str, prefix: &str, mut item: impl FnMut(&str, &str) -> Option<T>) -> Result<Vec<T>, String> {
    let body = s
        .trim()
        .strip_prefix(prefix)
        .and_then(|r| r.strip_prefix('{'))
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| format!("expected `{prefix}{{..}}`, found `{s}`"))?;
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|cell| {
            let (a, b) = cell.split_once(':').ok_or_else(|| format!("bad cell `{cell}`"))?;
            item(a.trim(), b.trim()).ok_or_else(|| format!("bad cell `{cell}`"))
        })
        .collect()
}

fn parse_term(line: &str, group: &SourceGroup) -> Result<StructTerm, String> {
    let (coeff, rest) = line.split_once(" * ").ok_or("expected `<rational> * [..]`")?;
    let coeff = parse_rational(coeff).ok_or_else(|| format!("bad coefficient `{coeff}`"))?;
    let (g, chi) = rest.split_once(" chi ").ok_or("missing `chi` part")?;
    let strip = |s: &str| -> Result<String, String> {
        Ok(s.trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| format!("expected brackets around `{s}`"))?
            .to_string())
    };
    let g = strip(g)?;
    let parts: Vec<&str> = g.split('|').collect();
    if parts.len() != group.tapes + 1 {
        return Err("wrong number of factors".into());
    }
    let mut tapes = Vec::new();
    for (i, p) in parts[..group.tapes].iter().enumerate() {
        let (lamps, shift) = p
            .trim()
            .split_once(' ')
            .ok_or_else(|| format!("bad factor `{p}`"))?;
        let fm = (1u32 << group.m) - 1;
        let lamps = parse_braced(lamps, &format!("f{}:", i + 1), |a, b| {
            Some((a.parse().ok()?, b.parse().ok().filter(|&v: &u32| v != 0 && v & !fm == 0)?))
        })?;
        let shift = shift
            .trim()
            .strip_prefix(&format!("s{}:", i + 1))
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| format!("bad shift `{shift}`"))?;
        let f = WideFactor::new(lamps.clone(), shift);
        if f.lamps().len() != lamps.len() {
            return Err("lamp positions must be distinct".into());
        }
        tapes.push(f);
    }
    let hs = parts[group.tapes].trim().strip_prefix("h:").ok_or("missing `h:`")?;
    let h = parse_helem(hs, group.h).ok_or_else(|| format!("bad H element `{hs}`"))?;
    let chi = strip(chi)?;
    let parts: Vec<&str> = chi.split('|').collect();
    if parts.len() != group.tapes + 1 {
        return Err("wrong number of cylinder factors".into());
    }
    let fm = full_mask(group.m);
    let mut maps = Vec::new();
    for (i, p) in parts[..group.tapes].iter().enumerate() {
        let cells = parse_braced(p, &format!("c{}:", i + 1), |a, b| {
            Some((a.parse().ok()?, u64::from_str_radix(b, 16).ok().filter(|&s| s != 0 && s != fm && s & !fm == 0)?))
        })?;
        let map: BTreeMap<i64, u64> = cells.iter().copied().collect();
        if map.len() != cells.len() {
            return Err("cylinder positions must be distinct".into());
        }
        maps.push(map);
    }
    let st = parts[group.tapes].trim().strip_prefix("state:").ok_or("missing `state:`")?;
    let state = match (st, group.h) {
        ("*", _) => None,
        (s, HGroup::Affine(n)) => Some(s.parse().ok().filter(|&s: &u32| s & !mask(n) == 0).ok_or("bad state")?),
        _ => return Err("state constraint needs an affine H".into()),
    };
    Ok(StructTerm { g: SourceElem { tapes, h }, chi: StructCylinder { tapes: maps, state }, coeff })
}

fn parse_helem(s: &str, group: HGroup) -> Option<HElem> {
    match group {
        HGroup::Cyclic(k) => s.parse().ok().filter(|&x| x < k).map(HElem::Cyclic),
        HGroup::Affine(n) => {
            let (v, a) = s.split_once(';')?;
            let v: u32 = v.parse().ok().filter(|&v| v & !mask(n) == 0)?;
            let cols: Vec<u32> = if n == 0 { Vec::new() } else { a.split('.').map(|c| c.parse().ok()).collect::<Option<_>>()? };
            if cols.len() != n || cols.iter().any(|c| c & !mask(n) != 0) {
                return None;
            }
            let a = F2Matrix::from_cols(n, cols);
            a.inverse()?;
            Some(HElem::Affine(AffineElem { v, a }))
        }
    }
}

/// Decide whether `sum c_i 1_{C_i}` vanishes identically, splitting on one
/// constrained coordinate at a time.
pub fn function_is_zero(terms: Vec<(Rational, StructCylinder)>, m: u32, n: Option<usize>) -> bool {
    let terms: Vec<(Rational, StructCylinder)> = terms.into_iter().filter(|(c, _)| !c.is_zero()).collect();
    if terms.is_empty() {
        return true;
    }
    // pick the first constrained tape cell
    let pick = terms
        .iter()
        .find_map(|(_, c)| c.tapes.iter().enumerate().find_map(|(t, map)| map.keys().next().map(|&p| (t, p))));
    if let Some((t, p)) = pick {
        // group letters by which terms accept them
        let mut classes: BTreeSet<Vec<bool>> = BTreeSet::new();
        let mut reps = Vec::new();
        for v in 0..(1u32 << m) {
            let sig: Vec<bool> = terms
                .iter()
                .map(|(_, c)| c.tapes[t].get(&p).is_none_or(|&s| s >> v & 1 == 1))
                .collect();
            if classes.insert(sig) {
                reps.push(v);
            }
        }
        return reps.into_iter().all(|v| {
            let sub = terms
                .iter()
                .filter(|(_, c)| c.tapes[t].get(&p).is_none_or(|&s| s >> v & 1 == 1))
                .map(|(k, c)| {
                    let mut c = c.clone();
                    c.tapes[t].remove(&p);
                    (k.clone(), c)
                })
                .collect();
            function_is_zero(sub, m, n)
        });
    }
    let free: Rational = terms.iter().filter(|(_, c)| c.state.is_none()).map(|(k, _)| k.clone()).sum();
    let mut pinned: BTreeMap<u32, Rational> = BTreeMap::new();
    for (k, c) in &terms {
        if let Some(s) = c.state {
            *pinned.entry(s).or_insert_with(Rational::zero) += k;
        }
    }
    let total_states = n.map(|n| 1u64 << n).unwrap_or(1);
    if (pinned.len() as u64) < total_states && !free.is_zero() {
        return false;
    }
    pinned.values().all(|v| (v + &free).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn group() -> SourceGroup {
        SourceGroup { tapes: 1, m: 1, h: HGroup::Affine(1) }
    }

    fn cyl(pos: i64, set: u64) -> StructCylinder {
        StructCylinder::full(1).restrict(1, 0, pos, set).unwrap()
    }

    #[test]
    fn affine_orders() {
        assert_eq!(HGroup::Affine(2).order(), BigInt::from(24));
        assert_eq!(HGroup::Affine(3).order(), BigInt::from(1344));
    }

    #[test]
    fn partition_of_unity_is_one() {
        let g = group();
        let parts = StructuredOperator::cylinder(g, cyl(0, 0b01)).add(&StructuredOperator::cylinder(g, cyl(0, 0b10))).unwrap();
        assert!(parts.equals(&StructuredOperator::one(g)).unwrap());
        assert_eq!(parts.trace(), int(1));
    }

    #[test]
    fn shift_conjugation_matches_lowering() {
        let g = group();
        let mut t = g.identity();
        t.tapes[0] = WideFactor::shift_only(1);
        let x = StructuredOperator::cylinder(g, cyl(0, 0b10)).left_mul(&t);
        let y = StructuredOperator::cylinder(g, cyl(2, 0b01));
        let prod = x.mul(&y).unwrap();
        let flat = x.lower(1000).unwrap().mul(&y.lower(1000).unwrap(), &g);
        assert_eq!(prod.lower(1000).unwrap(), flat);
        let star = x.star();
        assert_eq!(star.lower(1000).unwrap(), x.lower(1000).unwrap().star(&g));
    }

    #[test]
    fn structured_trace_matches_lowered() {
        let g = SourceGroup { tapes: 1, m: 2, h: HGroup::Affine(1) };
        let chi = StructCylinder::full(1).restrict(2, 0, 0, 0b0110).unwrap().with_state(1).unwrap();
        let x = StructuredOperator::cylinder(g, chi);
        assert_eq!(x.trace(), rat(1, 4));
        let flat = x.lower(1000).unwrap();
        assert_eq!(flat.trace(&g), rat(1, 4));
        assert_eq!(x.mul(&x).unwrap(), x);
    }

    #[test]
    fn text_round_trip() {
        let g = SourceGroup { tapes: 2, m: 2, h: HGroup::Affine(2) };
        let chi = StructCylinder::full(2).restrict(2, 1, -1, 0b1).unwrap().with_state(2).unwrap();
        let mut e = g.identity();
        e.tapes[0] = WideFactor::new([(3, 2)], -1);
        e.h = HElem::Affine(AffineElem { v: 1, a: F2Matrix::from_cols(2, vec![3, 2]) });
        let x = StructuredOperator::cylinder(g, chi).left_mul(&e).scale(&rat(-3, 7));
        let text = x.to_text();
        assert_eq!(StructuredOperator::from_text(&text).unwrap(), x);
    }

    #[test]
    fn expand_small_cyclic() {
        let g = SourceGroup { tapes: 1, m: 1, h: HGroup::Cyclic(2) };
        let x = StructuredOperator::one(g);
        let flat = x.expand(1 << 20).unwrap();
        assert_eq!(flat.trace_vn(), rat(1, 8));
        assert!(StructuredOperator::one(SourceGroup { tapes: 1, m: 1, h: HGroup::Affine(2) }).expand(1 << 20).is_err());
    }
}
