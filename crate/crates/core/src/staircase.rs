//! Monomial ideals of `K[x, y]` held in canonical staircase form.
//!
//! A two-variable monomial ideal is determined by its minimal generators.
//! Sorted by strictly decreasing `x`-exponent they have strictly increasing
//! `y`-exponent, and that sorted list is the canonical form used for
//! equality, hashing and the textual cache key.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::StaircaseError;

/// The monomial `x^a y^b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub a: u32,
    pub b: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { a: 0, b: 0 };
    pub const X: Monomial = Monomial { a: 1, b: 0 };
    pub const Y: Monomial = Monomial { a: 0, b: 1 };

    pub const fn new(a: u32, b: u32) -> Self {
        Monomial { a, b }
    }

    pub fn degree(self) -> u64 {
        u64::from(self.a) + u64::from(self.b)
    }

    /// `self | other`.
    pub fn divides(self, other: Monomial) -> bool {
        self.a <= other.a && self.b <= other.b
    }

    pub fn try_mul(self, other: Monomial) -> Result<Monomial, StaircaseError> {
        match (self.a.checked_add(other.a), self.b.checked_add(other.b)) {
            (Some(a), Some(b)) => Ok(Monomial { a, b }),
            _ => Err(StaircaseError::ExponentOverflow),
        }
    }

    pub fn try_pow(self, n: u32) -> Result<Monomial, StaircaseError> {
        match (self.a.checked_mul(n), self.b.checked_mul(n)) {
            (Some(a), Some(b)) => Ok(Monomial { a, b }),
            _ => Err(StaircaseError::ExponentOverflow),
        }
    }

    pub fn lcm(self, other: Monomial) -> Monomial {
        Monomial::new(self.a.max(other.a), self.b.max(other.b))
    }

    pub fn gcd(self, other: Monomial) -> Monomial {
        Monomial::new(self.a.min(other.a), self.b.min(other.b))
    }

    /// The monomial `self / m` with negative exponents clamped to zero,
    /// i.e. the generator of `(self) : (m)`.
    pub fn saturating_div(self, m: Monomial) -> Monomial {
        Monomial::new(self.a.saturating_sub(m.a), self.b.saturating_sub(m.b))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::with_capacity(2);
        for (var, e) in [("x", self.a), ("y", self.b)] {
            match e {
                0 => {}
                1 => parts.push(var.to_string()),
                _ => parts.push(format!("{var}^{e}")),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

impl FromStr for Monomial {
    type Err = StaircaseError;

    /// Parses the printed form: `1`, `x`, `x^3*y^2`, `xy^4`, `x^2 y`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || StaircaseError::BadMonomial(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "1" {
            return Ok(Monomial::ONE);
        }
        if t.is_empty() {
            return Err(bad());
        }
        let mut m = Monomial::ONE;
        let mut seen_x = false;
        let mut seen_y = false;
        let bytes = t.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let var = bytes[i];
            i += 1;
            let mut e = 1u32;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                e = t[start..i].parse().map_err(|_| bad())?;
            }
            match var {
                b'x' if !seen_x && !seen_y => {
                    seen_x = true;
                    m.a = e;
                }
                b'y' if !seen_y => {
                    seen_y = true;
                    m.b = e;
                }
                _ => return Err(bad()),
            }
            if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
                if i == bytes.len() {
                    return Err(bad());
                }
            }
        }
        Ok(m)
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parameters `(d; a_1, ..., a_k)` of the lex-segment ideal
/// `(x^d, x^{d-1} y^{a_1}, ..., x^{d-k} y^{a_k})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LexSpec {
    d: u32,
    a: Vec<u32>,
}

impl LexSpec {
    pub fn new(d: u32, a: Vec<u32>) -> Result<Self, StaircaseError> {
        if d == 0 {
            return Err(StaircaseError::InvalidLexSpec("d must be positive".into()));
        }
        if a.len() > d as usize {
            return Err(StaircaseError::InvalidLexSpec(format!("k = {} exceeds d = {d}", a.len())));
        }
        if a.first() == Some(&0) {
            return Err(StaircaseError::InvalidLexSpec("a_1 must be at least 1".into()));
        }
        if a.windows(2).any(|w| w[0] >= w[1]) {
            return Err(StaircaseError::InvalidLexSpec("a-sequence must be strictly increasing".into()));
        }
        Ok(LexSpec { d, a })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn k(&self) -> u32 {
        self.a.len() as u32
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    pub fn to_ideal(&self) -> MonomialIdeal2 {
        MonomialIdeal2::from_lex_spec(self)
    }
}

impl fmt::Display for LexSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a.is_empty() {
            return write!(f, "lex({};)", self.d);
        }
        let a: Vec<String> = self.a.iter().map(u32::to_string).collect();
        write!(f, "lex({}; {})", self.d, a.join(","))
    }
}

/// A monomial ideal of `K[x, y]` in canonical staircase form.
///
/// Generators are sorted by strictly decreasing `a` (and therefore strictly
/// increasing `b`); no generator divides another. The zero ideal has no
/// generators and the unit ideal is `[1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialIdeal2 {
    gens: Vec<Monomial>,
}

/// `I = x^p y^q · L` with the generators of `L` coprime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommonFactor {
    pub x: u32,
    pub y: u32,
    pub cofactor: MonomialIdeal2,
}

impl CommonFactor {
    pub fn monomial(&self) -> Monomial {
        Monomial::new(self.x, self.y)
    }
}

impl MonomialIdeal2 {
    /// Canonical minimal form of the ideal generated by `gens`.
    pub fn normalize<I: IntoIterator<Item = Monomial>>(gens: I) -> Self {
        let mut v: Vec<Monomial> = gens.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        // ascending a, then ascending b: keep a monomial only if its b is
        // below every b kept so far
        let mut kept: Vec<Monomial> = Vec::with_capacity(v.len());
        for m in v {
            if kept.last().is_none_or(|last| m.b < last.b) {
                kept.push(m);
            }
        }
        kept.reverse();
        MonomialIdeal2 { gens: kept }
    }

    /// Builds from generators that are already canonical.
    fn from_canonical(gens: Vec<Monomial>) -> Self {
        debug_assert!(gens.windows(2).all(|w| w[0].a > w[1].a && w[0].b < w[1].b));
        MonomialIdeal2 { gens }
    }

    pub fn zero() -> Self {
        MonomialIdeal2 { gens: Vec::new() }
    }

    pub fn unit() -> Self {
        MonomialIdeal2 { gens: vec![Monomial::ONE] }
    }

    /// `M = (x, y)`.
    pub fn maximal() -> Self {
        MonomialIdeal2::from_canonical(vec![Monomial::X, Monomial::Y])
    }

    pub fn principal(m: Monomial) -> Self {
        MonomialIdeal2 { gens: vec![m] }
    }

    pub fn from_lex_spec(spec: &LexSpec) -> Self {
        let d = spec.d;
        let gens = std::iter::once(Monomial::new(d, 0))
            .chain(spec.a.iter().enumerate().map(|(i, &b)| Monomial::new(d - 1 - i as u32, b)))
            .collect();
        MonomialIdeal2::from_canonical(gens)
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first() == Some(&Monomial::ONE)
    }

    pub fn contains(&self, m: Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `other ⊆ self`.
    pub fn includes(&self, other: &MonomialIdeal2) -> bool {
        other.gens.iter().all(|&g| self.contains(g))
    }

    pub fn try_multiply(&self, other: &MonomialIdeal2) -> Result<Self, StaircaseError> {
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        let mut prods = Vec::with_capacity(self.gens.len() * other.gens.len());
        for &g in &self.gens {
            for &h in &other.gens {
                prods.push(g.try_mul(h)?);
            }
        }
        Ok(MonomialIdeal2::normalize(prods))
    }

    /// `I · J`. Panics on exponent overflow; see [`Self::try_multiply`].
    pub fn multiply(&self, other: &MonomialIdeal2) -> Self {
        self.try_multiply(other).expect("exponent overflow in monomial product")
    }

    /// Multiplies every generator by `m`.
    pub fn try_shift(&self, m: Monomial) -> Result<Self, StaircaseError> {
        let gens = self.gens.iter().map(|g| g.try_mul(m)).collect::<Result<_, _>>()?;
        Ok(MonomialIdeal2::from_canonical(gens))
    }

    pub fn shift(&self, m: Monomial) -> Self {
        self.try_shift(m).expect("exponent overflow in monomial shift")
    }

    pub fn try_power(&self, n: u32) -> Result<Self, StaircaseError> {
        let mut result = MonomialIdeal2::unit();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_multiply(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_multiply(&base)?;
            }
        }
        Ok(result)
    }

    /// `I^n`, with `I^0 = (1)`.
    pub fn power(&self, n: u32) -> Self {
        self.try_power(n).expect("exponent overflow in monomial power")
    }

    /// `I : (m)`.
    pub fn colon_monomial(&self, m: Monomial) -> Self {
        MonomialIdeal2::normalize(self.gens.iter().map(|g| g.saturating_div(m)))
    }

    /// `I : J`, the largest monomial ideal `Q` with `Q·J ⊆ I`.
    pub fn colon(&self, other: &MonomialIdeal2) -> Result<Self, StaircaseError> {
        let (first, rest) = other.gens.split_first().ok_or(StaircaseError::ColonByZero)?;
        let mut acc = self.colon_monomial(*first);
        for &m in rest {
            if acc.is_zero() {
                break;
            }
            acc = acc.intersect(&self.colon_monomial(m));
        }
        Ok(acc)
    }

    /// `I ∩ J`, merged column by column along the two staircases.
    pub fn intersect(&self, other: &MonomialIdeal2) -> Self {
        if self.is_zero() || other.is_zero() {
            return MonomialIdeal2::zero();
        }
        // ascending-a views
        let p: Vec<Monomial> = self.gens.iter().rev().copied().collect();
        let q: Vec<Monomial> = other.gens.iter().rev().copied().collect();
        let mut breaks: Vec<u32> = p.iter().chain(q.iter()).map(|m| m.a).collect();
        breaks.sort_unstable();
        breaks.dedup();
        let (mut i, mut j) = (0usize, 0usize);
        let mut out: Vec<Monomial> = Vec::new();
        for t in breaks {
            while i + 1 < p.len() && p[i + 1].a <= t {
                i += 1;
            }
            while j + 1 < q.len() && q[j + 1].a <= t {
                j += 1;
            }
            if p[i].a > t || q[j].a > t {
                continue;
            }
            let h = p[i].b.max(q[j].b);
            if out.last().is_none_or(|last| h < last.b) {
                out.push(Monomial::new(t, h));
            }
        }
        out.reverse();
        MonomialIdeal2::from_canonical(out)
    }

    /// `I + J`.
    pub fn sum(&self, other: &MonomialIdeal2) -> Self {
        MonomialIdeal2::normalize(self.gens.iter().chain(other.gens.iter()).copied())
    }

    /// Number of minimal generators.
    pub fn mu(&self) -> usize {
        self.gens.len()
    }

    /// Least total degree of a generator.
    pub fn ord(&self) -> Result<u64, StaircaseError> {
        self.gens.iter().map(|g| g.degree()).min().ok_or(StaircaseError::ZeroIdeal("ord"))
    }

    /// Contains a pure power of `x` and a pure power of `y` (includes the
    /// unit ideal).
    pub fn has_finite_colength(&self) -> bool {
        match (self.gens.first(), self.gens.last()) {
            (Some(first), Some(last)) => first.b == 0 && last.a == 0,
            _ => false,
        }
    }

    /// Proper ideal of finite colength.
    pub fn is_m_primary(&self) -> bool {
        self.has_finite_colength() && !self.is_unit()
    }

    /// 0 for the zero ideal, 2 when of finite colength, 1 otherwise. The
    /// unit ideal is reported as 2.
    pub fn height(&self) -> u32 {
        if self.is_zero() {
            0
        } else if self.has_finite_colength() {
            2
        } else {
            1
        }
    }

    pub fn split_common_factor(&self) -> Result<CommonFactor, StaircaseError> {
        let (first, last) = match (self.gens.first(), self.gens.last()) {
            (Some(f), Some(l)) => (*f, *l),
            _ => return Err(StaircaseError::ZeroIdeal("split_common_factor")),
        };
        // canonical order: min a at the end, min b at the front
        let z = Monomial::new(last.a, first.b);
        let gens = self.gens.iter().map(|g| g.saturating_div(z)).collect();
        Ok(CommonFactor { x: z.a, y: z.b, cofactor: MonomialIdeal2::from_canonical(gens) })
    }

    /// The lex parameters, when the generators are
    /// `x^d, x^{d-1}y^{a_1}, ..., x^{d-k}y^{a_k}`.
    pub fn is_lex_segment(&self) -> Option<LexSpec> {
        let first = *self.gens.first()?;
        if first.b != 0 || first.a == 0 {
            return None;
        }
        let consecutive = self.gens.iter().enumerate().all(|(i, g)| u64::from(g.a) + i as u64 == u64::from(first.a));
        if !consecutive {
            return None;
        }
        let a = self.gens[1..].iter().map(|g| g.b).collect();
        Some(LexSpec { d: first.a, a })
    }

    /// `λ(R/I)`, summed column by column under the staircase.
    pub fn colength(&self) -> Result<u64, StaircaseError> {
        if !self.has_finite_colength() {
            return Err(StaircaseError::InfiniteLength);
        }
        let mut total: u64 = 0;
        // pairs (g, h) with g.a > h.a: columns h.a .. g.a have height h.b
        for w in self.gens.windows(2) {
            let (right, left) = (w[0], w[1]);
            let width = u64::from(right.a - left.a);
            total = width
                .checked_mul(u64::from(left.b))
                .and_then(|c| total.checked_add(c))
                .ok_or(StaircaseError::ExponentOverflow)?;
        }
        Ok(total)
    }

    /// `λ(I/J)` for `J ⊆ I`.
    ///
    /// Both ideals are divided by the common factor of `I`; the quotient of
    /// cofactors has finite length exactly when `J`'s cofactor has finite
    /// colength.
    pub fn quotient_length(&self, sub: &MonomialIdeal2) -> Result<u64, StaircaseError> {
        if !self.includes(sub) {
            return Err(StaircaseError::NotContained);
        }
        if self.is_zero() {
            return Ok(0);
        }
        let z = self.split_common_factor()?.monomial();
        let big = self.colon_monomial(z);
        let small = sub.colon_monomial(z);
        Ok(small.colength()? - big.colength()?)
    }
}

impl fmt::Display for MonomialIdeal2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(Monomial::to_string).collect();
        write!(f, "mono({})", parts.join(", "))
    }
}

/// Memoized powers `I^0, I^1, ...` of one ideal.
///
/// Readers share the table; each new power is computed once under the
/// write lock from the largest cached one.
#[derive(Debug)]
pub struct PowerTable {
    powers: RwLock<Vec<Arc<MonomialIdeal2>>>,
}

impl PowerTable {
    pub fn new(base: MonomialIdeal2) -> Self {
        PowerTable { powers: RwLock::new(vec![Arc::new(MonomialIdeal2::unit()), Arc::new(base)]) }
    }

    pub fn base(&self) -> Arc<MonomialIdeal2> {
        self.get(1)
    }

    pub fn get(&self, n: u32) -> Arc<MonomialIdeal2> {
        let n = n as usize;
        if let Some(p) = self.powers.read().expect("power table poisoned").get(n) {
            return Arc::clone(p);
        }
        let mut table = self.powers.write().expect("power table poisoned");
        while table.len() <= n {
            let next = table[table.len() - 1].multiply(&table[1]);
            table.push(Arc::new(next));
        }
        Arc::clone(&table[n])
    }
}

impl Clone for PowerTable {
    fn clone(&self) -> Self {
        let table = self.powers.read().expect("power table poisoned").clone();
        PowerTable { powers: RwLock::new(table) }
    }
}
