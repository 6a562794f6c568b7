//! Truncated Laurent series in one variable `t` with exact rational
//! coefficients.
//!
//! A series carries a precision `P`: every coefficient of exponent `< P` is
//! known exactly, nothing is known at or beyond `P`. Differentials `f(t) dt`
//! are represented by their coefficient series `f`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::semigroup::Semigroup;

/// Precision given to series built in the context of a semigroup with
/// conductor `c`, relative to their smallest exponent.
pub fn default_precision(s: &Semigroup) -> i64 {
    2 * s.conductor() + 64
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    coeffs: BTreeMap<i64, Rational>,
    precision: i64,
}

impl LaurentSeries {
    pub fn new(terms: impl IntoIterator<Item = (i64, Rational)>, precision: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            if e < precision {
                *coeffs.entry(e).or_insert_with(Rational::zero) += c;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentSeries { coeffs, precision }
    }

    pub fn zero(precision: i64) -> Self {
        LaurentSeries { coeffs: BTreeMap::new(), precision }
    }

    pub fn monomial(coeff: Rational, exponent: i64, precision: i64) -> Self {
        LaurentSeries::new([(exponent, coeff)], precision)
    }

    /// `t^exponent` known up to `precision`.
    pub fn t_pow(exponent: i64, precision: i64) -> Self {
        LaurentSeries::monomial(Rational::one(), exponent, precision)
    }

    /// `Σ c·t^e` over integer pairs `(e, c)`.
    pub fn from_ints(terms: &[(i64, i64)], precision: i64) -> Self {
        LaurentSeries::new(terms.iter().map(|&(e, c)| (e, rational::int(c))), precision)
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Least exponent with a nonzero coefficient; `None` stands for `+∞`.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn leading(&self) -> Option<(i64, &Rational)> {
        self.coeffs.iter().next().map(|(&e, c)| (e, c))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn coeff(&self, e: i64) -> Result<Rational> {
        if e >= self.precision {
            return Err(Error::PrecisionExhausted { needed: e + 1, available: self.precision });
        }
        Ok(self.coeffs.get(&e).cloned().unwrap_or_else(Rational::zero))
    }

    /// Drops everything at exponent `≥ p`.
    pub fn truncate(&self, p: i64) -> Self {
        let precision = self.precision.min(p);
        LaurentSeries { coeffs: self.coeffs.range(..precision).map(|(&e, c)| (e, c.clone())).collect(), precision }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
            precision: self.precision + k,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return LaurentSeries::zero(self.precision);
        }
        LaurentSeries { coeffs: self.coeffs.iter().map(|(&e, c)| (e, c * q)).collect(), precision: self.precision }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.axpy(&Rational::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(&-Rational::one(), other)
    }

    /// `self + q·other`.
    pub fn axpy(&self, q: &Rational, other: &Self) -> Self {
        let precision = self.precision.min(other.precision);
        let mut coeffs: BTreeMap<i64, Rational> =
            self.coeffs.range(..precision).map(|(&e, c)| (e, c.clone())).collect();
        for (&e, c) in other.coeffs.range(..precision) {
            let entry = coeffs.entry(e).or_insert_with(Rational::zero);
            *entry += q * c;
            if entry.is_zero() {
                coeffs.remove(&e);
            }
        }
        LaurentSeries { coeffs, precision }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Exact product up to `min(P₁ + v₂, P₂ + v₁)`, where a zero factor
    /// counts with valuation equal to its precision.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let v1 = self.valuation().unwrap_or(self.precision);
        let v2 = other.valuation().unwrap_or(other.precision);
        let precision = (self.precision + v2).min(other.precision + v1);
        if self.is_zero() || other.is_zero() {
            // An undetermined zero factor leaves no representable term.
            return Err(Error::PrecisionExhausted { needed: v1 + v2 + 1, available: precision });
        }
        let mut coeffs: BTreeMap<i64, Rational> = BTreeMap::new();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in other.coeffs.range(..precision - e1) {
                *coeffs.entry(e1 + e2).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(LaurentSeries { coeffs, precision })
    }

    /// Coefficient of `t^-1`.
    pub fn residue(&self) -> Result<Rational> {
        self.coeff(-1)
    }

    /// Formal derivative `d/dt`.
    pub fn derivative(&self) -> Self {
        LaurentSeries::new(self.coeffs.iter().map(|(&e, c)| (e - 1, c * rational::int(e))), self.precision - 1)
    }

    /// Parses the text form, e.g. `"3/2*t^-11 + t^4 (O(t^30))"`. Without an
    /// `O(t^P)` suffix the series gets `default_precision`.
    pub fn parse(text: &str, default_precision: i64) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let (body, precision) = split_precision(&compact)?;
        let precision = precision.unwrap_or(default_precision);
        let mut terms = Vec::new();
        for term in split_terms(body) {
            terms.push(parse_term(term)?);
        }
        Ok(LaurentSeries::new(terms, precision))
    }
}

fn split_precision(s: &str) -> Result<(&str, Option<i64>)> {
    let Some(pos) = s.find("O(") else {
        return Ok((s, None));
    };
    let mut body = &s[..pos];
    body = body.strip_suffix('(').unwrap_or(body);
    body = body.strip_suffix('+').unwrap_or(body);
    let rest = &s[pos + 2..];
    let inner = rest.split(')').next().ok_or_else(|| Error::Parse(format!("unterminated O(...) in `{s}`")))?;
    let exp = inner.strip_prefix("t^").ok_or_else(|| Error::Parse(format!("expected O(t^P), got O({inner})")))?;
    let p = exp.parse::<i64>().map_err(|_| Error::Parse(format!("invalid precision `{exp}`")))?;
    Ok((body, Some(p)))
}

fn split_terms(s: &str) -> Vec<&str> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
            out.push(&s[start..i]);
            start = i;
        }
    }
    if start < s.len() {
        out.push(&s[start..]);
    }
    out
}

fn parse_term(term: &str) -> Result<(i64, Rational)> {
    let bad = || Error::Parse(format!("invalid series term `{term}`"));
    let (sign, rest) = match term.as_bytes().first() {
        Some(b'-') => (-Rational::one(), &term[1..]),
        Some(b'+') => (Rational::one(), &term[1..]),
        _ => (Rational::one(), term),
    };
    let (coeff_text, mono) = match rest.find('t') {
        Some(i) => (&rest[..i], Some(&rest[i + 1..])),
        None => (rest, None),
    };
    let coeff_text = coeff_text.strip_suffix('*').unwrap_or(coeff_text);
    let coeff = if coeff_text.is_empty() {
        if mono.is_none() {
            return Err(bad());
        }
        Rational::one()
    } else {
        rational::parse(coeff_text)?
    };
    let exp = match mono {
        None => 0,
        Some("") => 1,
        Some(e) => e.strip_prefix('^').and_then(|e| e.parse::<i64>().ok()).ok_or_else(bad)?,
    };
    Ok((exp, sign * coeff))
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (i, (&e, c)) in self.coeffs.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match (e, unit) {
                (0, _) => write!(f, "{}", rational::format(&mag))?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{}*t", rational::format(&mag))?,
                (_, true) => write!(f, "t^{e}")?,
                (_, false) => write!(f, "{}*t^{e}", rational::format(&mag))?,
            }
        }
        write!(f, " (O(t^{}))", self.precision)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    terms: Vec<(i64, String)>,
    precision: i64,
}

impl Serialize for LaurentSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            terms: self.coeffs.iter().map(|(&e, c)| (e, rational::format(c))).collect(),
            precision: self.precision,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SeriesJson::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for (e, c) in raw.terms {
            terms.push((e, rational::parse(&c).map_err(serde::de::Error::custom)?));
        }
        Ok(LaurentSeries::new(terms, raw.precision))
    }
}

/// Whether the differential `alpha · dt` is a regular (Rosenlicht) differential
/// on the monomial branch `k[[t^Γ]]`: `res(F·alpha) = 0` for every `F` in the
/// ring. Checking `F = t^a` for `a ∈ Γ` suffices by linearity.
pub fn is_regular_differential(s: &Semigroup, alpha: &LaurentSeries) -> Result<bool> {
    let Some(v) = alpha.valuation() else {
        return Ok(true);
    };
    if v >= 0 {
        return Ok(true);
    }
    // res(t^a · alpha) is the coefficient of alpha at -1 - a; only a ≤ -v - 1 matter.
    for a in 0..=(-v - 1) {
        if s.contains(a) && !alpha.coeff(-1 - a)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
