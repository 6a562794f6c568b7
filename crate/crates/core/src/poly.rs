//! Sparse multivariate polynomials with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::powerseries::LaurentSeries;
use crate::rational::{self, Rational};

pub type Exponent = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

pub fn total_degree(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn new(nvars: usize, terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length must equal nvars");
            p.add_term(e, c);
        }
        p
    }

    pub fn monomial(exponent: Exponent, coeff: Rational) -> Self {
        let nvars = exponent.len();
        Poly::new(nvars, [(exponent, coeff)])
    }

    /// `x_i^k` (0-based `i`).
    pub fn var_pow(nvars: usize, i: usize, k: u32) -> Self {
        let mut e = vec![0; nvars];
        e[i] = k;
        Poly::monomial(e, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Poly::monomial(vec![0; nvars], c)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total_degree(e)).max()
    }

    /// Least total degree (the m-adic order), `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| total_degree(e)).min()
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn check_vars(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch { left: self.nvars, right: other.nvars });
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_vars(other)?;
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        Ok(p)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, q: &Rational) -> Poly {
        Poly::new(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), c * q)))
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_vars(other)?;
        let mut p = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        Ok(p)
    }

    /// Homogeneous part of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly::new(
            self.nvars,
            self.terms.iter().filter(|(e, _)| total_degree(e) == d).map(|(e, c)| (e.clone(), c.clone())),
        )
    }

    /// Image under `x_j ↦ t^{weights[j]}`, an exact finite sum.
    pub fn substitute(&self, weights: &[i64], precision: i64) -> Result<LaurentSeries> {
        if weights.len() != self.nvars {
            return Err(Error::VariableCountMismatch { left: self.nvars, right: weights.len() });
        }
        let terms = self.terms.iter().map(|(e, c)| {
            let w: i64 = e.iter().zip(weights).map(|(&a, &n)| a as i64 * n).sum();
            (w, c.clone())
        });
        Ok(LaurentSeries::new(terms, precision))
    }

    /// Largest weighted degree under `x_j ↦ weights[j]`.
    pub fn max_weight(&self, weights: &[i64]) -> Option<i64> {
        self.terms.keys().map(|e| e.iter().zip(weights).map(|(&a, &n)| a as i64 * n).sum()).max()
    }

    /// Parses e.g. `"x1^4 - x2*x3"` or `"3/2*x1x2^2 + 7"` in `nvars` variables.
    pub fn parse(text: &str, nvars: usize) -> Result<Poly> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() || compact == "0" {
            return Ok(Poly::zero(nvars));
        }
        let mut p = Poly::zero(nvars);
        let bytes = compact.as_bytes();
        let mut start = 0;
        for i in 1..=bytes.len() {
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
                let (e, c) = parse_term(&compact[start..i], nvars)?;
                p.add_term(e, c);
                start = i;
            }
        }
        Ok(p)
    }
}

fn parse_term(term: &str, nvars: usize) -> Result<(Exponent, Rational)> {
    let bad = |why: &str| Error::Parse(format!("invalid polynomial term `{term}`: {why}"));
    let (sign, rest) = match term.as_bytes().first() {
        Some(b'-') => (-Rational::one(), &term[1..]),
        Some(b'+') => (Rational::one(), &term[1..]),
        _ => (Rational::one(), term),
    };
    let split = rest.find('x').unwrap_or(rest.len());
    let coeff_text = rest[..split].trim_end_matches('*');
    let coeff = if coeff_text.is_empty() {
        if split == rest.len() {
            return Err(bad("empty"));
        }
        Rational::one()
    } else {
        rational::parse(coeff_text)?
    };
    let mut e = vec![0u32; nvars];
    let mono = &rest[split..];
    for factor in mono.split('x').skip(1) {
        let factor = factor.trim_end_matches('*');
        let (var, pow) = match factor.split_once('^') {
            Some((v, p)) => (v, p.trim_start_matches('{').trim_end_matches('}')),
            None => (factor, "1"),
        };
        let var = var.trim_start_matches('_').trim_start_matches('{').trim_end_matches('}');
        let idx: usize = var.parse().map_err(|_| bad("variable must be x1..xn"))?;
        if idx == 0 || idx > nvars {
            return Err(bad("variable index out of range"));
        }
        let pow: u32 = pow.parse().map_err(|_| bad("bad exponent"))?;
        e[idx - 1] += pow;
    }
    Ok((e, sign * coeff))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest degree first, lexicographically largest first within a degree.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| (total_degree(b.0), b.0).cmp(&(total_degree(a.0), a.0)));
        for (i, (e, c)) in terms.into_iter().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            let mag = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(j, &a)| if a == 1 { format!("x{}", j + 1) } else { format!("x{}^{a}", j + 1) })
                .collect();
            match (vars.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{}", rational::format(&mag))?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{}*{}", rational::format(&mag), vars.join("*"))?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    nvars: usize,
    terms: Vec<(Exponent, String)>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), rational::format(c))).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        let mut p = Poly::zero(raw.nvars);
        for (e, c) in raw.terms {
            if e.len() != raw.nvars {
                return Err(serde::de::Error::custom("exponent length differs from nvars"));
            }
            p.add_term(e, rational::parse(&c).map_err(serde::de::Error::custom)?);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn parse_display_round_trip() {
        let p = Poly::parse("x1^4 - x2*x3", 3).unwrap();
        assert_eq!(p.to_string(), "x1^4 - x2*x3");
        assert_eq!(Poly::parse(&p.to_string(), 3).unwrap(), p);
        let q = Poly::parse("3/2*x1x2^2 + 7 - x3", 3).unwrap();
        assert_eq!(q.coeff(&[1, 2, 0]), Rational::new(3.into(), 2.into()));
        assert_eq!(q.coeff(&[0, 0, 0]), int(7));
        assert_eq!(Poly::parse("2x_1^{3}x_3", 3).unwrap(), Poly::monomial(vec![3, 0, 1], int(2)));
        assert!(Poly::parse("x4", 3).is_err());
        assert!(Poly::parse("x1^", 3).is_err());
    }

    #[test]
    fn arithmetic() {
        let a = Poly::parse("x1 + x2", 2).unwrap();
        let b = Poly::parse("x1 - x2", 2).unwrap();
        assert_eq!(a.mul(&b).unwrap(), Poly::parse("x1^2 - x2^2", 2).unwrap());
        assert!(a.sub(&a).unwrap().is_zero());
        assert_eq!(a.mul(&Poly::zero(3)), Err(Error::VariableCountMismatch { left: 2, right: 3 }));
        let c = Poly::parse("x1^3 + x1*x2", 2).unwrap();
        assert_eq!((c.degree(), c.order()), (Some(3), Some(2)));
    }

    #[test]
    fn substitution() {
        let f = Poly::parse("x1^4 - x2*x3", 3).unwrap();
        assert!(f.substitute(&[4, 7, 9], 40).unwrap().is_zero());
        let g = Poly::parse("x1^2*x2", 3).unwrap();
        assert_eq!(g.substitute(&[4, 7, 9], 40).unwrap(), LaurentSeries::t_pow(15, 40));
    }

    #[test]
    fn json_form() {
        let p = Poly::parse("x1^4 - 1/2*x2*x3", 3).unwrap();
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v, serde_json::json!({"nvars": 3, "terms": [[[0, 1, 1], "-1/2"], [[4, 0, 0], "1"]]}));
        assert_eq!(serde_json::from_value::<Poly>(v).unwrap(), p);
    }
}
