//! Apolarity: the contraction pairing, Artinian quotients of the local ring
//! `k[[x₁,…,x_n]]` and Macaulay dual generators.
//!
//! Quotients are computed in `k[x]/m^{D+1}` with columns ordered by degree,
//! so echelon pivots are lowest-degree terms and the pivot count in degree
//! `d` is the dimension of initial forms of the ideal in that degree.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, FLarge, Field, SparseVec};
use crate::poly::{total_degree, Exponent, Poly};
use crate::rational::{int, Rational};

/// How a polynomial in `x` acts on one in the dual variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `x^α ∘ x^β = x^{β−α}`.
    Contraction,
    /// `x^α` acts as `∂^α`.
    Differentiation,
}

fn falling(b: u32, a: u32) -> Rational {
    (0..a).fold(Rational::one(), |acc, i| acc * int((b - i) as i64))
}

/// `g ∘ F` under `convention`.
pub fn act(g: &Poly, f: &Poly, convention: Convention) -> Result<Poly> {
    if g.nvars() != f.nvars() {
        return Err(Error::VariableCountMismatch { left: g.nvars(), right: f.nvars() });
    }
    let mut terms = Vec::new();
    for (alpha, ga) in g.terms() {
        for (beta, fb) in f.terms() {
            if alpha.iter().zip(beta).all(|(a, b)| a <= b) {
                let e: Exponent = beta.iter().zip(alpha).map(|(b, a)| b - a).collect();
                let mut c = ga * fb;
                if convention == Convention::Differentiation {
                    for (&a, &b) in alpha.iter().zip(beta) {
                        c *= falling(b, a);
                    }
                }
                terms.push((e, c));
            }
        }
    }
    Ok(Poly::new(f.nvars(), terms))
}

pub fn contract(g: &Poly, f: &Poly) -> Result<Poly> {
    act(g, f, Convention::Contraction)
}

/// Whether `g ∘ F = 0` for every `g` in `gens`.
pub fn annihilates(gens: &[Poly], f: &Poly, convention: Convention) -> Result<bool> {
    for g in gens {
        if !act(g, f, convention)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rewrites a polynomial from the differentiation convention to contraction:
/// the coefficient of `x^β` is multiplied by `β!`.
pub fn differentiation_to_contraction(f: &Poly) -> Poly {
    Poly::new(f.nvars(), f.terms().map(|(e, c)| (e.clone(), e.iter().fold(c.clone(), |acc, &b| acc * falling(b, b)))))
}

/// All exponents of total degree `d` in `n` variables, lexicographically
/// descending.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Exponent> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArtinAnalysis {
    pub length: usize,
    pub hf: Vec<usize>,
    pub socle_degree: usize,
    pub socle_dim: usize,
    pub truncation_degree: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis_monomials: Option<Vec<Exponent>>,
    /// Whether the same computation over `ℤ/p`, `p = 2⁶² − 57`, agreed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modp_agrees: Option<bool>,
}

impl ArtinAnalysis {
    pub fn gorenstein(&self) -> bool {
        self.socle_dim == 1
    }
}

#[derive(Clone, Debug, Default)]
pub struct ArtinOptions {
    /// Expected socle degree; truncation starts just above it.
    pub socle_hint: Option<u32>,
    /// Largest truncation degree tried. Defaults to four times the sum of
    /// the generator degrees.
    pub cap: Option<u32>,
    pub modp_check: bool,
    pub keep_basis: bool,
}

/// `k[x]/(J + m^{D+1})` in echelon form.
struct Truncated<F: Field> {
    degree: u32,
    monos: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
    echelon: Echelon<F>,
}

impl<F: Field> Truncated<F> {
    fn build(gens: &[Poly], nvars: usize, degree: u32, convert: &impl Fn(&Rational) -> Result<F>) -> Result<Self> {
        let monos: Vec<Exponent> = (0..=degree).flat_map(|d| monomials_of_degree(nvars, d)).collect();
        let index: HashMap<Exponent, usize> = monos.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut echelon = Echelon::new();
        for g in gens {
            let Some(ord) = g.order() else { continue };
            if ord > degree {
                continue;
            }
            let terms: Vec<(&Exponent, F)> =
                g.terms().map(|(e, c)| convert(c).map(|c| (e, c))).collect::<Result<_>>()?;
            for shift in monos.iter().take_while(|b| total_degree(b) + ord <= degree) {
                let mut row = SparseVec::new();
                for (e, c) in &terms {
                    let m: Exponent = e.iter().zip(shift).map(|(a, b)| a + b).collect();
                    if let Some(&col) = index.get(&m) {
                        row.insert(col, c.clone());
                    }
                }
                echelon.insert(row);
            }
        }
        Ok(Truncated { degree, monos, index, echelon })
    }

    fn hf(&self) -> Vec<usize> {
        let mut hf = vec![0usize; self.degree as usize + 1];
        for (col, m) in self.monos.iter().enumerate() {
            if !self.echelon.has_pivot(col) {
                hf[total_degree(m) as usize] += 1;
            }
        }
        hf
    }

    fn standard(&self, below: u32) -> Vec<usize> {
        (0..self.monos.len()).filter(|&c| total_degree(&self.monos[c]) < below && !self.echelon.has_pivot(c)).collect()
    }

    fn normal_form(&self, e: &Exponent) -> SparseVec<F> {
        match self.index.get(e) {
            Some(&col) => self.echelon.reduce(SparseVec::from([(col, F::one())])),
            None => SparseVec::new(),
        }
    }

    fn socle_dim(&self, standard: &[usize]) -> usize {
        let n = self.monos[0].len();
        let pos: HashMap<usize, usize> = standard.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let images: Vec<SparseVec<F>> = standard
            .iter()
            .map(|&c| {
                let mut img = SparseVec::new();
                for v in 0..n {
                    let mut e = self.monos[c].clone();
                    e[v] += 1;
                    for (col, x) in self.normal_form(&e) {
                        img.insert(v * standard.len() + pos[&col], x);
                    }
                }
                img
            })
            .collect();
        linalg::kernel(&images).len()
    }
}

/// Result of one truncation: the stable layer `d₀` if it was reached.
fn analyse_at<F: Field>(t: &Truncated<F>) -> Option<(Vec<usize>, usize)> {
    let hf = t.hf();
    let d0 = hf.iter().position(|&h| h == 0)?;
    Some((hf[..d0].to_vec(), d0))
}

fn summarize<F: Field>(t: &Truncated<F>, hf: Vec<usize>, d0: usize, keep_basis: bool) -> Result<ArtinAnalysis> {
    if d0 == 0 {
        return Err(Error::UnitIdeal);
    }
    let standard = t.standard(d0 as u32);
    Ok(ArtinAnalysis {
        length: hf.iter().sum(),
        socle_degree: d0 - 1,
        socle_dim: t.socle_dim(&standard),
        truncation_degree: t.degree,
        basis_monomials: keep_basis.then(|| standard.iter().map(|&c| t.monos[c].clone()).collect()),
        modp_agrees: None,
        hf,
    })
}

fn rational_id(q: &Rational) -> Result<Rational> {
    Ok(q.clone())
}

fn to_fp(q: &Rational) -> Result<FLarge> {
    FLarge::from_rational(q).ok_or_else(|| Error::InternalInconsistency("denominator divisible by p".into()))
}

fn check_inputs(gens: &[Poly], nvars: usize) -> Result<()> {
    if let Some(g) = gens.iter().find(|g| g.nvars() != nvars) {
        return Err(Error::VariableCountMismatch { left: nvars, right: g.nvars() });
    }
    Ok(())
}

/// Finds the least truncation at which the quotient stabilizes and returns it.
fn stable_truncation(
    gens: &[Poly],
    nvars: usize,
    opts: &ArtinOptions,
) -> Result<(Truncated<Rational>, Vec<usize>, usize)> {
    check_inputs(gens, nvars)?;
    let degree_sum: u32 = gens.iter().filter_map(|g| g.degree()).sum();
    let cap = opts.cap.unwrap_or(4 * degree_sum.max(1));
    let max_deg = gens.iter().filter_map(|g| g.degree()).max().unwrap_or(0);
    let mut d = opts.socle_hint.map_or(max_deg + 1, |s| s + 1).min(cap);
    loop {
        let t = Truncated::build(gens, nvars, d, &rational_id)?;
        // hf vanishing at d₀ ≤ D gives m^{d₀} ⊆ J + m^{d₀+1}, so m^{d₀} ⊆ J by Nakayama.
        if let Some((hf, d0)) = analyse_at(&t) {
            return Ok((t, hf, d0));
        }
        if d >= cap {
            return Err(Error::NotFiniteColength { cap, partial_hf: t.hf().iter().map(|&h| h as u64).collect() });
        }
        d = (d + d / 2).max(d + 1).min(cap);
    }
}

/// Length, Hilbert function, socle degree and socle dimension of the
/// quotient of the local ring by `(gens)`.
pub fn artin_analysis(gens: &[Poly], nvars: usize, opts: &ArtinOptions) -> Result<ArtinAnalysis> {
    let (t, hf, d0) = stable_truncation(gens, nvars, opts)?;
    let mut report = summarize(&t, hf, d0, opts.keep_basis)?;
    if opts.modp_check {
        let tp = Truncated::build(gens, nvars, t.degree, &to_fp)?;
        let agrees = match analyse_at(&tp) {
            Some((hfp, d0p)) => {
                let rp = summarize(&tp, hfp, d0p, false)?;
                (rp.length, &rp.hf, rp.socle_dim) == (report.length, &report.hf, report.socle_dim)
            }
            None => false,
        };
        if !agrees {
            return Err(Error::InternalInconsistency("rational and mod-p ranks disagree".into()));
        }
        report.modp_agrees = Some(true);
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualGenerator {
    pub generator: Poly,
    pub socle_degree: usize,
    pub length: usize,
    /// Dimension of `{F : deg F ≤ s, g ∘ F = 0 for all generators g}`.
    pub perp_dim: usize,
}

/// Macaulay dual generator of a Gorenstein quotient, in the contraction
/// convention.
///
/// With `u` the standard monomial of top degree `s`, the functional
/// `φ(f) = coefficient of u in NF(f)` vanishes on the ideal and is nonzero on
/// the socle, so `F = Σ_{|β| ≤ s} φ(x^β) x^β` generates the inverse system.
pub fn dual_socle_generator(gens: &[Poly], s: usize, nvars: usize) -> Result<DualGenerator> {
    let opts = ArtinOptions { socle_hint: Some(s as u32), ..Default::default() };
    let (t, hf, d0) = stable_truncation(gens, nvars, &opts)?;
    let report = summarize(&t, hf, d0, false)?;
    if !report.gorenstein() {
        return Err(Error::NotGorenstein { socle_dim: report.socle_dim });
    }
    if report.socle_degree != s {
        return Err(Error::DimensionMismatch(format!("socle degree is {}, not {s}", report.socle_degree)));
    }
    let top = t.standard(d0 as u32).into_iter().find(|&c| total_degree(&t.monos[c]) as usize == s).unwrap();
    let mut terms = Vec::new();
    for m in t.monos.iter().take_while(|m| total_degree(m) as usize <= s) {
        if let Some(c) = t.normal_form(m).get(&top) {
            terms.push((m.clone(), c.clone()));
        }
    }
    let f = Poly::new(nvars, terms);
    let lead = f.homogeneous_part(s as u32).terms().map(|(e, c)| (e.clone(), c.clone())).max().map(|(_, c)| c);
    let f = f.scale(&lead.expect("top-degree part is nonzero").recip());

    let perp_dim = perp_dimension(gens, s, nvars)?;
    if perp_dim != report.length {
        return Err(Error::DimensionMismatch(format!(
            "perp space has dimension {perp_dim}, quotient has length {}",
            report.length
        )));
    }
    if !annihilates(gens, &f, Convention::Contraction)? || f.degree() != Some(s as u32) {
        return Err(Error::InternalInconsistency("dual generator fails its defining equations".into()));
    }
    Ok(DualGenerator { generator: f, socle_degree: s, length: report.length, perp_dim })
}

/// Column index of each unknown and the equation rows.
type PerpSystem<F> = (HashMap<Exponent, usize>, Vec<SparseVec<F>>);

/// Equations `coefficient of x^γ in g ∘ F = 0` on the coefficients of
/// `F = Σ_{|β| ≤ s} c_β x^β`, one row per generator and `γ`.
fn perp_equations<F: Field>(
    gens: &[Poly],
    s: usize,
    nvars: usize,
    convert: &impl Fn(&Rational) -> Result<F>,
) -> Result<PerpSystem<F>> {
    let monos: Vec<Exponent> = (0..=s as u32).flat_map(|d| monomials_of_degree(nvars, d)).collect();
    let index: HashMap<Exponent, usize> = monos.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let mut rows = Vec::new();
    for g in gens {
        let terms: Vec<(&Exponent, F)> = g.terms().map(|(e, c)| convert(c).map(|c| (e, c))).collect::<Result<_>>()?;
        for gamma in &monos {
            let mut row = SparseVec::new();
            for (alpha, c) in &terms {
                let m: Exponent = gamma.iter().zip(alpha.iter()).map(|(a, b)| a + b).collect();
                if let Some(&col) = index.get(&m) {
                    row.insert(col, c.clone());
                }
            }
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    Ok((index, rows))
}

/// Dimension of the degree-`≤ s` inverse system of `(gens)`.
pub fn perp_dimension(gens: &[Poly], s: usize, nvars: usize) -> Result<usize> {
    check_inputs(gens, nvars)?;
    let (index, rows) = perp_equations(gens, s, nvars, &rational_id)?;
    Ok(index.len() - linalg::rank(rows))
}

/// Dimension of `{g ∘ F : g ∈ k[x]}`, the length of `k[x]/Ann(F)`.
pub fn inverse_system_dimension(f: &Poly, convention: Convention) -> Result<usize> {
    let n = f.nvars();
    let mut divisors: Vec<Exponent> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (beta, _) in f.terms() {
        let mut stack = vec![(0usize, Vec::with_capacity(n))];
        while let Some((i, prefix)) = stack.pop() {
            if i == n {
                if seen.insert(prefix.clone()) {
                    divisors.push(prefix);
                }
                continue;
            }
            for a in 0..=beta[i] {
                let mut p = prefix.clone();
                p.push(a);
                stack.push((i + 1, p));
            }
        }
    }
    let mut columns: HashMap<Exponent, usize> = HashMap::new();
    let mut echelon = Echelon::<Rational>::new();
    for alpha in divisors {
        let image = act(&Poly::monomial(alpha, Rational::one()), f, convention)?;
        let mut row = SparseVec::new();
        for (e, c) in image.terms() {
            let next = columns.len();
            let col = *columns.entry(e.clone()).or_insert(next);
            row.insert(col, c.clone());
        }
        echelon.insert(row);
    }
    Ok(echelon.rank())
}

/// Rank of the perp equations over `ℤ/p`, for cross-checking.
pub fn perp_dimension_modp(gens: &[Poly], s: usize, nvars: usize) -> Result<usize> {
    check_inputs(gens, nvars)?;
    let (index, rows) = perp_equations(gens, s, nvars, &to_fp)?;
    Ok(index.len() - linalg::rank(rows))
}

/// Whether the coefficient vector of `f` satisfies the degree-`≤ s` perp
/// equations of `(gens)`, evaluated row by row.
pub fn in_perp_space(gens: &[Poly], f: &Poly, s: usize) -> Result<bool> {
    check_inputs(gens, f.nvars())?;
    if f.degree().is_some_and(|d| d as usize > s) {
        return Ok(false);
    }
    let (index, rows) = perp_equations(gens, s, f.nvars(), &rational_id)?;
    let coeffs: HashMap<usize, &Rational> = f.terms().map(|(e, c)| (index[e], c)).collect();
    Ok(rows
        .iter()
        .all(|row| row.iter().filter_map(|(col, a)| coeffs.get(col).map(|&c| a * c)).sum::<Rational>().is_zero()))
}
