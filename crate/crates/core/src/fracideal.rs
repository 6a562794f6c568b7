//! Fractional ideals of `R = k[[t^Γ]]` inside `k((t))`.
//!
//! An ideal generated by series `g₁, …, g_m` with least valuation `v` contains
//! `t^{v+c}·k[[t]]`, so everything is decided modulo `t^N` with `N = v + c`.
//! Below `N` the ideal is a finite-dimensional space, kept as an echelon basis
//! with one element per value; its leading exponents are the value set.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::curvering::CurveRing;
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, SparseVec};
use crate::powerseries::LaurentSeries;
use crate::rational::{self, Rational};
use crate::value_set::ValueSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalIdeal {
    generators: Vec<LaurentSeries>,
    // Interreduced: leading coefficient 1, no other term at a key exponent.
    basis: BTreeMap<i64, LaurentSeries>,
    window: i64,
    values: ValueSet,
}

impl Serialize for FractionalIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            values: &'a ValueSet,
            generators: &'a [LaurentSeries],
        }
        Repr { values: &self.values, generators: &self.generators }.serialize(s)
    }
}

/// Valuation standard basis of the ideal generated by `gens`.
pub fn standard_basis(ring: &CurveRing, gens: &[LaurentSeries]) -> Result<FractionalIdeal> {
    let nonzero: Vec<&LaurentSeries> = gens.iter().filter(|g| !g.is_zero()).collect();
    let vmin = nonzero.iter().filter_map(|g| g.valuation()).min().ok_or(Error::ZeroIdeal)?;
    let window = vmin + ring.conductor();
    if let Some(short) = nonzero.iter().map(|g| g.precision()).filter(|&p| p < window).min() {
        return Err(Error::PrecisionExhausted { needed: window, available: short });
    }

    let mut basis: BTreeMap<i64, LaurentSeries> = BTreeMap::new();
    let mut queue: Vec<LaurentSeries> = nonzero.iter().map(|g| g.truncate(window)).collect();
    while let Some(mut f) = queue.pop() {
        while let Some((v, lead)) = f.leading() {
            match basis.get(&v) {
                Some(b) => f = f.axpy(&-lead.clone(), b),
                None => break,
            }
        }
        let Some((v, lead)) = f.leading() else { continue };
        let f = f.scale(&lead.recip());
        for &n in ring.generators() {
            let g = f.shift(n).truncate(window);
            if !g.is_zero() {
                queue.push(g);
            }
        }
        basis.insert(v, f);
    }
    interreduce(&mut basis);
    let values = ValueSet::new(basis.keys().copied().collect(), window);
    Ok(FractionalIdeal { generators: gens.to_vec(), basis, window, values })
}

fn interreduce(basis: &mut BTreeMap<i64, LaurentSeries>) {
    let keys: Vec<i64> = basis.keys().copied().collect();
    for &v in keys.iter().rev() {
        let mut f = basis[&v].clone();
        let hits: Vec<(i64, Rational)> =
            f.terms().filter(|&(e, _)| e > v && basis.contains_key(&e)).map(|(e, c)| (e, c.clone())).collect();
        for (e, c) in hits {
            f = f.axpy(&-c, &basis[&e]);
        }
        basis.insert(v, f);
    }
}

impl FractionalIdeal {
    /// The ideal generated by `t^e` for each `e` in `exponents`.
    pub fn monomial(ring: &CurveRing, exponents: &[i64]) -> Result<Self> {
        let vmin = *exponents.iter().min().ok_or(Error::ZeroIdeal)?;
        let window = vmin + ring.conductor();
        let generators = exponents.iter().map(|&e| LaurentSeries::t_pow(e, window.max(e + 1))).collect();
        let values = exponents.iter().map(|&e| ring.value_set().shift(e)).reduce(|a, b| a.union(&b)).unwrap();
        let basis = values.members_below(window).map(|v| (v, LaurentSeries::t_pow(v, window))).collect();
        Ok(FractionalIdeal { generators, basis, window, values })
    }

    /// The monomial ideal whose value set is the Γ-stable set `values`.
    pub fn from_value_set(ring: &CurveRing, values: &ValueSet) -> Result<Self> {
        FractionalIdeal::monomial(ring, &values.minimal_generators(ring))
    }

    pub fn generators(&self) -> &[LaurentSeries] {
        &self.generators
    }

    pub fn values(&self) -> &ValueSet {
        &self.values
    }

    /// Exponent `N` with `t^N k[[t]] ⊆ I`, below which the basis is exact.
    pub fn window(&self) -> i64 {
        self.window
    }

    /// One element per value below the window, with leading coefficient 1.
    pub fn standard_basis(&self) -> impl Iterator<Item = &LaurentSeries> {
        self.basis.values()
    }

    /// Spanned by monomials.
    pub fn is_monomial(&self) -> bool {
        self.basis.values().all(|b| b.is_monomial())
    }

    /// Whether `I ⊆ R`.
    pub fn is_integral(&self, ring: &CurveRing) -> bool {
        self.window >= ring.conductor() && self.basis.values().all(|b| b.terms().all(|(e, _)| ring.contains(e)))
    }

    /// `t^k · I`.
    pub fn shift(&self, k: i64) -> Self {
        FractionalIdeal {
            generators: self.generators.iter().map(|g| g.shift(k)).collect(),
            basis: self.basis.iter().map(|(&v, b)| (v + k, b.shift(k))).collect(),
            window: self.window + k,
            values: self.values.shift(k),
        }
    }

    /// `z · I` for a nonzero series `z`.
    pub fn mul_series(&self, ring: &CurveRing, z: &LaurentSeries) -> Result<Self> {
        let gens = self.generators.iter().filter(|g| !g.is_zero()).map(|g| z.mul(g)).collect::<Result<Vec<_>>>()?;
        standard_basis(ring, &gens)
    }

    /// Normal form modulo `I` and `t^N`: every term at a value of `I` is
    /// cancelled.
    pub fn normal_form(&self, f: &LaurentSeries) -> LaurentSeries {
        let mut cur = f.truncate(self.window);
        let mut out = Vec::new();
        while let Some((e, c)) = cur.leading().map(|(e, c)| (e, c.clone())) {
            match self.basis.get(&e) {
                Some(b) => cur = cur.axpy(&-c, b),
                None => {
                    out.push((e, c.clone()));
                    cur = cur.axpy(&-c, &LaurentSeries::t_pow(e, self.window));
                }
            }
        }
        LaurentSeries::new(out, self.window)
    }
}

/// `|V(J) ∖ V(I)|`, the length of `J/I` when `I ⊆ J`.
pub fn colength(i: &FractionalIdeal, j: &FractionalIdeal) -> Result<i64> {
    if !i.values.is_subset(&j.values) {
        return Err(Error::NotContained);
    }
    Ok(j.values.difference_count(&i.values) as i64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub basis_values: Vec<i64>,
    pub length: i64,
    pub socle_values: Vec<i64>,
    pub cm_type_of_quotient: usize,
    pub socle_degree: i64,
    pub hf: Vec<i64>,
}

impl QuotientReport {
    pub fn gorenstein(&self) -> bool {
        self.cm_type_of_quotient == 1
    }
}

/// Length, socle and m-adic Hilbert function of `R/I` for an integral ideal.
pub fn quotient_report(ring: &CurveRing, ideal: &FractionalIdeal) -> Result<QuotientReport> {
    if !ideal.is_integral(ring) {
        return Err(Error::InfiniteColength);
    }
    let basis_values: Vec<i64> = (0..ideal.window).filter(|&a| ring.contains(a) && !ideal.values.contains(a)).collect();
    if basis_values.is_empty() {
        return Err(Error::UnitIdeal);
    }
    let report = if ideal.is_monomial() {
        monomial_quotient(ring, ideal, basis_values)
    } else {
        linear_quotient(ring, ideal, basis_values)
    };
    check_report(&report)?;
    Ok(report)
}

fn monomial_quotient(ring: &CurveRing, ideal: &FractionalIdeal, basis_values: Vec<i64>) -> QuotientReport {
    let socle_values: Vec<i64> = basis_values
        .iter()
        .copied()
        .filter(|&a| ring.generators().iter().all(|&n| ideal.values.contains(a + n)))
        .collect();
    let orders: Vec<i64> = basis_values.iter().map(|&a| ring.order(a).unwrap()).collect();
    let top = *orders.iter().max().unwrap();
    let mut hf = vec![0i64; top as usize + 1];
    for o in orders {
        hf[o as usize] += 1;
    }
    QuotientReport {
        length: basis_values.len() as i64,
        cm_type_of_quotient: socle_values.len(),
        socle_degree: top,
        basis_values,
        socle_values,
        hf,
    }
}

fn linear_quotient(ring: &CurveRing, ideal: &FractionalIdeal, basis_values: Vec<i64>) -> QuotientReport {
    let index: BTreeMap<i64, usize> = basis_values.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let coords = |f: &LaurentSeries| -> SparseVec<Rational> {
        ideal.normal_form(f).terms().map(|(e, c)| (index[&e], c.clone())).collect()
    };
    let w = ideal.window;

    // Socle: kernel of f ↦ (t^{n₁}f, …, t^{n_k}f) on the basis of R/I.
    let k = basis_values.len();
    let images: Vec<SparseVec<Rational>> = basis_values
        .iter()
        .map(|&a| {
            let mut img = SparseVec::new();
            for (i, &n) in ring.generators().iter().enumerate() {
                for (col, x) in coords(&LaurentSeries::t_pow(a + n, w)) {
                    img.insert(i * k + col, x);
                }
            }
            img
        })
        .collect();
    let mut socle = Echelon::new();
    for v in linalg::kernel(&images) {
        socle.insert(v);
    }
    let socle_values: Vec<i64> = socle.pivots().map(|i| basis_values[i]).collect();

    // hf[d] = dim (m^d + I)/(m^{d+1} + I), from ranks of the images of m^d.
    let mut by_order: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    for a in (0..w).filter(|&a| ring.contains(a)) {
        by_order.entry(ring.order(a).unwrap()).or_default().push(a);
    }
    let mut span = Echelon::new();
    let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
    for (&d, monos) in by_order.iter().rev() {
        for &a in monos {
            span.insert(coords(&LaurentSeries::t_pow(a, w)));
        }
        ranks.insert(d, span.rank());
    }
    let top = ranks.iter().filter(|&(_, &r)| r > 0).map(|(&d, _)| d).max().unwrap_or(0);
    let rank_at = |d: i64| ranks.range(d..).next().map_or(0, |(_, &r)| r) as i64;
    let hf: Vec<i64> = (0..=top).map(|d| rank_at(d) - rank_at(d + 1)).collect();
    let socle_degree = (0..=top).rev().find(|&d| hf[d as usize] > 0).unwrap_or(0);
    QuotientReport {
        length: k as i64,
        cm_type_of_quotient: socle_values.len(),
        socle_degree,
        hf: hf[..=socle_degree as usize].to_vec(),
        basis_values,
        socle_values,
    }
}

fn check_report(r: &QuotientReport) -> Result<()> {
    let total: i64 = r.hf.iter().sum();
    let ok = r.length == r.basis_values.len() as i64
        && total == r.length
        && r.hf.len() == r.socle_degree as usize + 1
        && r.hf.last().is_some_and(|&h| h >= 1)
        && r.cm_type_of_quotient >= 1;
    if ok {
        Ok(())
    } else {
        Err(Error::InternalInconsistency(format!("quotient report fails its invariants: {r:?}")))
    }
}

/// The canonical module `ω`, generated by `t^w` for the minimal generators
/// `w` of its value set.
pub fn canonical_module(ring: &CurveRing) -> FractionalIdeal {
    FractionalIdeal::from_value_set(ring, &ring.canonical_value_set()).expect("ω is nonzero")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftedCanonical {
    pub shift: i64,
    pub ideal: FractionalIdeal,
    pub integral: bool,
    /// `length(R/t^s ω)` when the ideal is integral.
    pub colength: Option<i64>,
}

/// `t^s · ω`, with its value set `s + W`.
pub fn shift_canonical(ring: &CurveRing, s: i64) -> ShiftedCanonical {
    let ideal = canonical_module(ring).shift(s);
    let integral = ideal.values.is_subset(&ring.value_set());
    let colength = integral.then(|| ring.value_set().difference_count(&ideal.values) as i64);
    ShiftedCanonical { shift: s, ideal, integral, colength }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicityCertificate {
    pub canonical: bool,
    /// `s` with `V(I) = s + W`, when such a translate exists.
    pub shift: Option<i64>,
    pub translate_test: bool,
    pub push_test: bool,
    /// `k` such that `x₁^k I ⊆ R`; the push test examines `R/x₁^{k+1} I`.
    pub scaling_power: i64,
    pub push_socle_values: Vec<i64>,
    pub monomial: bool,
    /// Which test decided the answer.
    pub decided_by: &'static str,
}

/// Decides whether `I` is a canonical ideal, i.e. isomorphic to `ω`.
///
/// Two tests run. The translate test compares `V(I)` with `s + W`; it is
/// exact for monomial ideals and a necessary condition in general. The push
/// test scales `I` into `R`, multiplies once more by `x₁ = t^{e₀}` and checks
/// that the quotient is Gorenstein.
pub fn is_canonical(ring: &CurveRing, ideal: &FractionalIdeal) -> Result<CanonicityCertificate> {
    let w = ring.canonical_value_set();
    let s = ideal.values.min() + ring.conductor();
    let translate = ideal.values == w.shift(s);

    let e0 = ring.multiplicity();
    let mut k = 0;
    let mut scaled = ideal.clone();
    while !scaled.is_integral(ring) {
        k += 1;
        scaled = ideal.shift(k * e0);
    }
    let pushed = scaled.shift(e0);
    let report = quotient_report(ring, &pushed)?;
    let push = report.gorenstein();
    let monomial = ideal.is_monomial();

    if translate != push && (monomial || push) {
        return Err(Error::TestsDisagree(format!(
            "translate test {translate}, push test {push} (monomial ideal: {monomial})"
        )));
    }
    Ok(CanonicityCertificate {
        canonical: push,
        shift: translate.then_some(s),
        translate_test: translate,
        push_test: push,
        scaling_power: k,
        push_socle_values: report.socle_values,
        monomial,
        decided_by: if monomial || !translate { "both" } else { "push" },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanidealReport {
    pub t: i64,
    pub colength: i64,
    pub expected_colength: i64,
    pub gorenstein: bool,
    pub socle_degree: i64,
    /// `e₀(t − 2μ − 1) + 2δ + e₁`, checked for `t ≥ 4μ + 1`.
    pub bound_ii: Option<i64>,
    /// `δ(4e₀ + 3)`, checked at `t = 4μ + 1`.
    pub global_bound: Option<i64>,
    pub bound_ok: bool,
}

/// Colength and socle degree of `R/x₁^t ω` against the closed formulas.
pub fn canideal_formulas(ring: &CurveRing, t: i64) -> Result<CanidealReport> {
    let inv = ring.invariants()?;
    let s = t * inv.e0;
    let shifted = shift_canonical(ring, s);
    let report = quotient_report(ring, &shifted.ideal)?;
    let deep = 4 * inv.mu + 1;
    let bound_ii = (t >= deep).then(|| inv.socle_degree_bound(t));
    let global_bound = (t == deep).then_some(inv.sigma_upper);
    let bound_ok =
        bound_ii.is_none_or(|b| report.socle_degree <= b) && global_bound.is_none_or(|b| report.socle_degree <= b);
    Ok(CanidealReport {
        t,
        colength: report.length,
        expected_colength: s - 2 * inv.delta,
        gorenstein: report.gorenstein(),
        socle_degree: report.socle_degree,
        bound_ii,
        global_bound,
        bound_ok,
    })
}

/// For `I ⊆ x₁R`, whether `R/I` and `R/x₁ⁿI` are Gorenstein together.
pub fn push_lemma_check(ring: &CurveRing, ideal: &FractionalIdeal, n: i64) -> Result<bool> {
    let e0 = ring.multiplicity();
    if !ideal.shift(-e0).is_integral(ring) {
        return Err(Error::HypothesisViolated("ideal is not contained in x1 R".into()));
    }
    let before = quotient_report(ring, ideal)?.gorenstein();
    let after = quotient_report(ring, &ideal.shift(n * e0))?.gorenstein();
    Ok(before == after)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub z: LaurentSeries,
    pub length: i64,
    pub socle_degree: i64,
    pub gorenstein: bool,
    pub hf: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SocleSample {
    pub t: i64,
    pub seed: u64,
    pub trials: Vec<TrialRecord>,
    pub monomial: TrialRecord,
    pub min_socle_degree: i64,
    pub max_socle_degree: i64,
    pub histogram: BTreeMap<i64, usize>,
    pub lengths_constant: bool,
    /// Least socle degree seen, monomial element included. An upper bound for
    /// the minimum over all canonical ideals of this colength.
    pub sigma_upper_observed: i64,
}

/// Random elements `z ∈ m^t` of valuation `t·e₀` and the quotients `R/zω`.
///
/// Only exponents below `t·e₀ + c` affect `zω`, so `z` is a random integer
/// combination of the monomials of `m^t` in that window.
pub fn sample_generic_socle(ring: &CurveRing, t: i64, trials: usize, seed: u64) -> Result<SocleSample> {
    if t < 1 || trials < 1 {
        return Err(Error::HypothesisViolated("need t >= 1 and trials >= 1".into()));
    }
    let e0 = ring.multiplicity();
    let low = t * e0;
    let high = low + ring.conductor().max(1);
    let exponents: Vec<i64> = (low..high).filter(|&a| ring.order_opt(a).is_some_and(|o| o >= t)).collect();
    let omega = canonical_module(ring);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let run = |z: LaurentSeries| -> Result<TrialRecord> {
        let ideal = omega.mul_series(ring, &z)?;
        let r = quotient_report(ring, &ideal)?;
        Ok(TrialRecord { z, length: r.length, socle_degree: r.socle_degree, gorenstein: r.gorenstein(), hf: r.hf })
    };

    let monomial = run(LaurentSeries::t_pow(low, high))?;
    let mut records = Vec::with_capacity(trials);
    while records.len() < trials {
        let terms: Vec<(i64, Rational)> =
            exponents.iter().map(|&a| (a, rational::int(rng.gen_range(-3..=3)))).collect();
        let z = LaurentSeries::new(terms, high);
        // Superficial elements of degree t have valuation exactly t·e₀.
        if z.valuation() != Some(low) {
            continue;
        }
        records.push(run(z)?);
    }
    let mut histogram = BTreeMap::new();
    for r in &records {
        *histogram.entry(r.socle_degree).or_insert(0) += 1;
    }
    let min = records.iter().map(|r| r.socle_degree).min().unwrap();
    let max = records.iter().map(|r| r.socle_degree).max().unwrap();
    Ok(SocleSample {
        t,
        seed,
        lengths_constant: records.iter().all(|r| r.length == monomial.length),
        sigma_upper_observed: min.min(monomial.socle_degree),
        min_socle_degree: min,
        max_socle_degree: max,
        histogram,
        monomial,
        trials: records,
    })
}
