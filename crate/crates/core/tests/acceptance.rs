//! Acceptance checks, one PASS/FAIL line per criterion. Runs as a plain
//! binary so every line is printed even when an earlier criterion fails.

use std::cell::Cell;
use std::process::ExitCode;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use curve_canonical::apolarity::{self, ArtinOptions, Convention};
use curve_canonical::fracideal::{self, FractionalIdeal};
use curve_canonical::pfaffian::{self, SkewEntries};
use curve_canonical::poly::Poly;
use curve_canonical::powerseries::{default_precision, LaurentSeries};
use curve_canonical::rational::int;
use curve_canonical::reference;
use curve_canonical::{CurveRing, Semigroup, ValueSet};

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn ring(gens: &[i64]) -> Result<CurveRing, String> {
    CurveRing::from_generators(gens).map_err(|e| e.to_string())
}

fn deep_hf() -> Vec<i64> {
    let mut hf = vec![1, 3];
    hf.extend([4; 23]);
    hf.extend([2, 1]);
    hf
}

fn new_runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn semigroups(max_gens: usize, max_gen: i64) -> impl Strategy<Value = Semigroup> {
    prop::collection::vec(2..=max_gen, 1..=max_gens).prop_filter_map("gcd 1", |g| Semigroup::new(&g).ok())
}

fn three_generated() -> impl Strategy<Value = Semigroup> {
    (3i64..=12, 4i64..=20, 5i64..=25).prop_filter_map("three minimal generators", |(a, b, c)| {
        Semigroup::new(&[a, b, c]).ok().filter(|s| s.embedding_dimension() == 3)
    })
}

fn binomial2(n: i64) -> i64 {
    n * (n - 1) / 2
}

fn c1() -> Outcome {
    let i = ring(&[4, 7, 9])?.invariants().map_err(|e| e.to_string())?;
    ensure((i.e0, i.c, i.delta, i.mu) == (4, 11, 6, 12), format!("{i:?}"))?;
    Ok(format!("e0={} c={} delta={} mu={}", i.e0, i.c, i.delta, i.mu))
}

fn c2() -> Outcome {
    let w = ring(&[4, 7, 9])?.canonical_value_set();
    ensure(w == ValueSet::new(vec![-11, -7, -6, -4, -3, -2], 0), format!("{w:?}"))?;
    Ok(format!("sporadic {:?}, tail {}", w.sporadic(), w.tail()))
}

fn c3() -> Outcome {
    let (mu, basis) = ring(&[4, 7, 9])?.milnor_via_differentials().map_err(|e| e.to_string())?;
    ensure(basis == [-11, -7, -6, -4, -3, -2, 0, 1, 2, 4, 5, 9] && mu == 12, format!("{basis:?}"))?;
    Ok(format!("{basis:?}"))
}

fn c4() -> Outcome {
    let r = ring(&[4, 7, 9])?;
    let p = default_precision(&r);
    let shifted = fracideal::shift_canonical(&r, 15);
    let ideal = fracideal::standard_basis(&r, &[LaurentSeries::t_pow(4, p), LaurentSeries::t_pow(9, p)])
        .map_err(|e| e.to_string())?;
    ensure(shifted.ideal.values() == ideal.values(), "value sets differ")?;
    Ok(format!("V = {:?} ∪ [{}, ∞)", ideal.values().sporadic(), ideal.values().tail()))
}

fn c5() -> Outcome {
    let r = ring(&[4, 7, 9])?;
    let h = pfaffian::herzog_presentation(&r).map_err(|e| e.to_string())?;
    let want = reference::parse_all(&["x1^4 - x2*x3", "x2^3 - x1^3*x3", "x3^2 - x1*x2^2"]).unwrap();
    let same = h.f.len() == 3 && want.iter().all(|g| h.f.iter().any(|f| f == g || *f == g.neg()));
    ensure(same, format!("{:?}", h.f.iter().map(|f| f.to_string()).collect::<Vec<_>>()))?;
    Ok(h.f.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", "))
}

fn c6() -> Outcome {
    let r = ring(&[4, 7, 9])?;
    let q = fracideal::quotient_report(&r, &fracideal::shift_canonical(&r, 111).ideal).map_err(|e| e.to_string())?;
    ensure(q.length == 99 && q.socle_degree == 26 && q.hf == deep_hf() && q.gorenstein(), format!("{q:?}"))?;
    Ok(format!("length {}, socle degree {}, Gorenstein", q.length, q.socle_degree))
}

fn c7() -> Outcome {
    let gens = reference::artin_479_generators();
    let opts = ArtinOptions { modp_check: true, ..Default::default() };
    let a = apolarity::artin_analysis(&gens, 3, &opts).map_err(|e| e.to_string())?;
    let hf: Vec<i64> = a.hf.iter().map(|&h| h as i64).collect();
    ensure(a.length == 99 && a.socle_degree == 26 && hf == deep_hf() && a.socle_dim == 1, format!("{a:?}"))?;
    Ok(format!("length {}, socle degree {}, socle dimension {}", a.length, a.socle_degree, a.socle_dim))
}

fn c8() -> Outcome {
    let gens = reference::artin_479_generators();
    let printed = reference::published_dual_generator_479();
    let err = |e: curve_canonical::Error| e.to_string();
    let by_contraction = apolarity::annihilates(&gens, &printed, Convention::Contraction).map_err(err)?;
    let by_differentiation = apolarity::annihilates(&gens, &printed, Convention::Differentiation).map_err(err)?;
    ensure(by_contraction || by_differentiation, "not annihilated under either convention")?;
    ensure(printed.degree() == Some(26) && printed.num_terms() == 28, "unexpected shape")?;
    let in_perp = if by_contraction {
        apolarity::in_perp_space(&gens, &printed, 26).map_err(err)?
    } else {
        apolarity::in_perp_space(&gens, &apolarity::differentiation_to_contraction(&printed), 26).map_err(err)?
    };
    ensure(in_perp, "not in the degree-≤26 perp space")?;
    let dual = apolarity::dual_socle_generator(&gens, 26, 3).map_err(err)?;
    ensure(dual.perp_dim == 99, format!("perp dimension {}", dual.perp_dim))?;
    Ok(format!(
        "contraction {by_contraction}, differentiation {by_differentiation}, in perp space (dim {})",
        dual.perp_dim
    ))
}

fn c9() -> Outcome {
    let r = ring(&[4, 7, 9])?;
    let entries = SkewEntries { a23: Poly::var_pow(3, 0, 2), ..SkewEntries::zero() };
    let pc = pfaffian::canonical_from_pfaffian(&r, &entries).map_err(|e| e.to_string())?;
    ensure(pc.ideal.values() == &r.canonical_value_set().shift(26), format!("{:?}", pc.ideal.values()))?;
    ensure(pc.certificate.canonical, "certificate false")?;
    Ok(format!("V = 26 + W, colength {}", pc.colength))
}

fn c10() -> Outcome {
    let r = ring(&[5, 6, 7])?;
    let m = FractionalIdeal::monomial(&r, &[5, 6, 7]).map_err(|e| e.to_string())?;
    let cert = fracideal::is_canonical(&r, &m).map_err(|e| e.to_string())?;
    ensure(!cert.canonical && r.pseudo_frobenius().len() == 2, format!("{cert:?}"))?;
    Ok(format!("canonical {}, pseudo-Frobenius {:?}", cert.canonical, r.pseudo_frobenius()))
}

#[allow(clippy::int_plus_one)]
fn c11() -> Outcome {
    let mut runner = new_runner(200);
    let count = Cell::new(0usize);
    let result = runner.run(&semigroups(5, 40), |s| {
        count.set(count.get() + 1);
        let r = CurveRing::new(s);
        let i = r.invariants().unwrap();
        let h = r.hilbert_data().unwrap();
        let n = r.embedding_dimension() as i64;
        prop_assert!(i.e0 - 1 <= i.e1 && i.e1 <= i.delta && i.delta <= i.mu && i.mu == 2 * i.delta);
        prop_assert!(i.e1 <= binomial2(i.e0) - binomial2(n - 1));
        if i.delta > 0 {
            prop_assert!(i.delta + 1 <= i.c && i.c <= 2 * i.delta);
        }
        let sym = r.is_symmetric().unwrap();
        prop_assert_eq!(i.c == 2 * i.delta, i.cm_type == 1);
        prop_assert_eq!(i.cm_type == 1, sym);
        prop_assert!(h.pn <= i.e0 - 1);
        Ok(())
    });
    result.map_err(|e| e.to_string())?;
    let count = count.get();
    ensure(count >= 200, format!("only {count} cases"))?;
    Ok(format!("{count} semigroups, zero failures"))
}

fn c12() -> Outcome {
    let mut runner = new_runner(50);
    let count = Cell::new(0usize);
    let zero_rings = Cell::new(0usize);
    let result = runner.run(&(semigroups(4, 25), 0i64..30), |(s, extra)| {
        let r = CurveRing::new(s);
        let (c, e0) = (r.conductor(), r.multiplicity());
        let w = r.canonical_value_set();
        let s = (c + extra..).find(|&s| w.shift(s).is_subset(&r.value_set())).unwrap();
        count.set(count.get() + 1);
        let delta = r.delta();
        let sc = fracideal::shift_canonical(&r, s);
        prop_assert!(sc.integral);
        prop_assert_eq!(sc.colength, Some(s - 2 * delta));
        prop_assert!(fracideal::is_canonical(&r, &sc.ideal).unwrap().canonical);
        if s == 2 * delta {
            // Symmetric Γ at s = c: t^s ω = R and the quotient is the zero ring.
            prop_assert_eq!(fracideal::quotient_report(&r, &sc.ideal), Err(curve_canonical::Error::UnitIdeal));
            zero_rings.set(zero_rings.get() + 1);
        } else {
            let q = fracideal::quotient_report(&r, &sc.ideal).unwrap();
            prop_assert_eq!(q.length, s - 2 * delta);
            prop_assert!(q.gorenstein());
        }
        let t = (s + e0 - 1) / e0;
        if w.shift(t * e0).is_subset(&r.value_set()) {
            let f = fracideal::canideal_formulas(&r, t).unwrap();
            prop_assert_eq!(f.colength, t * e0 - 2 * delta);
            prop_assert_eq!(f.colength, f.expected_colength);
        }
        Ok(())
    });
    result.map_err(|e| e.to_string())?;
    Ok(format!(
        "{} (semigroup, shift) pairs ({} with s = 2δ, quotient zero), zero failures",
        count.get(),
        zero_rings.get()
    ))
}

fn c13() -> Outcome {
    // Ideals inside x₁R: generators are integer combinations of t^{e₀+g}, g ∈ Γ.
    let input =
        (semigroups(3, 15), prop::collection::vec(prop::collection::vec((0usize..40, -2i64..=2), 1..4), 1..4), 1i64..4);
    let mut runner = new_runner(50);
    let count = Cell::new(0usize);
    let result = runner.run(&input, |(s, gens, n)| {
        let r = CurveRing::new(s);
        let e0 = r.multiplicity();
        let p = default_precision(&r) + 2 * e0;
        let members: Vec<i64> = (0..).filter(|&g| r.contains(g)).take(40).collect();
        let series: Vec<LaurentSeries> = gens
            .iter()
            .map(|terms| LaurentSeries::new(terms.iter().map(|&(k, a)| (e0 + members[k], int(a))), p))
            .filter(|z| !z.is_zero())
            .collect();
        prop_assume!(!series.is_empty());
        let ideal = fracideal::standard_basis(&r, &series).unwrap();
        count.set(count.get() + 1);
        prop_assert!(fracideal::push_lemma_check(&r, &ideal, n).unwrap());
        Ok(())
    });
    result.map_err(|e| e.to_string())?;

    let mut runner = new_runner(20);
    let bounds = Cell::new(0usize);
    let result = runner.run(&three_generated(), |s| {
        let r = CurveRing::new(s);
        let i = r.invariants().unwrap();
        let f = fracideal::canideal_formulas(&r, 4 * i.mu + 1).unwrap();
        bounds.set(bounds.get() + 1);
        prop_assert!(f.bound_ok);
        prop_assert!(f.socle_degree <= f.bound_ii.unwrap());
        prop_assert!(f.socle_degree <= f.global_bound.unwrap());
        prop_assert_eq!(f.global_bound, Some(i.delta * (4 * i.e0 + 3)));
        Ok(())
    });
    result.map_err(|e| e.to_string())?;
    Ok(format!("push lemma on {} ideals, socle bounds on {} semigroups, zero failures", count.get(), bounds.get()))
}

fn c14() -> Outcome {
    let mut lines = Vec::new();
    for gens in [&[4i64, 7, 9][..], &[3, 5], &[5, 6, 7], &[3, 7, 8]] {
        let r = ring(gens)?;
        let i = r.invariants().map_err(|e| e.to_string())?;
        let t = 4 * i.mu + 1;
        let bound = i.socle_degree_bound(t);
        let mut degrees = std::collections::BTreeSet::new();
        for seed in 0..5u64 {
            let s = fracideal::sample_generic_socle(&r, t, 4, seed).map_err(|e| e.to_string())?;
            for rec in s.trials.iter().chain([&s.monomial]) {
                ensure(rec.length == i.ell, format!("{gens:?} seed {seed}: length {} ≠ ℓ = {}", rec.length, i.ell))?;
                ensure(rec.gorenstein, format!("{gens:?} seed {seed}: not Gorenstein"))?;
                ensure(
                    rec.socle_degree <= bound,
                    format!("{gens:?} seed {seed}: socle degree {} > {bound}", rec.socle_degree),
                )?;
                degrees.insert(rec.socle_degree);
            }
        }
        ensure(i.ell == i.e0 * t - 2 * i.delta, "ℓ formula")?;
        lines.push(format!("{gens:?}: ℓ={} socle degrees {degrees:?} ≤ {bound}", i.ell));
    }
    Ok(lines.join("; "))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 14] = [
        ("1 invariants of ⟨4,7,9⟩", c1),
        ("2 canonical value set of ⟨4,7,9⟩", c2),
        ("3 differential basis of ω/dR", c3),
        ("4 t^15·ω = (t^4, t^9)", c4),
        ("5 Herzog equations of ⟨4,7,9⟩", c5),
        ("6 quotient by t^111·ω", c6),
        ("7 Artinian analysis of the polynomial presentation", c7),
        ("8 printed inverse system", c8),
        ("9 Pfaffian canonical ideal with a23 = x1^2", c9),
        ("10 maximal ideal of ⟨5,6,7⟩", c10),
        ("11 invariant inequalities on 200 semigroups", c11),
        ("12 colength and canonicity of shifted ω", c12),
        ("13 push lemma and socle-degree bounds", c13),
        ("14 sampled socle degrees at t = 4μ+1", c14),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let start = std::time::Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name} ({secs:.2}s): {detail}"),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {name} ({secs:.2}s): {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", 14 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
