//! Numerical semigroups: membership, gaps, Apéry sets, pseudo-Frobenius
//! numbers, symmetry and the value set of the canonical module.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
pub use crate::value_set::ValueSet;

/// A numerical semigroup `Γ = ⟨n₁, …, n_k⟩ ⊆ ℕ` with `gcd = 1`.
///
/// Membership is answered from the Apéry set with respect to the
/// multiplicity, which also yields the Frobenius number exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semigroup {
    generators: Vec<i64>,
    redundant: Vec<i64>,
    apery_min: Vec<i64>,
    frobenius: i64,
    gaps: Vec<i64>,
    pf: Vec<i64>,
}

impl Semigroup {
    /// Builds the semigroup generated by `gens`, keeping a minimal generating
    /// set. Redundant inputs are dropped and listed in [`Semigroup::redundant`].
    pub fn new(gens: &[i64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if let Some(&bad) = gens.iter().find(|&&g| g <= 0) {
            return Err(Error::NonPositiveGenerator(bad));
        }
        let gcd = gens.iter().fold(0i64, |acc, &g| acc.gcd(&g));
        if gcd != 1 {
            return Err(Error::GcdNotOne { gcd: gcd as u64 });
        }

        let mut sorted = gens.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut minimal: Vec<i64> = Vec::new();
        let mut redundant = Vec::new();
        for &g in &sorted {
            if representable(g, &minimal) {
                redundant.push(g);
            } else {
                minimal.push(g);
            }
        }
        // Input duplicates are redundant too.
        for g in gens {
            if gens.iter().filter(|&&h| h == *g).count() > 1 && !redundant.contains(g) {
                redundant.push(*g);
            }
        }
        redundant.sort_unstable();

        let apery_min = apery_by_shortest_paths(&minimal);
        let m = minimal[0];
        let frobenius = apery_min.iter().max().copied().unwrap() - m;
        let mut s =
            Semigroup { generators: minimal, redundant, apery_min, frobenius, gaps: Vec::new(), pf: Vec::new() };
        s.gaps = (1..=frobenius).filter(|&a| !s.contains(a)).collect();
        s.pf = if s.gaps.is_empty() {
            vec![-1]
        } else {
            s.gaps.iter().copied().filter(|&g| s.generators.iter().all(|&n| s.contains(g + n))).collect()
        };
        Ok(s)
    }

    /// Minimal generators, ascending.
    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    /// Inputs that were dropped because the others generate them.
    pub fn redundant(&self) -> &[i64] {
        &self.redundant
    }

    /// Smallest nonzero element `n₁`, the multiplicity `e₀` of the ring.
    pub fn multiplicity(&self) -> i64 {
        self.generators[0]
    }

    pub fn embedding_dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn frobenius(&self) -> i64 {
        self.frobenius
    }

    pub fn conductor(&self) -> i64 {
        self.frobenius + 1
    }

    pub fn gaps(&self) -> &[i64] {
        &self.gaps
    }

    /// Number of gaps, the singularity order `δ`.
    pub fn delta(&self) -> i64 {
        self.gaps.len() as i64
    }

    pub fn contains(&self, a: i64) -> bool {
        if a < 0 {
            return false;
        }
        let m = self.multiplicity();
        a >= self.apery_min[a.rem_euclid(m) as usize]
    }

    /// For each residue `i mod m`, the least element of `Γ` congruent to `i`.
    pub fn apery_set(&self, m: i64) -> Result<Vec<i64>> {
        if m <= 0 || !self.contains(m) {
            return Err(Error::NotInSemigroup { value: m });
        }
        let mut out = vec![-1i64; m as usize];
        let mut missing = m as usize;
        let mut a = 0;
        while missing > 0 {
            if self.contains(a) {
                let slot = &mut out[a.rem_euclid(m) as usize];
                if *slot < 0 {
                    *slot = a;
                    missing -= 1;
                }
            }
            a += 1;
        }
        Ok(out)
    }

    /// Gaps `g` with `g + nᵢ ∈ Γ` for every generator; `[-1]` for `Γ = ℕ`.
    pub fn pseudo_frobenius(&self) -> &[i64] {
        &self.pf
    }

    /// Cohen–Macaulay type of the semigroup ring.
    pub fn cm_type(&self) -> usize {
        self.pf.len()
    }

    /// Symmetry, decided three ways (`a ∈ Γ ⇔ F - a ∉ Γ`, `c = 2δ`, type 1).
    pub fn is_symmetric(&self) -> Result<bool> {
        let f = self.frobenius;
        let by_definition = (0..=f).all(|a| self.contains(a) != self.contains(f - a));
        let by_conductor = self.conductor() == 2 * self.delta();
        let by_type = self.cm_type() == 1;
        if by_definition != by_conductor || by_conductor != by_type {
            return Err(Error::InternalInconsistency(format!(
                "symmetry criteria disagree on {:?}: definition {by_definition}, \
                 c = 2δ {by_conductor}, type 1 {by_type}",
                self.generators
            )));
        }
        Ok(by_definition)
    }

    /// Value set `W = ℤ ∖ (−Γ − 1)` of the canonical module of `k[[t^Γ]]`.
    pub fn canonical_value_set(&self) -> ValueSet {
        ValueSet::from_fn(-self.conductor(), 0, |a| !self.contains(-a - 1))
    }

    /// `Γ` itself as a value set.
    pub fn value_set(&self) -> ValueSet {
        ValueSet::from_fn(0, self.conductor(), |a| self.contains(a))
    }
}

/// Whether `g` is a nonnegative combination of `gens` (all smaller than `g`).
fn representable(g: i64, gens: &[i64]) -> bool {
    if gens.is_empty() {
        return false;
    }
    let mut reach = vec![false; g as usize + 1];
    reach[0] = true;
    for a in 1..=g as usize {
        reach[a] = gens.iter().any(|&n| n as usize <= a && reach[a - n as usize]);
    }
    reach[g as usize]
}

/// Least element in each residue class modulo the smallest generator.
fn apery_by_shortest_paths(gens: &[i64]) -> Vec<i64> {
    let m = gens[0];
    let mut dist = vec![i64::MAX; m as usize];
    dist[0] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0i64, 0usize)));
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r] {
            continue;
        }
        for &n in &gens[1..] {
            let next = (r + n as usize) % m as usize;
            if d + n < dist[next] {
                dist[next] = d + n;
                heap.push(Reverse((d + n, next)));
            }
        }
    }
    dist
}

impl Serialize for Semigroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Json<'a> {
            generators: &'a [i64],
            gaps: &'a [i64],
            frobenius: i64,
            conductor: i64,
            pf: &'a [i64],
            #[serde(rename = "type")]
            cm_type: usize,
            #[serde(skip_serializing_if = "<[i64]>::is_empty")]
            redundant: &'a [i64],
        }
        Json {
            generators: &self.generators,
            gaps: &self.gaps,
            frobenius: self.frobenius,
            conductor: self.conductor(),
            pf: &self.pf,
            cm_type: self.cm_type(),
            redundant: &self.redundant,
        }
        .serialize(s)
    }
}

/// Parses `"4,7,9"` or `"4 7 9"`.
pub fn parse_generators(text: &str) -> Result<Vec<i64>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("invalid generator `{t}`"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[i64]) -> Semigroup {
        Semigroup::new(g).unwrap()
    }

    /// Membership by direct search over generator combinations.
    fn brute_member(a: i64, gens: &[i64]) -> bool {
        if a < 0 {
            return false;
        }
        let mut reach = vec![false; a as usize + 1];
        reach[0] = true;
        for x in 1..=a as usize {
            reach[x] = gens.iter().any(|&n| n as usize <= x && reach[x - n as usize]);
        }
        reach[a as usize]
    }

    #[test]
    fn construct_4_7_9() {
        let s = sg(&[4, 7, 9]);
        assert_eq!(s.gaps(), &[1, 2, 3, 5, 6, 10]);
        assert_eq!(s.frobenius(), 10);
        assert_eq!(s.conductor(), 11);
        assert_eq!(s.delta(), 6);
    }

    #[test]
    fn construct_naturals() {
        let s = sg(&[1]);
        assert!(s.gaps().is_empty());
        assert_eq!(s.frobenius(), -1);
        assert_eq!(s.conductor(), 0);
        assert_eq!(s.pseudo_frobenius(), &[-1]);
    }

    #[test]
    fn redundant_generators_are_dropped_and_reported() {
        let s = sg(&[6, 4, 9, 8]);
        assert_eq!(s.generators(), &[4, 6, 9]);
        assert_eq!(s.redundant(), &[8]);
        let brute: Vec<i64> = (0..24).filter(|&a| !brute_member(a, &[4, 6, 9])).collect();
        assert_eq!(brute, vec![1, 2, 3, 5, 7, 11]);
        assert_eq!(s.gaps(), brute.as_slice());
    }

    #[test]
    fn errors() {
        assert_eq!(Semigroup::new(&[]), Err(Error::EmptyGenerators));
        assert_eq!(Semigroup::new(&[4, 6]), Err(Error::GcdNotOne { gcd: 2 }));
        assert_eq!(Semigroup::new(&[3, 0]), Err(Error::NonPositiveGenerator(0)));
    }

    #[test]
    fn frobenius_beyond_product_of_two_smallest() {
        // gcd(4, 6) = 2, so odd elements all come from 101.
        let s = sg(&[4, 6, 101]);
        assert_eq!(s.frobenius(), 103);
        assert!(!s.contains(103) && s.contains(105));
    }

    #[test]
    fn contains_examples() {
        let s = sg(&[4, 7, 9]);
        assert!(!s.contains(10));
        assert!(s.contains(0));
        assert!(s.contains(13));
        assert!(!s.contains(-4));
        assert!(s.contains(11) && s.contains(1000));
    }

    #[test]
    fn apery_examples() {
        assert_eq!(sg(&[4, 7, 9]).apery_set(4).unwrap(), vec![0, 9, 14, 7]);
        assert_eq!(sg(&[1]).apery_set(1).unwrap(), vec![0]);
        assert_eq!(sg(&[3, 5]).apery_set(3).unwrap(), vec![0, 10, 5]);
        assert_eq!(sg(&[4, 7, 9]).apery_set(5), Err(Error::NotInSemigroup { value: 5 }));
    }

    #[test]
    fn pseudo_frobenius_examples() {
        assert_eq!(sg(&[5, 6, 7]).pseudo_frobenius(), &[8, 9]);
        assert_eq!(sg(&[4, 7, 9]).pseudo_frobenius(), &[5, 10]);
        assert_eq!(sg(&[3, 5]).pseudo_frobenius(), &[7]);
    }

    #[test]
    fn symmetry_examples() {
        assert!(sg(&[3, 5]).is_symmetric().unwrap());
        assert!(!sg(&[4, 7, 9]).is_symmetric().unwrap());
        assert!(sg(&[1]).is_symmetric().unwrap());
    }

    #[test]
    fn canonical_value_set_examples() {
        let w = sg(&[4, 7, 9]).canonical_value_set();
        assert_eq!(w.sporadic(), &[-11, -7, -6, -4, -3, -2]);
        assert_eq!(w.tail(), 0);
        assert_eq!(sg(&[1]).canonical_value_set(), ValueSet::interval(0));
        // Symmetric case: W = -c + Γ.
        let s = sg(&[3, 5]);
        let w = s.canonical_value_set();
        assert_eq!(w.sporadic(), &[-8, -5, -3, -2]);
        assert_eq!(w, s.value_set().shift(-8));
    }

    #[test]
    fn json_schema() {
        let v = serde_json::to_value(sg(&[4, 7, 9])).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"generators":[4,7,9],"gaps":[1,2,3,5,6,10],
                "frobenius":10,"conductor":11,"pf":[5,10],"type":2})
        );
    }

    #[test]
    fn parse_generator_lists() {
        assert_eq!(parse_generators("4,7, 9").unwrap(), vec![4, 7, 9]);
        assert_eq!(parse_generators("4 7 9").unwrap(), vec![4, 7, 9]);
        assert!(parse_generators("4,x").is_err());
    }

    mod props {
        use super::*;
        use crate::strategies::semigroup;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn membership_matches_brute_force(s in semigroup()) {
                for a in -3..=s.conductor() + 5 {
                    prop_assert_eq!(s.contains(a), brute_member(a, s.generators()));
                }
            }

            #[test]
            fn gap_counts(s in semigroup()) {
                let (c, d) = (s.conductor(), s.delta());
                prop_assert!(c <= 2 * d);
                if d > 0 {
                    prop_assert!(c > d);
                }
                prop_assert!(s.pseudo_frobenius().contains(&s.frobenius()));
                prop_assert!(s.gaps().iter().all(|&g| !s.contains(g)));
            }

            #[test]
            fn symmetry_criteria_agree(s in semigroup()) {
                let sym = s.is_symmetric().unwrap();
                prop_assert_eq!(sym, s.cm_type() == 1);
            }

            #[test]
            fn canonical_value_set_properties(s in semigroup()) {
                let w = s.canonical_value_set();
                let c = s.conductor();
                prop_assert!(w.is_stable(&s));
                prop_assert_eq!(w.min(), -c);
                prop_assert_eq!(w.sporadic().len() as i64, s.delta());
                for a in -c..=c {
                    prop_assert_eq!(w.contains(a), !s.contains(-a - 1));
                }
            }

            #[test]
            fn apery_minimal_in_class(s in semigroup(), k in 0usize..3) {
                let m = s.generators()[k.min(s.generators().len() - 1)];
                let ap = s.apery_set(m).unwrap();
                for (i, &w) in ap.iter().enumerate() {
                    prop_assert_eq!(w.rem_euclid(m) as usize, i);
                    prop_assert!(s.contains(w));
                    let mut below = w - m;
                    while below >= 0 {
                        prop_assert!(!s.contains(below));
                        below -= m;
                    }
                }
            }
        }
    }
}
