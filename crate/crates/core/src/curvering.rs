//! The semigroup ring `R = k[[t^Γ]]` as a curve singularity: the m-adic
//! filtration, Hilbert functions, Milnor number and the invariant report.

use std::ops::Deref;
use std::sync::RwLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::Semigroup;
use crate::value_set::ValueSet;

/// Number of branches. Only irreducible curves are handled.
const BRANCHES: i64 = 1;

/// A semigroup ring together with a lazily grown table of m-adic orders.
///
/// Dereferences to its [`Semigroup`].
#[derive(Debug)]
pub struct CurveRing {
    semigroup: Semigroup,
    // orders[a] = max number of generator parts of a, or -1 if a ∉ Γ.
    orders: RwLock<Vec<i64>>,
}

impl Clone for CurveRing {
    fn clone(&self) -> Self {
        CurveRing { semigroup: self.semigroup.clone(), orders: RwLock::new(self.orders.read().unwrap().clone()) }
    }
}

impl Deref for CurveRing {
    type Target = Semigroup;
    fn deref(&self) -> &Semigroup {
        &self.semigroup
    }
}

impl From<Semigroup> for CurveRing {
    fn from(s: Semigroup) -> Self {
        CurveRing::new(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    #[serde(rename = "HF0")]
    pub hf0: Vec<i64>,
    #[serde(rename = "HF1")]
    pub hf1: Vec<i64>,
    pub e0: i64,
    pub e1: i64,
    pub pn: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveInvariants {
    pub e0: i64,
    pub e1: i64,
    pub delta: i64,
    pub mu: i64,
    pub c: i64,
    pub pn: i64,
    pub cm_type: usize,
    pub gorenstein: bool,
    pub ell: i64,
    pub sigma_upper: i64,
    pub socle_upper_t: i64,
}

impl CurveInvariants {
    /// Upper bound `e₀(t − 2μ − 1) + 2δ + e₁ + 2(1 − r)` on the socle degree
    /// of `R/zω` for a generic `z` of degree `t ≥ 4μ + 1`.
    pub fn socle_degree_bound(&self, t: i64) -> i64 {
        self.e0 * (t - 2 * self.mu - 1) + 2 * self.delta + self.e1 + 2 * (1 - BRANCHES)
    }
}

fn binom2(n: i64) -> i64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

impl CurveRing {
    pub fn new(semigroup: Semigroup) -> Self {
        CurveRing { semigroup, orders: RwLock::new(vec![0]) }
    }

    pub fn from_generators(gens: &[i64]) -> Result<Self> {
        Ok(CurveRing::new(Semigroup::new(gens)?))
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    fn ensure_orders(&self, upto: i64) {
        if (upto as usize) < self.orders.read().unwrap().len() {
            return;
        }
        let mut table = self.orders.write().unwrap();
        let target = (upto as usize + 1).max(2 * table.len());
        for a in table.len()..target {
            let best = self
                .semigroup
                .generators()
                .iter()
                .filter(|&&n| n as usize <= a)
                .map(|&n| table[a - n as usize])
                .filter(|&o| o >= 0)
                .max()
                .map_or(-1, |o| o + 1);
            table.push(best);
        }
    }

    /// m-adic order of `a ∈ Γ`: the largest `n` with `t^a ∈ mⁿ`, which is the
    /// maximal number of parts in a decomposition of `a` into generators.
    pub fn order(&self, a: i64) -> Result<i64> {
        if !self.semigroup.contains(a) {
            return Err(Error::NotInSemigroup { value: a });
        }
        self.ensure_orders(a);
        Ok(self.orders.read().unwrap()[a as usize])
    }

    /// Order of `a`, or `None` when `a ∉ Γ`.
    pub fn order_opt(&self, a: i64) -> Option<i64> {
        self.order(a).ok()
    }

    /// `V(mⁿ) = {a ∈ Γ : order(a) ≥ n}`.
    pub fn power_value_set(&self, n: i64) -> ValueSet {
        if n == 0 {
            return self.semigroup.value_set();
        }
        let c = self.semigroup.conductor().max(1);
        // a ≥ (n-1)n₁ + c leaves a nonzero element of Γ after n-1 copies of n₁.
        let tail = (n - 1) * self.semigroup.multiplicity() + c;
        ValueSet::from_fn(0, tail, |a| self.order_opt(a).is_some_and(|o| o >= n))
    }

    pub fn hilbert_data(&self) -> Result<HilbertData> {
        let e0 = self.semigroup.multiplicity();
        let last = e0 + 2;
        let mut hf0 = vec![0i64; last as usize + 1];
        let bound = (last - 1) * e0 + self.semigroup.conductor().max(1) + e0;
        for a in 0..bound {
            if let Some(o) = self.order_opt(a) {
                if o <= last {
                    hf0[o as usize] += 1;
                }
            }
        }
        let hf1: Vec<i64> = hf0
            .iter()
            .scan(0, |acc, &h| {
                *acc += h;
                Some(*acc)
            })
            .collect();
        let pn = (0..=last)
            .rev()
            .take_while(|&n| hf0[n as usize] == e0)
            .last()
            .ok_or_else(|| Error::InternalInconsistency(format!("HF0 = {hf0:?} has not reached e0 = {e0}")))?;
        let e1_at = |n: i64| e0 * (n + 1) - hf1[n as usize];
        let e1 = e1_at(pn);
        if let Some(n) = (pn..=last).find(|&n| e1_at(n) != e1) {
            return Err(Error::InternalInconsistency(format!(
                "e1 not constant on the stable range: {} at {pn}, {} at {n}",
                e1,
                e1_at(n)
            )));
        }
        Ok(HilbertData { hf0, hf1, e0, e1, pn })
    }

    /// Milnor number as `dim ω/dR`, with the exponents of a monomial basis.
    pub fn milnor_via_differentials(&self) -> Result<(i64, Vec<i64>)> {
        let w = self.semigroup.canonical_value_set();
        let c = self.semigroup.conductor();
        // Every exponent ≥ c - 1 is a - 1 for some a ≥ c in Γ.
        let basis: Vec<i64> =
            w.members_below(c - 1).filter(|&e| !(e + 1 > 0 && self.semigroup.contains(e + 1))).collect();
        let mu = basis.len() as i64;
        if mu != 2 * self.semigroup.delta() {
            return Err(Error::InternalInconsistency(format!(
                "mu = {mu} differs from 2 delta = {}",
                2 * self.semigroup.delta()
            )));
        }
        Ok((mu, basis))
    }

    pub fn invariants(&self) -> Result<CurveInvariants> {
        let s = &self.semigroup;
        let hd = self.hilbert_data()?;
        let (mu, _) = self.milnor_via_differentials()?;
        let delta = s.delta();
        let c = s.conductor();
        let e0 = hd.e0;
        let mut inv = CurveInvariants {
            e0,
            e1: hd.e1,
            delta,
            mu,
            c,
            pn: hd.pn,
            cm_type: s.cm_type(),
            gorenstein: s.is_symmetric()?,
            ell: e0 * (4 * mu + 1) - 2 * delta,
            sigma_upper: delta * (4 * e0 + 3),
            socle_upper_t: 0,
        };
        inv.socle_upper_t = inv.socle_degree_bound(4 * mu + 1);
        check_invariants(&inv, s.embedding_dimension() as i64)?;
        Ok(inv)
    }
}

fn check_invariants(inv: &CurveInvariants, embdim: i64) -> Result<()> {
    let fail = |what: &str| Err(Error::InternalInconsistency(format!("{what}: {inv:?}")));
    if !(inv.e0 - 1 <= inv.e1 && inv.e1 <= inv.delta && inv.delta <= inv.mu) {
        return fail("e0 - 1 <= e1 <= delta <= mu fails");
    }
    if inv.e1 > binom2(inv.e0) - binom2(embdim - 1) {
        return fail("e1 exceeds C(e0,2) - C(n-1,2)");
    }
    if inv.mu != 2 * inv.delta {
        return fail("mu != 2 delta");
    }
    if inv.delta > 0 && !(inv.delta < inv.c && inv.c <= 2 * inv.delta) {
        return fail("delta + 1 <= c <= 2 delta fails");
    }
    if (inv.c == 2 * inv.delta) != inv.gorenstein {
        return fail("c = 2 delta disagrees with symmetry");
    }
    if inv.pn > inv.e0 - 1 {
        return fail("pn > e0 - 1");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(gens: &[i64]) -> CurveRing {
        CurveRing::from_generators(gens).unwrap()
    }

    /// `V(mⁿ)` as the n-fold Minkowski sum of `Γ ∖ {0}`.
    fn brute_power(s: &Semigroup, n: i64) -> ValueSet {
        let maximal = ValueSet::from_fn(1, s.conductor().max(1), |a| s.contains(a));
        (0..n).fold(s.value_set(), |acc, i| if i == 0 { maximal.clone() } else { acc.sum(&maximal) })
    }

    /// Max number of parts by exhaustive recursion.
    fn brute_order(gens: &[i64], a: i64) -> Option<i64> {
        if a == 0 {
            return Some(0);
        }
        gens.iter().filter(|&&n| n <= a).filter_map(|&n| brute_order(gens, a - n).map(|o| o + 1)).max()
    }

    #[test]
    fn power_value_set_examples() {
        let r = ring(&[4, 7, 9]);
        assert_eq!(r.power_value_set(2), ValueSet::new(vec![8], 11));
        assert_eq!(r.power_value_set(0), r.value_set());
        assert_eq!(r.power_value_set(4), ValueSet::new(vec![16], 19));
        for n in 0..7 {
            assert_eq!(r.power_value_set(n), brute_power(&r, n));
        }
    }

    #[test]
    fn order_examples() {
        let r = ring(&[4, 7, 9]);
        assert_eq!(r.order(110).unwrap(), 26);
        assert_eq!(r.order(0).unwrap(), 0);
        assert_eq!(r.order(16).unwrap(), 4);
        assert_eq!(r.order(5), Err(Error::NotInSemigroup { value: 5 }));
        for a in 0..60 {
            assert_eq!(r.order_opt(a), brute_order(&[4, 7, 9], a), "{a}");
        }
    }

    #[test]
    fn hilbert_examples() {
        let h = ring(&[4, 7, 9]).hilbert_data().unwrap();
        assert_eq!(&h.hf0[..4], &[1, 3, 4, 4]);
        assert_eq!((h.e0, h.e1, h.pn), (4, 4, 2));
        assert_eq!(h.hf1[2], 8);

        let h = ring(&[1]).hilbert_data().unwrap();
        assert!(h.hf0.iter().all(|&x| x == 1));
        assert_eq!((h.e0, h.e1, h.pn), (1, 0, 0));

        let h = ring(&[3, 5]).hilbert_data().unwrap();
        assert_eq!(&h.hf0[..4], &[1, 2, 3, 3]);
        assert_eq!((h.e0, h.e1, h.pn), (3, 3, 2));
    }

    #[test]
    fn milnor_examples() {
        let (mu, basis) = ring(&[4, 7, 9]).milnor_via_differentials().unwrap();
        assert_eq!(mu, 12);
        assert_eq!(basis, vec![-11, -7, -6, -4, -3, -2, 0, 1, 2, 4, 5, 9]);
        assert_eq!(ring(&[1]).milnor_via_differentials().unwrap(), (0, vec![]));
        assert_eq!(ring(&[3, 5]).milnor_via_differentials().unwrap().0, 8);
    }

    #[test]
    fn invariants_examples() {
        let inv = ring(&[4, 7, 9]).invariants().unwrap();
        assert_eq!(
            inv,
            CurveInvariants {
                e0: 4,
                e1: 4,
                delta: 6,
                mu: 12,
                c: 11,
                pn: 2,
                cm_type: 2,
                gorenstein: false,
                ell: 184,
                sigma_upper: 114,
                socle_upper_t: 112,
            }
        );
        let inv = ring(&[1]).invariants().unwrap();
        assert_eq!((inv.e0, inv.e1, inv.delta, inv.mu, inv.c, inv.gorenstein), (1, 0, 0, 0, 0, true));
        let inv = ring(&[5, 6, 7]).invariants().unwrap();
        assert_eq!((inv.delta, inv.c, inv.gorenstein, inv.cm_type), (6, 10, false, 2));
    }

    #[test]
    fn json_keys() {
        let v = serde_json::to_value(ring(&[3, 5]).hilbert_data().unwrap()).unwrap();
        for key in ["HF0", "HF1", "e0", "e1", "pn"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn shared_across_threads() {
        let r = ring(&[5, 8, 11]);
        std::thread::scope(|scope| {
            for k in 0..4 {
                let r = &r;
                scope.spawn(move || {
                    for a in (0..60).rev().skip(k * 7) {
                        assert_eq!(r.order_opt(a), brute_order(&[5, 8, 11], a));
                    }
                    r.order_opt(300 + 50 * k as i64);
                });
            }
        });
        assert_eq!(r.order(400).unwrap(), 80);
    }

    mod props {
        use super::*;
        use crate::strategies::semigroup;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn invariants_hold(s in semigroup()) {
                prop_assert!(CurveRing::new(s).invariants().is_ok());
            }

            #[test]
            fn hf1_is_cumulative(s in semigroup()) {
                let h = CurveRing::new(s).hilbert_data().unwrap();
                let mut acc = 0;
                for (a, b) in h.hf0.iter().zip(&h.hf1) {
                    acc += a;
                    prop_assert_eq!(acc, *b);
                }
            }

            #[test]
            fn filtration_is_multiplicative(s in semigroup(), n in 0i64..5) {
                let r = CurveRing::new(s);
                let next = r.power_value_set(n + 1);
                let this = r.power_value_set(n);
                prop_assert!(next.is_subset(&this));
                prop_assert_eq!(next, r.power_value_set(1).sum(&this));
            }

            #[test]
            fn order_is_superadditive(s in semigroup(), a in 0i64..150, b in 0i64..150) {
                let r = CurveRing::new(s);
                if let (Some(x), Some(y)) = (r.order_opt(a), r.order_opt(b)) {
                    prop_assert!(x + y <= r.order(a + b).unwrap());
                }
            }
        }
    }
}
