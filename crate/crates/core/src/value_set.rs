use std::fmt;

use serde::{Deserialize, Serialize};

use crate::semigroup::Semigroup;

/// A subset of ℤ that is bounded below and contains every integer from
/// `tail` on. Value sets of fractional ideals and of the canonical module
/// all have this shape.
///
/// Stored in canonical form: `sporadic` is sorted, every sporadic element is
/// below `tail`, and `tail - 1` is never a member.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Repr")]
pub struct ValueSet {
    sporadic: Vec<i64>,
    tail: i64,
}

#[derive(Deserialize)]
struct Repr {
    sporadic: Vec<i64>,
    tail: i64,
}

impl From<Repr> for ValueSet {
    fn from(r: Repr) -> Self {
        ValueSet::new(r.sporadic, r.tail)
    }
}

impl ValueSet {
    pub fn new(mut sporadic: Vec<i64>, mut tail: i64) -> Self {
        sporadic.retain(|&a| a < tail);
        sporadic.sort_unstable();
        sporadic.dedup();
        while sporadic.last() == Some(&(tail - 1)) {
            sporadic.pop();
            tail -= 1;
        }
        ValueSet { sporadic, tail }
    }

    /// `{a in [lo, tail) : member(a)} ∪ [tail, ∞)`.
    pub fn from_fn(lo: i64, tail: i64, member: impl Fn(i64) -> bool) -> Self {
        let sporadic = (lo..tail).filter(|&a| member(a)).collect();
        ValueSet::new(sporadic, tail)
    }

    /// All integers `≥ from`.
    pub fn interval(from: i64) -> Self {
        ValueSet { sporadic: Vec::new(), tail: from }
    }

    pub fn sporadic(&self) -> &[i64] {
        &self.sporadic
    }

    pub fn tail(&self) -> i64 {
        self.tail
    }

    pub fn min(&self) -> i64 {
        self.sporadic.first().copied().unwrap_or(self.tail)
    }

    pub fn contains(&self, a: i64) -> bool {
        a >= self.tail || self.sporadic.binary_search(&a).is_ok()
    }

    /// Members strictly below `bound`, ascending.
    pub fn members_below(&self, bound: i64) -> impl Iterator<Item = i64> + '_ {
        let from_sporadic = self.sporadic.iter().copied().take_while(move |&a| a < bound);
        from_sporadic.chain(self.tail..bound.max(self.tail))
    }

    pub fn shift(&self, s: i64) -> Self {
        ValueSet { sporadic: self.sporadic.iter().map(|a| a + s).collect(), tail: self.tail + s }
    }

    pub fn union(&self, other: &ValueSet) -> Self {
        let tail = self.tail.min(other.tail);
        let lo = self.min().min(other.min());
        ValueSet::from_fn(lo, tail, |a| self.contains(a) || other.contains(a))
    }

    pub fn intersection(&self, other: &ValueSet) -> Self {
        let tail = self.tail.max(other.tail);
        let lo = self.min().max(other.min());
        ValueSet::from_fn(lo, tail, |a| self.contains(a) && other.contains(a))
    }

    /// Minkowski sum `{a + b}`.
    pub fn sum(&self, other: &ValueSet) -> Self {
        let tail = (self.tail + other.min()).min(other.tail + self.min());
        let mut members = Vec::new();
        for a in self.members_below(tail - other.min()) {
            for b in other.members_below(tail - a) {
                members.push(a + b);
            }
        }
        ValueSet::new(members, tail)
    }

    pub fn is_subset(&self, other: &ValueSet) -> bool {
        self.sporadic.iter().all(|&a| other.contains(a))
            && (self.tail >= other.tail || (self.tail..other.tail).all(|a| other.contains(a)))
    }

    /// `|self ∖ other|`, always finite since both sets are cofinite.
    pub fn difference_count(&self, other: &ValueSet) -> usize {
        let bound = self.tail.max(other.tail);
        self.members_below(bound).filter(|&a| !other.contains(a)).count()
    }

    /// Elements of `self ∖ other`, ascending.
    pub fn difference(&self, other: &ValueSet) -> Vec<i64> {
        let bound = self.tail.max(other.tail);
        self.members_below(bound).filter(|&a| !other.contains(a)).collect()
    }

    /// Closed under adding each generator of `s`.
    pub fn is_stable(&self, s: &Semigroup) -> bool {
        self.sporadic.iter().all(|&v| s.generators().iter().all(|&n| self.contains(v + n)))
    }

    /// Minimal generators as a module over `s`: members `v` with `v - n ∉ self`
    /// for every generator `n`.
    pub fn minimal_generators(&self, s: &Semigroup) -> Vec<i64> {
        let bound = self.tail + s.multiplicity();
        self.members_below(bound).filter(|&v| s.generators().iter().all(|&n| !self.contains(v - n))).collect()
    }
}

impl fmt::Display for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for a in &self.sporadic {
            write!(f, "{a}, ")?;
        }
        write!(f, "{}, ...}}", self.tail)
    }
}
