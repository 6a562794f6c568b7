use proptest::prelude::*;

use crate::semigroup::Semigroup;

pub fn semigroup() -> impl Strategy<Value = Semigroup> {
    prop::collection::vec(2i64..=40, 1..=5).prop_filter_map("gcd must be 1", |g| Semigroup::new(&g).ok())
}

/// Semigroups with small conductor, for tests that enumerate ideals.
pub fn small_semigroup() -> impl Strategy<Value = Semigroup> {
    prop::collection::vec(2i64..=12, 1..=4).prop_filter_map("gcd must be 1", |g| Semigroup::new(&g).ok())
}
