//! Published worked examples for `⟨4,7,9⟩`, kept as data for regression
//! checks.

use crate::error::Result;
use crate::poly::Poly;

/// Generators of `(F₁,F₂,F₃) + x₁²⁴(x₁,x₃)` in `k[[x₁,x₂,x₃]]`, the Artinian
/// Gorenstein quotient attached to `⟨4,7,9⟩`.
pub const ARTIN_479_GENERATORS: [&str; 5] = ["x1^4 - x2*x3", "x2^3 - x1^3*x3", "x3^2 - x1*x2^2", "x1^25", "x1^24*x3"];

/// The same ideal with `x₁²⁴x₂` in place of `x₁²⁴x₃`. Its quotient has length 98.
pub const ARTIN_479_ALTERNATE_GENERATORS: [&str; 5] =
    ["x1^4 - x2*x3", "x2^3 - x1^3*x3", "x3^2 - x1*x2^2", "x1^25", "x1^24*x2"];

/// Published degree-26 inverse system of the quotient by
/// [`ARTIN_479_GENERATORS`], written for the differentiation action.
pub const PUBLISHED_DUAL_GENERATOR_479: &str = "31087081215590400*x1*x2*x3^11 + 42744736671436800*x2^8*x3^6 \
+ 284964911142912000*x1^2*x2^3*x3^9 + 14248245557145600*x1*x2^10*x3^4 + 341957893371494400*x1^3*x2^5*x3^7 \
+ 2849649111429120*x1^5*x3^10 + 647647525324800*x1^2*x2^12*x3^2 + 85489473342873600*x1^4*x2^7*x3^5 \
+ 21372368335718400*x1^6*x2^2*x3^8 + 2372335257600*x1^3*x2^14 + 4749415185715200*x1^5*x2^9*x3^3 \
+ 14248245557145600*x1^7*x2^4*x3^6 + 43176501688320*x1^6*x2^11*x3 + 1781030694643200*x1^8*x2^6*x3^4 \
+ 67848788367360*x1^10*x2*x3^7 + 42405492729600*x1^9*x2^8*x3^2 + 43176501688320*x1^11*x2^3*x3^5 \
+ 94234428288*x1^10*x2^10 + 3598041807360*x1^12*x2^5*x3^3 + 19769460480*x1^14*x3^6 \
+ 39538920960*x1^13*x2^7*x3 + 19769460480*x1^15*x2^2*x3^4 + 1235591280*x1^16*x2^4*x3^2 \
+ 4845456*x1^17*x2^6 + 1700160*x1^19*x2*x3^3 + 85008*x1^20*x2^3*x3 + 24*x1^23*x3^2 + x1^24*x2^2";

pub fn parse_all(texts: &[&str]) -> Result<Vec<Poly>> {
    texts.iter().map(|t| Poly::parse(t, 3)).collect()
}

pub fn artin_479_generators() -> Vec<Poly> {
    parse_all(&ARTIN_479_GENERATORS).expect("constant parses")
}

pub fn published_dual_generator_479() -> Poly {
    Poly::parse(PUBLISHED_DUAL_GENERATOR_479, 3).expect("constant parses")
}
