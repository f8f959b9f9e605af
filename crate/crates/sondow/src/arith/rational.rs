//! Congruence of exact rationals: `r1 ≡ r2 (mod n)` when `n` divides the
//! numerator of `r1 − r2` in lowest terms.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

/// True iff `n` divides the numerator of `r1 − r2` reduced to lowest terms
/// (`n ≥ 1`).  No coprimality condition is placed on the denominator.
pub fn rational_congruent(r1: &BigRational, r2: &BigRational, n: &BigUint) -> bool {
    assert!(!n.is_zero(), "rational_congruent requires n >= 1");
    let diff = r1 - r2;
    let n = BigInt::from(n.clone());
    diff.numer().is_multiple_of(&n)
}
