//! Exact Bernoulli numbers for the rational-congruence oracle.
//!
//! The table is built once on first use from the defining recurrence
//! `Σ_{j=0}^{m} C(m+1, j) · B_j = 0` (with `B_0 = 1`, `B_1 = −1/2`) and
//! shared behind an atomic cell, so repeated queries are lookups.

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use once_cell::race::OnceBox;

use super::ArithError;

/// Largest index the Bernoulli table covers.
pub const BERNOULLI_MAX: u32 = 500;

static TABLE: OnceBox<Vec<BigRational>> = OnceBox::new();

/// Exact `B_k` for `k ≤` [`BERNOULLI_MAX`].  Odd indices `k ≥ 3` are zero.
pub fn bernoulli_number(k: u32) -> Result<BigRational, ArithError> {
    if k > BERNOULLI_MAX {
        return Err(ArithError::BernoulliOutOfRange {
            k,
            max: BERNOULLI_MAX,
        });
    }
    if k >= 3 && k % 2 == 1 {
        return Ok(BigRational::zero());
    }
    let table = TABLE.get_or_init(|| Box::new(compute_table(BERNOULLI_MAX as usize)));
    Ok(table[k as usize].clone())
}

fn compute_table(max: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(max + 1);
    b.push(BigRational::one());
    if max >= 1 {
        b.push(BigRational::new(BigInt::from(-1), BigInt::from(2)));
    }
    for m in 2..=max {
        if m % 2 == 1 {
            b.push(BigRational::zero());
            continue;
        }
        // B_m = −1/(m+1) · Σ_{j<m} C(m+1, j) B_j, walking the binomial row
        // incrementally and skipping the vanishing odd terms.
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (j, bj) in b.iter().enumerate() {
            if j < 3 || j % 2 == 0 {
                acc += BigRational::from(binom.clone()) * bj;
            }
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from(BigInt::from(m + 1)));
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sieve::primes_up_to;
    use num_bigint::BigUint;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn known_values() {
        assert_eq!(bernoulli_number(0).unwrap(), rat(1, 1));
        assert_eq!(bernoulli_number(1).unwrap(), rat(-1, 2));
        assert_eq!(bernoulli_number(2).unwrap(), rat(1, 6));
        assert_eq!(bernoulli_number(3).unwrap(), rat(0, 1));
        assert_eq!(bernoulli_number(4).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli_number(8).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli_number(12).unwrap(), rat(-691, 2730));
        assert_eq!(bernoulli_number(499).unwrap(), rat(0, 1));
    }

    #[test]
    fn out_of_range() {
        assert_eq!(
            bernoulli_number(BERNOULLI_MAX + 2),
            Err(ArithError::BernoulliOutOfRange { k: 502, max: 500 })
        );
    }

    #[test]
    fn von_staudt_clausen_denominators() {
        // For even k, denom(B_k) = ∏ p over primes with (p − 1) | k — an
        // independent check on the recurrence.
        let primes = primes_up_to(62);
        for k in (2u32..=60).step_by(2) {
            let b = bernoulli_number(k).unwrap();
            let expected: BigUint = primes
                .iter()
                .filter(|&&p| k % (p as u32 - 1) == 0)
                .map(|&p| BigUint::from(p))
                .product();
            assert_eq!(b.denom().magnitude(), &expected, "k = {k}");
        }
    }
}
