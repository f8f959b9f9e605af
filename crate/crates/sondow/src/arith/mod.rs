//! Integer and rational arithmetic shared by every predicate: gcd, modular
//! exponentiation, primality, factorization, a segmented smallest-prime-factor
//! sieve, the multiplicative functions φ, λ, Rad, the arithmetic derivative,
//! and exact Bernoulli numbers.

pub mod bernoulli;
pub mod factor;
pub mod factorization;
pub mod functions;
pub mod primality;
pub mod rational;
pub mod sieve;

use alloc::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

pub use bernoulli::{bernoulli_number, BERNOULLI_MAX};
pub use factor::{factor_u64, factorize, FactorBudget, FactorError};
pub use factorization::{Factorization, FactorizationError};
pub use functions::{
    arithmetic_derivative, carmichael_lambda, euler_phi, is_squarefree, radical,
};
pub use primality::{is_prime, is_prime_u64};
pub use rational::rational_congruent;
pub use sieve::{primes_up_to, spf_sieve, SieveError, SpfSegment, DEFAULT_SEGMENT_LEN};

/// Errors from the scalar arithmetic operations in this module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithError {
    /// `mod_pow` was called with modulus 0.
    ZeroModulus,
    /// A Bernoulli number beyond the supported table was requested.
    BernoulliOutOfRange { k: u32, max: u32 },
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::ZeroModulus => write!(f, "modulus must be at least 1"),
            ArithError::BernoulliOutOfRange { k, max } => {
                write!(f, "Bernoulli index {k} exceeds the supported maximum {max}")
            }
        }
    }
}

impl core::error::Error for ArithError {}

/// Greatest common divisor of two integers; `gcd(0, 0) = 0`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigUint {
    a.gcd(b).magnitude().clone()
}

/// `base^exp mod m` by square-and-multiply, for `m ≥ 1`.  Negative bases are
/// reduced first, so the result is always in `[0, m)`.
pub fn mod_pow(base: &BigInt, exp: &BigUint, m: &BigUint) -> Result<BigUint, ArithError> {
    if m.is_zero() {
        return Err(ArithError::ZeroModulus);
    }
    let m_int = BigInt::from(m.clone());
    let reduced = base.mod_floor(&m_int).magnitude().clone();
    Ok(reduced.modpow(exp, m))
}

/// `base^exp mod m` on machine words, for `m ≥ 1`.  Used by the power-sum
/// oracle and the search engine, where operands are known to fit `u64`.
pub fn mod_pow_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    debug_assert!(m >= 1);
    if m == 1 {
        return 0;
    }
    let mut acc: u64 = 1;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// `(a * b) mod m` without overflow, via 128-bit intermediates.
#[inline]
pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Convenience: `n` as a `BigInt`.
pub(crate) fn to_bigint(n: &BigUint) -> BigInt {
    BigInt::from(n.clone())
}

/// `mu mod n` as a non-negative residue, for `n ≥ 1`.
pub(crate) fn mu_residue(mu: &BigInt, n: &BigUint) -> BigUint {
    debug_assert!(!n.is_zero());
    if n.is_one() {
        return BigUint::zero();
    }
    mu.mod_floor(&to_bigint(n)).magnitude().clone()
}
