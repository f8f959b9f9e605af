//! Canonical prime-power decompositions — the universal input to every
//! predicate in this crate.

use alloc::fmt;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use super::primality::is_prime;

/// The canonical factorization `n = ∏ pᵢ^eᵢ` of a positive integer.
///
/// Invariants, enforced by the checked constructors:
/// * primes strictly increasing, every exponent ≥ 1;
/// * the product of the prime powers equals `value`;
/// * `value = 1` exactly when the factor list is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    value: BigUint,
    factors: Vec<(BigUint, u32)>,
}

/// Rejection reasons for externally supplied factor lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorizationError {
    /// A listed factor failed the primality test.
    NotPrime(BigUint),
    /// Primes were not strictly increasing (unordered or duplicated).
    NotStrictlyIncreasing,
    /// An exponent of zero was listed.
    ZeroExponent(BigUint),
    /// The product of the listed prime powers is not the claimed value.
    ProductMismatch { claimed: BigUint, actual: BigUint },
}

impl fmt::Display for FactorizationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorizationError::NotPrime(p) => write!(f, "claimed prime {p} is not prime"),
            FactorizationError::NotStrictlyIncreasing => {
                write!(f, "primes must be listed in strictly increasing order")
            }
            FactorizationError::ZeroExponent(p) => {
                write!(f, "prime {p} listed with exponent 0")
            }
            FactorizationError::ProductMismatch { claimed, actual } => {
                write!(f, "factor product {actual} does not equal claimed value {claimed}")
            }
        }
    }
}

impl core::error::Error for FactorizationError {}

impl Factorization {
    /// The factorization of 1: empty factor list.
    pub fn one() -> Self {
        Factorization {
            value: BigUint::one(),
            factors: Vec::new(),
        }
    }

    /// Builds a factorization from `(prime, exponent)` pairs, verifying
    /// ordering, exponents, and the primality of every listed prime.
    pub fn from_prime_powers(
        factors: Vec<(BigUint, u32)>,
    ) -> Result<Self, FactorizationError> {
        for window in factors.windows(2) {
            if window[0].0 >= window[1].0 {
                return Err(FactorizationError::NotStrictlyIncreasing);
            }
        }
        for (p, e) in &factors {
            if *e == 0 {
                return Err(FactorizationError::ZeroExponent(p.clone()));
            }
            if !is_prime(p) {
                return Err(FactorizationError::NotPrime(p.clone()));
            }
        }
        let value = factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
        Ok(Factorization { value, factors })
    }

    /// Like [`Factorization::from_prime_powers`], but also checks the product
    /// against an independently claimed value.  This is the ingestion path
    /// for caller-supplied factor lists.
    pub fn from_claimed(
        claimed_value: BigUint,
        factors: Vec<(BigUint, u32)>,
    ) -> Result<Self, FactorizationError> {
        let f = Self::from_prime_powers(factors)?;
        if f.value != claimed_value {
            return Err(FactorizationError::ProductMismatch {
                claimed: claimed_value,
                actual: f.value,
            });
        }
        Ok(f)
    }

    /// Constructor for factor lists produced internally (sieve walks, trial
    /// division, rho splits) whose primality and ordering are already
    /// established.  Debug builds re-verify the invariants.
    pub(crate) fn from_parts_unchecked(value: BigUint, factors: Vec<(BigUint, u32)>) -> Self {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(factors.iter().all(|(_, e)| *e >= 1));
        debug_assert_eq!(
            factors
                .iter()
                .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e)),
            value
        );
        Factorization { value, factors }
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn distinct_primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// True when the value is prime (a single factor with exponent 1).
    pub fn is_prime_value(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Composite means greater than 1 and not prime.
    pub fn is_composite(&self) -> bool {
        !self.is_one() && !self.is_prime_value()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn nat(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn one_is_empty() {
        let one = Factorization::one();
        assert!(one.is_one());
        assert!(!one.is_prime_value());
        assert!(!one.is_composite());
        assert_eq!(one.value(), &nat(1));
        assert_eq!(one.to_string(), "1");
    }

    #[test]
    fn checked_construction_validates() {
        let f = Factorization::from_prime_powers(vec![(nat(2), 1), (nat(3), 1), (nat(5), 2)])
            .unwrap();
        assert_eq!(f.value(), &nat(150));
        assert_eq!(f.to_string(), "2 * 3 * 5^2");
        assert!(f.is_composite());

        assert_eq!(
            Factorization::from_prime_powers(vec![(nat(3), 1), (nat(2), 1)]),
            Err(FactorizationError::NotStrictlyIncreasing)
        );
        assert_eq!(
            Factorization::from_prime_powers(vec![(nat(2), 1), (nat(2), 1)]),
            Err(FactorizationError::NotStrictlyIncreasing)
        );
        assert_eq!(
            Factorization::from_prime_powers(vec![(nat(2), 0)]),
            Err(FactorizationError::ZeroExponent(nat(2)))
        );
        assert_eq!(
            Factorization::from_prime_powers(vec![(nat(9), 1)]),
            Err(FactorizationError::NotPrime(nat(9)))
        );
    }

    #[test]
    fn claimed_value_must_match() {
        assert!(Factorization::from_claimed(nat(30), vec![(nat(2), 1), (nat(3), 1), (nat(5), 1)])
            .is_ok());
        assert_eq!(
            Factorization::from_claimed(nat(31), vec![(nat(2), 1), (nat(3), 1), (nat(5), 1)]),
            Err(FactorizationError::ProductMismatch {
                claimed: nat(31),
                actual: nat(30),
            })
        );
    }

    #[test]
    fn prime_detection() {
        let p = Factorization::from_prime_powers(vec![(nat(13), 1)]).unwrap();
        assert!(p.is_prime_value());
        assert!(!p.is_composite());
        let q = Factorization::from_prime_powers(vec![(nat(13), 2)]).unwrap();
        assert!(!q.is_prime_value());
        assert!(q.is_composite());
    }
}
