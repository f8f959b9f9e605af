//! Membership tests for μ-Sondow numbers.
//!
//! Fix an integer μ.  A positive integer `n` is **μ-Sondow** when for every
//! prime power `p^s` exactly dividing `n`, `p^s` divides `n/p + μ`.  The
//! following conditions are all equivalent to membership for `n ≥ 2` (and
//! `n = 1` belongs for every μ):
//!
//! 1. *Divisibility*: `p^s | (n/p + μ)` for every `p^s ‖ n`
//!    ([`is_mu_sondow`]).
//! 2. *Power sum*: `Σ_{i=1}^{n−1} i^{φ(n)} ≡ μ (mod n)`
//!    ([`power_sum_check`]); the Carmichael function λ may replace φ.
//! 3. *Bernoulli*: `n · B_{φ(n)} ≡ μ (mod n)` as a rational congruence
//!    ([`bernoulli_check`]).
//! 4. *Egyptian fraction*: `μ/n + Σ_{p|n} 1/p` is an integer
//!    ([`egyptian_check`]).
//! 5. *Congruence sum*: `Σ_{p|n} n/p + μ ≡ 0 (mod n)`
//!    ([`congruence_sum_check`]).
//!
//! For μ = ±1 there is additionally a derivative characterization via
//! `n′ = a·n − μ` ([`derivative_check`]).  Giuga numbers are the composite
//! members for μ = −1 ([`is_giuga`]); weak primary pseudoperfect numbers are
//! the members for μ = 1 ([`is_weak_ppp`]).
//!
//! Each check is computed independently so they can cross-validate; use
//! [`classify`] to evaluate all of them at once.

use alloc::fmt;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{
    arithmetic_derivative, bernoulli_number, euler_phi, factor_u64, mod_pow_u64, mu_residue,
    rational_congruent, Factorization, BERNOULLI_MAX,
};

/// Cutoffs for the expensive oracle checks.
///
/// The power-sum check performs `n − 1` modular exponentiations and the
/// exact Bernoulli check needs `B_{φ(n)}` from a fixed-size table, so both
/// are only evaluated below configurable bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleBounds {
    /// Largest `n` the direct power-sum evaluation will accept.
    pub power_sum_bound: u64,
    /// Largest `φ(n)` the exact Bernoulli oracle will accept.
    pub bernoulli_cap: u32,
}

impl Default for OracleBounds {
    fn default() -> Self {
        OracleBounds {
            power_sum_bound: 1_000_000,
            bernoulli_cap: BERNOULLI_MAX,
        }
    }
}

/// Per-prime-power evidence from the divisibility test: the residue of
/// `n/p + μ` modulo `p^s`, which is zero exactly when the condition holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub prime: BigUint,
    pub exponent: u32,
    pub residue: BigUint,
}

/// Outcome of the divisibility characterization, with one [`Witness`] per
/// prime power exactly dividing `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SondowVerdict {
    pub n: BigUint,
    pub mu: BigInt,
    pub member: bool,
    pub witnesses: Vec<Witness>,
}

/// Results of every characterization evaluated by [`classify`].
///
/// `power_sum`, `bernoulli`, and `derivative` are `None` when their
/// preconditions fail (oracle out of range, or μ ≠ ±1): an absent flag is
/// never a disagreement.  All present flags must be equal; anything else is
/// a defect.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CharacterizationFlags {
    pub divisibility: bool,
    pub power_sum: Option<bool>,
    pub bernoulli: Option<bool>,
    pub egyptian: bool,
    pub congruence_sum: bool,
    pub derivative: Option<bool>,
}

impl CharacterizationFlags {
    /// True when every present flag agrees with the divisibility verdict.
    pub fn consistent(&self) -> bool {
        let base = self.divisibility;
        self.egyptian == base
            && self.congruence_sum == base
            && [self.power_sum, self.bernoulli, self.derivative]
                .into_iter()
                .flatten()
                .all(|b| b == base)
    }

    /// The membership verdict (the divisibility flag, which is always
    /// evaluated).
    pub fn member(&self) -> bool {
        self.divisibility
    }
}

/// Failure modes of the bounded oracle checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PredicateError {
    /// The direct power-sum evaluation was asked above its bound.
    PowerSumBoundExceeded { n: u64, bound: u64 },
    /// The closed form of the power sum requires an even exponent.
    OddExponent { k: BigUint },
    /// The exact Bernoulli oracle was asked above its table size.
    BernoulliBoundExceeded { phi: BigUint, cap: u32 },
    /// The derivative characterization exists only for μ = ±1.
    MuNotUnit { mu: BigInt },
    /// Primary pseudoperfect numbers are defined only for n > 1.
    OneExcluded,
}

impl fmt::Display for PredicateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredicateError::PowerSumBoundExceeded { n, bound } => {
                write!(f, "power-sum oracle bound exceeded: n = {n} > {bound}")
            }
            PredicateError::OddExponent { k } => {
                write!(f, "power-sum closed form requires an even exponent, got {k}")
            }
            PredicateError::BernoulliBoundExceeded { phi, cap } => {
                write!(f, "Bernoulli oracle bound exceeded: phi(n) = {phi} > {cap}")
            }
            PredicateError::MuNotUnit { mu } => {
                write!(f, "derivative characterization requires mu = 1 or -1, got {mu}")
            }
            PredicateError::OneExcluded => {
                write!(f, "primary pseudoperfect numbers are defined only for n > 1")
            }
        }
    }
}

impl core::error::Error for PredicateError {}

/// The canonical residue `μ* = (−Σ_{p|n} n/p) mod n`: `n` is μ-Sondow
/// exactly when `μ ≡ μ* (mod n)`.  Returns 0 for `n = 1`.
pub fn canonical_mu(f: &Factorization) -> BigUint {
    let n = f.value();
    let mut sum = BigUint::zero();
    for (p, _) in f.factors() {
        sum += n / p;
    }
    let r = &sum % n;
    if r.is_zero() {
        BigUint::zero()
    } else {
        n - r
    }
}

/// Divisibility characterization: `p^s | (n/p + μ)` for every prime power
/// `p^s ‖ n`, with the residues recorded as witnesses.  `n = 1` is a member
/// for every μ (empty witness list).
pub fn is_mu_sondow(f: &Factorization, mu: &BigInt) -> SondowVerdict {
    let n = f.value();
    let mut witnesses = Vec::with_capacity(f.factors().len());
    let mut member = true;
    for (p, e) in f.factors() {
        let ps = BigInt::from(p.pow(*e));
        let value = BigInt::from(n / p) + mu;
        let residue = value.mod_floor(&ps).magnitude().clone();
        if !residue.is_zero() {
            member = false;
        }
        witnesses.push(Witness {
            prime: p.clone(),
            exponent: *e,
            residue,
        });
    }
    SondowVerdict {
        n: n.clone(),
        mu: mu.clone(),
        member,
        witnesses,
    }
}

/// Congruence-sum characterization: `Σ_{p|n} n/p + μ ≡ 0 (mod n)`.  This is
/// the single-congruence fast path the search engine uses.
pub fn congruence_sum_check(f: &Factorization, mu: &BigInt) -> bool {
    let n = BigInt::from(f.value().clone());
    let mut total = mu.clone();
    for (p, _) in f.factors() {
        total += BigInt::from(f.value() / p);
    }
    total.mod_floor(&n).is_zero()
}

/// Which exponent the power-sum characterization raises to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentChoice {
    /// Euler's totient φ(n).
    Phi,
    /// Carmichael's function λ(n), which may replace φ(n) throughout.
    Lambda,
}

/// Power-sum characterization, evaluated directly: true iff
/// `Σ_{i=1}^{n−1} i^k ≡ μ (mod n)` with `k = φ(n)` or `λ(n)`.
///
/// Costs `n − 1` modular exponentiations, so `n` must not exceed
/// `bounds.power_sum_bound`.  `n = 1` is degenerate (empty sum, mod 1) and
/// returns true.
pub fn power_sum_check(
    n: u64,
    mu: &BigInt,
    choice: ExponentChoice,
    bounds: &OracleBounds,
) -> Result<bool, PredicateError> {
    if n == 1 {
        return Ok(true);
    }
    if n > bounds.power_sum_bound {
        return Err(PredicateError::PowerSumBoundExceeded {
            n,
            bound: bounds.power_sum_bound,
        });
    }
    let factors = factor_u64(n);
    let k = match choice {
        ExponentChoice::Phi => phi_u64(&factors),
        ExponentChoice::Lambda => lambda_u64(&factors),
    };
    let mut sum = 0u64;
    for i in 1..n {
        sum = (sum + mod_pow_u64(i, k, n)) % n;
    }
    let target = mu_residue(mu, &BigUint::from(n))
        .to_u64()
        .expect("residue below n fits u64");
    Ok(sum == target)
}

/// Closed form of the power sum: for `n ≥ 2` and even `k`,
/// `Σ_{i=1}^{n−1} i^k ≡ −Σ_{p|n, (p−1)|k} n/p (mod n)`.  Returns that
/// right-hand side reduced to `[0, n)`.
pub fn power_sum_closed_form(f: &Factorization, k: &BigUint) -> Result<BigUint, PredicateError> {
    if k.is_odd() {
        return Err(PredicateError::OddExponent { k: k.clone() });
    }
    Ok(prime_sum_rhs(f, k))
}

/// `(−Σ_{p|n, (p−1)|k} n/p) mod n` for any `k ≥ 1`.
fn prime_sum_rhs(f: &Factorization, k: &BigUint) -> BigUint {
    let n = f.value();
    let mut sum = BigUint::zero();
    for (p, _) in f.factors() {
        if k.is_multiple_of(&(p - 1u32)) {
            sum += n / p;
        }
    }
    let r = &sum % n;
    if r.is_zero() {
        BigUint::zero()
    } else {
        n - r
    }
}

/// How [`bernoulli_check`] evaluates `n · B_{φ(n)} ≡ μ (mod n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BernoulliMode {
    /// Via the closed form of the power sum — no Bernoulli numbers needed.
    Congruence,
    /// Via the exact rational `n · B_{φ(n)}` and a rational congruence.
    ExactOracle,
}

/// Bernoulli characterization: `n · B_{φ(n)} ≡ μ (mod n)` for `n ≥ 2`.
///
/// The two modes must agree; the exact oracle additionally requires
/// `φ(n) ≤ bounds.bernoulli_cap`.
pub fn bernoulli_check(
    f: &Factorization,
    mu: &BigInt,
    mode: BernoulliMode,
    bounds: &OracleBounds,
) -> Result<bool, PredicateError> {
    let n = f.value();
    debug_assert!(*n >= BigUint::from(2u32), "bernoulli_check requires n >= 2");
    let phi = euler_phi(f);
    match mode {
        BernoulliMode::Congruence => {
            // φ(n) is odd only for n = 2, where the closed form still holds
            // with k = 1; evaluate the prime-sum side directly either way.
            let rhs = prime_sum_rhs(f, &phi);
            Ok(rhs == mu_residue(mu, n))
        }
        BernoulliMode::ExactOracle => {
            if phi > BigUint::from(bounds.bernoulli_cap) {
                return Err(PredicateError::BernoulliBoundExceeded {
                    phi,
                    cap: bounds.bernoulli_cap,
                });
            }
            let k = phi.to_u32().expect("phi within u32 cap");
            let b = bernoulli_number(k).map_err(|_| PredicateError::BernoulliBoundExceeded {
                phi: BigUint::from(k),
                cap: bounds.bernoulli_cap,
            })?;
            let value = BigRational::from(BigInt::from(n.clone())) * b;
            let target = BigRational::from(mu.clone());
            Ok(rational_congruent(&value, &target, n))
        }
    }
}

/// Egyptian-fraction characterization: `μ/n + Σ_{p|n} 1/p ∈ ℤ`.  For μ = 1
/// and `n ≥ 2` the sum is positive, so integrality coincides with being a
/// positive integer.
pub fn egyptian_check(f: &Factorization, mu: &BigInt) -> bool {
    let n = BigInt::from(f.value().clone());
    let mut sum = BigRational::new(mu.clone(), n);
    for (p, _) in f.factors() {
        sum += BigRational::new(BigInt::one(), BigInt::from(p.clone()));
    }
    sum.is_integer()
}

/// Derivative characterization for μ = ±1: true iff the arithmetic
/// derivative satisfies `n′ = a·n − μ` for some integer `a ≥ 1`.
pub fn derivative_check(f: &Factorization, mu: &BigInt) -> Result<bool, PredicateError> {
    if !mu.magnitude().is_one() {
        return Err(PredicateError::MuNotUnit { mu: mu.clone() });
    }
    let n = BigInt::from(f.value().clone());
    let s = BigInt::from(arithmetic_derivative(f)) + mu;
    // n′ + μ = a·n with a ≥ 1.
    Ok(s >= n && s.is_multiple_of(&n))
}

/// Giuga numbers: composite `n` with `p | (n/p − 1)` for every prime
/// `p | n` — exactly the composite members for μ = −1.
pub fn is_giuga(f: &Factorization) -> bool {
    f.is_composite() && is_mu_sondow(f, &BigInt::from(-1)).member
}

/// Weak primary pseudoperfect numbers: the members for μ = 1, i.e. those
/// `n` with `1/n + Σ_{p|n} 1/p` a (positive) integer.
pub fn is_weak_ppp(f: &Factorization) -> bool {
    is_mu_sondow(f, &BigInt::one()).member
}

/// Primary pseudoperfect numbers: `n > 1` with the Egyptian fraction
/// equation `1/n + Σ_{p|n} 1/p = 1` holding exactly.
pub fn is_primary_ppp(f: &Factorization) -> Result<bool, PredicateError> {
    if f.is_one() {
        return Err(PredicateError::OneExcluded);
    }
    let mut sum = BigRational::new(BigInt::one(), BigInt::from(f.value().clone()));
    for (p, _) in f.factors() {
        sum += BigRational::new(BigInt::one(), BigInt::from(p.clone()));
    }
    Ok(sum.is_one())
}

/// Evaluates every characterization whose preconditions hold; oracles out
/// of range yield absent flags, never disagreement.
pub fn classify(f: &Factorization, mu: &BigInt, bounds: &OracleBounds) -> CharacterizationFlags {
    let divisibility = is_mu_sondow(f, mu).member;
    let power_sum = f
        .value()
        .to_u64()
        .filter(|&v| v <= bounds.power_sum_bound)
        .map(|v| {
            power_sum_check(v, mu, ExponentChoice::Phi, bounds).expect("n within oracle bound")
        });
    let bernoulli = if f.is_one() {
        None
    } else if euler_phi(f) <= BigUint::from(bounds.bernoulli_cap) {
        Some(
            bernoulli_check(f, mu, BernoulliMode::ExactOracle, bounds)
                .expect("phi within oracle cap"),
        )
    } else {
        None
    };
    let egyptian = egyptian_check(f, mu);
    let congruence_sum = congruence_sum_check(f, mu);
    let unit_mu = mu.is_one() || (mu.is_negative() && mu.magnitude().is_one() && f.is_composite());
    let derivative = if unit_mu {
        Some(derivative_check(f, mu).expect("mu is a unit"))
    } else {
        None
    };
    CharacterizationFlags {
        divisibility,
        power_sum,
        bernoulli,
        egyptian,
        congruence_sum,
        derivative,
    }
}

fn phi_u64(factors: &[(u64, u32)]) -> u64 {
    factors
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product()
}

fn lambda_u64(factors: &[(u64, u32)]) -> u64 {
    let mut lambda = 1u64;
    for &(p, e) in factors {
        let component = if p == 2 {
            match e {
                1 => 1,
                2 => 2,
                _ => 1u64 << (e - 2),
            }
        } else {
            p.pow(e - 1) * (p - 1)
        };
        lambda = lambda.lcm(&component);
    }
    lambda
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{factorize, FactorBudget};
    use alloc::vec;

    fn fac(n: u64) -> Factorization {
        factorize(&BigUint::from(n), &FactorBudget::default()).unwrap()
    }

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn canonical_mu_examples() {
        assert_eq!(canonical_mu(&fac(30)), BigUint::from(29u32));
        assert_eq!(canonical_mu(&fac(6)), BigUint::from(1u32));
        assert_eq!(canonical_mu(&fac(1)), BigUint::zero());
        assert_eq!(canonical_mu(&fac(10)), BigUint::from(3u32));
        assert_eq!(canonical_mu(&fac(9)), BigUint::from(6u32));
    }

    #[test]
    fn divisibility_examples() {
        let v = is_mu_sondow(&fac(25), &int(-5));
        assert!(v.member);
        assert_eq!(
            v.witnesses,
            vec![Witness {
                prime: BigUint::from(5u32),
                exponent: 2,
                residue: BigUint::zero(),
            }]
        );

        let v = is_mu_sondow(&fac(1), &int(17));
        assert!(v.member);
        assert!(v.witnesses.is_empty());

        let v = is_mu_sondow(&fac(4), &int(16));
        assert!(!v.member);
        assert_eq!(v.witnesses[0].residue, BigUint::from(2u32));
    }

    #[test]
    fn congruence_sum_examples() {
        assert!(congruence_sum_check(&fac(150), &int(-5)));
        assert!(congruence_sum_check(&fac(1), &int(123)));
        assert!(congruence_sum_check(&fac(1), &int(-9)));
        assert!(congruence_sum_check(&fac(858), &int(-1)));
        assert!(!congruence_sum_check(&fac(150), &int(-4)));
    }

    #[test]
    fn power_sum_examples() {
        let b = OracleBounds::default();
        assert_eq!(
            power_sum_check(6, &int(1), ExponentChoice::Phi, &b),
            Ok(true)
        );
        assert_eq!(
            power_sum_check(30, &int(-1), ExponentChoice::Phi, &b),
            Ok(true) // 30 is Giuga: Σ i^8 ≡ −1 (mod 30)
        );
        assert_eq!(
            power_sum_check(4, &int(1), ExponentChoice::Phi, &b),
            Ok(false)
        );
        assert_eq!(power_sum_check(1, &int(7), ExponentChoice::Phi, &b), Ok(true));
        assert_eq!(
            power_sum_check(30, &int(-1), ExponentChoice::Lambda, &b),
            Ok(true)
        );
        let tiny = OracleBounds {
            power_sum_bound: 10,
            ..OracleBounds::default()
        };
        assert_eq!(
            power_sum_check(100, &int(1), ExponentChoice::Phi, &tiny),
            Err(PredicateError::PowerSumBoundExceeded { n: 100, bound: 10 })
        );
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            power_sum_closed_form(&fac(30), &BigUint::from(8u32)),
            Ok(BigUint::from(29u32))
        );
        assert_eq!(
            power_sum_closed_form(&fac(6), &BigUint::from(4u32)),
            Ok(BigUint::from(1u32))
        );
        assert_eq!(
            power_sum_closed_form(&fac(15), &BigUint::from(2u32)),
            Ok(BigUint::from(10u32))
        );
        assert_eq!(
            power_sum_closed_form(&fac(30), &BigUint::from(7u32)),
            Err(PredicateError::OddExponent {
                k: BigUint::from(7u32)
            })
        );
    }

    #[test]
    fn bernoulli_examples() {
        let b = OracleBounds::default();
        assert_eq!(
            bernoulli_check(&fac(30), &int(-1), BernoulliMode::ExactOracle, &b),
            Ok(true)
        );
        assert_eq!(
            bernoulli_check(&fac(6), &int(1), BernoulliMode::ExactOracle, &b),
            Ok(true)
        );
        assert_eq!(
            bernoulli_check(&fac(4), &int(1), BernoulliMode::Congruence, &b),
            Ok(false)
        );
        // n = 2 has odd φ = 1; both modes must still work and agree.
        for mu in [int(1), int(-1), int(3)] {
            let c = bernoulli_check(&fac(2), &mu, BernoulliMode::Congruence, &b).unwrap();
            let e = bernoulli_check(&fac(2), &mu, BernoulliMode::ExactOracle, &b).unwrap();
            assert_eq!(c, e);
            assert!(c); // every odd μ works mod 2
        }
        let tight = OracleBounds {
            bernoulli_cap: 4,
            ..OracleBounds::default()
        };
        assert_eq!(
            bernoulli_check(&fac(30), &int(-1), BernoulliMode::ExactOracle, &tight),
            Err(PredicateError::BernoulliBoundExceeded {
                phi: BigUint::from(8u32),
                cap: 4
            })
        );
    }

    #[test]
    fn egyptian_examples() {
        assert!(egyptian_check(&fac(42), &int(1)));
        assert!(egyptian_check(&fac(1), &int(5)));
        assert!(egyptian_check(&fac(1), &int(-11)));
        assert!(egyptian_check(&fac(30), &int(-1)));
        assert!(!egyptian_check(&fac(30), &int(1)));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(derivative_check(&fac(42), &int(1)), Ok(true));
        assert_eq!(derivative_check(&fac(30), &int(-1)), Ok(true));
        assert_eq!(derivative_check(&fac(7), &int(-1)), Ok(false));
        assert_eq!(derivative_check(&fac(1), &int(1)), Ok(true));
        assert_eq!(
            derivative_check(&fac(30), &int(2)),
            Err(PredicateError::MuNotUnit { mu: int(2) })
        );
    }

    #[test]
    fn named_family_examples() {
        assert!(is_giuga(&fac(30)));
        assert!(!is_giuga(&fac(13)));
        assert!(is_giuga(&fac(1722)));
        assert!(!is_giuga(&fac(1)));

        assert!(is_weak_ppp(&fac(47058)));
        assert!(is_weak_ppp(&fac(1)));
        assert!(!is_weak_ppp(&fac(4)));

        assert_eq!(is_primary_ppp(&fac(2)), Ok(true));
        assert_eq!(is_primary_ppp(&fac(2214502422)), Ok(true));
        assert_eq!(is_primary_ppp(&fac(30)), Ok(false));
        assert_eq!(is_primary_ppp(&fac(1)), Err(PredicateError::OneExcluded));
    }

    #[test]
    fn classify_examples() {
        let b = OracleBounds::default();

        let flags = classify(&fac(1806), &int(1), &b);
        assert!(flags.consistent());
        assert!(flags.member());
        assert_eq!(flags.power_sum, Some(true));
        assert_eq!(flags.bernoulli, None); // φ(1806) = 504 > 500
        assert_eq!(flags.derivative, Some(true));

        let flags = classify(&fac(10), &int(3), &b);
        assert!(flags.consistent());
        assert!(flags.member());
        assert_eq!(flags.power_sum, Some(true));
        assert_eq!(flags.bernoulli, Some(true));
        assert_eq!(flags.derivative, None); // μ ∉ {−1, 1}

        let flags = classify(&fac(9), &int(6), &b);
        assert!(flags.consistent());
        assert!(flags.member());

        let flags = classify(&fac(13), &int(-1), &b);
        assert!(flags.consistent());
        assert!(flags.member()); // primes belong for μ = −1
        assert_eq!(flags.derivative, None); // but the derivative form needs composite n

        let flags = classify(&fac(4), &int(16), &b);
        assert!(flags.consistent());
        assert!(!flags.member());
    }
}
