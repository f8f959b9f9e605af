//! Constructive maps between the μ-Sondow families.
//!
//! Three classical constructions, each re-verified on output so every call
//! doubles as a check of the identity it implements:
//!
//! - **Successor extension** ([`extend_by_successor`]): if `n` is a weak
//!   primary pseudoperfect number and `n + 1` is prime, then `n(n + 1)` is
//!   weak primary pseudoperfect again (the chain 2, 6, 42, 1806).
//! - **Radical lift** ([`lift`]): for `|μ| > 1`, `|μ|·n ∈ 𝔖_μ` if and only
//!   if `Rad(|μ|) | n` and `n ∈ 𝔖_{sgn μ}`; [`lift_converse_check`]
//!   decomposes a claimed member accordingly.
//! - **Gcd reduction** ([`reduce_by_gcd`]): if `n ∈ 𝔖_μ` and
//!   `δ = gcd(n, μ)`, then `n/δ` is squarefree and `(μ/δ)`-Sondow.

use alloc::collections::BTreeMap;
use alloc::fmt;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{
    factorize, gcd, is_prime, radical, FactorBudget, FactorError, Factorization,
};
use crate::predicates::{is_mu_sondow, is_weak_ppp};

/// Outcome of [`lift`]: the scaled member `|μ|·n` together with its
/// factorization and the re-verification verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftResult {
    pub input_n: BigUint,
    pub input_mu: BigInt,
    pub output_n: BigUint,
    pub output_mu: BigInt,
    pub output_factorization: Factorization,
    pub verified: bool,
}

/// Outcome of [`lift_converse_check`]: the cofactor `n = value / |μ|` and
/// the two conditions whose conjunction is equivalent to `value ∈ 𝔖_μ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftConverse {
    pub n: BigUint,
    pub radical_divides: bool,
    pub base_member: bool,
}

/// Failure modes of the constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    /// Successor extension starts from a weak primary pseudoperfect number.
    NotWeakPpp { n: BigUint },
    /// Successor extension needs `n + 1` prime.
    SuccessorComposite { successor: BigUint },
    /// The lift is defined for `|μ| > 1`.
    MuTooSmall { mu: BigInt },
    /// `Rad(|μ|)` must divide `n` for the lift to apply.
    RadicalDoesNotDivide { radical: BigUint, n: BigUint },
    /// The input is not a member of the required family.
    NotMember { n: BigUint, mu: BigInt },
    /// The converse decomposition needs `|μ|` to divide the value.
    NotAMultiple { value: BigUint, mu: BigInt },
    /// Gcd reduction is undefined for μ = 0.
    ZeroMu,
    /// An output failed its re-verification — a defect, never expected.
    PostconditionFailed { detail: &'static str },
    /// Factoring `|μ|` exceeded its budget.
    Factor(FactorError),
}

impl fmt::Display for ConstructionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionError::NotWeakPpp { n } => {
                write!(f, "{n} is not a weak primary pseudoperfect number")
            }
            ConstructionError::SuccessorComposite { successor } => {
                write!(f, "successor {successor} is not prime")
            }
            ConstructionError::MuTooSmall { mu } => {
                write!(f, "lift requires |mu| > 1, got {mu}")
            }
            ConstructionError::RadicalDoesNotDivide { radical, n } => {
                write!(f, "radical {radical} of |mu| does not divide {n}")
            }
            ConstructionError::NotMember { n, mu } => {
                write!(f, "{n} is not {mu}-Sondow")
            }
            ConstructionError::NotAMultiple { value, mu } => {
                write!(f, "|mu| = |{mu}| does not divide {value}")
            }
            ConstructionError::ZeroMu => write!(f, "gcd reduction is undefined for mu = 0"),
            ConstructionError::PostconditionFailed { detail } => {
                write!(f, "construction postcondition failed: {detail}")
            }
            ConstructionError::Factor(e) => write!(f, "factoring mu failed: {e}"),
        }
    }
}

impl core::error::Error for ConstructionError {}

impl From<FactorError> for ConstructionError {
    fn from(e: FactorError) -> Self {
        ConstructionError::Factor(e)
    }
}

/// Extends a weak primary pseudoperfect number `n` with prime successor to
/// `n(n + 1)`, which is weak primary pseudoperfect again.
pub fn extend_by_successor(f: &Factorization) -> Result<Factorization, ConstructionError> {
    if !is_weak_ppp(f) {
        return Err(ConstructionError::NotWeakPpp {
            n: f.value().clone(),
        });
    }
    let successor = f.value() + 1u32;
    if !is_prime(&successor) {
        return Err(ConstructionError::SuccessorComposite { successor });
    }
    // The successor exceeds every existing prime factor, so appending keeps
    // the canonical order.
    let mut factors: Vec<(BigUint, u32)> = f.factors().to_vec();
    factors.push((successor.clone(), 1));
    let product = f.value() * &successor;
    let extended = Factorization::from_parts_unchecked(product, factors);
    if !is_weak_ppp(&extended) {
        return Err(ConstructionError::PostconditionFailed {
            detail: "successor extension did not yield a weak primary pseudoperfect number",
        });
    }
    Ok(extended)
}

/// Scales a member of `𝔖_{sgn μ}` to a member of `𝔖_μ`: requires
/// `Rad(|μ|) | n`, produces `|μ|·n`, and re-verifies the output.
pub fn lift(f: &Factorization, mu: &BigInt) -> Result<LiftResult, ConstructionError> {
    let mu_abs = mu.magnitude();
    if mu_abs <= &BigUint::one() {
        return Err(ConstructionError::MuTooSmall { mu: mu.clone() });
    }
    let mu_fac = factorize(mu_abs, &FactorBudget::default())?;
    let rad = radical(&mu_fac);
    if !f.value().is_multiple_of(&rad) {
        return Err(ConstructionError::RadicalDoesNotDivide {
            radical: rad,
            n: f.value().clone(),
        });
    }
    let sign = if mu.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    if !is_mu_sondow(f, &sign).member {
        return Err(ConstructionError::NotMember {
            n: f.value().clone(),
            mu: sign,
        });
    }
    let output_n = f.value() * mu_abs;
    let output_factorization = merge(f, &mu_fac);
    let verified = is_mu_sondow(&output_factorization, mu).member;
    if !verified {
        return Err(ConstructionError::PostconditionFailed {
            detail: "lifted value failed its membership re-verification",
        });
    }
    Ok(LiftResult {
        input_n: f.value().clone(),
        input_mu: mu.clone(),
        output_n,
        output_mu: mu.clone(),
        output_factorization,
        verified,
    })
}

/// Decomposes `value = |μ|·n` and reports the two lift conditions
/// (`Rad(|μ|) | n` and `n ∈ 𝔖_{sgn μ}`), whose conjunction is equivalent
/// to `value ∈ 𝔖_μ`.
pub fn lift_converse_check(
    f_of_mun: &Factorization,
    mu: &BigInt,
) -> Result<LiftConverse, ConstructionError> {
    let mu_abs = mu.magnitude();
    if mu_abs <= &BigUint::one() {
        return Err(ConstructionError::MuTooSmall { mu: mu.clone() });
    }
    if !f_of_mun.value().is_multiple_of(mu_abs) {
        return Err(ConstructionError::NotAMultiple {
            value: f_of_mun.value().clone(),
            mu: mu.clone(),
        });
    }
    let mu_fac = factorize(mu_abs, &FactorBudget::default())?;
    let n_fac = divide_out(f_of_mun, &mu_fac);
    let rad = radical(&mu_fac);
    let radical_divides = n_fac.value().is_multiple_of(&rad);
    let sign = if mu.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let base_member = is_mu_sondow(&n_fac, &sign).member;
    Ok(LiftConverse {
        n: n_fac.value().clone(),
        radical_divides,
        base_member,
    })
}

/// Divides a member `n ∈ 𝔖_μ` by `δ = gcd(n, μ)`: the quotient `n/δ` is
/// squarefree and `(μ/δ)`-Sondow.  Returns the reduced factorization and
/// reduced μ (unchanged when the gcd is 1).
pub fn reduce_by_gcd(
    f: &Factorization,
    mu: &BigInt,
) -> Result<(Factorization, BigInt), ConstructionError> {
    if mu.is_zero() {
        return Err(ConstructionError::ZeroMu);
    }
    if !is_mu_sondow(f, mu).member {
        return Err(ConstructionError::NotMember {
            n: f.value().clone(),
            mu: mu.clone(),
        });
    }
    let n_int = BigInt::from(f.value().clone());
    let delta = gcd(&n_int, mu);
    let delta_int = BigInt::from(delta.clone());
    let reduced_mu = mu / &delta_int;
    let reduced = divide_by(f, &delta);
    if !crate::arith::is_squarefree(&reduced) {
        return Err(ConstructionError::PostconditionFailed {
            detail: "gcd reduction did not yield a squarefree value",
        });
    }
    if !is_mu_sondow(&reduced, &reduced_mu).member {
        return Err(ConstructionError::PostconditionFailed {
            detail: "gcd reduction failed its membership re-verification",
        });
    }
    Ok((reduced, reduced_mu))
}

/// Product of two factorizations as a merged canonical factorization.
fn merge(a: &Factorization, b: &Factorization) -> Factorization {
    let mut map: BTreeMap<BigUint, u32> = BTreeMap::new();
    for (p, e) in a.factors().iter().chain(b.factors()) {
        *map.entry(p.clone()).or_insert(0) += e;
    }
    Factorization::from_parts_unchecked(a.value() * b.value(), map.into_iter().collect())
}

/// Quotient `a / d` as a factorization, for `d | a` with `d`'s primes among
/// `a`'s.
fn divide_out(a: &Factorization, d: &Factorization) -> Factorization {
    let mut map: BTreeMap<BigUint, u32> = a.factors().iter().cloned().collect();
    for (p, e) in d.factors() {
        let slot = map.get_mut(p).expect("divisor prime present in value");
        debug_assert!(*slot >= *e, "divisor exponent exceeds value's");
        *slot -= e;
        if *slot == 0 {
            map.remove(p);
        }
    }
    Factorization::from_parts_unchecked(a.value() / d.value(), map.into_iter().collect())
}

/// Quotient `a / d` as a factorization for a plain divisor `d | a`, found by
/// stripping each prime's share of `d`.
fn divide_by(a: &Factorization, d: &BigUint) -> Factorization {
    let mut map: BTreeMap<BigUint, u32> = a.factors().iter().cloned().collect();
    let mut rest = d.clone();
    for (p, _) in a.factors() {
        while rest.is_multiple_of(p) {
            rest /= p;
            let slot = map.get_mut(p).expect("prime present");
            debug_assert!(*slot >= 1, "dividing out more than available");
            *slot -= 1;
            if *slot == 0 {
                map.remove(p);
            }
        }
    }
    debug_assert!(rest.is_one(), "divisor has a prime outside the value");
    Factorization::from_parts_unchecked(a.value() / d, map.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize;
    use alloc::string::ToString;

    fn fac(n: u64) -> Factorization {
        factorize(&BigUint::from(n), &FactorBudget::default()).unwrap()
    }

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn successor_chain_from_two() {
        let mut f = fac(2);
        let mut chain = alloc::vec![f.value().clone()];
        loop {
            match extend_by_successor(&f) {
                Ok(next) => {
                    chain.push(next.value().clone());
                    f = next;
                }
                Err(ConstructionError::SuccessorComposite { successor }) => {
                    assert_eq!(successor, BigUint::from(1807u32)); // 13 · 139
                    break;
                }
                Err(other) => panic!("unexpected error {other:?}"),
            }
        }
        let expected: Vec<BigUint> = [2u64, 6, 42, 1806]
            .iter()
            .map(|&v| BigUint::from(v))
            .collect();
        assert_eq!(chain, expected);
    }

    #[test]
    fn successor_requires_weak_ppp() {
        assert_eq!(
            extend_by_successor(&fac(10)),
            Err(ConstructionError::NotWeakPpp {
                n: BigUint::from(10u32)
            })
        );
    }

    #[test]
    fn lift_examples() {
        let r = lift(&fac(6), &int(8)).unwrap();
        assert_eq!(r.output_n, BigUint::from(48u32));
        assert!(r.verified);
        assert_eq!(r.output_factorization.to_string(), "2^4 * 3");

        let r = lift(&fac(30), &int(-5)).unwrap();
        assert_eq!(r.output_n, BigUint::from(150u32));
        assert_eq!(r.output_factorization.to_string(), "2 * 3 * 5^2");

        let r = lift(&fac(5), &int(-5)).unwrap();
        assert_eq!(r.output_n, BigUint::from(25u32));
        assert_eq!(r.output_factorization.to_string(), "5^2");
    }

    #[test]
    fn lift_rejections() {
        assert_eq!(
            lift(&fac(6), &int(1)),
            Err(ConstructionError::MuTooSmall { mu: int(1) })
        );
        assert_eq!(
            lift(&fac(6), &int(25)),
            Err(ConstructionError::RadicalDoesNotDivide {
                radical: BigUint::from(5u32),
                n: BigUint::from(6u32),
            })
        );
        assert_eq!(
            lift(&fac(10), &int(20)),
            Err(ConstructionError::NotMember {
                n: BigUint::from(10u32),
                mu: int(1),
            })
        );
    }

    #[test]
    fn lift_converse_examples() {
        assert_eq!(
            lift_converse_check(&fac(48), &int(8)).unwrap(),
            LiftConverse {
                n: BigUint::from(6u32),
                radical_divides: true,
                base_member: true,
            }
        );
        assert_eq!(
            lift_converse_check(&fac(40), &int(8)).unwrap(),
            LiftConverse {
                n: BigUint::from(5u32),
                radical_divides: false,
                base_member: false,
            }
        );
        assert_eq!(
            lift_converse_check(&fac(150), &int(-5)).unwrap(),
            LiftConverse {
                n: BigUint::from(30u32),
                radical_divides: true,
                base_member: true,
            }
        );
        assert_eq!(
            lift_converse_check(&fac(30), &int(7)),
            Err(ConstructionError::NotAMultiple {
                value: BigUint::from(30u32),
                mu: int(7),
            })
        );
    }

    #[test]
    fn reduce_examples() {
        let (reduced, mu) = reduce_by_gcd(&fac(150), &int(-5)).unwrap();
        assert_eq!(reduced.value(), &BigUint::from(30u32));
        assert_eq!(mu, int(-1));

        let (reduced, mu) = reduce_by_gcd(&fac(48), &int(8)).unwrap();
        assert_eq!(reduced.value(), &BigUint::from(6u32));
        assert_eq!(mu, int(1));

        // coprime gcd leaves the pair untouched
        let (reduced, mu) = reduce_by_gcd(&fac(30), &int(-1)).unwrap();
        assert_eq!(reduced.value(), &BigUint::from(30u32));
        assert_eq!(mu, int(-1));

        assert_eq!(
            reduce_by_gcd(&fac(10), &int(1)),
            Err(ConstructionError::NotMember {
                n: BigUint::from(10u32),
                mu: int(1),
            })
        );
        assert_eq!(reduce_by_gcd(&fac(6), &int(0)), Err(ConstructionError::ZeroMu));
    }

    #[test]
    fn round_trip_lift_then_reduce() {
        for (n, mu) in [(6u64, 8i64), (6, 12), (42, 42), (1806, 6), (2, 16), (30, -30)] {
            let lifted = lift(&fac(n), &int(mu)).unwrap();
            assert!(lifted.verified, "lift({n}, {mu}) must verify");
            let (reduced, reduced_mu) = reduce_by_gcd(
                &lifted.output_factorization,
                &lifted.output_mu,
            )
            .unwrap();
            assert!(is_mu_sondow(&reduced, &reduced_mu).member);
        }
    }
}
