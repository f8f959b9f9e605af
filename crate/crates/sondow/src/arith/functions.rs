//! Arithmetic functions evaluated on a canonical factorization: radical,
//! squarefree test, Euler φ, Carmichael λ, and the arithmetic derivative.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::factorization::Factorization;

/// Product of the distinct primes dividing the value (1 for the empty
/// product).
pub fn radical(f: &Factorization) -> BigUint {
    f.factors()
        .iter()
        .fold(BigUint::one(), |acc, (p, _)| acc * p)
}

/// True when no prime square divides the value.
pub fn is_squarefree(f: &Factorization) -> bool {
    f.factors().iter().all(|(_, e)| *e == 1)
}

/// Euler's totient: `φ(n) = ∏ p^(e−1) (p − 1)`.
pub fn euler_phi(f: &Factorization) -> BigUint {
    let mut phi = BigUint::one();
    for (p, e) in f.factors() {
        phi *= p.pow(e - 1) * (p - 1u32);
    }
    phi
}

/// Carmichael's function: the exponent of the multiplicative group mod `n`.
///
/// `λ(2) = 1`, `λ(4) = 2`, `λ(2^e) = 2^(e−2)` for `e ≥ 3`, and
/// `λ(p^e) = p^(e−1)(p − 1)` for odd `p`; values combine by lcm.
pub fn carmichael_lambda(f: &Factorization) -> BigUint {
    let mut lambda = BigUint::one();
    let two = BigUint::from(2u32);
    for (p, e) in f.factors() {
        let component = if *p == two {
            match e {
                1 => BigUint::one(),
                2 => two.clone(),
                _ => two.pow(e - 2),
            }
        } else {
            p.pow(e - 1) * (p - 1u32)
        };
        lambda = lambda.lcm(&component);
    }
    lambda
}

/// The arithmetic derivative `n′ = n · Σ_p e_p / p`, the unique map with
/// `p′ = 1` on primes and the Leibniz rule `(ab)′ = a′b + ab′`.
pub fn arithmetic_derivative(f: &Factorization) -> BigUint {
    let n = f.value();
    let mut d = BigUint::zero();
    for (p, e) in f.factors() {
        d += n / p * *e;
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factor::{factorize, FactorBudget};
    use core::str::FromStr;

    fn fac(n: u64) -> Factorization {
        factorize(&BigUint::from(n), &FactorBudget::default()).unwrap()
    }

    fn nat(s: &str) -> BigUint {
        BigUint::from_str(s).unwrap()
    }

    #[test]
    fn radical_and_squarefree() {
        assert_eq!(radical(&fac(1)), nat("1"));
        assert_eq!(radical(&fac(150)), nat("30"));
        assert_eq!(radical(&fac(1806)), nat("1806"));
        assert!(is_squarefree(&fac(1)));
        assert!(is_squarefree(&fac(30)));
        assert!(!is_squarefree(&fac(150)));
        assert!(!is_squarefree(&fac(48)));
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(&fac(1)), nat("1"));
        assert_eq!(euler_phi(&fac(2)), nat("1"));
        assert_eq!(euler_phi(&fac(10)), nat("4"));
        assert_eq!(euler_phi(&fac(30)), nat("8"));
        assert_eq!(euler_phi(&fac(1806)), nat("504"));
        assert_eq!(euler_phi(&fac(4608)), nat("1536"));
    }

    #[test]
    fn lambda_values() {
        assert_eq!(carmichael_lambda(&fac(1)), nat("1"));
        assert_eq!(carmichael_lambda(&fac(2)), nat("1"));
        assert_eq!(carmichael_lambda(&fac(4)), nat("2"));
        assert_eq!(carmichael_lambda(&fac(8)), nat("2"));
        assert_eq!(carmichael_lambda(&fac(16)), nat("4"));
        assert_eq!(carmichael_lambda(&fac(30)), nat("4"));
        assert_eq!(carmichael_lambda(&fac(1806)), nat("42"));
        // λ | φ always, with equality iff a primitive root exists
        for n in 1u64..=500 {
            let f = fac(n);
            let phi = euler_phi(&f);
            let lam = carmichael_lambda(&f);
            assert!(phi.is_multiple_of(&lam), "λ({n}) must divide φ({n})");
        }
    }

    #[test]
    fn derivative_values() {
        assert_eq!(arithmetic_derivative(&fac(1)), nat("0"));
        assert_eq!(arithmetic_derivative(&fac(7)), nat("1"));
        assert_eq!(arithmetic_derivative(&fac(30)), nat("31"));
        assert_eq!(arithmetic_derivative(&fac(42)), nat("41"));
        assert_eq!(arithmetic_derivative(&fac(1806)), nat("1805"));
        assert_eq!(arithmetic_derivative(&fac(48)), nat("112"));
        assert_eq!(arithmetic_derivative(&fac(858)), nat("859"));
    }

    #[test]
    fn derivative_leibniz_rule_spot_checks() {
        for (a, b) in [(6u64, 35u64), (8, 9), (12, 55), (30, 49)] {
            let da = arithmetic_derivative(&fac(a));
            let db = arithmetic_derivative(&fac(b));
            let dab = arithmetic_derivative(&fac(a * b));
            assert_eq!(dab, da * b + db * a);
        }
    }
}
