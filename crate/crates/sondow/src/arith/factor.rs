//! Integer factorization: trial division backed by Pollard–Brent rho.
//!
//! Machine-word inputs are always factored completely.  Arbitrary-precision
//! inputs run under an effort budget; when it runs out the error carries the
//! factors found so far plus the unfactored cofactor, so callers can fall
//! back to supplied factor lists.

use alloc::collections::BTreeMap;
use alloc::fmt;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::factorization::Factorization;
use super::mul_mod_u64;
use super::primality::{is_prime, is_prime_u64};

/// Effort limits for [`factorize`].  Trial division runs up to
/// `trial_limit`; afterwards rho may spend `rho_iterations` cycle steps in
/// total across all splits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorBudget {
    pub trial_limit: u64,
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_limit: 1_000_000,
            rho_iterations: 5_000_000,
        }
    }
}

/// Factoring failure: the budget ran out with a composite cofactor left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorError {
    BudgetExceeded {
        /// Prime powers established before the budget ran out.
        partial: Vec<(BigUint, u32)>,
        /// Product of the pieces that remain unfactored.
        cofactor: BigUint,
    },
}

impl fmt::Display for FactorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorError::BudgetExceeded { cofactor, .. } => {
                write!(f, "factoring budget exhausted; unfactored cofactor {cofactor}")
            }
        }
    }
}

impl core::error::Error for FactorError {}

/// Complete factorization of a machine word (`n ≥ 1`), as ordered
/// `(prime, exponent)` pairs.  Deterministic and budget-free: trial division
/// by a small wheel, then recursive rho splitting.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factor_u64 requires n >= 1");
    let mut out: BTreeMap<u64, u32> = BTreeMap::new();
    let mut m = n;
    for p in [2u64, 3, 5] {
        while m.is_multiple_of(p) {
            *out.entry(p).or_insert(0) += 1;
            m /= p;
        }
    }
    let mut d = 7u64;
    // 2,4-alternating wheel over 6k ± 1 up to a small cutoff; rho handles
    // the rest.
    let mut step = 4u64;
    while d <= 4096 && d * d <= m {
        while m.is_multiple_of(d) {
            *out.entry(d).or_insert(0) += 1;
            m /= d;
        }
        d += step;
        step = 6 - step;
    }
    let mut pending = Vec::new();
    if m > 1 {
        pending.push(m);
    }
    while let Some(v) = pending.pop() {
        if is_prime_u64(v) {
            *out.entry(v).or_insert(0) += 1;
            continue;
        }
        let f = rho_u64(v);
        pending.push(f);
        pending.push(v / f);
    }
    out.into_iter().collect()
}

/// Complete canonical factorization of `n ≥ 1` within the given budget.
pub fn factorize(n: &BigUint, budget: &FactorBudget) -> Result<Factorization, FactorError> {
    assert!(!n.is_zero(), "factorize requires n >= 1");
    if n.is_one() {
        return Ok(Factorization::one());
    }
    if let Some(small) = n.to_u64() {
        let factors = factor_u64(small)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect();
        return Ok(Factorization::from_parts_unchecked(n.clone(), factors));
    }

    let mut found: BTreeMap<BigUint, u32> = BTreeMap::new();
    let mut m = n.clone();

    // Trial division: 2, 3, then the 6k ± 1 wheel up to the budget limit.
    // The value has more than 64 bits here, so no sqrt cutoff applies yet.
    for p in [2u64, 3] {
        trial_divide(&mut m, p, &mut found);
    }
    let mut d = 5u64;
    let mut step = 2u64;
    while d <= budget.trial_limit {
        if m.is_one() {
            break;
        }
        if let Some(small) = m.to_u64() {
            for (p, e) in factor_u64(small) {
                *found.entry(BigUint::from(p)).or_insert(0) += e;
            }
            m = BigUint::one();
            break;
        }
        trial_divide(&mut m, d, &mut found);
        d += step;
        step = 6 - step;
    }

    // Rho phase over the remaining (large) cofactors.
    let mut iterations = budget.rho_iterations;
    let mut pending: Vec<BigUint> = Vec::new();
    let mut unfactored: Vec<BigUint> = Vec::new();
    if !m.is_one() {
        pending.push(m);
    }
    while let Some(v) = pending.pop() {
        if let Some(small) = v.to_u64() {
            for (p, e) in factor_u64(small) {
                *found.entry(BigUint::from(p)).or_insert(0) += e;
            }
            continue;
        }
        if is_prime(&v) {
            *found.entry(v).or_insert(0) += 1;
            continue;
        }
        // Perfect powers split exactly and defeat rho's worst case.
        if let Some(root) = perfect_power_root(&v) {
            let k = power_of(&v, &root);
            for _ in 0..k {
                pending.push(root.clone());
            }
            continue;
        }
        match rho_big(&v, &mut iterations) {
            Some(f) => {
                pending.push(&v / &f);
                pending.push(f);
            }
            None => unfactored.push(v),
        }
    }

    if unfactored.is_empty() {
        let factors: Vec<(BigUint, u32)> = found.into_iter().collect();
        Ok(Factorization::from_parts_unchecked(n.clone(), factors))
    } else {
        let cofactor = unfactored
            .into_iter()
            .fold(BigUint::one(), |acc, v| acc * v);
        Err(FactorError::BudgetExceeded {
            partial: found.into_iter().collect(),
            cofactor,
        })
    }
}

fn trial_divide(m: &mut BigUint, p: u64, found: &mut BTreeMap<BigUint, u32>) {
    let pb = BigUint::from(p);
    while (&*m % &pb).is_zero() {
        *found.entry(pb.clone()).or_insert(0) += 1;
        *m /= &pb;
    }
}

/// Smallest `r` with `v = r^k` for some `k ≥ 2`, if one exists.  Checking
/// prime exponents suffices; composite exponents fall out of the recursion.
fn perfect_power_root(v: &BigUint) -> Option<BigUint> {
    let bits = v.bits();
    let mut k = 2u32;
    while u64::from(k) <= bits {
        if is_prime_u64(u64::from(k)) {
            let root = v.nth_root(k);
            if root.pow(k) == *v {
                return Some(root);
            }
        }
        k += 1;
    }
    None
}

fn power_of(v: &BigUint, root: &BigUint) -> u32 {
    let mut k = 0u32;
    let mut acc = BigUint::one();
    while acc < *v {
        acc *= root;
        k += 1;
    }
    debug_assert_eq!(acc, *v);
    k
}

/// A nontrivial factor of an odd composite `n` (Brent's cycle variant).
fn rho_u64(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime_u64(n));
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        if let Some(d) = brent_u64(n, c) {
            return d;
        }
        c += 1;
    }
}

fn brent_u64(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| -> u64 {
        let sq = mul_mod_u64(x, x, n);
        let s = sq as u128 + c as u128;
        (s % n as u128) as u64
    };
    let mut y = 2u64;
    let mut r = 1u64;
    let mut q = 1u64;
    let mut g = 1u64;
    let mut x = y;
    let mut ys = y;
    const M: u64 = 128;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0u64;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..M.min(r - k) {
                y = f(y);
                q = mul_mod_u64(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += M;
        }
        r *= 2;
    }
    if g == n {
        // The batched gcd overshot; replay one step at a time.
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    if g == n {
        None
    } else {
        Some(g)
    }
}

/// Brent's rho on big integers with an iteration allowance.  Returns a
/// nontrivial (not necessarily prime) factor, or `None` when the allowance
/// runs out or the cycle degenerates.
fn rho_big(n: &BigUint, iterations: &mut u64) -> Option<BigUint> {
    let one = BigUint::one();
    let mut c = BigUint::from(1u32);
    while *iterations > 0 {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        const M: u64 = 64;
        'outer: while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                if *iterations == 0 {
                    break 'outer;
                }
                *iterations -= 1;
                y = f(&y);
            }
            let mut k = 0u64;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..M.min(r - k) {
                    if *iterations == 0 {
                        break 'outer;
                    }
                    *iterations -= 1;
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                g = q.gcd(n);
                k += M;
            }
            r *= 2;
        }
        if g.is_one() {
            return None; // allowance exhausted mid-cycle
        }
        if g == *n {
            loop {
                if *iterations == 0 {
                    return None;
                }
                *iterations -= 1;
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n && g > one {
            return Some(g);
        }
        // Degenerate cycle for this polynomial; try the next constant.
        c += 1u32;
    }
    None
}
