//! Detection, construction, and classification of μ-Sondow numbers.
//!
//! A positive integer `n` is *μ-Sondow* for an integer `μ` when every prime
//! power `p^s` exactly dividing `n` also divides `n/p + μ`.  Writing `𝔖_μ`
//! for the set of μ-Sondow numbers, two classical families fall out as the
//! `μ = ∓1` cases:
//!
//! * `𝔖_{−1}` consists of 1, the primes, and the *Giuga numbers*
//!   (composite `n` with `p | (n/p − 1)` for every prime `p | n`);
//! * `𝔖_1` consists of the *weak primary pseudoperfect numbers*
//!   (`1/n + Σ_{p|n} 1/p` a positive integer), which contain the primary
//!   pseudoperfect numbers (`1/n + Σ_{p|n} 1/p = 1`).
//!
//! Membership in `𝔖_μ` has five equivalent characterizations, each
//! implemented independently in [`predicates`] so they can cross-validate:
//!
//! 1. the per-prime-power divisibility above ([`predicates::is_mu_sondow`]);
//! 2. `Σ_{i=1}^{n−1} i^{φ(n)} ≡ μ (mod n)` ([`predicates::power_sum_check`]);
//! 3. `n·B_{φ(n)} ≡ μ (mod n)` as a rational congruence, `B_k` the k-th
//!    Bernoulli number ([`predicates::bernoulli_check`]);
//! 4. `μ/n + Σ_{p|n} 1/p ∈ ℤ` ([`predicates::egyptian_check`]);
//! 5. `Σ_{p|n} n/p + μ ≡ 0 (mod n)` ([`predicates::congruence_sum_check`]).
//!
//! Equivalently: membership depends on `μ` only through `μ mod n`, and the
//! member class is the canonical residue `μ* = (−Σ_{p|n} n/p) mod n`
//! ([`predicates::canonical_mu`]).
//!
//! The [`constructions`] module maps between the families: if `n` is weak
//! primary pseudoperfect and `n + 1` is prime then `n(n+1)` is weak primary
//! pseudoperfect; `|μ|·n ∈ 𝔖_μ` iff `Rad(|μ|) | n` and `n ∈ 𝔖_{sgn μ}`; and
//! for a member `n ∈ 𝔖_μ` with `δ = gcd(n, μ)`, the quotient `n/δ` is
//! squarefree and `(μ/δ)`-Sondow.
//!
//! The crate is `no_std` (with `alloc`); all values are arbitrary precision.
//! Range scanning and IO live in the companion `sondow-cli` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arith;
pub mod constructions;
pub mod predicates;

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;

pub use arith::factorization::Factorization;
pub use predicates::{CharacterizationFlags, OracleBounds, SondowVerdict};
