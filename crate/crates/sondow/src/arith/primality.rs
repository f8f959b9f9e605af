//! Primality testing: deterministic Miller–Rabin on 64-bit words, and a
//! Baillie–PSW-style test (strong base-2 Miller–Rabin plus a strong Lucas
//! test with Selfridge parameters) for larger values.
//!
//! The large-integer path is probabilistic in principle — no composite is
//! known to pass Baillie–PSW, but no proof excludes one.  Every constant this
//! project cares about is additionally verified against supplied factor
//! lists, so the test is used as a gate, never as a certificate.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{mod_pow_u64, mul_mod_u64};

/// Miller–Rabin witnesses that decide primality for every `n < 2^64`.
const MR_BASES_U64: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

/// Deterministic primality for machine words.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES_U64 {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = mod_pow_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality for arbitrary-precision integers: deterministic below `2^64`,
/// Baillie–PSW-style above.
pub fn is_prime(n: &BigUint) -> bool {
    match n.to_u64() {
        Some(small) => is_prime_u64(small),
        None => baillie_psw(n),
    }
}

/// Strong base-2 Miller–Rabin followed by a strong Lucas test with Selfridge
/// parameters.  Callers guarantee `n ≥ 2^64` (and therefore odd checks etc.
/// are still performed here for safety).
pub(crate) fn baillie_psw(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    if n.is_even() {
        return *n == two;
    }
    // Cheap trial division screen.
    for p in [3u32, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    if !miller_rabin_base(n, &two) {
        return false;
    }
    // A perfect square has Jacobi(D/n) ≠ −1 for every D in the Selfridge
    // sequence, so rule squares out before searching.
    let root = n.sqrt();
    if &root * &root == *n {
        return false;
    }
    let d = match selfridge_d(n) {
        Some(d) => d,
        None => return false, // shares a factor with some small D
    };
    strong_lucas(n, d)
}

/// One strong Miller–Rabin round to the given base.
fn miller_rabin_base(n: &BigUint, base: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut x = base.modpow(&d, n);
    if x == one || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = x.modpow(&BigUint::from(2u32), n);
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// First D in 5, −7, 9, −11, … with Jacobi(D/n) = −1 (Selfridge's method).
/// Returns `None` when a candidate exposes a proper factor of `n`.  The
/// sequence terminates for every non-square `n`, which the caller has
/// already ensured.
fn selfridge_d(n: &BigUint) -> Option<BigInt> {
    let n_int = BigInt::from(n.clone());
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, n) {
            -1 => return Some(d),
            0 => {
                // Jacobi 0 means gcd(|D|, n) > 1.  A divisor strictly
                // between 1 and n proves n composite; n | D says nothing
                // and the search moves on.
                let g = d.gcd(&n_int);
                if g.magnitude() != n {
                    return None;
                }
            }
            _ => {}
        }
        d = if d.is_positive() {
            -(d + BigInt::from(2))
        } else {
            -(d - BigInt::from(2))
        };
    }
}

/// Jacobi symbol (a/n) for odd n ≥ 1.
pub(crate) fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    debug_assert!(n.is_odd());
    let mut a = a.mod_floor(&BigInt::from(n.clone())).magnitude().clone();
    let mut n = n.clone();
    let mut sign = 1i32;
    while !a.is_zero() {
        let twos = a.trailing_zeros().unwrap_or(0);
        if twos > 0 {
            a >>= twos;
            // (2/n) = −1 iff n ≡ ±3 (mod 8); applied once per power of 2.
            let n_mod_8 = (&n % BigUint::from(8u32)).to_u32().unwrap();
            if twos % 2 == 1 && (n_mod_8 == 3 || n_mod_8 == 5) {
                sign = -sign;
            }
        }
        // Quadratic reciprocity flip.
        let a_mod_4 = (&a % BigUint::from(4u32)).to_u32().unwrap();
        let n_mod_4 = (&n % BigUint::from(4u32)).to_u32().unwrap();
        if a_mod_4 == 3 && n_mod_4 == 3 {
            sign = -sign;
        }
        core::mem::swap(&mut a, &mut n);
        a %= &n;
    }
    if n.is_one() {
        sign
    } else {
        0
    }
}

/// Strong Lucas probable-prime test with P = 1, Q = (1 − D)/4.
fn strong_lucas(n: &BigUint, d: BigInt) -> bool {
    let n_int = BigInt::from(n.clone());
    let q = (BigInt::one() - &d) / BigInt::from(4);
    let d_mod = d.mod_floor(&n_int).magnitude().clone();
    let q_mod = q.mod_floor(&n_int).magnitude().clone();

    // n + 1 = t · 2^s with t odd.
    let n_plus_1 = n + BigUint::one();
    let s = n_plus_1.trailing_zeros().unwrap_or(0);
    let t = &n_plus_1 >> s;

    // Ladder for U_t, V_t, Q^t (mod n), msb-first over t; P = 1.
    let mut u = BigUint::one();
    let mut v = BigUint::one();
    let mut qk = q_mod.clone();
    let bits = t.bits();
    for i in (0..bits - 1).rev() {
        // Double the index: U_{2k} = U_k V_k, V_{2k} = V_k² − 2 Q^k.
        u = &u * &v % n;
        v = sub_mod(&(&v * &v % n), &(BigUint::from(2u32) * &qk % n), n);
        qk = &qk * &qk % n;
        if t.bit(i) {
            // Increment the index: halving uses (x odd ? x + n : x) / 2.
            let new_u = halve_mod(&add_mod(&u, &v, n), n);
            let new_v = halve_mod(&add_mod(&(&d_mod * &u % n), &v, n), n);
            u = new_u;
            v = new_v;
            qk = &qk * &q_mod % n;
        }
    }

    if u.is_zero() || v.is_zero() {
        return true;
    }
    // Check V_{t·2^r} for 1 ≤ r < s.
    for _ in 1..s {
        v = sub_mod(&(&v * &v % n), &(BigUint::from(2u32) * &qk % n), n);
        if v.is_zero() {
            return true;
        }
        qk = &qk * &qk % n;
    }
    false
}

fn add_mod(a: &BigUint, b: &BigUint, n: &BigUint) -> BigUint {
    let s = a + b;
    if s >= *n {
        s % n
    } else {
        s
    }
}

fn sub_mod(a: &BigUint, b: &BigUint, n: &BigUint) -> BigUint {
    if a >= b {
        a - b
    } else {
        n - (b - a)
    }
}

/// x/2 mod n for odd n, x in [0, n).
fn halve_mod(x: &BigUint, n: &BigUint) -> BigUint {
    if x.is_even() {
        x >> 1
    } else {
        (x + n) >> 1
    }
}
