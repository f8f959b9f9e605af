//! The three constructions against the laws they implement: successor
//! chains, radical lifts with the exhaustive converse, and gcd reduction
//! round trips.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use sondow::arith::{factor_u64, radical, Factorization};
use sondow::constructions::{
    extend_by_successor, lift, lift_converse_check, reduce_by_gcd, ConstructionError,
};
use sondow::predicates::is_mu_sondow;

fn factorization_u64(n: u64) -> Factorization {
    let factors = factor_u64(n)
        .into_iter()
        .map(|(p, e)| (BigUint::from(p), e))
        .collect();
    Factorization::from_prime_powers(factors).expect("factor_u64 output is canonical")
}

#[test]
fn successor_chain_grows_until_the_composite_successor() {
    let mut f = factorization_u64(2);
    let mut chain = vec![2u64];
    loop {
        match extend_by_successor(&f) {
            Ok(next) => {
                chain.push(next.value().to_string().parse().unwrap());
                f = next;
            }
            Err(ConstructionError::SuccessorComposite { successor }) => {
                assert_eq!(successor, BigUint::from(1807u32)); // 1807 = 13 * 139
                break;
            }
            Err(other) => panic!("unexpected failure: {other}"),
        }
    }
    assert_eq!(chain, vec![2, 6, 42, 1806]);
}

fn mu_members(mu: i64, hi: u64) -> Vec<u64> {
    let mu = BigInt::from(mu);
    (1..=hi)
        .filter(|&n| is_mu_sondow(&factorization_u64(n), &mu).member)
        .collect()
}

#[test]
fn lift_and_converse_are_exhaustively_equivalent() {
    // mu n is a member of S_mu exactly when Rad(|mu|) | n and n is a
    // member of S_{sgn mu}; checked for every multiple of mu up to the
    // bound, both signs.
    for mu_abs in 2..=30i64 {
        for mu in [mu_abs, -mu_abs] {
            let mu_big = BigInt::from(mu);
            let base: Vec<u64> = mu_members(mu.signum(), 1);
            assert_eq!(base, vec![1]); // sanity: 1 is in every family
            for n in 1..=(200_000 / mu_abs as u64) {
                let value = mu_abs as u64 * n;
                let f = factorization_u64(value);
                let member = is_mu_sondow(&f, &mu_big).member;
                let converse = lift_converse_check(&f, &mu_big).unwrap();
                assert_eq!(converse.n, BigUint::from(n));
                assert_eq!(
                    member,
                    converse.radical_divides && converse.base_member,
                    "converse mismatch at value = {value}, mu = {mu}"
                );

                // And the forward lift agrees whenever its preconditions hold.
                let n_fac = factorization_u64(n);
                let rad = radical(&factorization_u64(mu_abs as u64));
                let sign_member = is_mu_sondow(&n_fac, &BigInt::from(mu.signum())).member;
                if n_fac.value().is_multiple_of(&rad) && sign_member {
                    let lifted = lift(&n_fac, &mu_big).expect("preconditions hold");
                    assert!(lifted.verified);
                    assert_eq!(lifted.output_n, BigUint::from(value));
                    assert!(member, "lift produced {value} but membership says no");
                } else {
                    assert!(!member, "member {value} without lift preconditions");
                }
            }
        }
    }
}

#[test]
fn lift_rejects_bad_inputs() {
    let six = factorization_u64(6);
    assert!(matches!(
        lift(&six, &BigInt::from(1)),
        Err(ConstructionError::MuTooSmall { .. })
    ));
    assert!(matches!(
        lift(&six, &BigInt::from(5)), // Rad(5) = 5 does not divide 6
        Err(ConstructionError::RadicalDoesNotDivide { .. })
    ));
    let four = factorization_u64(4);
    assert!(matches!(
        lift(&four, &BigInt::from(2)), // 4 is not a weak member
        Err(ConstructionError::NotMember { .. })
    ));
}

#[test]
fn reduction_inverts_lifting() {
    // Lift a base member by mu, then divide the gcd back out: the reduced
    // pair must be a squarefree member of the reduced family.
    for mu_abs in 2..=20u64 {
        for sign in [1i64, -1] {
            let mu = BigInt::from(sign * mu_abs as i64);
            let rad = radical(&factorization_u64(mu_abs));
            for n in mu_members(sign, 5000) {
                if !BigUint::from(n).is_multiple_of(&rad) {
                    continue;
                }
                let lifted = lift(&factorization_u64(n), &mu).unwrap();
                let (reduced, reduced_mu) = reduce_by_gcd(&lifted.output_factorization, &mu)
                    .expect("lifted member reduces");
                assert!(sondow::arith::is_squarefree(&reduced));
                assert!(is_mu_sondow(&reduced, &reduced_mu).member);
                // The reduced shift divides the original.
                assert!(mu.is_multiple_of(&reduced_mu));
            }
        }
    }
}

#[test]
fn reduce_by_gcd_requires_membership_and_nonzero_mu() {
    let thirty = factorization_u64(30);
    assert!(matches!(
        reduce_by_gcd(&thirty, &BigInt::ZERO),
        Err(ConstructionError::ZeroMu)
    ));
    assert!(matches!(
        reduce_by_gcd(&thirty, &BigInt::from(7)),
        Err(ConstructionError::NotMember { .. })
    ));
    // 150 in S_{-5} reduces by gcd 5 to 30 in S_{-1}.
    let (reduced, reduced_mu) = reduce_by_gcd(&factorization_u64(150), &BigInt::from(-5)).unwrap();
    assert_eq!(reduced.value(), &BigUint::from(30u32));
    assert_eq!(reduced_mu, BigInt::from(-1));
}
