mod common;

use common::{any_conductor, cyclotomic_in, field, small_rational};
use hodgeloci::exactnum::{cyclotomic_polynomial, integer, rational, CyclotomicNumber};
use num_bigint::BigInt;
use proptest::prelude::*;

fn triple() -> impl Strategy<Value = (CyclotomicNumber, CyclotomicNumber, CyclotomicNumber)> {
    any_conductor().prop_flat_map(|m| (cyclotomic_in(m), cyclotomic_in(m), cyclotomic_in(m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ring_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &a.one_like(), a.clone());
    }

    #[test]
    fn inverses((a, b, _) in triple()) {
        if a.is_zero() {
            prop_assert!(a.inv().is_err());
        } else {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert_eq!(&b.checked_div(&a).unwrap() * &a, b);
        }
    }

    #[test]
    fn galois_and_conjugation_are_ring_maps((a, b, _) in triple(), k in 1i64..40) {
        let m = a.conductor() as i64;
        let k = (1..=k).rev().find(|j| num_integer::Integer::gcd(j, &m) == 1).unwrap_or(1);
        prop_assert_eq!((&a * &b).galois(k), &a.galois(k) * &b.galois(k));
        prop_assert_eq!((&a + &b).galois(k), &a.galois(k) + &b.galois(k));
        prop_assert_eq!(a.conj().conj(), a.clone());
        // z·z̄ is fixed by conjugation
        let n = &a * &a.conj();
        prop_assert_eq!(n.conj(), n);
    }

    #[test]
    fn promotion_preserves_arithmetic((a, b, _) in triple(), mult in 1u32..4) {
        let target = a.conductor() * mult * 2;
        let (pa, pb) = (a.promote(target).unwrap(), b.promote(target).unwrap());
        prop_assert_eq!((&a * &b).promote(target).unwrap(), &pa * &pb);
        prop_assert_eq!(pa.demote(a.conductor()).unwrap(), a);
    }

    #[test]
    fn rationals_embed((p, q) in small_rational(), m in any_conductor()) {
        let x = CyclotomicNumber::from_rational(m, &rational(p, q)).unwrap();
        prop_assert_eq!(x.as_rational(), Some(rational(p, q)));
    }

    #[test]
    fn unit_circle_of_conjugate_quotients(a in cyclotomic_in(12)) {
        prop_assume!(!a.is_zero());
        let u = a.checked_div(&a.conj()).unwrap();
        prop_assert!(u.unit_circle_check());
    }
}

#[test]
fn cyclotomic_polynomials_match_known_values() {
    let as_ints = |m| cyclotomic_polynomial(m).into_iter().map(|c| c.try_into().unwrap()).collect::<Vec<i64>>();
    assert_eq!(as_ints(1), vec![-1, 1]);
    assert_eq!(as_ints(6), vec![1, -1, 1]);
    assert_eq!(as_ints(8), vec![1, 0, 0, 0, 1]);
    assert_eq!(as_ints(12), vec![1, 0, -1, 0, 1]);
    assert_eq!(as_ints(10), vec![1, -1, 1, -1, 1]);
    assert_eq!(cyclotomic_polynomial(105).iter().filter(|c| **c == BigInt::from(-2)).count(), 2);
}

#[test]
fn roots_of_unity_sum_to_zero() {
    for m in [3u32, 5, 7, 8, 9, 12, 15] {
        let f = field(m);
        let sum = (0..m as i64).fold(CyclotomicNumber::zero_in(&f), |acc, k| &acc + &CyclotomicNumber::zeta_pow_in(&f, k));
        assert!(sum.is_zero(), "m = {m}");
        assert!(CyclotomicNumber::zeta_pow_in(&f, m as i64).is_one());
    }
}

#[test]
fn norm_of_split_prime_unit() {
    // (2 − ζ_3)(2 − ζ_3^{-1}) = 4 − 2(ζ_3 + ζ_3^{-1}) + 1 = 7.
    let z = CyclotomicNumber::root_of_unity(3, 1).unwrap();
    let two = CyclotomicNumber::from_int(3, 2).unwrap();
    let a = &two - &z;
    assert_eq!((&a * &a.conj()).as_rational(), Some(integer(7)));
    let u = a.checked_div(&a.conj()).unwrap();
    assert!(u.unit_circle_check());
    for k in 1..=6 {
        assert!(!u.pow(k).unwrap().is_one(), "u has finite order {k}");
    }
}
