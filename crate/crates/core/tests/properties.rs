//! Property tests over randomly generated posets and polynomials.
//!
//! Random posets come from arbitrary upper-triangular cover relations, so
//! construction never cycles and the whole poset surface gets exercised,
//! not just the named lattices.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

use trinc::incidence::{hall_sum, mobius, IncFn2};
use trinc::poly::LaurentPoly;
use trinc::poset::{brute_force_flag_count, Poset};
use trinc::qseries::qbinom;
use trinc::trincidence::{
    diamond, hall_gen_sum, j_fast, j_recursive, left_distributivity_check, random_incfn3, IncFn3,
};

fn arb_poset() -> impl Strategy<Value = Arc<Poset>> {
    (1usize..=7).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |picks| {
            let mut covers = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if picks[k] {
                        covers.push((i, j));
                    }
                    k += 1;
                }
            }
            Arc::new(Poset::from_covers(n, &covers).expect("upper-triangular covers never cycle"))
        })
    })
}

fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
    (-3i64..=3, prop::collection::vec(-9i64..=9, 0..6))
        .prop_map(|(min_exp, coeffs)| LaurentPoly::from_ints(min_exp, &coeffs))
}

proptest! {
    #[test]
    fn mobius_inverts_zeta(p in arb_poset()) {
        let mu = mobius(&p);
        let zeta: IncFn2 = IncFn2::zeta(&p);
        let delta: IncFn2 = IncFn2::delta(&p);
        prop_assert_eq!(zeta.convolve(&mu).unwrap(), delta.clone());
        prop_assert_eq!(mu.convolve(&zeta).unwrap(), delta);
    }

    #[test]
    fn hall_sums_match_mobius_everywhere(p in arb_poset()) {
        let mu = mobius(&p);
        for (x, y) in p.flags2() {
            prop_assert_eq!(&hall_sum(&p, x, y).unwrap(), mu.value(x, y).unwrap());
        }
    }

    #[test]
    fn flag_counts_match_brute_force(p in arb_poset()) {
        prop_assert_eq!(p.flag2_count(), brute_force_flag_count(&p, 2));
        prop_assert_eq!(p.flag3_count(), brute_force_flag_count(&p, 3));
    }

    #[test]
    fn j_recursion_equals_mu_diamond_mu(p in arb_poset()) {
        let mu = mobius(&p);
        prop_assert_eq!(j_recursive(&p), diamond(&mu, &mu).unwrap());
    }

    #[test]
    fn generalized_hall_matches_j(p in arb_poset()) {
        let j = j_fast(&p);
        for (x, y, z) in p.flags3() {
            prop_assert_eq!(&hall_gen_sum(&p, x, y, z).unwrap(), j.value(x, y, z).unwrap());
        }
    }

    #[test]
    fn j_is_a_two_sided_zeta_inverse(p in arb_poset()) {
        let j = j_fast(&p);
        let zeta: IncFn3 = IncFn3::zeta(&p);
        let delta: IncFn3 = IncFn3::delta(&p);
        prop_assert_eq!(zeta.tri_mul(&j).unwrap(), delta.clone());
        prop_assert_eq!(j.tri_mul(&zeta).unwrap(), delta);
    }

    #[test]
    fn delta_left_identity_and_left_distributivity(p in arb_poset(), seed in any::<u64>()) {
        let f = random_incfn3(&p, seed);
        let g = random_incfn3(&p, seed.wrapping_add(1));
        let h = random_incfn3(&p, seed.wrapping_add(2));
        let delta = IncFn3::delta(&p);
        prop_assert_eq!(delta.tri_mul(&f).unwrap(), f.clone());
        prop_assert!(left_distributivity_check(&f, &g, &h).unwrap());
    }

    #[test]
    fn opposite_is_involutive(p in arb_poset()) {
        let op = p.opposite().unwrap();
        prop_assert_eq!(&op.opposite().unwrap(), p.as_ref());
    }

    #[test]
    fn mobius_tensor_factorizes(p in arb_poset(), q in arb_poset()) {
        let prod = Arc::new(p.product(&q));
        prop_assert_eq!(IncFn2::tensor(&mobius(&p), &mobius(&q)), mobius(&prod));
    }

    #[test]
    fn laurent_ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a - &a, LaurentPoly::zero());
    }

    #[test]
    fn laurent_reciprocal_involutive_and_eval(a in arb_laurent(), b in arb_laurent()) {
        prop_assert_eq!(a.reciprocal_subst().reciprocal_subst(), a.clone());
        // evaluation at 1 and -1 is a ring homomorphism
        for v in [1i64, -1] {
            let lhs = (&a * &b).eval_i64(v);
            let rhs = a.eval_i64(v) * b.eval_i64(v);
            prop_assert_eq!(lhs, rhs);
        }
        prop_assert_eq!(
            a.reciprocal_subst().eval_i64(1),
            a.eval_i64(1)
        );
    }

    #[test]
    fn gaussian_coefficients_symmetric(n in 0usize..=10, k in 0usize..=10) {
        prop_assume!(k <= n);
        prop_assert_eq!(qbinom(n, k), qbinom(n, n - k));
        let c = qbinom(n, k);
        if !c.is_zero() {
            let coeffs = c.coeffs();
            let d = coeffs.len();
            for i in 0..d {
                prop_assert_eq!(&coeffs[i], &coeffs[d - 1 - i]);
            }
            // value at q=0 is 1, leading coefficient is 1
            prop_assert_eq!(c.coeff(0), BigInt::one());
        }
    }
}
