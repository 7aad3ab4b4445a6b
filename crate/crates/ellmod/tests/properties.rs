//! Property tests of the exact series algebra and the SL(2,ℤ) actions.

use ellmod::modgroup::{reduce_fundamental, subgroup_member, SubgroupId, UnimodularMatrix};
use ellmod::qseries::{FracSeries, Rat, SeriesCmp};
use num_complex::Complex64;
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

/// A series with a handful of terms, unit constant term, on a small grid.
fn unit_series() -> impl Strategy<Value = FracSeries> {
    (
        prop::sample::select(vec![1i64, 2, 3, 8]),
        prop::collection::vec((1i64..=18, small_rat()), 0..6),
    )
        .prop_map(|(den, terms)| {
            let mut all = vec![(0, Rat::from_integer(1.into()))];
            all.extend(terms);
            FracSeries::from_terms(den, all, 20)
        })
}

fn assert_equal(a: &FracSeries, b: &FracSeries, through: &Rat) {
    match a.series_equal(b, through).expect("order") {
        SeriesCmp::Equal => {}
        SeriesCmp::Mismatch { exponent, lhs, rhs } => {
            panic!("mismatch at q^{exponent}: {lhs} vs {rhs}")
        }
    }
}

proptest! {
    #[test]
    fn invert_is_a_two_sided_inverse(s in unit_series()) {
        let inv = s.invert().unwrap();
        let left = s.mul(&inv);
        let right = inv.mul(&s);
        let one = FracSeries::one(left.exp_den(), left.order_num());
        assert_equal(&left, &one, &left.order());
        assert_equal(&right, &one, &right.order());
    }

    #[test]
    fn square_root_of_square(s in unit_series()) {
        let sq = s.int_pow(2).unwrap();
        let root = sq.principal_root(2).unwrap();
        let through = root.order().min(s.order());
        assert_equal(&root, &s.rescale(root.exp_den()), &through);
    }

    #[test]
    fn multiplication_commutes_and_distributes(
        a in unit_series(), b in unit_series(), c in unit_series()
    ) {
        let ab = a.mul(&b);
        let ba = b.mul(&a);
        assert_equal(&ab, &ba, &ab.order());
        let lhs = a.mul(&b.add(&c));
        let rhs = a.mul(&b).add(&a.mul(&c));
        let through = lhs.order().min(rhs.order());
        assert_equal(&lhs, &rhs, &through);
    }

    #[test]
    fn int_pow_matches_repeated_mul(s in unit_series(), n in 0u32..6) {
        let pow = s.int_pow(n as i64).unwrap();
        let mut acc = FracSeries::one(s.exp_den(), s.order_num());
        for _ in 0..n {
            acc = acc.mul(&s);
        }
        let through = pow.order().min(acc.order());
        assert_equal(&pow, &acc, &through);
    }

    #[test]
    fn reduction_invariants(re in -50.0f64..50.0, im in 0.01f64..20.0) {
        let tau = Complex64::new(re, im);
        let red = reduce_fundamental(tau);
        // γ ∈ SL(2,ℤ) and γτ = τ*.
        prop_assert!(subgroup_member(&red.gamma, SubgroupId::Full));
        let acted = red.gamma.act(tau);
        prop_assert!((acted - red.tau_star).norm() < 1e-6);
        // τ* lies in the closed fundamental domain.
        prop_assert!(red.tau_star.re >= -0.5 - 1e-9);
        prop_assert!(red.tau_star.re <= 0.5 + 1e-9);
        prop_assert!(red.tau_star.norm_sqr() >= 1.0 - 1e-9);
        // Im τ* never decreases under reduction.
        prop_assert!(red.tau_star.im >= tau.im - 1e-12);
    }

    #[test]
    fn index_action_is_a_group_action(
        a in -5i64..=5, b in -5i64..=5, kappa in 0u8..2, lambda in 0u8..2
    ) {
        // Build a unimodular matrix from T^a S T^b.
        let g = UnimodularMatrix::t_pow(a)
            .mul(&UnimodularMatrix::s())
            .mul(&UnimodularMatrix::t_pow(b));
        let h = UnimodularMatrix::t_pow(b).mul(&UnimodularMatrix::s());
        let gh = g.mul(&h);
        let (k1, l1) = h.index_act(kappa, lambda);
        let step = g.index_act(k1, l1);
        prop_assert_eq!(gh.index_act(kappa, lambda), step);
        // The identity acts trivially; (0,0) is always fixed.
        prop_assert_eq!(UnimodularMatrix::identity().index_act(kappa, lambda), (kappa, lambda));
        prop_assert_eq!(g.index_act(0, 0), (0, 0));
    }

    #[test]
    fn truncation_is_idempotent(s in unit_series(), cut in 1i64..=20) {
        let t = s.truncated(cut);
        prop_assert_eq!(t.clone(), t.truncated(cut));
        prop_assert!(t.order_num() <= cut);
        for (k, _) in t.iter_raw() {
            prop_assert!(k < cut);
        }
    }
}
