//! Randomized algebraic laws for the truncated series ring.

use num::Zero;
use proptest::prelude::*;
use qmf_core::qseries::QSeries;
use qmf_core::rat::{rat, rint, Rat};

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn arb_series() -> impl Strategy<Value = QSeries> {
    (
        -3i64..=3,
        prop::collection::vec(arb_rat(), 5..=10),
    )
        .prop_map(|(off, coeffs)| QSeries::new(rint(off), coeffs))
}

fn arb_unit_series() -> impl Strategy<Value = QSeries> {
    (
        arb_series(),
        (1i64..=9, 1i64..=4),
    )
        .prop_map(|(s, (n, d))| {
            let mut coeffs = s.coeffs().to_vec();
            coeffs[0] = rat(n, d);
            QSeries::new(s.offset().clone(), coeffs)
        })
}

proptest! {
    #[test]
    fn add_commutes(a in arb_series(), b in arb_series()) {
        prop_assert!(a.add(&b).unwrap().eq_to_order(&b.add(&a).unwrap()));
    }

    #[test]
    fn mul_commutes(a in arb_series(), b in arb_series()) {
        prop_assert!(a.mul(&b).eq_to_order(&b.mul(&a)));
    }

    #[test]
    fn add_associates(a in arb_series(), b in arb_series(), c in arb_series()) {
        let lhs = a.add(&b).unwrap().add(&c).unwrap();
        let rhs = a.add(&b.add(&c).unwrap()).unwrap();
        prop_assert!(lhs.eq_to_order(&rhs));
    }

    #[test]
    fn mul_associates(a in arb_series(), b in arb_series(), c in arb_series()) {
        prop_assert!(a.mul(&b).mul(&c).eq_to_order(&a.mul(&b.mul(&c))));
    }

    #[test]
    fn mul_distributes(a in arb_series(), b in arb_series(), c in arb_series()) {
        let lhs = a.mul(&b.add(&c).unwrap());
        let rhs = a.mul(&b).add(&a.mul(&c)).unwrap();
        prop_assert!(lhs.eq_to_order(&rhs));
    }

    #[test]
    fn one_is_multiplicative_identity(a in arb_series()) {
        let one = QSeries::one(a.order());
        prop_assert!(a.mul(&one).eq_to_order(&a));
    }

    #[test]
    fn inverse_is_two_sided(a in arb_unit_series()) {
        let inv = a.inverse().unwrap();
        let one = QSeries::one(a.order());
        prop_assert!(a.mul(&inv).eq_to_order(&one));
        prop_assert!(inv.mul(&a).eq_to_order(&one));
    }

    #[test]
    fn derivation_product_rule(a in arb_series(), b in arb_series()) {
        let lhs = a.mul(&b).apply_d();
        let rhs = a.apply_d().mul(&b).add(&a.mul(&b.apply_d())).unwrap();
        prop_assert!(lhs.eq_to_order(&rhs));
    }

    #[test]
    fn rescale_is_multiplicative(a in arb_series(), b in arb_series(), d in 2u32..=4) {
        let lhs = a.mul(&b).rescale_q(d);
        let rhs = a.rescale_q(d).mul(&b.rescale_q(d));
        prop_assert!(lhs.eq_to_order(&rhs));
    }

    #[test]
    fn neg_is_additive_inverse(a in arb_series()) {
        let sum = a.add(&a.neg()).unwrap();
        prop_assert!(sum.is_zero() || sum.coeffs().iter().all(Rat::is_zero));
    }
}
