mod common;

use common::*;
use multlab::bounds::{gabrielov_bound, single_point_bound};
use multlab::multiplicity::{multiplicity, multiplicity_via_series, Cutoff, Status};
use multlab::poly::parse_poly;
use multlab::{Mode, Polynomial, RationalPoint, VectorField};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

/// A field non-singular at `at`, a polynomial vanishing there, and the point.
fn instance(n: usize) -> impl Strategy<Value = (VectorField, Polynomial, RationalPoint)> {
    (field(n, 2), nonzero_poly(n, 3), point(n))
        .prop_filter("non-singular", |(v, _, at)| !v.is_singular_at(at).unwrap())
        .prop_map(move |(v, p, at)| {
            let c = Polynomial::constant(n, Mode::Affine, p.evaluate(&at).unwrap());
            (v, &p - &c, at)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chain_matches_naive(inst in instance(2)) {
        let (v, p, at) = inst;
        let r = multiplicity(&v, &p, &at, Cutoff::Fixed(12)).unwrap();
        prop_assert_eq!(r.order().map(|k| k as usize), naive_order(&v, &p, &at, 12));
    }

    #[test]
    fn oracles_agree(inst in instance(3)) {
        let (v, p, at) = inst;
        let chain = multiplicity(&v, &p, &at, Cutoff::Fixed(9)).unwrap();
        let series = multiplicity_via_series(&v, &p, &at, 9).unwrap();
        prop_assert_eq!(chain.order(), series.order());
        prop_assert_eq!(chain.witness, series.witness);
    }

    #[test]
    fn positivity_link(v in field(2, 2), p in nonzero_poly(2, 3), at in point(2)) {
        prop_assume!(!v.is_singular_at(&at).unwrap());
        let r = multiplicity(&v, &p, &at, Cutoff::Fixed(10)).unwrap();
        let vanishes = p.evaluate(&at).unwrap().is_zero();
        prop_assert_eq!(r.order().is_none_or(|k| k >= 1), vanishes);
    }

    #[test]
    fn witness_is_first_nonzero(inst in instance(2)) {
        let (v, p, at) = inst;
        let r = multiplicity(&v, &p, &at, Cutoff::Fixed(10)).unwrap();
        if let Some((k, value)) = &r.witness {
            let chain = v.derivative_chain(&p, *k as usize + 1).unwrap();
            for earlier in &chain[..*k as usize] {
                prop_assert!(earlier.evaluate(&at).unwrap().is_zero());
            }
            prop_assert_eq!(&chain[*k as usize].evaluate(&at).unwrap(), value);
        }
    }

    #[test]
    fn shift_invariance(inst in instance(2), c in prop::collection::vec(rational(), 2)) {
        let (v, p, at) = inst;
        let neg: Vec<_> = c.iter().map(|x| -x.clone()).collect();
        // x = y + c: the new objects live in y
        let v2 = VectorField::new(v.components().iter().map(|qi| shift_poly(qi, &c)).collect()).unwrap();
        let p2 = shift_poly(&p, &c);
        let at2 = RationalPoint::new(at.coords().iter().zip(&neg).map(|(a, b)| a + b).collect());
        let a = multiplicity(&v, &p, &at, Cutoff::Fixed(10)).unwrap();
        let b = multiplicity(&v2, &p2, &at2, Cutoff::Fixed(10)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn finite_orders_respect_bounds(inst in instance(2)) {
        let (v, p, at) = inst;
        if let Some(r) = multiplicity(&v, &p, &at, Cutoff::Fixed(30)).unwrap().order() {
            let d = p.total_degree().unwrap().max(1) as u64;
            let delta = v.degree().max(1) as u64;
            prop_assert!(BigInt::from(r) <= single_point_bound(2, d, delta).unwrap());
            prop_assert!(BigInt::from(r) <= gabrielov_bound(2, d, delta).unwrap());
        }
    }
}

#[test]
fn auto_cutoff_certifies_eigenfunctions() {
    for (r, s) in [(1, 2), (2, 3), (3, 5)] {
        let v = VectorField::new(vec![
            parse_poly(&format!("{r}*x1"), 2, Mode::Affine).unwrap(),
            parse_poly(&format!("{s}*x2"), 2, Mode::Affine).unwrap(),
        ])
        .unwrap();
        let p = parse_poly(&format!("x1^{s} - x2^{r}"), 2, Mode::Affine).unwrap();
        let res = multiplicity(&v, &p, &RationalPoint::from_ints(&[1, 1]), Cutoff::Auto).unwrap();
        assert!(matches!(res.status, Status::CertifiedInfinite { .. }), "{res}");
    }
}
