mod common;

use common::model_from_supports;
use num_traits::Zero;
use orthant_walks::algebra::{
    rat, ExponentVector, GaussianRational, LaurentPoly, Rational, ThetaSeries,
};
use orthant_walks::stepset::{apply_sign_map, sign_vectors};
use orthant_walks::StepSet;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn laurent(dim: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-2i32..=2, dim), small_rational()), 0..6)
        .prop_map(move |terms| {
            LaurentPoly::from_terms(
                dim,
                terms.into_iter().map(|(e, c)| (ExponentVector::new(e), c)),
            )
            .unwrap()
        })
}

fn theta(dim: usize, degree: u32) -> impl Strategy<Value = ThetaSeries> {
    prop::collection::vec(
        (
            prop::collection::vec(0i32..=3, dim),
            small_rational(),
            small_rational(),
        ),
        0..8,
    )
    .prop_map(move |terms| {
        ThetaSeries::from_terms(
            dim,
            degree,
            terms
                .into_iter()
                .filter(|(e, _, _)| e.iter().sum::<i32>() <= degree as i32)
                .map(|(e, re, im)| (ExponentVector::new(e), GaussianRational::new(re, im))),
        )
        .unwrap()
    })
}

fn model() -> impl Strategy<Value = StepSet> {
    (1usize..=3)
        .prop_flat_map(|d| (Just(d), prop::collection::vec(any::<bool>(), (1 << d) - 1)))
        .prop_filter_map("valid model", |(d, pick)| {
            let supports: Vec<u32> = pick
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| i as u32 + 1)
                .collect();
            model_from_supports(d, &supports)
        })
}

proptest! {
    #[test]
    fn laurent_ring_axioms(a in laurent(2), b in laurent(2), c in laurent(2)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn theta_ring_axioms(a in theta(2, 5), b in theta(2, 5), c in theta(2, 5)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn truncation_is_consistent(a in theta(2, 6), b in theta(2, 6), low in 0u32..6) {
        prop_assert_eq!(a.mul(&b).truncate(low), a.truncate(low).mul(&b.truncate(low)));
        let x = a.drop_below(1);
        prop_assert_eq!(x.log1p().unwrap().truncate(low), x.truncate(low).log1p().unwrap());
        let one = ThetaSeries::one(2, 6);
        let y = one.add(&x);
        prop_assert_eq!(y.reciprocal().unwrap().truncate(low), y.truncate(low).reciprocal().unwrap());
        prop_assert_eq!(y.mul(&y.reciprocal().unwrap()), one);
    }

    #[test]
    fn log_of_exponential_is_linear(a in -3i32..=3, b in -3i32..=3, degree in 1u32..=8) {
        let e = ThetaSeries::exp_i_linear(2, &[a, b], degree);
        let one = ThetaSeries::one(2, degree);
        let lin = ThetaSeries::variable(2, degree, 0)
            .scale_rational(&rat(a as i64, 1))
            .add(&ThetaSeries::variable(2, degree, 1).scale_rational(&rat(b as i64, 1)))
            .scale(&GaussianRational::i());
        prop_assert_eq!(e.sub(&one).log1p().unwrap(), lin);
    }

    #[test]
    fn sign_maps_fix_inventory(m in model()) {
        let inv = m.inventory();
        for sigma in sign_vectors(m.dim()) {
            prop_assert_eq!(apply_sign_map(&inv, &sigma).unwrap(), inv.clone());
        }
    }

    #[test]
    fn decomposition_invariants(m in model()) {
        let inv = m.inventory();
        let fwd = m.forward_counts();
        for k in 0..m.dim() {
            let dec = m.decompose(k).unwrap();
            prop_assert_eq!(dec.reconstruct(), inv.clone());
            prop_assert_eq!(dec.s1.eval_ones(), rat(fwd[k] as i64, 1));
            let fixed = m.steps().iter().filter(|s| s[k] == 0).count();
            prop_assert_eq!(2 * fwd[k] as usize + fixed, m.len());
        }
    }

    #[test]
    fn validation_is_idempotent_and_permutation_closed(m in model(), rot in 0usize..3) {
        let again = StepSet::validate(m.dim(), m.steps().to_vec()).unwrap();
        prop_assert_eq!(&again, &m);
        let d = m.dim();
        let perm: Vec<usize> = (0..d).map(|k| (k + rot) % d).collect();
        prop_assert!(m.permute_coordinates(&perm).is_ok());
    }

    #[test]
    fn parse_round_trip(m in model()) {
        prop_assert_eq!(StepSet::parse(&m.to_spec_string()).unwrap(), m);
    }
}

#[test]
fn real_exponential_log() {
    for degree in 1..=8u32 {
        let mut fact = Rational::from_integer(1.into());
        let mut terms = Vec::new();
        for m in 1..=degree {
            fact *= Rational::from_integer(m.into());
            terms.push((
                ExponentVector::new(vec![m as i32]),
                GaussianRational::real(fact.recip()),
            ));
        }
        let e_minus_one = ThetaSeries::from_terms(1, degree, terms).unwrap();
        assert_eq!(
            e_minus_one.log1p().unwrap(),
            ThetaSeries::variable(1, degree, 0)
        );
    }
    assert!(ThetaSeries::zero(1, 3).log1p().unwrap().is_zero());
    assert!(!GaussianRational::i().is_zero());
}
