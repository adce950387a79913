use proptest::prelude::*;

use qmono::identities::{relabeling_invariant, symmetrized_side, Side};
use qmono::partition::{
    derangements, partitions_of, permutations_with_cycles, z_of, DEFAULT_PERMUTATION_CAP,
};
use qmono::specialization::{abq_universe, spec_W, spec_Z, Limits};
use qmono::text::{parse_fraction, parse_polynomial};
use qmono::{frac_eq, FactoredFraction, Partition, Polynomial, Rational, Universe};

fn universe() -> std::sync::Arc<Universe> {
    Universe::new(["a", "b", "q"])
}

/// Small polynomials in `a, b, q` with integer coefficients.
fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-3i64..=3, 0u32..3, 0u32..3, 0u32..3), 0..5).prop_map(|terms| {
        let u = universe();
        let text: Vec<String> = terms
            .iter()
            .map(|(c, i, j, k)| format!("({c})*a^{i}*b^{j}*q^{k}"))
            .collect();
        if text.is_empty() {
            Polynomial::zero(&u)
        } else {
            parse_polynomial(&u, &text.join(" + ")).unwrap()
        }
    })
}

fn nonzero_poly() -> impl Strategy<Value = Polynomial> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn partition(max_weight: u32) -> impl Strategy<Value = Partition> {
    (1..=max_weight).prop_flat_map(|w| {
        let all = partitions_of(w);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(Rational::ONE, |acc, k| &acc * &Rational::from_integer(k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(x in poly(), y in poly(), z in poly()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn text_round_trip(x in poly()) {
        prop_assert_eq!(parse_polynomial(&universe(), &x.to_string()).unwrap(), x);
    }

    #[test]
    fn fraction_equality_ignores_common_factors(n in poly(), d in nonzero_poly(), c in nonzero_poly()) {
        let f = FactoredFraction::ratio(&n, &d).unwrap();
        let g = FactoredFraction::ratio(&(&n * &c), &(&d * &c)).unwrap();
        prop_assert!(frac_eq(&f, &g).unwrap());
        let back = parse_fraction(&universe(), &f.to_string()).unwrap();
        prop_assert!(frac_eq(&f, &back).unwrap());
    }

    #[test]
    fn fraction_field_laws(n1 in poly(), d1 in nonzero_poly(), n2 in poly(), d2 in nonzero_poly()) {
        let f = FactoredFraction::ratio(&n1, &d1).unwrap();
        let g = FactoredFraction::ratio(&n2, &d2).unwrap();
        let lhs = &(&f + &g) * &g;
        let rhs = &(&f * &g) + &(&g * &g);
        prop_assert!(frac_eq(&lhs, &rhs).unwrap());
        prop_assert!(frac_eq(&(&(&f + &g) - &g), &f).unwrap());
    }

    #[test]
    fn substitution_is_a_ring_map(x in poly(), y in poly(), k in 1u32..4) {
        let u = universe();
        let image = parse_fraction(&u, &format!("q^{k}")).unwrap();
        let s = |p: &Polynomial| FactoredFraction::from_poly(p).substitute_in_place(&[("b", image.clone())]).unwrap();
        prop_assert!(frac_eq(&s(&(&x * &y)), &(&s(&x) * &s(&y))).unwrap());
        prop_assert!(frac_eq(&s(&(&x + &y)), &(&s(&x) + &s(&y))).unwrap());
    }

    #[test]
    fn closed_forms_agree_and_are_homogeneous(mu in partition(6)) {
        let lim = Limits::default();
        let z = spec_Z(&mu, &lim).unwrap();
        let w = spec_W(&mu, &lim).unwrap();
        prop_assert!(z.is_homogeneous());
        prop_assert!(frac_eq(&z.value, &w.value).unwrap());
    }

    #[test]
    fn derangement_count(mu in partition(9)) {
        let count = Rational::from_integer(derangements(&mu).len() as i64);
        prop_assert_eq!(count, mu.rearrangement_count());
        let l = mu.len() as u32;
        let mut denom = Rational::ONE;
        for m in mu.multiplicities().values() {
            denom = &denom * &factorial(*m as u32);
        }
        prop_assert_eq!(mu.rearrangement_count(), &factorial(l) / &denom);
        for d in derangements(&mu) {
            prop_assert_eq!(*d.prefix_sums().last().unwrap(), mu.weight());
        }
    }

    #[test]
    fn relabeling_leaves_sums_fixed(n in 2usize..=3, i in 1usize..=3, j in 1usize..=3, side in 0usize..3) {
        prop_assume!(i <= n && j <= n && i != j);
        let s = symmetrized_side(n, Side::ALL[side], 5).unwrap();
        prop_assert!(relabeling_invariant(&s, i, j).unwrap());
    }
}

#[test]
fn class_sizes_sum_to_group_order() {
    for n in 1..=7u32 {
        let mut total = Rational::ZERO;
        for lam in partitions_of(n) {
            total += &(&factorial(n) / &z_of(&lam));
        }
        assert_eq!(total, factorial(n));
    }
}

#[test]
fn cycle_types_match_class_sizes() {
    for n in 1..=6usize {
        let perms = permutations_with_cycles(n, DEFAULT_PERMUTATION_CAP).unwrap();
        assert_eq!(
            Rational::from_integer(perms.len() as i64),
            factorial(n as u32)
        );
        for lam in partitions_of(n as u32) {
            let count = perms.iter().filter(|p| p.cycle_type() == lam).count();
            assert_eq!(
                Rational::from_integer(count as i64),
                &factorial(n as u32) / &z_of(&lam)
            );
        }
    }
}

#[test]
fn abq_universe_is_shared() {
    assert_eq!(abq_universe().names(), universe().names());
}
