use std::collections::BTreeMap;

use degform_core::arith::{divides, int, rat, rat_from_int, todd_number, Rational};
use degform_core::criteria::{build_report, dfr_congruence_holds, IncompressibilityReport, MapHypothesis};
use degform_core::series::PowerSeries;
use degform_core::symfun::{
    self, evaluate_in_elementary, evaluate_in_powersums, monomial_in_basis, newton_powersums_from_elementary, Basis,
    ExponentPolynomial, Partition, SymPoly,
};
use degform_core::variety::{self, CompleteIntersection};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=20).prop_map(|(n, d)| rat(n, d))
}

fn series(max_order: usize) -> impl Strategy<Value = PowerSeries> {
    (0..=max_order)
        .prop_flat_map(|n| prop::collection::vec(rational(), n + 1))
        .prop_map(|c| PowerSeries::from_coeffs(c).unwrap())
}

fn invertible_series(max_order: usize) -> impl Strategy<Value = PowerSeries> {
    series(max_order).prop_filter("unit constant term", |s| !s.coeffs()[0].is_zero())
}

fn same_order_pair(max_order: usize) -> impl Strategy<Value = (PowerSeries, PowerSeries, PowerSeries)> {
    (0..=max_order).prop_flat_map(|n| {
        let s = || prop::collection::vec(rational(), n + 1).prop_map(|c| PowerSeries::from_coeffs(c).unwrap());
        (s(), s(), s())
    })
}

fn small_ci() -> impl Strategy<Value = CompleteIntersection> {
    (1u32..=4, prop::collection::vec(1u32..=4, 0..=2)).prop_filter_map("valid", |(dim, degrees)| {
        CompleteIntersection::new(dim + degrees.len() as u32, degrees, None).ok()
    })
}

proptest! {
    #[test]
    fn rationals_form_a_field(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a - &a, Rational::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a / &a, Rational::one());
        }
        // reduced form with positive denominator
        prop_assert!(*a.denom() > int(0));
        prop_assert_eq!(num_integer::Integer::gcd(a.numer(), a.denom()), if a.is_zero() { a.denom().clone() } else { int(1) });
    }

    #[test]
    fn series_ring_laws((a, b, c) in same_order_pair(8)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&PowerSeries::one(a.order())).unwrap(), a.clone());
        prop_assert_eq!(a.sub(&a).unwrap(), PowerSeries::zero(a.order()));
    }

    #[test]
    fn order_mismatch_is_rejected(a in series(6), b in series(6)) {
        prop_assume!(a.order() != b.order());
        prop_assert!(a.mul(&b).is_err());
        prop_assert!(a.add(&b).is_err());
    }

    #[test]
    fn pow_is_additive(a in invertible_series(6), i in -3i64..=3, j in -3i64..=3) {
        let lhs = a.pow(i).unwrap().mul(&a.pow(j).unwrap()).unwrap();
        prop_assert_eq!(lhs, a.pow(i + j).unwrap());
    }

    #[test]
    fn todd_numbers_form_a_divisibility_chain(d in 1u32..40) {
        prop_assert!(divides(&todd_number(d - 1), &todd_number(d)));
    }

    #[test]
    fn partitions_normalize(parts in prop::collection::vec(1u32..10, 0..6)) {
        let alpha = Partition::new(parts.clone()).unwrap();
        let mut sorted = parts.clone();
        sorted.sort_unstable();
        prop_assert_eq!(alpha.parts(), &sorted[..]);
        prop_assert_eq!(alpha.degree(), parts.iter().sum::<u32>());
        let reparsed: Partition = alpha.to_string().parse().unwrap();
        prop_assert_eq!(reparsed, alpha);
    }

    #[test]
    fn lambda_p_is_a_filtered_subset(d in 0u32..=14, p in prop::sample::select(vec![2u32, 3, 5, 7, 11, 13])) {
        let all = symfun::partitions_of(d);
        let lambda = symfun::lambda_p_partitions(d, p).unwrap();
        let filtered: Vec<_> = all.iter().filter(|a| symfun::in_lambda_p(a, p)).cloned().collect();
        for alpha in &lambda {
            prop_assert!(all.contains(alpha));
        }
        let mut lambda_sorted = lambda.clone();
        lambda_sorted.sort();
        let mut filtered_sorted = filtered;
        filtered_sorted.sort();
        prop_assert_eq!(lambda_sorted, filtered_sorted);
    }

    #[test]
    fn matching_map_data_satisfies_the_congruence(
        chi_x in -20i64..20, dim_y in 1u32..8, n_x in 1i64..50, deg_f in 0i64..10,
    ) {
        let h = MapHypothesis::new(int(deg_f * chi_x), dim_y, int(chi_x), int(n_x), int(deg_f)).unwrap();
        prop_assert!(dfr_congruence_holds(&h));
    }

    #[test]
    fn chi_routes_agree(x in small_ci()) {
        let residue = variety::euler_char_residue(&x).unwrap();
        prop_assert_eq!(variety::euler_char_via_charnumbers(&x).unwrap(), residue);
    }

    #[test]
    fn report_json_round_trips(x in small_ci(), pick in 0usize..8) {
        let product = x.degree_product();
        let divisors: Vec<_> = degform_core::arith::divisors(num_traits::ToPrimitive::to_u64(&product).unwrap());
        let x = x.with_point_index(int(divisors[pick % divisors.len()] as i64)).unwrap();
        let report = build_report(&x).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        let back: IncompressibilityReport = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, report);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn series_times_inverse_is_one(a in invertible_series(16)) {
        let inv = a.invert().unwrap();
        prop_assert_eq!(a.mul(&inv).unwrap(), PowerSeries::one(a.order()));
    }
}

#[test]
fn zero_constant_term_is_not_invertible() {
    let a = PowerSeries::from_ints(&[0, 1, 2]).unwrap();
    assert!(a.invert().is_err());
}

// Expands m_α through each basis into explicit polynomials and compares them
// with the monomial symmetric function built term by term.
#[test]
fn transitions_round_trip_through_explicit_polynomials() {
    for d in 0..=8u32 {
        let n = (d as usize).max(1);
        let partitions = symfun::partitions_of(d);
        for basis in [Basis::Elementary, Basis::PowerSum] {
            let elements: BTreeMap<Partition, ExponentPolynomial> = partitions
                .iter()
                .map(|lambda| {
                    let single = SymPoly::new(basis, d, BTreeMap::from([(lambda.clone(), Rational::one())])).unwrap();
                    (lambda.clone(), single.to_exponent_polynomial(n))
                })
                .collect();
            for alpha in &partitions {
                let expansion = monomial_in_basis(alpha, basis);
                let explicit = expansion
                    .terms()
                    .iter()
                    .fold(ExponentPolynomial::zero(n), |acc, (lambda, c)| {
                        acc.add(&elements[lambda].scale(c))
                    });
                assert_eq!(
                    explicit,
                    ExponentPolynomial::monomial_symmetric(alpha, n),
                    "m_{alpha} via {basis:?}"
                );
            }
        }
    }
}

fn point_values(point: &[Rational], d: u32) -> (BTreeMap<u32, Rational>, BTreeMap<u32, Rational>) {
    // e_k from the coefficients of prod (1 + x_i t)
    let mut e = vec![Rational::one()];
    for x in point {
        let mut next = e.clone();
        next.push(Rational::zero());
        for k in 1..next.len() {
            next[k] += x * &e[k - 1];
        }
        e = next;
    }
    let e_values: BTreeMap<u32, Rational> = (1..=d)
        .map(|k| (k, e.get(k as usize).cloned().unwrap_or_else(Rational::zero)))
        .collect();
    let p_values = (1..=d)
        .map(|k| (k, point.iter().map(|x| num_traits::pow(x.clone(), k as usize)).sum()))
        .collect();
    (e_values, p_values)
}

proptest! {
    #[test]
    fn elementary_and_powersum_routes_agree(
        d in 1u32..=8,
        pick in 0usize..22,
        point in prop::collection::vec(rational(), 1..=8),
    ) {
        let all = symfun::partitions_of(d);
        let alpha = &all[pick % all.len()];
        let (e, p) = point_values(&point, d);
        let via_e = evaluate_in_elementary(&monomial_in_basis(alpha, Basis::Elementary), &e).unwrap();
        let via_p = evaluate_in_powersums(&monomial_in_basis(alpha, Basis::PowerSum), &p).unwrap();
        prop_assert_eq!(&via_e, &via_p);

        let elementary: Vec<Rational> = (1..=d).map(|k| e[&k].clone()).collect();
        let newton = newton_powersums_from_elementary(&elementary, d as usize);
        prop_assert_eq!(newton, (1..=d).map(|k| p[&k].clone()).collect::<Vec<_>>());
    }

    #[test]
    fn char_numbers_are_multiples_of_the_degree_product(x in small_ci()) {
        let table = variety::CharNumberTable::compute(&x).unwrap();
        for c in table.entries.values() {
            prop_assert!(divides(&x.degree_product(), c));
        }
        let chi = rat_from_int(variety::euler_char(&x).unwrap());
        prop_assert_eq!(chi, rat_from_int(variety::euler_char_from_table(&table).unwrap()));
    }
}
