use alloc::vec;
use alloc::vec::Vec;

use num_rational::Rational64;
use proptest::prelude::*;

use super::*;

// Naive dense polynomial helpers, independent of BiSeries.
fn poly_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0i64; n + 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j <= n {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn binomial(exp: usize, n: usize) -> Vec<i64> {
    let mut p = vec![0i64; n + 1];
    p[0] = 1;
    if exp <= n {
        p[exp] -= 1;
    }
    p
}

fn naive_product(offsets: impl Iterator<Item = usize>, n: usize) -> Vec<i64> {
    let mut acc = vec![0i64; n + 1];
    acc[0] = 1;
    for e in offsets {
        acc = poly_mul(&acc, &binomial(e, n), n);
    }
    acc
}

/// Number of partitions of every integer up to `n`, by enumerating
/// partitions with parts bounded by `max_part`.
fn partition_counts(n: usize) -> Vec<i64> {
    fn count(total: usize, max_part: usize) -> i64 {
        if total == 0 {
            return 1;
        }
        (1..=max_part.min(total))
            .map(|p| count(total - p, p))
            .sum()
    }
    (0..=n).map(|t| count(t, t)).collect()
}

fn q(c: &[i64], n: i64) -> BiSeries {
    BiSeries::from_q_coefficients(c.iter().copied(), n)
}

fn bi(terms: &[(u32, i64, i64)], order: Order) -> BiSeries {
    BiSeries::from_terms(
        terms.iter().map(|&(m, j, c)| (m, j, Coefficient::from(c))),
        order,
    )
}

#[test]
fn add_cancels() {
    assert_eq!(q(&[1, -1], 8).add(&q(&[0, 1], 8)), q(&[1], 8));
}

#[test]
fn difference_of_squares() {
    assert_eq!(q(&[1, -1], 8).mul(&q(&[1, 1], 8)), q(&[1, 0, -1], 8));
}

#[test]
fn product_of_three_binomials_matches_direct_expansion() {
    let n = 10;
    let oracle = naive_product([1usize, 2, 3].into_iter(), n);
    assert_eq!(oracle, vec![1, -1, -1, 0, 1, 1, -1, 0, 0, 0, 0]);
    let lhs = q(&[1, -1], 10).mul(&q(&[1, 0, -1], 10));
    let got = lhs.mul(&q(&[1, 0, 0, -1], 10));
    assert_eq!(got, BiSeries::from_q_coefficients(oracle, 10));
}

#[test]
fn invert_unit_and_geometric() {
    let one = BiSeries::one(Order::q_only(12));
    assert_eq!(one.invert().unwrap(), one);
    let geo = q(&[1, -1], 12).invert().unwrap();
    assert_eq!(geo, BiSeries::from_q_coefficients(vec![1; 13], 12));
}

#[test]
fn invert_euler_product_gives_partition_numbers() {
    let n = 20;
    let counts = partition_counts(n);
    assert_eq!(&counts[..7], &[1, 1, 2, 3, 5, 7, 11]);
    let euler = poch(
        &PochSpec::q(1, 1, PochLength::Infinite),
        Order::q_only(n as i64),
    )
    .unwrap();
    let inv = euler.invert().unwrap();
    assert_eq!(inv, BiSeries::from_q_coefficients(counts, n as i64));
}

#[test]
fn invert_rejects_missing_constant_slice() {
    let only_a = bi(&[(1, 0, 1)], Order::new(5, 5));
    assert!(matches!(only_a.invert(), Err(Error::NotInvertible(_))));
    let low_a = bi(&[(0, 0, 1), (1, -1, 1)], Order::new(5, 5));
    assert!(matches!(low_a.invert(), Err(Error::NotInvertible(_))));
}

#[test]
fn invert_laurent_and_nonunit() {
    // 1 / (2 q^-1) = q / 2
    let s = bi(&[(0, -1, 2)], Order::q_only(6));
    let inv = s.invert().unwrap();
    assert_eq!(inv.coeff(0, 1), Coefficient::from_fraction(1, 2));
    assert_eq!(inv.num_terms(), 1);
    assert!(!inv.is_integral());
}

#[test]
fn subst_a_shift_examples() {
    let order = Order::new(10, 4);
    let one = BiSeries::one(order);
    assert_eq!(one.subst_a_shift(3), one);
    assert_eq!(
        bi(&[(1, 0, 1)], order).subst_a_shift(1),
        bi(&[(1, 1, 1)], order)
    );
    assert_eq!(
        bi(&[(2, 3, 1)], order).subst_a_shift(2),
        bi(&[(2, 7, 1)], order)
    );
    // Pushed past the truncation: dropped without a flag.
    let pushed = bi(&[(4, 9, 1)], order).subst_a_shift(1);
    assert!(pushed.is_zero());
    assert!(!pushed.a_overflow());
}

#[test]
fn eval_a_examples() {
    let order = Order::new(6, 6);
    let s = bi(&[(0, 0, 1), (1, 1, 1)], order);
    assert_eq!(s.eval_a(1).unwrap(), q(&[1, 1], 6));
    let t = bi(&[(0, 0, 1), (1, 1, 1), (2, 2, 1)], order);
    assert_eq!(t.eval_a(0).unwrap(), q(&[1], 6));
    assert!(matches!(t.eval_a(2), Err(Error::BadParameters(_))));
}

#[test]
fn eval_at_one_refuses_after_overflow() {
    let order = Order::new(6, 1);
    let s = bi(&[(0, 0, 1), (1, 1, 1)], order).mul(&bi(&[(0, 0, 1), (1, 1, 1)], order));
    assert!(s.a_overflow());
    assert_eq!(s.eval_a(1), Err(Error::OverflowUnsound));
    // a-degree above M at q-degree above N is not a loss.
    let fine = bi(&[(0, 0, 1), (1, 4, 1)], order).mul(&bi(&[(0, 0, 1), (1, 4, 1)], order));
    assert!(!fine.a_overflow());
}

#[test]
fn division_by_binomials() {
    let order = Order::new(12, 6);
    let x = bi(&[(0, 0, 1), (1, 2, -3), (2, 5, 7)], order);
    for (sign, am, qe) in [(1, 0, 1), (-1, 1, 1), (1, 2, 0), (1, 0, -2), (-1, 0, 0)] {
        let d = x.div_one_minus(sign, am, qe).unwrap();
        let back = d.mul_one_minus(sign, am, qe);
        assert_eq!(back, x.truncate(back.order()), "factor ({sign}, {am}, {qe})");
    }
    assert!(matches!(
        x.div_one_minus(1, 0, 0),
        Err(Error::DivisionByZero(_))
    ));
}

#[test]
fn exact_division_by_one_minus_a() {
    let order = Order::new(8, 6);
    // (1 - a)(1 - a q) = 1 - a - a q + a^2 q
    let p = bi(&[(0, 0, 1), (1, 0, -1), (1, 1, -1), (2, 1, 1)], order);
    assert_eq!(p.div_one_minus_a().unwrap(), bi(&[(0, 0, 1), (1, 1, -1)], order));
    let not_divisible = bi(&[(0, 0, 1), (1, 1, -1)], order);
    assert!(matches!(
        not_divisible.div_one_minus_a(),
        Err(Error::InexactDivision(_))
    ));
}

#[test]
fn negative_exponents_cost_precision() {
    let s = q(&[1, 1, 1, 1, 1, 1], 5);
    let shifted = s.shift(0, -2);
    assert_eq!(shifted.order_q(), 3);
    assert_eq!(shifted.valuation_q(), Some(-2));
    let product = shifted.mul(&q(&[1, 1], 5));
    assert_eq!(product.order_q(), 3);
    let back = shifted.shift(0, 2);
    assert_eq!(back, s);
    assert_eq!(back.order_q(), 3);
}

#[test]
fn jacobi_triple_product_small_cases() {
    let n = 30usize;
    // (q;q^2)_inf (q;q^2)_inf (q^2;q^2)_inf
    let oracle = naive_product(
        (1..=n).step_by(2).chain((1..=n).step_by(2)).chain((2..=n).step_by(2)),
        n,
    );
    let tp = triple_product(1, 2, n as i64).unwrap();
    assert_eq!(tp, BiSeries::from_q_coefficients(oracle, n as i64));

    let rr = naive_product(
        (2..=n).step_by(5).chain((3..=n).step_by(5)).chain((5..=n).step_by(5)),
        n,
    );
    assert_eq!(
        triple_product(2, 5, n as i64).unwrap(),
        BiSeries::from_q_coefficients(rr, n as i64)
    );
}

#[test]
fn theta_sums_match_triple_products() {
    let n = 40i64;
    let r = Rational64::new;
    assert_eq!(
        theta_sum(r(5, 2), r(1, 2), n).unwrap(),
        triple_product(2, 5, n).unwrap()
    );
    // Bilateral brute force over |k| <= sqrt(2N/5) + 2.
    let bound = ((2.0 * n as f64 / 5.0).sqrt() as i64) + 2;
    let mut oracle = vec![0i64; n as usize + 1];
    for k in -bound..=bound {
        let twice = 5 * k * k + 3 * k;
        let e = twice / 2;
        if e <= n {
            oracle[e as usize] += if k % 2 == 0 { 1 } else { -1 };
        }
    }
    let theta = theta_sum(r(5, 2), r(3, 2), n).unwrap();
    assert_eq!(theta, BiSeries::from_q_coefficients(oracle.clone(), n));
    assert_eq!(theta, triple_product(1, 5, n).unwrap());
    assert_eq!(&oracle[..8], &[1, -1, 0, 0, -1, 0, 0, 1]);
}

#[test]
fn display_is_readable() {
    let s = bi(&[(0, 0, 1), (1, 1, -2), (0, 2, 1)], Order::new(3, 2));
    assert_eq!(alloc::format!("{s}"), "1 - 2*a*q + q^2 + O(q^4)");
}

fn arb_series(max_n: i64) -> impl Strategy<Value = BiSeries> {
    (
        4..=max_n,
        0u32..=3,
        proptest::collection::vec((0u32..=3, -1i64..=12, -5i64..=5), 0..=8),
    )
        .prop_map(|(n, m, terms)| {
            BiSeries::from_terms(
                terms.into_iter().map(|(a, j, c)| (a, j, Coefficient::from(c))),
                Order::new(n, m),
            )
        })
}

fn arb_unit(max_n: i64) -> impl Strategy<Value = BiSeries> {
    (
        1..=max_n,
        0u32..=3,
        prop_oneof![Just(1i64), Just(-1), Just(2), Just(-3)],
        proptest::collection::vec((0u32..=3, 1i64..=12, -4i64..=4), 0..=7),
    )
        .prop_map(|(n, m, lead, terms)| {
            BiSeries::from_terms(
                core::iter::once((0, 0, Coefficient::from(lead))).chain(
                    terms.into_iter().map(|(a, j, c)| (a, j, Coefficient::from(c))),
                ),
                Order::new(n, m),
            )
        })
}

proptest! {
    #[test]
    fn ring_laws(s in arb_series(12), t in arb_series(12), u in arb_series(12)) {
        prop_assert_eq!(s.add(&t), t.add(&s));
        prop_assert_eq!(s.mul(&t), t.mul(&s));
        prop_assert_eq!(s.mul(&t).mul(&u), s.mul(&t.mul(&u)));
        prop_assert_eq!(s.mul(&t.add(&u)), s.mul(&t).add(&s.mul(&u)));
        prop_assert!(s.sub(&s).is_zero());
    }

    #[test]
    fn inverse_is_two_sided(s in arb_unit(12)) {
        let inv = s.invert().unwrap();
        prop_assert_eq!(s.mul(&inv), BiSeries::one(s.order()));
    }

    #[test]
    fn truncation_coherence(s in arb_series(12), t in arb_unit(12), cut in 0i64..6) {
        let lo = Order::new(cut, 2);
        let full = s.mul(&t).add(&s);
        let direct = s.truncate(lo).mul(&t.truncate(lo)).add(&s.truncate(lo));
        prop_assert_eq!(full.truncate(lo), direct);
        let inv_full = t.invert().unwrap().truncate(lo);
        prop_assert_eq!(inv_full, t.truncate(lo).invert().unwrap());
    }

    #[test]
    fn integer_inputs_stay_integral(s in arb_series(10), t in arb_series(10)) {
        let unit = BiSeries::one(s.order()).add(&t.shift(0, 2));
        let r = s.mul(&t).add(&unit.invert().unwrap().mul(&s));
        prop_assert!(r.is_integral());
    }
}
