//! The (1,2,4) family written out as bivariate double sums, against the engine.

use rrbailey_core::bailey::{derive_family, q_direct, wbl_sides, FamilyParams};
use rrbailey_core::dsl::{eval_expr, parse_expr, Env};
use rrbailey_core::{BiSeries, Order};

const DEN_ODD: &str = "(poch(-a q; q; 2 r + 1) poch(q^2; q^2; r) poch(q^2; q^2; n))";
const DEN_EVEN: &str = "(poch(-a q; q; 2 r) poch(q^2; q^2; r) poch(q^2; q^2; n))";

fn member(i: u32) -> String {
    let (num, den) = match i {
        1 => ("q^(2 n^2 + 4 n r + 4 r^2 + 2 n + 4 r)", DEN_ODD),
        2 => ("q^(2 n^2 + 4 n r + 4 r^2 + 2 n + 4 r)", DEN_EVEN),
        3 => ("q^(2 n^2 + 4 n r + 4 r^2 + 2 r) (1 + a q^(2 n + 2 r + 1))", DEN_ODD),
        4 => ("q^(2 n^2 + 4 n r + 4 r^2 + 2 r)", DEN_EVEN),
        5 => ("q^(2 n^2 + 4 n r + 4 r^2)", DEN_EVEN),
        _ => unreachable!(),
    };
    format!("sum(n>=0, r>=0){{ a^(2 n + 4 r) {num} / {den} }}")
}

fn eval(text: &str, order: Order) -> BiSeries {
    eval_expr(&parse_expr(text, &[]).unwrap(), &Env::new(), order).unwrap()
}

#[test]
fn double_sums_are_the_family() {
    let p = FamilyParams::new(1, 2, 4).unwrap();
    let order = Order::new(24, 24);
    for i in 1..=5 {
        assert_eq!(eval(&member(i), order), q_direct(&p, i, order).unwrap(), "member {i}");
    }
}

#[test]
fn lemma_left_side_is_the_last_member() {
    let p = FamilyParams::new(1, 2, 4).unwrap();
    let order = Order::new(24, 24);
    let (left, right) = wbl_sides(&p, order).unwrap();
    let f5 = eval(&member(5), order);
    assert_eq!(left, f5);
    assert_eq!(right, f5);
}

#[test]
fn zig_zag_from_the_last_member() {
    let p = FamilyParams::new(1, 2, 4).unwrap();
    let order = Order::new(24, 24);
    let derived = derive_family(&p, &eval(&member(5), order)).unwrap();
    for (i, f) in derived.iter().enumerate() {
        assert_eq!(*f, eval(&member(i as u32 + 1), order), "member {}", i + 1);
    }
}

#[test]
fn fifth_member_at_a_equal_one() {
    let order = Order::new(30, 30);
    let at_one = eval(&member(5), order).eval_a_one().unwrap();
    let product = eval("triple(5, 11) / poch(q^2; q^2; inf)", Order::q_only(30));
    assert_eq!(at_one, product);
}
