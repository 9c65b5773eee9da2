use core::cmp::{max, min};

use super::{parity_sign, FamilyParams};
use crate::error::{Error, Result};
use crate::series::{apply_poch, divide_poch, BiSeries, Order, PochLength, PochSpec};

/// The monomial `(-1)^r a^{(k-d) r} q^{(dk - d^2 + d) r^2 - d r (r+1)/2}` in front
/// of `alpha_{dr}(a^e, 0, q^e)`.
///
/// The `b -> 0` limit uses `b^{r/e} (a^{1/e} b^{-1/e} q^{d/e}; q^{d/e})_r
/// -> (-1)^r a^{r/e} q^{d r (r+1) / (2e)}`, reading the unsubscripted product in
/// the general definition as having length `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlphaMonomial {
    pub negative: bool,
    pub a_exp: i64,
    pub q_exp: i64,
}

pub fn alpha_monomial(p: &FamilyParams, r: u32) -> AlphaMonomial {
    let (d, k, r) = (p.d as i64, p.k as i64, r as i64);
    AlphaMonomial {
        negative: r % 2 == 1,
        a_exp: (k - d) * r,
        q_exp: (d * k - d * d + d) * r * r - d * r * (r + 1) / 2,
    }
}

/// `(1 - a q^{2dr}) (a; q^d)_r / ((1 - a) (q^d; q^d)_r)`, with the division by
/// `1 - a` done exactly. The result keeps every power of `a` it has, up to
/// `max(order.a, r + 1)`.
pub(crate) fn alpha_kernel(p: &FamilyParams, r: u32, order: Order) -> Result<BiSeries> {
    let d = p.d as i64;
    let work = Order::new(order.q, max(order.a, r + 1));
    let a_poch = PochSpec {
        sign: 1,
        a_exp: 1,
        q_offset: 0,
        q_step: p.d,
        length: PochLength::Finite(r),
    };
    let numerator = apply_poch(BiSeries::one(work), &a_poch)?.mul_one_minus(1, 1, 2 * d * r as i64);
    let reduced = numerator.div_one_minus_a()?;
    divide_poch(reduced, &PochSpec::q(d, p.d, PochLength::Finite(r)))
}

/// `alpha^{(d,e,k)}_{dr}(a^e, 0, q^e)`; the terms `alpha_n` with `d` not
/// dividing `n` vanish.
pub fn smpbp_alpha_b0(p: &FamilyParams, r: u32, order: Order) -> Result<BiSeries> {
    let mono = alpha_monomial(p, r);
    if mono.a_exp < 0 {
        return Err(Error::NegativeAExponent(alloc::format!(
            "alpha_{} of {p} carries a^{}",
            p.d * r,
            mono.a_exp
        )));
    }
    let kernel = alpha_kernel(p, r, Order::new(order.q - min(mono.q_exp, 0), order.a))?;
    Ok(kernel
        .scale(&parity_sign(r as u64))
        .shift(mono.a_exp as u32, mono.q_exp)
        .truncate(order))
}

/// `beta_n(a^e, 0, q^e) = sum_{m <= n} alpha_m / ((q^e; q^e)_{n-m} (a^e q^e; q^e)_{n+m})`.
pub fn beta_from_alpha(p: &FamilyParams, n: u32, order: Order) -> Result<BiSeries> {
    let mut total = BiSeries::zero(order);
    for r in 0..=n / p.d {
        let m = p.d * r;
        let alpha = smpbp_alpha_b0(p, r, order)?;
        let term = divide_poch(alpha, &PochSpec::q(p.e as i64, p.e, PochLength::Finite(n - m)))?;
        let term = divide_poch(term, &p.aq_poch(PochLength::Finite(n + m)))?;
        total = total.add(&term);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Coefficient;

    fn params(d: u32, e: u32, k: u32) -> FamilyParams {
        FamilyParams::new(d, e, k).unwrap()
    }

    #[test]
    fn alpha_at_zero_is_one() {
        let order = Order::new(12, 12);
        for (d, e, k) in [(1, 1, 2), (2, 2, 3), (3, 1, 1)] {
            let got = smpbp_alpha_b0(&params(d, e, k), 0, order).unwrap();
            assert_eq!(got, BiSeries::one(order));
        }
    }

    // The b -> 0 limit taken by hand: expand the product over j of
    // (t - a q^{d(j+1)}) as a polynomial in t = b^{1/e} and keep t^0. Returns
    // that limit together with the rest of the unsimplified ratio, divided
    // through with generic inverses.
    fn limit_oracle(p: &FamilyParams, r: u32, order: Order) -> (BiSeries, BiSeries) {
        let (d, k) = (p.d as i64, p.k as i64);
        let mut poly_in_t: alloc::vec::Vec<BiSeries> = alloc::vec![BiSeries::one(order)];
        for j in 0..r as i64 {
            let root = BiSeries::monomial(Coefficient::from(-1), 1, d * (j + 1), order);
            let mut next = alloc::vec![BiSeries::zero(order); poly_in_t.len() + 1];
            for (deg, c) in poly_in_t.iter().enumerate() {
                next[deg + 1] = next[deg + 1].add(c);
                next[deg] = next[deg].add(&c.mul(&root));
            }
            poly_in_t = next;
        }
        let spec = |off: i64, step: u32, a_exp: u32| PochSpec {
            sign: 1,
            a_exp,
            q_offset: off,
            q_step: step,
            length: PochLength::Finite(r),
        };
        let one = BiSeries::one(order);
        let num = apply_poch(one.clone(), &spec(2 * d, 2 * p.d, 1))
            .unwrap()
            .mul(&apply_poch(one.clone(), &spec(0, p.d, 1)).unwrap())
            .shift(((k - d + 1) * r as i64) as u32, (d * k - d * d + d) * (r * r) as i64);
        let den = apply_poch(one.clone(), &spec(0, 2 * p.d, 1))
            .unwrap()
            .mul(&apply_poch(one, &spec(d, p.d, 0)).unwrap());
        (poly_in_t.swap_remove(0), num.mul(&den.invert().unwrap()))
    }

    #[test]
    fn alpha_matches_the_b_limit() {
        let order = Order::new(16, 10);
        for (d, e, k) in [(1, 2, 4), (1, 1, 2), (2, 2, 3), (1, 4, 4)] {
            let p = params(d, e, k);
            for r in 0..4 {
                let (limit, ratio) = limit_oracle(&p, r, order);
                let got = smpbp_alpha_b0(&p, r, order).unwrap();
                assert_eq!(got.mul(&limit), ratio, "{p} r = {r}");
            }
        }
    }

    #[test]
    fn alpha_one_for_124() {
        // -a^3 q^3 (1 - a q^2) / (1 - q)
        let order = Order::new(10, 10);
        let got = smpbp_alpha_b0(&params(1, 2, 4), 1, order).unwrap();
        let mut expected = BiSeries::zero(order);
        for j in 3..=10 {
            expected = expected.add(&BiSeries::monomial(Coefficient::from(-1), 3, j, order));
            expected = expected.add(&BiSeries::monomial(Coefficient::one(), 4, j + 2, order));
        }
        assert_eq!(got, expected);
    }

    #[test]
    fn negative_powers_of_a_are_refused() {
        let p = params(3, 1, 1);
        assert!(matches!(
            smpbp_alpha_b0(&p, 1, Order::new(10, 10)),
            Err(Error::NegativeAExponent(_))
        ));
    }

    #[test]
    fn beta_zero_is_one() {
        let order = Order::new(12, 12);
        let got = beta_from_alpha(&params(1, 2, 4), 0, order).unwrap();
        assert_eq!(got, BiSeries::one(order));
    }
}
