use alloc::vec::Vec;
use core::cmp::max;

use super::pair::{alpha_kernel, alpha_monomial};
use super::{closed_beta, parity_sign, smpbp_alpha_b0, FamilyParams};
use crate::error::{Error, Result};
use crate::series::{divide_poch, triple_product, BiSeries, Order, PochLength, PochSpec};

/// Hard cap on summation indices once the exponent bound says more terms matter.
fn cap(order: Order) -> i64 {
    max(order.q, 0) + 2
}

fn runaway(what: &str, order: Order) -> Error {
    Error::InsufficientTruncation(alloc::format!(
        "{what}: terms below q^{} persist past index {}",
        order.q,
        cap(order)
    ))
}

/// `1 / (a^e q^e; q^e)_inf`.
fn divide_by_aq_inf(p: &FamilyParams, s: BiSeries) -> Result<BiSeries> {
    divide_poch(s, &p.aq_poch(PochLength::Infinite))
}

/// Exponent of `q` in the `n`-th term of the direct definition of `Q_i`:
/// `(K + 1/2) d n^2 + (K + 1/2 - i) d n`.
fn direct_exponent(p: &FamilyParams, i: u32, n: i64) -> i64 {
    let (d, kk) = (p.d as i64, p.big_k() as i64);
    (2 * kk + 1) * d * (n * (n + 1) / 2) - i as i64 * d * n
}

/// `(K + 1/2) d n^2 - d n / 2`.
fn lemma_exponent(p: &FamilyParams, n: i64) -> i64 {
    let (d, kk) = (p.d as i64, p.big_k() as i64);
    d * (n * ((2 * kk + 1) * n - 1) / 2)
}

/// `Q^{(d,e,k)}_i(a)` summed straight from its definition.
pub fn q_direct(p: &FamilyParams, i: u32, order: Order) -> Result<BiSeries> {
    p.check_member(i)?;
    let (d, kk) = (p.d as i64, p.big_k());
    // (a q^d; q^d)_n / (q^d; q^d)_n, updated in place.
    let mut ratio = BiSeries::one(order);
    let mut total = BiSeries::zero(order);
    let mut n = 0i64;
    loop {
        let exp = direct_exponent(p, i, n);
        if exp > order.q {
            break;
        }
        if n > cap(order) {
            return Err(runaway("Q sum", order));
        }
        if n > 0 {
            ratio = ratio
                .mul_one_minus(1, 1, d * n)
                .div_one_minus(1, 0, d * n)?;
        }
        let term = ratio
            .mul_one_minus(1, i, (2 * n + 1) * d * i as i64)
            .shift(kk * n as u32, exp)
            .scale(&parity_sign(n as u64));
        total = total.add(&term);
        n += 1;
    }
    divide_by_aq_inf(p, total)
}

/// Every member `Q_1, ..., Q_K`.
pub fn q_family(p: &FamilyParams, order: Order) -> Result<Vec<BiSeries>> {
    (1..=p.big_k()).map(|i| q_direct(p, i, order)).collect()
}

/// `Q_K(a)` from the single sum with kernel
/// `(1 - a q^{2dn}) (a; q^d)_n / ((1 - a) (q^d; q^d)_n)`.
pub fn q_lemma_form(p: &FamilyParams, order: Order) -> Result<BiSeries> {
    let kk = p.big_k();
    let mut total = BiSeries::zero(order);
    let mut n = 0i64;
    loop {
        let exp = lemma_exponent(p, n);
        if exp > order.q {
            break;
        }
        if n > cap(order) {
            return Err(runaway("lemma sum", order));
        }
        let kernel = alpha_kernel(p, n as u32, order)?;
        let term = kernel
            .shift(kk * n as u32, exp)
            .scale(&parity_sign(n as u64))
            .truncate(order);
        total = total.add(&term);
        n += 1;
    }
    divide_by_aq_inf(p, total)
}

/// Right side of the limiting Bailey lemma:
/// `1/(a^e q^e; q^e)_inf * sum_n a^{en} q^{en^2} alpha_n(a^e, 0, q^e)`.
pub fn wbl_right(p: &FamilyParams, order: Order) -> Result<BiSeries> {
    let (d, e) = (p.d as i64, p.e as i64);
    let mut total = BiSeries::zero(order);
    let mut r = 0i64;
    loop {
        let n = d * r;
        let mono = alpha_monomial(p, r as u32);
        let q_exp = e * n * n + mono.q_exp;
        if q_exp > order.q {
            break;
        }
        if r > cap(order) {
            return Err(runaway("alpha sum", order));
        }
        let weighted = if mono.a_exp >= 0 {
            smpbp_alpha_b0(p, r as u32, Order::new(order.q - e * n * n, order.a))?
                .shift((e * n) as u32, e * n * n)
        } else {
            // alpha alone carries a negative power of a; only the weighted
            // product is a series.
            alpha_kernel(p, r as u32, order)?
                .scale(&parity_sign(r as u64))
                .shift((e * n + mono.a_exp) as u32, q_exp)
        };
        total = total.add(&weighted.truncate(order));
        r += 1;
    }
    divide_by_aq_inf(p, total)
}

/// Left side of the limiting Bailey lemma with `beta` built from `alpha`:
/// `sum_n a^{en} q^{en^2} beta_n(a^e, 0, q^e)`.
pub fn wbl_left_from_alpha(p: &FamilyParams, order: Order) -> Result<BiSeries> {
    let (d, e) = (p.d as i64, p.e as i64);
    let mut kernels: Vec<BiSeries> = Vec::new();
    let mut total = BiSeries::zero(order);
    let mut n = 0i64;
    loop {
        if n > cap(order) {
            return Err(runaway("beta sum", order));
        }
        let mut any = false;
        for r in 0..=n / d {
            let m = d * r;
            let mono = alpha_monomial(p, r as u32);
            let q_exp = e * n * n + mono.q_exp;
            if q_exp > order.q {
                continue;
            }
            any = true;
            while kernels.len() <= r as usize {
                kernels.push(alpha_kernel(p, kernels.len() as u32, order)?);
            }
            let term = kernels[r as usize]
                .scale(&parity_sign(r as u64))
                .shift((e * n + mono.a_exp) as u32, q_exp);
            let term = divide_poch(term, &PochSpec::q(e, p.e, PochLength::Finite((n - m) as u32)))?;
            let term = divide_poch(term, &p.aq_poch(PochLength::Finite((n + m) as u32)))?;
            total = total.add(&term.truncate(order));
        }
        // Each fixed r only grows with n, and a new r first appears on the
        // diagonal n = d r, where the exponent is the lemma exponent.
        if !any && lemma_exponent(p, n / d + 1) > order.q {
            break;
        }
        n += 1;
    }
    Ok(total)
}

/// Both sides of the limiting Bailey lemma, the left built from a closed-form
/// `beta` when one is known and from `alpha` otherwise.
pub fn wbl_sides(p: &FamilyParams, order: Order) -> Result<(BiSeries, BiSeries)> {
    let left = match closed_beta(p) {
        Some(c) => c.wbl_left(p, order)?,
        None => wbl_left_from_alpha(p, order)?,
    };
    Ok((left, wbl_right(p, order)?))
}

/// `c_i(a) * s(a q^d)` with `c_i(a) = (1 - a q^d) a^{i-1} q^{d(i-1)} / (a^e q^e; q^e)_d`.
fn shifted_step(p: &FamilyParams, i: u32, s: &BiSeries) -> Result<BiSeries> {
    let d = p.d as i64;
    let moved = s
        .subst_a_shift(p.d)
        .mul_one_minus(1, 1, d)
        .shift(i - 1, d * (i as i64 - 1));
    divide_poch(moved, &p.aq_poch(PochLength::Finite(p.d)))
}

/// `res_1 = Q_1 - c_1 Q_K(aq^d)` and `res_i = Q_i - Q_{i-1} - c_i Q_{K-i+1}(aq^d)`.
pub fn qdiff_residuals(p: &FamilyParams, order: Order) -> Result<Vec<BiSeries>> {
    let members = q_family(p, order)?;
    residuals_of(p, &members)
}

pub(crate) fn residuals_of(p: &FamilyParams, members: &[BiSeries]) -> Result<Vec<BiSeries>> {
    let kk = p.big_k() as usize;
    let mut out = Vec::with_capacity(kk);
    for i in 1..=kk {
        let partner = &members[kk - i];
        let mut res = members[i - 1].sub(&shifted_step(p, i as u32, partner)?);
        if i > 1 {
            res = res.sub(&members[i - 2]);
        }
        out.push(res);
    }
    Ok(out)
}

/// Solves the q-difference system for `F_1, ..., F_K` given `F_K`, in the
/// order `F_1, F_{K-1}, F_2, F_{K-2}, ...`.
pub fn derive_family(p: &FamilyParams, f_last: &BiSeries) -> Result<Vec<BiSeries>> {
    let kk = p.big_k() as usize;
    let mut f: Vec<Option<BiSeries>> = alloc::vec![None; kk + 1];
    f[kk] = Some(f_last.clone());
    if kk == 1 {
        return Ok(alloc::vec![f_last.clone()]);
    }
    let known = |f: &[Option<BiSeries>], i: usize| -> Result<BiSeries> {
        f[i].clone().ok_or_else(|| {
            Error::InsufficientTruncation(alloc::format!("member {i} needed before it is known"))
        })
    };
    f[1] = Some(shifted_step(p, 1, f_last)?);
    let (mut lo, mut hi) = (1usize, kk);
    while lo + 1 < hi {
        // F_{hi-1} = F_hi - c_hi F_{K-hi+1}(a q^d)
        let step = shifted_step(p, hi as u32, &known(&f, kk - hi + 1)?)?;
        f[hi - 1] = Some(known(&f, hi)?.sub(&step));
        hi -= 1;
        if lo + 1 >= hi {
            break;
        }
        // F_{lo+1} = F_lo + c_{lo+1} F_{K-lo}(a q^d)
        let step = shifted_step(p, lo as u32 + 1, &known(&f, kk - lo)?)?;
        f[lo + 1] = Some(known(&f, lo)?.add(&step));
        lo += 1;
    }
    f.into_iter().skip(1).map(|m| m.ok_or_else(|| {
        Error::InsufficientTruncation("zig-zag left a member undetermined".into())
    })).collect()
}

/// `(q^{di}, q^{d(2K+1-i)}, q^{d(2K+1)}; q^{d(2K+1)})_inf / (q^e; q^e)_inf`.
pub fn product_side(p: &FamilyParams, i: u32, order_q: i64) -> Result<BiSeries> {
    p.check_member(i)?;
    let d = p.d as i64;
    let numerator = triple_product(d * i as i64, p.modulus() as i64, order_q)?;
    divide_poch(numerator, &PochSpec::q(p.e as i64, p.e, PochLength::Infinite))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Coefficient;

    fn params(d: u32, e: u32, k: u32) -> FamilyParams {
        FamilyParams::new(d, e, k).unwrap()
    }

    // sum_n a^n q^{n^2 + shift n} / (q;q)_n by direct term expansion.
    fn rogers_ramanujan_sum(shift: i64, order: Order) -> BiSeries {
        let mut total = BiSeries::zero(order);
        for n in 0..=order.q {
            let e = n * n + shift * n;
            if e > order.q {
                break;
            }
            let mut term = BiSeries::monomial(Coefficient::one(), n as u32, e, order);
            for j in 1..=n {
                term = term.mul(&BiSeries::one(order).mul_one_minus(1, 0, j).invert().unwrap());
            }
            total = total.add(&term);
        }
        total
    }

    #[test]
    fn rogers_ramanujan_members() {
        let order = Order::new(18, 18);
        let p = params(1, 1, 2);
        assert_eq!(q_direct(&p, 2, order).unwrap(), rogers_ramanujan_sum(0, order));
        assert_eq!(q_direct(&p, 1, order).unwrap(), rogers_ramanujan_sum(1, order));
    }

    #[test]
    fn initial_conditions_hold() {
        let order = Order::new(15, 15);
        for (d, e, k) in [(1, 1, 1), (1, 2, 4), (2, 2, 3), (3, 1, 4)] {
            let p = params(d, e, k);
            for q in q_family(&p, order).unwrap() {
                assert_eq!(q.eval_a(0).unwrap(), BiSeries::one(Order::q_only(15)));
            }
        }
    }

    #[test]
    fn member_index_is_checked() {
        let p = params(1, 2, 4);
        let order = Order::new(5, 5);
        assert_eq!(
            q_direct(&p, 6, order).unwrap_err(),
            Error::IndexOutOfRange { index: 6, max: 5 }
        );
        assert!(q_direct(&p, 0, order).is_err());
        assert!(product_side(&p, 6, 5).is_err());
    }

    #[test]
    fn lemma_form_agrees() {
        let order = Order::new(20, 20);
        for (d, e, k) in [(1, 1, 2), (2, 2, 4), (3, 1, 1), (1, 3, 2)] {
            let p = params(d, e, k);
            let kk = p.big_k();
            assert_eq!(
                q_lemma_form(&p, order).unwrap(),
                q_direct(&p, kk, order).unwrap(),
                "{p}"
            );
        }
    }

    #[test]
    fn residuals_vanish() {
        let order = Order::new(16, 16);
        for (d, e, k) in [(1, 1, 2), (1, 2, 4), (3, 1, 4), (2, 3, 1)] {
            let p = params(d, e, k);
            for (i, r) in qdiff_residuals(&p, order).unwrap().iter().enumerate() {
                assert!(r.is_zero(), "{p} residual {}: {r}", i + 1);
            }
        }
    }

    #[test]
    fn zig_zag_recovers_the_family() {
        let order = Order::new(16, 16);
        for (d, e, k) in [(1, 1, 1), (1, 1, 2), (2, 2, 2), (1, 4, 4)] {
            let p = params(d, e, k);
            let family = q_family(&p, order).unwrap();
            let derived = derive_family(&p, family.last().unwrap()).unwrap();
            assert_eq!(derived.len(), family.len());
            for (i, (a, b)) in derived.iter().zip(&family).enumerate() {
                assert_eq!(a, b, "{p} member {}", i + 1);
            }
        }
    }

    #[test]
    fn bailey_lemma_sides_agree() {
        let order = Order::new(14, 14);
        for (d, e, k) in [(1, 1, 2), (1, 2, 4), (2, 2, 3), (3, 1, 1)] {
            let p = params(d, e, k);
            let (left, right) = wbl_sides(&p, order).unwrap();
            let direct = q_direct(&p, p.big_k(), order).unwrap();
            assert_eq!(right, direct, "{p} right");
            assert_eq!(left, direct, "{p} left");
        }
    }

    #[test]
    fn products_at_a_equal_one() {
        let n = 25;
        let order = Order::new(n, n as u32);
        for (d, e, k) in [(1, 1, 2), (1, 2, 3), (3, 1, 4)] {
            let p = params(d, e, k);
            for i in 1..=p.big_k() {
                let q = q_direct(&p, i, order).unwrap().eval_a(1).unwrap();
                assert_eq!(q, product_side(&p, i, n).unwrap(), "{p} member {i}");
            }
        }
    }
}
