//! q-Pochhammer products, Jacobi triple products and bilateral theta sums.

use num_integer::Integer;
use num_rational::Rational64;

use super::{BiSeries, Order};
use crate::coeff::Coefficient;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PochLength {
    Finite(u32),
    Infinite,
}

/// `prod_{j=0}^{length-1} (1 - sign * a^a_exp * q^(q_offset + j*q_step))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PochSpec {
    pub sign: i8,
    pub a_exp: u32,
    pub q_offset: i64,
    pub q_step: u32,
    pub length: PochLength,
}

impl PochSpec {
    /// `(q^offset; q^step)_length`.
    pub fn q(q_offset: i64, q_step: u32, length: PochLength) -> Self {
        PochSpec {
            sign: 1,
            a_exp: 0,
            q_offset,
            q_step,
            length,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sign != 1 && self.sign != -1 {
            return Err(Error::BadParameters(alloc::format!(
                "Pochhammer sign must be +1 or -1, got {}",
                self.sign
            )));
        }
        if self.q_step == 0 {
            return Err(Error::BadParameters("Pochhammer step must be positive".into()));
        }
        if self.length == PochLength::Infinite && self.a_exp == 0 && self.q_offset <= 0 {
            return Err(Error::NonTerminating(alloc::format!(
                "infinite product with base q^{} never reaches the truncation",
                self.q_offset
            )));
        }
        Ok(())
    }
}

/// Expands a Pochhammer product to the given bounds. Infinite products stop
/// at the first factor whose `q`-exponent exceeds the truncation.
pub fn poch(spec: &PochSpec, order: Order) -> Result<BiSeries> {
    apply_poch(BiSeries::one(order), spec)
}

/// Multiplies `acc` by the product described by `spec`, one binomial at a time.
pub fn apply_poch(acc: BiSeries, spec: &PochSpec) -> Result<BiSeries> {
    for_each_factor(acc, spec, |s, exp| Ok(s.mul_one_minus(spec.sign, spec.a_exp, exp)))
}

/// Divides `acc` by the product described by `spec`, one binomial at a time.
pub fn divide_poch(acc: BiSeries, spec: &PochSpec) -> Result<BiSeries> {
    for_each_factor(acc, spec, |s, exp| s.div_one_minus(spec.sign, spec.a_exp, exp))
}

fn for_each_factor<F>(mut acc: BiSeries, spec: &PochSpec, mut step_fn: F) -> Result<BiSeries>
where
    F: FnMut(&BiSeries, i64) -> Result<BiSeries>,
{
    spec.validate()?;
    let step = spec.q_step as i64;
    let mut j = 0u32;
    loop {
        if let PochLength::Finite(len) = spec.length {
            if j >= len {
                break;
            }
        }
        let exp = spec.q_offset + step * j as i64;
        if exp + acc.min_q() > acc.order_q() {
            // Exponents only grow; the remaining factors are 1 modulo the truncation.
            break;
        }
        acc = step_fn(&acc, exp)?;
        j += 1;
    }
    Ok(acc)
}

/// `(q^x, q^{P-x}, q^P; q^P)_inf`, a series in `q` alone.
pub fn triple_product(x: i64, modulus: i64, order_q: i64) -> Result<BiSeries> {
    if x <= 0 || x >= modulus {
        return Err(Error::BadParameters(alloc::format!(
            "triple product needs 0 < x < P, got x = {x}, P = {modulus}"
        )));
    }
    let step = modulus as u32;
    let mut acc = BiSeries::one(Order::q_only(order_q));
    for offset in [x, modulus - x, modulus] {
        acc = apply_poch(acc, &PochSpec::q(offset, step, PochLength::Infinite))?;
    }
    Ok(acc)
}

/// `sum_{n in Z} (-1)^n q^{A n^2 + B n}`, truncated at `q^order_q`.
pub fn theta_sum(quad: Rational64, lin: Rational64, order_q: i64) -> Result<BiSeries> {
    if quad <= Rational64::from_integer(0) {
        return Err(Error::Divergent(alloc::format!(
            "quadratic coefficient {quad} is not positive"
        )));
    }
    // f(1) and f(-1) integral makes f(n) integral for every n.
    for probe in [quad + lin, quad - lin] {
        if !probe.is_integer() {
            return Err(Error::NonIntegerExponent(alloc::format!(
                "{quad} n^2 + {lin} n is not an integer at n = +-1"
            )));
        }
    }
    let exponent = |n: i64| -> i64 {
        let v = quad * Rational64::from_integer(n * n) + lin * Rational64::from_integer(n);
        v.to_integer()
    };
    // The exponent is convex in n with its minimum near -lin / (2 quad).
    let centre = (-lin / (quad * 2)).floor().to_integer();
    let mut terms = alloc::vec::Vec::new();
    for direction in [1i64, -1] {
        let mut n = if direction == 1 { centre } else { centre - 1 };
        loop {
            let e = exponent(n);
            if e <= order_q {
                let sign = if n.is_even() { 1 } else { -1 };
                terms.push((0u32, e, Coefficient::from(sign)));
            } else if n != centre {
                break;
            }
            n += direction;
        }
    }
    Ok(BiSeries::from_terms(terms, Order::q_only(order_q)))
}
