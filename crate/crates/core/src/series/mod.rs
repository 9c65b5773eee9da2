//! Truncated bivariate formal series in `a` and `q`.
//!
//! A [`BiSeries`] stores the exact coefficients of `a^m q^j` for
//! `0 <= m <= order_a` and `min_q <= j <= order_q`. Everything above the
//! truncation bounds is unknown, and every operation tracks how far its
//! result remains known. Rows are dense in `q` and indexed by the power of
//! `a`.

mod poch;

pub use poch::{apply_poch, divide_poch, poch, theta_sum, triple_product, PochLength, PochSpec};

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::min;
use core::fmt;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};

/// Truncation bounds: exponents of `q` up to `q` and of `a` up to `a` are kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Order {
    pub q: i64,
    pub a: u32,
}

impl Order {
    pub const fn new(q: i64, a: u32) -> Self {
        Order { q, a }
    }

    /// Bounds for a series in `q` alone.
    pub const fn q_only(q: i64) -> Self {
        Order { q, a: 0 }
    }
}

#[derive(Clone, Debug)]
pub struct BiSeries {
    order_q: i64,
    min_q: i64,
    order_a: u32,
    rows: Vec<Vec<Coefficient>>,
    /// Lowest power of `q` that a term dropped for exceeding the `a`-degree
    /// bound could have reached.
    overflow_q: Option<i64>,
}

fn lowest(x: Option<i64>, y: Option<i64>) -> Option<i64> {
    match (x, y) {
        (Some(x), Some(y)) => Some(min(x, y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn width(order_q: i64, min_q: i64) -> usize {
    if order_q < min_q {
        0
    } else {
        (order_q - min_q + 1) as usize
    }
}

impl BiSeries {
    fn blank(order_q: i64, min_q: i64, order_a: u32) -> Self {
        let min_q = min(min_q, 0);
        let w = width(order_q, min_q);
        BiSeries {
            order_q,
            min_q,
            order_a,
            rows: vec![vec![Coefficient::zero(); w]; order_a as usize + 1],
            overflow_q: None,
        }
    }

    pub fn zero(order: Order) -> Self {
        Self::blank(order.q, 0, order.a)
    }

    pub fn one(order: Order) -> Self {
        Self::constant(Coefficient::one(), order)
    }

    pub fn constant(c: Coefficient, order: Order) -> Self {
        Self::monomial(c, 0, 0, order)
    }

    /// `c * a^a_exp * q^q_exp`, truncated to `order`.
    pub fn monomial(c: Coefficient, a_exp: u32, q_exp: i64, order: Order) -> Self {
        let mut s = Self::blank(order.q, q_exp, order.a);
        if q_exp <= order.q && !c.is_zero() {
            if a_exp > order.a {
                s.mark_overflow(q_exp);
            } else {
                s.rows[a_exp as usize][(q_exp - s.min_q) as usize] = c;
            }
        }
        s.normalize()
    }

    /// Builds a series from `(a exponent, q exponent, coefficient)` triples;
    /// repeated positions are summed.
    pub fn from_terms<I>(terms: I, order: Order) -> Self
    where
        I: IntoIterator<Item = (u32, i64, Coefficient)>,
    {
        let terms: Vec<_> = terms.into_iter().collect();
        let low = terms.iter().map(|t| t.1).min().unwrap_or(0);
        let mut s = Self::blank(order.q, low, order.a);
        for (m, j, c) in terms {
            if j > order.q || c.is_zero() {
                continue;
            }
            if m > order.a {
                s.mark_overflow(j);
                continue;
            }
            s.rows[m as usize][(j - s.min_q) as usize] += &c;
        }
        s.normalize()
    }

    /// Builds a series in `q` alone from coefficients of `q^0, q^1, ...`.
    pub fn from_q_coefficients<I>(coeffs: I, order_q: i64) -> Self
    where
        I: IntoIterator<Item = i64>,
    {
        Self::from_terms(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(j, c)| (0, j as i64, Coefficient::from(c))),
            Order::q_only(order_q),
        )
    }

    pub fn order_q(&self) -> i64 {
        self.order_q
    }

    pub fn order_a(&self) -> u32 {
        self.order_a
    }

    pub fn order(&self) -> Order {
        Order::new(self.order_q, self.order_a)
    }

    /// Lower bound of stored `q` exponents; never positive.
    pub fn min_q(&self) -> i64 {
        self.min_q
    }

    /// Set when a term with `a`-degree above `order_a` but `q`-degree within
    /// `order_q` was discarded somewhere along the computation.
    pub fn a_overflow(&self) -> bool {
        self.overflow_q.is_some_and(|j| j <= self.order_q)
    }

    fn mark_overflow(&mut self, j: i64) {
        self.overflow_q = lowest(self.overflow_q, Some(j));
    }

    pub fn coeff(&self, a_exp: u32, q_exp: i64) -> Coefficient {
        self.get(a_exp, q_exp).cloned().unwrap_or_default()
    }

    /// The stored coefficient, `None` for zero or out-of-bounds positions.
    pub fn get(&self, a_exp: u32, q_exp: i64) -> Option<&Coefficient> {
        if a_exp > self.order_a || q_exp < self.min_q || q_exp > self.order_q {
            return None;
        }
        let c = &self.rows[a_exp as usize][(q_exp - self.min_q) as usize];
        (!c.is_zero()).then_some(c)
    }

    /// Nonzero terms as `(a exponent, q exponent, coefficient)`, by `a` then `q`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, i64, &Coefficient)> + '_ {
        let min_q = self.min_q;
        self.rows.iter().enumerate().flat_map(move |(m, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(i, c)| (m as u32, min_q + i as i64, c))
        })
    }

    /// Nonzero terms ordered by `q` exponent, then `a` exponent.
    pub fn terms_by_q(&self) -> Vec<(u32, i64, &Coefficient)> {
        let mut out: Vec<_> = self.terms().collect();
        out.sort_by_key(|&(m, j, _)| (j, m));
        out
    }

    pub fn num_terms(&self) -> usize {
        self.terms().count()
    }

    pub fn is_zero(&self) -> bool {
        self.terms().next().is_none()
    }

    /// Smallest `q` exponent carrying a nonzero coefficient.
    pub fn valuation_q(&self) -> Option<i64> {
        self.terms().map(|(_, j, _)| j).min()
    }

    pub fn max_a_degree(&self) -> Option<u32> {
        self.terms().map(|(m, _, _)| m).max()
    }

    /// True when every coefficient has denominator 1.
    pub fn is_integral(&self) -> bool {
        self.terms().all(|(_, _, c)| c.is_integer())
    }

    /// Coefficients of `a^0 q^j` for `j = from..=order_q`.
    pub fn q_coefficients(&self, from: i64) -> Vec<Coefficient> {
        (from..=self.order_q).map(|j| self.coeff(0, j)).collect()
    }

    fn row_valuations(&self) -> Vec<Option<i64>> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .position(|c| !c.is_zero())
                    .map(|i| self.min_q + i as i64)
            })
            .collect()
    }

    /// Shrinks `min_q` to `min(0, valuation)`.
    fn normalize(mut self) -> Self {
        let target = min(0, self.valuation_q().unwrap_or(0));
        if target > self.min_q {
            let drop = (target - self.min_q) as usize;
            for row in &mut self.rows {
                row.drain(..min(drop, row.len()));
            }
            self.min_q = target;
        }
        self
    }

    /// Restricts to tighter bounds. Bounds looser than the current ones are ignored.
    pub fn truncate(&self, order: Order) -> Self {
        let n = min(order.q, self.order_q);
        let m = min(order.a, self.order_a);
        let mut out = Self::blank(n, self.min_q, m);
        out.overflow_q = self.overflow_q;
        for (mm, j, c) in self.terms() {
            if j > n {
                continue;
            }
            if mm > m {
                out.mark_overflow(j);
                continue;
            }
            out.rows[mm as usize][(j - out.min_q) as usize] = c.clone();
        }
        out.normalize()
    }

    fn combine(&self, other: &Self, negate_other: bool) -> Self {
        let n = min(self.order_q, other.order_q);
        let m = min(self.order_a, other.order_a);
        let mut out = Self::blank(n, min(self.min_q, other.min_q), m);
        out.overflow_q = lowest(self.overflow_q, other.overflow_q);
        for (src, neg) in [(self, false), (other, negate_other)] {
            for (mm, j, c) in src.terms() {
                if j > n {
                    continue;
                }
                if mm > m {
                    out.mark_overflow(j);
                    continue;
                }
                let slot = &mut out.rows[mm as usize][(j - out.min_q) as usize];
                if neg {
                    *slot -= c;
                } else {
                    *slot += c;
                }
            }
        }
        out.normalize()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for row in &mut out.rows {
            for c in row.iter_mut() {
                if !c.is_zero() {
                    *c = -&*c;
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        if c.is_zero() {
            let mut z = Self::zero(self.order());
            z.overflow_q = self.overflow_q;
            return z;
        }
        let mut out = self.clone();
        for row in &mut out.rows {
            for x in row.iter_mut() {
                if !x.is_zero() {
                    *x = &*x * c;
                }
            }
        }
        out
    }

    /// Product, known up to `min(N_s + v_t, N_t + v_s)` where `v` is the
    /// (nonpositive part of the) `q`-valuation of each factor.
    pub fn mul(&self, other: &Self) -> Self {
        let vs = min(self.valuation_q().unwrap_or(0), 0);
        let vt = min(other.valuation_q().unwrap_or(0), 0);
        let n = min(self.order_q + vt, other.order_q + vs);
        let m = min(self.order_a, other.order_a);
        let mut out = Self::blank(n, self.min_q + other.min_q, m);
        out.overflow_q = lowest(
            self.overflow_q.map(|j| j + other.min_q),
            other.overflow_q.map(|j| j + self.min_q),
        );
        let other_rows = other.row_valuations();
        let other_low = other_rows.iter().flatten().copied().min();
        let Some(other_low) = other_low else {
            return out.normalize();
        };

        for (m1, row1) in self.rows.iter().enumerate() {
            for (i1, c1) in row1.iter().enumerate() {
                if c1.is_zero() {
                    continue;
                }
                let j1 = self.min_q + i1 as i64;
                if j1 + other_low > n {
                    break;
                }
                for (m2, low2) in other_rows.iter().enumerate() {
                    let Some(low2) = *low2 else { continue };
                    if j1 + low2 > n {
                        continue;
                    }
                    let mm = m1 + m2;
                    if mm > m as usize {
                        out.mark_overflow(j1 + low2);
                        continue;
                    }
                    let row2 = &other.rows[m2];
                    let start = (low2 - other.min_q) as usize;
                    let stop = min(row2.len() as i64, n - j1 - other.min_q + 1) as usize;
                    let base = j1 + other.min_q - out.min_q;
                    let out_row = &mut out.rows[mm];
                    for (i2, c2) in row2.iter().enumerate().take(stop).skip(start) {
                        if c2.is_zero() {
                            continue;
                        }
                        out_row[(base + i2 as i64) as usize] += &(c1 * c2);
                    }
                }
            }
        }
        out.normalize()
    }

    /// Multiplies by `a^a_exp q^q_exp`. A negative `q_exp` lowers the known order.
    pub fn shift(&self, a_exp: u32, q_exp: i64) -> Self {
        let n = if q_exp < 0 {
            self.order_q + q_exp
        } else {
            self.order_q
        };
        let mut out = Self::blank(n, self.min_q + q_exp, self.order_a);
        out.overflow_q = self.overflow_q.map(|j| j + q_exp);
        for (m, j, c) in self.terms() {
            let (mm, jj) = (m + a_exp, j + q_exp);
            if jj > n {
                continue;
            }
            if mm > self.order_a {
                out.mark_overflow(jj);
                continue;
            }
            out.rows[mm as usize][(jj - out.min_q) as usize] = c.clone();
        }
        out.normalize()
    }

    /// Multiplies by `c * a^a_exp * q^q_exp`.
    pub fn scale_by_monomial(&self, c: &Coefficient, a_exp: u32, q_exp: i64) -> Self {
        self.shift(a_exp, q_exp).scale(c)
    }

    /// Multiplies by the binomial `1 - sign * a^a_exp * q^q_exp`.
    pub fn mul_one_minus(&self, sign: i8, a_exp: u32, q_exp: i64) -> Self {
        let shifted = self.shift(a_exp, q_exp);
        if sign > 0 {
            self.sub(&shifted)
        } else {
            self.add(&shifted)
        }
    }

    /// Divides by the binomial `1 - sign * a^a_exp * q^q_exp`.
    pub fn div_one_minus(&self, sign: i8, a_exp: u32, q_exp: i64) -> Result<Self> {
        if a_exp == 0 && q_exp == 0 {
            return if sign > 0 {
                Err(Error::DivisionByZero("factor (1 - 1)".into()))
            } else {
                Ok(self.scale(&Coefficient::from_fraction(1, 2)))
            };
        }
        if q_exp < 0 {
            if a_exp > 0 {
                return Err(Error::NotInvertible(alloc::format!(
                    "1 - ({sign})a^{a_exp} q^{q_exp} has its lowest q-term at positive a-degree"
                )));
            }
            // 1/(1 - s q^c) = -s q^{-c} / (1 - s q^{-c}) for s = +-1, c < 0.
            let flipped = self
                .shift(0, -q_exp)
                .scale(&Coefficient::from(-(sign as i64)));
            return flipped.div_one_minus(sign, 0, -q_exp);
        }
        let mut out = self.clone();
        let (am, qs) = (a_exp as usize, q_exp as usize);
        let w = width(out.order_q, out.min_q);
        for i in 0..w {
            for m in 0..out.rows.len() {
                if m >= am && i >= qs {
                    let prev = out.rows[m - am][i - qs].clone();
                    if !prev.is_zero() {
                        if sign > 0 {
                            out.rows[m][i] += &prev;
                        } else {
                            out.rows[m][i] -= &prev;
                        }
                    }
                }
                if m + am > out.order_a as usize
                    && i + qs < w
                    && !out.rows[m][i].is_zero()
                {
                    let j = out.min_q + (i + qs) as i64;
                    out.mark_overflow(j);
                }
            }
        }
        Ok(out.normalize())
    }

    /// Multiplicative inverse. The lowest `q`-power must sit at `a`-degree 0.
    pub fn invert(&self) -> Result<Self> {
        let rows = self.row_valuations();
        let Some(v) = rows[0] else {
            return Err(Error::NotInvertible(
                "no term at a-degree 0 within the truncation".into(),
            ));
        };
        if rows.iter().flatten().any(|&low| low < v) {
            return Err(Error::NotInvertible(
                "lowest q-power does not occur at a-degree 0".into(),
            ));
        }
        let lead = self.coeff(0, v);
        let lead_inv = lead.recip().expect("leading coefficient is nonzero");

        // s = lead * q^v * (1 + u); solve t = 1/(1 + u) by increasing (j, m).
        let nu = self.order_q - v;
        let ma = self.order_a as usize;
        let unit: Vec<(usize, i64, Coefficient)> = self
            .terms()
            .filter(|&(m, j, _)| !(m == 0 && j == v))
            .filter(|&(_, j, _)| j - v <= nu)
            .map(|(m, j, c)| (m as usize, j - v, c * &lead_inv))
            .collect();
        let w = width(nu, 0);
        let mut t = vec![vec![Coefficient::zero(); w]; ma + 1];
        if w > 0 {
            t[0][0] = Coefficient::one();
        }
        for j in 0..w {
            for m in 0..=ma {
                if m == 0 && j == 0 {
                    continue;
                }
                let mut acc = Coefficient::zero();
                for (um, uj, uc) in &unit {
                    let uj = *uj as usize;
                    if *um <= m && uj <= j {
                        let prev = &t[m - um][j - uj];
                        if !prev.is_zero() {
                            acc += &(uc * prev);
                        }
                    }
                }
                if !acc.is_zero() {
                    t[m][j] = -acc;
                }
            }
        }
        let inner = BiSeries {
            order_q: nu,
            min_q: 0,
            order_a: self.order_a,
            rows: t,
            overflow_q: self.overflow_q.map(|j| j - v),
        };
        let mut out = inner.shift(0, -v).scale(&lead_inv);
        if v < 0 {
            out = out.truncate(Order::new(self.order_q, self.order_a));
        }
        Ok(out)
    }

    /// Substitutes `a -> a q^d`: the term `a^m q^j` moves to `a^m q^{j + d m}`.
    pub fn subst_a_shift(&self, d: u32) -> Self {
        let mut out = Self::blank(self.order_q, self.min_q, self.order_a);
        out.overflow_q = self.overflow_q;
        for (m, j, c) in self.terms() {
            let jj = j + (d as i64) * (m as i64);
            if jj <= self.order_q {
                out.rows[m as usize][(jj - out.min_q) as usize] = c.clone();
            }
        }
        out.normalize()
    }

    /// The `a^0` slice.
    pub fn eval_a_zero(&self) -> Self {
        let mut out = Self::blank(self.order_q, self.min_q, 0);
        out.rows[0] = self.rows[0].clone();
        out.normalize()
    }

    /// Sets `a = 1`, summing every `a`-degree per power of `q`.
    pub fn eval_a_one(&self) -> Result<Self> {
        if self.a_overflow() {
            return Err(Error::OverflowUnsound);
        }
        let mut out = Self::blank(self.order_q, self.min_q, 0);
        for row in &self.rows {
            for (slot, c) in out.rows[0].iter_mut().zip(row) {
                if !c.is_zero() {
                    *slot += c;
                }
            }
        }
        Ok(out.normalize())
    }

    /// `eval_a_zero` for `v = 0`, `eval_a_one` for `v = 1`.
    pub fn eval_a(&self, v: u8) -> Result<Self> {
        match v {
            0 => Ok(self.eval_a_zero()),
            1 => self.eval_a_one(),
            _ => Err(Error::BadParameters(alloc::format!(
                "a can only be set to 0 or 1, got {v}"
            ))),
        }
    }

    /// Exact division by `(1 - a)`, column by column in `q`.
    pub fn div_one_minus_a(&self) -> Result<Self> {
        if self.a_overflow() {
            return Err(Error::InexactDivision(
                "dividend lost a-terms above the a-truncation".into(),
            ));
        }
        let mut out = Self::blank(self.order_q, self.min_q, self.order_a);
        let w = width(self.order_q, self.min_q);
        for i in 0..w {
            let mut acc = Coefficient::zero();
            for m in 0..self.rows.len() {
                acc += &self.rows[m][i];
                out.rows[m][i] = acc.clone();
            }
            if !acc.is_zero() {
                return Err(Error::InexactDivision(alloc::format!(
                    "remainder {acc} at q^{}",
                    self.min_q + i as i64
                )));
            }
        }
        Ok(out.normalize())
    }

    /// First position, ordered by `q` then `a`, where the two series differ
    /// within their common bounds.
    pub fn first_difference(&self, other: &Self) -> Option<(u32, i64)> {
        let n = min(self.order_q, other.order_q);
        let m = min(self.order_a, other.order_a);
        let lo = min(self.min_q, other.min_q);
        (lo..=n).find_map(|j| {
            (0..=m)
                .find(|&mm| self.get(mm, j) != other.get(mm, j))
                .map(|mm| (mm, j))
        })
    }

    /// Bounds known to both operands.
    pub fn common_order(&self, other: &Self) -> Order {
        Order::new(
            min(self.order_q, other.order_q),
            min(self.order_a, other.order_a),
        )
    }
}

impl PartialEq for BiSeries {
    /// Agreement on the intersection of the truncation bounds.
    fn eq(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }
}

impl fmt::Display for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms_by_q();
        if terms.is_empty() {
            f.write_str("0")?;
        }
        for (idx, (m, j, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = if negative { -c } else { c.clone() };
            if idx == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || (m == 0 && j == 0) {
                parts.push(alloc::format!("{mag}"));
            }
            match m {
                0 => {}
                1 => parts.push("a".into()),
                _ => parts.push(alloc::format!("a^{m}")),
            }
            match j {
                0 => {}
                1 => parts.push("q".into()),
                _ => parts.push(alloc::format!("q^{j}")),
            }
            f.write_str(&parts.join("*"))?;
        }
        write!(f, " + O(q^{})", self.order_q + 1)
    }
}

#[cfg(test)]
mod tests;
