//! Evaluation of expressions to truncated series.

use alloc::vec::Vec;

use super::ast::{Atom, Bound, Expr, Length, Poch};
use super::forms::Env;
use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::series::{apply_poch, divide_poch, BiSeries, Order, PochLength, PochSpec};

/// Extra `q`-precision for the first attempt; later attempts add whatever the
/// previous one fell short by, when negative powers of `q` eat into the order.
const FIRST_SLACK: i64 = 4;
const ATTEMPTS: usize = 4;

/// Evaluates `expr` to the given bounds, raising the working order as needed
/// so that the result is known through `order.q`.
pub fn eval_expr(expr: &Expr, env: &Env, order: Order) -> Result<BiSeries> {
    let mut slack = FIRST_SLACK;
    let mut reached = order.q;
    for _ in 0..ATTEMPTS {
        let work = Order::new(order.q + slack, order.a);
        let s = Evaluator { order: work }.eval(expr, &mut env.clone())?;
        if s.order_q() >= order.q {
            return Ok(s.truncate(order));
        }
        reached = s.order_q();
        slack += order.q - reached + FIRST_SLACK;
    }
    Err(Error::InsufficientTruncation(alloc::format!(
        "wanted q^{} but only reached q^{reached}",
        order.q
    )))
}

/// Lower bound on the `q`-exponents of a term under one assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Low {
    /// The term vanishes identically.
    Zero,
    At(i64),
    Unknown,
}

impl Low {
    fn times(self, other: Low) -> Low {
        match (self, other) {
            (Low::Zero, _) | (_, Low::Zero) => Low::Zero,
            (Low::Unknown, _) | (_, Low::Unknown) => Low::Unknown,
            (Low::At(x), Low::At(y)) => Low::At(x + y),
        }
    }

    fn plus(self, other: Low) -> Low {
        match (self, other) {
            (Low::Zero, x) | (x, Low::Zero) => x,
            (Low::Unknown, _) | (_, Low::Unknown) => Low::Unknown,
            (Low::At(x), Low::At(y)) => Low::At(x.min(y)),
        }
    }
}

/// A Pochhammer symbol resolved under an assignment: either a product of
/// binomials (`spec`) or the reciprocal of one, for negative lengths.
struct Resolved {
    spec: PochSpec,
    reciprocal: bool,
}

fn resolve(p: &Poch, env: &Env) -> Result<Resolved> {
    let offset = p.base.q_exp.eval(env)?;
    let sign = if p.base.negative { -1 } else { 1 };
    let spec = |q_offset, length| PochSpec {
        sign,
        a_exp: p.base.a_exp,
        q_offset,
        q_step: p.step,
        length,
    };
    Ok(match &p.length {
        Length::Infinite => Resolved {
            spec: spec(offset, PochLength::Infinite),
            reciprocal: false,
        },
        Length::Finite(l) => {
            let len = l.eval(env)?;
            if len >= 0 {
                Resolved {
                    spec: spec(offset, PochLength::Finite(len as u32)),
                    reciprocal: false,
                }
            } else {
                // (x; q^s)_{-k} = 1 / prod_{j=1}^{k} (1 - x q^{-js})
                let k = -len;
                Resolved {
                    spec: spec(offset - k * p.step as i64, PochLength::Finite(k as u32)),
                    reciprocal: true,
                }
            }
        }
    })
}

/// Exponents of the binomials of `spec` that matter for bounds: all of them
/// when finite, only the negative ones when infinite.
fn factor_exponents(spec: &PochSpec) -> impl Iterator<Item = i64> + '_ {
    let step = spec.q_step as i64;
    let count = match spec.length {
        PochLength::Finite(n) => n as i64,
        PochLength::Infinite => {
            if spec.q_offset >= 0 {
                0
            } else {
                (-spec.q_offset + step - 1) / step
            }
        }
    };
    (0..count).map(move |j| spec.q_offset + j * step)
}

fn is_zero_factor(spec: &PochSpec, exp: i64) -> bool {
    spec.a_exp == 0 && exp == 0 && spec.sign == 1
}

/// Bound for the product of binomials itself.
fn product_low(spec: &PochSpec) -> Low {
    let mut total = 0;
    for c in factor_exponents(spec) {
        if is_zero_factor(spec, c) {
            return Low::Zero;
        }
        total += c.min(0);
    }
    Low::At(total)
}

/// Bound for the reciprocal of the product of binomials.
fn reciprocal_low(spec: &PochSpec) -> Result<Low> {
    spec.validate()?;
    let mut total = 0;
    for c in factor_exponents(spec) {
        if is_zero_factor(spec, c) {
            return Err(Error::DivisionByZero("Pochhammer factor (1 - 1)".into()));
        }
        if c < 0 && spec.a_exp > 0 {
            return Ok(Low::Unknown);
        }
        total -= c.min(0);
    }
    Ok(Low::At(total))
}

struct Evaluator {
    order: Order,
}

impl Evaluator {
    fn cap(&self) -> i64 {
        self.order.q.max(0) + 2
    }

    fn low(&self, e: &Expr, env: &mut Env) -> Result<Low> {
        Ok(match e {
            Expr::Int(0) => Low::Zero,
            Expr::Int(_) | Expr::Triple(..) => Low::At(0),
            Expr::Atom(Atom::Q(p)) => Low::At(p.eval(env)?),
            Expr::Atom(_) => Low::At(0),
            Expr::Poch(p) => {
                let r = resolve(p, env)?;
                if r.reciprocal {
                    reciprocal_low(&r.spec)?
                } else {
                    product_low(&r.spec)
                }
            }
            Expr::Add(l, r) | Expr::Sub(l, r) => self.low(l, env)?.plus(self.low(r, env)?),
            Expr::Neg(x) => self.low(x, env)?,
            Expr::Mul(l, r) => self.low(l, env)?.times(self.low(r, env)?),
            Expr::Div(l, r) => self.low(l, env)?.times(self.den_low(r, env)?),
            Expr::Sum(bounds, body) => {
                let mut acc = Low::Zero;
                self.enumerate(bounds, env, &mut |me, env, _| {
                    acc = acc.plus(me.low(body, env)?);
                    Ok(())
                })?;
                acc
            }
        })
    }

    /// Bound for the reciprocal of a denominator.
    fn den_low(&self, e: &Expr, env: &mut Env) -> Result<Low> {
        Ok(match e {
            Expr::Int(0) => return Err(Error::DivisionByZero("literal 0".into())),
            Expr::Int(_) | Expr::Triple(..) | Expr::Atom(Atom::Sign(_)) => Low::At(0),
            Expr::Atom(Atom::Q(p)) => Low::At(-p.eval(env)?),
            Expr::Poch(p) => {
                let r = resolve(p, env)?;
                if r.reciprocal {
                    product_low(&r.spec)
                } else {
                    reciprocal_low(&r.spec)?
                }
            }
            Expr::Mul(l, r) => self.den_low(l, env)?.times(self.den_low(r, env)?),
            Expr::Div(l, r) => self.den_low(l, env)?.times(self.low(r, env)?),
            Expr::Neg(x) => self.den_low(x, env)?,
            _ => Low::Unknown,
        })
    }

    /// Calls `visit` for every assignment of `bounds` in the box
    /// `lower..=lower + cap`, passing whether the assignment touches the cap.
    fn enumerate<F>(&self, bounds: &[Bound], env: &mut Env, visit: &mut F) -> Result<()>
    where
        F: FnMut(&Self, &mut Env, bool) -> Result<()>,
    {
        fn go<F>(
            me: &Evaluator,
            bounds: &[Bound],
            env: &mut Env,
            on_edge: bool,
            visit: &mut F,
        ) -> Result<()>
        where
            F: FnMut(&Evaluator, &mut Env, bool) -> Result<()>,
        {
            let Some((b, rest)) = bounds.split_first() else {
                return visit(me, env, on_edge);
            };
            let cap = me.cap();
            for v in b.lower..=b.lower + cap {
                env.push(&b.var, v);
                let r = go(me, rest, env, on_edge || v == b.lower + cap, visit);
                env.pop();
                r?;
            }
            Ok(())
        }
        go(self, bounds, env, false, visit)
    }

    fn eval(&self, e: &Expr, env: &mut Env) -> Result<BiSeries> {
        let order = self.order;
        match e {
            Expr::Int(v) => Ok(BiSeries::constant(Coefficient::from(*v), order)),
            Expr::Add(l, r) => Ok(self.eval(l, env)?.add(&self.eval(r, env)?)),
            Expr::Sub(l, r) => Ok(self.eval(l, env)?.sub(&self.eval(r, env)?)),
            Expr::Neg(x) => Ok(self.eval(x, env)?.neg()),
            Expr::Sum(bounds, body) => {
                let mut total = BiSeries::zero(order);
                self.enumerate(bounds, env, &mut |me, env, on_edge| {
                    match me.low(body, env)? {
                        Low::Zero => return Ok(()),
                        Low::At(v) if v > order.q => return Ok(()),
                        _ => {}
                    }
                    if on_edge {
                        return Err(Error::InsufficientTruncation(alloc::format!(
                            "summand still reaches q^{} at index cap {}",
                            order.q,
                            me.cap()
                        )));
                    }
                    total = total.add(&me.eval(body, env)?);
                    Ok(())
                })?;
                Ok(total)
            }
            _ => self.product(e, env),
        }
    }

    /// Products and quotients: general factors are multiplied first, then
    /// monomials, Pochhammer symbols and triple products are applied in place.
    fn product(&self, e: &Expr, env: &mut Env) -> Result<BiSeries> {
        let mut factors: Vec<(&Expr, bool)> = Vec::new();
        let mut negate = false;
        flatten(e, false, &mut factors, &mut negate);
        let mut acc = BiSeries::one(self.order);
        let (general, cheap): (Vec<_>, Vec<_>) = factors.into_iter().partition(|(f, den)| {
            !den && matches!(f, Expr::Add(..) | Expr::Sub(..) | Expr::Sum(..))
        });
        for (f, _) in general {
            acc = acc.mul(&self.eval(f, env)?);
        }
        for (f, den) in cheap {
            acc = self.apply(acc, f, den, env)?;
        }
        Ok(if negate { acc.neg() } else { acc })
    }

    fn apply(&self, acc: BiSeries, f: &Expr, den: bool, env: &mut Env) -> Result<BiSeries> {
        match f {
            Expr::Int(v) => {
                let c = Coefficient::from(*v);
                if den {
                    let inv = c
                        .recip()
                        .ok_or_else(|| Error::DivisionByZero("literal 0".into()))?;
                    Ok(acc.scale(&inv))
                } else {
                    Ok(acc.scale(&c))
                }
            }
            Expr::Atom(Atom::A(l)) => {
                let m = l.eval(env)?;
                if den {
                    return Err(Error::NotInvertible("a power of a in a denominator".into()));
                }
                if m < 0 {
                    return Err(Error::NegativeAExponent(alloc::format!("a^{m}")));
                }
                Ok(acc.shift(m as u32, 0))
            }
            Expr::Atom(Atom::Q(p)) => {
                let j = p.eval(env)?;
                Ok(acc.shift(0, if den { -j } else { j }))
            }
            Expr::Atom(Atom::Sign(l)) => {
                let odd = l.eval(env)?.rem_euclid(2) == 1;
                Ok(if odd { acc.neg() } else { acc })
            }
            Expr::Poch(p) => {
                let r = resolve(p, env)?;
                if den != r.reciprocal {
                    divide_poch(acc, &r.spec)
                } else {
                    apply_poch(acc, &r.spec)
                }
            }
            Expr::Triple(x, m) => {
                let mut acc = acc;
                for offset in [*x, *m - *x, *m] {
                    let spec = PochSpec::q(offset, *m as u32, PochLength::Infinite);
                    acc = if den {
                        divide_poch(acc, &spec)?
                    } else {
                        apply_poch(acc, &spec)?
                    };
                }
                Ok(acc)
            }
            other if den => {
                let d = self.eval(other, env)?.invert()?;
                Ok(acc.mul(&d))
            }
            other => Ok(acc.mul(&self.eval(other, env)?)),
        }
    }
}

fn flatten<'e>(e: &'e Expr, den: bool, out: &mut Vec<(&'e Expr, bool)>, negate: &mut bool) {
    match e {
        Expr::Mul(l, r) => {
            flatten(l, den, out, negate);
            flatten(r, den, out, negate);
        }
        Expr::Div(l, r) => {
            flatten(l, den, out, negate);
            flatten(r, !den, out, negate);
        }
        Expr::Neg(x) => {
            *negate = !*negate;
            flatten(x, den, out, negate);
        }
        other => out.push((other, den)),
    }
}
