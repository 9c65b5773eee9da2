//! Checking an identity document to a given order.

use alloc::string::{String, ToString};

use super::ast::IdentityDoc;
use super::eval::eval_expr;
use super::forms::Env;
use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::series::{BiSeries, Order};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    FirstMismatch {
        q_exp: i64,
        a_exp: u32,
        lhs: Coefficient,
        rhs: Coefficient,
    },
    Error {
        kind: &'static str,
        message: String,
    },
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal)
    }

    fn from_error(e: &Error) -> Self {
        Verdict::Error {
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictReport {
    pub name: String,
    pub order: i64,
    /// `a`-degree compared; 0 for identities in `q` alone.
    pub a_order: u32,
    pub verdict: Verdict,
    /// Every coefficient computed on both sides is an integer.
    pub integral: bool,
    /// Left for callers with a clock to fill in.
    pub wall_time: Option<core::time::Duration>,
}

/// Bounds used for `doc`: bivariate when it mentions `a` (with `a`-degree
/// `m`, defaulting to `n`), else `q` alone.
pub fn order_for(doc: &IdentityDoc, n: i64, m: Option<u32>) -> Order {
    if doc.mentions_a() {
        Order::new(n, m.unwrap_or(n.max(0) as u32))
    } else {
        Order::q_only(n)
    }
}

/// Evaluates one side of a document.
pub fn eval_side(side: &super::ast::Expr, order: Order) -> Result<BiSeries> {
    let s = eval_expr(side, &Env::new(), order)?;
    match s.valuation_q() {
        Some(v) if v < 0 => Err(Error::LaurentResult(alloc::format!(
            "lowest term is q^{v}"
        ))),
        _ => Ok(s),
    }
}

/// Evaluates both sides of `doc` through `q^n` and compares them term by term.
pub fn verify(doc: &IdentityDoc, n: i64, m: Option<u32>) -> VerdictReport {
    let order = order_for(doc, n, m);
    let mut report = VerdictReport {
        name: doc.name.clone(),
        order: n,
        a_order: order.a,
        verdict: Verdict::Equal,
        integral: true,
        wall_time: None,
    };
    let sides = eval_side(&doc.lhs, order).and_then(|l| Ok((l, eval_side(&doc.rhs, order)?)));
    match sides {
        Err(e) => report.verdict = Verdict::from_error(&e),
        Ok((lhs, rhs)) => {
            report.integral = lhs.is_integral() && rhs.is_integral();
            if let Some((a_exp, q_exp)) = lhs.first_difference(&rhs) {
                report.verdict = Verdict::FirstMismatch {
                    q_exp,
                    a_exp,
                    lhs: lhs.coeff(a_exp, q_exp),
                    rhs: rhs.coeff(a_exp, q_exp),
                };
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::super::parser::parse;
    use super::*;

    fn doc(text: &str) -> IdentityDoc {
        parse(text).unwrap().remove(0)
    }

    #[test]
    fn rogers_ramanujan() {
        let d = doc("identity RR1 mod 5 { lhs = sum(n>=0){ q^(n^2) / poch(q;q;n) }; rhs = triple(2,5) / poch(q;q;inf); }");
        let r = verify(&d, 50, None);
        assert_eq!(r.verdict, Verdict::Equal);
        assert!(r.integral);
        assert_eq!(r.a_order, 0);
    }

    #[test]
    fn perturbed_kernel_is_localized() {
        let d = doc("identity bad { lhs = sum(n>=0){ q^(n^2 + 1) / poch(q;q;n) }; rhs = triple(2,5) / poch(q;q;inf); }");
        match verify(&d, 20, None).verdict {
            Verdict::FirstMismatch { q_exp, a_exp, lhs, rhs } => {
                assert_eq!((q_exp, a_exp), (0, 0));
                assert_eq!((lhs, rhs), (Coefficient::zero(), Coefficient::one()));
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn bivariate_documents() {
        let d = doc("identity aRR1 { lhs = sum(n>=0){ a^(n) q^(n^2) / poch(q;q;n) }; \
            rhs = 1/poch(a q;q;inf) * sum(n>=0){ (-1)^(n) a^(2 n) q^(5/2 n^2 - 1/2 n) \
            (1 - a q^(2 n)) poch(a;q;n) / (poch(a;q;1) poch(q;q;n)) }; }");
        let r = verify(&d, 15, Some(10));
        assert_eq!(r.verdict, Verdict::Equal);
        assert_eq!(r.a_order, 10);
        assert!(r.integral);
    }

    #[test]
    fn laurent_results_are_errors() {
        let d = doc("identity t { lhs = q^(-1); rhs = q^(-1); }");
        assert!(matches!(
            verify(&d, 5, None).verdict,
            Verdict::Error { kind: "LaurentResult", .. }
        ));
    }
}
