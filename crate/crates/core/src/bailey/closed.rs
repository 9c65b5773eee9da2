//! Closed forms of `beta_n(a^e, 0, q^e)` known for particular parameters,
//! written in the identity language with the free variable `n`.

use super::{beta_from_alpha, FamilyParams};
use crate::dsl::{eval_expr, parse_expr, Env, Expr};
use crate::error::Result;
use crate::series::{BiSeries, Order};

/// `a^{a_shift * n} beta_n(a^e, 0, q^e)`, as text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosedBeta {
    pub params: (u32, u32, u32),
    /// Some closed forms carry `a^{-n}`; they are stored multiplied through.
    pub a_shift: u32,
    pub text: &'static str,
}

pub const CLOSED_BETAS: [ClosedBeta; 8] = [
    ClosedBeta {
        params: (1, 2, 4),
        a_shift: 0,
        text: "sum(r>=0){ a^(2 r) q^(2 r^2) / (poch(-a q; q; 2 r) poch(q^2; q^2; r) poch(q^2; q^2; n - r)) }",
    },
    ClosedBeta {
        params: (1, 2, 3),
        a_shift: 0,
        text: "1 / poch(-q; q; n) * sum(r>=0){ a^(r) q^(r^2) / (poch(q; q; r) poch(q; q; n - r) poch(-a q; q; n + r)) }",
    },
    ClosedBeta {
        params: (1, 3, 1),
        a_shift: 1,
        text: "(-1)^(n) q^(-1/2 n^2 - 1/2 n) poch(q; q; n) / (poch(q^3; q^3; n) poch(a q; q; 2 n)) \
               * sum(r>=0){ (-1)^(r) q^(1/2 r^2 + 1/2 r - n r) poch(a q; q; n + r) poch(a q; q; 2 n + r) \
               / (poch(q; q; r) poch(q; q; n - r) poch(a^3 q^3; q^3; n + r)) }",
    },
    ClosedBeta {
        params: (1, 4, 1),
        a_shift: 0,
        text: "(-1)^(n) q^(2 n^2) / poch(-a^2 q^2; q^2; 2 n) \
               * sum(r>=0){ q^(3 r^2 - 4 n r) / (poch(q^2; q^2; r) poch(-a q; q; 2 r) poch(q^4; q^4; n - r)) }",
    },
    ClosedBeta {
        params: (1, 4, 4),
        a_shift: 0,
        text: "1 / poch(-a^2 q^2; q^2; 2 n) \
               * sum(r>=0){ a^(2 r) q^(2 r^2) / (poch(q^2; q^2; r) poch(-a q; q; 2 r) poch(q^4; q^4; n - r)) }",
    },
    ClosedBeta {
        params: (2, 2, 2),
        a_shift: 0,
        text: "(-1)^(n) q^(n^2) / poch(-a q; q; 2 n) \
               * sum(r>=0){ (-1)^(r) q^(3/2 r^2 - 1/2 r - 2 n r) / (poch(a q; q^2; r) poch(q; q; r) poch(q^2; q^2; n - r)) }",
    },
    ClosedBeta {
        params: (2, 2, 3),
        a_shift: 0,
        text: "poch(a q^2; q^2; n) / poch(a^2 q^2; q^2; 2 n) \
               * sum(r>=0){ a^(r) q^(2 n r) / (poch(q^2; q^2; r) poch(q^2; q^2; n - r)) }",
    },
    ClosedBeta {
        params: (2, 2, 4),
        a_shift: 0,
        text: "poch(a q^2; q^2; n) / poch(a^2 q^2; q^2; 2 n) \
               * sum(r>=0){ a^(r) q^(2 r^2) / (poch(q^2; q^2; r) poch(q^2; q^2; n - r)) }",
    },
];

pub fn closed_beta(p: &FamilyParams) -> Option<&'static ClosedBeta> {
    CLOSED_BETAS.iter().find(|c| c.params == (p.d, p.e, p.k))
}

impl ClosedBeta {
    pub fn expr(&self) -> Result<Expr> {
        parse_expr(self.text, &["n"])
    }

    /// `a^{a_shift * n} beta_n`.
    pub fn eval(&self, n: u32, order: Order) -> Result<BiSeries> {
        eval_expr(&self.expr()?, &Env::with(&[("n", n as i64)]), order)
    }

    /// `sum_n a^{en} q^{en^2} beta_n(a^e, 0, q^e)`.
    pub fn wbl_left(&self, p: &FamilyParams, order: Order) -> Result<BiSeries> {
        let text = alloc::format!(
            "sum(n>=0){{ a^({} n) q^({} n^2) * ({}) }}",
            p.e - self.a_shift,
            p.e,
            self.text
        );
        eval_expr(&parse_expr(&text, &[])?, &Env::new(), order)
    }

    /// First `(n, a_exp, q_exp)` where the closed form and `beta_from_alpha`
    /// disagree, for `n <= n_max`.
    pub fn compare(&self, n_max: u32, order: Order) -> Result<Option<(u32, u32, i64)>> {
        let p = FamilyParams::new(self.params.0, self.params.1, self.params.2)?;
        for n in 0..=n_max {
            let closed = self.eval(n, order)?;
            let built = beta_from_alpha(&p, n, order)?.shift(self.a_shift * n, 0);
            if let Some((a, q)) = closed.first_difference(&built) {
                return Ok(Some((n, a, q)));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_match_alpha() {
        let order = Order::new(14, 8);
        for c in &CLOSED_BETAS {
            assert_eq!(c.compare(5, order).unwrap(), None, "{:?}", c.params);
        }
    }

    #[test]
    fn lookup() {
        let p = FamilyParams::new(1, 3, 1).unwrap();
        assert_eq!(closed_beta(&p).unwrap().a_shift, 1);
        assert!(closed_beta(&FamilyParams::new(1, 1, 2).unwrap()).is_none());
    }
}
