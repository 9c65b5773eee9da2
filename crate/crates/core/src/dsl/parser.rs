//! Recursive-descent parser for identity documents and bare expressions.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_rational::Rational64;
use num_traits::Zero;

use super::ast::{Atom, Bound, Expr, FamilyTag, IdentityDoc, Length, Poch, PochBase};
use super::forms::{LinearForm, Poly, QuadForm};
use super::lexer::{tokenize, Tok, Token};
use crate::bailey::FamilyParams;
use crate::error::{Error, Result};

const KEYWORDS: [&str; 12] = [
    "identity", "mod", "family", "order", "lhs", "rhs", "sum", "poch", "triple", "inf", "a", "q",
];

/// Parses a corpus file into its identity documents.
pub fn parse(text: &str) -> Result<Vec<IdentityDoc>> {
    let mut p = Parser::new(text, &[])?;
    let mut docs: Vec<IdentityDoc> = Vec::new();
    while p.peek() != &Tok::Eof {
        let doc = p.doc()?;
        if docs.iter().any(|d| d.name == doc.name) {
            return Err(Error::DuplicateName(doc.name));
        }
        docs.push(doc);
    }
    Ok(docs)
}

/// Parses a bare expression. `free` names variables bound by the caller.
pub fn parse_expr(text: &str, free: &[&str]) -> Result<Expr> {
    let mut p = Parser::new(text, free)?;
    let e = p.expr()?;
    if p.peek() != &Tok::Eof {
        return Err(p.error("an operator or end of input"));
    }
    Ok(e)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    scope: Vec<String>,
}

impl Parser {
    fn new(text: &str, free: &[&str]) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
            scope: free.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> Error {
        let t = &self.toks[self.pos];
        Error::Syntax {
            line: t.line,
            column: t.column,
            expected: expected.into(),
        }
    }

    fn error_at(&self, at: usize, expected: &str) -> Error {
        let t = &self.toks[at];
        Error::Syntax {
            line: t.line,
            column: t.column,
            expected: expected.into(),
        }
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == w)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        let hit = self.is_sym(s);
        if hit {
            self.advance();
        }
        hit
    }

    fn expect_sym(&mut self, s: &str) -> Result<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.error(&alloc::format!("`{s}`")))
        }
    }

    fn expect_word(&mut self, w: &str) -> Result<()> {
        if self.is_word(w) {
            self.advance();
            Ok(())
        } else {
            Err(self.error(&alloc::format!("`{w}`")))
        }
    }

    fn int(&mut self, what: &str) -> Result<i64> {
        let negative = self.eat_sym("-");
        match self.peek() {
            Tok::Int(v) => {
                let v = *v;
                self.advance();
                Ok(if negative { -v } else { v })
            }
            _ => Err(self.error(what)),
        }
    }

    fn positive(&mut self, what: &str) -> Result<u32> {
        let at = self.pos;
        let v = self.int(what)?;
        u32::try_from(v)
            .ok()
            .filter(|v| *v > 0)
            .ok_or_else(|| self.error_at(at, what))
    }

    fn doc(&mut self) -> Result<IdentityDoc> {
        self.expect_word("identity")?;
        let name = match self.advance() {
            Tok::Ident(n) => n,
            _ => return Err(self.error_at(self.pos.saturating_sub(1), "an identity name")),
        };
        let (mut modulus, mut family, mut default_order) = (None, None, None);
        loop {
            if self.is_word("mod") {
                self.advance();
                modulus = Some(self.positive("a positive modulus")?);
            } else if self.is_word("family") {
                self.advance();
                let at = self.pos;
                let d = self.positive("positive d")?;
                let e = self.positive("positive e")?;
                let k = self.positive("positive k")?;
                let params = FamilyParams::new(d, e, k).map_err(|_| self.error_at(at, "(d, e, k)"))?;
                let at = self.pos;
                let member = self.positive("a member index")?;
                if member > params.big_k() {
                    return Err(self.error_at(at, "a member index within 1..=K"));
                }
                family = Some(FamilyTag { params, member });
            } else if self.is_word("order") {
                self.advance();
                default_order = Some(self.positive("a positive order")? as i64);
            } else {
                break;
            }
        }
        if !self.is_sym("{") {
            return Err(self.error("`mod`, `family`, `order` or `{`"));
        }
        self.advance();
        self.expect_word("lhs")?;
        self.expect_sym("=")?;
        let lhs = self.expr()?;
        self.expect_sym(";")?;
        self.expect_word("rhs")?;
        self.expect_sym("=")?;
        let rhs = self.expr()?;
        self.expect_sym(";")?;
        self.expect_sym("}")?;
        Ok(IdentityDoc {
            name,
            modulus,
            family,
            default_order,
            lhs,
            rhs,
        })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_sym("+") {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_sym("-") {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        match self.peek() {
            Tok::Int(_) => true,
            Tok::Ident(w) => !matches!(w.as_str(), "lhs" | "rhs" | "identity"),
            Tok::Sym(s) => *s == "(",
            Tok::Eof => false,
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_sym("*") {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat_sym("/") {
                let at = self.pos;
                let den = self.unary()?;
                if !den.is_denominator_safe() {
                    return Err(self.error_at(
                        at,
                        "a denominator built from poch, triple, nonzero integers and powers of q or -1",
                    ));
                }
                lhs = Expr::Div(Box::new(lhs), Box::new(den));
            } else if self.starts_factor() {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat_sym("-") {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr> {
        let at = self.pos;
        match self.peek().clone() {
            Tok::Int(v) => {
                self.advance();
                Ok(Expr::Int(v))
            }
            Tok::Sym("(") => {
                self.advance();
                let inner = self.expr()?;
                self.expect_sym(")")?;
                if self.is_sym("^") {
                    if inner != Expr::Neg(Box::new(Expr::Int(1))) {
                        return Err(self.error("no `^` here: only (-1) takes a symbolic power"));
                    }
                    self.advance();
                    return Ok(Expr::Atom(Atom::Sign(self.linear_exponent()?)));
                }
                Ok(inner)
            }
            Tok::Ident(w) => match w.as_str() {
                "a" => {
                    self.advance();
                    let e = if self.eat_sym("^") {
                        self.linear_exponent()?
                    } else {
                        LinearForm::constant(1)
                    };
                    Ok(Expr::Atom(Atom::A(e)))
                }
                "q" => {
                    self.advance();
                    let e = if self.eat_sym("^") {
                        self.quad_exponent()?
                    } else {
                        QuadForm::constant(1)
                    };
                    Ok(Expr::Atom(Atom::Q(e)))
                }
                "poch" => self.poch(),
                "triple" => {
                    self.advance();
                    self.expect_sym("(")?;
                    let x = self.int("an integer")?;
                    self.expect_sym(",")?;
                    let m = self.int("an integer")?;
                    self.expect_sym(")")?;
                    if x <= 0 || x >= m {
                        return Err(self.error_at(at, "triple(x, P) with 0 < x < P"));
                    }
                    Ok(Expr::Triple(x, m))
                }
                "sum" => self.sum(),
                _ => Err(self.error("a factor")),
            },
            _ => Err(self.error("a factor")),
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        self.advance();
        self.expect_sym("(")?;
        let mut bounds = Vec::new();
        loop {
            let at = self.pos;
            let var = match self.advance() {
                Tok::Ident(v) if !KEYWORDS.contains(&v.as_str()) => v,
                _ => return Err(self.error_at(at, "a summation variable")),
            };
            self.expect_sym(">=")?;
            let lower = self.int("an integer lower bound")?;
            bounds.push(Bound { var, lower });
            if !self.eat_sym(",") {
                break;
            }
        }
        self.expect_sym(")")?;
        self.expect_sym("{")?;
        let depth = self.scope.len();
        self.scope.extend(bounds.iter().map(|b| b.var.clone()));
        let body = self.expr();
        self.scope.truncate(depth);
        let body = body?;
        self.expect_sym("}")?;
        Ok(Expr::Sum(bounds, Box::new(body)))
    }

    fn poch(&mut self) -> Result<Expr> {
        self.advance();
        self.expect_sym("(")?;
        let base = self.poch_base()?;
        self.expect_sym(";")?;
        let at = self.pos;
        self.expect_word("q")?;
        let step = if self.eat_sym("^") {
            self.quad_exponent()?
                .as_constant()
                .filter(|c| c.is_integer() && *c > Rational64::zero())
                .and_then(|c| u32::try_from(c.to_integer()).ok())
                .ok_or_else(|| self.error_at(at, "a step q^s with positive integer s"))?
        } else {
            1
        };
        self.expect_sym(";")?;
        let length = if self.is_word("inf") {
            self.advance();
            Length::Infinite
        } else {
            let at = self.pos;
            let p = self.poly_expr()?;
            Length::Finite(
                LinearForm::from_poly(&p)
                    .ok_or_else(|| self.error_at(at, "an integer linear length or `inf`"))?,
            )
        };
        self.expect_sym(")")?;
        Ok(Expr::Poch(Poch { base, step, length }))
    }

    fn poch_base(&mut self) -> Result<PochBase> {
        let at = self.pos;
        let negative = self.eat_sym("-");
        let mut seen = false;
        if matches!(self.peek(), Tok::Int(1)) {
            self.advance();
            seen = true;
            self.eat_sym("*");
        }
        let mut a_exp = 0u32;
        if self.is_word("a") {
            self.advance();
            seen = true;
            a_exp = if self.eat_sym("^") {
                let at = self.pos;
                let v = self.int("a nonnegative integer")?;
                u32::try_from(v).map_err(|_| self.error_at(at, "a nonnegative integer"))?
            } else {
                1
            };
            self.eat_sym("*");
        }
        let mut q_exp = QuadForm::constant(0);
        if self.is_word("q") {
            self.advance();
            seen = true;
            q_exp = if self.eat_sym("^") {
                self.quad_exponent()?
            } else {
                QuadForm::constant(1)
            };
        }
        if !seen {
            return Err(self.error_at(at, "a Pochhammer base such as `a`, `-a q` or `q^2`"));
        }
        Ok(PochBase {
            negative,
            a_exp,
            q_exp,
        })
    }

    /// `^` has been consumed: an integer, a variable or a parenthesized polynomial.
    fn exponent_poly(&mut self) -> Result<Poly> {
        match self.peek().clone() {
            Tok::Int(_) | Tok::Sym("-") => {
                let v = self.int("an exponent")?;
                Ok(Poly::constant(Rational64::from_integer(v)))
            }
            Tok::Ident(_) => self.poly_atom(),
            Tok::Sym("(") => {
                self.advance();
                let p = self.poly_expr()?;
                self.expect_sym(")")?;
                Ok(p)
            }
            _ => Err(self.error("an exponent")),
        }
    }

    fn quad_exponent(&mut self) -> Result<QuadForm> {
        let at = self.pos;
        let p = self.exponent_poly()?;
        QuadForm::from_poly(p).ok_or_else(|| self.error_at(at, "an exponent of degree at most 2"))
    }

    fn linear_exponent(&mut self) -> Result<LinearForm> {
        let at = self.pos;
        let p = self.exponent_poly()?;
        LinearForm::from_poly(&p).ok_or_else(|| self.error_at(at, "an integer linear exponent"))
    }

    fn poly_expr(&mut self) -> Result<Poly> {
        let mut acc = self.poly_term()?;
        loop {
            if self.eat_sym("+") {
                acc = acc.add(&self.poly_term()?);
            } else if self.eat_sym("-") {
                acc = acc.add(&self.poly_term()?.scale(Rational64::from_integer(-1)));
            } else {
                return Ok(acc);
            }
        }
    }

    fn poly_term(&mut self) -> Result<Poly> {
        let mut acc = self.poly_unary()?;
        loop {
            if self.eat_sym("*") {
                acc = acc.mul(&self.poly_unary()?);
            } else if self.eat_sym("/") {
                let at = self.pos;
                let d = self
                    .poly_unary()?
                    .as_constant()
                    .filter(|c| !c.is_zero())
                    .ok_or_else(|| self.error_at(at, "a nonzero constant divisor"))?;
                acc = acc.scale(d.recip());
            } else if matches!(self.peek(), Tok::Int(_) | Tok::Ident(_) | Tok::Sym("(")) {
                acc = acc.mul(&self.poly_unary()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn poly_unary(&mut self) -> Result<Poly> {
        if self.eat_sym("-") {
            return Ok(self.poly_unary()?.scale(Rational64::from_integer(-1)));
        }
        let base = self.poly_atom()?;
        if self.eat_sym("^") {
            let at = self.pos;
            let e = self.int("a small power")?;
            if !(0..=4).contains(&e) {
                return Err(self.error_at(at, "a power between 0 and 4"));
            }
            let mut out = Poly::constant(Rational64::from_integer(1));
            for _ in 0..e {
                out = out.mul(&base);
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn poly_atom(&mut self) -> Result<Poly> {
        let t = self.toks[self.pos].clone();
        match t.tok {
            Tok::Int(v) => {
                self.advance();
                Ok(Poly::constant(Rational64::from_integer(v)))
            }
            Tok::Ident(name) => {
                if !self.scope.contains(&name) {
                    return Err(Error::UnboundVariable {
                        name,
                        line: t.line,
                        column: t.column,
                    });
                }
                self.advance();
                Ok(Poly::var(&name))
            }
            Tok::Sym("(") => {
                self.advance();
                let p = self.poly_expr()?;
                self.expect_sym(")")?;
                Ok(p)
            }
            _ => Err(self.error("a number, a summation variable or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_document() {
        let docs = parse("identity t { lhs = 1; rhs = 1; }").unwrap();
        assert_eq!(docs.len(), 1);
        assert_eq!(docs[0].name, "t");
        assert_eq!(docs[0].lhs, Expr::Int(1));
        assert_eq!(docs[0].rhs, Expr::Int(1));
    }

    #[test]
    fn rogers_ramanujan_shape() {
        let text = "identity RR1 mod 5 family 1 1 2 2 {
            lhs = sum(n>=0){ q^(n^2) / poch(q; q; n) };
            rhs = triple(2,5) / poch(q; q; inf);
        }";
        let doc = &parse(text).unwrap()[0];
        assert_eq!(doc.modulus, Some(5));
        assert_eq!(doc.family.unwrap().member, 2);
        let Expr::Sum(bounds, body) = &doc.lhs else {
            panic!("lhs is not a sum")
        };
        assert_eq!(bounds[0].var, "n");
        assert!(matches!(**body, Expr::Div(..)));
        assert!(matches!(&doc.rhs, Expr::Div(l, _) if **l == Expr::Triple(2, 5)));
    }

    #[test]
    fn unbound_variable() {
        let err = parse("identity t { lhs = q^(n); rhs = 1; }").unwrap_err();
        assert_eq!(
            err,
            Error::UnboundVariable {
                name: "n".into(),
                line: 1,
                column: 23
            }
        );
        assert!(parse_expr("poch(q; q; m)", &["n"]).is_err());
        assert!(parse_expr("poch(q; q; n)", &["n"]).is_ok());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse("identity t {\n lhs = 1 +;\n rhs = 1; }").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, column: 11, .. }), "{err:?}");
        assert!(matches!(
            parse("identity t { lhs = 1 / (1 + q); rhs = 1; }"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse("identity t { lhs = triple(5, 5); rhs = 1; }"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_expr("q^(n^3)", &["n"]),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn duplicate_names() {
        let text = "identity t { lhs = 1; rhs = 1; } identity t { lhs = 1; rhs = 1; }";
        assert_eq!(parse(text).unwrap_err(), Error::DuplicateName("t".into()));
    }

    #[test]
    fn implicit_products_and_signs() {
        let e = parse_expr("(-1)^(n+r) a^(2n) q^(5/2 n^2 + 3/2 n) poch(-a q; q; 2r+1)", &["n", "r"])
            .unwrap();
        let mut atoms = 0;
        let mut stack = alloc::vec![&e];
        while let Some(x) = stack.pop() {
            match x {
                Expr::Mul(l, r) => {
                    stack.push(l);
                    stack.push(r);
                }
                Expr::Atom(_) | Expr::Poch(_) => atoms += 1,
                other => panic!("unexpected node {other:?}"),
            }
        }
        assert_eq!(atoms, 4);
    }
}
