//! Canonical text form of expressions and documents; `parse` reads it back
//! to the same tree.

use alloc::string::String;
use core::fmt::{self, Write};

use super::ast::{Atom, Expr, IdentityDoc, Length, PochBase};

const ADD: u8 = 1;
const MUL: u8 = 2;
const UNARY: u8 = 3;

fn write_expr(f: &mut dyn Write, e: &Expr, context: u8) -> fmt::Result {
    let (prec, open) = match e {
        Expr::Add(..) | Expr::Sub(..) => (ADD, context > ADD),
        Expr::Mul(..) | Expr::Div(..) => (MUL, context > MUL),
        Expr::Neg(_) => (UNARY, context > UNARY),
        _ => (UNARY + 1, false),
    };
    if open {
        f.write_str("(")?;
    }
    match e {
        Expr::Int(v) => write!(f, "{v}")?,
        Expr::Atom(a) => write_atom(f, a)?,
        Expr::Poch(p) => {
            f.write_str("poch(")?;
            write_base(f, &p.base)?;
            if p.step == 1 {
                f.write_str("; q; ")?;
            } else {
                write!(f, "; q^{}; ", p.step)?;
            }
            match &p.length {
                Length::Infinite => f.write_str("inf")?,
                Length::Finite(l) => write!(f, "{l}")?,
            }
            f.write_str(")")?;
        }
        Expr::Triple(x, m) => write!(f, "triple({x}, {m})")?,
        Expr::Sum(bounds, body) => {
            f.write_str("sum(")?;
            for (i, b) in bounds.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}>={}", b.var, b.lower)?;
            }
            f.write_str("){ ")?;
            write_expr(f, body, 0)?;
            f.write_str(" }")?;
        }
        Expr::Add(l, r) | Expr::Sub(l, r) => {
            write_expr(f, l, prec)?;
            f.write_str(if matches!(e, Expr::Add(..)) { " + " } else { " - " })?;
            write_expr(f, r, prec + 1)?;
        }
        Expr::Mul(l, r) | Expr::Div(l, r) => {
            write_expr(f, l, prec)?;
            f.write_str(if matches!(e, Expr::Mul(..)) { " * " } else { " / " })?;
            write_expr(f, r, prec + 1)?;
        }
        Expr::Neg(x) => {
            f.write_str("-")?;
            write_expr(f, x, UNARY)?;
        }
    }
    if open {
        f.write_str(")")?;
    }
    Ok(())
}

fn write_atom(f: &mut dyn Write, a: &Atom) -> fmt::Result {
    match a {
        Atom::A(l) if l.is_constant() && l.constant == 1 => f.write_str("a"),
        Atom::A(l) => write!(f, "a^({l})"),
        Atom::Q(p) if p.as_constant() == Some(1.into()) => f.write_str("q"),
        Atom::Q(p) => write!(f, "q^({p})"),
        Atom::Sign(l) => write!(f, "(-1)^({l})"),
    }
}

fn write_base(f: &mut dyn Write, b: &PochBase) -> fmt::Result {
    if b.negative {
        f.write_str("-")?;
    }
    let has_q = b.q_exp.as_constant() != Some(0.into());
    match b.a_exp {
        0 if !has_q => f.write_str("1")?,
        0 => {}
        1 => f.write_str("a")?,
        m => write!(f, "a^{m}")?,
    }
    if has_q {
        if b.a_exp > 0 {
            f.write_str(" ")?;
        }
        if b.q_exp.as_constant() == Some(1.into()) {
            f.write_str("q")?;
        } else {
            write!(f, "q^({})", b.q_exp)?;
        }
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self, 0)
    }
}

/// The document in corpus syntax.
pub fn print_doc(doc: &IdentityDoc) -> String {
    let mut out = String::new();
    let _ = write!(out, "identity {}", doc.name);
    if let Some(m) = doc.modulus {
        let _ = write!(out, " mod {m}");
    }
    if let Some(tag) = doc.family {
        let p = tag.params;
        let _ = write!(out, " family {} {} {} {}", p.d, p.e, p.k, tag.member);
    }
    if let Some(n) = doc.default_order {
        let _ = write!(out, " order {n}");
    }
    let _ = write!(out, " {{\n  lhs = {};\n  rhs = {};\n}}\n", doc.lhs, doc.rhs);
    out
}

#[cfg(test)]
mod tests {
    use super::super::parser::{parse, parse_expr};
    use super::*;

    #[test]
    fn round_trips() {
        let cases = [
            "1 - (q + q^2)",
            "-q * -a",
            "(-1)^(n + r) * q^(5/2 n^2 + 3/2 n) / (poch(q; q; n) * poch(-a q; q^2; 2 r + 1))",
            "a^(2 n) * poch(1; q; inf) - 2 * triple(1, 3)",
            "sum(m>=1){ q^(m - 1) / poch(q^(-1); q; m) } / 3",
            "poch(-a^2 q^(2); q^2; 2 n) / q^(-2)",
        ];
        for text in cases {
            let e = parse_expr(text, &["n", "r"]).unwrap();
            let printed = alloc::format!("{e}");
            let again = parse_expr(&printed, &["n", "r"]).unwrap();
            assert_eq!(again, e, "{text} printed as {printed}");
        }
    }

    #[test]
    fn document_round_trip() {
        let text = "identity x mod 7 family 1 3 1 2 order 20 { lhs = sum(n>=0){ q^(n^2) }; rhs = 1 - q; }";
        let doc = &parse(text).unwrap()[0];
        let printed = print_doc(doc);
        assert_eq!(&parse(&printed).unwrap()[0], doc);
    }
}
