//! A small language for q-series identities: parsing, printing, evaluation
//! and verification.

mod ast;
mod eval;
mod forms;
mod lexer;
mod parser;
mod printer;
mod verify;

pub use ast::{Atom, Bound, Expr, FamilyTag, IdentityDoc, Length, Poch, PochBase};
pub use eval::eval_expr;
pub use forms::{Env, LinearForm, QuadForm};
pub use parser::{parse, parse_expr};
pub use printer::print_doc;
pub use verify::{eval_side, order_for, verify, Verdict, VerdictReport};
