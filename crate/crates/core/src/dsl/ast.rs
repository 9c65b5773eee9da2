use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use super::forms::{LinearForm, QuadForm};
use crate::bailey::FamilyParams;

/// A single power: `a^L`, `q^P` or `(-1)^L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    A(LinearForm),
    Q(QuadForm),
    Sign(LinearForm),
}

/// Base of a Pochhammer symbol: `(-1)^negative * a^a_exp * q^q_exp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PochBase {
    pub negative: bool,
    pub a_exp: u32,
    pub q_exp: QuadForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Length {
    Finite(LinearForm),
    Infinite,
}

/// `(base; q^step)_length`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poch {
    pub base: PochBase,
    pub step: u32,
    pub length: Length,
}

/// `var >= lower`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    pub var: String,
    pub lower: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Atom(Atom),
    Poch(Poch),
    /// `(q^x, q^{P-x}, q^P; q^P)_inf`.
    Triple(i64, i64),
    Sum(Vec<Bound>, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Denominators are products of Pochhammer symbols, triple products,
    /// nonzero literals and powers of `q` or `-1`.
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
}

impl Expr {
    /// True when some atom or Pochhammer base carries `a`.
    pub fn mentions_a(&self) -> bool {
        match self {
            Expr::Int(_) | Expr::Triple(..) => false,
            Expr::Atom(Atom::A(_)) => true,
            Expr::Atom(_) => false,
            Expr::Poch(p) => p.base.a_exp > 0,
            Expr::Sum(_, body) | Expr::Neg(body) => body.mentions_a(),
            Expr::Add(l, r) | Expr::Sub(l, r) | Expr::Mul(l, r) | Expr::Div(l, r) => {
                l.mentions_a() || r.mentions_a()
            }
        }
    }

    /// True for expressions allowed as a denominator.
    pub fn is_denominator_safe(&self) -> bool {
        match self {
            Expr::Int(c) => *c != 0,
            Expr::Atom(Atom::Q(_)) | Expr::Atom(Atom::Sign(_)) => true,
            Expr::Atom(Atom::A(_)) => false,
            Expr::Poch(_) | Expr::Triple(..) => true,
            Expr::Mul(l, r) | Expr::Div(l, r) => l.is_denominator_safe() && r.is_denominator_safe(),
            Expr::Neg(x) => x.is_denominator_safe(),
            Expr::Sum(..) | Expr::Add(..) | Expr::Sub(..) => false,
        }
    }
}

/// Family membership of an identity: parameters and member index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyTag {
    pub params: FamilyParams,
    pub member: u32,
}

/// A named claim `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityDoc {
    pub name: String,
    pub modulus: Option<u32>,
    pub family: Option<FamilyTag>,
    pub default_order: Option<i64>,
    pub lhs: Expr,
    pub rhs: Expr,
}

impl IdentityDoc {
    /// Identities mentioning `a` are compared as bivariate series.
    pub fn mentions_a(&self) -> bool {
        self.lhs.mentions_a() || self.rhs.mentions_a()
    }
}
