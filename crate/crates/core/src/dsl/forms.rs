//! Exponent and length forms over summation variables.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Values of the summation variables in scope, innermost last.
#[derive(Clone, Debug, Default)]
pub struct Env {
    vars: Vec<(String, i64)>,
}

impl Env {
    pub fn new() -> Self {
        Env::default()
    }

    pub fn with(pairs: &[(&str, i64)]) -> Self {
        Env {
            vars: pairs.iter().map(|(n, v)| (String::from(*n), *v)).collect(),
        }
    }

    pub fn push(&mut self, name: &str, value: i64) {
        self.vars.push((name.into(), value));
    }

    pub fn pop(&mut self) {
        self.vars.pop();
    }

    pub fn get(&self, name: &str) -> Option<i64> {
        self.vars.iter().rev().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    fn lookup(&self, name: &str) -> Result<i64> {
        self.get(name).ok_or_else(|| Error::UnboundVariable {
            name: name.into(),
            line: 0,
            column: 0,
        })
    }
}

/// A polynomial with rational coefficients in named variables. Keys are
/// sorted lists of variable names (with repetition), so `n^2` is `[n, n]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub(crate) struct Poly {
    terms: BTreeMap<Vec<String>, Rational64>,
}

impl Poly {
    pub(crate) fn constant(c: Rational64) -> Self {
        let mut p = Poly::default();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub(crate) fn var(name: &str) -> Self {
        let mut p = Poly::default();
        p.terms.insert(alloc::vec![String::from(name)], Rational64::one());
        p
    }

    pub(crate) fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub(crate) fn as_constant(&self) -> Option<Rational64> {
        match self.degree() {
            0 => Some(self.terms.get(&Vec::new()).copied().unwrap_or_else(Rational64::zero)),
            _ => None,
        }
    }

    fn insert(&mut self, key: Vec<String>, c: Rational64) {
        let slot = self.terms.entry(key).or_insert_with(Rational64::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub(crate) fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(k.clone(), *c);
        }
        out
    }

    pub(crate) fn scale(&self, c: Rational64) -> Poly {
        let mut out = Poly::default();
        if !c.is_zero() {
            for (k, v) in &self.terms {
                out.terms.insert(k.clone(), *v * c);
            }
        }
        out
    }

    pub(crate) fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::default();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let mut key: Vec<String> = k1.iter().chain(k2).cloned().collect();
                key.sort();
                out.insert(key, *c1 * *c2);
            }
        }
        out
    }
}

/// Integer-coefficient linear form, used for lengths and powers of `a` and `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinearForm {
    pub constant: i64,
    pub coeffs: BTreeMap<String, i64>,
}

impl LinearForm {
    pub fn constant(c: i64) -> Self {
        LinearForm {
            constant: c,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.coeffs.keys().map(String::as_str)
    }

    pub fn eval(&self, env: &Env) -> Result<i64> {
        let mut total = self.constant;
        for (v, c) in &self.coeffs {
            total += c * env.lookup(v)?;
        }
        Ok(total)
    }

    pub(crate) fn from_poly(p: &Poly) -> Option<Self> {
        if p.degree() > 1 {
            return None;
        }
        let mut out = LinearForm::default();
        for (k, c) in &p.terms {
            if !c.is_integer() {
                return None;
            }
            let c = c.to_integer();
            match k.first() {
                None => out.constant = c,
                Some(v) => {
                    out.coeffs.insert(v.clone(), c);
                }
            }
        }
        Some(out)
    }
}

/// Rational-coefficient polynomial of degree at most two.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QuadForm {
    pub(crate) poly: Poly,
}

impl QuadForm {
    pub fn constant(c: i64) -> Self {
        QuadForm {
            poly: Poly::constant(Rational64::from_integer(c)),
        }
    }

    pub(crate) fn from_poly(p: Poly) -> Option<Self> {
        (p.degree() <= 2).then_some(QuadForm { poly: p })
    }

    pub fn as_constant(&self) -> Option<Rational64> {
        self.poly.as_constant()
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.poly.terms.keys().flatten().map(String::as_str)
    }

    /// Value at `env`; a fractional value is an error, never rounded.
    pub fn eval(&self, env: &Env) -> Result<i64> {
        let mut total = Rational64::zero();
        for (k, c) in &self.poly.terms {
            let mut t = *c;
            for v in k {
                t *= Rational64::from_integer(env.lookup(v)?);
            }
            total += t;
        }
        if !total.is_integer() {
            return Err(Error::NonIntegerExponent(alloc::format!(
                "{self} evaluates to {total}"
            )));
        }
        Ok(total.to_integer())
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &[String]) -> fmt::Result {
    let mut i = 0;
    let mut first = true;
    while i < vars.len() {
        let mut j = i;
        while j < vars.len() && vars[j] == vars[i] {
            j += 1;
        }
        if !first {
            f.write_str(" ")?;
        }
        first = false;
        f.write_str(&vars[i])?;
        if j - i > 1 {
            write!(f, "^{}", j - i)?;
        }
        i = j;
    }
    Ok(())
}

/// Terms by descending degree, then by variable names.
fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (&'a [String], Rational64)>,
{
    let mut terms: Vec<_> = terms.collect();
    if terms.is_empty() {
        return f.write_str("0");
    }
    terms.sort_by(|x, y| y.0.len().cmp(&x.0.len()).then_with(|| x.0.cmp(y.0)));
    for (idx, (vars, c)) in terms.into_iter().enumerate() {
        let negative = c < Rational64::zero();
        let mag = if negative { -c } else { c };
        if idx == 0 {
            if negative {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if negative { " - " } else { " + " })?;
        }
        let show_coeff = !mag.is_one() || vars.is_empty();
        if show_coeff {
            write!(f, "{mag}")?;
            if !vars.is_empty() {
                f.write_str(" ")?;
            }
        }
        write_monomial(f, vars)?;
    }
    Ok(())
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.poly.terms.iter().map(|(k, c)| (k.as_slice(), *c)))
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let keys: Vec<(Vec<String>, Rational64)> = self
            .coeffs
            .iter()
            .map(|(v, c)| (alloc::vec![v.clone()], Rational64::from_integer(*c)))
            .chain(
                (self.constant != 0)
                    .then(|| (Vec::new(), Rational64::from_integer(self.constant))),
            )
            .collect();
        write_terms(f, keys.iter().map(|(k, c)| (k.as_slice(), *c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    #[test]
    fn quadratic_form_evaluates_exactly() {
        // 5/2 n^2 + 3/2 n
        let n = Poly::var("n");
        let p = n.mul(&n).scale(r(5, 2)).add(&n.scale(r(3, 2)));
        let form = QuadForm::from_poly(p).unwrap();
        for (v, expected) in [(0, 0), (1, 4), (2, 13), (3, 27)] {
            assert_eq!(form.eval(&Env::with(&[("n", v)])).unwrap(), expected);
        }
        let half = QuadForm::from_poly(Poly::var("n").scale(r(1, 2))).unwrap();
        assert!(matches!(
            half.eval(&Env::with(&[("n", 1)])),
            Err(Error::NonIntegerExponent(_))
        ));
    }

    #[test]
    fn display_orders_by_degree() {
        let n = Poly::var("n");
        let m = Poly::var("r");
        let p = n
            .mul(&m)
            .scale(r(4, 1))
            .add(&n.mul(&n).scale(r(5, 2)))
            .add(&Poly::constant(r(-1, 1)))
            .add(&m.scale(r(-1, 2)));
        let form = QuadForm::from_poly(p).unwrap();
        assert_eq!(alloc::format!("{form}"), "5/2 n^2 + 4 n r - 1/2 r - 1");
    }

    #[test]
    fn linear_form_rejects_fractions_and_squares() {
        assert!(LinearForm::from_poly(&Poly::var("n").scale(r(1, 2))).is_none());
        let n = Poly::var("n");
        assert!(LinearForm::from_poly(&n.mul(&n)).is_none());
        let l = LinearForm::from_poly(&n.scale(r(2, 1)).add(&Poly::constant(r(1, 1)))).unwrap();
        assert_eq!(l.eval(&Env::with(&[("n", 3)])).unwrap(), 7);
        assert_eq!(alloc::format!("{l}"), "2 n + 1");
    }
}
