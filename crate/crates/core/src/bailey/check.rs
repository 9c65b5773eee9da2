use alloc::vec::Vec;

use super::family::residuals_of;
use super::{derive_family, product_side, q_family, q_lemma_form, wbl_sides, FamilyParams};
use crate::error::Error;
use crate::series::{BiSeries, Order};

/// Which checks [`check_family`] runs. Initial conditions are always checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckSet {
    pub lemma: bool,
    pub wbl: bool,
    pub residuals: bool,
    pub derive: bool,
    pub products: bool,
}

impl CheckSet {
    pub const ALL: CheckSet = CheckSet {
        lemma: true,
        wbl: true,
        residuals: true,
        derive: true,
        products: true,
    };
}

impl Default for CheckSet {
    fn default() -> Self {
        CheckSet::ALL
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    /// First differing position, by `q` exponent then `a` exponent.
    Mismatch { a_exp: u32, q_exp: i64 },
    Failed(Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    /// Family member the check concerns, if any.
    pub member: Option<u32>,
    pub outcome: CheckOutcome,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.outcome == CheckOutcome::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyReport {
    pub params: FamilyParams,
    pub order: Order,
    pub checks: Vec<CheckResult>,
    /// True when every series computed along the way had integer coefficients.
    pub integral: bool,
}

impl FamilyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

fn compare(s: &BiSeries, t: &BiSeries) -> CheckOutcome {
    match s.first_difference(t) {
        None => CheckOutcome::Pass,
        Some((a_exp, q_exp)) => CheckOutcome::Mismatch { a_exp, q_exp },
    }
}

struct Recorder {
    checks: Vec<CheckResult>,
    integral: bool,
}

impl Recorder {
    fn push(&mut self, name: &'static str, member: Option<u32>, outcome: CheckOutcome) {
        self.checks.push(CheckResult {
            name,
            member,
            outcome,
        });
    }

    fn note(&mut self, s: &BiSeries) {
        self.integral &= s.is_integral();
    }
}

/// Runs the selected checks for one family. Mathematical mismatches and
/// evaluation errors are recorded in the report.
pub fn check_family(p: &FamilyParams, order: Order, which: CheckSet) -> FamilyReport {
    let mut rec = Recorder {
        checks: Vec::new(),
        integral: true,
    };
    let report = |rec: Recorder| FamilyReport {
        params: *p,
        order,
        checks: rec.checks,
        integral: rec.integral,
    };
    let family = match q_family(p, order) {
        Ok(f) => f,
        Err(e) => {
            rec.push("definition", None, CheckOutcome::Failed(e));
            return report(rec);
        }
    };
    let q_only = Order::q_only(order.q);
    let one = BiSeries::one(q_only);
    for (i, q) in family.iter().enumerate() {
        rec.note(q);
        rec.push("initial-condition", Some(i as u32 + 1), compare(&q.eval_a_zero(), &one));
    }
    let last = family.last().expect("families have at least one member");

    if which.lemma {
        let outcome = match q_lemma_form(p, order) {
            Ok(s) => {
                rec.note(&s);
                compare(&s, last)
            }
            Err(e) => CheckOutcome::Failed(e),
        };
        rec.push("lemma", None, outcome);
    }

    if which.wbl {
        match wbl_sides(p, order) {
            Ok((left, right)) => {
                rec.note(&left);
                rec.note(&right);
                rec.push("bailey-left", None, compare(&left, last));
                rec.push("bailey-right", None, compare(&right, last));
            }
            Err(e) => rec.push("bailey", None, CheckOutcome::Failed(e)),
        }
    }

    if which.residuals {
        match residuals_of(p, &family) {
            Ok(res) => {
                for (i, r) in res.iter().enumerate() {
                    rec.note(r);
                    let zero = BiSeries::zero(r.order());
                    rec.push("residual", Some(i as u32 + 1), compare(r, &zero));
                }
            }
            Err(e) => rec.push("residual", None, CheckOutcome::Failed(e)),
        }
    }

    if which.derive {
        let derived = q_lemma_form(p, order).and_then(|seed| derive_family(p, &seed));
        match derived {
            Ok(members) => {
                for (i, (f, q)) in members.iter().zip(&family).enumerate() {
                    rec.note(f);
                    rec.push("derive", Some(i as u32 + 1), compare(f, q));
                }
            }
            Err(e) => rec.push("derive", None, CheckOutcome::Failed(e)),
        }
    }

    if which.products {
        for (i, q) in family.iter().enumerate() {
            let member = i as u32 + 1;
            let outcome = q
                .eval_a_one()
                .and_then(|at_one| {
                    let prod = product_side(p, member, order.q)?;
                    Ok((at_one, prod))
                })
                .map(|(at_one, prod)| {
                    rec.note(&prod);
                    compare(&at_one, &prod)
                })
                .unwrap_or_else(CheckOutcome::Failed);
            rec.push("product", Some(member), outcome);
        }
    }

    report(rec)
}
