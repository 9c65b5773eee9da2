//! Text and JSON renderings of verification and family reports.

use std::fmt::Write;

use rrbailey_core::bailey::{CheckOutcome, FamilyParams, FamilyReport};
use rrbailey_core::dsl::{Verdict, VerdictReport};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub name: String,
    pub order: i64,
    pub a_order: u32,
    /// `equal`, `first_mismatch` or `error`.
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q_exp: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a_exp: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub message: Option<String>,
    pub integral: bool,
    pub wall_time_ms: f64,
}

impl From<&VerdictReport> for VerdictJson {
    fn from(r: &VerdictReport) -> Self {
        let mut out = VerdictJson {
            name: r.name.clone(),
            order: r.order,
            a_order: r.a_order,
            verdict: String::new(),
            q_exp: None,
            a_exp: None,
            lhs: None,
            rhs: None,
            kind: None,
            message: None,
            integral: r.integral,
            wall_time_ms: r.wall_time.map_or(0.0, |t| t.as_secs_f64() * 1e3),
        };
        match &r.verdict {
            Verdict::Equal => out.verdict = "equal".into(),
            Verdict::FirstMismatch { q_exp, a_exp, lhs, rhs } => {
                out.verdict = "first_mismatch".into();
                out.q_exp = Some(*q_exp);
                out.a_exp = Some(*a_exp);
                out.lhs = Some(lhs.to_string());
                out.rhs = Some(rhs.to_string());
            }
            Verdict::Error { kind, message } => {
                out.verdict = "error".into();
                out.kind = Some(kind.to_string());
                out.message = Some(message.clone());
            }
        }
        out
    }
}

pub fn verdict_line(r: &VerdictReport) -> String {
    let status = match &r.verdict {
        Verdict::Equal => "equal".to_string(),
        Verdict::FirstMismatch { q_exp, a_exp, lhs, rhs } => {
            format!("first mismatch at q^{q_exp} a^{a_exp}: lhs {lhs}, rhs {rhs}")
        }
        Verdict::Error { kind, message } => format!("error {kind}: {message}"),
    };
    let time = r.wall_time.map_or(0.0, |t| t.as_secs_f64());
    let note = if r.integral { "" } else { " (non-integral coefficients)" };
    format!("{:<10} N={:<3} {status}{note} [{time:.3}s]", r.name, r.order)
}

/// `(q^{di}, q^{d(2K+1-i)}, q^{d(2K+1)}; q^{d(2K+1)})_inf / (q^e; q^e)_inf`.
pub fn product_label(p: &FamilyParams, i: u32) -> String {
    let m = p.modulus();
    let e = q_pow(p.e);
    format!(
        "({}, {}, {m}; {m})_inf / ({e}; {e})_inf",
        q_pow(p.d * i),
        q_pow(m - p.d * i),
        m = q_pow(m)
    )
}

fn q_pow(j: u32) -> String {
    if j == 1 {
        "q".into()
    } else {
        format!("q^{j}")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MemberJson {
    pub i: u32,
    pub product: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub member: Option<u32>,
    /// `pass`, `mismatch` or `error`.
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q_exp: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a_exp: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub d: u32,
    pub e: u32,
    pub k: u32,
    pub members: Vec<MemberJson>,
    pub modulus: u32,
    pub order: i64,
    pub a_order: u32,
    pub checks: Vec<CheckJson>,
    pub integral: bool,
    pub passed: bool,
}

impl From<&FamilyReport> for FamilyJson {
    fn from(r: &FamilyReport) -> Self {
        let p = r.params;
        FamilyJson {
            d: p.d,
            e: p.e,
            k: p.k,
            members: (1..=p.big_k())
                .map(|i| MemberJson { i, product: product_label(&p, i) })
                .collect(),
            modulus: p.modulus(),
            order: r.order.q,
            a_order: r.order.a,
            checks: r
                .checks
                .iter()
                .map(|c| {
                    let mut out = CheckJson {
                        name: c.name.to_string(),
                        member: c.member,
                        outcome: "pass".into(),
                        q_exp: None,
                        a_exp: None,
                        message: None,
                    };
                    match &c.outcome {
                        CheckOutcome::Pass => {}
                        CheckOutcome::Mismatch { a_exp, q_exp } => {
                            out.outcome = "mismatch".into();
                            out.q_exp = Some(*q_exp);
                            out.a_exp = Some(*a_exp);
                        }
                        CheckOutcome::Failed(e) => {
                            out.outcome = "error".into();
                            out.message = Some(format!("{}: {e}", e.kind()));
                        }
                    }
                    out
                })
                .collect(),
            integral: r.integral,
            passed: r.passed(),
        }
    }
}

pub fn family_text(r: &FamilyReport) -> String {
    let p = r.params;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "family {p}: K = {}, modulus {}, N = {}, M = {}",
        p.big_k(),
        p.modulus(),
        r.order.q,
        r.order.a
    );
    for i in 1..=p.big_k() {
        let _ = writeln!(out, "  Q_{i}(1) = {}", product_label(&p, i));
    }
    for c in &r.checks {
        let who = c.member.map(|i| format!(" [{i}]")).unwrap_or_default();
        let status = match &c.outcome {
            CheckOutcome::Pass => "pass".to_string(),
            CheckOutcome::Mismatch { a_exp, q_exp } => format!("mismatch at q^{q_exp} a^{a_exp}"),
            CheckOutcome::Failed(e) => format!("error {}: {e}", e.kind()),
        };
        let _ = writeln!(out, "  {}{who}: {status}", c.name);
    }
    let _ = writeln!(
        out,
        "{} ({} checks{})",
        if r.passed() { "passed" } else { "FAILED" },
        r.checks.len(),
        if r.integral { "" } else { ", non-integral coefficients" }
    );
    out
}
