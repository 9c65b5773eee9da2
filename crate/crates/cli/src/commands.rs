//! The subcommands, writing to caller-supplied streams and returning an exit code.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;
use rrbailey_core::bailey::{
    beta_from_alpha, check_family, closed_beta, q_direct, wbl_left_from_alpha, wbl_right,
    CheckSet, FamilyParams,
};
use rrbailey_core::dsl::{eval_side, parse, parse_expr, verify, IdentityDoc, VerdictReport};
use rrbailey_core::{BiSeries, Error, Order};

use crate::corpus;
use crate::report::{family_text, verdict_line, FamilyJson, VerdictJson};

pub const SUCCESS: i32 = 0;
pub const FAILURE: i32 = 1;
pub const USAGE: i32 = 2;

pub const DEFAULT_ORDER: i64 = 50;

fn code_for(e: &Error) -> i32 {
    if e.is_parse_error() {
        USAGE
    } else {
        FAILURE
    }
}

/// Coefficients in ascending powers of `q`; one line per power when `a` is
/// present, listing `a^0 .. a^M`.
pub fn format_series(s: &BiSeries) -> String {
    let lo = s.valuation_q().map_or(0, |v| v.min(0));
    if s.order_a() == 0 {
        let line = s
            .q_coefficients(lo)
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        return if lo < 0 { format!("q^{lo}: {line}") } else { line };
    }
    (lo..=s.order_q())
        .map(|j| {
            let row = (0..=s.order_a())
                .map(|m| s.coeff(m, j).to_string())
                .collect::<Vec<_>>()
                .join(" ");
            format!("q^{j}: {row}")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn expand(expr: &str, n: i64, m: Option<u32>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let e = match parse_expr(expr, &[]) {
        Ok(e) => e,
        Err(e) => {
            let _ = writeln!(err, "error {}: {e}", e.kind());
            return USAGE;
        }
    };
    let order = if e.mentions_a() {
        Order::new(n, m.unwrap_or(n.max(0) as u32))
    } else {
        Order::q_only(n)
    };
    match eval_side(&e, order) {
        Ok(s) => {
            let _ = writeln!(out, "{}", format_series(&s));
            SUCCESS
        }
        Err(e) => {
            let _ = writeln!(err, "error {}: {e}", e.kind());
            code_for(&e)
        }
    }
}

/// Documents from `paths`, or the embedded corpus when there are none.
pub fn load(paths: &[PathBuf]) -> Result<Vec<IdentityDoc>, String> {
    if paths.is_empty() {
        return corpus::docs()
            .map(|v| v.into_iter().map(|(_, d)| d).collect())
            .map_err(|e| format!("embedded corpus: {e}"));
    }
    let mut docs = Vec::new();
    for p in paths {
        let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
        docs.extend(parse(&text).map_err(|e| format!("{}: {e}", p.display()))?);
    }
    Ok(docs)
}

pub struct VerifyOptions {
    pub order: Option<i64>,
    pub a_order: Option<u32>,
    pub json: bool,
    pub jobs: Option<usize>,
}

/// Reports in input order, whatever the degree of parallelism.
pub fn verify_all(docs: &[IdentityDoc], opts: &VerifyOptions) -> Vec<VerdictReport> {
    let run = || {
        docs.par_iter()
            .map(|d| {
                let n = opts.order.or(d.default_order).unwrap_or(DEFAULT_ORDER);
                let start = Instant::now();
                let mut r = verify(d, n, opts.a_order);
                r.wall_time = Some(start.elapsed());
                r
            })
            .collect()
    };
    match opts.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        },
        None => run(),
    }
}

pub fn verify_cmd(paths: &[PathBuf], opts: &VerifyOptions, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let docs = match load(paths) {
        Ok(d) => d,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return USAGE;
        }
    };
    let reports = verify_all(&docs, opts);
    let equal = reports.iter().filter(|r| r.verdict.is_equal()).count();
    for r in &reports {
        if opts.json {
            let line = serde_json::to_string(&VerdictJson::from(r)).expect("report serializes");
            let _ = writeln!(out, "{line}");
        } else {
            let _ = writeln!(out, "{}", verdict_line(r));
        }
    }
    if !opts.json {
        let _ = writeln!(out, "{equal}/{} equal", reports.len());
    }
    if equal == reports.len() {
        SUCCESS
    } else {
        FAILURE
    }
}

pub struct FamilyOptions {
    pub order: i64,
    pub a_order: Option<u32>,
    pub derive: bool,
    pub products: bool,
    pub residuals: bool,
    pub json: bool,
}

pub fn family_cmd(p: &FamilyParams, opts: &FamilyOptions, out: &mut dyn Write) -> i32 {
    let which = if opts.derive || opts.products || opts.residuals {
        CheckSet {
            lemma: true,
            wbl: true,
            residuals: opts.residuals,
            derive: opts.derive,
            products: opts.products,
        }
    } else {
        CheckSet::ALL
    };
    let order = Order::new(opts.order, opts.a_order.unwrap_or(opts.order.max(0) as u32));
    let report = check_family(p, order, which);
    if opts.json {
        let line = serde_json::to_string(&FamilyJson::from(&report)).expect("report serializes");
        let _ = writeln!(out, "{line}");
    } else {
        let _ = write!(out, "{}", family_text(&report));
    }
    if report.passed() {
        SUCCESS
    } else {
        FAILURE
    }
}

pub fn bailey_cmd(p: &FamilyParams, n_max: u32, n: i64, m: Option<u32>, out: &mut dyn Write) -> i32 {
    let order = Order::new(n, m.unwrap_or(n.max(0) as u32));
    let mut ok = true;
    let closed = closed_beta(p);
    let _ = writeln!(
        out,
        "bailey pair {p}: beta_n(a^{e}, 0, q^{e}) for n <= {n_max}, N = {}, M = {}{}",
        order.q,
        order.a,
        if closed.is_some() { ", against the closed form" } else { ", no closed form" },
        e = p.e
    );
    for k in 0..=n_max {
        let built = match beta_from_alpha(p, k, order) {
            Ok(b) => b,
            Err(e) => {
                ok = false;
                let _ = writeln!(out, "  n = {k}: error {}: {e}", e.kind());
                continue;
            }
        };
        let status = match closed {
            None => format!("computed, {} terms", built.num_terms()),
            Some(c) => match c.eval(k, order) {
                Err(e) => {
                    ok = false;
                    format!("error {}: {e}", e.kind())
                }
                Ok(v) => match v.first_difference(&built.shift(c.a_shift * k, 0)) {
                    None => "matches".to_string(),
                    Some((a, q)) => {
                        ok = false;
                        format!("differs at q^{q} a^{a}")
                    }
                },
            },
        };
        let _ = writeln!(out, "  n = {k}: {status}");
    }
    // The alpha spikes assembled through the limiting Bailey lemma.
    let assembled = wbl_left_from_alpha(p, order).and_then(|left| {
        let right = wbl_right(p, order)?;
        let direct = q_direct(p, p.big_k(), order)?;
        Ok((left.first_difference(&right), right.first_difference(&direct)))
    });
    let status = match assembled {
        Ok((None, None)) => "left = right = Q_K".to_string(),
        Ok((l, r)) => {
            ok = false;
            format!("mismatch {:?}", l.or(r))
        }
        Err(e) => {
            ok = false;
            format!("error {}: {e}", e.kind())
        }
    };
    let _ = writeln!(out, "  limiting lemma: {status}");
    if ok {
        SUCCESS
    } else {
        FAILURE
    }
}
