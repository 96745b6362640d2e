//! Statement execution: evaluate, compare, and report.
//!
//! Verdicts are three-way: `pass`, `fail` (with a concrete counterexample),
//! and `insufficient-precision` (the trusted window did not reach the
//! requested order or witness count). Insufficiency is never conflated with
//! either of the other two.

use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::ring::Ring;
use crate::series::{Comparison, Series};

use super::ast::{Statement, StatementKind};
use super::eval::{eval, MemoCache};

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Order used by statements that do not carry their own.
    pub default_order: i64,
    /// Hard cap on every evaluation order; statements needing more report
    /// insufficient precision.
    pub order_cap: Option<i64>,
}

impl Default for RunOptions {
    fn default() -> RunOptions {
        RunOptions {
            default_order: 120,
            order_cap: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    InsufficientPrecision,
}

/// A progression found by a scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanHit {
    pub step: i64,
    pub offset: i64,
    pub modulus: u64,
    pub witnesses: i64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Detail {
    /// Equality verified through the stated order.
    Verified { order: i64 },
    /// First differing coefficient of a failed equality.
    Mismatch {
        exponent: i64,
        lhs: String,
        rhs: String,
    },
    /// A congruence witness that is nonzero mod M.
    Counterexample { exponent: i64, value: String },
    /// Number of trusted witnesses actually checked.
    Witnesses { checked: i64, requested: i64 },
    /// Progressions discovered by a scan.
    Found { hits: Vec<ScanHit> },
    /// Evaluation failed outright.
    Error { message: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub label: String,
    pub verdict: Verdict,
    pub order: i64,
    pub ring: String,
    pub detail: Detail,
    pub millis: u128,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Run statements sequentially against a shared memo cache.
pub fn run(stmts: &[Statement], opts: &RunOptions, cache: &MemoCache) -> Vec<Report> {
    stmts
        .iter()
        .map(|s| run_statement(s, opts, cache))
        .collect()
}

/// Run a single statement. Math errors become `fail` reports carrying the
/// error message, never panics.
pub fn run_statement(stmt: &Statement, opts: &RunOptions, cache: &MemoCache) -> Report {
    let start = Instant::now();
    let mut report = match &stmt.kind {
        StatementKind::VerifyEq { lhs, rhs } => run_verify_eq(stmt, lhs, rhs, opts, cache),
        StatementKind::VerifyCong {
            expr,
            step,
            offset,
            modulus,
            witnesses,
        } => run_verify_cong(
            stmt, expr, *step, *offset, *modulus, *witnesses, opts, cache,
        ),
        StatementKind::Scan {
            expr,
            max_step,
            moduli,
            min_witnesses,
            count,
        } => run_scan(
            stmt,
            expr,
            *max_step,
            moduli,
            *min_witnesses,
            *count,
            opts,
            cache,
        ),
    };
    report.millis = start.elapsed().as_millis();
    report
}

fn capped(opts: &RunOptions, order: i64) -> i64 {
    match opts.order_cap {
        Some(cap) => order.min(cap),
        None => order,
    }
    .max(1)
}

fn error_report(stmt: &Statement, order: i64, ring: &Ring, msg: String) -> Report {
    Report {
        label: stmt.label.clone(),
        verdict: Verdict::Fail,
        order,
        ring: ring.to_string(),
        detail: Detail::Error { message: msg },
        millis: 0,
    }
}

fn run_verify_eq(
    stmt: &Statement,
    lhs: &super::ast::Expr,
    rhs: &super::ast::Expr,
    opts: &RunOptions,
    cache: &MemoCache,
) -> Report {
    let order = capped(opts, stmt.order.unwrap_or(opts.default_order));
    let ring = stmt.ring.clone().unwrap_or(Ring::Int);
    let sides: Result<(Series, Series)> = (|| {
        Ok((
            eval(lhs, order, &ring, cache)?,
            eval(rhs, order, &ring, cache)?,
        ))
    })();
    let (l, r) = match sides {
        Ok(pair) => pair,
        Err(e) => return error_report(stmt, order, &ring, e.to_string()),
    };
    let (verdict, detail) = match l.compare_to_order(&r, order) {
        Ok(Comparison::Equal) => (Verdict::Pass, Detail::Verified { order }),
        Ok(Comparison::Differ { exponent, lhs, rhs }) => (
            Verdict::Fail,
            Detail::Mismatch {
                exponent,
                lhs: ring.format_elem(&lhs),
                rhs: ring.format_elem(&rhs),
            },
        ),
        Ok(Comparison::Insufficient { trusted }) => (
            Verdict::InsufficientPrecision,
            Detail::Verified { order: trusted },
        ),
        Err(e) => return error_report(stmt, order, &ring, e.to_string()),
    };
    Report {
        label: stmt.label.clone(),
        verdict,
        order,
        ring: ring.to_string(),
        detail,
        millis: 0,
    }
}

#[allow(clippy::too_many_arguments)]
fn run_verify_cong(
    stmt: &Statement,
    expr: &super::ast::Expr,
    step: i64,
    offset: i64,
    modulus: u64,
    witnesses: i64,
    opts: &RunOptions,
    cache: &MemoCache,
) -> Report {
    let needed = step * (witnesses - 1) + offset + 1;
    let order = capped(opts, needed);
    let mod_ring = Ring::modular_u64(modulus);

    // Evaluate over Z/M when the expression is denominator-safe there,
    // otherwise fall back to exact arithmetic and reduce.
    let evaluated = match &stmt.ring {
        Some(ring) => eval(expr, order, ring, cache).map(|s| (s, ring.clone())),
        None => match eval(expr, order, &mod_ring, cache) {
            Ok(s) => Ok((s, mod_ring.clone())),
            Err(_) => eval(expr, order, &Ring::Int, cache).map(|s| (s, Ring::Int)),
        },
    };
    let (series, eval_ring) = match evaluated {
        Ok(x) => x,
        Err(e) => return error_report(stmt, order, &mod_ring, e.to_string()),
    };

    let prec = series.precision();
    let trusted = if prec > offset {
        (prec - 1 - offset) / step + 1
    } else {
        0
    };
    // check every trusted witness, even past the requested count
    for n in 0..trusted {
        let e = step * n + offset;
        let c = match series.coeff(e) {
            Ok(c) => c,
            Err(err) => return error_report(stmt, order, &eval_ring, err.to_string()),
        };
        let residue = match eval_ring.convert(&c, &mod_ring) {
            Ok(r) => r,
            Err(err) => return error_report(stmt, order, &eval_ring, err.to_string()),
        };
        if !mod_ring.is_zero(&residue) {
            return Report {
                label: stmt.label.clone(),
                verdict: Verdict::Fail,
                order,
                ring: eval_ring.to_string(),
                detail: Detail::Counterexample {
                    exponent: e,
                    value: eval_ring.format_elem(&c),
                },
                millis: 0,
            };
        }
    }
    let (verdict, detail) = if trusted < witnesses {
        (
            Verdict::InsufficientPrecision,
            Detail::Witnesses {
                checked: trusted,
                requested: witnesses,
            },
        )
    } else {
        (
            Verdict::Pass,
            Detail::Witnesses {
                checked: trusted,
                requested: witnesses,
            },
        )
    };
    Report {
        label: stmt.label.clone(),
        verdict,
        order,
        ring: eval_ring.to_string(),
        detail,
        millis: 0,
    }
}

#[allow(clippy::too_many_arguments)]
fn run_scan(
    stmt: &Statement,
    expr: &super::ast::Expr,
    max_step: i64,
    moduli: &[u64],
    min_witnesses: i64,
    count: i64,
    opts: &RunOptions,
    cache: &MemoCache,
) -> Report {
    let order = capped(opts, count);
    let series = match eval(expr, order, &Ring::Int, cache) {
        Ok(s) => s,
        Err(e) => return error_report(stmt, order, &Ring::Int, e.to_string()),
    };
    let limit = order.min(series.precision());
    let mut hits: Vec<ScanHit> = Vec::new();
    for &modulus in moduli {
        let mod_ring = Ring::modular_u64(modulus);
        let reduced = match series.to_ring(&mod_ring) {
            Ok(s) => s,
            Err(e) => return error_report(stmt, order, &Ring::Int, e.to_string()),
        };
        let nonzero_mod: Vec<bool> = (0..limit)
            .map(|e| {
                reduced
                    .coeff(e)
                    .map(|c| !mod_ring.is_zero(&c))
                    .unwrap_or(true)
            })
            .collect();
        let nonzero_exact: Vec<bool> = (0..limit)
            .map(|e| {
                series
                    .coeff(e)
                    .map(|c| !series.ring().is_zero(&c))
                    .unwrap_or(true)
            })
            .collect();
        let mut kept: Vec<(i64, i64)> = Vec::new();
        for step in 1..=max_step {
            'offsets: for offset in 0..step {
                // sub-progressions of an already-reported progression are
                // implied by it; suppress them
                for &(a, b) in &kept {
                    if step % a == 0 && (offset - b).rem_euclid(a) == 0 {
                        continue 'offsets;
                    }
                }
                let mut w = 0i64;
                let mut e = offset;
                let mut all_zero = true;
                let mut informative = false;
                while e < limit {
                    if nonzero_mod[e as usize] {
                        all_zero = false;
                        break;
                    }
                    // a class whose exact coefficients all vanish is a
                    // vacuous congruence; only report classes with content
                    informative |= nonzero_exact[e as usize];
                    w += 1;
                    e += step;
                }
                if all_zero && informative && w >= min_witnesses {
                    kept.push((step, offset));
                    hits.push(ScanHit {
                        step,
                        offset,
                        modulus,
                        witnesses: w,
                    });
                }
            }
        }
    }
    Report {
        label: stmt.label.clone(),
        verdict: Verdict::Pass,
        order,
        ring: Ring::Int.to_string(),
        detail: Detail::Found { hits },
        millis: 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse::parse_statements;

    fn run_one(text: &str) -> Report {
        let stmts = parse_statements(text).unwrap();
        run_statement(&stmts[0], &RunOptions::default(), &MemoCache::new())
    }

    #[test]
    fn verify_pass_and_fail() {
        let ok = run_one("[psi] verify psi == E[2]^2/E[1] order 80");
        assert_eq!(ok.verdict, Verdict::Pass);

        let bad = run_one("[broken] verify psi == E[2]^2/E[1] + q^3 order 80");
        assert_eq!(bad.verdict, Verdict::Fail);
        match bad.detail {
            Detail::Mismatch { exponent, .. } => assert_eq!(exponent, 3),
            other => panic!("expected mismatch, got {other:?}"),
        }
    }

    #[test]
    fn congruence_pass() {
        let r = run_one("[eq-1.1] congruence phiMock at 10n+9 mod 5 witnesses 40");
        assert_eq!(r.verdict, Verdict::Pass, "detail: {:?}", r.detail);
        assert_eq!(r.ring, "mod:5");
    }

    #[test]
    fn congruence_counterexample() {
        let r = run_one("[wrong] congruence phiMock at 10n+8 mod 5 witnesses 10");
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(matches!(r.detail, Detail::Counterexample { .. }));
    }

    #[test]
    fn congruence_insufficient_under_cap() {
        let stmts =
            parse_statements("[eq-1.1] congruence phiMock at 10n+9 mod 5 witnesses 40").unwrap();
        let opts = RunOptions {
            order_cap: Some(10),
            ..Default::default()
        };
        let r = run_statement(&stmts[0], &opts, &MemoCache::new());
        assert_eq!(r.verdict, Verdict::InsufficientPrecision);
        match r.detail {
            Detail::Witnesses { checked, requested } => {
                assert!(checked < requested);
            }
            other => panic!("expected witness detail, got {other:?}"),
        }
    }

    #[test]
    fn scan_finds_chan_progression_only() {
        let r = run_one("[scan] scan phiMock maxA 10 moduli 5 witnesses 25 count 500");
        assert_eq!(r.verdict, Verdict::Pass);
        match &r.detail {
            Detail::Found { hits } => {
                assert_eq!(hits.len(), 1, "hits: {hits:?}");
                assert_eq!((hits[0].step, hits[0].offset, hits[0].modulus), (10, 9, 5));
            }
            other => panic!("expected hits, got {other:?}"),
        }
    }

    #[test]
    fn scan_suppresses_subprogressions() {
        // 5 * anything is zero mod 5 everywhere: only (1, 0) survives
        let r = run_one("[z] scan 5*phi maxA 6 moduli 5 witnesses 10 count 60");
        match &r.detail {
            Detail::Found { hits } => {
                assert_eq!(hits.len(), 1);
                assert_eq!((hits[0].step, hits[0].offset), (1, 0));
            }
            other => panic!("expected hits, got {other:?}"),
        }
    }

    #[test]
    fn scan_pentagonal_is_empty() {
        // E_1 coefficients lie in {-1, 0, 1}, so no progression with content
        // is uniformly 0 mod 5; the classes 5n+3 and 5n+4 vanish identically
        // (pentagonal numbers are never 3 or 4 mod 5) and are vacuous, not
        // congruences
        let r = run_one("[e1] scan E[1] maxA 6 moduli 5 witnesses 30 count 500");
        match &r.detail {
            Detail::Found { hits } => assert!(hits.is_empty(), "hits: {hits:?}"),
            other => panic!("expected hits, got {other:?}"),
        }
    }

    #[test]
    fn congruence_with_forced_evaluation_ring() {
        // `ring int` forces exact evaluation; residues are reduced afterwards
        let r = run_one("[forced] congruence 5*phiMock at 1n+0 mod 5 witnesses 10 ring int");
        assert_eq!(r.verdict, Verdict::Pass, "detail: {:?}", r.detail);
        assert_eq!(r.ring, "int");
        // and a rational evaluation ring reduces through invertible
        // denominators: every coefficient of 2*A is a half-integer times 2
        let r = run_one("[rat-cong] congruence 2*A - 2*A at 1n+0 mod 2 witnesses 10 ring rat");
        assert_eq!(r.verdict, Verdict::Pass, "detail: {:?}", r.detail);
        assert_eq!(r.ring, "rat");
    }

    #[test]
    fn eval_error_becomes_fail_report() {
        let r = run_one("[div0] verify phi / (E[1] - E[1]) == psi");
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(matches!(r.detail, Detail::Error { .. }));
    }
}
