//! Text and JSON rendering for the CLI. Printers return the underlying
//! write errors so a closed pipe (`qwb ... | head`) ends the program
//! cleanly instead of panicking.

use std::io::Write;

use qwb_core::appell::CoeffTable;
use qwb_core::dsl::{Detail, Expr, Report, Verdict};
use qwb_core::{Ring, Series};
use serde_json::json;

pub fn print_expansion(
    expr: &Expr,
    series: &Series,
    order: i64,
    ring: &Ring,
    as_json: bool,
) -> std::io::Result<()> {
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let lo = series.valuation().min(0);
    let hi = order.min(series.precision());
    if as_json {
        let coeffs: Vec<serde_json::Value> = (lo..hi)
            .map(|e| {
                let c = series.coeff(e).expect("within precision");
                json!([e, ring.format_elem(&c)])
            })
            .collect();
        let doc = json!({
            "expr": expr.to_string(),
            "ring": ring.to_string(),
            "order": order,
            "valuation": series.valuation(),
            "coeffs": coeffs,
        });
        writeln!(out, "{doc}")?;
        return out.flush();
    }
    writeln!(out, "# expr: {expr}")?;
    writeln!(
        out,
        "# ring: {ring}  order: {order}  valuation: {}",
        series.valuation()
    )?;
    for e in lo..hi {
        let c = series.coeff(e).expect("within precision");
        writeln!(out, "q^{e}\t{}", ring.format_elem(&c))?;
    }
    out.flush()
}

fn detail_json(detail: &Detail) -> serde_json::Value {
    serde_json::to_value(detail).expect("detail serializes")
}

fn detail_text(detail: &Detail) -> String {
    match detail {
        Detail::Verified { order } => format!("equal through order {order}"),
        Detail::Mismatch { exponent, lhs, rhs } => {
            format!("mismatch at q^{exponent}: lhs {lhs} vs rhs {rhs}")
        }
        Detail::Counterexample { exponent, value } => {
            format!("nonzero witness at q^{exponent}: {value}")
        }
        Detail::Witnesses { checked, requested } => format!("witnesses {checked}/{requested}"),
        Detail::Found { hits } => {
            if hits.is_empty() {
                "no progressions found".to_string()
            } else {
                hits.iter()
                    .map(|h| {
                        format!(
                            "({}n+{}) mod {} [{} witnesses]",
                            h.step, h.offset, h.modulus, h.witnesses
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("  ")
            }
        }
        Detail::Error { message } => format!("error: {message}"),
    }
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "FAIL",
        Verdict::InsufficientPrecision => "insufficient-precision",
    }
}

pub fn print_reports(reports: &[Report], as_json: bool) -> std::io::Result<()> {
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    if as_json {
        let doc = json!({
            "reports": reports,
            "total": reports.len(),
            "passed": reports.iter().filter(|r| r.verdict == Verdict::Pass).count(),
            "failed": reports.iter().filter(|r| r.verdict == Verdict::Fail).count(),
            "insufficient": reports
                .iter()
                .filter(|r| r.verdict == Verdict::InsufficientPrecision)
                .count(),
        });
        writeln!(out, "{doc}")?;
        return out.flush();
    }
    for r in reports {
        writeln!(
            out,
            "{:<22} {:<24} order {:<5} {:<9} {:>6} ms  {}",
            r.label,
            verdict_text(r.verdict),
            r.order,
            r.ring,
            r.millis,
            detail_text(&r.detail)
        )?;
    }
    let pass = reports
        .iter()
        .filter(|r| r.verdict == Verdict::Pass)
        .count();
    let fail = reports
        .iter()
        .filter(|r| r.verdict == Verdict::Fail)
        .count();
    let insufficient = reports
        .iter()
        .filter(|r| r.verdict == Verdict::InsufficientPrecision)
        .count();
    writeln!(
        out,
        "summary: {} statements, {pass} pass, {fail} fail, {insufficient} insufficient-precision",
        reports.len()
    )?;
    out.flush()
}

pub fn print_scan(report: &Report, as_json: bool) -> std::io::Result<()> {
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    if as_json {
        let doc = json!({
            "order": report.order,
            "detail": detail_json(&report.detail),
        });
        writeln!(out, "{doc}")?;
        return out.flush();
    }
    match &report.detail {
        Detail::Found { hits } => {
            if hits.is_empty() {
                writeln!(out, "no progressions found")?;
            } else {
                for h in hits {
                    writeln!(
                        out,
                        "A={} B={} M={} witnesses={}",
                        h.step, h.offset, h.modulus, h.witnesses
                    )?;
                }
            }
        }
        other => writeln!(out, "{}", detail_text(other))?,
    }
    out.flush()
}

pub fn print_table(
    table: &CoeffTable,
    count: i64,
    indices: &[i64],
    as_json: bool,
) -> std::io::Result<()> {
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let selected: Vec<i64> = if indices.is_empty() {
        (0..count.min(20)).collect()
    } else {
        indices.to_vec()
    };
    if as_json {
        let values: Vec<serde_json::Value> = selected
            .iter()
            .filter_map(|&n| {
                table
                    .get(n as usize)
                    .map(|c| json!([n, table.ring.format_elem(c)]))
            })
            .collect();
        let doc = json!({
            "label": table.label,
            "ring": table.ring.to_string(),
            "count": table.count(),
            "values": values,
        });
        writeln!(out, "{doc}")?;
        return out.flush();
    }
    writeln!(out, "# label: {}", table.label)?;
    writeln!(out, "# ring: {}  count: {}", table.ring, table.count())?;
    for &n in &selected {
        match table.get(n as usize) {
            Some(c) => writeln!(out, "{n}\t{}", table.ring.format_elem(c))?,
            None => writeln!(out, "{n}\t<out of range>")?,
        }
    }
    out.flush()
}
