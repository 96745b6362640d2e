//! Line-delimited coefficient cache files.
//!
//! Format: a version line, `label:`/`ring:`/`count:` header lines, then one
//! decimal coefficient per line. Values are exact decimal strings (rationals
//! as `p/q`), so files are portable and diffable; a reader rejects any
//! version or ring mismatch rather than reinterpreting the body.

use std::io::Write;
use std::path::Path;

use qwb_core::appell::CoeffTable;
use qwb_core::dsl::{eval, Expr, MemoCache};
use qwb_core::Ring;

use crate::AppError;

const VERSION_LINE: &str = "qwb-coeffs v1";

/// Load a table if the file's header matches the requested label and ring.
/// Returns an error string for malformed or mismatched files.
pub fn load(path: &Path, label: &str, ring: &Ring) -> Result<Option<CoeffTable>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut lines = text.lines();
    let bad = |msg: &str| format!("{}: {msg}", path.display());

    let version = lines.next().ok_or_else(|| bad("empty cache file"))?;
    if version != VERSION_LINE {
        return Err(bad(&format!(
            "unsupported cache version `{version}` (expected `{VERSION_LINE}`)"
        )));
    }
    let header = |line: Option<&str>, key: &str| -> Result<String, String> {
        line.and_then(|l| l.strip_prefix(key))
            .map(|v| v.trim().to_string())
            .ok_or_else(|| bad(&format!("missing `{key}` header")))
    };
    let file_label = header(lines.next(), "label:")?;
    let file_ring = header(lines.next(), "ring:")?;
    let file_count: usize = header(lines.next(), "count:")?
        .parse()
        .map_err(|_| bad("bad `count:` header"))?;

    let parsed_ring = Ring::parse(&file_ring).map_err(|e| bad(&e.to_string()))?;
    if &parsed_ring != ring {
        return Err(bad(&format!(
            "ring mismatch: file has `{file_ring}`, requested `{ring}`"
        )));
    }
    if file_label != label {
        return Err(bad(&format!(
            "label mismatch: file has `{file_label}`, requested `{label}`"
        )));
    }

    let mut values = Vec::with_capacity(file_count);
    for line in lines {
        if line.is_empty() {
            continue;
        }
        values.push(
            ring.parse_elem(line)
                .map_err(|e| bad(&format!("bad coefficient line: {e}")))?,
        );
    }
    if values.len() != file_count {
        return Err(bad(&format!(
            "count mismatch: header says {file_count}, body has {}",
            values.len()
        )));
    }
    Ok(Some(CoeffTable {
        label: file_label,
        ring: ring.clone(),
        values,
    }))
}

/// Evaluate the expression, freeze a table, and write it (atomically) when a
/// path is given.
pub fn compute_and_write(
    expr: &Expr,
    label: &str,
    ring: &Ring,
    count: i64,
    path: Option<&Path>,
) -> Result<CoeffTable, AppError> {
    let memo = MemoCache::new();
    let series = eval(expr, count, ring, &memo).map_err(|e| AppError::Eval(e.to_string()))?;
    let table = CoeffTable::from_series(label, &series, count)
        .map_err(|e| AppError::Eval(e.to_string()))?;
    if let Some(path) = path {
        write_atomic(path, &table).map_err(AppError::Io)?;
    }
    Ok(table)
}

fn write_atomic(path: &Path, table: &CoeffTable) -> Result<(), String> {
    let tmp = path.with_extension("tmp");
    let err = |e: std::io::Error| format!("{}: {e}", path.display());
    {
        let mut f = std::io::BufWriter::new(std::fs::File::create(&tmp).map_err(err)?);
        writeln!(f, "{VERSION_LINE}").map_err(err)?;
        writeln!(f, "label: {}", table.label).map_err(err)?;
        writeln!(f, "ring: {}", table.ring).map_err(err)?;
        writeln!(f, "count: {}", table.count()).map_err(err)?;
        for v in &table.values {
            writeln!(f, "{}", table.ring.format_elem(v)).map_err(err)?;
        }
        f.flush().map_err(err)?;
    }
    std::fs::rename(&tmp, path).map_err(err)
}
