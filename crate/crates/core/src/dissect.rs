//! m-dissection: extract an arithmetic-progression residue class from a
//! series, and reconstruct a series from its classes.

use crate::error::{Error, Result};
use crate::series::Series;

/// Keep the terms `q^{mn+r}`, divide by `q^r`, and replace `q^m` by `q`:
/// the result's coefficient of `q^n` is the input's coefficient of `q^{mn+r}`.
///
/// The output precision is `ceil((prec - r) / m)`, so the last trusted input
/// coefficient is never over-claimed. Negative-exponent terms are only
/// allowed when they sit in the extracted class (the output is then Laurent);
/// off-class negative terms are an error rather than a silent truncation.
pub fn extract(f: &Series, m: i64, r: i64) -> Result<Series> {
    if m < 2 || r < 0 || r >= m {
        return Err(Error::InvalidArgument(format!(
            "extraction needs m >= 2 and 0 <= r < m, got m={m}, r={r}"
        )));
    }
    let out_prec = div_ceil(f.precision() - r, m);
    if f.is_zero() {
        return Ok(Series::zero(f.ring().clone(), out_prec));
    }
    let (val, block) = f.raw_parts();
    if val < 0 {
        for (i, c) in block.iter().enumerate() {
            let e = val + i as i64;
            if e >= 0 {
                break;
            }
            if !f.ring().is_zero(c) && (e - r).rem_euclid(m) != 0 {
                return Err(Error::InvalidArgument(format!(
                    "cannot extract class {r} mod {m}: nonzero off-class term at q^{e}"
                )));
            }
        }
    }
    // first n with mn + r >= val
    let n_lo = div_ceil(val - r, m);
    if n_lo >= out_prec {
        return Ok(Series::zero(f.ring().clone(), out_prec));
    }
    let mut out = Vec::with_capacity((out_prec - n_lo) as usize);
    for n in n_lo..out_prec {
        out.push(f.coeff(m * n + r)?);
    }
    Ok(Series::from_parts(f.ring().clone(), n_lo, out_prec, out))
}

/// Inverse of a full dissection: given classes `parts[r]`, rebuild
/// `sum_r q^r parts[r](q^m)` where `m = parts.len() >= 2`.
pub fn reconstruct(parts: &[Series]) -> Result<Series> {
    if parts.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "reconstruction needs at least 2 parts, got {}",
            parts.len()
        )));
    }
    let m = parts.len() as i64;
    let mut acc: Option<Series> = None;
    for (r, part) in parts.iter().enumerate() {
        let piece = part.subst(1, m)?.shifted(r as i64);
        acc = Some(match acc {
            None => piece,
            Some(a) => a.add(&piece)?,
        });
    }
    Ok(acc.expect("at least two parts"))
}

fn div_ceil(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}
