//! Truncated Laurent series over a runtime coefficient ring.
//!
//! A `Series` stores a dense coefficient block starting at its valuation and a
//! precision bound: the coefficient of `q^n` is trusted exactly for every
//! `n < prec`. Precision propagates pessimistically through every operation
//! (min-combining), so a result never claims more than its inputs support.
//!
//! Trailing zeros inside the trusted window are implicit: the stored block may
//! be shorter than `prec - val`, and exponents past it are trusted zeros.
//! The zero-to-order series stores no coefficients and keeps `val == prec`.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{Coeff, Ring};

/// Hard cap on the dense window length, to catch runaway precision requests.
const MAX_WINDOW: i64 = 100_000_000;

#[derive(Clone, Debug)]
pub struct Series {
    ring: Ring,
    val: i64,
    prec: i64,
    coeffs: Vec<Coeff>,
}

/// Outcome of a three-way comparison up to a requested order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    Differ {
        exponent: i64,
        lhs: Coeff,
        rhs: Coeff,
    },
    Insufficient {
        trusted: i64,
    },
}

impl Series {
    // ------------------------------------------------------------------
    // Construction
    // ------------------------------------------------------------------

    pub fn zero(ring: Ring, prec: i64) -> Series {
        Series {
            ring,
            val: prec,
            prec,
            coeffs: Vec::new(),
        }
    }

    pub fn one(ring: Ring, prec: i64) -> Series {
        let c = ring.one();
        Series::monomial(ring, c, 0, prec)
    }

    /// The single term `c * q^exp`, trusted below `prec`.
    pub fn monomial(ring: Ring, c: Coeff, exp: i64, prec: i64) -> Series {
        Series::from_parts(ring, exp, prec, vec![c])
    }

    /// Build from a raw block: `coeffs[i]` is the coefficient of `q^(val+i)`.
    /// The block is trimmed and anything at or above `prec` is dropped.
    pub fn from_parts(ring: Ring, val: i64, prec: i64, mut coeffs: Vec<Coeff>) -> Series {
        assert!(
            prec - val <= MAX_WINDOW && prec.abs() <= MAX_WINDOW,
            "series window too large (val {val}, prec {prec})"
        );
        if prec > val {
            let keep = (prec - val) as usize;
            coeffs.truncate(keep);
        } else {
            coeffs.clear();
        }
        let mut s = Series {
            ring,
            val,
            prec,
            coeffs,
        };
        s.normalize();
        s
    }

    /// Convenience constructor from small integer coefficients.
    pub fn from_integers(ring: Ring, val: i64, prec: i64, values: &[i64]) -> Series {
        let coeffs = values.iter().map(|&v| ring.from_i64(v)).collect();
        Series::from_parts(ring, val, prec, coeffs)
    }

    fn normalize(&mut self) {
        while let Some(last) = self.coeffs.last() {
            if self.ring.is_zero(last) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
        let lead = self
            .coeffs
            .iter()
            .position(|c| !self.ring.is_zero(c))
            .unwrap_or(self.coeffs.len());
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.val += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.val = self.prec;
        }
    }

    // ------------------------------------------------------------------
    // Accessors
    // ------------------------------------------------------------------

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Exponent of the lowest stored term. For the zero-to-order series this
    /// equals `prec` by convention.
    pub fn valuation(&self) -> i64 {
        self.val
    }

    /// Coefficients of `q^n` are trusted exactly for all `n < prec`.
    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// True when no nonzero coefficient is trusted.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn get(&self, exp: i64) -> Option<&Coeff> {
        if exp < self.val {
            return None;
        }
        self.coeffs.get((exp - self.val) as usize)
    }

    /// The coefficient of `q^exp`. Zero below the valuation and in trusted
    /// gaps; an error at or beyond the precision bound.
    pub fn coeff(&self, exp: i64) -> Result<Coeff> {
        if exp >= self.prec {
            return Err(Error::CoeffBeyondPrecision {
                exp,
                prec: self.prec,
            });
        }
        Ok(self.get(exp).cloned().unwrap_or_else(|| self.ring.zero()))
    }

    /// The coefficient of `q^exp` as an i64, for tests and reporting.
    pub fn coeff_i64(&self, exp: i64) -> Result<i64> {
        let c = self.coeff(exp)?;
        let lifted = self.ring.lift(&c)?;
        lifted
            .try_into()
            .map_err(|_| Error::InvalidArgument("coefficient exceeds i64".into()))
    }

    fn check_ring(&self, other: &Series) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(
                self.ring.to_string(),
                other.ring.to_string(),
            ))
        }
    }

    /// Number of nonzero stored coefficients, counted up to `limit`.
    fn nonzero_count(&self, limit: usize) -> usize {
        let mut n = 0;
        for c in &self.coeffs {
            if !self.ring.is_zero(c) {
                n += 1;
                if n >= limit {
                    break;
                }
            }
        }
        n
    }

    fn nonzero_terms(&self) -> Vec<(i64, Coeff)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.ring.is_zero(c))
            .map(|(i, c)| (self.val + i as i64, c.clone()))
            .collect()
    }

    // ------------------------------------------------------------------
    // Ring operations
    // ------------------------------------------------------------------

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_ring(other)?;
        let prec = self.prec.min(other.prec);
        let lo = self.val.min(other.val).min(prec);
        if lo >= prec {
            return Ok(Series::zero(self.ring.clone(), prec));
        }
        let mut out = vec![self.ring.zero(); (prec - lo) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.val + i as i64;
            if e >= prec {
                break;
            }
            out[(e - lo) as usize] = c.clone();
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let e = other.val + i as i64;
            if e >= prec {
                break;
            }
            self.ring.add_assign(&mut out[(e - lo) as usize], c);
        }
        Ok(Series::from_parts(self.ring.clone(), lo, prec, out))
    }

    pub fn neg(&self) -> Series {
        let coeffs = self.coeffs.iter().map(|c| self.ring.neg(c)).collect();
        Series {
            ring: self.ring.clone(),
            val: self.val,
            prec: self.prec,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.add(&other.neg())
    }

    /// Multiply every coefficient by a ring element.
    pub fn scale(&self, c: &Coeff) -> Series {
        if self.ring.is_zero(c) {
            return Series::zero(self.ring.clone(), self.prec);
        }
        let coeffs = self.coeffs.iter().map(|x| self.ring.mul(x, c)).collect();
        Series::from_parts(self.ring.clone(), self.val, self.prec, coeffs)
    }

    pub fn scale_i64(&self, n: i64) -> Series {
        self.scale(&self.ring.from_i64(n))
    }

    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_ring(other)?;
        let prec = (self.prec + other.val).min(other.prec + self.val);
        if self.is_zero() || other.is_zero() {
            return Ok(Series::zero(self.ring.clone(), prec));
        }
        let lo = self.val + other.val;
        if lo >= prec {
            return Ok(Series::zero(self.ring.clone(), prec));
        }
        let len = (prec - lo) as usize;

        // Sparse-factor fast path: a two- or three-term polynomial factor
        // turns the convolution into a handful of shifted additions.
        let (sparse, dense) = if self.nonzero_count(4) <= other.nonzero_count(4) {
            (self, other)
        } else {
            (other, self)
        };
        if sparse.nonzero_count(4) <= 3 {
            let mut out = vec![self.ring.zero(); len];
            for (e, c) in sparse.nonzero_terms() {
                for (j, d) in dense.coeffs.iter().enumerate() {
                    let x = e + dense.val + j as i64;
                    if x >= prec {
                        break;
                    }
                    self.ring.mul_add_assign(&mut out[(x - lo) as usize], &c, d);
                }
            }
            return Ok(Series::from_parts(self.ring.clone(), lo, prec, out));
        }

        let mut out = vec![self.ring.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if self.ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let idx = i + j;
                if idx >= len {
                    break;
                }
                self.ring.mul_add_assign(&mut out[idx], a, b);
            }
        }
        Ok(Series::from_parts(self.ring.clone(), lo, prec, out))
    }

    /// `self * (1 + c*q^k)` with the binomial treated as exact, in place.
    /// O(len) and precision-preserving; `k >= 1`.
    pub fn mul_binomial(mut self, c: &Coeff, k: i64) -> Series {
        debug_assert!(k >= 1);
        if self.is_zero() || self.ring.is_zero(c) {
            return self;
        }
        let window = (self.prec - self.val).max(0) as usize;
        let new_len = window.min(self.coeffs.len() + k as usize);
        self.coeffs.resize(new_len, self.ring.zero());
        let k = k as usize;
        for i in (k..new_len).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            self.ring.mul_add_assign(&mut hi[0], c, &lo[i - k]);
        }
        self.normalize();
        self
    }

    /// `self / (1 + c*q^k)` with the binomial treated as exact, in place.
    /// O(len); `k >= 1`.
    pub fn div_binomial(mut self, c: &Coeff, k: i64) -> Series {
        debug_assert!(k >= 1);
        if self.is_zero() || self.ring.is_zero(c) {
            return self;
        }
        let window = (self.prec - self.val).max(0) as usize;
        self.coeffs.resize(window, self.ring.zero());
        let k = k as usize;
        for i in k..window {
            let (lo, hi) = self.coeffs.split_at_mut(i);
            self.ring.mul_sub_assign(&mut hi[0], c, &lo[i - k]);
        }
        self.normalize();
        self
    }

    /// Multiplicative inverse. Requires the lowest trusted coefficient to be
    /// a unit of the ring. The result has valuation `-val` and precision
    /// `prec - 2*val`.
    pub fn invert(&self) -> Result<Series> {
        if self.is_zero() {
            return Err(Error::ZeroSeries);
        }
        let inv0 = self.ring.inv(&self.coeffs[0])?;
        let window = (self.prec - self.val) as usize;
        let mut out = vec![self.ring.zero(); window];
        out[0] = inv0.clone();
        let terms: Vec<(usize, Coeff)> = self
            .nonzero_terms()
            .into_iter()
            .skip(1)
            .map(|(e, c)| ((e - self.val) as usize, c))
            .collect();
        let neg_inv0 = self.ring.neg(&inv0);
        for n in 1..window {
            let mut acc = self.ring.zero();
            for (k, a) in &terms {
                if *k > n {
                    break;
                }
                self.ring.mul_add_assign(&mut acc, a, &out[n - k]);
            }
            out[n] = self.ring.mul(&neg_inv0, &acc);
        }
        Ok(Series::from_parts(
            self.ring.clone(),
            -self.val,
            self.prec - 2 * self.val,
            out,
        ))
    }

    pub fn div(&self, other: &Series) -> Result<Series> {
        self.check_ring(other)?;
        if other.is_zero() {
            return Err(Error::ZeroSeries);
        }
        if other.nonzero_count(4) <= 3 {
            // long division by a short divisor runs in O(len * terms)
            let inv0 = self.ring.inv(&other.coeffs[0])?;
            let val = self.val - other.val;
            let prec = (self.prec - other.val).min(other.prec - 2 * other.val + self.val);
            if self.is_zero() || val >= prec {
                return Ok(Series::zero(self.ring.clone(), prec));
            }
            let len = (prec - val) as usize;
            let terms: Vec<(usize, Coeff)> = other
                .nonzero_terms()
                .into_iter()
                .skip(1)
                .map(|(e, c)| ((e - other.val) as usize, c))
                .collect();
            let mut out = vec![self.ring.zero(); len];
            for n in 0..len {
                let mut acc = self
                    .get(self.val + n as i64)
                    .cloned()
                    .unwrap_or_else(|| self.ring.zero());
                for (k, a) in &terms {
                    if *k > n {
                        break;
                    }
                    self.ring.mul_sub_assign(&mut acc, a, &out[n - k]);
                }
                out[n] = self.ring.mul(&inv0, &acc);
            }
            return Ok(Series::from_parts(self.ring.clone(), val, prec, out));
        }
        self.mul(&other.invert()?)
    }

    /// Integer power by repeated squaring; negative exponents go through
    /// `invert`, and `k = 0` yields 1.
    pub fn pow(&self, k: i64) -> Result<Series> {
        if k == 0 {
            return Ok(Series::one(self.ring.clone(), self.prec.max(1)));
        }
        if k < 0 {
            return self.invert()?.pow(-k);
        }
        let mut base = self.clone();
        let mut k = k as u64;
        let mut acc: Option<Series> = None;
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base)?,
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.mul(&base)?;
        }
        Ok(acc.expect("k > 0"))
    }

    /// The substitution `q -> sign * q^k` (k >= 1): exponents scale by `k`
    /// and each coefficient picks up `sign^exponent`.
    pub fn subst(&self, sign: i8, k: i64) -> Result<Series> {
        if k < 1 {
            return Err(Error::InvalidArgument(format!(
                "substitution power {k} must be >= 1"
            )));
        }
        let prec = self.prec * k;
        if self.is_zero() {
            return Ok(Series::zero(self.ring.clone(), prec));
        }
        let val = self.val * k;
        let len = (self.coeffs.len() - 1) * k as usize + 1;
        let mut out = vec![self.ring.zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(c) {
                continue;
            }
            let e = self.val + i as i64;
            let flip = sign < 0 && e.rem_euclid(2) == 1;
            out[i * k as usize] = if flip { self.ring.neg(c) } else { c.clone() };
        }
        Ok(Series::from_parts(self.ring.clone(), val, prec, out))
    }

    /// Multiply by `q^v`: shifts valuation and precision together.
    pub fn shift(&self, v: i64) -> Series {
        self.clone().shifted(v)
    }

    /// By-value `shift`, reusing the coefficient buffer.
    pub fn shifted(mut self, v: i64) -> Series {
        self.val += v;
        self.prec += v;
        if self.coeffs.is_empty() {
            self.val = self.prec;
        }
        self
    }

    /// By-value `restrict`, reusing the coefficient buffer.
    pub fn truncated(mut self, new_prec: i64) -> Series {
        if new_prec >= self.prec {
            return self;
        }
        self.prec = new_prec;
        if self.prec > self.val {
            self.coeffs.truncate((self.prec - self.val) as usize);
        } else {
            self.coeffs.clear();
        }
        self.normalize();
        self
    }

    /// Valuation and coefficient block, for tight accumulation loops.
    pub(crate) fn raw_parts(&self) -> (i64, &[Coeff]) {
        (self.val, &self.coeffs)
    }

    /// Restrict the trusted window to `min(prec, new_prec)`.
    pub fn restrict(&self, new_prec: i64) -> Series {
        if new_prec >= self.prec {
            return self.clone();
        }
        Series::from_parts(self.ring.clone(), self.val, new_prec, self.coeffs.clone())
    }

    /// Map coefficients through the canonical homomorphism into `target`.
    pub fn to_ring(&self, target: &Ring) -> Result<Series> {
        if &self.ring == target {
            return Ok(self.clone());
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(self.ring.convert(c, target).map_err(|e| match e {
                Error::NonIntegral(v) => {
                    Error::NonIntegral(format!("{v} (coefficient of q^{})", self.val + i as i64))
                }
                other => other,
            })?);
        }
        Ok(Series::from_parts(target.clone(), self.val, self.prec, out))
    }

    // ------------------------------------------------------------------
    // Comparison
    // ------------------------------------------------------------------

    /// Compare the shared trusted windows up to `order`: the first mismatch
    /// wins; otherwise report whether `order` was actually reached.
    pub fn compare_to_order(&self, other: &Series, order: i64) -> Result<Comparison> {
        self.check_ring(other)?;
        let trusted = self.prec.min(other.prec);
        let stop = order.min(trusted);
        let lo = self.val.min(other.val);
        for e in lo..stop {
            let a = self.get(e).cloned().unwrap_or_else(|| self.ring.zero());
            let b = other.get(e).cloned().unwrap_or_else(|| self.ring.zero());
            if a != b {
                return Ok(Comparison::Differ {
                    exponent: e,
                    lhs: a,
                    rhs: b,
                });
            }
        }
        if trusted < order {
            Ok(Comparison::Insufficient { trusted })
        } else {
            Ok(Comparison::Equal)
        }
    }

    /// True when the shared trusted windows agree up to `order`.
    pub fn eq_to_order(&self, other: &Series, order: i64) -> Result<bool> {
        Ok(!matches!(
            self.compare_to_order(other, order)?,
            Comparison::Differ { .. }
        ))
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(c) {
                continue;
            }
            let e = self.val + i as i64;
            let cs = self.ring.format_elem(c);
            if wrote {
                if let Some(stripped) = cs.strip_prefix('-') {
                    write!(f, " - {}", term(stripped, e))?;
                } else {
                    write!(f, " + {}", term(&cs, e))?;
                }
            } else {
                write!(f, "{}", term(&cs, e))?;
                wrote = true;
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.prec)
    }
}

fn term(c: &str, e: i64) -> String {
    match (c, e) {
        (_, 0) => c.to_string(),
        ("1", 1) => "q".to_string(),
        ("1", _) => format!("q^{e}"),
        (_, 1) => format!("{c}*q"),
        _ => format!("{c}*q^{e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(val: i64, prec: i64, cs: &[i64]) -> Series {
        Series::from_integers(Ring::Int, val, prec, cs)
    }

    #[test]
    fn add_cancellation() {
        // (1+q) + (1-q) = 2
        let a = int(0, 10, &[1, 1]);
        let b = int(0, 10, &[1, -1]);
        let s = a.add(&b).unwrap();
        assert_eq!(s.coeff_i64(0).unwrap(), 2);
        assert_eq!(s.coeff_i64(1).unwrap(), 0);
        assert_eq!(s.precision(), 10);
    }

    #[test]
    fn add_zero_keeps_min_precision() {
        let f = int(0, 30, &[1, 2, 3]);
        let z = Series::zero(Ring::Int, 5);
        let s = f.add(&z).unwrap();
        assert_eq!(s.precision(), 5);
        assert!(s.eq_to_order(&f, 5).unwrap());
    }

    #[test]
    fn laurent_merge() {
        // q^-1 + q has valuation -1
        let a = int(-1, 10, &[1]);
        let b = int(1, 10, &[1]);
        let s = a.add(&b).unwrap();
        assert_eq!(s.valuation(), -1);
        assert_eq!(s.coeff_i64(0).unwrap(), 0);
        assert_eq!(s.coeff_i64(1).unwrap(), 1);
    }

    #[test]
    fn mul_difference_of_squares() {
        let a = int(0, 10, &[1, 1]);
        let b = int(0, 10, &[1, -1]);
        let p = a.mul(&b).unwrap();
        let expect = int(0, 10, &[1, 0, -1]);
        assert!(p.eq_to_order(&expect, 10).unwrap());
    }

    #[test]
    fn mul_laurent_valuations() {
        let a = int(-1, 10, &[1]);
        let b = int(1, 10, &[1]);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.valuation(), 0);
        assert_eq!(p.coeff_i64(0).unwrap(), 1);
        // prec = min(10 + 1, 10 + (-1)) = 9
        assert_eq!(p.precision(), 9);
    }

    #[test]
    fn mul_truncated_geometric() {
        // (sum_{n<N} q^n) * (1-q) = 1 - q^N, so equals 1 below order N
        let n = 40;
        let ones = Series::from_integers(Ring::Int, 0, n, &vec![1; n as usize]);
        let factor = int(0, n, &[1, -1]);
        let p = ones.mul(&factor).unwrap();
        let one = Series::one(Ring::Int, n);
        assert!(p.eq_to_order(&one, n).unwrap());
    }

    #[test]
    fn invert_geometric() {
        let f = int(0, 12, &[1, -1]);
        let g = f.invert().unwrap();
        for e in 0..12 {
            assert_eq!(g.coeff_i64(e).unwrap(), 1);
        }
        let p = f.mul(&g).unwrap();
        assert!(p.eq_to_order(&Series::one(Ring::Int, 12), 12).unwrap());
    }

    #[test]
    fn invert_laurent() {
        // 1/(q(1-q)) = q^-1 * sum q^n
        let f = int(1, 12, &[1, -1]);
        let g = f.invert().unwrap();
        assert_eq!(g.valuation(), -1);
        assert_eq!(g.precision(), 10);
        for e in -1..9 {
            assert_eq!(g.coeff_i64(e).unwrap(), 1);
        }
    }

    #[test]
    fn invert_requires_unit() {
        let f = int(0, 10, &[2, 1]);
        assert!(matches!(f.invert(), Err(Error::NonUnitLeading(..))));
        assert!(matches!(
            Series::zero(Ring::Int, 10).invert(),
            Err(Error::ZeroSeries)
        ));
        // 2 is a unit mod 5
        let f5 = Series::from_integers(Ring::modular_u64(5), 0, 10, &[2, 1]);
        assert!(f5.invert().is_ok());
    }

    #[test]
    fn pow_basics() {
        let f = int(0, 10, &[1, 1]);
        let sq = f.pow(2).unwrap();
        assert!(sq.eq_to_order(&int(0, 10, &[1, 2, 1]), 10).unwrap());
        let p0 = f.pow(0).unwrap();
        assert!(p0.eq_to_order(&Series::one(Ring::Int, 10), 10).unwrap());
        let back = f.pow(-2).unwrap().mul(&sq).unwrap();
        assert!(back
            .eq_to_order(&Series::one(Ring::Int, 10), back.precision())
            .unwrap());
    }

    #[test]
    fn subst_scales_exponents_and_precision() {
        let f = int(0, 7, &[1, 1]);
        let g = f.subst(1, 2).unwrap();
        assert_eq!(g.precision(), 14);
        assert_eq!(g.coeff_i64(2).unwrap(), 1);
        assert_eq!(g.coeff_i64(1).unwrap(), 0);

        // q -> -q flips odd exponents
        let h = int(0, 5, &[1, 1, 1, 1, 1]).subst(-1, 1).unwrap();
        assert_eq!(h.coeff_i64(1).unwrap(), -1);
        assert_eq!(h.coeff_i64(2).unwrap(), 1);
    }

    #[test]
    fn shift_and_coeff() {
        let one = Series::one(Ring::Int, 5);
        let s = one.shift(-1);
        assert_eq!(s.valuation(), -1);
        assert_eq!(s.precision(), 4);

        let ones = Series::from_integers(Ring::Int, 0, 10, &[1; 10]);
        assert_eq!(ones.coeff_i64(7).unwrap(), 1);
        assert!(matches!(
            ones.coeff(10),
            Err(Error::CoeffBeyondPrecision { .. })
        ));
        assert_eq!(ones.coeff_i64(-3).unwrap(), 0);
    }

    #[test]
    fn binomial_fast_paths_match_generic() {
        let f = int(0, 30, &[3, 1, 4, 1, 5, 9, 2, 6]);
        let c = Ring::Int.from_i64(-1);
        let bin = int(0, 60, &[1, 0, 0, -1]); // 1 - q^3
        let via_mul = f.mul(&bin).unwrap();
        let via_fast = f.clone().mul_binomial(&c, 3);
        assert!(via_fast.eq_to_order(&via_mul, 30).unwrap());
        let back = via_fast.div_binomial(&c, 3);
        assert!(back.eq_to_order(&f, 30).unwrap());
    }

    #[test]
    fn to_ring_reduces_and_normalizes() {
        let f = int(0, 10, &[5, 3, 10]);
        let g = f.to_ring(&Ring::modular_u64(5)).unwrap();
        assert_eq!(g.valuation(), 1);
        assert_eq!(g.coeff_i64(1).unwrap(), 3);
    }

    #[test]
    fn restrict_caps_precision() {
        let f = int(0, 10, &[1, 2, 3, 4]);
        let g = f.restrict(2);
        assert_eq!(g.precision(), 2);
        assert!(matches!(
            g.coeff(2),
            Err(Error::CoeffBeyondPrecision { .. })
        ));
    }

    #[test]
    fn comparison_verdicts() {
        let a = int(0, 10, &[1, 2, 3]);
        let b = int(0, 10, &[1, 2, 4]);
        match a.compare_to_order(&b, 10).unwrap() {
            Comparison::Differ { exponent, .. } => assert_eq!(exponent, 2),
            other => panic!("expected mismatch, got {other:?}"),
        }
        let c = int(0, 4, &[1, 2, 3]);
        assert_eq!(
            a.compare_to_order(&c, 10).unwrap(),
            Comparison::Insufficient { trusted: 4 }
        );
        assert_eq!(a.compare_to_order(&c, 4).unwrap(), Comparison::Equal);
    }
}
