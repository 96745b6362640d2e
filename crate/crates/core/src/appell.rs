//! Appell-Lerch coefficient series: the mock theta function
//! `phi(q) = sum_n (-q; q)_{2n} q^{n+1} / (q; q^2)_{n+1}^2` and its coefficient
//! sequence a(n), the sixth-order companions rho, mu, lambda, the two-parameter
//! family a_{j,p}(n), and the bilateral sum A(q).
//!
//! Sums are accumulated with incremental term-ratio recurrences: each step
//! multiplies and divides by a couple of binomials, so computing `prec`
//! coefficients costs O(prec^2) ring operations in total.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::qproducts::pochhammer_inf;
use crate::ring::{Coeff, Monomial, Ring};
use crate::series::Series;

/// Dense accumulator over exponents [0, prec).
struct Accum {
    ring: Ring,
    prec: i64,
    coeffs: Vec<Coeff>,
}

impl Accum {
    fn new(ring: Ring, prec: i64) -> Accum {
        let coeffs = vec![ring.zero(); prec.max(0) as usize];
        Accum { ring, prec, coeffs }
    }

    fn add_series(&mut self, s: &Series) {
        let (val, block) = s.raw_parts();
        for (i, c) in block.iter().enumerate() {
            let e = val + i as i64;
            debug_assert!(e >= 0, "accumulator expects nonnegative exponents");
            if e >= self.prec {
                break;
            }
            self.ring.add_assign(&mut self.coeffs[e as usize], c);
        }
    }

    fn into_series(self) -> Series {
        Series::from_parts(self.ring, 0, self.prec, self.coeffs)
    }
}

/// The Appell-Lerch sum `phi(q) = sum_{n>=0} (-q; q)_{2n} q^{n+1} / (q; q^2)_{n+1}^2`,
/// whose coefficients are the sequence a(n).
///
/// Term n has valuation n+1, so the tail past `prec` never touches the
/// trusted window. Terms follow the ratio recurrence
/// `t_{n+1} = t_n (1+q^{2n+1})(1+q^{2n+2}) q / (1-q^{2n+3})^2`,
/// and every factor has unit constant term, so the expansion works directly
/// over any coefficient ring, modular ones included.
pub fn phi_mock(ring: &Ring, prec: i64) -> Result<Series> {
    let mut acc = Accum::new(ring.clone(), prec);
    if prec <= 1 {
        return Ok(acc.into_series());
    }
    let one = ring.one();
    let neg_one = ring.from_i64(-1);
    // t_0 = q / (1-q)^2
    let mut term = Series::monomial(ring.clone(), ring.one(), 1, prec)
        .div_binomial(&neg_one, 1)
        .div_binomial(&neg_one, 1);
    let mut n: i64 = 0;
    loop {
        acc.add_series(&term);
        if n + 2 >= prec {
            break;
        }
        term = term
            .mul_binomial(&one, 2 * n + 1)
            .mul_binomial(&one, 2 * n + 2)
            .shifted(1)
            .truncated(prec)
            .div_binomial(&neg_one, 2 * n + 3)
            .div_binomial(&neg_one, 2 * n + 3);
        n += 1;
    }
    Ok(acc.into_series())
}

/// Sixth-order mock theta function
/// `rho(q) = sum_{n>=0} (-q; q)_n q^{n(n+1)/2} / (q; q^2)_{n+1}`,
/// expanded over the exact integers.
pub fn rho(prec: i64) -> Result<Series> {
    let ring = Ring::Int;
    let mut acc = Accum::new(ring.clone(), prec);
    if prec <= 0 {
        return Ok(acc.into_series());
    }
    let one = ring.one();
    let neg_one = ring.from_i64(-1);
    // t_0 = 1 / (1-q)
    let mut term = Series::one(ring.clone(), prec).div_binomial(&neg_one, 1);
    let mut n: i64 = 0;
    loop {
        acc.add_series(&term);
        n += 1;
        if n * (n + 1) / 2 >= prec {
            break;
        }
        // gain (1+q^n), a factor q^n, and a denominator factor (1-q^{2n+1})
        term = term
            .mul_binomial(&one, n)
            .shifted(n)
            .truncated(prec)
            .div_binomial(&neg_one, 2 * n + 1);
    }
    Ok(acc.into_series())
}

/// Sixth-order mock theta function
/// `mu(q) = sum_{n>=0} (-1)^n (q; q^2)_n q^{(n+1)^2} / (-q; q)_{2n+1}`,
/// expanded over the exact integers.
pub fn mu(prec: i64) -> Result<Series> {
    let ring = Ring::Int;
    let mut acc = Accum::new(ring.clone(), prec);
    if prec <= 1 {
        return Ok(acc.into_series());
    }
    let one = ring.one();
    let neg_one = ring.from_i64(-1);
    // t_0 = q / (1+q)
    let mut term = Series::monomial(ring.clone(), ring.one(), 1, prec).div_binomial(&one, 1);
    let mut n: i64 = 0;
    loop {
        acc.add_series(&term);
        n += 1;
        if (n + 1) * (n + 1) >= prec {
            break;
        }
        // sign flip, numerator factor (1-q^{2n-1}), exponent step 2n+1,
        // denominator factors (1+q^{2n})(1+q^{2n+1})
        term = term
            .neg()
            .mul_binomial(&neg_one, 2 * n - 1)
            .shifted(2 * n + 1)
            .truncated(prec)
            .div_binomial(&one, 2 * n)
            .div_binomial(&one, 2 * n + 1);
    }
    Ok(acc.into_series())
}

/// Sixth-order mock theta function
/// `lambda(q) = sum_{n>=0} (-1)^n (q; q^2)_n q^n / (-q; q)_n`,
/// expanded over the exact integers.
pub fn lambda_fn(prec: i64) -> Result<Series> {
    let ring = Ring::Int;
    let mut acc = Accum::new(ring.clone(), prec);
    if prec <= 0 {
        return Ok(acc.into_series());
    }
    let one = ring.one();
    let neg_one = ring.from_i64(-1);
    // t_0 = 1
    let mut term = Series::one(ring.clone(), prec);
    let mut n: i64 = 0;
    loop {
        acc.add_series(&term);
        n += 1;
        if n >= prec {
            break;
        }
        term = term
            .neg()
            .mul_binomial(&neg_one, 2 * n - 1)
            .shifted(1)
            .truncated(prec)
            .div_binomial(&one, n);
    }
    Ok(acc.into_series())
}

/// The family `sum_n a_{j,p}(n) q^n`, defined for `p >= 2`, `1 <= j <= p-1`,
/// `gcd(j, p) = 1` as the bilateral sum
/// `(1/(q^j, q^{p-j}, q^p; q^p)_inf) sum_{n in Z} (-1)^n q^{pn(n+1)/2+jn+j} / (1-q^{pn+j})`.
///
/// Negative-index terms are rewritten with
/// `1/(1-q^{pn+j}) = -q^{-(pn+j)}/(1-q^{-(pn+j)})` so every intermediate has
/// nonnegative valuation. Accumulation runs over the exact rationals and the
/// result is converted to exact integers, asserting integrality.
pub fn a_jp(j: i64, p: i64, prec: i64) -> Result<Series> {
    if p < 2 || j < 1 || j > p - 1 || j.gcd(&p) != 1 {
        return Err(Error::InvalidArgument(format!(
            "a_jp needs p >= 2 and 1 <= j <= p-1 with gcd(j, p) = 1, got j={j}, p={p}"
        )));
    }
    let rat = Ring::Rat;
    let neg_one = rat.from_i64(-1);
    let mut acc = Accum::new(rat.clone(), prec);

    // n >= 0: valuation p*n(n+1)/2 + jn + j, denominator (1 - q^{pn+j})
    let mut n: i64 = 0;
    let mut prev_v = -1;
    loop {
        let v = p * n * (n + 1) / 2 + j * n + j;
        if v >= prec {
            break;
        }
        debug_assert!(n <= 2 || v > prev_v, "term valuations must be monotone");
        prev_v = v;
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let term = Series::monomial(rat.clone(), rat.from_i64(sign), v, prec)
            .div_binomial(&neg_one, p * n + j);
        acc.add_series(&term);
        n += 1;
    }
    // n = -m <= -1: rewritten valuation p*m(m+1)/2 - jm, denominator
    // (1 - q^{pm-j}), sign (-1)^{m+1}
    let mut m: i64 = 1;
    let mut prev_v = -1;
    loop {
        let v = p * m * (m + 1) / 2 - j * m;
        if v >= prec {
            break;
        }
        debug_assert!(m <= 2 || v > prev_v, "term valuations must be monotone");
        prev_v = v;
        let sign = if m % 2 == 0 { -1 } else { 1 };
        let term = Series::monomial(rat.clone(), rat.from_i64(sign), v, prec)
            .div_binomial(&neg_one, p * m - j);
        acc.add_series(&term);
        m += 1;
    }

    let prefactor = pochhammer_inf(&rat, Monomial::q(j), p, prec)?
        .mul(&pochhammer_inf(&rat, Monomial::q(p - j), p, prec)?)?
        .mul(&pochhammer_inf(&rat, Monomial::q(p), p, prec)?)?;
    let total = acc.into_series().div(&prefactor)?;
    total.to_ring(&Ring::Int)
}

/// The bilateral sum `A(q) = (E_5/E_10^2) sum_{n in Z} q^{5n(n+1)/2} / (1 + q^{5n})`,
/// over the exact rationals: the n = 0 term contributes 1/2 and the n = -m
/// terms pair exactly with the n = m terms, giving
/// `1/2 + 2 sum_{m>=1} q^{5m(m+1)/2} / (1 + q^{5m})`.
pub fn a_series(prec: i64) -> Result<Series> {
    let rat = Ring::Rat;
    let one = rat.one();
    let half = Coeff::Rat(num_rational::BigRational::new(1.into(), 2.into()));
    let mut acc = Accum::new(rat.clone(), prec);
    acc.add_series(&Series::monomial(rat.clone(), half, 0, prec));
    let mut m: i64 = 1;
    loop {
        let v = 5 * m * (m + 1) / 2;
        if v >= prec {
            break;
        }
        let term =
            Series::monomial(rat.clone(), rat.from_i64(2), v, prec).div_binomial(&one, 5 * m);
        acc.add_series(&term);
        m += 1;
    }
    let e5 = pochhammer_inf(&rat, Monomial::q(5), 5, prec)?;
    let e10 = pochhammer_inf(&rat, Monomial::q(10), 10, prec)?;
    acc.into_series().mul(&e5)?.div(&e10.pow(2)?)
}

/// A labeled table of the first `count` coefficients of a series.
#[derive(Clone, Debug)]
pub struct CoeffTable {
    pub label: String,
    pub ring: Ring,
    pub values: Vec<Coeff>,
}

impl CoeffTable {
    /// Freeze `values[n] = [q^n] s` for n < count. The series must be trusted
    /// through `count` and free of negative-exponent terms.
    pub fn from_series(label: impl Into<String>, s: &Series, count: i64) -> Result<CoeffTable> {
        if count > s.precision() {
            return Err(Error::CoeffBeyondPrecision {
                exp: count - 1,
                prec: s.precision(),
            });
        }
        if s.valuation() < 0 {
            return Err(Error::InvalidArgument(
                "cannot tabulate a series with negative valuation".into(),
            ));
        }
        let values = (0..count).map(|n| s.coeff(n)).collect::<Result<_>>()?;
        Ok(CoeffTable {
            label: label.into(),
            ring: s.ring().clone(),
            values,
        })
    }

    pub fn count(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, n: usize) -> Option<&Coeff> {
        self.values.get(n)
    }
}
