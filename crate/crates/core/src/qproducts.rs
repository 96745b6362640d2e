//! q-Pochhammer symbols, Euler products E_j, eta-quotients, and the
//! Rogers-Ramanujan quotient T(q).
//!
//! Infinite products are assembled from binomial factors via the sparse
//! fast path, so expanding (a; q^base)_inf to order N costs O(N^2 / base).

use crate::error::{Error, Result};
use crate::ring::{Monomial, Ring};
use crate::series::Series;

/// A finite product of Euler factors, `prod_j E_j^{d_j}`. Normalization
/// merges repeated dilations and drops zero exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotient {
    factors: Vec<(i64, i64)>,
}

impl EtaQuotient {
    pub fn new(factors: impl IntoIterator<Item = (i64, i64)>) -> Result<EtaQuotient> {
        let mut merged: Vec<(i64, i64)> = Vec::new();
        for (dilation, exponent) in factors {
            if dilation < 1 {
                return Err(Error::InvalidArgument(format!(
                    "eta-quotient dilation {dilation} must be >= 1"
                )));
            }
            match merged.iter_mut().find(|(d, _)| *d == dilation) {
                Some((_, e)) => *e += exponent,
                None => merged.push((dilation, exponent)),
            }
        }
        merged.retain(|(_, e)| *e != 0);
        merged.sort_unstable();
        Ok(EtaQuotient { factors: merged })
    }

    pub fn factors(&self) -> &[(i64, i64)] {
        &self.factors
    }
}

/// Product of all factors `(1 - x*y^k)`, k >= 0, whose exponent lands below
/// `prec`; later factors cannot touch the trusted window. Requires
/// `x.exp >= 1` and `y.exp >= 1`.
pub(crate) fn product_one_minus(
    ring: &Ring,
    x: Monomial,
    y: Monomial,
    prec: i64,
) -> Result<Series> {
    if x.exp < 1 {
        return Err(Error::InvalidArgument(format!(
            "infinite product argument {x} must have exponent >= 1"
        )));
    }
    if y.exp < 1 {
        return Err(Error::InvalidArgument(format!(
            "infinite product base {y} must have exponent >= 1"
        )));
    }
    let mut acc = Series::one(ring.clone(), prec);
    let mut k: i64 = 0;
    loop {
        let e = x.exp + k * y.exp;
        if e >= prec {
            break;
        }
        let sign = x.sign * Monomial::sign_pow(y.sign, k);
        let c = ring.from_i64(-i64::from(sign));
        acc = acc.mul_binomial(&c, e);
        k += 1;
    }
    Ok(acc)
}

/// Finite q-Pochhammer symbol `(a; q^base)_n = prod_{k<n} (1 - a*q^{k*base})`,
/// truncated to `prec`. `n = 0` gives 1; `a.exp = 0` is allowed here and
/// contributes the constant factor `1 - a.sign`.
pub fn pochhammer_finite(ring: &Ring, a: Monomial, base: i64, n: i64, prec: i64) -> Result<Series> {
    if base < 1 {
        return Err(Error::InvalidArgument(format!(
            "Pochhammer base {base} must be >= 1"
        )));
    }
    if n < 0 {
        return Err(Error::InvalidArgument(format!(
            "Pochhammer length {n} must be >= 0"
        )));
    }
    let mut acc = Series::one(ring.clone(), prec);
    for k in 0..n {
        let e = a.exp + k * base;
        if e == 0 {
            // factor 1 - a.sign: either 0 or 2
            acc = acc.scale(&ring.from_i64(1 - i64::from(a.sign)));
        } else if e < prec {
            let c = ring.from_i64(-i64::from(a.sign));
            acc = acc.mul_binomial(&c, e);
        }
        // factors at or beyond prec are 1 + O(q^prec): nothing to do
    }
    Ok(acc)
}

/// Infinite q-Pochhammer symbol `(a; q^base)_inf`. Requires `a.exp >= 1` so
/// the factors tend to 1 formally.
pub fn pochhammer_inf(ring: &Ring, a: Monomial, base: i64, prec: i64) -> Result<Series> {
    if base < 1 {
        return Err(Error::InvalidArgument(format!(
            "Pochhammer base {base} must be >= 1"
        )));
    }
    product_one_minus(ring, a, Monomial::q(base), prec)
}

/// Euler product `E_j = (q^j; q^j)_inf`.
pub fn euler(ring: &Ring, j: i64, prec: i64) -> Result<Series> {
    if j < 1 {
        return Err(Error::InvalidArgument(format!(
            "Euler index {j} must be >= 1"
        )));
    }
    pochhammer_inf(ring, Monomial::q(j), j, prec)
}

/// Expand an eta-quotient `prod_j E_j^{d_j}`; negative exponents go through
/// series inversion (every E_j has constant term 1).
pub fn eta_quotient(ring: &Ring, eq: &EtaQuotient, prec: i64) -> Result<Series> {
    let mut acc = Series::one(ring.clone(), prec);
    for &(dilation, exponent) in eq.factors() {
        let e = euler(ring, dilation, prec)?.pow(exponent)?;
        acc = acc.mul(&e)?;
    }
    Ok(acc)
}

/// The Rogers-Ramanujan quotient
/// `T(q) = (q^2; q^5)_inf (q^3; q^5)_inf / ((q; q^5)_inf (q^4; q^5)_inf)`.
/// All four factors have constant term 1, so T is an ordinary invertible
/// power series; no fractional exponents arise.
pub fn rr_t(ring: &Ring, prec: i64) -> Result<Series> {
    let num = pochhammer_inf(ring, Monomial::q(2), 5, prec)?.mul(&pochhammer_inf(
        ring,
        Monomial::q(3),
        5,
        prec,
    )?)?;
    let den = pochhammer_inf(ring, Monomial::q(1), 5, prec)?.mul(&pochhammer_inf(
        ring,
        Monomial::q(4),
        5,
        prec,
    )?)?;
    num.div(&den)
}

/// The eta-quotient `K = E_2 E_5^5 / (E_1 E_10^5)`.
pub fn rr_k(ring: &Ring, prec: i64) -> Result<Series> {
    let eq = EtaQuotient::new([(2, 1), (5, 5), (1, -1), (10, -5)])?;
    eta_quotient(ring, &eq, prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Brute-force polynomial arithmetic over i64, independent of Series.
    fn poly_mul(a: &[i64], b: &[i64], order: usize) -> Vec<i64> {
        let mut out = vec![0i64; order];
        for (i, &x) in a.iter().enumerate() {
            if i >= order || x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if i + j >= order {
                    break;
                }
                out[i + j] += x * y;
            }
        }
        out
    }

    fn binomial(e: usize, c: i64, order: usize) -> Vec<i64> {
        let mut v = vec![0i64; order.max(e + 1)];
        v[0] = 1;
        if e < v.len() {
            v[e] += c;
        }
        v
    }

    fn assert_matches_poly(s: &Series, expect: &[i64], order: i64) {
        for e in 0..order {
            let want = expect.get(e as usize).copied().unwrap_or(0);
            assert_eq!(s.coeff_i64(e).unwrap(), want, "coefficient of q^{e}");
        }
    }

    #[test]
    fn pochhammer_empty_product() {
        let s = pochhammer_finite(&Ring::Int, Monomial::q(1), 1, 0, 10).unwrap();
        assert!(s.eq_to_order(&Series::one(Ring::Int, 10), 10).unwrap());
    }

    #[test]
    fn pochhammer_neg_q_two_factors() {
        // (-q; q)_2 = (1+q)(1+q^2) = 1 + q + q^2 + q^3
        let s = pochhammer_finite(&Ring::Int, Monomial::neg_q(1), 1, 2, 10).unwrap();
        assert_matches_poly(&s, &[1, 1, 1, 1], 10);
    }

    #[test]
    fn pochhammer_odd_factors() {
        // (q; q^2)_2 = (1-q)(1-q^3)
        let s = pochhammer_finite(&Ring::Int, Monomial::q(1), 2, 2, 12).unwrap();
        let oracle = poly_mul(&binomial(1, -1, 12), &binomial(3, -1, 12), 12);
        assert_matches_poly(&s, &oracle, 12);
    }

    #[test]
    fn euler_pentagonal_expansion() {
        // brute-force product of (1 - q^k), k <= 13
        let mut oracle = vec![0i64; 14];
        oracle[0] = 1;
        for k in 1..=13usize {
            oracle = poly_mul(&oracle, &binomial(k, -1, 14), 14);
        }
        let s = euler(&Ring::Int, 1, 13).unwrap();
        assert_matches_poly(&s, &oracle, 13);
        // 1 - q - q^2 + q^5 + q^7 - q^12
        assert_eq!(oracle[..13], [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]);
    }

    #[test]
    fn pochhammer_inf_q_base5() {
        // (q; q^5)_inf starts 1 - q - q^6 + ...
        let order = 40usize;
        let mut oracle = vec![0i64; order];
        oracle[0] = 1;
        let mut e = 1usize;
        while e < order {
            oracle = poly_mul(&oracle, &binomial(e, -1, order), order);
            e += 5;
        }
        let s = pochhammer_inf(&Ring::Int, Monomial::q(1), 5, order as i64).unwrap();
        assert_matches_poly(&s, &oracle, order as i64);
        assert_eq!(oracle[..8], [1, -1, 0, 0, 0, 0, -1, 1]);
    }

    #[test]
    fn pochhammer_inf_rejects_constant_start() {
        assert!(pochhammer_inf(&Ring::Int, Monomial::q(0), 1, 10).is_err());
    }

    #[test]
    fn pochhammer_finite_agrees_with_infinite() {
        // (a; q^b)_inf == (a; q^b)_n below order a.exp + n*b
        let ring = Ring::Int;
        for (a, b, n) in [
            (Monomial::q(1), 1, 7),
            (Monomial::neg_q(2), 3, 5),
            (Monomial::q(3), 5, 4),
        ] {
            let prec = 30;
            let inf = pochhammer_inf(&ring, a, b, prec).unwrap();
            let fin = pochhammer_finite(&ring, a, b, n, prec).unwrap();
            let agree_to = prec.min(a.exp + n * b);
            assert!(inf.eq_to_order(&fin, agree_to).unwrap());
        }
    }

    #[test]
    fn pochhammer_incremental_factor() {
        // (a; q^b)_n * (1 - a q^{nb}) = (a; q^b)_{n+1}
        let ring = Ring::Int;
        let (a, b) = (Monomial::neg_q(1), 2);
        for n in 0..6 {
            let prec = 25;
            let lhs = pochhammer_finite(&ring, a, b, n, prec).unwrap();
            let e = a.exp + n * b;
            let factor = Series::from_integers(ring.clone(), 0, prec, &[1])
                .mul_binomial(&ring.from_i64(-i64::from(a.sign)), e);
            let lhs = lhs.mul(&factor).unwrap();
            let rhs = pochhammer_finite(&ring, a, b, n + 1, prec).unwrap();
            assert!(lhs.eq_to_order(&rhs, prec).unwrap());
        }
    }

    #[test]
    fn eta_quotient_merges_duplicates() {
        let eq = EtaQuotient::new([(2, 3), (1, -1), (2, -3), (5, 0)]).unwrap();
        assert_eq!(eq.factors(), &[(1, -1)]);
    }

    #[test]
    fn partition_generating_function() {
        // invert(E_1) has the partition numbers as coefficients; oracle is a
        // dynamic-programming partition count, independent of series code.
        let order = 20usize;
        let mut p = vec![0i64; order];
        p[0] = 1;
        for part in 1..order {
            for n in part..order {
                p[n] += p[n - part];
            }
        }
        let inv = euler(&Ring::Int, 1, order as i64)
            .unwrap()
            .invert()
            .unwrap();
        assert_matches_poly(&inv, &p, order as i64);
    }

    #[test]
    fn euler_subst_consistency() {
        // E_5 built directly equals E_1 with q -> q^5
        let direct = euler(&Ring::Int, 5, 60).unwrap();
        let subst = euler(&Ring::Int, 1, 12).unwrap().subst(1, 5).unwrap();
        assert!(direct.eq_to_order(&subst, 60).unwrap());
    }

    #[test]
    fn rr_t_is_invertible() {
        let t = rr_t(&Ring::Int, 30).unwrap();
        assert_eq!(t.valuation(), 0);
        assert_eq!(t.coeff_i64(0).unwrap(), 1);
        assert!(t.invert().is_ok());
    }

    #[test]
    fn mod5_euler_power_collapse() {
        // E_1^5 == E_5 over Z/5 (binomial theorem)
        let ring = Ring::modular_u64(5);
        let lhs = euler(&ring, 1, 200).unwrap().pow(5).unwrap();
        let rhs = euler(&ring, 5, 200).unwrap();
        assert!(lhs.eq_to_order(&rhs, 200).unwrap());
    }
}
