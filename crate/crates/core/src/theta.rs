//! Ramanujan theta functions in sum and product form.
//!
//! `f(a, b)` is the bilateral series `sum_k a^{k(k+1)/2} b^{k(k-1)/2}` for
//! signed q-power arguments; the product form is Jacobi's triple product.
//! All expansions here are generated over the exact-integer ring and
//! converted to other rings on demand.

use crate::error::{Error, Result};
use crate::qproducts::{eta_quotient, product_one_minus, EtaQuotient};
use crate::ring::{Monomial, Ring};
use crate::series::Series;

fn triangular(k: i64) -> i64 {
    k * (k + 1) / 2
}

fn check_theta_args(a: Monomial, b: Monomial) -> Result<()> {
    if a.exp < 0 || b.exp < 0 || a.exp + b.exp < 1 {
        return Err(Error::InvalidArgument(format!(
            "theta arguments ({a}, {b}) need nonnegative exponents summing to >= 1"
        )));
    }
    Ok(())
}

/// `f(a, b)` as its defining bilateral sum. The term exponent grows
/// quadratically in |k|, so only finitely many terms land below `prec`.
pub fn f_sum(a: Monomial, b: Monomial, prec: i64) -> Result<Series> {
    check_theta_args(a, b)?;
    let len = prec.max(0) as usize;
    let mut acc = vec![0i64; len];
    let mut place = |k: i64| -> bool {
        let ta = triangular(k);
        let tb = triangular(k - 1);
        let e = a.exp * ta + b.exp * tb;
        if e >= prec {
            return false;
        }
        let sign = Monomial::sign_pow(a.sign, ta) * Monomial::sign_pow(b.sign, tb);
        acc[e as usize] += i64::from(sign);
        true
    };
    // the exponent is monotone for k >= 1 and for k <= -1, so a single
    // overshoot in each direction is a safe stopping point
    let mut k = 0i64;
    while place(k) {
        k += 1;
    }
    let mut k = -1i64;
    while place(k) {
        k -= 1;
    }
    Ok(Series::from_integers(Ring::Int, 0, prec, &acc))
}

/// `f(a, b)` via the Jacobi triple product
/// `(-a; ab)_inf (-b; ab)_inf (ab; ab)_inf`. Arguments that would put a
/// constant (exponent-0) factor into a product are rejected.
pub fn f_prod(a: Monomial, b: Monomial, prec: i64) -> Result<Series> {
    check_theta_args(a, b)?;
    if a.exp == 0 || b.exp == 0 {
        return Err(Error::InvalidArgument(format!(
            "triple product for ({a}, {b}) would need an exponent-0 factor"
        )));
    }
    let ab = a.product(b);
    let ring = Ring::Int;
    let p1 = product_one_minus(&ring, a.negate(), ab, prec)?;
    let p2 = product_one_minus(&ring, b.negate(), ab, prec)?;
    let p3 = product_one_minus(&ring, ab, ab, prec)?;
    p1.mul(&p2)?.mul(&p3)
}

/// `phi(q) = f(q, q) = 1 + 2 sum_{j>=1} q^{j^2}`, as the explicit sum.
pub fn phi(prec: i64) -> Series {
    let len = prec.max(0) as usize;
    let mut acc = vec![0i64; len];
    if prec > 0 {
        acc[0] = 1;
    }
    let mut j = 1i64;
    while j * j < prec {
        acc[(j * j) as usize] = 2;
        j += 1;
    }
    Series::from_integers(Ring::Int, 0, prec, &acc)
}

/// `phi` in eta-quotient form, `E_2^5 / (E_1^2 E_4^2)`.
pub fn phi_prod(prec: i64) -> Result<Series> {
    let eq = EtaQuotient::new([(2, 5), (1, -2), (4, -2)])?;
    eta_quotient(&Ring::Int, &eq, prec)
}

/// `psi(q) = f(q, q^3) = sum_{j>=0} q^{j(j+1)/2}`, as the explicit sum.
pub fn psi(prec: i64) -> Series {
    let len = prec.max(0) as usize;
    let mut acc = vec![0i64; len];
    let mut j = 0i64;
    while triangular(j) < prec {
        acc[triangular(j) as usize] = 1;
        j += 1;
    }
    Series::from_integers(Ring::Int, 0, prec, &acc)
}

/// `psi` in eta-quotient form, `E_2^2 / E_1`.
pub fn psi_prod(prec: i64) -> Result<Series> {
    let eq = EtaQuotient::new([(2, 2), (1, -1)])?;
    eta_quotient(&Ring::Int, &eq, prec)
}

/// Jacobi's cube: `sum_{k>=0} (-1)^k (2k+1) q^{k(k+1)/2}`, which equals E_1^3.
pub fn jacobi_cube(prec: i64) -> Series {
    let len = prec.max(0) as usize;
    let mut acc = vec![0i64; len];
    let mut k = 0i64;
    while triangular(k) < prec {
        let c = if k % 2 == 0 { 2 * k + 1 } else { -(2 * k + 1) };
        acc[triangular(k) as usize] += c;
        k += 1;
    }
    Series::from_integers(Ring::Int, 0, prec, &acc)
}

/// The cube analogue `sum_{n in Z} (3n+1) q^{3n^2+2n}`, which equals
/// `E_1^2 E_4^2 / E_2`.
pub fn cube_analog(prec: i64) -> Series {
    let len = prec.max(0) as usize;
    let mut acc = vec![0i64; len];
    let mut place = |n: i64| -> bool {
        let e = 3 * n * n + 2 * n;
        if e >= prec {
            return false;
        }
        acc[e as usize] += 3 * n + 1;
        true
    };
    let mut n = 0i64;
    while place(n) {
        n += 1;
    }
    let mut n = -1i64;
    while place(n) {
        n -= 1;
    }
    Series::from_integers(Ring::Int, 0, prec, &acc)
}

fn monomial_quotient(x: Monomial, y: Monomial) -> Result<Monomial> {
    if x.exp < y.exp {
        return Err(Error::InvalidArgument(format!(
            "quotient {x}/{y} has negative exponent"
        )));
    }
    Ok(Monomial::new(x.sign * y.sign, x.exp - y.exp))
}

/// Check both splitting identities for a quadruple with `ab = cd`:
///
///   f(a,b) f(c,d) + f(-a,-b) f(-c,-d) = 2 f(ac, bd) f(ad, bc)
///   f(a,b) f(c,d) - f(-a,-b) f(-c,-d) = 2a f(b/c, ac^2 d) f(b/d, acd^2)
///
/// Both sides are expanded through `f_sum` and compared to `prec`.
pub fn lemma21_check(
    a: Monomial,
    b: Monomial,
    c: Monomial,
    d: Monomial,
    prec: i64,
) -> Result<bool> {
    let ab = a.product(b);
    let cd = c.product(d);
    if ab != cd {
        return Err(Error::InvalidArgument(format!(
            "need ab = cd, got {ab} vs {cd}"
        )));
    }
    let fab = f_sum(a, b, prec)?;
    let fcd = f_sum(c, d, prec)?;
    let fab_neg = f_sum(a.negate(), b.negate(), prec)?;
    let fcd_neg = f_sum(c.negate(), d.negate(), prec)?;
    let plus = fab.mul(&fcd)?.add(&fab_neg.mul(&fcd_neg)?)?;
    let minus = fab.mul(&fcd)?.sub(&fab_neg.mul(&fcd_neg)?)?;

    let sum_rhs = f_sum(a.product(c), b.product(d), prec)?
        .mul(&f_sum(a.product(d), b.product(c), prec)?)?
        .scale_i64(2);

    let b_over_c = monomial_quotient(b, c)?;
    let b_over_d = monomial_quotient(b, d)?;
    let acc_d = a.product(c).product(c).product(d);
    let acd_d = a.product(c).product(d).product(d);
    let diff_rhs = f_sum(b_over_c, acc_d, prec)?
        .mul(&f_sum(b_over_d, acd_d, prec)?)?
        .scale_i64(2 * i64::from(a.sign))
        .shift(a.exp);

    Ok(plus.eq_to_order(&sum_rhs, prec)? && minus.eq_to_order(&diff_rhs, prec)?)
}

/// phi applied to a signed power of q, e.g. `phi(-q^5)`.
pub fn phi_at(sign: i8, k: i64, prec: i64) -> Result<Series> {
    // generate at the contracted order, then substitute
    let inner = prec / k + 2;
    phi(inner).subst(sign, k).map(|s| s.restrict(prec.max(0)))
}

/// psi applied to a signed power of q.
pub fn psi_at(sign: i8, k: i64, prec: i64) -> Result<Series> {
    let inner = prec / k + 2;
    psi(inner).subst(sign, k).map(|s| s.restrict(prec.max(0)))
}
