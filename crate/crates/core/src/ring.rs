//! Coefficient domains: exact integers, exact rationals, and integers mod m.
//!
//! A `Ring` is a runtime value so that the same series code serves all three
//! domains; `Coeff` is the matching element representation. Modular rings keep
//! canonical residues in `[0, m)` and use machine words whenever `m < 2^32`.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Modulus of a modular ring. `word` is populated when the modulus fits
/// the machine-word fast path.
#[derive(Debug)]
pub struct Modulus {
    big: BigUint,
    word: Option<u64>,
}

impl Modulus {
    fn new(m: BigUint) -> Modulus {
        let word = if m < BigUint::from(1u64 << 32) {
            m.to_u64()
        } else {
            None
        };
        Modulus { big: m, word }
    }

    pub fn value(&self) -> &BigUint {
        &self.big
    }
}

/// The three coefficient domains.
#[derive(Clone, Debug)]
pub enum Ring {
    Int,
    Rat,
    Mod(Arc<Modulus>),
}

/// A coefficient in one of the three domains. `Word`/`Big` are modular
/// residues; which one is in play is determined by the owning `Ring`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coeff {
    Int(BigInt),
    Rat(BigRational),
    Word(u64),
    Big(BigUint),
}

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        match (self, other) {
            (Ring::Int, Ring::Int) | (Ring::Rat, Ring::Rat) => true,
            (Ring::Mod(a), Ring::Mod(b)) => a.big == b.big,
            _ => false,
        }
    }
}

impl Eq for Ring {}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Int => write!(f, "int"),
            Ring::Rat => write!(f, "rat"),
            Ring::Mod(m) => write!(f, "mod:{}", m.big),
        }
    }
}

impl Ring {
    /// Modular ring with modulus `m >= 2`.
    pub fn modular(m: BigUint) -> Result<Ring> {
        if m < BigUint::from(2u32) {
            return Err(Error::InvalidArgument(format!("modulus {m} must be >= 2")));
        }
        Ok(Ring::Mod(Arc::new(Modulus::new(m))))
    }

    pub fn modular_u64(m: u64) -> Ring {
        Ring::modular(BigUint::from(m)).expect("modulus >= 2")
    }

    /// Parse a ring descriptor: `int`, `rat`, or `mod:<m>`.
    pub fn parse(text: &str) -> Result<Ring> {
        match text {
            "int" => Ok(Ring::Int),
            "rat" => Ok(Ring::Rat),
            _ => {
                if let Some(m) = text.strip_prefix("mod:") {
                    let m: BigUint = m
                        .parse()
                        .map_err(|_| Error::InvalidArgument(format!("bad modulus `{m}`")))?;
                    Ring::modular(m)
                } else {
                    Err(Error::InvalidArgument(format!(
                        "unknown ring `{text}` (expected int, rat, or mod:<m>)"
                    )))
                }
            }
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Ring::Int => Coeff::Int(BigInt::zero()),
            Ring::Rat => Coeff::Rat(BigRational::zero()),
            Ring::Mod(m) => match m.word {
                Some(_) => Coeff::Word(0),
                None => Coeff::Big(BigUint::zero()),
            },
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Coeff {
        match self {
            Ring::Int => Coeff::Int(n.clone()),
            Ring::Rat => Coeff::Rat(BigRational::from_integer(n.clone())),
            Ring::Mod(m) => {
                let r = n.mod_floor(&BigInt::from(m.big.clone()));
                let r = r.to_biguint().expect("mod_floor result is nonnegative");
                match m.word {
                    Some(_) => Coeff::Word(r.to_u64().expect("residue fits the word modulus")),
                    None => Coeff::Big(r),
                }
            }
        }
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Int(x) => x.is_zero(),
            Coeff::Rat(x) => x.is_zero(),
            Coeff::Word(x) => *x == 0,
            Coeff::Big(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Int(x) => x.is_one(),
            Coeff::Rat(x) => x.is_one(),
            Coeff::Word(x) => *x == 1,
            Coeff::Big(x) => x.is_one(),
        }
    }

    fn word_modulus(&self) -> u64 {
        match self {
            Ring::Mod(m) => m.word.expect("word-modulus ring"),
            _ => unreachable!("word_modulus on non-modular ring"),
        }
    }

    fn big_modulus(&self) -> &BigUint {
        match self {
            Ring::Mod(m) => &m.big,
            _ => unreachable!("big_modulus on non-modular ring"),
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b) {
            (Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x + y),
            (Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            (Coeff::Word(x), Coeff::Word(y)) => {
                let m = self.word_modulus() as u128;
                Coeff::Word(((*x as u128 + *y as u128) % m) as u64)
            }
            (Coeff::Big(x), Coeff::Big(y)) => Coeff::Big((x + y) % self.big_modulus()),
            _ => unreachable!("mixed coefficient representations"),
        }
    }

    /// a += b, avoiding a temporary where the representation allows it.
    pub fn add_assign(&self, a: &mut Coeff, b: &Coeff) {
        match (a, b) {
            (Coeff::Int(x), Coeff::Int(y)) => *x += y,
            (Coeff::Rat(x), Coeff::Rat(y)) => *x += y,
            (Coeff::Word(x), Coeff::Word(y)) => {
                let m = self.word_modulus() as u128;
                *x = ((*x as u128 + *y as u128) % m) as u64;
            }
            (Coeff::Big(x), Coeff::Big(y)) => {
                *x += y;
                if *x >= *self.big_modulus() {
                    *x %= self.big_modulus();
                }
            }
            _ => unreachable!("mixed coefficient representations"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b) {
            (Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x - y),
            (Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x - y),
            (Coeff::Word(x), Coeff::Word(y)) => {
                let m = self.word_modulus();
                Coeff::Word(if x >= y { x - y } else { m - (y - x) })
            }
            (Coeff::Big(x), Coeff::Big(y)) => {
                let m = self.big_modulus();
                if x >= y {
                    Coeff::Big(x - y)
                } else {
                    Coeff::Big(m - (y - x))
                }
            }
            _ => unreachable!("mixed coefficient representations"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match a {
            Coeff::Int(x) => Coeff::Int(-x),
            Coeff::Rat(x) => Coeff::Rat(-x),
            Coeff::Word(x) => Coeff::Word(if *x == 0 { 0 } else { self.word_modulus() - x }),
            Coeff::Big(x) => {
                if x.is_zero() {
                    Coeff::Big(BigUint::zero())
                } else {
                    Coeff::Big(self.big_modulus() - x)
                }
            }
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (a, b) {
            (Coeff::Int(x), Coeff::Int(y)) => Coeff::Int(x * y),
            (Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            (Coeff::Word(x), Coeff::Word(y)) => {
                let m = self.word_modulus() as u128;
                Coeff::Word(((*x as u128 * *y as u128) % m) as u64)
            }
            (Coeff::Big(x), Coeff::Big(y)) => Coeff::Big((x * y) % self.big_modulus()),
            _ => unreachable!("mixed coefficient representations"),
        }
    }

    /// acc += a * b.
    pub fn mul_add_assign(&self, acc: &mut Coeff, a: &Coeff, b: &Coeff) {
        match (acc, a, b) {
            (Coeff::Int(z), Coeff::Int(x), Coeff::Int(y)) => *z += x * y,
            (Coeff::Rat(z), Coeff::Rat(x), Coeff::Rat(y)) => *z += x * y,
            (Coeff::Word(z), Coeff::Word(x), Coeff::Word(y)) => {
                let m = self.word_modulus() as u128;
                *z = ((*z as u128 + (*x as u128 * *y as u128) % m) % m) as u64;
            }
            (Coeff::Big(z), Coeff::Big(x), Coeff::Big(y)) => {
                *z += x * y;
                *z %= self.big_modulus();
            }
            _ => unreachable!("mixed coefficient representations"),
        }
    }

    /// acc -= a * b.
    pub fn mul_sub_assign(&self, acc: &mut Coeff, a: &Coeff, b: &Coeff) {
        let p = self.mul(a, b);
        let r = self.sub(acc, &p);
        *acc = r;
    }

    /// Multiplicative inverse of a unit. Errors when `a` is not a unit.
    pub fn inv(&self, a: &Coeff) -> Result<Coeff> {
        let not_unit = || Error::NonUnitLeading(self.format_elem(a), self.to_string());
        match a {
            Coeff::Int(x) => {
                if x.is_one() || (-x).is_one() {
                    Ok(Coeff::Int(x.clone()))
                } else {
                    Err(not_unit())
                }
            }
            Coeff::Rat(x) => {
                if x.is_zero() {
                    Err(not_unit())
                } else {
                    Ok(Coeff::Rat(x.recip()))
                }
            }
            Coeff::Word(x) => {
                let m = self.word_modulus();
                inv_mod_u64(*x, m).map(Coeff::Word).ok_or_else(not_unit)
            }
            Coeff::Big(x) => {
                let m = self.big_modulus();
                let e = BigInt::from(x.clone()).extended_gcd(&BigInt::from(m.clone()));
                if e.gcd.is_one() {
                    let r = e.x.mod_floor(&BigInt::from(m.clone()));
                    Ok(Coeff::Big(r.to_biguint().expect("canonical residue")))
                } else {
                    Err(not_unit())
                }
            }
        }
    }

    /// Map a coefficient of `self` into `target` along the canonical
    /// homomorphism, when one exists.
    pub fn convert(&self, a: &Coeff, target: &Ring) -> Result<Coeff> {
        if self == target {
            return Ok(a.clone());
        }
        let no_map = || Error::NoHomomorphism(self.to_string(), target.to_string());
        match (a, target) {
            (Coeff::Int(x), Ring::Rat) => Ok(Coeff::Rat(BigRational::from_integer(x.clone()))),
            (Coeff::Int(x), Ring::Mod(_)) => Ok(target.from_bigint(x)),
            (Coeff::Rat(x), Ring::Int) => {
                if x.denom().is_one() {
                    Ok(Coeff::Int(x.numer().clone()))
                } else {
                    Err(Error::NonIntegral(self.format_elem(a)))
                }
            }
            (Coeff::Rat(x), Ring::Mod(_)) => {
                let num = target.from_bigint(x.numer());
                let den = target.from_bigint(x.denom());
                let den_inv = target
                    .inv(&den)
                    .map_err(|_| Error::NonIntegral(self.format_elem(a)))?;
                Ok(target.mul(&num, &den_inv))
            }
            (Coeff::Word(_) | Coeff::Big(_), Ring::Mod(n)) => {
                // Z/m -> Z/n exists only when n divides m.
                let m = self.big_modulus();
                if m.is_multiple_of(&n.big) {
                    let x = match a {
                        Coeff::Word(x) => BigUint::from(*x),
                        Coeff::Big(x) => x.clone(),
                        _ => unreachable!(),
                    };
                    Ok(target.from_bigint(&BigInt::from(x)))
                } else {
                    Err(no_map())
                }
            }
            _ => Err(no_map()),
        }
    }

    pub fn format_elem(&self, a: &Coeff) -> String {
        match a {
            Coeff::Int(x) => x.to_string(),
            Coeff::Rat(x) => {
                if x.denom().is_one() {
                    x.numer().to_string()
                } else {
                    format!("{}/{}", x.numer(), x.denom())
                }
            }
            Coeff::Word(x) => x.to_string(),
            Coeff::Big(x) => x.to_string(),
        }
    }

    /// Parse an element previously written by `format_elem`.
    pub fn parse_elem(&self, text: &str) -> Result<Coeff> {
        let bad = || Error::InvalidArgument(format!("bad {self} coefficient `{text}`"));
        match self {
            Ring::Int => text.parse::<BigInt>().map(Coeff::Int).map_err(|_| bad()),
            Ring::Rat => {
                let (n, d) = match text.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (text, "1"),
                };
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Coeff::Rat(BigRational::new(n, d)))
            }
            Ring::Mod(_) => {
                let x: BigUint = text.parse().map_err(|_| bad())?;
                if &x >= self.big_modulus() {
                    return Err(bad());
                }
                Ok(self.from_bigint(&BigInt::from(x)))
            }
        }
    }

    /// Canonical integer lift, when the value is integral: residues lift to
    /// `[0, m)`, rationals must have denominator 1.
    pub fn lift(&self, a: &Coeff) -> Result<BigInt> {
        match a {
            Coeff::Int(x) => Ok(x.clone()),
            Coeff::Rat(x) => {
                if x.denom().is_one() {
                    Ok(x.numer().clone())
                } else {
                    Err(Error::NonIntegral(self.format_elem(a)))
                }
            }
            Coeff::Word(x) => Ok(BigInt::from(*x)),
            Coeff::Big(x) => Ok(BigInt::from(x.clone())),
        }
    }
}

fn inv_mod_u64(a: u64, m: u64) -> Option<u64> {
    // extended Euclid over i128; m < 2^32 so no overflow anywhere
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// A signed power of q: `sign * q^exp`. The argument type for theta functions
/// and Pochhammer symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub sign: i8,
    pub exp: i64,
}

impl Monomial {
    pub fn new(sign: i8, exp: i64) -> Monomial {
        debug_assert!(sign == 1 || sign == -1);
        Monomial { sign, exp }
    }

    pub fn q(exp: i64) -> Monomial {
        Monomial::new(1, exp)
    }

    pub fn neg_q(exp: i64) -> Monomial {
        Monomial::new(-1, exp)
    }

    pub fn negate(self) -> Monomial {
        Monomial::new(-self.sign, self.exp)
    }

    /// Product of two monomials.
    pub fn product(self, other: Monomial) -> Monomial {
        Monomial::new(self.sign * other.sign, self.exp + other.exp)
    }

    /// sign^n, using only the parity of n.
    pub fn sign_pow(sign: i8, n: i64) -> i8 {
        if sign == 1 || n.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.exp == 1 {
            write!(f, "q")
        } else {
            write!(f, "q^{}", self.exp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_canonical_residue() {
        let r5 = Ring::modular_u64(5);
        let a = r5.from_i64(-3);
        assert_eq!(a, Coeff::Word(2));
        let b = r5.from_i64(7);
        assert_eq!(r5.add(&a, &b), Coeff::Word(4));
        assert_eq!(r5.neg(&r5.zero()), Coeff::Word(0));
    }

    #[test]
    fn modular_inverse() {
        let r125 = Ring::modular_u64(125);
        let a = r125.from_i64(3);
        let ai = r125.inv(&a).unwrap();
        assert!(r125.is_one(&r125.mul(&a, &ai)));
        assert!(r125.inv(&r125.from_i64(5)).is_err());
    }

    #[test]
    fn big_modulus_path() {
        let m = BigUint::from(1u128 << 40);
        let r = Ring::modular(m).unwrap();
        let a = r.from_i64(-1);
        match &a {
            Coeff::Big(x) => assert_eq!(*x, BigUint::from((1u128 << 40) - 1)),
            _ => panic!("expected big residue"),
        }
        let ai = r.inv(&a).unwrap();
        assert!(r.is_one(&r.mul(&a, &ai)));
    }

    #[test]
    fn rational_conversion() {
        let half = Coeff::Rat(BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert!(Ring::Rat.convert(&half, &Ring::Int).is_err());
        // 1/2 is invertible mod 5: 2^{-1} = 3, so 1/2 -> 3
        let c = Ring::Rat.convert(&half, &Ring::modular_u64(5)).unwrap();
        assert_eq!(c, Coeff::Word(3));
    }

    #[test]
    fn mod_to_mod_divisor_only() {
        let r125 = Ring::modular_u64(125);
        let r5 = Ring::modular_u64(5);
        let a = r125.from_i64(123);
        assert_eq!(r125.convert(&a, &r5).unwrap(), Coeff::Word(3));
        assert!(r5.convert(&Coeff::Word(3), &r125).is_err());
    }

    #[test]
    fn elem_round_trip() {
        for ring in [Ring::Int, Ring::Rat, Ring::modular_u64(125)] {
            let a = ring.from_i64(-7);
            let s = ring.format_elem(&a);
            assert_eq!(ring.parse_elem(&s).unwrap(), a);
        }
        let half = Coeff::Rat(BigRational::new(BigInt::from(-1), BigInt::from(2)));
        assert_eq!(Ring::Rat.parse_elem("-1/2").unwrap(), half);
    }
}
