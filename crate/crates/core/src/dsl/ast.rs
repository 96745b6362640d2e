//! Statement-language AST and its canonical printer.
//!
//! The printer and parser are exact inverses: `parse(print(ast)) == ast`.
//! Integer literals in the AST are nonnegative; negation is an explicit node.

use std::fmt;

use crate::ring::{Monomial, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    /// Nonnegative integer literal.
    Num(i64),
    /// `q^k` with k possibly negative; plain `q` is `q^1`.
    QPow(i64),
    /// `E[j]`.
    Euler(i64),
    /// Rogers-Ramanujan quotient `T`.
    RrT,
    /// Eta-quotient `K`.
    RrK,
    Phi,
    Psi,
    PhiMock,
    Rho,
    Mu,
    Lambda,
    /// The bilateral sum `A`.
    BigA,
    /// `p_partition`, the partition generating function 1/E_1.
    PartitionGf,
    JacobiCube,
    CubeAnalog,
    /// `f(a, b)` with signed q-power arguments.
    Theta(Monomial, Monomial),
    /// `poch(a; q^base)_n`.
    PochFinite {
        a: Monomial,
        base: i64,
        n: i64,
    },
    /// `poch(a; q^base)_inf`.
    PochInf {
        a: Monomial,
        base: i64,
    },
    /// `ajp(j, p)`.
    Ajp {
        j: i64,
        p: i64,
    },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Integer power; the exponent is a literal and may be negative.
    Pow(Box<Expr>, i64),
    /// `subst(e, s, k)`: the substitution q -> s * q^k with s in {1, -1}.
    Subst {
        inner: Box<Expr>,
        sign: i8,
        power: i64,
    },
    /// `extract(e, m, r)`: coefficient of q^{mn+r} becomes coefficient of q^n.
    Extract {
        inner: Box<Expr>,
        modulus: i64,
        residue: i64,
    },
}

/// One parsed corpus item: a label plus a check or scan, with optional
/// per-statement order and ring overrides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    pub label: String,
    pub kind: StatementKind,
    pub order: Option<i64>,
    pub ring: Option<Ring>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StatementKind {
    /// `verify lhs == rhs`.
    VerifyEq { lhs: Expr, rhs: Expr },
    /// `congruence expr at A n + B mod M witnesses W`: assert that the
    /// coefficient of q^{An+B} vanishes mod M for at least W witnesses.
    VerifyCong {
        expr: Expr,
        step: i64,
        offset: i64,
        modulus: u64,
        witnesses: i64,
    },
    /// `scan expr maxA A moduli M1, M2 witnesses W count N`: enumerate
    /// progressions and report every (step, offset, modulus) that holds.
    Scan {
        expr: Expr,
        max_step: i64,
        moduli: Vec<u64>,
        min_witnesses: i64,
        count: i64,
    },
}

impl Expr {
    pub fn boxed(self) -> Box<Expr> {
        Box::new(self)
    }

    /// Printing precedence: higher binds tighter.
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, parent: u8) -> fmt::Result {
        let me = self.prec();
        if me < parent {
            write!(f, "(")?;
            self.fmt_prec(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Num(k) => write!(f, "{k}"),
            Expr::QPow(1) => write!(f, "q"),
            Expr::QPow(k) => write!(f, "q^{k}"),
            Expr::Euler(j) => write!(f, "E[{j}]"),
            Expr::RrT => write!(f, "T"),
            Expr::RrK => write!(f, "K"),
            Expr::Phi => write!(f, "phi"),
            Expr::Psi => write!(f, "psi"),
            Expr::PhiMock => write!(f, "phiMock"),
            Expr::Rho => write!(f, "rho"),
            Expr::Mu => write!(f, "mu"),
            Expr::Lambda => write!(f, "lambda"),
            Expr::BigA => write!(f, "A"),
            Expr::PartitionGf => write!(f, "p_partition"),
            Expr::JacobiCube => write!(f, "jacobiCube"),
            Expr::CubeAnalog => write!(f, "cubeAnalog"),
            Expr::Theta(a, b) => write!(f, "f({a}, {b})"),
            Expr::PochFinite { a, base, n } => write!(f, "poch({a}; q^{base})_{n}"),
            Expr::PochInf { a, base } => write!(f, "poch({a}; q^{base})_inf"),
            Expr::Ajp { j, p } => write!(f, "ajp({j}, {p})"),
            Expr::Neg(x) => {
                write!(f, "-")?;
                x.fmt_prec(f, 3)
            }
            Expr::Add(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " + ")?;
                b.fmt_prec(f, 2)
            }
            Expr::Sub(a, b) => {
                a.fmt_prec(f, 1)?;
                write!(f, " - ")?;
                b.fmt_prec(f, 2)
            }
            Expr::Mul(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "*")?;
                b.fmt_prec(f, 3)
            }
            Expr::Div(a, b) => {
                a.fmt_prec(f, 2)?;
                write!(f, "/")?;
                b.fmt_prec(f, 3)
            }
            Expr::Pow(base, k) => {
                // a bare q-power base would fuse with the exponent: (q^2)^3
                // must not print as q^2^3
                if matches!(**base, Expr::QPow(_)) {
                    write!(f, "(")?;
                    base.fmt_prec(f, 0)?;
                    write!(f, ")")?;
                } else {
                    base.fmt_prec(f, 5)?;
                }
                write!(f, "^{k}")
            }
            Expr::Subst { inner, sign, power } => {
                write!(f, "subst(")?;
                inner.fmt_prec(f, 0)?;
                write!(f, ", {sign}, {power})")
            }
            Expr::Extract {
                inner,
                modulus,
                residue,
            } => {
                write!(f, "extract(")?;
                inner.fmt_prec(f, 0)?;
                write!(f, ", {modulus}, {residue})")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] ", self.label)?;
        match &self.kind {
            StatementKind::VerifyEq { lhs, rhs } => write!(f, "verify {lhs} == {rhs}")?,
            StatementKind::VerifyCong {
                expr,
                step,
                offset,
                modulus,
                witnesses,
            } => write!(
                f,
                "congruence {expr} at {step}n+{offset} mod {modulus} witnesses {witnesses}"
            )?,
            StatementKind::Scan {
                expr,
                max_step,
                moduli,
                min_witnesses,
                count,
            } => {
                let list = moduli
                    .iter()
                    .map(|m| m.to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                write!(
                    f,
                    "scan {expr} maxA {max_step} moduli {list} witnesses {min_witnesses} count {count}"
                )?;
            }
        }
        if let Some(order) = self.order {
            write!(f, " order {order}")?;
        }
        if let Some(ring) = &self.ring {
            write!(f, " ring {ring}")?;
        }
        Ok(())
    }
}
