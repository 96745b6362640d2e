//! Recursive-descent parser for expressions and labeled statements.
//!
//! Precedence, tightest first: `^` (integer exponent), unary `-`, `*` `/`,
//! `+` `-`. Every statement starts with a `[label]`; a statement runs until
//! the next label or end of input, so long expressions may span lines.

use crate::error::{Error, Result};
use crate::ring::{Monomial, Ring};

use super::ast::{Expr, Statement, StatementKind};
use super::lex::{tokenize, Tok, Token};

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end_line: usize,
    end_col: usize,
}

pub fn parse_statements(text: &str) -> Result<Vec<Statement>> {
    let mut p = Parser::new(text)?;
    let mut out = Vec::new();
    while !p.at_end() {
        out.push(p.statement()?);
    }
    Ok(out)
}

/// Parse a single bare expression (the CLI entry point).
pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    if !p.at_end() {
        return Err(p.error_here("trailing input after expression"));
    }
    Ok(e)
}

impl Parser {
    fn new(text: &str) -> Result<Parser> {
        let toks = tokenize(text)?;
        let lines = text.lines().count().max(1);
        let end_col = text.lines().last().map_or(1, |l| l.chars().count() + 1);
        Ok(Parser {
            toks,
            pos: 0,
            end_line: lines,
            end_col,
        })
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos) {
            Some(t) => (t.line, t.col),
            None => (self.end_line, self.end_col),
        }
    }

    fn error_here(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.here();
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, want: &Tok, what: &str) -> Result<()> {
        match self.peek() {
            Some(t) if t == want => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error_here(format!("expected {what}"))),
        }
    }

    fn int(&mut self, what: &str) -> Result<i64> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.error_here(format!("expected {what}"))),
        }
    }

    /// An integer literal with optional leading minus, e.g. after `^`.
    fn signed_int(&mut self, what: &str) -> Result<i64> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            Ok(-self.int(what)?)
        } else {
            self.int(what)
        }
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == word => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error_here(format!("expected `{word}`"))),
        }
    }

    fn peek_keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == word)
    }

    // ------------------------------------------------------------------
    // Statements
    // ------------------------------------------------------------------

    fn statement(&mut self) -> Result<Statement> {
        let label = match self.next() {
            Some(Token {
                tok: Tok::Label(l), ..
            }) => l,
            _ => {
                self.pos = self.pos.saturating_sub(1);
                return Err(self.error_here("expected `[label]` at start of statement"));
            }
        };
        let kind = match self.peek() {
            Some(Tok::Ident(s)) if s == "verify" => {
                self.pos += 1;
                let lhs = self.expr()?;
                self.expect(&Tok::EqEq, "`==`")?;
                let rhs = self.expr()?;
                StatementKind::VerifyEq { lhs, rhs }
            }
            Some(Tok::Ident(s)) if s == "congruence" => {
                self.pos += 1;
                let expr = self.expr()?;
                self.keyword("at")?;
                let step = self.int("progression step")?;
                self.keyword("n")?;
                self.expect(&Tok::Plus, "`+` in progression")?;
                let offset = self.int("progression offset")?;
                self.keyword("mod")?;
                let modulus = self.modulus()?;
                self.keyword("witnesses")?;
                let witnesses = self.int("witness count")?;
                if step < 1 || offset < 0 || offset >= step || witnesses < 1 {
                    return Err(self.error_here(format!(
                        "bad progression {step}n+{offset} (need step >= 1, 0 <= offset < step, witnesses >= 1)"
                    )));
                }
                StatementKind::VerifyCong {
                    expr,
                    step,
                    offset,
                    modulus,
                    witnesses,
                }
            }
            Some(Tok::Ident(s)) if s == "scan" => {
                self.pos += 1;
                let expr = self.expr()?;
                self.keyword("maxA")?;
                let max_step = self.int("maximum step")?;
                self.keyword("moduli")?;
                let mut moduli = vec![self.modulus()?];
                while matches!(self.peek(), Some(Tok::Comma)) {
                    self.pos += 1;
                    moduli.push(self.modulus()?);
                }
                let mut min_witnesses = 25;
                let mut count = 500;
                if self.peek_keyword("witnesses") {
                    self.pos += 1;
                    min_witnesses = self.int("witness count")?;
                }
                if self.peek_keyword("count") {
                    self.pos += 1;
                    count = self.int("coefficient count")?;
                }
                if max_step < 1 || min_witnesses < 1 || count < 1 {
                    return Err(self.error_here("scan parameters must be positive"));
                }
                StatementKind::Scan {
                    expr,
                    max_step,
                    moduli,
                    min_witnesses,
                    count,
                }
            }
            _ => {
                return Err(
                    self.error_here("expected `verify`, `congruence`, or `scan` after label")
                )
            }
        };
        let mut order = None;
        let mut ring = None;
        loop {
            if self.peek_keyword("order") {
                self.pos += 1;
                let v = self.int("order")?;
                if v < 1 {
                    return Err(self.error_here("order must be >= 1"));
                }
                order = Some(v);
            } else if self.peek_keyword("ring") {
                self.pos += 1;
                ring = Some(self.ring_spec()?);
            } else {
                break;
            }
        }
        if ring.is_some() && matches!(kind, StatementKind::Scan { .. }) {
            return Err(self.error_here("scan statements always run over int; drop `ring`"));
        }
        Ok(Statement {
            label,
            kind,
            order,
            ring,
        })
    }

    fn modulus(&mut self) -> Result<u64> {
        let m = self.int("modulus")?;
        if m < 2 {
            return Err(self.error_here(format!("modulus {m} must be >= 2")));
        }
        Ok(m as u64)
    }

    fn ring_spec(&mut self) -> Result<Ring> {
        match self.next() {
            Some(Token {
                tok: Tok::Ident(s), ..
            }) => match s.as_str() {
                "int" => Ok(Ring::Int),
                "rat" => Ok(Ring::Rat),
                "mod" => {
                    self.expect(&Tok::Colon, "`:` after `mod`")?;
                    let m = self.modulus()?;
                    Ok(Ring::modular_u64(m))
                }
                other => {
                    self.pos -= 1;
                    Err(self.error_here(format!("unknown ring `{other}`")))
                }
            },
            _ => Err(self.error_here("expected ring: int, rat, or mod:<m>")),
        }
    }

    // ------------------------------------------------------------------
    // Expressions
    // ------------------------------------------------------------------

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Add(lhs.boxed(), rhs.boxed());
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Expr::Sub(lhs.boxed(), rhs.boxed());
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = Expr::Mul(lhs.boxed(), rhs.boxed());
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = Expr::Div(lhs.boxed(), rhs.boxed());
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(Expr::Neg(inner.boxed()));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            let k = self.signed_int("integer exponent")?;
            return Ok(Expr::Pow(base.boxed(), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Expr::Num(v))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.named_atom(&name)
            }
            _ => Err(self.error_here("expected an expression")),
        }
    }

    fn named_atom(&mut self, name: &str) -> Result<Expr> {
        match name {
            "q" => {
                if matches!(self.peek(), Some(Tok::Caret)) {
                    self.pos += 1;
                    let k = self.signed_int("exponent of q")?;
                    Ok(Expr::QPow(k))
                } else {
                    Ok(Expr::QPow(1))
                }
            }
            "E" => {
                self.expect(&Tok::LBracket, "`[` after E")?;
                let j = self.int("integer dilation")?;
                self.expect(&Tok::RBracket, "`]`")?;
                if j < 1 {
                    return Err(self.error_here("Euler index must be >= 1"));
                }
                Ok(Expr::Euler(j))
            }
            "T" => Ok(Expr::RrT),
            "K" => Ok(Expr::RrK),
            "phi" => Ok(Expr::Phi),
            "psi" => Ok(Expr::Psi),
            "phiMock" => Ok(Expr::PhiMock),
            "rho" => Ok(Expr::Rho),
            "mu" => Ok(Expr::Mu),
            "lambda" => Ok(Expr::Lambda),
            "A" => Ok(Expr::BigA),
            "p_partition" => Ok(Expr::PartitionGf),
            "jacobiCube" => Ok(Expr::JacobiCube),
            "cubeAnalog" => Ok(Expr::CubeAnalog),
            "f" => {
                self.expect(&Tok::LParen, "`(` after f")?;
                let a = self.monomial()?;
                self.expect(&Tok::Comma, "`,` between theta arguments")?;
                let b = self.monomial()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(Expr::Theta(a, b))
            }
            "poch" => {
                self.expect(&Tok::LParen, "`(` after poch")?;
                let a = self.monomial()?;
                self.expect(&Tok::Semi, "`;` in Pochhammer symbol")?;
                self.keyword("q")?;
                let base = if matches!(self.peek(), Some(Tok::Caret)) {
                    self.pos += 1;
                    self.int("Pochhammer base")?
                } else {
                    1
                };
                self.expect(&Tok::RParen, "`)`")?;
                self.expect(&Tok::Underscore, "`_` after Pochhammer symbol")?;
                if self.peek_keyword("inf") {
                    self.pos += 1;
                    Ok(Expr::PochInf { a, base })
                } else {
                    let n = self.int("Pochhammer length or `inf`")?;
                    Ok(Expr::PochFinite { a, base, n })
                }
            }
            "ajp" => {
                self.expect(&Tok::LParen, "`(` after ajp")?;
                let j = self.int("j")?;
                self.expect(&Tok::Comma, "`,`")?;
                let p = self.int("p")?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(Expr::Ajp { j, p })
            }
            "subst" => {
                self.expect(&Tok::LParen, "`(` after subst")?;
                let inner = self.expr()?;
                self.expect(&Tok::Comma, "`,`")?;
                let sign = match self.signed_int("sign (1 or -1)")? {
                    1 => 1i8,
                    -1 => -1i8,
                    other => {
                        return Err(self
                            .error_here(format!("substitution sign must be 1 or -1, got {other}")))
                    }
                };
                self.expect(&Tok::Comma, "`,`")?;
                let power = self.int("substitution power")?;
                self.expect(&Tok::RParen, "`)`")?;
                if power < 1 {
                    return Err(self.error_here("substitution power must be >= 1"));
                }
                Ok(Expr::Subst {
                    inner: inner.boxed(),
                    sign,
                    power,
                })
            }
            "extract" => {
                self.expect(&Tok::LParen, "`(` after extract")?;
                let inner = self.expr()?;
                self.expect(&Tok::Comma, "`,`")?;
                let modulus = self.int("extraction modulus")?;
                self.expect(&Tok::Comma, "`,`")?;
                let residue = self.int("extraction residue")?;
                self.expect(&Tok::RParen, "`)`")?;
                if modulus < 2 || residue < 0 || residue >= modulus {
                    return Err(
                        self.error_here("extraction needs m >= 2 and 0 <= r < m".to_string())
                    );
                }
                Ok(Expr::Extract {
                    inner: inner.boxed(),
                    modulus,
                    residue,
                })
            }
            other => Err(self.error_here(format!("unknown identifier `{other}`"))),
        }
    }

    /// A signed q-power: `[-] q [^ INT]` with nonnegative exponent.
    fn monomial(&mut self) -> Result<Monomial> {
        let sign = if matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            -1i8
        } else {
            1i8
        };
        self.keyword("q")?;
        let exp = if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            self.int("monomial exponent")?
        } else {
            1
        };
        if exp < 0 {
            return Err(self.error_here("monomial exponent must be >= 0"));
        }
        Ok(Monomial::new(sign, exp))
    }
}
