//! A small statement language for q-series claims: expressions over the
//! workbench's builtin series, with three statement forms — equality checks,
//! coefficient congruences on arithmetic progressions, and congruence scans.
//! Corpus files (`.qid`) hold one labeled statement per block with `#`
//! comments.

pub mod ast;
pub mod eval;
pub mod lex;
pub mod parse;
pub mod run;

pub use ast::{Expr, Statement, StatementKind};
pub use eval::{eval, MemoCache};
pub use parse::{parse_expr, parse_statements};
pub use run::{run, run_statement, Detail, Report, RunOptions, ScanHit, Verdict};
