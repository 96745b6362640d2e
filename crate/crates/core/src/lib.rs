//! Exact q-series workbench core: truncated Laurent arithmetic over integer,
//! rational, and modular coefficient rings; q-Pochhammer and eta-quotient
//! expansion; Ramanujan theta functions; Appell-Lerch coefficient series;
//! series dissection; and a small statement language for verifying identities
//! and scanning for coefficient congruences.

pub mod appell;
pub mod dissect;
pub mod dsl;
pub mod error;
pub mod qproducts;
pub mod ring;
pub mod series;
pub mod theta;

pub use error::{Error, Result};
pub use ring::{Coeff, Monomial, Ring};
pub use series::{Comparison, Series};
