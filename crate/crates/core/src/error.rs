//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("cannot invert the zero series")]
    ZeroSeries,

    #[error("leading coefficient {0} is not a unit in {1}")]
    NonUnitLeading(String, String),

    #[error("coefficient of q^{exp} requested but series is only trusted below q^{prec}")]
    CoeffBeyondPrecision { exp: i64, prec: i64 },

    #[error("coefficient {0} is not integral")]
    NonIntegral(String),

    #[error("no canonical map from {0} to {1}")]
    NoHomomorphism(String, String),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("line {line}, col {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("in `{context}`: {source}")]
    Eval {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wrap an error with the expression fragment it arose in.
    pub fn in_context(self, context: impl Into<String>) -> Error {
        match self {
            // keep the innermost context; nesting every level is noise
            e @ Error::Eval { .. } => e,
            other => Error::Eval {
                context: context.into(),
                source: Box::new(other),
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
