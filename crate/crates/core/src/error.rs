use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what} would have {size} elements, above the cap of {cap}")]
    SizeLimit { what: &'static str, size: u128, cap: u128 },

    #[error("graph has a loop, so no proper colouring exists")]
    NoColoring,

    #[error("graph is bipartite, so it has no odd closed walk")]
    NoOddWalk,

    #[error("operation not supported on this representation: {0}")]
    Unsupported(String),

    #[error("polymorphism does not preserve arcs at {0}")]
    CorruptPolymorphism(String),

    #[error("circle map invariant violated: {0}")]
    InternalConsistency(String),

    #[error("step between {from:?} and {to:?} is exactly half a turn")]
    DegenerateStep { from: (u32, u32), to: (u32, u32) },

    #[error("consecutive arcs {from:?} and {to:?} do not share a face")]
    CertificateViolation { from: (u32, u32), to: (u32, u32) },

    #[error("accumulated winding {0} is not an integer")]
    NonIntegralWinding(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("pipeline step {step} ({tag}): {source}")]
    Pipeline {
        step: usize,
        tag: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn check_cap(what: &'static str, size: u128, cap: u128) -> Result<()> {
        if size > cap {
            Err(Error::SizeLimit { what, size, cap })
        } else {
            Ok(())
        }
    }
}
