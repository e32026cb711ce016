use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operands belong to different number fields")]
    FieldMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("polynomial {0} is reducible over the rationals")]
    Reducible(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid substitution: {0}")]
    InvalidSubstitution(String),

    #[error("primitivity gate failed: substitution matrix is not primitive")]
    NotPrimitive,

    #[error("Pisot gate failed: Perron root (root of {min_poly}) is not a Pisot number")]
    NotPisot { min_poly: String },

    #[error("word length cap of {cap} letters exceeded")]
    WordCap { cap: usize },

    #[error("patch size cap of {cap} tiles exceeded")]
    PatchCap { cap: usize },

    #[error("overlap class cap of {cap} classes exceeded")]
    ClassCap { cap: usize },

    #[error("tile map enumeration cap exceeded: {count} maps at this level, cap is {cap}")]
    EnumerationCap { count: u128, cap: u128 },

    #[error("overlap seeding did not stabilize after {doublings} radius doublings")]
    SeedingUnstable { doublings: u32 },

    #[error("graph is not strongly connected")]
    NotStronglyConnected,

    #[error("invalid cycle set: {0}")]
    InvalidCycles(String),

    #[error("rod-hypothesis violation: every class in the component has equal colors")]
    RodHypothesis,

    #[error("overlap graph has no vertices")]
    EmptyGraph,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("fixture error: {0}")]
    Fixture(String),

    #[error("substitution is not of constant length")]
    NotConstantLength,
}

impl Error {
    /// Whether the error is a resource cap rather than a rejected input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::WordCap { .. }
                | Error::PatchCap { .. }
                | Error::ClassCap { .. }
                | Error::EnumerationCap { .. }
                | Error::SeedingUnstable { .. }
        )
    }
}
