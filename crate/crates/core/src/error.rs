use thiserror::Error;

/// Errors raised by the toric computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("zero vector has no primitive part")]
    ZeroVector,

    #[error("ray index {index} out of range (cone has {count} extremal rays)")]
    RayIndexOutOfRange { index: usize, count: usize },

    #[error("cone is not strongly convex")]
    NotStronglyConvex,

    #[error("cone has a nontrivial lineality space; split off the torus factor first")]
    NotPointed,

    #[error("cone is not full-dimensional")]
    NotFullDimensional,

    #[error("variety is a torus, no roots")]
    IsTorus,

    #[error("weight {weight} is not a Demazure root for ray {ray}")]
    NotARoot { ray: usize, weight: String },

    #[error("function is not invariant: exponent {0} does not pair to zero with the ray")]
    NotInvariant(String),

    #[error("exponent {0} lies outside the dual cone")]
    SupportOutsideCone(String),

    #[error("operands are defined over different cones")]
    ConeMismatch,

    #[error("torus element has a zero coordinate")]
    ZeroCharacterValue,

    #[error("fan is not smooth")]
    NotSmooth,

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("tower depth {requested} exceeds the cap {cap}")]
    TowerCapExceeded { requested: usize, cap: usize },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl ToricError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            ToricError::RankMismatch { .. } => "RANK_MISMATCH",
            ToricError::ZeroVector => "ZERO_VECTOR",
            ToricError::RayIndexOutOfRange { .. } => "RAY_INDEX",
            ToricError::NotStronglyConvex => "NOT_STRONGLY_CONVEX",
            ToricError::NotPointed => "NOT_POINTED",
            ToricError::NotFullDimensional => "NOT_FULL_DIMENSIONAL",
            ToricError::IsTorus => "IS_TORUS",
            ToricError::NotARoot { .. } => "NOT_A_ROOT",
            ToricError::NotInvariant(_) => "NOT_INVARIANT",
            ToricError::SupportOutsideCone(_) => "SUPPORT_OUTSIDE_CONE",
            ToricError::ConeMismatch => "CONE_MISMATCH",
            ToricError::ZeroCharacterValue => "ZERO_CHARACTER_VALUE",
            ToricError::NotSmooth => "NOT_SMOOTH",
            ToricError::InvalidFan(_) => "INVALID_FAN",
            ToricError::TowerCapExceeded { .. } => "TOWER_CAP",
            ToricError::Internal(_) => "INTERNAL",
        }
    }
}

pub type Result<T> = std::result::Result<T, ToricError>;
