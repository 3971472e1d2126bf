use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("zero linear form")]
    ZeroForm,

    #[error("malformed arrangement: {0}")]
    Parse(String),

    #[error("hyperplane {0} has a zero normal")]
    ZeroNormal(usize),

    #[error("hyperplanes {0} and {1} coincide")]
    DuplicateHyperplane(usize, usize),

    #[error("hyperplane {0} has a nonpositive multiplicity")]
    NonPositiveMultiplicity(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("hyperplane {0} is not in the arrangement")]
    NoSuchHyperplane(usize),

    #[error("not a flat of the arrangement")]
    NotAFlat,

    #[error("expected a codimension-2 flat, got codimension {0}")]
    NotCodim2(usize),

    #[error("a rank-2 instance needs at least two pairwise non-proportional forms")]
    DegenerateRank2,

    #[error("arrangement is not simple")]
    NotSimple,

    #[error("arrangement needs dimension at least {0}")]
    DimensionTooSmall(usize),

    #[error("hyperplane {0} is not locally heavy")]
    NotLocallyHeavy(usize),

    #[error("invalid multiplicity shift: {0}")]
    InvalidShift(String),

    #[error("invalid flag: {0}")]
    InvalidFlag(String),

    #[error("fewer than two locally heavy hyperplanes")]
    TooFewLocallyHeavy,

    #[error("incompatible exponents: {0}")]
    IncompatibleExponents(String),

    #[error("derivation {0} is not a member of D(A,m)")]
    NotInModule(usize),

    #[error("expected {expected} derivations, got {found}")]
    WrongCount { expected: usize, found: usize },

    #[error("arrangement is not essential (rank {rank} < dimension {dim})")]
    NotEssential { rank: usize, dim: usize },

    #[error("degree cap {cap} exceeds the supported limit {limit}")]
    CapTooLarge { cap: u32, limit: u32 },

    #[error("derivation does not annihilate the restricting form")]
    NotTangent,

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
