use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("point has {found} coordinates, polynomial roster has {expected}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("polynomial is not divisible")]
    NotDivisible,

    #[error("both polynomials have degree 0 in `{0}`")]
    DegenerateDegrees(String),

    #[error("roster of length {0} cannot be split into z and w blocks")]
    OddRoster(usize),

    #[error("homogenizing degree {requested} is below the polynomial degree {required}")]
    DegreeTooSmall { required: u32, requested: u32 },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("curve does not pass through the origin")]
    NotThroughOrigin,

    #[error("local germ is not squarefree")]
    NotSquarefree,

    #[error("coefficient field escape: {0}")]
    FieldEscape(String),

    #[error("truncation order {0} is too short to certify the valuation")]
    TruncationTooShort(usize),

    #[error("curves share a common component")]
    CommonComponent,

    #[error("internal oracle disagreement: {0}")]
    OracleDisagreement(String),

    #[error("pencil generators are proportional")]
    ProportionalGenerators,

    #[error("family spans a space of dimension {0}; a pencil needs two independent members")]
    RankTooSmall(usize),

    #[error("point set misses intersections: orders sum to {found}, Bezout total is {expected}")]
    IncompletePointSet { found: u64, expected: u64 },

    #[error("reality violation: coefficient of z^{z_exps:?} w^{w_exps:?} is not conjugate to its mirror")]
    RealityViolation { z_exps: Vec<u32>, w_exps: Vec<u32> },

    #[error("no sample points found on the hypersurface after {0} lines")]
    NoSamplePoints(usize),

    #[error("defining function is not reduced: its gradient vanishes on the whole hypersurface")]
    NonReduced,

    #[error("zero {0}")]
    Zero(&'static str),

    #[error("plane parametrization has rank {0}, expected 3")]
    RankDeficientPlane(usize),

    #[error("matrix is complex-linear; the construction degenerates to a holomorphic pencil")]
    ComplexLinear,

    #[error("no admissible random coordinate change found after {0} attempts")]
    ShearExhausted(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
