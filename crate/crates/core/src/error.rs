use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relation row has {found} entries, expected {expected}")]
    RowLength { expected: usize, found: usize },
    #[error("epsilon does not square to the identity")]
    EpsilonOrder,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("unknown named pasture `{0}`")]
    UnknownName(String),
    #[error("null relation needs at least two nonzero terms")]
    BadRelationShape,
    #[error("({0}, {1}) is not a fundamental pair")]
    NotFundamental(String, String),
    #[error("image of generator {0} does not respect its order")]
    GroupHomViolation(usize),
    #[error("epsilon is not sent to epsilon")]
    EpsilonViolation,
    #[error("null orbit {0} is not sent into the nullset")]
    NullsetViolation(usize),
    #[error("target has infinite unit group and source is not generated by fundamental elements")]
    InfiniteTarget,
    #[error("morphisms do not compose: target of the first differs from source of the second")]
    ChainMismatch,
    #[error("search space {size} exceeds cap {cap}")]
    SearchSpaceExceeded { size: String, cap: u64 },
    #[error("not a matroid: {0}")]
    NotAMatroid(String),
    #[error("basis exchange fails for {b1:?}, {b2:?} and element {x}")]
    ExchangeAxiom { b1: Vec<usize>, b2: Vec<usize>, x: usize },
    #[error("pasture has infinite unit group")]
    InfinitePasture,
    #[error("{0} fundamental elements exceeds the limit of {1}")]
    TooManyFundamental(usize, usize),
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("duplicate variable name `{0}`")]
    DuplicateName(String),
    #[error("descriptor comparison needs ternary or WLUM lifts")]
    KindMismatch,
    #[error("hexagon does not belong to the pasture")]
    HexagonNotOfPasture,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
