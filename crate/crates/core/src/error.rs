use thiserror::Error;

use crate::letter::Letter;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("empty label")]
    Empty,
    #[error("label {0:?} is longer than 16 bytes")]
    TooLong(String),
    #[error("label {0:?} must be ASCII alphanumeric or '_'")]
    InvalidChar(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation degrees differ ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("exp needs a series with zero constant term, got {0}")]
    NonzeroConstant(String),
    #[error("log needs a series with constant term 1, got {0}")]
    ConstantNotOne(String),
    #[error("series is not a Lie element: word {0} survives the Lyndon projection")]
    NotLie(String),
    #[error("empty alphabet")]
    EmptyAlphabet,
    #[error("degree must be at least 1")]
    ZeroDegree,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MmaError {
    #[error("no tail labelled {0}")]
    MissingTail(Letter),
    #[error("no head labelled {0}")]
    MissingHead(Letter),
    #[error("tail label {0} is already in use")]
    TailCollision(Letter),
    #[error("head label {0} is already in use")]
    HeadCollision(Letter),
    #[error("operation needs two distinct labels, got {0} twice")]
    SameLabel(Letter),
    #[error("letter {0} is not among the tails")]
    ForeignLetter(Letter),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BetaError {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("1 + alpha vanishes identically in tha^({0},{1})")]
    SingularAction(Letter, Letter),
    #[error(transparent)]
    Labels(#[from] MmaError),
    #[error("cannot parse rational function {0:?}: {1}")]
    Parse(String, String),
    #[error("value is not a Laurent polynomial: {0}")]
    NotLaurent(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TangleError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: strand label {label} is used more than once")]
    DuplicateLabel { line: usize, label: Letter },
    #[error("line {line}: sew step refers to {label}, which is not alive at that point")]
    DeadLabel { line: usize, label: Letter },
    #[error("line {line}: sew target {label} is already alive")]
    TargetCollision { line: usize, label: Letter },
    #[error("line {line}: {source}")]
    Label { line: usize, source: LabelError },
    #[error("invalid JSON tangle: {0}")]
    Json(String),
    #[error("expected a knot (one open strand), found {0} strands")]
    NotAKnot(usize),
    #[error(transparent)]
    Mma(#[from] MmaError),
    #[error(transparent)]
    Beta(#[from] BetaError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Syntax(String),
    #[error("bad coefficient {0:?}")]
    Coefficient(String),
    #[error("{0:?} is not a Lyndon word")]
    NotLyndon(String),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error(transparent)]
    Mma(#[from] MmaError),
    #[error(transparent)]
    Beta(#[from] BetaError),
}
