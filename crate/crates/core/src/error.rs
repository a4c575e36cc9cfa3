use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: left is {left_rows}x{left_cols}, right is {right_rows}x{right_cols}")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("irrep provider unavailable for subgroup {subgroup}: {reason}")]
    IrrepProviderUnavailable { subgroup: String, reason: String },

    #[error("stabilizer of character {character} not supported: {source}")]
    UnsupportedStabilizer {
        character: String,
        #[source]
        source: Box<Error>,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(
        "fiber dimension mismatch: net entry {index} has dimension {found}, limit has {expected}"
    )]
    FiberDimension {
        index: usize,
        found: usize,
        expected: usize,
    },

    #[error("operator field has no value at limit-set entry {0}")]
    MissingLimitEntry(String),

    #[error("radius must be positive (got {0}); use motion_limit_operator for r = 0")]
    NonPositiveRadius(f64),

    #[error("unknown builtin `{name}`; valid builtins: {valid}")]
    UnknownBuiltin { name: String, valid: String },

    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
