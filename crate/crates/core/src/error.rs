use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arc id `{0}`")]
    DuplicateArc(String),
    #[error("unknown arc id `{0}`")]
    UnknownArc(String),
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("no direction given for edge `{0}`")]
    MissingDirection(String),

    #[error("modulus must lie in 2..=255, got {0}")]
    InvalidModulus(u32),
    #[error("map has {got} values but the graph has {expected} arcs")]
    DomainMismatch { expected: usize, got: usize },
    #[error("value {value} on `{arc}` is out of range for modulus {p}")]
    ValueOutOfRange { arc: String, value: u32, p: u32 },
    #[error("{what} needs {needed} states/terms, above the configured bound {bound}")]
    BoundExceeded {
        what: &'static str,
        needed: u128,
        bound: u128,
    },

    #[error("map is not a dual flow (violated on arc `{0}`)")]
    NotDualFlow(String),
    #[error("map is zero on arc `{0}`")]
    HasZero(String),
    #[error("psi takes the maximal value on arc `{0}`")]
    PsiHasMaximal(String),

    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("graph must be connected")]
    NotConnected,
    #[error("face tracing found {faces} faces but Euler's formula requires {expected}")]
    EulerViolation { faces: usize, expected: usize },

    #[error("graph has a bridge (`{0}`)")]
    NotBridgeless(String),
    #[error("graph is not chordal")]
    NotChordal,
    #[error("no circuit of size at most 3 in a nonempty contracted graph:\n{graph}")]
    NoSmallCircuit { graph: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Format(String),
}

impl Error {
    pub(crate) fn bound(what: &'static str, needed: u128, bound: impl Into<u128>) -> Self {
        Error::BoundExceeded {
            what,
            needed,
            bound: bound.into(),
        }
    }
}
