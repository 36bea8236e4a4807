use thiserror::Error;

use crate::report::ValidationReport;

/// Errors raised by ring, lattice and meadow operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("descriptor mismatch: expected a value of {expected}, found one of {found}")]
    DescriptorMismatch { expected: String, found: String },

    #[error("invalid ring descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("{value} is not a unit of {ring}")]
    NotAUnit { ring: String, value: String },

    #[error("table hom has no entry for {0}")]
    TableIncomplete(String),

    #[error("{0} has an infinite carrier")]
    InfiniteCarrier(String),

    #[error("invalid hom: {0}")]
    InvalidHom(String),

    #[error("unknown node `{0}`")]
    UnknownNode(String),

    #[error("duplicate node `{0}`")]
    DuplicateNode(String),

    #[error("`{lower}` is not below `{upper}`")]
    NotComparable { upper: String, lower: String },

    #[error("nodes `{0}` and `{1}` have no meet")]
    NoMeet(String, String),

    #[error("covering edge `{upper}` -> `{lower}` has no hom")]
    MissingEdge { upper: String, lower: String },

    #[error("invalid lattice:\n{0}")]
    InvalidLattice(ValidationReport),

    #[error("validation failed:\n{0}")]
    ValidationFailed(ValidationReport),

    #[error("ambiguous inverse for {element}: J_x has maximal nodes {{{}}}", maximal.join(", "))]
    AmbiguousInverse {
        element: String,
        maximal: Vec<String>,
    },

    #[error("element {0} does not belong to this meadow")]
    ForeignElement(String),

    #[error("{0} is not a component zero")]
    NotAZero(String),

    #[error("lattice map is not a lattice hom: {0}")]
    NotLatticeHom(String),

    #[error("ring map at `{node}` is not a ring hom: {detail}")]
    NotRingHom { node: String, detail: String },

    #[error("square {upper} -> {lower} does not commute at {witness}")]
    SquareDoesNotCommute {
        upper: String,
        lower: String,
        witness: String,
    },

    #[error("unit not preserved: {0}")]
    UnitNotPreserved(String),

    #[error("hom law `{law}` fails at {witness}")]
    HomLawViolated { law: String, witness: String },

    #[error("undecidable: {0}")]
    Undecidable(String),

    #[error("the ideal is the whole meadow")]
    IdealIsWhole,

    #[error("ideal element {0} is not sent to a component zero")]
    IdealNotKilled(String),

    #[error("hom is not surjective: {0} has no preimage")]
    NotSurjective(String),

    #[error("the zero ring has no meadow of the form R + a")]
    ZeroRingInput,

    #[error("target mismatch: {0}")]
    TargetMismatch(String),

    #[error("unsupported descriptor: {0}")]
    UnsupportedDescriptor(String),

    #[error("characteristic mismatch: {0}")]
    CharacteristicMismatch(String),

    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("`a` is reserved for the error element and cannot be a variable")]
    ReservedIdentifier,

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DescriptorMismatch { .. } => "DescriptorMismatch",
            Error::InvalidDescriptor(_) => "InvalidDescriptor",
            Error::NotAUnit { .. } => "NotAUnit",
            Error::TableIncomplete(_) => "TableIncomplete",
            Error::InfiniteCarrier(_) => "InfiniteCarrier",
            Error::InvalidHom(_) => "InvalidHom",
            Error::UnknownNode(_) => "UnknownNode",
            Error::DuplicateNode(_) => "DuplicateNode",
            Error::NotComparable { .. } => "NotComparable",
            Error::NoMeet(..) => "NoMeet",
            Error::MissingEdge { .. } => "MissingEdge",
            Error::InvalidLattice(_) => "InvalidLattice",
            Error::ValidationFailed(_) => "ValidationFailed",
            Error::AmbiguousInverse { .. } => "AmbiguousInverse",
            Error::ForeignElement(_) => "ForeignElement",
            Error::NotAZero(_) => "NotAZero",
            Error::NotLatticeHom(_) => "NotLatticeHom",
            Error::NotRingHom { .. } => "NotRingHom",
            Error::SquareDoesNotCommute { .. } => "SquareDoesNotCommute",
            Error::UnitNotPreserved(_) => "UnitNotPreserved",
            Error::HomLawViolated { .. } => "HomLawViolated",
            Error::Undecidable(_) => "Undecidable",
            Error::IdealIsWhole => "IdealIsWhole",
            Error::IdealNotKilled(_) => "IdealNotKilled",
            Error::NotSurjective(_) => "NotSurjective",
            Error::ZeroRingInput => "ZeroRingInput",
            Error::TargetMismatch(_) => "TargetMismatch",
            Error::UnsupportedDescriptor(_) => "UnsupportedDescriptor",
            Error::CharacteristicMismatch(_) => "CharacteristicMismatch",
            Error::Syntax { .. } => "SyntaxError",
            Error::ReservedIdentifier => "ReservedIdentifier",
            Error::UnboundVariable(_) => "UnboundVariable",
            Error::Parse(_) => "ParseError",
            Error::Io(_) => "IoError",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
