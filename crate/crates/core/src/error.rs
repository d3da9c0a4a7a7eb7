use thiserror::Error;

/// Every failure the library reports. Structural verification errors name
/// the basis elements on which the failing identity was observed.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input shape error: {0}")]
    InputShape(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),

    #[error("multiplication is not associative on basis triple ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("unit law fails on basis element {0}")]
    NonUnital(usize),
    #[error("bad left action: {0}")]
    BadLeftAction(String),
    #[error("bad right action: {0}")]
    BadRightAction(String),
    #[error("left action of ring basis element {0} does not commute with right action of {1}")]
    ActionsDontCommute(usize, usize),
    #[error("middle rings of the tensor factors differ")]
    MiddleRingMismatch,
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("map does not intertwine the {0} action")]
    NotBimoduleMap(String),

    #[error("comultiplication is not coassociative on basis element {0}")]
    NotCoassociative(usize),
    #[error("counit law fails ({side}) on basis element {basis}")]
    CounitLawFails { side: &'static str, basis: usize },
    #[error("coaction is not left linear: {0}")]
    NotLeftLinear(String),
    #[error("not right linear: {0}")]
    NotRightLinear(String),
    #[error("coaction axiom `{law}` fails on basis element {basis}")]
    NotCoaction { law: &'static str, basis: usize },
    #[error("left and right coactions do not commute on basis element {0}")]
    CoactionsDontCommute(usize),
    #[error("objects live over different corings")]
    CoringMismatch,
    #[error("map is not colinear: {0}")]
    NotColinear(String),
    #[error("map is not a bicomodule map: {0}")]
    NotBicolinear(String),
    #[error("map is not in the compatible Hom space: {0}")]
    NotInBulletHom(String),
    #[error("witness failed re-verification: {0}")]
    UnverifiedWitness(String),

    #[error("unresolved reference: {0}")]
    Resolve(String),
    #[error("unknown catalog entry: {0}")]
    UnknownCatalog(String),
    #[error("unknown command: {0}")]
    UnknownCommand(String),
    #[error("missing argument: {0}")]
    MissingArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("{location}: {source}")]
    At { location: String, source: Box<Error> },
}

impl Error {
    /// The error with any location wrappers removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::At { source, .. } => source.root(),
            other => other,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
