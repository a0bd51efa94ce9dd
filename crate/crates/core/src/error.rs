use thiserror::Error;

use crate::dvr::Location;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("value {value} does not lie in {location}")]
    Location { value: String, location: Location },
    #[error("location mismatch: {0}")]
    LocationMismatch(String),
    #[error("{axiom} fails at {index}")]
    AxiomFailure { axiom: String, index: String },
    #[error("not a morphism: {0}")]
    NotAMorphism(String),
    #[error("not a model map: {0}")]
    NotAModelMap(String),
    #[error("{0} is not commutative")]
    NonCommutative(String),
    #[error("saturation did not stabilize within {0} iterations")]
    NonTerminating(usize),
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error("the ideal contains the unit")]
    UnitInIdeal,
    #[error("not a closed immersion: {0}")]
    NotAClosedImmersion(String),
    #[error("gluing obstruction: {0}")]
    GluingObstruction(String),
    #[error("generic fibre is not split: {0}")]
    NotSplit(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("square does not commute: {0}")]
    SquareDoesNotCommute(String),
    #[error("presentation error: {0}")]
    Presentation(String),
    #[error("invalid group table: {0}")]
    GroupTable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("quasi-finite data invalid: {0}")]
    QuasiFinite(String),
}

impl Error {
    pub(crate) fn axiom(axiom: &str, index: impl std::fmt::Debug) -> Self {
        Error::AxiomFailure {
            axiom: axiom.to_string(),
            index: format!("{index:?}"),
        }
    }
}
