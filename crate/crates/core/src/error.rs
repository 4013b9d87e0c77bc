use std::fmt;

use thiserror::Error;

use crate::parse::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

/// Which formal-group-law axiom failed during validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Unit,
    Commutativity,
    Associativity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Unit => "unit",
            Axiom::Commutativity => "commutativity",
            Axiom::Associativity => "associativity",
        })
    }
}

/// Coarse classification used for process exit codes and FFI status codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Precondition,
    Verification,
    UnsupportedRing,
    Cancelled,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },
    #[error("variable mismatch: [{left}] vs [{right}]")]
    VariableMismatch { left: String, right: String },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("{0} is not idempotent modulo nilpotents")]
    NotAlmostIdempotent(String),
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("constant term {0} is not nilpotent")]
    NonNilpotentConstantTerm(String),
    #[error("not a coordinate: {0}")]
    NotACoordinate(String),
    #[error("{axiom} axiom fails at exponent {exponent:?}: coefficient {value}")]
    AxiomViolation {
        axiom: Axiom,
        exponent: Vec<u32>,
        value: String,
    },
    #[error("series is not additive: f(x+y) - f(x) - f(y) has coefficient {value} at exponent {exponent:?}")]
    NotAdditive { exponent: Vec<u32>, value: String },
    #[error("ring does not have characteristic {0}")]
    WrongCharacteristic(u64),
    #[error("formal derivative is not zero")]
    DerivativeNotZero,
    #[error("operation requires a Q-algebra, got {0}")]
    RequiresRationalCoefficients(String),
    #[error("not a Weierstrass series: {0}")]
    NotWeierstrass(String),
    #[error("truncation order too low: {0}")]
    OrderTooLow(String),
    #[error("root {0} is not nilpotent")]
    NotNilpotentRoot(String),
    #[error("series does not have constant degree: {0}")]
    NotConstantDegree(String),
    #[error("series is not invertible: {0}")]
    NotInvertible(String),
    #[error("comultiplication is not filtered: {0}")]
    NotFiltered(String),
    #[error("antipode verification failed: {0}")]
    AntipodeVerificationFailed(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("operation cancelled")]
    Cancelled,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            Parse(_) => ErrorClass::Parse,
            UnsupportedRing(_) => ErrorClass::UnsupportedRing,
            AxiomViolation { .. }
            | NotAdditive { .. }
            | AntipodeVerificationFailed(_)
            | VerificationFailed(_) => ErrorClass::Verification,
            Cancelled => ErrorClass::Cancelled,
            _ => ErrorClass::Precondition,
        }
    }

    /// Stable machine-readable identifier, distinct per variant.
    pub fn code(&self) -> &'static str {
        use Error::*;
        match self {
            Parse(_) => "parse_error",
            RingMismatch { .. } => "ring_mismatch",
            VariableMismatch { .. } => "variable_mismatch",
            InvalidRing(_) => "invalid_ring",
            InvalidArgument(_) => "invalid_argument",
            NotAUnit(_) => "not_a_unit",
            NotAlmostIdempotent(_) => "not_almost_idempotent",
            UnsupportedRing(_) => "unsupported_ring",
            NonNilpotentConstantTerm(_) => "non_nilpotent_constant_term",
            NotACoordinate(_) => "not_a_coordinate",
            AxiomViolation { .. } => "axiom_violation",
            NotAdditive { .. } => "not_additive",
            WrongCharacteristic(_) => "wrong_characteristic",
            DerivativeNotZero => "derivative_not_zero",
            RequiresRationalCoefficients(_) => "requires_rational_coefficients",
            NotWeierstrass(_) => "not_weierstrass",
            OrderTooLow(_) => "order_too_low",
            NotNilpotentRoot(_) => "not_nilpotent_root",
            NotConstantDegree(_) => "not_constant_degree",
            NotInvertible(_) => "not_invertible",
            NotFiltered(_) => "not_filtered",
            AntipodeVerificationFailed(_) => "antipode_verification_failed",
            VerificationFailed(_) => "verification_failed",
            Cancelled => "cancelled",
        }
    }
}
