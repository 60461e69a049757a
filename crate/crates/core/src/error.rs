use thiserror::Error;

/// Errors surfaced by the library. Precondition violations carry enough
/// context to be reported verbatim at the CLI boundary.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed rational literal `{0}`")]
    BadRational(String),
    #[error("malformed input: {0}")]
    BadInput(String),
    #[error("element does not belong to this carrier: {0}")]
    ForeignElement(String),
    #[error("carrier is not a triple: {0}")]
    NotATriple(String),
    #[error("operation requires a finite carrier")]
    NotFinite,
    #[error("epsilon is not involutive: eps*eps != one")]
    EpsNotInvolutive,
    #[error("no unit element in this carrier")]
    NoUnit,
    #[error("carrier has zero divisors: {0}")]
    ZeroDivisor(String),
    #[error("power-set closure exceeded bound {0}")]
    NonterminatingClosure(usize),
    #[error("matrix dimension {0} exceeds the supported bound {1}")]
    DimensionTooLarge(usize, usize),
    #[error("coordinate is not invertible: {0}")]
    NonInvertible(String),
    #[error("congruence lattice too large to enumerate: {0}")]
    LatticeTooLarge(String),
    #[error("denominator set meets the null elements: {0}")]
    NullDenominator(String),
    #[error("submonoid check failed: {0}")]
    BadSubmonoid(String),
    #[error("quotient carrier would exceed bound: {0}")]
    QuotientTooLarge(String),
    #[error("morphism carrier too large: {0}")]
    CarrierTooLarge(String),
    #[error("coefficient space too large: {0}")]
    CoefficientSpaceTooLarge(String),
    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("quotient tables are inconsistent: {0}")]
    IllDefined(String),
    #[error("polynomials share no support monomial")]
    NoCommonMonomial,
    #[error("multiplication requires a tangible operand on this carrier")]
    ActionOnly,
    #[error("operation not supported on this carrier: {0}")]
    UnsupportedCarrier(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable code for the CLI error object.
    pub fn code(&self) -> &'static str {
        match self {
            Error::BadRational(_) => "bad_rational",
            Error::BadInput(_) => "bad_input",
            Error::ForeignElement(_) => "foreign_element",
            Error::NotATriple(_) => "not_a_triple",
            Error::NotFinite => "not_finite",
            Error::EpsNotInvolutive => "eps_not_involutive",
            Error::NoUnit => "no_unit",
            Error::ZeroDivisor(_) => "zero_divisor",
            Error::NonterminatingClosure(_) => "nonterminating_closure",
            Error::DimensionTooLarge(_, _) => "dimension_too_large",
            Error::NonInvertible(_) => "non_invertible",
            Error::LatticeTooLarge(_) => "lattice_too_large",
            Error::NullDenominator(_) => "null_denominator",
            Error::BadSubmonoid(_) => "bad_submonoid",
            Error::QuotientTooLarge(_) => "quotient_too_large",
            Error::CarrierTooLarge(_) => "carrier_too_large",
            Error::CoefficientSpaceTooLarge(_) => "coefficient_space_too_large",
            Error::NotHomomorphism(_) => "not_homomorphism",
            Error::IllDefined(_) => "ill_defined",
            Error::NoCommonMonomial => "no_common_monomial",
            Error::ActionOnly => "action_only",
            Error::UnsupportedCarrier(_) => "unsupported_carrier",
        }
    }
}
