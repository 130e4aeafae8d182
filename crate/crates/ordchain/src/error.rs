use std::fmt;

/// Errors produced by chain-model, piecewise-map, construction, and finite-oracle
/// operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A Möbius map was evaluated exactly at its pole.
    PoleEvaluation,
    /// The four coefficients have zero determinant.
    SingularMobius,
    /// Interval bounds do not describe a nonempty convex set.
    InvalidInterval(String),
    /// The endpoint-closure signatures of two intervals differ, so no
    /// order-isomorphism exists between them.
    SignatureMismatch { from: String, to: String },
    /// Evaluation point lies outside the map's domain chain.
    OutOfDomain,
    /// Composition was attempted between maps with incompatible chains.
    DomainMismatch,
    /// Piece data violates a structural invariant (overlap, gap, decreasing
    /// Möbius, pole in domain, image outside codomain).
    InvariantViolation { piece: usize, reason: String },
    /// Text input could not be parsed.
    ParseError { line: usize, msg: String },
    /// Construction parameters are out of order or otherwise unusable.
    BadParams(String),
    /// The requested construction is not defined for chains without extrema.
    OpenChainUnsupported,
    /// The operation requires an orientation-preserving map that is not
    /// order-preserving.
    NotOrientationProper,
    /// The map fails the single-relative-generator criterion.
    NotSingleGenerator(String),
    /// Preconditions of the operation do not hold.
    Inapplicable(String),
    /// The map is order-preserving, so the audit has nothing to check.
    NotApplicable,
    /// The factorization pipeline does not handle this domain chain shape.
    WrongChainKind(String),
    /// The restricted range lacks the extremum structure the pipeline needs.
    YNotEligible(String),
    /// The map must lie in OP(X,Y) but outside O(X,Y).
    NotInOPminusO,
    /// No order-isomorphic copy of the domain chain exists inside the target.
    NoIsoSubset,
    /// The restricted range must have both a minimum and a maximum.
    YLacksExtrema,
    /// Finite-chain size exceeds the configured cap.
    CapExceeded { n: usize, cap: usize },
    /// The generator set is not contained in the ambient semigroup.
    NotSubset,
    /// The ambient set is not closed under composition.
    NotClosed,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::PoleEvaluation => write!(f, "evaluation at the pole of a Möbius map"),
            Error::SingularMobius => write!(f, "Möbius coefficients have zero determinant"),
            Error::InvalidInterval(why) => write!(f, "invalid interval: {why}"),
            Error::SignatureMismatch { from, to } => {
                write!(
                    f,
                    "no order-isomorphism {from} -> {to}: endpoint closures differ"
                )
            }
            Error::OutOfDomain => write!(f, "point outside the domain chain"),
            Error::DomainMismatch => write!(f, "chains of the two maps do not compose"),
            Error::InvariantViolation { piece, reason } => {
                write!(f, "piece {piece}: {reason}")
            }
            Error::ParseError { line, msg } => write!(f, "parse error, line {line}: {msg}"),
            Error::BadParams(why) => write!(f, "bad parameters: {why}"),
            Error::OpenChainUnsupported => {
                write!(f, "no construction is defined for a chain without extrema")
            }
            Error::NotOrientationProper => {
                write!(f, "map is not orientation-preserving with a proper ideal")
            }
            Error::NotSingleGenerator(why) => write!(f, "not a single relative generator: {why}"),
            Error::Inapplicable(why) => write!(f, "inapplicable: {why}"),
            Error::NotApplicable => write!(f, "map is order-preserving; nothing to audit"),
            Error::WrongChainKind(why) => write!(f, "wrong chain kind: {why}"),
            Error::YNotEligible(why) => write!(f, "restricted range not eligible: {why}"),
            Error::NotInOPminusO => {
                write!(
                    f,
                    "map must be orientation- but not order-preserving into Y"
                )
            }
            Error::NoIsoSubset => write!(f, "domain chain is not order-isomorphic to the subset"),
            Error::YLacksExtrema => {
                write!(f, "restricted range needs both a minimum and a maximum")
            }
            Error::CapExceeded { n, cap } => write!(f, "chain size {n} exceeds cap {cap}"),
            Error::NotSubset => write!(f, "generators are not a subset of the semigroup"),
            Error::NotClosed => write!(f, "set is not closed under composition"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
