use num_bigint::BigInt;
use std::fmt;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Matrix shape is wrong for the requested operation.
    Shape(String),
    /// Not a hyperbolic element of GL(2,Z): needs |det| = 1 and |trace| > 2.
    NotHyperbolic { det: BigInt, trace: BigInt },
    /// Hyperbolic, but outside the standing assumptions of the flow-level
    /// modules (det = +1 and trace >= 3).
    NotPositiveHyperbolic { det: BigInt, trace: BigInt },
    /// Surgery moves must sit on pairwise distinct orbits.
    OverlappingOrbits,
    /// The orbit does not belong to the flow in question.
    ForeignOrbit,
    /// The queried orbit was consumed by a surgery move.
    SurgeredOrbit,
    /// Theorem A' data needs two distinct orbits.
    IdenticalOrbits,
    /// Theorem A' data needs a nonzero slope.
    ZeroSlope,
    /// Parameter out of range (message names the violated bound).
    Parameter(String),
    /// An orbit id string such as `p2-i1` failed to parse or resolve.
    OrbitId(String),
    /// Malformed matrix string.
    MatrixSyntax(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Shape(msg) => write!(f, "shape error: {msg}"),
            Error::NotHyperbolic { det, trace } => {
                if num_traits::Signed::abs(det) != BigInt::from(1) {
                    write!(f, "not hyperbolic: |det| = {} (must be 1)", num_traits::Signed::abs(det))
                } else {
                    write!(f, "not hyperbolic: |trace| = {} (must exceed 2)", num_traits::Signed::abs(trace))
                }
            }
            Error::NotPositiveHyperbolic { det, trace } => write!(
                f,
                "not in positive hyperbolic SL(2,Z) class: det = {det}, trace = {trace} (need det = 1, trace >= 3)"
            ),
            Error::OverlappingOrbits => write!(f, "surgery orbits must be pairwise distinct"),
            Error::ForeignOrbit => write!(f, "orbit does not belong to this flow"),
            Error::SurgeredOrbit => write!(f, "orbit lies in the surgery locus"),
            Error::IdenticalOrbits => write!(f, "the two orbits must be distinct"),
            Error::ZeroSlope => write!(f, "slope must be nonzero"),
            Error::Parameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::OrbitId(msg) => write!(f, "bad orbit id: {msg}"),
            Error::MatrixSyntax(msg) => write!(f, "bad matrix string: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
