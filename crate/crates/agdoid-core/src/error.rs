use alloc::string::String;
use core::fmt;

/// Errors raised by the engine. Every variant corresponds to a refused
/// computation; nothing is silently truncated or coerced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Operands were built over different ring contexts.
    RingMismatch,
    UnknownField(String),
    DuplicateField(String),
    /// An assignment or substitution would put an odd value into an even slot or vice versa.
    ParityMismatch(String),
    /// The operation requires a density without constant term.
    ConstantTerm,
    /// The density is not in the image of the total derivative. Carries the canonical text of
    /// the unresolved remainder.
    NotExact(String),
    CyclicRules,
    /// A requested truncation floor lies below what the inputs can support.
    FloorTooLow { requested: i32, valid: i32 },
    /// The residue was requested from a symbol whose floor is above degree -1.
    UntrustedResidue,
    /// A differential operator was required.
    NotDifferential,
    /// A result had a coefficient in a degree that must vanish.
    DegreeViolation { degree: i32, max: i32 },
    GhostNumber { found: i32, expected: i32 },
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RingMismatch => write!(f, "operands belong to different ring contexts"),
            Error::UnknownField(n) => write!(f, "unknown field `{n}`"),
            Error::DuplicateField(n) => write!(f, "field `{n}` declared twice"),
            Error::ParityMismatch(n) => write!(f, "parity mismatch for `{n}`"),
            Error::ConstantTerm => write!(f, "density has a nonzero constant term"),
            Error::NotExact(w) => write!(f, "density is not a total derivative; remainder {w}"),
            Error::CyclicRules => write!(f, "substitution rules are cyclic"),
            Error::FloorTooLow { requested, valid } => {
                write!(f, "floor {requested} is below the validity floor {valid}")
            }
            Error::UntrustedResidue => write!(f, "residue requested above the symbol floor"),
            Error::NotDifferential => write!(f, "a differential operator was required"),
            Error::DegreeViolation { degree, max } => {
                write!(f, "coefficient at degree {degree} exceeds allowed degree {max}")
            }
            Error::GhostNumber { found, expected } => {
                write!(f, "ghost number {found}, expected {expected}")
            }
            Error::Invalid(m) => write!(f, "{m}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
