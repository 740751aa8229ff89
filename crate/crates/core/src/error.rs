use core::fmt;

use crate::monomial::Exponent;
use crate::sequence::Violation;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two objects live in polynomial rings with different variable counts.
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    /// `a / b` was requested but `b` does not divide `a`.
    NotDivisible {
        dividend: Exponent,
        divisor: Exponent,
    },
    VariableOutOfRange {
        index: usize,
        nvars: usize,
    },
    /// A term lies outside the box `[0, e]` used for reflection.
    OutsideReflectionBox {
        exponent: Exponent,
        corner: Exponent,
    },
    /// A matrix label occurs twice on the same axis, first repeated at `index`.
    DuplicateLabel {
        column: bool,
        index: usize,
    },
    /// A polynomial has a term outside the monomial set it must live on.
    OutsideSupport(Exponent),
    InvalidSequence(Violation),
    EmptyFamily,
    /// Every value of every member is zero; the annihilator is the unit ideal.
    ZeroFamily,
    /// Some variable has no pure power among the defining monomials.
    NotArtinian {
        variable: usize,
    },
    /// The orthogonal of the zero ideal is infinite without a degree bound.
    UnboundedDual,
    /// A basis handed to the integration step is not closed under derivation.
    NotDerivationClosed {
        degree: u32,
    },
    NotPrime(u64),
    UnknownEngine,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected} variables, found {found}")
            }
            Error::NotDivisible { dividend, divisor } => {
                write!(f, "{divisor} does not divide {dividend}")
            }
            Error::VariableOutOfRange { index, nvars } => {
                write!(f, "variable index {index} out of range for {nvars} variables")
            }
            Error::OutsideReflectionBox { exponent, corner } => {
                write!(f, "exponent {exponent} is not below reflection corner {corner}")
            }
            Error::DuplicateLabel { column, index } => {
                let axis = if *column { "column" } else { "row" };
                write!(f, "duplicate {axis} label at position {index}")
            }
            Error::OutsideSupport(e) => write!(f, "term {e} lies outside the support"),
            Error::InvalidSequence(v) => write!(f, "invalid sequence: {v}"),
            Error::EmptyFamily => f.write_str("sequence family has no members"),
            Error::ZeroFamily => f.write_str("all sequence values are zero"),
            Error::NotArtinian { variable } => {
                write!(f, "variable {variable} is unbounded: staircase is infinite")
            }
            Error::UnboundedDual => f.write_str("orthogonal of the zero ideal needs an explicit degree bound"),
            Error::NotDerivationClosed { degree } => {
                write!(f, "dual basis at degree {degree} is not closed under derivation")
            }
            Error::NotPrime(p) => write!(f, "{p} is not a prime"),
            Error::UnknownEngine => f.write_str("unknown engine (expected hankel, duality or macaulay)"),
        }
    }
}

impl core::error::Error for Error {}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::InvalidSequence(v)
    }
}
