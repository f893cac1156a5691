use alloc::string::String;
use core::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Division or inversion of a zero element.
    DivisionByZero,
    /// Operands belong to incompatible fields.
    FieldMismatch,
    /// Characteristic-2 fields are excluded throughout.
    CharacteristicTwo,
    /// The modulus of a prime field is not an odd prime.
    NotPrime(u64),
    /// Attempted to adjoin a square root of an element that is already a square.
    AlreadySquare,
    /// The zero form was passed where a nonzero form is required.
    ZeroForm,
    /// A basis-change matrix is singular.
    SingularMatrix,
    /// A degenerate form was passed where a non-degenerate one is required.
    DegenerateForm,
    /// The two point pairs give proportional forms; they do not span a pencil.
    DependentPairs,
    /// The orthogonal complement is degenerate: the pairs share a point.
    DegenerateComplement,
    /// Matrix or vector dimensions do not match.
    DimensionMismatch,
    /// Both pencil coefficients are zero.
    ZeroCoefficients,
    /// The two forms of a pencil are proportional.
    ProportionalForms,
    /// The two vectors spanning a line are linearly dependent.
    DependentVectors,
    /// The pencil does not induce an involution on the line.
    NotRegular(String),
    /// A conjugacy check failed; indicates a bug, never expected on valid input.
    ContractViolation(String),
    /// Three of the four base points are collinear.
    DegeneratePosition,
    /// The butterfly hypotheses are not satisfied by the configuration.
    HypothesisViolation(String),
    /// Cross-ratio numerator and denominator both vanish.
    DegenerateConfiguration,
    /// The marked point does not lie on the given affine line.
    PointNotOnLine,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::FieldMismatch => write!(f, "operands belong to different fields"),
            Error::CharacteristicTwo => write!(f, "characteristic 2 excluded"),
            Error::NotPrime(p) => write!(f, "{p} is not an odd prime"),
            Error::AlreadySquare => write!(f, "element is already a square in the field"),
            Error::ZeroForm => write!(f, "zero form not allowed here"),
            Error::SingularMatrix => write!(f, "matrix is singular"),
            Error::DegenerateForm => write!(f, "form is degenerate"),
            Error::DependentPairs => write!(f, "point pairs give proportional forms"),
            Error::DegenerateComplement => {
                write!(f, "pairs share a point; no involution exists")
            }
            Error::DimensionMismatch => write!(f, "dimension mismatch"),
            Error::ZeroCoefficients => write!(f, "pencil coefficients are both zero"),
            Error::ProportionalForms => write!(f, "pencil forms are proportional"),
            Error::DependentVectors => write!(f, "line vectors dependent"),
            Error::NotRegular(why) => write!(f, "pencil not regular on the line: {why}"),
            Error::ContractViolation(why) => write!(f, "contract violation: {why}"),
            Error::DegeneratePosition => write!(f, "three of the four points are collinear"),
            Error::HypothesisViolation(why) => write!(f, "hypothesis violated: {why}"),
            Error::DegenerateConfiguration => write!(f, "degenerate cross-ratio configuration"),
            Error::PointNotOnLine => write!(f, "marked point does not lie on the line"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
