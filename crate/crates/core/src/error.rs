use crate::algebra::FieldCtx;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the toolkit can report. `kind()` gives the stable tag used by
/// the CLI (`ERROR <kind>: <message>`) and the C interface.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields ({0} and {1})")]
    FieldMismatch(FieldCtx, FieldCtx),
    #[error("argument must be nonzero")]
    ZeroInput,
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("operation is undefined in characteristic 2")]
    CharacteristicTwo,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("literal has no value in this field: {0}")]
    FieldLiteral(String),
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("element is affine and has no elementary letters")]
    NoElementaryPart,
    #[error("normal form is not cyclically reduced")]
    NotCyclicallyReduced,
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("matrix is singular")]
    Singular,
    #[error("map is not an involution")]
    NotInvolution,
    #[error("map is not conjugate into a single factor: {0}")]
    NotInFactor(String),
    #[error("invalid letters: {0}")]
    InvalidLetters(String),
    #[error("the field contains a primitive fourth root of unity")]
    FourthRootPresent,
    #[error("polynomial is not odd: {0}")]
    EvenPolynomial(String),
    #[error("gamma must be nonzero")]
    ZeroGamma,
    #[error("order exceeds the cap {0}")]
    CapExceeded(u64),
    #[error("theorem violated: {0}")]
    TheoremViolation(String),
    #[error("point is not fixed by the map")]
    NotFixedPoint,
    #[error("map is not a reversor of the target")]
    ReversorCheckFailed,
    #[error("map is not a symmetry of the target")]
    SymmetryCheckFailed,
    #[error("operation requires a prime field")]
    NotFiniteField,
    #[error("field too large for exhaustive scan: p = {p} exceeds the cap {cap}")]
    FieldTooLarge { p: u64, cap: u64 },
    #[error("inconsistent certificates: {0}")]
    InconsistentCertificates(String),
    #[error("operation requires the rationals")]
    RationalsRequired,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::FieldMismatch(..) => "FieldMismatch",
            Error::ZeroInput => "ZeroInput",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::CharacteristicTwo => "CharacteristicTwo",
            Error::InvalidField(_) => "InvalidField",
            Error::Parse { .. } => "ParseError",
            Error::FieldLiteral(_) => "FieldLiteralError",
            Error::NotAnAutomorphism(_) => "NotAnAutomorphism",
            Error::NoElementaryPart => "NoElementaryPart",
            Error::NotCyclicallyReduced => "NotCyclicallyReduced",
            Error::Undecided(_) => "Undecided",
            Error::Singular => "Singular",
            Error::NotInvolution => "NotInvolution",
            Error::NotInFactor(_) => "NotInFactor",
            Error::InvalidLetters(_) => "InvalidLetters",
            Error::FourthRootPresent => "FourthRootPresent",
            Error::EvenPolynomial(_) => "EvenPolynomial",
            Error::ZeroGamma => "ZeroGamma",
            Error::CapExceeded(_) => "CapExceeded",
            Error::TheoremViolation(_) => "TheoremViolation",
            Error::NotFixedPoint => "NotFixedPoint",
            Error::ReversorCheckFailed => "ReversorCheckFailed",
            Error::SymmetryCheckFailed => "SymmetryCheckFailed",
            Error::NotFiniteField => "NotFiniteField",
            Error::FieldTooLarge { .. } => "FieldTooLarge",
            Error::InconsistentCertificates(_) => "InconsistentCertificates",
            Error::RationalsRequired => "RationalsRequired",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}

pub(crate) fn same_field(a: FieldCtx, b: FieldCtx) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::FieldMismatch(a, b))
    }
}
