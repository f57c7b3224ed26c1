use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not a square-free radicand")]
    NotSquareFree(u64),

    #[error("incompatible radicals: sqrt({left}) and sqrt({right})")]
    IncompatibleRadicals { left: u64, right: u64 },

    #[error("matrix mixes entries from Q(sqrt({0})) and Q(sqrt({1}))")]
    MixedRadicals(u64, u64),

    #[error("linear part needs alpha*beta != 0")]
    ZeroFrequency,

    #[error("degenerate resonance |alpha| = |beta|, block reduction invalid")]
    DegenerateResonance,

    #[error("dihedral order n = {0} is not supported (use 2, 3, 4 or 6)")]
    UnsupportedOrder(u32),

    #[error("group closure exceeds the cap of {cap} elements")]
    ClosureCap { cap: usize },

    #[error("generator is not invertible")]
    SingularGenerator,

    #[error("not compatible with linear part: element neither commutes nor anticommutes with A")]
    NotCompatible,

    #[error("sign assignment is not multiplicative")]
    NotMultiplicative,

    #[error("map is not an involution up to degree {degree}")]
    NotInvolution { degree: u32 },

    #[error("linear part is singular")]
    SingularLinearPart,

    #[error("unknown parity family `{0}`")]
    UnknownFamily(String),

    #[error("linear part of the field is not A(alpha, beta)")]
    UnexpectedLinearPart,

    #[error("resonance p:q = {p}:{q} rejected: {reason}")]
    InvalidResonance { p: u32, q: u32, reason: String },

    #[error("group index {0} out of range 1..=6")]
    GroupIndex(u32),

    #[error("mixed resonant terms present; no real Delta_1/Delta_2 form emission")]
    MixedResonantTerms,

    #[error("homological splitting failed at degree {0}")]
    SplittingFailure(u32),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("json error: {0}")]
    Json(String),

    #[error("unknown builtin involution `{0}`")]
    UnknownBuiltin(String),
}
