use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field degree {0} is outside 1..=24")]
    DegreeOutOfRange(u32),
    #[error("modulus {modulus:#x} does not have degree {n}")]
    WrongModulusDegree { n: u32, modulus: u64 },
    #[error("modulus {0:#x} is reducible over F_2")]
    ReducibleModulus(u64),
    #[error("value {value:#x} is not a valid element of a space of size 2^{n}")]
    ElementOutOfRange { n: u32, value: u64 },
    #[error("sequence length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("table has {found} entries, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: expected n = {expected}, found n = {found}")]
    DimensionMismatch { expected: u32, found: u32 },
    #[error("shift direction z must be nonzero")]
    ZeroDirection,
    #[error("component index c must be nonzero")]
    ZeroComponent,
    #[error("operation requires a {expected} input")]
    SettingMismatch { expected: &'static str },
    #[error("exponent index {index} is outside 0..{n}")]
    ExponentOutOfRange { n: u32, index: u32 },
    #[error("quadratic term ({i},{j}) must satisfy i < j")]
    BadQuadraticTerm { i: u32, j: u32 },
    #[error(
        "spectrum values are not an exact image of a twisted transform (not divisible by 2^{0})"
    )]
    InexactInverse(u32),
    #[error("characters are only provided for the twisted groups star_mv and star_uv")]
    CharactersUnsupported,
    #[error("the given set is not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("character verification is only defined relative to the forbidden subgroup {{0}} x F")]
    UnsupportedSubgroup,
    #[error("search job out of bounds: {0}")]
    SearchBounds(String),
    #[error("planarity routes disagree on function {table:?} (perm = {perm}, components = {components})")]
    RouteDisagreement {
        table: Vec<u32>,
        perm: bool,
        components: bool,
    },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
