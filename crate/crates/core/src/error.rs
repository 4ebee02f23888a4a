use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a jet needs at least one coefficient")]
    EmptyCoefficients,
    #[error("jet is not invertible: linear coefficient is zero")]
    NonInvertibleJet,
    #[error("stability constants need multiplier -1, got {0}")]
    WrongMultiplier(String),
    #[error("invalid normal form: {0}")]
    InvalidNormalForm(String),
    #[error("linear part is not an elliptic rotation: {0}")]
    NotEllipticRotationForm(String),
    #[error("eigenvalue {0} is not on the unit circle")]
    NotOnUnitCircle(String),
    #[error(
        "eigenvalue {0} is a root of unity of order <= 3; the first Birkhoff constant is undefined"
    )]
    ResonantEigenvalue(String),
    #[error("a periodic system needs at least one map")]
    EmptySystem,
    #[error("maps of a periodic system disagree on jet order ({0} vs {1})")]
    MixedOrders(usize, usize),
    #[error("cannot pad a system of length {current} to period {target}")]
    InvalidPaddingTarget { current: usize, target: usize },
    #[error("padding needs every map to be LAS or every map to be a repeller")]
    AmbiguousPaddingSign,
    #[error("padding needs jets of order >= 5, got {0}")]
    PaddingOrderTooLow(usize),
    #[error("a product lift needs at least one copy")]
    InvalidProductCopies,
    #[error("invalid simulation config: {0}")]
    InvalidSimConfig(String),
    #[error("root not bracketed on [{lo}, {hi}]")]
    RootNotBracketed { lo: f64, hi: f64 },
    #[error("unknown gallery entry '{0}'")]
    UnknownGalleryEntry(String),
    #[error("internal invariant violated: {0}")]
    InvariantBreach(String),
}

pub type Result<T> = std::result::Result<T, Error>;
