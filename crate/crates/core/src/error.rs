use alloc::string::String;

/// Every failure mode of the library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    InvalidDimension { expected: usize, found: usize },
    #[error("invalid group specification: {0}")]
    InvalidGroup(String),
    #[error("BCH series truncation estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    SeriesOutOfDomain { estimate: f64, tolerance: f64 },
    #[error("BCH product lies on the principal-branch boundary")]
    BoundaryConjugacy,
    #[error("element is central or lies on the principal-branch boundary")]
    DegenerateElement,
    #[error("group element lies on the principal-branch boundary")]
    BoundaryElement,
    #[error("Haar Jacobian vanishes at the requested point")]
    JacobianZero,
    #[error("momentum grids do not match")]
    GridMismatch,
    #[error("branch window too small: tail {tail:e} exceeds tolerance {tolerance:e}")]
    WindowTooSmall { tail: f64, tolerance: f64 },
    #[error("coefficient undefined at zero momentum")]
    MomentumAtOrigin,
    #[error("quadrature under-resolved: error estimate {estimate:e} exceeds {tolerance:e}")]
    QuadratureUnderResolved { estimate: f64, tolerance: f64 },
    #[error("function is not flagged as a class function")]
    NotClassFunction,
    #[error("momentum cutoff too small: tail {tail:e}")]
    CutoffTooSmall { tail: f64 },
    #[error("operation not supported for this momentum representation")]
    RepresentationUnsupported,
    #[error("spectral cutoff too small: tail {tail:e}")]
    SpectralCutoffTooSmall { tail: f64 },
    #[error("evaluation point lies on the singular set sin|X| = 0")]
    OnSingularSet,
    #[error("plane cutoff too small: rim estimate {rim:e}")]
    PlaneCutoffTooSmall { rim: f64 },
    #[error("finite-difference derivative unstable: Richardson disagreement {disagreement:e}")]
    DerivativeUnstable { disagreement: f64 },
    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),
    #[error("operands use different schemes or groups")]
    OperandMismatch,
}

pub type Result<T> = core::result::Result<T, Error>;
