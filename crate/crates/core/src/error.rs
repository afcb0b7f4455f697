use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid lattice (L={len}, a={a}, b={b}): {reason}")]
    InvalidLattice {
        len: usize,
        a: usize,
        b: usize,
        reason: String,
    },

    #[error("signal length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("{what} index {index:?} out of range {bound:?}")]
    IndexOutOfRange {
        what: &'static str,
        index: (usize, usize),
        bound: (usize, usize),
    },

    #[error("non-finite sample at index {index}")]
    NonFinite { index: usize },

    #[error("fold period {period} does not divide signal length {len}")]
    InvalidFoldPeriod { period: usize, len: usize },

    /// The lower frame bound is at or below the relative eigenvalue floor.
    #[error("not a frame: lower bound {lower:e}, upper bound {upper:e}")]
    NotAFrame { lower: f64, upper: f64 },

    #[error("window is not normalized tight: spectral modulus deviates by {deviation:e}")]
    NotTight { deviation: f64 },

    #[error("lattice (L={len}, a={a}, b={b}) is not critical (ab != L)")]
    NotCritical { len: usize, a: usize, b: usize },

    #[error("density ab/L = {ab}/{len} exceeds 1: no frame exists on this lattice")]
    DensityTooHigh { ab: usize, len: usize },

    #[error("no frame drawn after {attempts} random attempts")]
    RetriesExhausted { attempts: usize },

    #[error("expected {expected} coefficients, found {found}")]
    CoefficientLength { expected: usize, found: usize },

    #[error("phase array must be {rows} x {cols}")]
    PhaseShape { rows: usize, cols: usize },
}

impl Error {
    /// Stable machine-readable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidLattice { .. } => "invalid_lattice",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::NonFinite { .. } => "non_finite",
            Error::InvalidFoldPeriod { .. } => "invalid_fold_period",
            Error::NotAFrame { .. } => "not_a_frame",
            Error::NotTight { .. } => "not_tight",
            Error::NotCritical { .. } => "not_critical",
            Error::DensityTooHigh { .. } => "density_too_high",
            Error::RetriesExhausted { .. } => "retries_exhausted",
            Error::CoefficientLength { .. } => "coefficient_length",
            Error::PhaseShape { .. } => "phase_shape",
        }
    }
}
