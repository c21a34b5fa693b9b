//! Periodic ARFIMA models with seasonally varying memory.
//!
//! Two orderings of a periodic AR filter and a season-specific fractional
//! filter `(1 - L)^{D_s}` are supported: fractional integration of a PAR
//! process (model B, FIVAR form) and a PAR filter applied to fractionally
//! integrated noise (model C, VARFI form). Model A has no AR part.

pub mod acvf;
pub mod appendix_ma;
pub mod error;
pub mod fracdiff;
pub mod model;
pub mod montecarlo;
pub mod simulate;

pub use acvf::{
    asymptotic_pacvf_fivar, asymptotic_pacvf_varfi, decay_slope, decompose_lag, dominant_seasons,
    empirical_pacvf, empirical_pacvf_from, exact_block_autocovariances, exact_pacvf,
    fivar_amplitudes, varfi_amplitudes, Centering, ExactOptions, LagDecomposition, Pacvf,
    PacvfMeta, PacvfMethod, TailCorrection,
};
pub use appendix_ma::{ma_composition_sum, ma_oracle, ma_recursion, MaTable};
pub use error::{Error, Result};
pub use fracdiff::{pi_coeffs, psi_coeffs, FracCoeffs, FracKind};
pub use model::{
    build_companion, companion_order, max_root_modulus, pi_sequence, pi_total, stationarity_roots,
    CompanionForm, ModelKind, PeriodicModelSpec, PiSequence,
};
pub use montecarlo::{replicate_pacvf, summarize, PacvfSummary};
pub use simulate::{simulate, SeriesSample, SimConfig};
