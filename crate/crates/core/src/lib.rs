//! Continuous-time quantum spatial search on chimera graphs.
//!
//! The crate covers the whole experiment pipeline: chimera construction,
//! symmetric eigendecomposition, success-probability evolution, bounded
//! multistart optimization of the penalized runtime cost, family sweeps
//! with complexity-exponent regression, and the spectral fast-search
//! condition metrics.
//!
//! The numeric kernels are generic over [`Scalar`] (any `num-traits`
//! float); the `*64` aliases below are the concrete types the CLI and most
//! tests use.

pub mod analysis;
pub mod error;
pub mod evolution;
pub mod graph;
pub mod matrix;
pub mod optimizer;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// f64 specializations of the generic numeric types.
pub type Matrix64 = matrix::Matrix<f64>;
pub type EigenSystem64 = spectral::EigenSystem<f64>;
pub type CentralizedHamiltonian64 = spectral::CentralizedHamiltonian<f64>;
pub type ConditionMetrics64 = spectral::ConditionMetrics<f64>;
pub type SearchSetup64 = evolution::SearchSetup<f64>;
pub type CostParams64 = evolution::CostParams<f64>;
pub type NelderMeadConfig64 = optimizer::NelderMeadConfig<f64>;
pub type OptimumRecord64 = optimizer::OptimumRecord<f64>;
pub type QssOptions64 = optimizer::QssOptions<f64>;
pub type RegressionFit64 = analysis::RegressionFit<f64>;
pub type SweepOptions64 = analysis::SweepOptions<f64>;

/// Caps the rayon worker pool; call once before any parallel work. Later
/// calls (or a pool already started by parallel work) are ignored.
pub fn configure_workers(workers: usize) {
    if workers > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }
}
