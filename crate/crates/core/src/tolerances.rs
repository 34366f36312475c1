//! Numerical tolerances and resource caps shared by the library and its tests.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Bound on `‖U†U − I‖` for a matrix to count as unitary.
    pub unitary: f64,
    /// Bound on `‖A − A†‖` for a matrix to count as Hermitian.
    pub hermitian: f64,
    /// Largest dimension accepted by dense kernels.
    pub dim_cap: usize,
    /// Dimensions up to this use a full SVD for the spectral norm.
    pub svd_max_dim: usize,
    /// Relative convergence target of the power iteration fallback.
    pub power_iteration_rel: f64,
    /// Errors below this are treated as round-off and dropped from fits.
    pub noise_floor: f64,
    /// Relative tolerance on commutation preconditions (scaled by `‖A‖‖B‖`).
    pub commutation_rel: f64,
    /// Largest slice count the time-slicing search may try.
    pub slice_cap: u64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        unitary: 1e-10,
        hermitian: 1e-12,
        dim_cap: 4096,
        svd_max_dim: 512,
        power_iteration_rel: 1e-13,
        noise_floor: 1e-12,
        commutation_rel: 1e-8,
        slice_cap: 1 << 20,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
