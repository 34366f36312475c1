use serde::{Deserialize, Serialize};

use super::nodes::Repeat;
use super::unitary::{ParamUnitaryExt, Unitary};
use crate::error::{Result, SynthError};
use crate::tensor_core::{spectral_norm, Operator};

/// Outcome of a slice-count search.
#[derive(Debug, Clone)]
pub struct Timesliced {
    pub slices: u64,
    pub theoretical_slices: f64,
    pub error: f64,
    pub unitary: Unitary,
}

/// Inputs of a slice-count search beyond the formula and its target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimesliceRequest {
    pub t: f64,
    pub epsilon: f64,
    /// Single-step error order: error `O((Ct)^p)` with `p > 1`.
    pub order: f64,
    /// Norm scale `C` entering the theoretical slice count.
    pub scale: f64,
    pub slice_cap: u64,
}

/// `Θ((Ct)^{1+1/(p−1)} / ε^{1/(p−1)})` with unit prefactor.
pub fn theoretical_slices(req: &TimesliceRequest) -> f64 {
    let inv = 1.0 / (req.order - 1.0);
    (req.scale * req.t).powf(1.0 + inv) / req.epsilon.powf(inv)
}

/// Error of `U(t/r)^r` against `target`.
pub fn sliced_error(step: &Unitary, target: &Operator, t: f64, slices: u64) -> f64 {
    let approx = step.eval(t / slices as f64).powi(slices);
    spectral_norm(&(&approx - target))
}

/// Smallest `r` with `‖U(t/r)^r − target‖ ≤ ε`, found by doubling and then
/// bisecting the last doubling interval.
pub fn timeslice(step: &Unitary, target: &Operator, req: &TimesliceRequest) -> Result<Timesliced> {
    if !(req.order > 1.0) {
        return Err(SynthError::invalid(format!("time slicing needs order p > 1, got {}", req.order)));
    }
    if !(req.epsilon > 0.0) {
        return Err(SynthError::invalid("target error must be positive"));
    }
    let theoretical = theoretical_slices(req);
    let error_at = |r: u64| sliced_error(step, target, req.t, r);
    let mut hi = 1u64;
    let mut hi_err = error_at(hi);
    while hi_err > req.epsilon {
        hi = hi.checked_mul(2).filter(|&r| r <= req.slice_cap).ok_or(SynthError::SliceCap {
            needed: hi.saturating_mul(2),
            cap: req.slice_cap,
        })?;
        hi_err = error_at(hi);
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let err = error_at(mid);
        if err <= req.epsilon {
            hi = mid;
            hi_err = err;
        } else {
            lo = mid;
        }
    }
    Ok(Timesliced { slices: hi, theoretical_slices: theoretical, error: hi_err, unitary: Repeat::new(step.clone(), hi)? })
}
