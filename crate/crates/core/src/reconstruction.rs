//! Interface values `f̂_{j+1/2} = Σ ω_k q_k` from candidate interpolants and
//! nonlinear weights.
//!
//! [`reconstruct_plus`] is upwind-biased toward x_j (positive wind).
//! [`reconstruct_minus`] reconstructs the negative-wind branch at the same
//! interface by mirroring the stencil about x_{j+1/2}.

use crate::error::{Result, WenoError};
use crate::kernels::{Points, StencilWindow};
use crate::weights::{compute_weights, weights_of, SchemeSpec, WeightSet, D3};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceValue {
    pub fhat: f64,
    pub diagnostics: Option<WeightSet>,
}

/// Second-order candidates `((3f_j - f_{j-1})/2, (f_j + f_{j+1})/2)`.
pub fn candidates_r2(window: &StencilWindow) -> Result<(f64, f64)> {
    window.require("candidates_r2", -1, 1)?;
    let [q0, q1, _] = cand2(window.points());
    Ok((q0, q1))
}

/// Third-order candidates of the fifth-order scheme.
pub fn candidates_r3(window: &StencilWindow) -> Result<[f64; 3]> {
    window.require("candidates_r3", -2, 2)?;
    Ok(cand3(window.points()))
}

/// Optimal third-order upwind value `(-f_{j-1} + 5f_j + 2f_{j+1}) / 6`,
/// evaluated exactly as the nonlinear path evaluates it when `ω = d`.
pub fn linear_r2(window: &StencilWindow) -> Result<f64> {
    window.require("linear_r2", -1, 1)?;
    Ok(combine(&[D3[0], D3[1], 0.0], &cand2(window.points()), 2))
}

/// `q1 + Σ_{k≠1} ω_k (q_k - q1)`: equal to `Σ ω_k q_k` when the weights sum
/// to one, and exact on constant data regardless of rounding in `ω`.
#[inline]
fn combine(w: &[f64; 3], q: &[f64; 3], count: usize) -> f64 {
    let mut v = q[1] + w[0] * (q[0] - q[1]);
    if count == 3 {
        v += w[2] * (q[2] - q[1]);
    }
    v
}

// Candidates are written as increments on f_j so that constants are exact.
#[inline]
fn cand2(f: &Points) -> [f64; 3] {
    [f[2] + 0.5 * (f[2] - f[1]), f[2] + 0.5 * (f[3] - f[2]), 0.0]
}

#[inline]
fn cand3(f: &Points) -> [f64; 3] {
    let (dm2, dm1, dp1, dp2) = (f[0] - f[2], f[1] - f[2], f[3] - f[2], f[4] - f[2]);
    [
        f[2] + (2.0 * dm2 - 7.0 * dm1) / 6.0,
        f[2] + (2.0 * dp1 - dm1) / 6.0,
        f[2] + (5.0 * dp1 - dp2) / 6.0,
    ]
}

/// Upwind interface value from `f_{j-2} .. f_{j+2}`; slots outside the
/// scheme's stencil are never read. Non-finite results propagate.
#[inline]
pub fn reconstruct_points(f: &[f64; 5], spec: &SchemeSpec) -> f64 {
    let (w, _) = weights_of(f, spec);
    let count = spec.candidates();
    let q = if count == 3 { cand3(f) } else { cand2(f) };
    combine(&w, &q, count)
}

/// Mirror of [`reconstruct_points`]: takes `f_{j-1} .. f_{j+3}` in physical
/// order and reconstructs the negative-wind value at x_{j+1/2}.
#[inline]
pub fn reconstruct_points_minus(f: &[f64; 5], spec: &SchemeSpec) -> f64 {
    reconstruct_points(&[f[4], f[3], f[2], f[1], f[0]], spec)
}

fn assemble(window: &StencilWindow, spec: &SchemeSpec, diagnostics: bool) -> Result<InterfaceValue> {
    let ws = compute_weights(window, spec)?;
    let count = spec.candidates();
    let q = if count == 3 {
        cand3(window.points())
    } else {
        cand2(window.points())
    };
    let mut w = [0.0; 3];
    w[..count].copy_from_slice(ws.omega());
    let fhat = combine(&w, &q, count);
    if !fhat.is_finite() {
        return Err(WenoError::NonFiniteOutput {
            scheme: spec.id.to_string(),
            what: "interface value",
        });
    }
    Ok(InterfaceValue {
        fhat,
        diagnostics: diagnostics.then_some(ws),
    })
}

/// Upwind reconstruction at x_{j+1/2}.
pub fn reconstruct_plus(window: &StencilWindow, spec: &SchemeSpec) -> Result<InterfaceValue> {
    assemble(window, spec, false)
}

/// As [`reconstruct_plus`], keeping the weights.
pub fn reconstruct_plus_diag(window: &StencilWindow, spec: &SchemeSpec) -> Result<InterfaceValue> {
    assemble(window, spec, true)
}

/// Negative-wind reconstruction at x_{j+1/2}.
///
/// `window` is the mirrored stencil in physical order: for a scheme reading
/// offsets `lo..=hi` of the upwind window, it holds `f_{j+1-hi} ..
/// f_{j+1-lo}` (e.g. `f_{j-1} .. f_{j+3}` for five-point schemes, `f_j ..
/// f_{j+2}` for three-point ones).
pub fn reconstruct_minus(window: &StencilWindow, spec: &SchemeSpec) -> Result<InterfaceValue> {
    assemble(&window.reversed(), spec, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::SchemeId;

    fn w(v: &[f64]) -> StencilWindow {
        StencilWindow::new(v).unwrap()
    }

    #[test]
    fn candidate_examples() {
        assert_eq!(candidates_r2(&w(&[2.5, 2.5, 2.5])).unwrap(), (2.5, 2.5));
        assert_eq!(candidates_r2(&w(&[-1.0, 0.0, 1.0])).unwrap(), (0.5, 0.5));
        assert!((linear_r2(&w(&[1.0, 0.0, 1.0])).unwrap() - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn constants_reproduced() {
        for id in SchemeId::ALL {
            let spec = SchemeSpec::new(id);
            let win = w(&[1.75; 5]);
            assert_eq!(reconstruct_plus(&win, &spec).unwrap().fhat, 1.75, "{id}");
            assert_eq!(reconstruct_minus(&win, &spec).unwrap().fhat, 1.75, "{id}");
        }
    }

    #[test]
    fn linear_data_exact_at_interface() {
        // f_j = j with j = 0; interface at 1/2.
        for id in SchemeId::ALL {
            let spec = SchemeSpec::new(id);
            let plus = reconstruct_plus(&w(&[-2.0, -1.0, 0.0, 1.0, 2.0]), &spec).unwrap();
            assert!((plus.fhat - 0.5).abs() < 1e-14, "{id}");
            let minus = reconstruct_minus(&w(&[-1.0, 0.0, 1.0, 2.0, 3.0]), &spec).unwrap();
            assert!((minus.fhat - 0.5).abs() < 1e-14, "{id}");
        }
    }

    #[test]
    fn step_stays_between_candidates() {
        let win = w(&[0.0, 0.0, 0.0, 1.0, 1.0]);
        let (q0, q1) = candidates_r2(&win).unwrap();
        for id in SchemeId::ALL.into_iter().filter(|id| id.is_third_order()) {
            let v = reconstruct_plus(&win, &SchemeSpec::new(id)).unwrap().fhat;
            assert!(v >= q0.min(q1) && v <= q0.max(q1), "{id}: {v}");
        }
    }

    #[test]
    fn hot_path_matches_checked_path() {
        let pts = [0.3, -0.1, 0.8, 1.9, -2.2];
        for id in SchemeId::ALL {
            let spec = SchemeSpec::new(id);
            let checked = reconstruct_plus(&w(&pts), &spec).unwrap().fhat;
            assert_eq!(reconstruct_points(&pts, &spec), checked, "{id}");
            let checked = reconstruct_minus(&w(&pts), &spec).unwrap().fhat;
            assert_eq!(reconstruct_points_minus(&pts, &spec), checked, "{id}");
        }
    }

    #[test]
    fn diagnostics_on_demand() {
        let spec = SchemeSpec::new(SchemeId::Es2);
        let win = w(&[0.0, 0.0, 0.0, 1.0, 1.0]);
        assert!(reconstruct_plus(&win, &spec).unwrap().diagnostics.is_none());
        let d = reconstruct_plus_diag(&win, &spec).unwrap().diagnostics.unwrap();
        assert_eq!(d.sigma, Some(0.0));
    }
}
