//! Robustness experiment for alternative τ and β₁ extensions on the double
//! Mach reflection.
//!
//! Each variant is the reference scheme `α = d (1 + 0.02 (τ/β)²)` with one τ
//! candidate and one β₁ extension. The oscillation metric is the total
//! variation of density along the row containing `y = 0.25`, from
//! `x = 0.05` to 0.1 short of the foremost shocked node (`ρ > 2.1`).

use super::problems::EulerProblem2D;
use super::{run_problem_2d, Field2D};
use crate::error::{Result, WenoError};
use crate::kernels::TauKind;
use crate::weights::{parse_beta1, parse_tau, Beta1Extension, SchemeSpec};

pub const PROBE_Y: f64 = 0.25;
pub const PROBE_X_START: f64 = 0.05;
pub const PROBE_FRONT_MARGIN: f64 = 0.1;
pub const SHOCKED_DENSITY: f64 = 2.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariantRequest {
    pub tau: TauKind,
    pub beta1: Beta1Extension,
}

impl VariantRequest {
    pub const fn new(tau: TauKind, beta1: Beta1Extension) -> Self {
        Self { tau, beta1 }
    }

    /// `tau` as accepted by scheme options (`tau4`, `d31sq`, ...), `beta1`
    /// as `star:<c>` or `alt:<c>`.
    pub fn parse(tau: &str, beta1: &str) -> Result<Self> {
        let tau = parse_tau(tau).ok_or_else(|| WenoError::BadSchemeOption(format!("tau={tau}")))?;
        let beta1 = match parse_beta1(beta1) {
            Some(b @ (Beta1Extension::Star(_) | Beta1Extension::Alt(_))) => b,
            _ => return Err(WenoError::BadSchemeOption(format!("beta1={beta1}"))),
        };
        Ok(Self { tau, beta1 })
    }

    /// The four τ candidates with `β₁*` (`c = 0.15`), and τ₄ with the
    /// one-sided alternative (`c* = 13/12`).
    pub fn standard_set() -> Vec<Self> {
        let star = Beta1Extension::Star(0.15);
        let mut v: Vec<Self> = [
            TauKind::Tau4,
            TauKind::First3Third1,
            TauKind::Second2Third1,
            TauKind::Third1Squared,
        ]
        .into_iter()
        .map(|t| Self::new(t, star))
        .collect();
        v.push(Self::new(TauKind::Tau4, Beta1Extension::Alt(13.0 / 12.0)));
        v
    }

    pub fn spec(&self) -> SchemeSpec {
        SchemeSpec::variant(self.tau, self.beta1)
    }

    pub fn label(&self) -> String {
        let tau = match self.tau {
            TauKind::Tau3 => "tau3".to_string(),
            TauKind::Tau4 => "tau4".to_string(),
            TauKind::TauCp1 => "cp1".to_string(),
            TauKind::First3Third1 => "d13d31".to_string(),
            TauKind::Second2Third1 => "d22d31".to_string(),
            TauKind::Third1Squared => "d31sq".to_string(),
            TauKind::ProductCentral(c) => format!("prodc:{c}"),
            TauKind::SecondSquared(c) => format!("d2sq:{c}"),
        };
        let beta = match self.beta1 {
            Beta1Extension::None => "none".to_string(),
            Beta1Extension::Star(c) => format!("star:{c}"),
            Beta1Extension::Alt(c) => format!("alt:{c}"),
        };
        format!("{tau}+{beta}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VariantOutcome {
    pub label: String,
    pub completed: bool,
    /// Time of the failed step.
    pub blew_up_at: Option<f64>,
    pub failure: Option<String>,
    /// Probe total variation; only for completed runs.
    pub tv: Option<f64>,
    pub front_x: Option<f64>,
    pub min_rho: f64,
    pub max_rho: f64,
}

impl VariantOutcome {
    pub const CSV_HEADER: &'static str = "variant,completed,blew_up_at,tv,front_x,min_rho,max_rho";

    pub fn csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map_or(String::new(), |v| format!("{v:.6e}"));
        format!(
            "{},{},{},{},{},{:.6e},{:.6e}",
            self.label,
            self.completed,
            opt(self.blew_up_at),
            opt(self.tv),
            opt(self.front_x),
            self.min_rho,
            self.max_rho
        )
    }
}

/// Total variation of density along the probe row and the detected front.
/// `None` when no node on the row is shocked far enough downstream to leave
/// a non-empty interval.
pub fn probe_total_variation(field: &Field2D) -> Option<(f64, f64)> {
    let g = field.grid;
    let j = (((PROBE_Y - g.y_lo) / g.dy()).floor() as usize).min(g.ny - 1);
    let row: Vec<(f64, f64)> = (0..g.nx).map(|i| (g.x(i), field.data[g.at(i, j)][0])).collect();
    let front = row.iter().filter(|(_, r)| *r > SHOCKED_DENSITY).map(|(x, _)| *x).fold(f64::NAN, f64::max);
    if !front.is_finite() {
        return None;
    }
    let end = front - PROBE_FRONT_MARGIN;
    let seg: Vec<f64> = row
        .iter()
        .filter(|(x, _)| *x >= PROBE_X_START && *x <= end)
        .map(|(_, r)| *r)
        .collect();
    if seg.len() < 2 {
        return None;
    }
    Some((seg.windows(2).map(|w| (w[1] - w[0]).abs()).sum(), front))
}

/// Runs one variant on `problem` (normally the double Mach reflection).
pub fn variant_experiment(request: &VariantRequest, problem: &EulerProblem2D) -> Result<VariantOutcome> {
    let run = run_problem_2d(problem, &request.spec(), |_, _, _| {})?;
    let probe = run.completed().then(|| probe_total_variation(&run.field)).flatten();
    Ok(VariantOutcome {
        label: request.label(),
        completed: run.completed(),
        blew_up_at: run.failure.as_ref().map(|_| run.t),
        failure: run.failure.as_ref().map(|e| e.to_string()),
        tv: probe.map(|p| p.0),
        front_x: probe.map(|p| p.1),
        min_rho: run.min_rho,
        max_rho: run.max_rho,
    })
}
