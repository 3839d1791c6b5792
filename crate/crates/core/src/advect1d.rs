//! Linear advection `u_t + u_x = 0` on a periodic grid, RK4 in time, and the
//! grid-refinement harness used to measure observed orders.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Result, WenoError};
use crate::reconstruction::reconstruct_points;
use crate::timestep::{rk4, Workspace};
use crate::weights::SchemeSpec;

/// Offset that places first-order critical points of [`ic_critical_pair`]
/// at `x = 0` and `x = -2 + 2 X_C`.
#[allow(clippy::excessive_precision)]
pub const X_C: f64 = 0.596_683_186_911_208_963_721_2;

/// `u0(x) = sin(π y - sin(π y) / π)` with `y = x - X_C`; 2-periodic.
pub fn ic_critical_pair(x: f64) -> f64 {
    critical_pair_phase(x).sin()
}

/// Argument of the outer sine in [`ic_critical_pair`].
pub fn critical_pair_phase(x: f64) -> f64 {
    let y = PI * (x - X_C);
    y - y.sin() / PI
}

#[derive(Clone)]
pub enum InitialCondition {
    CriticalPair,
    /// `sin(π x)`
    PlainSine,
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl InitialCondition {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            InitialCondition::CriticalPair => ic_critical_pair(x),
            InitialCondition::PlainSine => (PI * x).sin(),
            InitialCondition::Custom(f) => f(x),
        }
    }
}

impl std::fmt::Debug for InitialCondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InitialCondition::CriticalPair => f.write_str("CriticalPair"),
            InitialCondition::PlainSine => f.write_str("PlainSine"),
            InitialCondition::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct AdvectionProblem {
    pub x_lo: f64,
    pub x_hi: f64,
    pub n: usize,
    pub initial: InitialCondition,
    pub cfl: f64,
    pub t_final: f64,
}

impl AdvectionProblem {
    /// Critical-point study: `[-1, 1]`, CFL 0.25, `t = 2`.
    pub fn critical_pair(n: usize) -> Self {
        Self {
            x_lo: -1.0,
            x_hi: 1.0,
            n,
            initial: InitialCondition::CriticalPair,
            cfl: 0.25,
            t_final: 2.0,
        }
    }

    pub fn plain_sine(n: usize) -> Self {
        Self {
            initial: InitialCondition::PlainSine,
            ..Self::critical_pair(n)
        }
    }

    pub fn with_n(&self, n: usize) -> Self {
        Self { n, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 10 {
            return Err(WenoError::InvalidProblem(format!("N = {} < 10", self.n)));
        }
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(WenoError::InvalidProblem(format!("CFL = {} not in (0, 1]", self.cfl)));
        }
        if !(self.x_hi > self.x_lo) {
            return Err(WenoError::InvalidProblem("empty domain".into()));
        }
        if !(self.t_final >= 0.0) {
            return Err(WenoError::InvalidProblem("negative final time".into()));
        }
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        (self.x_hi - self.x_lo) / self.n as f64
    }

    /// `dt = CFL dx`, adjusted down so that an integer number of steps
    /// reaches `t_final` exactly.
    pub fn time_steps(&self) -> (usize, f64) {
        let dt = self.cfl * self.dx();
        let steps = (self.t_final / dt - 1e-9).ceil().max(0.0) as usize;
        if steps == 0 {
            return (0, dt);
        }
        (steps, self.t_final / steps as f64)
    }

    pub fn nodes(&self) -> Vec<f64> {
        let dx = self.dx();
        (0..self.n).map(|i| self.x_lo + i as f64 * dx).collect()
    }

    pub fn initial_state(&self) -> Vec<f64> {
        self.nodes().into_iter().map(|x| self.initial.eval(x)).collect()
    }

    /// `u0(x - t)` wrapped into the domain.
    pub fn exact(&self, t: f64) -> Vec<f64> {
        let len = self.x_hi - self.x_lo;
        self.nodes()
            .into_iter()
            .map(|x| {
                let shifted = (x - t - self.x_lo).rem_euclid(len) + self.x_lo;
                self.initial.eval(shifted)
            })
            .collect()
    }
}

/// `-(f̂_{j+1/2} - f̂_{j-1/2}) / dx` for unit wind speed, periodic.
pub fn residual(u: &[f64], dx: f64, spec: &SchemeSpec, out: &mut [f64]) -> Result<()> {
    let n = u.len();
    if n < 5 {
        return Err(WenoError::InvalidProblem(format!("periodic grid of {n} < 5 nodes")));
    }
    let at = |i: isize| u[i.rem_euclid(n as isize) as usize];
    // flux[i] lives at x_{i+1/2}
    let flux: Vec<f64> = (0..n as isize)
        .map(|i| reconstruct_points(&[at(i - 2), at(i - 1), at(i), at(i + 1), at(i + 2)], spec))
        .collect();
    for i in 0..n {
        let left = flux[(i + n - 1) % n];
        out[i] = -(flux[i] - left) / dx;
    }
    Ok(())
}

/// One RK4 step of the periodic advection problem.
pub fn step_rk4(
    u: &mut [f64],
    dt: f64,
    dx: f64,
    spec: &SchemeSpec,
    ws: &mut Workspace<f64>,
) -> Result<()> {
    rk4(u, 0.0, dt, ws, |v, _, out| residual(v, dx, spec, out))
}

/// Advances the problem to `t_final`; returns the final grid values.
pub fn run(problem: &AdvectionProblem, spec: &SchemeSpec) -> Result<Vec<f64>> {
    problem.validate()?;
    let (steps, dt) = problem.time_steps();
    let dx = problem.dx();
    let mut u = problem.initial_state();
    let mut ws = Workspace::new();
    for step in 0..steps {
        step_rk4(&mut u, dt, dx, spec, &mut ws)?;
        if let Some(i) = u.iter().position(|v| !v.is_finite()) {
            return Err(WenoError::Inadmissible {
                time: (step + 1) as f64 * dt,
                location: format!("step {} node {i}", step + 1),
                reason: "non-finite value".into(),
            });
        }
    }
    Ok(u)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorNorms {
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
}

impl ErrorNorms {
    /// Discrete norms normalized by the node count.
    pub fn between(a: &[f64], b: &[f64]) -> Self {
        let n = a.len() as f64;
        let (mut l1, mut l2, mut linf) = (0.0_f64, 0.0_f64, 0.0_f64);
        for (x, y) in a.iter().zip(b) {
            let e = (x - y).abs();
            l1 += e;
            l2 += e * e;
            linf = linf.max(e);
        }
        Self {
            l1: l1 / n,
            l2: (l2 / n).sqrt(),
            linf,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub dt: f64,
    /// `None` when the run diverged.
    pub errors: Option<ErrorNorms>,
    /// Observed orders against the previous row: `[L1, L2, L∞]`.
    pub orders: Option<[f64; 3]>,
    pub failure: Option<String>,
}

/// Runs `problem` on every grid in `grids` (strictly doubling) and measures
/// errors against the exact translate. Grids run in parallel; rows come back
/// in grid order.
pub fn convergence_study(
    problem: &AdvectionProblem,
    spec: &SchemeSpec,
    grids: &[usize],
) -> Result<Vec<ConvergenceRow>> {
    if grids.is_empty() {
        return Err(WenoError::InvalidProblem("no grids requested".into()));
    }
    if grids.windows(2).any(|p| p[1] != 2 * p[0]) {
        return Err(WenoError::InvalidProblem(format!("grids {grids:?} are not strictly doubling")));
    }
    for &n in grids {
        problem.with_n(n).validate()?;
    }
    let runs: Vec<(usize, f64, std::result::Result<ErrorNorms, String>)> = grids
        .par_iter()
        .map(|&n| {
            let p = problem.with_n(n);
            let (_, dt) = p.time_steps();
            let outcome = run(&p, spec)
                .map(|u| ErrorNorms::between(&u, &p.exact(p.t_final)))
                .map_err(|e| e.to_string());
            (n, dt, outcome)
        })
        .collect();

    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(runs.len());
    for (n, dt, outcome) in runs {
        let (errors, failure) = match outcome {
            Ok(e) => (Some(e), None),
            Err(msg) => (None, Some(msg)),
        };
        let orders = match (rows.last().and_then(|r| r.errors), errors) {
            (Some(prev), Some(cur)) => Some([
                (prev.l1 / cur.l1).log2(),
                (prev.l2 / cur.l2).log2(),
                (prev.linf / cur.linf).log2(),
            ]),
            _ => None,
        };
        rows.push(ConvergenceRow {
            n,
            dt,
            errors,
            orders,
            failure,
        });
    }
    Ok(rows)
}

pub const CSV_HEADER: &str = "N,dt,L1,L2,Linf,order_L1,order_L2,order_Linf";

/// Rows as CSV: errors with 5 significant digits, orders with 3 decimals,
/// blank orders on the first row and after a failure.
pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = write!(out, "{},{}", r.n, r.dt);
        match r.errors {
            Some(e) => {
                let _ = write!(out, ",{:.4e},{:.4e},{:.4e}", e.l1, e.l2, e.linf);
            }
            None => out.push_str(",nan,nan,nan"),
        }
        match r.orders {
            Some(o) => {
                let _ = write!(out, ",{:.3},{:.3},{:.3}", o[0], o[1], o[2]);
            }
            None => out.push_str(",,,"),
        }
        out.push('\n');
    }
    out
}
