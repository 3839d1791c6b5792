//! One-dimensional Euler equations: Steger–Warming splitting,
//! characteristic-wise reconstruction and TVD-RK3 on a uniform cell-centered
//! grid with three ghost nodes per side.

pub mod characteristic;
pub mod gas;

use std::fmt::Write as _;

pub use characteristic::{char_project, interface_flux, line_residual, Averaging, CharWindows, LineFault, LineScratch, GHOSTS};
pub use gas::{steger_warming_split, EulerSystem, Eigensystem, Gas, Primitive, GAMMA};

use crate::error::{Result, WenoError};
use crate::timestep::{ssp_rk3, Workspace};
use crate::weights::{SchemeId, SchemeSpec};

pub type Conserved1D = [f64; 3];

/// Ghost treatment at one end of a grid line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Boundary {
    /// Zeroth-order extrapolation.
    Transmissive,
    /// Mirror about the boundary face, normal momentum negated.
    Reflective,
    /// Ghosts taken from the opposite end; must be set on both ends.
    Periodic,
}

/// Fills `GHOSTS` nodes at each end of `line`. `normal` is the momentum
/// component negated by reflective walls.
pub fn fill_ghosts<const N: usize>(line: &mut [[f64; N]], left: Boundary, right: Boundary, normal: usize) {
    let g = GHOSTS;
    let n = line.len() - 2 * g;
    for k in 0..g {
        line[g - 1 - k] = match left {
            Boundary::Transmissive => line[g],
            Boundary::Reflective => reflect(line[g + k], normal),
            Boundary::Periodic => line[g + n - 1 - k],
        };
        line[g + n + k] = match right {
            Boundary::Transmissive => line[g + n - 1],
            Boundary::Reflective => reflect(line[g + n - 1 - k], normal),
            Boundary::Periodic => line[g + k],
        };
    }
}

#[inline]
fn reflect<const N: usize>(mut q: [f64; N], normal: usize) -> [f64; N] {
    q[normal] = -q[normal];
    q
}

/// Initial data of the built-in problems.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Case1D {
    /// `(1, 0, 0.1·PR)` for `x < 0`, `(1, 0, 0.1)` otherwise, on `[-5, 5]`.
    StrongShock { pressure_ratio: f64 },
    /// Woodward–Colella interacting blast waves on `[0, 1]`.
    BlastWave,
    /// Mach-3 shock into a sinusoidal density field on `[-5, 5]`.
    ShuOsher,
    /// Two states separated at `x0`.
    Riemann { left: Primitive, right: Primitive, x0: f64 },
}

impl Case1D {
    pub fn name(&self) -> &'static str {
        match self {
            Case1D::StrongShock { .. } => "strong-shock",
            Case1D::BlastWave => "blast",
            Case1D::ShuOsher => "shu-osher",
            Case1D::Riemann { .. } => "riemann",
        }
    }

    pub fn initial(&self, x: f64) -> Primitive {
        match *self {
            Case1D::StrongShock { pressure_ratio } => {
                if x < 0.0 {
                    Primitive::new_1d(1.0, 0.0, 0.1 * pressure_ratio)
                } else {
                    Primitive::new_1d(1.0, 0.0, 0.1)
                }
            }
            Case1D::BlastWave => {
                let p = if x < 0.1 {
                    1000.0
                } else if x <= 0.9 {
                    0.01
                } else {
                    100.0
                };
                Primitive::new_1d(1.0, 0.0, p)
            }
            Case1D::ShuOsher => {
                if x < -4.0 {
                    Primitive::new_1d(3.857143, 2.629369, 10.3333)
                } else {
                    Primitive::new_1d(1.0 + 0.2 * (5.0 * x).sin(), 0.0, 1.0)
                }
            }
            Case1D::Riemann { left, right, x0 } => {
                if x < x0 {
                    left
                } else {
                    right
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerProblem1D {
    pub case: Case1D,
    pub x_lo: f64,
    pub x_hi: f64,
    pub n: usize,
    pub dt: f64,
    pub t_final: f64,
    pub left: Boundary,
    pub right: Boundary,
    pub gas: Gas,
    pub averaging: Averaging,
}

impl EulerProblem1D {
    pub fn strong_shock() -> Self {
        Self {
            case: Case1D::StrongShock { pressure_ratio: 1e6 },
            x_lo: -5.0,
            x_hi: 5.0,
            n: 200,
            dt: 1e-5,
            t_final: 0.01,
            left: Boundary::Transmissive,
            right: Boundary::Transmissive,
            gas: Gas::default(),
            averaging: Averaging::Roe,
        }
    }

    pub fn blast_wave() -> Self {
        Self {
            case: Case1D::BlastWave,
            x_lo: 0.0,
            x_hi: 1.0,
            n: 600,
            dt: 1e-5,
            t_final: 0.038,
            left: Boundary::Reflective,
            right: Boundary::Reflective,
            ..Self::strong_shock()
        }
    }

    pub fn shu_osher() -> Self {
        Self {
            case: Case1D::ShuOsher,
            n: 240,
            dt: 0.003,
            t_final: 1.8,
            ..Self::strong_shock()
        }
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "strong-shock" => Ok(Self::strong_shock()),
            "blast" => Ok(Self::blast_wave()),
            "shu-osher" => Ok(Self::shu_osher()),
            _ => Err(WenoError::InvalidProblem(format!(
                "unknown 1D case `{name}`; valid cases: strong-shock, blast, shu-osher"
            ))),
        }
    }

    /// Same problem on `n` cells with `dt` scaled to keep the CFL number.
    pub fn with_grid(&self, n: usize) -> Self {
        Self {
            n,
            dt: self.dt * self.n as f64 / n as f64,
            ..*self
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(WenoError::InvalidProblem(m));
        if self.n < 2 * GHOSTS {
            return bad(format!("N = {} is too small", self.n));
        }
        if !(self.x_hi > self.x_lo) {
            return bad(format!("empty domain [{}, {}]", self.x_lo, self.x_hi));
        }
        if !(self.dt > 0.0 && self.t_final >= 0.0 && self.dt.is_finite() && self.t_final.is_finite()) {
            return bad(format!("dt = {}, T = {}", self.dt, self.t_final));
        }
        if (self.left == Boundary::Periodic) != (self.right == Boundary::Periodic) {
            return bad("periodic boundaries must be set on both ends".into());
        }
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        (self.x_hi - self.x_lo) / self.n as f64
    }

    /// Cell centers.
    pub fn nodes(&self) -> Vec<f64> {
        let dx = self.dx();
        (0..self.n).map(|i| self.x_lo + (i as f64 + 0.5) * dx).collect()
    }

    /// Whole number of steps reaching `t_final` exactly; `dt` is adjusted
    /// only when `t_final / dt` is not an integer.
    pub fn time_steps(&self) -> (usize, f64) {
        let steps = (self.t_final / self.dt).round().max(1.0);
        (steps as usize, self.t_final / steps)
    }

    pub fn initial_state(&self) -> Vec<Conserved1D> {
        self.nodes()
            .into_iter()
            .map(|x| self.gas.to_conserved(self.case.initial(x)))
            .collect()
    }
}

/// Evaluates the semi-discrete residual, reusing `padded` and `scratch`.
pub struct Residual1D<'a> {
    problem: &'a EulerProblem1D,
    spec: &'a SchemeSpec,
    padded: Vec<Conserved1D>,
    scratch: LineScratch<3>,
}

impl<'a> Residual1D<'a> {
    pub fn new(problem: &'a EulerProblem1D, spec: &'a SchemeSpec) -> Self {
        Self {
            problem,
            spec,
            padded: vec![[0.0; 3]; problem.n + 2 * GHOSTS],
            scratch: LineScratch::new(),
        }
    }

    pub fn eval(&mut self, u: &[Conserved1D], t: f64, out: &mut [Conserved1D]) -> Result<()> {
        let p = self.problem;
        self.padded[GHOSTS..GHOSTS + p.n].copy_from_slice(u);
        fill_ghosts(&mut self.padded, p.left, p.right, 1);
        line_residual(&p.gas, self.spec, p.averaging, &self.padded, p.dx(), &mut self.scratch, out).map_err(|f| {
            let i = f.index as i64 - GHOSTS as i64;
            WenoError::Inadmissible {
                time: t,
                location: format!("node {i} (x = {:.6})", p.x_lo + (i as f64 + 0.5) * p.dx()),
                reason: f.reason.into(),
            }
        })
    }
}

/// One TVD-RK3 step of `state` from `t`.
pub fn step_tvdrk3(
    residual: &mut Residual1D<'_>,
    state: &mut [Conserved1D],
    t: f64,
    dt: f64,
    ws: &mut Workspace<Conserved1D>,
) -> Result<()> {
    let mut stage = 0;
    ssp_rk3(state, t, dt, ws, |u, ts, out| {
        stage += 1;
        residual.eval(u, ts, out).map_err(|e| match e {
            WenoError::Inadmissible { time, location, reason } => WenoError::Inadmissible {
                time,
                location: format!("RK stage {stage}, {location}"),
                reason,
            },
            other => other,
        })
    })
}

/// Final field and diagnostics of a run. A blow-up is reported in
/// `failure`, not as an error.
#[derive(Debug, Clone)]
pub struct Run1D {
    pub x: Vec<f64>,
    pub state: Vec<Conserved1D>,
    pub t: f64,
    pub steps: usize,
    pub failure: Option<WenoError>,
    /// Minima over all completed steps, including the initial data.
    pub min_rho: f64,
    pub min_p: f64,
    pub l1_vs_ref: Option<f64>,
    pub l2_vs_ref: Option<f64>,
}

impl Run1D {
    pub fn completed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn primitives(&self, gas: &Gas) -> Vec<Primitive> {
        self.state.iter().map(|q| gas.to_primitive(q)).collect()
    }

    pub fn density(&self) -> Vec<f64> {
        self.state.iter().map(|q| q[0]).collect()
    }

    /// `key=value` lines.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let opt = |v: Option<f64>| v.map_or("NA".to_string(), |v| format!("{v:.6e}"));
        let _ = writeln!(s, "completed={}", self.completed());
        let _ = writeln!(s, "t={:.6e}", self.t);
        let _ = writeln!(s, "steps={}", self.steps);
        let _ = writeln!(s, "min_rho={:.6e}", self.min_rho);
        let _ = writeln!(s, "min_p={:.6e}", self.min_p);
        let _ = writeln!(s, "L1_vs_ref={}", opt(self.l1_vs_ref));
        let _ = writeln!(s, "L2_vs_ref={}", opt(self.l2_vs_ref));
        if let Some(f) = &self.failure {
            let _ = writeln!(s, "failure={f}");
        }
        s
    }

    /// `x,rho,u,p` per node.
    pub fn fields_csv(&self, gas: &Gas) -> String {
        let mut s = String::from("x,rho,u,p\n");
        for (x, w) in self.x.iter().zip(self.primitives(gas)) {
            let _ = writeln!(s, "{x:.10e},{:.10e},{:.10e},{:.10e}", w.rho, w.u, w.p);
        }
        s
    }
}

fn extrema(gas: &Gas, state: &[Conserved1D]) -> (f64, f64) {
    state.iter().fold((f64::INFINITY, f64::INFINITY), |(r, p), q| {
        let w = gas.to_primitive(q);
        (r.min(w.rho), p.min(w.p))
    })
}

/// L1 and L2 distances, both normalized by the number of nodes.
pub fn density_errors(rho: &[f64], reference: &[f64]) -> (f64, f64) {
    let n = rho.len() as f64;
    let (s1, s2) = rho.iter().zip(reference).fold((0.0, 0.0), |(a, b), (x, y)| {
        let d = (x - y).abs();
        (a + d, b + d * d)
    });
    (s1 / n, (s2 / n).sqrt())
}

/// Runs `problem` to `t_final`. Density errors are computed when a reference
/// sampled at the problem's nodes is given.
pub fn run_problem(problem: &EulerProblem1D, spec: &SchemeSpec, reference: Option<&[f64]>) -> Result<Run1D> {
    problem.validate()?;
    if let Some(r) = reference {
        if r.len() != problem.n {
            return Err(WenoError::InvalidProblem(format!(
                "reference has {} nodes, problem has {}",
                r.len(),
                problem.n
            )));
        }
    }
    let (steps, dt) = problem.time_steps();
    let mut state = problem.initial_state();
    let (mut min_rho, mut min_p) = extrema(&problem.gas, &state);
    let mut residual = Residual1D::new(problem, spec);
    let mut ws = Workspace::new();
    let mut failure = None;
    let mut done = 0;
    for k in 0..steps {
        let t = k as f64 * dt;
        let backup = state.clone();
        if let Err(e) = step_tvdrk3(&mut residual, &mut state, t, dt, &mut ws) {
            state = backup;
            failure = Some(e);
            break;
        }
        let (r, p) = extrema(&problem.gas, &state);
        min_rho = min_rho.min(r);
        min_p = min_p.min(p);
        done = k + 1;
        if !(r > 0.0 && p > 0.0) {
            failure = Some(WenoError::Inadmissible {
                time: done as f64 * dt,
                location: "end of step".into(),
                reason: "nonpositive density or pressure".into(),
            });
            break;
        }
    }
    let (l1, l2) = match reference {
        Some(r) => {
            let (a, b) = density_errors(&state.iter().map(|q| q[0]).collect::<Vec<_>>(), r);
            (Some(a), Some(b))
        }
        None => (None, None),
    };
    Ok(Run1D {
        x: problem.nodes(),
        state,
        t: done as f64 * dt,
        steps: done,
        failure,
        min_rho,
        min_p,
        l1_vs_ref: l1,
        l2_vs_ref: l2,
    })
}

/// Fine-grid density sampled at the nodes of `coarse`.
#[derive(Debug, Clone)]
pub struct Reference {
    pub n_fine: usize,
    pub fine_x: Vec<f64>,
    pub fine_rho: Vec<f64>,
    pub rho: Vec<f64>,
}

/// Runs `problem` with JS5 on `n_fine` cells (time step scaled with the
/// grid) and restricts the density to the coarse cell centers.
///
/// When `n_fine / n` is odd the fine and coarse centers coincide and the
/// restriction is injection; otherwise each coarse center lies midway
/// between two fine centers and their mean is taken.
pub fn make_reference(problem: &EulerProblem1D, n_fine: usize) -> Result<Reference> {
    if n_fine < problem.n || !n_fine.is_multiple_of(problem.n) {
        return Err(WenoError::InvalidProblem(format!(
            "reference grid {n_fine} must be a multiple of {}",
            problem.n
        )));
    }
    let fine = problem.with_grid(n_fine);
    let run = run_problem(&fine, &SchemeSpec::new(SchemeId::Js5), None)?;
    if let Some(f) = run.failure {
        return Err(f);
    }
    let fine_rho = run.density();
    let rho = restrict(&fine_rho, problem.n);
    Ok(Reference {
        n_fine,
        fine_x: run.x,
        fine_rho,
        rho,
    })
}

/// Cell-centered restriction by an integer factor.
pub fn restrict(fine: &[f64], n: usize) -> Vec<f64> {
    let r = fine.len() / n;
    (0..n)
        .map(|i| {
            let c = i * r + r / 2;
            if r % 2 == 1 {
                fine[c]
            } else {
                0.5 * (fine[c - 1] + fine[c])
            }
        })
        .collect()
}
