//! Two-dimensional Euler equations on a uniform cell-centered Cartesian grid.
//!
//! Both directional residuals come from the same stage state and are summed
//! before the TVD-RK3 update. The y-sweep reuses the x-direction machinery on
//! columns with the momentum components swapped, so the operator commutes
//! exactly with transposition on square grids.

pub mod io;
pub mod problems;
pub mod variant;

use rayon::prelude::*;

use crate::error::{Result, WenoError};
use crate::euler1d::characteristic::{line_residual, Averaging, LineFault, LineScratch, GHOSTS};
use crate::euler1d::gas::{EulerSystem, Gas, Primitive};
use crate::timestep::{ssp_rk3, Workspace};
use crate::weights::SchemeSpec;

pub use problems::{dmr_shock_x, setup_dmr, setup_riemann2d, EulerProblem2D, Problem2DKind};
pub use variant::{probe_total_variation, variant_experiment, VariantOutcome, VariantRequest};

pub type Conserved2D = [f64; 4];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    pub nx: usize,
    pub ny: usize,
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_lo: f64,
    pub y_hi: f64,
}

impl Grid2D {
    pub fn dx(&self) -> f64 {
        (self.x_hi - self.x_lo) / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        (self.y_hi - self.y_lo) / self.ny as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_lo + (i as f64 + 0.5) * self.dx()
    }

    pub fn y(&self, j: usize) -> f64 {
        self.y_lo + (j as f64 + 0.5) * self.dy()
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Row-major index.
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    pub fn transposed(&self) -> Self {
        Self {
            nx: self.ny,
            ny: self.nx,
            x_lo: self.y_lo,
            x_hi: self.y_hi,
            y_lo: self.x_lo,
            y_hi: self.x_hi,
        }
    }
}

/// Conserved field on a grid, row-major (`j * nx + i`).
#[derive(Debug, Clone, PartialEq)]
pub struct Field2D {
    pub grid: Grid2D,
    pub data: Vec<Conserved2D>,
}

impl Field2D {
    pub fn from_fn(grid: Grid2D, gas: &Gas, init: impl Fn(f64, f64) -> Primitive) -> Self {
        let mut data = Vec::with_capacity(grid.len());
        for j in 0..grid.ny {
            for i in 0..grid.nx {
                data.push(gas.to_conserved(init(grid.x(i), grid.y(j))));
            }
        }
        Self { grid, data }
    }

    /// Mirror about the diagonal: `(x, y, u, v) → (y, x, v, u)`.
    pub fn transposed(&self) -> Self {
        let g = self.grid;
        let t = g.transposed();
        let mut data = vec![[0.0; 4]; g.len()];
        for j in 0..g.ny {
            for i in 0..g.nx {
                data[t.at(j, i)] = swap_momentum(self.data[g.at(i, j)]);
            }
        }
        Self { grid: t, data }
    }

    pub fn density(&self) -> Vec<f64> {
        self.data.iter().map(|q| q[0]).collect()
    }

    pub fn primitives(&self, gas: &Gas) -> Vec<Primitive> {
        self.data.iter().map(|q| gas.to_primitive(q)).collect()
    }
}

#[inline]
pub fn swap_momentum(q: Conserved2D) -> Conserved2D {
    [q[0], q[2], q[1], q[3]]
}

/// Ghost treatment on one side of the domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Edge {
    Transmissive,
    Reflective,
    /// Must be paired with a periodic opposite side.
    Periodic,
    /// Fixed state in every ghost node.
    Inflow(Primitive),
    /// `state` where the coordinate along the side is below `from`; a
    /// reflective wall elsewhere.
    WallFrom { from: f64, state: Primitive },
    /// `post` left of the moving oblique shock of the double Mach
    /// reflection, `pre` to its right.
    ShockTrace { post: Primitive, pre: Primitive },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Boundaries {
    pub left: Edge,
    pub right: Edge,
    pub bottom: Edge,
    pub top: Edge,
}

impl Boundaries {
    pub const fn all(e: Edge) -> Self {
        Self {
            left: e,
            right: e,
            bottom: e,
            top: e,
        }
    }

    pub fn transposed(&self) -> Self {
        Self {
            left: self.bottom,
            right: self.top,
            bottom: self.left,
            top: self.right,
        }
    }

    fn validate(&self) -> Result<()> {
        let p = |e: Edge| e == Edge::Periodic;
        if p(self.left) != p(self.right) || p(self.bottom) != p(self.top) {
            return Err(WenoError::InvalidProblem(
                "periodic edges must come in opposite pairs".into(),
            ));
        }
        Ok(())
    }
}

/// Fills the ghost nodes at one end of a padded line, in physical variables.
/// `along` is the coordinate of the line along the side; `normal` the
/// momentum component normal to the side.
fn fill_side(line: &mut [Conserved2D], hi: bool, edge: Edge, normal: usize, along: f64, t: f64, gas: &Gas) {
    let g = GHOSTS;
    let n = line.len() - 2 * g;
    let reflect = |mut q: Conserved2D| {
        q[normal] = -q[normal];
        q
    };
    // Ghost k counts outward from the side; `mirror` is its image inside,
    // `wrap` the node it copies under periodicity.
    for k in 0..g {
        let (ghost, mirror, wrap, edge_node) = if hi {
            (g + n + k, g + n - 1 - k, g + k, g + n - 1)
        } else {
            (g - 1 - k, g + k, g + n - 1 - k, g)
        };
        line[ghost] = match edge {
            Edge::Transmissive => line[edge_node],
            Edge::Reflective => reflect(line[mirror]),
            Edge::Periodic => line[wrap],
            Edge::Inflow(w) => gas.to_conserved(w),
            Edge::WallFrom { from, state } => {
                if along < from {
                    gas.to_conserved(state)
                } else {
                    reflect(line[mirror])
                }
            }
            Edge::ShockTrace { post, pre } => {
                if along < dmr_shock_x(1.0, t) {
                    gas.to_conserved(post)
                } else {
                    gas.to_conserved(pre)
                }
            }
        };
    }
}

/// Semi-discrete operator `L(U) = -(∂F/∂x + ∂G/∂y)` with scratch buffers.
pub struct Residual2D<'a> {
    pub grid: Grid2D,
    pub bc: Boundaries,
    pub gas: Gas,
    pub spec: &'a SchemeSpec,
    pub averaging: Averaging,
    yres: Vec<Conserved2D>,
}

struct Fault2D {
    i: usize,
    j: usize,
    reason: &'static str,
}

impl<'a> Residual2D<'a> {
    pub fn new(grid: Grid2D, bc: Boundaries, gas: Gas, spec: &'a SchemeSpec, averaging: Averaging) -> Self {
        Self {
            grid,
            bc,
            gas,
            spec,
            averaging,
            yres: vec![[0.0; 4]; grid.len()],
        }
    }

    pub fn eval(&mut self, u: &[Conserved2D], t: f64, out: &mut [Conserved2D]) -> Result<()> {
        let Self {
            grid,
            bc,
            gas,
            spec,
            averaging,
            yres,
        } = self;
        let (g, bc, gas, spec, avg) = (*grid, *bc, *gas, *spec, *averaging);
        let (nx, ny) = (g.nx, g.ny);

        // x-sweeps straight into `out`.
        let faults: Vec<Option<Fault2D>> = out
            .par_chunks_mut(nx)
            .enumerate()
            .map_init(
                || (vec![[0.0; 4]; nx + 2 * GHOSTS], LineScratch::new()),
                |(line, scratch), (j, row)| {
                    line[GHOSTS..GHOSTS + nx].copy_from_slice(&u[j * nx..(j + 1) * nx]);
                    let y = g.y(j);
                    fill_side(line, false, bc.left, 1, y, t, &gas);
                    fill_side(line, true, bc.right, 1, y, t, &gas);
                    line_residual(&gas, spec, avg, line, g.dx(), scratch, row)
                        .err()
                        .map(|f: LineFault| Fault2D {
                            i: clamp_index(f.index, nx),
                            j,
                            reason: f.reason,
                        })
                },
            )
            .collect();
        if let Some(f) = faults.into_iter().flatten().next() {
            return Err(fault_error(&g, f, t, "x-sweep"));
        }

        // y-sweeps into column-major `yres`, momentum swapped.
        let faults: Vec<Option<Fault2D>> = yres
            .par_chunks_mut(ny)
            .enumerate()
            .map_init(
                || (vec![[0.0; 4]; ny + 2 * GHOSTS], LineScratch::new()),
                |(line, scratch), (i, col)| {
                    for j in 0..ny {
                        line[GHOSTS + j] = u[j * nx + i];
                    }
                    let x = g.x(i);
                    fill_side(line, false, bc.bottom, 2, x, t, &gas);
                    fill_side(line, true, bc.top, 2, x, t, &gas);
                    for q in line.iter_mut() {
                        *q = swap_momentum(*q);
                    }
                    line_residual(&gas, spec, avg, line, g.dy(), scratch, col)
                        .err()
                        .map(|f: LineFault| Fault2D {
                            i,
                            j: clamp_index(f.index, ny),
                            reason: f.reason,
                        })
                },
            )
            .collect();
        if let Some(f) = faults.into_iter().flatten().next() {
            return Err(fault_error(&g, f, t, "y-sweep"));
        }

        out.par_chunks_mut(nx).enumerate().for_each(|(j, row)| {
            for (i, o) in row.iter_mut().enumerate() {
                let y = swap_momentum(yres[i * ny + j]);
                *o = std::array::from_fn(|k| o[k] + y[k]);
            }
        });
        Ok(())
    }
}

fn clamp_index(padded: usize, n: usize) -> usize {
    padded.saturating_sub(GHOSTS).min(n - 1)
}

fn fault_error(g: &Grid2D, f: Fault2D, t: f64, sweep: &str) -> WenoError {
    WenoError::Inadmissible {
        time: t,
        location: format!(
            "{sweep} near node (i, j) = ({}, {}) at (x, y) = ({:.5}, {:.5})",
            f.i,
            f.j,
            g.x(f.i),
            g.y(f.j)
        ),
        reason: f.reason.into(),
    }
}

/// One TVD-RK3 step.
pub fn step2d(
    residual: &mut Residual2D<'_>,
    state: &mut [Conserved2D],
    t: f64,
    dt: f64,
    ws: &mut Workspace<Conserved2D>,
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

/// Final field and diagnostics of a 2D run.
#[derive(Debug, Clone)]
pub struct Run2D {
    pub field: Field2D,
    pub t: f64,
    pub steps: usize,
    pub failure: Option<WenoError>,
    pub min_rho: f64,
    pub max_rho: f64,
    pub min_p: f64,
}

impl Run2D {
    pub fn completed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "completed={}\nt={:.6e}\nsteps={}\nmin_rho={:.6e}\nmax_rho={:.6e}\nmin_p={:.6e}\n",
            self.completed(),
            self.t,
            self.steps,
            self.min_rho,
            self.max_rho,
            self.min_p
        );
        if let Some(f) = &self.failure {
            s.push_str(&format!("failure={f}\n"));
        }
        s
    }
}

fn extrema(gas: &Gas, data: &[Conserved2D]) -> (f64, f64, f64) {
    data.par_iter()
        .map(|q| {
            let w: Primitive = gas.to_primitive(q);
            (w.rho, w.rho, w.p)
        })
        .reduce(
            || (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY),
            |a, b| (a.0.min(b.0), a.1.max(b.1), a.2.min(b.2)),
        )
}

/// Advances `problem` from its initial data to `t_final`; `observer` sees
/// the state after every step.
pub fn run_problem_2d(
    problem: &EulerProblem2D,
    spec: &SchemeSpec,
    mut observer: impl FnMut(usize, f64, &Field2D),
) -> Result<Run2D> {
    problem.validate()?;
    let mut field = problem.initial_field();
    run_from(problem, spec, &mut field, &mut observer).map(|(t, steps, failure, ex)| Run2D {
        field,
        t,
        steps,
        failure,
        min_rho: ex.0,
        max_rho: ex.1,
        min_p: ex.2,
    })
}

type Extrema = (f64, f64, f64);

fn run_from(
    problem: &EulerProblem2D,
    spec: &SchemeSpec,
    field: &mut Field2D,
    observer: &mut impl FnMut(usize, f64, &Field2D),
) -> Result<(f64, usize, Option<WenoError>, Extrema)> {
    problem.bc.validate()?;
    let (steps, dt) = problem.time_steps();
    let gas = problem.gas;
    let mut residual = Residual2D::new(field.grid, problem.bc, gas, spec, problem.averaging);
    let mut ws = Workspace::new();
    let mut ex = extrema(&gas, &field.data);
    let mut backup = field.data.clone();
    for k in 0..steps {
        let t = k as f64 * dt;
        backup.copy_from_slice(&field.data);
        if let Err(e) = step2d(&mut residual, &mut field.data, t, dt, &mut ws) {
            field.data.copy_from_slice(&backup);
            return Ok((t, k, Some(e), ex));
        }
        let now = extrema(&gas, &field.data);
        ex = (ex.0.min(now.0), ex.1.max(now.1), ex.2.min(now.2));
        if !(now.0 > 0.0 && now.2 > 0.0) {
            let t_end = (k + 1) as f64 * dt;
            let e = WenoError::Inadmissible {
                time: t_end,
                location: "end of step".into(),
                reason: "nonpositive density or pressure".into(),
            };
            return Ok((t_end, k + 1, Some(e), ex));
        }
        observer(k + 1, (k + 1) as f64 * dt, field);
    }
    Ok((steps as f64 * dt, steps, None, ex))
}

/// Largest `|ρ(x, y) - ρ(y, x)|` on a square grid.
pub fn diagonal_asymmetry(field: &Field2D) -> f64 {
    let g = field.grid;
    assert_eq!(g.nx, g.ny, "diagonal symmetry needs a square grid");
    let mut worst: f64 = 0.0;
    for j in 0..g.ny {
        for i in 0..j {
            worst = worst.max((field.data[g.at(i, j)][0] - field.data[g.at(j, i)][0]).abs());
        }
    }
    worst
}
