//! Four-quadrant Riemann problem and double Mach reflection.

use super::{Boundaries, Edge, Field2D, Grid2D};
use crate::error::{Result, WenoError};
use crate::euler1d::characteristic::{Averaging, GHOSTS};
use crate::euler1d::gas::{Gas, Primitive};

pub const RIEMANN_FULL_GRID: (usize, usize) = (960, 960);
pub const DMR_FULL_GRID: (usize, usize) = (1920, 480);
/// Time step on the full grids; scaled grids keep the same CFL number.
pub const FULL_GRID_DT: f64 = 1e-4;

pub const DMR_POST: Primitive = Primitive::new_2d(8.0, 7.145, -4.125, 116.5);
pub const DMR_PRE: Primitive = Primitive::new_2d(1.4, 0.0, 0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem2DKind {
    Riemann2D,
    Dmr,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerProblem2D {
    pub kind: Problem2DKind,
    pub grid: Grid2D,
    pub dt: f64,
    pub t_final: f64,
    pub bc: Boundaries,
    pub gas: Gas,
    pub averaging: Averaging,
}

fn scaled(full: (usize, usize), scale: f64) -> Result<(usize, usize)> {
    let f = |n: usize| (n as f64 * scale).round() as usize;
    let (nx, ny) = (f(full.0), f(full.1));
    if !(scale > 0.0) || nx < 2 * GHOSTS || ny < 2 * GHOSTS {
        return Err(WenoError::InvalidProblem(format!(
            "grid scale {scale} gives a {nx}×{ny} grid"
        )));
    }
    Ok((nx, ny))
}

fn scaled_dt(full_nx: usize, nx: usize) -> f64 {
    FULL_GRID_DT * full_nx as f64 / nx as f64
}

impl EulerProblem2D {
    /// `[0,1]²`, `T = 0.8`, transmissive sides; the full grid (960²,
    /// `Δt = 10⁻⁴`) multiplied by `scale`, with `Δt` divided by it.
    pub fn riemann2d(scale: f64) -> Result<Self> {
        let (nx, ny) = scaled(RIEMANN_FULL_GRID, scale)?;
        Ok(Self {
            kind: Problem2DKind::Riemann2D,
            grid: Grid2D {
                nx,
                ny,
                x_lo: 0.0,
                x_hi: 1.0,
                y_lo: 0.0,
                y_hi: 1.0,
            },
            dt: scaled_dt(RIEMANN_FULL_GRID.0, nx),
            t_final: 0.8,
            bc: Boundaries::all(Edge::Transmissive),
            gas: Gas::default(),
            averaging: Averaging::Roe,
        })
    }

    /// `[0,4]×[0,1]`, `T = 0.2`; the full grid (1920×480, `Δt = 10⁻⁴`)
    /// multiplied by `scale`, with `Δt` divided by it.
    pub fn dmr(scale: f64) -> Result<Self> {
        let (nx, ny) = scaled(DMR_FULL_GRID, scale)?;
        let grid = Grid2D {
            nx,
            ny,
            x_lo: 0.0,
            x_hi: 4.0,
            y_lo: 0.0,
            y_hi: 1.0,
        };
        Ok(Self {
            kind: Problem2DKind::Dmr,
            grid,
            dt: scaled_dt(DMR_FULL_GRID.0, nx),
            t_final: 0.2,
            bc: setup_dmr(grid, &Gas::default()).1,
            gas: Gas::default(),
            averaging: Averaging::Roe,
        })
    }

    pub fn by_name(name: &str, scale: f64) -> Result<Self> {
        match name {
            "riemann2d" => Self::riemann2d(scale),
            "dmr" => Self::dmr(scale),
            _ => Err(WenoError::InvalidProblem(format!(
                "unknown 2D case `{name}`; valid cases: riemann2d, dmr"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            Problem2DKind::Riemann2D => "riemann2d",
            Problem2DKind::Dmr => "dmr",
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite() && self.t_final >= 0.0 && self.t_final.is_finite()) {
            return Err(WenoError::InvalidProblem(format!(
                "dt = {}, T = {}",
                self.dt, self.t_final
            )));
        }
        Ok(())
    }

    pub fn time_steps(&self) -> (usize, f64) {
        let steps = (self.t_final / self.dt).round().max(1.0);
        (steps as usize, self.t_final / steps)
    }

    pub fn initial_field(&self) -> Field2D {
        match self.kind {
            Problem2DKind::Riemann2D => setup_riemann2d(self.grid, &self.gas),
            Problem2DKind::Dmr => setup_dmr(self.grid, &self.gas).0,
        }
    }
}

/// Quadrant states split at `(0.8, 0.8)`; nodes on a split line belong to
/// the upper/right side.
pub fn riemann2d_state(x: f64, y: f64) -> Primitive {
    match (x >= 0.8, y >= 0.8) {
        (true, true) => Primitive::new_2d(1.5, 0.0, 0.0, 1.5),
        (false, true) => Primitive::new_2d(0.5323, 1.206, 0.0, 0.3),
        (false, false) => Primitive::new_2d(0.138, 1.206, 1.206, 0.029),
        (true, false) => Primitive::new_2d(0.5323, 0.0, 1.206, 0.3),
    }
}

pub fn setup_riemann2d(grid: Grid2D, gas: &Gas) -> Field2D {
    Field2D::from_fn(grid, gas, riemann2d_state)
}

/// Position of the incident shock at height `y` and time `t`.
pub fn dmr_shock_x(y: f64, t: f64) -> f64 {
    1.0 / 6.0 + (y + 20.0 * t) / 3f64.sqrt()
}

pub fn dmr_state(x: f64, y: f64) -> Primitive {
    if x < dmr_shock_x(y, 0.0) {
        DMR_POST
    } else {
        DMR_PRE
    }
}

/// Initial data and boundary closures: post-shock inflow on the left,
/// transmissive on the right, post-shock ghosts below `x < 1/6` and a
/// reflective wall beyond it, and the exact shock trace on top.
pub fn setup_dmr(grid: Grid2D, gas: &Gas) -> (Field2D, Boundaries) {
    let bc = Boundaries {
        left: Edge::Inflow(DMR_POST),
        right: Edge::Transmissive,
        bottom: Edge::WallFrom {
            from: 1.0 / 6.0,
            state: DMR_POST,
        },
        top: Edge::ShockTrace {
            post: DMR_POST,
            pre: DMR_PRE,
        },
    };
    (Field2D::from_fn(grid, gas, dmr_state), bc)
}
