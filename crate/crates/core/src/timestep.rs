//! Explicit Runge–Kutta steppers over flat state vectors.
//!
//! The residual callback receives the stage state and stage time and writes
//! `L(u)` into its output buffer. Callbacks may fail (inadmissible state);
//! the first failure aborts the step and is returned unchanged.

use crate::error::Result;

/// Scratch buffers reused across steps.
#[derive(Debug, Clone)]
pub struct Workspace<T> {
    stage: Vec<T>,
    rhs: Vec<T>,
    acc: Vec<T>,
}

impl<T: Axpy> Default for Workspace<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Axpy> Workspace<T> {
    pub fn new() -> Self {
        Self {
            stage: Vec::new(),
            rhs: Vec::new(),
            acc: Vec::new(),
        }
    }

    fn fit(&mut self, n: usize) {
        for v in [&mut self.stage, &mut self.rhs, &mut self.acc] {
            v.resize(n, T::ZERO);
        }
    }
}

/// Component-wise arithmetic needed by the steppers.
pub trait Axpy: Copy {
    const ZERO: Self;

    /// `a * self + b * y`
    fn lincomb(self, a: f64, y: Self, b: f64) -> Self;
}

impl Axpy for f64 {
    const ZERO: Self = 0.0;

    #[inline]
    fn lincomb(self, a: f64, y: Self, b: f64) -> Self {
        a * self + b * y
    }
}

impl<const N: usize> Axpy for [f64; N] {
    const ZERO: Self = [0.0; N];

    #[inline]
    fn lincomb(self, a: f64, y: Self, b: f64) -> Self {
        std::array::from_fn(|k| a * self[k] + b * y[k])
    }
}

/// One step of the three-stage strong-stability-preserving RK3:
///
/// ```text
/// u1 = u + dt L(u)
/// u2 = 3/4 u + 1/4 (u1 + dt L(u1))
/// u' = 1/3 u + 2/3 (u2 + dt L(u2))
/// ```
///
/// Stage times are `t`, `t + dt`, `t + dt/2`.
pub fn ssp_rk3<T, F>(u: &mut [T], t: f64, dt: f64, ws: &mut Workspace<T>, mut rhs: F) -> Result<()>
where
    T: Axpy,
    F: FnMut(&[T], f64, &mut [T]) -> Result<()>,
{
    ws.fit(u.len());
    let Workspace { stage, rhs: l, .. } = ws;

    rhs(u, t, l)?;
    for ((s, &ui), &li) in stage.iter_mut().zip(u.iter()).zip(l.iter()) {
        *s = ui.lincomb(1.0, li, dt);
    }

    rhs(stage, t + dt, l)?;
    for ((s, &ui), &li) in stage.iter_mut().zip(u.iter()).zip(l.iter()) {
        *s = ui.lincomb(0.75, s.lincomb(1.0, li, dt), 0.25);
    }

    rhs(stage, t + 0.5 * dt, l)?;
    for ((ui, &s), &li) in u.iter_mut().zip(stage.iter()).zip(l.iter()) {
        *ui = ui.lincomb(1.0 / 3.0, s.lincomb(1.0, li, dt), 2.0 / 3.0);
    }
    Ok(())
}

/// One step of the classical four-stage RK4.
pub fn rk4<T, F>(u: &mut [T], t: f64, dt: f64, ws: &mut Workspace<T>, mut rhs: F) -> Result<()>
where
    T: Axpy,
    F: FnMut(&[T], f64, &mut [T]) -> Result<()>,
{
    ws.fit(u.len());
    let Workspace { stage, rhs: l, acc } = ws;

    // k1
    rhs(u, t, l)?;
    for (((a, s), &ui), &li) in acc.iter_mut().zip(stage.iter_mut()).zip(u.iter()).zip(l.iter()) {
        *a = li;
        *s = ui.lincomb(1.0, li, 0.5 * dt);
    }
    // k2
    rhs(stage, t + 0.5 * dt, l)?;
    for (((a, s), &ui), &li) in acc.iter_mut().zip(stage.iter_mut()).zip(u.iter()).zip(l.iter()) {
        *a = a.lincomb(1.0, li, 2.0);
        *s = ui.lincomb(1.0, li, 0.5 * dt);
    }
    // k3
    rhs(stage, t + 0.5 * dt, l)?;
    for (((a, s), &ui), &li) in acc.iter_mut().zip(stage.iter_mut()).zip(u.iter()).zip(l.iter()) {
        *a = a.lincomb(1.0, li, 2.0);
        *s = ui.lincomb(1.0, li, dt);
    }
    // k4
    rhs(stage, t + dt, l)?;
    for ((ui, &a), &li) in u.iter_mut().zip(acc.iter()).zip(l.iter()) {
        *ui = ui.lincomb(1.0, a.lincomb(1.0, li, 1.0), dt / 6.0);
    }
    Ok(())
}
