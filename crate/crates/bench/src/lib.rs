//! Deterministic fixtures shared by the benchmarks.

use weno_core::euler1d::{EulerSystem, Gas, Primitive, GHOSTS};
use weno_core::euler2d::EulerProblem2D;
use weno_core::StencilWindow;

/// Five-point windows mixing smooth samples and jumps.
pub fn windows(count: usize) -> Vec<[f64; 5]> {
    (0..count)
        .map(|i| {
            let phase = i as f64 * 0.37;
            std::array::from_fn(|k| {
                let x = phase + 0.1 * k as f64;
                let jump = if i % 7 == 0 && k >= 3 { 1.0 } else { 0.0 };
                x.sin() + jump
            })
        })
        .collect()
}

pub fn stencil_windows(count: usize) -> Vec<StencilWindow> {
    windows(count)
        .iter()
        .map(|w| StencilWindow::new(w).expect("finite"))
        .collect()
}

/// A padded 2D-system line of `n` interior nodes with a smooth density wave
/// and a shear flow.
pub fn euler_line(n: usize) -> Vec<[f64; 4]> {
    let gas = Gas::default();
    (0..n + 2 * GHOSTS)
        .map(|i| {
            let x = i as f64 / n as f64;
            let w = Primitive::new_2d(1.0 + 0.5 * (7.0 * x).sin(), 0.3 + x, 0.2, 1.0 + 0.3 * (5.0 * x).cos());
            EulerSystem::<4>::to_conserved(&gas, w)
        })
        .collect()
}

/// Four-quadrant Riemann problem on an `n × n` grid.
pub fn riemann(n: usize) -> EulerProblem2D {
    let scale = n as f64 / weno_core::euler2d::problems::RIEMANN_FULL_GRID.0 as f64;
    EulerProblem2D::riemann2d(scale).expect("grid large enough")
}
