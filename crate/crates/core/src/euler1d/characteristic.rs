//! Characteristic-wise flux reconstruction along a single grid line.

use super::gas::{EulerSystem, Eigensystem, Primitive};
use crate::error::{Result, WenoError};
use crate::reconstruction::{reconstruct_points, reconstruct_points_minus};
use crate::weights::SchemeSpec;

/// Ghost nodes required on each side of a line.
pub const GHOSTS: usize = 3;

/// State at which interface eigenvectors are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Averaging {
    #[default]
    Roe,
    Arithmetic,
}

impl std::str::FromStr for Averaging {
    type Err = WenoError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "roe" => Ok(Self::Roe),
            "arithmetic" => Ok(Self::Arithmetic),
            _ => Err(WenoError::BadSchemeOption(format!(
                "averaging `{s}` (expected roe or arithmetic)"
            ))),
        }
    }
}

fn interface_state<S: EulerSystem<N>, const N: usize>(
    sys: &S,
    l: &[f64; N],
    r: &[f64; N],
    avg: Averaging,
) -> Primitive {
    match avg {
        Averaging::Roe => sys.roe_average(l, r),
        Averaging::Arithmetic => sys.arithmetic_average(l, r),
    }
}

/// Split fluxes of six nodes `j-2 ..= j+3` projected onto the characteristic
/// fields of the interface `j+1/2`.
#[derive(Debug, Clone, Copy)]
pub struct CharWindows<const N: usize> {
    pub eigen: Eigensystem<N>,
    /// `plus[k]` holds field `k` of `F⁺` at `j-2 ..= j+2`.
    pub plus: [[f64; 5]; N],
    /// `minus[k]` holds field `k` of `F⁻` at `j-1 ..= j+3`.
    pub minus: [[f64; 5]; N],
}

/// Projects the split fluxes of `nodes` (`j-2 ..= j+3`) with the eigenvectors
/// of the averaged state between `nodes[2]` and `nodes[3]`.
pub fn char_project<S: EulerSystem<N>, const N: usize>(
    sys: &S,
    nodes: &[[f64; N]; 6],
    avg: Averaging,
) -> Result<CharWindows<N>> {
    let mut fp = [[0.0; N]; 6];
    let mut fm = [[0.0; N]; 6];
    for (s, q) in nodes.iter().enumerate() {
        sys.check(q).map_err(|reason| WenoError::Inadmissible {
            time: f64::NAN,
            location: format!("window node {s}"),
            reason: reason.into(),
        })?;
        (fp[s], fm[s]) = sys.split(q);
    }
    let eigen = eigen_at(sys, &nodes[2], &nodes[3], avg).ok_or_else(|| WenoError::Inadmissible {
        time: f64::NAN,
        location: "interface".into(),
        reason: "averaged sound speed is not real".into(),
    })?;
    let (plus, minus) = project(&eigen, &fp[..5], &fm[1..]);
    Ok(CharWindows { eigen, plus, minus })
}

/// Numerical flux at `j+1/2` from six nodes `j-2 ..= j+3`.
pub fn interface_flux<S: EulerSystem<N>, const N: usize>(
    sys: &S,
    spec: &SchemeSpec,
    nodes: &[[f64; N]; 6],
    avg: Averaging,
) -> Result<[f64; N]> {
    let cw = char_project(sys, nodes, avg)?;
    Ok(combine(&cw.eigen, &cw.plus, &cw.minus, spec))
}

#[inline]
fn eigen_at<S: EulerSystem<N>, const N: usize>(
    sys: &S,
    l: &[f64; N],
    r: &[f64; N],
    avg: Averaging,
) -> Option<Eigensystem<N>> {
    sys.eigensystem(interface_state(sys, l, r, avg))
}

#[inline]
fn project<const N: usize>(
    e: &Eigensystem<N>,
    fp: &[[f64; N]],
    fm: &[[f64; N]],
) -> ([[f64; 5]; N], [[f64; 5]; N]) {
    let mut plus = [[0.0; 5]; N];
    let mut minus = [[0.0; 5]; N];
    for s in 0..5 {
        let a = e.to_characteristic(&fp[s]);
        let b = e.to_characteristic(&fm[s]);
        for k in 0..N {
            plus[k][s] = a[k];
            minus[k][s] = b[k];
        }
    }
    (plus, minus)
}

#[inline]
fn combine<const N: usize>(
    e: &Eigensystem<N>,
    plus: &[[f64; 5]; N],
    minus: &[[f64; 5]; N],
    spec: &SchemeSpec,
) -> [f64; N] {
    let w: [f64; N] = std::array::from_fn(|k| {
        reconstruct_points(&plus[k], spec) + reconstruct_points_minus(&minus[k], spec)
    });
    e.to_physical(&w)
}

/// Where and why a line sweep stopped.
#[derive(Debug, Clone, PartialEq)]
pub struct LineFault {
    /// Index into the padded line.
    pub index: usize,
    pub reason: &'static str,
}

/// Reusable buffers for [`line_residual`].
#[derive(Debug, Clone, Default)]
pub struct LineScratch<const N: usize> {
    prim: Vec<Primitive>,
    fp: Vec<[f64; N]>,
    fm: Vec<[f64; N]>,
    flux: Vec<[f64; N]>,
}

impl<const N: usize> LineScratch<N> {
    pub fn new() -> Self {
        Self {
            prim: Vec::new(),
            fp: Vec::new(),
            fm: Vec::new(),
            flux: Vec::new(),
        }
    }
}

/// `-(F̂_{i+1/2} - F̂_{i-1/2}) / dx` for the interior of a padded line
/// (`GHOSTS` ghost nodes on each side), written to `out`.
pub fn line_residual<S: EulerSystem<N>, const N: usize>(
    sys: &S,
    spec: &SchemeSpec,
    avg: Averaging,
    line: &[[f64; N]],
    dx: f64,
    scratch: &mut LineScratch<N>,
    out: &mut [[f64; N]],
) -> std::result::Result<(), LineFault> {
    let total = line.len();
    let n = total - 2 * GHOSTS;
    debug_assert_eq!(out.len(), n);
    let LineScratch { prim, fp, fm, flux } = scratch;
    prim.resize(total, Primitive::new_1d(0.0, 0.0, 0.0));
    fp.resize(total, [0.0; N]);
    fm.resize(total, [0.0; N]);
    flux.resize(n + 1, [0.0; N]);

    for (m, q) in line.iter().enumerate() {
        prim[m] = sys.check(q).map_err(|reason| LineFault { index: m, reason })?;
        (fp[m], fm[m]) = sys.split_primitive(&prim[m]);
    }
    // Interface m+1/2 for m = GHOSTS-1 ..= GHOSTS+n-1.
    for (f, m) in flux.iter_mut().zip(GHOSTS - 1..) {
        let state = match avg {
            Averaging::Roe => sys.roe_average_primitive(&prim[m], &prim[m + 1]),
            Averaging::Arithmetic => sys.arithmetic_average(&line[m], &line[m + 1]),
        };
        let e = sys.eigensystem(state).ok_or(LineFault {
            index: m,
            reason: "averaged sound speed is not real",
        })?;
        let (plus, minus) = project(&e, &fp[m - 2..m + 3], &fm[m - 1..m + 4]);
        *f = combine(&e, &plus, &minus, spec);
    }
    let inv = 1.0 / dx;
    for (i, o) in out.iter_mut().enumerate() {
        let (l, r) = (&flux[i], &flux[i + 1]);
        *o = std::array::from_fn(|k| -(r[k] - l[k]) * inv);
    }
    Ok(())
}
