//! Stencil arithmetic: undivided differences, local smoothness indicators β
//! and global smoothness indicators τ.
//!
//! Every formula here is a fixed linear or quadratic form in the point values
//! around x_j and uses no grid spacing. All of them annihilate constants, so
//! they are shift invariant, and they scale as `c` (differences) or `c²`
//! (β, τ) under `f -> c f`.
//!
//! Windows are stored as five slots `f_{j-2} .. f_{j+2}`. A 3-point window
//! covers `{j-1, j, j+1}`, a 4-point window `{j-1, j, j+1, j+2}` and a 5-point
//! window `{j-2, .., j+2}`; unused slots hold NaN so that an out-of-stencil
//! read can never go unnoticed.

use crate::error::{Result, WenoError};

/// Point values `f_{j-2} .. f_{j+2}`; slot 2 is the anchor `f_j`.
pub(crate) type Points = [f64; 5];

const JM2: usize = 0;
const JM1: usize = 1;
const J: usize = 2;
const JP1: usize = 3;
const JP2: usize = 4;

/// Ordered point values around the anchor node x_j.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StencilWindow {
    pts: Points,
    len: u8,
}

impl StencilWindow {
    /// Builds a window from values in physical index order.
    ///
    /// Length 3 is `{j-1, j, j+1}`, length 4 is `{j-1, j, j+1, j+2}` and
    /// length 5 is `{j-2, .., j+2}`.
    pub fn new(values: &[f64]) -> Result<Self> {
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(WenoError::NonFiniteInput(pos));
        }
        let mut pts = [f64::NAN; 5];
        match values.len() {
            3 => pts[JM1..=JP1].copy_from_slice(values),
            4 => pts[JM1..=JP2].copy_from_slice(values),
            5 => pts.copy_from_slice(values),
            n => return Err(WenoError::BadWindowLength(n)),
        }
        Ok(Self {
            pts,
            len: values.len() as u8,
        })
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Lowest and highest offset from j held by the window.
    pub fn span(&self) -> (i32, i32) {
        match self.len {
            3 => (-1, 1),
            4 => (-1, 2),
            _ => (-2, 2),
        }
    }

    /// `f_{j+offset}`.
    pub fn at(&self, offset: i32) -> Option<f64> {
        let (lo, hi) = self.span();
        (lo..=hi)
            .contains(&offset)
            .then(|| self.pts[(offset + 2) as usize])
    }

    /// Values in physical order, exactly as passed to [`StencilWindow::new`].
    pub fn values(&self) -> &[f64] {
        let (lo, hi) = self.span();
        &self.pts[(lo + 2) as usize..=(hi + 2) as usize]
    }

    pub(crate) fn points(&self) -> &Points {
        &self.pts
    }

    pub(crate) fn require(&self, what: &'static str, lo: i32, hi: i32) -> Result<()> {
        let (have_lo, have_hi) = self.span();
        if lo < have_lo || hi > have_hi {
            return Err(WenoError::WindowTooShort {
                what,
                len: self.len(),
                lo,
                hi,
            });
        }
        Ok(())
    }

    /// Window multiplied by `c`; used by scale-independence checks.
    pub fn scaled(&self, c: f64) -> Self {
        let mut pts = self.pts;
        pts.iter_mut().for_each(|v| *v *= c);
        Self { pts, len: self.len }
    }

    /// Slot order reversed.
    ///
    /// Applied to the downwind stencil of x_{j+1/2} in physical order this
    /// yields the same stencil mirrored about the interface, laid out as an
    /// upwind window.
    pub fn reversed(&self) -> Self {
        let mut v = self.values().to_vec();
        v.reverse();
        Self::new(&v).expect("reversal preserves length and finiteness")
    }
}

/// The smoothness indicators actually fed to a two-candidate weight formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaPair {
    pub beta0: f64,
    pub beta1: f64,
}

/// Undivided differences at x_j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Difference {
    /// `2f_{j+1} - 3f_j + f_{j-1}`
    First1,
    /// `(-f_{j+2} + 6f_{j+1} - 3f_j - 2f_{j-1}) / 6`
    First3,
    /// `f_{j+1} - 2f_j + f_{j-1}`
    Second2,
    /// `f_{j+2} - 2f_{j+1} + f_j`, centred at x_{j+1}
    Second2Right,
    /// `f_j - 2f_{j-1} + f_{j-2}`, centred at x_{j-1}
    Second2Left,
    /// `f_{j+2} - 3f_{j+1} + 3f_j - f_{j-1}`
    Third1,
    /// Five-point detector differences of orders 1..4.
    Central1,
    Central2,
    Central3,
    Central4,
}

impl Difference {
    pub fn span(self) -> (i32, i32) {
        use Difference::*;
        match self {
            First1 | Second2 => (-1, 1),
            First3 | Third1 => (-1, 2),
            Second2Right => (0, 2),
            Second2Left => (-2, 0),
            Central1 | Central2 | Central3 | Central4 => (-2, 2),
        }
    }

    fn name(self) -> &'static str {
        use Difference::*;
        match self {
            First1 => "delta(1)1",
            First3 => "delta(1)3",
            Second2 => "delta(2)2",
            Second2Right => "delta(2)2 at j+1",
            Second2Left => "delta(2)2 at j-1",
            Third1 => "delta(3)1",
            Central1 => "detector delta(1)",
            Central2 => "detector delta(2)",
            Central3 => "detector delta(3)",
            Central4 => "detector delta(4)",
        }
    }
}

/// Global smoothness indicator selection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TauKind {
    /// `|β1 - β0|`, the classic WENO3-Z indicator.
    Tau3,
    /// `|δ(1)1 · δ(3)1|`.
    Tau4,
    /// `c |(-f_{j+2} + 3f_{j+1} + 21f_j - 23f_{j-1}) · δ(3)1|` with c = 1.
    TauCp1,
    /// `c |(f_{j+1} - f_{j-1}) · δ(2)2|`.
    ProductCentral(f64),
    /// `c (δ(2)2)²`.
    SecondSquared(f64),
    /// `|δ(1)3 · δ(3)1|`.
    First3Third1,
    /// `|δ(2)2 · δ(3)1|`.
    Second2Third1,
    /// `(δ(3)1)²`.
    Third1Squared,
}

impl TauKind {
    pub fn span(self) -> (i32, i32) {
        match self {
            TauKind::Tau3 | TauKind::ProductCentral(_) | TauKind::SecondSquared(_) => (-1, 1),
            _ => (-1, 2),
        }
    }

    fn validate(self) -> Result<()> {
        match self {
            TauKind::ProductCentral(c) | TauKind::SecondSquared(c) if !(c > 0.0) => {
                Err(WenoError::ParameterOutOfRange {
                    name: "c_tau",
                    value: c,
                    range: "(0, inf)",
                })
            }
            _ => Ok(()),
        }
    }
}

#[inline]
pub(crate) fn diff(f: &Points, which: Difference) -> f64 {
    use Difference::*;
    match which {
        First1 => 2.0 * f[JP1] - 3.0 * f[J] + f[JM1],
        First3 => (-f[JP2] + 6.0 * f[JP1] - 3.0 * f[J] - 2.0 * f[JM1]) / 6.0,
        Second2 => f[JP1] - 2.0 * f[J] + f[JM1],
        Second2Right => f[JP2] - 2.0 * f[JP1] + f[J],
        Second2Left => f[J] - 2.0 * f[JM1] + f[JM2],
        Third1 => f[JP2] - 3.0 * f[JP1] + 3.0 * f[J] - f[JM1],
        Central1 => (f[JM2] - 8.0 * f[JM1] + 8.0 * f[JP1] - f[JP2]) / 12.0,
        Central2 => (f[JM2] - 16.0 * f[JM1] + 30.0 * f[J] - 16.0 * f[JP1] + f[JP2]) / 12.0,
        Central3 => (f[JM2] - 2.0 * f[JM1] + 2.0 * f[JP1] - f[JP2]) / 2.0,
        Central4 => f[JM2] - 4.0 * f[JM1] + 6.0 * f[J] - 4.0 * f[JP1] + f[JP2],
    }
}

#[inline]
pub(crate) fn beta_r2(f: &Points) -> BetaPair {
    let d0 = f[J] - f[JM1];
    let d1 = f[JP1] - f[J];
    BetaPair {
        beta0: d0 * d0,
        beta1: d1 * d1,
    }
}

/// `a/4 (3f_j - 4f_{j+1} + f_{j+2})² + b (f_j - 2f_{j+1} + f_{j+2})²`.
#[inline]
pub(crate) fn beta_right3(f: &Points, curvature_coeff: f64) -> f64 {
    let slope = 3.0 * f[J] - 4.0 * f[JP1] + f[JP2];
    let curv = f[J] - 2.0 * f[JP1] + f[JP2];
    0.25 * slope * slope + curvature_coeff * curv * curv
}

#[inline]
pub(crate) fn beta_r3(f: &Points) -> [f64; 3] {
    const C: f64 = 13.0 / 12.0;
    let a0 = f[JM2] - 2.0 * f[JM1] + f[J];
    let b0 = f[JM2] - 4.0 * f[JM1] + 3.0 * f[J];
    let a1 = f[JM1] - 2.0 * f[J] + f[JP1];
    let b1 = f[JM1] - f[JP1];
    [
        C * a0 * a0 + 0.25 * b0 * b0,
        C * a1 * a1 + 0.25 * b1 * b1,
        beta_right3(f, C),
    ]
}

#[inline]
pub(crate) fn tau_of(f: &Points, kind: TauKind) -> f64 {
    match kind {
        TauKind::Tau3 => {
            let b = beta_r2(f);
            (b.beta1 - b.beta0).abs()
        }
        TauKind::Tau4 => (diff(f, Difference::First1) * diff(f, Difference::Third1)).abs(),
        TauKind::TauCp1 => {
            let lead = -f[JP2] + 3.0 * f[JP1] + 21.0 * f[J] - 23.0 * f[JM1];
            (lead * diff(f, Difference::Third1)).abs()
        }
        TauKind::ProductCentral(c) => {
            c * ((f[JP1] - f[JM1]) * diff(f, Difference::Second2)).abs()
        }
        TauKind::SecondSquared(c) => {
            let d = diff(f, Difference::Second2);
            c * d * d
        }
        TauKind::First3Third1 => {
            (diff(f, Difference::First3) * diff(f, Difference::Third1)).abs()
        }
        TauKind::Second2Third1 => {
            (diff(f, Difference::Second2) * diff(f, Difference::Third1)).abs()
        }
        TauKind::Third1Squared => {
            let d = diff(f, Difference::Third1);
            d * d
        }
    }
}

/// Extension applied to the base two-candidate indicators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EsVariant {
    /// β0 extended with `δ(2)2` at j; `c_beta0` is supplied by the detector.
    Es2 { c_beta0: f64 },
    /// β0 extended with `δ(2)2` at j-1, fixed `c_beta0`.
    Es3 { c_beta0: f64 },
}

pub const C_BETA1: f64 = 0.15;
pub const ES3_C_BETA0: f64 = 0.6;

#[inline]
pub(crate) fn beta_star(f: &Points, variant: EsVariant, c_beta1: f64) -> BetaPair {
    let base = beta_r2(f);
    let right = diff(f, Difference::Second2Right);
    let (c0, d) = match variant {
        EsVariant::Es2 { c_beta0 } => (c_beta0, diff(f, Difference::Second2)),
        EsVariant::Es3 { c_beta0 } => (c_beta0, diff(f, Difference::Second2Left)),
    };
    BetaPair {
        beta0: base.beta0 + c0 * d * d,
        beta1: base.beta1 + c_beta1 * right * right,
    }
}

/// Exact undivided difference `which` on the window.
pub fn undivided_diff(window: &StencilWindow, which: Difference) -> Result<f64> {
    let (lo, hi) = which.span();
    window.require(which.name(), lo, hi)?;
    Ok(diff(window.points(), which))
}

/// Jiang–Shu indicators of the two second-order candidates:
/// `((f_j - f_{j-1})², (f_{j+1} - f_j)²)`.
pub fn beta_js_r2(window: &StencilWindow) -> Result<BetaPair> {
    window.require("beta_js_r2", -1, 1)?;
    Ok(beta_r2(window.points()))
}

/// Third-order Jiang–Shu indicator of the right-shifted stencil
/// `{j, j+1, j+2}`.
///
/// The argument is the 3-point stencil itself: `(f_j, f_{j+1}, f_{j+2})`.
pub fn beta3_k2(stencil: [f64; 3]) -> f64 {
    let f = [f64::NAN, f64::NAN, stencil[0], stencil[1], stencil[2]];
    beta_right3(&f, 13.0 / 12.0)
}

/// The three fifth-order Jiang–Shu indicators on `{j-2, .., j+2}`.
pub fn beta_js_r3(window: &StencilWindow) -> Result<[f64; 3]> {
    window.require("beta_js_r3", -2, 2)?;
    Ok(beta_r3(window.points()))
}

/// Extended indicators of the ES2/ES3 schemes, with `c_beta1` fixed at 0.15.
pub fn beta_star_es(window: &StencilWindow, variant: EsVariant) -> Result<BetaPair> {
    beta_star_es_with(window, variant, C_BETA1)
}

/// As [`beta_star_es`] with an explicit `c_beta1`.
pub fn beta_star_es_with(
    window: &StencilWindow,
    variant: EsVariant,
    c_beta1: f64,
) -> Result<BetaPair> {
    let (c0, lo) = match variant {
        EsVariant::Es2 { c_beta0 } => (c_beta0, -1),
        EsVariant::Es3 { c_beta0 } => (c_beta0, -2),
    };
    if !(0.0..=1.0).contains(&c0) {
        return Err(WenoError::ParameterOutOfRange {
            name: "c_beta0",
            value: c0,
            range: "[0, 1]",
        });
    }
    if !(c_beta1 >= 0.0) {
        return Err(WenoError::ParameterOutOfRange {
            name: "c_beta1",
            value: c_beta1,
            range: "[0, inf)",
        });
    }
    window.require("beta_star_es", lo, 2)?;
    Ok(beta_star(window.points(), variant, c_beta1))
}

/// Global smoothness indicator of the requested kind.
pub fn tau(window: &StencilWindow, kind: TauKind) -> Result<f64> {
    kind.validate()?;
    let (lo, hi) = kind.span();
    window.require("tau", lo, hi)?;
    Ok(tau_of(window.points(), kind))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[f64]) -> StencilWindow {
        StencilWindow::new(v).unwrap()
    }

    const ALL_DIFFS: [Difference; 10] = [
        Difference::First1,
        Difference::First3,
        Difference::Second2,
        Difference::Second2Right,
        Difference::Second2Left,
        Difference::Third1,
        Difference::Central1,
        Difference::Central2,
        Difference::Central3,
        Difference::Central4,
    ];

    #[test]
    fn window_layout() {
        let win = w(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(win.at(-1), Some(1.0));
        assert_eq!(win.at(2), Some(4.0));
        assert_eq!(win.at(-2), None);
        assert_eq!(win.values(), &[1.0, 2.0, 3.0, 4.0]);
        assert!(matches!(
            StencilWindow::new(&[1.0, 2.0]),
            Err(WenoError::BadWindowLength(2))
        ));
        assert!(matches!(
            StencilWindow::new(&[1.0, f64::NAN, 2.0]),
            Err(WenoError::NonFiniteInput(1))
        ));
    }

    #[test]
    fn constants_annihilated() {
        let c = w(&[3.5; 5]);
        for d in ALL_DIFFS {
            assert_eq!(undivided_diff(&c, d).unwrap(), 0.0, "{d:?}");
        }
    }

    #[test]
    fn linear_detector_differences() {
        let lin = w(&[-2.0, -1.0, 0.0, 1.0, 2.0]);
        assert_eq!(undivided_diff(&lin, Difference::Central1).unwrap(), 1.0);
        assert_eq!(undivided_diff(&lin, Difference::Central2).unwrap(), 0.0);
        assert_eq!(undivided_diff(&lin, Difference::Central3).unwrap(), 0.0);
        assert_eq!(undivided_diff(&lin, Difference::Central4).unwrap(), 0.0);
    }

    #[test]
    fn cubic_differences() {
        let cubic = w(&[-1.0, 0.0, 1.0, 8.0]);
        assert_eq!(undivided_diff(&cubic, Difference::Third1).unwrap(), 6.0);
        assert_eq!(undivided_diff(&cubic, Difference::First1).unwrap(), 1.0);
    }

    #[test]
    fn too_short_window_is_an_error() {
        let short = w(&[0.0, 1.0, 2.0]);
        assert!(matches!(
            undivided_diff(&short, Difference::Third1),
            Err(WenoError::WindowTooShort { .. })
        ));
        assert!(tau(&short, TauKind::Tau4).is_err());
        assert!(tau(&short, TauKind::Tau3).is_ok());
        let four = w(&[0.0, 1.0, 2.0, 3.0]);
        assert!(beta_star_es(&four, EsVariant::Es3 { c_beta0: 0.6 }).is_err());
        assert!(beta_star_es(&four, EsVariant::Es2 { c_beta0: 0.6 }).is_ok());
    }

    #[test]
    fn beta_r2_examples() {
        let b = beta_js_r2(&w(&[2.0, 2.0, 2.0])).unwrap();
        assert_eq!((b.beta0, b.beta1), (0.0, 0.0));
        let b = beta_js_r2(&w(&[0.0, 1.0, 2.0])).unwrap();
        assert_eq!((b.beta0, b.beta1), (1.0, 1.0));
        let b = beta_js_r2(&w(&[1.0, 2.0, 4.0])).unwrap();
        assert_eq!((b.beta0, b.beta1), (1.0, 4.0));
    }

    #[test]
    fn beta3_k2_examples() {
        assert_eq!(beta3_k2([5.0, 5.0, 5.0]), 0.0);
        assert_eq!(beta3_k2([0.0, 1.0, 2.0]), 1.0);
        assert!((beta3_k2([0.0, 1.0, 4.0]) - 13.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn beta_star_examples() {
        let c = w(&[1.0; 5]);
        for v in [EsVariant::Es2 { c_beta0: 0.3 }, EsVariant::Es3 { c_beta0: 0.6 }] {
            let b = beta_star_es(&c, v).unwrap();
            assert_eq!((b.beta0, b.beta1), (0.0, 0.0));
        }
        // {f_{j-2}, f_{j-1}, f_j} = (0, 1, 3)
        let b = beta_star_es(&w(&[0.0, 1.0, 3.0, 3.0, 3.0]), EsVariant::Es3 { c_beta0: 0.6 })
            .unwrap();
        assert!((b.beta0 - 4.6).abs() < 1e-14);
        // {f_j, f_{j+1}, f_{j+2}} = (0, 1, 3)
        let b = beta_star_es(&w(&[0.0, 0.0, 0.0, 1.0, 3.0]), EsVariant::Es3 { c_beta0: 0.6 })
            .unwrap();
        assert!((b.beta1 - 1.15).abs() < 1e-14);

        assert!(beta_star_es(&c, EsVariant::Es2 { c_beta0: 1.5 }).is_err());
        assert!(beta_star_es(&c, EsVariant::Es2 { c_beta0: -0.1 }).is_err());
    }

    #[test]
    fn beta_star_degenerates_to_js() {
        let win = w(&[0.3, -1.2, 0.7, 2.5, -0.4]);
        let js = beta_js_r2(&win).unwrap();
        for v in [EsVariant::Es2 { c_beta0: 0.0 }, EsVariant::Es3 { c_beta0: 0.0 }] {
            assert_eq!(beta_star_es_with(&win, v, 0.0).unwrap(), js);
        }
    }

    #[test]
    fn tau_examples() {
        let lin = w(&[-2.0, -1.0, 0.0, 1.0, 2.0]);
        for k in [
            TauKind::Tau3,
            TauKind::Tau4,
            TauKind::TauCp1,
            TauKind::ProductCentral(1.0),
            TauKind::SecondSquared(2.0 / 12.0),
            TauKind::First3Third1,
            TauKind::Second2Third1,
            TauKind::Third1Squared,
        ] {
            assert_eq!(tau(&lin, k).unwrap(), 0.0, "{k:?}");
        }
        assert_eq!(tau(&w(&[1.0, 0.0, 1.0, 4.0]), TauKind::Tau4).unwrap(), 0.0);
        assert_eq!(tau(&w(&[-1.0, 0.0, 1.0, 8.0]), TauKind::Tau4).unwrap(), 6.0);
        assert!(tau(&lin, TauKind::SecondSquared(0.0)).is_err());
    }

    #[test]
    fn r3_indicators_match_right_candidate() {
        let win = w(&[0.1, 0.4, -0.2, 0.9, 1.3]);
        let b = beta_js_r3(&win).unwrap();
        assert_eq!(b[2], beta3_k2([-0.2, 0.9, 1.3]));
    }

    #[test]
    fn reversal() {
        let win = w(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(win.reversed().values(), &[4.0, 3.0, 2.0, 1.0]);
    }
}
