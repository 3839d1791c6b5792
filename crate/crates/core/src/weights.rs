//! Nonlinear weights for the third-order WENO-Z family.
//!
//! Every scheme turns the smoothness indicators of [`crate::kernels`] into
//! non-normalized weights α_k and normalizes them. The schemes differ in
//! which β and τ they use and in how α is formed:
//!
//! | scheme | β                          | τ                 | α                              |
//! |--------|----------------------------|-------------------|--------------------------------|
//! | JS3    | β0, β1                     | -                 | d / (ε + β)^p                  |
//! | Z3     | β0, β1                     | τ3                | d (1 + c_α (τ/(β+ε))^p)        |
//! | NP3..  | β0, β1                     | c (δ(2)2)² etc.   | d (1 + τ^p1 / (β+ε)^p2)        |
//! | ZM3    | β0, β(3)2                  | τ_cp1             | d (1 + c_α M_k(τ/(β+ε)))       |
//! | ES2    | β0*, β1* (adaptive c_β0)   | τ4                | d (1 + c_α (τ/(β+ε))^p)        |
//! | ES3    | β0*, β1* (fixed c_β0)      | τ4                | d (1 + c_α (τ/(β+ε))^p)        |
//! | JS5    | fifth-order β0..β2         | -                 | d / (ε + β)^p                  |

use std::fmt;
use std::str::FromStr;

use crate::error::{Result, WenoError};
use crate::kernels::{
    beta_r2, beta_r3, beta_right3, beta_star, diff, tau_of, Difference, EsVariant, Points,
    StencilWindow, TauKind,
};

pub const D3: [f64; 2] = [1.0 / 3.0, 2.0 / 3.0];
pub const D5: [f64; 3] = [0.1, 0.6, 0.3];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeId {
    Js3,
    Z3,
    Np3,
    F3,
    Nn3,
    Pz3,
    Zm3,
    Es2,
    Es3,
    Js5,
}

impl SchemeId {
    pub const ALL: [SchemeId; 10] = [
        SchemeId::Js3,
        SchemeId::Z3,
        SchemeId::Np3,
        SchemeId::F3,
        SchemeId::Nn3,
        SchemeId::Pz3,
        SchemeId::Zm3,
        SchemeId::Es2,
        SchemeId::Es3,
        SchemeId::Js5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeId::Js3 => "js3",
            SchemeId::Z3 => "z3",
            SchemeId::Np3 => "np3",
            SchemeId::F3 => "f3",
            SchemeId::Nn3 => "nn3",
            SchemeId::Pz3 => "pz3",
            SchemeId::Zm3 => "zm3",
            SchemeId::Es2 => "es2",
            SchemeId::Es3 => "es3",
            SchemeId::Js5 => "js5",
        }
    }

    pub fn is_third_order(self) -> bool {
        self != SchemeId::Js5
    }

    fn valid_names() -> String {
        Self::ALL.map(Self::name).join(", ")
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeId {
    type Err = WenoError;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|id| id.name() == lower)
            .ok_or_else(|| WenoError::UnknownScheme {
                name: s.to_string(),
                valid: Self::valid_names(),
            })
    }
}

/// How β1 is extended onto `{j, j+1, j+2}` in the Z3-based experiments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Beta1Extension {
    None,
    /// `β1 + c (f_{j+2} - 2f_{j+1} + f_j)²`
    Star(f64),
    /// `1/4 (3f_j - 4f_{j+1} + f_{j+2})² + c (f_j - 2f_{j+1} + f_{j+2})²`
    Alt(f64),
}

/// Rational mapping parameters `{c1, c2, c3}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapParams {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

pub const MAP_D0: MapParams = MapParams {
    c1: 1.2,
    c2: 0.1,
    c3: 55.0,
};
pub const MAP_D1: MapParams = MapParams {
    c1: 1.2,
    c2: 0.1,
    c3: 35.0,
};

/// Every tunable constant of the family. Fields a scheme does not read are
/// ignored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeParams {
    pub epsilon: f64,
    pub c_alpha: f64,
    /// Integer exponent of JS and Z-type weights.
    pub p: i32,
    /// Exponents of the scale-dependent family `τ^p1 / (β+ε)^p2`.
    pub p1: f64,
    pub p2: f64,
    pub tau: TauKind,
    pub beta1_ext: Beta1Extension,
    pub c_beta1: f64,
    /// Fixed c_β0 of ES3.
    pub c_beta0: f64,
    /// ES2 thresholds c_β0^(0), c_β0^(1).
    pub c_beta0_lo: f64,
    pub c_beta0_hi: f64,
    pub p_sigma: f64,
    pub kappa_c: f64,
    pub psi_c: f64,
    pub eps_detector: f64,
    pub eps_psi: f64,
    pub map: [MapParams; 2],
}

impl SchemeParams {
    const Z_BASE: SchemeParams = SchemeParams {
        epsilon: 1e-40,
        c_alpha: 1.0,
        p: 2,
        p1: 1.0,
        p2: 1.0,
        tau: TauKind::Tau3,
        beta1_ext: Beta1Extension::None,
        c_beta1: 0.15,
        c_beta0: 0.6,
        c_beta0_lo: 1e-8,
        c_beta0_hi: 1.0,
        p_sigma: 2.0,
        kappa_c: 0.75,
        psi_c: 0.3,
        eps_detector: 1e-3,
        eps_psi: 1e-40,
        map: [MAP_D0, MAP_D1],
    };

    pub fn defaults(id: SchemeId) -> Self {
        let z = Self::Z_BASE;
        match id {
            SchemeId::Js3 | SchemeId::Js5 => SchemeParams { epsilon: 1e-6, ..z },
            SchemeId::Z3 => z,
            SchemeId::Np3 => SchemeParams {
                p1: 1.5,
                p2: 1.0,
                tau: TauKind::SecondSquared(10.0 / 12.0),
                ..z
            },
            SchemeId::F3 => SchemeParams {
                p1: 1.5,
                p2: 1.0,
                tau: TauKind::SecondSquared(2.0 / 12.0),
                ..z
            },
            SchemeId::Nn3 => SchemeParams {
                p1: 1.0,
                p2: 0.5,
                tau: TauKind::SecondSquared(10.0 / 12.0),
                ..z
            },
            SchemeId::Pz3 => SchemeParams {
                p1: 1.0,
                p2: 0.5,
                tau: TauKind::ProductCentral(1.0),
                ..z
            },
            SchemeId::Zm3 => SchemeParams {
                tau: TauKind::TauCp1,
                ..z
            },
            SchemeId::Es2 => SchemeParams {
                c_alpha: 0.15,
                tau: TauKind::Tau4,
                ..z
            },
            SchemeId::Es3 => SchemeParams {
                c_alpha: 0.4,
                tau: TauKind::Tau4,
                ..z
            },
        }
    }
}

/// A reconstruction scheme: identifier plus its parameter record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeSpec {
    pub id: SchemeId,
    pub params: SchemeParams,
}

impl SchemeSpec {
    pub fn new(id: SchemeId) -> Self {
        Self {
            id,
            params: SchemeParams::defaults(id),
        }
    }

    /// Reference scheme of the robustness experiments:
    /// `α = d (1 + 0.02 (τ/β)²)` with the given τ and β1 extension.
    pub fn variant(tau: TauKind, beta1_ext: Beta1Extension) -> Self {
        let mut spec = Self::new(SchemeId::Z3);
        spec.params.c_alpha = 0.02;
        spec.params.tau = tau;
        spec.params.beta1_ext = beta1_ext;
        spec
    }

    /// Number of candidate sub-stencils.
    pub fn candidates(&self) -> usize {
        if self.id == SchemeId::Js5 {
            3
        } else {
            2
        }
    }

    /// Offsets from j read by the upwind reconstruction at x_{j+1/2}.
    pub fn span(&self) -> (i32, i32) {
        let p = &self.params;
        let tau = p.tau.span();
        match self.id {
            SchemeId::Js3 => (-1, 1),
            SchemeId::Z3 => {
                let hi = match p.beta1_ext {
                    Beta1Extension::None => tau.1,
                    _ => 2,
                };
                (-1, hi.max(1))
            }
            SchemeId::Np3 | SchemeId::F3 | SchemeId::Nn3 | SchemeId::Pz3 => (-1, tau.1.max(1)),
            SchemeId::Zm3 => (-1, 2),
            SchemeId::Es2 | SchemeId::Es3 | SchemeId::Js5 => (-2, 2),
        }
    }

    /// Number of points in the scheme's stencil.
    pub fn stencil_len(&self) -> usize {
        let (lo, hi) = self.span();
        (hi - lo + 1) as usize
    }

    /// Parses `name` or `name:key=value,key=value`.
    ///
    /// Recognized keys: `c_alpha`, `p`, `p1`, `p2`, `eps`, `tau`, `beta1`,
    /// `c_beta1`, `c_beta0`, `c_beta0_lo`, `c_beta0_hi`, `p_sigma`,
    /// `kappa_c`, `psi_c`, `eps_detector`, `eps_psi`. `tau` takes
    /// `tau3|tau4|cp1|d13d31|d22d31|d31sq|prodc:<c>|d2sq:<c>`; `beta1` takes
    /// `none|star:<c>|alt:<c>`.
    pub fn parse(text: &str) -> Result<Self> {
        let (name, opts) = match text.split_once(':') {
            Some((n, o)) => (n, Some(o)),
            None => (text, None),
        };
        let mut spec = Self::new(name.parse()?);
        if let Some(opts) = opts {
            for item in opts.split(',').filter(|s| !s.trim().is_empty()) {
                let (key, value) = item
                    .split_once('=')
                    .ok_or_else(|| WenoError::BadSchemeOption(item.to_string()))?;
                spec.set_option(key.trim(), value.trim())?;
            }
        }
        Ok(spec)
    }

    fn set_option(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = || WenoError::BadSchemeOption(format!("{key}={value}"));
        let num = || value.parse::<f64>().map_err(|_| bad());
        let p = &mut self.params;
        match key {
            "c_alpha" => p.c_alpha = num()?,
            "p" => p.p = value.parse().map_err(|_| bad())?,
            "p1" => p.p1 = num()?,
            "p2" => p.p2 = num()?,
            "eps" => p.epsilon = num()?,
            "c_beta1" => p.c_beta1 = num()?,
            "c_beta0" => p.c_beta0 = num()?,
            "c_beta0_lo" => p.c_beta0_lo = num()?,
            "c_beta0_hi" => p.c_beta0_hi = num()?,
            "p_sigma" => p.p_sigma = num()?,
            "kappa_c" => p.kappa_c = num()?,
            "psi_c" => p.psi_c = num()?,
            "eps_detector" => p.eps_detector = num()?,
            "eps_psi" => p.eps_psi = num()?,
            "tau" => p.tau = parse_tau(value).ok_or_else(bad)?,
            "beta1" => p.beta1_ext = parse_beta1(value).ok_or_else(bad)?,
            _ => return Err(bad()),
        }
        Ok(())
    }

    /// Normalized weights at one interface.
    pub fn weights(&self, window: &StencilWindow) -> Result<WeightSet> {
        compute_weights(window, self)
    }
}

impl fmt::Display for SchemeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id)?;
        if self.params != SchemeParams::defaults(self.id) {
            write!(f, "*")?;
        }
        Ok(())
    }
}

pub(crate) fn parse_tau(s: &str) -> Option<TauKind> {
    let (name, arg) = match s.split_once(':') {
        Some((n, a)) => (n, Some(a.parse::<f64>().ok()?)),
        None => (s, None),
    };
    Some(match (name, arg) {
        ("tau3", None) => TauKind::Tau3,
        ("tau4", None) => TauKind::Tau4,
        ("cp1", None) => TauKind::TauCp1,
        ("d13d31", None) => TauKind::First3Third1,
        ("d22d31", None) => TauKind::Second2Third1,
        ("d31sq", None) => TauKind::Third1Squared,
        ("prodc", Some(c)) if c > 0.0 => TauKind::ProductCentral(c),
        ("d2sq", Some(c)) if c > 0.0 => TauKind::SecondSquared(c),
        _ => return None,
    })
}

pub(crate) fn parse_beta1(s: &str) -> Option<Beta1Extension> {
    if s == "none" {
        return Some(Beta1Extension::None);
    }
    let (name, arg) = s.split_once(':')?;
    let c = parse_fraction(arg)?;
    match name {
        "star" => Some(Beta1Extension::Star(c)),
        "alt" => Some(Beta1Extension::Alt(c)),
        _ => None,
    }
}

/// `0.15`, `13/12`.
fn parse_fraction(s: &str) -> Option<f64> {
    match s.split_once('/') {
        Some((n, d)) => Some(n.trim().parse::<f64>().ok()? / d.trim().parse::<f64>().ok()?),
        None => s.trim().parse().ok(),
    }
}

/// Normalized nonlinear weights at one interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightSet {
    omega: [f64; 3],
    d: [f64; 3],
    count: usize,
    /// Discontinuity adaptor of ES2.
    pub sigma: Option<f64>,
}

impl WeightSet {
    pub fn omega(&self) -> &[f64] {
        &self.omega[..self.count]
    }

    pub fn linear(&self) -> &[f64] {
        &self.d[..self.count]
    }
}

/// `d (1 + c_α (τ / (β + ε))^p)`.
#[inline]
pub fn alpha_z(d: f64, tau: f64, beta: f64, c_alpha: f64, p: i32, eps: f64) -> f64 {
    d * (1.0 + c_alpha * (tau / (beta + eps)).powi(p))
}

/// `d (1 + τ^p1 / (β + ε)^p2)`; scale-dependent unless `p1 == p2`.
#[inline]
pub fn alpha_table1(d: f64, tau: f64, beta: f64, p1: f64, p2: f64, eps: f64) -> f64 {
    d * (1.0 + tau.powf(p1) / (beta + eps).powf(p2))
}

/// Rational mapping with `M(0) = M'(0) = 0` and `M(c3) = c3`, `M'(c3) = 1`;
/// identity beyond `c3`.
#[inline]
pub fn map_rational(w: f64, params: MapParams) -> f64 {
    let MapParams { c1, c2, c3 } = params;
    if w > c3 {
        return w;
    }
    let gap = c3 - w;
    let gap2 = gap * gap;
    w * w / (w + c2 * w * gap2 + c1 * gap2)
}

/// Reduced-wavenumber detector κ′ on the five-point window `{j-2, .., j+2}`.
pub fn detector_kappa(window: &StencilWindow) -> Result<f64> {
    window.require("detector_kappa", -2, 2)?;
    Ok(kappa(window.points(), 1e-3))
}

#[inline]
pub(crate) fn kappa(f: &Points, eps: f64) -> f64 {
    let d1 = diff(f, Difference::Central1).abs();
    let d2 = diff(f, Difference::Central2).abs();
    let d3 = diff(f, Difference::Central3).abs();
    let d4 = diff(f, Difference::Central4).abs();
    ((d3 + d4) / (d1 + d2 + eps)).sqrt()
}

/// `ψ = min(1, ψ_z / ψ_c)` with `ψ_z = 1 - |β1 - β0| / (β0 + β1 + ε_ψ)`,
/// using the default `ψ_c = 0.3`, `ε_ψ = 1e-40`.
pub fn detector_psi(beta0: f64, beta1: f64) -> f64 {
    psi(beta0, beta1, 0.3, 1e-40)
}

#[inline]
pub(crate) fn psi(beta0: f64, beta1: f64, psi_c: f64, eps_psi: f64) -> f64 {
    let psi_z = 1.0 - (beta1 - beta0).abs() / (beta0 + beta1 + eps_psi);
    (psi_z / psi_c).clamp(0.0, 1.0)
}

/// sign with `sign(0) = 0`.
#[inline]
fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Discontinuity adaptor: 1 below the threshold, ψ above, `(1+ψ)/2` at it.
#[inline]
pub fn detector_sigma(kappa: f64, psi: f64, kappa_c: f64) -> f64 {
    let s = sign(kappa_c - kappa);
    0.5 * (1.0 + s) + 0.5 * (1.0 - s) * psi
}

/// Adaptive c_β0 between 1e-8 (discontinuity) and 1 (smooth), `p_σ = 2`.
pub fn adaptive_cbeta0(sigma: f64) -> f64 {
    cbeta0(sigma, 1e-8, 1.0, 2.0)
}

#[inline]
pub(crate) fn cbeta0(sigma: f64, lo: f64, hi: f64, p_sigma: f64) -> f64 {
    let s = if p_sigma == 2.0 {
        sigma * sigma
    } else {
        sigma.powf(p_sigma)
    };
    lo + s * (hi - lo)
}

#[inline]
fn normalize2(a0: f64, a1: f64) -> [f64; 3] {
    let s = a0 + a1;
    [a0 / s, a1 / s, 0.0]
}

/// Hot-path weights on a full five-point window. Non-finite values are left
/// in place for the caller to detect.
#[inline]
pub(crate) fn weights_of(f: &Points, spec: &SchemeSpec) -> ([f64; 3], Option<f64>) {
    let p = &spec.params;
    let [d0, d1] = D3;
    match spec.id {
        SchemeId::Js3 => {
            let b = beta_r2(f);
            let a0 = d0 / (p.epsilon + b.beta0).powi(p.p);
            let a1 = d1 / (p.epsilon + b.beta1).powi(p.p);
            (normalize2(a0, a1), None)
        }
        SchemeId::Z3 => {
            let mut b = beta_r2(f);
            let tau = tau_of(f, p.tau);
            match p.beta1_ext {
                Beta1Extension::None => {}
                Beta1Extension::Star(c) => {
                    let r = diff(f, Difference::Second2Right);
                    b.beta1 += c * r * r;
                }
                Beta1Extension::Alt(c) => b.beta1 = beta_right3(f, c),
            }
            let a0 = alpha_z(d0, tau, b.beta0, p.c_alpha, p.p, p.epsilon);
            let a1 = alpha_z(d1, tau, b.beta1, p.c_alpha, p.p, p.epsilon);
            (normalize2(a0, a1), None)
        }
        SchemeId::Np3 | SchemeId::F3 | SchemeId::Nn3 | SchemeId::Pz3 => {
            let b = beta_r2(f);
            let tau = tau_of(f, p.tau);
            let a0 = alpha_table1(d0, tau, b.beta0, p.p1, p.p2, p.epsilon);
            let a1 = alpha_table1(d1, tau, b.beta1, p.p1, p.p2, p.epsilon);
            (normalize2(a0, a1), None)
        }
        SchemeId::Zm3 => {
            let b0 = beta_r2(f).beta0;
            let b1 = beta_right3(f, 13.0 / 12.0);
            let tau = tau_of(f, p.tau);
            let a0 = d0 * (1.0 + p.c_alpha * map_rational(tau / (b0 + p.epsilon), p.map[0]));
            let a1 = d1 * (1.0 + p.c_alpha * map_rational(tau / (b1 + p.epsilon), p.map[1]));
            (normalize2(a0, a1), None)
        }
        SchemeId::Es2 => {
            let b = beta_r2(f);
            let k = kappa(f, p.eps_detector);
            let ps = psi(b.beta0, b.beta1, p.psi_c, p.eps_psi);
            let sigma = detector_sigma(k, ps, p.kappa_c);
            let c_beta0 = cbeta0(sigma, p.c_beta0_lo, p.c_beta0_hi, p.p_sigma);
            let bs = beta_star(f, EsVariant::Es2 { c_beta0 }, p.c_beta1);
            let tau = tau_of(f, p.tau);
            let a0 = alpha_z(d0, tau, bs.beta0, p.c_alpha, p.p, p.epsilon);
            let a1 = alpha_z(d1, tau, bs.beta1, p.c_alpha, p.p, p.epsilon);
            (normalize2(a0, a1), Some(sigma))
        }
        SchemeId::Es3 => {
            let bs = beta_star(f, EsVariant::Es3 { c_beta0: p.c_beta0 }, p.c_beta1);
            let tau = tau_of(f, p.tau);
            let a0 = alpha_z(d0, tau, bs.beta0, p.c_alpha, p.p, p.epsilon);
            let a1 = alpha_z(d1, tau, bs.beta1, p.c_alpha, p.p, p.epsilon);
            (normalize2(a0, a1), None)
        }
        SchemeId::Js5 => {
            let b = beta_r3(f);
            let a: [f64; 3] = std::array::from_fn(|k| D5[k] / (p.epsilon + b[k]).powi(p.p));
            let s = a[0] + a[1] + a[2];
            ([a[0] / s, a[1] / s, a[2] / s], None)
        }
    }
}

fn check_params(spec: &SchemeSpec) -> Result<()> {
    let p = &spec.params;
    let out = |name, value, range| {
        Err(WenoError::ParameterOutOfRange { name, value, range })
    };
    if !(p.epsilon > 0.0) {
        return out("eps", p.epsilon, "(0, inf)");
    }
    if spec.id == SchemeId::Es2 {
        if !(0.0 <= p.c_beta0_lo && p.c_beta0_lo <= p.c_beta0_hi && p.c_beta0_hi <= 1.0) {
            return out("c_beta0_hi", p.c_beta0_hi, "0 <= c_beta0_lo <= c_beta0_hi <= 1");
        }
        if !(p.psi_c > 0.0) {
            return out("psi_c", p.psi_c, "(0, inf)");
        }
    }
    if spec.id == SchemeId::Es3 && !(0.0..=1.0).contains(&p.c_beta0) {
        return out("c_beta0", p.c_beta0, "[0, 1]");
    }
    Ok(())
}

/// Normalized nonlinear weights of `spec` for the upwind reconstruction at
/// x_{j+1/2}.
///
/// The window must cover the scheme's stencil (see [`SchemeSpec::span`]).
pub fn compute_weights(window: &StencilWindow, spec: &SchemeSpec) -> Result<WeightSet> {
    check_params(spec)?;
    let (lo, hi) = spec.span();
    window.require("compute_weights", lo, hi)?;
    let (omega, sigma) = weights_of(window.points(), spec);
    let count = spec.candidates();
    if omega[..count].iter().any(|w| !w.is_finite()) {
        return Err(WenoError::NonFiniteOutput {
            scheme: spec.id.to_string(),
            what: "weights",
        });
    }
    let d = if count == 3 { D5 } else { [D3[0], D3[1], 0.0] };
    Ok(WeightSet {
        omega,
        d,
        count,
        sigma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[f64]) -> StencilWindow {
        StencilWindow::new(v).unwrap()
    }

    #[test]
    fn alpha_z_examples() {
        assert_eq!(alpha_z(0.25, 0.0, 3.0, 1.0, 2, 1e-40), 0.25);
        assert!((alpha_z(2.0 / 3.0, 1.0, 1.0, 1.0, 2, 0.0) - 4.0 / 3.0).abs() < 1e-15);
        let a = alpha_z(1.0 / 3.0, 4.0, 1.0, 0.15, 2, 1e-40);
        assert!((a - (1.0 + 0.15 * 16.0) / 3.0).abs() < 1e-15);
    }

    #[test]
    fn alpha_table1_examples() {
        assert_eq!(alpha_table1(0.5, 0.0, 2.0, 1.5, 1.0, 1e-40), 0.5);
        // c_tau2 = 2/12 with second difference sqrt(1.5) gives tau = 0.25.
        let tau = 2.0 / 12.0 * 1.5;
        assert!((tau - 0.25_f64).abs() < 1e-15);
        let a = alpha_table1(2.0 / 3.0, tau, 1.0, 1.5, 1.0, 0.0);
        assert!((a - 2.0 / 3.0 * 1.125).abs() < 1e-14);
        let a = alpha_table1(1.0, 1.0, 4.0, 1.0, 0.5, 0.0);
        assert_eq!(a, 1.5);
    }

    #[test]
    fn map_fixed_points() {
        for m in [MAP_D0, MAP_D1] {
            assert_eq!(map_rational(0.0, m), 0.0);
            assert!((map_rational(m.c3, m) - m.c3).abs() <= 1e-12);
            assert_eq!(map_rational(100.0, m), 100.0);
        }
        assert_eq!(map_rational(55.0, MAP_D0), 55.0);
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(detector_kappa(&w(&[-2.0, -1.0, 0.0, 1.0, 2.0])).unwrap(), 0.0);
        assert_eq!(detector_kappa(&w(&[4.0; 5])).unwrap(), 0.0);
        let k = detector_kappa(&w(&[0.0, 0.0, 0.0, 1.0, 1.0])).unwrap();
        let expect = (3.5_f64 / (7.0 / 12.0 + 5.0 / 4.0 + 1e-3)).sqrt();
        assert!((k - expect).abs() < 1e-15);
        assert!((k - 1.381).abs() < 1e-3);
        assert!(detector_kappa(&w(&[0.0, 1.0, 2.0, 3.0])).is_err());
    }

    #[test]
    fn psi_examples() {
        assert_eq!(detector_psi(0.7, 0.7), 1.0);
        assert_eq!(detector_psi(0.0, 1.0), 0.0);
        let psi_z = 1.0 - 0.2 / 1.8;
        assert!((psi_z - 0.888_888_888_888_889_f64).abs() < 1e-15);
        assert_eq!(detector_psi(0.8, 1.0), 1.0);
        assert!((detector_psi(0.1, 1.0) - (1.0 - 0.9 / 1.1) / 0.3).abs() < 1e-15);
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(detector_sigma(0.5, 0.2, 0.75), 1.0);
        assert_eq!(detector_sigma(1.381, 0.0, 0.75), 0.0);
        assert_eq!(detector_sigma(0.75, 0.0, 0.75), 0.5);
        assert_eq!(detector_sigma(2.0, 0.4, 0.75), 0.4);
    }

    #[test]
    fn cbeta0_examples() {
        assert_eq!(adaptive_cbeta0(0.0), 1e-8);
        assert_eq!(adaptive_cbeta0(1.0), 1.0);
        assert!((adaptive_cbeta0(0.5) - (1e-8 + 0.25 * (1.0 - 1e-8))).abs() < 1e-16);
        let mut prev = adaptive_cbeta0(0.0);
        for i in 1..=100 {
            let c = adaptive_cbeta0(i as f64 / 100.0);
            assert!(c >= prev && (1e-8..=1.0).contains(&c));
            prev = c;
        }
    }

    #[test]
    fn linear_data_gives_linear_weights() {
        let lin = w(&[-2.0, -1.0, 0.0, 1.0, 2.0]);
        for id in [SchemeId::Z3, SchemeId::Zm3, SchemeId::Es2, SchemeId::Es3] {
            let ws = compute_weights(&lin, &SchemeSpec::new(id)).unwrap();
            assert_eq!(ws.omega(), &D3[..], "{id}");
        }
    }

    #[test]
    fn es2_step_is_eno() {
        let ws = compute_weights(&w(&[0.0, 0.0, 0.0, 1.0, 1.0]), &SchemeSpec::new(SchemeId::Es2))
            .unwrap();
        assert!(ws.omega()[1] < 0.05, "{:?}", ws.omega());
        assert!(ws.omega()[0] > 0.95);
        assert_eq!(ws.sigma, Some(0.0));
    }

    #[test]
    fn window_must_cover_stencil() {
        let three = w(&[0.0, 1.0, 2.0]);
        assert!(compute_weights(&three, &SchemeSpec::new(SchemeId::Z3)).is_ok());
        for id in [SchemeId::Zm3, SchemeId::Es2, SchemeId::Es3, SchemeId::Js5] {
            assert!(matches!(
                compute_weights(&three, &SchemeSpec::new(id)),
                Err(WenoError::WindowTooShort { .. })
            ));
        }
    }

    #[test]
    fn overflow_is_reported() {
        let huge = w(&[0.0, 0.0, 1e300, -1e300, 1e300]);
        let err = compute_weights(&huge, &SchemeSpec::new(SchemeId::Es3)).unwrap_err();
        assert!(matches!(err, WenoError::NonFiniteOutput { .. }), "{err}");
    }

    #[test]
    fn stencil_lengths() {
        let len = |id| SchemeSpec::new(id).stencil_len();
        assert_eq!(len(SchemeId::Js3), 3);
        assert_eq!(len(SchemeId::Z3), 3);
        assert_eq!(len(SchemeId::F3), 3);
        assert_eq!(len(SchemeId::Pz3), 3);
        assert_eq!(len(SchemeId::Zm3), 4);
        assert_eq!(len(SchemeId::Es2), 5);
        assert_eq!(len(SchemeId::Es3), 5);
        assert_eq!(len(SchemeId::Js5), 5);
        let v = SchemeSpec::variant(TauKind::Tau4, Beta1Extension::Star(0.15));
        assert_eq!(v.stencil_len(), 4);
    }

    #[test]
    fn parse_schemes() {
        assert_eq!(SchemeSpec::parse("ES2").unwrap(), SchemeSpec::new(SchemeId::Es2));
        let err = SchemeSpec::parse("nosuch").unwrap_err().to_string();
        for name in ["js3", "z3", "np3", "f3", "nn3", "pz3", "zm3", "es2", "es3", "js5"] {
            assert!(err.contains(name), "{err}");
        }
        let v = SchemeSpec::parse("z3:c_alpha=0.02,tau=d31sq,beta1=alt:13/12").unwrap();
        assert_eq!(v.params.c_alpha, 0.02);
        assert_eq!(v.params.tau, TauKind::Third1Squared);
        assert_eq!(v.params.beta1_ext, Beta1Extension::Alt(13.0 / 12.0));
        assert!(SchemeSpec::parse("z3:bogus=1").is_err());
        assert!(SchemeSpec::parse("z3:tau=d2sq:-1").is_err());
        assert_eq!(v.to_string(), "z3*");
    }
}
