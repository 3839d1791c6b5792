//! Ideal-gas relations and Steger–Warming flux vector splitting.
//!
//! Conserved vectors are plain arrays: `[ρ, ρu, E]` in 1D and
//! `[ρ, ρu, ρv, E]` in 2D. The 2D routines are written for the x-direction;
//! the y-direction is obtained by swapping the momentum components.

use crate::error::{Result, WenoError};

pub const GAMMA: f64 = 1.4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gas {
    pub gamma: f64,
}

impl Default for Gas {
    fn default() -> Self {
        Self { gamma: GAMMA }
    }
}

/// Primitive variables; `v` is zero in 1D.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Primitive {
    pub rho: f64,
    pub u: f64,
    pub v: f64,
    pub p: f64,
}

impl Primitive {
    pub const fn new_1d(rho: f64, u: f64, p: f64) -> Self {
        Self { rho, u, v: 0.0, p }
    }

    pub const fn new_2d(rho: f64, u: f64, v: f64, p: f64) -> Self {
        Self { rho, u, v, p }
    }
}

/// Reason a state cannot be evolved.
pub fn inadmissibility(rho: f64, p: f64) -> Option<&'static str> {
    if !(rho.is_finite() && p.is_finite()) {
        Some("non-finite state")
    } else if rho <= 0.0 {
        Some("nonpositive density")
    } else if p <= 0.0 {
        Some("nonpositive pressure")
    } else {
        None
    }
}

/// Operations shared by the 1D system (`N = 3`) and the 2D system in the
/// x-direction (`N = 4`).
pub trait EulerSystem<const N: usize> {
    fn gamma(&self) -> f64;

    fn to_primitive(&self, u: &[f64; N]) -> Primitive;

    fn to_conserved(&self, w: Primitive) -> [f64; N];

    /// Physical flux in the sweep direction.
    fn flux(&self, u: &[f64; N]) -> [f64; N];

    /// `(F⁺, F⁻)` with exact `|λ|`. The state must be admissible.
    fn split(&self, u: &[f64; N]) -> ([f64; N], [f64; N]) {
        self.split_primitive(&self.to_primitive(u))
    }

    fn split_primitive(&self, w: &Primitive) -> ([f64; N], [f64; N]);

    /// Eigenvectors of the flux Jacobian at an averaged state; `None` if the
    /// averaged sound speed is not real and positive.
    fn eigensystem(&self, avg: Primitive) -> Option<Eigensystem<N>>;

    /// Roe (`√ρ`-weighted) average of velocity and total enthalpy.
    fn roe_average(&self, l: &[f64; N], r: &[f64; N]) -> Primitive {
        self.roe_average_primitive(&self.to_primitive(l), &self.to_primitive(r))
    }

    fn roe_average_primitive(&self, wl: &Primitive, wr: &Primitive) -> Primitive {
        let g = self.gamma();
        let (sl, sr) = (wl.rho.sqrt(), wr.rho.sqrt());
        let h = |w: &Primitive| g / (g - 1.0) * w.p / w.rho + 0.5 * (w.u * w.u + w.v * w.v);
        let s = sl + sr;
        let u = (sl * wl.u + sr * wr.u) / s;
        let v = (sl * wl.v + sr * wr.v) / s;
        let hh = (sl * h(wl) + sr * h(wr)) / s;
        let rho = sl * sr;
        // Pressure recovered from ρ̃ and ã² = (γ-1)(H̃ - q̃²/2).
        let p = rho * (g - 1.0) / g * (hh - 0.5 * (u * u + v * v));
        Primitive { rho, u, v, p }
    }

    /// Eigenvectors at the arithmetic mean of the conserved states.
    fn arithmetic_average(&self, l: &[f64; N], r: &[f64; N]) -> Primitive {
        self.to_primitive(&std::array::from_fn(|k| 0.5 * (l[k] + r[k])))
    }

    fn check(&self, u: &[f64; N]) -> std::result::Result<Primitive, &'static str> {
        let w = self.to_primitive(u);
        match inadmissibility(w.rho, w.p) {
            Some(reason) => Err(reason),
            None => Ok(w),
        }
    }
}

/// Left eigenvectors as rows of `l`; right eigenvectors as columns of `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigensystem<const N: usize> {
    pub l: [[f64; N]; N],
    pub r: [[f64; N]; N],
}

impl<const N: usize> Eigensystem<N> {
    #[inline]
    pub fn to_characteristic(&self, v: &[f64; N]) -> [f64; N] {
        std::array::from_fn(|k| {
            let row = &self.l[k];
            let mut s = 0.0;
            for i in 0..N {
                s += row[i] * v[i];
            }
            s
        })
    }

    #[inline]
    pub fn to_physical(&self, w: &[f64; N]) -> [f64; N] {
        std::array::from_fn(|i| {
            let row = &self.r[i];
            let mut s = 0.0;
            for k in 0..N {
                s += row[k] * w[k];
            }
            s
        })
    }
}

#[inline]
fn lambda_split(l: f64) -> (f64, f64) {
    let a = l.abs();
    (0.5 * (l + a), 0.5 * (l - a))
}

impl Gas {
    fn sound_speed(&self, w: &Primitive) -> f64 {
        (self.gamma * w.p / w.rho).sqrt()
    }

    fn sw_1d(&self, w: &Primitive, l: [f64; 3]) -> [f64; 3] {
        let g = self.gamma;
        let a = self.sound_speed(w);
        let (u, [l1, l2, l3]) = (w.u, l);
        let c = w.rho / (2.0 * g);
        [
            c * (2.0 * (g - 1.0) * l1 + l2 + l3),
            c * (2.0 * (g - 1.0) * l1 * u + l2 * (u + a) + l3 * (u - a)),
            c * ((g - 1.0) * l1 * u * u
                + 0.5 * l2 * (u + a) * (u + a)
                + 0.5 * l3 * (u - a) * (u - a)
                + (3.0 - g) / (2.0 * (g - 1.0)) * (l2 + l3) * a * a),
        ]
    }

    fn sw_2d(&self, w: &Primitive, l: [f64; 3]) -> [f64; 4] {
        let g = self.gamma;
        let a = self.sound_speed(w);
        let (u, v, [l1, l2, l3]) = (w.u, w.v, l);
        let c = w.rho / (2.0 * g);
        let mass = 2.0 * (g - 1.0) * l1 + l2 + l3;
        [
            c * mass,
            c * (2.0 * (g - 1.0) * l1 * u + l2 * (u + a) + l3 * (u - a)),
            c * v * mass,
            c * ((g - 1.0) * l1 * (u * u + v * v)
                + 0.5 * l2 * ((u + a) * (u + a) + v * v)
                + 0.5 * l3 * ((u - a) * (u - a) + v * v)
                + (3.0 - g) / (2.0 * (g - 1.0)) * (l2 + l3) * a * a),
        ]
    }

    fn split_lambdas(&self, w: &Primitive) -> ([f64; 3], [f64; 3]) {
        let a = self.sound_speed(w);
        let (p1, m1) = lambda_split(w.u);
        let (p2, m2) = lambda_split(w.u + a);
        let (p3, m3) = lambda_split(w.u - a);
        ([p1, p2, p3], [m1, m2, m3])
    }
}

impl EulerSystem<3> for Gas {
    fn gamma(&self) -> f64 {
        self.gamma
    }

    fn to_primitive(&self, q: &[f64; 3]) -> Primitive {
        let u = q[1] / q[0];
        Primitive::new_1d(q[0], u, (self.gamma - 1.0) * (q[2] - 0.5 * q[1] * u))
    }

    fn to_conserved(&self, w: Primitive) -> [f64; 3] {
        [w.rho, w.rho * w.u, w.p / (self.gamma - 1.0) + 0.5 * w.rho * w.u * w.u]
    }

    fn flux(&self, q: &[f64; 3]) -> [f64; 3] {
        let w = self.to_primitive(q);
        [q[1], q[1] * w.u + w.p, (q[2] + w.p) * w.u]
    }

    fn split_primitive(&self, w: &Primitive) -> ([f64; 3], [f64; 3]) {
        let (lp, lm) = self.split_lambdas(w);
        (self.sw_1d(w, lp), self.sw_1d(w, lm))
    }

    fn eigensystem(&self, w: Primitive) -> Option<Eigensystem<3>> {
        let g = self.gamma;
        let a2 = g * w.p / w.rho;
        if !(a2 > 0.0 && a2.is_finite()) {
            return None;
        }
        let a = a2.sqrt();
        let u = w.u;
        let h = a2 / (g - 1.0) + 0.5 * u * u;
        let b1 = (g - 1.0) / a2;
        let b2 = 0.5 * u * u * b1;
        Some(Eigensystem {
            l: [
                [0.5 * (b2 + u / a), -0.5 * (b1 * u + 1.0 / a), 0.5 * b1],
                [1.0 - b2, b1 * u, -b1],
                [0.5 * (b2 - u / a), -0.5 * (b1 * u - 1.0 / a), 0.5 * b1],
            ],
            r: [
                [1.0, 1.0, 1.0],
                [u - a, u, u + a],
                [h - u * a, 0.5 * u * u, h + u * a],
            ],
        })
    }
}

impl EulerSystem<4> for Gas {
    fn gamma(&self) -> f64 {
        self.gamma
    }

    fn to_primitive(&self, q: &[f64; 4]) -> Primitive {
        let (u, v) = (q[1] / q[0], q[2] / q[0]);
        let p = (self.gamma - 1.0) * (q[3] - 0.5 * (q[1] * u + q[2] * v));
        Primitive::new_2d(q[0], u, v, p)
    }

    fn to_conserved(&self, w: Primitive) -> [f64; 4] {
        [
            w.rho,
            w.rho * w.u,
            w.rho * w.v,
            w.p / (self.gamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v),
        ]
    }

    fn flux(&self, q: &[f64; 4]) -> [f64; 4] {
        let w = self.to_primitive(q);
        [q[1], q[1] * w.u + w.p, q[2] * w.u, (q[3] + w.p) * w.u]
    }

    fn split_primitive(&self, w: &Primitive) -> ([f64; 4], [f64; 4]) {
        let (lp, lm) = self.split_lambdas(w);
        (self.sw_2d(w, lp), self.sw_2d(w, lm))
    }

    fn eigensystem(&self, w: Primitive) -> Option<Eigensystem<4>> {
        let g = self.gamma;
        let a2 = g * w.p / w.rho;
        if !(a2 > 0.0 && a2.is_finite()) {
            return None;
        }
        let a = a2.sqrt();
        let (u, v) = (w.u, w.v);
        let q2 = u * u + v * v;
        let h = a2 / (g - 1.0) + 0.5 * q2;
        let b1 = (g - 1.0) / a2;
        let b2 = 0.5 * q2 * b1;
        Some(Eigensystem {
            l: [
                [0.5 * (b2 + u / a), -0.5 * (b1 * u + 1.0 / a), -0.5 * b1 * v, 0.5 * b1],
                [1.0 - b2, b1 * u, b1 * v, -b1],
                [-v, 0.0, 1.0, 0.0],
                [0.5 * (b2 - u / a), -0.5 * (b1 * u - 1.0 / a), -0.5 * b1 * v, 0.5 * b1],
            ],
            r: [
                [1.0, 1.0, 0.0, 1.0],
                [u - a, u, 0.0, u + a],
                [v, v, 1.0, v],
                [h - u * a, 0.5 * q2, v, h + u * a],
            ],
        })
    }
}

/// Steger–Warming split of a single 1D node, checking admissibility.
pub fn steger_warming_split(gas: &Gas, q: &[f64; 3]) -> Result<([f64; 3], [f64; 3])> {
    let w = EulerSystem::<3>::to_primitive(gas, q);
    if let Some(reason) = inadmissibility(w.rho, w.p) {
        return Err(WenoError::Inadmissible {
            time: f64::NAN,
            location: "steger_warming_split".into(),
            reason: reason.into(),
        });
    }
    Ok(EulerSystem::<3>::split(gas, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1.0)
    }

    #[test]
    fn static_state_flux() {
        let gas = Gas::default();
        let q = EulerSystem::<3>::to_conserved(&gas, Primitive::new_1d(1.0, 0.0, 1.0));
        let (fp, fm) = steger_warming_split(&gas, &q).unwrap();
        let sum: Vec<f64> = (0..3).map(|k| fp[k] + fm[k]).collect();
        assert!(sum[0].abs() < 1e-15 && (sum[1] - 1.0).abs() < 1e-15 && sum[2].abs() < 1e-15);
    }

    #[test]
    fn supersonic_has_no_minus_flux() {
        let gas = Gas::default();
        let q = EulerSystem::<3>::to_conserved(&gas, Primitive::new_1d(1.0, 3.0, 1.0));
        let (_, fm) = steger_warming_split(&gas, &q).unwrap();
        assert_eq!(fm, [0.0; 3]);
    }

    #[test]
    fn split_is_consistent_on_random_states() {
        let gas = Gas::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let w = Primitive::new_2d(
                rng.gen_range(0.01..10.0),
                rng.gen_range(-20.0..20.0),
                rng.gen_range(-20.0..20.0),
                rng.gen_range(0.01..1000.0),
            );
            let q1 = EulerSystem::<3>::to_conserved(&gas, Primitive { v: 0.0, ..w });
            let (p, m) = EulerSystem::<3>::split(&gas, &q1);
            let f = EulerSystem::<3>::flux(&gas, &q1);
            for k in 0..3 {
                assert!(rel(p[k] + m[k], f[k]) < 1e-12, "{w:?} {k}");
            }
            let q2 = EulerSystem::<4>::to_conserved(&gas, w);
            let (p, m) = EulerSystem::<4>::split(&gas, &q2);
            let f = EulerSystem::<4>::flux(&gas, &q2);
            for k in 0..4 {
                assert!(rel(p[k] + m[k], f[k]) < 1e-12, "{w:?} {k}");
            }
        }
    }

    fn check_inverse<const N: usize>(e: &Eigensystem<N>) {
        for i in 0..N {
            for j in 0..N {
                let s: f64 = (0..N).map(|k| e.l[i][k] * e.r[k][j]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((s - want).abs() < 1e-12, "({i},{j}) = {s}");
            }
        }
    }

    #[test]
    fn left_times_right_is_identity() {
        let gas = Gas::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let w = Primitive::new_2d(
                rng.gen_range(0.1..5.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(-3.0..3.0),
                rng.gen_range(0.1..5.0),
            );
            check_inverse(&EulerSystem::<3>::eigensystem(&gas, w).unwrap());
            check_inverse(&EulerSystem::<4>::eigensystem(&gas, w).unwrap());
        }
    }

    #[test]
    fn eigenvectors_diagonalize_the_jacobian() {
        // A r_k = λ_k r_k, with A from central differences of the flux.
        let gas = Gas::default();
        let w = Primitive::new_2d(1.3, 0.4, -0.7, 2.1);
        let q = EulerSystem::<4>::to_conserved(&gas, w);
        let e = EulerSystem::<4>::eigensystem(&gas, w).unwrap();
        let a = (1.4 * w.p / w.rho).sqrt();
        let lambdas = [w.u - a, w.u, w.u, w.u + a];
        for (k, lambda) in lambdas.iter().enumerate() {
            let r: [f64; 4] = std::array::from_fn(|i| e.r[i][k]);
            let h = 1e-6;
            let fp = EulerSystem::<4>::flux(&gas, &std::array::from_fn(|i| q[i] + h * r[i]));
            let fm = EulerSystem::<4>::flux(&gas, &std::array::from_fn(|i| q[i] - h * r[i]));
            for i in 0..4 {
                let ar = (fp[i] - fm[i]) / (2.0 * h);
                assert!((ar - lambda * r[i]).abs() < 1e-6, "k={k} i={i}");
            }
        }
    }

    #[test]
    fn roe_average_of_equal_states_is_that_state() {
        let gas = Gas::default();
        let w = Primitive::new_2d(2.0, 0.3, -0.2, 1.5);
        let q = EulerSystem::<4>::to_conserved(&gas, w);
        let r = EulerSystem::<4>::roe_average(&gas, &q, &q);
        assert!(rel(r.rho, w.rho) < 1e-14 && rel(r.p, w.p) < 1e-13);
        assert!(rel(r.u, w.u) < 1e-14 && rel(r.v, w.v) < 1e-14);
    }

    #[test]
    fn rejects_negative_pressure() {
        let gas = Gas::default();
        assert!(steger_warming_split(&gas, &[1.0, 0.0, -1.0]).is_err());
        assert!(steger_warming_split(&gas, &[0.0, 0.0, 1.0]).is_err());
    }
}
