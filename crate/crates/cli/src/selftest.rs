//! Randomized kernel checks run by `weno-lab kernels-selftest`.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weno_core::{reconstruct_minus, reconstruct_plus, Result, SchemeId, SchemeSpec, StencilWindow};

/// Scales applied in the scale-independence check.
pub const SCALES: [f64; 2] = [1e-6, 1e6];

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub worst: f64,
    pub tolerance: f64,
    /// Informational rows are reported but never fail the run.
    pub informational: bool,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.informational || self.worst <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub seed: u64,
    pub samples: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn render(&self) -> String {
        let mut s = format!("kernels-selftest seed={} samples={}\n", self.seed, self.samples);
        for c in &self.checks {
            let status = match (c.informational, c.passed()) {
                (true, _) => "info",
                (false, true) => "ok",
                (false, false) => "FAIL",
            };
            let tol = if c.tolerance == 0.0 {
                "exact".to_string()
            } else {
                format!("{:.0e}", c.tolerance)
            };
            let _ = writeln!(s, "{status:>4}  {:<34} worst {:.3e}  tol {tol}", c.name, c.worst);
        }
        let _ = writeln!(s, "{}", if self.passed() { "all checks passed" } else { "self-test failed" });
        s
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Uniform windows in `[-1, 1]⁵` drawn from a ChaCha8 stream seeded with
/// `seed`.
pub fn random_windows(seed: u64, samples: usize) -> Vec<StencilWindow> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let v: [f64; 5] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            StencilWindow::new(&v).expect("finite window")
        })
        .collect()
}

pub fn run(seed: u64, samples: usize) -> Result<Report> {
    let windows = random_windows(seed, samples);
    let mut checks = Vec::new();
    for id in SchemeId::ALL {
        let spec = SchemeSpec::new(id);
        let (mut unity, mut mirror, mut constant, mut scale) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
        for w in &windows {
            let ws = spec.weights(w)?;
            unity = unity.max((ws.omega().iter().sum::<f64>() - 1.0).abs());
            let m = reconstruct_minus(w, &spec)?.fhat - reconstruct_plus(&w.reversed(), &spec)?.fhat;
            mirror = mirror.max(m.abs());
            let c = w.values()[2];
            let flat = StencilWindow::new(&[c; 5])?;
            constant = constant.max((reconstruct_plus(&flat, &spec)?.fhat - c).abs());
            for k in SCALES {
                scale = scale.max(max_abs_diff(ws.omega(), spec.weights(&w.scaled(k))?.omega()));
            }
        }
        let check = |what: &str, worst: f64, tolerance: f64, informational: bool| Check {
            name: format!("{id} {what}"),
            worst,
            tolerance,
            informational,
        };
        checks.push(check("weights sum to one", unity, 1e-14, false));
        checks.push(check("mirror symmetry", mirror, 0.0, false));
        checks.push(check("constants reproduced", constant, 0.0, false));
        // Reported only: ES2's detector has an absolute ε, the others carry
        // dimensional exponents or ε.
        let scale_free = matches!(id, SchemeId::Z3 | SchemeId::Zm3 | SchemeId::Es3);
        checks.push(check("scale independence", scale, 1e-12, !scale_free));
    }
    Ok(Report { seed, samples, checks })
}
