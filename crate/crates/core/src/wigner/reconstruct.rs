use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::specfun::{ThetaQuadrature, DEFAULT_ORDER};
use crate::states::DensityMatrix;
use crate::wigner::PhasePoint;

/// A density matrix recovered from phase-space samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    delta: f64,
    n_min: i64,
    dim: usize,
    entries: Vec<Complex64>,
    trace_deficit: f64,
}

impl Reconstruction {
    pub fn n_min(&self) -> i64 {
        self.n_min
    }

    pub fn n_max(&self) -> i64 {
        self.n_min + self.dim as i64 - 1
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, k: i64, l: i64) -> Complex64 {
        let (lo, hi) = (self.n_min, self.n_max());
        if k < lo || k > hi || l < lo || l > hi {
            return Complex64::new(0.0, 0.0);
        }
        self.entries[(k - lo) as usize * self.dim + (l - lo) as usize]
    }

    /// `1 - tr ρ`; positive when the window misses part of the state.
    pub fn trace_deficit(&self) -> f64 {
        self.trace_deficit
    }

    /// Validated density matrix; fails when the trace deficit is not negligible.
    pub fn density(&self) -> Result<DensityMatrix> {
        DensityMatrix::new(self.delta, self.n_min, self.dim, self.entries.clone())
    }

    /// Largest entrywise deviation from `rho`, over the union of both windows.
    pub fn max_deviation(&self, rho: &DensityMatrix) -> f64 {
        let lo = self.n_min.min(rho.n_min());
        let hi = self.n_max().max(rho.n_max());
        let mut worst: f64 = 0.0;
        for k in lo..=hi {
            for l in lo..=hi {
                worst = worst.max((self.get(k, l) - rho.get(k, l)).norm());
            }
        }
        worst
    }
}

/// Recovers `ρ_kl = 2π ∫∫ V_kl(θ,p) V(θ,p) dθ dp` for `k, l` in `[n_min, n_max]`.
///
/// `V` has to be band-limited in `p` (true for the Wigner function of any state
/// on a finite window), so the `p` integral against the sinc in `V_kl` is a
/// point evaluation at `p = (k+l)/2 + δ`, leaving
/// `ρ_kl = ∫ e^{i(l-k)θ} V(θ, (k+l)/2 + δ) dθ` for the angle quadrature.
pub fn reconstruct_density<F>(v: F, n_min: i64, n_max: i64, delta: f64) -> Result<Reconstruction>
where
    F: Fn(PhasePoint) -> f64 + Sync,
{
    if n_max < n_min {
        return domain(format!("empty window [{n_min}, {n_max}]"));
    }
    if !(0.0..1.0).contains(&delta) {
        return domain(format!("delta = {delta} outside [0, 1)"));
    }
    let dim = (n_max - n_min + 1) as usize;
    // the integrand is a trigonometric polynomial of degree <= 2(dim - 1)
    let order = DEFAULT_ORDER.max(2 * dim + 8);
    let quad = ThetaQuadrature::new(order)?;
    let nodes = quad.nodes();
    let weights = quad.weights();

    // one θ-profile of V per distinct k + l
    let profiles: Vec<Vec<f64>> = (0..2 * dim - 1)
        .into_par_iter()
        .map(|s| {
            let p = 0.5 * (2 * n_min + s as i64) as f64 + delta;
            nodes.iter().map(|&t| v(PhasePoint::new(t, p))).collect()
        })
        .collect();
    if let Some(bad) = profiles.iter().flatten().find(|x| !x.is_finite()) {
        return Err(Error::Numeric(format!(
            "phase-space function returned {bad}"
        )));
    }

    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let profile = &profiles[i + j];
            let freq = j as f64 - i as f64;
            entries[i * dim + j] = nodes
                .iter()
                .zip(weights)
                .zip(profile)
                .map(|((&t, &w), &val)| Complex64::from_polar(w * val, freq * t))
                .sum();
        }
    }
    let trace: f64 = (0..dim).map(|i| entries[i * dim + i].re).sum();
    Ok(Reconstruction {
        delta,
        n_min,
        dim,
        entries,
        trace_deficit: 1.0 - trace,
    })
}
