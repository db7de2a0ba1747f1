//! Canonical ensembles of the free rotor `H = εL²` at `δ = 0`.
//!
//! Populations are `λ_n = e^{-n²εβ}/Z` with `Z = θ₃(0, e^{-εβ})`, and the Wigner
//! function is `θ`-independent:
//! `V(p) = (2πZ)⁻¹ Σ_n e^{-n²εβ} sinc π(p - n)`.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::specfun::{sinc, theta3, ThetaQuadrature};
use crate::states::DensityMatrix;
use crate::wigner::{PhasePoint, INV_TWO_PI};

/// Smallest `εβ` accepted by [`low_temp_wigner`].
pub const LOW_TEMP_MIN_EPS_BETA: f64 = 3.0;
/// Largest `εβ` accepted by [`high_temp_wigner`].
pub const HIGH_TEMP_MAX_EPS_BETA: f64 = 0.05;

/// The dimensionless inverse temperature `εβ` and the half-width `N` of the
/// index window `[-N, N]` used for thermal sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalParams {
    eps_beta: f64,
    window_half_width: u32,
}

impl ThermalParams {
    /// Picks `N = ceil(√(33/εβ)) + 5`, so the first dropped weight is below `1e-14`.
    pub fn new(eps_beta: f64) -> Result<Self> {
        if !(eps_beta.is_finite() && eps_beta > 0.0) {
            return domain(format!("eps_beta = {eps_beta} must be positive"));
        }
        let n = (33.0 / eps_beta).sqrt().ceil() + 5.0;
        if n > 1e6 {
            return domain(format!(
                "eps_beta = {eps_beta} needs a window of {n} levels"
            ));
        }
        Ok(Self {
            eps_beta,
            window_half_width: n as u32,
        })
    }

    pub fn with_window(self, half_width: u32) -> Self {
        Self {
            window_half_width: half_width,
            ..self
        }
    }

    pub fn eps_beta(&self) -> f64 {
        self.eps_beta
    }

    pub fn window_half_width(&self) -> u32 {
        self.window_half_width
    }

    /// The nome `q = e^{-εβ}`.
    pub fn q(&self) -> f64 {
        (-self.eps_beta).exp()
    }

    fn weights(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let n = self.window_half_width as i64;
        (-n..=n).map(move |k| (k, (-((k * k) as f64) * self.eps_beta).exp()))
    }
}

/// `Z = θ₃(0, e^{-εβ})`.
pub fn partition_function(tp: &ThermalParams) -> f64 {
    theta3(0.0, tp.q()).expect("nome of validated params lies in (0, 1)")
}

/// `Σ_{|n| ≤ N} e^{-n²εβ}` summed outward-in, smallest terms first.
pub fn partition_function_direct(tp: &ThermalParams) -> f64 {
    let n = tp.window_half_width as i64;
    (1..=n)
        .rev()
        .map(|k| 2.0 * (-((k * k) as f64) * tp.eps_beta).exp())
        .fold(0.0, |acc, w| acc + w)
        + 1.0
}

/// Diagonal `ρ` with `λ_n = e^{-n²εβ}/Z` on `[-N, N]`.
pub fn thermal_density(tp: &ThermalParams) -> Result<DensityMatrix> {
    let z = partition_function(tp);
    let weights: Vec<f64> = tp.weights().map(|(_, w)| w / z).collect();
    DensityMatrix::diagonal(0.0, -(tp.window_half_width as i64), &weights)
}

/// `V(θ, p) = (2πZ)⁻¹ Σ e^{-n²εβ} sinc π(p - n)`.
pub fn thermal_wigner(tp: &ThermalParams, at: PhasePoint) -> f64 {
    let z = partition_function(tp);
    let sum: f64 = tp.weights().map(|(n, w)| w * sinc(at.p() - n as f64)).sum();
    INV_TWO_PI * sum / z
}

/// The integral form `(2π²Z)⁻¹ ∫_0^π cos(pα) θ₃(α/2, e^{-εβ}) dα`, by quadrature.
pub fn thermal_wigner_integral(tp: &ThermalParams, p: f64, order: usize) -> Result<f64> {
    let quad = ThetaQuadrature::on_interval(0.0, PI, order)?;
    let q = tp.q();
    let integral =
        quad.try_integrate(|alpha| (p * alpha).cos() * theta3(0.5 * alpha, q).unwrap_or(f64::NAN))?;
    Ok(integral / (2.0 * PI * PI * partition_function(tp)))
}

/// `(2π)⁻¹ sinc πp [1 - e^{-εβ}(2 + p/(p+1) + p/(p-1))]`, valid for `εβ ≥ 3`.
///
/// Evaluated as `(2π)⁻¹ [(1 - 2q) sinc πp + q (sinc π(p+1) + sinc π(p-1))]`,
/// which is the same function with the poles at `p = ±1` already cancelled.
pub fn low_temp_wigner(tp: &ThermalParams, p: f64) -> Result<f64> {
    if tp.eps_beta < LOW_TEMP_MIN_EPS_BETA {
        return domain(format!(
            "low-temperature form needs eps_beta >= {LOW_TEMP_MIN_EPS_BETA}, got {}",
            tp.eps_beta
        ));
    }
    let q = tp.q();
    Ok(INV_TWO_PI * ((1.0 - 2.0 * q) * sinc(p) + q * (sinc(p + 1.0) + sinc(p - 1.0))))
}

/// The Boltzmann limit `√(πεβ)/(2π²) e^{-εβp²}`, valid for `εβ ≤ 0.05`.
pub fn high_temp_wigner(tp: &ThermalParams, p: f64) -> Result<f64> {
    if tp.eps_beta > HIGH_TEMP_MAX_EPS_BETA {
        return domain(format!(
            "high-temperature form needs eps_beta <= {HIGH_TEMP_MAX_EPS_BETA}, got {}",
            tp.eps_beta
        ));
    }
    Ok((PI * tp.eps_beta).sqrt() / (2.0 * PI * PI) * (-tp.eps_beta * p * p).exp())
}

/// `∫ high_temp_wigner dp`, from the Gaussian integral `√(π/εβ)`.
pub fn high_temp_momentum_integral(tp: &ThermalParams) -> f64 {
    (PI * tp.eps_beta).sqrt() / (2.0 * PI * PI) * (PI / tp.eps_beta).sqrt()
}
