use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::specfun::{sinc, ThetaQuadrature};

/// `∫ sinc π(p - a) sinc π(p - b) dp = sinc π(a - b)`.
pub fn sinc_overlap(a: f64, b: f64) -> f64 {
    sinc(a - b)
}

/// The same overlap through its Fourier-domain form
/// `(2π)⁻¹ ∫_{-π}^{π} e^{i(a-b)α} dα`, evaluated by quadrature.
pub fn sinc_overlap_by_quadrature(a: f64, b: f64, quad: &ThetaQuadrature) -> f64 {
    quad.integrate(|alpha| ((a - b) * alpha).cos()) / (2.0 * PI)
}

/// Whittaker cardinal series `ω(p) = Σ b_m sinc π(p - m - δ)`, stored by its
/// samples `b_m = ω(m + δ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CardinalRepr", into = "CardinalRepr")]
pub struct CardinalSeries {
    delta: f64,
    m_min: i64,
    b: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct CardinalRepr {
    delta: f64,
    m_min: i64,
    b: Vec<f64>,
}

impl TryFrom<CardinalRepr> for CardinalSeries {
    type Error = Error;

    fn try_from(r: CardinalRepr) -> Result<Self> {
        CardinalSeries::new(r.delta, r.m_min, r.b)
    }
}

impl From<CardinalSeries> for CardinalRepr {
    fn from(c: CardinalSeries) -> Self {
        Self {
            delta: c.delta,
            m_min: c.m_min,
            b: c.b,
        }
    }
}

impl CardinalSeries {
    /// Samples must be non-negative probabilities summing to one.
    pub fn new(delta: f64, m_min: i64, b: Vec<f64>) -> Result<Self> {
        if !(0.0..1.0).contains(&delta) {
            return domain(format!("cardinal series: delta = {delta} outside [0, 1)"));
        }
        if b.is_empty() {
            return domain("cardinal series needs at least one sample");
        }
        if let Some(x) = b.iter().find(|x| !(x.is_finite() && **x >= -1e-12)) {
            return domain(format!("cardinal series: invalid probability {x}"));
        }
        let total: f64 = b.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return domain(format!("cardinal series: samples sum to {total}, not 1"));
        }
        Ok(Self { delta, m_min, b })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn m_min(&self) -> i64 {
        self.m_min
    }

    pub fn m_max(&self) -> i64 {
        self.m_min + self.b.len() as i64 - 1
    }

    pub fn samples(&self) -> &[f64] {
        &self.b
    }

    pub fn evaluate(&self, p: f64) -> f64 {
        self.b
            .iter()
            .enumerate()
            .map(|(i, &b)| b * sinc(p - (self.m_min + i as i64) as f64 - self.delta))
            .sum()
    }

    /// `b_m`, zero outside the window.
    pub fn probability(&self, m: i64) -> f64 {
        if m < self.m_min || m > self.m_max() {
            0.0
        } else {
            self.b[(m - self.m_min) as usize]
        }
    }

    /// `∫ ω(p) sinc π(p - m - δ) dp` through the Fourier domain:
    /// `(2π)⁻¹ ∫_{-π}^{π} Σ_k b_k e^{i(k-m)α} dα`, by quadrature.
    ///
    /// Does not use the sinc kernel at all, so it checks orthonormality
    /// independently of [`probability`](Self::probability).
    pub fn project_by_quadrature(&self, m: i64, quad: &ThetaQuadrature) -> f64 {
        quad.integrate(|alpha| {
            self.b
                .iter()
                .enumerate()
                .map(|(i, &b)| b * (((self.m_min + i as i64 - m) as f64) * alpha).cos())
                .sum::<f64>()
        }) / (2.0 * PI)
    }
}

/// `|c_m|²` (or `ρ_mm`) read back from the momentum marginal.
pub fn extract_probability(omega: &CardinalSeries, m: i64) -> f64 {
    omega.probability(m)
}
