use std::f64::consts::PI;
use std::io::Write;

use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::wigner::PhasePoint;

/// `steps` equally spaced points from `min` to `max` inclusive.
pub fn uniform_axis(min: f64, max: f64, steps: usize) -> Result<Vec<f64>> {
    if !(min.is_finite() && max.is_finite()) || max < min {
        return domain(format!("invalid axis range [{min}, {max}]"));
    }
    match steps {
        0 => domain("axis needs at least one point"),
        1 => Ok(vec![min]),
        _ => {
            let h = (max - min) / (steps - 1) as f64;
            Ok((0..steps)
                .map(|i| {
                    if i + 1 == steps {
                        max
                    } else {
                        min + h * i as f64
                    }
                })
                .collect())
        }
    }
}

/// Samples of a phase-space function on a tensor grid, stored row-major with
/// `θ` as the slow index.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    theta: Vec<f64>,
    p: Vec<f64>,
    values: Vec<f64>,
}

impl WignerGrid {
    pub fn sample<F>(theta: &[f64], p: &[f64], f: F) -> Result<Self>
    where
        F: Fn(PhasePoint) -> Result<f64> + Sync,
    {
        if theta.is_empty() || p.is_empty() {
            return domain("grid axes must be non-empty");
        }
        let rows: Vec<Vec<f64>> = theta
            .par_iter()
            .map(|&t| {
                p.iter()
                    .map(|&q| f(PhasePoint::new(t, q)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let values: Vec<f64> = rows.into_iter().flatten().collect();
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Numeric(format!("grid sample is {bad}")));
        }
        Ok(Self {
            theta: theta.to_vec(),
            p: p.to_vec(),
            values,
        })
    }

    pub fn theta_axis(&self) -> &[f64] {
        &self.theta
    }

    pub fn p_axis(&self) -> &[f64] {
        &self.p
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, i_theta: usize, i_p: usize) -> f64 {
        self.values[i_theta * self.p.len() + i_p]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `|V| <= 1/π` up to `tol`.
    pub fn within_bound(&self, tol: f64) -> bool {
        self.max_abs() <= 1.0 / PI + tol
    }

    /// Multiplies every sample by `factor`.
    pub fn scaled(mut self, factor: f64) -> Self {
        self.values.iter_mut().for_each(|v| *v *= factor);
        self
    }

    /// `∫ V dθ` for each `p` column with the periodic trapezoid rule. Requires
    /// a uniform `θ` axis covering one full period, endpoints included.
    pub fn theta_marginal(&self) -> Result<Vec<f64>> {
        let n = self.theta.len();
        if n < 3 {
            return domain("theta marginal needs at least three angles");
        }
        let span = self.theta[n - 1] - self.theta[0];
        if (span - 2.0 * PI).abs() > 1e-9 {
            return domain(format!("theta axis spans {span}, not 2π"));
        }
        let h = span / (n - 1) as f64;
        Ok((0..self.p.len())
            .map(|j| {
                let inner: f64 = (1..n - 1).map(|i| self.get(i, j)).sum();
                h * (inner + 0.5 * (self.get(0, j) + self.get(n - 1, j)))
            })
            .collect())
    }

    /// Writes `theta,p,value` rows in full precision.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "theta,p,value")?;
        for (i, t) in self.theta.iter().enumerate() {
            for (j, q) in self.p.iter().enumerate() {
                writeln!(out, "{:.16e},{:.16e},{:.16e}", t, q, self.get(i, j))?;
            }
        }
        out.flush()?;
        Ok(())
    }
}
