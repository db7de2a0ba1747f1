//! Exact time evolution under Hamiltonians diagonal in angular momentum.
//!
//! With `H e_n = E_n e_n`, states evolve by phases `c_n(t) = e^{-iE_n t/ħ} c_n`
//! and the Wigner function obeys `ħ ∂_t V_ψ = (ψ, K(θ,p) ψ)` with
//! `K_mn = i(E_m - E_n) V_mn`.

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::states::{check_same_delta, DensityMatrix, FourierState};
use crate::wigner::{sandwich, wigner_matrix_element, PhasePoint};

/// `H = Σ E_n |e_n⟩⟨e_n|` on a window of angular-momentum indices.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalHamiltonian {
    delta: f64,
    n_min: i64,
    energies: Vec<f64>,
    epsilon: Option<f64>,
    hbar: f64,
}

impl DiagonalHamiltonian {
    /// The free rotor `H = εL²`, `E_n = ε(n + δ)²`.
    pub fn rotor(epsilon: f64, delta: f64, n_min: i64, n_max: i64) -> Result<Self> {
        if !epsilon.is_finite() {
            return domain(format!("rotor: epsilon = {epsilon}"));
        }
        let mut h = Self::from_energies(
            delta,
            n_min,
            (n_min..=n_max)
                .map(|n| epsilon * (n as f64 + delta).powi(2))
                .collect(),
        )?;
        h.epsilon = Some(epsilon);
        Ok(h)
    }

    pub fn from_energies(delta: f64, n_min: i64, energies: Vec<f64>) -> Result<Self> {
        if !(0.0..1.0).contains(&delta) {
            return domain(format!("delta = {delta} outside [0, 1)"));
        }
        if energies.is_empty() {
            return domain("Hamiltonian needs at least one level");
        }
        if let Some(e) = energies.iter().find(|e| !e.is_finite()) {
            return domain(format!("non-finite energy {e}"));
        }
        Ok(Self {
            delta,
            n_min,
            energies,
            epsilon: None,
            hbar: 1.0,
        })
    }

    /// Uses `e^{-iE_n t/ħ}` in place of `e^{-iE_n t}`.
    pub fn with_hbar(mut self, hbar: f64) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return domain(format!("hbar = {hbar} must be positive"));
        }
        self.hbar = hbar;
        Ok(self)
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn n_min(&self) -> i64 {
        self.n_min
    }

    pub fn n_max(&self) -> i64 {
        self.n_min + self.energies.len() as i64 - 1
    }

    /// `ε` for a rotor built with [`rotor`](Self::rotor).
    pub fn epsilon(&self) -> Option<f64> {
        self.epsilon
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    /// `E_n`, or `None` outside the window.
    pub fn energy(&self, n: i64) -> Option<f64> {
        if n < self.n_min || n > self.n_max() {
            None
        } else {
            Some(self.energies[(n - self.n_min) as usize])
        }
    }

    fn covers(&self, delta: f64, n_min: i64, n_max: i64) -> Result<()> {
        check_same_delta(self.delta, delta)?;
        if n_min < self.n_min || n_max > self.n_max() {
            return domain(format!(
                "window [{n_min}, {n_max}] not inside Hamiltonian window [{}, {}]",
                self.n_min,
                self.n_max()
            ));
        }
        Ok(())
    }

    fn energies_on(&self, n_min: i64, len: usize) -> &[f64] {
        let start = (n_min - self.n_min) as usize;
        &self.energies[start..start + len]
    }
}

pub fn evolve_state(state: &FourierState, h: &DiagonalHamiltonian, t: f64) -> Result<FourierState> {
    h.covers(state.delta(), state.n_min(), state.n_max())?;
    let energies = h.energies_on(state.n_min(), state.len());
    let coeffs = state
        .coeffs()
        .iter()
        .zip(energies)
        .map(|(c, e)| c * Complex64::from_polar(1.0, -e * t / h.hbar))
        .collect();
    let mut out = state.clone();
    out.set_coeffs(coeffs);
    Ok(out)
}

/// `ρ_mn(t) = e^{-i(E_m - E_n)t/ħ} ρ_mn`.
pub fn evolve_density(
    rho: &DensityMatrix,
    h: &DiagonalHamiltonian,
    t: f64,
) -> Result<DensityMatrix> {
    h.covers(rho.delta(), rho.n_min(), rho.n_max())?;
    let d = rho.dim();
    let energies = h.energies_on(rho.n_min(), d);
    let entries = rho
        .entries()
        .iter()
        .enumerate()
        .map(|(k, r)| {
            let (i, j) = (k / d, k % d);
            r * Complex64::from_polar(1.0, -(energies[i] - energies[j]) * t / h.hbar)
        })
        .collect();
    Ok(DensityMatrix::from_validated(
        rho.delta(),
        rho.n_min(),
        d,
        entries,
    ))
}

/// `⟨H⟩ = Σ |c_n|² E_n`.
pub fn energy_expectation(state: &FourierState, h: &DiagonalHamiltonian) -> Result<f64> {
    h.covers(state.delta(), state.n_min(), state.n_max())?;
    let energies = h.energies_on(state.n_min(), state.len());
    Ok(state
        .coeffs()
        .iter()
        .zip(energies)
        .map(|(c, e)| c.norm_sqr() * e)
        .sum())
}

/// `K_mn(θ,p) = i(E_m - E_n) V_mn(θ,p)`; zero if either index is outside `H`.
pub fn k_matrix_element(m: i64, n: i64, h: &DiagonalHamiltonian, at: PhasePoint) -> Complex64 {
    match (h.energy(m), h.energy(n)) {
        (Some(em), Some(en)) if m != n => {
            Complex64::new(0.0, em - en) * wigner_matrix_element(m, n, h.delta, at)
        }
        _ => Complex64::new(0.0, 0.0),
    }
}

/// `K(θ,p)` on the whole window of `h`, row-major.
pub fn k_matrix(h: &DiagonalHamiltonian, at: PhasePoint) -> Vec<Complex64> {
    let (lo, hi) = (h.n_min, h.n_max());
    (lo..=hi)
        .flat_map(|m| (lo..=hi).map(move |n| k_matrix_element(m, n, h, at)))
        .collect()
}

/// `∂_t V_ψ(θ,p) = (ψ, K(θ,p) ψ)/ħ`.
pub fn wigner_time_derivative(
    state: &FourierState,
    h: &DiagonalHamiltonian,
    at: PhasePoint,
) -> Result<f64> {
    h.covers(state.delta(), state.n_min(), state.n_max())?;
    let c = state.coeffs();
    let e = h.energies_on(state.n_min(), c.len());
    let z = sandwich(
        state.n_min(),
        c.len(),
        state.n_min(),
        c.len(),
        state.delta(),
        at,
        |i, j| c[i].conj() * c[j] * Complex64::new(0.0, e[i] - e[j]),
    );
    Ok(z.re / h.hbar)
}

/// `∂_t tr[ρV(θ,p)] = tr[ρK(θ,p)]/ħ`.
pub fn density_wigner_time_derivative(
    rho: &DensityMatrix,
    h: &DiagonalHamiltonian,
    at: PhasePoint,
) -> Result<f64> {
    h.covers(rho.delta(), rho.n_min(), rho.n_max())?;
    let d = rho.dim();
    let r = rho.entries();
    let e = h.energies_on(rho.n_min(), d);
    let z = sandwich(rho.n_min(), d, rho.n_min(), d, rho.delta(), at, |i, j| {
        r[j * d + i] * Complex64::new(0.0, e[i] - e[j])
    });
    Ok(z.re / h.hbar)
}
