//! Rotator states on the circle.
//!
//! A [`FourierState`] holds the expansion coefficients `c_n` of a wavefunction
//! `ψ(φ) = Σ c_n e^{i(n+δ)φ}` over a finite window of angular-momentum indices,
//! together with the covering parameter `δ ∈ [0, 1)`. A [`DensityMatrix`]
//! holds `ρ_mn` over such a window. [`Operator`] is a general square matrix on
//! a window, used for observables.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::specfun::bessel_i;

const NORM_TOLERANCE: f64 = 1e-10;
const HERMITIAN_TOLERANCE: f64 = 1e-12;
const TRACE_TOLERANCE: f64 = 1e-10;
const MAX_DISCARDED_MASS: f64 = 1e-12;

fn check_delta(delta: f64) -> Result<()> {
    if !(0.0..1.0).contains(&delta) {
        return domain(format!("covering parameter delta = {delta} outside [0, 1)"));
    }
    Ok(())
}

/// Wavefunction coefficients over the index window `[n_min, n_max]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FourierStateRepr", into = "FourierStateRepr")]
pub struct FourierState {
    delta: f64,
    n_min: i64,
    coeffs: Vec<Complex64>,
    discarded_mass: f64,
}

impl FourierState {
    pub fn new(delta: f64, n_min: i64, coeffs: Vec<Complex64>) -> Result<Self> {
        check_delta(delta)?;
        if coeffs.is_empty() {
            return domain("a state needs at least one coefficient");
        }
        if coeffs
            .iter()
            .any(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return domain("state coefficients must be finite");
        }
        Ok(Self {
            delta,
            n_min,
            coeffs,
            discarded_mass: 0.0,
        })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn n_min(&self) -> i64 {
        self.n_min
    }

    pub fn n_max(&self) -> i64 {
        self.n_min + self.coeffs.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `c_n`, zero outside the window.
    pub fn coeff(&self, n: i64) -> Complex64 {
        if n < self.n_min || n > self.n_max() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(n - self.n_min) as usize]
        }
    }

    /// Iterator over `(n, c_n)`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, &c)| (self.n_min + i as i64, c))
    }

    /// Probability mass dropped when the window was truncated, before renormalizing.
    pub fn discarded_mass(&self) -> f64 {
        self.discarded_mass
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOLERANCE
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if norm == 0.0 {
            return domain("cannot normalize the zero vector");
        }
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|c| *c /= norm);
        Ok(out)
    }

    /// Same state with the window widened (zero-padded) to `[n_min, n_max]`.
    pub fn with_window(&self, n_min: i64, n_max: i64) -> Result<Self> {
        if n_min > self.n_min || n_max < self.n_max() {
            return domain(format!(
                "window [{n_min}, {n_max}] does not contain [{}, {}]",
                self.n_min,
                self.n_max()
            ));
        }
        let coeffs = (n_min..=n_max).map(|n| self.coeff(n)).collect();
        Ok(Self {
            coeffs,
            n_min,
            ..self.clone()
        })
    }

    /// `ψ(φ) = Σ c_n e^{i(n+δ)φ}`.
    pub fn evaluate(&self, phi: f64) -> Complex64 {
        self.iter()
            .map(|(n, c)| c * Complex64::from_polar(1.0, (n as f64 + self.delta) * phi))
            .sum()
    }

    /// Scalar product `(self, other) = Σ conj(a_n) b_n`.
    pub fn inner(&self, other: &FourierState) -> Result<Complex64> {
        check_same_delta(self.delta, other.delta)?;
        Ok(self.iter().map(|(n, a)| a.conj() * other.coeff(n)).sum())
    }

    /// `⟨L⟩ = Σ (n+δ)|c_n|²`.
    pub fn expectation_l(&self) -> f64 {
        self.iter()
            .map(|(n, c)| (n as f64 + self.delta) * c.norm_sqr())
            .sum()
    }

    pub(crate) fn set_coeffs(&mut self, coeffs: Vec<Complex64>) {
        debug_assert_eq!(coeffs.len(), self.coeffs.len());
        self.coeffs = coeffs;
    }
}

/// Bloch phases compared to `1e-12`, so `p_e - floor(p_e)` from different
/// `p_e` on the same covering still match.
pub(crate) fn check_same_delta(a: f64, b: f64) -> Result<()> {
    if (a - b).abs() > 1e-12 {
        return domain(format!("covering parameters differ: {a} vs {b}"));
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct FourierStateRepr {
    delta: f64,
    n_min: i64,
    coeffs: Vec<[f64; 2]>,
}

impl TryFrom<FourierStateRepr> for FourierState {
    type Error = Error;

    fn try_from(r: FourierStateRepr) -> Result<Self> {
        let coeffs = r
            .coeffs
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        FourierState::new(r.delta, r.n_min, coeffs)
    }
}

impl From<FourierState> for FourierStateRepr {
    fn from(s: FourierState) -> Self {
        Self {
            delta: s.delta,
            n_min: s.n_min,
            coeffs: s.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

/// The angular-momentum eigenstate `e_{m,δ}(φ) = e^{i(m+δ)φ}`.
pub fn basis_state(m: i64, delta: f64) -> Result<FourierState> {
    FourierState::new(delta, m, vec![Complex64::new(1.0, 0.0)])
}

/// `f_α(φ) = (e^{iφ} + e^{-iα} e^{-iφ})/√2`, an equal superposition of the
/// two rotation senses; `α = 0` gives `√2 cos φ`.
pub fn cat_state(alpha: f64) -> Result<FourierState> {
    if !alpha.is_finite() {
        return domain(format!("cat_state: non-finite phase {alpha}"));
    }
    FourierState::new(
        0.0,
        -1,
        vec![
            Complex64::from_polar(FRAC_1_SQRT_2, -alpha),
            Complex64::new(0.0, 0.0),
            Complex64::new(FRAC_1_SQRT_2, 0.0),
        ],
    )
}

/// Window half-width used by [`von_mises_state`] when none is given.
pub fn von_mises_default_half_width(s: f64) -> u32 {
    ((4.0 * s + 15.0).ceil() as u32).max(20)
}

/// Minimal-uncertainty state `ψ_e(φ) = e^{i p_e φ + s cos φ}/√I_0(2s)`.
///
/// `p_e` is split as `n_e + δ` with `δ = p_e - ⌊p_e⌋`, and the coefficients
/// `c_m = I_{m-n_e}(s)/√I_0(2s)` are kept for `|m - n_e| <= W`. The truncated
/// state is renormalized; the dropped mass is kept in
/// [`FourierState::discarded_mass`] and must stay below 1e-12.
pub fn von_mises_state(s: f64, p_e: f64, window_half_width: Option<u32>) -> Result<FourierState> {
    if !(s > 0.0 && s.is_finite()) {
        return domain(format!("von_mises_state: s = {s} must be positive"));
    }
    if !p_e.is_finite() {
        return domain(format!("von_mises_state: non-finite p_e {p_e}"));
    }
    let width = window_half_width.unwrap_or_else(|| von_mises_default_half_width(s)) as i64;
    let floor = p_e.floor();
    let n_e = floor as i64;
    let delta = p_e - floor;
    let delta = if delta >= 1.0 { 0.0 } else { delta };
    let norm = bessel_i(0, 2.0 * s)?.sqrt();
    let coeffs = (-width..=width)
        .map(|k| Ok(Complex64::new(bessel_i(k, s)? / norm, 0.0)))
        .collect::<Result<Vec<_>>>()?;
    let kept: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    let discarded = (1.0 - kept).max(0.0);
    if discarded > MAX_DISCARDED_MASS {
        return domain(format!(
            "von_mises_state: half-width {width} drops probability {discarded:.3e}"
        ));
    }
    let mut state = FourierState::new(delta, n_e - width, coeffs)?.normalized()?;
    state.discarded_mass = discarded;
    Ok(state)
}

pub fn evaluate_wavefunction(state: &FourierState, phi: f64) -> Complex64 {
    state.evaluate(phi)
}

pub fn state_expectation_l(state: &FourierState) -> f64 {
    state.expectation_l()
}

/// Hermitian, unit-trace matrix `ρ_mn` over `[n_min, n_min + dim)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DensityMatrixRepr", into = "DensityMatrixRepr")]
pub struct DensityMatrix {
    delta: f64,
    n_min: i64,
    dim: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and a non-negative diagonal.
    /// `entries` is row-major, `entries[i * dim + j] = ρ_{n_min+i, n_min+j}`.
    pub fn new(delta: f64, n_min: i64, dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        check_delta(delta)?;
        if dim == 0 || entries.len() != dim * dim {
            return domain(format!(
                "density matrix needs {dim}x{dim} entries, got {}",
                entries.len()
            ));
        }
        for i in 0..dim {
            let d = entries[i * dim + i];
            if d.re < -HERMITIAN_TOLERANCE {
                return domain(format!("negative diagonal entry {} at {i}", d.re));
            }
            for j in i..dim {
                let a = entries[i * dim + j];
                let b = entries[j * dim + i];
                if (a - b.conj()).norm() > HERMITIAN_TOLERANCE {
                    return domain(format!("density matrix is not Hermitian at ({i}, {j})"));
                }
            }
        }
        let trace: f64 = (0..dim).map(|i| entries[i * dim + i].re).sum();
        if (trace - 1.0).abs() > TRACE_TOLERANCE {
            return domain(format!("density matrix trace {trace} differs from 1"));
        }
        Ok(Self {
            delta,
            n_min,
            dim,
            entries,
        })
    }

    /// Diagonal `ρ = diag(λ_n)` with `λ` starting at index `n_min`.
    pub fn diagonal(delta: f64, n_min: i64, weights: &[f64]) -> Result<Self> {
        let dim = weights.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (i, &w) in weights.iter().enumerate() {
            entries[i * dim + i] = Complex64::new(w, 0.0);
        }
        Self::new(delta, n_min, dim, entries)
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn n_min(&self) -> i64 {
        self.n_min
    }

    pub fn n_max(&self) -> i64 {
        self.n_min + self.dim as i64 - 1
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// `ρ_mn` by physical index, zero outside the window.
    pub fn get(&self, m: i64, n: i64) -> Complex64 {
        let (lo, hi) = (self.n_min, self.n_max());
        if m < lo || m > hi || n < lo || n > hi {
            return Complex64::new(0.0, 0.0);
        }
        self.entries[(m - lo) as usize * self.dim + (n - lo) as usize]
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim)
            .map(|i| self.entries[i * self.dim + i].re)
            .sum()
    }

    /// The diagonal `ρ_nn`, i.e. the angular-momentum probabilities.
    pub fn populations(&self) -> Vec<f64> {
        (0..self.dim)
            .map(|i| self.entries[i * self.dim + i].re)
            .collect()
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        // tr ρ² = Σ_ij ρ_ij ρ_ji = Σ |ρ_ij|² for Hermitian ρ
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Matrix square `ρ·ρ`, row-major.
    pub fn square(&self) -> Vec<Complex64> {
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out[i * d + j] += a * self.entries[k * d + j];
                }
            }
        }
        out
    }

    pub(crate) fn from_validated(
        delta: f64,
        n_min: i64,
        dim: usize,
        entries: Vec<Complex64>,
    ) -> Self {
        Self {
            delta,
            n_min,
            dim,
            entries,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct DensityMatrixRepr {
    delta: f64,
    n_min: i64,
    entries: Vec<Vec<[f64; 2]>>,
}

impl TryFrom<DensityMatrixRepr> for DensityMatrix {
    type Error = Error;

    fn try_from(r: DensityMatrixRepr) -> Result<Self> {
        let dim = r.entries.len();
        if r.entries.iter().any(|row| row.len() != dim) {
            return domain("density matrix rows must all have the matrix dimension");
        }
        let entries = r
            .entries
            .iter()
            .flatten()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        DensityMatrix::new(r.delta, r.n_min, dim, entries)
    }
}

impl From<DensityMatrix> for DensityMatrixRepr {
    fn from(m: DensityMatrix) -> Self {
        Self {
            delta: m.delta,
            n_min: m.n_min,
            entries: m
                .entries
                .chunks(m.dim)
                .map(|row| row.iter().map(|c| [c.re, c.im]).collect())
                .collect(),
        }
    }
}

/// `ρ_mn = c_m conj(c_n)`.
pub fn pure_density(state: &FourierState) -> DensityMatrix {
    let dim = state.len();
    let c = state.coeffs();
    let mut entries = Vec::with_capacity(dim * dim);
    for a in c {
        for b in c {
            entries.push(a * b.conj());
        }
    }
    DensityMatrix::from_validated(state.delta(), state.n_min(), dim, entries)
}

/// A square operator matrix `O_mn = (e_m, O e_n)` on an index window.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    n_min: i64,
    dim: usize,
    entries: Vec<Complex64>,
}

impl Operator {
    pub fn new(n_min: i64, dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return domain(format!(
                "operator needs {dim}x{dim} entries, got {}",
                entries.len()
            ));
        }
        Ok(Self {
            n_min,
            dim,
            entries,
        })
    }

    fn zeros(n_min: i64, n_max: i64) -> Result<Self> {
        if n_max < n_min {
            return domain(format!("empty window [{n_min}, {n_max}]"));
        }
        let dim = (n_max - n_min + 1) as usize;
        Ok(Self {
            n_min,
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        })
    }

    fn set(&mut self, m: i64, n: i64, v: Complex64) {
        let (i, j) = ((m - self.n_min) as usize, (n - self.n_min) as usize);
        self.entries[i * self.dim + j] = v;
    }

    pub fn identity(n_min: i64, n_max: i64) -> Result<Self> {
        let mut op = Self::zeros(n_min, n_max)?;
        for n in n_min..=n_max {
            op.set(n, n, Complex64::new(1.0, 0.0));
        }
        Ok(op)
    }

    /// `L = (1/i)∂_φ`, diagonal with eigenvalues `n + δ`.
    pub fn angular_momentum(n_min: i64, n_max: i64, delta: f64) -> Result<Self> {
        let mut op = Self::zeros(n_min, n_max)?;
        for n in n_min..=n_max {
            op.set(n, n, Complex64::new(n as f64 + delta, 0.0));
        }
        Ok(op)
    }

    /// `C = cos φ`: `(e_m, C e_n) = (δ_{m,n+1} + δ_{m,n-1})/2`.
    pub fn cos_phi(n_min: i64, n_max: i64) -> Result<Self> {
        let mut op = Self::zeros(n_min, n_max)?;
        for n in n_min..n_max {
            op.set(n + 1, n, Complex64::new(0.5, 0.0));
            op.set(n, n + 1, Complex64::new(0.5, 0.0));
        }
        Ok(op)
    }

    /// `S = sin φ`: `(e_{n+1}, S e_n) = -i/2`, `(e_{n-1}, S e_n) = i/2`.
    pub fn sin_phi(n_min: i64, n_max: i64) -> Result<Self> {
        let mut op = Self::zeros(n_min, n_max)?;
        for n in n_min..n_max {
            op.set(n + 1, n, Complex64::new(0.0, -0.5));
            op.set(n, n + 1, Complex64::new(0.0, 0.5));
        }
        Ok(op)
    }

    pub fn n_min(&self) -> i64 {
        self.n_min
    }

    pub fn n_max(&self) -> i64 {
        self.n_min + self.dim as i64 - 1
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, m: i64, n: i64) -> Complex64 {
        let (lo, hi) = (self.n_min, self.n_max());
        if m < lo || m > hi || n < lo || n > hi {
            return Complex64::new(0.0, 0.0);
        }
        self.entries[(m - lo) as usize * self.dim + (n - lo) as usize]
    }

    /// `O ψ` restricted to the operator window, indexed from `n_min`.
    pub fn apply(&self, state: &FourierState) -> Vec<Complex64> {
        let d = self.dim;
        (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| self.entries[i * d + j] * state.coeff(self.n_min + j as i64))
                    .sum()
            })
            .collect()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let d = self.dim;
        (0..d).all(|i| {
            (i..d).all(|j| (self.entries[i * d + j] - self.entries[j * d + i].conj()).norm() <= tol)
        })
    }
}
