//! Wigner-Moyal functions on the cylinder `S¹ × ℝ`.
//!
//! The phase-space operator has the matrix elements
//!
//! ```text
//! V_mn(θ, p) = (2π)⁻¹ e^{i(n-m)θ} sinc π[p - (m + n + 2δ)/2]
//! ```
//!
//! in the angular-momentum basis `e_{n,δ}`. Every function of a state or a
//! density matrix here is a finite sum over these elements.
//!
//! Integrals over `p` are never truncated. All `p`-dependence is a finite
//! combination of shifted `sinc π(p - a)`, which are band-limited, so
//! `∫ sinc π(p-a) sinc π(p-b) dp = sinc π(a-b)` and more generally
//! `∫ sinc π(p-a) g(p) dp = g(a)` for any such `g`. Integrals over `θ` either
//! collapse to Kronecker deltas or go through [`ThetaQuadrature`].

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::specfun::{bessel_i, sinc, ThetaQuadrature};
use crate::states::{check_same_delta, DensityMatrix, FourierState, Operator};

mod cardinal;
mod grid;
mod reconstruct;

pub use cardinal::{extract_probability, sinc_overlap, sinc_overlap_by_quadrature, CardinalSeries};
pub use grid::{uniform_axis, WignerGrid};
pub use reconstruct::{reconstruct_density, Reconstruction};

pub(crate) const INV_TWO_PI: f64 = 1.0 / (2.0 * PI);

/// Largest imaginary part tolerated when a Wigner value is made real.
const REALITY_TOLERANCE: f64 = 1e-12;

/// A point `(θ, p)` of the cylinder; `θ` is reduced into `[-π, π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    theta: f64,
    p: f64,
}

impl PhasePoint {
    pub fn new(theta: f64, p: f64) -> Self {
        let two_pi = 2.0 * PI;
        let mut t = theta - two_pi * ((theta + PI) / two_pi).floor();
        if t >= PI {
            t -= two_pi;
        }
        Self { theta: t, p }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// `V_mn(θ, p)` for covering parameter `δ`.
pub fn wigner_matrix_element(m: i64, n: i64, delta: f64, at: PhasePoint) -> Complex64 {
    let centre = 0.5 * (m + n) as f64 + delta;
    Complex64::from_polar(INV_TWO_PI * sinc(at.p - centre), (n - m) as f64 * at.theta)
}

/// `Σ_{m,n} w(m, n) V_mn(θ, p)` for `m` in `[m_min, m_min + m_dim)` and `n` in
/// `[n_min, n_min + n_dim)`.
///
/// The sinc factor depends only on `m + n` and the phase only on `n - m`, so
/// both are tabulated once.
pub(crate) fn sandwich<W>(
    m_min: i64,
    m_dim: usize,
    n_min: i64,
    n_dim: usize,
    delta: f64,
    at: PhasePoint,
    weight: W,
) -> Complex64
where
    W: Fn(usize, usize) -> Complex64,
{
    let sum_base = m_min + n_min;
    let sincs: Vec<f64> = (0..m_dim + n_dim - 1)
        .map(|s| sinc(at.p - 0.5 * (sum_base + s as i64) as f64 - delta))
        .collect();
    // n - m runs from n_min - m_max to n_max - m_min
    let diff_base = n_min - (m_min + m_dim as i64 - 1);
    let phases: Vec<Complex64> = (0..m_dim + n_dim - 1)
        .map(|d| Complex64::from_polar(1.0, (diff_base + d as i64) as f64 * at.theta))
        .collect();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..m_dim {
        for j in 0..n_dim {
            let w = weight(i, j);
            if w.re == 0.0 && w.im == 0.0 {
                continue;
            }
            let s = i + j;
            let d = (j as i64 - i as i64 + m_dim as i64 - 1) as usize;
            acc += w * phases[d] * sincs[s];
        }
    }
    acc * INV_TWO_PI
}

/// The Moyal function `(ψ₂, V(θ,p) ψ₁) = Σ conj(c⁽²⁾_m) V_mn c⁽¹⁾_n`.
pub fn moyal_function(bra: &FourierState, ket: &FourierState, at: PhasePoint) -> Result<Complex64> {
    check_same_delta(bra.delta(), ket.delta())?;
    let (b, k) = (bra.coeffs(), ket.coeffs());
    Ok(sandwich(
        bra.n_min(),
        b.len(),
        ket.n_min(),
        k.len(),
        ket.delta(),
        at,
        |i, j| b[i].conj() * k[j],
    ))
}

fn make_real(z: Complex64) -> Result<f64> {
    if z.im.abs() > REALITY_TOLERANCE {
        return Err(Error::Numeric(format!(
            "Wigner value has imaginary residue {:.3e}",
            z.im
        )));
    }
    Ok(z.re)
}

/// The Wigner function `V_ψ(θ, p) = (ψ, V(θ,p) ψ)`.
pub fn wigner_function(state: &FourierState, at: PhasePoint) -> Result<f64> {
    make_real(moyal_function(state, state, at)?)
}

/// `V_ρ(θ, p) = tr[ρ·V(θ,p)] = Σ ρ_nm V_mn`.
pub fn wigner_density(rho: &DensityMatrix, at: PhasePoint) -> Result<f64> {
    let d = rho.dim();
    let e = rho.entries();
    make_real(sandwich(
        rho.n_min(),
        d,
        rho.n_min(),
        d,
        rho.delta(),
        at,
        |i, j| e[j * d + i],
    ))
}

/// Anything with a Wigner function: pure states and density matrices.
pub trait PhaseSpaceSource {
    fn delta(&self) -> f64;

    fn wigner(&self, at: PhasePoint) -> Result<f64>;

    /// `∫ V(θ, p) dp`, from the coefficients.
    fn angle_marginal(&self, theta: f64) -> f64;

    /// First index and the probabilities `P(n)` over the window.
    fn populations(&self) -> (i64, Vec<f64>);
}

impl PhaseSpaceSource for FourierState {
    fn delta(&self) -> f64 {
        FourierState::delta(self)
    }

    fn wigner(&self, at: PhasePoint) -> Result<f64> {
        wigner_function(self, at)
    }

    fn angle_marginal(&self, theta: f64) -> f64 {
        INV_TWO_PI * self.evaluate(theta).norm_sqr()
    }

    fn populations(&self) -> (i64, Vec<f64>) {
        (
            self.n_min(),
            self.coeffs().iter().map(|c| c.norm_sqr()).collect(),
        )
    }
}

impl PhaseSpaceSource for DensityMatrix {
    fn delta(&self) -> f64 {
        DensityMatrix::delta(self)
    }

    fn wigner(&self, at: PhasePoint) -> Result<f64> {
        wigner_density(self, at)
    }

    fn angle_marginal(&self, theta: f64) -> f64 {
        // (2π)⁻¹ Σ ρ_mn e^{i(m-n)θ}; δ cancels between e_m and conj(e_n)
        let d = self.dim();
        let e = self.entries();
        let mut acc = 0.0;
        for i in 0..d {
            acc += e[i * d + i].re;
            for j in (i + 1)..d {
                let phase = Complex64::from_polar(1.0, (i as f64 - j as f64) * theta);
                acc += 2.0 * (e[i * d + j] * phase).re;
            }
        }
        INV_TWO_PI * acc
    }

    fn populations(&self) -> (i64, Vec<f64>) {
        (self.n_min(), DensityMatrix::populations(self))
    }
}

/// Angle marginal `(2π)⁻¹|ψ(θ)|²` (or its density-matrix analogue).
pub fn marginal_angle<S: PhaseSpaceSource + ?Sized>(source: &S, theta: f64) -> f64 {
    source.angle_marginal(theta)
}

/// Momentum marginal `ω(p) = ∫ V(θ,p) dθ = Σ P(m) sinc π(p - m - δ)`.
pub fn marginal_momentum<S: PhaseSpaceSource + ?Sized>(source: &S) -> Result<CardinalSeries> {
    let (m_min, b) = source.populations();
    CardinalSeries::new(source.delta(), m_min, b)
}

/// `2π ∫∫ V_kl V_mn dθ dp`.
///
/// The `θ` integral of `e^{i(l-k+n-m)θ}` is `2π` or zero; the `p` integral is
/// the sinc overlap `sinc π((k+l-m-n)/2)`, independent of `δ`.
pub fn wigner_product_integral(k: i64, l: i64, m: i64, n: i64) -> f64 {
    if l - k + n - m != 0 {
        return 0.0;
    }
    sinc_overlap(0.5 * (k + l) as f64, 0.5 * (m + n) as f64)
}

/// `|(a, b)|²` from `2π ∫∫ V_a V_b dθ dp`, via the pairwise integrals of the
/// matrix elements.
pub fn overlap_from_wigner(a: &FourierState, b: &FourierState) -> Result<f64> {
    check_same_delta(a.delta(), b.delta())?;
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, ak) in a.iter() {
        for (l, al) in a.iter() {
            let wa = ak.conj() * al;
            for (m, bm) in b.iter() {
                // only n = m + k - l survives the θ integral
                let n = m + k - l;
                let bn = b.coeff(n);
                if bn == Complex64::new(0.0, 0.0) {
                    continue;
                }
                acc += wa * bm.conj() * bn * wigner_product_integral(k, l, m, n);
            }
        }
    }
    Ok(acc.re)
}

/// `tr(ρ O)` as the phase-space integral `2π ∫∫ tr[ρV] tr[OV] dθ dp`.
///
/// `O` must be Hermitian; indices outside its window count as zero.
pub fn expectation_via_phase_space(rho: &DensityMatrix, op: &Operator) -> Result<f64> {
    if !op.is_hermitian(1e-12) {
        return domain("expectation_via_phase_space: operator is not Hermitian");
    }
    // tr[ρV] = Σ ρ_nm V_mn, tr[OV] = Σ O_lk V_kl
    let mut acc = Complex64::new(0.0, 0.0);
    for m in rho.n_min()..=rho.n_max() {
        for n in rho.n_min()..=rho.n_max() {
            let r = rho.get(n, m);
            if r == Complex64::new(0.0, 0.0) {
                continue;
            }
            for k in op.n_min()..=op.n_max() {
                let l = k + m - n;
                let o = op.get(l, k);
                if o == Complex64::new(0.0, 0.0) {
                    continue;
                }
                acc += r * o * wigner_product_integral(m, n, k, l);
            }
        }
    }
    Ok(acc.re)
}

/// Weyl-symmetrized density `½ tr[V(θ,p)·(Oρ + ρO)]`, real for Hermitian `O`.
/// Its phase-space integral is `tr(ρO)`.
pub fn weyl_density(rho: &DensityMatrix, op: &Operator, at: PhasePoint) -> Result<f64> {
    if !op.is_hermitian(1e-12) {
        return domain("weyl_density: operator is not Hermitian");
    }
    let (lo, hi) = (rho.n_min(), rho.n_max());
    let d = rho.dim();
    // A = ½(Oρ + ρO) on the density-matrix window
    let mut sym = vec![Complex64::new(0.0, 0.0); d * d];
    for m in lo..=hi {
        for n in lo..=hi {
            let mut v = Complex64::new(0.0, 0.0);
            for k in lo..=hi {
                v += op.get(m, k) * rho.get(k, n) + rho.get(m, k) * op.get(k, n);
            }
            sym[(m - lo) as usize * d + (n - lo) as usize] = 0.5 * v;
        }
    }
    make_real(sandwich(lo, d, lo, d, rho.delta(), at, |i, j| {
        sym[j * d + i]
    }))
}

/// Both sides of the uncertainty relation for `A = sin φ`, `B = L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyProduct {
    /// `(ΔS)²(ΔL)²`
    pub lhs: f64,
    /// `|⟨S_ψ(S, L)⟩|² + ¼|⟨[S, L]⟩|²`
    pub rhs: f64,
}

pub fn uncertainty_product(state: &FourierState) -> UncertaintyProduct {
    // one extra index on each side so S ψ is exact
    let (lo, hi) = (state.n_min() - 1, state.n_max() + 1);
    let s_op = Operator::sin_phi(lo, hi).expect("non-empty window");
    let s_psi = s_op.apply(state);
    let l_psi: Vec<Complex64> = (lo..=hi)
        .map(|n| state.coeff(n) * (n as f64 + state.delta()))
        .collect();
    let psi: Vec<Complex64> = (lo..=hi).map(|n| state.coeff(n)).collect();
    let dot = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
    };
    let mean_s = dot(&psi, &s_psi).re;
    let mean_l = dot(&psi, &l_psi).re;
    let var_s = dot(&s_psi, &s_psi).re - mean_s * mean_s;
    let var_l = dot(&l_psi, &l_psi).re - mean_l * mean_l;
    // ⟨SL⟩ = (Sψ, Lψ), ⟨LS⟩ is its conjugate
    let sl = dot(&s_psi, &l_psi);
    let symmetric = sl.re - mean_s * mean_l;
    let commutator = 2.0 * sl.im;
    UncertaintyProduct {
        lhs: var_s * var_l,
        rhs: symmetric * symmetric + 0.25 * commutator * commutator,
    }
}

/// `sinc[π(p - ħm)/ħ]`, the basis-state Wigner profile with `ħ` restored.
pub fn rescale_hbar(p_physical: f64, hbar: f64, m: i64) -> Result<f64> {
    if !(hbar > 0.0 && hbar.is_finite()) {
        return domain(format!("rescale_hbar: hbar = {hbar} must be positive"));
    }
    if !p_physical.is_finite() {
        return domain(format!("rescale_hbar: non-finite momentum {p_physical}"));
    }
    Ok(sinc((p_physical - hbar * m as f64) / hbar))
}

/// Mass of `ħ⁻¹ sinc[π(p - ħm)/ħ]` inside `|p - ħm| < half_width`, by quadrature.
///
/// Tends to one as `ħ → 0`, the profile approaching `δ(p - ħm)`.
pub fn classical_limit_mass(hbar: f64, m: i64, half_width: f64) -> Result<f64> {
    if !(half_width > 0.0 && half_width.is_finite()) {
        return domain(format!(
            "classical_limit_mass: half-width {half_width} must be positive"
        ));
    }
    rescale_hbar(0.0, hbar, m)?;
    let centre = hbar * m as f64;
    let order = 64 + 2 * (half_width / hbar).ceil() as usize;
    let quad = ThetaQuadrature::on_interval(centre - half_width, centre + half_width, order)?;
    Ok(quad.integrate(|p| sinc((p - centre) / hbar) / hbar))
}

/// The von Mises Wigner function from its angle-integral form
/// `[(2π)² I_0(2s)]⁻¹ ∫_{-π}^{π} e^{-i(p-p_e)ϑ + 2s cos θ cos(ϑ/2)} dϑ`,
/// by quadrature. Independent of the coefficient sum in [`wigner_function`].
pub fn von_mises_wigner_integral(s: f64, p_e: f64, at: PhasePoint, order: usize) -> Result<f64> {
    if !(s > 0.0 && s.is_finite() && p_e.is_finite()) {
        return domain(format!("von Mises integral: s = {s}, p_e = {p_e}"));
    }
    let i0 = bessel_i(0, 2.0 * s)?;
    let quad = ThetaQuadrature::new(order)?;
    let (dp, c) = (at.p - p_e, 2.0 * s * at.theta.cos());
    // the odd sine part integrates to zero
    let integral = quad.try_integrate(|v| (dp * v).cos() * (c * (0.5 * v).cos()).exp())?;
    Ok(integral * INV_TWO_PI * INV_TWO_PI / i0)
}
