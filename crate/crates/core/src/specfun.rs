//! Special functions and fixed quadrature.
//!
//! Everything here is a pure function of its arguments. The routines cover the
//! modest argument ranges the phase-space code needs (Bessel orders and
//! arguments of a few tens, theta nomes anywhere in `[0, 1)`) at full double
//! precision, and refuse arguments where they would silently lose digits.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};

/// Default number of Gauss-Legendre nodes per panel for angle integrals.
pub const DEFAULT_ORDER: usize = 64;

/// Panels used by [`ThetaQuadrature`] on `[-π, π]`.
const THETA_PANELS: usize = 8;

const SINC_TAYLOR_THRESHOLD: f64 = 1e-6;
const BESSEL_MAX_ORDER: u64 = 1_000_000;
const BESSEL_MAX_ARG: f64 = 700.0;
const BESSEL_SERIES_LIMIT: f64 = 15.0;
const THETA_TRUNCATION: f64 = 1e-16;

/// Normalized cardinal sine `sin(πx)/(πx)`.
///
/// Non-finite input is rejected. Near zero a short Taylor polynomial fills the
/// removable singularity; nonzero integers give exactly zero.
pub fn sinc_pi(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return domain(format!("sinc_pi: non-finite argument {x}"));
    }
    Ok(sinc(x))
}

/// Unchecked `sinc_pi`, for inner loops whose arguments are known finite.
#[inline]
pub(crate) fn sinc(x: f64) -> f64 {
    if x.abs() < SINC_TAYLOR_THRESHOLD {
        let y = PI * x;
        let y2 = y * y;
        1.0 - y2 / 6.0 + y2 * y2 / 120.0
    } else if x == x.round() {
        0.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

/// A Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    order: usize,
}

impl QuadratureRule {
    /// Builds the `order`-point Gauss-Legendre rule by Newton iteration on the
    /// Legendre polynomial `P_order`.
    pub fn gauss_legendre(order: usize) -> Result<Self> {
        if order == 0 {
            return domain("quadrature order must be positive");
        }
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            // Tricomi's initial guess for the i-th largest root.
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut deriv = 0.0;
            for _ in 0..100 {
                let (p, dp) = legendre_with_derivative(n, x);
                deriv = dp;
                let dx = p / dp;
                x -= dx;
                if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                    deriv = legendre_with_derivative(n, x).1;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * deriv * deriv);
            nodes[n - 1 - i] = x;
            nodes[i] = -x;
            weights[n - 1 - i] = w;
            weights[i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Ok(Self {
            nodes,
            weights,
            order,
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Integrates `f` over `[a, b]` with a single application of the rule.
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        half * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Composite Gauss-Legendre quadrature over the full angle interval `[-π, π]`.
///
/// The interval is split into eight equal panels with `order` nodes each, which
/// integrates trigonometric polynomials of degree up to `order + 4` to 1e-12.
#[derive(Debug, Clone)]
pub struct ThetaQuadrature {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl ThetaQuadrature {
    pub fn new(order: usize) -> Result<Self> {
        Self::on_interval(-PI, PI, order)
    }

    /// Same panel layout over an arbitrary finite interval.
    pub fn on_interval(a: f64, b: f64, order: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return domain(format!("invalid integration interval [{a}, {b}]"));
        }
        let rule = QuadratureRule::gauss_legendre(order)?;
        let h = (b - a) / THETA_PANELS as f64;
        let mut nodes = Vec::with_capacity(THETA_PANELS * order);
        let mut weights = Vec::with_capacity(THETA_PANELS * order);
        for panel in 0..THETA_PANELS {
            let mid = a + h * (panel as f64 + 0.5);
            for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
                nodes.push(mid + 0.5 * h * x);
                weights.push(0.5 * h * w);
            }
        }
        Ok(Self { nodes, weights })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn integrate_complex<F: Fn(f64) -> Complex64>(&self, f: F) -> Complex64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| f(x) * w)
            .sum()
    }

    /// Like [`integrate`](Self::integrate) but rejects non-finite samples.
    pub fn try_integrate<F: Fn(f64) -> f64>(&self, f: F) -> Result<f64> {
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            let v = f(x);
            if !v.is_finite() {
                return Err(Error::Numeric(format!(
                    "integrand is not finite at {x}: {v}"
                )));
            }
            acc += w * v;
        }
        Ok(acc)
    }
}

/// `∫_{-π}^{π} f(ϑ) dϑ` by composite Gauss-Legendre with `order` nodes per panel.
pub fn integrate_theta<F: Fn(f64) -> f64>(f: F, order: usize) -> Result<f64> {
    if order < 8 {
        return domain(format!("integrate_theta: order {order} < 8"));
    }
    ThetaQuadrature::new(order)?.try_integrate(f)
}

/// Modified Bessel function of the first kind `I_n(z)` for integer order.
///
/// Uses the ascending series for `|z| <= 15` and Miller's backward recurrence
/// normalized by `I_0 + 2 Σ I_k = e^z` beyond that.
pub fn bessel_i(n: i64, z: f64) -> Result<f64> {
    if !z.is_finite() {
        return domain(format!("bessel_i: non-finite argument {z}"));
    }
    let order = n.unsigned_abs();
    if order > BESSEL_MAX_ORDER {
        return domain(format!(
            "bessel_i: |n| = {order} exceeds {BESSEL_MAX_ORDER}"
        ));
    }
    if z.abs() > BESSEL_MAX_ARG {
        return Err(Error::Range(format!(
            "bessel_i: |z| = {} overflows (limit {BESSEL_MAX_ARG})",
            z.abs()
        )));
    }
    if z == 0.0 {
        return Ok(if order == 0 { 1.0 } else { 0.0 });
    }
    let x = z.abs();
    let value = if x <= BESSEL_SERIES_LIMIT {
        bessel_i_series(order, x)
    } else {
        bessel_i_miller(order, x)
    };
    if z < 0.0 && order % 2 == 1 {
        Ok(-value)
    } else {
        Ok(value)
    }
}

fn bessel_i_series(n: u64, x: f64) -> f64 {
    let half = 0.5 * x;
    let ln_factorial: f64 = (2..=n).map(|k| (k as f64).ln()).sum();
    let ln_first = n as f64 * half.ln() - ln_factorial;
    if ln_first < -745.0 {
        return 0.0;
    }
    let q = half * half;
    let mut term = ln_first.exp();
    let mut sum = term;
    let nf = n as f64;
    let mut k = 1.0;
    loop {
        term *= q / (k * (k + nf));
        sum += term;
        if term <= 1e-17 * sum {
            break;
        }
        k += 1.0;
    }
    sum
}

fn bessel_i_miller(n: u64, x: f64) -> f64 {
    const BIG: f64 = 1e250;
    let reach = (n as f64).max(x);
    let start = (reach + 30.0 + 2.0 * (40.0 * reach).sqrt()).ceil() as u64;
    let two_over_x = 2.0 / x;
    let mut above = 0.0; // I_{j+1}
    let mut current = 1e-300; // I_j, arbitrary scale
    let mut wanted = 0.0;
    let mut sum = 0.0;
    for j in (1..=start).rev() {
        let below = above + j as f64 * two_over_x * current;
        above = current;
        current = below;
        sum += 2.0 * above;
        if j == n {
            wanted = above;
        }
        if current.abs() > BIG {
            current /= BIG;
            above /= BIG;
            wanted /= BIG;
            sum /= BIG;
        }
    }
    if n == 0 {
        wanted = current;
    }
    sum += current;
    // sum is now proportional to I_0 + 2 Σ I_k = e^x.
    wanted / sum * x.exp()
}

fn check_nome(q: f64) -> Result<()> {
    if !(0.0..1.0).contains(&q) {
        return domain(format!("theta3: nome q = {q} outside [0, 1)"));
    }
    Ok(())
}

/// Jacobi theta function `θ₃(z, q) = 1 + 2 Σ_{n≥1} q^{n²} cos 2nz` for real `z`.
///
/// Switches to the Jacobi-transformed series when `q > e^{-1}`, where the
/// direct series converges slowly.
pub fn theta3(z: f64, q: f64) -> Result<f64> {
    check_nome(q)?;
    if q > (-1.0f64).exp() {
        theta3_jacobi(z, -q.ln())
    } else {
        theta3_series(z, q)
    }
}

/// Direct cosine series for `θ₃(z, q)`, truncated once `q^{n²} < 1e-16`.
pub fn theta3_series(z: f64, q: f64) -> Result<f64> {
    check_nome(q)?;
    if !z.is_finite() {
        return domain(format!("theta3: non-finite argument {z}"));
    }
    if q == 0.0 {
        return Ok(1.0);
    }
    let ln_q = q.ln();
    let mut sum = 1.0;
    let mut n = 1.0f64;
    loop {
        let weight = (n * n * ln_q).exp();
        if weight < THETA_TRUNCATION {
            break;
        }
        sum += 2.0 * weight * (2.0 * n * z).cos();
        n += 1.0;
    }
    Ok(sum)
}

/// `θ₃(z | τ = iεβ/π)`, i.e. `θ₃(z, e^{-εβ})`, through Jacobi's imaginary
/// transformation with transformed nome `e^{-π²/εβ}`.
///
/// The prefactor `e^{-z²/εβ}` is folded into each `cosh` term, giving the
/// overflow-free lattice sum `√(π/εβ) Σ_n exp(-(z - nπ)²/εβ)`.
pub fn theta3_jacobi(z: f64, eps_beta: f64) -> Result<f64> {
    if !(eps_beta > 0.0 && eps_beta.is_finite()) {
        return domain(format!("theta3_jacobi: eps_beta = {eps_beta} must be > 0"));
    }
    if !z.is_finite() {
        return domain(format!("theta3_jacobi: non-finite argument {z}"));
    }
    // θ₃ is π-periodic in z.
    let z = z - PI * (z / PI).round();
    let gauss = |n: f64| (-(z - n * PI).powi(2) / eps_beta).exp();
    let mut sum = gauss(0.0);
    let mut n = 1.0f64;
    loop {
        let pair = gauss(n) + gauss(-n);
        sum += pair;
        if pair <= 1e-17 * sum {
            break;
        }
        n += 1.0;
    }
    Ok((PI / eps_beta).sqrt() * sum)
}

/// `θ₃(iy, q) = 1 + 2 Σ q^{n²} cosh 2ny`, real for real `y`.
///
/// Reports a range error when a term would overflow a double.
pub fn theta3_imaginary(y: f64, q: f64) -> Result<f64> {
    check_nome(q)?;
    if !y.is_finite() {
        return domain(format!("theta3_imaginary: non-finite argument {y}"));
    }
    if q == 0.0 {
        return Ok(1.0);
    }
    let ln_q = q.ln();
    let y = y.abs();
    let peak = y / -ln_q;
    let mut sum = 1.0;
    let mut n = 1.0f64;
    loop {
        let exponent = n * n * ln_q + 2.0 * n * y;
        if exponent > 709.0 {
            return Err(Error::Range(format!(
                "theta3_imaginary: term {n} overflows (exponent {exponent:.1})"
            )));
        }
        let term = exponent.exp() * (1.0 + (-4.0 * n * y).exp());
        sum += term;
        if n > peak && term <= THETA_TRUNCATION * sum {
            break;
        }
        n += 1.0;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Trapezoid on the full period; exponentially accurate for periodic
    /// analytic integrands and independent of the Gauss-Legendre code.
    fn bessel_by_trapezoid(n: i64, z: f64) -> f64 {
        let m = 4096;
        let h = 2.0 * PI / m as f64;
        (0..m)
            .map(|k| {
                let phi = -PI + k as f64 * h;
                (z * phi.cos()).exp() * (n as f64 * phi).cos()
            })
            .sum::<f64>()
            * h
            / (2.0 * PI)
    }

    #[test]
    fn sinc_special_values() {
        assert_eq!(sinc_pi(0.0).unwrap(), 1.0);
        assert!(sinc_pi(1.0).unwrap().abs() < 1e-16);
        assert_relative_eq!(sinc_pi(0.5).unwrap(), 2.0 / PI, max_relative = 1e-15);
        assert!(matches!(sinc_pi(f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(sinc_pi(f64::INFINITY), Err(Error::Domain(_))));
    }

    #[test]
    fn sinc_vanishes_on_nonzero_integers() {
        for m in -50..=50 {
            let v = sinc_pi(m as f64).unwrap();
            let expect = if m == 0 { 1.0 } else { 0.0 };
            assert!((v - expect).abs() <= 1e-15, "m = {m}: {v}");
        }
    }

    #[test]
    fn sinc_taylor_branch_is_continuous() {
        let t = SINC_TAYLOR_THRESHOLD;
        let inside = sinc(t * (1.0 - 1e-9));
        let outside = sinc(t * (1.0 + 1e-9));
        assert!((inside - outside).abs() < 1e-15);
    }

    #[test]
    fn gauss_legendre_rule_shape() {
        for order in [1, 2, 5, 8, 17, 64, 129] {
            let rule = QuadratureRule::gauss_legendre(order).unwrap();
            let total: f64 = rule.weights().iter().sum();
            assert!((total - 2.0).abs() <= 1e-14, "order {order}: {total}");
            assert!(rule.nodes().windows(2).all(|w| w[0] < w[1]));
            assert!(rule.nodes().iter().all(|x| (-1.0..=1.0).contains(x)));
        }
        assert!(QuadratureRule::gauss_legendre(0).is_err());
    }

    #[test]
    fn gauss_legendre_is_exact_on_monomials() {
        for order in [3usize, 8, 20, 64] {
            let rule = QuadratureRule::gauss_legendre(order).unwrap();
            for k in 0..(2 * order) {
                let got = rule.integrate(-1.0, 1.0, |x| x.powi(k as i32));
                let exact = if k % 2 == 1 {
                    0.0
                } else {
                    2.0 / (k as f64 + 1.0)
                };
                assert!((got - exact).abs() < 1e-13, "order {order}, x^{k}");
            }
        }
    }

    #[test]
    fn integrate_theta_examples() {
        assert_relative_eq!(
            integrate_theta(|_| 1.0, 64).unwrap(),
            2.0 * PI,
            max_relative = 1e-15
        );
        for k in 1..=20 {
            let v = integrate_theta(|t| (k as f64 * t).cos(), 64).unwrap();
            assert!(v.abs() < 1e-13, "k = {k}: {v}");
        }
        assert_relative_eq!(
            integrate_theta(|t| t.cos().powi(2), 64).unwrap(),
            PI,
            max_relative = 1e-14
        );
        assert!(integrate_theta(|_| 1.0, 7).is_err());
        assert!(matches!(
            integrate_theta(|t| 1.0 / t.abs().min(0.0), 16),
            Err(Error::Numeric(_))
        ));
    }

    #[test]
    fn integrate_theta_trig_polynomials_up_to_order_minus_two() {
        for order in [8usize, 16, 32, 64] {
            for k in 0..=(order - 2) {
                let c = integrate_theta(|t| (k as f64 * t).cos(), order).unwrap();
                let s = integrate_theta(|t| (k as f64 * t).sin(), order).unwrap();
                let exact = if k == 0 { 2.0 * PI } else { 0.0 };
                assert!((c - exact).abs() <= 1e-12, "order {order}, cos {k}: {c}");
                assert!(s.abs() <= 1e-12, "order {order}, sin {k}: {s}");
            }
        }
    }

    #[test]
    fn sinc_generating_integral() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let quad = ThetaQuadrature::new(DEFAULT_ORDER).unwrap();
        for _ in 0..100 {
            let x: f64 = rng.gen_range(-5.0..5.0);
            let v = quad.integrate(|a| (x * a).cos()) / (2.0 * PI);
            assert!((v - sinc_pi(x).unwrap()).abs() <= 1e-12, "x = {x}");
        }
    }

    #[test]
    fn bessel_special_values() {
        assert_eq!(bessel_i(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_i(3, 0.0).unwrap(), 0.0);
        // I_0(1) = 1.2661 to the four quoted decimals.
        assert!((bessel_i(0, 1.0).unwrap() - 1.2661).abs() < 5e-5);
        assert!(matches!(bessel_i(0, 701.0), Err(Error::Range(_))));
        assert!(matches!(bessel_i(2_000_000, 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn bessel_symmetries() {
        for n in -6..=6i64 {
            for z in [0.3, 1.7, 9.0, 18.0] {
                let a = bessel_i(n, z).unwrap();
                assert_eq!(a, bessel_i(-n, z).unwrap());
                let sign = if n.rem_euclid(2) == 1 { -1.0 } else { 1.0 };
                assert_eq!(bessel_i(n, -z).unwrap(), sign * a);
            }
        }
    }

    #[test]
    fn bessel_matches_integral_representation() {
        for n in 0..=10i64 {
            for z in [0.01, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 14.9, 15.1, 20.0] {
                let got = bessel_i(n, z).unwrap();
                let oracle = bessel_by_trapezoid(n, z);
                assert_relative_eq!(got, oracle, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn bessel_series_and_recurrence_agree_at_switch() {
        for n in [0u64, 1, 5, 30] {
            for x in [12.0, 15.0, 18.0] {
                assert_relative_eq!(
                    bessel_i_series(n, x),
                    bessel_i_miller(n, x),
                    max_relative = 1e-13
                );
            }
        }
    }

    #[test]
    fn bessel_large_arguments_stay_finite() {
        let i0 = bessel_i(0, 700.0).unwrap();
        // I_0(x) ~ e^x / sqrt(2πx) (1 + 1/(8x))
        let asym = 700f64.exp() / (2.0 * PI * 700.0).sqrt() * (1.0 + 1.0 / 5600.0);
        assert_relative_eq!(i0, asym, max_relative = 1e-6);
        assert!(bessel_i(1_000_000, 20.0).unwrap() == 0.0);
        assert!(bessel_i(200, 100.0).unwrap().is_finite());
    }

    #[test]
    fn bessel_square_sum_addition_theorem() {
        for s in [0.1, 0.5, 1.0, 2.0, 3.0] {
            let sum: f64 = (-40..=40).map(|k| bessel_i(k, s).unwrap().powi(2)).sum();
            assert_relative_eq!(sum, bessel_i(0, 2.0 * s).unwrap(), max_relative = 1e-10);
        }
    }

    #[test]
    fn theta3_basic_values() {
        for z in [-2.0, 0.0, 0.3, 7.0] {
            assert_eq!(theta3(z, 0.0).unwrap(), 1.0);
        }
        for q in [0.1, 0.3, 0.8] {
            assert_eq!(theta3(0.7, q).unwrap(), theta3(-0.7, q).unwrap());
        }
        assert!(theta3(0.0, 1.0).is_err());
        assert!(theta3(0.0, -0.1).is_err());
    }

    #[test]
    fn theta3_positive_on_real_axis() {
        for q in [0.1, 0.5, 0.9] {
            for k in 0..=200 {
                let z = -PI + k as f64 * PI / 100.0;
                assert!(theta3(z, q).unwrap() > 0.0, "q={q}, z={z}");
            }
        }
    }

    #[test]
    fn theta3_jacobi_agrees_with_series() {
        for k in 0..=45 {
            let eb = 0.5 + 0.1 * k as f64;
            for z in [0.0, 0.2, 0.9, PI / 2.0, 2.5, -4.0] {
                let a = theta3_series(z, (-eb).exp()).unwrap();
                let b = theta3_jacobi(z, eb).unwrap();
                assert_relative_eq!(a, b, max_relative = 1e-12);
            }
        }
        // at the unit nome exponent, z = 0
        assert_relative_eq!(
            theta3_series(0.0, (-1.0f64).exp()).unwrap(),
            theta3_jacobi(0.0, 1.0).unwrap(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn theta3_jacobi_high_temperature() {
        let v = theta3_jacobi(0.0, 0.01).unwrap();
        assert_relative_eq!(v, (PI / 0.01).sqrt(), max_relative = 1e-8);
        assert!(theta3_jacobi(0.0, 0.0).is_err());
        assert!(theta3_jacobi(0.0, -1.0).is_err());
        // deep high-temperature regime where the cosh form would overflow
        assert!(theta3_jacobi(1.2, 1e-4).unwrap().is_finite());
        // large eps_beta: plain series
        assert_relative_eq!(
            theta3_jacobi(0.4, 12.0).unwrap(),
            theta3_series(0.4, (-12.0f64).exp()).unwrap(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn theta3_imaginary_argument() {
        // θ₃(α/2, e^{-εβ}) = √(π/εβ) e^{-α²/4εβ} θ₃(iπα/2εβ, e^{-π²/εβ})
        for eb in [0.3f64, 1.0, 2.0] {
            for alpha in [0.0, 0.4, 1.3, 3.0] {
                let lhs = theta3_series(alpha / 2.0, (-eb).exp()).unwrap();
                let rhs = (PI / eb).sqrt()
                    * (-alpha * alpha / (4.0 * eb)).exp()
                    * theta3_imaginary(PI * alpha / (2.0 * eb), (-PI * PI / eb).exp()).unwrap();
                assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
            }
        }
        assert!(matches!(theta3_imaginary(400.0, 0.5), Err(Error::Range(_))));
    }
}
