use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::dynamics::{
    evolve_density, evolve_state, k_matrix, wigner_time_derivative, DiagonalHamiltonian,
};
use crate::specfun::{
    bessel_i, sinc, theta3_jacobi, theta3_series, ThetaQuadrature, DEFAULT_ORDER,
};
use crate::states::{
    basis_state, cat_state, pure_density, von_mises_state, DensityMatrix, FourierState,
};
use crate::thermal::{
    high_temp_momentum_integral, high_temp_wigner, low_temp_wigner, partition_function_direct,
    thermal_density, thermal_wigner, ThermalParams,
};
use crate::wigner::{
    classical_limit_mass, extract_probability, marginal_angle, marginal_momentum,
    reconstruct_density, sinc_overlap_by_quadrature, uncertainty_product, uniform_axis,
    wigner_density, wigner_function, wigner_matrix_element, wigner_product_integral, PhasePoint,
    WignerGrid, INV_TWO_PI,
};

use super::TolProfile;

/// One line of the verification report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantReport {
    pub invariant_id: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

type Kernel = fn(f64) -> f64;

fn perturbed_sinc(x: f64) -> f64 {
    sinc(x) * (1.0 + 1e-6)
}

struct Suite {
    scale: f64,
    reports: Vec<InvariantReport>,
}

impl Suite {
    /// Records a rounding-level check; its tolerance follows the profile.
    fn numeric(&mut self, id: &str, residual: f64, tolerance: f64) {
        self.push(id, residual, tolerance * self.scale);
    }

    /// Records a check against an approximation bound, which no profile moves.
    fn bound(&mut self, id: &str, residual: f64, tolerance: f64) {
        self.push(id, residual, tolerance);
    }

    fn push(&mut self, id: &str, residual: f64, tolerance: f64) {
        self.reports.push(InvariantReport {
            invariant_id: id.to_string(),
            residual,
            tolerance,
            // NaN residuals fail
            pass: residual <= tolerance,
        });
    }
}

fn max_of<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().fold(0.0, |m, x| {
        if x.is_nan() || m.is_nan() {
            f64::NAN
        } else {
            m.max(x)
        }
    })
}

/// Deterministic equidistributed points in `[0, 1)`.
fn weyl(i: usize, alpha: f64) -> f64 {
    (0.5 + i as f64 * alpha).fract()
}

fn families() -> Vec<(&'static str, DensityMatrix)> {
    let thermal = thermal_density(&ThermalParams::new(1.0).unwrap()).unwrap();
    vec![
        ("basis", pure_density(&basis_state(1, 0.3).unwrap())),
        ("cat", pure_density(&cat_state(0.5).unwrap())),
        (
            "von_mises",
            pure_density(&von_mises_state(0.5, 0.3, None).unwrap()),
        ),
        ("thermal", thermal),
    ]
}

/// Runs every invariant. `fault_inject` swaps in a sinc kernel off by one
/// part in a million, which the orthonormality checks must catch.
pub fn run_verification(profile: TolProfile, fault_inject: bool) -> Vec<InvariantReport> {
    let kernel: Kernel = if fault_inject { perturbed_sinc } else { sinc };
    let mut suite = Suite {
        scale: profile.scale(),
        reports: Vec::new(),
    };
    orthonormality(&mut suite, kernel);
    matrix_elements(&mut suite);
    cat_values(&mut suite);
    von_mises(&mut suite);
    round_trips(&mut suite);
    thermal(&mut suite);
    dynamics(&mut suite);
    classical_limit(&mut suite);
    suite.reports
}

fn orthonormality(suite: &mut Suite, kernel: Kernel) {
    let quad = ThetaQuadrature::new(DEFAULT_ORDER).unwrap();
    let mut swap = 0.0f64;
    let mut by_quad = 0.0f64;
    for m in -10..=10 {
        for n in -10..=10 {
            let delta = if m == n { 1.0 } else { 0.0 };
            swap = max_of([swap, (kernel((m - n) as f64) - delta).abs()]);
            by_quad = max_of([
                by_quad,
                (sinc_overlap_by_quadrature(m as f64, n as f64, &quad) - delta).abs(),
            ]);
        }
    }
    suite.numeric("sinc_orthonormality", swap, 1e-12);
    suite.numeric("sinc_orthonormality_quadrature", by_quad, 1e-12);

    let mut residual = 0.0f64;
    for k in -2..=2 {
        for l in -2..=2 {
            for m in -2..=2 {
                for n in -2..=2 {
                    let expect = if k == n && l == m { 1.0 } else { 0.0 };
                    let via_kernel = if l - k + n - m == 0 {
                        kernel(0.5 * (k + l - m - n) as f64)
                    } else {
                        0.0
                    };
                    residual = max_of([
                        residual,
                        (via_kernel - expect).abs(),
                        (wigner_product_integral(k, l, m, n) - expect).abs(),
                    ]);
                }
            }
        }
    }
    suite.numeric("wigner_orthogonality", residual, 1e-10);
}

fn matrix_elements(suite: &mut Suite) {
    let mut herm = 0.0f64;
    let mut excess = 0.0f64;
    for i in 0..1000 {
        let m = (weyl(i, 0.754_877_666) * 61.0) as i64 - 30;
        let n = (weyl(i, 0.569_840_291) * 61.0) as i64 - 30;
        let delta = weyl(i, 0.618_033_989);
        let at = PhasePoint::new(
            2.0 * PI * weyl(i, 0.414_213_562) - PI,
            80.0 * weyl(i, 0.732_050_808) - 40.0,
        );
        let v = wigner_matrix_element(m, n, delta, at);
        herm = max_of([
            herm,
            (v - wigner_matrix_element(n, m, delta, at).conj()).norm(),
        ]);
        excess = max_of([excess, v.norm() - INV_TWO_PI]);
    }
    suite.numeric("wigner_hermiticity", herm, 1e-15);
    suite.numeric("wigner_element_bound", excess, 1e-15);
}

fn cat_values(suite: &mut Suite) {
    let st = cat_state(0.0).unwrap();
    let v = |t: f64, p: f64| 2.0 * PI * wigner_function(&st, PhasePoint::new(t, p)).unwrap();
    let thetas = uniform_axis(-PI, PI, 37).unwrap();
    suite.numeric(
        "cat_p0_cos2theta",
        max_of(thetas.iter().map(|&t| (v(t, 0.0) - (2.0 * t).cos()).abs())),
        1e-10,
    );
    suite.numeric(
        "cat_p_pm1_half",
        max_of(
            thetas
                .iter()
                .flat_map(|&t| [(v(t, 1.0) - 0.5).abs(), (v(t, -1.0) - 0.5).abs()]),
        ),
        1e-10,
    );
}

fn von_mises(suite: &mut Suite) {
    let (s, pe) = (0.5, 0.3);
    let st = von_mises_state(s, pe, None).unwrap();
    let i0 = bessel_i(0, 2.0 * s).unwrap();
    let offsets = uniform_axis(-4.0, 4.0, 161).unwrap();
    let quarter = max_of(offsets.iter().flat_map(|&x| {
        let expect = sinc(x) * INV_TWO_PI / i0;
        [PI / 2.0, -PI / 2.0]
            .map(|t| (wigner_function(&st, PhasePoint::new(t, pe + x)).unwrap() - expect).abs())
    }));
    suite.numeric("von_mises_quarter_turn", quarter, 1e-9);

    let thetas = uniform_axis(-PI, PI, 73).unwrap();
    let angle =
        max_of(thetas.iter().map(|&t| {
            (marginal_angle(&st, t) - (2.0 * s * t.cos()).exp() * INV_TWO_PI / i0).abs()
        }));
    suite.numeric("von_mises_angle_marginal", angle, 1e-9);

    let omega = marginal_momentum(&st).unwrap();
    let n_e = pe.floor() as i64;
    let pops = max_of(((n_e - 10)..=(n_e + 10)).map(|m| {
        (extract_probability(&omega, m) - bessel_i(m - n_e, s).unwrap().powi(2) / i0).abs()
    }));
    suite.numeric("von_mises_populations", pops, 1e-9);

    let unc = max_of([0.25, 0.5, 1.0, 2.0].map(|s| {
        let u = uncertainty_product(&von_mises_state(s, pe, None).unwrap());
        (u.lhs - u.rhs).abs()
    }));
    suite.numeric("von_mises_uncertainty_saturation", unc, 1e-8);
}

fn round_trips(suite: &mut Suite) {
    let thetas = uniform_axis(-PI, PI, 181).unwrap();
    let ps: Vec<f64> = (0..20)
        .map(|i| 8.0 * weyl(i, 0.618_033_989) - 4.0)
        .collect();
    for (name, rho) in families() {
        let grid = WignerGrid::sample(&thetas, &ps, |at| wigner_density(&rho, at)).unwrap();
        let omega = marginal_momentum(&rho).unwrap();
        let marg = grid.theta_marginal().unwrap();
        let residual = max_of(
            ps.iter()
                .zip(&marg)
                .map(|(&p, &m)| (m - omega.evaluate(p)).abs()),
        );
        suite.numeric(&format!("marginal_theta_quadrature_{name}"), residual, 1e-9);

        let rec = reconstruct_density(
            |at| wigner_density(&rho, at).unwrap_or(f64::NAN),
            rho.n_min(),
            rho.n_max(),
            rho.delta(),
        );
        let residual = rec.map(|r| r.max_deviation(&rho)).unwrap_or(f64::NAN);
        suite.numeric(&format!("reconstruction_{name}"), residual, 1e-8);
    }
}

fn thermal(suite: &mut Suite) {
    let routes = max_of([0.01, 0.1, 1.0, 10.0, 40.0].map(|eb| {
        let tp = ThermalParams::new(eb).unwrap();
        let direct = partition_function_direct(&tp);
        let series = theta3_series(0.0, tp.q()).unwrap();
        let jacobi = theta3_jacobi(0.0, eb).unwrap();
        max_of([
            (direct - series).abs(),
            (direct - jacobi).abs(),
            (series - jacobi).abs(),
        ]) / direct
    }));
    suite.numeric("thermal_partition_routes", routes, 1e-11);

    // the leading neglected terms are O(e^{-2εβ})
    for eb in [3.0, 5.0, 8.0] {
        let tp = ThermalParams::new(eb).unwrap();
        let diff = max_of((0..=500).map(|k| {
            let p = -2.5 + 0.01 * k as f64;
            (low_temp_wigner(&tp, p).unwrap() - thermal_wigner(&tp, PhasePoint::new(0.0, p))).abs()
        }));
        suite.bound(
            &format!("thermal_low_temp_eps_beta_{eb}"),
            diff,
            5.0 * (-2.0 * eb).exp(),
        );
    }

    let tp = ThermalParams::new(0.01).unwrap();
    let wide = tp.with_window(400);
    let rel = max_of((0..=400).map(|k| {
        let p = -20.0 + 0.1 * k as f64;
        let exact = thermal_wigner(&wide, PhasePoint::new(0.0, p));
        (high_temp_wigner(&tp, p).unwrap() / exact - 1.0).abs()
    }));
    suite.bound("thermal_high_temp", rel, 1e-3);
    suite.numeric(
        "thermal_gaussian_integral",
        (high_temp_momentum_integral(&tp) - INV_TWO_PI).abs(),
        1e-15,
    );
}

fn grid_points() -> Vec<PhasePoint> {
    (0..200)
        .map(|i| {
            PhasePoint::new(
                2.0 * PI * weyl(i, 0.414_213_562) - PI,
                8.0 * weyl(i, 0.618_033_989) - 4.0,
            )
        })
        .collect()
}

fn dynamics(suite: &mut Suite) {
    let h = DiagonalHamiltonian::rotor(1.0, 0.0, -12, 12).unwrap();
    let points = grid_points();
    let mut stationary = 0.0f64;
    let pure = [basis_state(2, 0.0).unwrap(), cat_state(0.0).unwrap()];
    let rho = thermal_density(&ThermalParams::new(1.0).unwrap()).unwrap();
    for t in [0.1, 1.0, 10.0] {
        for st in &pure {
            let ev = evolve_state(st, &h, t).unwrap();
            for &at in &points {
                let d = wigner_function(&ev, at).unwrap() - wigner_function(st, at).unwrap();
                stationary = max_of([stationary, d.abs()]);
            }
        }
        let ev = evolve_density(&rho, &h, t).unwrap();
        for &at in &points {
            let d = wigner_density(&ev, at).unwrap() - wigner_density(&rho, at).unwrap();
            stationary = max_of([stationary, d.abs()]);
        }
    }
    suite.numeric("dynamics_stationarity", stationary, 1e-12);

    let c = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let st = FourierState::new(0.0, 0, vec![c, Complex64::new(0.0, 0.0), c]).unwrap();
    let dt = 1e-4;
    let fd = max_of(points.iter().map(|&at| {
        let plus = wigner_function(&evolve_state(&st, &h, dt).unwrap(), at).unwrap();
        let minus = wigner_function(&evolve_state(&st, &h, -dt).unwrap(), at).unwrap();
        ((plus - minus) / (2.0 * dt) - wigner_time_derivative(&st, &h, at).unwrap()).abs()
    }));
    suite.bound("dynamics_finite_difference", fd, 1e-6);

    let trace = max_of(points.iter().map(|&at| {
        let k = k_matrix(&h, at);
        let d = 25;
        (0..d).map(|i| k[i * d + i]).sum::<Complex64>().norm()
    }));
    suite.bound("dynamics_trace_k", trace, 0.0);
}

fn classical_limit(suite: &mut Suite) {
    let masses: Vec<f64> = [1.0, 0.3, 0.1, 0.03, 0.01]
        .iter()
        .map(|&h| classical_limit_mass(h, 3, 0.05).unwrap_or(f64::NAN))
        .collect();
    let drop = max_of(masses.windows(2).map(|w| {
        if w[1].is_nan() {
            f64::NAN
        } else {
            (w[0] - w[1]).max(0.0)
        }
    }));
    suite.bound("classical_limit_monotone", drop, 0.0);
    suite.bound(
        "classical_limit_final_mass",
        1.0 - masses[masses.len() - 1],
        0.05,
    );
}
