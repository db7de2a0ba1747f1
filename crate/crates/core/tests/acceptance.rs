//! Acceptance suite. Every criterion runs at its pinned tolerance and prints
//! one PASS/FAIL line, followed by indented measurements. The process exits
//! non-zero when any criterion fails.
//!
//! Run with `cargo test --test acceptance`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cylinder_wigner::dynamics::{
    evolve_density, evolve_state, k_matrix, wigner_time_derivative, DiagonalHamiltonian,
};
use cylinder_wigner::specfun::{
    bessel_i, sinc_pi, theta3_jacobi, theta3_series, ThetaQuadrature, DEFAULT_ORDER,
};
use cylinder_wigner::states::{basis_state, cat_state, pure_density, von_mises_state};
use cylinder_wigner::thermal::{
    high_temp_momentum_integral, high_temp_wigner, low_temp_wigner, partition_function_direct,
    thermal_density, thermal_wigner, ThermalParams,
};
use cylinder_wigner::wigner::{
    classical_limit_mass, extract_probability, marginal_angle, marginal_momentum,
    reconstruct_density, sinc_overlap, sinc_overlap_by_quadrature, uncertainty_product,
    uniform_axis, wigner_density, wigner_function, wigner_matrix_element, wigner_product_integral,
    WignerGrid,
};
use cylinder_wigner::{DensityMatrix, FourierState, PhasePoint};

const INV_TWO_PI: f64 = 0.5 / PI;

/// One measured sub-check of a criterion.
struct Check {
    label: String,
    measured: f64,
    limit: f64,
    pass: bool,
}

impl Check {
    /// Passes when `measured <= limit`; NaN fails.
    fn at_most(label: impl Into<String>, measured: f64, limit: f64) -> Self {
        Self {
            label: label.into(),
            measured,
            limit,
            pass: measured <= limit,
        }
    }

    fn at_least(label: impl Into<String>, measured: f64, limit: f64) -> Self {
        Self {
            label: label.into(),
            measured,
            limit,
            pass: measured >= limit,
        }
    }

    fn runtime(label: &str, took: Duration, limit: Duration) -> Self {
        Self::at_most(
            format!("{label} runtime [s]"),
            took.as_secs_f64(),
            limit.as_secs_f64(),
        )
    }
}

fn max_abs<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().fold(0.0, |m: f64, x| {
        if x.is_nan() || m.is_nan() {
            f64::NAN
        } else {
            m.max(x.abs())
        }
    })
}

fn cat_special_values() -> Vec<Check> {
    let start = Instant::now();
    let st = cat_state(0.0).unwrap();
    let v = |t: f64, p: f64| 2.0 * PI * wigner_function(&st, PhasePoint::new(t, p)).unwrap();
    let thetas = uniform_axis(-PI, PI, 37).unwrap();
    let at_zero = max_abs(thetas.iter().map(|&t| v(t, 0.0) - (2.0 * t).cos()));
    let at_one = max_abs(
        thetas
            .iter()
            .flat_map(|&t| [v(t, 1.0) - 0.5, v(t, -1.0) - 0.5]),
    );
    let took = start.elapsed();
    vec![
        Check::at_most("max |2πV(θ,0) - cos 2θ| over 37 angles", at_zero, 1e-10),
        Check::at_most("max |2πV(θ,±1) - 1/2| over 37 angles", at_one, 1e-10),
        Check::runtime("cat checks", took, Duration::from_secs(1)),
    ]
}

fn von_mises_checks() -> Vec<Check> {
    let mut out = Vec::new();
    let s = 0.5;
    let i0 = bessel_i(0, 2.0 * s).unwrap();
    let offsets = uniform_axis(-4.0, 4.0, 401).unwrap();
    let mut quarter = 0.0f64;
    for pe in [0.0, 0.3, -1.75] {
        let st = von_mises_state(s, pe, None).unwrap();
        for &x in &offsets {
            let expect = sinc_pi(x).unwrap() * INV_TWO_PI / i0;
            for t in [PI / 2.0, -PI / 2.0] {
                let v = wigner_function(&st, PhasePoint::new(t, pe + x)).unwrap();
                quarter = max_abs([quarter, v - expect]);
            }
        }
    }
    out.push(Check::at_most(
        "(a) max |V(±π/2, p) - sinc π(p-p_e)/(2π I_0(2s))|",
        quarter,
        1e-9,
    ));

    let thetas = uniform_axis(-PI, PI, 91).unwrap();
    let mut angle = 0.0f64;
    let mut pops = 0.0f64;
    for (s, pe) in [(0.5, 0.3), (1.0, -2.2), (2.0, 4.0)] {
        let st = von_mises_state(s, pe, None).unwrap();
        let i0 = bessel_i(0, 2.0 * s).unwrap();
        for &t in &thetas {
            angle = max_abs([
                angle,
                marginal_angle(&st, t) - (2.0 * s * t.cos()).exp() * INV_TWO_PI / i0,
            ]);
        }
        let omega = marginal_momentum(&st).unwrap();
        let n_e = pe.floor() as i64;
        for m in (n_e - 12)..=(n_e + 12) {
            let expect = bessel_i(m - n_e, s).unwrap().powi(2) / i0;
            pops = max_abs([pops, extract_probability(&omega, m) - expect]);
        }
    }
    out.push(Check::at_most(
        "(b) max |angle marginal - e^{2s cos θ}/(2π I_0(2s))|",
        angle,
        1e-9,
    ));
    out.push(Check::at_most(
        "(c) max ||c_m|² - I_{m-n_e}(s)²/I_0(2s)|",
        pops,
        1e-9,
    ));

    let sat = max_abs([0.25, 0.5, 1.0, 2.0].map(|s| {
        let u = uncertainty_product(&von_mises_state(s, 0.3, None).unwrap());
        u.lhs - u.rhs
    }));
    out.push(Check::at_most(
        "(d) max |lhs - rhs| of the uncertainty relation",
        sat,
        1e-8,
    ));
    out
}

fn orthonormality_suite() -> Vec<Check> {
    let start = Instant::now();
    let quad = ThetaQuadrature::new(DEFAULT_ORDER).unwrap();
    let mut swap = 0.0f64;
    for m in -10..=10 {
        for n in -10..=10 {
            let delta = if m == n { 1.0 } else { 0.0 };
            swap = max_abs([swap, sinc_overlap(m as f64, n as f64) - delta]);
            swap = max_abs([
                swap,
                sinc_overlap_by_quadrature(m as f64, n as f64, &quad) - delta,
            ]);
        }
    }

    // 2π ∫∫ V_kl V_mn: θ and p integrals each done independently by quadrature
    let mut ortho = 0.0f64;
    for k in -2..=2i64 {
        for l in -2..=2i64 {
            for m in -2..=2i64 {
                for n in -2..=2i64 {
                    let freq = (l - k + n - m) as f64;
                    let theta_part =
                        quad.integrate_complex(|t| Complex64::from_polar(1.0, freq * t));
                    let p_part = sinc_overlap_by_quadrature(
                        0.5 * (k + l) as f64,
                        0.5 * (m + n) as f64,
                        &quad,
                    );
                    let by_quad = 2.0 * PI * INV_TWO_PI * INV_TWO_PI * theta_part * p_part;
                    let expect = if k == n && l == m { 1.0 } else { 0.0 };
                    ortho = max_abs([ortho, wigner_product_integral(k, l, m, n) - expect]);
                    ortho = max_abs([ortho, (by_quad - expect).norm()]);
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut herm = 0.0f64;
    let mut bound = 0.0f64;
    let mut wig_bound = 0.0f64;
    let st = von_mises_state(0.8, 0.45, None).unwrap();
    for _ in 0..1000 {
        let m = rng.gen_range(-40..=40);
        let n = rng.gen_range(-40..=40);
        let delta = rng.gen_range(0.0..1.0);
        let at = PhasePoint::new(rng.gen_range(-PI..PI), rng.gen_range(-50.0..50.0));
        let v = wigner_matrix_element(m, n, delta, at);
        herm = max_abs([
            herm,
            (v - wigner_matrix_element(n, m, delta, at).conj()).norm(),
        ]);
        bound = bound.max(v.norm() - INV_TWO_PI);
        let w = wigner_function(&st, at).unwrap();
        wig_bound = wig_bound.max(w.abs() - 1.0 / PI);
    }
    let took = start.elapsed();
    vec![
        Check::at_most(
            "sinc orthonormality on a 21-index window (swap and quadrature)",
            swap,
            1e-12,
        ),
        Check::at_most(
            "Wigner-matrix orthogonality on a 5-index window",
            ortho,
            1e-10,
        ),
        Check::at_most("max |V_mn - conj V_nm| at 1000 random points", herm, 1e-12),
        Check::at_most(
            "max (|V_mn| - 1/2π) at 1000 random points",
            bound.max(0.0),
            1e-12,
        ),
        Check::at_most(
            "max (|V_ψ| - 1/π) at 1000 random points",
            wig_bound.max(0.0),
            1e-12,
        ),
        Check::runtime("property suite", took, Duration::from_secs(10)),
    ]
}

fn marginal_round_trips() -> Vec<Check> {
    let families: Vec<(&str, DensityMatrix)> = vec![
        ("basis", pure_density(&basis_state(2, 0.4).unwrap())),
        ("cat", pure_density(&cat_state(0.9).unwrap())),
        (
            "von Mises",
            pure_density(&von_mises_state(0.5, 1.3, None).unwrap()),
        ),
        (
            "thermal",
            thermal_density(&ThermalParams::new(0.8).unwrap()).unwrap(),
        ),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let thetas = uniform_axis(-PI, PI, 181).unwrap();
    let mut out = Vec::new();
    for (name, rho) in families {
        let ps: Vec<f64> = (0..20).map(|_| rng.gen_range(-6.0..6.0)).collect();
        let grid = WignerGrid::sample(&thetas, &ps, |at| wigner_density(&rho, at)).unwrap();
        let omega = marginal_momentum(&rho).unwrap();
        let marginal = grid.theta_marginal().unwrap();
        let err = max_abs(
            ps.iter()
                .zip(&marginal)
                .map(|(&p, &m)| m - omega.evaluate(p)),
        );
        out.push(Check::at_most(
            format!("{name}: θ-quadrature of grid vs cardinal series"),
            err,
            1e-9,
        ));
        let rec = reconstruct_density(
            |at| wigner_density(&rho, at).unwrap(),
            rho.n_min(),
            rho.n_max(),
            rho.delta(),
        )
        .unwrap();
        out.push(Check::at_most(
            format!("{name}: reconstructed ρ entrywise"),
            rec.max_deviation(&rho),
            1e-8,
        ));
    }
    out
}

fn thermal_checks() -> (Vec<Check>, Vec<Check>) {
    let mut out = Vec::new();
    for eb in [0.01, 0.1, 1.0, 10.0, 40.0] {
        let tp = ThermalParams::new(eb).unwrap();
        let direct = partition_function_direct(&tp);
        let series = theta3_series(0.0, tp.q()).unwrap();
        let jacobi = theta3_jacobi(0.0, eb).unwrap();
        let rel = max_abs([direct - series, direct - jacobi, series - jacobi]) / direct;
        out.push(Check::at_most(
            format!("Z routes agree, εβ = {eb} (relative)"),
            rel,
            1e-11,
        ));
    }

    let mut info = Vec::new();
    let ps = uniform_axis(-2.5, 2.5, 1001).unwrap();
    for eb in [3.0, 5.0, 8.0] {
        let tp = ThermalParams::new(eb).unwrap();
        let diff = max_abs(ps.iter().map(|&p| {
            low_temp_wigner(&tp, p).unwrap() - thermal_wigner(&tp, PhasePoint::new(0.0, p))
        }));
        out.push(Check::at_most(
            format!("low-T form within 5e^(-4εβ) + 1e-12, εβ = {eb}"),
            diff,
            5.0 * (-4.0 * eb).exp() + 1e-12,
        ));
        info.push(Check::at_most(
            format!("low-T form within 5e^(-2εβ), εβ = {eb}"),
            diff,
            5.0 * (-2.0 * eb).exp(),
        ));
    }

    let tp = ThermalParams::new(0.01).unwrap();
    let wide = tp.with_window(400);
    let rel = max_abs(
        uniform_axis(-20.0, 20.0, 801)
            .unwrap()
            .into_iter()
            .map(|p| {
                high_temp_wigner(&tp, p).unwrap() / thermal_wigner(&wide, PhasePoint::new(0.0, p))
                    - 1.0
            }),
    );
    out.push(Check::at_most(
        "high-T Gaussian vs exact, εβ = 0.01, |p| <= 20 (relative)",
        rel,
        1e-3,
    ));
    out.push(Check::at_most(
        "Gaussian p-integral - 1/2π",
        (high_temp_momentum_integral(&tp) - INV_TWO_PI).abs(),
        1e-15,
    ));
    (out, info)
}

fn dynamics_checks() -> Vec<Check> {
    let h = DiagonalHamiltonian::rotor(1.0, 0.0, -15, 15).unwrap();
    let thetas = uniform_axis(-PI, PI, 25).unwrap();
    let ps = uniform_axis(-4.0, 4.0, 33).unwrap();
    let grid_of = |f: &dyn Fn(PhasePoint) -> f64| -> Vec<f64> {
        thetas
            .iter()
            .flat_map(|&t| ps.iter().map(move |&p| PhasePoint::new(t, p)))
            .map(f)
            .collect()
    };
    let mut stationary = 0.0f64;
    let pure: Vec<FourierState> = vec![
        basis_state(3, 0.0).unwrap(),
        cat_state(0.0).unwrap(),
        cat_state(1.1).unwrap(),
    ];
    let rho = thermal_density(&ThermalParams::new(1.0).unwrap()).unwrap();
    for t in [0.1, 1.0, 10.0] {
        for st in &pure {
            let ev = evolve_state(st, &h, t).unwrap();
            let a = grid_of(&|at| wigner_function(st, at).unwrap());
            let b = grid_of(&|at| wigner_function(&ev, at).unwrap());
            stationary = max_abs([stationary, max_abs(a.iter().zip(&b).map(|(x, y)| x - y))]);
        }
        let ev = evolve_density(&rho, &h, t).unwrap();
        let a = grid_of(&|at| wigner_density(&rho, at).unwrap());
        let b = grid_of(&|at| wigner_density(&ev, at).unwrap());
        stationary = max_abs([stationary, max_abs(a.iter().zip(&b).map(|(x, y)| x - y))]);
    }

    let c = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let st = FourierState::new(0.0, 0, vec![c, Complex64::new(0.0, 0.0), c]).unwrap();
    let dt = 1e-4;
    let plus = evolve_state(&st, &h, dt).unwrap();
    let minus = evolve_state(&st, &h, -dt).unwrap();
    let fd = grid_of(&|at| {
        let diff = (wigner_function(&plus, at).unwrap() - wigner_function(&minus, at).unwrap())
            / (2.0 * dt);
        diff - wigner_time_derivative(&st, &h, at).unwrap()
    });

    let mut trace = 0.0f64;
    for half in [1, 2, 5, 15] {
        let hw = DiagonalHamiltonian::rotor(1.0, 0.0, -half, half).unwrap();
        let d = (2 * half + 1) as usize;
        for &at in &[PhasePoint::new(0.3, 0.7), PhasePoint::new(-2.0, -1.5)] {
            let k = k_matrix(&hw, at);
            trace = max_abs([
                trace,
                (0..d).map(|i| k[i * d + i]).sum::<Complex64>().norm(),
            ]);
        }
    }
    vec![
        Check::at_most(
            "stationarity of basis, cat and thermal grids, t ∈ {0.1, 1, 10}",
            stationary,
            1e-12,
        ),
        Check::at_most(
            "finite difference vs (ψ, Kψ) on (e_0+e_2)/√2, Δt = 1e-4",
            max_abs(fd),
            1e-6,
        ),
        Check::at_most("|tr K| on symmetric windows", trace, 0.0),
    ]
}

fn classical_limit_checks() -> Vec<Check> {
    let hbars = [1.0, 0.3, 0.1, 0.03, 0.01];
    let masses: Vec<f64> = hbars
        .iter()
        .map(|&h| classical_limit_mass(h, 2, 0.05).unwrap())
        .collect();
    let worst_step = masses
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    let mut out: Vec<Check> = hbars
        .iter()
        .zip(&masses)
        .map(|(h, m)| Check::at_least(format!("mass at ħ = {h}"), *m, 0.0))
        .collect();
    out.push(Check::at_least(
        "smallest increase between successive ħ",
        worst_step,
        0.0,
    ));
    out.push(Check::at_least(
        "final mass (ħ = 0.01)",
        masses[masses.len() - 1],
        0.95,
    ));
    out
}

fn report(id: usize, title: &str, checks: &[Check], info: &[Check]) -> bool {
    let pass = checks.iter().all(|c| c.pass);
    println!("{} [{id}] {title}", if pass { "PASS" } else { "FAIL" });
    for c in checks {
        println!(
            "       {} {}: {:.3e} (limit {:.3e})",
            if c.pass { "ok " } else { "BAD" },
            c.label,
            c.measured,
            c.limit
        );
    }
    for c in info {
        println!(
            "       info {}: {:.3e} (limit {:.3e}) {}",
            c.label,
            c.measured,
            c.limit,
            if c.pass { "within" } else { "exceeded" }
        );
    }
    pass
}

fn main() -> ExitCode {
    let (thermal, thermal_info) = thermal_checks();
    let results = [
        report(1, "cat-state special values", &cat_special_values(), &[]),
        report(2, "von Mises checks", &von_mises_checks(), &[]),
        report(
            3,
            "orthonormality and algebraic properties",
            &orthonormality_suite(),
            &[],
        ),
        report(4, "marginal round trips", &marginal_round_trips(), &[]),
        report(5, "thermal regime checks", &thermal, &thermal_info),
        report(6, "dynamics", &dynamics_checks(), &[]),
        report(7, "classical limit", &classical_limit_checks(), &[]),
    ];
    let failed = results.iter().filter(|p| !**p).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
