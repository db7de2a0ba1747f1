//! Momentum marginal as a cardinal series, and probabilities read back from it.

use cylinder_wigner::specfun::{bessel_i, ThetaQuadrature, DEFAULT_ORDER};
use cylinder_wigner::states::von_mises_state;
use cylinder_wigner::wigner::{extract_probability, marginal_angle, marginal_momentum};

fn main() -> cylinder_wigner::Result<()> {
    let (s, pe) = (1.0, -0.6);
    let state = von_mises_state(s, pe, None)?;
    let omega = marginal_momentum(&state)?;
    let quad = ThetaQuadrature::new(DEFAULT_ORDER)?;
    let n_e = pe.floor() as i64;
    let i0 = bessel_i(0, 2.0 * s)?;
    for m in (n_e - 3)..=(n_e + 3) {
        println!(
            "m = {m:3}: sample {:.12}  Fourier domain {:.12}  Bessel {:.12}",
            extract_probability(&omega, m),
            omega.project_by_quadrature(m, &quad),
            bessel_i(m - n_e, s)?.powi(2) / i0
        );
    }
    println!("ω(p_e) = {:.12}", omega.evaluate(pe));
    println!(
        "angle density at θ = 0: {:.12}",
        marginal_angle(&state, 0.0)
    );
    println!("{}", serde_json::to_string(&omega)?);
    Ok(())
}
