//! Minimal-uncertainty (von Mises) state: `2π I_0(2s) V` along `p - p_e` for
//! several angles, next to the angle-integral form of the same function.

use std::f64::consts::PI;

use cylinder_wigner::specfun::{bessel_i, DEFAULT_ORDER};
use cylinder_wigner::states::von_mises_state;
use cylinder_wigner::wigner::{
    uncertainty_product, von_mises_wigner_integral, wigner_function, PhasePoint,
};

fn main() -> cylinder_wigner::Result<()> {
    let (s, pe) = (0.5, 0.3);
    let state = von_mises_state(s, pe, None)?;
    let scale = 2.0 * PI * bessel_i(0, 2.0 * s)?;
    println!("I_0(1) = {:.4}", bessel_i(0, 1.0)?);
    for theta in [0.0, PI / 2.0, PI] {
        println!("theta = {theta:.4}");
        for k in -4..=4 {
            let at = PhasePoint::new(theta, pe + k as f64 * 0.5);
            let sum = scale * wigner_function(&state, at)?;
            let integral = scale * von_mises_wigner_integral(s, pe, at, DEFAULT_ORDER)?;
            println!(
                "  p - p_e = {:5.2}: {sum:12.9}  (integral form {integral:12.9})",
                k as f64 * 0.5
            );
        }
    }
    let u = uncertainty_product(&state);
    println!("uncertainty: lhs = {:.12}, rhs = {:.12}", u.lhs, u.rhs);
    Ok(())
}
