//! Free-rotor evolution of `(e_0 + e_2)/√2`: the Wigner function rotates its
//! interference term at frequency `E_2 - E_0`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use cylinder_wigner::dynamics::{evolve_state, wigner_time_derivative, DiagonalHamiltonian};
use cylinder_wigner::wigner::{wigner_function, PhasePoint};
use cylinder_wigner::FourierState;

fn main() -> cylinder_wigner::Result<()> {
    let c = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let state = FourierState::new(0.0, 0, vec![c, Complex64::new(0.0, 0.0), c])?;
    let h = DiagonalHamiltonian::rotor(1.0, 0.0, 0, 2)?;
    let at = PhasePoint::new(0.4, 1.0);
    for k in 0..=8 {
        let t = 0.1 * k as f64;
        let ev = evolve_state(&state, &h, t)?;
        println!(
            "t = {t:.1}: V = {:+.10}  ∂V/∂t = {:+.10}",
            wigner_function(&ev, at)?,
            wigner_time_derivative(&ev, &h, at)?
        );
    }
    Ok(())
}
