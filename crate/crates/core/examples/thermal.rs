//! Thermal rotator: partition function, exact Wigner function and its
//! low- and high-temperature approximations.

use cylinder_wigner::specfun::{theta3_jacobi, theta3_series};
use cylinder_wigner::thermal::{
    high_temp_wigner, low_temp_wigner, partition_function, partition_function_direct,
    thermal_wigner, ThermalParams,
};
use cylinder_wigner::PhasePoint;

fn main() -> cylinder_wigner::Result<()> {
    for eb in [0.01, 1.0, 40.0] {
        let tp = ThermalParams::new(eb)?;
        println!(
            "εβ = {eb:5}: Z = {:.15}  direct {:.15}  series {:.15}  Jacobi {:.15}",
            partition_function(&tp),
            partition_function_direct(&tp),
            theta3_series(0.0, tp.q())?,
            theta3_jacobi(0.0, eb)?
        );
    }

    let cold = ThermalParams::new(5.0)?;
    let hot = ThermalParams::new(0.01)?;
    println!(
        "{:>6} {:>14} {:>14} {:>14} {:>14}",
        "p", "V(εβ=5)", "low-T", "V(εβ=0.01)", "high-T"
    );
    for k in -8..=8 {
        let p = 0.25 * k as f64;
        let at = PhasePoint::new(0.0, p);
        println!(
            "{p:6.2} {:14.10} {:14.10} {:14.10} {:14.10}",
            thermal_wigner(&cold, at),
            low_temp_wigner(&cold, p)?,
            thermal_wigner(&hot, at),
            high_temp_wigner(&hot, p)?
        );
    }
    Ok(())
}
