//! Cat state `f_+ = √2 cos φ`: interference fringes `cos 2θ` at `p = 0`
//! between the two classical ridges at `p = ±1`.

use std::f64::consts::PI;

use cylinder_wigner::states::cat_state;
use cylinder_wigner::wigner::{wigner_function, PhasePoint};

fn main() -> cylinder_wigner::Result<()> {
    let f = cat_state(0.0)?;
    println!(
        "{:>8} {:>12} {:>12} {:>12}",
        "theta", "2πV(p=-1)", "2πV(p=0)", "2πV(p=1)"
    );
    for k in 0..=8 {
        let theta = -PI + k as f64 * PI / 4.0;
        let v = |p: f64| -> cylinder_wigner::Result<f64> {
            Ok(2.0 * PI * wigner_function(&f, PhasePoint::new(theta, p))?)
        };
        println!(
            "{theta:8.4} {:12.8} {:12.8} {:12.8}",
            v(-1.0)?,
            v(0.0)?,
            v(1.0)?
        );
    }
    Ok(())
}
