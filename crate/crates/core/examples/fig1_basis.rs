//! Wigner function of an angular-momentum eigenstate: a sinc ridge centred
//! on `p = m + δ`, constant in `θ`.

use std::f64::consts::PI;

use cylinder_wigner::states::basis_state;
use cylinder_wigner::wigner::{uniform_axis, wigner_function, WignerGrid};

fn main() -> cylinder_wigner::Result<()> {
    let state = basis_state(0, 0.0)?;
    let p = uniform_axis(-4.0, 4.0, 17)?;
    let grid = WignerGrid::sample(&[0.0], &p, |at| Ok(2.0 * PI * wigner_function(&state, at)?))?;
    grid.write_csv(std::io::stdout().lock())
}
