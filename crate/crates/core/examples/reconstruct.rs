//! Recovers a density matrix from samples of its Wigner function.

use cylinder_wigner::states::{cat_state, pure_density};
use cylinder_wigner::wigner::{reconstruct_density, wigner_density};

fn main() -> cylinder_wigner::Result<()> {
    let rho = pure_density(&cat_state(0.7)?);
    let rec = reconstruct_density(
        |at| wigner_density(&rho, at).unwrap_or(f64::NAN),
        -2,
        2,
        0.0,
    )?;
    for k in -2..=2 {
        let row: Vec<String> = (-2..=2)
            .map(|l| {
                let z = rec.get(k, l);
                format!("{:+.6}{:+.6}i", z.re, z.im)
            })
            .collect();
        println!("{}", row.join("  "));
    }
    println!("trace deficit {:.3e}", rec.trace_deficit());
    println!("max deviation {:.3e}", rec.max_deviation(&rho));
    Ok(())
}
