//! As `ħ → 0` the basis-state profile `ħ⁻¹ sinc[π(p - ħm)/ħ]` concentrates
//! at the classical momentum `ħm`.

use cylinder_wigner::wigner::classical_limit_mass;

fn main() -> cylinder_wigner::Result<()> {
    for hbar in [1.0, 0.3, 0.1, 0.03, 0.01] {
        println!(
            "ħ = {hbar:5}: mass within 0.05 = {:.6}",
            classical_limit_mass(hbar, 2, 0.05)?
        );
    }
    Ok(())
}
