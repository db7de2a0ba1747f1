//! Runs the invariant suite and prints a one-line summary per invariant.

use cylinder_wigner::cli::{run_verification, TolProfile};

fn main() {
    let report = run_verification(TolProfile::Default, false);
    for r in &report {
        let mark = if r.pass { "pass" } else { "FAIL" };
        println!(
            "{mark} {:<40} {:.3e} <= {:.3e}",
            r.invariant_id, r.residual, r.tolerance
        );
    }
    let failed = report.iter().filter(|r| !r.pass).count();
    println!("{} invariants, {failed} failed", report.len());
}
