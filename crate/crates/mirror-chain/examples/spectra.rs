//! Compare the closed-form (orthogonal polynomial) eigensystem with the
//! numeric tridiagonal diagonalization, for both families.
//!
//! ```bash
//! cargo run --release --example spectra
//! ```

use mirror_chain::{
    analytic_eigensystem, eigenfunction_table, hahn_chain, krawtchouk_chain, numeric_eigensystem,
};

fn main() {
    for spec in [krawtchouk_chain(6).unwrap(), hahn_chain(6, 0, 1).unwrap()] {
        println!("== {} chain, N = {} ==", spec.family.name(), spec.n());
        let numeric = numeric_eigensystem(&spec.single_particle_matrix());
        let analytic = analytic_eigensystem(&spec).unwrap();

        println!("   k   numeric E_k        analytic E_k       |diff|");
        let mut worst_vec = 0.0_f64;
        for k in 0..numeric.len() {
            println!(
                "  {k:2}   {:>16.12}   {:>16.12}   {:.2e}",
                numeric.energies[k],
                analytic.energies[k],
                (numeric.energies[k] - analytic.energies[k]).abs()
            );
            for l in 0..numeric.len() {
                worst_vec =
                    worst_vec.max((numeric.vectors[[k, l]] - analytic.vectors[[k, l]]).abs());
            }
        }
        println!("  worst eigenvector component difference: {worst_vec:.2e}");

        let table = eigenfunction_table(&spec).unwrap();
        println!(
            "  closed-form table: orthonormality defect {:.2e}, reflection defect {:.2e}",
            table.gram_defect(),
            table.reflection_defect()
        );
        if let Some(alpha) = spec.alpha() {
            println!("  Hahn spectrum is k(k + 2*alpha + 1) with alpha = {alpha}");
        } else {
            println!("  Krawtchouk spectrum is linear with spacing 2: {{N - 2k}}");
        }
        println!();
    }
}
