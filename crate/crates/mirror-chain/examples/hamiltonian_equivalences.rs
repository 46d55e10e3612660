//! The two Hamiltonian equivalences: the Krawtchouk chain is the spin-s
//! operator `2 s_x` in disguise (`s = N/2`, `m = s - l`), and the q = 1
//! Hahn chain matches the `M = 0` block of an L.S coupling Hamiltonian
//! after scaling by 1/2 and one uniform energy shift.
//!
//! ```bash
//! cargo run --release --example hamiltonian_equivalences
//! ```

use mirror_chain::{
    ls_coupling_block, spin_hamiltonian, verify_hahn_ls_equivalence,
    verify_krawtchouk_spin_equivalence,
};

fn main() {
    for n in [1usize, 4, 12, 20] {
        let report = verify_krawtchouk_spin_equivalence(n).unwrap();
        println!(
            "Krawtchouk N={n:2} == 2*s_x at s = {:4}: max entry diff {:.2e} -> {}",
            n as f64 / 2.0,
            report.max_entry_difference,
            if report.pass { "pass" } else { "FAIL" }
        );
    }

    println!("\nspin-1 operator 2*s_x (off-diagonals sqrt(2)):");
    println!("{:8.5}", spin_hamiltonian(1.0).unwrap());

    println!("\nL.S coupling block at L=1, S=1/2 (eigenvalues 1/2 and -1):");
    println!("{:8.5}", ls_coupling_block(1.0, 0.5).unwrap());

    for (l, s) in [(1.0, 0.5), (2.0, 0.5), (3.0, 1.5), (5.0, 4.5)] {
        let report = verify_hahn_ls_equivalence(l, s).unwrap();
        println!(
            "L.S block (L={l}, S={s}) == 1/2 * Hahn(N={}, alpha={}) + ({:+.4})*I: diff {:.2e} -> {}",
            2.0 * s,
            l - s,
            report.shift,
            report.max_entry_difference,
            if report.pass { "pass" } else { "FAIL" }
        );
    }
}
