//! Empirical mirror-time search: scan the propagator for times where
//! `U(t)` equals a phase times the antidiagonal permutation.
//!
//! For the Krawtchouk normalization `J_l = sqrt((l+1)(N-l))` the earliest
//! mirror lands at `pi/2` with global phase `(-i)^N`; halving every
//! coupling would double the period to `pi`.  A generic chain never
//! mirrors: its spectrum is incommensurate.
//!
//! ```bash
//! cargo run --release --example mirror_time
//! ```

use mirror_chain::{custom_chain, find_mirror_time, krawtchouk_chain};

fn main() {
    for n in [2usize, 5, 8] {
        let spec = krawtchouk_chain(n).unwrap();
        let report = find_mirror_time(&spec, 4.0, 10_000).unwrap();
        println!(
            "Krawtchouk N={n}: mirror time {:.12} (pi/2 = {:.12})",
            report.mirror_time,
            std::f64::consts::FRAC_PI_2
        );
        println!(
            "  residual {:.2e}, global phase {:.6} + {:.6}i  [expect (-i)^N]",
            report.residual, report.global_phase.re, report.global_phase.im
        );
        println!(
            "  with couplings J/2 the same chain mirrors at {:.12}",
            2.0 * report.mirror_time
        );
    }

    let generic = custom_chain(vec![1.0, 2.0], vec![0.0; 3]).unwrap();
    let report = find_mirror_time(&generic, 20.0, 10_000).unwrap();
    println!(
        "\nCustom J = [1, 2]: best residual {:.3} at t = {:.6} -> {}",
        report.residual,
        report.mirror_time,
        if report.is_mirror() {
            "mirror"
        } else {
            "no mirror time below tolerance (incommensurate spectrum)"
        }
    );
}
