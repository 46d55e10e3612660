//! Hamiltonian equivalences: the Krawtchouk chain as a spin-s operator
//! `2 s_x`, and the q = 1 Hahn chain as the M = 0 block of an L.S coupling
//! Hamiltonian.
//!
//! Both checks are entrywise comparisons after an affine map
//! `target = scale * chain + shift * I`; the report records the fitted
//! shift and the largest remaining entry difference.

use ndarray::Array2;
use serde::Serialize;

use crate::chain::hahn_chain;
use crate::error::ChainError;

/// Entrywise-difference threshold for both equivalences.
pub const EQUIVALENCE_TOLERANCE: f64 = 1e-12;

/// Result of an affine entrywise comparison.
#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub max_entry_difference: f64,
    pub scale: f64,
    pub shift: f64,
    pub pass: bool,
}

fn half_integer_times_two(value: f64, what: &'static str) -> Result<i64, ChainError> {
    let doubled = 2.0 * value;
    if (doubled - doubled.round()).abs() > 1e-9 {
        return Err(ChainError::InvalidLsSector {
            l: value,
            s: value,
            reason: what,
        });
    }
    Ok(doubled.round() as i64)
}

/// The spin-s operator `2 s_x` over the basis `|m>`, `m = s` down to `-s`:
/// zero diagonal, `<m-1| H |m> = R(m) = sqrt(s(s+1) - m(m-1))`.
pub fn spin_hamiltonian(s: f64) -> Result<Array2<f64>, ChainError> {
    let two_s = half_integer_times_two(s, "2s must be an integer")
        .map_err(|_| ChainError::InvalidSpin { value: s })?;
    if two_s < 0 {
        return Err(ChainError::InvalidSpin { value: s });
    }
    let dim = two_s as usize + 1;
    let mut h = Array2::zeros((dim, dim));
    for i in 0..dim - 1 {
        let m = s - i as f64;
        let r = (s * (s + 1.0) - m * (m - 1.0)).sqrt();
        h[[i + 1, i]] = r;
        h[[i, i + 1]] = r;
    }
    Ok(h)
}

/// Entrywise identity between `2 s_x` at `s = N/2` (relabelled by
/// `m = s - l`) and the Krawtchouk chain matrix: scale 1, shift 0.
pub fn verify_krawtchouk_spin_equivalence(n: usize) -> Result<EquivalenceReport, ChainError> {
    let spec = crate::chain::krawtchouk_chain(n)?;
    let chain = spec.single_particle_matrix().to_dense();
    let spin = spin_hamiltonian(n as f64 / 2.0)?;
    let mut worst = 0.0_f64;
    for i in 0..=n {
        for j in 0..=n {
            worst = worst.max((spin[[i, j]] - chain[[i, j]]).abs());
        }
    }
    Ok(EquivalenceReport {
        max_entry_difference: worst,
        scale: 1.0,
        shift: 0.0,
        pass: worst <= EQUIVALENCE_TOLERANCE,
    })
}

/// The `M = M_L + M_S = 0` block of `H_LS = L.S` over `|M_S>`, `M_S = S`
/// down to `-S`:
///
/// - diagonal `D(M_S) = -M_S^2`,
/// - `<M_S - 1| H |M_S> = R(M_S) =
///   1/2 sqrt((L+M_S)(L-M_S+1)) sqrt((S+M_S)(S-M_S+1))`.
///
/// Requires `S < L` with `S` half-integer.
pub fn ls_coupling_block(l: f64, s: f64) -> Result<Array2<f64>, ChainError> {
    let two_s = half_integer_times_two(s, "2S must be an integer")?;
    half_integer_times_two(l, "2L must be an integer")?;
    if two_s < 0 {
        return Err(ChainError::InvalidLsSector {
            l,
            s,
            reason: "S must be nonnegative",
        });
    }
    if s >= l {
        return Err(ChainError::InvalidLsSector {
            l,
            s,
            reason: "requires S < L",
        });
    }
    let dim = two_s as usize + 1;
    let mut h = Array2::zeros((dim, dim));
    for i in 0..dim {
        let m_s = s - i as f64;
        h[[i, i]] = -m_s * m_s;
        if i + 1 < dim {
            let r = 0.5
                * ((l + m_s) * (l - m_s + 1.0)).sqrt()
                * ((s + m_s) * (s - m_s + 1.0)).sqrt();
            h[[i + 1, i]] = r;
            h[[i, i + 1]] = r;
        }
    }
    Ok(h)
}

/// Fit `ls_block = 1/2 * HahnMatrix + shift * I` entrywise, with
/// `N = 2S`, `alpha = L - S` (the q = 1 family, `alpha = (2p+1)/2`).
///
/// The shift is the mean of the diagonal residues `D_ii - h_i/2`; the
/// comparison passes only when every entry, including every diagonal
/// residue, agrees to [`EQUIVALENCE_TOLERANCE`].
pub fn verify_hahn_ls_equivalence(l: f64, s: f64) -> Result<EquivalenceReport, ChainError> {
    let two_s = half_integer_times_two(s, "2S must be an integer")?;
    if two_s <= 0 || two_s % 2 == 0 {
        return Err(ChainError::InvalidLsSector {
            l,
            s,
            reason: "S must be a positive half-integer",
        });
    }
    let alpha = l - s;
    let two_alpha = half_integer_times_two(alpha, "2(L-S) must be an integer")?;
    if two_alpha % 2 == 0 {
        return Err(ChainError::InvalidLsSector {
            l,
            s,
            reason: "alpha = L - S must be half-integer (q = 1 family)",
        });
    }
    let p = (two_alpha - 1) / 2;
    let ls = ls_coupling_block(l, s)?;
    let n = two_s as usize;
    let spec = hahn_chain(n, p, 1)?;
    let chain = spec.single_particle_matrix().to_dense();

    let dim = n + 1;
    let shift = (0..dim)
        .map(|i| ls[[i, i]] - 0.5 * chain[[i, i]])
        .sum::<f64>()
        / dim as f64;
    let mut worst = 0.0_f64;
    for i in 0..dim {
        for j in 0..dim {
            let target = 0.5 * chain[[i, j]] + if i == j { shift } else { 0.0 };
            worst = worst.max((ls[[i, j]] - target).abs());
        }
    }
    Ok(EquivalenceReport {
        max_entry_difference: worst,
        scale: 0.5,
        shift,
        pass: worst <= EQUIVALENCE_TOLERANCE,
    })
}
