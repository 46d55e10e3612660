//! Excitation sectors, Slater-determinant eigenfunctions, free-fermion
//! sector propagators, brute-force register evolution, and the mirror
//! certificate.
//!
//! The register Hamiltonian
//! `H = 1/2 sum_l J_l (sx_l sx_{l+1} + sy_l sy_{l+1}) - 1/2 sum_l h_l (sz_l - 1)`
//! conserves the total z-spin, so it is block diagonal over excitation
//! sectors S_M (computational basis states with exactly M ones).  The same
//! dynamics can be computed two independent ways:
//!
//! 1. brute force: diagonalize the dense `2^(N+1)` matrix and exponentiate;
//! 2. free fermions: `<l'|exp(-iHt)|l> = det[ U(t)_{l'_a, l_b} ]` with
//!    `U(t)` the single-particle propagator.
//!
//! Route 2 agreeing with route 1 on every sector is the fermionization
//! claim this module certifies.
//!
//! Bit order: a basis index encodes the bit string `s_0 s_1 ... s_N` with
//! `s_0` as the least significant bit; [`reverse_bits`] maps an index to
//! the site-reversed string.

use itertools::Itertools;
use ndarray::Array2;
use num_complex::Complex64;
use serde::Serialize;

use crate::chain::ChainSpec;
use crate::error::ChainError;
use crate::linalg;
use crate::single_particle::{Eigensystem, MIRROR_TOLERANCE};

/// Cap for building the dense register Hamiltonian.
pub const FULL_REGISTER_BUILD_MAX_QUBITS: usize = 14;
/// Cap for the full-exponential mirror certificate.
pub const MIRROR_CHECK_MAX_QUBITS: usize = 12;

/// Ordered basis of the M-excitation sector: all strictly increasing
/// M-tuples of sites, lexicographic.
#[derive(Debug, Clone)]
pub struct SectorBasis {
    n_sites: usize,
    m: usize,
    configs: Vec<Vec<usize>>,
}

impl SectorBasis {
    pub fn new(n_sites: usize, m: usize) -> Result<Self, ChainError> {
        if m > n_sites {
            return Err(ChainError::ExcitationOutOfRange { m, n_sites });
        }
        let configs: Vec<Vec<usize>> = (0..n_sites).combinations(m).collect();
        Ok(SectorBasis { n_sites, m, configs })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn excitation_number(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub fn configs(&self) -> &[Vec<usize>] {
        &self.configs
    }

    /// Register index of a configuration: sum of `2^l` over occupied sites.
    pub fn register_index(config: &[usize]) -> usize {
        config.iter().map(|&l| 1usize << l).sum()
    }

    /// Register indices of all configurations, in basis order.
    pub fn register_indices(&self) -> Vec<usize> {
        self.configs.iter().map(|c| Self::register_index(c)).collect()
    }
}

/// Site-reversal of an `n_bits`-bit string.
pub fn reverse_bits(index: usize, n_bits: usize) -> usize {
    let mut out = 0usize;
    for bit in 0..n_bits {
        if index >> bit & 1 == 1 {
            out |= 1 << (n_bits - 1 - bit);
        }
    }
    out
}

fn sorted_with_parity(xs: &[usize]) -> Option<(Vec<usize>, f64)> {
    let mut v = xs.to_vec();
    let mut swaps = 0usize;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            swaps += 1;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, if swaps.is_multiple_of(2) { 1.0 } else { -1.0 }))
}

/// Slater determinant `(1/sqrt(M!)) det[ phi_{k_a}(l_b) ]`.
///
/// Arguments may come in any order; the value is computed on the sorted
/// tuples and multiplied by the permutation parities, so antisymmetry under
/// swapping two orbitals or two sites is exact.  Repeated entries give an
/// exact zero.
pub fn slater_eigenfunction(
    es: &Eigensystem,
    orbitals: &[usize],
    sites: &[usize],
) -> Result<f64, ChainError> {
    if orbitals.len() != sites.len() {
        return Err(ChainError::SlaterSizeMismatch {
            orbitals: orbitals.len(),
            sites: sites.len(),
        });
    }
    let n = es.len();
    for &k in orbitals {
        if k >= n {
            return Err(ChainError::IndexOutOfRange {
                what: "orbital",
                index: k,
                limit: n - 1,
            });
        }
    }
    for &l in sites {
        if l >= n {
            return Err(ChainError::IndexOutOfRange {
                what: "site",
                index: l,
                limit: n - 1,
            });
        }
    }
    let m = orbitals.len();
    let (Some((orb, orb_sign)), Some((sit, sit_sign))) =
        (sorted_with_parity(orbitals), sorted_with_parity(sites))
    else {
        return Ok(0.0);
    };
    let mut matrix = Array2::zeros((m, m));
    for (a, &k) in orb.iter().enumerate() {
        for (b, &l) in sit.iter().enumerate() {
            matrix[[a, b]] = es.vectors[[k, l]];
        }
    }
    let mut m_factorial = 1.0;
    for i in 2..=m {
        m_factorial *= i as f64;
    }
    Ok(orb_sign * sit_sign * linalg::determinant_real(matrix) / m_factorial.sqrt())
}

/// Free-fermion propagator on the M-excitation sector:
/// `W[a, b] = det[ U(t)_{config_a, config_b} ]` over the lexicographic
/// sector basis.  `M = 0` gives the 1x1 identity; `M = 1` reproduces the
/// single-particle propagator.
pub fn sector_propagator(
    es: &Eigensystem,
    m: usize,
    t: f64,
) -> Result<Array2<Complex64>, ChainError> {
    let n = es.len();
    let basis = SectorBasis::new(n, m)?;
    let u = linalg::spectral_propagator(&es.energies, &es.vectors, t);
    let dim = basis.len();
    let mut w = Array2::zeros((dim, dim));
    let mut sub = Array2::zeros((m, m));
    for (a, rows) in basis.configs().iter().enumerate() {
        for (b, cols) in basis.configs().iter().enumerate() {
            for (i, &r) in rows.iter().enumerate() {
                for (j, &c) in cols.iter().enumerate() {
                    sub[[i, j]] = u[[r, c]];
                }
            }
            w[[a, b]] = linalg::determinant_complex(sub.clone());
        }
    }
    Ok(w)
}

/// Dense register Hamiltonian built term by term from the Pauli form
/// `1/2 J_l (sx sx + sy sy)` plus `-1/2 h_l (sz - 1)`, with `sz|0> = +|0>`
/// so a bit value 1 carries energy `h_l`.
pub fn full_register_hamiltonian(spec: &ChainSpec) -> Result<Array2<f64>, ChainError> {
    let n = spec.n_sites;
    if n > FULL_REGISTER_BUILD_MAX_QUBITS {
        return Err(ChainError::RegisterTooLarge {
            operation: "full_register_hamiltonian",
            qubits: n,
            max: FULL_REGISTER_BUILD_MAX_QUBITS,
        });
    }
    let dim = 1usize << n;
    let mut h = Array2::zeros((dim, dim));
    for l in 0..n - 1 {
        let j_half = spec.couplings[l] / 2.0;
        let mask = (1usize << l) | (1usize << (l + 1));
        for b in 0..dim {
            let flipped = b ^ mask;
            // sx sx flips both bits with +1; sy sy with -1 on equal bits
            // and +1 on differing bits.  Equal bits cancel exactly.
            h[[flipped, b]] += j_half;
            let equal = (b >> l & 1) == (b >> (l + 1) & 1);
            h[[flipped, b]] += if equal { -j_half } else { j_half };
        }
    }
    for l in 0..n {
        let field = spec.fields[l];
        for b in 0..dim {
            let sigma_z = if b >> l & 1 == 1 { -1.0 } else { 1.0 };
            h[[b, b]] += -0.5 * field * (sigma_z - 1.0);
        }
    }
    Ok(h)
}

/// Spectral decomposition of a register Hamiltonian, reusable across
/// evolution times.
#[derive(Debug, Clone)]
pub struct RegisterPropagator {
    energies: Vec<f64>,
    vectors: Array2<f64>,
}

impl RegisterPropagator {
    /// Full dense diagonalization of the (real symmetric) Hamiltonian.
    pub fn new(hamiltonian: &Array2<f64>) -> Self {
        let (energies, vectors) = linalg::symmetric_eigen(hamiltonian);
        RegisterPropagator { energies, vectors }
    }

    /// `exp(-i H t)` on the whole register.
    pub fn at(&self, t: f64) -> Array2<Complex64> {
        linalg::spectral_propagator(&self.energies, &self.vectors, t)
    }

    /// `exp(-i H t)` restricted to the given basis indices (rows and
    /// columns), e.g. one excitation sector.
    pub fn restricted(&self, indices: &[usize], t: f64) -> Array2<Complex64> {
        linalg::spectral_propagator_restricted(&self.energies, &self.vectors, t, indices)
    }
}

/// One-shot `exp(-i H t)` by full diagonalization.
pub fn full_register_propagator(hamiltonian: &Array2<f64>, t: f64) -> Array2<Complex64> {
    RegisterPropagator::new(hamiltonian).at(t)
}

/// Complex amplitudes over all `2^(N+1)` computational basis states.
/// Index `b` encodes the bit string `s_0 ... s_N` with `s_0` least
/// significant.
#[derive(Debug, Clone)]
pub struct RegisterState {
    amplitudes: Vec<Complex64>,
}

impl RegisterState {
    pub fn computational_basis(n_qubits: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        RegisterState { amplitudes }
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Self {
        assert!(amplitudes.len().is_power_of_two(), "length must be 2^n");
        RegisterState { amplitudes }
    }

    pub fn n_qubits(&self) -> usize {
        self.amplitudes.len().trailing_zeros() as usize
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Apply a register unitary: `|out> = U |self>`.
    pub fn evolved(&self, u: &Array2<Complex64>) -> RegisterState {
        let dim = self.amplitudes.len();
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for (i, slot) in out.iter_mut().enumerate() {
            for j in 0..dim {
                *slot += u[[i, j]] * self.amplitudes[j];
            }
        }
        RegisterState { amplitudes: out }
    }
}

/// Outcome of checking `exp(-i H T)` against the site-reversal of every
/// computational basis state.
#[derive(Debug, Clone)]
pub struct MirrorCertificate {
    pub time: f64,
    /// Unit phase of sector M, read from the sector's first configuration.
    pub per_sector_phase: Vec<Complex64>,
    /// Largest off-target amplitude or in-sector phase deviation.
    pub max_deviation: f64,
    /// True when every sector's phase spread stays within tolerance.
    pub phase_uniform_in_sector: bool,
}

impl MirrorCertificate {
    pub fn passes(&self) -> bool {
        self.max_deviation <= MIRROR_TOLERANCE
    }

    /// JSON form: `{"time", "phases": [{"m", "re", "im"}], "max_deviation",
    /// "pass"}`.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct PhaseJson {
            m: usize,
            re: f64,
            im: f64,
        }
        #[derive(Serialize)]
        struct CertificateJson {
            time: f64,
            phases: Vec<PhaseJson>,
            max_deviation: f64,
            pass: bool,
        }
        serde_json::to_value(CertificateJson {
            time: self.time,
            phases: self
                .per_sector_phase
                .iter()
                .enumerate()
                .map(|(m, p)| PhaseJson { m, re: p.re, im: p.im })
                .collect(),
            max_deviation: self.max_deviation,
            pass: self.passes(),
        })
        .expect("certificate serialization")
    }
}

/// Cap for the all-sector consistency sweep.
pub const SECTOR_CONSISTENCY_MAX_QUBITS: usize = 10;

/// Largest entrywise difference between the free-fermion sector propagator
/// and the brute-force register propagator restricted to that sector, over
/// every excitation number and every given time.
///
/// This is the end-to-end fermionization check: the determinant route and
/// the dense-exponential route must agree on each block.
pub fn sector_consistency_deviation(spec: &ChainSpec, times: &[f64]) -> Result<f64, ChainError> {
    let n = spec.n_sites;
    if n > SECTOR_CONSISTENCY_MAX_QUBITS {
        return Err(ChainError::RegisterTooLarge {
            operation: "sector_consistency_deviation",
            qubits: n,
            max: SECTOR_CONSISTENCY_MAX_QUBITS,
        });
    }
    let es = crate::single_particle::numeric_eigensystem(&spec.single_particle_matrix());
    let h = full_register_hamiltonian(spec)?;
    let register = RegisterPropagator::new(&h);
    let mut worst = 0.0_f64;
    for &t in times {
        for m in 0..=n {
            let indices = SectorBasis::new(n, m)?.register_indices();
            let brute = register.restricted(&indices, t);
            let fermionic = sector_propagator(&es, m, t)?;
            worst = worst.max(linalg::max_abs_diff(&brute, &fermionic));
        }
    }
    Ok(worst)
}

/// Evolve the full register for time `T` and compare against site reversal.
///
/// For each basis state `b`, the column `V|b>` must concentrate on
/// `rev(b)` with a unit-modulus amplitude, and that amplitude must be the
/// same for every state within an excitation sector.  Non-mirror chains
/// come back with a large `max_deviation` instead of an error.
pub fn mirror_check(spec: &ChainSpec, time: f64) -> Result<MirrorCertificate, ChainError> {
    let n = spec.n_sites;
    if n > MIRROR_CHECK_MAX_QUBITS {
        return Err(ChainError::RegisterTooLarge {
            operation: "mirror_check",
            qubits: n,
            max: MIRROR_CHECK_MAX_QUBITS,
        });
    }
    let h = full_register_hamiltonian(spec)?;
    let v = RegisterPropagator::new(&h).at(time);
    let dim = 1usize << n;

    // Phase of sector M from its lexicographically first configuration,
    // the string with sites 0..M occupied.
    let mut per_sector_phase = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let first = (1usize << m) - 1;
        let amp = v[[reverse_bits(first, n), first]];
        let phase = if amp.norm() > 0.0 {
            amp / amp.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        per_sector_phase.push(phase);
    }

    let mut max_deviation = 0.0_f64;
    let mut phase_uniform = true;
    for b in 0..dim {
        let target = reverse_bits(b, n);
        let sector = b.count_ones() as usize;
        for row in 0..dim {
            if row != target {
                max_deviation = max_deviation.max(v[[row, b]].norm());
            }
        }
        let phase_dev = (v[[target, b]] - per_sector_phase[sector]).norm();
        max_deviation = max_deviation.max(phase_dev);
        if phase_dev > MIRROR_TOLERANCE {
            phase_uniform = false;
        }
    }

    Ok(MirrorCertificate {
        time,
        per_sector_phase,
        max_deviation,
        phase_uniform_in_sector: phase_uniform,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{custom_chain, hahn_chain, krawtchouk_chain};
    use crate::single_particle::{analytic_eigensystem, numeric_eigensystem, propagator};
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn sector_basis_enumeration() {
        let basis = SectorBasis::new(4, 2).unwrap();
        let expected: Vec<Vec<usize>> = vec![
            vec![0, 1],
            vec![0, 2],
            vec![0, 3],
            vec![1, 2],
            vec![1, 3],
            vec![2, 3],
        ];
        assert_eq!(basis.configs(), expected.as_slice());

        let vacuum = SectorBasis::new(3, 0).unwrap();
        assert_eq!(vacuum.configs(), &[Vec::<usize>::new()]);

        let full = SectorBasis::new(3, 3).unwrap();
        assert_eq!(full.configs(), &[vec![0, 1, 2]]);

        assert!(SectorBasis::new(3, 4).is_err());
    }

    #[test]
    fn register_index_and_bit_reversal() {
        assert_eq!(SectorBasis::register_index(&[0, 2]), 5);
        assert_eq!(reverse_bits(0b001, 3), 0b100);
        assert_eq!(reverse_bits(0b110, 3), 0b011);
        assert_eq!(reverse_bits(0b1010, 4), 0b0101);
    }

    #[test]
    fn slater_single_particle_reduces_to_phi() {
        let es = numeric_eigensystem(&krawtchouk_chain(3).unwrap().single_particle_matrix());
        for k in 0..4 {
            for l in 0..4 {
                let v = slater_eigenfunction(&es, &[k], &[l]).unwrap();
                assert_eq!(v, es.vectors[[k, l]]);
            }
        }
    }

    #[test]
    fn slater_repeated_orbital_is_zero() {
        let es = numeric_eigensystem(&krawtchouk_chain(3).unwrap().single_particle_matrix());
        assert_eq!(slater_eigenfunction(&es, &[1, 1], &[0, 2]).unwrap(), 0.0);
        assert_eq!(slater_eigenfunction(&es, &[0, 1], &[2, 2]).unwrap(), 0.0);
    }

    #[test]
    fn slater_matches_explicit_two_by_two() {
        let es = analytic_eigensystem(&krawtchouk_chain(2).unwrap()).unwrap();
        let value = slater_eigenfunction(&es, &[0, 1], &[0, 1]).unwrap();
        let oracle = (es.vectors[[0, 0]] * es.vectors[[1, 1]]
            - es.vectors[[0, 1]] * es.vectors[[1, 0]])
            / 2.0_f64.sqrt();
        assert!((value - oracle).abs() < 1e-15);
    }

    #[test]
    fn slater_antisymmetry_is_exact() {
        let es = numeric_eigensystem(&hahn_chain(4, 0, 1).unwrap().single_particle_matrix());
        let base = slater_eigenfunction(&es, &[0, 2, 3], &[1, 2, 4]).unwrap();
        let orb_swapped = slater_eigenfunction(&es, &[2, 0, 3], &[1, 2, 4]).unwrap();
        let site_swapped = slater_eigenfunction(&es, &[0, 2, 3], &[4, 2, 1]).unwrap();
        assert_eq!(base, -orb_swapped);
        assert_eq!(base, -site_swapped);
    }

    #[test]
    fn register_sign_convention_for_two_fermions() {
        // The antisymmetric eigenfunction evaluated with mirrored, hence
        // descending, arguments differs from the symmetric register
        // wavefunction by (-1)^{M(M-1)/2} = -1 at M = 2.
        let n = 4;
        let es = numeric_eigensystem(&krawtchouk_chain(n).unwrap().single_particle_matrix());
        for (l1, l2) in [(0usize, 1usize), (0, 3), (1, 2)] {
            let descending = slater_eigenfunction(&es, &[1, 3], &[n - l1, n - l2]).unwrap();
            let register = slater_eigenfunction(&es, &[1, 3], &[n - l2, n - l1]).unwrap();
            assert_eq!(descending, -register);
        }
    }

    #[test]
    fn slater_argument_validation() {
        let es = numeric_eigensystem(&krawtchouk_chain(2).unwrap().single_particle_matrix());
        assert!(matches!(
            slater_eigenfunction(&es, &[0, 1], &[0]),
            Err(ChainError::SlaterSizeMismatch { .. })
        ));
        assert!(slater_eigenfunction(&es, &[5], &[0]).is_err());
    }

    #[test]
    fn sector_propagator_trivial_sectors() {
        let es = numeric_eigensystem(&krawtchouk_chain(2).unwrap().single_particle_matrix());
        let w0 = sector_propagator(&es, 0, 1.3).unwrap();
        assert_eq!(w0.dim(), (1, 1));
        assert!((w0[[0, 0]] - Complex64::new(1.0, 0.0)).norm() < 1e-15);

        let t = 0.9;
        let w1 = sector_propagator(&es, 1, t).unwrap();
        let u = propagator(&es, t).entries;
        for i in 0..3 {
            for j in 0..3 {
                assert!((w1[[i, j]] - u[[i, j]]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn sector_propagator_matches_brute_force() {
        let spec = krawtchouk_chain(2).unwrap();
        let es = numeric_eigensystem(&spec.single_particle_matrix());
        let t = 0.7;
        let w = sector_propagator(&es, 2, t).unwrap();

        let h = full_register_hamiltonian(&spec).unwrap();
        let reg = RegisterPropagator::new(&h);
        let indices = SectorBasis::new(3, 2).unwrap().register_indices();
        let brute = reg.restricted(&indices, t);
        for a in 0..w.nrows() {
            for b in 0..w.ncols() {
                assert!(
                    (w[[a, b]] - brute[[a, b]]).norm() <= 1e-8,
                    "sector entry ({a},{b}): {} vs {}",
                    w[[a, b]],
                    brute[[a, b]]
                );
            }
        }
    }

    #[test]
    fn sector_propagator_is_unitary() {
        let es = numeric_eigensystem(&hahn_chain(4, 0, 1).unwrap().single_particle_matrix());
        for m in 0..=5 {
            let w = sector_propagator(&es, m, 1.7).unwrap();
            assert!(
                linalg::unitarity_defect(&w) < 1e-10,
                "sector M={m} not unitary"
            );
        }
    }

    #[test]
    fn slater_states_are_sector_eigenstates() {
        let spec = hahn_chain(3, 0, 1).unwrap();
        let es = numeric_eigensystem(&spec.single_particle_matrix());
        let basis = SectorBasis::new(4, 2).unwrap();
        let t = 1.1;
        let w = sector_propagator(&es, 2, t).unwrap();
        let orbitals = [0usize, 2];
        let amp: Vec<f64> = basis
            .configs()
            .iter()
            .map(|c| 2.0_f64.sqrt() * slater_eigenfunction(&es, &orbitals, c).unwrap())
            .collect();
        let energy: f64 = orbitals.iter().map(|&k| es.energies[k]).sum();
        let expected_phase = Complex64::from_polar(1.0, -energy * t);
        for a in 0..basis.len() {
            let mut acc = Complex64::new(0.0, 0.0);
            for b in 0..basis.len() {
                acc += w[[a, b]] * amp[b];
            }
            assert!(
                (acc - expected_phase * amp[a]).norm() < 1e-8,
                "eigenstate property at row {a}"
            );
        }
    }

    #[test]
    fn register_hamiltonian_two_sites() {
        let h = full_register_hamiltonian(&krawtchouk_chain(1).unwrap()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if (i, j) == (1, 2) || (i, j) == (2, 1) { 1.0 } else { 0.0 };
                assert_eq!(h[[i, j]], expect, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn register_hamiltonian_single_excitation_block() {
        for spec in [
            hahn_chain(1, 0, 1).unwrap(),
            hahn_chain(3, 1, 1).unwrap(),
            custom_chain(vec![1.0, 2.0], vec![5.0, 6.0, 7.0]).unwrap(),
        ] {
            let h = full_register_hamiltonian(&spec).unwrap();
            let m = spec.single_particle_matrix();
            let n = spec.n_sites;
            for i in 0..n {
                for j in 0..n {
                    let expect = if i == j {
                        m.diagonal[i]
                    } else if i.abs_diff(j) == 1 {
                        m.off_diagonal[i.min(j)]
                    } else {
                        0.0
                    };
                    assert_eq!(h[[1 << i, 1 << j]], expect, "block entry ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn register_hamiltonian_conserves_excitation_number_exactly() {
        let spec = hahn_chain(3, 0, 1).unwrap();
        let h = full_register_hamiltonian(&spec).unwrap();
        let dim = 1 << spec.n_sites;
        for i in 0..dim {
            for j in 0..dim {
                if usize::count_ones(i) != usize::count_ones(j) {
                    assert_eq!(h[[i, j]], 0.0, "cross-sector entry ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn register_hamiltonian_size_guard() {
        let spec = krawtchouk_chain(14).unwrap();
        assert!(matches!(
            full_register_hamiltonian(&spec),
            Err(ChainError::RegisterTooLarge { .. })
        ));
    }

    #[test]
    fn register_propagator_basics() {
        let spec = krawtchouk_chain(2).unwrap();
        let h = full_register_hamiltonian(&spec).unwrap();
        let reg = RegisterPropagator::new(&h);

        let identity = reg.at(0.0);
        for i in 0..8 {
            for j in 0..8 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((identity[[i, j]] - expect).norm() < 1e-12);
            }
        }

        let (a, b) = (0.6, 1.9);
        let group = reg.at(a).dot(&reg.at(b));
        let direct = reg.at(a + b);
        assert!(linalg::max_abs_diff(&group, &direct) < 1e-9, "group property");

        // The single-excitation block reproduces the single-particle
        // propagator.
        let es = numeric_eigensystem(&spec.single_particle_matrix());
        let u = propagator(&es, a).entries;
        let indices: Vec<usize> = (0..3).map(|l| 1usize << l).collect();
        let block = reg.restricted(&indices, a);
        assert!(linalg::max_abs_diff(&block, &u) < 1e-9);
    }

    #[test]
    fn hahn_mirror_certificate_at_q_pi() {
        let cert = mirror_check(&hahn_chain(2, 0, 1).unwrap(), PI).unwrap();
        assert!(cert.passes(), "max_deviation {}", cert.max_deviation);
        assert!(cert.phase_uniform_in_sector);
        for phase in &cert.per_sector_phase {
            assert!((phase.norm() - 1.0).abs() < 1e-10);
        }
        let json = cert.to_json();
        assert_eq!(json["pass"], true);
        assert_eq!(json["phases"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn krawtchouk_mirror_certificate_at_found_time() {
        let spec = krawtchouk_chain(2).unwrap();
        let report = crate::single_particle::find_mirror_time(&spec, 4.0, 10_000).unwrap();
        assert!(report.is_mirror());
        let cert = mirror_check(&spec, report.mirror_time).unwrap();
        assert!(cert.passes(), "max_deviation {}", cert.max_deviation);
        // Sector 1 inherits the single-particle global phase.
        assert!((cert.per_sector_phase[1] - report.global_phase).norm() < 1e-6);
    }

    #[test]
    fn non_mirror_chain_fails_the_certificate() {
        let spec = custom_chain(vec![1.0, 2.0], vec![0.0; 3]).unwrap();
        let cert = mirror_check(&spec, PI).unwrap();
        assert!(!cert.passes());
        assert!(cert.max_deviation > 1e-2);
    }

    #[test]
    fn mirror_check_size_guard() {
        let spec = krawtchouk_chain(12).unwrap();
        assert!(matches!(
            mirror_check(&spec, FRAC_PI_2),
            Err(ChainError::RegisterTooLarge { .. })
        ));
    }

    #[test]
    fn register_state_helpers() {
        let state = RegisterState::computational_basis(3, 5);
        assert_eq!(state.n_qubits(), 3);
        assert!((state.norm() - 1.0).abs() < 1e-15);

        let spec = krawtchouk_chain(2).unwrap();
        let h = full_register_hamiltonian(&spec).unwrap();
        let u = full_register_propagator(&h, 0.4);
        let evolved = state.evolved(&u);
        assert!((evolved.norm() - 1.0).abs() < 1e-12);
    }
}
