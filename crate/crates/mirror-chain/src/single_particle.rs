//! Single-particle eigensolution, propagators, transfer fidelity, and the
//! empirical mirror-time search.
//!
//! The single-excitation dynamics of a chain is `U(t) = exp(-i t M)` with
//! `M` the symmetric tridiagonal matrix of couplings and fields.  A chain
//! is mirror periodic at time `T` when `U(T)` equals a unit phase times the
//! antidiagonal permutation `A` (`A[i, j] = delta_{i, N-j}`); the search
//! below finds such times empirically instead of trusting any closed-form
//! period.

use ndarray::Array2;
use num_complex::Complex64;

use crate::chain::{ChainSpec, SymmetricTridiagonal};
use crate::error::ChainError;
use crate::linalg;
use crate::polynomials::eigenfunction_table;

/// Residual threshold below which a propagator counts as a mirror.
pub const MIRROR_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigensystemSource {
    /// Built from the closed-form polynomial eigenfunctions.
    Analytic,
    /// Built by the tridiagonal QL eigensolver.
    Numeric,
}

/// Sorted eigensolution of the single-particle matrix.
///
/// `energies` ascend; row `k` of `vectors` is the eigenvector for
/// `energies[k]`, sign-normalized so the first significant component is
/// positive.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    pub energies: Vec<f64>,
    pub vectors: Array2<f64>,
    pub source: EigensystemSource,
}

impl Eigensystem {
    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    /// `max_k ||M v_k - E_k v_k||_inf`, the eigen-equation defect.
    pub fn eigen_defect(&self, matrix: &SymmetricTridiagonal) -> f64 {
        let n = self.len();
        let mut worst = 0.0_f64;
        for k in 0..n {
            for i in 0..n {
                let mut acc = matrix.diagonal[i] * self.vectors[[k, i]];
                if i > 0 {
                    acc += matrix.off_diagonal[i - 1] * self.vectors[[k, i - 1]];
                }
                if i + 1 < n {
                    acc += matrix.off_diagonal[i] * self.vectors[[k, i + 1]];
                }
                worst = worst.max((acc - self.energies[k] * self.vectors[[k, i]]).abs());
            }
        }
        worst
    }
}

/// Diagonalize the tridiagonal matrix numerically (implicit-shift QL).
pub fn numeric_eigensystem(matrix: &SymmetricTridiagonal) -> Eigensystem {
    let (energies, mut vectors) = linalg::tridiagonal_eigen(&matrix.diagonal, &matrix.off_diagonal);
    linalg::normalize_row_signs(&mut vectors);
    Eigensystem {
        energies,
        vectors,
        source: EigensystemSource::Numeric,
    }
}

/// Build the eigensystem from the closed-form polynomial table.
///
/// The Krawtchouk rows are eigenvectors of the chain matrix as they stand.
/// The Hahn rows diagonalize the matrix with negated couplings, so the
/// conversion applies the parity conjugation `v(l) = (-1)^l phi(l)`, which
/// restores `M v_k = k(k + 2 alpha + 1) v_k` for the matrix with positive
/// couplings.  Energies are Rayleigh quotients of the resulting vectors,
/// never read off a formula; the eigen-equation tests keep this honest.
pub fn analytic_eigensystem(spec: &ChainSpec) -> Result<Eigensystem, ChainError> {
    let table = eigenfunction_table(spec)?;
    let matrix = spec.single_particle_matrix();
    let n = spec.n_sites;
    let twist = matches!(spec.family, crate::chain::Family::Hahn { .. });
    let mut pairs: Vec<(f64, Vec<f64>)> = Vec::with_capacity(n);
    for k in 0..n {
        let mut v: Vec<f64> = (0..n).map(|l| table.values[[k, l]]).collect();
        if twist {
            for (l, x) in v.iter_mut().enumerate() {
                if l % 2 == 1 {
                    *x = -*x;
                }
            }
        }
        pairs.push((rayleigh_quotient(&matrix, &v), v));
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut vectors = Array2::zeros((n, n));
    let mut energies = Vec::with_capacity(n);
    for (rank, (energy, v)) in pairs.into_iter().enumerate() {
        energies.push(energy);
        for (l, x) in v.into_iter().enumerate() {
            vectors[[rank, l]] = x;
        }
    }
    linalg::normalize_row_signs(&mut vectors);
    Ok(Eigensystem {
        energies,
        vectors,
        source: EigensystemSource::Analytic,
    })
}

fn rayleigh_quotient(matrix: &SymmetricTridiagonal, v: &[f64]) -> f64 {
    let n = v.len();
    let mut acc = 0.0;
    for i in 0..n {
        acc += matrix.diagonal[i] * v[i] * v[i];
        if i + 1 < n {
            acc += 2.0 * matrix.off_diagonal[i] * v[i] * v[i + 1];
        }
    }
    acc
}

/// Unitary single-particle propagator `U(t) = exp(-i t M)`.
#[derive(Debug, Clone)]
pub struct PropagatorMatrix {
    pub entries: Array2<Complex64>,
    pub time: f64,
}

impl PropagatorMatrix {
    /// `max |(U U^dagger - I)_{ij}|`.
    pub fn unitarity_defect(&self) -> f64 {
        linalg::unitarity_defect(&self.entries)
    }
}

/// Spectral form `U(t) = sum_k exp(-i E_k t) |v_k><v_k|`.
pub fn propagator(es: &Eigensystem, t: f64) -> PropagatorMatrix {
    PropagatorMatrix {
        entries: linalg::spectral_propagator(&es.energies, &es.vectors, t),
        time: t,
    }
}

/// End-to-end transfer amplitude magnitude `|U(t)_{N,0}|`.
pub fn transfer_fidelity(spec: &ChainSpec, t: f64) -> f64 {
    let es = numeric_eigensystem(&spec.single_particle_matrix());
    end_to_end_amplitude(&es, t)
}

/// Fidelity at many times with a single diagonalization.
pub fn fidelity_curve(spec: &ChainSpec, times: &[f64]) -> Vec<(f64, f64)> {
    let es = numeric_eigensystem(&spec.single_particle_matrix());
    times
        .iter()
        .map(|&t| (t, end_to_end_amplitude(&es, t)))
        .collect()
}

fn end_to_end_amplitude(es: &Eigensystem, t: f64) -> f64 {
    let n = es.len();
    let mut amp = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let phase = Complex64::from_polar(1.0, -es.energies[k] * t);
        amp += phase * (es.vectors[[k, n - 1]] * es.vectors[[k, 0]]);
    }
    amp.norm()
}

/// Outcome of comparing `U(t)` against a phase times the antidiagonal
/// permutation.
#[derive(Debug, Clone)]
pub struct MirrorReport {
    pub mirror_time: f64,
    /// Unit-modulus phase extracted from the largest antidiagonal entry.
    pub global_phase: Complex64,
    /// `min_phase max_{ij} |U(t) - phase * A|_{ij}` at `mirror_time`.
    pub residual: f64,
}

impl MirrorReport {
    pub fn is_mirror(&self) -> bool {
        self.residual <= MIRROR_TOLERANCE
    }
}

/// Deviation of `U(t)` from `phase * A`, with the phase read off the
/// largest-magnitude antidiagonal entry.
pub fn mirror_residual(es: &Eigensystem, t: f64) -> (f64, Complex64) {
    let u = linalg::spectral_propagator(&es.energies, &es.vectors, t);
    let n = es.len();
    let mut best = 0.0_f64;
    let mut phase = Complex64::new(1.0, 0.0);
    for j in 0..n {
        let entry = u[[n - 1 - j, j]];
        let mag = entry.norm();
        if mag > best {
            best = mag;
            phase = entry / mag;
        }
    }
    let mut residual = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == n - 1 - j {
                phase
            } else {
                Complex64::new(0.0, 0.0)
            };
            residual = residual.max((u[[i, j]] - target).norm());
        }
    }
    (residual, phase)
}

/// Scan `(0, t_max]` on `grid` points for the earliest mirror time, golden-
/// section refining promising local minima.  Local minima that cannot
/// reach the tolerance within two grid steps (Lipschitz bound from the
/// spectral radius) are skipped.  When nothing passes, the best refined
/// candidate is returned with its residual; callers decide via
/// [`MirrorReport::is_mirror`].
pub fn find_mirror_time(spec: &ChainSpec, t_max: f64, grid: usize) -> Result<MirrorReport, ChainError> {
    linalg::check_search_window(t_max, grid)?;
    let es = numeric_eigensystem(&spec.single_particle_matrix());
    let step = t_max / grid as f64;
    let residual_at = |t: f64| mirror_residual(&es, t).0;

    let coarse: Vec<f64> = (1..=grid).map(|i| residual_at(step * i as f64)).collect();
    let spectral_radius = es
        .energies
        .iter()
        .fold(0.0_f64, |m, &e| m.max(e.abs()))
        .max(1.0);
    let gate = 2.0 * spectral_radius * step + MIRROR_TOLERANCE;

    let is_local_min = |i: usize| {
        let left_ok = i == 0 || coarse[i] <= coarse[i - 1];
        let right_ok = i + 1 == coarse.len() || coarse[i] <= coarse[i + 1];
        left_ok && right_ok
    };

    let refine = |i: usize| {
        let lo = step * (i.saturating_sub(2) + 1) as f64;
        let hi = step * (i + 3).min(grid) as f64;
        let (t, _) = golden_minimize(&residual_at, lo, hi);
        let (residual, phase) = mirror_residual(&es, t);
        MirrorReport {
            mirror_time: t,
            global_phase: phase,
            residual,
        }
    };

    let mut best_index = 0;
    for i in 0..coarse.len() {
        if coarse[i] < coarse[best_index] {
            best_index = i;
        }
        if coarse[i] <= gate && is_local_min(i) {
            let report = refine(i);
            if report.is_mirror() {
                return Ok(report);
            }
        }
    }
    Ok(refine(best_index))
}

fn golden_minimize(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..120 {
        if (b - a).abs() <= 1e-13 * b.abs().max(1.0) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{custom_chain, hahn_chain, krawtchouk_chain};
    use std::f64::consts::{FRAC_PI_2, PI};

    fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
        assert!((a - b).abs() <= tol, "{what}: {a} vs {b}");
    }

    #[test]
    fn krawtchouk_numeric_spectra() {
        let es1 = numeric_eigensystem(&krawtchouk_chain(1).unwrap().single_particle_matrix());
        assert_close(es1.energies[0], -1.0, 1e-13, "N=1 ground");
        assert_close(es1.energies[1], 1.0, 1e-13, "N=1 top");

        let es2 = numeric_eigensystem(&krawtchouk_chain(2).unwrap().single_particle_matrix());
        for (e, expect) in es2.energies.iter().zip([-2.0, 0.0, 2.0]) {
            assert_close(*e, expect, 1e-12, "N=2 spectrum");
        }
    }

    #[test]
    fn hahn_numeric_spectrum_is_quadratic() {
        let es = numeric_eigensystem(&hahn_chain(2, 0, 1).unwrap().single_particle_matrix());
        for (e, expect) in es.energies.iter().zip([0.0, 3.0, 8.0]) {
            assert_close(*e, expect, 1e-12, "Hahn N=2 spectrum");
        }
    }

    #[test]
    fn analytic_eigensystems_satisfy_the_eigen_equation() {
        for n in 1..=20 {
            let spec = krawtchouk_chain(n).unwrap();
            let m = spec.single_particle_matrix();
            let es = analytic_eigensystem(&spec).unwrap();
            assert!(
                es.eigen_defect(&m) <= 1e-8 * m.max_abs(),
                "Krawtchouk N={n}"
            );
            for &(p, q) in &[(0, 1), (1, 1), (0, 2), (1, 3)] {
                let spec = hahn_chain(n, p, q).unwrap();
                let m = spec.single_particle_matrix();
                let es = analytic_eigensystem(&spec).unwrap();
                assert!(
                    es.eigen_defect(&m) <= 1e-8 * m.max_abs(),
                    "Hahn N={n}, p={p}, q={q}"
                );
                let alpha = spec.alpha().unwrap();
                for (k, e) in es.energies.iter().enumerate() {
                    let expect = k as f64 * (k as f64 + 2.0 * alpha + 1.0);
                    assert_close(*e, expect, 1e-9 * expect.max(1.0), "Hahn energy");
                }
            }
        }
    }

    #[test]
    fn propagator_basics() {
        let spec = krawtchouk_chain(3).unwrap();
        let es = numeric_eigensystem(&spec.single_particle_matrix());
        let u0 = propagator(&es, 0.0);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((u0.entries[[i, j]] - expect).norm() < 1e-12);
            }
        }
        let t = 0.83;
        let forward = propagator(&es, t);
        let backward = propagator(&es, -t);
        let product = forward.entries.dot(&backward.entries);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((product[[i, j]] - expect).norm() < 1e-12, "group property");
            }
        }
        assert!(forward.unitarity_defect() < 1e-10);
    }

    #[test]
    fn two_site_propagator_at_quarter_period() {
        let spec = krawtchouk_chain(1).unwrap();
        let es = numeric_eigensystem(&spec.single_particle_matrix());
        let u = propagator(&es, FRAC_PI_2);
        let minus_i = Complex64::new(0.0, -1.0);
        assert!((u.entries[[0, 0]]).norm() < 1e-12);
        assert!((u.entries[[1, 1]]).norm() < 1e-12);
        assert!((u.entries[[0, 1]] - minus_i).norm() < 1e-12);
        assert!((u.entries[[1, 0]] - minus_i).norm() < 1e-12);
    }

    #[test]
    fn transfer_fidelity_examples() {
        let k1 = krawtchouk_chain(1).unwrap();
        assert_close(transfer_fidelity(&k1, FRAC_PI_2), 1.0, 1e-12, "K N=1");
        assert_eq!(transfer_fidelity(&k1, 0.0), 0.0);

        let h4 = hahn_chain(4, 0, 1).unwrap();
        assert!(1.0 - transfer_fidelity(&h4, PI) <= 1e-9, "Hahn N=4 at T=pi");

        // A q = 2 member peaks at its doubled period 2*pi.
        let h5 = hahn_chain(5, 0, 2).unwrap();
        assert!(
            1.0 - transfer_fidelity(&h5, 2.0 * PI) <= 1e-9,
            "Hahn N=5 q=2 at T=2*pi"
        );
    }

    #[test]
    fn mirror_time_for_small_krawtchouk() {
        let spec = krawtchouk_chain(2).unwrap();
        let report = find_mirror_time(&spec, 4.0, 10_000).unwrap();
        assert!(report.is_mirror(), "residual {}", report.residual);
        assert_close(report.mirror_time, FRAC_PI_2, 1e-6, "earliest mirror time");
        // Spectrum {-2, 0, 2}: U(pi/2) = -A, so the global phase is -1.
        assert!((report.global_phase - Complex64::new(-1.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn mirror_time_for_small_hahn() {
        let spec = hahn_chain(3, 0, 1).unwrap();
        let report = find_mirror_time(&spec, 4.0, 10_000).unwrap();
        assert!(report.is_mirror(), "residual {}", report.residual);
        assert_close(report.mirror_time, PI, 1e-6, "Hahn q=1 period");
    }

    #[test]
    fn incommensurate_chain_has_no_mirror_time() {
        let spec = custom_chain(vec![1.0, 2.0], vec![0.0; 3]).unwrap();
        let report = find_mirror_time(&spec, 20.0, 10_000).unwrap();
        assert!(!report.is_mirror(), "residual {}", report.residual);
    }

    #[test]
    fn mirror_implies_unit_fidelity_and_periodicity() {
        let spec = krawtchouk_chain(5).unwrap();
        let report = find_mirror_time(&spec, 4.0, 10_000).unwrap();
        assert!(report.is_mirror());
        assert!(1.0 - transfer_fidelity(&spec, report.mirror_time) <= 1e-9);

        // U(2T) must be a scalar multiple of the identity.
        let es = numeric_eigensystem(&spec.single_particle_matrix());
        let u2 = propagator(&es, 2.0 * report.mirror_time).entries;
        let scalar = u2[[0, 0]];
        assert!((scalar.norm() - 1.0).abs() < 1e-8);
        for i in 0..es.len() {
            for j in 0..es.len() {
                let expect = if i == j { scalar } else { Complex64::new(0.0, 0.0) };
                assert!((u2[[i, j]] - expect).norm() < 1e-8, "periodicity at ({i},{j})");
            }
        }
    }

    #[test]
    fn search_window_validation() {
        let spec = krawtchouk_chain(2).unwrap();
        assert!(find_mirror_time(&spec, 0.0, 10_000).is_err());
        assert!(find_mirror_time(&spec, 4.0, 10).is_err());
    }

    #[test]
    fn analytic_numeric_agreement_small() {
        for n in 1..=10 {
            for spec in [krawtchouk_chain(n).unwrap(), hahn_chain(n, 0, 1).unwrap()] {
                let numeric = numeric_eigensystem(&spec.single_particle_matrix());
                let analytic = analytic_eigensystem(&spec).unwrap();
                for k in 0..numeric.len() {
                    assert_close(
                        numeric.energies[k],
                        analytic.energies[k],
                        1e-8,
                        "eigenvalue agreement",
                    );
                    for l in 0..numeric.len() {
                        assert_close(
                            numeric.vectors[[k, l]],
                            analytic.vectors[[k, l]],
                            1e-8,
                            "eigenvector agreement",
                        );
                    }
                }
            }
        }
    }
}
