//! Krawtchouk and Hahn polynomials, weights, and normalization constants.
//!
//! Both polynomial families are evaluated as terminating hypergeometric
//! sums with terms accumulated through the ratio recurrence
//! `t_{j+1} = t_j * ratio(j)`:
//!
//! - Krawtchouk (p = 1/2):
//!   `K_k(l) = sum_j (-k)_j (-l)_j / ((-N)_j j!) * 2^j`
//! - Hahn (beta = alpha, site argument -l):
//!   `Q_k(l) = sum_j (-k)_j (k+2a+1)_j (-l)_j / ((a+1)_j (-N)_j j!)`
//!
//! Each family also has an independent three-term recurrence in the degree
//! `k`; the two routes are cross-checked in the tests, and the series
//! evaluation hands over to the recurrence when cancellation leaves the
//! sum far below its largest term.
//!
//! The orthonormal eigenfunction table combines polynomial values with the
//! weight `w(l)` and normalization `c_k`:
//! `phi_k(l) = c_k sqrt(w(l)) P_k(l)`.  Rows are orthonormal and satisfy the
//! reflection identity `phi_k(N-l) = (-1)^k phi_k(l)`.

use ndarray::Array2;

use crate::chain::{ChainSpec, Family};
use crate::error::ChainError;
use crate::linalg;

/// Rising factorial `(x)_k = x (x+1) ... (x+k-1)`, with `(x)_0 = 1`.
pub fn pochhammer(x: f64, k: usize) -> f64 {
    let mut product = 1.0;
    for j in 0..k {
        product *= x + j as f64;
    }
    product
}

/// Binomial coefficient as an exact small integer, returned in f64.
fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (n - k + i) as u128 / i as u128;
    }
    acc as f64
}

/// Generalized binomial `C(x, k) = (x-k+1)_k / k!` for real `x`.
///
/// Equals `Gamma(x+1) / (Gamma(x-k+1) Gamma(k+1))`; the rising-factorial
/// form is exact for the positive arguments used here.
pub fn generalized_binomial(x: f64, k: usize) -> f64 {
    pochhammer(x - k as f64 + 1.0, k) / factorial(k)
}

fn factorial(n: usize) -> f64 {
    let mut acc = 1.0;
    for i in 2..=n {
        acc *= i as f64;
    }
    acc
}

fn check_indices(k: usize, l: usize, n: usize) -> Result<(), ChainError> {
    if k > n {
        return Err(ChainError::IndexOutOfRange {
            what: "polynomial degree k",
            index: k,
            limit: n,
        });
    }
    if l > n {
        return Err(ChainError::IndexOutOfRange {
            what: "site index l",
            index: l,
            limit: n,
        });
    }
    Ok(())
}

/// When the series sum is this much smaller than its largest term, the
/// cancellation has eaten too many digits and the recurrence route takes
/// over.
const CANCELLATION_GUARD: f64 = 1e-4;

/// Krawtchouk polynomial `K_k(l; 1/2, N)`: forward summation of the
/// terminating series, falling back to the degree recurrence when the sum
/// cancels down to noise (near `k = l = N` the terms reach ~2^N while the
/// value stays O(1)).
pub fn krawtchouk_polynomial(k: usize, l: usize, n: usize) -> Result<f64, ChainError> {
    check_indices(k, l, n)?;
    let (kf, lf, nf) = (k as f64, l as f64, n as f64);
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut largest = 1.0_f64;
    for j in 0..k.min(l) {
        let jf = j as f64;
        term *= (jf - kf) * (jf - lf) * 2.0 / ((jf - nf) * (jf + 1.0));
        sum += term;
        largest = largest.max(term.abs());
    }
    if sum.abs() < CANCELLATION_GUARD * largest {
        return krawtchouk_recurrence(k, l, n);
    }
    Ok(sum)
}

/// Krawtchouk polynomial through the three-term recurrence in the degree:
/// `(N-n) K_{n+1} = (N-2l) K_n - n K_{n-1}`.  Cross-check route for the
/// series evaluation.
///
/// Iterated in difference form, `K_{n+1} = K_n + (n D_n - 2l K_n)/(N-n)`
/// with `D_n = K_n - K_{n-1}`, which keeps the boundary value `K_k(0) = 1`
/// exact instead of letting coefficient imbalance amplify roundoff.
pub fn krawtchouk_recurrence(k: usize, l: usize, n: usize) -> Result<f64, ChainError> {
    check_indices(k, l, n)?;
    let (lf, nf) = (l as f64, n as f64);
    if k == 0 {
        return Ok(1.0);
    }
    let mut curr = 1.0 - 2.0 * lf / nf;
    let mut diff = curr - 1.0;
    for deg in 1..k {
        let df = deg as f64;
        diff = (df * diff - 2.0 * lf * curr) / (nf - df);
        curr += diff;
    }
    Ok(curr)
}

/// Hahn polynomial `Q_k(l; alpha, alpha, N)`: forward summation of the
/// terminating series with the same cancellation fallback as the
/// Krawtchouk evaluation.
pub fn hahn_polynomial(k: usize, l: usize, alpha: f64, n: usize) -> Result<f64, ChainError> {
    check_indices(k, l, n)?;
    let (kf, lf, nf) = (k as f64, l as f64, n as f64);
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut largest = 1.0_f64;
    for j in 0..k.min(l) {
        let jf = j as f64;
        term *= (jf - kf) * (kf + 2.0 * alpha + 1.0 + jf) * (jf - lf)
            / ((alpha + 1.0 + jf) * (jf - nf) * (jf + 1.0));
        sum += term;
        largest = largest.max(term.abs());
    }
    if sum.abs() < CANCELLATION_GUARD * largest {
        return hahn_recurrence(k, l, alpha, n);
    }
    Ok(sum)
}

/// Hahn polynomial through the three-term recurrence in the degree,
/// `-l Q_n = A_n Q_{n+1} - (A_n + C_n) Q_n + C_n Q_{n-1}`.  Cross-check
/// route for the series evaluation, iterated in the same difference form
/// as the Krawtchouk recurrence: `Q_{n+1} = Q_n + (C_n D_n - l Q_n)/A_n`.
pub fn hahn_recurrence(k: usize, l: usize, alpha: f64, n: usize) -> Result<f64, ChainError> {
    check_indices(k, l, n)?;
    let (lf, nf) = (l as f64, n as f64);
    if k == 0 {
        return Ok(1.0);
    }
    let a_coeff = |d: f64| {
        (d + 2.0 * alpha + 1.0) * (d + alpha + 1.0) * (nf - d)
            / ((2.0 * d + 2.0 * alpha + 1.0) * (2.0 * d + 2.0 * alpha + 2.0))
    };
    let c_coeff = |d: f64| {
        d * (d + 2.0 * alpha + nf + 1.0) * (d + alpha)
            / ((2.0 * d + 2.0 * alpha) * (2.0 * d + 2.0 * alpha + 1.0))
    };
    let mut curr = 1.0 - lf / a_coeff(0.0);
    let mut diff = curr - 1.0;
    for deg in 1..k {
        let df = deg as f64;
        diff = (c_coeff(df) * diff - lf * curr) / a_coeff(df);
        curr += diff;
    }
    Ok(curr)
}

/// Krawtchouk weight `w(l) = 2^-N C(N, l)`.
pub fn krawtchouk_weight(l: usize, n: usize) -> f64 {
    binomial(n, l) / (n as f64).exp2()
}

/// Krawtchouk normalization `c_k = sqrt(C(N, k))`, the positive form of
/// `sqrt((-N)_k / ((-1)^k k!))`.
pub fn krawtchouk_norm(k: usize, n: usize) -> f64 {
    binomial(n, k).sqrt()
}

/// Hahn weight `w(l) = C(alpha+l, l) C(alpha+N-l, N-l)` with the
/// generalized binomial.
pub fn hahn_weight(l: usize, alpha: f64, n: usize) -> f64 {
    generalized_binomial(alpha + l as f64, l) * generalized_binomial(alpha + (n - l) as f64, n - l)
}

/// Hahn normalization
/// `c_k = sqrt((2k+2a+1) (N!)^2 / ((k+2a+1)_{N+1} k! (N-k)!))`.
pub fn hahn_norm(k: usize, alpha: f64, n: usize) -> f64 {
    let nf = factorial(n);
    let numerator = (2.0 * k as f64 + 2.0 * alpha + 1.0) * nf * nf;
    let denominator = pochhammer(k as f64 + 2.0 * alpha + 1.0, n + 1) * factorial(k) * factorial(n - k);
    (numerator / denominator).sqrt()
}

/// Orthonormal closed-form eigenfunctions `phi_k(l)`, one row per degree.
#[derive(Debug, Clone)]
pub struct EigenfunctionTable {
    /// `values[[k, l]] = phi_k(l)`.
    pub values: Array2<f64>,
    pub family: Family,
    pub alpha: Option<f64>,
}

impl EigenfunctionTable {
    /// The chain parameter `N` (table is `(N+1) x (N+1)`).
    pub fn n(&self) -> usize {
        self.values.nrows() - 1
    }

    pub fn phi(&self, k: usize, l: usize) -> f64 {
        self.values[[k, l]]
    }

    /// `max_{k,l} |phi_k(N-l) - (-1)^k phi_k(l)|`.
    pub fn reflection_defect(&self) -> f64 {
        let n = self.n();
        let mut worst = 0.0_f64;
        for k in 0..=n {
            let parity = if k % 2 == 0 { 1.0 } else { -1.0 };
            for l in 0..=n {
                worst = worst.max((self.values[[k, n - l]] - parity * self.values[[k, l]]).abs());
            }
        }
        worst
    }

    /// `max |(Phi Phi^T - I)_{kk'}|`: row orthonormality defect.
    pub fn gram_defect(&self) -> f64 {
        let n = self.values.nrows();
        let mut worst = 0.0_f64;
        for a in 0..n {
            for b in 0..n {
                let dot: f64 = (0..n).map(|l| self.values[[a, l]] * self.values[[b, l]]).sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// Build the closed-form eigenfunction table for a Krawtchouk or Hahn
/// chain.  Custom chains have no closed form and are rejected.
pub fn eigenfunction_table(spec: &ChainSpec) -> Result<EigenfunctionTable, ChainError> {
    let n = spec.n();
    let mut values = Array2::zeros((n + 1, n + 1));
    match spec.family {
        Family::Krawtchouk => {
            let weights: Vec<f64> = (0..=n).map(|l| krawtchouk_weight(l, n).sqrt()).collect();
            for k in 0..=n {
                let norm = krawtchouk_norm(k, n);
                for l in 0..=n {
                    values[[k, l]] = norm * weights[l] * krawtchouk_polynomial(k, l, n)?;
                }
            }
        }
        Family::Hahn { .. } => {
            let alpha = spec.alpha().expect("hahn family has alpha");
            let weights: Vec<f64> = (0..=n).map(|l| hahn_weight(l, alpha, n).sqrt()).collect();
            for k in 0..=n {
                let norm = hahn_norm(k, alpha, n);
                for l in 0..=n {
                    values[[k, l]] = norm * weights[l] * hahn_polynomial(k, l, alpha, n)?;
                }
            }
        }
        Family::Custom => {
            return Err(ChainError::UnsupportedFamily {
                operation: "eigenfunction_table",
                family: "custom",
            });
        }
    }
    linalg::normalize_row_signs(&mut values);
    Ok(EigenfunctionTable {
        values,
        family: spec.family,
        alpha: spec.alpha(),
    })
}
