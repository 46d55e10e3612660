//! Deterministic symmetric eigensolvers and small complex-matrix helpers.
//!
//! The eigensolvers follow the classic Householder reduction (tred2) and
//! implicit-shift QL iteration (tql2) for real symmetric matrices.  There is
//! no randomized pivoting anywhere, so repeated runs give bit-identical
//! results.  Eigenvalues come out ascending; eigenvectors are returned as
//! matrix rows without any sign convention (callers normalize).

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::ChainError;

const QL_MAX_SWEEPS: usize = 64;

/// Implicit-shift QL iteration on a tridiagonal matrix held in `d`
/// (diagonal) and `e` (off-diagonal in `e[0..n-1]`, `e[n-1]` workspace),
/// accumulating rotations into the `n x n` row-major matrix `z`.
///
/// On return `d` holds unordered eigenvalues and column `k` of `z` the
/// corresponding eigenvector (times whatever transform `z` started as).
fn ql_implicit(d: &mut [f64], e: &mut [f64], z: &mut [f64]) {
    let n = d.len();
    if n <= 1 {
        return;
    }
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            // Look for a negligible off-diagonal splitting the block.
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            assert!(
                sweeps <= QL_MAX_SWEEPS,
                "QL iteration failed to converge at row {l}"
            );
            // Wilkinson-style shift from the 2x2 at the top of the block.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow_restart = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow_restart = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in z.chunks_exact_mut(n) {
                    f = row[i + 1];
                    row[i + 1] = s * row[i] + c * f;
                    row[i] = c * row[i] - s * f;
                }
            }
            if underflow_restart {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

/// Householder reduction of the symmetric row-major matrix `a` to
/// tridiagonal form (`d`, `e` with `e[0]` unused), accumulating the
/// orthogonal transform back into `a`.
fn householder_reduce(a: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64]) {
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let mut scale = 0.0;
            for k in 0..=l {
                scale += a[i * n + k].abs();
            }
            if scale == 0.0 {
                e[i] = a[i * n + l];
            } else {
                for k in 0..=l {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                let f = a[i * n + l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i * n + l] = f - g;
                let mut f_acc = 0.0;
                for j in 0..=l {
                    a[j * n + i] = a[i * n + j] / h;
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[j * n + k] * a[i * n + k];
                    }
                    for k in (j + 1)..=l {
                        g += a[k * n + j] * a[i * n + k];
                    }
                    e[j] = g / h;
                    f_acc += e[j] * a[i * n + j];
                }
                let hh = f_acc / (h + h);
                for j in 0..=l {
                    let f = a[i * n + j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j * n + k] -= f * e[k] + g * a[i * n + k];
                    }
                }
            }
        } else {
            e[i] = a[i * n + l];
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for i in 0..n {
        if d[i] != 0.0 {
            for j in 0..i {
                let mut g = 0.0;
                for k in 0..i {
                    g += a[i * n + k] * a[k * n + j];
                }
                for k in 0..i {
                    a[k * n + j] -= g * a[k * n + i];
                }
            }
        }
        d[i] = a[i * n + i];
        a[i * n + i] = 1.0;
        for j in 0..i {
            a[j * n + i] = 0.0;
            a[i * n + j] = 0.0;
        }
    }
}

/// Sort eigenvalues ascending and permute the columns of `z` (row-major)
/// accordingly; returns eigenvectors as the ROWS of the output matrix.
fn sort_and_transpose(mut d: Vec<f64>, z: Vec<f64>, n: usize) -> (Vec<f64>, Array2<f64>) {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let mut vectors = Array2::zeros((n, n));
    for (rank, &col) in order.iter().enumerate() {
        for i in 0..n {
            vectors[[rank, i]] = z[i * n + col];
        }
    }
    let sorted: Vec<f64> = order.iter().map(|&k| d[k]).collect();
    d.copy_from_slice(&sorted);
    (d, vectors)
}

/// Eigenvalues (ascending) and eigenvector rows of a symmetric tridiagonal
/// matrix.
pub(crate) fn tridiagonal_eigen(diagonal: &[f64], off_diagonal: &[f64]) -> (Vec<f64>, Array2<f64>) {
    let n = diagonal.len();
    assert_eq!(off_diagonal.len() + 1, n, "off-diagonal length must be n-1");
    let mut d = diagonal.to_vec();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(off_diagonal);
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    ql_implicit(&mut d, &mut e, &mut z);
    sort_and_transpose(d, z, n)
}

/// Eigenvalues (ascending) and eigenvector rows of a dense real symmetric
/// matrix.
pub(crate) fn symmetric_eigen(matrix: &Array2<f64>) -> (Vec<f64>, Array2<f64>) {
    let n = matrix.nrows();
    assert_eq!(n, matrix.ncols(), "matrix must be square");
    if n == 1 {
        return (
            vec![matrix[[0, 0]]],
            Array2::from_shape_vec((1, 1), vec![1.0]).unwrap(),
        );
    }
    let mut a: Vec<f64> = matrix.iter().copied().collect();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    householder_reduce(&mut a, n, &mut d, &mut e);
    // Shift the sub-diagonal into the e[i] <-> (i, i+1) convention.
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    ql_implicit(&mut d, &mut e, &mut a);
    sort_and_transpose(d, a, n)
}

/// Flip each eigenvector row so its first significantly nonzero component
/// is positive.  "Significant" is relative to the row's largest magnitude,
/// which keeps the convention stable between analytic and numeric vectors.
pub(crate) fn normalize_row_signs(vectors: &mut Array2<f64>) {
    let (rows, cols) = (vectors.nrows(), vectors.ncols());
    for k in 0..rows {
        let mut max = 0.0_f64;
        for j in 0..cols {
            max = max.max(vectors[[k, j]].abs());
        }
        let threshold = 1e-8 * max;
        for j in 0..cols {
            let v = vectors[[k, j]];
            if v.abs() > threshold {
                if v < 0.0 {
                    for jj in 0..cols {
                        vectors[[k, jj]] = -vectors[[k, jj]];
                    }
                }
                break;
            }
        }
    }
}

/// Assemble `U(t) = sum_k exp(-i E_k t) |v_k><v_k|` from eigenvector rows.
pub(crate) fn spectral_propagator(
    energies: &[f64],
    vector_rows: &Array2<f64>,
    t: f64,
) -> Array2<Complex64> {
    let n = energies.len();
    let mut u = vec![Complex64::new(0.0, 0.0); n * n];
    for (k, &energy) in energies.iter().enumerate() {
        let phase = Complex64::from_polar(1.0, -energy * t);
        let row = vector_rows.row(k);
        let row = row.as_slice().expect("contiguous eigenvector row");
        for i in 0..n {
            let a = phase * row[i];
            let out = &mut u[i * n..(i + 1) * n];
            for (o, &vj) in out.iter_mut().zip(row.iter()) {
                *o += a * vj;
            }
        }
    }
    Array2::from_shape_vec((n, n), u).expect("propagator shape")
}

/// Restriction of the spectral propagator to the given basis indices:
/// `U[a, b] = sum_k exp(-i E_k t) v_k[idx_a] v_k[idx_b]`.
pub(crate) fn spectral_propagator_restricted(
    energies: &[f64],
    vector_rows: &Array2<f64>,
    t: f64,
    indices: &[usize],
) -> Array2<Complex64> {
    let m = indices.len();
    let mut u = vec![Complex64::new(0.0, 0.0); m * m];
    let mut picked = vec![0.0; m];
    for (k, &energy) in energies.iter().enumerate() {
        let phase = Complex64::from_polar(1.0, -energy * t);
        let row = vector_rows.row(k);
        for (slot, &idx) in picked.iter_mut().zip(indices.iter()) {
            *slot = row[idx];
        }
        for a in 0..m {
            let va = phase * picked[a];
            let out = &mut u[a * m..(a + 1) * m];
            for (o, &vb) in out.iter_mut().zip(picked.iter()) {
                *o += va * vb;
            }
        }
    }
    Array2::from_shape_vec((m, m), u).expect("restricted propagator shape")
}

/// `max |(U U^dagger - I)_{ij}|`.
pub(crate) fn unitarity_defect(u: &Array2<Complex64>) -> f64 {
    let n = u.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += u[[i, k]] * u[[j, k]].conj();
            }
            if i == j {
                acc -= 1.0;
            }
            worst = worst.max(acc.norm());
        }
    }
    worst
}

pub(crate) fn max_abs_diff(a: &Array2<Complex64>, b: &Array2<Complex64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .fold(0.0_f64, |m, (x, y)| m.max((x - y).norm()))
}

/// Determinant of a small complex matrix by LU with partial pivoting.
pub(crate) fn determinant_complex(mut m: Array2<Complex64>) -> Complex64 {
    let n = m.nrows();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let mut pivot = col;
        let mut best = m[[col, col]].norm();
        for row in col + 1..n {
            let mag = m[[row, col]].norm();
            if mag > best {
                best = mag;
                pivot = row;
            }
        }
        if best == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            for j in 0..n {
                let tmp = m[[col, j]];
                m[[col, j]] = m[[pivot, j]];
                m[[pivot, j]] = tmp;
            }
            det = -det;
        }
        let p = m[[col, col]];
        det *= p;
        for row in col + 1..n {
            let factor = m[[row, col]] / p;
            for j in col..n {
                let above = m[[col, j]];
                m[[row, j]] -= factor * above;
            }
        }
    }
    det
}

/// Determinant of a small real matrix by LU with partial pivoting.
pub(crate) fn determinant_real(mut m: Array2<f64>) -> f64 {
    let n = m.nrows();
    let mut det = 1.0;
    for col in 0..n {
        let mut pivot = col;
        let mut best = m[[col, col]].abs();
        for row in col + 1..n {
            let mag = m[[row, col]].abs();
            if mag > best {
                best = mag;
                pivot = row;
            }
        }
        if best == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for j in 0..n {
                m.swap([col, j], [pivot, j]);
            }
            det = -det;
        }
        let p = m[[col, col]];
        det *= p;
        for row in col + 1..n {
            let factor = m[[row, col]] / p;
            for j in col..n {
                let above = m[[col, j]];
                m[[row, j]] -= factor * above;
            }
        }
    }
    det
}

/// Validates `t_max`/`grid` for the mirror-time search.
pub(crate) fn check_search_window(t_max: f64, grid: usize) -> Result<(), ChainError> {
    if t_max.is_nan() || t_max <= 0.0 || grid < 100 {
        return Err(ChainError::InvalidSearchWindow { t_max, grid });
    }
    Ok(())
}
