//! Hermitian eigendecomposition via cyclic complex Jacobi rotations.
//!
//! The solver symmetrizes its input, sweeps all off-diagonal pivots with
//! unitary plane rotations, and stops once the off-diagonal Frobenius mass
//! drops below `1e-14 * ||H||_F` (budget: 64 sweeps). Eigenvalues come out
//! sorted descending; ties keep the order the sweep produced.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMat;

/// Relative off-diagonal mass at which a sweep is considered converged.
pub const CONVERGENCE_REL: f64 = 1e-14;

/// Maximum number of cyclic sweeps before giving up.
pub const MAX_SWEEPS: usize = 64;

/// Eigenvalues (descending) and a unitary matrix of eigenvectors; column
/// `i` of `vectors` pairs with `values[i]`.
#[derive(Debug, Clone)]
pub struct EigenResult {
    pub values: Vec<f64>,
    pub vectors: CMat,
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// The input is replaced by `(H + H*)/2` before diagonalizing, so slightly
/// non-Hermitian inputs are tolerated.
pub fn hermitian_eigen(h: &CMat) -> Result<EigenResult> {
    let (values, vectors) = jacobi(h, true)?;
    Ok(EigenResult {
        values,
        vectors: vectors.expect("jacobi accumulates vectors when asked"),
    })
}

/// Eigenvalues only (descending). Runs the identical rotation sequence as
/// [`hermitian_eigen`], so the values agree bit for bit.
pub fn hermitian_eigenvalues(h: &CMat) -> Result<Vec<f64>> {
    let (values, _) = jacobi(h, false)?;
    Ok(values)
}

fn jacobi(h: &CMat, want_vectors: bool) -> Result<(Vec<f64>, Option<CMat>)> {
    let n = h.rows();
    if !h.is_square() {
        return Err(Error::NotSquare {
            op: "hermitian_eigen",
            rows: h.rows(),
            cols: h.cols(),
        });
    }

    // Work on the Hermitian part.
    let mut a = CMat::from_fn(n, n, |i, j| (h[(i, j)] + h[(j, i)].conj()) * 0.5);
    let mut v = want_vectors.then(|| CMat::identity(n));

    if n == 1 {
        return Ok((vec![a[(0, 0)].re], v));
    }

    let norm_h = a.frob_norm();
    if norm_h == 0.0 {
        return Ok((vec![0.0; n], v));
    }
    let off_target = CONVERGENCE_REL * norm_h;
    // Rotations on pivots below this leave the total off-diagonal mass
    // under the target even if every pivot sits exactly at the threshold.
    let pivot_skip = off_target / (n as f64);

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diag_norm(&a) <= off_target {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let babs = apq.norm();
                if babs <= pivot_skip {
                    continue;
                }
                let phase = apq / babs;
                let alpha = a[(p, p)].re;
                let gamma = a[(q, q)].re;
                let tau = (gamma - alpha) / (2.0 * babs);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let s_phase = phase * s;

                // Columns p and q of A <- V* A V, then rows by symmetry.
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    let new_kp = akp * c - akq * s_phase.conj();
                    let new_kq = akp * s_phase + akq * c;
                    a[(k, p)] = new_kp;
                    a[(k, q)] = new_kq;
                    a[(p, k)] = new_kp.conj();
                    a[(q, k)] = new_kq.conj();
                }
                a[(p, p)] = Complex64::new(alpha - t * babs, 0.0);
                a[(q, q)] = Complex64::new(gamma + t * babs, 0.0);
                a[(p, q)] = Complex64::ZERO;
                a[(q, p)] = Complex64::ZERO;

                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * c - vkq * s_phase.conj();
                        v[(k, q)] = vkp * s_phase + vkq * c;
                    }
                }
            }
        }
    }
    if !converged && off_diag_norm(&a) > off_target {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    // Sort descending; stable so ties keep sweep order.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(j, j)]
            .re
            .partial_cmp(&a[(i, i)].re)
            .expect("eigenvalues are finite")
    });
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = v.map(|v| CMat::from_fn(n, n, |i, j| v[(i, order[j])]));
    Ok((values, vectors))
}

fn off_diag_norm(a: &CMat) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                sum += a[(p, q)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One cluster of nearly equal eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cluster {
    /// Representative value (mean of the members).
    pub value: f64,
    pub size: usize,
}

/// Groups a descending eigenvalue list into clusters: consecutive values
/// within `radius` of each other belong to the same cluster.
pub fn cluster_descending(values: &[f64], radius: f64) -> Vec<Cluster> {
    let mut clusters = Vec::new();
    let mut start = 0;
    while start < values.len() {
        let mut end = start + 1;
        while end < values.len() && values[end - 1] - values[end] <= radius {
            end += 1;
        }
        let size = end - start;
        let value = values[start..end].iter().sum::<f64>() / size as f64;
        clusters.push(Cluster { value, size });
        start = end;
    }
    clusters
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_matrix_sorted() {
        let h = CMat::diag_real(&[3.0, 1.0, 2.0]);
        let e = hermitian_eigen(&h).unwrap();
        assert_eq!(e.values, vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn pauli_x_spectrum() {
        let h = CMat::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let e = hermitian_eigen(&h).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn complex_hermitian_reconstruction() {
        let c = Complex64::new;
        // Hermitian 3x3 with complex off-diagonals.
        let h = CMat::new(
            3,
            3,
            vec![
                c(2.0, 0.0),
                c(1.0, -1.0),
                c(0.5, 0.25),
                c(1.0, 1.0),
                c(-1.0, 0.0),
                c(0.0, -2.0),
                c(0.5, -0.25),
                c(0.0, 2.0),
                c(0.75, 0.0),
            ],
        )
        .unwrap();
        let e = hermitian_eigen(&h).unwrap();
        // H V = V diag(values)
        let hv = h.matmul(&e.vectors);
        let vl = CMat::from_fn(3, 3, |i, j| e.vectors[(i, j)] * e.values[j]);
        assert!(hv.max_abs_diff(&vl) < 1e-12);
        // V* V = I
        let gram = e.vectors.conj_transpose().matmul(&e.vectors);
        assert!(gram.max_abs_diff(&CMat::identity(3)) < 1e-13);
        // Trace is preserved.
        let trace: f64 = e.values.iter().sum();
        assert!((trace - (2.0 - 1.0 + 0.75)).abs() < 1e-12);
    }

    #[test]
    fn zero_matrix_is_fine() {
        let e = hermitian_eigen(&CMat::zeros(4, 4)).unwrap();
        assert_eq!(e.values, vec![0.0; 4]);
        assert_eq!(e.vectors, CMat::identity(4));
    }

    #[test]
    fn rejects_non_square() {
        assert!(matches!(
            hermitian_eigen(&CMat::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn values_only_matches_full_solve() {
        let c = Complex64::new;
        let h = CMat::new(
            2,
            2,
            vec![c(1.0, 0.0), c(0.0, -0.5), c(0.0, 0.5), c(-2.0, 0.0)],
        )
        .unwrap();
        let full = hermitian_eigen(&h).unwrap();
        let vals = hermitian_eigenvalues(&h).unwrap();
        assert_eq!(full.values, vals);
    }

    #[test]
    fn clustering_groups_adjacent_values() {
        let vals = [5.0, 5.0 - 1e-12, 3.0, 1.0, 1.0 - 5e-9, 0.0];
        let clusters = cluster_descending(&vals, 1e-8);
        let sizes: Vec<usize> = clusters.iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![2, 1, 2, 1]);
    }
}
