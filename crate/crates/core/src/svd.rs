//! Singular value decomposition and the norms derived from it.
//!
//! Singular values come from the Hermitian eigendecomposition of `X* X`;
//! left vectors are recovered as normalized `X v_i` columns, with the
//! nullspace columns of `U` filled in by Gram-Schmidt. This reuses the one
//! eigensolver and is accurate at desk scale (mn up to a few hundred).
//!
//! The Gram route squares the spectrum, so eigenvalues below
//! `1e-12 * lambda_1` are pure noise; they are reported as exactly zero
//! singular values. That keeps numerical-rank counts honest for inputs
//! with exact rank deficiency.

use num_complex::Complex64;

use crate::eigen::{hermitian_eigen, hermitian_eigenvalues};
use crate::error::{Error, Result};
use crate::matrix::CMat;

/// Eigenvalues of a Gram matrix below this fraction of the largest one are
/// treated as exact zeros.
pub const GRAM_NOISE_REL: f64 = 1e-12;

/// `U diag(sigma) V*` factorization: `u` is m x m unitary, `v` is n x n
/// unitary, `sigma` holds the min(m, n) singular values, descending.
#[derive(Debug, Clone)]
pub struct SvdResult {
    pub u: CMat,
    pub sigma: Vec<f64>,
    pub v: CMat,
}

fn clamp_gram(values: &mut [f64]) {
    let lam1 = values.first().copied().unwrap_or(0.0).max(0.0);
    let floor = GRAM_NOISE_REL * lam1;
    for lam in values.iter_mut() {
        if *lam <= floor {
            *lam = 0.0;
        }
    }
}

/// Squared singular values of `x` (descending, length min(m, n)), computed
/// from the eigenvalues of `X* X` and clamped at the Gram noise floor.
pub fn singular_values_sq(x: &CMat) -> Vec<f64> {
    let gram = x.conj_transpose().matmul(x);
    let mut values =
        hermitian_eigenvalues(&gram).expect("Jacobi converges on Hermitian Gram matrices");
    clamp_gram(&mut values);
    values.truncate(x.rows().min(x.cols()));
    values
}

/// Full singular value decomposition of a rectangular complex matrix.
pub fn svd(x: &CMat) -> Result<SvdResult> {
    let (m, n) = x.shape();
    let k = m.min(n);
    let gram = x.conj_transpose().matmul(x);
    let eig = hermitian_eigen(&gram)?;
    let mut lambdas = eig.values.clone();
    clamp_gram(&mut lambdas);

    let sigma: Vec<f64> = lambdas.iter().take(k).map(|l| l.sqrt()).collect();

    // Data columns of U: X v_i / sigma_i for the nonzero part of the
    // spectrum; remaining columns by Gram-Schmidt completion.
    let mut u_cols: Vec<Vec<Complex64>> = Vec::with_capacity(m);
    for (i, &s) in sigma.iter().enumerate() {
        if s == 0.0 {
            break;
        }
        let xv = x.matmul(&eig.vectors.column(i));
        u_cols.push(xv.data().iter().map(|z| z / s).collect());
    }
    complete_orthonormal(&mut u_cols, m);
    let u = CMat::from_fn(m, m, |i, j| u_cols[j][i]);

    Ok(SvdResult {
        u,
        sigma,
        v: eig.vectors,
    })
}

/// Extends `cols` to an orthonormal basis of C^dim using standard basis
/// candidates and two rounds of Gram-Schmidt.
fn complete_orthonormal(cols: &mut Vec<Vec<Complex64>>, dim: usize) {
    let mut candidate = 0;
    while cols.len() < dim && candidate < dim {
        let mut w = vec![Complex64::ZERO; dim];
        w[candidate] = Complex64::ONE;
        candidate += 1;
        for _ in 0..2 {
            for col in cols.iter() {
                let coeff: Complex64 = col.iter().zip(&w).map(|(c, x)| c.conj() * x).sum();
                for (wi, ci) in w.iter_mut().zip(col) {
                    *wi -= coeff * ci;
                }
            }
        }
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            for wi in w.iter_mut() {
                *wi /= norm;
            }
            cols.push(w);
        }
    }
    assert_eq!(cols.len(), dim, "orthonormal completion fell short");
}

/// Spectral norm: the largest singular value.
pub fn spectral_norm(x: &CMat) -> f64 {
    singular_values_sq(x)
        .first()
        .copied()
        .unwrap_or(0.0)
        .sqrt()
}

/// Ky Fan (2,2)-norm: `sqrt(sigma_1^2 + sigma_2^2)`. When min(m, n) = 1
/// the second singular value is 0, so this equals both the spectral and
/// the Frobenius norm.
pub fn ky_fan_22(x: &CMat) -> f64 {
    let sq = singular_values_sq(x);
    let s1 = sq.first().copied().unwrap_or(0.0);
    let s2 = sq.get(1).copied().unwrap_or(0.0);
    (s1 + s2).sqrt()
}

/// Positive semidefiniteness test: true iff
/// `lambda_min(H) >= -tol * max(1, lambda_1(H))`. The input is
/// symmetrized the same way the eigensolver does.
pub fn is_psd(h: &CMat, tol: f64) -> Result<bool> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            op: "is_psd",
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let values = hermitian_eigenvalues(h)?;
    let top = values.first().copied().unwrap_or(0.0);
    let bottom = values.last().copied().unwrap_or(0.0);
    Ok(bottom >= -tol * top.max(1.0))
}
