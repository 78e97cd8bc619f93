//! The generalized commutator `ABC - CBA`, its Kronecker representation
//! `K = C^T (x) A - A^T (x) C`, and two structural certificates:
//! the pairing of positive eigenvalues of `K* K` and the positive
//! semidefinite domination `2(conj(C)C^T (x) A*A + conj(A)A^T (x) C*C) >= K* K`,
//! witnessed by an explicit Gram factorization.

use num_complex::Complex64;

use crate::eigen::{cluster_descending, hermitian_eigen, hermitian_eigenvalues, Cluster};
use crate::error::{Error, Result};
use crate::matrix::CMat;
use crate::svd::singular_values_sq;

/// Cluster radius for deciding that two floating-point eigenvalues are
/// "the same" eigenvalue: `|l_i - l_j| <= 1e-8 * max(1, l_1)`.
pub const CLUSTER_REL: f64 = 1e-8;

/// An operand triple: `a` and `c` are m x n, `b` is n x m.
#[derive(Debug, Clone, PartialEq)]
pub struct TripleInstance {
    a: CMat,
    b: CMat,
    c: CMat,
    provenance: String,
}

impl TripleInstance {
    pub fn new(a: CMat, b: CMat, c: CMat, provenance: impl Into<String>) -> Result<Self> {
        let (m, n) = a.shape();
        if c.shape() != (m, n) || b.shape() != (n, m) {
            return Err(Error::TripleShape {
                a_rows: a.rows(),
                a_cols: a.cols(),
                b_rows: b.rows(),
                b_cols: b.cols(),
                c_rows: c.rows(),
                c_cols: c.cols(),
            });
        }
        Ok(Self {
            a,
            b,
            c,
            provenance: provenance.into(),
        })
    }

    pub fn a(&self) -> &CMat {
        &self.a
    }

    pub fn b(&self) -> &CMat {
        &self.b
    }

    pub fn c(&self) -> &CMat {
        &self.c
    }

    /// `(m, n)` with `a`, `c` of shape m x n.
    pub fn shape(&self) -> (usize, usize) {
        self.a.shape()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// Same `a` and `b` with `c` replaced by the identity (the encoding of
    /// two-matrix commutator bounds on square shapes).
    pub fn with_identity_c(&self) -> Option<Self> {
        let (m, n) = self.shape();
        (m == n).then(|| Self {
            a: self.a.clone(),
            b: self.b.clone(),
            c: CMat::identity(n),
            provenance: format!("{} (c:=I)", self.provenance),
        })
    }

    /// Replaces one operand, keeping the provenance tag.
    pub fn replace(&self, which: Operand, matrix: CMat) -> Result<Self> {
        let (mut a, mut b, mut c) = (self.a.clone(), self.b.clone(), self.c.clone());
        match which {
            Operand::A => a = matrix,
            Operand::B => b = matrix,
            Operand::C => c = matrix,
        }
        Self::new(a, b, c, self.provenance.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operand {
    A,
    B,
    C,
}

/// `ABC - CBA`, an m x n matrix.
pub fn gen_commutator(t: &TripleInstance) -> CMat {
    if t.shape() == (1, 1) {
        // Scalars commute: the commutator is identically zero, which the
        // rounded product difference would miss by ~1 ulp.
        return CMat::zeros(1, 1);
    }
    let abc = t.a.matmul(&t.b).matmul(&t.c);
    let cba = t.c.matmul(&t.b).matmul(&t.a);
    abc.sub(&cba)
}

/// The mn x mn matrix `K = C^T (x) A - A^T (x) C` representing
/// `B -> ABC - CBA` through vectorization: `K vec(B) = vec(ABC - CBA)`.
pub fn build_k(a: &CMat, c: &CMat) -> CMat {
    assert_eq!(
        a.shape(),
        c.shape(),
        "build_k: shapes {:?} vs {:?}",
        a.shape(),
        c.shape()
    );
    let ct_a = transpose(c).kron(a);
    let at_c = transpose(a).kron(c);
    ct_a.sub(&at_c)
}

fn transpose(x: &CMat) -> CMat {
    CMat::from_fn(x.cols(), x.rows(), |i, j| x[(j, i)])
}

/// The partner eigenvector `-K* vec(Y*)` with `Y = unvec(y, n, m)`.
///
/// For any `y` this is orthogonal to `y`; when `y` is an eigenvector of
/// `K* K` with positive eigenvalue `phi`, the output is a nonzero
/// eigenvector for the same `phi` with norm `sqrt(phi) * ||y||`.
pub fn paired_eigvec(a: &CMat, c: &CMat, y: &CMat) -> CMat {
    let (m, n) = a.shape();
    assert_eq!(a.shape(), c.shape(), "paired_eigvec: a and c must agree");
    assert_eq!(
        (y.rows(), y.cols()),
        (m * n, 1),
        "paired_eigvec: y must be an mn x 1 column"
    );
    let y_mat = CMat::unvec(y, n, m).expect("length checked above");
    let k = build_k(a, c);
    k.conj_transpose()
        .matmul(&y_mat.conj_transpose().vec())
        .scaled(Complex64::new(-1.0, 0.0))
}

/// PSD domination certificate for `K* K`.
///
/// `m_matrix` is the difference
/// `2(conj(C)C^T (x) A*A + conj(A)A^T (x) C*C) - K* K` and `s_matrix` is
/// `C^T (x) A + A^T (x) C`; the certificate checks both that `m_matrix`
/// equals the Gram product `s_matrix* s_matrix` (a construction identity,
/// independent of the eigensolver) and that its spectrum is nonnegative.
#[derive(Debug, Clone)]
pub struct PsdCertificate {
    pub m_matrix: CMat,
    pub s_matrix: CMat,
    pub min_eig: f64,
    pub max_eig: f64,
    pub gram_residual: f64,
    /// Second-largest eigenvalue of the (un-doubled) dominating Kronecker
    /// sum, present when both dimensions are at least 2.
    pub lambda2_dominator: Option<f64>,
    /// Cap `sigma_1^2(C) (sigma_1^2(A) + sigma_2^2(A))` for
    /// `lambda2_dominator`, present alongside it.
    pub lambda2_cap: Option<f64>,
}

impl PsdCertificate {
    /// True when the eigenvalue floor, the Gram identity, and (where
    /// defined) the lambda_2 bound all hold at their standard tolerances.
    pub fn is_valid(&self) -> bool {
        let floor_ok = self.min_eig >= -1e-10 * self.max_eig.max(1.0);
        let gram_ok = self.gram_residual <= 1e-10 * (1.0 + self.m_matrix.frob_norm());
        let lambda2_ok = match (self.lambda2_dominator, self.lambda2_cap) {
            (Some(l2), Some(cap)) => l2 <= cap + 1e-8 * cap.abs().max(1e-300),
            _ => true,
        };
        floor_ok && gram_ok && lambda2_ok
    }
}

/// Builds the PSD certificate for the pair `(a, c)`.
pub fn psd_certificate(a: &CMat, c: &CMat) -> Result<PsdCertificate> {
    assert_eq!(
        a.shape(),
        c.shape(),
        "psd_certificate: shapes {:?} vs {:?}",
        a.shape(),
        c.shape()
    );
    let (m, n) = a.shape();
    let a_conj = a.conj_transpose(); // A* (n x m)
    let c_conj = c.conj_transpose(); // C* (n x m)

    // conj(C) C^T = (C C*)-conjugate routes; build directly from entries.
    let c_bar = conj(c);
    let a_bar = conj(a);
    let dominator_half = c_bar
        .matmul(&transpose(c))
        .kron(&a_conj.matmul(a))
        .add(&a_bar.matmul(&transpose(a)).kron(&c_conj.matmul(c)));

    let k = build_k(a, c);
    let kk = k.conj_transpose().matmul(&k);
    let m_matrix = dominator_half.scaled(Complex64::new(2.0, 0.0)).sub(&kk);

    let s_matrix = transpose(c).kron(a).add(&transpose(a).kron(c));
    let gram = s_matrix.conj_transpose().matmul(&s_matrix);
    let gram_residual = m_matrix.sub(&gram).frob_norm();

    let spectrum = hermitian_eigenvalues(&m_matrix)?;
    let max_eig = spectrum.first().copied().unwrap_or(0.0);
    let min_eig = spectrum.last().copied().unwrap_or(0.0);

    let (lambda2_dominator, lambda2_cap) = if m >= 2 && n >= 2 {
        let dom_spectrum = hermitian_eigenvalues(&dominator_half)?;
        let a_sq = singular_values_sq(a);
        let c_sq = singular_values_sq(c);
        let cap = c_sq[0] * (a_sq[0] + a_sq[1]);
        (Some(dom_spectrum[1]), Some(cap))
    } else {
        (None, None)
    };

    Ok(PsdCertificate {
        m_matrix,
        s_matrix,
        min_eig,
        max_eig,
        gram_residual,
        lambda2_dominator,
        lambda2_cap,
    })
}

fn conj(x: &CMat) -> CMat {
    CMat::from_fn(x.rows(), x.cols(), |i, j| x[(i, j)].conj())
}

/// `||A (x) C - C (x) A||_F^2`, computed directly from the two Kronecker
/// products. Equals `2(||A||_F^2 ||C||_F^2 - |(A, C)|^2)` and `||K||_F^2`;
/// those routes are kept independent and cross-checked in tests.
pub fn kron_diff_sq(a: &CMat, c: &CMat) -> f64 {
    assert_eq!(
        a.shape(),
        c.shape(),
        "kron_diff_sq: shapes {:?} vs {:?}",
        a.shape(),
        c.shape()
    );
    kron_commutator_sq(a, c)
}

/// `||X (x) Y - Y (x) X||_F^2` for any pair with conforming Kronecker
/// shapes (X (x) Y and Y (x) X always agree in size).
pub(crate) fn kron_commutator_sq(x: &CMat, y: &CMat) -> f64 {
    x.kron(y).sub(&y.kron(x)).frob_norm_sq()
}

/// Outcome of the eigenvalue-pairing check on `K* K`: every cluster above
/// the threshold `1e-8 * lambda_1` must contain at least two eigenvalues.
#[derive(Debug, Clone)]
pub struct PairingReport {
    pub clusters: Vec<Cluster>,
    /// Clusters above the positivity threshold.
    pub checked: usize,
    /// True when the spectrum carries no positive mass at all (e.g. a = c),
    /// in which case the pairing claim holds vacuously.
    pub vacuous: bool,
    pub ok: bool,
}

/// Runs the multiplicity certificate for `K* K` of the pair `(a, c)`.
pub fn pairing_report(a: &CMat, c: &CMat) -> Result<PairingReport> {
    let k = build_k(a, c);
    let kk = k.conj_transpose().matmul(&k);
    let values = hermitian_eigenvalues(&kk)?;
    let lambda1 = values.first().copied().unwrap_or(0.0);
    let radius = CLUSTER_REL * lambda1.max(1.0);
    let threshold = CLUSTER_REL * lambda1;
    let clusters = cluster_descending(&values, radius);
    let positive: Vec<&Cluster> = clusters
        .iter()
        .filter(|cl| cl.value > threshold && cl.value > 0.0)
        .collect();
    let vacuous = positive.is_empty();
    let ok = positive.iter().all(|cl| cl.size >= 2);
    Ok(PairingReport {
        checked: positive.len(),
        clusters,
        vacuous,
        ok,
    })
}

/// The paired-eigenvector construction applied to every eigenvector of
/// `K* K` above the positivity threshold; returns the worst relative
/// residual `||K*K w - phi w|| / (phi ||w||)` over those vectors. Used as
/// an oracle against [`pairing_report`].
pub fn paired_eigvec_residual(a: &CMat, c: &CMat) -> Result<f64> {
    let k = build_k(a, c);
    let kk = k.conj_transpose().matmul(&k);
    let eig = hermitian_eigen(&kk)?;
    let lambda1 = eig.values.first().copied().unwrap_or(0.0);
    let threshold = CLUSTER_REL * lambda1;
    let mut worst: f64 = 0.0;
    for (i, &phi) in eig.values.iter().enumerate() {
        if phi <= threshold || phi <= 0.0 {
            continue;
        }
        let y = eig.vectors.column(i);
        let w = paired_eigvec(a, c, &y);
        let residual = kk.matmul(&w).sub(&w.scaled(phi.into())).frob_norm();
        worst = worst.max(residual / (phi * w.frob_norm()));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn remark_triple() -> TripleInstance {
        let a = CMat::from_real_rows(&[&[-1.0, -1.0], &[0.0, 0.0]]).unwrap();
        let c = CMat::diag_real(&[2.0, 1.0]);
        TripleInstance::new(a.clone(), a, c, "test").unwrap()
    }

    fn rank_triple() -> TripleInstance {
        let a = CMat::from_real_rows(&[&[0.0, -1.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 0.0]])
            .unwrap();
        let b = CMat::diag_real(&[1.0, 0.5, 0.5]);
        let c = CMat::from_real_rows(&[&[-1.0, 1.0, 0.0], &[1.0, 1.0, 0.0], &[-1.0, 0.0, 0.0]])
            .unwrap();
        TripleInstance::new(a, b, c, "test").unwrap()
    }

    #[test]
    fn remark_commutator_value() {
        let t = remark_triple();
        let g = gen_commutator(&t);
        let want = CMat::from_real_rows(&[&[0.0, -1.0], &[0.0, 0.0]]).unwrap();
        assert_eq!(g, want);
        assert!((g.frob_norm_sq() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rank_commutator_value() {
        let g = gen_commutator(&rank_triple());
        assert!((g.frob_norm_sq() - 4.5).abs() < 1e-14);
    }

    #[test]
    fn zero_b_gives_zero_commutator() {
        let t = rank_triple().replace(Operand::B, CMat::zeros(3, 3)).unwrap();
        assert!(gen_commutator(&t).is_zero());
    }

    #[test]
    fn triple_shape_validation() {
        let a = CMat::zeros(2, 3);
        let b = CMat::zeros(2, 3);
        let c = CMat::zeros(2, 3);
        assert!(matches!(
            TripleInstance::new(a, b, c, "bad"),
            Err(Error::TripleShape { .. })
        ));
    }

    #[test]
    fn build_k_antisymmetric_and_scalar_cases() {
        let a = CMat::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        assert!(build_k(&a, &a).is_zero());
        let s = CMat::from_real_rows(&[&[7.0]]).unwrap();
        let t = CMat::from_real_rows(&[&[-3.0]]).unwrap();
        assert!(build_k(&s, &t).is_zero());
    }

    #[test]
    fn kron_diff_unit_matrices() {
        let e11 = CMat::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]).unwrap();
        let e22 = CMat::from_real_rows(&[&[0.0, 0.0], &[0.0, 1.0]]).unwrap();
        assert!((kron_diff_sq(&e11, &e22) - 2.0).abs() < 1e-15);
        assert_eq!(kron_diff_sq(&e11, &e11), 0.0);
    }

    #[test]
    fn kron_diff_rank_pair() {
        let t = rank_triple();
        assert!((kron_diff_sq(t.a(), t.c()) - 8.0).abs() < 1e-13);
    }

    #[test]
    fn paired_vector_zero_when_a_equals_c() {
        let a = CMat::from_real_rows(&[&[1.0, 0.5], &[0.0, 2.0]]).unwrap();
        let y = CMat::col_real(&[1.0, 2.0, 3.0, 4.0]);
        assert!(paired_eigvec(&a, &a, &y).is_zero());
    }

    #[test]
    fn psd_certificate_identity_pair() {
        let i2 = CMat::identity(2);
        let cert = psd_certificate(&i2, &i2).unwrap();
        assert!(cert.gram_residual < 1e-12);
        assert!(cert.min_eig >= -1e-12);
        assert!(cert.is_valid());
    }
}
