//! Dense complex matrices in column-major storage.
//!
//! `CMat` is the carrier type for everything in this crate: operand
//! triples, Kronecker representations, certificates. Storage is
//! column-major so that [`CMat::vec`] (column stacking) is a pure
//! reinterpretation of the entry buffer.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix with explicit row/column counts.
///
/// Entries live in a single column-major buffer: entry `(i, j)` is at
/// `i + j * rows`. Constructors that accept raw data reject non-finite
/// components; all operations may assume finiteness afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMat {
    /// Builds a matrix from column-major entries, validating shape and
    /// finiteness.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyShape { rows, cols });
        }
        if data.len() != rows * cols {
            return Err(Error::EntryCount {
                rows,
                cols,
                expected: rows * cols,
                found: data.len(),
            });
        }
        if let Some(index) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    /// Builds from a closure over `(row, col)`. Entries are trusted to be
    /// finite; use [`CMat::new`] for untrusted data.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds from row slices of real entries (handy for literals).
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        if m == 0 || n == 0 {
            return Err(Error::EmptyShape { rows: m, cols: n });
        }
        for r in rows {
            if r.len() != n {
                return Err(Error::EntryCount {
                    rows: m,
                    cols: n,
                    expected: n,
                    found: r.len(),
                });
            }
        }
        let mut data = Vec::with_capacity(m * n);
        for j in 0..n {
            for r in rows.iter().take(m) {
                data.push(Complex64::new(r[j], 0.0));
            }
        }
        Self::new(m, n, data)
    }

    pub fn diag_real(d: &[f64]) -> Self {
        let n = d.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(d[i], 0.0)
            } else {
                Complex64::ZERO
            }
        })
    }

    /// Column vector from real entries.
    pub fn col_real(entries: &[f64]) -> Self {
        Self::from_fn(entries.len(), 1, |i, _| Complex64::new(entries[i], 0.0))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// True when one dimension is 1 (row or column vector).
    pub fn is_vector_shape(&self) -> bool {
        self.rows == 1 || self.cols == 1
    }

    /// Column-major entry buffer.
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// Exact comparison against the identity (used by applicability
    /// predicates that require C = I).
    pub fn is_identity(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for j in 0..self.cols {
            for i in 0..self.rows {
                let want = if i == j { Complex64::ONE } else { Complex64::ZERO };
                if self[(i, j)] != want {
                    return false;
                }
            }
        }
        true
    }

    /// Conjugate transpose: `(result)_{ji} = conj(self_{ij})`.
    pub fn conj_transpose(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Standard matrix product; panics on incompatible shapes.
    pub fn matmul(&self, rhs: &CMat) -> CMat {
        assert_eq!(
            self.cols, rhs.rows,
            "matmul: {}x{} times {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = CMat::zeros(self.rows, rhs.cols);
        for j in 0..rhs.cols {
            for k in 0..self.cols {
                let b_kj = rhs[(k, j)];
                if b_kj == Complex64::ZERO {
                    continue;
                }
                let a_col = &self.data[k * self.rows..(k + 1) * self.rows];
                let o_col = &mut out.data[j * self.rows..(j + 1) * self.rows];
                for i in 0..self.rows {
                    o_col[i] += a_col[i] * b_kj;
                }
            }
        }
        out
    }

    /// Kronecker product: block `(i, j)` of the result is `self_{ij} * rhs`.
    pub fn kron(&self, rhs: &CMat) -> CMat {
        let (p, q) = rhs.shape();
        CMat::from_fn(self.rows * p, self.cols * q, |i, j| {
            self[(i / p, j / q)] * rhs[(i % p, j % q)]
        })
    }

    /// Stacks columns into an `(rows*cols) x 1` vector. With column-major
    /// storage this is a reshape of the entry buffer.
    pub fn vec(&self) -> CMat {
        CMat {
            rows: self.rows * self.cols,
            cols: 1,
            data: self.data.clone(),
        }
    }

    /// Inverse of [`CMat::vec`]: reshapes an `(rows*cols) x 1` vector back
    /// into a `rows x cols` matrix, exactly.
    pub fn unvec(v: &CMat, rows: usize, cols: usize) -> Result<CMat> {
        if v.cols != 1 || v.rows != rows * cols {
            return Err(Error::VecLength {
                len: v.rows * v.cols,
                rows,
                cols,
            });
        }
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyShape { rows, cols });
        }
        Ok(CMat {
            rows,
            cols,
            data: v.data.clone(),
        })
    }

    /// Frobenius inner product `Tr(self * rhs^*) = sum_ij self_ij * conj(rhs_ij)`.
    pub fn frob_inner(&self, rhs: &CMat) -> Complex64 {
        assert_eq!(
            self.shape(),
            rhs.shape(),
            "frob_inner: shapes {:?} vs {:?}",
            self.shape(),
            rhs.shape()
        );
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(x, y)| x * y.conj())
            .sum()
    }

    pub fn frob_norm_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn frob_norm(&self) -> f64 {
        self.frob_norm_sq().sqrt()
    }

    pub fn scaled(&self, s: Complex64) -> CMat {
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.shape(), rhs.shape(), "add: shape mismatch");
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(x, y)| x + y)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &CMat) -> CMat {
        assert_eq!(self.shape(), rhs.shape(), "sub: shape mismatch");
        CMat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(x, y)| x - y)
                .collect(),
        }
    }

    /// Largest entrywise modulus of the difference (test helper).
    pub fn max_abs_diff(&self, rhs: &CMat) -> f64 {
        assert_eq!(self.shape(), rhs.shape(), "max_abs_diff: shape mismatch");
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// Column `j` as an `rows x 1` matrix.
    pub fn column(&self, j: usize) -> CMat {
        assert!(j < self.cols);
        CMat {
            rows: self.rows,
            cols: 1,
            data: self.data[j * self.rows..(j + 1) * self.rows].to_vec(),
        }
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i + j * self.rows]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i + j * self.rows]
    }
}
