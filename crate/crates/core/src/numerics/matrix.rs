//! Dense complex vectors and square matrices at small dimension.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// A complex column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector(Vec<C64>);

impl ComplexVector {
    pub fn new(entries: Vec<C64>) -> Self {
        ComplexVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        ComplexVector(vec![C64::new(0.0, 0.0); dim])
    }

    /// Unit vector `e_index`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[index] = C64::new(1.0, 0.0);
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, C64> {
        self.0.iter()
    }

    /// Inner product `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &ComplexVector) -> C64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: C64) -> ComplexVector {
        ComplexVector(self.0.iter().map(|z| z * s).collect())
    }

    pub fn max_abs_diff(&self, other: &ComplexVector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// The projector `|self><self|`.
    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(self, self)
    }
}

impl Index<usize> for ComplexVector {
    type Output = C64;

    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

/// Square complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting wrong lengths and non-finite values.
    pub fn from_row_major(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("matrix dimension must be positive".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::ShapeMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(ComplexMatrix { dim, data })
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::ShapeMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Self::from_row_major(dim, rows.concat())
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        ComplexMatrix { dim, data }
    }

    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| if r == c { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        let dim = diag.len();
        Self::from_fn(dim, |r, c| if r == c { diag[r] } else { C64::new(0.0, 0.0) })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_diagonal(&d)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[ComplexVector]) -> Self {
        let dim = cols.len();
        Self::from_fn(dim, |r, c| cols[c][r])
    }

    /// `|a><b|`.
    pub fn outer(a: &ComplexVector, b: &ComplexVector) -> Self {
        Self::from_fn(a.dim(), |r, c| a[r] * b[c].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn column(&self, c: usize) -> ComplexVector {
        ComplexVector((0..self.dim).map(|r| self[(r, c)]).collect())
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// `Tr[self^dagger * other]` without forming the product.
    pub fn hs_inner(&self, other: &ComplexMatrix) -> C64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn apply(&self, v: &ComplexVector) -> ComplexVector {
        let n = self.dim;
        ComplexVector(
            (0..n)
                .map(|r| (0..n).map(|c| self[(r, c)] * v[c]).sum())
                .collect(),
        )
    }

    /// Integer power; negative exponents require the matrix to be unitary.
    pub fn unitary_pow(&self, exp: i64) -> Self {
        let base = if exp < 0 { self.adjoint() } else { self.clone() };
        base.pow(exp.unsigned_abs())
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = Self::identity(self.dim);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise deviation from Hermiticity.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// `max |A^dagger A - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        (&self.adjoint() * self).max_abs_diff(&Self::identity(self.dim))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.dim + c]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * rhs.data[k * n + c];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix sum dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix difference dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Scalar `c` with `a = c * b`, taken from the largest entry of `b` and validated entrywise.
pub fn scalar_ratio(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> Result<C64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let (pivot, _) = b
        .entries()
        .iter()
        .enumerate()
        .fold((0, -1.0), |best, (i, z)| if z.norm() > best.1 { (i, z.norm()) } else { best });
    let denom = b.entries()[pivot];
    if denom.norm() == 0.0 {
        return Err(Error::NotScalarMultiple { residual: f64::INFINITY });
    }
    let c = a.entries()[pivot] / denom;
    let residual = a.max_abs_diff(&b.scale(c));
    if residual > tol {
        return Err(Error::NotScalarMultiple { residual });
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn rejects_non_finite_and_bad_shape() {
        assert!(matches!(
            ComplexMatrix::from_row_major(2, vec![c(1.0, 0.0); 3]),
            Err(Error::ShapeMismatch { .. })
        ));
        assert!(matches!(
            ComplexMatrix::from_row_major(1, vec![c(f64::NAN, 0.0)]),
            Err(Error::NonFinite)
        ));
    }

    #[test]
    fn adjoint_is_involution() {
        let m = ComplexMatrix::from_fn(3, |r, k| c(r as f64 + 0.5, k as f64 - 1.25));
        assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let m = ComplexMatrix::from_fn(3, |r, k| c((r * 3 + k) as f64 * 0.1, 0.2));
        let expected = &(&(&m * &m) * &m) * &(&m * &m);
        assert!(m.pow(5).max_abs_diff(&expected) < 1e-12);
        assert_eq!(m.pow(0), ComplexMatrix::identity(3));
    }

    #[test]
    fn scalar_ratio_detects_non_multiples() {
        let a = ComplexMatrix::identity(2);
        let b = a.scale(c(0.0, 2.0));
        let r = scalar_ratio(&b, &a, 1e-12).unwrap();
        assert!((r - c(0.0, 2.0)).norm() < 1e-15);
        let d = ComplexMatrix::from_real_diagonal(&[1.0, 2.0]);
        assert!(scalar_ratio(&d, &a, 1e-12).is_err());
    }
}
