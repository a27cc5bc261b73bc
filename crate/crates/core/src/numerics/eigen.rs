//! Cyclic Jacobi eigensolver for complex Hermitian matrices and the unitary
//! propagator `exp(-iAt)` built on top of it.

use num_complex::Complex64 as C64;

use super::matrix::{ComplexMatrix, ComplexVector};
use crate::error::{Error, Result};

/// Entrywise Hermiticity tolerance accepted by the solver.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Maximum number of full Jacobi sweeps.
pub const SWEEP_BUDGET: usize = 100;
/// Off-diagonal Frobenius norm, relative to the full norm, at which iteration stops.
pub const OFF_DIAGONAL_THRESHOLD: f64 = 1e-14;

const DEGENERACY_TOL: f64 = 1e-10;
const PHASE_PIVOT_TOL: f64 = 1e-12;

/// Ascending real eigenvalues with orthonormal eigenvectors stored as columns.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenSystem {
    /// `Q diag(g(lambda)) Q^dagger`.
    pub fn reassemble(&self, g: impl Fn(f64) -> C64) -> ComplexMatrix {
        let n = self.values.len();
        let q = &self.vectors;
        let weights: Vec<C64> = self.values.iter().map(|&v| g(v)).collect();
        ComplexMatrix::from_fn(n, |r, c| {
            (0..n).map(|k| q[(r, k)] * weights[k] * q[(c, k)].conj()).sum()
        })
    }

    pub fn reconstruction_residual(&self, a: &ComplexMatrix) -> f64 {
        self.reassemble(|v| C64::new(v, 0.0)).max_abs_diff(a)
    }

    pub fn orthonormality_defect(&self) -> f64 {
        self.vectors.unitarity_defect()
    }
}

fn check_hermitian(a: &ComplexMatrix) -> Result<()> {
    let deviation = a.hermiticity_defect();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                s += a[(r, c)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Diagonalizes a Hermitian matrix by cyclic complex Jacobi rotations.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<EigenSystem> {
    check_hermitian(a)?;
    let n = a.dim();
    let mut m = a.clone();
    // Symmetrize so rounding in the input cannot bias the rotations.
    for r in 0..n {
        m[(r, r)] = C64::new(m[(r, r)].re, 0.0);
        for c in r + 1..n {
            let avg = (m[(r, c)] + m[(c, r)].conj()) * 0.5;
            m[(r, c)] = avg;
            m[(c, r)] = avg.conj();
        }
    }
    let mut q = ComplexMatrix::identity(n);
    let scale = m.frobenius_norm();

    let mut converged = off_diagonal_norm(&m) <= OFF_DIAGONAL_THRESHOLD * scale;
    let mut sweeps = 0;
    while !converged {
        if sweeps == SWEEP_BUDGET {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for r in p + 1..n {
                rotate(&mut m, &mut q, p, r);
            }
        }
        converged = off_diagonal_norm(&m) <= OFF_DIAGONAL_THRESHOLD * scale;
    }

    let mut pairs: Vec<(f64, ComplexVector)> = (0..n)
        .map(|i| (m[(i, i)].re, phase_fixed(q.column(i))))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    order_degenerate_clusters(&mut pairs);

    let values = pairs.iter().map(|(v, _)| *v).collect();
    let cols: Vec<ComplexVector> = pairs.into_iter().map(|(_, v)| v).collect();
    Ok(EigenSystem {
        values,
        vectors: ComplexMatrix::from_columns(&cols),
    })
}

/// Zeroes `m[(p, r)]` with a unitary rotation in the (p, r) plane.
fn rotate(m: &mut ComplexMatrix, q: &mut ComplexMatrix, p: usize, r: usize) {
    let b = m[(p, r)];
    let babs = b.norm();
    if babs == 0.0 {
        return;
    }
    let phase = b / babs;
    let app = m[(p, p)].re;
    let arr = m[(r, r)].re;
    let theta = 0.5 * (2.0 * babs).atan2(app - arr);
    let (s, c) = theta.sin_cos();
    // J restricted to (p, r): [[c, -s], [s * conj(phase), c * conj(phase)]].
    let j_pp = C64::new(c, 0.0);
    let j_pr = C64::new(-s, 0.0);
    let j_rp = phase.conj() * s;
    let j_rr = phase.conj() * c;
    let n = m.dim();

    // m <- m J
    for k in 0..n {
        let mp = m[(k, p)];
        let mr = m[(k, r)];
        m[(k, p)] = mp * j_pp + mr * j_rp;
        m[(k, r)] = mp * j_pr + mr * j_rr;
    }
    // m <- J^dagger m
    for k in 0..n {
        let mp = m[(p, k)];
        let mr = m[(r, k)];
        m[(p, k)] = j_pp.conj() * mp + j_rp.conj() * mr;
        m[(r, k)] = j_pr.conj() * mp + j_rr.conj() * mr;
    }
    m[(p, r)] = C64::new(0.0, 0.0);
    m[(r, p)] = C64::new(0.0, 0.0);
    m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
    m[(r, r)] = C64::new(m[(r, r)].re, 0.0);
    // q <- q J
    for k in 0..n {
        let qp = q[(k, p)];
        let qr = q[(k, r)];
        q[(k, p)] = qp * j_pp + qr * j_rp;
        q[(k, r)] = qp * j_pr + qr * j_rr;
    }
}

fn first_significant(v: &ComplexVector) -> Option<usize> {
    v.iter().position(|z| z.norm() > PHASE_PIVOT_TOL)
}

/// Rotates the global phase so the first significant component is real and positive.
fn phase_fixed(v: ComplexVector) -> ComplexVector {
    match first_significant(&v) {
        Some(i) => {
            let z = v[i];
            v.scale(z.conj() / z.norm())
        }
        None => v,
    }
}

fn order_degenerate_clusters(pairs: &mut [(f64, ComplexVector)]) {
    let mut start = 0;
    while start < pairs.len() {
        let mut end = start + 1;
        while end < pairs.len() && (pairs[end].0 - pairs[end - 1].0).abs() <= DEGENERACY_TOL {
            end += 1;
        }
        if end - start > 1 {
            let cluster = &mut pairs[start..end];
            gram_schmidt(cluster);
            cluster.sort_by(|x, y| {
                let kx = first_significant(&x.1).map_or(0.0, |i| x.1[i].re);
                let ky = first_significant(&y.1).map_or(0.0, |i| y.1[i].re);
                kx.total_cmp(&ky)
            });
        }
        start = end;
    }
}

fn gram_schmidt(cluster: &mut [(f64, ComplexVector)]) {
    for i in 0..cluster.len() {
        let mut v: Vec<C64> = cluster[i].1.as_slice().to_vec();
        for prev in cluster[..i].iter() {
            let proj = prev.1.inner(&ComplexVector::new(v.clone()));
            for (x, p) in v.iter_mut().zip(prev.1.iter()) {
                *x -= proj * p;
            }
        }
        let w = ComplexVector::new(v);
        let norm = w.norm();
        cluster[i].1 = phase_fixed(w.scale(C64::new(1.0 / norm, 0.0)));
    }
}

/// `exp(-i A t)` for Hermitian `A`, with hbar = 1.
pub fn exp_hermitian(a: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(a)?;
    Ok(eig.reassemble(|v| C64::from_polar(1.0, -v * t)))
}
