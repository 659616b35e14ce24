//! Cyclic Jacobi eigensolver for dense Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq`, reducing the
//! (p, q) block to a real symmetric 2x2 problem, then applies the classical
//! Jacobi rotation that annihilates it.

use super::matrix::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 64;

#[derive(Debug, Clone)]
pub struct Eigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `values`.
    pub vectors: ComplexMatrix,
}

impl Eigen {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.column(k)
    }
}

/// Eigenpairs of a Hermitian matrix.
///
/// `hermitian_tol` bounds the accepted max |M - M^dagger|; `off_diagonal_tol` is
/// the convergence threshold relative to the Frobenius norm of `m`.
pub fn hermitian_eigendecomposition_with(
    m: &ComplexMatrix,
    hermitian_tol: f64,
    off_diagonal_tol: f64,
) -> Result<Eigen> {
    let defect = m.hermiticity_defect();
    if defect > hermitian_tol {
        return Err(Error::NotHermitian {
            max_asymmetry: defect,
        });
    }
    let n = m.rows();
    // Work on the exactly-hermitian part.
    let mut a = vec![ZERO; n * n];
    for r in 0..n {
        for c in 0..n {
            a[r * n + c] = if r == c {
                C64::new(m[(r, r)].re, 0.0)
            } else {
                (m[(r, c)] + m[(c, r)].conj()) * 0.5
            };
        }
    }
    let mut z = ComplexMatrix::identity(n).data().to_vec();
    let scale = m.frobenius_norm();
    let threshold = off_diagonal_tol * scale;

    let off_norm = |a: &[C64]| -> f64 {
        let mut s = 0.0;
        for r in 0..n {
            for c in r + 1..n {
                s += a[r * n + c].norm_sqr();
            }
        }
        (2.0 * s).sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= threshold || scale == 0.0 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off_norm: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut z, n, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|k| a[k * n + k].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let values = order.iter().map(|&k| diag[k]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, new)] = z[r * n + old];
        }
    }
    Ok(Eigen { values, vectors })
}

fn rotate(a: &mut [C64], z: &mut [C64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    // Skip pivots that are already negligible next to both diagonal entries.
    if r < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[p * n + q] = ZERO;
        a[q * n + p] = ZERO;
        return;
    }
    let phase = apq / r;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // V = diag(1, conj(phase)) * [[c, s], [-s, c]]
    let v_pp = C64::new(c, 0.0);
    let v_pq = C64::new(s, 0.0);
    let v_qp = phase.conj() * (-s);
    let v_qq = phase.conj() * c;

    // A <- A V
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * v_pp + akq * v_qp;
        a[k * n + q] = akp * v_pq + akq * v_qq;
    }
    // A <- V^dagger A
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = v_pp.conj() * apk + v_qp.conj() * aqk;
        a[q * n + k] = v_pq.conj() * apk + v_qq.conj() * aqk;
    }
    a[p * n + q] = ZERO;
    a[q * n + p] = ZERO;
    a[p * n + p].im = 0.0;
    a[q * n + q].im = 0.0;
    // Z <- Z V
    for k in 0..n {
        let zkp = z[k * n + p];
        let zkq = z[k * n + q];
        z[k * n + p] = zkp * v_pp + zkq * v_qp;
        z[k * n + q] = zkp * v_pq + zkq * v_qq;
    }
}

#[derive(Debug, Clone)]
pub struct JointEigen {
    pub primary: Vec<f64>,
    pub secondary: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// Diagonalize `primary`, then resolve each degenerate block by diagonalizing
/// `secondary` restricted to it. Sorted ascending by primary, then secondary.
///
/// Eigenvalues of `primary` within `degeneracy * max(||primary||, 1)` of their
/// neighbour share a block.
pub fn joint_eigendecomposition(
    primary: &ComplexMatrix,
    secondary: &ComplexMatrix,
    hermitian_tol: f64,
    off_diagonal_tol: f64,
    degeneracy: f64,
) -> Result<JointEigen> {
    if primary.shape() != secondary.shape() {
        return Err(Error::DimensionMismatch {
            op: "joint_eigendecomposition",
            left: primary.shape(),
            right: secondary.shape(),
        });
    }
    let base = hermitian_eigendecomposition_with(primary, hermitian_tol, off_diagonal_tol)?;
    let n = base.values.len();
    let gap = degeneracy * primary.frobenius_norm().max(1.0);

    let mut columns: Vec<Vec<C64>> = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && base.values[end] - base.values[end - 1] <= gap {
            end += 1;
        }
        let block: Vec<Vec<C64>> = (start..end).map(|k| base.vector(k)).collect();
        if block.len() == 1 {
            columns.extend(block);
        } else {
            let v = ComplexMatrix::from_columns(&block);
            let projected = &(&v.adjoint() * secondary) * &v;
            let sub = hermitian_eigendecomposition_with(&projected, hermitian_tol, off_diagonal_tol)?;
            let rotated = &v * &sub.vectors;
            columns.extend((0..block.len()).map(|k| rotated.column(k)));
        }
        start = end;
    }

    let expect = |m: &ComplexMatrix, v: &[C64]| -> f64 {
        let mv = m.try_matvec(v).expect("square");
        super::matrix::inner(v, &mv).re
    };
    let mut entries: Vec<(f64, f64, Vec<C64>)> = columns
        .into_iter()
        .map(|v| (expect(primary, &v), expect(secondary, &v), v))
        .collect();
    entries.sort_by(|x, y| {
        if (x.0 - y.0).abs() <= gap {
            x.1.total_cmp(&y.1)
        } else {
            x.0.total_cmp(&y.0)
        }
    });
    let vectors = ComplexMatrix::from_columns(&entries.iter().map(|e| e.2.clone()).collect::<Vec<_>>());
    Ok(JointEigen {
        primary: entries.iter().map(|e| e.0).collect(),
        secondary: entries.iter().map(|e| e.1).collect(),
        vectors,
    })
}

/// max |U^dagger U - I|.
pub fn unitarity_defect(u: &ComplexMatrix) -> f64 {
    let g = &u.adjoint() * u;
    g.max_abs_diff(&ComplexMatrix::identity(u.cols()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{pauli, ONE};

    #[test]
    fn identity_spectrum() {
        let e = hermitian_eigendecomposition_with(&ComplexMatrix::identity(4), 1e-10, 1e-13).unwrap();
        assert_eq!(e.values, vec![1.0; 4]);
    }

    #[test]
    fn pauli_x_spectrum() {
        let [sx, sy, _] = pauli();
        for s in [sx, sy] {
            let e = hermitian_eigendecomposition_with(&s, 1e-10, 1e-13).unwrap();
            assert!((e.values[0] + 1.0).abs() < 1e-15);
            assert!((e.values[1] - 1.0).abs() < 1e-15);
            assert!(unitarity_defect(&e.vectors) < 1e-15);
        }
    }

    #[test]
    fn rejects_non_hermitian_with_report() {
        let m = ComplexMatrix::from_rows(&[[ONE, ONE], [ZERO, ONE]]);
        match hermitian_eigendecomposition_with(&m, 1e-10, 1e-13) {
            Err(Error::NotHermitian { max_asymmetry }) => assert_eq!(max_asymmetry, 1.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_and_empty_matrices() {
        let e = hermitian_eigendecomposition_with(&ComplexMatrix::zeros(3, 3), 1e-10, 1e-13).unwrap();
        assert_eq!(e.values, vec![0.0; 3]);
        let e = hermitian_eigendecomposition_with(&ComplexMatrix::zeros(0, 0), 1e-10, 1e-13).unwrap();
        assert!(e.values.is_empty());
    }

    #[test]
    fn joint_resolves_degenerate_block() {
        // primary = diag(1, 1, 2) mixed by a rotation; secondary splits the pair.
        let p = ComplexMatrix::from_real_diagonal(&[1.0, 1.0, 2.0]);
        let s = ComplexMatrix::from_real_diagonal(&[5.0, -5.0, 0.0]);
        let j = joint_eigendecomposition(&p, &s, 1e-10, 1e-13, 1e-9).unwrap();
        assert_eq!(j.primary, vec![1.0, 1.0, 2.0]);
        assert_eq!(j.secondary, vec![-5.0, 5.0, 0.0]);
        assert!((j.vectors[(1, 0)].norm() - 1.0).abs() < 1e-15);
    }
}
