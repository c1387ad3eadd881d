//! Cyclic Jacobi eigenvalue iteration for small dense symmetric and
//! Hermitian matrices, and the inertia (signature) derived from it.
//!
//! Matrices here never exceed a few dozen rows, so plain cyclic sweeps are
//! both fast enough and accurate to machine precision.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Default relative zero threshold for eigenvalues.
pub const ZERO_TOL: f64 = 1e-8;

/// Counts of negative, zero and positive eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub negative: usize,
    pub zero: usize,
    pub positive: usize,
}

impl Signature {
    pub fn new(negative: usize, zero: usize, positive: usize) -> Self {
        Signature {
            negative,
            zero,
            positive,
        }
    }

    /// Classifies `eigenvalues`; `|lambda| <= tol * max |lambda|` counts as zero.
    pub fn from_eigenvalues(eigenvalues: &[f64], tol: f64) -> Self {
        let scale = eigenvalues.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        let mut sig = Signature::new(0, 0, 0);
        for &x in eigenvalues {
            if x.abs() <= tol * scale {
                sig.zero += 1;
            } else if x < 0.0 {
                sig.negative += 1;
            } else {
                sig.positive += 1;
            }
        }
        sig
    }

    pub fn dim(&self) -> usize {
        self.negative + self.zero + self.positive
    }
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.negative, self.zero, self.positive)
    }
}

fn max_abs<T>(m: &DMatrix<T>, norm: impl Fn(&T) -> f64) -> f64 {
    m.iter().fold(0.0_f64, |acc, x| acc.max(norm(x)))
}

/// Largest `|a_ij - a_ji|` relative to the largest entry.
pub fn asymmetry(a: &DMatrix<f64>) -> f64 {
    let scale = max_abs(a, |x| x.abs()).max(f64::MIN_POSITIVE);
    let n = a.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i + 1..n {
            worst = worst.max((a[(i, j)] - a[(j, i)]).abs());
        }
    }
    worst / scale
}

/// Largest `|a_ij - conj(a_ji)|` relative to the largest entry.
pub fn hermitian_defect(a: &DMatrix<Complex64>) -> f64 {
    let scale = max_abs(a, |x| x.norm()).max(f64::MIN_POSITIVE);
    let n = a.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst / scale
}

/// Eigenvalues of a real symmetric matrix, in ascending order.
///
/// Only the upper triangle is read.
pub fn symmetric_eigenvalues(a: &DMatrix<f64>) -> Vec<f64> {
    assert!(a.is_square(), "matrix must be square");
    let n = a.nrows();
    let mut m = a.clone();
    for i in 0..n {
        for j in 0..i {
            m[(i, j)] = m[(j, i)];
        }
    }
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        let mut total = 0.0;
        for i in 0..n {
            total += m[(i, i)] * m[(i, i)];
            for j in i + 1..n {
                off += 2.0 * m[(i, j)] * m[(i, j)];
            }
        }
        total += off;
        if off <= 1e-32 * total || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for r in 0..n {
                    let (x, y) = (m[(r, p)], m[(r, q)]);
                    m[(r, p)] = c * x - s * y;
                    m[(r, q)] = s * x + c * y;
                }
                for col in 0..n {
                    let (x, y) = (m[(p, col)], m[(q, col)]);
                    m[(p, col)] = c * x - s * y;
                    m[(q, col)] = s * x + c * y;
                }
                m[(p, q)] = 0.0;
                m[(q, p)] = 0.0;
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| m[(i, i)]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Eigenvalues of a complex Hermitian matrix, in ascending order.
///
/// Each rotation first turns the pivot entry real and positive with a
/// diagonal phase, then applies the real Jacobi rotation for that pivot.
pub fn hermitian_eigenvalues(a: &DMatrix<Complex64>) -> Vec<f64> {
    assert!(a.is_square(), "matrix must be square");
    let n = a.nrows();
    let mut m = a.clone();
    for i in 0..n {
        m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
        for j in 0..i {
            m[(i, j)] = m[(j, i)].conj();
        }
    }
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        let mut total = 0.0;
        for i in 0..n {
            total += m[(i, i)].norm_sqr();
            for j in i + 1..n {
                off += 2.0 * m[(i, j)].norm_sqr();
            }
        }
        total += off;
        if off <= 1e-32 * total || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let g = m[(p, q)];
                let abs = g.norm();
                if abs == 0.0 {
                    continue;
                }
                let phase_conj = (g / abs).conj();
                let theta = (m[(q, q)].re - m[(p, p)].re) / (2.0 * abs);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // U = diag(.., e^{-i phi} at q) * R(c, s)
                let u_pp = Complex64::new(c, 0.0);
                let u_pq = Complex64::new(s, 0.0);
                let u_qp = phase_conj * (-s);
                let u_qq = phase_conj * c;
                for r in 0..n {
                    let (x, y) = (m[(r, p)], m[(r, q)]);
                    m[(r, p)] = x * u_pp + y * u_qp;
                    m[(r, q)] = x * u_pq + y * u_qq;
                }
                for col in 0..n {
                    let (x, y) = (m[(p, col)], m[(q, col)]);
                    m[(p, col)] = u_pp.conj() * x + u_qp.conj() * y;
                    m[(q, col)] = u_pq.conj() * x + u_qq.conj() * y;
                }
                m[(p, q)] = Complex64::new(0.0, 0.0);
                m[(q, p)] = Complex64::new(0.0, 0.0);
                m[(p, p)].im = 0.0;
                m[(q, q)].im = 0.0;
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// The real symmetric `2n x 2n` matrix `[[Re, -Im], [Im, Re]]`.
///
/// Its spectrum is that of `a` with every eigenvalue doubled.
pub fn realify(a: &DMatrix<Complex64>) -> DMatrix<f64> {
    let n = a.nrows();
    DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let z = a[(i % n, j % n)];
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    })
}

/// Signature of a real symmetric matrix.
pub fn symmetric_signature(a: &DMatrix<f64>, tol: f64) -> Result<Signature> {
    let asym = asymmetry(a);
    if asym > tol {
        return Err(Error::NotSymmetric { asymmetry: asym });
    }
    Ok(Signature::from_eigenvalues(&symmetric_eigenvalues(a), tol))
}

/// Signature of a complex Hermitian matrix.
pub fn hermitian_signature(a: &DMatrix<Complex64>, tol: f64) -> Result<Signature> {
    let defect = hermitian_defect(a);
    if defect > tol {
        return Err(Error::NotSymmetric { asymmetry: defect });
    }
    Ok(Signature::from_eigenvalues(&hermitian_eigenvalues(a), tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_signature() {
        let id = DMatrix::<f64>::identity(3, 3);
        assert_eq!(symmetric_signature(&id, ZERO_TOL).unwrap(), Signature::new(0, 0, 3));
    }

    #[test]
    fn rejects_asymmetric() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 1.0]);
        assert!(matches!(
            symmetric_signature(&a, ZERO_TOL),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn matches_nalgebra_on_random_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..12 {
            let b = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
            let a = &b + b.transpose();
            let ours = symmetric_eigenvalues(&a);
            let mut theirs: Vec<f64> = a.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
            theirs.sort_by(f64::total_cmp);
            for (x, y) in ours.iter().zip(&theirs) {
                assert!((x - y).abs() < 1e-12, "{x} vs {y}");
            }
        }
    }

    #[test]
    fn hermitian_agrees_with_realification() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..10 {
            let b = DMatrix::from_fn(n, n, |_, _| {
                Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
            });
            let a = &b + b.adjoint();
            let ours = hermitian_eigenvalues(&a);
            let doubled = symmetric_eigenvalues(&realify(&a));
            for (k, x) in ours.iter().enumerate() {
                assert!((x - doubled[2 * k]).abs() < 1e-11);
                assert!((x - doubled[2 * k + 1]).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn diagonal_phases_are_irrelevant() {
        // diag(1, -2) conjugated by a unitary with complex entries
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let u = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(s, 0.0),
                Complex64::new(0.0, s),
                Complex64::new(0.0, s),
                Complex64::new(s, 0.0),
            ],
        );
        let d = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(-2.0, 0.0),
            ],
        );
        let a = &u * d * u.adjoint();
        let ev = hermitian_eigenvalues(&a);
        assert!((ev[0] + 2.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
    }
}
