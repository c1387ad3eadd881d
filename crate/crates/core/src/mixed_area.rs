//! The mixed-area bilinear form on support vectors.
//!
//! A support vector `h` in `R^{n+3}` describes a (possibly degenerate)
//! polygon whose k-th edge has outward normal `u_k` and lies on the line at
//! signed distance `h_k` from the origin. The form
//! `m(P, Q) = -1/2 sum_k h_k(P) l_k(Q)` is symmetric, `m(P, P)` is minus the
//! area, and its signature is `(1, 2, n)`.
//!
//! Index conventions: `alpha[k]` is the exterior angle between normals
//! `u[k-1]` and `u[k]` (cyclic), so `u[k]` has direction
//! `alpha[0] + ... + alpha[k]`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::angle::AngleList;
use crate::error::{Error, Result};
use crate::linalg::{symmetric_signature, Signature};

/// Cumulative normal directions of an angle list.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalFan {
    phi: Vec<f64>,
}

impl NormalFan {
    pub fn new(angles: &AngleList) -> Self {
        let mut acc = 0.0;
        let phi = angles
            .radians()
            .into_iter()
            .map(|a| {
                acc += a;
                acc
            })
            .collect();
        NormalFan { phi }
    }

    /// Direction of `u[k]` in radians; the last one is `2 pi`.
    pub fn directions(&self) -> &[f64] {
        &self.phi
    }

    pub fn normal(&self, k: usize) -> [f64; 2] {
        let p = self.phi[k % self.phi.len()];
        [p.cos(), p.sin()]
    }

    /// `u[k]` as a unit complex number.
    pub fn unit(&self, k: usize) -> Complex64 {
        Complex64::from_polar(1.0, self.phi[k % self.phi.len()])
    }

    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }
}

/// Heights `h_1 .. h_{n+3}` of a polygon with fixed normals.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportVector(pub Vec<f64>);

impl SupportVector {
    /// The k-th canonical basis vector (the triangle described by `u_k`).
    pub fn basis(len: usize, k: usize) -> Self {
        let mut h = vec![0.0; len];
        h[k] = 1.0;
        SupportVector(h)
    }

    /// Heights of the single point `p`, i.e. `h_k = <p, u_k>`.
    pub fn of_point(fan: &NormalFan, p: [f64; 2]) -> Self {
        SupportVector(
            (0..fan.len())
                .map(|k| {
                    let u = fan.normal(k);
                    p[0] * u[0] + p[1] * u[1]
                })
                .collect(),
        )
    }

    pub fn heights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        SupportVector(self.0.iter().map(|h| h * factor).collect())
    }

    pub fn plus(&self, other: &SupportVector) -> Self {
        SupportVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

fn check_len(angles: &AngleList, h: &SupportVector) -> Result<()> {
    if h.len() != angles.len() {
        return Err(Error::LengthMismatch {
            expected: angles.len(),
            actual: h.len(),
        });
    }
    Ok(())
}

/// Edge lengths `l_k(P)` read off the heights.
pub fn edge_lengths(angles: &AngleList, h: &SupportVector) -> Result<Vec<f64>> {
    check_len(angles, h)?;
    let a = angles.radians();
    let len = a.len();
    let h = h.heights();
    Ok((0..len)
        .map(|k| {
            let prev = (k + len - 1) % len;
            let next = (k + 1) % len;
            (h[prev] - h[k] * a[k].cos()) / a[k].sin()
                + (h[next] - h[k] * a[next].cos()) / a[next].sin()
        })
        .collect())
}

/// Matrix of the mixed-area form in the basis `u_1 .. u_{n+3}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    matrix: DMatrix<f64>,
    source: AngleList,
}

impl GramMatrix {
    pub fn new(angles: &AngleList) -> Self {
        let a = angles.radians();
        let len = a.len();
        let mut g = DMatrix::zeros(len, len);
        for k in 0..len {
            let next = (k + 1) % len;
            g[(k, k)] = 0.5 * (a[k] + a[next]).sin() / (a[k].sin() * a[next].sin());
            let off = -0.5 / a[next].sin();
            g[(k, next)] = off;
            g[(next, k)] = off;
        }
        GramMatrix {
            matrix: g,
            source: angles.clone(),
        }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn source(&self) -> &AngleList {
        &self.source
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.matrix[(i, j)]
    }

    /// `h(P)^T G h(Q)`.
    pub fn form(&self, p: &SupportVector, q: &SupportVector) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += p.0[i] * self.matrix[(i, j)] * q.0[j];
            }
        }
        acc
    }

    pub fn signature(&self, tol: f64) -> Result<Signature> {
        symmetric_signature(&self.matrix, tol)
    }

    /// Gram matrix with every non-lightlike basis vector rescaled to norm
    /// `+1` or `-1`; rows of lightlike vectors are left unscaled.
    pub fn normalized(&self) -> DMatrix<f64> {
        normalize(&self.matrix)
    }
}

pub(crate) fn normalize(g: &DMatrix<f64>) -> DMatrix<f64> {
    let scale: Vec<f64> = (0..g.nrows())
        .map(|k| {
            let d = g[(k, k)].abs();
            if d > 1e-300 {
                1.0 / d.sqrt()
            } else {
                1.0
            }
        })
        .collect();
    DMatrix::from_fn(g.nrows(), g.ncols(), |i, j| g[(i, j)] * scale[i] * scale[j])
}

/// Shorthand for [`GramMatrix::new`].
pub fn gram_matrix(angles: &AngleList) -> GramMatrix {
    GramMatrix::new(angles)
}

/// `m(P, Q)` through the Gram matrix.
pub fn mixed_area(angles: &AngleList, p: &SupportVector, q: &SupportVector) -> Result<f64> {
    check_len(angles, p)?;
    check_len(angles, q)?;
    Ok(GramMatrix::new(angles).form(p, q))
}

/// Heights of the unit translations along the x and y axes.
pub fn kernel_basis(angles: &AngleList) -> [SupportVector; 2] {
    let fan = NormalFan::new(angles);
    [
        SupportVector::of_point(&fan, [1.0, 0.0]),
        SupportVector::of_point(&fan, [0.0, 1.0]),
    ]
}

/// `m(P,Q)^2 - m(P,P) m(Q,Q)`, non-negative for convex pairs.
pub fn minkowski_defect(angles: &AngleList, p: &SupportVector, q: &SupportVector) -> Result<f64> {
    for h in [p, q] {
        let l = edge_lengths(angles, h)?;
        if let Some(k) = l.iter().position(|&x| x <= 0.0) {
            return Err(Error::NotConvex { index: k + 1 });
        }
    }
    let g = GramMatrix::new(angles);
    let pq = g.form(p, q);
    Ok(pq * pq - g.form(p, p) * g.form(q, q))
}

/// Vertices of the polygon with the given heights; vertex `k` is where the
/// support lines of edges `k-1` and `k` meet. Counterclockwise for convex
/// heights.
pub fn polygon_vertices(angles: &AngleList, h: &SupportVector) -> Result<Vec<[f64; 2]>> {
    check_len(angles, h)?;
    let fan = NormalFan::new(angles);
    let phi = fan.directions();
    let len = phi.len();
    let h = h.heights();
    Ok((0..len)
        .map(|k| {
            let prev = (k + len - 1) % len;
            let det = (phi[k] - phi[prev]).sin();
            [
                (h[prev] * phi[k].sin() - h[k] * phi[prev].sin()) / det,
                (h[k] * phi[prev].cos() - h[prev] * phi[k].cos()) / det,
            ]
        })
        .collect())
}

/// Signed shoelace area, positive for counterclockwise vertex order.
pub fn shoelace_area(points: &[[f64; 2]]) -> f64 {
    let len = points.len();
    0.5 * (0..len)
        .map(|i| {
            let (a, b) = (points[i], points[(i + 1) % len]);
            a[0] * b[1] - a[1] * b[0]
        })
        .sum::<f64>()
}

/// Explicit negative eigenpair of the 3x3 form of a triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleEigenpair {
    pub vector: [f64; 3],
    pub eigenvalue: f64,
    /// `max |G v - lambda v|`.
    pub residual: f64,
}

/// Checks the closed-form negative eigenvector of a triangle's form.
pub fn negative_eigenvector_check(angles: &AngleList) -> Result<TriangleEigenpair> {
    if angles.n() != 0 {
        return Err(Error::WrongDimension {
            expected: 0,
            actual: angles.n(),
        });
    }
    let s: Vec<f64> = angles.radians().iter().map(|a| a.sin()).collect();
    let vector = [1.0, s[0] / s[2], s[1] / s[2]];
    let eigenvalue = -0.5 * (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]) / (s[0] * s[1] * s[2]);
    let g = GramMatrix::new(angles);
    let residual = (0..3)
        .map(|i| {
            let gv: f64 = (0..3).map(|j| g.entry(i, j) * vector[j]).sum();
            (gv - eigenvalue * vector[i]).abs()
        })
        .fold(0.0, f64::max);
    Ok(TriangleEigenpair {
        vector,
        eigenvalue,
        residual,
    })
}
