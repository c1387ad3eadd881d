//! The complex area form on unfoldings of doubled polygons.
//!
//! A doubled convex polygon is a flat sphere with cone points at the
//! vertices. Cutting it from an interior source point (the origin) to every
//! cone point and developing gives the star polygon
//! `x_1 s_1 x_2 s_2 ... x_N s_N`, where `s_k = 2 h_k u_k` is the mirror image
//! of the origin in edge `k` and `x_k` is the vertex between edges `k-1` and
//! `k`. The `x_k` are linear in the `s_k`, so the signed area is a Hermitian
//! form on `C^N`.

use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::angle::AngleList;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_signature, Signature};
use crate::mixed_area::{edge_lengths, GramMatrix, NormalFan, SupportVector};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Coefficients `(c_prev, c_here)` with `x_k = c_prev s_{k-1} + c_here s_k`.
fn vertex_coefficients(alpha: f64) -> (Complex64, Complex64) {
    let denom = 2.0 * I * alpha.sin();
    (Complex64::from_polar(1.0, alpha) / denom, -Complex64::from_polar(1.0, -alpha) / denom)
}

/// The `2N x N` map `s -> (x_1, s_1, ..., x_N, s_N)`.
pub fn unfolding_map(angles: &AngleList) -> DMatrix<Complex64> {
    let a = angles.radians();
    let len = a.len();
    let mut w = DMatrix::from_element(2 * len, len, Complex64::new(0.0, 0.0));
    for k in 0..len {
        let (prev, here) = vertex_coefficients(a[k]);
        w[(2 * k, (k + len - 1) % len)] += prev;
        w[(2 * k, k)] += here;
        w[(2 * k + 1, k)] = Complex64::new(1.0, 0.0);
    }
    w
}

/// Hermitian matrix of minus the shoelace area of a closed `m`-gon.
fn shoelace_form(m: usize) -> DMatrix<Complex64> {
    let mut s = DMatrix::from_element(m, m, Complex64::new(0.0, 0.0));
    for j in 0..m {
        s[(j, (j + 1) % m)] += I / 4.0;
        s[((j + 1) % m, j)] -= I / 4.0;
    }
    s
}

/// Unfolding of a doubled polygon: source images `s` and cone points `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Unfolding {
    pub s: Vec<Complex64>,
    pub x: Vec<Complex64>,
    pub source: AngleList,
}

impl Unfolding {
    /// Unfolding determined by the source images alone.
    pub fn from_s(angles: &AngleList, s: Vec<Complex64>) -> Result<Self> {
        if s.len() != angles.len() {
            return Err(Error::LengthMismatch {
                expected: angles.len(),
                actual: s.len(),
            });
        }
        let a = angles.radians();
        let len = a.len();
        let x = (0..len)
            .map(|k| {
                let (prev, here) = vertex_coefficients(a[k]);
                prev * s[(k + len - 1) % len] + here * s[k]
            })
            .collect();
        Ok(Unfolding {
            s,
            x,
            source: angles.clone(),
        })
    }

    /// Vertices `x_1, s_1, ..., x_N, s_N` of the star polygon.
    pub fn vertices(&self) -> Vec<Complex64> {
        self.x.iter().zip(&self.s).flat_map(|(&x, &s)| [x, s]).collect()
    }

    /// Largest `|s_k - x_k - e^{2 i alpha_k} (s_{k-1} - x_k)|`: the cone
    /// point `x_k` turns `s_{k-1}` into `s_k`.
    pub fn rotation_residual(&self) -> f64 {
        let a = self.source.radians();
        let len = a.len();
        (0..len)
            .map(|k| {
                let rot = Complex64::from_polar(1.0, 2.0 * a[k]);
                (self.s[k] - self.x[k] - rot * (self.s[(k + len - 1) % len] - self.x[k])).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Signed shoelace area of the star polygon.
    pub fn area(&self) -> f64 {
        let v = self.vertices();
        let m = v.len();
        0.5 * (0..m).map(|j| (v[j].conj() * v[(j + 1) % m]).im).sum::<f64>()
    }

    pub fn to_svg(&self) -> String {
        let v = self.vertices();
        let (mut lo_x, mut hi_x, mut lo_y, mut hi_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for z in &v {
            lo_x = lo_x.min(z.re);
            hi_x = hi_x.max(z.re);
            lo_y = lo_y.min(z.im);
            hi_y = hi_y.max(z.im);
        }
        let span = (hi_x - lo_x).max(hi_y - lo_y).max(1e-12);
        let size = 400.0;
        let pad = 20.0;
        let map = |z: Complex64| {
            (
                pad + (z.re - lo_x) / span * size,
                pad + (hi_y - z.im) / span * size,
            )
        };
        let r = 4.0;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{w}\" viewBox=\"0 0 {w} {w}\">",
            w = size + 2.0 * pad
        );
        let pts: Vec<String> = v
            .iter()
            .map(|&z| {
                let (px, py) = map(z);
                format!("{px:.3},{py:.3}")
            })
            .collect();
        let _ = writeln!(
            out,
            "  <polygon points=\"{}\" fill=\"#dde8f4\" stroke=\"#234\" stroke-width=\"1.5\"/>",
            pts.join(" ")
        );
        for (k, (&x, &s)) in self.x.iter().zip(&self.s).enumerate() {
            let (px, py) = map(x);
            let _ = writeln!(out, "  <circle class=\"x\" cx=\"{px:.3}\" cy=\"{py:.3}\" r=\"{r}\" fill=\"#234\"><title>x{}</title></circle>", k + 1);
            let (px, py) = map(s);
            let _ = writeln!(out, "  <circle class=\"s\" cx=\"{px:.3}\" cy=\"{py:.3}\" r=\"{r}\" fill=\"white\" stroke=\"#c33\"><title>s{}</title></circle>", k + 1);
        }
        let (ox, oy) = map(Complex64::new(0.0, 0.0));
        let _ = writeln!(out, "  <circle class=\"source\" cx=\"{ox:.3}\" cy=\"{oy:.3}\" r=\"2\" fill=\"#c33\"/>");
        out.push_str("</svg>\n");
        out
    }
}

fn pairs(z: &[Complex64]) -> Vec<[f64; 2]> {
    z.iter().map(|c| [c.re, c.im]).collect()
}

impl Serialize for Unfolding {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("Unfolding", 2)?;
        st.serialize_field("s", &pairs(&self.s))?;
        st.serialize_field("x", &pairs(&self.x))?;
        st.end()
    }
}

/// Unfolds the double of the polygon with heights `h` from the origin.
pub fn unfold_double(angles: &AngleList, h: &SupportVector) -> Result<Unfolding> {
    let lengths = edge_lengths(angles, h)?;
    if let Some(index) = lengths.iter().position(|&l| l <= 0.0) {
        return Err(Error::NotConvex { index: index + 1 });
    }
    if let Some(index) = h.heights().iter().position(|&x| x <= 0.0) {
        return Err(Error::OriginNotInterior { index: index + 1 });
    }
    Unfolding::from_s(angles, embed(angles, h)?)
}

/// `f(h)_k = 2 h_k u_k`.
pub fn embed(angles: &AngleList, h: &SupportVector) -> Result<Vec<Complex64>> {
    if h.len() != angles.len() {
        return Err(Error::LengthMismatch {
            expected: angles.len(),
            actual: h.len(),
        });
    }
    let fan = NormalFan::new(angles);
    Ok(h.heights()
        .iter()
        .enumerate()
        .map(|(k, &hk)| fan.unit(k) * (2.0 * hk))
        .collect())
}

/// The Hermitian form `M(p, q) = q^H A p` in source-image coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    entries: DMatrix<Complex64>,
    source: AngleList,
}

impl HermitianMatrix {
    pub fn new(angles: &AngleList) -> Self {
        let w = unfolding_map(angles);
        let s = shoelace_form(w.nrows());
        HermitianMatrix {
            entries: w.adjoint() * s * &w,
            source: angles.clone(),
        }
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn source(&self) -> &AngleList {
        &self.source
    }

    pub fn form(&self, p: &[Complex64], q: &[Complex64]) -> Complex64 {
        let p = DVector::from_column_slice(p);
        let q = DVector::from_column_slice(q);
        (q.adjoint() * &self.entries * p)[(0, 0)]
    }

    pub fn signature(&self, tol: f64) -> Result<Signature> {
        hermitian_signature(&self.entries, tol)
    }

    /// Largest entry modulus.
    pub fn scale(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, z| m.max(z.norm()))
    }
}

pub fn hermitian_matrix(angles: &AngleList) -> HermitianMatrix {
    HermitianMatrix::new(angles)
}

/// Largest `|M(f(e_i), f(e_j)) - 2 m(e_i, e_j)|` over basis heights.
pub fn embedding_residual(angles: &AngleList) -> f64 {
    let m = HermitianMatrix::new(angles);
    let g = GramMatrix::new(angles);
    let len = angles.len();
    let images: Vec<Vec<Complex64>> = (0..len)
        .map(|k| embed(angles, &SupportVector::basis(len, k)).expect("lengths match"))
        .collect();
    let mut worst = 0.0_f64;
    for i in 0..len {
        for j in 0..len {
            let lhs = m.form(&images[i], &images[j]);
            worst = worst.max((lhs - Complex64::new(2.0 * g.entry(i, j), 0.0)).norm());
        }
    }
    worst
}
