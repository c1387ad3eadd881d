//! Random generators for angle lists and convex polygons, used by the test
//! suites and benchmarks.

use std::f64::consts::PI;

use rand::Rng;

use crate::angle::{Angle, AngleList};
use crate::mixed_area::{NormalFan, SupportVector};

/// Smallest angle (and distance of any angle or adjacent pair from pi)
/// produced by [`angle_list`].
pub const MIN_GAP: f64 = 0.05;

/// Random floating-point angle list with `n + 3` entries.
///
/// Angles are Dirichlet(1, ..., 1) scaled to `2 pi`, rejected unless every
/// angle and every adjacent pair sum stays `MIN_GAP` away from `0` and `pi`.
pub fn angle_list<R: Rng + ?Sized>(rng: &mut R, n: usize) -> AngleList {
    let len = n + 3;
    loop {
        let w: Vec<f64> = (0..len).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
        let total: f64 = w.iter().sum();
        let a: Vec<f64> = w.iter().map(|x| 2.0 * PI * x / total).collect();
        let ok = (0..len).all(|k| {
            let pair = a[k] + a[(k + 1) % len];
            a[k] > MIN_GAP && a[k] < PI - MIN_GAP && (pair - PI).abs() > MIN_GAP
        });
        if ok {
            if let Ok(list) = AngleList::from_radians(&a) {
                return list;
            }
        }
    }
}

/// Random all-rational angle list with `n + 3` entries and common
/// denominator `den` (angles `p pi / den`).
pub fn rational_angle_list<R: Rng + ?Sized>(rng: &mut R, n: usize, den: i64) -> AngleList {
    let len = n + 3;
    assert!(2 * den >= len as i64 && den >= 2, "denominator too small");
    loop {
        let mut parts = vec![1i64; len];
        for _ in 0..(2 * den - len as i64) {
            parts[rng.random_range(0..len)] += 1;
        }
        if parts.iter().all(|&p| p < den) {
            let angles = parts.iter().map(|&p| Angle::pi_fraction(p, den)).collect();
            if let Ok(list) = AngleList::validate(angles) {
                return list;
            }
        }
    }
}

/// Random strictly convex polygon with the normals of `angles`: a scaled
/// circumscribed polygon plus the convex hull of three random points.
pub fn convex_heights<R: Rng + ?Sized>(rng: &mut R, angles: &AngleList) -> SupportVector {
    let fan = NormalFan::new(angles);
    let inradius = rng.random_range(0.1..1.0);
    let pts: Vec<[f64; 2]> = (0..3)
        .map(|_| [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)])
        .collect();
    SupportVector(
        (0..fan.len())
            .map(|k| {
                let u = fan.normal(k);
                inradius
                    + pts
                        .iter()
                        .map(|p| p[0] * u[0] + p[1] * u[1])
                        .fold(f64::NEG_INFINITY, f64::max)
            })
            .collect(),
    )
}

/// Random point in the square `[-1, 1]^2`.
pub fn point<R: Rng + ?Sized>(rng: &mut R) -> [f64; 2] {
    [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)]
}
