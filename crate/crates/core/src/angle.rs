//! Exterior-angle lists of convex polygons.
//!
//! An [`AngleList`] holds the exterior angles of a convex polygon with
//! `n + 3` edges: every angle lies in `(0, pi)` and they sum to `2 pi`.
//! Angles given as rational multiples of pi are kept exact, so sum tests
//! (`= 2 pi`, `= pi`, `< pi`) on all-rational data involve no tolerance.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number, used for angles in units of pi.
pub type Rational = Ratio<i64>;

/// Minimum distance from 0 and pi for floating-point angles.
pub const FLOAT_MARGIN: f64 = 1e-12;
/// Tolerance on the `2 pi` sum when some angle is floating point.
pub const SUM_TOL: f64 = 1e-10;
/// Tolerance for subset sums hitting `pi` with floating-point angles.
pub const SUBSET_TOL: f64 = 1e-9;
/// Tolerance on the closing turn when unwrapping slopes.
pub const UNWRAP_TOL: f64 = 1e-9;

/// A single exterior angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle {
    /// `q * pi` for an exact rational `q`.
    Rational(Rational),
    /// A value in radians.
    Float(f64),
}

impl Angle {
    /// The angle `p pi / q`, reduced to lowest terms.
    pub fn pi_fraction(p: i64, q: i64) -> Self {
        Angle::Rational(Rational::new(p, q))
    }

    pub fn radians(value: f64) -> Self {
        Angle::Float(value)
    }

    pub fn to_radians(self) -> f64 {
        match self {
            Angle::Rational(q) => q.to_f64().unwrap_or(f64::NAN) * PI,
            Angle::Float(x) => x,
        }
    }

    /// The angle divided by pi, when exact.
    pub fn as_rational(self) -> Option<Rational> {
        match self {
            Angle::Rational(q) => Some(q),
            Angle::Float(_) => None,
        }
    }

    pub fn is_rational(self) -> bool {
        matches!(self, Angle::Rational(_))
    }

    pub fn sin(self) -> f64 {
        self.to_radians().sin()
    }

    pub fn cos(self) -> f64 {
        self.to_radians().cos()
    }

    /// Whether the angle lies strictly inside `(0, pi)`.
    pub fn in_open_range(self) -> bool {
        match self {
            Angle::Rational(q) => q > Rational::zero() && q < Rational::from_integer(1),
            Angle::Float(x) => x.is_finite() && x > FLOAT_MARGIN && x < PI - FLOAT_MARGIN,
        }
    }

    /// Total order by value; exact between two rationals.
    pub fn cmp_value(&self, other: &Angle) -> Ordering {
        match (self, other) {
            (Angle::Rational(a), Angle::Rational(b)) => a.cmp(b),
            _ => self.to_radians().total_cmp(&other.to_radians()),
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::Rational(q) if *q.denom() == 1 => write!(f, "{}", q.numer()),
            Angle::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Angle::Float(x) => write!(f, "{x}"),
        }
    }
}

impl FromStr for Angle {
    type Err = Error;

    /// `"p/q"` reads as `p pi / q`; a bare decimal reads as radians.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if let Some((p, q)) = t.split_once('/') {
            let p: i64 = p.trim().parse().map_err(|_| bad("numerator is not an integer"))?;
            let q: i64 = q.trim().parse().map_err(|_| bad("denominator is not an integer"))?;
            if q == 0 {
                return Err(bad("zero denominator"));
            }
            Ok(Angle::pi_fraction(p, q))
        } else {
            let x: f64 = t.parse().map_err(|_| bad("expected p/q or a decimal radian value"))?;
            if !x.is_finite() {
                return Err(bad("angle must be finite"));
            }
            Ok(Angle::Float(x))
        }
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Compares `sum(angles)` with `target * pi`.
///
/// Exact when every angle is rational; otherwise sums within `tol` compare
/// equal.
pub fn compare_sum<'a, I>(angles: I, target: Rational, tol: f64) -> Ordering
where
    I: IntoIterator<Item = &'a Angle>,
{
    let mut exact = Rational::zero();
    let mut float = 0.0;
    let mut all_rational = true;
    for a in angles {
        match a {
            Angle::Rational(q) => exact += q,
            Angle::Float(_) => all_rational = false,
        }
        float += a.to_radians();
    }
    if all_rational {
        exact.cmp(&target)
    } else {
        let diff = float - target.to_f64().unwrap_or(f64::NAN) * PI;
        if diff.abs() <= tol {
            Ordering::Equal
        } else if diff < 0.0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

/// Compares `sum(angles)` with pi at the angle-classification tolerance.
pub(crate) fn compare_with_pi<'a, I>(angles: I) -> Ordering
where
    I: IntoIterator<Item = &'a Angle>,
{
    compare_sum(angles, Rational::from_integer(1), FLOAT_MARGIN)
}

/// All `2k` rotations and reflections of a cyclic sequence.
pub(crate) fn dihedral_images<T: Clone>(seq: &[T]) -> impl Iterator<Item = Vec<T>> + '_ {
    let len = seq.len();
    (0..len).flat_map(move |shift| {
        let rotated: Vec<T> = seq[shift..].iter().chain(&seq[..shift]).cloned().collect();
        let mut reflected = rotated.clone();
        reflected.reverse();
        [rotated, reflected]
    })
}

/// Exterior angles `alpha_1 .. alpha_{n+3}` satisfying the convexity condition.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleList {
    angles: Vec<Angle>,
}

impl AngleList {
    /// Checks range and sum conditions.
    pub fn validate(raw: Vec<Angle>) -> Result<Self> {
        if raw.len() < 3 {
            return Err(Error::TooFewAngles { len: raw.len() });
        }
        if let Some(i) = raw.iter().position(|a| !a.in_open_range()) {
            return Err(Error::AngleOutOfRange { index: i + 1 });
        }
        if compare_sum(&raw, Rational::from_integer(2), SUM_TOL) != Ordering::Equal {
            let total: f64 = raw.iter().map(|a| a.to_radians()).sum();
            return Err(Error::SumNotTwoPi {
                actual_over_pi: total / PI,
            });
        }
        Ok(AngleList { angles: raw })
    }

    /// All-rational list from `(p, q)` pairs meaning `p pi / q`.
    pub fn from_pi_fractions(fracs: &[(i64, i64)]) -> Result<Self> {
        Self::validate(fracs.iter().map(|&(p, q)| Angle::pi_fraction(p, q)).collect())
    }

    pub fn from_radians(values: &[f64]) -> Result<Self> {
        Self::validate(values.iter().copied().map(Angle::Float).collect())
    }

    /// Number of edges, `n + 3`.
    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// Dimension `n` of the associated orthoscheme.
    pub fn n(&self) -> usize {
        self.angles.len() - 3
    }

    pub fn angles(&self) -> &[Angle] {
        &self.angles
    }

    /// Angle at a cyclic index.
    pub fn get(&self, k: usize) -> Angle {
        self.angles[k % self.angles.len()]
    }

    pub fn radians(&self) -> Vec<f64> {
        self.angles.iter().map(|a| a.to_radians()).collect()
    }

    pub fn is_rational(&self) -> bool {
        self.angles.iter().all(|a| a.is_rational())
    }

    /// Reorders the list; `order[i]` is the source index of the new i-th angle.
    pub fn permuted(&self, order: &[usize]) -> AngleList {
        AngleList {
            angles: order.iter().map(|&i| self.angles[i]).collect(),
        }
    }

    /// Cyclic rotation so that index `shift` comes first.
    pub fn rotated(&self, shift: usize) -> AngleList {
        let len = self.len();
        let order: Vec<usize> = (0..len).map(|i| (i + shift) % len).collect();
        self.permuted(&order)
    }

    pub fn reversed(&self) -> AngleList {
        let mut angles = self.angles.clone();
        angles.reverse();
        AngleList { angles }
    }

    /// Lexicographically least representative under rotations and reflections.
    pub fn canonicalize(&self) -> AngleList {
        let best = dihedral_images(&self.angles)
            .min_by(|a, b| lex_cmp(a, b))
            .expect("angle list is non-empty");
        AngleList { angles: best }
    }

    /// A set of indices (0-based) whose angles sum to exactly pi.
    ///
    /// Searches subset sizes `2 ..= n + 1` in increasing size, then
    /// lexicographic order, so the witness is deterministic.
    pub fn subset_sum_pi(&self) -> Option<Vec<usize>> {
        let len = self.len();
        let one = Rational::from_integer(1);
        for size in 2..=len.saturating_sub(2) {
            let mut found = None;
            for_each_combination(len, size, &mut |idx| {
                if found.is_none()
                    && compare_sum(idx.iter().map(|&i| &self.angles[i]), one, SUBSET_TOL)
                        == Ordering::Equal
                {
                    found = Some(idx.to_vec());
                }
                found.is_none()
            });
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

impl fmt::Display for AngleList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.angles.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl FromStr for AngleList {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let raw = s
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<Angle>>>()?;
        AngleList::validate(raw)
    }
}

impl Serialize for AngleList {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.angles.serialize(serializer)
    }
}

fn lex_cmp(a: &[Angle], b: &[Angle]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.cmp_value(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Calls `f` on every `size`-subset of `0..len` in lexicographic order until
/// it returns `false`.
pub(crate) fn for_each_combination(len: usize, size: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    if size > len {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let mut i = size;
        while i > 0 && idx[i - 1] == len - size + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        i -= 1;
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Slope of a line through the origin; vertical lines have infinite slope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Slope {
    Finite(f64),
    Infinity,
}

impl Slope {
    /// Direction of the line in `[0, pi)`.
    pub fn line_angle(self) -> f64 {
        match self {
            Slope::Infinity => PI / 2.0,
            Slope::Finite(s) => s.atan().rem_euclid(PI),
        }
    }

    /// Slope of the line at direction `phi`, with near-vertical lines mapped
    /// to infinity.
    pub fn from_direction(phi: f64) -> Slope {
        let c = phi.cos();
        if c.abs() < 1e-15 {
            Slope::Infinity
        } else {
            Slope::Finite(phi.sin() / c)
        }
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
            return Ok(Slope::Infinity);
        }
        match t.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(Slope::Finite(x)),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected a decimal slope or \"inf\"".to_string(),
            }),
        }
    }
}

/// Slopes of the lines carrying the normals `u_1 .. u_{n+3}`, in cyclic order.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeList(pub Vec<Slope>);

impl SlopeList {
    /// Normal slopes of a polygon whose angle space is the compact 5-dimensional
    /// Coxeter orthoscheme found by Tumarkin.
    pub fn tumarkin() -> Self {
        let r5 = 5f64.sqrt();
        SlopeList(vec![
            Slope::Finite(r5),
            Slope::Finite(-2.0),
            Slope::Finite(-1.0),
            Slope::Finite(0.0),
            Slope::Finite(1.0),
            Slope::Infinity,
            Slope::Finite(-3.0),
            Slope::Finite((r5 - 3.0) / 2.0),
        ])
    }

    /// Reconstructs exterior angles by unwrapping the normal directions.
    ///
    /// The first normal sits at the direction of the first line in `[0, pi)`;
    /// each following normal turns counterclockwise by the unique amount in
    /// `(0, pi)` that lands on its line. The returned list starts with the
    /// closing turn from the last normal back to the first, so that its
    /// cumulative sums reproduce the normal directions.
    pub fn to_angles(&self) -> Result<AngleList> {
        let lines: Vec<f64> = self.0.iter().map(|s| s.line_angle()).collect();
        let len = lines.len();
        if len < 3 {
            return Err(Error::TooFewAngles { len });
        }
        let turn = |from: f64, to: f64, index: usize, next: usize| -> Result<f64> {
            let d = (to - from).rem_euclid(PI);
            if d <= FLOAT_MARGIN || PI - d <= FLOAT_MARGIN {
                Err(Error::DegenerateConsecutive { index, next })
            } else {
                Ok(d)
            }
        };
        let mut phi = lines[0];
        let mut turns = Vec::with_capacity(len);
        for k in 1..len {
            let d = turn(phi, lines[k], k, k + 1)?;
            turns.push(d);
            phi += d;
        }
        let closing = turn(phi, lines[0], len, 1)?;
        let total = closing + turns.iter().sum::<f64>();
        if (total - 2.0 * PI).abs() > UNWRAP_TOL {
            return Err(Error::UnwrapNotTwoPi {
                total_over_pi: total / PI,
            });
        }
        let mut angles = Vec::with_capacity(len);
        angles.push(Angle::Float(closing));
        angles.extend(turns.into_iter().map(Angle::Float));
        AngleList::validate(angles)
    }
}

impl FromStr for SlopeList {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(str::parse)
            .collect::<Result<Vec<Slope>>>()
            .map(SlopeList)
    }
}
