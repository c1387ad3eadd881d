//! The Gram matrix of an angle list read as a Napier cycle in Minkowski
//! space, and the hyperbolic orthoscheme it bounds.
//!
//! The basis vector `u[k]` is spacelike, lightlike or timelike according to
//! whether `alpha[k] + alpha[k+1]` is below, equal to or above pi. Only the
//! spacelike (positive) vectors carry facets; two facets are orthogonal
//! unless their vectors are cyclically adjacent, in which case the
//! normalized Gram entry gives an angle, parallelism, or a distance.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::angle::{compare_sum, compare_with_pi, AngleList, Rational, Slope, SUBSET_TOL};
use crate::error::{Error, Result};
use crate::mixed_area::{normalize, GramMatrix};

/// `|r - 1|` below which adjacent facets are declared parallel.
pub const PARALLEL_TOL: f64 = 1e-9;
/// Default tolerance on `Theta = pi / k` for Coxeter detection.
pub const COXETER_TOL: f64 = 1e-9;
/// Default largest `k` considered for `Theta = pi / k`.
pub const COXETER_KMAX: u32 = 10_000;

/// Causal character of a basis vector of the Napier cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Character {
    Spacelike,
    Lightlike,
    Timelike,
}

/// Character of every `u[k]`, decided by `alpha[k] + alpha[k+1]` against pi.
pub fn characters(angles: &AngleList) -> Vec<Character> {
    let a = angles.angles();
    let len = a.len();
    (0..len)
        .map(|k| match compare_with_pi([&a[k], &a[(k + 1) % len]]) {
            Ordering::Less => Character::Spacelike,
            Ordering::Equal => Character::Lightlike,
            Ordering::Greater => Character::Timelike,
        })
        .collect()
}

fn require_dimension(angles: &AngleList) -> Result<()> {
    if angles.n() < 2 {
        return Err(Error::DimensionTooSmall { n: angles.n() });
    }
    Ok(())
}

/// Type (1, 2 or 3) of the orthoscheme together with the vector characters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrthoschemeType {
    /// 3 minus the number of non-spacelike vectors.
    pub kind: u8,
    pub n: usize,
    pub characters: Vec<Character>,
}

impl OrthoschemeType {
    /// Indices of the spacelike vectors, i.e. of the facets.
    pub fn facets(&self) -> Vec<usize> {
        (0..self.characters.len())
            .filter(|&k| self.characters[k] == Character::Spacelike)
            .collect()
    }

    pub fn is_facet(&self, k: usize) -> bool {
        self.characters[k] == Character::Spacelike
    }
}

pub fn classify_type(angles: &AngleList) -> Result<OrthoschemeType> {
    require_dimension(angles)?;
    let characters = characters(angles);
    let len = characters.len();
    let non_positive: Vec<usize> = (0..len)
        .filter(|&k| characters[k] != Character::Spacelike)
        .collect();
    // Two non-positive vectors that are not neighbours would need four
    // angles summing to at least 2 pi, leaving nothing for the rest.
    assert!(non_positive.len() <= 2, "more than two non-spacelike vectors");
    if let [i, j] = non_positive[..] {
        assert!(
            (j - i) == 1 || (i == 0 && j == len - 1),
            "non-spacelike vectors must be adjacent"
        );
    }
    Ok(OrthoschemeType {
        kind: 3 - non_positive.len() as u8,
        n: angles.n(),
        characters,
    })
}

/// `sin a sin c / (sin(a+b) sin(b+c))`: squared cosine of the dihedral
/// angle between the two facets meeting around the middle angle `b`.
pub fn dihedral_ratio(a: f64, b: f64, c: f64) -> f64 {
    a.sin() * c.sin() / ((a + b).sin() * (b + c).sin())
}

/// Relation between two facets of an orthoscheme.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FacetRelation {
    Orthogonal,
    /// Interior dihedral angle in `(0, pi/2]`.
    Angle { theta: f64 },
    Parallel,
    /// Hyperplanes with a common perpendicular of this length.
    Ultraparallel { distance: f64 },
}

impl FacetRelation {
    /// Relation for a squared normalized Gram entry `ratio`.
    pub fn from_ratio(ratio: f64) -> Self {
        if (ratio - 1.0).abs() <= PARALLEL_TOL {
            FacetRelation::Parallel
        } else if ratio < 1.0 {
            FacetRelation::Angle {
                theta: ratio.max(0.0).sqrt().acos(),
            }
        } else {
            FacetRelation::Ultraparallel {
                distance: ratio.sqrt().acosh(),
            }
        }
    }
}

/// Relations between adjacent facets `(u[k], u[(k+1) % len])`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdjacentPair {
    pub first: usize,
    pub second: usize,
    /// Squared normalized Gram entry.
    pub ratio: f64,
    pub relation: FacetRelation,
}

/// All pairwise facet relations of an orthoscheme.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FacetRelations {
    #[serde(rename = "type")]
    pub ty: OrthoschemeType,
    pub adjacent: Vec<AdjacentPair>,
}

impl FacetRelations {
    pub fn facets(&self) -> Vec<usize> {
        self.ty.facets()
    }

    /// Relation between facets `i` and `j`, or `None` if either index is not
    /// a facet or `i == j`.
    pub fn relation(&self, i: usize, j: usize) -> Option<FacetRelation> {
        if i == j || !self.ty.is_facet(i) || !self.ty.is_facet(j) {
            return None;
        }
        Some(
            self.adjacent
                .iter()
                .find(|p| (p.first, p.second) == (i, j) || (p.first, p.second) == (j, i))
                .map(|p| p.relation)
                .unwrap_or(FacetRelation::Orthogonal),
        )
    }

    /// Dense relation matrix over [`Self::facets`].
    pub fn matrix(&self) -> Vec<Vec<Option<FacetRelation>>> {
        let f = self.facets();
        f.iter()
            .map(|&i| f.iter().map(|&j| self.relation(i, j)).collect())
            .collect()
    }
}

pub fn facet_relations(angles: &AngleList) -> Result<FacetRelations> {
    let ty = classify_type(angles)?;
    let a = angles.radians();
    let len = a.len();
    let adjacent = (0..len)
        .filter(|&k| ty.is_facet(k) && ty.is_facet((k + 1) % len))
        .map(|k| {
            let ratio = dihedral_ratio(a[k], a[(k + 1) % len], a[(k + 2) % len]);
            AdjacentPair {
                first: k,
                second: (k + 1) % len,
                ratio,
                relation: FacetRelation::from_ratio(ratio),
            }
        })
        .collect();
    Ok(FacetRelations { ty, adjacent })
}

/// Unoriented line through the origin in homogeneous coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineDir {
    pub x: f64,
    pub y: f64,
}

impl LineDir {
    pub fn from_angle(phi: f64) -> Self {
        LineDir {
            x: phi.cos(),
            y: phi.sin(),
        }
    }

    pub fn from_slope(s: Slope) -> Self {
        match s {
            Slope::Finite(m) => LineDir { x: 1.0, y: m },
            Slope::Infinity => LineDir { x: 0.0, y: 1.0 },
        }
    }

    fn unit(self) -> Self {
        let r = self.x.hypot(self.y);
        LineDir {
            x: self.x / r,
            y: self.y / r,
        }
    }

    /// Image under the linear map `[[a, b], [c, d]]`.
    pub fn mapped(self, m: [[f64; 2]; 2]) -> Self {
        LineDir {
            x: m[0][0] * self.x + m[0][1] * self.y,
            y: m[1][0] * self.x + m[1][1] * self.y,
        }
    }
}

fn det(p: LineDir, q: LineDir) -> f64 {
    p.x * q.y - p.y * q.x
}

/// Cross-ratio `[a,b,c,d] = (d-a)/(a-b) * (b-c)/(c-d)` of four lines,
/// evaluated on slopes in homogeneous form so vertical lines need no
/// special case.
pub fn cross_ratio(lines: [LineDir; 4]) -> Result<f64> {
    let [a, b, c, d] = lines.map(LineDir::unit);
    let all = [a, b, c, d];
    for i in 0..4 {
        for j in i + 1..4 {
            if det(all[i], all[j]).abs() <= 1e-12 {
                return Err(Error::RepeatedDirection);
            }
        }
    }
    Ok(det(a, d) * det(c, b) / (det(b, a) * det(d, c)))
}

/// `tan^2` of the dihedral angle between the facets of the middle two of
/// four consecutive normal lines, as minus their cross-ratio.
pub fn cross_ratio_angle(lines: [LineDir; 4]) -> Result<f64> {
    Ok(-cross_ratio(lines)?)
}

/// Label of an edge in a Coxeter diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "order", rename_all = "lowercase")]
pub enum EdgeLabel {
    /// Dihedral angle `pi / k`, `k >= 3`.
    Order(u32),
    /// Parallel facets.
    Infinity,
    /// Ultraparallel facets.
    Dashed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagramShape {
    Chain,
    Cycle,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoxeterDiagram {
    /// Facet indices (0-based).
    pub nodes: Vec<usize>,
    pub edges: Vec<(usize, usize, EdgeLabel)>,
    pub shape: DiagramShape,
}

impl CoxeterDiagram {
    /// Graphviz DOT rendering; nodes are named `F1 .. F(n+3)`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph coxeter {\n");
        for k in &self.nodes {
            let _ = writeln!(out, "  F{};", k + 1);
        }
        for (i, j, label) in &self.edges {
            let attrs = match label {
                EdgeLabel::Order(3) => String::new(),
                EdgeLabel::Order(k) => format!(" [label=\"{k}\"]"),
                EdgeLabel::Infinity => " [label=\"inf\"]".to_string(),
                EdgeLabel::Dashed => " [style=dashed]".to_string(),
            };
            let _ = writeln!(out, "  F{} -- F{}{};", i + 1, j + 1, attrs);
        }
        out.push_str("}\n");
        out
    }
}

/// `k` with `|theta - pi/k| <= tol` and `2 <= k <= kmax`, if any.
pub fn submultiple_of_pi(theta: f64, tol: f64, kmax: u32) -> Option<u32> {
    if theta <= 0.0 {
        return None;
    }
    let k = (PI / theta).round();
    if k < 2.0 || k > kmax as f64 {
        return None;
    }
    ((theta - PI / k).abs() <= tol).then_some(k as u32)
}

/// Coxeter diagram when every dihedral angle is `pi / k`.
pub fn coxeter_check(rel: &FacetRelations, tol: f64, kmax: u32) -> Option<CoxeterDiagram> {
    let mut edges = Vec::new();
    for pair in &rel.adjacent {
        let label = match pair.relation {
            FacetRelation::Orthogonal => continue,
            FacetRelation::Angle { theta } => match submultiple_of_pi(theta, tol, kmax)? {
                2 => continue,
                k => EdgeLabel::Order(k),
            },
            FacetRelation::Parallel => EdgeLabel::Infinity,
            FacetRelation::Ultraparallel { .. } => EdgeLabel::Dashed,
        };
        edges.push((pair.first, pair.second, label));
    }
    Some(CoxeterDiagram {
        nodes: rel.facets(),
        edges,
        shape: if rel.ty.kind == 3 {
            DiagramShape::Cycle
        } else {
            DiagramShape::Chain
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Compactness {
    pub compact: bool,
    /// Orthoschemes always have finite volume.
    pub finite_volume: bool,
    /// First and last index (0-based, cyclic, inclusive) of a run of
    /// consecutive angles summing to pi.
    pub witness: Option<(usize, usize)>,
}

/// Compact unless some run of consecutive angles sums to pi.
pub fn is_compact(angles: &AngleList) -> Compactness {
    let a = angles.angles();
    let len = a.len();
    let one = Rational::from_integer(1);
    for run in 1..len {
        for start in 0..len {
            let items = (0..run).map(|i| &a[(start + i) % len]);
            if compare_sum(items, one, SUBSET_TOL) == Ordering::Equal {
                return Compactness {
                    compact: false,
                    finite_volume: true,
                    witness: Some((start, (start + run - 1) % len)),
                };
            }
        }
    }
    Compactness {
        compact: true,
        finite_volume: true,
        witness: None,
    }
}

const BISECTION_TOL: f64 = 1e-12;
const ROUND_TRIP_TOL: f64 = 1e-8;

fn bisect(mut lo: f64, mut hi: f64, increasing: bool, f: impl Fn(f64) -> f64) -> f64 {
    while hi - lo > BISECTION_TOL * 1e-3 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) < 0.0) == increasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn seed_schedule() -> Vec<(f64, f64)> {
    let mut seeds = vec![
        (PI / 3.0, PI / 3.0),
        (PI / 2.0, PI / 3.0),
        (PI / 3.0, PI / 2.0),
        (PI / 2.0, PI / 2.0),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x4e61_7069_6572);
    while seeds.len() < 20 {
        let a = rng.random_range(0.0..PI);
        let b = rng.random_range(0.0..PI);
        if a > 0.0 && b > 0.0 && a + b < PI {
            seeds.push((a, b));
        }
    }
    seeds
}

fn check_napier(g: &DMatrix<f64>) -> Result<Vec<Character>> {
    let not = |reason: String| Err(Error::NotNapier { reason });
    if !g.is_square() {
        return not("matrix is not square".into());
    }
    let len = g.nrows();
    if len < 5 {
        return Err(Error::DimensionTooSmall {
            n: len.saturating_sub(3),
        });
    }
    let scale = g.amax();
    for i in 0..len {
        for j in 0..len {
            if (g[(i, j)] - g[(j, i)]).abs() > 1e-9 * scale {
                return not(format!("entries ({}, {}) are not symmetric", i + 1, j + 1));
            }
            let dist = (i + len - j) % len;
            let adjacent = dist == 1 || dist == len - 1;
            if adjacent && g[(i, j)] >= 0.0 {
                return not(format!("adjacent entry ({}, {}) is not negative", i + 1, j + 1));
            }
            if i != j && !adjacent && g[(i, j)].abs() > 1e-9 * scale {
                return not(format!("entry ({}, {}) off the cycle is not zero", i + 1, j + 1));
            }
        }
    }
    let chars: Vec<Character> = (0..len)
        .map(|k| {
            let d = g[(k, k)];
            if d > 1e-9 * scale {
                Character::Spacelike
            } else if d < -1e-9 * scale {
                Character::Timelike
            } else {
                Character::Lightlike
            }
        })
        .collect();
    let bad: Vec<usize> = (0..len)
        .filter(|&k| chars[k] != Character::Spacelike)
        .collect();
    let ok = match bad[..] {
        [] | [_] => true,
        [i, j] => j - i == 1 || (i == 0 && j == len - 1),
        _ => false,
    };
    if !ok {
        return not("non-spacelike vectors must be at most two and adjacent".into());
    }
    Ok(chars)
}

/// One pass of the angle sweep from seeds `(a0, a1)` on a cycle whose
/// non-spacelike vectors sit at the end.
fn sweep(g: &DMatrix<f64>, chars: &[Character], seed: (f64, f64)) -> Option<Vec<f64>> {
    let len = g.nrows();
    let mut a = vec![0.0; len];
    a[0] = seed.0;
    a[1] = seed.1;
    for k in 0..len - 2 {
        let (x, y) = (a[k], a[k + 1]);
        if chars[k] != Character::Spacelike || x + y >= PI {
            return None;
        }
        let target = g[(k, k + 1)] * g[(k, k + 1)];
        a[k + 2] = match chars[k + 1] {
            Character::Spacelike => bisect(0.0, PI - y, true, |c| dihedral_ratio(x, y, c) - target),
            Character::Lightlike => PI - y,
            Character::Timelike => bisect(PI - y, PI, false, |c| {
                x.sin() * c.sin() / ((x + y).sin() * (y + c).sin().abs()) - target
            }),
        };
        if !(a[k + 2] > 0.0 && a[k + 2] < PI) {
            return None;
        }
    }
    Some(a)
}

/// Recovers an angle list whose Napier cycle has the given Gram matrix.
///
/// `g` is the Gram matrix of the full cycle `u_1 .. u_{n+3}`, up to positive
/// rescaling of each vector (it is normalized internally). Rows of
/// non-spacelike vectors only enter through their sign pattern and, for a
/// timelike tail, the entry linking it to the last facet. The result is a
/// floating-point list, determined up to a projective change of the normal
/// lines; its normalized Gram entries between facets match `g` to `1e-8`.
pub fn angles_from_gram(g: &DMatrix<f64>) -> Result<AngleList> {
    let chars = check_napier(g)?;
    let g = normalize(g);
    let len = g.nrows();
    // rotate so that the non-spacelike vectors come last
    let shift = match (0..len).position(|k| chars[k] != Character::Spacelike) {
        None => 0,
        Some(first) => {
            let last = (0..len)
                .rev()
                .find(|&k| chars[k] != Character::Spacelike)
                .unwrap_or(first);
            // wrap-around pair {0, len-1} ends at 0
            let end = if first == 0 && last == len - 1 { 0 } else { last };
            (end + 1) % len
        }
    };
    let perm: Vec<usize> = (0..len).map(|i| (i + shift) % len).collect();
    let rg = DMatrix::from_fn(len, len, |i, j| g[(perm[i], perm[j])]);
    let rchars: Vec<Character> = perm.iter().map(|&k| chars[k]).collect();

    for seed in seed_schedule() {
        let Some(rot) = sweep(&rg, &rchars, seed) else {
            continue;
        };
        let total: f64 = rot.iter().sum();
        if (total - 2.0 * PI).abs() > ROUND_TRIP_TOL {
            continue;
        }
        // undo the rotation; a[k] sits between u[k-1] and u[k]
        let mut a = vec![0.0; len];
        for (i, &k) in perm.iter().enumerate() {
            a[k] = rot[i];
        }
        let last = len - 1;
        a[last] = 2.0 * PI - a[..last].iter().sum::<f64>();
        let Ok(list) = AngleList::from_radians(&a) else {
            continue;
        };
        if round_trip_matches(&list, &g, &chars) {
            return Ok(list);
        }
    }
    Err(Error::NoSolutionForSeed)
}

fn round_trip_matches(list: &AngleList, g: &DMatrix<f64>, chars: &[Character]) -> bool {
    let got = characters(list);
    if got != chars {
        return false;
    }
    let ng = GramMatrix::new(list).normalized();
    let len = g.nrows();
    (0..len).all(|i| {
        (0..len).all(|j| {
            chars[i] != Character::Spacelike
                || chars[j] != Character::Spacelike
                || (ng[(i, j)] - g[(i, j)]).abs() <= ROUND_TRIP_TOL
        })
    })
}
