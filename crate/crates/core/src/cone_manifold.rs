//! The cone-manifold `R(alpha)` glued from one orthoscheme per cyclic
//! ordering of the angles: gluing graph, double-cover connectivity,
//! codimension-2 strata and the manifold / orbifold / cone-manifold verdict.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::f64::consts::PI;

use serde::Serialize;
use serde_json::{json, Value};

use crate::angle::{compare_with_pi, Angle, AngleList};
use crate::error::{Error, Result};

/// Tolerance on `theta = 2 pi / k` when matching strata.
pub const MATCH_TOL: f64 = 1e-9;
/// Largest `k` accepted in `theta = 2 pi / k`.
pub const MAX_K: u32 = 10_000;
/// Largest `n` for which gluing graphs are built explicitly.
pub const MAX_GRAPH_N: usize = 7;

const RATIO_SLACK: f64 = 1e-9;
const CLOSED_FORM_TOL: f64 = 1e-9;

fn require_dimension(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::DimensionTooSmall { n });
    }
    Ok(())
}

/// Number of orthoschemes glued into `R`, `(n+2)!/2`.
pub fn element_count(n: usize) -> Result<u128> {
    require_dimension(n)?;
    Ok((1..=(n as u128 + 2)).product::<u128>() / 2)
}

/// Canonical cyclic ordering of the indices `0..n+3`, rotated so index 0
/// comes first and, when reflections are allowed, read in the direction
/// that makes the second entry smaller than the last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrderingId(Vec<u8>);

impl OrderingId {
    pub fn canonical(order: &[u8], reflections: bool) -> Self {
        let len = order.len();
        let start = order.iter().position(|&x| x == 0).expect("index 0 present");
        let mut v: Vec<u8> = (0..len).map(|i| order[(start + i) % len]).collect();
        if reflections && len > 2 && v[1] > v[len - 1] {
            v[1..].reverse();
        }
        OrderingId(v)
    }

    pub fn indices(&self) -> &[u8] {
        &self.0
    }

    /// Angle list in this order.
    pub fn apply(&self, angles: &AngleList) -> AngleList {
        let order: Vec<usize> = self.0.iter().map(|&i| i as usize).collect();
        angles.permuted(&order)
    }
}

/// Orderings joined when they differ by swapping two cyclically adjacent
/// entries `i, j` with `alpha_i + alpha_j < pi`.
#[derive(Debug, Clone)]
pub struct GluingGraph {
    pub nodes: Vec<OrderingId>,
    pub adjacency: Vec<Vec<usize>>,
}

impl GluingGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Number of connected components, by breadth-first search.
    pub fn components(&self) -> usize {
        let mut seen = vec![false; self.nodes.len()];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for root in 0..self.nodes.len() {
            if seen[root] {
                continue;
            }
            count += 1;
            seen[root] = true;
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        count
    }
}

fn permutations_fixing_first(len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut rest: Vec<u8> = (1..len as u8).collect();
    fn heap(k: usize, rest: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if k <= 1 {
            let mut v = vec![0u8];
            v.extend_from_slice(rest);
            out.push(v);
            return;
        }
        for i in 0..k {
            heap(k - 1, rest, out);
            let j = if k % 2 == 0 { i } else { 0 };
            rest.swap(j, k - 1);
        }
    }
    let k = rest.len();
    heap(k, &mut rest, &mut out);
    out
}

fn build_graph(angles: &AngleList, reflections: bool) -> Result<GluingGraph> {
    let n = angles.n();
    require_dimension(n)?;
    if n > MAX_GRAPH_N {
        return Err(Error::GraphTooLarge { n });
    }
    let len = angles.len();
    let a = angles.angles();
    let mut nodes: Vec<OrderingId> = permutations_fixing_first(len)
        .into_iter()
        .map(|p| OrderingId::canonical(&p, reflections))
        .collect();
    nodes.sort();
    nodes.dedup();
    let index: HashMap<&OrderingId, usize> = nodes.iter().enumerate().map(|(i, o)| (o, i)).collect();
    let mut adjacency = vec![Vec::new(); nodes.len()];
    for (v, node) in nodes.iter().enumerate() {
        let order = node.indices();
        for p in 0..len {
            let q = (p + 1) % len;
            let (i, j) = (order[p] as usize, order[q] as usize);
            if compare_with_pi([&a[i], &a[j]]) != Ordering::Less {
                continue;
            }
            let mut swapped = order.to_vec();
            swapped.swap(p, q);
            let w = index[&OrderingId::canonical(&swapped, reflections)];
            if w != v && !adjacency[v].contains(&w) {
                adjacency[v].push(w);
            }
        }
    }
    for row in &mut adjacency {
        row.sort_unstable();
    }
    Ok(GluingGraph { nodes, adjacency })
}

/// Gluing graph of `R`: orderings up to rotation and reflection.
pub fn gluing_graph(angles: &AngleList) -> Result<GluingGraph> {
    build_graph(angles, true)
}

/// Gluing graph of the double cover: orderings up to rotation only.
pub fn double_cover_graph(angles: &AngleList) -> Result<GluingGraph> {
    build_graph(angles, false)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverComponents {
    pub components: u8,
    /// Three indices (0-based) whose pairwise sums are all at least pi.
    pub witness: Option<[usize; 3]>,
}

/// The double cover splits exactly when three angles have pairwise sums
/// `>= pi`.
pub fn double_cover_components(angles: &AngleList) -> Result<CoverComponents> {
    require_dimension(angles.n())?;
    let a = angles.angles();
    let big = |i: usize, j: usize| compare_with_pi([&a[i], &a[j]]) != Ordering::Less;
    let len = a.len();
    for i in 0..len {
        for j in i + 1..len {
            if !big(i, j) {
                continue;
            }
            for k in j + 1..len {
                if big(j, k) && big(i, k) {
                    return Ok(CoverComponents {
                        components: 2,
                        witness: Some([i, j, k]),
                    });
                }
            }
        }
    }
    Ok(CoverComponents {
        components: 1,
        witness: None,
    })
}

/// Dihedral angle between the two facets meeting around middle angle `m`.
fn middle_angle(x: f64, m: f64, y: f64) -> Result<f64> {
    let ratio = x.sin() * y.sin() / ((x + m).sin() * (m + y).sin());
    if !(ratio <= 1.0 + RATIO_SLACK) || ratio < 0.0 {
        return Err(Error::RatioOutOfRange { ratio });
    }
    Ok(ratio.min(1.0).sqrt().acos())
}

/// Closed form of `cos(theta / 2)` for the stratum of a triple.
pub fn stratum_cos_half(a: f64, b: f64, c: f64) -> f64 {
    let (sa, sb, sc) = (a.sin(), b.sin(), c.sin());
    let num = sa * sb * sc - (a + b + c).sin() * (sa * sb + sb * sc + sc * sa);
    num / ((a + b).sin() * (b + c).sin() * (c + a).sin())
}

/// Total cone angle around the stratum of a triple with `a + b + c < pi`:
/// twice the sum of the three dihedral angles, each taken with one of the
/// angles in the middle. Cross-checked against [`stratum_cos_half`].
pub fn stratum_angle(a: Angle, b: Angle, c: Angle) -> Result<f64> {
    if compare_with_pi([&a, &b, &c]) != Ordering::Less {
        let sum = a.to_radians() + b.to_radians() + c.to_radians();
        return Err(Error::TripleSumNotBelowPi {
            sum_over_pi: sum / PI,
        });
    }
    let (x, y, z) = (a.to_radians(), b.to_radians(), c.to_radians());
    let ta = middle_angle(y, x, z)?;
    let tb = middle_angle(x, y, z)?;
    let tc = middle_angle(x, z, y)?;
    debug_assert!(ta <= PI / 2.0 && tb <= PI / 2.0 && tc <= PI / 2.0);
    let theta = 2.0 * (ta + tb + tc);
    let delta = ((theta / 2.0).cos() - stratum_cos_half(x, y, z)).abs();
    if delta > CLOSED_FORM_TOL {
        return Err(Error::ClosedFormMismatch { delta });
    }
    Ok(theta)
}

/// Matching tolerances for cone angles `2 pi / k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub match_tol: f64,
    pub max_k: u32,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            match_tol: MATCH_TOL,
            max_k: MAX_K,
        }
    }
}

/// `k` with `theta = 2 pi / k`, `1 <= k <= MAX_K`, if any.
pub fn match_cone_angle(theta: f64) -> Option<u32> {
    match_cone_angle_with(theta, Tolerances::default())
}

pub fn match_cone_angle_with(theta: f64, tol: Tolerances) -> Option<u32> {
    if (theta / 2.0).cos().abs() <= 1e-12 {
        return Some(2);
    }
    if theta <= 0.0 {
        return None;
    }
    let k = (2.0 * PI / theta).round();
    if k < 1.0 || k > tol.max_k as f64 {
        return None;
    }
    ((theta - 2.0 * PI / k).abs() <= tol.match_tol).then_some(k as u32)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StratumReport {
    /// Indices (0-based, increasing) of the three angles.
    pub triple: [usize; 3],
    pub angles: [Angle; 3],
    pub theta: f64,
    pub matched_k: Option<u32>,
}

/// Singular codimension-2 strata (triples summing below pi) and the ideal
/// triples summing to exactly pi.
pub fn strata(angles: &AngleList) -> Result<(Vec<StratumReport>, Vec<[usize; 3]>)> {
    strata_with(angles, Tolerances::default())
}

pub fn strata_with(angles: &AngleList, tol: Tolerances) -> Result<(Vec<StratumReport>, Vec<[usize; 3]>)> {
    require_dimension(angles.n())?;
    let a = angles.angles();
    let len = a.len();
    let mut singular = Vec::new();
    let mut ideal = Vec::new();
    for i in 0..len {
        for j in i + 1..len {
            for k in j + 1..len {
                match compare_with_pi([&a[i], &a[j], &a[k]]) {
                    Ordering::Less => {
                        let theta = stratum_angle(a[i], a[j], a[k])?;
                        singular.push(StratumReport {
                            triple: [i, j, k],
                            angles: [a[i], a[j], a[k]],
                            theta,
                            matched_k: match_cone_angle_with(theta, tol),
                        });
                    }
                    Ordering::Equal => ideal.push([i, j, k]),
                    Ordering::Greater => {}
                }
            }
        }
    }
    Ok((singular, ideal))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    Manifold,
    Orbifold,
    ConeManifold,
}

impl Verdict {
    /// Single-letter code used in the Deligne-Mostow table.
    pub fn letter(self) -> char {
        match self {
            Verdict::Manifold => 'M',
            Verdict::Orbifold => 'O',
            Verdict::ConeManifold => 'C',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'M' => Some(Verdict::Manifold),
            'O' => Some(Verdict::Orbifold),
            'C' => Some(Verdict::ConeManifold),
            _ => None,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Manifold => "Manifold",
            Verdict::Orbifold => "Orbifold",
            Verdict::ConeManifold => "ConeManifold",
        };
        f.write_str(s)
    }
}

pub fn verdict_of(strata: &[StratumReport]) -> Verdict {
    if strata.iter().all(|s| s.matched_k == Some(1)) {
        Verdict::Manifold
    } else if strata.iter().all(|s| s.matched_k.is_some()) {
        Verdict::Orbifold
    } else {
        Verdict::ConeManifold
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub angles: AngleList,
    pub verdict: Verdict,
    pub compact: bool,
    /// A subset of indices (0-based) summing to pi, when not compact.
    pub witness_noncompact: Option<Vec<usize>>,
    pub double_cover: CoverComponents,
    pub strata: Vec<StratumReport>,
    pub ideal_triples: Vec<[usize; 3]>,
}

pub fn classify(angles: &AngleList) -> Result<Classification> {
    classify_with(angles, Tolerances::default())
}

pub fn classify_with(angles: &AngleList, tol: Tolerances) -> Result<Classification> {
    let double_cover = double_cover_components(angles)?;
    let (strata, ideal_triples) = strata_with(angles, tol)?;
    let witness_noncompact = angles.subset_sum_pi();
    Ok(Classification {
        angles: angles.clone(),
        verdict: verdict_of(&strata),
        compact: witness_noncompact.is_none(),
        witness_noncompact,
        double_cover,
        strata,
        ideal_triples,
    })
}

fn one_based(ix: &[usize]) -> Vec<usize> {
    ix.iter().map(|i| i + 1).collect()
}

impl Classification {
    /// Strata with distinct angle multisets, first occurrence of each.
    pub fn distinct_strata(&self) -> Vec<(&StratumReport, usize)> {
        let mut out: Vec<(&StratumReport, usize)> = Vec::new();
        let key = |s: &StratumReport| {
            let mut v = s.angles.to_vec();
            v.sort_by(|x, y| x.cmp_value(y));
            v
        };
        for s in &self.strata {
            let ks = key(s);
            let same = |t: &StratumReport| {
                key(t)
                    .iter()
                    .zip(&ks)
                    .all(|(x, y)| x.cmp_value(y) == Ordering::Equal)
            };
            match out.iter_mut().find(|(t, _)| same(t)) {
                Some(entry) => entry.1 += 1,
                None => out.push((s, 1)),
            }
        }
        out
    }

    /// JSON document with 1-based indices.
    pub fn to_json(&self) -> Value {
        let strata: Vec<Value> = self
            .distinct_strata()
            .into_iter()
            .map(|(s, count)| {
                json!({
                    "triple": one_based(&s.triple),
                    "angles": s.angles,
                    "theta": s.theta,
                    "k": s.matched_k,
                    "count": count,
                })
            })
            .collect();
        json!({
            "angles": self.angles,
            "n": self.angles.n(),
            "verdict": self.verdict,
            "compact": self.compact,
            "witness_noncompact": self.witness_noncompact.as_deref().map(one_based),
            "double_cover_components": self.double_cover.components,
            "double_cover_witness": self.double_cover.witness.map(|w| one_based(&w)),
            "strata": strata,
            "ideal_triples": self.ideal_triples.iter().map(|t| one_based(t)).collect::<Vec<_>>(),
        })
    }
}
