//! The 36 Deligne-Mostow angle lists with their expected structure, and a
//! search over rational triples for cone angles of the form `2 pi / k`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::angle::{Angle, AngleList, Rational};
use crate::cone_manifold::{classify_with, stratum_cos_half, Tolerances, Verdict};
use crate::error::Result;

/// One row of the Deligne-Mostow table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    /// Thurston's index of the row.
    pub thurston_id: u32,
    pub angles: AngleList,
    pub expected: Verdict,
}

impl TableRow {
    pub fn n(&self) -> usize {
        self.angles.n()
    }
}

const ROWS: &[(u32, &[(i64, i64)], char)] = &[
    (3, &[(1, 4), (1, 4), (1, 4), (1, 4), (1, 4), (1, 4), (1, 4), (1, 4)], 'C'),
    (4, &[(1, 2), (1, 4), (1, 4), (1, 4), (1, 4), (1, 4), (1, 4)], 'C'),
    (1, &[(1, 3), (1, 3), (1, 3), (1, 3), (1, 3), (1, 3)], 'M'),
    (5, &[(3, 4), (1, 4), (1, 4), (1, 4), (1, 4), (1, 4)], 'C'),
    (6, &[(1, 2), (1, 2), (1, 4), (1, 4), (1, 4), (1, 4)], 'C'),
    (39, &[(1, 2), (1, 6), (1, 3), (1, 3), (1, 3), (1, 3)], 'C'),
    (44, &[(1, 8), (3, 8), (3, 8), (3, 8), (3, 8), (3, 8)], 'C'),
    (66, &[(7, 12), (5, 12), (1, 4), (1, 4), (1, 4), (1, 4)], 'C'),
    (67, &[(5, 12), (5, 12), (5, 12), (1, 4), (1, 4), (1, 4)], 'C'),
    (2, &[(2, 3), (1, 3), (1, 3), (1, 3), (1, 3)], 'M'),
    (7, &[(1, 2), (3, 4), (1, 4), (1, 4), (1, 4)], 'C'),
    (8, &[(1, 2), (1, 2), (1, 2), (1, 4), (1, 4)], 'M'),
    (9, &[(2, 5), (2, 5), (2, 5), (2, 5), (2, 5)], 'M'),
    (40, &[(5, 6), (1, 6), (1, 3), (1, 3), (1, 3)], 'C'),
    (41, &[(2, 3), (1, 3), (1, 3), (1, 2), (1, 6)], 'C'),
    (42, &[(1, 2), (1, 2), (1, 2), (1, 3), (1, 6)], 'M'),
    (43, &[(1, 2), (1, 2), (1, 3), (1, 3), (1, 3)], 'M'),
    (45, &[(3, 4), (1, 8), (3, 8), (3, 8), (3, 8)], 'C'),
    (46, &[(5, 8), (5, 8), (1, 4), (1, 4), (1, 4)], 'C'),
    (47, &[(1, 2), (3, 8), (3, 8), (3, 8), (3, 8)], 'M'),
    (48, &[(2, 9), (4, 9), (4, 9), (4, 9), (4, 9)], 'M'),
    (49, &[(1, 10), (7, 10), (2, 5), (2, 5), (2, 5)], 'C'),
    (57, &[(2, 3), (1, 12), (5, 12), (5, 12), (5, 12)], 'C'),
    (65, &[(7, 12), (7, 12), (1, 6), (1, 3), (1, 3)], 'C'),
    (68, &[(5, 6), (5, 12), (1, 4), (1, 4), (1, 4)], 'C'),
    (69, &[(2, 3), (7, 12), (1, 4), (1, 4), (1, 4)], 'C'),
    (70, &[(2, 3), (5, 12), (5, 12), (1, 4), (1, 4)], 'O'),
    (71, &[(7, 12), (5, 12), (1, 2), (1, 4), (1, 4)], 'O'),
    (72, &[(1, 2), (1, 4), (5, 12), (5, 12), (5, 12)], 'M'),
    (73, &[(7, 12), (5, 12), (1, 3), (1, 3), (1, 3)], 'M'),
    (74, &[(1, 2), (1, 3), (1, 3), (5, 12), (5, 12)], 'M'),
    (75, &[(1, 3), (5, 12), (5, 12), (5, 12), (5, 12)], 'M'),
    (78, &[(4, 15), (8, 15), (2, 5), (2, 5), (2, 5)], 'M'),
    (79, &[(1, 18), (11, 18), (4, 9), (4, 9), (4, 9)], 'C'),
    (85, &[(7, 10), (11, 20), (1, 4), (1, 4), (1, 4)], 'C'),
    (89, &[(7, 12), (7, 24), (3, 8), (3, 8), (3, 8)], 'M'),
];

pub fn dm_table() -> Vec<TableRow> {
    ROWS.iter()
        .map(|&(id, fracs, s)| TableRow {
            thurston_id: id,
            angles: AngleList::from_pi_fractions(fracs).expect("table rows are valid"),
            expected: Verdict::from_letter(s).expect("table letters are M, O or C"),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowReport {
    pub thurston_id: u32,
    pub n: usize,
    pub angles: AngleList,
    pub expected: Verdict,
    pub computed: Verdict,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableReport {
    pub rows: Vec<RowReport>,
    pub matched: usize,
    pub total: usize,
    pub pass: bool,
}

impl TableReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let width = self
            .rows
            .iter()
            .map(|r| r.angles.to_string().len())
            .max()
            .unwrap_or(6)
            .max(6);
        let _ = writeln!(out, "{:>3}  {:>3}  {:<width$}  {}  {}", "n", "T", "Angles", "S", "expected");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:>3}  {:>3}  {:<width$}  {}  {}{}",
                r.n,
                r.thurston_id,
                r.angles.to_string(),
                r.computed.letter(),
                r.expected.letter(),
                if r.matches { "" } else { "  MISMATCH" }
            );
        }
        let _ = writeln!(out, "{}/{} rows match", self.matched, self.total);
        out
    }
}

/// Classifies every table row with the given tolerances.
pub fn reproduce_table_with(tol: Tolerances) -> Result<TableReport> {
    let rows: Vec<RowReport> = dm_table()
        .par_iter()
        .map(|row| {
            let c = classify_with(&row.angles, tol)?;
            Ok(RowReport {
                thurston_id: row.thurston_id,
                n: row.n(),
                angles: row.angles.clone(),
                expected: row.expected,
                computed: c.verdict,
                matches: c.verdict == row.expected,
            })
        })
        .collect::<Result<_>>()?;
    let matched = rows.iter().filter(|r| r.matches).count();
    let total = rows.len();
    Ok(TableReport {
        rows,
        matched,
        total,
        pass: matched == total,
    })
}

pub fn reproduce_table() -> Result<TableReport> {
    reproduce_table_with(Tolerances::default())
}

/// Triple of rationals (multiples of pi) whose stratum has cone angle
/// `2 pi / k` with `k >= 2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchHit {
    pub triple: [Angle; 3],
    pub k: u32,
    pub cos_half: f64,
}

fn fractions(max_den: i64) -> Vec<Rational> {
    let mut out: Vec<Rational> = (2..=max_den)
        .flat_map(|q| (1..q).filter(move |p| p.gcd(&q) == 1).map(move |p| Rational::new(p, q)))
        .collect();
    out.sort();
    out
}

/// `k` in `2..=kmax` with `|value - cos(pi/k)| <= tol`.
fn match_cos(value: f64, kmax: u32, tol: f64) -> Option<u32> {
    if !(-tol..1.0).contains(&value) {
        return None;
    }
    let guess = (PI / value.clamp(-1.0, 1.0).acos()).round() as i64;
    (guess - 1..=guess + 1)
        .filter(|&k| k >= 2 && k <= kmax as i64)
        .find(|&k| (value - (PI / k as f64).cos()).abs() <= tol)
        .map(|k| k as u32)
}

/// Unordered triples `p/q` (lowest terms, `q <= max_den`) with exact sum
/// below 1 whose stratum cone angle is `2 pi / k` for some `2 <= k <= kmax`.
pub fn rational_search(max_den: i64, kmax: u32, tol: f64) -> Vec<SearchHit> {
    assert!(max_den >= 2, "max_den must be at least 2");
    let fr = fractions(max_den);
    let one = Rational::from_integer(1);
    let mut hits: Vec<(usize, usize, usize, SearchHit)> = (0..fr.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let fr = &fr;
            let mut local = Vec::new();
            for j in i..fr.len() {
                if fr[i] + fr[j] + fr[j] >= one {
                    break;
                }
                for k in j..fr.len() {
                    if fr[i] + fr[j] + fr[k] >= one {
                        break;
                    }
                    let [a, b, c] = [fr[i], fr[j], fr[k]].map(|r| PI * *r.numer() as f64 / *r.denom() as f64);
                    let value = stratum_cos_half(a, b, c);
                    if let Some(m) = match_cos(value, kmax, tol) {
                        let triple = [fr[i], fr[j], fr[k]].map(|r| Angle::pi_fraction(*r.numer(), *r.denom()));
                        local.push((i, j, k, SearchHit { triple, k: m, cos_half: value }));
                    }
                }
            }
            local
        })
        .collect();
    hits.sort_by_key(|h| (h.0, h.1, h.2));
    hits.into_iter().map(|h| h.3).collect()
}
