#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};
use std::f64::consts::PI;

use napier::angle::AngleList;
use napier::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Components of the graph on all linear arrangements, joined by rotation
/// and by allowed swaps of cyclic neighbours.
pub fn brute_force_cover_components(a: &[f64]) -> usize {
    let len = a.len();
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..len {
        let mut grown = Vec::new();
        for p in &perms {
            for i in (0..len).filter(|i| !p.contains(i)) {
                let mut q = p.clone();
                q.push(i);
                grown.push(q);
            }
        }
        perms = grown;
    }
    let id: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut seen = vec![false; perms.len()];
    let mut count = 0;
    for root in 0..perms.len() {
        if seen[root] {
            continue;
        }
        count += 1;
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let p = &perms[v];
            let mut next = vec![p[1..].iter().chain(&p[..1]).copied().collect::<Vec<_>>()];
            for i in 0..len {
                let j = (i + 1) % len;
                if a[p[i]] + a[p[j]] < PI - 1e-12 {
                    let mut q = p.clone();
                    q.swap(i, j);
                    next.push(q);
                }
            }
            for q in next {
                let w = id[&q];
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    count
}

pub fn random_list(rng: &mut ChaCha8Rng, n: usize) -> AngleList {
    if rng.random_bool(0.5) {
        sample::angle_list(rng, n)
    } else {
        let den = [4, 6, 8, 12][rng.random_range(0..4)];
        sample::rational_angle_list(rng, n, den)
    }
}
