//! End-to-end acceptance checks, one line per criterion.

mod common;

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use napier::angle::{Angle, SlopeList};
use napier::census::{rational_search, reproduce_table, reproduce_table_with};
use napier::cone_manifold::{double_cover_components, stratum_angle, stratum_cos_half, Tolerances};
use napier::hermitian::{embedding_residual, HermitianMatrix};
use napier::linalg::{Signature, ZERO_TOL};
use napier::mixed_area::{minkowski_defect, GramMatrix, NormalFan, SupportVector};
use napier::orthoscheme::{
    coxeter_check, cross_ratio_angle, dihedral_ratio, facet_relations, is_compact, FacetRelation, LineDir,
    COXETER_KMAX, COXETER_TOL,
};
use napier::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn table() -> Outcome {
    let start = Instant::now();
    let report = reproduce_table().map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let bad: Vec<u32> = report.rows.iter().filter(|r| !r.matches).map(|r| r.thurston_id).collect();
    check(report.pass, || format!("mismatched rows {bad:?}"))?;
    check(elapsed < Duration::from_secs(10), || format!("took {}", secs(elapsed)))?;
    for factor in [0.1, 10.0] {
        let tol = Tolerances {
            match_tol: Tolerances::default().match_tol * factor,
            ..Tolerances::default()
        };
        let drifted = reproduce_table_with(tol).map_err(|e| e.to_string())?;
        check(drifted.pass, || format!("verdicts move when tolerance is scaled by {factor}"))?;
    }
    Ok(format!("{}/{} rows in {}", report.matched, report.total, secs(elapsed)))
}

fn signature_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5167);
    let mut count = 0;
    for n in 0..=9 {
        for _ in 0..50 {
            let a = sample::angle_list(&mut rng, n);
            let want = Signature::new(1, 2, n);
            let real = GramMatrix::new(&a).signature(ZERO_TOL).map_err(|e| e.to_string())?;
            let complex = HermitianMatrix::new(&a).signature(ZERO_TOL).map_err(|e| e.to_string())?;
            check(real == want, || format!("real form of {a} has {real}"))?;
            check(complex == want, || format!("Hermitian form of {a} has {complex}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} lists, n = 0..9, real and Hermitian (1, 2, n)"))
}

fn embedding() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xe3b);
    let mut worst = 0.0_f64;
    for i in 0..500 {
        let a = sample::angle_list(&mut rng, i % 10);
        let scale = 2.0 * GramMatrix::new(&a).matrix().amax();
        let r = embedding_residual(&a) / scale;
        worst = worst.max(r);
        check(r <= 1e-10, || format!("{a}: relative residual {r:e}"))?;
    }
    Ok(format!("500 lists, worst relative residual {worst:.2e}"))
}

fn search() -> Outcome {
    let start = Instant::now();
    let hits = rational_search(12, 100, 1e-9);
    let elapsed = start.elapsed();
    let found: Vec<String> = hits
        .iter()
        .map(|h| format!("({}) -> {}", h.triple.map(|a| a.to_string()).join(", "), h.k))
        .collect();
    check(found == ["(1/4, 1/4, 5/12) -> 2"], || format!("hits {found:?}"))?;
    check(elapsed < Duration::from_secs(60), || format!("took {}", secs(elapsed)))?;
    Ok(format!("{} in {}", found[0], secs(elapsed)))
}

fn tumarkin() -> Outcome {
    let a = SlopeList::tumarkin().to_angles().map_err(|e| e.to_string())?;
    let rel = facet_relations(&a).map_err(|e| e.to_string())?;
    check(a.n() == 5, || format!("dimension {}", a.n()))?;
    check(rel.ty.kind == 3, || format!("type {}", rel.ty.kind))?;
    check(is_compact(&a).compact, || "not compact".into())?;
    let diagram = coxeter_check(&rel, COXETER_TOL, COXETER_KMAX).ok_or("not Coxeter")?;
    Ok(format!("dimension 5, type 3, compact, Coxeter with {} edges", diagram.edges.len()))
}

fn pentagon() -> Outcome {
    let a = "2/5,2/5,2/5,2/5,2/5".parse().map_err(|e: napier::Error| e.to_string())?;
    let rel = facet_relations(&a).map_err(|e| e.to_string())?;
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    for i in 0..5 {
        for j in 0..5 {
            if i == j {
                continue;
            }
            let r = rel.relation(i, j).ok_or("missing facet")?;
            let adjacent = (i + 1) % 5 == j || (j + 1) % 5 == i;
            match (adjacent, r) {
                (true, FacetRelation::Ultraparallel { distance }) => {
                    let err = (distance.cosh() - golden).abs();
                    check(err <= 1e-12, || format!("cosh d off by {err:e} at ({i},{j})"))?
                }
                (false, FacetRelation::Orthogonal) => {}
                _ => return Err(format!("facets ({i},{j}): {r:?}")),
            }
        }
    }
    Ok("adjacent cosh d = golden ratio, others orthogonal".into())
}

/// Independent arccos sum with each angle in turn in the middle.
fn arccos_sum(a: f64, b: f64, c: f64) -> f64 {
    let theta = |x: f64, m: f64, y: f64| (x.sin() * y.sin() / ((x + m).sin() * (m + y).sin())).sqrt().acos();
    2.0 * (theta(b, a, c) + theta(a, b, c) + theta(a, c, b))
}

fn stratum() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x57a7);
    let mut worst = 0.0_f64;
    let mut done = 0;
    while done < 1000 {
        let [a, b, c] = [0; 3].map(|_| rng.random_range(0.0..PI));
        if a <= 0.0 || b <= 0.0 || c <= 0.0 || a + b + c >= PI {
            continue;
        }
        let theta = arccos_sum(a, b, c);
        let err = ((theta / 2.0).cos() - stratum_cos_half(a, b, c)).abs();
        worst = worst.max(err);
        check(err <= 1e-9, || format!("({a}, {b}, {c}): {err:e}"))?;
        let lib = stratum_angle(Angle::radians(a), Angle::radians(b), Angle::radians(c)).map_err(|e| e.to_string())?;
        check((lib - theta).abs() <= 1e-9, || format!("library angle differs at ({a}, {b}, {c})"))?;
        done += 1;
    }
    let q = Angle::pi_fraction(1, 4);
    let half = stratum_angle(q, q, Angle::pi_fraction(5, 12)).map_err(|e| e.to_string())?;
    check((half - PI).abs() <= 1e-12, || format!("theta(1/4, 1/4, 5/12) = {half}"))?;
    Ok(format!("1000 triples, worst {worst:.1e}; (1/4, 1/4, 5/12) gives pi"))
}

fn connectivity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xbf5);
    let mut split = 0;
    for i in 0..200 {
        let a = common::random_list(&mut rng, 2 + i % 2);
        let bfs = common::brute_force_cover_components(&a.radians());
        let criterion = double_cover_components(&a).map_err(|e| e.to_string())?.components as usize;
        check(bfs == criterion, || format!("{a}: BFS {bfs}, criterion {criterion}"))?;
        split += (bfs == 2) as usize;
    }
    Ok(format!("200 lists agree ({split} disconnected)"))
}

fn minkowski() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3171);
    let mut worst_neg = 0.0_f64;
    let mut worst_eq = 0.0_f64;
    for i in 0..1000 {
        let a = sample::angle_list(&mut rng, i % 8);
        let p = sample::convex_heights(&mut rng, &a);
        let q = sample::convex_heights(&mut rng, &a);
        let g = GramMatrix::new(&a);
        let scale = (g.form(&p, &p) * g.form(&q, &q)).abs();
        let d = minkowski_defect(&a, &p, &q).map_err(|e| e.to_string())? / scale;
        worst_neg = worst_neg.min(d);
        check(d >= -1e-10, || format!("{a}: defect {d:e}"))?;

        let fan = NormalFan::new(&a);
        let lambda = rng.random_range(0.2..5.0);
        let moved = p.scaled(lambda).plus(&SupportVector::of_point(&fan, sample::point(&mut rng)));
        let scale = (g.form(&p, &p) * g.form(&moved, &moved)).abs();
        let d = minkowski_defect(&a, &p, &moved).map_err(|e| e.to_string())?.abs() / scale;
        worst_eq = worst_eq.max(d);
        check(d <= 1e-12, || format!("{a}: homothetic defect {d:e}"))?;
    }
    Ok(format!("1000 pairs, min {worst_neg:.1e}, homothety max {worst_eq:.1e}"))
}

fn cross_ratio() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc7);
    let mut done = 0;
    let mut worst = 0.0_f64;
    while done < 500 {
        let n = rng.random_range(2..9);
        let a = sample::angle_list(&mut rng, n);
        let rel = facet_relations(&a).map_err(|e| e.to_string())?;
        let r = a.radians();
        let phi = NormalFan::new(&a).directions().to_vec();
        let len = r.len();
        for pair in &rel.adjacent {
            if !matches!(pair.relation, FacetRelation::Angle { .. }) || done == 500 {
                continue;
            }
            let k = pair.first;
            let ratio = dihedral_ratio(r[k], r[(k + 1) % len], r[(k + 2) % len]);
            let tan2 = 1.0 / ratio - 1.0;
            let lines = [len - 1, 0, 1, 2].map(|d| LineDir::from_angle(phi[(k + d) % len]));
            let cr = cross_ratio_angle(lines).map_err(|e| e.to_string())?;
            let err = (tan2 - cr).abs() / tan2.max(1.0);
            worst = worst.max(err);
            check(err <= 1e-9, || format!("{a} pair {k}: {tan2} vs {cr}"))?;
            done += 1;
        }
    }
    Ok(format!("500 facet pairs, worst {worst:.1e}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("table reproduction", table),
        ("signature law", signature_law),
        ("embedding identity", embedding),
        ("rational search", search),
        ("Tumarkin pipeline", tumarkin),
        ("pentagon fixture", pentagon),
        ("stratum-angle consistency", stratum),
        ("connectivity oracle", connectivity),
        ("Minkowski inequality", minkowski),
        ("cross-ratio identity", cross_ratio),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
