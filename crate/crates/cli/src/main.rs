mod report;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use napier::angle::{Angle, AngleList, Slope, SlopeList};
use napier::census::{rational_search, reproduce_table};
use napier::cone_manifold::classify;
use napier::hermitian::{embedding_residual, unfold_double, HermitianMatrix};
use napier::linalg::ZERO_TOL;
use napier::mixed_area::{shoelace_area, polygon_vertices, SupportVector};
use serde_json::json;

#[derive(Parser)]
#[command(name = "napier", version, about = "Hyperbolic orthoschemes and cone-manifolds from polygon angles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Orthoscheme of an angle list: type, facet relations, Coxeter diagram.
    Orthoscheme {
        /// Comma-separated angles; p/q means p pi / q, decimals are radians.
        #[arg(long, value_delimiter = ',', required = true)]
        angles: Vec<Angle>,
        /// Write the Coxeter diagram as Graphviz DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Classify the glued cone-manifold.
    ConeManifold {
        #[arg(long, value_delimiter = ',', required = true)]
        angles: Vec<Angle>,
        #[arg(long)]
        json: bool,
    },
    /// Reproduce the Deligne-Mostow table; fails unless every row matches.
    Table {
        #[arg(long)]
        json: bool,
    },
    /// Search rational triples for cone angles 2 pi / k.
    Search {
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(i64).range(2..))]
        max_den: i64,
        #[arg(long, default_value_t = 100)]
        kmax: u32,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Orthoscheme from the slopes of consecutive normal lines.
    FromSlopes {
        /// Comma-separated slopes; `inf` is a vertical line.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required_unless_present = "preset", conflicts_with = "preset")]
        slopes: Vec<Slope>,
        #[arg(long, value_enum)]
        preset: Option<Preset>,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Complex area form on unfoldings of doubled polygons.
    Hermitian {
        #[arg(long, value_delimiter = ',', required = true)]
        angles: Vec<Angle>,
        /// Support numbers of a polygon to unfold (origin must be inside).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        heights: Option<Vec<f64>>,
        /// Write the unfolding as SVG (needs --heights).
        #[arg(long, requires = "heights")]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Tumarkin,
}

/// Output of a successful run: the stdout text plus files to write.
struct Output {
    stdout: String,
    files: Vec<(PathBuf, String)>,
}

type Failure = String;

fn angles(raw: Vec<Angle>) -> Result<AngleList, Failure> {
    AngleList::validate(raw).map_err(|e| e.to_string())
}

fn render(value: &serde_json::Value) -> String {
    let mut s = napier::json::to_string_pretty(value);
    s.push('\n');
    s
}

fn orthoscheme_output(a: &AngleList, dot: Option<PathBuf>, json: bool, prefix: String) -> Result<Output, Failure> {
    let rep = report::orthoscheme(a).map_err(|e| e.to_string())?;
    let mut files = Vec::new();
    if let Some(path) = dot {
        let d = rep.diagram.as_ref().ok_or("not a Coxeter orthoscheme; no diagram to write")?;
        files.push((path, d.to_dot()));
    }
    let stdout = if json { render(&rep.json) } else { prefix + &rep.text };
    Ok(Output { stdout, files })
}

fn run(cmd: Command) -> Result<(Output, bool), Failure> {
    let ok = |stdout: String| Ok((Output { stdout, files: vec![] }, true));
    match cmd {
        Command::Orthoscheme { angles: raw, dot, json } => {
            let a = angles(raw)?;
            Ok((orthoscheme_output(&a, dot, json, String::new())?, true))
        }
        Command::ConeManifold { angles: raw, json } => {
            let c = classify(&angles(raw)?).map_err(|e| e.to_string())?;
            ok(if json { render(&c.to_json()) } else { report::classification_text(&c) })
        }
        Command::Table { json } => {
            let r = reproduce_table().map_err(|e| e.to_string())?;
            let text = if json { render(&serde_json::to_value(&r).expect("report serializes")) } else { r.to_text() };
            Ok((Output { stdout: text, files: vec![] }, r.pass))
        }
        Command::Search { max_den, kmax, tol, json } => {
            let hits = rational_search(max_den, kmax, tol);
            if json {
                return ok(render(&serde_json::to_value(&hits).expect("hits serialize")));
            }
            let mut t = String::new();
            for h in &hits {
                let tri: Vec<String> = h.triple.iter().map(|a| a.to_string()).collect();
                let _ = writeln!(t, "({})  k = {}  cos(theta/2) = {:.12}", tri.join(", "), h.k, h.cos_half);
            }
            let _ = writeln!(t, "{} hit(s) with denominators up to {max_den}", hits.len());
            ok(t)
        }
        Command::FromSlopes { slopes, preset, dot, json } => {
            let list = match preset {
                Some(Preset::Tumarkin) => SlopeList::tumarkin(),
                None => SlopeList(slopes),
            };
            let a = list.to_angles().map_err(|e| e.to_string())?;
            let over_pi: Vec<String> = a.radians().iter().map(|x| format!("{:.6}", x / std::f64::consts::PI)).collect();
            let prefix = format!("angles / pi: {}\n", over_pi.join(", "));
            Ok((orthoscheme_output(&a, dot, json, prefix)?, true))
        }
        Command::Hermitian { angles: raw, heights, svg, json } => {
            let a = angles(raw)?;
            let m = HermitianMatrix::new(&a);
            let sig = m.signature(ZERO_TOL).map_err(|e| e.to_string())?;
            let residual = embedding_residual(&a);
            let mut doc = json!({
                "angles": a,
                "n": a.n(),
                "signature": sig,
                "embedding_residual": residual,
            });
            let mut t = format!("angles: {a}\nsignature: {sig}\nembedding residual: {residual:.3e}\n");
            let mut files = Vec::new();
            if let Some(h) = heights {
                let h = SupportVector(h);
                let u = unfold_double(&a, &h).map_err(|e| e.to_string())?;
                let area = shoelace_area(&polygon_vertices(&a, &h).map_err(|e| e.to_string())?);
                let value = m.form(&u.s, &u.s).re;
                let _ = writeln!(t, "polygon area: {area:.12}");
                let _ = writeln!(t, "unfolding area: {:.12}", u.area());
                let _ = writeln!(t, "M(s, s): {value:.12}");
                let _ = writeln!(t, "rotation residual: {:.3e}", u.rotation_residual());
                doc["polygon_area"] = json!(area);
                doc["unfolding_area"] = json!(u.area());
                doc["form_value"] = json!(value);
                doc["unfolding"] = serde_json::to_value(&u).expect("unfolding serializes");
                if let Some(path) = svg {
                    files.push((path, u.to_svg()));
                }
            }
            let stdout = if json { render(&doc) } else { t };
            Ok((Output { stdout, files }, true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((out, success)) => {
            for (path, body) in &out.files {
                if let Err(e) = fs::write(path, body) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::FAILURE;
                }
            }
            if success {
                print!("{}", out.stdout);
                ExitCode::SUCCESS
            } else {
                eprint!("{}", out.stdout);
                ExitCode::FAILURE
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
