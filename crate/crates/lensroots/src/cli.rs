//! Command-line surface: solve, sweep, verify, plot.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::families::{example_f, phi_t, polynomial_from_value, psi_t, rhie3, BifurcationSpec, Variant};
use crate::mixedpoly::MixedPolynomial;
use crate::plot::{render_svg, PlotSpec};
use crate::solver::{solve_all, RootReport, Sign};
use crate::verify::run_suite;

#[derive(Parser)]
#[command(name = "lensroots", version, about = "Isolated roots of mixed polynomials f(z, zbar): counts, signs, certification")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find all isolated roots of a polynomial and report rho, beta, class.
    Solve {
        /// Input JSON file, or a built-in name (rhie3, example).
        input: String,
        /// Also write the root table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Also write the full report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Track roots of a phi/psi family along a geometric ladder of t values.
    Sweep {
        /// Sweep spec JSON file.
        spec: PathBuf,
        /// Output trajectory CSV.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a named invariant suite; JUnit XML on stdout, lines on stderr.
    Verify {
        /// Suite name: paper-goldens or beta-random.
        suite: String,
    },
    /// Render the zero curves of Re f (green) and Im f (red) as SVG.
    Plot {
        /// Input JSON file, or a built-in name (rhie3, example).
        input: String,
        /// Window as x0,x1,y0,y1.
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        /// Lattice nodes per axis.
        #[arg(long, default_value_t = 600)]
        samples: u32,
        /// Output SVG path.
        #[arg(long)]
        out: PathBuf,
        /// Mark the computed roots on the figure.
        #[arg(long)]
        roots: bool,
    },
}

/// Runs the CLI and returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    run_command(cli.command)
}

fn run_command(command: Command) -> i32 {
    let outcome = match command {
        Command::Solve { input, csv, json } => cmd_solve(&input, csv.as_deref(), json.as_deref()),
        Command::Sweep { spec, out } => cmd_sweep(&spec, &out),
        Command::Verify { suite } => cmd_verify(&suite),
        Command::Plot { input, window, samples, out, roots } => {
            cmd_plot(&input, &window, samples, &out, roots)
        }
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NonIsolated => 2,
        Error::Malformed(_) | Error::Io(_) => 3,
        _ => 4,
    }
}

fn sig15(x: f64) -> String {
    format!("{x:.14e}")
}

/// A built-in family name or a polynomial/family JSON file.
pub fn load_polynomial(input: &str) -> Result<MixedPolynomial> {
    match input {
        "rhie3" => Ok(rhie3()),
        "example" => Ok(example_f()),
        path => {
            let text = fs::read_to_string(path)?;
            let v: Value = serde_json::from_str(&text)?;
            polynomial_from_value(&v)
        }
    }
}

fn roots_csv(report: &RootReport) -> String {
    let mut out = String::from("re,im,sign,jacobian,residual\n");
    for r in &report.roots {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            sig15(r.location.re),
            sig15(r.location.im),
            r.sign.as_str(),
            sig15(r.jacobian),
            sig15(r.residual)
        ));
    }
    out
}

fn cmd_solve(input: &str, csv: Option<&Path>, json: Option<&Path>) -> Result<i32> {
    let f = load_polynomial(input)?;
    let report = solve_all(&f)?;
    if let Some(path) = csv {
        fs::write(path, roots_csv(&report))?;
    }
    if let Some(path) = json {
        fs::write(path, report.to_json())?;
    }
    println!("rho={} beta={} class={}", report.rho, report.beta, report.class);
    Ok(if report.degenerate_found { 1 } else { 0 })
}

#[derive(Deserialize)]
struct SweepSpecRepr {
    family: SweepFamilyRepr,
    t_values: TValuesRepr,
    #[serde(default)]
    prepend_zero: bool,
    /// Optional x0,x1,y0,y1 filter: only roots inside get trajectory rows.
    #[serde(default)]
    window: Option<[f64; 4]>,
}

#[derive(Deserialize)]
struct SweepFamilyRepr {
    family: String,
    params: SweepParamsRepr,
}

#[derive(Deserialize)]
struct SweepParamsRepr {
    base: Value,
    m: u32,
}

#[derive(Deserialize)]
struct TValuesRepr {
    start: f64,
    ratio: f64,
    count: u32,
}

struct TrackedRoot {
    id: usize,
    location: Complex64,
    sign: Sign,
}

/// Greedy nearest-neighbor matching against the previous step, never
/// pairing roots of different sign. Unmatched roots get fresh ids.
fn assign_ids(
    prev: &[TrackedRoot],
    current: &[(Complex64, Sign)],
    next_id: &mut usize,
) -> Vec<usize> {
    let mut pairs = Vec::new();
    for (ci, &(z, sign)) in current.iter().enumerate() {
        for (pi, p) in prev.iter().enumerate() {
            if p.sign == sign {
                pairs.push(((z - p.location).norm(), ci, pi));
            }
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut ids = vec![usize::MAX; current.len()];
    let mut prev_used = vec![false; prev.len()];
    for (_, ci, pi) in pairs {
        if ids[ci] == usize::MAX && !prev_used[pi] {
            ids[ci] = prev[pi].id;
            prev_used[pi] = true;
        }
    }
    for id in ids.iter_mut() {
        if *id == usize::MAX {
            *id = *next_id;
            *next_id += 1;
        }
    }
    ids
}

fn cmd_sweep(spec_path: &Path, out: &Path) -> Result<i32> {
    let text = fs::read_to_string(spec_path)?;
    let repr: SweepSpecRepr =
        serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("bad sweep spec: {e}")))?;
    let variant = match repr.family.family.as_str() {
        "phi" => Variant::Phi,
        "psi" => Variant::Psi,
        other => {
            return Err(Error::Malformed(format!(
                "sweep family must be phi or psi, got {other:?}"
            )))
        }
    };
    if repr.t_values.count < 1 {
        return Err(Error::Malformed("t_values.count must be >= 1".into()));
    }
    if repr.t_values.start == 0.0 || repr.t_values.ratio == 0.0 {
        return Err(Error::Malformed("t_values start and ratio must be nonzero".into()));
    }
    if let Some([x0, x1, y0, y1]) = repr.window {
        if !(x0 < x1 && y0 < y1) {
            return Err(Error::Malformed("sweep window must satisfy x0<x1, y0<y1".into()));
        }
    }
    let base = polynomial_from_value(&repr.family.params.base)?;
    let m = repr.family.params.m;

    let mut ts = Vec::new();
    if repr.prepend_zero {
        ts.push(0.0f64);
    }
    let mut t = repr.t_values.start;
    for _ in 0..repr.t_values.count {
        ts.push(t);
        t *= repr.t_values.ratio;
    }

    let in_window = |z: Complex64| match repr.window {
        Some([x0, x1, y0, y1]) => z.re >= x0 && z.re <= x1 && z.im >= y0 && z.im <= y1,
        None => true,
    };

    let mut rows = String::from("row,t,id,re,im,sign,rho,beta,note\n");
    let mut prev: Vec<TrackedRoot> = Vec::new();
    let mut next_id = 0usize;
    for &tv in &ts {
        let tc = Complex64::new(tv, 0.0);
        let step = BifurcationSpec::new(base.clone(), m, tc, variant).and_then(|spec| {
            let f = match variant {
                Variant::Phi => phi_t(&spec)?,
                Variant::Psi => psi_t(&spec)?,
            };
            solve_all(&f)
        });
        match step {
            Err(e) => {
                let note = e.to_string().replace(',', ";");
                rows.push_str(&format!("error,{},,,,,,,{note}\n", sig15(tv)));
            }
            Ok(report) => {
                let current: Vec<(Complex64, Sign)> = report
                    .roots
                    .iter()
                    .filter(|r| in_window(r.location))
                    .map(|r| (r.location, r.sign))
                    .collect();
                let ids = assign_ids(&prev, &current, &mut next_id);
                for (&(z, sign), &id) in current.iter().zip(&ids) {
                    rows.push_str(&format!(
                        "root,{},{id},{},{},{},,,\n",
                        sig15(tv),
                        sig15(z.re),
                        sig15(z.im),
                        sign.as_str()
                    ));
                }
                let note = if report.degenerate_found { "degenerate" } else { "" };
                rows.push_str(&format!(
                    "summary,{},,,,,{},{},{note}\n",
                    sig15(tv),
                    report.rho,
                    report.beta
                ));
                prev = current
                    .iter()
                    .zip(&ids)
                    .map(|(&(z, sign), &id)| TrackedRoot { id, location: z, sign })
                    .collect();
            }
        }
    }
    fs::write(out, rows)?;
    Ok(0)
}

fn cmd_verify(suite: &str) -> Result<i32> {
    let result = run_suite(suite)?;
    for c in &result.cases {
        if c.passed {
            eprintln!("PASS {}", c.name);
        } else {
            eprintln!("FAIL {}: {}", c.name, c.detail);
        }
    }
    print!("{}", result.junit_xml());
    Ok(if result.passed() { 0 } else { 1 })
}

fn parse_window(text: &str) -> Result<(f64, f64, f64, f64)> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Malformed(format!("bad window {text:?}: {e}")))?;
    if parts.len() != 4 {
        return Err(Error::Malformed(format!(
            "window needs four numbers x0,x1,y0,y1, got {}",
            parts.len()
        )));
    }
    Ok((parts[0], parts[1], parts[2], parts[3]))
}

fn cmd_plot(input: &str, window: &str, samples: u32, out: &Path, roots: bool) -> Result<i32> {
    let f = load_polynomial(input)?;
    let spec = PlotSpec {
        window: parse_window(window)?,
        samples,
        show_roots: roots,
    };
    let markers;
    let marker_slice = if roots {
        markers = solve_all(&f)?.roots;
        Some(markers.as_slice())
    } else {
        None
    };
    let svg = render_svg(&f, &spec, marker_slice)?;
    fs::write(out, svg)?;
    Ok(0)
}
