//! `pairwalk`: spectra, fidelity curves, transfer certificates, graph
//! constructions and verification suites from the command line.
//!
//! Exit status is 0 for a positive answer, 1 for a negative one and 2 for
//! usage or input errors.

mod expr;
mod verify;

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pairwalk_core::spectral::{fidelity, SpectralDecomposition};
use pairwalk_core::transfer::{find_pst, SearchOptions};
use pairwalk_core::{HamiltonianModel, RealPureState, WeightedGraph};

#[derive(Debug)]
enum Failure {
    Usage(String),
    Core(pairwalk_core::Error),
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure::Usage(msg.into())
    }
}

impl From<pairwalk_core::Error> for Failure {
    fn from(e: pairwalk_core::Error) -> Self {
        Failure::Core(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => f.write_str(m),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Parser)]
#[command(name = "pairwalk", version, about = "Continuous-time quantum walks on pair states")]
struct Cli {
    /// Hamiltonian: A (adjacency), L (Laplacian) or Q (signless Laplacian).
    #[arg(long, global = true, default_value = "A")]
    model: HamiltonianModel,
    /// Comparison tolerance (defaults depend on the command).
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distinct eigenvalues with multiplicities.
    Spectrum {
        /// Graph token (Kn, Pn, Cn, En, Km,n), JSON file or construction.
        graph: String,
    },
    /// CSV of |yᵀU(t)x| on an even grid of [0, t-max].
    Fidelity {
        graph: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = PI)]
        t_max: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
    },
    /// Perfect state transfer certificates from x to y (x = y checks periodicity).
    Pst {
        graph: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, default_value_t = 4.0 * PI)]
        window: f64,
    },
    /// Build a graph and print it as JSON.
    Construct {
        /// One of attach, complement, seqjoin, cartesian, vcorona, ecorona,
        /// ncorona, blowup, kn-minus-matching, kn-minus-cycle.
        kind: String,
        params: Vec<String>,
    },
    /// Run a verification suite (or `all`).
    Verify { suite: String },
}

/// `pair:a,b`, `spair:a,b,s`, `vertex:a`, or an explicit comma-separated vector.
fn parse_state(spec: &str, n: usize) -> Result<RealPureState, Failure> {
    let bad = || Failure::usage(format!("cannot read state '{spec}'"));
    let index = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let (kind, body) = spec.split_once(':').unwrap_or(("", spec));
    let parts: Vec<&str> = body.split(',').collect();
    let state = match (kind, parts.as_slice()) {
        ("pair", [a, b]) => RealPureState::pair(n, index(a)?, index(b)?)?,
        ("spair", [a, b, s]) => {
            let s = s.trim().parse::<f64>().map_err(|_| bad())?;
            RealPureState::s_pair(n, index(a)?, index(b)?, s)?
        }
        ("vertex", [a]) => RealPureState::vertex(n, index(a)?)?,
        ("", entries) => {
            let v = entries
                .iter()
                .map(|e| e.trim().parse::<f64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?;
            if v.len() != n {
                return Err(Failure::usage(format!("state '{spec}' has {} entries, graph has {n} vertices", v.len())));
            }
            RealPureState::from_slice(&v)?
        }
        _ => return Err(bad()),
    };
    Ok(state)
}

fn format_eigenvalue(v: f64) -> String {
    let r = v.round();
    if (v - r).abs() < 1e-9 {
        // also folds -0 into 0
        format!("{}", r as i64)
    } else {
        format!("{v:.9}")
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Core(e.into())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn decomposition(graph: &WeightedGraph, model: HamiltonianModel) -> Result<SpectralDecomposition, Failure> {
    Ok(SpectralDecomposition::of_graph(graph, model)?)
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Spectrum { graph } => {
            let d = decomposition(&expr::parse_graph(&graph)?, cli.model)?;
            let parts: Vec<String> = d
                .eigenvalues()
                .iter()
                .zip(d.multiplicities())
                .map(|(v, m)| format!("{} ({m})", format_eigenvalue(*v)))
                .collect();
            emit(&cli.out, &format!("{}\n", parts.join(", ")))?;
            Ok(true)
        }
        Command::Fidelity { graph, x, y, t_max, steps } => {
            if !(t_max.is_finite() && t_max >= 0.0) {
                return Err(Failure::usage("--t-max must be finite and non-negative"));
            }
            let g = expr::parse_graph(&graph)?;
            let (x, y) = (parse_state(&x, g.order())?, parse_state(&y, g.order())?);
            let d = decomposition(&g, cli.model)?;
            let steps = if t_max == 0.0 { 0 } else { steps.max(1) };
            let mut csv = String::from("t,fidelity\n");
            for k in 0..=steps {
                let t = if steps == 0 { 0.0 } else { t_max * k as f64 / steps as f64 };
                let _ = writeln!(csv, "{t:.9},{:.9}", fidelity(&d, t, &x, &y)?);
            }
            emit(&cli.out, &csv)?;
            Ok(true)
        }
        Command::Pst { graph, x, y, window } => {
            if !(window.is_finite() && window > 0.0) {
                return Err(Failure::usage("--window must be finite and positive"));
            }
            let g = expr::parse_graph(&graph)?;
            let (x, y) = (parse_state(&x, g.order())?, parse_state(&y, g.order())?);
            let d = decomposition(&g, cli.model)?;
            let mut opts = SearchOptions {
                window,
                ..SearchOptions::default()
            };
            if let Some(tol) = cli.tol {
                opts.exact_tol = tol;
                opts.numeric_tol = tol;
            }
            let certs = find_pst(&d, &x, &y, &opts)?;
            let json = serde_json::to_string_pretty(&certs).expect("certificates serialize");
            emit(&cli.out, &format!("{json}\n"))?;
            Ok(certs.iter().any(|c| c.verdict.is_positive()))
        }
        Command::Construct { kind, params } => {
            let g = expr::run_construct(&kind, &params)?;
            emit(&cli.out, &format!("{}\n", g.to_json_string()))?;
            Ok(true)
        }
        Command::Verify { suite } => {
            let settings = verify::Settings {
                seed: cli.seed,
                tol: cli.tol,
            };
            let reports = verify::run(&suite, &settings)?;
            for r in &reports {
                print!("{}", r.render());
            }
            if let Some(path) = &cli.out {
                let json = serde_json::to_string_pretty(&reports).expect("reports serialize");
                std::fs::write(path, json).map_err(|e| Failure::Core(e.into()))?;
            }
            Ok(reports.iter().all(verify::VerifySuiteReport::ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("pairwalk: {e}");
            ExitCode::from(2)
        }
    }
}
