//! Replays of the known results on named families plus seeded random instances.

mod families;
mod lemmas;

use std::fmt::Write as _;

use pairwalk_core::spectral::SpectralDecomposition;
use pairwalk_core::transfer::{check_pst_at, find_pst, SearchOptions};
use pairwalk_core::{HamiltonianModel, RealPureState, WeightedGraph};
use serde::Serialize;

use crate::Failure;

pub const SUITES: [&str; 10] = [
    "cluster-lemma",
    "complement-lemma",
    "attachment",
    "matching-removal",
    "edge-deleted",
    "cycle-removal",
    "permutations",
    "sequential-joins",
    "complements",
    "products",
];

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub seed: u64,
    /// Overrides each suite's comparison tolerance.
    pub tol: Option<f64>,
}

impl Settings {
    fn tol_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Case {
    pub id: usize,
    pub description: String,
    pub expected: String,
    pub verdict: String,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifySuiteReport {
    pub suite: String,
    pub cases: Vec<Case>,
    pub passed: usize,
    pub failed: usize,
}

impl VerifySuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let _ = writeln!(
                out,
                "{} {}/{:02} {} | expected: {} | got: {} | residual {:.3e}",
                if c.pass { "PASS" } else { "FAIL" },
                self.suite,
                c.id,
                c.description,
                c.expected,
                c.verdict,
                c.residual
            );
        }
        let _ = writeln!(out, "{}: {} passed, {} failed", self.suite, self.passed, self.failed);
        out
    }
}

#[derive(Default)]
struct Builder {
    cases: Vec<Case>,
}

impl Builder {
    fn push(&mut self, description: impl Into<String>, expected: impl Into<String>, verdict: impl Into<String>, residual: f64, pass: bool) {
        self.cases.push(Case {
            id: self.cases.len() + 1,
            description: description.into(),
            expected: expected.into(),
            verdict: verdict.into(),
            residual,
            pass,
        });
    }

    /// Case asserting PST from `x` to `y` at `tau`, with `tau` the first PST time found.
    fn pst_at(&mut self, description: impl Into<String>, d: &SpectralDecomposition, x: &RealPureState, y: &RealPureState, tau: f64, tol: f64) {
        let cert = check_pst_at(d, x, y, tau, tol).expect("valid states");
        let first = find_pst(d, x, y, &SearchOptions::default()).expect("valid states");
        let first_tau = first.iter().find(|c| c.is_pst()).and_then(|c| c.tau);
        let on_time = first_tau.is_some_and(|t| (t - tau).abs() < 1e-9);
        self.push(
            description,
            format!("PST first at {tau:.9}"),
            format!(
                "{} at {:.9}, first PST {}, arg(gamma)/pi {:.9}",
                cert.verdict.as_str(),
                tau,
                first_tau.map_or("none".into(), |t| format!("{t:.9}")),
                cert.gamma_arg_over_pi()
            ),
            cert.residual,
            cert.is_pst() && on_time,
        );
    }

    fn finish(self, suite: &str) -> VerifySuiteReport {
        let passed = self.cases.iter().filter(|c| c.pass).count();
        VerifySuiteReport {
            suite: suite.to_string(),
            failed: self.cases.len() - passed,
            passed,
            cases: self.cases,
        }
    }
}

fn dec(g: &WeightedGraph, m: HamiltonianModel) -> SpectralDecomposition {
    SpectralDecomposition::of_graph(g, m).expect("graph matrices are symmetric")
}

fn pair(n: usize, a: usize, b: usize) -> RealPureState {
    RealPureState::pair(n, a, b).expect("distinct in-range vertices")
}

pub fn run(suite: &str, settings: &Settings) -> Result<Vec<VerifySuiteReport>, Failure> {
    if suite == "all" {
        return SUITES.iter().map(|s| run_one(s, settings)).collect();
    }
    Ok(vec![run_one(suite, settings)?])
}

fn run_one(suite: &str, s: &Settings) -> Result<VerifySuiteReport, Failure> {
    let mut b = Builder::default();
    match suite {
        "cluster-lemma" => lemmas::cluster_lemma(&mut b, s),
        "complement-lemma" => lemmas::complement_lemma(&mut b, s),
        "attachment" => lemmas::attachment_equivalence(&mut b, s),
        "matching-removal" => families::matching_removal(&mut b, s),
        "edge-deleted" => families::edge_deleted(&mut b, s),
        "cycle-removal" => families::cycle_removal(&mut b, s),
        "permutations" => families::permutations(&mut b, s),
        "sequential-joins" => families::sequential_joins(&mut b, s),
        "complements" => lemmas::complements(&mut b, s),
        "products" => families::products(&mut b, s),
        _ => {
            return Err(Failure::usage(format!(
                "unknown suite '{suite}' (expected one of {}, all)",
                SUITES.join(", ")
            )))
        }
    }
    Ok(b.finish(suite))
}
