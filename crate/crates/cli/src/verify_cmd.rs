//! The `verify` subcommand: the invariant suite over seeded random matrices.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use torus_bundle::verify::{check_theta, random_thetas, tally, Tally, ThetaOutcome, ENTRY_BOUND};
use torus_bundle::GluingMatrix;

/// Prefix of lines that vary between runs (wall-clock time).
pub const TIMING_PREFIX: &str = "timing:";

#[derive(Debug, Clone, Serialize)]
pub struct VerifyRun {
    pub seed: u64,
    pub samples: usize,
    pub tally: Tally,
    pub fallbacks: Vec<GluingMatrix>,
}

impl VerifyRun {
    pub fn passed(&self) -> bool {
        self.tally.all_passed()
    }
}

/// `theta` replaces the random family by `samples` copies of one matrix.
pub fn run_verify(seed: u64, samples: usize, theta: Option<GluingMatrix>) -> VerifyRun {
    let thetas = match theta {
        Some(t) => vec![t; samples],
        None => random_thetas(seed, samples),
    };
    let outcomes: Vec<ThetaOutcome> = thetas.par_iter().map(check_theta).collect();
    let fallbacks = outcomes
        .iter()
        .filter(|o| o.lattice_fallback)
        .map(|o| o.theta)
        .collect();
    VerifyRun {
        seed,
        samples,
        tally: tally(&outcomes),
        fallbacks,
    }
}

pub fn render_text(run: &VerifyRun) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "verify: seed {}, samples {}, entries in [-{ENTRY_BOUND}, {ENTRY_BOUND}], det ±1",
        run.seed, run.samples
    );
    for t in &run.fallbacks {
        let (m1, n1, m2, n2) = t.quadruple();
        let _ = writeln!(
            s,
            "note: no table row for θ = {t}, (m1, n1, m2, n2) = ({m1}, {n1}, {m2}, {n2}); lattice E used and verified"
        );
    }
    s.push_str(&run.tally.to_string());
    let _ = writeln!(s, "result: {}", if run.passed() { "PASS" } else { "FAIL" });
    s
}
