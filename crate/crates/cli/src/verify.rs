// SPDX-License-Identifier: Apache-2.0

//! The `verify` subcommand: closed forms against the sampling oracles and
//! against each other.

use std::fmt::Write as _;

use qubit_qi::channel::choi_of;
use qubit_qi::fidelity::{composed_avg_fidelity, mc_avg_fidelity, FidelityRoutes};
use qubit_qi::quasi_inverse::{brute_force_best_unitary, quasi_inverse, QForm};
use qubit_qi::{tol, QubitChannel};
use serde::{Deserialize, Serialize};

use crate::error::CliResult;

pub const DEFAULT_MC_SAMPLES: usize = 100_000;
pub const DEFAULT_BF_SAMPLES: usize = 100_000;
pub const REFINE_STEPS: usize = 100;
pub const MC_SIGMAS: f64 = 4.0;
pub const BF_TOLERANCE: f64 = 1e-5;
pub const BF_OVERSHOOT: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub seed: u64,
    pub mc_samples: usize,
    pub bf_samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 0, mc_samples: DEFAULT_MC_SAMPLES, bf_samples: DEFAULT_BF_SAMPLES }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verification {
    pub checks: Vec<Check>,
    pub delta_f: f64,
    pub brute_force_delta_f: f64,
    pub degenerate: bool,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let _ = writeln!(s, "{} {:<22} {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        if self.degenerate {
            let _ = writeln!(s, "note: the top eigenvalue of Q is degenerate; the optimizer is not unique");
        }
        s
    }
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check { name: name.to_string(), passed, detail }
}

pub fn verify(ch: &QubitChannel, opts: &VerifyOptions) -> CliResult<Verification> {
    let slack = 4.0 * ch.tp_residual();
    let mut checks = Vec::new();

    let choi = choi_of(ch)?.report();
    checks.push(check(
        "complete_positivity",
        choi.completely_positive,
        format!("min Choi eigenvalue {:.3e}", choi.min_eigenvalue),
    ));

    let spread = FidelityRoutes::of(ch).spread();
    checks.push(check(
        "fidelity_routes",
        spread <= tol::FIDELITY_ROUTES + slack,
        format!("closed forms spread {spread:.3e}"),
    ));

    let q_diff = (QForm::from_kraus_data(ch).q - QForm::from_affine(ch.affine()).q).amax();
    checks.push(check("q_routes", q_diff <= tol::ALGEBRAIC + slack, format!("Kraus vs affine Q {q_diff:.3e}")));

    let qi = quasi_inverse(ch, tol::DEGENERACY)?;
    let composed = composed_avg_fidelity(&qi.correction_map(), ch.affine());
    let diff = (composed - qi.f_after).abs();
    checks.push(check(
        "corrected_fidelity",
        diff <= tol::FIDELITY_ROUTES + slack,
        format!("F after {:.12} vs composed {composed:.12}", qi.f_after),
    ));

    let mc = mc_avg_fidelity(ch, opts.mc_samples, opts.seed)?;
    let z = mc.z_score(qi.f_before);
    checks.push(check(
        "monte_carlo",
        z < MC_SIGMAS,
        format!(
            "F = {:.8}, MC {:.8} ± {:.2e} ({} samples, {z:.2} sigma)",
            qi.f_before, mc.mean, mc.stderr, mc.samples
        ),
    ));

    let bf = brute_force_best_unitary(ch, opts.bf_samples, REFINE_STEPS, opts.seed)?;
    let gap = qi.delta_f - bf.delta_f;
    checks.push(check(
        "brute_force",
        (-BF_OVERSHOOT..BF_TOLERANCE).contains(&gap),
        format!("delta F = {:.10}, brute force {:.10} ({} samples)", qi.delta_f, bf.delta_f, opts.bf_samples),
    ));

    Ok(Verification { checks, delta_f: qi.delta_f, brute_force_delta_f: bf.delta_f, degenerate: qi.degenerate })
}
