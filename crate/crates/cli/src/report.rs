// SPDX-License-Identifier: Apache-2.0

//! The `report` subcommand: affine data, fidelity and the optimal correction.

use std::fmt::Write as _;

use qubit_qi::quasi_inverse::{q_form, quasi_inverse};
use qubit_qi::{avg_fidelity, tol, QubitChannel};
use serde::{Deserialize, Serialize};

use crate::error::CliResult;
use crate::spec::ChannelSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Optimizer {
    pub x0: f64,
    pub x: [f64; 3],
    /// `φ` in `V = exp(iφ n̂·σ)`.
    pub angle: f64,
    /// `None` for the identity.
    pub axis: Option<[f64; 3]>,
    pub correction: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub spec: ChannelSpec,
    /// The channel as an explicit Kraus list.
    pub channel: ChannelSpec,
    pub trace_preservation_residual: f64,
    pub m: [[f64; 3]; 3],
    pub t: [f64; 3],
    pub b: [[f64; 3]; 3],
    pub v: [f64; 3],
    pub q: [[f64; 4]; 4],
    pub q_eigenvalues: [f64; 4],
    pub fidelity_before: f64,
    pub fidelity_after: f64,
    pub lambda_max: f64,
    pub delta_f: f64,
    pub optimizer: Optimizer,
    pub degenerate: bool,
    pub gap: f64,
}

fn rows<const R: usize, const C: usize>(m: &nalgebra::SMatrix<f64, R, C>) -> [[f64; C]; R] {
    std::array::from_fn(|r| std::array::from_fn(|c| m[(r, c)]))
}

fn vec3(v: &nalgebra::Vector3<f64>) -> [f64; 3] {
    [v[0], v[1], v[2]]
}

pub fn build_report(spec: &ChannelSpec, ch: &QubitChannel) -> CliResult<Report> {
    let q = q_form(ch)?;
    let qi = quasi_inverse(ch, tol::DEGENERACY)?;
    let cf = qubit_qi::channel::affine_closed_form(ch);
    let affine = ch.affine();
    Ok(Report {
        spec: spec.clone(),
        channel: ChannelSpec::from_channel(ch),
        trace_preservation_residual: ch.tp_residual(),
        m: rows(&affine.m),
        t: vec3(&affine.t),
        b: rows(&cf.b),
        v: vec3(&q.v),
        q: rows(&q.q),
        q_eigenvalues: [qi.eigenvalues[0], qi.eigenvalues[1], qi.eigenvalues[2], qi.eigenvalues[3]],
        fidelity_before: avg_fidelity(ch)?,
        fidelity_after: qi.f_after,
        lambda_max: qi.lambda_max,
        delta_f: qi.delta_f,
        optimizer: Optimizer {
            x0: qi.v_opt.x0(),
            x: vec3(qi.v_opt.x()),
            angle: qi.v_opt.angle(),
            axis: qi.v_opt.axis().map(|a| vec3(&a)),
            correction: qi.correction().label().to_string(),
        },
        degenerate: qi.degenerate,
        gap: qi.gap,
    })
}

fn fmt_row(row: &[f64]) -> String {
    let cells: Vec<String> = row.iter().map(|x| format!("{:>10.6}", clean(*x))).collect();
    format!("[{}]", cells.join(" "))
}

fn clean(x: f64) -> f64 {
    if x.abs() < 5e-16 { 0.0 } else { x }
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "affine map r -> M r + t");
        for (i, row) in self.m.iter().enumerate() {
            let t = if i == 0 { format!("   t = {}", fmt_row(&self.t)) } else { String::new() };
            let _ = writeln!(s, "  M {}{t}", fmt_row(row));
        }
        let _ = writeln!(s, "B");
        for row in &self.b {
            let _ = writeln!(s, "    {}", fmt_row(row));
        }
        let _ = writeln!(s, "v   {}", fmt_row(&self.v));
        let _ = writeln!(s, "Q");
        for row in &self.q {
            let _ = writeln!(s, "    {}", fmt_row(row));
        }
        let _ = writeln!(s, "eigenvalues of Q {}", fmt_row(&self.q_eigenvalues));
        let _ = writeln!(s, "average fidelity  {:.6} -> {:.6}", self.fidelity_before, self.fidelity_after);
        let _ = writeln!(s, "lambda_max        {:.6}", clean(self.lambda_max));
        let _ = writeln!(s, "delta F           {:.6}", self.delta_f);
        let o = &self.optimizer;
        let _ = writeln!(s, "optimal V = x0 + i x.sigma, (x0, x) = ({:.6}, {})", clean(o.x0), fmt_row(&o.x));
        match o.axis {
            Some(axis) => {
                let _ = writeln!(
                    s,
                    "  {}: V = exp(i phi n.sigma), phi {:.6}, Bloch rotation {:.6} pi about n = {}",
                    o.correction,
                    o.angle,
                    2.0 * o.angle / std::f64::consts::PI,
                    fmt_row(&axis)
                );
            }
            None => {
                let _ = writeln!(s, "  identity: no unitary improves the fidelity");
            }
        }
        let _ = writeln!(s, "degenerate        {} (gap {:.3e})", self.degenerate, self.gap);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::parse_channel_spec;

    fn report(text: &str) -> Report {
        let (spec, ch) = parse_channel_spec(text).unwrap();
        build_report(&spec, &ch).unwrap()
    }

    #[test]
    fn pauli_report() {
        let r = report(r#"{"kind":"pauli","p":[0.1,0.6,0.2,0.1]}"#);
        assert!((r.fidelity_before - 0.4).abs() < 1e-12);
        assert!((r.fidelity_after - 2.2 / 3.0).abs() < 1e-12);
        assert_eq!(r.optimizer.correction, "pi_rotation");
        let axis = r.optimizer.axis.unwrap();
        assert!((axis[0] - 1.0).abs() < 1e-12);
        assert!(r.to_text().contains("0.400000 -> 0.733333"));
    }

    #[test]
    fn identity_report() {
        let r = report(r#"{"kind":"diagonal","lambda":[1,1,1]}"#);
        assert_eq!(r.fidelity_before, 1.0);
        assert_eq!(r.optimizer.correction, "identity");
        assert!(r.optimizer.axis.is_none());
    }

    #[test]
    fn twisted_damping_report() {
        let r = report(r#"{"kind":"amplitude_damping","gamma":0.6,"twisted":true}"#);
        assert!((r.delta_f - 0.2).abs() < 1e-12);
        assert!((r.optimizer.angle - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
        assert!((r.optimizer.axis.unwrap()[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let r = report(r#"{"kind":"mixed_rotation","p":0.2,"theta":1.0}"#);
        let text = serde_json::to_string(&r).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        let original = r.spec.build().unwrap();
        let rebuilt = back.channel.build().unwrap();
        assert!(original.affine().max_difference(rebuilt.affine()) < 1e-9);
    }
}
