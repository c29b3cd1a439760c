// SPDX-License-Identifier: Apache-2.0

//! Parameter sweeps over the two families with a two-dimensional phase
//! diagram, written as CSV.
//!
//! Grids are given as `name=start:end:steps` pairs separated by commas, e.g.
//! `p=0:1/3:101,theta=0:2pi:101`. Bounds accept decimals, fractions and
//! multiples of `pi`.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::str::FromStr;

use qubit_qi::channel::{make_mixed_rotation, make_tetrahedron_pair};
use qubit_qi::quasi_inverse::quasi_inverse;
use qubit_qi::{tol, QubitChannel};
use rayon::prelude::*;

use crate::error::{CliError, CliResult};

const DOMAIN_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    MixedRotation,
    Tetrahedron,
}

impl FromStr for Family {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "mixed_rotation" => Ok(Family::MixedRotation),
            "tetrahedron" => Ok(Family::Tetrahedron),
            other => Err(CliError::Usage(format!(
                "unknown family `{other}` (expected mixed_rotation or tetrahedron)"
            ))),
        }
    }
}

impl Family {
    pub fn parameters(&self) -> [&'static str; 2] {
        match self {
            Family::MixedRotation => ["p", "theta"],
            Family::Tetrahedron => ["p", "p_prime"],
        }
    }

    pub fn default_grid(&self) -> SweepGrid {
        SweepGrid::parse(*self, "").expect("default grids are valid")
    }

    fn range(&self, name: &str) -> (f64, f64) {
        match (self, name) {
            (Family::MixedRotation, "p") => (0.0, 1.0 / 3.0),
            (Family::MixedRotation, _) => (0.0, 2.0 * PI),
            (Family::Tetrahedron, _) => (0.0, 0.5),
        }
    }

    fn in_domain(&self, a: f64, b: f64) -> bool {
        match self {
            Family::MixedRotation => true,
            Family::Tetrahedron => a + b <= 0.5 + DOMAIN_SLACK,
        }
    }

    fn channel(&self, a: f64, b: f64) -> qubit_qi::Result<QubitChannel> {
        match self {
            Family::MixedRotation => make_mixed_rotation(a, b),
            Family::Tetrahedron => make_tetrahedron_pair(a, b),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridAxis {
    pub name: String,
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

impl GridAxis {
    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.steps {
            self.end
        } else {
            self.start + (self.end - self.start) * i as f64 / (self.steps - 1) as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub family: Family,
    /// In the family's parameter order.
    pub axes: [GridAxis; 2],
}

/// `1/3`, `2pi`, `pi/2`, `0.25`, `2*pi`.
pub fn parse_number(s: &str) -> CliResult<f64> {
    let bad = || CliError::Usage(format!("cannot parse number `{s}`"));
    let factor = |t: &str| -> CliResult<f64> {
        let t = t.trim();
        if let Some(prefix) = t.strip_suffix("pi") {
            let prefix = prefix.trim_end_matches('*').trim();
            let k = if prefix.is_empty() { 1.0 } else { prefix.parse::<f64>().map_err(|_| bad())? };
            Ok(k * PI)
        } else {
            t.parse::<f64>().map_err(|_| bad())
        }
    };
    let value = match s.split_once('/') {
        Some((num, den)) => factor(num)? / factor(den)?,
        None => factor(s)?,
    };
    if value.is_finite() { Ok(value) } else { Err(bad()) }
}

fn parse_axis(family: Family, part: &str) -> CliResult<(usize, GridAxis)> {
    let names = family.parameters();
    let malformed = || CliError::Usage(format!("grid entry `{part}` is not name=start:end:steps"));
    let (name, range) = part.split_once('=').ok_or_else(malformed)?;
    let slot = names.iter().position(|n| *n == name.trim()).ok_or_else(|| {
        CliError::Usage(format!("unknown parameter `{name}`; {family:?} takes {names:?}"))
    })?;
    let fields: Vec<&str> = range.split(':').collect();
    let [start, end, steps] = fields[..] else {
        return Err(malformed());
    };
    let steps: usize = steps.trim().parse().map_err(|_| CliError::Usage(format!("bad step count `{steps}`")))?;
    if steps < 2 {
        return Err(CliError::Usage(format!("{name}: step count must be at least 2, got {steps}")));
    }
    let axis = GridAxis { name: names[slot].to_string(), start: parse_number(start)?, end: parse_number(end)?, steps };
    let (lo, hi) = family.range(names[slot]);
    for x in [axis.start, axis.end] {
        if x < lo - DOMAIN_SLACK || x > hi + DOMAIN_SLACK {
            return Err(CliError::Usage(format!(
                "{}: {x} lies outside the family's domain [{lo}, {hi}]",
                axis.name
            )));
        }
    }
    Ok((slot, axis))
}

impl SweepGrid {
    /// Parameters missing from `text` take their default range.
    pub fn parse(family: Family, text: &str) -> CliResult<Self> {
        let defaults = match family {
            Family::MixedRotation => ["p=0:1/3:101", "theta=0:2pi:101"],
            Family::Tetrahedron => ["p=0:1/2:201", "p_prime=0:1/2:201"],
        };
        let mut axes = defaults.map(|d| parse_axis(family, d).expect("default axes are valid").1);
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (slot, axis) = parse_axis(family, part)?;
            axes[slot] = axis;
        }
        Ok(SweepGrid { family, axes })
    }
}

/// One grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub params: [f64; 2],
    pub f_before: f64,
    pub delta_f: f64,
    pub f_after: f64,
    pub lambda_max: f64,
    pub phi: f64,
    pub axis: [f64; 3],
    pub region: &'static str,
    pub degenerate: bool,
}

fn evaluate(family: Family, a: f64, b: f64) -> CliResult<SweepRow> {
    let ch = family.channel(a, b)?;
    let qi = quasi_inverse(&ch, tol::DEGENERACY)?;
    let axis = qi.v_opt.axis().map(|n| [n[0], n[1], n[2]]).unwrap_or([0.0; 3]);
    Ok(SweepRow {
        params: [a, b],
        f_before: qi.f_before,
        delta_f: qi.delta_f,
        f_after: qi.f_after,
        lambda_max: qi.lambda_max,
        phi: qi.v_opt.angle(),
        axis,
        region: qi.correction().label(),
        degenerate: qi.degenerate,
    })
}

/// Rows in row-major order over the grid (first parameter outermost),
/// skipping points outside the family's domain.
pub fn sweep(grid: &SweepGrid) -> CliResult<Vec<SweepRow>> {
    let [outer, inner] = &grid.axes;
    let rows: Vec<Vec<SweepRow>> = (0..outer.steps)
        .into_par_iter()
        .map(|i| {
            let a = outer.value(i);
            (0..inner.steps)
                .map(|j| inner.value(j))
                .filter(|&b| grid.family.in_domain(a, b))
                .map(|b| evaluate(grid.family, a, b))
                .collect::<CliResult<Vec<SweepRow>>>()
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(rows.into_iter().flatten().collect())
}

/// `%.12g`: 12 significant digits, trailing zeros dropped, no negative zero.
pub fn format_g12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x.is_infinite() { format!("{x}") } else { "0".into() };
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let out = if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs())
    };
    if out.chars().all(|c| matches!(c, '-' | '0' | '.')) { "0".into() } else { out }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s.to_string() }
}

pub fn to_csv(grid: &SweepGrid, rows: &[SweepRow]) -> String {
    let [a, b] = grid.family.parameters();
    let mut out = format!(
        "{a},{b},f_before,delta_f,f_after,lambda_max,phi,axis_x,axis_y,axis_z,region,degenerate\n"
    );
    for r in rows {
        let nums = [
            r.params[0], r.params[1], r.f_before, r.delta_f, r.f_after, r.lambda_max, r.phi, r.axis[0], r.axis[1],
            r.axis[2],
        ];
        for x in nums {
            out.push_str(&format_g12(x));
            out.push(',');
        }
        let _ = writeln!(out, "{},{}", r.region, r.degenerate);
    }
    out
}
