// SPDX-License-Identifier: Apache-2.0

//! JSON channel specifications.
//!
//! ```json
//! {"kind": "pauli", "p": [0.1, 0.6, 0.2, 0.1]}
//! {"kind": "mixed_rotation", "p": 0.25, "theta": 2.0}
//! {"kind": "tetrahedron", "p": [0.3, 0.1, 0.1, 0.3]}
//! {"kind": "amplitude_damping", "gamma": -0.5, "twisted": false}
//! {"kind": "diagonal", "lambda": [0.4, -0.4, -0.6]}
//! {"kind": "kraus", "operators": [[[[1, 0], [0, 0]], [[0, 0], [1, 0]]]]}
//! ```
//!
//! Complex numbers are `[re, im]` pairs; Kraus matrices are row-major.

use num_complex::Complex64;
use qubit_qi::channel::{
    make_amplitude_damping, make_diagonal, make_mixed_rotation, make_pauli, make_tetrahedron,
};
use qubit_qi::pauli::Mat2;
use qubit_qi::QubitChannel;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub type Complex = [f64; 2];
pub type KrausMatrix = [[Complex; 2]; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KrausSpec {
    pub operators: Vec<KrausMatrix>,
}

/// Probabilities of `1, σx, σy, σz`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PauliSpec {
    pub p: [f64; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixedRotationSpec {
    pub p: f64,
    pub theta: f64,
}

/// Weights of the four tetrahedron axes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TetrahedronSpec {
    pub p: [f64; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmplitudeDampingSpec {
    pub gamma: f64,
    #[serde(default)]
    pub twisted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagonalSpec {
    pub lambda: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChannelSpec {
    Kraus(KrausSpec),
    Pauli(PauliSpec),
    MixedRotation(MixedRotationSpec),
    Tetrahedron(TetrahedronSpec),
    AmplitudeDamping(AmplitudeDampingSpec),
    Diagonal(DiagonalSpec),
}

impl ChannelSpec {
    pub fn build(&self) -> qubit_qi::Result<QubitChannel> {
        match self {
            ChannelSpec::Kraus(k) => {
                let ops: Vec<Mat2> = k.operators.iter().map(to_matrix).collect();
                QubitChannel::from_matrices(&ops)
            }
            ChannelSpec::Pauli(PauliSpec { p }) => make_pauli(p[0], p[1], p[2], p[3]),
            ChannelSpec::MixedRotation(m) => make_mixed_rotation(m.p, m.theta),
            ChannelSpec::Tetrahedron(TetrahedronSpec { p }) => make_tetrahedron(p[0], p[1], p[2], p[3]),
            ChannelSpec::AmplitudeDamping(a) => make_amplitude_damping(a.gamma, a.twisted),
            ChannelSpec::Diagonal(DiagonalSpec { lambda: l }) => make_diagonal(l[0], l[1], l[2]),
        }
    }

    /// The `kraus` spec of an existing channel.
    pub fn from_channel(ch: &QubitChannel) -> Self {
        let operators = ch.kraus_matrices().iter().map(from_matrix).collect();
        ChannelSpec::Kraus(KrausSpec { operators })
    }
}

fn to_matrix(k: &KrausMatrix) -> Mat2 {
    Mat2::from_fn(|r, c| Complex64::new(k[r][c][0], k[r][c][1]))
}

fn from_matrix(m: &Mat2) -> KrausMatrix {
    std::array::from_fn(|r| std::array::from_fn(|c| [m[(r, c)].re, m[(r, c)].im]))
}

fn schema(path: &str, message: impl ToString) -> CliError {
    CliError::Schema { path: path.to_string(), message: message.to_string() }
}

fn fields<T: serde::de::DeserializeOwned>(value: serde_json::Value) -> CliResult<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        schema(&path, e.into_inner())
    })
}

/// Parses the document without building the channel.
pub fn parse_spec(text: &str) -> CliResult<ChannelSpec> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| schema(".", e))?;
    let serde_json::Value::Object(mut map) = value else {
        return Err(schema(".", "expected a JSON object"));
    };
    let kind = match map.remove("kind") {
        Some(serde_json::Value::String(kind)) => kind,
        Some(other) => return Err(schema("kind", format!("expected a string, got {other}"))),
        None => return Err(schema("kind", "missing field")),
    };
    let rest = serde_json::Value::Object(map);
    Ok(match kind.as_str() {
        "kraus" => ChannelSpec::Kraus(fields(rest)?),
        "pauli" => ChannelSpec::Pauli(fields(rest)?),
        "mixed_rotation" => ChannelSpec::MixedRotation(fields(rest)?),
        "tetrahedron" => ChannelSpec::Tetrahedron(fields(rest)?),
        "amplitude_damping" => ChannelSpec::AmplitudeDamping(fields(rest)?),
        "diagonal" => ChannelSpec::Diagonal(fields(rest)?),
        other => {
            return Err(schema(
                "kind",
                format!(
                    "unknown kind `{other}`; expected kraus, pauli, mixed_rotation, tetrahedron, \
                     amplitude_damping or diagonal"
                ),
            ))
        }
    })
}

pub fn parse_channel_spec(text: &str) -> CliResult<(ChannelSpec, QubitChannel)> {
    let spec = parse_spec(text)?;
    let ch = spec.build()?;
    Ok((spec, ch))
}

pub fn read_channel_spec(path: &std::path::Path) -> CliResult<(ChannelSpec, QubitChannel)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_channel_spec(&text)
}
