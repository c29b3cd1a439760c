// SPDX-License-Identifier: Apache-2.0

//! Library side of the `qubit-qi` command-line tool.

pub mod error;
pub mod report;
pub mod spec;
pub mod sweep;
pub mod verify;

pub use error::{CliError, CliResult};
pub use spec::{parse_channel_spec, ChannelSpec};
