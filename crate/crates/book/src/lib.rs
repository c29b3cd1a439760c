// SPDX-License-Identifier: Apache-2.0

//! Compiles the guide's code snippets as doctests. One module per chapter,
//! so a failure points at the file it came from.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/channels.md")]
pub mod channels {}
#[doc = include_str!("../../../book/src/fidelity.md")]
pub mod fidelity {}
#[doc = include_str!("../../../book/src/quasi-inverse.md")]
pub mod quasi_inverse {}
#[doc = include_str!("../../../book/src/tetrahedron.md")]
pub mod tetrahedron {}
#[doc = include_str!("../../../book/src/families.md")]
pub mod families {}
#[doc = include_str!("../../../book/src/oracles.md")]
pub mod oracles {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
