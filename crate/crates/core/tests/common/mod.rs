// SPDX-License-Identifier: Apache-2.0
#![allow(dead_code)]

use qubit_qi::channel::make_diagonal;
use qubit_qi::sampling::{random_channel, random_unitary, uniform_simplex};
use qubit_qi::QubitChannel;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use qubit_qi::sampling::seeded_rng;

/// Random Kraus channel with 1 to 4 operators.
pub fn any_channel(rng: &mut ChaCha8Rng) -> QubitChannel {
    let n = rng.random_range(1..=4);
    random_channel(rng, n)
}

/// Uniform point of the tetrahedron of unital channels, as the image of
/// uniform Pauli probabilities.
pub fn tetrahedron_point(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let p = uniform_simplex(rng, 4);
    [
        p[0] + p[1] - p[2] - p[3],
        p[0] - p[1] + p[2] - p[3],
        p[0] - p[1] - p[2] + p[3],
    ]
}

pub fn random_diagonal(rng: &mut ChaCha8Rng) -> ([f64; 3], QubitChannel) {
    let l = tetrahedron_point(rng);
    (l, make_diagonal(l[0], l[1], l[2]).unwrap())
}

/// Channel with symmetric positive semidefinite `M`: `diag(λ ≥ 0)` rotated.
pub fn symmetric_psd_channel(rng: &mut ChaCha8Rng) -> QubitChannel {
    let l = loop {
        let l = tetrahedron_point(rng).map(f64::abs);
        if qubit_qi::channel::fujiwara_algoet(l).is_ok() {
            break l;
        }
    };
    make_diagonal(l[0], l[1], l[2]).unwrap().conjugated_by(&random_unitary(rng))
}
