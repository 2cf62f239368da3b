// Copyright 2026 vsq Contributors
// SPDX-License-Identifier: Apache-2.0

//! Shared helpers for unit tests: a tiny deterministic generator for test
//! inputs and a parametrized random U(2) element. Kept separate from
//! `runtime::rng` so tests of the measurement generator do not feed on the
//! generator under test.

pub(crate) use crate::verify::exp_m2;

use crate::qmath::{Amplitude, Matrix2};

/// Minimal splitmix64 stream for deterministic test inputs.
pub(crate) struct Rng {
    state: u64,
}

impl Rng {
    pub(crate) fn seed(seed: u64) -> Self {
        Self { state: seed }
    }

    pub(crate) fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from [0, 1) with 53-bit resolution.
    pub(crate) fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * 2.0f64.powi(-53)
    }

    /// Uniform draw from (−π, π].
    pub(crate) fn angle(&mut self) -> f64 {
        (1.0 - 2.0 * self.uniform()) * std::f64::consts::PI
    }
}

/// A Haar-flavored random element of U(2) in closed form:
/// `e^{iα}·[[cos t·e^{iβ}, −sin t·e^{iγ}], [sin t·e^{−iγ}, cos t·e^{−iβ}]]`.
pub(crate) fn random_unitary2(rng: &mut Rng) -> Matrix2 {
    let alpha = rng.angle();
    let beta = rng.angle();
    let gamma = rng.angle();
    let t = rng.uniform() * std::f64::consts::FRAC_PI_2;
    let (st, ct) = t.sin_cos();
    let phase = Amplitude::new(alpha.cos(), alpha.sin());
    let eb = Amplitude::new(beta.cos(), beta.sin());
    let eg = Amplitude::new(gamma.cos(), gamma.sin());
    let rows =
        [[phase * ct * eb, phase * (-st) * eg], [phase * st * eg.conj(), phase * ct * eb.conj()]];
    Matrix2::new(rows).expect("entries are products of finite sines and phases")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_unitaries_pass_the_unitarity_check() {
        let mut rng = Rng::seed(7);
        for _ in 0..200 {
            assert!(random_unitary2(&mut rng).is_unitary(1e-12));
        }
    }

    #[test]
    fn uniform_draws_stay_in_the_half_open_interval() {
        let mut rng = Rng::seed(99);
        for _ in 0..1000 {
            let u = rng.uniform();
            assert!((0.0..1.0).contains(&u));
        }
    }
}
