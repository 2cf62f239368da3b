// Copyright 2026 vsq Contributors
// SPDX-License-Identifier: Apache-2.0

//! Simulator and pulse-schedule compiler for a two-qubit register encoded
//! in four optical energy levels of a single Pr³⁺ ion.
//!
//! The register identifies the four-level space with the tensor product of
//! two formal spin-½ degrees of freedom ("virtual spins" R and S), so that
//! levels E₀…E₃ carry the computational labels |00⟩…|11⟩. Single-qubit
//! y-rotations are realized by simultaneous resonant pulses on two
//! transitions, and CNOT gates by a single π pulse on one transition.
//!
//! The crate is organized as a pipeline:
//!
//! * [`qmath`]: fixed-size complex matrices and state vectors.
//! * [`encoding`]: the virtual-spin basis map, spin operators, rotation
//!   closed forms, and the CNOT operator formulas.
//! * [`pulses`]: the physical pulse model and the gate→pulse mapping.
//! * [`levels`]: Pr³⁺:LaF₃ spectroscopy and the two working level schemes.
//! * [`compiler`]: circuit IR, compilation, timed schedules, file formats.
//! * [`runtime`]: state evolution, seeded measurement, readout modeling.
//! * [`verify`]: the cross-module invariant suite behind `vsq verify`.

pub mod cli;
pub mod compiler;
pub mod encoding;
pub mod error;
pub mod levels;
mod numfmt;
pub mod pulses;
pub mod qmath;
pub mod runtime;
#[cfg(test)]
pub(crate) mod testutil;
pub mod verify;

pub use error::{Error, Result};
