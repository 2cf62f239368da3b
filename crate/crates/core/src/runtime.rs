// Copyright 2026 vsq Contributors
// SPDX-License-Identifier: Apache-2.0

//! State evolution, projective measurement, and readout planning.
//!
//! A [`QuantumState`] is a normalized amplitude vector over the four basis
//! states |00⟩…|11⟩. Programs act group by group, measurement samples the
//! Born distribution with a seeded generator, and the readout planner lays
//! out the π transfer pulses that convert an outcome into level-selective
//! fluorescence on the scheme's readout term.

pub mod rng;

use crate::error::{Error, Result};
use crate::levels::{
    validate, LevelScheme, PhysLevel, SpectroscopicDataset, TermLabel, DEFAULT_MIN_SEP_HZ,
};
use crate::pulses::{LevelRole, PulseProgram};
use crate::qmath::{apply, Amplitude, Vector4};
use rng::Xoshiro256PlusPlus;

/// Largest tolerated drift of the state norm from 1.
pub const STATE_NORM_TOL: f64 = 1e-10;

/// A normalized register state.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumState {
    amps: Vector4,
}

impl QuantumState {
    /// Wraps an amplitude vector, rejecting norms off 1 by more than
    /// [`STATE_NORM_TOL`].
    pub fn new(amps: Vector4) -> Result<Self> {
        let norm = amps.norm();
        if (norm - 1.0).abs() > STATE_NORM_TOL {
            return Err(Error::NormDrift(norm));
        }
        Ok(Self { amps })
    }

    /// The four amplitudes in basis order.
    pub fn amplitudes(&self) -> &[Amplitude; 4] {
        self.amps.amplitudes()
    }

    /// The underlying vector.
    pub fn vector(&self) -> &Vector4 {
        &self.amps
    }

    /// Born probabilities |⟨k|ψ⟩|² in basis order.
    pub fn probabilities(&self) -> [f64; 4] {
        let mut p = [0.0; 4];
        for (slot, amp) in p.iter_mut().zip(self.amplitudes()) {
            *slot = amp.norm_sqr();
        }
        p
    }
}

/// The ground state |00⟩, both spins up.
pub fn ground_state() -> QuantumState {
    QuantumState::new(Vector4::basis(0).expect("index 0 is in range")).expect("basis norm is 1")
}

/// Applies a program to a state, group by group.
pub fn run_program(program: &PulseProgram, initial: &QuantumState) -> Result<QuantumState> {
    let mut amps = initial.amps;
    for group in program.groups() {
        amps = apply(&group.unitary(), &amps)?;
    }
    QuantumState::new(amps)
}

/// Outcome counts from repeated projective measurement in the energy basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MeasurementHistogram {
    /// Number of samples drawn.
    pub shots: u64,
    /// Seed the sample stream was derived from.
    pub seed: u64,
    /// Counts per outcome in basis order |00⟩…|11⟩.
    pub counts: [u64; 4],
}

impl MeasurementHistogram {
    /// Bit-string label of a basis outcome, `"00"` through `"11"`.
    pub fn outcome_label(k: usize) -> &'static str {
        ["00", "01", "10", "11"][k]
    }

    /// Empirical frequencies, counts over shots.
    pub fn frequencies(&self) -> [f64; 4] {
        let mut f = [0.0; 4];
        if self.shots > 0 {
            for (slot, &count) in f.iter_mut().zip(&self.counts) {
                *slot = count as f64 / self.shots as f64;
            }
        }
        f
    }
}

/// Samples `shots` measurements of `state` with a generator seeded by
/// `seed`.
///
/// Sampling inverts the cumulative distribution with a strict comparison,
/// so an outcome whose probability underflows to the previous cumulative
/// value can never be drawn; zero-probability outcomes stay at count zero
/// for every seed.
pub fn measure(state: &QuantumState, seed: u64, shots: u64) -> MeasurementHistogram {
    let p = state.probabilities();
    let total: f64 = p.iter().sum();
    let mut cumulative = [0.0f64; 4];
    let mut acc = 0.0;
    for (slot, &pk) in cumulative.iter_mut().zip(&p) {
        acc += pk / total;
        *slot = acc;
    }
    let fallback = (0..4).rev().find(|&k| p[k] > 0.0).unwrap_or(0);
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut counts = [0u64; 4];
    for _ in 0..shots {
        let u = rng.next_f64();
        let outcome = cumulative.iter().position(|&c| u < c).unwrap_or(fallback);
        counts[outcome] += 1;
    }
    MeasurementHistogram { shots, seed, counts }
}

/// One π transfer pulse of the readout stage.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransferLine {
    /// Register level the population is taken from.
    pub working: LevelRole,
    /// Term the population is parked in for fluorescence.
    pub target: TermLabel,
    /// Pulse area, always π for a full transfer.
    pub angle: f64,
    /// Carrier frequency of the transfer transition in Hz.
    pub carrier_hz: f64,
}

/// The three transfer lines that distinguish the non-ground outcomes.
#[derive(Clone, Debug, PartialEq)]
pub struct ReadoutPlan {
    /// Term fluorescence is collected from.
    pub readout_term: TermLabel,
    /// Transfer lines for E₁, E₂, E₃ in that order.
    pub lines: [TransferLine; 3],
    /// Smallest pairwise carrier separation among the lines, in Hz.
    pub min_separation_hz: f64,
    /// Whether that separation clears [`DEFAULT_MIN_SEP_HZ`].
    pub distinguishable: bool,
}

/// Plans readout for a scheme: a π pulse from each excited register level
/// to the readout term, labeled by its carrier.
///
/// Outcome |00⟩ needs no transfer and is identified by the absence of
/// fluorescence.
pub fn readout_plan(s: &LevelScheme, d: &SpectroscopicDataset) -> Result<ReadoutPlan> {
    let report = validate(s, d, DEFAULT_MIN_SEP_HZ);
    if !report.pass {
        return Err(Error::InvalidScheme(format!(
            "scheme {} fails validation: {}",
            s.name,
            report.failures.join("; ")
        )));
    }
    let readout_frequency = d.level_frequency(&PhysLevel::lowest(s.readout_term))?;
    let line = |role: LevelRole| -> Result<TransferLine> {
        let level_frequency = d.level_frequency(s.level(role))?;
        Ok(TransferLine {
            working: role,
            target: s.readout_term,
            angle: std::f64::consts::PI,
            carrier_hz: (readout_frequency - level_frequency).abs(),
        })
    };
    let lines = [line(LevelRole::E1)?, line(LevelRole::E2)?, line(LevelRole::E3)?];
    let mut min_separation_hz = f64::INFINITY;
    for (i, a) in lines.iter().enumerate() {
        for b in lines.iter().skip(i + 1) {
            min_separation_hz = min_separation_hz.min((a.carrier_hz - b.carrier_hz).abs());
        }
    }
    Ok(ReadoutPlan {
        readout_term: s.readout_term,
        lines,
        min_separation_hz,
        distinguishable: min_separation_hz >= DEFAULT_MIN_SEP_HZ,
    })
}

/// What a measurement outcome looks like at the detector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmissionRecord {
    /// Basis index of the outcome.
    pub outcome: usize,
    /// Transfer pulse that precedes fluorescence; none for the dark
    /// outcome |00⟩.
    pub transfer: Option<TransferLine>,
    /// Copied from the plan: whether carriers separate the bright outcomes.
    pub distinguishable: bool,
}

/// Maps a basis outcome to its emission record under a readout plan.
pub fn outcome_to_emission(plan: &ReadoutPlan, outcome: usize) -> Result<EmissionRecord> {
    if outcome > 3 {
        return Err(Error::UnknownOutcome(outcome));
    }
    let transfer = if outcome == 0 { None } else { Some(plan.lines[outcome - 1]) };
    Ok(EmissionRecord { outcome, transfer, distinguishable: plan.distinguishable })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compiler::{compile, Circuit};
    use crate::encoding::{rotation_r, rotation_s};
    use crate::levels::scheme;
    use crate::pulses::GateOp;
    use crate::qmath::Matrix4;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    fn builtin() -> SpectroscopicDataset {
        SpectroscopicDataset::builtin_pr_laf3()
    }

    fn bell_state() -> QuantumState {
        let program =
            compile(&Circuit { gates: vec![GateOp::RyR { angle: FRAC_PI_2 }, GateOp::CnotRs] })
                .unwrap();
        run_program(&program, &ground_state()).unwrap()
    }

    #[test]
    fn ground_state_is_all_population_in_00() {
        let state = ground_state();
        assert_eq!(state.amplitudes()[0], Amplitude::new(1.0, 0.0));
        assert_eq!(state.probabilities(), [1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn state_constructor_rejects_norm_drift() {
        let half = Vector4::new([
            Amplitude::new(0.5, 0.0),
            Amplitude::new(0.0, 0.0),
            Amplitude::new(0.0, 0.0),
            Amplitude::new(0.0, 0.0),
        ])
        .unwrap();
        match QuantumState::new(half) {
            Err(Error::NormDrift(norm)) => assert_eq!(norm, 0.5),
            other => panic!("expected NormDrift, got {other:?}"),
        }
    }

    #[test]
    fn bell_preparation_yields_real_equal_amplitudes() {
        let state = bell_state();
        let amps = state.amplitudes();
        assert!((amps[0] - Amplitude::new(FRAC_1_SQRT_2, 0.0)).norm() <= 1e-12);
        assert!((amps[3] - Amplitude::new(FRAC_1_SQRT_2, 0.0)).norm() <= 1e-12);
        assert!(amps[1].norm() <= 1e-12);
        assert!(amps[2].norm() <= 1e-12);
    }

    #[test]
    fn programs_evolve_states_like_their_unitaries() {
        let circuit = Circuit {
            gates: vec![GateOp::RyS { angle: 1.1 }, GateOp::CnotSr, GateOp::RyR { angle: 2.3 }],
        };
        let program = compile(&circuit).unwrap();
        let evolved = run_program(&program, &ground_state()).unwrap();
        let direct = apply(&program.unitary(), ground_state().vector()).unwrap();
        assert!(evolved.vector().max_abs_diff(&direct) <= 1e-13);
    }

    #[test]
    fn empty_program_is_a_no_op() {
        let program = PulseProgram::default();
        let state = run_program(&program, &ground_state()).unwrap();
        assert_eq!(state, ground_state());
    }

    #[test]
    fn measurement_is_deterministic_per_seed() {
        let state = bell_state();
        let a = measure(&state, 42, 1000);
        let b = measure(&state, 42, 1000);
        assert_eq!(a, b);
        assert_eq!(a.shots, 1000);
        assert_eq!(a.seed, 42);
        assert_eq!(a.counts.iter().sum::<u64>(), 1000);
    }

    #[test]
    fn bell_histogram_has_no_odd_parity_counts() {
        let state = bell_state();
        let histogram = measure(&state, 42, 10_000);
        assert_eq!(histogram.counts[1], 0);
        assert_eq!(histogram.counts[2], 0);
        let f00 = histogram.frequencies()[0];
        assert!((f00 - 0.5).abs() <= 0.02, "f00 = {f00}");
    }

    #[test]
    fn zero_probability_outcomes_are_never_drawn() {
        let state = ground_state();
        for seed in 0..20 {
            let histogram = measure(&state, seed, 500);
            assert_eq!(histogram.counts, [500, 0, 0, 0]);
        }
    }

    #[test]
    fn uniform_superposition_frequencies_stay_near_one_quarter() {
        let unitary: Matrix4 = rotation_s(FRAC_PI_2) * rotation_r(FRAC_PI_2);
        let amps = apply(&unitary, ground_state().vector()).unwrap();
        let state = QuantumState::new(amps).unwrap();
        for seed in 6..16 {
            let histogram = measure(&state, seed, 10_000);
            for (k, f) in histogram.frequencies().iter().enumerate() {
                assert!((f - 0.25).abs() <= 0.01, "seed {seed}, outcome {k}: frequency {f}");
            }
        }
    }

    #[test]
    fn readout_plans_both_schemes_with_resolvable_carriers() {
        let d = builtin();
        let plan = readout_plan(&scheme("fig4").unwrap(), &d).unwrap();
        assert_eq!(plan.readout_term, TermLabel::P1);
        assert!(plan.distinguishable);
        assert_eq!(plan.min_separation_hz, 450_000.0);
        // Independent values: |c/450nm − f(E_k)| for the fig4 levels.
        let expected = [38630712379224.375, 38630711929224.375, 38630711209224.375];
        for (line, want) in plan.lines.iter().zip(expected) {
            assert!(
                (line.carrier_hz - want).abs() <= 1e-6 * want,
                "{}: {} vs {want}",
                line.working,
                line.carrier_hz
            );
            assert_eq!(line.angle, std::f64::consts::PI);
            assert_eq!(line.target, TermLabel::P1);
        }
        let plan = readout_plan(&scheme("fig3").unwrap(), &d).unwrap();
        assert!(plan.distinguishable);
        let expected = [582929779444444.4, 160226630154711.62, 38630712379224.375];
        for (line, want) in plan.lines.iter().zip(expected) {
            assert!((line.carrier_hz - want).abs() <= 1e-6 * want);
        }
    }

    #[test]
    fn readout_rejects_invalid_schemes() {
        let d = builtin();
        let mut broken = scheme("fig4").unwrap();
        broken.assignment[1] = broken.assignment[3];
        assert!(matches!(readout_plan(&broken, &d), Err(Error::InvalidScheme(_))));
    }

    #[test]
    fn emission_records_follow_the_outcome() {
        let d = builtin();
        let plan = readout_plan(&scheme("fig4").unwrap(), &d).unwrap();
        let dark = outcome_to_emission(&plan, 0).unwrap();
        assert_eq!(dark.outcome, 0);
        assert!(dark.transfer.is_none());
        let bright = outcome_to_emission(&plan, 3).unwrap();
        assert_eq!(bright.transfer.unwrap().working, LevelRole::E3);
        assert_eq!(bright.transfer.unwrap().carrier_hz, plan.lines[2].carrier_hz);
        assert!(matches!(outcome_to_emission(&plan, 4), Err(Error::UnknownOutcome(4))));
    }

    #[test]
    fn outcome_labels_are_basis_ordered() {
        let labels: Vec<&str> = (0..4).map(MeasurementHistogram::outcome_label).collect();
        assert_eq!(labels, ["00", "01", "10", "11"]);
    }
}
