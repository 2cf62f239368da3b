// Copyright 2026 vsq Contributors
// SPDX-License-Identifier: Apache-2.0

//! Physical pulse model and the gate→pulse mapping.
//!
//! A [`Pulse`] is a resonant rotation on one transition of the four-level
//! register: rotation angle φ acts as `exp(−i(φ/2)(cos χ·σ_x + sin χ·σ_y))`
//! on the driven pair, where χ is the carrier phase. The default phase χ=π/2
//! gives the pure y-rotation `[[cos φ/2, −sin φ/2], [sin φ/2, cos φ/2]]`; the
//! phase parameter itself is an extension beyond the y-only gate set, since
//! y-rotations alone cannot generate relative phases.
//!
//! A [`PulseGroup`] models simultaneous irradiation of disjoint transitions;
//! simultaneity is treated algebraically (commuting embeddings on disjoint
//! level pairs), not by time-domain integration. A [`PulseProgram`] is the
//! compiled form of a circuit: groups applied in order.
//!
//! Angles are never normalized mod 4π; the spinor sign of a 2π rotation is
//! physical and deliberately preserved.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmath::{embed_two_level, Amplitude, Matrix2, Matrix4};

/// Rotation angles exercised by the synthesis-identity checks:
/// {0, π/6, π/4, π/2, π, 3π/2, 2π}.
pub const CANONICAL_ANGLES: [f64; 7] =
    [0.0, FRAC_PI_6, FRAC_PI_4, FRAC_PI_2, PI, 3.0 * FRAC_PI_2, 2.0 * PI];

/// One of the four register roles E₀…E₃.
///
/// The role index doubles as the computational basis index: E₀ carries |00⟩,
/// E₁ |01⟩, E₂ |10⟩, E₃ |11⟩.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LevelRole {
    E0,
    E1,
    E2,
    E3,
}

impl LevelRole {
    /// All four roles in basis order.
    pub const ALL: [LevelRole; 4] = [LevelRole::E0, LevelRole::E1, LevelRole::E2, LevelRole::E3];

    /// Basis index 0..=3.
    pub fn index(self) -> usize {
        match self {
            LevelRole::E0 => 0,
            LevelRole::E1 => 1,
            LevelRole::E2 => 2,
            LevelRole::E3 => 3,
        }
    }

    /// Role for a basis index.
    pub fn from_index(index: usize) -> Result<Self> {
        LevelRole::ALL
            .get(index)
            .copied()
            .ok_or_else(|| Error::Index(format!("role index {index} exceeds 3")))
    }
}

impl fmt::Display for LevelRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}", self.index())
    }
}

impl FromStr for LevelRole {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text {
            "E0" => Ok(LevelRole::E0),
            "E1" => Ok(LevelRole::E1),
            "E2" => Ok(LevelRole::E2),
            "E3" => Ok(LevelRole::E3),
            other => Err(Error::UnknownLevel(other.to_owned())),
        }
    }
}

/// An ordered pair of roles naming a driven transition, lower index first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    lower: LevelRole,
    upper: LevelRole,
}

impl Transition {
    /// Builds a transition, requiring `lower` to precede `upper`.
    pub fn new(lower: LevelRole, upper: LevelRole) -> Result<Self> {
        if lower.index() >= upper.index() {
            return Err(Error::InvalidTransition(format!(
                "{lower}-{upper} is not ordered with the lower role first"
            )));
        }
        Ok(Self { lower, upper })
    }

    /// The lower-index role.
    pub fn lower(self) -> LevelRole {
        self.lower
    }

    /// The higher-index role.
    pub fn upper(self) -> LevelRole {
        self.upper
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lower, self.upper)
    }
}

impl FromStr for Transition {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (a, b) = text.split_once('-').ok_or_else(|| {
            Error::InvalidTransition(format!("{text:?} is not of the form Ei-Ej"))
        })?;
        Transition::new(a.parse()?, b.parse()?)
    }
}

/// The four distinct transitions driven by the gate set, in role order:
/// E₀↔E₁ and E₂↔E₃ (RyS pair, the latter also CNOT_RS), E₀↔E₂ (RyR pair),
/// E₁↔E₃ (RyR pair and CNOT_SR).
pub fn gate_transitions() -> [Transition; 4] {
    [
        Transition { lower: LevelRole::E0, upper: LevelRole::E1 },
        Transition { lower: LevelRole::E0, upper: LevelRole::E2 },
        Transition { lower: LevelRole::E1, upper: LevelRole::E3 },
        Transition { lower: LevelRole::E2, upper: LevelRole::E3 },
    ]
}

fn default_phase_rad() -> f64 {
    FRAC_PI_2
}

#[derive(Serialize, Deserialize)]
struct PulseWire {
    transition: String,
    angle_rad: f64,
    #[serde(default = "default_phase_rad")]
    phase_rad: f64,
}

/// A resonant rotation by `angle` on one transition, at carrier phase χ.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PulseWire", into = "PulseWire")]
pub struct Pulse {
    transition: Transition,
    angle: f64,
    phase: f64,
}

impl Pulse {
    /// Carrier phase of the plain y-rotation.
    pub const DEFAULT_PHASE: f64 = FRAC_PI_2;

    /// A pulse at the default carrier phase π/2 (pure y-rotation).
    pub fn new(transition: Transition, angle: f64) -> Result<Self> {
        Self::with_phase(transition, angle, Self::DEFAULT_PHASE)
    }

    /// A pulse with an explicit carrier phase.
    pub fn with_phase(transition: Transition, angle: f64, phase: f64) -> Result<Self> {
        if !angle.is_finite() {
            return Err(Error::NonFinite("pulse angle"));
        }
        if !phase.is_finite() {
            return Err(Error::NonFinite("pulse phase"));
        }
        Ok(Self { transition, angle, phase })
    }

    /// The driven transition.
    pub fn transition(&self) -> Transition {
        self.transition
    }

    /// Rotation angle φ in radians (pulse area).
    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// Carrier phase χ in radians.
    pub fn phase(&self) -> f64 {
        self.phase
    }

    /// The 4×4 action of this pulse:
    /// `exp(−i(φ/2)(cos χ·σ_x + sin χ·σ_y))` embedded on the driven pair.
    pub fn unitary(&self) -> Matrix4 {
        let (s, c) = (self.angle / 2.0).sin_cos();
        let (sx, cx) = self.phase.sin_cos();
        let minus_i = Amplitude::new(0.0, -1.0);
        let rotation = Matrix2::from_rows_unchecked([
            [Amplitude::new(c, 0.0), minus_i * s * Amplitude::new(cx, -sx)],
            [minus_i * s * Amplitude::new(cx, sx), Amplitude::new(c, 0.0)],
        ]);
        embed_two_level(&rotation, self.transition.lower.index(), self.transition.upper.index())
            .expect("axis rotations are unitary and transitions are ordered")
    }
}

impl From<Pulse> for PulseWire {
    fn from(p: Pulse) -> Self {
        PulseWire { transition: p.transition.to_string(), angle_rad: p.angle, phase_rad: p.phase }
    }
}

impl TryFrom<PulseWire> for Pulse {
    type Error = Error;

    fn try_from(wire: PulseWire) -> Result<Self> {
        Pulse::with_phase(wire.transition.parse()?, wire.angle_rad, wire.phase_rad)
    }
}

/// Pulses applied simultaneously; their level pairs must be pairwise disjoint.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Pulse>", into = "Vec<Pulse>")]
pub struct PulseGroup {
    pulses: Vec<Pulse>,
}

impl PulseGroup {
    /// Builds a group, rejecting any level driven by two member pulses.
    pub fn new(pulses: Vec<Pulse>) -> Result<Self> {
        let mut driven = [false; 4];
        for pulse in &pulses {
            for role in [pulse.transition.lower, pulse.transition.upper] {
                if driven[role.index()] {
                    return Err(Error::OverlappingTransitions(role.to_string()));
                }
                driven[role.index()] = true;
            }
        }
        Ok(Self { pulses })
    }

    /// Member pulses in declaration order.
    pub fn pulses(&self) -> &[Pulse] {
        &self.pulses
    }

    /// Combined action of the group. Disjoint supports make the member
    /// product order-independent.
    pub fn unitary(&self) -> Matrix4 {
        self.pulses.iter().fold(Matrix4::identity(), |acc, pulse| pulse.unitary() * acc)
    }
}

impl From<PulseGroup> for Vec<Pulse> {
    fn from(group: PulseGroup) -> Self {
        group.pulses
    }
}

impl TryFrom<Vec<Pulse>> for PulseGroup {
    type Error = Error;

    fn try_from(pulses: Vec<Pulse>) -> Result<Self> {
        PulseGroup::new(pulses)
    }
}

/// An ordered sequence of pulse groups; the compiled form of a circuit.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PulseProgram {
    groups: Vec<PulseGroup>,
}

impl PulseProgram {
    /// Wraps groups in program order.
    pub fn new(groups: Vec<PulseGroup>) -> Self {
        Self { groups }
    }

    /// Groups in application order.
    pub fn groups(&self) -> &[PulseGroup] {
        &self.groups
    }

    /// Number of groups.
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    /// True for a program with no groups.
    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Appends a group at the end of the program.
    pub fn push_group(&mut self, group: PulseGroup) {
        self.groups.push(group);
    }

    /// Total unitary of the program; later groups act after (to the left of)
    /// earlier ones.
    pub fn unitary(&self) -> Matrix4 {
        self.groups.iter().fold(Matrix4::identity(), |acc, group| group.unitary() * acc)
    }
}

/// The abstract gate set of the register.
///
/// Gate names serialize as `ry_r`, `ry_s`, `cnot_rs`, `cnot_sr`, `raw_pulse`
/// in circuit files; see the compiler module for the schema.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateOp {
    /// y-rotation of the R spin by the stored angle.
    RyR {
        /// Rotation angle φ in radians.
        angle: f64,
    },
    /// y-rotation of the S spin by the stored angle.
    RyS {
        /// Rotation angle φ in radians.
        angle: f64,
    },
    /// CNOT with R controlling S: a single π pulse on E₂↔E₃.
    CnotRs,
    /// CNOT with S controlling R: a single π pulse on E₁↔E₃.
    CnotSr,
    /// A literal pulse passed through unchanged.
    RawPulse(Pulse),
}

impl GateOp {
    /// The gate's serialized name.
    pub fn name(&self) -> &'static str {
        match self {
            GateOp::RyR { .. } => "ry_r",
            GateOp::RyS { .. } => "ry_s",
            GateOp::CnotRs => "cnot_rs",
            GateOp::CnotSr => "cnot_sr",
            GateOp::RawPulse(_) => "raw_pulse",
        }
    }
}

fn transition(lower: LevelRole, upper: LevelRole) -> Transition {
    Transition::new(lower, upper).expect("gate transitions are ordered")
}

/// Lowers one gate to its pulse groups.
///
/// RyS drives E₀↔E₁ and E₂↔E₃ simultaneously; RyR drives E₀↔E₂ and E₁↔E₃;
/// each CNOT is a single π pulse on its transition. The only failure mode is
/// a non-finite rotation angle.
pub fn gate_to_pulses(gate: &GateOp) -> Result<Vec<PulseGroup>> {
    use LevelRole::{E0, E1, E2, E3};
    let group = match *gate {
        GateOp::RyS { angle } => PulseGroup::new(vec![
            Pulse::new(transition(E0, E1), angle)?,
            Pulse::new(transition(E2, E3), angle)?,
        ]),
        GateOp::RyR { angle } => PulseGroup::new(vec![
            Pulse::new(transition(E0, E2), angle)?,
            Pulse::new(transition(E1, E3), angle)?,
        ]),
        GateOp::CnotRs => PulseGroup::new(vec![Pulse::new(transition(E2, E3), PI)?]),
        GateOp::CnotSr => PulseGroup::new(vec![Pulse::new(transition(E1, E3), PI)?]),
        GateOp::RawPulse(pulse) => PulseGroup::new(vec![pulse]),
    };
    Ok(vec![group.expect("gate transition pairs are disjoint")])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::{rotation_r, rotation_s};
    use crate::qmath::{apply, Vector4};
    use crate::testutil::Rng;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Amplitude {
        Amplitude::new(re, im)
    }

    fn pulse(lower: LevelRole, upper: LevelRole, angle: f64) -> Pulse {
        Pulse::new(Transition::new(lower, upper).unwrap(), angle).unwrap()
    }

    #[test]
    fn transition_strings_round_trip() {
        let t: Transition = "E2-E3".parse().unwrap();
        assert_eq!(t.lower(), LevelRole::E2);
        assert_eq!(t.upper(), LevelRole::E3);
        assert_eq!(t.to_string(), "E2-E3");
        assert!(matches!("E3-E2".parse::<Transition>(), Err(Error::InvalidTransition(_))));
        assert!(matches!("E1".parse::<Transition>(), Err(Error::InvalidTransition(_))));
        assert!(matches!("E1-E9".parse::<Transition>(), Err(Error::UnknownLevel(_))));
    }

    #[test]
    fn pulse_constructors_reject_non_finite_parameters() {
        let t = Transition::new(LevelRole::E0, LevelRole::E1).unwrap();
        assert!(matches!(Pulse::new(t, f64::NAN), Err(Error::NonFinite(_))));
        assert!(matches!(Pulse::with_phase(t, 1.0, f64::INFINITY), Err(Error::NonFinite(_))));
    }

    #[test]
    fn pi_pulse_on_upper_pair_flips_with_spinor_sign() {
        let u = pulse(LevelRole::E2, LevelRole::E3, PI).unitary();
        let from_10 = apply(&u, &Vector4::basis(2).unwrap()).unwrap();
        assert!(from_10.max_abs_diff(&Vector4::basis(3).unwrap()) <= 1e-12);
        let from_11 = apply(&u, &Vector4::basis(3).unwrap()).unwrap();
        let minus_10 = Vector4::new([c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(from_11.max_abs_diff(&minus_10) <= 1e-12);
        let fixed = apply(&u, &Vector4::basis(0).unwrap()).unwrap();
        assert_eq!(fixed.max_abs_diff(&Vector4::basis(0).unwrap()), 0.0);
    }

    #[test]
    fn zero_angle_pulse_is_identity() {
        let u = pulse(LevelRole::E0, LevelRole::E1, 0.0).unitary();
        assert_eq!(u.max_abs_diff(&Matrix4::identity()), 0.0);
    }

    #[test]
    fn zero_phase_pi_pulse_is_an_x_rotation() {
        let t = Transition::new(LevelRole::E0, LevelRole::E1).unwrap();
        let u = Pulse::with_phase(t, PI, 0.0).unwrap().unitary();
        let from_00 = apply(&u, &Vector4::basis(0).unwrap()).unwrap();
        let minus_i_01 =
            Vector4::new([c(0.0, 0.0), c(0.0, -1.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(from_00.max_abs_diff(&minus_i_01) <= 1e-12);
        let from_01 = apply(&u, &Vector4::basis(1).unwrap()).unwrap();
        let minus_i_00 =
            Vector4::new([c(0.0, -1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(from_01.max_abs_diff(&minus_i_00) <= 1e-12);
    }

    #[test]
    fn random_pulses_are_unitary() {
        let mut rng = Rng::seed(61);
        let transitions = gate_transitions();
        for k in 0..1000 {
            let t = transitions[k % 4];
            let angle = (rng.uniform() - 0.5) * 8.0 * PI;
            let phase = rng.angle();
            let u = Pulse::with_phase(t, angle, phase).unwrap().unitary();
            assert!(u.is_unitary(1e-12));
        }
    }

    #[test]
    fn group_rejects_shared_levels() {
        let out = PulseGroup::new(vec![
            pulse(LevelRole::E0, LevelRole::E1, PI),
            pulse(LevelRole::E1, LevelRole::E3, PI),
        ]);
        match out {
            Err(Error::OverlappingTransitions(role)) => assert_eq!(role, "E1"),
            other => panic!("expected overlap error, got {other:?}"),
        }
    }

    #[test]
    fn disjoint_pulses_commute() {
        let mut rng = Rng::seed(71);
        for _ in 0..100 {
            let p = pulse(LevelRole::E0, LevelRole::E1, rng.angle());
            let q = pulse(LevelRole::E2, LevelRole::E3, rng.angle());
            let forward = p.unitary() * q.unitary();
            let backward = q.unitary() * p.unitary();
            assert!(forward.max_abs_diff(&backward) <= 1e-13);
        }
    }

    #[test]
    fn synthesis_identity_for_both_rotations() {
        let mut rng = Rng::seed(83);
        let mut angles: Vec<f64> = CANONICAL_ANGLES.to_vec();
        angles.extend((0..50).map(|_| rng.uniform() * 4.0 * PI));
        for &phi in &angles {
            let s_groups = gate_to_pulses(&GateOp::RyS { angle: phi }).unwrap();
            let s_pulse = PulseProgram::new(s_groups).unitary();
            assert!(s_pulse.max_abs_diff(&rotation_s(phi)) <= 1e-12, "RyS at {phi}");
            let r_groups = gate_to_pulses(&GateOp::RyR { angle: phi }).unwrap();
            let r_pulse = PulseProgram::new(r_groups).unitary();
            assert!(r_pulse.max_abs_diff(&rotation_r(phi)) <= 1e-12, "RyR at {phi}");
        }
    }

    #[test]
    fn cnot_pulse_truth_tables() {
        let rs = PulseProgram::new(gate_to_pulses(&GateOp::CnotRs).unwrap()).unitary();
        let sr = PulseProgram::new(gate_to_pulses(&GateOp::CnotSr).unwrap()).unitary();
        let expect = |u: &Matrix4, map: [usize; 4]| {
            for (col, row) in map.into_iter().enumerate() {
                for r in 0..4 {
                    let magnitude = u.entry(r, col).norm();
                    if r == row {
                        assert!((magnitude - 1.0).abs() <= 1e-12, "column {col}");
                    } else {
                        assert!(magnitude <= 1e-12, "column {col}, row {r}");
                    }
                }
            }
        };
        expect(&rs, [0, 1, 3, 2]);
        expect(&sr, [0, 3, 2, 1]);
    }

    #[test]
    fn gate_lowering_matches_the_stated_transition_lists() {
        let groups = gate_to_pulses(&GateOp::RyS { angle: 0.3 }).unwrap();
        let names: Vec<String> =
            groups[0].pulses().iter().map(|p| p.transition().to_string()).collect();
        assert_eq!(names, ["E0-E1", "E2-E3"]);
        let groups = gate_to_pulses(&GateOp::RyR { angle: 0.3 }).unwrap();
        let names: Vec<String> =
            groups[0].pulses().iter().map(|p| p.transition().to_string()).collect();
        assert_eq!(names, ["E0-E2", "E1-E3"]);
        let groups = gate_to_pulses(&GateOp::CnotRs).unwrap();
        assert_eq!(groups[0].pulses()[0].transition().to_string(), "E2-E3");
        assert_eq!(groups[0].pulses()[0].angle(), PI);
        let groups = gate_to_pulses(&GateOp::CnotSr).unwrap();
        assert_eq!(groups[0].pulses()[0].transition().to_string(), "E1-E3");
    }

    #[test]
    fn empty_program_is_identity() {
        assert_eq!(PulseProgram::default().unitary().max_abs_diff(&Matrix4::identity()), 0.0);
    }

    #[test]
    fn bell_program_maps_ground_to_the_bell_state() {
        let mut groups = gate_to_pulses(&GateOp::RyR { angle: FRAC_PI_2 }).unwrap();
        groups.extend(gate_to_pulses(&GateOp::CnotRs).unwrap());
        let u = PulseProgram::new(groups).unitary();
        let out = apply(&u, &Vector4::basis(0).unwrap()).unwrap();
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        let bell =
            Vector4::new([c(inv_sqrt2, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(inv_sqrt2, 0.0)]).unwrap();
        assert!(out.max_abs_diff(&bell) <= 1e-12);
    }

    #[test]
    fn sequential_rotations_compose_by_angle_addition() {
        let mut rng = Rng::seed(97);
        for _ in 0..100 {
            let alpha = rng.angle();
            let beta = rng.angle();
            let mut groups = gate_to_pulses(&GateOp::RyS { angle: alpha }).unwrap();
            groups.extend(gate_to_pulses(&GateOp::RyS { angle: beta }).unwrap());
            let program = PulseProgram::new(groups).unitary();
            assert!(program.max_abs_diff(&rotation_s(alpha + beta)) <= 1e-12);
        }
    }

    #[test]
    fn pulse_json_round_trips_and_defaults_the_phase() {
        let p = Pulse::with_phase(
            Transition::new(LevelRole::E2, LevelRole::E3).unwrap(),
            PI,
            FRAC_PI_2,
        )
        .unwrap();
        let text = serde_json::to_string(&p).unwrap();
        assert!(text.contains("\"transition\":\"E2-E3\""), "serialized form: {text}");
        let back: Pulse = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        let defaulted: Pulse =
            serde_json::from_str(r#"{"transition":"E0-E1","angle_rad":1.0}"#).unwrap();
        assert_eq!(defaulted.phase(), Pulse::DEFAULT_PHASE);
        let overlap = serde_json::from_str::<PulseGroup>(
            r#"[{"transition":"E0-E1","angle_rad":1.0},{"transition":"E1-E3","angle_rad":1.0}]"#,
        );
        assert!(overlap.is_err());
    }

    proptest! {
        #[test]
        fn any_finite_pulse_is_unitary(
            angle in -12.0f64..12.0,
            phase in -6.3f64..6.3,
            which in 0usize..4,
        ) {
            let t = gate_transitions()[which];
            let u = Pulse::with_phase(t, angle, phase).unwrap().unitary();
            prop_assert!(u.is_unitary(1e-12));
        }

        #[test]
        fn rotation_synthesis_holds_for_arbitrary_angles(phi in -12.6f64..12.6) {
            let groups = gate_to_pulses(&GateOp::RyS { angle: phi }).unwrap();
            let synthesized = PulseProgram::new(groups).unitary();
            prop_assert!(synthesized.max_abs_diff(&rotation_s(phi)) <= 1e-12);
        }
    }
}
