// Copyright 2026 vsq Contributors
// SPDX-License-Identifier: Apache-2.0

//! Circuit files, gate lowering, and pulse scheduling.
//!
//! A circuit file is a JSON object `{"gates": [...]}` whose entries each
//! carry an `"op"` tag: `ry_r` and `ry_s` take `"angle"` (radians), the two
//! CNOT forms take nothing, and `raw_pulse` takes `"transition"` (`"Ei-Ej"`),
//! `"angle"`, and an optional `"phase"` defaulting to π/2.
//!
//! Compilation lowers each gate to one pulse group. Scheduling then assigns
//! wall-clock times against a level scheme: every pulse lasts φ/Ω at the
//! shared Rabi frequency Ω, pulses of a group start together, and the next
//! group starts once the longest pulse of the current group ends plus a
//! configurable gap. Schedules export to CSV with 17 significant digits so
//! a re-parse reproduces every value bit for bit.

use serde_json::Value;

use crate::encoding::reference_gate;
use crate::error::{Error, Result};
use crate::levels::{
    transition_frequency, validate, LevelScheme, SpectroscopicDataset, DEFAULT_MIN_SEP_HZ,
};
use crate::numfmt::format_g17;
use crate::pulses::{gate_to_pulses, GateOp, Pulse, PulseProgram, Transition};
use crate::qmath::Matrix4;

/// Column header of the schedule CSV format.
pub const SCHEDULE_CSV_HEADER: &str =
    "t_start_s,duration_s,carrier_hz,transition,angle_rad,phase_rad";

/// An ordered list of gates on the register.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Circuit {
    /// Gates in application order.
    pub gates: Vec<GateOp>,
}

fn field<'v>(obj: &'v serde_json::Map<String, Value>, op: &str, key: &str) -> Result<&'v Value> {
    obj.get(key).ok_or_else(|| Error::Parse(format!("gate {op:?} is missing the {key:?} field")))
}

fn angle_field(obj: &serde_json::Map<String, Value>, op: &str, key: &str) -> Result<f64> {
    let value = field(obj, op, key)?
        .as_f64()
        .ok_or_else(|| Error::Parse(format!("gate {op:?}: {key:?} must be a number")))?;
    if !value.is_finite() {
        return Err(Error::NonFinite("gate angle"));
    }
    Ok(value)
}

fn parse_gate(value: &Value) -> Result<GateOp> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("every gate entry must be a JSON object".to_owned()))?;
    let op = field(obj, "entry", "op")?
        .as_str()
        .ok_or_else(|| Error::Parse("the \"op\" field must be a string".to_owned()))?;
    match op {
        "ry_r" => Ok(GateOp::RyR { angle: angle_field(obj, op, "angle")? }),
        "ry_s" => Ok(GateOp::RyS { angle: angle_field(obj, op, "angle")? }),
        "cnot_rs" => Ok(GateOp::CnotRs),
        "cnot_sr" => Ok(GateOp::CnotSr),
        "raw_pulse" => {
            let transition: Transition = field(obj, op, "transition")?
                .as_str()
                .ok_or_else(|| {
                    Error::Parse(format!("gate {op:?}: \"transition\" must be a string"))
                })?
                .parse()?;
            let angle = angle_field(obj, op, "angle")?;
            let phase = match obj.get("phase") {
                Some(_) => angle_field(obj, op, "phase")?,
                None => Pulse::DEFAULT_PHASE,
            };
            Ok(GateOp::RawPulse(Pulse::with_phase(transition, angle, phase)?))
        }
        other => Err(Error::UnknownGate(other.to_owned())),
    }
}

/// Parses a circuit file.
pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::Parse("a circuit file must be a JSON object".to_owned()))?;
    let gates = obj
        .get("gates")
        .ok_or_else(|| Error::Parse("a circuit file must have a \"gates\" array".to_owned()))?
        .as_array()
        .ok_or_else(|| Error::Parse("the \"gates\" field must be an array".to_owned()))?;
    let gates = gates.iter().map(parse_gate).collect::<Result<Vec<GateOp>>>()?;
    Ok(Circuit { gates })
}

fn gate_to_value(gate: &GateOp) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("op".to_owned(), Value::from(gate.name()));
    match *gate {
        GateOp::RyR { angle } | GateOp::RyS { angle } => {
            obj.insert("angle".to_owned(), Value::from(angle));
        }
        GateOp::CnotRs | GateOp::CnotSr => {}
        GateOp::RawPulse(pulse) => {
            obj.insert("transition".to_owned(), Value::from(pulse.transition().to_string()));
            obj.insert("angle".to_owned(), Value::from(pulse.angle()));
            obj.insert("phase".to_owned(), Value::from(pulse.phase()));
        }
    }
    Value::Object(obj)
}

/// Serializes a circuit to the circuit file format.
pub fn serialize_circuit(circuit: &Circuit) -> String {
    let gates: Vec<Value> = circuit.gates.iter().map(gate_to_value).collect();
    let mut doc = serde_json::Map::new();
    doc.insert("gates".to_owned(), Value::from(gates));
    let mut text =
        serde_json::to_string_pretty(&Value::Object(doc)).expect("circuit values serialize");
    text.push('\n');
    text
}

/// Lowers a circuit to its pulse program, one group per gate.
pub fn compile(circuit: &Circuit) -> Result<PulseProgram> {
    let mut program = PulseProgram::default();
    for gate in &circuit.gates {
        for group in gate_to_pulses(gate)? {
            program.push_group(group);
        }
    }
    Ok(program)
}

/// Exact unitary of a circuit from the closed-form gate matrices, bypassing
/// pulse lowering. Compiled programs are checked against this product.
pub fn circuit_unitary(circuit: &Circuit) -> Matrix4 {
    circuit.gates.iter().fold(Matrix4::identity(), |acc, gate| reference_gate(gate) * acc)
}

/// Timing parameters shared by every pulse of a schedule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunConfig {
    rabi_angular_frequency: f64,
    inter_group_gap: f64,
    tolerance: f64,
}

impl RunConfig {
    /// Default numerical tolerance carried by configs built from a Rabi
    /// frequency alone.
    pub const DEFAULT_TOLERANCE: f64 = 1e-12;

    /// Builds a config from the Rabi angular frequency Ω in rad/s, the gap
    /// between groups in seconds, and a numerical tolerance.
    pub fn new(rabi_angular_frequency: f64, inter_group_gap: f64, tolerance: f64) -> Result<Self> {
        if !rabi_angular_frequency.is_finite() || rabi_angular_frequency <= 0.0 {
            return Err(Error::Parse(format!(
                "Rabi angular frequency must be finite and positive, got {rabi_angular_frequency}"
            )));
        }
        if !inter_group_gap.is_finite() || inter_group_gap < 0.0 {
            return Err(Error::Parse(format!(
                "inter-group gap must be finite and non-negative, got {inter_group_gap}"
            )));
        }
        if !tolerance.is_finite() || tolerance <= 0.0 {
            return Err(Error::Parse(format!(
                "tolerance must be finite and positive, got {tolerance}"
            )));
        }
        Ok(Self { rabi_angular_frequency, inter_group_gap, tolerance })
    }

    /// Builds a config from an ordinary Rabi frequency in Hz, taking
    /// Ω = 2π·`rabi_hz`.
    pub fn from_rabi_hz(rabi_hz: f64, inter_group_gap: f64) -> Result<Self> {
        Self::new(2.0 * std::f64::consts::PI * rabi_hz, inter_group_gap, Self::DEFAULT_TOLERANCE)
    }

    /// Rabi angular frequency Ω in rad/s.
    pub fn rabi_angular_frequency(&self) -> f64 {
        self.rabi_angular_frequency
    }

    /// Idle time inserted between consecutive groups, in seconds.
    pub fn inter_group_gap(&self) -> f64 {
        self.inter_group_gap
    }

    /// Numerical tolerance for checks performed on this config's behalf.
    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }
}

/// One timed pulse of a schedule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScheduleEntry {
    /// Start time in seconds.
    pub t_start: f64,
    /// Pulse length in seconds, φ/Ω.
    pub duration: f64,
    /// Carrier frequency in Hz.
    pub carrier_hz: f64,
    /// The driven transition.
    pub transition: Transition,
    /// Rotation angle φ in radians.
    pub angle: f64,
    /// Carrier phase χ in radians.
    pub phase: f64,
}

/// A timed pulse sequence for a concrete level scheme.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Schedule {
    entries: Vec<ScheduleEntry>,
    total_time: f64,
}

impl Schedule {
    fn from_entries(entries: Vec<ScheduleEntry>) -> Self {
        let total_time = entries.iter().map(|e| e.t_start + e.duration).fold(0.0f64, f64::max);
        Self { entries, total_time }
    }

    /// Entries ordered by group, then by pulse order within the group.
    pub fn entries(&self) -> &[ScheduleEntry] {
        &self.entries
    }

    /// End time of the last pulse, in seconds; 0 for an empty schedule.
    pub fn total_time(&self) -> f64 {
        self.total_time
    }
}

/// Assigns times and carriers to a program's pulses.
///
/// The scheme must validate against the dataset at [`DEFAULT_MIN_SEP_HZ`];
/// rotation angles must be non-negative, since a pulse of area φ occupies
/// the transition for φ/Ω seconds. Pulses of a group start together and the
/// next group starts at the current group's latest end plus the configured
/// gap.
pub fn make_schedule(
    program: &PulseProgram,
    s: &LevelScheme,
    d: &SpectroscopicDataset,
    cfg: &RunConfig,
) -> Result<Schedule> {
    let report = validate(s, d, DEFAULT_MIN_SEP_HZ);
    if !report.pass {
        return Err(Error::InvalidScheme(format!(
            "scheme {} fails validation: {}",
            s.name,
            report.failures.join("; ")
        )));
    }
    let mut entries = Vec::new();
    let mut clock = 0.0f64;
    for (k, group) in program.groups().iter().enumerate() {
        if k > 0 {
            clock += cfg.inter_group_gap();
        }
        let mut group_length = 0.0f64;
        for pulse in group.pulses() {
            if pulse.angle() < 0.0 {
                return Err(Error::NegativeAngle(pulse.angle()));
            }
            let duration = pulse.angle() / cfg.rabi_angular_frequency();
            let transition = pulse.transition();
            let carrier_hz = transition_frequency(s, d, transition.lower(), transition.upper())?;
            entries.push(ScheduleEntry {
                t_start: clock,
                duration,
                carrier_hz,
                transition,
                angle: pulse.angle(),
                phase: pulse.phase(),
            });
            group_length = group_length.max(duration);
        }
        clock += group_length;
    }
    Ok(Schedule::from_entries(entries))
}

/// Renders a schedule as CSV. All numbers carry 17 significant digits, so
/// [`parse_schedule`] reproduces the schedule exactly.
pub fn export_schedule(schedule: &Schedule) -> String {
    let mut text = String::from(SCHEDULE_CSV_HEADER);
    text.push('\n');
    for e in schedule.entries() {
        text.push_str(&format!(
            "{},{},{},{},{},{}\n",
            format_g17(e.t_start),
            format_g17(e.duration),
            format_g17(e.carrier_hz),
            e.transition,
            format_g17(e.angle),
            format_g17(e.phase),
        ));
    }
    text
}

fn parse_csv_number(row: usize, name: &str, text: &str) -> Result<f64> {
    let value: f64 = text
        .parse()
        .map_err(|_| Error::Parse(format!("row {row}: {name} {text:?} is not a number")))?;
    if !value.is_finite() {
        return Err(Error::NonFinite("schedule entry"));
    }
    Ok(value)
}

/// Parses the CSV format written by [`export_schedule`].
pub fn parse_schedule(text: &str) -> Result<Schedule> {
    let mut lines = text.lines();
    match lines.next() {
        Some(header) if header == SCHEDULE_CSV_HEADER => {}
        other => {
            return Err(Error::Parse(format!(
                "expected header {SCHEDULE_CSV_HEADER:?}, got {other:?}"
            )))
        }
    }
    let mut entries = Vec::new();
    for (k, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let row = k + 2;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(Error::Parse(format!(
                "row {row}: expected 6 fields, got {}",
                fields.len()
            )));
        }
        entries.push(ScheduleEntry {
            t_start: parse_csv_number(row, "t_start_s", fields[0])?,
            duration: parse_csv_number(row, "duration_s", fields[1])?,
            carrier_hz: parse_csv_number(row, "carrier_hz", fields[2])?,
            transition: fields[3].parse()?,
            angle: parse_csv_number(row, "angle_rad", fields[4])?,
            phase: parse_csv_number(row, "phase_rad", fields[5])?,
        });
    }
    Ok(Schedule::from_entries(entries))
}

/// Reads either input accepted by the scheduling pipeline: a circuit file
/// (keyed `"gates"`, compiled first) or an already compiled program file
/// (keyed `"groups"`).
pub fn parse_program_or_circuit(text: &str) -> Result<PulseProgram> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = doc.as_object().ok_or_else(|| Error::Parse("expected a JSON object".to_owned()))?;
    if obj.contains_key("gates") {
        compile(&parse_circuit(text)?)
    } else if obj.contains_key("groups") {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    } else {
        Err(Error::Parse(
            "expected a circuit (\"gates\") or a compiled program (\"groups\")".to_owned(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levels::{scheme, SpectroscopicDataset};
    use crate::pulses::{LevelRole, PulseGroup};
    use crate::testutil::Rng;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn bell_circuit() -> Circuit {
        Circuit { gates: vec![GateOp::RyR { angle: FRAC_PI_2 }, GateOp::CnotRs] }
    }

    fn rabi_1mhz() -> RunConfig {
        RunConfig::from_rabi_hz(1e6, 0.0).unwrap()
    }

    #[test]
    fn parses_the_documented_schema() {
        let text = r#"{
            "gates": [
                {"op": "ry_r", "angle": 1.5707963267948966},
                {"op": "cnot_rs"},
                {"op": "cnot_sr"},
                {"op": "ry_s", "angle": 0.5},
                {"op": "raw_pulse", "transition": "E2-E3", "angle": 3.0, "phase": 0.25},
                {"op": "raw_pulse", "transition": "E0-E1", "angle": 1.0}
            ]
        }"#;
        let circuit = parse_circuit(text).unwrap();
        assert_eq!(circuit.gates.len(), 6);
        assert_eq!(circuit.gates[0], GateOp::RyR { angle: FRAC_PI_2 });
        assert_eq!(circuit.gates[1], GateOp::CnotRs);
        assert_eq!(circuit.gates[2], GateOp::CnotSr);
        assert_eq!(circuit.gates[3], GateOp::RyS { angle: 0.5 });
        match circuit.gates[4] {
            GateOp::RawPulse(p) => {
                assert_eq!(p.transition().to_string(), "E2-E3");
                assert_eq!(p.angle(), 3.0);
                assert_eq!(p.phase(), 0.25);
            }
            ref other => panic!("expected raw pulse, got {other:?}"),
        }
        match circuit.gates[5] {
            GateOp::RawPulse(p) => assert_eq!(p.phase(), FRAC_PI_2),
            ref other => panic!("expected raw pulse, got {other:?}"),
        }
    }

    #[test]
    fn parser_reports_the_right_error_kinds() {
        let unknown = parse_circuit(r#"{"gates":[{"op":"hadamard"}]}"#);
        match unknown {
            Err(Error::UnknownGate(name)) => assert_eq!(name, "hadamard"),
            other => panic!("expected UnknownGate, got {other:?}"),
        }
        let missing_angle = parse_circuit(r#"{"gates":[{"op":"ry_r"}]}"#);
        match missing_angle {
            Err(Error::Parse(msg)) => assert!(msg.contains("angle"), "{msg}"),
            other => panic!("expected Parse, got {other:?}"),
        }
        let bad_transition =
            parse_circuit(r#"{"gates":[{"op":"raw_pulse","transition":"E3-E1","angle":1.0}]}"#);
        assert!(matches!(bad_transition, Err(Error::InvalidTransition(_))));
        let not_an_object = parse_circuit("[1,2,3]");
        assert!(matches!(not_an_object, Err(Error::Parse(_))));
        let no_gates = parse_circuit("{}");
        assert!(matches!(no_gates, Err(Error::Parse(_))));
        let malformed = parse_circuit("{\"gates\": [\n  {\"op\": }\n]}");
        match malformed {
            Err(Error::Parse(msg)) => assert!(msg.contains("line"), "{msg}"),
            other => panic!("expected Parse, got {other:?}"),
        }
    }

    #[test]
    fn serialization_round_trips() {
        let circuit = Circuit {
            gates: vec![
                GateOp::RyS { angle: 2.0 * PI },
                GateOp::CnotSr,
                GateOp::RawPulse(
                    Pulse::with_phase("E1-E3".parse().unwrap(), FRAC_PI_4, 0.1).unwrap(),
                ),
            ],
        };
        let text = serialize_circuit(&circuit);
        assert_eq!(parse_circuit(&text).unwrap(), circuit);
    }

    #[test]
    fn compiles_the_bell_circuit_to_two_groups() {
        let program = compile(&bell_circuit()).unwrap();
        assert_eq!(program.len(), 2);
        let first: Vec<String> =
            program.groups()[0].pulses().iter().map(|p| p.transition().to_string()).collect();
        assert_eq!(first, ["E0-E2", "E1-E3"]);
        assert!(program.groups()[0].pulses().iter().all(|p| p.angle() == FRAC_PI_2));
        let second = program.groups()[1].pulses();
        assert_eq!(second.len(), 1);
        assert_eq!(second[0].transition().to_string(), "E2-E3");
        assert_eq!(second[0].angle(), PI);
    }

    #[test]
    fn compiled_unitaries_match_the_reference_product() {
        let ops: [fn(&mut Rng) -> GateOp; 4] = [
            |rng| GateOp::RyR { angle: 4.0 * PI * rng.uniform() },
            |rng| GateOp::RyS { angle: 4.0 * PI * rng.uniform() },
            |_| GateOp::CnotRs,
            |_| GateOp::CnotSr,
        ];
        let mut rng = Rng::seed(11);
        for _ in 0..100 {
            let len = (rng.uniform() * 8.0) as usize + 1;
            let gates: Vec<GateOp> =
                (0..len).map(|_| ops[(rng.uniform() * 4.0) as usize](&mut rng)).collect();
            let circuit = Circuit { gates };
            let compiled = compile(&circuit).unwrap().unitary();
            let reference = circuit_unitary(&circuit);
            let diff = compiled.max_abs_diff(&reference);
            assert!(diff <= 1e-12, "diff {diff} on {circuit:?}");
        }
    }

    #[test]
    fn repeated_cnot_rs_leaves_the_documented_diagonal() {
        let circuit = Circuit { gates: vec![GateOp::CnotRs, GateOp::CnotRs] };
        let expected = Matrix4::new([
            [1.0.into(), 0.0.into(), 0.0.into(), 0.0.into()],
            [0.0.into(), 1.0.into(), 0.0.into(), 0.0.into()],
            [0.0.into(), 0.0.into(), (-1.0).into(), 0.0.into()],
            [0.0.into(), 0.0.into(), 0.0.into(), (-1.0).into()],
        ])
        .unwrap();
        assert!(circuit_unitary(&circuit).max_abs_diff(&expected) <= 1e-15);
        let compiled = compile(&circuit).unwrap().unitary();
        assert!(compiled.max_abs_diff(&expected) <= 1e-12);
    }

    #[test]
    fn run_config_validates_its_inputs() {
        assert!(RunConfig::new(1.0, 0.0, 1e-12).is_ok());
        assert!(matches!(RunConfig::new(0.0, 0.0, 1e-12), Err(Error::Parse(_))));
        assert!(matches!(RunConfig::new(-1.0, 0.0, 1e-12), Err(Error::Parse(_))));
        assert!(matches!(RunConfig::new(f64::NAN, 0.0, 1e-12), Err(Error::Parse(_))));
        assert!(matches!(RunConfig::new(1.0, -1e-9, 1e-12), Err(Error::Parse(_))));
        assert!(matches!(RunConfig::new(1.0, 0.0, 0.0), Err(Error::Parse(_))));
        let cfg = RunConfig::from_rabi_hz(1e6, 0.0).unwrap();
        assert_eq!(cfg.rabi_angular_frequency(), 2.0 * PI * 1e6);
    }

    #[test]
    fn schedules_the_bell_program_with_exact_times() {
        let d = SpectroscopicDataset::builtin_pr_laf3();
        let s = scheme("fig4").unwrap();
        let program = compile(&bell_circuit()).unwrap();
        let schedule = make_schedule(&program, &s, &d, &rabi_1mhz()).unwrap();
        let e = schedule.entries();
        assert_eq!(e.len(), 3);
        assert_eq!(e[0].t_start, 0.0);
        assert_eq!(e[1].t_start, 0.0);
        assert_eq!(e[0].duration, 2.5e-7);
        assert_eq!(e[1].duration, 2.5e-7);
        assert_eq!(e[2].t_start, 2.5e-7);
        assert_eq!(e[2].duration, 5e-7);
        assert_eq!(schedule.total_time(), 7.5e-7);
        assert_eq!(e[1].carrier_hz, 1_170_000.0);
        assert_eq!(e[2].carrier_hz, 720_000.0);
        assert!((e[0].carrier_hz - 627574750292997.8).abs() <= 1e-6 * e[0].carrier_hz);
    }

    #[test]
    fn gap_shifts_later_groups_only() {
        let d = SpectroscopicDataset::builtin_pr_laf3();
        let s = scheme("fig4").unwrap();
        let program = compile(&bell_circuit()).unwrap();
        let cfg = RunConfig::from_rabi_hz(1e6, 1e-8).unwrap();
        let schedule = make_schedule(&program, &s, &d, &cfg).unwrap();
        let e = schedule.entries();
        assert_eq!(e[0].t_start, 0.0);
        assert_eq!(e[2].t_start, 2.6e-7);
        assert_eq!(schedule.total_time(), 2.6e-7 + 5e-7);
    }

    #[test]
    fn group_advance_uses_the_longest_member() {
        let d = SpectroscopicDataset::builtin_pr_laf3();
        let s = scheme("fig4").unwrap();
        let group = PulseGroup::new(vec![
            Pulse::new(Transition::new(LevelRole::E0, LevelRole::E1).unwrap(), PI).unwrap(),
            Pulse::new(Transition::new(LevelRole::E2, LevelRole::E3).unwrap(), FRAC_PI_2).unwrap(),
        ])
        .unwrap();
        let follower = PulseGroup::new(vec![Pulse::new(
            Transition::new(LevelRole::E1, LevelRole::E3).unwrap(),
            PI,
        )
        .unwrap()])
        .unwrap();
        let program = PulseProgram::new(vec![group, follower]);
        let schedule = make_schedule(&program, &s, &d, &rabi_1mhz()).unwrap();
        let e = schedule.entries();
        assert_eq!(e[0].t_start, 0.0);
        assert_eq!(e[1].t_start, 0.0);
        assert_eq!(e[2].t_start, 5e-7);
    }

    #[test]
    fn scheduling_rejects_negative_angles_and_broken_schemes() {
        let d = SpectroscopicDataset::builtin_pr_laf3();
        let s = scheme("fig4").unwrap();
        let pulse =
            Pulse::new(Transition::new(LevelRole::E2, LevelRole::E3).unwrap(), -0.5).unwrap();
        let program = PulseProgram::new(vec![PulseGroup::new(vec![pulse]).unwrap()]);
        match make_schedule(&program, &s, &d, &rabi_1mhz()) {
            Err(Error::NegativeAngle(angle)) => assert_eq!(angle, -0.5),
            other => panic!("expected NegativeAngle, got {other:?}"),
        }
        let mut broken = scheme("fig4").unwrap();
        broken.assignment[2] = broken.assignment[1];
        let program = compile(&bell_circuit()).unwrap();
        assert!(matches!(
            make_schedule(&program, &broken, &d, &rabi_1mhz()),
            Err(Error::InvalidScheme(_))
        ));
    }

    #[test]
    fn csv_round_trips_bit_for_bit() {
        let d = SpectroscopicDataset::builtin_pr_laf3();
        for name in ["fig3", "fig4"] {
            let s = scheme(name).unwrap();
            let circuit = Circuit {
                gates: vec![
                    GateOp::RyS { angle: FRAC_PI_2 },
                    GateOp::RyR { angle: 0.12345678901234568 },
                    GateOp::CnotSr,
                ],
            };
            let program = compile(&circuit).unwrap();
            let cfg = RunConfig::from_rabi_hz(1e6, 2.5e-9).unwrap();
            let schedule = make_schedule(&program, &s, &d, &cfg).unwrap();
            let text = export_schedule(&schedule);
            let reparsed = parse_schedule(&text).unwrap();
            assert_eq!(reparsed, schedule, "{name}");
            assert_eq!(export_schedule(&reparsed), text, "{name}");
        }
    }

    #[test]
    fn csv_text_has_the_documented_shape() {
        let d = SpectroscopicDataset::builtin_pr_laf3();
        let s = scheme("fig4").unwrap();
        let program = compile(&Circuit { gates: vec![GateOp::CnotRs] }).unwrap();
        let schedule = make_schedule(&program, &s, &d, &rabi_1mhz()).unwrap();
        let text = export_schedule(&schedule);
        let expected = "t_start_s,duration_s,carrier_hz,transition,angle_rad,phase_rad\n\
                        0,4.9999999999999998e-07,720000,E2-E3,3.1415926535897931,1.5707963267948966\n";
        assert_eq!(text, expected);
    }

    #[test]
    fn csv_parser_rejects_malformed_input() {
        assert!(matches!(parse_schedule(""), Err(Error::Parse(_))));
        assert!(matches!(parse_schedule("a,b,c\n"), Err(Error::Parse(_))));
        let bad_field_count = format!("{SCHEDULE_CSV_HEADER}\n1,2,3\n");
        assert!(matches!(parse_schedule(&bad_field_count), Err(Error::Parse(_))));
        let bad_number = format!("{SCHEDULE_CSV_HEADER}\nx,1,2,E0-E1,3,4\n");
        assert!(matches!(parse_schedule(&bad_number), Err(Error::Parse(_))));
        let bad_transition = format!("{SCHEDULE_CSV_HEADER}\n0,1,2,E9-E1,3,4\n");
        assert!(matches!(parse_schedule(&bad_transition), Err(Error::UnknownLevel(_))));
    }

    #[test]
    fn program_files_and_circuit_files_are_both_accepted() {
        let circuit = bell_circuit();
        let from_circuit = parse_program_or_circuit(&serialize_circuit(&circuit)).unwrap();
        assert_eq!(from_circuit, compile(&circuit).unwrap());
        let program_text = serde_json::to_string(&from_circuit).unwrap();
        let from_program = parse_program_or_circuit(&program_text).unwrap();
        assert_eq!(from_program, from_circuit);
        assert!(matches!(parse_program_or_circuit(r#"{"steps":[]}"#), Err(Error::Parse(_))));
    }
}
