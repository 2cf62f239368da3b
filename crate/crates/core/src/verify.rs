// Copyright 2026 vsq Contributors
// SPDX-License-Identifier: Apache-2.0

//! Self-verification: a suite of numeric properties over the whole crate.
//!
//! `vsq verify` runs every property below against a tolerance and reports
//! one pass/fail line each. The properties restate this crate's contracts
//! in executable form and check them against independent computations, such
//! as a series matrix exponential for the rotation matrices, integer
//! expectations for the CNOT forms, exact timing identities for schedules,
//! and reference vectors for the measurement generator.
//!
//! Bounds quoted on the properties are calibrated for the default tolerance
//! of 1e-12 and scale linearly with the requested tolerance.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use crate::compiler::{
    compile, export_schedule, make_schedule, parse_circuit, parse_schedule, serialize_circuit,
    Circuit, RunConfig,
};
use crate::encoding::{
    cnot_rs_formula, cnot_sr_formula, pauli_x, reference_gate, rotation_r, rotation_s, ry, spin_y,
    spin_z,
};
use crate::levels::{
    scheme, transition_frequency, validate, Band, SpectroscopicDataset, DEFAULT_MIN_SEP_HZ,
    OPTICAL_MIN_HZ, SPEED_OF_LIGHT_M_PER_S,
};
use crate::pulses::{
    gate_to_pulses, GateOp, LevelRole, Pulse, PulseGroup, PulseProgram, Transition,
    CANONICAL_ANGLES,
};
use crate::qmath::{
    apply, embed_two_level, equal_up_to_global_phase, tensor, Amplitude, Matrix2, Matrix4, Vector4,
};
use crate::runtime::rng::{SplitMix64, Xoshiro256PlusPlus};
use crate::runtime::{ground_state, measure, readout_plan, run_program, QuantumState};

/// Series exponential of a 2×2 complex matrix, by scaling and squaring.
///
/// The argument is halved until its largest entry is at most 1/4, the Taylor
/// series is summed to 24 terms, and the result is squared back up. Used as
/// an oracle independent of the closed-form rotation matrices.
pub(crate) fn exp_m2(a: &Matrix2) -> Matrix2 {
    let magnitude = a.max_abs_diff(&Matrix2::zero());
    let mut squarings = 0u32;
    let mut scale = 1.0f64;
    while magnitude * scale > 0.25 {
        scale *= 0.5;
        squarings += 1;
    }
    let scaled = a.scaled(Amplitude::new(scale, 0.0));
    let mut term = Matrix2::identity();
    let mut sum = Matrix2::identity();
    for k in 1..=24 {
        term = (term * scaled).scaled(Amplitude::new(1.0 / k as f64, 0.0));
        sum = sum + term;
    }
    let mut out = sum;
    for _ in 0..squarings {
        out = out * out;
    }
    out
}

/// Parameters of a verification run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyConfig {
    /// Numerical tolerance the properties are checked at.
    pub tol: f64,
    /// Seed for the randomized property inputs.
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { tol: 1e-12, seed: 1 }
    }
}

/// Outcome of one property.
#[derive(Clone, Debug)]
pub struct PropertyResult {
    /// Stable property name, `area/property`.
    pub name: &'static str,
    /// Whether the property held.
    pub passed: bool,
    /// Measured deviations on pass, the reason on failure.
    pub detail: String,
}

struct Ctx {
    rng: Xoshiro256PlusPlus,
    tol: f64,
    scale: f64,
}

impl Ctx {
    /// Uniform draw from [0, 1).
    fn uniform(&mut self) -> f64 {
        self.rng.next_f64()
    }

    /// Uniform draw from (−π, π].
    fn angle(&mut self) -> f64 {
        (1.0 - 2.0 * self.uniform()) * PI
    }

    /// Uniform draw from [0, 4π), the spinor period.
    fn spinor_angle(&mut self) -> f64 {
        self.uniform() * 4.0 * PI
    }

    /// Random element of U(2) in closed form.
    fn unitary2(&mut self) -> Matrix2 {
        let alpha = self.angle();
        let beta = self.angle();
        let gamma = self.angle();
        let t = self.uniform() * FRAC_PI_2;
        let (st, ct) = t.sin_cos();
        let phase = Amplitude::new(alpha.cos(), alpha.sin());
        let eb = Amplitude::new(beta.cos(), beta.sin());
        let eg = Amplitude::new(gamma.cos(), gamma.sin());
        Matrix2::new([
            [phase * ct * eb, phase * (-st) * eg],
            [phase * st * eg.conj(), phase * ct * eb.conj()],
        ])
        .expect("entries are finite")
    }

    /// Random index pair for a two-level embedding.
    fn level_pair(&mut self) -> (usize, usize) {
        const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        PAIRS[(self.uniform() * 6.0) as usize % 6]
    }

    /// Random 4×4 unitary from two stacked embeddings.
    fn unitary4(&mut self) -> Matrix4 {
        let (i, j) = self.level_pair();
        let a = embed_two_level(&self.unitary2(), i, j).expect("random U(2) embeds");
        let (i, j) = self.level_pair();
        let b = embed_two_level(&self.unitary2(), i, j).expect("random U(2) embeds");
        b * a
    }

    /// Random normalized state vector.
    fn state(&mut self) -> Vector4 {
        let mut amps = [Amplitude::new(0.0, 0.0); 4];
        for slot in &mut amps {
            *slot = Amplitude::new(self.angle(), self.angle());
        }
        let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for slot in &mut amps {
            *slot /= norm;
        }
        Vector4::new(amps).expect("normalized finite amplitudes")
    }

    /// Random gate for circuit-level properties.
    fn gate(&mut self) -> GateOp {
        match (self.uniform() * 5.0) as usize % 5 {
            0 => GateOp::RyR { angle: self.spinor_angle() },
            1 => GateOp::RyS { angle: self.spinor_angle() },
            2 => GateOp::CnotRs,
            3 => GateOp::CnotSr,
            _ => {
                let (i, j) = self.level_pair();
                let transition = Transition::new(
                    LevelRole::from_index(i).expect("pair indices are in range"),
                    LevelRole::from_index(j).expect("pair indices are in range"),
                )
                .expect("pairs are ordered");
                GateOp::RawPulse(
                    Pulse::with_phase(transition, self.spinor_angle(), self.angle())
                        .expect("finite pulse parameters"),
                )
            }
        }
    }

    /// Random circuit of up to eight gates.
    fn circuit(&mut self) -> Circuit {
        let len = (self.uniform() * 8.0) as usize + 1;
        Circuit { gates: (0..len).map(|_| self.gate()).collect() }
    }
}

type Outcome = std::result::Result<String, String>;

fn pass(detail: String) -> Outcome {
    Ok(detail)
}

fn bounded(what: &str, measured: f64, bound: f64) -> Outcome {
    if measured <= bound {
        Ok(format!("{what} {measured:.3e} within {bound:.3e}"))
    } else {
        Err(format!("{what} {measured:.3e} exceeds {bound:.3e}"))
    }
}

fn exact(what: &str, measured: f64) -> Outcome {
    if measured == 0.0 {
        Ok(format!("{what} exact"))
    } else {
        Err(format!("{what} deviates by {measured:.3e}, expected exact equality"))
    }
}

fn require(condition: bool, what: &str) -> std::result::Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(what.to_owned())
    }
}

fn tensor_identity(_: &mut Ctx) -> Outcome {
    let diff =
        tensor(&Matrix2::identity(), &Matrix2::identity()).max_abs_diff(&Matrix4::identity());
    exact("1⊗1 − 1", diff)
}

fn tensor_bilinearity(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let a = ctx.unitary2();
        let b = ctx.unitary2();
        let c = ctx.unitary2();
        let lhs = tensor(&(a + b), &c);
        let rhs = tensor(&a, &c) + tensor(&b, &c);
        worst = worst.max(lhs.max_abs_diff(&rhs));
    }
    bounded("bilinearity residual", worst, 1e-13 * ctx.scale)
}

fn embedding_unitarity(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let (i, j) = ctx.level_pair();
        let embedded =
            embed_two_level(&ctx.unitary2(), i, j).map_err(|e| format!("embedding failed: {e}"))?;
        worst = worst.max(embedded.unitarity_deviation());
    }
    bounded("unitarity deviation", worst, 1e-13 * ctx.scale)
}

fn adjoint_involution(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..25 {
        let u = ctx.unitary2();
        worst = worst.max(u.adjoint().adjoint().max_abs_diff(&u));
        let v = ctx.unitary4();
        worst = worst.max(v.adjoint().adjoint().max_abs_diff(&v));
    }
    exact("(U†)† − U", worst)
}

fn global_phase_equivalence(ctx: &mut Ctx) -> Outcome {
    for _ in 0..25 {
        let u = ctx.unitary4();
        let theta = ctx.angle();
        let phased = u.scaled(Amplitude::new(theta.cos(), theta.sin()));
        let same = equal_up_to_global_phase(&u, &phased, ctx.tol)
            .map_err(|e| format!("comparison failed: {e}"))?;
        require(same, "a phased copy was not recognized")?;
        let flip = Matrix4::new([
            [1.0.into(), 0.0.into(), 0.0.into(), 0.0.into()],
            [0.0.into(), 1.0.into(), 0.0.into(), 0.0.into()],
            [0.0.into(), 0.0.into(), 1.0.into(), 0.0.into()],
            [0.0.into(), 0.0.into(), 0.0.into(), (-1.0).into()],
        ])
        .expect("constant matrix is finite");
        let different = equal_up_to_global_phase(&u, &(flip * u), ctx.tol)
            .map_err(|e| format!("comparison failed: {e}"))?;
        require(!different, "a relative phase flip was not distinguished")?;
    }
    pass("phased copies accepted, relative flips rejected".to_owned())
}

fn apply_preserves_norm(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..25 {
        let u = ctx.unitary4();
        let v = ctx.state();
        let moved = apply(&u, &v).map_err(|e| format!("apply failed: {e}"))?;
        worst = worst.max((moved.norm() - 1.0).abs());
    }
    bounded("norm drift", worst, 1e-13 * ctx.scale)
}

fn spin_operator_algebra(_: &mut Ctx) -> Outcome {
    let quarter = Matrix2::identity().scaled(Amplitude::new(0.25, 0.0));
    let sy2 = spin_y() * spin_y();
    let sz2 = spin_z() * spin_z();
    let anti = spin_y() * spin_z() + spin_z() * spin_y();
    let worst = sy2
        .max_abs_diff(&quarter)
        .max(sz2.max_abs_diff(&quarter))
        .max(anti.max_abs_diff(&Matrix2::zero()));
    exact("spin-1/2 algebra residual", worst)
}

fn ry_matches_series_exponential(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    let mut angles: Vec<f64> = CANONICAL_ANGLES.to_vec();
    angles.extend((0..25).map(|_| ctx.spinor_angle()));
    for phi in angles {
        let generator = spin_y().scaled(Amplitude::new(0.0, -phi));
        worst = worst.max(exp_m2(&generator).max_abs_diff(&ry(phi)));
    }
    bounded("closed form vs series exponential", worst, 1e-13 * ctx.scale)
}

fn rotations_respect_tensor_structure(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..25 {
        let phi = ctx.spinor_angle();
        worst = worst.max(rotation_s(phi).max_abs_diff(&tensor(&Matrix2::identity(), &ry(phi))));
        worst = worst.max(rotation_r(phi).max_abs_diff(&tensor(&ry(phi), &Matrix2::identity())));
    }
    exact("rotation vs tensor construction", worst)
}

fn rotation_group_law(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..25 {
        let a = ctx.angle();
        let b = ctx.angle();
        worst = worst.max((rotation_s(a) * rotation_s(b)).max_abs_diff(&rotation_s(a + b)));
        worst = worst.max((rotation_r(a) * rotation_r(b)).max_abs_diff(&rotation_r(a + b)));
    }
    bounded("group law residual", worst, 1e-12 * ctx.scale)
}

fn rotations_commute_across_spins(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..25 {
        let a = rotation_r(ctx.angle());
        let b = rotation_s(ctx.angle());
        worst = worst.max((a * b).max_abs_diff(&(b * a)));
    }
    bounded("commutator residual", worst, 1e-13 * ctx.scale)
}

fn spinor_period(ctx: &mut Ctx) -> Outcome {
    let minus_identity = Matrix4::identity().scaled(Amplitude::new(-1.0, 0.0));
    let worst = rotation_s(2.0 * PI)
        .max_abs_diff(&minus_identity)
        .max(rotation_r(2.0 * PI).max_abs_diff(&minus_identity))
        .max(rotation_s(4.0 * PI).max_abs_diff(&Matrix4::identity()))
        .max(rotation_r(4.0 * PI).max_abs_diff(&Matrix4::identity()));
    bounded("2π sign flip and 4π period", worst, 1e-13 * ctx.scale)
}

fn integer_matrix(entries: [[i32; 4]; 4]) -> Matrix4 {
    let mut rows = [[Amplitude::new(0.0, 0.0); 4]; 4];
    for (r, row) in entries.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            rows[r][c] = Amplitude::new(v as f64, 0.0);
        }
    }
    Matrix4::new(rows).expect("integer entries are finite")
}

fn cnot_formula_entries(_: &mut Ctx) -> Outcome {
    let rs = integer_matrix([[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
    let sr = integer_matrix([[0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1]]);
    let worst = cnot_rs_formula().max_abs_diff(&rs).max(cnot_sr_formula().max_abs_diff(&sr));
    exact("operator formula entries", worst)
}

fn cnot_x_conjugation(ctx: &mut Ctx) -> Outcome {
    let x_r = tensor(&pauli_x(), &Matrix2::identity());
    let x_s = tensor(&Matrix2::identity(), &pauli_x());
    let rs = (x_r * cnot_rs_formula() * x_r)
        .max_abs_diff(&embed_two_level(&ry(PI), 2, 3).expect("ry(π) embeds"));
    let sr = (x_s * cnot_sr_formula() * x_s)
        .max_abs_diff(&embed_two_level(&ry(PI), 1, 3).expect("ry(π) embeds"));
    bounded("X-conjugation reconciliation", rs.max(sr), 1e-14 * ctx.scale)
}

fn pulse_unitarity(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (i, j) = ctx.level_pair();
        let transition = Transition::new(
            LevelRole::from_index(i).expect("pair indices are in range"),
            LevelRole::from_index(j).expect("pair indices are in range"),
        )
        .expect("pairs are ordered");
        let angle = 2.0 * ctx.spinor_angle() - 4.0 * PI;
        let pulse = Pulse::with_phase(transition, angle, ctx.angle())
            .map_err(|e| format!("pulse construction failed: {e}"))?;
        worst = worst.max(pulse.unitary().unitarity_deviation());
    }
    bounded("unitarity deviation", worst, 1e-13 * ctx.scale)
}

fn rotation_synthesis(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    let mut angles: Vec<f64> = CANONICAL_ANGLES.to_vec();
    angles.extend((0..25).map(|_| ctx.spinor_angle()));
    for phi in angles {
        for (gate, reference) in [
            (GateOp::RyS { angle: phi }, rotation_s(phi)),
            (GateOp::RyR { angle: phi }, rotation_r(phi)),
        ] {
            let groups = gate_to_pulses(&gate).map_err(|e| format!("lowering failed: {e}"))?;
            let synthesized = groups.iter().fold(Matrix4::identity(), |acc, g| g.unitary() * acc);
            worst = worst.max(synthesized.max_abs_diff(&reference));
        }
    }
    bounded("pulse synthesis vs closed form", worst, ctx.tol)
}

fn cnot_truth_tables(ctx: &mut Ctx) -> Outcome {
    let cases = [(GateOp::CnotRs, [0usize, 1, 3, 2]), (GateOp::CnotSr, [0usize, 3, 2, 1])];
    for (gate, permutation) in cases {
        let groups = gate_to_pulses(&gate).map_err(|e| format!("lowering failed: {e}"))?;
        let unitary = groups.iter().fold(Matrix4::identity(), |acc, g| g.unitary() * acc);
        for (col, &image) in permutation.iter().enumerate() {
            for row in 0..4 {
                let magnitude = unitary.entry(row, col).norm();
                let expected = if row == image { 1.0 } else { 0.0 };
                require(
                    (magnitude - expected).abs() <= ctx.tol,
                    &format!(
                        "{}: |entry({row},{col})| = {magnitude}, expected {expected}",
                        gate.name()
                    ),
                )?;
            }
        }
    }
    pass("basis maps 00→00 01→01 10→11 11→10 and 00→00 01→11 10→10 11→01".to_owned())
}

fn group_overlap_rejected(_: &mut Ctx) -> Outcome {
    let t01 = Transition::new(LevelRole::E0, LevelRole::E1).expect("ordered");
    let t13 = Transition::new(LevelRole::E1, LevelRole::E3).expect("ordered");
    let t23 = Transition::new(LevelRole::E2, LevelRole::E3).expect("ordered");
    let overlapping = PulseGroup::new(vec![
        Pulse::new(t01, PI).expect("finite"),
        Pulse::new(t13, PI).expect("finite"),
    ]);
    require(overlapping.is_err(), "a group driving E1 twice was accepted")?;
    let disjoint = PulseGroup::new(vec![
        Pulse::new(t01, PI).expect("finite"),
        Pulse::new(t23, PI).expect("finite"),
    ]);
    require(disjoint.is_ok(), "a disjoint group was rejected")?;
    pass("overlap on a shared level rejected, disjoint accepted".to_owned())
}

fn disjoint_pulses_commute(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    let pairs = [
        ((LevelRole::E0, LevelRole::E1), (LevelRole::E2, LevelRole::E3)),
        ((LevelRole::E0, LevelRole::E2), (LevelRole::E1, LevelRole::E3)),
        ((LevelRole::E0, LevelRole::E3), (LevelRole::E1, LevelRole::E2)),
    ];
    for ((a_lo, a_hi), (b_lo, b_hi)) in pairs {
        for _ in 0..10 {
            let a = Pulse::with_phase(
                Transition::new(a_lo, a_hi).expect("ordered"),
                ctx.spinor_angle(),
                ctx.angle(),
            )
            .expect("finite");
            let b = Pulse::with_phase(
                Transition::new(b_lo, b_hi).expect("ordered"),
                ctx.spinor_angle(),
                ctx.angle(),
            )
            .expect("finite");
            let ab = a.unitary() * b.unitary();
            let ba = b.unitary() * a.unitary();
            worst = worst.max(ab.max_abs_diff(&ba));
        }
    }
    bounded("commutator residual", worst, 1e-13 * ctx.scale)
}

fn program_left_composition(ctx: &mut Ctx) -> Outcome {
    let mut groups = Vec::new();
    for _ in 0..3 {
        let (i, j) = ctx.level_pair();
        let transition = Transition::new(
            LevelRole::from_index(i).expect("in range"),
            LevelRole::from_index(j).expect("in range"),
        )
        .expect("ordered");
        let pulse = Pulse::with_phase(transition, ctx.spinor_angle(), ctx.angle()).expect("finite");
        groups.push(PulseGroup::new(vec![pulse]).expect("single pulse groups are disjoint"));
    }
    let program = PulseProgram::new(groups.clone());
    let manual = groups[2].unitary() * (groups[1].unitary() * groups[0].unitary());
    exact("program unitary vs explicit left product", program.unitary().max_abs_diff(&manual))
}

fn builtin_schemes_validate(_: &mut Ctx) -> Outcome {
    let d = SpectroscopicDataset::builtin_pr_laf3();
    for name in ["fig3", "fig4"] {
        let s = scheme(name).map_err(|e| format!("scheme lookup failed: {e}"))?;
        let report = validate(&s, &d, DEFAULT_MIN_SEP_HZ);
        require(report.pass, &format!("{name} failed: {}", report.failures.join("; ")))?;
    }
    let report = validate(&scheme("fig4").expect("fig4 exists"), &d, DEFAULT_MIN_SEP_HZ);
    require(
        report.min_separation_hz == Some(450_000.0),
        "fig4 minimum carrier separation is not exactly 450 kHz",
    )?;
    pass("fig3 and fig4 validate; fig4 min separation 450 kHz".to_owned())
}

fn ladder_splittings_exact(_: &mut Ctx) -> Outcome {
    use crate::levels::TermLabel;
    let d = SpectroscopicDataset::builtin_pr_laf3();
    let offsets = |label| -> Vec<f64> {
        d.term(label)
            .expect("builtin terms exist")
            .sublevels()
            .iter()
            .map(|s| s.offset_hz())
            .collect()
    };
    let h4 = offsets(TermLabel::H4);
    let p0 = offsets(TermLabel::P0);
    require(h4[1] - h4[0] == 8_470_000.0, "³H₄ 1/2→3/2 splitting is not exactly 8.47 MHz")?;
    require(h4[2] - h4[1] == 16_700_000.0, "³H₄ 3/2→5/2 splitting is not exactly 16.7 MHz")?;
    require(p0[1] - p0[0] == 450_000.0, "³P₀ 1/2→3/2 splitting is not exactly 0.45 MHz")?;
    require(p0[2] - p0[1] == 720_000.0, "³P₀ 3/2→5/2 splitting is not exactly 0.72 MHz")?;
    require(p0[2] - p0[0] == 1_170_000.0, "³P₀ 1/2→5/2 splitting is not exactly 1.17 MHz")?;
    pass("all quadrupole splittings are exact in Hz".to_owned())
}

fn fig4_rf_carriers(_: &mut Ctx) -> Outcome {
    let d = SpectroscopicDataset::builtin_pr_laf3();
    let s = scheme("fig4").expect("fig4 exists");
    let e2_e3 = transition_frequency(&s, &d, LevelRole::E2, LevelRole::E3)
        .map_err(|e| format!("carrier lookup failed: {e}"))?;
    let e1_e3 = transition_frequency(&s, &d, LevelRole::E1, LevelRole::E3)
        .map_err(|e| format!("carrier lookup failed: {e}"))?;
    require(e2_e3 == 720_000.0, "E2-E3 carrier is not exactly 0.72 MHz")?;
    require(e1_e3 == 1_170_000.0, "E1-E3 carrier is not exactly 1.17 MHz")?;
    require(Band::of(e2_e3) == Band::RadioFrequency, "E2-E3 is not in the rf band")?;
    require(Band::of(e1_e3) == Band::RadioFrequency, "E1-E3 is not in the rf band")?;
    pass("ladder carriers 0.72 MHz and 1.17 MHz, both rf".to_owned())
}

fn fig3_optical_carriers(_: &mut Ctx) -> Outcome {
    let d = SpectroscopicDataset::builtin_pr_laf3();
    let s = scheme("fig3").expect("fig3 exists");
    let report = validate(&s, &d, DEFAULT_MIN_SEP_HZ);
    for carrier in &report.carriers {
        require(
            carrier.frequency_hz > OPTICAL_MIN_HZ,
            &format!("{} at {} Hz is not optical", carrier.transition, carrier.frequency_hz),
        )?;
    }
    let e0_e2 = transition_frequency(&s, &d, LevelRole::E0, LevelRole::E2)
        .map_err(|e| format!("carrier lookup failed: {e}"))?;
    let expected = SPEED_OF_LIGHT_M_PER_S / 592.5e-9;
    let relative = (e0_e2 - expected).abs() / expected;
    bounded("E0-E2 vs c/592.5 nm, relative", relative, 1e-6)
}

fn transition_symmetry(_: &mut Ctx) -> Outcome {
    let d = SpectroscopicDataset::builtin_pr_laf3();
    for name in ["fig3", "fig4"] {
        let s = scheme(name).expect("builtin schemes exist");
        for i in 0..4 {
            for j in (i + 1)..4 {
                let a = LevelRole::from_index(i).expect("in range");
                let b = LevelRole::from_index(j).expect("in range");
                let forward = transition_frequency(&s, &d, a, b)
                    .map_err(|e| format!("lookup failed: {e}"))?;
                let backward = transition_frequency(&s, &d, b, a)
                    .map_err(|e| format!("lookup failed: {e}"))?;
                require(forward == backward, &format!("{name}: {a}-{b} is not symmetric"))?;
                require(forward > 0.0, &format!("{name}: {a}-{b} is not positive"))?;
            }
        }
    }
    pass("all role pairs symmetric and positive on both schemes".to_owned())
}

fn dataset_json_round_trip(_: &mut Ctx) -> Outcome {
    let d = SpectroscopicDataset::builtin_pr_laf3();
    let back = SpectroscopicDataset::from_json(&d.to_json())
        .map_err(|e| format!("round trip failed: {e}"))?;
    require(back == d, "dataset changed across a JSON round trip")?;
    pass("builtin dataset survives a JSON round trip unchanged".to_owned())
}

fn lowering_matches_reference(ctx: &mut Ctx) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let circuit = ctx.circuit();
        let compiled = compile(&circuit).map_err(|e| format!("compilation failed: {e}"))?.unitary();
        let reference =
            circuit.gates.iter().fold(Matrix4::identity(), |acc, gate| reference_gate(gate) * acc);
        worst = worst.max(compiled.max_abs_diff(&reference));
    }
    bounded("compiled vs reference unitary", worst, ctx.tol)
}

fn circuit_json_round_trip(ctx: &mut Ctx) -> Outcome {
    for _ in 0..25 {
        let circuit = ctx.circuit();
        let text = serialize_circuit(&circuit);
        let back = parse_circuit(&text).map_err(|e| format!("re-parse failed: {e}"))?;
        require(back == circuit, "circuit changed across a JSON round trip")?;
    }
    pass("random circuits survive JSON round trips unchanged".to_owned())
}

fn schedule_timing(ctx: &mut Ctx) -> Outcome {
    let d = SpectroscopicDataset::builtin_pr_laf3();
    let s = scheme("fig4").expect("fig4 exists");
    let cfg = RunConfig::from_rabi_hz(1e6, 1e-8).map_err(|e| format!("config failed: {e}"))?;
    let mut groups = Vec::new();
    for _ in 0..4 {
        let angle = ctx.spinor_angle();
        groups.push(
            gate_to_pulses(&GateOp::RyR { angle })
                .map_err(|e| format!("lowering failed: {e}"))?
                .remove(0),
        );
    }
    let program = PulseProgram::new(groups);
    let schedule =
        make_schedule(&program, &s, &d, &cfg).map_err(|e| format!("scheduling failed: {e}"))?;
    let mut clock = 0.0f64;
    let mut entry = schedule.entries().iter();
    for (k, group) in program.groups().iter().enumerate() {
        if k > 0 {
            clock += cfg.inter_group_gap();
        }
        let mut longest = 0.0f64;
        for pulse in group.pulses() {
            let e = entry.next().ok_or("schedule has fewer entries than pulses")?;
            let duration = pulse.angle() / cfg.rabi_angular_frequency();
            require(e.t_start == clock, "a pulse does not start with its group")?;
            require(e.duration == duration, "a duration is not exactly angle over Ω")?;
            longest = longest.max(duration);
        }
        clock += longest;
    }
    require(entry.next().is_none(), "schedule has more entries than pulses")?;
    require(schedule.total_time() == clock, "total time is not the last group's end")?;
    pass("starts, durations, and total time reproduce the documented rule".to_owned())
}

fn schedule_csv_round_trip(ctx: &mut Ctx) -> Outcome {
    let d = SpectroscopicDataset::builtin_pr_laf3();
    let s = scheme("fig4").expect("fig4 exists");
    let cfg = RunConfig::from_rabi_hz(1e6, 0.0).map_err(|e| format!("config failed: {e}"))?;
    let circuit = ctx.circuit();
    let program = compile(&circuit).map_err(|e| format!("compilation failed: {e}"))?;
    let schedule =
        make_schedule(&program, &s, &d, &cfg).map_err(|e| format!("scheduling failed: {e}"))?;
    let text = export_schedule(&schedule);
    let back = parse_schedule(&text).map_err(|e| format!("re-parse failed: {e}"))?;
    require(back == schedule, "schedule changed across a CSV round trip")?;
    require(export_schedule(&back) == text, "CSV text is not reproduced bit for bit")?;
    pass("schedules survive CSV round trips bit for bit".to_owned())
}

fn bell_schedule_duration(_: &mut Ctx) -> Outcome {
    let d = SpectroscopicDataset::builtin_pr_laf3();
    let s = scheme("fig4").expect("fig4 exists");
    let circuit = Circuit { gates: vec![GateOp::RyR { angle: FRAC_PI_2 }, GateOp::CnotRs] };
    let program = compile(&circuit).map_err(|e| format!("compilation failed: {e}"))?;
    let cfg = RunConfig::from_rabi_hz(1e6, 0.0).map_err(|e| format!("config failed: {e}"))?;
    let schedule =
        make_schedule(&program, &s, &d, &cfg).map_err(|e| format!("scheduling failed: {e}"))?;
    let entries = schedule.entries();
    require(entries.len() == 3, "bell program should schedule three pulses")?;
    require(entries[2].duration == 5e-7, "π pulse at Ω = 2π·1 MHz is not exactly 500 ns")?;
    require(entries[2].carrier_hz == 720_000.0, "CNOT carrier is not exactly 0.72 MHz")?;
    require(schedule.total_time() == 7.5e-7, "bell total time is not exactly 750 ns")?;
    pass("π pulse 500 ns, total 750 ns, carrier 0.72 MHz, all exact".to_owned())
}

fn rng_reference_vectors(_: &mut Ctx) -> Outcome {
    let mut mixer = SplitMix64::new(0);
    let split: Vec<u64> = (0..4).map(|_| mixer.next_u64()).collect();
    require(
        split == [0xe220a8397b1dcdaf, 0x6e789e6aa1b965f4, 0x06c45d188009454f, 0xf88bb8a8724c81ec],
        "splitmix64 deviates from its reference stream",
    )?;
    let mut rng = Xoshiro256PlusPlus::from_seed_array([1, 2, 3, 4]);
    let xo: Vec<u64> = (0..4).map(|_| rng.next_u64()).collect();
    require(
        xo == [41943041, 58720359, 3588806011781223, 3591011842654386],
        "xoshiro256++ deviates from its reference stream",
    )?;
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(42);
    require(
        rng.next_u64() == 15021278609987233951,
        "seeded stream deviates from its frozen value",
    )?;
    pass("splitmix64 and xoshiro256++ match their reference streams".to_owned())
}

fn rng_unit_interval(ctx: &mut Ctx) -> Outcome {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(ctx.rng.next_u64());
    for _ in 0..1000 {
        let u = rng.next_f64();
        require((0.0..1.0).contains(&u), &format!("draw {u} escaped [0, 1)"))?;
    }
    pass("1000 draws stayed in [0, 1)".to_owned())
}

fn bell_state_amplitudes(ctx: &mut Ctx) -> Outcome {
    let circuit = Circuit { gates: vec![GateOp::RyR { angle: FRAC_PI_2 }, GateOp::CnotRs] };
    let program = compile(&circuit).map_err(|e| format!("compilation failed: {e}"))?;
    let state =
        run_program(&program, &ground_state()).map_err(|e| format!("evolution failed: {e}"))?;
    let amps = state.amplitudes();
    let worst = (amps[0] - Amplitude::new(FRAC_1_SQRT_2, 0.0))
        .norm()
        .max((amps[3] - Amplitude::new(FRAC_1_SQRT_2, 0.0)).norm())
        .max(amps[1].norm())
        .max(amps[2].norm());
    bounded("bell amplitudes vs (1/√2, 0, 0, 1/√2)", worst, ctx.tol)
}

fn measurement_determinism(_: &mut Ctx) -> Outcome {
    let state = ground_state();
    let a = measure(&state, 42, 1000);
    let b = measure(&state, 42, 1000);
    require(a == b, "two runs at the same seed disagreed")?;
    require(a.counts.iter().sum::<u64>() == 1000, "counts do not sum to the shot count")?;
    pass("same seed, same histogram".to_owned())
}

fn bell_parity_counts(_: &mut Ctx) -> Outcome {
    let circuit = Circuit { gates: vec![GateOp::RyR { angle: FRAC_PI_2 }, GateOp::CnotRs] };
    let program = compile(&circuit).map_err(|e| format!("compilation failed: {e}"))?;
    let state =
        run_program(&program, &ground_state()).map_err(|e| format!("evolution failed: {e}"))?;
    let histogram = measure(&state, 42, 10_000);
    require(histogram.counts[1] == 0, "outcome 01 was drawn from a bell state")?;
    require(histogram.counts[2] == 0, "outcome 10 was drawn from a bell state")?;
    let f00 = histogram.frequencies()[0];
    require((f00 - 0.5).abs() <= 0.02, &format!("f(00) = {f00} strays more than 0.02 from 1/2"))?;
    pass(format!("counts {:?}, odd-parity outcomes at zero", histogram.counts))
}

fn uniform_frequencies(_: &mut Ctx) -> Outcome {
    let unitary = rotation_s(FRAC_PI_2) * rotation_r(FRAC_PI_2);
    let amps =
        apply(&unitary, ground_state().vector()).map_err(|e| format!("evolution failed: {e}"))?;
    let state = QuantumState::new(amps).map_err(|e| format!("state failed: {e}"))?;
    let mut worst = 0.0f64;
    for seed in 6..16 {
        let histogram = measure(&state, seed, 10_000);
        for f in histogram.frequencies() {
            worst = worst.max((f - 0.25).abs());
        }
    }
    bounded("max |frequency − 1/4| over 10 seeds × 10⁴ shots", worst, 0.01)
}

fn readout_carriers_resolve(_: &mut Ctx) -> Outcome {
    let d = SpectroscopicDataset::builtin_pr_laf3();
    for name in ["fig3", "fig4"] {
        let s = scheme(name).expect("builtin schemes exist");
        let plan = readout_plan(&s, &d).map_err(|e| format!("planning failed: {e}"))?;
        require(plan.distinguishable, &format!("{name}: readout carriers are not resolvable"))?;
    }
    let plan = readout_plan(&scheme("fig4").expect("fig4 exists"), &d)
        .map_err(|e| format!("planning failed: {e}"))?;
    require(plan.min_separation_hz == 450_000.0, "fig4 readout separation is not exactly 450 kHz")?;
    let expected =
        SPEED_OF_LIGHT_M_PER_S / 450e-9 - (SPEED_OF_LIGHT_M_PER_S / 477.7e-9 + 1_170_000.0);
    let relative = (plan.lines[2].carrier_hz - expected.abs()).abs() / expected.abs();
    bounded("fig4 E3 transfer carrier vs wavelength difference, relative", relative, 1e-6)
}

type Check = (&'static str, fn(&mut Ctx) -> Outcome);

/// Runs every property and reports the outcomes in declaration order.
pub fn run_all(cfg: &VerifyConfig) -> Vec<PropertyResult> {
    let checks: [Check; 38] = [
        ("qmath/tensor-identity", tensor_identity),
        ("qmath/tensor-bilinearity", tensor_bilinearity),
        ("qmath/embedding-unitarity", embedding_unitarity),
        ("qmath/adjoint-involution", adjoint_involution),
        ("qmath/global-phase-equivalence", global_phase_equivalence),
        ("qmath/apply-preserves-norm", apply_preserves_norm),
        ("encoding/spin-operator-algebra", spin_operator_algebra),
        ("encoding/ry-matches-series-exponential", ry_matches_series_exponential),
        ("encoding/rotations-respect-tensor-structure", rotations_respect_tensor_structure),
        ("encoding/rotation-group-law", rotation_group_law),
        ("encoding/rotations-commute-across-spins", rotations_commute_across_spins),
        ("encoding/spinor-period", spinor_period),
        ("encoding/cnot-formula-entries", cnot_formula_entries),
        ("encoding/cnot-x-conjugation", cnot_x_conjugation),
        ("pulses/pulse-unitarity", pulse_unitarity),
        ("pulses/rotation-synthesis", rotation_synthesis),
        ("pulses/cnot-truth-tables", cnot_truth_tables),
        ("pulses/group-overlap-rejected", group_overlap_rejected),
        ("pulses/disjoint-pulses-commute", disjoint_pulses_commute),
        ("pulses/program-left-composition", program_left_composition),
        ("levels/builtin-schemes-validate", builtin_schemes_validate),
        ("levels/ladder-splittings-exact", ladder_splittings_exact),
        ("levels/fig4-rf-carriers", fig4_rf_carriers),
        ("levels/fig3-optical-carriers", fig3_optical_carriers),
        ("levels/transition-symmetry", transition_symmetry),
        ("levels/dataset-json-round-trip", dataset_json_round_trip),
        ("compiler/lowering-matches-reference", lowering_matches_reference),
        ("compiler/circuit-json-round-trip", circuit_json_round_trip),
        ("compiler/schedule-timing", schedule_timing),
        ("compiler/schedule-csv-round-trip", schedule_csv_round_trip),
        ("compiler/bell-schedule-duration", bell_schedule_duration),
        ("runtime/rng-reference-vectors", rng_reference_vectors),
        ("runtime/unit-interval", rng_unit_interval),
        ("runtime/bell-state-amplitudes", bell_state_amplitudes),
        ("runtime/measurement-determinism", measurement_determinism),
        ("runtime/bell-parity-counts", bell_parity_counts),
        ("runtime/uniform-frequencies", uniform_frequencies),
        ("runtime/readout-carriers-resolve", readout_carriers_resolve),
    ];
    let scale = cfg.tol / 1e-12;
    checks
        .iter()
        .enumerate()
        .map(|(k, (name, body))| {
            let mut ctx = Ctx {
                rng: Xoshiro256PlusPlus::seed_from_u64(cfg.seed.wrapping_add(k as u64)),
                tol: cfg.tol,
                scale,
            };
            match body(&mut ctx) {
                Ok(detail) => PropertyResult { name, passed: true, detail },
                Err(detail) => PropertyResult { name, passed: false, detail },
            }
        })
        .collect()
}
