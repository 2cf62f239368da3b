// Copyright 2026 vsq Contributors
// SPDX-License-Identifier: Apache-2.0

//! The `vsq` command-line interface.
//!
//! Subcommands mirror the library pipeline: `verify` runs the property
//! suite, `truth-table` prints a gate's basis action, `compile` lowers a
//! circuit to pulses, `schedule` times a program against a level scheme,
//! `simulate` samples measurement outcomes, and `levels show` inspects the
//! spectroscopic data. Exit codes: 0 on success, 1 for domain errors
//! (prefixed `error:` on stderr), 2 for usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::compiler::{
    compile, export_schedule, make_schedule, parse_circuit, parse_program_or_circuit, Circuit,
    RunConfig,
};
use crate::error::Error;
use crate::levels::{scheme, validate, LevelScheme, SpectroscopicDataset, DEFAULT_MIN_SEP_HZ};
use crate::numfmt::{format_g, format_g17};
use crate::pulses::{GateOp, LevelRole};
use crate::qmath::{Amplitude, Matrix4};
use crate::runtime::{
    ground_state, measure, outcome_to_emission, readout_plan, run_program, MeasurementHistogram,
};
use crate::verify::{run_all, VerifyConfig};

#[derive(Parser)]
#[command(
    name = "vsq",
    version,
    about = "Simulator and pulse compiler for a two-qubit register in four optical levels of one ion"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the self-verification property suite
    Verify {
        /// Numerical tolerance the properties are checked at
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// Seed for randomized property inputs
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Print a gate's basis action and matrix
    TruthTable {
        /// Gate name: ry_r, ry_s, cnot_rs, or cnot_sr
        gate: String,
        /// Rotation angle in radians, required for the ry gates
        #[arg(long)]
        angle: Option<f64>,
    },
    /// Lower a circuit file to a pulse program
    Compile {
        /// Circuit JSON file
        circuit: PathBuf,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time a circuit or program against a level scheme, as CSV
    Schedule {
        /// Circuit or compiled program JSON file
        input: PathBuf,
        /// Level scheme: fig3 or fig4
        #[arg(long)]
        scheme: String,
        /// Rabi frequency in Hz; the angular frequency is 2π times this
        #[arg(long)]
        rabi_hz: f64,
        /// Idle time between pulse groups in seconds
        #[arg(long, default_value_t = 0.0)]
        gap_s: f64,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compile a circuit, evolve the ground state, and sample measurements
    Simulate {
        /// Circuit JSON file
        circuit: PathBuf,
        /// Number of measurement shots
        #[arg(long, default_value_t = 1024)]
        shots: u64,
        /// Measurement sampling seed
        #[arg(long)]
        seed: u64,
        /// Level scheme to hold the register: fig3 or fig4
        #[arg(long)]
        scheme: Option<String>,
        /// Attach readout emission records; requires --scheme
        #[arg(long, requires = "scheme")]
        readout: bool,
    },
    /// Inspect spectroscopic level data
    #[command(subcommand)]
    Levels(LevelsCommand),
}

#[derive(Subcommand)]
enum LevelsCommand {
    /// Print a scheme's levels, gate carriers, and validation verdict
    Show {
        /// Level scheme: fig3 or fig4
        #[arg(long)]
        scheme: String,
        /// Output format
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum OutputFormat {
    Table,
    Json,
}

enum CliFailure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for CliFailure {
    fn from(e: Error) -> Self {
        CliFailure::Domain(e)
    }
}

type CmdResult = std::result::Result<i32, CliFailure>;

/// Parses arguments, runs the selected command, and returns the process
/// exit code. All normal output goes to `stdout`, errors to `stderr`.
pub fn run_cli<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    2
                }
            };
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(CliFailure::Usage(message)) => {
            let _ = writeln!(stderr, "error: {message}");
            2
        }
        Err(CliFailure::Domain(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Verify { tol, seed } => cmd_verify(tol, seed, out),
        Command::TruthTable { gate, angle } => cmd_truth_table(&gate, angle, out),
        Command::Compile { circuit, out: target } => cmd_compile(&circuit, target.as_deref(), out),
        Command::Schedule { input, scheme, rabi_hz, gap_s, out: target } => {
            cmd_schedule(&input, &scheme, rabi_hz, gap_s, target.as_deref(), out)
        }
        Command::Simulate { circuit, shots, seed, scheme, readout } => {
            cmd_simulate(&circuit, shots, seed, scheme.as_deref(), readout, out)
        }
        Command::Levels(LevelsCommand::Show { scheme, format }) => {
            cmd_levels_show(&scheme, format, out)
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> std::result::Result<(), CliFailure> {
    out.write_all(text.as_bytes()).map_err(|e| CliFailure::Domain(e.into()))
}

fn with_path(path: &Path, e: std::io::Error) -> CliFailure {
    let message = format!("{}: {e}", path.display());
    CliFailure::Domain(std::io::Error::new(e.kind(), message).into())
}

fn read_file(path: &Path) -> std::result::Result<String, CliFailure> {
    std::fs::read_to_string(path).map_err(|e| with_path(path, e))
}

fn write_output(
    target: Option<&Path>,
    text: &str,
    out: &mut dyn Write,
) -> std::result::Result<(), CliFailure> {
    match target {
        Some(path) => std::fs::write(path, text).map_err(|e| with_path(path, e)),
        None => emit(out, text),
    }
}

fn cmd_verify(tol: f64, seed: u64, out: &mut dyn Write) -> CmdResult {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(CliFailure::Usage(format!(
            "--tol must be a positive finite number, got {tol}"
        )));
    }
    let results = run_all(&VerifyConfig { tol, seed });
    let mut failed = 0usize;
    let mut report = String::new();
    for r in &results {
        if r.passed {
            report.push_str(&format!("PASS {}\n", r.name));
        } else {
            failed += 1;
            report.push_str(&format!("FAIL {}: {}\n", r.name, r.detail));
        }
    }
    report.push_str(&format!("{} passed, {failed} failed\n", results.len() - failed));
    emit(out, &report)?;
    Ok(if failed > 0 { 1 } else { 0 })
}

/// Renders a unit-magnitude phase as 1, -1, i, or -i when within 1e-9 of
/// one of them, and as a 6-digit complex number otherwise.
fn render_phase(z: Amplitude) -> String {
    const NAMED: [(f64, f64, &str); 4] =
        [(1.0, 0.0, "1"), (-1.0, 0.0, "-1"), (0.0, 1.0, "i"), (0.0, -1.0, "-i")];
    for (re, im, name) in NAMED {
        if (z - Amplitude::new(re, im)).norm() <= 1e-9 {
            return name.to_owned();
        }
    }
    format!("{}+{}i", format_g(z.re, 6), format_g(z.im, 6))
}

/// Extracts the permutation and column phases of a unitary whose every
/// column has a single entry of magnitude 1, if it has that shape.
fn permutation_form(u: &Matrix4) -> Option<([usize; 4], [Amplitude; 4])> {
    let mut mapping = [0usize; 4];
    let mut phases = [Amplitude::new(0.0, 0.0); 4];
    let mut rows_used = [false; 4];
    for col in 0..4 {
        let mut hit = None;
        for row in 0..4 {
            if u.entry(row, col).norm() > 1e-9 {
                if hit.is_some() {
                    return None;
                }
                hit = Some(row);
            }
        }
        let row = hit?;
        if rows_used[row] {
            return None;
        }
        rows_used[row] = true;
        mapping[col] = row;
        phases[col] = u.entry(row, col);
    }
    Some((mapping, phases))
}

fn cmd_truth_table(gate: &str, angle: Option<f64>, out: &mut dyn Write) -> CmdResult {
    let op = match gate {
        "ry_r" | "ry_s" => {
            let angle = angle
                .ok_or_else(|| CliFailure::Usage(format!("--angle is required for {gate}")))?;
            if gate == "ry_r" {
                GateOp::RyR { angle }
            } else {
                GateOp::RyS { angle }
            }
        }
        "cnot_rs" | "cnot_sr" => {
            if angle.is_some() {
                return Err(CliFailure::Usage(format!("--angle is not accepted for {gate}")));
            }
            if gate == "cnot_rs" {
                GateOp::CnotRs
            } else {
                GateOp::CnotSr
            }
        }
        other => return Err(Error::UnknownGate(other.to_owned()).into()),
    };
    let unitary = compile(&Circuit { gates: vec![op] })?.unitary();
    let mut text = String::new();
    if let Some((mapping, phases)) = permutation_form(&unitary) {
        let arrows: Vec<String> = (0..4)
            .map(|col| {
                format!(
                    "{}→{}",
                    MeasurementHistogram::outcome_label(col),
                    MeasurementHistogram::outcome_label(mapping[col])
                )
            })
            .collect();
        text.push_str(&arrows.join(" "));
        text.push('\n');
        let rendered: Vec<String> = phases.iter().map(|&z| render_phase(z)).collect();
        text.push_str(&format!("phases ({})\n", rendered.join(", ")));
    }
    text.push_str(&format!("{unitary}\n"));
    emit(out, &text)?;
    Ok(0)
}

fn cmd_compile(circuit_path: &Path, target: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    let circuit = parse_circuit(&read_file(circuit_path)?)?;
    let program = compile(&circuit)?;
    let mut text = serde_json::to_string_pretty(&program)
        .map_err(|e| CliFailure::Domain(Error::Parse(e.to_string())))?;
    text.push('\n');
    write_output(target, &text, out)?;
    Ok(0)
}

fn cmd_schedule(
    input: &Path,
    scheme_name: &str,
    rabi_hz: f64,
    gap_s: f64,
    target: Option<&Path>,
    out: &mut dyn Write,
) -> CmdResult {
    let program = parse_program_or_circuit(&read_file(input)?)?;
    let s = scheme(scheme_name)?;
    let d = SpectroscopicDataset::from_env_or_builtin()?;
    let cfg = RunConfig::from_rabi_hz(rabi_hz, gap_s)?;
    let schedule = make_schedule(&program, &s, &d, &cfg)?;
    write_output(target, &export_schedule(&schedule), out)?;
    Ok(0)
}

fn require_valid(s: &LevelScheme, d: &SpectroscopicDataset) -> std::result::Result<(), CliFailure> {
    let report = validate(s, d, DEFAULT_MIN_SEP_HZ);
    if report.pass {
        Ok(())
    } else {
        Err(Error::InvalidScheme(format!(
            "scheme {} fails validation: {}",
            s.name,
            report.failures.join("; ")
        ))
        .into())
    }
}

fn cmd_simulate(
    circuit_path: &Path,
    shots: u64,
    seed: u64,
    scheme_name: Option<&str>,
    readout: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let circuit = parse_circuit(&read_file(circuit_path)?)?;
    let program = compile(&circuit)?;
    let state = run_program(&program, &ground_state())?;
    let histogram = measure(&state, seed, shots);
    let mut counts = serde_json::Map::new();
    for (k, &count) in histogram.counts.iter().enumerate() {
        counts.insert(MeasurementHistogram::outcome_label(k).to_owned(), Value::from(count));
    }
    let mut doc = serde_json::Map::new();
    doc.insert("shots".to_owned(), Value::from(histogram.shots));
    doc.insert("seed".to_owned(), Value::from(histogram.seed));
    doc.insert("counts".to_owned(), Value::Object(counts));
    if let Some(name) = scheme_name {
        let s = scheme(name)?;
        let d = SpectroscopicDataset::from_env_or_builtin()?;
        if readout {
            let plan = readout_plan(&s, &d)?;
            let mut emission = Vec::new();
            for outcome in 0..4 {
                if histogram.counts[outcome] == 0 {
                    continue;
                }
                let record = outcome_to_emission(&plan, outcome)?;
                let mut entry = serde_json::Map::new();
                entry.insert(
                    "outcome".to_owned(),
                    Value::from(MeasurementHistogram::outcome_label(outcome)),
                );
                if let Some(line) = record.transfer {
                    entry.insert("carrier_hz".to_owned(), Value::from(line.carrier_hz));
                }
                emission.push(Value::Object(entry));
            }
            doc.insert("emission".to_owned(), Value::from(emission));
        } else {
            require_valid(&s, &d)?;
        }
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(doc))
        .map_err(|e| CliFailure::Domain(Error::Parse(e.to_string())))?;
    text.push('\n');
    emit(out, &text)?;
    Ok(0)
}

fn cmd_levels_show(scheme_name: &str, format: OutputFormat, out: &mut dyn Write) -> CmdResult {
    let s = scheme(scheme_name)?;
    let d = SpectroscopicDataset::from_env_or_builtin()?;
    let report = validate(&s, &d, DEFAULT_MIN_SEP_HZ);
    let mut levels = Vec::new();
    for role in LevelRole::ALL {
        let level = s.level(role);
        let frequency = d.level_frequency(level)?;
        levels.push((role, level.to_string(), frequency));
    }
    match format {
        OutputFormat::Table => {
            let mut text = format!("scheme {}  readout {}\n", s.name, s.readout_term);
            text.push_str(&format!("{:<4}  {:<9}  {}\n", "role", "level", "frequency_hz"));
            for (role, name, frequency) in &levels {
                text.push_str(&format!(
                    "{:<4}  {name:<9}  {}\n",
                    role.to_string(),
                    format_g17(*frequency)
                ));
            }
            text.push_str(&format!("{:<10}  {:<21}  {}\n", "transition", "carrier_hz", "band"));
            for carrier in &report.carriers {
                text.push_str(&format!(
                    "{:<10}  {:<21}  {}\n",
                    carrier.transition.to_string(),
                    format_g17(carrier.frequency_hz),
                    carrier.band
                ));
            }
            if let Some(min_sep) = report.min_separation_hz {
                text.push_str(&format!("min separation_hz {}\n", format_g17(min_sep)));
            }
            text.push_str(&format!("validation {}\n", if report.pass { "PASS" } else { "FAIL" }));
            for failure in &report.failures {
                text.push_str(&format!("  {failure}\n"));
            }
            emit(out, &text)?;
        }
        OutputFormat::Json => {
            let level_values: Vec<Value> = levels
                .iter()
                .map(|(role, name, frequency)| {
                    json!({
                        "role": role.to_string(),
                        "level": name,
                        "frequency_hz": frequency,
                    })
                })
                .collect();
            let carrier_values: Vec<Value> = report
                .carriers
                .iter()
                .map(|c| {
                    json!({
                        "transition": c.transition.to_string(),
                        "frequency_hz": c.frequency_hz,
                        "band": c.band.to_string(),
                    })
                })
                .collect();
            let doc = json!({
                "scheme": s.name,
                "readout_term": s.readout_term.to_string(),
                "levels": level_values,
                "carriers": carrier_values,
                "min_separation_hz": report.min_separation_hz,
                "pass": report.pass,
                "failures": report.failures,
            });
            let mut text = serde_json::to_string_pretty(&doc)
                .map_err(|e| CliFailure::Domain(Error::Parse(e.to_string())))?;
            text.push('\n');
            emit(out, &text)?;
        }
    }
    Ok(0)
}
