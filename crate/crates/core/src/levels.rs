// Copyright 2026 vsq Contributors
// SPDX-License-Identifier: Apache-2.0

//! Pr³⁺:LaF₃ spectroscopy and the two working level schemes.
//!
//! The dataset stores five electronic terms of Pr³⁺ in LaF₃. Each term may
//! carry an anchor wavelength (the ³H₄→term line in nm; ³H₄ itself anchors
//! the frequency origin) and a ladder of quadrupole sublevels labeled by
//! |m_I| with MHz-scale offsets above the term's lowest sublevel. Offsets
//! are stored in Hz; every builtin value is an exact integer, so same-term
//! transition frequencies come out exact instead of suffering cancellation
//! against ~6e14 Hz optical anchors.
//!
//! Two register assignments are provided. Scheme "fig3" spreads E₀…E₃ over
//! four terms (³H₄, ³H₆, ¹D₂, ³P₀), making every gate carrier optical.
//! Scheme "fig4" confines the register to ³H₄ plus the ³P₀ quadrupole
//! ladder, which puts the carriers among the three upper levels in the
//! radio-frequency range. Both read out through ³P₁.
//!
//! Note on the data: the ³H₆ anchor is encoded verbatim from the level
//! diagram this dataset reproduces, which places ³H₆ at 240 nm; standard
//! Pr³⁺ spectroscopy puts ³H₆ far lower. The value is deliberately not
//! corrected here.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pulses::{gate_transitions, LevelRole, Transition};

/// Speed of light in m/s, used for wavelength→frequency conversion.
pub const SPEED_OF_LIGHT_M_PER_S: f64 = 2.99792458e8;

/// Default carrier-resolvability threshold in Hz.
///
/// Chosen well below the smallest splitting in the dataset (0.45 MHz) as a
/// conservative proxy for selective excitation.
pub const DEFAULT_MIN_SEP_HZ: f64 = 1e4;

/// Upper edge of what the validation report flags as radio frequency.
pub const RF_MAX_HZ: f64 = 1e9;

/// Lower edge of what the validation report flags as optical.
pub const OPTICAL_MIN_HZ: f64 = 1e13;

/// Environment variable naming a dataset JSON file that overrides the
/// builtin data.
pub const DATASET_ENV_VAR: &str = "VSQ_DATASET";

/// Spectroscopic term labels of the five levels in the dataset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TermLabel {
    /// ³H₄, the ground term and frequency origin.
    H4,
    /// ³H₆.
    H6,
    /// ¹D₂.
    D2,
    /// ³P₀.
    P0,
    /// ³P₁, the readout term.
    P1,
}

impl TermLabel {
    /// All labels in dataset order.
    pub const ALL: [TermLabel; 5] =
        [TermLabel::H4, TermLabel::H6, TermLabel::D2, TermLabel::P0, TermLabel::P1];
}

impl fmt::Display for TermLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            TermLabel::H4 => "3H4",
            TermLabel::H6 => "3H6",
            TermLabel::D2 => "1D2",
            TermLabel::P0 => "3P0",
            TermLabel::P1 => "3P1",
        };
        f.write_str(text)
    }
}

impl FromStr for TermLabel {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text {
            "3H4" => Ok(TermLabel::H4),
            "3H6" => Ok(TermLabel::H6),
            "1D2" => Ok(TermLabel::D2),
            "3P0" => Ok(TermLabel::P0),
            "3P1" => Ok(TermLabel::P1),
            other => Err(Error::UnknownLevel(other.to_owned())),
        }
    }
}

/// Nuclear spin projection magnitude |m_I| labeling a quadrupole sublevel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mi {
    /// |m_I| = 1/2.
    OneHalf,
    /// |m_I| = 3/2.
    ThreeHalves,
    /// |m_I| = 5/2.
    FiveHalves,
}

impl fmt::Display for Mi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Mi::OneHalf => "1/2",
            Mi::ThreeHalves => "3/2",
            Mi::FiveHalves => "5/2",
        };
        f.write_str(text)
    }
}

impl FromStr for Mi {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match text {
            "1/2" => Ok(Mi::OneHalf),
            "3/2" => Ok(Mi::ThreeHalves),
            "5/2" => Ok(Mi::FiveHalves),
            other => Err(Error::Parse(format!("unknown |m_I| label {other:?}"))),
        }
    }
}

/// One quadrupole sublevel of a term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sublevel {
    m_i: Mi,
    offset_hz: f64,
}

impl Sublevel {
    /// The |m_I| label.
    pub fn m_i(&self) -> Mi {
        self.m_i
    }

    /// Offset above the term's lowest sublevel, in Hz.
    pub fn offset_hz(&self) -> f64 {
        self.offset_hz
    }
}

/// One electronic term with its optional anchor line and sublevel ladder.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    label: TermLabel,
    anchor_nm: Option<f64>,
    sublevels: Vec<Sublevel>,
}

impl Term {
    /// The term's label.
    pub fn label(&self) -> TermLabel {
        self.label
    }

    /// Anchor wavelength of the ³H₄(lowest)→term(lowest) line in nm, absent
    /// for ³H₄ itself.
    pub fn anchor_nm(&self) -> Option<f64> {
        self.anchor_nm
    }

    /// The sublevel ladder, lowest first; empty when the dataset carries no
    /// ladder for this term.
    pub fn sublevels(&self) -> &[Sublevel] {
        &self.sublevels
    }
}

/// Selects a sublevel within a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SublevelSel {
    /// The term's lowest sublevel (the whole term when no ladder exists).
    Lowest,
    /// A named |m_I| sublevel; an error on terms without a ladder.
    Mi(Mi),
}

/// A concrete physical level: a term plus a sublevel selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PhysLevel {
    /// The electronic term.
    pub term: TermLabel,
    /// Which sublevel of the term.
    pub sublevel: SublevelSel,
}

impl PhysLevel {
    /// A level addressed by its term's lowest sublevel.
    pub fn lowest(term: TermLabel) -> Self {
        Self { term, sublevel: SublevelSel::Lowest }
    }

    /// A level addressed by a named |m_I| sublevel.
    pub fn with_mi(term: TermLabel, m_i: Mi) -> Self {
        Self { term, sublevel: SublevelSel::Mi(m_i) }
    }
}

impl fmt::Display for PhysLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sublevel {
            SublevelSel::Lowest => write!(f, "{}", self.term),
            SublevelSel::Mi(m) => write!(f, "{}({m})", self.term),
        }
    }
}

/// An assignment of four physical levels to the register roles, plus the
/// readout term.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelScheme {
    /// Scheme name as accepted by [`scheme`].
    pub name: String,
    /// Physical levels for E₀…E₃ in role order.
    pub assignment: [PhysLevel; 4],
    /// Term that fluorescence readout transfers population to.
    pub readout_term: TermLabel,
}

impl LevelScheme {
    /// The physical level assigned to a role.
    pub fn level(&self, role: LevelRole) -> &PhysLevel {
        &self.assignment[role.index()]
    }
}

#[derive(Serialize, Deserialize)]
struct SublevelWire {
    #[serde(rename = "mI")]
    m_i: String,
    offset_mhz: f64,
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    anchor_nm: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    sublevels: Vec<SublevelWire>,
}

#[derive(Serialize, Deserialize)]
struct DatasetWire {
    terms: Vec<TermWire>,
}

/// The level data: five terms with anchors and quadrupole ladders.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectroscopicDataset {
    terms: Vec<Term>,
}

impl SpectroscopicDataset {
    /// The builtin Pr³⁺:LaF₃ data.
    ///
    /// ³H₄ carries sublevels 1/2, 3/2, 5/2 at 0, 8.47, 25.17 MHz (gaps 8.47
    /// and 16.7 MHz); ³P₀ at 477.7 nm carries 1/2, 3/2, 5/2 at 0, 0.45,
    /// 1.17 MHz (gaps 0.45 and 0.72 MHz); ¹D₂ (592.5 nm), ³P₁ (450 nm) and
    /// ³H₆ (240 nm) have no ladders. Offsets are exact integers in Hz.
    pub fn builtin_pr_laf3() -> Self {
        let ladder = |values: &[(Mi, f64)]| {
            values.iter().map(|&(m_i, offset_hz)| Sublevel { m_i, offset_hz }).collect()
        };
        Self {
            terms: vec![
                Term {
                    label: TermLabel::H4,
                    anchor_nm: None,
                    sublevels: ladder(&[
                        (Mi::OneHalf, 0.0),
                        (Mi::ThreeHalves, 8_470_000.0),
                        (Mi::FiveHalves, 25_170_000.0),
                    ]),
                },
                Term { label: TermLabel::H6, anchor_nm: Some(240.0), sublevels: Vec::new() },
                Term { label: TermLabel::D2, anchor_nm: Some(592.5), sublevels: Vec::new() },
                Term {
                    label: TermLabel::P0,
                    anchor_nm: Some(477.7),
                    sublevels: ladder(&[
                        (Mi::OneHalf, 0.0),
                        (Mi::ThreeHalves, 450_000.0),
                        (Mi::FiveHalves, 1_170_000.0),
                    ]),
                },
                Term { label: TermLabel::P1, anchor_nm: Some(450.0), sublevels: Vec::new() },
            ],
        }
    }

    /// Parses a dataset from its JSON file format, validating labels,
    /// anchors, and ladder monotonicity.
    pub fn from_json(text: &str) -> Result<Self> {
        let wire: DatasetWire =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut terms = Vec::with_capacity(wire.terms.len());
        for term_wire in wire.terms {
            let label: TermLabel = term_wire.label.parse()?;
            if terms.iter().any(|t: &Term| t.label == label) {
                return Err(Error::Parse(format!("duplicate term label {label}")));
            }
            if let Some(nm) = term_wire.anchor_nm {
                if !nm.is_finite() || nm <= 0.0 {
                    return Err(Error::Parse(format!(
                        "term {label}: anchor {nm} nm is not positive"
                    )));
                }
            }
            let mut sublevels = Vec::with_capacity(term_wire.sublevels.len());
            for (k, sub) in term_wire.sublevels.iter().enumerate() {
                let m_i: Mi = sub.m_i.parse()?;
                if !sub.offset_mhz.is_finite() {
                    return Err(Error::Parse(format!("term {label}: non-finite offset")));
                }
                let offset_hz = sub.offset_mhz * 1e6;
                if k == 0 && offset_hz != 0.0 {
                    return Err(Error::Parse(format!(
                        "term {label}: lowest sublevel must sit at offset 0"
                    )));
                }
                if let Some(prev) = sublevels.last().map(Sublevel::offset_hz) {
                    if offset_hz <= prev {
                        return Err(Error::Parse(format!(
                            "term {label}: sublevel offsets must increase strictly"
                        )));
                    }
                }
                if sublevels.iter().any(|s: &Sublevel| s.m_i == m_i) {
                    return Err(Error::Parse(format!("term {label}: duplicate sublevel {m_i}")));
                }
                sublevels.push(Sublevel { m_i, offset_hz });
            }
            terms.push(Term { label, anchor_nm: term_wire.anchor_nm, sublevels });
        }
        Ok(Self { terms })
    }

    /// Serializes the dataset to its JSON file format.
    pub fn to_json(&self) -> String {
        let wire = DatasetWire {
            terms: self
                .terms
                .iter()
                .map(|term| TermWire {
                    label: term.label.to_string(),
                    anchor_nm: term.anchor_nm,
                    sublevels: term
                        .sublevels
                        .iter()
                        .map(|sub| SublevelWire {
                            m_i: sub.m_i.to_string(),
                            offset_mhz: sub.offset_hz / 1e6,
                        })
                        .collect(),
                })
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&wire).expect("wire form serializes");
        text.push('\n');
        text
    }

    /// Reads a dataset file.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// The builtin dataset, unless the `VSQ_DATASET` environment variable
    /// names a dataset file to load instead.
    pub fn from_env_or_builtin() -> Result<Self> {
        match std::env::var_os(DATASET_ENV_VAR) {
            Some(path) => Self::load(Path::new(&path)),
            None => Ok(Self::builtin_pr_laf3()),
        }
    }

    /// All terms in dataset order.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// The term with the given label.
    pub fn term(&self, label: TermLabel) -> Result<&Term> {
        self.terms
            .iter()
            .find(|t| t.label == label)
            .ok_or_else(|| Error::UnknownLevel(label.to_string()))
    }

    /// Resolves a physical level to its term and sublevel ladder position.
    fn resolve(&self, level: &PhysLevel) -> Result<(TermLabel, usize)> {
        let term = self.term(level.term)?;
        match level.sublevel {
            SublevelSel::Lowest => Ok((term.label, 0)),
            SublevelSel::Mi(m_i) => term
                .sublevels
                .iter()
                .position(|s| s.m_i == m_i)
                .map(|k| (term.label, k))
                .ok_or_else(|| Error::UnknownLevel(level.to_string())),
        }
    }

    /// Sublevel offset of a physical level above its term's lowest
    /// sublevel, in Hz.
    fn offset_hz(&self, level: &PhysLevel) -> Result<f64> {
        let (label, index) = self.resolve(level)?;
        let term = self.term(label)?;
        Ok(term.sublevels.get(index).map_or(0.0, Sublevel::offset_hz))
    }

    /// Absolute frequency of a physical level above ³H₄(lowest), in Hz:
    /// c/anchor wavelength (0 for ³H₄) plus the sublevel offset. The anchor
    /// applies to the term's lowest sublevel.
    pub fn level_frequency(&self, level: &PhysLevel) -> Result<f64> {
        let term = self.term(level.term)?;
        let base = match term.anchor_nm {
            Some(nm) => SPEED_OF_LIGHT_M_PER_S / (nm * 1e-9),
            None => 0.0,
        };
        Ok(base + self.offset_hz(level)?)
    }
}

/// Builds one of the two named level schemes.
///
/// `"fig3"` assigns E₀=³H₄, E₁=³H₆, E₂=¹D₂, E₃=³P₀ (lowest sublevels
/// throughout); `"fig4"` assigns E₀=³H₄ and E₁…E₃ to the ³P₀ ladder
/// sublevels 1/2, 3/2, 5/2. Both read out through ³P₁.
pub fn scheme(name: &str) -> Result<LevelScheme> {
    match name {
        "fig3" => Ok(LevelScheme {
            name: name.to_owned(),
            assignment: [
                PhysLevel::lowest(TermLabel::H4),
                PhysLevel::lowest(TermLabel::H6),
                PhysLevel::lowest(TermLabel::D2),
                PhysLevel::lowest(TermLabel::P0),
            ],
            readout_term: TermLabel::P1,
        }),
        "fig4" => Ok(LevelScheme {
            name: name.to_owned(),
            assignment: [
                PhysLevel::lowest(TermLabel::H4),
                PhysLevel::with_mi(TermLabel::P0, Mi::OneHalf),
                PhysLevel::with_mi(TermLabel::P0, Mi::ThreeHalves),
                PhysLevel::with_mi(TermLabel::P0, Mi::FiveHalves),
            ],
            readout_term: TermLabel::P1,
        }),
        other => Err(Error::UnknownScheme(other.to_owned())),
    }
}

/// Carrier frequency of the transition between two roles, in Hz.
///
/// Levels within the same term are differenced in sublevel-offset space,
/// which is exact for the builtin integer offsets; levels of different terms
/// go through the absolute frequency axis.
pub fn transition_frequency(
    s: &LevelScheme,
    d: &SpectroscopicDataset,
    a: LevelRole,
    b: LevelRole,
) -> Result<f64> {
    if a == b {
        return Err(Error::SameRole(a.to_string()));
    }
    let level_a = s.level(a);
    let level_b = s.level(b);
    if level_a.term == level_b.term {
        Ok((d.offset_hz(level_a)? - d.offset_hz(level_b)?).abs())
    } else {
        Ok((d.level_frequency(level_a)? - d.level_frequency(level_b)?).abs())
    }
}

/// Frequency band a carrier falls in, per the validation thresholds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Band {
    /// Below [`RF_MAX_HZ`].
    RadioFrequency,
    /// Above [`OPTICAL_MIN_HZ`].
    Optical,
    /// Between the two thresholds.
    Intermediate,
}

impl Band {
    /// Classifies a frequency.
    pub fn of(frequency_hz: f64) -> Self {
        if frequency_hz < RF_MAX_HZ {
            Band::RadioFrequency
        } else if frequency_hz > OPTICAL_MIN_HZ {
            Band::Optical
        } else {
            Band::Intermediate
        }
    }
}

impl fmt::Display for Band {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Band::RadioFrequency => "rf",
            Band::Optical => "optical",
            Band::Intermediate => "intermediate",
        };
        f.write_str(text)
    }
}

/// One gate carrier in a validation report.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CarrierInfo {
    /// The driven transition.
    pub transition: Transition,
    /// Carrier frequency in Hz.
    pub frequency_hz: f64,
    /// Band classification.
    pub band: Band,
}

/// Result of checking a scheme against a dataset.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    /// Name of the checked scheme.
    pub scheme_name: String,
    /// Whether the four assigned levels are pairwise distinct.
    pub distinct_levels: bool,
    /// Whether E₀ sits strictly below the other three levels.
    pub ground_is_lowest: bool,
    /// The four gate carriers, when all levels resolve.
    pub carriers: Vec<CarrierInfo>,
    /// Smallest pairwise separation among the carriers, when computable.
    pub min_separation_hz: Option<f64>,
    /// Human-readable failure descriptions; empty iff `pass`.
    pub failures: Vec<String>,
    /// True iff the scheme is usable at the requested separation threshold.
    pub pass: bool,
}

/// Checks that a scheme's levels are distinct, ground-anchored, and that all
/// four gate carriers are pairwise separated by at least `min_sep` Hz.
///
/// Failures are reported, not raised; callers that need a hard error (the
/// scheduler, the readout planner) convert a failed report themselves.
pub fn validate(s: &LevelScheme, d: &SpectroscopicDataset, min_sep: f64) -> ValidationReport {
    debug_assert!(min_sep > 0.0);
    let mut failures = Vec::new();

    let mut resolved = Vec::new();
    for role in LevelRole::ALL {
        match d.resolve(s.level(role)) {
            Ok(id) => resolved.push((role, id)),
            Err(e) => failures.push(format!("{role} ({}) does not resolve: {e}", s.level(role))),
        }
    }

    let mut distinct_levels = true;
    for (i, (role_a, id_a)) in resolved.iter().enumerate() {
        for (role_b, id_b) in resolved.iter().skip(i + 1) {
            if id_a == id_b {
                distinct_levels = false;
                failures.push(format!(
                    "duplicate level: {role_a} and {role_b} both map to {}",
                    s.level(*role_a)
                ));
            }
        }
    }

    let mut ground_is_lowest = true;
    if resolved.len() == 4 && distinct_levels {
        let freqs: Result<Vec<f64>> =
            LevelRole::ALL.iter().map(|role| d.level_frequency(s.level(*role))).collect();
        match freqs {
            Ok(freqs) => {
                if !freqs[1..].iter().all(|&f| freqs[0] < f) {
                    ground_is_lowest = false;
                    failures.push("E0 is not the lowest assigned level".to_owned());
                }
            }
            Err(e) => failures.push(format!("frequency lookup failed: {e}")),
        }
    }

    let mut carriers = Vec::new();
    if resolved.len() == 4 {
        for transition in gate_transitions() {
            match transition_frequency(s, d, transition.lower(), transition.upper()) {
                Ok(frequency_hz) => carriers.push(CarrierInfo {
                    transition,
                    frequency_hz,
                    band: Band::of(frequency_hz),
                }),
                Err(e) => failures.push(format!("carrier {transition} failed: {e}")),
            }
        }
    }

    let mut min_separation_hz = None;
    if carriers.len() == 4 {
        let mut min_gap = f64::INFINITY;
        for (i, a) in carriers.iter().enumerate() {
            for b in carriers.iter().skip(i + 1) {
                min_gap = min_gap.min((a.frequency_hz - b.frequency_hz).abs());
            }
        }
        min_separation_hz = Some(min_gap);
        if min_gap < min_sep {
            failures.push(format!(
                "carrier separation {min_gap} Hz is below the threshold {min_sep} Hz"
            ));
        }
    }

    let pass = failures.is_empty();
    ValidationReport {
        scheme_name: s.name.clone(),
        distinct_levels,
        ground_is_lowest,
        carriers,
        min_separation_hz,
        failures,
        pass,
    }
}
