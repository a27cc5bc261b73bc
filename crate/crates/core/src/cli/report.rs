//! Serialized forms of spectrum files and command reports.

use serde::{Deserialize, Serialize};

use crate::dynamics::ClockTrace;
use crate::spectrum::{
    EnergyInput, FloatAnalysis, IncompatibilityCertificate, IncompatibilityReason,
    SpectrumDecomposition,
};
use crate::verify::ConventionNotes;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One energy as written in a spectrum file: a JSON number or a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EnergyEntry {
    Number(f64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumFile {
    pub n: usize,
    pub energies: Vec<EnergyEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl SpectrumFile {
    pub fn energy_inputs(&self) -> Result<Vec<EnergyInput>, String> {
        self.energies
            .iter()
            .enumerate()
            .map(|(i, e)| match e {
                EnergyEntry::Number(x) if x.is_finite() => Ok(EnergyInput::Float(*x)),
                EnergyEntry::Number(_) => Err(format!("energies[{i}]: not finite")),
                EnergyEntry::Text(s) => s
                    .parse()
                    .map(EnergyInput::Exact)
                    .map_err(|_| format!("energies[{i}]: expected \"p/q\", got {s:?}")),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub reason: String,
    pub residues: Vec<usize>,
    pub first_failing_index: Option<usize>,
}

impl From<&IncompatibilityCertificate> for CertificateReport {
    fn from(c: &IncompatibilityCertificate) -> Self {
        let reason = match c.reason {
            IncompatibilityReason::NotCommensurable => "not_commensurable",
            IncompatibilityReason::ResiduesNotLinear => "residues_not_linear",
        };
        CertificateReport {
            reason: reason.into(),
            residues: c.residues.clone(),
            first_failing_index: c.first_failing_index,
        }
    }
}

/// Either a decomposition or a certificate, never both.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub compatible: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_tau: Option<f64>,
    /// Exact integers as decimal strings.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention_notes: Option<ConventionNotes>,
}

impl VerdictReport {
    pub fn compatible(d: &SpectrumDecomposition, notes: ConventionNotes) -> Self {
        VerdictReport {
            compatible: true,
            omega: Some(d.omega().to_string()),
            k: Some(d.k()),
            delta_tau: Some(d.delta_tau()),
            f: Some(d.f().iter().map(|x| x.to_string()).collect()),
            certificate: None,
            convention_notes: Some(notes),
        }
    }

    pub fn incompatible(c: &IncompatibilityCertificate) -> Self {
        VerdictReport {
            compatible: false,
            omega: None,
            k: None,
            delta_tau: None,
            f: None,
            certificate: Some(c.into()),
            convention_notes: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalizationReport {
    pub index: usize,
    pub input: f64,
    pub value: Option<String>,
    pub residual: Option<f64>,
}

pub fn rationalization_reports(a: &FloatAnalysis) -> Vec<RationalizationReport> {
    a.rationalized
        .iter()
        .map(|r| RationalizationReport {
            index: r.index,
            input: r.input,
            value: r.value.as_ref().map(|v| v.to_string()),
            residual: r.residual,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub tool_version: String,
    pub input: SpectrumFile,
    #[serde(flatten)]
    pub verdict: VerdictReport,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rationalization: Vec<RationalizationReport>,
    /// The verdict for `E_m - E_0`, when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shifted_ground: Option<VerdictReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClockStepReport {
    pub j: usize,
    pub time: f64,
    pub occupied_index: usize,
    pub occupied_probability: f64,
    pub max_offsite: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClockReport {
    pub tool_version: String,
    pub input: SpectrumFile,
    pub n: usize,
    pub omega: String,
    pub k: usize,
    pub delta_tau: f64,
    pub initial: usize,
    pub direction_sign: i8,
    pub steps: Vec<ClockStepReport>,
}

impl ClockReport {
    pub fn new(input: SpectrumFile, d: &SpectrumDecomposition, trace: &ClockTrace) -> Self {
        ClockReport {
            tool_version: TOOL_VERSION.into(),
            input,
            n: d.dim(),
            omega: d.omega().to_string(),
            k: trace.k,
            delta_tau: trace.delta_tau,
            initial: trace.initial_index,
            direction_sign: trace.direction_sign,
            steps: trace
                .steps
                .iter()
                .map(|s| ClockStepReport {
                    j: s.j,
                    time: s.time,
                    occupied_index: s.occupied_index,
                    occupied_probability: s.occupied_probability,
                    max_offsite: s.max_offsite,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridReport {
    pub tool_version: String,
    pub input: SpectrumFile,
    pub n: usize,
    pub state: String,
    pub time: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<u64>,
    /// Real parts, rows `m` ascending, columns `n` ascending.
    pub values: Vec<Vec<f64>>,
    /// Imaginary parts; present only when the grid failed its reality check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub imag: Option<Vec<Vec<f64>>>,
}
