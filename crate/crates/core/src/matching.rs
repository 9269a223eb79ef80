//! Ranking candidate fingerprints against an experimental record using
//! several properties at once.
//!
//! Each shared field contributes a residual normalized by the experimental
//! uncertainty; the score is the weighted root-mean-square of those
//! residuals. Lifetimes and rates are compared in log10, angles on the
//! folded [0°, 30°] domain.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fingerprint::Fingerprint;
use crate::photophysics::fold_to_axis;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Field {
    ZplNm,
    E0Ev,
    DeltaQ,
    Hr,
    Dw,
    ExcitationAngleDeg,
    ExcitationVisibility,
    EmissionAngleDeg,
    EmissionVisibility,
    MuSqDebye2,
    GammaR,
    TauRNs,
    GammaNr,
    TauNrNs,
    EtaPct,
    /// 1/(Γ_R + Γ_NR), the lifetime a PL decay measurement sees.
    LifetimeNs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Scale {
    Linear,
    Angle,
    Log,
}

impl Field {
    pub const ALL: [Field; 16] = [
        Field::ZplNm,
        Field::E0Ev,
        Field::DeltaQ,
        Field::Hr,
        Field::Dw,
        Field::ExcitationAngleDeg,
        Field::ExcitationVisibility,
        Field::EmissionAngleDeg,
        Field::EmissionVisibility,
        Field::MuSqDebye2,
        Field::GammaR,
        Field::TauRNs,
        Field::GammaNr,
        Field::TauNrNs,
        Field::EtaPct,
        Field::LifetimeNs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Field::ZplNm => "zpl_nm",
            Field::E0Ev => "e0_ev",
            Field::DeltaQ => "delta_q",
            Field::Hr => "hr",
            Field::Dw => "dw",
            Field::ExcitationAngleDeg => "excitation_angle_deg",
            Field::ExcitationVisibility => "excitation_visibility",
            Field::EmissionAngleDeg => "emission_angle_deg",
            Field::EmissionVisibility => "emission_visibility",
            Field::MuSqDebye2 => "mu_sq_debye2",
            Field::GammaR => "gamma_r",
            Field::TauRNs => "tau_r_ns",
            Field::GammaNr => "gamma_nr",
            Field::TauNrNs => "tau_nr_ns",
            Field::EtaPct => "eta_pct",
            Field::LifetimeNs => "lifetime_ns",
        }
    }

    pub fn parse(name: &str) -> Option<Field> {
        Field::ALL.into_iter().find(|f| f.name() == name)
    }

    fn scale(self) -> Scale {
        match self {
            Field::ExcitationAngleDeg | Field::EmissionAngleDeg => Scale::Angle,
            Field::GammaR | Field::TauRNs | Field::GammaNr | Field::TauNrNs | Field::LifetimeNs => Scale::Log,
            _ => Scale::Linear,
        }
    }
}

/// A defect candidate as a sparse set of field values. Built from a computed
/// [`Fingerprint`] or from tabulated values where some fields are unknown.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Candidate {
    pub label: String,
    pub transition_order: u32,
    pub values: BTreeMap<Field, f64>,
}

impl Candidate {
    pub fn new(label: impl Into<String>, transition_order: u32) -> Self {
        Self {
            label: label.into(),
            transition_order,
            values: BTreeMap::new(),
        }
    }

    /// Adds a value; non-finite values are treated as absent.
    pub fn with(mut self, field: Field, value: f64) -> Self {
        if value.is_finite() {
            self.values.insert(field, value);
        }
        self
    }

    pub fn get(&self, field: Field) -> Option<f64> {
        self.values.get(&field).copied()
    }

    /// Fills `lifetime_ns` from the rates when it is not given.
    pub fn with_derived_lifetime(mut self) -> Self {
        if !self.values.contains_key(&Field::LifetimeNs) {
            let gr = self
                .get(Field::GammaR)
                .or_else(|| self.get(Field::TauRNs).map(|t| 1e9 / t));
            let gnr = self
                .get(Field::GammaNr)
                .or_else(|| self.get(Field::TauNrNs).map(|t| 1e9 / t));
            if let Some(gr) = gr {
                self = self.with(Field::LifetimeNs, 1e9 / (gr + gnr.unwrap_or(0.0)));
            }
        }
        self
    }

    pub fn from_fingerprint(fp: &Fingerprint) -> Self {
        let mut c = Candidate::new(fp.defect_label.clone(), fp.transition_order);
        let opt = [
            (Field::ZplNm, Some(fp.zpl_nm)),
            (Field::E0Ev, Some(fp.e0_ev)),
            (Field::DeltaQ, Some(fp.delta_q)),
            (Field::Hr, Some(fp.hr)),
            (Field::Dw, Some(fp.dw)),
            (Field::ExcitationAngleDeg, fp.excitation_angle_deg.degrees()),
            (Field::ExcitationVisibility, Some(fp.excitation_visibility)),
            (Field::EmissionAngleDeg, fp.emission_angle_deg.degrees()),
            (Field::EmissionVisibility, Some(fp.emission_visibility)),
            (Field::MuSqDebye2, Some(fp.mu_sq_debye2)),
            (Field::GammaR, Some(fp.gamma_r)),
            (Field::TauRNs, Some(fp.tau_r_ns)),
            (Field::GammaNr, fp.gamma_nr),
            (Field::TauNrNs, fp.tau_nr_ns),
            (Field::EtaPct, fp.eta_pct),
            (Field::LifetimeNs, Some(fp.lifetime_ns())),
        ];
        for (f, v) in opt {
            if let Some(v) = v {
                c = c.with(f, v);
            }
        }
        c
    }
}

impl From<&Fingerprint> for Candidate {
    fn from(fp: &Fingerprint) -> Self {
        Candidate::from_fingerprint(fp)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Measurement {
    pub value: f64,
    /// One-sigma uncertainty, strictly positive.
    pub uncertainty: f64,
}

impl Measurement {
    pub fn new(value: f64, uncertainty: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::validation("measurement value must be finite"));
        }
        if !(uncertainty > 0.0) || !uncertainty.is_finite() {
            return Err(Error::validation("measurement uncertainty must be positive"));
        }
        Ok(Self { value, uncertainty })
    }

    /// A reported range stored as midpoint ± half-range.
    pub fn from_range(lo: f64, hi: f64) -> Result<Self> {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        Self::new(0.5 * (lo + hi), 0.5 * (hi - lo))
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentRecord {
    pub label: String,
    pub fields: BTreeMap<Field, Measurement>,
}

impl ExperimentRecord {
    pub fn new(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            fields: BTreeMap::new(),
        }
    }

    pub fn with(mut self, field: Field, m: Measurement) -> Self {
        self.fields.insert(field, m);
        self
    }
}

/// Per-field weights; fields without an entry weigh 1.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Weights(pub BTreeMap<Field, f64>);

impl Weights {
    pub fn uniform() -> Self {
        Self::default()
    }

    pub fn get(&self, f: Field) -> f64 {
        self.0.get(&f).copied().unwrap_or(1.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchResult {
    pub candidate_label: String,
    pub transition_order: u32,
    pub residuals: Vec<(Field, f64)>,
    pub score: f64,
    pub rank: usize,
}

/// Normalized residual of `candidate` against `m` for `field`.
pub fn residual(field: Field, candidate: f64, m: &Measurement) -> Result<f64> {
    match field.scale() {
        Scale::Linear => Ok((candidate - m.value) / m.uncertainty),
        Scale::Angle => Ok((fold_to_axis(candidate) - fold_to_axis(m.value)) / m.uncertainty),
        Scale::Log => {
            if !(candidate > 0.0) || !(m.value > 0.0) {
                return Err(Error::domain(format!(
                    "{} must be positive for a log comparison",
                    field.name()
                )));
            }
            // First-order propagation of the linear uncertainty to log10.
            let sigma_log = m.uncertainty / (m.value * core::f64::consts::LN_10);
            Ok((libm::log10(candidate) - libm::log10(m.value)) / sigma_log)
        }
    }
}

pub fn match_candidates(
    exp: &ExperimentRecord,
    candidates: &[Candidate],
    weights: &Weights,
) -> Result<Vec<MatchResult>> {
    for (f, w) in &weights.0 {
        if !(*w >= 0.0) || !w.is_finite() {
            return Err(Error::validation(format!(
                "weight for {} must be non-negative",
                f.name()
            )));
        }
    }
    let mut results = Vec::with_capacity(candidates.len());
    for cand in candidates {
        let mut residuals = Vec::new();
        let (mut num, mut den) = (0.0, 0.0);
        for (&field, m) in &exp.fields {
            let Some(v) = cand.get(field) else { continue };
            let r = residual(field, v, m)?;
            let w = weights.get(field);
            num += w * r * r;
            den += w;
            residuals.push((field, r));
        }
        if residuals.is_empty() {
            let available: Vec<&str> = cand.values.keys().map(|f| f.name()).collect();
            let wanted: Vec<&str> = exp.fields.keys().map(|f| f.name()).collect();
            return Err(Error::validation(format!(
                "candidate '{}' shares no field with the experiment (experiment has [{}], candidate has [{}])",
                cand.label,
                wanted.join(", "),
                available.join(", ")
            )));
        }
        if !(den > 0.0) {
            return Err(Error::validation(format!(
                "all shared fields of '{}' have zero weight",
                cand.label
            )));
        }
        results.push(MatchResult {
            candidate_label: cand.label.clone(),
            transition_order: cand.transition_order,
            residuals,
            score: libm::sqrt(num / den),
            rank: 0,
        });
    }
    results.sort_by(|a, b| {
        a.score
            .total_cmp(&b.score)
            .then_with(|| a.candidate_label.cmp(&b.candidate_label))
            .then_with(|| a.transition_order.cmp(&b.transition_order))
    });
    for (i, r) in results.iter_mut().enumerate() {
        r.rank = i + 1;
    }
    Ok(results)
}
