//! Serializable reports and their JSON / text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::document::describe_tower;
use crate::error::{Error, Result};
use crate::field::{BaseField, ExtensionTower, Field};
use crate::support::{self, KSubspace, LVector, LinearCode};
use crate::weights::{self, ReportOptions, WeightReport};
use crate::witness::{self, Source, Strategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

pub fn source_name(source: Source) -> &'static str {
    match source {
        Source::ZeroCode => "zero-code",
        Source::ConstructiveExtended => "constructive-extended",
        Source::ConstructiveSplit => "constructive-split",
        Source::Exhaustive => "exhaustive",
        Source::Randomized => "randomized",
        Source::DimensionBound => "dimension-bound",
    }
}

fn k_rows<F: BaseField>(space: &KSubspace<F>) -> Vec<Vec<String>> {
    let base = space.tower().base();
    space
        .basis()
        .iter()
        .map(|row| row.iter().map(|x| base.format_elem(x)).collect())
        .collect()
}

fn l_row<F: Field>(tower: &ExtensionTower<F>, v: &LVector<F>) -> Vec<String> {
    v.iter().map(|x| tower.format_elem(x)).collect()
}

fn l_rows<F: Field>(code: &LinearCode<F>) -> Vec<Vec<String>> {
    code.basis()
        .iter()
        .map(|v| l_row(code.tower(), v))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub tower: String,
    pub n: usize,
    pub dim: usize,
    pub rank_support: Vec<Vec<String>>,
    pub restriction: Vec<Vec<String>>,
    pub dual: Vec<Vec<String>>,
    pub closure: Vec<Vec<String>>,
    pub rank_weight: usize,
    pub degenerate: bool,
    pub extended: bool,
    /// `Tr(C) = Rsupp(C)`; null for an inseparable tower.
    pub trace_check: Option<bool>,
}

pub fn analyze<F: BaseField>(code: &LinearCode<F>) -> Result<AnalyzeReport> {
    let rsupp = support::rank_support_code(code);
    let trace_check = match support::trace_image(code) {
        Ok(t) => Some(t == rsupp),
        Err(Error::InseparableTower) => None,
        Err(e) => return Err(e),
    };
    Ok(AnalyzeReport {
        tower: describe_tower(code.tower()),
        n: code.length(),
        dim: code.dim(),
        rank_support: k_rows(&rsupp),
        restriction: k_rows(&support::restriction(code)),
        dual: l_rows(&support::dual(code)),
        closure: l_rows(&support::closure(code)),
        rank_weight: rsupp.dim(),
        degenerate: support::is_rank_degenerate(code),
        extended: support::is_extended(code),
        trace_check,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HierarchyEntry {
    pub r: usize,
    #[serde(rename = "dRr")]
    pub d_rr: Option<usize>,
    #[serde(rename = "Mr")]
    pub m_r: Option<usize>,
    #[serde(rename = "OSr")]
    pub os_r: Option<usize>,
    #[serde(rename = "Dr")]
    pub d_r: Option<usize>,
    /// Generators of the first minimizer of each definition, verbose mode only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimizers: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inapplicable {
    pub field: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightsReport {
    pub tower: String,
    pub n: usize,
    pub dim: usize,
    pub rank_distance: Option<usize>,
    pub hierarchy: Vec<HierarchyEntry>,
    pub witness: Option<Vec<String>>,
    pub witness_source: Option<String>,
    pub degenerate: bool,
    pub inapplicable: Vec<Inapplicable>,
}

impl WeightsReport {
    pub fn from_report<F: BaseField>(report: &WeightReport<F>) -> Self {
        let code = &report.code;
        let tower = code.tower();
        WeightsReport {
            tower: describe_tower(tower),
            n: code.length(),
            dim: code.dim(),
            rank_distance: report.rank_distance,
            hierarchy: report
                .hierarchy
                .iter()
                .map(|row| HierarchyEntry {
                    r: row.r,
                    d_rr: row.d_rr,
                    m_r: row.m_r,
                    os_r: row.os_r,
                    d_r: row.d_r,
                    minimizers: row
                        .minimizers
                        .as_ref()
                        .map(|ms| ms.iter().map(l_rows).collect()),
                })
                .collect(),
            witness: report.witness.as_ref().map(|w| l_row(tower, w)),
            witness_source: report.witness_source.map(|s| source_name(s).to_string()),
            degenerate: report.degenerate,
            inapplicable: report
                .inapplicable
                .iter()
                .map(|(field, reason)| Inapplicable {
                    field: field.clone(),
                    reason: reason.clone(),
                })
                .collect(),
        }
    }
}

pub fn weights<F: BaseField>(code: &LinearCode<F>, opts: ReportOptions) -> Result<WeightsReport> {
    Ok(WeightsReport::from_report(&weights::weight_report(
        code, opts,
    )?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub tower: String,
    pub n: usize,
    pub dim: usize,
    pub rank_weight: usize,
    pub witness: Option<Vec<String>>,
    pub source: String,
    /// Whether the returned witness passes both checks.
    pub verified: Option<bool>,
}

pub fn witness<F: BaseField>(code: &LinearCode<F>, strategy: Strategy) -> Result<WitnessReport> {
    let outcome = witness::find_witness(code, strategy)?;
    let verified = match &outcome.witness {
        Some(w) => Some(witness::check_witness(code, w)?.is_valid()),
        None => None,
    };
    Ok(WitnessReport {
        tower: describe_tower(code.tower()),
        n: code.length(),
        dim: code.dim(),
        rank_weight: support::rank_weight_code(code),
        witness: outcome.witness.as_ref().map(|w| l_row(code.tower(), w)),
        source: source_name(outcome.source).to_string(),
        verified,
    })
}

pub fn to_json<T: Serialize>(report: &T) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize")
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn rows_text(rows: &[Vec<String>]) -> String {
    if rows.is_empty() {
        return "[]".into();
    }
    let inner: Vec<String> = rows.iter().map(|r| format!("({})", r.join(", "))).collect();
    inner.join(" ")
}

fn push_field(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "{key:<14}{value}");
}

impl AnalyzeReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Text => {
                let mut s = String::new();
                push_field(&mut s, "tower", &self.tower);
                push_field(&mut s, "n", self.n);
                push_field(&mut s, "dim", self.dim);
                push_field(&mut s, "rank_support", rows_text(&self.rank_support));
                push_field(&mut s, "restriction", rows_text(&self.restriction));
                push_field(&mut s, "dual", rows_text(&self.dual));
                push_field(&mut s, "closure", rows_text(&self.closure));
                push_field(&mut s, "rank_weight", self.rank_weight);
                push_field(&mut s, "degenerate", self.degenerate);
                push_field(&mut s, "extended", self.extended);
                push_field(
                    &mut s,
                    "trace_check",
                    self.trace_check.map_or("-".to_string(), |b| b.to_string()),
                );
                s
            }
        }
    }
}

impl WeightsReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Text => {
                let mut s = String::new();
                push_field(&mut s, "tower", &self.tower);
                push_field(&mut s, "n", self.n);
                push_field(&mut s, "dim", self.dim);
                push_field(&mut s, "rank_distance", opt(self.rank_distance));
                push_field(&mut s, "degenerate", self.degenerate);
                let w = match (&self.witness, &self.witness_source) {
                    (Some(w), Some(src)) => format!("({}) [{src}]", w.join(", ")),
                    (None, Some(src)) => format!("none [{src}]"),
                    _ => "-".into(),
                };
                push_field(&mut s, "witness", w);
                let _ = writeln!(s);
                let _ = writeln!(
                    s,
                    "{:>4} {:>6} {:>6} {:>6} {:>6}",
                    "r", "dRr", "Mr", "OSr", "Dr"
                );
                for row in &self.hierarchy {
                    let _ = writeln!(
                        s,
                        "{:>4} {:>6} {:>6} {:>6} {:>6}",
                        row.r,
                        opt(row.d_rr),
                        opt(row.m_r),
                        opt(row.os_r),
                        opt(row.d_r)
                    );
                }
                if !self.inapplicable.is_empty() {
                    let _ = writeln!(s);
                    for entry in &self.inapplicable {
                        let _ = writeln!(s, "inapplicable  {}: {}", entry.field, entry.reason);
                    }
                }
                s
            }
        }
    }
}

impl WitnessReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(self),
            Format::Text => {
                let mut s = String::new();
                push_field(&mut s, "tower", &self.tower);
                push_field(&mut s, "n", self.n);
                push_field(&mut s, "dim", self.dim);
                push_field(&mut s, "rank_weight", self.rank_weight);
                push_field(
                    &mut s,
                    "witness",
                    self.witness
                        .as_ref()
                        .map_or("none".to_string(), |w| format!("({})", w.join(", "))),
                );
                push_field(&mut s, "source", &self.source);
                push_field(
                    &mut s,
                    "verified",
                    self.verified.map_or("-".to_string(), |b| b.to_string()),
                );
                s
            }
        }
    }
}
