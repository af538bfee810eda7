//! Inference reports and their JSON / text renderings.
//!
//! The JSON form is the schema of record:
//!
//! ```json
//! {
//!   "instance": "j301_1",
//!   "kind": "RCPSP",
//!   "num_tasks": 32,
//!   "config": {"n_cover": 100, "n_out": 5, "max_cover_cardinality": null,
//!              "bruteforce_verify": true, "bruteforce_limit": 20},
//!   "constraints": [
//!     {"id": 0, "usages": [{"task": 1, "usage": 1}], "capacity": 2,
//!      "capacity_bound": {"numer": 5, "denom": 2}, "capacity_lb": 3,
//!      "source_cover": [2, 3, 4], "source_resource": 0, "rule": "TERNARY",
//!      "verification": "verified", "infeasible_tasks": []}
//!   ],
//!   "searchless_lb": 3,
//!   "certificate": {"source": "inferred", "constraint": 0},
//!   "precedence_lb": 2,
//!   "stats": {...},
//!   "timing": null
//! }
//! ```
//!
//! Task ids are instance task ids, not demand-system columns.

use std::fmt::Write as _;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::bounds::Certificate;
use crate::covers::GenerationRule;
use crate::instance::ProblemKind;
use crate::lifting::LiftingConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub numer: u64,
    pub denom: u64,
}

impl From<Ratio<u64>> for Fraction {
    fn from(r: Ratio<u64>) -> Self {
        Fraction { numer: *r.numer(), denom: *r.denom() }
    }
}

impl From<Fraction> for Ratio<u64> {
    fn from(f: Fraction) -> Self {
        Ratio::new(f.numer, f.denom)
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.denom == 1 {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Usage {
    pub task: usize,
    pub usage: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verification {
    /// Passed the enumeration oracle.
    Verified,
    /// Too many columns for enumeration.
    TooLarge,
    /// Verification switched off.
    Disabled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportedConstraint {
    pub id: usize,
    /// Sparse usages, ascending task id, zeros omitted.
    pub usages: Vec<Usage>,
    pub capacity: u64,
    pub capacity_bound: Fraction,
    pub capacity_lb: u64,
    pub source_cover: Vec<usize>,
    pub source_resource: usize,
    pub rule: GenerationRule,
    pub verification: Verification,
    pub infeasible_tasks: Vec<usize>,
}

impl ReportedConstraint {
    /// Dense usage vector over `num_tasks` instance tasks.
    pub fn dense_usages(&self, num_tasks: usize) -> Vec<u64> {
        let mut dense = vec![0; num_tasks];
        for u in &self.usages {
            dense[u.task] = u.usage;
        }
        dense
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCounts {
    pub binary: usize,
    pub ternary: usize,
    pub long_max: usize,
    pub long_min: usize,
}

impl CoverCounts {
    pub fn total(&self) -> usize {
        self.binary + self.ternary + self.long_max + self.long_min
    }

    pub fn add(&mut self, rule: GenerationRule) {
        match rule {
            GenerationRule::Binary => self.binary += 1,
            GenerationRule::Ternary => self.ternary += 1,
            GenerationRule::LongMax => self.long_max += 1,
            GenerationRule::LongMin => self.long_min += 1,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportStats {
    pub columns: usize,
    pub rows: usize,
    pub covers_generated: CoverCounts,
    pub covers_selected: CoverCounts,
    pub covers_skipped: usize,
    pub covers_lifted: usize,
    pub covers_dominated: usize,
    pub subproblem_calls: usize,
}

/// Wall-clock measurements; absent unless requested, so that reports are
/// reproducible byte for byte.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub wall_time_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InferenceReport {
    pub instance: String,
    pub kind: ProblemKind,
    pub num_tasks: usize,
    pub config: LiftingConfig,
    pub constraints: Vec<ReportedConstraint>,
    pub searchless_lb: u64,
    pub certificate: Certificate,
    pub precedence_lb: u64,
    pub stats: ReportStats,
    pub timing: Option<Timing>,
}

impl InferenceReport {
    /// Capacity of the certifying constraint, when it is an inferred one or a
    /// resource known to the report.
    pub fn certificate_capacity(&self) -> Option<u64> {
        match self.certificate {
            Certificate::Inferred { constraint } => self.constraints.get(constraint).map(|c| c.capacity),
            _ => None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Text,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "text" | "txt" => Ok(ReportFormat::Text),
            other => Err(format!("unknown report format `{other}`")),
        }
    }
}

pub fn emit_report(report: &InferenceReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_string_pretty(report).expect("report serialization cannot fail");
            out.push('\n');
            out
        }
        ReportFormat::Text => render_text(report),
    }
}

fn render_text(report: &InferenceReport) -> String {
    let mut out = String::new();
    let name = if report.instance.is_empty() { "-" } else { &report.instance };
    let capacity = match report.certificate {
        Certificate::Inferred { constraint } => report.constraints[constraint].capacity.to_string(),
        Certificate::Resource { resource } => format!("R{resource}"),
        Certificate::None => "-".into(),
    };
    let _ = writeln!(out, "{:<24} {:>10} {:>10} {:>9}", "Instance", "Ref. bound", "New bound", "Capacity");
    let _ = writeln!(
        out,
        "{:<24} {:>10} {:>10} {:>9}",
        name, report.precedence_lb, report.searchless_lb, capacity
    );
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "{:>3} {:>9} {:>10} {:>6} {:>9} {:<8} {:<12} Tasks",
        "Id", "Capacity", "Cap. bound", "LB", "Rule", "Resource", "Check"
    );
    for c in &report.constraints {
        let tasks = c
            .usages
            .iter()
            .map(|u| if u.usage == 1 { u.task.to_string() } else { format!("{}x{}", u.usage, u.task) })
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            out,
            "{:>3} {:>9} {:>10} {:>6} {:>9} {:<8} {:<12} {}",
            c.id,
            c.capacity,
            c.capacity_bound.to_string(),
            c.capacity_lb,
            format!("{:?}", c.rule).to_uppercase(),
            c.source_resource,
            format!("{:?}", c.verification).to_lowercase(),
            tasks
        );
    }
    let s = &report.stats;
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "covers: {} generated, {} selected, {} lifted, {} skipped, {} dominated; {} subproblem calls",
        s.covers_generated.total(),
        s.covers_selected.total(),
        s.covers_lifted,
        s.covers_skipped,
        s.covers_dominated,
        s.subproblem_calls
    );
    if let Some(t) = report.timing {
        let _ = writeln!(out, "wall time: {} ms", t.wall_time_ms);
    }
    out
}
