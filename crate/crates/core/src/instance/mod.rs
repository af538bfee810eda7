//! Canonical scheduling instances and their projection onto the demand
//! system used by cover enumeration and lifting.

mod demand;
mod json;
mod psplib;
mod rcp;
mod sch;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use demand::DemandSystem;

/// Errors raised while reading or validating an instance.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("malformed input at line {line}: {message}")]
    MalformedInput { line: usize, message: String },
    #[error("inconsistent counts: declared {declared} {what}, found {found}")]
    InconsistentCounts {
        what: &'static str,
        declared: usize,
        found: usize,
    },
    #[error("negative value for {field} at line {line}: {value}")]
    NegativeValue {
        field: &'static str,
        line: usize,
        value: i64,
    },
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("task {task} demands {demand} of resource {resource} with capacity {capacity}")]
    InfeasibleTask {
        task: usize,
        resource: usize,
        demand: u64,
        capacity: u64,
    },
}

impl InstanceError {
    pub(crate) fn malformed(line: usize, message: impl Into<String>) -> Self {
        InstanceError::MalformedInput {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Task {
    pub id: usize,
    pub duration: u64,
    /// One entry per resource.
    pub demands: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resource {
    pub id: usize,
    pub capacity: u64,
}

/// Generalized precedence `start[to] - start[from] >= offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecedenceArc {
    pub from: usize,
    pub to: usize,
    pub offset: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProblemKind {
    #[serde(rename = "RCPSP")]
    Rcpsp,
    #[serde(rename = "RCPSP_MAX")]
    RcpspMax,
}

/// Input file formats understood by [`parse_instance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceFormat {
    /// PSPLIB single-mode `.sm`.
    PsplibSm,
    /// ProGen/max `.sch` (RCPSP/max).
    ProgenMaxSch,
    /// Patterson `.rcp`.
    PattersonRcp,
    CanonicalJson,
}

impl InstanceFormat {
    /// Guess the format from a file extension.
    pub fn from_extension(ext: &str) -> Option<Self> {
        match ext.to_ascii_lowercase().as_str() {
            "sm" => Some(InstanceFormat::PsplibSm),
            "sch" => Some(InstanceFormat::ProgenMaxSch),
            "rcp" => Some(InstanceFormat::PattersonRcp),
            "json" => Some(InstanceFormat::CanonicalJson),
            _ => None,
        }
    }
}

impl FromStr for InstanceFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "psplib-sm" | "sm" => Ok(InstanceFormat::PsplibSm),
            "progen-max-sch" | "sch" => Ok(InstanceFormat::ProgenMaxSch),
            "patterson-rcp" | "rcp" => Ok(InstanceFormat::PattersonRcp),
            "canonical-json" | "json" => Ok(InstanceFormat::CanonicalJson),
            other => Err(format!("unknown instance format `{other}`")),
        }
    }
}

impl fmt::Display for InstanceFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            InstanceFormat::PsplibSm => "psplib-sm",
            InstanceFormat::ProgenMaxSch => "progen-max-sch",
            InstanceFormat::PattersonRcp => "patterson-rcp",
            InstanceFormat::CanonicalJson => "canonical-json",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchedulingInstance {
    pub name: String,
    pub kind: ProblemKind,
    pub horizon: Option<u64>,
    pub tasks: Vec<Task>,
    pub resources: Vec<Resource>,
    pub precedences: Vec<PrecedenceArc>,
}

impl SchedulingInstance {
    /// Builds an instance from plain vectors, assigning ids by position, and
    /// checks the instance invariants.
    pub fn new(
        name: impl Into<String>,
        kind: ProblemKind,
        durations: Vec<u64>,
        demands: Vec<Vec<u64>>,
        capacities: Vec<u64>,
        precedences: Vec<PrecedenceArc>,
    ) -> Result<Self, InstanceError> {
        if durations.len() != demands.len() {
            return Err(InstanceError::InconsistentCounts {
                what: "task demand vectors",
                declared: durations.len(),
                found: demands.len(),
            });
        }
        let instance = SchedulingInstance {
            name: name.into(),
            kind,
            horizon: None,
            tasks: durations
                .into_iter()
                .zip(demands)
                .enumerate()
                .map(|(id, (duration, demands))| Task {
                    id,
                    duration,
                    demands,
                })
                .collect(),
            resources: capacities
                .into_iter()
                .enumerate()
                .map(|(id, capacity)| Resource { id, capacity })
                .collect(),
            precedences,
        };
        instance.validate()?;
        Ok(instance)
    }

    pub fn num_tasks(&self) -> usize {
        self.tasks.len()
    }

    pub fn num_resources(&self) -> usize {
        self.resources.len()
    }

    pub fn durations(&self) -> Vec<u64> {
        self.tasks.iter().map(|t| t.duration).collect()
    }

    /// Checks ids, demand vector lengths, arc endpoints and, for plain RCPSP,
    /// that every arc offset equals its source duration.
    pub fn validate(&self) -> Result<(), InstanceError> {
        for (pos, task) in self.tasks.iter().enumerate() {
            if task.id != pos {
                return Err(InstanceError::Invalid(format!(
                    "task at position {pos} has id {}",
                    task.id
                )));
            }
            if task.demands.len() != self.resources.len() {
                return Err(InstanceError::InconsistentCounts {
                    what: "resource demands",
                    declared: self.resources.len(),
                    found: task.demands.len(),
                });
            }
        }
        for (pos, res) in self.resources.iter().enumerate() {
            if res.id != pos {
                return Err(InstanceError::Invalid(format!(
                    "resource at position {pos} has id {}",
                    res.id
                )));
            }
        }
        let n = self.tasks.len();
        for arc in &self.precedences {
            if arc.from >= n || arc.to >= n {
                return Err(InstanceError::Invalid(format!(
                    "precedence {} -> {} references a task outside 0..{n}",
                    arc.from, arc.to
                )));
            }
            if arc.from == arc.to {
                return Err(InstanceError::Invalid(format!(
                    "self-loop precedence on task {}",
                    arc.from
                )));
            }
            if self.kind == ProblemKind::Rcpsp {
                let d = self.tasks[arc.from].duration;
                if i64::try_from(d).ok() != Some(arc.offset) {
                    return Err(InstanceError::Invalid(format!(
                        "RCPSP precedence {} -> {} has offset {} but source duration {d}",
                        arc.from, arc.to, arc.offset
                    )));
                }
            }
        }
        Ok(())
    }

    /// Projects the instance onto its demand system.
    pub fn to_demand_system(&self) -> Result<DemandSystem, InstanceError> {
        DemandSystem::from_instance(self)
    }
}

/// Parses `text` in the given format.
pub fn parse_instance(
    text: &str,
    format: InstanceFormat,
) -> Result<SchedulingInstance, InstanceError> {
    let instance = match format {
        InstanceFormat::PsplibSm => psplib::parse(text)?,
        InstanceFormat::ProgenMaxSch => sch::parse(text)?,
        InstanceFormat::PattersonRcp => rcp::parse(text)?,
        InstanceFormat::CanonicalJson => json::decode(text)?,
    };
    instance.validate()?;
    Ok(instance)
}

/// Serializes an instance to the canonical JSON interchange format.
pub fn encode_canonical(instance: &SchedulingInstance) -> String {
    json::encode(instance)
}

/// Whitespace tokenizer that remembers the 1-based line of each token.
pub(crate) struct Tokens<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Tokens<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .flat_map(|(no, line)| line.split_whitespace().map(move |tok| (no + 1, tok)))
            .collect();
        Tokens { items, pos: 0 }
    }

    pub(crate) fn line(&self) -> usize {
        self.items
            .get(self.pos)
            .or_else(|| self.items.last())
            .map_or(1, |(line, _)| *line)
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.pos >= self.items.len()
    }

    pub(crate) fn next_raw(&mut self, what: &str) -> Result<(usize, &'a str), InstanceError> {
        let item = self.items.get(self.pos).copied().ok_or_else(|| {
            InstanceError::malformed(self.line(), format!("unexpected end of input, expected {what}"))
        })?;
        self.pos += 1;
        Ok(item)
    }

    pub(crate) fn next_int(&mut self, what: &'static str) -> Result<(usize, i64), InstanceError> {
        let (line, tok) = self.next_raw(what)?;
        parse_int(tok.trim_matches(|c| c == '[' || c == ']'), line, what).map(|v| (line, v))
    }

    pub(crate) fn next_u64(&mut self, what: &'static str) -> Result<u64, InstanceError> {
        let (line, v) = self.next_int(what)?;
        non_negative(v, line, what)
    }

    pub(crate) fn next_usize(&mut self, what: &'static str) -> Result<usize, InstanceError> {
        Ok(self.next_u64(what)? as usize)
    }
}

pub(crate) fn parse_int(tok: &str, line: usize, what: &str) -> Result<i64, InstanceError> {
    tok.parse::<i64>()
        .map_err(|_| InstanceError::malformed(line, format!("expected integer {what}, found `{tok}`")))
}

pub(crate) fn non_negative(value: i64, line: usize, field: &'static str) -> Result<u64, InstanceError> {
    u64::try_from(value).map_err(|_| InstanceError::NegativeValue { field, line, value })
}

/// Arc list for plain RCPSP successors: offset is the source duration.
pub(crate) fn finish_start_arcs(durations: &[u64], successors: &[Vec<usize>]) -> Vec<PrecedenceArc> {
    successors
        .iter()
        .enumerate()
        .flat_map(|(from, succ)| {
            succ.iter().map(move |&to| PrecedenceArc {
                from,
                to,
                offset: durations[from] as i64,
            })
        })
        .collect()
}
