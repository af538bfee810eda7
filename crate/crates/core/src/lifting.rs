//! Sequential lifting of cover inequalities and the inference loop that
//! turns ranked covers into a handful of new cumulative constraints.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::covers::{GenerationRule, TaggedCover};
use crate::instance::DemandSystem;
use crate::poly::{capacity_bound, is_dominated, Cover, LiftedInequality, BRUTEFORCE_LIMIT};
use crate::subproblem::{solve_up_to, LiftingSubproblem, SubproblemOutcome};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("cover {members:?} does not exceed the capacity of row {row}")]
    NotACover { members: Vec<usize>, row: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
}

/// Budget and mode switches for inference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftingConfig {
    /// Short covers kept after ranking.
    pub n_cover: usize,
    /// Constraints returned.
    pub n_out: usize,
    /// `Some(2)` restricts inference to pairs (disjunctive-only mode).
    pub max_cover_cardinality: Option<usize>,
    /// Re-check every reported constraint by enumeration when the system has
    /// at most `bruteforce_limit` columns.
    pub bruteforce_verify: bool,
    pub bruteforce_limit: usize,
}

impl Default for LiftingConfig {
    fn default() -> Self {
        LiftingConfig {
            n_cover: 100,
            n_out: 5,
            max_cover_cardinality: None,
            bruteforce_verify: true,
            bruteforce_limit: BRUTEFORCE_LIMIT,
        }
    }
}

impl LiftingConfig {
    pub fn validate(&self) -> Result<(), LiftError> {
        if self.n_cover == 0 {
            return Err(LiftError::Config("n_cover must be at least 1".into()));
        }
        if self.n_out == 0 {
            return Err(LiftError::Config("n_out must be at least 1".into()));
        }
        if self.max_cover_cardinality.is_some_and(|k| k < 2) {
            return Err(LiftError::Config("max_cover_cardinality must be at least 2".into()));
        }
        Ok(())
    }

    pub fn disjunctive_only(&self) -> bool {
        self.max_cover_cardinality.is_some_and(|k| k <= 2)
    }
}

/// Result of lifting one cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lifted {
    pub inequality: LiftedInequality,
    pub subproblem_calls: usize,
    /// Columns whose subproblem had a negative reduced capacity; they were
    /// given the full right-hand side as coefficient.
    pub infeasible_columns: Vec<usize>,
}

/// Lifts `x(C) <= |C| - 1` over all remaining columns, shortest first.
pub fn lift_cover(cover: &Cover, system: &DemandSystem) -> Result<Lifted, LiftError> {
    lift_cover_observed(cover, system, |_, _| {})
}

/// [`lift_cover`] calling `observe(partial, column)` after each coefficient
/// is fixed.
pub fn lift_cover_observed<F>(cover: &Cover, system: &DemandSystem, mut observe: F) -> Result<Lifted, LiftError>
where
    F: FnMut(&LiftedInequality, usize),
{
    if !cover.is_valid_for(system) {
        return Err(LiftError::NotACover { members: cover.members.clone(), row: cover.source_row });
    }
    let n = system.num_cols();
    let d = system.durations();
    let mut ineq = cover.inequality(n);
    let rhs = ineq.rhs;

    let mut in_cover = vec![false; n];
    for &i in &cover.members {
        in_cover[i] = true;
    }
    let mut remaining: Vec<usize> = (0..n).filter(|&i| !in_cover[i]).collect();
    remaining.sort_by(|&x, &y| d[x].cmp(&d[y]).then(x.cmp(&y)));

    // lifted columns with a positive coefficient; zero ones never enter v*
    let mut support: Vec<usize> = cover.members.clone();
    let mut calls = 0;
    let mut infeasible = Vec::new();
    for i in remaining {
        let sub = LiftingSubproblem {
            weights: support.iter().map(|&c| ineq.coeffs[c]).collect(),
            demands: system
                .rows()
                .iter()
                .map(|row| support.iter().map(|&c| row[c]).collect())
                .collect(),
            capacities: system
                .rows()
                .iter()
                .zip(system.rhs())
                .map(|(row, &b)| b as i64 - row[i] as i64)
                .collect(),
        };
        calls += 1;
        // validity of the current inequality caps v* at the right-hand side
        let coeff = match solve_up_to(&sub, rhs) {
            SubproblemOutcome::Optimal { value, .. } => {
                assert!(value <= rhs, "lifting subproblem exceeded the right-hand side");
                rhs - value
            }
            SubproblemOutcome::Infeasible => {
                infeasible.push(i);
                rhs
            }
        };
        ineq.coeffs[i] = coeff;
        if coeff > 0 {
            support.push(i);
        }
        observe(&ineq, i);
    }
    Ok(Lifted { inequality: ineq, subproblem_calls: calls, infeasible_columns: infeasible })
}

/// Covers recorded after lifting: any `threshold`-subset of `members` is
/// known to be a cover.
#[derive(Debug, Clone, Default)]
pub struct SkipSet {
    entries: Vec<(Vec<bool>, usize)>,
}

impl SkipSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, members: Vec<bool>, threshold: usize) {
        self.entries.push((members, threshold));
    }

    /// Whether some entry contains all of `cover` with threshold `<= |cover|`.
    pub fn covers(&self, cover: &[usize]) -> bool {
        self.entries
            .iter()
            .any(|(set, k)| *k <= cover.len() && cover.iter().all(|&i| set[i]))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InferredConstraint {
    pub inequality: LiftedInequality,
    pub capacity_bound: Ratio<u64>,
    pub source: TaggedCover,
    pub infeasible_columns: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverOutcome {
    Skipped,
    Dominated,
    Kept,
}

/// What happened to one input cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverTrace {
    pub members: Vec<usize>,
    pub rule: GenerationRule,
    pub outcome: CoverOutcome,
    pub subproblem_calls: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InferenceStats {
    pub covers_considered: usize,
    pub covers_skipped: usize,
    pub covers_lifted: usize,
    pub covers_dominated: usize,
    pub subproblem_calls: usize,
    pub trace: Vec<CoverTrace>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inference {
    /// At most `n_out` constraints, best capacity bound first.
    pub constraints: Vec<InferredConstraint>,
    pub stats: InferenceStats,
}

/// Lifts the covers in order, skipping those implied by earlier results and
/// dropping dominated results, then keeps the `n_out` constraints with the
/// largest capacity bound (ties keep discovery order).
pub fn infer_constraints(
    system: &DemandSystem,
    covers: &[TaggedCover],
    config: &LiftingConfig,
) -> Result<Inference, LiftError> {
    config.validate()?;
    let n = system.num_cols();
    let mut skip = SkipSet::new();
    let mut stats = InferenceStats::default();
    let mut found = Vec::new();

    for tagged in covers {
        let members = &tagged.cover.members;
        stats.covers_considered += 1;
        if skip.covers(members) {
            stats.covers_skipped += 1;
            stats.trace.push(CoverTrace {
                members: members.clone(),
                rule: tagged.rule,
                outcome: CoverOutcome::Skipped,
                subproblem_calls: 0,
            });
            continue;
        }
        let lifted = lift_cover(&tagged.cover, system)?;
        stats.covers_lifted += 1;
        stats.subproblem_calls += lifted.subproblem_calls;

        let unit: Vec<bool> = lifted.inequality.coeffs.iter().map(|&c| c == 1).collect();
        debug_assert_eq!(unit.len(), n);
        skip.insert(unit, members.len());

        let dominated = is_dominated(&lifted.inequality, system);
        stats.trace.push(CoverTrace {
            members: members.clone(),
            rule: tagged.rule,
            outcome: if dominated { CoverOutcome::Dominated } else { CoverOutcome::Kept },
            subproblem_calls: lifted.subproblem_calls,
        });
        if dominated {
            stats.covers_dominated += 1;
            continue;
        }
        let cap = capacity_bound(&lifted.inequality, system.durations())
            .expect("lifted cover inequalities have a positive right-hand side");
        found.push(InferredConstraint {
            inequality: lifted.inequality,
            capacity_bound: cap,
            source: tagged.clone(),
            infeasible_columns: lifted.infeasible_columns,
        });
    }

    found.sort_by_key(|c| std::cmp::Reverse(c.capacity_bound));
    found.truncate(config.n_out);
    Ok(Inference { constraints: found, stats })
}
