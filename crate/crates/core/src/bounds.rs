//! Makespan lower bounds that need no search.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::{DemandSystem, SchedulingInstance};
use crate::poly::{capacity_lb, LiftedInequality};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TemporalError {
    #[error("precedence cycle through task {task} has positive total offset")]
    PositiveCycle { task: usize },
}

/// The constraint that certifies a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum Certificate {
    /// Index into the inferred constraint list.
    Inferred { constraint: usize },
    /// An original resource row.
    Resource { resource: usize },
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchlessBound {
    pub bound: u64,
    pub certificate: Certificate,
}

/// Largest capacity lower bound over the inferred constraints and the
/// original rows. Inferred constraints win ties; within each group the first
/// maximizer is named.
pub fn compute_searchless_lb(system: &DemandSystem, inferred: &[LiftedInequality]) -> SearchlessBound {
    let d = system.durations();
    let mut best = SearchlessBound { bound: 0, certificate: Certificate::None };
    for (idx, ineq) in inferred.iter().enumerate() {
        if let Ok(lb) = capacity_lb(ineq, d) {
            if lb > best.bound || best.certificate == Certificate::None {
                best = SearchlessBound { bound: lb, certificate: Certificate::Inferred { constraint: idx } };
            }
        }
    }
    for r in 0..system.num_rows() {
        if let Ok(lb) = capacity_lb(&LiftedInequality::from_row(system, r), d) {
            if lb > best.bound || best.certificate == Certificate::None {
                best = SearchlessBound { bound: lb, certificate: Certificate::Resource { resource: r } };
            }
        }
    }
    if best.bound == 0 {
        best.certificate = Certificate::None;
    }
    best
}

/// Longest path bound from the precedence arcs: every start is at least 0,
/// each arc forces `s_to >= s_from + offset`, and the bound is the largest
/// earliest finish `est_i + d_i`.
pub fn precedence_path_lb(instance: &SchedulingInstance) -> Result<u64, TemporalError> {
    let n = instance.num_tasks();
    let mut est = vec![0i64; n];
    for round in 0..=n {
        let mut changed = None;
        for arc in &instance.precedences {
            let candidate = est[arc.from] + arc.offset;
            if candidate > est[arc.to] {
                est[arc.to] = candidate;
                changed = Some(arc.to);
            }
        }
        match changed {
            None => break,
            Some(task) if round == n => return Err(TemporalError::PositiveCycle { task }),
            Some(_) => {}
        }
    }
    Ok(instance
        .tasks
        .iter()
        .map(|t| (est[t.id] + t.duration as i64) as u64)
        .max()
        .unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{PrecedenceArc, ProblemKind};

    #[test]
    fn lifted_row_beats_original_on_tie() {
        let sys = DemandSystem::new(vec![vec![5, 3, 2, 4]], vec![7], vec![1, 1, 1, 2]).unwrap();
        let lb = compute_searchless_lb(&sys, &[LiftedInequality::new(vec![1, 1, 1, 1], 2)]);
        assert_eq!(lb, SearchlessBound { bound: 3, certificate: Certificate::Inferred { constraint: 0 } });
        let rows_only = compute_searchless_lb(&sys, &[]);
        assert_eq!(rows_only, SearchlessBound { bound: 3, certificate: Certificate::Resource { resource: 0 } });
    }

    #[test]
    fn empty_system_has_zero_bound() {
        let sys = DemandSystem::new(vec![], vec![], vec![]).unwrap();
        assert_eq!(compute_searchless_lb(&sys, &[]), SearchlessBound { bound: 0, certificate: Certificate::None });
    }

    #[test]
    fn serial_chain() {
        let inst = SchedulingInstance::new(
            "chain",
            ProblemKind::Rcpsp,
            vec![2, 3],
            vec![vec![1], vec![1]],
            vec![1],
            vec![PrecedenceArc { from: 0, to: 1, offset: 2 }],
        )
        .unwrap();
        assert_eq!(precedence_path_lb(&inst), Ok(5));
    }

    #[test]
    fn no_arcs() {
        let inst = SchedulingInstance::new("dummies", ProblemKind::Rcpsp, vec![0, 0], vec![vec![0], vec![0]], vec![1], vec![])
            .unwrap();
        assert_eq!(precedence_path_lb(&inst), Ok(0));
    }

    #[test]
    fn positive_cycle_detected() {
        let inst = SchedulingInstance::new(
            "cycle",
            ProblemKind::RcpspMax,
            vec![1, 1],
            vec![vec![0], vec![0]],
            vec![1],
            vec![
                PrecedenceArc { from: 0, to: 1, offset: 4 },
                PrecedenceArc { from: 1, to: 0, offset: -1 },
            ],
        )
        .unwrap();
        assert!(matches!(precedence_path_lb(&inst), Err(TemporalError::PositiveCycle { .. })));
    }

    #[test]
    fn negative_lag_cycle_is_fine() {
        let inst = SchedulingInstance::new(
            "window",
            ProblemKind::RcpspMax,
            vec![1, 2],
            vec![vec![0], vec![0]],
            vec![1],
            vec![
                PrecedenceArc { from: 0, to: 1, offset: 4 },
                PrecedenceArc { from: 1, to: 0, offset: -6 },
            ],
        )
        .unwrap();
        assert_eq!(precedence_path_lb(&inst), Ok(6));
    }
}
