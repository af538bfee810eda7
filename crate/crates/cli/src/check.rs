//! Independent re-verification of a saved report.

use std::fmt::Write as _;

use cumlift::bounds::Certificate;
use cumlift::poly::BRUTEFORCE_LIMIT;
use cumlift::{
    capacity_lb, check_validity_bruteforce, solve_up_to, DemandSystem, InferenceReport, LiftedInequality,
    LiftingSubproblem, SchedulingInstance, SubproblemOutcome, Validity,
};

use crate::CliError;

/// Checks every constraint of `report` for validity over the instance's
/// demand system, and that the reported bounds can be recomputed.
pub fn check_report(instance: &SchedulingInstance, report: &InferenceReport) -> Result<String, CliError> {
    instance.validate().map_err(|source| CliError::Instance { path: "<instance>".into(), source })?;
    let system = instance
        .to_demand_system()
        .map_err(|source| CliError::Instance { path: "<instance>".into(), source })?;
    let mut column_of = vec![None; instance.num_tasks()];
    for (col, &task) in system.task_map().iter().enumerate() {
        column_of[task] = Some(col);
    }

    let mut out = String::new();
    for c in &report.constraints {
        let mut coeffs = vec![0u64; system.num_cols()];
        for u in &c.usages {
            let col = column_of.get(u.task).copied().flatten().ok_or_else(|| {
                CliError::Verification(format!("constraint {}: task {} is not a demand column", c.id, u.task))
            })?;
            coeffs[col] = u.usage;
        }
        let ineq = LiftedInequality::new(coeffs, c.capacity);
        if let Some(point) = violation(&ineq, &system) {
            let tasks: Vec<usize> = point.iter().map(|&col| system.task_map()[col]).collect();
            return Err(CliError::Verification(format!(
                "constraint {} is violated by the feasible task set {tasks:?}",
                c.id
            )));
        }
        let lb = capacity_lb(&ineq, system.durations())
            .map_err(|e| CliError::Verification(format!("constraint {}: {e}", c.id)))?;
        if lb != c.capacity_lb {
            return Err(CliError::Verification(format!(
                "constraint {}: capacity bound recomputes to {lb}, report says {}",
                c.id, c.capacity_lb
            )));
        }
        let _ = writeln!(out, "constraint {} valid (capacity {}, lb {lb})", c.id, c.capacity);
    }

    let certified = match report.certificate {
        Certificate::Inferred { constraint } => report.constraints.get(constraint).map(|c| c.capacity_lb),
        Certificate::Resource { resource } => (resource < system.num_rows())
            .then(|| capacity_lb(&LiftedInequality::from_row(&system, resource), system.durations()).ok())
            .flatten(),
        Certificate::None => Some(0),
    };
    if certified != Some(report.searchless_lb) {
        return Err(CliError::Verification(format!(
            "search-less bound {} is not reproduced by its certificate",
            report.searchless_lb
        )));
    }
    let _ = writeln!(out, "searchless_lb {} certified", report.searchless_lb);
    Ok(out)
}

/// A feasible point violating `ineq`, as sorted columns.
fn violation(ineq: &LiftedInequality, system: &DemandSystem) -> Option<Vec<usize>> {
    let n = system.num_cols();
    if n <= BRUTEFORCE_LIMIT {
        return match check_validity_bruteforce(ineq, system, BRUTEFORCE_LIMIT).expect("size checked") {
            Validity::Valid => None,
            Validity::Violated(point) => Some((0..n).filter(|&c| point[c]).collect()),
        };
    }
    // valid iff max coeffs.x over the system's 0/1 points is at most rhs
    let sub = LiftingSubproblem {
        weights: ineq.coeffs.clone(),
        demands: system.rows().to_vec(),
        capacities: system.rhs().iter().map(|&b| b as i64).collect(),
    };
    match solve_up_to(&sub, ineq.rhs + 1) {
        SubproblemOutcome::Optimal { value, witness } if value > ineq.rhs => Some(witness),
        _ => None,
    }
}
