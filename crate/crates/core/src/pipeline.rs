//! End-to-end inference: projection, cover enumeration, lifting, bounds and
//! report assembly.

use thiserror::Error;

use crate::bounds::{compute_searchless_lb, precedence_path_lb, TemporalError};
use crate::covers::{
    enumerate_binary_covers, enumerate_long_covers, enumerate_short_covers, select_top_covers, CoverBatch,
    TaggedCover,
};
use crate::instance::{DemandSystem, InstanceError, SchedulingInstance};
use crate::lifting::{infer_constraints, Inference, LiftError, LiftingConfig};
use crate::poly::{capacity_lb, check_validity_bruteforce, Validity};
use crate::report::{CoverCounts, InferenceReport, ReportStats, ReportedConstraint, Usage, Verification};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Temporal(#[from] TemporalError),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error("inferred constraint {constraint} is violated by feasible point {point:?}")]
    VerificationFailed { constraint: usize, point: Vec<usize> },
}

/// Everything computed by [`run`].
#[derive(Debug, Clone)]
pub struct PipelineRun {
    pub system: DemandSystem,
    pub batch: CoverBatch,
    /// Covers in the order they were handed to the lifting loop.
    pub selected: Vec<TaggedCover>,
    pub inference: Inference,
    pub report: InferenceReport,
}

/// Seed covers honouring `max_cover_cardinality`.
pub fn generate_covers(system: &DemandSystem, config: &LiftingConfig) -> CoverBatch {
    if config.disjunctive_only() {
        return enumerate_binary_covers(system);
    }
    let mut batch = enumerate_short_covers(system);
    let max_len = config.max_cover_cardinality.unwrap_or(usize::MAX);
    for tagged in enumerate_long_covers(system).into_covers() {
        if tagged.cover.len() <= max_len {
            batch.push(tagged.cover, tagged.rule);
        }
    }
    batch
}

pub fn run(instance: &SchedulingInstance, config: &LiftingConfig) -> Result<PipelineRun, PipelineError> {
    config.validate()?;
    instance.validate()?;
    let system = instance.to_demand_system()?;
    let precedence_lb = precedence_path_lb(instance)?;

    let batch = generate_covers(&system, config);
    let selected = select_top_covers(&batch, system.durations(), config.n_cover);
    let inference = infer_constraints(&system, &selected, config)?;
    log::info!(
        "{}: {} covers generated, {} selected, {} lifted, {} subproblem calls",
        instance.name,
        batch.len(),
        selected.len(),
        inference.stats.covers_lifted,
        inference.stats.subproblem_calls
    );

    let n = system.num_cols();
    let check = config.bruteforce_verify && n <= config.bruteforce_limit;
    let task_map = system.task_map();
    let mut constraints = Vec::with_capacity(inference.constraints.len());
    for (id, inferred) in inference.constraints.iter().enumerate() {
        let verification = if !config.bruteforce_verify {
            Verification::Disabled
        } else if !check {
            Verification::TooLarge
        } else {
            match check_validity_bruteforce(&inferred.inequality, &system, config.bruteforce_limit)
                .expect("size checked above")
            {
                Validity::Valid => Verification::Verified,
                Validity::Violated(point) => {
                    return Err(PipelineError::VerificationFailed {
                        constraint: id,
                        point: point
                            .iter()
                            .enumerate()
                            .filter(|(_, &x)| x)
                            .map(|(c, _)| task_map[c])
                            .collect(),
                    })
                }
            }
        };
        let ineq = &inferred.inequality;
        constraints.push(ReportedConstraint {
            id,
            usages: ineq
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(col, &usage)| Usage { task: task_map[col], usage })
                .collect(),
            capacity: ineq.rhs,
            capacity_bound: inferred.capacity_bound.into(),
            capacity_lb: capacity_lb(ineq, system.durations()).expect("positive capacity"),
            source_cover: inferred.source.cover.members.iter().map(|&c| task_map[c]).collect(),
            source_resource: inferred.source.cover.source_row,
            rule: inferred.source.rule,
            verification,
            infeasible_tasks: inferred.infeasible_columns.iter().map(|&c| task_map[c]).collect(),
        });
    }

    let inequalities: Vec<_> = inference.constraints.iter().map(|c| c.inequality.clone()).collect();
    let searchless = compute_searchless_lb(&system, &inequalities);

    let mut generated = CoverCounts::default();
    for c in batch.covers() {
        generated.add(c.rule);
    }
    let mut chosen = CoverCounts::default();
    for c in &selected {
        chosen.add(c.rule);
    }
    let stats = &inference.stats;
    let report = InferenceReport {
        instance: instance.name.clone(),
        kind: instance.kind,
        num_tasks: instance.num_tasks(),
        config: config.clone(),
        constraints,
        searchless_lb: searchless.bound,
        certificate: searchless.certificate,
        precedence_lb,
        stats: ReportStats {
            columns: n,
            rows: system.num_rows(),
            covers_generated: generated,
            covers_selected: chosen,
            covers_skipped: stats.covers_skipped,
            covers_lifted: stats.covers_lifted,
            covers_dominated: stats.covers_dominated,
            subproblem_calls: stats.subproblem_calls,
        },
        timing: None,
    };
    Ok(PipelineRun { system, batch, selected, inference, report })
}

/// Runs inference and returns the report.
pub fn run_pipeline(instance: &SchedulingInstance, config: &LiftingConfig) -> Result<InferenceReport, PipelineError> {
    run(instance, config).map(|r| r.report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::Certificate;
    use crate::fixtures::EXAMPLE_SM;
    use crate::instance::{parse_instance, InstanceFormat, ProblemKind};
    use crate::report::{emit_report, ReportFormat};

    #[test]
    fn fixture_report() {
        let inst = parse_instance(EXAMPLE_SM, InstanceFormat::PsplibSm).unwrap();
        let report = run_pipeline(&inst, &LiftingConfig::default()).unwrap();
        assert!(!report.constraints.is_empty());
        assert_eq!(report.searchless_lb, 3);
        assert_eq!(report.certificate, Certificate::Inferred { constraint: 0 });
        assert_eq!(report.precedence_lb, 2);
        let best = &report.constraints[0];
        assert_eq!(best.capacity, 1);
        assert_eq!(best.usages.iter().map(|u| u.task).collect::<Vec<_>>(), vec![1, 4]);
        assert!(report
            .constraints
            .iter()
            .any(|c| c.capacity == 2 && c.usages.iter().map(|u| u.task).collect::<Vec<_>>() == vec![1, 2, 3, 4]));
        assert!(report.constraints.iter().all(|c| c.verification == Verification::Verified));
        let json = emit_report(&report, ReportFormat::Json);
        assert!(json.contains("\"searchless_lb\": 3"));
    }

    #[test]
    fn single_task_has_no_covers() {
        let inst = SchedulingInstance::new("one", ProblemKind::Rcpsp, vec![4], vec![vec![2]], vec![3], vec![]).unwrap();
        let report = run_pipeline(&inst, &LiftingConfig::default()).unwrap();
        assert!(report.constraints.is_empty());
        // ceil(4 * 2 / 3)
        assert_eq!(report.searchless_lb, 3);
        assert_eq!(report.certificate, Certificate::Resource { resource: 0 });
    }

    #[test]
    fn disjunctive_mode_generates_pairs_only() {
        let inst = parse_instance(EXAMPLE_SM, InstanceFormat::PsplibSm).unwrap();
        let config = LiftingConfig { max_cover_cardinality: Some(2), ..LiftingConfig::default() };
        let run = run(&inst, &config).unwrap();
        let gen = &run.report.stats.covers_generated;
        assert_eq!((gen.ternary, gen.long_max, gen.long_min), (0, 0, 0));
        assert!(gen.binary > 0);
    }

    #[test]
    fn infeasible_task_propagates() {
        let inst = SchedulingInstance::new("over", ProblemKind::Rcpsp, vec![1], vec![vec![9]], vec![7], vec![]).unwrap();
        assert!(matches!(
            run_pipeline(&inst, &LiftingConfig::default()),
            Err(PipelineError::Instance(InstanceError::InfeasibleTask { .. }))
        ));
    }
}
