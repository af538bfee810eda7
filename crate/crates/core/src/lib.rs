//! Inference of auxiliary cumulative constraints for resource-constrained
//! project scheduling.
//!
//! Each cumulative constraint is read as a linear inequality over 0/1
//! occupancy vectors, so the resources of an instance form a system
//! `A x <= b`. Any valid inequality of that 0/1 polytope is again a
//! cumulative constraint on the same start times. This crate finds covers of
//! the resource rows, lifts the corresponding cover inequalities exactly,
//! keeps the strongest results and reports the makespan bounds they certify.
//!
//! ```
//! use cumlift::{fixtures, parse_instance, run_pipeline, InstanceFormat, LiftingConfig};
//!
//! let instance = parse_instance(fixtures::EXAMPLE_SM, InstanceFormat::PsplibSm).unwrap();
//! let report = run_pipeline(&instance, &LiftingConfig::default()).unwrap();
//! assert_eq!(report.searchless_lb, 3);
//! ```

pub mod bounds;
pub mod covers;
pub mod fixtures;
pub mod graph;
pub mod instance;
pub mod lifting;
pub mod model;
pub mod pipeline;
pub mod poly;
pub mod report;
pub mod subproblem;

pub use bounds::{compute_searchless_lb, precedence_path_lb, Certificate, SearchlessBound, TemporalError};
pub use covers::{
    enumerate_long_covers, enumerate_short_covers, select_top_covers, CoverBatch, GenerationRule, TaggedCover,
};
pub use graph::export_parallelism_graph;
pub use instance::{
    encode_canonical, parse_instance, DemandSystem, InstanceError, InstanceFormat, PrecedenceArc, ProblemKind,
    Resource, SchedulingInstance, Task,
};
pub use lifting::{infer_constraints, lift_cover, Inference, LiftError, LiftingConfig};
pub use model::emit_model_fragment;
pub use pipeline::{run, run_pipeline, PipelineError, PipelineRun};
pub use poly::{
    capacity_bound, capacity_lb, check_cumulative, check_validity_bruteforce, is_cover, is_dominated, span, Cover,
    LiftedInequality, PolyError, Schedule, Validity,
};
pub use report::{emit_report, InferenceReport, ReportFormat};
pub use subproblem::{solve, solve_up_to, LiftingSubproblem, SubproblemOutcome};
