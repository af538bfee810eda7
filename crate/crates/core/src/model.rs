//! MiniZinc fragments for the inferred constraints.

use std::fmt::Write as _;

use crate::instance::{DemandSystem, SchedulingInstance};
use crate::poly::LiftedInequality;

/// Name of the start-time array the fragment refers to.
pub const START_ARRAY: &str = "s";

fn int_array(values: impl IntoIterator<Item = u64>) -> String {
    let items: Vec<String> = values.into_iter().map(|v| v.to_string()).collect();
    format!("[{}]", items.join(","))
}

/// One `constraint cumulative(s, durations, usages, capacity);` line per
/// inequality, with arrays over all instance tasks in task order. Columns are
/// mapped back through the system's task map; other tasks get usage 0.
pub fn emit_model_fragment(
    instance: &SchedulingInstance,
    system: &DemandSystem,
    inferred: &[LiftedInequality],
) -> String {
    let n = instance.num_tasks();
    let durations = int_array(instance.tasks.iter().map(|t| t.duration));
    let mut out = String::new();
    for ineq in inferred {
        let mut usages = vec![0u64; n];
        for (col, &task) in system.task_map().iter().enumerate() {
            usages[task] = ineq.coeffs[col];
        }
        let _ = writeln!(
            out,
            "constraint cumulative({START_ARRAY}, {durations}, {}, {});",
            int_array(usages),
            ineq.rhs
        );
    }
    out
}
