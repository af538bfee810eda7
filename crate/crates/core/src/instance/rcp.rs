//! Patterson `.rcp` reader.
//!
//! Layout: `n_jobs n_resources`, one line of capacities, then per job
//! `duration demand_1 .. demand_k n_succ succ_1 .. succ_n` with 1-based
//! successor numbers.

use super::{finish_start_arcs, InstanceError, ProblemKind, Resource, SchedulingInstance, Task, Tokens};

pub(super) fn parse(text: &str) -> Result<SchedulingInstance, InstanceError> {
    let mut toks = Tokens::new(text);
    let n = toks.next_usize("job count")?;
    let k = toks.next_usize("resource count")?;
    let resources = (0..k)
        .map(|id| Ok(Resource { id, capacity: toks.next_u64("capacity")? }))
        .collect::<Result<Vec<_>, InstanceError>>()?;

    let mut tasks = Vec::with_capacity(n);
    let mut successors = Vec::with_capacity(n);
    for id in 0..n {
        if toks.is_empty() {
            return Err(InstanceError::InconsistentCounts {
                what: "jobs",
                declared: n,
                found: id,
            });
        }
        let duration = toks.next_u64("duration")?;
        let demands = (0..k)
            .map(|_| toks.next_u64("demand"))
            .collect::<Result<Vec<_>, _>>()?;
        let count = toks.next_usize("successor count")?;
        let mut succ = Vec::with_capacity(count);
        for _ in 0..count {
            let line = toks.line();
            let s = toks.next_usize("successor")?;
            if s == 0 || s > n {
                return Err(InstanceError::malformed(line, format!("successor {s} out of range 1..={n}")));
            }
            succ.push(s - 1);
        }
        tasks.push(Task { id, duration, demands });
        successors.push(succ);
    }
    if !toks.is_empty() {
        return Err(InstanceError::malformed(toks.line(), "trailing data after last job"));
    }

    let durations: Vec<u64> = tasks.iter().map(|t| t.duration).collect();
    Ok(SchedulingInstance {
        name: String::new(),
        kind: ProblemKind::Rcpsp,
        horizon: None,
        precedences: finish_start_arcs(&durations, &successors),
        tasks,
        resources,
    })
}
