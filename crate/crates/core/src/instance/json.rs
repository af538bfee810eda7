//! Canonical JSON interchange format.
//!
//! ```json
//! {"name":"j301_1","kind":"RCPSP","horizon":158,
//!  "tasks":[{"duration":0,"demands":[0,0]}, ...],
//!  "resources":[{"capacity":12}, ...],
//!  "precedences":[{"from":0,"to":1,"offset":0}, ...]}
//! ```
//!
//! Task and resource ids are their array positions.

use serde::{Deserialize, Serialize};

use super::{non_negative, InstanceError, PrecedenceArc, ProblemKind, Resource, SchedulingInstance, Task};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    #[serde(default)]
    name: String,
    kind: ProblemKind,
    #[serde(default)]
    horizon: Option<i64>,
    tasks: Vec<TaskEntry>,
    resources: Vec<ResourceEntry>,
    #[serde(default)]
    precedences: Vec<PrecedenceArc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TaskEntry {
    duration: i64,
    demands: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ResourceEntry {
    capacity: i64,
}

pub(super) fn decode(text: &str) -> Result<SchedulingInstance, InstanceError> {
    let doc: Document = serde_json::from_str(text)
        .map_err(|e| InstanceError::malformed(e.line(), e.to_string()))?;
    // serde_json does not keep positions of individual values
    let line = 1;
    let tasks = doc
        .tasks
        .into_iter()
        .enumerate()
        .map(|(id, t)| {
            Ok(Task {
                id,
                duration: non_negative(t.duration, line, "duration")?,
                demands: t
                    .demands
                    .into_iter()
                    .map(|d| non_negative(d, line, "demand"))
                    .collect::<Result<_, _>>()?,
            })
        })
        .collect::<Result<Vec<_>, InstanceError>>()?;
    let resources = doc
        .resources
        .into_iter()
        .enumerate()
        .map(|(id, r)| Ok(Resource { id, capacity: non_negative(r.capacity, line, "capacity")? }))
        .collect::<Result<Vec<_>, InstanceError>>()?;
    let horizon = doc.horizon.map(|h| non_negative(h, line, "horizon")).transpose()?;
    Ok(SchedulingInstance {
        name: doc.name,
        kind: doc.kind,
        horizon,
        tasks,
        resources,
        precedences: doc.precedences,
    })
}

pub(super) fn encode(instance: &SchedulingInstance) -> String {
    let doc = Document {
        name: instance.name.clone(),
        kind: instance.kind,
        horizon: instance.horizon.map(|h| h as i64),
        tasks: instance
            .tasks
            .iter()
            .map(|t| TaskEntry {
                duration: t.duration as i64,
                demands: t.demands.iter().map(|&d| d as i64).collect(),
            })
            .collect(),
        resources: instance
            .resources
            .iter()
            .map(|r| ResourceEntry { capacity: r.capacity as i64 })
            .collect(),
        precedences: instance.precedences.clone(),
    };
    serde_json::to_string(&doc).expect("instance serialization cannot fail")
}
