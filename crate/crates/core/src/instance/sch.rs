//! ProGen/max `.sch` reader (RCPSP/max, single mode).
//!
//! Activities are numbered from 0 (dummy source) to n+1 (dummy sink). Each
//! precedence line lists successors followed by their time lags, the lags
//! usually wrapped in brackets.

use super::{non_negative, parse_int, InstanceError, PrecedenceArc, ProblemKind, Resource, SchedulingInstance, Task};

fn ints(line: &str, line_no: usize, what: &'static str) -> Result<Vec<i64>, InstanceError> {
    line.split_whitespace()
        .map(|tok| tok.trim_matches(|c| c == '[' || c == ']'))
        .filter(|tok| !tok.is_empty())
        .map(|tok| parse_int(tok, line_no, what))
        .collect()
}

pub(super) fn parse(text: &str) -> Result<SchedulingInstance, InstanceError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (first_no, first) = lines.next().ok_or_else(|| InstanceError::malformed(1, "empty input"))?;
    let header = ints(first, first_no, "header")?;
    if header.len() < 2 {
        return Err(InstanceError::malformed(first_no, "header needs job and resource counts"));
    }
    let real_jobs = non_negative(header[0], first_no, "job count")? as usize;
    let k = non_negative(header[1], first_no, "resource count")? as usize;
    let n = real_jobs + 2;

    let mut precedences = Vec::new();
    for expected in 0..n {
        let (no, line) = lines.next().ok_or(InstanceError::InconsistentCounts {
            what: "precedence lines",
            declared: n,
            found: expected,
        })?;
        let f = ints(line, no, "precedence field")?;
        if f.len() < 3 {
            return Err(InstanceError::malformed(no, "precedence line needs id, modes, successor count"));
        }
        if f[0] != expected as i64 {
            return Err(InstanceError::malformed(no, format!("expected activity {expected}, found {}", f[0])));
        }
        if f[1] != 1 {
            return Err(InstanceError::Unsupported(format!("activity {expected} has {} modes", f[1])));
        }
        let count = non_negative(f[2], no, "successor count")? as usize;
        if f.len() != 3 + 2 * count {
            return Err(InstanceError::InconsistentCounts {
                what: "successor and lag fields",
                declared: 2 * count,
                found: f.len() - 3,
            });
        }
        for s in 0..count {
            let to = non_negative(f[3 + s], no, "successor")? as usize;
            if to >= n {
                return Err(InstanceError::malformed(no, format!("successor {to} out of range")));
            }
            precedences.push(PrecedenceArc { from: expected, to, offset: f[3 + count + s] });
        }
    }

    let mut tasks = Vec::with_capacity(n);
    for expected in 0..n {
        let (no, line) = lines.next().ok_or(InstanceError::InconsistentCounts {
            what: "resource lines",
            declared: n,
            found: expected,
        })?;
        let f = ints(line, no, "resource field")?;
        if f.len() != 3 + k {
            return Err(InstanceError::InconsistentCounts {
                what: "activity resource fields",
                declared: 3 + k,
                found: f.len(),
            });
        }
        if f[0] != expected as i64 {
            return Err(InstanceError::malformed(no, format!("expected activity {expected}, found {}", f[0])));
        }
        let duration = non_negative(f[2], no, "duration")?;
        let demands = f[3..]
            .iter()
            .map(|&v| non_negative(v, no, "demand"))
            .collect::<Result<Vec<_>, _>>()?;
        tasks.push(Task { id: expected, duration, demands });
    }

    let (cap_no, cap_line) = lines
        .next()
        .ok_or_else(|| InstanceError::malformed(text.lines().count(), "missing capacity line"))?;
    let caps = ints(cap_line, cap_no, "capacity")?;
    if caps.len() != k {
        return Err(InstanceError::InconsistentCounts {
            what: "capacities",
            declared: k,
            found: caps.len(),
        });
    }
    let resources = caps
        .iter()
        .enumerate()
        .map(|(id, &c)| Ok(Resource { id, capacity: non_negative(c, cap_no, "capacity")? }))
        .collect::<Result<Vec<_>, InstanceError>>()?;
    if let Some((no, _)) = lines.next() {
        log::warn!("ignoring trailing content from line {no}");
    }

    Ok(SchedulingInstance {
        name: String::new(),
        kind: ProblemKind::RcpspMax,
        horizon: None,
        tasks,
        resources,
        precedences,
    })
}
