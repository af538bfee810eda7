//! PSPLIB single-mode `.sm` reader.

use log::warn;

use super::{
    finish_start_arcs, non_negative, parse_int, InstanceError, ProblemKind, Resource,
    SchedulingInstance, Task,
};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Header,
    Precedence,
    Requests,
    Availabilities,
    Skipped,
}

struct JobLine {
    line: usize,
    fields: Vec<i64>,
}

pub(super) fn parse(text: &str) -> Result<SchedulingInstance, InstanceError> {
    let mut name = String::new();
    let mut declared_jobs: Option<usize> = None;
    let mut horizon: Option<u64> = None;
    let mut renewable: Option<usize> = None;
    let mut nonrenewable = 0usize;
    let mut doubly = 0usize;

    let mut precedence_rows: Vec<JobLine> = Vec::new();
    let mut request_rows: Vec<JobLine> = Vec::new();
    let mut availability: Option<(usize, Vec<i64>)> = None;

    let mut section = Section::Header;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('*') || line.starts_with('-') && line.chars().all(|c| c == '-') {
            continue;
        }
        let upper = line.to_ascii_uppercase();
        if upper.starts_with("PRECEDENCE RELATIONS") {
            section = Section::Precedence;
            continue;
        }
        if upper.starts_with("REQUESTS/DURATIONS") {
            section = Section::Requests;
            continue;
        }
        if upper.starts_with("RESOURCEAVAILABILITIES") {
            section = Section::Availabilities;
            continue;
        }
        if upper.starts_with("PROJECT INFORMATION") {
            section = Section::Skipped;
            continue;
        }
        if upper.ends_with(':') && !upper.contains(' ') || is_unknown_header(&upper, section) {
            warn!("ignoring unknown section `{line}` at line {line_no}");
            section = Section::Skipped;
            continue;
        }

        match section {
            Section::Header => {
                let Some((key, value)) = line.split_once(':') else {
                    if upper == "RESOURCES" {
                        continue;
                    }
                    return Err(InstanceError::malformed(line_no, format!("unexpected line `{line}`")));
                };
                let key = key.trim().to_ascii_lowercase();
                let first = value.split_whitespace().next();
                let number = |what: &'static str| -> Result<i64, InstanceError> {
                    let tok = first.ok_or_else(|| InstanceError::malformed(line_no, format!("missing {what}")))?;
                    parse_int(tok, line_no, what)
                };
                if key.starts_with("file with basedata") {
                    name = value.trim().trim_end_matches(".bas").to_string();
                } else if key.starts_with("jobs") {
                    declared_jobs = Some(non_negative(number("job count")?, line_no, "job count")? as usize);
                } else if key.starts_with("horizon") {
                    horizon = Some(non_negative(number("horizon")?, line_no, "horizon")?);
                } else if key.ends_with("nonrenewable") {
                    nonrenewable = non_negative(number("resource count")?, line_no, "resource count")? as usize;
                } else if key.ends_with("doubly constrained") {
                    doubly = non_negative(number("resource count")?, line_no, "resource count")? as usize;
                } else if key.ends_with("renewable") {
                    renewable = Some(non_negative(number("resource count")?, line_no, "resource count")? as usize);
                }
            }
            Section::Precedence | Section::Requests => {
                if line.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
                    // column header
                    continue;
                }
                let fields = line
                    .split_whitespace()
                    .map(|tok| parse_int(tok, line_no, "job field"))
                    .collect::<Result<Vec<_>, _>>()?;
                let row = JobLine { line: line_no, fields };
                if section == Section::Precedence {
                    precedence_rows.push(row);
                } else {
                    request_rows.push(row);
                }
            }
            Section::Availabilities => {
                if line.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
                    continue;
                }
                if availability.is_some() {
                    return Err(InstanceError::malformed(line_no, "second availability line"));
                }
                let values = line
                    .split_whitespace()
                    .map(|tok| parse_int(tok, line_no, "capacity"))
                    .collect::<Result<Vec<_>, _>>()?;
                availability = Some((line_no, values));
            }
            Section::Skipped => {}
        }
    }

    let renewable = renewable.ok_or_else(|| InstanceError::malformed(1, "missing renewable resource count"))?;
    let columns = renewable + nonrenewable + doubly;
    if nonrenewable + doubly > 0 {
        warn!("dropping {} non-renewable resource column(s)", nonrenewable + doubly);
    }
    let n = precedence_rows.len();
    if let Some(declared) = declared_jobs {
        if declared != n {
            return Err(InstanceError::InconsistentCounts {
                what: "jobs in precedence section",
                declared,
                found: n,
            });
        }
    }
    if request_rows.len() != n {
        return Err(InstanceError::InconsistentCounts {
            what: "jobs in request section",
            declared: n,
            found: request_rows.len(),
        });
    }

    let mut successors = vec![Vec::new(); n];
    for (pos, row) in precedence_rows.iter().enumerate() {
        let f = &row.fields;
        if f.len() < 3 {
            return Err(InstanceError::malformed(row.line, "precedence line needs job, modes, successor count"));
        }
        check_job_number(f[0], pos, row.line)?;
        if f[1] != 1 {
            return Err(InstanceError::Unsupported(format!("job {} has {} modes", f[0], f[1])));
        }
        let count = non_negative(f[2], row.line, "successor count")? as usize;
        if f.len() - 3 != count {
            return Err(InstanceError::InconsistentCounts {
                what: "successors",
                declared: count,
                found: f.len() - 3,
            });
        }
        for &succ in &f[3..] {
            let succ = non_negative(succ, row.line, "successor")? as usize;
            if succ == 0 || succ > n {
                return Err(InstanceError::malformed(row.line, format!("successor {succ} out of range")));
            }
            successors[pos].push(succ - 1);
        }
    }

    let mut tasks = Vec::with_capacity(n);
    for (pos, row) in request_rows.iter().enumerate() {
        let f = &row.fields;
        if f.len() != 3 + columns {
            return Err(InstanceError::InconsistentCounts {
                what: "request fields",
                declared: 3 + columns,
                found: f.len(),
            });
        }
        check_job_number(f[0], pos, row.line)?;
        let duration = non_negative(f[2], row.line, "duration")?;
        let demands = f[3..3 + renewable]
            .iter()
            .map(|&v| non_negative(v, row.line, "demand"))
            .collect::<Result<Vec<_>, _>>()?;
        tasks.push(Task { id: pos, duration, demands });
    }

    let (line, values) = availability.ok_or_else(|| InstanceError::malformed(text.lines().count(), "missing resource availabilities"))?;
    if values.len() != columns {
        return Err(InstanceError::InconsistentCounts {
            what: "resource availabilities",
            declared: columns,
            found: values.len(),
        });
    }
    let resources = values[..renewable]
        .iter()
        .enumerate()
        .map(|(id, &v)| Ok(Resource { id, capacity: non_negative(v, line, "capacity")? }))
        .collect::<Result<Vec<_>, InstanceError>>()?;

    let durations: Vec<u64> = tasks.iter().map(|t| t.duration).collect();
    Ok(SchedulingInstance {
        name,
        kind: ProblemKind::Rcpsp,
        horizon,
        precedences: finish_start_arcs(&durations, &successors),
        tasks,
        resources,
    })
}

fn is_unknown_header(upper: &str, section: Section) -> bool {
    // Section titles in PSPLIB are upper-case words terminated by a colon.
    section != Section::Header
        && upper.ends_with(':')
        && upper.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
}

fn check_job_number(value: i64, pos: usize, line: usize) -> Result<(), InstanceError> {
    if value != pos as i64 + 1 {
        return Err(InstanceError::malformed(line, format!("expected job {}, found {value}", pos + 1)));
    }
    Ok(())
}
