use super::{InstanceError, SchedulingInstance};

/// Matrix form `A x <= b` of the resource constraints over the tasks that can
/// occupy a resource, plus the shared duration vector.
///
/// Columns are tasks with positive duration and at least one positive demand;
/// `task_map[c]` is the instance task behind column `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemandSystem {
    rows: Vec<Vec<u64>>,
    rhs: Vec<u64>,
    durations: Vec<u64>,
    task_map: Vec<usize>,
}

impl DemandSystem {
    /// Builds a system directly from a matrix, with `task_map` the identity.
    pub fn new(rows: Vec<Vec<u64>>, rhs: Vec<u64>, durations: Vec<u64>) -> Result<Self, InstanceError> {
        let task_map = (0..durations.len()).collect();
        Self::with_task_map(rows, rhs, durations, task_map)
    }

    pub fn with_task_map(
        rows: Vec<Vec<u64>>,
        rhs: Vec<u64>,
        durations: Vec<u64>,
        task_map: Vec<usize>,
    ) -> Result<Self, InstanceError> {
        let n = durations.len();
        if rows.len() != rhs.len() {
            return Err(InstanceError::InconsistentCounts {
                what: "right-hand sides",
                declared: rows.len(),
                found: rhs.len(),
            });
        }
        if task_map.len() != n {
            return Err(InstanceError::InconsistentCounts {
                what: "task map entries",
                declared: n,
                found: task_map.len(),
            });
        }
        for row in &rows {
            if row.len() != n {
                return Err(InstanceError::InconsistentCounts {
                    what: "row entries",
                    declared: n,
                    found: row.len(),
                });
            }
        }
        for col in 0..n {
            if durations[col] == 0 {
                return Err(InstanceError::Invalid(format!("column {col} has zero duration")));
            }
            if rows.iter().all(|row| row[col] == 0) {
                return Err(InstanceError::Invalid(format!("column {col} has no positive demand")));
            }
            for (r, row) in rows.iter().enumerate() {
                if row[col] > rhs[r] {
                    return Err(InstanceError::InfeasibleTask {
                        task: task_map[col],
                        resource: r,
                        demand: row[col],
                        capacity: rhs[r],
                    });
                }
            }
        }
        Ok(DemandSystem { rows, rhs, durations, task_map })
    }

    pub(super) fn from_instance(instance: &SchedulingInstance) -> Result<Self, InstanceError> {
        let task_map: Vec<usize> = instance
            .tasks
            .iter()
            .filter(|t| t.duration > 0 && t.demands.iter().any(|&a| a > 0))
            .map(|t| t.id)
            .collect();
        let rows = instance
            .resources
            .iter()
            .map(|res| task_map.iter().map(|&t| instance.tasks[t].demands[res.id]).collect())
            .collect();
        let rhs = instance.resources.iter().map(|r| r.capacity).collect();
        let durations = task_map.iter().map(|&t| instance.tasks[t].duration).collect();
        Self::with_task_map(rows, rhs, durations, task_map)
    }

    /// Number of rows (resources).
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns (constrained tasks).
    pub fn num_cols(&self) -> usize {
        self.durations.len()
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn rhs(&self) -> &[u64] {
        &self.rhs
    }

    pub fn durations(&self) -> &[u64] {
        &self.durations
    }

    pub fn task_map(&self) -> &[usize] {
        &self.task_map
    }

    /// Demand of column `col` on every row.
    pub fn column(&self, col: usize) -> impl Iterator<Item = u64> + '_ {
        self.rows.iter().map(move |row| row[col])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::EXAMPLE_SM;
    use crate::instance::{parse_instance, InstanceFormat, ProblemKind};

    #[test]
    fn fixture_projects_to_example_row() {
        let inst = parse_instance(EXAMPLE_SM, InstanceFormat::PsplibSm).unwrap();
        let sys = inst.to_demand_system().unwrap();
        assert_eq!(sys.rows(), &[vec![5, 3, 2, 4]]);
        assert_eq!(sys.rhs(), &[7]);
        assert_eq!(sys.durations(), &[1, 1, 1, 2]);
        assert_eq!(sys.task_map(), &[1, 2, 3, 4]);
    }

    #[test]
    fn zero_demand_tasks_give_empty_system() {
        let inst = SchedulingInstance::new(
            "idle",
            ProblemKind::Rcpsp,
            vec![3, 4],
            vec![vec![0, 0], vec![0, 0]],
            vec![5, 5],
            vec![],
        )
        .unwrap();
        let sys = inst.to_demand_system().unwrap();
        assert_eq!(sys.num_cols(), 0);
        assert_eq!(sys.num_rows(), 2);
    }

    #[test]
    fn overloaded_task_is_infeasible() {
        let inst = SchedulingInstance::new("over", ProblemKind::Rcpsp, vec![1], vec![vec![9]], vec![7], vec![]).unwrap();
        assert_eq!(
            inst.to_demand_system(),
            Err(InstanceError::InfeasibleTask { task: 0, resource: 0, demand: 9, capacity: 7 })
        );
    }

    #[test]
    fn zero_duration_overload_is_dropped() {
        let inst = SchedulingInstance::new("dummy", ProblemKind::Rcpsp, vec![0, 2], vec![vec![9], vec![3]], vec![7], vec![])
            .unwrap();
        let sys = inst.to_demand_system().unwrap();
        assert_eq!(sys.task_map(), &[1]);
    }
}
