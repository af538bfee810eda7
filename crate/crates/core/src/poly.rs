//! Inequalities over occupancy vectors, covers, capacity bounds, dominance,
//! and the brute-force oracles used to certify them at small scale.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::DemandSystem;

/// Default variable limit for [`check_validity_bruteforce`].
pub const BRUTEFORCE_LIMIT: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("capacity bound undefined for a zero right-hand side")]
    ZeroCapacity,
    #[error("brute-force check over {n} variables exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("span of an empty support set")]
    EmptySupport,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
}

/// `coeffs · x <= rhs` over 0/1 points; read as a cumulative constraint with
/// usages `coeffs` and capacity `rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LiftedInequality {
    pub coeffs: Vec<u64>,
    pub rhs: u64,
}

impl LiftedInequality {
    pub fn new(coeffs: Vec<u64>, rhs: u64) -> Self {
        LiftedInequality { coeffs, rhs }
    }

    /// `x(C) <= |C| - 1` over `n` variables.
    pub fn cover_inequality(members: &[usize], n: usize) -> Self {
        let mut coeffs = vec![0; n];
        for &i in members {
            coeffs[i] = 1;
        }
        LiftedInequality { coeffs, rhs: members.len().saturating_sub(1) as u64 }
    }

    /// Row `r` of the system viewed as an inequality.
    pub fn from_row(system: &DemandSystem, r: usize) -> Self {
        LiftedInequality { coeffs: system.row(r).to_vec(), rhs: system.rhs()[r] }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Columns with a positive coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Capacity 1 with 0/1 usages.
    pub fn is_disjunctive(&self) -> bool {
        self.rhs == 1 && self.coeffs.iter().all(|&c| c <= 1)
    }

    pub fn lhs(&self, point: &[bool]) -> u64 {
        self.coeffs
            .iter()
            .zip(point)
            .filter(|(_, &x)| x)
            .map(|(&c, _)| c)
            .sum()
    }
}

/// A set of columns whose summed demand on `source_row` exceeds its capacity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cover {
    /// Strictly increasing column indices.
    pub members: Vec<usize>,
    pub source_row: usize,
}

impl Cover {
    pub fn new(mut members: Vec<usize>, source_row: usize) -> Self {
        members.sort_unstable();
        members.dedup();
        Cover { members, source_row }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn inequality(&self, n: usize) -> LiftedInequality {
        LiftedInequality::cover_inequality(&self.members, n)
    }

    /// Capacity bound of the cover inequality.
    pub fn capacity_bound(&self, durations: &[u64]) -> Ratio<u64> {
        let usage: u64 = self.members.iter().map(|&i| durations[i]).sum();
        Ratio::new(usage, self.members.len() as u64 - 1)
    }

    /// Whether this is a cover of `system`'s source row with at least two members.
    pub fn is_valid_for(&self, system: &DemandSystem) -> bool {
        self.members.len() >= 2
            && self.source_row < system.num_rows()
            && self.members.windows(2).all(|w| w[0] < w[1])
            && self.members.last().is_some_and(|&m| m < system.num_cols())
            && is_cover(&self.members, system.row(self.source_row), system.rhs()[self.source_row])
    }
}

/// Start times, one per constrained task.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub starts: Vec<i64>,
}

impl Schedule {
    pub fn new(starts: Vec<i64>) -> Self {
        Schedule { starts }
    }
}

pub fn is_cover(members: &[usize], row: &[u64], rhs: u64) -> bool {
    members.iter().map(|&i| row[i]).sum::<u64>() > rhs
}

/// `sum_i d_i pi_i / pi_0`, exact.
pub fn capacity_bound(ineq: &LiftedInequality, durations: &[u64]) -> Result<Ratio<u64>, PolyError> {
    if ineq.rhs == 0 {
        return Err(PolyError::ZeroCapacity);
    }
    if durations.len() != ineq.len() {
        return Err(PolyError::Dimension { expected: ineq.len(), found: durations.len() });
    }
    let usage: u64 = ineq.coeffs.iter().zip(durations).map(|(&c, &d)| c * d).sum();
    Ok(Ratio::new(usage, ineq.rhs))
}

/// Smallest integer span any schedule satisfying `ineq` can have over the
/// support of `ineq`.
pub fn capacity_lb(ineq: &LiftedInequality, durations: &[u64]) -> Result<u64, PolyError> {
    Ok(capacity_bound(ineq, durations)?.ceil().to_integer())
}

/// True iff some row `r` has `a_r >= pi` componentwise and `b_r <= pi_0`,
/// so the inequality is implied by the model.
pub fn is_dominated(ineq: &LiftedInequality, system: &DemandSystem) -> bool {
    system.rows().iter().zip(system.rhs()).any(|(row, &b)| {
        b <= ineq.rhs && row.iter().zip(&ineq.coeffs).all(|(&a, &p)| p <= a)
    })
}

/// Outcome of a brute-force validity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Valid,
    /// A feasible 0/1 point violating the inequality.
    Violated(Vec<bool>),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// Enumerates every `y in {0,1}^n` with `A y <= b` and checks `pi y <= pi_0`.
///
/// Walks the points in Gray-code order so each step updates the row sums in
/// `O(m)`.
pub fn check_validity_bruteforce(
    ineq: &LiftedInequality,
    system: &DemandSystem,
    limit: usize,
) -> Result<Validity, PolyError> {
    let n = system.num_cols();
    if ineq.len() != n {
        return Err(PolyError::Dimension { expected: n, found: ineq.len() });
    }
    if n > limit {
        return Err(PolyError::TooLarge { n, limit });
    }
    let rows = system.rows();
    let rhs = system.rhs();
    let mut point = vec![false; n];
    let mut loads = vec![0u64; rows.len()];
    let mut value = 0u64;
    let feasible = |loads: &[u64]| loads.iter().zip(rhs).all(|(l, b)| l <= b);
    // the zero point is always feasible
    if value > ineq.rhs {
        return Ok(Validity::Violated(point));
    }
    for step in 1u64..(1u64 << n) {
        let bit = step.trailing_zeros() as usize;
        let on = !point[bit];
        point[bit] = on;
        for (load, row) in loads.iter_mut().zip(rows) {
            if on {
                *load += row[bit];
            } else {
                *load -= row[bit];
            }
        }
        if on {
            value += ineq.coeffs[bit];
        } else {
            value -= ineq.coeffs[bit];
        }
        if value > ineq.rhs && feasible(&loads) {
            return Ok(Validity::Violated(point));
        }
    }
    Ok(Validity::Valid)
}

/// A time point where a cumulative constraint is overloaded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overload {
    pub time: i64,
    pub usage: u64,
}

/// Checks the cumulative constraint `(starts, coeffs, durations, rhs)`.
///
/// Usage is piecewise constant between interval endpoints, so only those are
/// scanned. Returns the earliest overloaded point.
pub fn check_cumulative(
    schedule: &Schedule,
    ineq: &LiftedInequality,
    durations: &[u64],
) -> Result<(), Overload> {
    let active: Vec<(i64, i64, u64)> = schedule
        .starts
        .iter()
        .zip(durations)
        .zip(&ineq.coeffs)
        .filter(|((_, &d), &c)| d > 0 && c > 0)
        .map(|((&s, &d), &c)| (s, s + d as i64, c))
        .collect();
    let mut points: Vec<i64> = active.iter().flat_map(|&(s, e, _)| [s, e]).collect();
    points.sort_unstable();
    points.dedup();
    for tau in points {
        let usage: u64 = active
            .iter()
            .filter(|&&(s, e, _)| s <= tau && tau < e)
            .map(|&(_, _, c)| c)
            .sum();
        if usage > ineq.rhs {
            return Err(Overload { time: tau, usage });
        }
    }
    Ok(())
}

/// `max (x_i + d_i) - min x_i` over `support`.
pub fn span(schedule: &Schedule, durations: &[u64], support: &[usize]) -> Result<u64, PolyError> {
    let start = support.iter().map(|&i| schedule.starts[i]).min().ok_or(PolyError::EmptySupport)?;
    let finish = support
        .iter()
        .map(|&i| schedule.starts[i] + durations[i] as i64)
        .max()
        .ok_or(PolyError::EmptySupport)?;
    Ok((finish - start) as u64)
}
