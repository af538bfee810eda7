//! Naive enumeration oracles and random instance generators shared by the
//! integration tests.

#![allow(dead_code)]

use cumlift::{Cover, DemandSystem, LiftedInequality, LiftingSubproblem};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Random system with every demand fitting its row and no all-zero column.
pub fn random_system(rng: &mut ChaCha8Rng, n: usize, m: usize, max_cap: u64, max_dur: u64) -> DemandSystem {
    let rhs: Vec<u64> = (0..m).map(|_| rng.gen_range(1..=max_cap)).collect();
    let mut rows: Vec<Vec<u64>> = rhs.iter().map(|&b| (0..n).map(|_| rng.gen_range(0..=b)).collect()).collect();
    for c in 0..n {
        if rows.iter().all(|row| row[c] == 0) {
            let r = rng.gen_range(0..m);
            rows[r][c] = rng.gen_range(1..=rhs[r]);
        }
    }
    let durations = (0..n).map(|_| rng.gen_range(1..=max_dur)).collect();
    DemandSystem::new(rows, rhs, durations).expect("generated system is well formed")
}

/// Every 0/1 point of the system as a bitmask.
pub fn feasible_masks(system: &DemandSystem) -> Vec<u32> {
    let n = system.num_cols();
    (0u32..1 << n)
        .filter(|&mask| {
            system.rows().iter().zip(system.rhs()).all(|(row, &b)| {
                (0..n).filter(|&c| mask >> c & 1 == 1).map(|c| row[c]).sum::<u64>() <= b
            })
        })
        .collect()
}

pub fn value(coeffs: &[u64], mask: u32) -> u64 {
    coeffs.iter().enumerate().filter(|(c, _)| mask >> c & 1 == 1).map(|(_, &w)| w).sum()
}

/// Whether `ineq` holds on every feasible point.
pub fn naive_valid(ineq: &LiftedInequality, system: &DemandSystem) -> bool {
    feasible_masks(system).into_iter().all(|mask| value(&ineq.coeffs, mask) <= ineq.rhs)
}

/// Optimum of the subproblem by enumeration; `None` when infeasible.
pub fn brute_subproblem(sub: &LiftingSubproblem) -> Option<u64> {
    if sub.capacities.iter().any(|&c| c < 0) {
        return None;
    }
    let n = sub.weights.len();
    let mut best = 0;
    for mask in 0u32..1 << n {
        let fits = sub.demands.iter().zip(&sub.capacities).all(|(row, &cap)| {
            (0..n).filter(|&c| mask >> c & 1 == 1).map(|c| row[c] as i64).sum::<i64>() <= cap
        });
        if fits {
            best = best.max(value(&sub.weights, mask));
        }
    }
    Some(best)
}

/// Sequential lifting computed directly over the enumerated feasible points:
/// the coefficient of `i` is `rhs` minus the best value of the current
/// inequality over points with `x_i = 1` and all unlifted columns at zero.
pub fn brute_lift(cover: &Cover, system: &DemandSystem) -> LiftedInequality {
    let n = system.num_cols();
    let d = system.durations();
    let rhs = cover.len() as u64 - 1;
    let mut coeffs = vec![0u64; n];
    let mut fixed = 0u32;
    for &c in &cover.members {
        coeffs[c] = 1;
        fixed |= 1 << c;
    }
    let mut order: Vec<usize> = (0..n).filter(|&c| fixed >> c & 1 == 0).collect();
    order.sort_by_key(|&c| (d[c], c));
    let points = feasible_masks(system);
    for i in order {
        let best = points
            .iter()
            .filter(|&&mask| mask >> i & 1 == 1 && mask & !(fixed | 1 << i) == 0)
            .map(|&mask| value(&coeffs, mask))
            .max();
        coeffs[i] = match best {
            Some(v) => rhs.saturating_sub(v),
            None => rhs,
        };
        fixed |= 1 << i;
    }
    LiftedInequality::new(coeffs, rhs)
}
