//! Exact solver for the lifting subproblem
//!
//! ```text
//! max  sum_c w_c x_c
//! s.t. sum_c a_{j,c} x_c <= cap_j   for every row j
//!      x in {0,1}
//! ```
//!
//! by depth-first branch and bound. Variables are branched in order of
//! decreasing `w / max_j a_j`; each node is bounded by the tightest
//! single-row fractional knapsack over the variables that still fit.

use std::cmp::Ordering;

/// One instance of the subproblem; `demands[j][c]` is the use of row `j` by
/// variable `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftingSubproblem {
    pub weights: Vec<u64>,
    pub demands: Vec<Vec<u64>>,
    /// Reduced right-hand sides; negative when the lifted variable alone
    /// overloads a row.
    pub capacities: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubproblemOutcome {
    Optimal {
        value: u64,
        /// Sorted indices of the variables set to one.
        witness: Vec<usize>,
    },
    /// Some capacity is negative, so even the empty selection is infeasible.
    Infeasible,
}

impl SubproblemOutcome {
    pub fn value(&self) -> Option<u64> {
        match self {
            SubproblemOutcome::Optimal { value, .. } => Some(*value),
            SubproblemOutcome::Infeasible => None,
        }
    }
}

impl LiftingSubproblem {
    pub fn num_vars(&self) -> usize {
        self.weights.len()
    }

    /// Whether `selection` (sorted variable indices) respects every row.
    pub fn is_feasible(&self, selection: &[usize]) -> bool {
        self.demands
            .iter()
            .zip(&self.capacities)
            .all(|(row, &cap)| selection.iter().map(|&c| row[c] as i64).sum::<i64>() <= cap)
    }

    pub fn objective(&self, selection: &[usize]) -> u64 {
        selection.iter().map(|&c| self.weights[c]).sum()
    }
}

/// Solves to optimality. The witness is the lexicographically smallest
/// optimal selection of positive-weight variables.
pub fn solve(problem: &LiftingSubproblem) -> SubproblemOutcome {
    match solve_up_to(problem, u64::MAX) {
        SubproblemOutcome::Optimal { value, .. } => {
            SubproblemOutcome::Optimal { value, witness: smallest_witness(problem, value) }
        }
        SubproblemOutcome::Infeasible => SubproblemOutcome::Infeasible,
    }
}

/// Fixes variables in index order, taking each one whenever the optimum is
/// still reachable with it.
fn smallest_witness(problem: &LiftingSubproblem, value: u64) -> Vec<usize> {
    let n = problem.num_vars();
    let mut caps = problem.capacities.clone();
    let mut needed = value;
    let mut witness = Vec::new();
    for c in 0..n {
        if needed == 0 {
            break;
        }
        let w = problem.weights[c];
        if w == 0 || w > needed {
            continue;
        }
        let reduced: Vec<i64> = caps.iter().zip(&problem.demands).map(|(&cap, row)| cap - row[c] as i64).collect();
        if reduced.iter().any(|&r| r < 0) {
            continue;
        }
        let rest = LiftingSubproblem {
            weights: problem.weights[c + 1..].to_vec(),
            demands: problem.demands.iter().map(|row| row[c + 1..].to_vec()).collect(),
            capacities: reduced.clone(),
        };
        let reachable = match solve_up_to(&rest, needed - w) {
            SubproblemOutcome::Optimal { value, .. } => value >= needed - w,
            SubproblemOutcome::Infeasible => false,
        };
        if reachable {
            witness.push(c);
            caps = reduced;
            needed -= w;
        }
    }
    debug_assert_eq!(needed, 0);
    witness
}

/// Like [`solve`], but stops as soon as a selection of value `>= target` is
/// found. The result is exact whenever the optimum is at most `target`; the
/// witness is whichever selection the search met first.
pub fn solve_up_to(problem: &LiftingSubproblem, target: u64) -> SubproblemOutcome {
    if problem.capacities.iter().any(|&c| c < 0) {
        return SubproblemOutcome::Infeasible;
    }
    let caps: Vec<u64> = problem.capacities.iter().map(|&c| c as u64).collect();
    let n = problem.num_vars();
    let m = caps.len();

    // Free variables are always taken; zero-weight and oversized ones never matter.
    let mut base_value = 0u64;
    let mut base_witness = Vec::new();
    let mut vars = Vec::new();
    for c in 0..n {
        let w = problem.weights[c];
        if w == 0 {
            continue;
        }
        if (0..m).any(|j| problem.demands[j][c] > caps[j]) {
            continue;
        }
        if (0..m).all(|j| problem.demands[j][c] == 0) {
            base_value += w;
            base_witness.push(c);
        } else {
            vars.push(c);
        }
    }

    let max_demand = |c: usize| (0..m).map(|j| problem.demands[j][c]).max().unwrap_or(0);
    vars.sort_by(|&x, &y| {
        // w_x / a_x > w_y / a_y  <=>  w_x a_y > w_y a_x
        let lhs = problem.weights[x] as u128 * max_demand(y) as u128;
        let rhs = problem.weights[y] as u128 * max_demand(x) as u128;
        rhs.cmp(&lhs).then(x.cmp(&y))
    });

    let mut search = Search::new(problem, &vars, caps, target.saturating_sub(base_value));
    search.run();

    let mut witness: Vec<usize> = base_witness;
    witness.extend(search.best_set.iter().map(|&p| vars[p]));
    witness.sort_unstable();
    SubproblemOutcome::Optimal { value: base_value + search.best_value, witness }
}

struct Search {
    weights: Vec<u64>,
    /// `demands[j][p]` for branch position `p`.
    demands: Vec<Vec<u64>>,
    /// Per row, branch positions by decreasing `w / a_j`.
    row_order: Vec<Vec<usize>>,
    /// `suffix_weight[p]` is the weight of positions `p..`.
    suffix_weight: Vec<u64>,
    residual: Vec<u64>,
    current: Vec<usize>,
    current_value: u64,
    best_set: Vec<usize>,
    best_value: u64,
    target: u64,
}

impl Search {
    fn new(problem: &LiftingSubproblem, vars: &[usize], caps: Vec<u64>, target: u64) -> Self {
        let weights: Vec<u64> = vars.iter().map(|&c| problem.weights[c]).collect();
        let demands: Vec<Vec<u64>> = problem
            .demands
            .iter()
            .map(|row| vars.iter().map(|&c| row[c]).collect())
            .collect();
        let row_order = demands
            .iter()
            .map(|row: &Vec<u64>| {
                let mut order: Vec<usize> = (0..vars.len()).collect();
                order.sort_by(|&x, &y| ratio_desc(weights[x], row[x], weights[y], row[y]).then(x.cmp(&y)));
                order
            })
            .collect();
        let mut suffix_weight = vec![0u64; vars.len() + 1];
        for p in (0..vars.len()).rev() {
            suffix_weight[p] = suffix_weight[p + 1] + weights[p];
        }
        Search {
            weights,
            demands,
            row_order,
            suffix_weight,
            residual: caps,
            current: Vec::new(),
            current_value: 0,
            best_set: Vec::new(),
            best_value: 0,
            target,
        }
    }

    fn run(&mut self) {
        self.greedy();
        if self.best_value < self.target {
            self.branch(0);
        }
    }

    fn fits(&self, p: usize) -> bool {
        self.demands.iter().zip(&self.residual).all(|(row, &res)| row[p] <= res)
    }

    fn greedy(&mut self) {
        let saved = self.residual.clone();
        let mut chosen = Vec::new();
        let mut value = 0;
        for p in 0..self.weights.len() {
            if self.fits(p) {
                self.take(p);
                chosen.push(p);
                value += self.weights[p];
            }
        }
        self.residual = saved;
        self.best_set = chosen;
        self.best_value = value;
    }

    fn take(&mut self, p: usize) {
        for (row, res) in self.demands.iter().zip(self.residual.iter_mut()) {
            *res -= row[p];
        }
    }

    fn release(&mut self, p: usize) {
        for (row, res) in self.demands.iter().zip(self.residual.iter_mut()) {
            *res += row[p];
        }
    }

    /// Upper bound on the weight still collectable from positions `from..`.
    fn bound(&self, from: usize) -> u64 {
        let mut bound = self.suffix_weight[from];
        if bound == 0 {
            return 0;
        }
        let eligible: Vec<bool> = (0..self.weights.len()).map(|p| p >= from && self.fits(p)).collect();
        let fitting: u64 = (from..self.weights.len()).filter(|&p| eligible[p]).map(|p| self.weights[p]).sum();
        bound = bound.min(fitting);
        for (j, order) in self.row_order.iter().enumerate() {
            let row = &self.demands[j];
            let mut room = self.residual[j];
            // weights sum exactly; the fractional tail is floored at the end
            let mut whole = 0u64;
            let mut frac_num = 0u128;
            let mut frac_den = 1u128;
            for &p in order {
                if !eligible[p] {
                    continue;
                }
                let a = row[p];
                if a <= room {
                    room -= a;
                    whole += self.weights[p];
                } else {
                    frac_num = self.weights[p] as u128 * room as u128;
                    frac_den = a as u128;
                    break;
                }
            }
            let row_bound = whole + (frac_num / frac_den) as u64;
            bound = bound.min(row_bound);
            if bound == 0 {
                break;
            }
        }
        bound
    }

    fn branch(&mut self, from: usize) {
        if self.current_value > self.best_value {
            self.best_value = self.current_value;
            self.best_set = self.current.clone();
        }
        if self.best_value >= self.target || from == self.weights.len() {
            return;
        }
        if self.current_value + self.bound(from) <= self.best_value {
            return;
        }
        for p in from..self.weights.len() {
            if !self.fits(p) {
                continue;
            }
            if self.current_value + self.weights[p] + self.suffix_weight[p + 1] <= self.best_value {
                // later positions carry even less weight
                break;
            }
            self.take(p);
            self.current.push(p);
            self.current_value += self.weights[p];
            self.branch(p + 1);
            self.current_value -= self.weights[p];
            self.current.pop();
            self.release(p);
            if self.best_value >= self.target {
                return;
            }
            if self.current_value + self.bound(p + 1) <= self.best_value {
                return;
            }
        }
    }
}

/// Orders `(w1, a1)` before `(w2, a2)` when `w1 / a1 > w2 / a2`; zero demand
/// counts as an infinite ratio.
fn ratio_desc(w1: u64, a1: u64, w2: u64, a2: u64) -> Ordering {
    let lhs = w1 as u128 * a2 as u128;
    let rhs = w2 as u128 * a1 as u128;
    rhs.cmp(&lhs)
}
