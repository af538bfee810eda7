//! Seed cover generation: short covers (pairs and completed triples) and long
//! uniform-demand covers, followed by capacity-bound ranking.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::instance::DemandSystem;
use crate::poly::Cover;

/// Which rule produced a cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GenerationRule {
    /// A pair exceeding the capacity.
    Binary,
    /// A non-covering pair completed by the longest eligible task.
    Ternary,
    /// The `k` longest tasks of one demand group.
    LongMax,
    /// The `k` shortest tasks of one demand group.
    LongMin,
}

impl GenerationRule {
    pub fn is_short(self) -> bool {
        matches!(self, GenerationRule::Binary | GenerationRule::Ternary)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedCover {
    pub cover: Cover,
    pub rule: GenerationRule,
}

/// Covers without duplicate member sets; the first occurrence wins.
#[derive(Debug, Clone, Default)]
pub struct CoverBatch {
    covers: Vec<TaggedCover>,
    seen: HashSet<Vec<usize>>,
}

impl CoverBatch {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a cover unless its member set is already present. Returns whether
    /// it was added.
    pub fn push(&mut self, cover: Cover, rule: GenerationRule) -> bool {
        if self.seen.contains(&cover.members) {
            return false;
        }
        self.seen.insert(cover.members.clone());
        self.covers.push(TaggedCover { cover, rule });
        true
    }

    pub fn extend(&mut self, other: CoverBatch) {
        for tagged in other.covers {
            self.push(tagged.cover, tagged.rule);
        }
    }

    pub fn covers(&self) -> &[TaggedCover] {
        &self.covers
    }

    pub fn len(&self) -> usize {
        self.covers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covers.is_empty()
    }

    pub fn count(&self, rule: GenerationRule) -> usize {
        self.covers.iter().filter(|c| c.rule == rule).count()
    }

    pub fn into_covers(self) -> Vec<TaggedCover> {
        self.covers
    }
}

/// Longest-task lookup by demand threshold for one row.
///
/// Tasks are sorted by decreasing demand; `best[p]` keeps the three longest
/// tasks (ties to the lower index) among the first `p + 1` of them, so the
/// tasks with demand above any threshold form a prefix.
struct LongestAbove {
    demands_desc: Vec<u64>,
    best: Vec<[Option<usize>; 3]>,
}

impl LongestAbove {
    fn new(row: &[u64], durations: &[u64]) -> Self {
        let mut order: Vec<usize> = (0..row.len()).collect();
        order.sort_by(|&a, &b| row[b].cmp(&row[a]).then(a.cmp(&b)));
        let better = |a: usize, b: usize| durations[a] > durations[b] || durations[a] == durations[b] && a < b;
        let mut best = Vec::with_capacity(order.len());
        let mut top: [Option<usize>; 3] = [None; 3];
        for &k in &order {
            let mut cand = Some(k);
            for slot in top.iter_mut() {
                match (*slot, cand) {
                    (None, c) => {
                        *slot = c;
                        cand = None;
                    }
                    (Some(cur), Some(c)) if better(c, cur) => {
                        *slot = Some(c);
                        cand = Some(cur);
                    }
                    _ => {}
                }
            }
            best.push(top);
        }
        LongestAbove { demands_desc: order.iter().map(|&k| row[k]).collect(), best }
    }

    /// Longest task `k` outside `exclude` with `a_k > threshold`.
    fn query(&self, threshold: u64, exclude: [usize; 2]) -> Option<usize> {
        let count = self.demands_desc.partition_point(|&a| a > threshold);
        if count == 0 {
            return None;
        }
        self.best[count - 1]
            .iter()
            .flatten()
            .copied()
            .find(|k| !exclude.contains(k))
    }
}

/// All covering pairs, and for every non-covering pair `{i, j}` the triple
/// completed by the longest task `k` with `a_k > b - a_i - a_j`.
pub fn enumerate_short_covers(system: &DemandSystem) -> CoverBatch {
    enumerate_short(system, true)
}

/// Only the covering pairs.
pub fn enumerate_binary_covers(system: &DemandSystem) -> CoverBatch {
    enumerate_short(system, false)
}

fn enumerate_short(system: &DemandSystem, ternary: bool) -> CoverBatch {
    let n = system.num_cols();
    let d = system.durations();
    let mut batch = CoverBatch::new();
    for (r, row) in system.rows().iter().enumerate() {
        let b = system.rhs()[r];
        let lookup = ternary.then(|| LongestAbove::new(row, d));
        for i in 0..n {
            for j in i + 1..n {
                let pair = row[i] + row[j];
                if pair > b {
                    batch.push(Cover { members: vec![i, j], source_row: r }, GenerationRule::Binary);
                } else if let Some(lookup) = &lookup {
                    if let Some(k) = lookup.query(b - pair, [i, j]) {
                        batch.push(Cover::new(vec![i, j, k], r), GenerationRule::Ternary);
                    }
                }
            }
        }
    }
    batch
}

/// For each row and demand value `v > 0`, with `k` the least integer such
/// that `k v > b`: the `k` longest and the `k` shortest tasks of demand `v`.
pub fn enumerate_long_covers(system: &DemandSystem) -> CoverBatch {
    let d = system.durations();
    let mut batch = CoverBatch::new();
    for (r, row) in system.rows().iter().enumerate() {
        let b = system.rhs()[r];
        let mut groups: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
        for (i, &a) in row.iter().enumerate() {
            if a > 0 {
                groups.entry(a).or_default().push(i);
            }
        }
        for (v, mut group) in groups {
            let k = (b / v + 1) as usize;
            if group.len() < k {
                continue;
            }
            group.sort_by(|&x, &y| d[y].cmp(&d[x]).then(x.cmp(&y)));
            batch.push(Cover::new(group[..k].to_vec(), r), GenerationRule::LongMax);
            group.sort_by(|&x, &y| d[x].cmp(&d[y]).then(x.cmp(&y)));
            batch.push(Cover::new(group[..k].to_vec(), r), GenerationRule::LongMin);
        }
    }
    batch
}

/// Short covers ranked by descending capacity bound of their cover
/// inequality (stable, so equal bounds keep generation order) and truncated
/// to `limit`; long covers follow in generation order, untruncated.
pub fn select_top_covers(batch: &CoverBatch, durations: &[u64], limit: usize) -> Vec<TaggedCover> {
    let mut short: Vec<&TaggedCover> = batch.covers().iter().filter(|c| c.rule.is_short()).collect();
    short.sort_by_cached_key(|c| std::cmp::Reverse(c.cover.capacity_bound(durations)));
    short.truncate(limit);
    short
        .into_iter()
        .chain(batch.covers().iter().filter(|c| !c.rule.is_short()))
        .cloned()
        .collect()
}
