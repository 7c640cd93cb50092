//! Exhaustive constellation search.
//!
//! Branch partitions are reordered before searching: the partition with the
//! largest conjugacy class goes first and its permutation is pinned to the
//! canonical representative (simultaneous conjugation preserves every
//! certificate invariant). The partition with the next largest class goes
//! last; its permutation is never enumerated but computed as the inverse of
//! the running product. The remaining classes are enumerated smallest first.
//! Any order of the partitions is admissible, because braid moves
//! `(σ_i, σ_{i+1}) -> (σ_{i+1}, σ_{i+1}⁻¹ σ_i σ_{i+1})` permute cycle types
//! while keeping the product and the generated group.

use std::time::{Duration, Instant};

use crate::partition::Partition;
use crate::perm::{compose_into, cycle_lengths, invert_into, Orbits, Permutation};
use crate::triplet::BranchTriplet;

use super::certificate::MonodromyCertificate;

/// Search limits. Exceeding either yields [`Verdict::Undecided`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_time: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_nodes: 100_000_000,
            max_time: Duration::from_secs(60),
        }
    }
}

/// Switches for the two search reductions, so each can be checked against
/// the plain search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Pin the first permutation to its canonical class representative.
    pub fix_first: bool,
    /// Cut partial tuples whose remaining permutations cannot connect the
    /// current orbits.
    pub prune_connectivity: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            fix_first: true,
            prune_connectivity: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    /// Candidate permutations tried across all enumerated positions.
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Realizable(MonodromyCertificate),
    /// The search space was exhausted.
    NotRealizable,
    /// The budget ran out first.
    Undecided,
}

impl Verdict {
    pub fn certificate(&self) -> Option<&MonodromyCertificate> {
        match self {
            Verdict::Realizable(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_realizable(&self) -> bool {
        matches!(self, Verdict::Realizable(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub stats: SearchStats,
}

pub(super) fn run(triplet: &BranchTriplet, budget: &Budget, options: SearchOptions) -> Decision {
    let start = Instant::now();
    let mut search = Search::new(triplet, budget, options, start);
    let verdict = match search.descend(0) {
        Step::Found => Verdict::Realizable(search.certificate()),
        Step::Exhausted => Verdict::NotRealizable,
        Step::Aborted => Verdict::Undecided,
    };
    Decision {
        verdict,
        stats: SearchStats {
            nodes: search.nodes,
            elapsed: start.elapsed(),
        },
    }
}

enum Step {
    Found,
    Exhausted,
    Aborted,
}

struct Search<'a> {
    degree: usize,
    /// Candidate images for each enumerated position.
    levels: Vec<Vec<Permutation>>,
    /// Cycle type required of the computed last permutation.
    forced: Option<Partition>,
    /// `slack[k]`: upper bound on orbit merges available after position `k`.
    slack: Vec<usize>,
    products: Vec<Vec<usize>>,
    orbits: Vec<Orbits>,
    chosen: Vec<usize>,
    last: Vec<usize>,
    nodes: u64,
    budget: &'a Budget,
    start: Instant,
    options: SearchOptions,
}

impl<'a> Search<'a> {
    fn new(
        triplet: &BranchTriplet,
        budget: &'a Budget,
        options: SearchOptions,
        start: Instant,
    ) -> Self {
        let degree = triplet.degree();
        let mut order: Vec<&Partition> = triplet.partitions().iter().collect();
        order.sort_by(|a, b| b.class_size().cmp(&a.class_size()).then(b.cmp(a)));

        let first = order[0];
        let forced = order.get(1).map(|p| (*p).clone());
        let mut middle: Vec<&Partition> = order.iter().skip(2).copied().collect();
        middle.sort_by(|a, b| a.class_size().cmp(&b.class_size()).then(b.cmp(a)));

        let mut levels = Vec::with_capacity(1 + middle.len());
        levels.push(if options.fix_first {
            vec![Permutation::canonical_of_type(first)]
        } else {
            Permutation::enumerate_of_type(first)
        });
        let mut merges = vec![degree - first.len()];
        for p in middle {
            levels.push(Permutation::enumerate_of_type(p));
            merges.push(degree - p.len());
        }
        let forced_merges = forced.as_ref().map_or(0, |p| degree - p.len());

        let mut slack = vec![0; levels.len()];
        let mut acc = forced_merges;
        for k in (0..levels.len()).rev() {
            slack[k] = acc;
            acc += merges[k];
        }

        let depth = levels.len();
        Self {
            degree,
            levels,
            forced,
            slack,
            products: vec![vec![0; degree]; depth],
            orbits: vec![Orbits::new(degree); depth],
            chosen: vec![0; depth],
            last: vec![0; degree],
            nodes: 0,
            budget,
            start,
            options,
        }
    }

    fn over_budget(&self) -> bool {
        self.nodes > self.budget.max_nodes
            || (self.nodes.is_multiple_of(1024) && self.start.elapsed() > self.budget.max_time)
    }

    fn descend(&mut self, k: usize) -> Step {
        if k == self.levels.len() {
            return if self.close() {
                Step::Found
            } else {
                Step::Exhausted
            };
        }
        for idx in 0..self.levels[k].len() {
            self.nodes += 1;
            if self.over_budget() {
                return Step::Aborted;
            }
            let (done, rest) = self.products.split_at_mut(k);
            let perm = self.levels[k][idx].raw();
            match done.last() {
                Some(prev) => compose_into(prev, perm, &mut rest[0]),
                None => rest[0].copy_from_slice(perm),
            }
            let (done, rest) = self.orbits.split_at_mut(k);
            match done.last() {
                Some(prev) => rest[0].copy_from(prev),
                None => rest[0].reset(),
            }
            rest[0].absorb(perm);
            if self.options.prune_connectivity && rest[0].count() - 1 > self.slack[k] {
                continue;
            }
            self.chosen[k] = idx;
            match self.descend(k + 1) {
                Step::Exhausted => {}
                other => return other,
            }
        }
        Step::Exhausted
    }

    /// Completes the tuple with the forced last permutation, if any.
    fn close(&mut self) -> bool {
        let top = self.levels.len() - 1;
        match &self.forced {
            None => {
                self.orbits[top].count() == 1
                    && self.products[top].iter().enumerate().all(|(i, &x)| i == x)
            }
            Some(target) => {
                invert_into(&self.products[top], &mut self.last);
                if cycle_lengths(&self.last) != target.parts() {
                    return false;
                }
                let mut orbits = self.orbits[top].clone();
                orbits.absorb(&self.last);
                orbits.count() == 1
            }
        }
    }

    fn certificate(&self) -> MonodromyCertificate {
        let mut perms: Vec<Permutation> = self
            .chosen
            .iter()
            .enumerate()
            .map(|(k, &idx)| self.levels[k][idx].clone())
            .collect();
        if self.forced.is_some() {
            perms.push(Permutation::from_raw(self.last.clone()));
        }
        MonodromyCertificate::new(self.degree, perms).expect("search keeps degrees uniform")
    }
}
