//! Exhaustive minimum-cover search over a full candidate space, plus the
//! set-system machinery shared with the greedy builder.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::balls::{for_each_insertion_rank, Direction};
use crate::bounds::{generalized_weighted_bound_exact, BoundReport};
use crate::code::Code;
use crate::error::{Error, Result};
use crate::par;
use crate::space::WordSpace;
use crate::verify::ensure_covering;
use crate::word::{unrank_into, Alphabet};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Every word of `Σ_q^n` as a candidate codeword, with the target words of
/// `Σ_q^{n±R}` it covers.
pub(crate) struct SetSystem {
    pub candidates: WordSpace,
    /// `covers[c]`: sorted target ranks covered by candidate `c`.
    pub covers: Vec<Vec<u32>>,
    /// `covered_by[t]`: sorted candidate ranks covering target `t`.
    pub covered_by: Vec<Vec<u32>>,
}

impl SetSystem {
    pub fn build(alphabet: Alphabet, n: usize, radius: usize, direction: Direction) -> Result<Self> {
        let target_len = direction
            .target_len(n, radius)
            .ok_or(Error::RadiusTooLarge { radius, len: n })?;
        let candidates = WordSpace::new(alphabet, n)?;
        let targets = WordSpace::new(alphabet, target_len)?;
        if candidates.size() > u32::MAX as u64 || targets.size() > u32::MAX as u64 {
            return Err(Error::BudgetExceeded {
                requested: candidates.size().max(targets.size()) as u128,
                cap: u32::MAX as u64,
            });
        }
        let q = alphabet.size();
        // every ball is enumerated from the smaller-length side
        let mut covers = vec![Vec::new(); candidates.size() as usize];
        let mut covered_by = vec![Vec::new(); targets.size() as usize];
        let short = match direction {
            Direction::Insertion => candidates,
            Direction::Deletion => targets,
        };
        let lists: Vec<Vec<(u32, u32)>> = par::map_chunks(short.size(), |range| {
            let mut w = vec![0u8; short.word_len()];
            let mut pairs = Vec::new();
            for s in range {
                unrank_into(s, q, &mut w);
                for_each_insertion_rank(&w, q, radius, &mut |l| {
                    pairs.push((s as u32, l as u32));
                    true
                });
            }
            pairs
        });
        for (s, l) in lists.into_iter().flatten() {
            let (c, t) = match direction {
                Direction::Insertion => (s, l),
                Direction::Deletion => (l, s),
            };
            covers[c as usize].push(t);
            covered_by[t as usize].push(c);
        }
        for v in covers.iter_mut().chain(covered_by.iter_mut()) {
            v.sort_unstable();
        }
        Ok(SetSystem {
            candidates,
            covers,
            covered_by,
        })
    }

    /// Greedy set cover: repeatedly take the candidate covering the most
    /// uncovered targets, smallest rank first on ties.
    pub fn greedy(&self) -> Vec<u32> {
        let mut covered = vec![false; self.covered_by.len()];
        let mut remaining = covered.len();
        let mut heap: BinaryHeap<(usize, Reverse<u32>)> = self
            .covers
            .iter()
            .enumerate()
            .map(|(c, t)| (t.len(), Reverse(c as u32)))
            .collect();
        let mut chosen = Vec::new();
        while remaining > 0 {
            let Some((stored, Reverse(c))) = heap.pop() else {
                break;
            };
            let fresh = self.covers[c as usize]
                .iter()
                .filter(|&&t| !covered[t as usize])
                .count();
            if fresh == 0 {
                continue;
            }
            if fresh < stored {
                heap.push((fresh, Reverse(c)));
                continue;
            }
            for &t in &self.covers[c as usize] {
                if !covered[t as usize] {
                    covered[t as usize] = true;
                    remaining -= 1;
                }
            }
            chosen.push(c);
        }
        chosen.sort_unstable();
        chosen
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimumCertificate {
    /// The exact minimum size.
    pub k: usize,
    pub optimal_code: Code,
    pub lower_bound_used: BoundReport,
    pub search_nodes: u64,
}

/// Best known interval when the node budget runs out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchInterval {
    pub lower: usize,
    pub upper: usize,
    pub best_code: Code,
    pub lower_bound_used: BoundReport,
    pub search_nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Optimal(OptimumCertificate),
    BudgetExhausted(SearchInterval),
}

impl SearchOutcome {
    pub fn certificate(&self) -> Option<&OptimumCertificate> {
        match self {
            SearchOutcome::Optimal(c) => Some(c),
            SearchOutcome::BudgetExhausted(_) => None,
        }
    }
}

/// Exact `K_I^q(n, R)` or `K_D^q(n, R)` by branch and bound.
///
/// The search branches on the uncovered target with the fewest remaining
/// candidates (a target with a single candidate forces it), trying
/// candidates by descending fresh coverage. Nodes are pruned with the
/// weighted covering bound restricted to the still-uncovered targets. The
/// greedy cover seeds the upper bound.
pub fn min_cover_exact(
    q: u32,
    n: usize,
    radius: usize,
    direction: Direction,
    node_budget: u64,
) -> Result<SearchOutcome> {
    let alphabet = Alphabet::new(q)?;
    let system = SetSystem::build(alphabet, n, radius, direction)?;
    let lower_bound_used = generalized_weighted_bound_exact(q, n, radius, direction)?;
    let root_lb = lower_bound_used.ceiling.to_usize().unwrap_or(usize::MAX);

    let greedy = system.greedy();
    let mut bb = BranchAndBound::new(&system, node_budget, greedy);
    let exhausted = if bb.best.len() > root_lb {
        !bb.run()
    } else {
        false
    };
    let code = Code::from_ranks(&system.candidates, bb.best.iter().map(|&c| c as u64));
    ensure_covering(&code, radius, direction)?;
    Ok(if exhausted {
        SearchOutcome::BudgetExhausted(SearchInterval {
            lower: root_lb,
            upper: code.len(),
            best_code: code,
            lower_bound_used,
            search_nodes: bb.nodes,
        })
    } else {
        SearchOutcome::Optimal(OptimumCertificate {
            k: code.len(),
            optimal_code: code,
            lower_bound_used,
            search_nodes: bb.nodes,
        })
    })
}

struct BranchAndBound<'a> {
    sys: &'a SetSystem,
    budget: u64,
    nodes: u64,
    best: Vec<u32>,
    chosen: Vec<u32>,
    /// how many chosen candidates cover each target
    cover_count: Vec<u32>,
    excluded: Vec<bool>,
    uncovered: usize,
}

impl<'a> BranchAndBound<'a> {
    fn new(sys: &'a SetSystem, budget: u64, initial: Vec<u32>) -> Self {
        BranchAndBound {
            sys,
            budget,
            nodes: 0,
            best: initial,
            chosen: Vec::new(),
            cover_count: vec![0; sys.covered_by.len()],
            excluded: vec![false; sys.covers.len()],
            uncovered: sys.covered_by.len(),
        }
    }

    /// Returns `false` if the node budget ran out.
    fn run(&mut self) -> bool {
        self.dfs()
    }

    fn fresh(&self, c: u32) -> usize {
        self.sys.covers[c as usize]
            .iter()
            .filter(|&&t| self.cover_count[t as usize] == 0)
            .count()
    }

    fn take(&mut self, c: u32) {
        for &t in &self.sys.covers[c as usize] {
            if self.cover_count[t as usize] == 0 {
                self.uncovered -= 1;
            }
            self.cover_count[t as usize] += 1;
        }
        self.chosen.push(c);
    }

    fn untake(&mut self, c: u32) {
        self.chosen.pop();
        for &t in &self.sys.covers[c as usize] {
            self.cover_count[t as usize] -= 1;
            if self.cover_count[t as usize] == 0 {
                self.uncovered += 1;
            }
        }
    }

    /// Weighted bound on the number of further candidates needed, or `None`
    /// if some uncovered target has no available candidate. Also returns the
    /// branching target: fewest available candidates, smallest rank.
    fn bound_and_pivot(&self) -> Option<(usize, u32)> {
        let fresh: Vec<usize> = (0..self.sys.covers.len() as u32)
            .map(|c| if self.excluded[c as usize] { 0 } else { self.fresh(c) })
            .collect();
        let mut hist: Vec<u64> = Vec::new();
        let mut pivot: Option<(usize, u32)> = None;
        for (t, cands) in self.sys.covered_by.iter().enumerate() {
            if self.cover_count[t] != 0 {
                continue;
            }
            let mut avail = 0;
            let mut top = 0;
            for &c in cands {
                let f = fresh[c as usize];
                if f > 0 {
                    avail += 1;
                    top = top.max(f);
                }
            }
            if avail == 0 {
                return None;
            }
            if hist.len() <= top {
                hist.resize(top + 1, 0);
            }
            hist[top] += 1;
            if pivot.is_none_or(|(a, _)| avail < a) {
                pivot = Some((avail, t as u32));
            }
        }
        let mut sum = BigRational::zero();
        for (m, &count) in hist.iter().enumerate().filter(|(_, &c)| c > 0) {
            sum += BigRational::new(BigInt::from(count), BigInt::from(m));
        }
        let lb = sum.ceil().to_integer().to_usize().unwrap_or(usize::MAX);
        pivot.map(|(_, t)| (lb, t))
    }

    fn dfs(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        if self.uncovered == 0 {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
                self.best.sort_unstable();
            }
            return true;
        }
        if self.chosen.len() + 1 >= self.best.len() {
            return true;
        }
        let Some((lb, pivot)) = self.bound_and_pivot() else {
            return true;
        };
        if self.chosen.len() + lb >= self.best.len() {
            return true;
        }
        let mut order: Vec<(usize, u32)> = self.sys.covered_by[pivot as usize]
            .iter()
            .filter(|&&c| !self.excluded[c as usize])
            .map(|&c| (self.fresh(c), c))
            .collect();
        order.sort_unstable_by_key(|&(f, c)| (Reverse(f), c));
        let mut newly_excluded = Vec::with_capacity(order.len());
        let mut ok = true;
        for &(_, c) in &order {
            self.take(c);
            ok = self.dfs();
            self.untake(c);
            if !ok {
                break;
            }
            // later siblings never use c again
            self.excluded[c as usize] = true;
            newly_excluded.push(c);
        }
        for c in newly_excluded {
            self.excluded[c as usize] = false;
        }
        ok
    }
}
