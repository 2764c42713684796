//! Branch-and-bound optimal bin packing.

use super::weights::{scale, Scaled, Weight};
use super::{OptSolution, SolverError};
use crate::model::{Packing, RequestSequence};

/// Default node budget used by the CLI and harness.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

/// Minimal number of bins for `seq`, with a witness packing whose bins are
/// ordered by their smallest item index.
///
/// Items are branched on in non-increasing size order (ties by index): each
/// goes into an existing bin or opens exactly one new bin. Bins with equal
/// loads are tried once, an item that fills a bin exactly is placed there
/// without alternatives, and nodes are cut by a capacity lower bound against
/// the incumbent (seeded with First-Fit and First-Fit-Decreasing).
pub fn opt_exact(seq: &RequestSequence, node_budget: u64) -> Result<OptSolution, SolverError> {
    let groups = match scale(seq.items()) {
        Scaled::Int { weights, cap } => search(&weights, cap, node_budget)?,
        Scaled::Exact { weights, cap } => search(&weights, cap, node_budget)?,
    };
    let witness = Packing::from_groups(seq, &groups).expect("solver groups are feasible");
    Ok(OptSolution {
        cost: groups.len(),
        witness,
    })
}

fn first_fit_groups<W: Weight>(order: &[usize], weights: &[W], cap: &W) -> Vec<Vec<usize>> {
    let mut loads: Vec<W> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in order {
        let w = &weights[i];
        match loads.iter().position(|l| &l.plus(w) <= cap) {
            Some(b) => {
                loads[b] = loads[b].plus(w);
                groups[b].push(i);
            }
            None => {
                loads.push(w.clone());
                groups.push(vec![i]);
            }
        }
    }
    groups
}

fn canonical(mut groups: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for g in &mut groups {
        g.sort_unstable();
    }
    groups.retain(|g| !g.is_empty());
    groups.sort_unstable_by_key(|g| g[0]);
    groups
}

struct Search<'a, W> {
    weights: &'a [W],
    cap: W,
    order: Vec<usize>,
    /// `suffix[t]` = total weight of `order[t..]`.
    suffix: Vec<W>,
    loads: Vec<W>,
    bin_of: Vec<usize>,
    best: usize,
    best_bin_of: Option<Vec<usize>>,
    lower: usize,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

fn search<W: Weight>(weights: &[W], cap: W, budget: u64) -> Result<Vec<Vec<usize>>, SolverError> {
    let n = weights.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));

    let mut suffix = vec![W::zero(); n + 1];
    for t in (0..n).rev() {
        suffix[t] = suffix[t + 1].plus(&weights[order[t]]);
    }
    let lower = suffix[0].bins_for(&cap).max(1);

    let index_order: Vec<usize> = (0..n).collect();
    let ff = first_fit_groups(&index_order, weights, &cap);
    let ffd = first_fit_groups(&order, weights, &cap);
    let incumbent = if ffd.len() <= ff.len() { ffd } else { ff };
    if incumbent.len() == lower {
        return Ok(canonical(incumbent));
    }

    let mut s = Search {
        weights,
        cap,
        order,
        suffix,
        loads: Vec::with_capacity(n),
        bin_of: vec![0; n],
        best: incumbent.len(),
        best_bin_of: None,
        lower,
        nodes: 0,
        budget,
        exhausted: false,
    };
    s.dfs(0);

    if s.exhausted && s.best > s.lower {
        return Err(SolverError::BudgetExhausted {
            lower: s.lower,
            upper: s.best,
        });
    }
    match s.best_bin_of {
        None => Ok(canonical(incumbent)),
        Some(bin_of) => {
            let mut groups = vec![Vec::new(); s.best];
            for (t, &b) in bin_of.iter().enumerate() {
                groups[b].push(s.order[t]);
            }
            Ok(canonical(groups))
        }
    }
}

impl<W: Weight> Search<'_, W> {
    fn done(&self) -> bool {
        self.exhausted || self.best == self.lower
    }

    fn dfs(&mut self, t: usize) {
        if self.done() {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let n = self.order.len();
        if t == n {
            if self.loads.len() < self.best {
                self.best = self.loads.len();
                self.best_bin_of = Some(self.bin_of.clone());
            }
            return;
        }

        let used = self.loads.len();
        let free = self
            .loads
            .iter()
            .fold(W::zero(), |acc, l| acc.plus(&self.cap.minus(l)));
        let remaining = &self.suffix[t];
        let bound = if remaining > &free {
            used + remaining.minus(&free).bins_for(&self.cap)
        } else {
            used
        };
        if bound >= self.best {
            return;
        }

        let w = self.weights[self.order[t]].clone();
        if let Some(b) = self.loads.iter().position(|l| l.plus(&w) == self.cap) {
            self.descend(t, b, &w);
            return;
        }

        let mut tried: Vec<W> = Vec::new();
        for b in 0..used {
            let load = self.loads[b].clone();
            if load.plus(&w) <= self.cap && !tried.contains(&load) {
                tried.push(load);
                self.descend(t, b, &w);
                if self.done() {
                    return;
                }
            }
        }
        if used + 1 < self.best {
            self.loads.push(W::zero());
            self.descend(t, used, &w);
            self.loads.pop();
        }
    }

    fn descend(&mut self, t: usize, bin: usize, w: &W) {
        let before = self.loads[bin].clone();
        self.loads[bin] = before.plus(w);
        self.bin_of[t] = bin;
        self.dfs(t + 1);
        self.loads[bin] = before;
    }
}
