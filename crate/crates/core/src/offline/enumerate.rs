use super::weights::{scale, Scaled, Weight};
use super::{opt_exact, SolverError};
use crate::model::{Packing, RequestSequence};

/// All optimal packings of `seq`, each counted once up to bin order.
///
/// Packings are generated canonically: items are taken in index order and
/// either join an existing bin or open the next one, so every bin is
/// identified by its smallest item and no permutation is produced twice.
/// Items of equal size are still distinct items.
pub fn enumerate_optimal_packings(
    seq: &RequestSequence,
    limit: usize,
    node_budget: u64,
) -> Result<Vec<Packing>, SolverError> {
    let opt = opt_exact(seq, node_budget)?.cost;
    let groups = match scale(seq.items()) {
        Scaled::Int { weights, cap } => collect(&weights, cap, opt, limit)?,
        Scaled::Exact { weights, cap } => collect(&weights, cap, opt, limit)?,
    };
    Ok(groups
        .iter()
        .map(|g| Packing::from_groups(seq, g).expect("enumerated groups are feasible"))
        .collect())
}

fn collect<W: Weight>(
    weights: &[W],
    cap: W,
    bins: usize,
    limit: usize,
) -> Result<Vec<Vec<Vec<usize>>>, SolverError> {
    let n = weights.len();
    let mut suffix = vec![W::zero(); n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1].plus(&weights[i]);
    }
    let mut e = Enumerator {
        weights,
        cap,
        bins,
        limit,
        suffix,
        loads: Vec::new(),
        groups: Vec::new(),
        found: Vec::new(),
    };
    e.rec(0)?;
    Ok(e.found)
}

struct Enumerator<'a, W> {
    weights: &'a [W],
    cap: W,
    bins: usize,
    limit: usize,
    suffix: Vec<W>,
    loads: Vec<W>,
    groups: Vec<Vec<usize>>,
    found: Vec<Vec<Vec<usize>>>,
}

impl<W: Weight> Enumerator<'_, W> {
    fn rec(&mut self, i: usize) -> Result<(), SolverError> {
        if i == self.weights.len() {
            if self.found.len() >= self.limit {
                return Err(SolverError::LimitExceeded { limit: self.limit });
            }
            self.found.push(self.groups.clone());
            return Ok(());
        }
        let unopened = self.bins - self.loads.len();
        let mut free = (0..unopened).fold(W::zero(), |acc, _| acc.plus(&self.cap));
        for l in &self.loads {
            free = free.plus(&self.cap.minus(l));
        }
        if self.suffix[i] > free {
            return Ok(());
        }
        let w = self.weights[i].clone();
        for b in 0..self.loads.len() {
            let next = self.loads[b].plus(&w);
            if next <= self.cap {
                let before = std::mem::replace(&mut self.loads[b], next);
                self.groups[b].push(i);
                self.rec(i + 1)?;
                self.groups[b].pop();
                self.loads[b] = before;
            }
        }
        if unopened > 0 {
            self.loads.push(w);
            self.groups.push(vec![i]);
            self.rec(i + 1)?;
            self.groups.pop();
            self.loads.pop();
        }
        Ok(())
    }
}
