//! Exact bin packing over a few distinct sizes, by search over bin
//! configurations.

use std::collections::HashMap;

use super::SolverError;
use crate::model::{Packing, RequestSequence};
use crate::size::ExactSize;

/// Maximum number of feasible configurations enumerated.
pub const MAX_CONFIGURATIONS: usize = 100_000;
/// Maximum number of memoized multiplicity vectors.
pub const MAX_STATES: usize = 2_000_000;
/// Largest multiset [`opt_configurations`] accepts; the cover search
/// recurses once per bin.
pub const MAX_ITEMS: u64 = 1024;

/// An optimal packing described per bin as counts of each distinct size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigSolution {
    pub sizes: Vec<ExactSize>,
    /// One entry per bin; `bins[b][i]` items of `sizes[i]` go in bin `b`.
    pub bins: Vec<Vec<u64>>,
}

impl ConfigSolution {
    pub fn cost(&self) -> usize {
        self.bins.len()
    }

    /// The instance the counts describe, sizes in listed order.
    pub fn expanded_sequence(&self) -> RequestSequence {
        let mut items = Vec::new();
        for (i, size) in self.sizes.iter().enumerate() {
            let total: u64 = self.bins.iter().map(|b| b[i]).sum();
            items.extend(std::iter::repeat_n(size.clone(), total as usize));
        }
        RequestSequence::new(items).expect("configuration sizes are item sizes")
    }

    /// Realizes the configurations on an actual sequence containing exactly
    /// the counted items: each item takes the first bin with a free slot of
    /// its size.
    pub fn packing_for(&self, seq: &RequestSequence) -> Option<Packing> {
        let mut free = self.bins.clone();
        let mut groups = vec![Vec::new(); self.bins.len()];
        for (item, size) in seq.iter().enumerate() {
            let class = self.sizes.iter().position(|s| s == size)?;
            let bin = free.iter().position(|slots| slots[class] > 0)?;
            free[bin][class] -= 1;
            groups[bin].push(item);
        }
        if free.iter().any(|slots| slots.iter().any(|&c| c > 0)) {
            return None;
        }
        Packing::from_groups(seq, &groups).ok()
    }
}

/// Optimal packing of the multiset `{size: count}`.
///
/// All feasible bin configurations (count vectors fitting in one bin) are
/// enumerated, then a memoized search covers the multiset: the bin holding
/// one item of the first remaining size is chosen among the configurations
/// containing that size.
pub fn opt_configurations(size_counts: &[(ExactSize, u64)]) -> Result<ConfigSolution, SolverError> {
    let mut sizes: Vec<ExactSize> = Vec::new();
    let mut counts: Vec<u64> = Vec::new();
    for (size, count) in size_counts {
        if !size.is_item_size() {
            return Err(SolverError::InvalidSize(size.clone()));
        }
        match sizes.iter().position(|s| s == size) {
            Some(i) => counts[i] += count,
            None => {
                sizes.push(size.clone());
                counts.push(*count);
            }
        }
    }

    let total = counts.iter().try_fold(0u64, |acc, &c| acc.checked_add(c));
    if total.is_none_or(|t| t > MAX_ITEMS) {
        return Err(SolverError::TooManyItems { limit: MAX_ITEMS });
    }

    // only sizes that actually occur take part in the search
    let active: Vec<usize> = (0..sizes.len()).filter(|&i| counts[i] > 0).collect();
    let active_sizes: Vec<ExactSize> = active.iter().map(|&i| sizes[i].clone()).collect();
    let active_counts: Vec<u64> = active.iter().map(|&i| counts[i]).collect();

    let configs = enumerate_configurations(&active_sizes, &active_counts)?;
    let mut solver = CoverSearch {
        configs: &configs,
        memo: HashMap::new(),
    };
    let active_bins = solver.cover(&active_counts)?;

    let bins = active_bins
        .into_iter()
        .map(|cfg| {
            let mut full = vec![0u64; sizes.len()];
            for (k, &i) in active.iter().enumerate() {
                full[i] = cfg[k];
            }
            full
        })
        .collect();
    Ok(ConfigSolution { sizes, bins })
}

/// Every non-empty count vector `c ≤ counts` with `Σ c_i · size_i ≤ 1`.
pub fn enumerate_configurations(
    sizes: &[ExactSize],
    counts: &[u64],
) -> Result<Vec<Vec<u64>>, SolverError> {
    fn rec(
        i: usize,
        sizes: &[ExactSize],
        counts: &[u64],
        room: &ExactSize,
        current: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) -> Result<(), SolverError> {
        if i == sizes.len() {
            if current.iter().any(|&c| c > 0) {
                if out.len() >= MAX_CONFIGURATIONS {
                    return Err(SolverError::ConfigurationExplosion {
                        limit: MAX_CONFIGURATIONS,
                    });
                }
                out.push(current.clone());
            }
            return Ok(());
        }
        let mut room_left = room.clone();
        let mut c = 0u64;
        loop {
            current.push(c);
            rec(i + 1, sizes, counts, &room_left, current, out)?;
            current.pop();
            if c == counts[i] || room_left < sizes[i] {
                break;
            }
            room_left -= &sizes[i];
            c += 1;
        }
        Ok(())
    }

    let mut out = Vec::new();
    rec(
        0,
        sizes,
        counts,
        &ExactSize::one(),
        &mut Vec::new(),
        &mut out,
    )?;
    Ok(out)
}

struct CoverSearch<'a> {
    configs: &'a [Vec<u64>],
    /// remaining counts -> (bins needed, first configuration used)
    memo: HashMap<Vec<u64>, (usize, usize)>,
}

impl CoverSearch<'_> {
    fn cover(&mut self, counts: &[u64]) -> Result<Vec<Vec<u64>>, SolverError> {
        self.solve(counts)?;
        let mut bins = Vec::new();
        let mut rem = counts.to_vec();
        while rem.iter().any(|&c| c > 0) {
            let (_, cfg) = self.memo[&rem];
            let config = &self.configs[cfg];
            for (r, c) in rem.iter_mut().zip(config) {
                *r -= c;
            }
            bins.push(config.clone());
        }
        Ok(bins)
    }

    fn solve(&mut self, rem: &[u64]) -> Result<usize, SolverError> {
        let Some(first) = rem.iter().position(|&c| c > 0) else {
            return Ok(0);
        };
        if let Some(&(cost, _)) = self.memo.get(rem) {
            return Ok(cost);
        }
        if self.memo.len() >= MAX_STATES {
            return Err(SolverError::ConfigurationExplosion { limit: MAX_STATES });
        }
        let mut best: Option<(usize, usize)> = None;
        let mut next = vec![0u64; rem.len()];
        for (idx, config) in self.configs.iter().enumerate() {
            if config[first] == 0 || config.iter().zip(rem).any(|(c, r)| c > r) {
                continue;
            }
            for (k, slot) in next.iter_mut().enumerate() {
                *slot = rem[k] - config[k];
            }
            let cost = 1 + self.solve(&next.clone())?;
            if best.is_none_or(|(b, _)| cost < b) {
                best = Some((cost, idx));
            }
        }
        let best = best.expect("a single item always forms a configuration");
        self.memo.insert(rem.to_vec(), best);
        Ok(best.0)
    }
}
