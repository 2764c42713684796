use super::LowerBoundError;
use crate::model::{Packing, RequestSequence};
use crate::size::ExactSize;

/// Bin labels for the first `n - k` items of a family member. The first `k`
/// labels are fixed to `1, 2, …, k`; the remaining `n - 2k` are free.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PowerVector {
    n: usize,
    k: usize,
    labels: Vec<usize>,
}

impl PowerVector {
    pub fn new(n: usize, k: usize, labels: Vec<usize>) -> Result<Self, LowerBoundError> {
        check_shape(n, k)?;
        if labels.len() != n - k {
            return Err(LowerBoundError::InvalidVector(format!(
                "expected {} labels, got {}",
                n - k,
                labels.len()
            )));
        }
        if let Some(j) = (0..k).find(|&j| labels[j] != j + 1) {
            return Err(LowerBoundError::InvalidVector(format!(
                "label {} must be {}",
                j + 1,
                j + 1
            )));
        }
        if let Some(&bad) = labels.iter().find(|&&v| v == 0 || v > k) {
            return Err(LowerBoundError::InvalidVector(format!(
                "label {bad} is not in 1..={k}"
            )));
        }
        Ok(PowerVector { n, k, labels })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }
}

fn check_shape(n: usize, k: usize) -> Result<(), LowerBoundError> {
    if k == 0 || k >= n || 2 * k > n {
        return Err(LowerBoundError::InvalidVector(format!(
            "need 1 <= k <= n-1 and 2k <= n (n={n}, k={k})"
        )));
    }
    Ok(())
}

/// `1/2^{i+1}` for the first `n - k` items, then fillers
/// `u_j = 1 - Σ_{v_i = j} a_i`. Every bin of the intended packing is full.
pub fn gen_power_sequence(v: &PowerVector) -> RequestSequence {
    let small: Vec<ExactSize> = (1..=v.labels.len())
        .map(|i| ExactSize::new(1, num_bigint::BigInt::from(1) << (i + 1)))
        .collect();
    let mut fillers = vec![ExactSize::one(); v.k];
    for (a, &label) in small.iter().zip(&v.labels) {
        fillers[label - 1] -= a;
    }
    let mut items = small;
    items.extend(fillers);
    RequestSequence::new(items).expect("family sizes lie in (0, 1]")
}

/// Bin `j` holds the items labelled `j` and the filler `u_j`.
pub fn power_packing(v: &PowerVector) -> Packing {
    let seq = gen_power_sequence(v);
    let mut groups = vec![Vec::new(); v.k];
    for (i, &label) in v.labels.iter().enumerate() {
        groups[label - 1].push(i);
    }
    for (j, group) in groups.iter_mut().enumerate() {
        group.push(v.labels.len() + j);
    }
    Packing::from_groups(&seq, &groups).expect("family packing is feasible")
}

/// All vectors for given `n, k`, in lexicographic order of the free labels.
#[derive(Debug, Clone)]
pub struct PowerFamily {
    n: usize,
    k: usize,
    next: u128,
    size: u128,
}

impl PowerFamily {
    pub fn new(n: usize, k: usize) -> Result<Self, LowerBoundError> {
        check_shape(n, k)?;
        let size = (k as u128).checked_pow((n - 2 * k) as u32).ok_or_else(|| {
            LowerBoundError::InvalidVector(format!("family k^(n-2k) for n={n}, k={k} overflows"))
        })?;
        Ok(PowerFamily {
            n,
            k,
            next: 0,
            size,
        })
    }

    /// `k^{n-2k}`.
    pub fn size(&self) -> u128 {
        self.size
    }

    /// The member at `index`, reading the free labels as base-`k` digits.
    pub fn member(&self, index: u128) -> Option<PowerVector> {
        if index >= self.size {
            return None;
        }
        let free = self.n - 2 * self.k;
        let mut labels: Vec<usize> = (1..=self.k).collect();
        let mut digits = vec![0usize; free];
        let mut rest = index;
        for d in digits.iter_mut().rev() {
            *d = (rest % self.k as u128) as usize;
            rest /= self.k as u128;
        }
        labels.extend(digits.into_iter().map(|d| d + 1));
        Some(PowerVector {
            n: self.n,
            k: self.k,
            labels,
        })
    }
}

impl Iterator for PowerFamily {
    type Item = PowerVector;

    fn next(&mut self) -> Option<PowerVector> {
        let v = self.member(self.next)?;
        self.next += 1;
        Some(v)
    }

    fn nth(&mut self, n: usize) -> Option<PowerVector> {
        self.next = self.next.saturating_add(n as u128);
        self.next()
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.size - self.next.min(self.size);
        match usize::try_from(left) {
            Ok(left) => (left, Some(left)),
            Err(_) => (usize::MAX, None),
        }
    }
}

/// A scaled family member with its intended packing.
#[derive(Debug, Clone)]
pub struct ScaledInstance {
    pub sequence: RequestSequence,
    pub packing: Packing,
}

/// Capacity `2m`, scaled to 1. `levels[i-1]` large items of size `2m - i`
/// each take `i` unit items. Requires `Σ i·levels[i-1] = n/2`.
pub fn gen_scaled_sequence(
    n: usize,
    m: usize,
    levels: &[usize],
) -> Result<ScaledInstance, LowerBoundError> {
    if !n.is_multiple_of(2) {
        return Err(LowerBoundError::InvalidLevels(format!(
            "n = {n} must be even"
        )));
    }
    if m < 3 {
        return Err(LowerBoundError::InvalidLevels(format!(
            "m = {m} must be at least 3"
        )));
    }
    if levels.len() != m - 2 {
        return Err(LowerBoundError::InvalidLevels(format!(
            "expected {} level counts, got {}",
            m - 2,
            levels.len()
        )));
    }
    let half = n / 2;
    let weighted: usize = levels.iter().enumerate().map(|(i, &a)| (i + 1) * a).sum();
    if weighted != half {
        return Err(LowerBoundError::InvalidLevels(format!(
            "a1 + 2a2 + ... = {weighted}, expected n/2 = {half}"
        )));
    }
    let big: usize = levels.iter().sum();
    if big > half {
        return Err(LowerBoundError::InvalidLevels(format!(
            "{big} large items exceed n/2"
        )));
    }

    let cap = (2 * m) as i64;
    let mut items = vec![ExactSize::ratio(1, cap); half];
    let mut groups = Vec::new();
    let mut next_unit = 0;
    for (i, &count) in levels.iter().enumerate() {
        let level = i + 1;
        for _ in 0..count {
            groups.push({
                let mut g: Vec<usize> = (next_unit..next_unit + level).collect();
                g.push(items.len());
                g
            });
            next_unit += level;
            items.push(ExactSize::ratio(cap - level as i64, cap));
        }
    }
    for _ in big..half {
        groups.push(vec![items.len()]);
        items.push(ExactSize::one());
    }
    let sequence = RequestSequence::new(items).expect("scaled sizes lie in (0, 1]");
    let packing = Packing::from_groups(&sequence, &groups).expect("intended packing is feasible");
    Ok(ScaledInstance { sequence, packing })
}
