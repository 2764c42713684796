//! Items, bins, packings and online run records.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::size::ExactSize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(
        "placing item #{item} of size {size} into bin {bin} (load {load}) would exceed capacity 1"
    )]
    OverflowRejected {
        bin: usize,
        item: usize,
        load: ExactSize,
        size: ExactSize,
    },
    #[error("bin {0} does not exist")]
    NoSuchBin(usize),
    #[error("item #{0} has already been placed")]
    DuplicateItem(usize),
    #[error("item #{index} has size {size}, outside (0, 1]")]
    InvalidSize { index: usize, size: ExactSize },
    #[error("instance declares n = {declared} but lists {actual} items")]
    LengthMismatch { declared: usize, actual: usize },
    #[error("item #{item} is outside a sequence of length {len}")]
    ItemOutOfRange { item: usize, len: usize },
}

/// The requests of one instance, in arrival order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RequestSequence {
    items: Vec<ExactSize>,
}

impl RequestSequence {
    pub fn new(items: Vec<ExactSize>) -> Result<Self, ModelError> {
        if let Some((index, size)) = items.iter().enumerate().find(|(_, s)| !s.is_item_size()) {
            return Err(ModelError::InvalidSize {
                index,
                size: size.clone(),
            });
        }
        Ok(RequestSequence { items })
    }

    pub fn empty() -> Self {
        RequestSequence::default()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[ExactSize] {
        &self.items
    }

    pub fn get(&self, index: usize) -> Option<&ExactSize> {
        self.items.get(index)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ExactSize> {
        self.items.iter()
    }

    pub fn total_size(&self) -> ExactSize {
        self.items.iter().sum()
    }

    /// The first `len` requests.
    pub fn prefix(&self, len: usize) -> RequestSequence {
        RequestSequence {
            items: self.items[..len.min(self.items.len())].to_vec(),
        }
    }

    /// Parses the JSON instance format `{"n": 3, "items": ["1/2", "0.25", "1"]}`.
    pub fn from_json(text: &str) -> Result<Self, InstanceFileError> {
        let file: InstanceFile = serde_json::from_str(text)?;
        file.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&InstanceFile::from(self)).expect("instance serialization")
    }
}

impl<'a> IntoIterator for &'a RequestSequence {
    type Item = &'a ExactSize;
    type IntoIter = std::slice::Iter<'a, ExactSize>;
    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

#[derive(Debug, Error)]
pub enum InstanceFileError {
    #[error("malformed instance JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// On-disk instance representation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub items: Vec<ExactSize>,
}

impl From<&RequestSequence> for InstanceFile {
    fn from(seq: &RequestSequence) -> Self {
        InstanceFile {
            n: seq.len(),
            items: seq.items.clone(),
        }
    }
}

impl TryFrom<InstanceFile> for RequestSequence {
    type Error = InstanceFileError;
    fn try_from(file: InstanceFile) -> Result<Self, Self::Error> {
        if file.n != file.items.len() {
            return Err(ModelError::LengthMismatch {
                declared: file.n,
                actual: file.items.len(),
            }
            .into());
        }
        Ok(RequestSequence::new(file.items)?)
    }
}

/// A unit-capacity bin.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Bin {
    contents: Vec<usize>,
    load: ExactSize,
}

impl Bin {
    pub fn contents(&self) -> &[usize] {
        &self.contents
    }

    pub fn load(&self) -> &ExactSize {
        &self.load
    }

    pub fn residual(&self) -> ExactSize {
        ExactSize::one() - &self.load
    }

    pub fn fits(&self, size: &ExactSize) -> bool {
        &self.load + size <= ExactSize::one()
    }

    pub fn is_empty(&self) -> bool {
        self.contents.is_empty()
    }

    pub fn len(&self) -> usize {
        self.contents.len()
    }
}

/// Where to put the next item.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Existing(usize),
    New,
}

/// An assignment of items to bins.
#[derive(Debug, Clone, Default)]
pub struct Packing {
    bins: Vec<Bin>,
    assignment: BTreeMap<usize, usize>,
}

impl Packing {
    pub fn new() -> Self {
        Packing::default()
    }

    /// Builds a packing from explicit groups of item indices, one group per bin.
    pub fn from_groups(seq: &RequestSequence, groups: &[Vec<usize>]) -> Result<Self, ModelError> {
        let mut packing = Packing::new();
        for group in groups {
            let bin = packing.open_bin();
            for &item in group {
                let size = seq.get(item).ok_or(ModelError::ItemOutOfRange {
                    item,
                    len: seq.len(),
                })?;
                packing.place(Target::Existing(bin), item, size)?;
            }
        }
        Ok(packing)
    }

    /// Opens an empty bin (used for space reserved ahead of time).
    pub fn open_bin(&mut self) -> usize {
        self.bins.push(Bin::default());
        self.bins.len() - 1
    }

    /// Records `item` in `target`. Never truncates: an overflow is an error.
    pub fn place(
        &mut self,
        target: Target,
        item: usize,
        size: &ExactSize,
    ) -> Result<usize, ModelError> {
        if self.assignment.contains_key(&item) {
            return Err(ModelError::DuplicateItem(item));
        }
        let bin = match target {
            Target::New => self.open_bin(),
            Target::Existing(b) => {
                let existing = self.bins.get(b).ok_or(ModelError::NoSuchBin(b))?;
                if !existing.fits(size) {
                    return Err(ModelError::OverflowRejected {
                        bin: b,
                        item,
                        load: existing.load.clone(),
                        size: size.clone(),
                    });
                }
                b
            }
        };
        let slot = &mut self.bins[bin];
        slot.contents.push(item);
        slot.load += size;
        self.assignment.insert(item, bin);
        Ok(bin)
    }

    pub fn bins(&self) -> &[Bin] {
        &self.bins
    }

    pub fn bin(&self, index: usize) -> Option<&Bin> {
        self.bins.get(index)
    }

    pub fn bin_of(&self, item: usize) -> Option<usize> {
        self.assignment.get(&item).copied()
    }

    pub fn assignment(&self) -> &BTreeMap<usize, usize> {
        &self.assignment
    }

    /// Number of items placed so far.
    pub fn item_count(&self) -> usize {
        self.assignment.len()
    }

    /// Number of non-empty bins.
    pub fn cost(&self) -> usize {
        self.bins.iter().filter(|b| !b.is_empty()).count()
    }

    /// Bins as groups of item indices, empty bins dropped, ordered by their
    /// smallest member. Two packings that differ only by bin order share it.
    pub fn canonical_groups(&self) -> Vec<Vec<usize>> {
        let mut groups: Vec<Vec<usize>> = self
            .bins
            .iter()
            .filter(|b| !b.is_empty())
            .map(|b| {
                let mut g = b.contents.clone();
                g.sort_unstable();
                g
            })
            .collect();
        groups.sort_unstable_by_key(|g| g[0]);
        groups
    }

    /// Same assignment, bins renumbered by smallest contained item.
    pub fn canonical(&self, seq: &RequestSequence) -> Result<Packing, ModelError> {
        Packing::from_groups(seq, &self.canonical_groups())
    }

    fn trimmed_bins(&self) -> &[Bin] {
        let end = self
            .bins
            .iter()
            .rposition(|b| !b.is_empty())
            .map_or(0, |i| i + 1);
        &self.bins[..end]
    }
}

/// Trailing empty bins (unused reservations) do not distinguish packings.
impl PartialEq for Packing {
    fn eq(&self, other: &Self) -> bool {
        self.assignment == other.assignment && self.trimmed_bins() == other.trimmed_bins()
    }
}

impl Eq for Packing {}

impl fmt::Display for Packing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, bin) in self.bins.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{:?} ({})", bin.contents, bin.load)?;
        }
        Ok(())
    }
}

/// One problem found by [`verify_packing`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Unassigned(usize),
    AssignedTwice(usize),
    UnknownItem(usize),
    Overfull {
        bin: usize,
        load: ExactSize,
    },
    LoadMismatch {
        bin: usize,
        stored: ExactSize,
        actual: ExactSize,
    },
    AssignmentMismatch {
        item: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Unassigned(i) => write!(f, "item #{i} is not packed"),
            Violation::AssignedTwice(i) => write!(f, "item #{i} is packed more than once"),
            Violation::UnknownItem(i) => write!(f, "item #{i} is not part of the sequence"),
            Violation::Overfull { bin, load } => write!(f, "bin {bin} has load {load} > 1"),
            Violation::LoadMismatch {
                bin,
                stored,
                actual,
            } => {
                write!(f, "bin {bin} records load {stored} but holds {actual}")
            }
            Violation::AssignmentMismatch { item } => {
                write!(f, "item #{item} assignment map disagrees with bin contents")
            }
        }
    }
}

/// Checks a packing against its sequence and lists every violation found.
/// An empty list means the packing is valid.
pub fn packing_violations(seq: &RequestSequence, packing: &Packing) -> Vec<Violation> {
    let mut violations = Vec::new();
    let mut seen = vec![0usize; seq.len()];
    for (b, bin) in packing.bins.iter().enumerate() {
        let mut actual = ExactSize::zero();
        for &item in &bin.contents {
            match seq.get(item) {
                Some(size) => {
                    actual += size;
                    seen[item] += 1;
                    if packing.bin_of(item) != Some(b) {
                        violations.push(Violation::AssignmentMismatch { item });
                    }
                }
                None => violations.push(Violation::UnknownItem(item)),
            }
        }
        if actual > ExactSize::one() {
            violations.push(Violation::Overfull {
                bin: b,
                load: actual.clone(),
            });
        }
        if actual != bin.load {
            violations.push(Violation::LoadMismatch {
                bin: b,
                stored: bin.load.clone(),
                actual,
            });
        }
    }
    for (item, count) in seen.into_iter().enumerate() {
        match count {
            0 => violations.push(Violation::Unassigned(item)),
            1 => {}
            _ => violations.push(Violation::AssignedTwice(item)),
        }
    }
    violations
}

/// True iff every item is packed exactly once and no bin exceeds capacity.
pub fn verify_packing(seq: &RequestSequence, packing: &Packing) -> bool {
    packing_violations(seq, packing).is_empty()
}

/// The choice an online algorithm made for one item.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub bin: usize,
    /// The item was the first one placed in `bin`.
    pub opened_new: bool,
}

/// Everything recorded about one online run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    pub packing: Packing,
    pub cost: usize,
    pub advice_bits_read: u64,
    pub trace: Vec<Decision>,
    /// Set when the algorithm found its advice contradicted by the input
    /// and fell back to a plain strategy.
    pub advice_inconsistent: bool,
}

/// Re-applies a decision trace to `seq`, reproducing the packing.
pub fn replay(seq: &RequestSequence, trace: &[Decision]) -> Result<Packing, ModelError> {
    let mut packing = Packing::new();
    for (item, decision) in trace.iter().enumerate() {
        let size = seq.get(item).ok_or(ModelError::ItemOutOfRange {
            item,
            len: seq.len(),
        })?;
        while packing.bins.len() <= decision.bin {
            packing.open_bin();
        }
        packing.place(Target::Existing(decision.bin), item, size)?;
    }
    Ok(packing)
}
