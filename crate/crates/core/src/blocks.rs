//! Dynamic array of block lengths with prefix-select and argmin.

use crate::treap::{Aggregate, Step, Treap};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug)]
struct SizeAgg {
    len: usize,
    sum: usize,
    min: usize,
    /// Offset of the lowest-index minimum within the summarized run.
    argmin: usize,
}

impl Aggregate for SizeAgg {
    type Item = usize;

    #[inline]
    fn empty() -> Self {
        SizeAgg {
            len: 0,
            sum: 0,
            min: usize::MAX,
            argmin: 0,
        }
    }

    #[inline]
    fn leaf(size: usize) -> Self {
        SizeAgg {
            len: 1,
            sum: size,
            min: size,
            argmin: 0,
        }
    }

    #[inline]
    fn join(a: Self, b: Self) -> Self {
        let (min, argmin) = if b.len == 0 || (a.len > 0 && a.min <= b.min) {
            (a.min, a.argmin)
        } else {
            (b.min, a.len + b.argmin)
        };
        SizeAgg {
            len: a.len + b.len,
            sum: a.sum + b.sum,
            min,
            argmin,
        }
    }

    #[inline]
    fn len(&self) -> usize {
        self.len
    }
}

/// The block lengths `(|B_0|, ..., |B_{L-1}|)`.
///
/// Every operation is `O(log L)` expected. Ties in argmin queries resolve to
/// the lowest slot index.
#[derive(Clone)]
pub struct BlockSizeIndex {
    tree: Treap<SizeAgg>,
}

impl Default for BlockSizeIndex {
    fn default() -> Self {
        Self::new()
    }
}

impl BlockSizeIndex {
    pub fn new() -> Self {
        Self { tree: Treap::new() }
    }

    pub fn from_sizes(sizes: &[usize]) -> Self {
        Self {
            tree: Treap::from_items(sizes.iter().copied()),
        }
    }

    /// Number of slots, `L`.
    pub fn slots(&self) -> usize {
        self.tree.len()
    }

    /// Sum of all sizes.
    pub fn total(&self) -> usize {
        self.tree.total().sum
    }

    pub fn size(&self, i: usize) -> Result<usize> {
        self.check_slot(i)?;
        Ok(self.tree.get(i))
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.slots());
        self.tree.for_each_in(0, self.slots(), |s| out.push(s));
        out
    }

    pub fn adjust(&mut self, i: usize, delta: isize) -> Result<()> {
        let current = self.size(i)?;
        let next = current.checked_add_signed(delta).ok_or_else(|| {
            Error::Invariant(format!(
                "block {i} of size {current} cannot change by {delta}"
            ))
        })?;
        self.tree.update(i, |s| *s = next);
        Ok(())
    }

    pub fn argmin_size(&self) -> Result<usize> {
        if self.slots() == 0 {
            return Err(Error::State("argmin over zero slots".into()));
        }
        Ok(self.tree.total().argmin)
    }

    /// Lowest-index minimum within the inclusive slot range `[lo, hi]`.
    pub fn argmin_size_in(&self, lo: usize, hi: usize) -> Result<usize> {
        if lo > hi || hi >= self.slots() {
            return Err(Error::InvalidRange {
                l: lo,
                r: hi,
                len: self.slots(),
            });
        }
        Ok(lo + self.tree.fold(lo, hi + 1).argmin)
    }

    /// Smallest `k` with `sizes[0] + ... + sizes[k] >= a`.
    pub fn select_prefix(&self, a: usize) -> Result<usize> {
        if a == 0 || a > self.total() {
            return Err(Error::OutOfRange {
                index: a,
                len: self.total(),
            });
        }
        let mut rem = a;
        self.tree
            .search(|left, &size| {
                if left.sum >= rem {
                    Step::Left
                } else {
                    rem -= left.sum;
                    if size >= rem {
                        Step::Here
                    } else {
                        rem -= size;
                        Step::Right
                    }
                }
            })
            .ok_or_else(|| Error::Invariant("prefix select fell off the index".into()))
    }

    /// `sizes[0] + ... + sizes[k]`.
    pub fn prefix_sum(&self, k: usize) -> Result<usize> {
        self.check_slot(k)?;
        Ok(self.tree.fold(0, k + 1).sum)
    }

    /// Sum of the sizes before slot `k`; the sequence position where block
    /// `k` starts. `k` may equal `slots()`.
    pub fn start_of(&self, k: usize) -> Result<usize> {
        if k > self.slots() {
            return Err(Error::OutOfRange {
                index: k,
                len: self.slots(),
            });
        }
        Ok(self.tree.fold(0, k).sum)
    }

    /// Sum of the sizes in the inclusive slot range `[lo, hi]`.
    pub fn range_sum(&self, lo: usize, hi: usize) -> Result<usize> {
        if lo > hi || hi >= self.slots() {
            return Err(Error::InvalidRange {
                l: lo,
                r: hi,
                len: self.slots(),
            });
        }
        Ok(self.tree.fold(lo, hi + 1).sum)
    }

    pub fn insert_slot(&mut self, i: usize, x: usize) -> Result<()> {
        if i > self.slots() {
            return Err(Error::OutOfRange {
                index: i,
                len: self.slots(),
            });
        }
        self.tree.insert(i, x);
        Ok(())
    }

    pub fn delete_slot(&mut self, i: usize) -> Result<usize> {
        self.check_slot(i)?;
        Ok(self.tree.remove(i))
    }

    fn check_slot(&self, i: usize) -> Result<()> {
        if i >= self.slots() {
            Err(Error::OutOfRange {
                index: i,
                len: self.slots(),
            })
        } else {
            Ok(())
        }
    }
}

impl std::fmt::Debug for BlockSizeIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.sizes()).finish()
    }
}
