//! Triangular table of per-block-range symbol counts.

use std::collections::BTreeMap;

use crate::{CountedSet, Error, Result, Symbol};

/// Direction of a point update.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Change {
    Add,
    Remove,
}

/// For every block pair `0 <= l <= r < L`, the multiset of symbols in
/// `B_l + ... + B_r`, stored densely in row-major triangular order.
#[derive(Clone)]
pub struct PairTable {
    blocks: usize,
    cells: Vec<CountedSet>,
}

impl PairTable {
    /// A table over `blocks` empty blocks.
    pub fn empty(blocks: usize) -> Self {
        Self {
            blocks,
            cells: vec![CountedSet::new(); blocks * (blocks + 1) / 2],
        }
    }

    /// Builds the table from the contents of each block.
    pub fn build<B: AsRef<[Symbol]>>(blocks: &[B]) -> Self {
        let counts: Vec<BTreeMap<Symbol, usize>> = blocks
            .iter()
            .map(|b| {
                let mut m = BTreeMap::new();
                for &c in b.as_ref() {
                    *m.entry(c).or_insert(0) += 1;
                }
                m
            })
            .collect();
        Self::from_block_counts(&counts)
    }

    /// Builds the table from per-block symbol counts. Each row is swept left
    /// to right, so the cost is `O(L^2 σ' log σ')`.
    pub fn from_block_counts(counts: &[BTreeMap<Symbol, usize>]) -> Self {
        let blocks = counts.len();
        let mut cells = Vec::with_capacity(blocks * (blocks + 1) / 2);
        for l in 0..blocks {
            let mut running = CountedSet::new();
            for block in &counts[l..] {
                for (&c, &k) in block {
                    running.add(c, k);
                }
                cells.push(running.clone());
            }
        }
        Self { blocks, cells }
    }

    /// Number of blocks `L`.
    pub fn block_count(&self) -> usize {
        self.blocks
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    #[inline]
    fn index(&self, l: usize, r: usize) -> usize {
        debug_assert!(l <= r && r < self.blocks);
        l * self.blocks - l * l.saturating_sub(1) / 2 + (r - l)
    }

    pub fn cell(&self, l: usize, r: usize) -> Result<&CountedSet> {
        if l > r || r >= self.blocks {
            return Err(Error::InvalidRange {
                l,
                r,
                len: self.blocks,
            });
        }
        Ok(&self.cells[self.index(l, r)])
    }

    #[cfg(test)]
    pub(crate) fn cell_mut(&mut self, l: usize, r: usize) -> &mut CountedSet {
        let i = self.index(l, r);
        &mut self.cells[i]
    }

    #[inline]
    fn touch(&mut self, l: usize, r: usize, c: Symbol, change: Change) -> Result<()> {
        let i = self.index(l, r);
        match change {
            Change::Add => {
                self.cells[i].increment(c);
                Ok(())
            }
            Change::Remove => self.cells[i].decrement(c),
        }
    }

    /// Adds or removes one `c` in block `j`: every cell with `l <= j <= r`.
    pub fn apply_point(&mut self, j: usize, c: Symbol, change: Change) -> Result<()> {
        self.check_block(j)?;
        for l in 0..=j {
            let row = self.index(l, j);
            for cell in &mut self.cells[row..row + (self.blocks - j)] {
                match change {
                    Change::Add => cell.increment(c),
                    Change::Remove => cell.decrement(c)?,
                }
            }
        }
        Ok(())
    }

    /// Block `i` hands its first element `c` to block `i - 1`.
    pub fn shift_left(&mut self, i: usize, c: Symbol) -> Result<()> {
        if i == 0 || i >= self.blocks {
            return Err(Error::OutOfRange {
                index: i,
                len: self.blocks,
            });
        }
        for l in 0..i {
            self.touch(l, i - 1, c, Change::Add)?;
        }
        for r in i..self.blocks {
            self.touch(i, r, c, Change::Remove)?;
        }
        Ok(())
    }

    /// Block `i` hands its last element `c` to block `i + 1`.
    pub fn shift_right(&mut self, i: usize, c: Symbol) -> Result<()> {
        if i + 1 >= self.blocks {
            return Err(Error::OutOfRange {
                index: i,
                len: self.blocks,
            });
        }
        for l in 0..=i {
            self.touch(l, i, c, Change::Remove)?;
        }
        for r in i + 1..self.blocks {
            self.touch(i + 1, r, c, Change::Add)?;
        }
        Ok(())
    }

    fn check_block(&self, j: usize) -> Result<()> {
        if j >= self.blocks {
            Err(Error::OutOfRange {
                index: j,
                len: self.blocks,
            })
        } else {
            Ok(())
        }
    }
}

impl PartialEq for PairTable {
    fn eq(&self, other: &Self) -> bool {
        self.blocks == other.blocks && self.cells == other.cells
    }
}

impl std::fmt::Debug for PairTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut m = f.debug_map();
        for l in 0..self.blocks {
            for r in l..self.blocks {
                m.entry(&(l, r), &self.cells[self.index(l, r)]);
            }
        }
        m.finish()
    }
}
