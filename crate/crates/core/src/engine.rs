//! Dynamic range mode enumeration.
//!
//! The sequence lives in a [`CharSeq`]. It is partitioned into `L = Θ(N^α)`
//! consecutive blocks whose lengths are tracked by a [`BlockSizeIndex`], and
//! a [`PairTable`] holds the symbol counts of every block range
//! `B_l + ... + B_r`. A modes query combines the table cell of the largest
//! block range inside `[l, r]` with a direct scan of the `O(N^(1-α))`
//! margin elements around it.
//!
//! Blocks are grouped into regions (see [`RegimeState`]). Each region has a
//! per-block size limit; an insertion that overflows a block shifts one
//! element along a chain of neighbouring blocks to a block with room. Under
//! [`Strategy::Pcn`] every update also migrates elements between the p, c
//! and n regions so that when the length doubles all elements sit in n,
//! and when it halves all sit in p. At that point the layout is reset for
//! the new reference length.

use std::collections::BTreeMap;

use crate::regime::{Region, RegionKind};
use crate::table::Change;
use crate::{
    BlockSizeIndex, CharSeq, Config, CountedSet, DynamicModes, Error, ModesResult, PairTable,
    RegimeState, Result, Strategy, Symbol,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResetKind {
    Doubling,
    Halving,
}

/// A record of one layout reset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResetEvent {
    pub kind: ResetKind,
    pub old_n0: usize,
    pub new_n0: usize,
}

#[derive(Clone)]
pub struct Engine {
    config: Config,
    seq: CharSeq,
    sizes: BlockSizeIndex,
    table: PairTable,
    regime: RegimeState,
    resets: Vec<ResetEvent>,
    /// Blocks left over their limit mid-operation for lack of a donor.
    overflowed: Vec<usize>,
}

impl Engine {
    pub fn new(initial: &[Symbol], config: Config) -> Result<Self> {
        let regime = RegimeState::new(initial.len(), config.alpha, config.strategy);
        let seq = CharSeq::from_symbols(initial);
        let mut engine = Engine {
            config,
            seq,
            sizes: BlockSizeIndex::new(),
            table: PairTable::empty(0),
            regime,
            resets: Vec::new(),
            overflowed: Vec::new(),
        };
        engine.relayout();
        Ok(engine)
    }

    pub fn with_strategy(initial: &[Symbol], strategy: Strategy) -> Self {
        Self::new(initial, Config::with_strategy(strategy)).expect("default alpha is valid")
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    pub fn regime(&self) -> &RegimeState {
        &self.regime
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.sizes.sizes()
    }

    pub fn resets(&self) -> &[ResetEvent] {
        &self.resets
    }

    pub fn to_vec(&self) -> Vec<Symbol> {
        self.seq.to_vec()
    }

    /// Number of elements currently held by the blocks of `kind`.
    pub fn region_len(&self, kind: RegionKind) -> usize {
        self.regime
            .region(kind)
            .map(|r| {
                self.sizes
                    .range_sum(r.first_slot, r.last_slot())
                    .unwrap_or(0)
            })
            .unwrap_or(0)
    }

    /// Contents of every block, in block order.
    pub fn blocks(&self) -> Vec<Vec<Symbol>> {
        let all = self.seq.to_vec();
        let mut out = Vec::with_capacity(self.sizes.slots());
        let mut at = 0;
        for size in self.sizes.sizes() {
            out.push(all[at..at + size].to_vec());
            at += size;
        }
        out
    }

    pub fn insert(&mut self, i: usize, c: Symbol) -> Result<()> {
        if i > self.len() {
            return Err(Error::OutOfRange {
                index: i,
                len: self.len(),
            });
        }
        let j = self.insertion_block(i)?;
        self.seq.insert_at(i, c)?;
        self.sizes.adjust(j, 1)?;
        self.table.apply_point(j, c, Change::Add)?;
        self.settle(j)?;

        if self.config.strategy == Strategy::Pcn {
            use RegionKind::*;
            let moves: &[(RegionKind, RegionKind)] = match self.region_kind(j)? {
                Prev => &[
                    (Prev, Current),
                    (Prev, Current),
                    (Current, Next),
                    (Current, Next),
                ],
                Current => &[(Prev, Current), (Current, Next), (Current, Next)],
                Next => &[(Prev, Current), (Current, Next)],
                other => {
                    return Err(Error::Invariant(format!(
                        "insertion landed in reserved region {other}"
                    )))
                }
            };
            for &(from, to) in moves {
                self.region_transfer(from, to)?;
            }
        }
        self.finish_update()
    }

    pub fn delete(&mut self, i: usize) -> Result<Symbol> {
        if i >= self.len() {
            return Err(Error::OutOfRange {
                index: i,
                len: self.len(),
            });
        }
        let j = self.sizes.select_prefix(i + 1)?;
        let c = self.seq.delete_at(i)?;
        self.sizes.adjust(j, -1)?;
        self.table.apply_point(j, c, Change::Remove)?;

        if self.config.strategy == Strategy::Pcn {
            use RegionKind::*;
            // (from, to): n feeds c, c feeds p
            let moves: &[(RegionKind, RegionKind)] = match self.region_kind(j)? {
                Prev => &[
                    (Next, Current),
                    (Next, Current),
                    (Current, Prev),
                    (Current, Prev),
                ],
                Current => &[(Next, Current), (Next, Current), (Current, Prev)],
                Next => &[(Next, Current), (Current, Prev)],
                other => {
                    return Err(Error::Invariant(format!(
                        "deleted element sat in reserved region {other}"
                    )))
                }
            };
            for &(from, to) in moves {
                self.region_transfer(from, to)?;
            }
        }
        self.finish_update()?;
        Ok(c)
    }

    /// Every mode of the inclusive range `[l, r]`, sorted by symbol id.
    pub fn modes(&self, l: usize, r: usize) -> Result<ModesResult> {
        if l > r || r >= self.len() {
            return Err(Error::InvalidRange {
                l,
                r,
                len: self.len(),
            });
        }
        let first = self.sizes.select_prefix(l + 1)?;
        let last = self.sizes.select_prefix(r + 1)?;
        let first_start = self.sizes.start_of(first)?;
        let last_end = self.sizes.prefix_sum(last)?;
        // [start, end) is the run of blocks lying wholly inside [l, r]
        let (i, start) = if l == first_start {
            (first, first_start)
        } else {
            (first + 1, first_start + self.sizes.size(first)?)
        };
        let (j, end) = if r + 1 == last_end {
            (Some(last), last_end)
        } else {
            (last.checked_sub(1), last_end - self.sizes.size(last)?)
        };
        let inner = match j {
            Some(j) if i <= j => Some((i, j)),
            _ => None,
        };

        let mut margin = CountedSet::new();
        let covered = match inner {
            None => {
                self.seq.for_each_in(l, r, |c| margin.increment(c))?;
                None
            }
            Some((i, j)) => {
                if l < start {
                    self.seq
                        .for_each_in(l, start - 1, |c| margin.increment(c))?;
                }
                if end <= r {
                    self.seq.for_each_in(end, r, |c| margin.increment(c))?;
                }
                Some(self.table.cell(i, j)?)
            }
        };
        let in_blocks = |c: Symbol| covered.map_or(0, |s| s.count_of(c));

        let top = covered
            .and_then(CountedSet::max_entry)
            .map_or(0, |e| e.count());
        let best = margin
            .iter_counts()
            .map(|(c, k)| k + in_blocks(c))
            .max()
            .unwrap_or(0)
            .max(top);

        let from_margin: Vec<Symbol> = margin
            .iter_counts()
            .filter(|&(c, k)| k + in_blocks(c) == best)
            .map(|(c, _)| c)
            .collect();
        // A symbol reaching `best` inside the blocks alone cannot also sit in
        // the margin, so the two lists are disjoint.
        let mut from_blocks: Vec<Symbol> = covered
            .map(|s| {
                s.iter_ranked()
                    .take_while(|&(k, _)| k == best)
                    .map(|(_, c)| c)
                    .collect()
            })
            .unwrap_or_default();
        from_blocks.reverse();

        Ok(ModesResult {
            multiplicity: best,
            modes: merge_sorted(from_margin, from_blocks),
        })
    }

    /// The smallest-id mode of `[l, r]` and its multiplicity.
    pub fn mode(&self, l: usize, r: usize) -> Result<(usize, Symbol)> {
        let res = self.modes(l, r)?;
        let first = res
            .first()
            .ok_or_else(|| Error::Invariant("nonempty range without a mode".into()))?;
        Ok((res.multiplicity, first))
    }

    /// Recomputes every invariant from scratch and reports the first
    /// violation. Cost is `O(L·N + L² σ')`.
    pub fn audit(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Audit(msg));
        if self.sizes.total() != self.seq.len() {
            return fail(format!(
                "block sizes sum to {} but the sequence holds {}",
                self.sizes.total(),
                self.seq.len()
            ));
        }
        let expected = RegimeState::new(self.regime.n0(), self.config.alpha, self.config.strategy);
        if expected != self.regime {
            return fail(format!(
                "region layout {:?} differs from the formulas",
                self.regime
            ));
        }
        if self.sizes.slots() != self.regime.slot_count() {
            return fail(format!(
                "{} block slots for a layout of {}",
                self.sizes.slots(),
                self.regime.slot_count()
            ));
        }
        self.check_limits().or_else(|e| fail(e.to_string()))?;
        if self.table.block_count() != self.sizes.slots() {
            return fail(format!(
                "pair table spans {} blocks, index has {}",
                self.table.block_count(),
                self.sizes.slots()
            ));
        }
        let blocks = self.blocks();
        for l in 0..blocks.len() {
            let mut running = CountedSet::new();
            for (r, block) in blocks.iter().enumerate().skip(l) {
                for &c in block {
                    running.increment(c);
                }
                let cell = self.table.cell(l, r)?;
                cell.check_consistency()
                    .or_else(|e| fail(format!("cell ({l}, {r}): {e}")))?;
                if *cell != running {
                    return fail(format!(
                        "cell ({l}, {r}) holds {cell:?}, blocks hold {running:?}"
                    ));
                }
            }
        }
        Ok(())
    }

    fn check_limits(&self) -> Result<()> {
        for (slot, size) in self.sizes.sizes().into_iter().enumerate() {
            let region = self.region_at(slot)?;
            if size > region.limit {
                return Err(Error::Invariant(format!(
                    "block {slot} in region {} holds {size} > {}",
                    region.kind, region.limit
                )));
            }
        }
        Ok(())
    }

    // ---- block moves -------------------------------------------------------

    /// Moves the first element of block `i` to the end of block `i - 1`.
    pub(crate) fn move_left(&mut self, i: usize) -> Result<()> {
        if i == 0 || i >= self.sizes.slots() {
            return Err(Error::OutOfRange {
                index: i,
                len: self.sizes.slots(),
            });
        }
        if self.sizes.size(i)? == 0 {
            return Err(Error::State(format!("move_left from empty block {i}")));
        }
        let c = self.seq.get(self.sizes.start_of(i)?)?;
        self.sizes.adjust(i, -1)?;
        self.sizes.adjust(i - 1, 1)?;
        self.table.shift_left(i, c)
    }

    /// Moves the last element of block `i` to the front of block `i + 1`.
    pub(crate) fn move_right(&mut self, i: usize) -> Result<()> {
        if i + 1 >= self.sizes.slots() {
            return Err(Error::OutOfRange {
                index: i,
                len: self.sizes.slots(),
            });
        }
        if self.sizes.size(i)? == 0 {
            return Err(Error::State(format!("move_right from empty block {i}")));
        }
        let c = self.seq.get(self.sizes.prefix_sum(i)? - 1)?;
        self.sizes.adjust(i, -1)?;
        self.sizes.adjust(i + 1, 1)?;
        self.table.shift_right(i, c)
    }

    /// Moves one element from block `from` to block `to` through the blocks
    /// in between, leaving every intermediate size unchanged.
    fn shift_chain(&mut self, from: usize, to: usize) -> Result<()> {
        if to > from {
            for b in from..to {
                self.move_right(b)?;
            }
        } else {
            for b in (to + 1..=from).rev() {
                self.move_left(b)?;
            }
        }
        Ok(())
    }

    /// Moves the boundary element of region `from` into the adjacent region
    /// `to`. No-op when `from` is empty.
    pub(crate) fn region_transfer(&mut self, from: RegionKind, to: RegionKind) -> Result<()> {
        let (src, dst) = match (self.regime.region(from), self.regime.region(to)) {
            (Some(s), Some(d)) => (*s, *d),
            _ => {
                return Err(Error::Invariant(format!(
                    "transfer {from} -> {to} outside the layout"
                )))
            }
        };
        if self.sizes.range_sum(src.first_slot, src.last_slot())? == 0 {
            return Ok(());
        }
        if src.last_slot() + 1 == dst.first_slot {
            // last element of `from`
            let k = self
                .sizes
                .select_prefix(self.sizes.prefix_sum(src.last_slot())?)?;
            self.shift_chain(k, dst.first_slot)?;
            self.settle(dst.first_slot)
        } else if dst.last_slot() + 1 == src.first_slot {
            // first element of `from`
            let k = self
                .sizes
                .select_prefix(self.sizes.start_of(src.first_slot)? + 1)?;
            self.shift_chain(k, dst.last_slot())?;
            self.settle(dst.last_slot())
        } else {
            Err(Error::Invariant(format!(
                "transfer between non-adjacent regions {from} and {to}"
            )))
        }
    }

    // ---- overflow handling -------------------------------------------------

    /// Rebalances block `j` if it is over its limit, deferring to the end of
    /// the operation when no donor currently has room.
    fn settle(&mut self, j: usize) -> Result<()> {
        if self.sizes.size(j)? > self.region_at(j)?.limit && !self.rebalance(j)? {
            self.overflowed.push(j);
        }
        Ok(())
    }

    /// Shifts one element out of block `j` into the nearest-by-region block
    /// with room. Returns `false` when no such block exists.
    fn rebalance(&mut self, j: usize) -> Result<bool> {
        let home = *self.region_at(j)?;
        if let Some(k) = self.donor_in(&home)? {
            self.shift_chain(j, k)?;
            return Ok(true);
        }
        if self.config.strategy == Strategy::SimpleRebuild {
            let mut others: Vec<Region> = self
                .regime
                .regions()
                .iter()
                .filter(|r| r.kind != home.kind)
                .copied()
                .collect();
            others.sort_by_key(|r| r.first_slot.abs_diff(home.first_slot));
            for region in &others {
                if let Some(k) = self.donor_in(region)? {
                    self.shift_chain(j, k)?;
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Smallest block of `region` if it can take one more element.
    fn donor_in(&self, region: &Region) -> Result<Option<usize>> {
        let k = self
            .sizes
            .argmin_size_in(region.first_slot, region.last_slot())?;
        Ok((self.sizes.size(k)? < region.limit).then_some(k))
    }

    fn finish_update(&mut self) -> Result<()> {
        while let Some(j) = self.overflowed.pop() {
            while self.sizes.size(j)? > self.region_at(j)?.limit {
                if !self.rebalance(j)? {
                    return Err(Error::Invariant(format!(
                        "region {} is full; block {j} cannot shed its overflow",
                        self.region_at(j)?.kind
                    )));
                }
            }
        }
        self.reset_check()?;
        if self.config.audit_mode {
            if self.sizes.total() != self.seq.len() {
                return Err(Error::Audit(
                    "block sizes no longer partition the sequence".into(),
                ));
            }
            self.check_limits()
                .map_err(|e| Error::Audit(e.to_string()))?;
        }
        Ok(())
    }

    // ---- regime resets -----------------------------------------------------

    fn reset_check(&mut self) -> Result<()> {
        let len = self.len();
        let n0 = self.regime.n0();
        let kind = match self.config.strategy {
            Strategy::SimpleRebuild => {
                if len > 2 * n0 {
                    Some(ResetKind::Doubling)
                } else if len < n0.div_ceil(2) && len.max(1) != n0 {
                    Some(ResetKind::Halving)
                } else {
                    None
                }
            }
            Strategy::Pcn => {
                if len == 2 * n0 {
                    Some(ResetKind::Doubling)
                } else if n0 >= 2 && len == n0 / 2 {
                    Some(ResetKind::Halving)
                } else {
                    None
                }
            }
        };
        let Some(kind) = kind else {
            return Ok(());
        };
        if self.config.audit_mode && self.config.strategy == Strategy::Pcn {
            let must_be_empty: &[RegionKind] = match kind {
                ResetKind::Doubling => {
                    &[RegionKind::PrevPrev, RegionKind::Prev, RegionKind::Current]
                }
                ResetKind::Halving => {
                    &[RegionKind::Current, RegionKind::Next, RegionKind::NextNext]
                }
            };
            for &region in must_be_empty {
                let held = self.region_len(region);
                if held != 0 {
                    return Err(Error::Audit(format!(
                        "{kind:?} reset at length {len} found {held} elements in region {region}"
                    )));
                }
            }
        }
        self.regime = RegimeState::new(len, self.config.alpha, self.config.strategy);
        self.resets.push(ResetEvent {
            kind,
            old_n0: n0,
            new_n0: self.regime.n0(),
        });
        self.relayout();
        Ok(())
    }

    /// Places every element into the c region, filling blocks left to right
    /// up to capacity, and rebuilds the block index and pair table.
    fn relayout(&mut self) {
        let current = *self
            .regime
            .region(RegionKind::Current)
            .expect("every layout has a current region");
        let mut sizes = vec![0; self.regime.slot_count()];
        let mut left = self.seq.len();
        for size in &mut sizes[current.first_slot..=current.last_slot()] {
            *size = left.min(current.capacity);
            left -= *size;
        }
        debug_assert_eq!(left, 0, "c region too small for the reference length");

        let mut counts: Vec<BTreeMap<Symbol, usize>> = vec![BTreeMap::new(); sizes.len()];
        let mut slot = 0;
        let mut filled = 0;
        for c in self.seq.to_vec() {
            while filled == sizes[slot] {
                slot += 1;
                filled = 0;
            }
            *counts[slot].entry(c).or_insert(0) += 1;
            filled += 1;
        }
        self.sizes = BlockSizeIndex::from_sizes(&sizes);
        self.table = PairTable::from_block_counts(&counts);
    }

    // ---- helpers -----------------------------------------------------------

    /// Block that receives an element inserted at position `i`: the block
    /// holding the element currently at `i - 1` (or at `0` when `i == 0`),
    /// or the first c block when the sequence is empty.
    fn insertion_block(&self, i: usize) -> Result<usize> {
        if self.is_empty() {
            return Ok(self
                .regime
                .region(RegionKind::Current)
                .expect("every layout has a current region")
                .first_slot);
        }
        self.sizes.select_prefix(i.max(1))
    }

    fn region_at(&self, slot: usize) -> Result<&Region> {
        self.regime
            .region_of(slot)
            .ok_or_else(|| Error::Invariant(format!("block {slot} outside every region")))
    }

    fn region_kind(&self, slot: usize) -> Result<RegionKind> {
        Ok(self.region_at(slot)?.kind)
    }
}

fn merge_sorted(a: Vec<Symbol>, b: Vec<Symbol>) -> Vec<Symbol> {
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut x, mut y) = (a.into_iter().peekable(), b.into_iter().peekable());
    while let (Some(&p), Some(&q)) = (x.peek(), y.peek()) {
        if p <= q {
            out.push(p);
            x.next();
        } else {
            out.push(q);
            y.next();
        }
    }
    out.extend(x);
    out.extend(y);
    out
}

impl DynamicModes for Engine {
    fn len(&self) -> usize {
        Engine::len(self)
    }

    fn insert(&mut self, i: usize, c: Symbol) -> Result<()> {
        Engine::insert(self, i, c)
    }

    fn delete(&mut self, i: usize) -> Result<Symbol> {
        Engine::delete(self, i)
    }

    fn modes(&self, l: usize, r: usize) -> Result<ModesResult> {
        Engine::modes(self, l, r)
    }
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine")
            .field("config", &self.config)
            .field("n0", &self.regime.n0())
            .field("blocks", &self.blocks())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::modes_of;
    use crate::{symbols, Alpha};

    const A: Symbol = Symbol(1);
    const B: Symbol = Symbol(2);
    const C: Symbol = Symbol(3);
    const X: Symbol = Symbol(9);

    fn result(multiplicity: usize, ids: &[u64]) -> ModesResult {
        ModesResult {
            multiplicity,
            modes: symbols(ids),
        }
    }

    /// An engine whose blocks are forced to `sizes` over the layout of `n0`.
    fn with_layout(items: &[Symbol], n0: usize, sizes: &[usize], strategy: Strategy) -> Engine {
        let config = Config::with_strategy(strategy);
        let mut e = Engine::new(items, config).unwrap();
        e.regime = RegimeState::new(n0, config.alpha, strategy);
        assert_eq!(
            sizes.len(),
            e.regime.slot_count(),
            "layout has {} slots",
            e.regime.slot_count()
        );
        assert_eq!(sizes.iter().sum::<usize>(), items.len());
        e.sizes = BlockSizeIndex::from_sizes(sizes);
        let mut blocks = Vec::new();
        let mut at = 0;
        for &s in sizes {
            blocks.push(items[at..at + s].to_vec());
            at += s;
        }
        e.table = PairTable::build(&blocks);
        e.audit().unwrap();
        e
    }

    fn check_all_ranges(e: &Engine) {
        let items = e.to_vec();
        for l in 0..items.len() {
            for r in l..items.len() {
                assert_eq!(
                    e.modes(l, r).unwrap(),
                    modes_of(&items[l..=r]),
                    "range ({l}, {r}) of {items:?}"
                );
            }
        }
    }

    #[test]
    fn new_examples() {
        for strategy in [Strategy::SimpleRebuild, Strategy::Pcn] {
            let e = Engine::with_strategy(&[], strategy);
            assert_eq!(e.len(), 0);
            assert!(e.block_sizes().iter().all(|&s| s == 0));
            e.audit().unwrap();

            let e = Engine::with_strategy(&[A, B, A], strategy);
            assert_eq!(e.modes(0, 2).unwrap(), result(2, &[1]));
        }

        let e = Engine::new(&[A; 9], Config::default()).unwrap();
        let c = *e.regime().region(RegionKind::Current).unwrap();
        assert_eq!((c.blocks, c.capacity), (3, 5));
        assert_eq!(&e.block_sizes()[c.first_slot..=c.last_slot()], &[5, 4, 0]);
        assert_eq!(e.region_len(RegionKind::Prev), 0);
        assert_eq!(e.region_len(RegionKind::Next), 0);

        let pcn = Engine::with_strategy(&[A; 9], Strategy::Pcn);
        assert_eq!(pcn.region_len(RegionKind::PrevPrev), 0);
        assert_eq!(pcn.region_len(RegionKind::Current), 9);
        assert_eq!(pcn.regime().regions().len(), 5);
    }

    #[test]
    fn insert_examples() {
        for strategy in [Strategy::SimpleRebuild, Strategy::Pcn] {
            let mut e = Engine::with_strategy(&[A, B], strategy);
            e.insert(1, C).unwrap();
            assert_eq!(e.to_vec(), vec![A, C, B]);
            assert_eq!(e.modes(0, 2).unwrap(), result(1, &[1, 2, 3]));

            let mut e = Engine::with_strategy(&[], strategy);
            e.insert(0, C).unwrap();
            assert_eq!(e.len(), 1);
            assert_eq!(e.modes(0, 0).unwrap(), result(1, &[3]));
            assert!(matches!(e.insert(2, A), Err(Error::OutOfRange { .. })));
            e.audit().unwrap();
        }
    }

    #[test]
    fn insert_at_front_joins_first_nonempty_block() {
        // p holds [x]; c holds [a]
        let mut e = with_layout(&[X, A], 4, &[1, 0, 1, 0, 0, 0], Strategy::SimpleRebuild);
        e.insert(0, B).unwrap();
        assert!(e.resets().is_empty());
        assert_eq!(e.block_sizes(), vec![2, 0, 1, 0, 0, 0]);
        assert_eq!(e.to_vec(), vec![B, X, A]);
        e.audit().unwrap();
    }

    #[test]
    fn delete_examples() {
        for strategy in [Strategy::SimpleRebuild, Strategy::Pcn] {
            let mut e = Engine::with_strategy(&[A, B, A], strategy);
            assert_eq!(e.delete(1).unwrap(), B);
            assert_eq!(e.modes(0, 1).unwrap(), result(2, &[1]));

            let mut e = Engine::with_strategy(&[C], strategy);
            assert_eq!(e.delete(0).unwrap(), C);
            assert_eq!(e.len(), 0);
            assert!(matches!(e.delete(0), Err(Error::OutOfRange { .. })));
            e.audit().unwrap();
        }
    }

    #[test]
    fn modes_examples() {
        let e = Engine::with_strategy(&[A, B, A, B, C], Strategy::Pcn);
        assert_eq!(e.modes(0, 4).unwrap(), result(2, &[1, 2]));
        let e = Engine::with_strategy(&[X], Strategy::SimpleRebuild);
        assert_eq!(e.modes(0, 0).unwrap(), result(1, &[9]));
        assert!(matches!(e.modes(0, 1), Err(Error::InvalidRange { .. })));
        assert!(matches!(e.modes(1, 0), Err(Error::InvalidRange { .. })));
    }

    #[test]
    fn modes_living_only_inside_blocks_are_found() {
        // [x b | a a a | b x]; the margins of (1, 5) hold both b's
        let items = [X, B, A, A, A, B, X];
        let e = with_layout(&items, 7, &[2, 0, 3, 0, 2, 0, 0], Strategy::SimpleRebuild);
        assert_eq!(e.modes(1, 5).unwrap(), result(3, &[1]));
        check_all_ranges(&e);
    }

    #[test]
    fn mode_examples() {
        let e = Engine::with_strategy(&[A, B, A], Strategy::SimpleRebuild);
        assert_eq!(e.mode(0, 2).unwrap(), (2, A));
        let e = Engine::with_strategy(&[Symbol(26)], Strategy::SimpleRebuild);
        assert_eq!(e.mode(0, 0).unwrap(), (1, Symbol(26)));
        let e = Engine::with_strategy(&[B, A], Strategy::SimpleRebuild);
        assert_eq!(e.mode(0, 1).unwrap(), (1, A));
    }

    #[test]
    fn move_left_and_right() {
        let items = [A, B, C];
        let mut e = with_layout(&items, 7, &[1, 2, 0, 0, 0, 0, 0], Strategy::SimpleRebuild);
        let before = e.table.clone();
        e.move_left(1).unwrap();
        assert_eq!(e.blocks()[..2], [vec![A, B], vec![C]]);
        assert_eq!(e.to_vec(), items);
        assert_eq!(e.table.cell(0, 0).unwrap().count_of(B), 1);
        assert_eq!(e.table.cell(1, 1).unwrap().count_of(B), 0);
        assert_eq!(e.table.cell(0, 1).unwrap(), before.cell(0, 1).unwrap());
        e.audit().unwrap();

        e.move_right(0).unwrap();
        assert_eq!(e.blocks()[..2], [vec![A], vec![B, C]]);
        e.move_right(1).unwrap();
        e.move_left(2).unwrap();
        assert_eq!(e.table, before);
        assert_eq!(e.to_vec(), items);

        assert!(matches!(e.move_left(0), Err(Error::OutOfRange { .. })));
        assert!(matches!(e.move_right(6), Err(Error::OutOfRange { .. })));
        assert!(matches!(e.move_left(3), Err(Error::State(_))));
        assert!(matches!(e.move_right(4), Err(Error::State(_))));
    }

    #[test]
    fn region_transfer_examples() {
        // n0 = 2 under pcn: pp [0], p [1], c [2, 3], n [4, 5], nn [6, 7]
        let mut e = with_layout(&[A, B], 2, &[0, 1, 0, 1, 0, 0, 0, 0], Strategy::Pcn);
        e.region_transfer(RegionKind::Prev, RegionKind::Current)
            .unwrap();
        assert_eq!(e.block_sizes(), vec![0, 0, 1, 1, 0, 0, 0, 0]);
        assert_eq!(e.to_vec(), vec![A, B]);
        e.audit().unwrap();

        // p is empty now
        e.region_transfer(RegionKind::Prev, RegionKind::Current)
            .unwrap();
        assert_eq!(e.block_sizes(), vec![0, 0, 1, 1, 0, 0, 0, 0]);

        e.region_transfer(RegionKind::Current, RegionKind::Next)
            .unwrap();
        assert_eq!(e.block_sizes(), vec![0, 0, 1, 0, 1, 0, 0, 0]);
        e.region_transfer(RegionKind::Next, RegionKind::Current)
            .unwrap();
        assert_eq!(e.block_sizes(), vec![0, 0, 1, 1, 0, 0, 0, 0]);
        e.region_transfer(RegionKind::Current, RegionKind::Prev)
            .unwrap();
        assert_eq!(e.block_sizes(), vec![0, 1, 0, 1, 0, 0, 0, 0]);
        assert_eq!(e.to_vec(), vec![A, B]);
        e.audit().unwrap();

        assert!(e
            .region_transfer(RegionKind::Prev, RegionKind::Next)
            .is_err());
    }

    #[test]
    fn overflow_shifts_toward_smallest_block_in_region() {
        // c region of n0 = 7 is slots 2..=3 with capacity 4
        let items = symbols(&[1, 2, 3, 4, 5]);
        let mut e = with_layout(&items, 7, &[0, 0, 4, 1, 0, 0, 0], Strategy::SimpleRebuild);
        e.insert(2, X).unwrap();
        assert_eq!(e.block_sizes(), vec![0, 0, 4, 2, 0, 0, 0]);
        assert_eq!(e.to_vec(), symbols(&[1, 2, 9, 3, 4, 5]));
        e.audit().unwrap();
    }

    #[test]
    fn simple_rebuild_spills_into_other_regions() {
        let mut e = Engine::with_strategy(&symbols(&[1; 8]), Strategy::SimpleRebuild);
        for k in 0..8u64 {
            e.insert(3, Symbol(k)).unwrap();
            e.audit().unwrap();
        }
        assert_eq!(e.len(), 16);
        assert!(e.resets().is_empty());
        assert!(e.region_len(RegionKind::Current) < 16);
        check_all_ranges(&e);
    }

    #[test]
    fn pcn_doubling_and_halving_resets() {
        let config = Config::with_strategy(Strategy::Pcn).audited();
        let start: Vec<Symbol> = (0..64).map(|k| Symbol(k % 5)).collect();
        let mut e = Engine::new(&start, config).unwrap();
        for k in 0..64 {
            e.insert((k * 7) % (e.len() + 1), Symbol(k as u64 % 3))
                .unwrap();
            if e.len() < 128 {
                assert!(e.resets().is_empty());
            }
        }
        assert_eq!(
            e.resets(),
            &[ResetEvent {
                kind: ResetKind::Doubling,
                old_n0: 64,
                new_n0: 128
            }]
        );
        assert_eq!(e.region_len(RegionKind::Current), 128);
        e.audit().unwrap();

        while e.len() > 32 {
            e.delete((e.len() * 3) / 5).unwrap();
        }
        let kinds: Vec<(ResetKind, usize, usize)> = e
            .resets()
            .iter()
            .map(|r| (r.kind, r.old_n0, r.new_n0))
            .collect();
        assert_eq!(
            kinds,
            vec![
                (ResetKind::Doubling, 64, 128),
                (ResetKind::Halving, 128, 64),
                (ResetKind::Halving, 64, 32),
            ]
        );
        e.audit().unwrap();
        check_all_ranges(&e);
    }

    #[test]
    fn oscillation_inside_the_band_never_resets() {
        for strategy in [Strategy::SimpleRebuild, Strategy::Pcn] {
            let start: Vec<Symbol> = (0..40).map(|k| Symbol(k % 4)).collect();
            let mut e = Engine::new(&start, Config::with_strategy(strategy).audited()).unwrap();
            for k in 0..200usize {
                if (k / 10) % 2 == 0 {
                    e.insert(k % e.len(), Symbol(k as u64 % 7)).unwrap();
                } else {
                    e.delete(k % e.len()).unwrap();
                }
                assert!((30..=50).contains(&e.len()));
            }
            assert!(e.resets().is_empty(), "{strategy}");
            e.audit().unwrap();
        }
    }

    #[test]
    fn audit_catches_corrupted_cell() {
        let mut e = Engine::with_strategy(&[A, B, A, C], Strategy::Pcn);
        e.audit().unwrap();
        let slot = e.regime().region(RegionKind::Current).unwrap().first_slot;
        e.table.cell_mut(slot, slot).increment(X);
        assert!(matches!(e.audit(), Err(Error::Audit(_))));
    }

    #[test]
    fn audit_catches_broken_partition() {
        let mut e = Engine::with_strategy(&[A, B], Strategy::SimpleRebuild);
        e.sizes.adjust(0, 1).unwrap();
        assert!(matches!(e.audit(), Err(Error::Audit(_))));
    }

    #[test]
    fn other_alphas_stay_correct() {
        for (num, den) in [(1, 2), (1, 4), (2, 3)] {
            let config = Config {
                alpha: Alpha::new(num, den).unwrap(),
                strategy: Strategy::Pcn,
                audit_mode: true,
            };
            let mut e = Engine::new(&[], config).unwrap();
            for k in 0..60u64 {
                e.insert((k as usize * 5) % (e.len() + 1), Symbol(k % 4))
                    .unwrap();
            }
            e.audit().unwrap();
            check_all_ranges(&e);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::{any, prop_assert_eq, proptest};

        proptest! {
            #[test]
            fn moves_preserve_sequence_and_table(
                ids in proptest::collection::vec(0u64..4, 1..40),
                steps in proptest::collection::vec((any::<bool>(), 0usize..64), 0..60),
            ) {
                let items = symbols(&ids);
                let mut e = Engine::with_strategy(&items, Strategy::Pcn);
                let slots = e.regime().slot_count();
                for (left, k) in steps {
                    let i = k % slots;
                    let before = e.block_sizes();
                    let moved = if left { e.move_left(i) } else { e.move_right(i) };
                    if moved.is_ok() {
                        let after = e.block_sizes();
                        let (src, dst) = if left { (i, i - 1) } else { (i, i + 1) };
                        prop_assert_eq!(after[src] + 1, before[src]);
                        prop_assert_eq!(after[dst], before[dst] + 1);
                    } else {
                        prop_assert_eq!(e.block_sizes(), before);
                    }
                    prop_assert_eq!(e.to_vec(), items.clone());
                    prop_assert_eq!(&e.table, &PairTable::build(&e.blocks()));
                }
            }

            #[test]
            fn transfers_preserve_sequence(
                ids in proptest::collection::vec(0u64..4, 1..40),
                steps in proptest::collection::vec(0usize..8, 0..30),
            ) {
                let items = symbols(&ids);
                let mut e = Engine::with_strategy(&items, Strategy::Pcn);
                let pairs = [
                    (RegionKind::Prev, RegionKind::Current),
                    (RegionKind::Current, RegionKind::Next),
                    (RegionKind::Next, RegionKind::Current),
                    (RegionKind::Current, RegionKind::Prev),
                ];
                for k in steps {
                    let (from, to) = pairs[k % 4];
                    let had = e.region_len(from);
                    let got = e.region_len(to);
                    e.region_transfer(from, to).unwrap();
                    if had > 0 {
                        prop_assert_eq!(e.region_len(from), had - 1);
                        prop_assert_eq!(e.region_len(to), got + 1);
                    }
                    prop_assert_eq!(e.to_vec(), items.clone());
                    e.audit().unwrap();
                }
            }
        }
    }
}
