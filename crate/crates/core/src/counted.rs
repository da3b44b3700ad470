//! A multiset of symbols with a frequency-ordered view.

use std::collections::{BTreeMap, BTreeSet};

use crate::{Error, Result, Symbol};

/// One `(count, symbol)` pair of a [`CountedSet`], positioned in its ranked
/// order. Cursors are tied to the set version they were issued under.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cursor {
    count: usize,
    symbol: Symbol,
    version: u64,
}

impl Cursor {
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn symbol(&self) -> Symbol {
        self.symbol
    }

    pub fn entry(&self) -> (usize, Symbol) {
        (self.count, self.symbol)
    }
}

/// Promote to the tree form beyond this many distinct symbols.
const SMALL_MAX: usize = 32;
/// Fall back to the flat form at or below this many.
const SMALL_MIN: usize = 16;

/// Symbol multiplicities with a frequency-ordered view.
///
/// Small sets are one flat vector sorted by symbol, which keeps dense tables
/// of them compact. Larger ones hold two synchronized trees: a per-symbol
/// count map and a ranked set ordered by decreasing `(count, symbol id)`.
/// Either way updates and lookups cost `O(log σ')` where σ' is the number
/// of distinct symbols present. Zero counts are never stored.
#[derive(Clone)]
pub struct CountedSet {
    repr: Repr,
    version: u64,
}

#[derive(Clone)]
enum Repr {
    Small(Vec<(Symbol, usize)>),
    Large(Box<Trees>),
}

#[derive(Clone, Default)]
struct Trees {
    counts: BTreeMap<Symbol, usize>,
    ranked: BTreeSet<(usize, Symbol)>,
}

impl Trees {
    fn from_counts(counts: BTreeMap<Symbol, usize>) -> Self {
        let ranked = counts.iter().map(|(&c, &k)| (k, c)).collect();
        Trees { counts, ranked }
    }
}

impl Default for CountedSet {
    fn default() -> Self {
        CountedSet {
            repr: Repr::Small(Vec::new()),
            version: 0,
        }
    }
}

/// Iterator over a [`CountedSet`] in ranked order.
pub struct Ranked<'a> {
    inner: RankedInner<'a>,
}

enum RankedInner<'a> {
    Small(std::vec::IntoIter<(usize, Symbol)>),
    Large(std::iter::Rev<std::collections::btree_set::Iter<'a, (usize, Symbol)>>),
}

impl Iterator for Ranked<'_> {
    type Item = (usize, Symbol);

    fn next(&mut self) -> Option<Self::Item> {
        match &mut self.inner {
            RankedInner::Small(it) => it.next(),
            RankedInner::Large(it) => it.next().copied(),
        }
    }
}

/// Iterator over a [`CountedSet`] in increasing symbol order.
pub struct Counts<'a> {
    inner: CountsInner<'a>,
}

enum CountsInner<'a> {
    Small(std::slice::Iter<'a, (Symbol, usize)>),
    Large(std::collections::btree_map::Iter<'a, Symbol, usize>),
}

impl Iterator for Counts<'_> {
    type Item = (Symbol, usize);

    fn next(&mut self) -> Option<Self::Item> {
        match &mut self.inner {
            CountsInner::Small(it) => it.next().copied(),
            CountsInner::Large(it) => it.next().map(|(&c, &k)| (c, k)),
        }
    }
}

impl CountedSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of distinct symbols.
    pub fn len(&self) -> usize {
        match &self.repr {
            Repr::Small(v) => v.len(),
            Repr::Large(t) => t.counts.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn increment(&mut self, c: Symbol) {
        self.add(c, 1);
    }

    /// Adds `k` occurrences of `c`.
    pub fn add(&mut self, c: Symbol, k: usize) {
        if k == 0 {
            return;
        }
        self.version += 1;
        match &mut self.repr {
            Repr::Small(v) => match v.binary_search_by_key(&c, |e| e.0) {
                Ok(at) => v[at].1 += k,
                Err(at) if v.len() < SMALL_MAX => v.insert(at, (c, k)),
                Err(_) => {
                    let mut counts: BTreeMap<Symbol, usize> = v.iter().copied().collect();
                    counts.insert(c, k);
                    self.repr = Repr::Large(Box::new(Trees::from_counts(counts)));
                }
            },
            Repr::Large(t) => {
                let count = t.counts.entry(c).or_insert(0);
                if *count > 0 {
                    t.ranked.remove(&(*count, c));
                }
                *count += k;
                t.ranked.insert((*count, c));
            }
        }
    }

    pub fn decrement(&mut self, c: Symbol) -> Result<()> {
        let absent = || Error::Invariant(format!("decrement of symbol {c} absent from the set"));
        match &mut self.repr {
            Repr::Small(v) => {
                let at = v.binary_search_by_key(&c, |e| e.0).map_err(|_| absent())?;
                v[at].1 -= 1;
                if v[at].1 == 0 {
                    v.remove(at);
                }
            }
            Repr::Large(t) => {
                let count = t.counts.get_mut(&c).ok_or_else(absent)?;
                t.ranked.remove(&(*count, c));
                *count -= 1;
                if *count == 0 {
                    t.counts.remove(&c);
                } else {
                    t.ranked.insert((*count, c));
                }
                if t.counts.len() <= SMALL_MIN {
                    self.repr = Repr::Small(t.counts.iter().map(|(&c, &k)| (c, k)).collect());
                }
            }
        }
        self.version += 1;
        Ok(())
    }

    pub fn count_of(&self, c: Symbol) -> usize {
        match &self.repr {
            Repr::Small(v) => v.binary_search_by_key(&c, |e| e.0).map_or(0, |at| v[at].1),
            Repr::Large(t) => t.counts.get(&c).copied().unwrap_or(0),
        }
    }

    fn cursor(&self, (count, symbol): (usize, Symbol)) -> Cursor {
        Cursor {
            count,
            symbol,
            version: self.version,
        }
    }

    /// The ranked-first entry, or `None` when empty.
    pub fn max_entry(&self) -> Option<Cursor> {
        let top = match &self.repr {
            Repr::Small(v) => v.iter().map(|&(c, k)| (k, c)).max(),
            Repr::Large(t) => t.ranked.last().copied(),
        };
        top.map(|e| self.cursor(e))
    }

    /// The entry ranked right after `cursor`. Fails if the set was mutated
    /// since the cursor was issued.
    pub fn next_entry(&self, cursor: &Cursor) -> Result<Option<Cursor>> {
        if cursor.version != self.version {
            return Err(Error::StaleCursor);
        }
        let at = cursor.entry();
        let next = match &self.repr {
            Repr::Small(v) => v.iter().map(|&(c, k)| (k, c)).filter(|&e| e < at).max(),
            Repr::Large(t) => t.ranked.range(..at).next_back().copied(),
        };
        Ok(next.map(|e| self.cursor(e)))
    }

    /// Entries in ranked order: decreasing count, ties by decreasing id.
    pub fn iter_ranked(&self) -> Ranked<'_> {
        let inner = match &self.repr {
            Repr::Small(v) => {
                let mut entries: Vec<(usize, Symbol)> = v.iter().map(|&(c, k)| (k, c)).collect();
                entries.sort_unstable_by(|a, b| b.cmp(a));
                RankedInner::Small(entries.into_iter())
            }
            Repr::Large(t) => RankedInner::Large(t.ranked.iter().rev()),
        };
        Ranked { inner }
    }

    /// Entries in increasing symbol order.
    pub fn iter_counts(&self) -> Counts<'_> {
        Counts {
            inner: match &self.repr {
                Repr::Small(v) => CountsInner::Small(v.iter()),
                Repr::Large(t) => CountsInner::Large(t.counts.iter()),
            },
        }
    }

    /// Checks that the internal views hold the same associations.
    pub fn check_consistency(&self) -> Result<()> {
        match &self.repr {
            Repr::Small(v) => {
                if v.len() > SMALL_MAX {
                    return Err(Error::Invariant(format!(
                        "flat set holds {} entries",
                        v.len()
                    )));
                }
                if v.windows(2).any(|w| w[0].0 >= w[1].0) || v.iter().any(|e| e.1 == 0) {
                    return Err(Error::Invariant(
                        "flat set unsorted or holding a zero count".into(),
                    ));
                }
            }
            Repr::Large(t) => {
                if t.counts.len() != t.ranked.len() {
                    return Err(Error::Invariant(format!(
                        "count view has {} entries, ranked view {}",
                        t.counts.len(),
                        t.ranked.len()
                    )));
                }
                for (&c, &k) in &t.counts {
                    if k == 0 || !t.ranked.contains(&(k, c)) {
                        return Err(Error::Invariant(format!(
                            "symbol {c} with count {k} missing from ranked view"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

impl PartialEq for CountedSet {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.iter_counts().eq(other.iter_counts())
    }
}

impl Eq for CountedSet {}

impl std::fmt::Debug for CountedSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.iter_counts()).finish()
    }
}

impl FromIterator<Symbol> for CountedSet {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        let mut counts: BTreeMap<Symbol, usize> = BTreeMap::new();
        for c in iter {
            *counts.entry(c).or_insert(0) += 1;
        }
        let repr = if counts.len() <= SMALL_MAX {
            Repr::Small(counts.into_iter().collect())
        } else {
            Repr::Large(Box::new(Trees::from_counts(counts)))
        };
        CountedSet { repr, version: 0 }
    }
}
