//! The dynamic symbol sequence.

use crate::treap::{Aggregate, Treap};
use crate::{Error, Result, Symbol};

#[derive(Clone, Copy)]
struct Count(usize);

impl Aggregate for Count {
    type Item = Symbol;

    #[inline]
    fn empty() -> Self {
        Count(0)
    }
    #[inline]
    fn leaf(_: Symbol) -> Self {
        Count(1)
    }
    #[inline]
    fn join(a: Self, b: Self) -> Self {
        Count(a.0 + b.0)
    }
    #[inline]
    fn len(&self) -> usize {
        self.0
    }
}

/// A sequence of symbols with `O(log N)` positional access, insertion and
/// deletion. Range reads cost `O(log N + r - l)`.
#[derive(Clone)]
pub struct CharSeq {
    tree: Treap<Count>,
}

impl Default for CharSeq {
    fn default() -> Self {
        Self::new()
    }
}

impl CharSeq {
    pub fn new() -> Self {
        Self { tree: Treap::new() }
    }

    pub fn from_symbols(symbols: &[Symbol]) -> Self {
        Self {
            tree: Treap::from_items(symbols.iter().copied()),
        }
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: usize) -> Result<Symbol> {
        self.check_index(i)?;
        Ok(self.tree.get(i))
    }

    /// Returns `A[l..=r]` in order.
    pub fn access_range(&self, l: usize, r: usize) -> Result<Vec<Symbol>> {
        self.check_range(l, r)?;
        let mut out = Vec::with_capacity(r - l + 1);
        self.tree.for_each_in(l, r + 1, |c| out.push(c));
        Ok(out)
    }

    /// Calls `f` on every symbol of `A[l..=r]` without materializing it.
    pub fn for_each_in<F: FnMut(Symbol)>(&self, l: usize, r: usize, f: F) -> Result<()> {
        self.check_range(l, r)?;
        self.tree.for_each_in(l, r + 1, f);
        Ok(())
    }

    pub fn insert_at(&mut self, i: usize, c: Symbol) -> Result<()> {
        if i > self.len() {
            return Err(Error::OutOfRange {
                index: i,
                len: self.len(),
            });
        }
        self.tree.insert(i, c);
        Ok(())
    }

    pub fn delete_at(&mut self, i: usize) -> Result<Symbol> {
        self.check_index(i)?;
        Ok(self.tree.remove(i))
    }

    pub fn to_vec(&self) -> Vec<Symbol> {
        let mut out = Vec::with_capacity(self.len());
        self.tree.for_each_in(0, self.len(), |c| out.push(c));
        out
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.len() {
            Err(Error::OutOfRange {
                index: i,
                len: self.len(),
            })
        } else {
            Ok(())
        }
    }

    fn check_range(&self, l: usize, r: usize) -> Result<()> {
        if l > r || r >= self.len() {
            Err(Error::InvalidRange {
                l,
                r,
                len: self.len(),
            })
        } else {
            Ok(())
        }
    }
}

impl std::fmt::Debug for CharSeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.to_vec()).finish()
    }
}
