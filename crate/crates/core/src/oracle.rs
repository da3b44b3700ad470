//! Naive reference implementation for differential testing.

use std::collections::BTreeMap;

use crate::{DynamicModes, Error, ModesResult, Result, Symbol};

/// A plain vector with full-scan mode enumeration. `O(N)` everything.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NaiveSeq {
    elements: Vec<Symbol>,
}

impl NaiveSeq {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_symbols(symbols: &[Symbol]) -> Self {
        Self {
            elements: symbols.to_vec(),
        }
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn insert(&mut self, i: usize, c: Symbol) -> Result<()> {
        if i > self.elements.len() {
            return Err(Error::OutOfRange {
                index: i,
                len: self.elements.len(),
            });
        }
        self.elements.insert(i, c);
        Ok(())
    }

    pub fn delete(&mut self, i: usize) -> Result<Symbol> {
        if i >= self.elements.len() {
            return Err(Error::OutOfRange {
                index: i,
                len: self.elements.len(),
            });
        }
        Ok(self.elements.remove(i))
    }

    pub fn modes(&self, l: usize, r: usize) -> Result<ModesResult> {
        if l > r || r >= self.elements.len() {
            return Err(Error::InvalidRange {
                l,
                r,
                len: self.elements.len(),
            });
        }
        Ok(modes_of(&self.elements[l..=r]))
    }
}

/// Every mode of `items`, by one counting pass.
pub fn modes_of(items: &[Symbol]) -> ModesResult {
    let mut counts: BTreeMap<Symbol, usize> = BTreeMap::new();
    for &c in items {
        *counts.entry(c).or_insert(0) += 1;
    }
    let multiplicity = counts.values().copied().max().unwrap_or(0);
    let modes = counts
        .into_iter()
        .filter(|&(_, k)| k == multiplicity)
        .map(|(c, _)| c)
        .collect();
    ModesResult {
        multiplicity,
        modes,
    }
}

impl DynamicModes for NaiveSeq {
    fn len(&self) -> usize {
        NaiveSeq::len(self)
    }

    fn insert(&mut self, i: usize, c: Symbol) -> Result<()> {
        NaiveSeq::insert(self, i, c)
    }

    fn delete(&mut self, i: usize) -> Result<Symbol> {
        NaiveSeq::delete(self, i)
    }

    fn modes(&self, l: usize, r: usize) -> Result<ModesResult> {
        NaiveSeq::modes(self, l, r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols;

    #[test]
    fn edit_examples() {
        let mut s = NaiveSeq::from_symbols(&symbols(&[1, 2]));
        s.insert(1, Symbol(9)).unwrap();
        assert_eq!(s.as_slice(), symbols(&[1, 9, 2]).as_slice());

        let mut s = NaiveSeq::from_symbols(&symbols(&[1, 2]));
        assert_eq!(s.delete(0).unwrap(), Symbol(1));
        assert_eq!(s.as_slice(), symbols(&[2]).as_slice());

        let mut s = NaiveSeq::new();
        s.insert(0, Symbol(1)).unwrap();
        assert_eq!(s.as_slice(), symbols(&[1]).as_slice());
        assert!(s.insert(3, Symbol(1)).is_err());
        assert!(s.delete(1).is_err());
    }

    #[test]
    fn modes_examples() {
        let s = NaiveSeq::from_symbols(&symbols(&[1, 2, 1, 2, 3]));
        assert_eq!(
            s.modes(0, 4).unwrap(),
            ModesResult {
                multiplicity: 2,
                modes: symbols(&[1, 2])
            }
        );
        let s = NaiveSeq::from_symbols(&symbols(&[7]));
        assert_eq!(s.modes(0, 0).unwrap().to_string(), "1 7");
        let s = NaiveSeq::from_symbols(&symbols(&[1, 1, 2, 2]));
        assert_eq!(s.modes(1, 2).unwrap().to_string(), "1 1 2");
        assert!(s.modes(2, 1).is_err());
        assert!(s.modes(0, 4).is_err());
    }
}
