use std::fmt;

use crate::{Result, Symbol};

/// The answer to a range modes query.
///
/// `modes` is sorted ascending by symbol id and is empty only for an empty
/// range. Every listed symbol occurs exactly `multiplicity` times in the
/// range and no other symbol occurs as often.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ModesResult {
    pub multiplicity: usize,
    pub modes: Vec<Symbol>,
}

impl ModesResult {
    /// Smallest-id mode, if any.
    pub fn first(&self) -> Option<Symbol> {
        self.modes.first().copied()
    }
}

/// Canonical text form: multiplicity first, then the sorted mode ids.
impl fmt::Display for ModesResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.multiplicity)?;
        for m in &self.modes {
            write!(f, " {m}")?;
        }
        Ok(())
    }
}

/// A sequence supporting the three dynamic range mode enumeration queries.
///
/// Positions are 0-based; ranges are inclusive `[l, r]`.
pub trait DynamicModes {
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Inserts `c` so that it becomes the element at position `i`.
    fn insert(&mut self, i: usize, c: Symbol) -> Result<()>;

    /// Removes and returns the element at position `i`.
    fn delete(&mut self, i: usize) -> Result<Symbol>;

    /// Enumerates every mode of the inclusive range `[l, r]`.
    fn modes(&self, l: usize, r: usize) -> Result<ModesResult>;
}
