use std::fmt;

/// An opaque alphabet element. The library never interprets the id.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u64);

impl Symbol {
    #[inline]
    pub fn id(self) -> u64 {
        self.0
    }
}

impl From<u64> for Symbol {
    fn from(id: u64) -> Self {
        Symbol(id)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Converts a slice of raw ids into symbols.
pub fn symbols(ids: &[u64]) -> Vec<Symbol> {
    ids.iter().copied().map(Symbol).collect()
}
