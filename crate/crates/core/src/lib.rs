//! Dynamic range mode enumeration.
//!
//! [`Engine`] maintains a sequence of [`Symbol`]s under positional insertion
//! and deletion and enumerates all modes of any subrange in
//! `O(N^(2/3) log σ' + |output|)` time, with `O(N^(2/3) log σ')` amortized
//! updates (σ' = number of distinct symbols present).
//!
//! ```
//! use rangemode::{symbols, Engine, Strategy};
//!
//! let mut e = Engine::with_strategy(&symbols(&[1, 2, 1]), Strategy::Pcn);
//! assert_eq!(e.modes(0, 2).unwrap().to_string(), "2 1");
//! e.insert(3, 2.into()).unwrap();
//! assert_eq!(e.modes(0, 3).unwrap().to_string(), "2 1 2");
//! ```
//!
//! The building blocks are public as well: [`CharSeq`], [`BlockSizeIndex`],
//! [`CountedSet`] and [`PairTable`]. [`NaiveSeq`] is a full-scan reference
//! implementation, and [`SetFamily`] answers set intersection queries through
//! range modes.

mod blocks;
mod counted;
mod engine;
mod error;
mod modes;
pub mod oracle;
pub mod regime;
mod seq;
pub mod setintersect;
mod symbol;
pub mod table;
mod treap;

pub use blocks::BlockSizeIndex;
pub use counted::{CountedSet, Counts, Cursor, Ranked};
pub use engine::{Engine, ResetEvent, ResetKind};
pub use error::{Error, Result};
pub use modes::{DynamicModes, ModesResult};
pub use oracle::NaiveSeq;
pub use regime::{Alpha, Config, RegimeState, RegionKind, Strategy};
pub use seq::CharSeq;
pub use setintersect::SetFamily;
pub use symbol::{symbols, Symbol};
pub use table::PairTable;
