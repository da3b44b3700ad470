//! Engine configuration and the region layout of the block array.

use std::fmt;

use crate::{Error, Result};

/// Exponent `α` of the block count `L = Θ(N^α)`, as a reduced fraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Alpha {
    num: u32,
    den: u32,
}

impl Alpha {
    pub fn new(num: u32, den: u32) -> Result<Self> {
        if num == 0 || den == 0 || num >= den {
            return Err(Error::Config(format!(
                "alpha must lie strictly between 0 and 1, got {num}/{den}"
            )));
        }
        let g = gcd(num, den);
        Ok(Alpha {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(self) -> u32 {
        self.num
    }

    pub fn den(self) -> u32 {
        self.den
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Default for Alpha {
    fn default() -> Self {
        Alpha { num: 1, den: 3 }
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl std::str::FromStr for Alpha {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("cannot parse alpha {s:?}; expected e.g. 1/3"));
        let (n, d) = s.split_once('/').ok_or_else(bad)?;
        let n = n.trim().parse().map_err(|_| bad())?;
        let d = d.trim().parse().map_err(|_| bad())?;
        Alpha::new(n, d)
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// How the engine keeps block counts proportional to the sequence length.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Three regions (p, c, n); rebuild everything once the length leaves
    /// `[⌈n0/2⌉, 2·n0]`. Overflow may borrow room from any region.
    #[default]
    SimpleRebuild,
    /// Five regions (pp, p, c, n, nn) with per-update element shuffling
    /// between p, c and n so that a doubling leaves every element in n and
    /// a halving leaves every element in p.
    Pcn,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::SimpleRebuild => "simple-rebuild",
            Strategy::Pcn => "pcn",
        })
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simple-rebuild" | "simple" => Ok(Strategy::SimpleRebuild),
            "pcn" => Ok(Strategy::Pcn),
            _ => Err(Error::Config(format!(
                "unknown strategy {s:?}; expected simple-rebuild or pcn"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Config {
    pub alpha: Alpha,
    pub strategy: Strategy,
    /// Check cheap invariants after every update and assert the regime
    /// reset preconditions.
    pub audit_mode: bool,
}

impl Config {
    pub fn with_strategy(strategy: Strategy) -> Self {
        Config {
            strategy,
            ..Config::default()
        }
    }

    pub fn audited(mut self) -> Self {
        self.audit_mode = true;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RegionKind {
    PrevPrev,
    Prev,
    Current,
    Next,
    NextNext,
}

impl RegionKind {
    /// Reference-length scale factor as a fraction `(num, den)`.
    fn scale(self) -> (usize, usize) {
        match self {
            RegionKind::PrevPrev => (1, 4),
            RegionKind::Prev => (1, 2),
            RegionKind::Current => (1, 1),
            RegionKind::Next => (2, 1),
            RegionKind::NextNext => (4, 1),
        }
    }
}

impl fmt::Display for RegionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegionKind::PrevPrev => "pp",
            RegionKind::Prev => "p",
            RegionKind::Current => "c",
            RegionKind::Next => "n",
            RegionKind::NextNext => "nn",
        })
    }
}

/// A run of consecutive blocks sharing one size limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Region {
    pub kind: RegionKind,
    pub first_slot: usize,
    /// `L_x`; always at least 1.
    pub blocks: usize,
    /// `C_x`.
    pub capacity: usize,
    /// Largest block size allowed at the end of an operation. Equal to
    /// `capacity` except in p, which must absorb up to `n0` elements under
    /// the pcn shuffle.
    pub limit: usize,
}

impl Region {
    pub fn last_slot(&self) -> usize {
        self.first_slot + self.blocks - 1
    }

    pub fn contains(&self, slot: usize) -> bool {
        (self.first_slot..=self.last_slot()).contains(&slot)
    }
}

/// Region layout derived from the reference length `n0` of the last reset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegimeState {
    n0: usize,
    regions: Vec<Region>,
}

impl RegimeState {
    pub fn new(n0: usize, alpha: Alpha, strategy: Strategy) -> Self {
        let n0 = n0.max(1);
        let kinds: &[RegionKind] = match strategy {
            Strategy::SimpleRebuild => &[RegionKind::Prev, RegionKind::Current, RegionKind::Next],
            Strategy::Pcn => &[
                RegionKind::PrevPrev,
                RegionKind::Prev,
                RegionKind::Current,
                RegionKind::Next,
                RegionKind::NextNext,
            ],
        };
        let mut first_slot = 0;
        let regions = kinds
            .iter()
            .map(|&kind| {
                let (num, den) = kind.scale();
                let (blocks, capacity) = block_shape(n0 * num, den, alpha);
                let limit = if kind == RegionKind::Prev {
                    2 * capacity
                } else {
                    capacity
                };
                let region = Region {
                    kind,
                    first_slot,
                    blocks,
                    capacity,
                    limit,
                };
                first_slot += blocks;
                region
            })
            .collect();
        RegimeState { n0, regions }
    }

    pub fn n0(&self) -> usize {
        self.n0
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn slot_count(&self) -> usize {
        self.regions.iter().map(|r| r.blocks).sum()
    }

    pub fn region(&self, kind: RegionKind) -> Option<&Region> {
        self.regions.iter().find(|r| r.kind == kind)
    }

    pub fn region_of(&self, slot: usize) -> Option<&Region> {
        self.regions.iter().find(|r| r.contains(slot))
    }
}

/// `(⌈x^α⌉, ⌈x^(1-α)⌉)` for `x = a / b`.
pub fn block_shape(a: usize, b: usize, alpha: Alpha) -> (usize, usize) {
    let (p, q) = (alpha.num, alpha.den);
    (ceil_root(a, b, p, q), ceil_root(a, b, q - p, q))
}

/// Smallest `m >= 1` with `m^q >= (a/b)^p`, i.e. `⌈(a/b)^(p/q)⌉`, computed
/// exactly where it fits in 128 bits.
pub fn ceil_root(a: usize, b: usize, p: u32, q: u32) -> usize {
    let estimate = ((a as f64 / b as f64).powf(p as f64 / q as f64))
        .ceil()
        .max(1.0) as usize;
    let (a, b) = (a as u128, b as u128);
    // m^q * b^p >= a^p
    let holds = |m: usize| -> Option<bool> {
        let lhs = (m as u128).checked_pow(q)?.checked_mul(b.checked_pow(p)?)?;
        let rhs = a.checked_pow(p)?;
        Some(lhs >= rhs)
    };
    let mut m = estimate;
    match holds(m) {
        None => m,
        Some(true) => {
            while m > 1 && holds(m - 1) == Some(true) {
                m -= 1;
            }
            m
        }
        Some(false) => {
            while holds(m) == Some(false) {
                m += 1;
            }
            m
        }
    }
}
