//! Set intersection through range modes.
//!
//! A family of sets `S_1, ..., S_N` over the universe `{0, ..., |U| - 1}` is
//! stored as one sequence of gadgets, gadget `k` being
//!
//! ```text
//! S_k (ascending), S_k^c (ascending), S_k^c (ascending), S_k (ascending)
//! ```
//!
//! so each gadget holds every universe element exactly twice. Between the
//! trailing copy of `S_i` and the leading copy of `S_j` an element `x` occurs
//! `2(j - i - 1) + [x ∈ S_i] + [x ∈ S_j]` times, hence the modes of that
//! range reach `2(j - i)` exactly when the sets intersect, and are then
//! the intersection itself.

use crate::{Config, Engine, Error, Result, Symbol};

/// Fenwick tree over membership bits, for member ranks.
#[derive(Clone, Debug)]
struct RankTree {
    tree: Vec<usize>,
}

impl RankTree {
    fn new(n: usize) -> Self {
        Self {
            tree: vec![0; n + 1],
        }
    }

    fn add(&mut self, i: usize, delta: isize) {
        let mut i = i + 1;
        while i < self.tree.len() {
            self.tree[i] = self.tree[i].wrapping_add_signed(delta);
            i += i & i.wrapping_neg();
        }
    }

    /// Number of members strictly below `i`.
    fn rank(&self, i: usize) -> usize {
        let mut i = i;
        let mut acc = 0;
        while i > 0 {
            acc += self.tree[i];
            i &= i - 1;
        }
        acc
    }
}

#[derive(Clone, Debug)]
struct Membership {
    present: Vec<bool>,
    ranks: RankTree,
    size: usize,
}

impl Membership {
    fn new(universe: usize) -> Self {
        Self {
            present: vec![false; universe],
            ranks: RankTree::new(universe),
            size: 0,
        }
    }

    fn set(&mut self, x: usize, member: bool) {
        if self.present[x] != member {
            self.present[x] = member;
            self.ranks.add(x, if member { 1 } else { -1 });
            if member {
                self.size += 1;
            } else {
                self.size -= 1;
            }
        }
    }
}

/// A dynamic family of sets answering intersection queries via
/// [`Engine::modes`]. Set indices are 1-based.
#[derive(Clone, Debug)]
pub struct SetFamily {
    universe: usize,
    sets: Vec<Membership>,
    engine: Engine,
}

impl SetFamily {
    pub fn build(sets: &[Vec<usize>], universe: usize) -> Result<Self> {
        Self::build_with(sets, universe, Config::default())
    }

    pub fn build_with(sets: &[Vec<usize>], universe: usize, config: Config) -> Result<Self> {
        let mut members = Vec::with_capacity(sets.len());
        for set in sets {
            let mut m = Membership::new(universe);
            for &x in set {
                if x >= universe {
                    return Err(Error::OutOfRange {
                        index: x,
                        len: universe,
                    });
                }
                if m.present[x] {
                    return Err(Error::Usage(format!("element {x} listed twice in one set")));
                }
                m.set(x, true);
            }
            members.push(m);
        }
        let mut sequence = Vec::with_capacity(2 * universe * sets.len());
        for m in &members {
            sequence.extend(gadget(m));
        }
        Ok(SetFamily {
            universe,
            sets: members,
            engine: Engine::new(&sequence, config)?,
        })
    }

    pub fn universe_size(&self) -> usize {
        self.universe
    }

    pub fn num_sets(&self) -> usize {
        self.sets.len()
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    /// Members of set `k` in ascending order.
    pub fn members(&self, k: usize) -> Result<Vec<usize>> {
        let m = self.set(k)?;
        Ok((0..self.universe).filter(|&x| m.present[x]).collect())
    }

    pub fn contains(&self, k: usize, x: usize) -> Result<bool> {
        self.check_element(x)?;
        Ok(self.set(k)?.present[x])
    }

    /// The engine's current contents for gadget `k`.
    pub fn gadget(&self, k: usize) -> Result<Vec<Symbol>> {
        self.set(k)?;
        if self.universe == 0 {
            return Ok(Vec::new());
        }
        let base = self.base(k);
        let all = self.engine.to_vec();
        Ok(all[base..base + 2 * self.universe].to_vec())
    }

    pub fn intersect(&self, i: usize, j: usize) -> Result<bool> {
        Ok(self.query(i, j)?.is_some())
    }

    /// `S_i ∩ S_j` in ascending order.
    pub fn enumerate_intersection(&self, i: usize, j: usize) -> Result<Vec<usize>> {
        Ok(self.query(i, j)?.unwrap_or_default())
    }

    fn query(&self, i: usize, j: usize) -> Result<Option<Vec<usize>>> {
        if i >= j {
            return Err(Error::Usage(format!(
                "intersection query needs i < j, got ({i}, {j})"
            )));
        }
        let (si, sj) = (self.set(i)?.size, self.set(j)?.size);
        let u = self.universe;
        let lo = 2 * i * u - si;
        let hi_excl = 2 * (j - 1) * u + sj;
        if hi_excl <= lo {
            return Ok(None);
        }
        let res = self.engine.modes(lo, hi_excl - 1)?;
        if res.multiplicity == 2 * (j - i) {
            Ok(Some(res.modes.iter().map(|s| s.0 as usize).collect()))
        } else {
            Ok(None)
        }
    }

    pub fn add_member(&mut self, k: usize, x: usize) -> Result<()> {
        self.check_element(x)?;
        let m = self.set(k)?;
        if m.present[x] {
            return Err(Error::Usage(format!("{x} is already in set {k}")));
        }
        let (u, s) = (self.universe, m.size);
        let rs = m.ranks.rank(x);
        let rc = x - rs;
        let base = self.base(k);
        let sym = Symbol(x as u64);
        self.engine.delete(base + u + rc)?;
        self.engine.delete(base + s + rc)?;
        self.engine.insert(base + 2 * u - s - 2 + rs, sym)?;
        self.engine.insert(base + rs, sym)?;
        self.sets[k - 1].set(x, true);
        Ok(())
    }

    pub fn remove_member(&mut self, k: usize, x: usize) -> Result<()> {
        self.check_element(x)?;
        let m = self.set(k)?;
        if !m.present[x] {
            return Err(Error::Usage(format!("{x} is not in set {k}")));
        }
        let (u, s) = (self.universe, m.size);
        let rs = m.ranks.rank(x);
        let rc = x - rs;
        let base = self.base(k);
        let sym = Symbol(x as u64);
        self.engine.delete(base + 2 * u - s + rs)?;
        self.engine.delete(base + rs)?;
        self.engine.insert(base + u - 1 + rc, sym)?;
        self.engine.insert(base + s - 1 + rc, sym)?;
        self.sets[k - 1].set(x, false);
        Ok(())
    }

    fn base(&self, k: usize) -> usize {
        2 * (k - 1) * self.universe
    }

    fn set(&self, k: usize) -> Result<&Membership> {
        if k == 0 || k > self.sets.len() {
            return Err(Error::OutOfRange {
                index: k,
                len: self.sets.len(),
            });
        }
        Ok(&self.sets[k - 1])
    }

    fn check_element(&self, x: usize) -> Result<()> {
        if x >= self.universe {
            Err(Error::OutOfRange {
                index: x,
                len: self.universe,
            })
        } else {
            Ok(())
        }
    }
}

fn gadget(m: &Membership) -> Vec<Symbol> {
    let members: Vec<Symbol> = (0..m.present.len())
        .filter(|&x| m.present[x])
        .map(|x| Symbol(x as u64))
        .collect();
    let others: Vec<Symbol> = (0..m.present.len())
        .filter(|&x| !m.present[x])
        .map(|x| Symbol(x as u64))
        .collect();
    [&members[..], &others, &others, &members].concat()
}
