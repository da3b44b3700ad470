//! Arena-backed implicit treap keyed by position.
//!
//! Each node caches an [`Aggregate`] of its subtree so that positional
//! descent, range folds and custom searches all run in expected
//! `O(log n)`. Both [`CharSeq`](crate::CharSeq) and
//! [`BlockSizeIndex`](crate::BlockSizeIndex) are thin wrappers over this.

pub(crate) trait Aggregate: Copy {
    type Item: Copy;

    fn empty() -> Self;
    fn leaf(item: Self::Item) -> Self;
    fn join(left: Self, right: Self) -> Self;
    /// Number of items summarized.
    fn len(&self) -> usize;
}

/// Where a [`Treap::search`] should continue.
pub(crate) enum Step {
    Left,
    Here,
    Right,
}

const NIL: u32 = u32::MAX;

#[derive(Clone)]
struct Node<A: Aggregate> {
    item: A::Item,
    agg: A,
    prio: u32,
    left: u32,
    right: u32,
}

#[derive(Clone)]
pub(crate) struct Treap<A: Aggregate> {
    nodes: Vec<Node<A>>,
    free: Vec<u32>,
    root: u32,
    rng: u64,
}

impl<A: Aggregate> Treap<A> {
    pub(crate) fn new() -> Self {
        Self {
            nodes: Vec::new(),
            free: Vec::new(),
            root: NIL,
            rng: 0x9E37_79B9_7F4A_7C15,
        }
    }

    pub(crate) fn from_items<I: IntoIterator<Item = A::Item>>(items: I) -> Self {
        let mut t = Self::new();
        for item in items {
            let n = t.alloc(item);
            t.root = t.merge(t.root, n);
        }
        t
    }

    #[inline]
    pub(crate) fn len(&self) -> usize {
        self.agg(self.root).len()
    }

    #[inline]
    pub(crate) fn total(&self) -> A {
        self.agg(self.root)
    }

    pub(crate) fn get(&self, mut pos: usize) -> A::Item {
        debug_assert!(pos < self.len());
        let mut t = self.root;
        loop {
            let node = &self.nodes[t as usize];
            let ls = self.agg(node.left).len();
            if pos < ls {
                t = node.left;
            } else if pos == ls {
                return node.item;
            } else {
                pos -= ls + 1;
                t = node.right;
            }
        }
    }

    pub(crate) fn insert(&mut self, pos: usize, item: A::Item) {
        debug_assert!(pos <= self.len());
        let (l, r) = self.split(self.root, pos);
        let n = self.alloc(item);
        let l = self.merge(l, n);
        self.root = self.merge(l, r);
    }

    pub(crate) fn remove(&mut self, pos: usize) -> A::Item {
        debug_assert!(pos < self.len());
        let (l, rest) = self.split(self.root, pos);
        let (mid, r) = self.split(rest, 1);
        let item = self.nodes[mid as usize].item;
        self.free.push(mid);
        self.root = self.merge(l, r);
        item
    }

    pub(crate) fn update<F: FnOnce(&mut A::Item)>(&mut self, pos: usize, f: F) {
        debug_assert!(pos < self.len());
        self.update_rec(self.root, pos, f);
    }

    fn update_rec<F: FnOnce(&mut A::Item)>(&mut self, t: u32, pos: usize, f: F) {
        let (left, right) = {
            let n = &self.nodes[t as usize];
            (n.left, n.right)
        };
        let ls = self.agg(left).len();
        if pos < ls {
            self.update_rec(left, pos, f);
        } else if pos == ls {
            f(&mut self.nodes[t as usize].item);
        } else {
            self.update_rec(right, pos - ls - 1, f);
        }
        self.pull(t);
    }

    /// Aggregate over the half-open position range `[lo, hi)`.
    pub(crate) fn fold(&self, lo: usize, hi: usize) -> A {
        debug_assert!(lo <= hi && hi <= self.len());
        self.fold_rec(self.root, lo, hi)
    }

    fn fold_rec(&self, t: u32, lo: usize, hi: usize) -> A {
        if t == NIL || lo >= hi {
            return A::empty();
        }
        let node = &self.nodes[t as usize];
        if lo == 0 && hi == node.agg.len() {
            return node.agg;
        }
        let ls = self.agg(node.left).len();
        let mut acc = A::empty();
        if lo < ls {
            acc = self.fold_rec(node.left, lo, hi.min(ls));
        }
        if lo <= ls && ls < hi {
            acc = A::join(acc, A::leaf(node.item));
        }
        if hi > ls + 1 {
            let right = self.fold_rec(node.right, lo.saturating_sub(ls + 1), hi - ls - 1);
            acc = A::join(acc, right);
        }
        acc
    }

    /// Visits the items at positions `[lo, hi)` in order.
    pub(crate) fn for_each_in<F: FnMut(A::Item)>(&self, lo: usize, hi: usize, mut f: F) {
        debug_assert!(lo <= hi && hi <= self.len());
        self.visit_rec(self.root, lo, hi, &mut f);
    }

    fn visit_rec<F: FnMut(A::Item)>(&self, t: u32, lo: usize, hi: usize, f: &mut F) {
        if t == NIL || lo >= hi {
            return;
        }
        let node = &self.nodes[t as usize];
        let ls = self.agg(node.left).len();
        if lo < ls {
            self.visit_rec(node.left, lo, hi.min(ls), f);
        }
        if lo <= ls && ls < hi {
            f(node.item);
        }
        if hi > ls + 1 {
            self.visit_rec(node.right, lo.saturating_sub(ls + 1), hi - ls - 1, f);
        }
    }

    /// Descends from the root, letting `choose` inspect the left subtree's
    /// aggregate and the node's item. Returns the position where `choose`
    /// answered [`Step::Here`], or `None` if the walk fell off the tree.
    pub(crate) fn search<F>(&self, mut choose: F) -> Option<usize>
    where
        F: FnMut(&A, &A::Item) -> Step,
    {
        let mut t = self.root;
        let mut offset = 0;
        while t != NIL {
            let node = &self.nodes[t as usize];
            let left = self.agg(node.left);
            match choose(&left, &node.item) {
                Step::Left => t = node.left,
                Step::Here => return Some(offset + left.len()),
                Step::Right => {
                    offset += left.len() + 1;
                    t = node.right;
                }
            }
        }
        None
    }

    #[inline]
    fn agg(&self, t: u32) -> A {
        if t == NIL {
            A::empty()
        } else {
            self.nodes[t as usize].agg
        }
    }

    #[inline]
    fn pull(&mut self, t: u32) {
        let (left, item, right) = {
            let n = &self.nodes[t as usize];
            (n.left, n.item, n.right)
        };
        let agg = A::join(A::join(self.agg(left), A::leaf(item)), self.agg(right));
        self.nodes[t as usize].agg = agg;
    }

    fn next_prio(&mut self) -> u32 {
        // xorshift64*
        self.rng ^= self.rng >> 12;
        self.rng ^= self.rng << 25;
        self.rng ^= self.rng >> 27;
        (self.rng.wrapping_mul(0x2545_F491_4F6C_DD1D) >> 32) as u32
    }

    fn alloc(&mut self, item: A::Item) -> u32 {
        let node = Node {
            item,
            agg: A::leaf(item),
            prio: self.next_prio(),
            left: NIL,
            right: NIL,
        };
        match self.free.pop() {
            Some(slot) => {
                self.nodes[slot as usize] = node;
                slot
            }
            None => {
                assert!(self.nodes.len() < NIL as usize, "treap arena exhausted");
                self.nodes.push(node);
                (self.nodes.len() - 1) as u32
            }
        }
    }

    fn merge(&mut self, a: u32, b: u32) -> u32 {
        if a == NIL {
            return b;
        }
        if b == NIL {
            return a;
        }
        if self.nodes[a as usize].prio > self.nodes[b as usize].prio {
            let m = self.merge(self.nodes[a as usize].right, b);
            self.nodes[a as usize].right = m;
            self.pull(a);
            a
        } else {
            let m = self.merge(a, self.nodes[b as usize].left);
            self.nodes[b as usize].left = m;
            self.pull(b);
            b
        }
    }

    /// Splits `t` into its first `k` items and the rest.
    fn split(&mut self, t: u32, k: usize) -> (u32, u32) {
        if t == NIL {
            return (NIL, NIL);
        }
        let left = self.nodes[t as usize].left;
        let ls = self.agg(left).len();
        if k <= ls {
            let (l, r) = self.split(left, k);
            self.nodes[t as usize].left = r;
            self.pull(t);
            (l, t)
        } else {
            let right = self.nodes[t as usize].right;
            let (l, r) = self.split(right, k - ls - 1);
            self.nodes[t as usize].right = l;
            self.pull(t);
            (t, r)
        }
    }
}
