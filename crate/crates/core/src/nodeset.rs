//! Subsets of the ground set `[n]` as fixed-width bitmasks.
//!
//! Ground sets are limited to `n <= 16` nodes; everything downstream
//! (axiom checks, set functions, rank oracles) iterates over `2^n`
//! subsets, so desk-scale sizes are the design point.

use std::fmt;

/// Maximum supported ground-set size.
pub const MAX_GROUND: usize = 16;

/// A subset of `{0, 1, ..., n-1}` stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct NodeSet(u16);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub fn from_bits(bits: u16) -> Self {
        NodeSet(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_GROUND);
        if n == 0 {
            NodeSet(0)
        } else {
            NodeSet(u16::MAX >> (MAX_GROUND - n))
        }
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_GROUND);
        NodeSet(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_GROUND && self.0 & (1 << i) != 0
    }

    #[must_use]
    pub fn with(self, i: usize) -> Self {
        assert!(i < MAX_GROUND);
        NodeSet(self.0 | (1 << i))
    }

    #[must_use]
    pub fn without(self, i: usize) -> Self {
        assert!(i < MAX_GROUND);
        NodeSet(self.0 & !(1 << i))
    }

    pub fn insert(&mut self, i: usize) {
        *self = self.with(i);
    }

    pub fn union(self, other: Self) -> Self {
        NodeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        NodeSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        NodeSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in submask enumeration order ending with `self`.
    pub fn subsets(self) -> impl Iterator<Item = NodeSet> {
        let mask = self.0;
        let mut sub: u16 = 0;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = NodeSet(sub);
            if sub == mask {
                done = true;
            } else {
                sub = (sub.wrapping_sub(mask)) & mask;
            }
            Some(out)
        })
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = NodeSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// All `2^n` subsets of `[n]` in mask order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = NodeSet> {
    assert!(n <= MAX_GROUND);
    (0u32..(1u32 << n)).map(|m| NodeSet(m as u16))
}
