use std::fmt;

use super::Elem;

/// A subset of a carrier with at most 64 elements, stored as a bitmask.
///
/// Ordering is by mask value, which is the deterministic order used for
/// filter lists and closed families.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElemSet(u64);

impl ElemSet {
    pub const MAX_CARRIER: usize = 64;

    pub const fn empty() -> Self {
        ElemSet(0)
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= Self::MAX_CARRIER);
        if n == 64 {
            ElemSet(u64::MAX)
        } else {
            ElemSet((1u64 << n) - 1)
        }
    }

    pub const fn from_mask(mask: u64) -> Self {
        ElemSet(mask)
    }

    pub fn singleton(a: Elem) -> Self {
        let mut s = ElemSet::empty();
        s.insert(a);
        s
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, a: Elem) -> bool {
        a < 64 && self.0 & (1u64 << a) != 0
    }

    #[inline]
    pub fn insert(&mut self, a: Elem) -> bool {
        assert!(a < Self::MAX_CARRIER, "element {a} exceeds bitmask capacity");
        let had = self.contains(a);
        self.0 |= 1u64 << a;
        !had
    }

    pub fn remove(&mut self, a: Elem) {
        if a < 64 {
            self.0 &= !(1u64 << a);
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ElemSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElemSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Elem> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(i)
            }
        })
    }

    pub fn to_vec(self) -> Vec<Elem> {
        self.iter().collect()
    }
}

impl FromIterator<Elem> for ElemSet {
    fn from_iter<I: IntoIterator<Item = Elem>>(iter: I) -> Self {
        let mut s = ElemSet::empty();
        for a in iter {
            s.insert(a);
        }
        s
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
