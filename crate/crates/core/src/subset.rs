//! Subsets of `[n]` as bit-masks and the mixed-radix encoding of `L^n`.

use std::fmt;

use crate::lattice::Elem;

/// Largest arity accepted anywhere in the crate; every routine iterates
/// over `2^n` subsets.
pub const MAX_ARITY: usize = 16;

/// A subset of `{1, …, n}`; bit `i` stands for coordinate `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(u32);

impl IndexSet {
    pub fn new(mask: u32, arity: usize) -> Option<Self> {
        (arity <= MAX_ARITY && (mask as u64) < (1u64 << arity)).then_some(IndexSet(mask))
    }

    pub const fn empty() -> Self {
        IndexSet(0)
    }

    pub fn full(arity: usize) -> Self {
        IndexSet(((1u64 << arity) - 1) as u32)
    }

    /// All subsets of `[arity]` in binary counting order.
    pub fn all(arity: usize) -> impl Iterator<Item = IndexSet> {
        (0..1u32 << arity).map(IndexSet)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn complement(self, arity: usize) -> Self {
        IndexSet(!self.0 & Self::full(arity).0)
    }

    pub fn without(self, i: usize) -> Self {
        IndexSet(self.0 & !(1 << i))
    }

    pub fn with(self, i: usize) -> Self {
        IndexSet(self.0 | 1 << i)
    }

    pub fn is_subset(self, other: IndexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Zero-based members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// Parses `{}` or `{1,3}` (one-based members).
    pub fn parse(s: &str, arity: usize) -> Option<Self> {
        let inner = s.trim().strip_prefix('{')?.strip_suffix('}')?.trim();
        if inner.is_empty() {
            return Some(IndexSet(0));
        }
        let mut mask = 0u32;
        for tok in inner.split(',') {
            let i: usize = tok.trim().parse().ok()?;
            if i == 0 || i > arity {
                return None;
            }
            mask |= 1 << (i - 1);
        }
        IndexSet::new(mask, arity)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<String> = self.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", members.join(","))
    }
}

/// Mixed-radix view of `L^n`: coordinate 1 is the most significant digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Domain {
    radix: usize,
    arity: usize,
    len: usize,
}

impl Domain {
    /// `None` when `radix^arity` overflows `usize`.
    pub fn new(radix: usize, arity: usize) -> Option<Self> {
        let len = radix.checked_pow(u32::try_from(arity).ok()?)?;
        Some(Domain { radix, arity, len })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn encode(&self, coords: &[Elem]) -> usize {
        coords.iter().fold(0, |acc, &x| acc * self.radix + x)
    }

    pub fn decode_into(&self, mut index: usize, out: &mut [Elem]) {
        for slot in out.iter_mut().rev() {
            *slot = index % self.radix;
            index /= self.radix;
        }
    }

    pub fn decode(&self, index: usize) -> Vec<Elem> {
        let mut out = vec![0; self.arity];
        self.decode_into(index, &mut out);
        out
    }

    /// All points in index order.
    pub fn points(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        (0..self.len).map(|i| self.decode(i))
    }
}

/// `base^exp` saturating at `u128::MAX`; used for enumeration guards.
pub fn saturating_count(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn index_set_display_and_parse() {
        let s = IndexSet::new(0b101, 3).unwrap();
        assert_eq!(s.to_string(), "{1,3}");
        assert_eq!(IndexSet::parse("{1, 3}", 3), Some(s));
        assert_eq!(IndexSet::parse("{}", 3), Some(IndexSet::empty()));
        assert_eq!(IndexSet::parse("{4}", 3), None);
        assert_eq!(IndexSet::parse("1,2", 3), None);
        assert_eq!(s.complement(3).to_string(), "{2}");
        assert!(IndexSet::new(8, 3).is_none());
    }

    proptest! {
        #[test]
        fn domain_encode_decode(radix in 2usize..7, arity in 1usize..5, seed in any::<u64>()) {
            let d = Domain::new(radix, arity).unwrap();
            let idx = (seed as usize) % d.len();
            prop_assert_eq!(d.encode(&d.decode(idx)), idx);
        }
    }

    #[test]
    fn first_coordinate_is_most_significant() {
        let d = Domain::new(3, 2).unwrap();
        assert_eq!(d.decode(1), vec![0, 1]);
        assert_eq!(d.decode(3), vec![1, 0]);
        assert_eq!(d.points().count(), 9);
    }
}
