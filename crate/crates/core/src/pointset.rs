//! Fixed-width point sets.
//!
//! Points of a finite space are dense indices `0..n` with `n <= 64`; a set
//! is the bit-vector with bit `i` set iff point `i` is a member. Ordering
//! of sets is the ordering of the underlying integer, which is the
//! canonical order used for every "least" choice in the crate.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest supported point count.
pub const MAX_POINTS: usize = 64;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet(u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        PointSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The full point set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_POINTS);
        if n == MAX_POINTS {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(p: usize) -> Self {
        debug_assert!(p < MAX_POINTS);
        PointSet(1u64 << p)
    }

    /// Builds a set from point indices. Panics on indices `>= 64`; use
    /// [`PointSet::try_from_points`] for untrusted input.
    pub fn from_points<I: IntoIterator<Item = usize>>(points: I) -> Self {
        points
            .into_iter()
            .fold(PointSet::EMPTY, |acc, p| acc | PointSet::singleton(p))
    }

    pub fn try_from_points<I: IntoIterator<Item = usize>>(
        points: I,
        point_count: usize,
    ) -> Result<Self, usize> {
        let mut s = PointSet::EMPTY;
        for p in points {
            if p >= point_count || p >= MAX_POINTS {
                return Err(p);
            }
            s.insert(p);
        }
        Ok(s)
    }

    pub fn contains(self, p: usize) -> bool {
        p < MAX_POINTS && self.0 & (1u64 << p) != 0
    }

    pub fn insert(&mut self, p: usize) {
        self.0 |= 1u64 << p;
    }

    pub fn remove(&mut self, p: usize) {
        self.0 &= !(1u64 << p);
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: PointSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Complement relative to `{0, .., n-1}`.
    pub fn complement(self, n: usize) -> Self {
        PointSet(!self.0 & PointSet::full(n).0)
    }

    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn max(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(63 - self.0.leading_zeros() as usize)
        }
    }

    pub fn iter(self) -> Points {
        Points(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// True when every point index is below `n`.
    pub fn within(self, n: usize) -> bool {
        self.is_subset(PointSet::full(n))
    }

    /// All subsets of `self`, in increasing canonical order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }
}

/// Ascending iterator over the points of a set.
pub struct Points(u64);

impl Iterator for Points {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let p = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Points {}

pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = PointSet;

    fn next(&mut self) -> Option<PointSet> {
        let cur = self.next?;
        // standard submask successor: (cur - mask) & mask walks submasks upward
        let succ = cur.wrapping_sub(self.mask) & self.mask;
        self.next = if succ == 0 { None } else { Some(succ) };
        Some(PointSet(cur))
    }
}

impl BitOr for PointSet {
    type Output = PointSet;
    fn bitor(self, rhs: PointSet) -> PointSet {
        PointSet(self.0 | rhs.0)
    }
}

impl BitAnd for PointSet {
    type Output = PointSet;
    fn bitand(self, rhs: PointSet) -> PointSet {
        PointSet(self.0 & rhs.0)
    }
}

impl Sub for PointSet {
    type Output = PointSet;
    fn sub(self, rhs: PointSet) -> PointSet {
        PointSet(self.0 & !rhs.0)
    }
}

impl Not for PointSet {
    type Output = PointSet;
    fn not(self) -> PointSet {
        PointSet(!self.0)
    }
}

impl std::ops::BitOrAssign for PointSet {
    fn bitor_assign(&mut self, rhs: PointSet) {
        self.0 |= rhs.0;
    }
}

impl std::ops::BitAndAssign for PointSet {
    fn bitand_assign(&mut self, rhs: PointSet) {
        self.0 &= rhs.0;
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        PointSet::from_points(iter)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let points = Vec::<usize>::deserialize(deserializer)?;
        let mut set = PointSet::EMPTY;
        for p in points {
            if p >= MAX_POINTS {
                return Err(D::Error::custom(format!(
                    "point {p} exceeds the {MAX_POINTS}-point limit"
                )));
            }
            if set.contains(p) {
                return Err(D::Error::custom(format!("point {p} listed twice")));
            }
            set.insert(p);
        }
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iteration_is_ascending() {
        let s = PointSet::from_points([5, 0, 3]);
        assert_eq!(s.to_vec(), vec![0, 3, 5]);
        assert_eq!(s.min(), Some(0));
        assert_eq!(s.max(), Some(5));
        assert_eq!(s.to_string(), "{0,3,5}");
    }

    #[test]
    fn subsets_enumerates_power_set_in_order() {
        let s = PointSet::from_points([1, 3]);
        let subs: Vec<_> = s.subsets().map(|x| x.bits()).collect();
        assert_eq!(subs, vec![0, 2, 8, 10]);
        assert_eq!(PointSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn full_and_complement() {
        assert_eq!(PointSet::full(3).bits(), 0b111);
        assert_eq!(PointSet::full(64).len(), 64);
        assert_eq!(PointSet::singleton(1).complement(3), PointSet::from_points([0, 2]));
    }

    #[test]
    fn serde_is_sorted_array() {
        let s = PointSet::from_points([2, 0]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[0,2]");
        let back: PointSet = serde_json::from_str("[2,0]").unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<PointSet>("[1,1]").is_err());
        assert!(serde_json::from_str::<PointSet>("[64]").is_err());
    }
}
