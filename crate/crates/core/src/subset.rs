//! Finite sets of marked-point labels.
//!
//! Labels are the integers `1..=32`; a [`Subset`] is a bitmask with bit
//! `i - 1` standing for label `i`. The ordering is lexicographic on the
//! ascending member lists, so `{1,2} < {1,2,3} < {1,3} < {2}`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// The set `{1, ..., k}`.
    pub fn range(k: u32) -> Self {
        assert!(k <= 32);
        if k == 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << k) - 1)
        }
    }

    pub fn singleton(label: u32) -> Self {
        assert!((1..=32).contains(&label), "label {label} out of range");
        Subset(1 << (label - 1))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, label: u32) -> bool {
        (1..=32).contains(&label) && self.0 & (1 << (label - 1)) != 0
    }

    pub fn insert(self, label: u32) -> Self {
        self | Subset::singleton(label)
    }

    pub fn remove(self, label: u32) -> Self {
        Subset(self.0 & !Subset::singleton(label).0)
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Subset) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Complement inside `{1, ..., n}`.
    pub fn complement(self, n: u32) -> Self {
        Subset(Subset::range(n).0 & !self.0)
    }

    pub fn max_label(self) -> u32 {
        32 - self.0.leading_zeros()
    }

    pub fn members(self) -> Members {
        Members(self.0)
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.members().collect()
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(Subset(cur))
        })
    }

    /// Subsets of `self` of exactly `k` elements, lexicographically ordered.
    pub fn subsets_of_size(self, k: usize) -> Vec<Subset> {
        let mut out: Vec<Subset> = self.subsets().filter(|s| s.len() == k).collect();
        out.sort();
        out
    }

    /// Image under a label map.
    pub fn map(self, f: impl Fn(u32) -> u32) -> Subset {
        self.members().map(f).collect()
    }
}

impl std::ops::BitOr for Subset {
    type Output = Subset;
    fn bitor(self, rhs: Subset) -> Subset {
        Subset(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, rhs: Subset) -> Subset {
        Subset(self.0 & rhs.0)
    }
}

impl std::ops::Sub for Subset {
    type Output = Subset;
    fn sub(self, rhs: Subset) -> Subset {
        Subset(self.0 & !rhs.0)
    }
}

impl FromIterator<u32> for Subset {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        iter.into_iter()
            .fold(Subset::EMPTY, |acc, label| acc.insert(label))
    }
}

impl<const K: usize> From<[u32; K]> for Subset {
    fn from(labels: [u32; K]) -> Self {
        labels.into_iter().collect()
    }
}

pub struct Members(u32);

impl Iterator for Members {
    type Item = u32;
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(tz + 1)
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.members();
        let mut b = other.members();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) if x != y => return x.cmp(&y),
                _ => {}
            }
        }
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "{{}}");
        }
        let labels: Vec<String> = self.members().map(|m| m.to_string()).collect();
        if self.max_label() < 10 {
            write!(f, "{}", labels.concat())
        } else {
            write!(f, "{{{}}}", labels.join(","))
        }
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.members())
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let labels = Vec::<u32>::deserialize(deserializer)?;
        if let Some(bad) = labels.iter().find(|&&l| !(1..=32).contains(&l)) {
            return Err(serde::de::Error::custom(format!("label {bad} out of range")));
        }
        Ok(labels.into_iter().collect())
    }
}

/// Subsets of `ground` whose size lies in `sizes`, ordered by size and then
/// lexicographically.
pub fn graded_subsets(ground: Subset, sizes: std::ops::RangeInclusive<usize>) -> Vec<Subset> {
    let mut out = Vec::new();
    for k in sizes {
        out.extend(ground.subsets_of_size(k));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_order() {
        let mut v = vec![
            Subset::from([2]),
            Subset::from([1, 3]),
            Subset::from([1, 2, 3]),
            Subset::from([1, 2]),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                Subset::from([1, 2]),
                Subset::from([1, 2, 3]),
                Subset::from([1, 3]),
                Subset::from([2]),
            ]
        );
    }

    #[test]
    fn subset_enumeration() {
        let s = Subset::from([1, 3, 4]);
        assert_eq!(s.subsets().count(), 8);
        assert!(s.subsets().all(|t| t.is_subset(s)));
        assert_eq!(
            s.subsets_of_size(2),
            vec![
                Subset::from([1, 3]),
                Subset::from([1, 4]),
                Subset::from([3, 4])
            ]
        );
    }

    #[test]
    fn complement_and_display() {
        let s = Subset::from([1, 2]);
        assert_eq!(s.complement(5), Subset::from([3, 4, 5]));
        assert_eq!(s.to_string(), "12");
        assert_eq!(Subset::EMPTY.to_string(), "{}");
    }

    #[test]
    fn graded_order() {
        let g = graded_subsets(Subset::range(3), 1..=2);
        let names: Vec<String> = g.iter().map(|s| s.to_string()).collect();
        assert_eq!(names, ["1", "2", "3", "12", "13", "23"]);
    }
}
