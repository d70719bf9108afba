use std::fmt;

macro_rules! bitset {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(pub u64);

        impl $name {
            pub const EMPTY: Self = $name(0);

            /// The set `{0, .., n-1}`.
            pub fn full(n: usize) -> Self {
                if n >= 64 { $name(u64::MAX) } else { $name((1u64 << n) - 1) }
            }

            pub fn singleton(i: usize) -> Self {
                $name(1u64 << i)
            }

            pub fn contains(self, i: usize) -> bool {
                i < 64 && self.0 & (1u64 << i) != 0
            }

            #[must_use]
            pub fn with(self, i: usize) -> Self {
                $name(self.0 | (1u64 << i))
            }

            #[must_use]
            pub fn without(self, i: usize) -> Self {
                $name(self.0 & !(1u64 << i))
            }

            pub fn len(self) -> usize {
                self.0.count_ones() as usize
            }

            pub fn is_empty(self) -> bool {
                self.0 == 0
            }

            #[must_use]
            pub fn union(self, other: Self) -> Self {
                $name(self.0 | other.0)
            }

            #[must_use]
            pub fn intersection(self, other: Self) -> Self {
                $name(self.0 & other.0)
            }

            #[must_use]
            pub fn difference(self, other: Self) -> Self {
                $name(self.0 & !other.0)
            }

            pub fn is_subset(self, other: Self) -> bool {
                self.0 & !other.0 == 0
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

            pub fn first(self) -> Option<usize> {
                (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
            }

            /// All subsets of `self`, including the empty set and `self`.
            pub fn subsets(self) -> impl Iterator<Item = Self> {
                let full = self.0;
                let mut next = Some(0u64);
                std::iter::from_fn(move || {
                    let cur = next?;
                    next = if cur == full { None } else { Some(cur.wrapping_sub(full) & full) };
                    Some($name(cur))
                })
            }
        }

        impl FromIterator<usize> for $name {
            fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
                iter.into_iter().fold($name::EMPTY, |acc, i| acc.with(i))
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.debug_set().entries(self.iter()).finish()
            }
        }
    };
}

bitset!(
    /// A set of edge indices of one graph.
    EdgeSet
);
bitset!(
    /// A set of vertex indices of one graph.
    VertexSet
);

impl EdgeSet {
    /// Sorted index list; the sort key used for deterministic orderings.
    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl VertexSet {
    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn subsets_enumerates_power_set() {
        let s = EdgeSet::from_iter([1, 3, 4]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|x| x.is_subset(s)));
        assert_eq!(subs[0], EdgeSet::EMPTY);
        assert_eq!(*subs.last().unwrap(), s);
        assert_eq!(EdgeSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn full_handles_width() {
        assert_eq!(EdgeSet::full(0), EdgeSet::EMPTY);
        assert_eq!(EdgeSet::full(64).len(), 64);
        assert_eq!(VertexSet::full(3).to_vec(), vec![0, 1, 2]);
    }

    proptest! {
        #[test]
        fn iter_matches_membership(bits in any::<u64>()) {
            let s = EdgeSet(bits);
            let v = s.to_vec();
            prop_assert_eq!(v.len(), s.len());
            prop_assert!(v.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(v.iter().all(|&i| s.contains(i)));
            prop_assert_eq!(EdgeSet::from_iter(v), s);
        }
    }
}
