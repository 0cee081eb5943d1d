//! Subsets of the ground set `{1..n}` packed into a single word.
//!
//! Element `e` is stored at bit `e - 1`, so the ground set is limited to 64
//! elements. Numeric order of the masks is colex order, which gives ranking
//! and unranking for free.

use std::fmt;

pub const MAX_GROUND: u8 = 64;

/// Binomial coefficient with `C(n, k) = 0` for `k > n`.
pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Signed variant used by formulas where the lower index can dip below zero.
pub fn binom_i(n: i64, k: i64) -> u64 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        binom(n as u64, k as u64)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    #[inline]
    pub const fn from_mask(mask: u64) -> Self {
        Subset(mask)
    }

    /// Panics on elements outside `1..=64`.
    pub fn from_elements<I: IntoIterator<Item = u8>>(elems: I) -> Self {
        let mut m = 0u64;
        for e in elems {
            assert!((1..=MAX_GROUND).contains(&e), "element {e} outside 1..=64");
            m |= 1 << (e - 1);
        }
        Subset(m)
    }

    /// `{1..n}`.
    pub fn ground(n: u8) -> Self {
        if n >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    #[inline]
    pub const fn mask(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, e: u8) -> bool {
        (1..=MAX_GROUND).contains(&e) && self.0 & (1 << (e - 1)) != 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn with(self, e: u8) -> Subset {
        Subset(self.0 | (1 << (e - 1)))
    }

    #[inline]
    pub fn without(self, e: u8) -> Subset {
        Subset(self.0 & !(1 << (e - 1)))
    }

    #[inline]
    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn min_element(self) -> Option<u8> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as u8 + 1)
    }

    pub fn max_element(self) -> Option<u8> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as u8)
    }

    /// Elements in ascending order.
    pub fn elements(self) -> impl Iterator<Item = u8> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let b = m.trailing_zeros() as u8;
                m &= m - 1;
                Some(b + 1)
            }
        })
    }

    pub fn to_vec(self) -> Vec<u8> {
        self.elements().collect()
    }

    /// Colex rank among subsets of the same size.
    pub fn colex_rank(self) -> u64 {
        self.elements()
            .enumerate()
            .map(|(i, e)| binom(e as u64 - 1, i as u64 + 1))
            .sum()
    }

    /// Inverse of [`Subset::colex_rank`] for `size`-subsets.
    pub fn colex_unrank(mut rank: u64, size: usize) -> Subset {
        let mut m = 0u64;
        for i in (1..=size as u64).rev() {
            // largest c with C(c, i) <= rank
            let mut c = i - 1;
            while binom(c + 1, i) <= rank {
                c += 1;
            }
            rank -= binom(c, i);
            m |= 1 << c;
        }
        Subset(m)
    }

    /// Image under an element map given as a 1-based lookup (`images[e - 1]`).
    pub fn map(self, images: &[u8]) -> Subset {
        Subset::from_elements(self.elements().map(|e| images[e as usize - 1]))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// All `k`-subsets of `{1..n}` in colex order (Gosper's hack).
pub fn colex_subsets(n: u8, k: usize) -> impl Iterator<Item = Subset> {
    let limit: u128 = 1u128 << n;
    let mut cur: Option<u64> = if k as u8 > n {
        None
    } else if k == 0 {
        Some(0)
    } else {
        Some(((1u128 << k) - 1) as u64)
    };
    std::iter::from_fn(move || {
        let out = cur?;
        cur = if out == 0 {
            None
        } else {
            let c = out & out.wrapping_neg();
            let r = out as u128 + c as u128;
            if r >= limit {
                None
            } else {
                let r = r as u64;
                Some((((r ^ out) >> 2) / c) | r)
            }
        };
        Some(Subset(out))
    })
}

/// All `k`-subsets of `{1..n}` ordered lexicographically by their ascending
/// element tuples.
pub fn lex_subsets(n: u8, k: usize) -> Vec<Subset> {
    let mut all: Vec<Subset> = colex_subsets(n, k).collect();
    all.sort_by(|a, b| a.elements().cmp(b.elements()));
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(4, 5), 0);
        assert_eq!(binom(0, 0), 1);
        assert_eq!(binom(60, 30), 118264581564861424);
        assert_eq!(binom_i(-1, 0), 0);
        assert_eq!(binom_i(3, -1), 0);
    }

    #[test]
    fn colex_enumeration_counts_and_order() {
        let all: Vec<Subset> = colex_subsets(5, 2).collect();
        assert_eq!(all.len(), 10);
        for (i, s) in all.iter().enumerate() {
            assert_eq!(s.colex_rank(), i as u64);
            assert_eq!(Subset::colex_unrank(i as u64, 2), *s);
        }
        assert_eq!(all[2].to_vec(), vec![2, 3]);
        assert_eq!(colex_subsets(3, 0).count(), 1);
        assert_eq!(colex_subsets(3, 4).count(), 0);
        assert_eq!(colex_subsets(64, 64).count(), 1);
    }

    #[test]
    fn lex_order() {
        let all = lex_subsets(4, 2);
        let tuples: Vec<Vec<u8>> = all.iter().map(|s| s.to_vec()).collect();
        assert_eq!(
            tuples,
            vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]
        );
    }

    #[test]
    fn element_helpers() {
        let s = Subset::from_elements([2, 5, 7]);
        assert_eq!(s.min_element(), Some(2));
        assert_eq!(s.max_element(), Some(7));
        assert!(s.contains(5) && !s.contains(1) && !s.contains(0));
        assert_eq!(s.to_string(), "2,5,7");
        assert_eq!(s.with(1).without(7).to_vec(), vec![1, 2, 5]);
    }

    proptest! {
        #[test]
        fn colex_rank_roundtrip(mask in 1u64..(1 << 20)) {
            let s = Subset::from_mask(mask);
            prop_assert_eq!(Subset::colex_unrank(s.colex_rank(), s.len()), s);
        }
    }
}
