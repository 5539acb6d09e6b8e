//! Lexicographic k-subset enumeration with rank-based partitioning, used to
//! split enumeration ranges across worker threads deterministically.

/// Number of k-element subsets of an n-element set, or `None` on overflow
/// of the u128 intermediate products.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        // The running product of i consecutive prefix terms is divisible by i.
        acc = acc.checked_mul((n - k + i) as u128)? / i as u128;
    }
    Some(acc)
}

/// In-place lexicographic enumerator of the k-subsets of `0..n`.
///
/// `advance` steps to the successor; the current subset is borrowed via
/// `indices`, so no allocation happens per step. `k = 0` yields the single
/// empty subset; `k > n` yields nothing.
#[derive(Debug, Clone)]
pub struct SubsetCursor {
    n: usize,
    indices: Vec<usize>,
    exhausted: bool,
}

impl SubsetCursor {
    /// Cursor positioned at the lexicographically first k-subset.
    pub fn first(n: usize, k: usize) -> Self {
        SubsetCursor {
            n,
            indices: (0..k).collect(),
            exhausted: k > n,
        }
    }

    /// Cursor positioned at the subset of the given rank (0-based,
    /// lexicographic). `rank` must be below `binomial(n, k)`.
    pub fn at_rank(n: usize, k: usize, rank: u128) -> Self {
        debug_assert!(rank < binomial(n as u64, k as u64).unwrap_or(0).max(1) || k > n);
        let mut indices = Vec::with_capacity(k);
        let mut remaining = rank;
        let mut next = 0usize;
        for slot in 0..k {
            let tail = (k - slot - 1) as u64;
            loop {
                // Subsets that pick `next` here and fill the tail from what's left.
                let with_next = binomial((n - next - 1) as u64, tail).expect("rank fits in u128");
                if remaining < with_next {
                    indices.push(next);
                    next += 1;
                    break;
                }
                remaining -= with_next;
                next += 1;
            }
        }
        SubsetCursor {
            n,
            indices,
            exhausted: k > n,
        }
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted
    }

    /// The current subset as ascending indices into `0..n`.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Steps to the lexicographic successor; returns false once the
    /// enumeration is finished.
    pub fn advance(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        let k = self.indices.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.indices[i] < self.n - k + i {
                self.indices[i] += 1;
                for j in i + 1..k {
                    self.indices[j] = self.indices[j - 1] + 1;
                }
                return true;
            }
        }
        self.exhausted = true;
        false
    }
}

/// Owning iterator over the k-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cursor = SubsetCursor::first(n, k);
    let mut pending = !cursor.is_exhausted();
    std::iter::from_fn(move || {
        if !pending {
            return None;
        }
        let current = cursor.indices().to_vec();
        pending = cursor.advance();
        Some(current)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(4, 2), Some(6));
        assert_eq!(binomial(5, 0), Some(1));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(68, 2), Some(2278));
    }

    #[test]
    fn binomial_overflow_is_none() {
        assert_eq!(binomial(u64::MAX, 40), None);
    }

    #[test]
    fn enumerates_c42_in_order() {
        let subsets: Vec<_> = k_subsets(4, 2).collect();
        assert_eq!(
            subsets,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3],
            ]
        );
    }

    #[test]
    fn full_and_empty_subsets() {
        assert_eq!(k_subsets(3, 3).collect::<Vec<_>>(), vec![vec![0, 1, 2]]);
        assert_eq!(k_subsets(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(k_subsets(2, 3).count(), 0);
    }

    proptest! {
        #[test]
        fn count_matches_binomial(n in 0usize..9, k in 0usize..9) {
            let count = k_subsets(n, k).count() as u128;
            prop_assert_eq!(count, binomial(n as u64, k as u64).unwrap());
        }

        #[test]
        fn order_is_strictly_lexicographic(n in 1usize..8, k in 1usize..8) {
            let subsets: Vec<_> = k_subsets(n, k).collect();
            for pair in subsets.windows(2) {
                prop_assert!(pair[0] < pair[1]);
            }
        }

        #[test]
        fn rank_positioning_agrees_with_enumeration(n in 1usize..9, k in 1usize..5) {
            let all: Vec<_> = k_subsets(n, k).collect();
            for (rank, subset) in all.iter().enumerate() {
                let cursor = SubsetCursor::at_rank(n, k, rank as u128);
                prop_assert_eq!(cursor.indices(), subset.as_slice());
            }
        }
    }
}
