//! Lexicographic ranking of fixed-size index subsets.
//!
//! Selection sets are sorted ascending, and the set of all `k`-subsets of
//! `{0, .., n-1}` is ordered lexicographically on that sorted form, so
//! `{0,1,2}` comes first and `{n-3,n-2,n-1}` last. Ranking and unranking give
//! every subset a stable dense index, which is what uniform action draws and
//! tabular policies key on.

/// Binomial coefficient `C(n, k)`, computed with the multiplicative formula.
///
/// Panics on intermediate overflow of `u64`, which is far beyond the instance
/// sizes this crate targets.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u64 = 1;
    for i in 0..k {
        result = result
            .checked_mul((n - i) as u64)
            .expect("binomial overflow")
            / (i as u64 + 1);
    }
    result
}

/// Rank of a sorted `k`-subset of `{0, .., n-1}` in lexicographic order.
pub fn combination_rank(n: usize, set: &[usize]) -> u64 {
    let k = set.len();
    let mut rank = 0u64;
    let mut next = 0usize;
    for (i, &c) in set.iter().enumerate() {
        for v in next..c {
            rank += binomial(n - 1 - v, k - 1 - i);
        }
        next = c + 1;
    }
    rank
}

/// Sorted `k`-subset of `{0, .., n-1}` with the given lexicographic rank.
///
/// Panics when `rank >= C(n, k)`.
pub fn combination_unrank(n: usize, k: usize, mut rank: u64) -> Vec<usize> {
    assert!(
        rank < binomial(n, k),
        "combination rank {rank} out of range for C({n}, {k})"
    );
    let mut set = Vec::with_capacity(k);
    let mut v = 0usize;
    for i in 0..k {
        loop {
            let with_v = binomial(n - 1 - v, k - 1 - i);
            if rank < with_v {
                set.push(v);
                v += 1;
                break;
            }
            rank -= with_v;
            v += 1;
        }
    }
    set
}
