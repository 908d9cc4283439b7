//! Index bookkeeping for exterior powers: increasing tuples, their
//! lexicographic ranks, sorting signs and unshuffles.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// All strictly increasing `k`-tuples from `0..n`, in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binom(n, k));
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // find rightmost slot that can still move
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Position of a strictly increasing tuple in [`subsets`]`(n, t.len())`.
pub fn subset_rank(n: usize, t: &[usize]) -> usize {
    let k = t.len();
    let mut r = 0;
    let mut start = 0;
    for (i, &ti) in t.iter().enumerate() {
        for j in start..ti {
            r += binom(n - 1 - j, k - 1 - i);
        }
        start = ti + 1;
    }
    r
}

/// Sorts `t`, returning `(negative, sorted)`; `None` on a repeated index.
pub fn sort_sign(t: &[usize]) -> Option<(bool, Vec<usize>)> {
    let mut v = t.to_vec();
    let mut neg = false;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            neg = !neg;
            j -= 1;
        }
        if j > 0 && v[j - 1] == v[j] {
            return None;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((neg, v))
}

/// An unshuffle of positions `0..p+q`: the first `p` chosen positions, the remaining `q`, and the sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    pub first: Vec<usize>,
    pub rest: Vec<usize>,
    pub negative: bool,
}

type ShuffleCache = RwLock<HashMap<(usize, usize), Arc<Vec<Shuffle>>>>;

fn cache() -> &'static ShuffleCache {
    static CACHE: OnceLock<ShuffleCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `Sh(p, q)` in lexicographic order of the first block; cached per `(p, q)`.
pub fn shuffles(p: usize, q: usize) -> Arc<Vec<Shuffle>> {
    if let Some(s) = cache().read().expect("shuffle cache").get(&(p, q)) {
        return s.clone();
    }
    let n = p + q;
    let list: Vec<Shuffle> = subsets(n, p)
        .into_iter()
        .map(|first| {
            let rest: Vec<usize> = (0..n).filter(|i| !first.contains(i)).collect();
            let inversions: usize = first.iter().enumerate().map(|(i, &s)| s - i).sum();
            Shuffle { first, rest, negative: inversions % 2 == 1 }
        })
        .collect();
    let arc = Arc::new(list);
    cache().write().expect("shuffle cache").insert((p, q), arc.clone());
    arc
}
