//! Finite permutations of `{0, ..., n-1}` as plain slices; the hot loops of the
//! criterion searches run on these instead of full window elements.

use crate::refset::RefSet;

pub(crate) fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

pub(crate) fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

pub(crate) fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// Frobenius on the finite Weyl group: conjugation by the longest element.
pub(crate) fn sigma(p: &[usize]) -> Vec<usize> {
    let n = p.len();
    (0..n).map(|i| n - 1 - p[n - 1 - i]).collect()
}

pub(crate) fn length(p: &[usize]) -> usize {
    let mut len = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                len += 1;
            }
        }
    }
    len
}

/// `s_i` lies in the support iff `p` does not stabilise `{0, ..., i-1}`.
pub(crate) fn support(p: &[usize]) -> RefSet {
    let mut set = RefSet::empty();
    let mut max = 0;
    for i in 1..p.len() {
        max = max.max(p[i - 1]);
        if max >= i {
            set.insert(i);
        }
    }
    set
}

/// Closure of a subset of `S` under `s_i <-> s_{n-i}`.
pub(crate) fn sigma_close_finite(n: usize, set: RefSet) -> RefSet {
    let mut out = set;
    for i in set.iter() {
        out.insert(n - i);
    }
    out
}

/// Heap's algorithm; calls `visit` once per permutation of `0..n`.
pub(crate) fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    let mut p = identity(n);
    let mut c = vec![0usize; n];
    if !visit(&p) {
        return false;
    }
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            if !visit(&p) {
                return false;
            }
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    true
}
