//! Roots of `GL_n`, the sets `Phi_w`, `R(w)`, `LP(w)`, supports and `S(w, sigma)`.
//!
//! Roots are `chi_ij` with 1-based indices. Internally the constraint
//! `Inv(r) subset Phi_w` is kept as a list of forbidden positive roots: `r` must
//! keep each of them positive, so `R(w)` is the set of linear extensions of a
//! small partial order on positions.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::perm;
use crate::refset::RefSet;
use crate::weyl::WeylElement;

/// The root `chi_ij`, `i != j`, both in `1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    i: usize,
    j: usize,
}

pub type RootSet = BTreeSet<Root>;

impl Root {
    pub fn new(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return Err(Error::InvalidRoot(i, j));
        }
        Ok(Root { i, j })
    }

    pub fn i(self) -> usize {
        self.i
    }

    pub fn j(self) -> usize {
        self.j
    }

    pub fn is_positive(self) -> bool {
        self.i < self.j
    }
}

impl std::ops::Neg for Root {
    type Output = Root;

    fn neg(self) -> Root {
        Root { i: self.j, j: self.i }
    }
}

impl std::fmt::Display for Root {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "chi_{},{}", self.i, self.j)
    }
}

/// `u chi_ij = chi_{u(i), u(j)}` for a finite `u`.
pub fn act(u: &WeylElement, r: Root) -> Result<Root> {
    if !u.is_finite() {
        return Err(Error::NotFinite(u.to_string()));
    }
    let f = u.window();
    if r.i > f.len() || r.j > f.len() {
        return Err(Error::InvalidRoot(r.i, r.j));
    }
    Ok(Root {
        i: f[r.i - 1] as usize,
        j: f[r.j - 1] as usize,
    })
}

pub fn delta_plus(r: Root) -> u8 {
    r.is_positive() as u8
}

pub fn delta_minus(r: Root) -> u8 {
    1 - delta_plus(r)
}

pub fn positive_roots(n: usize) -> RootSet {
    let mut set = RootSet::new();
    for i in 1..=n {
        for j in i + 1..=n {
            set.insert(Root { i, j });
        }
    }
    set
}

/// `Inv(r) = {alpha > 0 : r alpha < 0}` for a finite `r`.
pub fn inversions(r: &WeylElement) -> Result<RootSet> {
    let p = r.to_perm()?;
    let n = p.len();
    let mut set = RootSet::new();
    for i in 0..n {
        for j in i + 1..n {
            if p[i] > p[j] {
                set.insert(Root { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(set)
}

/// The positive roots outside `Phi_w`, as 0-based pairs `(i, j)` with `i < j`.
pub(crate) fn forbidden_pairs(w: &WeylElement) -> Vec<(usize, usize)> {
    let d = w.decompose_xmy();
    let n = w.rank();
    let lambda = &d.lambda.coords;
    let x = d.x.to_perm().expect("x is finite");
    let y_inv = perm::inverse(&d.y.to_perm().expect("y is finite"));
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let value = lambda[i] - lambda[j] - (y_inv[i] > y_inv[j]) as i64 + (x[i] > x[j]) as i64;
            if value != 0 {
                out.push((i, j));
            }
        }
    }
    out
}

/// `Phi_w = {alpha in Phi_+ : <alpha, lambda> - delta^-(y^{-1} alpha) + delta^-(x alpha) = 0}`.
pub fn phi_w(w: &WeylElement) -> RootSet {
    let excluded = phi_w_complement(w);
    positive_roots(w.rank()).difference(&excluded).copied().collect()
}

/// `Phi_+ \ Phi_w`.
pub fn phi_w_complement(w: &WeylElement) -> RootSet {
    forbidden_pairs(w)
        .into_iter()
        .map(|(i, j)| Root { i: i + 1, j: j + 1 })
        .collect()
}

/// Predecessor masks: position `j` may only receive a value once every
/// position in `preds[j]` has a smaller one.
fn predecessor_masks(n: usize, forbidden: &[(usize, usize)]) -> Vec<u64> {
    let mut preds = vec![0u64; n];
    for &(i, j) in forbidden {
        preds[j] |= 1 << i;
    }
    preds
}

/// Streams `R(w)` without storing it. Each visited slice is `r^{-1}` as a
/// 0-based permutation (`r^{-1}(v)` is the position holding value `v`).
/// Returns `false` if `visit` stopped the walk early.
pub fn for_each_r_inverse(w: &WeylElement, visit: impl FnMut(&[usize]) -> bool) -> bool {
    let n = w.rank();
    let preds = predecessor_masks(n, &forbidden_pairs(w));
    for_each_linear_extension(n, &preds, visit)
}

pub(crate) fn for_each_linear_extension(
    n: usize,
    preds: &[u64],
    mut visit: impl FnMut(&[usize]) -> bool,
) -> bool {
    fn go(
        n: usize,
        preds: &[u64],
        placed: u64,
        seq: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if seq.len() == n {
            return visit(seq);
        }
        for p in 0..n {
            if placed & (1 << p) == 0 && preds[p] & !placed == 0 {
                seq.push(p);
                let keep_going = go(n, preds, placed | (1 << p), seq, visit);
                seq.pop();
                if !keep_going {
                    return false;
                }
            }
        }
        true
    }
    let mut seq = Vec::with_capacity(n);
    go(n, preds, 0, &mut seq, &mut visit)
}

/// `|R(w)| = |LP(w)|`, counted over order ideals without enumerating.
pub fn r_count(w: &WeylElement) -> u128 {
    let n = w.rank();
    let preds = predecessor_masks(n, &forbidden_pairs(w));
    let mut memo: HashMap<u64, u128> = HashMap::new();
    fn count(n: usize, preds: &[u64], placed: u64, memo: &mut HashMap<u64, u128>) -> u128 {
        if placed.count_ones() as usize == n {
            return 1;
        }
        if let Some(&c) = memo.get(&placed) {
            return c;
        }
        let mut total = 0;
        for p in 0..n {
            if placed & (1 << p) == 0 && preds[p] & !placed == 0 {
                total += count(n, preds, placed | (1 << p), memo);
            }
        }
        memo.insert(placed, total);
        total
    }
    count(n, &preds, 0, &mut memo)
}

/// `R(w) = {r^{-1} : Inv(r) subset Phi_w}` by breadth-first search from the
/// identity. Left multiplication `r -> s_a r` (length increasing) adds the
/// single root `r^{-1} alpha_a` to `Inv(r)`, and every admissible `r` is
/// reached through admissible prefixes.
pub fn r_set(w: &WeylElement) -> BTreeSet<WeylElement> {
    let n = w.rank();
    let forbidden: HashSet<(usize, usize)> = forbidden_pairs(w).into_iter().collect();
    let start = perm::identity(n);
    let mut seen: HashSet<Vec<usize>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(r) = queue.pop_front() {
        let r_inv = perm::inverse(&r);
        for a in 0..n - 1 {
            // values a and a+1 sit at positions r_inv[a] < r_inv[a+1] iff s_a r is longer
            let (i, j) = (r_inv[a], r_inv[a + 1]);
            if i > j || forbidden.contains(&(i, j)) {
                continue;
            }
            let mut next = r.clone();
            next.swap(i, j);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen.into_iter()
        .map(|r| WeylElement::from_perm(&perm::inverse(&r)))
        .collect()
}

/// `LP(w) = y^{-1} R(w)`.
pub fn lp_set(w: &WeylElement) -> BTreeSet<WeylElement> {
    let y_inv = w.decompose_xmy().y.inv();
    r_set(w).iter().map(|r| &y_inv * r).collect()
}

/// `LP(w)` filtered from all of `W_0` by its defining inequality
/// `<v alpha, y^{-1} lambda> + delta^+(v alpha) - delta^+(x y v alpha) >= 0`.
pub fn lp_by_definition(w: &WeylElement) -> Result<BTreeSet<WeylElement>> {
    let n = w.rank();
    if n > 9 {
        return Err(Error::TooLarge {
            op: "lp_by_definition",
            n,
            limit: 9,
        });
    }
    let d = w.decompose_xmy();
    let x = d.x.to_perm()?;
    let y = d.y.to_perm()?;
    let xy = perm::compose(&x, &y);
    // (y^{-1} lambda)_a = lambda_{y(a)}
    let ylam: Vec<i64> = (0..n).map(|a| d.lambda.coords[y[a]]).collect();
    let mut out = BTreeSet::new();
    perm::for_each_permutation(n, |v| {
        let xyv = perm::compose(&xy, v);
        let ok = (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let pairing = ylam[v[i]] - ylam[v[j]];
                pairing + (v[i] < v[j]) as i64 - (xyv[i] < xyv[j]) as i64 >= 0
            })
        });
        if ok {
            out.insert(WeylElement::from_perm(v));
        }
        true
    });
    Ok(out)
}

/// Support of an element of `W_a tau_1^m`: the letters of one reduced word.
pub fn supp(w: &WeylElement) -> RefSet {
    w.reduced_word().letters.into_iter().collect()
}

/// The map `s_i -> Ad(tau_1^m) sigma(s_i) = s_{n - i + m}`.
#[inline]
pub fn tau_sigma(n: usize, m: i64, i: usize) -> usize {
    (n as i64 - i as i64 + m).rem_euclid(n as i64) as usize
}

/// Closure of `set` under `s_i -> s_{n-i+m}`.
pub fn tau_sigma_closure(n: usize, m: i64, set: RefSet) -> RefSet {
    let mut out = set;
    loop {
        let image = RefSet::from_indices_mod(n, out.iter().map(|i| tau_sigma(n, m, i) as i64));
        let next = out.union(image);
        if next == out {
            return out;
        }
        out = next;
    }
}

/// `supp_sigma(w)`: the smallest `Ad(tau_1^m) sigma`-stable set containing `supp(w)`.
pub fn supp_sigma(w: &WeylElement) -> RefSet {
    tau_sigma_closure(w.rank(), w.omega_component(), supp(w))
}

/// The orbits of `s_i -> s_{n-i+m}` on the affine diagram, ordered by least index.
pub fn tau_sigma_orbits(n: usize, m: i64) -> Vec<RefSet> {
    let mut covered = RefSet::empty();
    let mut orbits = Vec::new();
    for i in 0..n {
        if !covered.contains(i) {
            let orbit = tau_sigma_closure(n, m, RefSet::singleton(i));
            covered = covered.union(orbit);
            orbits.push(orbit);
        }
    }
    orbits
}

/// Smallest `sigma`-stable subset of `S` containing `supp(u)` for finite `u`.
pub fn supp_sigma_finite(u: &WeylElement) -> Result<RefSet> {
    let p = u.to_perm()?;
    Ok(perm::sigma_close_finite(p.len(), perm::support(&p)))
}

/// `S(w, sigma)`, the largest `S' subset S` with `Ad(w) sigma(S') = S'`, by pruning.
pub fn s_w_sigma(w: &WeylElement) -> RefSet {
    let n = w.rank();
    let w_inv = w.inv();
    let image: Vec<Option<usize>> = (0..n)
        .map(|i| {
            let s = WeylElement::simple(n, (n - i) % n);
            (&(w * &s) * &w_inv).as_simple()
        })
        .collect();
    let mut set = RefSet::finite(n);
    loop {
        let mut changed = false;
        for i in set.iter() {
            match image[i] {
                Some(t) if set.contains(t) => {}
                _ => {
                    set.remove(i);
                    changed = true;
                }
            }
        }
        if !changed {
            return set;
        }
    }
}

/// Whether `Ad(w) sigma` maps `set` onto itself.
pub fn is_ad_sigma_stable(w: &WeylElement, set: RefSet) -> bool {
    let n = w.rank();
    let w_inv = w.inv();
    let mut image = RefSet::empty();
    for i in set.iter() {
        let s = WeylElement::simple(n, (n - i) % n);
        match (&(w * &s) * &w_inv).as_simple() {
            Some(t) => image.insert(t),
            None => return false,
        }
    }
    image == set
}

/// One letter from each `Ad(tau_1^m) sigma`-orbit meeting the support, counted
/// on one reduced word.
pub fn is_sigma_coxeter(w: &WeylElement) -> bool {
    let n = w.rank();
    let word = w.reduced_word();
    let orbits = tau_sigma_orbits(n, word.omega);
    orbits.iter().all(|orbit| {
        let count = word.letters.iter().filter(|&&a| orbit.contains(a)).count();
        count <= 1
    })
}

/// `sigma`-Coxeter test inside the finite group with `sigma: s_i -> s_{n-i}`.
pub fn is_sigma_coxeter_finite(u: &WeylElement) -> Result<bool> {
    let p = u.to_perm()?;
    Ok(finite_sigma_coxeter(&p))
}

pub(crate) fn finite_sigma_coxeter(p: &[usize]) -> bool {
    let n = p.len();
    let closure = perm::sigma_close_finite(n, perm::support(p));
    let orbits = closure.iter().filter(|&i| i <= n - i).count();
    perm::length(p) == orbits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::Cocharacter;

    fn root(i: usize, j: usize) -> Root {
        Root { i, j }
    }

    #[test]
    fn act_and_delta() {
        let s1 = WeylElement::simple(3, 1);
        assert_eq!(act(&s1, root(1, 2)).unwrap(), root(2, 1));
        assert_eq!(delta_plus(root(2, 1)), 0);
        assert_eq!(act(&WeylElement::identity(3), root(1, 3)).unwrap(), root(1, 3));
        assert!(act(&WeylElement::simple(3, 0), root(1, 2)).is_err());
        assert!(Root::new(3, 2, 2).is_err());
    }

    #[test]
    fn phi_w_of_identity_is_everything() {
        let e = WeylElement::identity(5);
        assert_eq!(phi_w(&e), positive_roots(5));
        assert_eq!(r_set(&e).len(), 120);
        assert_eq!(r_count(&e), 120);
    }

    #[test]
    fn r_set_bfs_matches_streaming_walk() {
        let lambda = Cocharacter::new(vec![0, 0, 0, -1, -1], -1);
        let w = &WeylElement::translation(&lambda) * &WeylElement::from_word(5, &[3, 2, 4]).unwrap();
        let bfs = r_set(&w);
        let mut streamed = BTreeSet::new();
        for_each_r_inverse(&w, |r| {
            streamed.insert(WeylElement::from_perm(r));
            true
        });
        assert_eq!(bfs, streamed);
        assert_eq!(r_count(&w), bfs.len() as u128);
    }

    #[test]
    fn orbits_for_tau() {
        let orbits = tau_sigma_orbits(5, -2);
        let as_vecs: Vec<Vec<usize>> = orbits.iter().map(|o| o.to_vec()).collect();
        assert_eq!(as_vecs, vec![vec![0, 3], vec![1, 2], vec![4]]);
    }

    #[test]
    fn finite_sigma_support() {
        let s1 = WeylElement::simple(5, 1);
        assert_eq!(supp_sigma_finite(&s1).unwrap().to_vec(), vec![1, 4]);
        let u = WeylElement::from_word(5, &[2, 3]).unwrap();
        assert_eq!(supp_sigma_finite(&u).unwrap().to_vec(), vec![2, 3]);
        assert!(supp_sigma_finite(&WeylElement::identity(5)).unwrap().is_empty());
    }

    #[test]
    fn identity_is_sigma_coxeter() {
        assert!(is_sigma_coxeter(&WeylElement::identity(4)));
        assert!(supp(&WeylElement::identity(4)).is_empty());
        assert!(!is_sigma_coxeter(&WeylElement::from_word(5, &[1, 4]).unwrap()));
        assert!(is_sigma_coxeter(&WeylElement::from_word(5, &[1, 2]).unwrap()));
    }
}
