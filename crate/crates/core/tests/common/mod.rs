//! Oracles built from first definitions, independent of the library's fast paths.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use gueo_core::{Cocharacter, RefSet, WeylElement};
use rand::Rng;

/// Heap-free permutation list of `0..n` (fine for n <= 8).
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

/// `l(u phi^lambda)` by the double sum over positive roots, with `u` and
/// `lambda` read off the window as residues and quotients.
pub fn length_by_formula(w: &WeylElement) -> usize {
    let n = w.rank() as i64;
    let f = w.window();
    let u: Vec<i64> = f.iter().map(|&v| (v - 1).rem_euclid(n) + 1).collect();
    let lam: Vec<i64> = f.iter().map(|&v| (v - 1).div_euclid(n)).collect();
    let mut total = 0;
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            let pairing = lam[i] - lam[j];
            total += if u[i] > u[j] { (pairing + 1).abs() } else { pairing.abs() };
        }
    }
    total as usize
}

pub fn random_element(rng: &mut impl Rng, n: usize, spread: i64) -> WeylElement {
    let mut residues: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        residues.swap(i, rng.gen_range(0..=i));
    }
    let window = residues
        .iter()
        .map(|&r| r as i64 + 1 + n as i64 * rng.gen_range(-spread..=spread))
        .collect();
    WeylElement::from_window(window, rng.gen_range(-2..=2)).unwrap()
}

pub fn random_finite(rng: &mut impl Rng, n: usize) -> WeylElement {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    WeylElement::from_perm(&p)
}

/// Every element `s_{a_1} ... s_{a_r} tau_1^m` with `r <= max_len`, by words.
pub fn ball(n: usize, max_len: usize, m: i64) -> BTreeSet<WeylElement> {
    let mut layer: HashSet<WeylElement> = HashSet::from([WeylElement::tau1(n).pow(m).with_similitude(0)]);
    let mut all: BTreeSet<WeylElement> = layer.iter().cloned().collect();
    for _ in 0..max_len {
        let mut next = HashSet::new();
        for w in &layer {
            for s in 0..n {
                let v = w.lmul_simple(s);
                if v.length() > w.length() && all.insert(v.clone()) {
                    next.insert(v);
                }
            }
        }
        layer = next;
    }
    all
}

/// Bruhat order by the subword property of one reduced word of `w`.
pub fn bruhat_by_subwords(u: &WeylElement, w: &WeylElement) -> bool {
    if u.similitude() != w.similitude() || u.omega_component() != w.omega_component() {
        return false;
    }
    let word = w.reduced_word();
    let n = w.rank();
    let tail = WeylElement::tau1(n).pow(word.omega).with_similitude(w.similitude());
    let r = word.letters.len();
    (0u32..1 << r).any(|mask| {
        let mut x = tail.clone();
        for (pos, &a) in word.letters.iter().enumerate().rev() {
            if mask & (1 << pos) != 0 {
                x = &WeylElement::simple(n, a) * &x;
            }
        }
        &x == u
    })
}

/// All `sigma`-twisted stable subsets of `S`, checked one by one.
pub fn stable_subsets(w: &WeylElement) -> Vec<RefSet> {
    let n = w.rank();
    let winv = w.inv();
    let mut out = Vec::new();
    for bits in 0u64..1 << (n - 1) {
        let set = RefSet::from_bits(bits << 1);
        let mut image = RefSet::empty();
        let mut ok = true;
        for i in set.iter() {
            let t = &(w * &WeylElement::simple(n, (n - i) % n)) * &winv;
            match (1..n).find(|&j| t == WeylElement::simple(n, j)) {
                Some(j) => image.insert(j),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && image == set {
            out.push(set);
        }
    }
    out
}

/// `{r^{-1} : Inv(r) subset Phi_w}` by filtering every permutation.
pub fn r_set_by_filter(w: &WeylElement) -> BTreeSet<WeylElement> {
    let phi = gueo_core::roots::phi_w(w);
    all_perms(w.rank())
        .into_iter()
        .map(|p| WeylElement::from_perm(&p))
        .filter(|r| gueo_core::roots::inversions(r).unwrap().is_subset(&phi))
        .map(|r| r.inv())
        .collect()
}

pub fn translation(coords: &[i64], sim: i64) -> WeylElement {
    WeylElement::translation(&Cocharacter::new(coords.to_vec(), sim))
}
