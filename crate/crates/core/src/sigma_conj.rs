//! Deligne-Lusztig reduction on words: arrows `w -> s w sigma(s)`, the class
//! relation `~`, reduction certificates and the emptiness criterion for basic `b`.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::perm;
use crate::refset::RefSet;
use crate::roots;
use crate::weyl::{SimpleRef, WeylElement};

pub const DEFAULT_BFS_BUDGET: usize = 1_000_000;

/// The node budget for equal-length class searches; `ADLV_BFS_BUDGET` overrides it.
pub fn bfs_budget() -> usize {
    std::env::var("ADLV_BFS_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BFS_BUDGET)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ArrowKind {
    LengthPreserving,
    LengthDropTwo,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionArrow {
    pub source: WeylElement,
    pub s: SimpleRef,
    pub target: WeylElement,
    pub kind: ArrowKind,
}

#[inline]
fn conjugate(w: &WeylElement, s: usize) -> WeylElement {
    w.sigma_conjugate_simple(s)
}

/// The arrow `w ->^s s w sigma(s)`; rejected when the length would go up.
pub fn arrow(w: &WeylElement, s: SimpleRef) -> Result<ReductionArrow> {
    let n = w.rank();
    let s_elem = s.element(n);
    let target = &(&s_elem * w) * &s_elem.sigma();
    let (from, to) = (w.length(), target.length());
    let kind = if to == from {
        ArrowKind::LengthPreserving
    } else if to + 2 == from {
        ArrowKind::LengthDropTwo
    } else {
        return Err(Error::IncreasingLength {
            s: s.index(),
            from,
            to,
        });
    };
    Ok(ReductionArrow {
        source: w.clone(),
        s,
        target,
        kind,
    })
}

/// An arrow at parahoric level `J`: requires `s` outside `J`, commuting with
/// every element of `J`, and `Ad(w) sigma(J) = J`.
pub fn parahoric_arrow(w: &WeylElement, s: SimpleRef, j: RefSet) -> Result<ReductionArrow> {
    let n = w.rank();
    if j.contains(s.index()) {
        return Err(Error::ParahoricGuard(format!("s{} lies in J = {j}", s.index())));
    }
    let s_elem = s.element(n);
    for t in j.iter() {
        let t_elem = WeylElement::simple(n, t);
        if &s_elem * &t_elem != &t_elem * &s_elem {
            return Err(Error::ParahoricGuard(format!(
                "s{} does not commute with s{t}",
                s.index()
            )));
        }
    }
    if !roots::is_ad_sigma_stable(w, j) {
        return Err(Error::ParahoricGuard(format!(
            "J = {j} is not stable under Ad({w}) sigma"
        )));
    }
    arrow(w, s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    /// Whether the chain ended at the expected element.
    pub reached: bool,
    /// Lengths of every node, starting with the source.
    pub lengths: Vec<usize>,
    pub end: WeylElement,
}

/// Replays `w ->^{s_k ... s_1 s_0} w'`. Letters are listed as in the
/// superscript and consumed right to left: `s_0` acts first.
pub fn verify_chain(
    w: &WeylElement,
    steps: &[SimpleRef],
    expected: &WeylElement,
) -> Result<ChainReport> {
    let mut current = w.clone();
    let mut lengths = vec![current.length()];
    for &s in steps.iter().rev() {
        let a = arrow(&current, s)?;
        current = a.target;
        lengths.push(current.length());
    }
    Ok(ChainReport {
        reached: &current == expected,
        lengths,
        end: current,
    })
}

/// The equal-length class of `w` with BFS parent links: for each reached
/// element, the element it was reached from and the letter used.
pub struct ApproxClass {
    pub root: WeylElement,
    parents: HashMap<WeylElement, Option<(WeylElement, usize)>>,
    order: Vec<WeylElement>,
}

impl ApproxClass {
    pub fn explore(w: &WeylElement, budget: usize) -> Result<Self> {
        let n = w.rank();
        let len = w.length();
        let mut parents = HashMap::from([(w.clone(), None)]);
        let mut order = vec![w.clone()];
        let mut queue = VecDeque::from([w.clone()]);
        while let Some(u) = queue.pop_front() {
            for s in 0..n {
                let v = conjugate(&u, s);
                if v.length() != len || parents.contains_key(&v) {
                    continue;
                }
                if parents.len() >= budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                parents.insert(v.clone(), Some((u.clone(), s)));
                order.push(v.clone());
                queue.push_back(v);
            }
        }
        Ok(ApproxClass {
            root: w.clone(),
            parents,
            order,
        })
    }

    pub fn contains(&self, w: &WeylElement) -> bool {
        self.parents.contains_key(w)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Elements in discovery order.
    pub fn elements(&self) -> &[WeylElement] {
        &self.order
    }

    /// Arrows leading from the root to `w`.
    pub fn path_from_root(&self, w: &WeylElement) -> Option<Vec<ReductionArrow>> {
        let mut path = Vec::new();
        let mut cur = w.clone();
        loop {
            match self.parents.get(&cur)? {
                None => break,
                Some((prev, s)) => {
                    path.push(ReductionArrow {
                        source: prev.clone(),
                        s: SimpleRef::new(w.rank(), *s).ok()?,
                        target: cur.clone(),
                        kind: ArrowKind::LengthPreserving,
                    });
                    cur = prev.clone();
                }
            }
        }
        path.reverse();
        Some(path)
    }

    /// Arrows leading from `w` back to the root; each BFS edge is reversible
    /// with the same letter.
    pub fn path_to_root(&self, w: &WeylElement) -> Option<Vec<ReductionArrow>> {
        let forward = self.path_from_root(w)?;
        Some(
            forward
                .into_iter()
                .rev()
                .map(|a| ReductionArrow {
                    source: a.target,
                    s: a.s,
                    target: a.source,
                    kind: ArrowKind::LengthPreserving,
                })
                .collect(),
        )
    }
}

/// `w ~ w'`: reachable through length-preserving arrows.
pub fn approx_equiv(w: &WeylElement, w2: &WeylElement, budget: usize) -> Result<bool> {
    if w.rank() != w2.rank() {
        return Err(Error::RankMismatch(w.rank(), w2.rank()));
    }
    if w.length() != w2.length()
        || w.similitude() != w2.similitude()
        || w.omega_component() != w2.omega_component()
    {
        return Ok(false);
    }
    Ok(ApproxClass::explore(w, budget)?.contains(w2))
}

/// `w ~ w'' ->^s s w'' sigma(s) ~ target` with a single length drop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub to_pivot: Vec<ReductionArrow>,
    pub drop: ReductionArrow,
    pub to_target: Vec<ReductionArrow>,
}

impl ReductionCertificate {
    pub fn arrows(&self) -> impl Iterator<Item = &ReductionArrow> {
        self.to_pivot
            .iter()
            .chain(std::iter::once(&self.drop))
            .chain(self.to_target.iter())
    }

    /// Recomputes every arrow from scratch: products, lengths, kinds and continuity.
    pub fn verify(&self, w: &WeylElement, target: &WeylElement) -> bool {
        let mut current = w.clone();
        let mut drops = 0;
        for a in self.arrows() {
            if a.source != current {
                return false;
            }
            let recomputed = match arrow(&a.source, a.s) {
                Ok(r) => r,
                Err(_) => return false,
            };
            if recomputed.target != a.target || recomputed.kind != a.kind {
                return false;
            }
            if a.kind == ArrowKind::LengthDropTwo {
                drops += 1;
            }
            current = recomputed.target;
        }
        drops == 1 && self.drop.kind == ArrowKind::LengthDropTwo && &current == target
    }

    pub fn letters(&self) -> RefSet {
        self.arrows().map(|a| a.s.index()).collect()
    }
}

/// Searches a certificate `w ~ w'' -> s w'' sigma(s) ~ target`.
pub fn find_reduction(
    w: &WeylElement,
    target: &WeylElement,
    budget: usize,
) -> Result<Option<ReductionCertificate>> {
    if w.rank() != target.rank() {
        return Err(Error::RankMismatch(w.rank(), target.rank()));
    }
    if target.length() + 2 != w.length() {
        return Err(Error::Precondition(format!(
            "target length {} is not {} - 2",
            target.length(),
            w.length()
        )));
    }
    let source_class = ApproxClass::explore(w, budget)?;
    let target_class = ApproxClass::explore(target, budget)?;
    let n = w.rank();
    let drop_len = target.length();
    for u in source_class.elements() {
        for s in 0..n {
            let v = conjugate(u, s);
            if v.length() != drop_len || !target_class.contains(&v) {
                continue;
            }
            let cert = ReductionCertificate {
                to_pivot: source_class.path_from_root(u).expect("u is in the class"),
                drop: ReductionArrow {
                    source: u.clone(),
                    s: SimpleRef::new(n, s)?,
                    target: v.clone(),
                    kind: ArrowKind::LengthDropTwo,
                },
                to_target: target_class.path_to_root(&v).expect("v is in the class"),
            };
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmptinessVerdict {
    pub empty: bool,
    /// For the `R`-form a finite `r` with `r^{-1} in R(w)`; for the `LP`-form
    /// an element `v in LP(w)`.
    pub witness: Option<WeylElement>,
}

impl EmptinessVerdict {
    fn nonempty() -> Self {
        EmptinessVerdict {
            empty: false,
            witness: None,
        }
    }
}

/// The translation-free part `y` of `w = phi^lambda y`, checking `w in ^S W~`.
fn min_coset_y(w: &WeylElement) -> Result<Vec<usize>> {
    if !w.is_min_coset_rep() {
        return Err(Error::NotMinCosetRep(w.to_string()));
    }
    let d = w.decompose_xmy();
    debug_assert_eq!(d.x, WeylElement::identity(w.rank()));
    d.y.to_perm()
}

/// True iff some `i` has neither `s_i` nor `s_{n-i}` in `supp(t)`, i.e. the
/// `sigma`-support of `t` is a proper subset of `S`.
#[inline]
fn sigma_support_proper(t: &[usize]) -> bool {
    let n = t.len();
    // missing[i]: t stabilises {0, ..., i-1}
    let mut missing = [false; crate::weyl::MAX_RANK + 1];
    let mut max = 0;
    for i in 1..n {
        max = max.max(t[i - 1]);
        missing[i] = max == i - 1;
    }
    (1..n).any(|i| missing[i] && missing[n - i])
}

/// Condition (i): `W_{supp_sigma(w)}` is infinite, which for the affine `A`
/// cycle means `supp_sigma(w)` is all of `S~`.
pub fn support_is_full(w: &WeylElement) -> bool {
    roots::supp_sigma(w) == RefSet::affine(w.rank())
}

/// `X_w(b) = empty` for basic `b`, via the `R`-form of condition (ii): some
/// `r^{-1} in R(w)` with `supp_sigma(r y sigma(r)^{-1})` a proper subset of `S`.
pub fn is_empty_basic(w: &WeylElement) -> Result<EmptinessVerdict> {
    let y = min_coset_y(w)?;
    if !support_is_full(w) {
        return Ok(EmptinessVerdict::nonempty());
    }
    let n = w.rank();
    let mut witness = None;
    let mut r = vec![0; n];
    let mut t = vec![0; n];
    roots::for_each_r_inverse(w, |r_inv| {
        for (v, &pos) in r_inv.iter().enumerate() {
            r[pos] = v;
        }
        // sigma(r)^{-1} = sigma(r^{-1}), so t = r y sigma(r^{-1})
        for i in 0..n {
            t[i] = r[y[n - 1 - r_inv[n - 1 - i]]];
        }
        if sigma_support_proper(&t) {
            witness = Some(WeylElement::from_perm(&r));
            return false;
        }
        true
    });
    Ok(EmptinessVerdict {
        empty: witness.is_some(),
        witness,
    })
}

/// The same criterion through the `LP`-form of condition (ii): some
/// `v in LP(w)` with `supp_sigma(sigma^{-1}(v)^{-1} p(w) v)` a proper subset of `S`.
pub fn is_empty_basic_lp_form(w: &WeylElement) -> Result<EmptinessVerdict> {
    if !w.is_min_coset_rep() {
        return Err(Error::NotMinCosetRep(w.to_string()));
    }
    if !support_is_full(w) {
        return Ok(EmptinessVerdict::nonempty());
    }
    let d = w.decompose_xmy();
    let p = w.finite_part().to_perm()?;
    let y_inv = perm::inverse(&d.y.to_perm()?);
    let mut witness = None;
    roots::for_each_r_inverse(w, |r_inv| {
        let v = perm::compose(&y_inv, r_inv);
        let t = perm::compose(&perm::inverse(&perm::sigma(&v)), &perm::compose(&p, &v));
        if sigma_support_proper(&t) {
            witness = Some(WeylElement::from_perm(&v));
            return false;
        }
        true
    });
    Ok(EmptinessVerdict {
        empty: witness.is_some(),
        witness,
    })
}

/// The `R`-form criterion decided over parabolic cosets instead of single
/// elements.
///
/// For `t = r y sigma(r)^{-1}` to miss `s_i` and `s_{n-i}` only the sets
/// `X = r^{-1}{1..i}` and `Z = r^{-1}{1..n-i}` matter: they must satisfy
/// `y iota (Z^c) = X` and `y iota (X^c) = Z` with `iota(j) = n + 1 - j`. Among
/// the `r` with given `X subset Z` the one increasing on each block has the
/// smallest inversion set, so it alone needs testing against `Phi_w`.
pub fn is_empty_basic_by_cosets(w: &WeylElement) -> Result<EmptinessVerdict> {
    let y = min_coset_y(w)?;
    if !support_is_full(w) {
        return Ok(EmptinessVerdict::nonempty());
    }
    let n = w.rank();
    let forbidden = roots::forbidden_pairs(w);
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    // image of a position set under y iota
    let y_iota = |set: u64| -> u64 {
        let mut out = 0u64;
        for a in 0..n {
            if set & (1 << a) != 0 {
                out |= 1 << y[n - 1 - a];
            }
        }
        out
    };
    for i in 1..=n / 2 {
        let big = n - i;
        let mut found = None;
        for_each_subset(n, big, |z| {
            let x = y_iota(full & !z);
            if x & !z != 0 || y_iota(full & !x) != z {
                return true;
            }
            // block-increasing r: X gets the smallest values, then Z \ X, then the rest
            let mut r = vec![0usize; n];
            let mut next = 0;
            for block in [x, z & !x, full & !z] {
                for (a, slot) in r.iter_mut().enumerate() {
                    if block & (1 << a) != 0 {
                        *slot = next;
                        next += 1;
                    }
                }
            }
            if forbidden.iter().all(|&(a, b)| r[a] < r[b]) {
                found = Some(r);
                return false;
            }
            true
        });
        if let Some(r) = found {
            return Ok(EmptinessVerdict {
                empty: true,
                witness: Some(WeylElement::from_perm(&r)),
            });
        }
    }
    Ok(EmptinessVerdict::nonempty())
}

/// Visits all `size`-element subsets of `0..n` as bitmasks (Gosper's hack).
fn for_each_subset(n: usize, size: usize, mut visit: impl FnMut(u64) -> bool) {
    if size > n {
        return;
    }
    if size == 0 {
        visit(0);
        return;
    }
    let limit = 1u128 << n;
    let mut set: u64 = if size == 64 { u64::MAX } else { (1u64 << size) - 1 };
    loop {
        if !visit(set) {
            return;
        }
        let c = set & set.wrapping_neg();
        let r = set as u128 + c as u128;
        if r >= limit {
            return;
        }
        let r = r as u64;
        set = (((r ^ set) >> 2) / c) | r;
    }
}

/// Independent recheck of an `R`-form witness: `Inv(r) subset Phi_w` and
/// `supp_sigma(r y sigma(r)^{-1})` a proper subset of `S`.
pub fn check_emptiness_witness(w: &WeylElement, r: &WeylElement) -> Result<bool> {
    let n = w.rank();
    let inv = roots::inversions(r)?;
    let phi = roots::phi_w(w);
    if !inv.is_subset(&phi) {
        return Ok(false);
    }
    let y = w.decompose_xmy().y;
    let t = &(r * &y) * &r.sigma().inv();
    let support = roots::supp_sigma_finite(&t)?;
    Ok(support.is_subset(RefSet::finite(n)) && support != RefSet::finite(n))
}

/// Some `v in LP(w)` makes `sigma^{-1}(v)^{-1} p(w) v` a `sigma`-Coxeter element.
pub fn positive_coxeter_generic(w: &WeylElement) -> bool {
    positive_coxeter_witness(w).is_some()
}

pub fn positive_coxeter_witness(w: &WeylElement) -> Option<WeylElement> {
    let d = w.decompose_xmy();
    let p = w.finite_part().to_perm().expect("finite part");
    let y_inv = perm::inverse(&d.y.to_perm().expect("y is finite"));
    let mut witness = None;
    roots::for_each_r_inverse(w, |r_inv| {
        let v = perm::compose(&y_inv, r_inv);
        let t = perm::compose(&perm::inverse(&perm::sigma(&v)), &perm::compose(&p, &v));
        if roots::finite_sigma_coxeter(&t) {
            witness = Some(WeylElement::from_perm(&v));
            return false;
        }
        true
    });
    witness
}
