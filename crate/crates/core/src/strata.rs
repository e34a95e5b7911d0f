//! The `GU(2, n-2)` setting: `mu`, `b`, `tau`, the elements `w_{k,l}` and the
//! full combinatorial description of the Ekedahl-Oort strata of the basic locus.
//!
//! Half-integral bounds such as `l <= (n+2)/2` are evaluated in doubled
//! integers (`2l <= n+2`) throughout.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::rc::Rc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm;
use crate::refset::RefSet;
use crate::roots;
use crate::sigma_conj;
use crate::weyl::{Cocharacter, WeylElement};

/// `mu = ((0^{(n-2)}, -1, -1), -1)`.
pub fn mu(n: usize) -> Cocharacter {
    let mut coords = vec![0; n];
    coords[n - 2] = -1;
    coords[n - 1] = -1;
    Cocharacter::new(coords, -1)
}

/// The basic element `b = ((0, ..., 0), -1)`.
pub fn b(n: usize) -> WeylElement {
    WeylElement::translation(&Cocharacter::new(vec![0; n], -1))
}

/// The length zero element `tau = w_{1,2}`.
pub fn tau(n: usize) -> WeylElement {
    w_kl(n, 1, 2).expect("(1, 2) is a label for n >= 2")
}

/// `s_{[a,c]} = s_a s_{a-1} ... s_c` if `a >= c`, and `1` otherwise.
pub fn s_range(n: usize, a: usize, c: usize) -> WeylElement {
    let letters: Vec<usize> = if a >= c { (c..=a).rev().collect() } else { Vec::new() };
    WeylElement::from_word(n, &letters).expect("indices below n")
}

/// `t_i = s_i s_{n-i}`.
pub fn t_i(n: usize, i: usize) -> WeylElement {
    &WeylElement::simple(n, i % n) * &WeylElement::simple(n, (n - i % n) % n)
}

/// `w_{k,l} = phi^mu s_{[n-2,k]} s_{[n-1,l]}`.
pub fn w_kl(n: usize, k: usize, l: usize) -> Result<WeylElement> {
    StratumLabel::new(n, k, l)?;
    let phi_mu = WeylElement::translation(&mu(n));
    Ok(&(&phi_mu * &s_range(n, n - 2, k)) * &s_range(n, n - 1, l))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StratumLabel {
    pub k: usize,
    pub l: usize,
}

impl StratumLabel {
    pub fn new(n: usize, k: usize, l: usize) -> Result<Self> {
        if n < 2 || k < 1 || k >= l || l > n {
            return Err(Error::InvalidLabel { n, k, l });
        }
        Ok(StratumLabel { k, l })
    }

    pub fn element(self, n: usize) -> Result<WeylElement> {
        w_kl(n, self.k, self.l)
    }
}

impl fmt::Display for StratumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w_{{{},{}}}", self.k, self.l)
    }
}

/// Every label `1 <= k < l <= n`, in lexicographic order.
pub fn labels(n: usize) -> Vec<StratumLabel> {
    let mut out = Vec::new();
    for k in 1..n {
        for l in k + 1..=n {
            out.push(StratumLabel { k, l });
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StratumClass {
    Dl,
    NotDl,
    Empty,
}

impl StratumClass {
    pub fn as_str(self) -> &'static str {
        match self {
            StratumClass::Dl => "dl",
            StratumClass::NotDl => "not_dl",
            StratumClass::Empty => "empty",
        }
    }

    pub fn is_nonempty(self) -> bool {
        self != StratumClass::Empty
    }
}

impl fmt::Display for StratumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn is_dl(n: usize, k: usize, l: usize) -> bool {
    k == 1 || 2 * l <= n + 2
}

/// The closed-form classification.
pub fn classify(n: usize, k: usize, l: usize) -> Result<StratumClass> {
    StratumLabel::new(n, k, l)?;
    if is_dl(n, k, l) {
        return Ok(StratumClass::Dl);
    }
    let window = 3 <= k && 2 * k < n + 2 && n + 2 < 2 * l && l < n;
    let case_i = k % 2 == 1 && k + l <= n + 2;
    let case_ii = (l + 1 - n % 2).is_multiple_of(2) && k + l >= n + 3;
    Ok(if window && (case_i || case_ii) {
        StratumClass::NotDl
    } else {
        StratumClass::Empty
    })
}

fn class_from_verdict(w: &WeylElement, empty: impl Fn(&WeylElement) -> Result<bool>) -> Result<StratumClass> {
    if !sigma_conj::support_is_full(w) {
        return Ok(StratumClass::Dl);
    }
    Ok(if empty(w)? {
        StratumClass::Empty
    } else {
        StratumClass::NotDl
    })
}

/// Classification from first principles: the `sigma`-support decides `Dl`,
/// then the emptiness criterion (walking `R(w)`) separates the rest.
pub fn classify_by_criterion(n: usize, k: usize, l: usize) -> Result<StratumClass> {
    class_from_verdict(&w_kl(n, k, l)?, |w| Ok(sigma_conj::is_empty_basic(w)?.empty))
}

/// As [`classify_by_criterion`], deciding the criterion over parabolic cosets;
/// fast enough for the `n = 13, 14` figures.
pub fn classify_by_criterion_cosets(n: usize, k: usize, l: usize) -> Result<StratumClass> {
    class_from_verdict(&w_kl(n, k, l)?, |w| {
        Ok(sigma_conj::is_empty_basic_by_cosets(w)?.empty)
    })
}

fn require_not_dl(op: &'static str, n: usize, k: usize, l: usize) -> Result<()> {
    if classify(n, k, l)? != StratumClass::NotDl {
        return Err(Error::NotApplicable { op, n, k, l });
    }
    Ok(())
}

fn require_nonempty(op: &'static str, n: usize, k: usize, l: usize) -> Result<StratumClass> {
    let class = classify(n, k, l)?;
    if class == StratumClass::Empty {
        return Err(Error::NotApplicable { op, n, k, l });
    }
    Ok(class)
}

/// The next stratum `w'_{k,l}` down the fibration.
pub fn w_prime(n: usize, k: usize, l: usize) -> Result<StratumLabel> {
    require_not_dl("w_prime", n, k, l)?;
    Ok(if k + l <= n + 2 {
        StratumLabel { k: k - 2, l }
    } else if k + l >= n + 4 {
        StratumLabel { k, l: l - 2 }
    } else {
        StratumLabel { k: k - 1, l: l - 1 }
    })
}

pub fn fibration_rank(n: usize, k: usize, l: usize) -> Result<usize> {
    require_not_dl("fibration_rank", n, k, l)?;
    Ok(if k + l <= n + 2 {
        (k - 1) / 2
    } else {
        // l - n - 3 is even and at least -k + 0 here
        (2 * k + l - n - 3) / 2
    })
}

pub fn fibration_base(n: usize, k: usize, l: usize) -> Result<StratumLabel> {
    require_not_dl("fibration_base", n, k, l)?;
    Ok(if k + l <= n + 2 {
        StratumLabel { k: 1, l }
    } else {
        StratumLabel { k: 1, l: n - k + 2 }
    })
}

fn pairs_up_to(n: usize, top: i64) -> RefSet {
    let mut set = RefSet::empty();
    for i in 0..=top {
        set.insert(i as usize % n);
        set.insert((n as i64 - i - 2).rem_euclid(n as i64) as usize);
    }
    set
}

fn interval(lo: i64, hi: i64) -> RefSet {
    (lo.max(0)..=hi).map(|i| i as usize).collect()
}

/// Closed form of `supp_sigma(w_{k,l})`.
pub fn supp_sigma_closed(n: usize, k: usize, l: usize) -> Result<RefSet> {
    StratumLabel::new(n, k, l)?;
    let li = l as i64;
    Ok(if k >= 2 {
        let mut set = pairs_up_to(n, li - 3);
        set.insert(n - 1);
        set
    } else if 2 * l <= n + 2 {
        pairs_up_to(n, li - 3)
    } else {
        let mut set = RefSet::affine(n);
        set.remove(n - 1);
        set
    })
}

/// Closed form of `S(w_{k,l}, sigma)` for nonempty labels.
pub fn s_closed(n: usize, k: usize, l: usize) -> Result<RefSet> {
    let class = require_nonempty("s_closed", n, k, l)?;
    let (n, k, l) = (n as i64, k as i64, l as i64);
    Ok(match class {
        StratumClass::Dl if l == k + 1 => {
            let mut set = interval(k, n - k - 2);
            if k % 2 == 1 {
                set = set.union((1..=k - 2).step_by(2).map(|i| i as usize).collect());
                set = set.union(
                    (n - k..=n - 1)
                        .rev()
                        .step_by(2)
                        .map(|i| i as usize)
                        .collect(),
                );
            }
            set
        }
        StratumClass::Dl if 2 * l <= n + 2 => interval(l - 1, n - l - 1),
        StratumClass::Dl => interval(n - l + 2, l - 3),
        StratumClass::NotDl if k + l <= n + 2 => interval(n - l + 2, l - 3),
        StratumClass::NotDl => interval(k, n - k - 1),
        StratumClass::Empty => unreachable!("rejected above"),
    })
}

/// Closed form of `J(w_{k,l})` for labels classified `NotDl`.
pub fn j_set(n: usize, k: usize, l: usize) -> Result<RefSet> {
    require_not_dl("j_set", n, k, l)?;
    let mut set = pairs_up_to(n, k as i64 - 3);
    set.insert(n - 1);
    if k + l >= n + 3 {
        set.insert(k - 2);
    }
    Ok(set)
}

/// The parahoric type `supp_sigma(w)_1 union S(w, sigma)_1` (shift by `tau_1`).
/// A `NotDl` stratum fibres over its base and carries the base's type, which is `S`.
pub fn parahoric_type(n: usize, k: usize, l: usize) -> Result<RefSet> {
    match require_nonempty("parahoric_type", n, k, l)? {
        StratumClass::NotDl => {
            let base = fibration_base(n, k, l)?;
            parahoric_type(n, base.k, base.l)
        }
        _ => {
            let w = w_kl(n, k, l)?;
            Ok(roots::supp_sigma(&w).union(roots::s_w_sigma(&w)).shift(n, 1))
        }
    }
}

/// `w^0_{k,l} = b^{-1} tau_1 w_{k,l} sigma(tau_1)^{-1}`, an element of `W_a`.
pub fn w0_element(n: usize, k: usize, l: usize) -> Result<WeylElement> {
    require_nonempty("w0_element", n, k, l)?;
    let t1 = WeylElement::tau1(n);
    let w0 = &(&(&b(n).inv() * &t1) * &w_kl(n, k, l)?) * &t1.sigma().inv();
    if w0.omega_component() != 0 || w0.similitude() != 0 {
        return Err(Error::Precondition(format!("{w0} is not in W_a")));
    }
    Ok(w0)
}

/// Stratum dimension: the length for `Dl`, one more than the target for `NotDl`.
pub fn dim_stratum(n: usize, k: usize, l: usize) -> Result<usize> {
    match require_nonempty("dim_stratum", n, k, l)? {
        StratumClass::Dl => Ok(k + l - 3),
        _ => {
            let t = w_prime(n, k, l)?;
            Ok(dim_stratum(n, t.k, t.l)? + 1)
        }
    }
}

fn nonempty_labels(n: usize) -> Vec<StratumLabel> {
    labels(n)
        .into_iter()
        .filter(|s| classify(n, s.k, s.l).map(StratumClass::is_nonempty).unwrap_or(false))
        .collect()
}

/// `dim X_mu(b)`, the largest stratum dimension.
pub fn dim_x(n: usize) -> usize {
    nonempty_labels(n)
        .iter()
        .map(|s| dim_stratum(n, s.k, s.l).expect("nonempty"))
        .max()
        .unwrap_or(0)
}

/// The strata of maximal dimension.
pub fn top_strata(n: usize) -> BTreeSet<StratumLabel> {
    let top = dim_x(n);
    nonempty_labels(n)
        .into_iter()
        .filter(|s| dim_stratum(n, s.k, s.l).expect("nonempty") == top)
        .collect()
}

/// The number of `J_b`-orbits of irreducible components, one per top stratum.
pub fn irr_orbit_count(n: usize) -> usize {
    top_strata(n).len()
}

/// The closure order on labels: `a <= b` iff `a.k <= b.k` and `a.l <= b.l`.
pub fn closure_leq(a: StratumLabel, b: StratumLabel) -> bool {
    a.k <= b.k && a.l <= b.l
}

pub const GEQ_S_SIGMA_MAX_N: usize = 7;

/// `w >=_{S,sigma} w'`: some `u in W_0` has `u^{-1} w' sigma(u) <= w`.
pub fn geq_s_sigma(w: &WeylElement, w2: &WeylElement) -> Result<bool> {
    let n = w.rank();
    if n > GEQ_S_SIGMA_MAX_N {
        return Err(Error::TooLarge {
            op: "geq_s_sigma",
            n,
            limit: GEQ_S_SIGMA_MAX_N,
        });
    }
    let mut found = false;
    perm::for_each_permutation(n, |u| {
        let u = WeylElement::from_perm(u);
        let conj = &(&u.inv() * w2) * &u.sigma();
        found = conj.bruhat_leq(w);
        !found
    });
    Ok(found)
}

/// Closed form of positive Coxeter type for `NotDl` labels.
pub fn positive_coxeter_closed(n: usize, k: usize, l: usize) -> Result<bool> {
    require_not_dl("positive_coxeter_closed", n, k, l)?;
    Ok(if n.is_multiple_of(2) {
        2 * k == n || 2 * l == n + 4
    } else {
        2 * k == n + 1 || 2 * l == n + 3
    })
}

/// The set of labels, i.e. `SAdm(mu)`.
pub fn s_admissible(n: usize) -> BTreeSet<StratumLabel> {
    labels(n).into_iter().collect()
}

pub const BRUTE_FORCE_S_ADM_MAX_N: usize = 7;

/// `SAdm(mu)` from its definition: the union of the Bruhat intervals below the
/// translations `phi^{u mu}`, filtered to `^S W~` and matched against `w_{k,l}`.
pub fn brute_force_s_adm(n: usize) -> Result<BTreeSet<StratumLabel>> {
    if n > BRUTE_FORCE_S_ADM_MAX_N {
        return Err(Error::TooLarge {
            op: "brute_force_s_adm",
            n,
            limit: BRUTE_FORCE_S_ADM_MAX_N,
        });
    }
    if n < 2 {
        return Err(Error::InvalidRank(n));
    }
    let mut tops = HashSet::new();
    let m = mu(n);
    perm::for_each_permutation(n, |u| {
        // (u mu)_i = mu_{u^{-1}(i)}
        let inv = perm::inverse(u);
        let coords = (0..n).map(|i| m.coords[inv[i]]).collect();
        tops.insert(WeylElement::translation(&Cocharacter::new(coords, m.similitude)));
        true
    });
    let mut memo = HashMap::new();
    let mut adm = HashSet::new();
    for top in &tops {
        adm.extend(lower_interval(top, &mut memo).iter().cloned());
    }
    let by_element: HashMap<WeylElement, StratumLabel> = labels(n)
        .into_iter()
        .map(|s| (s.element(n).expect("valid label"), s))
        .collect();
    let mut out = BTreeSet::new();
    for w in adm.into_iter().filter(WeylElement::is_min_coset_rep) {
        match by_element.get(&w) {
            Some(&s) => {
                out.insert(s);
            }
            None => {
                return Err(Error::Precondition(format!(
                    "admissible element {w} is not of the form w_(k,l)"
                )))
            }
        }
    }
    Ok(out)
}

/// `{u : u <= w}`; for a left descent `s` of `w` it is `I union s I` with `I = [., s w]`.
fn lower_interval(
    w: &WeylElement,
    memo: &mut HashMap<WeylElement, Rc<HashSet<WeylElement>>>,
) -> Rc<HashSet<WeylElement>> {
    if let Some(set) = memo.get(w) {
        return set.clone();
    }
    let set = match w.left_descents().iter().next() {
        None => Rc::new(HashSet::from([w.clone()])),
        Some(s) => {
            let below = lower_interval(&w.lmul_simple(s), memo);
            let mut set: HashSet<WeylElement> = (*below).clone();
            set.extend(below.iter().map(|u| u.lmul_simple(s)));
            Rc::new(set)
        }
    };
    memo.insert(w.clone(), set.clone());
    set
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumRecord {
    pub label: StratumLabel,
    pub class: StratumClass,
    pub length: usize,
    pub dim: Option<usize>,
    pub target: Option<StratumLabel>,
    pub rank: Option<usize>,
    pub base: Option<StratumLabel>,
    pub supp_sigma: RefSet,
    pub s_w_sigma: RefSet,
    /// Empty for empty strata.
    pub parahoric: RefSet,
    /// Only `NotDl` strata can be of positive Coxeter type; `false` elsewhere.
    pub positive_coxeter: bool,
    pub j_set: Option<RefSet>,
}

/// The full record of one label, from the closed forms and the generic
/// `sigma`-support and `S(w, sigma)` of `w_{k,l}`.
pub fn stratum_record(n: usize, k: usize, l: usize) -> Result<StratumRecord> {
    let class = classify(n, k, l)?;
    let w = w_kl(n, k, l)?;
    let not_dl = class == StratumClass::NotDl;
    Ok(StratumRecord {
        label: StratumLabel { k, l },
        class,
        length: w.length(),
        dim: class.is_nonempty().then(|| dim_stratum(n, k, l)).transpose()?,
        target: not_dl.then(|| w_prime(n, k, l)).transpose()?,
        rank: not_dl.then(|| fibration_rank(n, k, l)).transpose()?,
        base: not_dl.then(|| fibration_base(n, k, l)).transpose()?,
        supp_sigma: roots::supp_sigma(&w),
        s_w_sigma: roots::s_w_sigma(&w),
        parahoric: if class.is_nonempty() {
            parahoric_type(n, k, l)?
        } else {
            RefSet::empty()
        },
        positive_coxeter: not_dl && positive_coxeter_closed(n, k, l)?,
        j_set: not_dl.then(|| j_set(n, k, l)).transpose()?,
    })
}

/// Records for every label, in lexicographic order.
pub fn all_records(n: usize) -> Result<Vec<StratumRecord>> {
    if n < 2 {
        return Err(Error::InvalidRank(n));
    }
    labels(n)
        .par_iter()
        .map(|s| stratum_record(n, s.k, s.l))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumGraph {
    pub n: usize,
    /// Nonempty strata in lexicographic label order.
    pub nodes: Vec<StratumRecord>,
    /// `NotDl` label to its `w'` target, sorted.
    pub edges: Vec<(StratumLabel, StratumLabel)>,
}

impl StratumGraph {
    /// Canonical text form: `node k,l` lines, then `edge k,l -> k',l'` lines.
    pub fn canonical_text(&self) -> String {
        let mut out = String::new();
        for r in &self.nodes {
            out.push_str(&format!("node {},{}\n", r.label.k, r.label.l));
        }
        for (a, b) in &self.edges {
            out.push_str(&format!("edge {},{} -> {},{}\n", a.k, a.l, b.k, b.l));
        }
        out
    }
}

pub fn stratum_graph(n: usize) -> Result<StratumGraph> {
    let nodes: Vec<StratumRecord> = all_records(n)?
        .into_iter()
        .filter(|r| r.class.is_nonempty())
        .collect();
    let mut edges: Vec<(StratumLabel, StratumLabel)> = nodes
        .iter()
        .filter_map(|r| r.target.map(|t| (r.label, t)))
        .collect();
    edges.sort();
    Ok(StratumGraph { n, nodes, edges })
}
