//! Verification batteries comparing the closed forms against the generic
//! computations. The CLI `verify` command and the acceptance suite drive these.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::refset::RefSet;
use crate::roots::{self, Root, RootSet};
use crate::sigma_conj;
use crate::strata::{self, StratumClass, StratumLabel};
use crate::weyl::{SimpleRef, WeylElement};

pub const FIGURE_N13: &str = include_str!("../fixtures/figure_n13.txt");
pub const FIGURE_N14: &str = include_str!("../fixtures/figure_n14.txt");

/// Largest `n` for which the oracle suite walks `R(w)` element by element;
/// beyond it the coset form of the criterion is used.
pub const R_WALK_MAX_N: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Oracle,
    ClosedForms,
    Reduction,
    Figures,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Oracle => "oracle",
            Suite::ClosedForms => "closedforms",
            Suite::Reduction => "reduction",
            Suite::Figures => "figures",
            Suite::All => "all",
        }
    }

    pub fn default_n_max(self) -> usize {
        match self {
            Suite::Oracle => 10,
            Suite::ClosedForms => 20,
            Suite::Reduction => 9,
            Suite::Figures | Suite::All => 14,
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "oracle" => Suite::Oracle,
            "closedforms" => Suite::ClosedForms,
            "reduction" => Suite::Reduction,
            "figures" => Suite::Figures,
            "all" => Suite::All,
            other => return Err(format!("unknown suite `{other}`")),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl Report {
    fn new(name: &str) -> Self {
        Report {
            name: name.to_string(),
            ..Report::default()
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn merge(&mut self, other: Report) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// The first failing check, which names the offending label.
    pub fn first_failure(&self) -> Option<&str> {
        self.failures.first().map(String::as_str)
    }
}

/// Runs a suite; `All` runs every suite with its own default bound unless
/// `n_max` is given.
pub fn run(suite: Suite, n_max: Option<usize>) -> Vec<Report> {
    match suite {
        Suite::Oracle => vec![oracle(n_max.unwrap_or(10))],
        Suite::ClosedForms => vec![closed_forms(n_max.unwrap_or(20))],
        Suite::Reduction => vec![reduction(n_max.unwrap_or(9))],
        Suite::Figures => vec![figures()],
        Suite::All => vec![
            oracle(n_max.unwrap_or(10)),
            closed_forms(n_max.unwrap_or(20)),
            reduction(n_max.unwrap_or(9)),
            figures(),
        ],
    }
}

fn par_labels<F>(ns: impl Iterator<Item = usize>, name: &str, f: F) -> Report
where
    F: Fn(usize, StratumLabel) -> Report + Sync,
{
    let jobs: Vec<(usize, StratumLabel)> = ns
        .flat_map(|n| strata::labels(n).into_iter().map(move |s| (n, s)))
        .collect();
    let parts: Vec<Report> = jobs.par_iter().map(|&(n, s)| f(n, s)).collect();
    let mut report = Report::new(name);
    for p in parts {
        report.merge(p);
    }
    report
}

/// Closed-form classes against the criterion, both forms of condition (ii),
/// emptiness witnesses and the positive Coxeter closed form.
pub fn oracle(n_max: usize) -> Report {
    par_labels(2..=n_max, "oracle", |n, s| {
        let mut r = Report::new("oracle");
        let closed = strata::classify(n, s.k, s.l).expect("valid label");
        let w = strata::w_kl(n, s.k, s.l).expect("valid label");
        let verdict = if n <= R_WALK_MAX_N {
            sigma_conj::is_empty_basic(&w)
        } else {
            sigma_conj::is_empty_basic_by_cosets(&w)
        }
        .expect("w_kl is a minimal coset representative");
        let by_criterion = if !sigma_conj::support_is_full(&w) {
            StratumClass::Dl
        } else if verdict.empty {
            StratumClass::Empty
        } else {
            StratumClass::NotDl
        };
        r.check(closed == by_criterion, || {
            format!("n={n} {s}: closed form {closed}, criterion {by_criterion}")
        });
        if let Some(witness) = &verdict.witness {
            let ok = sigma_conj::check_emptiness_witness(&w, witness).unwrap_or(false);
            r.check(ok, || format!("n={n} {s}: witness {witness} fails the recheck"));
        }
        if n <= 9 && sigma_conj::support_is_full(&w) {
            let lp = sigma_conj::is_empty_basic_lp_form(&w).expect("valid");
            r.check(lp.empty == verdict.empty, || {
                format!("n={n} {s}: R-form and LP-form of condition (ii) disagree")
            });
        }
        if n <= 9 && closed == StratumClass::NotDl {
            let closed_pc = strata::positive_coxeter_closed(n, s.k, s.l).expect("not dl");
            let generic = sigma_conj::positive_coxeter_generic(&w);
            r.check(closed_pc == generic, || {
                format!("n={n} {s}: positive Coxeter closed form {closed_pc}, search {generic}")
            });
        }
        r
    })
}

/// `Phi_+ \ Phi_{w_{k,l}} = {chi_{i,n-1} : i < k} union {chi_{i,n} : i <= l-2}`.
pub fn phi_complement_closed(n: usize, k: usize, l: usize) -> RootSet {
    let mut set = BTreeSet::new();
    for i in 1..k {
        set.insert(Root::new(n, i, n - 1).expect("valid root"));
    }
    for i in 1..=l - 2 {
        set.insert(Root::new(n, i, n).expect("valid root"));
    }
    set
}

/// The explicit list of top-dimensional strata.
pub fn top_strata_closed(n: usize) -> BTreeSet<StratumLabel> {
    let mut set = BTreeSet::from([StratumLabel { k: 1, l: n }]);
    for k in 3..=n.div_ceil(2) {
        set.insert(StratumLabel { k, l: n - 1 });
    }
    if n.is_multiple_of(2) {
        set.insert(StratumLabel {
            k: n / 2,
            l: n / 2 + 1,
        });
    }
    set
}

fn commute(n: usize, a: usize, b: usize) -> bool {
    let (x, y) = (WeylElement::simple(n, a), WeylElement::simple(n, b));
    &x * &y == &y * &x
}

/// Lengths, root sets, supports, `S(w, sigma)`, `J`, fibrations, dimensions.
pub fn closed_forms(n_max: usize) -> Report {
    let mut report = par_labels(2..=n_max, "closedforms", |n, s| {
        let mut r = Report::new("closedforms");
        let (k, l) = (s.k, s.l);
        let w = strata::w_kl(n, k, l).expect("valid");
        r.check(w.length() == k + l - 3, || format!("n={n} {s}: length {}", w.length()));
        r.check(w.is_min_coset_rep(), || format!("n={n} {s}: not in ^S W~"));
        let phi = roots::phi_w_complement(&w);
        r.check(phi == phi_complement_closed(n, k, l), || {
            format!("n={n} {s}: Phi_+ \\ Phi_w differs from the closed form")
        });
        let supp = roots::supp_sigma(&w);
        let supp_closed = strata::supp_sigma_closed(n, k, l).expect("valid");
        r.check(supp == supp_closed, || {
            format!("n={n} {s}: supp_sigma {supp}, closed form {supp_closed}")
        });
        let class = strata::classify(n, k, l).expect("valid");
        r.check((class == StratumClass::Dl) == (supp != RefSet::affine(n)), || {
            format!("n={n} {s}: DL class disagrees with supp_sigma")
        });
        if class.is_nonempty() {
            let generic = roots::s_w_sigma(&w);
            let closed = strata::s_closed(n, k, l).expect("nonempty");
            r.check(generic == closed, || {
                format!("n={n} {s}: S(w,sigma) {generic}, closed form {closed}")
            });
            r.check(roots::is_ad_sigma_stable(&w, closed), || {
                format!("n={n} {s}: S(w,sigma) is not Ad(w)sigma-stable")
            });
            let w0 = strata::w0_element(n, k, l);
            r.check(w0.is_ok(), || format!("n={n} {s}: w0 not in W_a"));
            if let Ok(w0) = w0 {
                // only a DL stratum carries its own shifted support as parahoric type
                if class == StratumClass::Dl
                    && strata::parahoric_type(n, k, l).expect("nonempty") == RefSet::finite(n)
                {
                    r.check(w0.is_finite(), || format!("n={n} {s}: w0 {w0} is not finite"));
                }
            }
        }
        if class == StratumClass::NotDl {
            let j = strata::j_set(n, k, l).expect("not dl");
            let sc = strata::s_closed(n, k, l).expect("not dl");
            let ok = j.iter().all(|a| sc.iter().all(|b| commute(n, a, b)));
            r.check(ok, || format!("n={n} {s}: J {j} does not commute with S(w,sigma) {sc}"));
            let target = strata::w_prime(n, k, l).expect("not dl");
            let tc = strata::s_closed(n, target.k, target.l);
            r.check(tc.as_ref().ok() == Some(&sc), || {
                format!("n={n} {s}: S(w,sigma) differs from that of w' = {target}")
            });
            r.check(
                strata::parahoric_type(n, k, l).ok() == Some(RefSet::finite(n)),
                || format!("n={n} {s}: parahoric type is not S"),
            );
            let rank = strata::fibration_rank(n, k, l).expect("not dl");
            let base = strata::fibration_base(n, k, l).expect("not dl");
            let mut cur = s;
            let mut steps = 0;
            while strata::classify(n, cur.k, cur.l).ok() == Some(StratumClass::NotDl) && steps <= n {
                cur = strata::w_prime(n, cur.k, cur.l).expect("not dl");
                steps += 1;
            }
            let terminal_dl = strata::classify(n, cur.k, cur.l).ok() == Some(StratumClass::Dl);
            r.check(steps == rank && cur == base && terminal_dl, || {
                format!("n={n} {s}: w' iteration reached {cur} after {steps} steps, expected {base} after {rank}")
            });
        }
        r
    });
    for n in 2..=n_max {
        let dim = strata::dim_x(n);
        report.check(dim == n - 2, || format!("n={n}: dim X = {dim}"));
        let count = strata::irr_orbit_count(n);
        report.check(count == n / 2, || format!("n={n}: {count} component orbits"));
        let top = strata::top_strata(n);
        report.check(top == top_strata_closed(n), || {
            format!("n={n}: top strata {top:?} differ from the explicit list")
        });
    }
    report
}

/// A certificate `w_{k,l} ~ . -> . ~ w'_{k,l}` for every `NotDl` label, plus
/// the worked chain at `n = 5`.
pub fn reduction(n_max: usize) -> Report {
    let budget = sigma_conj::bfs_budget();
    let mut report = par_labels(2..=n_max, "reduction", |n, s| {
        let mut r = Report::new("reduction");
        if strata::classify(n, s.k, s.l).ok() != Some(StratumClass::NotDl) {
            return r;
        }
        let w = strata::w_kl(n, s.k, s.l).expect("valid");
        let t = strata::w_prime(n, s.k, s.l).expect("not dl");
        let target = strata::w_kl(n, t.k, t.l).expect("valid");
        match sigma_conj::find_reduction(&w, &target, budget) {
            Ok(Some(cert)) => r.check(cert.verify(&w, &target), || {
                format!("n={n} {s}: certificate towards {t} fails re-verification")
            }),
            Ok(None) => r.check(false, || format!("n={n} {s}: no reduction to {t} found")),
            Err(e) => r.check(false, || format!("n={n} {s}: {e}")),
        }
        r
    });
    if n_max >= 5 {
        let ok = worked_chain_n5().unwrap_or(false);
        report.check(ok, || "n=5: w_{1,5} ->^{s3 s0 s1} s1 tau does not verify".to_string());
    }
    report
}

/// `w_{1,5} = s0 s1 s2 tau ->^{s3 s0 s1} s1 tau` at `n = 5`.
pub fn worked_chain_n5() -> crate::Result<bool> {
    let n = 5;
    let w = strata::w_kl(n, 1, 5)?;
    let expected = &WeylElement::simple(n, 1) * &strata::tau(n);
    let steps = SimpleRef::word(n, &[3, 0, 1])?;
    let report = sigma_conj::verify_chain(&w, &steps, &expected)?;
    Ok(report.reached && report.lengths == vec![3, 3, 3, 1])
}

/// The `n = 13, 14` stratum graphs against the transcribed figures, and the
/// criterion against the closed form on every label of both ranks.
pub fn figures() -> Report {
    let mut report = Report::new("figures");
    for (n, fixture) in [(13, FIGURE_N13), (14, FIGURE_N14)] {
        let graph = strata::stratum_graph(n).expect("n >= 2");
        let text = graph.canonical_text();
        report.check(text == fixture, || {
            let first = text
                .lines()
                .zip(fixture.lines())
                .find(|(a, b)| a != b)
                .map(|(a, b)| format!("computed `{a}`, fixture `{b}`"))
                .unwrap_or_else(|| "line counts differ".to_string());
            format!("n={n}: stratum graph differs from the figure: {first}")
        });
        for s in strata::labels(n) {
            let closed = strata::classify(n, s.k, s.l).expect("valid");
            let crit = strata::classify_by_criterion_cosets(n, s.k, s.l).expect("valid");
            report.check(closed == crit, || {
                format!("n={n} {s}: closed form {closed}, criterion {crit}")
            });
        }
    }
    report
}
