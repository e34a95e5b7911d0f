mod common;

use gueo_core::sigma_conj::{
    self, approx_equiv, arrow, find_reduction, parahoric_arrow, verify_chain, ApproxClass, ArrowKind,
};
use gueo_core::strata::{self, tau, w_kl, StratumClass};
use gueo_core::{Error, RefSet, SimpleRef, WeylElement};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const BUDGET: usize = 1_000_000;

fn letter(n: usize, i: usize) -> SimpleRef {
    SimpleRef::new(n, i).unwrap()
}

fn word(n: usize, letters: &[usize]) -> WeylElement {
    WeylElement::from_word(n, letters).unwrap()
}

/// `s_1 s_2 ... s_{l-3} s_{n-1} s_{n-2} s_{n-1} tau`.
fn reduction_zero_middle(n: usize, l: usize) -> WeylElement {
    let mut letters: Vec<usize> = (1..=l - 3).collect();
    letters.extend([n - 1, n - 2, n - 1]);
    &word(n, &letters) * &tau(n)
}

#[test]
fn arrow_examples() {
    // tau sigma(s4) tau^-1 = s4, so s4 fixes tau; s0 would raise the length to 2
    let t = tau(5);
    let a = arrow(&t, letter(5, 4)).unwrap();
    assert_eq!((a.kind, a.target), (ArrowKind::LengthPreserving, t.clone()));
    assert!(matches!(arrow(&t, letter(5, 0)), Err(Error::IncreasingLength { from: 0, to: 2, .. })));

    // s w sigma(s) = w is still a length-preserving arrow
    let e = WeylElement::identity(4);
    let a = arrow(&e, letter(4, 2)).unwrap();
    assert_eq!((a.kind, a.target), (ArrowKind::LengthPreserving, e.clone()));
    assert!(matches!(
        arrow(&e, letter(4, 1)),
        Err(Error::IncreasingLength { s: 1, from: 0, to: 2 })
    ));

    // the first step of w_{1,5} ->^{s3 s0 s1} s1 tau uses s1
    let w15 = w_kl(5, 1, 5).unwrap();
    let a = arrow(&w15, letter(5, 1)).unwrap();
    assert_eq!(a.kind, ArrowKind::LengthPreserving);
    assert_eq!(a.target.length(), 3);
}

#[test]
fn arrows_never_raise_length() {
    let mut rng = StdRng::seed_from_u64(21);
    for _ in 0..300 {
        let n = rng.gen_range(2..=9);
        let w = common::random_element(&mut rng, n, 2);
        for i in 0..n {
            let s = WeylElement::simple(n, i);
            let conj = &(&s * &w) * &s.sigma();
            assert_eq!(conj, w.sigma_conjugate_simple(i));
            match arrow(&w, letter(n, i)) {
                Ok(a) => {
                    assert_eq!(a.target, conj);
                    let expected = match a.kind {
                        ArrowKind::LengthPreserving => w.length(),
                        ArrowKind::LengthDropTwo => w.length() - 2,
                    };
                    assert_eq!(a.target.length(), expected);
                }
                Err(Error::IncreasingLength { from, to, .. }) => {
                    assert_eq!(from, w.length());
                    assert_eq!(to, conj.length());
                    assert!(to > from);
                }
                Err(e) => panic!("unexpected {e}"),
            }
        }
    }
}

#[test]
fn parahoric_guards() {
    let n = 5;
    let e = WeylElement::identity(n);
    assert!(matches!(
        parahoric_arrow(&e, letter(n, 1), RefSet::from_iter([1, 4])),
        Err(Error::ParahoricGuard(_))
    ));
    // s1 and s2 do not commute
    assert!(matches!(
        parahoric_arrow(&e, letter(n, 1), RefSet::from_iter([2])),
        Err(Error::ParahoricGuard(_))
    ));
    // {s3} is not Ad(e) sigma-stable; {s2, s3} is, and s0 commutes with both
    assert!(matches!(
        parahoric_arrow(&e, letter(n, 1), RefSet::from_iter([3])),
        Err(Error::ParahoricGuard(_))
    ));
    assert!(parahoric_arrow(&e, letter(n, 0), RefSet::from_iter([2, 3])).is_ok());
}

#[test]
fn certificates_respect_the_parahoric_level() {
    for n in 5..=10 {
        for s in strata::labels(n) {
            if strata::classify(n, s.k, s.l).unwrap() != StratumClass::NotDl {
                continue;
            }
            let w = w_kl(n, s.k, s.l).unwrap();
            let t = strata::w_prime(n, s.k, s.l).unwrap();
            let target = w_kl(n, t.k, t.l).unwrap();
            let cert = find_reduction(&w, &target, BUDGET).unwrap().unwrap();
            let j = strata::s_closed(n, s.k, s.l).unwrap();
            for a in cert.arrows() {
                assert!(parahoric_arrow(&a.source, a.s, j).is_ok(), "n={n} {s}: s{}", a.s.index());
            }
            assert!(cert.letters().is_subset(strata::j_set(n, s.k, s.l).unwrap()), "n={n} {s}");
        }
    }
}

#[test]
fn verify_chain_examples() {
    let w = w_kl(5, 1, 5).unwrap();
    let report = verify_chain(&w, &[], &w).unwrap();
    assert!(report.reached);
    assert_eq!(report.lengths, vec![3]);

    let s1_tau = &WeylElement::simple(5, 1) * &tau(5);
    let report = verify_chain(&w, &SimpleRef::word(5, &[3, 0, 1]).unwrap(), &s1_tau).unwrap();
    assert!(report.reached);
    assert_eq!(report.lengths, vec![3, 3, 3, 1]);
    assert_eq!(report.end, s1_tau);

    // a chain that runs but ends elsewhere
    let report = verify_chain(&w, &SimpleRef::word(5, &[1]).unwrap(), &s1_tau).unwrap();
    assert!(!report.reached);
}

#[test]
fn reduction_zero_chain_at_n13() {
    let (n, l) = (13, 12);
    let w = w_kl(n, 3, l).unwrap();
    let middle = reduction_zero_middle(n, l);
    assert_eq!(middle.length(), l);

    let report = verify_chain(&w, &SimpleRef::word(n, &[n - 2, 0]).unwrap(), &middle).unwrap();
    assert!(report.reached, "ended at {}", report.end);
    assert_eq!(report.lengths, vec![l, l, l]);

    let drop = arrow(&middle, letter(n, n - 1)).unwrap();
    assert_eq!(drop.kind, ArrowKind::LengthDropTwo);
    let report = verify_chain(&drop.target, &SimpleRef::word(n, &[0]).unwrap(), &w_kl(n, 1, l).unwrap()).unwrap();
    assert!(report.reached);
    assert_eq!(report.lengths, vec![l - 2, l - 2]);

    let s = WeylElement::simple(n, n - 1);
    let report = verify_chain(
        &(&s * &middle),
        &SimpleRef::word(n, &[0, n - 1]).unwrap(),
        &w_kl(n, 2, l).unwrap(),
    )
    .unwrap();
    assert!(report.reached);
}

#[test]
fn reduction_zero_chain_whole_range() {
    for n in 5..=16 {
        for l in (n + 3usize).div_ceil(2)..n {
            let w = w_kl(n, 3, l).unwrap();
            let middle = reduction_zero_middle(n, l);
            let report = verify_chain(&w, &SimpleRef::word(n, &[n - 2, 0]).unwrap(), &middle).unwrap();
            assert!(report.reached, "n={n} l={l}");
            let dropped = middle.sigma_conjugate_simple(n - 1);
            assert_eq!(dropped.length() + 2, l, "n={n} l={l}");
            let report = verify_chain(&dropped, &SimpleRef::word(n, &[0]).unwrap(), &w_kl(n, 1, l).unwrap()).unwrap();
            assert!(report.reached, "n={n} l={l}");
        }
    }
}

#[test]
fn approx_equiv_examples() {
    let w = w_kl(13, 3, 12).unwrap();
    assert!(approx_equiv(&w, &w, BUDGET).unwrap());
    assert!(approx_equiv(&w, &reduction_zero_middle(13, 12), BUDGET).unwrap());
    assert!(!approx_equiv(&w, &w_kl(13, 1, 12).unwrap(), BUDGET).unwrap());
    let s1_tau = &WeylElement::simple(5, 1) * &tau(5);
    assert!(!approx_equiv(&w_kl(5, 1, 5).unwrap(), &s1_tau, BUDGET).unwrap());
}

#[test]
fn approx_classes_are_equivalence_classes() {
    let mut rng = StdRng::seed_from_u64(8);
    for _ in 0..40 {
        let n = rng.gen_range(3..=6);
        let w = common::random_element(&mut rng, n, 1);
        if w.length() > 7 {
            continue;
        }
        let class = ApproxClass::explore(&w, BUDGET).unwrap();
        assert!(class.contains(&w));
        for u in class.elements().iter().take(10) {
            assert_eq!(u.length(), w.length());
            assert!(approx_equiv(u, &w, BUDGET).unwrap(), "symmetry {u} {w}");
            let other = ApproxClass::explore(u, BUDGET).unwrap();
            assert_eq!(other.len(), class.len(), "transitivity {u} {w}");
            let path = class.path_from_root(u).unwrap();
            let mut current = w.clone();
            for a in &path {
                assert_eq!(a.source, current);
                assert_eq!(a.kind, ArrowKind::LengthPreserving);
                current = a.target.clone();
            }
            assert_eq!(&current, u);
        }
    }
}

#[test]
fn budget_is_enforced() {
    let w = w_kl(13, 3, 12).unwrap();
    assert!(matches!(ApproxClass::explore(&w, 3), Err(Error::BudgetExceeded(3))));
    assert!(matches!(approx_equiv(&w, &reduction_zero_middle(13, 12), 3), Err(Error::BudgetExceeded(3))));
}

#[test]
fn find_reduction_examples() {
    let w = w_kl(5, 3, 4).unwrap();
    let target = w_kl(5, 1, 4).unwrap();
    let cert = find_reduction(&w, &target, BUDGET).unwrap().unwrap();
    assert!(cert.verify(&w, &target));
    assert_eq!(cert.drop.kind, ArrowKind::LengthDropTwo);
    assert!(!cert.verify(&w, &w_kl(5, 1, 3).unwrap()));

    let w = w_kl(14, 4, 13).unwrap();
    let target = w_kl(14, 3, 12).unwrap();
    let cert = find_reduction(&w, &target, BUDGET).unwrap().unwrap();
    assert!(cert.verify(&w, &target));

    assert!(matches!(
        find_reduction(&w_kl(5, 1, 5).unwrap(), &tau(5), BUDGET),
        Err(Error::Precondition(_))
    ));
    assert!(matches!(
        find_reduction(&w_kl(5, 1, 5).unwrap(), &tau(6), BUDGET),
        Err(Error::RankMismatch(5, 6))
    ));
}

#[test]
fn certificates_for_every_notdl_label_up_to_12() {
    for n in 2..=12 {
        for s in strata::labels(n) {
            if strata::classify(n, s.k, s.l).unwrap() != StratumClass::NotDl {
                continue;
            }
            let w = w_kl(n, s.k, s.l).unwrap();
            let t = strata::w_prime(n, s.k, s.l).unwrap();
            let target = w_kl(n, t.k, t.l).unwrap();
            let cert = find_reduction(&w, &target, BUDGET).unwrap();
            assert!(cert.is_some_and(|c| c.verify(&w, &target)), "n={n} {s}");
        }
    }
}

#[test]
fn emptiness_examples() {
    let w = w_kl(13, 4, 10).unwrap();
    let v = sigma_conj::is_empty_basic(&w).unwrap();
    assert!(v.empty);
    assert!(sigma_conj::check_emptiness_witness(&w, v.witness.as_ref().unwrap()).unwrap());
    let v = sigma_conj::is_empty_basic_by_cosets(&w).unwrap();
    assert!(v.empty);
    assert!(sigma_conj::check_emptiness_witness(&w, v.witness.as_ref().unwrap()).unwrap());

    assert!(!sigma_conj::is_empty_basic_by_cosets(&w_kl(13, 3, 12).unwrap()).unwrap().empty);

    // supp_sigma is proper: nonempty without any search
    let w = w_kl(13, 1, 7).unwrap();
    assert!(!sigma_conj::support_is_full(&w));
    assert!(!sigma_conj::is_empty_basic(&w).unwrap().empty);

    assert!(matches!(
        sigma_conj::is_empty_basic(&WeylElement::simple(5, 1)),
        Err(Error::NotMinCosetRep(_))
    ));
}

#[test]
#[ignore = "walks all of R(w_{3,12}) at n = 13, about 1.9e8 elements"]
fn emptiness_r_walk_w_3_12_n13() {
    assert!(!sigma_conj::is_empty_basic(&w_kl(13, 3, 12).unwrap()).unwrap().empty);
}

#[test]
fn criterion_forms_agree_up_to_9() {
    for n in 2..=9 {
        for s in strata::labels(n) {
            let w = w_kl(n, s.k, s.l).unwrap();
            let r = sigma_conj::is_empty_basic(&w).unwrap();
            let lp = sigma_conj::is_empty_basic_lp_form(&w).unwrap();
            let cosets = sigma_conj::is_empty_basic_by_cosets(&w).unwrap();
            assert_eq!(r.empty, lp.empty, "n={n} {s}");
            assert_eq!(r.empty, cosets.empty, "n={n} {s}");
            if r.empty {
                assert!(sigma_conj::check_emptiness_witness(&w, r.witness.as_ref().unwrap()).unwrap());
                assert!(sigma_conj::check_emptiness_witness(&w, cosets.witness.as_ref().unwrap()).unwrap());
            }
        }
    }
}

#[test]
fn positive_coxeter_examples() {
    assert!(sigma_conj::positive_coxeter_generic(&tau(5)));
    let w = w_kl(13, 7, 12).unwrap();
    assert!(sigma_conj::positive_coxeter_generic(&w));
    assert!(sigma_conj::positive_coxeter_witness(&w).is_some());
    assert!(strata::positive_coxeter_closed(13, 7, 12).unwrap());
    assert!(!strata::positive_coxeter_closed(13, 3, 12).unwrap());
}

#[test]
#[ignore = "exhausts LP(w_{3,12}) at n = 13; takes minutes"]
fn positive_coxeter_fails_for_w_3_12_n13() {
    assert!(!sigma_conj::positive_coxeter_generic(&w_kl(13, 3, 12).unwrap()));
}
