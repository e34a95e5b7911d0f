//! The extended affine Weyl group of `GL_n` with a detached similitude factor.
//!
//! Elements are extended affine permutations `f: Z -> Z` with
//! `f(i + n) = f(i) + n`, stored by their window `f(1), ..., f(n)`. A translation
//! `phi^lambda` has window `f(i) = i + n * lambda_i`, a finite permutation `u`
//! has window `u(1), ..., u(n)`, and products are composition of functions.
//!
//! The similitude tag is the second factor of `W~_G = W~_{GL_n} x Z`. It adds
//! under multiplication, is fixed by the Frobenius and never enters length,
//! Bruhat order or supports.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::perm;
use crate::refset::RefSet;

/// Largest rank supported; reflection sets are 64-bit masks.
pub const MAX_RANK: usize = 64;

const WINDOW_BOUND: i64 = 1 << 31;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    window: Vec<i64>,
    similitude: i64,
}

/// A simple affine reflection `s_i`, `0 <= i < n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleRef {
    index: usize,
}

impl SimpleRef {
    pub fn new(n: usize, index: usize) -> Result<Self> {
        if index >= n {
            return Err(Error::InvalidSimpleRef { index, n });
        }
        Ok(SimpleRef { index })
    }

    pub fn index(self) -> usize {
        self.index
    }

    /// Validates a list of indices.
    pub fn word(n: usize, indices: &[usize]) -> Result<Vec<Self>> {
        indices.iter().map(|&i| SimpleRef::new(n, i)).collect()
    }

    pub fn is_affine(self) -> bool {
        self.index == 0
    }

    pub fn element(self, n: usize) -> WeylElement {
        WeylElement::simple(n, self.index)
    }
}

/// A cocharacter `((m_1, ..., m_n), c)` of the torus of `GU(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cocharacter {
    pub coords: Vec<i64>,
    pub similitude: i64,
}

impl Cocharacter {
    pub fn new(coords: Vec<i64>, similitude: i64) -> Self {
        Cocharacter { coords, similitude }
    }

    pub fn zero(n: usize) -> Self {
        Cocharacter::new(vec![0; n], 0)
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.windows(2).all(|w| w[0] >= w[1])
    }

    /// `<lambda, 2 rho>`, i.e. the sum of `<alpha, lambda>` over positive roots.
    pub fn pair_two_rho(&self) -> i64 {
        let m = &self.coords;
        let mut total = 0;
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                total += m[i] - m[j];
            }
        }
        total
    }

    /// The Frobenius on cocharacters: `(m_i) -> (-m_{n+1-i})`.
    pub fn sigma(&self) -> Self {
        let coords = self.coords.iter().rev().map(|m| -m).collect();
        Cocharacter::new(coords, self.similitude)
    }
}

/// A reduced expression `w = s_{a_1} ... s_{a_r} tau_1^omega` (times the similitude tag).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedWord {
    pub letters: Vec<usize>,
    pub omega: i64,
    pub similitude: i64,
}

impl ReducedWord {
    pub fn to_element(&self, n: usize) -> WeylElement {
        let mut w = WeylElement::tau1(n).pow(self.omega);
        for &a in self.letters.iter().rev() {
            w = w.lmul_simple(a);
        }
        w.similitude = self.similitude;
        w
    }
}

/// `w = x phi^lambda y` with `lambda` dominant, `x, y` finite and `phi^lambda y`
/// a minimal length representative in `W_0 \ W~`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XmyDecomposition {
    pub x: WeylElement,
    pub lambda: Cocharacter,
    pub y: WeylElement,
}

#[inline]
fn residue(v: i64, n: i64) -> (i64, i64) {
    // v = r + n q with r in 1..=n
    let q = (v - 1).div_euclid(n);
    (v - q * n, q)
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement {
            window: (1..=n as i64).collect(),
            similitude: 0,
        }
    }

    /// Validates the window: residues mod `n` must be a permutation and the
    /// entries must stay well inside machine range.
    pub fn from_window(window: Vec<i64>, similitude: i64) -> Result<Self> {
        let n = window.len();
        if !(2..=MAX_RANK).contains(&n) {
            return Err(Error::InvalidRank(n));
        }
        if window.iter().any(|v| v.abs() >= WINDOW_BOUND) {
            return Err(Error::InvalidWindow(window, "entry exceeds 2^31"));
        }
        let mut seen = vec![false; n];
        for &v in &window {
            let (r, _) = residue(v, n as i64);
            if std::mem::replace(&mut seen[(r - 1) as usize], true) {
                return Err(Error::InvalidWindow(window, "residues are not distinct mod n"));
            }
        }
        Ok(WeylElement { window, similitude })
    }

    pub fn simple(n: usize, i: usize) -> Self {
        assert!(i < n, "simple reflection s{i} out of range for n = {n}");
        let mut w = Self::identity(n);
        if i == 0 {
            w.window[0] = 0;
            w.window[n - 1] = n as i64 + 1;
        } else {
            w.window.swap(i - 1, i);
        }
        w
    }

    /// `phi^lambda`, window `f(i) = i + n lambda_i`.
    pub fn translation(lambda: &Cocharacter) -> Self {
        let n = lambda.rank() as i64;
        let window = lambda
            .coords
            .iter()
            .enumerate()
            .map(|(i, m)| i as i64 + 1 + n * m)
            .collect();
        WeylElement {
            window,
            similitude: lambda.similitude,
        }
    }

    /// Finite permutation given 0-based: `perm[i]` is the image of `i`.
    pub fn from_perm(perm: &[usize]) -> Self {
        WeylElement {
            window: perm.iter().map(|&x| x as i64 + 1).collect(),
            similitude: 0,
        }
    }

    /// The product `s_{a_1} s_{a_2} ... s_{a_r}`.
    pub fn from_word(n: usize, letters: &[usize]) -> Result<Self> {
        let mut w = Self::identity(n);
        for &a in letters.iter().rev() {
            SimpleRef::new(n, a)?;
            w = w.lmul_simple(a);
        }
        Ok(w)
    }

    /// The generator `tau_1 = phi^{(1,0,...,0)} s_1 s_2 ... s_{n-1}` of `Omega`.
    pub fn tau1(n: usize) -> Self {
        let mut lambda = Cocharacter::zero(n);
        lambda.coords[0] = 1;
        let word: Vec<usize> = (1..n).collect();
        &Self::translation(&lambda) * &Self::from_word(n, &word).expect("indices in range")
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn similitude(&self) -> i64 {
        self.similitude
    }

    pub fn with_similitude(mut self, similitude: i64) -> Self {
        self.similitude = similitude;
        self
    }

    /// `f(m)` for any integer `m`.
    #[inline]
    pub fn eval(&self, m: i64) -> i64 {
        let n = self.window.len() as i64;
        let (r, q) = residue(m, n);
        self.window[(r - 1) as usize] + q * n
    }

    pub fn checked_mul(&self, other: &WeylElement) -> Result<WeylElement> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        let window = other.window.iter().map(|&v| self.eval(v)).collect::<Vec<_>>();
        debug_assert!(window.iter().all(|v| v.abs() < WINDOW_BOUND));
        Ok(WeylElement {
            window,
            similitude: self.similitude + other.similitude,
        })
    }

    pub fn inv(&self) -> WeylElement {
        let n = self.rank() as i64;
        let mut window = vec![0; self.rank()];
        for (i, &v) in self.window.iter().enumerate() {
            let (r, q) = residue(v, n);
            window[(r - 1) as usize] = i as i64 + 1 - q * n;
        }
        WeylElement {
            window,
            similitude: -self.similitude,
        }
    }

    pub fn pow(&self, e: i64) -> WeylElement {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut out = Self::identity(self.rank());
        for _ in 0..e.unsigned_abs() {
            out = &out * &base;
        }
        out.similitude = self.similitude * e;
        out
    }

    /// Length as the affine inversion count `sum_{i<j} |floor((f(j) - f(i)) / n)|`.
    pub fn length(&self) -> usize {
        let n = self.rank() as i64;
        let f = &self.window;
        let mut len = 0;
        for i in 0..f.len() {
            for j in i + 1..f.len() {
                len += (f[j] - f[i]).div_euclid(n).unsigned_abs() as usize;
            }
        }
        len
    }

    /// The Frobenius: window `g(i) = n + 1 - f(n + 1 - i)`. It is an involution.
    pub fn sigma(&self) -> WeylElement {
        let n = self.rank() as i64;
        let window = self.window.iter().rev().map(|v| n + 1 - v).collect();
        WeylElement {
            window,
            similitude: self.similitude,
        }
    }

    /// The power `m` of `tau_1` in the `Omega`-component, `sum (f(i) - i) / n`.
    pub fn omega_component(&self) -> i64 {
        let n = self.rank() as i64;
        let shift: i64 = self
            .window
            .iter()
            .enumerate()
            .map(|(i, v)| v - (i as i64 + 1))
            .sum();
        debug_assert_eq!(shift.rem_euclid(n), 0);
        shift / n
    }

    /// `(w tau_1^{-m}, m)`; the first factor lies in `W_a` (with the similitude tag kept).
    pub fn affine_part(&self) -> (WeylElement, i64) {
        let m = self.omega_component();
        let mut a = self * &Self::tau1(self.rank()).pow(-m);
        a.similitude = self.similitude;
        (a, m)
    }

    /// `s_i w`: swaps the values congruent to `i` and `i + 1`.
    pub fn lmul_simple(&self, i: usize) -> WeylElement {
        let n = self.rank() as i64;
        let lo = if i == 0 { n } else { i as i64 };
        let window = self
            .window
            .iter()
            .map(|&v| {
                let r = residue(v, n).0;
                if r == lo {
                    v + 1
                } else if r == lo % n + 1 {
                    v - 1
                } else {
                    v
                }
            })
            .collect();
        WeylElement {
            window,
            similitude: self.similitude,
        }
    }

    /// `w s_i`: swaps window positions `i` and `i + 1`.
    pub fn rmul_simple(&self, i: usize) -> WeylElement {
        let n = self.rank();
        let mut w = self.clone();
        if i == 0 {
            let first = w.window[0];
            w.window[0] = w.window[n - 1] - n as i64;
            w.window[n - 1] = first + n as i64;
        } else {
            w.window.swap(i - 1, i);
        }
        w
    }

    /// `s_i w sigma(s_i)`.
    pub fn sigma_conjugate_simple(&self, i: usize) -> WeylElement {
        let n = self.rank();
        self.lmul_simple(i).rmul_simple((n - i) % n)
    }

    /// Positions of the values `0, 1, ..., n` under `w^{-1}`.
    fn inverse_positions(&self) -> Vec<i64> {
        self.inv().window
    }

    pub fn is_left_descent(&self, i: usize) -> bool {
        let n = self.rank();
        let inv = self.inverse_positions();
        if i == 0 {
            inv[n - 1] - n as i64 > inv[0]
        } else {
            inv[i - 1] > inv[i]
        }
    }

    pub fn left_descents(&self) -> RefSet {
        let n = self.rank();
        let inv = self.inverse_positions();
        let mut set = RefSet::empty();
        if inv[n - 1] - n as i64 > inv[0] {
            set.insert(0);
        }
        for i in 1..n {
            if inv[i - 1] > inv[i] {
                set.insert(i);
            }
        }
        set
    }

    pub fn right_descents(&self) -> RefSet {
        let n = self.rank();
        let f = &self.window;
        let mut set = RefSet::empty();
        if f[n - 1] - n as i64 > f[0] {
            set.insert(0);
        }
        for i in 1..n {
            if f[i - 1] > f[i] {
                set.insert(i);
            }
        }
        set
    }

    /// Peels off left descents (smallest index first) until a length zero
    /// element `tau_1^m` remains.
    pub fn reduced_word(&self) -> ReducedWord {
        let mut letters = Vec::with_capacity(self.length());
        let mut w = self.clone();
        while let Some(s) = w.left_descents().iter().next() {
            letters.push(s);
            w = w.lmul_simple(s);
        }
        debug_assert_eq!(w.length(), 0);
        ReducedWord {
            letters,
            omega: w.omega_component(),
            similitude: self.similitude,
        }
    }

    /// Bruhat order by the descent recursion: for a left descent `s` of `w`,
    /// `u <= w` iff `su <= sw` when `s` is also a descent of `u`, else iff `u <= sw`.
    /// Elements of different `Omega`-cosets are incomparable.
    pub fn bruhat_leq(&self, other: &WeylElement) -> bool {
        if self.rank() != other.rank()
            || self.similitude != other.similitude
            || self.omega_component() != other.omega_component()
        {
            return false;
        }
        let mut u = self.clone();
        let mut w = other.clone();
        loop {
            if u == w {
                return true;
            }
            if u.length() >= w.length() {
                return false;
            }
            let s = w
                .left_descents()
                .iter()
                .next()
                .expect("positive length element has a left descent");
            if u.is_left_descent(s) {
                u = u.lmul_simple(s);
            }
            w = w.lmul_simple(s);
        }
    }

    /// Membership in `^S W~`: no finite simple reflection is a left descent.
    pub fn is_min_coset_rep(&self) -> bool {
        self.left_descents().intersection(RefSet::finite(self.rank())).is_empty()
    }

    /// `nu` with `w = p(w) phi^nu`.
    pub fn translation_part(&self) -> Vec<i64> {
        let n = self.rank() as i64;
        self.window.iter().map(|&v| residue(v, n).1).collect()
    }

    /// The projection `p: W~ -> W_0`, as a finite element.
    pub fn finite_part(&self) -> WeylElement {
        let n = self.rank() as i64;
        WeylElement {
            window: self.window.iter().map(|&v| residue(v, n).0).collect(),
            similitude: 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        let n = self.rank() as i64;
        self.window.iter().all(|&v| (1..=n).contains(&v))
    }

    /// The 0-based permutation of a finite element.
    pub fn to_perm(&self) -> Result<Vec<usize>> {
        if !self.is_finite() {
            return Err(Error::NotFinite(self.to_string()));
        }
        Ok(self.window.iter().map(|&v| (v - 1) as usize).collect())
    }

    /// If this is a simple reflection `s_i` (trivial similitude), its index.
    pub fn as_simple(&self) -> Option<usize> {
        if self.similitude != 0 {
            return None;
        }
        if self.length() != 1 || self.omega_component() != 0 {
            return None;
        }
        self.left_descents().iter().next()
    }

    /// The unique `w = x phi^lambda y` with `lambda` dominant and `phi^lambda y in ^S W~`.
    ///
    /// `lambda` sorts the translation part `nu` of `w = u phi^nu` decreasingly;
    /// `y^{-1}` maps each block of equal `lambda`-entries increasingly onto the
    /// positions of `nu` carrying that value, and `x = u y^{-1}`.
    pub fn decompose_xmy(&self) -> XmyDecomposition {
        let n = self.rank();
        let nu = self.translation_part();
        let u = self.finite_part().to_perm().expect("finite part is finite");
        let mut order: Vec<usize> = (0..n).collect();
        // stable sort keeps equal values in increasing position order
        order.sort_by(|&a, &b| nu[b].cmp(&nu[a]));
        let lambda: Vec<i64> = order.iter().map(|&p| nu[p]).collect();
        // y^{-1}(i) = order[i]
        let y_inv = order;
        let y = perm::inverse(&y_inv);
        let x = perm::compose(&u, &y_inv);
        XmyDecomposition {
            x: WeylElement::from_perm(&x),
            lambda: Cocharacter::new(lambda, self.similitude),
            y: WeylElement::from_perm(&y),
        }
    }
}

impl Mul<&WeylElement> for &WeylElement {
    type Output = WeylElement;

    fn mul(self, rhs: &WeylElement) -> WeylElement {
        match self.checked_mul(rhs) {
            Ok(w) => w,
            Err(e) => panic!("{e}"),
        }
    }
}

impl Mul for WeylElement {
    type Output = WeylElement;

    fn mul(self, rhs: WeylElement) -> WeylElement {
        &self * &rhs
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.window.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "];sim={}", self.similitude)
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, i: usize) -> WeylElement {
        WeylElement::simple(n, i)
    }

    #[test]
    fn translation_of_zero_is_identity() {
        let w = WeylElement::translation(&Cocharacter::zero(4));
        assert_eq!(w, WeylElement::identity(4));
    }

    #[test]
    fn translation_window_for_mu() {
        let mu = Cocharacter::new(vec![0, 0, 0, -1, -1], -1);
        let w = WeylElement::translation(&mu);
        assert_eq!(w.window(), &[1, 2, 3, -1, 0]);
        assert_eq!(w.omega_component(), -2);
        assert!(w.finite_part() == WeylElement::identity(5));
    }

    #[test]
    fn s0_is_translation_times_transposition() {
        let n = 5;
        let coroot = Cocharacter::new(vec![1, 0, 0, 0, -1], 0);
        let transposition = WeylElement::from_perm(&[4, 1, 2, 3, 0]);
        assert_eq!(&WeylElement::translation(&coroot) * &transposition, s(n, 0));
    }

    #[test]
    fn tau1_is_length_zero_generator() {
        let t = WeylElement::tau1(5);
        assert_eq!(t.length(), 0);
        assert_eq!(t.omega_component(), 1);
        assert_eq!(&t.inv() * &t, WeylElement::identity(5));
    }

    #[test]
    fn simple_reflections_are_involutions() {
        for i in 0..4 {
            assert_eq!(&s(4, i) * &s(4, i), WeylElement::identity(4));
            assert_eq!(s(4, i).length(), 1);
        }
        assert_ne!(&s(4, 1) * &s(4, 2), &s(4, 2) * &s(4, 1));
    }

    #[test]
    fn left_and_right_multiplication_agree_with_product() {
        let w = WeylElement::from_word(5, &[0, 3, 2, 4]).unwrap() * WeylElement::tau1(5);
        for i in 0..5 {
            assert_eq!(w.lmul_simple(i), &s(5, i) * &w);
            assert_eq!(w.rmul_simple(i), &w * &s(5, i));
        }
    }

    #[test]
    fn sigma_on_generators() {
        for n in 2..=20 {
            for i in 0..n {
                assert_eq!(s(n, i).sigma(), s(n, (n - i) % n));
            }
            assert_eq!(WeylElement::identity(n).sigma(), WeylElement::identity(n));
        }
    }

    #[test]
    fn sigma_on_translations() {
        let lambda = Cocharacter::new(vec![2, 0, -1, 5], 3);
        assert_eq!(
            WeylElement::translation(&lambda).sigma(),
            WeylElement::translation(&lambda.sigma())
        );
    }

    #[test]
    fn reduced_word_of_identity() {
        let rw = WeylElement::identity(3).reduced_word();
        assert!(rw.letters.is_empty());
        assert_eq!(rw.omega, 0);
        assert_eq!(s(4, 2).reduced_word().letters, vec![2]);
    }

    #[test]
    fn as_simple_recognises_generators() {
        for n in 2..7 {
            for i in 0..n {
                assert_eq!(s(n, i).as_simple(), Some(i), "n={n} i={i}");
            }
            assert_eq!(WeylElement::identity(n).as_simple(), None);
            assert_eq!(WeylElement::tau1(n).as_simple(), None);
        }
        assert_eq!((s(4, 1) * s(4, 2)).as_simple(), None);
        assert_eq!(WeylElement::from_perm(&[2, 1, 0, 3]).as_simple(), None);
    }

    #[test]
    fn bruhat_small_cases() {
        let a = s(3, 1);
        let b = s(3, 1) * s(3, 2);
        assert!(a.bruhat_leq(&b));
        assert!(!b.bruhat_leq(&a));
        assert!(b.bruhat_leq(&b));
        assert!(!s(3, 0).bruhat_leq(&WeylElement::tau1(3)));
    }

    #[test]
    fn min_coset_reps() {
        assert!(WeylElement::identity(4).is_min_coset_rep());
        assert!(!s(4, 1).is_min_coset_rep());
        assert!(s(4, 0).is_min_coset_rep());
    }

    #[test]
    fn from_window_rejects_bad_residues() {
        assert!(WeylElement::from_window(vec![1, 1, 3], 0).is_err());
        assert!(WeylElement::from_window(vec![1], 0).is_err());
        assert!(WeylElement::from_window(vec![4, 2, 0], 0).is_ok());
        assert!(matches!(
            WeylElement::identity(3).checked_mul(&WeylElement::identity(4)),
            Err(Error::RankMismatch(3, 4))
        ));
    }

    #[test]
    fn decompose_identity_and_dominant_translation() {
        let d = WeylElement::identity(4).decompose_xmy();
        assert_eq!(d.x, WeylElement::identity(4));
        assert_eq!(d.y, WeylElement::identity(4));
        assert_eq!(d.lambda.coords, vec![0; 4]);

        let lambda = Cocharacter::new(vec![3, 1, 0, -2], 0);
        let d = WeylElement::translation(&lambda).decompose_xmy();
        assert_eq!(d.lambda, lambda);
        assert_eq!(d.x, WeylElement::identity(4));
        assert_eq!(d.y, WeylElement::identity(4));
    }

    #[test]
    fn display_format() {
        assert_eq!(s(3, 0).to_string(), "[0,2,4];sim=0");
    }
}
