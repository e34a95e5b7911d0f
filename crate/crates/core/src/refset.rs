use std::fmt;

/// A set of simple affine reflections `s_0, ..., s_{n-1}`, stored as a bitmask.
///
/// Index 0 is the affine reflection; `1..n` are the finite ones. Iteration is
/// in ascending index order, which keeps every serialized form deterministic.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RefSet(u64);

impl RefSet {
    pub const fn empty() -> Self {
        RefSet(0)
    }

    pub const fn from_bits(bits: u64) -> Self {
        RefSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// All of `S~ = {s_0, ..., s_{n-1}}`.
    pub fn affine(n: usize) -> Self {
        if n >= 64 {
            RefSet(u64::MAX)
        } else {
            RefSet((1u64 << n) - 1)
        }
    }

    /// The finite simple reflections `S = {s_1, ..., s_{n-1}}`.
    pub fn finite(n: usize) -> Self {
        RefSet(Self::affine(n).0 & !1)
    }

    pub fn singleton(i: usize) -> Self {
        RefSet(1u64 << i)
    }

    /// Collects indices, reducing each modulo `n`.
    pub fn from_indices_mod(n: usize, indices: impl IntoIterator<Item = i64>) -> Self {
        let mut set = RefSet::empty();
        for i in indices {
            set.insert(i.rem_euclid(n as i64) as usize);
        }
        set
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1u64 << i) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: RefSet) -> RefSet {
        RefSet(self.0 | other.0)
    }

    pub fn intersection(self, other: RefSet) -> RefSet {
        RefSet(self.0 & other.0)
    }

    pub fn difference(self, other: RefSet) -> RefSet {
        RefSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: RefSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Conjugation by `tau_1`: `s_i -> s_{i+1}` with indices mod `n`.
    pub fn shift(self, n: usize, by: i64) -> RefSet {
        RefSet::from_indices_mod(n, self.iter().map(|i| i as i64 + by))
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |i| bits & (1u64 << i) != 0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for RefSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut set = RefSet::empty();
        for i in iter {
            set.insert(i);
        }
        set
    }
}

impl fmt::Debug for RefSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RefSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (pos, i) in self.iter().enumerate() {
            if pos > 0 {
                f.write_str(",")?;
            }
            write!(f, "s{i}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_excludes_affine_node() {
        let s = RefSet::finite(5);
        assert_eq!(s.to_vec(), vec![1, 2, 3, 4]);
        assert!(!s.contains(0));
        assert_eq!(RefSet::affine(5).len(), 5);
    }

    #[test]
    fn shift_wraps() {
        let s: RefSet = [0, 4].into_iter().collect();
        assert_eq!(s.shift(5, 1).to_vec(), vec![0, 1]);
        assert_eq!(format!("{}", s), "{s0,s4}");
    }

    #[test]
    fn set_algebra() {
        let a: RefSet = [1, 2, 3].into_iter().collect();
        let b: RefSet = [3, 4].into_iter().collect();
        assert_eq!(a.union(b).len(), 4);
        assert_eq!(a.intersection(b).to_vec(), vec![3]);
        assert_eq!(a.difference(b).to_vec(), vec![1, 2]);
        assert!(a.intersection(b).is_subset(a));
    }
}
