//! Permutations of `{1..n}`.
//!
//! Labels are 1-based at the public surface and 0-based in storage.
//! Composition follows the functional convention: `a.compose(&b)` is the
//! map `x ↦ a(b(x))`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::PermutationError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

/// Sorted (ascending) multiset of cycle lengths, fixed points included.
///
/// The derived order is lexicographic on the sorted lengths, which is the
/// order used to pick first rows in canonical-form search.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(pub Vec<usize>);

pub(crate) fn anchored_type0(images: &[usize], point: usize) -> (usize, CycleType) {
    let n = images.len();
    let mut seen = vec![false; n];
    let mut lengths = Vec::new();
    let mut anchored = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let (mut x, mut len, mut hit) = (start, 0, false);
        while !seen[x] {
            seen[x] = true;
            hit |= x == point;
            len += 1;
            x = images[x];
        }
        if hit {
            anchored = len;
        } else {
            lengths.push(len);
        }
    }
    lengths.sort_unstable();
    (anchored, CycleType(lengths))
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from its 1-based image list.
    pub fn from_images(images: &[usize]) -> Result<Self, PermutationError> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut zero_based = Vec::with_capacity(n);
        for (position, &value) in images.iter().enumerate() {
            if value == 0 || value > n {
                return Err(PermutationError::OutOfRange {
                    position: position + 1,
                    value,
                    n,
                });
            }
            if std::mem::replace(&mut seen[value - 1], true) {
                return Err(PermutationError::Repeated { value });
            }
            zero_based.push(value - 1);
        }
        Ok(Permutation { images: zero_based })
    }

    /// Builds a permutation of `{1..n}` from disjoint cycles in 1-based labels.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, PermutationError> {
        let mut images: Vec<Option<usize>> = vec![None; n];
        for cycle in cycles {
            for (k, &label) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                for (position, value) in [(label, label), (label, next)] {
                    if value == 0 || value > n {
                        return Err(PermutationError::OutOfRange { position, value, n });
                    }
                }
                if images[label - 1].replace(next - 1).is_some() {
                    return Err(PermutationError::Repeated { value: label });
                }
            }
        }
        let images: Vec<usize> = images
            .into_iter()
            .enumerate()
            .map(|(i, im)| im.unwrap_or(i))
            .collect();
        Ok(Self::from_zero_based_unchecked(images))
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Result<Self, PermutationError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (position, &value) in images.iter().enumerate() {
            if value >= n {
                return Err(PermutationError::OutOfRange {
                    position: position + 1,
                    value: value + 1,
                    n,
                });
            }
            if std::mem::replace(&mut seen[value], true) {
                return Err(PermutationError::Repeated { value: value + 1 });
            }
        }
        Ok(Permutation { images })
    }

    /// Caller guarantees `images` is a bijection of `0..len`.
    pub(crate) fn from_zero_based_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Self::from_zero_based(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// Image of the 1-based label `i`. Panics if `i` is out of range.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// The 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    pub(crate) fn as_slice(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub(crate) fn apply0(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.len(),
            other.len(),
            "composing permutations of different degree"
        );
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.len() == other.len() && self.compose(other) == other.compose(self)
    }

    /// Disjoint cycles in 1-based labels, each starting at its least
    /// element, ordered by that element. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lengths.sort_unstable();
        CycleType(lengths)
    }

    /// Length of the cycle through the 1-based `point`, and the cycle type
    /// of the other cycles.
    ///
    /// Among conjugates `σπσ⁻¹` with `σ(point) = 1`, the least image list
    /// starts `2, 3, …, L, 1` and continues with the remaining cycles on
    /// consecutive labels, shortest first. Comparing these keys therefore
    /// compares those least conjugates.
    pub fn anchored_type(&self, point: usize) -> (usize, CycleType) {
        anchored_type0(&self.images, point - 1)
    }

    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycle_type()
            .0
            .iter()
            .fold(1u64, |acc, &l| acc / gcd(acc, l as u64) * l as u64)
    }

    /// Cycle notation without fixed points, `()` for the identity.
    pub fn to_cycle_string(&self) -> String {
        let parts: Vec<String> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let inner: Vec<String> = c.iter().map(usize::to_string).collect();
                format!("({})", inner.join(","))
            })
            .collect();
        if parts.is_empty() {
            "()".to_string()
        } else {
            parts.concat()
        }
    }

    /// All permutations of `0..n` as 0-based image vectors, in lexicographic order.
    pub(crate) fn all_zero_based(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(current.clone());
            if !next_permutation(&mut current) {
                break;
            }
        }
        out
    }

    /// Every permutation of `{1..n}`, in lexicographic order of image lists.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        Self::all_zero_based(n)
            .into_iter()
            .map(|images| Permutation { images })
    }
}

/// Advances `v` to its lexicographic successor; false when `v` was the last one.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for Permutation {
    /// Comma-separated 1-based image list, e.g. `2,1,3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &x) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]", self)
    }
}

impl FromStr for Permutation {
    type Err = PermutationError;

    /// Parses a comma-separated 1-based image list such as `2,1,3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PermutationError::Syntax("empty image list".into()));
        }
        let images = s
            .split(',')
            .map(|tok| {
                tok.trim().parse::<usize>().map_err(|_| {
                    PermutationError::Syntax(format!("`{}` is not a label", tok.trim()))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::from_images(&images)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.images().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(deserializer)?;
        Permutation::from_images(&images).map_err(serde::de::Error::custom)
    }
}
