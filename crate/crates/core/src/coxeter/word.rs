use std::cmp::Ordering;
use std::fmt;

use super::CoxeterMatrix;

/// A word in the simple generators, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Self(letters)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        Self(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn pow(&self, k: usize) -> Self {
        Self(self.0.repeat(k))
    }

    /// Space-separated generator names; `e` for the empty word.
    pub fn display<'a>(&'a self, matrix: &'a CoxeterMatrix) -> impl fmt::Display + 'a {
        WordDisplay { word: self, matrix }
    }
}

impl From<Vec<usize>> for Word {
    fn from(letters: Vec<usize>) -> Self {
        Self(letters)
    }
}

impl FromIterator<usize> for Word {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

struct WordDisplay<'a> {
    word: &'a Word,
    matrix: &'a CoxeterMatrix,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("e");
        }
        for (k, &i) in self.word.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.matrix.name(i))?;
        }
        Ok(())
    }
}

/// A set of generator indices, stored as a bitset.
///
/// Ordering is lexicographic on the ascending index lists, so `{0, 5}` sorts
/// before `{1}` and `{0}` before `{0, 1}`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct GeneratorSubset {
    blocks: Vec<u64>,
}

impl GeneratorSubset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices.into_iter().collect()
    }

    /// `{0, 1, ..., n - 1}`.
    pub fn full(n: usize) -> Self {
        (0..n).collect()
    }

    pub fn insert(&mut self, i: usize) {
        let (block, bit) = (i / 64, i % 64);
        if self.blocks.len() <= block {
            self.blocks.resize(block + 1, 0);
        }
        self.blocks[block] |= 1 << bit;
    }

    pub fn remove(&mut self, i: usize) {
        if let Some(b) = self.blocks.get_mut(i / 64) {
            *b &= !(1 << (i % 64));
        }
        self.trim();
    }

    fn trim(&mut self) {
        while self.blocks.last() == Some(&0) {
            self.blocks.pop();
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.blocks.get(i / 64).is_some_and(|b| b >> (i % 64) & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(k, &b)| (0..64).filter(move |bit| b >> bit & 1 == 1).map(move |bit| k * 64 + bit))
    }

    pub fn max(&self) -> Option<usize> {
        self.iter().last()
    }

    pub fn with(&self, i: usize) -> Self {
        let mut s = self.clone();
        s.insert(i);
        s
    }

    pub fn without(&self, i: usize) -> Self {
        let mut s = self.clone();
        s.remove(i);
        s
    }

    pub fn union(&self, other: &Self) -> Self {
        self.iter().chain(other.iter()).collect()
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.iter().filter(|&i| other.contains(i)).collect()
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.iter().filter(|&i| !other.contains(i)).collect()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.iter().all(|i| other.contains(i))
    }

    /// All subsets of `{0..n}` with at most `max_size` elements, ordered by
    /// size and then lexicographically.
    pub fn all_up_to(n: usize, max_size: usize) -> Vec<Self> {
        let mut layer = vec![Self::new()];
        let mut all = layer.clone();
        for _ in 0..max_size.min(n) {
            let next: Vec<Self> = layer
                .iter()
                .flat_map(|s| {
                    let start = s.max().map_or(0, |m| m + 1);
                    (start..n).map(move |i| s.with(i))
                })
                .collect();
            all.extend(next.iter().cloned());
            layer = next;
        }
        all
    }

    pub fn display<'a>(&'a self, matrix: &'a CoxeterMatrix) -> impl fmt::Display + 'a {
        SubsetDisplay { subset: self, matrix }
    }

    pub fn names(&self, matrix: &CoxeterMatrix) -> Vec<String> {
        self.iter().map(|i| matrix.name(i).to_string()).collect()
    }
}

impl FromIterator<usize> for GeneratorSubset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::new();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl Ord for GeneratorSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for GeneratorSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GeneratorSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

struct SubsetDisplay<'a> {
    subset: &'a GeneratorSubset,
    matrix: &'a CoxeterMatrix,
}

impl fmt::Display for SubsetDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.subset.names(self.matrix).join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_basics() {
        let mut s = GeneratorSubset::from_indices([3, 70, 1]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 3, 70]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(70) && !s.contains(2));
        s.remove(70);
        assert_eq!(s, GeneratorSubset::from_indices([1, 3]));
        s.remove(1);
        s.remove(3);
        assert!(s.is_empty());
        assert_eq!(s, GeneratorSubset::new());
    }

    #[test]
    fn subset_order_is_lexicographic_on_index_lists() {
        let a = GeneratorSubset::from_indices([0, 5]);
        let b = GeneratorSubset::from_indices([1]);
        let c = GeneratorSubset::from_indices([0]);
        assert!(a < b);
        assert!(c < a);
        assert!(GeneratorSubset::new() < c);
    }

    #[test]
    fn subset_algebra() {
        let a = GeneratorSubset::from_indices([0, 1, 2]);
        let b = GeneratorSubset::from_indices([2, 3]);
        assert_eq!(a.union(&b), GeneratorSubset::full(4));
        assert_eq!(a.intersection(&b), GeneratorSubset::from_indices([2]));
        assert_eq!(a.difference(&b), GeneratorSubset::from_indices([0, 1]));
        assert!(GeneratorSubset::from_indices([1, 2]).is_subset(&a));
    }

    #[test]
    fn all_up_to_counts() {
        assert_eq!(GeneratorSubset::all_up_to(12, 4).len(), 1 + 12 + 66 + 220 + 495);
        assert_eq!(GeneratorSubset::all_up_to(3, 10).len(), 8);
    }

    #[test]
    fn word_ops() {
        let w = Word::new(vec![0, 1]);
        assert_eq!(w.pow(3).letters(), &[0, 1, 0, 1, 0, 1]);
        assert_eq!(w.reversed().letters(), &[1, 0]);
        assert_eq!(w.concat(&Word::new(vec![2])).len(), 3);
        let m = CoxeterMatrix::free(CoxeterMatrix::default_names(3));
        assert_eq!(w.display(&m).to_string(), "s_1 s_2");
        assert_eq!(Word::empty().display(&m).to_string(), "e");
    }
}
