use std::cmp::Ordering;

use smallvec::SmallVec;

/// A monomial in the free algebra: a sequence of generator indices.
///
/// Ordered by length first, then lexicographically by generator index,
/// which is the canonical term order used everywhere in this crate.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[u8; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(g: usize) -> Self {
        Word(SmallVec::from_slice(&[g as u8]))
    }

    pub fn from_letters(letters: &[usize]) -> Self {
        Word(letters.iter().map(|&l| l as u8).collect())
    }

    pub fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&l| l as usize)
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn max_letter(&self) -> Option<usize> {
        self.0.iter().max().map(|&l| l as usize)
    }

    /// Letters sorted ascending: the lexicographically smallest rearrangement.
    pub fn sorted(&self) -> Word {
        let mut v = self.0.clone();
        v.sort_unstable();
        Word(v)
    }

    /// Index in the base-`g` numbering of words of this length (first letter
    /// most significant), so index order equals lexicographic order.
    pub fn index(&self, g: usize) -> u64 {
        self.0.iter().fold(0u64, |acc, &l| acc * g as u64 + l as u64)
    }

    pub fn from_index(mut idx: u64, len: usize, g: usize) -> Word {
        let mut v: SmallVec<[u8; 8]> = SmallVec::from_elem(0, len);
        for slot in v.iter_mut().rev() {
            *slot = (idx % g as u64) as u8;
            idx /= g as u64;
        }
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// All words of length `n` over `g` letters, in index order.
pub fn words_of_length(g: usize, n: usize) -> impl Iterator<Item = Word> {
    let count = (g as u64).pow(n as u32);
    (0..count).map(move |i| Word::from_index(i, n, g))
}
