use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `{1, ..., n}` in one-line notation.
///
/// Canonical text encoding: a digit string for `n <= 9` (`31254`),
/// comma-separated otherwise (`3,1,2,5,4,10,...`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<u32>,
}

impl Permutation {
    pub fn new(word: Vec<u32>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n];
        for &w in &word {
            if w == 0 || w as usize > n || seen[w as usize - 1] {
                return Err(Error::NotAPermutation { word, n });
            }
            seen[w as usize - 1] = true;
        }
        Ok(Permutation { word })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { word: (1..=n as u32).collect() }
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    /// All of `S_n` in lexicographic order. Allocates one word per element;
    /// for exhaustive sweeps at n >= 8 prefer [`visit_s_n`].
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        let mut words = Vec::new();
        visit_s_n(n, |w| words.push(Permutation { word: w.to_vec() }));
        words.into_iter()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.len() <= 9 {
            for w in &self.word {
                write!(f, "{w}")?;
            }
        } else {
            let toks: Vec<String> = self.word.iter().map(u32::to_string).collect();
            write!(f, "{}", toks.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let word: Vec<u32> = if s.contains(',') {
            s.split(',')
                .map(|tok| tok.trim().parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse { what: "permutation", input: s.to_string() })?
        } else {
            s.chars()
                .map(|c| c.to_digit(10))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Parse { what: "permutation", input: s.to_string() })?
        };
        Permutation::new(word)
    }
}

/// Calls `f` on every element of `S_n` in lexicographic order without
/// allocating per element. `visit_s_n(0, f)` visits the empty word once.
pub fn visit_s_n(n: usize, mut f: impl FnMut(&[u32])) {
    let mut word: Vec<u32> = (1..=n as u32).collect();
    loop {
        f(&word);
        if !next_lex_permutation(&mut word) {
            return;
        }
    }
}

/// Advances `word` to its lexicographic successor in place; false at the end.
fn next_lex_permutation(word: &mut [u32]) -> bool {
    if word.len() < 2 {
        return false;
    }
    let mut i = word.len() - 1;
    while i > 0 && word[i - 1] >= word[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = word.len() - 1;
    while word[j] <= word[i - 1] {
        j -= 1;
    }
    word.swap(i - 1, j);
    word[i..].reverse();
    true
}

/// A word of pairwise distinct letters drawn from the integers and the
/// half-integers `k* = k + 1/2`.
///
/// Letters are stored doubled so that order comparisons stay in integer
/// arithmetic: the integer `a` is stored as `2a` and `k*` as `2k + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InjectiveWord {
    doubled: Vec<u32>,
}

impl InjectiveWord {
    /// Builds a word from integer letters.
    pub fn from_integers(letters: &[u32]) -> Result<Self> {
        Self::from_doubled(letters.iter().map(|&a| 2 * a).collect())
    }

    pub fn from_permutation(w: &Permutation) -> Self {
        InjectiveWord { doubled: w.word().iter().map(|&a| 2 * a).collect() }
    }

    fn from_doubled(doubled: Vec<u32>) -> Result<Self> {
        for (i, &a) in doubled.iter().enumerate() {
            if let Some(j) = doubled[..i].iter().position(|&b| b == a) {
                return Err(Error::NonInjectiveWord { first: j + 1, second: i + 1 });
            }
        }
        Ok(InjectiveWord { doubled })
    }

    /// The word extended by the half-integer letter `k*`.
    pub fn star_extended(&self, k: u32) -> Self {
        let mut doubled = self.doubled.clone();
        doubled.push(2 * k + 1);
        Self::from_doubled(doubled).expect("a fresh star letter cannot repeat an integer letter")
    }

    pub fn len(&self) -> usize {
        self.doubled.len()
    }

    pub fn is_empty(&self) -> bool {
        self.doubled.is_empty()
    }

    /// Doubled letter values; order-isomorphic to the original letters.
    pub fn doubled(&self) -> &[u32] {
        &self.doubled
    }

    /// True when every letter is an integer (no star letters).
    pub fn is_integral(&self) -> bool {
        self.doubled.iter().all(|&a| a % 2 == 0)
    }

    /// The rank word: letter `a_i` maps to `#{j : a_j <= a_i}`.
    ///
    /// The result has the same relative order as the input and is the unique
    /// permutation with that property.
    pub fn flat(&self) -> Permutation {
        let n = self.doubled.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_unstable_by_key(|&i| self.doubled[i]);
        let mut word = vec![0u32; n];
        for (rank, &i) in order.iter().enumerate() {
            word[i] = rank as u32 + 1;
        }
        Permutation { word }
    }
}

impl fmt::Display for InjectiveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self
            .doubled
            .iter()
            .map(|&a| {
                if a % 2 == 0 {
                    format!("{}", a / 2)
                } else {
                    format!("{}*", (a - 1) / 2)
                }
            })
            .collect();
        write!(f, "{}", toks.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_permutation_words() {
        assert!(Permutation::new(vec![3, 1, 2, 5, 4]).is_ok());
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![2, 3]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
    }

    #[test]
    fn s_n_enumeration_is_lexicographic_and_complete() {
        let all: Vec<_> = Permutation::all(3).collect();
        let words: Vec<&[u32]> = all.iter().map(|p| p.word()).collect();
        assert_eq!(
            words,
            vec![
                &[1, 2, 3][..],
                &[1, 3, 2],
                &[2, 1, 3],
                &[2, 3, 1],
                &[3, 1, 2],
                &[3, 2, 1]
            ]
        );
        let mut count = 0u64;
        visit_s_n(6, |_| count += 1);
        assert_eq!(count, 720);
    }

    #[test]
    fn flat_of_an_integer_word() {
        let w = InjectiveWord::from_integers(&[1, 4, 3, 5]).unwrap();
        assert_eq!(w.flat().word(), &[1, 3, 2, 4]);
    }

    #[test]
    fn flat_fixes_permutations() {
        for p in Permutation::all(4) {
            assert_eq!(InjectiveWord::from_permutation(&p).flat(), p);
        }
    }

    #[test]
    fn flat_of_a_star_extended_word() {
        let w = InjectiveWord::from_integers(&[3, 1, 2, 4]).unwrap().star_extended(0);
        assert_eq!(w.to_string(), "3 1 2 4 0*");
        assert_eq!(w.flat().word(), &[4, 2, 3, 5, 1]);
    }

    #[test]
    fn rejects_repeated_letters() {
        let err = InjectiveWord::from_integers(&[2, 7, 2]).unwrap_err();
        assert_eq!(err, Error::NonInjectiveWord { first: 1, second: 3 });
    }

    #[test]
    fn display_encodings() {
        let p = Permutation::new(vec![3, 1, 2, 5, 4]).unwrap();
        assert_eq!(p.to_string(), "31254");
        assert_eq!("31254".parse::<Permutation>().unwrap(), p);
        let big = Permutation::identity(11);
        assert_eq!(big.to_string(), "1,2,3,4,5,6,7,8,9,10,11");
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
    }
}
