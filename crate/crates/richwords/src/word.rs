//! Finite words over explicit alphabets: factors, occurrences, reversal,
//! and complete return words. Everything here is immutable and pure.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Letters available for canonically generated alphabets (`Alphabet::canonical`).
const CANONICAL_LETTERS: &str = "0123456789abcdefghijklmnopqrstuvwxyz";

/// An ordered set of distinct letters. The ordering is total and fixed; it is
/// used for deterministic tie-breaking everywhere downstream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    /// Builds an alphabet from the given letters in the given order.
    pub fn new<I: IntoIterator<Item = char>>(letters: I) -> Result<Self> {
        let letters: Vec<char> = letters.into_iter().collect();
        if letters.is_empty() {
            return Err(Error::Parse(
                "alphabet must contain at least one letter".into(),
            ));
        }
        for (i, &c) in letters.iter().enumerate() {
            if !is_valid_letter(c) {
                return Err(Error::Parse(format!(
                    "letter {c:?} is not a printable non-whitespace character"
                )));
            }
            if letters[..i].contains(&c) {
                return Err(Error::Parse(format!("duplicate letter {c:?} in alphabet")));
            }
        }
        Ok(Alphabet { letters })
    }

    /// The canonical `d`-letter alphabet `0`, `1`, ..., `9`, `a`, `b`, ...
    pub fn canonical(d: usize) -> Result<Self> {
        if d == 0 || d > CANONICAL_LETTERS.len() {
            return Err(Error::Precondition(format!(
                "canonical alphabet size must be in 1..={}, got {d}",
                CANONICAL_LETTERS.len()
            )));
        }
        Alphabet::new(CANONICAL_LETTERS.chars().take(d))
    }

    pub fn size(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn letter(&self, index: usize) -> char {
        self.letters[index]
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.letters.iter().position(|&l| l == c)
    }

    pub fn contains(&self, c: char) -> bool {
        self.index_of(c).is_some()
    }

    /// Extends this alphabet with letters of `other` not already present,
    /// preserving both orders (used for joint alphabets).
    pub fn union(&self, other: &Alphabet) -> Alphabet {
        let mut letters = self.letters.clone();
        for &c in &other.letters {
            if !letters.contains(&c) {
                letters.push(c);
            }
        }
        Alphabet { letters }
    }
}

fn is_valid_letter(c: char) -> bool {
    !c.is_whitespace() && !c.is_control()
}

/// An immutable finite word. The empty word is valid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<char>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn from_letters<I: IntoIterator<Item = char>>(letters: I) -> Result<Word> {
        let letters: Vec<char> = letters.into_iter().collect();
        for &c in &letters {
            if !is_valid_letter(c) {
                return Err(Error::Parse(format!(
                    "letter {c:?} is not a printable non-whitespace character"
                )));
            }
        }
        Ok(Word { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn letter(&self, i: usize) -> char {
        self.letters[i]
    }

    /// The word with letters in reverse order.
    pub fn reverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    pub fn is_palindrome(&self) -> bool {
        let n = self.letters.len();
        (0..n / 2).all(|i| self.letters[i] == self.letters[n - 1 - i])
    }

    /// The factor at `range`, materialized as a word.
    pub fn subword(&self, range: std::ops::Range<usize>) -> Word {
        Word {
            letters: self.letters[range].to_vec(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Alphabet of the letters actually present, ordered by first appearance.
    pub fn inferred_alphabet(&self) -> Alphabet {
        let mut letters = Vec::new();
        for &c in &self.letters {
            if !letters.contains(&c) {
                letters.push(c);
            }
        }
        if letters.is_empty() {
            // The empty word has no letters; give it a one-letter placeholder
            // so downstream index structures stay well-formed.
            letters.push('0');
        }
        Alphabet { letters }
    }

    /// All start indices of `w` in `self`, ascending. The empty factor is
    /// rejected: every position would match.
    pub fn occurrences(&self, w: &Word) -> Result<Vec<usize>> {
        if w.is_empty() {
            return Err(Error::Precondition(
                "occurrences of the empty word are not defined".into(),
            ));
        }
        Ok(kmp_occurrences(&self.letters, &w.letters))
    }

    pub fn contains_factor(&self, w: &Word) -> bool {
        if w.is_empty() {
            return true;
        }
        !kmp_occurrences(&self.letters, &w.letters).is_empty()
    }

    /// The set of distinct factors of length `n`. Empty for `n > |self|`.
    pub fn factors(&self, n: usize) -> BTreeSet<Word> {
        let mut set = BTreeSet::new();
        if n == 0 {
            set.insert(Word::empty());
            return set;
        }
        if n > self.len() {
            return set;
        }
        for i in 0..=self.len() - n {
            set.insert(self.subword(i..i + n));
        }
        set
    }

    /// Finite-word factor complexity: the number of distinct length-`n` factors.
    pub fn complexity(&self, n: usize) -> usize {
        self.factors(n).len()
    }

    /// For each pair of consecutive occurrences of `w`, the factor spanning
    /// both, deduplicated. Fewer than two occurrences yields the empty set.
    pub fn complete_return_words(&self, w: &Word) -> Result<BTreeSet<Word>> {
        let occ = self.occurrences(w)?;
        let mut set = BTreeSet::new();
        for pair in occ.windows(2) {
            set.insert(self.subword(pair[0]..pair[1] + w.len()));
        }
        Ok(set)
    }
}

/// Knuth-Morris-Pratt with the failure function on the pattern.
fn kmp_occurrences(text: &[char], pattern: &[char]) -> Vec<usize> {
    debug_assert!(!pattern.is_empty());
    if pattern.len() > text.len() {
        return Vec::new();
    }
    let m = pattern.len();
    let mut fail = vec![0usize; m];
    let mut k = 0;
    for i in 1..m {
        while k > 0 && pattern[k] != pattern[i] {
            k = fail[k - 1];
        }
        if pattern[k] == pattern[i] {
            k += 1;
        }
        fail[i] = k;
    }
    let mut out = Vec::new();
    let mut k = 0;
    for (i, &c) in text.iter().enumerate() {
        while k > 0 && pattern[k] != c {
            k = fail[k - 1];
        }
        if pattern[k] == c {
            k += 1;
        }
        if k == m {
            out.push(i + 1 - m);
            k = fail[k - 1];
        }
    }
    out
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        Word::from_letters(s.chars())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.letters {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Sliding-window oracle, independent of the KMP path.
    fn naive_occurrences(host: &str, pat: &str) -> Vec<usize> {
        let h: Vec<char> = host.chars().collect();
        let p: Vec<char> = pat.chars().collect();
        (0..h.len().saturating_sub(p.len() - 1))
            .filter(|&i| h[i..i + p.len()] == p[..])
            .collect()
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(w("1101").reverse(), w("1011"));
        assert_eq!(w("").reverse(), w(""));
        assert_eq!(w("010011010").reverse(), w("010110010"));
    }

    #[test]
    fn palindrome_examples() {
        assert!(w("1001").is_palindrome());
        assert!(w("").is_palindrome());
        assert!(!w("10").is_palindrome());
    }

    #[test]
    fn occurrences_examples() {
        assert_eq!(w("010011010").occurrences(&w("010")).unwrap(), vec![0, 6]);
        assert_eq!(w("11010011").occurrences(&w("11")).unwrap(), vec![0, 6]);
        assert_eq!(w("abc").occurrences(&w("d")).unwrap(), Vec::<usize>::new());
        assert!(w("abc").occurrences(&Word::empty()).is_err());
    }

    #[test]
    fn occurrences_match_naive_oracle_exhaustively() {
        // all binary hosts up to length 8, all non-empty binary patterns up to length 4
        for n in 1..=8usize {
            for bits in 0..(1u32 << n) {
                let host: String = (0..n)
                    .map(|i| if bits >> i & 1 == 1 { '1' } else { '0' })
                    .collect();
                for m in 1..=4usize {
                    for pb in 0..(1u32 << m) {
                        let pat: String = (0..m)
                            .map(|i| if pb >> i & 1 == 1 { '1' } else { '0' })
                            .collect();
                        assert_eq!(
                            w(&host).occurrences(&w(&pat)).unwrap(),
                            naive_occurrences(&host, &pat),
                            "host={host} pat={pat}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn factors_examples() {
        let f2: BTreeSet<Word> = ["11", "10", "01", "00"].iter().map(|s| w(s)).collect();
        assert_eq!(w("11010011").factors(2), f2);
        assert_eq!(w("aaa").factors(1), [w("a")].into_iter().collect());
        assert_eq!(
            w("11010011").factors(8),
            [w("11010011")].into_iter().collect()
        );
        assert!(w("ab").factors(3).is_empty());
        assert_eq!(w("11010011").complexity(2), 4);
        assert_eq!(w("11010011").complexity(0), 1);
    }

    #[test]
    fn complete_return_word_examples() {
        assert_eq!(
            w("010011010").complete_return_words(&w("010")).unwrap(),
            [w("010011010")].into_iter().collect()
        );
        assert_eq!(
            w("aaa").complete_return_words(&w("a")).unwrap(),
            [w("aa")].into_iter().collect()
        );
        assert_eq!(
            w("11010011").complete_return_words(&w("11")).unwrap(),
            [w("11010011")].into_iter().collect()
        );
        // fewer than two occurrences: empty set, not an error
        assert!(w("abc").complete_return_words(&w("b")).unwrap().is_empty());
    }

    #[test]
    fn complete_return_word_postconditions() {
        // every complete return word has w as prefix and suffix and contains
        // exactly two occurrences of w
        let host = w("0100101001001");
        for n in 1..=4 {
            for f in host.factors(n) {
                for r in host.complete_return_words(&f).unwrap() {
                    let occ = r.occurrences(&f).unwrap();
                    assert_eq!(occ.len(), 2, "r={r} f={f}");
                    assert_eq!(occ[0], 0);
                    assert_eq!(occ[1], r.len() - f.len());
                }
            }
        }
    }

    #[test]
    fn inferred_alphabet_orders_by_first_appearance() {
        assert_eq!(w("11010011").inferred_alphabet().letters(), &['1', '0']);
        assert_eq!(w("bca").inferred_alphabet().letters(), &['b', 'c', 'a']);
    }

    #[test]
    fn alphabet_rejects_duplicates_and_blanks() {
        assert!(Alphabet::new("aa".chars()).is_err());
        assert!(Alphabet::new("a b".chars()).is_err());
        assert!(Alphabet::canonical(0).is_err());
        assert!(Alphabet::canonical(37).is_err());
        assert_eq!(Alphabet::canonical(3).unwrap().letters(), &['0', '1', '2']);
    }

    #[test]
    fn word_rejects_whitespace() {
        assert!("a b".parse::<Word>().is_err());
        assert!("a\tb".parse::<Word>().is_err());
    }
}
