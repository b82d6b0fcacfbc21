//! Word-level palindrome index: distinct-palindrome counts, defect, richness,
//! longest palindromic prefix/suffix, and the factorization of a rich word
//! into its unioccurrent palindromic suffixes.

use serde::Serialize;

use crate::eertree::Eertree;
use crate::error::{Error, Result};
use crate::word::{Alphabet, Word};

/// Palindromic tree built over a word, immutable after construction.
#[derive(Debug, Clone)]
pub struct PalIndex {
    word: Word,
    alphabet: Alphabet,
    tree: Eertree,
}

impl PalIndex {
    pub fn build(word: &Word) -> PalIndex {
        let alphabet = word.inferred_alphabet();
        let letters = word
            .letters()
            .iter()
            .map(|&c| alphabet.index_of(c).expect("letter in inferred alphabet") as u32);
        let tree = Eertree::from_letters(alphabet.size(), letters);
        PalIndex {
            word: word.clone(),
            alphabet,
            tree,
        }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Distinct non-empty palindromic factors.
    pub fn palindrome_count(&self) -> usize {
        self.tree.palindrome_count()
    }

    /// Distinct palindromic factors including the empty word.
    pub fn palindrome_count_with_empty(&self) -> usize {
        self.tree.palindrome_count() + 1
    }

    pub fn defect(&self) -> u64 {
        self.tree.defect() as u64
    }

    pub fn is_rich(&self) -> bool {
        self.tree.is_rich()
    }

    /// Whether appending position `i` created a new palindrome node.
    pub fn new_node_flags(&self) -> &[bool] {
        self.tree.created_flags()
    }

    pub fn per_prefix_defect(&self) -> Vec<u64> {
        self.tree.per_prefix_defect()
    }

    /// All distinct non-empty palindromic factors, sorted by length then
    /// lexicographically.
    pub fn distinct_palindromes(&self) -> Vec<Word> {
        let mut out: Vec<Word> = self
            .tree
            .node_first_occurrences()
            .iter()
            .map(|&(start, len)| self.word.subword(start..start + len))
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Longest palindromic suffix of the prefix of length `k`.
    pub fn lps_of_prefix(&self, k: usize) -> Result<Word> {
        if k == 0 || k > self.word.len() {
            return Err(Error::Precondition(format!(
                "prefix length must be in 1..={}, got {k}",
                self.word.len()
            )));
        }
        let len = self.tree.lps_len_of_prefix(k);
        Ok(self.word.subword(k - len..k))
    }

    pub fn lps(&self) -> Result<Word> {
        if self.word.is_empty() {
            return Err(Error::Precondition(
                "the empty word has no palindromic suffix".into(),
            ));
        }
        self.lps_of_prefix(self.word.len())
    }

    /// Count of distinct palindromic factors of length exactly `n`.
    pub fn palindromic_complexity(&self, n: usize) -> usize {
        if n == 0 {
            1
        } else {
            self.tree.palindromic_complexity(n)
        }
    }
}

/// Defect summary of a word, serializable in a fixed field order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectReport {
    pub word: Word,
    /// Distinct palindromic factors including the empty word.
    pub palindrome_count: usize,
    pub defect: u64,
    /// Defect of every prefix, by length 0..=len.
    pub per_prefix_defect: Vec<u64>,
}

impl Serialize for DefectReport {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("DefectReport", 5)?;
        s.serialize_field("word", &self.word.to_string())?;
        s.serialize_field("length", &self.word.len())?;
        s.serialize_field("palindromes", &self.palindrome_count)?;
        s.serialize_field("defect", &self.defect)?;
        s.serialize_field("per_prefix_defect", &self.per_prefix_defect)?;
        s.end()
    }
}

/// Palindromic defect of `w` with its per-prefix profile.
pub fn defect(w: &Word) -> DefectReport {
    let idx = PalIndex::build(w);
    DefectReport {
        word: w.clone(),
        palindrome_count: idx.palindrome_count_with_empty(),
        defect: idx.defect(),
        per_prefix_defect: idx.per_prefix_defect(),
    }
}

/// True iff `w` has zero palindromic defect.
pub fn is_rich(w: &Word) -> bool {
    PalIndex::build(w).is_rich()
}

/// Longest palindromic suffix. Rejects the empty word.
pub fn lps(w: &Word) -> Result<Word> {
    PalIndex::build(w).lps()
}

/// Longest palindromic prefix. Rejects the empty word.
pub fn lpp(w: &Word) -> Result<Word> {
    Ok(lps(&w.reverse())?.reverse())
}

/// Count of distinct palindromic factors of `w` of length exactly `n`.
pub fn palindromic_complexity(w: &Word, n: usize) -> usize {
    PalIndex::build(w).palindromic_complexity(n)
}

/// Factorizes a rich word by repeatedly stripping the longest palindromic
/// suffix. The parts are palindromes, pairwise distinct, each unioccurrent in
/// the prefix it closes, and concatenate to `w`. Non-rich input is rejected.
pub fn ups_factorization(w: &Word) -> Result<Vec<Word>> {
    let idx = PalIndex::build(w);
    if !idx.is_rich() {
        return Err(Error::NotRich(w.to_string()));
    }
    let mut parts_rev = Vec::new();
    let mut k = w.len();
    while k > 0 {
        let len = idx.lps_of_prefix(k)?.len();
        parts_rev.push(w.subword(k - len..k));
        k -= len;
    }
    parts_rev.reverse();
    debug_assert_eq!(
        parts_rev.iter().fold(Word::empty(), |acc, p| acc.concat(p)),
        *w
    );
    debug_assert!(parts_rev.iter().all(|p| p.is_palindrome()));
    Ok(parts_rev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Brute-force oracle: distinct palindromic factors including the empty word.
    fn naive_pal_set(s: &str) -> BTreeSet<String> {
        let chars: Vec<char> = s.chars().collect();
        let mut set: BTreeSet<String> = BTreeSet::new();
        set.insert(String::new());
        for i in 0..chars.len() {
            for j in i + 1..=chars.len() {
                let f = &chars[i..j];
                if f.iter().eq(f.iter().rev()) {
                    set.insert(f.iter().collect());
                }
            }
        }
        set
    }

    fn naive_defect(s: &str) -> u64 {
        (s.chars().count() + 1 - naive_pal_set(s).len()) as u64
    }

    fn naive_lps(s: &str) -> String {
        let chars: Vec<char> = s.chars().collect();
        for k in 0..chars.len() {
            let f = &chars[k..];
            if f.iter().eq(f.iter().rev()) {
                return f.iter().collect();
            }
        }
        unreachable!("last letter is always a palindromic suffix")
    }

    #[test]
    fn build_examples() {
        let idx = PalIndex::build(&w("11010011"));
        let expected: Vec<Word> = ["1", "0", "11", "00", "101", "010", "1001"]
            .iter()
            .map(|s| w(s))
            .collect();
        let mut expected = expected;
        expected.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        assert_eq!(idx.palindrome_count(), 7);
        assert_eq!(idx.distinct_palindromes(), expected);

        assert_eq!(PalIndex::build(&Word::empty()).palindrome_count(), 0);

        let aba = PalIndex::build(&w("aba"));
        assert_eq!(aba.palindrome_count(), 3);
        assert_eq!(aba.distinct_palindromes(), vec![w("a"), w("b"), w("aba")]);
    }

    #[test]
    fn defect_examples() {
        assert_eq!(defect(&w("11010011")).defect, 1);
        assert_eq!(defect(&w("11010011")).palindrome_count, 8);
        assert_eq!(defect(&Word::empty()).defect, 0);
        assert_eq!(defect(&Word::empty()).per_prefix_defect, vec![0]);
        assert_eq!(defect(&w("0100101001001")).defect, 0);
    }

    #[test]
    fn richness_examples() {
        assert!(!is_rich(&w("11010011")));
        assert!(is_rich(&w("1101001")));
        assert!(is_rich(&w("a")));
        assert!(is_rich(&Word::empty()));
    }

    #[test]
    fn richness_three_routes_agree() {
        for n in 0..=12usize {
            for bits in 0..(1u64 << n) {
                let s: String = (0..n)
                    .map(|i| if bits >> i & 1 == 1 { '1' } else { '0' })
                    .collect();
                let word = w(&s);
                let idx = PalIndex::build(&word);
                let via_defect = idx.defect() == 0;
                let via_flags = idx.new_node_flags().iter().all(|&f| f);
                let via_oracle = naive_defect(&s) == 0;
                assert_eq!(via_defect, via_flags, "word {s}");
                assert_eq!(via_defect, via_oracle, "word {s}");
            }
        }
    }

    #[test]
    fn lps_lpp_examples() {
        assert_eq!(lpp(&w("1101")).unwrap(), w("11"));
        assert_eq!(lps(&w("1101")).unwrap(), w("101"));
        assert_eq!(lpp(&w("010011")).unwrap(), w("010"));
        assert_eq!(lps(&w("010011")).unwrap(), w("11"));
        assert_eq!(lps(&w("0")).unwrap(), w("0"));
        assert!(lps(&Word::empty()).is_err());
        assert!(lpp(&Word::empty()).is_err());
    }

    #[test]
    fn lps_matches_oracle_and_duality_holds() {
        for n in 1..=10usize {
            for bits in 0..(1u64 << n) {
                let s: String = (0..n)
                    .map(|i| if bits >> i & 1 == 1 { '1' } else { '0' })
                    .collect();
                let word = w(&s);
                assert_eq!(lps(&word).unwrap().to_string(), naive_lps(&s), "word {s}");
                assert_eq!(
                    lpp(&word).unwrap(),
                    lps(&word.reverse()).unwrap().reverse(),
                    "word {s}"
                );
            }
        }
    }

    #[test]
    fn ups_factorization_examples() {
        assert_eq!(
            ups_factorization(&w("abaab")).unwrap(),
            vec![w("a"), w("baab")]
        );
        assert_eq!(ups_factorization(&w("a")).unwrap(), vec![w("a")]);
        let parts = ups_factorization(&w("1101001")).unwrap();
        assert_eq!(
            parts.iter().fold(Word::empty(), |acc, p| acc.concat(p)),
            w("1101001")
        );
        assert!(parts.iter().all(|p| p.is_palindrome()));
        let distinct: BTreeSet<&Word> = parts.iter().collect();
        assert_eq!(distinct.len(), parts.len());
        assert!(ups_factorization(&w("11010011")).is_err());
        assert_eq!(
            ups_factorization(&Word::empty()).unwrap(),
            Vec::<Word>::new()
        );
    }

    #[test]
    fn ups_postconditions_exhaustive() {
        // parts palindromic, pairwise distinct, concatenate to the word, and
        // the last part is the lps and is unioccurrent
        for n in 1..=12usize {
            for bits in 0..(1u64 << n) {
                let s: String = (0..n)
                    .map(|i| if bits >> i & 1 == 1 { '1' } else { '0' })
                    .collect();
                let word = w(&s);
                if naive_defect(&s) != 0 {
                    assert!(ups_factorization(&word).is_err());
                    continue;
                }
                let parts = ups_factorization(&word).unwrap();
                assert_eq!(
                    parts.iter().fold(Word::empty(), |acc, p| acc.concat(p)),
                    word,
                    "word {s}"
                );
                assert!(parts.iter().all(|p| p.is_palindrome()));
                let distinct: BTreeSet<&Word> = parts.iter().collect();
                assert_eq!(distinct.len(), parts.len(), "word {s}");
                let last = parts.last().unwrap();
                assert_eq!(last.to_string(), naive_lps(&s));
                assert_eq!(word.occurrences(last).unwrap().len(), 1, "word {s}");
            }
        }
    }

    #[test]
    fn palindromic_complexity_examples() {
        let word = w("11010011");
        assert_eq!(palindromic_complexity(&word, 2), 2);
        assert_eq!(palindromic_complexity(&word, 0), 1);
        assert_eq!(palindromic_complexity(&word, 4), 1);
        assert_eq!(palindromic_complexity(&word, 9), 0);
    }

    #[test]
    fn prefix_defect_monotone() {
        let word = w("110100111010010");
        let report = defect(&word);
        assert!(report.per_prefix_defect.windows(2).all(|p| p[0] <= p[1]));
        assert_eq!(*report.per_prefix_defect.last().unwrap(), report.defect);
        for k in 0..=word.len() {
            let prefix = word.subword(0..k);
            assert_eq!(defect(&prefix).defect, report.per_prefix_defect[k]);
        }
    }

    #[test]
    fn defect_report_serializes_in_fixed_order() {
        let json = serde_json::to_string(&defect(&w("aba"))).unwrap();
        assert_eq!(
            json,
            r#"{"word":"aba","length":3,"palindromes":4,"defect":0,"per_prefix_defect":[0,0,0,0]}"#
        );
    }
}
