//! Brute-force oracles shared by the integration suites. Everything here is
//! written directly from definitions and stays independent of the library's
//! index structures.
//!
//! Each test binary compiles this module separately, so not every helper is
//! used by every binary.
#![allow(dead_code)]

use std::collections::BTreeSet;

pub fn is_pal(s: &[char]) -> bool {
    let n = s.len();
    (0..n / 2).all(|i| s[i] == s[n - 1 - i])
}

/// Distinct palindromic factors including the empty word.
pub fn naive_palindrome_count(s: &[char]) -> usize {
    let mut set: BTreeSet<&[char]> = BTreeSet::new();
    for i in 0..s.len() {
        for j in i + 1..=s.len() {
            let f = &s[i..j];
            if is_pal(f) {
                set.insert(f);
            }
        }
    }
    set.len() + 1
}

pub fn naive_defect(s: &[char]) -> usize {
    s.len() + 1 - naive_palindrome_count(s)
}

pub fn naive_is_rich(s: &[char]) -> bool {
    naive_defect(s) == 0
}

/// All start indices of `pat` in `text` by direct window comparison.
pub fn naive_occurrences(text: &[char], pat: &[char]) -> Vec<usize> {
    if pat.is_empty() || pat.len() > text.len() {
        return Vec::new();
    }
    (0..=text.len() - pat.len())
        .filter(|&i| text[i..i + pat.len()] == *pat)
        .collect()
}

/// Distinct factors of length `n`.
pub fn naive_factors(s: &[char], n: usize) -> BTreeSet<Vec<char>> {
    let mut set = BTreeSet::new();
    if n == 0 {
        set.insert(Vec::new());
        return set;
    }
    if n > s.len() {
        return set;
    }
    for i in 0..=s.len() - n {
        set.insert(s[i..i + n].to_vec());
    }
    set
}

/// Binary words of length exactly `n`, as char vectors over 0/1, in
/// lexicographic order.
pub fn binary_words(n: usize) -> impl Iterator<Item = Vec<char>> {
    (0..(1u64 << n)).map(move |bits| {
        (0..n)
            .map(|i| {
                if bits >> (n - 1 - i) & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    })
}

/// Words of length exactly `n` over the first `d` canonical letters.
pub fn words_over(d: usize, n: usize) -> Vec<Vec<char>> {
    let letters: Vec<char> = "0123456789abcdefghijklmnopqrstuvwxyz"
        .chars()
        .take(d)
        .collect();
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    loop {
        out.push(cur.iter().map(|&i| letters[i]).collect());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] + 1 < d {
                cur[i] += 1;
                for slot in cur.iter_mut().skip(i + 1) {
                    *slot = 0;
                }
                break;
            }
        }
    }
}

/// Independent fixed-point generator: repeatedly applies the substitution to
/// a growing buffer.
pub fn substitution_prefix(rules: &[(char, &str)], seed: char, len: usize) -> Vec<char> {
    let image = |c: char| -> &str {
        rules
            .iter()
            .find(|&&(l, _)| l == c)
            .map(|&(_, im)| im)
            .expect("letter has a rule")
    };
    let mut buf: Vec<char> = image(seed).chars().collect();
    assert_eq!(buf[0], seed);
    assert!(buf.len() >= 2);
    let mut next = 1;
    while buf.len() < len {
        let c = buf[next];
        next += 1;
        buf.extend(image(c).chars());
    }
    buf.truncate(len);
    buf
}

/// Deterministic xorshift for reproducible random words.
pub struct XorShift(pub u64);

impl XorShift {
    pub fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }
}
