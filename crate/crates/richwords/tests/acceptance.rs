//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its elapsed time and enforcing the stated runtime budget.

mod common;

use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

use richwords::eertree::Eertree;
use richwords::enumeration::{self, GssSpec};
use richwords::morphism::{verify_conjugacy, Direction, Morphism, ProfileVerdict};
use richwords::palindrome::{self, PalIndex};
use richwords::richness;
use richwords::word::Word;

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn word_from(chars: &[char]) -> Word {
    Word::from_letters(chars.iter().copied()).unwrap()
}

fn pass(criterion: usize, name: &str, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= budget,
        "criterion {criterion} ({name}) took {elapsed:?}, budget {budget:?}"
    );
    println!("ACCEPTANCE {criterion:>2} ({name}): PASS in {elapsed:?}");
}

#[test]
fn criterion_01_table1_reproduction() {
    let start = Instant::now();
    let output = Command::new(env!("CARGO_BIN_EXE_richwords"))
        .args(["table1", "11010011"])
        .output()
        .expect("binary runs");
    assert!(output.status.success());
    let golden = include_str!("golden/table1_11010011.txt");
    assert_eq!(
        String::from_utf8(output.stdout).unwrap(),
        golden,
        "table1 output must be byte-identical to the transcribed golden file"
    );
    // the printed table has one duplicate row collapsed, leaving 26 distinct rows
    assert_eq!(golden.lines().count(), 26);
    pass(1, "table1 reproduction", start, Duration::from_millis(100));
}

#[test]
fn criterion_02_shortest_nonrich_binary_word() {
    let start = Instant::now();
    for n in 0..=7usize {
        for chars in common::binary_words(n) {
            assert!(
                palindrome::is_rich(&word_from(&chars)),
                "length-{n} binary word {} must be rich",
                chars.iter().collect::<String>()
            );
        }
    }
    assert!(!palindrome::is_rich(&w("11010011")));
    let minimal = richness::minimal_nonrich(2, 8).unwrap();
    assert!(!minimal.is_empty());
    for m in &minimal {
        assert_eq!(palindrome::defect(m).defect, 1, "minimal non-rich word {m}");
    }
    assert!(
        minimal.contains(&w("00101100")),
        "canonical form of 11010011"
    );
    // the command-line form agrees
    let output = Command::new(env!("CARGO_BIN_EXE_richwords"))
        .args(["minimal-nonrich", "2", "8"])
        .output()
        .expect("binary runs");
    assert!(output.status.success());
    let printed: Vec<String> = String::from_utf8(output.stdout)
        .unwrap()
        .lines()
        .map(str::to_owned)
        .collect();
    let expected: Vec<String> = minimal.iter().map(Word::to_string).collect();
    assert_eq!(printed, expected);
    pass(
        2,
        "shortest non-rich binary word",
        start,
        Duration::from_secs(1),
    );
}

/// Walks every rich binary word up to `max_len` and asserts that none
/// contains both members of any given pair. Returns the number of rich words
/// visited (including the empty word).
fn sweep_rich_binary_for_pairs(pairs: &[(Word, Word)], max_len: usize) -> u64 {
    struct Sweep {
        tree: Eertree,
        path: Vec<char>,
        patterns: Vec<Vec<char>>,
        flags: Vec<bool>,
        max_len: usize,
        visited: u64,
    }
    impl Sweep {
        fn ends_with(path: &[char], pat: &[char]) -> bool {
            path.len() >= pat.len() && path[path.len() - pat.len()..] == *pat
        }
        fn dfs(&mut self) {
            self.visited += 1;
            for pair in self.flags.chunks(2) {
                assert!(
                    !(pair[0] && pair[1]),
                    "rich word {} contains an incompatible pair",
                    self.path.iter().collect::<String>()
                );
            }
            if self.path.len() == self.max_len {
                return;
            }
            for (i, c) in [(0u32, '0'), (1u32, '1')] {
                if self.tree.push(i) {
                    self.path.push(c);
                    let saved = self.flags.clone();
                    for (f, pat) in self.flags.iter_mut().zip(&self.patterns) {
                        *f = *f || Self::ends_with(&self.path, pat);
                    }
                    self.dfs();
                    self.flags = saved;
                    self.path.pop();
                }
                self.tree.pop();
            }
        }
    }
    let patterns: Vec<Vec<char>> = pairs
        .iter()
        .flat_map(|(u, v)| [u.letters().to_vec(), v.letters().to_vec()])
        .collect();
    let mut sweep = Sweep {
        tree: Eertree::new(2),
        path: Vec::new(),
        flags: vec![false; patterns.len()],
        patterns,
        max_len,
        visited: 0,
    };
    sweep.dfs();
    sweep.visited
}

#[test]
fn criterion_03_pair_incompatibility_soundness() {
    let start = Instant::now();
    let pairs = [
        (w("11010"), w("010011")),
        (w("1101001"), w("10011")),
        (w("110100"), w("0011")),
    ];
    for (u, v) in &pairs {
        assert!(richness::check_e2(u, v), "pair ({u}, {v})");
    }
    // no rich binary word of length <= 18 contains both members of any pair;
    // the matching first-condition example pair rides along
    let mut all_pairs = pairs.to_vec();
    assert!(richness::check_e1(&w("01100"), &w("0110100")));
    all_pairs.push((w("01100"), w("0110100")));
    let visited = sweep_rich_binary_for_pairs(&all_pairs, 18);
    // every rich word of every length <= 18 was visited
    let expected: u64 = (0..=18)
        .map(|n| enumeration::count_rich_exact(2, n).unwrap())
        .sum();
    assert_eq!(visited, expected);
    pass(
        3,
        "pair incompatibility soundness <= 18",
        start,
        Duration::from_secs(120),
    );
}

/// Module invariant spot-check beyond the worked examples: every pair of
/// short rich binary words flagged by either incompatibility condition really
/// never occurs together in a rich word of length <= 14.
#[test]
fn flagged_pairs_are_sound_at_desk_scale() {
    let mut short_rich: Vec<Word> = Vec::new();
    for n in 1..=6usize {
        for chars in common::binary_words(n) {
            if common::naive_is_rich(&chars) {
                short_rich.push(word_from(&chars));
            }
        }
    }
    let mut flagged: Vec<(Word, Word)> = Vec::new();
    for u in &short_rich {
        for v in &short_rich {
            if richness::check_e1(u, v) || richness::check_e2(u, v) {
                flagged.push((u.clone(), v.clone()));
            }
        }
    }
    assert!(!flagged.is_empty(), "sampling found no flagged pairs");
    flagged.truncate(64);
    sweep_rich_binary_for_pairs(&flagged, 14);
}

#[test]
fn criterion_04_witness_extraction_completeness() {
    let start = Instant::now();
    let mut checked_binary = 0u64;
    for n in 1..=12usize {
        for chars in common::binary_words(n) {
            if common::naive_is_rich(&chars) {
                continue;
            }
            checked_binary += 1;
            let word = word_from(&chars);
            let witness = richness::extract_e2_witness(&word)
                .unwrap_or_else(|e| panic!("extraction failed on {word}: {e}"));
            assert!(
                richness::check_e2(&witness.u, &witness.v),
                "extracted pair fails on {word}"
            );
            assert!(word.contains_factor(&witness.u) && word.contains_factor(&witness.v));
        }
    }
    assert_eq!(checked_binary, 1262, "count of non-rich binary words <= 12");

    let mut checked_ternary = 0u64;
    for n in 1..=9usize {
        for chars in common::words_over(3, n) {
            if common::naive_is_rich(&chars) {
                continue;
            }
            checked_ternary += 1;
            let word = word_from(&chars);
            let witness = richness::extract_e2_witness(&word)
                .unwrap_or_else(|e| panic!("extraction failed on {word}: {e}"));
            assert!(
                richness::check_e2(&witness.u, &witness.v),
                "extracted pair fails on {word}"
            );
        }
    }
    assert_eq!(
        checked_ternary, 17346,
        "count of non-rich ternary words <= 9"
    );
    pass(
        4,
        "witness extraction completeness",
        start,
        Duration::from_secs(300),
    );
}

#[test]
fn criterion_05_binary_witness_equivalence() {
    let start = Instant::now();
    for n in 0..=14usize {
        for chars in common::binary_words(n) {
            let word = word_from(&chars);
            let witness = richness::binary_nonrich_witness(&word).unwrap();
            let rich = palindrome::is_rich(&word);
            assert_eq!(
                witness.is_some(),
                !rich,
                "witness presence must match non-richness on {word}"
            );
        }
    }
    assert_eq!(
        richness::binary_nonrich_witness(&w("11010011")).unwrap(),
        Some(w("10"))
    );
    pass(
        5,
        "four-factor witness equivalence <= 14",
        start,
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_06_palindrome_index_oracle_equivalence() {
    let start = Instant::now();
    for n in 0..=14usize {
        for chars in common::binary_words(n) {
            let idx = PalIndex::build(&word_from(&chars));
            assert_eq!(
                idx.palindrome_count_with_empty(),
                common::naive_palindrome_count(&chars),
                "word {}",
                chars.iter().collect::<String>()
            );
        }
    }
    let mut rng = common::XorShift(0x5bd1_e995_9d1b_58d9);
    for _ in 0..1000 {
        let d = 2 + (rng.next() % 3) as usize;
        let letters: Vec<char> = (0..200)
            .map(|_| char::from(b'a' + (rng.next() % d as u64) as u8))
            .collect();
        let idx = PalIndex::build(&word_from(&letters));
        assert_eq!(
            idx.palindrome_count_with_empty(),
            common::naive_palindrome_count(&letters)
        );
    }
    pass(
        6,
        "palindromic tree oracle equivalence",
        start,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_07_periodic_identity_sums() {
    let start = Instant::now();
    let mut tested = 0;
    for len in 1..=5usize {
        for chars in common::binary_words(len) {
            let period = word_from(&chars);
            // primitive periods only
            let primitive =
                (1..len).all(|d| len % d != 0 || (0..len).any(|i| chars[i] != chars[i % d]));
            if !primitive {
                continue;
            }
            tested += 1;
            let report = richness::brlek_reutenauer_sum(&period, 4 * len + 8)
                .unwrap_or_else(|e| panic!("period {period}: {e}"));
            assert!(report.saturated, "period {period}");
            // independent saturated defect from a long power
            let mut long = Word::empty();
            for _ in 0..20 {
                long = long.concat(&period);
            }
            let d20 = palindrome::defect(&long).defect;
            let longer = long.concat(&period).concat(&period);
            assert_eq!(
                d20,
                palindrome::defect(&longer).defect,
                "defect not saturated"
            );
            assert_eq!(report.defect_estimate, d20, "period {period}");
        }
    }
    assert_eq!(
        tested, 52,
        "number of primitive binary periods of length <= 5"
    );
    pass(
        7,
        "periodic identity sums halve to defect",
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_08_identity_gap_on_classic_words() {
    let start = Instant::now();
    let fib = word_from(&common::substitution_prefix(
        &[('0', "01"), ('1', "0")],
        '0',
        500,
    ));
    for n in 0..=20usize {
        assert_eq!(
            richness::complexity_identity_gap(&fib, n).unwrap(),
            0,
            "gap at n={n} on the Fibonacci prefix"
        );
    }
    let tm = word_from(&common::substitution_prefix(
        &[('0', "01"), ('1', "10")],
        '0',
        256,
    ));
    let positive = (0..=20).any(|n| richness::complexity_identity_gap(&tm, n).unwrap() > 0);
    assert!(positive, "Thue-Morse prefix must have a positive gap");
    pass(
        8,
        "complexity identity gaps",
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_09_defect_profiles_of_fixed_points() {
    let start = Instant::now();
    let profile = Morphism::fibonacci()
        .defect_profile('0', 100_000, 12)
        .unwrap();
    assert!(profile.checkpoints.iter().all(|&(_, d)| d == 0));
    assert_eq!(profile.verdict, ProfileVerdict::StablyZero);

    let profile = Morphism::thue_morse()
        .defect_profile('0', 100_000, 12)
        .unwrap();
    let tail: Vec<u64> = profile
        .checkpoints
        .iter()
        .rev()
        .take(3)
        .rev()
        .map(|&(_, d)| d)
        .collect();
    assert!(tail[0] < tail[1] && tail[1] < tail[2], "tail {tail:?}");
    assert_eq!(profile.verdict, ProfileVerdict::Growing);
    pass(
        9,
        "fixed-point defect profiles",
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_10_conjugacy_pipeline() {
    let start = Instant::now();
    let phi: Morphism = "a->abab;b->aab".parse().unwrap();
    let conjugates = phi.conjugates().unwrap();
    let psi: Morphism = "a->abab;b->aba".parse().unwrap();
    let (found, cert) = conjugates
        .iter()
        .find(|(m, _)| *m == psi)
        .expect("the rotated form is in the class");
    assert_eq!(cert.word, w("ab"));
    assert_eq!(cert.direction, Direction::Left);
    assert!(verify_conjugacy(&phi, found, cert));

    let class_p = psi.class_p_certificate().expect("class P");
    assert_eq!(class_p.common, w("aba"));
    assert_eq!(class_p.parts, vec![('a', w("b")), ('b', Word::empty())]);

    assert!(phi.class_p_prime_certificate().unwrap().is_some());
    pass(
        10,
        "conjugacy and palindromic decomposition",
        start,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_11_markedness_fixtures() {
    let start = Instant::now();
    let tm = Morphism::thue_morse();
    let pair = tm.marked_pair().unwrap().expect("marked");
    assert_eq!(pair.phi1, tm);
    assert_eq!(pair.phi2, tm);

    let fib = Morphism::fibonacci();
    let pair = fib.marked_pair().unwrap().expect("marked");
    let rotated: Morphism = "0->10;1->0".parse().unwrap();
    assert!(
        pair.phi1 == rotated || pair.phi2 == rotated,
        "pair must include the rotated Fibonacci morphism"
    );
    pass(11, "markedness fixtures", start, Duration::from_secs(10));
}

#[test]
fn criterion_12_block_construction() {
    let start = Instant::now();
    let family = enumeration::gss_words(24);
    assert_eq!(family.len(), 7338);
    for word in &family {
        assert!(palindrome::is_rich(word), "family word {word}");
    }
    for n in 0..=16usize {
        assert!(
            enumeration::gss_count(n) <= enumeration::count_rich_exact(2, n).unwrap(),
            "n={n}"
        );
    }
    // the worked examples construct rich words
    for (n_seq, m_seq) in [
        (vec![1], vec![1]),
        (vec![1, 2], vec![1, 2]),
        (vec![2, 2, 3], vec![1, 1, 1]),
    ] {
        let spec = GssSpec::new(n_seq, m_seq).unwrap();
        assert!(palindrome::is_rich(&enumeration::gss_word(&spec)));
    }
    pass(
        12,
        "block construction richness and counts",
        start,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_13_enumeration_cross_check() {
    let start = Instant::now();
    for d in 1..=3usize {
        for n in 0..=10usize {
            let brute: u64 = common::words_over(d, n)
                .iter()
                .filter(|chars| common::naive_is_rich(chars))
                .count() as u64;
            assert_eq!(
                enumeration::count_rich_exact(d, n).unwrap(),
                brute,
                "d={d} n={n}"
            );
        }
    }
    for n in 0..=7usize {
        assert_eq!(enumeration::count_rich_exact(2, n).unwrap(), 1u64 << n);
    }
    pass(
        13,
        "enumeration cross-check",
        start,
        Duration::from_secs(60),
    );
}

/// The four non-rich binary words of length 8 form a single orbit; recorded
/// here because several criteria rely on the count.
#[test]
fn nonrich_length8_population() {
    let mut nonrich: Vec<String> = common::binary_words(8)
        .filter(|chars| !common::naive_is_rich(chars))
        .map(|chars| chars.iter().collect())
        .collect();
    nonrich.sort();
    assert_eq!(
        nonrich,
        vec!["00101100", "00110100", "11001011", "11010011"]
    );
    let reps: HashSet<Word> = nonrich
        .iter()
        .map(|s| enumeration::canonical_orbit_representative(&w(s)).unwrap())
        .collect();
    assert_eq!(reps.len(), 1);
}
