//! Incompatibility conditions for pairs of rich words, witness extraction
//! from non-rich words, the binary four-factor witness, bounded compatibility
//! search, and the complexity/palindromic-complexity identities.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::eertree::Eertree;
use crate::enumeration::canonical_orbit_representative;
use crate::error::{Error, Result};
use crate::palindrome::{self, PalIndex};
use crate::word::Word;

/// First incompatibility condition on a pair of words: distinct, both rich,
/// equal longest palindromic prefixes, and equal longest palindromic
/// suffixes. No rich word contains two such factors.
pub fn check_e1(u: &Word, v: &Word) -> bool {
    if u.is_empty() || v.is_empty() || u == v {
        return false;
    }
    if !palindrome::is_rich(u) || !palindrome::is_rich(v) {
        return false;
    }
    let (lpp_u, lps_u) = (palindrome::lpp(u).unwrap(), palindrome::lps(u).unwrap());
    let (lpp_v, lps_v) = (palindrome::lpp(v).unwrap(), palindrome::lps(v).unwrap());
    lpp_u == lpp_v && lps_u == lps_v
}

/// Second incompatibility condition: `u` is not the reversal of `v`, both are
/// rich, and the longest palindromic suffix of each equals the longest
/// palindromic prefix of the other. No rich word contains two such factors.
pub fn check_e2(u: &Word, v: &Word) -> bool {
    if u.is_empty() || v.is_empty() || *u == v.reverse() {
        return false;
    }
    if !palindrome::is_rich(u) || !palindrome::is_rich(v) {
        return false;
    }
    let (lpp_u, lps_u) = (palindrome::lpp(u).unwrap(), palindrome::lps(u).unwrap());
    let (lpp_v, lps_v) = (palindrome::lpp(v).unwrap(), palindrome::lps(v).unwrap());
    lps_u == lpp_v && lps_v == lpp_u
}

/// Witness extracted from a non-rich word: factors `u`, `v` satisfying the
/// second incompatibility condition, together with the non-palindromic
/// complete return word `r` of the palindrome `p` the construction used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E2Witness {
    pub u: Word,
    pub v: Word,
    pub r: Word,
    pub p: Word,
    pub q: Word,
    pub z: char,
}

impl Serialize for E2Witness {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("E2Witness", 6)?;
        s.serialize_field("u", &self.u.to_string())?;
        s.serialize_field("v", &self.v.to_string())?;
        s.serialize_field("r", &self.r.to_string())?;
        s.serialize_field("p", &self.p.to_string())?;
        s.serialize_field("q", &self.q.to_string())?;
        s.serialize_field("z", &self.z.to_string())?;
        s.end()
    }
}

/// All distinct non-empty palindromic factors of `w`, via the palindromic tree.
fn distinct_palindromic_factors(w: &Word) -> Vec<Word> {
    PalIndex::build(w).distinct_palindromes()
}

/// Extracts from a non-rich word a pair of factors satisfying the second
/// incompatibility condition.
///
/// Construction: take the shortest non-palindromic complete return word `r`
/// (to any palindromic factor `p`), tie-broken by leftmost occurrence and
/// then lexicographically. With `t` the first letter of `r`, let `q` be the
/// longest word such that `t q` is a prefix of `r` and the reversal of `q`
/// followed by `t` is a suffix of `r` (both boundary patterns are anchored in
/// `r` itself). If `q` is empty, `r` returns to the letter `t`, and `u`, `v`
/// are the shortest prefix/suffix of `r` touching the first letter after the
/// initial `t`. Otherwise a palindromic factor of the interior of `r` starts
/// with the reversal of `q` and ends with `q`; the letter `z` following its
/// `q`-reversal prefix pins `u` and `v` as the shortest prefix ending with
/// `q̃z` and the shortest suffix starting with `zq`.
pub fn extract_e2_witness(w: &Word) -> Result<E2Witness> {
    if palindrome::is_rich(w) {
        return Err(Error::RichInput(w.to_string()));
    }

    // shortest non-palindromic complete return word, leftmost, then smallest
    let mut best: Option<(usize, usize, Word, Word)> = None;
    for p in distinct_palindromic_factors(w) {
        let occ = w.occurrences(&p)?;
        for pair in occ.windows(2) {
            let r = w.subword(pair[0]..pair[1] + p.len());
            if r.is_palindrome() {
                continue;
            }
            let key = (r.len(), pair[0], r.clone(), p.clone());
            if best
                .as_ref()
                .is_none_or(|b| (key.0, key.1, &key.2) < (b.0, b.1, &b.2))
            {
                best = Some(key);
            }
        }
    }
    let Some((_, _, r, p)) = best else {
        return Err(Error::Internal(format!(
            "non-rich word {w} has no non-palindromic complete return word"
        )));
    };

    let t = r.letter(0);
    let n = r.len();
    // longest q with t·q a prefix of r and reverse(q)·t a suffix of r;
    // q = empty always qualifies because r starts and ends with t
    let mut q = Word::empty();
    for len in (1..n).rev() {
        let cand = r.subword(1..1 + len);
        let suffix_pattern = cand.reverse().concat(&r.subword(0..1));
        if r.subword(n - len - 1..n) == suffix_pattern {
            q = cand;
            break;
        }
    }

    let (u, v, z) =
        if q.is_empty() {
            // r is a complete return word of the letter t; t does not occur inside
            if n < 4 {
                return Err(Error::Internal(format!(
                    "degenerate return word {r} in {w}"
                )));
            }
            let x = r.letter(1);
            let y = r.letter(n - 2);
            if x == t || y == t || x == y {
                return Err(Error::Internal(format!(
                    "boundary letters of return word {r} contradict maximality of q"
                )));
            }
            let z = x;
            let first = r.letters().iter().position(|&c| c == z).unwrap();
            let last = r.letters().iter().rposition(|&c| c == z).unwrap();
            (r.subword(0..first + 1), r.subword(last..n), z)
        } else {
            let f = r.subword(1..n - 1);
            let q_rev = q.reverse();
            let starts = f.occurrences(&q_rev)?;
            let ends = f.occurrences(&q)?;
            let mut inner: Option<usize> = None;
            'outer: for &i in &starts {
                for &j in &ends {
                    if j > i && f.subword(i..j + q.len()).is_palindrome() {
                        inner = Some(i);
                        break 'outer;
                    }
                }
            }
            let Some(i) = inner else {
                return Err(Error::Internal(format!(
                    "no inner palindrome bridging {} and {q} inside {f}",
                    q.reverse()
                )));
            };
            let z = f.letter(i + q.len());
            if z == t {
                return Err(Error::Internal(format!(
                    "bridging letter equals the return letter in {r}"
                )));
            }
            let prefix_pattern = q_rev.concat(&Word::from_letters([z])?);
            let suffix_pattern = Word::from_letters([z])?.concat(&q);
            let first = *r.occurrences(&prefix_pattern)?.first().ok_or_else(|| {
                Error::Internal(format!("pattern {prefix_pattern} missing from {r}"))
            })?;
            let last = *r.occurrences(&suffix_pattern)?.last().ok_or_else(|| {
                Error::Internal(format!("pattern {suffix_pattern} missing from {r}"))
            })?;
            (
                r.subword(0..first + prefix_pattern.len()),
                r.subword(last..n),
                z,
            )
        };

    if !check_e2(&u, &v) {
        return Err(Error::Internal(format!(
            "extracted pair ({u}, {v}) from {w} fails the incompatibility check"
        )));
    }
    Ok(E2Witness { u, v, r, p, q, z })
}

/// For a word over at most two letters `a`, `b`: a non-palindromic `q` such
/// that `aqa`, `bqb`, `aq̃b`, and `bq̃a` are all factors, if one exists. Such a
/// `q` exists exactly when the word is not rich.
pub fn binary_nonrich_witness(w: &Word) -> Result<Option<Word>> {
    let alphabet = w.inferred_alphabet();
    let distinct = if w.is_empty() { 0 } else { alphabet.size() };
    if distinct > 2 {
        return Err(Error::Precondition(format!(
            "word must be over at most two letters, found {distinct}"
        )));
    }
    if distinct < 2 {
        return Ok(None);
    }
    let a = Word::from_letters([alphabet.letter(0)])?;
    let b = Word::from_letters([alphabet.letter(1)])?;

    // candidate q by length, then lexicographically; membership via per-length
    // factor sets
    for len in 1..w.len() {
        let candidates: BTreeSet<Word> = w
            .factors(len)
            .into_iter()
            .filter(|q| !q.is_palindrome())
            .collect();
        if candidates.is_empty() {
            continue;
        }
        let around: HashSet<Word> = w.factors(len + 2).into_iter().collect();
        for q in candidates {
            let qr = q.reverse();
            if around.contains(&a.concat(&q).concat(&a))
                && around.contains(&b.concat(&q).concat(&b))
                && around.contains(&a.concat(&qr).concat(&b))
                && around.contains(&b.concat(&qr).concat(&a))
            {
                return Ok(Some(q));
            }
        }
    }
    Ok(None)
}

/// Outcome of a compatibility analysis between two rich words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompatStatus {
    WitnessFound,
    IncompatibleE1,
    IncompatibleE2,
    BoundExhausted,
}

impl CompatStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CompatStatus::WitnessFound => "witness-found",
            CompatStatus::IncompatibleE1 => "incompatible-e1",
            CompatStatus::IncompatibleE2 => "incompatible-e2",
            CompatStatus::BoundExhausted => "bound-exhausted",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatVerdict {
    pub status: CompatStatus,
    /// Shortest rich word containing both inputs, ties broken
    /// lexicographically; present only for `WitnessFound`.
    pub witness: Option<Word>,
    /// Maximal superword length searched.
    pub bound: usize,
}

impl Serialize for CompatVerdict {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("CompatVerdict", 3)?;
        s.serialize_field("status", self.status.as_str())?;
        s.serialize_field("witness", &self.witness.as_ref().map(|w| w.to_string()))?;
        s.serialize_field("bound", &self.bound)?;
        s.end()
    }
}

/// Semi-decides whether two rich words occur together in a rich word: first
/// the two incompatibility conditions on the pair itself, then a search over
/// all rich words up to `max_len` on the joint alphabet of `u` and `v`.
///
/// A `BoundExhausted` verdict rules out witnesses over the joint alphabet up
/// to the bound only; a witness over a larger alphabet could in principle
/// exist. Use [`compat_search_with_alphabet`] to widen the search.
pub fn compat_search(u: &Word, v: &Word, max_len: usize) -> Result<CompatVerdict> {
    let joint = u.inferred_alphabet().union(&v.inferred_alphabet());
    compat_search_with_alphabet(u, v, max_len, &joint)
}

/// As [`compat_search`], but extending candidate superwords over the given
/// alphabet, which must contain every letter of `u` and `v`.
pub fn compat_search_with_alphabet(
    u: &Word,
    v: &Word,
    max_len: usize,
    alphabet: &crate::word::Alphabet,
) -> Result<CompatVerdict> {
    if !palindrome::is_rich(u) {
        return Err(Error::NotRich(u.to_string()));
    }
    if !palindrome::is_rich(v) {
        return Err(Error::NotRich(v.to_string()));
    }
    if max_len < u.len().max(v.len()) {
        return Err(Error::Precondition(format!(
            "max_len {max_len} is smaller than the longer input ({})",
            u.len().max(v.len())
        )));
    }
    for &c in u.letters().iter().chain(v.letters()) {
        if !alphabet.contains(c) {
            return Err(Error::Precondition(format!(
                "search alphabet is missing the input letter {c:?}"
            )));
        }
    }
    if check_e1(u, v) {
        return Ok(CompatVerdict {
            status: CompatStatus::IncompatibleE1,
            witness: None,
            bound: max_len,
        });
    }
    if check_e2(u, v) {
        return Ok(CompatVerdict {
            status: CompatStatus::IncompatibleE2,
            witness: None,
            bound: max_len,
        });
    }

    if u.is_empty() && v.is_empty() {
        return Ok(CompatVerdict {
            status: CompatStatus::WitnessFound,
            witness: Some(Word::empty()),
            bound: max_len,
        });
    }
    // extensions in character order so the depth-first visit order is
    // lexicographic within each length
    let mut letters: Vec<char> = alphabet.letters().to_vec();
    letters.sort_unstable();
    letters.dedup();

    struct Search<'a> {
        letters: Vec<char>,
        u: &'a [char],
        v: &'a [char],
        tree: Eertree,
        path: Vec<char>,
        best: Option<Vec<char>>,
        max_len: usize,
    }
    impl Search<'_> {
        fn ends_with(path: &[char], pat: &[char]) -> bool {
            path.len() >= pat.len() && path[path.len() - pat.len()..] == *pat
        }
        fn dfs(&mut self, has_u: bool, has_v: bool) {
            if has_u && has_v {
                // first hit at any given length is lexicographically least
                self.best = Some(self.path.clone());
                return;
            }
            let cap = match &self.best {
                Some(b) => b.len() - 1,
                None => self.max_len,
            };
            if self.path.len() >= cap {
                return;
            }
            for i in 0..self.letters.len() {
                let c = self.letters[i];
                if self.tree.push(i as u32) {
                    self.path.push(c);
                    let nu = has_u || Self::ends_with(&self.path, self.u);
                    let nv = has_v || Self::ends_with(&self.path, self.v);
                    self.dfs(nu, nv);
                    self.path.pop();
                }
                self.tree.pop();
            }
        }
    }

    let mut search = Search {
        tree: Eertree::new(letters.len()),
        letters,
        u: u.letters(),
        v: v.letters(),
        path: Vec::new(),
        best: None,
        max_len,
    };
    let has_u0 = u.is_empty();
    let has_v0 = v.is_empty();
    search.dfs(has_u0, has_v0);

    match search.best {
        Some(b) => Ok(CompatVerdict {
            status: CompatStatus::WitnessFound,
            witness: Some(Word::from_letters(b)?),
            bound: max_len,
        }),
        None => Ok(CompatVerdict {
            status: CompatStatus::BoundExhausted,
            witness: None,
            bound: max_len,
        }),
    }
}

/// True iff every complete return word of every palindromic factor of `w` is
/// itself a palindrome.
pub fn return_words_palindromic(w: &Word) -> bool {
    for p in distinct_palindromic_factors(w) {
        let occ = w.occurrences(&p).expect("non-empty palindromic factor");
        for pair in occ.windows(2) {
            if !w.subword(pair[0]..pair[1] + p.len()).is_palindrome() {
                return false;
            }
        }
    }
    true
}

/// The quantity `C(n+1) - C(n) + 2 - P(n+1) - P(n)` computed from the factor
/// and palindromic-factor counts of the finite word `w`.
pub fn complexity_identity_gap(w: &Word, n: usize) -> Result<i64> {
    if n >= w.len() {
        return Err(Error::Precondition(format!(
            "n must satisfy 0 <= n < |w| = {}, got {n}",
            w.len()
        )));
    }
    let f_n = w.factors(n);
    let f_n1 = w.factors(n + 1);
    let p_n = f_n.iter().filter(|f| f.is_palindrome()).count() as i64;
    let p_n1 = f_n1.iter().filter(|f| f.is_palindrome()).count() as i64;
    Ok(f_n1.len() as i64 - f_n.len() as i64 + 2 - p_n1 - p_n)
}

/// Partial sums of the complexity identity over a purely periodic word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BrSumReport {
    pub partial_sums: Vec<i64>,
    pub defect_estimate: u64,
    pub saturated: bool,
}

fn primitive_root(period: &Word) -> Word {
    let n = period.len();
    for d in 1..=n {
        if n.is_multiple_of(d) {
            let root = period.subword(0..d);
            let mut rebuilt = Word::empty();
            for _ in 0..n / d {
                rebuilt = rebuilt.concat(&root);
            }
            if rebuilt == *period {
                return root;
            }
        }
    }
    period.clone()
}

fn repeat(period: &Word, times: usize) -> Word {
    let mut out = Vec::with_capacity(period.len() * times);
    for _ in 0..times {
        out.extend_from_slice(period.letters());
    }
    Word::from_letters(out).expect("letters already validated")
}

/// Factor and palindromic-factor counts of length `n` of the periodic word
/// `period^infinity`, computed from a window long enough to contain them all.
fn periodic_counts(period: &Word, n: usize) -> (usize, usize) {
    let m = n.div_ceil(period.len()) + 2;
    let window = repeat(period, m);
    let fs = window.factors(n);
    let pals = fs.iter().filter(|f| f.is_palindrome()).count();
    debug_assert_eq!(
        fs.len(),
        repeat(period, m + 1).factors(n).len(),
        "window of {m} copies did not saturate length-{n} factors"
    );
    (fs.len(), pals)
}

/// Accumulates the identity summands of the periodic word `period^infinity`
/// for `n = 0..=k_max`. Half the total equals the periodic word's defect;
/// `saturated` reports whether the summands vanished from the point where the
/// factor complexity reached its ceiling.
pub fn brlek_reutenauer_sum(period: &Word, k_max: usize) -> Result<BrSumReport> {
    if period.is_empty() {
        return Err(Error::Precondition("period must be non-empty".into()));
    }
    let root = primitive_root(period);
    let doubled = root.concat(&root);
    if !doubled.contains_factor(&root.reverse()) {
        return Err(Error::Precondition(format!(
            "periodic language of {period} is not closed under reversal"
        )));
    }

    let counts: Vec<(usize, usize)> = (0..=k_max + 1)
        .map(|n| periodic_counts(period, n))
        .collect();
    let mut partial_sums = Vec::with_capacity(k_max + 1);
    let mut total = 0i64;
    for n in 0..=k_max {
        let (c0, p0) = counts[n];
        let (c1, p1) = counts[n + 1];
        total += c1 as i64 - c0 as i64 + 2 - p1 as i64 - p0 as i64;
        partial_sums.push(total);
    }
    if total < 0 || total % 2 != 0 {
        return Err(Error::Internal(format!(
            "identity sum for period {period} is {total}, expected an even non-negative value"
        )));
    }
    let defect_estimate = (total / 2) as u64;

    // complexity of a primitive-rooted periodic word saturates at the root length
    let ceiling = root.len();
    let sat_point = counts.iter().position(|&(c, _)| c == ceiling);
    let saturated = match sat_point {
        Some(start) => (start..=k_max).all(|n| {
            let (c0, p0) = counts[n];
            let (c1, p1) = counts[n + 1];
            c1 as i64 - c0 as i64 + 2 - p1 as i64 - p0 as i64 == 0
        }),
        None => false,
    };
    Ok(BrSumReport {
        partial_sums,
        defect_estimate,
        saturated,
    })
}

/// All minimal non-rich words up to length `max_n` over the canonical
/// `d`-letter alphabet, reported as orbit representatives under letter
/// permutations and reversal (lexicographically least orbit member), sorted
/// by length then lexicographically.
pub fn minimal_nonrich(d: usize, max_n: usize) -> Result<Vec<Word>> {
    if d < 2 {
        return Err(Error::Precondition(format!(
            "alphabet size must be at least 2, got {d}"
        )));
    }
    if max_n < 1 {
        return Err(Error::Precondition("max_n must be at least 1".into()));
    }
    let alphabet = crate::word::Alphabet::canonical(d)?;

    fn go(
        tree: &mut Eertree,
        path: &mut Vec<u32>,
        d: usize,
        max_n: usize,
        alphabet: &crate::word::Alphabet,
        out: &mut HashSet<Word>,
    ) -> Result<()> {
        if path.len() + 1 > max_n {
            return Ok(());
        }
        for c in 0..d as u32 {
            let created = tree.push(c);
            path.push(c);
            if created {
                go(tree, path, d, max_n, alphabet, out)?;
            } else {
                // non-rich child of a rich word; its long prefix is rich, so it
                // is minimal iff dropping the first letter leaves a rich word
                let tail = Eertree::from_letters(d, path[1..].iter().copied());
                if tail.is_rich() {
                    let word =
                        Word::from_letters(path.iter().map(|&i| alphabet.letter(i as usize)))?;
                    out.insert(canonical_orbit_representative(&word)?);
                }
            }
            path.pop();
            tree.pop();
        }
        Ok(())
    }

    let mut tree = Eertree::new(d);
    let mut path = Vec::new();
    let mut out = HashSet::new();
    go(&mut tree, &mut path, d, max_n, &alphabet, &mut out)?;
    let mut result: Vec<Word> = out.into_iter().collect();
    result.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(result)
}

/// All distinct non-empty rich factors of `w` with their longest palindromic
/// prefix and suffix, ordered by first occurrence in `w`, then by length.
pub fn rich_factors_table(w: &Word) -> Vec<(Word, Word, Word)> {
    let mut seen = HashSet::new();
    let mut rows = Vec::new();
    let n = w.len();
    for start in 0..n {
        for len in 1..=n - start {
            let u = w.subword(start..start + len);
            if !seen.insert(u.clone()) {
                continue;
            }
            if palindrome::is_rich(&u) {
                let lpp = palindrome::lpp(&u).expect("non-empty");
                let lps = palindrome::lps(&u).expect("non-empty");
                rows.push((u, lpp, lps));
            }
        }
    }
    rows
}
