//! Morphisms as letter-to-word maps: application, fixed-point prefixes,
//! primitivity, conjugacy enumeration with certificates, palindromic image
//! decompositions, markedness, and defect/reversal profiling of fixed points.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::palindrome::PalIndex;
use crate::word::{Alphabet, Word};

/// A non-erasing morphism: every source letter maps to a non-empty word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Alphabet,
    target: Alphabet,
    images: Vec<Word>,
}

impl Morphism {
    pub fn new(source: Alphabet, images: Vec<Word>) -> Result<Morphism> {
        if images.len() != source.size() {
            return Err(Error::Parse(format!(
                "expected {} images, got {}",
                source.size(),
                images.len()
            )));
        }
        if let Some(i) = images.iter().position(|w| w.is_empty()) {
            return Err(Error::Parse(format!(
                "image of {:?} is empty; erasing morphisms are not supported",
                source.letter(i)
            )));
        }
        // target alphabet: source letters first, then any extra image letters
        // in order of appearance
        let mut target = source.clone();
        let mut extra = Vec::new();
        for image in &images {
            for &c in image.letters() {
                if !target.contains(c) && !extra.contains(&c) {
                    extra.push(c);
                }
            }
        }
        if !extra.is_empty() {
            target = target.union(&Alphabet::new(extra)?);
        }
        Ok(Morphism {
            source,
            target,
            images,
        })
    }

    /// The Thue-Morse morphism `0 -> 01, 1 -> 10`.
    pub fn thue_morse() -> Morphism {
        "0->01;1->10".parse().expect("static spec")
    }

    /// The Fibonacci morphism `0 -> 01, 1 -> 0`.
    pub fn fibonacci() -> Morphism {
        "0->01;1->0".parse().expect("static spec")
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, c: char) -> Result<&Word> {
        let i = self
            .source
            .index_of(c)
            .ok_or_else(|| Error::Precondition(format!("letter {c:?} not in source alphabet")))?;
        Ok(&self.images[i])
    }

    /// Source and target alphabets coincide as letter sets.
    pub fn is_endomorphism(&self) -> bool {
        self.target
            .letters()
            .iter()
            .all(|&c| self.source.contains(c))
    }

    fn require_endomorphism(&self) -> Result<()> {
        if self.is_endomorphism() {
            Ok(())
        } else {
            Err(Error::Precondition(
                "operation requires equal source and target alphabets".into(),
            ))
        }
    }

    /// Concatenation of the images of the letters of `w`, in order.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut letters = Vec::new();
        for &c in w.letters() {
            letters.extend_from_slice(self.image(c)?.letters());
        }
        Word::from_letters(letters)
    }

    /// Occurrence counts: entry `[a][b]` counts the letter `b` in the image
    /// of `a` (letters in source-alphabet order).
    pub fn incidence_matrix(&self) -> Result<Vec<Vec<u64>>> {
        self.require_endomorphism()?;
        let d = self.source.size();
        let mut m = vec![vec![0u64; d]; d];
        for (i, image) in self.images.iter().enumerate() {
            for &c in image.letters() {
                m[i][self.source.index_of(c).expect("endomorphism")] += 1;
            }
        }
        Ok(m)
    }

    /// True iff some power maps every letter to a word containing every
    /// letter. The exponent is bounded by the primitivity bound for
    /// non-negative matrices, `(d-1)^2 + 1`.
    pub fn is_primitive(&self) -> Result<bool> {
        let m = self.incidence_matrix()?;
        let d = self.source.size();
        let mut reach: Vec<Vec<bool>> = m
            .iter()
            .map(|row| row.iter().map(|&x| x > 0).collect())
            .collect();
        let bound = (d - 1) * (d - 1) + 1;
        let base = reach.clone();
        for _ in 0..bound {
            if reach.iter().all(|row| row.iter().all(|&x| x)) {
                return Ok(true);
            }
            let mut next = vec![vec![false; d]; d];
            for i in 0..d {
                for k in 0..d {
                    if reach[i][k] {
                        for (j, cell) in next[i].iter_mut().enumerate() {
                            *cell |= base[k][j];
                        }
                    }
                }
            }
            reach = next;
        }
        Ok(reach.iter().all(|row| row.iter().all(|&x| x)))
    }

    /// Streams the fixed point from a prolongable seed letter and truncates
    /// to exactly `min_len` letters. The seed is prolongable when its image
    /// starts with the seed and has length at least two.
    pub fn fixed_point_prefix(&self, seed: char, min_len: usize) -> Result<Word> {
        self.require_endomorphism()?;
        let image = self.image(seed)?;
        if image.letter(0) != seed {
            return Err(Error::Precondition(format!(
                "image of {seed:?} does not start with {seed:?}; no fixed point grows from it"
            )));
        }
        if image.len() < 2 {
            return Err(Error::Precondition(format!(
                "image of {seed:?} has length 1; iteration does not grow"
            )));
        }
        // the fixed point satisfies u = image(u[0]) image(u[1]) ...,
        // so the buffer can be extended by mapping letters already produced
        let mut buf: Vec<char> = image.letters().to_vec();
        let mut next = 1usize;
        while buf.len() < min_len {
            let c = buf[next];
            next += 1;
            buf.extend_from_slice(self.image(c)?.letters());
        }
        buf.truncate(min_len);
        Word::from_letters(buf)
    }

    fn images_key(&self) -> Vec<String> {
        self.images.iter().map(|w| w.to_string()).collect()
    }

    /// All morphisms conjugate to this one, each with a certificate. The
    /// input itself is first (empty certificate), then the chain obtained by
    /// rotating a shared first letter of all images to their ends, then the
    /// chain rotating a shared last letter to their fronts.
    pub fn conjugates(&self) -> Result<Vec<(Morphism, ConjugacyCertificate)>> {
        self.require_endomorphism()?;
        let mut result = vec![(
            self.clone(),
            ConjugacyCertificate {
                word: Word::empty(),
                direction: Direction::Right,
            },
        )];
        let mut seen: HashSet<Vec<String>> = HashSet::new();
        seen.insert(self.images_key());

        // rightward: all images share their first letter c, and
        // phi(a) . w = w . psi(a) with w the stripped prefix word
        let mut cur = self.clone();
        let mut w: Vec<char> = Vec::new();
        loop {
            let c = cur.images[0].letter(0);
            if !cur.images.iter().all(|im| im.letter(0) == c) {
                break;
            }
            let images: Vec<Word> = cur
                .images
                .iter()
                .map(|im| im.subword(1..im.len()).concat(&im.subword(0..1)))
                .collect();
            let next = Morphism::new(cur.source.clone(), images)?;
            w.push(c);
            if !seen.insert(next.images_key()) {
                break;
            }
            let cert = ConjugacyCertificate {
                word: Word::from_letters(w.iter().copied())?,
                direction: Direction::Right,
            };
            debug_assert!(verify_conjugacy(self, &next, &cert));
            result.push((next.clone(), cert));
            cur = next;
        }

        // leftward: all images share their last letter c, and
        // w . phi(a) = psi(a) . w with w the stripped suffix word
        let mut cur = self.clone();
        let mut w: Vec<char> = Vec::new();
        loop {
            let last = cur.images[0].letter(cur.images[0].len() - 1);
            if !cur.images.iter().all(|im| im.letter(im.len() - 1) == last) {
                break;
            }
            let images: Vec<Word> = cur
                .images
                .iter()
                .map(|im| {
                    im.subword(im.len() - 1..im.len())
                        .concat(&im.subword(0..im.len() - 1))
                })
                .collect();
            let next = Morphism::new(cur.source.clone(), images)?;
            w.insert(0, last);
            if !seen.insert(next.images_key()) {
                break;
            }
            let cert = ConjugacyCertificate {
                word: Word::from_letters(w.iter().copied())?,
                direction: Direction::Left,
            };
            debug_assert!(verify_conjugacy(self, &next, &cert));
            result.push((next.clone(), cert));
            cur = next;
        }
        Ok(result)
    }

    /// Decomposition of every image as `p . p_a` with `p` a common palindromic
    /// prefix and every remainder `p_a` a palindrome. Returns the certificate
    /// with the longest valid `p`.
    pub fn class_p_certificate(&self) -> Option<ClassPCertificate> {
        let shortest = self
            .images
            .iter()
            .min_by_key(|im| im.len())
            .expect("images non-empty");
        let mut candidates: Vec<Word> = (0..=shortest.len())
            .map(|k| shortest.subword(0..k))
            .filter(|p| p.is_palindrome())
            .collect();
        candidates.sort_by_key(|p| std::cmp::Reverse(p.len()));
        'cand: for p in candidates {
            let mut parts = Vec::with_capacity(self.images.len());
            for (i, image) in self.images.iter().enumerate() {
                if image.len() < p.len() || image.subword(0..p.len()) != p {
                    continue 'cand;
                }
                let rest = image.subword(p.len()..image.len());
                if !rest.is_palindrome() {
                    continue 'cand;
                }
                parts.push((self.source.letter(i), rest));
            }
            return Some(ClassPCertificate { common: p, parts });
        }
        None
    }

    /// Scans the conjugacy class for a member whose images decompose as
    /// `p . p_a` with all parts palindromic.
    pub fn class_p_prime_certificate(&self) -> Result<Option<ClassPPrimeCertificate>> {
        for (psi, conjugator) in self.conjugates()? {
            if let Some(class_p) = psi.class_p_certificate() {
                return Ok(Some(ClassPPrimeCertificate {
                    morphism: psi,
                    class_p,
                    conjugator,
                }));
            }
        }
        Ok(None)
    }

    fn last_letters_exhaust(&self) -> bool {
        let set: HashSet<char> = self
            .images
            .iter()
            .map(|im| im.letter(im.len() - 1))
            .collect();
        set.len() == self.source.size()
    }

    fn first_letters_exhaust(&self) -> bool {
        let set: HashSet<char> = self.images.iter().map(|im| im.letter(0)).collect();
        set.len() == self.source.size()
    }

    /// Searches the conjugacy class for one member whose images' last letters
    /// exhaust the alphabet and one whose first letters do.
    pub fn marked_pair(&self) -> Result<Option<MarkedPair>> {
        let conjugates = self.conjugates()?;
        let phi1 = conjugates.iter().find(|(m, _)| m.last_letters_exhaust());
        let phi2 = conjugates.iter().find(|(m, _)| m.first_letters_exhaust());
        match (phi1, phi2) {
            (Some((phi1, cert1)), Some((phi2, cert2))) => {
                // record whether the extremal members of the chain witness
                // markedness: the last leftward conjugate for last letters,
                // the last rightward conjugate for first letters
                let leftmost = conjugates
                    .iter()
                    .rfind(|(_, c)| c.direction == Direction::Left || c.word.is_empty())
                    .map(|(m, _)| m)
                    .unwrap_or(self);
                let rightmost = conjugates
                    .iter()
                    .rfind(|(_, c)| c.direction == Direction::Right)
                    .map(|(m, _)| m)
                    .unwrap_or(self);
                Ok(Some(MarkedPair {
                    phi1: phi1.clone(),
                    phi1_certificate: cert1.clone(),
                    phi2: phi2.clone(),
                    phi2_certificate: cert2.clone(),
                    leftmost_witnesses_last: leftmost.last_letters_exhaust(),
                    rightmost_witnesses_first: rightmost.first_letters_exhaust(),
                }))
            }
            _ => Ok(None),
        }
    }

    /// True iff the longest common prefix and longest common suffix of all
    /// images are both empty. Requires at least two source letters.
    pub fn is_stationary(&self) -> Result<bool> {
        if self.source.size() < 2 {
            return Err(Error::Precondition(
                "stationarity needs at least two letters; a single image is its own common prefix"
                    .into(),
            ));
        }
        let first = &self.images[0];
        let shared_prefix = self.images.iter().all(|im| im.letter(0) == first.letter(0));
        let shared_suffix = self
            .images
            .iter()
            .all(|im| im.letter(im.len() - 1) == first.letter(first.len() - 1));
        Ok(!shared_prefix && !shared_suffix)
    }

    /// Defects of the fixed point's prefixes at geometrically spaced lengths.
    pub fn defect_profile(
        &self,
        seed: char,
        max_len: usize,
        checkpoints: usize,
    ) -> Result<DefectProfile> {
        if max_len == 0 || checkpoints == 0 {
            return Err(Error::Precondition(
                "max_len and checkpoints must be positive".into(),
            ));
        }
        let prefix = self.fixed_point_prefix(seed, max_len)?;
        let index = PalIndex::build(&prefix);
        let per_prefix = index.per_prefix_defect();
        let lengths = checkpoint_lengths(max_len, checkpoints);
        let points: Vec<(usize, u64)> = lengths.iter().map(|&l| (l, per_prefix[l])).collect();

        let verdict = if points.iter().all(|&(_, d)| d == 0) {
            ProfileVerdict::StablyZero
        } else if points.len() >= 3 {
            let tail = &points[points.len() - 3..];
            if tail[0].1 < tail[1].1 && tail[1].1 < tail[2].1 {
                ProfileVerdict::Growing
            } else {
                ProfileVerdict::PlateauPositive
            }
        } else {
            ProfileVerdict::PlateauPositive
        };
        Ok(DefectProfile {
            morphism: self.clone(),
            seed,
            checkpoints: points,
            verdict,
        })
    }

    /// Tests factor-by-factor reversal closure of a fixed-point prefix up to
    /// `factor_len`, and counts its distinct non-empty palindromic factors. A
    /// negative answer on a saturated prefix is conclusive for the fixed
    /// point; a positive answer is evidence up to the tested depth only.
    pub fn reversal_closure_probe(
        &self,
        seed: char,
        factor_len: usize,
        prefix_len: usize,
    ) -> Result<ReversalProbe> {
        if factor_len == 0 {
            return Err(Error::Precondition("factor_len must be positive".into()));
        }
        if prefix_len < 4 * factor_len {
            return Err(Error::Precondition(format!(
                "prefix_len must be at least 4 * factor_len = {}",
                4 * factor_len
            )));
        }
        let prefix = self.fixed_point_prefix(seed, prefix_len)?;
        let mut closed = true;
        'lens: for len in 1..=factor_len {
            let factors = prefix.factors(len);
            for f in &factors {
                if !factors.contains(&f.reverse()) {
                    closed = false;
                    break 'lens;
                }
            }
        }
        let palindrome_count = PalIndex::build(&prefix).palindrome_count();
        Ok(ReversalProbe {
            factor_len,
            prefix_len,
            closed,
            palindrome_count,
        })
    }
}

/// Geometrically spaced checkpoint lengths ending exactly at `max_len`.
fn checkpoint_lengths(max_len: usize, checkpoints: usize) -> Vec<usize> {
    let mut set = std::collections::BTreeSet::new();
    for i in 1..=checkpoints {
        let x = (max_len as f64).powf(i as f64 / checkpoints as f64).round() as usize;
        set.insert(x.clamp(1, max_len));
    }
    set.insert(max_len);
    set.into_iter().collect()
}

/// Which side the conjugating word sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `phi(a) . w = w . psi(a)` for every letter `a`.
    Right,
    /// `w . phi(a) = psi(a) . w` for every letter `a`.
    Left,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyCertificate {
    pub word: Word,
    pub direction: Direction,
}

impl Serialize for ConjugacyCertificate {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("ConjugacyCertificate", 2)?;
        s.serialize_field("w", &self.word.to_string())?;
        s.serialize_field("direction", &self.direction)?;
        s.end()
    }
}

/// Checks the defining equation of the certificate, letter by letter.
pub fn verify_conjugacy(phi: &Morphism, psi: &Morphism, cert: &ConjugacyCertificate) -> bool {
    if phi.source != psi.source {
        return false;
    }
    phi.source.letters().iter().all(|&a| {
        let phi_a = phi.image(a).expect("letter in source");
        let psi_a = psi.image(a).expect("letter in source");
        match cert.direction {
            Direction::Right => phi_a.concat(&cert.word) == cert.word.concat(psi_a),
            Direction::Left => cert.word.concat(phi_a) == psi_a.concat(&cert.word),
        }
    })
}

/// Decomposition `image(a) = p . p_a` with `p` and every `p_a` palindromic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPCertificate {
    pub common: Word,
    /// Per source letter, the palindromic remainder of its image.
    pub parts: Vec<(char, Word)>,
}

impl Serialize for ClassPCertificate {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut map = serde_json::Map::new();
        for (c, part) in &self.parts {
            map.insert(c.to_string(), serde_json::Value::String(part.to_string()));
        }
        let mut s = serializer.serialize_struct("ClassPCertificate", 2)?;
        s.serialize_field("p", &self.common.to_string())?;
        s.serialize_field("p_map", &map)?;
        s.end()
    }
}

/// A conjugate admitting a palindromic decomposition, with both certificates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassPPrimeCertificate {
    #[serde(serialize_with = "serialize_morphism")]
    pub morphism: Morphism,
    pub class_p: ClassPCertificate,
    pub conjugator: ConjugacyCertificate,
}

fn serialize_morphism<S: serde::Serializer>(
    m: &Morphism,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.serialize_str(&m.to_string())
}

/// Conjugates witnessing that a morphism is marked, with their conjugacy
/// certificates relative to the analyzed morphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarkedPair {
    #[serde(serialize_with = "serialize_morphism")]
    pub phi1: Morphism,
    pub phi1_certificate: ConjugacyCertificate,
    #[serde(serialize_with = "serialize_morphism")]
    pub phi2: Morphism,
    pub phi2_certificate: ConjugacyCertificate,
    pub leftmost_witnesses_last: bool,
    pub rightmost_witnesses_first: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProfileVerdict {
    #[serde(rename = "stably-zero")]
    StablyZero,
    #[serde(rename = "growing")]
    Growing,
    #[serde(rename = "plateau-positive")]
    PlateauPositive,
}

impl ProfileVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProfileVerdict::StablyZero => "stably-zero",
            ProfileVerdict::Growing => "growing",
            ProfileVerdict::PlateauPositive => "plateau-positive",
        }
    }
}

/// Defects of a fixed point's prefixes at checkpoint lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectProfile {
    pub morphism: Morphism,
    pub seed: char,
    pub checkpoints: Vec<(usize, u64)>,
    pub verdict: ProfileVerdict,
}

impl Serialize for DefectProfile {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("DefectProfile", 4)?;
        s.serialize_field("morphism", &self.morphism.to_string())?;
        s.serialize_field("seed", &self.seed.to_string())?;
        s.serialize_field("checkpoints", &self.checkpoints)?;
        s.serialize_field("verdict", self.verdict.as_str())?;
        s.end()
    }
}

/// Reversal-closure evidence for a fixed-point prefix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReversalProbe {
    pub factor_len: usize,
    pub prefix_len: usize,
    pub closed: bool,
    pub palindrome_count: usize,
}

impl FromStr for Morphism {
    type Err = Error;

    /// Text format: `a->abab;b->aab`, whitespace ignored.
    fn from_str(s: &str) -> Result<Morphism> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut letters = Vec::new();
        let mut images = Vec::new();
        for entry in compact.split(';').filter(|e| !e.is_empty()) {
            let (lhs, rhs) = entry
                .split_once("->")
                .ok_or_else(|| Error::Parse(format!("missing `->` in rule {entry:?}")))?;
            let mut lhs_chars = lhs.chars();
            let letter = lhs_chars
                .next()
                .ok_or_else(|| Error::Parse(format!("missing letter in rule {entry:?}")))?;
            if lhs_chars.next().is_some() {
                return Err(Error::Parse(format!(
                    "left side of rule {entry:?} must be a single letter"
                )));
            }
            if letters.contains(&letter) {
                return Err(Error::Parse(format!(
                    "duplicate rule for letter {letter:?}"
                )));
            }
            if rhs.is_empty() {
                return Err(Error::Parse(format!(
                    "image of {letter:?} is empty; erasing morphisms are not supported"
                )));
            }
            letters.push(letter);
            images.push(rhs.parse::<Word>()?);
        }
        if letters.is_empty() {
            return Err(Error::Parse("morphism needs at least one rule".into()));
        }
        Morphism::new(Alphabet::new(letters)?, images)
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &c) in self.source.letters().iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{c}->{}", self.images[i])?;
        }
        Ok(())
    }
}
