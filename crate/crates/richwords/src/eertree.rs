//! Incremental palindromic tree over small-integer letters.
//!
//! One node per distinct non-empty palindromic factor, amortized-constant
//! append, and exact single-append rollback (`pop`) so depth-first searches
//! can share one tree along a path.

/// Sentinel for an absent transition.
const NONE: u32 = u32::MAX;
/// Node index of the length -1 root.
const NEG_ROOT: u32 = 0;
/// Node index of the length 0 root.
const EMPTY_ROOT: u32 = 1;

#[derive(Debug, Clone, Copy)]
struct Node {
    len: i32,
    /// Longest proper palindromic suffix of this node's palindrome.
    link: u32,
}

#[derive(Debug, Clone, Copy)]
struct AppendRecord {
    prev_last: u32,
    /// When a node was created: the node it extends and the appended letter,
    /// identifying the single transition to remove on rollback.
    created_from: u32,
    letter: u32,
}

/// Palindromic tree over letters `0..alphabet_size`.
#[derive(Debug, Clone)]
pub struct Eertree {
    alphabet_size: usize,
    text: Vec<u32>,
    nodes: Vec<Node>,
    /// Flat transition table, indexed by `node * alphabet_size + letter`.
    trans: Vec<u32>,
    /// Node of the longest palindromic suffix of the current text.
    last: u32,
    /// Per position: length of the longest palindromic suffix of that prefix.
    lps_lens: Vec<u32>,
    /// Per position: whether the append created a node.
    created: Vec<bool>,
    log: Vec<AppendRecord>,
}

impl Eertree {
    pub fn new(alphabet_size: usize) -> Eertree {
        assert!(alphabet_size > 0, "alphabet must be non-empty");
        let nodes = vec![
            Node {
                len: -1,
                link: NEG_ROOT,
            },
            Node {
                len: 0,
                link: NEG_ROOT,
            },
        ];
        Eertree {
            alphabet_size,
            text: Vec::new(),
            trans: vec![NONE; 2 * alphabet_size],
            nodes,
            last: EMPTY_ROOT,
            lps_lens: Vec::new(),
            created: Vec::new(),
            log: Vec::new(),
        }
    }

    /// Builds the tree for a full letter sequence.
    pub fn from_letters(alphabet_size: usize, letters: impl IntoIterator<Item = u32>) -> Eertree {
        let mut t = Eertree::new(alphabet_size);
        for c in letters {
            t.push(c);
        }
        t
    }

    #[inline]
    fn trans_at(&self, node: u32, letter: u32) -> u32 {
        self.trans[node as usize * self.alphabet_size + letter as usize]
    }

    #[inline]
    fn set_trans(&mut self, node: u32, letter: u32, target: u32) {
        self.trans[node as usize * self.alphabet_size + letter as usize] = target;
    }

    /// Walks suffix links from `v` to the first node X such that the letter
    /// just before the suffix occurrence of X at position `i` equals `text[i]`.
    /// The length -1 root matches unconditionally.
    #[inline]
    fn matching_ancestor(&self, mut v: u32, i: usize) -> u32 {
        loop {
            let len = self.nodes[v as usize].len;
            let j = i as i64 - len as i64 - 1;
            if j >= 0 && self.text[j as usize] == self.text[i] {
                return v;
            }
            v = self.nodes[v as usize].link;
        }
    }

    /// Appends one letter. Returns true iff a new palindrome node was created
    /// (at most one per append).
    pub fn push(&mut self, letter: u32) -> bool {
        assert!(
            (letter as usize) < self.alphabet_size,
            "letter {letter} out of range for alphabet of size {}",
            self.alphabet_size
        );
        self.text.push(letter);
        let i = self.text.len() - 1;
        let prev_last = self.last;

        let x = self.matching_ancestor(self.last, i);
        let existing = self.trans_at(x, letter);
        let created_from = if existing != NONE {
            self.last = existing;
            NONE
        } else {
            let new_len = self.nodes[x as usize].len + 2;
            let link = if new_len == 1 {
                EMPTY_ROOT
            } else {
                let y = self.matching_ancestor(self.nodes[x as usize].link, i);
                self.trans_at(y, letter)
            };
            debug_assert!(new_len == 1 || link != NONE);
            let u = self.nodes.len() as u32;
            self.nodes.push(Node { len: new_len, link });
            self.trans
                .resize(self.trans.len() + self.alphabet_size, NONE);
            self.set_trans(x, letter, u);
            self.last = u;
            x
        };

        self.lps_lens
            .push(self.nodes[self.last as usize].len as u32);
        self.created.push(created_from != NONE);
        self.log.push(AppendRecord {
            prev_last,
            created_from,
            letter,
        });
        created_from != NONE
    }

    /// Reverts the most recent `push`. Only the latest append can be undone,
    /// which restores the tree to its exact previous state.
    pub fn pop(&mut self) {
        let rec = self.log.pop().expect("pop on an empty tree");
        if rec.created_from != NONE {
            self.set_trans(rec.created_from, rec.letter, NONE);
            self.nodes.pop();
            self.trans.truncate(self.nodes.len() * self.alphabet_size);
        }
        self.last = rec.prev_last;
        self.text.pop();
        self.lps_lens.pop();
        self.created.pop();
    }

    /// Number of letters appended so far.
    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn text(&self) -> &[u32] {
        &self.text
    }

    /// Number of distinct non-empty palindromic factors of the current text.
    pub fn palindrome_count(&self) -> usize {
        self.nodes.len() - 2
    }

    /// Palindromic defect of the current text: `len - palindrome_count`.
    pub fn defect(&self) -> usize {
        self.text.len() - self.palindrome_count()
    }

    /// True iff every append so far created a node, i.e. the text is rich.
    pub fn is_rich(&self) -> bool {
        self.defect() == 0
    }

    /// True iff the most recent append created a node.
    pub fn last_append_created(&self) -> bool {
        *self.created.last().expect("no appends yet")
    }

    pub fn created_flags(&self) -> &[bool] {
        &self.created
    }

    /// Length of the longest palindromic suffix of the prefix of length `k`.
    pub fn lps_len_of_prefix(&self, k: usize) -> usize {
        if k == 0 {
            0
        } else {
            self.lps_lens[k - 1] as usize
        }
    }

    /// Length of the longest palindromic suffix of the whole current text.
    pub fn lps_len(&self) -> usize {
        self.lps_len_of_prefix(self.text.len())
    }

    /// Defects of all prefixes, by length 0..=len. Non-decreasing; the last
    /// entry equals `defect()`.
    pub fn per_prefix_defect(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.text.len() + 1);
        out.push(0);
        let mut created = 0u64;
        for (i, &c) in self.created.iter().enumerate() {
            created += u64::from(c);
            out.push((i + 1) as u64 - created);
        }
        out
    }

    /// Lengths of all non-empty palindrome nodes, in creation order.
    pub fn node_lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.nodes.iter().skip(2).map(|n| n.len as usize)
    }

    /// Number of distinct palindromic factors of length exactly `n` (n >= 1).
    pub fn palindromic_complexity(&self, n: usize) -> usize {
        self.node_lengths().filter(|&l| l == n).count()
    }

    /// Start position (in the current text) of the first occurrence of each
    /// node's palindrome, in creation order. A node is created at the position
    /// where its palindrome first ends.
    pub fn node_first_occurrences(&self) -> Vec<(usize, usize)> {
        // (start, len) per node; reconstructed from the creation log.
        let mut out = Vec::with_capacity(self.nodes.len() - 2);
        let mut node_idx = 2;
        for (pos, &created) in self.created.iter().enumerate() {
            if created {
                let len = self.nodes[node_idx].len as usize;
                out.push((pos + 1 - len, len));
                node_idx += 1;
            }
        }
        out
    }
}
