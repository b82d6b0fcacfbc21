//! Command-line surface. Every analysis is a subcommand with plain-text
//! output by default and a single JSON envelope under `--json`.
//!
//! Exit codes: 0 success, 1 predicate-false (`rich` on a non-rich word,
//! `binary-witness` with no witness), 2 usage error, 3 precondition error,
//! 4 internal consistency failure.

use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::enumeration::{self, GssSpec};
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::palindrome;
use crate::richness;
use crate::word::Word;

#[derive(Parser)]
#[command(
    name = "richwords",
    version,
    about = "Palindromic defect, rich words, and morphism analysis for finite words"
)]
struct Cli {
    /// Emit one JSON envelope on standard output instead of plain text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Palindromic defect of a word, with the defect of every prefix
    Defect {
        #[arg(required_unless_present = "file")]
        word: Option<String>,
        /// Batch mode: read one word per line from a file
        #[arg(long, conflicts_with = "word")]
        file: Option<std::path::PathBuf>,
    },
    /// Test whether a word is rich; exits 1 when it is not (in batch mode,
    /// when any word is not)
    Rich {
        #[arg(required_unless_present = "file")]
        word: Option<String>,
        /// Batch mode: read one word per line from a file
        #[arg(long, conflicts_with = "word")]
        file: Option<std::path::PathBuf>,
    },
    /// Longest palindromic suffix of a word
    Lps { word: String },
    /// Longest palindromic prefix of a word
    Lpp { word: String },
    /// Complete return words of a factor within a word
    Returns { word: String, factor: String },
    /// Factorize a rich word into its unioccurrent palindromic suffixes
    Ups { word: String },
    /// Decide or search compatibility of two rich words
    Compat {
        u: String,
        v: String,
        /// Maximal length of candidate superwords searched
        #[arg(long, default_value_t = 20)]
        max_len: usize,
        /// Search over these letters instead of the joint alphabet of u and v
        #[arg(long)]
        alphabet: Option<String>,
    },
    /// Extract an incompatible factor pair from a non-rich word
    Witness { word: String },
    /// Four-factor witness for a non-rich binary word; exits 1 when absent
    BinaryWitness { word: String },
    /// Count rich words of each length up to n over d letters
    CountRich {
        d: usize,
        n: usize,
        /// List the rich words of length exactly n instead of counting
        #[arg(long)]
        list: bool,
        /// Restrict listings to orbit representatives under letter
        /// permutations and reversal
        #[arg(long)]
        reduced: bool,
    },
    /// Build the block word a^n1 b^m1 a^n2 b^m2 ... or count the family
    Gss {
        /// Comma-separated non-decreasing exponents of the a-blocks
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        n_seq: Vec<u64>,
        /// Comma-separated non-decreasing exponents of the b-blocks
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        m_seq: Vec<u64>,
        /// Count the distinct constructible words of this length instead
        #[arg(long, conflicts_with_all = ["n_seq", "m_seq"])]
        count: Option<usize>,
    },
    /// Minimal non-rich words up to length n over d letters, one orbit
    /// representative each
    MinimalNonrich { d: usize, n: usize },
    /// Complexity-identity partial sums of the periodic word period^infinity
    BrSum {
        period: String,
        /// Largest summand index; defaults to 4*|period| + 8
        #[arg(long)]
        k_max: Option<usize>,
    },
    /// The quantity C(n+1) - C(n) + 2 - P(n+1) - P(n) of a finite word
    Gap { word: String, n: usize },
    /// Morphism analyses on a spec like `a->abab;b->aab`
    Morph {
        spec: String,
        #[command(subcommand)]
        action: MorphAction,
    },
    /// All rich factors of a word with their longest palindromic prefixes
    /// and suffixes, in first-occurrence order
    #[command(name = "table1")]
    Table1 { word: String },
}

#[derive(Subcommand)]
enum MorphAction {
    /// Primitivity, stationarity, markedness, conjugates, and palindromic
    /// image decompositions
    Analyze,
    /// Prefix of the fixed point grown from a seed letter
    Fixpoint {
        /// Seed letter; defaults to the first source letter
        #[arg(long)]
        seed: Option<char>,
        #[arg(long, default_value_t = 100)]
        min_len: usize,
    },
    /// Defect of fixed-point prefixes at geometrically spaced checkpoints
    DefectProfile {
        #[arg(long)]
        seed: Option<char>,
        #[arg(long, default_value_t = 100_000)]
        max_len: usize,
        #[arg(long, default_value_t = 12)]
        checkpoints: usize,
    },
    /// Reversal closure of the fixed point's language up to a factor length
    ReversalProbe {
        #[arg(long)]
        seed: Option<char>,
        #[arg(long, default_value_t = 8)]
        factor_len: usize,
        /// Prefix window; defaults to 32 * factor_len
        #[arg(long)]
        prefix_len: Option<usize>,
    },
}

struct Output {
    command: &'static str,
    input: Value,
    result: Value,
    plain: String,
    exit_code: i32,
}

/// Entry point shared by the binary and by tests. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    init_thread_pool();

    let start = Instant::now();
    match execute(&cli.command) {
        Ok(out) => {
            if cli.json {
                let envelope = json!({
                    "command": out.command,
                    "input": out.input,
                    "result": out.result,
                    "elapsed_ms": start.elapsed().as_millis() as u64,
                });
                println!(
                    "{}",
                    serde_json::to_string(&envelope).expect("serializable")
                );
            } else if !out.plain.is_empty() {
                println!("{}", out.plain);
            }
            out.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Caps internal parallelism from the RICHWORDS_THREADS environment variable;
/// the default is the machine parallelism chosen by the pool itself.
fn init_thread_pool() {
    if let Ok(value) = std::env::var("RICHWORDS_THREADS") {
        match value.parse::<usize>() {
            Ok(n) if n >= 1 => {
                // a failure here means a pool already exists, which is fine
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            _ => eprintln!("warning: ignoring invalid RICHWORDS_THREADS={value:?}"),
        }
    }
}

fn parse_word(s: &str) -> Result<Word> {
    s.parse()
}

fn sort_len_lex(words: &mut [Word]) {
    words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
}

fn batch_input(word: &Option<String>, file: &Option<std::path::PathBuf>) -> Value {
    match (word, file) {
        (Some(w), _) => json!({ "word": w }),
        (_, Some(path)) => json!({ "file": path.display().to_string() }),
        _ => json!(null),
    }
}

/// Words for a batch-capable command: either the single argument or one word
/// per line of the file.
fn gather_words(word: &Option<String>, file: &Option<std::path::PathBuf>) -> Result<Vec<Word>> {
    match (word, file) {
        (Some(w), None) => Ok(vec![parse_word(w)?]),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            text.lines().map(parse_word).collect()
        }
        _ => Err(Error::Parse("provide a word or --file".into())),
    }
}

fn execute(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Defect { word, file } => {
            let words = gather_words(word, file)?;
            let reports: Vec<_> = words.iter().map(palindrome::defect).collect();
            let plain: Vec<String> = reports
                .iter()
                .map(|report| {
                    let per_prefix: Vec<String> = report
                        .per_prefix_defect
                        .iter()
                        .map(|d| d.to_string())
                        .collect();
                    format!(
                        "word={} length={} palindromes={} defect={} per_prefix_defect={}",
                        report.word,
                        report.word.len(),
                        report.palindrome_count,
                        report.defect,
                        per_prefix.join(",")
                    )
                })
                .collect();
            let result = if file.is_some() {
                serde_json::to_value(&reports).expect("serializable")
            } else {
                serde_json::to_value(&reports[0]).expect("serializable")
            };
            Ok(Output {
                command: "defect",
                input: batch_input(word, file),
                result,
                plain: plain.join("\n"),
                exit_code: 0,
            })
        }
        Command::Rich { word, file } => {
            let words = gather_words(word, file)?;
            let defects: Vec<u64> = words.iter().map(|w| palindrome::defect(w).defect).collect();
            let all_rich = defects.iter().all(|&d| d == 0);
            let (plain, result) = if file.is_some() {
                let lines: Vec<String> = words
                    .iter()
                    .zip(&defects)
                    .map(|(w, d)| format!("word={w} defect={d} rich={}", *d == 0))
                    .collect();
                let rows: Vec<Value> = words
                    .iter()
                    .zip(&defects)
                    .map(|(w, d)| json!({ "word": w.to_string(), "defect": d, "rich": *d == 0 }))
                    .collect();
                (lines.join("\n"), json!(rows))
            } else {
                let d = defects[0];
                (
                    format!("defect={d} rich={}", d == 0),
                    json!({ "defect": d, "rich": d == 0 }),
                )
            };
            Ok(Output {
                command: "rich",
                input: batch_input(word, file),
                result,
                plain,
                exit_code: i32::from(!all_rich),
            })
        }
        Command::Lps { word } => {
            let w = parse_word(word)?;
            let lps = palindrome::lps(&w)?;
            Ok(Output {
                command: "lps",
                input: json!({ "word": word }),
                result: json!({ "lps": lps.to_string() }),
                plain: lps.to_string(),
                exit_code: 0,
            })
        }
        Command::Lpp { word } => {
            let w = parse_word(word)?;
            let lpp = palindrome::lpp(&w)?;
            Ok(Output {
                command: "lpp",
                input: json!({ "word": word }),
                result: json!({ "lpp": lpp.to_string() }),
                plain: lpp.to_string(),
                exit_code: 0,
            })
        }
        Command::Returns { word, factor } => {
            let w = parse_word(word)?;
            let f = parse_word(factor)?;
            let mut returns: Vec<Word> = w.complete_return_words(&f)?.into_iter().collect();
            sort_len_lex(&mut returns);
            let strings: Vec<String> = returns.iter().map(Word::to_string).collect();
            Ok(Output {
                command: "returns",
                input: json!({ "word": word, "factor": factor }),
                result: json!(strings),
                plain: strings.join("\n"),
                exit_code: 0,
            })
        }
        Command::Ups { word } => {
            let w = parse_word(word)?;
            let parts = palindrome::ups_factorization(&w)?;
            let strings: Vec<String> = parts.iter().map(Word::to_string).collect();
            Ok(Output {
                command: "ups",
                input: json!({ "word": word }),
                result: json!(strings),
                plain: strings.join(" "),
                exit_code: 0,
            })
        }
        Command::Compat {
            u,
            v,
            max_len,
            alphabet,
        } => {
            let uw = parse_word(u)?;
            let vw = parse_word(v)?;
            let verdict = match alphabet {
                Some(letters) => {
                    let alpha = crate::word::Alphabet::new(letters.chars())?;
                    richness::compat_search_with_alphabet(&uw, &vw, *max_len, &alpha)?
                }
                None => richness::compat_search(&uw, &vw, *max_len)?,
            };
            let mut plain = format!("status={}", verdict.status.as_str());
            if let Some(witness) = &verdict.witness {
                plain.push_str(&format!(" witness={witness}"));
            }
            plain.push_str(&format!(" bound={}", verdict.bound));
            Ok(Output {
                command: "compat",
                input: json!({ "u": u, "v": v, "max_len": max_len, "alphabet": alphabet }),
                result: serde_json::to_value(&verdict).expect("serializable"),
                plain,
                exit_code: 0,
            })
        }
        Command::Witness { word } => {
            let w = parse_word(word)?;
            let witness = richness::extract_e2_witness(&w)?;
            Ok(Output {
                command: "witness",
                input: json!({ "word": word }),
                result: serde_json::to_value(&witness).expect("serializable"),
                plain: format!(
                    "u={} v={} r={} p={} q={} z={}",
                    witness.u, witness.v, witness.r, witness.p, witness.q, witness.z
                ),
                exit_code: 0,
            })
        }
        Command::BinaryWitness { word } => {
            let w = parse_word(word)?;
            let witness = richness::binary_nonrich_witness(&w)?;
            let (plain, exit_code) = match &witness {
                Some(q) => (format!("q={q}"), 0),
                None => ("absent".to_string(), 1),
            };
            Ok(Output {
                command: "binary-witness",
                input: json!({ "word": word }),
                result: json!({ "q": witness.map(|q| q.to_string()) }),
                plain,
                exit_code,
            })
        }
        Command::CountRich {
            d,
            n,
            list,
            reduced,
        } => {
            if *list {
                let words = enumeration::enumerate_rich(*d, *n, *reduced)?;
                let strings: Vec<String> = words.iter().map(Word::to_string).collect();
                Ok(Output {
                    command: "count-rich",
                    input: json!({ "d": d, "n": n, "list": true, "reduced": reduced }),
                    result: json!(strings),
                    plain: strings.join("\n"),
                    exit_code: 0,
                })
            } else {
                let table = enumeration::count_rich(*d, *n)?;
                let plain: Vec<String> = table
                    .rows
                    .iter()
                    .map(|r| format!("{}\t{}\t{}", r.n, r.count, r.millis))
                    .collect();
                Ok(Output {
                    command: "count-rich",
                    input: json!({ "d": d, "n": n, "list": false, "reduced": reduced }),
                    result: serde_json::to_value(&table).expect("serializable"),
                    plain: plain.join("\n"),
                    exit_code: 0,
                })
            }
        }
        Command::Gss {
            n_seq,
            m_seq,
            count,
        } => {
            if let Some(n) = count {
                let family_count = enumeration::gss_count(*n);
                Ok(Output {
                    command: "gss",
                    input: json!({ "count": n }),
                    result: json!({ "n": n, "count": family_count }),
                    plain: family_count.to_string(),
                    exit_code: 0,
                })
            } else {
                if n_seq.is_empty() && m_seq.is_empty() {
                    return Err(Error::Parse(
                        "provide --n-seq and --m-seq, or --count <n>".into(),
                    ));
                }
                let spec = GssSpec::new(n_seq.clone(), m_seq.clone())?;
                let word = enumeration::gss_word(&spec);
                let rich = palindrome::is_rich(&word);
                Ok(Output {
                    command: "gss",
                    input: json!({ "n_seq": n_seq, "m_seq": m_seq }),
                    result: json!({
                        "word": word.to_string(),
                        "length": word.len(),
                        "rich": rich,
                        "chained_run_lengths": spec.has_nondecreasing_run_lengths(),
                    }),
                    plain: format!("word={word} rich={rich}"),
                    exit_code: 0,
                })
            }
        }
        Command::MinimalNonrich { d, n } => {
            let words = richness::minimal_nonrich(*d, *n)?;
            let strings: Vec<String> = words.iter().map(Word::to_string).collect();
            Ok(Output {
                command: "minimal-nonrich",
                input: json!({ "d": d, "n": n }),
                result: json!(strings),
                plain: strings.join("\n"),
                exit_code: 0,
            })
        }
        Command::BrSum { period, k_max } => {
            let p = parse_word(period)?;
            let k = k_max.unwrap_or(4 * p.len() + 8);
            let report = richness::brlek_reutenauer_sum(&p, k)?;
            let mut lines = Vec::with_capacity(report.partial_sums.len() + 1);
            let mut prev = 0i64;
            for (n, &sum) in report.partial_sums.iter().enumerate() {
                lines.push(format!("{n}\t{}\t{sum}", sum - prev));
                prev = sum;
            }
            lines.push(format!(
                "defect_estimate={} saturated={}",
                report.defect_estimate, report.saturated
            ));
            Ok(Output {
                command: "br-sum",
                input: json!({ "period": period, "k_max": k }),
                result: serde_json::to_value(&report).expect("serializable"),
                plain: lines.join("\n"),
                exit_code: 0,
            })
        }
        Command::Gap { word, n } => {
            let w = parse_word(word)?;
            let gap = richness::complexity_identity_gap(&w, *n)?;
            Ok(Output {
                command: "gap",
                input: json!({ "word": word, "n": n }),
                result: json!({ "n": n, "gap": gap }),
                plain: gap.to_string(),
                exit_code: 0,
            })
        }
        Command::Morph { spec, action } => execute_morph(spec, action),
        Command::Table1 { word } => {
            let w = parse_word(word)?;
            let rows = richness::rich_factors_table(&w);
            let plain: Vec<String> = rows
                .iter()
                .map(|(u, lpp, lps)| format!("{u}\t{lpp}\t{lps}"))
                .collect();
            let result: Vec<Value> = rows
                .iter()
                .map(|(u, lpp, lps)| {
                    json!({
                        "u": u.to_string(),
                        "lpp": lpp.to_string(),
                        "lps": lps.to_string(),
                    })
                })
                .collect();
            Ok(Output {
                command: "table1",
                input: json!({ "word": word }),
                result: json!(result),
                plain: plain.join("\n"),
                exit_code: 0,
            })
        }
    }
}

fn default_seed(m: &Morphism, seed: &Option<char>) -> char {
    seed.unwrap_or_else(|| m.source().letter(0))
}

fn execute_morph(spec: &str, action: &MorphAction) -> Result<Output> {
    let m: Morphism = spec.parse()?;
    match action {
        MorphAction::Analyze => {
            let endo = m.is_endomorphism();
            let primitive = if endo { Some(m.is_primitive()?) } else { None };
            let stationary = if m.source().size() >= 2 {
                Some(m.is_stationary()?)
            } else {
                None
            };
            let conjugates = if endo { Some(m.conjugates()?) } else { None };
            let marked = if endo { m.marked_pair()? } else { None };
            let class_p = m.class_p_certificate();
            let class_p_prime = if endo {
                m.class_p_prime_certificate()?
            } else {
                None
            };

            let mut plain = vec![format!("morphism={m}"), format!("endomorphism={endo}")];
            if let Some(p) = primitive {
                plain.push(format!("primitive={p}"));
            }
            if let Some(s) = stationary {
                plain.push(format!("stationary={s}"));
            }
            if let Some(list) = &conjugates {
                for (psi, cert) in list {
                    plain.push(format!(
                        "conjugate={psi} w={} direction={}",
                        cert.word,
                        match cert.direction {
                            crate::morphism::Direction::Right => "right",
                            crate::morphism::Direction::Left => "left",
                        }
                    ));
                }
            }
            match &marked {
                Some(pair) => {
                    plain.push(format!("marked=true phi1={} phi2={}", pair.phi1, pair.phi2))
                }
                None if endo => plain.push("marked=false".into()),
                None => {}
            }
            match &class_p {
                Some(cert) => {
                    let parts: Vec<String> = cert
                        .parts
                        .iter()
                        .map(|(c, p)| format!("p_{c}={p}"))
                        .collect();
                    plain.push(format!(
                        "class_p=true p={} {}",
                        cert.common,
                        parts.join(" ")
                    ));
                }
                None => plain.push("class_p=false".into()),
            }
            match &class_p_prime {
                Some(cert) => plain.push(format!(
                    "class_p_prime=true via={} w={} p={}",
                    cert.morphism, cert.conjugator.word, cert.class_p.common
                )),
                None if endo => plain.push("class_p_prime=false".into()),
                None => {}
            }

            let result = json!({
                "morphism": m.to_string(),
                "endomorphism": endo,
                "primitive": primitive,
                "stationary": stationary,
                "conjugates": conjugates.map(|list| {
                    list.iter()
                        .map(|(psi, cert)| {
                            json!({
                                "morphism": psi.to_string(),
                                "certificate": serde_json::to_value(cert).expect("serializable"),
                            })
                        })
                        .collect::<Vec<_>>()
                }),
                "marked": marked.map(|p| serde_json::to_value(&p).expect("serializable")),
                "class_p": class_p.map(|c| serde_json::to_value(&c).expect("serializable")),
                "class_p_prime": class_p_prime
                    .map(|c| serde_json::to_value(&c).expect("serializable")),
            });
            Ok(Output {
                command: "morph analyze",
                input: json!({ "spec": spec }),
                result,
                plain: plain.join("\n"),
                exit_code: 0,
            })
        }
        MorphAction::Fixpoint { seed, min_len } => {
            let seed = default_seed(&m, seed);
            let prefix = m.fixed_point_prefix(seed, *min_len)?;
            Ok(Output {
                command: "morph fixpoint",
                input: json!({ "spec": spec, "seed": seed.to_string(), "min_len": min_len }),
                result: json!({ "prefix": prefix.to_string(), "length": prefix.len() }),
                plain: prefix.to_string(),
                exit_code: 0,
            })
        }
        MorphAction::DefectProfile {
            seed,
            max_len,
            checkpoints,
        } => {
            let seed = default_seed(&m, seed);
            if m.is_endomorphism() && !m.is_primitive()? {
                eprintln!(
                    "warning: {m} is not primitive; prefix defects may not reflect the fixed point"
                );
            }
            let profile = m.defect_profile(seed, *max_len, *checkpoints)?;
            let mut lines: Vec<String> = profile
                .checkpoints
                .iter()
                .map(|(len, d)| format!("{len}\t{d}"))
                .collect();
            lines.push(format!("verdict={}", profile.verdict.as_str()));
            Ok(Output {
                command: "morph defect-profile",
                input: json!({
                    "spec": spec,
                    "seed": seed.to_string(),
                    "max_len": max_len,
                    "checkpoints": checkpoints,
                }),
                result: serde_json::to_value(&profile).expect("serializable"),
                plain: lines.join("\n"),
                exit_code: 0,
            })
        }
        MorphAction::ReversalProbe {
            seed,
            factor_len,
            prefix_len,
        } => {
            let seed = default_seed(&m, seed);
            let prefix_len = prefix_len.unwrap_or(32 * factor_len);
            let probe = m.reversal_closure_probe(seed, *factor_len, prefix_len)?;
            Ok(Output {
                command: "morph reversal-probe",
                input: json!({
                    "spec": spec,
                    "seed": seed.to_string(),
                    "factor_len": factor_len,
                    "prefix_len": prefix_len,
                }),
                result: serde_json::to_value(&probe).expect("serializable"),
                plain: format!(
                    "closed={} palindromes={} factor_len={} prefix_len={}",
                    probe.closed, probe.palindrome_count, probe.factor_len, probe.prefix_len
                ),
                exit_code: 0,
            })
        }
    }
}
