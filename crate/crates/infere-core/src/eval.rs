//! Dataset and candidate IO, the DFA-EQ@m and EM metrics, and reports.
//!
//! Datasets follow the two-parallel-files convention: one line-aligned text
//! file of natural-language queries and one of gold regexes. Model outputs
//! arrive as a line-delimited candidate file, one JSON object per line:
//!
//! ```text
//! {"id":0,"query":"...","candidates":[{"source":"chain","text":"step1=<num>"}]}
//! ```
//!
//! Reports carry DFA-EQ@m and EM accuracies plus per-example verdicts, and
//! render both as JSON (4 fraction digits, byte-stable) and as a plain-text
//! table with the usual column layout.

use crate::dfa::equivalent_with_cap;
use crate::dsl::{parse_plain, render_plain, ParseError, RegexAst};
use crate::vote::{normalize_candidate, vote_with_cap, Candidate, Source, VoteError};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::BufRead;
use std::path::Path;
use thiserror::Error;

/// One dataset example: a query and its gold regex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetRecord {
    /// 0-based line index.
    pub id: usize,
    pub query: String,
    /// Plain regex text; guaranteed to parse when loaded from files.
    pub gold: String,
}

/// The ordered model outputs for one example.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    pub id: usize,
    pub candidates: Vec<Candidate>,
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("line count mismatch: {queries} queries vs {regexes} regexes")]
    LineCountMismatch { queries: usize, regexes: usize },
    #[error("line {line}: gold regex does not parse: {source}")]
    UnparseableGold { line: usize, source: ParseError },
    #[error("line {line}: malformed candidate record: {message}")]
    MalformedRecord { line: usize, message: String },
    #[error("line {line}: duplicate id {id}")]
    DuplicateId { id: usize, line: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Reads the two parallel dataset files. Lines are trimmed; line `i` of
/// each file forms record `i`.
pub fn load_dataset(
    queries_path: impl AsRef<Path>,
    regexes_path: impl AsRef<Path>,
) -> Result<Vec<DatasetRecord>, EvalError> {
    let queries = read_lines(queries_path.as_ref())?;
    let regexes = read_lines(regexes_path.as_ref())?;
    if queries.len() != regexes.len() {
        return Err(EvalError::LineCountMismatch {
            queries: queries.len(),
            regexes: regexes.len(),
        });
    }
    let mut records = Vec::with_capacity(queries.len());
    for (id, (query, gold)) in queries.into_iter().zip(regexes).enumerate() {
        parse_plain(&gold).map_err(|source| EvalError::UnparseableGold {
            line: id + 1,
            source,
        })?;
        records.push(DatasetRecord { id, query, gold });
    }
    Ok(records)
}

/// Writes the two parallel dataset files; the exact inverse of
/// [`load_dataset`] for single-line queries and golds.
pub fn write_dataset(
    queries_path: impl AsRef<Path>,
    regexes_path: impl AsRef<Path>,
    records: &[DatasetRecord],
) -> Result<(), EvalError> {
    let mut queries = String::new();
    let mut regexes = String::new();
    for record in records {
        queries.push_str(&record.query);
        queries.push('\n');
        regexes.push_str(&record.gold);
        regexes.push('\n');
    }
    std::fs::write(queries_path, queries)?;
    std::fs::write(regexes_path, regexes)?;
    Ok(())
}

fn read_lines(path: &Path) -> Result<Vec<String>, EvalError> {
    let file = std::fs::File::open(path)?;
    let reader = std::io::BufReader::new(file);
    let mut lines = Vec::new();
    for line in reader.lines() {
        lines.push(line?.trim().to_owned());
    }
    Ok(lines)
}

#[derive(Serialize, Deserialize)]
struct RawCandidate {
    source: Source,
    text: String,
}

#[derive(Serialize, Deserialize)]
struct RawRecord {
    id: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    query: Option<String>,
    candidates: Vec<RawCandidate>,
}

/// Reads a line-delimited candidate file. Candidate order within a record
/// is preserved as vote order; ids must be unique.
pub fn load_candidates(path: impl AsRef<Path>) -> Result<Vec<CandidateSet>, EvalError> {
    let file = std::fs::File::open(path.as_ref())?;
    let reader = std::io::BufReader::new(file);
    let mut sets: Vec<CandidateSet> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (index, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawRecord =
            serde_json::from_str(&line).map_err(|e| EvalError::MalformedRecord {
                line: index + 1,
                message: e.to_string(),
            })?;
        if !seen.insert(raw.id) {
            return Err(EvalError::DuplicateId {
                id: raw.id,
                line: index + 1,
            });
        }
        let candidates = raw
            .candidates
            .into_iter()
            .enumerate()
            .map(|(order, c)| Candidate {
                source: c.source,
                text: c.text,
                order,
            })
            .collect();
        sets.push(CandidateSet {
            id: raw.id,
            candidates,
        });
    }
    Ok(sets)
}

/// Writes a candidate file; inverse of [`load_candidates`].
pub fn write_candidates(
    path: impl AsRef<Path>,
    sets: &[CandidateSet],
    queries: Option<&[String]>,
) -> Result<(), EvalError> {
    let mut out = String::new();
    for (i, set) in sets.iter().enumerate() {
        let raw = RawRecord {
            id: set.id,
            query: queries.map(|qs| qs[i].clone()),
            candidates: set
                .candidates
                .iter()
                .map(|c| RawCandidate {
                    source: c.source,
                    text: c.text.clone(),
                })
                .collect(),
        };
        out.push_str(&serde_json::to_string(&raw).expect("serializable record"));
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// True iff one of the first `m` ranked regexes is DFA-equivalent to gold.
pub fn dfa_eq_at_m(gold: &RegexAst, ranked: &[RegexAst], m: usize) -> bool {
    ranked
        .iter()
        .take(m)
        .any(|candidate| equivalent_with_cap(gold, candidate, crate::dfa::DEFAULT_UNROLL_CAP).unwrap_or(false))
}

/// Exact textual match after removing all whitespace.
pub fn exact_match(gold_text: &str, candidate_text: &str) -> bool {
    let strip = |s: &str| -> String { s.chars().filter(|c| !c.is_whitespace()).collect() };
    strip(gold_text) == strip(candidate_text)
}

/// How candidate lists are scored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    /// Vote, then score the top-voted classes.
    SelfConsistency,
    /// Treat the candidate list as beam-ranked output.
    Ranked,
}

impl EvalMode {
    pub fn name(self) -> &'static str {
        match self {
            EvalMode::SelfConsistency => "self_consistency",
            EvalMode::Ranked => "ranked",
        }
    }
}

/// Evaluation knobs.
#[derive(Debug, Clone)]
pub struct EvalConfig {
    /// The `m` values of DFA-EQ@m.
    pub m_values: Vec<usize>,
    pub mode: EvalMode,
    /// Repetition-unrolling cap for every compilation.
    pub unroll_cap: u32,
    /// Keep at most this many candidates per source, in order.
    pub k_cap: Option<usize>,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            m_values: vec![1, 5],
            mode: EvalMode::SelfConsistency,
            unroll_cap: crate::dfa::DEFAULT_UNROLL_CAP,
            k_cap: None,
        }
    }
}

/// Per-example verdicts.
#[derive(Debug, Clone, PartialEq)]
pub struct PerExample {
    pub id: usize,
    /// m → verdict, ascending in m.
    pub dfa_eq: BTreeMap<usize, bool>,
    pub em: bool,
    /// Canonical plain rendering of the winner / top candidate, if any.
    pub winner: Option<String>,
}

/// Aggregated evaluation results.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub n: usize,
    /// m → accuracy in [0,1], ascending in m.
    pub dfa_eq_at: BTreeMap<usize, f64>,
    pub em: f64,
    pub invalid_candidates: usize,
    pub per_example: Vec<PerExample>,
}

/// Scores every record against its candidate set. Records without a
/// candidate set score false on every metric; the report is deterministic
/// in the inputs.
pub fn evaluate(
    records: &[DatasetRecord],
    candidate_sets: &[CandidateSet],
    config: &EvalConfig,
) -> EvalReport {
    let by_id: std::collections::HashMap<usize, &CandidateSet> =
        candidate_sets.iter().map(|set| (set.id, set)).collect();
    let mut per_example = Vec::with_capacity(records.len());
    let mut invalid_candidates = 0usize;

    for record in records {
        let gold = parse_plain(&record.gold).ok();
        let candidates = by_id
            .get(&record.id)
            .map(|set| truncate_per_source(&set.candidates, config.k_cap))
            .unwrap_or_default();

        let (ranked, em, winner, invalid) = match (gold.as_ref(), config.mode) {
            (None, _) => (Vec::new(), false, None, 0),
            (Some(gold), EvalMode::SelfConsistency) => {
                score_self_consistency(gold, &candidates, config)
            }
            (Some(gold), EvalMode::Ranked) => score_ranked(gold, &candidates, config),
        };
        invalid_candidates += invalid;

        let mut dfa_eq = BTreeMap::new();
        for &m in &config.m_values {
            dfa_eq.insert(m, ranked.iter().take(m).any(|hit| *hit));
        }
        per_example.push(PerExample {
            id: record.id,
            dfa_eq,
            em,
            winner,
        });
    }

    let n = records.len();
    let ratio = |count: usize| if n == 0 { 0.0 } else { count as f64 / n as f64 };
    let mut dfa_eq_at = BTreeMap::new();
    for &m in &config.m_values {
        let hits = per_example.iter().filter(|p| p.dfa_eq[&m]).count();
        dfa_eq_at.insert(m, ratio(hits));
    }
    let em_hits = per_example.iter().filter(|p| p.em).count();
    EvalReport {
        n,
        dfa_eq_at,
        em: ratio(em_hits),
        invalid_candidates,
        per_example,
    }
}

/// Per-rank hit flags plus EM verdict, winner text and invalid count.
type RecordScore = (Vec<bool>, bool, Option<String>, usize);

fn score_self_consistency(
    gold: &RegexAst,
    candidates: &[Candidate],
    config: &EvalConfig,
) -> RecordScore {
    match vote_with_cap(candidates, config.unroll_cap) {
        Ok(outcome) => {
            let ranked: Vec<bool> = outcome
                .ranked_classes()
                .iter()
                .map(|class| equivalent_with_cap(gold, class, config.unroll_cap).unwrap_or(false))
                .collect();
            let winner_text = render_plain(&outcome.winner);
            let em = exact_match(&gold_text(gold), &winner_text);
            (ranked, em, Some(winner_text), outcome.invalid_count)
        }
        Err(VoteError::NoValidCandidates { invalid_count }) => {
            (Vec::new(), false, None, invalid_count)
        }
    }
}

fn score_ranked(gold: &RegexAst, candidates: &[Candidate], config: &EvalConfig) -> RecordScore {
    let mut invalid = 0usize;
    let normalized: Vec<Option<RegexAst>> = candidates
        .iter()
        .map(|c| match normalize_candidate(c) {
            Ok(ast) => Some(ast),
            Err(_) => {
                invalid += 1;
                None
            }
        })
        .collect();
    // invalid candidates keep their rank slot and can never match
    let ranked: Vec<bool> = normalized
        .iter()
        .map(|slot| match slot {
            Some(ast) => equivalent_with_cap(gold, ast, config.unroll_cap).unwrap_or(false),
            None => false,
        })
        .collect();
    let winner = normalized
        .first()
        .and_then(|slot| slot.as_ref())
        .map(render_plain);
    let em = winner
        .as_deref()
        .map(|text| exact_match(&gold_text(gold), text))
        .unwrap_or(false);
    (ranked, em, winner, invalid)
}

fn gold_text(gold: &RegexAst) -> String {
    render_plain(gold)
}

fn truncate_per_source(candidates: &[Candidate], k_cap: Option<usize>) -> Vec<Candidate> {
    let Some(cap) = k_cap else {
        return candidates.to_vec();
    };
    let mut kept = Vec::new();
    let mut counts: BTreeMap<&'static str, usize> = BTreeMap::new();
    for candidate in candidates {
        let count = counts.entry(candidate.source.name()).or_insert(0);
        if *count < cap {
            *count += 1;
            kept.push(candidate.clone());
        }
    }
    for (order, candidate) in kept.iter_mut().enumerate() {
        candidate.order = order;
    }
    kept
}

impl EvalReport {
    /// Stable JSON rendering with accuracies as 4-fraction-digit decimals.
    pub fn to_json(&self, include_per_example: bool) -> String {
        let mut out = String::from("{");
        out.push_str(&format!("\"n\":{},", self.n));
        out.push_str("\"dfa_eq_at\":{");
        let mut first = true;
        for (m, acc) in &self.dfa_eq_at {
            if !first {
                out.push(',');
            }
            first = false;
            out.push_str(&format!("\"{m}\":{acc:.4}"));
        }
        out.push_str("},");
        out.push_str(&format!("\"em\":{:.4},", self.em));
        out.push_str(&format!(
            "\"invalid_candidates\":{}",
            self.invalid_candidates
        ));
        if include_per_example {
            out.push_str(",\"per_example\":[");
            for (i, p) in self.per_example.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&format!("{{\"id\":{},\"dfa_eq\":{{", p.id));
                let mut first = true;
                for (m, verdict) in &p.dfa_eq {
                    if !first {
                        out.push(',');
                    }
                    first = false;
                    out.push_str(&format!("\"{m}\":{verdict}"));
                }
                out.push_str(&format!("}},\"em\":{},\"winner\":", p.em));
                match &p.winner {
                    Some(text) => out.push_str(&format!("\"{}\"", json_escape(text))),
                    None => out.push_str("null"),
                }
                out.push('}');
            }
            out.push(']');
        }
        out.push_str("}\n");
        out
    }

    /// A plain-text table in the usual DFA-EQ@m / EM column layout.
    pub fn to_table(&self) -> String {
        let mut headers: Vec<String> = self
            .dfa_eq_at
            .keys()
            .map(|m| format!("DFA-EQ@{m}(%)"))
            .collect();
        headers.push("EM(%)".into());
        let mut values: Vec<String> = self
            .dfa_eq_at
            .values()
            .map(|acc| format!("{:.1}", acc * 100.0))
            .collect();
        values.push(format!("{:.1}", self.em * 100.0));

        let widths: Vec<usize> = headers
            .iter()
            .zip(&values)
            .map(|(h, v)| h.len().max(v.len()))
            .collect();
        let row = |cells: &[String]| -> String {
            let mut line = String::new();
            for (i, (cell, width)) in cells.iter().zip(&widths).enumerate() {
                if i + 1 == cells.len() {
                    line.push_str(cell);
                } else {
                    line.push_str(&format!("{cell:<width$}  "));
                }
            }
            line.push('\n');
            line
        };
        let mut out = row(&headers);
        out.push_str(&row(&values));
        out.push_str(&format!(
            "n={}  invalid_candidates={}\n",
            self.n, self.invalid_candidates
        ));
        out
    }
}

fn json_escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    fn temp_path(name: &str) -> PathBuf {
        let mut path = std::env::temp_dir();
        path.push(format!("infere-core-test-{}-{name}", std::process::id()));
        path
    }

    fn write(path: &Path, content: &str) {
        std::fs::write(path, content).unwrap();
    }

    #[test]
    fn loads_parallel_files() {
        let q = temp_path("queries.txt");
        let r = temp_path("regexes.txt");
        write(&q, "lines with a digit\nlines with a vowel\n");
        write(&r, "(.*)([0-9])\n  ([AEIOUaeiou])(.*)  \n");
        let records = load_dataset(&q, &r).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].id, 0);
        assert_eq!(records[1].gold, "([AEIOUaeiou])(.*)");
        std::fs::remove_file(q).ok();
        std::fs::remove_file(r).ok();
    }

    #[test]
    fn loads_test_split_sized_files() {
        let q = temp_path("q2500.txt");
        let r = temp_path("r2500.txt");
        std::fs::write(&q, "a query\n".repeat(2_500)).unwrap();
        std::fs::write(&r, "[0-9]\n".repeat(2_500)).unwrap();
        let records = load_dataset(&q, &r).unwrap();
        assert_eq!(records.len(), 2_500);
        assert_eq!(records[2_499].id, 2_499);
        std::fs::remove_file(q).ok();
        std::fs::remove_file(r).ok();
    }

    #[test]
    fn mismatched_line_counts_error() {
        let q = temp_path("q2.txt");
        let r = temp_path("r2.txt");
        write(&q, "one\ntwo\n");
        write(&r, "[0-9]\n");
        assert!(matches!(
            load_dataset(&q, &r),
            Err(EvalError::LineCountMismatch {
                queries: 2,
                regexes: 1
            })
        ));
        std::fs::remove_file(q).ok();
        std::fs::remove_file(r).ok();
    }

    #[test]
    fn unparseable_gold_reports_line() {
        let q = temp_path("q3.txt");
        let r = temp_path("r3.txt");
        write(&q, "one\ntwo\n");
        write(&r, "[0-9]\n[not-a-class]\n");
        assert!(matches!(
            load_dataset(&q, &r),
            Err(EvalError::UnparseableGold { line: 2, .. })
        ));
        std::fs::remove_file(q).ok();
        std::fs::remove_file(r).ok();
    }

    #[test]
    fn candidate_file_round_trip() {
        let path = temp_path("cands.jsonl");
        let sets = vec![
            CandidateSet {
                id: 0,
                candidates: vec![
                    Candidate {
                        source: Source::Chain,
                        text: "step1=<num>".into(),
                        order: 0,
                    },
                    Candidate {
                        source: Source::Plain,
                        text: "[0-9]".into(),
                        order: 1,
                    },
                ],
            },
            CandidateSet {
                id: 1,
                candidates: vec![Candidate {
                    source: Source::Tree,
                    text: "star(<low>)".into(),
                    order: 0,
                }],
            },
        ];
        write_candidates(&path, &sets, None).unwrap();
        let loaded = load_candidates(&path).unwrap();
        assert_eq!(loaded, sets);
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn duplicate_ids_and_malformed_lines_error() {
        let path = temp_path("dup.jsonl");
        write(
            &path,
            "{\"id\":0,\"candidates\":[]}\n{\"id\":0,\"candidates\":[]}\n",
        );
        assert!(matches!(
            load_candidates(&path),
            Err(EvalError::DuplicateId { id: 0, line: 2 })
        ));
        write(&path, "{\"id\":0,\"candidates\":[]}\nnot json\n");
        assert!(matches!(
            load_candidates(&path),
            Err(EvalError::MalformedRecord { line: 2, .. })
        ));
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn dfa_eq_at_m_is_positional() {
        let gold = parse_plain("[0-9]").unwrap();
        let ranked = vec![
            parse_plain("[a-z]").unwrap(),
            parse_plain("[A-Z]").unwrap(),
            parse_plain("[0-9]").unwrap(),
        ];
        assert!(!dfa_eq_at_m(&gold, &ranked, 1));
        assert!(!dfa_eq_at_m(&gold, &ranked, 2));
        assert!(dfa_eq_at_m(&gold, &ranked, 3));
        assert!(dfa_eq_at_m(&gold, &ranked, 5));
        assert!(!dfa_eq_at_m(&gold, &[], 5));

        // a rank-1 candidate that reproduces the gold string hits at m=1
        let gold = parse_plain("(<m0>)(((.*)([A-Z]))*)").unwrap();
        let top = parse_plain("(<m0>)(((.*)([A-Z]))*)").unwrap();
        assert!(dfa_eq_at_m(&gold, &[top], 1));
    }

    #[test]
    fn exact_match_strips_whitespace() {
        assert!(exact_match("([a-z])(<m0>)", "([a-z])(<m0>)"));
        assert!(exact_match("a b", "ab"));
        assert!(!exact_match(
            "((.*)([0-9]))|((<m0>)(.*))",
            "((<m0>)(.*))|((.*)([0-9]))"
        ));
    }

    fn plain_candidate(order: usize, text: &str) -> Candidate {
        Candidate {
            source: Source::Plain,
            text: text.into(),
            order,
        }
    }

    fn four_record_fixture() -> (Vec<DatasetRecord>, Vec<CandidateSet>) {
        let records = vec![
            DatasetRecord {
                id: 0,
                query: "q0".into(),
                gold: "([a-z])(<m0>)".into(),
            },
            DatasetRecord {
                id: 1,
                query: "q1".into(),
                gold: "([a-z])|([0-9])".into(),
            },
            DatasetRecord {
                id: 2,
                query: "q2".into(),
                gold: "[0-9]".into(),
            },
            DatasetRecord {
                id: 3,
                query: "q3".into(),
                gold: "([a-z])(.*)".into(),
            },
        ];
        let sets = vec![
            // winner == gold textually
            CandidateSet {
                id: 0,
                candidates: vec![
                    plain_candidate(0, "([a-z])(<m0>)"),
                    plain_candidate(1, "([a-z])(<m0>)"),
                    plain_candidate(2, "[0-9]"),
                ],
            },
            // winner equivalent to gold but surface-different
            CandidateSet {
                id: 1,
                candidates: vec![
                    plain_candidate(0, "([0-9])|([a-z])"),
                    plain_candidate(1, "([0-9])|([a-z])"),
                    plain_candidate(2, "[0-9]"),
                ],
            },
            // gold sits in a lower-voted class
            CandidateSet {
                id: 2,
                candidates: vec![
                    plain_candidate(0, "[a-z]"),
                    plain_candidate(1, "[a-z]"),
                    plain_candidate(2, "[0-9]"),
                ],
            },
            // nothing matches
            CandidateSet {
                id: 3,
                candidates: vec![plain_candidate(0, "[0-9]")],
            },
        ];
        (records, sets)
    }

    #[test]
    fn four_record_fixture_oracle() {
        let (records, sets) = four_record_fixture();
        let report = evaluate(&records, &sets, &EvalConfig::default());
        assert_eq!(report.n, 4);
        assert_eq!(report.dfa_eq_at[&1], 0.5);
        assert_eq!(report.dfa_eq_at[&5], 0.75);
        assert_eq!(report.em, 0.25);
        assert_eq!(report.invalid_candidates, 0);
        assert!(report.per_example[0].em);
        assert_eq!(
            report.per_example[0].winner.as_deref(),
            Some("([a-z])(<m0>)")
        );
        // byte-identical across runs
        let again = evaluate(&records, &sets, &EvalConfig::default());
        assert_eq!(report.to_json(true), again.to_json(true));
        assert!(report.to_json(true).contains("\"dfa_eq_at\":{\"1\":0.5000,\"5\":0.7500}"));
        assert!(report.to_json(true).contains("\"em\":0.2500"));
    }

    #[test]
    fn missing_candidate_sets_score_false() {
        let (records, _) = four_record_fixture();
        let report = evaluate(&records, &[], &EvalConfig::default());
        assert_eq!(report.n, 4);
        assert_eq!(report.dfa_eq_at[&1], 0.0);
        assert_eq!(report.dfa_eq_at[&5], 0.0);
        assert_eq!(report.em, 0.0);
        assert!(report.per_example.iter().all(|p| p.winner.is_none()));
    }

    #[test]
    fn gold_as_only_candidate_scores_ones() {
        let records = vec![DatasetRecord {
            id: 0,
            query: "q".into(),
            gold: "([a-z])(.*)".into(),
        }];
        let sets = vec![CandidateSet {
            id: 0,
            candidates: vec![plain_candidate(0, "([a-z])(.*)")],
        }];
        let report = evaluate(&records, &sets, &EvalConfig::default());
        assert_eq!(report.dfa_eq_at[&1], 1.0);
        assert_eq!(report.dfa_eq_at[&5], 1.0);
        assert_eq!(report.em, 1.0);
    }

    #[test]
    fn ranked_mode_respects_beam_order() {
        let records = vec![DatasetRecord {
            id: 0,
            query: "q".into(),
            gold: "[0-9]".into(),
        }];
        let sets = vec![CandidateSet {
            id: 0,
            candidates: vec![
                plain_candidate(0, "[a-z]"),
                plain_candidate(1, "((a)("),
                plain_candidate(2, "[0-9]"),
            ],
        }];
        let mut config = EvalConfig {
            mode: EvalMode::Ranked,
            ..EvalConfig::default()
        };
        let report = evaluate(&records, &sets, &config);
        // the invalid candidate consumes rank slot 2
        assert!(!report.per_example[0].dfa_eq[&1]);
        assert!(report.per_example[0].dfa_eq[&5]);
        assert_eq!(report.invalid_candidates, 1);
        assert!(!report.per_example[0].em);

        config.m_values = vec![1, 2];
        let report = evaluate(&records, &sets, &config);
        assert!(!report.per_example[0].dfa_eq[&2]);
    }

    #[test]
    fn record_order_does_not_change_aggregates() {
        let (mut records, sets) = four_record_fixture();
        let forward = evaluate(&records, &sets, &EvalConfig::default());
        records.reverse();
        let backward = evaluate(&records, &sets, &EvalConfig::default());
        assert_eq!(forward.dfa_eq_at, backward.dfa_eq_at);
        assert_eq!(forward.em, backward.em);
        assert_eq!(forward.invalid_candidates, backward.invalid_candidates);
        // per-example verdicts permute with the records
        let mut forward_ids: Vec<usize> = forward.per_example.iter().map(|p| p.id).collect();
        let mut backward_ids: Vec<usize> = backward.per_example.iter().map(|p| p.id).collect();
        forward_ids.sort_unstable();
        backward_ids.sort_unstable();
        assert_eq!(forward_ids, backward_ids);
    }

    #[test]
    fn k_cap_truncates_per_source() {
        let candidates = vec![
            Candidate { source: Source::Chain, text: "a".into(), order: 0 },
            Candidate { source: Source::Chain, text: "b".into(), order: 1 },
            Candidate { source: Source::Tree, text: "c".into(), order: 2 },
            Candidate { source: Source::Chain, text: "d".into(), order: 3 },
        ];
        let kept = truncate_per_source(&candidates, Some(2));
        let texts: Vec<&str> = kept.iter().map(|c| c.text.as_str()).collect();
        assert_eq!(texts, vec!["a", "b", "c"]);
        let orders: Vec<usize> = kept.iter().map(|c| c.order).collect();
        assert_eq!(orders, vec![0, 1, 2]);
    }

    #[test]
    fn report_table_layout() {
        let (records, sets) = four_record_fixture();
        let report = evaluate(&records, &sets, &EvalConfig::default());
        let table = report.to_table();
        let mut lines = table.lines();
        assert_eq!(lines.next().unwrap(), "DFA-EQ@1(%)  DFA-EQ@5(%)  EM(%)");
        assert_eq!(lines.next().unwrap(), "50.0         75.0         25.0");
        assert_eq!(lines.next().unwrap(), "n=4  invalid_candidates=0");
    }
}
