//! Self-consistency decoding: plurality voting over sampled candidates.
//!
//! Sampled model outputs arrive in three representations (inference chains,
//! parenthetical trees, plain regexes). Each is normalized to an AST,
//! candidates are grouped into DFA-equivalence classes, and the class with
//! the most votes wins. Ties go to the class encountered first.

use crate::chain::{parse_chain, revert, ChainError};
use crate::dfa::{compile_with_cap, derive_alphabet, equivalent_with_cap, DEFAULT_UNROLL_CAP};
use crate::dsl::{parse_functional, parse_plain, ParseError, RegexAst};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which model representation a candidate came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Chain,
    Tree,
    Plain,
}

impl Source {
    pub fn name(self) -> &'static str {
        match self {
            Source::Chain => "chain",
            Source::Tree => "tree",
            Source::Plain => "plain",
        }
    }
}

/// One raw model output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub source: Source,
    pub text: String,
    /// 0-based position in the concatenated sample list.
    pub order: usize,
}

/// Why a candidate was excluded from voting.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error("does not compile: {0}")]
    Compile(#[from] crate::dfa::CompileError),
}

/// The result of a plurality vote.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoteOutcome {
    /// Representative of the winning class: its earliest-ordered member.
    pub winner: RegexAst,
    pub winner_votes: usize,
    /// One entry per equivalence class, in order of first appearance:
    /// the class representative and its vote count.
    pub class_sizes: Vec<(RegexAst, usize)>,
    /// Candidates excluded for parse or compile failure.
    pub invalid_count: usize,
}

impl VoteOutcome {
    /// Class representatives ranked by (votes desc, first appearance asc);
    /// the first entry is the winner.
    pub fn ranked_classes(&self) -> Vec<&RegexAst> {
        let mut order: Vec<usize> = (0..self.class_sizes.len()).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(self.class_sizes[i].1), i));
        order.iter().map(|&i| &self.class_sizes[i].0).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VoteError {
    #[error("no valid candidates ({invalid_count} invalid)")]
    NoValidCandidates { invalid_count: usize },
}

/// Normalizes a raw candidate to an AST using the source-appropriate
/// parser; chain outputs are additionally reverted to trees.
pub fn normalize_candidate(candidate: &Candidate) -> Result<RegexAst, NormalizeError> {
    let ast = match candidate.source {
        Source::Chain => revert(&parse_chain(&candidate.text)?)?,
        Source::Tree => parse_functional(&candidate.text)?,
        Source::Plain => parse_plain(&candidate.text)?,
    };
    // surface a repetition-cap violation now so that voting never fails
    compile_with_cap(
        &ast,
        &derive_alphabet(&[&ast]),
        DEFAULT_UNROLL_CAP,
    )?;
    Ok(ast)
}

/// Plurality vote with the default unrolling cap.
pub fn vote(candidates: &[Candidate]) -> Result<VoteOutcome, VoteError> {
    vote_with_cap(candidates, DEFAULT_UNROLL_CAP)
}

/// Partitions valid candidates into DFA-equivalence classes and picks the
/// class with the most votes; among tied classes the one whose earliest
/// member has the smallest order wins.
pub fn vote_with_cap(candidates: &[Candidate], unroll_cap: u32) -> Result<VoteOutcome, VoteError> {
    let mut classes: Vec<(RegexAst, usize)> = Vec::new();
    let mut invalid_count = 0usize;
    for candidate in candidates {
        let ast = match normalize_candidate(candidate) {
            Ok(ast) => ast,
            Err(_) => {
                invalid_count += 1;
                continue;
            }
        };
        let class = classes.iter_mut().find(|(representative, _)| {
            // compile errors were ruled out during normalization
            equivalent_with_cap(representative, &ast, unroll_cap).unwrap_or(false)
        });
        match class {
            Some((_, votes)) => *votes += 1,
            None => classes.push((ast, 1)),
        }
    }
    if classes.is_empty() {
        return Err(VoteError::NoValidCandidates { invalid_count });
    }
    let best = classes
        .iter()
        .enumerate()
        .max_by_key(|(i, (_, votes))| (*votes, std::cmp::Reverse(*i)))
        .map(|(i, _)| i)
        .expect("nonempty classes");
    Ok(VoteOutcome {
        winner: classes[best].0.clone(),
        winner_votes: classes[best].1,
        class_sizes: classes,
        invalid_count,
    })
}

/// Self-consistency decoding over per-source sample lists: chain samples
/// take orders `0..`, tree samples follow, and the combined list is voted.
pub fn self_consistency_decode(
    chain_samples: &[String],
    tree_samples: &[String],
) -> Result<VoteOutcome, VoteError> {
    let candidates: Vec<Candidate> = chain_samples
        .iter()
        .map(|text| (Source::Chain, text))
        .chain(tree_samples.iter().map(|text| (Source::Tree, text)))
        .enumerate()
        .map(|(order, (source, text))| Candidate {
            source,
            text: text.clone(),
            order,
        })
        .collect();
    vote(&candidates)
}
