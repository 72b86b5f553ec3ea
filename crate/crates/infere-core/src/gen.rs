//! Seeded random ASTs, chains and synthetic datasets.
//!
//! Everything here is deterministic in the seed: fixture files and property
//! corpora are reproducible byte for byte.

use crate::chain::{decompose, render_chain};
use crate::dsl::{render_functional, render_plain, LeafKind, OperatorKind, RegexAst};
use crate::eval::{CandidateSet, DatasetRecord};
use crate::vote::{Candidate, Source};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Knobs for the random AST generator.
#[derive(Debug, Clone)]
pub struct GenConfig {
    /// Maximum tree depth; a lone leaf has depth 1.
    pub max_depth: usize,
    /// Leaf pool to draw from.
    pub leaves: Vec<LeafKind>,
    /// Upper bound for repetition counts.
    pub max_count: u32,
    /// Allow `startwith`/`endwith`/`contain` nodes.
    pub sugar: bool,
    /// Allow `not` nodes.
    pub complement: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_depth: 6,
            leaves: vec![
                LeafKind::Let,
                LeafKind::Cap,
                LeafKind::Low,
                LeafKind::Num,
                LeafKind::Any,
                LeafKind::Spec,
                LeafKind::Vow,
                LeafKind::Placeholder(0),
                LeafKind::Placeholder(1),
            ],
            max_count: 3,
            sugar: true,
            complement: true,
        }
    }
}

impl GenConfig {
    /// A small configuration for oracle tests: few minterms, shallow trees,
    /// tiny repetition counts.
    pub fn small() -> Self {
        GenConfig {
            max_depth: 4,
            leaves: vec![LeafKind::Low, LeafKind::Num, LeafKind::Placeholder(0)],
            max_count: 2,
            sugar: true,
            complement: true,
        }
    }
}

/// The deterministic RNG used throughout fixture generation.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Draws a random AST of depth at most `cfg.max_depth`.
pub fn random_ast<R: Rng>(rng: &mut R, cfg: &GenConfig) -> RegexAst {
    ast_at(rng, cfg, cfg.max_depth)
}

fn ast_at<R: Rng>(rng: &mut R, cfg: &GenConfig, budget: usize) -> RegexAst {
    let leaf = |rng: &mut R| {
        let i = rng.random_range(0..cfg.leaves.len());
        RegexAst::leaf(cfg.leaves[i])
    };
    if budget <= 1 || rng.random_range(0..100) < 30 {
        return leaf(rng);
    }
    let mut ops: Vec<OperatorKind> = vec![
        OperatorKind::Optional,
        OperatorKind::Star,
        OperatorKind::Concat,
        OperatorKind::And,
        OperatorKind::Or,
        OperatorKind::Rep,
        OperatorKind::RepeatLeast,
        OperatorKind::RepRange,
    ];
    if cfg.sugar {
        ops.extend([
            OperatorKind::StartWith,
            OperatorKind::EndWith,
            OperatorKind::Contain,
        ]);
    }
    if cfg.complement {
        ops.push(OperatorKind::Not);
    }
    let kind = ops[rng.random_range(0..ops.len())];
    let child = |rng: &mut R| ast_at(rng, cfg, budget - 1);
    match kind.arity() {
        2 => {
            let a = child(rng);
            let b = child(rng);
            RegexAst::op(kind, vec![a, b], vec![]).expect("binary arity")
        }
        _ => {
            let c = child(rng);
            match kind.numeric_params() {
                0 => RegexAst::op(kind, vec![c], vec![]).expect("unary arity"),
                1 => {
                    let k = rng.random_range(0..=cfg.max_count);
                    RegexAst::op(kind, vec![c], vec![k]).expect("unary arity")
                }
                _ => {
                    let k1 = rng.random_range(0..=cfg.max_count);
                    let k2 = rng.random_range(k1..=cfg.max_count);
                    RegexAst::op(kind, vec![c], vec![k1, k2]).expect("range arity")
                }
            }
        }
    }
}

/// A synthetic dataset plus matching model-output candidates.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub records: Vec<DatasetRecord>,
    pub candidate_sets: Vec<CandidateSet>,
}

/// Generates `count` records of random golds with plausible candidate
/// lists: a few gold-equivalent renderings in mixed representations, some
/// distractors, and occasional invalid outputs.
pub fn generate_fixture(seed: u64, count: usize, max_depth: usize) -> Fixture {
    let mut rng = seeded_rng(seed);
    let cfg = GenConfig {
        max_depth,
        leaves: vec![
            LeafKind::Let,
            LeafKind::Cap,
            LeafKind::Low,
            LeafKind::Num,
            LeafKind::Vow,
            LeafKind::Placeholder(0),
        ],
        max_count: 3,
        sugar: true,
        complement: false,
    };
    let mut records = Vec::with_capacity(count);
    let mut candidate_sets = Vec::with_capacity(count);
    for id in 0..count {
        let gold = random_ast(&mut rng, &cfg);
        let gold_text = render_plain(&gold);
        let query = format!("synthetic query {id}: lines matching {}", render_functional(&gold));

        let render_as = |rng: &mut ChaCha8Rng, ast: &RegexAst| -> (Source, String) {
            match rng.random_range(0..3) {
                0 => (Source::Chain, render_chain(&decompose(ast))),
                1 => (Source::Tree, render_functional(ast)),
                _ => (Source::Plain, render_plain(ast)),
            }
        };

        // good records let the gold class win; confused ones hand the
        // plurality to a distractor; missed ones drop the gold entirely
        let outcome = rng.random_range(0..100);
        let mut texts: Vec<(Source, String)> = Vec::new();
        if outcome < 60 {
            texts.push((Source::Chain, render_chain(&decompose(&gold))));
            texts.push((Source::Tree, render_functional(&gold)));
            if let Some(variant) = commuted(&gold) {
                if rng.random_range(0..100) < 50 {
                    texts.push(render_as(&mut rng, &variant));
                }
            }
            if rng.random_range(0..100) < 40 {
                texts.push((Source::Plain, gold_text.clone()));
            }
        } else if outcome < 85 {
            let wrong = random_ast(&mut rng, &cfg);
            texts.push((Source::Chain, render_chain(&decompose(&wrong))));
            texts.push((Source::Tree, render_functional(&wrong)));
            texts.push((Source::Plain, render_plain(&wrong)));
            texts.push(render_as(&mut rng, &gold));
            if rng.random_range(0..100) < 40 {
                texts.push(render_as(&mut rng, &gold));
            }
        }
        let distractors = rng.random_range(1..=3);
        for _ in 0..distractors {
            let other = random_ast(&mut rng, &cfg);
            texts.push(render_as(&mut rng, &other));
        }
        if rng.random_range(0..100) < 25 {
            texts.push((Source::Chain, "step1=and(step2,step3)".into()));
        }
        if rng.random_range(0..100) < 25 {
            let mut broken = render_functional(&gold);
            broken.pop();
            texts.push((Source::Tree, broken));
        }
        shuffle(&mut rng, &mut texts);

        let candidates = texts
            .into_iter()
            .enumerate()
            .map(|(order, (source, text))| Candidate {
                source,
                text,
                order,
            })
            .collect();
        records.push(DatasetRecord {
            id,
            query,
            gold: gold_text,
        });
        candidate_sets.push(CandidateSet { id, candidates });
    }
    Fixture {
        records,
        candidate_sets,
    }
}

fn shuffle<R: Rng, T>(rng: &mut R, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = rng.random_range(0..=i);
        items.swap(i, j);
    }
}

/// Swaps the children of a commutative root; the result denotes the same
/// language with a different surface form.
fn commuted(ast: &RegexAst) -> Option<RegexAst> {
    match ast {
        RegexAst::Op { kind, children, .. }
            if matches!(kind, OperatorKind::And | OperatorKind::Or) =>
        {
            Some(
                RegexAst::op(
                    *kind,
                    vec![children[1].clone(), children[0].clone()],
                    vec![],
                )
                .expect("binary arity"),
            )
        }
        _ => None,
    }
}

/// Convenience over [`random_ast`] for callers that only have a seed.
pub fn random_asts(seed: u64, count: usize, cfg: &GenConfig) -> Vec<RegexAst> {
    let mut rng = seeded_rng(seed);
    (0..count).map(|_| random_ast(&mut rng, cfg)).collect()
}
