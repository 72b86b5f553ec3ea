//! Core library for step-by-step regex generation tooling.
//!
//! The crate covers the non-neural plumbing of an NL2RE pipeline:
//!
//! * [`dsl`] — the regex DSL, its AST, and the plain/functional text forms.
//! * [`chain`] — decomposing an AST into an inference chain and reverting
//!   chains back to ASTs, plus the `stepI=...` wire format.
//! * [`dfa`] — compilation of ASTs to minimal DFAs over a minterm alphabet
//!   and exact semantic equivalence (DFA-EQ).
//! * [`vote`] — self-consistency decoding: plurality voting over sampled
//!   candidates grouped by DFA equivalence.
//! * [`eval`] — dataset and candidate file IO, the DFA-EQ@m and EM metrics,
//!   and report generation.
//! * [`gen`] — seeded random ASTs and synthetic fixtures for tests and demos.

pub mod chain;
pub mod dfa;
pub mod dsl;
pub mod eval;
pub mod gen;
pub mod vote;

pub use chain::{decompose, parse_chain, render_chain, revert, Chain, ChainArg, ChainError, ChainStep, StepExpr};
pub use dfa::{
    compile, compile_with_cap, derive_alphabet, equivalent, equivalent_with_cap, minimize,
    Alphabet, CompileError, Dfa, Minterm, Symbol, DEFAULT_UNROLL_CAP,
};
pub use dsl::{
    parse_functional, parse_plain, render_functional, render_plain, LeafKind, OperatorKind,
    ParseError, RegexAst,
};
pub use eval::{
    dfa_eq_at_m, evaluate, exact_match, load_candidates, load_dataset, write_candidates,
    write_dataset, CandidateSet, DatasetRecord, EvalConfig, EvalError, EvalMode, EvalReport,
    PerExample,
};
pub use gen::{generate_fixture, random_ast, random_asts, seeded_rng, Fixture, GenConfig};
pub use vote::{
    normalize_candidate, self_consistency_decode, vote, Candidate, NormalizeError, Source,
    VoteError, VoteOutcome,
};
