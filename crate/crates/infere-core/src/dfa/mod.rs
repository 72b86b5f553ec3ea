//! Deterministic finite automata over minterm alphabets, and the DFA-EQ
//! relation: two regexes are semantically equivalent exactly when their
//! canonical minimal DFAs over the joint alphabet are identical.

mod alphabet;
mod build;
mod minimize;

pub use alphabet::{derive_alphabet, Alphabet, Minterm, Symbol, UNIVERSE_CHARS};
pub use build::{compile, compile_with_cap, DEFAULT_UNROLL_CAP};
pub use minimize::minimize;

use crate::dsl::RegexAst;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("repetition count {count} exceeds the unrolling cap {cap}")]
    RepetitionTooLarge { count: u32, cap: u32 },
    #[error("leaf {0} is not representable in the alphabet")]
    UnrepresentableLeaf(String),
}

/// A complete DFA. Transitions are total over the minterm alphabet; a dead
/// state is materialized whenever needed. Values produced by [`compile`]
/// and [`minimize`] are canonical: states are numbered in breadth-first
/// order from the initial state, so language equality is table identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    pub(crate) minterm_count: usize,
    pub(crate) initial: usize,
    pub(crate) accepting: Vec<bool>,
    /// Row-major `state * minterm_count + minterm`.
    pub(crate) table: Vec<usize>,
}

impl Dfa {
    /// Builds a DFA from raw parts.
    ///
    /// Panics if the table is not `accepting.len() * minterm_count` entries,
    /// or if the initial state or any target is out of range.
    pub fn from_parts(
        minterm_count: usize,
        initial: usize,
        accepting: Vec<bool>,
        table: Vec<usize>,
    ) -> Dfa {
        let states = accepting.len();
        assert!(initial < states, "initial state out of range");
        assert_eq!(table.len(), states * minterm_count, "table size mismatch");
        assert!(
            table.iter().all(|&t| t < states),
            "transition target out of range"
        );
        Dfa {
            minterm_count,
            initial,
            accepting,
            table,
        }
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn minterm_count(&self) -> usize {
        self.minterm_count
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    /// The successor of `state` on `minterm`.
    pub fn next(&self, state: usize, minterm: usize) -> usize {
        self.table[state * self.minterm_count + minterm]
    }

    /// Runs the DFA on a word of minterm ids.
    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut state = self.initial;
        for &m in word {
            state = self.next(state, m);
        }
        self.accepting[state]
    }

    /// Graphviz rendering; one line per transition, minterms shown as
    /// compressed character ranges.
    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let mut out = String::from("digraph dfa {\n  rankdir=LR;\n  node [shape=circle];\n");
        out.push_str("  __start [shape=point];\n");
        for s in 0..self.state_count() {
            if self.accepting[s] {
                out.push_str(&format!("  s{s} [shape=doublecircle];\n"));
            }
        }
        out.push_str(&format!("  __start -> s{};\n", self.initial));
        for s in 0..self.state_count() {
            for m in 0..self.minterm_count {
                let label = alphabet.label(m).replace('\\', "\\\\").replace('"', "\\\"");
                out.push_str(&format!("  s{s} -> s{} [label=\"{label}\"];\n", self.next(s, m)));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// DFA-EQ with the default unrolling cap.
pub fn equivalent(a: &RegexAst, b: &RegexAst) -> Result<bool, CompileError> {
    equivalent_with_cap(a, b, DEFAULT_UNROLL_CAP)
}

/// Decides semantic equivalence of two regexes: both are compiled over
/// their joint alphabet and the canonical minimal DFAs are compared for
/// identity.
pub fn equivalent_with_cap(
    a: &RegexAst,
    b: &RegexAst,
    unroll_cap: u32,
) -> Result<bool, CompileError> {
    let alphabet = derive_alphabet(&[a, b]);
    let da = compile_with_cap(a, &alphabet, unroll_cap)?;
    let db = compile_with_cap(b, &alphabet, unroll_cap)?;
    Ok(da == db)
}
