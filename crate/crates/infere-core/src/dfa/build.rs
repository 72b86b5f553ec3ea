//! AST-to-DFA compilation.
//!
//! Union, concatenation, star and option go through a Thompson NFA; `and`
//! is a product of determinized operands, `not` complements a determinized
//! operand relative to the alphabet's universe. Counted repetition is
//! realized by bounded unrolling, guarded by a cap. The result is always
//! determinized, completed and minimized into canonical form.

use crate::dsl::{OperatorKind, RegexAst};

use super::alphabet::Alphabet;
use super::minimize::minimize;
use super::{CompileError, Dfa};

/// Default bound for counted-repetition unrolling.
pub const DEFAULT_UNROLL_CAP: u32 = 100;

/// Compiles an AST over the given alphabet into a canonical minimal DFA,
/// with the default unrolling cap.
pub fn compile(ast: &RegexAst, alphabet: &Alphabet) -> Result<Dfa, CompileError> {
    compile_with_cap(ast, alphabet, DEFAULT_UNROLL_CAP)
}

/// Compiles with an explicit unrolling cap.
pub fn compile_with_cap(
    ast: &RegexAst,
    alphabet: &Alphabet,
    unroll_cap: u32,
) -> Result<Dfa, CompileError> {
    let desugared = ast.desugar();
    let mut builder = NfaBuilder::new(alphabet.len());
    let frag = builder.fragment(&desugared, alphabet, unroll_cap)?;
    let dfa = builder.determinize(frag);
    Ok(minimize(&dfa))
}

/// A Thompson fragment: one start state, one accept state.
#[derive(Debug, Clone, Copy)]
struct Frag {
    start: usize,
    accept: usize,
}

/// Epsilon-NFA arena. Transitions are labeled with a minterm id or `None`
/// for epsilon.
struct NfaBuilder {
    edges: Vec<Vec<(Option<usize>, usize)>>,
    minterm_count: usize,
}

impl NfaBuilder {
    fn new(minterm_count: usize) -> Self {
        NfaBuilder {
            edges: Vec::new(),
            minterm_count,
        }
    }

    fn state(&mut self) -> usize {
        self.edges.push(Vec::new());
        self.edges.len() - 1
    }

    fn edge(&mut self, from: usize, label: Option<usize>, to: usize) {
        self.edges[from].push((label, to));
    }

    fn fragment(
        &mut self,
        ast: &RegexAst,
        alphabet: &Alphabet,
        cap: u32,
    ) -> Result<Frag, CompileError> {
        match ast {
            RegexAst::Leaf(kind) => {
                let start = self.state();
                let accept = self.state();
                for id in alphabet.leaf_minterms(*kind)? {
                    self.edge(start, Some(id), accept);
                }
                Ok(Frag { start, accept })
            }
            RegexAst::Op {
                kind,
                children,
                params,
            } => match kind {
                OperatorKind::Concat => {
                    let a = self.fragment(&children[0], alphabet, cap)?;
                    let b = self.fragment(&children[1], alphabet, cap)?;
                    self.edge(a.accept, None, b.start);
                    Ok(Frag {
                        start: a.start,
                        accept: b.accept,
                    })
                }
                OperatorKind::Or => {
                    let a = self.fragment(&children[0], alphabet, cap)?;
                    let b = self.fragment(&children[1], alphabet, cap)?;
                    Ok(self.alternate(a, b))
                }
                OperatorKind::Star => {
                    let inner = self.fragment(&children[0], alphabet, cap)?;
                    Ok(self.star(inner))
                }
                OperatorKind::Optional => {
                    let inner = self.fragment(&children[0], alphabet, cap)?;
                    let start = self.state();
                    let accept = self.state();
                    self.edge(start, None, inner.start);
                    self.edge(start, None, accept);
                    self.edge(inner.accept, None, accept);
                    Ok(Frag { start, accept })
                }
                OperatorKind::Rep => {
                    check_cap(params[0], cap)?;
                    self.power(&children[0], params[0], alphabet, cap)
                }
                OperatorKind::RepeatLeast => {
                    check_cap(params[0], cap)?;
                    let prefix = self.power(&children[0], params[0], alphabet, cap)?;
                    let inner = self.fragment(&children[0], alphabet, cap)?;
                    let tail = self.star(inner);
                    self.edge(prefix.accept, None, tail.start);
                    Ok(Frag {
                        start: prefix.start,
                        accept: tail.accept,
                    })
                }
                OperatorKind::RepRange => {
                    check_cap(params[1], cap)?;
                    let mut acc = self.power(&children[0], params[0], alphabet, cap)?;
                    for k in params[0] + 1..=params[1] {
                        let next = self.power(&children[0], k, alphabet, cap)?;
                        acc = self.alternate(acc, next);
                    }
                    Ok(acc)
                }
                OperatorKind::And => {
                    let a = self.fragment(&children[0], alphabet, cap)?;
                    let b = self.fragment(&children[1], alphabet, cap)?;
                    let da = self.determinize(a);
                    let db = self.determinize(b);
                    let product = intersect(&da, &db);
                    Ok(self.embed(&product))
                }
                OperatorKind::Not => {
                    let inner = self.fragment(&children[0], alphabet, cap)?;
                    let mut dfa = self.determinize(inner);
                    for accepting in &mut dfa.accepting {
                        *accepting = !*accepting;
                    }
                    Ok(self.embed(&dfa))
                }
                OperatorKind::StartWith | OperatorKind::EndWith | OperatorKind::Contain => {
                    unreachable!("sugar operators are desugared before compilation")
                }
            },
        }
    }

    fn alternate(&mut self, a: Frag, b: Frag) -> Frag {
        let start = self.state();
        let accept = self.state();
        self.edge(start, None, a.start);
        self.edge(start, None, b.start);
        self.edge(a.accept, None, accept);
        self.edge(b.accept, None, accept);
        Frag { start, accept }
    }

    fn star(&mut self, inner: Frag) -> Frag {
        let start = self.state();
        let accept = self.state();
        self.edge(start, None, inner.start);
        self.edge(start, None, accept);
        self.edge(inner.accept, None, inner.start);
        self.edge(inner.accept, None, accept);
        Frag { start, accept }
    }

    /// `k`-fold concatenation; `k == 0` accepts exactly the empty string.
    fn power(
        &mut self,
        ast: &RegexAst,
        k: u32,
        alphabet: &Alphabet,
        cap: u32,
    ) -> Result<Frag, CompileError> {
        if k == 0 {
            let s = self.state();
            return Ok(Frag { start: s, accept: s });
        }
        let mut acc = self.fragment(ast, alphabet, cap)?;
        for _ in 1..k {
            let next = self.fragment(ast, alphabet, cap)?;
            self.edge(acc.accept, None, next.start);
            acc = Frag {
                start: acc.start,
                accept: next.accept,
            };
        }
        Ok(acc)
    }

    /// Copies a complete DFA back into the arena as an NFA fragment.
    fn embed(&mut self, dfa: &Dfa) -> Frag {
        let offset = self.edges.len();
        for _ in 0..dfa.state_count() {
            self.state();
        }
        for s in 0..dfa.state_count() {
            for m in 0..dfa.minterm_count {
                self.edge(offset + s, Some(m), offset + dfa.next(s, m));
            }
        }
        let accept = self.state();
        for s in 0..dfa.state_count() {
            if dfa.accepting[s] {
                self.edge(offset + s, None, accept);
            }
        }
        Frag {
            start: offset + dfa.initial,
            accept,
        }
    }

    /// Subset construction. The result is a complete DFA; the empty subset
    /// acts as the dead state when reachable.
    fn determinize(&self, frag: Frag) -> Dfa {
        let mut closure_buf: Vec<usize> = Vec::new();
        let closure = |seed: &[usize], buf: &mut Vec<usize>| {
            buf.clear();
            buf.extend_from_slice(seed);
            let mut stack: Vec<usize> = seed.to_vec();
            while let Some(s) = stack.pop() {
                for (label, to) in &self.edges[s] {
                    if label.is_none() && !buf.contains(to) {
                        buf.push(*to);
                        stack.push(*to);
                    }
                }
            }
            buf.sort_unstable();
            buf.dedup();
        };

        let mut subsets: Vec<Vec<usize>> = Vec::new();
        let mut index: std::collections::HashMap<Vec<usize>, usize> =
            std::collections::HashMap::new();
        let mut table: Vec<usize> = Vec::new();
        let mut accepting: Vec<bool> = Vec::new();

        closure(&[frag.start], &mut closure_buf);
        let start_set = closure_buf.clone();
        subsets.push(start_set.clone());
        index.insert(start_set, 0);

        let mut i = 0;
        while i < subsets.len() {
            let current = subsets[i].clone();
            accepting.push(current.binary_search(&frag.accept).is_ok());
            for m in 0..self.minterm_count {
                let mut moved: Vec<usize> = Vec::new();
                for &s in &current {
                    for (label, to) in &self.edges[s] {
                        if *label == Some(m) && !moved.contains(to) {
                            moved.push(*to);
                        }
                    }
                }
                closure(&moved, &mut closure_buf);
                let target = closure_buf.clone();
                let id = match index.get(&target) {
                    Some(&id) => id,
                    None => {
                        let id = subsets.len();
                        subsets.push(target.clone());
                        index.insert(target, id);
                        id
                    }
                };
                table.push(id);
            }
            i += 1;
        }

        Dfa {
            minterm_count: self.minterm_count,
            initial: 0,
            accepting,
            table,
        }
    }
}

fn check_cap(count: u32, cap: u32) -> Result<(), CompileError> {
    if count > cap {
        Err(CompileError::RepetitionTooLarge { count, cap })
    } else {
        Ok(())
    }
}

/// Product automaton accepting the intersection of two complete DFAs over
/// the same alphabet.
fn intersect(a: &Dfa, b: &Dfa) -> Dfa {
    assert_eq!(a.minterm_count, b.minterm_count);
    let minterm_count = a.minterm_count;
    let mut index = std::collections::HashMap::new();
    let mut pairs = vec![(a.initial, b.initial)];
    index.insert((a.initial, b.initial), 0usize);
    let mut table = Vec::new();
    let mut accepting = Vec::new();
    let mut i = 0;
    while i < pairs.len() {
        let (sa, sb) = pairs[i];
        accepting.push(a.accepting[sa] && b.accepting[sb]);
        for m in 0..minterm_count {
            let next = (a.next(sa, m), b.next(sb, m));
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    let id = pairs.len();
                    pairs.push(next);
                    index.insert(next, id);
                    id
                }
            };
            table.push(id);
        }
        i += 1;
    }
    Dfa {
        minterm_count,
        initial: 0,
        accepting,
        table,
    }
}
