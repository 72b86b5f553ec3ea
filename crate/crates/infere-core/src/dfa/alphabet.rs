//! Minterm alphabets.
//!
//! Compiling a regex pair to comparable DFAs requires a common alphabet.
//! Rather than transitioning on raw characters, the automata transition on
//! *minterms*: the equivalence classes of universe symbols under membership
//! in every leaf class appearing in the inputs. The universe is printable
//! ASCII plus one atomic symbol per distinct `<mK>` placeholder.

use crate::dsl::{LeafKind, RegexAst};

use super::CompileError;

/// One symbol of the universe: a printable ASCII byte or the atomic symbol
/// standing for a `<mK>` placeholder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Char(u8),
    Placeholder(u32),
}

/// A set of universe symbols indistinguishable by every class in play.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minterm {
    /// Sorted member symbols.
    pub symbols: Vec<Symbol>,
}

/// An ordered partition of the universe into minterms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    minterms: Vec<Minterm>,
}

/// First and last printable ASCII bytes of the universe.
pub const UNIVERSE_CHARS: std::ops::RangeInclusive<u8> = 0x20..=0x7e;

/// Computes the joint minterm alphabet of a set of ASTs.
///
/// Minterms are ordered by their smallest symbol (characters before
/// placeholders), so the result is deterministic in the inputs.
pub fn derive_alphabet(asts: &[&RegexAst]) -> Alphabet {
    let mut classes: Vec<LeafKind> = Vec::new();
    let mut placeholders: Vec<u32> = Vec::new();
    for ast in asts {
        for leaf in ast.leaves() {
            if !classes.contains(&leaf) {
                classes.push(leaf);
            }
            if let LeafKind::Placeholder(k) = leaf {
                if !placeholders.contains(&k) {
                    placeholders.push(k);
                }
            }
        }
    }
    classes.sort();
    placeholders.sort_unstable();

    let universe = UNIVERSE_CHARS
        .map(Symbol::Char)
        .chain(placeholders.into_iter().map(Symbol::Placeholder));

    // group symbols by their membership signature, in scan order
    let mut minterms: Vec<(Vec<bool>, Vec<Symbol>)> = Vec::new();
    for sym in universe {
        let signature: Vec<bool> = classes.iter().map(|c| c.contains(sym)).collect();
        match minterms.iter_mut().find(|(sig, _)| *sig == signature) {
            Some((_, members)) => members.push(sym),
            None => minterms.push((signature, vec![sym])),
        }
    }
    Alphabet {
        minterms: minterms
            .into_iter()
            .map(|(_, symbols)| Minterm { symbols })
            .collect(),
    }
}

impl Alphabet {
    pub fn len(&self) -> usize {
        self.minterms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minterms.is_empty()
    }

    pub fn minterms(&self) -> &[Minterm] {
        &self.minterms
    }

    /// The minterm ids whose symbols all belong to `leaf`.
    ///
    /// Errors if some minterm straddles the class boundary, which means the
    /// leaf was not part of the alphabet derivation.
    pub fn leaf_minterms(&self, leaf: LeafKind) -> Result<Vec<usize>, CompileError> {
        let mut ids = Vec::new();
        for (id, minterm) in self.minterms.iter().enumerate() {
            let inside = minterm.symbols.iter().filter(|s| leaf.contains(**s)).count();
            if inside == minterm.symbols.len() {
                ids.push(id);
            } else if inside > 0 {
                return Err(CompileError::UnrepresentableLeaf(leaf.token()));
            }
        }
        Ok(ids)
    }

    /// True if the minterm contains the symbol.
    pub fn minterm_contains(&self, id: usize, sym: Symbol) -> bool {
        self.minterms[id].symbols.binary_search(&sym).is_ok()
    }

    /// The minterm a symbol belongs to.
    pub fn minterm_of(&self, sym: Symbol) -> Option<usize> {
        self.minterms
            .iter()
            .position(|m| m.symbols.binary_search(&sym).is_ok())
    }

    /// Maps an ASCII string to its minterm-id word. `None` if some byte is
    /// outside the universe.
    pub fn encode_str(&self, text: &str) -> Option<Vec<usize>> {
        text.bytes().map(|b| self.minterm_of(Symbol::Char(b))).collect()
    }

    /// A compact label for a minterm: consecutive characters compressed to
    /// ranges (`[0-9]`, `[A-Za-z]`), placeholders as their tokens.
    pub fn label(&self, id: usize) -> String {
        let minterm = &self.minterms[id];
        let mut chars: Vec<u8> = Vec::new();
        let mut tokens: Vec<String> = Vec::new();
        for sym in &minterm.symbols {
            match sym {
                Symbol::Char(c) => chars.push(*c),
                Symbol::Placeholder(k) => tokens.push(format!("<m{k}>")),
            }
        }
        let mut out = String::new();
        if !chars.is_empty() {
            out.push('[');
            let mut i = 0;
            while i < chars.len() {
                let mut j = i;
                while j + 1 < chars.len() && chars[j + 1] == chars[j] + 1 {
                    j += 1;
                }
                if j - i >= 2 {
                    out.push(chars[i] as char);
                    out.push('-');
                    out.push(chars[j] as char);
                } else {
                    for &c in &chars[i..=j] {
                        out.push(c as char);
                    }
                }
                i = j + 1;
            }
            out.push(']');
        }
        for token in tokens {
            out.push_str(&token);
        }
        out
    }
}
