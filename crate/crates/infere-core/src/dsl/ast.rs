//! AST types for the regex DSL.
//!
//! The DSL has twelve operators and a small fixed set of operands: seven
//! character classes plus opaque `<mK>` string placeholders. Three of the
//! operators (`startwith`, `endwith`, `contain`) are sugar over `concat`
//! and `star(<any>)`; [`RegexAst::desugar`] rewrites them away.

use super::ParseError;
use crate::dfa::Symbol;

/// The twelve DSL operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OperatorKind {
    StartWith,
    EndWith,
    Contain,
    Not,
    Optional,
    Star,
    Concat,
    And,
    Or,
    Rep,
    RepeatLeast,
    RepRange,
}

impl OperatorKind {
    /// Every operator, in table order.
    pub const ALL: [OperatorKind; 12] = [
        OperatorKind::StartWith,
        OperatorKind::EndWith,
        OperatorKind::Contain,
        OperatorKind::Not,
        OperatorKind::Optional,
        OperatorKind::Star,
        OperatorKind::Concat,
        OperatorKind::And,
        OperatorKind::Or,
        OperatorKind::Rep,
        OperatorKind::RepeatLeast,
        OperatorKind::RepRange,
    ];

    /// The operator's surface name in functional and chain notation.
    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::StartWith => "startwith",
            OperatorKind::EndWith => "endwith",
            OperatorKind::Contain => "contain",
            OperatorKind::Not => "not",
            OperatorKind::Optional => "optional",
            OperatorKind::Star => "star",
            OperatorKind::Concat => "concat",
            OperatorKind::And => "and",
            OperatorKind::Or => "or",
            OperatorKind::Rep => "rep",
            OperatorKind::RepeatLeast => "repeat_least",
            OperatorKind::RepRange => "rep_range",
        }
    }

    /// Number of language-valued children.
    pub fn arity(self) -> usize {
        match self {
            OperatorKind::Concat | OperatorKind::And | OperatorKind::Or => 2,
            _ => 1,
        }
    }

    /// Number of integer parameters.
    pub fn numeric_params(self) -> usize {
        match self {
            OperatorKind::Rep | OperatorKind::RepeatLeast => 1,
            OperatorKind::RepRange => 2,
            _ => 0,
        }
    }

    /// Looks an operator up by its surface name. No aliases exist.
    pub fn from_name(name: &str) -> Option<OperatorKind> {
        OperatorKind::ALL.iter().copied().find(|op| op.name() == name)
    }

    /// True for the three operators that desugar to concat/star forms.
    pub fn is_sugar(self) -> bool {
        matches!(
            self,
            OperatorKind::StartWith | OperatorKind::EndWith | OperatorKind::Contain
        )
    }
}

/// A DSL operand: a character class or an opaque `<mK>` placeholder.
///
/// Each distinct placeholder denotes one atomic alphabet symbol rather
/// than a concrete character sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LeafKind {
    /// `[A-Za-z]`
    Let,
    /// `[A-Z]`
    Cap,
    /// `[a-z]`
    Low,
    /// `[0-9]`
    Num,
    /// `.` — every alphabet symbol, placeholders included.
    Any,
    /// `[-,;+:!@#_$%&*=^]`
    Spec,
    /// `[AEIOUaeiou]`
    Vow,
    /// `<mK>`
    Placeholder(u32),
}

/// Characters of the `<spec>` class, in table order.
pub const SPEC_CHARS: &str = "-,;+:!@#_$%&*=^";

impl LeafKind {
    /// The token form used in functional and chain notation (`<let>`, `<m0>`).
    pub fn token(self) -> String {
        match self {
            LeafKind::Let => "<let>".into(),
            LeafKind::Cap => "<cap>".into(),
            LeafKind::Low => "<low>".into(),
            LeafKind::Num => "<num>".into(),
            LeafKind::Any => "<any>".into(),
            LeafKind::Spec => "<spec>".into(),
            LeafKind::Vow => "<vow>".into(),
            LeafKind::Placeholder(k) => format!("<m{k}>"),
        }
    }

    /// The plain-text form (`[A-Za-z]`, `.`, `<m0>`).
    pub fn literal(self) -> String {
        match self {
            LeafKind::Let => "[A-Za-z]".into(),
            LeafKind::Cap => "[A-Z]".into(),
            LeafKind::Low => "[a-z]".into(),
            LeafKind::Num => "[0-9]".into(),
            LeafKind::Any => ".".into(),
            LeafKind::Spec => format!("[{SPEC_CHARS}]"),
            LeafKind::Vow => "[AEIOUaeiou]".into(),
            LeafKind::Placeholder(k) => format!("<m{k}>"),
        }
    }

    /// Parses a `<...>` token. Returns `None` if the token is unknown.
    pub fn from_token(token: &str) -> Option<LeafKind> {
        match token {
            "<let>" => Some(LeafKind::Let),
            "<cap>" => Some(LeafKind::Cap),
            "<low>" => Some(LeafKind::Low),
            "<num>" => Some(LeafKind::Num),
            "<any>" => Some(LeafKind::Any),
            "<spec>" => Some(LeafKind::Spec),
            "<vow>" => Some(LeafKind::Vow),
            _ => {
                let inner = token.strip_prefix("<m")?.strip_suffix('>')?;
                if inner.is_empty() || !inner.bytes().all(|b| b.is_ascii_digit()) {
                    return None;
                }
                inner.parse().ok().map(LeafKind::Placeholder)
            }
        }
    }

    /// Maps a `[...]` class body (without brackets) to its leaf.
    pub fn from_class_body(body: &str) -> Option<LeafKind> {
        match body {
            "A-Za-z" => Some(LeafKind::Let),
            "A-Z" => Some(LeafKind::Cap),
            "a-z" => Some(LeafKind::Low),
            "0-9" => Some(LeafKind::Num),
            SPEC_CHARS => Some(LeafKind::Spec),
            "AEIOUaeiou" => Some(LeafKind::Vow),
            _ => None,
        }
    }

    /// Semantic membership of an alphabet symbol in this operand's set.
    pub fn contains(self, sym: Symbol) -> bool {
        match (self, sym) {
            (LeafKind::Any, _) => true,
            (LeafKind::Placeholder(k), Symbol::Placeholder(j)) => k == j,
            (_, Symbol::Placeholder(_)) => false,
            (LeafKind::Let, Symbol::Char(c)) => c.is_ascii_alphabetic(),
            (LeafKind::Cap, Symbol::Char(c)) => c.is_ascii_uppercase(),
            (LeafKind::Low, Symbol::Char(c)) => c.is_ascii_lowercase(),
            (LeafKind::Num, Symbol::Char(c)) => c.is_ascii_digit(),
            (LeafKind::Spec, Symbol::Char(c)) => SPEC_CHARS.as_bytes().contains(&c),
            (LeafKind::Vow, Symbol::Char(c)) => b"AEIOUaeiou".contains(&c),
            (LeafKind::Placeholder(_), Symbol::Char(_)) => false,
        }
    }
}

/// The operator tree for a regex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RegexAst {
    Leaf(LeafKind),
    Op {
        kind: OperatorKind,
        children: Vec<RegexAst>,
        params: Vec<u32>,
    },
}

impl RegexAst {
    /// Builds an operator node, checking child and parameter counts and
    /// repetition bounds.
    pub fn op(
        kind: OperatorKind,
        children: Vec<RegexAst>,
        params: Vec<u32>,
    ) -> Result<RegexAst, ParseError> {
        if children.len() != kind.arity() || params.len() != kind.numeric_params() {
            return Err(ParseError::ArityMismatch {
                op: kind.name().into(),
                detail: format!(
                    "expects {} operand(s) and {} integer parameter(s), got {} and {}",
                    kind.arity(),
                    kind.numeric_params(),
                    children.len(),
                    params.len()
                ),
            });
        }
        if kind == OperatorKind::RepRange && params[0] > params[1] {
            return Err(ParseError::BadRepetitionBounds {
                k1: params[0],
                k2: params[1],
            });
        }
        Ok(RegexAst::Op {
            kind,
            children,
            params,
        })
    }

    pub fn leaf(kind: LeafKind) -> RegexAst {
        RegexAst::Leaf(kind)
    }

    pub fn concat(a: RegexAst, b: RegexAst) -> RegexAst {
        RegexAst::Op {
            kind: OperatorKind::Concat,
            children: vec![a, b],
            params: vec![],
        }
    }

    pub fn and(a: RegexAst, b: RegexAst) -> RegexAst {
        RegexAst::Op {
            kind: OperatorKind::And,
            children: vec![a, b],
            params: vec![],
        }
    }

    pub fn or(a: RegexAst, b: RegexAst) -> RegexAst {
        RegexAst::Op {
            kind: OperatorKind::Or,
            children: vec![a, b],
            params: vec![],
        }
    }

    // named after the DSL operator, not std::ops::Not
    #[allow(clippy::should_implement_trait)]
    pub fn not(r: RegexAst) -> RegexAst {
        Self::unary(OperatorKind::Not, r)
    }

    pub fn optional(r: RegexAst) -> RegexAst {
        Self::unary(OperatorKind::Optional, r)
    }

    pub fn star(r: RegexAst) -> RegexAst {
        Self::unary(OperatorKind::Star, r)
    }

    pub fn startwith(r: RegexAst) -> RegexAst {
        Self::unary(OperatorKind::StartWith, r)
    }

    pub fn endwith(r: RegexAst) -> RegexAst {
        Self::unary(OperatorKind::EndWith, r)
    }

    pub fn contain(r: RegexAst) -> RegexAst {
        Self::unary(OperatorKind::Contain, r)
    }

    pub fn rep(r: RegexAst, k: u32) -> RegexAst {
        RegexAst::Op {
            kind: OperatorKind::Rep,
            children: vec![r],
            params: vec![k],
        }
    }

    pub fn repeat_least(r: RegexAst, k: u32) -> RegexAst {
        RegexAst::Op {
            kind: OperatorKind::RepeatLeast,
            children: vec![r],
            params: vec![k],
        }
    }

    pub fn rep_range(r: RegexAst, k1: u32, k2: u32) -> Result<RegexAst, ParseError> {
        RegexAst::op(OperatorKind::RepRange, vec![r], vec![k1, k2])
    }

    fn unary(kind: OperatorKind, r: RegexAst) -> RegexAst {
        RegexAst::Op {
            kind,
            children: vec![r],
            params: vec![],
        }
    }

    /// Rewrites the sugar operators into their concat/star expansions:
    /// `startwith(r)` → `concat(r, star(<any>))`, `endwith(r)` →
    /// `concat(star(<any>), r)`, `contain(r)` →
    /// `concat(star(<any>), concat(r, star(<any>)))`.
    pub fn desugar(&self) -> RegexAst {
        match self {
            RegexAst::Leaf(k) => RegexAst::Leaf(*k),
            RegexAst::Op {
                kind,
                children,
                params,
            } => {
                let any_star = || RegexAst::star(RegexAst::leaf(LeafKind::Any));
                match kind {
                    OperatorKind::StartWith => {
                        RegexAst::concat(children[0].desugar(), any_star())
                    }
                    OperatorKind::EndWith => RegexAst::concat(any_star(), children[0].desugar()),
                    OperatorKind::Contain => RegexAst::concat(
                        any_star(),
                        RegexAst::concat(children[0].desugar(), any_star()),
                    ),
                    _ => RegexAst::Op {
                        kind: *kind,
                        children: children.iter().map(RegexAst::desugar).collect(),
                        params: params.clone(),
                    },
                }
            }
        }
    }

    /// Tree depth; a lone leaf has depth 1.
    pub fn depth(&self) -> usize {
        match self {
            RegexAst::Leaf(_) => 1,
            RegexAst::Op { children, .. } => {
                1 + children.iter().map(RegexAst::depth).max().unwrap_or(0)
            }
        }
    }

    /// Total number of nodes (operators plus leaves).
    pub fn node_count(&self) -> usize {
        match self {
            RegexAst::Leaf(_) => 1,
            RegexAst::Op { children, .. } => {
                1 + children.iter().map(RegexAst::node_count).sum::<usize>()
            }
        }
    }

    /// Distinct leaves of the tree, sorted.
    pub fn leaves(&self) -> Vec<LeafKind> {
        fn walk(ast: &RegexAst, out: &mut Vec<LeafKind>) {
            match ast {
                RegexAst::Leaf(k) => out.push(*k),
                RegexAst::Op { children, .. } => {
                    for c in children {
                        walk(c, out);
                    }
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out.sort();
        out.dedup();
        out
    }

    /// True if any sugar operator occurs in the tree.
    pub fn has_sugar(&self) -> bool {
        match self {
            RegexAst::Leaf(_) => false,
            RegexAst::Op { kind, children, .. } => {
                kind.is_sugar() || children.iter().any(RegexAst::has_sugar)
            }
        }
    }
}
