//! Plain regex text: parsing and canonical rendering.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! alternation   := conjunction ('|' conjunction)*
//! conjunction   := sequence ('&' sequence)*
//! sequence      := unit+                      (juxtaposition = concat)
//! unit          := prefixed postfix*          (postfix: ? * {k} {k,} {k1,k2})
//! prefixed      := '~' prefixed | atom
//! atom          := '.' | '[' class ']' | '<mK>' | '(' alternation ')'
//! ```
//!
//! `|`, `&` and juxtaposition associate to the left. Whitespace between
//! tokens is ignored. Only the class literals of the DSL are accepted;
//! bare characters are not operands in this dialect.
//!
//! Rendering is canonical: every operand is parenthesized, sugar operators
//! are desugared first, and `star(<any>)` in operand position is emitted in
//! the dataset surface style `(.*)`. Parsing a rendering always gives back
//! the desugared tree.

use super::ast::{LeafKind, OperatorKind, RegexAst};
use super::ParseError;

/// Parses plain regex text into an AST over the core operators.
///
/// The sugar operators never appear in the result: their surface forms
/// `r.*`, `.*r` and `.*r.*` are just concatenations with `star(<any>)`.
pub fn parse_plain(text: &str) -> Result<RegexAst, ParseError> {
    let tokens = lex(text)?;
    if tokens.is_empty() {
        return Err(ParseError::EmptyInput);
    }
    let mut parser = Parser { tokens, pos: 0 };
    let ast = parser.alternation()?;
    match parser.peek() {
        None => Ok(ast),
        Some((Tok::RParen, _)) => Err(ParseError::UnbalancedParens),
        Some((tok, pos)) => Err(ParseError::Unexpected {
            token: tok.describe(),
            pos: *pos,
        }),
    }
}

/// Renders an AST as canonical plain regex text.
pub fn render_plain(ast: &RegexAst) -> String {
    render_node(&ast.desugar())
}

fn render_node(ast: &RegexAst) -> String {
    match ast {
        RegexAst::Leaf(k) => k.literal(),
        RegexAst::Op {
            kind,
            children,
            params,
        } => match kind {
            OperatorKind::Not => format!("~{}", operand(&children[0])),
            OperatorKind::Optional => format!("{}?", operand(&children[0])),
            OperatorKind::Star => format!("{}*", operand(&children[0])),
            OperatorKind::Concat => format!("{}{}", operand(&children[0]), operand(&children[1])),
            OperatorKind::And => format!("{}&{}", operand(&children[0]), operand(&children[1])),
            OperatorKind::Or => format!("{}|{}", operand(&children[0]), operand(&children[1])),
            OperatorKind::Rep => format!("{}{{{}}}", operand(&children[0]), params[0]),
            OperatorKind::RepeatLeast => format!("{}{{{},}}", operand(&children[0]), params[0]),
            OperatorKind::RepRange => {
                format!("{}{{{},{}}}", operand(&children[0]), params[0], params[1])
            }
            // desugared above
            OperatorKind::StartWith | OperatorKind::EndWith | OperatorKind::Contain => {
                render_node(&ast.desugar())
            }
        },
    }
}

// `star(<any>)` in operand position is written `(.*)` rather than `((.)*)`,
// matching the benchmark datasets' gold strings.
fn operand(child: &RegexAst) -> String {
    if is_any_star(child) {
        "(.*)".into()
    } else {
        format!("({})", render_node(child))
    }
}

fn is_any_star(ast: &RegexAst) -> bool {
    matches!(
        ast,
        RegexAst::Op { kind: OperatorKind::Star, children, .. }
            if matches!(children[0], RegexAst::Leaf(LeafKind::Any))
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Or,
    And,
    Tilde,
    Quest,
    Star,
    Leaf(LeafKind),
    /// `{k}`, `{k,}` or `{k1,k2}`.
    Repeat { k1: u32, k2: Option<u32>, open: bool },
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Or => "|".into(),
            Tok::And => "&".into(),
            Tok::Tilde => "~".into(),
            Tok::Quest => "?".into(),
            Tok::Star => "*".into(),
            Tok::Leaf(k) => k.literal(),
            Tok::Repeat { k1, k2, open } => match (k2, open) {
                (Some(k2), _) => format!("{{{k1},{k2}}}"),
                (None, true) => format!("{{{k1},}}"),
                (None, false) => format!("{{{k1}}}"),
            },
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let start = i;
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'(' => tokens.push((Tok::LParen, start)),
            b')' => tokens.push((Tok::RParen, start)),
            b'|' => tokens.push((Tok::Or, start)),
            b'&' => tokens.push((Tok::And, start)),
            b'~' => tokens.push((Tok::Tilde, start)),
            b'?' => tokens.push((Tok::Quest, start)),
            b'*' => tokens.push((Tok::Star, start)),
            b'.' => tokens.push((Tok::Leaf(LeafKind::Any), start)),
            b'[' => {
                let end = match bytes[i + 1..].iter().position(|&c| c == b']') {
                    Some(off) => i + 1 + off,
                    None => return Err(ParseError::UnterminatedClass(start)),
                };
                let body = &text[i + 1..end];
                let leaf = LeafKind::from_class_body(body)
                    .ok_or_else(|| ParseError::UnknownCharClass(body.into()))?;
                tokens.push((Tok::Leaf(leaf), start));
                i = end;
            }
            b'<' => {
                let end = match bytes[i + 1..].iter().position(|&c| c == b'>') {
                    Some(off) => i + 1 + off,
                    None => {
                        return Err(ParseError::UnknownToken {
                            token: text[start..].chars().take(8).collect(),
                            pos: start,
                        })
                    }
                };
                let token = &text[i..=end];
                match LeafKind::from_token(token) {
                    Some(leaf @ LeafKind::Placeholder(_)) => tokens.push((Tok::Leaf(leaf), start)),
                    // class tokens like <let> belong to the functional form only
                    _ => {
                        return Err(ParseError::UnknownToken {
                            token: token.into(),
                            pos: start,
                        })
                    }
                }
                i = end;
            }
            b'{' => {
                let end = match bytes[i + 1..].iter().position(|&c| c == b'}') {
                    Some(off) => i + 1 + off,
                    None => return Err(ParseError::UnexpectedEnd),
                };
                let body = &text[i + 1..end];
                tokens.push((parse_repeat(body)?, start));
                i = end;
            }
            _ => {
                return Err(ParseError::UnknownToken {
                    token: text[start..].chars().take(1).collect(),
                    pos: start,
                })
            }
        }
        i += 1;
    }
    Ok(tokens)
}

fn parse_repeat(body: &str) -> Result<Tok, ParseError> {
    let parse_int = |s: &str| -> Result<u32, ParseError> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseError::MalformedInteger(s.into()));
        }
        s.parse().map_err(|_| ParseError::MalformedInteger(s.into()))
    };
    match body.split_once(',') {
        None => Ok(Tok::Repeat {
            k1: parse_int(body)?,
            k2: None,
            open: false,
        }),
        Some((lo, "")) => Ok(Tok::Repeat {
            k1: parse_int(lo)?,
            k2: None,
            open: true,
        }),
        Some((lo, hi)) => {
            let k1 = parse_int(lo)?;
            let k2 = parse_int(hi)?;
            if k1 > k2 {
                return Err(ParseError::BadRepetitionBounds { k1, k2 });
            }
            Ok(Tok::Repeat {
                k1,
                k2: Some(k2),
                open: false,
            })
        }
    }
}

struct Parser {
    tokens: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(Tok, usize)> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().map(|(t, _)| t) == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn alternation(&mut self) -> Result<RegexAst, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Tok::Or) {
            let rhs = self.conjunction()?;
            lhs = RegexAst::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<RegexAst, ParseError> {
        let mut lhs = self.sequence()?;
        while self.eat(&Tok::And) {
            let rhs = self.sequence()?;
            lhs = RegexAst::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn sequence(&mut self) -> Result<RegexAst, ParseError> {
        let mut lhs = self.unit()?;
        while let Some((tok, _)) = self.peek() {
            match tok {
                Tok::LParen | Tok::Leaf(_) | Tok::Tilde => {
                    let rhs = self.unit()?;
                    lhs = RegexAst::concat(lhs, rhs);
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn unit(&mut self) -> Result<RegexAst, ParseError> {
        let mut ast = self.prefixed()?;
        while let Some((tok, _)) = self.peek() {
            match tok.clone() {
                Tok::Quest => {
                    self.pos += 1;
                    ast = RegexAst::optional(ast);
                }
                Tok::Star => {
                    self.pos += 1;
                    ast = RegexAst::star(ast);
                }
                Tok::Repeat { k1, k2, open } => {
                    self.pos += 1;
                    ast = match (k2, open) {
                        (Some(k2), _) => RegexAst::rep_range(ast, k1, k2)?,
                        (None, true) => RegexAst::repeat_least(ast, k1),
                        (None, false) => RegexAst::rep(ast, k1),
                    };
                }
                _ => break,
            }
        }
        Ok(ast)
    }

    fn prefixed(&mut self) -> Result<RegexAst, ParseError> {
        if self.eat(&Tok::Tilde) {
            return Ok(RegexAst::not(self.prefixed()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<RegexAst, ParseError> {
        match self.bump() {
            Some((Tok::Leaf(k), _)) => Ok(RegexAst::leaf(k)),
            Some((Tok::LParen, _)) => {
                let ast = self.alternation()?;
                if self.eat(&Tok::RParen) {
                    Ok(ast)
                } else {
                    Err(ParseError::UnbalancedParens)
                }
            }
            Some((tok, pos)) => Err(ParseError::Unexpected {
                token: tok.describe(),
                pos,
            }),
            None => Err(ParseError::UnexpectedEnd),
        }
    }
}
