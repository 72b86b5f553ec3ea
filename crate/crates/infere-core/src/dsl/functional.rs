//! Parenthetical (functional) notation: `op(child,...,ints)` trees such as
//! `and(startwith(<low>),endwith(<vow>))`. Unlike the plain form, sugar
//! operators are first-class nodes here.

use super::ast::{LeafKind, OperatorKind, RegexAst};
use super::ParseError;

/// Parses parenthetical notation into an AST, keeping sugar operators.
pub fn parse_functional(text: &str) -> Result<RegexAst, ParseError> {
    let mut cursor = Cursor::new(text);
    cursor.skip_ws();
    if cursor.at_end() {
        return Err(ParseError::EmptyInput);
    }
    let ast = parse_expr(&mut cursor)?;
    cursor.skip_ws();
    if !cursor.at_end() {
        return Err(ParseError::Unexpected {
            token: cursor.rest().chars().take(8).collect(),
            pos: cursor.pos,
        });
    }
    Ok(ast)
}

/// Renders an AST in parenthetical notation; exact inverse of
/// [`parse_functional`].
pub fn render_functional(ast: &RegexAst) -> String {
    match ast {
        RegexAst::Leaf(k) => k.token(),
        RegexAst::Op {
            kind,
            children,
            params,
        } => {
            let mut args: Vec<String> = children.iter().map(render_functional).collect();
            args.extend(params.iter().map(u32::to_string));
            format!("{}({})", kind.name(), args.join(","))
        }
    }
}

pub(crate) struct Cursor<'a> {
    text: &'a str,
    pub(crate) pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    pub(crate) fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    pub(crate) fn skip_ws(&mut self) {
        while let Some(b) = self.text.as_bytes().get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    pub(crate) fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    pub(crate) fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Consumes `[a-z0-9_]+`.
    pub(crate) fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while let Some(b) = self.peek() {
            if b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        &self.text[start..self.pos]
    }

    /// Consumes a `<...>` token or a `[...]` class literal and maps it to a
    /// leaf. Both spellings are accepted wherever a leaf may appear.
    pub(crate) fn leaf_token(&mut self) -> Result<LeafKind, ParseError> {
        let start = self.pos;
        match self.peek() {
            Some(b'<') => {
                let end = match self.rest().find('>') {
                    Some(off) => self.pos + off,
                    None => {
                        return Err(ParseError::UnknownToken {
                            token: self.rest().chars().take(8).collect(),
                            pos: start,
                        })
                    }
                };
                let token = &self.text[start..=end];
                self.pos = end + 1;
                LeafKind::from_token(token).ok_or_else(|| ParseError::UnknownToken {
                    token: token.into(),
                    pos: start,
                })
            }
            Some(b'[') => {
                let end = match self.rest().find(']') {
                    Some(off) => self.pos + off,
                    None => return Err(ParseError::UnterminatedClass(start)),
                };
                let body = &self.text[start + 1..end];
                self.pos = end + 1;
                LeafKind::from_class_body(body)
                    .ok_or_else(|| ParseError::UnknownCharClass(body.into()))
            }
            Some(_) => Err(ParseError::Unexpected {
                token: self.rest().chars().take(1).collect(),
                pos: start,
            }),
            None => Err(ParseError::UnexpectedEnd),
        }
    }

    pub(crate) fn integer(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits = &self.text[start..self.pos];
        digits
            .parse()
            .map_err(|_| ParseError::MalformedInteger(digits.into()))
    }
}

fn parse_expr(cursor: &mut Cursor) -> Result<RegexAst, ParseError> {
    cursor.skip_ws();
    match cursor.peek() {
        Some(b'<') | Some(b'[') => Ok(RegexAst::leaf(cursor.leaf_token()?)),
        Some(b) if b.is_ascii_lowercase() => {
            let start = cursor.pos;
            let name = cursor.ident().to_owned();
            let kind = OperatorKind::from_name(&name)
                .ok_or_else(|| ParseError::UnknownOperator(name.clone()))?;
            cursor.skip_ws();
            if !cursor.eat(b'(') {
                return Err(ParseError::Unexpected {
                    token: name,
                    pos: start,
                });
            }
            let mut children = Vec::new();
            let mut params = Vec::new();
            loop {
                cursor.skip_ws();
                match cursor.peek() {
                    Some(b) if b.is_ascii_digit() => {
                        params.push(cursor.integer()?);
                    }
                    Some(b')') => break,
                    _ => {
                        if !params.is_empty() {
                            // integer parameters come last
                            return Err(ParseError::ArityMismatch {
                                op: kind.name().into(),
                                detail: "operand found after integer parameter".into(),
                            });
                        }
                        children.push(parse_expr(cursor)?);
                    }
                }
                cursor.skip_ws();
                if !cursor.eat(b',') {
                    break;
                }
            }
            cursor.skip_ws();
            if !cursor.eat(b')') {
                return if cursor.at_end() {
                    Err(ParseError::UnexpectedEnd)
                } else {
                    Err(ParseError::UnbalancedParens)
                };
            }
            RegexAst::op(kind, children, params)
        }
        Some(_) => Err(ParseError::Unexpected {
            token: cursor.rest().chars().take(1).collect(),
            pos: cursor.pos,
        }),
        None => Err(ParseError::UnexpectedEnd),
    }
}
