//! Chains of inference: the step-by-step representation of a regex.
//!
//! A chain lists shallow steps `step1=...`, `step2=...`, each either a leaf
//! or a single operator applied to earlier steps, inline leaves, and integer
//! parameters. [`decompose`] lowers an AST into a chain by post-order
//! traversal; [`revert`] substitutes step references until the full tree is
//! rebuilt. The serialized form is space-separated `stepI=EXPR` text.

use crate::dsl::functional::Cursor;
use crate::dsl::{LeafKind, OperatorKind, ParseError, RegexAst};
use thiserror::Error;

/// One argument of a chain step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChainArg {
    /// Reference to an earlier step (1-based).
    StepRef(usize),
    /// An inline leaf; model outputs sometimes spell `startwith(<low>)`
    /// instead of referencing a separate leaf step.
    Leaf(LeafKind),
    /// An integer parameter of `rep`/`repeat_least`/`rep_range`.
    Int(u32),
}

/// The expression of a step: a leaf or a single operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepExpr {
    Leaf(LeafKind),
    Op(OperatorKind),
}

/// One step of a chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainStep {
    /// 1-based position in the chain.
    pub index: usize,
    pub expr: StepExpr,
    pub args: Vec<ChainArg>,
}

/// An ordered chain of inference steps; the last step denotes the regex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    pub steps: Vec<ChainStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("malformed step near `{0}`")]
    MalformedStep(String),
    #[error("step {step} references step {referenced}, which is not strictly earlier")]
    ForwardReference { step: usize, referenced: usize },
    #[error("duplicate step index {0}")]
    DuplicateIndex(usize),
    #[error("non-consecutive step index: expected {expected}, found {found}")]
    NonConsecutiveIndices { expected: usize, found: usize },
    #[error("step {step} references step {referenced}, which does not exist")]
    DanglingStepRef { step: usize, referenced: usize },
    #[error("step {0} is not used by the final step")]
    UnusedStep(usize),
    #[error("step {step}: operator `{op}`: {detail}")]
    ArityMismatch {
        step: usize,
        op: String,
        detail: String,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Chain {
    /// The step count K.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Checks index consecutiveness and the backward-reference rule.
    pub fn validate(&self) -> Result<(), ChainError> {
        if self.steps.is_empty() {
            return Err(ChainError::MalformedStep("<empty chain>".into()));
        }
        for (i, step) in self.steps.iter().enumerate() {
            let expected = i + 1;
            if step.index != expected {
                return Err(ChainError::NonConsecutiveIndices {
                    expected,
                    found: step.index,
                });
            }
            if matches!(step.expr, StepExpr::Leaf(_)) && !step.args.is_empty() {
                return Err(ChainError::MalformedStep(format!(
                    "step{}: leaf step takes no arguments",
                    step.index
                )));
            }
            for arg in &step.args {
                if let ChainArg::StepRef(j) = arg {
                    if *j == 0 {
                        return Err(ChainError::DanglingStepRef {
                            step: step.index,
                            referenced: 0,
                        });
                    }
                    if *j >= step.index {
                        return Err(ChainError::ForwardReference {
                            step: step.index,
                            referenced: *j,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Lowers an AST into its chain of inference.
///
/// Every language-denoting node — operator or leaf — becomes one step, in
/// post-order encounter rank; integer parameters stay inline arguments.
pub fn decompose(ast: &RegexAst) -> Chain {
    fn walk(ast: &RegexAst, steps: &mut Vec<ChainStep>) -> usize {
        match ast {
            RegexAst::Leaf(k) => {
                steps.push(ChainStep {
                    index: steps.len() + 1,
                    expr: StepExpr::Leaf(*k),
                    args: Vec::new(),
                });
                steps.len()
            }
            RegexAst::Op {
                kind,
                children,
                params,
            } => {
                let refs: Vec<usize> = children.iter().map(|c| walk(c, steps)).collect();
                let mut args: Vec<ChainArg> = refs.into_iter().map(ChainArg::StepRef).collect();
                args.extend(params.iter().map(|&k| ChainArg::Int(k)));
                steps.push(ChainStep {
                    index: steps.len() + 1,
                    expr: StepExpr::Op(*kind),
                    args,
                });
                steps.len()
            }
        }
    }
    let mut steps = Vec::new();
    walk(ast, &mut steps);
    Chain { steps }
}

/// Rebuilds the AST denoted by a chain, substituting step references
/// starting from the last step.
pub fn revert(chain: &Chain) -> Result<RegexAst, ChainError> {
    chain.validate()?;
    let last = chain.steps.len();
    let mut used = vec![false; last + 1];
    let ast = build(chain, last, &mut used)?;
    for (i, flag) in used.iter().enumerate().skip(1) {
        if !flag {
            return Err(ChainError::UnusedStep(i));
        }
    }
    Ok(ast)
}

fn build(chain: &Chain, index: usize, used: &mut [bool]) -> Result<RegexAst, ChainError> {
    used[index] = true;
    let step = &chain.steps[index - 1];
    match step.expr {
        StepExpr::Leaf(k) => Ok(RegexAst::leaf(k)),
        StepExpr::Op(kind) => {
            let mut children = Vec::new();
            let mut params = Vec::new();
            for arg in &step.args {
                match arg {
                    ChainArg::StepRef(j) => {
                        if *j == 0 || *j > chain.steps.len() {
                            return Err(ChainError::DanglingStepRef {
                                step: step.index,
                                referenced: *j,
                            });
                        }
                        if !params.is_empty() {
                            return Err(arity(step, kind, "operand after integer parameter"));
                        }
                        children.push(build(chain, *j, used)?);
                    }
                    ChainArg::Leaf(k) => {
                        if !params.is_empty() {
                            return Err(arity(step, kind, "operand after integer parameter"));
                        }
                        children.push(RegexAst::leaf(*k));
                    }
                    ChainArg::Int(k) => params.push(*k),
                }
            }
            RegexAst::op(kind, children, params).map_err(|e| match e {
                ParseError::ArityMismatch { op, detail } => ChainError::ArityMismatch {
                    step: step.index,
                    op,
                    detail,
                },
                other => ChainError::Parse(other),
            })
        }
    }
}

fn arity(step: &ChainStep, kind: OperatorKind, detail: &str) -> ChainError {
    ChainError::ArityMismatch {
        step: step.index,
        op: kind.name().into(),
        detail: detail.into(),
    }
}

/// Serializes a chain as `step1=... step2=...`, single-space separated.
/// Leaf steps use the token form (`step1=<let>`).
pub fn render_chain(chain: &Chain) -> String {
    chain
        .steps
        .iter()
        .map(render_step)
        .collect::<Vec<_>>()
        .join(" ")
}

fn render_step(step: &ChainStep) -> String {
    match step.expr {
        StepExpr::Leaf(k) => format!("step{}={}", step.index, k.token()),
        StepExpr::Op(kind) => {
            let args: Vec<String> = step
                .args
                .iter()
                .map(|arg| match arg {
                    ChainArg::StepRef(j) => format!("step{j}"),
                    ChainArg::Leaf(k) => k.token(),
                    ChainArg::Int(k) => k.to_string(),
                })
                .collect();
            format!("step{}={}({})", step.index, kind.name(), args.join(","))
        }
    }
}

/// Parses the serialized chain form. Tolerates arbitrary whitespace runs
/// between steps and inside argument lists; accepts both `<let>` tokens and
/// expanded `[A-Za-z]` class literals for leaves.
pub fn parse_chain(text: &str) -> Result<Chain, ChainError> {
    let mut cursor = Cursor::new(text);
    let mut steps: Vec<ChainStep> = Vec::new();
    loop {
        cursor.skip_ws();
        if cursor.at_end() {
            break;
        }
        let step = parse_step(&mut cursor)?;
        if step.index != steps.len() + 1 {
            if steps.iter().any(|s| s.index == step.index) {
                return Err(ChainError::DuplicateIndex(step.index));
            }
            return Err(ChainError::NonConsecutiveIndices {
                expected: steps.len() + 1,
                found: step.index,
            });
        }
        steps.push(step);
    }
    let chain = Chain { steps };
    chain.validate()?;
    Ok(chain)
}

fn parse_step(cursor: &mut Cursor) -> Result<ChainStep, ChainError> {
    let malformed = |c: &Cursor| ChainError::MalformedStep(c.rest().chars().take(16).collect());

    let label = cursor.ident();
    let index = match parse_step_index(label) {
        Some(i) => i,
        None => return Err(ChainError::MalformedStep(format!("{label}..."))),
    };
    cursor.skip_ws();
    if !cursor.eat(b'=') {
        return Err(malformed(cursor));
    }
    cursor.skip_ws();
    match cursor.peek() {
        // leaf step, token or class-literal spelling
        Some(b'<') | Some(b'[') => {
            let leaf = cursor.leaf_token().map_err(ChainError::Parse)?;
            Ok(ChainStep {
                index,
                expr: StepExpr::Leaf(leaf),
                args: Vec::new(),
            })
        }
        Some(b) if b.is_ascii_lowercase() => {
            let name = cursor.ident().to_owned();
            if parse_step_index(&name).is_some() {
                // a bare step reference is not a step expression
                return Err(ChainError::MalformedStep(format!("step{index}={name}")));
            }
            let kind = OperatorKind::from_name(&name)
                .ok_or_else(|| ChainError::Parse(ParseError::UnknownOperator(name.clone())))?;
            cursor.skip_ws();
            if !cursor.eat(b'(') {
                return Err(malformed(cursor));
            }
            let mut args = Vec::new();
            loop {
                cursor.skip_ws();
                match cursor.peek() {
                    Some(b')') => break,
                    Some(b'<') | Some(b'[') => {
                        args.push(ChainArg::Leaf(cursor.leaf_token().map_err(ChainError::Parse)?));
                    }
                    Some(b) if b.is_ascii_digit() => {
                        args.push(ChainArg::Int(cursor.integer().map_err(ChainError::Parse)?));
                    }
                    Some(b) if b.is_ascii_lowercase() => {
                        let ident = cursor.ident();
                        match parse_step_index(ident) {
                            Some(j) if j >= index => {
                                return Err(ChainError::ForwardReference {
                                    step: index,
                                    referenced: j,
                                });
                            }
                            Some(0) => {
                                return Err(ChainError::DanglingStepRef {
                                    step: index,
                                    referenced: 0,
                                });
                            }
                            Some(j) => args.push(ChainArg::StepRef(j)),
                            // nested operator expressions are not shallow
                            None => {
                                return Err(ChainError::MalformedStep(format!(
                                    "step{index}: argument `{ident}`"
                                )))
                            }
                        }
                    }
                    _ => return Err(malformed(cursor)),
                }
                cursor.skip_ws();
                if !cursor.eat(b',') {
                    break;
                }
            }
            cursor.skip_ws();
            if !cursor.eat(b')') {
                return Err(malformed(cursor));
            }
            check_step_arity(index, kind, &args)?;
            Ok(ChainStep {
                index,
                expr: StepExpr::Op(kind),
                args,
            })
        }
        _ => Err(malformed(cursor)),
    }
}

fn parse_step_index(ident: &str) -> Option<usize> {
    let digits = ident.strip_prefix("step")?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

fn check_step_arity(index: usize, kind: OperatorKind, args: &[ChainArg]) -> Result<(), ChainError> {
    let operands = args
        .iter()
        .take_while(|a| !matches!(a, ChainArg::Int(_)))
        .count();
    let ints = args.len() - operands;
    let ordered = args[operands..].iter().all(|a| matches!(a, ChainArg::Int(_)));
    if !ordered || operands != kind.arity() || ints != kind.numeric_params() {
        return Err(ChainError::ArityMismatch {
            step: index,
            op: kind.name().into(),
            detail: format!(
                "expects {} operand(s) and {} integer parameter(s)",
                kind.arity(),
                kind.numeric_params()
            ),
        });
    }
    if kind == OperatorKind::RepRange {
        if let [ChainArg::Int(k1), ChainArg::Int(k2)] = &args[operands..] {
            if k1 > k2 {
                return Err(ChainError::Parse(ParseError::BadRepetitionBounds {
                    k1: *k1,
                    k2: *k2,
                }));
            }
        }
    }
    Ok(())
}
