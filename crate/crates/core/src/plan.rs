//! Fusion plans: a small expression language stating how the opinions of a
//! topic's representations combine in a given search scenario.
//!
//! ```text
//! expr    := cons
//! cons    := rec ( "(+)" rec )*            left-associative consensus
//! rec     := primary ( "(x)" primary )*    left-associative recommendation
//! primary := "rep" DIGIT
//!          | "opinion(" num "," num "," num "," num ")"
//!          | "consensus(" expr "," expr ")"
//!          | "recommend(" expr "," expr ")"
//!          | "(" expr ")"
//! ```
//!
//! Whitespace between tokens is insignificant. In `recommend(t, r)` and
//! `t (x) r` the left operand is the trust opinion and the right operand the
//! recommended opinion.
//!
//! Using a representation as the trust operand (`recommend(rep2, rep4)`)
//! reinterprets that representation's opinion about the information need as
//! trust in the other representation: representation 2 acts as context that
//! gates how much of representation 4 gets through.

use std::fmt;

use thiserror::Error;

use crate::fusion::{self, FusionError};
use crate::opinion::Opinion;
use crate::polyrep::{representation_opinion, EvidenceExtractor, PolyrepError, RepIndex, Topic};

/// Maximum nesting depth of a plan's syntax tree.
pub const MAX_DEPTH: usize = 64;

/// Half-open byte range `[start, end)` into the plan source.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum PlanExpr {
    RepRef(RepIndex),
    Literal { belief: f64, disbelief: f64, uncertainty: f64, base_rate: f64 },
    Consensus(Box<PlanNode>, Box<PlanNode>),
    Recommend { trust: Box<PlanNode>, rec: Box<PlanNode> },
}

/// A syntax tree node with its source span. Spans are not part of equality:
/// two nodes are equal when their trees are.
#[derive(Debug, Clone)]
pub struct PlanNode {
    pub expr: PlanExpr,
    pub span: Span,
}

impl PartialEq for PlanNode {
    fn eq(&self, other: &Self) -> bool {
        self.expr == other.expr
    }
}

impl PlanNode {
    pub fn new(expr: PlanExpr) -> Self {
        Self { expr, span: Span::default() }
    }

    pub fn rep(index: usize) -> Self {
        Self::new(PlanExpr::RepRef(RepIndex::new(index).expect("index in 1..=5")))
    }

    pub fn literal(belief: f64, disbelief: f64, uncertainty: f64, base_rate: f64) -> Self {
        Self::new(PlanExpr::Literal { belief, disbelief, uncertainty, base_rate })
    }

    pub fn consensus(left: PlanNode, right: PlanNode) -> Self {
        Self::new(PlanExpr::Consensus(Box::new(left), Box::new(right)))
    }

    pub fn recommend(trust: PlanNode, rec: PlanNode) -> Self {
        Self::new(PlanExpr::Recommend { trust: Box::new(trust), rec: Box::new(rec) })
    }

    fn children(&self) -> Vec<&PlanNode> {
        match &self.expr {
            PlanExpr::RepRef(_) | PlanExpr::Literal { .. } => vec![],
            PlanExpr::Consensus(l, r) => vec![l, r],
            PlanExpr::Recommend { trust, rec } => vec![trust, rec],
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.children().into_iter().map(PlanNode::node_count).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children().into_iter().map(PlanNode::depth).max().unwrap_or(0)
    }
}

/// Prints the canonical function-call form, which parses back to the same tree.
impl fmt::Display for PlanNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.expr {
            PlanExpr::RepRef(i) => write!(f, "rep{i}"),
            PlanExpr::Literal { belief, disbelief, uncertainty, base_rate } => {
                write!(f, "opinion({belief}, {disbelief}, {uncertainty}, {base_rate})")
            }
            PlanExpr::Consensus(l, r) => write!(f, "consensus({l}, {r})"),
            PlanExpr::Recommend { trust, rec } => write!(f, "recommend({trust}, {rec})"),
        }
    }
}

/// A parsed plan together with the text it came from.
#[derive(Debug, Clone)]
pub struct Plan {
    source: String,
    root: PlanNode,
}

impl Plan {
    pub fn root(&self) -> &PlanNode {
        &self.root
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Source text covered by a span, or the canonical rendering of the whole
    /// plan for synthetic nodes.
    pub fn excerpt(&self, span: Span) -> &str {
        self.source.get(span.start..span.end).unwrap_or(&self.source)
    }

    pub fn pretty(&self) -> String {
        self.root.to_string()
    }
}

impl From<PlanNode> for Plan {
    fn from(root: PlanNode) -> Self {
        Plan { source: root.to_string(), root }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    /// 1-based byte offset into the plan source.
    pub offset: usize,
    /// Tokens that would have been accepted here; empty for non-syntax errors.
    pub expected: Vec<String>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(f64),
    LParen,
    RParen,
    Comma,
    ConsensusOp,
    RecommendOp,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(n) => format!("number `{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::ConsensusOp => "`(+)`".into(),
            Tok::RecommendOp => "`(x)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' if bytes.get(i + 1..i + 3) == Some(b"+)") => {
                i += 3;
                Tok::ConsensusOp
            }
            b'(' if bytes.get(i + 1..i + 3) == Some(b"x)") => {
                i += 3;
                Tok::RecommendOp
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b',' => {
                i += 1;
                Tok::Comma
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                Tok::Ident(src[start..i].to_string())
            }
            c if c.is_ascii_digit() || c == b'.' || c == b'-' || c == b'+' => {
                i += 1;
                while i < bytes.len() {
                    let d = bytes[i];
                    let exp_sign = (d == b'-' || d == b'+') && matches!(bytes[i - 1], b'e' | b'E');
                    if d.is_ascii_digit() || d == b'.' || d == b'e' || d == b'E' || exp_sign {
                        i += 1;
                    } else {
                        break;
                    }
                }
                let text = &src[start..i];
                let value = text.parse::<f64>().map_err(|_| ParseError {
                    offset: start + 1,
                    expected: vec!["number".into()],
                    message: format!("malformed number `{text}`"),
                })?;
                Tok::Number(value)
            }
            _ => {
                let ch = src[start..].chars().next().expect("non-empty remainder");
                return Err(ParseError {
                    offset: start + 1,
                    expected: vec![],
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((tok, Span { start, end: i }));
    }
    out.push((Tok::Eof, Span { start: src.len(), end: src.len() }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    /// Alternatives tried at `expected_at` without success.
    expected: Vec<&'static str>,
    expected_at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn prev_end(&self) -> usize {
        self.pos.checked_sub(1).map_or(0, |p| self.toks[p].1.end)
    }

    fn note(&mut self, what: &'static str) {
        let at = self.span().start;
        if at > self.expected_at || self.expected.is_empty() {
            self.expected.clear();
            self.expected_at = at;
        }
        if at == self.expected_at && !self.expected.contains(&what) {
            self.expected.push(what);
        }
    }

    /// Consumes `tok` if next, otherwise records it as an expected alternative.
    fn eat(&mut self, tok: &Tok, what: &'static str) -> bool {
        if self.peek() == tok {
            self.pos += 1;
            true
        } else {
            self.note(what);
            false
        }
    }

    fn unexpected(&mut self) -> ParseError {
        let at = self.span().start;
        let expected = if self.expected_at == at { self.expected.clone() } else { vec![] };
        let found = self.peek().describe();
        let list = expected.join(", ");
        ParseError {
            offset: at + 1,
            expected: expected.into_iter().map(String::from).collect(),
            message: if list.is_empty() {
                format!("unexpected {found}")
            } else {
                format!("expected one of {list}; found {found}")
            },
        }
    }

    fn expect(&mut self, tok: Tok, what: &'static str) -> Result<(), ParseError> {
        if self.eat(&tok, what) {
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn error_at(offset: usize, message: String) -> ParseError {
        ParseError { offset: offset + 1, expected: vec![], message }
    }

    fn binary(
        &mut self,
        left: PlanNode,
        right: PlanNode,
        op_start: usize,
        build: fn(Box<PlanNode>, Box<PlanNode>) -> PlanExpr,
    ) -> Result<PlanNode, ParseError> {
        let span = Span { start: left.span.start, end: right.span.end };
        let node = PlanNode { expr: build(Box::new(left), Box::new(right)), span };
        if node.depth() > MAX_DEPTH {
            return Err(Self::error_at(op_start, format!("plan nests deeper than {MAX_DEPTH} levels")));
        }
        Ok(node)
    }

    fn expr(&mut self, nesting: usize) -> Result<PlanNode, ParseError> {
        let mut left = self.rec(nesting)?;
        loop {
            let op_start = self.span().start;
            if !self.eat(&Tok::ConsensusOp, "`(+)`") {
                return Ok(left);
            }
            let right = self.rec(nesting)?;
            left = self.binary(left, right, op_start, PlanExpr::Consensus)?;
        }
    }

    fn rec(&mut self, nesting: usize) -> Result<PlanNode, ParseError> {
        let mut left = self.primary(nesting)?;
        loop {
            let op_start = self.span().start;
            if !self.eat(&Tok::RecommendOp, "`(x)`") {
                return Ok(left);
            }
            let right = self.primary(nesting)?;
            left = self.binary(left, right, op_start, |trust, rec| PlanExpr::Recommend { trust, rec })?;
        }
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        if let Tok::Number(n) = *self.peek() {
            self.pos += 1;
            Ok(n)
        } else {
            self.note("number");
            Err(self.unexpected())
        }
    }

    fn primary(&mut self, nesting: usize) -> Result<PlanNode, ParseError> {
        let start = self.span().start;
        if nesting >= MAX_DEPTH {
            return Err(Self::error_at(start, format!("plan nests deeper than {MAX_DEPTH} levels")));
        }
        let ident = match self.peek().clone() {
            Tok::Ident(s) => s,
            Tok::LParen => {
                self.pos += 1;
                let mut inner = self.expr(nesting + 1)?;
                self.expect(Tok::RParen, "`)`")?;
                inner.span = Span { start, end: self.prev_end() };
                return Ok(inner);
            }
            _ => {
                for what in ["`rep1`..`rep5`", "`opinion(`", "`consensus(`", "`recommend(`", "`(`"] {
                    self.note(what);
                }
                return Err(self.unexpected());
            }
        };

        if let Some(digits) = ident.strip_prefix("rep") {
            let index = digits
                .parse::<usize>()
                .ok()
                .filter(|_| digits.len() == 1)
                .and_then(|i| RepIndex::new(i).ok())
                .ok_or_else(|| Self::error_at(start, format!("`{ident}` is not a representation (rep1..rep5)")))?;
            self.pos += 1;
            return Ok(PlanNode { expr: PlanExpr::RepRef(index), span: self.toks[self.pos - 1].1 });
        }

        let expr = match ident.as_str() {
            "opinion" => {
                self.pos += 1;
                self.expect(Tok::LParen, "`(`")?;
                let mut v = [0.0; 4];
                for (k, slot) in v.iter_mut().enumerate() {
                    if k > 0 {
                        self.expect(Tok::Comma, "`,`")?;
                    }
                    *slot = self.number()?;
                }
                self.expect(Tok::RParen, "`)`")?;
                Opinion::new("literal", "", v[0], v[1], v[2], v[3])
                    .map_err(|e| Self::error_at(start, format!("invalid opinion literal: {e}")))?;
                PlanExpr::Literal { belief: v[0], disbelief: v[1], uncertainty: v[2], base_rate: v[3] }
            }
            "consensus" | "recommend" => {
                self.pos += 1;
                self.expect(Tok::LParen, "`(`")?;
                let left = self.expr(nesting + 1)?;
                self.expect(Tok::Comma, "`,`")?;
                let right = self.expr(nesting + 1)?;
                self.expect(Tok::RParen, "`)`")?;
                if ident == "consensus" {
                    PlanExpr::Consensus(Box::new(left), Box::new(right))
                } else {
                    PlanExpr::Recommend { trust: Box::new(left), rec: Box::new(right) }
                }
            }
            _ => {
                for what in ["`rep1`..`rep5`", "`opinion(`", "`consensus(`", "`recommend(`", "`(`"] {
                    self.note(what);
                }
                return Err(self.unexpected());
            }
        };
        let node = PlanNode { expr, span: Span { start, end: self.prev_end() } };
        if node.depth() > MAX_DEPTH {
            return Err(Self::error_at(start, format!("plan nests deeper than {MAX_DEPTH} levels")));
        }
        Ok(node)
    }
}

/// Parses a plan expression.
pub fn parse_plan(source: &str) -> Result<Plan, ParseError> {
    let mut p = Parser { toks: lex(source)?, pos: 0, expected: Vec::new(), expected_at: 0 };
    let root = p.expr(0)?;
    if *p.peek() != Tok::Eof {
        p.note("end of input");
        return Err(p.unexpected());
    }
    Ok(Plan { source: source.to_string(), root })
}

/// What a trace step did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceOp {
    Representation(RepIndex),
    Literal,
    Consensus,
    Recommend,
}

impl fmt::Display for TraceOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceOp::Representation(i) => write!(f, "rep{i}"),
            TraceOp::Literal => f.write_str("literal"),
            TraceOp::Consensus => f.write_str("consensus"),
            TraceOp::Recommend => f.write_str("recommend"),
        }
    }
}

/// One evaluated node. Steps are recorded bottom-up (post-order); `operands`
/// index earlier steps.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    pub op: TraceOp,
    pub operands: Vec<usize>,
    pub span: Span,
    pub result: Opinion,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub opinion: Opinion,
    pub trace: Vec<TraceStep>,
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("{source} in `{subtree}` (bytes {}..{})", span.start, span.end)]
    Fusion {
        source: FusionError,
        span: Span,
        subtree: String,
    },
    #[error(transparent)]
    Representation(#[from] PolyrepError),
}

/// Inputs a plan is evaluated against.
pub struct PlanContext<'a> {
    pub topic: &'a Topic,
    pub extractor: &'a dyn EvidenceExtractor,
    pub base_rate: f64,
}

/// Evaluates a plan bottom-up over one topic.
pub fn evaluate_plan(plan: &Plan, ctx: &PlanContext<'_>) -> Result<Evaluation, EvalError> {
    let mut trace = Vec::with_capacity(plan.root.node_count());
    let idx = eval_node(plan, &plan.root, ctx, &mut trace)?;
    Ok(Evaluation { opinion: trace[idx].result.clone(), trace })
}

fn eval_node(
    plan: &Plan,
    node: &PlanNode,
    ctx: &PlanContext<'_>,
    trace: &mut Vec<TraceStep>,
) -> Result<usize, EvalError> {
    let fusion_err = |source: FusionError| EvalError::Fusion {
        source,
        span: node.span,
        subtree: if node.span == Span::default() { node.to_string() } else { plan.excerpt(node.span).to_string() },
    };
    let (op, operands, result) = match &node.expr {
        PlanExpr::RepRef(i) => (
            TraceOp::Representation(*i),
            vec![],
            representation_opinion(ctx.topic, *i, ctx.extractor, ctx.base_rate)?,
        ),
        PlanExpr::Literal { belief, disbelief, uncertainty, base_rate } => (
            TraceOp::Literal,
            vec![],
            Opinion::new("literal", ctx.topic.id(), *belief, *disbelief, *uncertainty, *base_rate)
                .map_err(PolyrepError::from)?,
        ),
        PlanExpr::Consensus(l, r) => {
            let li = eval_node(plan, l, ctx, trace)?;
            let ri = eval_node(plan, r, ctx, trace)?;
            let fused = fusion::consensus(&trace[li].result, &trace[ri].result).map_err(fusion_err)?;
            (TraceOp::Consensus, vec![li, ri], fused)
        }
        PlanExpr::Recommend { trust, rec } => {
            let ti = eval_node(plan, trust, ctx, trace)?;
            let ri = eval_node(plan, rec, ctx, trace)?;
            let recommended = &trace[ri].result;
            let trust_op = trace[ti].result.with_proposition(recommended.owner());
            let fused = fusion::recommend(&trust_op, recommended).map_err(fusion_err)?;
            (TraceOp::Recommend, vec![ti, ri], fused)
        }
    };
    trace.push(TraceStep { op, operands, span: node.span, result });
    Ok(trace.len() - 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("scenario file line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("scenario `{name}` (line {line}, column {column}): {source}")]
    Plan {
        name: String,
        line: usize,
        column: usize,
        source: ParseError,
    },
    #[error("no scenario named `{0}`")]
    Unknown(String),
}

/// Named plans read from a scenario file: one `name = <plan>` per line, `#`
/// starting a comment.
#[derive(Debug, Clone, Default)]
pub struct ScenarioSet {
    scenarios: Vec<(String, Plan)>,
}

impl ScenarioSet {
    pub fn parse(text: &str) -> Result<Self, ScenarioError> {
        let mut scenarios: Vec<(String, Plan)> = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let content = raw.split('#').next().unwrap_or_default();
            if content.trim().is_empty() {
                continue;
            }
            let (name, expr) = content.split_once('=').ok_or_else(|| ScenarioError::Syntax {
                line,
                message: "expected `name = <plan expression>`".into(),
            })?;
            let name = name.trim();
            if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '-') {
                return Err(ScenarioError::Syntax { line, message: format!("invalid scenario name `{name}`") });
            }
            if scenarios.iter().any(|(existing, _)| existing == name) {
                return Err(ScenarioError::Syntax { line, message: format!("scenario `{name}` defined twice") });
            }
            let trimmed = expr.trim();
            let expr_start = content.len() - expr.len() + (expr.len() - expr.trim_start().len());
            let plan = parse_plan(trimmed).map_err(|source| ScenarioError::Plan {
                name: name.to_string(),
                line,
                column: expr_start + source.offset,
                source,
            })?;
            scenarios.push((name.to_string(), plan));
        }
        Ok(Self { scenarios })
    }

    pub fn get(&self, name: &str) -> Result<&Plan, ScenarioError> {
        self.scenarios
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
            .ok_or_else(|| ScenarioError::Unknown(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.scenarios.iter().map(|(n, _)| n.as_str())
    }

    pub fn len(&self) -> usize {
        self.scenarios.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scenarios.is_empty()
    }
}
