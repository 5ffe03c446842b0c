//! Text syntax for elements and model presentation files.
//!
//! Elements are flat rational combinations like `3/2*h1 + -1*t2`, with `0`
//! for the zero element and `inf` for the point at infinity. A model file
//! is line-oriented: a `model hamel` or `model plain orders=<k>` header,
//! then one `gen` line per adjunction in tower order, so each line may only
//! mention generators above it. `#` starts a comment.

use std::fmt::Write as _;

use crate::linear::{GenId, Point, Vector};
use crate::scalar::Scalar;
use crate::tower::cut::{AlphaCut, Cut, CutShape};
use crate::tower::model::{GenRecord, Mode, Model, TowerError};

/// Errors from reading element or model text.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelTextError {
    #[error("column {pos}: {msg}")]
    Expr { pos: usize, msg: String },
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Reject { line: usize, source: TowerError },
}

impl ModelTextError {
    fn expr(pos: usize, msg: impl Into<String>) -> ModelTextError {
        ModelTextError::Expr { pos, msg: msg.into() }
    }

    /// Attaches the model-file line an expression error surfaced on.
    fn at_line(self, line: usize) -> ModelTextError {
        match self {
            ModelTextError::Expr { msg, .. } => ModelTextError::Line { line, msg },
            other => other,
        }
    }
}

/// Renders a finite element canonically: coordinates in generator order,
/// unit coefficients elided, explicit sign inside the coefficient.
pub fn render_expr(model: &Model, v: &Vector) -> String {
    render_expr_sep(model, v, " + ")
}

/// Renders a point, with `inf` for infinity.
pub fn render_point(model: &Model, p: &Point) -> String {
    match p {
        Point::Infinity => "inf".to_string(),
        Point::Finite(v) => render_expr(model, v),
    }
}

/// Compact rendering used inside `key=value` fields of model files.
fn render_expr_compact(model: &Model, v: &Vector) -> String {
    render_expr_sep(model, v, "+")
}

fn render_expr_sep(model: &Model, v: &Vector, sep: &str) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (gen, coeff) in v.iter() {
        if !out.is_empty() {
            out.push_str(sep);
        }
        if coeff == &Scalar::one() {
            out.push_str(model.gen_name(gen));
        } else {
            write!(out, "{coeff}*{}", model.gen_name(gen)).expect("string write");
        }
    }
    out
}

/// Parses a finite element; `inf` is rejected here.
pub fn parse_expr(model: &Model, text: &str) -> Result<Vector, ModelTextError> {
    match parse_point(model, text)? {
        Point::Finite(v) => Ok(v),
        Point::Infinity => Err(ModelTextError::expr(0, "expected a finite element, got `inf`")),
    }
}

/// Parses a point: a linear expression or the lone token `inf`.
pub fn parse_point(model: &Model, text: &str) -> Result<Point, ModelTextError> {
    let mut lexer = Lexer::new(text);
    let first = lexer.next()?;
    let first_pos = lexer.token_start;
    if let Token::Name(name) = &first {
        if name == "inf" {
            if lexer.next()? != Token::End {
                return Err(ModelTextError::expr(lexer.token_start, "`inf` cannot appear inside a sum"));
            }
            return Ok(Point::Infinity);
        }
    }
    let mut parser = ExprParser { model, lexer, lookahead: first, lookahead_pos: first_pos };
    let v = parser.expr()?;
    Ok(Point::Finite(v))
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Plus,
    Minus,
    Star,
    Number(Scalar),
    Name(String),
    End,
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
    /// Byte offset of the token most recently returned by `next`.
    token_start: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Lexer<'a> {
        Lexer { text, pos: 0, token_start: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn next(&mut self) -> Result<Token, ModelTextError> {
        let skip = self.rest().len() - self.rest().trim_start().len();
        self.pos += skip;
        self.token_start = self.pos;
        let Some(c) = self.rest().chars().next() else {
            return Ok(Token::End);
        };
        match c {
            '+' => {
                self.pos += 1;
                Ok(Token::Plus)
            }
            '-' => {
                self.pos += 1;
                Ok(Token::Minus)
            }
            '*' => {
                self.pos += 1;
                Ok(Token::Star)
            }
            c if c.is_ascii_digit() => {
                let len = self
                    .rest()
                    .find(|c: char| !(c.is_ascii_digit() || c == '/'))
                    .unwrap_or(self.rest().len());
                let raw = &self.rest()[..len];
                let value = raw
                    .parse::<Scalar>()
                    .map_err(|e| ModelTextError::expr(self.pos, format!("bad rational `{raw}`: {e}")))?;
                self.pos += len;
                Ok(Token::Number(value))
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let len = self
                    .rest()
                    .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
                    .unwrap_or(self.rest().len());
                let raw = &self.rest()[..len];
                self.pos += len;
                Ok(Token::Name(raw.to_string()))
            }
            other => Err(ModelTextError::expr(self.pos, format!("unexpected character `{other}`"))),
        }
    }
}

struct ExprParser<'a> {
    model: &'a Model,
    lexer: Lexer<'a>,
    lookahead: Token,
    lookahead_pos: usize,
}

impl ExprParser<'_> {
    /// Consumes the lookahead, returning it with its byte offset.
    fn advance(&mut self) -> Result<(Token, usize), ModelTextError> {
        let next = self.lexer.next()?;
        let pos = std::mem::replace(&mut self.lookahead_pos, self.lexer.token_start);
        Ok((std::mem::replace(&mut self.lookahead, next), pos))
    }

    /// `expr := ['-']* term { ('+' | '-') ['-']* term }`
    fn expr(&mut self) -> Result<Vector, ModelTextError> {
        let mut coords: Vec<(GenId, Scalar)> = Vec::new();
        loop {
            let mut sign = Scalar::one();
            while self.lookahead == Token::Minus {
                self.advance()?;
                sign = -sign;
            }
            self.term(sign, &mut coords)?;
            match &self.lookahead {
                Token::Plus => {
                    self.advance()?;
                }
                Token::Minus => {
                    // Consumed by the sign loop of the next term.
                }
                Token::End => break,
                other => {
                    return Err(ModelTextError::expr(
                        self.lookahead_pos,
                        format!("expected `+`, `-`, or end of input, got {other:?}"),
                    ));
                }
            }
        }
        Ok(self.model.element(coords))
    }

    /// `term := rat '*' genname | genname | '0'`
    fn term(&mut self, sign: Scalar, coords: &mut Vec<(GenId, Scalar)>) -> Result<(), ModelTextError> {
        match self.advance()? {
            (Token::Number(n), pos) => {
                if self.lookahead == Token::Star {
                    self.advance()?;
                    match self.advance()? {
                        (Token::Name(name), pos) => {
                            let gen = self.resolve(&name, pos)?;
                            coords.push((gen, sign * n));
                            Ok(())
                        }
                        (other, pos) => Err(ModelTextError::expr(
                            pos,
                            format!("expected a generator name after `*`, got {other:?}"),
                        )),
                    }
                } else if n.is_zero() {
                    Ok(())
                } else {
                    Err(ModelTextError::expr(
                        pos,
                        format!("a bare rational `{n}` denotes no element; only `0` stands alone"),
                    ))
                }
            }
            (Token::Name(name), pos) => {
                let gen = self.resolve(&name, pos)?;
                coords.push((gen, sign));
                Ok(())
            }
            (other, pos) => Err(ModelTextError::expr(pos, format!("expected a term, got {other:?}"))),
        }
    }

    fn resolve(&self, name: &str, pos: usize) -> Result<GenId, ModelTextError> {
        if name == "inf" {
            return Err(ModelTextError::expr(pos, "`inf` cannot appear inside a sum"));
        }
        self.model
            .gen_by_name(name)
            .ok_or_else(|| ModelTextError::expr(pos, format!("unknown generator `{name}`")))
    }
}

/// Renders a model as a presentation file that parses back to it.
pub fn render_model(model: &Model) -> String {
    let mut out = String::new();
    match model.mode() {
        Mode::Hamel => out.push_str("model hamel\n"),
        Mode::Plain { orders } => {
            writeln!(out, "model plain orders={orders}").expect("string write");
        }
    }
    // Each line renders against the prefix model, but names only ever refer
    // to earlier generators, so rendering against the full model is safe.
    for gen in model.gen_ids() {
        let name = model.gen_name(gen);
        match model.gen_record(gen) {
            GenRecord::Value { cut0 } => {
                writeln!(out, "gen {name} = value cut0={}", render_cut(model, cut0))
                    .expect("string write");
            }
            GenRecord::Ball { acut, cut0 } => {
                writeln!(
                    out,
                    "gen {name} = ball alpha={} pivot={} weak={} cut0={}",
                    render_expr_compact(model, &acut.alpha),
                    render_expr_compact(model, &acut.pivot),
                    acut.weak,
                    render_cut(model, cut0),
                )
                .expect("string write");
            }
            GenRecord::Free { cuts } => {
                write!(out, "gen {name} = free").expect("string write");
                for cut in cuts {
                    write!(out, " cut{}={}", cut.order, render_cut(model, cut)).expect("string write");
                }
                out.push('\n');
            }
        }
    }
    out
}

fn render_cut(model: &Model, cut: &Cut) -> String {
    match &cut.shape {
        CutShape::Everything => "(all)".to_string(),
        CutShape::Nothing => "(none)".to_string(),
        CutShape::BelowStrict(a) => format!("(< {})", render_expr(model, a)),
        CutShape::BelowWeak(a) => format!("(<= {})", render_expr(model, a)),
    }
}

/// Parses a model presentation file.
pub fn parse_model(text: &str) -> Result<Model, ModelTextError> {
    let mut model: Option<Model> = None;
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        match model.take() {
            None => model = Some(parse_header(content, line)?),
            Some(m) => model = Some(parse_gen_line(&m, content, line)?),
        }
    }
    model.ok_or_else(|| ModelTextError::Line { line: 1, msg: "missing `model` header".to_string() })
}

fn parse_header(content: &str, line: usize) -> Result<Model, ModelTextError> {
    let fail = |msg: &str| ModelTextError::Line { line, msg: msg.to_string() };
    let mut words = content.split_whitespace();
    if words.next() != Some("model") {
        return Err(fail("expected `model hamel` or `model plain orders=<k>`"));
    }
    match words.next() {
        Some("hamel") => {
            if words.next().is_some() {
                return Err(fail("unexpected input after `model hamel`"));
            }
            Ok(Model::new_hamel())
        }
        Some("plain") => {
            let spec = words.next().ok_or_else(|| fail("expected `orders=<k>`"))?;
            if words.next().is_some() {
                return Err(fail("unexpected input after `orders=<k>`"));
            }
            let k = spec
                .strip_prefix("orders=")
                .and_then(|n| n.parse::<usize>().ok())
                .ok_or_else(|| fail("expected `orders=<k>` with a positive integer"))?;
            Model::new_plain(k).map_err(|source| ModelTextError::Reject { line, source })
        }
        _ => Err(fail("expected mode `hamel` or `plain`")),
    }
}

fn parse_gen_line(model: &Model, content: &str, line: usize) -> Result<Model, ModelTextError> {
    let fail = |msg: String| ModelTextError::Line { line, msg };
    let fields = split_fields(content).map_err(|msg| fail(msg.to_string()))?;
    if fields.len() < 4 || fields[0] != "gen" || fields[2] != "=" {
        return Err(fail("expected `gen <name> = <kind> ...`".to_string()));
    }
    let name = fields[1].as_str();
    let kind = &fields[3];
    let rest = &fields[4..];
    let reject = |source: TowerError| ModelTextError::Reject { line, source };
    let (next, _) = match kind.as_str() {
        "value" => {
            let [cut] = rest else {
                return Err(fail("`value` takes exactly `cut0=(...)`".to_string()));
            };
            let cut0 = parse_cut_field(model, cut, 0).map_err(|e| e.at_line(line))?;
            model.adjoin_value(Some(name), cut0).map_err(reject)?
        }
        "ball" => {
            let [alpha, pivot, weak, cut] = rest else {
                return Err(fail(
                    "`ball` takes `alpha=<expr> pivot=<expr> weak=<bool> cut0=(...)`".to_string(),
                ));
            };
            let alpha = parse_value_field(model, alpha, "alpha").map_err(|e| e.at_line(line))?;
            let pivot = parse_value_field(model, pivot, "pivot").map_err(|e| e.at_line(line))?;
            let weak = match field_value(weak, "weak").map_err(|e| e.at_line(line))? {
                "true" => true,
                "false" => false,
                other => return Err(fail(format!("weak must be `true` or `false`, got `{other}`"))),
            };
            let cut0 = parse_cut_field(model, cut, 0).map_err(|e| e.at_line(line))?;
            let acut = AlphaCut { alpha, pivot, weak };
            model.adjoin_ball(Some(name), acut, cut0).map_err(reject)?
        }
        "free" => {
            let cuts = rest
                .iter()
                .enumerate()
                .map(|(i, field)| parse_cut_field(model, field, i).map_err(|e| e.at_line(line)))
                .collect::<Result<Vec<_>, _>>()?;
            model.adjoin_free(Some(name), cuts).map_err(reject)?
        }
        other => return Err(fail(format!("unknown generator kind `{other}`"))),
    };
    Ok(next)
}

/// Splits a line on whitespace, keeping `(...)` groups intact.
fn split_fields(content: &str) -> Result<Vec<String>, &'static str> {
    let mut fields = Vec::new();
    let mut current = String::new();
    let mut depth = 0usize;
    for c in content.chars() {
        match c {
            '(' => {
                depth += 1;
                current.push(c);
            }
            ')' => {
                depth = depth.checked_sub(1).ok_or("unbalanced `)`")?;
                current.push(c);
            }
            c if c.is_whitespace() && depth == 0 => {
                if !current.is_empty() {
                    fields.push(std::mem::take(&mut current));
                }
            }
            c => current.push(c),
        }
    }
    if depth != 0 {
        return Err("unbalanced `(`");
    }
    if !current.is_empty() {
        fields.push(current);
    }
    Ok(fields)
}

fn field_value<'a>(field: &'a str, key: &str) -> Result<&'a str, ModelTextError> {
    field
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix('='))
        .ok_or_else(|| ModelTextError::expr(0, format!("expected `{key}=...`, got `{field}`")))
}

fn parse_value_field(model: &Model, field: &str, key: &str) -> Result<Vector, ModelTextError> {
    parse_expr(model, field_value(field, key)?)
}

fn parse_cut_field(model: &Model, field: &str, position: usize) -> Result<Cut, ModelTextError> {
    let key = format!("cut{position}");
    let value = field_value(field, &key)?;
    let inner = value
        .strip_prefix('(')
        .and_then(|v| v.strip_suffix(')'))
        .ok_or_else(|| ModelTextError::expr(0, format!("expected `{key}=(<op> <expr>)`")))?
        .trim();
    if inner == "all" {
        return Ok(Cut::everything(position));
    }
    if inner == "none" {
        return Ok(Cut::nothing(position));
    }
    if let Some(anchor) = inner.strip_prefix("<=") {
        return Ok(Cut::below_weak(position, parse_expr(model, anchor)?));
    }
    if let Some(anchor) = inner.strip_prefix('<') {
        return Ok(Cut::below_strict(position, parse_expr(model, anchor)?));
    }
    Err(ModelTextError::expr(0, format!("unknown cut operator in `{inner}`")))
}
