//! Parser, typed AST, and canonical renderer for the step-plan language:
//!
//! ```text
//! Step 1:obj1 = filter_object("table",all_obj)
//! Step 2:obj2 = filter_part(["six","red","drawer"],obj1)
//! ```
//!
//! Whitespace around `:`, `=`, and list commas is tolerated; the canonical
//! rendering produced by [`render_plan`] uses none inside argument lists.
//! String literals are double-quoted only. Integer literals are legal inside
//! list literals (`filter_part([num1,"leg bar"],...)` after substitution) and
//! nowhere else.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: expected {expected}")]
pub struct ParseError {
    pub line: usize,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arg {
    Str(String),
    Int(i64),
    Var(String),
    List(Vec<ListItem>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ListItem {
    Str(String),
    Int(i64),
    Var(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Call {
    pub function: String,
    pub args: Vec<Arg>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanStep {
    pub index: i64,
    pub target: String,
    pub call: Call,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Plan {
    pub steps: Vec<PlanStep>,
}

impl Plan {
    pub fn new(steps: Vec<PlanStep>) -> Self {
        Plan { steps }
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    /// Concatenation used by the search when a candidate extends a prefix.
    pub fn extended_with(&self, suffix: &Plan) -> Plan {
        let mut steps = self.steps.clone();
        steps.extend(suffix.steps.iter().cloned());
        Plan { steps }
    }
}

impl fmt::Display for Plan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_plan(self))
    }
}

struct LineParser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl LineParser {
    fn new(src: &str, line: usize) -> Self {
        LineParser {
            chars: src.chars().collect(),
            pos: 0,
            line,
        }
    }

    fn err(&self, expected: &str) -> ParseError {
        ParseError {
            line: self.line,
            expected: expected.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect_char(&mut self, want: char, expected: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.bump() == Some(want) {
            Ok(())
        } else {
            Err(self.err(expected))
        }
    }

    fn keyword_step(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        let kw: String = self.chars[self.pos..].iter().take(4).collect();
        if kw == "Step" {
            self.pos += 4;
            Ok(())
        } else {
            Err(self.err("keyword \"Step\""))
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("an integer"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| self.err("an integer"))
    }

    fn identifier(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => self.pos += 1,
            _ => return Err(self.err("an identifier")),
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn string_literal(&mut self) -> Result<String, ParseError> {
        // Caller consumed the opening quote.
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c == '"' {
                let text: String = self.chars[start..self.pos].iter().collect();
                self.pos += 1;
                return Ok(text);
            }
            self.pos += 1;
        }
        Err(self.err("a closing double quote"))
    }

    fn list_item(&mut self) -> Result<ListItem, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('"') => {
                self.pos += 1;
                Ok(ListItem::Str(self.string_literal()?))
            }
            Some(c) if c.is_ascii_digit() => Ok(ListItem::Int(self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => Ok(ListItem::Var(self.identifier()?)),
            Some('\'') => Err(self.err("a double-quoted string (single quotes are not accepted)")),
            _ => Err(self.err("a string, integer, or variable inside the list")),
        }
    }

    fn arg(&mut self) -> Result<Arg, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('"') => {
                self.pos += 1;
                Ok(Arg::Str(self.string_literal()?))
            }
            Some('[') => {
                self.pos += 1;
                let mut items = vec![self.list_item()?];
                loop {
                    self.skip_ws();
                    match self.bump() {
                        Some(',') => items.push(self.list_item()?),
                        Some(']') => break,
                        _ => return Err(self.err("\",\" or \"]\" in the list literal")),
                    }
                }
                Ok(Arg::List(items))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => Ok(Arg::Var(self.identifier()?)),
            Some(c) if c.is_ascii_digit() => {
                Err(self
                    .err("a string, variable, or list (bare integers are only legal inside lists)"))
            }
            Some('\'') => Err(self.err("a double-quoted string (single quotes are not accepted)")),
            _ => Err(self.err("an argument")),
        }
    }

    fn step(&mut self) -> Result<PlanStep, ParseError> {
        self.keyword_step()?;
        let index = self.integer()?;
        self.expect_char(':', "\":\" after the step index")?;
        let target = self.identifier()?;
        self.expect_char('=', "\"=\" after the target variable")?;
        let function = self.identifier()?;
        self.expect_char('(', "\"(\" after the function name")?;
        let mut args = Vec::new();
        self.skip_ws();
        if self.peek() == Some(')') {
            self.pos += 1;
        } else {
            args.push(self.arg()?);
            loop {
                self.skip_ws();
                match self.bump() {
                    Some(',') => args.push(self.arg()?),
                    Some(')') => break,
                    _ => return Err(self.err("\",\" or \")\" in the argument list")),
                }
            }
        }
        self.skip_ws();
        if self.pos != self.chars.len() {
            return Err(self.err("end of line after the call"));
        }
        Ok(PlanStep {
            index,
            target,
            call: Call { function, args },
        })
    }
}

fn parse_step_line(line: &str, line_no: usize) -> Result<PlanStep, ParseError> {
    LineParser::new(line, line_no).step()
}

/// Strict parse: blank lines and one leading "Answer:" header are skipped,
/// every other line must be a step. The first error aborts.
pub fn parse_plan(text: &str) -> Result<Plan, ParseError> {
    let mut steps = Vec::new();
    let mut seen_content = false;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if !seen_content && line == "Answer:" {
            seen_content = true;
            continue;
        }
        seen_content = true;
        steps.push(parse_step_line(raw, i + 1)?);
    }
    Ok(Plan { steps })
}

/// Lenient scan of arbitrary chat output: keeps only the lines that parse as
/// steps, indices verbatim. Never fails; an empty plan means the generation
/// was unusable.
pub fn extract_steps_from_response(text: &str) -> Plan {
    let steps = text
        .lines()
        .enumerate()
        .filter_map(|(i, raw)| parse_step_line(raw, i + 1).ok())
        .collect();
    Plan { steps }
}

fn render_list_item(item: &ListItem) -> String {
    match item {
        ListItem::Str(s) => format!("\"{s}\""),
        ListItem::Int(n) => n.to_string(),
        ListItem::Var(v) => v.clone(),
    }
}

fn render_arg(arg: &Arg) -> String {
    match arg {
        Arg::Str(s) => format!("\"{s}\""),
        Arg::Int(n) => n.to_string(),
        Arg::Var(v) => v.clone(),
        Arg::List(items) => {
            let inner: Vec<String> = items.iter().map(render_list_item).collect();
            format!("[{}]", inner.join(","))
        }
    }
}

pub fn render_step(step: &PlanStep) -> String {
    let args: Vec<String> = step.call.args.iter().map(render_arg).collect();
    format!(
        "Step {}:{} = {}({})",
        step.index,
        step.target,
        step.call.function,
        args.join(",")
    )
}

/// Canonical text form, one step per line. `parse_plan(render_plan(p)) == p`.
pub fn render_plan(plan: &Plan) -> String {
    plan.steps
        .iter()
        .map(render_step)
        .collect::<Vec<_>>()
        .join("\n")
}
