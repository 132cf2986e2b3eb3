//! Equation language over the signature and derived operations.
//!
//! Concrete syntax: `~` complement, `*` for `·`, `@` for `∘`, `+` for sum,
//! `p(_,_,_)`, constants `0` and `1`, and lowercase variables. Precedence is
//! `~ > * > @ > +`, all binary operators left-associative. An `=` at top
//! level makes an equation.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::model::{DerivedOps, PointedTernaryAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Zero,
    One,
    Var(String),
    P(Box<Term>, Box<Term>, Box<Term>),
    Bar(Box<Term>),
    Dot(Box<Term>, Box<Term>),
    Circ(Box<Term>, Box<Term>),
    Plus(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    /// Collects the distinct variable names, sorted lexicographically.
    pub fn variables(&self) -> Vec<String> {
        let mut vars = Vec::new();
        self.collect_vars(&mut vars);
        vars.sort();
        vars.dedup();
        vars
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Zero | Term::One => {}
            Term::Var(v) => out.push(v.clone()),
            Term::P(a, b, c) => {
                a.collect_vars(out);
                b.collect_vars(out);
                c.collect_vars(out);
            }
            Term::Bar(t) => t.collect_vars(out),
            Term::Dot(l, r) | Term::Circ(l, r) | Term::Plus(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Term::Plus(..) => 1,
            Term::Circ(..) => 2,
            Term::Dot(..) => 3,
            Term::Bar(..) => 4,
            Term::Zero | Term::One | Term::Var(..) | Term::P(..) => 5,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        let parens = prec < min;
        if parens {
            write!(f, "(")?;
        }
        match self {
            Term::Zero => write!(f, "0")?,
            Term::One => write!(f, "1")?,
            Term::Var(v) => write!(f, "{v}")?,
            Term::P(a, b, c) => {
                write!(f, "p(")?;
                a.fmt_prec(f, 1)?;
                write!(f, ",")?;
                b.fmt_prec(f, 1)?;
                write!(f, ",")?;
                c.fmt_prec(f, 1)?;
                write!(f, ")")?;
            }
            Term::Bar(t) => {
                write!(f, "~")?;
                t.fmt_prec(f, 4)?;
            }
            Term::Dot(l, r) => {
                l.fmt_prec(f, 3)?;
                write!(f, "*")?;
                r.fmt_prec(f, 4)?;
            }
            Term::Circ(l, r) => {
                l.fmt_prec(f, 2)?;
                write!(f, "@")?;
                r.fmt_prec(f, 3)?;
            }
            Term::Plus(l, r) => {
                l.fmt_prec(f, 1)?;
                write!(f, "+")?;
                r.fmt_prec(f, 2)?;
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 1)
    }
}

/// `lhs = rhs` with the sorted union of variables of both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    lhs: Term,
    rhs: Term,
    vars: Vec<String>,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Equation {
        let mut vars = lhs.variables();
        vars.extend(rhs.variables());
        vars.sort();
        vars.dedup();
        Equation { lhs, rhs, vars }
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
}

/// Result of [`parse`]: the source was a bare term or an equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Term(Term),
    Equation(Equation),
}

/// Parses a term or, when a top-level `=` is present, an equation.
pub fn parse(src: &str) -> Result<Parsed, ParseError> {
    let mut p = Parser::new(src);
    let lhs = p.parse_sum()?;
    p.skip_ws();
    if p.peek() == Some('=') {
        p.bump();
        let rhs = p.parse_sum()?;
        p.expect_end()?;
        Ok(Parsed::Equation(Equation::new(lhs, rhs)))
    } else {
        p.expect_end()?;
        Ok(Parsed::Term(lhs))
    }
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    match parse(src)? {
        Parsed::Term(t) => Ok(t),
        Parsed::Equation(_) => Err(ParseError::Syntax {
            pos: 0,
            message: "expected a term, found an equation".to_string(),
        }),
    }
}

pub fn parse_equation(src: &str) -> Result<Equation, ParseError> {
    match parse(src)? {
        Parsed::Term(_) => Err(ParseError::Syntax {
            pos: src.len(),
            message: "expected `=` between two terms".to_string(),
        }),
        Parsed::Equation(e) => Ok(e),
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(got) if got == c => {
                self.bump();
                Ok(())
            }
            Some(got) => self.error(format!("expected `{c}`, found `{got}`")),
            None => self.error(format!("expected `{c}`, found end of input")),
        }
    }

    fn expect_end(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(format!("unexpected `{c}`")),
        }
    }

    fn parse_sum(&mut self) -> Result<Term, ParseError> {
        let mut t = self.parse_circ()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('+') {
                self.bump();
                let rhs = self.parse_circ()?;
                t = Term::Plus(Box::new(t), Box::new(rhs));
            } else {
                return Ok(t);
            }
        }
    }

    fn parse_circ(&mut self) -> Result<Term, ParseError> {
        let mut t = self.parse_prod()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('@') {
                self.bump();
                let rhs = self.parse_prod()?;
                t = Term::Circ(Box::new(t), Box::new(rhs));
            } else {
                return Ok(t);
            }
        }
    }

    fn parse_prod(&mut self) -> Result<Term, ParseError> {
        let mut t = self.parse_unary()?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.bump();
                let rhs = self.parse_unary()?;
                t = Term::Dot(Box::new(t), Box::new(rhs));
            } else {
                return Ok(t);
            }
        }
    }

    fn parse_unary(&mut self) -> Result<Term, ParseError> {
        self.skip_ws();
        if self.peek() == Some('~') {
            self.bump();
            let t = self.parse_unary()?;
            Ok(Term::Bar(Box::new(t)))
        } else {
            self.parse_atom()
        }
    }

    fn parse_atom(&mut self) -> Result<Term, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('0') => {
                self.bump();
                Ok(Term::Zero)
            }
            Some('1') => {
                self.bump();
                Ok(Term::One)
            }
            Some('(') => {
                self.bump();
                let t = self.parse_sum()?;
                self.expect(')')?;
                Ok(t)
            }
            Some(c) if c.is_ascii_lowercase() => {
                let ident = self.parse_ident();
                if ident == "p" {
                    self.expect('(')?;
                    let a = self.parse_sum()?;
                    self.expect(',')?;
                    let b = self.parse_sum()?;
                    self.expect(',')?;
                    let c = self.parse_sum()?;
                    self.expect(')')?;
                    Ok(Term::P(Box::new(a), Box::new(b), Box::new(c)))
                } else {
                    Ok(Term::Var(ident))
                }
            }
            Some(c) => self.error(format!("unexpected `{c}`")),
            None => self.error("unexpected end of input"),
        }
    }

    fn parse_ident(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
        {
            self.bump();
        }
        self.src[start..self.pos].to_string()
    }
}

/// Evaluates a term under an assignment of element indices to its variables.
pub fn eval_term(
    model: &PointedTernaryAlgebra,
    ops: &DerivedOps,
    term: &Term,
    assignment: &HashMap<String, usize>,
) -> Result<usize, EvalError> {
    match term {
        Term::Zero => Ok(model.zero()),
        Term::One => Ok(model.one()),
        Term::Var(v) => assignment
            .get(v)
            .copied()
            .ok_or_else(|| EvalError::UnboundVariable(v.clone())),
        Term::P(a, b, c) => {
            let a = eval_term(model, ops, a, assignment)?;
            let b = eval_term(model, ops, b, assignment)?;
            let c = eval_term(model, ops, c, assignment)?;
            Ok(model.p(a, b, c))
        }
        Term::Bar(t) => Ok(ops.bar(eval_term(model, ops, t, assignment)?)),
        Term::Dot(l, r) => Ok(ops.dot(
            eval_term(model, ops, l, assignment)?,
            eval_term(model, ops, r, assignment)?,
        )),
        Term::Circ(l, r) => Ok(ops.circ(
            eval_term(model, ops, l, assignment)?,
            eval_term(model, ops, r, assignment)?,
        )),
        Term::Plus(l, r) => Ok(ops.plus(
            eval_term(model, ops, l, assignment)?,
            eval_term(model, ops, r, assignment)?,
        )),
    }
}

/// Outcome of checking an equation over all assignments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Holds,
    Counterexample(Counterexample),
}

impl CheckOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, CheckOutcome::Holds)
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            CheckOutcome::Holds => None,
            CheckOutcome::Counterexample(c) => Some(c),
        }
    }
}

/// A falsifying assignment: variable/value pairs (sorted by variable name)
/// plus the two differing sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub assignment: Vec<(String, usize)>,
    pub lhs: usize,
    pub rhs: usize,
}

impl Counterexample {
    /// Renders as `x=u y=v lhs=0 rhs=u` using the model's element labels.
    pub fn display_with(&self, model: &PointedTernaryAlgebra) -> String {
        let mut parts: Vec<String> = self
            .assignment
            .iter()
            .map(|(v, e)| format!("{v}={}", model.name(*e)))
            .collect();
        parts.push(format!("lhs={}", model.name(self.lhs)));
        parts.push(format!("rhs={}", model.name(self.rhs)));
        parts.join(" ")
    }
}

/// Flat postfix program for fast repeated evaluation of one term.
enum Instr {
    PushZero,
    PushOne,
    PushVar(usize),
    ApplyP,
    ApplyBar,
    ApplyDot,
    ApplyCirc,
    ApplyPlus,
}

fn compile(term: &Term, vars: &[String], code: &mut Vec<Instr>) {
    match term {
        Term::Zero => code.push(Instr::PushZero),
        Term::One => code.push(Instr::PushOne),
        Term::Var(v) => {
            let slot = vars
                .iter()
                .position(|name| name == v)
                .expect("variable listed in equation vars");
            code.push(Instr::PushVar(slot));
        }
        Term::P(a, b, c) => {
            compile(a, vars, code);
            compile(b, vars, code);
            compile(c, vars, code);
            code.push(Instr::ApplyP);
        }
        Term::Bar(t) => {
            compile(t, vars, code);
            code.push(Instr::ApplyBar);
        }
        Term::Dot(l, r) => {
            compile(l, vars, code);
            compile(r, vars, code);
            code.push(Instr::ApplyDot);
        }
        Term::Circ(l, r) => {
            compile(l, vars, code);
            compile(r, vars, code);
            code.push(Instr::ApplyCirc);
        }
        Term::Plus(l, r) => {
            compile(l, vars, code);
            compile(r, vars, code);
            code.push(Instr::ApplyPlus);
        }
    }
}

fn run(
    code: &[Instr],
    stack: &mut Vec<usize>,
    model: &PointedTernaryAlgebra,
    ops: &DerivedOps,
    binding: &[usize],
) -> usize {
    stack.clear();
    for instr in code {
        match instr {
            Instr::PushZero => stack.push(model.zero()),
            Instr::PushOne => stack.push(model.one()),
            Instr::PushVar(slot) => stack.push(binding[*slot]),
            Instr::ApplyP => {
                let c = stack.pop().unwrap();
                let b = stack.pop().unwrap();
                let a = stack.pop().unwrap();
                stack.push(model.p(a, b, c));
            }
            Instr::ApplyBar => {
                let a = stack.pop().unwrap();
                stack.push(ops.bar(a));
            }
            Instr::ApplyDot => {
                let b = stack.pop().unwrap();
                let a = stack.pop().unwrap();
                stack.push(ops.dot(a, b));
            }
            Instr::ApplyCirc => {
                let b = stack.pop().unwrap();
                let a = stack.pop().unwrap();
                stack.push(ops.circ(a, b));
            }
            Instr::ApplyPlus => {
                let b = stack.pop().unwrap();
                let a = stack.pop().unwrap();
                stack.push(ops.plus(a, b));
            }
        }
    }
    stack.pop().unwrap()
}

/// Checks the universal closure of `eq` over the whole carrier, sweeping all
/// `n^|vars|` assignments in lexicographic order of the sorted variable list
/// and reporting the first counterexample.
pub fn check_equation(model: &PointedTernaryAlgebra, eq: &Equation) -> CheckOutcome {
    let ops = model.derived_ops();
    check_equation_with(model, &ops, eq, &[])
}

/// As [`check_equation`] but with some variables pinned to fixed elements;
/// only the remaining variables are swept. Reuses precomputed derived tables.
pub fn check_equation_with(
    model: &PointedTernaryAlgebra,
    ops: &DerivedOps,
    eq: &Equation,
    fixed: &[(String, usize)],
) -> CheckOutcome {
    let n = model.size();
    let vars = eq.vars();
    let mut lhs_code = Vec::new();
    let mut rhs_code = Vec::new();
    compile(eq.lhs(), vars, &mut lhs_code);
    compile(eq.rhs(), vars, &mut rhs_code);

    let mut binding = vec![0usize; vars.len()];
    let mut pinned = vec![false; vars.len()];
    for (name, value) in fixed {
        if let Some(slot) = vars.iter().position(|v| v == name) {
            binding[slot] = *value;
            pinned[slot] = true;
        }
    }
    let sweep: Vec<usize> = (0..vars.len()).filter(|&i| !pinned[i]).collect();

    let mut stack = Vec::with_capacity(8);
    loop {
        let lhs = run(&lhs_code, &mut stack, model, ops, &binding);
        let rhs = run(&rhs_code, &mut stack, model, ops, &binding);
        if lhs != rhs {
            let assignment = vars
                .iter()
                .cloned()
                .zip(binding.iter().copied())
                .collect();
            return CheckOutcome::Counterexample(Counterexample {
                assignment,
                lhs,
                rhs,
            });
        }
        // advance the odometer over the swept variables, last fastest
        let mut done = true;
        for &slot in sweep.iter().rev() {
            binding[slot] += 1;
            if binding[slot] < n {
                done = false;
                break;
            }
            binding[slot] = 0;
        }
        if done {
            return CheckOutcome::Holds;
        }
    }
}
