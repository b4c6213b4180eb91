//! Evaluation of parsed programs over the two rings.

use std::collections::HashMap;
use std::fmt;

use lexdepth_core::semigroup::{NumericalSemigroup, SemigroupIdeal};
use lexdepth_core::{MonomialIdeal2, SemigroupError, StaircaseError};

use crate::parse::{self, BinOp, Expr, ParseError, Pos, Program, Stmt};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Poly(MonomialIdeal2),
    Semi(SemigroupIdeal),
}

impl Value {
    pub fn ring(&self) -> &'static str {
        match self {
            Value::Poly(_) => "K[x,y]",
            Value::Semi(_) => "semigroup ring",
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Poly(i) => i.fmt(f),
            Value::Semi(i) => i.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    Parse(ParseError),
    Type { pos: Pos, message: String },
    Unbound { pos: Pos, name: String },
    Math { pos: Pos, message: String },
    NoValue,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Parse(e) => e.fmt(f),
            EvalError::Type { pos, message } => write!(f, "type error at {pos}: {message}"),
            EvalError::Unbound { pos, name } => write!(f, "unbound identifier '{name}' at {pos}"),
            EvalError::Math { pos, message } => write!(f, "error at {pos}: {message}"),
            EvalError::NoValue => f.write_str("empty program"),
        }
    }
}

impl std::error::Error for EvalError {}

impl From<ParseError> for EvalError {
    fn from(e: ParseError) -> Self {
        EvalError::Parse(e)
    }
}

fn math(pos: Pos, e: impl fmt::Display) -> EvalError {
    EvalError::Math { pos, message: e.to_string() }
}

#[derive(Debug, Default, Clone)]
pub struct Env {
    vars: HashMap<String, Value>,
}

impl Env {
    pub fn get(&self, name: &str) -> Option<&Value> {
        self.vars.get(name)
    }

    pub fn eval(&self, e: &Expr) -> Result<Value, EvalError> {
        match e {
            Expr::Ident { name, pos } => {
                self.vars.get(name).cloned().ok_or_else(|| EvalError::Unbound { pos: *pos, name: name.clone() })
            }
            Expr::Lex { spec, .. } => Ok(Value::Poly(spec.to_ideal())),
            Expr::Mono { gens, .. } => Ok(Value::Poly(MonomialIdeal2::normalize(gens.iter().copied()))),
            Expr::Sgid { semigroup, gens, pos } => {
                let s = NumericalSemigroup::new(semigroup).map_err(|e| math(*pos, e))?;
                SemigroupIdeal::new(s, gens).map(Value::Semi).map_err(|e| math(*pos, e))
            }
            Expr::Power { base, exp, pos } => match self.eval(base)? {
                Value::Poly(i) => i.try_power(*exp).map(Value::Poly).map_err(|e| math(*pos, e)),
                Value::Semi(i) => Ok(Value::Semi(i.power(*exp))),
            },
            Expr::Binary { op, lhs, rhs, pos } => {
                let (l, r) = (self.eval(lhs)?, self.eval(rhs)?);
                match (l, r) {
                    (Value::Poly(a), Value::Poly(b)) => {
                        poly_op(*op, &a, &b).map(Value::Poly).map_err(|e| math(*pos, e))
                    }
                    (Value::Semi(a), Value::Semi(b)) => {
                        semi_op(*op, &a, &b).map(Value::Semi).map_err(|e| math(*pos, e))
                    }
                    (a, b) => Err(EvalError::Type {
                        pos: *pos,
                        message: format!("'{}' applied to ideals of {} and {}", op.symbol(), a.ring(), b.ring()),
                    }),
                }
            }
        }
    }

    /// Runs a program; returns the values of its expression statements and
    /// the value of the last statement.
    pub fn run(&mut self, program: &Program) -> Result<(Vec<Value>, Option<Value>), EvalError> {
        let mut shown = Vec::new();
        let mut last = None;
        for stmt in program {
            match stmt {
                Stmt::Assign { name, expr } => {
                    let v = self.eval(expr)?;
                    self.vars.insert(name.clone(), v.clone());
                    last = Some(v);
                }
                Stmt::Expr(expr) => {
                    let v = self.eval(expr)?;
                    shown.push(v.clone());
                    last = Some(v);
                }
            }
        }
        Ok((shown, last))
    }
}

fn poly_op(op: BinOp, a: &MonomialIdeal2, b: &MonomialIdeal2) -> Result<MonomialIdeal2, StaircaseError> {
    match op {
        BinOp::Product => a.try_multiply(b),
        BinOp::Colon => a.colon(b),
        BinOp::Sum => Ok(a.sum(b)),
        BinOp::Intersect => Ok(a.intersect(b)),
    }
}

fn semi_op(op: BinOp, a: &SemigroupIdeal, b: &SemigroupIdeal) -> Result<SemigroupIdeal, SemigroupError> {
    match op {
        BinOp::Product => a.multiply(b),
        BinOp::Colon => a.colon(b),
        BinOp::Sum => a.sum(b),
        BinOp::Intersect => a.intersect(b),
    }
}

/// Parses and runs `src`, returning the value of its last statement.
pub fn evaluate(src: &str) -> Result<Value, EvalError> {
    let program = parse::parse_program(src)?;
    Env::default().run(&program)?.1.ok_or(EvalError::NoValue)
}
