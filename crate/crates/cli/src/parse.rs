//! Character-level recursive-descent parser for ideal expressions.
//!
//! Statements are separated by newlines or `;` outside parentheses. Inside
//! parentheses newlines are ordinary whitespace, so one literal may span
//! several lines.

use std::fmt;

use lexdepth_core::{LexSpec, Monomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Product,
    Colon,
    Sum,
    Intersect,
}

impl BinOp {
    pub fn symbol(self) -> char {
        match self {
            BinOp::Product => '*',
            BinOp::Colon => ':',
            BinOp::Sum => '+',
            BinOp::Intersect => '&',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Ident { name: String, pos: Pos },
    Lex { spec: LexSpec, pos: Pos },
    Mono { gens: Vec<Monomial>, pos: Pos },
    Sgid { semigroup: Vec<u64>, gens: Vec<u64>, pos: Pos },
    Binary { op: BinOp, lhs: Box<Expr>, rhs: Box<Expr>, pos: Pos },
    Power { base: Box<Expr>, exp: u32, pos: Pos },
}

impl Expr {
    pub fn pos(&self) -> Pos {
        match self {
            Expr::Ident { pos, .. }
            | Expr::Lex { pos, .. }
            | Expr::Mono { pos, .. }
            | Expr::Sgid { pos, .. }
            | Expr::Binary { pos, .. }
            | Expr::Power { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stmt {
    Assign { name: String, expr: Expr },
    Expr(Expr),
}

pub type Program = Vec<Stmt>;

struct Parser {
    chars: Vec<char>,
    at: usize,
    line: usize,
    col: usize,
    depth: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn new(src: &str) -> Self {
        Parser { chars: src.chars().collect(), at: 0, line: 1, col: 1, depth: 0 }
    }

    fn pos(&self) -> Pos {
        Pos { line: self.line, col: self.col }
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError { pos: self.pos(), message: message.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.at += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    /// Skips blanks and comments; newlines only inside parentheses.
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            match c {
                ' ' | '\t' | '\r' => {
                    self.bump();
                }
                '\n' if self.depth > 0 => {
                    self.bump();
                }
                '#' => {
                    while self.peek().is_some_and(|c| c != '\n') {
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn at_char(&mut self, c: char) -> bool {
        self.skip_ws();
        self.peek() == Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.at_char(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.describe_next();
            self.error(format!("expected '{c}', found {found}"))
        }
    }

    fn describe_next(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some('\n') => "end of line".into(),
            Some(c) => format!("'{c}'"),
        }
    }

    fn open(&mut self) -> PResult<()> {
        self.expect('(')?;
        self.depth += 1;
        Ok(())
    }

    fn close(&mut self) -> PResult<()> {
        self.expect(')')?;
        self.depth -= 1;
        Ok(())
    }

    fn nat_u64(&mut self) -> PResult<u64> {
        self.skip_ws();
        let start = self.pos();
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.bump();
        }
        if digits.is_empty() {
            let found = self.describe_next();
            return self.error(format!("expected a natural number, found {found}"));
        }
        digits.parse().map_err(|_| ParseError { pos: start, message: format!("number {digits} is too large") })
    }

    fn nat_u32(&mut self) -> PResult<u32> {
        let start = self.pos();
        let n = self.nat_u64()?;
        u32::try_from(n).map_err(|_| ParseError { pos: start, message: format!("number {n} is too large") })
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let c = self.peek()?;
        if !(c.is_ascii_alphabetic() || c == '_') {
            return None;
        }
        let mut name = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_alphanumeric() || *c == '_') {
            name.push(c);
            self.bump();
        }
        Some(name)
    }

    fn program(&mut self) -> PResult<Program> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('\n') | Some(';') => {
                    self.bump();
                    continue;
                }
                _ => {}
            }
            out.push(self.stmt()?);
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('\n') | Some(';') => {
                    self.bump();
                }
                _ => {
                    let found = self.describe_next();
                    return self.error(format!("expected end of statement, found {found}"));
                }
            }
        }
        if out.is_empty() {
            return self.error("empty input");
        }
        Ok(out)
    }

    fn stmt(&mut self) -> PResult<Stmt> {
        // lookahead for `IDENT =`
        let save = (self.at, self.line, self.col);
        if let Some(name) = self.ident() {
            if self.eat('=') {
                if is_keyword(&name) {
                    return self.error(format!("cannot assign to keyword '{name}'"));
                }
                return Ok(Stmt::Assign { name, expr: self.expr()? });
            }
        }
        (self.at, self.line, self.col) = save;
        Ok(Stmt::Expr(self.expr()?))
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.cterm()?;
        loop {
            self.skip_ws();
            let pos = self.pos();
            let op = match self.peek() {
                Some('+') => BinOp::Sum,
                Some('&') => BinOp::Intersect,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.cterm()?;
            lhs = Expr::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs), pos };
        }
    }

    fn cterm(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            self.skip_ws();
            let pos = self.pos();
            if !self.eat(':') {
                return Ok(lhs);
            }
            let rhs = self.term()?;
            lhs = Expr::Binary { op: BinOp::Colon, lhs: Box::new(lhs), rhs: Box::new(rhs), pos };
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.factor()?;
        loop {
            self.skip_ws();
            let pos = self.pos();
            if !self.eat('*') {
                return Ok(lhs);
            }
            let rhs = self.factor()?;
            lhs = Expr::Binary { op: BinOp::Product, lhs: Box::new(lhs), rhs: Box::new(rhs), pos };
        }
    }

    fn factor(&mut self) -> PResult<Expr> {
        let base = self.atom()?;
        self.skip_ws();
        let pos = self.pos();
        if self.eat('^') {
            let exp = self.nat_u32()?;
            return Ok(Expr::Power { base: Box::new(base), exp, pos });
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<Expr> {
        self.skip_ws();
        let pos = self.pos();
        if self.peek() == Some('(') {
            self.open()?;
            let e = self.expr()?;
            self.close()?;
            return Ok(e);
        }
        let Some(name) = self.ident() else {
            let found = self.describe_next();
            return self.error(format!("expected an ideal, found {found}"));
        };
        if is_keyword(&name) && self.at_char('(') {
            return match name.as_str() {
                "lex" => self.lex_literal(pos),
                "mono" => self.mono_literal(pos),
                _ => self.sgid_literal(pos),
            };
        }
        Ok(Expr::Ident { name, pos })
    }

    fn lex_literal(&mut self, pos: Pos) -> PResult<Expr> {
        self.open()?;
        let d = self.nat_u32()?;
        self.expect(';')?;
        let mut a = Vec::new();
        if !self.at_char(')') {
            a.push(self.nat_u32()?);
            while self.eat(',') {
                a.push(self.nat_u32()?);
            }
        }
        self.close()?;
        let spec = LexSpec::new(d, a).map_err(|e| ParseError { pos, message: e.to_string() })?;
        Ok(Expr::Lex { spec, pos })
    }

    fn mono_literal(&mut self, pos: Pos) -> PResult<Expr> {
        self.open()?;
        let mut gens = vec![self.monomial()?];
        while self.eat(',') {
            gens.push(self.monomial()?);
        }
        self.close()?;
        Ok(Expr::Mono { gens, pos })
    }

    fn monomial(&mut self) -> PResult<Monomial> {
        self.skip_ws();
        if self.peek() == Some('1') && !self.chars.get(self.at + 1).is_some_and(char::is_ascii_digit) {
            self.bump();
            return Ok(Monomial::ONE);
        }
        let mut m = Monomial::ONE;
        let mut any = false;
        if self.peek() == Some('x') {
            self.bump();
            m.a = self.exponent()?;
            any = true;
            if self.eat('*') && !self.at_char('y') {
                return self.error("expected 'y' after '*'");
            }
        }
        self.skip_ws();
        if self.peek() == Some('y') {
            self.bump();
            m.b = self.exponent()?;
            any = true;
        }
        if !any {
            let found = self.describe_next();
            return self.error(format!("expected a monomial, found {found}"));
        }
        if self.eat('*') || self.at_char('x') || self.at_char('y') {
            self.skip_ws();
            return self.error("variables must appear as x then y");
        }
        Ok(m)
    }

    fn exponent(&mut self) -> PResult<u32> {
        if self.eat('^') {
            self.nat_u32()
        } else {
            Ok(1)
        }
    }

    fn sgid_literal(&mut self, pos: Pos) -> PResult<Expr> {
        self.open()?;
        let mut semigroup = vec![self.nat_u64()?];
        while self.eat(',') {
            semigroup.push(self.nat_u64()?);
        }
        self.expect(';')?;
        let mut gens = vec![self.nat_u64()?];
        while self.eat(',') {
            gens.push(self.nat_u64()?);
        }
        self.close()?;
        Ok(Expr::Sgid { semigroup, gens, pos })
    }
}

fn is_keyword(name: &str) -> bool {
    matches!(name, "lex" | "mono" | "sgid")
}

pub fn parse_program(src: &str) -> Result<Program, ParseError> {
    Parser::new(src).program()
}

/// Parses a single expression.
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(src);
    let e = p.expr()?;
    p.skip_ws();
    if p.peek().is_some() {
        let found = p.describe_next();
        return p.error(format!("unexpected {found} after expression"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binary(e: &Expr) -> (BinOp, &Expr, &Expr) {
        match e {
            Expr::Binary { op, lhs, rhs, .. } => (*op, lhs, rhs),
            other => panic!("not binary: {other:?}"),
        }
    }

    #[test]
    fn literals() {
        match parse_expr("lex(2; 1,3)").unwrap() {
            Expr::Lex { spec, .. } => assert_eq!(spec.to_string(), "lex(2; 1,3)"),
            other => panic!("{other:?}"),
        }
        match parse_expr("lex(3;)").unwrap() {
            Expr::Lex { spec, .. } => assert_eq!(spec.k(), 0),
            other => panic!("{other:?}"),
        }
        match parse_expr("mono(x^5, x^3*y^3, x*y^7, y^9)").unwrap() {
            Expr::Mono { gens, .. } => {
                let s: Vec<String> = gens.iter().map(|m| m.to_string()).collect();
                assert_eq!(s, ["x^5", "x^3*y^3", "x*y^7", "y^9"]);
            }
            other => panic!("{other:?}"),
        }
        match parse_expr("mono(1, xy^2, x y)").unwrap() {
            Expr::Mono { gens, .. } => assert_eq!(gens, [Monomial::ONE, Monomial::new(1, 2), Monomial::new(1, 1)]),
            other => panic!("{other:?}"),
        }
        match parse_expr("sgid(6,11,15,31; 6,11,31)").unwrap() {
            Expr::Sgid { semigroup, gens, .. } => {
                assert_eq!(semigroup, [6, 11, 15, 31]);
                assert_eq!(gens, [6, 11, 31]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn precedence() {
        let e = parse_expr("(I^2 : I) & I").unwrap();
        let (op, lhs, _) = binary(&e);
        assert_eq!(op, BinOp::Intersect);
        assert_eq!(binary(lhs).0, BinOp::Colon);

        // ^ > * > : > (+, &)
        let e = parse_expr("A + B * C^2 : D").unwrap();
        let (op, _, rhs) = binary(&e);
        assert_eq!(op, BinOp::Sum);
        let (op, lhs, _) = binary(rhs);
        assert_eq!(op, BinOp::Colon);
        let (op, _, c2) = binary(lhs);
        assert_eq!(op, BinOp::Product);
        assert!(matches!(c2, Expr::Power { exp: 2, .. }));

        // + and & share a level and associate to the left
        let e = parse_expr("A & B + C").unwrap();
        let (op, lhs, _) = binary(&e);
        assert_eq!(op, BinOp::Sum);
        assert_eq!(binary(lhs).0, BinOp::Intersect);
        let e = parse_expr("A : B : C").unwrap();
        let (_, lhs, _) = binary(&e);
        assert_eq!(binary(lhs).0, BinOp::Colon);
    }

    #[test]
    fn programs() {
        let p = parse_program("I = lex(2; 1,3); J = I^2\nJ : I").unwrap();
        assert_eq!(p.len(), 3);
        assert!(matches!(&p[0], Stmt::Assign { name, .. } if name == "I"));
        assert!(matches!(&p[2], Stmt::Expr(_)));
        let p = parse_program("mono(x^2,\n  y^2)\n\n").unwrap();
        assert_eq!(p.len(), 1);
        assert!(parse_program("  \n ").is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_expr("mono(x^2, y*x)").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 13 });
        let e = parse_program("I = lex(2; 1,3)\nI ^").unwrap_err();
        assert_eq!(e.pos.line, 2);
        let e = parse_expr("lex(2; 3,1)").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 1 });
        assert!(e.message.contains("increasing"), "{}", e.message);
        assert!(parse_expr("mono(x*)").is_err());
        assert!(parse_expr("mono()").is_err());
        assert!(parse_expr("lex(2; 1").is_err());
        assert!(parse_expr("I J").is_err());
        assert!(parse_program("lex = mono(x)").is_err());
        assert!(parse_expr("mono(x^99999999999)").is_err());
    }
}
