//! Text formats: polynomial expressions, germ files, implicit-surface files
//! and arc literals.
//!
//! Expression grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | variable | '(' expr ')'
//! ```
//!
//! Juxtaposition is rejected, so `2x` is an error and `2*x` is required.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::kernel::poly::Poly;
use crate::kernel::rational::Rational;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Str(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Eq,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

fn lex(text: &str, line: usize, col0: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |col: usize, msg: String| Error::Parse { line, col, msg };
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, col });
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Int(s.parse().unwrap()), col });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            while i < chars.len() && chars[i] == '\'' {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Ident(s), col });
        } else if c == '"' {
            let start = i + 1;
            i += 1;
            while i < chars.len() && chars[i] != '"' {
                i += 1;
            }
            if i == chars.len() {
                return Err(err(col, "unterminated string".into()));
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Str(s), col });
            i += 1;
        } else {
            return Err(err(col, format!("unexpected character '{c}'")));
        }
    }
    out.push(Token { tok: Tok::End, col: col0 + chars.len() });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    line: usize,
    vars: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn col(&self) -> usize {
        self.toks[self.pos].col
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: self.line, col: self.col(), msg: msg.into() })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {what}, found {}", describe(self.peek())))
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = acc.mul(&self.unary()?);
        }
        match self.peek() {
            Tok::Int(_) | Tok::Ident(_) | Tok::LParen => self.error("implicit multiplication is not allowed; use '*'"),
            _ => Ok(acc),
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(self.unary()?.neg())
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            Tok::Int(n) => match n.to_u32() {
                Some(e) if e <= 256 => Ok(base.pow(e)),
                _ => {
                    self.pos -= 1;
                    self.error("exponent too large")
                }
            },
            _ => {
                self.pos -= 1;
                self.error("exponent must be a non-negative integer")
            }
        }
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let mut q = Rational::from_integer(n);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Int(d) if !d.is_zero() => {
                            self.bump();
                            q /= Rational::from_integer(d);
                        }
                        Tok::Int(_) => return self.error("zero denominator"),
                        _ => return self.error("expected integer denominator after '/'"),
                    }
                }
                Ok(Poly::constant(self.vars, q))
            }
            Tok::Ident(name) => {
                if !self.vars.contains(&name.as_str()) {
                    return self.error(format!("unknown variable '{name}' (allowed: {})", self.vars.join(", ")));
                }
                self.bump();
                Ok(Poly::var(self.vars, &name))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            other => self.error(format!("expected a number, variable or '(', found {}", describe(&other))),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("'{n}'"),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Str(_) => "string".into(),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::Comma => "','".into(),
        Tok::Eq => "'='".into(),
        Tok::End => "end of input".into(),
    }
}

fn parse_poly_at(text: &str, vars: &[&str], line: usize, col0: usize) -> Result<Poly> {
    let toks = lex(text, line, col0)?;
    let mut p = Parser { toks, pos: 0, line, vars };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error(format!("unexpected {}", describe(p.peek())));
    }
    Ok(e)
}

/// Parses a polynomial expression in the given variables.
pub fn parse_poly(text: &str, vars: &[&str]) -> Result<Poly> {
    parse_poly_at(text, vars, 1, 1)
}

/// Raw key/value content of a germ-like file, validated elsewhere.
#[derive(Clone, Debug)]
pub struct Assignments {
    pub name: Option<String>,
    pub entries: Vec<(String, Poly, usize)>,
}

/// Reads `key = expr` lines; `name = "..."` is accepted as a label.
pub fn parse_assignments(text: &str, vars: &[&str], keys: &[&str]) -> Result<Assignments> {
    let mut name = None;
    let mut entries: Vec<(String, Poly, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let Some(eq) = body.find('=') else {
            let col = body.len() - body.trim_start().len() + 1;
            return Err(Error::Parse { line, col, msg: "expected 'key = value'".into() });
        };
        let key = body[..eq].trim();
        let key_col = body.len() - body.trim_start().len() + 1;
        let value = &body[eq + 1..];
        let value_col = body[..eq + 1].chars().count() + 1;
        if key == "name" {
            let toks = lex(value, line, value_col)?;
            match toks.as_slice() {
                [Token { tok: Tok::Str(s), .. }, Token { tok: Tok::End, .. }] => name = Some(s.clone()),
                _ => return Err(Error::Parse { line, col: value_col, msg: "name must be a quoted string".into() }),
            }
            continue;
        }
        if !keys.contains(&key) {
            return Err(Error::Parse {
                line,
                col: key_col,
                msg: format!("unknown key '{key}' (expected one of: name, {})", keys.join(", ")),
            });
        }
        if entries.iter().any(|(k, _, _)| k == key) {
            return Err(Error::Parse { line, col: key_col, msg: format!("duplicate key '{key}'") });
        }
        let poly = parse_poly_at(value, vars, line, value_col)?;
        entries.push((key.to_string(), poly, line));
    }
    for k in keys {
        if !entries.iter().any(|(e, _, _)| e == k) {
            let line = text.lines().count().max(1);
            return Err(Error::Parse { line, col: 1, msg: format!("missing required key '{k}'") });
        }
    }
    Ok(Assignments { name, entries })
}

/// `phi = <expr in x, y, z>`.
pub fn parse_phi_file(text: &str) -> Result<Poly> {
    let a = parse_assignments(text, &["x", "y", "z"], &["phi"])?;
    Ok(a.entries.into_iter().next().unwrap().1)
}

/// One coordinate of an arc literal: `(exponent, coefficient)` pairs,
/// combined and sorted by exponent, zeros dropped.
pub type SeriesTerms = Vec<(Rational, Rational)>;

/// Parses `(e1, e2, e3)` where each entry is a sum of terms `c*t^(a/b)`.
pub fn parse_arc_literal(text: &str) -> Result<[SeriesTerms; 3]> {
    let toks = lex(text, 1, 1)?;
    let mut p = Parser { toks, pos: 0, line: 1, vars: &[] };
    p.expect(Tok::LParen, "'('")?;
    let mut coords: Vec<SeriesTerms> = Vec::new();
    for k in 0..3 {
        coords.push(series_sum(&mut p)?);
        if k < 2 {
            p.expect(Tok::Comma, "','")?;
        }
    }
    p.expect(Tok::RParen, "')'")?;
    if *p.peek() != Tok::End {
        return p.error(format!("unexpected {}", describe(p.peek())));
    }
    Ok([coords.remove(0), coords.remove(0), coords.remove(0)])
}

fn series_sum(p: &mut Parser) -> Result<SeriesTerms> {
    let mut terms: SeriesTerms = Vec::new();
    let mut sign = Rational::one();
    match p.peek() {
        Tok::Minus => {
            p.bump();
            sign = -sign;
        }
        Tok::Plus => {
            p.bump();
        }
        _ => {}
    }
    loop {
        let (e, c) = series_term(p)?;
        push_term(&mut terms, e, sign.clone() * c);
        match p.peek() {
            Tok::Plus => {
                p.bump();
                sign = Rational::one();
            }
            Tok::Minus => {
                p.bump();
                sign = -Rational::one();
            }
            _ => break,
        }
    }
    terms.retain(|(_, c)| !c.is_zero());
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(terms)
}

fn push_term(terms: &mut SeriesTerms, e: Rational, c: Rational) {
    match terms.iter_mut().find(|(x, _)| *x == e) {
        Some(slot) => slot.1 += c,
        None => terms.push((e, c)),
    }
}

/// A product of rational literals and powers of `t`.
fn series_term(p: &mut Parser) -> Result<(Rational, Rational)> {
    let mut exp = Rational::zero();
    let mut coeff = Rational::one();
    loop {
        match p.peek().clone() {
            Tok::Int(n) => {
                p.bump();
                let mut q = Rational::from_integer(n);
                if *p.peek() == Tok::Slash {
                    p.bump();
                    match p.bump() {
                        Tok::Int(d) if !d.is_zero() => q /= Rational::from_integer(d),
                        _ => {
                            p.pos -= 1;
                            return p.error("expected nonzero integer denominator");
                        }
                    }
                }
                coeff *= q;
            }
            Tok::Ident(name) if name == "t" => {
                p.bump();
                if *p.peek() == Tok::Caret {
                    p.bump();
                    exp += series_exponent(p)?;
                } else {
                    exp += Rational::one();
                }
            }
            Tok::Ident(name) => return p.error(format!("unknown symbol '{name}' in arc (only t is allowed)")),
            other => return p.error(format!("expected a coefficient or t, found {}", describe(&other))),
        }
        if *p.peek() == Tok::Star {
            p.bump();
        } else {
            break;
        }
    }
    Ok((exp, coeff))
}

fn series_exponent(p: &mut Parser) -> Result<Rational> {
    match p.peek().clone() {
        Tok::Int(n) => {
            p.bump();
            Ok(Rational::from_integer(n))
        }
        Tok::LParen => {
            p.bump();
            let q = match p.bump() {
                Tok::Int(n) => Rational::from_integer(n),
                _ => {
                    p.pos -= 1;
                    return p.error("expected a non-negative rational exponent");
                }
            };
            let q = if *p.peek() == Tok::Slash {
                p.bump();
                match p.bump() {
                    Tok::Int(d) if !d.is_zero() => q / Rational::from_integer(d),
                    _ => {
                        p.pos -= 1;
                        return p.error("expected nonzero integer denominator");
                    }
                }
            } else {
                q
            };
            p.expect(Tok::RParen, "')'")?;
            if q.is_negative() {
                return p.error("negative exponent");
            }
            Ok(q)
        }
        other => p.error(format!("expected exponent, found {}", describe(&other))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{int, rat};

    const XY: [&str; 2] = ["x", "y"];

    #[test]
    fn expressions() {
        let p = parse_poly("y^3 - x^2*y", &XY).unwrap();
        assert_eq!(p.to_string(), "y^3 - x^2*y");
        let q = parse_poly("(x+y)^3", &XY).unwrap();
        assert_eq!(q.to_string(), "x^3 + 3*x^2*y + 3*x*y^2 + y^3");
        let r = parse_poly("-2/5*x + 1/2*y", &XY).unwrap();
        assert_eq!(r.eval(&[int(5), int(2)]), int(-1));
    }

    #[test]
    fn errors_carry_position() {
        match parse_poly("2x + y", &XY) {
            Err(Error::Parse { line: 1, col: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_poly("x + z", &XY) {
            Err(Error::Parse { col: 5, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse_poly("x^-1", &XY).is_err());
        assert!(parse_poly("(x + y", &XY).is_err());
        assert!(parse_poly("1/0", &XY).is_err());
    }

    #[test]
    fn assignments_file() {
        let text = "# E1\nname = \"e1\"\np = y^2\nq = y^3 - x^2*y\n";
        let a = parse_assignments(text, &XY, &["p", "q"]).unwrap();
        assert_eq!(a.name.as_deref(), Some("e1"));
        assert_eq!(a.entries.len(), 2);
        match parse_assignments("p = y^2\nq = y^3 +* x", &XY, &["p", "q"]) {
            Err(Error::Parse { line: 2, col: 10, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse_assignments("p = y^2\n", &XY, &["p", "q"]).is_err());
    }

    #[test]
    fn arc_literals() {
        let [a, b, c] = parse_arc_literal("(t, t^2 - 3/2*t^(5/2), 0)").unwrap();
        assert_eq!(a, vec![(int(1), int(1))]);
        assert_eq!(b, vec![(int(2), int(1)), (rat(5, 2), rat(-3, 2))]);
        assert!(c.is_empty());
        let [a, _, _] = parse_arc_literal("(-t + t, 2*t^(1/3), t*t)").unwrap();
        assert!(a.is_empty());
        assert!(parse_arc_literal("(t, t)").is_err());
        assert!(parse_arc_literal("(t, x, 0)").is_err());
    }
}
