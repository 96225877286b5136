//! Complex files:
//!
//! ```text
//! vertices = [v1, v2]
//! edges = [(v1, v1, "2/1"), (v1, v2, "1/1"), (v1, v2, "1/1")]
//! ```
//!
//! Loops repeat an endpoint; repeated tuples are parallel edges. Ids are
//! bare words or double-quoted strings. `#` starts a comment.

use super::{Edge, HolderComplex};
use crate::error::{Error, Result};
use crate::kernel::rational::{fraction_string, parse_rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Word(String),
    Str(String),
    Sym(char),
}

struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '+' | '-' | '\'' | '.')
}

fn lex(text: &str) -> Result<Vec<Lexed>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, col) = (ln + 1, i + 1);
            if c.is_whitespace() {
                i += 1;
            } else if c == '#' {
                break;
            } else if "[](),=".contains(c) {
                out.push(Lexed { tok: Tok::Sym(c), line, col });
                i += 1;
            } else if c == '"' {
                let end = chars[i + 1..].iter().position(|&d| d == '"').ok_or(Error::Parse {
                    line,
                    col,
                    msg: "unterminated string".into(),
                })?;
                out.push(Lexed { tok: Tok::Str(chars[i + 1..i + 1 + end].iter().collect()), line, col });
                i += end + 2;
            } else if is_word_char(c) {
                let start = i;
                while i < chars.len() && is_word_char(chars[i]) {
                    i += 1;
                }
                out.push(Lexed { tok: Tok::Word(chars[start..i].iter().collect()), line, col });
            } else {
                return Err(Error::Parse { line, col, msg: format!("unexpected character '{c}'") });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (line, col) = self.toks.get(self.pos).map_or(self.end, |t| (t.line, t.col));
        Err(Error::Parse { line, col, msg: msg.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn sym(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn text(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Word(w)) | Some(Tok::Str(w)) => {
                let w = w.clone();
                self.pos += 1;
                Ok(w)
            }
            _ => self.err("expected an identifier or string"),
        }
    }

    /// `[item, item, ...]`, trailing comma allowed.
    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        self.sym('[')?;
        let mut out = Vec::new();
        loop {
            if self.peek() == Some(&Tok::Sym(']')) {
                self.pos += 1;
                return Ok(out);
            }
            out.push(item(self)?);
            if self.peek() == Some(&Tok::Sym(',')) {
                self.pos += 1;
            } else if self.peek() != Some(&Tok::Sym(']')) {
                return self.err("expected ',' or ']'");
            }
        }
    }
}

pub fn parse_complex(text: &str) -> Result<HolderComplex> {
    let toks = lex(text)?;
    let end = (text.lines().count().max(1), 1);
    let mut p = Parser { toks, pos: 0, end };
    let mut vertices: Option<Vec<String>> = None;
    let mut raw_edges: Option<Vec<(String, String, String, usize, usize)>> = None;
    while p.peek().is_some() {
        let key = p.text()?;
        p.sym('=')?;
        match key.as_str() {
            "vertices" if vertices.is_none() => vertices = Some(p.list(Parser::text)?),
            "edges" if raw_edges.is_none() => {
                raw_edges = Some(p.list(|p| {
                    let (line, col) = p.toks.get(p.pos).map_or(p.end, |t| (t.line, t.col));
                    p.sym('(')?;
                    let a = p.text()?;
                    p.sym(',')?;
                    let b = p.text()?;
                    p.sym(',')?;
                    let q = p.text()?;
                    p.sym(')')?;
                    Ok((a, b, q, line, col))
                })?)
            }
            "vertices" | "edges" => return p.err(format!("duplicate key '{key}'")),
            _ => return p.err(format!("unknown key '{key}'")),
        }
    }
    let vertices = vertices.ok_or(Error::Parse { line: end.0, col: 1, msg: "missing 'vertices'".into() })?;
    let raw = raw_edges.ok_or(Error::Parse { line: end.0, col: 1, msg: "missing 'edges'".into() })?;
    let index = |id: &str, line, col| {
        vertices.iter().position(|v| v == id).ok_or(Error::Parse { line, col, msg: format!("unknown vertex '{id}'") })
    };
    let mut edges = Vec::with_capacity(raw.len());
    for (a, b, q, line, col) in raw {
        let beta = parse_rational(&q).ok_or(Error::Parse { line, col, msg: format!("bad exponent '{q}'") })?;
        edges.push(Edge::new(index(&a, line, col)?, index(&b, line, col)?, beta));
    }
    HolderComplex::new(vertices, edges)
}

fn quote(id: &str) -> String {
    if !id.is_empty() && id.chars().all(is_word_char) {
        id.to_string()
    } else {
        format!("\"{id}\"")
    }
}

pub fn write_complex(c: &HolderComplex) -> String {
    let v: Vec<String> = c.vertices().iter().map(|s| quote(s)).collect();
    let e: Vec<String> = c
        .edges()
        .iter()
        .map(|e| {
            format!("({}, {}, \"{}\")", quote(&c.vertices()[e.a]), quote(&c.vertices()[e.b]), fraction_string(&e.beta))
        })
        .collect();
    format!("vertices = [{}]\nedges = [{}]\n", v.join(", "), e.join(", "))
}
