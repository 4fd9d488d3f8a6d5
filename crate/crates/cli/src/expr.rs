//! Element expression parsing for the command line.
//!
//! The grammar covers path-algebra terms and cylinder literals in one
//! language: identifiers name vertices, edges, or bundle members (`es[3]`),
//! a trailing `*` reverses a factor, `.` or juxtaposition multiplies, `+`
//! adds, parentheses group, and `Z(alpha; beta; ~e)` embeds a cylinder.
//! Expressions built only from path-algebra syntax stay [`LpaTerm`]s; as
//! soon as a cylinder literal appears the whole expression is coerced into
//! the cylinder calculus through the representation.

use std::sync::Arc;
use steinberg_core::cylinder::parse_cylinder;
use steinberg_core::graph::{Graph, Path};
use steinberg_core::lpa::{pi_e, LpaTerm};
use steinberg_core::SteinbergElt;

/// A parsed element: either a path-algebra term or a cylinder-calculus
/// element, depending on the syntax used.
#[derive(Clone, Debug)]
pub enum ExprValue {
    Term(LpaTerm),
    Elt(SteinbergElt),
}

impl ExprValue {
    pub fn into_elt(self, g: &Arc<Graph>) -> Result<SteinbergElt, String> {
        match self {
            ExprValue::Term(t) => pi_e(g, &t).map_err(|e| e.to_string()),
            ExprValue::Elt(e) => Ok(e),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    ZLit(String),
    Star,
    Dot,
    Plus,
    LParen,
    RParen,
}

struct Lexed {
    tok: Tok,
    col: usize,
}

fn syntax_error(col: usize, detail: &str) -> String {
    format!("syntax error at column {col}: {detail}")
}

fn lex(text: &str) -> Result<Vec<Lexed>, String> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let col = i + 1;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '*' => {
                out.push(Lexed { tok: Tok::Star, col });
                i += 1;
            }
            '.' => {
                out.push(Lexed { tok: Tok::Dot, col });
                i += 1;
            }
            '+' => {
                out.push(Lexed { tok: Tok::Plus, col });
                i += 1;
            }
            '(' => {
                out.push(Lexed { tok: Tok::LParen, col });
                i += 1;
            }
            ')' => {
                out.push(Lexed { tok: Tok::RParen, col });
                i += 1;
            }
            'Z' if bytes.get(i + 1) == Some(&b'(') => {
                let start = i;
                let mut depth = 0i32;
                let mut end = None;
                for (j, &b) in bytes.iter().enumerate().skip(i + 1) {
                    match b {
                        b'(' => depth += 1,
                        b')' => {
                            depth -= 1;
                            if depth == 0 {
                                end = Some(j);
                                break;
                            }
                        }
                        _ => {}
                    }
                }
                let Some(end) = end else {
                    return Err(syntax_error(col, "unclosed cylinder literal"));
                };
                out.push(Lexed {
                    tok: Tok::ZLit(text[start..=end].to_string()),
                    col,
                });
                i = end + 1;
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                if bytes.get(i) == Some(&b'[') {
                    match bytes[i..].iter().position(|&b| b == b']') {
                        Some(off) => i += off + 1,
                        None => return Err(syntax_error(i + 1, "unclosed bundle index")),
                    }
                }
                out.push(Lexed {
                    tok: Tok::Ident(text[start..i].to_string()),
                    col,
                });
            }
            other => {
                return Err(syntax_error(col, &format!("unexpected character '{other}'")));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    graph: &'a Arc<Graph>,
    toks: Vec<Lexed>,
    pos: usize,
    end_col: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|l| l.col)
            .unwrap_or(self.end_col)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|l| l.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn mul(&self, a: ExprValue, b: ExprValue) -> Result<ExprValue, String> {
        match (a, b) {
            (ExprValue::Term(x), ExprValue::Term(y)) => Ok(ExprValue::Term(x.mul(&y))),
            (a, b) => {
                let (x, y) = (a.into_elt(self.graph)?, b.into_elt(self.graph)?);
                Ok(ExprValue::Elt(x.mul(&y).map_err(|e| e.to_string())?))
            }
        }
    }

    fn add(&self, a: ExprValue, b: ExprValue) -> Result<ExprValue, String> {
        match (a, b) {
            (ExprValue::Term(x), ExprValue::Term(y)) => Ok(ExprValue::Term(x.add(&y))),
            (a, b) => {
                let (x, y) = (a.into_elt(self.graph)?, b.into_elt(self.graph)?);
                Ok(ExprValue::Elt(x.add(&y).map_err(|e| e.to_string())?))
            }
        }
    }

    fn atom(&mut self) -> Result<ExprValue, String> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Ident(name)) => self.resolve_ident(&name, col),
            Some(Tok::ZLit(text)) => {
                let c = parse_cylinder(self.graph, &text)
                    .map_err(|e| syntax_error(col, &e.to_string()))?;
                let elt = SteinbergElt::from_cylinders(self.graph, vec![c])
                    .map_err(|e| syntax_error(col, &e.to_string()))?;
                Ok(ExprValue::Elt(elt))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(syntax_error(col, "unclosed parenthesis")),
                }
            }
            Some(_) | None => Err(syntax_error(col, "expected an element here")),
        }
    }

    fn resolve_ident(&self, name: &str, col: usize) -> Result<ExprValue, String> {
        if self.graph.vertex(name).is_ok() {
            let t = LpaTerm::vertex(self.graph, name).map_err(|e| e.to_string())?;
            return Ok(ExprValue::Term(t));
        }
        if let Ok(e) = self.graph.parse_edge_ref(name) {
            let p = Path {
                start: self.graph.source_of(&e),
                end: self.graph.range_of(&e),
                edges: vec![e],
            };
            let q = Path::empty(p.end);
            let t = LpaTerm::from_monomials(self.graph, vec![(p, q)])
                .map_err(|e| e.to_string())?;
            return Ok(ExprValue::Term(t));
        }
        match name {
            "0" => Ok(ExprValue::Term(LpaTerm::zero())),
            "1" => {
                let mut t = LpaTerm::zero();
                for v in 0..self.graph.vertex_count() {
                    t = t.add(
                        &LpaTerm::vertex(self.graph, self.graph.vertex_name(v))
                            .map_err(|e| e.to_string())?,
                    );
                }
                Ok(ExprValue::Term(t))
            }
            _ => Err(syntax_error(
                col,
                &format!("unknown identifier '{name}'"),
            )),
        }
    }

    fn postfix(&mut self) -> Result<ExprValue, String> {
        let mut v = self.atom()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            v = match v {
                ExprValue::Term(t) => ExprValue::Term(t.star()),
                ExprValue::Elt(e) => ExprValue::Elt(e.star()),
            };
        }
        Ok(v)
    }

    fn product(&mut self) -> Result<ExprValue, String> {
        let mut v = self.postfix()?;
        loop {
            match self.peek() {
                Some(Tok::Dot) => {
                    let op_col = self.col();
                    self.bump();
                    if !matches!(
                        self.peek(),
                        Some(Tok::Ident(_)) | Some(Tok::ZLit(_)) | Some(Tok::LParen)
                    ) {
                        return Err(syntax_error(op_col, "missing right factor"));
                    }
                    let rhs = self.postfix()?;
                    v = self.mul(v, rhs)?;
                }
                Some(Tok::Ident(_)) | Some(Tok::ZLit(_)) | Some(Tok::LParen) => {
                    let rhs = self.postfix()?;
                    v = self.mul(v, rhs)?;
                }
                _ => break,
            }
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<ExprValue, String> {
        let mut v = self.product()?;
        while self.peek() == Some(&Tok::Plus) {
            let op_col = self.col();
            self.bump();
            if self.peek().is_none() {
                return Err(syntax_error(op_col, "missing right summand"));
            }
            let rhs = self.product()?;
            v = self.add(v, rhs)?;
        }
        Ok(v)
    }
}

/// Parses an element expression over the graph. Pure path-algebra syntax
/// yields a term; any cylinder literal switches the result to the cylinder
/// calculus.
pub fn parse_element_expr(graph: &Arc<Graph>, text: &str) -> Result<ExprValue, String> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(syntax_error(1, "empty expression"));
    }
    let mut p = Parser {
        graph,
        toks,
        pos: 0,
        end_col: text.len() + 1,
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(syntax_error(p.col(), "trailing input"));
    }
    Ok(v)
}
