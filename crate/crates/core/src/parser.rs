//! Recursive-descent parser for the class-table DSL and for type
//! expressions.
//!
//! ```text
//! table   := decl* ;
//! decl    := "class" IDENT tparams? ("extends" stype)? ;
//! tparams := "<" tparam ("," tparam)* ">" ;
//! tparam  := IDENT ("extends" stype)? ;
//! stype   := IDENT targs? ;
//! targs   := "<" targ ("," targ)* ">" ;
//! targ    := "?" | "?" "extends" gtype | "?" "super" gtype | gtype ;
//! gtype   := IDENT targs? | "Null" ;
//! ```
//!
//! `//` starts a line comment. Whitespace is insignificant.

use std::collections::HashSet;

use crate::decider::check_well_formed;
use crate::error::{Error, Result};
use crate::table::{ArgExpr, ClassDecl, ClassTable, TypeExpr, TypeParam, ValidatedClassTable};
use crate::types::TypeTerm;

/// Nesting deeper than this is reported as a syntax error rather than
/// risking the stack.
const MAX_NESTING: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceText {
    pub text: String,
    pub origin: String,
}

impl SourceText {
    pub fn new(text: impl Into<String>, origin: impl Into<String>) -> Self {
        SourceText {
            text: text.into(),
            origin: origin.into(),
        }
    }

    pub fn inline(text: impl Into<String>) -> Self {
        Self::new(text, "<inline>")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Class,
    Extends,
    Super,
    Null,
    Lt,
    Gt,
    Comma,
    Question,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Class => "`class`".into(),
            Tok::Extends => "`extends`".into(),
            Tok::Super => "`super`".into(),
            Tok::Null => "`Null`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Gt => "`>`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Question => "`?`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &SourceText) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut chars = src.text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, col);
        let advance = |ch: char, line: &mut usize, col: &mut usize| {
            if ch == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        if c.is_whitespace() {
            chars.next();
            advance(c, &mut line, &mut col);
            continue;
        }
        if c == '/' {
            chars.next();
            advance(c, &mut line, &mut col);
            if chars.peek() == Some(&'/') {
                while let Some(&d) = chars.peek() {
                    if d == '\n' {
                        break;
                    }
                    chars.next();
                    advance(d, &mut line, &mut col);
                }
                continue;
            }
            return Err(syntax(src, l0, c0, "`//` comment", "`/`"));
        }
        let simple = match c {
            '<' => Some(Tok::Lt),
            '>' => Some(Tok::Gt),
            ',' => Some(Tok::Comma),
            '?' => Some(Tok::Question),
            _ => None,
        };
        if let Some(tok) = simple {
            chars.next();
            advance(c, &mut line, &mut col);
            out.push(Spanned { tok, line: l0, col: c0 });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut word = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    word.push(d);
                    chars.next();
                    advance(d, &mut line, &mut col);
                } else {
                    break;
                }
            }
            let tok = match word.as_str() {
                "class" => Tok::Class,
                "extends" => Tok::Extends,
                "super" => Tok::Super,
                "Null" => Tok::Null,
                _ => Tok::Ident(word),
            };
            out.push(Spanned { tok, line: l0, col: c0 });
            continue;
        }
        return Err(syntax(src, l0, c0, "a token", &format!("`{c}`")));
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

fn syntax(src: &SourceText, line: usize, col: usize, expected: &str, found: &str) -> Error {
    Error::Syntax {
        origin: src.origin.clone(),
        line,
        col,
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

struct Parser<'a> {
    src: &'a SourceText,
    toks: Vec<Spanned>,
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a SourceText) -> Result<Self> {
        Ok(Parser {
            src,
            toks: lex(src)?,
            pos: 0,
            depth: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> Error {
        let s = &self.toks[self.pos];
        syntax(self.src, s.line, s.col, expected, &s.tok.describe())
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&tok.describe()))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek() {
            Tok::Ident(_) => match self.bump() {
                Tok::Ident(s) => Ok(s),
                _ => unreachable!(),
            },
            _ => Err(self.error("identifier")),
        }
    }

    fn table(&mut self) -> Result<ClassTable> {
        let mut decls = Vec::new();
        while *self.peek() != Tok::Eof {
            decls.push(self.decl()?);
        }
        Ok(ClassTable { decls })
    }

    fn decl(&mut self) -> Result<ClassDecl> {
        self.expect(Tok::Class)?;
        let name = self.ident()?;
        let mut params = Vec::new();
        if *self.peek() == Tok::Lt {
            self.bump();
            let mut seen = HashSet::new();
            loop {
                let at = self.pos;
                let pname = self.ident()?;
                if !seen.insert(pname.clone()) {
                    self.pos = at;
                    return Err(self.error("a fresh type parameter name"));
                }
                let bound = if *self.peek() == Tok::Extends {
                    self.bump();
                    Some(self.stype(std::slice::from_ref(&pname))?)
                } else {
                    None
                };
                params.push(TypeParam { name: pname, bound });
                match self.peek() {
                    Tok::Comma => {
                        self.bump();
                    }
                    Tok::Gt => {
                        self.bump();
                        break;
                    }
                    _ => return Err(self.error("`,` or `>`")),
                }
            }
        }
        let superclass = if *self.peek() == Tok::Extends {
            self.bump();
            let names: Vec<String> = params.iter().map(|p| p.name.clone()).collect();
            Some(self.stype(&names)?)
        } else {
            None
        };
        Ok(ClassDecl {
            name,
            params,
            superclass,
        })
    }

    fn resolve(name: String, params: &[String]) -> TypeExpr {
        if params.contains(&name) {
            TypeExpr::Param(name)
        } else {
            TypeExpr::Class { name, args: vec![] }
        }
    }

    fn stype(&mut self, params: &[String]) -> Result<TypeExpr> {
        let name = self.ident()?;
        self.applied(name, params)
    }

    fn applied(&mut self, name: String, params: &[String]) -> Result<TypeExpr> {
        if *self.peek() != Tok::Lt {
            return Ok(Self::resolve(name, params));
        }
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(self.error("shallower nesting"));
        }
        self.bump();
        let mut args = Vec::new();
        loop {
            args.push(self.targ(params)?);
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::Gt => {
                    self.bump();
                    break;
                }
                _ => return Err(self.error("`,` or `>`")),
            }
        }
        self.depth -= 1;
        Ok(TypeExpr::Class { name, args })
    }

    fn targ(&mut self, params: &[String]) -> Result<ArgExpr> {
        if *self.peek() == Tok::Question {
            self.bump();
            return match self.peek() {
                Tok::Extends => {
                    self.bump();
                    Ok(ArgExpr::Extends(self.gtype(params)?))
                }
                Tok::Super => {
                    self.bump();
                    Ok(ArgExpr::Super(self.gtype(params)?))
                }
                _ => Ok(ArgExpr::Wildcard),
            };
        }
        Ok(ArgExpr::Exact(self.gtype(params)?))
    }

    fn gtype(&mut self, params: &[String]) -> Result<TypeExpr> {
        match self.peek() {
            Tok::Null => {
                self.bump();
                Ok(TypeExpr::Null)
            }
            Tok::Ident(_) => {
                let name = self.ident()?;
                self.applied(name, params)
            }
            _ => Err(self.error("type")),
        }
    }
}

/// Parses a class table. Missing `extends` clauses and bounds mean `Object`.
/// Only syntax is checked here; see [`crate::table::validate_class_table`].
pub fn parse_class_table(src: &SourceText) -> Result<ClassTable> {
    Parser::new(src)?.table()
}

/// Parses and validates a class table in one go.
pub fn load_class_table(src: &SourceText) -> Result<ValidatedClassTable> {
    let table = parse_class_table(src)?;
    ValidatedClassTable::new(&table, &src.origin)
}

/// Parses a header-level type expression (no class table needed).
pub fn parse_type_expr(src: &SourceText) -> Result<TypeExpr> {
    let mut p = Parser::new(src)?;
    let e = p.gtype(&[])?;
    p.expect(Tok::Eof)?;
    Ok(e)
}

/// Parses a ground type against `table`, desugaring wildcards to intervals:
/// `? extends T` is `[Null, T]`, `? super T` is `[T, bound]`, `?` is
/// `[Null, bound]` and `T` is `[T, T]`.
pub fn parse_type(src: &SourceText, table: &ValidatedClassTable) -> Result<TypeTerm> {
    let e = parse_type_expr(src)?;
    let t = table.ground_type(&e)?;
    check_well_formed(table, &t)?;
    Ok(t)
}
