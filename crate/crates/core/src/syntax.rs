//! Text syntax for iterated forests and terms.
//!
//! Forests:
//!
//! ```text
//! tree0  := NAT
//! tree   := tree0 | '[' tree (':' (tree (',' tree)*)?)? ']'
//! forest := tree | '{' (tree (',' tree)*)? '}'
//! ```
//!
//! In `[label:children]` the label is a tree one level below the children.
//! Operands of different levels are lifted to the highest level present, so
//! `{0,[1:]}` is the level-1 forest of two singletons. `{}` is the empty
//! forest.
//!
//! Terms:
//!
//! ```text
//! term := NAT | '(' term '+' term ')' | '(' term '.' NAT term ')'
//!       | 'G(' term ',' term ',' term ')'
//! ```
//!
//! A term using `G` is a [`GTerm`], one using `.p` an [`STerm`]; mixing the
//! two is an error.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::forest::LTree;
use crate::iterated::{Alphabet, Color, IForest, ITree};
use crate::term::{GTerm, STerm};

/// Canonical text of a forest: children and trees sorted structurally.
pub fn serialize(f: &IForest) -> String {
    let f = f.canonical();
    match f.trees() {
        [] => "{}".to_string(),
        [t] => serialize_tree(t),
        trees => {
            let parts: Vec<String> = trees.iter().map(serialize_tree).collect();
            format!("{{{}}}", parts.join(","))
        }
    }
}

pub fn serialize_tree(t: &ITree) -> String {
    let mut out = String::new();
    write_tree(t, &mut out);
    out
}

fn write_tree(t: &ITree, out: &mut String) {
    match t {
        ITree::Color(c) => write!(out, "{c}").expect("write to string"),
        ITree::Node(shape) => write_shape(shape, out),
    }
}

fn write_shape(t: &LTree<ITree>, out: &mut String) {
    out.push('[');
    write_tree(&t.label, out);
    out.push(':');
    for (idx, c) in t.children.iter().enumerate() {
        if idx > 0 {
            out.push(',');
        }
        write_shape(c, out);
    }
    out.push(']');
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    G(GTerm),
    S(STerm),
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(Error::syntax(self.pos, format!("expected `{}`", b as char)))
        }
    }

    fn natural(&mut self) -> Result<(u64, usize)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::syntax(start, "expected a natural number"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let value = text
            .parse()
            .map_err(|_| Error::syntax(start, "number too large"))?;
        Ok((value, start))
    }

    fn color(&mut self) -> Result<(Color, usize)> {
        let (v, at) = self.natural()?;
        let c = Color::try_from(v).map_err(|_| Error::syntax(at, "color too large"))?;
        Ok((c, at))
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            Err(Error::syntax(self.pos, "unexpected trailing input"))
        }
    }
}

/// Parses a forest, checking colors against `k`.
pub fn parse_forest(text: &str, k: Alphabet) -> Result<IForest> {
    let mut cur = Cursor::new(text);
    let trees = if cur.eat(b'{') {
        let mut trees = Vec::new();
        if !cur.eat(b'}') {
            loop {
                trees.push(parse_tree(&mut cur, k)?);
                if cur.eat(b'}') {
                    break;
                }
                cur.expect(b',')?;
            }
        }
        trees
    } else {
        vec![parse_tree(&mut cur, k)?]
    };
    cur.finish()?;
    let level = trees.iter().map(ITree::level).max().unwrap_or(0);
    let trees = trees
        .iter()
        .map(|t| t.lifted(level).into_owned())
        .collect();
    IForest::new(level, trees)
}

fn parse_tree(cur: &mut Cursor<'_>, k: Alphabet) -> Result<ITree> {
    if !cur.eat(b'[') {
        let (c, at) = cur.color()?;
        k.check(c).map_err(|e| Error::syntax(at, e.to_string()))?;
        return Ok(ITree::Color(c));
    }
    let label = parse_tree(cur, k)?;
    let mut children = Vec::new();
    if cur.eat(b':') && cur.peek() != Some(b']') {
        loop {
            children.push(parse_tree(cur, k)?);
            if !cur.eat(b',') {
                break;
            }
        }
    }
    cur.expect(b']')?;
    let level = children
        .iter()
        .map(ITree::level)
        .chain([label.level() + 1])
        .max()
        .expect("nonempty");
    let label = label.lifted(level - 1).into_owned();
    let children = children
        .iter()
        .map(|c| match c.lifted(level).into_owned() {
            ITree::Node(shape) => *shape,
            ITree::Color(_) => unreachable!("lifted to level >= 1"),
        })
        .collect();
    Ok(ITree::node(LTree::new(label, children)))
}

enum Raw {
    Const(Color),
    Join(Box<Raw>, Box<Raw>),
    Dot(usize, Box<Raw>, Box<Raw>),
    G(Box<Raw>, Box<Raw>, Box<Raw>),
}

impl Raw {
    fn has_g(&self) -> bool {
        match self {
            Raw::Const(_) => false,
            Raw::G(..) => true,
            Raw::Join(a, b) | Raw::Dot(_, a, b) => a.has_g() || b.has_g(),
        }
    }

    fn has_dot(&self) -> bool {
        match self {
            Raw::Const(_) => false,
            Raw::Dot(..) => true,
            Raw::Join(a, b) => a.has_dot() || b.has_dot(),
            Raw::G(a, b, c) => a.has_dot() || b.has_dot() || c.has_dot(),
        }
    }

    fn into_g(self) -> GTerm {
        match self {
            Raw::Const(c) => GTerm::Const(c),
            Raw::Join(a, b) => GTerm::join(a.into_g(), b.into_g()),
            Raw::G(a, b, c) => GTerm::g(a.into_g(), b.into_g(), c.into_g()),
            Raw::Dot(..) => unreachable!("checked signature"),
        }
    }

    fn into_s(self) -> STerm {
        match self {
            Raw::Const(c) => STerm::Const(c),
            Raw::Join(a, b) => STerm::join(a.into_s(), b.into_s()),
            Raw::Dot(p, a, b) => STerm::dot(p, a.into_s(), b.into_s()),
            Raw::G(..) => unreachable!("checked signature"),
        }
    }
}

fn parse_raw(cur: &mut Cursor<'_>) -> Result<Raw> {
    match cur.peek() {
        Some(b'G') => {
            cur.pos += 1;
            cur.expect(b'(')?;
            let a = parse_raw(cur)?;
            cur.expect(b',')?;
            let b = parse_raw(cur)?;
            cur.expect(b',')?;
            let c = parse_raw(cur)?;
            cur.expect(b')')?;
            Ok(Raw::G(Box::new(a), Box::new(b), Box::new(c)))
        }
        Some(b'(') => {
            cur.pos += 1;
            let a = parse_raw(cur)?;
            let node = if cur.eat(b'+') {
                let b = parse_raw(cur)?;
                Raw::Join(Box::new(a), Box::new(b))
            } else if cur.eat(b'.') {
                let (p, at) = cur.natural()?;
                let p = usize::try_from(p).map_err(|_| Error::syntax(at, "exponent too large"))?;
                let b = parse_raw(cur)?;
                Raw::Dot(p, Box::new(a), Box::new(b))
            } else {
                return Err(Error::syntax(cur.pos, "expected `+` or `.`"));
            };
            cur.expect(b')')?;
            Ok(node)
        }
        Some(b) if b.is_ascii_digit() => Ok(Raw::Const(cur.color()?.0)),
        _ => Err(Error::syntax(cur.pos, "expected a term")),
    }
}

fn parse_whole(text: &str) -> Result<Raw> {
    let mut cur = Cursor::new(text);
    let raw = parse_raw(&mut cur)?;
    cur.finish()?;
    if raw.has_g() && raw.has_dot() {
        return Err(Error::MixedSignatures);
    }
    Ok(raw)
}

/// Parses either signature; terms with neither `G` nor products are read as
/// [`STerm`]s.
pub fn parse_term(text: &str) -> Result<Term> {
    let raw = parse_whole(text)?;
    Ok(if raw.has_g() {
        Term::G(raw.into_g())
    } else {
        Term::S(raw.into_s())
    })
}

pub fn parse_gterm(text: &str) -> Result<GTerm> {
    let raw = parse_whole(text)?;
    if raw.has_dot() {
        return Err(Error::MixedSignatures);
    }
    Ok(raw.into_g())
}

pub fn parse_sterm(text: &str) -> Result<STerm> {
    let raw = parse_whole(text)?;
    if raw.has_g() {
        return Err(Error::MixedSignatures);
    }
    Ok(raw.into_s())
}
