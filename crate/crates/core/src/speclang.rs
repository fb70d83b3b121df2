//! Ring/module expressions and the structure-constant interchange format.
//!
//! ```text
//! ring   := gf(INT) | gf(INT, POLY) | quot(INT, POLY) | trivext(ring, module) | prod(ring, ring)
//! module := free(INT) | regular | quotfree(INT, [TUPLE, ..]) | dual(module) | sum(module, module)
//! POLY   := [INT, ..]        coefficients, lowest degree first
//! TUPLE  := (INT, ..)        an element of R^n, copy-major
//! ```
//!
//! Keywords are case-insensitive and whitespace is ignored.

use std::fmt;

use serde::Deserialize;

use crate::algebra::{gf, gf_ext, poly_quotient, product, trivial_extension, FpAlgebra, Ring};
use crate::error::{Error, Result};
use crate::fplinalg::{check_prime, FpMatrix};
use crate::modules::{direct_sum, dual, free_module, quotient_free, regular_module, FinModule, FinModuleMap};
use crate::poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingExpr {
    Gf(u64),
    GfExt(u64, Vec<u64>),
    Quot(u64, Vec<u64>),
    TrivExt(Box<RingExpr>, Box<ModuleExpr>),
    Prod(Box<RingExpr>, Box<RingExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleExpr {
    Free(usize),
    Regular,
    QuotFree(usize, Vec<Vec<u64>>),
    Dual(Box<ModuleExpr>),
    Sum(Box<ModuleExpr>, Box<ModuleExpr>),
}

struct List<'a>(&'a [u64]);

impl fmt::Display for List<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Gf(p) => write!(f, "gf({p})"),
            RingExpr::GfExt(p, c) => write!(f, "gf({p}, [{}])", List(c)),
            RingExpr::Quot(p, c) => write!(f, "quot({p}, [{}])", List(c)),
            RingExpr::TrivExt(r, m) => write!(f, "trivext({r}, {m})"),
            RingExpr::Prod(a, b) => write!(f, "prod({a}, {b})"),
        }
    }
}

impl fmt::Display for ModuleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleExpr::Free(n) => write!(f, "free({n})"),
            ModuleExpr::Regular => f.write_str("regular"),
            ModuleExpr::QuotFree(n, rels) => {
                let rels: Vec<String> = rels.iter().map(|r| format!("({})", List(r))).collect();
                write!(f, "quotfree({n}, [{}])", rels.join(", "))
            }
            ModuleExpr::Dual(m) => write!(f, "dual({m})"),
            ModuleExpr::Sum(a, b) => write!(f, "sum({a}, {b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Punct(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Punct(c) => write!(f, "'{c}'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek().filter(|(_, c)| c.is_ascii_alphanumeric() || *c == '_') {
                s.push(c.to_ascii_lowercase());
                it.next();
            }
            out.push((Tok::Ident(s), pos));
        } else if c.is_ascii_digit() {
            let mut n: u64 = 0;
            while let Some(&(_, c)) = it.peek().filter(|(_, c)| c.is_ascii_digit()) {
                n = n
                    .checked_mul(10)
                    .and_then(|n| n.checked_add(c.to_digit(10).unwrap() as u64))
                    .ok_or_else(|| Error::Parse {
                        pos,
                        msg: "integer too large".into(),
                    })?;
                it.next();
            }
            out.push((Tok::Int(n), pos));
        } else if "()[],".contains(c) {
            out.push((Tok::Punct(c), pos));
            it.next();
        } else {
            return Err(Error::Parse {
                pos,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Parser> {
        Ok(Parser { toks: lex(text)?, at: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn next(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos, msg: msg.into() })
    }

    fn punct(&mut self, c: char) -> Result<()> {
        match self.next() {
            (Tok::Punct(d), _) if d == c => Ok(()),
            (t, pos) => self.err(pos, format!("expected '{c}', found {t}")),
        }
    }

    fn int(&mut self) -> Result<(u64, usize)> {
        match self.next() {
            (Tok::Int(n), pos) => Ok((n, pos)),
            (t, pos) => self.err(pos, format!("expected an integer, found {t}")),
        }
    }

    fn prime(&mut self) -> Result<u64> {
        let (p, pos) = self.int()?;
        check_prime(p).map_err(|_| Error::Parse {
            pos,
            msg: format!("{p} is not prime"),
        })?;
        Ok(p)
    }

    /// `open INT (, INT)* close`, possibly empty.
    fn int_list(&mut self, open: char, close: char) -> Result<Vec<u64>> {
        self.punct(open)?;
        let mut v = Vec::new();
        if *self.peek() == Tok::Punct(close) {
            self.next();
            return Ok(v);
        }
        loop {
            v.push(self.int()?.0);
            match self.next() {
                (Tok::Punct(',') , _) => continue,
                (Tok::Punct(c), _) if c == close => return Ok(v),
                (t, pos) => return self.err(pos, format!("expected ',' or '{close}', found {t}")),
            }
        }
    }

    fn keyword(&mut self) -> Result<(String, usize)> {
        match self.next() {
            (Tok::Ident(s), pos) => Ok((s, pos)),
            (t, pos) => self.err(pos, format!("expected a keyword, found {t}")),
        }
    }

    fn ring(&mut self) -> Result<RingExpr> {
        let (kw, pos) = self.keyword()?;
        self.punct('(')?;
        let r = match kw.as_str() {
            "gf" => {
                let p = self.prime()?;
                if *self.peek() == Tok::Punct(',') {
                    self.next();
                    let at = self.pos();
                    let f = self.int_list('[', ']')?;
                    let small = to_u32(&f, p);
                    match poly::is_irreducible(&small, p as u32) {
                        Ok(true) => RingExpr::GfExt(p, f),
                        Ok(false) => return self.err(at, "polynomial is not irreducible"),
                        Err(Error::NotMonic) => return self.err(at, "polynomial is not monic"),
                        Err(e) => return self.err(at, e.to_string()),
                    }
                } else {
                    RingExpr::Gf(p)
                }
            }
            "quot" => {
                let p = self.prime()?;
                self.punct(',')?;
                let at = self.pos();
                let f = self.int_list('[', ']')?;
                if !poly::is_monic(&to_u32(&f, p), p as u32) {
                    return self.err(at, "polynomial must be monic of degree >= 1");
                }
                RingExpr::Quot(p, f)
            }
            "trivext" => {
                let r = self.ring()?;
                self.punct(',')?;
                let m = self.module()?;
                RingExpr::TrivExt(Box::new(r), Box::new(m))
            }
            "prod" => {
                let a = self.ring()?;
                self.punct(',')?;
                let b = self.ring()?;
                RingExpr::Prod(Box::new(a), Box::new(b))
            }
            _ => return self.err(pos, format!("unknown ring constructor '{kw}'")),
        };
        self.punct(')')?;
        Ok(r)
    }

    fn module(&mut self) -> Result<ModuleExpr> {
        let (kw, pos) = self.keyword()?;
        if kw == "regular" {
            // `regular()` is accepted too
            if *self.peek() == Tok::Punct('(') && self.toks.get(self.at + 1).map(|t| &t.0) == Some(&Tok::Punct(')')) {
                self.next();
                self.next();
            }
            return Ok(ModuleExpr::Regular);
        }
        self.punct('(')?;
        let m = match kw.as_str() {
            "free" => ModuleExpr::Free(self.int()?.0 as usize),
            "quotfree" => {
                let n = self.int()?.0 as usize;
                self.punct(',')?;
                self.punct('[')?;
                let mut rels = Vec::new();
                if *self.peek() != Tok::Punct(']') {
                    loop {
                        rels.push(self.int_list('(', ')')?);
                        match self.next() {
                            (Tok::Punct(','), _) => continue,
                            (Tok::Punct(']'), _) => break,
                            (t, pos) => return self.err(pos, format!("expected ',' or ']', found {t}")),
                        }
                    }
                } else {
                    self.next();
                }
                ModuleExpr::QuotFree(n, rels)
            }
            "dual" => ModuleExpr::Dual(Box::new(self.module()?)),
            "sum" => {
                let a = self.module()?;
                self.punct(',')?;
                let b = self.module()?;
                ModuleExpr::Sum(Box::new(a), Box::new(b))
            }
            _ => return self.err(pos, format!("unknown module constructor '{kw}'")),
        };
        self.punct(')')?;
        Ok(m)
    }

    fn finish(&mut self) -> Result<()> {
        match self.next() {
            (Tok::End, _) => Ok(()),
            (t, pos) => self.err(pos, format!("trailing input starting at {t}")),
        }
    }
}

fn to_u32(f: &[u64], p: u64) -> Vec<u32> {
    f.iter().map(|&c| (c % p) as u32).collect()
}

pub fn parse_ring(text: &str) -> Result<RingExpr> {
    let mut p = Parser::new(text)?;
    let r = p.ring()?;
    p.finish()?;
    Ok(r)
}

pub fn parse_module(text: &str) -> Result<ModuleExpr> {
    let mut p = Parser::new(text)?;
    let m = p.module()?;
    p.finish()?;
    Ok(m)
}

pub fn elaborate_ring(expr: &RingExpr) -> Result<Ring> {
    match expr {
        RingExpr::Gf(p) => gf(*p),
        RingExpr::GfExt(p, f) => gf_ext(*p, &to_u32(f, *p)),
        RingExpr::Quot(p, f) => poly_quotient(*p, &to_u32(f, *p)),
        RingExpr::TrivExt(r, m) => {
            let base = elaborate_ring(r)?;
            let e = elaborate_module(m, &base)?;
            trivial_extension(&base, &e)
        }
        RingExpr::Prod(a, b) => product(&elaborate_ring(a)?, &elaborate_ring(b)?),
    }
}

pub fn elaborate_module(expr: &ModuleExpr, ring: &Ring) -> Result<FinModule> {
    match expr {
        ModuleExpr::Free(n) => Ok(free_module(ring, *n)),
        ModuleExpr::Regular => Ok(regular_module(ring)),
        ModuleExpr::QuotFree(n, rels) => {
            let p = ring.p() as u64;
            let rels: Vec<Vec<u32>> = rels.iter().map(|r| to_u32(r, p)).collect();
            quotient_free(ring, *n, &rels)
        }
        ModuleExpr::Dual(m) => Ok(dual(&elaborate_module(m, ring)?)),
        ModuleExpr::Sum(a, b) => direct_sum(&elaborate_module(a, ring)?, &elaborate_module(b, ring)?),
    }
}

/// Parses and elaborates a ring expression.
pub fn ring_from_expr(text: &str) -> Result<Ring> {
    elaborate_ring(&parse_ring(text)?)
}

/// Parses and elaborates a module expression over `ring`.
pub fn module_from_expr(text: &str, ring: &Ring) -> Result<FinModule> {
    elaborate_module(&parse_module(text)?, ring)
}

/// Ring from either an expression or an interchange object.
pub fn load_ring(text: &str) -> Result<Ring> {
    if looks_like_object(text) {
        deserialize_ring(text)
    } else {
        ring_from_expr(text)
    }
}

/// Module from either an expression or an interchange object.
pub fn load_module(text: &str, ring: &Ring) -> Result<FinModule> {
    if looks_like_object(text) {
        deserialize_module(text, ring)
    } else {
        module_from_expr(text, ring)
    }
}

fn looks_like_object(text: &str) -> bool {
    text.trim_start().starts_with(['{', '['])
}

fn int_list<T: fmt::Display>(xs: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = xs.into_iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn matrix_rows(m: &FpMatrix) -> String {
    int_list((0..m.rows()).map(|r| int_list(m.row(r).iter())))
}

/// Canonical text of a ring: `{p:.., dim:.., names:[..], one:[..], mul:[..]}`.
pub fn serialize_ring(r: &FpAlgebra) -> String {
    let d = r.dim();
    let names: Vec<String> = r
        .names()
        .iter()
        .map(|n| serde_json::to_string(n).expect("string serializes"))
        .collect();
    let mul = int_list((0..d).map(|i| int_list((0..d).map(|j| int_list(r.product_coeffs(i, j).iter())))));
    format!(
        "{{p:{}, dim:{}, names:[{}], one:{}, mul:{}}}",
        r.p(),
        d,
        names.join(","),
        int_list(r.one().iter()),
        mul
    )
}

/// Canonical text of a module: `{dim:.., action:[..]}`, one matrix per ring basis element.
pub fn serialize_module(m: &FinModule) -> String {
    format!(
        "{{dim:{}, action:{}}}",
        m.dim(),
        int_list(m.action().iter().map(matrix_rows))
    )
}

/// Canonical text of a map: `{rows:.., cols:.., entries:[..]}`, row-major.
pub fn serialize_map(f: &FinModuleMap) -> String {
    serialize_matrix(f.matrix())
}

pub fn serialize_matrix(m: &FpMatrix) -> String {
    format!(
        "{{rows:{}, cols:{}, entries:{}}}",
        m.rows(),
        m.cols(),
        int_list(m.entries().iter())
    )
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RingDoc {
    p: u64,
    dim: usize,
    names: Vec<String>,
    one: Vec<u64>,
    mul: Vec<Vec<Vec<u64>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleDoc {
    dim: usize,
    action: Vec<Vec<Vec<u64>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDoc {
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    Many(Vec<T>),
    One(T),
}

fn from_text<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    json5::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

fn entry(x: u64, p: u32, what: &str) -> Result<u32> {
    if x >= p as u64 {
        return Err(Error::Format(format!("{what} entry {x} outside [0, {p})")));
    }
    Ok(x as u32)
}

fn ring_from_doc(doc: RingDoc) -> Result<Ring> {
    let p = check_prime(doc.p)?;
    let d = doc.dim;
    if doc.names.len() != d || doc.one.len() != d || doc.mul.len() != d {
        return Err(Error::Format(format!("fields disagree with dim {d}")));
    }
    let mut mul = Vec::with_capacity(d * d * d);
    for row in &doc.mul {
        if row.len() != d {
            return Err(Error::Format("mul must be dim x dim x dim".into()));
        }
        for c in row {
            if c.len() != d {
                return Err(Error::Format("mul must be dim x dim x dim".into()));
            }
            for &x in c {
                mul.push(entry(x, p, "mul")?);
            }
        }
    }
    let one = doc.one.iter().map(|&x| entry(x, p, "one")).collect::<Result<_>>()?;
    Ok(std::sync::Arc::new(FpAlgebra::new(p as u64, doc.names, one, mul)?))
}

pub fn deserialize_ring(text: &str) -> Result<Ring> {
    ring_from_doc(from_text(text)?)
}

/// One ring object or a top-level list of them.
pub fn deserialize_rings(text: &str) -> Result<Vec<Ring>> {
    match from_text::<OneOrMany<RingDoc>>(text)? {
        OneOrMany::One(d) => Ok(vec![ring_from_doc(d)?]),
        OneOrMany::Many(ds) => ds.into_iter().map(ring_from_doc).collect(),
    }
}

fn matrix_from_rows(rows: &[Vec<u64>], n: usize, p: u32) -> Result<FpMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Format(format!("action matrices must be {n} x {n}")));
    }
    let data = rows
        .iter()
        .flatten()
        .map(|&x| entry(x, p, "action"))
        .collect::<Result<Vec<u32>>>()?;
    FpMatrix::from_vec(p, n, n, data)
}

fn module_from_doc(doc: ModuleDoc, ring: &Ring) -> Result<FinModule> {
    if doc.action.len() != ring.dim() {
        return Err(Error::Format(format!(
            "{} action matrices for a {}-dimensional ring",
            doc.action.len(),
            ring.dim()
        )));
    }
    let action = doc
        .action
        .iter()
        .map(|m| matrix_from_rows(m, doc.dim, ring.p()))
        .collect::<Result<Vec<_>>>()?;
    if doc.dim == 0 {
        return Ok(crate::modules::zero_module(ring));
    }
    FinModule::new(ring, action)
}

pub fn deserialize_module(text: &str, ring: &Ring) -> Result<FinModule> {
    module_from_doc(from_text(text)?, ring)
}

pub fn deserialize_modules(text: &str, ring: &Ring) -> Result<Vec<FinModule>> {
    match from_text::<OneOrMany<ModuleDoc>>(text)? {
        OneOrMany::One(d) => Ok(vec![module_from_doc(d, ring)?]),
        OneOrMany::Many(ds) => ds.into_iter().map(|d| module_from_doc(d, ring)).collect(),
    }
}

pub fn deserialize_matrix(text: &str, p: u32) -> Result<FpMatrix> {
    let doc: MatrixDoc = from_text(text)?;
    let data = doc
        .entries
        .iter()
        .map(|&x| entry(x, p, "map"))
        .collect::<Result<Vec<u32>>>()?;
    FpMatrix::from_vec(p, doc.rows, doc.cols, data)
}

/// A map between given modules, validated for shape and equivariance.
pub fn deserialize_map(text: &str, source: &FinModule, target: &FinModule) -> Result<FinModuleMap> {
    FinModuleMap::new(source, target, deserialize_matrix(text, source.p())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Violation;

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_ring("trivext(gf(2), free(1))").unwrap(),
            RingExpr::TrivExt(Box::new(RingExpr::Gf(2)), Box::new(ModuleExpr::Free(1)))
        );
        assert!(matches!(parse_ring("gf(4)"), Err(Error::Parse { pos: 3, .. })));
        assert_eq!(ring_from_expr("gf(2, [1,1,1])").unwrap().cardinality(), Some(4));
        assert!(matches!(parse_ring("gf(2, [1,0,1])"), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(parse_ring("gf(3, [1,1,2])"), Err(Error::Parse { .. })));
        assert_eq!(parse_ring(" TRIVEXT ( GF(2) ,Regular ) ").unwrap().to_string(), "trivext(gf(2), regular)");
        assert!(parse_ring("prod(gf(2))").is_err());
        assert!(parse_ring("gf(2) x").is_err());
        assert!(parse_ring("gf(2").is_err());
        assert!(parse_ring("ring(2)").is_err());
        assert!(parse_ring("gf(2)$").is_err());
    }

    #[test]
    fn elaborate_examples() {
        assert_eq!(ring_from_expr("trivext(gf(2), free(2))").unwrap().cardinality(), Some(8));
        assert_eq!(ring_from_expr("prod(gf(2), gf(3))").unwrap_err(), Error::ModulusMismatch(2, 3));
        assert_eq!(ring_from_expr("trivext(quot(2,[0,0,1]), regular)").unwrap().dim(), 4);
        let r = ring_from_expr("trivext(gf(2), free(1))").unwrap();
        assert_eq!(module_from_expr("quotfree(1, [(0,1)])", &r).unwrap().dim(), 1);
        assert_eq!(module_from_expr("sum(dual(regular), free(2))", &r).unwrap().dim(), 6);
        assert!(module_from_expr("quotfree(1, [(0,1,1)])", &r).is_err());
    }

    #[test]
    fn serialize_gf2() {
        assert_eq!(
            serialize_ring(&gf(2).unwrap()),
            r#"{p:2, dim:1, names:["1"], one:[1], mul:[[[1]]]}"#
        );
    }

    #[test]
    fn round_trips() {
        let r = ring_from_expr("trivext(gf(2), free(1))").unwrap();
        let back = deserialize_ring(&serialize_ring(&r)).unwrap();
        assert_eq!(*back, *r);
        assert_eq!(back.structure_constants(), r.structure_constants());
        let m = module_from_expr("sum(quotfree(1, [(0,1)]), regular)", &r).unwrap();
        assert_eq!(deserialize_module(&serialize_module(&m), &r).unwrap(), m);
        let f = FinModuleMap::identity(&m);
        assert_eq!(deserialize_map(&serialize_map(&f), &m, &m).unwrap(), f);
        let list = format!("[{}, {}]", serialize_ring(&r), serialize_ring(&gf(3).unwrap()));
        assert_eq!(deserialize_rings(&list).unwrap().len(), 2);
    }

    #[test]
    fn rejects_bad_documents() {
        let bad = r#"{p:2, dim:2, names:["a","b"], one:[1,0], mul:[[[1,0],[0,1]],[[0,0],[0,0]]]}"#;
        match deserialize_ring(bad) {
            Err(Error::InvalidAlgebra(v)) => {
                assert!(v.contains(&Violation::Commutativity { i: 0, j: 1 }.to_string()))
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(deserialize_ring("{p:2"), Err(Error::Format(_))));
        assert!(deserialize_ring(r#"{p:2, dim:1, names:["1"], one:[3], mul:[[[1]]]}"#).is_err());
        assert!(deserialize_ring(r#"{p:4, dim:1, names:["1"], one:[1], mul:[[[1]]]}"#).is_err());
        let k = gf(2).unwrap();
        assert!(deserialize_module("{dim:1, action:[[[0]]]}", &k).is_err());
        assert!(deserialize_module("{dim:1, action:[[[1]]], extra:1}", &k).is_err());
    }
}
