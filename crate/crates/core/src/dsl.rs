//! The instance file format: one file holds the field, the base algebra,
//! the quiver with relations, named A-modules and named representations.
//!
//! ```text
//! field 101
//! algebra A { vertex a; arrow x: a -> a; rel x.x; }
//! quiver Q { vertices 2; arrow c: 2 -> 1; }
//! module M { dims=[1] }
//! rep X { at 2: module dims=[2] maps={x=[[0,0],[1,0]]}; at 1: M; map c = [[1,0]]; }
//! ```
//!
//! Words are read right to left, so `b1.g` is `g` followed by `b1`.
//! Matrices are row-major with one row per target coordinate.

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::{AMap, AModule, BaseAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::lambda::{Lambda, LambdaRep};
use crate::linalg::Matrix;
use crate::quiver::{Arrow, BoundQuiver, MonomialIdeal, Path, Quiver};

/// Source location. Ignored by equality so printed files compare equal to parsed ones.
#[derive(Clone, Copy, Debug, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Pos {
    fn error(self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Name {
    pub text: String,
    pub pos: Pos,
}

impl Name {
    fn new(text: impl Into<String>) -> Self {
        Self {
            text: text.into(),
            pos: Pos::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ArrowDecl {
    pub name: Name,
    pub source: Name,
    pub target: Name,
}

/// A relation, arrows in written order.
#[derive(Clone, Debug, PartialEq)]
pub struct Word {
    pub arrows: Vec<Name>,
    pub pos: Pos,
}

impl Word {
    fn text(&self) -> String {
        self.arrows
            .iter()
            .map(|a| a.text.as_str())
            .collect::<Vec<_>>()
            .join(".")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraDecl {
    pub name: Name,
    pub vertices: Vec<Name>,
    pub arrows: Vec<ArrowDecl>,
    pub relations: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Vertices {
    /// Vertices `1..=n`.
    Count(usize),
    Names(Vec<Name>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuiverDecl {
    pub name: Name,
    pub vertices: Vertices,
    pub arrows: Vec<ArrowDecl>,
    pub relations: Vec<Word>,
    /// Labels in vertex order; computed when absent.
    pub labels: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixLit {
    pub rows: Vec<Vec<BigRational>>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModuleBody {
    pub dims: Vec<usize>,
    pub maps: Vec<(Name, MatrixLit)>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModuleDecl {
    pub name: Name,
    pub body: ModuleBody,
}

#[derive(Clone, Debug, PartialEq)]
pub enum BranchDecl {
    Inline(ModuleBody),
    Named(Name),
}

#[derive(Clone, Debug, PartialEq)]
pub struct AtDecl {
    pub vertex: Name,
    pub branch: BranchDecl,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MapLit {
    /// Only for a base algebra with one vertex.
    Single(MatrixLit),
    /// One block per A-vertex.
    Blocks(Vec<(Name, MatrixLit)>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct MapDecl {
    pub arrow: Name,
    pub value: MapLit,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepDecl {
    pub name: Name,
    pub branches: Vec<AtDecl>,
    pub maps: Vec<MapDecl>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpecFile {
    pub field: FieldSpec,
    /// `None` means the ground field.
    pub algebra: Option<AlgebraDecl>,
    pub quiver: QuiverDecl,
    pub modules: Vec<ModuleDecl>,
    pub reps: Vec<RepDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(s) => write!(f, "`{s}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Eof => f.write_str("end of file"),
        }
    }
}

const SYMBOLS: [&str; 12] = ["->", "{", "}", "[", "]", ";", ":", ",", "=", ".", "-", "/"];

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(chars[start..i].iter().collect()), pos));
        } else if let Some(s) = SYMBOLS.iter().find(|s| {
            let s: Vec<char> = s.chars().collect();
            chars[i..].starts_with(&s)
        }) {
            i += s.len();
            out.push((Tok::Sym(s), pos));
        } else {
            return Err(pos.error(format!("unexpected character `{c}`")));
        }
        col += i - start;
    }
    out.push((Tok::Eof, Pos { line, column: col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T> {
        Err(self.pos().error(format!("expected {wanted}, found {}", self.peek())))
    }

    fn eat(&mut self, sym: &str) -> bool {
        if matches!(self.peek(), Tok::Sym(s) if *s == sym) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, sym: &str) -> Result<()> {
        if self.eat(sym) {
            Ok(())
        } else {
            self.unexpected(&format!("`{sym}`"))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Tok::Ident(s) if s == kw) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> Result<Name> {
        match self.peek().clone() {
            Tok::Ident(text) => {
                let pos = self.bump().1;
                Ok(Name { text, pos })
            }
            _ => self.unexpected(what),
        }
    }

    /// A vertex reference: identifier or number.
    fn vertex(&mut self) -> Result<Name> {
        match self.peek().clone() {
            Tok::Ident(text) | Tok::Int(text) => {
                let pos = self.bump().1;
                Ok(Name { text, pos })
            }
            _ => self.unexpected("a vertex"),
        }
    }

    fn usize(&mut self, what: &str) -> Result<usize> {
        match self.peek().clone() {
            Tok::Int(text) => {
                let pos = self.bump().1;
                text.parse().map_err(|_| pos.error(format!("{text} is too large")))
            }
            _ => self.unexpected(what),
        }
    }

    fn number(&mut self) -> Result<BigRational> {
        let negative = self.eat("-");
        let num: BigInt = match self.peek().clone() {
            Tok::Int(text) => {
                self.bump();
                text.parse().expect("digits")
            }
            _ => return self.unexpected("a number"),
        };
        let den: BigInt = if self.eat("/") {
            let pos = self.pos();
            match self.peek().clone() {
                Tok::Int(text) => {
                    self.bump();
                    let d: BigInt = text.parse().expect("digits");
                    if d.is_zero() {
                        return Err(pos.error("zero denominator"));
                    }
                    d
                }
                _ => return self.unexpected("a denominator"),
            }
        } else {
            BigInt::one()
        };
        let value = BigRational::new(num, den);
        Ok(if negative { -value } else { value })
    }

    fn list<T>(&mut self, open: &str, close: &str, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        self.expect(open)?;
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn matrix(&mut self) -> Result<MatrixLit> {
        let pos = self.pos();
        let rows = self.list("[", "]", |p| p.list("[", "]", |p| p.number()))?;
        if let Some(r) = rows.iter().find(|r| r.len() != rows[0].len()) {
            return Err(pos.error(format!(
                "ragged matrix: rows of length {} and {}",
                rows[0].len(),
                r.len()
            )));
        }
        Ok(MatrixLit { rows, pos })
    }

    fn word(&mut self) -> Result<Word> {
        let pos = self.pos();
        let mut arrows = vec![self.ident("an arrow")?];
        while self.eat(".") {
            arrows.push(self.ident("an arrow")?);
        }
        Ok(Word { arrows, pos })
    }

    fn arrow_decl(&mut self) -> Result<ArrowDecl> {
        let name = self.ident("an arrow name")?;
        self.expect(":")?;
        let source = self.vertex()?;
        self.expect("->")?;
        let target = self.vertex()?;
        Ok(ArrowDecl { name, source, target })
    }

    fn module_body(&mut self) -> Result<ModuleBody> {
        let pos = self.pos();
        if !self.keyword("dims") {
            return self.unexpected("`dims`");
        }
        self.expect("=")?;
        let dims = self.list("[", "]", |p| p.usize("a dimension"))?;
        let maps = if self.keyword("maps") {
            self.expect("=")?;
            self.list("{", "}", |p| {
                let n = p.ident("an arrow of the base algebra")?;
                p.expect("=")?;
                Ok((n, p.matrix()?))
            })?
        } else {
            Vec::new()
        };
        Ok(ModuleBody { dims, maps, pos })
    }

    fn algebra(&mut self) -> Result<AlgebraDecl> {
        let name = self.ident("an algebra name")?;
        self.expect("{")?;
        let mut decl = AlgebraDecl {
            name,
            vertices: Vec::new(),
            arrows: Vec::new(),
            relations: Vec::new(),
        };
        while !self.eat("}") {
            if self.keyword("vertex") {
                decl.vertices.push(self.vertex()?);
                while self.eat(",") {
                    decl.vertices.push(self.vertex()?);
                }
            } else if self.keyword("arrow") {
                decl.arrows.push(self.arrow_decl()?);
            } else if self.keyword("rel") {
                decl.relations.push(self.word()?);
            } else {
                return self.unexpected("`vertex`, `arrow`, `rel` or `}`");
            }
            self.expect(";")?;
        }
        Ok(decl)
    }

    fn quiver(&mut self) -> Result<QuiverDecl> {
        let name = self.ident("a quiver name")?;
        self.expect("{")?;
        let mut vertices = None;
        let mut decl = QuiverDecl {
            name,
            vertices: Vertices::Count(0),
            arrows: Vec::new(),
            relations: Vec::new(),
            labels: None,
        };
        while !self.eat("}") {
            let pos = self.pos();
            if self.keyword("vertices") {
                if vertices.is_some() {
                    return Err(pos.error("vertices declared twice"));
                }
                vertices = Some(match self.peek().clone() {
                    Tok::Int(_) => Vertices::Count(self.usize("a vertex count")?),
                    _ => {
                        let mut names = vec![self.ident("a vertex name")?];
                        while self.eat(",") {
                            names.push(self.ident("a vertex name")?);
                        }
                        Vertices::Names(names)
                    }
                });
            } else if self.keyword("arrow") {
                decl.arrows.push(self.arrow_decl()?);
            } else if self.keyword("rel") {
                decl.relations.push(self.word()?);
            } else if self.keyword("labels") {
                decl.labels = Some(self.list("[", "]", |p| p.usize("a label"))?);
            } else {
                return self.unexpected("`vertices`, `arrow`, `rel`, `labels` or `}`");
            }
            self.expect(";")?;
        }
        decl.vertices = vertices.ok_or_else(|| decl.name.pos.error("quiver has no `vertices` declaration"))?;
        Ok(decl)
    }

    fn rep(&mut self) -> Result<RepDecl> {
        let name = self.ident("a representation name")?;
        self.expect("{")?;
        let mut decl = RepDecl {
            name,
            branches: Vec::new(),
            maps: Vec::new(),
        };
        while !self.eat("}") {
            if self.keyword("at") {
                let vertex = self.vertex()?;
                self.expect(":")?;
                let branch = if self.keyword("module") {
                    BranchDecl::Inline(self.module_body()?)
                } else {
                    BranchDecl::Named(self.ident("`module` or a module name")?)
                };
                decl.branches.push(AtDecl { vertex, branch });
            } else if self.keyword("map") {
                let arrow = self.ident("an arrow")?;
                self.expect("=")?;
                let value = if matches!(self.peek(), Tok::Sym("{")) {
                    MapLit::Blocks(self.list("{", "}", |p| {
                        let v = p.vertex()?;
                        p.expect("=")?;
                        Ok((v, p.matrix()?))
                    })?)
                } else {
                    MapLit::Single(self.matrix()?)
                };
                decl.maps.push(MapDecl { arrow, value });
            } else {
                return self.unexpected("`at`, `map` or `}`");
            }
            self.expect(";")?;
        }
        Ok(decl)
    }

    fn file(&mut self) -> Result<SpecFile> {
        let mut field = None;
        let mut algebra = None;
        let mut quiver = None;
        let mut modules = Vec::new();
        let mut reps = Vec::new();
        loop {
            let pos = self.pos();
            if *self.peek() == Tok::Eof {
                break;
            }
            if self.keyword("field") {
                if field.is_some() {
                    return Err(pos.error("field declared twice"));
                }
                field = Some(match self.peek().clone() {
                    Tok::Ident(s) if s == "rational" => {
                        self.bump();
                        FieldSpec::Rational
                    }
                    Tok::Int(_) => {
                        let p = self.usize("a prime")?;
                        crate::field::PrimeField::new(p as u64).map_err(|e| pos.error(e.to_string()))?;
                        FieldSpec::Prime(p as u64)
                    }
                    _ => return self.unexpected("a prime or `rational`"),
                });
            } else if self.keyword("algebra") {
                if algebra.is_some() {
                    return Err(pos.error("algebra declared twice"));
                }
                algebra = Some(self.algebra()?);
            } else if self.keyword("quiver") {
                if quiver.is_some() {
                    return Err(pos.error("quiver declared twice"));
                }
                quiver = Some(self.quiver()?);
            } else if self.keyword("module") {
                let name = self.ident("a module name")?;
                self.expect("{")?;
                let body = self.module_body()?;
                self.eat(";");
                self.expect("}")?;
                modules.push(ModuleDecl { name, body });
            } else if self.keyword("rep") {
                reps.push(self.rep()?);
            } else {
                return self.unexpected("`field`, `algebra`, `quiver`, `module` or `rep`");
            }
            self.eat(";");
        }
        let end = self.pos();
        let field = field.ok_or_else(|| end.error("missing field section"))?;
        let quiver = quiver.ok_or_else(|| end.error("missing quiver section"))?;
        Ok(SpecFile {
            field,
            algebra,
            quiver,
            modules,
            reps,
        })
    }
}

/// Parses an instance file. Names are resolved by [`SpecFile::instantiate`].
pub fn parse_spec(text: &str) -> Result<SpecFile> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    p.file()
}

/// A parsed file bound to a field.
#[derive(Clone, Debug)]
pub struct Instance<K: Field> {
    pub base: BaseAlgebra<K>,
    pub lambda: Lambda<K>,
    pub modules: Vec<(String, AModule<K>)>,
    pub reps: Vec<(String, LambdaRep<K>)>,
}

impl<K: Field> Instance<K> {
    pub fn rep(&self, name: &str) -> Result<&LambdaRep<K>> {
        self.reps
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, r)| r)
            .ok_or_else(|| Error::Invalid(format!("no representation named `{name}`")))
    }

    pub fn module(&self, name: &str) -> Result<&AModule<K>> {
        self.modules
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| Error::Invalid(format!("no module named `{name}`")))
    }
}

fn resolve(names: &[String], n: &Name, what: &str) -> Result<usize> {
    names
        .iter()
        .position(|v| *v == n.text)
        .ok_or_else(|| n.pos.error(format!("undefined {what} `{}`", n.text)))
}

fn build_quiver(vertices: Vec<String>, arrows: &[ArrowDecl]) -> Result<Quiver> {
    let mut built = Vec::new();
    for a in arrows {
        if built.iter().any(|b: &Arrow| b.name == a.name.text) {
            return Err(a.name.pos.error(format!("arrow `{}` declared twice", a.name.text)));
        }
        built.push(Arrow {
            name: a.name.text.clone(),
            source: resolve(&vertices, &a.source, "vertex")?,
            target: resolve(&vertices, &a.target, "vertex")?,
        });
    }
    Quiver::new(vertices, built).map_err(|e| {
        arrows
            .first()
            .map_or(Pos::default(), |a| a.name.pos)
            .error(e.to_string())
    })
}

fn build_ideal(q: &Quiver, words: &[Word]) -> Result<MonomialIdeal> {
    let mut gens = Vec::new();
    for w in words {
        let arrows = w
            .arrows
            .iter()
            .rev()
            .map(|a| {
                q.arrow_index(&a.text)
                    .ok_or_else(|| a.pos.error(format!("relation uses undefined arrow `{}`", a.text)))
            })
            .collect::<Result<Vec<_>>>()?;
        if arrows.len() < 2 {
            return Err(w.pos.error(format!(
                "relation `{}` has length {}; admissible relations have length at least 2",
                w.text(),
                arrows.len()
            )));
        }
        gens.push(
            Path::from_arrows(q, &arrows).map_err(|_| w.pos.error(format!("relation `{}` is not a path", w.text())))?,
        );
    }
    MonomialIdeal::new(q, gens).map_err(|e| words.first().map_or(Pos::default(), |w| w.pos).error(e.to_string()))
}

fn to_elem<K: Field>(field: &K, v: &BigRational, pos: Pos) -> Result<K::Elem> {
    field
        .from_ratio(v.numer(), v.denom())
        .map_err(|e| pos.error(e.to_string()))
}

fn to_matrix<K: Field>(field: &K, lit: &MatrixLit, rows: usize, cols: usize, what: &str) -> Result<Matrix<K>> {
    let found_cols = lit.rows.first().map_or(cols, |r| r.len());
    if lit.rows.len() != rows || (rows > 0 && found_cols != cols) {
        return Err(lit.pos.error(format!(
            "dimension mismatch for {what}: expected {rows}x{cols}, found {}x{}",
            lit.rows.len(),
            if rows == 0 { 0 } else { found_cols }
        )));
    }
    let mut m = Matrix::zeros(field, rows, cols);
    for (r, row) in lit.rows.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            m.set(r, c, to_elem(field, v, lit.pos)?);
        }
    }
    Ok(m)
}

fn build_module<K: Field>(base: &BaseAlgebra<K>, body: &ModuleBody) -> Result<AModule<K>> {
    let f = base.field();
    let aq = base.quiver();
    if body.dims.len() != base.vertex_count() {
        return Err(body.pos.error(format!(
            "dimension mismatch: {} dimensions given, the base algebra has {} vertices",
            body.dims.len(),
            base.vertex_count()
        )));
    }
    let mut maps: Vec<Option<Matrix<K>>> = vec![None; aq.arrow_count()];
    for (n, lit) in &body.maps {
        let a = aq
            .arrow_index(&n.text)
            .ok_or_else(|| n.pos.error(format!("undefined arrow `{}` of the base algebra", n.text)))?;
        if maps[a].is_some() {
            return Err(n.pos.error(format!("arrow `{}` given twice", n.text)));
        }
        let ar = aq.arrow(a);
        maps[a] = Some(to_matrix(
            f,
            lit,
            body.dims[ar.target],
            body.dims[ar.source],
            &format!("arrow `{}`", n.text),
        )?);
    }
    let maps = maps
        .into_iter()
        .zip(aq.arrows())
        .map(|(m, ar)| m.unwrap_or_else(|| Matrix::zeros(f, body.dims[ar.target], body.dims[ar.source])))
        .collect();
    base.module(body.dims.clone(), maps).map_err(|e| match e {
        Error::RelationViolated { relation, .. } => Error::RelationViolated {
            relation,
            context: format!(" on the module at {}:{}", body.pos.line, body.pos.column),
        },
        other => body.pos.error(other.to_string()),
    })
}

impl SpecFile {
    /// Resolves names, builds every object and validates modules and representations.
    pub fn instantiate<K: Field>(&self, field: K) -> Result<Instance<K>> {
        let base = match &self.algebra {
            None => BaseAlgebra::ground(field.clone()),
            Some(a) => {
                let names: Vec<String> = a.vertices.iter().map(|v| v.text.clone()).collect();
                if names.is_empty() {
                    return Err(a.name.pos.error("algebra has no vertices"));
                }
                let q = build_quiver(names, &a.arrows)?;
                let ideal = build_ideal(&q, &a.relations)?;
                BaseAlgebra::new(field.clone(), q, ideal).map_err(|e| a.name.pos.error(e.to_string()))?
            }
        };
        let qd = &self.quiver;
        let names: Vec<String> = match &qd.vertices {
            Vertices::Count(n) => (1..=*n).map(|v| v.to_string()).collect(),
            Vertices::Names(ns) => ns.iter().map(|n| n.text.clone()).collect(),
        };
        if names.is_empty() {
            return Err(qd.name.pos.error("quiver has no vertices"));
        }
        let q = build_quiver(names, &qd.arrows)?;
        let ideal = build_ideal(&q, &qd.relations)?;
        let bound = BoundQuiver::acyclic(q, ideal, qd.labels.clone()).map_err(|e| qd.name.pos.error(e.to_string()))?;
        let lambda = Lambda::new(base.clone(), bound).map_err(|e| qd.name.pos.error(e.to_string()))?;

        let mut modules: Vec<(String, AModule<K>)> = Vec::new();
        for m in &self.modules {
            if modules.iter().any(|(n, _)| *n == m.name.text) {
                return Err(m.name.pos.error(format!("module `{}` declared twice", m.name.text)));
            }
            modules.push((m.name.text.clone(), build_module(&base, &m.body)?));
        }

        let mut reps: Vec<(String, LambdaRep<K>)> = Vec::new();
        for r in &self.reps {
            if reps.iter().any(|(n, _)| *n == r.name.text) {
                return Err(r
                    .name
                    .pos
                    .error(format!("representation `{}` declared twice", r.name.text)));
            }
            reps.push((r.name.text.clone(), self.build_rep(&lambda, &modules, r)?));
        }
        Ok(Instance {
            base,
            lambda,
            modules,
            reps,
        })
    }

    fn build_rep<K: Field>(
        &self,
        lam: &Lambda<K>,
        modules: &[(String, AModule<K>)],
        r: &RepDecl,
    ) -> Result<LambdaRep<K>> {
        let base = lam.base();
        let f = lam.field();
        let q = lam.quiver();
        let mut branches: Vec<Option<AModule<K>>> = vec![None; q.vertex_count()];
        for at in &r.branches {
            let v = resolve(q.vertex_names(), &at.vertex, "vertex")?;
            if branches[v].is_some() {
                return Err(at.vertex.pos.error(format!("vertex {} given twice", at.vertex.text)));
            }
            branches[v] = Some(match &at.branch {
                BranchDecl::Inline(body) => build_module(base, body)?,
                BranchDecl::Named(n) => modules
                    .iter()
                    .find(|(m, _)| *m == n.text)
                    .map(|(_, m)| m.clone())
                    .ok_or_else(|| n.pos.error(format!("undefined module `{}`", n.text)))?,
            });
        }
        let branches: Vec<AModule<K>> = branches
            .into_iter()
            .map(|b| b.unwrap_or_else(|| base.zero_module()))
            .collect();
        let mut maps: Vec<Option<AMap<K>>> = vec![None; q.arrow_count()];
        for m in &r.maps {
            let a = q
                .arrow_index(&m.arrow.text)
                .ok_or_else(|| m.arrow.pos.error(format!("undefined arrow `{}`", m.arrow.text)))?;
            if maps[a].is_some() {
                return Err(m.arrow.pos.error(format!("arrow `{}` given twice", m.arrow.text)));
            }
            let (s, t) = (&branches[q.arrow(a).source], &branches[q.arrow(a).target]);
            let what = |u: usize| {
                if base.vertex_count() == 1 {
                    format!("arrow `{}`", m.arrow.text)
                } else {
                    format!("arrow `{}` at `{}`", m.arrow.text, base.quiver().vertex_name(u))
                }
            };
            let blocks = match &m.value {
                MapLit::Single(lit) => {
                    if base.vertex_count() != 1 {
                        return Err(lit.pos.error(
                            "the base algebra has several vertices; give one block per vertex as {v=[[..]], ..}",
                        ));
                    }
                    vec![to_matrix(f, lit, t.dims()[0], s.dims()[0], &what(0))?]
                }
                MapLit::Blocks(list) => {
                    let mut blocks: Vec<Option<Matrix<K>>> = vec![None; base.vertex_count()];
                    for (v, lit) in list {
                        let u = resolve(base.quiver().vertex_names(), v, "vertex of the base algebra")?;
                        blocks[u] = Some(to_matrix(f, lit, t.dims()[u], s.dims()[u], &what(u))?);
                    }
                    blocks
                        .into_iter()
                        .enumerate()
                        .map(|(u, b)| b.unwrap_or_else(|| Matrix::zeros(f, t.dims()[u], s.dims()[u])))
                        .collect()
                }
            };
            maps[a] = Some(AMap::from_blocks(blocks));
        }
        let maps = maps
            .into_iter()
            .zip(q.arrows())
            .map(|(m, ar)| m.unwrap_or_else(|| AMap::zero(f, &branches[ar.source], &branches[ar.target])))
            .collect();
        lam.rep(branches, maps).map_err(|e| match e {
            Error::RelationViolated { relation, .. } => Error::RelationViolated {
                relation,
                context: format!(" on representation `{}`", r.name.text),
            },
            Error::NotCommuting { arrow, .. } => Error::NotCommuting {
                arrow,
                context: format!(" on representation `{}`", r.name.text),
            },
            other => r.name.pos.error(other.to_string()),
        })
    }

    /// The file describing `lambda` with the given modules and representations.
    pub fn from_objects<K: Field>(
        lambda: &Lambda<K>,
        modules: &[(String, AModule<K>)],
        reps: &[(String, LambdaRep<K>)],
    ) -> Self {
        let field = match lambda.field().descriptor().parse::<u64>() {
            Ok(p) => FieldSpec::Prime(p),
            Err(_) => FieldSpec::Rational,
        };
        let base = lambda.base();
        let aq = base.quiver();
        let algebra = (aq.vertex_count() != 1 || aq.arrow_count() != 0).then(|| AlgebraDecl {
            name: Name::new("A"),
            vertices: aq.vertex_names().iter().map(Name::new).collect(),
            arrows: arrow_decls(aq),
            relations: words(aq, base.bound().ideal()),
        });
        let q = lambda.quiver();
        let numbered = q
            .vertex_names()
            .iter()
            .enumerate()
            .all(|(i, n)| *n == (i + 1).to_string());
        let computed = BoundQuiver::acyclic(q.clone(), MonomialIdeal::zero(), None).expect("acyclic");
        let labels = lambda.bound().labels().map(|l| l.to_vec());
        let quiver = QuiverDecl {
            name: Name::new("Q"),
            vertices: if numbered {
                Vertices::Count(q.vertex_count())
            } else {
                Vertices::Names(q.vertex_names().iter().map(Name::new).collect())
            },
            arrows: arrow_decls(q),
            relations: words(q, lambda.bound().ideal()),
            labels: labels.filter(|l| Some(l.as_slice()) != computed.labels()),
        };
        let f = lambda.field();
        let modules = modules
            .iter()
            .map(|(n, m)| ModuleDecl {
                name: Name::new(n),
                body: module_body(f, aq, m),
            })
            .collect();
        let single = aq.vertex_count() == 1;
        let reps = reps
            .iter()
            .map(|(n, x)| RepDecl {
                name: Name::new(n),
                branches: x
                    .branches()
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| !b.is_zero())
                    .map(|(v, b)| AtDecl {
                        vertex: Name::new(q.vertex_name(v)),
                        branch: BranchDecl::Inline(module_body(f, aq, b)),
                    })
                    .collect(),
                maps: x
                    .maps()
                    .iter()
                    .enumerate()
                    .filter(|(_, m)| !m.is_zero())
                    .map(|(a, m)| MapDecl {
                        arrow: Name::new(&q.arrow(a).name),
                        value: if single {
                            MapLit::Single(matrix_lit(f, m.block(0)))
                        } else {
                            MapLit::Blocks(
                                m.blocks()
                                    .iter()
                                    .enumerate()
                                    .filter(|(_, b)| !b.is_zero())
                                    .map(|(u, b)| (Name::new(aq.vertex_name(u)), matrix_lit(f, b)))
                                    .collect(),
                            )
                        },
                    })
                    .collect(),
            })
            .collect();
        SpecFile {
            field,
            algebra,
            quiver,
            modules,
            reps,
        }
    }
}

fn arrow_decls(q: &Quiver) -> Vec<ArrowDecl> {
    q.arrows()
        .iter()
        .map(|a| ArrowDecl {
            name: Name::new(&a.name),
            source: Name::new(q.vertex_name(a.source)),
            target: Name::new(q.vertex_name(a.target)),
        })
        .collect()
}

fn words(q: &Quiver, ideal: &MonomialIdeal) -> Vec<Word> {
    ideal
        .generators()
        .iter()
        .map(|g| Word {
            arrows: g.arrows().iter().rev().map(|&a| Name::new(&q.arrow(a).name)).collect(),
            pos: Pos::default(),
        })
        .collect()
}

fn parse_literal(s: &str) -> BigRational {
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    BigRational::new(
        num.parse().expect("integer literal"),
        den.parse().expect("integer literal"),
    )
}

fn matrix_lit<K: Field>(f: &K, m: &Matrix<K>) -> MatrixLit {
    MatrixLit {
        rows: (0..m.rows())
            .map(|r| (0..m.cols()).map(|c| parse_literal(&f.literal(m.get(r, c)))).collect())
            .collect(),
        pos: Pos::default(),
    }
}

fn module_body<K: Field>(f: &K, aq: &Quiver, m: &AModule<K>) -> ModuleBody {
    ModuleBody {
        dims: m.dims().to_vec(),
        maps: m
            .maps()
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(a, x)| (Name::new(&aq.arrow(a).name), matrix_lit(f, x)))
            .collect(),
        pos: Pos::default(),
    }
}

fn write_number(out: &mut String, v: &BigRational) {
    if v.denom().is_one() {
        write!(out, "{}", v.numer()).unwrap();
    } else if v.is_negative() {
        write!(out, "-{}/{}", v.numer().abs(), v.denom()).unwrap();
    } else {
        write!(out, "{}/{}", v.numer(), v.denom()).unwrap();
    }
}

fn write_matrix(out: &mut String, m: &MatrixLit) {
    out.push('[');
    for (i, row) in m.rows.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push('[');
        for (j, v) in row.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            write_number(out, v);
        }
        out.push(']');
    }
    out.push(']');
}

fn write_body(out: &mut String, b: &ModuleBody) {
    let dims: Vec<String> = b.dims.iter().map(|d| d.to_string()).collect();
    write!(out, "dims=[{}]", dims.join(",")).unwrap();
    if !b.maps.is_empty() {
        out.push_str(" maps={");
        for (i, (n, m)) in b.maps.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            write!(out, "{}=", n.text).unwrap();
            write_matrix(out, m);
        }
        out.push('}');
    }
}

fn write_arrows(out: &mut String, arrows: &[ArrowDecl], relations: &[Word]) {
    for a in arrows {
        writeln!(out, "  arrow {}: {} -> {};", a.name.text, a.source.text, a.target.text).unwrap();
    }
    for r in relations {
        writeln!(out, "  rel {};", r.text()).unwrap();
    }
}

impl fmt::Display for SpecFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        match self.field {
            FieldSpec::Prime(p) => writeln!(out, "field {p}").unwrap(),
            FieldSpec::Rational => writeln!(out, "field rational").unwrap(),
        }
        if let Some(a) = &self.algebra {
            writeln!(out, "\nalgebra {} {{", a.name.text).unwrap();
            let names: Vec<&str> = a.vertices.iter().map(|v| v.text.as_str()).collect();
            writeln!(out, "  vertex {};", names.join(", ")).unwrap();
            write_arrows(&mut out, &a.arrows, &a.relations);
            out.push_str("}\n");
        }
        let q = &self.quiver;
        writeln!(out, "\nquiver {} {{", q.name.text).unwrap();
        match &q.vertices {
            Vertices::Count(n) => writeln!(out, "  vertices {n};").unwrap(),
            Vertices::Names(ns) => {
                let names: Vec<&str> = ns.iter().map(|v| v.text.as_str()).collect();
                writeln!(out, "  vertices {};", names.join(", ")).unwrap();
            }
        }
        write_arrows(&mut out, &q.arrows, &q.relations);
        if let Some(l) = &q.labels {
            let l: Vec<String> = l.iter().map(|x| x.to_string()).collect();
            writeln!(out, "  labels [{}];", l.join(",")).unwrap();
        }
        out.push_str("}\n");
        for m in &self.modules {
            write!(out, "\nmodule {} {{ ", m.name.text).unwrap();
            write_body(&mut out, &m.body);
            out.push_str(" }\n");
        }
        for r in &self.reps {
            writeln!(out, "\nrep {} {{", r.name.text).unwrap();
            for at in &r.branches {
                write!(out, "  at {}: ", at.vertex.text).unwrap();
                match &at.branch {
                    BranchDecl::Inline(b) => {
                        out.push_str("module ");
                        write_body(&mut out, b);
                    }
                    BranchDecl::Named(n) => out.push_str(&n.text),
                }
                out.push_str(";\n");
            }
            for m in &r.maps {
                write!(out, "  map {} = ", m.arrow.text).unwrap();
                match &m.value {
                    MapLit::Single(lit) => write_matrix(&mut out, lit),
                    MapLit::Blocks(list) => {
                        out.push('{');
                        for (i, (v, lit)) in list.iter().enumerate() {
                            if i > 0 {
                                out.push_str(", ");
                            }
                            write!(out, "{}=", v.text).unwrap();
                            write_matrix(&mut out, lit);
                        }
                        out.push('}');
                    }
                }
                out.push_str(";\n");
            }
            out.push_str("}\n");
        }
        f.write_str(&out)
    }
}

/// Prints one representation as a complete, self-contained file.
pub fn print_rep<K: Field>(lambda: &Lambda<K>, name: &str, x: &LambdaRep<K>) -> String {
    SpecFile::from_objects(lambda, &[], &[(name.to_string(), x.clone())]).to_string()
}
