//! Line-oriented text formats. Every document starts with a versioned
//! header `ncthick <kind> v1`; `#` starts a comment. Diagnostics carry
//! 1-based line and column numbers.
//!
//! ```text
//! ncthick chart v1
//! name: A
//! vertices: d s
//! arrow f: d -> s
//! arrow x: s -> s
//! arrow y: s -> s
//! relation: x*y - y*x
//! dim: 1 2
//! matrix f = [[1], [0]]
//! matrix x = [[0, ?a2], [1, ?a4]]
//! matrix y = [[?b1, ?b2], [?b3, ?b4]]
//! inv b3
//! ```

use std::fmt::Write as _;

use crate::charts::{ChartPresentation, ChartSpec, Entry, OverlapHints};
use crate::error::{Error, Result};
use crate::ncalg::{parse_expr, Expr, Generators, NcPoly};
use crate::quiver::{Arrow, DimVector, QuiverPresentation, ThetaVector};
use crate::rational::Rat;
use crate::sheaf_bridge::{GradedAlgebraData, GradedModuleData};

pub const VERSION: &str = "v1";

/// A content line: number, text with the comment removed, and the column
/// of its first character.
#[derive(Debug, Clone)]
struct Line<'a> {
    no: usize,
    text: &'a str,
}

fn content_lines(src: &str) -> Vec<Line<'_>> {
    src.lines()
        .enumerate()
        .map(|(i, l)| Line {
            no: i + 1,
            text: l.split('#').next().unwrap_or(""),
        })
        .filter(|l| !l.text.trim().is_empty())
        .collect()
}

/// Column (1-based) of `part` inside `line`, which must be a subslice.
fn col_of(line: &str, part: &str) -> usize {
    part.as_ptr() as usize - line.as_ptr() as usize + 1
}

fn check_header<'a>(lines: &'a [Line<'a>], kind: &str) -> Result<&'a [Line<'a>]> {
    let Some(first) = lines.first() else {
        return Err(Error::parse(1, 1, format!("empty document, expected `ncthick {kind} {VERSION}`")));
    };
    let words: Vec<&str> = first.text.split_whitespace().collect();
    if words != ["ncthick", kind, VERSION] {
        return Err(Error::parse(
            first.no,
            1,
            format!("expected header `ncthick {kind} {VERSION}`"),
        ));
    }
    Ok(&lines[1..])
}

/// Splits `key: rest` or `key rest`. Returns the key and the trimmed rest.
fn split_directive(text: &str) -> (&str, &str) {
    let t = text.trim_start();
    let end = t
        .find(|c: char| c == ':' || c.is_whitespace())
        .unwrap_or(t.len());
    let key = &t[..end];
    let mut rest = &t[end..];
    rest = rest.trim_start();
    if let Some(r) = rest.strip_prefix(':') {
        rest = r.trim_start();
    }
    (key, rest.trim_end())
}

fn parse_rat(s: &str, line: usize, col: usize) -> Result<Rat> {
    s.parse::<Rat>()
        .map_err(|_| Error::parse(line, col, format!("expected a rational number, found `{s}`")))
}

fn tokens(rest: &str) -> impl Iterator<Item = &str> {
    rest.split_whitespace()
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Nested bracket lists of atoms.
#[derive(Debug, Clone)]
enum Tree {
    Atom(String, usize),
    List(Vec<Tree>, usize),
}

impl Tree {
    fn col(&self) -> usize {
        match self {
            Tree::Atom(_, c) | Tree::List(_, c) => *c,
        }
    }
}

fn parse_tree(src: &str, line: usize, col0: usize) -> Result<Tree> {
    let chars: Vec<char> = src.chars().collect();
    let mut pos = 0;
    fn skip(chars: &[char], pos: &mut usize) {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    }
    fn node(chars: &[char], pos: &mut usize, line: usize, col0: usize) -> Result<Tree> {
        skip(chars, pos);
        let col = col0 + *pos;
        if *pos >= chars.len() {
            return Err(Error::parse(line, col, "unexpected end of list"));
        }
        if chars[*pos] == '[' {
            *pos += 1;
            let mut items = Vec::new();
            skip(chars, pos);
            if *pos < chars.len() && chars[*pos] == ']' {
                *pos += 1;
                return Ok(Tree::List(items, col));
            }
            loop {
                items.push(node(chars, pos, line, col0)?);
                skip(chars, pos);
                match chars.get(*pos) {
                    Some(',') => *pos += 1,
                    Some(']') => {
                        *pos += 1;
                        return Ok(Tree::List(items, col));
                    }
                    _ => return Err(Error::parse(line, col0 + *pos, "expected `,` or `]`")),
                }
            }
        }
        let start = *pos;
        while *pos < chars.len() && !matches!(chars[*pos], ',' | ']' | '[') && !chars[*pos].is_whitespace() {
            *pos += 1;
        }
        if start == *pos {
            return Err(Error::parse(line, col, format!("unexpected `{}`", chars[*pos])));
        }
        Ok(Tree::Atom(chars[start..*pos].iter().collect(), col))
    }
    let t = node(&chars, &mut pos, line, col0)?;
    skip(&chars, &mut pos);
    if pos < chars.len() {
        return Err(Error::parse(line, col0 + pos, "unexpected trailing input"));
    }
    Ok(t)
}

fn tree_list(t: &Tree, line: usize, what: &str) -> Result<Vec<Tree>> {
    match t {
        Tree::List(items, _) => Ok(items.clone()),
        Tree::Atom(_, c) => Err(Error::parse(line, *c, format!("expected a list of {what}"))),
    }
}

fn tree_rat(t: &Tree, line: usize) -> Result<Rat> {
    match t {
        Tree::Atom(s, c) => parse_rat(s, line, *c),
        Tree::List(_, c) => Err(Error::parse(line, *c, "expected a number")),
    }
}

/// Rows of a matrix literal, each row a list of atoms.
fn tree_matrix(t: &Tree, line: usize) -> Result<Vec<Vec<(String, usize)>>> {
    let rows = tree_list(t, line, "rows")?;
    let mut out = Vec::new();
    for r in &rows {
        let mut row = Vec::new();
        for e in tree_list(r, line, "entries")? {
            match e {
                Tree::Atom(s, c) => row.push((s, c)),
                Tree::List(_, c) => return Err(Error::parse(line, c, "nested list inside a matrix row")),
            }
        }
        out.push(row);
    }
    if let Some(first) = out.first() {
        if out.iter().any(|r| r.len() != first.len()) {
            return Err(Error::parse(line, t.col(), "rows have different lengths"));
        }
    }
    Ok(out)
}

/// A quiver document: presentation plus optional dimension and θ vectors.
#[derive(Debug, Clone)]
pub struct QuiverFile {
    pub quiver: QuiverPresentation,
    pub dims: Option<DimVector>,
    pub theta: Option<ThetaVector>,
}

#[derive(Default)]
struct QuiverBuilder {
    vertices: Option<(Vec<String>, usize)>,
    arrows: Vec<(Arrow, usize, usize)>,
    arrow_specs: Vec<(String, String, String, usize, usize)>,
    relations: Vec<(String, usize, usize)>,
    dims: Option<(Vec<u64>, usize)>,
    theta: Option<ThetaVector>,
}

impl QuiverBuilder {
    /// Consumes a quiver directive; `Ok(false)` if `key` is not one.
    fn accept(&mut self, line: &Line<'_>, key: &str, rest: &str) -> Result<bool> {
        let rcol = col_of(line.text, rest);
        match key {
            "vertices" => {
                let names: Vec<String> = tokens(rest).map(String::from).collect();
                if names.is_empty() {
                    return Err(Error::parse(line.no, rcol, "expected vertex names"));
                }
                for t in tokens(rest) {
                    if !is_ident(t) {
                        return Err(Error::parse(line.no, col_of(line.text, t), format!("bad vertex name `{t}`")));
                    }
                }
                self.vertices = Some((names, line.no));
            }
            "arrow" => {
                let (name, spec) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::parse(line.no, rcol, "expected `arrow name: tail -> head`"))?;
                let name = name.trim();
                if !is_ident(name) {
                    return Err(Error::parse(line.no, rcol, format!("bad arrow name `{name}`")));
                }
                let (t, h) = spec
                    .split_once("->")
                    .ok_or_else(|| Error::parse(line.no, col_of(line.text, spec), "expected `tail -> head`"))?;
                self.arrow_specs.push((
                    name.to_string(),
                    t.trim().to_string(),
                    h.trim().to_string(),
                    line.no,
                    col_of(line.text, spec),
                ));
            }
            "relation" => self.relations.push((rest.to_string(), line.no, rcol)),
            "dim" | "dims" => {
                let mut v = Vec::new();
                for t in tokens(rest) {
                    v.push(t.parse::<u64>().map_err(|_| {
                        Error::parse(line.no, col_of(line.text, t), format!("expected a nonnegative integer, found `{t}`"))
                    })?);
                }
                self.dims = Some((v, line.no));
            }
            "theta" => {
                let mut v = Vec::new();
                for t in tokens(rest) {
                    v.push(parse_rat(t, line.no, col_of(line.text, t))?);
                }
                self.theta = Some(ThetaVector(v));
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn build(self) -> Result<QuiverFile> {
        let (vertices, vline) = self
            .vertices
            .ok_or_else(|| Error::parse(1, 1, "missing `vertices:` line"))?;
        let mut arrows = self.arrows.into_iter().map(|(a, _, _)| a).collect::<Vec<_>>();
        for (name, t, h, l, c) in &self.arrow_specs {
            let find = |v: &str| {
                vertices
                    .iter()
                    .position(|x| x == v)
                    .ok_or_else(|| Error::parse(*l, *c, format!("unknown vertex `{v}`")))
            };
            if arrows.iter().any(|a| &a.name == name) {
                return Err(Error::parse(*l, 1, format!("duplicate arrow `{name}`")));
            }
            arrows.push(Arrow {
                name: name.clone(),
                tail: find(t)?,
                head: find(h)?,
            });
        }
        let mut quiver = QuiverPresentation::new(vertices, arrows).map_err(|e| match e {
            Error::InvalidQuiver(m) => Error::parse(vline, 1, m),
            other => other,
        })?;
        for (src, l, c) in &self.relations {
            let rel = quiver.parse_relation(src, *l, *c)?;
            quiver.add_relation(rel.poly).map_err(|e| Error::parse(*l, *c, e.to_string()))?;
        }
        let n = quiver.num_vertices();
        if let Some((d, l)) = &self.dims {
            if d.len() != n {
                return Err(Error::parse(*l, 1, format!("{} dimensions for {n} vertices", d.len())));
            }
        }
        if let Some(t) = &self.theta {
            if t.0.len() != n {
                return Err(Error::parse(1, 1, format!("{} θ entries for {n} vertices", t.0.len())));
            }
        }
        Ok(QuiverFile {
            quiver,
            dims: self.dims.map(|(d, _)| DimVector(d)),
            theta: self.theta,
        })
    }
}

pub fn parse_quiver(src: &str) -> Result<QuiverFile> {
    let lines = content_lines(src);
    let body = check_header(&lines, "quiver")?;
    let mut b = QuiverBuilder::default();
    for line in body {
        let (key, rest) = split_directive(line.text);
        if !b.accept(line, key, rest)? {
            return Err(Error::parse(line.no, col_of(line.text, key), format!("unknown directive `{key}`")));
        }
    }
    b.build()
}

/// Parses a chart document. The quiver is declared inline.
pub fn parse_chart(src: &str) -> Result<ChartSpec> {
    let lines = content_lines(src);
    let body = check_header(&lines, "chart")?;
    let mut b = QuiverBuilder::default();
    let mut name = None;
    let mut matrices: Vec<(String, Vec<Vec<(String, usize)>>, usize, usize)> = Vec::new();
    let mut invertible: Vec<(String, usize, usize)> = Vec::new();
    for line in body {
        let (key, rest) = split_directive(line.text);
        if b.accept(line, key, rest)? {
            continue;
        }
        let rcol = col_of(line.text, rest);
        match key {
            "name" => name = Some(rest.to_string()),
            "matrix" => {
                let (arrow, lit) = rest
                    .split_once('=')
                    .ok_or_else(|| Error::parse(line.no, rcol, "expected `matrix arrow = [[...]]`"))?;
                let lcol = col_of(line.text, lit);
                let tree = parse_tree(lit, line.no, lcol)?;
                matrices.push((arrow.trim().to_string(), tree_matrix(&tree, line.no)?, line.no, rcol));
            }
            "inv" | "invert" => {
                for t in tokens(rest) {
                    invertible.push((t.to_string(), line.no, col_of(line.text, t)));
                }
            }
            _ => {
                return Err(Error::parse(line.no, col_of(line.text, key), format!("unknown directive `{key}`")));
            }
        }
    }
    let dims_line = b.dims.as_ref().map(|(_, l)| *l);
    let qf = b.build()?;
    let q = qf.quiver;
    let ranks: Vec<usize> = qf
        .dims
        .ok_or_else(|| Error::parse(1, 1, "missing `dim:` line"))?
        .0
        .iter()
        .map(|&d| d as usize)
        .collect();
    let mut templates: Vec<Option<Vec<Entry>>> = vec![None; q.arrows().len()];
    let mut seen: Vec<String> = Vec::new();
    for (arrow, rows, l, c) in matrices {
        let ai = q
            .arrow_index(&arrow)
            .ok_or_else(|| Error::parse(l, c, format!("unknown arrow `{arrow}`")))?;
        let a = &q.arrows()[ai];
        let want = (ranks[a.head], ranks[a.tail]);
        let got = (rows.len(), rows.first().map(|r| r.len()).unwrap_or(0));
        if got != want {
            return Err(Error::parse(
                l,
                c,
                format!("matrix for `{arrow}` is {}x{}, expected {}x{}", got.0, got.1, want.0, want.1),
            ));
        }
        let mut t = Vec::new();
        for (s, col) in rows.into_iter().flatten() {
            if let Some(n) = s.strip_prefix('?') {
                if !is_ident(n) {
                    return Err(Error::parse(l, col, format!("bad coordinate name `{n}`")));
                }
                if seen.iter().any(|x| x == n) {
                    return Err(Error::parse(l, col, format!("duplicate coordinate `{n}`")));
                }
                seen.push(n.to_string());
                t.push(Entry::Coordinate(n.to_string()));
            } else {
                t.push(Entry::Constant(parse_rat(&s, l, col)?));
            }
        }
        if templates[ai].is_some() {
            return Err(Error::parse(l, c, format!("second matrix for `{arrow}`")));
        }
        templates[ai] = Some(t);
    }
    let mut full = Vec::new();
    for (a, t) in q.arrows().iter().zip(templates) {
        full.push(t.ok_or_else(|| {
            Error::parse(dims_line.unwrap_or(1), 1, format!("no matrix for arrow `{}`", a.name))
        })?);
    }
    for (n, l, c) in &invertible {
        if !seen.contains(n) {
            return Err(Error::parse(*l, *c, format!("`{n}` is not a coordinate")));
        }
    }
    ChartSpec::new(
        name.unwrap_or_else(|| "chart".into()),
        q,
        ranks,
        full,
        invertible.into_iter().map(|(n, _, _)| n).collect(),
    )
}

/// Name, expression and the location of the expression.
#[derive(Debug, Clone)]
pub struct Formula {
    pub name: String,
    pub expr: Expr,
    pub line: usize,
}

/// An overlap document.
///
/// ```text
/// ncthick overlap v1
/// source: A
/// target: B
/// invert: b3
/// point: a2=1 a4=-1 b1=2 b3=-1
/// classical a3' = b3^-1
/// map a3' = b3^-1
/// ```
#[derive(Debug, Clone, Default)]
pub struct OverlapFile {
    pub source: Option<String>,
    pub target: Option<String>,
    pub invert: Vec<String>,
    pub points: Vec<(usize, Vec<(String, Rat, usize)>)>,
    pub classical: Vec<Formula>,
    pub maps: Vec<Formula>,
}

pub fn parse_overlap(src: &str) -> Result<OverlapFile> {
    let lines = content_lines(src);
    let body = check_header(&lines, "overlap")?;
    let mut out = OverlapFile::default();
    for line in body {
        let (key, rest) = split_directive(line.text);
        let rcol = col_of(line.text, rest);
        match key {
            "source" => out.source = Some(rest.to_string()),
            "target" => out.target = Some(rest.to_string()),
            "invert" | "inv" => out.invert.extend(tokens(rest).map(String::from)),
            "point" => {
                let mut vals = Vec::new();
                for t in tokens(rest) {
                    let c = col_of(line.text, t);
                    let (n, v) = t
                        .split_once('=')
                        .ok_or_else(|| Error::parse(line.no, c, "expected `name=value`"))?;
                    vals.push((n.to_string(), parse_rat(v, line.no, c + n.len() + 1)?, c));
                }
                out.points.push((line.no, vals));
            }
            "classical" | "map" => {
                let (n, e) = rest
                    .split_once('=')
                    .ok_or_else(|| Error::parse(line.no, rcol, format!("expected `{key} name = expression`")))?;
                let f = Formula {
                    name: n.trim().to_string(),
                    expr: parse_expr(e, line.no, col_of(line.text, e))?,
                    line: line.no,
                };
                if key == "map" {
                    out.maps.push(f);
                } else {
                    out.classical.push(f);
                }
            }
            _ => {
                return Err(Error::parse(line.no, col_of(line.text, key), format!("unknown directive `{key}`")));
            }
        }
    }
    Ok(out)
}

impl OverlapFile {
    /// Hints for the `which`-th point, resolved against the source chart.
    pub fn hints(&self, src: &ChartPresentation, which: usize) -> Result<OverlapHints> {
        for inv in &self.invert {
            if !src.coordinates.contains(inv) {
                return Err(Error::InvalidChart(format!("`{inv}` is not a coordinate of `{}`", src.name())));
            }
        }
        let (pline, vals) = self
            .points
            .get(which)
            .ok_or_else(|| Error::parse(1, 1, "overlap document has no `point:` line"))?;
        let eliminated: Vec<&String> = src.eliminated.iter().map(|(n, _)| n).collect();
        let mut point = vec![None; src.coordinates.len()];
        for (n, v, c) in vals {
            match src.coordinates.iter().position(|x| x == n) {
                Some(i) => point[i] = Some(v.clone()),
                None if eliminated.contains(&n) => {}
                None => return Err(Error::parse(*pline, *c, format!("unknown coordinate `{n}`"))),
            }
        }
        let point = point
            .into_iter()
            .zip(&src.coordinates)
            .map(|(v, n)| v.ok_or_else(|| Error::parse(*pline, 1, format!("point misses `{n}`"))))
            .collect::<Result<Vec<_>>>()?;
        let classical = self
            .classical
            .iter()
            .map(|f| Ok((f.name.clone(), f.expr.to_comm(&src.coordinates, f.line)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(OverlapHints {
            invert: self.invert.clone(),
            classical,
            point,
        })
    }

    /// Explicit map formulas over the source coordinates and their inverses.
    pub fn formulas(&self, src: &ChartPresentation) -> Result<Vec<(String, NcPoly)>> {
        let gens = Generators::with_inverses(&src.coordinates, &self.invert)?;
        self.maps
            .iter()
            .map(|f| Ok((f.name.clone(), f.expr.to_nc(&gens, f.line)?)))
            .collect()
    }
}

/// A graded algebra document.
///
/// ```text
/// ncthick graded-algebra v1
/// polynomial: 3 5          # variables, top degree
/// ```
///
/// or explicit data: `dims: 2 3` then `product 1 1: [[[..]..]..]` with the
/// tensor indexed `[α][β][γ]`.
pub fn parse_graded_algebra(src: &str) -> Result<GradedAlgebraData> {
    let lines = content_lines(src);
    let body = check_header(&lines, "graded-algebra")?;
    let mut data: Option<GradedAlgebraData> = None;
    for line in body {
        let (key, rest) = split_directive(line.text);
        let rcol = col_of(line.text, rest);
        match key {
            "polynomial" => {
                let v: Vec<usize> = tokens(rest)
                    .map(|t| t.parse().map_err(|_| Error::parse(line.no, col_of(line.text, t), "expected an integer")))
                    .collect::<Result<_>>()?;
                let [n, top] = v[..] else {
                    return Err(Error::parse(line.no, rcol, "expected `polynomial: variables degree`"));
                };
                data = Some(GradedAlgebraData::polynomial_ring(n, top));
            }
            "dims" => {
                let v: Vec<usize> = tokens(rest)
                    .map(|t| t.parse().map_err(|_| Error::parse(line.no, col_of(line.text, t), "expected an integer")))
                    .collect::<Result<_>>()?;
                data = Some(GradedAlgebraData::new(v));
            }
            "product" => {
                let d = data
                    .as_mut()
                    .ok_or_else(|| Error::parse(line.no, 1, "`product` before `dims`"))?;
                let (degs, lit) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::parse(line.no, rcol, "expected `product a b: tensor`"))?;
                let ab: Vec<usize> = tokens(degs)
                    .map(|t| t.parse().map_err(|_| Error::parse(line.no, col_of(line.text, t), "expected an integer")))
                    .collect::<Result<_>>()?;
                let [a, b] = ab[..] else {
                    return Err(Error::parse(line.no, rcol, "expected two degrees"));
                };
                let tree = parse_tree(lit, line.no, col_of(line.text, lit))?;
                let mut tensor = Vec::new();
                for x in tree_list(&tree, line.no, "rows")? {
                    let mut row = Vec::new();
                    for y in tree_list(&x, line.no, "rows")? {
                        let vals = tree_list(&y, line.no, "coefficients")?
                            .iter()
                            .map(|z| tree_rat(z, line.no))
                            .collect::<Result<Vec<_>>>()?;
                        row.push(vals);
                    }
                    tensor.push(row);
                }
                d.set_product(a, b, tensor).map_err(|e| Error::parse(line.no, rcol, e.to_string()))?;
            }
            _ => {
                return Err(Error::parse(line.no, col_of(line.text, key), format!("unknown directive `{key}`")));
            }
        }
    }
    data.ok_or_else(|| Error::parse(1, 1, "no `dims:` or `polynomial:` line"))
}

/// A graded module document.
///
/// ```text
/// ncthick graded-module v1
/// range: 1 2
/// dims: 2 3
/// action 1 1 0: [[1, 0], [0, 1], [0, 0]]   # degree, index, basis element
/// ```
///
/// Shorthands for polynomial-ring data: `structure: <variables>` and
/// `point: <coordinates>`.
pub fn parse_graded_module(src: &str, alg: &GradedAlgebraData) -> Result<GradedModuleData> {
    let lines = content_lines(src);
    let body = check_header(&lines, "graded-module")?;
    let mut range: Option<(i64, i64)> = None;
    let mut module: Option<GradedModuleData> = None;
    for line in body {
        let (key, rest) = split_directive(line.text);
        let rcol = col_of(line.text, rest);
        let ints = |s: &str| -> Result<Vec<i64>> {
            tokens(s)
                .map(|t| t.parse().map_err(|_| Error::parse(line.no, col_of(line.text, t), "expected an integer")))
                .collect()
        };
        let need_range = || range.ok_or_else(|| Error::parse(line.no, 1, "missing `range:` before this line"));
        let wrap = |e: Error| match e {
            Error::Parse { .. } => e,
            other => Error::parse(line.no, rcol, other.to_string()),
        };
        match key {
            "range" => {
                let v = ints(rest)?;
                let [p, q] = v[..] else {
                    return Err(Error::parse(line.no, rcol, "expected `range: p q`"));
                };
                range = Some((p, q));
            }
            "dims" => {
                let (p, q) = need_range()?;
                let d = ints(rest)?.into_iter().map(|x| x.max(0) as usize).collect();
                module = Some(GradedModuleData::new(p, q, d, alg).map_err(wrap)?);
            }
            "structure" => {
                let (p, q) = need_range()?;
                let [n] = ints(rest)?[..] else {
                    return Err(Error::parse(line.no, rcol, "expected `structure: <variables>`"));
                };
                module = Some(GradedModuleData::structure_sheaf(alg, n.max(0) as usize, p, q).map_err(wrap)?);
            }
            "point" => {
                let (p, q) = need_range()?;
                let pt = tokens(rest)
                    .map(|t| parse_rat(t, line.no, col_of(line.text, t)))
                    .collect::<Result<Vec<_>>>()?;
                module = Some(GradedModuleData::point_module(alg, &pt, p, q).map_err(wrap)?);
            }
            "action" => {
                let m = module
                    .as_mut()
                    .ok_or_else(|| Error::parse(line.no, 1, "`action` before `dims`"))?;
                let (head, lit) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::parse(line.no, rcol, "expected `action k i b: matrix`"))?;
                let v = ints(head)?;
                let [k, i, b] = v[..] else {
                    return Err(Error::parse(line.no, rcol, "expected degree, index and basis element"));
                };
                let tree = parse_tree(lit, line.no, col_of(line.text, lit))?;
                let rows = tree_matrix(&tree, line.no)?;
                let vals = rows
                    .into_iter()
                    .flatten()
                    .map(|(s, c)| parse_rat(&s, line.no, c))
                    .collect::<Result<Vec<_>>>()?;
                m.set_action(k as usize, i, b as usize, vals).map_err(wrap)?;
            }
            _ => {
                return Err(Error::parse(line.no, col_of(line.text, key), format!("unknown directive `{key}`")));
            }
        }
    }
    module.ok_or_else(|| Error::parse(1, 1, "no module data"))
}

/// Renders a quiver document readable by [`parse_quiver`].
pub fn write_quiver(q: &QuiverPresentation, dims: Option<&DimVector>, theta: Option<&ThetaVector>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "ncthick quiver {VERSION}");
    let _ = writeln!(s, "vertices: {}", q.vertices().join(" "));
    for a in q.arrows() {
        let _ = writeln!(s, "arrow {}: {} -> {}", a.name, q.vertices()[a.tail], q.vertices()[a.head]);
    }
    for r in q.relations() {
        let _ = writeln!(s, "relation: {}", q.relation_text(r));
    }
    if let Some(d) = dims {
        let v: Vec<String> = d.0.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "dim: {}", v.join(" "));
    }
    if let Some(t) = theta {
        let v: Vec<String> = t.0.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "theta: {}", v.join(" "));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const CHART: &str = "ncthick chart v1
name: P
vertices: d s
arrow f: d -> s
arrow x: s -> s
arrow y: s -> s
relation: x*y - y*x
dim: 1 1
matrix f = [[1]]
matrix x = [[?a]]
matrix y = [[?b]]
";

    #[test]
    fn chart_round_trip() {
        let spec = parse_chart(CHART).unwrap();
        assert_eq!(spec.coordinates(), vec!["a", "b"]);
        assert_eq!(spec.name, "P");
    }

    #[test]
    fn header_is_required() {
        assert!(matches!(parse_chart("chart\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn bad_relation_points_at_its_line() {
        let src = CHART.replace("relation: x*y - y*x", "relation: x*f - y");
        match parse_chart(&src) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 7),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn matrix_shape_mismatch() {
        let src = CHART.replace("matrix x = [[?a]]", "matrix x = [[?a, 0]]");
        assert!(matches!(parse_chart(&src), Err(Error::Parse { line: 10, .. })));
    }

    #[test]
    fn quiver_writer_round_trips() {
        let qf = parse_quiver(
            "ncthick quiver v1\nvertices: d s\narrow f: d -> s\narrow x: s -> s\narrow y: s -> s\nrelation: x*y - y*x\ndim: 1 2\ntheta: -2 1\n",
        )
        .unwrap();
        let text = write_quiver(&qf.quiver, qf.dims.as_ref(), qf.theta.as_ref());
        let again = parse_quiver(&text).unwrap();
        assert_eq!(again.quiver, qf.quiver);
        assert_eq!(again.theta, qf.theta);
    }
}
