//! Quivers with relations, representations with NC-valued matrices, and
//! King stability for framed representations.
//!
//! Paths are words in the arrows read as composition: `x*y` means "first
//! `y`, then `x`", is composable iff `tail(x) = head(y)`, and evaluates to
//! the matrix product `M_x · M_y`. An arrow `a: t -> h` carries a matrix of
//! shape `rank(h) × rank(t)`.

mod matrix;
mod stability;

pub use matrix::{MatrixDisplay, NcMatrix};
pub use stability::{
    framed_extend, framed_theta_stable, generated_subrep, king_stability, FramedExtension,
    Stability, Subrep, DEFAULT_SEARCH_SIZE,
};

use crate::error::{Error, Result};
use crate::ncalg::{parse_expr, Generators, NcPoly, Word};
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub tail: usize,
    pub head: usize,
}

/// A relation: a rational combination of paths sharing tail and head,
/// stored as a polynomial in the arrow letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub poly: NcPoly,
    pub tail: usize,
    pub head: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverPresentation {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    relations: Vec<Relation>,
}

fn unique<'a>(names: impl Iterator<Item = &'a str>, what: &str) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for n in names {
        if n.is_empty() {
            return Err(Error::InvalidQuiver(format!("empty {what} name")));
        }
        if !seen.insert(n) {
            return Err(Error::InvalidQuiver(format!("duplicate {what} `{n}`")));
        }
    }
    Ok(())
}

impl QuiverPresentation {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        unique(vertices.iter().map(|s| s.as_str()), "vertex")?;
        unique(arrows.iter().map(|a| a.name.as_str()), "arrow")?;
        if arrows.len() > u8::MAX as usize {
            return Err(Error::InvalidQuiver("too many arrows".into()));
        }
        for a in &arrows {
            if a.tail >= vertices.len() || a.head >= vertices.len() {
                return Err(Error::InvalidQuiver(format!(
                    "arrow `{}` has an endpoint outside the vertex list",
                    a.name
                )));
            }
        }
        Ok(QuiverPresentation {
            vertices,
            arrows,
            relations: Vec::new(),
        })
    }

    /// Builds from names: `arrows` lists `(name, tail, head)`.
    pub fn from_names(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let find = |v: &str| {
            vs.iter()
                .position(|x| x == v)
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex `{v}`")))
        };
        let mut arr = Vec::new();
        for (n, t, h) in arrows {
            arr.push(Arrow {
                name: n.to_string(),
                tail: find(t)?,
                head: find(h)?,
            });
        }
        Self::new(vs, arr)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrow_names(&self) -> Vec<String> {
        self.arrows.iter().map(|a| a.name.clone()).collect()
    }

    /// The arrow alphabet, for parsing relations.
    pub fn arrow_generators(&self) -> Generators {
        Generators::plain(&self.arrow_names()).expect("arrow names validated")
    }

    /// `(tail, head)` of a nonempty path, or a description of the first
    /// non-composable junction.
    pub fn path_endpoints(&self, w: &Word) -> std::result::Result<(usize, usize), String> {
        let letters: Vec<usize> = w.letters().collect();
        let Some(&last) = letters.last() else {
            return Err("empty path".into());
        };
        for pair in letters.windows(2) {
            let (x, y) = (&self.arrows[pair[0]], &self.arrows[pair[1]]);
            if x.tail != y.head {
                return Err(format!(
                    "`{}*{}` is not composable: `{}` ends at `{}` but `{}` starts at `{}`",
                    x.name,
                    y.name,
                    y.name,
                    self.vertices[y.head],
                    x.name,
                    self.vertices[x.tail]
                ));
            }
        }
        Ok((self.arrows[last].tail, self.arrows[letters[0]].head))
    }

    /// Validates and appends a relation.
    pub fn add_relation(&mut self, poly: NcPoly) -> Result<()> {
        let rel = self.check_relation(poly)?;
        self.relations.push(rel);
        Ok(())
    }

    pub fn check_relation(&self, poly: NcPoly) -> Result<Relation> {
        if poly.max_generator().is_some_and(|m| m >= self.arrows.len()) {
            return Err(Error::InvalidQuiver("relation uses an unknown arrow".into()));
        }
        let mut ends = None;
        for (w, _) in poly.terms() {
            let e = self.path_endpoints(w).map_err(|m| {
                Error::InvalidQuiver(if w.is_empty() {
                    "relations may not contain constant terms".into()
                } else {
                    m
                })
            })?;
            match ends {
                None => ends = Some(e),
                Some(prev) if prev != e => {
                    return Err(Error::InvalidQuiver(
                        "relation mixes paths with different endpoints".into(),
                    ))
                }
                _ => {}
            }
        }
        let Some((tail, head)) = ends else {
            return Err(Error::InvalidQuiver("zero relation".into()));
        };
        Ok(Relation { poly, tail, head })
    }

    /// Parses a relation in the expression syntax (arrow names as letters).
    /// Diagnostics point at `line`, columns offset by `col0`.
    pub fn parse_relation(&self, src: &str, line: usize, col0: usize) -> Result<Relation> {
        let gens = self.arrow_generators();
        let poly = parse_expr(src, line, col0)?.to_nc(&gens, line)?;
        self.check_relation(poly).map_err(|e| match e {
            Error::InvalidQuiver(m) => Error::parse(line, col0, m),
            other => other,
        })
    }

    pub fn relation_text(&self, r: &Relation) -> String {
        r.poly.display(&self.arrow_names()).to_string()
    }

    /// The quiver with vertex `v`, its arrows, and relations through them removed.
    pub fn without_vertex(&self, v: usize) -> Result<QuiverPresentation> {
        let keep: Vec<usize> = (0..self.arrows.len())
            .filter(|&a| self.arrows[a].tail != v && self.arrows[a].head != v)
            .collect();
        let renum = |x: usize| if x > v { x - 1 } else { x };
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != v)
            .map(|(_, s)| s.clone())
            .collect();
        let arrows = keep
            .iter()
            .map(|&a| Arrow {
                name: self.arrows[a].name.clone(),
                tail: renum(self.arrows[a].tail),
                head: renum(self.arrows[a].head),
            })
            .collect();
        let mut q = QuiverPresentation::new(vertices, arrows)?;
        let mut map = vec![usize::MAX; self.arrows.len()];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = new;
        }
        for r in &self.relations {
            if r.poly.terms().all(|(w, _)| w.letters().all(|l| map[l] != usize::MAX)) {
                q.add_relation(r.poly.relabel(&map))?;
            }
        }
        Ok(q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimVector(pub Vec<u64>);

impl DimVector {
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaVector(pub Vec<Rat>);

impl ThetaVector {
    pub fn from_ints(v: &[i64]) -> Self {
        ThetaVector(v.iter().map(|&x| Rat::from_int(x)).collect())
    }
}

/// `Σ θ_v γ_v`.
pub fn theta_pairing(theta: &ThetaVector, dims: &DimVector) -> Result<Rat> {
    if theta.0.len() != dims.0.len() {
        return Err(Error::ShapeMismatch(format!(
            "θ has {} entries, dimension vector {}",
            theta.0.len(),
            dims.0.len()
        )));
    }
    let mut acc = Rat::zero();
    for (t, &g) in theta.0.iter().zip(&dims.0) {
        acc += &(t * &Rat::from_int(g as i64));
    }
    Ok(acc)
}

/// A distinguished vertex and a column vector into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Framing {
    pub vertex: usize,
    pub vector: NcMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NCRepresentation {
    pub ranks: Vec<usize>,
    pub matrices: Vec<NcMatrix>,
    pub framing: Option<Framing>,
}

impl NCRepresentation {
    pub fn new(q: &QuiverPresentation, ranks: Vec<usize>, matrices: Vec<NcMatrix>) -> Result<Self> {
        let rep = NCRepresentation {
            ranks,
            matrices,
            framing: None,
        };
        rep.validate(q)?;
        Ok(rep)
    }

    /// Scalar representation from row-major rational entries per arrow.
    pub fn scalar(q: &QuiverPresentation, ranks: Vec<usize>, values: &[Vec<Rat>]) -> Result<Self> {
        if values.len() != q.arrows().len() {
            return Err(Error::ShapeMismatch("one matrix per arrow expected".into()));
        }
        let mut mats = Vec::new();
        for (a, v) in q.arrows().iter().zip(values) {
            let (r, c) = (ranks[a.head], ranks[a.tail]);
            if v.len() != r * c {
                return Err(Error::ShapeMismatch(format!(
                    "arrow `{}` needs {} entries, got {}",
                    a.name,
                    r * c,
                    v.len()
                )));
            }
            mats.push(NcMatrix::from_rats(r, c, v));
        }
        Self::new(q, ranks, mats)
    }

    pub fn with_framing(mut self, q: &QuiverPresentation, vertex: usize, vector: NcMatrix) -> Result<Self> {
        self.framing = Some(Framing { vertex, vector });
        self.validate(q)?;
        Ok(self)
    }

    pub fn validate(&self, q: &QuiverPresentation) -> Result<()> {
        if self.ranks.len() != q.num_vertices() {
            return Err(Error::ShapeMismatch(format!(
                "{} ranks for {} vertices",
                self.ranks.len(),
                q.num_vertices()
            )));
        }
        if self.matrices.len() != q.arrows().len() {
            return Err(Error::ShapeMismatch(format!(
                "{} matrices for {} arrows",
                self.matrices.len(),
                q.arrows().len()
            )));
        }
        for (a, m) in q.arrows().iter().zip(&self.matrices) {
            let want = (self.ranks[a.head], self.ranks[a.tail]);
            if m.shape() != want {
                return Err(Error::ShapeMismatch(format!(
                    "arrow `{}` has shape {:?}, expected {:?}",
                    a.name,
                    m.shape(),
                    want
                )));
            }
        }
        if let Some(f) = &self.framing {
            if f.vertex >= self.ranks.len() || f.vector.shape() != (self.ranks[f.vertex], 1) {
                return Err(Error::ShapeMismatch("framing vector has the wrong shape".into()));
            }
        }
        Ok(())
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector(self.ranks.iter().map(|&r| r as u64).collect())
    }

    pub fn is_scalar(&self) -> bool {
        self.matrices.iter().all(|m| m.is_scalar())
            && self.framing.as_ref().is_none_or(|f| f.vector.is_scalar())
    }
}

/// Matrix of a nonempty path (`max_len` truncates entry words).
pub fn eval_path_truncated(
    q: &QuiverPresentation,
    rep: &NCRepresentation,
    path: &Word,
    max_len: Option<usize>,
) -> Result<NcMatrix> {
    q.path_endpoints(path).map_err(Error::InvalidQuiver)?;
    let letters: Vec<usize> = path.letters().collect();
    let mut acc = rep.matrices[letters[0]].clone();
    for &l in &letters[1..] {
        acc = acc.mul_truncated(&rep.matrices[l], max_len)?;
    }
    Ok(acc)
}

pub fn eval_path(q: &QuiverPresentation, rep: &NCRepresentation, path: &Word) -> Result<NcMatrix> {
    eval_path_truncated(q, rep, path, None)
}

/// The empty path at `v`.
pub fn trivial_path(rep: &NCRepresentation, v: usize) -> NcMatrix {
    NcMatrix::identity(rep.ranks[v])
}

/// One matrix per relation: the relation evaluated on `rep`.
pub fn relation_residuals(q: &QuiverPresentation, rep: &NCRepresentation) -> Result<Vec<NcMatrix>> {
    rep.validate(q)?;
    let mut out = Vec::new();
    for r in q.relations() {
        let mut acc = NcMatrix::zero(rep.ranks[r.head], rep.ranks[r.tail]);
        for (w, c) in r.poly.terms() {
            acc = acc.add(&eval_path(q, rep, w)?.scale(c))?;
        }
        out.push(acc);
    }
    Ok(out)
}
