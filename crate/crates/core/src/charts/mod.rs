//! Chart-level NC structures: the universal representation on a chart, the
//! ideal generated by its relation residuals, linear elimination, point
//! completions, order-by-order gluing and cocycle defects.

mod cocycle;
mod eliminate;
mod first_order;
mod gluing;
mod local;

pub use cocycle::{cocycle_defect, CocycleReport};
pub use eliminate::eliminate_linear;
pub use first_order::{first_order_thickening, FirstOrderElement, FirstOrderModel, FirstOrderReport};
pub use gluing::{
    explicit_gluing, solve_gluing, GluingMap, GluingReport, OverlapHints,
};
pub use local::{comm_expand_at_point, complete_at_point, expand_at_point, LocalAlgebra};

use std::collections::HashSet;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::ncalg::{Algebra, AlgebraContext, CommPoly, Generators, Ideal, NcPoly};
use crate::quiver::{relation_residuals, NCRepresentation, NcMatrix, QuiverPresentation};
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entry {
    Constant(Rat),
    Coordinate(String),
}

/// A chart: per-arrow matrix templates mixing constants and coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartSpec {
    pub name: String,
    pub quiver: QuiverPresentation,
    pub ranks: Vec<usize>,
    /// Row-major template per arrow, in quiver arrow order.
    pub templates: Vec<Vec<Entry>>,
    /// Coordinates that may be inverted on overlaps.
    pub invertible: Vec<String>,
}

impl ChartSpec {
    pub fn new(
        name: impl Into<String>,
        quiver: QuiverPresentation,
        ranks: Vec<usize>,
        templates: Vec<Vec<Entry>>,
        invertible: Vec<String>,
    ) -> Result<Self> {
        let spec = ChartSpec {
            name: name.into(),
            quiver,
            ranks,
            templates,
            invertible,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let q = &self.quiver;
        if self.ranks.len() != q.num_vertices() {
            return Err(Error::InvalidChart(format!(
                "{} ranks for {} vertices",
                self.ranks.len(),
                q.num_vertices()
            )));
        }
        if self.templates.len() != q.arrows().len() {
            return Err(Error::InvalidChart("one matrix template per arrow expected".into()));
        }
        let mut seen = HashSet::new();
        for (a, t) in q.arrows().iter().zip(&self.templates) {
            let want = self.ranks[a.head] * self.ranks[a.tail];
            if t.len() != want {
                return Err(Error::InvalidChart(format!(
                    "template for `{}` has {} entries, expected {}",
                    a.name,
                    t.len(),
                    want
                )));
            }
            for e in t {
                if let Entry::Coordinate(c) = e {
                    if !seen.insert(c.clone()) {
                        return Err(Error::InvalidChart(format!("duplicate coordinate `{c}`")));
                    }
                }
            }
        }
        for c in &self.invertible {
            if !seen.contains(c) {
                return Err(Error::InvalidChart(format!("invertible `{c}` is not a coordinate")));
            }
        }
        Ok(())
    }

    /// Coordinates in order of first appearance (arrow order, row-major).
    pub fn coordinates(&self) -> Vec<String> {
        self.templates
            .iter()
            .flatten()
            .filter_map(|e| match e {
                Entry::Coordinate(c) => Some(c.clone()),
                Entry::Constant(_) => None,
            })
            .collect()
    }

    /// Position of each coordinate: `(arrow, row, col)`.
    pub fn coordinate_slot(&self, name: &str) -> Option<(usize, usize, usize)> {
        for (a, t) in self.templates.iter().enumerate() {
            let cols = self.ranks[self.quiver.arrows()[a].tail];
            for (i, e) in t.iter().enumerate() {
                if matches!(e, Entry::Coordinate(c) if c == name) {
                    return Some((a, i / cols, i % cols));
                }
            }
        }
        None
    }
}

/// Matrices whose entries are the template constants and the coordinate
/// generators (degree one), over the coordinate alphabet.
pub fn universal_nc_rep(spec: &ChartSpec) -> Result<(Generators, NCRepresentation)> {
    let coords = spec.coordinates();
    let gens = Generators::plain(&coords)?;
    let mut mats = Vec::new();
    for (a, t) in spec.quiver.arrows().iter().zip(&spec.templates) {
        let (r, c) = (spec.ranks[a.head], spec.ranks[a.tail]);
        let mut m = NcMatrix::zero(r, c);
        for (i, e) in t.iter().enumerate() {
            let p = match e {
                Entry::Constant(x) => NcPoly::constant(x.clone()),
                Entry::Coordinate(n) => NcPoly::generator(gens.index_of(n).unwrap()),
            };
            m.set(i / c, i % c, p);
        }
        mats.push(m);
    }
    let rep = NCRepresentation::new(&spec.quiver, spec.ranks.clone(), mats)?;
    Ok((gens, rep))
}

/// The classical chart equations: relation residuals of the universal
/// representation with commuting indeterminates, row-major per relation.
pub fn classical_equations(spec: &ChartSpec) -> Vec<CommPoly> {
    let coords = spec.coordinates();
    let nv = coords.len();
    let entry = |e: &Entry| match e {
        Entry::Constant(x) => CommPoly::constant(nv, x.clone()),
        Entry::Coordinate(n) => CommPoly::var(nv, coords.iter().position(|c| c == n).unwrap()),
    };
    let q = &spec.quiver;
    let mut out = Vec::new();
    for rel in q.relations() {
        let (rows, cols) = (spec.ranks[rel.head], spec.ranks[rel.tail]);
        let mut acc = vec![CommPoly::zero(nv); rows * cols];
        for (w, coef) in rel.poly.terms() {
            let letters: Vec<usize> = w.letters().collect();
            let first = letters[0];
            let cur_rows = spec.ranks[q.arrows()[first].head];
            let mut cur_cols = spec.ranks[q.arrows()[first].tail];
            let mut cur: Vec<CommPoly> = spec.templates[first].iter().map(entry).collect();
            for &l in &letters[1..] {
                let a = &q.arrows()[l];
                let (r2, c2) = (spec.ranks[a.head], spec.ranks[a.tail]);
                debug_assert_eq!(cur_cols, r2);
                let m: Vec<CommPoly> = spec.templates[l].iter().map(entry).collect();
                let mut next = vec![CommPoly::zero(nv); cur_rows * c2];
                for i in 0..cur_rows {
                    for j in 0..c2 {
                        for k in 0..cur_cols {
                            next[i * c2 + j] = &next[i * c2 + j] + &(&cur[i * cur_cols + k] * &m[k * c2 + j]);
                        }
                    }
                }
                cur = next;
                cur_cols = c2;
            }
            for (slot, v) in acc.iter_mut().zip(&cur) {
                *slot = &*slot + &v.scale(coef);
            }
        }
        debug_assert_eq!(acc.len(), rows * cols);
        out.extend(acc);
    }
    out
}

/// A chart with its ideal of relations, possibly after eliminating some
/// coordinates.
#[derive(Debug, Clone)]
pub struct ChartPresentation {
    pub spec: ChartSpec,
    /// Surviving coordinates.
    pub coordinates: Vec<String>,
    pub algebra: Arc<Algebra>,
    /// The universal representation, in surviving coordinates.
    pub rep: NCRepresentation,
    /// Ideal generators in canonical order, exact.
    pub relations: Vec<NcPoly>,
    /// Eliminated coordinate and its expression in surviving coordinates.
    pub eliminated: Vec<(String, NcPoly)>,
    ideal: Arc<OnceLock<Ideal>>,
}

impl ChartPresentation {
    pub(crate) fn assemble(
        spec: ChartSpec,
        coordinates: Vec<String>,
        rep: NCRepresentation,
        relations: Vec<NcPoly>,
        eliminated: Vec<(String, NcPoly)>,
        nc_degree: usize,
        adic_degree: usize,
    ) -> Result<Self> {
        let ctx = AlgebraContext::new(Generators::plain(&coordinates)?, nc_degree, adic_degree)?;
        Ok(ChartPresentation {
            spec,
            coordinates,
            algebra: Arc::new(Algebra::new(ctx)),
            rep,
            relations,
            eliminated,
            ideal: Arc::new(OnceLock::new()),
        })
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn generators(&self) -> &Generators {
        self.algebra.context().generators()
    }

    pub fn nc_degree(&self) -> usize {
        self.algebra.nc_degree()
    }

    pub fn adic_degree(&self) -> usize {
        self.algebra.adic_degree()
    }

    /// Ideal span in the truncated algebra at the origin (computed on demand).
    pub fn ideal(&self) -> &Ideal {
        self.ideal.get_or_init(|| {
            Ideal::generate(&self.algebra, &self.relations).expect("relations use chart coordinates")
        })
    }

    pub fn relation_texts(&self) -> Vec<String> {
        self.relations
            .iter()
            .map(|r| r.display(&self.coordinates).to_string())
            .collect()
    }

    /// Abelianized generators.
    pub fn abelianized(&self) -> Vec<CommPoly> {
        self.relations
            .iter()
            .map(|r| self.generators().abelianize(r))
            .collect()
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_empty()
    }
}

/// Ideal generators are the nonzero matrix entries of the relation
/// residuals of the universal representation, relation by relation,
/// row-major. Checks that the abelianized generators are the classical
/// chart equations and that the origin lies on the chart.
pub fn relations_ideal(spec: &ChartSpec, nc_degree: usize, adic_degree: usize) -> Result<ChartPresentation> {
    let (gens, rep) = universal_nc_rep(spec)?;
    let residuals = relation_residuals(&spec.quiver, &rep)?;
    let all: Vec<NcPoly> = residuals.iter().flat_map(|m| m.entries().to_vec()).collect();
    let classical = classical_equations(spec);
    debug_assert_eq!(all.len(), classical.len());
    for (nc, cl) in all.iter().zip(&classical) {
        if gens.abelianize(nc) != *cl {
            return Err(Error::InconsistentData(
                "abelianized residual differs from the classical equation".into(),
            ));
        }
    }
    let relations: Vec<NcPoly> = all.into_iter().filter(|p| !p.is_zero()).collect();
    if let Some(r) = relations.iter().find(|r| !r.constant_term().is_zero()) {
        return Err(Error::NotOnChart(format!(
            "the origin of `{}` violates `{}`",
            spec.name,
            r.display(&gens.names())
        )));
    }
    ChartPresentation::assemble(
        spec.clone(),
        gens.names(),
        rep,
        relations,
        Vec::new(),
        nc_degree,
        adic_degree,
    )
}

/// Span of the commutative ideal generated by `gens` among polynomials of
/// degree `≤ n`, as an echelon basis over the monomials (graded lex order).
pub fn classical_ideal_span(gens: &[CommPoly], nvars: usize, n: usize) -> crate::linalg::Echelon {
    let monos = monomials_up_to(nvars, n);
    let index = |e: &[i32]| monos.iter().position(|m| m.as_slice() == e);
    let mut ech = crate::linalg::Echelon::new(monos.len());
    for g in gens {
        for m in &monos {
            let prod = &CommPoly::monomial(m.clone(), Rat::one()) * g;
            let v = crate::linalg::SparseVec::from_pairs(prod.truncate(n).terms().map(|(e, c)| {
                (index(e).expect("polynomial generators") as u32, c.clone())
            }));
            ech.insert(&v);
        }
    }
    ech.interreduce();
    ech
}

/// Exponent vectors of total degree `≤ n`, by degree.
pub fn monomials_up_to(nvars: usize, n: usize) -> Vec<Vec<i32>> {
    let mut out = Vec::new();
    for d in 0..=n {
        let mut cur = vec![0i32; nvars];
        fn rec(i: usize, left: i32, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(cur.clone());
                return;
            }
            for k in (0..=left).rev() {
                cur[i] = k;
                rec(i + 1, left - k, cur, out);
            }
            cur[i] = 0;
        }
        if nvars == 0 {
            if d == 0 {
                out.push(Vec::new());
            }
            continue;
        }
        rec(0, d as i32, &mut cur, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn hilb1_spec() -> ChartSpec {
        let mut q = QuiverPresentation::from_names(
            &["d", "s"],
            &[("f", "d", "s"), ("x", "s", "s"), ("y", "s", "s")],
        )
        .unwrap();
        let r = q.parse_relation("x*y - y*x", 1, 1).unwrap();
        q.add_relation(r.poly).unwrap();
        ChartSpec::new(
            "P",
            q,
            vec![1, 1],
            vec![
                vec![Entry::Constant(Rat::one())],
                vec![Entry::Coordinate("a".into())],
                vec![Entry::Coordinate("b".into())],
            ],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn point_chart_ideal_is_the_commutator() {
        let pres = relations_ideal(&hilb1_spec(), 2, 3).unwrap();
        assert_eq!(pres.relation_texts(), vec!["a*b - b*a"]);
        assert_eq!(pres.ideal().quotient_dims(&pres.algebra), vec![1, 2, 3, 4]);
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_up_to(2, 2).len(), 6);
        assert_eq!(monomials_up_to(3, 3).len(), 20);
    }
}
