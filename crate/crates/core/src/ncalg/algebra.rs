//! The finite-dimensional working quotient `T / (F^{d+1} + m^{N+1})`, its
//! two-sided ideals, and the associated-graded pieces of the commutator
//! filtration.
//!
//! Quotient elements are stored as [`NcPoly`]s in normal form: every word is
//! a complement word of `F^{d+1}`. The global coordinate vector of an element
//! lists degrees in ascending order; inside one degree the complement words
//! run from lexicographically largest to smallest. Row reduction always
//! pivots on the smallest column, so the pivot of an ideal element is its
//! lowest-degree part, which makes pivot counts per degree the dimensions of
//! the graded pieces of the local quotient.

use std::collections::HashMap;

use super::context::AlgebraContext;
use super::filtration::FiltrationTable;
use super::poly::NcPoly;
use super::word::Word;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::rational::Rat;

const ABSENT: u32 = u32::MAX;

#[derive(Debug)]
pub struct Algebra {
    ctx: AlgebraContext,
    table: FiltrationTable,
    /// Complement word indices per degree, in global column order.
    basis: Vec<Vec<u64>>,
    /// Word index -> position in `basis[n]`.
    position: Vec<Vec<u32>>,
    offsets: Vec<usize>,
}

impl Algebra {
    pub fn new(ctx: AlgebraContext) -> Self {
        let table = FiltrationTable::new(&ctx);
        let n_max = ctx.adic_degree();
        let mut basis = Vec::with_capacity(n_max + 1);
        let mut position = Vec::with_capacity(n_max + 1);
        let mut offsets = Vec::with_capacity(n_max + 2);
        let mut total = 0;
        for n in 0..=n_max {
            let mut words = table.complement(n);
            words.reverse();
            let mut pos = vec![ABSENT; table.words(n) as usize];
            for (i, &w) in words.iter().enumerate() {
                pos[w as usize] = i as u32;
            }
            offsets.push(total);
            total += words.len();
            basis.push(words);
            position.push(pos);
        }
        offsets.push(total);
        Algebra {
            ctx,
            table,
            basis,
            position,
            offsets,
        }
    }

    pub fn context(&self) -> &AlgebraContext {
        &self.ctx
    }

    pub fn table(&self) -> &FiltrationTable {
        &self.table
    }

    pub fn ngens(&self) -> usize {
        self.ctx.ngens()
    }

    pub fn names(&self) -> Vec<String> {
        self.ctx.names()
    }

    pub fn nc_degree(&self) -> usize {
        self.ctx.nc_degree()
    }

    pub fn adic_degree(&self) -> usize {
        self.ctx.adic_degree()
    }

    /// Total dimension of the working quotient.
    pub fn dim(&self) -> usize {
        self.offsets[self.adic_degree() + 1]
    }

    /// Dimension of the degree-`n` part.
    pub fn degree_dim(&self, n: usize) -> usize {
        self.basis[n].len()
    }

    pub fn degree_dims(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.len()).collect()
    }

    /// Degree of a global column.
    pub fn column_degree(&self, col: u32) -> usize {
        let c = col as usize;
        self.offsets.partition_point(|&o| o <= c) - 1
    }

    pub fn basis_word(&self, col: u32) -> Word {
        let n = self.column_degree(col);
        let idx = self.basis[n][col as usize - self.offsets[n]];
        Word::from_index(idx, n, self.ngens())
    }

    pub fn basis_element(&self, col: u32) -> NcPoly {
        NcPoly::term(self.basis_word(col), Rat::one())
    }

    pub fn check(&self, p: &NcPoly) -> Result<()> {
        self.ctx.generators().check(p)
    }

    /// Canonical representative modulo `F^{d+1} + m^{N+1}`.
    pub fn normal_form(&self, p: &NcPoly) -> NcPoly {
        let g = self.ngens();
        let mut by_degree: HashMap<usize, Vec<(u32, Rat)>> = HashMap::new();
        for (w, c) in p.terms() {
            let n = w.len();
            if n > self.adic_degree() {
                continue;
            }
            by_degree
                .entry(n)
                .or_default()
                .push((self.table.col_of(n, w.index(g)), c.clone()));
        }
        let mut out = NcPoly::zero();
        for (n, pairs) in by_degree {
            let v = SparseVec::from_pairs(pairs);
            let r = self.table.level(self.nc_degree() + 1, n).reduce(&v);
            for (col, c) in r.into_entries() {
                out.add_term(Word::from_index(self.table.idx_of(n, col), n, g), c);
            }
        }
        out
    }

    /// Coordinates in the global basis. `p` is normalized first.
    pub fn to_vector(&self, p: &NcPoly) -> SparseVec {
        let nf = self.normal_form(p);
        self.nf_to_vector(&nf)
    }

    /// Coordinates of an element already in normal form.
    pub fn nf_to_vector(&self, nf: &NcPoly) -> SparseVec {
        let g = self.ngens();
        SparseVec::from_pairs(nf.terms().map(|(w, c)| {
            let n = w.len();
            let pos = self.position[n][w.index(g) as usize];
            debug_assert!(pos != ABSENT, "word not in normal form");
            ((self.offsets[n] + pos as usize) as u32, c.clone())
        }))
    }

    pub fn from_vector(&self, v: &SparseVec) -> NcPoly {
        NcPoly::from_terms(
            v.entries()
                .iter()
                .map(|(col, c)| (self.basis_word(*col), c.clone())),
        )
    }

    pub fn add(&self, a: &NcPoly, b: &NcPoly) -> NcPoly {
        self.normal_form(&(a + b))
    }

    pub fn scale(&self, a: &NcPoly, s: &Rat) -> NcPoly {
        self.normal_form(&a.scale(s))
    }

    pub fn mul(&self, a: &NcPoly, b: &NcPoly) -> NcPoly {
        self.normal_form(&a.mul_truncated(b, Some(self.adic_degree())))
    }

    pub fn commutator(&self, a: &NcPoly, b: &NcPoly) -> NcPoly {
        let n = Some(self.adic_degree());
        self.normal_form(&(&a.mul_truncated(b, n) - &b.mul_truncated(a, n)))
    }

    /// Algebra map `generator i ↦ images[i]`, landing in `target`.
    pub fn substitute(&self, p: &NcPoly, images: &[NcPoly], target: &Algebra) -> Result<NcPoly> {
        if images.len() != self.ngens() {
            return Err(Error::ContextMismatch(format!(
                "assignment has {} images for {} generators",
                images.len(),
                self.ngens()
            )));
        }
        for im in images {
            target.check(im)?;
        }
        Ok(target.normal_form(&p.substitute_truncated(images, Some(target.adic_degree()))))
    }

    /// Span of the degree-`n` normal forms of `F^k`, in global columns.
    /// `k = 0` gives everything; `k > d` gives zero.
    pub fn filtration_span(&self, k: usize) -> Echelon {
        let mut e = Echelon::new(self.dim());
        if k == 0 {
            for c in 0..self.dim() as u32 {
                e.insert(&SparseVec::unit(c));
            }
            return e;
        }
        if k > self.nc_degree() {
            return e;
        }
        for n in 0..=self.adic_degree() {
            let level = self.table.level(k, n);
            let top = self.table.level(self.nc_degree() + 1, n);
            for r in level.rows() {
                let red = top.reduce(r);
                let v = SparseVec::from_pairs(red.into_entries().into_iter().map(|(col, c)| {
                    let idx = self.table.idx_of(n, col);
                    let pos = self.position[n][idx as usize];
                    ((self.offsets[n] + pos as usize) as u32, c)
                }));
                e.insert(&v);
            }
        }
        e.interreduce();
        e
    }
}

/// A two-sided ideal of an [`Algebra`], stored as a reduced echelon basis of
/// its span in global coordinates.
#[derive(Debug, Clone)]
pub struct Ideal {
    generators: Vec<NcPoly>,
    span: Echelon,
}

impl Ideal {
    pub fn zero(alg: &Algebra) -> Self {
        Ideal {
            generators: Vec::new(),
            span: Echelon::new(alg.dim()),
        }
    }

    /// Spans `u · r · v` over complement words `u, v` and generators `r`.
    pub fn generate(alg: &Algebra, gens: &[NcPoly]) -> Result<Self> {
        let n_max = alg.adic_degree();
        let g = alg.ngens();
        let mut span = Echelon::new(alg.dim());
        let mut normalized = Vec::with_capacity(gens.len());
        for r in gens {
            alg.check(r)?;
            let r = alg.normal_form(r);
            normalized.push(r.clone());
            let Some(low) = r.low_degree() else { continue };
            for du in 0..=n_max - low {
                for dv in 0..=n_max - low - du {
                    for &ui in &alg.basis[du] {
                        let u = NcPoly::term(Word::from_index(ui, du, g), Rat::one());
                        let ur = u.mul_truncated(&r, Some(n_max));
                        if ur.is_zero() {
                            continue;
                        }
                        for &vi in &alg.basis[dv] {
                            let v = NcPoly::term(Word::from_index(vi, dv, g), Rat::one());
                            let urv = ur.mul_truncated(&v, Some(n_max));
                            span.insert(&alg.to_vector(&urv));
                        }
                    }
                }
            }
        }
        span.interreduce();
        Ok(Ideal {
            generators: normalized,
            span,
        })
    }

    /// Ideal spanned by `self` and the filtration piece `F^k`.
    pub fn with_filtration(&self, alg: &Algebra, k: usize) -> Ideal {
        let mut span = alg.filtration_span(k);
        for r in self.span.rows() {
            span.insert(r);
        }
        span.interreduce();
        Ideal {
            generators: self.generators.clone(),
            span,
        }
    }

    pub fn generators(&self) -> &[NcPoly] {
        &self.generators
    }

    pub fn span(&self) -> &Echelon {
        &self.span
    }

    pub fn rank(&self) -> usize {
        self.span.rank()
    }

    pub fn contains(&self, alg: &Algebra, p: &NcPoly) -> bool {
        self.span.contains(&alg.to_vector(p))
    }

    pub fn contains_unit(&self, alg: &Algebra) -> bool {
        self.contains(alg, &NcPoly::one())
    }

    /// Canonical representative of `p` modulo the ideal.
    pub fn reduce(&self, alg: &Algebra, p: &NcPoly) -> NcPoly {
        alg.from_vector(&self.span.reduce(&alg.to_vector(p)))
    }

    /// Linear retraction onto the complement of the ideal: coordinates at
    /// the non-pivot columns, vanishing exactly on the ideal.
    pub fn quotient_coords(&self, alg: &Algebra, p: &NcPoly) -> SparseVec {
        self.span.reduce(&alg.to_vector(p))
    }

    /// Dimension of each graded piece `m^n / (m^{n+1} + I ∩ m^n)` of the quotient.
    pub fn quotient_dims(&self, alg: &Algebra) -> Vec<usize> {
        let mut dims = alg.degree_dims();
        for p in self.span.pivots() {
            dims[alg.column_degree(p)] -= 1;
        }
        dims
    }

    pub fn same_as(&self, other: &Ideal) -> bool {
        self.span.same_span(&other.span)
    }

    /// Every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, alg: &Algebra, other: &Ideal) -> bool {
        other.generators.iter().all(|g| self.contains(alg, g))
    }
}

/// The matrix of a map on one associated-graded piece of the commutator
/// filtration, `V_k / V_{k+1}` with `V_k = F^k + I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrMatrix {
    pub level: usize,
    /// rows index the target basis, columns the source basis
    pub entries: Vec<Vec<Rat>>,
    pub source_dim: usize,
    pub target_dim: usize,
}

impl GrMatrix {
    pub fn is_identity(&self) -> bool {
        self.source_dim == self.target_dim
            && self.entries.iter().enumerate().all(|(i, row)| {
                row.iter()
                    .enumerate()
                    .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
            })
    }
}

/// Basis of `V_k / V_{k+1}` for an algebra with an ideal.
#[derive(Debug, Clone)]
pub struct GradedPiece {
    pub level: usize,
    upper: Echelon,
    lower: Echelon,
    columns: Vec<u32>,
}

impl GradedPiece {
    pub fn new(alg: &Algebra, ideal: &Ideal, k: usize) -> Self {
        let upper = ideal.with_filtration(alg, k).span;
        let lower = ideal.with_filtration(alg, k + 1).span;
        let columns = upper
            .pivots()
            .into_iter()
            .filter(|&c| !lower.is_pivot(c))
            .collect();
        GradedPiece {
            level: k,
            upper,
            lower,
            columns,
        }
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn basis(&self, alg: &Algebra) -> Vec<NcPoly> {
        self.columns
            .iter()
            .map(|&c| alg.from_vector(self.upper.row_for_pivot(c).unwrap()))
            .collect()
    }

    /// Coordinates of an element of `V_k` modulo `V_{k+1}`.
    pub fn coords(&self, alg: &Algebra, p: &NcPoly) -> Result<Vec<Rat>> {
        let v = alg.to_vector(p);
        if !self.upper.contains(&v) {
            return Err(Error::InconsistentData(format!(
                "element does not lie in filtration level {}",
                self.level
            )));
        }
        let r = self.lower.reduce(&v);
        Ok(self.columns.iter().map(|&c| r.get(c)).collect())
    }
}

/// Matrix of `map` on the level-`k` graded pieces, from `(src, src_ideal)`
/// to `(dst, dst_ideal)`.
pub fn gr_component<F>(
    src: &Algebra,
    src_ideal: &Ideal,
    dst: &Algebra,
    dst_ideal: &Ideal,
    k: usize,
    map: F,
) -> Result<GrMatrix>
where
    F: Fn(&NcPoly) -> Result<NcPoly>,
{
    let sp = GradedPiece::new(src, src_ideal, k);
    let tp = GradedPiece::new(dst, dst_ideal, k);
    let mut cols = Vec::with_capacity(sp.dim());
    for b in sp.basis(src) {
        cols.push(tp.coords(dst, &map(&b)?)?);
    }
    let entries = (0..tp.dim())
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    Ok(GrMatrix {
        level: k,
        entries,
        source_dim: sp.dim(),
        target_dim: tp.dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(g: usize, d: usize, n: usize) -> Algebra {
        let names: Vec<String> = ["x", "y", "z", "w"][..g].iter().map(|s| s.to_string()).collect();
        Algebra::new(AlgebraContext::plain(&names, d, n).unwrap())
    }

    fn x() -> NcPoly {
        NcPoly::generator(0)
    }
    fn y() -> NcPoly {
        NcPoly::generator(1)
    }

    #[test]
    fn normal_forms() {
        let a = alg(2, 0, 3);
        assert!(a.normal_form(&x().commutator(&y())).is_zero());
        let b = alg(2, 1, 3);
        assert!(!b.normal_form(&x().commutator(&y())).is_zero());
        assert!(b.normal_form(&x().commutator(&x().commutator(&y()))).is_zero());
        let c = alg(2, 3, 1);
        assert!(c.mul(&x(), &y()).is_zero());
    }

    #[test]
    fn commutative_quotient_dims() {
        let a = alg(3, 0, 4);
        assert_eq!(a.degree_dims(), vec![1, 3, 6, 10, 15]);
    }

    #[test]
    fn ideal_of_commutator() {
        let a = alg(2, 2, 3);
        let i = Ideal::generate(&a, &[x().commutator(&y())]).unwrap();
        assert!(i.contains(&a, &(&x() * &x().commutator(&y()))));
        assert!(!i.contains_unit(&a));
        assert_eq!(i.quotient_dims(&a), vec![1, 2, 3, 4]);
    }

    #[test]
    fn gr_of_identity_is_identity() {
        let a = alg(2, 2, 4);
        let z = Ideal::zero(&a);
        for k in 0..=2 {
            let m = gr_component(&a, &z, &a, &z, k, |p| Ok(a.normal_form(p))).unwrap();
            assert!(m.is_identity(), "level {k}");
        }
    }
}
