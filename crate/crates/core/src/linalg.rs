//! Sparse exact row reduction.
//!
//! Columns are plain `u32` indices and the pivot of a row is always its
//! smallest column. Callers encode their preferred elimination order in the
//! column numbering, so "row-reduced" here means: each row is monic at its
//! pivot, and (after [`Echelon::interreduce`]) no row has a nonzero entry in
//! another row's pivot column.

use std::collections::BTreeMap;

use crate::rational::Rat;

/// Sparse vector, entries sorted by column, no explicit zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(u32, Rat)>,
}

impl SparseVec {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from arbitrary (column, value) pairs, summing duplicates.
    pub fn from_pairs<I: IntoIterator<Item = (u32, Rat)>>(pairs: I) -> Self {
        let mut map: BTreeMap<u32, Rat> = BTreeMap::new();
        for (c, v) in pairs {
            if v.is_zero() {
                continue;
            }
            let e = map.entry(c).or_insert_with(Rat::zero);
            *e += &v;
        }
        Self::from_sorted_map(map)
    }

    fn from_sorted_map(map: BTreeMap<u32, Rat>) -> Self {
        SparseVec {
            entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    /// Caller guarantees ascending, nonzero, unique.
    pub fn from_sorted_unchecked(entries: Vec<(u32, Rat)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        SparseVec { entries }
    }

    pub fn unit(col: u32) -> Self {
        SparseVec {
            entries: vec![(col, Rat::one())],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(u32, Rat)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(u32, Rat)> {
        self.entries
    }

    pub fn leading(&self) -> Option<u32> {
        self.entries.first().map(|(c, _)| *c)
    }

    pub fn get(&self, col: u32) -> Rat {
        match self.entries.binary_search_by_key(&col, |(c, _)| *c) {
            Ok(i) => self.entries[i].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    pub fn scale(&self, s: &Rat) -> SparseVec {
        if s.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(c, v)| (*c, v * s)).collect(),
        }
    }

    /// `self + s * other`
    pub fn axpy(&self, s: &Rat, other: &SparseVec) -> SparseVec {
        if s.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, s * &b[j].1));
                j += 1;
            } else {
                let v = &a[i].1 + &(s * &b[j].1);
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Rat::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&-Rat::one(), other)
    }

    fn make_monic(mut self) -> SparseVec {
        if let Some((_, lead)) = self.entries.first() {
            if !lead.is_one() {
                let inv = lead.recip();
                for (_, v) in self.entries.iter_mut() {
                    *v = &*v * &inv;
                }
            }
        }
        self
    }
}

const NO_ROW: u32 = u32::MAX;

/// A growing row-echelon basis of a subspace of `Q^ncols`.
#[derive(Debug, Clone)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<u32>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivot_row: vec![NO_ROW; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.pivot_row[col as usize] != NO_ROW
    }

    /// Row whose pivot is `col`, if any.
    pub fn row_for_pivot(&self, col: u32) -> Option<&SparseVec> {
        match self.pivot_row[col as usize] {
            NO_ROW => None,
            r => Some(&self.rows[r as usize]),
        }
    }

    pub fn pivots(&self) -> Vec<u32> {
        let mut p: Vec<u32> = self.rows.iter().filter_map(|r| r.leading()).collect();
        p.sort_unstable();
        p
    }

    pub fn non_pivots(&self) -> Vec<u32> {
        (0..self.ncols as u32).filter(|c| !self.is_pivot(*c)).collect()
    }

    /// Reduces `v` against every pivot; the result has no entry in a pivot
    /// column. Zero iff `v` lies in the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        if self.rows.is_empty() || v.is_zero() {
            return v.clone();
        }
        // fast path: nothing to do if no entry is a pivot column
        if v.entries.iter().all(|(c, _)| !self.is_pivot(*c)) {
            return v.clone();
        }
        let mut work: BTreeMap<u32, Rat> = v.entries.iter().cloned().collect();
        let mut out = Vec::new();
        while let Some((col, val)) = work.pop_first() {
            match self.pivot_row[col as usize] {
                NO_ROW => out.push((col, val)),
                r => {
                    let row = &self.rows[r as usize];
                    let s = -&val;
                    for (c, x) in row.entries.iter().skip(1) {
                        let add = &s * x;
                        match work.entry(*c) {
                            std::collections::btree_map::Entry::Occupied(mut e) => {
                                let nv = e.get() + &add;
                                if nv.is_zero() {
                                    e.remove();
                                } else {
                                    *e.get_mut() = nv;
                                }
                            }
                            std::collections::btree_map::Entry::Vacant(e) => {
                                e.insert(add);
                            }
                        }
                    }
                }
            }
        }
        SparseVec { entries: out }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span. Returns `true` if the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        self.push_reduced(r)
    }

    fn push_reduced(&mut self, r: SparseVec) -> bool {
        let Some(lead) = r.leading() else {
            return false;
        };
        assert!((lead as usize) < self.ncols, "column out of range");
        let r = r.make_monic();
        self.pivot_row[lead as usize] = self.rows.len() as u32;
        self.rows.push(r);
        true
    }

    /// Brings the basis to reduced row-echelon form. The result depends only
    /// on the spanned subspace.
    pub fn interreduce(&mut self) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_unstable_by_key(|&i| std::cmp::Reverse(self.rows[i].leading().unwrap()));
        for i in order {
            let row = std::mem::take(&mut self.rows[i]);
            let mut entries = row.entries;
            let head = entries.remove(0);
            let tail = SparseVec { entries };
            let reduced = self.reduce(&tail);
            let mut e = Vec::with_capacity(reduced.len() + 1);
            e.push(head);
            e.extend(reduced.entries);
            self.rows[i] = SparseVec { entries: e };
        }
        // canonical storage order: by pivot
        let mut rows = std::mem::take(&mut self.rows);
        rows.sort_unstable_by_key(|r| r.leading().unwrap());
        self.pivot_row.iter_mut().for_each(|p| *p = NO_ROW);
        for (i, r) in rows.iter().enumerate() {
            self.pivot_row[r.leading().unwrap() as usize] = i as u32;
        }
        self.rows = rows;
    }

    /// Builds a reduced echelon basis of the span of `vecs`.
    pub fn from_vectors<'a, I: IntoIterator<Item = &'a SparseVec>>(ncols: usize, vecs: I) -> Self {
        let mut e = Echelon::new(ncols);
        for v in vecs {
            e.insert(v);
        }
        e.interreduce();
        e
    }

    /// Subspace equality, assuming both sides are interreduced.
    pub fn same_span(&self, other: &Echelon) -> bool {
        self.rank() == other.rank() && self.rows.iter().all(|r| other.contains(r))
    }
}

/// Solves `A x = b` for a small dense system. Free variables are set to zero.
/// Returns `None` when inconsistent.
pub fn solve_dense(a: &[Vec<Rat>], b: &[Rat], nvars: usize) -> Option<Vec<Rat>> {
    let m = a.len();
    let mut aug: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut r = a[i].clone();
            r.resize(nvars, Rat::zero());
            r.push(b[i].clone());
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..nvars {
        let Some(p) = (row..m).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(row, p);
        let inv = aug[row][col].recip();
        for x in aug[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..m {
            if r != row && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in 0..=nvars {
                    let t = &f * &aug[row][c];
                    aug[r][c] = &aug[r][c] - &t;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == m {
            break;
        }
    }
    if aug[row..].iter().any(|r| !r[nvars].is_zero()) {
        return None;
    }
    let mut x = vec![Rat::zero(); nvars];
    for (r, &c) in pivot_cols.iter().enumerate() {
        x[c] = aug[r][nvars].clone();
    }
    Some(x)
}

/// Rank of a small dense matrix.
pub fn dense_rank(rows: &[Vec<Rat>]) -> usize {
    let ncols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let vecs: Vec<SparseVec> = rows
        .iter()
        .map(|r| {
            SparseVec::from_pairs(r.iter().enumerate().map(|(c, v)| (c as u32, v.clone())))
        })
        .collect();
    Echelon::from_vectors(ncols, &vecs).rank()
}
