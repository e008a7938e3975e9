//! Per-degree bases of the commutator filtration `F^k` of the free algebra.
//!
//! `F^k` is the two-sided ideal spanned by products
//! `u · l_1 · v_1 ⋯ l_m · v_m` where `l_j` lies in the `i_j`-th term of the
//! lower central series and `Σ (i_j − 1) ≥ k`. In degree `n` it is generated
//! by
//!
//! * `x · F^k_{n−1}` and `F^k_{n−1} · x` for letters `x`,
//! * the `(k+1)`-fold brackets `L_{k+1}(n)`,
//! * products `L_i(a) · F^{k−i+1}_{n−a}` for `2 ≤ i ≤ k`,
//!
//! which is what [`FiltrationTable`] enumerates. `F^1` (the abelianization
//! kernel) has the explicit basis `w − sort(w)` and skips the enumeration.
//!
//! Word-space columns are numbered `g^n − 1 − index(w)`, so the pivot of a
//! row is its lexicographically largest word and the complement of a level
//! consists of the lexicographically smallest words.

use std::sync::OnceLock;

use super::context::AlgebraContext;
use super::word::Word;
use crate::linalg::{Echelon, SparseVec};
use crate::rational::Rat;

#[derive(Debug)]
pub struct FiltrationTable {
    ngens: usize,
    nc_degree: usize,
    adic_degree: usize,
    powers: Vec<u64>,
    /// `levels[n][k - 1]` = `F^k` in degree `n`, for `1 ≤ k ≤ d + 1`.
    levels: Vec<Vec<OnceLock<Echelon>>>,
    /// `lie[n][i - 2]` = `L_i(n)`, for `2 ≤ i ≤ d + 2`.
    lie: Vec<Vec<OnceLock<Echelon>>>,
}

impl FiltrationTable {
    /// Lazy table: levels are computed on first use.
    pub fn new(ctx: &AlgebraContext) -> Self {
        let g = ctx.ngens();
        let d = ctx.nc_degree();
        let n_max = ctx.adic_degree();
        let powers = (0..=n_max + 1).map(|n| (g as u64).pow(n as u32)).collect();
        FiltrationTable {
            ngens: g,
            nc_degree: d,
            adic_degree: n_max,
            powers,
            levels: (0..=n_max)
                .map(|_| (0..=d).map(|_| OnceLock::new()).collect())
                .collect(),
            lie: (0..=n_max)
                .map(|_| (0..=d).map(|_| OnceLock::new()).collect())
                .collect(),
        }
    }

    /// Computes every level at every degree.
    pub fn build(ctx: &AlgebraContext) -> Self {
        let t = Self::new(ctx);
        for n in 0..=t.adic_degree {
            for k in 1..=t.nc_degree + 1 {
                t.level(k, n);
            }
        }
        t
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn nc_degree(&self) -> usize {
        self.nc_degree
    }

    pub fn adic_degree(&self) -> usize {
        self.adic_degree
    }

    /// Number of words of length `n`.
    pub fn words(&self, n: usize) -> u64 {
        self.powers[n]
    }

    pub fn col_of(&self, n: usize, idx: u64) -> u32 {
        (self.powers[n] - 1 - idx) as u32
    }

    pub fn idx_of(&self, n: usize, col: u32) -> u64 {
        self.powers[n] - 1 - col as u64
    }

    pub fn word_vec(&self, w: &Word) -> SparseVec {
        let n = w.len();
        SparseVec::unit(self.col_of(n, w.index(self.ngens)))
    }

    /// `F^k` in degree `n` (reduced echelon, word columns). `k ≥ 1`.
    pub fn level(&self, k: usize, n: usize) -> &Echelon {
        assert!(k >= 1 && k <= self.nc_degree + 1, "level {k} out of range");
        self.levels[n][k - 1].get_or_init(|| self.compute_level(k, n))
    }

    /// Dimension of the degree-`n` part of `F^k` (`k = 0` is everything).
    pub fn dim(&self, k: usize, n: usize) -> usize {
        if k == 0 {
            self.powers[n] as usize
        } else {
            self.level(k, n).rank()
        }
    }

    /// Word indices of the complement basis of `F^{d+1}` in degree `n`, ascending.
    pub fn complement(&self, n: usize) -> Vec<u64> {
        let top = self.level(self.nc_degree + 1, n);
        let mut v: Vec<u64> = top
            .non_pivots()
            .into_iter()
            .map(|c| self.idx_of(n, c))
            .collect();
        v.sort_unstable();
        v
    }

    /// Product of word-space vectors of degrees `a` and `b`.
    fn product(&self, a: usize, x: &SparseVec, b: usize, y: &SparseVec) -> SparseVec {
        let shift = self.powers[b];
        let mut pairs = Vec::with_capacity(x.len() * y.len());
        for (cx, vx) in x.entries() {
            let ix = self.idx_of(a, *cx);
            for (cy, vy) in y.entries() {
                let iy = self.idx_of(b, *cy);
                pairs.push((self.col_of(a + b, ix * shift + iy), vx * vy));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    fn bracket_word(&self, w: &Word, b: usize, y: &SparseVec) -> SparseVec {
        let a = w.len();
        let wv = self.word_vec(w);
        self.product(a, &wv, b, y).sub(&self.product(b, y, a, &wv))
    }

    /// `L_i(n)`, the span of `i`-fold nested brackets in degree `n`. `i ≥ 2`.
    fn lie(&self, i: usize, n: usize) -> &Echelon {
        self.lie[n][i - 2].get_or_init(|| {
            let mut e = Echelon::new(self.powers[n] as usize);
            if n >= i {
                if i == 2 {
                    for a in 1..=n / 2 {
                        for w in super::word::words_of_length(self.ngens, a) {
                            for v in super::word::words_of_length(self.ngens, n - a) {
                                let yv = self.word_vec(&v);
                                e.insert(&self.bracket_word(&w, n - a, &yv));
                            }
                        }
                    }
                } else {
                    for a in 1..=n - (i - 1) {
                        let inner = self.lie(i - 1, n - a);
                        for w in super::word::words_of_length(self.ngens, a) {
                            for r in inner.rows() {
                                e.insert(&self.bracket_word(&w, n - a, r));
                            }
                        }
                    }
                }
            }
            e.interreduce();
            e
        })
    }

    fn compute_level(&self, k: usize, n: usize) -> Echelon {
        let ncols = self.powers[n] as usize;
        let mut e = Echelon::new(ncols);
        if n < k + 1 {
            return e;
        }
        if k == 1 {
            for idx in 0..self.powers[n] {
                let w = Word::from_index(idx, n, self.ngens);
                let s = w.sorted();
                if s != w {
                    let row = SparseVec::from_sorted_unchecked(vec![
                        (self.col_of(n, idx), Rat::one()),
                        (self.col_of(n, s.index(self.ngens)), -Rat::one()),
                    ]);
                    e.insert(&row);
                }
            }
            e.interreduce();
            return e;
        }
        let prev = self.level(k, n - 1);
        let g = self.ngens as u64;
        for r in prev.rows() {
            for x in 0..g {
                // x · r
                let left = SparseVec::from_pairs(r.entries().iter().map(|(c, v)| {
                    let idx = self.idx_of(n - 1, *c);
                    (self.col_of(n, x * self.powers[n - 1] + idx), v.clone())
                }));
                e.insert(&left);
                // r · x
                let right = SparseVec::from_pairs(r.entries().iter().map(|(c, v)| {
                    let idx = self.idx_of(n - 1, *c);
                    (self.col_of(n, idx * g + x), v.clone())
                }));
                e.insert(&right);
            }
        }
        if k < self.nc_degree + 2 {
            for r in self.lie(k + 1, n).rows() {
                e.insert(r);
            }
        }
        for i in 2..=k {
            let j = k - i + 1;
            for a in i..=n {
                if n - a < j + 1 {
                    break;
                }
                let lie = self.lie(i, a);
                let rest = self.level(j, n - a);
                for l in lie.rows() {
                    for f in rest.rows() {
                        e.insert(&self.product(a, l, n - a, f));
                    }
                }
            }
        }
        e.interreduce();
        e
    }
}

/// `dim Sym^n(Q^g)`: number of commutative monomials of degree `n`.
pub fn sym_dim(g: usize, n: usize) -> usize {
    binomial(n + g - 1, g - 1)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::context::AlgebraContext;

    fn table(g: usize, d: usize, n: usize) -> FiltrationTable {
        let names: Vec<String> = (0..g).map(|i| format!("x{i}")).collect();
        FiltrationTable::build(&AlgebraContext::plain(&names, d, n).unwrap())
    }

    #[test]
    fn degree_two_commutator() {
        let t = table(2, 1, 2);
        assert_eq!(t.dim(1, 2), 1);
        assert_eq!(t.dim(1, 1), 0);
        assert_eq!(t.dim(2, 2), 0);
    }

    #[test]
    fn abelianization_kernel_codimension() {
        let t = table(3, 0, 4);
        for n in 0..=4 {
            assert_eq!(t.words(n) as usize - t.dim(1, n), sym_dim(3, n));
        }
    }

    #[test]
    fn levels_are_nested() {
        let t = table(2, 3, 5);
        for n in 0..=5 {
            for k in 1..=3 {
                let big = t.level(k, n);
                assert!(t.level(k + 1, n).rows().iter().all(|r| big.contains(r)));
            }
        }
    }

    #[test]
    fn complement_is_lexicographically_smallest() {
        let t = table(2, 0, 2);
        // words xx, xy, yx, yy -> abelianization keeps xx, xy, yy
        assert_eq!(t.complement(2), vec![0, 1, 3]);
    }
}
