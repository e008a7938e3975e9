use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::ncalg::filtration::{binomial, sym_dim};
use crate::ncalg::{Algebra, CommPoly, NcPoly, Word};
use crate::rational::Rat;

/// An element `(f, ω)` of `𝒪 ⊕ Ω²`, with `ω = Σ_{i<j} ω_ij dx_i ∧ dx_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstOrderElement {
    pub function: CommPoly,
    /// One coefficient per pair `i < j`, in lexicographic pair order.
    pub form: Vec<CommPoly>,
}

impl FirstOrderElement {
    pub fn is_zero(&self) -> bool {
        self.function.is_zero() && self.form.iter().all(|w| w.is_zero())
    }
}

/// The graded algebra `𝒪 ⊕ Ω²` on `nvars` variables with product
/// `(a, α)(b, β) = (ab, aβ + αb + da ∧ db)`, truncated above `max_degree`.
/// Two-forms carry weight two.
#[derive(Debug, Clone)]
pub struct FirstOrderModel {
    nvars: usize,
    max_degree: usize,
    pairs: Vec<(usize, usize)>,
}

impl FirstOrderModel {
    pub fn new(nvars: usize, max_degree: usize) -> Self {
        let mut pairs = Vec::new();
        for i in 0..nvars {
            for j in i + 1..nvars {
                pairs.push((i, j));
            }
        }
        FirstOrderModel {
            nvars,
            max_degree,
            pairs,
        }
    }

    pub fn zero(&self) -> FirstOrderElement {
        FirstOrderElement {
            function: CommPoly::zero(self.nvars),
            form: vec![CommPoly::zero(self.nvars); self.pairs.len()],
        }
    }

    pub fn one(&self) -> FirstOrderElement {
        let mut e = self.zero();
        e.function = CommPoly::one(self.nvars);
        e
    }

    pub fn generator(&self, i: usize) -> FirstOrderElement {
        let mut e = self.zero();
        e.function = CommPoly::var(self.nvars, i);
        e
    }

    fn truncate(&self, mut e: FirstOrderElement) -> FirstOrderElement {
        e.function = e.function.truncate(self.max_degree);
        for w in e.form.iter_mut() {
            *w = if self.max_degree >= 2 {
                w.truncate(self.max_degree - 2)
            } else {
                CommPoly::zero(self.nvars)
            };
        }
        e
    }

    pub fn add(&self, a: &FirstOrderElement, b: &FirstOrderElement) -> FirstOrderElement {
        FirstOrderElement {
            function: &a.function + &b.function,
            form: a.form.iter().zip(&b.form).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn scale(&self, a: &FirstOrderElement, s: &Rat) -> FirstOrderElement {
        FirstOrderElement {
            function: a.function.scale(s),
            form: a.form.iter().map(|x| x.scale(s)).collect(),
        }
    }

    pub fn mul(&self, a: &FirstOrderElement, b: &FirstOrderElement) -> FirstOrderElement {
        let function = &a.function * &b.function;
        let form = self
            .pairs
            .iter()
            .enumerate()
            .map(|(p, &(i, j))| {
                let wedge = &(&a.function.derivative(i) * &b.function.derivative(j))
                    - &(&a.function.derivative(j) * &b.function.derivative(i));
                &(&(&a.function * &b.form[p]) + &(&a.form[p] * &b.function)) + &wedge
            })
            .collect();
        self.truncate(FirstOrderElement { function, form })
    }

    /// Monomial basis: functions of degree `≤ N`, then `m · dx_i ∧ dx_j`
    /// with `deg m ≤ N - 2`.
    pub fn basis(&self) -> Vec<(usize, FirstOrderElement)> {
        let mut out = Vec::new();
        for e in super::monomials_up_to(self.nvars, self.max_degree) {
            let d = e.iter().sum::<i32>() as usize;
            let mut x = self.zero();
            x.function = CommPoly::monomial(e, Rat::one());
            out.push((d, x));
        }
        if self.max_degree >= 2 {
            for p in 0..self.pairs.len() {
                for e in super::monomials_up_to(self.nvars, self.max_degree - 2) {
                    let d = e.iter().sum::<i32>() as usize + 2;
                    let mut x = self.zero();
                    x.form[p] = CommPoly::monomial(e, Rat::one());
                    out.push((d, x));
                }
            }
        }
        out
    }

    /// `Sym^n + C(g, 2) · Sym^{n-2}`.
    pub fn degree_dims(&self) -> Vec<usize> {
        (0..=self.max_degree)
            .map(|n| {
                sym_dim(self.nvars, n)
                    + if n >= 2 {
                        binomial(self.nvars, 2) * sym_dim(self.nvars, n - 2)
                    } else {
                        0
                    }
            })
            .collect()
    }

    /// `(xy)z = x(yz)` on all basis triples of total degree `≤ N`.
    pub fn check_associativity(&self) -> bool {
        let basis = self.basis();
        for (da, a) in &basis {
            for (db, b) in &basis {
                if da + db > self.max_degree {
                    continue;
                }
                let ab = self.mul(a, b);
                for (dc, c) in &basis {
                    if da + db + dc > self.max_degree {
                        continue;
                    }
                    if self.mul(&ab, c) != self.mul(a, &self.mul(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Image of a word under `x_i ↦ (x_i, 0)`.
    pub fn image_of_word(&self, w: &Word) -> FirstOrderElement {
        w.letters().fold(self.one(), |acc, l| self.mul(&acc, &self.generator(l)))
    }

    pub fn image(&self, p: &NcPoly) -> FirstOrderElement {
        let mut acc = self.zero();
        for (w, c) in p.terms() {
            acc = self.add(&acc, &self.scale(&self.image_of_word(w), c));
        }
        acc
    }
}

/// Comparison of the NC-degree-one quotient with the first-order model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstOrderReport {
    pub algebra_dims: Vec<usize>,
    pub model_dims: Vec<usize>,
    /// Every element of `F^2` maps to zero.
    pub kills_f2: bool,
    /// The induced map is bijective in every degree.
    pub isomorphism: bool,
    pub associative: bool,
}

impl FirstOrderReport {
    pub fn ok(&self) -> bool {
        self.kills_f2 && self.isomorphism && self.associative && self.algebra_dims == self.model_dims
    }
}

fn element_vector(e: &FirstOrderElement, index: &mut HashMap<(usize, Vec<i32>), u32>) -> SparseVec {
    let mut pairs = BTreeMap::new();
    let mut push = |slot: usize, p: &CommPoly, index: &mut HashMap<(usize, Vec<i32>), u32>| {
        for (ex, c) in p.terms() {
            let n = index.len() as u32;
            let col = *index.entry((slot, ex.clone())).or_insert(n);
            pairs.insert(col, c.clone());
        }
    };
    push(0, &e.function, index);
    for (p, w) in e.form.iter().enumerate() {
        push(p + 1, w, index);
    }
    SparseVec::from_pairs(pairs)
}

/// Maps the NC-degree-one working quotient of `alg` to the model and checks
/// that `F^2` is killed and that each degree is mapped isomorphically.
pub fn first_order_thickening(alg: &Algebra) -> Result<FirstOrderReport> {
    if alg.nc_degree() != 1 {
        return Err(Error::InvalidContext(format!(
            "first-order comparison needs NC degree 1, got {}",
            alg.nc_degree()
        )));
    }
    let g = alg.ngens();
    let model = FirstOrderModel::new(g, alg.adic_degree());
    let table = alg.table();
    let mut kills_f2 = true;
    let mut isomorphism = true;
    let model_dims = model.degree_dims();
    let mut index = HashMap::new();
    let ncols = model.basis().len();
    for n in 0..=alg.adic_degree() {
        for row in table.level(2, n).rows() {
            let p = NcPoly::from_terms(
                row.entries()
                    .iter()
                    .map(|(col, c)| (Word::from_index(table.idx_of(n, *col), n, g), c.clone())),
            );
            if !model.image(&p).is_zero() {
                kills_f2 = false;
            }
        }
        let comp = table.complement(n);
        let mut ech = Echelon::new(ncols);
        for idx in &comp {
            let im = model.image_of_word(&Word::from_index(*idx, n, g));
            ech.insert(&element_vector(&im, &mut index));
        }
        if ech.rank() != comp.len() || comp.len() != model_dims[n] {
            isomorphism = false;
        }
    }
    Ok(FirstOrderReport {
        algebra_dims: alg.degree_dims(),
        model_dims,
        kills_f2,
        isomorphism,
        associative: model.check_associativity(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::AlgebraContext;

    #[test]
    fn bracket_maps_to_twice_the_form() {
        let m = FirstOrderModel::new(2, 3);
        let x = NcPoly::generator(0);
        let y = NcPoly::generator(1);
        let im = m.image(&x.commutator(&y));
        assert!(im.function.is_zero());
        assert_eq!(im.form[0], CommPoly::constant(2, Rat::from_int(2)));
    }

    #[test]
    fn two_generators_degree_four() {
        let a = Algebra::new(AlgebraContext::plain(&["x", "y"], 1, 4).unwrap());
        let r = first_order_thickening(&a).unwrap();
        assert_eq!(r.model_dims, vec![1, 2, 4, 6, 8]);
        assert!(r.ok(), "{r:?}");
    }
}
