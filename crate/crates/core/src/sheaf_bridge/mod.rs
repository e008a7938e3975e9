//! Window quivers `Q_{[p,q]}` of a graded algebra, their θ-vectors from a
//! Hilbert polynomial, and representations built from graded module data.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ncalg::{NcPoly, Word};
use crate::quiver::{
    relation_residuals, Arrow, DimVector, NCRepresentation, NcMatrix, QuiverPresentation, ThetaVector,
};
use crate::rational::Rat;

/// Multiplication tensor `𝔪_a ⊗ 𝔪_b → 𝔪_{a+b}`, indexed `[α][β][γ]`.
pub type Tensor = Vec<Vec<Vec<Rat>>>;

/// Dimensions of `𝔪_k` for `1 ≤ k ≤ max_degree` and multiplication
/// tensors in fixed bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAlgebraData {
    dims: Vec<usize>,
    mul: BTreeMap<(usize, usize), Tensor>,
    /// Basis labels per degree.
    pub basis_names: Vec<Vec<String>>,
    monomials: Option<Vec<Vec<Vec<u32>>>>,
}

fn zero_tensor(a: usize, b: usize, c: usize) -> Tensor {
    vec![vec![vec![Rat::zero(); c]; b]; a]
}

impl GradedAlgebraData {
    /// Data with the given dimensions (index 0 is `𝔪_1`) and zero products.
    pub fn new(dims: Vec<usize>) -> Self {
        let basis_names = dims
            .iter()
            .enumerate()
            .map(|(k, &n)| (0..n).map(|i| format!("e{}_{i}", k + 1)).collect())
            .collect();
        let mut mul = BTreeMap::new();
        let top = dims.len();
        for a in 1..=top {
            for b in 1..=top - a {
                mul.insert((a, b), zero_tensor(dims[a - 1], dims[b - 1], dims[a + b - 1]));
            }
        }
        GradedAlgebraData {
            dims,
            mul,
            basis_names,
            monomials: None,
        }
    }

    /// The polynomial ring in `nvars` variables, monomial bases in
    /// descending lexicographic exponent order.
    pub fn polynomial_ring(nvars: usize, max_degree: usize) -> Self {
        let mut monos: Vec<Vec<Vec<u32>>> = Vec::new();
        for k in 1..=max_degree {
            let ms: Vec<Vec<u32>> = crate::charts::monomials_up_to(nvars, k)
                .into_iter()
                .filter(|e| e.iter().sum::<i32>() as usize == k)
                .map(|e| e.into_iter().map(|x| x as u32).collect())
                .collect();
            monos.push(ms);
        }
        let dims = monos.iter().map(|m| m.len()).collect();
        let mut data = GradedAlgebraData::new(dims);
        for a in 1..=max_degree {
            for b in 1..=max_degree - a {
                let t = data.mul.get_mut(&(a, b)).unwrap();
                for (i, ma) in monos[a - 1].iter().enumerate() {
                    for (j, mb) in monos[b - 1].iter().enumerate() {
                        let prod: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                        let c = monos[a + b - 1].iter().position(|m| *m == prod).unwrap();
                        t[i][j][c] = Rat::one();
                    }
                }
            }
        }
        data.basis_names = monos
            .iter()
            .map(|ms| ms.iter().map(|e| monomial_name(e)).collect())
            .collect();
        data.monomials = Some(monos);
        data
    }

    pub fn max_degree(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self, k: usize) -> usize {
        if k == 0 || k > self.dims.len() {
            0
        } else {
            self.dims[k - 1]
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Exponent vectors of the basis of `𝔪_k`, for polynomial-ring data.
    pub fn monomials(&self, k: usize) -> Option<&[Vec<u32>]> {
        self.monomials.as_ref().map(|m| m[k - 1].as_slice())
    }

    pub fn set_product(&mut self, a: usize, b: usize, tensor: Tensor) -> Result<()> {
        let (da, db, dc) = (self.dim(a), self.dim(b), self.dim(a + b));
        if a == 0 || b == 0 || a + b > self.max_degree() {
            return Err(Error::InconsistentData(format!("no product {a} x {b} in range")));
        }
        if tensor.len() != da
            || tensor.iter().any(|r| r.len() != db || r.iter().any(|c| c.len() != dc))
        {
            return Err(Error::InconsistentData(format!(
                "tensor {a} x {b} must have shape {da} x {db} x {dc}"
            )));
        }
        self.mul.insert((a, b), tensor);
        Ok(())
    }

    pub fn tensor(&self, a: usize, b: usize) -> Option<&Tensor> {
        self.mul.get(&(a, b))
    }

    /// `ϑ(α ⊗ β)` in the basis of `𝔪_{a+b}`.
    pub fn product(&self, a: usize, b: usize, alpha: usize, beta: usize) -> &[Rat] {
        &self.mul[&(a, b)][alpha][beta]
    }

    /// Product of arbitrary vectors `u ∈ 𝔪_a`, `v ∈ 𝔪_b`.
    pub fn multiply(&self, a: usize, u: &[Rat], b: usize, v: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim(a + b)];
        let t = &self.mul[&(a, b)];
        for (i, x) in u.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in v.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let s = x * y;
                for (c, z) in t[i][j].iter().enumerate() {
                    out[c] += &(&s * z);
                }
            }
        }
        out
    }

    /// `(αβ)γ = α(βγ)` on basis triples within range.
    pub fn check_associativity(&self) -> Result<()> {
        let top = self.max_degree();
        for a in 1..=top {
            for b in 1..=top {
                for c in 1..=top {
                    if a + b + c > top {
                        continue;
                    }
                    for i in 0..self.dim(a) {
                        for j in 0..self.dim(b) {
                            let ab = self.product(a, b, i, j).to_vec();
                            for k in 0..self.dim(c) {
                                let left = self.multiply(a + b, &ab, c, &unit(self.dim(c), k));
                                let bc = self.product(b, c, j, k).to_vec();
                                let right = self.multiply(a, &unit(self.dim(a), i), b + c, &bc);
                                if left != right {
                                    return Err(Error::InconsistentData(format!(
                                        "products are not associative on degrees ({a}, {b}, {c})"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

fn monomial_name(e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { format!("x{i}") } else { format!("x{i}^{k}") })
        .collect();
    parts.join("*")
}

/// Vertex name for window index `i`.
pub fn vertex_name(i: i64) -> String {
    if i < 0 {
        format!("vm{}", -i)
    } else {
        format!("v{i}")
    }
}

/// Arrow name for basis element `b` of `𝔪_{j-i}` from `i` to `j`.
pub fn arrow_name(i: i64, j: i64, b: usize) -> String {
    format!("a{b}_{}_{}", vertex_name(i), vertex_name(j))
}

/// The window quiver: vertices `p..=q`, `dim 𝔪_{j-i}` arrows `i → j`, and
/// one relation `Σ_γ ϑ(α⊗β)_γ · γ - β*α` per composable pair of arrows.
pub fn build_qpq(alg: &GradedAlgebraData, p: i64, q: i64) -> Result<QuiverPresentation> {
    if q <= p {
        return Err(Error::InvalidQuiver(format!("window needs q > p, got [{p}, {q}]")));
    }
    let span = (q - p) as usize;
    if span > alg.max_degree() {
        return Err(Error::InconsistentData(format!(
            "window of span {span} needs degrees up to {span}, data stops at {}",
            alg.max_degree()
        )));
    }
    alg.check_associativity()?;
    let vertices: Vec<String> = (p..=q).map(vertex_name).collect();
    let mut arrows = Vec::new();
    let mut index = BTreeMap::new();
    for i in p..=q {
        for j in i + 1..=q {
            for b in 0..alg.dim((j - i) as usize) {
                index.insert((i, j, b), arrows.len());
                arrows.push(Arrow {
                    name: arrow_name(i, j, b),
                    tail: (i - p) as usize,
                    head: (j - p) as usize,
                });
            }
        }
    }
    let mut quiver = QuiverPresentation::new(vertices, arrows)?;
    for i in p..=q {
        for j in i + 1..=q {
            for k in j + 1..=q {
                let (a, b) = ((j - i) as usize, (k - j) as usize);
                for alpha in 0..alg.dim(a) {
                    for beta in 0..alg.dim(b) {
                        let mut rel = NcPoly::zero();
                        for (c, coef) in alg.product(a, b, alpha, beta).iter().enumerate() {
                            if !coef.is_zero() {
                                rel.add_term(Word::letter(index[&(i, k, c)]), coef.clone());
                            }
                        }
                        rel.add_term(
                            Word::from_letters(&[index[&(j, k, beta)], index[&(i, j, alpha)]]),
                            -Rat::one(),
                        );
                        quiver.add_relation(rel)?;
                    }
                }
            }
        }
    }
    Ok(quiver)
}

/// A Hilbert polynomial with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertPolynomial {
    pub coefficients: Vec<Rat>,
}

impl HilbertPolynomial {
    pub fn new(coefficients: Vec<Rat>) -> Self {
        HilbertPolynomial { coefficients }
    }

    pub fn constant(n: i64) -> Self {
        HilbertPolynomial::new(vec![Rat::from_int(n)])
    }

    pub fn eval(&self, t: i64) -> Rat {
        let t = Rat::from_int(t);
        self.coefficients
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| &(&acc * &t) + c)
    }
}

/// `α_{[p,q]} = (α(p), …, α(q))` and `θ = (-α(q), 0, …, 0, α(p))`.
pub fn theta_from_alpha(alpha: &HilbertPolynomial, p: i64, q: i64) -> Result<(ThetaVector, DimVector)> {
    if q <= p {
        return Err(Error::InvalidQuiver(format!("window needs q > p, got [{p}, {q}]")));
    }
    let mut dims = Vec::new();
    for i in p..=q {
        let v = alpha.eval(i);
        if !v.is_integer() || v.is_negative() {
            return Err(Error::InconsistentData(format!("α({i}) = {v} is not a nonnegative integer")));
        }
        let n: u64 = v
            .to_parts()
            .0
            .try_into()
            .map_err(|_| Error::InconsistentData(format!("α({i}) = {v} is too large")))?;
        dims.push(n);
    }
    let n = dims.len();
    let mut theta = vec![Rat::zero(); n];
    theta[0] = -alpha.eval(q);
    theta[n - 1] = alpha.eval(p);
    Ok((ThetaVector(theta), DimVector(dims)))
}

/// Graded pieces `M_i`, `i ∈ [p, q]`, and the action of basis elements of
/// `𝔪_k` as matrices `M_i → M_{i+k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModuleData {
    pub p: i64,
    pub q: i64,
    dims: Vec<usize>,
    /// `(k, i)` to one `dim M_{i+k} × dim M_i` matrix (row-major) per basis element.
    act: BTreeMap<(usize, i64), Vec<Vec<Rat>>>,
}

impl GradedModuleData {
    /// Module with the given dimensions and zero action.
    pub fn new(p: i64, q: i64, dims: Vec<usize>, alg: &GradedAlgebraData) -> Result<Self> {
        if q < p || dims.len() != (q - p + 1) as usize {
            return Err(Error::InconsistentData(format!(
                "{} dimensions for the range [{p}, {q}]",
                dims.len()
            )));
        }
        let mut act = BTreeMap::new();
        for i in p..=q {
            for j in i + 1..=q {
                let k = (j - i) as usize;
                let (r, c) = (dims[(j - p) as usize], dims[(i - p) as usize]);
                act.insert((k, i), vec![vec![Rat::zero(); r * c]; alg.dim(k)]);
            }
        }
        Ok(GradedModuleData { p, q, dims, act })
    }

    pub fn zero(p: i64, q: i64, alg: &GradedAlgebraData) -> Result<Self> {
        Self::new(p, q, vec![0; (q - p + 1).max(0) as usize], alg)
    }

    pub fn dim(&self, i: i64) -> usize {
        self.dims[(i - self.p) as usize]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn set_action(&mut self, k: usize, i: i64, basis: usize, matrix: Vec<Rat>) -> Result<()> {
        let want = self.dim(i + k as i64) * self.dim(i);
        let slot = self
            .act
            .get_mut(&(k, i))
            .and_then(|v| v.get_mut(basis))
            .ok_or_else(|| Error::InconsistentData(format!("no action slot for degree {k} at {i}")))?;
        if matrix.len() != want {
            return Err(Error::InconsistentData(format!(
                "action matrix for degree {k} at {i} needs {want} entries"
            )));
        }
        *slot = matrix;
        Ok(())
    }

    pub fn action(&self, k: usize, i: i64, basis: usize) -> &[Rat] {
        &self.act[&(k, i)][basis]
    }

    /// One-dimensional pieces with monomials acting by evaluation at `point`.
    pub fn point_module(alg: &GradedAlgebraData, point: &[Rat], p: i64, q: i64) -> Result<Self> {
        let mut m = Self::new(p, q, vec![1; (q - p + 1) as usize], alg)?;
        for i in p..=q {
            for j in i + 1..=q {
                let k = (j - i) as usize;
                let monos = alg
                    .monomials(k)
                    .ok_or_else(|| Error::InconsistentData("point modules need polynomial-ring data".into()))?;
                for (b, e) in monos.iter().enumerate() {
                    let v = e
                        .iter()
                        .zip(point)
                        .fold(Rat::one(), |acc, (&x, c)| &acc * &c.pow(x as i32));
                    m.set_action(k, i, b, vec![v])?;
                }
            }
        }
        Ok(m)
    }

    /// Graded pieces of the polynomial ring itself, `M_i = S_i`, with
    /// multiplication as action (`p ≥ 0`).
    pub fn structure_sheaf(alg: &GradedAlgebraData, nvars: usize, p: i64, q: i64) -> Result<Self> {
        if p < 0 {
            return Err(Error::InconsistentData("structure module needs p ≥ 0".into()));
        }
        let have = alg.monomials(1).map(|m| m.len());
        if have != Some(nvars) {
            return Err(Error::InconsistentData(format!(
                "the algebra is not a polynomial ring on {nvars} variables"
            )));
        }
        let basis = |i: i64| -> Vec<Vec<u32>> {
            crate::charts::monomials_up_to(nvars, i as usize)
                .into_iter()
                .filter(|e| e.iter().sum::<i32>() as i64 == i)
                .map(|e| e.into_iter().map(|x| x as u32).collect())
                .collect()
        };
        let dims = (p..=q).map(|i| basis(i).len()).collect();
        let mut m = Self::new(p, q, dims, alg)?;
        for i in p..=q {
            let src = basis(i);
            for j in i + 1..=q {
                let k = (j - i) as usize;
                let dst = basis(j);
                let monos = alg
                    .monomials(k)
                    .ok_or_else(|| Error::InconsistentData("structure modules need polynomial-ring data".into()))?;
                for (b, e) in monos.iter().enumerate() {
                    let mut mat = vec![Rat::zero(); dst.len() * src.len()];
                    for (c, s) in src.iter().enumerate() {
                        let prod: Vec<u32> = s.iter().zip(e).map(|(x, y)| x + y).collect();
                        let r = dst.iter().position(|d| *d == prod).unwrap();
                        mat[r * src.len() + c] = Rat::one();
                    }
                    m.set_action(k, i, b, mat)?;
                }
            }
        }
        Ok(m)
    }

    /// `act(β) ∘ act(α) = act(ϑ(α ⊗ β))` on the range.
    pub fn check_compatibility(&self, alg: &GradedAlgebraData) -> Result<()> {
        for i in self.p..=self.q {
            for j in i + 1..=self.q {
                for k in j + 1..=self.q {
                    let (a, b) = ((j - i) as usize, (k - j) as usize);
                    let (di, dj, dk) = (self.dim(i), self.dim(j), self.dim(k));
                    for alpha in 0..alg.dim(a) {
                        for beta in 0..alg.dim(b) {
                            let ma = self.action(a, i, alpha);
                            let mb = self.action(b, j, beta);
                            let mut comp = vec![Rat::zero(); dk * di];
                            for r in 0..dk {
                                for c in 0..di {
                                    for m in 0..dj {
                                        comp[r * di + c] += &(&mb[r * dj + m] * &ma[m * di + c]);
                                    }
                                }
                            }
                            let mut via = vec![Rat::zero(); dk * di];
                            for (g, coef) in alg.product(a, b, alpha, beta).iter().enumerate() {
                                if coef.is_zero() {
                                    continue;
                                }
                                for (slot, x) in via.iter_mut().zip(self.action(a + b, i, g)) {
                                    *slot += &(coef * x);
                                }
                            }
                            if comp != via {
                                return Err(Error::InconsistentData(format!(
                                    "action of degrees {a} then {b} from {i} disagrees with the product"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Blockwise direct sum.
    pub fn direct_sum(&self, other: &GradedModuleData) -> Result<GradedModuleData> {
        if (self.p, self.q) != (other.p, other.q) {
            return Err(Error::InconsistentData("direct sum needs equal ranges".into()));
        }
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let mut act = BTreeMap::new();
        for (&(k, i), mats) in &self.act {
            let j = i + k as i64;
            let (r1, c1) = (self.dim(j), self.dim(i));
            let (r2, c2) = (other.dim(j), other.dim(i));
            let (r, c) = (r1 + r2, c1 + c2);
            let blocks = mats
                .iter()
                .zip(&other.act[&(k, i)])
                .map(|(m1, m2)| {
                    let mut m = vec![Rat::zero(); r * c];
                    for x in 0..r1 {
                        for y in 0..c1 {
                            m[x * c + y] = m1[x * c1 + y].clone();
                        }
                    }
                    for x in 0..r2 {
                        for y in 0..c2 {
                            m[(r1 + x) * c + c1 + y] = m2[x * c2 + y].clone();
                        }
                    }
                    m
                })
                .collect();
            act.insert((k, i), blocks);
        }
        Ok(GradedModuleData {
            p: self.p,
            q: self.q,
            dims,
            act,
        })
    }
}

/// The representation of `Q_{[p,q]}` with `W_i = M_i` and arrows acting by
/// the corresponding basis elements. Relations are checked to vanish.
pub fn gamma_module(
    module: &GradedModuleData,
    alg: &GradedAlgebraData,
    quiver: &QuiverPresentation,
    p: i64,
    q: i64,
) -> Result<NCRepresentation> {
    if module.p > p || module.q < q {
        return Err(Error::InconsistentData(format!(
            "module range [{}, {}] does not cover [{p}, {q}]",
            module.p, module.q
        )));
    }
    module.check_compatibility(alg)?;
    let ranks: Vec<usize> = (p..=q).map(|i| module.dim(i)).collect();
    let mut mats = Vec::new();
    for a in quiver.arrows() {
        let (i, j) = (p + a.tail as i64, p + a.head as i64);
        let k = (j - i) as usize;
        let b = (0..alg.dim(k))
            .find(|&b| arrow_name(i, j, b) == a.name)
            .ok_or_else(|| Error::InvalidQuiver(format!("arrow `{}` is not a window arrow", a.name)))?;
        mats.push(NcMatrix::from_rats(module.dim(j), module.dim(i), module.action(k, i, b)));
    }
    let rep = NCRepresentation::new(quiver, ranks, mats)?;
    for r in relation_residuals(quiver, &rep)? {
        if !r.is_zero() {
            return Err(Error::InconsistentData("module action violates a window relation".into()));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_line_window_of_span_two() {
        let alg = GradedAlgebraData::polynomial_ring(2, 2);
        let q = build_qpq(&alg, 0, 2).unwrap();
        assert_eq!(q.arrows().len(), 2 + 2 + 3);
        assert_eq!(q.relations().len(), 4);
    }

    #[test]
    fn adjacent_window_has_no_relations() {
        let alg = GradedAlgebraData::polynomial_ring(3, 1);
        let q = build_qpq(&alg, 4, 5).unwrap();
        assert_eq!(q.arrows().len(), 3);
        assert!(q.relations().is_empty());
    }

    #[test]
    fn theta_of_linear_polynomial() {
        let h = HilbertPolynomial::new(vec![Rat::one(), Rat::one()]);
        let (theta, dims) = theta_from_alpha(&h, 1, 2).unwrap();
        assert_eq!(dims.0, vec![2, 3]);
        assert_eq!(theta, ThetaVector::from_ints(&[-3, 2]));
    }

    #[test]
    fn structure_module_of_the_line() {
        let alg = GradedAlgebraData::polynomial_ring(2, 1);
        let q = build_qpq(&alg, 1, 2).unwrap();
        let m = GradedModuleData::structure_sheaf(&alg, 2, 1, 2).unwrap();
        let rep = gamma_module(&m, &alg, &q, 1, 2).unwrap();
        assert_eq!(rep.dim_vector().0, vec![2, 3]);
    }
}
