//! Commutative Laurent polynomials (exponent-vector representation), the
//! target of abelianization and the language of classical chart equations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::write_terms;
use crate::rational::Rat;

pub type Exponents = Vec<i32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CommPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rat>,
}

fn total_degree(e: &Exponents) -> i32 {
    e.iter().sum()
}

impl CommPoly {
    pub fn zero(nvars: usize) -> Self {
        CommPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rat::one());
        p
    }

    pub fn monomial(exps: Exponents, c: Rat) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, e: Exponents, c: Rat) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = o.get() + &c;
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[i32]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    pub fn scale(&self, s: &Rat) -> CommPoly {
        let mut out = CommPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn pow(&self, k: u32) -> CommPoly {
        let mut acc = CommPoly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation. Returns `None` if a negative power meets a zero.
    pub fn eval(&self, point: &[Rat]) -> Option<Rat> {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k < 0 && x.is_zero() {
                    return None;
                }
                t = &t * &x.pow(k);
            }
            acc += &t;
        }
        Some(acc)
    }

    /// Drops all monomials of total degree above `n` (polynomials only).
    pub fn truncate(&self, n: usize) -> CommPoly {
        let mut out = CommPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if total_degree(e) <= n as i32 {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// Partial derivative in variable `i` (Laurent-safe).
    pub fn derivative(&self, i: usize) -> CommPoly {
        let mut out = CommPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] != 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, c * &Rat::from_int(e[i] as i64));
            }
        }
        out
    }

    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> CommDisplay<'a, S> {
        CommDisplay { poly: self, names }
    }

    /// Terms in canonical print order: total degree, then exponent vectors
    /// descending (so `x` precedes `y`).
    fn ordered_terms(&self) -> Vec<(&Exponents, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            total_degree(a.0)
                .cmp(&total_degree(b.0))
                .then_with(|| b.0.cmp(a.0))
        });
        v
    }
}

impl fmt::Debug for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("t{i}")).collect();
        write!(f, "{}", self.display(&names))
    }
}

pub struct CommDisplay<'a, S> {
    poly: &'a CommPoly,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for CommDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.ordered_terms();
        write_terms(
            f,
            terms.iter().map(|(e, c)| (*c, e.iter().all(|&x| x == 0))),
            |f, idx| {
                let mut first = true;
                for (i, &k) in terms[idx].0.iter().enumerate() {
                    if k == 0 {
                        continue;
                    }
                    if !first {
                        write!(f, "*")?;
                    }
                    first = false;
                    let name = self.names.get(i).map(|s| s.as_ref()).unwrap_or("?");
                    if k == 1 {
                        write!(f, "{name}")?;
                    } else {
                        write!(f, "{name}^{k}")?;
                    }
                }
                Ok(())
            },
        )
    }
}

impl<'a> Add<&'a CommPoly> for &'a CommPoly {
    type Output = CommPoly;
    fn add(self, rhs: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a CommPoly> for &'a CommPoly {
    type Output = CommPoly;
    fn sub(self, rhs: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a CommPoly> for &'a CommPoly {
    type Output = CommPoly;
    fn mul(self, rhs: &CommPoly) -> CommPoly {
        let mut out = CommPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &CommPoly {
    type Output = CommPoly;
    fn neg(self) -> CommPoly {
        self.scale(&-Rat::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_arithmetic_and_print() {
        let x = CommPoly::var(2, 0);
        let y = CommPoly::var(2, 1);
        let yinv = CommPoly::monomial(vec![0, -1], Rat::one());
        let p = &(&x * &yinv) - &(&y * &y);
        assert_eq!(p.display(&["x", "y"]).to_string(), "x*y^-1 - y^2");
        assert_eq!(&(&y * &yinv) - &CommPoly::one(2), CommPoly::zero(2));
        assert_eq!(
            p.eval(&[Rat::from_int(2), Rat::from_int(4)]),
            Some(Rat::new(1, 2) - Rat::from_int(16))
        );
        assert_eq!(p.eval(&[Rat::one(), Rat::zero()]), None);
        assert_eq!(
            (&x + &y).display(&["x", "y"]).to_string(),
            "x + y"
        );
    }
}
