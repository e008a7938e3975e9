use std::fmt;

use crate::error::{Error, Result};
use crate::ncalg::{Algebra, NcPoly};
use crate::rational::Rat;

/// A dense matrix with [`NcPoly`] entries, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct NcMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<NcPoly>,
}

impl NcMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        NcMatrix {
            rows,
            cols,
            entries: vec![NcPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = NcPoly::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<NcPoly>>) -> Result<Self> {
        let nr = rows.len();
        let nc = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.iter().any(|r| r.len() != nc) {
            return Err(Error::ShapeMismatch("ragged matrix rows".into()));
        }
        Ok(NcMatrix {
            rows: nr,
            cols: nc,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_rats(rows: usize, cols: usize, values: &[Rat]) -> Self {
        assert_eq!(values.len(), rows * cols);
        NcMatrix {
            rows,
            cols,
            entries: values.iter().map(|v| NcPoly::constant(v.clone())).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &NcPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: NcPoly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn entries(&self) -> &[NcPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Every entry is a constant.
    pub fn is_scalar(&self) -> bool {
        self.entries.iter().all(|e| e.degree().unwrap_or(0) == 0)
    }

    /// Constant entries, row-major; `None` unless scalar.
    pub fn to_rats(&self) -> Option<Vec<Rat>> {
        if !self.is_scalar() {
            return None;
        }
        Some(self.entries.iter().map(|e| e.constant_term()).collect())
    }

    pub fn map(&self, f: impl Fn(&NcPoly) -> NcPoly) -> NcMatrix {
        NcMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &NcMatrix) -> Result<NcMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(format!(
                "cannot add {:?} and {:?}",
                self.shape(),
                other.shape()
            )));
        }
        Ok(NcMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &NcMatrix) -> Result<NcMatrix> {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, s: &Rat) -> NcMatrix {
        self.map(|e| e.scale(s))
    }

    /// Product with words longer than `max_len` dropped.
    pub fn mul_truncated(&self, other: &NcMatrix, max_len: Option<usize>) -> Result<NcMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {:?} by {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let mut out = NcMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = NcPoly::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &a.mul_truncated(b, max_len);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &NcMatrix) -> Result<NcMatrix> {
        self.mul_truncated(other, None)
    }

    /// Product evaluated in the working quotient `alg`.
    pub fn mul_in(&self, other: &NcMatrix, alg: &Algebra) -> Result<NcMatrix> {
        Ok(self
            .mul_truncated(other, Some(alg.adic_degree()))?
            .map(|e| alg.normal_form(e)))
    }

    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> MatrixDisplay<'a, S> {
        MatrixDisplay { m: self, names }
    }
}

impl fmt::Debug for NcMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub struct MatrixDisplay<'a, S> {
    m: &'a NcMatrix,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for MatrixDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.m.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.m.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.m.get(i, j).display(self.names))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| Rat::from_int(x)).collect()
    }

    #[test]
    fn scalar_products() {
        let a = NcMatrix::from_rats(2, 2, &r(&[0, 1, 0, 0]));
        let b = NcMatrix::from_rats(2, 2, &r(&[0, 0, 1, 0]));
        let c = a.mul(&b).unwrap().sub(&b.mul(&a).unwrap()).unwrap();
        assert_eq!(c.to_rats().unwrap(), r(&[1, 0, 0, -1]));
        assert!(a.mul(&NcMatrix::zero(3, 1)).is_err());
    }
}
