use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::word::Word;
use crate::rational::Rat;

/// An element of the free associative algebra with rational coefficients.
///
/// Terms are kept in the canonical (length, lexicographic) word order with
/// no zero coefficients. Untruncated; see [`crate::ncalg::Algebra`] for the
/// truncated working quotient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Rat>,
}

impl NcPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn generator(g: usize) -> Self {
        Self::term(Word::letter(g), Rat::one())
    }

    pub fn term(w: Word, c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Rat)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, w: &Word) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coefficient(&Word::empty())
    }

    /// Largest word length, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|w| w.len())
    }

    /// Smallest word length, `None` for zero.
    pub fn low_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(|w| w.len())
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.terms.keys().filter_map(|w| w.max_letter()).max()
    }

    pub fn uses_generator(&self, g: usize) -> bool {
        self.terms.keys().any(|w| w.letters().any(|l| l == g))
    }

    pub fn scale(&self, s: &Rat) -> NcPoly {
        if s.is_zero() {
            return NcPoly::zero();
        }
        NcPoly {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect(),
        }
    }

    /// Drops all words longer than `n`.
    pub fn truncate(&self, n: usize) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() <= n)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Homogeneous component of word length `n`.
    pub fn component(&self, n: usize) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == n)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn mul_truncated(&self, other: &NcPoly, max_len: Option<usize>) -> NcPoly {
        let mut out = NcPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if let Some(m) = max_len {
                    if u.len() + v.len() > m {
                        continue;
                    }
                }
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    pub fn commutator(&self, other: &NcPoly) -> NcPoly {
        &(self * other) - &(other * self)
    }

    pub fn pow(&self, e: usize) -> NcPoly {
        let mut acc = NcPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Replaces generator `i` by `images[i]` in every word (exact, untruncated).
    pub fn substitute(&self, images: &[NcPoly]) -> NcPoly {
        self.substitute_truncated(images, None)
    }

    pub fn substitute_truncated(&self, images: &[NcPoly], max_len: Option<usize>) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            let mut acc = NcPoly::constant(c.clone());
            for l in w.letters() {
                acc = acc.mul_truncated(&images[l], max_len);
                if acc.is_zero() {
                    break;
                }
            }
            out = &out + &acc;
        }
        out
    }

    /// Renumbers generators through `map` (old index -> new index).
    pub fn relabel(&self, map: &[usize]) -> NcPoly {
        NcPoly::from_terms(self.terms.iter().map(|(w, c)| {
            let letters: Vec<usize> = w.letters().map(|l| map[l]).collect();
            (Word::from_letters(&letters), c.clone())
        }))
    }

    /// Canonical text form using the given generator names.
    pub fn display<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> PolyDisplay<'a, S> {
        PolyDisplay { poly: self, names }
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..=self.max_generator().unwrap_or(0))
            .map(|i| format!("g{i}"))
            .collect();
        write!(f, "{}", self.display(&names))
    }
}

pub struct PolyDisplay<'a, S> {
    poly: &'a NcPoly,
    names: &'a [S],
}

/// Writes `coef*word` terms joined by ` + ` / ` - `; `0` for the zero element.
pub(crate) fn write_terms<'t, F>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'t Rat, bool)>,
    mut write_mono: F,
) -> fmt::Result
where
    F: FnMut(&mut fmt::Formatter<'_>, usize) -> fmt::Result,
{
    let mut first = true;
    for (idx, (c, is_unit)) in terms.enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        if is_unit {
            write!(f, "{abs}")?;
        } else {
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write_mono(f, idx)?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl<S: AsRef<str>> fmt::Display for PolyDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<&Word> = self.poly.terms.keys().collect();
        write_terms(
            f,
            self.poly.terms.iter().map(|(w, c)| (c, w.is_empty())),
            |f, idx| {
                for (k, l) in words[idx].letters().enumerate() {
                    if k > 0 {
                        write!(f, "*")?;
                    }
                    match self.names.get(l) {
                        Some(n) => write!(f, "{}", n.as_ref())?,
                        None => write!(f, "?{l}")?,
                    }
                }
                Ok(())
            },
        )
    }
}

impl<'a> Add<&'a NcPoly> for &'a NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a NcPoly> for &'a NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a NcPoly> for &'a NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        self.mul_truncated(rhs, None)
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        self.scale(&-Rat::one())
    }
}

impl Add for NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: NcPoly) -> NcPoly {
        &self + &rhs
    }
}

impl Sub for NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: NcPoly) -> NcPoly {
        &self - &rhs
    }
}

impl Mul for NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: NcPoly) -> NcPoly {
        &self * &rhs
    }
}
