use super::comm::CommPoly;
use super::poly::NcPoly;
use super::word::Word;
use crate::error::{Error, Result};

/// Default bound on the number of words in a single degree table.
pub const DEFAULT_WORD_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    /// Set for an adjoined formal inverse: index of the generator it inverts.
    pub inverse_of: Option<usize>,
}

impl Generator {
    pub fn plain(name: impl Into<String>) -> Self {
        Generator {
            name: name.into(),
            inverse_of: None,
        }
    }
}

/// Printed name of the formal inverse of `name`.
pub fn inverse_name(name: &str) -> String {
    format!("{name}^-1")
}

/// An ordered generator alphabet, possibly with adjoined formal inverses.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Generators {
    list: Vec<Generator>,
}

impl Generators {
    pub fn new(list: Vec<Generator>) -> Result<Self> {
        for (i, g) in list.iter().enumerate() {
            if g.name.is_empty() {
                return Err(Error::InvalidContext("empty generator name".into()));
            }
            if list[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::InvalidContext(format!(
                    "duplicate generator `{}`",
                    g.name
                )));
            }
            if let Some(j) = g.inverse_of {
                if j >= list.len() || list[j].inverse_of.is_some() {
                    return Err(Error::InvalidContext(format!(
                        "`{}` inverts an invalid generator",
                        g.name
                    )));
                }
            }
        }
        if list.len() > u8::MAX as usize {
            return Err(Error::InvalidContext("too many generators".into()));
        }
        Ok(Generators { list })
    }

    pub fn plain<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Self::new(names.iter().map(|n| Generator::plain(n.as_ref())).collect())
    }

    /// `names`, followed by formal inverses of the names listed in `invertible`.
    pub fn with_inverses<S: AsRef<str>, T: AsRef<str>>(names: &[S], invertible: &[T]) -> Result<Self> {
        let mut list: Vec<Generator> = names.iter().map(|n| Generator::plain(n.as_ref())).collect();
        for inv in invertible {
            let Some(j) = names.iter().position(|n| n.as_ref() == inv.as_ref()) else {
                return Err(Error::InvalidContext(format!(
                    "invertible `{}` is not a generator",
                    inv.as_ref()
                )));
            };
            list.push(Generator {
                name: inverse_name(inv.as_ref()),
                inverse_of: Some(j),
            });
        }
        Self::new(list)
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn get(&self, i: usize) -> &Generator {
        &self.list[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.list.iter()
    }

    pub fn names(&self) -> Vec<String> {
        self.list.iter().map(|g| g.name.clone()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.list.iter().position(|g| g.name == name)
    }

    /// Index of the formal inverse of generator `i`, if adjoined.
    pub fn inverse_index(&self, i: usize) -> Option<usize> {
        self.list.iter().position(|g| g.inverse_of == Some(i))
    }

    /// Indices of generators that are not formal inverses: the commutative
    /// variables after abelianization.
    pub fn base_indices(&self) -> Vec<usize> {
        (0..self.list.len())
            .filter(|&i| self.list[i].inverse_of.is_none())
            .collect()
    }

    pub fn base_names(&self) -> Vec<String> {
        self.base_indices()
            .into_iter()
            .map(|i| self.list[i].name.clone())
            .collect()
    }

    /// (commutative variable, exponent) contributed by one letter.
    fn letter_exponent(&self, l: usize) -> (usize, i32) {
        let base = self.base_indices();
        match self.list[l].inverse_of {
            Some(j) => (base.iter().position(|&b| b == j).unwrap(), -1),
            None => (base.iter().position(|&b| b == l).unwrap(), 1),
        }
    }

    /// Image in the commutative Laurent ring on the base generators;
    /// a formal inverse becomes a negative exponent.
    pub fn abelianize(&self, p: &NcPoly) -> CommPoly {
        let nvars = self.base_indices().len();
        let mut out = CommPoly::zero(nvars);
        for (w, c) in p.terms() {
            let mut e = vec![0i32; nvars];
            for l in w.letters() {
                let (v, k) = self.letter_exponent(l);
                e[v] += k;
            }
            out.add_term(e, c.clone());
        }
        out
    }

    /// Ordered lift of a commutative Laurent polynomial: each monomial
    /// becomes the word listing variables in base order, negative powers
    /// via the adjoined inverse.
    pub fn lift(&self, p: &CommPoly) -> Result<NcPoly> {
        let base = self.base_indices();
        let mut out = NcPoly::zero();
        for (e, c) in p.terms() {
            let mut letters = Vec::new();
            for (v, &k) in e.iter().enumerate() {
                let g = base[v];
                if k >= 0 {
                    letters.extend(std::iter::repeat_n(g, k as usize));
                } else {
                    let inv = self.inverse_index(g).ok_or_else(|| {
                        Error::ContextMismatch(format!(
                            "negative power of `{}` without an adjoined inverse",
                            self.list[g].name
                        ))
                    })?;
                    letters.extend(std::iter::repeat_n(inv, (-k) as usize));
                }
            }
            out.add_term(Word::from_letters(&letters), c.clone());
        }
        Ok(out)
    }

    pub fn check(&self, p: &NcPoly) -> Result<()> {
        match p.max_generator() {
            Some(m) if m >= self.list.len() => Err(Error::ContextMismatch(format!(
                "generator index {m} outside an alphabet of {}",
                self.list.len()
            ))),
            _ => Ok(()),
        }
    }
}

/// Generators plus the two truncation parameters: NC-filtration degree `d`
/// (work modulo `F^{d+1}`) and adic degree `N` (words longer than `N` vanish).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraContext {
    generators: Generators,
    nc_degree: usize,
    adic_degree: usize,
    word_cap: u64,
}

impl AlgebraContext {
    pub fn new(generators: Generators, nc_degree: usize, adic_degree: usize) -> Result<Self> {
        Self::with_cap(generators, nc_degree, adic_degree, DEFAULT_WORD_CAP)
    }

    pub fn with_cap(
        generators: Generators,
        nc_degree: usize,
        adic_degree: usize,
        word_cap: u64,
    ) -> Result<Self> {
        let g = generators.len() as u64;
        let words = g.checked_pow(adic_degree as u32).unwrap_or(u64::MAX);
        if words > word_cap {
            return Err(Error::ResourceCap {
                words,
                cap: word_cap,
            });
        }
        Ok(AlgebraContext {
            generators,
            nc_degree,
            adic_degree,
            word_cap,
        })
    }

    pub fn plain<S: AsRef<str>>(names: &[S], nc_degree: usize, adic_degree: usize) -> Result<Self> {
        Self::new(Generators::plain(names)?, nc_degree, adic_degree)
    }

    pub fn generators(&self) -> &Generators {
        &self.generators
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.names()
    }

    pub fn nc_degree(&self) -> usize {
        self.nc_degree
    }

    pub fn adic_degree(&self) -> usize {
        self.adic_degree
    }

    pub fn word_cap(&self) -> u64 {
        self.word_cap
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rat;

    #[test]
    fn rejects_duplicates_and_caps() {
        assert!(Generators::plain(&["x", "x"]).is_err());
        assert!(matches!(
            AlgebraContext::with_cap(Generators::plain(&["x", "y"]).unwrap(), 1, 20, 1000),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn abelianize_examples() {
        let gens = Generators::plain(&["x", "y"]).unwrap();
        let x = NcPoly::generator(0);
        let y = NcPoly::generator(1);
        assert!(gens.abelianize(&x.commutator(&y)).is_zero());
        let xyx = &(&x * &y) * &x;
        assert_eq!(
            gens.abelianize(&xyx),
            CommPoly::monomial(vec![2, 1], Rat::one())
        );
    }

    #[test]
    fn inverses_abelianize_to_negative_powers() {
        let gens = Generators::with_inverses(&["b1", "b3"], &["b3"]).unwrap();
        assert_eq!(gens.get(2).name, "b3^-1");
        let p = &NcPoly::generator(0) * &NcPoly::generator(2);
        let ab = gens.abelianize(&p);
        assert_eq!(ab.display(&gens.base_names()).to_string(), "b1*b3^-1");
        assert_eq!(gens.lift(&ab).unwrap(), p);
        let unit = &NcPoly::generator(1) * &NcPoly::generator(2);
        assert_eq!(gens.abelianize(&unit), CommPoly::one(2));
    }
}
