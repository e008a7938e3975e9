use super::{theta_pairing, Arrow, DimVector, NCRepresentation, NcMatrix, QuiverPresentation, ThetaVector};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::rational::Rat;

/// Subset size for the bounded subrepresentation search.
pub const DEFAULT_SEARCH_SIZE: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Stability {
    Stable,
    /// A proper nonzero subrepresentation with `θ · dim ≤ 0`.
    Unstable(DimVector),
    Unknown,
}

/// A subrepresentation of a scalar representation: one subspace per vertex.
#[derive(Debug, Clone)]
pub struct Subrep {
    pub spaces: Vec<Echelon>,
}

impl Subrep {
    pub fn dims(&self) -> DimVector {
        DimVector(self.spaces.iter().map(|e| e.rank() as u64).collect())
    }
}

fn scalar_matrices(rep: &NCRepresentation) -> Result<Vec<Vec<Rat>>> {
    rep.matrices
        .iter()
        .map(|m| {
            m.to_rats()
                .ok_or_else(|| Error::ShapeMismatch("representation is not scalar".into()))
        })
        .collect()
}

fn apply(m: &[Rat], rows: usize, cols: usize, v: &SparseVec) -> SparseVec {
    SparseVec::from_pairs((0..rows).flat_map(|i| {
        let mut acc = Rat::zero();
        for (j, x) in v.entries() {
            let a = &m[i * cols + *j as usize];
            if !a.is_zero() {
                acc += &(a * x);
            }
        }
        (!acc.is_zero()).then_some((i as u32, acc))
    }))
}

/// Smallest subrepresentation containing the seed vectors `(vertex, vector)`.
pub fn generated_subrep(
    q: &QuiverPresentation,
    rep: &NCRepresentation,
    seeds: &[(usize, Vec<Rat>)],
) -> Result<Subrep> {
    rep.validate(q)?;
    let mats = scalar_matrices(rep)?;
    let mut spaces: Vec<Echelon> = rep.ranks.iter().map(|&r| Echelon::new(r)).collect();
    let mut work: Vec<(usize, SparseVec)> = Vec::new();
    for (v, vec) in seeds {
        if *v >= rep.ranks.len() || vec.len() != rep.ranks[*v] {
            return Err(Error::ShapeMismatch("seed vector has the wrong shape".into()));
        }
        work.push((
            *v,
            SparseVec::from_pairs(vec.iter().enumerate().map(|(i, x)| (i as u32, x.clone()))),
        ));
    }
    while let Some((v, vec)) = work.pop() {
        let red = spaces[v].reduce(&vec);
        if red.is_zero() {
            continue;
        }
        spaces[v].insert(&red);
        for (a, Arrow { tail, head, .. }) in q.arrows().iter().enumerate() {
            if *tail == v {
                let img = apply(&mats[a], rep.ranks[*head], rep.ranks[*tail], &red);
                if !img.is_zero() {
                    work.push((*head, img));
                }
            }
        }
    }
    for s in &mut spaces {
        s.interreduce();
    }
    Ok(Subrep { spaces })
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    (0..n)
        .map(|j| if i == j { Rat::one() } else { Rat::zero() })
        .collect()
}

/// King stability of a scalar representation: every proper nonzero
/// subrepresentation `W'` has `θ · dim W' > 0`.
///
/// Exact when one vertex `s` has `γ_s = 1`, `θ_s < 0` and every other
/// occupied vertex has positive weight: then stability means `W_s`
/// generates. Otherwise subrepresentations generated by at most
/// `search_size` standard basis vectors are tried, and the verdict is
/// `Unstable` or `Unknown`.
pub fn king_stability(
    q: &QuiverPresentation,
    rep: &NCRepresentation,
    theta: &ThetaVector,
    search_size: usize,
) -> Result<Stability> {
    rep.validate(q)?;
    let dims = rep.dim_vector();
    let pairing = theta_pairing(theta, &dims)?;
    if !pairing.is_zero() {
        return Err(Error::ThetaPairing(pairing.to_string()));
    }
    if dims.is_zero() {
        return Ok(Stability::Stable);
    }
    let occupied: Vec<usize> = (0..dims.0.len()).filter(|&v| dims.0[v] > 0).collect();
    let source = occupied.iter().copied().find(|&s| {
        dims.0[s] == 1
            && theta.0[s].is_negative()
            && occupied
                .iter()
                .all(|&v| v == s || (!theta.0[v].is_negative() && !theta.0[v].is_zero()))
    });
    if let Some(s) = source {
        let g = generated_subrep(q, rep, &[(s, vec![Rat::one()])])?;
        let gd = g.dims();
        return Ok(if gd == dims {
            Stability::Stable
        } else {
            Stability::Unstable(gd)
        });
    }
    let spanning: Vec<(usize, Vec<Rat>)> = occupied
        .iter()
        .flat_map(|&v| (0..rep.ranks[v]).map(move |i| (v, i)))
        .map(|(v, i)| (v, unit(rep.ranks[v], i)))
        .collect();
    let n = spanning.len();
    let mut subset: Vec<usize> = Vec::new();
    fn next(subset: &mut Vec<usize>, n: usize, k: usize) -> bool {
        // lexicographic enumeration of nonempty subsets of size ≤ k
        if subset.len() < k {
            let start = subset.last().map(|&x| x + 1).unwrap_or(0);
            if start < n {
                subset.push(start);
                return true;
            }
        }
        while let Some(x) = subset.pop() {
            if x + 1 < n {
                subset.push(x + 1);
                return true;
            }
        }
        false
    }
    while next(&mut subset, n, search_size) {
        let seeds: Vec<_> = subset.iter().map(|&i| spanning[i].clone()).collect();
        let sub = generated_subrep(q, rep, &seeds)?.dims();
        if sub != dims && !sub.is_zero() {
            let t = theta_pairing(theta, &sub)?;
            if t.is_negative() || t.is_zero() {
                return Ok(Stability::Unstable(sub));
            }
        }
    }
    Ok(Stability::Unknown)
}

/// The framed quiver: a new source vertex (placed first) with one arrow to
/// the framing vertex (placed last among arrows).
#[derive(Debug, Clone)]
pub struct FramedExtension {
    pub quiver: QuiverPresentation,
    pub theta: ThetaVector,
    pub dims: DimVector,
    pub epsilon: Rat,
    pub frame_arrow: usize,
}

fn fresh(base: &str, taken: &[String]) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// `θ^⋄_v = θ_v + ε` on old vertices, `θ^⋄ = −ε Σ γ_v` on the new one,
/// `γ^⋄ = (1, γ)`. `ε` defaults to `1/(1 + Σ γ_v)`.
pub fn framed_extend(
    q: &QuiverPresentation,
    theta: &ThetaVector,
    dims: &DimVector,
    star: usize,
    epsilon: Option<Rat>,
) -> Result<FramedExtension> {
    if theta.0.len() != q.num_vertices() || dims.0.len() != q.num_vertices() {
        return Err(Error::ShapeMismatch("θ and γ must have one entry per vertex".into()));
    }
    if star >= q.num_vertices() {
        return Err(Error::InvalidQuiver("framing vertex out of range".into()));
    }
    let total = Rat::from_int(dims.total() as i64);
    let eps = epsilon.unwrap_or_else(|| (&Rat::one() + &total).recip());
    if eps.is_negative() || eps.is_zero() {
        return Err(Error::InvalidQuiver("ε must be positive".into()));
    }
    let frame = fresh("frame", q.vertices());
    let mut vertices = vec![frame];
    vertices.extend(q.vertices().iter().cloned());
    let mut arrows: Vec<Arrow> = q
        .arrows()
        .iter()
        .map(|a| Arrow {
            name: a.name.clone(),
            tail: a.tail + 1,
            head: a.head + 1,
        })
        .collect();
    arrows.push(Arrow {
        name: fresh("tau", &q.arrow_names()),
        tail: 0,
        head: star + 1,
    });
    let frame_arrow = arrows.len() - 1;
    let mut ext = QuiverPresentation::new(vertices, arrows)?;
    for r in q.relations() {
        ext.add_relation(r.poly.clone())?;
    }
    let mut th = vec![-&(&eps * &total)];
    th.extend(theta.0.iter().map(|t| t + &eps));
    let mut g = vec![1];
    g.extend(dims.0.iter().copied());
    Ok(FramedExtension {
        quiver: ext,
        theta: ThetaVector(th),
        dims: DimVector(g),
        epsilon: eps,
        frame_arrow,
    })
}

/// Stability of a framed scalar representation. With a framing, `θ` lives
/// on the unframed quiver and the check runs on the framed extension (the
/// witness then uses its vertex order). Without one, plain King stability.
pub fn framed_theta_stable(
    q: &QuiverPresentation,
    rep: &NCRepresentation,
    theta: &ThetaVector,
) -> Result<Stability> {
    let Some(fr) = &rep.framing else {
        return king_stability(q, rep, theta, DEFAULT_SEARCH_SIZE);
    };
    let dims = rep.dim_vector();
    let pairing = theta_pairing(theta, &dims)?;
    if !pairing.is_zero() {
        return Err(Error::ThetaPairing(pairing.to_string()));
    }
    let ext = framed_extend(q, theta, &dims, fr.vertex, None)?;
    let mut ranks = vec![1];
    ranks.extend(rep.ranks.iter().copied());
    let mut mats: Vec<NcMatrix> = rep.matrices.clone();
    mats.push(fr.vector.clone());
    let framed = NCRepresentation::new(&ext.quiver, ranks, mats)?;
    king_stability(&ext.quiver, &framed, &ext.theta, DEFAULT_SEARCH_SIZE)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| Rat::from_int(x)).collect()
    }

    fn framed_loops() -> QuiverPresentation {
        QuiverPresentation::from_names(
            &["d", "s"],
            &[("f", "d", "s"), ("x", "s", "s"), ("y", "s", "s")],
        )
        .unwrap()
    }

    #[test]
    fn cyclic_configuration_is_stable() {
        let q = framed_loops();
        let th = ThetaVector::from_ints(&[-2, 1]);
        let rep = NCRepresentation::scalar(
            &q,
            vec![1, 2],
            &[ints(&[1, 0]), ints(&[0, 0, 1, 0]), ints(&[0, 0, 0, 0])],
        )
        .unwrap();
        assert_eq!(king_stability(&q, &rep, &th, 2).unwrap(), Stability::Stable);
        let dead = NCRepresentation::scalar(
            &q,
            vec![1, 2],
            &[ints(&[1, 0]), ints(&[0, 0, 0, 0]), ints(&[0, 0, 0, 0])],
        )
        .unwrap();
        assert_eq!(
            king_stability(&q, &dead, &th, 2).unwrap(),
            Stability::Unstable(DimVector(vec![1, 1]))
        );
    }

    #[test]
    fn extension_arithmetic() {
        let q = QuiverPresentation::from_names(&["a", "b"], &[("p", "a", "b")]).unwrap();
        let ext = framed_extend(
            &q,
            &ThetaVector::from_ints(&[3, -2]),
            &DimVector(vec![2, 3]),
            0,
            Some(Rat::one()),
        )
        .unwrap();
        assert_eq!(ext.theta, ThetaVector::from_ints(&[-5, 4, -1]));
        assert_eq!(ext.dims, DimVector(vec![1, 2, 3]));
        assert_eq!(theta_pairing(&ext.theta, &ext.dims).unwrap(), Rat::zero());
    }

    #[test]
    fn lone_vertex_with_framing() {
        let q = QuiverPresentation::from_names(&["v"], &[]).unwrap();
        let rep = NCRepresentation::scalar(&q, vec![1], &[])
            .unwrap()
            .with_framing(&q, 0, NcMatrix::from_rats(1, 1, &ints(&[1])))
            .unwrap();
        let th = ThetaVector::from_ints(&[0]);
        assert_eq!(framed_theta_stable(&q, &rep, &th).unwrap(), Stability::Stable);
    }
}
