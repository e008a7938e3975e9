use std::sync::Arc;

use super::ChartPresentation;
use crate::error::{Error, Result};
use crate::ncalg::{Algebra, AlgebraContext, CommPoly, Generators, Ideal, NcPoly};
use crate::rational::Rat;

/// The truncated completion of a chart at a point: generators are the
/// increments `ξ = x - x0`, relations are re-expanded around the point.
#[derive(Debug, Clone)]
pub struct LocalAlgebra {
    pub chart: String,
    pub coordinates: Vec<String>,
    pub point: Vec<Rat>,
    pub algebra: Arc<Algebra>,
    pub relations: Vec<NcPoly>,
    pub ideal: Ideal,
}

impl LocalAlgebra {
    /// Quotient dimension per adic degree.
    pub fn graded_dims(&self) -> Vec<usize> {
        self.ideal.quotient_dims(&self.algebra)
    }

    pub fn tangent_dim(&self) -> usize {
        self.graded_dims().get(1).copied().unwrap_or(0)
    }

    pub fn contains(&self, p: &NcPoly) -> bool {
        self.ideal.contains(&self.algebra, p)
    }

    pub fn reduce(&self, p: &NcPoly) -> NcPoly {
        self.ideal.reduce(&self.algebra, p)
    }

    /// Same chart and the same base point.
    pub fn same_place(&self, other: &LocalAlgebra) -> bool {
        self.chart == other.chart && self.coordinates == other.coordinates && self.point == other.point
    }

    pub fn point_text(&self) -> String {
        self.coordinates
            .iter()
            .zip(&self.point)
            .map(|(c, v)| format!("{c}={v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// `x0^{-1} Σ_k (-x0^{-1} ξ)^k` up to degree `n`, as an NC series in `ξ`.
fn inverse_series(x0: &Rat, xi: usize, n: usize) -> NcPoly {
    let inv = x0.recip();
    let step = NcPoly::generator(xi).scale(&-inv.clone());
    let mut term = NcPoly::constant(inv);
    let mut acc = term.clone();
    for _ in 0..n {
        term = term.mul_truncated(&step, Some(n));
        acc = &acc + &term;
    }
    acc
}

/// Re-expands `p` (over `gens`, possibly with adjoined inverses) around
/// `point`, given in base-generator order, into `target` whose generators
/// are the base increments.
pub fn expand_at_point(p: &NcPoly, gens: &Generators, point: &[Rat], target: &Algebra) -> Result<NcPoly> {
    let base = gens.base_indices();
    if point.len() != base.len() {
        return Err(Error::ContextMismatch(format!(
            "point has {} values for {} coordinates",
            point.len(),
            base.len()
        )));
    }
    if target.ngens() != base.len() {
        return Err(Error::ContextMismatch("target alphabet differs from the base coordinates".into()));
    }
    let n = target.adic_degree();
    let mut images = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        let img = match g.inverse_of {
            None => {
                let b = base.iter().position(|&x| x == i).unwrap();
                &NcPoly::constant(point[b].clone()) + &NcPoly::generator(b)
            }
            Some(j) => {
                let b = base.iter().position(|&x| x == j).unwrap();
                if point[b].is_zero() {
                    return Err(Error::NotOnChart(format!(
                        "`{}` is inverted but vanishes at the point",
                        gens.get(j).name
                    )));
                }
                inverse_series(&point[b], b, n)
            }
        };
        images.push(img);
    }
    Ok(target.normal_form(&p.substitute_truncated(&images, Some(n))))
}

/// Taylor expansion of a Laurent polynomial around `point`, up to total
/// degree `n`, in the increments.
pub fn comm_expand_at_point(p: &CommPoly, point: &[Rat], n: usize) -> Result<CommPoly> {
    let nv = p.nvars();
    let mut out = CommPoly::zero(nv);
    for (e, c) in p.terms() {
        let mut acc = CommPoly::constant(nv, c.clone());
        for (v, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let factor = if k > 0 {
                &CommPoly::constant(nv, point[v].clone()) + &CommPoly::var(nv, v)
            } else {
                if point[v].is_zero() {
                    return Err(Error::NotOnChart(format!(
                        "negative power of variable {v} at a point where it vanishes"
                    )));
                }
                let inv = point[v].recip();
                let mut series = CommPoly::zero(nv);
                let mut t = CommPoly::constant(nv, inv.clone());
                let step = CommPoly::var(nv, v).scale(&-inv);
                for _ in 0..=n {
                    series = &series + &t;
                    t = (&t * &step).truncate(n);
                }
                series
            };
            for _ in 0..k.unsigned_abs() {
                acc = (&acc * &factor).truncate(n);
            }
        }
        out = &out + &acc;
    }
    Ok(out)
}

/// Completion of `pres` at `point` (values in coordinate order). Fails with
/// [`Error::NotOnChart`] when a relation does not vanish at the point.
pub fn complete_at_point(pres: &ChartPresentation, point: &[Rat]) -> Result<LocalAlgebra> {
    if point.len() != pres.coordinates.len() {
        return Err(Error::ContextMismatch(format!(
            "point has {} values for {} coordinates",
            point.len(),
            pres.coordinates.len()
        )));
    }
    let at_origin = point.iter().all(|x| x.is_zero());
    let algebra = if at_origin {
        pres.algebra.clone()
    } else {
        Arc::new(Algebra::new(AlgebraContext::new(
            pres.generators().clone(),
            pres.nc_degree(),
            pres.adic_degree(),
        )?))
    };
    let mut relations = Vec::with_capacity(pres.relations.len());
    for (i, r) in pres.relations.iter().enumerate() {
        let e = expand_at_point(r, pres.generators(), point, &algebra)?;
        let c = e.constant_term();
        if !c.is_zero() {
            return Err(Error::NotOnChart(format!(
                "relation {} (`{}`) takes the value {c}",
                i + 1,
                r.display(&pres.coordinates)
            )));
        }
        relations.push(e);
    }
    let ideal = if at_origin {
        pres.ideal().clone()
    } else {
        Ideal::generate(&algebra, &relations)?
    };
    Ok(LocalAlgebra {
        chart: pres.name().to_string(),
        coordinates: pres.coordinates.clone(),
        point: point.to_vec(),
        algebra,
        relations,
        ideal,
    })
}
