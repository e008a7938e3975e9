use std::sync::Arc;

use super::local::{comm_expand_at_point, complete_at_point, expand_at_point, LocalAlgebra};
use super::{ChartPresentation, Entry};
use crate::error::{Error, Result};
use crate::linalg::{dense_rank, solve_dense};
use crate::ncalg::{CommPoly, Generators, NcPoly};
use crate::quiver::NcMatrix;
use crate::rational::Rat;

/// Data describing an overlap from a source chart to a destination chart.
#[derive(Debug, Clone, Default)]
pub struct OverlapHints {
    /// Source coordinates inverted on the overlap.
    pub invert: Vec<String>,
    /// Classical transition: destination coordinate and its value as a
    /// Laurent polynomial in the source coordinates.
    pub classical: Vec<(String, CommPoly)>,
    /// Base point, in source coordinate order.
    pub point: Vec<Rat>,
}

impl OverlapHints {
    fn classical_for(&self, name: &str) -> Option<&CommPoly> {
        self.classical.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GluingReport {
    /// Per destination relation: its image lies in the source ideal.
    pub relations_preserved: Vec<bool>,
    /// Per destination coordinate: the abelianized image agrees with the
    /// Taylor expansion of the classical transition, modulo the source ideal
    /// and commutators.
    pub abelianization_matches: Vec<bool>,
    /// For explicit maps: exact equality of the abelianized formula with the
    /// classical transition as Laurent polynomials.
    pub global_abelianization: Vec<bool>,
}

impl GluingReport {
    pub fn ok(&self) -> bool {
        self.relations_preserved.iter().all(|&b| b)
            && self.abelianization_matches.iter().all(|&b| b)
            && self.global_abelianization.iter().all(|&b| b)
    }
}

/// A ring map from the destination completion to the source completion,
/// given by the image of each destination increment.
#[derive(Debug, Clone)]
pub struct GluingMap {
    pub source: Arc<LocalAlgebra>,
    pub target: Arc<LocalAlgebra>,
    pub images: Vec<NcPoly>,
    pub report: GluingReport,
}

impl GluingMap {
    /// Applies the map to an element of the target completion.
    pub fn apply(&self, p: &NcPoly) -> Result<NcPoly> {
        self.target.algebra.substitute(p, &self.images, &self.source.algebra)
    }

    pub fn image_texts(&self) -> Vec<(String, String)> {
        let names = &self.source.coordinates;
        self.target
            .coordinates
            .iter()
            .zip(&self.images)
            .map(|(c, im)| (c.clone(), im.display(names).to_string()))
            .collect()
    }
}

fn check_compatible(src: &ChartPresentation, dst: &ChartPresentation) -> Result<()> {
    if src.spec.quiver != dst.spec.quiver || src.spec.ranks != dst.spec.ranks {
        return Err(Error::ContextMismatch(format!(
            "charts `{}` and `{}` are on different moduli problems",
            src.name(),
            dst.name()
        )));
    }
    if src.nc_degree() != dst.nc_degree() || src.adic_degree() != dst.adic_degree() {
        return Err(Error::ContextMismatch("charts use different truncation degrees".into()));
    }
    Ok(())
}

/// Checks the relations and abelianization of `images` and assembles the map.
fn finish(
    source: LocalAlgebra,
    target: LocalAlgebra,
    images: Vec<NcPoly>,
    hints: &OverlapHints,
    global_abelianization: Vec<bool>,
) -> Result<GluingMap> {
    let src_alg = &source.algebra;
    let mut relations_preserved = Vec::new();
    for r in &target.relations {
        let im = target.algebra.substitute(r, &images, src_alg)?;
        relations_preserved.push(source.contains(&im));
    }
    let src_gens = src_alg.context().generators();
    let abelian = source.ideal.with_filtration(src_alg, 1);
    let mut abelianization_matches = Vec::new();
    for (c, im) in target.coordinates.iter().zip(&images) {
        let Some(cl) = hints.classical_for(c) else { continue };
        let mut exp = comm_expand_at_point(cl, &source.point, src_alg.adic_degree())?;
        let c0 = exp.coefficient(&vec![0; exp.nvars()]);
        exp = &exp - &CommPoly::constant(exp.nvars(), c0);
        let diff = &exp - &src_gens.abelianize(im);
        let lifted = src_gens.lift(&diff)?;
        abelianization_matches.push(abelian.contains(src_alg, &lifted));
    }
    Ok(GluingMap {
        source: Arc::new(source),
        target: Arc::new(target),
        images,
        report: GluingReport {
            relations_preserved,
            abelianization_matches,
            global_abelianization,
        },
    })
}

/// Scalar value of each destination template coordinate at the base point:
/// surviving ones from the classical transition, eliminated ones from their
/// abelianized elimination rule.
fn base_values(dst: &ChartPresentation, hints: &OverlapHints) -> Result<(Vec<Rat>, Vec<(String, Rat)>)> {
    let mut surv = Vec::new();
    for c in &dst.coordinates {
        let cl = hints
            .classical_for(c)
            .ok_or_else(|| Error::InvalidChart(format!("no classical transition for `{c}`")))?;
        let v = cl
            .eval(&hints.point)
            .ok_or_else(|| Error::NotOnChart(format!("transition for `{c}` is singular at the point")))?;
        surv.push(v);
    }
    let mut all: Vec<(String, Rat)> = dst.coordinates.iter().cloned().zip(surv.iter().cloned()).collect();
    for (name, expr) in &dst.eliminated {
        let v = dst.generators().abelianize(expr).eval(&surv).expect("polynomial rule");
        all.push((name.clone(), v));
    }
    Ok((surv, all))
}

/// Solves `M_a^src · g_t(a) = g_h(a) · T_a(y)` order by order in the source
/// completion, for gauge matrices `g_v` and destination coordinates `y`.
///
/// The gauge is fixed to `1` at the first rank-one vertex. Order zero takes
/// `y` from the classical transition; each higher order solves the
/// linearized system on the corresponding adic degree, setting free
/// variables to zero. The result is verified before being returned.
pub fn solve_gluing(src: &ChartPresentation, dst: &ChartPresentation, hints: &OverlapHints) -> Result<GluingMap> {
    check_compatible(src, dst)?;
    let source = complete_at_point(src, &hints.point)?;
    let (y0_surv, y0_all) = base_values(dst, hints)?;
    let target = complete_at_point(dst, &y0_surv)?;

    let alg = source.algebra.clone();
    let n_max = alg.adic_degree();
    let spec = &dst.spec;
    let q = &spec.quiver;
    let ranks = &spec.ranks;
    let nv = ranks.len();
    let pinned = ranks
        .iter()
        .position(|&r| r == 1)
        .ok_or_else(|| Error::InvalidChart("no rank-one vertex to fix the gauge".into()))?;

    let m_src: Vec<NcMatrix> = src
        .rep
        .matrices
        .iter()
        .map(|m| {
            let mut out = NcMatrix::zero(m.rows(), m.cols());
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    out.set(i, j, expand_at_point(m.get(i, j), src.generators(), &hints.point, &alg)?);
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let m0: Vec<Vec<Rat>> = m_src
        .iter()
        .map(|m| m.entries().iter().map(|e| e.constant_term()).collect())
        .collect();

    let coords = spec.coordinates();
    let coord_index = |name: &str| coords.iter().position(|c| c == name).unwrap();
    let y0: Vec<Rat> = coords
        .iter()
        .map(|c| y0_all.iter().find(|(n, _)| n == c).unwrap().1.clone())
        .collect();
    // template entry: constant, or index into `coords`
    let slot = |a: usize, k: usize| -> std::result::Result<Rat, usize> {
        match &spec.templates[a][k] {
            Entry::Constant(x) => Ok(x.clone()),
            Entry::Coordinate(c) => Err(coord_index(c)),
        }
    };
    let t_scalar = |a: usize, k: usize, y: &[Rat]| match slot(a, k) {
        Ok(x) => x,
        Err(i) => y[i].clone(),
    };

    // unknown layout: gauge entries of unpinned vertices, then coordinates
    let mut g_offset = vec![usize::MAX; nv];
    let mut ng = 0;
    for v in 0..nv {
        if v != pinned {
            g_offset[v] = ng;
            ng += ranks[v] * ranks[v];
        }
    }
    let nunk = ng + coords.len();

    // order zero
    let mut a_rows = Vec::new();
    let mut b = Vec::new();
    for (ai, arrow) in q.arrows().iter().enumerate() {
        let (t, h) = (arrow.tail, arrow.head);
        let (rh, rt) = (ranks[h], ranks[t]);
        for i in 0..rh {
            for j in 0..rt {
                let mut row = vec![Rat::zero(); ng];
                let mut rhs = Rat::zero();
                for k in 0..rt {
                    let c = &m0[ai][i * rt + k];
                    if t == pinned {
                        if k == j {
                            rhs -= c;
                        }
                    } else {
                        row[g_offset[t] + k * rt + j] += c;
                    }
                }
                for k in 0..rh {
                    let c = t_scalar(ai, k * rt + j, &y0);
                    if h == pinned {
                        if k == i {
                            rhs += &c;
                        }
                    } else {
                        row[g_offset[h] + i * rh + k] -= &c;
                    }
                }
                a_rows.push(row);
                b.push(rhs);
            }
        }
    }
    let g0 = solve_dense(&a_rows, &b, ng).ok_or_else(|| Error::InconsistentOrder {
        order: 0,
        detail: "no gauge matches the classical transition at the base point".into(),
    })?;
    let gauge0: Vec<Vec<Rat>> = (0..nv)
        .map(|v| {
            if v == pinned {
                vec![Rat::one()]
            } else {
                g0[g_offset[v]..g_offset[v] + ranks[v] * ranks[v]].to_vec()
            }
        })
        .collect();
    for v in 0..nv {
        let r = ranks[v];
        let rows: Vec<Vec<Rat>> = (0..r).map(|i| gauge0[v][i * r..(i + 1) * r].to_vec()).collect();
        if dense_rank(&rows) != r {
            return Err(Error::InconsistentOrder {
                order: 0,
                detail: format!("gauge at vertex `{}` is singular", q.vertices()[v]),
            });
        }
    }

    // linearized operator
    let mut l0 = Vec::new();
    for (ai, arrow) in q.arrows().iter().enumerate() {
        let (t, h) = (arrow.tail, arrow.head);
        let (rh, rt) = (ranks[h], ranks[t]);
        for i in 0..rh {
            for j in 0..rt {
                let mut row = vec![Rat::zero(); nunk];
                if t != pinned {
                    for k in 0..rt {
                        row[g_offset[t] + k * rt + j] += &m0[ai][i * rt + k];
                    }
                }
                if h != pinned {
                    for k in 0..rh {
                        row[g_offset[h] + i * rh + k] -= &t_scalar(ai, k * rt + j, &y0);
                    }
                }
                for k in 0..rh {
                    if let Err(ci) = slot(ai, k * rt + j) {
                        row[ng + ci] -= &gauge0[h][i * rh + k];
                    }
                }
                l0.push(row);
            }
        }
    }

    let mut gauge: Vec<NcMatrix> = (0..nv)
        .map(|v| NcMatrix::from_rats(ranks[v], ranks[v], &gauge0[v]))
        .collect();
    let mut y: Vec<NcPoly> = y0.iter().map(|v| NcPoly::constant(v.clone())).collect();

    let defect = |gauge: &[NcMatrix], y: &[NcPoly]| -> Result<Vec<crate::linalg::SparseVec>> {
        let mut out = Vec::new();
        for (ai, arrow) in q.arrows().iter().enumerate() {
            let (t, h) = (arrow.tail, arrow.head);
            let (rh, rt) = (ranks[h], ranks[t]);
            let mut tm = NcMatrix::zero(rh, rt);
            for k in 0..rh * rt {
                let e = match slot(ai, k) {
                    Ok(x) => NcPoly::constant(x),
                    Err(ci) => y[ci].clone(),
                };
                tm.set(k / rt, k % rt, e);
            }
            let lhs = m_src[ai].mul_in(&gauge[t], &alg)?;
            let rhs = gauge[h].mul_in(&tm, &alg)?;
            for e in lhs.sub(&rhs)?.entries() {
                out.push(source.ideal.quotient_coords(&alg, e));
            }
        }
        Ok(out)
    };

    for order in 1..=n_max {
        let d = defect(&gauge, &y)?;
        let mut columns: Vec<u32> = Vec::new();
        for v in &d {
            for (col, _) in v.entries() {
                let deg = alg.column_degree(*col);
                if deg < order {
                    return Err(Error::InconsistentOrder {
                        order: deg,
                        detail: "defect survives below the current order".into(),
                    });
                }
                if deg == order {
                    columns.push(*col);
                }
            }
        }
        columns.sort_unstable();
        columns.dedup();
        for col in columns {
            let rhs: Vec<Rat> = d.iter().map(|v| -v.get(col)).collect();
            let x = solve_dense(&l0, &rhs, nunk).ok_or_else(|| Error::InconsistentOrder {
                order,
                detail: format!("no correction for the basis element `{}`", alg.basis_element(col).display(&alg.names())),
            })?;
            let basis = alg.basis_element(col);
            for v in 0..nv {
                if v == pinned {
                    continue;
                }
                let r = ranks[v];
                for k in 0..r * r {
                    let c = &x[g_offset[v] + k];
                    if !c.is_zero() {
                        let cur = gauge[v].get(k / r, k % r) + &basis.scale(c);
                        gauge[v].set(k / r, k % r, cur);
                    }
                }
            }
            for (ci, yc) in y.iter_mut().enumerate() {
                let c = &x[ng + ci];
                if !c.is_zero() {
                    *yc = &*yc + &basis.scale(c);
                }
            }
        }
    }
    if defect(&gauge, &y)?.iter().any(|v| !v.is_zero()) {
        return Err(Error::InconsistentOrder {
            order: n_max,
            detail: "residual defect after the last order".into(),
        });
    }

    let images: Vec<NcPoly> = dst
        .coordinates
        .iter()
        .map(|c| {
            let ci = coord_index(c);
            &y[ci] - &NcPoly::constant(y0[ci].clone())
        })
        .collect();
    finish(source, target, images, hints, Vec::new())
}

/// A map given by explicit NC Laurent formulas for the surviving
/// destination coordinates, over the source coordinates with the inverted
/// ones adjoined.
pub fn explicit_gluing(
    src: &ChartPresentation,
    dst: &ChartPresentation,
    hints: &OverlapHints,
    formulas: &[(String, NcPoly)],
) -> Result<GluingMap> {
    check_compatible(src, dst)?;
    let gens = Generators::with_inverses(&src.coordinates, &hints.invert)?;
    let source = complete_at_point(src, &hints.point)?;
    let mut values = Vec::new();
    let mut images = Vec::new();
    let mut global = Vec::new();
    for c in &dst.coordinates {
        let f = formulas
            .iter()
            .find(|(n, _)| n == c)
            .map(|(_, p)| p)
            .ok_or_else(|| Error::InvalidChart(format!("no formula for `{c}`")))?;
        gens.check(f)?;
        if let Some(cl) = hints.classical_for(c) {
            global.push(gens.abelianize(f) == *cl);
        }
        let e = expand_at_point(f, &gens, &hints.point, &source.algebra)?;
        let v = e.constant_term();
        images.push(&e - &NcPoly::constant(v.clone()));
        values.push(v);
    }
    let target = complete_at_point(dst, &values)?;
    finish(source, target, images, hints, global)
}
