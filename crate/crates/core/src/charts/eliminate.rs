use super::ChartPresentation;
use crate::error::Result;
use crate::ncalg::{NcPoly, Word};
use crate::quiver::NCRepresentation;

/// Coordinates `v` whose only occurrence in `g` is a linear term with a
/// nonzero scalar coefficient.
fn eligible(g: &NcPoly, n: usize) -> Vec<usize> {
    (0..n)
        .filter(|&v| {
            let lin = Word::letter(v);
            !g.coefficient(&lin).is_zero()
                && g.terms()
                    .filter(|(w, _)| **w != lin)
                    .all(|(w, _)| !w.letters().any(|l| l == v))
        })
        .collect()
}

/// Repeatedly solves generators for a coordinate that occurs only
/// linearly in them, substituting everywhere.
///
/// Generators are scanned in order; within a generator the last eligible
/// coordinate (in coordinate order) is chosen. Generators that become zero
/// are dropped. The resulting presentation is over the surviving
/// coordinates and records each eliminated coordinate's expression.
pub fn eliminate_linear(pres: &ChartPresentation) -> Result<ChartPresentation> {
    let n = pres.coordinates.len();
    let mut gens: Vec<NcPoly> = pres.relations.clone();
    let mut images: Vec<NcPoly> = (0..n).map(NcPoly::generator).collect();
    let mut gone = vec![false; n];
    let mut order = Vec::new();
    loop {
        let found = gens
            .iter()
            .enumerate()
            .find_map(|(i, g)| eligible(g, n).last().map(|&v| (i, v)));
        let Some((gi, v)) = found else { break };
        let g = gens.remove(gi);
        let c = g.coefficient(&Word::letter(v));
        let rest = &g - &NcPoly::term(Word::letter(v), c.clone());
        let expr = rest.scale(&-c.recip());
        let mut sub: Vec<NcPoly> = (0..n).map(NcPoly::generator).collect();
        sub[v] = expr;
        gens = gens
            .iter()
            .map(|h| h.substitute(&sub))
            .filter(|h| !h.is_zero())
            .collect();
        for im in images.iter_mut() {
            *im = im.substitute(&sub);
        }
        gone[v] = true;
        order.push(v);
    }
    if order.is_empty() {
        return Ok(pres.clone());
    }

    let mut relabel = vec![0usize; n];
    let mut survivors = Vec::new();
    for v in 0..n {
        if !gone[v] {
            relabel[v] = survivors.len();
            survivors.push(pres.coordinates[v].clone());
        }
    }
    let to_new = |p: &NcPoly| p.substitute(&images).relabel(&relabel);

    let rep = NCRepresentation {
        ranks: pres.rep.ranks.clone(),
        matrices: pres.rep.matrices.iter().map(|m| m.map(to_new)).collect(),
        framing: pres.rep.framing.clone(),
    };
    let relations: Vec<NcPoly> = gens.iter().map(|g| g.relabel(&relabel)).collect();
    let mut eliminated: Vec<(String, NcPoly)> = pres
        .eliminated
        .iter()
        .map(|(name, e)| (name.clone(), to_new(e)))
        .collect();
    for v in order {
        eliminated.push((pres.coordinates[v].clone(), images[v].relabel(&relabel)));
    }
    ChartPresentation::assemble(
        pres.spec.clone(),
        survivors,
        rep,
        relations,
        eliminated,
        pres.nc_degree(),
        pres.adic_degree(),
    )
}
