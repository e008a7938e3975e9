use std::cell::RefCell;
use std::collections::HashMap;

use super::gluing::GluingMap;
use crate::error::{Error, Result};
use crate::ncalg::{gr_component, GrMatrix, NcPoly, Word};

/// How far a composite of gluing maps around a cycle is from the identity.
#[derive(Debug, Clone)]
pub struct CocycleReport {
    /// The composite is the identity modulo the ideal.
    pub holds: bool,
    /// Matrix of the composite on each graded piece `V_k / V_{k+1}`.
    pub gr: Vec<GrMatrix>,
    /// Lowest level `k` with some `φ(x) - x` outside `V_{k+1}`.
    pub first_defect: Option<usize>,
    /// Reduced `φ(x) - x` for the generators attaining that level.
    pub representatives: Vec<(String, NcPoly)>,
}

/// Composes `maps` (each a map from its source chart to the next chart)
/// around a cycle and compares the result with the identity.
pub fn cocycle_defect(maps: &[&GluingMap]) -> Result<CocycleReport> {
    let Some(first) = maps.first() else {
        return Err(Error::NotComposable("empty cycle".into()));
    };
    for w in maps.windows(2) {
        if !w[0].target.same_place(&w[1].source) {
            return Err(Error::NotComposable(format!(
                "`{}` at {} does not meet `{}` at {}",
                w[0].target.chart,
                w[0].target.point_text(),
                w[1].source.chart,
                w[1].source.point_text()
            )));
        }
    }
    let last = maps.last().unwrap();
    if !last.target.same_place(&first.source) {
        return Err(Error::NotComposable(format!(
            "cycle ends at `{}` instead of `{}`",
            last.target.chart, first.source.chart
        )));
    }
    let home = first.source.clone();
    let alg = &home.algebra;
    let n = alg.ngens();

    let mut images = Vec::with_capacity(n);
    for i in 0..n {
        let mut cur = NcPoly::generator(i);
        for m in maps.iter().rev() {
            cur = m.apply(&cur)?;
        }
        images.push(home.reduce(&cur));
    }
    let diffs: Vec<NcPoly> = images
        .iter()
        .enumerate()
        .map(|(i, im)| home.reduce(&(im - &NcPoly::generator(i))))
        .collect();
    let holds = diffs.iter().all(|d| d.is_zero());

    let cache: RefCell<HashMap<Word, NcPoly>> = RefCell::new(HashMap::new());
    let word_image = |w: &Word| -> NcPoly {
        let letters: Vec<usize> = w.letters().collect();
        let mut known = 0;
        let mut cur = NcPoly::one();
        for l in (1..=letters.len()).rev() {
            if let Some(p) = cache.borrow().get(&Word::from_letters(&letters[..l])) {
                known = l;
                cur = p.clone();
                break;
            }
        }
        for l in known..letters.len() {
            cur = alg.mul(&cur, &images[letters[l]]);
            cache
                .borrow_mut()
                .insert(Word::from_letters(&letters[..=l]), cur.clone());
        }
        cur
    };
    let compose = |p: &NcPoly| -> Result<NcPoly> {
        let mut acc = NcPoly::zero();
        for (w, c) in alg.normal_form(p).terms() {
            acc = &acc + &word_image(w).scale(c);
        }
        Ok(alg.normal_form(&acc))
    };

    let d = alg.nc_degree();
    let mut gr = Vec::new();
    for k in 0..=d {
        gr.push(gr_component(alg, &home.ideal, alg, &home.ideal, k, compose)?);
    }

    let mut first_defect = None;
    let mut representatives = Vec::new();
    if !holds {
        let levels: Vec<Option<usize>> = diffs
            .iter()
            .map(|u| {
                if u.is_zero() {
                    return None;
                }
                (0..=d).find(|&k| !home.ideal.with_filtration(alg, k + 1).contains(alg, u))
            })
            .collect();
        first_defect = levels.iter().flatten().min().copied();
        for (i, l) in levels.iter().enumerate() {
            if *l == first_defect && l.is_some() {
                representatives.push((home.coordinates[i].clone(), diffs[i].clone()));
            }
        }
    }
    Ok(CocycleReport {
        holds,
        gr,
        first_defect,
        representatives,
    })
}
