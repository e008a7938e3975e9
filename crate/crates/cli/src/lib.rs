//! Commands behind the `ncthick` binary. Each command reads documents from
//! strings and returns a [`Report`]; the binary only handles files and
//! exit codes.

pub mod report;

use anyhow::{anyhow, bail, Context, Result};
use ncthick_core::charts::{
    classical_equations, classical_ideal_span, cocycle_defect, complete_at_point, eliminate_linear,
    explicit_gluing, relations_ideal, solve_gluing, ChartPresentation, GluingMap,
};
use ncthick_core::format::{
    parse_chart, parse_graded_algebra, parse_graded_module, parse_overlap, parse_quiver, write_quiver,
    OverlapFile,
};
use ncthick_core::ncalg::{parse_nc, Ideal, NcPoly};
use ncthick_core::quiver::{king_stability, NCRepresentation, Stability, ThetaVector, DEFAULT_SEARCH_SIZE};
use ncthick_core::sheaf_bridge::{build_qpq, gamma_module, theta_from_alpha, HilbertPolynomial};
use ncthick_core::Rat;

pub use report::{Format, Report, Status};

/// Truncation `(d, N)` of the working quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Truncation {
    pub nc_degree: usize,
    pub adic_degree: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation {
            nc_degree: 3,
            adic_degree: 5,
        }
    }
}

fn load_chart(src: &str, t: Truncation) -> Result<ChartPresentation> {
    let spec = parse_chart(src).context("reading chart")?;
    Ok(relations_ideal(&spec, t.nc_degree, t.adic_degree)?)
}

fn join<I: IntoIterator<Item = S>, S: ToString>(items: I) -> String {
    items.into_iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

fn rule_texts(p: &ChartPresentation) -> Vec<String> {
    p.eliminated
        .iter()
        .map(|(n, e)| format!("{n} = {}", e.display(&p.coordinates)))
        .collect()
}

/// Abelianized generators span the classical chart ideal in degrees `≤ N`.
fn abelianization_agrees(p: &ChartPresentation) -> bool {
    let n = p.coordinates.len();
    let ours = classical_ideal_span(&p.abelianized(), n, p.adic_degree());
    let classical: Vec<_> = classical_equations(&p.spec).into_iter().filter(|c| !c.is_zero()).collect();
    ours.same_span(&classical_ideal_span(&classical, n, p.adic_degree()))
}

/// Chart presentation: ideal generators, abelianization verdict, reduced
/// presentation and quotient dimensions.
pub fn thicken(chart: &str, quiver: Option<&str>, t: Truncation) -> Result<Report> {
    let pres = load_chart(chart, t)?;
    if let Some(q) = quiver {
        let qf = parse_quiver(q).context("reading quiver")?;
        if write_quiver(&qf.quiver, None, None) != write_quiver(&pres.spec.quiver, None, None) {
            bail!(ncthick_core::Error::InvalidChart(format!(
                "chart `{}` is not built on the given quiver",
                pres.name()
            )));
        }
    }
    let mut r = Report::new("thicken", t.nc_degree, t.adic_degree);
    r.field("chart", pres.name());
    r.field("coordinates", join(&pres.coordinates));
    if pres.is_free() {
        r.field("smooth", format!("free algebra on {} generators", pres.coordinates.len()));
    }
    r.list("generators", pres.relation_texts());
    r.check("abelianization", Status::from_bool(abelianization_agrees(&pres)));
    let red = eliminate_linear(&pres)?;
    r.list("eliminated", rule_texts(&red));
    r.field("reduced coordinates", join(&red.coordinates));
    r.list("reduced generators", red.relation_texts());
    r.check("proper ideal", Status::from_bool(!red.ideal().contains_unit(&red.algebra)));
    r.field("quotient dims", join(red.ideal().quotient_dims(&red.algebra)));
    Ok(r)
}

fn map_lines(r: &mut Report, key: &str, m: &GluingMap) {
    r.list(key, m.image_texts().into_iter().map(|(n, e)| format!("{n} -> {e}")));
}

fn map_checks(r: &mut Report, prefix: &str, m: &GluingMap) {
    r.check(
        &format!("{prefix} relations preserved"),
        Status::from_bool(m.report.relations_preserved.iter().all(|&b| b)),
    );
    r.check(
        &format!("{prefix} abelianization"),
        Status::from_bool(
            m.report.abelianization_matches.iter().all(|&b| b) && m.report.global_abelianization.iter().all(|&b| b),
        ),
    );
}

/// Gluing maps from `src` to `dst`: the solved map at every point of the
/// overlap document, and the explicit map when `map` lines are present.
pub fn glue(src: &str, dst: &str, overlap: &str, t: Truncation) -> Result<Report> {
    let a = eliminate_linear(&load_chart(src, t)?)?;
    let b = eliminate_linear(&load_chart(dst, t)?)?;
    let ov = parse_overlap(overlap).context("reading overlap")?;
    check_names(&ov, &a, &b)?;
    let mut r = Report::new("glue", t.nc_degree, t.adic_degree);
    r.field("source", a.name());
    r.field("target", b.name());
    if ov.points.is_empty() {
        bail!(ncthick_core::Error::parse(1, 1, "overlap document has no `point:` line"));
    }
    for i in 0..ov.points.len() {
        let hints = ov.hints(&a, i)?;
        let tag = format!("point {}", i + 1);
        let solved = solve_gluing(&a, &b, &hints)?;
        r.field(&format!("{tag} source"), solved.source.point_text());
        r.field(&format!("{tag} target"), solved.target.point_text());
        map_lines(&mut r, &format!("{tag} map"), &solved);
        map_checks(&mut r, &format!("{tag} solved"), &solved);
        if !ov.maps.is_empty() {
            let explicit = explicit_gluing(&a, &b, &hints, &ov.formulas(&a)?)?;
            map_checks(&mut r, &format!("{tag} explicit"), &explicit);
        }
    }
    Ok(r)
}

fn check_names(ov: &OverlapFile, a: &ChartPresentation, b: &ChartPresentation) -> Result<()> {
    for (want, have) in [(&ov.source, a.name()), (&ov.target, b.name())] {
        if let Some(w) = want {
            if w != have {
                bail!(ncthick_core::Error::InvalidChart(format!("overlap expects chart `{w}`, got `{have}`")));
            }
        }
    }
    Ok(())
}

/// Composite of the solved gluings around a cycle. Each overlap names its
/// source and target charts; the first `point:` line of each is used.
pub fn cocycle(charts: &[&str], overlaps: &[&str], t: Truncation) -> Result<Report> {
    let pres = charts
        .iter()
        .map(|c| Ok(eliminate_linear(&load_chart(c, t)?)?))
        .collect::<Result<Vec<_>>>()?;
    let find = |name: &Option<String>| -> Result<&ChartPresentation> {
        let n = name.as_ref().ok_or_else(|| anyhow!("overlap document needs `source:` and `target:`"))?;
        pres.iter()
            .find(|p| p.name() == n)
            .ok_or_else(|| anyhow!(ncthick_core::Error::InvalidChart(format!("no chart named `{n}`"))))
    };
    let mut maps = Vec::new();
    for o in overlaps {
        let ov = parse_overlap(o).context("reading overlap")?;
        let (a, b) = (find(&ov.source)?, find(&ov.target)?);
        maps.push(solve_gluing(a, b, &ov.hints(a, 0)?)?);
    }
    let refs: Vec<&GluingMap> = maps.iter().collect();
    let rep = cocycle_defect(&refs)?;
    let mut r = Report::new("cocycle", t.nc_degree, t.adic_degree);
    r.field("cycle", join(maps.iter().map(|m| m.source.chart.clone())));
    for (i, m) in maps.iter().enumerate() {
        map_checks(&mut r, &format!("map {}", i + 1), m);
    }
    for g in &rep.gr {
        r.check(&format!("gr level {} identity", g.level), Status::from_bool(g.is_identity()));
    }
    let home = &maps[0].source;
    match rep.first_defect {
        None => r.field("first defect", "none"),
        Some(k) => r.field("first defect", k),
    }
    r.list(
        "defect",
        rep.representatives
            .iter()
            .map(|(n, u)| format!("{n}: {}", u.display(&home.coordinates))),
    );
    r.check("cocycle", Status::from_bool(rep.holds));
    Ok(r)
}

/// Parses `name=value` pairs; names of eliminated coordinates are allowed
/// and ignored. Missing coordinates default to zero.
fn parse_point(text: &str, pres: &ChartPresentation) -> Result<Vec<Rat>> {
    let mut point = vec![Rat::zero(); pres.coordinates.len()];
    for tok in text.split_whitespace() {
        let (n, v) = tok
            .split_once('=')
            .ok_or_else(|| anyhow!(ncthick_core::Error::parse(1, 1, format!("expected `name=value`, got `{tok}`"))))?;
        let v: Rat = v
            .parse()
            .map_err(|_| anyhow!(ncthick_core::Error::parse(1, 1, format!("bad number `{v}`"))))?;
        match pres.coordinates.iter().position(|c| c == n) {
            Some(i) => point[i] = v,
            None if pres.eliminated.iter().any(|(e, _)| e == n) => {}
            None => bail!(ncthick_core::Error::parse(1, 1, format!("unknown coordinate `{n}`"))),
        }
    }
    Ok(point)
}

/// Truncated completion at a point: graded dimensions and whether the
/// completion is commutative.
pub fn complete(chart: &str, point: &str, raw: bool, t: Truncation) -> Result<Report> {
    let full = load_chart(chart, t)?;
    let pres = if raw { full } else { eliminate_linear(&full)? };
    let p = parse_point(point, &pres)?;
    let loc = complete_at_point(&pres, &p)?;
    let mut r = Report::new("complete", t.nc_degree, t.adic_degree);
    r.field("chart", pres.name());
    r.field("point", loc.point_text());
    if pres.is_free() {
        r.field("smooth", format!("free local algebra on {} generators", pres.coordinates.len()));
    }
    r.field("tangent dim", loc.tangent_dim());
    r.field("graded dims", join(loc.graded_dims()));
    let n = loc.coordinates.len();
    let commutative = (0..n).all(|i| {
        (i + 1..n).all(|j| loc.contains(&NcPoly::generator(i).commutator(&NcPoly::generator(j))))
    });
    r.field("commutative", if commutative { "yes" } else { "no" });
    Ok(r)
}

const HILB2_QUIVER: &str = include_str!("../../core/fixtures/hilb2.quiver");
const CHART_A: &str = include_str!("../../core/fixtures/chart_a.chart");
const CHART_B: &str = include_str!("../../core/fixtures/chart_b.chart");
const A_TO_B: &str = include_str!("../../core/fixtures/a_to_b.overlap");
const B_TO_A: &str = include_str!("../../core/fixtures/b_to_a.overlap");

const J_A: [&str; 4] = [
    "-b2 + a2*b3",
    "a2*b4 - b1*a2 - b2*a4",
    "b1 - b4 + a4*b3",
    "b2 + a4*b4 - b3*a2 - b4*a4",
];
const REDUCED_A: [&str; 2] = ["[a2, b1] + a2*[a4, b3]", "[a2, b3] + [a4, b1] + a4*[a4, b3]"];

/// Scalar representation of a chart at a point of its surviving coordinates.
fn rep_at(pres: &ChartPresentation, point: &[Rat]) -> Result<NCRepresentation> {
    let consts: Vec<NcPoly> = point.iter().map(|v| NcPoly::constant(v.clone())).collect();
    let values: Vec<Vec<Rat>> = pres
        .rep
        .matrices
        .iter()
        .map(|m| m.entries().iter().map(|e| e.substitute(&consts).constant_term()).collect())
        .collect();
    Ok(NCRepresentation::scalar(&pres.spec.quiver, pres.rep.ranks.clone(), &values)?)
}

/// The two-chart example of framed commuting pairs of 2×2 matrices, end to
/// end, with one PASS/FAIL line per golden value.
pub fn demo_hilb2(t: Truncation) -> Result<Report> {
    let mut r = Report::new("demo-hilb2", t.nc_degree, t.adic_degree);
    let qf = parse_quiver(HILB2_QUIVER)?;
    let a = load_chart(CHART_A, t)?;
    let b = load_chart(CHART_B, t)?;
    r.list("J_A", a.relation_texts());
    r.check("J_A generators", Status::from_bool(a.relation_texts() == J_A));
    r.check(
        "abelianization",
        Status::from_bool(abelianization_agrees(&a) && abelianization_agrees(&b)),
    );
    let ra = eliminate_linear(&a)?;
    let rb = eliminate_linear(&b)?;
    r.list("eliminated", rule_texts(&ra));
    r.check(
        "elimination",
        Status::from_bool(
            ra.coordinates == ["a2", "a4", "b1", "b3"] && rule_texts(&ra) == ["b2 = a2*b3", "b4 = b1 + a4*b3"],
        ),
    );
    r.field("quotient dims", join(ra.ideal().quotient_dims(&ra.algebra)));

    let ov_ab = parse_overlap(A_TO_B)?;
    let ov_ba = parse_overlap(B_TO_A)?;
    if t.adic_degree < 3 {
        r.skip("reduced ideal", "needs N >= 3");
        r.skip("explicit map", "needs N >= 3");
        r.notice("N < 3 truncates the cubic terms of the reduced generators");
    } else {
        let expected = REDUCED_A
            .iter()
            .map(|s| parse_nc(s, ra.generators()))
            .collect::<Result<Vec<_>, _>>()?;
        let theirs = Ideal::generate(&ra.algebra, &expected)?;
        r.check(
            "reduced ideal",
            Status::from_bool(ra.ideal().contains_ideal(&ra.algebra, &theirs) && theirs.contains_ideal(&ra.algebra, ra.ideal())),
        );
        let formulas = ov_ab.formulas(&ra)?;
        let mut ok = true;
        for i in 0..ov_ab.points.len() {
            let m = explicit_gluing(&ra, &rb, &ov_ab.hints(&ra, i)?, &formulas)?;
            ok &= m.report.ok();
        }
        r.check("explicit map", Status::from_bool(ok));
    }

    let ab = solve_gluing(&ra, &rb, &ov_ab.hints(&ra, 0)?)?;
    let ba = solve_gluing(&rb, &ra, &ov_ba.hints(&rb, 0)?)?;
    map_lines(&mut r, "solved map", &ab);
    r.check("solved map A->B", Status::from_bool(ab.report.ok()));
    r.check("solved map B->A", Status::from_bool(ba.report.ok()));
    let cyc = cocycle_defect(&[&ab, &ba])?;
    r.check(
        "gr identity",
        Status::from_bool(cyc.gr.iter().all(|g| g.is_identity())),
    );
    r.check("cocycle", Status::from_bool(cyc.holds));

    let theta = qf.theta.clone().unwrap_or_else(|| ThetaVector::from_ints(&[-2, 1]));
    let rep = rep_at(&ra, &ab.source.point)?;
    let st = king_stability(&qf.quiver, &rep, &theta, DEFAULT_SEARCH_SIZE)?;
    r.check("stable point", Status::from_bool(st == Stability::Stable));
    Ok(r)
}

/// The window quiver `Q_[p,q]` of a graded algebra, optionally with θ from
/// a Hilbert polynomial and the representation of a graded module.
pub fn window(
    algebra: &str,
    p: i64,
    q: i64,
    hilbert: Option<&[Rat]>,
    module: Option<&str>,
    t: Truncation,
) -> Result<Report> {
    let alg = parse_graded_algebra(algebra).context("reading graded algebra")?;
    let quiver = build_qpq(&alg, p, q)?;
    let mut r = Report::new("window", t.nc_degree, t.adic_degree);
    r.field("vertices", join(quiver.vertices()));
    r.field("arrows", quiver.arrows().len());
    r.field("relations", quiver.relations().len());
    r.list(
        "multiplicity by span",
        (1..=(q - p) as usize).map(|k| format!("{k}: {}", alg.dim(k))),
    );
    if let Some(coeffs) = hilbert {
        let (theta, dims) = theta_from_alpha(&HilbertPolynomial::new(coeffs.to_vec()), p, q)?;
        r.field("dims", join(&dims.0));
        r.field("theta", join(&theta.0));
        let pairing: Rat = theta.0.iter().zip(&dims.0).map(|(t, d)| t * &Rat::from_int(*d as i64)).sum();
        r.check("theta pairing", Status::from_bool(pairing.is_zero()));
    }
    if let Some(m) = module {
        let module = parse_graded_module(m, &alg).context("reading graded module")?;
        let rep = gamma_module(&module, &alg, &quiver, p, q)?;
        r.field("module dims", join(&rep.ranks));
        r.check("module relations", Status::Pass);
    }
    Ok(r)
}
