use ncthick_core::charts::{
    cocycle_defect, complete_at_point, eliminate_linear, explicit_gluing, relations_ideal, solve_gluing,
    ChartPresentation,
};
use ncthick_core::format::{parse_chart, parse_overlap, OverlapFile};
use ncthick_core::ncalg::{parse_nc, Ideal};
use ncthick_core::Rat;

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn chart(name: &str, d: usize, n: usize) -> ChartPresentation {
    relations_ideal(&parse_chart(&fixture(name)).unwrap(), d, n).unwrap()
}

fn reduced(name: &str, d: usize, n: usize) -> ChartPresentation {
    eliminate_linear(&chart(name, d, n)).unwrap()
}

fn overlap(name: &str) -> OverlapFile {
    parse_overlap(&fixture(name)).unwrap()
}

#[test]
fn chart_a_generators_in_canonical_form() {
    let a = chart("chart_a.chart", 3, 5);
    assert_eq!(
        a.relation_texts(),
        vec![
            "-b2 + a2*b3",
            "a2*b4 - b1*a2 - b2*a4",
            "b1 - b4 + a4*b3",
            "b2 + a4*b4 - b3*a2 - b4*a4",
        ]
    );
}

#[test]
fn elimination_of_chart_a() {
    let a = reduced("chart_a.chart", 3, 5);
    assert_eq!(a.coordinates, vec!["a2", "a4", "b1", "b3"]);
    let rules: Vec<String> = a
        .eliminated
        .iter()
        .map(|(n, e)| format!("{n} = {}", e.display(&a.coordinates)))
        .collect();
    assert_eq!(rules, vec!["b2 = a2*b3", "b4 = b1 + a4*b3"]);
    let gens = a.generators();
    let expected = [
        parse_nc("[a2, b1] + a2*[a4, b3]", gens).unwrap(),
        parse_nc("[a2, b3] + [a4, b1] + a4*[a4, b3]", gens).unwrap(),
    ];
    let theirs = Ideal::generate(&a.algebra, &expected).unwrap();
    assert!(a.ideal().contains_ideal(&a.algebra, &theirs));
    assert!(theirs.contains_ideal(&a.algebra, a.ideal()));
}

#[test]
fn elimination_of_chart_b() {
    let b = reduced("chart_b.chart", 2, 4);
    assert_eq!(b.coordinates, vec!["a1'", "a3'", "b2'", "b4'"]);
    let gens = b.generators();
    let expected = [
        parse_nc("[b2', a1'] + b2'*[b4', a3']", gens).unwrap(),
        parse_nc("[b2', a3'] + [b4', a1'] + b4'*[b4', a3']", gens).unwrap(),
    ];
    let theirs = Ideal::generate(&b.algebra, &expected).unwrap();
    assert!(b.ideal().same_as(&theirs));
}

#[test]
fn explicit_map_a_to_b() {
    let (a, b) = (reduced("chart_a.chart", 3, 5), reduced("chart_b.chart", 3, 5));
    let ov = overlap("a_to_b.overlap");
    for which in 0..2 {
        let hints = ov.hints(&a, which).unwrap();
        let map = explicit_gluing(&a, &b, &hints, &ov.formulas(&a).unwrap()).unwrap();
        assert!(map.report.ok(), "{:?}", map.report);
        assert_eq!(map.report.relations_preserved.len(), 2);
        assert_eq!(map.report.global_abelianization.len(), 4);
    }
}

#[test]
fn solved_map_a_to_b_verifies() {
    let (a, b) = (reduced("chart_a.chart", 2, 4), reduced("chart_b.chart", 2, 4));
    let ov = overlap("a_to_b.overlap");
    let hints = ov.hints(&a, 0).unwrap();
    let map = solve_gluing(&a, &b, &hints).unwrap();
    assert!(map.report.ok(), "{:?}", map.report);
    assert_eq!(map.target.point, vec![Rat::from_int(2), Rat::from_int(-1), Rat::from_int(-5), Rat::from_int(5)]);
}

#[test]
fn self_gluing_is_identity() {
    let a = reduced("chart_a.chart", 2, 4);
    let ov = overlap("a_to_a.overlap");
    let map = solve_gluing(&a, &a, &ov.hints(&a, 0).unwrap()).unwrap();
    for (i, im) in map.images.iter().enumerate() {
        assert_eq!(*im, ncthick_core::ncalg::NcPoly::generator(i));
    }
}

#[test]
fn three_chart_cycle() {
    let (d, n) = (2, 4);
    let (a, b, c) = (
        reduced("chart_a.chart", d, n),
        reduced("chart_b.chart", d, n),
        reduced("chart_c.chart", d, n),
    );
    let ab = solve_gluing(&a, &b, &overlap("a_to_b.overlap").hints(&a, 0).unwrap()).unwrap();
    let bc = solve_gluing(&b, &c, &overlap("b_to_c.overlap").hints(&b, 0).unwrap()).unwrap();
    let ca = solve_gluing(&c, &a, &overlap("c_to_a.overlap").hints(&c, 0).unwrap()).unwrap();
    for m in [&ab, &bc, &ca] {
        assert!(m.report.ok(), "{:?}", m.report);
    }
    let rep = cocycle_defect(&[&ab, &bc, &ca]).unwrap();
    for g in &rep.gr {
        assert!(g.is_identity(), "level {}", g.level);
    }
    assert!(rep.holds);
    assert_eq!(rep.first_defect, None);
}

#[test]
fn quotient_dims_of_reduced_chart_a() {
    let a = reduced("chart_a.chart", 3, 5);
    assert_eq!(a.ideal().quotient_dims(&a.algebra), vec![1, 4, 14, 48, 164, 468]);
}

#[test]
fn origin_of_chart_a() {
    let a = reduced("chart_a.chart", 3, 3);
    let loc = complete_at_point(&a, &[Rat::zero(), Rat::zero(), Rat::zero(), Rat::zero()]).unwrap();
    assert_eq!(loc.graded_dims(), vec![1, 4, 14, 48]);
    let full = chart("chart_a.chart", 3, 3);
    let loc6 = complete_at_point(&full, &vec![Rat::zero(); 6]).unwrap();
    assert_eq!(loc6.tangent_dim(), 4);
    assert_eq!(loc.graded_dims(), loc6.graded_dims());
}
