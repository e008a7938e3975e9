use std::sync::OnceLock;

use ncthick_core::ncalg::{Algebra, AlgebraContext, Generators, Ideal, NcPoly, Word};
use ncthick_core::quiver::{generated_subrep, theta_pairing, NCRepresentation, QuiverPresentation, Subrep};
use ncthick_core::sheaf_bridge::{theta_from_alpha, HilbertPolynomial};
use ncthick_core::Rat;
use proptest::prelude::*;

fn algebra() -> &'static Algebra {
    static ALG: OnceLock<Algebra> = OnceLock::new();
    ALG.get_or_init(|| Algebra::new(AlgebraContext::plain(&["x", "y"], 2, 4).unwrap()))
}

fn poly() -> impl Strategy<Value = NcPoly> {
    prop::collection::vec((prop::collection::vec(0usize..2, 0..4), -3i64..=3), 0..5).prop_map(|terms| {
        NcPoly::from_terms(
            terms
                .into_iter()
                .map(|(w, c)| (Word::from_letters(&w), Rat::from_int(c))),
        )
    })
}

fn quiver() -> QuiverPresentation {
    QuiverPresentation::from_names(&["d", "s"], &[("f", "d", "s"), ("x", "s", "s"), ("y", "s", "s")]).unwrap()
}

fn rep() -> impl Strategy<Value = NCRepresentation> {
    (
        prop::collection::vec(-2i64..=2, 3),
        prop::collection::vec(-2i64..=2, 9),
        prop::collection::vec(-2i64..=2, 9),
    )
        .prop_map(|(f, x, y)| {
            let r = |v: Vec<i64>| v.into_iter().map(Rat::from_int).collect::<Vec<_>>();
            NCRepresentation::scalar(&quiver(), vec![1, 3], &[r(f), r(x), r(y)]).unwrap()
        })
}

fn seed() -> impl Strategy<Value = (usize, Vec<Rat>)> {
    prop_oneof![
        (-2i64..=2).prop_map(|c| (0, vec![Rat::from_int(c)])),
        prop::collection::vec(-2i64..=2, 3).prop_map(|v| (1, v.into_iter().map(Rat::from_int).collect())),
    ]
}

fn contained(a: &Subrep, b: &Subrep) -> bool {
    a.spaces
        .iter()
        .zip(&b.spaces)
        .all(|(x, y)| x.rows().iter().all(|r| y.contains(r)))
}

fn seeds_of(s: &Subrep) -> Vec<(usize, Vec<Rat>)> {
    s.spaces
        .iter()
        .enumerate()
        .flat_map(|(v, e)| {
            let n = e.ncols();
            e.rows()
                .iter()
                .map(move |r| (v, (0..n as u32).map(|c| r.get(c)).collect()))
                .collect::<Vec<_>>()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_multiplicative(a in poly(), b in poly()) {
        let alg = algebra();
        let lhs = alg.normal_form(&(&a * &b));
        let rhs = alg.mul(&alg.normal_form(&a), &alg.normal_form(&b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_form_is_idempotent(a in poly()) {
        let alg = algebra();
        let nf = alg.normal_form(&a);
        prop_assert_eq!(alg.normal_form(&nf), nf);
    }

    #[test]
    fn abelianization_is_a_ring_map(a in poly(), b in poly()) {
        let gens = Generators::plain(&["x", "y"]).unwrap();
        prop_assert_eq!(gens.abelianize(&(&a * &b)), &gens.abelianize(&a) * &gens.abelianize(&b));
        prop_assert_eq!(gens.abelianize(&(&a + &b)), &gens.abelianize(&a) + &gens.abelianize(&b));
    }

    #[test]
    fn ideal_ignores_generator_order(gens in prop::collection::vec(poly(), 1..4), k in 0usize..4) {
        let alg = algebra();
        let mut rotated = gens.clone();
        rotated.rotate_left(k % gens.len());
        rotated.reverse();
        let a = Ideal::generate(alg, &gens).unwrap();
        let b = Ideal::generate(alg, &rotated).unwrap();
        prop_assert!(a.same_as(&b));
    }

    #[test]
    fn ideal_contains_its_generators(gens in prop::collection::vec(poly(), 1..3), u in poly(), v in poly()) {
        let alg = algebra();
        let i = Ideal::generate(alg, &gens).unwrap();
        for g in &gens {
            prop_assert!(i.contains(alg, &(&(&u * g) * &v)));
        }
    }

    #[test]
    fn generated_subrep_is_monotone(r in rep(), s1 in prop::collection::vec(seed(), 0..3), s2 in prop::collection::vec(seed(), 0..3)) {
        let q = quiver();
        let small = generated_subrep(&q, &r, &s1).unwrap();
        let mut all = s1.clone();
        all.extend(s2);
        let large = generated_subrep(&q, &r, &all).unwrap();
        prop_assert!(contained(&small, &large));
    }

    #[test]
    fn generated_subrep_is_idempotent(r in rep(), s in prop::collection::vec(seed(), 0..3)) {
        let q = quiver();
        let once = generated_subrep(&q, &r, &s).unwrap();
        let twice = generated_subrep(&q, &r, &seeds_of(&once)).unwrap();
        prop_assert!(contained(&once, &twice) && contained(&twice, &once));
    }

    #[test]
    fn theta_from_alpha_pairs_to_zero(c in prop::collection::vec(0i64..5, 1..4), p in 0i64..4, span in 1i64..6) {
        let alpha = HilbertPolynomial::new(c.into_iter().map(Rat::from_int).collect());
        let (theta, dims) = theta_from_alpha(&alpha, p, p + span).unwrap();
        prop_assert!(theta_pairing(&theta, &dims).unwrap().is_zero());
    }
}
