//! Randomized invariants: ring axioms, reduction idempotence, degree
//! additivity, base-change functoriality, scalar closure and round trips.

use proptest::prelude::*;

use morava_core::ahss::{run_to_collapse, Window};
use morava_core::coeff::{
    base_change, parse_presentation, print_presentation, reduce_mod, CoeffElement, CyclicSummand,
    IdealSpec, ModulePresentation, Ring, SummandDegree, Theory,
};
use morava_core::fgl::BzpRing;
use morava_core::palg::builders;

fn theories() -> Vec<Theory> {
    vec![
        Theory::bp(2).unwrap(),
        Theory::bp(3).unwrap(),
        Theory::p_n(1, 2).unwrap(),
        Theory::p_n(2, 3).unwrap(),
        Theory::morava_k(1, 2).unwrap(),
        Theory::bp_truncated(2, 2).unwrap(),
    ]
}

/// A random element: a handful of small monomials with small scalars.
fn arb_element(theory_idx: usize) -> impl Strategy<Value = CoeffElement> {
    let theory = theories()[theory_idx];
    let ring = Ring::new(theory);
    proptest::collection::vec(
        (
            proptest::collection::vec((1u32..=4, 0i64..=2), 0..3),
            -6i64..=6,
        ),
        0..4,
    )
    .prop_map(move |terms| {
        let mut out = ring.zero();
        for (mono, scalar) in terms {
            let mut m = ring.scalar(scalar);
            for (i, e) in mono {
                m = ring.mul(&m, &ring.v_pow(i, e));
            }
            out = ring.add(&out, &m);
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(
        idx in 0usize..6,
        seed_a in proptest::collection::vec((proptest::collection::vec((1u32..=4, 0i64..=2), 0..3), -6i64..=6), 0..4),
        seed_b in proptest::collection::vec((proptest::collection::vec((1u32..=4, 0i64..=2), 0..3), -6i64..=6), 0..4),
        seed_c in proptest::collection::vec((proptest::collection::vec((1u32..=4, 0i64..=2), 0..3), -6i64..=6), 0..4),
    ) {
        let theory = theories()[idx];
        let ring = Ring::new(theory);
        let build = |terms: &[(Vec<(u32, i64)>, i64)]| {
            let mut out = ring.zero();
            for (mono, scalar) in terms {
                let mut m = ring.scalar(*scalar);
                for (i, e) in mono {
                    m = ring.mul(&m, &ring.v_pow(*i, *e));
                }
                out = ring.add(&out, &m);
            }
            out
        };
        let (a, b, c) = (build(&seed_a), build(&seed_b), build(&seed_c));
        // commutativity, associativity, distributivity
        prop_assert_eq!(ring.mul(&a, &b), ring.mul(&b, &a));
        prop_assert_eq!(ring.mul(&ring.mul(&a, &b), &c), ring.mul(&a, &ring.mul(&b, &c)));
        prop_assert_eq!(
            ring.mul(&a, &ring.add(&b, &c)),
            ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c))
        );
        // unit and zero
        prop_assert_eq!(ring.mul(&ring.one(), &a), a.clone());
        prop_assert!(ring.mul(&ring.zero(), &a).is_zero());
        prop_assert!(ring.add(&a, &ring.neg(&a)).is_zero());
    }

    #[test]
    fn base_change_functorial(
        anns in proptest::collection::vec(0usize..6, 1..5),
        n in 1u32..=3,
    ) {
        // base_change(base_change(m, P(n)), K(n)) == base_change(m, K(n))
        let bp = Theory::bp(2).unwrap();
        let ring = Ring::new(bp);
        let ideals = [
            IdealSpec::I(0),
            IdealSpec::I(1),
            IdealSpec::I(2),
            IdealSpec::I(3),
            IdealSpec::JFrom(2),
            IdealSpec::Custom(vec![ring.v(2)]),
        ];
        let summands: Vec<CyclicSummand> = anns
            .iter()
            .enumerate()
            .map(|(k, &i)| CyclicSummand {
                generator: format!("g{}", k),
                degree: SummandDegree::FirstWeight(2 * k as i64, 0),
                annihilator: ideals[i].clone(),
            })
            .collect();
        let m = ModulePresentation::new(bp, summands).unwrap();
        let direct = base_change(&m, Theory::morava_k(n, 2).unwrap()).unwrap();
        let through_p = base_change(
            &base_change(&m, Theory::p_n(n, 2).unwrap()).unwrap(),
            Theory::morava_k(n, 2).unwrap(),
        )
        .unwrap();
        prop_assert_eq!(direct, through_p);
    }
}

proptest! {
    #[test]
    fn reduce_mod_idempotent(idx in 0usize..2, e in arb_element(0), n in 0u32..=3) {
        // reducing BP elements; idx selects I(n) vs J(n+1)
        let ideal = if idx == 0 { IdealSpec::I(n) } else { IdealSpec::JFrom(n + 1) };
        let once = reduce_mod(&e, &ideal).unwrap();
        let twice = reduce_mod(&once, &ideal).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn degree_additive_on_homogeneous(
        i in 1u32..=4, j in 1u32..=4, e1 in 1i64..=3, e2 in 1i64..=3,
    ) {
        let ring = Ring::new(Theory::bp(2).unwrap());
        let a = ring.v_pow(i, e1);
        let b = ring.v_pow(j, e2);
        let prod = ring.mul(&a, &b);
        if !prod.is_zero() {
            prop_assert_eq!(
                prod.degree().unwrap(),
                a.degree().unwrap() + b.degree().unwrap()
            );
        }
    }

    #[test]
    fn scalars_stay_p_local(a in arb_element(0), b in arb_element(0)) {
        // sums and products of p-local scalars keep p-free denominators
        let ring = Ring::new(Theory::bp(2).unwrap());
        for x in [ring.add(&a, &b), ring.mul(&a, &b)] {
            for (_, c) in x.terms() {
                prop_assert!(c.denominator_p_free(2));
            }
        }
    }

    #[test]
    fn presentation_round_trip(
        anns in proptest::collection::vec(0usize..7, 0..5),
        theory_idx in 0usize..3,
        chow in proptest::bool::ANY,
    ) {
        let theory = [
            Theory::bp(2).unwrap(),
            Theory::bp(3).unwrap(),
            Theory::p_n(1, 2).unwrap(),
        ][theory_idx];
        let ring = Ring::new(theory);
        let ideals = [
            IdealSpec::I(0),
            IdealSpec::I(1),
            IdealSpec::I(2),
            IdealSpec::I(3),
            IdealSpec::JFrom(2),
            IdealSpec::IInfinity,
            IdealSpec::Custom(vec![ring.v(2)]),
        ];
        let summands: Vec<CyclicSummand> = anns
            .iter()
            .enumerate()
            .map(|(k, &i)| CyclicSummand {
                generator: format!("g{}", k),
                degree: if chow {
                    SummandDegree::Chow(k as i64)
                } else {
                    SummandDegree::FirstWeight(2 * k as i64, 2)
                },
                annihilator: ideals[i].normalize_in(theory),
            })
            .collect();
        if let Ok(m) = ModulePresentation::new(theory, summands) {
            let text = print_presentation(&m);
            let parsed = parse_presentation(&text).unwrap();
            prop_assert_eq!(&parsed, &m);
            prop_assert_eq!(print_presentation(&parsed), text);
        }
    }

    #[test]
    fn random_free_q_modules_collapse_to_the_top_quotient(
        p_idx in 0usize..2,
        n in 2u32..=3,
        degrees in proptest::collection::vec((0i64..6, 0i64..3), 1..4),
    ) {
        // a free module over Lambda(Q_0..Q_{n-1}) always collapses to
        // summands annihilated by exactly the image of I(n)
        let p = [2u32, 3][p_idx];
        let names: Vec<String> = (0..degrees.len()).map(|i| format!("b{}", i)).collect();
        let labels: Vec<(&str, (i64, i64))> = names
            .iter()
            .zip(&degrees)
            .map(|(name, &(m, w))| (name.as_str(), (2 * m, m + w)))
            .collect();
        let algebra = builders::synthetic_q_module(p, n, &labels);
        let rules: Vec<u32> = (1..n).collect();
        let win = Window::new(140, 2 * (p as i64).pow(n), 0);
        let report =
            run_to_collapse(&algebra, Theory::p_n(1, p).unwrap(), &rules, win, false).unwrap();
        prop_assert_eq!(report.presentation.rank(), 2 * labels.len());
        for s in &report.presentation.summands {
            prop_assert_eq!(&s.annihilator, &IdealSpec::I(n));
        }
    }

    #[test]
    fn normal_form_idempotent_and_degree_preserving(
        p_idx in 0usize..2,
        k in 0u32..8,
        coef_v in 0u32..=2,
    ) {
        let p = [2u32, 3][p_idx];
        let q = BzpRing::new(Theory::p_n(1, p).unwrap(), 16).unwrap();
        let coeff = if coef_v == 0 { q.ring().one() } else { q.ring().v_pow(1, coef_v as i64) };
        let poly = q.monomial(coeff, k);
        let nf = q.normal_form(&poly);
        prop_assert_eq!(q.normal_form(&nf), nf.clone());
        let degree = poly
            .terms()
            .next()
            .map(|(e, c)| c.degree().unwrap() + 2 * e as i64);
        if let Some(d) = degree {
            prop_assert!(nf.is_homogeneous_of_degree(d));
        }
    }
}
