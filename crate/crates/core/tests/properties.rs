use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{rngs::StdRng, SeedableRng};

use tropnet::algebra::{
    groebner_with_trace, ideal_contains_one, multipoly_reduce, rat, IdealBasis, IdealDecision, Mat3, MultiPoly,
    Rational, Ring, StepBudget, UniPoly,
};
use tropnet::codec::{decode_multipoly, encode_multipoly, to_canonical_string};
use tropnet::latin::{canonical_form, enumerate_ols, GroupElement};
use tropnet::projective::{cross, ProjLine, ProjPoint};
use tropnet::tropical::{
    classify_line_symbolic, classify_point_symbolic, degeneration_t, trop_contains, trop_line_center,
    trop_point_location, TropLine,
};

fn small_rational() -> impl Strategy<Value = Rational> + Clone {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn small_int() -> impl Strategy<Value = Rational> + Clone {
    (-6i64..=6).prop_map(rat)
}

fn triple<S: Strategy<Value = Rational> + Clone>(s: S) -> impl Strategy<Value = [Rational; 3]> {
    [s.clone(), s.clone(), s]
}

fn unipoly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec((0u32..=6, -3i64..=3), 1..=3)
        .prop_map(|ts| UniPoly::from_terms(ts.into_iter().map(|(e, c)| (e, rat(c)))))
}

fn unipoly_matrix() -> impl Strategy<Value = Mat3<UniPoly>> {
    [[unipoly(), unipoly(), unipoly()], [unipoly(), unipoly(), unipoly()], [unipoly(), unipoly(), unipoly()]]
        .prop_map(Mat3::new)
        .prop_filter("singular", |m| !m.det().is_zero())
}

fn vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn multipoly(n: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=2, n), -4i64..=4), 0..=4)
        .prop_map(move |ts| MultiPoly::from_terms(&vars(n), ts.into_iter().map(|(m, c)| (m, rat(c)))))
}

fn nonzero(v: &[Rational; 3]) -> bool {
    v.iter().any(|x| !x.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn adjugate_identity(rows in [triple(small_rational()), triple(small_rational()), triple(small_rational())]) {
        let m = Mat3::new(rows);
        prop_assert_eq!(m.mul(&m.adjugate()), Mat3::identity().scale(&m.det()));
        prop_assert_eq!(m.adjugate().mul(&m), Mat3::identity().scale(&m.det()));
    }

    #[test]
    fn unipoly_degrees_add(a in unipoly(), b in unipoly()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let d = |p: &UniPoly| p.degree().finite().unwrap();
        prop_assert_eq!(d(&(a.clone() * b.clone())), d(&a) + d(&b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn incident_pairs_stay_incident_after_tropicalization(
        m in unipoly_matrix(),
        l in triple(small_int()),
        r in triple(small_int()),
    ) {
        let p = cross(&l, &r);
        prop_assume!(nonzero(&l) && nonzero(&p));
        let c = trop_line_center(&ProjLine(l), &m);
        let x = trop_point_location(&ProjPoint(p), &m);
        prop_assume!(c.is_ok() && x.is_ok());
        let line = TropLine { center: c.unwrap() };
        prop_assert!(trop_contains(&line, &x.unwrap()));
    }

    #[test]
    fn symbolic_classes_agree_with_direct_evaluation(v in triple(small_int())) {
        prop_assume!(nonzero(&v));
        let t = degeneration_t();
        for (pieces, direct) in [
            (classify_point_symbolic(&t), trop_point_location(&ProjPoint(v.clone()), &t)),
            (classify_line_symbolic(&t), trop_line_center(&ProjLine(v.clone()), &t)),
        ] {
            let hits: Vec<_> = pieces.iter().filter(|p| p.contains(&v)).collect();
            match direct {
                Ok(c) => {
                    prop_assert_eq!(hits.len(), 1);
                    prop_assert_eq!(hits[0].result, c);
                }
                Err(_) => prop_assert!(hits.is_empty()),
            }
        }
    }
}

proptest! {
    #[test]
    fn centers_ignore_scaling(l in triple(small_int()), k in small_rational()) {
        prop_assume!(nonzero(&l) && !k.is_zero());
        let t = degeneration_t();
        let scaled = l.clone().map(|x| x * k.clone());
        prop_assert_eq!(trop_line_center(&ProjLine(l.clone()), &t).ok(), trop_line_center(&ProjLine(scaled.clone()), &t).ok());
        prop_assert_eq!(trop_point_location(&ProjPoint(l), &t).ok(), trop_point_location(&ProjPoint(scaled), &t).ok());
    }

    #[test]
    fn unit_ideal_iff_constant_gcd(gens in prop::collection::vec(unipoly(), 1..=3)) {
        prop_assume!(gens.iter().all(|g| !g.is_zero()));
        let v = vars(1);
        let basis = IdealBasis {
            generators: gens.iter().map(|g| MultiPoly::from_univariate(&v, 0, g)).collect(),
            nonvanishing: Vec::new(),
        };
        let g = gens.iter().fold(UniPoly::zero(), |acc, p| acc.gcd(p));
        let unit = matches!(ideal_contains_one(&basis, &mut StepBudget::default()).unwrap(), IdealDecision::Trivial(_));
        prop_assert_eq!(unit, g.degree().finite() == Some(0));
    }

    #[test]
    fn reduction_stays_in_the_coset(p in multipoly(2), b in prop::collection::vec(multipoly(2), 1..=3)) {
        prop_assume!(b.iter().all(|g| !g.is_zero()));
        let r = multipoly_reduce(&p, &b).unwrap();
        let run = groebner_with_trace(&b, &mut StepBudget::default()).unwrap();
        let (rem, _) = run.reduce(&(p - r), &mut StepBudget::default()).unwrap();
        prop_assert!(rem.is_zero() || run.unit.is_some());
    }

    #[test]
    fn multipoly_json_round_trip(p in multipoly(3)) {
        let v = vars(3);
        let e = encode_multipoly(&p, &v);
        let back = decode_multipoly(&e, &v).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(to_canonical_string(&encode_multipoly(&back, &v)), to_canonical_string(&e));
    }
}

fn random_element(d: usize, rng: &mut StdRng) -> GroupElement {
    let mut perm = || {
        let mut v: Vec<usize> = (0..d).collect();
        v.shuffle(rng);
        v
    };
    let rows = perm();
    let cols = perm();
    let relabel_first = perm().into_iter().map(|v| v + 1).collect();
    let relabel_second = perm().into_iter().map(|v| v + 1).collect();
    GroupElement { rows, cols, relabel_first, relabel_second, swap: rand::Rng::gen(rng) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn canonical_form_is_constant_on_orbits(seed in any::<u64>(), d in 3usize..=4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let p = enumerate_ols(d).unwrap().remove(0);
        let g = random_element(d, &mut rng);
        prop_assert_eq!(canonical_form(&p.transform(&g)), p);
    }
}
