mod common;

use std::collections::HashMap;
use std::sync::Arc;

use proptest::prelude::*;

use autoarc::arc::{build_arc_system, DeformationFamily};
use autoarc::fatpoint::FatPoint;
use autoarc::homology::cohen_macaulay_report;
use autoarc::module::{FreeModuleElement, Submodule};
use autoarc::{groebner_basis, CoefficientField, Ideal, Monomial, MonomialOrder, PolyRing, Polynomial};

fn ring(field: CoefficientField) -> Arc<PolyRing> {
    PolyRing::new(&["x", "y", "z"], field, MonomialOrder::Degrevlex).unwrap()
}

fn fields() -> impl Strategy<Value = CoefficientField> {
    prop_oneof![Just(CoefficientField::Rationals), Just(CoefficientField::PrimeField(7))]
}

type RawPoly = Vec<([u16; 3], i64)>;

fn raw_poly(max_deg: u16, max_terms: usize) -> impl Strategy<Value = RawPoly> {
    prop::collection::vec(([0..=max_deg, 0..=max_deg, 0..=max_deg], -4i64..=4), 0..=max_terms)
}

fn build(r: &Arc<PolyRing>, raw: &RawPoly) -> Polynomial {
    let terms = raw.iter().map(|(e, c)| (Monomial::from_exponents(e), r.field().from_i64(*c))).collect();
    Polynomial::from_terms(r, terms)
}

fn ideal_gens(r: &Arc<PolyRing>, raws: &[RawPoly]) -> Vec<Polynomial> {
    raws.iter().map(|p| build(r, p)).filter(|p| !p.is_zero()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(field in fields(), a in raw_poly(3, 4), b in raw_poly(3, 4), c in raw_poly(3, 4)) {
        let r = ring(field);
        let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&Polynomial::one(&r)), a.clone());
    }

    #[test]
    fn substitution_is_a_homomorphism(field in fields(), a in raw_poly(2, 4), b in raw_poly(2, 4), img in raw_poly(2, 3)) {
        let r = ring(field);
        let (a, b) = (build(&r, &a), build(&r, &b));
        let binding = HashMap::from([("x".to_string(), build(&r, &img))]);
        let s = |p: &Polynomial| p.substitute(&binding, &r).unwrap();
        prop_assert_eq!(s(&a.mul(&b)), s(&a).mul(&s(&b)));
        prop_assert_eq!(s(&a.add(&b)), s(&a).add(&s(&b)));
    }

    #[test]
    fn leibniz_rule(field in fields(), a in raw_poly(3, 4), b in raw_poly(3, 4), v in 0usize..3) {
        let r = ring(field);
        let (a, b) = (build(&r, &a), build(&r, &b));
        let lhs = a.mul(&b).derivative(v);
        let rhs = a.derivative(v).mul(&b).add(&a.mul(&b.derivative(v)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn groebner_basis_is_deterministic(field in fields(), raws in prop::collection::vec(raw_poly(2, 3), 1..=3)) {
        let r = ring(field);
        let gens = ideal_gens(&r, &raws);
        let a = groebner_basis(&gens, &r).unwrap();
        let mut reversed = gens.clone();
        reversed.reverse();
        let b = groebner_basis(&reversed, &r).unwrap();
        prop_assert_eq!(a.elements(), b.elements());
        for g in &gens {
            prop_assert!(a.reduces_to_zero(g));
        }
    }

    #[test]
    fn membership_and_normal_forms(
        field in fields(),
        raws in prop::collection::vec(raw_poly(2, 3), 1..=3),
        mults in prop::collection::vec(raw_poly(2, 3), 3),
        extra in raw_poly(3, 4),
    ) {
        let r = ring(field);
        let gens = ideal_gens(&r, &raws);
        let ideal = Ideal::new(&r, gens.clone()).unwrap();
        let combo = gens.iter().zip(&mults).fold(Polynomial::zero(&r), |acc, (g, m)| acc.add(&g.mul(&build(&r, m))));
        prop_assert!(ideal.contains(&combo).unwrap());
        let f = build(&r, &extra);
        let nf = ideal.normal_form(&f).unwrap();
        prop_assert_eq!(ideal.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(ideal.contains(&f.sub(&nf)).unwrap());
        prop_assert_eq!(ideal.contains(&f).unwrap(), nf.is_zero());
    }

    #[test]
    fn saturation_is_idempotent(field in fields(), raws in prop::collection::vec(raw_poly(2, 3), 1..=2), v in 0usize..3) {
        let r = ring(field);
        let ideal = Ideal::new(&r, ideal_gens(&r, &raws)).unwrap();
        let f = Polynomial::var_by_index(&r, v);
        let once = ideal.saturate(&f).unwrap();
        let twice = once.saturate(&f).unwrap();
        prop_assert!(once.equals(&twice).unwrap());
        prop_assert!(once.contains_ideal(&ideal).unwrap());
    }

    #[test]
    fn syzygies_are_relations(field in fields(), raws in prop::collection::vec(raw_poly(2, 3), 2..=3)) {
        let r = ring(field);
        let gens: Vec<FreeModuleElement> = ideal_gens(&r, &raws).into_iter().map(|g| FreeModuleElement::new(vec![g])).collect();
        let m = Submodule::new(&r, 1, gens).unwrap();
        let syz = m.syzygies().unwrap();
        for s in syz.generators() {
            let total = s
                .components()
                .iter()
                .zip(m.generators())
                .fold(Polynomial::zero(&r), |acc, (c, g)| acc.add(&c.mul(&g.components()[0])));
            prop_assert!(total.is_zero());
        }
    }

    #[test]
    fn depth_is_at_most_dimension(field in fields(), monos in prop::collection::vec([0u16..=2, 0u16..=2, 0u16..=2], 1..=3)) {
        let r = ring(field);
        let gens: Vec<Polynomial> = monos
            .iter()
            .map(|e| Polynomial::monomial(&r, Monomial::from_exponents(e), field.one()))
            .collect();
        let ideal = Ideal::new(&r, gens).unwrap();
        let report = cohen_macaulay_report(&ideal).unwrap();
        if report.dimension >= 0 {
            prop_assert!(report.depth as i64 <= report.dimension);
        }
    }

    #[test]
    fn linear_jets_are_consistent(n in 0usize..6, field in fields()) {
        let z = FatPoint::linear_jet(n, field).unwrap();
        prop_assert_eq!(z.length(), n + 1);
        prop_assert!(z.multiplication_table_check());
        prop_assert!(z.agrees_with_groebner().unwrap());
    }

    #[test]
    fn arc_systems_are_deterministic(seed in any::<u64>(), n in 1usize..=3) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let family: DeformationFamily = common::random_family(&mut rng, CoefficientField::Rationals);
        let z = FatPoint::linear_jet(n, CoefficientField::Rationals).unwrap();
        let a = build_arc_system(&family, &z).unwrap();
        let b = build_arc_system(&family, &z).unwrap();
        prop_assert_eq!(a.alias_map(), b.alias_map());
        prop_assert_eq!(a.ideal().generators(), b.ideal().generators());
        let s = family.polys().len() + z.germ_ideal().generators().len();
        prop_assert_eq!(a.raw_generators().len(), s * z.length());
    }
}

#[test]
fn germ_jets_are_consistent() {
    let r = PolyRing::new(&["x", "y"], CoefficientField::Rationals, MonomialOrder::Degrevlex).unwrap();
    for germ in ["y^2 - x^3", "x*y", "y - x^2"] {
        let g = Ideal::parse(&r, &[germ]).unwrap();
        for n in 1..=4 {
            let z = FatPoint::germ_jet(&g, n).unwrap();
            assert!(z.multiplication_table_check(), "{germ} at order {n}");
            assert!(z.agrees_with_groebner().unwrap(), "{germ} at order {n}");
            assert!(z.basis()[0].is_one());
        }
    }
}
