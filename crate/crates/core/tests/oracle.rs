mod common;

use autoarc::arc::GeneratorSource;
use common::{series_expansion, CORPUS};

#[test]
fn corpus_arc_equations_match_truncated_series() {
    for e in CORPUS {
        let s = e.system();
        let family = e.family();
        let oracle = series_expansion(&family, e.order, s.full_ring());
        let generated: Vec<_> = s.raw_generators().iter().filter(|g| g.source == GeneratorSource::Family).collect();
        assert_eq!(generated.len(), family.polys().len() * (e.order + 1), "{}", e.name);
        for g in generated {
            assert_eq!(g.poly, oracle[g.equation - 1][g.basis_index - 1], "{} eq {} t^{}", e.name, g.equation, g.basis_index - 1);
        }
    }
}

#[test]
fn linear_parameter_is_a_graph_over_the_hom_scheme() {
    // for f(x) - t the top coefficient solves the endomorphism variable,
    // so dim A_Z(Y) = dim Hom(Z, X) + order
    for (name, order) in [("cubic-dual", 1), ("node-dual", 1), ("node-versal-2", 2)] {
        let e = common::entry(name);
        let s = e.system();
        let central = e.family().central_fiber().unwrap();
        let hom = autoarc::arc::build_hom_system(&central, s.fat_point()).unwrap();
        assert_eq!(s.dimension().unwrap(), hom.dimension().unwrap() + order as i64, "{name}");
    }
}
