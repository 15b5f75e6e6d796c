use std::sync::Arc;

use proptest::prelude::*;

use flab_core::hypercenter::{hypercenter_random, is_f_central, FormationCentrality, Method};
use flab_core::intersections::o_pi_prime_up;
use flab_core::series::{all_chief_factors, upper_central_series};
use flab_core::{parse_group, Analysis, Caps, FormationExpr, SubgroupFunctor};

const GROUPS: &[&str] = &[
    "C1",
    "C12",
    "S3",
    "D8",
    "Q8",
    "A4",
    "D10",
    "C2 x C6",
    "sd(C5,C4,[a^2])",
    "sd(C7,C3,[a^2])",
    "S4",
    "SL(2,3)",
    "S3 x C5",
    "A4 x C3",
    "sd(E(2^2),S3,[b,a;b,a*b])",
    "sd(E(3^2),C4,[b,a^2])",
    "D8 x S3",
    "A5",
    "sd(E(3^2),Q8,[a*b,a*b^2;b,a^2])",
    "S4 x C3",
];

const FORMATIONS: &[&str] = &[
    "N",
    "U",
    "Gpi{2,3}",
    "Gpi{2}",
    "cross[{2,3};{5}]",
    "cross[{2,5};{3,7}]",
    "N^2",
    "Sol",
    "Spi{2,3}",
];

fn analysis(i: usize) -> Arc<Analysis> {
    use std::sync::OnceLock;
    static CACHE: OnceLock<Vec<Arc<Analysis>>> = OnceLock::new();
    CACHE.get_or_init(|| {
        GROUPS
            .iter()
            .map(|s| Arc::new(Analysis::from_group(parse_group(s).unwrap()).unwrap()))
            .collect()
    })[i]
        .clone()
}

fn formation(i: usize) -> FormationExpr {
    FormationExpr::parse(FORMATIONS[i]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hypercenter_is_independent_of_series_choice(g in 0..GROUPS.len(), f in 0..FORMATIONS.len(), seed in any::<u64>()) {
        let a = analysis(g);
        let f = formation(f);
        let z = a.hypercenter(&f, Method::Auto).unwrap();
        let test = FormationCentrality { formation: &f, method: Method::Auto, caps: a.caps() };
        prop_assert_eq!(hypercenter_random(a.cayley(), &test, seed).unwrap(), z);
    }

    #[test]
    fn hypercenter_sits_below_int_below_ni(g in 0..GROUPS.len(), f in 0..FORMATIONS.len()) {
        let a = analysis(g);
        let f = formation(f);
        let z = a.hypercenter(&f, Method::Auto).unwrap();
        let int = a.int_f(&f);
        let ni = a.ni_f(&f);
        prop_assert!(z.is_subgroup_of(&int));
        prop_assert!(int.is_subgroup_of(&ni));
        prop_assert_eq!(o_pi_prime_up(a.cayley(), &ni, &f), int);
    }

    #[test]
    fn local_and_oracle_agree(g in 0..GROUPS.len(), f in 0..6usize) {
        let a = analysis(g);
        let f = formation(f);
        for factor in all_chief_factors(a.lattice()) {
            let v = is_f_central(&f, a.cayley(), &factor, Method::Both, Caps::default());
            prop_assert!(v.is_ok(), "{:?}", v.err());
        }
    }

    #[test]
    fn si_with_sylow_is_contained_in_si_with_maximal_subnormality(g in 0..GROUPS.len(), f in 0..6usize) {
        let a = analysis(g);
        let f = formation(f);
        let z = a.hypercenter(&f, Method::Auto).unwrap();
        for sigma in [SubgroupFunctor::Sylow, SubgroupFunctor::CyclicPrimary] {
            prop_assert!(z.is_subgroup_of(&a.si_sigma(&f, &sigma)));
        }
    }
}

#[test]
fn nilpotent_hypercenter_is_the_upper_central_limit() {
    for (i, name) in GROUPS.iter().enumerate() {
        let a = analysis(i);
        let limit = upper_central_series(a.cayley()).pop().unwrap();
        assert_eq!(
            a.hypercenter(&FormationExpr::Nil, Method::Auto).unwrap(),
            limit,
            "{name}"
        );
        assert_eq!(a.sylow_normalizer_intersection(), limit, "{name}");
    }
}
