//! Hand-computed values on small groups.

use flab_core::hypercenter::Method;
use flab_core::{parse_group, Analysis, FormationExpr, SubgroupFunctor};

fn an(spec: &str) -> Analysis {
    Analysis::from_group(parse_group(spec).unwrap()).unwrap()
}

fn f(s: &str) -> FormationExpr {
    FormationExpr::parse(s).unwrap()
}

fn z(a: &Analysis, form: &str) -> usize {
    a.hypercenter(&f(form), Method::Auto).unwrap().order()
}

#[test]
fn hypercenters() {
    // S3: no central factor for N; both factors are cyclic so U sees everything.
    let s3 = an("S3");
    assert_eq!(z(&s3, "N"), 1);
    assert_eq!(z(&s3, "U"), 6);
    assert_eq!(z(&s3, "Gpi{2,3}"), 6);
    assert_eq!(z(&s3, "Gpi{2}"), 1);
    // A4: V4 is irreducible under C3.
    let a4 = an("A4");
    assert_eq!(z(&a4, "U"), 1);
    assert_eq!(z(&a4, "N^2"), 12);
    // Q8 is nilpotent.
    assert_eq!(z(&an("Q8"), "N"), 8);
    // S3 x C5: C5 is central, and S3 x C5 lies in cross[{2,3};{5}].
    let g = an("S3 x C5");
    assert_eq!(z(&g, "N"), 5);
    assert_eq!(z(&g, "cross[{2,3};{5}]"), 30);
    // Frobenius group of order 20: C5 is acted on by C4.
    let fr = an("sd(C5,C4,[a^2])");
    assert_eq!(z(&fr, "cross[{2,3};{5}]"), 1);
    assert_eq!(z(&fr, "U"), 20);
    // A5 has only the trivial hypercenter for soluble classes.
    assert_eq!(z(&an("A5"), "Sol"), 1);
}

#[test]
fn intersections_on_s4() {
    let a = an("S4");
    let n = f("N");
    // The maximal nilpotent subgroups include D8 and C3, which meet trivially.
    assert_eq!(a.int_f(&n).order(), 1);
    assert_eq!(a.ni_f(&n).order(), 1);
    assert_eq!(a.frattini().order(), 1);
    // U-abnormal maximal subgroups are S3 (index 4); their intersection is 1.
    assert_eq!(a.delta_f(&f("U")).order(), 1);
    assert_eq!(a.si_sigma(&n, &SubgroupFunctor::Sylow).order(), 1);
}

#[test]
fn empty_family_gives_the_whole_group() {
    // An F-group has no F-abnormal maximal subgroups and is its own F-maximal subgroup.
    let a = an("Q8");
    assert_eq!(a.delta_f(&f("N")).order(), 8);
    let c7 = an("C7");
    assert_eq!(a.int_f(&f("N")).order(), 8);
    assert_eq!(c7.ni_f(&f("Gpi{2}")).order(), 7);
}

#[test]
fn supersoluble_subnormalizers_exceed_the_hypercenter() {
    let a = an("sd(E(7^2),S3,[b,a;b,a^6*b^6])");
    let u = f("U");
    assert_eq!(a.hypercenter(&u, Method::Auto).unwrap().order(), 1);
    assert_eq!(a.si_sigma(&u, &SubgroupFunctor::Sylow).order(), 294);
}

#[test]
fn gpi_needs_the_pi_prime_correction() {
    // For Gpi{2,3} on S3 x C5, NI is everything while Int is the {2,3}-part.
    let a = an("S3 x C5");
    let g = f("Gpi{2,3}");
    assert_eq!(a.ni_f(&g).order(), 30);
    assert_eq!(a.int_f(&g).order(), 6);
}
