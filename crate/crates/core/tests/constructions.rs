//! Integration tests for the explicit surjection constructions: the full
//! parameter map, the two restricted variants, linear changes, projection
//! actions, composition, restriction, and conjugation.

use std::collections::BTreeMap;

use affine_image_core::surjection::{pure_powers_schedule, theorem_main_schedule};
use affine_image_core::*;

fn wring(n: usize) -> RingContext {
    RingContext::new((1..=n).map(|i| format!("w{i}")).collect()).unwrap()
}

fn cubic_curve() -> TargetVariety {
    TargetVariety::from_sources(&wring(3), &["w2^2 - w3^3 - w3"]).unwrap()
}

fn expect_map(domain: &RingContext, codomain: &RingContext, coords: &[&str]) -> PolynomialMap {
    let cs = coords
        .iter()
        .map(|s| parse_polynomial(s, domain).unwrap())
        .collect();
    PolynomialMap::new(domain, codomain, cs).unwrap()
}

#[test]
fn full_surjection_of_the_cubic() {
    let z = cubic_curve();
    let psi = full_surjection(&z).unwrap();
    assert_eq!(psi.domain().variables(), &["a1", "a2", "c1", "b1", "b2"]);
    let expected = expect_map(
        psi.domain(),
        z.ring(),
        &[
            "1 + c1*(a1^2 - a2^3 - a2)",
            "a1 + b1*(1 + c1*(a1^2 - a2^3 - a2))",
            "a2 + b2*(1 + c1*(a1^2 - a2^3 - a2))",
        ],
    );
    assert_eq!(psi, expected);
}

#[test]
fn full_surjection_small_case() {
    let r = wring(2);
    let z = TargetVariety::from_sources(&r, &["w2"]).unwrap();
    let psi = full_surjection(&z).unwrap();
    let expected = expect_map(
        psi.domain(),
        &r,
        &["1 + c1*a1", "a1 + b1*(1 + c1*a1)"],
    );
    assert_eq!(psi, expected);
}

#[test]
fn full_surjection_base_point_slice() {
    // all parameters except the a's at 0 recovers (1, a_1, …, a_{n-1})
    let z = cubic_curve();
    let psi = full_surjection(&z).unwrap();
    let vals = point(&[5, -2, 0, 0, 0]);
    assert_eq!(psi.evaluate(&vals).unwrap(), point(&[1, 5, -2]));
}

#[test]
fn theorem_main_small_case() {
    // n=2, m=1, q = w2 (the origin inside the line w1 = 0)
    let r = wring(2);
    let z = TargetVariety::from_sources(&r, &["w2"]).unwrap();
    let f = restrict_theorem_main(&z).unwrap();
    let expected = expect_map(f.domain(), &r, &["1 + c*a1", "a1 + c*(1 + c*a1)"]);
    assert_eq!(f, expected);
}

#[test]
fn theorem_main_cubic_shape_and_degree() {
    let z = cubic_curve();
    let f = restrict_theorem_main(&z).unwrap();
    // p = (1, 4, 13) for d = 3: coordinates a_i + c^{p_{i-1}} w1
    let expected = expect_map(
        f.domain(),
        z.ring(),
        &[
            "1 + c*(a1^2 - a2^3 - a2)",
            "a1 + c*(1 + c*(a1^2 - a2^3 - a2))",
            "a2 + c^4*(1 + c*(a1^2 - a2^3 - a2))",
        ],
    );
    assert_eq!(f, expected);
    assert!(f.total_degree() <= 1 * 13);
}

#[test]
fn pure_powers_line_is_the_low_degree_map() {
    // q = w3 on A^3: f(a,b,c) = (1+c*b, a, b+c*(1+c*b))
    let r = wring(3);
    let z = TargetVariety::from_sources(&r, &["w3"]).unwrap();
    let f = restrict_pure_powers(&z).unwrap();
    let expected = expect_map(
        f.domain(),
        &r,
        &["1 + c*a2", "a1", "a2 + c*(1 + c*a2)"],
    );
    assert_eq!(f, expected);
    // the c^2*a2 term makes this exactly the m(d+1)+1 = 3 bound
    assert_eq!(f.total_degree(), 3);
}

#[test]
fn pure_powers_cubic() {
    let z = cubic_curve();
    let f = restrict_pure_powers(&z).unwrap();
    let expected = expect_map(
        f.domain(),
        z.ring(),
        &[
            "1 + c*(a1^2 - a2^3 - a2)",
            "a1",
            "a2 + c*(1 + c*(a1^2 - a2^3 - a2))",
        ],
    );
    assert_eq!(f, expected);
    assert!(f.total_degree() <= 1 * (3 + 1) + 1);
}

#[test]
fn pure_powers_requires_the_pure_monomial() {
    let r = wring(3);
    let z = TargetVariety::from_sources(&r, &["w2*w3"]).unwrap();
    assert!(matches!(
        restrict_pure_powers(&z),
        Err(Error::MissingPurePower { index: 1, .. })
    ));
}

#[test]
fn both_construction_paths_agree() {
    let r3 = wring(3);
    let cases = vec![
        cubic_curve(),
        TargetVariety::from_sources(&r3, &["w3", "w2^2 - 1"]).unwrap(),
        TargetVariety::from_sources(&r3, &["w2 + w3^2", "w2*w3 - w3"]).unwrap(),
        TargetVariety::from_sources(&wring(2), &["w2^2 - 2"]).unwrap(),
    ];
    for z in cases {
        let psi = full_surjection(&z).unwrap();
        let direct = restrict_theorem_main(&z).unwrap();
        let schedule = theorem_main_schedule(&z, psi.domain()).unwrap();
        let via_schedule = restrict_to_subvariety(&psi, &schedule).unwrap();
        assert_eq!(direct, via_schedule, "theorem-main routes disagree");

        if z.pure_power_check().is_ok() {
            let direct = restrict_pure_powers(&z).unwrap();
            let schedule = pure_powers_schedule(&z, psi.domain()).unwrap();
            let via_schedule = restrict_to_subvariety(&psi, &schedule).unwrap();
            assert_eq!(direct, via_schedule, "pure-powers routes disagree");
        }
    }
}

#[test]
fn generic_change_fixes_mixed_monomials() {
    let r = wring(3);
    let z = TargetVariety::from_sources(&r, &["w2*w3"]).unwrap();
    let change = generic_linear_change(&z, 3).unwrap();
    assert!(change.transformed.pure_power_check().is_ok());
    assert!(change.tau.compose(&change.tau_inv).unwrap().is_identity());
    assert!(change.tau_inv.compose(&change.tau).unwrap().is_identity());
    // the composite construction lands outside the original target
    let f0 = restrict_pure_powers(&change.transformed).unwrap();
    let f = conjugate_by_automorphism(&f0, &change.tau, &change.tau_inv).unwrap();
    assert!(avoids_target(&f, &z).unwrap());
}

#[test]
fn generic_change_is_a_noop_on_pure_targets() {
    let z = cubic_curve();
    let change = generic_linear_change(&z, 99).unwrap();
    assert!(change.tau.is_identity());
    assert_eq!(change.transformed.q_list(), z.q_list());
}

#[test]
fn winkelmann_generators_of_the_cubic() {
    let z = cubic_curve();
    let ideal = z.ideal();
    // projecting away w2 leaves V(w1): shear w2 by t*w1
    let g2 = winkelmann_generator(&ideal, "w2").unwrap();
    assert_eq!(
        g2.formula()
            .iter()
            .map(|p| p.render())
            .collect::<Vec<_>>(),
        vec!["w1", "t*w1 + w2", "w3"]
    );
    assert_eq!(g2.fixed_locus().render(), "(w1)");

    // projecting away w1 leaves the plane cubic itself
    let g1 = winkelmann_generator(&ideal, "w1").unwrap();
    assert_eq!(
        g1.fixed_locus().render(),
        "(w3^3 - w2^2 + w3)"
    );

    // parameter 0 is the identity on every coordinate
    let zero = Polynomial::zero(g2.formula_ring());
    let w = z
        .ring()
        .variables()
        .iter()
        .map(|v| Polynomial::variable(g2.formula_ring(), v).unwrap())
        .collect::<Vec<_>>();
    let at_zero = g2.apply(g2.formula_ring(), &zero, &w).unwrap();
    assert_eq!(at_zero, w);
}

#[test]
fn winkelmann_rejects_dominant_projections_and_hypersurfaces() {
    let r = wring(3);
    // V(w1) has codimension 1
    let hypersurface = ideal_of(&r, &["w1"]).unwrap();
    assert!(winkelmann_generator(&hypersurface, "w2").is_err());
    // projection of V(w1, w2^2 - w3) along w3 is dominant onto the
    // (w1=0)-plane? no — it is {w1=0}, so w1 generates; pick a genuinely
    // dominant case instead: the twisted-cubic-style curve projects onto
    // a curve in every coordinate plane, so build a surface-free example
    let zero_dim = ideal_of(&r, &["w1", "w2", "w3"]).unwrap();
    assert!(winkelmann_generator(&zero_dim, "w2").is_ok());
    let unit = Ideal::unit(&r);
    assert!(winkelmann_generator(&unit, "w1").is_err());
}

#[test]
fn composing_the_four_cubic_actions_gives_the_session_map() {
    let r = wring(3);
    let fr = |param: &str| {
        RingContext::new(vec![
            param.to_string(),
            "w1".into(),
            "w2".into(),
            "w3".into(),
        ])
        .unwrap()
    };
    let action = |param: &str, coords: [&str; 3]| {
        let ring = fr(param);
        AdditiveAction::new(
            &r,
            param,
            coords
                .iter()
                .map(|s| parse_polynomial(s, &ring).unwrap())
                .collect(),
        )
        .unwrap()
    };
    let phi1 = action("a", ["w1", "w2 + a*w1", "w3"]);
    let phi2 = action("b", ["w1", "w2", "w3 + b*w1"]);
    let phi3 = action("c", ["w1 + c*(w2^2 - w3^3 - w3)", "w2", "w3"]);
    let phi4 = action("d", ["w1", "w2", "w3 + d*w1"]);

    assert_eq!(phi1.fixed_locus().render(), "(w1)");
    assert_eq!(phi3.fixed_locus().render(), "(w3^3 - w2^2 + w3)");

    let psi = compose_actions(&[phi1, phi2, phi3, phi4], &point(&[1, 0, 0])).unwrap();
    assert_eq!(psi.domain().variables(), &["a", "b", "c", "d"]);
    let expected = expect_map(
        psi.domain(),
        &r,
        &[
            "1 + c*(a^2 - b^3 - b)",
            "a",
            "b + d + c*d*(a^2 - b^3 - b)",
        ],
    );
    assert_eq!(psi, expected);
}

#[test]
fn composition_edge_cases() {
    let r = wring(3);
    let ring_t = RingContext::new(vec!["t", "w1", "w2", "w3"]).unwrap();
    let shear = AdditiveAction::new(
        &r,
        "t",
        vec![
            parse_polynomial("w1", &ring_t).unwrap(),
            parse_polynomial("w2 + t*w1", &ring_t).unwrap(),
            parse_polynomial("w3", &ring_t).unwrap(),
        ],
    )
    .unwrap();

    // a single action started at a fixed-locus point is constant
    let fixed = compose_actions(std::slice::from_ref(&shear), &point(&[0, 5, 1])).unwrap();
    assert!(surjection::is_constant_map(&fixed));
    assert_eq!(fixed.evaluate(&[int(9)]).unwrap(), point(&[0, 5, 1]));

    // all parameters zero gives back the base point
    let psi = compose_actions(&[shear.clone(), shear.clone()], &point(&[1, 0, 0])).unwrap();
    assert_eq!(psi.evaluate(&point(&[0, 0])).unwrap(), point(&[1, 0, 0]));
    // colliding parameter names got renamed internally
    assert_eq!(psi.domain().variables(), &["t", "t_"]);
}

#[test]
fn group_law_violations_are_rejected() {
    let r = wring(2);
    let ring_t = RingContext::new(vec!["t", "w1", "w2"]).unwrap();
    // scaling is multiplicative, not additive
    let scaling = AdditiveAction::new(
        &r,
        "t",
        vec![
            parse_polynomial("w1 + t*w1", &ring_t).unwrap(),
            parse_polynomial("w2", &ring_t).unwrap(),
        ],
    );
    assert!(matches!(scaling, Err(Error::GroupLawViolation(_))));

    // no identity at zero
    let shifted = AdditiveAction::new(
        &r,
        "t",
        vec![
            parse_polynomial("w1 + 1 + t", &ring_t).unwrap(),
            parse_polynomial("w2", &ring_t).unwrap(),
        ],
    );
    assert!(matches!(shifted, Err(Error::GroupLawViolation(_))));

    // quadratic parameter dependence breaks additivity
    let quadratic = AdditiveAction::new(
        &r,
        "t",
        vec![
            parse_polynomial("w1 + t^2*w2", &ring_t).unwrap(),
            parse_polynomial("w2", &ring_t).unwrap(),
        ],
    );
    assert!(matches!(quadratic, Err(Error::GroupLawViolation(_))));
}

#[test]
fn restriction_of_the_session_psi() {
    let r = wring(3);
    let dom = RingContext::new(vec!["a", "b", "c", "d"]).unwrap();
    let psi = expect_map(
        &dom,
        &r,
        &[
            "1 + c*(a^2 - b^3 - b)",
            "a",
            "b + d + c*d*(a^2 - b^3 - b)",
        ],
    );
    let small = RingContext::new(vec!["a", "b", "c"]).unwrap();
    let mut assign = BTreeMap::new();
    assign.insert("d".to_string(), parse_polynomial("c", &small).unwrap());
    let restriction = Restriction::new(&small, assign).unwrap();
    let f = restrict_to_subvariety(&psi, &restriction).unwrap();
    let expected = expect_map(
        &small,
        &r,
        &[
            "1 + c*(a^2 - b^3 - b)",
            "a",
            "b + c + c^2*(a^2 - b^3 - b)",
        ],
    );
    assert_eq!(f, expected);

    // identity substitution leaves the map unchanged
    let idr = Restriction::new(&dom, BTreeMap::new()).unwrap();
    assert_eq!(restrict_to_subvariety(&psi, &idr).unwrap(), psi);
}

#[test]
fn restriction_rejects_codomain_collisions() {
    let r = wring(2);
    let dom = RingContext::new(vec!["a", "b"]).unwrap();
    let f = expect_map(&dom, &r, &["a", "b"]);
    let bad_domain = RingContext::new(vec!["a", "w2"]).unwrap();
    let mut assign = BTreeMap::new();
    assign.insert("b".to_string(), parse_polynomial("w2", &bad_domain).unwrap());
    let restriction = Restriction::new(&bad_domain, assign).unwrap();
    assert!(restrict_to_subvariety(&f, &restriction).is_err());
}

#[test]
fn conjugation_reproduces_the_twisted_cubic_map() {
    let r = wring(3);
    let tau = expect_map(&r, &r, &["w1 - w2^2", "w2", "w3 - w2^3"]);
    let tau_inv = expect_map(&r, &r, &["w1 + w2^2", "w2", "w3 + w2^3"]);

    let z_line = TargetVariety::from_sources(&r, &["w3"]).unwrap();
    let f = restrict_pure_powers(&z_line).unwrap();
    let conj = conjugate_by_automorphism(&f, &tau, &tau_inv).unwrap();
    let expected = expect_map(
        f.domain(),
        &r,
        &[
            "1 + c*a2 + a1^2",
            "a1",
            "a2 + c*(1 + c*a2) + a1^3",
        ],
    );
    assert_eq!(conj, expected);

    // conjugating by the identity changes nothing
    let identity = PolynomialMap::identity(&r, &r).unwrap();
    assert_eq!(
        conjugate_by_automorphism(&f, &identity, &identity).unwrap(),
        f
    );

    // and conjugating back recovers the original map
    let back = conjugate_by_automorphism(&conj, &tau_inv, &tau).unwrap();
    assert_eq!(back, f);

    // mismatched inverses are rejected
    assert!(conjugate_by_automorphism(&f, &tau, &tau).is_err());
}
