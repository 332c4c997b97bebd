//! The three worked examples, value by value.

mod common;

use common::{pid, r, simple_path_distances, to_q, Q};
use contraction_core::format::parse_instance;
use contraction_core::{
    class_ratio_terms, classify, classify_all, fixed_points, fixtures, iterate_orbit,
    period_two_points, picard_solve, theorem_check, triple_scores, Coefficient,
    ContractionClass::*, Terminus,
};

const EQUILATERAL: &str = include_str!("../../../fixtures/equilateral.txt");
const SIX_POINT: &str = include_str!("../../../fixtures/six-point.txt");

#[test]
fn fixture_files_match_builtins() {
    assert_eq!(
        parse_instance(EQUILATERAL).unwrap().map.unwrap(),
        fixtures::equilateral_map()
    );
    assert_eq!(
        parse_instance(SIX_POINT).unwrap().map.unwrap(),
        fixtures::six_point_map()
    );
}

#[test]
fn six_point_closure_matches_simple_path_oracle() {
    let names = ["A", "B", "C", "D", "E", "F"];
    let idx = |c: &str| names.iter().position(|n| *n == c).unwrap();
    let edges: Vec<(usize, usize, Q)> = ["AB", "AC", "BC", "BD", "CE", "DE", "DF", "EF"]
        .iter()
        .map(|e| (idx(&e[..1]), idx(&e[1..]), Q::from_integer(1)))
        .collect();
    let oracle = simple_path_distances(6, &edges);
    let space = fixtures::six_point_space();
    for (i, a) in names.iter().enumerate() {
        for (j, b) in names.iter().enumerate() {
            let d = to_q(space.dist_by_name(a, b).unwrap());
            assert_eq!(Some(d), oracle[i][j], "d({a},{b})");
        }
    }
    assert_eq!(space.dist_by_name("A", "F").unwrap(), &r("3"));
    assert_eq!(space.dist_by_name("A", "D").unwrap(), &r("2"));
}

#[test]
fn six_point_triple_tables() {
    let map = fixtures::six_point_map();
    let m_values = [
        (3, &["ABC", "BCD", "BCE", "BCF"][..]),
        (
            2,
            &[
                "ABD", "ABF", "ABE", "ACD", "ACE", "ACF", "BDE", "BDF", "BEF", "CDE", "CDF", "CEF",
            ][..],
        ),
        (0, &["ADE", "ADF", "AEF", "DEF"][..]),
    ];
    let mut seen = 0;
    for (m, triples) in m_values {
        for t in triples {
            let (x, y, z) = (&t[0..1], &t[1..2], &t[2..3]);
            assert_eq!(
                triple_scores(&map, x, y, z).unwrap().m,
                r(&m.to_string()),
                "M({t})"
            );
            seen += 1;
        }
    }
    assert_eq!(seen, 20);
    let n_values = [
        (12, &["ABC"][..]),
        (11, &["ABE", "ACD"][..]),
        (10, &["ABD", "ABF", "ACE", "ACF", "BCF"][..]),
        (9, &["BCD", "BCE"][..]),
        (7, &["BDE", "BEF", "CDE", "CDF"][..]),
        (6, &["BDF", "CEF"][..]),
    ];
    for (n, triples) in n_values {
        for t in triples {
            let (x, y, z) = (&t[0..1], &t[1..2], &t[2..3]);
            assert_eq!(
                triple_scores(&map, x, y, z).unwrap().n,
                r(&n.to_string()),
                "N({t})"
            );
        }
    }
}

#[test]
fn six_point_membership_and_witnesses() {
    let map = fixtures::six_point_map();
    let flags: Vec<bool> = classify_all(&map)
        .unwrap()
        .iter()
        .map(|c| c.member)
        .collect();
    assert_eq!(flags, [false, false, false, false, true, false]);
    let ratio = |class, t: &[&str]| {
        let (n, d) = class_ratio_terms(&map, class, t).unwrap();
        &n / &d
    };
    assert_eq!(ratio(Chatterjea, &["B", "D"]), r("1/2"));
    assert_eq!(ratio(PerimeterContracting, &["A", "B", "C"]), r("1"));
    assert_eq!(ratio(GeneralizedKannan, &["B", "C", "D"]), r("1"));
    assert_eq!(ratio(Kannan, &["B", "C"]), r("1/2"));
    let (n, d) = class_ratio_terms(&map, GeneralizedKannan, &["B", "C", "D"]).unwrap();
    assert_eq!((n, d), (r("3"), r("3")));
}

#[test]
fn six_point_orbits() {
    let map = fixtures::six_point_map();
    assert_eq!(fixed_points(&map), vec![pid("F")]);
    assert!(period_two_points(&map).is_empty());
    for start in ["A", "B", "C", "D", "E", "F"] {
        let (orbit, cert) = picard_solve(&map, start, 7).unwrap();
        match orbit.terminus {
            Terminus::ReachedFixedPoint { ref point, steps } => {
                assert_eq!(point, &pid("F"));
                assert!(steps <= 2, "{start}: {steps} steps");
            }
            ref other => panic!("{start}: {other:?}"),
        }
        assert_eq!(cert.alpha, Some(r("1/2")));
        assert!(cert.violations.is_empty());
    }
    let orbit = iterate_orbit(&map, "C", 7).unwrap();
    let names: Vec<_> = orbit
        .names(map.space())
        .iter()
        .map(|p| p.to_string())
        .collect();
    assert_eq!(names, ["C", "E", "F", "F"]);
}

#[test]
fn equilateral_all_values() {
    let map = fixtures::equilateral_map();
    let s = triple_scores(&map, "x", "y", "z").unwrap();
    assert_eq!((s.m, s.n), (r("2"), r("5")));
    let g = classify(&map, GeneralizedChatterjea).unwrap();
    assert_eq!(g.lambda_star, Coefficient::Finite(r("2/5")));
    assert!(g.member);
    let c = classify(&map, Chatterjea).unwrap();
    assert_eq!(c.lambda_star, Coefficient::Finite(r("1/2")));
    assert!(!c.member);
    let v = theorem_check(&map).unwrap();
    assert_eq!(v.fixed_point_set, vec![pid("x"), pid("y")]);
    assert!(v.hypotheses_hold() && v.conclusion_holds);
}

#[test]
fn sampled_step_line() {
    let map = fixtures::step2_default().unwrap();
    assert_eq!(map.space().len(), 41);
    assert_eq!(fixed_points(&map), vec![pid("0")]);

    let g = classify(&map, GeneralizedChatterjea).unwrap();
    assert!(g.sampled && g.member);
    assert_eq!(g.lambda_star, Coefficient::Finite(r("1/3")));
    let w = g.witness.unwrap();
    assert_eq!(w.tuple, vec![pid("0"), pid("1"), pid("2")]);
    assert_eq!((w.numerator, w.denominator), (r("2"), r("6")));

    let p = classify(&map, PerimeterContracting).unwrap();
    let w = p.witness.unwrap();
    assert_eq!(w.tuple, vec![pid("19/10"), pid("2"), pid("21/10")]);
    assert_eq!((w.numerator, w.denominator), (r("2"), r("0.4")));

    let ratio = |class, t: &[&str]| {
        let (n, d) = class_ratio_terms(&map, class, t).unwrap();
        &n / &d
    };
    assert_eq!(ratio(GeneralizedKannan, &["0", "1", "2"]), r("1"));
    assert_eq!(ratio(Kannan, &["1", "2"]), r("1/2"));
    assert_eq!(ratio(Chatterjea, &["1", "2"]), r("1/2"));
    let c = classify(&map, Chatterjea).unwrap();
    assert_eq!(c.witness.unwrap().tuple, vec![pid("1"), pid("2")]);

    let flags: Vec<bool> = classify_all(&map)
        .unwrap()
        .iter()
        .map(|c| c.member)
        .collect();
    assert_eq!(flags, [false, false, false, false, true, false]);
}
