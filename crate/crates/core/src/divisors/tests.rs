use super::*;
use crate::ideal::{Ideal, QuotientPresentation};
use crate::poly::{parse_polynomial, PolyRing, Rational, Ring};

fn plane() -> Ring {
    PolyRing::grevlex(["x", "y"]).unwrap()
}

fn divisor(r: &Ring, comps: &[(&str, u32)]) -> FactoredDivisor {
    let factors = comps.iter().map(|(s, m)| (parse_polynomial(r, s).unwrap(), *m)).collect();
    FactoredDivisor::new(QuotientPresentation::polynomial_ring(r), factors).unwrap()
}

fn reduced(r: &Ring, comps: &[&str]) -> FactoredDivisor {
    divisor(r, &comps.iter().map(|s| (*s, 1)).collect::<Vec<_>>())
}

fn point(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&c| Rational::from_integer(c.into())).collect()
}

#[test]
fn global_examples() {
    let r = plane();
    assert!(snc_check_global(&reduced(&r, &["x", "y"])).unwrap().snc);
    let v = snc_check_global(&reduced(&r, &["x", "y", "x + y"])).unwrap();
    assert_eq!(v.failures, vec![SncFailure { subset: vec![0, 1, 2], reason: FailureReason::ExcessIntersection }]);
    let v = snc_check_global(&reduced(&r, &["y^2 - x^3"])).unwrap();
    assert_eq!(v.failures, vec![SncFailure { subset: vec![0], reason: FailureReason::ComponentSingular }]);
}

#[test]
fn tangency_is_non_transversal() {
    let r = plane();
    let v = snc_check_global(&reduced(&r, &["y - x^2", "y + x^2"])).unwrap();
    assert_eq!(v.failures, vec![SncFailure { subset: vec![0, 1], reason: FailureReason::NonTransversal }]);
    assert!(snc_check_global(&reduced(&r, &["y - x^2", "y - 1"])).unwrap().snc);
    let parallel = snc_check_global(&reduced(&r, &["x", "x - 1", "y"])).unwrap();
    assert!(parallel.snc);
}

#[test]
fn point_examples() {
    let r = plane();
    assert!(snc_check_at_point(&reduced(&r, &["x", "y"]), &point(&[0, 0])).unwrap().snc);
    let d = reduced(&r, &["y - x^2", "y + x^2"]);
    let v = snc_check_at_point(&d, &point(&[0, 0])).unwrap();
    assert!(!v.snc);
    assert_eq!(v.failures[0].reason, FailureReason::NonTransversal);
    assert!(snc_check_at_point(&d, &point(&[1, 1])).unwrap().snc);
}

#[test]
fn monomial_examples() {
    let r = plane();
    assert!(monomial_check(&divisor(&r, &[("x", 2), ("y", 3)])).unwrap());
    assert!(!monomial_check(&divisor(&r, &[("y^2 - x^3", 1)])).unwrap());
    assert!(monomial_check(&divisor(&r, &[("x - 1", 5)])).unwrap());
}

#[test]
fn invalid_divisors_rejected() {
    let r = plane();
    let amb = QuotientPresentation::polynomial_ring(&r);
    let p = |s: &str| parse_polynomial(&r, s).unwrap();
    assert!(FactoredDivisor::new(amb.clone(), vec![(p("3"), 1)]).is_err());
    assert!(FactoredDivisor::new(amb.clone(), vec![(p("0"), 1)]).is_err());
    assert!(FactoredDivisor::new(amb.clone(), vec![(p("x"), 1), (p("2*x"), 1)]).is_err());
    assert!(FactoredDivisor::new(amb.clone(), vec![(p("x"), 0)]).is_err());
    let cone = QuotientPresentation::new(Ideal::parse(&r, &["y^2 - x^3"]).unwrap());
    assert!(FactoredDivisor::new(cone, vec![(p("x"), 1)]).is_err());
}

fn arrangements() -> Vec<Vec<&'static str>> {
    vec![
        vec!["x", "y"],
        vec!["x", "y", "x + y"],
        vec!["y^2 - x^3"],
        vec!["y - x^2", "y + x^2"],
        vec!["y - x^2", "y"],
        vec!["x*y - 1", "x - 1"],
        vec!["x^2 + y^2 - 1", "x"],
        vec!["x^2 + y^2 - 1", "x - 1"],
        vec!["y^2 - x^2 - x^3"],
        vec!["x", "y - 1", "x + y - 1"],
        vec!["x - 2", "y - 3", "x + y"],
    ]
}

fn components(d: &FactoredDivisor) -> Vec<Ideal> {
    (0..d.len()).map(|i| d.ideal(i).unwrap()).collect()
}

#[test]
fn global_and_pointwise_agree() {
    let r = plane();
    for comps in arrangements() {
        let d = reduced(&r, &comps);
        let global = snc_check_global(&d).unwrap();
        let locus = failure_locus(&d, &global).unwrap();
        // rational points on the failure locus, on pairwise intersections,
        // and a few generic points
        let mut pts: Vec<Vec<Rational>> = Vec::new();
        if !locus.contains_one().unwrap() {
            pts.extend(locus.rational_points().unwrap());
        }
        let comps_i = components(&d);
        for i in 0..comps_i.len() {
            for j in (i + 1)..comps_i.len() {
                let s = comps_i[i].sum(&comps_i[j]).unwrap();
                if !s.contains_one().unwrap() && s.dimension().unwrap() == 0 {
                    pts.extend(s.rational_points().unwrap());
                }
            }
        }
        pts.push(point(&[5, 7]));
        pts.push(point(&[0, 0]));
        for p in pts {
            let local = snc_check_at_point(&d, &p).unwrap();
            let on_locus = locus.gens().iter().all(|g| g.evaluate(&p).unwrap() == Rational::from_integer(0.into()));
            assert_eq!(local.snc, !on_locus, "{comps:?} at {p:?}");
        }
        assert_eq!(global.snc, locus.contains_one().unwrap(), "{comps:?}");
    }
}

#[test]
fn monomial_check_ignores_multiplicities() {
    let r = plane();
    for comps in arrangements() {
        let base = reduced(&r, &comps);
        let expected = monomial_check(&base).unwrap();
        for m in 1..=3u32 {
            let weighted: Vec<(&str, u32)> = comps.iter().enumerate().map(|(i, s)| (*s, m + i as u32)).collect();
            assert_eq!(monomial_check(&divisor(&r, &weighted)).unwrap(), expected, "{comps:?}");
        }
    }
}

#[test]
fn separation_examples() {
    let r = plane();
    let amb = QuotientPresentation::polynomial_ring(&r);
    let i = |s: &str| Ideal::parse(&r, &[s]).unwrap();
    let (step, ok) = separate_components(&amb, &i("x"), &i("y")).unwrap();
    assert!(ok);
    assert_eq!(step.charts.len(), 2);
    let (_, ok) = separate_components(&amb, &i("x"), &i("x + y^2")).unwrap();
    assert!(ok);
    assert!(separate_components(&amb, &i("x"), &i("x")).is_err());
}

pub(crate) fn separation_pairs() -> Vec<(&'static str, &'static str)> {
    vec![
        ("x", "y"),
        ("x", "x + y^2"),
        ("y - x^2", "y"),
        ("y - x^2", "y + x^2"),
        ("y^2 - x^3", "x"),
        ("y^2 - x^3", "y"),
        ("x + y", "x - y"),
        ("y - x^3", "y"),
        ("x^2 + y^2 - 2", "x - 1"),
        ("y^2 - x^2 - x^3", "y - x"),
    ]
}

#[test]
fn separation_corpus() {
    let r = plane();
    let amb = QuotientPresentation::polynomial_ring(&r);
    for (a, b) in separation_pairs() {
        let (_, ok) = separate_components(&amb, &Ideal::parse(&r, &[a]).unwrap(), &Ideal::parse(&r, &[b]).unwrap()).unwrap();
        assert!(ok, "{a} / {b}");
    }
}

fn count_steps(r: &Ring, comps: &[&str]) -> StrnormResult {
    strnorm_surface(&reduced(r, comps), 16).unwrap()
}

#[test]
fn strnorm_examples() {
    let r = plane();
    let node = count_steps(&r, &["y^2 - x^2 - x^3"]);
    assert_eq!(node.steps.len(), 1);
    assert!(node.verdicts.iter().all(|v| v.verdict.snc));
    let cross = count_steps(&r, &["x", "y"]);
    assert!(cross.steps.is_empty());
    assert_eq!(cross.tree.len(), 1);
    let cusp = count_steps(&r, &["y^2 - x^3"]);
    assert!(cusp.steps.len() <= 3);
    assert_eq!(cusp.steps.len(), 3);
    assert!(cusp.verdicts.iter().all(|v| v.verdict.snc));
}

#[test]
fn strnorm_rejects_bad_input() {
    let r = plane();
    assert!(strnorm_surface(&divisor(&r, &[("x", 2)]), 16).is_err());
    let space = PolyRing::grevlex(["x", "y", "z"]).unwrap();
    let d = FactoredDivisor::new(QuotientPresentation::polynomial_ring(&space), vec![(parse_polynomial(&space, "x").unwrap(), 1)]).unwrap();
    assert!(strnorm_surface(&d, 16).is_err());
    let e = strnorm_surface(&reduced(&r, &["y^2 - x^3"]), 1).unwrap_err();
    assert!(e.is_resource_cap());
}

fn strnorm_corpus() -> Vec<Vec<&'static str>> {
    vec![
        vec!["y^2 - x^3"],
        vec!["y^2 - x^2 - x^3"],
        vec!["y - x^2", "y"],
        vec!["y - x^3", "y"],
        vec!["x", "y", "x + y"],
        vec!["y^2 - x^3", "x"],
        vec!["y^2 - x^4 - x^5"],
        vec!["x^2 + y^2 - 1", "x - 1"],
    ]
}

#[test]
fn strnorm_centers_lie_over_initial_failures() {
    let r = plane();
    for comps in strnorm_corpus() {
        let d = reduced(&r, &comps);
        let initial = failure_locus(&d, &snc_check_global(&d).unwrap()).unwrap();
        let res = strnorm_surface(&d, 16).unwrap();
        assert!(res.verdicts.iter().all(|v| v.verdict.snc), "{comps:?}");
        for step in &res.steps {
            let images = res.tree.pullback_images(step.node).unwrap();
            let node = res.tree.node(step.node).unwrap();
            let pulled = initial.substitute(&images).unwrap();
            let center = node.presentation.lift(&step.center).unwrap();
            assert!(center.radical_contains(&pulled).unwrap(), "{comps:?} at {}", res.tree.path_label(step.node));
        }
    }
}

#[test]
fn strnorm_defect_decreases() {
    let r = plane();
    for comps in strnorm_corpus() {
        let res = strnorm_surface(&reduced(&r, &comps), 16).unwrap();
        for step in &res.steps {
            let parent = strnorm::divisor_at(&res.tree, step.node).unwrap().unwrap();
            let before = snc_defect(&parent).unwrap();
            for &child in &res.tree.node(step.node).unwrap().children {
                let Some(d) = strnorm::divisor_at(&res.tree, child).unwrap() else { continue };
                let after = snc_defect(&d).unwrap();
                assert!(after < before, "{comps:?}: {before:?} -> {after:?}");
            }
        }
        for leaf in &res.verdicts {
            if let Some(d) = strnorm::divisor_at(&res.tree, leaf.node).unwrap() {
                assert_eq!(snc_defect(&d).unwrap(), [0, 0, 0]);
            }
        }
    }
}

#[test]
fn rank_of_rational_matrices() {
    let m = |rows: &[&[i64]]| rows.iter().map(|r| point(r)).collect::<Vec<_>>();
    assert_eq!(rank(m(&[&[0, 1], &[0, 1]])), 1);
    assert_eq!(rank(m(&[&[1, 0], &[0, 1]])), 2);
    assert_eq!(rank(m(&[&[0, 0]])), 0);
    assert_eq!(rank(Vec::<Vec<Rational>>::new()), 0);
}
