use super::*;
use crate::ideal::{Ideal, QuotientPresentation};
use crate::poly::{parse_polynomial, MonomialOrder, PolyRing, Polynomial, Ring};

fn plane() -> Ring {
    PolyRing::grevlex(["x", "y"]).unwrap()
}

fn ideal(ring: &Ring, gens: &[&str]) -> Ideal {
    Ideal::parse(ring, gens).unwrap()
}

fn center(ring: &Ring, gens: &[&str]) -> Center {
    Center::new(QuotientPresentation::polynomial_ring(ring), ideal(ring, gens)).unwrap()
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn same(a: &Ideal, ring: &Ring, gens: &[&str]) -> bool {
    a.same_ideal(&ideal(ring, gens)).unwrap()
}

#[test]
fn origin_chart_presentation() {
    let r = plane();
    let step = blowup_charts(&center(&r, &["x", "y"])).unwrap();
    assert_eq!(step.charts.len(), 2);
    let c0 = &step.charts[0];
    assert_eq!(c0.ring().vars(), &["x", "y", "T1_2"]);
    assert!(same(c0.relations(), c0.ring(), &["x*T1_2 - y"]));
    assert_eq!(strings(c0.exceptional().gens()), ["x"]);
    let c1 = &step.charts[1];
    assert_eq!(c1.ring().vars(), &["x", "y", "T1_1"]);
    assert!(same(c1.relations(), c1.ring(), &["y*T1_1 - x"]));
}

#[test]
fn principal_center_is_an_isomorphism() {
    let r = plane();
    let step = blowup_charts(&center(&r, &["x"])).unwrap();
    assert_eq!(step.charts.len(), 1);
    assert_eq!(step.charts[0].ring().arity(), 2);
    assert!(step.charts[0].relations().is_zero());
    assert_eq!(strings(step.charts[0].exceptional().gens()), ["x"]);
}

#[test]
fn square_center_chart_is_torsion_free() {
    let r = plane();
    let step = blowup_charts(&center(&r, &["x", "y^2"])).unwrap();
    let c = &step.charts[1];
    assert_eq!(strings(c.exceptional().gens()), ["y^2"]);
    assert!(same(c.relations(), c.ring(), &["y^2*T1_1 - x"]));
}

#[test]
fn zero_center_rejected() {
    let r = plane();
    let res = Center::new(QuotientPresentation::polynomial_ring(&r), Ideal::zero(&r));
    assert!(res.is_err());
}

#[test]
fn cusp_transforms() {
    let r = plane();
    let step = blowup_charts(&center(&r, &["x", "y"])).unwrap();
    let c = &step.charts[0];
    let cusp = ideal(&r, &["y^2 - x^3"]);
    let total = total_transform(c, &cusp).unwrap();
    assert!(total.contains(&parse_polynomial(c.ring(), "x^2*T1_2^2 - x^3").unwrap()).unwrap());
    assert!(same(&total, c.ring(), &["x^2*T1_2^2 - x^3", "x*T1_2 - y"]));
    let strict = strict_transform(c, &cusp).unwrap();
    assert_eq!(strings(&strict.modulo(c.relations()).unwrap()), ["T1_2^2 - x"]);
    let controlled = controlled_transform(c, &cusp, 2).unwrap();
    assert!(controlled.same_ideal(&strict).unwrap());
    let identity = controlled_transform(c, &cusp, 0).unwrap();
    assert!(identity.same_ideal(&total).unwrap());
    assert!(controlled_transform(c, &cusp, 3).is_err());
}

#[test]
fn simplified_cusp_chart() {
    let r = plane();
    let step = blowup_charts(&center(&r, &["x", "y"])).unwrap();
    let c = step.charts[0].simplify().unwrap();
    assert_eq!(c.ring().vars(), &["x", "T1_2"]);
    assert!(c.relations().is_zero());
    assert_eq!(strings(c.substitution()), ["x", "x*T1_2"]);
    let strict = strict_transform(&c, &ideal(&r, &["y^2 - x^3"])).unwrap();
    assert_eq!(strings(strict.reduced().unwrap().gens()), ["T1_2^2 - x"]);
}

#[test]
fn line_transforms() {
    let r = plane();
    let step = blowup_charts(&center(&r, &["x", "y"])).unwrap();
    let line = ideal(&r, &["x"]);
    let t0 = total_transform(&step.charts[0], &line).unwrap();
    assert!(t0.contains(&parse_polynomial(step.charts[0].ring(), "x").unwrap()).unwrap());
    assert!(strict_transform(&step.charts[0], &line).unwrap().contains_one().unwrap());
    let c1 = &step.charts[1];
    let s1 = strict_transform(c1, &line).unwrap();
    assert_eq!(strings(&s1.modulo(c1.relations()).unwrap()), ["T1_1"]);
    let unit = total_transform(c1, &Ideal::unit(&r)).unwrap();
    assert!(unit.contains_one().unwrap());
}

#[test]
fn controlled_node_product() {
    let r = plane();
    let step = blowup_charts(&center(&r, &["x", "y"])).unwrap();
    let c = &step.charts[0];
    let ctl = controlled_transform(c, &ideal(&r, &["x*y"]), 2).unwrap();
    assert_eq!(strings(&ctl.modulo(c.relations()).unwrap()), ["T1_2"]);
    let simple = c.simplify().unwrap();
    let ctl = controlled_transform(&simple, &ideal(&r, &["x*y"]), 2).unwrap();
    assert_eq!(strings(ctl.gens()), ["T1_2"]);
}

#[test]
fn principal_on_chart() {
    let r = plane();
    let step = blowup_charts(&center(&r, &["x", "y"])).unwrap();
    let j = ideal(&r, &["x"]);
    assert!(verify_principal_on_chart(&step.charts[0], &j).unwrap());
    assert!(!verify_principal_on_chart(&step.charts[1], &j).unwrap());
    assert!(!verify_principal_on_chart(&step.charts[0], &Ideal::unit(&r)).unwrap());
}

#[test]
fn ring_mismatch_reported() {
    let r = plane();
    let step = blowup_charts(&center(&r, &["x", "y"])).unwrap();
    let other = PolyRing::grevlex(["u", "v"]).unwrap();
    assert!(total_transform(&step.charts[0], &ideal(&other, &["u"])).is_err());
}

fn corpus() -> Vec<(Vec<&'static str>, Vec<&'static str>)> {
    vec![
        (vec!["y^2 - x^3"], vec!["x", "y"]),
        (vec!["y^2 - x^2 - x^3"], vec!["x", "y"]),
        (vec!["y^2 - x^4"], vec!["x", "y"]),
        (vec!["x*y"], vec!["x", "y"]),
        (vec!["x^2 - y^3"], vec!["x", "y^2"]),
        (vec!["y^3 - x^5"], vec!["x", "y"]),
        (vec!["x + y"], vec!["x", "y"]),
        (vec!["y - x^2", "x*y"], vec!["x", "y"]),
        (vec!["y^2 - x^3", "x*y"], vec!["x^2", "y"]),
    ]
}

/// Order of the ideal at the origin: minimum low degree of its generators.
fn origin_order(i: &Ideal) -> u32 {
    i.nonzero_gens().iter().filter_map(Polynomial::low_degree).min().unwrap()
}

#[test]
fn chart_invariants_on_corpus() {
    let r = plane();
    for (gens, cgens) in corpus() {
        let i = ideal(&r, &gens);
        let step = blowup_charts(&center(&r, &cgens)).unwrap();
        let radial = cgens.iter().all(|g| g.len() == 1);
        for chart in &step.charts {
            assert_eq!(chart.exceptional().gens().len(), 1);
            let (sat, k) = chart.relations().saturation(chart.exceptional()).unwrap();
            assert_eq!(k, 0, "torsion in {:?}", chart.relations());
            assert!(sat.same_ideal(chart.relations()).unwrap());

            let total = total_transform(chart, &i).unwrap();
            let strict = strict_transform(chart, &i).unwrap();
            assert!(strict.contains_ideal(&total).unwrap());
            if radial {
                let c = origin_order(&i);
                let ctl = controlled_transform(chart, &i, c).unwrap();
                assert!(ctl.contains_ideal(&total).unwrap());
                assert!(strict.contains_ideal(&ctl).unwrap());
            }

            let w_name = chart.ring().fresh_name("w");
            let wr = chart.ring().extended(&[w_name]).unwrap();
            let w = Polynomial::var(&wr, wr.arity() - 1);
            let unit_g = &(&w * &chart.generator().map_to_ring(&wr).unwrap()) - &Polynomial::one(&wr);
            let lift = |j: &Ideal| -> Ideal {
                let mut g = j.map_to_ring(&wr).unwrap().gens().to_vec();
                g.push(unit_g.clone());
                Ideal::new(&wr, g).unwrap()
            };
            assert!(lift(&total).same_ideal(&lift(&strict)).unwrap());

            let closure = lift(&total).eliminate(&[wr.arity() - 1]).unwrap().map_to_ring(chart.ring()).unwrap();
            assert!(closure.same_ideal(&strict).unwrap());
        }
    }
}

#[test]
fn hypersurface_strict_transform_matches_blowup_of_subscheme() {
    let r = plane();
    for (f, j, n) in [("y^2 - x^3", vec!["x", "y"], 1u32), ("x*y", vec!["x"], 2), ("y - x^2", vec!["x", "y"], 2)] {
        let i = ideal(&r, &[f]);
        let jn = ideal(&r, &j).power(n).unwrap();
        let mut cg = vec![parse_polynomial(&r, f).unwrap()];
        cg.extend(jn.gens().iter().cloned());
        let big = Center::new(QuotientPresentation::polynomial_ring(&r), Ideal::new(&r, cg.clone()).unwrap()).unwrap();
        let on_y = Center::new(QuotientPresentation::new(i.clone()), Ideal::new(&r, cg).unwrap()).unwrap();
        let a = blowup_charts(&big).unwrap();
        let b = blowup_charts(&on_y).unwrap();
        for (ca, cb) in a.charts.iter().zip(&b.charts) {
            let strict = strict_transform(ca, &i).unwrap();
            assert!(strict.same_ideal(cb.relations()).unwrap(), "{f} chart {}", ca.generator_index());
        }
    }
}

#[test]
fn blowup_inside_a_presentation() {
    let r = PolyRing::grevlex(["x", "y", "z"]).unwrap();
    let ambient = QuotientPresentation::new(ideal(&r, &["z - x*y"]));
    let c = Center::new(ambient, ideal(&r, &["x", "y"])).unwrap();
    let step = blowup_charts(&c).unwrap();
    let chart = step.charts[0].simplify().unwrap();
    assert_eq!(chart.ring().vars(), &["x", "T1_2"]);
    assert_eq!(strings(chart.substitution()), ["x", "x*T1_2", "x^2*T1_2"]);
}

fn cusp_tree() -> ChartTree {
    let r = plane();
    ChartTree::new(QuotientPresentation::polynomial_ring(&r))
        .with_record("curve", ideal(&r, &["y^2 - x^3"]), TransformRule::Strict)
        .unwrap()
}

#[test]
fn tree_extension() {
    let r = plane();
    let tree = cusp_tree();
    let t1 = extend_tree(&tree, 0, center(&r, &["x", "y"])).unwrap();
    assert_eq!(tree.len(), 1);
    assert_eq!(t1.depth(), 1);
    assert_eq!(t1.root().children.len(), 2);
    let leaf = t1.root().children[0];
    let node = t1.node(leaf).unwrap();
    assert_eq!(strings(node.record("curve").unwrap().display_gens()), ["T1_2^2 - x"]);
    assert_eq!(strings(node.record("E1").unwrap().display_gens()), ["x"]);

    let amb = node.presentation.clone();
    let c2 = Center::normalized(amb, &ideal(node.ring(), &["x", "T1_2"])).unwrap();
    let t2 = extend_tree(&t1, leaf, c2).unwrap();
    assert_eq!(t2.depth(), 2);
    assert_eq!(t2.steps(), 2);
    let deepest = *t2.leaves().last().unwrap();
    assert_eq!(t2.path(deepest).len(), 2);
    assert!(t2.node(deepest).unwrap().record("E1").is_some());
    assert!(t2.node(deepest).unwrap().record("E2").is_some());

    assert!(extend_tree(&t1, leaf, center(&r, &["x", "y"])).is_err());
    assert!(extend_tree(&t1, 0, center(&r, &["x", "y"])).is_err());
}

#[test]
fn pullback_composes_substitutions() {
    let r = plane();
    let t1 = extend_tree(&cusp_tree(), 0, center(&r, &["x", "y"])).unwrap();
    let leaf = t1.root().children[0];
    let amb = t1.node(leaf).unwrap().presentation.clone();
    let ring = amb.ring().clone();
    let t2 = extend_tree(&t1, leaf, Center::normalized(amb, &ideal(&ring, &["x", "T1_2"])).unwrap()).unwrap();
    for id in t2.leaves() {
        let images = t2.pullback_images(id).unwrap();
        let node = t2.node(id).unwrap();
        let f = parse_polynomial(&r, "y^2 - x^3").unwrap().substitute(&images).unwrap();
        let curve = node.record("curve").unwrap();
        assert!(curve.ideal.radical_membership(&f).unwrap() || curve.ideal.contains_one().unwrap());
    }
}

#[test]
fn json_round_trip() {
    let r = plane();
    let t1 = extend_tree(&cusp_tree(), 0, center(&r, &["x", "y"])).unwrap();
    let value = t1.to_json();
    assert_eq!(value["center"], serde_json::json!(["x", "y"]));
    assert_eq!(value["charts"][0]["transforms"]["curve"]["ideal"], serde_json::json!(["T1_2^2 - x"]));
    assert_eq!(value["charts"][0]["ring"]["vars"], serde_json::json!(["x", "T1_2"]));
    let back = ChartTree::from_json(&value).unwrap();
    assert_eq!(back.to_json(), value);
    assert_eq!(back.len(), t1.len());
    for (a, b) in back.nodes().iter().zip(t1.nodes()) {
        assert!(a.presentation.same_as(&b.presentation).unwrap());
        for (name, rec) in &a.records {
            assert!(rec.ideal.same_ideal(&b.records[name].ideal).unwrap());
        }
    }
}

#[test]
fn block_order_survives_simplification() {
    let r = PolyRing::new(["x", "y", "z"], MonomialOrder::Block(1)).unwrap();
    let c = Center::new(QuotientPresentation::polynomial_ring(&r), ideal(&r, &["x", "y"])).unwrap();
    let chart = blowup_charts(&c).unwrap().charts[0].simplify().unwrap();
    assert_eq!(chart.ring().vars(), &["x", "z", "T1_2"]);
    assert_eq!(chart.ring().order(), MonomialOrder::Block(1));
}
