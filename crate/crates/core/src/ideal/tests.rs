use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::poly::{rat, Monomial, Rational};

fn xy() -> Ring {
    PolyRing::grevlex(["x", "y"]).unwrap()
}

fn ideal(ring: &Ring, gens: &[&str]) -> Ideal {
    Ideal::parse(ring, gens).unwrap()
}

fn poly(ring: &Ring, s: &str) -> Polynomial {
    parse_polynomial(ring, s).unwrap()
}

fn basis_strings(i: &Ideal) -> Vec<String> {
    i.groebner().unwrap().basis().iter().map(|p| p.to_string()).collect()
}

fn assert_same(a: &Ideal, b: &Ideal) {
    assert!(a.same_ideal(b).unwrap(), "{a} != {b}");
}

#[test]
fn contains_one_examples() {
    let r = xy();
    assert!(ideal(&r, &["x", "x - 1"]).contains_one().unwrap());
    assert!(!ideal(&r, &["x", "y"]).contains_one().unwrap());
    let r1 = PolyRing::grevlex(["x"]).unwrap();
    assert!(!ideal(&r1, &["x^2 + 1"]).contains_one().unwrap());
}

#[test]
fn sum_product_power() {
    let r = xy();
    assert_eq!(ideal(&r, &["x"]).sum(&ideal(&r, &["y"])).unwrap().to_string(), "(x, y)");
    assert_eq!(ideal(&r, &["x"]).product(&ideal(&r, &["x", "y"])).unwrap().to_string(), "(x^2, x*y)");
    assert_eq!(ideal(&r, &["x", "y"]).power(2).unwrap().to_string(), "(x^2, x*y, y^2)");
    assert!(ideal(&r, &["x"]).power(0).is_err());
    let other = PolyRing::grevlex(["u"]).unwrap();
    assert!(matches!(ideal(&r, &["x"]).sum(&ideal(&other, &["u"])), Err(Error::RingMismatch(_))));
}

#[test]
fn intersection_examples() {
    let r = xy();
    let xy_meet = ideal(&r, &["x"]).intersection(&ideal(&r, &["y"])).unwrap();
    assert_eq!(basis_strings(&xy_meet), ["x*y"]);
    // membership both ways against the expected answer
    assert_same(&xy_meet, &ideal(&r, &["x*y"]));
    assert_same(&ideal(&r, &["x"]).intersection(&ideal(&r, &["x"])).unwrap(), &ideal(&r, &["x"]));
    assert_same(&ideal(&r, &["x"]).intersection(&ideal(&r, &["1"])).unwrap(), &ideal(&r, &["x"]));
}

#[test]
fn quotient_examples() {
    let r = xy();
    assert_same(&ideal(&r, &["x*y"]).quotient(&ideal(&r, &["y"])).unwrap(), &ideal(&r, &["x"]));
    assert!(ideal(&r, &["x"]).quotient(&ideal(&r, &["x"])).unwrap().contains_one().unwrap());
    assert_same(&ideal(&r, &["x^2"]).quotient(&ideal(&r, &["x"])).unwrap(), &ideal(&r, &["x"]));
    assert!(ideal(&r, &["x"]).quotient(&Ideal::zero(&r)).is_err());
}

#[test]
fn saturation_examples() {
    let r = PolyRing::grevlex(["x", "t"]).unwrap();
    let (s, k) = ideal(&r, &["x*t"]).saturation(&ideal(&r, &["t"])).unwrap();
    assert_same(&s, &ideal(&r, &["x"]));
    assert_eq!(k, 1);

    let r = xy();
    let (s, k) = ideal(&r, &["x"]).saturation(&ideal(&r, &["y"])).unwrap();
    assert_same(&s, &ideal(&r, &["x"]));
    assert_eq!(k, 0);
    let (s, k) = ideal(&r, &["x^2", "x*y"]).saturation(&ideal(&r, &["y"])).unwrap();
    assert_same(&s, &ideal(&r, &["x"]));
    assert_eq!(k, 1);
    assert!(ideal(&r, &["x"]).saturation(&Ideal::zero(&r)).is_err());
}

#[test]
fn saturation_cap_is_a_resource_error() {
    let r = xy();
    let caps = Limits { saturation_cap: 2, ..Limits::DEFAULT };
    let err = crate::limits::with_limits(caps, || ideal(&r, &["x*y^5"]).saturation(&ideal(&r, &["y"]))).unwrap_err();
    assert!(err.is_resource_cap());
}

#[test]
fn elimination_examples() {
    let r = PolyRing::grevlex(["x", "y", "T"]).unwrap();
    assert!(ideal(&r, &["y - x*T"]).eliminate(&[2]).unwrap().is_zero());
    let e = ideal(&r, &["T - x", "T - y"]).eliminate(&[2]).unwrap();
    assert_eq!(e.to_string(), "(x - y)");
    let r2 = xy();
    assert_eq!(ideal(&r2, &["x"]).eliminate(&[1]).unwrap().to_string(), "(x)");
    assert!(ideal(&r2, &["x"]).eliminate(&[0, 1]).is_err());
}

#[test]
fn radical_membership_examples() {
    let r = xy();
    assert!(ideal(&r, &["x^2"]).radical_membership(&poly(&r, "x")).unwrap());
    assert!(!ideal(&r, &["x"]).radical_membership(&poly(&r, "y")).unwrap());
    assert!(ideal(&r, &["x^3 + 3*x^2*y + 3*x*y^2 + y^3"]).radical_membership(&poly(&r, "x + y")).unwrap());
}

#[test]
fn dimension_examples() {
    let r = xy();
    assert_eq!(ideal(&r, &["x"]).dimension().unwrap(), 1);
    assert_eq!(ideal(&r, &["x", "y"]).dimension().unwrap(), 0);
    assert_eq!(Ideal::zero(&r).dimension().unwrap(), 2);
    assert_eq!(Ideal::unit(&r).dimension().unwrap(), -1);
}

#[test]
fn zero_dimensional_radicals() {
    let r = xy();
    assert_eq!(basis_strings(&ideal(&r, &["x^2", "y"]).radical_zero_dim().unwrap()), ["x", "y"]);
    assert_eq!(basis_strings(&ideal(&r, &["x", "y"]).radical_zero_dim().unwrap()), ["x", "y"]);
    let two_points = ideal(&r, &["x^2 - 1", "y"]).radical_zero_dim().unwrap();
    assert_same(&two_points, &ideal(&r, &["x^2 - 1", "y"]));
    // a double point at the origin and a simple one at (1, 1)
    let mixed = ideal(&r, &["x^3 - x^2", "y - x"]).radical_zero_dim().unwrap();
    assert_same(&mixed, &ideal(&r, &["x^2 - x", "y - x"]));
    assert!(matches!(ideal(&r, &["x"]).radical_zero_dim(), Err(Error::NotZeroDimensional(1))));
}

#[test]
fn modulo_relations() {
    let r = PolyRing::grevlex(["x", "y", "T"]).unwrap();
    let rel = ideal(&r, &["x*T - y"]);
    let strict = ideal(&r, &["x*T - y", "T^2 - x"]);
    let gens = strict.modulo(&rel).unwrap();
    assert_eq!(gens.len(), 1);
    assert_eq!(gens[0].to_string(), "T^2 - x");
}

// ---- randomized laws -------------------------------------------------------

fn random_poly(rng: &mut ChaCha8Rng, ring: &Ring, terms: usize, degree: u32) -> Polynomial {
    let n = ring.arity();
    let t = (0..terms).map(|_| {
        let mut e = vec![0u32; n];
        let d = rng.gen_range(0..=degree);
        for _ in 0..d {
            e[rng.gen_range(0..n)] += 1;
        }
        (Monomial::new(e), rat(rng.gen_range(-3..=3), 1))
    });
    Polynomial::from_terms(ring, t)
}

fn random_ideal(rng: &mut ChaCha8Rng, ring: &Ring) -> Ideal {
    let k = rng.gen_range(1..=2);
    let gens = (0..k)
        .map(|_| loop {
            let terms = rng.gen_range(1..=3);
            let p = random_poly(rng, ring, terms, 2);
            if !p.is_constant() {
                break p;
            }
        })
        .collect();
    Ideal::new(ring, gens).unwrap()
}

#[test]
fn every_s_polynomial_reduces_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for order in [MonomialOrder::GrevLex, MonomialOrder::Lex, MonomialOrder::Block(1)] {
        let r = PolyRing::new(["x", "y", "z"], order).unwrap();
        for _ in 0..25 {
            let i = random_ideal(&mut rng, &r);
            let gb = i.groebner().unwrap();
            for (a, f) in gb.basis().iter().enumerate() {
                for g in &gb.basis()[a + 1..] {
                    assert!(gb.normal_form(&s_polynomial(f, g)).unwrap().is_zero());
                }
            }
            for g in i.gens() {
                assert!(gb.contains(g).unwrap());
            }
        }
    }
}

#[test]
fn membership_of_explicit_combinations() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let r = PolyRing::grevlex(["x", "y", "z"]).unwrap();
    for _ in 0..30 {
        let i = random_ideal(&mut rng, &r);
        let mut f = Polynomial::zero(&r);
        for g in i.gens() {
            f = &f + &(&random_poly(&mut rng, &r, 3, 2) * g);
        }
        assert!(i.contains(&f).unwrap());
    }
    let i = ideal(&r, &["x^2 - y", "x*z"]);
    for non in ["x", "y", "z", "y*z + 1", "x + y^2"] {
        assert!(!i.contains(&poly(&r, non)).unwrap(), "{non}");
    }
}

#[test]
fn colon_and_saturation_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let r = xy();
    for _ in 0..40 {
        let i = random_ideal(&mut rng, &r);
        let j = random_ideal(&mut rng, &r);
        let q = i.quotient(&j).unwrap();
        assert!(i.contains_ideal(&q.product(&j).unwrap()).unwrap(), "{i} : {j}");
        let (s, _) = i.saturation(&j).unwrap();
        assert!(s.contains_ideal(&i).unwrap());
        let (s2, k2) = s.saturation(&j).unwrap();
        assert_same(&s2, &s);
        assert_eq!(k2, 0);
    }
}

#[test]
fn elimination_generators_are_members_without_dropped_variables() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let r = PolyRing::grevlex(["x", "y", "z"]).unwrap();
    for _ in 0..25 {
        let i = random_ideal(&mut rng, &r);
        let e = i.eliminate(&[0]).unwrap();
        for g in e.gens() {
            assert!(!g.uses_var(0));
            assert!(i.contains(g).unwrap());
        }
    }
}

#[test]
fn radical_membership_agrees_with_powers() {
    let r = xy();
    let corpus = [
        (vec!["x^2", "y^3"], vec!["x", "y", "x + y", "x*y"]),
        (vec!["x^3 - y^2"], vec!["x", "y", "x^3 - y^2"]),
        (vec!["(x - y)^2"], vec!["x - y", "x", "x^2 - y^2"]),
        (vec!["x*y^2", "x^2*y"], vec!["x*y", "x", "y"]),
    ];
    for (gens, probes) in corpus {
        let gens: Vec<Polynomial> = gens
            .iter()
            .map(|s| match *s {
                "(x - y)^2" => poly(&r, "x - y").pow(2),
                s => poly(&r, s),
            })
            .collect();
        let i = Ideal::new(&r, gens).unwrap();
        for probe in probes {
            let f = poly(&r, probe);
            let by_powers = (1..=6).any(|k| i.contains(&f.pow(k)).unwrap());
            assert_eq!(i.radical_membership(&f).unwrap(), by_powers, "{probe} in √{i}");
        }
    }
}

/// Dimension of a monomial ideal by evaluation: the largest coordinate
/// subspace, probed at the point with ones on it, where every generator
/// vanishes.
fn monomial_dimension_by_points(n: usize, gens: &[Vec<u32>]) -> i64 {
    let mut best = -1;
    for set in 0u32..(1 << n) {
        let point: Vec<i64> = (0..n).map(|i| ((set >> i) & 1) as i64).collect();
        let vanish = gens.iter().all(|e| e.iter().zip(&point).map(|(&k, &p)| p.pow(k)).product::<i64>() == 0);
        if vanish {
            best = best.max(set.count_ones() as i64);
        }
    }
    best
}

#[test]
fn dimension_matches_point_oracle_on_monomial_ideals() {
    for n in 2..=3usize {
        let r = PolyRing::grevlex(["x", "y", "z"][..n].to_vec()).unwrap();
        let mut monos: Vec<Vec<u32>> = Vec::new();
        for d in 1..=3u32 {
            let mut stack = vec![(Vec::<u32>::new(), d)];
            while let Some((pre, left)) = stack.pop() {
                if pre.len() == n - 1 {
                    let mut e = pre.clone();
                    e.push(left);
                    monos.push(e);
                    continue;
                }
                for k in 0..=left {
                    let mut e = pre.clone();
                    e.push(k);
                    stack.push((e, left - k));
                }
            }
        }
        let m = monos.len();
        let mut checked = 0;
        for a in 0..m {
            for b in a..m {
                for c in b..m {
                    if n == 3 && c != b && (a + b + c) % 3 != 0 {
                        continue;
                    }
                    let gens: Vec<Vec<u32>> = vec![monos[a].clone(), monos[b].clone(), monos[c].clone()];
                    let polys = gens
                        .iter()
                        .map(|e| Polynomial::monomial(&r, Monomial::new(e.clone()), Rational::one()))
                        .collect();
                    let i = Ideal::new(&r, polys).unwrap();
                    assert_eq!(i.dimension().unwrap(), monomial_dimension_by_points(n, &gens), "{i}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 100);
    }
}

#[test]
fn rational_points_of_finite_sets() {
    let r = PolyRing::grevlex(["x", "y"]).unwrap();
    let i = Ideal::parse(&r, &["x^2 - 1", "y - x"]).unwrap();
    let pts = i.rational_points().unwrap();
    let show: Vec<String> = pts.iter().map(|p| format!("{},{}", p[0], p[1])).collect();
    assert_eq!(show, ["-1,-1", "1,1"]);
    let j = Ideal::parse(&r, &["x^2 + 1", "y"]).unwrap();
    assert!(j.rational_points().unwrap().is_empty());
    let k = Ideal::parse(&r, &["4*x^2 - 9", "y^2"]).unwrap();
    let show: Vec<String> = k.rational_points().unwrap().iter().map(|p| format!("{},{}", p[0], p[1])).collect();
    assert_eq!(show, ["-3/2,0", "3/2,0"]);
    assert!(Ideal::parse(&r, &["x"]).unwrap().rational_points().is_err());
}
