//! Buchberger's algorithm over the rationals.
//!
//! Internally every polynomial is kept primitive with integer coefficients
//! and reductions are fraction-free, which keeps coefficient growth in check.
//! Pairs are selected by the normal strategy (smallest lcm first, ties by
//! index) and pruned with the product and chain criteria, so the output is
//! deterministic for a fixed input and order.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::limits::Limits;
use crate::poly::{Monomial, MonomialOrder, Polynomial, Rational, Ring};
use crate::{Error, Result};

/// Reduced Gröbner basis of an ideal for a fixed monomial order.
///
/// Elements are monic and sorted by descending leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    basis: Vec<Polynomial>,
}

impl GroebnerBasis {
    /// Computes the reduced basis of the ideal generated by `gens`, which
    /// must all live in `ring` (same variables; the ring's order is used).
    pub fn compute(ring: &Ring, gens: &[Polynomial]) -> Result<GroebnerBasis> {
        let gens = gens
            .iter()
            .map(|g| g.map_to_ring(ring))
            .collect::<Result<Vec<_>>>()?;
        let basis = buchberger(ring, &gens)?;
        Ok(GroebnerBasis { ring: ring.clone(), basis })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    /// The zero ideal has an empty reduced basis.
    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_one()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().filter_map(|g| g.leading_monomial().cloned()).collect()
    }

    /// Unique remainder of `f` modulo the basis; zero exactly for members.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !f.ring().same_vars(&self.ring) {
            return Err(Error::RingMismatch(format!("{} vs {}", f.ring(), self.ring)));
        }
        let f = f.with_ring_order(&self.ring);
        Ok(reduce_rational(&f, &self.basis))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

/// S-polynomial `lcm/lt(f) * f - lcm/lt(g) * g`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (Some((mf, cf)), Some((mg, cg))) = (f.leading_term(), g.leading_term()) else {
        return Polynomial::zero(f.ring());
    };
    let l = mf.lcm(mg);
    let a = f.mul_term(&l.div(mf).unwrap(), &cf.recip());
    let b = g.mul_term(&l.div(mg).unwrap(), &cg.recip());
    &a - &b
}

fn reduce_rational(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let mut p = f.clone();
    let mut rem = Vec::new();
    while let Some((m, c)) = p.leading_term().cloned() {
        let hit = basis.iter().find_map(|g| {
            let (lm, lc) = g.leading_term()?;
            m.div(lm).map(|q| (g, q, lc))
        });
        match hit {
            Some((g, q, lc)) => p = &p - &g.mul_term(&q, &(&c / lc)),
            None => {
                rem.push((m, c));
                let rest = p.terms()[1..].to_vec();
                p = Polynomial::from_sorted(&ring, rest);
            }
        }
    }
    Polynomial::from_sorted(&ring, rem)
}

/// Primitive integer polynomial, terms sorted descending.
#[derive(Clone, Debug)]
struct IPoly {
    terms: Vec<(Monomial, BigInt)>,
}

impl IPoly {
    fn from_poly(p: &Polynomial) -> IPoly {
        let lcm = p
            .terms()
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| (m.clone(), (c * Rational::from_integer(lcm.clone())).to_integer()))
            .collect();
        let mut ip = IPoly { terms };
        ip.make_primitive();
        ip
    }

    fn to_monic(&self, ring: &Ring) -> Polynomial {
        let lc = Rational::from_integer(self.terms[0].1.clone());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), Rational::from_integer(c.clone()) / &lc))
            .collect();
        Polynomial::from_sorted(ring, terms)
    }

    fn lead(&self) -> &(Monomial, BigInt) {
        &self.terms[0]
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c /= &g;
            }
        }
    }
}

/// `a * x - b * m * y` for sorted term slices.
fn combine(
    order: MonomialOrder,
    x: &[(Monomial, BigInt)],
    a: &BigInt,
    y: &[(Monomial, BigInt)],
    b: &BigInt,
    m: &Monomial,
) -> Vec<(Monomial, BigInt)> {
    use std::cmp::Ordering::*;
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    let mut shifted: Option<Monomial> = y.first().map(|t| t.0.mul(m));
    while i < x.len() {
        let Some(ym) = shifted.as_ref() else { break };
        match order.cmp(&x[i].0, ym) {
            Greater => {
                out.push((x[i].0.clone(), &x[i].1 * a));
                i += 1;
            }
            Less => {
                out.push((ym.clone(), -(&y[j].1 * b)));
                j += 1;
                shifted = y.get(j).map(|t| t.0.mul(m));
            }
            Equal => {
                let c = &x[i].1 * a - &y[j].1 * b;
                if !c.is_zero() {
                    out.push((x[i].0.clone(), c));
                }
                i += 1;
                j += 1;
                shifted = y.get(j).map(|t| t.0.mul(m));
            }
        }
    }
    out.extend(x[i..].iter().map(|(t, c)| (t.clone(), c * a)));
    out.extend(y[j..].iter().map(|(t, c)| (t.mul(m), -(c * b))));
    out
}

fn find_reducer<'a>(m: &Monomial, basis: &'a [IPoly], active: &[bool]) -> Option<&'a IPoly> {
    basis
        .iter()
        .zip(active)
        .find(|(g, &on)| on && g.lead().0.divides(m))
        .map(|(g, _)| g)
}

/// Full fraction-free reduction; the result is primitive (or zero).
fn reduce(order: MonomialOrder, h: IPoly, basis: &[IPoly], active: &[bool]) -> IPoly {
    let mut cur = h.terms;
    let mut start = 0;
    let mut rem: Vec<(Monomial, BigInt)> = Vec::new();
    let mut steps = 0usize;
    while start < cur.len() {
        let (m, c) = &cur[start];
        match find_reducer(m, basis, active) {
            None => {
                rem.push(cur[start].clone());
                start += 1;
            }
            Some(g) => {
                let (lm, lc) = g.lead();
                let q = m.div(lm).unwrap();
                let d = c.gcd(lc);
                let a = lc / &d;
                let b = c / &d;
                cur = combine(order, &cur[start + 1..], &a, &g.terms[1..], &b, &q);
                start = 0;
                if !a.is_one() {
                    for (_, rc) in &mut rem {
                        *rc *= &a;
                    }
                }
                steps += 1;
                if steps.is_multiple_of(16) {
                    shrink(&mut rem, &mut cur);
                }
            }
        }
    }
    let mut out = IPoly { terms: rem };
    out.make_primitive();
    out
}

/// Divides the partial remainder and the working polynomial by their
/// common content.
fn shrink(rem: &mut [(Monomial, BigInt)], cur: &mut [(Monomial, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, c) in rem.iter().chain(cur.iter()) {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, c) in rem.iter_mut().chain(cur.iter_mut()) {
        *c /= &g;
    }
}

fn spoly(order: MonomialOrder, f: &IPoly, g: &IPoly) -> IPoly {
    let (mf, cf) = f.lead();
    let (mg, cg) = g.lead();
    let l = mf.lcm(mg);
    let d = cf.gcd(cg);
    let a = cg / &d;
    let b = cf / &d;
    let uf = l.div(mf).unwrap();
    let ug = l.div(mg).unwrap();
    // a * uf * f - b * ug * g, leading terms cancel
    let f_shift: Vec<_> = f.terms[1..].iter().map(|(m, c)| (m.mul(&uf), c.clone())).collect();
    let mut out = IPoly { terms: combine(order, &f_shift, &a, &g.terms[1..], &b, &ug) };
    out.make_primitive();
    out
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

fn buchberger(ring: &Ring, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let order = ring.order();
    let limits = Limits::current();
    let mut inputs: Vec<IPoly> = gens.iter().filter(|g| !g.is_zero()).map(IPoly::from_poly).collect();
    if inputs.is_empty() {
        return Ok(Vec::new());
    }
    if inputs.iter().any(IPoly::is_constant) {
        return Ok(vec![Polynomial::one(ring)]);
    }
    inputs.sort_by(|a, b| order.cmp(&a.lead().0, &b.lead().0));

    let mut basis: Vec<IPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let add = |h: IPoly, basis: &mut Vec<IPoly>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, pending: &mut HashSet<(usize, usize)>| {
        let k = basis.len();
        let lm = h.lead().0.clone();
        for (i, g) in basis.iter().enumerate() {
            if !active[i] {
                continue;
            }
            let gl = &g.lead().0;
            if gl.is_coprime(&lm) {
                continue;
            }
            pairs.push(Pair { i, j: k, lcm: gl.lcm(&lm) });
            pending.insert((i, k));
        }
        basis.push(h);
        active.push(true);
    };

    for f in inputs {
        let h = reduce(order, f, &basis, &active);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        add(h, &mut basis, &mut active, &mut pairs, &mut pending);
    }

    let mut treated = 0usize;
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                order
                    .cmp(&pairs[a].lcm, &pairs[b].lcm)
                    .then_with(|| (pairs[a].j, pairs[a].i).cmp(&(pairs[b].j, pairs[b].i)))
            })
            .unwrap();
        let Pair { i, j, lcm } = pairs.swap_remove(best);
        pending.remove(&(i, j));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead().0.divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        treated += 1;
        if treated > limits.gb_pair_cap {
            return Err(Error::ResourceCap(format!(
                "Gröbner basis needed more than {} S-pair reductions",
                limits.gb_pair_cap
            )));
        }
        let s = spoly(order, &basis[i], &basis[j]);
        let h = reduce(order, s, &basis, &active);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![Polynomial::one(ring)]);
        }
        if h.degree() > limits.gb_degree_cap {
            return Err(Error::ResourceCap(format!(
                "Gröbner basis element of degree {} exceeds the cap {}",
                h.degree(),
                limits.gb_degree_cap
            )));
        }
        add(h, &mut basis, &mut active, &mut pairs, &mut pending);
    }

    // minimal basis: drop elements whose leading monomial is divisible by
    // another one (earliest survivor wins on ties)
    let mut keep: Vec<usize> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lm = &g.lead().0;
        let dominated = basis.iter().enumerate().any(|(o, h)| {
            o != k && h.lead().0.divides(lm) && (h.lead().0 != *lm || o < k)
        });
        if !dominated {
            keep.push(k);
        }
    }
    let minimal: Vec<IPoly> = keep.iter().map(|&k| basis[k].clone()).collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let on: Vec<bool> = (0..minimal.len()).map(|o| o != k).collect();
        let r = reduce(order, minimal[k].clone(), &minimal, &on);
        reduced.push(r.to_monic(ring));
    }
    reduced.sort_by(|a, b| order.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    Ok(reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, PolyRing};

    fn gb(ring: &Ring, gens: &[&str]) -> Vec<String> {
        let gens: Vec<_> = gens.iter().map(|s| parse_polynomial(ring, s).unwrap()).collect();
        GroebnerBasis::compute(ring, &gens)
            .unwrap()
            .basis()
            .iter()
            .map(|p| p.to_string())
            .collect()
    }

    #[test]
    fn already_reduced() {
        let r = PolyRing::grevlex(["x", "y"]).unwrap();
        assert_eq!(gb(&r, &["x", "y"]), ["x", "y"]);
    }

    #[test]
    fn redundant_generator_disappears() {
        let r = PolyRing::new(["x"], MonomialOrder::Lex).unwrap();
        assert_eq!(gb(&r, &["x^2 - 1", "x - 1"]), ["x - 1"]);
    }

    #[test]
    fn hand_buchberger_lex() {
        // S(xy - 1, y^2 - 1) = y*(xy - 1) - x*(y^2 - 1) = x - y
        let r = PolyRing::new(["x", "y"], MonomialOrder::Lex).unwrap();
        assert_eq!(gb(&r, &["x*y - 1", "y^2 - 1"]), ["x - y", "y^2 - 1"]);
    }

    #[test]
    fn unit_and_zero() {
        let r = PolyRing::grevlex(["x", "y"]).unwrap();
        assert_eq!(gb(&r, &["x", "x - 1"]), ["1"]);
        assert!(gb(&r, &["0"]).is_empty());
    }

    #[test]
    fn normal_form_examples() {
        let r = PolyRing::grevlex(["x", "y"]).unwrap();
        let p = |s: &str| parse_polynomial(&r, s).unwrap();
        let g = GroebnerBasis::compute(&r, &[p("x")]).unwrap();
        assert!(g.normal_form(&p("x^2")).unwrap().is_zero());
        assert_eq!(g.normal_form(&p("y")).unwrap(), p("y"));
        let g = GroebnerBasis::compute(&r, &[p("x - y")]).unwrap();
        assert_eq!(g.normal_form(&p("x + y")).unwrap(), p("2*y"));
    }

    #[test]
    fn cap_is_reported() {
        let r = PolyRing::grevlex(["x", "y", "z"]).unwrap();
        let p = |s: &str| parse_polynomial(&r, s).unwrap();
        let err = {
            let caps = Limits { gb_degree_cap: 2, ..Limits::DEFAULT };
            crate::limits::with_limits(caps, || GroebnerBasis::compute(&r, &[p("x^2*y - z^2"), p("x*y^2 - z")])).unwrap_err()
        };
        assert!(err.is_resource_cap(), "{err}");
    }
}
