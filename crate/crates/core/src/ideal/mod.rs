//! Ideals in polynomial rings over the rationals and the operations built
//! on reduced Gröbner bases.
//!
//! Every verdict here is geometric: a proper ideal may still have no
//! rational points, and [`Ideal::contains_one`] answers whether the variety
//! over the algebraic closure is empty.

mod groebner;
mod zero_dim;

use std::fmt;
use std::sync::{Arc, OnceLock};

pub use groebner::{s_polynomial, GroebnerBasis};

use crate::limits::Limits;
use crate::poly::{parse_polynomial, MonomialOrder, PolyRing, Polynomial, Rational, Ring};
use crate::{Error, Result};

/// Finitely generated ideal. The generator list is kept exactly as given;
/// chart numbering downstream depends on it.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
    gb: Arc<OnceLock<Result<GroebnerBasis>>>,
}

impl Ideal {
    /// Builds an ideal; generators may come from rings with the same
    /// variables in another order. An empty list gives the zero ideal.
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Ideal> {
        let mut out = Vec::with_capacity(gens.len().max(1));
        for g in gens {
            if !g.ring().same_vars(ring) {
                return Err(Error::RingMismatch(format!("generator in {} for an ideal of {}", g.ring(), ring)));
            }
            out.push(if g.ring().order() == ring.order() { g } else { g.with_ring_order(ring) });
        }
        if out.is_empty() {
            out.push(Polynomial::zero(ring));
        }
        Ok(Ideal { ring: ring.clone(), gens: out, gb: Arc::default() })
    }

    /// Parses each generator with [`parse_polynomial`].
    pub fn parse(ring: &Ring, gens: &[&str]) -> Result<Ideal> {
        let gens = gens.iter().map(|s| parse_polynomial(ring, s)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, Vec::new()).unwrap()
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)]).unwrap()
    }

    pub fn principal(f: Polynomial) -> Ideal {
        let ring = f.ring().clone();
        Ideal::new(&ring, vec![f]).unwrap()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Generators with zeros removed.
    pub fn nonzero_gens(&self) -> Vec<Polynomial> {
        self.gens.iter().filter(|g| !g.is_zero()).cloned().collect()
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring.same_vars(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)))
        }
    }

    /// Reduced Gröbner basis for the ring's own order, computed once per
    /// ideal value and shared between clones.
    pub fn groebner(&self) -> Result<&GroebnerBasis> {
        self.gb
            .get_or_init(|| GroebnerBasis::compute(&self.ring, &self.gens))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Reduced Gröbner basis for an arbitrary order.
    pub fn groebner_basis(&self, order: MonomialOrder) -> Result<GroebnerBasis> {
        if order == self.ring.order() {
            return self.groebner().cloned();
        }
        GroebnerBasis::compute(&self.ring.with_order(order)?, &self.gens)
    }

    /// The same ideal generated by its reduced Gröbner basis.
    pub fn reduced(&self) -> Result<Ideal> {
        let basis = self.groebner()?.basis().to_vec();
        let ideal = Ideal::new(&self.ring, basis)?;
        let _ = ideal.gb.set(self.groebner().cloned());
        Ok(ideal)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.groebner()?.normal_form(f)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.groebner()?.contains(f)
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals, decided by comparing reduced bases.
    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        if self.ring.order() == other.ring.order() {
            return Ok(self.groebner()?.basis() == other.groebner()?.basis());
        }
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    pub fn contains_one(&self) -> Result<bool> {
        if self.gens.iter().any(Polynomial::is_unit) {
            return Ok(true);
        }
        Ok(self.groebner()?.is_unit())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(Polynomial::is_zero)
    }

    /// Generator concatenation.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = self.nonzero_gens();
        gens.extend(other.nonzero_gens());
        Ideal::new(&self.ring, gens)
    }

    /// Pairwise products, duplicates removed.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens: Vec<Polynomial> = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                let p = a * b;
                if !p.is_zero() && !gens.contains(&p) {
                    gens.push(p);
                }
            }
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn power(&self, n: u32) -> Result<Ideal> {
        if n == 0 {
            return Err(Error::InvalidArgument("ideal power needs a positive exponent".into()));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// `I ∩ J`, eliminating `t` from `t·I + (1 − t)·J`.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let (ext, t) = self.auxiliary_ring()?;
        let one = Polynomial::one(&ext);
        let mut gens = Vec::new();
        for g in self.nonzero_gens() {
            gens.push(&t * &g.map_to_ring(&ext)?);
        }
        let one_minus_t = &one - &t;
        for g in other.nonzero_gens() {
            gens.push(&one_minus_t * &g.map_to_ring(&ext)?);
        }
        self.contract(&ext, gens, 1)
    }

    /// Ring with one extra variable in front and an order eliminating it.
    fn auxiliary_ring(&self) -> Result<(Ring, Polynomial)> {
        let name = self.ring.fresh_name("_t");
        let mut vars = vec![name];
        vars.extend(self.ring.vars().iter().cloned());
        let ext = PolyRing::new(vars, MonomialOrder::Block(1))?;
        let t = Polynomial::var(&ext, 0);
        Ok((ext, t))
    }

    /// Elements of a basis of `gens` (in `ext`, whose first `k` variables
    /// are eliminated) free of those variables, brought back into this ring.
    fn contract(&self, ext: &Ring, gens: Vec<Polynomial>, k: usize) -> Result<Ideal> {
        let gb = GroebnerBasis::compute(ext, &gens)?;
        let kept = gb
            .basis()
            .iter()
            .filter(|g| (0..k).all(|v| !g.uses_var(v)))
            .map(|g| g.map_to_ring(&self.ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, kept)
    }

    /// `(I : f)` for a single nonzero polynomial: `(I ∩ (f)) / f`.
    pub fn quotient_by(&self, f: &Polynomial) -> Result<Ideal> {
        let f = f.map_to_ring(&self.ring)?;
        if f.is_zero() {
            return Ok(Ideal::unit(&self.ring));
        }
        let meet = self.intersection(&Ideal::principal(f.clone()))?;
        let gens = meet
            .gens
            .iter()
            .map(|g| {
                g.div_exact(&f)
                    .ok_or_else(|| Error::NotDivisible(format!("{g} by {f} in a colon computation")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// `(I : J) = {f : f·J ⊆ I}`, intersecting the colons by each generator.
    pub fn quotient(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        if other.is_zero() {
            return Err(Error::InvalidArgument("colon by the zero ideal".into()));
        }
        let mut acc: Option<Ideal> = None;
        for g in other.nonzero_gens() {
            let q = self.quotient_by(&g)?;
            acc = Some(match acc {
                None => q,
                Some(a) => a.intersection(&q)?,
            });
        }
        acc.unwrap().reduced()
    }

    /// `(I : f^∞)` by the Rabinowitsch trick.
    pub fn saturate_by(&self, f: &Polynomial) -> Result<Ideal> {
        let f = f.map_to_ring(&self.ring)?;
        if f.is_zero() {
            return Err(Error::InvalidArgument("saturation by zero".into()));
        }
        if f.is_unit() {
            return self.reduced();
        }
        let (ext, t) = self.auxiliary_ring()?;
        let mut gens = self
            .nonzero_gens()
            .iter()
            .map(|g| g.map_to_ring(&ext))
            .collect::<Result<Vec<_>>>()?;
        gens.push(&Polynomial::one(&ext) - &(&t * &f.map_to_ring(&ext)?));
        self.contract(&ext, gens, 1)
    }

    /// `(I : J^∞)` together with the least `k` such that
    /// `(I : J^k) = (I : J^{k+1})`.
    pub fn saturation(&self, other: &Ideal) -> Result<(Ideal, usize)> {
        self.check_ring(other)?;
        if other.is_zero() {
            return Err(Error::InvalidArgument("saturation by the zero ideal".into()));
        }
        let mut sat: Option<Ideal> = None;
        for g in other.nonzero_gens() {
            let s = self.saturate_by(&g)?;
            sat = Some(match sat {
                None => s,
                Some(a) => a.intersection(&s)?,
            });
        }
        let sat = sat.unwrap().reduced()?;
        // (I : J^k) = sat exactly when J^k · sat ⊆ I
        let cap = Limits::current().saturation_cap;
        let mut probe = sat.clone();
        for k in 0..=cap {
            if self.contains_ideal(&probe)? {
                return Ok((sat, k));
            }
            probe = probe.product(other)?;
        }
        Err(Error::ResourceCap(format!("saturation did not stabilize within {cap} steps")))
    }

    /// `I ∩ Q[kept variables]`, returned in the same ring.
    pub fn eliminate(&self, drop: &[usize]) -> Result<Ideal> {
        let arity = self.ring.arity();
        if let Some(&bad) = drop.iter().find(|&&i| i >= arity) {
            return Err(Error::IndexOutOfRange { index: bad, arity });
        }
        let mut dropped: Vec<usize> = drop.to_vec();
        dropped.sort_unstable();
        dropped.dedup();
        if dropped.len() == arity {
            return Err(Error::InvalidArgument("cannot eliminate every variable".into()));
        }
        if dropped.is_empty() {
            return Ok(self.clone());
        }
        let vars = self.ring.vars();
        let mut order: Vec<String> = dropped.iter().map(|&i| vars[i].clone()).collect();
        order.extend((0..arity).filter(|i| !dropped.contains(i)).map(|i| vars[i].clone()));
        let ext = PolyRing::new(order, MonomialOrder::Block(dropped.len()))?;
        let gens = self.gens.iter().map(|g| g.map_to_ring(&ext)).collect::<Result<Vec<_>>>()?;
        self.contract(&ext, gens, dropped.len())
    }

    /// Whether `f` lies in the radical, via `1 ∈ I + (1 − t·f)`.
    pub fn radical_membership(&self, f: &Polynomial) -> Result<bool> {
        let f = f.map_to_ring(&self.ring)?;
        if f.is_zero() {
            return Ok(true);
        }
        if self.contains(&f)? {
            return Ok(true);
        }
        let (ext, t) = self.auxiliary_ring()?;
        let mut gens = self
            .nonzero_gens()
            .iter()
            .map(|g| g.map_to_ring(&ext))
            .collect::<Result<Vec<_>>>()?;
        gens.push(&Polynomial::one(&ext) - &(&t * &f.map_to_ring(&ext)?));
        Ok(GroebnerBasis::compute(&ext, &gens)?.is_unit())
    }

    /// `J ⊆ √I`, generator by generator.
    pub fn radical_contains(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        for g in &other.gens {
            if !self.radical_membership(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Krull dimension of the quotient ring, −1 for the unit ideal.
    pub fn dimension(&self) -> Result<i64> {
        let gb = self.groebner()?;
        if gb.is_unit() {
            return Ok(-1);
        }
        Ok(dimension_of_leading_terms(self.ring.arity(), &gb.leading_monomials()) as i64)
    }

    /// Radical of a zero-dimensional ideal.
    pub fn radical_zero_dim(&self) -> Result<Ideal> {
        zero_dim::radical(self)
    }

    /// Vector-space dimension of the quotient by a zero-dimensional ideal
    /// (0 for the unit ideal).
    pub fn quotient_dimension(&self) -> Result<usize> {
        let dim = self.dimension()?;
        if dim > 0 {
            return Err(Error::NotZeroDimensional(dim));
        }
        zero_dim::quotient_dimension(self.groebner()?)
    }

    /// Rational points of a zero-dimensional ideal in lexicographic order.
    pub fn rational_points(&self) -> Result<Vec<Vec<Rational>>> {
        zero_dim::rational_points(self)
    }

    /// Generators of `self` modulo `relations`: normal forms of basis
    /// elements that are not already in `relations`, smallest leading
    /// monomial first, skipping any that the earlier ones already generate.
    pub fn modulo(&self, relations: &Ideal) -> Result<Vec<Polynomial>> {
        self.check_ring(relations)?;
        let rel = relations.groebner()?;
        let mut candidates: Vec<Polynomial> = Vec::new();
        for g in self.groebner()?.basis() {
            let r = rel.normal_form(g)?;
            if !r.is_zero() {
                candidates.push(r.monic());
            }
        }
        candidates.sort_by(|a, b| self.ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        let mut out: Vec<Polynomial> = Vec::new();
        for c in candidates {
            if out.contains(&c) {
                continue;
            }
            if !out.is_empty() {
                let mut gens = relations.nonzero_gens();
                gens.extend(out.iter().cloned());
                if Ideal::new(&self.ring, gens)?.contains(&c)? {
                    continue;
                }
            }
            out.push(c);
        }
        Ok(out)
    }

    /// The ideal re-expressed in `target`, matching variables by name.
    pub fn map_to_ring(&self, target: &Ring) -> Result<Ideal> {
        let gens = self.gens.iter().map(|g| g.map_to_ring(target)).collect::<Result<Vec<_>>>()?;
        Ideal::new(target, gens)
    }

    /// Applies a ring homomorphism (images of each variable) to the generators.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Ideal> {
        let target = images
            .first()
            .ok_or(Error::ArityMismatch { expected: self.ring.arity(), got: 0 })?
            .ring()
            .clone();
        let gens = self.gens.iter().map(|g| g.substitute(images)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&target, gens)
    }
}

/// Largest set of variables containing the support of no leading monomial.
fn dimension_of_leading_terms(arity: usize, lms: &[crate::poly::Monomial]) -> usize {
    let supports: Vec<u64> = lms
        .iter()
        .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
        .collect();
    assert!(arity < 64, "dimension supports at most 63 variables");
    let mut best = 0;
    for set in 0u64..(1 << arity) {
        let size = set.count_ones() as usize;
        if size > best && supports.iter().all(|&s| s & !set != 0) {
            best = size;
        }
    }
    best
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

/// A finitely presented algebra `Q[vars] / relations`.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    ring: Ring,
    relations: Ideal,
}

impl QuotientPresentation {
    pub fn new(relations: Ideal) -> QuotientPresentation {
        QuotientPresentation { ring: relations.ring().clone(), relations }
    }

    /// The polynomial ring itself, with no relations.
    pub fn polynomial_ring(ring: &Ring) -> QuotientPresentation {
        QuotientPresentation::new(Ideal::zero(ring))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    /// Nonzero relation generators, in their given order.
    pub fn relation_gens(&self) -> Vec<Polynomial> {
        self.relations.nonzero_gens()
    }

    pub fn has_relations(&self) -> bool {
        !self.relations.is_zero()
    }

    /// Krull dimension of the presented ring.
    pub fn dimension(&self) -> Result<i64> {
        self.relations.dimension()
    }

    /// Same variables and the same relation ideal.
    pub fn same_as(&self, other: &QuotientPresentation) -> Result<bool> {
        if self.ring.vars() != other.ring.vars() {
            return Ok(false);
        }
        self.relations.same_ideal(&other.relations)
    }

    /// `ideal + relations`, i.e. the ideal read in the presented ring.
    pub fn lift(&self, ideal: &Ideal) -> Result<Ideal> {
        ideal.sum(&self.relations)
    }
}

#[cfg(test)]
mod tests;
