use crate::ideal::{Ideal, QuotientPresentation};
use crate::par;
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial, Ring};
use crate::{Error, Result};


/// The ideal being blown up, read in a presented ambient ring.
#[derive(Clone, Debug)]
pub struct Center {
    ambient: QuotientPresentation,
    ideal: Ideal,
}

impl Center {
    /// Keeps the generator list as given; zero polynomials are dropped.
    pub fn new(ambient: QuotientPresentation, ideal: Ideal) -> Result<Center> {
        if !ideal.ring().same_vars(ambient.ring()) {
            return Err(Error::RingMismatch(format!("center in {} over ambient {}", ideal.ring(), ambient.ring())));
        }
        let gens = ideal.nonzero_gens();
        if gens.is_empty() {
            return Err(Error::InvalidArgument("the center is the zero ideal".into()));
        }
        let ideal = Ideal::new(ambient.ring(), gens)?;
        Ok(Center { ambient, ideal })
    }

    /// Center whose generators are the reduced basis of `ideal` taken
    /// modulo the ambient relations, largest leading monomial first.
    pub fn normalized(ambient: QuotientPresentation, ideal: &Ideal) -> Result<Center> {
        let ideal = ideal.map_to_ring(ambient.ring())?;
        let mut gens = ideal.modulo(ambient.relations())?;
        let ring = ambient.ring().clone();
        gens.sort_by(|a, b| ring.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
        let ideal = Ideal::new(&ring, gens)?;
        Center::new(ambient, ideal)
    }

    pub fn ambient(&self) -> &QuotientPresentation {
        &self.ambient
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn gens(&self) -> &[Polynomial] {
        self.ideal.gens()
    }
}

/// One affine piece of a blow up.
#[derive(Clone, Debug)]
pub struct Chart {
    generator_index: usize,
    generator: Polynomial,
    parent_ring: Ring,
    ring: Ring,
    relations: Ideal,
    substitution: Vec<Polynomial>,
    exceptional: Ideal,
}

/// All charts of one blow up, indexed like the center's generators.
#[derive(Clone, Debug)]
pub struct BlowupStep {
    pub center: Center,
    pub charts: Vec<Chart>,
}

impl Chart {
    pub(crate) fn from_parts(
        generator_index: usize,
        generator: Polynomial,
        parent_ring: Ring,
        relations: Ideal,
        substitution: Vec<Polynomial>,
    ) -> Result<Chart> {
        let ring = relations.ring().clone();
        let exceptional = Ideal::principal(generator.clone());
        if substitution.len() != parent_ring.arity() {
            return Err(Error::ArityMismatch { expected: parent_ring.arity(), got: substitution.len() });
        }
        Ok(Chart { generator_index, generator, parent_ring, ring, relations, substitution, exceptional })
    }

    /// Index of the center generator `g` inverted on this chart.
    pub fn generator_index(&self) -> usize {
        self.generator_index
    }

    /// `g` read in the chart ring.
    pub fn generator(&self) -> &Polynomial {
        &self.generator
    }

    pub fn parent_ring(&self) -> &Ring {
        &self.parent_ring
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    /// Images of the parent variables in the chart ring.
    pub fn substitution(&self) -> &[Polynomial] {
        &self.substitution
    }

    pub fn exceptional(&self) -> &Ideal {
        &self.exceptional
    }

    pub fn presentation(&self) -> QuotientPresentation {
        QuotientPresentation::new(self.relations.clone())
    }

    /// Pulls a parent polynomial back to the chart ring.
    pub fn pull(&self, f: &Polynomial) -> Result<Polynomial> {
        if !f.ring().same_vars(&self.parent_ring) {
            return Err(Error::RingMismatch(format!("{} is not the parent ring {}", f.ring(), self.parent_ring)));
        }
        f.substitute(&self.substitution)
    }

    /// True when the chart is empty (its relations contain 1).
    pub fn is_empty(&self) -> Result<bool> {
        self.relations.contains_one()
    }

    /// An isomorphic chart with every variable that some relation expresses
    /// linearly (`c·v + h`, `c` constant, `v` not in `h`) substituted away.
    pub fn simplify(&self) -> Result<Chart> {
        let mut ring = self.ring.clone();
        let mut rels: Vec<Polynomial> = self.relations.groebner()?.basis().to_vec();
        let mut subs = self.substitution.clone();
        let mut g = self.generator.clone();
        if rels.iter().any(Polynomial::is_unit) {
            return Ok(self.clone());
        }
        while ring.arity() > 1 {
            rels.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
            let Some((r, v)) = rels.iter().find_map(|r| linear_variable(r).map(|v| (r.clone(), v))) else {
                break;
            };
            let x = Polynomial::var(&ring, v);
            let c = r.coefficient(&Monomial::var(ring.arity(), v));
            let rest = &r - &x.scale(&c);
            let image = rest.scale(&(-c.recip()));
            let images: Vec<Polynomial> = (0..ring.arity())
                .map(|i| if i == v { image.clone() } else { Polynomial::var(&ring, i) })
                .collect();
            let smaller = drop_variable(&ring, v)?;
            let apply = |p: &Polynomial| -> Result<Polynomial> { p.substitute(&images)?.map_to_ring(&smaller) };
            rels = rels
                .iter()
                .map(apply)
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .filter(|p| !p.is_zero())
                .collect();
            subs = subs.iter().map(apply).collect::<Result<Vec<_>>>()?;
            g = apply(&g)?;
            ring = smaller;
            if !rels.is_empty() {
                rels = Ideal::new(&ring, rels)?.groebner()?.basis().to_vec();
            }
        }
        let relations = Ideal::new(&ring, rels)?.reduced()?;
        Chart::from_parts(self.generator_index, g, self.parent_ring.clone(), relations, subs)
    }
}

/// A variable occurring in `r` only through a term `c·v` with `c` constant.
fn linear_variable(r: &Polynomial) -> Option<usize> {
    let arity = r.ring().arity();
    (0..arity).find(|&v| {
        let unit = Monomial::var(arity, v);
        let mut hits = r.terms().iter().filter(|(m, _)| m.exponents()[v] > 0);
        matches!((hits.next(), hits.next()), (Some((m, _)), None) if *m == unit)
    })
}

fn drop_variable(ring: &Ring, v: usize) -> Result<Ring> {
    let vars: Vec<String> = ring.vars().iter().enumerate().filter(|(i, _)| *i != v).map(|(_, s)| s.clone()).collect();
    let order = match ring.order() {
        MonomialOrder::Block(k) => {
            let k = if v < k { k - 1 } else { k };
            if k == 0 || k == vars.len() {
                MonomialOrder::GrevLex
            } else {
                MonomialOrder::Block(k)
            }
        }
        o => o,
    };
    PolyRing::new(vars, order)
}

/// Depth for fresh chart variables `T<depth>_<j>`: one more than the
/// deepest such name already in the ring.
fn next_depth(ring: &Ring) -> usize {
    ring.vars()
        .iter()
        .filter_map(|v| {
            let rest = v.strip_prefix('T')?;
            let (d, j) = rest.split_once('_')?;
            j.parse::<usize>().ok()?;
            d.parse::<usize>().ok()
        })
        .max()
        .unwrap_or(0)
        + 1
}

/// Blows up `center`: one chart per generator, in generator order.
pub fn blowup_charts(center: &Center) -> Result<BlowupStep> {
    let ambient = center.ambient();
    let parent = ambient.ring().clone();
    let depth = next_depth(&parent);
    let gens = center.gens().to_vec();
    let indices: Vec<usize> = (0..gens.len()).collect();
    let charts = par::try_map(&indices, |&k| {
        let fresh: Vec<String> = (0..gens.len()).filter(|&j| j != k).map(|j| format!("T{depth}_{}", j + 1)).collect();
        let ring = parent.extended(&fresh)?;
        let g = gens[k].map_to_ring(&ring)?;
        let mut rels = ambient
            .relation_gens()
            .iter()
            .map(|r| r.map_to_ring(&ring))
            .collect::<Result<Vec<_>>>()?;
        let mut t = parent.arity();
        for (j, f) in gens.iter().enumerate() {
            if j == k {
                continue;
            }
            let tj = Polynomial::var(&ring, t);
            rels.push(&(&g * &tj) - &f.map_to_ring(&ring)?);
            t += 1;
        }
        let relations = Ideal::new(&ring, rels)?.saturate_by(&g)?;
        let substitution = (0..parent.arity()).map(|i| Polynomial::var(&ring, i)).collect();
        Chart::from_parts(k, g, parent.clone(), relations, substitution)
    })?;
    Ok(BlowupStep { center: center.clone(), charts })
}

fn pulled_gens(chart: &Chart, ideal: &Ideal) -> Result<Vec<Polynomial>> {
    if !ideal.ring().same_vars(chart.parent_ring()) {
        return Err(Error::RingMismatch(format!("ideal in {} but the chart sits over {}", ideal.ring(), chart.parent_ring())));
    }
    ideal.gens().iter().map(|g| chart.pull(g)).collect()
}

/// Image of `ideal` in the chart, together with the chart relations.
pub fn total_transform(chart: &Chart, ideal: &Ideal) -> Result<Ideal> {
    let mut gens = pulled_gens(chart, ideal)?;
    gens.extend(chart.relations().nonzero_gens());
    Ideal::new(chart.ring(), gens)
}

/// Total transform saturated by the exceptional generator.
pub fn strict_transform(chart: &Chart, ideal: &Ideal) -> Result<Ideal> {
    total_transform(chart, ideal)?.saturate_by(chart.generator())
}

/// Total transform with every generator divided by `g^c` in the chart ring.
pub fn controlled_transform(chart: &Chart, ideal: &Ideal, c: u32) -> Result<Ideal> {
    let images = pulled_gens(chart, ideal)?;
    let divisor = chart.generator().pow(c);
    let mut gens = Vec::with_capacity(images.len());
    for h in &images {
        gens.push(divide_in_chart(chart, h, &divisor)?);
    }
    gens.extend(chart.relations().nonzero_gens());
    Ideal::new(chart.ring(), gens)
}

/// `h / d` in the chart ring, where `d` is a power of the exceptional
/// generator. With relations present the quotient `q` is read off
/// `(R + (d·Z − h)) : g^∞ = R + (Z − q)`.
fn divide_in_chart(chart: &Chart, h: &Polynomial, d: &Polynomial) -> Result<Polynomial> {
    if d.is_one() || h.is_zero() {
        return Ok(h.clone());
    }
    if !chart.relations().is_zero() && chart.relations().contains(h)? {
        return Ok(Polynomial::zero(chart.ring()));
    }
    if let Some(q) = h.div_exact(d) {
        return Ok(q);
    }
    if chart.relations().is_zero() {
        return Err(Error::NotDivisible(format!("{h} by {d}")));
    }
    let ring = chart.ring();
    let z_name = ring.fresh_name("_z");
    let mut vars = vec![z_name];
    vars.extend(ring.vars().iter().cloned());
    let ext = PolyRing::new(vars, MonomialOrder::Block(1))?;
    let z = Polynomial::var(&ext, 0);
    let mut gens = chart
        .relations()
        .nonzero_gens()
        .iter()
        .map(|r| r.map_to_ring(&ext))
        .collect::<Result<Vec<_>>>()?;
    gens.push(&(&d.map_to_ring(&ext)? * &z) - &h.map_to_ring(&ext)?);
    let sat = Ideal::new(&ext, gens)?.saturate_by(&chart.generator().map_to_ring(&ext)?)?;
    let z_mono = Monomial::var(ext.arity(), 0);
    for e in sat.groebner()?.basis() {
        if e.leading_monomial() == Some(&z_mono) {
            let q = &z - e;
            let q = q.map_to_ring(ring)?;
            let q = chart.relations().normal_form(&q)?;
            return Ok(q);
        }
    }
    Err(Error::NotDivisible(format!("{h} by {d} modulo the chart relations")))
}

/// Whether `J` pulled back to the chart equals the exceptional ideal `(g)`.
pub fn verify_principal_on_chart(chart: &Chart, j: &Ideal) -> Result<bool> {
    let image = total_transform(chart, j)?;
    let exceptional = chart.exceptional().sum(chart.relations())?;
    image.same_ideal(&exceptional)
}

/// Order of the polynomial `h` along `g` in the chart: the largest `e`
/// with `h ≡ g^e·q` modulo the relations, capped at `cap`; 0 when `g` is a
/// unit on the chart or `h` vanishes there.
pub(crate) fn divisibility_exponent(chart: &Chart, h: &Polynomial, cap: u32) -> Result<u32> {
    let unit = chart.relations().sum(&Ideal::principal(chart.generator().clone()))?.contains_one()?;
    if unit || chart.relations().contains(h)? {
        return Ok(0);
    }
    let mut e = 0;
    let mut cur = h.clone();
    while e < cap {
        match divide_in_chart(chart, &cur, chart.generator()) {
            Ok(q) if !q.is_zero() => {
                cur = q;
                e += 1;
            }
            Ok(_) => break,
            Err(Error::NotDivisible(_)) => break,
            Err(other) => return Err(other),
        }
    }
    Ok(e)
}

/// `h / g^e` in the chart, `e` as in [`divisibility_exponent`].
pub(crate) fn divide_out_generator(chart: &Chart, h: &Polynomial, e: u32) -> Result<Polynomial> {
    divide_in_chart(chart, h, &chart.generator().pow(e))
}
