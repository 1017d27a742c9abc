//! Divisors given by their components on a smooth presented ring, normal
//! crossing verdicts, separation of components and the normalization loop
//! for curves on surfaces.
//!
//! Components are stored as ideals modulo the ambient relations so that
//! strict transforms on charts with relations can be used directly; a
//! component given by one polynomial is the common case.

pub(crate) mod strnorm;

pub use strnorm::{snc_defect, strnorm_surface, LeafVerdict, NormalizationStep, StrnormResult};

use std::fmt;

use num_traits::Zero;

use crate::blowup::{blowup_charts, strict_transform, BlowupStep, Center};
use crate::ideal::{Ideal, QuotientPresentation};
use crate::poly::{Polynomial, Rational};
use crate::singularity::{jacobian_matrix, minors_ideal, singular_locus_ideal, subsets};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct DivisorFactor {
    pub name: String,
    /// Generators modulo the ambient relations.
    pub gens: Vec<Polynomial>,
    pub multiplicity: u32,
}

#[derive(Clone, Debug)]
pub struct FactoredDivisor {
    ambient: QuotientPresentation,
    factors: Vec<DivisorFactor>,
    dimension: i64,
}

impl FactoredDivisor {
    /// Components `F1, F2, …` given by single polynomials.
    pub fn new(ambient: QuotientPresentation, factors: Vec<(Polynomial, u32)>) -> Result<FactoredDivisor> {
        let comps = factors
            .into_iter()
            .enumerate()
            .map(|(i, (f, m))| (format!("F{}", i + 1), vec![f], m))
            .collect();
        FactoredDivisor::from_components(ambient, comps)
    }

    pub fn from_components(
        ambient: QuotientPresentation,
        components: Vec<(String, Vec<Polynomial>, u32)>,
    ) -> Result<FactoredDivisor> {
        if !singular_locus_ideal(&ambient)?.contains_one()? {
            return Err(Error::InvalidArgument("the ambient ring is not smooth".into()));
        }
        let ring = ambient.ring().clone();
        let mut factors = Vec::with_capacity(components.len());
        for (name, gens, multiplicity) in components {
            if multiplicity == 0 {
                return Err(Error::InvalidArgument(format!("component {name} has multiplicity 0")));
            }
            let gens = gens.iter().map(|g| g.map_to_ring(&ring)).collect::<Result<Vec<_>>>()?;
            factors.push(DivisorFactor { name, gens, multiplicity });
        }
        let d = FactoredDivisor { dimension: ambient.dimension()?, ambient, factors };
        let ideals = (0..d.factors.len()).map(|i| d.ideal(i)).collect::<Result<Vec<_>>>()?;
        for (i, ideal) in ideals.iter().enumerate() {
            let name = &d.factors[i].name;
            if ideal.contains_one()? {
                return Err(Error::InvalidArgument(format!("component {name} is a unit")));
            }
            if ideal.same_ideal(d.ambient.relations())? {
                return Err(Error::InvalidArgument(format!("component {name} is zero")));
            }
        }
        for i in 0..ideals.len() {
            for j in 0..ideals.len() {
                if i != j && ideals[i].contains_ideal(&ideals[j])? {
                    return Err(Error::InvalidArgument(format!(
                        "components {} and {} are not distinct: one contains the other",
                        d.factors[i].name, d.factors[j].name
                    )));
                }
            }
        }
        Ok(d)
    }

    pub fn ambient(&self) -> &QuotientPresentation {
        &self.ambient
    }

    pub fn factors(&self) -> &[DivisorFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Dimension of the ambient.
    pub fn ambient_dimension(&self) -> i64 {
        self.dimension
    }

    /// Component `i` with the ambient relations adjoined.
    pub fn ideal(&self, i: usize) -> Result<Ideal> {
        self.subset_ideal(&[i])
    }

    /// Relations plus the generators of every component in `subset`.
    pub fn subset_ideal(&self, subset: &[usize]) -> Result<Ideal> {
        Ideal::new(self.ambient.ring(), self.subset_gens(subset))
    }

    fn subset_gens(&self, subset: &[usize]) -> Vec<Polynomial> {
        let mut gens = self.ambient.relation_gens();
        for &i in subset {
            gens.extend(self.factors[i].gens.iter().filter(|g| !g.is_zero()).cloned());
        }
        gens
    }

    /// The same components with every multiplicity set to 1.
    pub fn reduction(&self) -> FactoredDivisor {
        let mut d = self.clone();
        for f in &mut d.factors {
            f.multiplicity = 1;
        }
        d
    }

    /// Codimension of the ambient inside its polynomial ring.
    fn codimension(&self) -> usize {
        (self.ambient.ring().arity() as i64 - self.dimension).max(0) as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FailureReason {
    ComponentSingular,
    NonTransversal,
    ExcessIntersection,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureReason::ComponentSingular => "component-singular",
            FailureReason::NonTransversal => "non-transversal",
            FailureReason::ExcessIntersection => "excess-intersection",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SncFailure {
    /// Zero-based component indices.
    pub subset: Vec<usize>,
    pub reason: FailureReason,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SncVerdict {
    pub snc: bool,
    pub failures: Vec<SncFailure>,
}

impl SncVerdict {
    fn from_failures(failures: Vec<SncFailure>) -> SncVerdict {
        SncVerdict { snc: failures.is_empty(), failures }
    }
}

/// Every nonempty intersection of `k` components must be smooth of
/// codimension `k`; intersections of more components than the ambient
/// dimension must be empty.
pub fn snc_check_global(d: &FactoredDivisor) -> Result<SncVerdict> {
    let dim = d.ambient_dimension();
    let mut empty: Vec<Vec<usize>> = Vec::new();
    let mut failures = Vec::new();
    for k in 1..=d.len() {
        for s in subsets(d.len(), k) {
            if empty.iter().any(|e| e.iter().all(|i| s.contains(i))) {
                continue;
            }
            let ideal = d.subset_ideal(&s)?;
            if ideal.contains_one()? {
                empty.push(s);
                continue;
            }
            let reason = if k as i64 > dim || ideal.dimension()? != dim - k as i64 {
                Some(FailureReason::ExcessIntersection)
            } else if !singular_locus_ideal(&QuotientPresentation::new(ideal))?.contains_one()? {
                Some(if k == 1 { FailureReason::ComponentSingular } else { FailureReason::NonTransversal })
            } else {
                None
            };
            if let Some(reason) = reason {
                failures.push(SncFailure { subset: s, reason });
            }
        }
    }
    Ok(SncVerdict::from_failures(failures))
}

/// Local version at a rational point: for the components through `p`,
/// the Jacobian of the relations and the components' generators evaluated
/// at `p` must have rank `codim + |S|`.
pub fn snc_check_at_point(d: &FactoredDivisor, p: &[Rational]) -> Result<SncVerdict> {
    let ring = d.ambient.ring();
    for r in d.ambient.relation_gens() {
        if !r.evaluate(p)?.is_zero() {
            return Err(Error::InvalidArgument("point does not satisfy the ambient relations".into()));
        }
    }
    let mut through = Vec::new();
    for (i, f) in d.factors.iter().enumerate() {
        let mut vanish = true;
        for g in &f.gens {
            if !g.evaluate(p)?.is_zero() {
                vanish = false;
                break;
            }
        }
        if vanish {
            through.push(i);
        }
    }
    let codim = d.codimension();
    let dim = d.ambient_dimension();
    let mut failures = Vec::new();
    for k in 1..=through.len() {
        for pick in subsets(through.len(), k) {
            let s: Vec<usize> = pick.iter().map(|&i| through[i]).collect();
            let polys = d.subset_gens(&s);
            let jac = jacobian_matrix(&polys, ring)?;
            let evaluated = jac
                .iter()
                .map(|row| row.iter().map(|e| e.evaluate(p)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            if rank(evaluated) < codim + k {
                let reason = if k as i64 > dim {
                    FailureReason::ExcessIntersection
                } else if k == 1 {
                    FailureReason::ComponentSingular
                } else {
                    FailureReason::NonTransversal
                };
                failures.push(SncFailure { subset: s, reason });
            }
        }
    }
    Ok(SncVerdict::from_failures(failures))
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rank(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pivot);
        let inv = m[r][c].recip();
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = &m[i][c] * &inv;
                let pivot_row = m[r].clone();
                for (entry, p) in m[i].iter_mut().zip(&pivot_row).skip(c) {
                    *entry -= &factor * p;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// True iff the reduced divisor has strict normal crossings; on a smooth
/// ring a product of components is automatically Cartier.
pub fn monomial_check(d: &FactoredDivisor) -> Result<bool> {
    Ok(snc_check_global(&d.reduction())?.snc)
}

/// Points where the failures of `verdict` occur: for each failing subset
/// `S`, the intersection `I_S` together with the maximal minors of the
/// Jacobian of its generators. Returns the reduced union.
pub fn failure_locus(d: &FactoredDivisor, verdict: &SncVerdict) -> Result<Ideal> {
    let ring = d.ambient.ring();
    let codim = d.codimension();
    let mut union: Option<Ideal> = None;
    for failure in &verdict.failures {
        let polys = d.subset_gens(&failure.subset);
        let mut gens = polys.clone();
        let size = codim + failure.subset.len();
        if size <= ring.arity() {
            let jac = jacobian_matrix(&polys, ring)?;
            for rows in subsets(polys.len(), size) {
                gens.extend(minors_ideal(&jac, ring, size, &rows)?.nonzero_gens());
            }
        }
        let part = Ideal::new(ring, gens)?;
        union = Some(match union {
            None => part,
            Some(u) => u.intersection(&part)?,
        });
    }
    let Some(locus) = union else {
        return Ok(Ideal::unit(ring));
    };
    let dim = locus.dimension()?;
    if dim > 0 {
        return Err(Error::NotZeroDimensional(dim));
    }
    locus.radical_zero_dim()
}

/// Blows up `I1 + I2` and reports whether the strict transforms of `I1`
/// and `I2` are disjoint in every chart.
pub fn separate_components(ambient: &QuotientPresentation, i1: &Ideal, i2: &Ideal) -> Result<(BlowupStep, bool)> {
    let a = ambient.lift(&i1.map_to_ring(ambient.ring())?)?;
    let b = ambient.lift(&i2.map_to_ring(ambient.ring())?)?;
    if a.contains_one()? || b.contains_one()? {
        return Err(Error::InvalidArgument("components must be proper ideals".into()));
    }
    if a.contains_ideal(&b)? || b.contains_ideal(&a)? {
        return Err(Error::InvalidArgument("one component contains the other".into()));
    }
    let center = Center::normalized(ambient.clone(), &a.sum(&b)?)?;
    let step = blowup_charts(&center)?;
    let mut separated = true;
    for chart in &step.charts {
        let s = strict_transform(chart, &a)?.sum(&strict_transform(chart, &b)?)?;
        if !s.contains_one()? {
            separated = false;
            break;
        }
    }
    Ok((step, separated))
}

#[cfg(test)]
mod tests;
