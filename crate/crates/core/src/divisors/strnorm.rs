use super::{failure_locus, snc_check_global, FactoredDivisor, SncVerdict};
use crate::blowup::{Center, ChartTree, TransformRule};
use crate::ideal::Ideal;
use crate::par;
use crate::singularity::{singular_locus_ideal, subsets};
use crate::{Error, Result};

use crate::ideal::QuotientPresentation;

#[derive(Clone, Debug)]
pub struct LeafVerdict {
    pub node: usize,
    pub verdict: SncVerdict,
}

#[derive(Clone, Debug)]
pub struct NormalizationStep {
    pub node: usize,
    pub center: Ideal,
}

#[derive(Clone, Debug)]
pub struct StrnormResult {
    pub tree: ChartTree,
    pub steps: Vec<NormalizationStep>,
    pub verdicts: Vec<LeafVerdict>,
}

/// The divisor formed by every non-unit record on a node.
pub(crate) fn divisor_at(tree: &ChartTree, id: usize) -> Result<Option<FactoredDivisor>> {
    let node = tree.node(id)?;
    if node.is_empty()? {
        return Ok(None);
    }
    let mut comps = Vec::new();
    for (name, rec) in &node.records {
        if rec.ideal.contains_one()? {
            continue;
        }
        comps.push((name.clone(), rec.display_gens().to_vec(), 1));
    }
    FactoredDivisor::from_components(node.presentation.clone(), comps).map(Some)
}

/// Blows up the reduced failure locus on every failing leaf until all
/// leaves are snc. Returns the nodes blown up, in the order performed.
pub(crate) fn normalize_leaves(tree: &mut ChartTree, max_steps: usize, used: usize) -> Result<(Vec<NormalizationStep>, Vec<LeafVerdict>)> {
    let mut frontier = tree.leaves();
    let mut steps = Vec::new();
    let mut verdicts = Vec::new();
    while !frontier.is_empty() {
        let checked = par::try_map(&frontier, |&id| -> Result<(usize, SncVerdict, Option<Ideal>)> {
            let Some(d) = divisor_at(tree, id)? else {
                return Ok((id, SncVerdict { snc: true, failures: Vec::new() }, None));
            };
            let v = snc_check_global(&d)?;
            let locus = if v.snc { None } else { Some(failure_locus(&d, &v)?) };
            Ok((id, v, locus))
        })?;
        let mut next = Vec::new();
        for (id, verdict, locus) in checked {
            let Some(locus) = locus else {
                verdicts.push(LeafVerdict { node: id, verdict });
                continue;
            };
            if used + steps.len() >= max_steps {
                return Err(Error::StepsExhausted { limit: max_steps, context: format!("normal crossings not reached at chart {}", tree.path_label(id)) });
            }
            log::debug!("normalizing chart [{}] along {}", tree.path_label(id), locus);
            let presentation = tree.node(id)?.presentation.clone();
            let center = Center::normalized(presentation, &locus)?;
            let children = tree.extend_in_place(id, center)?;
            steps.push(NormalizationStep { node: id, center: locus });
            next.extend(children);
        }
        frontier = next;
    }
    verdicts.sort_by_key(|v| v.node);
    Ok((steps, verdicts))
}

/// Normalizes a reduced divisor on a smooth surface to strict normal
/// crossings by blowing up points.
pub fn strnorm_surface(d: &FactoredDivisor, max_steps: usize) -> Result<StrnormResult> {
    if d.ambient_dimension() != 2 {
        return Err(Error::InvalidArgument(format!("expected a surface, the ambient has dimension {}", d.ambient_dimension())));
    }
    if let Some(f) = d.factors().iter().find(|f| f.multiplicity != 1) {
        return Err(Error::InvalidArgument(format!("component {} is not reduced", f.name)));
    }
    let mut tree = ChartTree::new(d.ambient().clone());
    for f in d.factors() {
        let ideal = Ideal::new(d.ambient().ring(), f.gens.clone())?;
        tree = tree.with_record(&f.name, ideal, TransformRule::Strict)?;
    }
    let (steps, verdicts) = normalize_leaves(&mut tree, max_steps, 0)?;
    Ok(StrnormResult { tree, steps, verdicts })
}

/// A lexicographic measure of how far a divisor on a surface is from
/// normal crossings: total length of the components' singular schemes,
/// total non-reduced length of pairwise intersections, and the number of
/// points lying on more components than the dimension.
pub fn snc_defect(d: &FactoredDivisor) -> Result<[usize; 3]> {
    let mut out = [0usize; 3];
    let dim = d.ambient_dimension().max(0) as usize;
    for i in 0..d.len() {
        let locus = singular_locus_ideal(&QuotientPresentation::new(d.ideal(i)?))?;
        out[0] += locus.quotient_dimension()?;
    }
    for k in 2..=d.len() {
        for s in subsets(d.len(), k) {
            let ideal = d.subset_ideal(&s)?;
            if ideal.contains_one()? {
                continue;
            }
            let points = ideal.radical_zero_dim()?.quotient_dimension()?;
            if k == dim {
                out[1] += ideal.quotient_dimension()? - points;
            } else if k > dim {
                out[2] += points;
            }
        }
    }
    Ok(out)
}
