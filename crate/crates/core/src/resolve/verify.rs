//! Re-checks a resolution trace from its stored data using only ideal
//! arithmetic: smoothness by the rank of the Jacobian, normal crossings by
//! dimensions and minors of every intersection, and the support of every
//! center.

use super::trace::{ResolutionTrace, CURVE};
use crate::blowup::ChartTree;
use crate::ideal::Ideal;
use crate::poly::{Polynomial, Ring};
use crate::Result;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub ok: bool,
    pub failures: Vec<String>,
}

fn det(m: &[Vec<Polynomial>], ring: &Ring) -> Polynomial {
    if m.is_empty() {
        return Polynomial::one(ring);
    }
    let mut acc = Polynomial::zero(ring);
    for (j, e) in m[0].iter().enumerate() {
        if e.is_zero() {
            continue;
        }
        let rest: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let t = e * &det(&rest, ring);
        acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else { return out };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// `V(ideal)` is smooth of dimension `dim(ideal)`: the ideal together with
/// the maximal minors of the Jacobian of its reduced basis is the unit ideal.
fn smooth_by_minors(ideal: &Ideal) -> Result<bool> {
    let ring = ideal.ring();
    let dim = ideal.dimension()?;
    if dim < 0 {
        return Ok(true);
    }
    let codim = ring.arity() - dim as usize;
    let gens = ideal.reduced()?.nonzero_gens();
    let jac: Vec<Vec<Polynomial>> = gens
        .iter()
        .map(|g| (0..ring.arity()).map(|v| g.partial_derivative(v)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let mut all = gens.clone();
    for rows in choose(jac.len(), codim) {
        for cols in choose(ring.arity(), codim) {
            let sub: Vec<Vec<Polynomial>> = rows.iter().map(|&r| cols.iter().map(|&c| jac[r][c].clone()).collect()).collect();
            let d = det(&sub, ring);
            if !d.is_zero() {
                all.push(d);
            }
        }
    }
    Ideal::new(ring, all)?.contains_one()
}

/// Images of the root variables on node `id`, composed from the stored
/// chart substitutions.
fn images_on(tree: &ChartTree, id: usize) -> Result<Vec<Polynomial>> {
    let mut path = Vec::new();
    let mut cur = id;
    while let Some(p) = tree.nodes()[cur].parent {
        path.push(cur);
        cur = p;
    }
    let root = tree.root().ring().clone();
    let mut images: Vec<Polynomial> = (0..root.arity()).map(|i| Polynomial::var(&root, i)).collect();
    for &n in path.iter().rev() {
        let chart = tree.nodes()[n].chart.as_ref().expect("non-root nodes carry a chart");
        images = images.iter().map(|p| p.substitute(chart.substitution())).collect::<Result<_>>()?;
    }
    Ok(images)
}

fn check_leaf(trace: &ResolutionTrace, id: usize, failures: &mut Vec<String>) -> Result<()> {
    let tree = &trace.tree;
    let node = &tree.nodes()[id];
    let label = tree.path_label(id);
    let rel = node.presentation.relations();
    if rel.contains_one()? {
        return Ok(());
    }
    let ring = node.ring().clone();
    if !smooth_by_minors(rel)? {
        failures.push(format!("chart [{label}]: ambient is singular"));
    }
    let pulled = trace.curve.substitute(&images_on(tree, id)?)?;
    let total = rel.sum(&Ideal::new(&ring, vec![pulled])?)?;
    let mut comps: Vec<(&String, Ideal)> = Vec::new();
    for (name, rec) in &node.records {
        let ideal = rel.sum(&rec.ideal)?;
        if !ideal.contains_one()? {
            comps.push((name, ideal));
        }
    }
    let mut product = Ideal::unit(&ring);
    for (_, c) in &comps {
        product = product.product(c)?;
    }
    let product = rel.sum(&product)?;
    if !(total.radical_contains(&product)? && product.radical_contains(&total)?) {
        failures.push(format!("chart [{label}]: recorded components do not cover the total transform"));
    }
    if let Some((_, curve)) = comps.iter().find(|(n, _)| n.as_str() == CURVE) {
        if !smooth_by_minors(curve)? {
            failures.push(format!("chart [{label}]: strict transform is singular"));
        }
    }
    let dim = rel.dimension()?;
    for k in 1..=comps.len() {
        for s in choose(comps.len(), k) {
            let mut meet = rel.clone();
            for &i in &s {
                meet = meet.sum(&comps[i].1)?;
            }
            if meet.contains_one()? {
                continue;
            }
            let names: Vec<&str> = s.iter().map(|&i| comps[i].0.as_str()).collect();
            if meet.dimension()? != dim - k as i64 {
                failures.push(format!("chart [{label}]: {names:?} meet in the wrong dimension"));
            } else if !smooth_by_minors(&meet)? {
                failures.push(format!("chart [{label}]: {names:?} do not cross normally"));
            }
        }
    }
    Ok(())
}

fn check_center(trace: &ResolutionTrace, id: usize, failures: &mut Vec<String>) -> Result<()> {
    let tree = &trace.tree;
    let node = &tree.nodes()[id];
    let Some(center) = &node.center else { return Ok(()) };
    let f = &trace.curve;
    let images = images_on(tree, id)?;
    let mut gens = vec![f.clone()];
    for v in 0..f.ring().arity() {
        gens.push(f.partial_derivative(v)?);
    }
    let pulled = gens.iter().map(|g| g.substitute(&images)).collect::<Result<Vec<_>>>()?;
    let support = node.presentation.relations().sum(center.ideal())?;
    for g in pulled {
        if !support.radical_membership(&g)? {
            failures.push(format!("chart [{}]: center {} leaves the singular locus", tree.path_label(id), center.ideal()));
            break;
        }
    }
    Ok(())
}

/// Independent re-check of a resolution trace.
pub fn verify_resolution(trace: &ResolutionTrace) -> Result<VerificationReport> {
    let mut failures = Vec::new();
    for id in 0..trace.tree.len() {
        if trace.tree.nodes()[id].is_leaf() {
            check_leaf(trace, id, &mut failures)?;
        } else {
            check_center(trace, id, &mut failures)?;
        }
    }
    Ok(VerificationReport { ok: failures.is_empty(), failures })
}
