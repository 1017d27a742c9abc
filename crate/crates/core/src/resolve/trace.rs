use serde_json::{json, Map, Value};

use crate::blowup::{Center, ChartTree, TransformRule};
use crate::divisors::strnorm::{divisor_at, normalize_leaves};
use crate::divisors::snc_check_global;
use crate::ideal::{Ideal, QuotientPresentation};
use crate::par;
use crate::poly::{parse_polynomial, Polynomial};
use crate::singularity::{is_smooth, order_locus};
use crate::{Error, Result};

pub const DEFAULT_MAX_STEPS: usize = 32;

/// Name of the curve's strict transform in the chart tree.
pub(crate) const CURVE: &str = "curve";

/// An ideal together with an upper bound for its order at every point.
#[derive(Clone, Debug)]
pub struct MarkedIdeal {
    pub ambient: QuotientPresentation,
    pub ideal: Ideal,
    pub control: u32,
    order: u32,
    locus: Ideal,
}

impl MarkedIdeal {
    /// Computes the maximal order and rejects it if above `control`.
    pub fn new(ambient: QuotientPresentation, ideal: Ideal, control: u32) -> Result<MarkedIdeal> {
        let (order, locus) = order_locus(&ambient, &ideal)?;
        if order > control {
            return Err(Error::InvalidArgument(format!("order {order} exceeds the control {control}")));
        }
        Ok(MarkedIdeal { ambient, ideal, control, order, locus })
    }

    /// Maximal order over all points.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Reduced locus where the maximal order is attained.
    pub fn locus(&self) -> &Ideal {
        &self.locus
    }
}

#[derive(Clone, Debug)]
pub struct TraceStep {
    pub node: usize,
    pub phase: u8,
    pub center: Ideal,
    pub mu_before: u32,
    pub mu_after: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafReport {
    pub node: usize,
    pub strict_smooth: bool,
    pub snc: bool,
}

#[derive(Clone, Debug)]
pub struct ResolutionTrace {
    pub curve: Polynomial,
    pub tree: ChartTree,
    pub steps: Vec<TraceStep>,
    pub verdicts: Vec<LeafReport>,
}

/// Maximal order of the curve's strict transform on a node; 0 where the
/// strict transform misses the chart.
fn curve_order(tree: &ChartTree, id: usize) -> Result<u32> {
    let node = tree.node(id)?;
    let Some(rec) = node.record(CURVE) else { return Ok(0) };
    if rec.ideal.contains_one()? {
        return Ok(0);
    }
    Ok(order_locus(&node.presentation, &rec.ideal)?.0)
}

fn leaf_report(tree: &ChartTree, id: usize) -> Result<LeafReport> {
    let node = tree.node(id)?;
    let strict_smooth = match node.record(CURVE) {
        Some(rec) if !node.is_empty()? && !rec.ideal.contains_one()? => is_smooth(&QuotientPresentation::new(rec.ideal.clone()))?.smooth,
        _ => true,
    };
    let snc = match divisor_at(tree, id)? {
        Some(d) => snc_check_global(&d)?.snc,
        None => true,
    };
    Ok(LeafReport { node: id, strict_smooth, snc })
}

/// Embedded resolution of a reduced plane curve: blow up the maximal
/// order locus of the strict transform while its order is at least 2, then
/// blow up points until the curve and the exceptional curves cross
/// normally.
pub fn resolve_plane_curve(f: &Polynomial, max_steps: usize) -> Result<ResolutionTrace> {
    let ring = f.ring().clone();
    if ring.arity() != 2 {
        return Err(Error::InvalidArgument(format!("expected a plane curve, the ring has {} variables", ring.arity())));
    }
    if f.is_constant() {
        return Err(Error::InvalidArgument("the curve equation is constant".into()));
    }
    let singular = Ideal::new(&ring, vec![f.clone(), f.partial_derivative(0)?, f.partial_derivative(1)?])?;
    if singular.dimension()? > 0 {
        return Err(Error::InvalidArgument(format!("{f} is not squarefree")));
    }
    let root = QuotientPresentation::polynomial_ring(&ring);
    let mut tree = ChartTree::new(root.clone()).with_record(CURVE, Ideal::principal(f.clone()), TransformRule::Strict)?;
    let initial = MarkedIdeal::new(root, Ideal::principal(f.clone()), u32::MAX)?;
    let mut steps: Vec<TraceStep> = Vec::new();

    let mut frontier = vec![(0usize, initial.order())];
    while !frontier.is_empty() {
        let marked = par::try_map(&frontier, |&(id, control)| -> Result<Option<(usize, MarkedIdeal)>> {
            let node = tree.node(id)?;
            let rec = node.record(CURVE).expect("curve record");
            if node.is_empty()? || rec.ideal.contains_one()? {
                return Ok(None);
            }
            let m = MarkedIdeal::new(node.presentation.clone(), rec.ideal.clone(), control)?;
            Ok(if m.order() >= 2 { Some((id, m)) } else { None })
        })?;
        let mut next = Vec::new();
        for (id, m) in marked.into_iter().flatten() {
            if steps.len() >= max_steps {
                return Err(Error::StepsExhausted { limit: max_steps, context: format!("order {} remains at chart {}", m.order(), tree.path_label(id)) });
            }
            log::debug!("order {} at chart [{}], blowing up {}", m.order(), tree.path_label(id), m.locus());
            let center = Center::normalized(m.ambient.clone(), m.locus())?;
            let children = tree.extend_in_place(id, center)?;
            steps.push(TraceStep { node: id, phase: 1, center: m.locus().clone(), mu_before: m.order(), mu_after: 0 });
            next.extend(children.into_iter().map(|c| (c, m.order())));
        }
        frontier = next;
    }

    let (normalizing, _) = normalize_leaves(&mut tree, max_steps, steps.len())?;
    for s in normalizing {
        steps.push(TraceStep { node: s.node, phase: 2, center: s.center, mu_before: 0, mu_after: 0 });
    }
    finish(f.clone(), tree, steps)
}

/// Resolves several curves, in parallel when enabled; results keep the
/// input order.
pub fn resolve_batch(curves: &[Polynomial], max_steps: usize) -> Vec<Result<ResolutionTrace>> {
    par::map(curves, |f| resolve_plane_curve(f, max_steps))
}

/// Fills in orders, orders steps by phase then depth-first position, and
/// computes the per-leaf verdicts.
fn finish(curve: Polynomial, tree: ChartTree, mut steps: Vec<TraceStep>) -> Result<ResolutionTrace> {
    let orders = par::try_map(&steps, |s| -> Result<(u32, u32)> {
        let before = curve_order(&tree, s.node)?;
        let mut after = 0;
        for &c in &tree.node(s.node)?.children {
            after = after.max(curve_order(&tree, c)?);
        }
        Ok((before, after))
    })?;
    for (s, (b, a)) in steps.iter_mut().zip(orders) {
        s.mu_before = b;
        s.mu_after = a;
    }
    let position = positions(&tree);
    steps.sort_by_key(|s| (s.phase, position[s.node]));
    let leaves = tree.leaves();
    let mut verdicts = par::try_map(&leaves, |&id| leaf_report(&tree, id))?;
    verdicts.sort_by_key(|v| position[v.node]);
    Ok(ResolutionTrace { curve, tree, steps, verdicts })
}

fn positions(tree: &ChartTree) -> Vec<usize> {
    let mut position = vec![0; tree.len()];
    for (i, id) in tree.preorder().into_iter().enumerate() {
        position[id] = i;
    }
    position
}

impl ResolutionTrace {
    pub fn phase_steps(&self, phase: u8) -> usize {
        self.steps.iter().filter(|s| s.phase == phase).count()
    }

    /// Whether every leaf passed both verdicts.
    pub fn resolved(&self) -> bool {
        self.verdicts.iter().all(|v| v.strict_smooth && v.snc)
    }

    /// The trace as it stood after its first `n` steps.
    pub fn truncate(&self, n: usize) -> Result<ResolutionTrace> {
        let keep: Vec<usize> = self.steps.iter().take(n).map(|s| s.node).collect();
        let (tree, map) = self.tree.restricted(&keep);
        let steps = self
            .steps
            .iter()
            .take(n)
            .map(|s| TraceStep { node: map[s.node].expect("kept node"), ..s.clone() })
            .collect();
        finish(self.curve.clone(), tree, steps)
    }

    /// One line per step: depth, chart path, center generators and the
    /// order before and after.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            let node = &self.tree.nodes()[s.node];
            out.push_str(&format!(
                "phase {} depth {} chart [{}] center {} mu {} -> {}\n",
                s.phase,
                node.depth,
                self.tree.path_label(s.node),
                s.center,
                s.mu_before,
                s.mu_after
            ));
        }
        for v in &self.verdicts {
            out.push_str(&format!(
                "leaf [{}] strict-smooth {} snc {}\n",
                self.tree.path_label(v.node),
                v.strict_smooth,
                v.snc
            ));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut obj = match self.tree.to_json() {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        obj.insert("curve".into(), Value::String(self.curve.to_string()));
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|s| {
                json!({
                    "phase": s.phase,
                    "path": self.tree.path_label(s.node),
                    "depth": self.tree.nodes()[s.node].depth,
                    "center": s.center.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                    "mu_before": s.mu_before,
                    "mu_after": s.mu_after,
                })
            })
            .collect();
        obj.insert("steps".into(), Value::Array(steps));
        let verdicts: Vec<Value> = self
            .verdicts
            .iter()
            .map(|v| json!({ "path": self.tree.path_label(v.node), "strict_smooth": v.strict_smooth, "snc": v.snc }))
            .collect();
        obj.insert("verdicts".into(), Value::Array(verdicts));
        Value::Object(obj)
    }

    pub fn from_json(value: &Value) -> Result<ResolutionTrace> {
        let bad = |what: &str| Error::InvalidArgument(format!("malformed resolution trace: {what}"));
        let tree = ChartTree::from_json(value)?;
        let ring = tree.root().ring().clone();
        let curve = parse_polynomial(&ring, value.get("curve").and_then(Value::as_str).ok_or_else(|| bad("curve"))?)?;
        let by_path = |path: &str| -> Result<usize> {
            (0..tree.len()).find(|&id| tree.path_label(id) == path).ok_or_else(|| bad("unknown chart path"))
        };
        let mut steps = Vec::new();
        for s in value.get("steps").and_then(Value::as_array).ok_or_else(|| bad("steps"))? {
            let node = by_path(s.get("path").and_then(Value::as_str).ok_or_else(|| bad("step path"))?)?;
            let nring = tree.node(node)?.ring().clone();
            let gens = s
                .get("center")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("step center"))?
                .iter()
                .map(|g| parse_polynomial(&nring, g.as_str().ok_or_else(|| bad("center generator"))?))
                .collect::<Result<Vec<_>>>()?;
            let num = |k: &str| s.get(k).and_then(Value::as_u64).ok_or_else(|| bad(k));
            steps.push(TraceStep {
                node,
                phase: num("phase")? as u8,
                center: Ideal::new(&nring, gens)?,
                mu_before: num("mu_before")? as u32,
                mu_after: num("mu_after")? as u32,
            });
        }
        let mut verdicts = Vec::new();
        for v in value.get("verdicts").and_then(Value::as_array).ok_or_else(|| bad("verdicts"))? {
            let flag = |k: &str| v.get(k).and_then(Value::as_bool).ok_or_else(|| bad(k));
            verdicts.push(LeafReport {
                node: by_path(v.get("path").and_then(Value::as_str).ok_or_else(|| bad("verdict path"))?)?,
                strict_smooth: flag("strict_smooth")?,
                snc: flag("snc")?,
            });
        }
        Ok(ResolutionTrace { curve, tree, steps, verdicts })
    }
}
