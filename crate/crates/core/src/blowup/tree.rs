use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Map, Value};

use super::chart::{blowup_charts, controlled_transform, strict_transform, total_transform, Center, Chart};
use crate::ideal::{Ideal, QuotientPresentation};
use crate::par;
use crate::poly::parse_polynomial;
use crate::poly::{MonomialOrder, PolyRing, Polynomial, Ring};
use crate::{Error, Result};

/// How a named ideal is carried from a node to its charts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformRule {
    Total,
    Strict,
    Controlled(u32),
}

impl fmt::Display for TransformRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformRule::Total => f.write_str("total"),
            TransformRule::Strict => f.write_str("strict"),
            TransformRule::Controlled(c) => write!(f, "controlled({c})"),
        }
    }
}

impl TransformRule {
    pub fn parse(text: &str) -> Option<TransformRule> {
        match text.trim() {
            "total" => Some(TransformRule::Total),
            "strict" => Some(TransformRule::Strict),
            t => {
                let inner = t.strip_prefix("controlled(")?.strip_suffix(')')?;
                inner.trim().parse().ok().map(TransformRule::Controlled)
            }
        }
    }

    fn apply(self, chart: &Chart, ideal: &Ideal) -> Result<Ideal> {
        match self {
            TransformRule::Total => total_transform(chart, ideal),
            TransformRule::Strict => strict_transform(chart, ideal),
            TransformRule::Controlled(c) => controlled_transform(chart, ideal, c),
        }
    }
}

/// A named ideal living on a node, including the node's relations.
#[derive(Clone, Debug)]
pub struct TransformRecord {
    pub ideal: Ideal,
    pub rule: TransformRule,
    display: Vec<Polynomial>,
}

impl TransformRecord {
    pub fn new(presentation: &QuotientPresentation, ideal: Ideal, rule: TransformRule) -> Result<TransformRecord> {
        let ideal = presentation.lift(&ideal.map_to_ring(presentation.ring())?)?;
        let display = ideal.modulo(presentation.relations())?;
        Ok(TransformRecord { ideal, rule, display })
    }

    /// Generators not already implied by the node relations.
    pub fn display_gens(&self) -> &[Polynomial] {
        &self.display
    }
}

#[derive(Clone, Debug)]
pub struct ChartNode {
    pub id: usize,
    pub parent: Option<usize>,
    pub chart: Option<Chart>,
    pub presentation: QuotientPresentation,
    pub records: BTreeMap<String, TransformRecord>,
    pub center: Option<Center>,
    pub children: Vec<usize>,
    pub depth: usize,
}

impl ChartNode {
    pub fn ring(&self) -> &Ring {
        self.presentation.ring()
    }

    pub fn record(&self, name: &str) -> Option<&TransformRecord> {
        self.records.get(name)
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// True when the node's relations contain 1.
    pub fn is_empty(&self) -> Result<bool> {
        self.presentation.relations().contains_one()
    }
}

/// Arena of charts produced by iterated blow ups; node 0 is the root.
#[derive(Clone, Debug)]
pub struct ChartTree {
    nodes: Vec<ChartNode>,
}

impl ChartTree {
    pub fn new(root: QuotientPresentation) -> ChartTree {
        let node = ChartNode {
            id: 0,
            parent: None,
            chart: None,
            presentation: root,
            records: BTreeMap::new(),
            center: None,
            children: Vec::new(),
            depth: 0,
        };
        ChartTree { nodes: vec![node] }
    }

    /// Attaches a named ideal to the root.
    pub fn with_record(mut self, name: &str, ideal: Ideal, rule: TransformRule) -> Result<ChartTree> {
        let record = TransformRecord::new(&self.nodes[0].presentation, ideal, rule)?;
        self.nodes[0].records.insert(name.to_string(), record);
        Ok(self)
    }

    pub fn root(&self) -> &ChartNode {
        &self.nodes[0]
    }

    pub fn node(&self, id: usize) -> Result<&ChartNode> {
        self.nodes.get(id).ok_or(Error::IndexOutOfRange { index: id, arity: self.nodes.len() })
    }

    pub fn nodes(&self) -> &[ChartNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn leaves(&self) -> Vec<usize> {
        self.nodes.iter().filter(|n| n.is_leaf()).map(|n| n.id).collect()
    }

    /// Number of blow ups performed.
    pub fn steps(&self) -> usize {
        self.nodes.iter().filter(|n| n.center.is_some()).count()
    }

    pub fn depth(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    /// Chart indices from the root down to `id`.
    pub fn path(&self, id: usize) -> Vec<usize> {
        let mut path = Vec::new();
        let mut cur = id;
        while let Some(p) = self.nodes[cur].parent {
            path.push(self.nodes[cur].chart.as_ref().map_or(0, Chart::generator_index));
            cur = p;
        }
        path.reverse();
        path
    }

    /// Dotted chart path, empty for the root.
    pub fn path_label(&self, id: usize) -> String {
        self.path(id).iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")
    }

    /// Images of the root variables in the ring of node `id`.
    pub fn pullback_images(&self, id: usize) -> Result<Vec<Polynomial>> {
        let node = self.node(id)?;
        match (node.parent, &node.chart) {
            (Some(p), Some(chart)) => {
                let above = self.pullback_images(p)?;
                above.iter().map(|f| f.substitute(chart.substitution())).collect()
            }
            _ => Ok((0..node.ring().arity()).map(|i| Polynomial::var(node.ring(), i)).collect()),
        }
    }

    /// Blows up `center` on node `node`, carrying every record along by its
    /// rule and recording the exceptional divisor as `E<depth>`.
    pub fn extend_in_place(&mut self, node: usize, center: Center) -> Result<Vec<usize>> {
        let parent = self.node(node)?.clone();
        if !parent.is_leaf() {
            return Err(Error::InvalidArgument(format!("node {node} has already been blown up")));
        }
        if !center.ambient().same_as(&parent.presentation)? {
            return Err(Error::RingMismatch(format!("center ambient {} does not match node {node}", center.ambient().ring())));
        }
        let step = blowup_charts(&center)?;
        let depth = parent.depth + 1;
        let built = par::try_map(&step.charts, |chart| {
            let chart = chart.simplify()?;
            let presentation = chart.presentation();
            let mut records = BTreeMap::new();
            for (name, rec) in &parent.records {
                let ideal = rec.rule.apply(&chart, &rec.ideal)?;
                records.insert(name.clone(), TransformRecord::new(&presentation, ideal, rec.rule)?);
            }
            let exc = TransformRecord::new(&presentation, chart.exceptional().clone(), TransformRule::Strict)?;
            records.insert(format!("E{depth}"), exc);
            Ok((chart, presentation, records))
        })?;
        let mut ids = Vec::new();
        for (chart, presentation, records) in built {
            let id = self.nodes.len();
            self.nodes.push(ChartNode {
                id,
                parent: Some(node),
                chart: Some(chart),
                presentation,
                records,
                center: None,
                children: Vec::new(),
                depth,
            });
            ids.push(id);
        }
        self.nodes[node].center = Some(center);
        self.nodes[node].children = ids.clone();
        Ok(ids)
    }

    /// Node ids in depth-first preorder.
    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![0];
        while let Some(id) = stack.pop() {
            out.push(id);
            stack.extend(self.nodes[id].children.iter().rev());
        }
        out
    }

    /// Copy keeping only the blow ups performed at nodes in `keep`; every
    /// other node becomes a leaf and its descendants are dropped. Returns the
    /// new tree and the map from old to new ids.
    pub fn restricted(&self, keep: &[usize]) -> (ChartTree, Vec<Option<usize>>) {
        let mut map = vec![None; self.nodes.len()];
        let mut nodes: Vec<ChartNode> = Vec::new();
        let mut stack = vec![(0usize, None::<usize>)];
        while let Some((old, parent)) = stack.pop() {
            let id = nodes.len();
            map[old] = Some(id);
            let mut node = self.nodes[old].clone();
            node.id = id;
            node.parent = parent;
            node.children = Vec::new();
            let expand = keep.contains(&old) && node.center.is_some();
            if !expand {
                node.center = None;
            }
            if let Some(p) = parent {
                nodes[p].children.push(id);
            }
            nodes.push(node);
            if expand {
                for &c in self.nodes[old].children.iter().rev() {
                    stack.push((c, Some(id)));
                }
            }
        }
        (ChartTree { nodes }, map)
    }

    pub fn to_json(&self) -> Value {
        self.node_json(0)
    }

    fn node_json(&self, id: usize) -> Value {
        let node = &self.nodes[id];
        let strings = |ps: &[Polynomial]| Value::Array(ps.iter().map(|p| Value::String(p.to_string())).collect());
        let mut obj = Map::new();
        obj.insert("path".into(), Value::String(self.path_label(id)));
        obj.insert(
            "ring".into(),
            json!({ "vars": node.ring().vars(), "order": node.ring().order().to_string() }),
        );
        obj.insert("relations".into(), strings(&node.presentation.relation_gens()));
        if let Some(chart) = &node.chart {
            obj.insert("generator_index".into(), json!(chart.generator_index()));
            obj.insert("exceptional".into(), Value::String(chart.generator().to_string()));
            let parent_ring = chart.parent_ring();
            let subs: Map<String, Value> = parent_ring
                .vars()
                .iter()
                .zip(chart.substitution())
                .map(|(v, p)| (v.clone(), Value::String(p.to_string())))
                .collect();
            obj.insert("substitution".into(), Value::Object(subs));
        }
        let transforms: Map<String, Value> = node
            .records
            .iter()
            .map(|(name, rec)| {
                (name.clone(), json!({ "rule": rec.rule.to_string(), "ideal": strings(rec.display_gens()) }))
            })
            .collect();
        obj.insert("transforms".into(), Value::Object(transforms));
        obj.insert("center".into(), node.center.as_ref().map_or(Value::Null, |c| strings(c.gens())));
        obj.insert("charts".into(), Value::Array(node.children.iter().map(|&c| self.node_json(c)).collect()));
        Value::Object(obj)
    }

    /// Rebuilds a tree from [`ChartTree::to_json`] output.
    pub fn from_json(value: &Value) -> Result<ChartTree> {
        let mut tree = ChartTree { nodes: Vec::new() };
        tree.read_node(value, None)?;
        Ok(tree)
    }

    fn read_node(&mut self, value: &Value, parent: Option<usize>) -> Result<usize> {
        let bad = |what: &str| Error::InvalidArgument(format!("malformed chart tree: {what}"));
        let obj = value.as_object().ok_or_else(|| bad("node is not an object"))?;
        let ring_obj = obj.get("ring").and_then(Value::as_object).ok_or_else(|| bad("missing ring"))?;
        let vars: Vec<String> = ring_obj
            .get("vars")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing ring.vars"))?
            .iter()
            .map(|v| v.as_str().map(str::to_string).ok_or_else(|| bad("variable name")))
            .collect::<Result<_>>()?;
        let order = match ring_obj.get("order").and_then(Value::as_str) {
            Some(o) => MonomialOrder::parse(o).ok_or_else(|| bad("unknown order"))?,
            None => MonomialOrder::GrevLex,
        };
        let ring = PolyRing::new(vars, order)?;
        let polys = |key: &str| -> Result<Vec<Polynomial>> {
            match obj.get(key) {
                None | Some(Value::Null) => Ok(Vec::new()),
                Some(Value::Array(items)) => items
                    .iter()
                    .map(|s| parse_polynomial(&ring, s.as_str().ok_or_else(|| bad(key))?))
                    .collect(),
                Some(_) => Err(bad(key)),
            }
        };
        let relations = Ideal::new(&ring, polys("relations")?)?;
        let presentation = QuotientPresentation::new(relations.clone());
        let depth = parent.map_or(0, |p| self.nodes[p].depth + 1);
        let chart = match parent {
            None => None,
            Some(p) => {
                let parent_ring = self.nodes[p].ring().clone();
                let index = obj.get("generator_index").and_then(Value::as_u64).ok_or_else(|| bad("generator_index"))?;
                let g = obj.get("exceptional").and_then(Value::as_str).ok_or_else(|| bad("exceptional"))?;
                let g = parse_polynomial(&ring, g)?;
                let subs = obj.get("substitution").and_then(Value::as_object).ok_or_else(|| bad("substitution"))?;
                let images = parent_ring
                    .vars()
                    .iter()
                    .map(|v| {
                        let text = subs.get(v).and_then(Value::as_str).ok_or_else(|| bad("substitution entry"))?;
                        parse_polynomial(&ring, text)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Some(Chart::from_parts(index as usize, g, parent_ring, relations, images)?)
            }
        };
        let mut records = BTreeMap::new();
        if let Some(map) = obj.get("transforms").and_then(Value::as_object) {
            for (name, rec) in map {
                let rule = rec.get("rule").and_then(Value::as_str).and_then(TransformRule::parse).ok_or_else(|| bad("rule"))?;
                let gens = rec
                    .get("ideal")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("transform ideal"))?
                    .iter()
                    .map(|s| parse_polynomial(&ring, s.as_str().ok_or_else(|| bad("generator"))?))
                    .collect::<Result<Vec<_>>>()?;
                records.insert(name.clone(), TransformRecord::new(&presentation, Ideal::new(&ring, gens)?, rule)?);
            }
        }
        let center = match polys("center")? {
            gens if gens.is_empty() => None,
            gens => Some(Center::new(presentation.clone(), Ideal::new(&ring, gens)?)?),
        };
        let id = self.nodes.len();
        self.nodes.push(ChartNode {
            id,
            parent,
            chart,
            presentation,
            records,
            center,
            children: Vec::new(),
            depth,
        });
        if let Some(children) = obj.get("charts").and_then(Value::as_array) {
            let mut ids = Vec::new();
            for c in children {
                ids.push(self.read_node(c, Some(id))?);
            }
            self.nodes[id].children = ids;
        }
        Ok(id)
    }
}

/// Returns a copy of `tree` with node `node` blown up along `center`.
pub fn extend_tree(tree: &ChartTree, node: usize, center: Center) -> Result<ChartTree> {
    let mut next = tree.clone();
    next.extend_in_place(node, center)?;
    Ok(next)
}
