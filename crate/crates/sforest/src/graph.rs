//! Finite graphs and their destruction histories: the map from a graph to
//! its set of tree-like removal records, its inverse, and the replay of a
//! record as a film of residual graphs.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sterm::STerm;
use crate::var::VarName;

/// An undirected graph without loops on a finite nonempty vertex set. Edges
/// are stored with their endpoints sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphWire", into = "GraphWire")]
pub struct Graph {
    vertices: BTreeSet<VarName>,
    edges: BTreeSet<(VarName, VarName)>,
}

#[derive(Serialize, Deserialize)]
struct GraphWire {
    vertices: Vec<VarName>,
    edges: Vec<(VarName, VarName)>,
}

impl TryFrom<GraphWire> for Graph {
    type Error = Error;

    fn try_from(w: GraphWire) -> Result<Self> {
        Graph::new(w.vertices, w.edges)
    }
}

impl From<Graph> for GraphWire {
    fn from(g: Graph) -> GraphWire {
        GraphWire {
            vertices: g.vertices.into_iter().collect(),
            edges: g.edges.into_iter().collect(),
        }
    }
}

impl Graph {
    pub fn new(
        vertices: impl IntoIterator<Item = VarName>,
        edges: impl IntoIterator<Item = (VarName, VarName)>,
    ) -> Result<Self> {
        let vertices: BTreeSet<VarName> = vertices.into_iter().collect();
        if vertices.is_empty() {
            return Err(Error::InvalidGraph("empty vertex set".into()));
        }
        let mut normalized = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at {a}")));
            }
            if !vertices.contains(&a) || !vertices.contains(&b) {
                return Err(Error::InvalidGraph(format!("edge ({a},{b}) outside vertex set")));
            }
            let edge = if a < b { (a, b) } else { (b, a) };
            normalized.insert(edge);
        }
        Ok(Graph { vertices, edges: normalized })
    }

    pub fn single_vertex(x: VarName) -> Graph {
        Graph { vertices: BTreeSet::from([x]), edges: BTreeSet::new() }
    }

    pub fn vertices(&self) -> &BTreeSet<VarName> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(VarName, VarName)> {
        &self.edges
    }

    pub fn has_edge(&self, a: &VarName, b: &VarName) -> bool {
        let key = if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        self.edges.contains(&key)
    }

    fn induced(&self, sub: &BTreeSet<VarName>) -> Graph {
        let edges = self
            .edges
            .iter()
            .filter(|(a, b)| sub.contains(a) && sub.contains(b))
            .cloned()
            .collect();
        Graph { vertices: sub.clone(), edges }
    }

    fn component_sets(&self) -> Vec<BTreeSet<VarName>> {
        let mut remaining = self.vertices.clone();
        let mut out = Vec::new();
        while let Some(seed) = remaining.iter().next().cloned() {
            let mut comp = BTreeSet::from([seed.clone()]);
            let mut frontier = vec![seed];
            while let Some(v) = frontier.pop() {
                for (a, b) in &self.edges {
                    let other = if *a == v {
                        b
                    } else if *b == v {
                        a
                    } else {
                        continue;
                    };
                    if comp.insert(other.clone()) {
                        frontier.push(other.clone());
                    }
                }
            }
            remaining.retain(|v| !comp.contains(v));
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.component_sets().len() <= 1
    }

    /// Connected components as graphs, sorted by least vertex.
    pub fn components(&self) -> Vec<Graph> {
        self.component_sets().into_iter().map(|c| self.induced(&c)).collect()
    }

    /// Drops a vertex and its incident edges; `None` when the vertex was the
    /// last one.
    pub fn remove_vertex(&self, x: &VarName) -> Result<Option<Graph>> {
        if !self.vertices.contains(x) {
            return Err(Error::NotInGraph(x.clone()));
        }
        if self.vertices.len() == 1 {
            return Ok(None);
        }
        let mut sub = self.vertices.clone();
        sub.remove(x);
        Ok(Some(self.induced(&sub)))
    }
}

/// The destruction histories of a graph together with the graph itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestSet {
    pub graph: Graph,
    pub forests: BTreeSet<STerm>,
}

/// All removal records of the graph: a single vertex records itself, a
/// connected graph records any vertex followed by a record of the rest, and a
/// disconnected graph records its components simultaneously. Memoized on
/// induced vertex subsets.
pub fn t_forests(g: &Graph) -> ForestSet {
    let mut memo: BTreeMap<BTreeSet<VarName>, BTreeSet<STerm>> = BTreeMap::new();
    let forests = t_forests_memo(g, &mut memo);
    ForestSet { graph: g.clone(), forests }
}

fn t_forests_memo(
    g: &Graph,
    memo: &mut BTreeMap<BTreeSet<VarName>, BTreeSet<STerm>>,
) -> BTreeSet<STerm> {
    if let Some(hit) = memo.get(g.vertices()) {
        return hit.clone();
    }
    let mut out = BTreeSet::new();
    if g.vertices.len() == 1 {
        out.insert(STerm::var(g.vertices.iter().next().unwrap().clone()));
    } else if g.is_connected() {
        for x in g.vertices.clone() {
            let rest = g.remove_vertex(&x).unwrap().expect("at least two vertices");
            for t in t_forests_memo(&rest, memo) {
                out.insert(STerm::prod([STerm::var(x.clone()), t]));
            }
        }
    } else {
        // The full component decomposition in one step; canonical n-ary sums
        // make the binary split order immaterial.
        let component_forests: Vec<BTreeSet<STerm>> = g
            .components()
            .iter()
            .map(|c| t_forests_memo(c, memo))
            .collect();
        let mut sums: Vec<Vec<STerm>> = vec![Vec::new()];
        for forest in &component_forests {
            let mut next = Vec::new();
            for partial in &sums {
                for t in forest {
                    let mut ext = partial.clone();
                    ext.push(t.clone());
                    next.push(ext);
                }
            }
            sums = next;
        }
        for args in sums {
            out.insert(STerm::sum(args));
        }
    }
    memo.insert(g.vertices().clone(), out.clone());
    out
}

/// Whether some sum inside the term separates `x` and `y` into different
/// arguments.
fn sum_separates(t: &STerm, x: &VarName, y: &VarName) -> bool {
    match t {
        STerm::Var(_) => false,
        STerm::Sum(args) => {
            let holds_x = args.iter().position(|a| a.variables().contains(x));
            let holds_y = args.iter().position(|a| a.variables().contains(y));
            match (holds_x, holds_y) {
                (Some(i), Some(j)) if i != j => true,
                _ => args.iter().any(|a| sum_separates(a, x, y)),
            }
        }
        STerm::Prod(args) => args.iter().any(|a| sum_separates(a, x, y)),
    }
}

/// Rebuilds the unique graph with the given set of destruction histories:
/// two vertices are adjacent exactly when no history ever separates them by
/// a sum.
pub fn reconstruct_graph(
    vertices: &BTreeSet<VarName>,
    forests: &BTreeSet<STerm>,
) -> Result<Graph> {
    if vertices.is_empty() {
        return Err(Error::MalformedForestSet("empty vertex set".into()));
    }
    if forests.is_empty() {
        return Err(Error::MalformedForestSet("empty forest set".into()));
    }
    for t in forests {
        if !t.is_s_forest() {
            return Err(Error::MalformedForestSet(format!("{t} is not an S-forest")));
        }
        if &t.variables() != vertices {
            return Err(Error::MalformedForestSet(format!(
                "{t} is not over the given vertex set"
            )));
        }
    }
    let mut edges = Vec::new();
    let list: Vec<&VarName> = vertices.iter().collect();
    for (i, x) in list.iter().enumerate() {
        for y in &list[i + 1..] {
            if forests.iter().all(|t| !sum_separates(t, x, y)) {
                edges.push(((*x).clone(), (*y).clone()));
            }
        }
    }
    Graph::new(vertices.iter().cloned(), edges)
}

/// One step of a destruction: the residual graphs of all parallel branches,
/// sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilmFrame {
    pub graphs: Vec<Graph>,
}

/// Replays a destruction history over the graph. Each frame shows the
/// residual graphs of all parallel branches; a step removes, in every branch,
/// the vertex its record names next, with sums splitting a branch into
/// simultaneous sub-branches beforehand. The last frame is empty.
pub fn destruction_film(g: &Graph, t: &STerm) -> Result<Vec<FilmFrame>> {
    if !t_forests(g).forests.contains(t) {
        return Err(Error::NotAForestOf);
    }
    let mut branches = split_sums(g.clone(), t.clone());
    let mut frames = vec![frame_of(&branches)];
    while !branches.is_empty() {
        let mut next = Vec::new();
        for (graph, term) in branches {
            let (head, rest) = match &term {
                STerm::Var(v) => (v.clone(), None),
                STerm::Prod(args) => {
                    let STerm::Var(v) = &args[0] else {
                        unreachable!("membership in the forest set forces a variable head")
                    };
                    (v.clone(), Some(STerm::prod(args[1..].iter().cloned())))
                }
                STerm::Sum(_) => unreachable!("sums were split eagerly"),
            };
            let residual = graph.remove_vertex(&head)?;
            match (residual, rest) {
                (Some(graph), Some(rest)) => next.extend(split_sums(graph, rest)),
                (None, None) => {}
                _ => unreachable!("record length matches vertex count"),
            }
        }
        branches = next;
        frames.push(frame_of(&branches));
    }
    Ok(frames)
}

/// Splits a branch at top-level sums into one branch per summand.
fn split_sums(g: Graph, t: STerm) -> Vec<(Graph, STerm)> {
    match t {
        STerm::Sum(args) => args
            .into_iter()
            .flat_map(|a| {
                let vars = a.variables();
                let sub = g.induced(&vars);
                split_sums(sub, a)
            })
            .collect(),
        other => vec![(g, other)],
    }
}

fn frame_of(branches: &[(Graph, STerm)]) -> FilmFrame {
    let mut graphs: Vec<Graph> = branches.iter().map(|(g, _)| g.clone()).collect();
    graphs.sort();
    FilmFrame { graphs }
}
