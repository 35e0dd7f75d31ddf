//! The permutohedron 1-skeleton on the permutations of a variable set, the
//! partition of its vertices by the linear extensions of each destruction
//! history, and the collapsed skeleton a graph induces.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde_json::json;

use crate::error::{Error, Result};
use crate::graph::{t_forests, Graph};
use crate::relationship::{linear_extensions, Permutation};
use crate::sterm::{render_sterm, STerm};
use crate::var::VarName;

/// Skeleton construction stops at 8 variables; verification at 7. The vertex
/// counts grow factorially.
pub const BUILD_BUDGET: usize = 8;
pub const VERIFY_BUDGET: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

/// All permutations of a domain, with an edge between two permutations that
/// differ by one transposition of immediate neighbours. Vertices are sorted
/// lexicographically; edges hold indices into the vertex list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutohedronSkeleton {
    domain: BTreeSet<VarName>,
    vertices: Vec<Permutation>,
    edges: BTreeSet<(usize, usize)>,
}

impl PermutohedronSkeleton {
    pub fn domain(&self) -> &BTreeSet<VarName> {
        &self.domain
    }

    pub fn vertices(&self) -> &[Permutation] {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.vertices.binary_search(p).ok()
    }

    pub fn export(&self, format: ExportFormat) -> String {
        let labels: Vec<String> = self.vertices.iter().map(|p| p.to_string()).collect();
        export_skeleton(&labels, &self.edges, None, format)
    }
}

/// Builds the full skeleton for up to [`BUILD_BUDGET`] variables.
pub fn permutohedron(domain: &BTreeSet<VarName>) -> Result<PermutohedronSkeleton> {
    if domain.is_empty() || domain.len() > BUILD_BUDGET {
        return Err(Error::BudgetExceeded { size: domain.len(), limit: BUILD_BUDGET });
    }
    let vertices = all_permutations(domain);
    let index: HashMap<&Permutation, usize> =
        vertices.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut edges = BTreeSet::new();
    for (i, p) in vertices.iter().enumerate() {
        let seq = p.sequence();
        for k in 0..seq.len().saturating_sub(1) {
            let mut swapped = seq.to_vec();
            swapped.swap(k, k + 1);
            let neighbour = Permutation::new(swapped).unwrap();
            let j = index[&neighbour];
            edges.insert((i.min(j), i.max(j)));
        }
    }
    Ok(PermutohedronSkeleton { domain: domain.clone(), vertices, edges })
}

/// All permutations of the domain in lexicographic order.
pub fn all_permutations(domain: &BTreeSet<VarName>) -> Vec<Permutation> {
    use itertools::Itertools;
    let items: Vec<VarName> = domain.iter().cloned().collect();
    items
        .iter()
        .cloned()
        .permutations(items.len())
        .map(|seq| Permutation::new(seq).unwrap())
        .collect()
}

/// The unique destruction history whose linear extensions contain the
/// permutation: the head of the sequence leads a connected graph's record,
/// and a disconnected graph splits the sequence as a shuffle over its
/// components.
pub fn class_of_permutation(g: &Graph, p: &Permutation) -> Result<STerm> {
    if &p.domain() != g.vertices() {
        return Err(Error::DomainMismatch);
    }
    Ok(class_rec(g, p.sequence()))
}

fn class_rec(g: &Graph, seq: &[VarName]) -> STerm {
    if seq.len() == 1 {
        return STerm::var(seq[0].clone());
    }
    if g.is_connected() {
        let head = &seq[0];
        let rest = g
            .remove_vertex(head)
            .expect("sequence runs over the vertices")
            .expect("at least two vertices");
        return STerm::prod([STerm::var(head.clone()), class_rec(&rest, &seq[1..])]);
    }
    let parts = g.components().into_iter().map(|comp| {
        let sub: Vec<VarName> =
            seq.iter().filter(|v| comp.vertices().contains(v)).cloned().collect();
        class_rec(&comp, &sub)
    });
    STerm::sum(parts)
}

/// The permutohedron skeleton of a graph's vertex set collapsed along the
/// partition into destruction-history classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseSkeleton {
    graph: Graph,
    classes: BTreeMap<Permutation, STerm>,
    vertices: Vec<STerm>,
    edges: BTreeSet<(usize, usize)>,
}

impl CollapseSkeleton {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Total, single-valued map from permutations to their history.
    pub fn classes(&self) -> &BTreeMap<Permutation, STerm> {
        &self.classes
    }

    /// The histories labelling the collapsed vertices, sorted.
    pub fn vertices(&self) -> &[STerm] {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn class_size(&self, t: &STerm) -> usize {
        self.classes.values().filter(|s| *s == t).count()
    }

    pub fn export(&self, format: ExportFormat) -> String {
        let labels: Vec<String> = self.vertices.iter().map(render_sterm).collect();
        let sizes: Vec<(String, usize)> = self
            .vertices
            .iter()
            .map(|t| (render_sterm(t), self.class_size(t)))
            .collect();
        export_skeleton(&labels, &self.edges, Some(&sizes), format)
    }
}

/// Classifies every permutation of the vertex set and keeps an edge between
/// two histories whenever some permutohedron edge crosses their classes.
/// Self-loops are dropped and multi-edges merge.
pub fn collapse(g: &Graph) -> Result<CollapseSkeleton> {
    let skeleton = permutohedron(g.vertices())?;
    let mut classes = BTreeMap::new();
    for p in skeleton.vertices() {
        classes.insert(p.clone(), class_of_permutation(g, p)?);
    }
    let vertex_set: BTreeSet<STerm> = classes.values().cloned().collect();
    let vertices: Vec<STerm> = vertex_set.into_iter().collect();
    let index: HashMap<&STerm, usize> =
        vertices.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut edges = BTreeSet::new();
    for (i, j) in skeleton.edges() {
        let a = index[&classes[&skeleton.vertices()[*i]]];
        let b = index[&classes[&skeleton.vertices()[*j]]];
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    Ok(CollapseSkeleton { graph: g.clone(), classes, vertices, edges })
}

fn export_skeleton(
    labels: &[String],
    edges: &BTreeSet<(usize, usize)>,
    class_sizes: Option<&[(String, usize)]>,
    format: ExportFormat,
) -> String {
    match format {
        ExportFormat::Dot => {
            let mut out = String::from("graph skeleton {\n");
            for label in labels {
                out.push_str(&format!("  \"{label}\";\n"));
            }
            for (i, j) in edges {
                out.push_str(&format!("  \"{}\" -- \"{}\";\n", labels[*i], labels[*j]));
            }
            out.push_str("}\n");
            out
        }
        ExportFormat::Json => {
            let mut value = json!({
                "vertices": labels,
                "edges": edges.iter().map(|(i, j)| vec![i, j]).collect::<Vec<_>>(),
            });
            if let Some(sizes) = class_sizes {
                let map: serde_json::Map<String, serde_json::Value> = sizes
                    .iter()
                    .map(|(label, n)| (label.clone(), json!(n)))
                    .collect();
                value["class_sizes"] = serde_json::Value::Object(map);
            }
            serde_json::to_string_pretty(&value).unwrap()
        }
    }
}

/// The permutations in each history's class, computed from the linear
/// extensions of the history's relation.
pub fn classes_by_forest(g: &Graph) -> Result<BTreeMap<STerm, BTreeSet<Permutation>>> {
    let mut out = BTreeMap::new();
    for t in t_forests(g).forests {
        let rel = t.kappa()?;
        let perms: BTreeSet<Permutation> = linear_extensions(&rel)?.into_iter().collect();
        out.insert(t, perms);
    }
    Ok(out)
}

/// Checks that the history classes are pairwise disjoint and cover all
/// permutations of the vertex set.
pub fn verify_partition(g: &Graph) -> Result<crate::verify::VerificationReport> {
    check_verify_budget(g)?;
    let classes = classes_by_forest(g)?;
    let mut seen: BTreeMap<Permutation, STerm> = BTreeMap::new();
    for (t, perms) in &classes {
        for p in perms {
            if let Some(other) = seen.insert(p.clone(), t.clone()) {
                return Ok(crate::verify::VerificationReport::fail(
                    "partition",
                    json!({
                        "permutation": p.to_string(),
                        "classes": [render_sterm(&other), render_sterm(t)],
                    }),
                ));
            }
        }
    }
    for p in all_permutations(g.vertices()) {
        if !seen.contains_key(&p) {
            return Ok(crate::verify::VerificationReport::fail(
                "partition",
                json!({ "uncovered": p.to_string() }),
            ));
        }
    }
    Ok(crate::verify::VerificationReport::pass("partition"))
}

/// Checks that every history class induces a connected subgraph of the
/// permutohedron skeleton.
pub fn verify_class_connected(g: &Graph) -> Result<crate::verify::VerificationReport> {
    check_verify_budget(g)?;
    let skeleton = permutohedron(g.vertices())?;
    for (t, perms) in classes_by_forest(g)? {
        let members: BTreeSet<usize> = perms
            .iter()
            .map(|p| skeleton.index_of(p).expect("extensions are permutations of the domain"))
            .collect();
        if !induces_connected(&skeleton, &members) {
            return Ok(crate::verify::VerificationReport::fail(
                "class-connected",
                json!({ "class": render_sterm(&t) }),
            ));
        }
    }
    Ok(crate::verify::VerificationReport::pass("class-connected"))
}

fn check_verify_budget(g: &Graph) -> Result<()> {
    let size = g.vertices().len();
    if size > VERIFY_BUDGET {
        return Err(Error::BudgetExceeded { size, limit: VERIFY_BUDGET });
    }
    Ok(())
}

fn induces_connected(skeleton: &PermutohedronSkeleton, members: &BTreeSet<usize>) -> bool {
    let Some(&seed) = members.iter().next() else { return true };
    let mut reached = BTreeSet::from([seed]);
    let mut frontier = vec![seed];
    while let Some(v) = frontier.pop() {
        for (i, j) in skeleton.edges() {
            let other = if *i == v {
                *j
            } else if *j == v {
                *i
            } else {
                continue;
            };
            if members.contains(&other) && reached.insert(other) {
                frontier.push(other);
            }
        }
    }
    reached.len() == members.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sterm::parse_sterm;
    use crate::verify::Status;

    fn v(s: &str) -> VarName {
        VarName::new(s).unwrap()
    }

    fn graph(vertices: &[&str], edges: &[(&str, &str)]) -> Graph {
        Graph::new(
            vertices.iter().map(|s| v(s)),
            edges.iter().map(|(a, b)| (v(a), v(b))),
        )
        .unwrap()
    }

    fn t(s: &str) -> STerm {
        parse_sterm(s).unwrap()
    }

    fn perm(seq: &[&str]) -> Permutation {
        Permutation::new(seq.iter().map(|s| v(s))).unwrap()
    }

    fn domain(names: &[&str]) -> BTreeSet<VarName> {
        names.iter().map(|s| v(s)).collect()
    }

    fn path3() -> Graph {
        graph(&["x", "y", "z"], &[("x", "y"), ("y", "z")])
    }

    fn triangle_plus_point() -> Graph {
        graph(&["x", "y", "z", "u"], &[("x", "y"), ("x", "z"), ("y", "z")])
    }

    #[test]
    fn permutohedron_counts() {
        let two = permutohedron(&domain(&["x", "y"])).unwrap();
        assert_eq!((two.vertices().len(), two.edges().len()), (2, 1));

        let hexagon = permutohedron(&domain(&["x", "y", "z"])).unwrap();
        assert_eq!((hexagon.vertices().len(), hexagon.edges().len()), (6, 6));

        let perm3 = permutohedron(&domain(&["x", "y", "z", "u"])).unwrap();
        assert_eq!((perm3.vertices().len(), perm3.edges().len()), (24, 36));
        // Every vertex has degree n-1.
        for i in 0..perm3.vertices().len() {
            let degree =
                perm3.edges().iter().filter(|(a, b)| *a == i || *b == i).count();
            assert_eq!(degree, 3);
        }
    }

    #[test]
    fn permutohedron_budget() {
        let too_big: BTreeSet<VarName> =
            (0..9).map(|i| VarName::new(&format!("v{i}")).unwrap()).collect();
        assert!(matches!(
            permutohedron(&too_big),
            Err(Error::BudgetExceeded { size: 9, limit: 8 })
        ));
        assert!(permutohedron(&BTreeSet::new()).is_err());
    }

    #[test]
    fn class_of_permutation_on_path() {
        let g = path3();
        assert_eq!(class_of_permutation(&g, &perm(&["x", "z", "y"])).unwrap(), t("x*z*y"));
        assert_eq!(class_of_permutation(&g, &perm(&["y", "x", "z"])).unwrap(), t("y*(x+z)"));
        assert_eq!(
            class_of_permutation(&g, &perm(&["x", "y"])),
            Err(Error::DomainMismatch)
        );
    }

    #[test]
    fn class_of_permutation_merges_parallel_tail() {
        let g = triangle_plus_point();
        for seq in [
            ["x", "y", "z", "u"],
            ["x", "y", "u", "z"],
            ["x", "u", "y", "z"],
            ["u", "x", "y", "z"],
        ] {
            assert_eq!(class_of_permutation(&g, &perm(&seq)).unwrap(), t("(x*y*z)+u"));
        }
    }

    #[test]
    fn collapse_of_complete_graph_keeps_all_vertices() {
        let complete = graph(
            &["x", "y", "z", "u"],
            &[("x", "y"), ("x", "z"), ("x", "u"), ("y", "z"), ("y", "u"), ("z", "u")],
        );
        let c = collapse(&complete).unwrap();
        assert_eq!(c.vertices().len(), 24);
        assert_eq!(c.edges().len(), 36);
    }

    #[test]
    fn collapse_of_triangle_plus_point_is_a_hexagon() {
        let c = collapse(&triangle_plus_point()).unwrap();
        assert_eq!(c.vertices().len(), 6);
        assert_eq!(c.edges().len(), 6);
        // A single cycle: every vertex has degree 2.
        for i in 0..c.vertices().len() {
            let degree = c.edges().iter().filter(|(a, b)| *a == i || *b == i).count();
            assert_eq!(degree, 2);
        }
    }

    #[test]
    fn collapse_of_edgeless_graph_is_a_point() {
        let g = graph(&["x", "y", "z"], &[]);
        let c = collapse(&g).unwrap();
        assert_eq!(c.vertices(), &[t("x+y+z")]);
        assert_eq!(c.class_size(&t("x+y+z")), 6);
        assert!(c.edges().is_empty());
    }

    #[test]
    fn verify_reports_pass_on_small_graphs() {
        for g in [path3(), triangle_plus_point(), Graph::single_vertex(v("x"))] {
            assert_eq!(verify_partition(&g).unwrap().status, Status::Pass);
            assert_eq!(verify_class_connected(&g).unwrap().status, Status::Pass);
        }
    }

    #[test]
    fn class_preimages_match_linear_extensions() {
        let g = triangle_plus_point();
        let c = collapse(&g).unwrap();
        for (t, perms) in classes_by_forest(&g).unwrap() {
            let preimage: BTreeSet<Permutation> = c
                .classes()
                .iter()
                .filter(|(_, s)| **s == t)
                .map(|(p, _)| p.clone())
                .collect();
            assert_eq!(preimage, perms);
        }
    }

    #[test]
    fn export_is_deterministic() {
        let two = permutohedron(&domain(&["x", "y"])).unwrap();
        let dot = two.export(ExportFormat::Dot);
        assert_eq!(dot, "graph skeleton {\n  \"x y\";\n  \"y x\";\n  \"x y\" -- \"y x\";\n}\n");
        assert_eq!(dot, two.export(ExportFormat::Dot));

        let c = collapse(&triangle_plus_point()).unwrap();
        assert_eq!(c.export(ExportFormat::Json), c.export(ExportFormat::Json));
        let parsed: serde_json::Value =
            serde_json::from_str(&c.export(ExportFormat::Json)).unwrap();
        assert_eq!(parsed["vertices"].as_array().unwrap().len(), 6);
        assert_eq!(parsed["class_sizes"]["u+x*y*z"], serde_json::json!(4));
    }
}
