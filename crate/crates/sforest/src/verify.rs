//! The verification harness. Each check replays one of the structural
//! results behind the library over exhaustively enumerated small instances,
//! producing a pass/fail report with a counterexample on failure.

use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::collapse::{self, class_of_permutation};
use crate::enumerate::{
    all_diversified_sterms, all_graphs, all_partial_orders, all_relations, named_domain,
    random_graph, two_way_splits,
};
use crate::graph::Graph;
use crate::relation::Relation;
use crate::relationship::{
    extend_with_pair, linear_extensions, map_e, map_l, map_p, ShuffleMode,
};
use crate::sterm::{render_sterm, sterm_of_ftp, STerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub proposition: String,
    pub status: Status,
    pub counterexample: Option<Value>,
}

impl VerificationReport {
    pub fn pass(proposition: &str) -> Self {
        VerificationReport {
            proposition: proposition.to_string(),
            status: Status::Pass,
            counterexample: None,
        }
    }

    pub fn fail(proposition: &str, counterexample: Value) -> Self {
        VerificationReport {
            proposition: proposition.to_string(),
            status: Status::Fail,
            counterexample: Some(counterexample),
        }
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    /// Cap on the exhaustive domain sizes; each check also has its own cap.
    pub max_n: usize,
    /// Number of random graphs on 5 or 6 vertices fed to the partition and
    /// connectivity checks.
    pub random_count: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_n: 4, random_count: 0, seed: 0 }
    }
}

/// Runs every check and returns the reports sorted by id.
pub fn run_all(config: &VerifyConfig) -> Vec<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let random_graphs: Vec<Graph> = (0..config.random_count)
        .map(|i| random_graph(&mut rng, &named_domain(5 + i % 2)))
        .collect();
    let n = config.max_n;
    let mut reports = vec![
        report("01-sum-closure", sum_closure(n)),
        report("02-concat-closure", concat_closure(n)),
        report("03-composition-connectivity", composition_connectivity(n)),
        report("04-component-decomposition", component_decomposition(n)),
        report("05-concat-cancellation", concat_cancellation(n)),
        report("06-concat-prime-decomposition", concat_prime_decomposition(n)),
        report("07-history-map-injective", history_map_injective(n)),
        report("08-prime-split-rebuild", prime_split_rebuild(n)),
        report("09-history-map-onto", history_map_onto(n)),
        report("10-superset-map-sum", superset_map_sum(n)),
        report("11-order-map-sum", order_map_sum(n)),
        report("12-order-map-concat", order_map_concat(n)),
        report("13-pair-extension", pair_extension(n)),
        report("14-linear-extension-witness", linear_extension_witness(n)),
        report("15-linear-map-injective", linear_map_injective(n)),
        report("16-linear-map-sum", linear_map_sum(n)),
        report("17-linear-map-concat", linear_map_concat(n)),
        report("18-forest-correspondence", forest_correspondence(n)),
        report("19-tree-correspondence", tree_correspondence(n)),
        report("20-class-partition", class_partition(n, &random_graphs)),
        report("21-class-connectivity", class_connectivity(n, &random_graphs)),
        report("22-class-map-agreement", class_map_agreement(n)),
    ];
    reports.sort_by(|a, b| a.proposition.cmp(&b.proposition));
    reports
}

fn report(id: &str, counterexample: Option<Value>) -> VerificationReport {
    match counterexample {
        None => VerificationReport::pass(id),
        Some(cx) => VerificationReport::fail(id, cx),
    }
}

fn rel(r: &Relation) -> Value {
    serde_json::to_value(r).unwrap()
}

fn pair_cx(a: &Relation, b: &Relation) -> Value {
    json!({ "left": rel(a), "right": rel(b) })
}

fn ftps(domain: &BTreeSet<crate::var::VarName>) -> Vec<Relation> {
    all_partial_orders(domain)
        .into_iter()
        .filter(Relation::is_trifunctional)
        .collect()
}

/// A sum of two relations is a partial order, or trifunctional, exactly when
/// both halves are.
fn sum_closure(max_n: usize) -> Option<Value> {
    for n in 2..=max_n.min(3) {
        for (xs, ys) in two_way_splits(&named_domain(n)) {
            for a in all_relations(&xs) {
                for b in all_relations(&ys) {
                    let joined = a.disjoint_union(&b).unwrap();
                    let po = (a.is_partial_order() && b.is_partial_order())
                        == joined.is_partial_order();
                    let tri = (a.is_trifunctional() && b.is_trifunctional())
                        == joined.is_trifunctional();
                    if !po || !tri {
                        return Some(pair_cx(&a, &b));
                    }
                }
            }
        }
    }
    None
}

/// Same closure property for concatenation.
fn concat_closure(max_n: usize) -> Option<Value> {
    for n in 2..=max_n.min(3) {
        for (xs, ys) in two_way_splits(&named_domain(n)) {
            for a in all_relations(&xs) {
                for b in all_relations(&ys) {
                    let joined = a.concatenation(&b).unwrap();
                    let po = (a.is_partial_order() && b.is_partial_order())
                        == joined.is_partial_order();
                    let tri = (a.is_trifunctional() && b.is_trifunctional())
                        == joined.is_trifunctional();
                    if !po || !tri {
                        return Some(pair_cx(&a, &b));
                    }
                }
            }
        }
    }
    None
}

/// Sums of nonempty relations are never connected; concatenations always are.
fn composition_connectivity(max_n: usize) -> Option<Value> {
    for n in 2..=max_n.min(3) {
        for (xs, ys) in two_way_splits(&named_domain(n)) {
            for a in all_relations(&xs) {
                for b in all_relations(&ys) {
                    if a.disjoint_union(&b).unwrap().is_connected()
                        || !a.concatenation(&b).unwrap().is_connected()
                    {
                        return Some(pair_cx(&a, &b));
                    }
                }
            }
        }
    }
    None
}

/// Every relation is the sum of its connected components.
fn component_decomposition(max_n: usize) -> Option<Value> {
    for n in 1..=max_n.min(3) {
        for a in all_relations(&named_domain(n)) {
            let components = a.connected_components();
            if components.iter().any(|c| !c.is_connected()) {
                return Some(rel(&a));
            }
            let rebuilt = components
                .into_iter()
                .reduce(|acc, c| acc.disjoint_union(&c).unwrap())
                .unwrap();
            if rebuilt != a {
                return Some(rel(&a));
            }
        }
    }
    None
}

/// Concatenation cancels on both sides.
fn concat_cancellation(max_n: usize) -> Option<Value> {
    for n in 2..=max_n.min(3) {
        for (xs, ys) in two_way_splits(&named_domain(n)) {
            let left = all_relations(&xs);
            let right = all_relations(&ys);
            for a1 in &left {
                for a2 in &left {
                    for b in &right {
                        if a1 != a2
                            && a1.concatenation(b).unwrap() == a2.concatenation(b).unwrap()
                        {
                            return Some(pair_cx(a1, a2));
                        }
                    }
                }
            }
            for b1 in &right {
                for b2 in &right {
                    for a in &left {
                        if b1 != b2
                            && a.concatenation(b1).unwrap() == a.concatenation(b2).unwrap()
                        {
                            return Some(pair_cx(b1, b2));
                        }
                    }
                }
            }
        }
    }
    None
}

/// A concatenation whose right factor is disconnected or a single element
/// determines both factors uniquely.
fn concat_prime_decomposition(max_n: usize) -> Option<Value> {
    for n in 2..=max_n.min(4) {
        let mut seen: BTreeMap<Relation, (Relation, Relation)> = BTreeMap::new();
        for (xs, ys) in two_way_splits(&named_domain(n)) {
            for a in all_relations(&xs) {
                for b in all_relations(&ys) {
                    if b.is_connected() && ys.len() > 1 {
                        continue;
                    }
                    let joined = a.concatenation(&b).unwrap();
                    if let Some((pa, pb)) = seen.get(&joined) {
                        if *pa != a || *pb != b {
                            return Some(json!({
                                "relation": rel(&joined),
                                "first": [rel(pa), rel(pb)],
                                "second": [rel(&a), rel(&b)],
                            }));
                        }
                    } else {
                        seen.insert(joined, (a.clone(), b));
                    }
                }
            }
        }
    }
    None
}

/// Distinct diversified canonical terms have distinct relations.
fn history_map_injective(max_n: usize) -> Option<Value> {
    for n in 1..=max_n.min(4) {
        let mut seen: BTreeMap<Relation, STerm> = BTreeMap::new();
        for t in all_diversified_sterms(&named_domain(n)) {
            let r = t.kappa().unwrap();
            if let Some(prev) = seen.insert(r, t.clone()) {
                return Some(json!({
                    "terms": [render_sterm(&prev), render_sterm(&t)],
                }));
            }
        }
    }
    None
}

/// The prime split succeeds exactly on connected relations with at least two
/// elements, rebuilds its input, and removing an inner element keeps a
/// connected relation in the class.
fn prime_split_rebuild(max_n: usize) -> Option<Value> {
    for n in 1..=max_n.min(4) {
        for r in ftps(&named_domain(n)) {
            let splittable = r.is_connected() && r.domain().len() >= 2;
            match r.prime_concat_split().unwrap() {
                Some((r1, r2)) => {
                    if !splittable
                        || r1.domain().is_empty()
                        || r2.domain().is_empty()
                        || r1.concatenation(&r2).unwrap() != r
                    {
                        return Some(rel(&r));
                    }
                }
                None => {
                    if splittable {
                        return Some(rel(&r));
                    }
                }
            }
            if r.is_connected() {
                for y in r.inner_elements() {
                    let reduced = r.remove_element(&y).unwrap();
                    if !reduced.is_ftp() || !reduced.is_connected() {
                        return Some(json!({ "relation": rel(&r), "inner": y.to_string() }));
                    }
                }
            }
        }
    }
    None
}

/// Every trifunctional partial order is hit by exactly one diversified
/// canonical term, recovered by the constructive inverse.
fn history_map_onto(max_n: usize) -> Option<Value> {
    for n in 1..=max_n.min(4) {
        let vars = named_domain(n);
        let targets: BTreeSet<Relation> = ftps(&vars).into_iter().collect();
        let mut hit = BTreeSet::new();
        for t in all_diversified_sterms(&vars) {
            let r = t.kappa().unwrap();
            if !targets.contains(&r) {
                return Some(json!({ "term": render_sterm(&t) }));
            }
            match sterm_of_ftp(&r) {
                Ok(back) if back == t => {}
                _ => return Some(json!({ "term": render_sterm(&t), "relation": rel(&r) })),
            }
            hit.insert(r);
        }
        if let Some(missed) = targets.difference(&hit).next() {
            return Some(rel(missed));
        }
    }
    None
}

/// The superset map turns sums into shuffle sums over all relations.
fn superset_map_sum(max_n: usize) -> Option<Value> {
    for n in 2..=max_n.min(4) {
        for (xs, ys) in two_way_splits(&named_domain(n)) {
            for a in all_partial_orders(&xs) {
                for b in all_partial_orders(&ys) {
                    let lhs = map_e(&a.disjoint_union(&b).unwrap()).unwrap();
                    let rhs = map_e(&a)
                        .unwrap()
                        .shuffle_sum(&map_e(&b).unwrap(), ShuffleMode::All)
                        .unwrap();
                    if lhs != rhs {
                        return Some(pair_cx(&a, &b));
                    }
                }
            }
        }
    }
    None
}

/// The partial-order extension map turns sums into order shuffles.
fn order_map_sum(max_n: usize) -> Option<Value> {
    for n in 2..=max_n.min(4) {
        for (xs, ys) in two_way_splits(&named_domain(n)) {
            for a in all_partial_orders(&xs) {
                for b in all_partial_orders(&ys) {
                    let lhs = map_p(&a.disjoint_union(&b).unwrap()).unwrap();
                    let rhs = map_p(&a)
                        .unwrap()
                        .shuffle_sum(&map_p(&b).unwrap(), ShuffleMode::PartialOrders)
                        .unwrap();
                    if lhs != rhs {
                        return Some(pair_cx(&a, &b));
                    }
                }
            }
        }
    }
    None
}

/// The partial-order extension map turns concatenations into products.
fn order_map_concat(max_n: usize) -> Option<Value> {
    for n in 2..=max_n.min(4) {
        for (xs, ys) in two_way_splits(&named_domain(n)) {
            for a in all_partial_orders(&xs) {
                for b in all_partial_orders(&ys) {
                    let lhs = map_p(&a.concatenation(&b).unwrap()).unwrap();
                    let rhs =
                        map_p(&a).unwrap().concat_product(&map_p(&b).unwrap()).unwrap();
                    if lhs != rhs {
                        return Some(pair_cx(&a, &b));
                    }
                }
            }
        }
    }
    None
}

/// Adding a non-conflicting pair and closing transitively keeps a partial
/// order containing the original.
fn pair_extension(max_n: usize) -> Option<Value> {
    for n in 2..=max_n.min(4) {
        let domain = named_domain(n);
        for r in all_partial_orders(&domain) {
            for x in &domain {
                for y in &domain {
                    if x == y || r.contains_pair(y, x) {
                        continue;
                    }
                    let e = extend_with_pair(&r, x, y).unwrap();
                    if !e.is_partial_order()
                        || !e.contains_pair(x, y)
                        || !r.pairs().is_subset(e.pairs())
                        || e.domain() != r.domain()
                    {
                        return Some(json!({
                            "relation": rel(&r),
                            "pair": [x.to_string(), y.to_string()],
                        }));
                    }
                }
            }
        }
    }
    None
}

/// Every incomparable pair is realized by some linear extension, and every
/// linear extension contains the order.
fn linear_extension_witness(max_n: usize) -> Option<Value> {
    for n in 1..=max_n.min(4) {
        let domain = named_domain(n);
        for r in all_partial_orders(&domain) {
            let extensions = linear_extensions(&r).unwrap();
            for p in &extensions {
                if !r.pairs().is_subset(p.to_relation().pairs()) {
                    return Some(json!({ "relation": rel(&r), "sequence": p.to_string() }));
                }
            }
            for x in &domain {
                for y in &domain {
                    if x == y || r.contains_pair(x, y) || r.contains_pair(y, x) {
                        continue;
                    }
                    if !extensions.iter().any(|p| p.to_relation().contains_pair(x, y)) {
                        return Some(json!({
                            "relation": rel(&r),
                            "pair": [x.to_string(), y.to_string()],
                        }));
                    }
                }
            }
        }
    }
    None
}

/// Distinct partial orders have distinct linear-extension families.
fn linear_map_injective(max_n: usize) -> Option<Value> {
    for n in 1..=max_n.min(4) {
        let mut seen: BTreeMap<BTreeSet<crate::relationship::PairSet>, Relation> =
            BTreeMap::new();
        for r in all_partial_orders(&named_domain(n)) {
            let family = map_l(&r).unwrap().family().clone();
            if let Some(prev) = seen.insert(family, r.clone()) {
                return Some(pair_cx(&prev, &r));
            }
        }
    }
    None
}

/// The linear-extension map turns sums into linear shuffles.
fn linear_map_sum(max_n: usize) -> Option<Value> {
    for n in 2..=max_n.min(5) {
        for (xs, ys) in two_way_splits(&named_domain(n)) {
            for a in all_partial_orders(&xs) {
                for b in all_partial_orders(&ys) {
                    let lhs = map_l(&a.disjoint_union(&b).unwrap()).unwrap();
                    let rhs = map_l(&a)
                        .unwrap()
                        .shuffle_sum(&map_l(&b).unwrap(), ShuffleMode::LinearOrders)
                        .unwrap();
                    if lhs != rhs {
                        return Some(pair_cx(&a, &b));
                    }
                }
            }
        }
    }
    None
}

/// The linear-extension map turns concatenations into products.
fn linear_map_concat(max_n: usize) -> Option<Value> {
    for n in 2..=max_n.min(5) {
        for (xs, ys) in two_way_splits(&named_domain(n)) {
            for a in all_partial_orders(&xs) {
                for b in all_partial_orders(&ys) {
                    let lhs = map_l(&a.concatenation(&b).unwrap()).unwrap();
                    let rhs =
                        map_l(&a).unwrap().concat_product(&map_l(&b).unwrap()).unwrap();
                    if lhs != rhs {
                        return Some(pair_cx(&a, &b));
                    }
                }
            }
        }
    }
    None
}

/// A term is a destruction forest exactly when its relation is a forest.
fn forest_correspondence(max_n: usize) -> Option<Value> {
    for n in 1..=max_n.min(4) {
        for t in all_diversified_sterms(&named_domain(n)) {
            if t.is_s_forest() != t.kappa().unwrap().is_ftp_forest() {
                return Some(json!({ "term": render_sterm(&t) }));
            }
        }
    }
    None
}

/// A term is a destruction tree exactly when its relation has a root.
fn tree_correspondence(max_n: usize) -> Option<Value> {
    for n in 1..=max_n.min(4) {
        for t in all_diversified_sterms(&named_domain(n)) {
            if t.is_s_tree() != t.kappa().unwrap().is_ftp_tree().is_some() {
                return Some(json!({ "term": render_sterm(&t) }));
            }
        }
    }
    None
}

fn graph_pool(max_n: usize) -> Vec<Graph> {
    (1..=max_n.min(4)).flat_map(|n| all_graphs(&named_domain(n))).collect()
}

/// History classes partition the permutations of the vertex set.
fn class_partition(max_n: usize, random_graphs: &[Graph]) -> Option<Value> {
    for g in graph_pool(max_n).iter().chain(random_graphs) {
        let report = collapse::verify_partition(g).unwrap();
        if !report.is_pass() {
            return Some(json!({
                "graph": g,
                "detail": report.counterexample,
            }));
        }
    }
    None
}

/// Each history class induces a connected piece of the permutohedron
/// skeleton.
fn class_connectivity(max_n: usize, random_graphs: &[Graph]) -> Option<Value> {
    for g in graph_pool(max_n).iter().chain(random_graphs) {
        let report = collapse::verify_class_connected(g).unwrap();
        if !report.is_pass() {
            return Some(json!({
                "graph": g,
                "detail": report.counterexample,
            }));
        }
    }
    None
}

/// The greedy classification agrees with membership in the linear-extension
/// family of the class's relation.
fn class_map_agreement(max_n: usize) -> Option<Value> {
    for g in graph_pool(max_n) {
        for p in collapse::all_permutations(g.vertices()) {
            let t = class_of_permutation(&g, &p).unwrap();
            let extensions = linear_extensions(&t.kappa().unwrap()).unwrap();
            if !extensions.contains(&p) {
                return Some(json!({ "graph": g, "sequence": p.to_string() }));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass_at_small_scale() {
        let config = VerifyConfig { max_n: 3, random_count: 2, seed: 0 };
        let reports = run_all(&config);
        assert_eq!(reports.len(), 22);
        for r in &reports {
            assert!(r.is_pass(), "check {} failed: {:?}", r.proposition, r.counterexample);
        }
    }

    #[test]
    fn reports_are_sorted_and_serializable() {
        let reports = run_all(&VerifyConfig { max_n: 2, random_count: 0, seed: 0 });
        let ids: Vec<&str> = reports.iter().map(|r| r.proposition.as_str()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
        let rendered = serde_json::to_value(&reports[0]).unwrap();
        assert_eq!(rendered["status"], "pass");
        assert_eq!(rendered["counterexample"], serde_json::Value::Null);
    }
}
