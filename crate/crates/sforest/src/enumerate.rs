//! Exhaustive generators over small named domains, plus seeded random
//! graphs. These feed the verification harness and the oracle tests.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::Rng;

use crate::graph::Graph;
use crate::relation::Relation;
use crate::sterm::STerm;
use crate::var::VarName;

/// The first `n` of the stock variable names x, y, z, u, v, w.
pub fn named_domain(n: usize) -> BTreeSet<VarName> {
    assert!(n <= 6, "only six stock names available");
    ["x", "y", "z", "u", "v", "w"]
        .iter()
        .take(n)
        .map(|s| VarName::new(s).unwrap())
        .collect()
}

/// All subsets of a slice, in bitmask order.
pub fn subsets<T: Clone>(items: &[T]) -> impl Iterator<Item = Vec<T>> + '_ {
    (0u64..(1 << items.len())).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, x)| x.clone())
            .collect()
    })
}

/// Every relation on the domain: all subsets of domain x domain, including
/// reflexive pairs. Grows as 2^(n^2); callers keep n small.
pub fn all_relations(domain: &BTreeSet<VarName>) -> Vec<Relation> {
    let pairs: Vec<(VarName, VarName)> = domain
        .iter()
        .cartesian_product(domain.iter())
        .map(|(a, b)| (a.clone(), b.clone()))
        .collect();
    subsets(&pairs)
        .map(|chosen| Relation::new(domain.iter().cloned(), chosen).unwrap())
        .collect()
}

/// Every strict partial order on the domain, by filtering subsets of the
/// irreflexive pairs.
pub fn all_partial_orders(domain: &BTreeSet<VarName>) -> Vec<Relation> {
    let pairs: Vec<(VarName, VarName)> = domain
        .iter()
        .cartesian_product(domain.iter())
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (a.clone(), b.clone()))
        .collect();
    subsets(&pairs)
        .map(|chosen| Relation::new(domain.iter().cloned(), chosen).unwrap())
        .filter(Relation::is_partial_order)
        .collect()
}

/// Every graph on the vertex set.
pub fn all_graphs(vertices: &BTreeSet<VarName>) -> Vec<Graph> {
    let pairs: Vec<(VarName, VarName)> = vertices
        .iter()
        .tuple_combinations()
        .map(|(a, b)| (a.clone(), b.clone()))
        .collect();
    subsets(&pairs)
        .map(|chosen| Graph::new(vertices.iter().cloned(), chosen).unwrap())
        .collect()
}

/// Splits of the domain into an ordered pair of nonempty disjoint parts
/// covering it.
pub fn two_way_splits(
    domain: &BTreeSet<VarName>,
) -> Vec<(BTreeSet<VarName>, BTreeSet<VarName>)> {
    let items: Vec<VarName> = domain.iter().cloned().collect();
    subsets(&items)
        .map(|left| {
            let left: BTreeSet<VarName> = left.into_iter().collect();
            let right: BTreeSet<VarName> = domain.difference(&left).cloned().collect();
            (left, right)
        })
        .filter(|(l, r)| !l.is_empty() && !r.is_empty())
        .collect()
}

/// A graph on the vertex set with each possible edge kept with probability
/// one half.
pub fn random_graph<R: Rng>(rng: &mut R, vertices: &BTreeSet<VarName>) -> Graph {
    let edges: Vec<(VarName, VarName)> = vertices
        .iter()
        .tuple_combinations()
        .filter(|_| rng.random_bool(0.5))
        .map(|(a, b)| (a.clone(), b.clone()))
        .collect();
    Graph::new(vertices.iter().cloned(), edges).unwrap()
}

/// Every canonical term using each variable of the set exactly once.
pub fn all_diversified_sterms(vars: &BTreeSet<VarName>) -> Vec<STerm> {
    if vars.len() == 1 {
        return vec![STerm::var(vars.iter().next().unwrap().clone())];
    }
    let mut out = sum_terms(vars);
    out.extend(prod_terms(vars));
    out
}

fn non_sum_terms(vars: &BTreeSet<VarName>) -> Vec<STerm> {
    if vars.len() == 1 {
        return vec![STerm::var(vars.iter().next().unwrap().clone())];
    }
    prod_terms(vars)
}

fn non_prod_terms(vars: &BTreeSet<VarName>) -> Vec<STerm> {
    if vars.len() == 1 {
        return vec![STerm::var(vars.iter().next().unwrap().clone())];
    }
    sum_terms(vars)
}

fn sum_terms(vars: &BTreeSet<VarName>) -> Vec<STerm> {
    let mut out = Vec::new();
    for blocks in set_partitions(vars) {
        if blocks.len() < 2 {
            continue;
        }
        let choices: Vec<Vec<STerm>> = blocks.iter().map(non_sum_terms).collect();
        for args in choices.into_iter().multi_cartesian_product() {
            out.push(STerm::sum(args));
        }
    }
    out
}

fn prod_terms(vars: &BTreeSet<VarName>) -> Vec<STerm> {
    let mut out = Vec::new();
    for blocks in ordered_splits(vars) {
        if blocks.len() < 2 {
            continue;
        }
        let choices: Vec<Vec<STerm>> = blocks.iter().map(non_prod_terms).collect();
        for args in choices.into_iter().multi_cartesian_product() {
            out.push(STerm::prod(args));
        }
    }
    out
}

/// Unordered partitions of the set into nonempty blocks.
fn set_partitions(vars: &BTreeSet<VarName>) -> Vec<Vec<BTreeSet<VarName>>> {
    let items: Vec<VarName> = vars.iter().cloned().collect();
    let mut out: Vec<Vec<BTreeSet<VarName>>> = vec![Vec::new()];
    for item in items {
        let mut next = Vec::new();
        for partition in out {
            for i in 0..partition.len() {
                let mut grown = partition.clone();
                grown[i].insert(item.clone());
                next.push(grown);
            }
            let mut with_new = partition;
            with_new.push(BTreeSet::from([item.clone()]));
            next.push(with_new);
        }
        out = next;
    }
    out
}

/// Ordered sequences of nonempty disjoint blocks covering the set.
fn ordered_splits(vars: &BTreeSet<VarName>) -> Vec<Vec<BTreeSet<VarName>>> {
    if vars.is_empty() {
        return vec![Vec::new()];
    }
    let items: Vec<VarName> = vars.iter().cloned().collect();
    let mut out = Vec::new();
    for head in subsets(&items) {
        if head.is_empty() {
            continue;
        }
        let head: BTreeSet<VarName> = head.into_iter().collect();
        let rest: BTreeSet<VarName> = vars.difference(&head).cloned().collect();
        for mut tail in ordered_splits(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}
