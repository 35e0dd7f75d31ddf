//! Finite binary relations over named variables, with the partial operations
//! of disjoint union and concatenation, and the order-theoretic predicates
//! driving everything else in this crate.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::var::VarName;

/// A relation is a pair of a finite domain and a set of ordered pairs over it.
///
/// Two relations are equal iff their domains and pair sets are equal as sets.
/// Values are immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RelationWire", into = "RelationWire")]
pub struct Relation {
    domain: BTreeSet<VarName>,
    pairs: BTreeSet<(VarName, VarName)>,
}

#[derive(Serialize, Deserialize)]
struct RelationWire {
    domain: Vec<VarName>,
    pairs: Vec<(VarName, VarName)>,
}

impl TryFrom<RelationWire> for Relation {
    type Error = Error;

    fn try_from(w: RelationWire) -> Result<Self> {
        Relation::new(w.domain, w.pairs)
    }
}

impl From<Relation> for RelationWire {
    fn from(r: Relation) -> RelationWire {
        RelationWire {
            domain: r.domain.into_iter().collect(),
            pairs: r.pairs.into_iter().collect(),
        }
    }
}

impl Relation {
    pub fn new(
        domain: impl IntoIterator<Item = VarName>,
        pairs: impl IntoIterator<Item = (VarName, VarName)>,
    ) -> Result<Self> {
        let domain: BTreeSet<VarName> = domain.into_iter().collect();
        let pairs: BTreeSet<(VarName, VarName)> = pairs.into_iter().collect();
        for (a, b) in &pairs {
            if !domain.contains(a) {
                return Err(Error::InvalidRelation(format!("pair component {a} not in domain")));
            }
            if !domain.contains(b) {
                return Err(Error::InvalidRelation(format!("pair component {b} not in domain")));
            }
        }
        Ok(Relation { domain, pairs })
    }

    pub fn empty() -> Self {
        Relation { domain: BTreeSet::new(), pairs: BTreeSet::new() }
    }

    /// The relation `(∅, {x})`.
    pub fn singleton(x: VarName) -> Self {
        Relation { domain: BTreeSet::from([x]), pairs: BTreeSet::new() }
    }

    pub fn domain(&self) -> &BTreeSet<VarName> {
        &self.domain
    }

    pub fn pairs(&self) -> &BTreeSet<(VarName, VarName)> {
        &self.pairs
    }

    pub fn contains_pair(&self, a: &VarName, b: &VarName) -> bool {
        self.pairs.contains(&(a.clone(), b.clone()))
    }

    /// The restriction of the relation to a subset of its domain.
    pub(crate) fn restrict(&self, sub: &BTreeSet<VarName>) -> Relation {
        let pairs = self
            .pairs
            .iter()
            .filter(|(a, b)| sub.contains(a) && sub.contains(b))
            .cloned()
            .collect();
        Relation { domain: sub.clone(), pairs }
    }

    fn check_disjoint(&self, other: &Relation) -> Result<()> {
        if let Some(shared) = self.domain.intersection(&other.domain).next() {
            return Err(Error::DomainOverlap(shared.clone()));
        }
        Ok(())
    }

    /// Disjoint union: pairs and domains are united, domains must be disjoint.
    pub fn disjoint_union(&self, other: &Relation) -> Result<Relation> {
        self.check_disjoint(other)?;
        Ok(Relation {
            domain: self.domain.union(&other.domain).cloned().collect(),
            pairs: self.pairs.union(&other.pairs).cloned().collect(),
        })
    }

    /// Concatenation: disjoint union plus every pair from the left domain to
    /// the right domain.
    pub fn concatenation(&self, other: &Relation) -> Result<Relation> {
        self.check_disjoint(other)?;
        let mut pairs: BTreeSet<_> = self.pairs.union(&other.pairs).cloned().collect();
        for a in &self.domain {
            for b in &other.domain {
                pairs.insert((a.clone(), b.clone()));
            }
        }
        Ok(Relation {
            domain: self.domain.union(&other.domain).cloned().collect(),
            pairs,
        })
    }

    /// Irreflexive and transitive.
    pub fn is_partial_order(&self) -> bool {
        for (a, b) in &self.pairs {
            if a == b {
                return false;
            }
        }
        for (a, b) in &self.pairs {
            for (c, d) in &self.pairs {
                if b == c && !self.pairs.contains(&(a.clone(), d.clone())) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether `(x,z),(y,z),(y,u)` in the relation always forces one of
    /// `(x,u)`, `(y,x)`, `(u,z)`.
    pub fn is_trifunctional(&self) -> bool {
        let elems: Vec<&VarName> = self.domain.iter().collect();
        for x in &elems {
            for y in &elems {
                for z in &elems {
                    if !self.contains_pair(x, z) || !self.contains_pair(y, z) {
                        continue;
                    }
                    for u in &elems {
                        if self.contains_pair(y, u)
                            && !self.contains_pair(x, u)
                            && !self.contains_pair(y, x)
                            && !self.contains_pair(u, z)
                        {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn undirected_components(&self) -> Vec<BTreeSet<VarName>> {
        let mut remaining: BTreeSet<VarName> = self.domain.clone();
        let mut components = Vec::new();
        while let Some(seed) = remaining.iter().next().cloned() {
            let mut comp = BTreeSet::from([seed.clone()]);
            let mut frontier = vec![seed];
            while let Some(v) = frontier.pop() {
                for (a, b) in &self.pairs {
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
            components.push(comp);
        }
        components
    }

    /// Connected under the undirected reachability generated by the pairs.
    /// Vacuously true for empty and singleton domains.
    pub fn is_connected(&self) -> bool {
        self.undirected_components().len() <= 1
    }

    /// The finest decomposition into connected relations, sorted by the least
    /// variable of each component.
    pub fn connected_components(&self) -> Vec<Relation> {
        self.undirected_components()
            .into_iter()
            .map(|comp| self.restrict(&comp))
            .collect()
    }

    /// Elements with both an incoming and an outgoing pair.
    pub fn inner_elements(&self) -> BTreeSet<VarName> {
        self.domain
            .iter()
            .filter(|y| {
                self.pairs.iter().any(|(_, b)| b == *y) && self.pairs.iter().any(|(a, _)| a == *y)
            })
            .cloned()
            .collect()
    }

    /// Drops an element and every pair touching it.
    pub fn remove_element(&self, y: &VarName) -> Result<Relation> {
        if !self.domain.contains(y) {
            return Err(Error::NotInDomain(y.clone()));
        }
        let mut sub = self.domain.clone();
        sub.remove(y);
        Ok(self.restrict(&sub))
    }

    /// Trifunctional partial order on a nonempty domain.
    pub fn is_ftp(&self) -> bool {
        !self.domain.is_empty() && self.is_partial_order() && self.is_trifunctional()
    }

    /// Splits a connected FTP relation with at least two elements into two
    /// factors whose concatenation rebuilds it.
    ///
    /// With no inner elements the left factor is the set of sources and the
    /// right the set of sinks; otherwise we remove the least inner element,
    /// split the rest with a prime right factor, and reinsert on the side the
    /// removed element belongs to. Returns `None` when the relation is not
    /// connected or its domain is a singleton.
    pub fn prime_concat_split(&self) -> Result<Option<(Relation, Relation)>> {
        if !self.is_ftp() {
            return Err(Error::NotFtp);
        }
        Ok(self.split_inner())
    }

    fn split_inner(&self) -> Option<(Relation, Relation)> {
        if self.domain.len() <= 1 || !self.is_connected() {
            return None;
        }
        let inner = self.inner_elements();
        let Some(x) = inner.iter().next().cloned() else {
            // No inner elements: sources on the left, sinks on the right.
            let sources: BTreeSet<VarName> =
                self.pairs.iter().map(|(a, _)| a.clone()).collect();
            let sinks: BTreeSet<VarName> = self.pairs.iter().map(|(_, b)| b.clone()).collect();
            return Some((self.restrict(&sources), self.restrict(&sinks)));
        };

        let reduced = self.remove_element(&x).expect("inner element is in the domain");
        let (mut left, mut right) = reduced.split_inner().expect("reduced relation still splits");
        // Make the right factor prime by repeatedly peeling off its own
        // right factor and absorbing the rest into the left.
        while let Some((_, tail)) = right.split_inner() {
            let head_vars: BTreeSet<VarName> = reduced
                .domain
                .iter()
                .filter(|v| !tail.domain.contains(v))
                .cloned()
                .collect();
            left = reduced.restrict(&head_vars);
            right = tail;
        }

        let w = self
            .pairs
            .iter()
            .filter(|(a, _)| *a == x)
            .map(|(_, b)| b.clone())
            .next()
            .expect("inner element has an outgoing pair");

        let extend_left = if left.domain.contains(&w) {
            true
        } else {
            // w is in the right factor: x joins the right side only when every
            // left element precedes it.
            !left.domain.iter().all(|y| self.contains_pair(y, &x))
        };

        let (x1, x2) = if extend_left {
            let mut x1 = left.domain.clone();
            x1.insert(x.clone());
            (x1, right.domain.clone())
        } else {
            let mut x2 = right.domain.clone();
            x2.insert(x.clone());
            (left.domain.clone(), x2)
        };
        Some((self.restrict(&x1), self.restrict(&x2)))
    }

    /// Partial order in which any two predecessors of a common element are
    /// comparable.
    pub fn is_ftp_forest(&self) -> bool {
        if !self.is_partial_order() {
            return false;
        }
        for (x, z) in &self.pairs {
            for (y, z2) in &self.pairs {
                if z == z2
                    && x != y
                    && !self.contains_pair(x, y)
                    && !self.contains_pair(y, x)
                {
                    return false;
                }
            }
        }
        true
    }

    /// An FTP-forest with a root preceding every other element; returns the
    /// root when it exists.
    pub fn is_ftp_tree(&self) -> Option<VarName> {
        if !self.is_ftp_forest() {
            return None;
        }
        self.domain
            .iter()
            .find(|x| self.domain.iter().all(|y| y == *x || self.contains_pair(x, y)))
            .cloned()
    }

    /// Transitive closure over the same domain.
    pub fn transitive_closure(&self) -> Relation {
        let mut pairs = self.pairs.clone();
        loop {
            let mut added = Vec::new();
            for (a, b) in &pairs {
                for (c, d) in &pairs {
                    if b == c && !pairs.contains(&(a.clone(), d.clone())) {
                        added.push((a.clone(), d.clone()));
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            pairs.extend(added);
        }
        Relation { domain: self.domain.clone(), pairs }
    }
}
