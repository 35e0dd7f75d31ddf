//! Relationships (families of relations over a common domain), the shuffle
//! sum and concatenation product lifting the operations of [`crate::relation`]
//! to families, and the extension maps sending a relation to all its
//! supersets, partial-order extensions, or linear extensions.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relation::Relation;
use crate::var::VarName;

/// Families of `map_E`, `map_P`, the all-shuffles mode, and the witness
/// search grow like `2^(n^2)`; they are refused beyond this domain size.
pub const FAMILY_BUDGET: usize = 4;

pub type PairSet = BTreeSet<(VarName, VarName)>;

/// A pair of a domain and a finite set of pair-sets over it. Equality is set
/// equality of the families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RelationshipWire", into = "RelationshipWire")]
pub struct Relationship {
    domain: BTreeSet<VarName>,
    family: BTreeSet<PairSet>,
}

#[derive(Serialize, Deserialize)]
struct RelationshipWire {
    domain: Vec<VarName>,
    family: Vec<Vec<(VarName, VarName)>>,
}

impl TryFrom<RelationshipWire> for Relationship {
    type Error = Error;

    fn try_from(w: RelationshipWire) -> Result<Self> {
        Relationship::new(
            w.domain,
            w.family.into_iter().map(|ps| ps.into_iter().collect()),
        )
    }
}

impl From<Relationship> for RelationshipWire {
    fn from(r: Relationship) -> RelationshipWire {
        RelationshipWire {
            domain: r.domain.into_iter().collect(),
            family: r.family.into_iter().map(|ps| ps.into_iter().collect()).collect(),
        }
    }
}

impl Relationship {
    pub fn new(
        domain: impl IntoIterator<Item = VarName>,
        family: impl IntoIterator<Item = PairSet>,
    ) -> Result<Self> {
        let domain: BTreeSet<VarName> = domain.into_iter().collect();
        let family: BTreeSet<PairSet> = family.into_iter().collect();
        for ps in &family {
            for (a, b) in ps {
                if !domain.contains(a) || !domain.contains(b) {
                    return Err(Error::InvalidRelation(format!(
                        "family pair ({a},{b}) outside the domain"
                    )));
                }
            }
        }
        Ok(Relationship { domain, family })
    }

    /// The relationship whose family holds exactly the given relation.
    pub fn singleton(r: &Relation) -> Relationship {
        Relationship { domain: r.domain().clone(), family: BTreeSet::from([r.pairs().clone()]) }
    }

    pub fn domain(&self) -> &BTreeSet<VarName> {
        &self.domain
    }

    pub fn family(&self) -> &BTreeSet<PairSet> {
        &self.family
    }

    /// The family members as relations on the common domain.
    pub fn members(&self) -> impl Iterator<Item = Relation> + '_ {
        self.family.iter().map(|ps| {
            Relation::new(self.domain.iter().cloned(), ps.iter().cloned())
                .expect("family pairs are over the domain")
        })
    }

    pub fn contains(&self, r: &Relation) -> bool {
        r.domain() == &self.domain && self.family.contains(r.pairs())
    }

    fn check_disjoint(&self, other: &Relationship) -> Result<()> {
        if let Some(shared) = self.domain.intersection(&other.domain).next() {
            return Err(Error::DomainOverlap(shared.clone()));
        }
        Ok(())
    }

    /// All shuffles: relations on the union domain whose restrictions to the
    /// two squares lie in the respective families, filtered by `mode`.
    pub fn shuffle_sum(&self, other: &Relationship, mode: ShuffleMode) -> Result<Relationship> {
        self.check_disjoint(other)?;
        let union: BTreeSet<VarName> = self.domain.union(&other.domain).cloned().collect();
        let mut family: BTreeSet<PairSet> = BTreeSet::new();
        match mode {
            ShuffleMode::All | ShuffleMode::PartialOrders => {
                check_budget(union.len())?;
                // Only the cross pairs are free once the two restrictions are
                // fixed.
                let cross: Vec<(VarName, VarName)> = self
                    .domain
                    .iter()
                    .flat_map(|a| {
                        other.domain.iter().flat_map(move |b| {
                            [(a.clone(), b.clone()), (b.clone(), a.clone())]
                        })
                    })
                    .collect();
                for r in &self.family {
                    for s in &other.family {
                        let base: PairSet = r.union(s).cloned().collect();
                        for extra in subsets(&cross) {
                            let mut q = base.clone();
                            q.extend(extra);
                            if mode == ShuffleMode::PartialOrders {
                                let rel = Relation::new(union.iter().cloned(), q.iter().cloned())
                                    .unwrap();
                                if !rel.is_partial_order() {
                                    continue;
                                }
                            }
                            family.insert(q);
                        }
                    }
                }
            }
            ShuffleMode::LinearOrders => {
                for r in &self.family {
                    let Ok(pr) = permutation_of(&self.domain, r) else { continue };
                    for s in &other.family {
                        let Ok(ps) = permutation_of(&other.domain, s) else { continue };
                        for merged in interleavings(pr.sequence(), ps.sequence()) {
                            let q = Permutation::new(merged).unwrap();
                            family.insert(q.to_relation().pairs().clone());
                        }
                    }
                }
            }
        }
        Ok(Relationship { domain: union, family })
    }

    /// Pairwise concatenations of the two families.
    pub fn concat_product(&self, other: &Relationship) -> Result<Relationship> {
        self.check_disjoint(other)?;
        let union: BTreeSet<VarName> = self.domain.union(&other.domain).cloned().collect();
        let mut family = BTreeSet::new();
        for r in self.members() {
            for s in other.members() {
                family.insert(r.concatenation(&s)?.pairs().clone());
            }
        }
        Ok(Relationship { domain: union, family })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShuffleMode {
    All,
    PartialOrders,
    LinearOrders,
}

/// A linear order on a finite domain, kept as the sequence of its elements.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<VarName>);

impl Permutation {
    pub fn new(seq: impl IntoIterator<Item = VarName>) -> Result<Self> {
        let seq: Vec<VarName> = seq.into_iter().collect();
        let distinct: BTreeSet<&VarName> = seq.iter().collect();
        if distinct.len() != seq.len() {
            return Err(Error::InvalidRelation("repeated element in permutation".into()));
        }
        Ok(Permutation(seq))
    }

    pub fn sequence(&self) -> &[VarName] {
        &self.0
    }

    pub fn domain(&self) -> BTreeSet<VarName> {
        self.0.iter().cloned().collect()
    }

    /// The linear order with `(a,b)` whenever `a` precedes `b`.
    pub fn to_relation(&self) -> Relation {
        let mut pairs = Vec::new();
        for (i, a) in self.0.iter().enumerate() {
            for b in &self.0[i + 1..] {
                pairs.push((a.clone(), b.clone()));
            }
        }
        Relation::new(self.0.iter().cloned(), pairs).unwrap()
    }

    /// Reads a linear order back into a sequence; fails unless the relation
    /// is irreflexive, transitive, and total on distinct elements.
    pub fn from_relation(r: &Relation) -> Result<Self> {
        permutation_of(r.domain(), r.pairs())
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

fn permutation_of(domain: &BTreeSet<VarName>, pairs: &PairSet) -> Result<Permutation> {
    let rel = Relation::new(domain.iter().cloned(), pairs.iter().cloned())
        .map_err(|_| Error::NotPartialOrder)?;
    if !rel.is_partial_order() {
        return Err(Error::NotPartialOrder);
    }
    // Sort by number of successors; a linear order on n elements gives each
    // element a distinct successor count.
    let mut seq: Vec<VarName> = domain.iter().cloned().collect();
    seq.sort_by_key(|v| std::cmp::Reverse(pairs.iter().filter(|(a, _)| a == v).count()));
    let perm = Permutation(seq);
    if &perm.to_relation().pairs().clone() == pairs {
        Ok(perm)
    } else {
        Err(Error::NotPartialOrder)
    }
}

fn check_budget(size: usize) -> Result<()> {
    if size > FAMILY_BUDGET {
        return Err(Error::BudgetExceeded { size, limit: FAMILY_BUDGET });
    }
    Ok(())
}

/// All subsets of `items`, in ascending bitmask order over the given slice.
fn subsets<T: Clone>(items: &[T]) -> impl Iterator<Item = Vec<T>> + '_ {
    assert!(items.len() < usize::BITS as usize);
    (0..(1usize << items.len())).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, x)| x.clone())
            .collect()
    })
}

fn interleavings(a: &[VarName], b: &[VarName]) -> Vec<Vec<VarName>> {
    if a.is_empty() {
        return vec![b.to_vec()];
    }
    if b.is_empty() {
        return vec![a.to_vec()];
    }
    let mut out = Vec::new();
    for mut rest in interleavings(&a[1..], b) {
        rest.insert(0, a[0].clone());
        out.push(rest);
    }
    for mut rest in interleavings(a, &b[1..]) {
        rest.insert(0, b[0].clone());
        out.push(rest);
    }
    out
}

/// All supersets of the relation's pairs within its domain square.
pub fn map_e(r: &Relation) -> Result<Relationship> {
    check_budget(r.domain().len())?;
    let free: Vec<(VarName, VarName)> = r
        .domain()
        .iter()
        .flat_map(|a| r.domain().iter().map(move |b| (a.clone(), b.clone())))
        .filter(|p| !r.pairs().contains(p))
        .collect();
    let family = subsets(&free).map(|extra| {
        let mut q = r.pairs().clone();
        q.extend(extra);
        q
    });
    Relationship::new(r.domain().iter().cloned(), family)
}

/// All partial-order extensions of a partial order within its domain square.
pub fn map_p(r: &Relation) -> Result<Relationship> {
    if !r.is_partial_order() {
        return Err(Error::NotPartialOrder);
    }
    let e = map_e(r)?;
    let family = e.family().iter().filter(|ps| {
        Relation::new(r.domain().iter().cloned(), ps.iter().cloned())
            .unwrap()
            .is_partial_order()
    });
    Relationship::new(r.domain().iter().cloned(), family.cloned())
}

/// All linear extensions of a partial order, as a relationship. Enumerated by
/// backtracking over minimal elements, not by filtering, so there is no
/// domain budget.
pub fn map_l(r: &Relation) -> Result<Relationship> {
    let exts = linear_extensions(r)?;
    Relationship::new(
        r.domain().iter().cloned(),
        exts.iter().map(|p| p.to_relation().pairs().clone()),
    )
}

/// The linear extensions of a partial order, in lexicographic order of their
/// sequences.
pub fn linear_extensions(r: &Relation) -> Result<Vec<Permutation>> {
    if !r.is_partial_order() {
        return Err(Error::NotPartialOrder);
    }
    let mut remaining: Vec<VarName> = r.domain().iter().cloned().collect();
    let mut prefix = Vec::new();
    let mut out = Vec::new();
    extend_backtrack(r, &mut remaining, &mut prefix, &mut out);
    Ok(out)
}

fn extend_backtrack(
    r: &Relation,
    remaining: &mut Vec<VarName>,
    prefix: &mut Vec<VarName>,
    out: &mut Vec<Permutation>,
) {
    if remaining.is_empty() {
        out.push(Permutation(prefix.clone()));
        return;
    }
    // remaining stays sorted, so choices come out in lexicographic order.
    for i in 0..remaining.len() {
        let candidate = remaining[i].clone();
        let minimal = remaining.iter().all(|other| !r.contains_pair(other, &candidate));
        if !minimal {
            continue;
        }
        remaining.remove(i);
        prefix.push(candidate.clone());
        extend_backtrack(r, remaining, prefix, out);
        prefix.pop();
        remaining.insert(i, candidate);
    }
}

/// Adds a pair to a partial order and closes transitively; the result is
/// again a partial order whenever the reverse pair was absent.
pub fn extend_with_pair(r: &Relation, x: &VarName, y: &VarName) -> Result<Relation> {
    if x == y || r.contains_pair(y, x) {
        return Err(Error::PairConflict);
    }
    if !r.domain().contains(x) {
        return Err(Error::NotInDomain(x.clone()));
    }
    if !r.domain().contains(y) {
        return Err(Error::NotInDomain(y.clone()));
    }
    let mut pairs = r.pairs().clone();
    pairs.insert((x.clone(), y.clone()));
    Ok(Relation::new(r.domain().iter().cloned(), pairs)?.transitive_closure())
}

/// Searches for a relation containing `r`, `s`, and all left-to-right cross
/// pairs that is nevertheless not a union of extensions of `r` and `s` with
/// the cross pairs. With `partial_orders_only` the search is restricted to
/// partial orders, where no witness exists.
pub fn find_q1_not_q2_witness(
    r: &Relation,
    s: &Relation,
    partial_orders_only: bool,
) -> Result<Option<Relation>> {
    if let Some(shared) = r.domain().intersection(s.domain()).next() {
        return Err(Error::DomainOverlap(shared.clone()));
    }
    let union: BTreeSet<VarName> = r.domain().union(s.domain()).cloned().collect();
    check_budget(union.len())?;
    let base = r.concatenation(s)?;
    let free: Vec<(VarName, VarName)> = union
        .iter()
        .flat_map(|a| union.iter().map(move |b| (a.clone(), b.clone())))
        .filter(|p| !base.pairs().contains(p))
        .collect();
    for extra in subsets(&free) {
        let mut pairs = base.pairs().clone();
        pairs.extend(extra);
        let q = Relation::new(union.iter().cloned(), pairs)?;
        if partial_orders_only && !q.is_partial_order() {
            continue;
        }
        // The required shape fails exactly when some pair runs from the right
        // domain back into the left one.
        let reversed = q
            .pairs()
            .iter()
            .any(|(a, b)| s.domain().contains(a) && r.domain().contains(b));
        if reversed {
            return Ok(Some(q));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> VarName {
        VarName::new(s).unwrap()
    }

    fn rel(domain: &[&str], pairs: &[(&str, &str)]) -> Relation {
        Relation::new(
            domain.iter().map(|s| v(s)),
            pairs.iter().map(|(a, b)| (v(a), v(b))),
        )
        .unwrap()
    }

    fn perm(seq: &[&str]) -> Permutation {
        Permutation::new(seq.iter().map(|s| v(s))).unwrap()
    }

    #[test]
    fn shuffle_sum_linear_orders() {
        let chain = Relationship::singleton(&rel(&["x", "y"], &[("x", "y")]));
        let z = Relationship::singleton(&Relation::singleton(v("z")));
        let sum = chain.shuffle_sum(&z, ShuffleMode::LinearOrders).unwrap();
        // z slots into each of the three positions around x < y.
        assert_eq!(sum.family().len(), 3);
        for p in [
            perm(&["z", "x", "y"]),
            perm(&["x", "z", "y"]),
            perm(&["x", "y", "z"]),
        ] {
            assert!(sum.contains(&p.to_relation()));
        }
    }

    #[test]
    fn shuffle_sum_all_mode_two_points() {
        let x = Relationship::singleton(&Relation::singleton(v("x")));
        let y = Relationship::singleton(&Relation::singleton(v("y")));
        let sum = x.shuffle_sum(&y, ShuffleMode::All).unwrap();
        // The four subsets of {(x,y),(y,x)}.
        assert_eq!(sum.family().len(), 4);
    }

    #[test]
    fn shuffle_sum_empty_family() {
        let none = Relationship::new([v("x")], []).unwrap();
        let y = Relationship::singleton(&Relation::singleton(v("y")));
        let sum = none.shuffle_sum(&y, ShuffleMode::LinearOrders).unwrap();
        assert!(sum.family().is_empty());
    }

    #[test]
    fn shuffle_sum_budget() {
        let a = Relationship::singleton(&rel(&["a", "b", "c"], &[]));
        let b = Relationship::singleton(&rel(&["d", "e"], &[]));
        assert!(matches!(
            a.shuffle_sum(&b, ShuffleMode::All),
            Err(Error::BudgetExceeded { size: 5, .. })
        ));
    }

    #[test]
    fn concat_product_examples() {
        let x = Relationship::singleton(&Relation::singleton(v("x")));
        let y = Relationship::singleton(&Relation::singleton(v("y")));
        let prod = x.concat_product(&y).unwrap();
        assert_eq!(prod, Relationship::singleton(&rel(&["x", "y"], &[("x", "y")])));

        let none = Relationship::new([v("x")], []).unwrap();
        assert!(none.concat_product(&y).unwrap().family().is_empty());
    }

    #[test]
    fn concat_product_family_sizes_multiply() {
        let u = Relationship::new(
            [v("x"), v("y")],
            [BTreeSet::new(), BTreeSet::from([(v("x"), v("y"))])],
        )
        .unwrap();
        let w = Relationship::new(
            [v("z"), v("w")],
            [BTreeSet::new(), BTreeSet::from([(v("z"), v("w"))])],
        )
        .unwrap();
        let prod = u.concat_product(&w).unwrap();
        assert_eq!(prod.family().len(), 4);
    }

    #[test]
    fn map_e_one_point() {
        let e = map_e(&Relation::singleton(v("x"))).unwrap();
        assert_eq!(e.family().len(), 2);
        assert!(e.contains(&rel(&["x"], &[])));
        assert!(e.contains(&rel(&["x"], &[("x", "x")])));
    }

    #[test]
    fn map_p_and_l_one_point() {
        let one = Relation::singleton(v("x"));
        assert_eq!(map_p(&one).unwrap(), Relationship::singleton(&one));
        assert_eq!(map_l(&one).unwrap(), Relationship::singleton(&one));
    }

    #[test]
    fn map_l_three_elements() {
        let r = rel(&["x", "y", "z"], &[("x", "y")]);
        let exts = linear_extensions(&r).unwrap();
        assert_eq!(
            exts,
            vec![perm(&["x", "y", "z"]), perm(&["x", "z", "y"]), perm(&["z", "x", "y"])]
        );
        assert_eq!(map_l(&r).unwrap().family().len(), 3);
    }

    #[test]
    fn map_l_rejects_non_partial_order() {
        assert_eq!(map_l(&rel(&["x"], &[("x", "x")])), Err(Error::NotPartialOrder));
    }

    #[test]
    fn extend_with_pair_examples() {
        let antichain = rel(&["x", "y"], &[]);
        assert_eq!(
            extend_with_pair(&antichain, &v("x"), &v("y")).unwrap(),
            rel(&["x", "y"], &[("x", "y")])
        );

        let partial = rel(&["x", "y", "z"], &[("x", "y")]);
        assert_eq!(
            extend_with_pair(&partial, &v("y"), &v("z")).unwrap(),
            rel(&["x", "y", "z"], &[("x", "y"), ("y", "z"), ("x", "z")])
        );

        let chain = rel(&["x", "y"], &[("x", "y")]);
        assert_eq!(extend_with_pair(&chain, &v("y"), &v("x")), Err(Error::PairConflict));
        assert_eq!(extend_with_pair(&chain, &v("x"), &v("x")), Err(Error::PairConflict));
    }

    #[test]
    fn q1_witness_exists_unrestricted() {
        let x = Relation::singleton(v("x"));
        let y = Relation::singleton(v("y"));
        let q = find_q1_not_q2_witness(&x, &y, false).unwrap().unwrap();
        assert!(q.contains_pair(&v("x"), &v("y")));
        assert!(q.contains_pair(&v("y"), &v("x")));
    }

    #[test]
    fn q1_witness_vanishes_for_partial_orders() {
        let x = Relation::singleton(v("x"));
        let y = Relation::singleton(v("y"));
        assert_eq!(find_q1_not_q2_witness(&x, &y, true).unwrap(), None);
    }

    #[test]
    fn q1_witness_rejects_overlap() {
        let r = rel(&["x", "y"], &[]);
        assert!(matches!(
            find_q1_not_q2_witness(&r, &r, false),
            Err(Error::DomainOverlap(_))
        ));
    }

    #[test]
    fn permutation_round_trip() {
        let p = perm(&["z", "x", "y"]);
        assert_eq!(Permutation::from_relation(&p.to_relation()).unwrap(), p);
        assert!(Permutation::from_relation(&rel(&["x", "y"], &[])).is_err());
    }
}
