//! Randomized invariants over arbitrary terms.

use proptest::prelude::*;

use sforest::sterm::{parse_sterm, render_sterm, sterm_of_ftp, STerm};
use sforest::var::VarName;

fn var_name() -> impl Strategy<Value = VarName> {
    prop::sample::select(vec!["u", "v", "w", "x", "y", "z"])
        .prop_map(|s| VarName::new(s).unwrap())
}

fn sterm() -> impl Strategy<Value = STerm> {
    let leaf = var_name().prop_map(STerm::var);
    leaf.prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(STerm::sum),
            prop::collection::vec(inner, 2..4).prop_map(STerm::prod),
        ]
    })
}

fn rebuild(t: &STerm) -> STerm {
    match t {
        STerm::Var(v) => STerm::var(v.clone()),
        STerm::Sum(args) => STerm::sum(args.iter().map(rebuild)),
        STerm::Prod(args) => STerm::prod(args.iter().map(rebuild)),
    }
}

proptest! {
    #[test]
    fn parse_render_roundtrip(t in sterm()) {
        prop_assert_eq!(parse_sterm(&render_sterm(&t)).unwrap(), t);
    }

    #[test]
    fn canonicalization_is_idempotent(t in sterm()) {
        prop_assert_eq!(rebuild(&t), t);
    }

    #[test]
    fn diversified_terms_roundtrip_through_relations(t in sterm()) {
        prop_assume!(t.is_diversified());
        let r = t.kappa().unwrap();
        prop_assert!(r.is_ftp());
        prop_assert_eq!(sterm_of_ftp(&r).unwrap(), t);
    }
}
