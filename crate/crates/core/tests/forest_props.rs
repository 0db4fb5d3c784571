use proptest::collection::vec;
use proptest::prelude::*;

use fhc_core::forest::{
    canonical_decomposition, h_equiv, h_leq, h_leq_oracle, is_join_irreducible, join, minimize,
    seq_product, tree_leq, Antichain, LForest, LTree,
};
use fhc_core::generate::Enumerator;
use fhc_core::iterated::ITree;

fn tree(k: u32) -> impl Strategy<Value = LTree<u32>> {
    (0..k)
        .prop_map(LTree::leaf)
        .prop_recursive(3, 6, 3, move |inner| {
            (0..k, vec(inner, 0..3)).prop_map(|(label, children)| LTree::new(label, children))
        })
}

// Small enough that brute force over node maps stays cheap.
fn forest(k: u32) -> impl Strategy<Value = LForest<u32>> {
    vec(tree(k), 0..3)
        .prop_map(LForest::new)
        .prop_filter("at most 6 nodes", |f| f.size() <= 6)
}

fn leq(a: &LForest<u32>, b: &LForest<u32>) -> bool {
    h_leq(a, b, &Antichain)
}

fn minimal_tree(t: &LTree<u32>) -> bool {
    if t.is_singleton() {
        return true;
    }
    let rest = LForest::new(t.children.clone());
    minimal_forest(&rest)
        && t.children.iter().all(|c| c.label != t.label)
        && (t.children.len() != 1 || t.children[0].label != t.label)
}

// The structural criteria for minimality over an antichain of colors.
fn minimal_forest(f: &LForest<u32>) -> bool {
    let trees = &f.trees;
    trees.iter().all(minimal_tree)
        && (trees.len() < 2
            || (0..trees.len()).all(|i| {
                (0..trees.len())
                    .all(|j| i == j || !tree_leq(&trees[i], &trees[j], &Antichain))
            }))
}

fn level_one(k: u32, max_nodes: usize) -> Vec<LForest<u32>> {
    Enumerator::new(k)
        .forests_up_to(1, max_nodes)
        .iter()
        .map(|f| {
            f.shapes().unwrap().map_labels(&mut |t| match t {
                ITree::Color(c) => *c,
                ITree::Node(_) => unreachable!(),
            })
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn preorder_laws(a in forest(3), b in forest(3), c in forest(3)) {
        prop_assert!(leq(&a, &a));
        if leq(&a, &b) && leq(&b, &c) {
            prop_assert!(leq(&a, &c));
        }
    }

    #[test]
    fn recursive_rule_matches_brute_force(a in forest(3), b in forest(3)) {
        prop_assert_eq!(leq(&a, &b), h_leq_oracle(&a, &b, &Antichain).unwrap());
    }

    #[test]
    fn minimize_preserves_class_and_is_minimal(f in forest(3)) {
        let m = minimize(&f, &Antichain);
        prop_assert!(leq(&f, &m) && leq(&m, &f));
        prop_assert!(m.size() <= f.size());
        prop_assert!(minimal_forest(&m), "{:?}", m);
        prop_assert_eq!(minimize(&m, &Antichain).canonical(), m.canonical());
    }

    #[test]
    fn join_is_least_upper_bound(f in forest(2), g in forest(2), h in forest(2)) {
        let fg = join(&f, &g);
        prop_assert!(leq(&f, &fg) && leq(&g, &fg));
        if leq(&f, &h) && leq(&g, &h) {
            prop_assert!(leq(&fg, &h));
        }
    }

    #[test]
    fn join_irreducibles_are_prime(f in forest(2), g in forest(2), h in forest(2)) {
        if !f.is_empty()
            && is_join_irreducible(&f, &Antichain).unwrap()
            && leq(&f, &join(&g, &h))
        {
            prop_assert!(leq(&f, &g) || leq(&f, &h));
        }
    }

    #[test]
    fn join_is_below_product(f in forest(3), g in forest(3)) {
        prop_assert!(leq(&join(&f, &g), &seq_product(&f, &g)));
    }

    #[test]
    fn product_is_monotone_and_associative(
        f in forest(2), f2 in forest(2), g in forest(2), g2 in forest(2), h in forest(2),
    ) {
        if leq(&f, &f2) && leq(&g, &g2) {
            prop_assert!(leq(&seq_product(&f, &g), &seq_product(&f2, &g2)));
            prop_assert!(leq(&join(&f, &g), &join(&f2, &g2)));
        }
        prop_assert_eq!(
            seq_product(&seq_product(&f, &g), &h),
            seq_product(&f, &seq_product(&g, &h))
        );
    }

    #[test]
    fn decomposition_rebuilds_the_forest(f in forest(3)) {
        let parts = canonical_decomposition(&f, &Antichain);
        let rebuilt = LForest::new(parts.clone());
        prop_assert!(h_equiv(&rebuilt, &f, &Antichain));
        for p in &parts {
            prop_assert!(is_join_irreducible(&LForest::from(p.clone()), &Antichain).unwrap());
        }
    }
}

#[test]
fn no_smaller_equivalent_forest_exists() {
    let all = level_one(2, 4);
    for f in &all {
        let m = minimize(f, &Antichain);
        for g in all.iter().filter(|g| g.size() < m.size()) {
            let equivalent = h_leq_oracle(f, g, &Antichain).unwrap()
                && h_leq_oracle(g, f, &Antichain).unwrap();
            assert!(!equivalent, "{g:?} is smaller than min {m:?}");
        }
    }
}

#[test]
fn equivalent_minimal_forests_are_isomorphic() {
    let minimal: Vec<LForest<u32>> = level_one(3, 4)
        .iter()
        .map(|f| minimize(f, &Antichain).canonical())
        .collect();
    for a in &minimal {
        for b in &minimal {
            if h_equiv(a, b, &Antichain) {
                assert_eq!(a, b);
            }
        }
    }
}
