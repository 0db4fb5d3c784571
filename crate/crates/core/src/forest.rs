//! Finite labeled trees and forests over a label preorder.
//!
//! A forest `A` is below `B` in the homomorphic preorder (`A ≤_h B`) when
//! some map from the nodes of `A` to the nodes of `B` is monotone for the
//! prefix (ancestor) orders and sends every label to a label above it.
//! [`h_leq`] decides this by recursion on tree rank; [`h_leq_oracle`]
//! searches the map space directly and serves as the ground truth.

use crate::error::{Error, Result};

/// Default bound on the number of candidate maps the oracle may explore.
pub const DEFAULT_ORACLE_BOUND: u128 = 10_000_000;

/// A decidable preorder on labels.
pub trait LabelPreorder<L: ?Sized> {
    fn leq(&self, a: &L, b: &L) -> bool;
}

impl<L: ?Sized, F> LabelPreorder<L> for F
where
    F: Fn(&L, &L) -> bool,
{
    fn leq(&self, a: &L, b: &L) -> bool {
        self(a, b)
    }
}

/// The discrete preorder: labels are comparable only when equal.
#[derive(Debug, Clone, Copy, Default)]
pub struct Antichain;

impl<L: Eq + ?Sized> LabelPreorder<L> for Antichain {
    fn leq(&self, a: &L, b: &L) -> bool {
        a == b
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LTree<L> {
    pub label: L,
    pub children: Vec<LTree<L>>,
}

impl<L> LTree<L> {
    pub fn leaf(label: L) -> Self {
        LTree {
            label,
            children: Vec::new(),
        }
    }

    pub fn new(label: L, children: Vec<LTree<L>>) -> Self {
        LTree { label, children }
    }

    /// A chain whose first element is the root.
    pub fn chain<I: IntoIterator<Item = L>>(labels: I) -> Option<Self> {
        let labels: Vec<L> = labels.into_iter().collect();
        let mut iter = labels.into_iter().rev();
        let mut tree = LTree::leaf(iter.next()?);
        for label in iter {
            tree = LTree::new(label, vec![tree]);
        }
        Some(tree)
    }

    pub fn is_singleton(&self) -> bool {
        self.children.is_empty()
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(LTree::size).sum::<usize>()
    }

    /// Length of a longest root-to-leaf chain, counted in nodes.
    pub fn rank(&self) -> usize {
        1 + self.children.iter().map(LTree::rank).max().unwrap_or(0)
    }

    /// Labels in pre-order.
    pub fn labels(&self) -> Vec<&L> {
        let mut out = Vec::with_capacity(self.size());
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels<'a>(&'a self, out: &mut Vec<&'a L>) {
        out.push(&self.label);
        for c in &self.children {
            c.collect_labels(out);
        }
    }

    pub fn map_labels<M, F: FnMut(&L) -> M>(&self, f: &mut F) -> LTree<M> {
        LTree {
            label: f(&self.label),
            children: self.children.iter().map(|c| c.map_labels(f)).collect(),
        }
    }

    pub fn try_map_labels<M, E, F>(&self, f: &mut F) -> std::result::Result<LTree<M>, E>
    where
        F: FnMut(&L) -> std::result::Result<M, E>,
    {
        Ok(LTree {
            label: f(&self.label)?,
            children: self
                .children
                .iter()
                .map(|c| c.try_map_labels(f))
                .collect::<std::result::Result<_, _>>()?,
        })
    }
}

impl<L: Ord> LTree<L> {
    /// Sorts children recursively, so isomorphic trees become equal.
    pub fn canonicalize(&mut self) {
        for c in &mut self.children {
            c.canonicalize();
        }
        self.children.sort();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LForest<L> {
    pub trees: Vec<LTree<L>>,
}

impl<L> Default for LForest<L> {
    fn default() -> Self {
        LForest { trees: Vec::new() }
    }
}

impl<L> From<LTree<L>> for LForest<L> {
    fn from(tree: LTree<L>) -> Self {
        LForest { trees: vec![tree] }
    }
}

impl<L> FromIterator<LTree<L>> for LForest<L> {
    fn from_iter<I: IntoIterator<Item = LTree<L>>>(iter: I) -> Self {
        LForest {
            trees: iter.into_iter().collect(),
        }
    }
}

impl<L> LForest<L> {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(trees: Vec<LTree<L>>) -> Self {
        LForest { trees }
    }

    /// The forest of singleton trees carrying `labels`.
    pub fn singletons<I: IntoIterator<Item = L>>(labels: I) -> Self {
        labels.into_iter().map(LTree::leaf).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn size(&self) -> usize {
        self.trees.iter().map(LTree::size).sum()
    }

    pub fn labels(&self) -> Vec<&L> {
        self.trees.iter().flat_map(LTree::labels).collect()
    }

    pub fn map_labels<M, F: FnMut(&L) -> M>(&self, f: &mut F) -> LForest<M> {
        LForest {
            trees: self.trees.iter().map(|t| t.map_labels(f)).collect(),
        }
    }
}

impl<L: Ord> LForest<L> {
    pub fn canonicalize(&mut self) {
        for t in &mut self.trees {
            t.canonicalize();
        }
        self.trees.sort();
    }

    pub fn canonical(mut self) -> Self {
        self.canonicalize();
        self
    }
}

/// Tree case of the homomorphic preorder, by recursion on tree rank.
pub fn tree_leq<L, Q: LabelPreorder<L> + ?Sized>(a: &LTree<L>, b: &LTree<L>, q: &Q) -> bool {
    match (a.is_singleton(), b.is_singleton()) {
        (true, true) => q.leq(&a.label, &b.label),
        (true, false) => b.labels().into_iter().any(|v| q.leq(&a.label, v)),
        (false, true) => a.labels().into_iter().all(|t| q.leq(t, &b.label)),
        (false, false) => {
            if q.leq(&a.label, &b.label) {
                a.children.iter().all(|ai| tree_leq(ai, b, q))
            } else {
                // Child subtrees of `b`; the root of `a` cannot land on the root of `b`.
                b.children.iter().any(|bj| tree_leq(a, bj, q))
            }
        }
    }
}

/// Decides `a ≤_h b`: every tree of `a` is below some tree of `b`.
pub fn h_leq<L, Q: LabelPreorder<L> + ?Sized>(a: &LForest<L>, b: &LForest<L>, q: &Q) -> bool {
    a.trees
        .iter()
        .all(|ta| b.trees.iter().any(|tb| tree_leq(ta, tb, q)))
}

pub fn h_equiv<L, Q: LabelPreorder<L> + ?Sized>(a: &LForest<L>, b: &LForest<L>, q: &Q) -> bool {
    h_leq(a, b, q) && h_leq(b, a, q)
}

/// Nodes of a forest in pre-order with parent links.
struct Flat<'a, L> {
    labels: Vec<&'a L>,
    parent: Vec<Option<usize>>,
}

impl<'a, L> Flat<'a, L> {
    fn new(forest: &'a LForest<L>) -> Self {
        let mut flat = Flat {
            labels: Vec::new(),
            parent: Vec::new(),
        };
        for t in &forest.trees {
            flat.push(t, None);
        }
        flat
    }

    fn push(&mut self, tree: &'a LTree<L>, parent: Option<usize>) {
        let id = self.labels.len();
        self.labels.push(&tree.label);
        self.parent.push(parent);
        for c in &tree.children {
            self.push(c, Some(id));
        }
    }

    fn len(&self) -> usize {
        self.labels.len()
    }

    /// `anc[x][y]` holds when node `x` is a prefix of (or equal to) node `y`.
    fn ancestry(&self) -> Vec<Vec<bool>> {
        let n = self.len();
        let mut anc = vec![vec![false; n]; n];
        for y in 0..n {
            let mut cur = Some(y);
            while let Some(x) = cur {
                anc[x][y] = true;
                cur = self.parent[x];
            }
        }
        anc
    }
}

/// Ground-truth decision of `a ≤_h b` by search over node maps, with the
/// default bound.
pub fn h_leq_oracle<L, Q: LabelPreorder<L> + ?Sized>(
    a: &LForest<L>,
    b: &LForest<L>,
    q: &Q,
) -> Result<bool> {
    h_leq_oracle_bounded(a, b, q, DEFAULT_ORACLE_BOUND)
}

/// Searches all maps from the nodes of `a` to the nodes of `b` for one that
/// is monotone for the prefix orders and label-respecting. Refuses when the
/// map space `|b|^|a|` exceeds `bound`.
pub fn h_leq_oracle_bounded<L, Q: LabelPreorder<L> + ?Sized>(
    a: &LForest<L>,
    b: &LForest<L>,
    q: &Q,
    bound: u128,
) -> Result<bool> {
    let fa = Flat::new(a);
    let fb = Flat::new(b);
    let candidates = map_space(fb.len(), fa.len());
    if candidates > bound {
        return Err(Error::OracleTooLarge { candidates, bound });
    }
    let anc = fb.ancestry();
    // fits[x][y]: label of node x of `a` is below label of node y of `b`
    let fits: Vec<Vec<bool>> = fa
        .labels
        .iter()
        .map(|t| fb.labels.iter().map(|v| q.leq(t, v)).collect())
        .collect();
    let mut image = vec![0usize; fa.len()];
    Ok(extend_map(0, &fa, fb.len(), &anc, &fits, &mut image))
}

fn map_space(codomain: usize, domain: usize) -> u128 {
    let mut total: u128 = 1;
    for _ in 0..domain {
        total = total.saturating_mul(codomain as u128);
    }
    total
}

// Nodes are assigned in pre-order, so a node's parent already has an image.
fn extend_map<L>(
    node: usize,
    fa: &Flat<'_, L>,
    codomain: usize,
    anc: &[Vec<bool>],
    fits: &[Vec<bool>],
    image: &mut [usize],
) -> bool {
    if node == fa.len() {
        return true;
    }
    for y in 0..codomain {
        if !fits[node][y] {
            continue;
        }
        if let Some(p) = fa.parent[node] {
            if !anc[image[p]][y] {
                continue;
            }
        }
        image[node] = y;
        if extend_map(node + 1, fa, codomain, anc, fits, image) {
            return true;
        }
    }
    false
}

/// Computes a minimal forest h-equivalent to `f`.
///
/// Forests with several trees drop every tree dominated by another (keeping
/// one of each equivalent group) and minimize the rest. A tree `t·F` is
/// rebuilt over `min(F)`, nodes whose whole path from the root's children
/// carries labels below the root label are removed, the remaining forest is
/// minimized again, and finally the root is dropped when it has a single
/// child whose label dominates it.
pub fn minimize<L: Clone, Q: LabelPreorder<L> + ?Sized>(f: &LForest<L>, q: &Q) -> LForest<L> {
    match f.trees.len() {
        0 => LForest::empty(),
        1 => LForest::from(minimize_tree(&f.trees[0], q)),
        _ => {
            let trees = &f.trees;
            let kept = (0..trees.len()).filter(|&i| {
                !(0..trees.len()).any(|j| {
                    j != i
                        && tree_leq(&trees[i], &trees[j], q)
                        && (j < i || !tree_leq(&trees[j], &trees[i], q))
                })
            });
            kept.map(|i| minimize_tree(&trees[i], q)).collect()
        }
    }
}

fn minimize_tree<L: Clone, Q: LabelPreorder<L> + ?Sized>(t: &LTree<L>, q: &Q) -> LTree<L> {
    if t.is_singleton() {
        return t.clone();
    }
    let root = &t.label;
    let first = minimize(&LForest::new(t.children.clone()), q);
    let mut pruned = Vec::new();
    for c in first.trees {
        prune_below(c, root, q, &mut pruned);
    }
    let rest = minimize(&LForest::new(pruned), q);
    if rest.trees.len() == 1 && q.leq(root, &rest.trees[0].label) {
        return rest.trees.into_iter().next().expect("one tree");
    }
    LTree::new(root.clone(), rest.trees)
}

// Removes the cone of nodes labeled below `root`; surviving subtrees move down
// to the root.
fn prune_below<L, Q: LabelPreorder<L> + ?Sized>(
    t: LTree<L>,
    root: &L,
    q: &Q,
    out: &mut Vec<LTree<L>>,
) {
    if q.leq(&t.label, root) {
        for c in t.children {
            prune_below(c, root, q, out);
        }
    } else {
        out.push(t);
    }
}

/// Join-irreducibility: the minimal form is a single tree.
pub fn is_join_irreducible<L: Clone, Q: LabelPreorder<L> + ?Sized>(
    f: &LForest<L>,
    q: &Q,
) -> Result<bool> {
    if f.is_empty() {
        return Err(Error::BottomElement);
    }
    Ok(minimize(f, q).trees.len() == 1)
}

/// Pairwise incomparable minimal trees whose join is `f`. The empty forest
/// decomposes into the empty family.
pub fn canonical_decomposition<L: Clone, Q: LabelPreorder<L> + ?Sized>(
    f: &LForest<L>,
    q: &Q,
) -> Vec<LTree<L>> {
    minimize(f, q).trees
}

pub fn join<L: Clone>(f: &LForest<L>, g: &LForest<L>) -> LForest<L> {
    f.trees.iter().chain(&g.trees).cloned().collect()
}

/// `f·g`: a copy of `g` above every leaf of `f`. An empty `f` yields `g`.
pub fn seq_product<L: Clone>(f: &LForest<L>, g: &LForest<L>) -> LForest<L> {
    if f.is_empty() {
        return g.clone();
    }
    f.trees.iter().map(|t| graft(t, g)).collect()
}

fn graft<L: Clone>(t: &LTree<L>, g: &LForest<L>) -> LTree<L> {
    if t.is_singleton() {
        LTree::new(t.label.clone(), g.trees.clone())
    } else {
        LTree::new(
            t.label.clone(),
            t.children.iter().map(|c| graft(c, g)).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf(i: u32) -> LTree<u32> {
        LTree::leaf(i)
    }

    fn chain(labels: &[u32]) -> LTree<u32> {
        LTree::chain(labels.iter().copied()).unwrap()
    }

    fn forest(trees: Vec<LTree<u32>>) -> LForest<u32> {
        LForest::new(trees)
    }

    fn both(a: &LForest<u32>, b: &LForest<u32>) -> (bool, bool) {
        (
            h_leq(a, b, &Antichain),
            h_leq_oracle(a, b, &Antichain).unwrap(),
        )
    }

    #[test]
    fn singletons_over_antichain() {
        let zero = LForest::from(leaf(0));
        let one = LForest::from(leaf(1));
        assert_eq!(both(&zero, &zero), (true, true));
        assert_eq!(both(&zero, &one), (false, false));
    }

    #[test]
    fn chain_versus_two_singletons() {
        let c = LForest::from(chain(&[0, 1]));
        let pair = LForest::singletons([0, 1]);
        assert_eq!(both(&c, &pair), (false, false));
        assert_eq!(both(&pair, &c), (true, true));
    }

    #[test]
    fn oracle_edge_cases() {
        let any = LForest::from(chain(&[1, 0, 1]));
        assert!(h_leq_oracle(&LForest::empty(), &any, &Antichain).unwrap());
        assert!(!h_leq_oracle(&any, &LForest::empty(), &Antichain).unwrap());
        let twice = LForest::singletons([0, 0]);
        assert!(h_leq_oracle(&twice, &LForest::singletons([0]), &Antichain).unwrap());
    }

    #[test]
    fn oracle_guard() {
        let big = LForest::from(chain(&[0; 12]));
        let err = h_leq_oracle_bounded(&big, &big, &Antichain, 1_000).unwrap_err();
        assert!(matches!(err, Error::OracleTooLarge { bound: 1_000, .. }));
        assert!(err.is_resource_guard());
        // 12^12 exceeds the default bound as well
        assert!(h_leq_oracle(&big, &big, &Antichain).is_err());
    }

    #[test]
    fn recursion_looks_into_child_subtrees_of_the_target() {
        // 1 -> 0 -> 1 sits inside 0 -> 1 -> 0 -> 1 only below the root
        let a = LForest::from(chain(&[1, 0, 1]));
        let b = LForest::from(chain(&[0, 1, 0, 1]));
        assert_eq!(both(&a, &b), (true, true));
        assert_eq!(both(&b, &a), (false, false));
    }

    #[test]
    fn minimize_examples() {
        let q = Antichain;
        assert_eq!(
            minimize(&LForest::singletons([0, 0]), &q),
            LForest::singletons([0])
        );
        let t = LForest::from(LTree::new(0, vec![leaf(0), leaf(1)]));
        assert_eq!(minimize(&t, &q), LForest::from(chain(&[0, 1])));
        for i in 0..3 {
            assert_eq!(
                minimize(&LForest::from(leaf(i)), &q),
                LForest::from(leaf(i))
            );
        }
    }

    #[test]
    fn minimize_tree_example_has_no_smaller_equivalent() {
        // brute force over all forests with at most one node over {0, 1}
        let t = LForest::from(LTree::new(0, vec![leaf(0), leaf(1)]));
        let small = [
            LForest::empty(),
            LForest::singletons([0]),
            LForest::singletons([1]),
        ];
        for s in &small {
            assert!(!h_equiv(s, &t, &Antichain));
        }
        assert!(h_equiv(&minimize(&t, &Antichain), &t, &Antichain));
    }

    #[test]
    fn minimize_drops_root_below_single_child() {
        // 0 -> (0 -> 1) collapses onto 0 -> 1
        let t = LForest::from(LTree::new(0, vec![chain(&[0, 1])]));
        assert_eq!(minimize(&t, &Antichain), LForest::from(chain(&[0, 1])));
        // alternating chains are already minimal
        let t = LForest::from(chain(&[0, 1, 0]));
        assert_eq!(minimize(&t, &Antichain), t);
    }

    #[test]
    fn minimize_over_a_chain_preorder() {
        let le = |a: &u32, b: &u32| a <= b;
        // labels below the root vanish, and 1 -> 2 collapses to 2
        let t = LForest::from(LTree::new(1, vec![leaf(0), chain(&[1, 2])]));
        assert_eq!(minimize(&t, &le), LForest::from(leaf(2)));
    }

    #[test]
    fn join_irreducibility() {
        let q = Antichain;
        assert!(is_join_irreducible(&LForest::singletons([0]), &q).unwrap());
        assert!(!is_join_irreducible(&LForest::singletons([0, 1]), &q).unwrap());
        let t = LForest::from(LTree::new(0, vec![leaf(0), leaf(1)]));
        assert!(is_join_irreducible(&t, &q).unwrap());
        assert_eq!(
            is_join_irreducible(&LForest::<u32>::empty(), &q),
            Err(Error::BottomElement)
        );
    }

    #[test]
    fn decomposition_examples() {
        let q = Antichain;
        assert_eq!(
            canonical_decomposition(&LForest::singletons([0, 1]), &q),
            vec![leaf(0), leaf(1)]
        );
        assert_eq!(
            canonical_decomposition(&LForest::singletons([0, 0, 1]), &q),
            vec![leaf(0), leaf(1)]
        );
        assert_eq!(
            canonical_decomposition(&LForest::from(chain(&[0, 1])), &q),
            vec![chain(&[0, 1])]
        );
        assert!(canonical_decomposition(&LForest::<u32>::empty(), &q).is_empty());
    }

    #[test]
    fn join_examples() {
        let zero = LForest::singletons([0]);
        let one = LForest::singletons([1]);
        assert_eq!(join(&zero, &one), LForest::singletons([0, 1]));
        assert_eq!(join(&zero, &LForest::empty()), zero);
        let twice = join(&zero, &zero);
        assert_eq!(twice, LForest::singletons([0, 0]));
        assert!(h_equiv(&twice, &zero, &Antichain));
    }

    #[test]
    fn seq_product_examples() {
        let zero = LForest::singletons([0]);
        let one = LForest::singletons([1]);
        assert_eq!(seq_product(&zero, &one), forest(vec![chain(&[0, 1])]));
        let left = seq_product(&seq_product(&zero, &one), &zero);
        let right = seq_product(&zero, &seq_product(&one, &zero));
        assert_eq!(left, forest(vec![chain(&[0, 1, 0])]));
        assert_eq!(right, left);
        assert_eq!(
            seq_product(&LForest::singletons([0, 1]), &zero),
            forest(vec![chain(&[0, 0]), chain(&[1, 0])])
        );
        assert_eq!(seq_product(&LForest::empty(), &one), one);
        assert_eq!(seq_product(&one, &LForest::empty()), one);
    }

    #[test]
    fn canonical_form_ignores_child_order() {
        let a = LForest::new(vec![LTree::new(0, vec![leaf(1), chain(&[0, 1])]), leaf(2)]);
        let b = LForest::new(vec![leaf(2), LTree::new(0, vec![chain(&[0, 1]), leaf(1)])]);
        assert_ne!(a, b);
        assert_eq!(a.canonical(), b.canonical());
    }
}
