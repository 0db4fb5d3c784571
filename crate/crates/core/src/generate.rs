//! Exhaustive and pseudo-random generation of iterated forests and terms.
//!
//! Sizes count colors after unfolding every label, so they are preserved by
//! lifting.

use std::collections::HashMap;
use std::rc::Rc;

use rand::Rng;

use crate::forest::LTree;
use crate::iterated::{IForest, ITree};
use crate::term::{GTerm, STerm};

/// Memoized enumeration of trees and forests over `k` colors.
///
/// Trees are produced up to reordering of children, each exactly once.
pub struct Enumerator {
    k: u32,
    trees: HashMap<(usize, usize), Rc<Vec<ITree>>>,
}

impl Enumerator {
    pub fn new(k: u32) -> Self {
        Enumerator {
            k,
            trees: HashMap::new(),
        }
    }

    /// All level-`level` trees with exactly `size` colors.
    pub fn trees(&mut self, level: usize, size: usize) -> Rc<Vec<ITree>> {
        if let Some(hit) = self.trees.get(&(level, size)) {
            return hit.clone();
        }
        let mut out = Vec::new();
        if level == 0 {
            if size == 1 {
                out.extend((0..self.k).map(ITree::Color));
            }
        } else {
            for label_size in 1..=size {
                let labels = self.trees(level - 1, label_size);
                if labels.is_empty() {
                    continue;
                }
                let child_sets = self.multisets(level, size - label_size);
                for label in labels.iter() {
                    for children in &child_sets {
                        let shapes = children
                            .iter()
                            .map(|c| c.shape().expect("tree above level 0").clone())
                            .collect();
                        out.push(ITree::node(LTree::new(label.clone(), shapes)));
                    }
                }
            }
        }
        let out = Rc::new(out);
        self.trees.insert((level, size), out.clone());
        out
    }

    /// All level-`level` forests with exactly `size` colors.
    pub fn forests(&mut self, level: usize, size: usize) -> Vec<IForest> {
        self.multisets(level, size)
            .into_iter()
            .map(|trees| IForest::new(level, trees).expect("generated at one level"))
            .collect()
    }

    /// All level-`level` forests with at most `max_size` colors, the empty
    /// forest included.
    pub fn forests_up_to(&mut self, level: usize, max_size: usize) -> Vec<IForest> {
        (0..=max_size)
            .flat_map(|s| self.forests(level, s))
            .collect()
    }

    // Multisets of trees with total size `size`, as nondecreasing index
    // sequences into the pool of smaller trees.
    fn multisets(&mut self, level: usize, size: usize) -> Vec<Vec<ITree>> {
        let mut pool: Vec<(usize, ITree)> = Vec::new();
        for s in 1..=size {
            pool.extend(self.trees(level, s).iter().map(|t| (s, t.clone())));
        }
        let mut out = Vec::new();
        let mut current = Vec::new();
        fill(&pool, 0, size, &mut current, &mut out);
        out
    }
}

/// Number of level-`level` forests with exactly `size` colors, saturating.
/// Agrees with `Enumerator::forests(level, size).len()` without building
/// them.
pub fn count_forests(k: u32, level: usize, size: usize) -> u128 {
    let mut trees: Vec<Vec<u128>> = Vec::with_capacity(level + 1);
    // trees[l][s] for s in 0..=size
    let mut base = vec![0u128; size + 1];
    if size >= 1 {
        base[1] = u128::from(k);
    }
    trees.push(base);
    for l in 1..=level {
        let below = &trees[l - 1];
        let mut here = vec![0u128; size + 1];
        for s in 1..=size {
            // label of size j, children multiset of size s - j over trees of
            // this level, all of size < s
            let multis = multiset_counts(&here[..s], s - 1);
            let mut total = 0u128;
            for j in 1..=s {
                total = total.saturating_add(below[j].saturating_mul(multis[s - j]));
            }
            here[s] = total;
        }
        trees.push(here);
    }
    multiset_counts(&trees[level], size)[size]
}

// Euler transform: multisets of total size n, given the number of distinct
// items of each size.
fn multiset_counts(items: &[u128], max: usize) -> Vec<u128> {
    let mut dp = vec![0u128; max + 1];
    dp[0] = 1;
    for (s, &t) in items.iter().enumerate().skip(1) {
        if t == 0 || s > max {
            continue;
        }
        let mut next = dp.clone();
        for (m, choose) in multichoose(t, max / s).into_iter().enumerate().skip(1) {
            for n in (m * s)..=max {
                next[n] = next[n].saturating_add(dp[n - m * s].saturating_mul(choose));
            }
        }
        dp = next;
    }
    dp
}

// C(t + m - 1, m) for m in 0..=max_m.
fn multichoose(t: u128, max_m: usize) -> Vec<u128> {
    let mut out = Vec::with_capacity(max_m + 1);
    let mut c = 1u128;
    out.push(c);
    for i in 0..max_m as u128 {
        c = match c.checked_mul(t.saturating_add(i)) {
            Some(v) => v / (i + 1),
            None => u128::MAX,
        };
        out.push(c);
    }
    out
}

fn fill(
    pool: &[(usize, ITree)],
    start: usize,
    remaining: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<ITree>>,
) {
    if remaining == 0 {
        out.push(current.iter().map(|&i| pool[i].1.clone()).collect());
        return;
    }
    for i in start..pool.len() {
        let s = pool[i].0;
        if s <= remaining {
            current.push(i);
            fill(pool, i, remaining - s, current, out);
            current.pop();
        }
    }
}

/// A random tree of the given level with at most `max_size` colors.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, level: usize, max_size: usize, k: u32) -> ITree {
    let size = rng.gen_range(1..=max_size.max(1));
    random_tree_exact(rng, level, size, k)
}

// A tree of exactly `size` colors.
fn random_tree_exact<R: Rng + ?Sized>(rng: &mut R, level: usize, size: usize, k: u32) -> ITree {
    if level == 0 {
        return ITree::Color(rng.gen_range(0..k));
    }
    let label_size = rng.gen_range(1..=size);
    let label = random_tree_exact(rng, level - 1, label_size, k);
    let mut rest = size - label_size;
    let mut children = Vec::new();
    while rest > 0 {
        let s = rng.gen_range(1..=rest);
        rest -= s;
        let child = random_tree_exact(rng, level, s, k);
        children.push(child.shape().expect("tree above level 0").clone());
    }
    ITree::node(LTree::new(label, children))
}

/// A random forest at exactly `level` with at most `max_size` colors.
/// Level-0 forests hold a single color, as the other level-0 forests are
/// equivalent to level-1 forests of singletons.
pub fn random_forest<R: Rng + ?Sized>(rng: &mut R, level: usize, max_size: usize, k: u32) -> IForest {
    if level == 0 {
        return IForest::color(rng.gen_range(0..k));
    }
    let mut rest = rng.gen_range(0..=max_size);
    let mut trees = Vec::new();
    while rest > 0 {
        let s = rng.gen_range(1..=rest);
        rest -= s;
        trees.push(random_tree_exact(rng, level, s, k));
    }
    IForest::new(level, trees).expect("generated at one level")
}

/// A random product term with at most `depth` nested operations and product
/// exponents below `max_p`.
pub fn random_sterm<R: Rng + ?Sized>(rng: &mut R, depth: usize, max_p: usize, k: u32) -> STerm {
    if depth == 0 || rng.gen_bool(0.3) {
        return STerm::Const(rng.gen_range(0..k));
    }
    let a = random_sterm(rng, depth - 1, max_p, k);
    let b = random_sterm(rng, depth - 1, max_p, k);
    if rng.gen_bool(0.5) {
        STerm::join(a, b)
    } else {
        STerm::dot(rng.gen_range(0..max_p.max(1)), a, b)
    }
}

pub fn random_gterm<R: Rng + ?Sized>(rng: &mut R, depth: usize, k: u32) -> GTerm {
    if depth == 0 || rng.gen_bool(0.3) {
        return GTerm::Const(rng.gen_range(0..k));
    }
    if rng.gen_bool(0.5) {
        GTerm::join(random_gterm(rng, depth - 1, k), random_gterm(rng, depth - 1, k))
    } else {
        GTerm::g(
            random_gterm(rng, depth - 1, k),
            random_gterm(rng, depth - 1, k),
            random_gterm(rng, depth - 1, k),
        )
    }
}
