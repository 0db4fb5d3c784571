//! Levels of the fine hierarchy of k-partitions of ℕ, handled through their
//! forest indices.
//!
//! The level sets themselves are never built. Verdicts rest on two facts:
//! `T ≤ V` implies that the level of `T` is contained in the level of `V`,
//! and over ℕ the hierarchy does not collapse, so the converse holds as well.
//! Inclusion of levels is therefore decided by `colim_leq(T, V, 0)`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::generate::{count_forests, Enumerator};
use crate::iterated::{colim_equiv, colim_leq, iminimize, lift, Alphabet, IForest};
use crate::syntax::{parse_forest, serialize};
use crate::term::{encode, s_to_g, GTerm};

/// Index of a level: a nonempty iterated forest, read as the join of its
/// trees. Single trees give the join-irreducible levels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelDescriptor(IForest);

impl LevelDescriptor {
    pub fn new(forest: IForest) -> Result<Self> {
        if forest.is_empty() {
            return Err(Error::BottomElement);
        }
        Ok(LevelDescriptor(forest))
    }

    pub fn forest(&self) -> &IForest {
        &self.0
    }

    pub fn into_forest(self) -> IForest {
        self.0
    }
}

impl TryFrom<IForest> for LevelDescriptor {
    type Error = Error;

    fn try_from(forest: IForest) -> Result<Self> {
        LevelDescriptor::new(forest)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LevelRelation {
    /// Strict inclusion.
    Subset,
    Superset,
    Equal,
    Incomparable,
}

impl fmt::Display for LevelRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LevelRelation::Subset => "subset",
            LevelRelation::Superset => "superset",
            LevelRelation::Equal => "equal",
            LevelRelation::Incomparable => "incomparable",
        })
    }
}

/// How the level of `t` sits relative to the level of `v` over ℕ.
pub fn level_relation(t: &LevelDescriptor, v: &LevelDescriptor) -> LevelRelation {
    match (colim_leq(&t.0, &v.0, 0), colim_leq(&v.0, &t.0, 0)) {
        (true, true) => LevelRelation::Equal,
        (true, false) => LevelRelation::Subset,
        (false, true) => LevelRelation::Superset,
        (false, false) => LevelRelation::Incomparable,
    }
}

/// A term describing a complete k-partition of the level of `t`.
///
/// Read `G(a, b, c)` as: behave like `c` until the first mind change, then
/// like `a` or `b` by the parity of later changes. The numbering itself is
/// not evaluated.
pub fn complete_witness(t: &LevelDescriptor, shift: usize) -> GTerm {
    let term = encode(&t.0, shift).expect("descriptors are nonempty");
    s_to_g(&term)
}

/// Default cap on the number of forests generated by [`enumerate_segment`].
pub const DEFAULT_SEGMENT_LIMIT: usize = 20_000;

/// A finite initial part of the quotient of iterated forests under `≤^0`:
/// one representative per class, ordered so that every class comes after
/// all classes below it, and the cover pairs `(lower, upper)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSegment {
    k: u32,
    max_nodes: usize,
    max_level: usize,
    classes: Vec<IForest>,
    covers: Vec<(usize, usize)>,
}

impl QuotientSegment {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn max_nodes(&self) -> usize {
        self.max_nodes
    }

    pub fn max_level(&self) -> usize {
        self.max_level
    }

    pub fn classes(&self) -> &[IForest] {
        &self.classes
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// `order()[i][j]` iff class `i` is below or equal to class `j`, read off
    /// the covers.
    pub fn order(&self) -> Vec<Vec<bool>> {
        let c = self.len();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); c];
        for &(a, b) in &self.covers {
            up[a].push(b);
        }
        let mut order = vec![vec![false; c]; c];
        for (i, row) in order.iter_mut().enumerate() {
            let mut stack = vec![i];
            while let Some(x) = stack.pop() {
                if !row[x] {
                    row[x] = true;
                    stack.extend(&up[x]);
                }
            }
        }
        order
    }

    /// Size of a largest antichain, by Dilworth's theorem.
    pub fn width(&self) -> usize {
        let order = self.order();
        let c = self.len();
        let mut matched: Vec<Option<usize>> = vec![None; c];
        let mut matching = 0;
        for a in 0..c {
            let mut seen = vec![false; c];
            if augment(a, &order, &mut matched, &mut seen) {
                matching += 1;
            }
        }
        c - matching
    }

    /// True when, for every comparable pair, all maximal chains between
    /// them have the same length.
    pub fn is_graded(&self) -> bool {
        let c = self.len();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); c];
        for &(a, b) in &self.covers {
            up[a].push(b);
        }
        // classes are topologically sorted, so one forward sweep suffices
        for a in 0..c {
            let mut shortest = vec![usize::MAX; c];
            let mut longest = vec![0usize; c];
            shortest[a] = 0;
            for x in a..c {
                if shortest[x] == usize::MAX {
                    continue;
                }
                if shortest[x] != longest[x] {
                    return false;
                }
                for &y in &up[x] {
                    shortest[y] = shortest[y].min(shortest[x] + 1);
                    longest[y] = longest[y].max(longest[x] + 1);
                }
            }
        }
        true
    }

    /// The cache file text.
    pub fn to_cache_text(&self) -> String {
        let mut out = format!(
            "fhc-segment v1 k={} nodes={} level={}\n",
            self.k, self.max_nodes, self.max_level
        );
        for f in &self.classes {
            out.push_str(&serialize(f));
            out.push('\n');
        }
        out.push_str("covers:\n");
        for (a, b) in &self.covers {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }

    pub fn from_cache_text(text: &str) -> Result<Self> {
        let bad = |line: usize, msg: &str| Error::SegmentFormat {
            line,
            msg: msg.to_string(),
        };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (_, header) = lines.next().ok_or_else(|| bad(1, "missing header"))?;
        let fields: Vec<&str> = header.split(' ').collect();
        let param = |idx: usize, key: &str| -> Result<&str> {
            fields
                .get(idx)
                .and_then(|f| f.strip_prefix(key))
                .ok_or_else(|| bad(1, "malformed header"))
        };
        if fields.len() != 5 || fields[0] != "fhc-segment" || fields[1] != "v1" {
            return Err(bad(1, "malformed header"));
        }
        let number = |s: &str| s.parse::<usize>().map_err(|_| bad(1, "malformed header"));
        let k = param(2, "k=")?
            .parse::<u32>()
            .map_err(|_| bad(1, "malformed header"))?;
        let max_nodes = number(param(3, "nodes=")?)?;
        let max_level = number(param(4, "level=")?)?;
        let alphabet = Alphabet::Finite(k);

        let mut classes = Vec::new();
        let mut saw_covers = false;
        for (no, line) in lines.by_ref() {
            if line == "covers:" {
                saw_covers = true;
                break;
            }
            let f = parse_forest(line, alphabet).map_err(|e| bad(no, &e.to_string()))?;
            classes.push(f);
        }
        if !saw_covers {
            return Err(bad(text.lines().count() + 1, "missing `covers:`"));
        }
        let mut covers = Vec::new();
        for (no, line) in lines {
            let pair: Vec<&str> = line.split(' ').collect();
            let (a, b) = match pair.as_slice() {
                [a, b] => (a.parse::<usize>(), b.parse::<usize>()),
                _ => return Err(bad(no, "expected two indices")),
            };
            let (a, b) = match (a, b) {
                (Ok(a), Ok(b)) if a < classes.len() && b < classes.len() => (a, b),
                _ => return Err(bad(no, "bad class index")),
            };
            covers.push((a, b));
        }
        Ok(QuotientSegment {
            k,
            max_nodes,
            max_level,
            classes,
            covers,
        })
    }
}

fn augment(a: usize, order: &[Vec<bool>], matched: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for b in 0..order.len() {
        if a != b && order[a][b] && !seen[b] {
            seen[b] = true;
            if matched[b].is_none_or(|m| augment(m, order, matched, seen)) {
                matched[b] = Some(a);
                return true;
            }
        }
    }
    false
}

/// Enumerates the classes of all forests of level at most `max_level` with
/// at most `max_nodes` colors, using [`DEFAULT_SEGMENT_LIMIT`].
pub fn enumerate_segment(k: u32, max_nodes: usize, max_level: usize) -> Result<QuotientSegment> {
    enumerate_segment_bounded(k, max_nodes, max_level, DEFAULT_SEGMENT_LIMIT)
}

/// As [`enumerate_segment`], refusing when more than `limit` forests would
/// be generated.
pub fn enumerate_segment_bounded(
    k: u32,
    max_nodes: usize,
    max_level: usize,
    limit: usize,
) -> Result<QuotientSegment> {
    if k == 0 {
        return Err(Error::ColorOutOfRange { color: 0, k });
    }
    let total = (0..=max_level)
        .flat_map(|l| (0..=max_nodes).map(move |s| count_forests(k, l, s)))
        .fold(0u128, u128::saturating_add);
    if total > limit as u128 {
        return Err(Error::SegmentTooLarge {
            count: usize::try_from(total).unwrap_or(usize::MAX),
            limit,
        });
    }

    // bucket by the minimal form at the top level, remembering the best
    // printed representative of each bucket
    let mut gen = Enumerator::new(k);
    let mut buckets: HashMap<IForest, (String, IForest)> = HashMap::new();
    let mut keys: Vec<IForest> = Vec::new();
    for level in 0..=max_level {
        for f in gen.forests_up_to(level, max_nodes) {
            let key = iminimize(&lift(&f, max_level).expect("lifting upward"));
            let rep = iminimize(&f);
            let text = serialize(&rep);
            match buckets.get_mut(&key) {
                Some(best) if text < best.0 => *best = (text, rep),
                Some(_) => {}
                None => {
                    keys.push(key.clone());
                    buckets.insert(key, (text, rep));
                }
            }
        }
    }

    // minimal forms should already be unique per class; merge any that are
    // equivalent anyway
    let mut groups: Vec<(String, IForest, IForest)> = Vec::new();
    for key in keys {
        let (text, rep) = buckets.remove(&key).expect("bucket exists");
        match groups.iter_mut().find(|g| colim_equiv(&g.2, &key, 0)) {
            Some(g) if text < g.0 => {
                g.0 = text;
                g.1 = rep;
            }
            Some(_) => {}
            None => groups.push((text, rep, key)),
        }
    }

    let c = groups.len();
    let leq: Vec<Vec<bool>> = (0..c)
        .map(|i| (0..c).map(|j| i == j || colim_leq(&groups[i].2, &groups[j].2, 0)).collect())
        .collect();
    let below: Vec<usize> = (0..c)
        .map(|j| (0..c).filter(|&i| i != j && leq[i][j]).count())
        .collect();
    let mut idx: Vec<usize> = (0..c).collect();
    idx.sort_by(|&a, &b| below[a].cmp(&below[b]).then_with(|| groups[a].0.cmp(&groups[b].0)));

    let mut covers = Vec::new();
    for (pa, &a) in idx.iter().enumerate() {
        for (pb, &b) in idx.iter().enumerate() {
            if a == b || !leq[a][b] {
                continue;
            }
            let between = (0..c).any(|m| m != a && m != b && leq[a][m] && leq[m][b]);
            if !between {
                covers.push((pa, pb));
            }
        }
    }
    covers.sort_unstable();

    Ok(QuotientSegment {
        k,
        max_nodes,
        max_level,
        classes: idx.iter().map(|&i| groups[i].1.clone()).collect(),
        covers,
    })
}

/// The Hasse diagram as a DOT digraph, lower classes at the bottom.
pub fn hasse_dot(seg: &QuotientSegment) -> String {
    let mut out = String::from("digraph segment {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, f) in seg.classes.iter().enumerate() {
        let label = serialize(f).replace('\\', "\\\\").replace('"', "\\\"");
        out.push_str(&format!("  n{i} [label=\"{label}\"];\n"));
    }
    for (a, b) in &seg.covers {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    out
}
