//! Iterated k-labeled forests.
//!
//! A level-0 tree is a color `i < k`; a level-(m+1) tree is a finite tree
//! whose nodes are labeled by level-m trees. Forests of any level live in a
//! common colimit where a forest is identified with its lift `g(F)`, which
//! wraps every color `i` into the singleton tree labeled `i`.
//!
//! Besides the join `⊔` the colimit carries the shift maps `s` and `r`, the
//! graded products `·^p` and the derived preorders `≤^n`:
//! `F ≤^{n+1} G` iff `r(F) ≤^n r(G)`, `F ·^{p+1} G = s(r(F) ·^p r(G))`.

use std::borrow::Cow;

use crate::error::{Error, Result};
use crate::forest::{self, LForest, LTree, LabelPreorder};

pub type Color = u32;

/// Number of colors `k`, finite (at least 2) or `ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alphabet {
    Finite(u32),
    Omega,
}

impl Default for Alphabet {
    fn default() -> Self {
        Alphabet::Finite(2)
    }
}

impl Alphabet {
    pub fn finite(self) -> Option<u32> {
        match self {
            Alphabet::Finite(k) => Some(k),
            Alphabet::Omega => None,
        }
    }

    pub fn check(self, color: Color) -> Result<()> {
        match self {
            Alphabet::Finite(k) if color >= k => Err(Error::ColorOutOfRange { color, k }),
            _ => Ok(()),
        }
    }
}

impl std::fmt::Display for Alphabet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Alphabet::Finite(k) => write!(f, "{k}"),
            Alphabet::Omega => write!(f, "w"),
        }
    }
}

impl std::str::FromStr for Alphabet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "w" | "omega" => Ok(Alphabet::Omega),
            t => match t.parse::<u32>() {
                Ok(k) if k >= 2 => Ok(Alphabet::Finite(k)),
                _ => Err(Error::syntax(0, "alphabet size must be a natural >= 2 or `w`")),
            },
        }
    }
}

/// A tree of some level. `Node` labels are trees one level down.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ITree {
    Color(Color),
    Node(Box<LTree<ITree>>),
}

impl ITree {
    pub fn node(shape: LTree<ITree>) -> Self {
        ITree::Node(Box::new(shape))
    }

    pub fn singleton(label: ITree) -> Self {
        ITree::node(LTree::leaf(label))
    }

    /// A level-1 chain of colors, root first.
    pub fn color_chain(colors: &[Color]) -> Option<Self> {
        LTree::chain(colors.iter().map(|&c| ITree::Color(c))).map(ITree::node)
    }

    pub fn level(&self) -> usize {
        match self {
            ITree::Color(_) => 0,
            ITree::Node(t) => 1 + t.label.level(),
        }
    }

    /// Total number of colors after unfolding every label; invariant under
    /// lifting.
    pub fn size(&self) -> usize {
        match self {
            ITree::Color(_) => 1,
            ITree::Node(t) => t.labels().into_iter().map(ITree::size).sum(),
        }
    }

    pub fn shape(&self) -> Option<&LTree<ITree>> {
        match self {
            ITree::Color(_) => None,
            ITree::Node(t) => Some(t),
        }
    }

    /// Largest color mentioned anywhere in the tree.
    pub fn max_color(&self) -> Color {
        match self {
            ITree::Color(c) => *c,
            ITree::Node(t) => t.labels().into_iter().map(ITree::max_color).max().unwrap_or(0),
        }
    }

    /// Checks that all labels of every node share one level.
    pub fn is_well_formed(&self) -> bool {
        match self {
            ITree::Color(_) => true,
            ITree::Node(t) => {
                let level = t.label.level();
                t.labels()
                    .into_iter()
                    .all(|l| l.level() == level && l.is_well_formed())
            }
        }
    }

    /// One application of the colimit map `g`.
    pub fn lift_once(&self) -> ITree {
        match self {
            ITree::Color(_) => ITree::singleton(self.clone()),
            ITree::Node(t) => ITree::node(t.map_labels(&mut ITree::lift_once)),
        }
    }

    pub fn lifted(&self, target: usize) -> Cow<'_, ITree> {
        let mut cur = Cow::Borrowed(self);
        while cur.level() < target {
            cur = Cow::Owned(cur.lift_once());
        }
        cur
    }

    /// Children sorted recursively by structural order.
    pub fn canonical(&self) -> ITree {
        match self {
            ITree::Color(_) => self.clone(),
            ITree::Node(t) => {
                let mut t = t.map_labels(&mut ITree::canonical);
                t.canonicalize();
                ITree::node(t)
            }
        }
    }
}

/// `≤^0` on trees of the colimit.
pub fn tree_leq(a: &ITree, b: &ITree) -> bool {
    let m = a.level().max(b.level());
    let (a, b) = (a.lifted(m), b.lifted(m));
    match (a.as_ref(), b.as_ref()) {
        (ITree::Color(x), ITree::Color(y)) => x == y,
        (ITree::Node(s), ITree::Node(t)) => forest::tree_leq(s, t, &Homomorphic),
        _ => unreachable!("operands lifted to a common level"),
    }
}

/// The homomorphic preorder on labels, itself a lower-level `≤^0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Homomorphic;

impl LabelPreorder<ITree> for Homomorphic {
    fn leq(&self, a: &ITree, b: &ITree) -> bool {
        tree_leq(a, b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IForest {
    level: usize,
    trees: Vec<ITree>,
}

impl From<ITree> for IForest {
    fn from(tree: ITree) -> Self {
        IForest {
            level: tree.level(),
            trees: vec![tree],
        }
    }
}

impl IForest {
    /// Fails when some tree is malformed or sits at another level.
    pub fn new(level: usize, trees: Vec<ITree>) -> Result<Self> {
        for t in &trees {
            if t.level() != level || !t.is_well_formed() {
                return Err(Error::LevelMismatch {
                    expected: level,
                    found: t.level(),
                });
            }
        }
        Ok(IForest { level, trees })
    }

    pub fn empty(level: usize) -> Self {
        IForest {
            level,
            trees: Vec::new(),
        }
    }

    pub fn color(c: Color) -> Self {
        IForest::from(ITree::Color(c))
    }

    /// A level-0 forest, i.e. a finite set of colors.
    pub fn colors<I: IntoIterator<Item = Color>>(colors: I) -> Self {
        IForest {
            level: 0,
            trees: colors.into_iter().map(ITree::Color).collect(),
        }
    }

    /// Level-`m+1` forest with the given shape forest.
    pub fn from_shapes(shapes: LForest<ITree>, level: usize) -> Self {
        IForest {
            level,
            trees: shapes.trees.into_iter().map(ITree::node).collect(),
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn trees(&self) -> &[ITree] {
        &self.trees
    }

    pub fn into_trees(self) -> Vec<ITree> {
        self.trees
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn is_tree(&self) -> bool {
        self.trees.len() == 1
    }

    pub fn size(&self) -> usize {
        self.trees.iter().map(ITree::size).sum()
    }

    pub fn max_color(&self) -> Option<Color> {
        self.trees.iter().map(ITree::max_color).max()
    }

    /// The forest of shapes, for levels above 0.
    pub fn shapes(&self) -> Option<LForest<ITree>> {
        if self.level == 0 {
            return None;
        }
        Some(
            self.trees
                .iter()
                .map(|t| t.shape().expect("tree above level 0").clone())
                .collect(),
        )
    }

    pub fn canonical(&self) -> IForest {
        let mut trees: Vec<ITree> = self.trees.iter().map(ITree::canonical).collect();
        trees.sort();
        IForest {
            level: self.level,
            trees,
        }
    }

    fn lifted(&self, target: usize) -> Cow<'_, IForest> {
        if target <= self.level {
            return Cow::Borrowed(self);
        }
        Cow::Owned(IForest {
            level: target,
            trees: self
                .trees
                .iter()
                .map(|t| t.lifted(target).into_owned())
                .collect(),
        })
    }
}

/// Applies `g` until the forest reaches `target`.
pub fn lift(f: &IForest, target: usize) -> Result<IForest> {
    if target < f.level {
        return Err(Error::CannotLower {
            from: f.level,
            to: target,
        });
    }
    Ok(f.lifted(target).into_owned())
}

fn common<'a>(f: &'a IForest, g: &'a IForest, floor: usize) -> (Cow<'a, IForest>, Cow<'a, IForest>) {
    let m = f.level.max(g.level).max(floor);
    (f.lifted(m), g.lifted(m))
}

fn leq0_same_level(f: &IForest, g: &IForest) -> bool {
    f.trees
        .iter()
        .all(|a| g.trees.iter().any(|b| tree_leq(a, b)))
}

/// Decides `f ≤^n g` in the colimit.
pub fn colim_leq(f: &IForest, g: &IForest, n: usize) -> bool {
    let (f, g) = common(f, g, 0);
    if n == 0 {
        leq0_same_level(&f, &g)
    } else {
        colim_leq(&r_drop(&f), &r_drop(&g), n - 1)
    }
}

pub fn colim_equiv(f: &IForest, g: &IForest, n: usize) -> bool {
    colim_leq(f, g, n) && colim_leq(g, f, n)
}

/// Join in the colimit: concatenation at the common level.
pub fn join(f: &IForest, g: &IForest) -> IForest {
    let (f, g) = common(f, g, 0);
    IForest {
        level: f.level,
        trees: f.trees.iter().chain(&g.trees).cloned().collect(),
    }
}

pub fn join_all<'a, I: IntoIterator<Item = &'a IForest>>(forests: I) -> IForest {
    forests
        .into_iter()
        .fold(IForest::empty(0), |acc, f| join(&acc, f))
}

/// Wraps every tree as the label of a fresh singleton one level up.
pub fn s_lift(f: &IForest) -> IForest {
    IForest {
        level: f.level + 1,
        trees: f.trees.iter().cloned().map(ITree::singleton).collect(),
    }
}

/// Joins all node labels one level down; the identity on level 0.
pub fn r_drop(f: &IForest) -> IForest {
    if f.level == 0 {
        return f.clone();
    }
    IForest {
        level: f.level - 1,
        trees: f
            .trees
            .iter()
            .flat_map(|t| t.shape().expect("tree above level 0").labels())
            .cloned()
            .collect(),
    }
}

/// The graded product `f ·^p g`.
pub fn dot_p(f: &IForest, g: &IForest, p: usize) -> IForest {
    if p == 0 {
        // products need tree structure, so colors are lifted at least once
        let (f, g) = common(f, g, 1);
        let shapes = forest::seq_product(
            &f.shapes().expect("level above 0"),
            &g.shapes().expect("level above 0"),
        );
        IForest::from_shapes(shapes, f.level)
    } else {
        let (f, g) = common(f, g, 0);
        s_lift(&dot_p(&r_drop(&f), &r_drop(&g), p - 1))
    }
}

/// Minimal forest of the same `≤^0` class, in canonical order.
pub fn iminimize(f: &IForest) -> IForest {
    if f.level == 0 {
        let mut colors: Vec<Color> = f
            .trees
            .iter()
            .map(|t| match t {
                ITree::Color(c) => *c,
                ITree::Node(_) => unreachable!("level-0 forest"),
            })
            .collect();
        colors.sort_unstable();
        colors.dedup();
        return IForest::colors(colors);
    }
    let shapes = forest::minimize(&f.shapes().expect("level above 0"), &Homomorphic);
    let relabeled = shapes.map_labels(&mut iminimize_tree);
    IForest::from_shapes(relabeled, f.level).canonical()
}

fn iminimize_tree(t: &ITree) -> ITree {
    match t {
        ITree::Color(_) => t.clone(),
        ITree::Node(shape) => {
            let mut m = forest::minimize(&LForest::from(shape.as_ref().clone()), &Homomorphic);
            debug_assert_eq!(m.trees.len(), 1, "trees minimize to trees");
            let tree = m.trees.pop().expect("tree minimizes to a tree");
            ITree::node(tree.map_labels(&mut iminimize_tree)).canonical()
        }
    }
}

/// True when the forest is a single tree after minimization.
pub fn is_join_irreducible(f: &IForest) -> Result<bool> {
    if f.is_empty() {
        return Err(Error::BottomElement);
    }
    Ok(iminimize(f).trees.len() == 1)
}
