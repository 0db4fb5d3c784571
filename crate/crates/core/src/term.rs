//! Variable-free terms describing the algebra generated by the constant
//! k-partitions.
//!
//! [`GTerm`] is the signature `{i, ⊕, G}`; [`STerm`] replaces `G` by the
//! graded products `·^p`. The two are related by `u ·^p v = G(v, u, 0^(p))`,
//! where `0^(0) = 0` and `0^(p+1) = G(0, 1, 0^(p))`. Only [`g_to_s`] and
//! [`s_to_g`] perform the operand swap.
//!
//! Terms are compared through [`interpret`], the homomorphic evaluation into
//! the iterated-forest algebra, which is an isomorphism of the quotient
//! structures. [`encode`] goes the other way.

use std::fmt;

use crate::error::{Error, Result};
use crate::iterated::{self, Color, IForest, ITree};
use crate::forest::LTree;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GTerm {
    Const(Color),
    Join(Box<GTerm>, Box<GTerm>),
    G(Box<GTerm>, Box<GTerm>, Box<GTerm>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum STerm {
    Const(Color),
    Join(Box<STerm>, Box<STerm>),
    /// `Dot(p, u, v)` is `u ·^p v`.
    Dot(usize, Box<STerm>, Box<STerm>),
}

impl GTerm {
    pub fn join(a: GTerm, b: GTerm) -> Self {
        GTerm::Join(Box::new(a), Box::new(b))
    }

    pub fn g(a: GTerm, b: GTerm, c: GTerm) -> Self {
        GTerm::G(Box::new(a), Box::new(b), Box::new(c))
    }

    /// The jump term `0^(n)`.
    pub fn zero_jump(n: usize) -> Self {
        (0..n).fold(GTerm::Const(0), |acc, _| {
            GTerm::g(GTerm::Const(0), GTerm::Const(1), acc)
        })
    }
}

impl STerm {
    pub fn join(a: STerm, b: STerm) -> Self {
        STerm::Join(Box::new(a), Box::new(b))
    }

    pub fn dot(p: usize, a: STerm, b: STerm) -> Self {
        STerm::Dot(p, Box::new(a), Box::new(b))
    }

    /// Left-nested join of a nonempty sequence.
    pub fn join_all<I: IntoIterator<Item = STerm>>(terms: I) -> Option<Self> {
        terms.into_iter().reduce(STerm::join)
    }

    /// Largest product exponent, if any product occurs.
    pub fn max_exponent(&self) -> Option<usize> {
        match self {
            STerm::Const(_) => None,
            STerm::Join(a, b) => a.max_exponent().max(b.max_exponent()),
            STerm::Dot(p, a, b) => Some(*p).max(a.max_exponent()).max(b.max_exponent()),
        }
    }

    pub fn exponents(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_exponents(&mut out);
        out
    }

    fn collect_exponents(&self, out: &mut Vec<usize>) {
        match self {
            STerm::Const(_) => {}
            STerm::Join(a, b) => {
                a.collect_exponents(out);
                b.collect_exponents(out);
            }
            STerm::Dot(p, a, b) => {
                out.push(*p);
                a.collect_exponents(out);
                b.collect_exponents(out);
            }
        }
    }
}

impl fmt::Display for GTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GTerm::Const(i) => write!(f, "{i}"),
            GTerm::Join(a, b) => write!(f, "({a}+{b})"),
            GTerm::G(a, b, c) => write!(f, "G({a},{b},{c})"),
        }
    }
}

impl fmt::Display for STerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            STerm::Const(i) => write!(f, "{i}"),
            STerm::Join(a, b) => write!(f, "({a}+{b})"),
            STerm::Dot(p, a, b) => write!(f, "({a} .{p} {b})"),
        }
    }
}

/// Number of jumps realized by the denoted k-partition.
///
/// The test for a constant-valued `G(i, i, _)` is syntactic.
pub fn jump_height(u: &GTerm) -> usize {
    match u {
        GTerm::Const(_) => 0,
        GTerm::Join(a, b) => jump_height(a).max(jump_height(b)),
        GTerm::G(a, b, c) => match (a.as_ref(), b.as_ref()) {
            (GTerm::Const(i), GTerm::Const(j)) if i == j => 0,
            _ => jump_height(a)
                .max(jump_height(b))
                .max(jump_height(c) + 1),
        },
    }
}

pub fn g_to_s(u: &GTerm) -> STerm {
    match u {
        GTerm::Const(i) => STerm::Const(*i),
        GTerm::Join(a, b) => STerm::join(g_to_s(a), g_to_s(b)),
        GTerm::G(a, b, c) => STerm::dot(jump_height(c), g_to_s(b), g_to_s(a)),
    }
}

pub fn s_to_g(u: &STerm) -> GTerm {
    match u {
        STerm::Const(i) => GTerm::Const(*i),
        STerm::Join(a, b) => GTerm::join(s_to_g(a), s_to_g(b)),
        STerm::Dot(p, a, b) => GTerm::g(s_to_g(b), s_to_g(a), GTerm::zero_jump(*p)),
    }
}

/// Rewrites `u` into a term with all exponents below `n`.
///
/// A product with exponent `p >= n` is only admissible when, after
/// restriction, both operands are the same constant `i`; it then collapses
/// to `i`. Any other such product denotes a partition of jump height above
/// `n`.
pub fn restrict_level(u: &STerm, n: usize) -> Result<STerm> {
    match u {
        STerm::Const(_) => Ok(u.clone()),
        STerm::Join(a, b) => Ok(STerm::join(restrict_level(a, n)?, restrict_level(b, n)?)),
        STerm::Dot(p, a, b) => {
            let (a, b) = (restrict_level(a, n)?, restrict_level(b, n)?);
            if *p < n {
                return Ok(STerm::dot(*p, a, b));
            }
            match (&a, &b) {
                (STerm::Const(i), STerm::Const(j)) if i == j => Ok(a),
                _ => Err(Error::ExceedsJumpBound {
                    bound: n,
                    exponent: *p,
                }),
            }
        }
    }
}

/// Maps a term with exponents below `n + m` into the window `[n, n + m)`;
/// products below `n` become joins.
pub fn window_normalize(u: &STerm, n: usize, m: usize) -> Result<STerm> {
    match u {
        STerm::Const(_) => Ok(u.clone()),
        STerm::Join(a, b) => Ok(STerm::join(
            window_normalize(a, n, m)?,
            window_normalize(b, n, m)?,
        )),
        STerm::Dot(p, a, b) => {
            if *p >= n + m {
                return Err(Error::OutsideWindow {
                    low: n,
                    high: n + m,
                    exponent: *p,
                });
            }
            let (a, b) = (window_normalize(a, n, m)?, window_normalize(b, n, m)?);
            Ok(if *p < n {
                STerm::join(a, b)
            } else {
                STerm::dot(*p, a, b)
            })
        }
    }
}

/// The term `f^shift(F)`: a non-singleton tree `t·F` maps to
/// `f^{shift+1}(t) ·^shift ⊕ f^shift(subtrees)`, a singleton to the encoding
/// of its label one shift up, and a forest to the join of its trees.
pub fn encode(f: &IForest, shift: usize) -> Result<STerm> {
    STerm::join_all(f.trees().iter().map(|t| encode_tree(t, shift))).ok_or(Error::BottomHasNoTerm)
}

pub fn encode_tree(t: &ITree, shift: usize) -> STerm {
    match t {
        ITree::Color(i) => STerm::Const(*i),
        ITree::Node(shape) => encode_shape(shape, shift),
    }
}

fn encode_shape(t: &LTree<ITree>, shift: usize) -> STerm {
    let root = encode_tree(&t.label, shift + 1);
    match STerm::join_all(t.children.iter().map(|c| encode_shape(c, shift))) {
        None => root,
        Some(rest) => STerm::dot(shift, root, rest),
    }
}

/// Homomorphic evaluation in the iterated-forest algebra.
pub fn interpret(u: &STerm) -> IForest {
    match u {
        STerm::Const(i) => IForest::color(*i),
        STerm::Join(a, b) => iterated::join(&interpret(a), &interpret(b)),
        STerm::Dot(p, a, b) => iterated::dot_p(&interpret(a), &interpret(b), *p),
    }
}

/// Decides `u ≤^n v` in the quotient of the term algebra.
pub fn term_leq(u: &STerm, v: &STerm, n: usize) -> bool {
    iterated::colim_leq(&interpret(u), &interpret(v), n)
}

pub fn term_equiv(u: &STerm, v: &STerm, n: usize) -> bool {
    let (fu, fv) = (interpret(u), interpret(v));
    iterated::colim_leq(&fu, &fv, n) && iterated::colim_leq(&fv, &fu, n)
}

/// Raises every exponent by one.
pub fn term_s(u: &STerm) -> STerm {
    match u {
        STerm::Const(_) => u.clone(),
        STerm::Join(a, b) => STerm::join(term_s(a), term_s(b)),
        STerm::Dot(p, a, b) => STerm::dot(p + 1, term_s(a), term_s(b)),
    }
}

/// Lowers every exponent by one, turning `·^0` into `⊕`.
pub fn term_r(u: &STerm) -> STerm {
    match u {
        STerm::Const(_) => u.clone(),
        STerm::Join(a, b) => STerm::join(term_r(a), term_r(b)),
        STerm::Dot(0, a, b) => STerm::join(term_r(a), term_r(b)),
        STerm::Dot(p, a, b) => STerm::dot(p - 1, term_r(a), term_r(b)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iterated::{colim_equiv, colim_leq};

    fn c(i: Color) -> STerm {
        STerm::Const(i)
    }

    fn gc(i: Color) -> GTerm {
        GTerm::Const(i)
    }

    fn chain01() -> IForest {
        IForest::from(ITree::color_chain(&[0, 1]).unwrap())
    }

    #[test]
    fn jump_height_examples() {
        for i in 0..4 {
            assert_eq!(jump_height(&gc(i)), 0);
        }
        assert_eq!(jump_height(&GTerm::zero_jump(1)), 1);
        assert_eq!(GTerm::zero_jump(1), GTerm::g(gc(0), gc(1), gc(0)));
        let constant = GTerm::g(gc(0), gc(0), GTerm::zero_jump(1));
        assert_eq!(jump_height(&constant), 0);
        assert_eq!(
            jump_height(&GTerm::g(gc(0), gc(1), GTerm::zero_jump(1))),
            2
        );
    }

    #[test]
    fn g_to_s_examples() {
        assert_eq!(g_to_s(&GTerm::zero_jump(1)), STerm::dot(0, c(1), c(0)));
        assert_eq!(g_to_s(&gc(3)), c(3));
        assert_eq!(
            g_to_s(&GTerm::g(gc(0), gc(1), GTerm::zero_jump(1))),
            STerm::dot(1, c(1), c(0))
        );
    }

    #[test]
    fn s_to_g_examples() {
        assert_eq!(
            s_to_g(&STerm::dot(0, c(1), c(0))),
            GTerm::g(gc(0), gc(1), gc(0))
        );
        assert_eq!(s_to_g(&c(2)), gc(2));
        assert_eq!(
            s_to_g(&STerm::dot(1, c(1), c(0))),
            GTerm::g(gc(0), gc(1), GTerm::zero_jump(1))
        );
    }

    #[test]
    fn restrict_level_examples() {
        assert_eq!(restrict_level(&STerm::dot(2, c(0), c(0)), 1), Ok(c(0)));
        assert_eq!(restrict_level(&c(1), 0), Ok(c(1)));
        let d = STerm::dot(0, c(1), c(0));
        assert_eq!(restrict_level(&d, 1), Ok(d.clone()));
        assert_eq!(
            restrict_level(&d, 0),
            Err(Error::ExceedsJumpBound {
                bound: 0,
                exponent: 0
            })
        );
        // operands collapse first, then the outer product
        let nested = STerm::dot(3, STerm::dot(2, c(1), c(1)), c(1));
        assert_eq!(restrict_level(&nested, 0), Ok(c(1)));
    }

    #[test]
    fn window_normalize_examples() {
        assert_eq!(
            window_normalize(&STerm::dot(0, c(1), c(0)), 1, 2),
            Ok(STerm::join(c(1), c(0)))
        );
        let d1 = STerm::dot(1, c(1), c(0));
        assert_eq!(window_normalize(&d1, 1, 2), Ok(d1.clone()));
        let u = STerm::join(STerm::dot(0, c(0), c(1)), STerm::dot(1, c(0), c(1)));
        assert_eq!(
            window_normalize(&u, 1, 2),
            Ok(STerm::join(STerm::join(c(0), c(1)), STerm::dot(1, c(0), c(1))))
        );
        assert!(matches!(
            window_normalize(&STerm::dot(3, c(0), c(1)), 1, 2),
            Err(Error::OutsideWindow { exponent: 3, .. })
        ));
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode(&IForest::color(2), 5), Ok(c(2)));
        let single = IForest::from(ITree::singleton(ITree::Color(1)));
        assert_eq!(encode(&single, 0), Ok(c(1)));
        assert_eq!(encode(&chain01(), 0), Ok(STerm::dot(0, c(0), c(1))));
        assert_eq!(encode(&IForest::empty(1), 0), Err(Error::BottomHasNoTerm));
        assert_eq!(
            encode(&IForest::colors([0, 1]), 0),
            Ok(STerm::join(c(0), c(1)))
        );
    }

    #[test]
    fn encode_exponents_lie_in_window() {
        let deep = iterated::s_lift(&iterated::dot_p(&chain01(), &IForest::color(0), 0));
        let u = encode(&deep, 3).unwrap();
        assert!(u.exponents().iter().all(|&p| (3..3 + deep.level()).contains(&p)));
    }

    #[test]
    fn interpret_examples() {
        assert_eq!(interpret(&c(0)), IForest::color(0));
        assert_eq!(interpret(&STerm::dot(0, c(0), c(1))), chain01());
        let back = interpret(&encode(&chain01(), 0).unwrap());
        assert!(colim_equiv(&back, &chain01(), 0));
    }

    #[test]
    fn term_leq_examples() {
        let u = STerm::dot(0, c(0), c(1));
        assert!(term_leq(&u, &u, 0));
        assert!(!term_leq(&c(0), &c(1), 0));
        let pair = STerm::join(c(0), c(1));
        assert!(term_leq(&pair, &u, 0));
        assert!(!term_leq(&u, &pair, 0));
    }

    #[test]
    fn shift_examples() {
        let u = STerm::dot(0, c(1), c(0));
        assert_eq!(term_s(&u), STerm::dot(1, c(1), c(0)));
        assert_eq!(term_r(&u), STerm::join(c(1), c(0)));
        assert_eq!(term_r(&term_s(&u)), u);
        assert_eq!(term_s(&encode(&chain01(), 2).unwrap()), encode(&chain01(), 3).unwrap());
    }

    #[test]
    fn encoding_reflects_order_on_a_small_case() {
        let pair = IForest::colors([0, 1]);
        for shift in 0..3 {
            let (a, b) = (encode(&pair, shift).unwrap(), encode(&chain01(), shift).unwrap());
            assert!(term_leq(&a, &b, shift));
            assert!(!term_leq(&b, &a, shift));
        }
        assert!(colim_leq(&pair, &chain01(), 0));
    }

    #[test]
    fn display() {
        let u = STerm::dot(1, STerm::join(c(0), c(1)), c(0));
        assert_eq!(u.to_string(), "((0+1) .1 0)");
        assert_eq!(GTerm::zero_jump(2).to_string(), "G(0,1,G(0,1,0))");
    }
}
