//! Syntax trees over binary generators and the free operad they span.
//!
//! Trees are stored as a flat preorder word: every slot is either a
//! generator index into the owning [`Signature`] or the leaf marker.
//! This keeps structural equality, hashing and the canonical order cheap,
//! and turns grafting into a splice.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

const LEAF: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub arity: usize,
}

impl Generator {
    pub fn binary(name: impl Into<String>) -> Self {
        Self { name: name.into(), arity: 2 }
    }
}

/// Ordered list of binary generators. The order fixes generator indices
/// and therefore the canonical order on trees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    generators: Vec<Generator>,
}

impl Signature {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut generators: Vec<Generator> = Vec::new();
        for name in names {
            let g = Generator::binary(name);
            if !valid_name(&g.name) {
                return Err(Error::Invalid(format!("bad generator name `{}`", g.name)));
            }
            if generators.iter().any(|h| h.name == g.name) {
                return Err(Error::DuplicateGenerator(g.name));
            }
            generators.push(g);
        }
        Ok(Self { generators })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn name(&self, index: usize) -> &str {
        &self.generators[index].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.generators.iter().map(|g| g.name.as_str())
    }

    /// Same generators with a trailing `'` toggled on every name.
    pub fn primed(&self) -> Self {
        Self {
            generators: self
                .generators
                .iter()
                .map(|g| match g.name.strip_suffix('\'') {
                    Some(base) => Generator::binary(base.to_string()),
                    None => Generator::binary(format!("{}'", g.name)),
                })
                .collect(),
        }
    }

    /// The arity-2 tree `g(.,.)` for every generator, in signature order.
    pub fn corollas(&self) -> Vec<SyntaxTree> {
        (0..self.len()).map(SyntaxTree::corolla).collect()
    }

    pub fn parse_tree(&self, input: &str) -> Result<SyntaxTree> {
        Parser { src: input.as_bytes(), pos: 0, sig: self }.parse_all()
    }

    pub fn display<'a>(&'a self, tree: &'a SyntaxTree) -> TreeDisplay<'a> {
        TreeDisplay { sig: self, tree }
    }

    pub fn format_tree(&self, tree: &SyntaxTree) -> String {
        self.display(tree).to_string()
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(is_name_byte)
}

fn is_name_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_' || b == b'\''
}

/// A planar rooted tree whose internal nodes are binary generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SyntaxTree {
    pre: Vec<u32>,
}

impl SyntaxTree {
    pub fn leaf() -> Self {
        Self { pre: vec![LEAF] }
    }

    pub fn node(generator: usize, left: SyntaxTree, right: SyntaxTree) -> Self {
        let mut pre = Vec::with_capacity(1 + left.pre.len() + right.pre.len());
        pre.push(generator as u32);
        pre.extend_from_slice(&left.pre);
        pre.extend_from_slice(&right.pre);
        Self { pre }
    }

    pub fn corolla(generator: usize) -> Self {
        Self { pre: vec![generator as u32, LEAF, LEAF] }
    }

    /// `outer ∘_1 inner` with both generators binary.
    pub fn comp1(outer: usize, inner: usize) -> Self {
        Self { pre: vec![outer as u32, inner as u32, LEAF, LEAF, LEAF] }
    }

    /// `outer ∘_2 inner` with both generators binary.
    pub fn comp2(outer: usize, inner: usize) -> Self {
        Self { pre: vec![outer as u32, LEAF, inner as u32, LEAF, LEAF] }
    }

    pub fn is_leaf(&self) -> bool {
        self.pre[0] == LEAF
    }

    pub fn arity(&self) -> usize {
        self.pre.len().div_ceil(2)
    }

    pub fn internal_nodes(&self) -> usize {
        self.pre.len() / 2
    }

    pub fn root(&self) -> Option<usize> {
        (!self.is_leaf()).then(|| self.pre[0] as usize)
    }

    /// Left and right subtrees of a non-leaf tree.
    pub fn children(&self) -> Option<(SyntaxTree, SyntaxTree)> {
        if self.is_leaf() {
            return None;
        }
        let mid = subtree_end(&self.pre, 1);
        Some((
            Self { pre: self.pre[1..mid].to_vec() },
            Self { pre: self.pre[mid..].to_vec() },
        ))
    }

    /// Generator indices in preorder.
    pub fn labels(&self) -> impl Iterator<Item = usize> + '_ {
        self.pre.iter().filter(|&&s| s != LEAF).map(|&s| s as usize)
    }

    pub fn max_label(&self) -> Option<usize> {
        self.labels().max()
    }

    /// Grafts `s` on the `i`-th leaf (1-indexed, left to right).
    pub fn graft(&self, i: usize, s: &SyntaxTree) -> Result<SyntaxTree> {
        let arity = self.arity();
        if i == 0 || i > arity {
            return Err(Error::CompositionIndex { index: i, arity });
        }
        let at = self
            .pre
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == LEAF)
            .nth(i - 1)
            .map(|(k, _)| k)
            .expect("leaf count matches arity");
        let mut pre = Vec::with_capacity(self.pre.len() + s.pre.len() - 1);
        pre.extend_from_slice(&self.pre[..at]);
        pre.extend_from_slice(&s.pre);
        pre.extend_from_slice(&self.pre[at + 1..]);
        Ok(Self { pre })
    }

    /// Replaces generator indices through `f`.
    pub fn relabel(&self, mut f: impl FnMut(usize) -> usize) -> SyntaxTree {
        Self {
            pre: self
                .pre
                .iter()
                .map(|&s| if s == LEAF { LEAF } else { f(s as usize) as u32 })
                .collect(),
        }
    }

    /// All (preorder position, subtree) pairs for internal nodes.
    pub(crate) fn internal_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.pre.iter().enumerate().filter(|(_, &v)| v != LEAF).map(|(k, _)| k)
    }

    pub(crate) fn slot(&self, k: usize) -> Option<usize> {
        let v = self.pre[k];
        (v != LEAF).then_some(v as usize)
    }

    pub(crate) fn subtree_at(&self, k: usize) -> SyntaxTree {
        Self { pre: self.pre[k..subtree_end(&self.pre, k)].to_vec() }
    }

    pub(crate) fn replace_at(&self, k: usize, with: &SyntaxTree) -> SyntaxTree {
        let end = subtree_end(&self.pre, k);
        let mut pre = Vec::with_capacity(self.pre.len() - (end - k) + with.pre.len());
        pre.extend_from_slice(&self.pre[..k]);
        pre.extend_from_slice(&with.pre);
        pre.extend_from_slice(&self.pre[end..]);
        Self { pre }
    }

    /// Shape with every generator replaced by index 0.
    pub fn shape(&self) -> SyntaxTree {
        self.relabel(|_| 0)
    }
}

fn subtree_end(pre: &[u32], start: usize) -> usize {
    let mut need = 1usize;
    let mut k = start;
    while need > 0 {
        need = if pre[k] == LEAF { need - 1 } else { need + 1 };
        k += 1;
    }
    k
}

impl Ord for SyntaxTree {
    /// Arity first, then the preorder shape word (internal above leaf),
    /// then generator indices in preorder.
    fn cmp(&self, other: &Self) -> Ordering {
        self.pre
            .len()
            .cmp(&other.pre.len())
            .then_with(|| {
                let a = self.pre.iter().map(|&s| s != LEAF);
                let b = other.pre.iter().map(|&s| s != LEAF);
                a.cmp(b)
            })
            .then_with(|| self.labels().cmp(other.labels()))
    }
}

impl PartialOrd for SyntaxTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SyntaxTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(pre: &[u32], k: usize, f: &mut fmt::Formatter<'_>) -> Result2<usize> {
            if pre[k] == LEAF {
                f.write_str(".")?;
                return Ok(k + 1);
            }
            write!(f, "g{}(", pre[k])?;
            let k = go(pre, k + 1, f)?;
            f.write_str(",")?;
            let k = go(pre, k, f)?;
            f.write_str(")")?;
            Ok(k)
        }
        type Result2<T> = std::result::Result<T, fmt::Error>;
        go(&self.pre, 0, f).map(|_| ())
    }
}

pub struct TreeDisplay<'a> {
    sig: &'a Signature,
    tree: &'a SyntaxTree,
}

impl fmt::Display for TreeDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pre = &self.tree.pre;
        let mut k = 0;
        // explicit stack: number of children still to print per open node
        let mut open: Vec<u8> = Vec::new();
        loop {
            if pre[k] == LEAF {
                f.write_str(".")?;
            } else {
                write!(f, "{}(", self.sig.name(pre[k] as usize))?;
                open.push(2);
                k += 1;
                continue;
            }
            k += 1;
            loop {
                match open.last_mut() {
                    None => return Ok(()),
                    Some(n) if *n == 2 => {
                        *n = 1;
                        f.write_str(",")?;
                        break;
                    }
                    Some(_) => {
                        open.pop();
                        f.write_str(")")?;
                    }
                }
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    sig: &'a Signature,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn parse_all(mut self) -> Result<SyntaxTree> {
        let mut pre = Vec::new();
        self.tree(&mut pre)?;
        self.skip_ws();
        if self.pos != self.src.len() {
            return self.err("trailing input");
        }
        Ok(SyntaxTree { pre })
    }

    fn tree(&mut self, pre: &mut Vec<u32>) -> Result<()> {
        self.skip_ws();
        match self.src.get(self.pos) {
            None => self.err("unexpected end of input"),
            Some(b'.') => {
                self.pos += 1;
                pre.push(LEAF);
                Ok(())
            }
            Some(&b) if is_name_byte(b) => {
                let start = self.pos;
                while self.pos < self.src.len() && is_name_byte(self.src[self.pos]) {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let Some(g) = self.sig.index_of(name) else {
                    self.pos = start;
                    return self.err(format!("unknown generator `{name}`"));
                };
                pre.push(g as u32);
                self.expect(b'(')?;
                self.tree(pre)?;
                self.expect(b',')?;
                self.tree(pre)?;
                self.expect(b')')
            }
            Some(&b) => self.err(format!("unexpected character `{}`", b as char)),
        }
    }
}

/// All binary tree shapes with `n` leaves, as trees over generator 0,
/// in canonical order.
pub fn shapes(n: usize) -> Vec<SyntaxTree> {
    fn build(n: usize, memo: &mut Vec<Option<Vec<SyntaxTree>>>) -> Vec<SyntaxTree> {
        if let Some(v) = &memo[n] {
            return v.clone();
        }
        let out = if n == 1 {
            vec![SyntaxTree::leaf()]
        } else {
            let mut out = Vec::new();
            for left in 1..n {
                let ls = build(left, memo);
                let rs = build(n - left, memo);
                for l in &ls {
                    for r in &rs {
                        out.push(SyntaxTree::node(0, l.clone(), r.clone()));
                    }
                }
            }
            out
        };
        memo[n] = Some(out.clone());
        out
    }
    if n == 0 {
        return Vec::new();
    }
    let mut memo = vec![None; n + 1];
    let mut v = build(n, &mut memo);
    v.sort();
    v
}

/// Every syntax tree of arity `n` over `sig`, in canonical order.
pub fn enumerate_trees(sig: &Signature, n: usize) -> Result<Vec<SyntaxTree>> {
    if n == 0 {
        return Err(Error::ArityTooSmall { min: 1, got: 0 });
    }
    let internal = n - 1;
    let shapes = shapes(n);
    let k = sig.len();
    if internal > 0 && k == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::with_capacity(shapes.len() * k.pow(internal as u32));
    let mut digits = vec![0usize; internal];
    for shape in &shapes {
        digits.iter_mut().for_each(|d| *d = 0);
        loop {
            let mut it = digits.iter();
            out.push(shape.relabel(|_| *it.next().expect("one digit per node")));
            // odometer, last digit fastest so labels come out lexicographically
            let mut pos = internal;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < k {
                    break;
                }
                digits[pos] = 0;
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if internal == 0 || pos == usize::MAX {
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig2() -> Signature {
        Signature::new(["a", "b"]).unwrap()
    }

    #[test]
    fn arity_counts_leaves() {
        let s = sig2();
        assert_eq!(SyntaxTree::leaf().arity(), 1);
        assert_eq!(SyntaxTree::corolla(0).arity(), 2);
        assert_eq!(s.parse_tree("a(a(.,.),.)").unwrap().arity(), 3);
    }

    #[test]
    fn graft_matches_definition() {
        let s = Signature::new(["star_1", "star_2"]).unwrap();
        let t = SyntaxTree::corolla(1);
        let g = t.graft(1, &SyntaxTree::corolla(0)).unwrap();
        assert_eq!(s.format_tree(&g), "star_2(star_1(.,.),.)");
        assert_eq!(g, SyntaxTree::comp1(1, 0));
        assert_eq!(t.graft(2, &SyntaxTree::corolla(0)).unwrap(), SyntaxTree::comp2(1, 0));
    }

    #[test]
    fn graft_out_of_range() {
        let t = SyntaxTree::corolla(0);
        assert_eq!(t.graft(0, &t), Err(Error::CompositionIndex { index: 0, arity: 2 }));
        assert_eq!(t.graft(3, &t), Err(Error::CompositionIndex { index: 3, arity: 2 }));
    }

    #[test]
    fn leaf_is_unit() {
        for t in enumerate_trees(&sig2(), 4).unwrap() {
            for i in 1..=t.arity() {
                assert_eq!(t.graft(i, &SyntaxTree::leaf()).unwrap(), t);
            }
            assert_eq!(SyntaxTree::leaf().graft(1, &t).unwrap(), t);
        }
    }

    #[test]
    fn enumeration_counts() {
        let s2 = sig2();
        let s4 = Signature::new(["a", "b", "c", "d"]).unwrap();
        assert_eq!(enumerate_trees(&s2, 1).unwrap().len(), 1);
        assert_eq!(enumerate_trees(&s2, 2).unwrap().len(), 2);
        assert_eq!(enumerate_trees(&s2, 3).unwrap().len(), 8);
        assert_eq!(enumerate_trees(&s4, 3).unwrap().len(), 32);
        assert_eq!(enumerate_trees(&s2, 4).unwrap().len(), 40);
        assert!(enumerate_trees(&s2, 0).is_err());
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let v = enumerate_trees(&sig2(), 5).unwrap();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(v, enumerate_trees(&sig2(), 5).unwrap());
    }

    #[test]
    fn canonical_order_prefers_leaf_first() {
        let s = sig2();
        let left_comb = s.parse_tree("a(a(.,.),.)").unwrap();
        let right_comb = s.parse_tree("a(.,a(.,.))").unwrap();
        // shape word 11000 > 10100
        assert!(right_comb < left_comb);
        let b = s.parse_tree("b(.,a(.,.))").unwrap();
        assert!(right_comb < b && b < left_comb);
    }

    #[test]
    fn parse_print_roundtrip() {
        let s = Signature::new(["prec_1", "succ_1", "la_2"]).unwrap();
        for t in enumerate_trees(&s, 4).unwrap() {
            let text = s.format_tree(&t);
            assert_eq!(s.parse_tree(&text).unwrap(), t);
        }
        assert_eq!(s.parse_tree(" prec_1( . , succ_1(.,.) ) ").unwrap().arity(), 3);
    }

    #[test]
    fn parse_errors_report_position() {
        let s = sig2();
        match s.parse_tree("a(.,c(.,.))") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(s.parse_tree("a(.,.)x"), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(s.parse_tree("a(."), Err(Error::Parse { .. })));
    }

    #[test]
    fn children_and_subtrees() {
        let s = sig2();
        let t = s.parse_tree("b(a(.,.),b(.,a(.,.)))").unwrap();
        let (l, r) = t.children().unwrap();
        assert_eq!(s.format_tree(&l), "a(.,.)");
        assert_eq!(s.format_tree(&r), "b(.,a(.,.))");
        assert_eq!(t.internal_nodes(), 4);
        assert_eq!(t.max_label(), Some(1));
    }

    #[test]
    fn signature_rejects_duplicates() {
        assert!(matches!(Signature::new(["a", "a"]), Err(Error::DuplicateGenerator(_))));
    }
}
