//! Combinatorial models: γ-corollas, γ-alternating Schröder trees and
//! γ-edge-valued binary trees with the free dendriform-type products.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact_linear::{Basis, Graded, LinComb};
use crate::free_operad::{Signature, SyntaxTree};
use crate::presentations::Presentation;

/// Edge label: an element of [γ] or the sentinel ∞ carried by leaf edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Fin(u32),
    Inf,
}

impl Label {
    /// `↓`, the minimum with `a ↓ ∞ = a`.
    pub fn meet(self, other: Label) -> Label {
        self.min(other)
    }

    pub fn fin(self) -> Option<u32> {
        match self {
            Label::Fin(a) => Some(a),
            Label::Inf => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Fin(a) => write!(f, "{a}"),
            Label::Inf => f.write_str("inf"),
        }
    }
}

// ---------------------------------------------------------------- corollas

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corolla {
    arity: usize,
    label: Option<u32>,
}

impl Corolla {
    pub fn unit() -> Self {
        Self { arity: 1, label: None }
    }

    pub fn new(arity: usize, label: u32) -> Result<Self> {
        if arity < 2 {
            return Err(Error::ArityTooSmall { min: 2, got: arity });
        }
        if label == 0 {
            return Err(Error::Label { label, gamma: 0 });
        }
        Ok(Self { arity, label: Some(label) })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn label(&self) -> Option<u32> {
        self.label
    }
}

/// Grafting of corollas: arities add, labels join by `↑`.
pub fn corolla_compose(c1: &Corolla, i: usize, c2: &Corolla) -> Result<Corolla> {
    if i == 0 || i > c1.arity {
        return Err(Error::CompositionIndex { index: i, arity: c1.arity });
    }
    let label = match (c1.label, c2.label) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, b) => a.or(b),
    };
    Ok(Corolla { arity: c1.arity + c2.arity - 1, label })
}

// ------------------------------------------------------- Schröder trees

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AltSchroderTree {
    Leaf,
    Node { label: u32, children: Vec<AltSchroderTree> },
}

impl AltSchroderTree {
    pub fn node(label: u32, children: Vec<AltSchroderTree>) -> Result<Self> {
        if children.len() < 2 {
            return Err(Error::ArityTooSmall { min: 2, got: children.len() });
        }
        let t = AltSchroderTree::Node { label, children };
        if !t.is_alternating() {
            return Err(Error::Invalid("adjacent internal nodes share a label".into()));
        }
        Ok(t)
    }

    /// The one-node tree of arity `n` labeled `a`.
    pub fn corolla(n: usize, label: u32) -> Result<Self> {
        Self::node(label, vec![AltSchroderTree::Leaf; n])
    }

    pub fn arity(&self) -> usize {
        match self {
            AltSchroderTree::Leaf => 1,
            AltSchroderTree::Node { children, .. } => children.iter().map(Self::arity).sum(),
        }
    }

    pub fn label(&self) -> Option<u32> {
        match self {
            AltSchroderTree::Leaf => None,
            AltSchroderTree::Node { label, .. } => Some(*label),
        }
    }

    pub fn is_alternating(&self) -> bool {
        match self {
            AltSchroderTree::Leaf => true,
            AltSchroderTree::Node { label, children } => {
                children.len() >= 2
                    && children.iter().all(|c| c.label() != Some(*label) && c.is_alternating())
            }
        }
    }

    pub fn parse(input: &str) -> Result<Self> {
        let mut p = SchroderParser { src: input.as_bytes(), pos: 0 };
        let t = p.tree()?;
        p.ws();
        if p.pos != p.src.len() {
            return Err(Error::Parse { pos: p.pos, msg: "trailing input".into() });
        }
        if !t.is_alternating() {
            return Err(Error::Invalid("adjacent internal nodes share a label".into()));
        }
        Ok(t)
    }

    /// All γ-alternating Schröder trees of arity `n`.
    pub fn enumerate(n: usize, gamma: u32) -> Vec<Self> {
        if n == 0 {
            return Vec::new();
        }
        // by_root[m][a]: trees of arity m with root label a (0 for the leaf)
        let g = gamma as usize;
        let mut by_root: Vec<Vec<Vec<AltSchroderTree>>> = vec![vec![Vec::new(); g + 1]; n + 1];
        by_root[1][0].push(AltSchroderTree::Leaf);
        for m in 2..=n {
            for a in 1..=g {
                // seqs[k][j]: sequences with arity sum k and j children (j capped at 2)
                let mut seqs: Vec<[Vec<Vec<AltSchroderTree>>; 3]> = vec![Default::default(); m + 1];
                seqs[0][0].push(Vec::new());
                for k in 1..=m {
                    for first in 1..=k.min(m - 1) {
                        let heads: Vec<&AltSchroderTree> =
                            (0..=g).filter(|&b| b != a).flat_map(|b| by_root[first][b].iter()).collect();
                        for j in 0..3 {
                            let next = (j + 1).min(2);
                            let tails = seqs[k - first][j].clone();
                            for h in &heads {
                                for t in &tails {
                                    let mut v = Vec::with_capacity(t.len() + 1);
                                    v.push((*h).clone());
                                    v.extend(t.iter().cloned());
                                    seqs[k][next].push(v);
                                }
                            }
                        }
                    }
                }
                let kids = std::mem::take(&mut seqs[m][2]);
                by_root[m][a] = kids
                    .into_iter()
                    .map(|children| AltSchroderTree::Node { label: a as u32, children })
                    .collect();
            }
        }
        let mut v: Vec<_> = by_root.swap_remove(n).into_iter().flatten().collect();
        v.sort();
        v
    }
}

impl fmt::Display for AltSchroderTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AltSchroderTree::Leaf => f.write_str("."),
            AltSchroderTree::Node { label, children } => {
                write!(f, "{label}(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

struct SchroderParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl SchroderParser<'_> {
    fn ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn tree(&mut self) -> Result<AltSchroderTree> {
        self.ws();
        match self.src.get(self.pos) {
            Some(b'.') => {
                self.pos += 1;
                Ok(AltSchroderTree::Leaf)
            }
            Some(b) if b.is_ascii_digit() => {
                let label = parse_u32(self.src, &mut self.pos)?;
                self.ws();
                if self.src.get(self.pos) != Some(&b'(') {
                    return self.err("expected `(`");
                }
                self.pos += 1;
                let mut children = vec![self.tree()?];
                loop {
                    self.ws();
                    match self.src.get(self.pos) {
                        Some(b',') => {
                            self.pos += 1;
                            children.push(self.tree()?);
                        }
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return self.err("expected `,` or `)`"),
                    }
                }
                if children.len() < 2 {
                    return self.err("internal nodes need at least two children");
                }
                Ok(AltSchroderTree::Node { label, children })
            }
            None => self.err("unexpected end of input"),
            Some(_) => self.err("expected `.` or a label"),
        }
    }
}

fn parse_u32(src: &[u8], pos: &mut usize) -> Result<u32> {
    let start = *pos;
    while src.get(*pos).is_some_and(u8::is_ascii_digit) {
        *pos += 1;
    }
    std::str::from_utf8(&src[start..*pos])
        .expect("ascii digits")
        .parse()
        .map_err(|_| Error::Parse { pos: start, msg: "bad integer".into() })
}

/// Grafts `s2` on leaf `i` of `s1`, contracting the new edge when both ends
/// carry the same label.
pub fn schroder_compose(s1: &AltSchroderTree, i: usize, s2: &AltSchroderTree) -> Result<AltSchroderTree> {
    let arity = s1.arity();
    if i == 0 || i > arity {
        return Err(Error::CompositionIndex { index: i, arity });
    }
    fn go(t: &AltSchroderTree, i: usize, s2: &AltSchroderTree) -> AltSchroderTree {
        match t {
            AltSchroderTree::Leaf => s2.clone(),
            AltSchroderTree::Node { label, children } => {
                let mut out = Vec::with_capacity(children.len() + 2);
                let mut offset = 0;
                for c in children {
                    let a = c.arity();
                    if offset < i && i <= offset + a {
                        match (c, s2) {
                            (AltSchroderTree::Leaf, AltSchroderTree::Node { label: l2, children: k2 }) if l2 == label => {
                                out.extend(k2.iter().cloned());
                            }
                            _ => out.push(go(c, i - offset, s2)),
                        }
                    } else {
                        out.push(c.clone());
                    }
                    offset += a;
                }
                AltSchroderTree::Node { label: *label, children: out }
            }
        }
    }
    let out = go(s1, i, s2);
    debug_assert!(out.is_alternating(), "contraction broke the alternating invariant");
    Ok(out)
}

// ------------------------------------------------- edge-valued binary trees

/// Binary tree whose internal nodes record the labels of their two child
/// edges; an edge towards a leaf carries `Inf`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Ebt {
    Leaf,
    Node(Box<EbtNode>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EbtNode {
    pub left: Ebt,
    pub right: Ebt,
    pub left_label: Label,
    pub right_label: Label,
}

impl Ebt {
    pub fn leaf() -> Self {
        Ebt::Leaf
    }

    /// The single internal node.
    pub fn single() -> Self {
        Self::node(Ebt::Leaf, Ebt::Leaf, Label::Inf, Label::Inf)
    }

    pub fn node(left: Ebt, right: Ebt, left_label: Label, right_label: Label) -> Self {
        Ebt::Node(Box::new(EbtNode { left, right, left_label, right_label }))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Ebt::Leaf)
    }

    pub fn as_node(&self) -> Option<&EbtNode> {
        match self {
            Ebt::Leaf => None,
            Ebt::Node(n) => Some(n),
        }
    }

    pub fn internal_nodes(&self) -> usize {
        match self {
            Ebt::Leaf => 0,
            Ebt::Node(n) => 1 + n.left.internal_nodes() + n.right.internal_nodes(),
        }
    }

    /// Checks that internal edges carry labels in [γ] and leaf edges `Inf`.
    pub fn validate(&self, gamma: u32) -> Result<()> {
        let Ebt::Node(n) = self else { return Ok(()) };
        for (child, lab) in [(&n.left, n.left_label), (&n.right, n.right_label)] {
            match (child.is_leaf(), lab) {
                (true, Label::Inf) => {}
                (true, Label::Fin(a)) => {
                    return Err(Error::Invalid(format!("leaf edge labeled {a}, expected inf")))
                }
                (false, Label::Inf) => return Err(Error::Invalid("internal edge labeled inf".into())),
                (false, Label::Fin(a)) if a == 0 || a > gamma => return Err(Error::Label { label: a, gamma }),
                _ => {}
            }
            child.validate(gamma)?;
        }
        Ok(())
    }

    /// Replaces every internal-edge label by `label`.
    pub fn with_uniform_labels(&self, label: u32) -> Ebt {
        match self {
            Ebt::Leaf => Ebt::Leaf,
            Ebt::Node(n) => {
                let l = n.left.with_uniform_labels(label);
                let r = n.right.with_uniform_labels(label);
                let ll = if l.is_leaf() { Label::Inf } else { Label::Fin(label) };
                let rl = if r.is_leaf() { Label::Inf } else { Label::Fin(label) };
                Ebt::node(l, r, ll, rl)
            }
        }
    }

    /// Every γ-edge-valued binary tree with `n` internal nodes.
    pub fn enumerate(n: usize, gamma: u32) -> Vec<Ebt> {
        let mut memo: Vec<Vec<Ebt>> = vec![vec![Ebt::Leaf]];
        for m in 1..=n {
            let mut level = Vec::new();
            for k in 0..m {
                for l in &memo[k] {
                    for r in &memo[m - 1 - k] {
                        let lls: Vec<Label> = if l.is_leaf() { vec![Label::Inf] } else { (1..=gamma).map(Label::Fin).collect() };
                        let rls: Vec<Label> = if r.is_leaf() { vec![Label::Inf] } else { (1..=gamma).map(Label::Fin).collect() };
                        for &x in &lls {
                            for &y in &rls {
                                level.push(Ebt::node(l.clone(), r.clone(), x, y));
                            }
                        }
                    }
                }
            }
            memo.push(level);
        }
        let mut v = memo.swap_remove(n);
        v.sort();
        v
    }

    pub fn parse(input: &str) -> Result<Ebt> {
        let mut p = EbtParser { src: input.as_bytes(), pos: 0 };
        let t = p.tree()?;
        p.ws();
        if p.pos != p.src.len() {
            return Err(Error::Parse { pos: p.pos, msg: "trailing input".into() });
        }
        Ok(t)
    }

    /// Relabels the edges of the rightmost path by `y ↦ a ↓ y`.
    fn meet_right_path(&self, a: Label) -> Ebt {
        match self {
            Ebt::Leaf => Ebt::Leaf,
            Ebt::Node(n) => Ebt::node(
                n.left.clone(),
                n.right.meet_right_path(a),
                n.left_label,
                if n.right.is_leaf() { Label::Inf } else { n.right_label.meet(a) },
            ),
        }
    }

    fn meet_left_path(&self, a: Label) -> Ebt {
        match self {
            Ebt::Leaf => Ebt::Leaf,
            Ebt::Node(n) => Ebt::node(
                n.left.meet_left_path(a),
                n.right.clone(),
                if n.left.is_leaf() { Label::Inf } else { n.left_label.meet(a) },
                n.right_label,
            ),
        }
    }

    fn graft_rightmost(&self, v: &Ebt, a: Label) -> Ebt {
        match self {
            Ebt::Leaf => v.clone(),
            Ebt::Node(n) => {
                let right = n.right.graft_rightmost(v, a);
                let rl = if n.right.is_leaf() { if v.is_leaf() { Label::Inf } else { a } } else { n.right_label };
                Ebt::node(n.left.clone(), right, n.left_label, rl)
            }
        }
    }

    fn graft_leftmost(&self, u: &Ebt, a: Label) -> Ebt {
        match self {
            Ebt::Leaf => u.clone(),
            Ebt::Node(n) => {
                let left = n.left.graft_leftmost(u, a);
                let ll = if n.left.is_leaf() { if u.is_leaf() { Label::Inf } else { a } } else { n.left_label };
                Ebt::node(left, n.right.clone(), ll, n.right_label)
            }
        }
    }
}

impl Ord for Ebt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.internal_nodes().cmp(&other.internal_nodes()).then_with(|| match (self, other) {
            (Ebt::Leaf, Ebt::Leaf) => Ordering::Equal,
            (Ebt::Leaf, _) => Ordering::Less,
            (_, Ebt::Leaf) => Ordering::Greater,
            (Ebt::Node(a), Ebt::Node(b)) => a.cmp(b),
        })
    }
}

impl PartialOrd for Ebt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Graded for Ebt {
    fn degree(&self) -> usize {
        self.internal_nodes()
    }
}

impl fmt::Display for Ebt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ebt::Leaf => f.write_str("."),
            Ebt::Node(n) => {
                write!(f, "({},{})", n.left, n.right)?;
                if n.left_label != Label::Inf || n.right_label != Label::Inf {
                    write!(f, "[{},{}]", n.left_label, n.right_label)?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Ebt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct EbtParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl EbtParser<'_> {
    fn ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&format!("expected `{}`", c as char))
        }
    }

    fn label(&mut self) -> Result<Label> {
        self.ws();
        if self.src[self.pos..].starts_with(b"inf") {
            self.pos += 3;
            return Ok(Label::Inf);
        }
        if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            return self.err("expected a label");
        }
        Ok(Label::Fin(parse_u32(self.src, &mut self.pos)?))
    }

    fn tree(&mut self) -> Result<Ebt> {
        self.ws();
        match self.src.get(self.pos) {
            Some(b'.') => {
                self.pos += 1;
                Ok(Ebt::Leaf)
            }
            Some(b'(') => {
                self.pos += 1;
                let left = self.tree()?;
                self.expect(b',')?;
                let right = self.tree()?;
                self.expect(b')')?;
                self.ws();
                let (mut x, mut y) = (Label::Inf, Label::Inf);
                if self.src.get(self.pos) == Some(&b'[') {
                    self.pos += 1;
                    x = self.label()?;
                    self.expect(b',')?;
                    y = self.label()?;
                    self.expect(b']')?;
                }
                for (child, lab) in [(&left, x), (&right, y)] {
                    if child.is_leaf() && lab != Label::Inf {
                        return self.err("leaf edges carry inf");
                    }
                }
                Ok(Ebt::node(left, right, x, y))
            }
            None => self.err("unexpected end of input"),
            Some(_) => self.err("expected `.` or `(`"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DendrOp {
    Prec,
    Succ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DupOp {
    Under,
    Over,
}

/// `s ≺_a t` or `s ≻_a t` in the free γ-polydendriform algebra.
pub fn dendr_free_product(op: DendrOp, a: Label, s: &Ebt, t: &Ebt) -> Result<LinComb<Ebt>> {
    if s.is_leaf() && t.is_leaf() {
        return Err(Error::LeafProduct);
    }
    Ok(dendr_rec(op, a, s, t))
}

fn dendr_rec(op: DendrOp, a: Label, s: &Ebt, t: &Ebt) -> LinComb<Ebt> {
    match op {
        DendrOp::Prec => {
            if t.is_leaf() {
                return LinComb::monomial(s.clone());
            }
            let Ebt::Node(n) = s else { return LinComb::zero() };
            let z = a.meet(n.right_label);
            let mut out = LinComb::zero();
            for (op2, b) in [(DendrOp::Prec, a), (DendrOp::Succ, n.right_label)] {
                for (r, c) in dendr_rec(op2, b, &n.right, t).iter() {
                    out.add_term(Ebt::node(n.left.clone(), r.clone(), n.left_label, z), c.clone());
                }
            }
            out
        }
        DendrOp::Succ => {
            if s.is_leaf() {
                return LinComb::monomial(t.clone());
            }
            let Ebt::Node(n) = t else { return LinComb::zero() };
            let z = a.meet(n.left_label);
            let mut out = LinComb::zero();
            for (op2, b) in [(DendrOp::Succ, a), (DendrOp::Prec, n.left_label)] {
                for (l, c) in dendr_rec(op2, b, s, &n.left).iter() {
                    out.add_term(Ebt::node(l.clone(), n.right.clone(), z, n.right_label), c.clone());
                }
            }
            out
        }
    }
}

/// `s ↩_a t` or `s ↪_a t` in the free γ-multiplicial algebra; `None` is 0.
pub fn dup_free_product(op: DupOp, a: Label, s: &Ebt, t: &Ebt) -> Result<Option<Ebt>> {
    if s.is_leaf() && t.is_leaf() {
        return Err(Error::LeafProduct);
    }
    Ok(match op {
        DupOp::Under => {
            if t.is_leaf() {
                Some(s.clone())
            } else if s.is_leaf() {
                None
            } else {
                Some(s.meet_right_path(a).graft_rightmost(t, a))
            }
        }
        DupOp::Over => {
            if s.is_leaf() {
                Some(t.clone())
            } else if t.is_leaf() {
                None
            } else {
                Some(t.meet_left_path(a).graft_leftmost(s, a))
            }
        }
    })
}

/// Product on combinations, for either family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FreeOp {
    Dendr(DendrOp),
    Dup(DupOp),
}

pub fn free_product(op: FreeOp, a: Label, s: &LinComb<Ebt>, t: &LinComb<Ebt>) -> Result<LinComb<Ebt>> {
    let mut out = LinComb::zero();
    for (x, c) in s.iter() {
        for (y, d) in t.iter() {
            let p = match op {
                FreeOp::Dendr(o) => dendr_free_product(o, a, x, y)?,
                FreeOp::Dup(o) => dup_free_product(o, a, x, y)?.map(LinComb::monomial).unwrap_or_default(),
            };
            out.add_scaled(&(c * d), &p);
        }
    }
    Ok(out)
}

/// Operation of the free algebra named by generator `g` of the
/// polydendriform (`prec`/`succ`) or multiplicial (`ul`/`ur`) signature.
pub fn free_op_of(sig: &Signature, g: usize) -> Result<(FreeOp, Label)> {
    let name = sig.name(g);
    let (head, a) = name
        .rsplit_once('_')
        .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
    let a: u32 = a.parse().map_err(|_| Error::UnknownGenerator(name.to_string()))?;
    let op = match head {
        "prec" => FreeOp::Dendr(DendrOp::Prec),
        "succ" => FreeOp::Dendr(DendrOp::Succ),
        "ul" => FreeOp::Dup(DupOp::Under),
        "ur" => FreeOp::Dup(DupOp::Over),
        _ => return Err(Error::UnknownGenerator(name.to_string())),
    };
    Ok((op, Label::Fin(a)))
}

/// Evaluates the syntax tree `t` on `inputs` (one per leaf, left to right).
pub fn evaluate(sig: &Signature, t: &SyntaxTree, inputs: &[LinComb<Ebt>]) -> Result<LinComb<Ebt>> {
    if inputs.len() != t.arity() {
        return Err(Error::ArityMismatch { expected: t.arity(), got: inputs.len() });
    }
    fn go(sig: &Signature, t: &SyntaxTree, inputs: &[LinComb<Ebt>]) -> Result<LinComb<Ebt>> {
        let Some(g) = t.root() else { return Ok(inputs[0].clone()) };
        let (l, r) = t.children().expect("binary node");
        let k = l.arity();
        let (op, a) = free_op_of(sig, g)?;
        free_product(op, a, &go(sig, &l, &inputs[..k])?, &go(sig, &r, &inputs[k..])?)
    }
    go(sig, t, inputs)
}

pub fn evaluate_lin(sig: &Signature, v: &LinComb<SyntaxTree>, inputs: &[LinComb<Ebt>]) -> Result<LinComb<Ebt>> {
    let mut out = LinComb::zero();
    for (t, c) in v.iter() {
        out.add_scaled(c, &evaluate(sig, t, inputs)?);
    }
    Ok(out)
}

/// First relation of `p` that fails on some triple drawn from `samples`.
pub fn find_law_violation(p: &Presentation, samples: &[Ebt]) -> Result<Option<(usize, [Ebt; 3])>> {
    for (i, rel) in p.relations().iter().enumerate() {
        for x in samples {
            for y in samples {
                for z in samples {
                    let ins = [x, y, z].map(|e| LinComb::monomial(e.clone()));
                    if !evaluate_lin(p.signature(), rel, &ins)?.is_zero() {
                        return Ok(Some((i, [x.clone(), y.clone(), z.clone()])));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Rebuilds `t = (t1 ≻_x •) ≺_y t2` (or its multiplicial analogue) from its root split.
pub fn regenerate(t: &Ebt, dup: bool) -> Result<LinComb<Ebt>> {
    let Ebt::Node(n) = t else { return Ok(LinComb::monomial(Ebt::Leaf)) };
    let dot = LinComb::monomial(Ebt::single());
    let l = regenerate(&n.left, dup)?;
    let r = regenerate(&n.right, dup)?;
    let (first, second) = if dup {
        (FreeOp::Dup(DupOp::Over), FreeOp::Dup(DupOp::Under))
    } else {
        (FreeOp::Dendr(DendrOp::Succ), FreeOp::Dendr(DendrOp::Prec))
    };
    let inner = free_product(first, n.left_label, &l, &dot)?;
    free_product(second, n.right_label, &inner, &r)
}

/// Every product of `n` copies of the one-node tree, over all bracketings and
/// all `2γ` operations of the chosen family.
pub fn products_of_generator(n: usize, gamma: u32, dup: bool) -> Result<Vec<LinComb<Ebt>>> {
    let ops: Vec<FreeOp> = if dup {
        vec![FreeOp::Dup(DupOp::Under), FreeOp::Dup(DupOp::Over)]
    } else {
        vec![FreeOp::Dendr(DendrOp::Prec), FreeOp::Dendr(DendrOp::Succ)]
    };
    let mut memo: Vec<Vec<LinComb<Ebt>>> = vec![Vec::new(), vec![LinComb::monomial(Ebt::single())]];
    for m in 2..=n {
        let mut level = Vec::new();
        for k in 1..m {
            for l in &memo[k] {
                for r in &memo[m - k] {
                    for &op in &ops {
                        for a in 1..=gamma {
                            let v = free_product(op, Label::Fin(a), l, r)?;
                            if !v.is_zero() {
                                level.push(v);
                            }
                        }
                    }
                }
            }
        }
        memo.push(level);
    }
    Ok(memo.swap_remove(n))
}

/// Dimension of the span of [`products_of_generator`].
pub fn generated_dim(n: usize, gamma: u32, dup: bool) -> Result<usize> {
    Ok(Basis::span_owned(products_of_generator(n, gamma, dup)?)?.dim())
}
