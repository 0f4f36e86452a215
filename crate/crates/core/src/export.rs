//! Graphviz DOT rendering of trees: internal nodes as circles, leaves as
//! squares, edge labels as edge attributes.

use std::fmt::Write;

use crate::free_operad::{Signature, SyntaxTree};
use crate::realizations::{AltSchroderTree, Ebt, Label};

struct Dot {
    out: String,
    next: usize,
}

impl Dot {
    fn new(name: &str) -> Self {
        let mut out = String::new();
        writeln!(out, "digraph {name} {{").unwrap();
        out.push_str("  node [fontname=\"monospace\"];\n");
        Self { out, next: 0 }
    }

    fn internal(&mut self, label: &str) -> usize {
        let id = self.next;
        self.next += 1;
        writeln!(self.out, "  n{id} [shape=circle, label=\"{}\"];", escape(label)).unwrap();
        id
    }

    fn leaf(&mut self) -> usize {
        let id = self.next;
        self.next += 1;
        writeln!(self.out, "  n{id} [shape=square, label=\"\", width=0.15, height=0.15];").unwrap();
        id
    }

    fn edge(&mut self, from: usize, to: usize, label: Option<&str>) {
        match label {
            Some(l) => writeln!(self.out, "  n{from} -> n{to} [label=\"{}\"];", escape(l)).unwrap(),
            None => writeln!(self.out, "  n{from} -> n{to};").unwrap(),
        }
    }

    fn finish(mut self) -> String {
        self.out.push_str("}\n");
        self.out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn syntax_tree_to_dot(sig: &Signature, t: &SyntaxTree) -> String {
    fn go(d: &mut Dot, sig: &Signature, t: &SyntaxTree) -> usize {
        match (t.root(), t.children()) {
            (Some(g), Some((l, r))) => {
                let id = d.internal(sig.name(g));
                for c in [l, r] {
                    let k = go(d, sig, &c);
                    d.edge(id, k, None);
                }
                id
            }
            _ => d.leaf(),
        }
    }
    let mut d = Dot::new("syntax_tree");
    go(&mut d, sig, t);
    d.finish()
}

pub fn ebt_to_dot(t: &Ebt) -> String {
    fn go(d: &mut Dot, t: &Ebt) -> usize {
        let Some(n) = t.as_node() else { return d.leaf() };
        let id = d.internal("");
        for (c, lab) in [(&n.left, n.left_label), (&n.right, n.right_label)] {
            let k = go(d, c);
            let text = match lab {
                Label::Fin(a) => Some(a.to_string()),
                Label::Inf => None,
            };
            d.edge(id, k, text.as_deref());
        }
        id
    }
    let mut d = Dot::new("edge_valued_tree");
    go(&mut d, t);
    d.finish()
}

pub fn schroder_to_dot(t: &AltSchroderTree) -> String {
    fn go(d: &mut Dot, t: &AltSchroderTree) -> usize {
        match t {
            AltSchroderTree::Leaf => d.leaf(),
            AltSchroderTree::Node { label, children } => {
                let id = d.internal(&label.to_string());
                for c in children {
                    let k = go(d, c);
                    d.edge(id, k, None);
                }
                id
            }
        }
    }
    let mut d = Dot::new("schroder_tree");
    go(&mut d, t);
    d.finish()
}
