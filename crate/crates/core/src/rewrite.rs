//! Monomial quadratic rewrite systems on syntax trees.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact_linear::LinComb;
use crate::free_operad::{enumerate_trees, Signature, SyntaxTree};
use crate::presentations::{build_presentation, Family, Presentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RewriteFamily {
    As,
    Dup,
}

impl RewriteFamily {
    pub fn presentation_family(self) -> Family {
        match self {
            RewriteFamily::As => Family::As,
            RewriteFamily::Dup => Family::Dup,
        }
    }
}

impl fmt::Display for RewriteFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RewriteFamily::As => "As",
            RewriteFamily::Dup => "Dup",
        })
    }
}

impl FromStr for RewriteFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "as" => Ok(RewriteFamily::As),
            "dup" => Ok(RewriteFamily::Dup),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

/// Two-node pattern `outer ∘_pos inner`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    pub outer: usize,
    pub pos: u8,
    pub inner: usize,
}

impl Pattern {
    pub fn of(t: &SyntaxTree) -> Result<Self> {
        if t.arity() != 3 {
            return Err(Error::ArityMismatch { expected: 3, got: t.arity() });
        }
        let outer = t.root().expect("arity 3");
        let (l, r) = t.children().expect("arity 3");
        Ok(match (l.root(), r.root()) {
            (Some(inner), None) => Pattern { outer, pos: 1, inner },
            (None, Some(inner)) => Pattern { outer, pos: 2, inner },
            _ => unreachable!("arity 3 has two internal nodes"),
        })
    }

    pub fn tree(self) -> SyntaxTree {
        if self.pos == 1 {
            SyntaxTree::comp1(self.outer, self.inner)
        } else {
            SyntaxTree::comp2(self.outer, self.inner)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: SyntaxTree,
    pub rhs: SyntaxTree,
}

impl RewriteRule {
    pub fn new(lhs: SyntaxTree, rhs: SyntaxTree) -> Result<Self> {
        Pattern::of(&lhs)?;
        Pattern::of(&rhs)?;
        if lhs == rhs {
            return Err(Error::Invalid("rule with equal sides".into()));
        }
        Ok(Self { lhs, rhs })
    }
}

#[derive(Debug, Clone)]
pub struct RewriteSystem {
    tag: String,
    gamma: u32,
    signature: Signature,
    rules: Vec<RewriteRule>,
    index: HashMap<Pattern, (usize, Pattern)>,
}

impl RewriteSystem {
    pub fn new(tag: impl Into<String>, gamma: u32, signature: Signature, rules: Vec<RewriteRule>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            for t in [&r.lhs, &r.rhs] {
                if t.max_label().is_some_and(|g| g >= signature.len()) {
                    return Err(Error::Invalid("rule mentions an unknown generator".into()));
                }
            }
            if index.insert(Pattern::of(&r.lhs)?, (i, Pattern::of(&r.rhs)?)).is_some() {
                return Err(Error::Invalid(format!("duplicate left-hand side {}", signature.format_tree(&r.lhs))));
            }
        }
        Ok(Self { tag: tag.into(), gamma, signature, rules, index })
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn gamma(&self) -> u32 {
        self.gamma
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    /// Same system without rule `i`.
    pub fn without_rule(&self, i: usize) -> Result<Self> {
        let mut rules = self.rules.clone();
        rules.remove(i);
        Self::new(format!("{}-minus-{i}", self.tag), self.gamma, self.signature.clone(), rules)
    }

    /// The relations `lhs − rhs` as a presentation.
    pub fn presentation(&self) -> Result<Presentation> {
        let rels = self
            .rules
            .iter()
            .map(|r| LinComb::monomial(r.lhs.clone()) - LinComb::monomial(r.rhs.clone()))
            .collect();
        Presentation::new(self.tag.clone(), self.gamma, None, self.signature.clone(), rels)
    }

    /// Redex at preorder position `k`, the applicable rule with the
    /// smallest index.
    fn redex_at(&self, t: &SyntaxTree, k: usize) -> Option<(usize, Pattern, Pattern)> {
        let g = t.slot(k)?;
        let sub = t.subtree_at(k);
        let (l, r) = sub.children().expect("internal");
        let mut best: Option<(usize, Pattern, Pattern)> = None;
        for (pos, child) in [(1u8, &l), (2u8, &r)] {
            if let Some(h) = child.root() {
                let p = Pattern { outer: g, pos, inner: h };
                if let Some(&(i, rhs)) = self.index.get(&p) {
                    if best.is_none_or(|b| i < b.0) {
                        best = Some((i, p, rhs));
                    }
                }
            }
        }
        best
    }

    fn redexes_at(&self, t: &SyntaxTree, k: usize) -> Vec<(Pattern, Pattern)> {
        let Some(g) = t.slot(k) else { return Vec::new() };
        let sub = t.subtree_at(k);
        let (l, r) = sub.children().expect("internal");
        let mut out = Vec::new();
        for (pos, child) in [(1u8, &l), (2u8, &r)] {
            if let Some(h) = child.root() {
                let p = Pattern { outer: g, pos, inner: h };
                if let Some(&(_, rhs)) = self.index.get(&p) {
                    out.push((p, rhs));
                }
            }
        }
        out
    }

    fn rewrite_at(t: &SyntaxTree, k: usize, lhs: Pattern, rhs: Pattern) -> SyntaxTree {
        let sub = t.subtree_at(k);
        let (l, r) = sub.children().expect("internal");
        let (x, y, z) = if lhs.pos == 1 {
            let (x, y) = l.children().expect("pattern matched");
            (x, y, r)
        } else {
            let (y, z) = r.children().expect("pattern matched");
            (l, y, z)
        };
        let new = if rhs.pos == 1 {
            SyntaxTree::node(rhs.outer, SyntaxTree::node(rhs.inner, x, y), z)
        } else {
            SyntaxTree::node(rhs.outer, x, SyntaxTree::node(rhs.inner, y, z))
        };
        t.replace_at(k, &new)
    }

    pub fn is_normal(&self, t: &SyntaxTree) -> bool {
        t.internal_positions().all(|k| self.redex_at(t, k).is_none())
    }

    /// Every tree reachable in one rewriting step.
    pub fn one_step(&self, t: &SyntaxTree) -> Vec<SyntaxTree> {
        let mut out = Vec::new();
        for k in t.internal_positions() {
            for (lhs, rhs) in self.redexes_at(t, k) {
                out.push(Self::rewrite_at(t, k, lhs, rhs));
            }
        }
        out
    }

    fn step_cap(&self, t: &SyntaxTree) -> usize {
        let n = t.arity() as u64;
        let trees = crate::hilbert::catalan(n - 1).saturating_mul((self.signature.len() as u64).saturating_pow(n as u32 - 1));
        trees.min(usize::MAX as u64) as usize
    }

    /// Leftmost-outermost rewriting until irreducible.
    pub fn normal_form(&self, t: &SyntaxTree) -> Result<SyntaxTree> {
        if t.max_label().is_some_and(|g| g >= self.signature.len()) {
            return Err(Error::Invalid("tree uses a generator outside the signature".into()));
        }
        let cap = self.step_cap(t);
        let mut cur = t.clone();
        let mut steps = 0usize;
        loop {
            let found = cur.internal_positions().find_map(|k| self.redex_at(&cur, k).map(|(_, l, r)| (k, l, r)));
            let Some((k, lhs, rhs)) = found else { return Ok(cur) };
            if steps >= cap {
                return Err(Error::StepCap(cap));
            }
            cur = Self::rewrite_at(&cur, k, lhs, rhs);
            steps += 1;
        }
    }

    pub fn count_normal_forms(&self, n: usize) -> Result<u64> {
        Ok(enumerate_trees(&self.signature, n)?.iter().filter(|t| self.is_normal(t)).count() as u64)
    }

    pub fn normal_forms(&self, n: usize) -> Result<Vec<SyntaxTree>> {
        Ok(enumerate_trees(&self.signature, n)?.into_iter().filter(|t| self.is_normal(t)).collect())
    }

    /// Exhaustive joinability of one-step rewrites on all trees with three
    /// internal nodes.
    pub fn check_local_confluence(&self) -> ConfluenceReport {
        let trees = match enumerate_trees(&self.signature, 4) {
            Ok(t) => t,
            Err(e) => return ConfluenceReport { confluent: false, witness: Some(e.to_string()) },
        };
        for t in trees {
            let mut nf: Option<SyntaxTree> = None;
            for s in self.one_step(&t) {
                match self.normal_form(&s) {
                    Err(e) => {
                        return ConfluenceReport {
                            confluent: false,
                            witness: Some(format!("{}: {e}", self.signature.format_tree(&s))),
                        }
                    }
                    Ok(r) => match &nf {
                        None => nf = Some(r),
                        Some(prev) if *prev != r => {
                            return ConfluenceReport {
                                confluent: false,
                                witness: Some(format!(
                                    "{} rewrites to distinct normal forms {} and {}",
                                    self.signature.format_tree(&t),
                                    self.signature.format_tree(prev),
                                    self.signature.format_tree(&r)
                                )),
                            }
                        }
                        _ => {}
                    },
                }
            }
        }
        ConfluenceReport { confluent: true, witness: None }
    }

    pub fn is_locally_confluent(&self) -> bool {
        self.check_local_confluence().confluent
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub confluent: bool,
    pub witness: Option<String>,
}

fn rule(outer: usize, pos: u8, inner: usize, to: (usize, u8, usize)) -> RewriteRule {
    let lhs = Pattern { outer, pos, inner }.tree();
    let rhs = Pattern { outer: to.0, pos: to.1, inner: to.2 }.tree();
    RewriteRule { lhs, rhs }
}

pub fn build_rewrite_system(family: RewriteFamily, gamma: u32) -> Result<RewriteSystem> {
    if gamma == 0 {
        return Err(Error::Invalid("rewrite systems need gamma >= 1".into()));
    }
    let p = build_presentation(family.presentation_family(), gamma, None)?;
    let g = gamma as usize;
    let mut rules = Vec::new();
    match family {
        RewriteFamily::As => {
            let st = |a: usize| a - 1;
            for b in 1..=g {
                for a in 1..=b {
                    rules.push(rule(st(a), 1, st(b), (st(b), 2, st(b))));
                }
            }
            for b in 1..=g {
                for a in 1..b {
                    rules.push(rule(st(b), 1, st(a), (st(b), 2, st(b))));
                }
            }
            for b in 1..=g {
                for a in 1..b {
                    rules.push(rule(st(a), 2, st(b), (st(b), 2, st(b))));
                }
            }
            for b in 1..=g {
                for a in 1..b {
                    rules.push(rule(st(b), 2, st(a), (st(b), 2, st(b))));
                }
            }
        }
        RewriteFamily::Dup => {
            let ul = |a: usize| a - 1;
            let ur = |a: usize| g + a - 1;
            for a in 1..=g {
                for b in 1..=g {
                    rules.push(rule(ul(a), 1, ur(b), (ur(b), 2, ul(a))));
                }
            }
            for a in 1..=g {
                for b in 1..=g {
                    rules.push(rule(ul(a), 1, ul(b), (ul(a.min(b)), 2, ul(a))));
                }
            }
            for a in 1..=g {
                for b in 1..=g {
                    rules.push(rule(ur(a), 2, ur(b), (ur(a.min(b)), 1, ur(a))));
                }
            }
        }
    }
    RewriteSystem::new(family.to_string(), gamma, p.signature().clone(), rules)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::catalan;

    #[test]
    fn rule_counts() {
        for g in 1..=4u32 {
            let as_ = build_rewrite_system(RewriteFamily::As, g).unwrap();
            // direct recount of the four displayed index ranges
            let recount = (1..=g).flat_map(|b| (1..=b).map(move |a| (a, b))).count()
                + 3 * (1..=g).flat_map(|b| (1..b).map(move |a| (a, b))).count();
            assert_eq!(as_.rules().len(), recount);
            assert_eq!(build_rewrite_system(RewriteFamily::Dup, g).unwrap().rules().len(), 3 * (g * g) as usize);
        }
        assert_eq!(build_rewrite_system(RewriteFamily::As, 2).unwrap().rules().len(), 6);
        assert_eq!(build_rewrite_system(RewriteFamily::Dup, 1).unwrap().rules().len(), 3);
        assert!(build_rewrite_system(RewriteFamily::As, 0).is_err());
    }

    #[test]
    fn induced_relations_match_presentations() {
        for g in 1..=3 {
            for f in [RewriteFamily::As, RewriteFamily::Dup] {
                let rs = build_rewrite_system(f, g).unwrap();
                let p = build_presentation(f.presentation_family(), g, None).unwrap();
                assert_eq!(*rs.presentation().unwrap().relation_span().unwrap(), *p.relation_span().unwrap());
            }
        }
    }

    #[test]
    fn normal_form_examples() {
        let rs = build_rewrite_system(RewriteFamily::As, 2).unwrap();
        let s = rs.signature();
        let t = s.parse_tree("star_2(star_1(.,.),.)").unwrap();
        assert_eq!(s.format_tree(&rs.normal_form(&t).unwrap()), "star_2(.,star_2(.,.))");
        let comb = s.parse_tree("star_1(.,star_1(.,star_1(.,.)))").unwrap();
        assert_eq!(rs.normal_form(&comb).unwrap(), comb);

        let dup = build_rewrite_system(RewriteFamily::Dup, 2).unwrap();
        let s = dup.signature();
        let t = s.parse_tree("ul_1(ur_2(.,.),.)").unwrap();
        assert_eq!(s.format_tree(&dup.normal_form(&t).unwrap()), "ur_2(.,ul_1(.,.))");
    }

    #[test]
    fn as_normal_forms_are_uniform_combs_with_max_label() {
        let rs = build_rewrite_system(RewriteFamily::As, 3).unwrap();
        for t in enumerate_trees(rs.signature(), 5).unwrap() {
            let nf = rs.normal_form(&t).unwrap();
            let m = t.max_label().unwrap();
            let mut comb = SyntaxTree::leaf();
            for _ in 0..4 {
                comb = SyntaxTree::node(m, SyntaxTree::leaf(), comb);
            }
            assert_eq!(nf, comb);
            assert_eq!(rs.normal_form(&nf).unwrap(), nf);
        }
    }

    #[test]
    fn confluence() {
        for g in 1..=3 {
            assert!(build_rewrite_system(RewriteFamily::As, g).unwrap().is_locally_confluent());
            assert!(build_rewrite_system(RewriteFamily::Dup, g).unwrap().is_locally_confluent());
        }
    }

    #[test]
    fn normal_form_counts() {
        assert_eq!(build_rewrite_system(RewriteFamily::As, 2).unwrap().count_normal_forms(4).unwrap(), 2);
        let dup2 = build_rewrite_system(RewriteFamily::Dup, 2).unwrap();
        assert_eq!(dup2.count_normal_forms(3).unwrap(), 20);
        assert_eq!(build_rewrite_system(RewriteFamily::Dup, 1).unwrap().count_normal_forms(5).unwrap(), 42);
        for n in 1..=5u32 {
            assert_eq!(dup2.count_normal_forms(n as usize).unwrap(), 2u64.pow(n - 1) * catalan(n as u64));
        }
    }

    #[test]
    fn duplicate_lhs_refused() {
        let rs = build_rewrite_system(RewriteFamily::Dup, 1).unwrap();
        let mut rules = rs.rules().to_vec();
        rules.push(rules[0].clone());
        assert!(RewriteSystem::new("x", 1, rs.signature().clone(), rules).is_err());
    }

    #[test]
    fn looping_system_hits_step_cap() {
        let s = Signature::new(["a"]).unwrap();
        let rules = vec![
            RewriteRule::new(SyntaxTree::comp1(0, 0), SyntaxTree::comp2(0, 0)).unwrap(),
            RewriteRule::new(SyntaxTree::comp2(0, 0), SyntaxTree::comp1(0, 0)).unwrap(),
        ];
        let rs = RewriteSystem::new("loop", 1, s, rules).unwrap();
        assert!(matches!(rs.normal_form(&SyntaxTree::comp1(0, 0)), Err(Error::StepCap(_))));
        let report = rs.check_local_confluence();
        assert!(!report.confluent);
        assert!(report.witness.is_some());
    }

    #[test]
    fn deleting_a_dup_rule_breaks_confluence() {
        let rs = build_rewrite_system(RewriteFamily::Dup, 2).unwrap();
        let cut = rs.without_rule(0).unwrap();
        let report = cut.check_local_confluence();
        assert!(!report.confluent);
        assert!(report.witness.is_some());
    }
}
