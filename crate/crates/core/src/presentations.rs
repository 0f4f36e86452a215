//! Binary quadratic presentations of the operad families, Koszul duality,
//! generator changes of basis, ideal components and morphism checks.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_linear::{
    format_rational, lincomb_from_json, lincomb_to_json, orthogonal_complement, parse_rational, rat,
    Basis, LinComb, Rational, TermJson,
};
use crate::free_operad::{enumerate_trees, Signature, SyntaxTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// The three classical dendriform relations, γ = 1 only.
    DendrClassical,
    DendrHarpoon,
    DendrStd,
    As,
    AsTriangle,
    DAsLozenge,
    DAsDiamond,
    /// The one-parameter family with coefficient q.
    D,
    Dup,
    TDendr,
    /// Koszul dual of the harpoon presentation.
    Dias,
    /// Koszul dual of `TDendr`.
    Trias,
}

impl Family {
    pub const ALL: [Family; 12] = [
        Family::DendrClassical,
        Family::DendrHarpoon,
        Family::DendrStd,
        Family::As,
        Family::AsTriangle,
        Family::DAsLozenge,
        Family::DAsDiamond,
        Family::D,
        Family::Dup,
        Family::TDendr,
        Family::Dias,
        Family::Trias,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::DendrClassical => "Dendr-classical",
            Family::DendrHarpoon => "Dendr-harpoon",
            Family::DendrStd => "Dendr",
            Family::As => "As",
            Family::AsTriangle => "As-triangle",
            Family::DAsLozenge => "DAs",
            Family::DAsDiamond => "DAs-diamond",
            Family::D => "D",
            Family::Dup => "Dup",
            Family::TDendr => "TDendr",
            Family::Dias => "Dias",
            Family::Trias => "Trias",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Ok(match key.as_str() {
            "dendr-classical" | "dendr-1" => Family::DendrClassical,
            "dendr-harpoon" | "dendr-alt" => Family::DendrHarpoon,
            "dendr" | "dendr-std" => Family::DendrStd,
            "as" | "as-star" => Family::As,
            "as-triangle" | "as-tri" => Family::AsTriangle,
            "das" | "das-lozenge" => Family::DAsLozenge,
            "das-diamond" => Family::DAsDiamond,
            "d" | "dq" => Family::D,
            "dup" => Family::Dup,
            "tdendr" => Family::TDendr,
            "dias" => Family::Dias,
            "trias" => Family::Trias,
            _ => return Err(Error::UnknownFamily(s.to_string())),
        })
    }
}

/// Binary quadratic presentation: generators plus arity-3 relations.
#[derive(Clone)]
pub struct Presentation {
    tag: String,
    gamma: u32,
    q: Option<Rational>,
    signature: Signature,
    relations: Vec<LinComb<SyntaxTree>>,
    ideal_cache: Arc<Mutex<HashMap<usize, Arc<Basis<SyntaxTree>>>>>,
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presentation")
            .field("tag", &self.tag)
            .field("gamma", &self.gamma)
            .field("q", &self.q)
            .field("generators", &self.signature.names().collect::<Vec<_>>())
            .field("relations", &self.relations.len())
            .finish()
    }
}

impl Presentation {
    pub fn new(
        tag: impl Into<String>,
        gamma: u32,
        q: Option<Rational>,
        signature: Signature,
        relations: Vec<LinComb<SyntaxTree>>,
    ) -> Result<Self> {
        for r in &relations {
            if let Some(d) = r.degree()? {
                if d != 3 {
                    return Err(Error::ArityMismatch { expected: 3, got: d });
                }
            }
            if let Some(bad) = r.keys().filter_map(|t| t.max_label()).find(|&g| g >= signature.len()) {
                return Err(Error::UnknownGenerator(format!("#{bad}")));
            }
        }
        Ok(Self {
            tag: tag.into(),
            gamma,
            q,
            signature,
            relations,
            ideal_cache: Arc::default(),
        })
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn gamma(&self) -> u32 {
        self.gamma
    }

    pub fn q(&self) -> Option<&Rational> {
        self.q.as_ref()
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn relations(&self) -> &[LinComb<SyntaxTree>] {
        &self.relations
    }

    pub fn relation_span(&self) -> Result<Arc<Basis<SyntaxTree>>> {
        self.ideal_component(3)
    }

    /// Arity-`n` component of the operadic ideal generated by the relations.
    pub fn ideal_component(&self, n: usize) -> Result<Arc<Basis<SyntaxTree>>> {
        if n < 3 {
            return Err(Error::ArityTooSmall { min: 3, got: n });
        }
        if let Some(b) = self.ideal_cache.lock().expect("cache lock").get(&n) {
            return Ok(b.clone());
        }
        let basis = if n == 3 {
            Basis::span(&self.relations)?
        } else {
            let prev = self.ideal_component(n - 1)?;
            let gens = self.signature.corollas();
            let mut b = Basis::empty();
            for x in prev.rows() {
                for g in &gens {
                    for i in 1..n {
                        b.insert(graft_lin(x, i, g)?)?;
                    }
                    for j in 1..=2 {
                        b.insert(LinComb::from_terms(
                            x.iter().map(|(t, c)| Ok((g.graft(j, t)?, c.clone()))).collect::<Result<Vec<_>>>()?,
                        ))?;
                    }
                }
            }
            b
        };
        let basis = Arc::new(basis);
        self.ideal_cache.lock().expect("cache lock").insert(n, basis.clone());
        Ok(basis)
    }

    /// Number of trees of arity `n` in the free operad on the signature.
    pub fn free_dim(&self, n: usize) -> u64 {
        if n == 0 {
            return 0;
        }
        crate::hilbert::catalan(n as u64 - 1) * (self.signature.len() as u64).pow(n as u32 - 1)
    }

    pub fn quotient_dim(&self, n: usize) -> Result<u64> {
        match n {
            0 => Err(Error::ArityTooSmall { min: 1, got: 0 }),
            1 => Ok(1),
            2 => Ok(self.signature.len() as u64),
            _ => Ok(self.free_dim(n) - self.ideal_component(n)?.dim() as u64),
        }
    }

    /// Monomials of arity `n` that are not pivots of the ideal component;
    /// their classes form a basis of the quotient.
    pub fn quotient_monomials(&self, n: usize) -> Result<Vec<SyntaxTree>> {
        let all = enumerate_trees(&self.signature, n)?;
        if n < 3 {
            return Ok(all);
        }
        let ideal = self.ideal_component(n)?;
        Ok(all.into_iter().filter(|t| !ideal.is_pivot(t)).collect())
    }

    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            family: self.tag.clone(),
            gamma: self.gamma,
            q: self.q.as_ref().map(format_rational),
            generators: self.signature.names().map(String::from).collect(),
            relations: self.relations.iter().map(|r| lincomb_to_json(r, &self.signature)).collect(),
        }
    }

    pub fn from_json(j: &PresentationJson) -> Result<Self> {
        let signature = Signature::new(j.generators.iter().cloned())?;
        let relations = j
            .relations
            .iter()
            .map(|r| lincomb_from_json(r, &signature))
            .collect::<Result<Vec<_>>>()?;
        let q = j.q.as_deref().map(parse_rational).transpose()?;
        Self::new(j.family.clone(), j.gamma, q, signature, relations)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub family: String,
    pub gamma: u32,
    pub q: Option<String>,
    pub generators: Vec<String>,
    pub relations: Vec<Vec<TermJson>>,
}

fn graft_lin(x: &LinComb<SyntaxTree>, i: usize, s: &SyntaxTree) -> Result<LinComb<SyntaxTree>> {
    let mut out = LinComb::zero();
    for (t, c) in x.iter() {
        out.add_term(t.graft(i, s)?, c.clone());
    }
    Ok(out)
}

/// `g ∘₁ h` as a vector.
pub fn c1(g: usize, h: usize) -> LinComb<SyntaxTree> {
    LinComb::monomial(SyntaxTree::comp1(g, h))
}

/// `g ∘₂ h` as a vector.
pub fn c2(g: usize, h: usize) -> LinComb<SyntaxTree> {
    LinComb::monomial(SyntaxTree::comp2(g, h))
}

fn names(prefixes: &[&str], gamma: u32) -> Vec<String> {
    prefixes
        .iter()
        .flat_map(|p| (1..=gamma).map(move |a| format!("{p}_{a}")))
        .collect()
}

fn pairs(gamma: u32) -> impl Iterator<Item = (u32, u32)> {
    (1..=gamma).flat_map(move |a| (1..=gamma).map(move |b| (a, b)))
}

fn lt_pairs(gamma: u32) -> impl Iterator<Item = (u32, u32)> {
    pairs(gamma).filter(|(a, b)| a < b)
}

/// Generator index of `prefix_a` where the prefix block is `block`.
fn ix(gamma: u32, block: u32, a: u32) -> usize {
    (block * gamma + a - 1) as usize
}

pub fn build_presentation(family: Family, gamma: u32, q: Option<Rational>) -> Result<Presentation> {
    if q.is_some() && family != Family::D {
        return Err(Error::UnexpectedQ);
    }
    let g = gamma;
    let mk = |prefixes: &[&str], rels: Vec<LinComb<SyntaxTree>>| -> Result<Presentation> {
        Presentation::new(family.tag(), g, None, Signature::new(names(prefixes, g))?, rels)
    };
    match family {
        Family::DendrClassical => {
            if g != 1 {
                return Err(Error::Invalid("the classical presentation exists for gamma = 1 only".into()));
            }
            let (p, s) = (0, 1);
            mk(
                &["prec", "succ"],
                vec![c1(p, s) - c2(s, p), c1(p, p) - c2(p, p) - c2(p, s), c1(s, p) + c1(s, s) - c2(s, s)],
            )
        }
        Family::DendrHarpoon => mk(&["la", "ra"], dendr_harpoon(g)),
        Family::DendrStd => mk(&["prec", "succ"], dendr_std(g)),
        Family::As => mk(&["star"], as_star(g)),
        Family::AsTriangle => mk(&["tri"], as_triangle(g)),
        Family::DAsLozenge => mk(&["loz"], das_lozenge(g)),
        Family::DAsDiamond => mk(&["dia"], (1..=g).map(|a| c1(a as usize - 1, a as usize - 1) - c2(a as usize - 1, a as usize - 1)).collect()),
        Family::D => {
            let q = q.ok_or_else(|| Error::Invalid("family D needs a value for q".into()))?;
            let rels = d_q(g, &q);
            Presentation::new(family.tag(), g, Some(q), Signature::new(names(&["prec", "succ"], g))?, rels)
        }
        Family::Dup => mk(&["ul", "ur"], d_q(g, &Rational::zero())),
        Family::TDendr => {
            let mut n = names(&["la"], g);
            n.push("wedge".into());
            n.extend(names(&["ra"], g));
            Presentation::new(family.tag(), g, None, Signature::new(n)?, tdendr(g))
        }
        Family::Dias => {
            let d = koszul_dual(&build_presentation(Family::DendrHarpoon, g, None)?)?;
            Ok(d.retagged(family.tag()))
        }
        Family::Trias => {
            let d = koszul_dual(&build_presentation(Family::TDendr, g, None)?)?;
            Ok(d.retagged(family.tag()))
        }
    }
}

impl Presentation {
    fn retagged(mut self, tag: &str) -> Self {
        self.tag = tag.into();
        self
    }
}

fn dendr_harpoon(g: u32) -> Vec<LinComb<SyntaxTree>> {
    let la = |a| ix(g, 0, a);
    let ra = |a| ix(g, 1, a);
    let mut r = Vec::new();
    for (a, b) in pairs(g) {
        r.push(c1(la(a), ra(b)) - c2(ra(b), la(a)));
    }
    for (a, b) in lt_pairs(g) {
        r.push(c1(la(a), la(b)) - c2(la(a), ra(b)));
    }
    for (a, b) in lt_pairs(g) {
        r.push(c1(ra(a), la(b)) - c2(ra(a), ra(b)));
    }
    // indices as in the tri-dendriform analogues
    for (a, b) in lt_pairs(g) {
        r.push(c1(la(b), la(a)) - c2(la(a), la(b)));
    }
    for (a, b) in lt_pairs(g) {
        r.push(c1(ra(a), ra(b)) - c2(ra(b), ra(a)));
    }
    for d in 1..=g {
        let mut v = c1(la(d), la(d));
        for c in 1..=d {
            v -= c2(la(d), la(c)) + c2(la(d), ra(c));
        }
        r.push(v);
    }
    for d in 1..=g {
        let mut v = -c2(ra(d), ra(d));
        for c in 1..=d {
            v += c1(ra(d), ra(c)) + c1(ra(d), la(c));
        }
        r.push(v);
    }
    r
}

fn dendr_std(g: u32) -> Vec<LinComb<SyntaxTree>> {
    let p = |a| ix(g, 0, a);
    let s = |a| ix(g, 1, a);
    let mut r = Vec::new();
    for (a, b) in pairs(g) {
        r.push(c1(p(a), s(b)) - c2(s(b), p(a)));
    }
    for (a, b) in lt_pairs(g) {
        r.push(c1(p(a), p(b)) - c2(p(a), s(b)) - c2(p(a), p(a)));
    }
    for (a, b) in lt_pairs(g) {
        r.push(c1(s(a), s(a)) + c1(s(a), p(b)) - c2(s(a), s(b)));
    }
    for (a, b) in lt_pairs(g) {
        r.push(c1(p(b), p(a)) - c2(p(a), p(b)) - c2(p(a), s(a)));
    }
    for (a, b) in lt_pairs(g) {
        r.push(c1(s(a), p(a)) + c1(s(a), s(b)) - c2(s(b), s(a)));
    }
    for a in 1..=g {
        r.push(c1(p(a), p(a)) - c2(p(a), s(a)) - c2(p(a), p(a)));
    }
    for a in 1..=g {
        r.push(c1(s(a), s(a)) + c1(s(a), p(a)) - c2(s(a), s(a)));
    }
    r.extend(d_q(g, &Rational::one()));
    r
}

/// Relations of the q-family in the `prec`/`succ` indexing; with `q = 1`
/// these are the min-form relations of the standard presentation.
fn d_q(g: u32, q: &Rational) -> Vec<LinComb<SyntaxTree>> {
    let p = |a| ix(g, 0, a);
    let s = |a| ix(g, 1, a);
    let mut r = Vec::new();
    for (a, b) in pairs(g) {
        r.push(c1(p(a), s(b)) - c2(s(b), p(a)));
    }
    for (a, b) in pairs(g) {
        let m = a.min(b);
        r.push(c1(p(a), p(b)) - c2(p(m), p(a)) - c2(p(m), s(b)).scaled(q));
    }
    for (a, b) in pairs(g) {
        let m = a.min(b);
        r.push(c1(s(m), p(b)).scaled(q) + c1(s(m), s(a)) - c2(s(a), s(b)));
    }
    r
}

fn as_star(g: u32) -> Vec<LinComb<SyntaxTree>> {
    let st = |a| ix(g, 0, a);
    let mut r = Vec::new();
    for (a, b) in pairs(g).filter(|(a, b)| a <= b) {
        r.push(c1(st(a), st(b)) - c2(st(b), st(b)));
    }
    for (a, b) in lt_pairs(g) {
        r.push(c1(st(b), st(a)) - c2(st(b), st(b)));
    }
    for (a, b) in lt_pairs(g) {
        r.push(c2(st(a), st(b)) - c2(st(b), st(b)));
    }
    for (a, b) in lt_pairs(g) {
        r.push(c2(st(b), st(a)) - c2(st(b), st(b)));
    }
    // the two max-form restatements
    for (a, b) in pairs(g) {
        let m = a.max(b);
        r.push(c1(st(a), st(b)) - c2(st(m), st(m)));
    }
    for (a, b) in pairs(g) {
        let m = a.max(b);
        r.push(c2(st(a), st(b)) - c2(st(m), st(m)));
    }
    r
}

fn as_triangle(g: u32) -> Vec<LinComb<SyntaxTree>> {
    let t = |a| ix(g, 0, a);
    let mut r = Vec::new();
    for (a, b) in pairs(g).filter(|(a, b)| a != b) {
        r.push(c1(t(a), t(b)));
    }
    for (a, b) in pairs(g).filter(|(a, b)| a != b) {
        r.push(c2(t(a), t(b)));
    }
    for a in 1..=g {
        r.push(c1(t(a), t(a)) - c2(t(a), t(a)));
    }
    r
}

fn das_lozenge(g: u32) -> Vec<LinComb<SyntaxTree>> {
    let l = |a| ix(g, 0, a);
    (1..=g)
        .map(|b| {
            let mut v = c1(l(b), l(b)) - c2(l(b), l(b));
            for a in 1..b {
                v += c1(l(a), l(b)) + c1(l(b), l(a)) - c2(l(a), l(b)) - c2(l(b), l(a));
            }
            v
        })
        .collect()
}

fn tdendr(g: u32) -> Vec<LinComb<SyntaxTree>> {
    let la = |a: u32| (a - 1) as usize;
    let w = g as usize;
    let ra = |a: u32| (g + a) as usize;
    let mut r = vec![c1(w, w) - c2(w, w)];
    for a in 1..=g {
        r.push(c1(la(a), w) - c2(w, la(a)));
    }
    for a in 1..=g {
        r.push(c1(w, ra(a)) - c2(ra(a), w));
    }
    for a in 1..=g {
        r.push(c1(w, la(a)) - c2(w, ra(a)));
    }
    for (a, b) in pairs(g) {
        r.push(c1(la(a), ra(b)) - c2(ra(b), la(a)));
    }
    for (a, b) in lt_pairs(g) {
        r.push(c1(la(a), la(b)) - c2(la(a), ra(b)));
    }
    for (a, b) in lt_pairs(g) {
        r.push(c1(ra(a), la(b)) - c2(ra(a), ra(b)));
    }
    for (a, b) in lt_pairs(g) {
        r.push(c1(la(b), la(a)) - c2(la(a), la(b)));
    }
    for (a, b) in lt_pairs(g) {
        r.push(c1(ra(a), ra(b)) - c2(ra(b), ra(a)));
    }
    for d in 1..=g {
        let mut v = c1(la(d), la(d)) - c2(la(d), w);
        for c in 1..=d {
            v -= c2(la(d), la(c)) + c2(la(d), ra(c));
        }
        r.push(v);
    }
    for d in 1..=g {
        let mut v = c1(ra(d), w) - c2(ra(d), ra(d));
        for c in 1..=d {
            v += c1(ra(d), la(c)) + c1(ra(d), ra(c));
        }
        r.push(v);
    }
    r
}

/// Koszul dual: same generators with primed names, relations a basis of
/// the annihilator of the relation span.
pub fn koszul_dual(p: &Presentation) -> Result<Presentation> {
    let span = p.relation_span()?;
    let comp = orthogonal_complement(&span, &p.signature)?;
    let tag = match p.tag.strip_suffix('!') {
        Some(base) => base.to_string(),
        None => format!("{}!", p.tag),
    };
    Presentation::new(tag, p.gamma, p.q.clone(), p.signature.primed(), comp.rows().cloned().collect())
}

/// Images of source generators as arity-2 vectors over a target signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSubstitution {
    source: Signature,
    target: Signature,
    images: Vec<LinComb<SyntaxTree>>,
}

impl GeneratorSubstitution {
    /// `images` pairs source generator names with arity-2 vectors over
    /// `target`; every source generator must appear.
    pub fn new(
        source: &Signature,
        target: &Signature,
        images: impl IntoIterator<Item = (String, LinComb<SyntaxTree>)>,
    ) -> Result<Self> {
        let mut slots: Vec<Option<LinComb<SyntaxTree>>> = vec![None; source.len()];
        for (name, v) in images {
            let i = source.index_of(&name).ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
            if let Some(d) = v.degree()? {
                if d != 2 {
                    return Err(Error::ArityMismatch { expected: 2, got: d });
                }
            }
            if v.keys().filter_map(|t| t.root()).any(|h| h >= target.len()) {
                return Err(Error::UnknownGenerator(format!("image of {name}")));
            }
            slots[i] = Some(v);
        }
        let images = slots
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::Unmapped(source.name(i).to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { source: source.clone(), target: target.clone(), images })
    }

    /// Images given as (source generator, [(coefficient, target generator)]).
    pub fn from_names(
        source: &Signature,
        target: &Signature,
        images: &[(&str, Vec<(Rational, &str)>)],
    ) -> Result<Self> {
        let mut out = Vec::new();
        for (s, terms) in images {
            let mut v = LinComb::zero();
            for (c, t) in terms {
                let h = target.index_of(t).ok_or_else(|| Error::UnknownGenerator(t.to_string()))?;
                v.add_term(SyntaxTree::corolla(h), c.clone());
            }
            out.push((s.to_string(), v));
        }
        Self::new(source, target, out)
    }

    pub fn source(&self) -> &Signature {
        &self.source
    }

    pub fn target(&self) -> &Signature {
        &self.target
    }

    pub fn image(&self, g: usize) -> &LinComb<SyntaxTree> {
        &self.images[g]
    }

    /// Rank of the images in the target arity-2 space.
    pub fn rank(&self) -> usize {
        Basis::span(&self.images).map(|b| b.dim()).unwrap_or(0)
    }

    pub fn is_invertible(&self) -> bool {
        self.source.len() == self.target.len() && self.rank() == self.source.len()
    }

    pub fn apply_tree(&self, t: &SyntaxTree) -> LinComb<SyntaxTree> {
        match t.children() {
            None => LinComb::monomial(SyntaxTree::leaf()),
            Some((l, r)) => {
                let g = t.root().expect("internal");
                let lv = self.apply_tree(&l);
                let rv = self.apply_tree(&r);
                let lr = lv.bilinear(&rv, |a, b| LinComb::monomial((a.clone(), b.clone())));
                self.images[g].bilinear(&lr, |h, (a, b)| {
                    LinComb::monomial(SyntaxTree::node(h.root().expect("corolla"), a.clone(), b.clone()))
                })
            }
        }
    }

    pub fn apply(&self, v: &LinComb<SyntaxTree>) -> LinComb<SyntaxTree> {
        v.map_linear(|t| self.apply_tree(t))
    }
}

pub fn substitute_generators(v: &LinComb<SyntaxTree>, sigma: &GeneratorSubstitution) -> Result<LinComb<SyntaxTree>> {
    if let Some(g) = v.keys().filter_map(|t| t.max_label()).max() {
        if g >= sigma.source.len() {
            return Err(Error::Unmapped(format!("#{g}")));
        }
    }
    Ok(sigma.apply(v))
}

/// Whether `sigma` (from `q`'s generators into `p`'s) carries the relation
/// space of `q` onto the relation space of `p`.
pub fn relation_spaces_equal(p: &Presentation, q: &Presentation, sigma: &GeneratorSubstitution) -> Result<bool> {
    if !sigma.is_invertible() {
        return Err(Error::NonInvertible);
    }
    let image = Basis::span_owned(q.relations.iter().map(|r| sigma.apply(r)))?;
    Ok(*p.relation_span()? == image)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismReport {
    pub well_defined: bool,
    pub surjective_arity2: bool,
}

pub fn check_morphism(src: &Presentation, tgt: &Presentation, images: &GeneratorSubstitution) -> Result<MorphismReport> {
    let span = tgt.relation_span()?;
    let mut well_defined = true;
    for r in &src.relations {
        if !span.contains(&images.apply(r))? {
            well_defined = false;
            break;
        }
    }
    Ok(MorphismReport { well_defined, surjective_arity2: images.rank() == tgt.signature.len() })
}

/// Rank of the linear map induced in arity `n` between the quotients.
pub fn induced_map_rank(src: &Presentation, tgt: &Presentation, images: &GeneratorSubstitution, n: usize) -> Result<usize> {
    if !check_morphism(src, tgt, images)?.well_defined {
        return Err(Error::NotAMorphism);
    }
    let ideal = if n >= 3 { Some(tgt.ideal_component(n)?) } else { None };
    let mut out = Basis::empty();
    for t in src.quotient_monomials(n)? {
        let v = images.apply_tree(&t);
        let v = match &ideal {
            Some(b) => b.reduce(&v),
            None => v,
        };
        out.insert(v)?;
    }
    Ok(out.dim())
}

/// Change of basis `prec_b ↦ Σ_{a≤b} la_a`, `succ_b ↦ Σ_{a≤b} ra_a`.
pub fn std_to_harpoon(std: &Presentation, harpoon: &Presentation) -> Result<GeneratorSubstitution> {
    let g = std.gamma();
    let mut images = Vec::new();
    for (from, to) in [("prec", "la"), ("succ", "ra")] {
        for b in 1..=g {
            let terms = (1..=b).map(|a| (rat(1), format!("{to}_{a}"))).collect::<Vec<_>>();
            images.push((format!("{from}_{b}"), terms));
        }
    }
    named_substitution(std.signature(), harpoon.signature(), &images)
}

/// Identification `tri_γ ↦ star_γ`, `tri_a ↦ star_a − star_{a+1}`.
pub fn triangle_to_star(tri: &Presentation, star: &Presentation) -> Result<GeneratorSubstitution> {
    let g = tri.gamma();
    let images = (1..=g)
        .map(|a| {
            let mut terms = vec![(rat(1), format!("star_{a}"))];
            if a < g {
                terms.push((rat(-1), format!("star_{}", a + 1)));
            }
            (format!("tri_{a}"), terms)
        })
        .collect::<Vec<_>>();
    named_substitution(tri.signature(), star.signature(), &images)
}

/// `dia_b ↦ Σ_{a≤b} loz_a`.
pub fn diamond_to_lozenge(dia: &Presentation, loz: &Presentation) -> Result<GeneratorSubstitution> {
    let images = (1..=dia.gamma())
        .map(|b| (format!("dia_{b}"), (1..=b).map(|a| (rat(1), format!("loz_{a}"))).collect()))
        .collect::<Vec<_>>();
    named_substitution(dia.signature(), loz.signature(), &images)
}

/// `la_a', ra_a' ↦ star_a` from the dual of the harpoon presentation.
pub fn dias_to_as(dias: &Presentation, as_: &Presentation) -> Result<GeneratorSubstitution> {
    let images = (1..=dias.gamma())
        .flat_map(|a| {
            ["la", "ra"].map(|h| (format!("{h}_{a}'"), vec![(rat(1), format!("star_{a}"))]))
        })
        .collect::<Vec<_>>();
    named_substitution(dias.signature(), as_.signature(), &images)
}

/// `dia_a ↦ prec_a + succ_a`.
pub fn diamond_to_dendr(dia: &Presentation, dendr: &Presentation) -> Result<GeneratorSubstitution> {
    let images = (1..=dia.gamma())
        .map(|a| (format!("dia_{a}"), vec![(rat(1), format!("prec_{a}")), (rat(1), format!("succ_{a}"))]))
        .collect::<Vec<_>>();
    named_substitution(dia.signature(), dendr.signature(), &images)
}

/// Sends the `i`-th generator of `source` to the `i`-th generator of `target`.
pub fn positional_substitution(source: &Signature, target: &Signature) -> Result<GeneratorSubstitution> {
    if source.len() != target.len() {
        return Err(Error::Invalid(format!("signatures of sizes {} and {}", source.len(), target.len())));
    }
    GeneratorSubstitution::new(
        source,
        target,
        (0..source.len()).map(|i| (source.name(i).to_string(), LinComb::monomial(SyntaxTree::corolla(i)))),
    )
}

pub fn named_substitution(
    source: &Signature,
    target: &Signature,
    images: &[(String, Vec<(Rational, String)>)],
) -> Result<GeneratorSubstitution> {
    let borrowed: Vec<(&str, Vec<(Rational, &str)>)> = images
        .iter()
        .map(|(s, ts)| (s.as_str(), ts.iter().map(|(c, t)| (c.clone(), t.as_str())).collect()))
        .collect();
    GeneratorSubstitution::from_names(source, target, &borrowed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(f: Family, g: u32) -> Presentation {
        build_presentation(f, g, None).unwrap()
    }

    #[test]
    fn generator_counts() {
        for g in 0..=3 {
            assert_eq!(build(Family::DendrStd, g).signature().len(), 2 * g as usize);
            assert_eq!(build(Family::DendrHarpoon, g).signature().len(), 2 * g as usize);
            assert_eq!(build(Family::As, g).signature().len(), g as usize);
            assert_eq!(build(Family::DAsDiamond, g).signature().len(), g as usize);
            assert_eq!(build(Family::Dup, g).signature().len(), 2 * g as usize);
            assert_eq!(build(Family::TDendr, g).signature().len(), 2 * g as usize + 1);
        }
    }

    #[test]
    fn q_only_for_d() {
        assert_eq!(build_presentation(Family::As, 2, Some(rat(1))).unwrap_err(), Error::UnexpectedQ);
        assert!(build_presentation(Family::D, 2, None).is_err());
        assert!(build_presentation(Family::D, 2, Some(rat(3))).is_ok());
    }

    #[test]
    fn family_names_parse() {
        for f in Family::ALL {
            assert_eq!(f.tag().parse::<Family>().unwrap(), f);
        }
        assert!(matches!("Foo".parse::<Family>(), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn relation_span_dimensions() {
        for g in 1..=3u32 {
            let gg = (g * g) as usize;
            assert_eq!(build(Family::DendrStd, g).relation_span().unwrap().dim(), 3 * gg);
            assert_eq!(build(Family::DendrHarpoon, g).relation_span().unwrap().dim(), 3 * gg);
            assert_eq!(build(Family::As, g).relation_span().unwrap().dim(), 2 * gg - g as usize);
            assert_eq!(build(Family::DAsLozenge, g).relation_span().unwrap().dim(), g as usize);
            assert_eq!(
                build(Family::TDendr, g).relation_span().unwrap().dim(),
                3 * gg + 3 * g as usize + 1
            );
        }
    }

    #[test]
    fn diamond_gamma_one_is_associativity() {
        let p = build(Family::DAsDiamond, 1);
        assert_eq!(p.relations(), &[c1(0, 0) - c2(0, 0)]);
    }

    #[test]
    fn classical_dual_is_dias() {
        let d = koszul_dual(&build(Family::DendrClassical, 1)).unwrap();
        assert_eq!(d.relation_span().unwrap().dim(), 5);
        assert_eq!(d.quotient_dim(1).unwrap(), 1);
        assert_eq!(d.quotient_dim(2).unwrap(), 2);
        assert_eq!(d.quotient_dim(3).unwrap(), 3);
        assert_eq!(d.signature().name(0), "prec_1'");
    }

    #[test]
    fn substitution_examples() {
        let std = build(Family::DendrStd, 1);
        let har = build(Family::DendrHarpoon, 1);
        let s = std_to_harpoon(&std, &har).unwrap();
        assert_eq!(s.apply(&c1(0, 0)), c1(0, 0));
        let std2 = build(Family::DendrStd, 2);
        let har2 = build(Family::DendrHarpoon, 2);
        let s2 = std_to_harpoon(&std2, &har2).unwrap();
        // prec_2 ∘₂ prec_2 ↦ (la_1 + la_2) ∘₂ (la_1 + la_2)
        let img = s2.apply(&c2(1, 1));
        assert_eq!(img, c2(0, 0) + c2(0, 1) + c2(1, 0) + c2(1, 1));
    }

    #[test]
    fn unmapped_generator_refused() {
        let a = build(Family::As, 2);
        let err = GeneratorSubstitution::new(
            a.signature(),
            a.signature(),
            [("star_1".to_string(), LinComb::monomial(SyntaxTree::corolla(0)))],
        );
        assert_eq!(err.unwrap_err(), Error::Unmapped("star_2".into()));
    }

    #[test]
    fn non_invertible_substitution_refused() {
        let a = build(Family::As, 2);
        let images = vec![
            ("star_1".to_string(), vec![(rat(1), "star_1".to_string())]),
            ("star_2".to_string(), vec![(rat(2), "star_1".to_string())]),
        ];
        let s = named_substitution(a.signature(), a.signature(), &images).unwrap();
        assert_eq!(relation_spaces_equal(&a, &a, &s).unwrap_err(), Error::NonInvertible);
    }

    #[test]
    fn ideal_component_small() {
        let p = build(Family::DendrClassical, 1);
        assert_eq!(p.ideal_component(3).unwrap().dim(), 3);
        assert!(p.ideal_component(2).is_err());
        assert_eq!(p.quotient_dim(4).unwrap(), 14);
    }

    #[test]
    fn as_quotient() {
        let p = build(Family::As, 2);
        assert_eq!(p.ideal_component(4).unwrap().dim(), 38);
        assert_eq!(build(Family::As, 3).quotient_dim(3).unwrap(), 3);
    }

    #[test]
    fn json_roundtrip() {
        let p = build_presentation(Family::D, 2, Some(ratio_q())).unwrap();
        let j = serde_json::to_string(&p.to_json()).unwrap();
        let back: PresentationJson = serde_json::from_str(&j).unwrap();
        let p2 = Presentation::from_json(&back).unwrap();
        assert_eq!(p2.relations(), p.relations());
        assert_eq!(p2.q(), p.q());
    }

    fn ratio_q() -> Rational {
        crate::exact_linear::ratio(-3, 2)
    }

    #[test]
    fn gamma_zero_degenerate() {
        let a = build(Family::As, 0);
        assert_eq!(a.quotient_dim(2).unwrap(), 0);
        assert_eq!(a.quotient_dim(3).unwrap(), 0);
        let t = build(Family::TDendr, 0);
        assert_eq!(t.signature().len(), 1);
        assert_eq!(t.quotient_dim(3).unwrap(), 1);
    }
}
