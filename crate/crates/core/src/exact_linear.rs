//! Exact rational linear algebra over monomial bases.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free_operad::{enumerate_trees, Signature, SyntaxTree};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as `p` or `p/q`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Keys that carry an arity, so that mixed-arity inputs can be refused.
pub trait Graded {
    fn degree(&self) -> usize;
}

impl Graded for SyntaxTree {
    fn degree(&self) -> usize {
        self.arity()
    }
}

/// Finite formal sum with nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(k: K) -> Self {
        Self::term(k, Rational::one())
    }

    pub fn term(k: K, c: Rational) -> Self {
        let mut v = Self::zero();
        v.add_term(k, c);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, Rational)>) -> Self {
        let mut v = Self::zero();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    pub fn add_term(&mut self, k: K, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Rational, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (k, d) in &other.terms {
            self.add_term(k.clone(), c * d);
        }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(k, d)| (k.clone(), c * d)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> Rational {
        self.terms.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn get(&self, k: &K) -> Option<&Rational> {
        self.terms.get(k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Smallest key with its coefficient.
    pub fn leading(&self) -> Option<(&K, &Rational)> {
        self.terms.iter().next()
    }

    /// Linear extension of `f` on keys.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> LinComb<L>) -> LinComb<L> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(c, &f(k));
        }
        out
    }

    /// Bilinear extension of `f` on pairs of keys.
    pub fn bilinear<L: Ord + Clone, M: Ord + Clone>(
        &self,
        other: &LinComb<L>,
        mut f: impl FnMut(&K, &L) -> LinComb<M>,
    ) -> LinComb<M> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            for (l, d) in &other.terms {
                out.add_scaled(&(c * d), &f(k, l));
            }
        }
        out
    }

    pub fn into_terms(self) -> BTreeMap<K, Rational> {
        self.terms
    }
}

impl<K: Ord + Clone + Graded> LinComb<K> {
    /// Common degree of the keys, `None` for the zero vector.
    pub fn degree(&self) -> Result<Option<usize>> {
        let mut it = self.terms.keys().map(Graded::degree);
        let Some(d) = it.next() else { return Ok(None) };
        match it.find(|&e| e != d) {
            Some(e) => Err(Error::ArityMismatch { expected: d, got: e }),
            None => Ok(Some(d)),
        }
    }
}

impl<K: Ord + Clone> From<K> for LinComb<K> {
    fn from(k: K) -> Self {
        Self::monomial(k)
    }
}

impl<K: Ord + Clone> Add for LinComb<K> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<K: Ord + Clone> AddAssign for LinComb<K> {
    fn add_assign(&mut self, rhs: Self) {
        for (k, c) in rhs.terms {
            self.add_term(k, c);
        }
    }
}

impl<K: Ord + Clone> Sub for LinComb<K> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl<K: Ord + Clone> SubAssign for LinComb<K> {
    fn sub_assign(&mut self, rhs: Self) {
        for (k, c) in rhs.terms {
            self.add_term(k, -c);
        }
    }
}

impl<K: Ord + Clone> Neg for LinComb<K> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl<K: Ord + Clone> std::iter::Sum for LinComb<K> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| a + b)
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*{k:?}")?;
        }
        Ok(())
    }
}

/// Renders a combination with a key printer, e.g. `2*a(.,.) - b(.,.)`.
pub fn format_lincomb<K: Ord + Clone>(v: &LinComb<K>, mut key: impl FnMut(&K) -> String) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (k, c)) in v.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if !mag.is_one() {
            out.push_str(&mag.to_string());
            out.push('*');
        }
        out.push_str(&key(k));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub tree: String,
}

pub fn lincomb_to_json(v: &LinComb<SyntaxTree>, sig: &Signature) -> Vec<TermJson> {
    v.iter()
        .map(|(t, c)| TermJson { coeff: format_rational(c), tree: sig.format_tree(t) })
        .collect()
}

pub fn lincomb_from_json(terms: &[TermJson], sig: &Signature) -> Result<LinComb<SyntaxTree>> {
    let mut v = LinComb::zero();
    for t in terms {
        v.add_term(sig.parse_tree(&t.tree)?, parse_rational(&t.coeff)?);
    }
    Ok(v)
}

/// Reduced row-echelon basis of a subspace. Rows are sorted by pivot, the
/// pivot of a row is its smallest key, has coefficient 1, and no other row
/// mentions it.
#[derive(Clone, PartialEq, Eq)]
pub struct Basis<K: Ord> {
    rows: BTreeMap<K, LinComb<K>>,
    degree: Option<usize>,
}

impl<K: Ord + Clone + fmt::Debug> fmt::Debug for Basis<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.values()).finish()
    }
}

impl<K: Ord + Clone + Graded> Basis<K> {
    pub fn empty() -> Self {
        Self { rows: BTreeMap::new(), degree: None }
    }

    pub fn span<'a>(vs: impl IntoIterator<Item = &'a LinComb<K>>) -> Result<Self>
    where
        K: 'a,
    {
        let mut b = Self::empty();
        for v in vs {
            b.insert(v.clone())?;
        }
        Ok(b)
    }

    pub fn span_owned(vs: impl IntoIterator<Item = LinComb<K>>) -> Result<Self> {
        let mut b = Self::empty();
        for v in vs {
            b.insert(v)?;
        }
        Ok(b)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn degree(&self) -> Option<usize> {
        self.degree
    }

    pub fn rows(&self) -> impl Iterator<Item = &LinComb<K>> {
        self.rows.values()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    pub fn is_pivot(&self, k: &K) -> bool {
        self.rows.contains_key(k)
    }

    fn check_degree(&mut self, v: &LinComb<K>) -> Result<()> {
        if let Some(d) = v.degree()? {
            match self.degree {
                None => self.degree = Some(d),
                Some(e) if e != d => return Err(Error::ArityMismatch { expected: e, got: d }),
                _ => {}
            }
        }
        Ok(())
    }

    /// Remainder of `v` modulo the span; supported on non-pivot keys.
    pub fn reduce(&self, v: &LinComb<K>) -> LinComb<K> {
        let mut r = v.clone();
        for (k, c) in v.iter() {
            if let Some(row) = self.rows.get(k) {
                r.add_scaled(&-c.clone(), row);
            }
        }
        r
    }

    /// Adds `v` to the span. Returns whether the dimension grew.
    pub fn insert(&mut self, v: LinComb<K>) -> Result<bool> {
        self.check_degree(&v)?;
        let mut r = self.reduce(&v);
        let Some((p, c)) = r.leading().map(|(k, c)| (k.clone(), c.clone())) else {
            return Ok(false);
        };
        if !c.is_one() {
            r = r.scaled(&c.recip());
        }
        for row in self.rows.values_mut() {
            if let Some(d) = row.get(&p).cloned() {
                row.add_scaled(&-d, &r);
            }
        }
        self.rows.insert(p, r);
        Ok(true)
    }

    /// Coordinates of `v` on the rows (in pivot order) if `v` is in the span.
    pub fn member(&self, v: &LinComb<K>) -> Result<Option<Vec<Rational>>> {
        self.arity_guard(v)?;
        if !self.reduce(v).is_zero() {
            return Ok(None);
        }
        Ok(Some(self.rows.keys().map(|p| v.coeff(p)).collect()))
    }

    pub fn contains(&self, v: &LinComb<K>) -> Result<bool> {
        self.arity_guard(v)?;
        Ok(self.reduce(v).is_zero())
    }

    fn arity_guard(&self, v: &LinComb<K>) -> Result<()> {
        if let (Some(e), Some(d)) = (self.degree, v.degree()?) {
            if e != d {
                return Err(Error::ArityMismatch { expected: e, got: d });
            }
        }
        Ok(())
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        for r in self.rows() {
            if !other.contains(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Koszul sign of an arity-3 monomial: `+1` for `x∘₁y`, `-1` for `x∘₂y`.
pub fn koszul_sign(t: &SyntaxTree) -> Result<Rational> {
    if t.arity() != 3 {
        return Err(Error::ArityMismatch { expected: 3, got: t.arity() });
    }
    let (l, _) = t.children().expect("arity 3");
    Ok(if l.is_leaf() { rat(-1) } else { rat(1) })
}

/// Annihilator of `b` in arity 3 for the Koszul scalar product.
pub fn orthogonal_complement(b: &Basis<SyntaxTree>, sig: &Signature) -> Result<Basis<SyntaxTree>> {
    if let Some(d) = b.degree() {
        if d != 3 {
            return Err(Error::ArityMismatch { expected: 3, got: d });
        }
    }
    let mut out = Basis::empty();
    for f in enumerate_trees(sig, 3)? {
        if b.is_pivot(&f) {
            continue;
        }
        // u ⊥ b for the standard form, then w = sign ⊙ u
        let mut w = LinComb::term(f.clone(), koszul_sign(&f)?);
        for (p, row) in &b.rows {
            let c = row.coeff(&f);
            if !c.is_zero() {
                w.add_term(p.clone(), -c * koszul_sign(p)?);
            }
        }
        out.insert(w)?;
    }
    Ok(out)
}

/// Koszul scalar product of two arity-3 vectors.
pub fn koszul_pairing(v: &LinComb<SyntaxTree>, w: &LinComb<SyntaxTree>) -> Result<Rational> {
    let mut s = Rational::zero();
    for (k, c) in v.iter() {
        if let Some(d) = w.get(k) {
            s += koszul_sign(k)? * c * d;
        }
    }
    Ok(s)
}
