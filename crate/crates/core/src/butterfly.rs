//! Degree-three multilinear computations in free γ-Zinbiel algebras, and the
//! commutative and polydendriform structures they carry.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact_linear::{rat, LinComb};
use crate::free_operad::{Signature, SyntaxTree};
use crate::presentations::{build_presentation, Family};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
        })
    }
}

/// Bracketing of variables with nodes `⧢_a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    Shuffle(u32, Box<Term>, Box<Term>),
}

impl Term {
    pub fn shuffle(a: u32, l: Term, r: Term) -> Term {
        Term::Shuffle(a, Box::new(l), Box::new(r))
    }

    fn vars(&self, out: &mut Vec<Var>) {
        match self {
            Term::Var(v) => out.push(*v),
            Term::Shuffle(_, l, r) => {
                l.vars(out);
                r.vars(out);
            }
        }
    }

    fn max_label(&self) -> u32 {
        match self {
            Term::Var(_) => 0,
            Term::Shuffle(a, l, r) => (*a).max(l.max_label()).max(r.max_label()),
        }
    }

    pub fn is_right_nested(&self) -> bool {
        match self {
            Term::Var(_) => true,
            Term::Shuffle(_, l, r) => matches!(**l, Term::Var(_)) && r.is_right_nested(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Shuffle(a, l, r) => {
                let wrap = |t: &Term| match t {
                    Term::Var(_) => t.to_string(),
                    _ => format!("({t})"),
                };
                write!(f, "{}⧢{a}{}", wrap(l), wrap(r))
            }
        }
    }
}

/// Term with three distinct variables and labels in [γ].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultilinearTerm(Term);

impl MultilinearTerm {
    pub fn new(t: Term, gamma: u32) -> Result<Self> {
        let mut vs = Vec::new();
        t.vars(&mut vs);
        let mut sorted = vs.clone();
        sorted.sort();
        sorted.dedup();
        if vs.len() != 3 || sorted.len() != 3 {
            return Err(Error::Invalid(format!("{t} is not multilinear in x, y, z")));
        }
        if t.max_label() > gamma || !labels_positive(&t) {
            return Err(Error::Label { label: t.max_label(), gamma });
        }
        Ok(Self(t))
    }

    pub fn term(&self) -> &Term {
        &self.0
    }
}

fn labels_positive(t: &Term) -> bool {
    match t {
        Term::Var(_) => true,
        Term::Shuffle(a, l, r) => *a > 0 && labels_positive(l) && labels_positive(r),
    }
}

impl fmt::Display for MultilinearTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Rewrites `(u ⧢_{a'} v) ⧢_a w` into `u ⧢_{a↓a'} (v ⧢_a w) + u ⧢_{a↓a'} (w ⧢_{a'} v)`.
pub fn zin_normal_form(e: &LinComb<MultilinearTerm>) -> LinComb<MultilinearTerm> {
    let mut out = LinComb::zero();
    for (t, c) in e.iter() {
        match &t.0 {
            Term::Shuffle(a, l, w) if matches!(**w, Term::Var(_)) => match &**l {
                Term::Shuffle(a2, u, v) => {
                    let m = (*a).min(*a2);
                    let t1 = Term::shuffle(m, (**u).clone(), Term::shuffle(*a, (**v).clone(), (**w).clone()));
                    let t2 = Term::shuffle(m, (**u).clone(), Term::shuffle(*a2, (**w).clone(), (**v).clone()));
                    out.add_term(MultilinearTerm(t1), c.clone());
                    out.add_term(MultilinearTerm(t2), c.clone());
                }
                Term::Var(_) => unreachable!("three variables"),
            },
            _ => out.add_term(t.clone(), c.clone()),
        }
    }
    out
}

/// The relation `(x ⧢_{a'} y) ⧢_a z − x ⧢_{a↓a'} (y ⧢_a z) − x ⧢_{a↓a'} (z ⧢_{a'} y)`.
pub fn zin_relation(a: u32, a2: u32) -> LinComb<MultilinearTerm> {
    let (x, y, z) = (Term::Var(Var::X), Term::Var(Var::Y), Term::Var(Var::Z));
    let m = a.min(a2);
    let lhs = Term::shuffle(a, Term::shuffle(a2, x.clone(), y.clone()), z.clone());
    let r1 = Term::shuffle(m, x.clone(), Term::shuffle(a, y.clone(), z.clone()));
    let r2 = Term::shuffle(m, x, Term::shuffle(a2, z, y));
    LinComb::monomial(MultilinearTerm(lhs)) - LinComb::monomial(MultilinearTerm(r1)) - LinComb::monomial(MultilinearTerm(r2))
}

fn bilinear(u: &LinComb<Term>, v: &LinComb<Term>, f: impl Fn(&Term, &Term) -> LinComb<Term>) -> LinComb<Term> {
    let mut out = LinComb::zero();
    for (s, c) in u.iter() {
        for (t, d) in v.iter() {
            out.add_scaled(&(c * d), &f(s, t));
        }
    }
    out
}

pub fn shuffle(a: u32, u: &LinComb<Term>, v: &LinComb<Term>) -> LinComb<Term> {
    bilinear(u, v, |s, t| LinComb::monomial(Term::shuffle(a, s.clone(), t.clone())))
}

/// `x ⋄_a y = x ⧢_a y + y ⧢_a x`.
pub fn diamond(a: u32, u: &LinComb<Term>, v: &LinComb<Term>) -> LinComb<Term> {
    shuffle(a, u, v) + shuffle(a, v, u)
}

fn var(v: Var) -> LinComb<Term> {
    LinComb::monomial(Term::Var(v))
}

fn to_multilinear(e: LinComb<Term>, gamma: u32) -> Result<LinComb<MultilinearTerm>> {
    let mut out = LinComb::zero();
    for (t, c) in e.into_terms() {
        out.add_term(MultilinearTerm::new(t, gamma)?, c);
    }
    Ok(out)
}

/// Normal form of a degree-three expression.
pub fn reduce_expression(e: LinComb<Term>, gamma: u32) -> Result<LinComb<MultilinearTerm>> {
    Ok(zin_normal_form(&to_multilinear(e, gamma)?))
}

/// The commutative relations of the γ-commutative operad in the `⋄` basis:
/// `x ⋄_a y − y ⋄_a x` and the associators of each `⋄_a`.
pub fn com_relations(gamma: u32) -> Vec<(String, LinComb<Term>)> {
    let (x, y, z) = (var(Var::X), var(Var::Y), var(Var::Z));
    let mut out = Vec::new();
    for a in 1..=gamma {
        out.push((format!("commutativity of ⋄{a}"), diamond(a, &x, &y) - diamond(a, &y, &x)));
        let lhs = diamond(a, &diamond(a, &x, &y), &z);
        let rhs = diamond(a, &x, &diamond(a, &y, &z));
        out.push((format!("associativity of ⋄{a}"), lhs - rhs));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ButterflyCheck {
    pub name: String,
    pub remainder: LinComb<MultilinearTerm>,
}

impl ButterflyCheck {
    pub fn holds(&self) -> bool {
        self.remainder.is_zero()
    }
}

/// Normal forms of the commutative relations under `⋄_a = ⧢_a + ⧢_a^op`.
pub fn com_from_zin_checks(gamma: u32) -> Result<Vec<ButterflyCheck>> {
    com_relations(gamma)
        .into_iter()
        .map(|(name, e)| {
            // commutativity vanishes before any rewriting
            let remainder = if name.starts_with("commutativity") {
                to_multilinear_any(e)
            } else {
                reduce_expression(e, gamma)?
            };
            Ok(ButterflyCheck { name, remainder })
        })
        .collect()
}

fn to_multilinear_any(e: LinComb<Term>) -> LinComb<MultilinearTerm> {
    LinComb::from_terms(e.into_terms().into_iter().map(|(t, c)| (MultilinearTerm(t), c)))
}

pub fn verify_com_from_zin(gamma: u32) -> Result<bool> {
    Ok(com_from_zin_checks(gamma)?.iter().all(ButterflyCheck::holds))
}

/// Interpretation of the two polydendriform operations in terms of `⧢`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DendrFromZin {
    /// `x ≺_a y = x ⧢_a y` and `x ≻_a y = y ⧢_a x`.
    Standard,
    /// `x ≻_a y = x ⧢_a y` as well; not a morphism.
    Unflipped,
}

fn eval_dendr(sig: &Signature, t: &SyntaxTree, inputs: &[LinComb<Term>], mode: DendrFromZin) -> Result<LinComb<Term>> {
    let Some(g) = t.root() else { return Ok(inputs[0].clone()) };
    let (l, r) = t.children().expect("binary node");
    let k = l.arity();
    let u = eval_dendr(sig, &l, &inputs[..k], mode)?;
    let v = eval_dendr(sig, &r, &inputs[k..], mode)?;
    let name = sig.name(g);
    let (head, a) = name.rsplit_once('_').ok_or_else(|| Error::UnknownGenerator(name.into()))?;
    let a: u32 = a.parse().map_err(|_| Error::UnknownGenerator(name.into()))?;
    Ok(match (head, mode) {
        ("prec", _) | ("succ", DendrFromZin::Unflipped) => shuffle(a, &u, &v),
        ("succ", DendrFromZin::Standard) => shuffle(a, &v, &u),
        _ => return Err(Error::UnknownGenerator(name.into())),
    })
}

/// Normal forms of the min-form polydendriform relations under the given
/// interpretation.
pub fn dendr_from_zin_checks(gamma: u32, mode: DendrFromZin) -> Result<Vec<ButterflyCheck>> {
    let p = build_presentation(Family::D, gamma, Some(rat(1)))?;
    let ins = [var(Var::X), var(Var::Y), var(Var::Z)];
    let mut out = Vec::new();
    for rel in p.relations() {
        let mut e = LinComb::zero();
        for (t, c) in rel.iter() {
            e.add_scaled(c, &eval_dendr(p.signature(), t, &ins, mode)?);
        }
        let name = crate::exact_linear::format_lincomb(rel, |t| p.signature().format_tree(t));
        out.push(ButterflyCheck { name, remainder: reduce_expression(e, gamma)? });
    }
    Ok(out)
}

pub fn verify_dendr_from_zin(gamma: u32) -> Result<bool> {
    Ok(dendr_from_zin_checks(gamma, DendrFromZin::Standard)?.iter().all(ButterflyCheck::holds))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(e: Term) -> LinComb<MultilinearTerm> {
        LinComb::monomial(MultilinearTerm::new(e, 4).unwrap())
    }

    fn x() -> Term {
        Term::Var(Var::X)
    }
    fn y() -> Term {
        Term::Var(Var::Y)
    }
    fn z() -> Term {
        Term::Var(Var::Z)
    }

    #[test]
    fn classical_rewrite() {
        let lhs = t(Term::shuffle(1, Term::shuffle(1, x(), y()), z()));
        let want = t(Term::shuffle(1, x(), Term::shuffle(1, y(), z()))) + t(Term::shuffle(1, x(), Term::shuffle(1, z(), y())));
        assert_eq!(zin_normal_form(&lhs), want);
    }

    #[test]
    fn min_label_rewrite() {
        let lhs = t(Term::shuffle(1, Term::shuffle(2, x(), y()), z()));
        let want = t(Term::shuffle(1, x(), Term::shuffle(1, y(), z()))) + t(Term::shuffle(1, x(), Term::shuffle(2, z(), y())));
        assert_eq!(zin_normal_form(&lhs), want);
    }

    #[test]
    fn right_nested_fixed_and_idempotent() {
        let r = t(Term::shuffle(2, y(), Term::shuffle(1, z(), x())));
        assert_eq!(zin_normal_form(&r), r);
        let l = t(Term::shuffle(2, Term::shuffle(3, z(), x()), y()));
        let once = zin_normal_form(&l);
        assert_eq!(zin_normal_form(&once), once);
        assert!(once.keys().all(|k| k.term().is_right_nested()));
    }

    #[test]
    fn zin_relation_reduces_to_zero() {
        for a in 1..=3 {
            for b in 1..=3 {
                assert!(zin_normal_form(&zin_relation(a, b)).is_zero());
            }
        }
    }

    #[test]
    fn multilinearity_enforced() {
        assert!(MultilinearTerm::new(Term::shuffle(1, x(), Term::shuffle(1, x(), z())), 2).is_err());
        assert!(MultilinearTerm::new(Term::shuffle(3, x(), Term::shuffle(1, y(), z())), 2).is_err());
        assert!(MultilinearTerm::new(Term::shuffle(0, x(), Term::shuffle(1, y(), z())), 2).is_err());
    }

    #[test]
    fn com_and_dendr_from_zin() {
        for g in 1..=4 {
            assert!(verify_com_from_zin(g).unwrap());
            assert!(verify_dendr_from_zin(g).unwrap());
        }
    }

    #[test]
    fn cross_index_associativity_fails() {
        let (x, y, z) = (var(Var::X), var(Var::Y), var(Var::Z));
        let e = diamond(2, &diamond(1, &x, &y), &z) - diamond(1, &x, &diamond(2, &y, &z));
        assert!(!reduce_expression(e, 2).unwrap().is_zero());
    }

    #[test]
    fn unflipped_substitution_fails() {
        let checks = dendr_from_zin_checks(1, DendrFromZin::Unflipped).unwrap();
        assert!(checks.iter().any(|c| !c.holds()));
    }
}
