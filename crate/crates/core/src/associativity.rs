//! Associative elements of arity two: exact membership test, the quadratic
//! constraint system and a finite-field classification.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_linear::{LinComb, Rational};
use crate::free_operad::SyntaxTree;
use crate::presentations::Presentation;

/// Largest supported signature for the exhaustive search.
pub const MAX_SEARCH_GENERATORS: usize = 6;

fn coefficients(p: &Presentation, x: &LinComb<SyntaxTree>) -> Result<Vec<Rational>> {
    let n = p.signature().len();
    let mut c = vec![Rational::zero(); n];
    for (t, v) in x.iter() {
        if t.arity() != 2 {
            return Err(Error::ArityMismatch { expected: 2, got: t.arity() });
        }
        let g = t.root().expect("arity 2");
        if g >= n {
            return Err(Error::UnknownGenerator(format!("#{g}")));
        }
        c[g] = v.clone();
    }
    Ok(c)
}

/// The combination `Σ c_g g` of arity two.
pub fn element(coeffs: &[Rational]) -> LinComb<SyntaxTree> {
    LinComb::from_terms(coeffs.iter().enumerate().map(|(g, c)| (SyntaxTree::corolla(g), c.clone())))
}

/// `x∘₁x − x∘₂x`.
pub fn associator(x: &LinComb<SyntaxTree>) -> Result<LinComb<SyntaxTree>> {
    let mut out = LinComb::zero();
    for (g, c) in x.iter() {
        for (h, d) in x.iter() {
            let (Some(g), Some(h)) = (g.root(), h.root()) else {
                return Err(Error::ArityMismatch { expected: 2, got: 1 });
            };
            let cd = c * d;
            out.add_term(SyntaxTree::comp1(g, h), cd.clone());
            out.add_term(SyntaxTree::comp2(g, h), -cd);
        }
    }
    Ok(out)
}

pub fn is_associative(p: &Presentation, x: &LinComb<SyntaxTree>) -> Result<bool> {
    coefficients(p, x)?;
    p.relation_span()?.contains(&associator(x)?)
}

/// One quadratic form `Σ coeff · c_g c_h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    pub terms: Vec<(usize, usize, Rational)>,
}

impl QuadraticForm {
    pub fn eval(&self, c: &[Rational]) -> Rational {
        self.terms.iter().map(|(g, h, k)| k * &c[*g] * &c[*h]).sum()
    }
}

/// Coordinates of the associator on the trees outside the pivots of the
/// relation span, as forms in the generator coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticSystem {
    pub variables: Vec<String>,
    pub coordinates: Vec<SyntaxTree>,
    pub equations: Vec<QuadraticForm>,
}

impl QuadraticSystem {
    pub fn is_solution(&self, c: &[Rational]) -> bool {
        self.equations.iter().all(|e| e.eval(c).is_zero())
    }
}

pub fn extract_quadratic_system(p: &Presentation) -> Result<QuadraticSystem> {
    let sig = p.signature();
    let n = sig.len();
    let span = p.relation_span()?;
    let coordinates: Vec<SyntaxTree> = (0..n)
        .flat_map(|g| (0..n).flat_map(move |h| [SyntaxTree::comp1(g, h), SyntaxTree::comp2(g, h)]))
        .filter(|t| !span.is_pivot(t))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut equations = vec![QuadraticForm { terms: Vec::new() }; coordinates.len()];
    for g in 0..n {
        for h in 0..n {
            let mono = LinComb::monomial(SyntaxTree::comp1(g, h)) - LinComb::monomial(SyntaxTree::comp2(g, h));
            let r = span.reduce(&mono);
            for (i, t) in coordinates.iter().enumerate() {
                let k = r.coeff(t);
                if !k.is_zero() {
                    equations[i].terms.push((g, h, k));
                }
            }
        }
    }
    Ok(QuadraticSystem { variables: sig.names().map(str::to_string).collect(), coordinates, equations })
}

fn to_mod(r: &Rational, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let d = r.denom().mod_floor(&pb);
    if d.is_zero() {
        return Err(Error::NotInvertibleModP(p));
    }
    let n = r.numer().mod_floor(&pb);
    let inv = d.modpow(&BigInt::from(p - 2), &pb);
    Ok((n * inv).mod_floor(&pb).to_u64().expect("below p"))
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// All associative lines over the field with `p` elements, each normalized
/// so that its first nonzero coordinate is 1.
pub fn classify_associative_modp(pres: &Presentation, p: u64) -> Result<Vec<Vec<u64>>> {
    if !is_prime(p) || p > 101 {
        return Err(Error::Invalid(format!("{p} is not a small prime")));
    }
    let n = pres.signature().len();
    if n > MAX_SEARCH_GENERATORS {
        return Err(Error::SearchTooLarge { size: n as u64, limit: MAX_SEARCH_GENERATORS as u64 });
    }
    let sys = extract_quadratic_system(pres)?;
    let eqs: Vec<Vec<(usize, usize, u64)>> = sys
        .equations
        .iter()
        .map(|e| e.terms.iter().map(|(g, h, k)| Ok((*g, *h, to_mod(k, p)?))).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let holds = |c: &[u64]| {
        eqs.iter()
            .all(|e| e.iter().fold(0, |acc, &(g, h, k)| (acc + k * c[g] % p * c[h]) % p) == 0)
    };
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let mut c = vec![0u64; n];
        c[lead] = 1;
        for code in 0..p.pow(free as u32) {
            let mut m = code;
            for slot in c.iter_mut().skip(lead + 1) {
                *slot = m % p;
                m /= p;
            }
            if holds(&c) {
                out.push(c.clone());
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Reduction mod `p` of a rational coefficient vector, scaled so that its
/// first nonzero coordinate is 1.
pub fn line_of(coeffs: &[Rational], p: u64) -> Result<Vec<u64>> {
    let mut v = coeffs.iter().map(|c| to_mod(c, p)).collect::<Result<Vec<_>>>()?;
    if let Some(&lead) = v.iter().find(|&&x| x != 0) {
        let inv = to_mod(&Rational::from_integer(lead.into()).recip(), p)?;
        for x in &mut v {
            *x = *x * inv % p;
        }
    }
    Ok(v)
}
