//! Truncated power series and the dimension formulas of the families.

use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact_linear::{rat, Rational};
use crate::presentations::Family;

pub fn catalan(n: u64) -> u64 {
    (binomial(BigInt::from(2 * n), BigInt::from(n)) / BigInt::from(n + 1))
        .to_u64()
        .expect("catalan fits in u64")
}

/// `1/(k+1) · C(n−1, k) · C(n, k)`.
pub fn narayana(n: u64, k: u64) -> Result<u64> {
    if n == 0 || k >= n {
        return Err(Error::Series(format!("narayana({n}, {k}) out of range")));
    }
    let v = binomial(BigInt::from(n - 1), BigInt::from(k)) * binomial(BigInt::from(n), BigInt::from(k))
        / BigInt::from(k + 1);
    Ok(v.to_u64().expect("narayana fits in u64"))
}

/// Coefficients of t⁰..t^N.
#[derive(Clone, PartialEq, Eq)]
pub struct DimSeries {
    coeffs: Vec<Rational>,
}

impl fmt::Debug for DimSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl DimSeries {
    pub fn zero(order: usize) -> Self {
        Self { coeffs: vec![Rational::zero(); order + 1] }
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    pub fn constant(order: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `Σ_{n≥1} values[n−1] tⁿ`.
    pub fn from_dims(values: &[u64]) -> Self {
        let mut s = Self::zero(values.len());
        for (i, v) in values.iter().enumerate() {
            s.coeffs[i + 1] = rat(*v as i64);
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Series("empty coefficient list".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(order + 1, Rational::zero());
        Self { coeffs: c }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self { coeffs: (0..=n).map(|i| &self.coeffs[i] + &o.coeffs[i]).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = Self::zero(n);
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=n - i {
                out.coeffs[i + j] += &self.coeffs[i] * &o.coeffs[j];
            }
        }
        out
    }

    /// `self(inner(t))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Series("inner series has a nonzero constant term".into()));
        }
        let n = self.order().min(inner.order());
        let mut out = Self::zero(n);
        let mut power = Self::constant(n, Rational::one());
        for k in 0..=n {
            out = out.add(&power.scale(&self.coeffs[k]));
            power = power.mul(&inner.truncate(n));
        }
        Ok(out)
    }

    /// `Σ (−1)^{n+1} aₙ tⁿ`, that is `−A(−t)`.
    pub fn alternate(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| if n % 2 == 1 { c.clone() } else { -c.clone() })
                .collect(),
        }
    }

    /// Coefficients of t¹..t^N as integers.
    pub fn dims(&self) -> Result<Vec<BigInt>> {
        self.coeffs[1..]
            .iter()
            .map(|c| {
                if c.is_integer() && !c.is_negative() {
                    Ok(c.to_integer())
                } else {
                    Err(Error::Series(format!("coefficient {c} is not a dimension")))
                }
            })
            .collect()
    }
}

fn pow(b: i64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(b), e as usize)
}

/// Dimension of the family's arity-`n` component from its closed form.
pub fn dim_formula(family: Family, gamma: u32, n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::ArityTooSmall { min: 1, got: 0 });
    }
    let g = gamma as i64;
    Ok(match family {
        Family::DendrClassical | Family::DendrHarpoon | Family::DendrStd | Family::Dup => {
            if family == Family::DendrClassical && gamma != 1 {
                return Err(Error::Invalid("the classical family exists for gamma = 1 only".into()));
            }
            pow(g, n - 1) * BigInt::from(catalan(n))
        }
        Family::As | Family::AsTriangle => {
            if n == 1 {
                BigInt::one()
            } else {
                BigInt::from(g)
            }
        }
        Family::DAsLozenge | Family::DAsDiamond => {
            if n == 1 {
                BigInt::one()
            } else {
                let mut s = BigInt::zero();
                for k in 0..=n - 2 {
                    s += pow(g, k + 1) * pow(g - 1, n - k - 2) * BigInt::from(narayana(n - 1, k)?);
                }
                s
            }
        }
        Family::TDendr => {
            let mut s = BigInt::zero();
            for k in 0..n {
                s += pow(g + 1, k) * pow(g, n - k - 1) * BigInt::from(narayana(n, k)?);
            }
            s
        }
        Family::Dias => BigInt::from(n) * pow(g, n - 1),
        Family::D | Family::Trias => {
            return Err(Error::Series(format!("no closed dimension formula for {family}")))
        }
    })
}

pub fn dims(family: Family, gamma: u32, order: usize) -> Result<DimSeries> {
    if order == 0 {
        return Err(Error::ArityTooSmall { min: 1, got: 0 });
    }
    let mut s = DimSeries::zero(order);
    for n in 1..=order {
        s.coeffs[n] = Rational::from_integer(dim_formula(family, gamma, n as u64)?);
    }
    Ok(s)
}

/// Solves the family's functional equation `H = F(t, H)` by fixed-point
/// iteration; each pass fixes one more coefficient.
pub fn series_from_equation(family: Family, gamma: u32, order: usize) -> Result<DimSeries> {
    if order == 0 {
        return Err(Error::ArityTooSmall { min: 1, got: 0 });
    }
    let g = gamma as i64;
    let t = DimSeries::t(order);
    let t2 = t.mul(&t);
    let step: Box<dyn Fn(&DimSeries) -> DimSeries> = match family {
        Family::DendrClassical | Family::DendrHarpoon | Family::DendrStd | Family::Dup => {
            Box::new(move |h: &DimSeries| {
                t.add(&t.mul(h).scale(&rat(2 * g))).add(&t.mul(&h.mul(h)).scale(&rat(g * g)))
            })
        }
        Family::As | Family::AsTriangle => {
            Box::new(move |h: &DimSeries| t.add(&t2.scale(&rat(g - 1))).add(&t.mul(h)))
        }
        Family::DAsLozenge | Family::DAsDiamond => {
            Box::new(move |h: &DimSeries| t.add(&t.mul(h)).add(&h.mul(h).scale(&rat(g - 1))))
        }
        Family::TDendr => Box::new(move |h: &DimSeries| {
            t.add(&t.mul(h).scale(&rat(2 * g + 1))).add(&t.mul(&h.mul(h)).scale(&rat(g * (g + 1))))
        }),
        Family::Dias => Box::new(move |h: &DimSeries| {
            t.add(&t.mul(h).scale(&rat(2 * g))).add(&t2.mul(h).scale(&rat(-g * g)))
        }),
        Family::D | Family::Trias => {
            return Err(Error::Series(format!("no functional equation for {family}")))
        }
    };
    let mut h = DimSeries::zero(order);
    for _ in 0..order {
        h = step(&h);
    }
    Ok(h)
}

/// Whether `A(−B(−t)) = t` up to the given order.
pub fn check_koszul_inverse(a: &DimSeries, b: &DimSeries, order: usize) -> Result<bool> {
    for s in [a, b] {
        if !s.coeff(0).is_zero() {
            return Err(Error::Series("nonzero constant term".into()));
        }
        if s.order() < order {
            return Err(Error::Series(format!("series known only to order {}", s.order())));
        }
        if order >= 1 && !s.coeff(1).is_one() {
            return Err(Error::Series("linear coefficient must be 1".into()));
        }
    }
    let comp = a.truncate(order).compose(&b.truncate(order).alternate())?;
    Ok(comp == DimSeries::t(order))
}
