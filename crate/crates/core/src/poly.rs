//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Every scalar quantity in the crate (barycentric and bilinear vertex
//! functions, edge and face parameters, the 1-D polynomial families, the
//! components of each basis function) is an [`MPoly`] in at most three
//! variables `(ξ, η, ζ)`. Arithmetic and calculus are exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::geometry::{ElementKind, Facet};

pub type Rational = BigRational;

pub const MAX_DIM: usize = 3;

/// Shorthand for the rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exponent tuple. Slots beyond the owning polynomial's dimension stay zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub [u16; MAX_DIM]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_DIM])
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; MAX_DIM];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn times(self, other: Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    dim: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "polynomial dimension {dim}");
        MPoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::from_terms(dim, [(Monomial::one(), c)])
    }

    /// The coordinate function `x_i`.
    pub fn var(dim: usize, i: usize) -> Self {
        assert!(i < dim, "variable {i} in a {dim}-variate polynomial");
        Self::from_terms(dim, [(Monomial::var(i), Rational::one())])
    }

    /// Affine form `c + Σ a_i x_i` from integer coefficients.
    pub fn affine(dim: usize, c: i64, a: &[i64]) -> Self {
        let mut p = Self::constant(dim, int(c));
        for (i, &ai) in a.iter().enumerate() {
            p.add_term(Monomial::var(i), int(ai));
        }
        p
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(dim);
        for (m, c) in terms {
            debug_assert!(m.0[dim..].iter().all(|&e| e == 0));
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; the zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(var) as u32)
            .max()
            .unwrap_or(0)
    }

    /// Returns the constant value if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    fn check_dim(&self, other: &MPoly) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check_dim(other)?;
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.times(*mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(MPoly {
            dim: self.dim,
            terms: acc,
        })
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.dim);
        }
        MPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut out = MPoly::one(self.dim);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Formal partial derivative with respect to `x_var`.
    pub fn partial(&self, var: usize) -> Result<MPoly> {
        if var >= self.dim {
            return Err(Error::VariableOutOfRange {
                index: var,
                dim: self.dim,
            });
        }
        let mut out = MPoly::zero(self.dim);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut dm = *m;
            dm.0[var] -= 1;
            out.add_term(dm, c * int(e as i64));
        }
        Ok(out)
    }

    pub fn gradient(&self) -> VectorField {
        VectorField::from_components(
            (0..self.dim)
                .map(|i| self.partial(i).expect("index within dimension"))
                .collect(),
        )
    }

    /// Composition `a(f_0, …, f_{d-1})`, one form per variable of `self`.
    ///
    /// The forms may live in a different number of variables than `self`;
    /// they only need to agree with each other.
    pub fn substitute(&self, forms: &[MPoly]) -> Result<MPoly> {
        if forms.len() != self.dim {
            return Err(Error::ArityMismatch {
                expected: self.dim,
                found: forms.len(),
            });
        }
        let target = forms[0].dim;
        if let Some(bad) = forms.iter().find(|f| f.dim != target) {
            return Err(Error::DimensionMismatch {
                left: target,
                right: bad.dim,
            });
        }
        let mut powers: Vec<Vec<MPoly>> = forms
            .iter()
            .map(|f| vec![MPoly::one(f.dim), f.clone()])
            .collect();
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut term = MPoly::constant(target, c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.0[i] as usize;
                while pw.len() <= e {
                    let next = &pw[pw.len() - 1] * &forms[i];
                    pw.push(next);
                }
                if e > 0 {
                    term = &term * &pw[e];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.dim);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.0[i];
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.dim);
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = rational_to_f64(c);
                for (i, x) in point.iter().enumerate() {
                    t *= x.powi(m.0[i] as i32);
                }
                t
            })
            .sum()
    }

    /// Exact integral over the reference domain of `kind`.
    ///
    /// Simplexes use `∫ ξ^a η^b ζ^c = a! b! c! / (a+b+c+d)!`; the unit square
    /// and cube integrate each factor as `1/(a+1)`.
    pub fn integrate(&self, kind: ElementKind) -> Result<Rational> {
        if kind.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: kind.dim(),
                right: self.dim,
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            acc += c * monomial_integral(m, kind);
        }
        Ok(acc)
    }

    /// Pull back onto the facet's own coordinates.
    pub fn restrict(&self, facet: &Facet) -> Result<MPoly> {
        if facet.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: facet.ambient_dim(),
                right: self.dim,
            });
        }
        self.substitute(&facet.coordinate_forms())
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Lift a univariate polynomial into `dim` variables, in variable `var`.
    pub fn lift(&self, dim: usize, var: usize) -> MPoly {
        assert_eq!(self.dim, 1);
        let mut out = MPoly::zero(dim);
        for (m, c) in &self.terms {
            let mut e = [0; MAX_DIM];
            e[var] = m.0[0];
            out.add_term(Monomial(e), c.clone());
        }
        out
    }
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub(crate) fn monomial_integral(m: &Monomial, kind: ElementKind) -> Rational {
    let d = kind.dim();
    if kind.is_simplex() {
        let num = m.0[..d]
            .iter()
            .fold(BigInt::one(), |acc, &e| acc * factorial(e as u32));
        Rational::new(num, factorial(m.degree() + d as u32))
    } else {
        let den = m.0[..d]
            .iter()
            .fold(BigInt::one(), |acc, &e| acc * BigInt::from(e as u32 + 1));
        Rational::new(BigInt::one(), den)
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back on a scaled division when either part overflows f64.
        let shift = r.numer().bits().max(r.denom().bits()) as i64 - 1000;
        let (n, d) = if shift > 0 {
            (r.numer() >> shift as usize, r.denom() >> shift as usize)
        } else {
            (r.numer().clone(), r.denom().clone())
        };
        n.to_f64().unwrap_or(f64::NAN) / d.to_f64().unwrap_or(f64::NAN)
    })
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.checked_add(rhs).expect("polynomial dimensions agree")
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.checked_sub(rhs).expect("polynomial dimensions agree")
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.checked_mul(rhs).expect("polynomial dimensions agree")
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rational::one())
    }
}

const VAR_NAMES: [&str; 3] = ["x", "y", "z"];

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest degree first reads more naturally.
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let a = c.abs();
            let is_one = m.degree() == 0;
            if !a.is_one() || is_one {
                write!(f, "{a}")?;
            }
            let mut first = a.is_one();
            for (i, &e) in m.0[..self.dim].iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                let name = if self.dim == 1 { "x" } else { VAR_NAMES[i] };
                if e == 1 {
                    write!(f, "{name}")?;
                } else {
                    write!(f, "{name}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]({})", self.dim, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x2() -> MPoly {
        MPoly::var(2, 0)
    }
    fn y2() -> MPoly {
        MPoly::var(2, 1)
    }

    #[test]
    fn sum_cancels() {
        let a = &x2() + &y2();
        let b = &x2() - &y2();
        assert_eq!(&a + &b, x2().scale(&int(2)));
    }

    #[test]
    fn bilinear_expansion() {
        let one = MPoly::one(2);
        let p = &(&one - &x2()) * &(&one - &y2());
        let expected = MPoly::affine(2, 1, &[-1, -1]);
        assert_eq!(p, &expected + &(&x2() * &y2()));
    }

    #[test]
    fn scale_by_half() {
        let p = x2().pow(2).scale(&rat(1, 2));
        assert_eq!(p.coefficient(&Monomial([2, 0, 0])), rat(1, 2));
        assert_eq!(p.num_terms(), 1);
    }

    #[test]
    fn mismatched_dimensions_are_rejected() {
        let a = MPoly::var(2, 0);
        let b = MPoly::var(3, 0);
        assert!(matches!(
            a.checked_add(&b),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn partial_derivatives() {
        let p = &x2().pow(2) * &y2();
        assert_eq!(p.partial(0).unwrap(), (&x2() * &y2()).scale(&int(2)));
        assert!(MPoly::constant(2, int(7)).partial(1).unwrap().is_zero());
        assert!(p.partial(2).is_err());
    }

    #[test]
    fn gradient_of_bilinear_vertex_function() {
        let one = MPoly::one(2);
        let l1 = &(&one - &x2()) * &(&one - &y2());
        let g = l1.gradient();
        let c = g.single_components().unwrap();
        assert_eq!(c[0], -&(&one - &y2()));
        assert_eq!(c[1], -&(&one - &x2()));
    }

    #[test]
    fn affine_substitution() {
        let t = MPoly::var(1, 0);
        let sq = t.pow(2);
        let form = MPoly::affine(1, -1, &[2]);
        let out = sq.substitute(std::slice::from_ref(&form)).unwrap();
        assert_eq!(
            out,
            MPoly::from_terms(
                1,
                [
                    (Monomial([2, 0, 0]), int(4)),
                    (Monomial([1, 0, 0]), int(-4)),
                    (Monomial::one(), int(1)),
                ]
            )
        );
        let c = MPoly::constant(1, rat(3, 7));
        assert_eq!(c.substitute(&[form]).unwrap(), c);
        assert!(matches!(
            sq.substitute(&[]),
            Err(Error::ArityMismatch {
                expected: 1,
                found: 0
            })
        ));
    }

    #[test]
    fn reference_integrals() {
        let one2 = MPoly::one(2);
        assert_eq!(one2.integrate(ElementKind::Quad).unwrap(), int(1));
        assert_eq!(one2.integrate(ElementKind::Tri).unwrap(), rat(1, 2));
        assert_eq!(
            MPoly::one(3).integrate(ElementKind::Tet).unwrap(),
            rat(1, 6)
        );
        assert_eq!(MPoly::one(3).integrate(ElementKind::Hex).unwrap(), int(1));
        let l0 = MPoly::affine(2, 1, &[-1, -1]);
        let p = &(&l0 * &x2()) * &y2();
        assert_eq!(p.integrate(ElementKind::Tri).unwrap(), rat(1, 120));
        assert!(p.integrate(ElementKind::Tet).is_err());
    }

    #[test]
    fn display_is_readable() {
        let p = &x2().pow(2).scale(&rat(3, 2)) - &MPoly::one(2);
        assert_eq!(p.to_string(), "3/2*x^2 - 1");
    }
}
