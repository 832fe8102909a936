//! Vector fields with exact polynomial components.
//!
//! A field is stored as `Σ_s √s · (P_s1, …, P_sn)` over distinct square-free
//! radicands `s`, each part holding rational polynomials. Normalization
//! constants such as `√(3(2i+4)(2i+5))` therefore stay exact, and because
//! the `√s` are linearly independent over the rationals a field is zero iff
//! every part is zero. Most fields have a single part.

use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::{ElementKind, Facet};
use crate::poly::{MPoly, Rational};
use crate::surd::Surd;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub radicand: u64,
    pub components: Vec<MPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    nvars: usize,
    len: usize,
    parts: Vec<Part>,
}

impl VectorField {
    pub fn zero(nvars: usize, len: usize) -> Self {
        VectorField {
            nvars,
            len,
            parts: Vec::new(),
        }
    }

    pub fn from_components(components: Vec<MPoly>) -> Self {
        assert!(
            !components.is_empty(),
            "a field needs at least one component"
        );
        Self::from_part(1, components)
    }

    /// `√radicand · components`; the radicand must already be square-free.
    pub fn from_part(radicand: u64, components: Vec<MPoly>) -> Self {
        let nvars = components[0].dim();
        assert!(components.iter().all(|c| c.dim() == nvars));
        let len = components.len();
        Self::from_parts(
            nvars,
            len,
            vec![Part {
                radicand,
                components,
            }],
        )
    }

    fn from_parts(nvars: usize, len: usize, parts: Vec<Part>) -> Self {
        let mut out = VectorField::zero(nvars, len);
        for p in parts {
            out.merge_part(p);
        }
        out
    }

    fn merge_part(&mut self, part: Part) {
        debug_assert_eq!(part.components.len(), self.len);
        match self
            .parts
            .binary_search_by_key(&part.radicand, |p| p.radicand)
        {
            Ok(i) => {
                let existing = &mut self.parts[i];
                for (a, b) in existing.components.iter_mut().zip(&part.components) {
                    *a = &*a + b;
                }
                if existing.components.iter().all(MPoly::is_zero) {
                    self.parts.remove(i);
                }
            }
            Err(i) => {
                if part.components.iter().any(|c| !c.is_zero()) {
                    self.parts.insert(i, part);
                }
            }
        }
    }

    /// Scalar polynomial times a constant integer vector.
    pub fn along(s: &MPoly, direction: &[i64]) -> Self {
        Self::from_components(
            direction
                .iter()
                .map(|&d| s.scale(&Rational::from_integer(BigInt::from(d))))
                .collect(),
        )
    }

    /// Standard unit vector `e_axis` in `nvars` dimensions scaled by `s`.
    pub fn axis(s: &MPoly, axis: usize) -> Self {
        let mut dir = vec![0; s.dim()];
        dir[axis] = 1;
        Self::along(s, &dir)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// Components of a field with no irrational factor.
    pub fn single_components(&self) -> Option<&[MPoly]> {
        match self.parts.as_slice() {
            [p] if p.radicand == 1 => Some(&p.components),
            _ => None,
        }
    }

    /// The polynomial parts, ignoring their surd factors. For a single-part
    /// field these span the same line as the field itself.
    pub fn unscaled(&self) -> Vec<MPoly> {
        match self.parts.as_slice() {
            [] => vec![MPoly::zero(self.nvars); self.len],
            [p] => p.components.clone(),
            _ => panic!("unscaled() on a field with several surd parts"),
        }
    }

    pub fn scaled(&self, s: &Surd) -> VectorField {
        let parts = self
            .parts
            .iter()
            .map(|p| {
                let prod = Surd {
                    coeff: Rational::one(),
                    radicand: p.radicand,
                }
                .mul(s);
                Part {
                    radicand: prod.radicand,
                    components: p.components.iter().map(|c| c.scale(&prod.coeff)).collect(),
                }
            })
            .collect();
        Self::from_parts(self.nvars, self.len, parts)
    }

    pub fn scale_rational(&self, c: &Rational) -> VectorField {
        self.map_polys(|p| p.scale(c))
    }

    /// Multiply every component by a scalar polynomial.
    pub fn mul_poly(&self, s: &MPoly) -> VectorField {
        self.map_polys(|p| p * s)
    }

    fn map_polys<F: Fn(&MPoly) -> MPoly>(&self, f: F) -> VectorField {
        let parts = self
            .parts
            .iter()
            .map(|p| Part {
                radicand: p.radicand,
                components: p.components.iter().map(&f).collect(),
            })
            .collect();
        Self::from_parts(self.nvars, self.len, parts)
    }

    fn map_parts<F: Fn(&[MPoly]) -> Vec<MPoly>>(
        &self,
        nvars: usize,
        len: usize,
        f: F,
    ) -> VectorField {
        let parts = self
            .parts
            .iter()
            .map(|p| Part {
                radicand: p.radicand,
                components: f(&p.components),
            })
            .collect();
        Self::from_parts(nvars, len, parts)
    }

    /// Componentwise `f(forms)`; the forms share a variable count, which
    /// becomes the new `nvars`.
    pub fn substitute(&self, forms: &[MPoly]) -> Result<VectorField> {
        if forms.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: forms.len(),
            });
        }
        let nvars = forms[0].dim();
        if let Some(bad) = forms.iter().find(|f| f.dim() != nvars) {
            return Err(Error::DimensionMismatch {
                left: nvars,
                right: bad.dim(),
            });
        }
        Ok(self.map_parts(nvars, self.len, |c| {
            c.iter()
                .map(|ci| ci.substitute(forms).expect("forms checked"))
                .collect()
        }))
    }

    /// Floating-point evaluator of a field re-expanded about a point `c`:
    /// `f(x) = g(x − c)`. High-order Legendre-type factors have large,
    /// alternating monomial coefficients in `x`; about the element centre
    /// they do not, so evaluation loses far fewer digits.
    pub fn centered_evaluator(&self, c: &[Rational]) -> Result<CenteredField> {
        let n = self.nvars;
        let forms: Vec<MPoly> = (0..n)
            .map(|i| &MPoly::var(n, i) + &MPoly::constant(n, c[i].clone()))
            .collect();
        Ok(CenteredField {
            field: self.substitute(&forms)?,
            center: c.iter().map(crate::poly::rational_to_f64).collect(),
        })
    }

    pub fn checked_add(&self, other: &VectorField) -> Result<VectorField> {
        if self.nvars != other.nvars || self.len != other.len {
            return Err(Error::DimensionMismatch {
                left: self.len,
                right: other.len,
            });
        }
        let mut out = self.clone();
        for p in &other.parts {
            out.merge_part(p.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &VectorField) -> Result<VectorField> {
        self.checked_add(&other.scale_rational(&-Rational::one()))
    }

    /// `Σ_k ∂v_k/∂x_k`.
    pub fn divergence(&self) -> Result<SurdPoly> {
        if self.len != self.nvars {
            return Err(Error::DimensionMismatch {
                left: self.len,
                right: self.nvars,
            });
        }
        let n = self.nvars;
        Ok(SurdPoly(self.map_parts(n, 1, |c| {
            let mut acc = MPoly::zero(n);
            for (k, ck) in c.iter().enumerate() {
                acc = &acc + &ck.partial(k).expect("k < nvars");
            }
            vec![acc]
        })))
    }

    /// `[∂u/∂η, −∂u/∂ξ]`.
    pub fn curl2d(u: &MPoly) -> Result<VectorField> {
        if u.dim() != 2 {
            return Err(Error::DimensionMismatch {
                left: 2,
                right: u.dim(),
            });
        }
        Ok(Self::from_components(vec![u.partial(1)?, -&u.partial(0)?]))
    }

    pub fn curl3d(&self) -> Result<VectorField> {
        if self.len != 3 || self.nvars != 3 {
            return Err(Error::DimensionMismatch {
                left: 3,
                right: self.len,
            });
        }
        Ok(self.map_parts(3, 3, |w| {
            let d = |i: usize, j: usize| w[i].partial(j).expect("3-variate");
            vec![
                &d(2, 1) - &d(1, 2),
                &d(0, 2) - &d(2, 0),
                &d(1, 0) - &d(0, 1),
            ]
        }))
    }

    /// Row-major Jacobian `∂v_i/∂x_j`, flattened into `len·nvars` components.
    pub fn jacobian(&self) -> VectorField {
        let n = self.nvars;
        self.map_parts(n, self.len * n, |c| {
            c.iter()
                .flat_map(|ci| (0..n).map(move |j| ci.partial(j).expect("j < nvars")))
                .collect()
        })
    }

    pub fn dot_const(&self, v: &[Rational]) -> SurdPoly {
        assert_eq!(v.len(), self.len);
        let n = self.nvars;
        SurdPoly(self.map_parts(n, 1, |c| {
            let mut acc = MPoly::zero(n);
            for (ci, vi) in c.iter().zip(v) {
                acc = &acc + &ci.scale(vi);
            }
            vec![acc]
        }))
    }

    /// `v × self` for a constant 3-vector `v`.
    pub fn cross_const(&self, v: &[Rational]) -> VectorField {
        assert_eq!(self.len, 3);
        self.map_parts(self.nvars, 3, |w| {
            let t = |a: &Rational, p: &MPoly| p.scale(a);
            vec![
                &t(&v[1], &w[2]) - &t(&v[2], &w[1]),
                &t(&v[2], &w[0]) - &t(&v[0], &w[2]),
                &t(&v[0], &w[1]) - &t(&v[1], &w[0]),
            ]
        })
    }

    pub fn component(&self, i: usize) -> SurdPoly {
        SurdPoly(self.map_parts(self.nvars, 1, |c| vec![c[i].clone()]))
    }

    pub fn restrict(&self, facet: &Facet) -> Result<VectorField> {
        let mut parts = Vec::with_capacity(self.parts.len());
        for p in &self.parts {
            let comps = p
                .components
                .iter()
                .map(|c| c.restrict(facet))
                .collect::<Result<Vec<_>>>()?;
            parts.push(Part {
                radicand: p.radicand,
                components: comps,
            });
        }
        Ok(Self::from_parts(facet.dim(), self.len, parts))
    }

    pub fn eval_f64(&self, point: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.len];
        for p in &self.parts {
            let s = (p.radicand as f64).sqrt();
            for (o, c) in out.iter_mut().zip(&p.components) {
                *o += s * c.eval_f64(point);
            }
        }
        out
    }

    /// Highest total degree over all components.
    pub fn degree(&self) -> u32 {
        self.polys().map(MPoly::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.polys().map(|p| p.degree_in(var)).max().unwrap_or(0)
    }

    fn polys(&self) -> impl Iterator<Item = &MPoly> {
        self.parts.iter().flat_map(|p| p.components.iter())
    }
}

impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        self.checked_add(rhs).expect("field shapes agree")
    }
}

impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        self.checked_sub(rhs).expect("field shapes agree")
    }
}

/// A scalar `Σ √s · P_s`, e.g. a divergence or a normal trace.
#[derive(Clone, Debug)]
pub struct CenteredField {
    field: VectorField,
    center: Vec<f64>,
}

impl CenteredField {
    pub fn eval_f64(&self, point: &[f64]) -> Vec<f64> {
        let t: Vec<f64> = point.iter().zip(&self.center).map(|(x, c)| x - c).collect();
        self.field.eval_f64(&t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurdPoly(VectorField);

impl SurdPoly {
    pub fn from_poly(p: MPoly) -> Self {
        SurdPoly(VectorField::from_components(vec![p]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn nvars(&self) -> usize {
        self.0.nvars
    }

    /// `(radicand, polynomial)` pairs.
    pub fn parts(&self) -> impl Iterator<Item = (u64, &MPoly)> {
        self.0.parts.iter().map(|p| (p.radicand, &p.components[0]))
    }

    /// The polynomial if no irrational factor is present.
    pub fn as_rational(&self) -> Option<MPoly> {
        if self.0.is_zero() {
            return Some(MPoly::zero(self.0.nvars));
        }
        self.0.single_components().map(|c| c[0].clone())
    }

    pub fn restrict(&self, facet: &Facet) -> Result<SurdPoly> {
        self.0.restrict(facet).map(SurdPoly)
    }

    pub fn scaled(&self, s: &Surd) -> SurdPoly {
        SurdPoly(self.0.scaled(s))
    }

    pub fn degree(&self) -> u32 {
        self.0.degree()
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.0.eval_f64(point)[0]
    }

    /// Exact integral as one surd per radicand.
    pub fn integrate(&self, kind: ElementKind) -> Result<Vec<Surd>> {
        let mut out = Vec::new();
        for (s, p) in self.parts() {
            let v = p.integrate(kind)?;
            if !v.is_zero() {
                out.push(Surd {
                    coeff: v,
                    radicand: s,
                });
            }
        }
        Ok(out)
    }

    pub fn into_field(self) -> VectorField {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    fn v3(i: usize) -> MPoly {
        MPoly::var(3, i)
    }

    #[test]
    fn divergence_of_identity_map() {
        let f = VectorField::from_components(vec![MPoly::var(2, 0), MPoly::var(2, 1)]);
        assert_eq!(
            f.divergence().unwrap().as_rational().unwrap(),
            MPoly::constant(2, int(2))
        );
    }

    #[test]
    fn curl2d_of_product() {
        let u = &MPoly::var(2, 0) * &MPoly::var(2, 1);
        let c = VectorField::curl2d(&u).unwrap();
        assert_eq!(c.unscaled(), vec![MPoly::var(2, 0), -&MPoly::var(2, 1)]);
        assert!(VectorField::curl2d(&MPoly::constant(2, int(3)))
            .unwrap()
            .is_zero());
        assert!(c.divergence().unwrap().is_zero());
    }

    #[test]
    fn curl3d_examples() {
        let w = VectorField::from_components(vec![MPoly::zero(3), MPoly::zero(3), &v3(0) * &v3(1)]);
        let c = w.curl3d().unwrap();
        assert_eq!(c.unscaled(), vec![v3(0), -&v3(1), MPoly::zero(3)]);
        assert!(c.divergence().unwrap().is_zero());
        let u = &(&v3(0) * &v3(1)) * &v3(2).pow(3);
        assert!(u.gradient().curl3d().unwrap().is_zero());
    }

    #[test]
    fn surd_parts_merge_and_cancel() {
        let x = MPoly::var(2, 0);
        let a = VectorField::axis(&x, 0).scaled(&Surd::sqrt_int(8));
        let b = VectorField::axis(&x, 0).scaled(&Surd::sqrt_int(2));
        let sum = &a - &b.scale_rational(&int(2));
        assert!(sum.is_zero());
        let mixed = &a + &VectorField::axis(&x, 1);
        assert_eq!(mixed.parts().len(), 2);
        assert!(mixed.single_components().is_none());
    }

    #[test]
    fn scaled_values() {
        let f = VectorField::axis(&MPoly::one(2), 1).scaled(&Surd::sqrt_ratio(1, 3));
        let v = f.eval_f64(&[0.3, 0.2]);
        assert_eq!(v[0], 0.0);
        assert!((v[1] - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        let d = f.dot_const(&[int(0), rat(3, 1)]);
        assert_eq!(d.parts().next().unwrap().0, 3);
    }

    #[test]
    fn jacobian_layout() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let f = VectorField::from_components(vec![&x * &y, x.clone()]);
        let j = f.jacobian();
        assert_eq!(j.len(), 4);
        assert_eq!(j.unscaled(), vec![y, x, MPoly::one(2), MPoly::zero(2)]);
    }
}
