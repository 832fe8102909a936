//! Divergence control by one extra interior bubble.
//!
//! The scalar `C_χ` multiplying the bubble `χ_b` of order
//! `q = max(m, p+1)` is chosen to minimize `‖div(u_h + C_χ χ_b)‖_{L²}`:
//! `C_χ = −⟨div u_h, div χ_b⟩ / ⟨div χ_b, div χ_b⟩`. A pointwise condition
//! `div(C_χ χ_b) = 0` only admits `C_χ = 0`, and a single scalar cannot
//! cancel a general divergence, so the residual is reported alongside.

use serde::Serialize;

use crate::assembly::{gram, Path, SymmetricMatrix};
use crate::basis::{tet, tri, BasisSet};
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::geometry::{ElementKind, ReferenceElement};
use crate::poly::MPoly;
use crate::poly1d::{compose, PolyFamilyCache};

/// Lowest admissible bubble order for each element (`m` in
/// `q = max(m, p+1)`).
pub fn minimal_order(kind: ElementKind) -> usize {
    match kind {
        ElementKind::Quad | ElementKind::Hex => 2,
        ElementKind::Tri => 3,
        ElementKind::Tet => 4,
    }
}

pub fn bubble_order(kind: ElementKind, p: usize) -> usize {
    minimal_order(kind).max(p + 1)
}

/// The order-`q` interior bubble used to augment an order-`p` set.
///
/// Tensor elements use `L_{q+1}` along the component direction and `L_2`
/// across it; simplexes use the lowest-index instance of their interior
/// bubble family of order `q`, summed over the Cartesian directions.
pub fn bubble_for(kind: ElementKind, p: usize) -> Result<VectorField> {
    if p == 0 {
        return Err(Error::OrderOutOfRange {
            what: "bubble".into(),
            order: p,
            min: 1,
            max: usize::MAX,
        });
    }
    let q = bubble_order(kind, p);
    let cache = PolyFamilyCache::new();
    let elem = ReferenceElement::new(kind);
    let d = kind.dim();
    match kind {
        ElementKind::Quad | ElementKind::Hex => {
            let high = cache.integrated_legendre(q + 1)?;
            let low = cache.integrated_legendre(2)?;
            let comps = (0..d)
                .map(|dir| {
                    (0..d).fold(MPoly::one(d), |acc, v| {
                        let arg = &MPoly::var(d, v).scale(&crate::poly::int(2)) - &MPoly::one(d);
                        let l = if v == dir { &high } else { &low };
                        &acc * &compose(l, &arg)
                    })
                })
                .collect();
            Ok(VectorField::from_components(comps))
        }
        ElementKind::Tri => {
            let (s, c) = tri::bubble_scalar(&elem, q - 3, 0, &cache)?;
            Ok(VectorField::along(&s, &[1, 1]).scaled(&c))
        }
        ElementKind::Tet => {
            let f = tet::build_interior_bubble(&elem, q, &cache)?
                .into_iter()
                .find(|f| f.indices == [q - 4, 0, 0])
                .expect("bubble present for q ≥ 4");
            let s = f.field.component(0).into_field();
            let mut out = VectorField::zero(3, 3);
            for dir in 0..3 {
                let mut comps = vec![MPoly::zero(3); 3];
                comps[dir] = MPoly::one(3);
                out = &out + &s_times(&s, &comps);
            }
            Ok(out)
        }
    }
}

/// `s · v` for a scalar surd field `s` and a polynomial vector `v`.
fn s_times(s: &VectorField, v: &[MPoly]) -> VectorField {
    let mut out = VectorField::zero(s.nvars(), v.len());
    for part in s.parts() {
        let comps = v.iter().map(|c| c * &part.components[0]).collect();
        out = &out + &VectorField::from_part(part.radicand, comps);
    }
    out
}

/// A coefficient vector over a list of exact fields.
#[derive(Clone, Debug)]
pub struct DiscreteField {
    pub kind: ElementKind,
    pub order: usize,
    pub fields: Vec<VectorField>,
    pub coefficients: Vec<f64>,
}

impl DiscreteField {
    pub fn from_set(set: &BasisSet, coefficients: Vec<f64>) -> Result<Self> {
        Self::from_fields(set.kind, set.order, set.fields(), coefficients)
    }

    pub fn from_fields(
        kind: ElementKind,
        order: usize,
        fields: Vec<VectorField>,
        coefficients: Vec<f64>,
    ) -> Result<Self> {
        if coefficients.len() != fields.len() {
            return Err(Error::CoefficientLength {
                expected: fields.len(),
                found: coefficients.len(),
            });
        }
        Ok(DiscreteField {
            kind,
            order,
            fields,
            coefficients,
        })
    }

    fn divergences(&self) -> Result<Vec<VectorField>> {
        self.fields
            .iter()
            .map(|f| Ok(f.divergence()?.into_field()))
            .collect()
    }
}

fn quadratic_form(g: &SymmetricMatrix, c: &[f64]) -> f64 {
    let mut s = 0.0;
    for (i, ci) in c.iter().enumerate() {
        for (j, cj) in c.iter().enumerate() {
            s += ci * g.get(i, j) * cj;
        }
    }
    s
}

/// `‖div u_h‖_{L²}` from the exactly integrated divergence Gram matrix.
pub fn divergence_norm(field: &DiscreteField) -> Result<f64> {
    let g = gram(&field.divergences()?, field.kind, Path::Exact)?;
    Ok(quadratic_form(&g, &field.coefficients).max(0.0).sqrt())
}

#[derive(Clone, Debug, Serialize)]
pub struct AugmentationResult {
    pub bubble_order: usize,
    pub coefficient: f64,
    pub before: f64,
    pub after: f64,
    /// Degree of `div(u_h + C_χ χ_b)` as a polynomial.
    pub residual_degree: u32,
    /// `⟨div u_h, div χ_b⟩` and `‖div χ_b‖²`.
    pub numerator: f64,
    pub denominator: f64,
    pub warning: Option<String>,
}

impl AugmentationResult {
    /// `d/dC ‖div(u_h + C χ_b)‖²` at `C`.
    pub fn derivative_at(&self, c: f64) -> f64 {
        2.0 * (self.numerator + c * self.denominator)
    }

    /// `‖div(u_h + C χ_b)‖` for any `C`.
    pub fn norm_at(&self, c: f64) -> f64 {
        (self.before * self.before + 2.0 * c * self.numerator + c * c * self.denominator)
            .max(0.0)
            .sqrt()
    }
}

pub fn augment(field: &DiscreteField, p: usize) -> Result<AugmentationResult> {
    let chi = bubble_for(field.kind, p)?;
    let mut divs = field.divergences()?;
    let div_chi = chi.divergence()?.into_field();
    divs.push(div_chi.clone());
    let g = gram(&divs, field.kind, Path::Exact)?;
    let n = field.coefficients.len();
    let numerator: f64 = field
        .coefficients
        .iter()
        .enumerate()
        .map(|(i, c)| c * g.get(i, n))
        .sum();
    let denominator = g.get(n, n);
    let (coefficient, warning) = if denominator > 0.0 {
        (-numerator / denominator, None)
    } else {
        (
            0.0,
            Some("bubble divergence vanishes; no augmentation".to_string()),
        )
    };
    let mut ext = field.coefficients.clone();
    ext.push(coefficient);
    let before_sq = quadratic_form(
        &g.submatrix(&(0..n).collect::<Vec<_>>()),
        &field.coefficients,
    )
    .max(0.0);
    // ‖div(u_h + Cχ)‖² = ‖div u_h‖² − ⟨div u_h, div χ⟩²/‖div χ‖² at the minimizer.
    let drop = if warning.is_none() {
        numerator * numerator / denominator
    } else {
        0.0
    };
    let (before, after) = (before_sq.sqrt(), (before_sq - drop).max(0.0).sqrt());
    let residual_degree = divs
        .iter()
        .zip(&ext)
        .filter(|(d, c)| **c != 0.0 && !d.is_zero())
        .map(|(d, _)| d.degree())
        .max()
        .unwrap_or(0);
    Ok(AugmentationResult {
        bubble_order: bubble_order(field.kind, p),
        coefficient,
        before,
        after,
        residual_degree,
        numerator,
        denominator,
        warning,
    })
}
