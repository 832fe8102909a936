//! Triangular basis on the unit 2-simplex.

use crate::error::Result;
use crate::field::VectorField;
use crate::geometry::{norm_inverse, ElementKind, ReferenceElement};
use crate::poly::MPoly;
use crate::poly1d::{compose, compose2, PolyFamilyCache};
use crate::surd::Surd;

use super::{check_order, max_order, BasisFunction, BasisSet, Category, Entity};

/// Lowest-order `λ_{k2} curl λ_{k1} − λ_{k1} curl λ_{k2}` plus the
/// divergence-free `curl L^s_{j+2}(λ_{k2}−λ_{k1}, λ_{k1}+λ_{k2})`.
pub fn build_edge(
    elem: &ReferenceElement,
    p: usize,
    cache: &PolyFamilyCache,
) -> Result<Vec<BasisFunction>> {
    let lam = &elem.lambda;
    let mut out = Vec::with_capacity(3 * (p + 1));
    for e in &elem.edges {
        let (k1, k2) = e.endpoints;
        let a = VectorField::curl2d(&lam[k1])?.mul_poly(&lam[k2]);
        let b = VectorField::curl2d(&lam[k2])?.mul_poly(&lam[k1]);
        out.push(BasisFunction::new(
            Category::EdgeN0,
            Entity::Edge(e.id),
            vec![],
            &a - &b,
        ));
    }
    for e in &elem.edges {
        let (k1, k2) = e.endpoints;
        let t = &lam[k1] + &lam[k2];
        for j in 0..p {
            let s = compose2(&cache.scaled_integrated_legendre(j + 2)?, &e.param, &t);
            let f = VectorField::curl2d(&s)?;
            out.push(BasisFunction::new(
                Category::EdgeHigher,
                Entity::Edge(e.id),
                vec![j],
                f,
            ));
        }
    }
    Ok(out)
}

pub(crate) fn edge_interior_constant(i: usize) -> Surd {
    let i = i as u64;
    Surd::sqrt_int(2 * (i + 2) * (i + 3) * (2 * i + 3) * (2 * i + 5))
}

/// Tangential edge-based interior functions
/// `C_i λ_{k1} λ_{k2} HP_i^{(0,2)}(λ_{k1}, 1−λ_{k2}) τ/|τ|`, `0 ≤ i ≤ p−2`.
///
/// The Jacobi factor takes `λ_{k1}` and `1−λ_{k2}`; see the crate README
/// for why this orientation is used.
pub fn build_edge_interior(
    elem: &ReferenceElement,
    p: usize,
    cache: &PolyFamilyCache,
) -> Result<Vec<BasisFunction>> {
    let lam = &elem.lambda;
    let one = MPoly::one(2);
    let mut out = Vec::new();
    for e in &elem.edges {
        let (k1, k2) = e.endpoints;
        let unit = norm_inverse(&e.tangent);
        let bubble = &lam[k1] * &lam[k2];
        let b = &one - &lam[k2];
        for i in 0..p.saturating_sub(1) {
            let h = compose2(&cache.homogenized_jacobi(i, 0, 2)?, &lam[k1], &b);
            let s = &bubble * &h;
            let f = VectorField::from_components(e.tangent.iter().map(|t| s.scale(t)).collect())
                .scaled(&edge_interior_constant(i).mul(&unit));
            out.push(BasisFunction::new(
                Category::EdgeInterior,
                Entity::Edge(e.id),
                vec![i],
                f,
            ));
        }
    }
    Ok(out)
}

pub(crate) fn bubble_constant(m: usize, n: usize) -> Surd {
    let (m, n) = (m as u64, n as u64);
    let num =
        (m + 3) * (m + 4) * (2 * m + 5) * (2 * m + n + 6) * (2 * m + n + 7) * (2 * m + 2 * n + 8);
    let den = (m + 1) * (m + 2) * (n + 1) * (n + 2);
    Surd::sqrt_ratio(num, den)
}

/// Scalar factor of the interior bubble of indices `(m, n)`, including
/// its normalization.
pub fn bubble_scalar(
    elem: &ReferenceElement,
    m: usize,
    n: usize,
    cache: &PolyFamilyCache,
) -> Result<(MPoly, Surd)> {
    let lam = &elem.lambda;
    let one = MPoly::one(2);
    let cube = &(&lam[0] * &lam[1]) * &lam[2];
    let hm = compose2(
        &cache.homogenized_jacobi(m, 2, 2)?,
        &lam[1],
        &(&one - &lam[0]),
    );
    let arg = &lam[0].scale(&crate::poly::int(2)) - &one;
    let pn = compose(&cache.jacobi(n, 2 * m as i64 + 5, 2)?, &arg);
    Ok((&(&cube * &hm) * &pn, bubble_constant(m, n)))
}

/// Interior bubbles, `m + n ≤ p−3`, each in both Cartesian directions.
pub fn build_interior_bubble(
    elem: &ReferenceElement,
    p: usize,
    cache: &PolyFamilyCache,
) -> Result<Vec<BasisFunction>> {
    let mut out = Vec::new();
    if p < 3 {
        return Ok(out);
    }
    for m in 0..=p - 3 {
        for n in 0..=p - 3 - m {
            let (s, c) = bubble_scalar(elem, m, n, cache)?;
            for dir in 0..2 {
                let f = VectorField::axis(&s, dir).scaled(&c);
                out.push(
                    BasisFunction::new(Category::InteriorBubble, Entity::Cell, vec![m, n], f)
                        .with_direction(dir),
                );
            }
        }
    }
    Ok(out)
}

pub fn build_set(p: usize) -> Result<BasisSet> {
    check_order("tri basis", p, 1, max_order(ElementKind::Tri))?;
    let elem = ReferenceElement::new(ElementKind::Tri);
    let cache = PolyFamilyCache::new();
    let mut f = build_edge(&elem, p, &cache)?;
    f.extend(build_edge_interior(&elem, p, &cache)?);
    f.extend(build_interior_bubble(&elem, p, &cache)?);
    Ok(BasisSet::new(ElementKind::Tri, p, None, f))
}

pub(crate) fn orthonormal_groups(set: &BasisSet) -> Vec<(String, Vec<usize>)> {
    let mut out = Vec::new();
    for e in 1..=3 {
        let idx =
            set.indices_of(|f| f.category == Category::EdgeInterior && f.entity == Entity::Edge(e));
        if !idx.is_empty() {
            out.push((format!("edge-interior e{e}"), idx));
        }
    }
    for dir in 0..2 {
        let idx =
            set.indices_of(|f| f.category == Category::InteriorBubble && f.direction == Some(dir));
        if !idx.is_empty() {
            out.push((format!("interior-bubble dir{}", dir + 1), idx));
        }
    }
    out
}
