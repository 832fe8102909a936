//! Quadrilateral basis on `[0,1]²`.

use crate::error::Result;
use crate::field::VectorField;
use crate::geometry::{ElementKind, ReferenceElement};
use crate::poly::rat;
use crate::poly1d::{compose, PolyFamilyCache};

use super::{check_order, max_order, shifted, BasisFunction, BasisSet, Category, Entity};

/// `½ λ_e curl ζ_e` for the four edges.
pub fn build_edge_lowest(elem: &ReferenceElement) -> Result<Vec<BasisFunction>> {
    elem.edges
        .iter()
        .map(|e| {
            let ext = e.extension.as_ref().expect("tensor edge");
            let f = VectorField::curl2d(&e.param)?
                .mul_poly(ext)
                .scale_rational(&rat(1, 2));
            Ok(BasisFunction::new(
                Category::EdgeLowest,
                Entity::Edge(e.id),
                vec![],
                f,
            ))
        })
        .collect()
}

/// `curl(λ_e L_{j+2}(ζ_e))`, `0 ≤ j < p`, edge by edge.
pub fn build_edge_higher(
    elem: &ReferenceElement,
    p: usize,
    cache: &PolyFamilyCache,
) -> Result<Vec<BasisFunction>> {
    let mut out = Vec::with_capacity(4 * p);
    for e in &elem.edges {
        let ext = e.extension.as_ref().expect("tensor edge");
        for j in 0..p {
            let l = compose(&cache.integrated_legendre(j + 2)?, &e.param);
            let f = VectorField::curl2d(&(ext * &l))?;
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

/// Interior families: curls (T1), paired components (T2), single
/// components (T3), all with arguments `2ξ−1`, `2η−1`.
pub fn build_interior(p: usize, cache: &PolyFamilyCache) -> Result<Vec<BasisFunction>> {
    let (x, y) = (shifted(2, 0), shifted(2, 1));
    let mut lx = Vec::new();
    let mut ly = Vec::new();
    let mut dx = Vec::new();
    let mut dy = Vec::new();
    for i in 0..p {
        let big = cache.integrated_legendre(i + 2)?;
        let small = cache.legendre(i + 1);
        lx.push(compose(&big, &x));
        ly.push(compose(&big, &y));
        dx.push(compose(&small, &x));
        dy.push(compose(&small, &y));
    }
    let mut out = Vec::with_capacity(2 * p * (p + 1));
    for i in 0..p {
        for j in 0..p {
            let f = VectorField::curl2d(&(&lx[i] * &ly[j]))?;
            out.push(BasisFunction::new(
                Category::InteriorT1,
                Entity::Cell,
                vec![i, j],
                f,
            ));
        }
    }
    for i in 0..p {
        for j in 0..p {
            let f = VectorField::from_components(vec![&lx[i] * &dy[j], &dx[i] * &ly[j]]);
            out.push(BasisFunction::new(
                Category::InteriorT2,
                Entity::Cell,
                vec![i, j],
                f,
            ));
        }
    }
    for (i, l) in lx.iter().enumerate() {
        out.push(BasisFunction::new(
            Category::InteriorT3Xi,
            Entity::Cell,
            vec![i],
            VectorField::axis(l, 0),
        ));
    }
    for (i, l) in ly.iter().enumerate() {
        out.push(BasisFunction::new(
            Category::InteriorT3Eta,
            Entity::Cell,
            vec![i],
            VectorField::axis(l, 1),
        ));
    }
    Ok(out)
}

pub fn build_set(p: usize) -> Result<BasisSet> {
    check_order("quad basis", p, 1, max_order(ElementKind::Quad))?;
    let elem = ReferenceElement::new(ElementKind::Quad);
    let cache = PolyFamilyCache::new();
    let mut f = build_edge_lowest(&elem)?;
    f.extend(build_edge_higher(&elem, p, &cache)?);
    f.extend(build_interior(p, &cache)?);
    Ok(BasisSet::new(ElementKind::Quad, p, None, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, MPoly};

    #[test]
    fn rt0_worked_values() {
        let elem = ReferenceElement::new(ElementKind::Quad);
        let f = build_edge_lowest(&elem).unwrap();
        let one = MPoly::one(2);
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        assert_eq!(f[0].field.unscaled(), vec![MPoly::zero(2), -&(&one - &y)]);
        assert_eq!(f[1].field.unscaled(), vec![x.clone(), MPoly::zero(2)]);
        assert_eq!(f[2].field.unscaled(), vec![MPoly::zero(2), y.clone()]);
        assert_eq!(f[3].field.unscaled(), vec![-&(&one - &x), MPoly::zero(2)]);
        for g in &f {
            assert_eq!(
                g.field.divergence().unwrap().as_rational().unwrap(),
                MPoly::constant(2, int(1))
            );
        }
    }

    #[test]
    fn set_sizes() {
        assert_eq!(build_set(1).unwrap().dimension(), 12);
        assert_eq!(build_set(3).unwrap().dimension(), 40);
        assert_eq!(
            build_interior(2, &PolyFamilyCache::new()).unwrap().len(),
            12
        );
        assert!(build_set(0).is_err());
        assert!(build_set(7).is_err());
    }
}
