//! Hexahedral basis on `[0,1]³`.

use crate::error::Result;
use crate::field::VectorField;
use crate::geometry::{ElementKind, ReferenceElement};
use crate::poly::{int, MPoly};
use crate::poly1d::{compose, PolyFamilyCache};

use super::{check_order, max_order, shifted, BasisFunction, BasisSet, Category, Entity};

/// `λ_f n_f` for the six faces.
pub fn build_face_rt0(elem: &ReferenceElement) -> Vec<BasisFunction> {
    elem.faces
        .iter()
        .map(|f| {
            let ext = f.extension.as_ref().expect("cube face");
            let field =
                VectorField::from_components(f.normal.iter().map(|c| ext.scale(c)).collect());
            BasisFunction::new(Category::FaceRT0, Entity::Face(f.id), vec![], field)
        })
        .collect()
}

/// Curl-type face functions: `p²` of type `(i,j)`, then `p` of type `i`
/// and `p` of type `j`, face by face.
pub fn build_face_higher(
    elem: &ReferenceElement,
    p: usize,
    cache: &PolyFamilyCache,
) -> Result<Vec<BasisFunction>> {
    let mut out = Vec::with_capacity(6 * p * (p + 2));
    for f in &elem.faces {
        let ext = f.extension.as_ref().expect("cube face");
        let (xf, yf) = f.param.as_ref().expect("cube face");
        let gx = xf.gradient();
        let gy = yf.gradient();
        let mut lx = Vec::with_capacity(p);
        let mut ly = Vec::with_capacity(p);
        for i in 0..p {
            let l = cache.integrated_legendre(i + 2)?;
            lx.push(compose(&l, xf));
            ly.push(compose(&l, yf));
        }
        let entity = Entity::Face(f.id);
        for i in 0..p {
            let grad_lx = lx[i].gradient();
            for j in 0..p {
                let w = &grad_lx.mul_poly(&ly[j]) - &ly[j].gradient().mul_poly(&lx[i]);
                let field = w.mul_poly(ext).curl3d()?;
                out.push(BasisFunction::new(
                    Category::FaceHigherIJ,
                    entity,
                    vec![i, j],
                    field,
                ));
            }
        }
        for (i, l) in lx.iter().enumerate() {
            let field = gy.mul_poly(&(ext * l)).curl3d()?;
            out.push(BasisFunction::new(
                Category::FaceHigherI,
                entity,
                vec![i],
                field,
            ));
        }
        for (j, l) in ly.iter().enumerate() {
            let field = gx.mul_poly(&(ext * l)).curl3d()?;
            out.push(BasisFunction::new(
                Category::FaceHigherJ,
                entity,
                vec![j],
                field,
            ));
        }
    }
    Ok(out)
}

struct Factors {
    /// `L_{i+2}` and `ℓ_{i+1}` of `2x−1`, per axis.
    big: [Vec<MPoly>; 3],
    small: [Vec<MPoly>; 3],
}

impl Factors {
    fn new(p: usize, cache: &PolyFamilyCache) -> Result<Self> {
        let mut big: [Vec<MPoly>; 3] = Default::default();
        let mut small: [Vec<MPoly>; 3] = Default::default();
        for axis in 0..3 {
            let arg = shifted(3, axis);
            for i in 0..p {
                big[axis].push(compose(&cache.integrated_legendre(i + 2)?, &arg));
                small[axis].push(compose(&cache.legendre(i + 1), &arg));
            }
        }
        Ok(Factors { big, small })
    }
}

fn vec3(c: [MPoly; 3]) -> VectorField {
    VectorField::from_components(c.into())
}

/// Interior families as printed: five divergence-free families with factors
/// 4, 4, 2, 2, 2, four paired families and three single-component families.
pub fn build_interior(p: usize, cache: &PolyFamilyCache) -> Result<Vec<BasisFunction>> {
    let Factors { big: l, small: s } = Factors::new(p, cache)?;
    let z = || MPoly::zero(3);
    let (four, two) = (int(4), int(2));
    let mut out = Vec::with_capacity(3 * p * (p + 1) * (p + 1));
    let mut push = |cat, idx: Vec<usize>, f: VectorField| {
        out.push(BasisFunction::new(cat, Entity::Cell, idx, f));
    };
    let range = 0..p;
    let triples = || {
        range
            .clone()
            .flat_map(|i| (0..p).flat_map(move |j| (0..p).map(move |k| (i, j, k))))
    };
    let pairs = || (0..p).flat_map(move |a| (0..p).map(move |b| (a, b)));

    for (i, j, k) in triples() {
        let a = (&(&l[0][i] * &s[1][j]) * &s[2][k]).scale(&four);
        let c = (&(&s[0][i] * &s[1][j]) * &l[2][k]).scale(&four);
        push(Category::HexT1(1), vec![i, j, k], vec3([a, z(), -&c]));
    }
    for (i, j, k) in triples() {
        let b = (&(&s[0][i] * &l[1][j]) * &s[2][k]).scale(&four);
        let c = (&(&s[0][i] * &s[1][j]) * &l[2][k]).scale(&four);
        push(Category::HexT1(2), vec![i, j, k], vec3([z(), b, -&c]));
    }
    for (j, k) in pairs() {
        let c = (&s[1][j] * &l[2][k]).scale(&two);
        let b = (&l[1][j] * &s[2][k]).scale(&two);
        push(Category::HexT1(3), vec![j, k], vec3([z(), -&b, c]));
    }
    for (i, k) in pairs() {
        let a = (&l[0][i] * &s[2][k]).scale(&two);
        let c = (&s[0][i] * &l[2][k]).scale(&two);
        push(Category::HexT1(4), vec![i, k], vec3([a, z(), -&c]));
    }
    for (i, j) in pairs() {
        let a = (&l[0][i] * &s[1][j]).scale(&two);
        let b = (&s[0][i] * &l[1][j]).scale(&two);
        push(Category::HexT1(5), vec![i, j], vec3([a, -&b, z()]));
    }

    for (i, j, k) in triples() {
        let a = &(&l[0][i] * &s[1][j]) * &s[2][k];
        let b = &(&s[0][i] * &l[1][j]) * &s[2][k];
        push(Category::HexT2(1), vec![i, j, k], vec3([a, b, z()]));
    }
    for (j, k) in pairs() {
        let b = &l[1][j] * &s[2][k];
        let c = &s[1][j] * &l[2][k];
        push(Category::HexT2(2), vec![j, k], vec3([z(), b, c]));
    }
    for (i, k) in pairs() {
        let c = &s[0][i] * &l[2][k];
        let a = &l[0][i] * &s[2][k];
        push(Category::HexT2(3), vec![i, k], vec3([a, z(), c]));
    }
    for (i, j) in pairs() {
        let a = &l[0][i] * &s[1][j];
        let b = &s[0][i] * &l[1][j];
        push(Category::HexT2(4), vec![i, j], vec3([a, b, z()]));
    }

    for axis in 0..3 {
        for (i, li) in l[axis].iter().enumerate() {
            push(
                Category::HexT3(axis as u8 + 1),
                vec![i],
                VectorField::axis(li, axis),
            );
        }
    }
    Ok(out)
}

pub fn build_set(p: usize) -> Result<BasisSet> {
    check_order("hex basis", p, 1, max_order(ElementKind::Hex))?;
    let elem = ReferenceElement::new(ElementKind::Hex);
    let cache = PolyFamilyCache::new();
    let mut f = build_face_rt0(&elem);
    f.extend(build_face_higher(&elem, p, &cache)?);
    f.extend(build_interior(p, &cache)?);
    Ok(BasisSet::new(ElementKind::Hex, p, None, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bottom_face_rt0() {
        let elem = ReferenceElement::new(ElementKind::Hex);
        let f = build_face_rt0(&elem);
        let z = MPoly::var(3, 2);
        assert_eq!(
            f[0].field.unscaled(),
            vec![MPoly::zero(3), MPoly::zero(3), &z - &MPoly::one(3)]
        );
        for g in &f {
            let d = g.field.divergence().unwrap().as_rational().unwrap();
            let c = d.as_constant().unwrap();
            assert!(c == int(1) || c == int(-1));
        }
    }

    #[test]
    fn counts() {
        let cache = PolyFamilyCache::new();
        let elem = ReferenceElement::new(ElementKind::Hex);
        assert_eq!(build_face_higher(&elem, 2, &cache).unwrap().len(), 48);
        assert_eq!(build_interior(1, &cache).unwrap().len(), 12);
        assert_eq!(build_set(1).unwrap().dimension(), 36);
    }
}
