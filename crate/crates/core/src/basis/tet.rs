//! Tetrahedral basis on the unit 3-simplex.

use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::geometry::{norm_inverse, ElementKind, ReferenceElement};
use crate::poly::{int, MPoly, Rational};
use crate::poly1d::{compose, compose2, PolyFamilyCache};
use crate::rank::{rank_certificate, RankCertificate};
use crate::surd::Surd;

use super::{check_order, max_order, BasisFunction, BasisSet, Category, EdgeFaceVariant, Entity};

/// Edges in basis order, as 0-based vertex pairs.
pub const EDGE_ORDER: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn cross(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn along(s: &MPoly, v: &[Rational]) -> VectorField {
    VectorField::from_components(v.iter().map(|c| s.scale(c)).collect())
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Face `j1` (opposite vertex `j1`) with its remaining vertices ascending.
fn face_rest(j1: usize) -> (usize, usize, usize) {
    let r: Vec<usize> = (0..4).filter(|&v| v != j1).collect();
    (r[0], r[1], r[2])
}

fn face_entity(face: usize, k1: usize, k2: usize) -> Entity {
    Entity::FaceEdge {
        face,
        edge: (k1.min(k2), k1.max(k2)),
    }
}

/// Edge-based face functions, `p` per (face, edge), twelve pairs in all.
///
/// `AC` is accepted here so its dependence can be exhibited; it is not a
/// basis for `p ≥ 2`.
pub fn build_edge_face(
    elem: &ReferenceElement,
    p: usize,
    variant: EdgeFaceVariant,
    cache: &PolyFamilyCache,
) -> Result<Vec<BasisFunction>> {
    let lam = &elem.lambda;
    let g: Vec<Vec<Rational>> = (0..4).map(|i| elem.lambda_gradient(i)).collect();
    let one = MPoly::one(3);
    let mut out = Vec::with_capacity(12 * p);
    for j1 in 0..4 {
        let (a, b, c) = face_rest(j1);
        match variant {
            EdgeFaceVariant::FirstKind => {
                for (k1, k2, k3) in [(a, b, c), (a, c, b), (b, c, a)] {
                    let n = cross(&g[k1], &g[k2]);
                    let unit = norm_inverse(&n);
                    let w = &one - &lam[k1];
                    for i in 0..p {
                        let h = compose2(&cache.homogenized_jacobi(i, 3, 0)?, &lam[k2], &w);
                        let s = &lam[k3] * &h;
                        let scale =
                            Surd::sqrt_int(3 * (2 * i as u64 + 4) * (2 * i as u64 + 5)).mul(&unit);
                        let f = along(&s, &n).scaled(&scale);
                        out.push(BasisFunction::new(
                            Category::EdgeFaceFirst,
                            face_entity(j1, k1, k2),
                            vec![i],
                            f,
                        ));
                    }
                }
            }
            EdgeFaceVariant::SecondKind => {
                for (k1, k2, k3) in [(a, b, c), (b, c, a), (c, a, b)] {
                    let n0 = cross(&g[k2], &g[k3]);
                    let n1 = cross(&g[k3], &g[k1]);
                    let f0 = along(&lam[k1], &n0).scaled(&norm_inverse(&n0));
                    let f1 = along(&(&lam[k1] * &lam[k2]), &n1).scaled(&norm_inverse(&n1));
                    let gamma = &lam[k2] - &lam[k1];
                    let mut fs = vec![f0.clone(), f1.clone()];
                    for i in 1..p.saturating_sub(1) {
                        let li = compose(&cache.legendre(i), &gamma);
                        let lm = compose(&cache.legendre(i - 1), &gamma);
                        fs.push(&f1.mul_poly(&li) + &f0.mul_poly(&lm));
                    }
                    fs.truncate(p);
                    for (i, f) in fs.into_iter().enumerate() {
                        out.push(BasisFunction::new(
                            Category::EdgeFaceSecond,
                            face_entity(j1, k1, k2),
                            vec![i],
                            f,
                        ));
                    }
                }
            }
            EdgeFaceVariant::AC => {
                for (k1, k2, k3) in [(a, b, c), (b, c, a), (c, a, b)] {
                    let n = cross(&g[k2], &g[k3]);
                    let gamma = &lam[k3] - &lam[k2];
                    for i in 0..p {
                        let s = &compose(&cache.legendre(i), &gamma) * &lam[k1];
                        out.push(BasisFunction::new(
                            Category::EdgeFaceAC,
                            face_entity(j1, k2, k3),
                            vec![i],
                            along(&s, &n),
                        ));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Exact rank and linear relations of the `AC` edge-based face family.
pub fn degeneracy_certificate(p: usize) -> Result<RankCertificate> {
    check_order("degeneracy certificate", p, 1, max_order(ElementKind::Tet))?;
    let elem = ReferenceElement::new(ElementKind::Tet);
    let fs = build_edge_face(&elem, p, EdgeFaceVariant::AC, &PolyFamilyCache::new())?;
    let fields: Vec<VectorField> = fs.into_iter().map(|f| f.field).collect();
    rank_certificate(&fields)
}

fn face_constant(m: usize, n: usize) -> Surd {
    let (m, n) = (m as u64, n as u64);
    let num = (2 * n + 3)
        * (m + n + 3)
        * (m + 2 * n + 4)
        * (m + 2 * n + 5)
        * (2 * m + 2 * n + 7)
        * (2 * m + 2 * n + 8)
        * (2 * m + 2 * n + 9);
    Surd::sqrt_ratio(num, (m + 1) * (m + 2))
}

/// Normalized scalar of the face-type functions on face `j1`.
fn face_scalar(
    elem: &ReferenceElement,
    j1: usize,
    m: usize,
    n: usize,
    cache: &PolyFamilyCache,
) -> Result<MPoly> {
    let lam = &elem.lambda;
    let one = MPoly::one(3);
    let (j2, j3, j4) = face_rest(j1);
    let w2 = &one - &lam[j2];
    let w23 = &w2 - &lam[j3];
    let hm = compose2(
        &cache.homogenized_jacobi(m, 2 * n as i64 + 3, 2)?,
        &lam[j3],
        &w2,
    );
    let hn = compose2(&cache.homogenized_jacobi(n, 0, 2)?, &lam[j4], &w23);
    let cube = &(&lam[j2] * &lam[j3]) * &lam[j4];
    Ok(&(&cube * &hm) * &hn)
}

fn face_pairs(p: usize) -> Vec<(usize, usize)> {
    if p < 3 {
        return Vec::new();
    }
    (0..=p - 3)
        .flat_map(|m| (0..=p - 3 - m).map(move |n| (m, n)))
        .collect()
}

/// Face bubbles along `∇λ_{j3} × ∇λ_{j4}`, `m + n ≤ p−3`, face by face.
pub fn build_face_bubble(
    elem: &ReferenceElement,
    p: usize,
    cache: &PolyFamilyCache,
) -> Result<Vec<BasisFunction>> {
    let mut out = Vec::new();
    for j1 in 0..4 {
        let (_, j3, j4) = face_rest(j1);
        let n = cross(&elem.lambda_gradient(j3), &elem.lambda_gradient(j4));
        let unit = norm_inverse(&n);
        for (m, k) in face_pairs(p) {
            let s = face_scalar(elem, j1, m, k, cache)?;
            let f = along(&s, &n).scaled(&face_constant(m, k).mul(&unit));
            out.push(BasisFunction::new(
                Category::FaceBubble,
                Entity::Face(j1),
                vec![m, k],
                f,
            ));
        }
    }
    Ok(out)
}

fn edge_interior_constant(i: usize) -> Surd {
    let i = i as u64;
    Surd::sqrt_ratio((2 * i + 4) * (2 * i + 5) * (2 * i + 7), i + 1).scale(&int(i as i64 + 3))
}

/// Tangential edge-based interior functions, `0 ≤ i ≤ p−2`.
pub fn build_edge_interior(
    elem: &ReferenceElement,
    p: usize,
    cache: &PolyFamilyCache,
) -> Result<Vec<BasisFunction>> {
    let lam = &elem.lambda;
    let one = MPoly::one(3);
    let mut out = Vec::new();
    for (k1, k2) in EDGE_ORDER {
        let edge = elem.edge_between(k1, k2).expect("tet edge");
        let tau = sub(&elem.vertex_point(k2), &elem.vertex_point(k1));
        let unit = norm_inverse(&tau);
        let bubble = &lam[k1] * &lam[k2];
        let w = &one - &lam[k1];
        for i in 0..p.saturating_sub(1) {
            let h = compose2(&cache.homogenized_jacobi(i, 1, 2)?, &lam[k2], &w);
            let f = along(&(&bubble * &h), &tau).scaled(&edge_interior_constant(i).mul(&unit));
            out.push(BasisFunction::new(
                Category::EdgeInterior,
                Entity::Edge(edge.id),
                vec![i],
                f,
            ));
        }
    }
    Ok(out)
}

/// Face-based interior functions: the face scalar along two tangents of
/// each face.
pub fn build_face_interior(
    elem: &ReferenceElement,
    p: usize,
    cache: &PolyFamilyCache,
) -> Result<Vec<BasisFunction>> {
    let mut out = Vec::new();
    for j1 in 0..4 {
        let (j2, j3, j4) = face_rest(j1);
        let scalars = face_pairs(p)
            .into_iter()
            .map(|(m, k)| Ok(((m, k), face_scalar(elem, j1, m, k, cache)?)))
            .collect::<Result<Vec<_>>>()?;
        for (cat, tv) in [(Category::FaceInterior1, j3), (Category::FaceInterior2, j4)] {
            let tau = sub(&elem.vertex_point(tv), &elem.vertex_point(j2));
            let unit = norm_inverse(&tau);
            for ((m, k), s) in &scalars {
                let f = along(s, &tau).scaled(&face_constant(*m, *k).mul(&unit));
                out.push(BasisFunction::new(cat, Entity::Face(j1), vec![*m, *k], f));
            }
        }
    }
    Ok(out)
}

fn bubble_constant(l: usize, m: usize, n: usize) -> Surd {
    let (l, m, n) = (l as u64, m as u64, n as u64);
    let c1 = Surd::sqrt_ratio(
        (l + 2 * m + 2 * n + 9)
            * (l + 2 * m + 2 * n + 10)
            * (2 * l + 2 * m + 2 * n + 11)
            * (m + 2 * n + 6),
        (l + 1) * (m + 1) * (n + 1),
    );
    let c2 = Surd::sqrt_ratio(
        (m + 2 * n + 7) * (2 * m + 2 * n + 8) * (n + 3) * (n + 4) * (2 * n + 5),
        (l + 2) * (m + 2) * (n + 2),
    );
    c1.mul(&c2)
}

/// Interior bubbles, `l + m + n ≤ p−4`, each in the three Cartesian
/// directions.
pub fn build_interior_bubble(
    elem: &ReferenceElement,
    p: usize,
    cache: &PolyFamilyCache,
) -> Result<Vec<BasisFunction>> {
    let mut out = Vec::new();
    if p < 4 {
        return Ok(out);
    }
    let lam = &elem.lambda;
    let one = MPoly::one(3);
    let quad = &(&(&lam[0] * &lam[1]) * &lam[2]) * &lam[3];
    let w1 = &one - &lam[1];
    let w12 = &w1 - &lam[2];
    let arg = &lam[1].scale(&int(2)) - &one;
    let top = p - 4;
    for l in 0..=top {
        for m in 0..=top - l {
            for n in 0..=top - l - m {
                let pl = compose(&cache.jacobi(l, 2 * (m + n) as i64 + 8, 2)?, &arg);
                let hm = compose2(
                    &cache.homogenized_jacobi(m, 2 * n as i64 + 5, 2)?,
                    &lam[2],
                    &w1,
                );
                let hn = compose2(&cache.homogenized_jacobi(n, 2, 2)?, &lam[3], &w12);
                let s = &(&(&quad * &pl) * &hm) * &hn;
                let c = bubble_constant(l, m, n);
                for dir in 0..3 {
                    let f = VectorField::axis(&s, dir).scaled(&c);
                    out.push(
                        BasisFunction::new(
                            Category::InteriorBubble,
                            Entity::Cell,
                            vec![l, m, n],
                            f,
                        )
                        .with_direction(dir),
                    );
                }
            }
        }
    }
    Ok(out)
}

pub fn build_set(p: usize, variant: EdgeFaceVariant) -> Result<BasisSet> {
    check_order("tet basis", p, 1, max_order(ElementKind::Tet))?;
    if variant == EdgeFaceVariant::AC {
        return Err(Error::Unsupported(
            "the ac edge-based face family is linearly dependent; use `first` or `second`".into(),
        ));
    }
    let elem = ReferenceElement::new(ElementKind::Tet);
    let cache = PolyFamilyCache::new();
    let mut f = build_edge_face(&elem, p, variant, &cache)?;
    f.extend(build_face_bubble(&elem, p, &cache)?);
    f.extend(build_edge_interior(&elem, p, &cache)?);
    f.extend(build_face_interior(&elem, p, &cache)?);
    f.extend(build_interior_bubble(&elem, p, &cache)?);
    Ok(BasisSet::new(ElementKind::Tet, p, Some(variant), f))
}

pub(crate) fn orthonormal_groups(set: &BasisSet) -> Vec<(String, Vec<usize>)> {
    let mut out = Vec::new();
    let mut push = |name: String, idx: Vec<usize>| {
        if !idx.is_empty() {
            out.push((name, idx));
        }
    };
    if set.variant == Some(EdgeFaceVariant::FirstKind) {
        for face in 0..4 {
            let (a, b, c) = face_rest(face);
            for (k1, k2) in [(a, b), (a, c), (b, c)] {
                let ent = face_entity(face, k1, k2);
                push(
                    format!("edge-face-first f{face} e{k1}{k2}"),
                    set.indices_of(|f| f.category == Category::EdgeFaceFirst && f.entity == ent),
                );
            }
        }
    }
    for e in 1..=6 {
        push(
            format!("edge-interior e{e}"),
            set.indices_of(|f| f.category == Category::EdgeInterior && f.entity == Entity::Edge(e)),
        );
    }
    for face in 0..4 {
        push(
            format!("face-bubble f{face}"),
            set.indices_of(|f| {
                f.category == Category::FaceBubble && f.entity == Entity::Face(face)
            }),
        );
    }
    for face in 0..4 {
        for cat in [Category::FaceInterior1, Category::FaceInterior2] {
            push(
                format!("{cat} f{face}"),
                set.indices_of(|f| f.category == cat && f.entity == Entity::Face(face)),
            );
        }
    }
    for dir in 0..3 {
        push(
            format!("interior-bubble dir{}", dir + 1),
            set.indices_of(|f| f.category == Category::InteriorBubble && f.direction == Some(dir)),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        for p in 1..=4 {
            for v in [EdgeFaceVariant::FirstKind, EdgeFaceVariant::SecondKind] {
                let set = build_set(p, v).unwrap();
                assert_eq!(
                    set.dimension(),
                    (p + 1) * (p + 2) * (p + 3) / 2,
                    "p={p} {v}"
                );
                assert!(set.table_rows().iter().all(|r| r.expected == r.actual));
            }
        }
        assert!(build_set(2, EdgeFaceVariant::AC).is_err());
    }

    #[test]
    fn ac_dependence() {
        let c1 = degeneracy_certificate(1).unwrap();
        assert_eq!((c1.count, c1.rank), (12, 12));
        let c2 = degeneracy_certificate(2).unwrap();
        assert_eq!((c2.count, c2.rank), (24, 23));
        assert_eq!(c2.nullspace.len(), 1);
    }

    #[test]
    fn edge_interior_constant_value() {
        assert!((edge_interior_constant(0).to_f64() - 3.0 * 140f64.sqrt()).abs() < 1e-12);
    }
}
