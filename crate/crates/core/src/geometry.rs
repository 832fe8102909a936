//! Reference elements: vertices, vertex functions, edges, faces and their
//! parameterizations.
//!
//! Numbering conventions:
//! - Quad/Hex vertices are stored 0-based but edge and face ids are 1-based,
//!   following the vertex lists `V1..V4` / `V1..V8`.
//! - Triangle edge `[j1, j2]` has id `j1 + j2`; tetrahedron edge id is
//!   `j1 + j2 + sign(j1)`.
//! - Tetrahedron face `f_j` (id `j`, 0-based) is the face opposite vertex `j`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{int, rat, MPoly, Rational};
use crate::surd::Surd;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ElementKind {
    Quad,
    Hex,
    Tri,
    Tet,
}

impl ElementKind {
    pub const ALL: [ElementKind; 4] = [
        ElementKind::Quad,
        ElementKind::Hex,
        ElementKind::Tri,
        ElementKind::Tet,
    ];

    pub fn dim(self) -> usize {
        match self {
            ElementKind::Quad | ElementKind::Tri => 2,
            ElementKind::Hex | ElementKind::Tet => 3,
        }
    }

    pub fn is_simplex(self) -> bool {
        matches!(self, ElementKind::Tri | ElementKind::Tet)
    }

    pub fn name(self) -> &'static str {
        match self {
            ElementKind::Quad => "quad",
            ElementKind::Hex => "hex",
            ElementKind::Tri => "tri",
            ElementKind::Tet => "tet",
        }
    }

    /// Area or volume of the reference domain.
    pub fn measure(self) -> Rational {
        match self {
            ElementKind::Quad | ElementKind::Hex => Rational::one(),
            ElementKind::Tri => rat(1, 2),
            ElementKind::Tet => rat(1, 6),
        }
    }

    pub fn centroid(self) -> Vec<Rational> {
        let c = if self.is_simplex() {
            rat(1, self.dim() as i64 + 1)
        } else {
            rat(1, 2)
        };
        vec![c; self.dim()]
    }
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ElementKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "quad" => Ok(ElementKind::Quad),
            "hex" => Ok(ElementKind::Hex),
            "tri" => Ok(ElementKind::Tri),
            "tet" => Ok(ElementKind::Tet),
            other => Err(format!("unknown element kind `{other}`")),
        }
    }
}

/// Affine map from facet coordinates `t ∈ [0,1]^k` (or the unit simplex)
/// into the element: `x = origin + Σ_j t_j axes[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    origin: Vec<Rational>,
    axes: Vec<Vec<Rational>>,
}

impl Facet {
    pub fn new(origin: Vec<Rational>, axes: Vec<Vec<Rational>>) -> Self {
        assert!(axes.iter().all(|a| a.len() == origin.len()));
        assert!(!axes.is_empty());
        Facet { origin, axes }
    }

    fn from_points(origin: &[i64], ends: &[&[i64]]) -> Self {
        let o: Vec<Rational> = origin.iter().map(|&v| int(v)).collect();
        let axes = ends
            .iter()
            .map(|e| e.iter().zip(origin).map(|(&a, &b)| int(a - b)).collect())
            .collect();
        Facet::new(o, axes)
    }

    pub fn ambient_dim(&self) -> usize {
        self.origin.len()
    }

    /// Number of facet coordinates.
    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    /// The ambient coordinates written as polynomials in the facet coordinates.
    pub fn coordinate_forms(&self) -> Vec<MPoly> {
        let k = self.dim();
        (0..self.ambient_dim())
            .map(|i| {
                let mut f = MPoly::constant(k, self.origin[i].clone());
                for (j, a) in self.axes.iter().enumerate() {
                    f = &f + &MPoly::var(k, j).scale(&a[i]);
                }
                f
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct EdgeData {
    pub id: usize,
    /// 0-based vertex indices `(i, j)`; the edge points from `i` to `j`.
    pub endpoints: (usize, usize),
    /// `ζ_e = σ_j − σ_i` (tensor) or `γ_e = λ_j − λ_i` (simplex).
    pub param: MPoly,
    /// `λ_e = λ_i + λ_j` on tensor elements.
    pub extension: Option<MPoly>,
    /// `½∇ζ_e` on tensor elements, `V_j − V_i` on simplexes.
    pub tangent: Vec<Rational>,
    /// Outward normal of a 2-D element's edge: `∇λ_e` on the square (unit),
    /// `−∇λ_k` for the opposite vertex `k` on the triangle (not unit).
    pub normal: Option<Vec<Rational>>,
}

#[derive(Clone, Debug)]
pub struct FaceData {
    pub id: usize,
    /// 0-based vertex indices, in the order used by the parameterization.
    pub vertices: Vec<usize>,
    /// `(ξ_f, η_f)` on the cube.
    pub param: Option<(MPoly, MPoly)>,
    /// `λ_f`, the sum of the face's vertex functions, on the cube.
    pub extension: Option<MPoly>,
    /// Outward normal: `∇λ_f` on the cube (unit), `−∇λ_j` on the
    /// tetrahedron (not unit).
    pub normal: Vec<Rational>,
}

impl FaceData {
    /// `1/|n|`, so that `normal · unit_normal_scale()` is the unit normal.
    pub fn unit_normal_scale(&self) -> Surd {
        norm_inverse(&self.normal)
    }
}

pub(crate) fn norm_inverse(v: &[Rational]) -> Surd {
    let n2: Rational = v.iter().map(|c| c * c).sum();
    let (num, den) = (
        n2.numer().try_into().expect("small norm"),
        n2.denom().try_into().expect("small norm"),
    );
    Surd::sqrt_ratio(den, num)
}

#[derive(Clone, Debug)]
pub struct ReferenceElement {
    pub kind: ElementKind,
    pub vertices: Vec<Vec<i64>>,
    /// Vertex functions `λ_i` (bilinear/trilinear or barycentric).
    pub lambda: Vec<MPoly>,
    /// `σ_i` on tensor elements; empty on simplexes.
    pub sigma: Vec<MPoly>,
    pub edges: Vec<EdgeData>,
    pub faces: Vec<FaceData>,
}

const QUAD_EDGES: [(usize, usize); 4] = [(0, 1), (1, 2), (2, 3), (3, 0)];
const HEX_EDGES: [(usize, usize); 12] = [
    (0, 1),
    (1, 2),
    (2, 3),
    (3, 0),
    (4, 5),
    (5, 6),
    (6, 7),
    (7, 4),
    (0, 4),
    (1, 5),
    (2, 6),
    (3, 7),
];
const HEX_FACES: [[usize; 4]; 6] = [
    [0, 1, 2, 3],
    [4, 5, 6, 7],
    [0, 1, 5, 4],
    [1, 2, 6, 5],
    [2, 3, 7, 6],
    [3, 0, 4, 7],
];

pub fn make_reference(kind: ElementKind) -> ReferenceElement {
    ReferenceElement::new(kind)
}

fn gradient_const(p: &MPoly) -> Vec<Rational> {
    (0..p.dim())
        .map(|i| {
            p.partial(i)
                .expect("in range")
                .as_constant()
                .expect("affine function has a constant gradient")
        })
        .collect()
}

impl ReferenceElement {
    pub fn new(kind: ElementKind) -> Self {
        match kind {
            ElementKind::Quad => Self::tensor(kind),
            ElementKind::Hex => Self::tensor(kind),
            ElementKind::Tri | ElementKind::Tet => Self::simplex(kind),
        }
    }

    fn tensor(kind: ElementKind) -> Self {
        let d = kind.dim();
        let vertices: Vec<Vec<i64>> = if d == 2 {
            vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]]
        } else {
            let base = [[0, 0], [1, 0], [1, 1], [0, 1]];
            (0..2)
                .flat_map(|z| base.iter().map(move |b| vec![b[0], b[1], z]))
                .collect()
        };
        let one = MPoly::one(d);
        // Factor equal to 1 at coordinate value c ∈ {0,1} and 0 at the other.
        let factor = |i: usize, c: i64| {
            let x = MPoly::var(d, i);
            if c == 1 {
                x
            } else {
                &one - &x
            }
        };
        let lambda: Vec<MPoly> = vertices
            .iter()
            .map(|v| (0..d).fold(one.clone(), |acc, i| &acc * &factor(i, v[i])))
            .collect();
        let sigma: Vec<MPoly> = vertices
            .iter()
            .map(|v| (0..d).fold(MPoly::zero(d), |acc, i| &acc + &factor(i, v[i])))
            .collect();

        let edge_list: &[(usize, usize)] = if d == 2 { &QUAD_EDGES } else { &HEX_EDGES };
        let edges = edge_list
            .iter()
            .enumerate()
            .map(|(k, &(i, j))| {
                let zeta = &sigma[j] - &sigma[i];
                let ext = &lambda[i] + &lambda[j];
                let tangent = gradient_const(&zeta)
                    .into_iter()
                    .map(|c| c * rat(1, 2))
                    .collect();
                let normal = (d == 2).then(|| gradient_const(&ext));
                EdgeData {
                    id: k + 1,
                    endpoints: (i, j),
                    param: zeta,
                    extension: Some(ext),
                    tangent,
                    normal,
                }
            })
            .collect();

        let faces = if d == 3 {
            HEX_FACES
                .iter()
                .enumerate()
                .map(|(k, f)| {
                    let [i, j, _, l] = *f;
                    let ext = f.iter().fold(MPoly::zero(3), |acc, &v| &acc + &lambda[v]);
                    FaceData {
                        id: k + 1,
                        vertices: f.to_vec(),
                        param: Some((&sigma[i] - &sigma[j], &sigma[i] - &sigma[l])),
                        normal: gradient_const(&ext),
                        extension: Some(ext),
                    }
                })
                .collect()
        } else {
            Vec::new()
        };

        ReferenceElement {
            kind,
            vertices,
            lambda,
            sigma,
            edges,
            faces,
        }
    }

    fn simplex(kind: ElementKind) -> Self {
        let d = kind.dim();
        let mut vertices = vec![vec![0; d]];
        for i in 0..d {
            let mut v = vec![0; d];
            v[i] = 1;
            vertices.push(v);
        }
        let mut l0 = MPoly::one(d);
        for i in 0..d {
            l0 = &l0 - &MPoly::var(d, i);
        }
        let mut lambda = vec![l0];
        lambda.extend((0..d).map(|i| MPoly::var(d, i)));

        let mut edges = Vec::new();
        for j1 in 0..=d {
            for j2 in j1 + 1..=d {
                let id = if d == 2 {
                    j1 + j2
                } else {
                    j1 + j2 + usize::from(j1 > 0)
                };
                let tangent = vertices[j2]
                    .iter()
                    .zip(&vertices[j1])
                    .map(|(&a, &b)| int(a - b))
                    .collect();
                let normal = (d == 2).then(|| {
                    let opp = 3 - j1 - j2;
                    gradient_const(&lambda[opp])
                        .into_iter()
                        .map(|c| -c)
                        .collect()
                });
                edges.push(EdgeData {
                    id,
                    endpoints: (j1, j2),
                    param: &lambda[j2] - &lambda[j1],
                    extension: None,
                    tangent,
                    normal,
                });
            }
        }
        edges.sort_by_key(|e| e.id);

        let faces = if d == 3 {
            (0..4)
                .map(|j| FaceData {
                    id: j,
                    vertices: (0..4).filter(|&v| v != j).collect(),
                    param: None,
                    extension: None,
                    normal: gradient_const(&lambda[j]).into_iter().map(|c| -c).collect(),
                })
                .collect()
        } else {
            Vec::new()
        };

        ReferenceElement {
            kind,
            vertices,
            lambda,
            sigma: Vec::new(),
            edges,
            faces,
        }
    }

    pub fn dim(&self) -> usize {
        self.kind.dim()
    }

    pub fn edge(&self, id: usize) -> Result<&EdgeData> {
        self.edges
            .iter()
            .find(|e| e.id == id)
            .ok_or(Error::NoSuchEntity {
                kind: self.kind,
                entity: "edge",
                id,
            })
    }

    /// Edge joining two vertices, in either direction.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<&EdgeData> {
        self.edges
            .iter()
            .find(|e| e.endpoints == (a, b) || e.endpoints == (b, a))
    }

    pub fn face(&self, id: usize) -> Result<&FaceData> {
        if self.dim() == 2 {
            return Err(Error::NoFaces(self.kind));
        }
        self.faces
            .iter()
            .find(|f| f.id == id)
            .ok_or(Error::NoSuchEntity {
                kind: self.kind,
                entity: "face",
                id,
            })
    }

    pub fn edge_facet(&self, id: usize) -> Result<Facet> {
        let e = self.edge(id)?;
        let (i, j) = e.endpoints;
        Ok(Facet::from_points(&self.vertices[i], &[&self.vertices[j]]))
    }

    /// Face parameterization: spanned from the first vertex by its two
    /// neighbours in the stored order.
    pub fn face_facet(&self, id: usize) -> Result<Facet> {
        let f = self.face(id)?;
        let v = &f.vertices;
        let far = if v.len() == 4 { v[3] } else { v[2] };
        Ok(Facet::from_points(
            &self.vertices[v[0]],
            &[&self.vertices[v[1]], &self.vertices[far]],
        ))
    }

    /// Boundary facets: edges in 2-D, faces in 3-D, with their outward
    /// normals.
    pub fn boundary(&self) -> Vec<(usize, Facet, Vec<Rational>)> {
        if self.dim() == 2 {
            self.edges
                .iter()
                .map(|e| {
                    (
                        e.id,
                        self.edge_facet(e.id).expect("own edge"),
                        e.normal.clone().expect("2-D edge normal"),
                    )
                })
                .collect()
        } else {
            self.faces
                .iter()
                .map(|f| {
                    (
                        f.id,
                        self.face_facet(f.id).expect("own face"),
                        f.normal.clone(),
                    )
                })
                .collect()
        }
    }

    pub fn vertex_point(&self, v: usize) -> Vec<Rational> {
        self.vertices[v].iter().map(|&c| int(c)).collect()
    }

    /// Gradient of `λ_i` when it is affine (simplexes).
    pub fn lambda_gradient(&self, i: usize) -> Vec<Rational> {
        gradient_const(&self.lambda[i])
    }
}

/// Exact test helper: is a rational vector zero?
pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn delta_check(e: &ReferenceElement) {
        for (i, l) in e.lambda.iter().enumerate() {
            for j in 0..e.vertices.len() {
                let v = l.evaluate(&e.vertex_point(j));
                assert_eq!(v, int(i64::from(i == j)), "{} λ{i}(V{j})", e.kind);
            }
        }
    }

    #[test]
    fn vertex_functions_are_nodal() {
        for k in ElementKind::ALL {
            let e = make_reference(k);
            delta_check(&e);
            let sum = e.lambda.iter().fold(MPoly::zero(k.dim()), |a, l| &a + l);
            assert_eq!(sum, MPoly::one(k.dim()));
        }
    }

    #[test]
    fn entity_counts() {
        let counts: Vec<_> = ElementKind::ALL
            .iter()
            .map(|&k| {
                let e = make_reference(k);
                (e.edges.len(), e.faces.len())
            })
            .collect();
        assert_eq!(counts, vec![(4, 0), (12, 6), (3, 0), (6, 4)]);
    }

    #[test]
    fn quad_vertex_functions() {
        let e = make_reference(ElementKind::Quad);
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let one = MPoly::one(2);
        assert_eq!(e.lambda[0], &(&one - &x) * &(&one - &y));
        assert_eq!(e.sigma[0], &(&one - &x) + &(&one - &y));
        let e1 = e.edge(1).unwrap();
        assert_eq!(e1.param, &x.scale(&int(2)) - &one);
        assert_eq!(e1.normal.as_ref().unwrap(), &vec![int(0), int(-1)]);
    }

    #[test]
    fn quad_edge_parameters_and_extensions() {
        let e = make_reference(ElementKind::Quad);
        for edge in &e.edges {
            let (i, j) = edge.endpoints;
            assert_eq!(edge.param.evaluate(&e.vertex_point(i)), int(-1));
            assert_eq!(edge.param.evaluate(&e.vertex_point(j)), int(1));
            let f = e.edge_facet(edge.id).unwrap();
            let ext = edge.extension.as_ref().unwrap();
            assert_eq!(ext.restrict(&f).unwrap(), MPoly::one(1));
            let opposite = (edge.id + 1) % 4 + 1;
            let fo = e.edge_facet(opposite).unwrap();
            assert!(ext.restrict(&fo).unwrap().is_zero());
            let n = edge.normal.as_ref().unwrap();
            let n2: Rational = n.iter().map(|c| c * c).sum();
            assert_eq!(n2, int(1));
            // outward: points away from the centre
            let mid: Vec<Rational> = e
                .vertex_point(i)
                .iter()
                .zip(e.vertex_point(j))
                .map(|(a, b)| (a + b) * rat(1, 2) - rat(1, 2))
                .collect();
            let dot: Rational = mid.iter().zip(n).map(|(a, b)| a * b).sum();
            assert!(dot > Rational::zero());
        }
    }

    #[test]
    fn hex_faces() {
        let e = make_reference(ElementKind::Hex);
        let bottom = e.face(1).unwrap();
        assert_eq!(
            bottom.extension.as_ref().unwrap(),
            &(&MPoly::one(3) - &MPoly::var(3, 2))
        );
        assert_eq!(bottom.normal, vec![int(0), int(0), int(-1)]);
        for f in &e.faces {
            let ext = f.extension.as_ref().unwrap();
            let own = e.face_facet(f.id).unwrap();
            assert_eq!(ext.restrict(&own).unwrap(), MPoly::one(2));
            let opp = if f.id <= 2 {
                3 - f.id
            } else {
                (f.id - 3 + 2) % 4 + 3
            };
            assert!(ext.restrict(&e.face_facet(opp).unwrap()).unwrap().is_zero());
            let (xf, yf) = f.param.as_ref().unwrap();
            for &v in &f.vertices {
                for p in [xf, yf] {
                    let val = p.evaluate(&e.vertex_point(v));
                    assert!(val == int(1) || val == int(-1) || val.is_zero());
                }
            }
        }
    }

    #[test]
    fn simplex_edges() {
        let t = make_reference(ElementKind::Tet);
        let e = t.edge(1).unwrap();
        assert_eq!(e.endpoints, (0, 1));
        assert_eq!(e.param, &t.lambda[1] - &t.lambda[0]);
        let ids: Vec<_> = t.edges.iter().map(|e| (e.id, e.endpoints)).collect();
        assert_eq!(
            ids,
            vec![
                (1, (0, 1)),
                (2, (0, 2)),
                (3, (0, 3)),
                (4, (1, 2)),
                (5, (1, 3)),
                (6, (2, 3))
            ]
        );
        for e in &t.edges {
            let (i, j) = e.endpoints;
            assert_eq!(e.param.evaluate(&t.vertex_point(i)), int(-1));
            assert_eq!(e.param.evaluate(&t.vertex_point(j)), int(1));
        }
        let tri = make_reference(ElementKind::Tri);
        let ids: Vec<_> = tri.edges.iter().map(|e| (e.id, e.endpoints)).collect();
        assert_eq!(ids, vec![(1, (0, 1)), (2, (0, 2)), (3, (1, 2))]);
        assert!(t.edge(7).is_err());
    }

    #[test]
    fn tet_faces() {
        let t = make_reference(ElementKind::Tet);
        let f0 = t.face(0).unwrap();
        assert_eq!(f0.vertices, vec![1, 2, 3]);
        assert_eq!(f0.normal, vec![int(1), int(1), int(1)]);
        assert_eq!(f0.unit_normal_scale(), Surd::sqrt_ratio(1, 3));
        for (id, facet, _) in t.boundary() {
            assert!(t.lambda[id].restrict(&facet).unwrap().is_zero());
        }
        assert!(matches!(
            make_reference(ElementKind::Tri).face(0),
            Err(Error::NoFaces(ElementKind::Tri))
        ));
    }

    #[test]
    fn barycentric_vanishes_on_opposite_edge() {
        let tri = make_reference(ElementKind::Tri);
        let f = tri.edge_facet(3).unwrap();
        assert!(tri.lambda[0].restrict(&f).unwrap().is_zero());
        let q = make_reference(ElementKind::Quad);
        // edge [4,1] lies on ξ = 0
        assert!(MPoly::var(2, 0)
            .restrict(&q.edge_facet(4).unwrap())
            .unwrap()
            .is_zero());
    }
}
