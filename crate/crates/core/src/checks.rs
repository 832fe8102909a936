//! Exact verification of the structural claims carried by each family:
//! divergence-free members, vanishing normal traces, orthonormal blocks,
//! linear independence and analytic Jacobians.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::assembly::{mass_matrix, Path};
use crate::basis::{BasisFunction, BasisSet, Category, Entity};
use crate::error::Result;
use crate::geometry::{ElementKind, ReferenceElement};
use crate::rank::coefficient_rank;

/// Tolerance on orthonormal Gram blocks.
pub const ORTHONORMAL_TOL: f64 = 1e-10;
/// Relative tolerance of analytic against central-difference Jacobians.
pub const JACOBIAN_TOL: f64 = 1e-6;
pub const FD_STEP: f64 = 1e-6;

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub function: Option<usize>,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(
        name: impl Into<String>,
        function: Option<usize>,
        passed: bool,
        detail: impl Into<String>,
    ) -> Self {
        CheckOutcome {
            name: name.into(),
            function,
            passed,
            detail: detail.into(),
        }
    }
}

pub fn all_passed(outcomes: &[CheckOutcome]) -> bool {
    outcomes.iter().all(|o| o.passed)
}

/// Every member of a divergence-free family has divergence equal to the
/// zero polynomial.
pub fn divergence_free(set: &BasisSet) -> Result<Vec<CheckOutcome>> {
    set.functions
        .iter()
        .filter(|f| f.category.is_divergence_free())
        .map(|f| {
            let zero = f.field.divergence()?.is_zero();
            Ok(CheckOutcome::new(
                format!("div {}", f.category),
                Some(f.id),
                zero,
                if zero {
                    "div ≡ 0"
                } else {
                    "nonzero divergence"
                },
            ))
        })
        .collect()
}

/// Boundary facets on which the normal trace of `f` must vanish, and
/// whether `f` must vanish entirely on every edge.
fn trace_claims(all: &[usize], f: &BasisFunction) -> Option<(Vec<usize>, bool)> {
    let except = |skip: usize| all.iter().copied().filter(|&i| i != skip).collect();
    if f.category.is_interior() {
        return Some((all.to_vec(), false));
    }
    match (f.category, f.entity) {
        (
            Category::EdgeFaceFirst | Category::EdgeFaceSecond | Category::EdgeFaceAC,
            Entity::FaceEdge { face, .. },
        ) => Some((except(face), false)),
        (Category::FaceBubble, Entity::Face(face)) => Some((except(face), true)),
        _ => None,
    }
}

/// Exact facet restriction of every vanishing-trace claim.
pub fn traces(set: &BasisSet) -> Result<Vec<CheckOutcome>> {
    let elem = ReferenceElement::new(set.kind);
    let boundary = elem.boundary();
    let ids: Vec<usize> = boundary.iter().map(|(id, _, _)| *id).collect();
    let mut out = Vec::new();
    for f in &set.functions {
        let Some((facets, edges_vanish)) = trace_claims(&ids, f) else {
            continue;
        };
        let mut bad = Vec::new();
        for (id, facet, normal) in &boundary {
            if facets.contains(id) && !f.field.restrict(facet)?.dot_const(normal).is_zero() {
                bad.push(format!("facet {id}"));
            }
        }
        if edges_vanish {
            for e in &elem.edges {
                if !f.field.restrict(&elem.edge_facet(e.id)?)?.is_zero() {
                    bad.push(format!("edge {}", e.id));
                }
            }
        }
        let passed = bad.is_empty();
        let detail = if passed {
            format!("n·Φ = 0 on facets {facets:?}")
        } else {
            format!("nonzero on {}", bad.join(", "))
        };
        out.push(CheckOutcome::new(
            format!("trace {}", f.category),
            Some(f.id),
            passed,
            detail,
        ));
    }
    Ok(out)
}

/// Gram blocks of the declared orthonormal groups against the identity.
pub fn orthonormality(set: &BasisSet, path: Path) -> Result<Vec<CheckOutcome>> {
    let groups = set.orthonormal_groups();
    if groups.is_empty() {
        return Ok(Vec::new());
    }
    let m = mass_matrix(set, path)?;
    Ok(groups
        .into_iter()
        .map(|(name, idx)| {
            let mut dev: f64 = 0.0;
            for (a, &i) in idx.iter().enumerate() {
                for (b, &j) in idx.iter().enumerate() {
                    let target = if a == b { 1.0 } else { 0.0 };
                    dev = dev.max((m.get(i, j) - target).abs());
                }
            }
            CheckOutcome::new(
                format!("orthonormal {name}"),
                None,
                dev <= ORTHONORMAL_TOL,
                format!("{} functions, max |G − I| = {dev:.3e}", idx.len()),
            )
        })
        .collect())
}

/// Exact rank of the whole set, and of the tetrahedral edge-based face
/// family on its own.
pub fn rank(set: &BasisSet) -> Result<Vec<CheckOutcome>> {
    let r = coefficient_rank(&set.fields())?;
    let n = set.dimension();
    let mut out = vec![CheckOutcome::new(
        "rank set",
        None,
        r == n,
        format!("rank {r} of {n}"),
    )];
    let ef: Vec<_> = set
        .functions
        .iter()
        .filter(|f| {
            matches!(
                f.category,
                Category::EdgeFaceFirst | Category::EdgeFaceSecond | Category::EdgeFaceAC
            )
        })
        .map(|f| f.field.clone())
        .collect();
    if !ef.is_empty() {
        let r = coefficient_rank(&ef)?;
        out.push(CheckOutcome::new(
            "rank edge-based face family",
            None,
            r == 12 * set.order,
            format!("rank {r} of {}", ef.len()),
        ));
    }
    Ok(out)
}

/// A uniformly random point well inside the reference element.
pub fn random_interior_point(kind: ElementKind, rng: &mut impl Rng) -> Vec<f64> {
    let d = kind.dim();
    loop {
        let x: Vec<f64> = (0..d).map(|_| rng.gen_range(0.01..0.99)).collect();
        if !kind.is_simplex() || x.iter().sum::<f64>() < 0.99 {
            return x;
        }
    }
}

/// Analytic Jacobians against central differences at `points` random
/// interior points.
pub fn jacobian_fd(set: &BasisSet, points: usize, seed: u64) -> Result<Vec<CheckOutcome>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = set.kind.dim();
    let pts: Vec<Vec<f64>> = (0..points)
        .map(|_| random_interior_point(set.kind, &mut rng))
        .collect();
    let c = set.kind.centroid();
    set.functions
        .iter()
        .map(|f| {
            let field = f.field.centered_evaluator(&c)?;
            let jac = f.field.jacobian().centered_evaluator(&c)?;
            let mut worst: f64 = 0.0;
            for x in &pts {
                let analytic = jac.eval_f64(x);
                let mut diff = 0.0;
                for j in 0..d {
                    let mut xp = x.clone();
                    let mut xm = x.clone();
                    xp[j] += FD_STEP;
                    xm[j] -= FD_STEP;
                    let (fp, fm) = (field.eval_f64(&xp), field.eval_f64(&xm));
                    for i in 0..f.field.len() {
                        let fd = (fp[i] - fm[i]) / (2.0 * FD_STEP);
                        diff += (fd - analytic[i * d + j]).powi(2);
                    }
                }
                let norm = analytic.iter().map(|v| v * v).sum::<f64>().sqrt();
                let rel = if norm > 0.0 {
                    diff.sqrt() / norm
                } else {
                    diff.sqrt()
                };
                worst = worst.max(rel);
            }
            Ok(CheckOutcome::new(
                format!("jacobian {}", f.category),
                Some(f.id),
                worst <= JACOBIAN_TOL,
                format!("max relative gap {worst:.3e}"),
            ))
        })
        .collect()
}
