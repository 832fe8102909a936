//! Acceptance criteria 1–8, one PASS/FAIL line each.
//!
//! Criteria listed in `KNOWN_RED` are expected to fail; the run fails if
//! any other criterion fails, or if a known-red criterion starts passing
//! (so the list is kept honest).

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hdiv::assembly::{path_discrepancy, set_condition, Path};
use hdiv::basis::{build_set, expected_dimension, tet, BasisSet, EdgeFaceVariant};
use hdiv::checks::{self, all_passed};
use hdiv::divfree::{augment, bubble_for, DiscreteField};
use hdiv::field::VectorField;
use hdiv::geometry::{ElementKind, ReferenceElement};
use hdiv::poly::{MPoly, Monomial, Rational};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The second-kind tetrahedral condition numbers at p = 3, 4 are not
/// reproduced; see the README.
const KNOWN_RED: &[usize] = &[2];

const ORDERS: std::ops::RangeInclusive<usize> = 1..=4;

struct Verdict {
    passed: bool,
    detail: String,
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn all_sets() -> hdiv::error::Result<Vec<BasisSet>> {
    let mut out = Vec::new();
    for kind in ElementKind::ALL {
        let variants: &[EdgeFaceVariant] = if kind == ElementKind::Tet {
            &[EdgeFaceVariant::FirstKind, EdgeFaceVariant::SecondKind]
        } else {
            &[EdgeFaceVariant::FirstKind]
        };
        for &v in variants {
            for p in ORDERS {
                out.push(build_set(kind, p, v)?);
            }
        }
    }
    Ok(out)
}

fn label(set: &BasisSet) -> String {
    match set.variant {
        Some(v) => format!("{} {} p={}", set.kind, v, set.order),
        None => format!("{} p={}", set.kind, set.order),
    }
}

fn triangle_conditioning() -> hdiv::error::Result<Verdict> {
    const MASS: [f64; 4] = [2.016e1, 8.804e1, 9.847e2, 1.286e4];
    const STIFF: [f64; 4] = [1.040e1, 5.959e1, 4.197e2, 8.843e3];
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    let mut rows = Vec::new();
    for p in ORDERS {
        let (m, s) = set_condition(
            &build_set(ElementKind::Tri, p, EdgeFaceVariant::FirstKind)?,
            Path::Exact,
        )?;
        worst = worst
            .max(rel(m.kappa, MASS[p - 1]))
            .max(rel(s.kappa, STIFF[p - 1]));
        rows.push(format!("{:.4e}/{:.4e}", m.kappa, s.kappa));
    }
    let elapsed = t.elapsed();
    Ok(Verdict {
        passed: worst <= 5e-3 && elapsed < Duration::from_secs(10),
        detail: format!(
            "κ(M)/κ(S) {}; worst rel. error {worst:.2e}; {elapsed:.2?}",
            rows.join(", ")
        ),
    })
}

fn tetrahedron_conditioning() -> hdiv::error::Result<Verdict> {
    const FIRST_M: [f64; 4] = [3.084e1, 6.987e3, 3.412e6, 5.972e9];
    const SECOND_M: [f64; 4] = [3.084e1, 7.733e4, 2.289e6, 2.717e7];
    const FIRST_S: [f64; 4] = [1.989e1, 3.395e3, 1.094e6, 2.883e9];
    const SECOND_S: [f64; 4] = [1.989e1, 5.917e4, 1.191e6, 2.372e7];
    let t = Instant::now();
    let mut misses = Vec::new();
    for p in ORDERS {
        let (fm, fs) = set_condition(
            &build_set(ElementKind::Tet, p, EdgeFaceVariant::FirstKind)?,
            Path::Exact,
        )?;
        let (sm, ss) = set_condition(
            &build_set(ElementKind::Tet, p, EdgeFaceVariant::SecondKind)?,
            Path::Exact,
        )?;
        let i = p - 1;
        let checks = [
            ("first κ(M)", fm.kappa, FIRST_M[i], 0.02),
            ("first κ(S)", fs.kappa, FIRST_S[i], 0.02),
            ("second κ(M)", sm.kappa, SECOND_M[i], 0.02),
            ("second κ(S)", ss.kappa, SECOND_S[i], 0.02),
            (
                "ratio M",
                fm.kappa / sm.kappa,
                FIRST_M[i] / SECOND_M[i],
                0.03,
            ),
            (
                "ratio S",
                fs.kappa / ss.kappa,
                FIRST_S[i] / SECOND_S[i],
                0.03,
            ),
        ];
        for (name, got, want, tol) in checks {
            if rel(got, want) > tol {
                misses.push(format!("p={p} {name} {got:.4e} vs {want:.4e}"));
            }
        }
    }
    let elapsed = t.elapsed();
    let passed = misses.is_empty() && elapsed < Duration::from_secs(60);
    let detail = if misses.is_empty() {
        format!("all within tolerance; {elapsed:.2?}")
    } else {
        format!(
            "{} misses: {}; {elapsed:.2?}",
            misses.len(),
            misses.join("; ")
        )
    };
    Ok(Verdict { passed, detail })
}

fn dimension_counts(sets: &[BasisSet]) -> Verdict {
    let bad: Vec<String> = sets
        .iter()
        .filter(|s| {
            s.dimension() != expected_dimension(s.kind, s.order)
                || s.table_rows().iter().any(|r| r.expected != r.actual)
        })
        .map(label)
        .collect();
    Verdict {
        passed: bad.is_empty(),
        detail: format!("{} sets, mismatches: {bad:?}", sets.len()),
    }
}

fn degeneracy() -> hdiv::error::Result<Verdict> {
    let c = tet::degeneracy_certificate(2)?;
    let elem = ReferenceElement::new(ElementKind::Tet);
    let fams = tet::build_edge_face(
        &elem,
        2,
        EdgeFaceVariant::AC,
        &hdiv::poly1d::PolyFamilyCache::new(),
    )?;
    let relation_holds = c.nullspace.iter().all(|v| {
        let sum = fams
            .iter()
            .zip(v)
            .fold(VectorField::zero(3, 3), |acc, (f, c)| {
                &acc + &f.field.scale_rational(c)
            });
        sum.is_zero() && v.iter().any(|c| !c.is_zero())
    });
    let mut full = true;
    for p in ORDERS {
        for v in [EdgeFaceVariant::FirstKind, EdgeFaceVariant::SecondKind] {
            full &= all_passed(&checks::rank(&build_set(ElementKind::Tet, p, v)?)?);
        }
    }
    Ok(Verdict {
        passed: c.rank < c.count && !c.nullspace.is_empty() && relation_holds && full,
        detail: format!(
            "ac p=2 rank {}/{} with {} exact relation(s) (verified: {relation_holds}); first/second full rank 12p: {full}",
            c.rank,
            c.count,
            c.nullspace.len()
        ),
    })
}

fn exact_properties(sets: &[BasisSet]) -> hdiv::error::Result<Verdict> {
    let (mut n, mut failed) = (0, Vec::new());
    for set in sets {
        let mut outcomes = checks::divergence_free(set)?;
        outcomes.extend(checks::traces(set)?);
        n += outcomes.len();
        failed.extend(
            outcomes
                .iter()
                .filter(|o| !o.passed)
                .map(|o| format!("{} {}", label(set), o.name)),
        );
    }
    Ok(Verdict {
        passed: failed.is_empty(),
        detail: format!("{n} exact checks, {} failures {failed:?}", failed.len()),
    })
}

fn orthonormality(sets: &[BasisSet]) -> hdiv::error::Result<Verdict> {
    let (mut n, mut failed) = (0, Vec::new());
    for set in sets {
        let outcomes = checks::orthonormality(set, Path::Exact)?;
        n += outcomes.len();
        failed.extend(
            outcomes
                .iter()
                .filter(|o| !o.passed)
                .map(|o| format!("{} {}: {}", label(set), o.name, o.detail)),
        );
    }
    Ok(Verdict {
        passed: failed.is_empty() && n > 0,
        detail: format!("{n} blocks, {} failures {failed:?}", failed.len()),
    })
}

fn oracle_equivalence(sets: &[BasisSet]) -> hdiv::error::Result<Verdict> {
    let mut worst: f64 = 0.0;
    let mut worst_at = String::new();
    for set in sets {
        let (m, s) = path_discrepancy(set)?;
        if m.max(s) > worst {
            worst = m.max(s);
            worst_at = label(set);
        }
    }
    let mut jac_fail = Vec::new();
    for kind in ElementKind::ALL {
        let set = build_set(kind, 4, EdgeFaceVariant::FirstKind)?;
        let out = checks::jacobian_fd(&set, 20, 2024)?;
        jac_fail.extend(
            out.iter()
                .filter(|o| !o.passed)
                .map(|o| format!("{kind} #{:?}", o.function)),
        );
    }
    Ok(Verdict {
        passed: worst <= 1e-12 && jac_fail.is_empty(),
        detail: format!(
            "max |exact − quadrature| = {worst:.2e} ({worst_at}); jacobian vs central differences failures: {}",
            jac_fail.len()
        ),
    })
}

/// Random curl fields: divergence-free inputs independent of any basis.
fn random_curl(kind: ElementKind, rng: &mut impl Rng) -> VectorField {
    let d = kind.dim();
    let mut random_poly = || {
        let terms = (0..6).map(|_| {
            let mut e = [0u16; 3];
            for slot in e.iter_mut().take(d) {
                *slot = rng.gen_range(0..3);
            }
            (
                Monomial(e),
                Rational::from_integer(rng.gen_range(-5..=5).into()),
            )
        });
        MPoly::from_terms(d, terms)
    };
    if d == 2 {
        VectorField::curl2d(&random_poly()).expect("2-D")
    } else {
        VectorField::from_components(vec![random_poly(), random_poly(), random_poly()])
            .curl3d()
            .expect("3-D")
    }
}

fn divergence_control() -> hdiv::error::Result<Verdict> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut problems = Vec::new();
    for kind in ElementKind::ALL {
        let set = build_set(kind, 2, EdgeFaceVariant::FirstKind)?;
        for trial in 0..100 {
            let coeffs = (0..set.dimension())
                .map(|_| rng.gen_range(-1.0..1.0))
                .collect();
            let r = augment(&DiscreteField::from_set(&set, coeffs)?, 2)?;
            let scale = r
                .numerator
                .abs()
                .max(r.denominator * r.coefficient.abs())
                .max(1.0);
            if r.after > r.before {
                problems.push(format!("{kind} #{trial}: norm increased"));
            }
            if r.derivative_at(r.coefficient).abs() > 1e-10 * scale {
                problems.push(format!("{kind} #{trial}: not stationary"));
            }
            if r.norm_at(r.coefficient + 1e-3) < r.after
                || r.norm_at(r.coefficient - 1e-3) < r.after
            {
                problems.push(format!("{kind} #{trial}: perturbation decreased the norm"));
            }
            let curl =
                DiscreteField::from_fields(kind, 2, vec![random_curl(kind, &mut rng)], vec![1.0])?;
            if augment(&curl, 2)?.coefficient != 0.0 {
                problems.push(format!(
                    "{kind} #{trial}: C_χ ≠ 0 for a divergence-free input"
                ));
            }
        }
        let elem = ReferenceElement::new(kind);
        for p in ORDERS {
            let chi = bubble_for(kind, p)?;
            for (id, facet, normal) in elem.boundary() {
                if !chi.restrict(&facet)?.dot_const(&normal).is_zero() {
                    problems.push(format!("{kind} p={p}: bubble trace on facet {id}"));
                }
            }
            if chi
                .divergence()?
                .integrate(kind)?
                .iter()
                .any(|s| !s.coeff.is_zero())
            {
                problems.push(format!("{kind} p={p}: bubble mean divergence"));
            }
        }
    }
    Ok(Verdict {
        passed: problems.is_empty(),
        detail: format!("400 random fields, 400 curl fields, 16 bubbles; problems: {problems:?}"),
    })
}

fn main() -> ExitCode {
    let sets = all_sets().expect("basis sets");
    let results: Vec<(usize, &str, hdiv::error::Result<Verdict>)> = vec![
        (1, "triangle condition numbers", triangle_conditioning()),
        (
            2,
            "tetrahedron condition numbers",
            tetrahedron_conditioning(),
        ),
        (3, "dimension counts", Ok(dimension_counts(&sets))),
        (4, "degeneracy certificate", degeneracy()),
        (5, "exact property suite", exact_properties(&sets)),
        (6, "orthonormality suite", orthonormality(&sets)),
        (7, "oracle equivalence", oracle_equivalence(&sets)),
        (8, "divergence control", divergence_control()),
    ];
    let mut unexpected = 0;
    for (n, name, res) in results {
        let v = res.unwrap_or_else(|e| Verdict {
            passed: false,
            detail: format!("error: {e}"),
        });
        let known_red = KNOWN_RED.contains(&n);
        let tag = match (v.passed, known_red) {
            (true, false) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
            (true, true) => "PASS (listed as known-red; update the list)",
        };
        println!("criterion {n} [{name}]: {tag} — {}", v.detail);
        if v.passed == known_red {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected result(s)");
        ExitCode::FAILURE
    }
}
