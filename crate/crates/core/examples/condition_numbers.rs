//! Condition numbers of mass and stiffness matrices for the triangle and
//! both tetrahedral edge-based face families, p = 1..4.
use hdiv::assembly::{set_condition, Path};
use hdiv::basis::{build_set, EdgeFaceVariant};
use hdiv::geometry::ElementKind;

fn main() -> hdiv::error::Result<()> {
    println!("triangle");
    for p in 1..=4 {
        let (m, s) = set_condition(
            &build_set(ElementKind::Tri, p, EdgeFaceVariant::FirstKind)?,
            Path::Exact,
        )?;
        println!("  p={p}  κ(M) = {:.4e}  κ(S) = {:.4e}", m.kappa, s.kappa);
    }
    println!("tetrahedron            first kind                second kind");
    for p in 1..=4 {
        let (fm, fs) = set_condition(
            &build_set(ElementKind::Tet, p, EdgeFaceVariant::FirstKind)?,
            Path::Exact,
        )?;
        let (sm, ss) = set_condition(
            &build_set(ElementKind::Tet, p, EdgeFaceVariant::SecondKind)?,
            Path::Exact,
        )?;
        println!(
            "  p={p}  {:.4e} {:.4e}    {:.4e} {:.4e}    ratio {:.3} {:.3}",
            fm.kappa,
            fs.kappa,
            sm.kappa,
            ss.kappa,
            fm.kappa / sm.kappa,
            fs.kappa / ss.kappa
        );
    }
    Ok(())
}
