//! Exact structural checks of every basis up to order 4: divergence-free
//! families, vanishing normal traces, orthonormal blocks and full rank.
use hdiv::assembly::Path;
use hdiv::basis::{build_set, EdgeFaceVariant};
use hdiv::checks::{divergence_free, orthonormality, rank, traces, CheckOutcome};
use hdiv::geometry::ElementKind;

fn summary(c: &[CheckOutcome]) -> String {
    format!("{}/{}", c.iter().filter(|o| o.passed).count(), c.len())
}

fn main() -> hdiv::error::Result<()> {
    for kind in ElementKind::ALL {
        for p in 1..=4 {
            let set = build_set(kind, p, EdgeFaceVariant::FirstKind)?;
            println!(
                "{kind} p={p}: div {} trace {} orthonormal {} rank {}",
                summary(&divergence_free(&set)?),
                summary(&traces(&set)?),
                summary(&orthonormality(&set, Path::Exact)?),
                summary(&rank(&set)?)
            );
        }
    }
    Ok(())
}
