//! Reduce the divergence of a random discrete field with one extra
//! interior bubble.
use clap::Parser;
use hdiv::basis::{build_set, EdgeFaceVariant};
use hdiv::divfree::{augment, bubble_order, DiscreteField};
use hdiv::geometry::ElementKind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
struct Args {
    #[arg(short, long, default_value_t = 2)]
    order: usize,
    #[arg(short, long, default_value_t = 0)]
    seed: u64,
}

fn main() -> hdiv::error::Result<()> {
    let args = Args::parse();
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    for kind in ElementKind::ALL {
        let set = build_set(kind, args.order, EdgeFaceVariant::FirstKind)?;
        let coeffs = (0..set.dimension())
            .map(|_| rng.gen_range(-1.0..1.0))
            .collect();
        let r = augment(&DiscreteField::from_set(&set, coeffs)?, args.order)?;
        println!(
            "{kind}: q = {}, C_χ = {:+.6}, ‖div‖ {:.6} → {:.6}",
            bubble_order(kind, args.order),
            r.coefficient,
            r.before,
            r.after
        );
    }
    Ok(())
}
