//! Triangular basis with orthonormal edge-based interior and bubble
//! functions; prints their Gram blocks.
use clap::Parser;
use hdiv::assembly::{mass_matrix, Path};
use hdiv::basis::tri;

#[derive(Parser)]
struct Args {
    #[arg(short, long, default_value_t = 4)]
    order: usize,
}

fn main() -> hdiv::error::Result<()> {
    let args = Args::parse();
    let set = tri::build_set(args.order)?;
    let m = mass_matrix(&set, Path::Exact)?;
    for (name, idx) in set.orthonormal_groups() {
        let g = m.submatrix(&idx);
        let dev = (0..idx.len())
            .flat_map(|i| (0..idx.len()).map(move |j| (i, j)))
            .map(|(i, j)| (g.get(i, j) - f64::from(u8::from(i == j))).abs())
            .fold(0.0, f64::max);
        println!(
            "{name:<24} {} functions, max |G - I| = {dev:.2e}",
            idx.len()
        );
    }
    let f = &set.functions[0];
    println!(
        "lowest-order edge function on {:?}: {:?}",
        f.entity,
        f.field.unscaled()
    );
    Ok(())
}
