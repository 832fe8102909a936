//! Hexahedral basis: face RT0, curl-type face functions and interior
//! families, with a per-category breakdown.
use clap::Parser;
use hdiv::basis::hex;

#[derive(Parser)]
struct Args {
    #[arg(short, long, default_value_t = 2)]
    order: usize,
}

fn main() -> hdiv::error::Result<()> {
    let args = Args::parse();
    let set = hex::build_set(args.order)?;
    println!("hex p={} has {} functions", set.order, set.dimension());
    for (cat, n) in set.category_counts() {
        let free = if cat.is_divergence_free() {
            " (divergence-free)"
        } else {
            ""
        };
        println!("  {cat:<18} {n:>4}{free}");
    }
    let rt0 = &set.functions[0];
    println!("face {:?} RT0: {:?}", rt0.entity, rt0.field.unscaled());
    Ok(())
}
