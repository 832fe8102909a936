//! Quadrilateral basis: edge functions (lowest order and divergence-free
//! curls) and the three interior families.
use clap::Parser;
use hdiv::basis::quad;

#[derive(Parser)]
struct Args {
    #[arg(short, long, default_value_t = 2)]
    order: usize,
}

fn main() -> hdiv::error::Result<()> {
    let args = Args::parse();
    let set = quad::build_set(args.order)?;
    for row in set.table_rows() {
        println!(
            "{:<24} {:>10} = {:>3} (built {})",
            row.label, row.formula, row.expected, row.actual
        );
    }
    for f in set.functions.iter().take(5) {
        println!(
            "#{} {} {:?}: {:?}",
            f.id,
            f.category,
            f.entity,
            f.field.unscaled()
        );
        println!("    div = {:?}", f.field.divergence()?.as_rational());
    }
    Ok(())
}
