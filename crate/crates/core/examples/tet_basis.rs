//! Tetrahedral basis with either edge-based face family, and the
//! per-category table.
use clap::Parser;
use hdiv::basis::{tet, EdgeFaceVariant};

#[derive(Parser)]
struct Args {
    #[arg(short, long, default_value_t = 3)]
    order: usize,
    /// `first` or `second`.
    #[arg(short, long, default_value = "first")]
    variant: EdgeFaceVariant,
}

fn main() -> hdiv::error::Result<()> {
    let args = Args::parse();
    let set = tet::build_set(args.order, args.variant)?;
    for row in set.table_rows() {
        println!("{:<32} {:>18} = {:>3}", row.label, row.formula, row.actual);
    }
    let f = &set.functions[0];
    println!("{} on {:?}, index {:?}:", f.category, f.entity, f.indices);
    for part in f.field.parts() {
        println!("  √{} · {:?}", part.radicand, part.components);
    }
    Ok(())
}
