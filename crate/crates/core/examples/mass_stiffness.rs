//! Mass and stiffness matrices by exact integration and by quadrature;
//! prints their largest entrywise difference and a matrix in CSV.
use clap::Parser;
use hdiv::assembly::{mass_matrix, stiffness_matrix, Path};
use hdiv::basis::{build_set, EdgeFaceVariant};
use hdiv::geometry::ElementKind;

#[derive(Parser)]
struct Args {
    #[arg(short, long, default_value = "tri")]
    element: ElementKind,
    #[arg(short, long, default_value_t = 1)]
    order: usize,
}

fn main() -> hdiv::error::Result<()> {
    let args = Args::parse();
    let set = build_set(args.element, args.order, EdgeFaceVariant::FirstKind)?;
    let m = mass_matrix(&set, Path::Exact)?;
    let s = stiffness_matrix(&set, Path::Exact)?;
    let dm = m.max_abs_diff(&mass_matrix(&set, Path::Quadrature)?);
    let ds = s.max_abs_diff(&stiffness_matrix(&set, Path::Quadrature)?);
    println!(
        "{} p={}: n = {}, exact vs quadrature: mass {dm:.2e}, stiffness {ds:.2e}",
        set.kind,
        set.order,
        m.order()
    );
    print!("{}", m.to_csv());
    Ok(())
}
