//! The earlier edge-based face family on the tetrahedron loses rank at
//! p = 2; the exact certificate gives the linear relation.
use hdiv::basis::tet::degeneracy_certificate;

fn main() -> hdiv::error::Result<()> {
    for p in 1..=3 {
        let c = degeneracy_certificate(p)?;
        println!("p={p}: {} functions, rank {}", c.count, c.rank);
        for v in &c.nullspace {
            let terms: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != num_rational::BigRational::from_integer(0.into()))
                .map(|(i, c)| format!("{c}·Φ{i}"))
                .collect();
            println!("  0 = {}", terms.join(" + "));
        }
    }
    Ok(())
}
