//! Legendre, integrated Legendre, scaled and homogenized Jacobi polynomials.
use hdiv::poly1d::{weighted_integral, PolyFamilyCache};

fn main() -> hdiv::error::Result<()> {
    let cache = PolyFamilyCache::new();
    for n in 0..=4 {
        println!("ℓ_{n}(x) = {}", cache.legendre(n));
    }
    for n in 2..=4 {
        println!("L_{n}(x) = {}", cache.integrated_legendre(n)?);
    }
    println!("L^s_3(x, t) = {}", cache.scaled_integrated_legendre(3)?);
    println!("P_2^(1,2)(x) = {}", cache.jacobi(2, 1, 2)?);
    println!("HP_2^(0,2)(a, b) = {}", cache.homogenized_jacobi(2, 0, 2)?);

    // Orthogonality under the (1-x)^2 weight.
    let p1 = cache.jacobi(1, 2, 0)?;
    let p2 = cache.jacobi(2, 2, 0)?;
    println!(
        "∫(1-x)² P_1 P_2 = {}",
        weighted_integral(&(&p1 * &p2), 2, 0)
    );
    println!("{} families cached", cache.len());
    Ok(())
}
