//! Exact multivariate polynomials: arithmetic, derivatives, substitution and
//! integration over the four reference domains.
use hdiv::geometry::ElementKind;
use hdiv::poly::{rat, MPoly};

fn main() -> hdiv::error::Result<()> {
    let x = MPoly::var(2, 0);
    let y = MPoly::var(2, 1);
    let one = MPoly::one(2);

    // λ0 λ1 λ2 on the triangle.
    let l0 = &(&one - &x) - &y;
    let bubble = &(&l0 * &x) * &y;
    println!("b = {bubble}");
    println!("∂b/∂x = {}", bubble.partial(0)?);
    println!("∫_tri b = {}", bubble.integrate(ElementKind::Tri)?);

    // (1 - ξ)(1 - η) on the unit square, then restricted to η = ξ.
    let bilinear = &(&one - &x) * &(&one - &y);
    println!(
        "∫_quad (1-ξ)(1-η) = {}",
        bilinear.integrate(ElementKind::Quad)?
    );
    let t = MPoly::var(1, 0);
    let diag = bilinear.substitute(&[t.clone(), t])?;
    println!("on the diagonal: {diag}");
    println!(
        "value at (1/2, 1/3) = {}",
        bilinear.evaluate(&[rat(1, 2), rat(1, 3)])
    );

    let z = MPoly::var(3, 2);
    println!("∫_tet z² = {}", z.pow(2).integrate(ElementKind::Tet)?);
    println!("∫_hex z² = {}", z.pow(2).integrate(ElementKind::Hex)?);
    Ok(())
}
