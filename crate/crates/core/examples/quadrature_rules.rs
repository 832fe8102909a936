//! Gauss–Legendre tensor rules and Duffy-collapsed simplex rules, checked
//! against exact monomial integrals.
use hdiv::assembly::quadrature;
use hdiv::geometry::ElementKind;

fn main() {
    for kind in ElementKind::ALL {
        let rule = quadrature(kind, 6);
        let sum: f64 = rule.weights.iter().sum();
        let q = rule.integrate(|x| x.iter().map(|v| v * v * v).product());
        println!(
            "{kind}: {} points, Σw = {sum:.16}, ∫Πx³ ≈ {q:.16e}",
            rule.len()
        );
    }
}
