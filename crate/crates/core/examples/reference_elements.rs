//! Reference element data: vertices, barycentric / bilinear vertex
//! functions, edge and face ids, tangents and normals.
use hdiv::geometry::{ElementKind, ReferenceElement};
use hdiv::poly::Rational;

fn show(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn main() {
    for kind in ElementKind::ALL {
        let e = ReferenceElement::new(kind);
        println!(
            "{kind}: {} vertices, measure {}",
            e.vertices.len(),
            kind.measure()
        );
        for edge in &e.edges {
            let (a, b) = edge.endpoints;
            let normal = edge
                .normal
                .as_deref()
                .map(show)
                .unwrap_or_else(|| "-".into());
            println!(
                "  edge {} = [{a},{b}] tangent {} normal {normal}",
                edge.id,
                show(&edge.tangent)
            );
        }
        for face in &e.faces {
            println!(
                "  face {} on vertices {:?}, normal {}",
                face.id,
                face.vertices,
                show(&face.normal)
            );
        }
        if kind.is_simplex() {
            for (i, l) in e.lambda.iter().enumerate() {
                println!("  λ_{i} = {l}");
            }
        }
    }
}
