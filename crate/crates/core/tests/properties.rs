use hdiv::assembly::{gram, mass_matrix, set_condition, Path};
use hdiv::basis::{build_set, EdgeFaceVariant};
use hdiv::divfree::{augment, DiscreteField};
use hdiv::field::VectorField;
use hdiv::geometry::ElementKind;
use hdiv::poly::{MPoly, Monomial, Rational};
use proptest::prelude::*;

fn kinds() -> impl Strategy<Value = ElementKind> {
    prop::sample::select(ElementKind::ALL.to_vec())
}

/// A random polynomial of low degree in `dim` variables.
fn poly(dim: usize) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::array::uniform3(0u16..3), -6i64..=6, 1i64..=4), 0..6).prop_map(
        move |terms| {
            MPoly::from_terms(
                dim,
                terms.into_iter().map(|(mut e, n, d)| {
                    e[dim..].iter_mut().for_each(|x| *x = 0);
                    (Monomial(e), Rational::new(n.into(), d.into()))
                }),
            )
        },
    )
}

fn kind_and_polys(n: usize) -> impl Strategy<Value = (ElementKind, Vec<MPoly>)> {
    kinds().prop_flat_map(move |k| (Just(k), prop::collection::vec(poly(k.dim()), n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn product_distributes((_, ps) in kind_and_polys(3)) {
        let (a, b, c) = (&ps[0], &ps[1], &ps[2]);
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
    }

    #[test]
    fn integration_is_linear((k, ps) in kind_and_polys(2), s in -5i64..=5) {
        let s = Rational::from_integer(s.into());
        let lhs = (&ps[0].scale(&s) + &ps[1]).integrate(k).unwrap();
        let rhs = ps[0].integrate(k).unwrap() * &s + ps[1].integrate(k).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn curl_fields_are_divergence_free((k, ps) in kind_and_polys(3)) {
        let f = if k.dim() == 2 {
            VectorField::curl2d(&ps[0]).unwrap()
        } else {
            VectorField::from_components(ps).curl3d().unwrap()
        };
        prop_assert!(f.divergence().unwrap().is_zero());
    }

    /// `‖Σ cᵢ φᵢ‖² = cᵀ M c`, computed independently on both paths.
    #[test]
    fn mass_is_the_quadratic_form(c in prop::collection::vec(-3i64..=3, 12)) {
        let set = build_set(ElementKind::Tri, 2, EdgeFaceVariant::FirstKind).unwrap();
        let m = mass_matrix(&set, Path::Exact).unwrap();
        let combined = set.fields().iter().zip(&c).fold(VectorField::zero(2, 2), |acc, (f, ci)| {
            &acc + &f.scale_rational(&Rational::from_integer((*ci).into()))
        });
        let direct = gram(&[combined], ElementKind::Tri, Path::Exact).unwrap().get(0, 0);
        let form: f64 = (0..12)
            .flat_map(|i| (0..12).map(move |j| (i, j)))
            .map(|(i, j)| c[i] as f64 * c[j] as f64 * m.get(i, j))
            .sum();
        prop_assert!((direct - form).abs() <= 1e-12 * direct.abs().max(1.0));
    }

    #[test]
    fn condition_number_ignores_ordering(order in Just((0..12).collect::<Vec<usize>>()).prop_shuffle()) {
        let set = build_set(ElementKind::Tri, 2, EdgeFaceVariant::FirstKind).unwrap();
        let (m0, s0) = set_condition(&set, Path::Exact).unwrap();
        let (m1, s1) = set_condition(&set.permuted(&order), Path::Exact).unwrap();
        prop_assert!((m0.kappa - m1.kappa).abs() <= 1e-10 * m0.kappa);
        prop_assert!((s0.kappa - s1.kappa).abs() <= 1e-10 * s0.kappa);
    }

    #[test]
    fn augmentation_never_increases_the_norm(
        k in kinds(),
        p in 1usize..=3,
        seed in prop::collection::vec(-1.0f64..1.0, 200),
    ) {
        let set = build_set(k, p, EdgeFaceVariant::FirstKind).unwrap();
        let coeffs = seed.iter().cycle().take(set.dimension()).copied().collect();
        let r = augment(&DiscreteField::from_set(&set, coeffs).unwrap(), p).unwrap();
        prop_assert!(r.after <= r.before);
        prop_assert!(r.norm_at(r.coefficient + 0.5) >= r.after);
    }
}
