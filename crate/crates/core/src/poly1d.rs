//! Legendre, integrated Legendre and Jacobi families, plus their
//! homogenized two-variable forms.
//!
//! Normalization: `ℓ_n(1) = 1` and `P_n^{(α,β)}(1) = C(n+α, n)`.

use std::collections::HashMap;
use std::sync::RwLock;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{int, rat, MPoly, Monomial, Rational};

pub fn legendre(n: usize) -> MPoly {
    let x = MPoly::var(1, 0);
    let mut prev = MPoly::one(1);
    if n == 0 {
        return prev;
    }
    let mut cur = x.clone();
    for k in 1..n {
        // (k+1) ℓ_{k+1} = (2k+1) x ℓ_k − k ℓ_{k−1}
        let k = k as i64;
        let next =
            (&(&x * &cur).scale(&int(2 * k + 1)) - &prev.scale(&int(k))).scale(&rat(1, k + 1));
        prev = cur;
        cur = next;
    }
    cur
}

/// `L_n(x) = ∫_{-1}^x ℓ_{n-1}`, defined for `n ≥ 2`.
pub fn integrated_legendre(n: usize) -> Result<MPoly> {
    if n < 2 {
        return Err(Error::InvalidPolynomial(format!(
            "integrated Legendre degree {n} < 2"
        )));
    }
    let anti = antiderivative(&legendre(n - 1));
    let at_minus_one = anti.evaluate(&[int(-1)]);
    Ok(&anti - &MPoly::constant(1, at_minus_one))
}

fn antiderivative(p: &MPoly) -> MPoly {
    MPoly::from_terms(
        1,
        p.terms().map(|(m, c)| {
            let e = m.exponent(0) + 1;
            (Monomial([e, 0, 0]), c / int(e as i64))
        }),
    )
}

/// `L^s_n(x, t) = t^n L_n(x/t)`, homogeneous of degree `n`.
pub fn scaled_integrated_legendre(n: usize) -> Result<MPoly> {
    let l = integrated_legendre(n)?;
    Ok(homogenize(&l, n as u16))
}

fn homogenize(p: &MPoly, n: u16) -> MPoly {
    MPoly::from_terms(
        2,
        p.terms().map(|(m, c)| {
            let e = m.exponent(0);
            (Monomial([e, n - e, 0]), c.clone())
        }),
    )
}

fn check_params(alpha: i64, beta: i64) -> Result<()> {
    if alpha < 0 || beta < 0 {
        return Err(Error::InvalidPolynomial(format!(
            "Jacobi parameters ({alpha}, {beta}) must be non-negative integers"
        )));
    }
    Ok(())
}

/// Classical Jacobi polynomial `P_n^{(α,β)}` on `[-1, 1]`.
pub fn jacobi(n: usize, alpha: i64, beta: i64) -> Result<MPoly> {
    let h = homogenized_jacobi(n, alpha, beta)?;
    // b = 1, a = (x+1)/2
    let x = MPoly::var(1, 0);
    let a = (&x + &MPoly::one(1)).scale(&rat(1, 2));
    h.substitute(&[a, MPoly::one(1)])
}

/// `HP_n(a, b) = b^n P_n^{(α,β)}(2a/b − 1)`, built by the three-term
/// recurrence written in the homogeneous variables so nothing is divided.
pub fn homogenized_jacobi(n: usize, alpha: i64, beta: i64) -> Result<MPoly> {
    check_params(alpha, beta)?;
    let a = MPoly::var(2, 0);
    let b = MPoly::var(2, 1);
    let x = &a.scale(&int(2)) - &b; // b·x
    let s = alpha + beta;
    let mut prev = MPoly::one(2);
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = (&x.scale(&int(s + 2)) + &b.scale(&int(alpha - beta))).scale(&rat(1, 2));
    let b2 = &b * &b;
    for k in 2..=n as i64 {
        let c = 2 * k + s;
        let lead = rat(1, 2 * k * (k + s) * (c - 2));
        let lin = &x.scale(&int(c * (c - 2))) + &b.scale(&int(alpha * alpha - beta * beta));
        let first = (&lin * &cur).scale(&int(c - 1));
        let second = (&b2 * &prev).scale(&int(2 * (k + alpha - 1) * (k + beta - 1) * c));
        let next = (&first - &second).scale(&lead);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Compose a univariate polynomial with an argument polynomial.
pub fn compose(p: &MPoly, arg: &MPoly) -> MPoly {
    p.substitute(std::slice::from_ref(arg))
        .expect("univariate composition")
}

/// Compose a bivariate polynomial with two argument polynomials.
pub fn compose2(p: &MPoly, a: &MPoly, b: &MPoly) -> MPoly {
    p.substitute(&[a.clone(), b.clone()])
        .expect("bivariate composition")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Key {
    Legendre(usize),
    Integrated(usize),
    Scaled(usize),
    Jacobi(usize, i64, i64),
    Homogenized(usize, i64, i64),
}

/// Memoized families; shareable across threads.
#[derive(Default)]
pub struct PolyFamilyCache {
    map: RwLock<HashMap<Key, MPoly>>,
}

impl PolyFamilyCache {
    pub fn new() -> Self {
        Self::default()
    }

    fn get<F: FnOnce() -> Result<MPoly>>(&self, key: Key, make: F) -> Result<MPoly> {
        if let Some(p) = self.map.read().expect("cache lock").get(&key) {
            return Ok(p.clone());
        }
        let p = make()?;
        self.map.write().expect("cache lock").insert(key, p.clone());
        Ok(p)
    }

    pub fn legendre(&self, n: usize) -> MPoly {
        self.get(Key::Legendre(n), || Ok(legendre(n)))
            .expect("Legendre is total")
    }

    pub fn integrated_legendre(&self, n: usize) -> Result<MPoly> {
        self.get(Key::Integrated(n), || integrated_legendre(n))
    }

    pub fn scaled_integrated_legendre(&self, n: usize) -> Result<MPoly> {
        self.get(Key::Scaled(n), || scaled_integrated_legendre(n))
    }

    pub fn jacobi(&self, n: usize, alpha: i64, beta: i64) -> Result<MPoly> {
        self.get(Key::Jacobi(n, alpha, beta), || jacobi(n, alpha, beta))
    }

    pub fn homogenized_jacobi(&self, n: usize, alpha: i64, beta: i64) -> Result<MPoly> {
        self.get(Key::Homogenized(n, alpha, beta), || {
            homogenized_jacobi(n, alpha, beta)
        })
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `∫_{-1}^{1} (1−x)^α (1+x)^β f(x) dx` for a univariate polynomial, exactly.
pub fn weighted_integral(f: &MPoly, alpha: u32, beta: u32) -> Rational {
    let x = MPoly::var(1, 0);
    let one = MPoly::one(1);
    let w = &(&one - &x).pow(alpha) * &(&one + &x).pow(beta);
    let g = &w * f;
    let mut acc = Rational::zero();
    for (m, c) in g.terms() {
        let e = m.exponent(0) as i64;
        if e % 2 == 0 {
            acc += c * rat(2, e + 1);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn x() -> MPoly {
        MPoly::var(1, 0)
    }

    #[test]
    fn low_order_legendre() {
        assert_eq!(legendre(0), MPoly::one(1));
        assert_eq!(legendre(1), x());
        let l2 = (&x().pow(2).scale(&int(3)) - &MPoly::one(1)).scale(&rat(1, 2));
        assert_eq!(legendre(2), l2);
        for n in 0..9 {
            assert!(legendre(n).evaluate(&[int(1)]).is_one());
        }
    }

    #[test]
    fn legendre_orthogonality() {
        for m in 0..=8 {
            for n in 0..m {
                assert!(weighted_integral(&(&legendre(m) * &legendre(n)), 0, 0).is_zero());
            }
        }
    }

    #[test]
    fn integrated_legendre_examples() {
        let l2 = (&x().pow(2) - &MPoly::one(1)).scale(&rat(1, 2));
        assert_eq!(integrated_legendre(2).unwrap(), l2);
        let l3 = (&x().pow(3) - &x()).scale(&rat(1, 2));
        assert_eq!(integrated_legendre(3).unwrap(), l3);
        for n in 2..=8 {
            let l = integrated_legendre(n).unwrap();
            assert!(l.evaluate(&[int(1)]).is_zero());
            assert!(l.evaluate(&[int(-1)]).is_zero());
            assert_eq!(l.partial(0).unwrap(), legendre(n - 1));
        }
        assert!(integrated_legendre(1).is_err());
    }

    #[test]
    fn composed_integrated_legendre() {
        let xi = MPoly::var(2, 0);
        let arg = &xi.scale(&int(2)) - &MPoly::one(2);
        let got = compose(&integrated_legendre(2).unwrap(), &arg);
        assert_eq!(got, &xi.pow(2).scale(&int(2)) - &xi.scale(&int(2)));
    }

    #[test]
    fn scaled_legendre() {
        let xs = MPoly::var(2, 0);
        let t = MPoly::var(2, 1);
        assert_eq!(
            scaled_integrated_legendre(2).unwrap(),
            (&xs.pow(2) - &t.pow(2)).scale(&rat(1, 2))
        );
        assert_eq!(
            scaled_integrated_legendre(3).unwrap(),
            (&xs.pow(3) - &(&xs * &t.pow(2))).scale(&rat(1, 2))
        );
        for n in 2..=6 {
            let s = scaled_integrated_legendre(n).unwrap();
            let at_one = s.substitute(&[x(), MPoly::one(1)]).unwrap();
            assert_eq!(at_one, integrated_legendre(n).unwrap());
        }
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(0, 3, 1).unwrap(), MPoly::one(1));
        assert_eq!(jacobi(1, 0, 2).unwrap(), MPoly::affine(1, -1, &[2]));
        assert_eq!(jacobi(2, 3, 0).unwrap().evaluate(&[int(1)]), int(10));
        assert!(jacobi(2, -1, 0).is_err());
    }

    fn binomial(n: i64, k: i64) -> Rational {
        (0..k).fold(Rational::one(), |acc, i| acc * rat(n - i, i + 1))
    }

    #[test]
    fn jacobi_endpoint_normalization() {
        for (a, b) in [(0, 2), (1, 2), (2, 2), (3, 0), (5, 2), (9, 2)] {
            for n in 0..=6 {
                let v = jacobi(n, a, b).unwrap().evaluate(&[int(1)]);
                assert_eq!(v, binomial(n as i64 + a, n as i64), "n={n} α={a} β={b}");
            }
        }
    }

    #[test]
    fn jacobi_orthogonality() {
        for (a, b) in [(0u32, 2u32), (1, 2), (2, 2), (3, 0), (5, 2), (7, 2)] {
            for m in 0..=6 {
                for n in 0..m {
                    let f = &jacobi(m, a as i64, b as i64).unwrap()
                        * &jacobi(n, a as i64, b as i64).unwrap();
                    assert!(
                        weighted_integral(&f, a, b).is_zero(),
                        "m={m} n={n} ({a},{b})"
                    );
                }
            }
        }
    }

    #[test]
    fn homogenized_examples() {
        assert_eq!(homogenized_jacobi(0, 0, 2).unwrap(), MPoly::one(2));
        let a = MPoly::var(2, 0);
        let b = MPoly::var(2, 1);
        assert_eq!(
            homogenized_jacobi(1, 0, 2).unwrap(),
            &a.scale(&int(4)) - &b.scale(&int(3))
        );
        for n in 0..=4 {
            let h = homogenized_jacobi(n, 2, 2).unwrap();
            let at_b1 = h.substitute(&[x(), MPoly::one(1)]).unwrap();
            let direct = compose(&jacobi(n, 2, 2).unwrap(), &MPoly::affine(1, -1, &[2]));
            assert_eq!(at_b1, direct);
        }
    }

    #[test]
    fn homogenized_is_homogeneous() {
        let h = homogenized_jacobi(4, 3, 2).unwrap();
        assert!(h.terms().all(|(m, _)| m.degree() == 4));
        let v = h.evaluate(&[rat(1, 3), rat(2, 3)]);
        let direct = jacobi(4, 3, 2).unwrap().evaluate(&[rat(0, 1)]) * rat(16, 81);
        assert_eq!(v, direct);
    }

    #[test]
    fn cache_matches_fresh() {
        let c = PolyFamilyCache::new();
        assert_eq!(
            c.homogenized_jacobi(3, 1, 2).unwrap(),
            homogenized_jacobi(3, 1, 2).unwrap()
        );
        assert_eq!(
            c.homogenized_jacobi(3, 1, 2).unwrap(),
            homogenized_jacobi(3, 1, 2).unwrap()
        );
        assert_eq!(c.len(), 1);
        assert_eq!(c.legendre(4), legendre(4));
    }
}
