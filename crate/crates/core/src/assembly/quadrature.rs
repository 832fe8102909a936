//! Gauss–Legendre rules: tensor products on the unit square and cube,
//! Duffy-collapsed products on the simplexes.

use crate::geometry::ElementKind;

#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub kind: ElementKind,
    /// Polynomial degree the rule was built for (total degree on
    /// simplexes, degree per variable on tensor elements).
    pub degree: u32,
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `Σ w_q f(x_q)` with compensated summation.
    pub fn integrate(&self, f: impl Fn(&[f64]) -> f64) -> f64 {
        let mut acc = Neumaier::default();
        for (x, w) in self.points.iter().zip(&self.weights) {
            acc.add(w * f(x));
        }
        acc.sum()
    }
}

/// `n`-point Gauss–Legendre nodes and weights on `[-1, 1]`, ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut t = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, t);
            dp = d;
            let dt = p / d;
            t -= dt;
            if dt.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_and_derivative(n, t);
        dp = if d != 0.0 { d } else { dp };
        let wi = 2.0 / ((1.0 - t * t) * dp * dp);
        x[i] = -t;
        x[n - 1 - i] = t;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

fn legendre_and_derivative(n: usize, t: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, t);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (t * p1 - p0) / (t * t - 1.0);
    (p1, d)
}

/// Gauss–Legendre mapped to `[0, 1]`.
pub fn gauss_legendre_unit(n: usize) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    (
        x.iter().map(|t| 0.5 * (t + 1.0)).collect(),
        w.iter().map(|v| 0.5 * v).collect(),
    )
}

/// Points per axis used by [`quadrature`].
pub fn points_per_axis(kind: ElementKind, degree: u32) -> usize {
    let d = degree as usize;
    if kind.is_simplex() {
        (d + kind.dim() + 2).div_ceil(2) + 1
    } else {
        (d + 1).div_ceil(2).max(1)
    }
}

/// A rule exact for polynomials of the given degree on `kind`.
pub fn quadrature(kind: ElementKind, degree: u32) -> QuadratureRule {
    let n = points_per_axis(kind, degree);
    let (x, w) = gauss_legendre_unit(n);
    let mut points = Vec::new();
    let mut weights = Vec::new();
    match kind {
        ElementKind::Quad => {
            for i in 0..n {
                for j in 0..n {
                    points.push(vec![x[i], x[j]]);
                    weights.push(w[i] * w[j]);
                }
            }
        }
        ElementKind::Hex => {
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        points.push(vec![x[i], x[j], x[k]]);
                        weights.push(w[i] * w[j] * w[k]);
                    }
                }
            }
        }
        ElementKind::Tri => {
            for i in 0..n {
                let u = x[i];
                for j in 0..n {
                    points.push(vec![u, x[j] * (1.0 - u)]);
                    weights.push(w[i] * w[j] * (1.0 - u));
                }
            }
        }
        ElementKind::Tet => {
            for i in 0..n {
                let u = x[i];
                for j in 0..n {
                    let v = x[j];
                    for k in 0..n {
                        points.push(vec![u, v * (1.0 - u), x[k] * (1.0 - u) * (1.0 - v)]);
                        weights.push(w[i] * w[j] * w[k] * (1.0 - u) * (1.0 - u) * (1.0 - v));
                    }
                }
            }
        }
    }
    QuadratureRule {
        kind,
        degree,
        points,
        weights,
    }
}

/// Neumaier's compensated summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn sum(&self) -> f64 {
        self.sum + self.comp
    }
}
