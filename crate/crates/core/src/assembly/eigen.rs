//! Cyclic Jacobi eigensolver for small dense symmetric matrices.

use crate::error::{Error, Result};

use super::matrix::SymmetricMatrix;

pub const MAX_SWEEPS: usize = 100;
pub const OFF_DIAGONAL_TOL: f64 = 1e-13;

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    /// Eigenvalues, ascending.
    pub values: Vec<f64>,
    pub sweeps: usize,
}

impl Spectrum {
    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(f64::NAN)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(f64::NAN)
    }
}

fn off_norm(a: &[Vec<f64>]) -> f64 {
    let mut s = 0.0;
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i != j {
                s += v * v;
            }
        }
    }
    s.sqrt()
}

/// All eigenvalues by cyclic Jacobi rotations, stopping once the
/// off-diagonal Frobenius norm is at most `1e-13 ‖A‖_F`.
pub fn eigenvalues(m: &SymmetricMatrix) -> Result<Spectrum> {
    let n = m.order();
    let mut a = m.to_dense();
    let tol = OFF_DIAGONAL_TOL * m.frobenius_norm();
    let mut sweeps = 0;
    while off_norm(&a) > tol {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                a[p][p] -= t * apq;
                a[q][q] += t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let (arp, arq) = (a[r][p], a[r][q]);
                    let np = arp - s * (arq + tau * arp);
                    let nq = arq + s * (arp - tau * arq);
                    a[r][p] = np;
                    a[p][r] = np;
                    a[r][q] = nq;
                    a[q][r] = nq;
                }
            }
        }
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    values.sort_by(f64::total_cmp);
    Ok(Spectrum { values, sweeps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity() {
        let s = eigenvalues(&SymmetricMatrix::identity(5)).unwrap();
        assert_eq!(s.values, vec![1.0; 5]);
        assert_eq!(s.sweeps, 0);
    }

    /// `Q diag(1,2,3) Qᵀ` with `Q` a product of random plane rotations.
    #[test]
    fn rotated_diagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut q = [
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ];
        for _ in 0..6 {
            let (i, j) = match rng.gen_range(0..3) {
                0 => (0, 1),
                1 => (0, 2),
                _ => (1, 2),
            };
            let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let (c, s) = (th.cos(), th.sin());
            for row in q.iter_mut() {
                let (a, b) = (row[i], row[j]);
                row[i] = c * a - s * b;
                row[j] = s * a + c * b;
            }
        }
        let d = [1.0, 2.0, 3.0];
        let a: Vec<Vec<f64>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| (0..3).map(|k| q[i][k] * d[k] * q[j][k]).sum())
                    .collect()
            })
            .collect();
        let s = eigenvalues(&SymmetricMatrix::from_dense(&a).unwrap()).unwrap();
        for (v, e) in s.values.iter().zip(d) {
            assert!((v - e).abs() < 1e-12, "{v} vs {e}");
        }
    }

    #[test]
    fn two_by_two() {
        let m = SymmetricMatrix::from_dense(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let s = eigenvalues(&m).unwrap();
        assert!((s.min() - 1.0).abs() < 1e-15 && (s.max() - 3.0).abs() < 1e-15);
    }
}
