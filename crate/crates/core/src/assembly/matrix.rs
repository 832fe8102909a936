//! Mass and stiffness matrices on the reference element, assembled either
//! by exact integration or by quadrature.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::basis::BasisSet;
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::geometry::ElementKind;
use crate::poly::{factorial, rational_to_f64, Monomial, Rational};

use super::quadrature::{quadrature, Neumaier};

/// Dense symmetric matrix stored as its lower triangle, row by row.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    lower: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        SymmetricMatrix {
            n,
            lower: vec![0.0; n * (n + 1) / 2],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// Builds from `f(i, j)` evaluated for `j ≤ i`.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                m.lower[i * (i + 1) / 2 + j] = f(i, j);
            }
        }
        m
    }

    /// Symmetrizes `(A + Aᵀ)/2` of a dense row-major matrix.
    pub fn from_dense(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                left: n,
                right: r.len(),
            });
        }
        Ok(Self::from_fn(n, |i, j| 0.5 * (rows[i][j] + rows[j][i])))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        self.lower[i * (i + 1) / 2 + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        self.lower[i * (i + 1) / 2 + j] = v;
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Principal submatrix on `idx`.
    pub fn submatrix(&self, idx: &[usize]) -> SymmetricMatrix {
        Self::from_fn(idx.len(), |i, j| self.get(idx[i], idx[j]))
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                s += self.get(i, j).powi(2);
            }
        }
        s.sqrt()
    }

    pub fn max_abs_diff(&self, other: &SymmetricMatrix) -> f64 {
        assert_eq!(self.n, other.n);
        self.lower
            .iter()
            .zip(&other.lower)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Row-major CSV with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| format!("{:.16e}", self.get(i, j)))
                .collect();
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }
}

/// How matrix entries are integrated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Path {
    #[default]
    Exact,
    Quadrature,
}

impl FromStr for Path {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "exact" => Ok(Path::Exact),
            "quadrature" => Ok(Path::Quadrature),
            other => Err(format!("unknown path `{other}`")),
        }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Path::Exact => "exact",
            Path::Quadrature => "quadrature",
        })
    }
}

pub fn mass_matrix(set: &BasisSet, path: Path) -> Result<SymmetricMatrix> {
    gram(&set.fields(), set.kind, path)
}

/// Frobenius contraction of the Jacobians.
pub fn stiffness_matrix(set: &BasisSet, path: Path) -> Result<SymmetricMatrix> {
    let jac: Vec<VectorField> = set.functions.iter().map(|f| f.field.jacobian()).collect();
    gram(&jac, set.kind, path)
}

/// `G_ab = ∫ f_a · f_b` over the reference element.
pub fn gram(fields: &[VectorField], kind: ElementKind, path: Path) -> Result<SymmetricMatrix> {
    let d = kind.dim();
    if let Some(f) = fields.iter().find(|f| f.nvars() != d) {
        return Err(Error::DimensionMismatch {
            left: d,
            right: f.nvars(),
        });
    }
    if let Some(f) = fields.iter().find(|f| f.len() != fields[0].len()) {
        return Err(Error::DimensionMismatch {
            left: fields[0].len(),
            right: f.len(),
        });
    }
    match path {
        Path::Exact => exact_gram(fields, kind),
        Path::Quadrature => quadrature_gram(fields, kind),
    }
}

fn fill_parallel(n: usize, entry: impl Fn(usize, usize) -> f64 + Sync) -> SymmetricMatrix {
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| (0..=i).map(|j| entry(i, j)).collect())
        .collect();
    SymmetricMatrix {
        n,
        lower: rows.into_iter().flatten().collect(),
    }
}

fn quadrature_degree(fields: &[VectorField], kind: ElementKind) -> u32 {
    let deg = if kind.is_simplex() {
        fields.iter().map(VectorField::degree).max().unwrap_or(0)
    } else {
        (0..kind.dim())
            .flat_map(|v| fields.iter().map(move |f| f.degree_in(v)))
            .max()
            .unwrap_or(0)
    };
    2 * deg
}

/// Fields are evaluated re-expanded about the centroid, see
/// [`VectorField::centered_evaluator`].
fn quadrature_gram(fields: &[VectorField], kind: ElementKind) -> Result<SymmetricMatrix> {
    let rule = quadrature(kind, quadrature_degree(fields, kind));
    let c = kind.centroid();
    let values = fields
        .par_iter()
        .map(|f| {
            let g = f.centered_evaluator(&c)?;
            Ok(rule.points.iter().map(|x| g.eval_f64(x)).collect())
        })
        .collect::<Result<Vec<Vec<Vec<f64>>>>>()?;
    Ok(fill_parallel(fields.len(), |a, b| {
        let mut acc = Neumaier::default();
        for (q, w) in rule.weights.iter().enumerate() {
            for (u, v) in values[a][q].iter().zip(&values[b][q]) {
                acc.add(w * u * v);
            }
        }
        acc.sum()
    }))
}

/// Integer moment table: `J(m) = K ∫ x^m`, with `K` clearing every
/// denominator up to the largest exponent needed.
struct Moments {
    stride: [usize; 3],
    values: Vec<i128>,
    big: Vec<BigInt>,
    scale: BigInt,
}

impl Moments {
    fn new(kind: ElementKind, max_exp: usize) -> Self {
        let d = kind.dim();
        let e = max_exp + 1;
        let stride = [1, e, e * e];
        let size = if d == 3 { e * e * e } else { e * e };
        let scale = if kind.is_simplex() {
            factorial((max_exp + d) as u32)
        } else {
            let l =
                (1..=max_exp as u64 + 1).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k)));
            (0..d).fold(BigInt::one(), |acc, _| acc * &l)
        };
        let mut big = vec![BigInt::zero(); size];
        for (idx, slot) in big.iter_mut().enumerate() {
            let a = [idx % e, (idx / e) % e, idx / (e * e)];
            if d == 2 && a[2] > 0 {
                continue;
            }
            let mut num = BigInt::one();
            let mut den = BigInt::one();
            if kind.is_simplex() {
                let total: usize = a.iter().sum();
                if total > max_exp {
                    continue;
                }
                for &k in &a[..d] {
                    num *= factorial(k as u32);
                }
                den = factorial((total + d) as u32);
            } else {
                for &k in &a[..d] {
                    den *= BigInt::from(k + 1);
                }
            }
            let (q, r) = (&scale * num).div_rem(&den);
            debug_assert!(r.is_zero());
            *slot = q;
        }
        let values = big
            .iter()
            .map(|v| v.to_i128().unwrap_or(i128::MAX))
            .collect();
        Moments {
            stride,
            values,
            big,
            scale,
        }
    }

    fn index(&self, m: &Monomial) -> usize {
        m.0.iter()
            .zip(&self.stride)
            .map(|(&a, s)| a as usize * s)
            .sum()
    }
}

/// One radicand part of one field as integer numerators over a common
/// denominator, component by component, on a shared monomial list.
struct IntPart {
    radicand: u64,
    denom: BigInt,
    /// Per component: `(monomial index, numerator)`.
    terms: Vec<Vec<(usize, BigInt)>>,
}

enum Weights {
    Small(Vec<Vec<i128>>),
    Big(Vec<Vec<BigInt>>),
}

fn exact_gram(fields: &[VectorField], kind: ElementKind) -> Result<SymmetricMatrix> {
    let d = kind.dim();
    let mut monomials: Vec<Monomial> = Vec::new();
    let mut lookup: HashMap<Monomial, usize> = HashMap::new();
    let mut parts: Vec<Vec<IntPart>> = Vec::with_capacity(fields.len());
    for f in fields {
        let mut fp = Vec::new();
        for part in f.parts() {
            let denom = part
                .components
                .iter()
                .fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()));
            let terms = part
                .components
                .iter()
                .map(|c| {
                    c.terms()
                        .map(|(m, q)| {
                            let idx = *lookup.entry(*m).or_insert_with(|| {
                                monomials.push(*m);
                                monomials.len() - 1
                            });
                            (idx, (q * Rational::from(denom.clone())).to_integer())
                        })
                        .collect()
                })
                .collect();
            fp.push(IntPart {
                radicand: part.radicand,
                denom,
                terms,
            });
        }
        parts.push(fp);
    }
    let max_exp = monomials
        .iter()
        .map(|m| {
            if kind.is_simplex() {
                m.degree() as usize
            } else {
                (0..d).map(|i| m.0[i] as usize).max().unwrap_or(0)
            }
        })
        .max()
        .unwrap_or(0);
    let moments = Moments::new(kind, 2 * max_exp);
    let shift: Vec<Vec<usize>> = monomials
        .iter()
        .map(|a| {
            monomials
                .iter()
                .map(|b| moments.index(&a.times(*b)))
                .collect()
        })
        .collect();

    // W_a[k][m'] = Σ_m N_a[k][m] J[m + m'] for every part of every field.
    let weights: Vec<Vec<Weights>> = parts
        .par_iter()
        .map(|fp| {
            fp.iter()
                .map(|p| part_weights(p, &shift, &moments, monomials.len()))
                .collect()
        })
        .collect();

    Ok(fill_parallel(fields.len(), |a, b| {
        let mut total = 0.0;
        for (pa, wa) in parts[a].iter().zip(&weights[a]) {
            for pb in &parts[b] {
                let num = contract(pb, wa);
                if num.is_zero() {
                    continue;
                }
                let den = &pa.denom * &pb.denom * &moments.scale;
                let v = rational_to_f64(&Rational::new(num, den));
                total += v * ((pa.radicand * pb.radicand) as f64).sqrt();
            }
        }
        total
    }))
}

fn part_weights(p: &IntPart, shift: &[Vec<usize>], moments: &Moments, nmon: usize) -> Weights {
    let small: Option<Vec<Vec<i128>>> = p
        .terms
        .iter()
        .map(|comp| {
            let coeffs: Option<Vec<(usize, i128)>> = comp
                .iter()
                .map(|(m, c)| c.to_i128().map(|v| (*m, v)))
                .collect();
            let coeffs = coeffs?;
            (0..nmon)
                .map(|mp| {
                    coeffs.iter().try_fold(0i128, |acc, (m, c)| {
                        let j = moments.values[shift[*m][mp]];
                        if j == i128::MAX {
                            return None;
                        }
                        acc.checked_add(c.checked_mul(j)?)
                    })
                })
                .collect()
        })
        .collect();
    match small {
        Some(w) => Weights::Small(w),
        None => Weights::Big(
            p.terms
                .iter()
                .map(|comp| {
                    (0..nmon)
                        .map(|mp| {
                            comp.iter()
                                .map(|(m, c)| c * &moments.big[shift[*m][mp]])
                                .sum()
                        })
                        .collect()
                })
                .collect(),
        ),
    }
}

fn contract(pb: &IntPart, wa: &Weights) -> BigInt {
    if let Weights::Small(w) = wa {
        let small = pb.terms.iter().zip(w).try_fold(0i128, |acc, (comp, wk)| {
            comp.iter().try_fold(acc, |acc, (m, c)| {
                acc.checked_add(c.to_i128()?.checked_mul(wk[*m])?)
            })
        });
        if let Some(v) = small {
            return BigInt::from(v);
        }
    }
    let mut acc = BigInt::zero();
    for (k, comp) in pb.terms.iter().enumerate() {
        for (m, c) in comp {
            let w = match wa {
                Weights::Small(w) => BigInt::from(w[k][*m]),
                Weights::Big(w) => w[k][*m].clone(),
            };
            acc += c * w;
        }
    }
    acc
}

/// Largest absolute entrywise gap between the exact and quadrature paths,
/// for the mass and the stiffness matrix.
pub fn path_discrepancy(set: &BasisSet) -> Result<(f64, f64)> {
    let m = mass_matrix(set, Path::Exact)?.max_abs_diff(&mass_matrix(set, Path::Quadrature)?);
    let s =
        stiffness_matrix(set, Path::Exact)?.max_abs_diff(&stiffness_matrix(set, Path::Quadrature)?);
    Ok((m, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{build_set, EdgeFaceVariant};

    #[test]
    fn storage_is_symmetric() {
        let mut m = SymmetricMatrix::zeros(3);
        m.set(0, 2, 5.0);
        assert_eq!(m.get(2, 0), 5.0);
        assert_eq!(m.to_dense()[0][2], 5.0);
        assert!(m
            .to_csv()
            .starts_with("0.0000000000000000e0,0.0000000000000000e0,5.0000000000000000e0"));
    }

    #[test]
    fn tri_p1_mass_paths_agree() {
        let set = build_set(ElementKind::Tri, 1, EdgeFaceVariant::FirstKind).unwrap();
        let m = mass_matrix(&set, Path::Exact).unwrap();
        assert_eq!(m.order(), 6);
        let q = mass_matrix(&set, Path::Quadrature).unwrap();
        assert!(m.max_abs_diff(&q) < 1e-13);
        for i in 0..6 {
            assert!(m.get(i, i) > 0.0);
        }
    }

    #[test]
    fn constant_field_has_zero_stiffness() {
        let f = VectorField::axis(&crate::poly::MPoly::one(2), 0);
        let g = VectorField::from_components(vec![
            crate::poly::MPoly::var(2, 0),
            crate::poly::MPoly::var(2, 1),
        ]);
        let s = gram(
            &[f.jacobian(), g.jacobian()],
            ElementKind::Quad,
            Path::Exact,
        )
        .unwrap();
        assert_eq!(s.get(0, 0), 0.0);
        assert_eq!(s.get(0, 1), 0.0);
        assert_eq!(s.get(1, 1), 2.0);
    }

    #[test]
    fn quad_rt0_gram_exact_value() {
        // RT0 on edge 2 is (x, 0): ∫ x² = 1/3.
        let set = build_set(ElementKind::Quad, 1, EdgeFaceVariant::FirstKind).unwrap();
        let m = mass_matrix(&set, Path::Exact).unwrap();
        assert!((m.get(1, 1) - 1.0 / 3.0).abs() < 1e-16);
    }
}
