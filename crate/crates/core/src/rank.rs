//! Exact rank of a family of fields.
//!
//! Each field becomes a row of monomial coefficients. Ranks are first
//! computed modulo a few word-sized primes: reduction can only lower the
//! rank, so a full modular rank certifies full rank over the reals. When a
//! rational family looks deficient, fraction-free (Bareiss) elimination over
//! the integers settles it exactly.
//!
//! Fields carrying several surd parts have entries in `Q(√q₁, √q₂, …)`. For
//! those the primes are chosen so that every `q` is a quadratic residue and
//! `√q` maps to a modular square root; the result is the largest modular
//! rank seen, which is exact whenever it is full.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Result;
use crate::field::VectorField;
use crate::poly::{Monomial, Rational};
use crate::surd::prime_factors;

/// Rows keyed by `(component, monomial)`.
struct Layout {
    columns: BTreeMap<(usize, Monomial), usize>,
}

impl Layout {
    fn new(fields: &[VectorField]) -> Self {
        let mut keys = BTreeMap::new();
        for f in fields {
            for p in f.parts() {
                for (k, c) in p.components.iter().enumerate() {
                    for (m, _) in c.terms() {
                        keys.insert((k, *m), 0);
                    }
                }
            }
        }
        for (i, v) in keys.values_mut().enumerate() {
            *v = i;
        }
        Layout { columns: keys }
    }

    fn width(&self) -> usize {
        self.columns.len()
    }
}

fn is_rational_family(fields: &[VectorField]) -> bool {
    fields.iter().all(|f| f.parts().len() <= 1)
}

/// Rank of the span of `fields` over the reals.
///
/// An empty list has rank 0.
pub fn coefficient_rank(fields: &[VectorField]) -> Result<usize> {
    if fields.is_empty() {
        return Ok(0);
    }
    let layout = Layout::new(fields);
    let full = fields.len().min(layout.width());
    let rational = is_rational_family(fields);
    let radicands: Vec<u64> = fields
        .iter()
        .flat_map(|f| f.parts().iter().map(|p| p.radicand))
        .collect();
    let mut best = 0;
    for prime in candidate_primes(if rational { &[] } else { &radicands }).take(3) {
        if let Some(r) = modular_rank(fields, &layout, prime, rational) {
            best = best.max(r);
            if best == full {
                return Ok(best);
            }
        }
    }
    if rational {
        return Ok(bareiss_rank(integer_rows(fields, &layout)));
    }
    Ok(best)
}

/// Integer coefficient rows, each scaled by its common denominator.
/// Surd factors are dropped: they are nonzero and change no linear relation
/// within a single-part family.
fn integer_rows(fields: &[VectorField], layout: &Layout) -> Vec<Vec<BigInt>> {
    fields
        .iter()
        .map(|f| {
            let mut row = vec![BigInt::zero(); layout.width()];
            if let Some(p) = f.parts().first() {
                let den = p
                    .components
                    .iter()
                    .fold(BigInt::one(), |acc, c| acc.lcm(&c.denominator_lcm()));
                for (k, c) in p.components.iter().enumerate() {
                    for (m, v) in c.terms() {
                        let scaled = v * Rational::from_integer(den.clone());
                        row[layout.columns[&(k, *m)]] = scaled.to_integer();
                    }
                }
            }
            row
        })
        .collect()
}

/// Fraction-free Gaussian elimination; every intermediate entry is an
/// integer minor, so the division by the previous pivot is exact.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for i in rank + 1..nrows {
            for j in col + 1..ncols {
                let v = &m[i][j] * &m[rank][col] - &m[i][col] * &m[rank][j];
                m[i][j] = v / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // Deterministic for all 64-bit inputs.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Tonelli–Shanks square root of a quadratic residue.
fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Primes just below 2^62 for which every prime factor of the radicands
/// is a quadratic residue.
fn candidate_primes(radicands: &[u64]) -> impl Iterator<Item = u64> {
    let mut qs: Vec<u64> = radicands.iter().flat_map(|&s| prime_factors(s)).collect();
    qs.sort_unstable();
    qs.dedup();
    let mut n = (1u64 << 62) - 57;
    std::iter::from_fn(move || loop {
        n -= 2;
        if is_prime(n) && qs.iter().all(|&q| sqrt_mod(q, n).is_some()) {
            return Some(n);
        }
    })
}

fn rational_mod(r: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let d = r.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    let n = r.numer().mod_floor(&pb).to_u64()?;
    Some(mul_mod(n, inv_mod(d, p), p))
}

fn modular_rank(fields: &[VectorField], layout: &Layout, p: u64, rational: bool) -> Option<usize> {
    let mut roots: BTreeMap<u64, u64> = BTreeMap::new();
    let mut rows = Vec::with_capacity(fields.len());
    for f in fields {
        let mut row = vec![0u64; layout.width()];
        for part in f.parts() {
            let factor = if rational {
                1
            } else {
                let mut v = 1;
                for q in prime_factors(part.radicand) {
                    let r = *roots
                        .entry(q)
                        .or_insert_with(|| sqrt_mod(q, p).expect("residue"));
                    v = mul_mod(v, r, p);
                }
                v
            };
            for (k, c) in part.components.iter().enumerate() {
                for (m, v) in c.terms() {
                    let x = mul_mod(rational_mod(v, p)?, factor, p);
                    let slot = &mut row[layout.columns[&(k, *m)]];
                    *slot = (*slot + x) % p;
                }
            }
        }
        rows.push(row);
    }
    Some(rank_mod(rows, p))
}

fn rank_mod(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(piv) = (rank..nrows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][col], p);
        let pivot_row: Vec<u64> = m[rank][col..].iter().map(|&v| mul_mod(v, inv, p)).collect();
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for (x, &pv) in row[col..].iter_mut().zip(&pivot_row) {
                *x = (*x + p - mul_mod(f, pv, p)) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Exact rank and a basis of linear relations `Σ c_i f_i = 0`.
#[derive(Clone, Debug)]
pub struct RankCertificate {
    pub count: usize,
    pub rank: usize,
    /// Integer-valued relation vectors, one per nullspace dimension.
    pub nullspace: Vec<Vec<Rational>>,
}

/// Nullspace of a single-part family by rational reduced row echelon form
/// of the transposed coefficient matrix.
pub fn rank_certificate(fields: &[VectorField]) -> Result<RankCertificate> {
    if !is_rational_family(fields) {
        return Err(crate::error::Error::Unsupported(
            "relations are only computed for single-part families".into(),
        ));
    }
    let layout = Layout::new(fields);
    let rows = integer_rows(fields, &layout);
    let n = fields.len();
    // Transpose: one equation per coefficient slot, one unknown per field.
    let mut a: Vec<Vec<Rational>> = (0..layout.width())
        .map(|c| {
            rows.iter()
                .map(|r| Rational::from_integer(r[c].clone()))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(piv) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        let inv = Rational::one() / &a[r][col];
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, pv) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * pv;
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let nullspace = free
        .iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); n];
            v[fc] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][fc].clone();
            }
            to_integer_vector(v)
        })
        .collect();
    Ok(RankCertificate {
        count: n,
        rank: pivots.len(),
        nullspace,
    })
}

fn to_integer_vector(v: Vec<Rational>) -> Vec<Rational> {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let g = if g.is_zero() { BigInt::one() } else { g };
    // Make the first nonzero entry positive.
    let sign = ints
        .iter()
        .find(|x| !x.is_zero())
        .map_or(BigInt::one(), |x| x.signum());
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &g * &sign))
        .collect()
}
