//! Numbers of the form `c·√s` with `c` rational and `s` a square-free
//! positive integer.
//!
//! Every normalization constant of the bases is a square root of a rational,
//! so this small closed set keeps them exact.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{rational_to_f64, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    pub coeff: Rational,
    pub radicand: u64,
}

impl Surd {
    pub fn rational(c: Rational) -> Self {
        Surd {
            coeff: c,
            radicand: 1,
        }
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    /// `√n` in canonical form.
    pub fn sqrt_int(n: u64) -> Self {
        assert!(n > 0, "square root of zero is not a normalization constant");
        let (square, free) = split_square(n);
        Surd {
            coeff: Rational::from_integer(BigInt::from(square)),
            radicand: free,
        }
    }

    /// `√(num/den)`, rationalized as `√(num·den)/den`.
    pub fn sqrt_ratio(num: u64, den: u64) -> Self {
        let g = num.gcd(&den);
        let (n, d) = (num / g, den / g);
        let mut s = Self::sqrt_int(n).mul(&Self::sqrt_int(d));
        s.coeff /= Rational::from_integer(BigInt::from(d));
        s
    }

    pub fn mul(&self, other: &Surd) -> Surd {
        let g = self.radicand.gcd(&other.radicand);
        Surd {
            coeff: &self.coeff * &other.coeff * Rational::from_integer(BigInt::from(g)),
            radicand: (self.radicand / g) * (other.radicand / g),
        }
    }

    pub fn inv(&self) -> Surd {
        // 1/(c√s) = √s/(c·s)
        Surd {
            coeff: Rational::one()
                / (&self.coeff * Rational::from_integer(BigInt::from(self.radicand))),
            radicand: self.radicand,
        }
    }

    pub fn scale(&self, c: &Rational) -> Surd {
        Surd {
            coeff: &self.coeff * c,
            radicand: self.radicand,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.coeff) * (self.radicand as f64).sqrt()
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand == 1 {
            write!(f, "{}", self.coeff)
        } else if self.coeff.abs().is_one() {
            let sign = if self.coeff.is_negative() { "-" } else { "" };
            write!(f, "{sign}√{}", self.radicand)
        } else {
            write!(f, "{}·√{}", self.coeff, self.radicand)
        }
    }
}

/// Writes `n = a²·b` with `b` square-free; returns `(a, b)`.
pub fn split_square(mut n: u64) -> (u64, u64) {
    let mut square = 1;
    let mut free = 1;
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (square, free * n)
}

/// Prime factors of a square-free radicand.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn canonical_square_roots() {
        assert_eq!(split_square(72), (6, 2));
        assert_eq!(split_square(1), (1, 1));
        assert_eq!(split_square(30), (1, 30));
        let s = Surd::sqrt_int(12);
        assert_eq!(s.coeff, rat(2, 1));
        assert_eq!(s.radicand, 3);
    }

    #[test]
    fn ratio_is_rationalized() {
        let s = Surd::sqrt_ratio(1, 2);
        assert_eq!(s.coeff, rat(1, 2));
        assert_eq!(s.radicand, 2);
        assert!((s.to_f64() - 0.5f64.sqrt()).abs() < 1e-16);
    }

    #[test]
    fn products_stay_square_free() {
        let a = Surd::sqrt_int(6);
        let b = Surd::sqrt_int(10);
        let c = a.mul(&b);
        assert_eq!(c.radicand, 15);
        assert_eq!(c.coeff, rat(2, 1));
        let one = a.mul(&a.inv());
        assert_eq!(one, Surd::one());
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(30), vec![2, 3, 5]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
    }
}
