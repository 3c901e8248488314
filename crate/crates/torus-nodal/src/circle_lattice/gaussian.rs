//! Exact Gaussian-integer arithmetic.
//!
//! Two layers: small `(i128, i128)` pairs used while constructing the
//! representations of E as a sum of two squares from its factorization, and
//! the arbitrary-precision [`GaussianInt`] used by the determinant identity
//! checks, where products like `E^{k(k+1)/2} * prod (P_i - P_j)` overflow any
//! fixed width almost immediately.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

use super::LatticePoint;

/// Arbitrary-precision Gaussian integer `re + im*i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new<T: Into<BigInt>, U: Into<BigInt>>(re: T, im: U) -> Self {
        Self { re: re.into(), im: im.into() }
    }

    pub fn zero() -> Self {
        Self { re: BigInt::zero(), im: BigInt::zero() }
    }

    pub fn one() -> Self {
        Self { re: BigInt::one(), im: BigInt::zero() }
    }

    pub fn from_point(p: LatticePoint) -> Self {
        Self::new(p.a, p.b)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn neg(&self) -> Self {
        Self { re: -self.re.clone(), im: -self.im.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { re: &self.re + &other.re, im: &self.im + &other.im }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { re: &self.re - &other.re, im: &self.im - &other.im }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    pub fn mul_scalar(&self, s: &BigInt) -> Self {
        Self { re: &self.re * s, im: &self.im * s }
    }

    /// `re^2 + im^2`, always nonnegative.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Determinant of a square Gaussian-integer matrix by cofactor expansion.
///
/// Exact; intended for the small orders (m <= 10) the identity checks use.
pub fn determinant(matrix: &[Vec<GaussianInt>]) -> GaussianInt {
    let m = matrix.len();
    assert!(m > 0 && matrix.iter().all(|row| row.len() == m), "square matrix required");
    assert!(m <= 10, "cofactor expansion limited to order 10");
    det_rec(matrix, &(0..m).collect::<Vec<_>>())
}

fn det_rec(matrix: &[Vec<GaussianInt>], cols: &[usize]) -> GaussianInt {
    let row = matrix.len() - cols.len();
    if cols.len() == 1 {
        return matrix[row][cols[0]].clone();
    }
    let mut acc = GaussianInt::zero();
    for (pos, &c) in cols.iter().enumerate() {
        if matrix[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_rec(matrix, &rest);
        let term = matrix[row][c].mul(&minor);
        if pos % 2 == 0 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    acc
}

// ---------------------------------------------------------------------------
// Small fixed-width Gaussian arithmetic for the enumeration path.
// Norms never exceed E (<= the factorization budget), so i128 is ample.
// ---------------------------------------------------------------------------

pub(crate) type Gi = (i128, i128);

pub(crate) fn gi_mul(a: Gi, b: Gi) -> Gi {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

pub(crate) fn gi_norm(a: Gi) -> i128 {
    a.0 * a.0 + a.1 * a.1
}

/// Gaussian gcd by Euclid with rounded division.
pub(crate) fn gi_gcd(mut a: Gi, mut b: Gi) -> Gi {
    while b != (0, 0) {
        let r = gi_rem(a, b);
        a = b;
        b = r;
    }
    a
}

fn gi_rem(a: Gi, b: Gi) -> Gi {
    let n = gi_norm(b);
    debug_assert!(n > 0);
    // nearest integer to (a * conj(b)) / |b|^2, rounding half away from zero
    let num = gi_mul(a, (b.0, -b.1));
    let q = (round_div(num.0, n), round_div(num.1, n));
    let qb = gi_mul(q, b);
    (a.0 - qb.0, a.1 - qb.1)
}

fn round_div(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    if a >= 0 {
        (a + b / 2) / b
    } else {
        -((-a + b / 2) / b)
    }
}

/// Modular exponentiation for u64 moduli.
pub(crate) fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = (base as u128) % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// A Gaussian prime `u + vi` with `u^2 + v^2 = p`, for a prime `p = 1 mod 4`.
pub(crate) fn gaussian_prime_above(p: u64) -> Gi {
    // x with x^2 = -1 mod p, from a quadratic non-residue g: x = g^((p-1)/4)
    let mut g = 2u64;
    let x = loop {
        if mod_pow(g, (p - 1) / 2, p) == p - 1 {
            break mod_pow(g, (p - 1) / 4, p);
        }
        g += 1;
    };
    let pi = gi_gcd((p as i128, 0), (x as i128, 1));
    debug_assert_eq!(gi_norm(pi), p as i128);
    pi
}
