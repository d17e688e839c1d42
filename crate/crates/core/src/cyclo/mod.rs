//! Exact arithmetic in the cyclotomic integer rings `Z[ζ_n]`.
//!
//! Every element is stored as its residue modulo the `n`-th cyclotomic
//! polynomial `Φ_n`, i.e. as an integer vector of length `φ(n)` in the basis
//! `1, ζ, …, ζ^{φ(n)-1}`. That residue is unique, so equality of elements is
//! equality of coefficient vectors.

mod matrix;

pub use matrix::CycMatrix;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("cannot lift an element of order {from} to order {to}: {from} does not divide {to}")]
    NotDivisible { from: u32, to: u32 },
    #[error("order must be positive")]
    ZeroOrder,
    #[error("expected {expected} coefficients for order {order}, got {got}")]
    CoeffLength { order: u32, expected: usize, got: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Returns the coefficients of `Φ_n`, lowest degree first.
///
/// Computed as `(x^n - 1) / Π_{d | n, d < n} Φ_d` by exact division.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic_polynomial: n must be positive");
    ring(n).phi.clone()
}

fn compute_cyclotomic(n: u32) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = ring(d).phi.clone();
            num = div_exact_monic(&num, &phi_d);
        }
    }
    num
}

/// Exact division by a monic polynomial; panics if the division leaves a remainder.
fn div_exact_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &dc) in den.iter().enumerate() {
                rem[i + j] = rem[i + j]
                    .checked_sub(c.checked_mul(dc).expect("cyclotomic coefficient overflow"))
                    .expect("cyclotomic coefficient overflow");
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    quot
}

/// Precomputed reduction data for one order `n`.
pub(crate) struct CycloRing {
    pub(crate) order: u32,
    pub(crate) degree: usize,
    phi: Vec<i64>,
    /// `x^k mod Φ_n` for `k < max(n, 2·degree - 1)`.
    pub(crate) powers: Vec<Vec<i64>>,
}

impl CycloRing {
    fn new(n: u32) -> Self {
        let phi = if n == 1 { vec![-1, 1] } else { compute_cyclotomic(n) };
        let degree = phi.len() - 1;
        let count = (n as usize).max(2 * degree - 1);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        if degree == 1 {
            // x ≡ -phi[0]
            let root = -phi[0];
            let mut v = 1i64;
            for _ in 0..count {
                powers.push(vec![v]);
                v = v.checked_mul(root).expect("power overflow");
            }
        } else {
            for _ in 0..count {
                powers.push(cur.clone());
                let lead = cur[degree - 1];
                let mut next = vec![0i64; degree];
                next[1..degree].copy_from_slice(&cur[..degree - 1]);
                if lead != 0 {
                    for j in 0..degree {
                        next[j] -= lead * phi[j];
                    }
                }
                cur = next;
            }
        }
        CycloRing { order: n, degree, phi, powers }
    }

    fn power(&self, k: usize) -> &[i64] {
        &self.powers[k % self.order as usize]
    }
}

pub(crate) fn ring(n: u32) -> Arc<CycloRing> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<CycloRing>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(r) = cache.read().unwrap().get(&n) {
        return r.clone();
    }
    // built outside the lock: construction recurses into smaller orders
    let built = Arc::new(CycloRing::new(n));
    cache.write().unwrap().entry(n).or_insert(built).clone()
}

/// Euler's totient, the degree of `Φ_n`.
pub fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

/// An element of `Z[ζ_n]` in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycScalar {
    order: u32,
    coeffs: Vec<BigInt>,
}

impl CycScalar {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1, "order must be positive");
        let d = ring(order).degree;
        CycScalar { order, coeffs: vec![BigInt::zero(); d] }
    }

    pub fn one(order: u32) -> Self {
        Self::from_int(order, 1)
    }

    pub fn from_int(order: u32, c: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = c.into();
        z
    }

    /// Builds an element from an already-canonical coefficient vector.
    pub fn from_coeffs(order: u32, coeffs: Vec<BigInt>) -> Result<Self, CycloError> {
        if order == 0 {
            return Err(CycloError::ZeroOrder);
        }
        let d = ring(order).degree;
        if coeffs.len() != d {
            return Err(CycloError::CoeffLength { order, expected: d, got: coeffs.len() });
        }
        Ok(CycScalar { order, coeffs })
    }

    /// Reduces `Σ c_k ζ^k` (any length; exponents taken mod `n`).
    pub fn from_exponent_sum(order: u32, terms: &[BigInt]) -> Self {
        let r = ring(order);
        let mut coeffs = vec![BigInt::zero(); r.degree];
        for (k, c) in terms.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, &p) in r.power(k).iter().enumerate() {
                if p != 0 {
                    coeffs[j] += c * p;
                }
            }
        }
        CycScalar { order, coeffs }
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        assert!(order >= 1, "order must be positive");
        let r = ring(order);
        let e = k.rem_euclid(order as i64) as usize;
        let coeffs = r.power(e).iter().map(|&c| BigInt::from(c)).collect();
        CycScalar { order, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_integer().is_some_and(One::is_one)
    }

    /// The integer value, if this element lies in `Z`.
    pub fn as_integer(&self) -> Option<&BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn is_rational_integer(&self) -> bool {
        self.as_integer().is_some()
    }

    fn check_order(&self, other: &Self) -> Result<(), CycloError> {
        if self.order != other.order {
            Err(CycloError::OrderMismatch(self.order, other.order))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycloError> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycScalar { order: self.order, coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CycloError> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycScalar { order: self.order, coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CycloError> {
        self.check_order(other)?;
        let r = ring(self.order);
        let d = r.degree;
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut coeffs = vec![BigInt::zero(); d];
        for (k, c) in prod.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, &p) in r.powers[k].iter().enumerate() {
                if p != 0 {
                    coeffs[j] += c * p;
                }
            }
        }
        Ok(CycScalar { order: self.order, coeffs })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        CycScalar { order: self.order, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Complex conjugation `ζ^k ↦ ζ^{n-k}`.
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        let mut terms = vec![BigInt::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            terms[(n - k % n) % n] += c;
        }
        Self::from_exponent_sum(self.order, &terms)
    }

    /// `a · conj(a)`, the squared modulus as an element of the ring.
    pub fn abs_squared(&self) -> Self {
        self.try_mul(&self.conj()).expect("same order")
    }

    /// The same complex number in `Z[ζ_m]`, via `ζ_n = ζ_m^{m/n}`.
    pub fn lift(&self, to: u32) -> Result<Self, CycloError> {
        if to == 0 {
            return Err(CycloError::ZeroOrder);
        }
        if !to.is_multiple_of(self.order) {
            return Err(CycloError::NotDivisible { from: self.order, to });
        }
        if to == self.order {
            return Ok(self.clone());
        }
        let step = (to / self.order) as usize;
        let mut terms = vec![BigInt::zero(); to as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            terms[(k * step) % to as usize] += c;
        }
        Ok(Self::from_exponent_sum(to, &terms))
    }

    /// Returns `Some(k)` when this element equals `ζ_n^k`.
    pub fn root_exponent(&self) -> Option<u32> {
        (0..self.order).find(|&k| *self == Self::root_of_unity(self.order, k as i64))
    }

    /// Comma-separated coefficient list, the payload format of frame files.
    pub fn to_coeff_string(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        parts.join(",")
    }

    pub(crate) fn coeffs_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    pub(crate) fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc{}[{}]", self.order, self.to_coeff_string())
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(v) = self.as_integer() {
            return write!(f, "{v}");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "z{}", self.order)?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&CycScalar> for &CycScalar {
            type Output = CycScalar;
            /// Panics on an order mismatch; use the `try_` form to handle it.
            fn $method(self, rhs: &CycScalar) -> CycScalar {
                self.$try(rhs).unwrap()
            }
        }
        impl $trait for CycScalar {
            type Output = CycScalar;
            fn $method(self, rhs: CycScalar) -> CycScalar {
                self.$try(&rhs).unwrap()
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

pub fn lcm_orders(orders: impl IntoIterator<Item = u32>) -> u32 {
    orders.into_iter().fold(1, |acc, n| acc.lcm(&n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: u32, c: &[i64]) -> CycScalar {
        CycScalar::from_coeffs(n, c.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
    }

    /// Schoolbook long division of integer polynomials (lowest degree first).
    fn naive_divide(num: &[i64], den: &[i64]) -> (Vec<i64>, Vec<i64>) {
        let mut rem = num.to_vec();
        let dn = den.len() - 1;
        let lead = *den.last().unwrap();
        let mut quot = vec![0; num.len().saturating_sub(dn)];
        for i in (dn..num.len()).rev() {
            let c = rem[i] / lead;
            quot[i - dn] = c;
            for j in 0..=dn {
                rem[i - dn + j] -= c * den[j];
            }
        }
        (quot, rem)
    }

    fn naive_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn cyclotomic_small_orders() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
    }

    #[test]
    fn cyclotomic_six_by_division_oracle() {
        // x^6 - 1 divided by Φ1·Φ2·Φ3 = (x-1)(x+1)(x^2+x+1)
        let den = naive_mul(&naive_mul(&[-1, 1], &[1, 1]), &[1, 1, 1]);
        let (q, r) = naive_divide(&[-1, 0, 0, 0, 0, 0, 1], &den);
        assert!(r.iter().all(|&c| c == 0));
        assert_eq!(q, vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(6), q);
    }

    #[test]
    fn cyclotomic_degree_is_totient() {
        for n in 1..=60 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, euler_phi(n), "n = {n}");
        }
        // first order with a coefficient of magnitude 2
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn roots_of_unity() {
        assert!(CycScalar::root_of_unity(4, 0).is_one());
        // x^2 mod x^2+x+1 = -1 - x
        assert_eq!(CycScalar::root_of_unity(3, 2), cyc(3, &[-1, -1]));
        assert_eq!(CycScalar::root_of_unity(2, 1), CycScalar::from_int(2, -1));
        assert_eq!(CycScalar::root_of_unity(5, -1), CycScalar::root_of_unity(5, 4));
    }

    #[test]
    fn ring_examples() {
        let z = CycScalar::root_of_unity(3, 1);
        let z2 = CycScalar::root_of_unity(3, 2);
        assert!((&z * &z2).is_one());
        let sum = &(&CycScalar::one(3) + &z) + &z2;
        assert!(sum.is_zero());
        let i = CycScalar::root_of_unity(4, 1);
        let one = CycScalar::one(4);
        // (1+i)(1-i) = 1 - i^2 = 2
        assert_eq!(&(&one + &i) * &(&one - &i), CycScalar::from_int(4, 2));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = CycScalar::one(3);
        let b = CycScalar::one(4);
        assert_eq!(a.try_add(&b), Err(CycloError::OrderMismatch(3, 4)));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn conjugation() {
        let m1 = CycScalar::from_int(2, -1);
        assert_eq!(m1.conj(), m1);
        assert_eq!(CycScalar::root_of_unity(3, 1).conj(), cyc(3, &[-1, -1]));
        assert!(CycScalar::zero(7).conj().is_zero());
    }

    #[test]
    fn squared_moduli() {
        assert!(CycScalar::root_of_unity(5, 3).abs_squared().is_one());
        let a = &CycScalar::one(3) + &CycScalar::root_of_unity(3, 1);
        assert!(a.abs_squared().is_one());
        assert!(CycScalar::zero(5).abs_squared().is_zero());
        let b = &CycScalar::one(4) + &CycScalar::root_of_unity(4, 1);
        assert_eq!(b.abs_squared().as_integer(), Some(&BigInt::from(2)));
    }

    #[test]
    fn lifting() {
        let m1 = CycScalar::from_int(2, -1);
        let lifted = m1.lift(6).unwrap();
        assert_eq!(lifted, CycScalar::root_of_unity(6, 3));
        // ζ6^3 = -1 in the basis {1, ζ6}
        assert_eq!(lifted, cyc(6, &[-1, 0]));
        let a = cyc(5, &[1, 2, 0, -3]);
        assert_eq!(a.lift(5).unwrap(), a);
        assert!(CycScalar::one(1).lift(12).unwrap().is_one());
        assert_eq!(
            CycScalar::one(4).lift(6),
            Err(CycloError::NotDivisible { from: 4, to: 6 })
        );
        // ζ3 lifted into order 6 is ζ6^2
        assert_eq!(
            CycScalar::root_of_unity(3, 1).lift(6).unwrap(),
            CycScalar::root_of_unity(6, 2)
        );
    }

    #[test]
    fn from_coeffs_checks_length() {
        assert!(CycScalar::from_coeffs(5, vec![BigInt::zero(); 3]).is_err());
        assert!(CycScalar::from_coeffs(0, vec![]).is_err());
    }

    #[test]
    fn root_exponent_recovery() {
        for k in 0..12 {
            assert_eq!(CycScalar::root_of_unity(12, k).root_exponent(), Some(k as u32));
        }
        assert_eq!(CycScalar::from_int(12, 2).root_exponent(), None);
    }

    #[test]
    fn display() {
        assert_eq!(CycScalar::from_int(3, -4).to_string(), "-4");
        assert_eq!(CycScalar::root_of_unity(5, 1).to_string(), "z5");
        assert_eq!(cyc(5, &[1, 0, -2, 0]).to_string(), "1 - 2z5^2");
    }
}
