//! Exact scalar fields: the rationals and prime fields `F_p`.

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A field with exact arithmetic.
///
/// Operations take references so that big-number fields avoid needless copies.
pub trait Field: Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// 0 for characteristic zero.
    fn characteristic() -> u64;
    fn label() -> String;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    /// Rank of a matrix. Fields may override with a better-suited elimination.
    fn rank_of(m: &crate::exactlin::ExactMatrix<Self>) -> usize {
        crate::exactlin::sparse_rank(m)
    }
}

/// Rational numbers backed by arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Q(pub BigRational);

impl Q {
    pub fn new(num: i64, den: i64) -> Self {
        Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Q {
    fn zero() -> Self {
        Q(BigRational::zero())
    }
    fn one() -> Self {
        Q(BigRational::one())
    }
    fn from_i64(v: i64) -> Self {
        Q(BigRational::from_integer(BigInt::from(v)))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        Q(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        Q(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Q(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        Q(-&self.0)
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Q(self.0.recip()))
        }
    }
    fn characteristic() -> u64 {
        0
    }
    fn label() -> String {
        String::from("Q")
    }
    fn rank_of(m: &crate::exactlin::ExactMatrix<Self>) -> usize {
        crate::exactlin::fraction_free_rank(m)
    }
}

/// The prime field `F_P`; `P` must be a prime below `2^31`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    const VALID: () = assert!(P >= 2 && P < (1u32 << 31) && is_prime_u32(P), "Fp modulus must be a prime below 2^31");

    pub fn new(v: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::VALID;
        Fp(v.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0 as u64;
        let mut acc = 1u64;
        let p = P as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp(acc as u32)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Field for Fp<P> {
    fn zero() -> Self {
        Fp::new(0)
    }
    fn one() -> Self {
        Fp::new(1)
    }
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, other: &Self) -> Self {
        Fp(((self.0 as u64 + other.0 as u64) % P as u64) as u32)
    }
    fn sub(&self, other: &Self) -> Self {
        Fp(((self.0 as u64 + P as u64 - other.0 as u64) % P as u64) as u32)
    }
    fn mul(&self, other: &Self) -> Self {
        Fp(((self.0 as u64 * other.0 as u64) % P as u64) as u32)
    }
    fn neg(&self) -> Self {
        Fp(((P as u64 - self.0 as u64) % P as u64) as u32)
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P as u64 - 2))
        }
    }
    fn characteristic() -> u64 {
        P as u64
    }
    fn label() -> String {
        format!("F{}", P)
    }
}

/// Deterministic primality test for 32-bit moduli.
pub const fn is_prime_u32(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Greatest common divisor of two big integers, nonnegative.
pub(crate) fn big_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_inverse_round_trip() {
        let a = Q::new(3, 7);
        let b = Q::new(7, 3);
        assert!(a.mul(&b).is_one());
        assert_eq!(a.inv().unwrap(), b);
        assert!(Q::zero().inv().is_none());
    }

    #[test]
    fn prime_field_arithmetic() {
        type F7 = Fp<7>;
        let a = F7::new(3);
        assert_eq!(a.mul(&a.inv().unwrap()), F7::one());
        assert_eq!(F7::new(-1), F7::new(6));
        assert_eq!(a.add(&F7::new(4)), F7::zero());
        assert_eq!(F7::characteristic(), 7);
    }

    #[test]
    fn large_prime_field() {
        type F = Fp<2147483647>;
        let a = F::new(123456789);
        assert_eq!(a.mul(&a.inv().unwrap()), F::one());
        assert_eq!(F::new(-5).add(&F::new(5)), F::zero());
    }

    #[test]
    fn primality() {
        assert!(is_prime_u32(2));
        assert!(is_prime_u32(2147483647));
        assert!(!is_prime_u32(1));
        assert!(!is_prime_u32(91));
    }
}
