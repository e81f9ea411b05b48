//! Integer helpers and the exact rational type used for every computed value.

use std::fmt;
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Largest power of `p` dividing `n`.
pub fn integer_p_part(mut n: u64, p: u64) -> u64 {
    assert!(n >= 1 && p >= 2);
    let mut part = 1;
    while n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

pub fn is_p_power(n: u64, p: u64) -> bool {
    integer_p_part(n, p) == n
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1);
    let mut m = n;
    let mut result = n;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            while m.is_multiple_of(d) {
                m /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    pub fn from_biguint(n: &BigUint) -> Self {
        Self::from_int(BigInt::from(n.clone()))
    }

    /// `num / den`; panics on a zero denominator.
    pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::new(num.into(), den.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn pow(&self, exp: u32) -> Self {
        ExactRational(num_traits::pow(self.0.clone(), exp as usize))
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a ExactRational>) -> Self {
        factors.into_iter().fold(Self::one(), |acc, f| &acc * f)
    }

    /// Writes a positive integer as `(p-1)^a * p^m`, if possible.
    ///
    /// For `p = 2` the factor `p - 1` is 1 and `a` is reported as 0.
    pub fn factor_as_p_minus_one_times_p(&self, p: u64) -> Option<(u32, u32)> {
        if !self.is_integer() || !self.is_positive() {
            return None;
        }
        let mut n = self.numer().clone();
        let pb = BigInt::from(p);
        let mut m = 0;
        while (&n % &pb).is_zero() {
            n /= &pb;
            m += 1;
        }
        let mut a = 0;
        if p > 2 {
            let qb = BigInt::from(p - 1);
            while (&n % &qb).is_zero() {
                n /= &qb;
                a += 1;
            }
        }
        n.is_one().then_some((a, m))
    }

    pub fn to_f64(&self) -> Option<f64> {
        self.0.to_f64()
    }
}

impl fmt::Display for ExactRational {
    /// `num/den`, or just `num` for integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

/// Serialized as `{"num": "<decimal>", "den": "<decimal>"}`.
impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ExactRational", 2)?;
        st.serialize_field("num", &self.numer().to_string())?;
        st.serialize_field("den", &self.denom().to_string())?;
        st.end()
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational($trait::$method(self.0, rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl std::iter::Sum for ExactRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |a, b| a + b)
    }
}

impl From<u64> for ExactRational {
    fn from(n: u64) -> Self {
        ExactRational::from_int(n)
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        ExactRational::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    #[test]
    fn p_part_and_phi() {
        assert_eq!(integer_p_part(12, 2), 4);
        assert_eq!(integer_p_part(12, 3), 3);
        assert_eq!(integer_p_part(7, 2), 1);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn phi_matches_gcd_count() {
        for n in 1..200u64 {
            let brute = (1..=n).filter(|&k| k.gcd(&n) == 1).count() as u64;
            assert_eq!(euler_phi(n), brute, "n = {n}");
        }
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(check_prime(4).is_err());
    }

    #[test]
    fn rational_lowest_terms_and_display() {
        let r = ExactRational::ratio(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(ExactRational::from_int(270).to_string(), "270");
        let json = serde_json::to_string(&ExactRational::ratio(3, 2)).unwrap();
        assert_eq!(json, r#"{"num":"3","den":"2"}"#);
    }

    #[test]
    fn factor_remark_form() {
        assert_eq!(
            ExactRational::from_int(2).factor_as_p_minus_one_times_p(3),
            Some((1, 0))
        );
        assert_eq!(
            ExactRational::from_int(12).factor_as_p_minus_one_times_p(3),
            Some((2, 1))
        );
        assert_eq!(
            ExactRational::from_int(8).factor_as_p_minus_one_times_p(2),
            Some((0, 3))
        );
        assert_eq!(
            ExactRational::from_int(5).factor_as_p_minus_one_times_p(3),
            None
        );
        assert_eq!(
            ExactRational::ratio(1, 2).factor_as_p_minus_one_times_p(2),
            None
        );
    }
}
