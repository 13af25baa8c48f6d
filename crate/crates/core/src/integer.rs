//! Exact integers with an inline machine-word fast path.
//!
//! [`Z`] stores values that fit in an `i64` inline and promotes to a heap
//! allocated [`BigInt`] only when an operation overflows. The representation
//! is normalized (a `Big` never holds a value that fits in `i64`), so derived
//! equality and hashing agree with numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Z {
    Small(i64),
    Big(Box<BigInt>),
}

impl Z {
    pub const ZERO: Z = Z::Small(0);
    pub const ONE: Z = Z::Small(1);

    pub fn from_big(b: BigInt) -> Z {
        match b.to_i64() {
            Some(v) => Z::Small(v),
            None => Z::Big(Box::new(b)),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Z::Small(v) => BigInt::from(*v),
            Z::Big(b) => (**b).clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Z::Small(v) => Some(*v),
            Z::Big(_) => None,
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, Z::Small(0))
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self, Z::Small(1))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Z::Small(v) => v.signum() as i32,
            Z::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Z {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Compares absolute values.
    pub fn cmp_abs(&self, other: &Z) -> Ordering {
        match (self, other) {
            (Z::Small(a), Z::Small(b)) => a.unsigned_abs().cmp(&b.unsigned_abs()),
            _ => self.to_big().abs().cmp(&other.to_big().abs()),
        }
    }

    /// Floor division and the matching nonnegative-for-positive-divisor remainder.
    pub fn div_mod_floor(&self, d: &Z) -> (Z, Z) {
        assert!(!d.is_zero(), "division by zero");
        if let (Z::Small(a), Z::Small(b)) = (self, d) {
            if !(*a == i64::MIN && *b == -1) {
                let (q, r) = a.div_mod_floor(b);
                return (Z::Small(q), Z::Small(r));
            }
        }
        let (q, r) = self.to_big().div_mod_floor(&d.to_big());
        (Z::from_big(q), Z::from_big(r))
    }

    /// Quotient rounded to the nearest integer, so that `|self - q*d| <= |d|/2`.
    pub fn div_round(&self, d: &Z) -> Z {
        let (q, r) = self.div_mod_floor(d);
        // r has the sign of d, so r - d is the other candidate remainder
        let twice = &r + &r;
        if twice.cmp_abs(d) == Ordering::Greater {
            q + Z::ONE
        } else {
            q
        }
    }

    /// Exact division; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Z) -> Z {
        let (q, r) = self.div_mod_floor(d);
        assert!(r.is_zero(), "inexact division {self} / {d}");
        q
    }

    /// Least nonnegative residue modulo a positive `m`.
    pub fn rem_floor(&self, m: &Z) -> Z {
        self.div_mod_floor(m).1
    }

    pub fn divides(&self, other: &Z) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_mod_floor(self).1.is_zero()
    }

    pub fn gcd(&self, other: &Z) -> Z {
        match (self, other) {
            (Z::Small(a), Z::Small(b)) if *a != i64::MIN && *b != i64::MIN => Z::Small(a.gcd(b)),
            _ => Z::from_big(self.to_big().gcd(&other.to_big())),
        }
    }

    /// Residue modulo a word-sized prime, in `0..p`.
    pub fn mod_u64(&self, p: u64) -> u64 {
        match self {
            Z::Small(v) => v.rem_euclid(p as i64) as u64,
            Z::Big(b) => b.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits"),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Z::Small(v) => *v as f64,
            Z::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }
}

impl Default for Z {
    fn default() -> Self {
        Z::ZERO
    }
}

impl From<i64> for Z {
    fn from(v: i64) -> Self {
        Z::Small(v)
    }
}

impl From<i32> for Z {
    fn from(v: i32) -> Self {
        Z::Small(v as i64)
    }
}

impl From<usize> for Z {
    fn from(v: usize) -> Self {
        match i64::try_from(v) {
            Ok(v) => Z::Small(v),
            Err(_) => Z::from_big(BigInt::from(v)),
        }
    }
}

impl From<u64> for Z {
    fn from(v: u64) -> Self {
        match i64::try_from(v) {
            Ok(v) => Z::Small(v),
            Err(_) => Z::from_big(BigInt::from(v)),
        }
    }
}

impl From<BigInt> for Z {
    fn from(b: BigInt) -> Self {
        Z::from_big(b)
    }
}

impl From<&Z> for BigInt {
    fn from(z: &Z) -> Self {
        z.to_big()
    }
}

impl Ord for Z {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Z::Small(a), Z::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Z {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Z::Small(v) => write!(f, "{v}"),
            Z::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident, $big:tt) => {
        impl<'a> $trait<&'a Z> for &'a Z {
            type Output = Z;
            #[inline]
            fn $method(self, rhs: &'a Z) -> Z {
                if let (Z::Small(a), Z::Small(b)) = (self, rhs) {
                    if let Some(v) = a.$checked(*b) {
                        return Z::Small(v);
                    }
                }
                Z::from_big(self.to_big() $big rhs.to_big())
            }
        }
        impl $trait<Z> for Z {
            type Output = Z;
            #[inline]
            fn $method(self, rhs: Z) -> Z {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Z> for Z {
            type Output = Z;
            #[inline]
            fn $method(self, rhs: &'a Z) -> Z {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add, +);
binop!(Sub, sub, checked_sub, -);
binop!(Mul, mul, checked_mul, *);

impl AddAssign<&Z> for Z {
    fn add_assign(&mut self, rhs: &Z) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Z> for Z {
    fn sub_assign(&mut self, rhs: &Z) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Z> for Z {
    fn mul_assign(&mut self, rhs: &Z) {
        *self = &*self * rhs;
    }
}

impl Neg for &Z {
    type Output = Z;
    fn neg(self) -> Z {
        match self {
            Z::Small(v) => match v.checked_neg() {
                Some(n) => Z::Small(n),
                None => Z::from_big(-BigInt::from(*v)),
            },
            Z::Big(b) => Z::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Z {
    type Output = Z;
    fn neg(self) -> Z {
        -&self
    }
}

impl Zero for Z {
    fn zero() -> Self {
        Z::ZERO
    }
    fn is_zero(&self) -> bool {
        Z::is_zero(self)
    }
}

impl One for Z {
    fn one() -> Self {
        Z::ONE
    }
}

impl std::iter::Sum for Z {
    fn sum<I: Iterator<Item = Z>>(iter: I) -> Z {
        iter.fold(Z::ZERO, |acc, x| acc + x)
    }
}

impl std::iter::Product for Z {
    fn product<I: Iterator<Item = Z>>(iter: I) -> Z {
        iter.fold(Z::ONE, |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Z::from(i64::MAX) + Z::ONE;
        assert!(matches!(big, Z::Big(_)));
        let back = big - Z::ONE;
        assert_eq!(back, Z::Small(i64::MAX));
        assert!(matches!(-Z::from(i64::MIN), Z::Big(_)));
    }

    #[test]
    fn rounding_division() {
        assert_eq!(Z::from(7).div_round(&Z::from(2)), Z::from(3));
        assert_eq!(Z::from(-7).div_round(&Z::from(3)), Z::from(-2));
        assert_eq!(Z::from(5).div_round(&Z::from(-3)), Z::from(-2));
    }

    proptest! {
        #[test]
        fn matches_bigint(a in any::<i64>(), b in any::<i64>()) {
            let (za, zb) = (Z::from(a), Z::from(b));
            let (ba, bb) = (BigInt::from(a), BigInt::from(b));
            prop_assert_eq!((&za + &zb).to_big(), &ba + &bb);
            prop_assert_eq!((&za - &zb).to_big(), &ba - &bb);
            prop_assert_eq!((&za * &zb).to_big(), &ba * &bb);
            prop_assert_eq!(za.cmp(&zb), ba.cmp(&bb));
            if b != 0 {
                let r = za.div_round(&zb);
                let rem = &za - &(&r * &zb);
                prop_assert!((&rem + &rem).cmp_abs(&zb) != Ordering::Greater);
            }
        }
    }
}
