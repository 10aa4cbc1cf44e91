//! Scalar fields: prime fields `F_p` and the rationals.
//!
//! Every matrix carries its field by value. `PrimeField` is a `Copy` word,
//! `Rationals` is zero-sized, so carrying the field around costs nothing.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::Error;

pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Interprets the literal `num/den` in the field.
    #[allow(clippy::wrong_self_convention)]
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem, Error>;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// Literal form accepted back by the parser.
    fn literal(&self, a: &Self::Elem) -> String;
    /// `field` section value: the prime, or `rational`.
    fn descriptor(&self) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// Integers modulo a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub const DEFAULT_PRIME: u64 = 101;

    pub fn new(p: u64) -> Result<Self, Error> {
        if !(2..1 << 32).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^32")));
        }
        Ok(Self { p })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    fn reduce(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: Self::DEFAULT_PRIME }
    }
}

fn is_prime(n: u64) -> bool {
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

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce(v as i128)
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<u64, Error> {
        let p = BigInt::from(self.p);
        let residue = |v: &BigInt| -> u64 {
            let r = ((v % &p) + &p) % &p;
            u64::try_from(r).expect("residue fits in u64")
        };
        let d = residue(den);
        let inv = self
            .inv(&d)
            .ok_or_else(|| Error::InvalidField(format!("denominator {den} vanishes mod {}", self.p)))?;
        Ok(self.mul(&residue(num), &inv))
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn literal(&self, a: &u64) -> String {
        a.to_string()
    }
    fn descriptor(&self) -> String {
        self.p.to_string()
    }
}

/// Exact rationals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<BigRational, Error> {
        if den.is_zero() {
            return Err(Error::InvalidField("zero denominator".into()));
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        // Small integers keep entries readable and growth bounded.
        self.from_i64(rng.gen_range(-4..=4))
    }
    fn literal(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else if a.is_negative() {
            format!("-{}/{}", a.numer().abs(), a.denom())
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn descriptor(&self) -> String {
        "rational".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(PrimeField::new(101).is_ok());
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(100).is_err());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn fp_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.add(&5, &4), 2);
        assert_eq!(f.sub(&2, &5), 4);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.inv(&0), None);
        assert_eq!(f.from_i64(-1), 6);
        let half = f.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(f.mul(&half, &2), 1);
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(7)).is_err());
    }

    #[test]
    fn rational_literals() {
        let q = Rationals;
        let a = q.from_ratio(&BigInt::from(-3), &BigInt::from(6)).unwrap();
        assert_eq!(q.literal(&a), "-1/2");
        assert_eq!(q.literal(&q.from_i64(4)), "4");
    }
}
