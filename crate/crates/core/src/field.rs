//! Coefficient fields: the rationals and prime fields of word size.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest modulus accepted for prime fields; products of two residues fit in `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u32),
}

/// A field element. Rationals are always reduced with a positive denominator
/// (guaranteed by `BigRational`); residues are kept in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rat(Box<BigRational>),
    Mod(u32),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Field::Rational => Coeff::Rat(Box::new(BigRational::zero())),
            Field::Prime(_) => Coeff::Mod(0),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            Field::Rational => Coeff::Rat(Box::new(BigRational::from_integer(v.into()))),
            Field::Prime(p) => Coeff::Mod(v.rem_euclid(*p as i64) as u32),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match self {
            Field::Rational => Coeff::Rat(Box::new(BigRational::from_integer(v.clone()))),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Coeff::Mod(r.to_u32().expect("residue fits"))
            }
        }
    }

    /// Maps a rational into the field; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, v: &BigRational) -> Result<Coeff> {
        match self {
            Field::Rational => Ok(Coeff::Rat(Box::new(v.clone()))),
            Field::Prime(_) => {
                let n = self.from_bigint(v.numer());
                let d = self.from_bigint(v.denom());
                self.div(&n, &d)
            }
        }
    }

    pub fn is_zero(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Rat(r) => r.is_zero(),
            Coeff::Mod(v) => *v == 0,
        }
    }

    pub fn is_one(&self, a: &Coeff) -> bool {
        match a {
            Coeff::Rat(r) => r.is_one(),
            Coeff::Mod(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Rational, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(Box::new(&**x + &**y)),
            (Field::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            _ => panic!("coefficient from a different field"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Rational, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(Box::new(&**x - &**y)),
            (Field::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod(((*x as u64 + *p as u64 - *y as u64) % *p as u64) as u32)
            }
            _ => panic!("coefficient from a different field"),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Rational, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(Box::new(&**x * &**y)),
            (Field::Prime(p), Coeff::Mod(x), Coeff::Mod(y)) => {
                Coeff::Mod(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            _ => panic!("coefficient from a different field"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (Field::Rational, Coeff::Rat(x)) => Coeff::Rat(Box::new(-&**x)),
            (Field::Prime(p), Coeff::Mod(x)) => Coeff::Mod(if *x == 0 { 0 } else { *p - *x }),
            _ => panic!("coefficient from a different field"),
        }
    }

    pub fn inv(&self, a: &Coeff) -> Result<Coeff> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, a) {
            (Field::Rational, Coeff::Rat(x)) => Coeff::Rat(Box::new(x.recip())),
            (Field::Prime(p), Coeff::Mod(x)) => Coeff::Mod(pow_mod(*x as u64, *p as u64 - 2, *p as u64) as u32),
            _ => panic!("coefficient from a different field"),
        })
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Result<Coeff> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Coeff, mut e: u32) -> Coeff {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Whether the element prints with a leading minus sign.
    pub fn is_negative(&self, a: &Coeff) -> bool {
        match (self, a) {
            (Field::Rational, Coeff::Rat(x)) => x.is_negative(),
            (Field::Prime(p), Coeff::Mod(x)) => *x > *p / 2,
            _ => false,
        }
    }

    /// Symmetric integer/rational representative, used for printing and JSON.
    pub fn to_rational(&self, a: &Coeff) -> BigRational {
        match (self, a) {
            (Field::Rational, Coeff::Rat(x)) => (**x).clone(),
            (Field::Prime(p), Coeff::Mod(x)) => {
                let v = if *x > *p / 2 { *x as i64 - *p as i64 } else { *x as i64 };
                BigRational::from_integer(v.into())
            }
            _ => panic!("coefficient from a different field"),
        }
    }

    pub fn fmt_coeff(&self, a: &Coeff) -> String {
        let r = self.to_rational(a);
        if r.is_integer() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_check() {
        assert!(Field::prime(32003).is_ok());
        assert!(Field::prime(2).is_ok());
        assert!(matches!(Field::prime(32001), Err(Error::NotPrime(32001))));
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(1 << 40).is_err());
    }

    #[test]
    fn modular_inverse() {
        let f = Field::Prime(32003);
        for v in [1i64, 2, 17, 32002, -5] {
            let a = f.from_i64(v);
            let prod = f.mul(&a, &f.inv(&a).unwrap());
            assert!(f.is_one(&prod));
        }
        assert!(f.inv(&f.zero()).is_err());
    }

    #[test]
    fn rationals_stay_reduced() {
        let f = Field::Rational;
        let a = f.from_rational(&BigRational::new(6.into(), (-4).into())).unwrap();
        assert_eq!(f.fmt_coeff(&a), "-3/2");
        let b = f.from_rational(&BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(f.fmt_coeff(&f.add(&a, &b)), "-1");
    }

    #[test]
    fn rational_into_prime_field() {
        let f = Field::Prime(7);
        let half = f.from_rational(&BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(half, Coeff::Mod(4));
        assert!(f.from_rational(&BigRational::new(1.into(), 7.into())).is_err());
        assert_eq!(f.fmt_coeff(&Coeff::Mod(6)), "-1");
    }
}
