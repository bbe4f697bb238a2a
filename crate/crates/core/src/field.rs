//! Exact coefficient fields: the rationals and prime fields `F_p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::AlgebraError;

/// A coefficient. Which variant is valid is decided by the owning
/// [`CoefficientField`]; mixing the two is an internal error.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rational(BigRational),
    /// Canonical representative in `0..p`.
    Modular(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "characteristic", rename_all = "kebab-case")]
pub enum CoefficientField {
    Rationals,
    PrimeField(u32),
}

fn is_prime(p: u32) -> bool {
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

impl CoefficientField {
    /// Field of the given characteristic: `0` gives the rationals.
    pub fn from_characteristic(ch: u64) -> Result<Self, AlgebraError> {
        if ch == 0 {
            return Ok(CoefficientField::Rationals);
        }
        if ch >= 1 << 31 || !is_prime(ch as u32) {
            return Err(AlgebraError::InvalidCharacteristic(ch));
        }
        Ok(CoefficientField::PrimeField(ch as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            CoefficientField::Rationals => 0,
            CoefficientField::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            CoefficientField::Rationals => Coeff::Rational(BigRational::zero()),
            CoefficientField::PrimeField(_) => Coeff::Modular(0),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            CoefficientField::Rationals => Coeff::Rational(BigRational::one()),
            CoefficientField::PrimeField(_) => Coeff::Modular(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            CoefficientField::Rationals => Coeff::Rational(BigRational::from_integer(v.into())),
            CoefficientField::PrimeField(p) => Coeff::Modular(v.rem_euclid(*p as i64) as u32),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match self {
            CoefficientField::Rationals => Coeff::Rational(BigRational::from_integer(v.clone())),
            CoefficientField::PrimeField(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Coeff::Modular(r.to_u32().unwrap_or(0))
            }
        }
    }

    /// `num / den`; errors if the denominator vanishes in this field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Coeff, AlgebraError> {
        let d = self.from_bigint(den);
        if self.is_zero(&d) {
            return Err(AlgebraError::Unrepresentable(format!("{num}/{den}")));
        }
        let n = self.from_bigint(num);
        Ok(self.div(&n, &d))
    }

    pub fn is_zero(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Rational(r) => r.is_zero(),
            Coeff::Modular(v) => *v == 0,
        }
    }

    pub fn is_one(&self, c: &Coeff) -> bool {
        match c {
            Coeff::Rational(r) => r.is_one(),
            Coeff::Modular(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (_, Coeff::Rational(x), Coeff::Rational(y)) => Coeff::Rational(x + y),
            (CoefficientField::PrimeField(p), Coeff::Modular(x), Coeff::Modular(y)) => {
                Coeff::Modular(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            _ => mixed(),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (_, Coeff::Rational(x), Coeff::Rational(y)) => Coeff::Rational(x - y),
            (CoefficientField::PrimeField(p), Coeff::Modular(x), Coeff::Modular(y)) => {
                let p = *p as u64;
                Coeff::Modular(((*x as u64 + p - *y as u64) % p) as u32)
            }
            _ => mixed(),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (_, Coeff::Rational(x)) => Coeff::Rational(-x),
            (CoefficientField::PrimeField(p), Coeff::Modular(x)) => {
                Coeff::Modular(((*p as u64 - *x as u64) % *p as u64) as u32)
            }
            _ => mixed(),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (_, Coeff::Rational(x), Coeff::Rational(y)) => Coeff::Rational(x * y),
            (CoefficientField::PrimeField(p), Coeff::Modular(x), Coeff::Modular(y)) => {
                Coeff::Modular(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            _ => mixed(),
        }
    }

    /// Multiplicative inverse. Panics on zero, which callers never pass.
    pub fn inv(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (_, Coeff::Rational(x)) => {
                assert!(!x.is_zero(), "inverse of zero");
                Coeff::Rational(x.recip())
            }
            (CoefficientField::PrimeField(p), Coeff::Modular(x)) => {
                assert!(*x != 0, "inverse of zero");
                Coeff::Modular(pow_mod(*x as u64, *p as u64 - 2, *p as u64) as u32)
            }
            _ => mixed(),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.mul(a, &self.inv(b))
    }

    pub fn pow(&self, a: &Coeff, e: u32) -> Coeff {
        let mut result = self.one();
        for _ in 0..e {
            result = self.mul(&result, a);
        }
        result
    }

    /// Signed integer view for printing: rationals as-is, `F_p` elements in
    /// the symmetric range `(-p/2, p/2]`.
    pub fn display_value(&self, c: &Coeff) -> BigRational {
        match c {
            Coeff::Rational(r) => r.clone(),
            Coeff::Modular(v) => {
                let p = self.characteristic() as i64;
                let v = *v as i64;
                let s = if v > p / 2 { v - p } else { v };
                BigRational::from_integer(s.into())
            }
        }
    }

    /// True when the printed form of `c` starts with a minus sign.
    pub fn is_negative(&self, c: &Coeff) -> bool {
        self.display_value(c).is_negative()
    }

    /// Evaluates a rational constant into this field, if representable.
    pub fn from_rational(&self, r: &BigRational) -> Result<Coeff, AlgebraError> {
        self.from_fraction(r.numer(), r.denom())
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rationals => write!(f, "QQ"),
            CoefficientField::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

#[cold]
fn mixed() -> ! {
    panic!("coefficient does not belong to this field")
}
