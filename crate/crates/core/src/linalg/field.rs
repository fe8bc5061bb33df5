use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::LinalgError;

/// Ground field of every matrix: the rationals or a prime field `F_p` with `p < 2^16`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u32),
}

/// An exact field element. The variant always agrees with the owning [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular(u32),
}

impl Field {
    pub fn prime(p: u32) -> Result<Self, LinalgError> {
        if !(2..(1 << 16)).contains(&p) || !is_prime(p) {
            return Err(LinalgError::InvalidField(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::zero()),
            Field::Prime(_) => Scalar::Modular(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::one()),
            Field::Prime(_) => Scalar::Modular(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Modular(v.rem_euclid(*p as i64) as u32),
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar, LinalgError> {
        if den == 0 {
            return Err(LinalgError::Parse("zero denominator".into()));
        }
        match self {
            Field::Rationals => Ok(Scalar::Rational(BigRational::new(num.into(), den.into()))),
            Field::Prime(_) => {
                let d = self.from_i64(den);
                let inv = self
                    .inv(&d)
                    .ok_or_else(|| LinalgError::Parse(format!("denominator {den} vanishes mod p")))?;
                Ok(self.mul(&self.from_i64(num), &inv))
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Field::Prime(p), Scalar::Modular(x), Scalar::Modular(y)) => {
                Scalar::Modular(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            _ => mismatch(),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x - y),
            (Field::Prime(p), Scalar::Modular(x), Scalar::Modular(y)) => {
                Scalar::Modular(((*x as u64 + *p as u64 - *y as u64) % *p as u64) as u32)
            }
            _ => mismatch(),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Field::Prime(p), Scalar::Modular(x), Scalar::Modular(y)) => {
                Scalar::Modular(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            _ => mismatch(),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Rationals, Scalar::Rational(x)) => Scalar::Rational(-x),
            (Field::Prime(p), Scalar::Modular(x)) => Scalar::Modular((*p - *x) % *p),
            _ => mismatch(),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match (self, a) {
            (Field::Rationals, Scalar::Rational(x)) => Some(Scalar::Rational(x.recip())),
            (Field::Prime(p), Scalar::Modular(x)) => Some(Scalar::Modular(pow_mod(*x, *p - 2, *p))),
            _ => mismatch(),
        }
    }

    /// Uniform over `F_p`; small integers in `[-3, 3]` over the rationals.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            Field::Rationals => self.from_i64(rng.gen_range(-3..=3)),
            Field::Prime(p) => Scalar::Modular(rng.gen_range(0..*p)),
        }
    }

    pub fn contains(&self, a: &Scalar) -> bool {
        match (self, a) {
            (Field::Rationals, Scalar::Rational(_)) => true,
            (Field::Prime(p), Scalar::Modular(x)) => x < p,
            _ => false,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(x) => x.is_zero(),
            Scalar::Modular(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(x) => x.is_one(),
            Scalar::Modular(x) => *x == 1,
        }
    }

    /// Small-integer view, used by tests and by the integer relation code.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(x) if x.is_integer() => x.to_integer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Modular(x) => Some(*x as i64),
        }
    }

    pub fn abs_height(&self) -> u64 {
        match self {
            Scalar::Rational(x) => {
                let n = x.numer().abs().to_u64().unwrap_or(u64::MAX);
                let d = x.denom().to_u64().unwrap_or(u64::MAX);
                n.max(d)
            }
            Scalar::Modular(x) => *x as u64,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(x) => write!(f, "{x}"),
            Scalar::Modular(x) => write!(f, "{x}"),
        }
    }
}

#[cold]
fn mismatch() -> ! {
    panic!("scalar does not belong to the field of the operation")
}

fn pow_mod(base: u32, mut exp: u32, p: u32) -> u32 {
    let p = p as u64;
    let mut acc = 1u64;
    let mut b = base as u64 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        exp >>= 1;
    }
    acc as u32
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_validation() {
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(65521).is_ok());
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(65537).is_err());
    }

    #[test]
    fn inverses_mod_p() {
        let f = Field::prime(7).unwrap();
        for v in 1..7 {
            let a = f.from_i64(v);
            let b = f.inv(&a).unwrap();
            assert!(f.mul(&a, &b).is_one());
        }
        assert!(f.inv(&f.zero()).is_none());
    }

    #[test]
    fn negative_integers_reduce() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.from_i64(-1), Scalar::Modular(4));
        assert_eq!(f.neg(&f.zero()), Scalar::Modular(0));
        let q = Field::Rationals;
        let half = q.from_ratio(2, 4).unwrap();
        assert_eq!(half.to_string(), "1/2");
    }
}
