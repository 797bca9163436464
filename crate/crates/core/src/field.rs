//! Exact scalar arithmetic over the rationals and over prime fields.
//!
//! The field a computation runs over is chosen at runtime (the CLI exposes
//! `Q` and `GFp:<p>`), so scalars are a closed enum rather than a type
//! parameter, and every scalar operation goes through a [`Field`] descriptor.
//! Matrices store their descriptor once; everything above the matrix layer
//! manipulates matrices only and never touches raw scalars.
//!
//! Rational arithmetic uses arbitrary-precision `BigRational` so Gaussian
//! elimination never overflows or rounds.  Prime-field arithmetic is `u64`
//! with the modulus bounded by `2^32` so products fit in `u128`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// Runtime descriptor of the coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    /// The rational numbers with arbitrary-precision arithmetic.
    Rationals,
    /// The prime field GF(p).  Construct through [`Field::prime`] so the
    /// primality of `p` is checked once, up front.
    Prime(u64),
}

/// An element of whichever field a computation runs over.  A `Fp` value is
/// interpreted relative to the [`Field`] carried by the surrounding matrix;
/// it is always stored reduced to `0..p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp(u64),
}

/// Largest allowed prime-field characteristic (so `a * b` fits in `u128`
/// and row operations stay branch-free).
pub const MAX_CHARACTERISTIC: u64 = 1 << 32;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= p) {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    /// A prime field, validating primality of the characteristic.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= MAX_CHARACTERISTIC || !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::zero()),
            Field::Prime(_) => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::one()),
            Field::Prime(_) => Scalar::Fp(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let p = *p as i128;
                Scalar::Fp((((n as i128) % p + p) % p) as u64)
            }
        }
    }

    /// The rational a/b mapped into the field.  Over GF(p) the denominator
    /// must be invertible.
    pub fn from_ratio(&self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        match self {
            Field::Rationals => Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den))),
            Field::Prime(_) => {
                let d = self.from_i64(den);
                self.mul(&self.from_i64(num), &self.inv(&d).expect("denominator divisible by p"))
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp(v) => *v == 0,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % p),
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + p - y) % p),
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Rationals, Scalar::Rat(x)) => Scalar::Rat(-x),
            (Field::Prime(p), Scalar::Fp(x)) => Scalar::Fp(if *x == 0 { 0 } else { p - x }),
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (Field::Rationals, Scalar::Rat(x)) => Some(Scalar::Rat(x.recip())),
            (Field::Prime(p), Scalar::Fp(x)) => Some(Scalar::Fp(mod_inverse(*x, *p))),
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b).expect("division by zero"))
    }

    /// Canonical text form: reduced `p/q` (or a plain integer) over the
    /// rationals, a representative in `0..p` over a prime field.
    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp(v) => v.to_string(),
        }
    }

    /// Parse the canonical text form produced by [`Field::format`].
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let bad = || Error::broken("scalar syntax", format!("cannot parse {text:?} over {self}"));
        match self {
            Field::Rationals => {
                let (n, d) = match text.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (text, "1"),
                };
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Rat(BigRational::new(n, d)))
            }
            Field::Prime(p) => {
                let v: u64 = text.parse().map_err(|_| bad())?;
                if v >= *p {
                    return Err(bad());
                }
                Ok(Scalar::Fp(v))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// Inverse of `a` modulo the prime `p` by the extended Euclidean algorithm.
fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "{a} not invertible mod {p}");
    (((t % p as i128) + p as i128) % p as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn primality_screen() {
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(5).is_ok());
        assert!(Field::prime(7919).is_ok());
        assert_eq!(Field::prime(1), Err(Error::NonPrimeCharacteristic(1)));
        assert_eq!(Field::prime(4), Err(Error::NonPrimeCharacteristic(4)));
        assert_eq!(Field::prime(91), Err(Error::NonPrimeCharacteristic(91)));
    }

    #[test]
    fn rational_canonical_text() {
        let f = Field::Rationals;
        assert_eq!(f.format(&f.from_ratio(6, 4)), "3/2");
        assert_eq!(f.format(&f.from_ratio(-6, 4)), "-3/2");
        assert_eq!(f.format(&f.from_i64(5)), "5");
        assert_eq!(f.parse("3/2").unwrap(), f.from_ratio(3, 2));
        assert_eq!(f.parse("-7").unwrap(), f.from_i64(-7));
        assert!(f.parse("1/0").is_err());
        assert!(f.parse("x").is_err());
    }

    #[test]
    fn gf5_inverses() {
        let f = Field::prime(5).unwrap();
        for v in 1..5i64 {
            let s = f.from_i64(v);
            let inv = f.inv(&s).unwrap();
            assert_eq!(f.mul(&s, &inv), f.one());
        }
        assert_eq!(f.inv(&f.zero()), None);
    }

    proptest! {
        #[test]
        fn rational_field_laws(a in -40i64..40, b in -40i64..40, c in -40i64..40) {
            let f = Field::Rationals;
            let (x, y, z) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
            prop_assert_eq!(f.add(&x, &y), f.add(&y, &x));
            prop_assert_eq!(f.mul(&x, &f.add(&y, &z)),
                            f.add(&f.mul(&x, &y), &f.mul(&x, &z)));
            prop_assert_eq!(f.add(&x, &f.neg(&x)), f.zero());
            if !f.is_zero(&x) {
                prop_assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
            }
        }

        #[test]
        fn prime_field_laws(a in 0u64..7, b in 0u64..7, c in 0u64..7) {
            let f = Field::prime(7).unwrap();
            let (x, y, z) = (Scalar::Fp(a), Scalar::Fp(b), Scalar::Fp(c));
            prop_assert_eq!(f.mul(&x, &f.mul(&y, &z)), f.mul(&f.mul(&x, &y), &z));
            prop_assert_eq!(f.mul(&x, &f.add(&y, &z)),
                            f.add(&f.mul(&x, &y), &f.mul(&x, &z)));
            prop_assert_eq!(f.sub(&x, &x), f.zero());
        }

        #[test]
        fn text_round_trip(n in -999i64..999, d in 1i64..99) {
            let f = Field::Rationals;
            let s = f.from_ratio(n, d);
            prop_assert_eq!(f.parse(&f.format(&s)).unwrap(), s);
        }
    }
}
