use std::fmt;

use serde::{Deserialize, Serialize};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Coefficient field of a matrix, algebra or module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Domain {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Fp")]
    PrimeField(u64),
}

impl Domain {
    pub fn prime_field(p: u64) -> Result<Self> {
        if p < 2 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::Parse(format!("{p} is not a supported prime modulus")));
        }
        Ok(Domain::PrimeField(p))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Domain::Rational => Scalar::Q(Rational::from_int(n)),
            Domain::PrimeField(p) => Scalar::F(Residue::new(n.rem_euclid(p as i64) as u64, p)),
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Domain::Rational => 0,
            Domain::PrimeField(p) => p,
        }
    }

    pub fn parse(self, s: &str) -> Result<Scalar> {
        let r: Rational = s.parse().map_err(|e: super::rational::ParseRationalError| Error::Parse(e.to_string()))?;
        self.from_rational(&r)
    }

    /// Maps a rational into the field; fails when the denominator vanishes mod p.
    pub fn from_rational(self, r: &Rational) -> Result<Scalar> {
        match self {
            Domain::Rational => Ok(Scalar::Q(r.clone())),
            Domain::PrimeField(p) => {
                let m = num_bigint::BigInt::from(p);
                let reduce = |x: num_bigint::BigInt| -> u64 {
                    let r = ((x % &m) + &m) % &m;
                    u64::try_from(r).expect("residue fits u64")
                };
                let n = reduce(r.numer());
                let d = reduce(r.denom());
                if d == 0 {
                    return Err(Error::Parse(format!("{r} has no image in F_{p}")));
                }
                Ok(Scalar::F(Residue::new(n, p).mul(Residue::new(d, p).inv())))
            }
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Rational => write!(f, "Q"),
            Domain::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of Z/p with the modulus carried alongside.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    pub value: u64,
    pub modulus: u64,
}

impl Residue {
    pub fn new(value: u64, modulus: u64) -> Self {
        Residue { value: value % modulus, modulus }
    }

    fn check(self, other: Residue) {
        assert_eq!(self.modulus, other.modulus, "mixed prime moduli");
    }

    pub fn add(self, o: Residue) -> Residue {
        self.check(o);
        Residue::new(self.value + o.value, self.modulus)
    }

    pub fn sub(self, o: Residue) -> Residue {
        self.check(o);
        Residue::new(self.value + self.modulus - o.value, self.modulus)
    }

    pub fn mul(self, o: Residue) -> Residue {
        self.check(o);
        let v = (self.value as u128 * o.value as u128) % self.modulus as u128;
        Residue { value: v as u64, modulus: self.modulus }
    }

    pub fn neg(self) -> Residue {
        Residue::new(self.modulus - self.value, self.modulus)
    }

    pub fn pow(self, mut e: u64) -> Residue {
        let mut base = self;
        let mut acc = Residue::new(1, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Residue {
        assert!(self.value != 0, "inverse of zero residue");
        self.pow(self.modulus - 2)
    }
}

/// A field element: either an exact rational or a prime-field residue.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rational),
    F(Residue),
}

impl Scalar {
    pub fn domain(&self) -> Domain {
        match self {
            Scalar::Q(_) => Domain::Rational,
            Scalar::F(r) => Domain::PrimeField(r.modulus),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::F(r) => r.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::F(r) => r.value == 1,
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::F(a), Scalar::F(b)) => Scalar::F(a.add(*b)),
            _ => panic!("mixed scalar domains"),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            (Scalar::F(a), Scalar::F(b)) => Scalar::F(a.sub(*b)),
            _ => panic!("mixed scalar domains"),
        }
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::F(a), Scalar::F(b)) => Scalar::F(a.mul(*b)),
            _ => panic!("mixed scalar domains"),
        }
    }

    pub fn div(&self, o: &Scalar) -> Scalar {
        self.mul(&o.inv())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::F(a) => Scalar::F(a.neg()),
        }
    }

    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.recip()),
            Scalar::F(a) => Scalar::F(a.inv()),
        }
    }

    /// `self + a*b`, the elimination kernel.
    #[inline]
    pub fn add_mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        if a.is_zero() || b.is_zero() {
            return self.clone();
        }
        self.add(&a.mul(b))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Q(r) => Some(r),
            Scalar::F(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::F(r) => write!(f, "{}", r.value),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let d = Domain::prime_field(7).unwrap();
        let a = d.from_i64(3);
        let b = d.from_i64(5);
        assert_eq!(a.mul(&b), d.from_i64(1));
        assert_eq!(a.inv(), b);
        assert_eq!(d.from_i64(-1), d.from_i64(6));
        assert_eq!(d.parse("1/2").unwrap(), d.from_i64(4));
        assert!(d.parse("1/7").is_err());
        assert!(Domain::prime_field(9).is_err());
    }
}
