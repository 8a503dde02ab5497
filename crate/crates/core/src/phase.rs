//! Exact phases, stored as reduced rational multiples of π in `[0, 2)`.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A phase `(num / den)·π`, always reduced and normalized into `[0, 2π)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Phase {
    num: i64,
    den: i64,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Phase {
    pub const ZERO: Phase = Phase { num: 0, den: 1 };
    pub const PI: Phase = Phase { num: 1, den: 1 };
    pub const HALF_PI: Phase = Phase { num: 1, den: 2 };
    pub const THREE_HALVES_PI: Phase = Phase { num: 3, den: 2 };
    pub const QUARTER_PI: Phase = Phase { num: 1, den: 4 };

    /// `(num / den)·π`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Phase {
        assert!(den != 0, "phase denominator must be nonzero");
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        let g = gcd(num, den);
        num /= g;
        den /= g;
        Phase {
            num: num.rem_euclid(2 * den),
            den,
        }
    }

    pub fn numerator(self) -> i64 {
        self.num
    }

    pub fn denominator(self) -> i64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// True for π/2 and 3π/2.
    pub fn is_proper_clifford(self) -> bool {
        self.den == 2
    }

    pub fn is_pauli(self) -> bool {
        self.den == 1
    }

    pub fn to_radians(self) -> f64 {
        std::f64::consts::PI * self.num as f64 / self.den as f64
    }

    /// `e^{iφ}`; multiples of π/4 use exact table values.
    pub fn unit(self) -> Complex64 {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        if 4 % self.den == 0 {
            let k = self.num * (4 / self.den);
            return match k {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(h, h),
                2 => Complex64::new(0.0, 1.0),
                3 => Complex64::new(-h, h),
                4 => Complex64::new(-1.0, 0.0),
                5 => Complex64::new(-h, -h),
                6 => Complex64::new(0.0, -1.0),
                _ => Complex64::new(h, -h),
            };
        }
        Complex64::from_polar(1.0, self.to_radians())
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        let g = gcd(self.den, rhs.den);
        let den = self.den / g * rhs.den;
        Phase::new(self.num * (den / self.den) + rhs.num * (den / rhs.den), den)
    }
}

impl AddAssign for Phase {
    fn add_assign(&mut self, rhs: Phase) {
        *self = *self + rhs;
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::new(-self.num, self.den)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        self + (-rhs)
    }
}

impl fmt::Display for Phase {
    /// The fraction of π, e.g. `1/2` for π/2 and `0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}π", self)
    }
}

impl FromStr for Phase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Phase, Error> {
        let bad = || Error::Parse(format!("invalid phase {s:?}, expected \"p/q\""));
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: i64 = n.parse().map_err(|_| bad())?;
        let den: i64 = d.parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        Ok(Phase::new(num, den))
    }
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Phase {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Phase, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
