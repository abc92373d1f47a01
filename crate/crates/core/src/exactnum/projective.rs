use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::Rational;
use crate::error::{Error, Result};

/// A point of the rational projective line, `p/q` with `(1, 0)` standing for infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjRational {
    p: BigInt,
    q: BigInt,
}

impl ProjRational {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        if p.is_zero() && q.is_zero() {
            return Err(Error::Input("0/0 is not a projective point".into()));
        }
        Ok(Self::normalized(p, q))
    }

    pub(crate) fn normalized(p: BigInt, q: BigInt) -> Self {
        debug_assert!(!(p.is_zero() && q.is_zero()));
        if q.is_zero() {
            return Self::infinity();
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / &g, q / &g);
        if q.is_negative() {
            p = -p;
            q = -q;
        }
        ProjRational { p, q }
    }

    pub fn infinity() -> Self {
        ProjRational {
            p: BigInt::one(),
            q: BigInt::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        ProjRational {
            p: BigInt::from(n),
            q: BigInt::one(),
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.q.is_zero()
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn to_rational(&self) -> Option<Rational> {
        (!self.is_infinite()).then(|| Rational::new(self.p.clone(), self.q.clone()))
    }

    pub fn from_rational(r: &Rational) -> Self {
        Self::normalized(r.numer().clone(), r.denom().clone())
    }

    /// `|p1 q2 - p2 q1|`, equal to 1 exactly for Farey neighbours.
    pub fn cross(&self, other: &Self) -> BigInt {
        (&self.p * &other.q - &other.p * &self.q).abs()
    }

    pub fn to_f64(&self) -> f64 {
        match self.to_rational() {
            Some(r) => super::rational::to_f64(&r),
            None => f64::INFINITY,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" || s == "oo" || s == "∞" {
            return Ok(Self::infinity());
        }
        let bad = || Error::Input(format!("not a projective rational: {s:?}"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                Self::new(p, q)
            }
            None => {
                let p: BigInt = s.parse().map_err(|_| bad())?;
                Self::new(p, BigInt::one())
            }
        }
    }
}

/// Ordered by value, with infinity above every finite value.
impl Ord for ProjRational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (&self.p * &other.q).cmp(&(&other.p * &self.q)),
        }
    }
}

impl PartialOrd for ProjRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ProjRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl Serialize for ProjRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ProjRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        ProjRational::parse(&s).map_err(serde::de::Error::custom)
    }
}
