//! Real quadratic irrationals `(a + b√D)/c`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::projective::ProjRational;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

/// Splits `n > 0` as `s² · f` with `f` square-free; returns `(s, f)`.
fn square_free_split(n: &BigInt) -> (BigInt, BigInt) {
    let mut s = BigInt::one();
    let mut f = BigInt::one();
    let mut m = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            s *= num_traits::pow(p.clone(), (e / 2) as usize);
            if e % 2 == 1 {
                f *= &p;
            }
        }
        p += 1;
    }
    f *= m;
    (s, f)
}

impl QuadSurd {
    /// Builds `(a + b√D)/c`, reducing `D` to its square-free part.
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let (a, mut b, c, d) = (a.into(), b.into(), c.into(), d.into());
        if c.is_zero() {
            return Err(Error::Input("surd with zero denominator".into()));
        }
        if d.is_negative() {
            return Err(Error::Domain("surd radicand must be nonnegative".into()));
        }
        if d.is_zero() {
            return Ok(Self::canonical(a, BigInt::zero(), c, BigInt::one()));
        }
        let (s, f) = square_free_split(&d);
        b *= s;
        Ok(Self::canonical(a, b, c, f))
    }

    /// Assumes `d` is square-free and positive.
    fn canonical(mut a: BigInt, mut b: BigInt, mut c: BigInt, mut d: BigInt) -> Self {
        if d.is_one() {
            a += &b;
            b = BigInt::zero();
        }
        if b.is_zero() {
            d = BigInt::one();
        }
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_zero() && !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        QuadSurd { a, b, c, d }
    }

    pub fn from_rational(r: &Rational) -> Self {
        Self::canonical(
            r.numer().clone(),
            BigInt::zero(),
            r.denom().clone(),
            BigInt::one(),
        )
    }

    pub fn from_int(n: i64) -> Self {
        Self::canonical(BigInt::from(n), BigInt::zero(), BigInt::one(), BigInt::one())
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational()
            .then(|| Rational::new(self.a.clone(), self.c.clone()))
    }

    pub fn to_f64(&self) -> f64 {
        let f = |x: &BigInt| x.to_f64().unwrap_or(f64::NAN);
        (f(&self.a) + f(&self.b) * f(&self.d).sqrt()) / f(&self.c)
    }

    /// Galois conjugate `(a - b√D)/c`.
    pub fn conjugate(&self) -> Self {
        QuadSurd {
            a: self.a.clone(),
            b: -&self.b,
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        QuadSurd {
            a: -&self.a,
            b: -&self.b,
            c: self.c.clone(),
            d: self.d.clone(),
        }
    }

    fn common_radicand(&self, other: &Self) -> Result<BigInt> {
        if self.is_rational() {
            Ok(other.d.clone())
        } else if other.is_rational() || self.d == other.d {
            Ok(self.d.clone())
        } else {
            Err(Error::Domain(format!(
                "mixed quadratic fields Q(√{}) and Q(√{})",
                self.d, other.d
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::canonical(
            &self.a * &other.c + &other.a * &self.c,
            &self.b * &other.c + &other.b * &self.c,
            &self.c * &other.c,
            d,
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::canonical(
            &self.a * &other.a + &self.b * &other.b * &d,
            &self.a * &other.b + &self.b * &other.a,
            &self.c * &other.c,
            d,
        ))
    }

    pub fn recip(&self) -> Result<Self> {
        let norm = &self.a * &self.a - &self.b * &self.b * &self.d;
        if norm.is_zero() {
            return Err(Error::Singular("reciprocal of zero surd".into()));
        }
        // c/(a+b√D) = c(a-b√D)/(a²-b²D)
        Ok(Self::canonical(
            &self.c * &self.a,
            -(&self.c * &self.b),
            norm,
            self.d.clone(),
        ))
    }

    pub fn signum(&self) -> Ordering {
        sign_lin(&self.a, &self.b, &self.d)
    }

    /// Image under `x ↦ (p x + q)/(r x + s)`; `None` when the image is infinite.
    pub fn mobius(&self, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) -> Option<Self> {
        let nu = p * &self.a + q * &self.c;
        let nv = p * &self.b;
        let du = r * &self.a + s * &self.c;
        let dv = r * &self.b;
        let norm = &du * &du - &dv * &dv * &self.d;
        if norm.is_zero() {
            return None;
        }
        // (nu + nv√D)(du - dv√D) / norm
        let a = &nu * &du - &nv * &dv * &self.d;
        let b = &nv * &du - &nu * &dv;
        Some(Self::canonical(a, b, norm, self.d.clone()))
    }

    /// Compares with a point of the projective line, infinity being largest.
    pub fn cmp_proj(&self, x: &ProjRational) -> Ordering {
        match x.to_rational() {
            None => Ordering::Less,
            Some(r) => surd_cmp(self, &QuadSurd::from_rational(&r)),
        }
    }
}

fn ord_of(x: &BigInt) -> Ordering {
    x.cmp(&BigInt::zero())
}

/// Sign of `p + q√e` for integer `e ≥ 0` (not necessarily square-free).
fn sign_lin(p: &BigInt, q: &BigInt, e: &BigInt) -> Ordering {
    let sp = ord_of(p);
    let sq = if e.is_zero() { Ordering::Equal } else { ord_of(q) };
    if sq == Ordering::Equal {
        return sp;
    }
    if sp == Ordering::Equal || sp == sq {
        return sq;
    }
    // opposite signs: compare p² with q²e
    match (p * p).cmp(&(q * q * e)) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Sign of `p + q√d1 + r√d2` by repeated squaring.
fn sign_two(p: &BigInt, q: &BigInt, d1: &BigInt, r: &BigInt, d2: &BigInt) -> Ordering {
    if d1 == d2 {
        return sign_lin(p, &(q + r), d1);
    }
    // s = sign(q√d1 + r√d2)
    let sx = sign_lin_pair(q, d1, r, d2);
    let sp = ord_of(p);
    if sx == Ordering::Equal {
        return sp;
    }
    if sp == Ordering::Equal || sp == sx {
        return sx;
    }
    // sign(p² - (q√d1 + r√d2)²) = sign(p² - q²d1 - r²d2 - 2qr√(d1 d2))
    let lhs = p * p - q * q * d1 - r * r * d2;
    let cross = -(BigInt::from(2) * q * r);
    match sign_lin(&lhs, &cross, &(d1 * d2)) {
        Ordering::Greater => sp,
        Ordering::Less => sx,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Sign of `q√d1 + r√d2`.
fn sign_lin_pair(q: &BigInt, d1: &BigInt, r: &BigInt, d2: &BigInt) -> Ordering {
    let s1 = if d1.is_zero() { Ordering::Equal } else { ord_of(q) };
    let s2 = if d2.is_zero() { Ordering::Equal } else { ord_of(r) };
    if s1 == Ordering::Equal {
        return s2;
    }
    if s2 == Ordering::Equal || s1 == s2 {
        return s1;
    }
    match (q * q * d1).cmp(&(r * r * d2)) {
        Ordering::Greater => s1,
        Ordering::Less => s2,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Exact comparison of two surds, possibly from different quadratic fields.
pub fn surd_cmp(x: &QuadSurd, y: &QuadSurd) -> Ordering {
    // sign(x - y) * c1 c2 = sign((a1 c2 - a2 c1) + b1 c2 √D1 - b2 c1 √D2)
    let p = &x.a * &y.c - &y.a * &x.c;
    let q = &x.b * &y.c;
    let r = -(&y.b * &x.c);
    sign_two(&p, &q, &x.d, &r, &y.d)
}

impl Ord for QuadSurd {
    fn cmp(&self, other: &Self) -> Ordering {
        surd_cmp(self, other)
    }
}

impl PartialOrd for QuadSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}/{}", self.a, self.c)
        } else {
            let sign = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "({} {} {}√{})/{}", self.a, sign, self.b.abs(), self.d, self.c)
        }
    }
}

/// Integer field rendered as a JSON number when it fits in `i64`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Big(String),
}

impl IntRepr {
    fn of(x: &BigInt) -> Self {
        match x.to_i64() {
            Some(v) => IntRepr::Small(v),
            None => IntRepr::Big(x.to_string()),
        }
    }
    fn get(self) -> std::result::Result<BigInt, String> {
        match self {
            IntRepr::Small(v) => Ok(BigInt::from(v)),
            IntRepr::Big(s) => s.parse().map_err(|_| format!("bad integer {s:?}")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SurdRepr {
    a: IntRepr,
    b: IntRepr,
    c: IntRepr,
    #[serde(rename = "D")]
    d: IntRepr,
}

impl Serialize for QuadSurd {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SurdRepr {
            a: IntRepr::of(&self.a),
            b: IntRepr::of(&self.b),
            c: IntRepr::of(&self.c),
            d: IntRepr::of(&self.d),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadSurd {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = SurdRepr::deserialize(d)?;
        let a = r.a.get().map_err(D::Error::custom)?;
        let b = r.b.get().map_err(D::Error::custom)?;
        let c = r.c.get().map_err(D::Error::custom)?;
        let dd = r.d.get().map_err(D::Error::custom)?;
        QuadSurd::new(a, b, c, dd).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn phi() -> QuadSurd {
        QuadSurd::new(1, 1, 2, 5).unwrap()
    }

    /// Decides `x < p/q` by bracketing `√D` with decimal digits.
    fn interval_less(x: &QuadSurd, p: i64, q: i64, digits: u32) -> Option<bool> {
        let scale = BigInt::from(10).pow(digits);
        let lo = (x.radicand() * &scale * &scale).sqrt();
        let hi = &lo + 1;
        let v = |s: &BigInt| {
            Rational::new(x.a() * &scale + x.b() * s, x.c() * &scale)
        };
        let (u, w) = if x.b().is_negative() { (v(&hi), v(&lo)) } else { (v(&lo), v(&hi)) };
        let t = Rational::new(BigInt::from(p), BigInt::from(q));
        if w < t {
            Some(true)
        } else if u > t {
            Some(false)
        } else {
            None
        }
    }

    #[test]
    fn golden_comparisons() {
        assert_eq!(surd_cmp(&phi(), &QuadSurd::from_int(1)), Ordering::Greater);
        let r = QuadSurd::from_rational(&Rational::new(13.into(), 8.into()));
        assert_eq!(surd_cmp(&phi(), &r), Ordering::Less);
        assert_eq!(interval_less(&phi(), 13, 8, 10), Some(true));
        let psi = QuadSurd::new(1, -1, 2, 5).unwrap();
        assert_eq!(surd_cmp(&psi, &QuadSurd::from_int(0)), Ordering::Less);
    }

    #[test]
    fn canonical_form() {
        let x = QuadSurd::new(2, 2, -4, 20).unwrap();
        // (2 + 4√5)/-4 = (-1 - 2√5)/2
        assert_eq!((x.a().clone(), x.b().clone(), x.c().clone()), (BigInt::from(-1), BigInt::from(-2), BigInt::from(2)));
        assert_eq!(x.radicand(), &BigInt::from(5));
        let r = QuadSurd::new(3, 2, 6, 4).unwrap();
        assert!(r.is_rational());
        assert_eq!(r.to_rational().unwrap(), Rational::new(7.into(), 6.into()));
    }

    #[test]
    fn mixed_fields() {
        let s2 = QuadSurd::new(0, 1, 1, 2).unwrap();
        let s3 = QuadSurd::new(0, 1, 1, 3).unwrap();
        assert_eq!(surd_cmp(&s2, &s3), Ordering::Less);
        // √2 + √3 vs 3.146...: compare (√2 + √3) via a shifted copy
        let x = QuadSurd::new(-3, 1, 1, 3).unwrap();
        assert_eq!(surd_cmp(&s2.neg(), &x), Ordering::Less);
    }

    #[test]
    fn mobius_and_field_ops() {
        // x ↦ 1/(x - 1) fixes phi
        let y = phi()
            .mobius(&0.into(), &1.into(), &1.into(), &(-1).into())
            .unwrap();
        assert_eq!(y, phi());
        let sq = phi().mul(&phi()).unwrap();
        assert_eq!(sq, phi().add(&QuadSurd::from_int(1)).unwrap());
        assert_eq!(phi().recip().unwrap(), phi().sub(&QuadSurd::from_int(1)).unwrap());
    }

    #[test]
    fn serde_round_trip() {
        let s = serde_json::to_string(&phi()).unwrap();
        assert_eq!(s, r#"{"a":1,"b":1,"c":2,"D":5}"#);
        let back: QuadSurd = serde_json::from_str(&s).unwrap();
        assert_eq!(back, phi());
    }

    fn arb_surd() -> impl Strategy<Value = QuadSurd> {
        (-40i64..40, -6i64..6, 1i64..12, prop::sample::select(vec![1i64, 2, 3, 5, 6, 7, 10, 13]))
            .prop_map(|(a, b, c, d)| QuadSurd::new(a, b, c, d).unwrap())
    }

    proptest! {
        #[test]
        fn cmp_is_antisymmetric(x in arb_surd(), y in arb_surd()) {
            prop_assert_eq!(surd_cmp(&x, &y), surd_cmp(&y, &x).reverse());
        }

        #[test]
        fn cmp_is_transitive(x in arb_surd(), y in arb_surd(), z in arb_surd()) {
            if surd_cmp(&x, &y) != Ordering::Greater && surd_cmp(&y, &z) != Ordering::Greater {
                prop_assert_ne!(surd_cmp(&x, &z), Ordering::Greater);
            }
        }

        #[test]
        fn cmp_agrees_with_floats(x in arb_surd(), y in arb_surd()) {
            let (fx, fy) = (x.to_f64(), y.to_f64());
            if (fx - fy).abs() > 1e-6 {
                prop_assert_eq!(surd_cmp(&x, &y), fx.partial_cmp(&fy).unwrap());
            }
        }
    }
}
