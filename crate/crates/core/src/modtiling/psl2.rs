//! Elements of `PSL₂(ℤ)` acting by Möbius transformations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{ProjRational, QuadSurd};

/// A matrix `[[a, b], [c, d]]` of determinant 1, up to sign.
///
/// Normalized so that `c > 0`, or `c = 0` and `d > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Psl2 {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

/// Generators used in words: `S = [[0,-1],[1,0]]`, `T = [[1,1],[0,1]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gen {
    S,
    T,
}

impl Psl2 {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self> {
        let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
        if &a * &d - &b * &c != BigInt::one() {
            return Err(Error::Input(format!("[[{a},{b}],[{c},{d}]] does not have determinant 1")));
        }
        Ok(Self::norm(a, b, c, d))
    }

    fn norm(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        if c.is_negative() || (c.is_zero() && d.is_negative()) {
            Psl2 {
                a: -a,
                b: -b,
                c: -c,
                d: -d,
            }
        } else {
            Psl2 { a, b, c, d }
        }
    }

    fn small(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::norm(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Self::small(1, 0, 0, 1)
    }

    /// `x ↦ -1/x`, the order-2 element exchanging `0` and `∞`.
    pub fn s() -> Self {
        Self::small(0, -1, 1, 0)
    }

    /// `x ↦ x + 1`.
    pub fn t() -> Self {
        Self::small(1, 1, 0, 1)
    }

    /// `x ↦ x/(x + 1)`.
    pub fn l() -> Self {
        Self::small(1, 0, 1, 1)
    }

    /// Same as [`Psl2::t`]; the letter used in pattern words.
    pub fn r() -> Self {
        Self::t()
    }

    /// `x ↦ 1/(1 - x)`: order 3, cycling `0 → 1 → ∞ → 0`.
    pub fn omega() -> Self {
        Self::small(0, 1, -1, 1)
    }

    pub fn gen(g: Gen) -> Self {
        match g {
            Gen::S => Self::s(),
            Gen::T => Self::t(),
        }
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn mul(&self, o: &Psl2) -> Psl2 {
        Self::norm(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }

    pub fn inv(&self) -> Psl2 {
        Self::norm(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn pow(&self, e: i64) -> Psl2 {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut out = Psl2::identity();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    pub fn conj(&self, g: &Psl2) -> Psl2 {
        g.mul(self).mul(&g.inv())
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn is_identity(&self) -> bool {
        *self == Psl2::identity()
    }

    pub fn apply_proj(&self, x: &ProjRational) -> ProjRational {
        let p = &self.a * x.p() + &self.b * x.q();
        let q = &self.c * x.p() + &self.d * x.q();
        ProjRational::new(p, q).expect("invertible map")
    }

    /// Image of a finite surd; `None` if it goes to infinity.
    pub fn apply_surd(&self, x: &QuadSurd) -> Option<QuadSurd> {
        x.mobius(&self.a, &self.b, &self.c, &self.d)
    }

    /// Parses a word in `L`, `R` (and `S`, `T`, with `T = R`).
    pub fn from_word(w: &str) -> Result<Psl2> {
        let mut m = Psl2::identity();
        for ch in w.chars() {
            let g = match ch {
                'L' => Psl2::l(),
                'R' | 'T' => Psl2::t(),
                'S' => Psl2::s(),
                c if c.is_whitespace() => continue,
                c => return Err(Error::Input(format!("unknown generator {c:?} in word {w:?}"))),
            };
            m = m.mul(&g);
        }
        Ok(m)
    }

    /// Word `T^{q₀} S T^{q₁} S …` equal to this element.
    pub fn to_st_word(&self) -> Vec<(Gen, i64)> {
        let mut out: Vec<(Gen, i64)> = Vec::new();
        let mut m = self.clone();
        loop {
            if m.c.is_zero() {
                // m = ±[[1, b], [0, 1]]
                let e = (&m.b * &m.d).try_into().expect("word exponent fits i64");
                if e != 0 {
                    out.push((Gen::T, e));
                }
                break;
            }
            let q = m.a.div_floor(&m.c);
            let qi: i64 = (&q).try_into().expect("word exponent fits i64");
            if qi != 0 {
                out.push((Gen::T, qi));
            }
            let m1 = Psl2::t().pow(-qi).mul(&m);
            out.push((Gen::S, 1));
            m = Psl2::s().inv().mul(&m1);
        }
        out
    }

    pub fn from_st_word(w: &[(Gen, i64)]) -> Psl2 {
        w.iter()
            .fold(Psl2::identity(), |acc, &(g, e)| acc.mul(&Psl2::gen(g).pow(e)))
    }

    /// Fixed points of a hyperbolic element, attracting first.
    pub fn axis(&self) -> Result<(QuadSurd, QuadSurd)> {
        let tr = self.trace();
        let disc = &tr * &tr - BigInt::from(4);
        if !disc.is_positive() {
            return Err(Error::Input(format!("{self} is not hyperbolic (trace {tr})")));
        }
        if self.c.is_zero() {
            return Err(Error::Input(format!("{self} fixes infinity")));
        }
        let two_c = BigInt::from(2) * &self.c;
        let amd = &self.a - &self.d;
        // With trace > 0 the + root is attracting; negating the matrix flips the sign.
        let s: BigInt = if tr.is_positive() { BigInt::one() } else { -BigInt::one() };
        let att = QuadSurd::new(amd.clone(), s.clone(), two_c.clone(), disc.clone())?;
        let rep = QuadSurd::new(amd, -s, two_c, disc)?;
        Ok((att, rep))
    }
}

impl fmt::Display for Psl2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for Psl2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.entries().iter().map(|x| x.to_string()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Psl2 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = Vec::<String>::deserialize(d)?;
        if v.len() != 4 {
            return Err(D::Error::custom("expected four entries"));
        }
        let e: Vec<BigInt> = v
            .iter()
            .map(|s| s.parse().map_err(D::Error::custom))
            .collect::<std::result::Result<_, _>>()?;
        Psl2::new(e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()).map_err(D::Error::custom)
    }
}
