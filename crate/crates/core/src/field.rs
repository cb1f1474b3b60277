//! Exact coefficient fields.
//!
//! Everything downstream is generic over [`Field`]. Two implementations ship:
//! prime fields `F_p` with a runtime modulus, and the rationals backed by
//! arbitrary precision integers. A field value carries whatever context its
//! arithmetic needs (the modulus), so it is passed alongside the elements.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::Ratio;
use num::{BigRational, One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default modulus used when no field is specified.
pub const DEFAULT_PRIME: u32 = 32003;

/// Small exact rational used for presentation coefficients.
pub type Coeff = Ratio<i64>;

pub trait Field: Clone + PartialEq + Send + Sync + fmt::Debug + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn spec(&self) -> FieldSpec;
    fn format(&self, a: &Self::Elem) -> String;

    /// `acc - b * c`, the elimination kernel.
    fn sub_mul(&self, acc: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.sub(acc, &self.mul(b, c))
    }

    fn from_coeff(&self, c: &Coeff) -> Result<Self::Elem> {
        let den = self.from_i64(*c.denom());
        if self.is_zero(&den) {
            return Err(Error::Field(format!(
                "denominator {} vanishes in {}",
                c.denom(),
                self.spec()
            )));
        }
        Ok(self.mul(&self.from_i64(*c.numer()), &self.inv(&den)))
    }

    /// Every element of the field when it is small enough to list.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Roots in the field of `c[0] + c[1] x + ...`, possibly incomplete when
    /// an exhaustive search is out of reach.
    fn roots(&self, coeffs: &[Self::Elem]) -> Vec<Self::Elem>;
}

fn eval<F: Field>(f: &F, coeffs: &[F::Elem], x: &F::Elem) -> F::Elem {
    coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

/// Largest prime for which root finding is exhaustive.
const ROOT_SEARCH_LIMIT: u32 = 1 << 20;

/// The prime field of order `p`; elements are canonical residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        Ok(Self { p })
    }

    pub fn order(&self) -> u32 {
        self.p
    }

    fn pow(&self, mut base: u32, mut exp: u32) -> u32 {
        let p = self.p as u64;
        let mut acc = 1u64;
        let mut b = base as u64 % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            exp >>= 1;
        }
        base = acc as u32;
        base
    }
}

impl Field for PrimeField {
    type Elem = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1 % self.p
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a + *b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if *a >= *b {
            *a - *b
        } else {
            *a + self.p - *b
        }
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    fn from_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }
    #[inline]
    fn sub_mul(&self, acc: &u32, b: &u32, c: &u32) -> u32 {
        let prod = ((*b as u64 * *c as u64) % self.p as u64) as u32;
        self.sub(acc, &prod)
    }
    fn elements(&self) -> Option<Vec<u32>> {
        (self.p <= 64).then(|| (0..self.p).collect())
    }
    fn roots(&self, coeffs: &[u32]) -> Vec<u32> {
        if coeffs.iter().all(|c| *c == 0) || self.p > ROOT_SEARCH_LIMIT {
            return Vec::new();
        }
        (0..self.p).filter(|x| eval(self, coeffs, x) == 0).collect()
    }
}

/// The field of rational numbers.
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
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-50..=50))
    }
    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    /// Rational root test over small divisors of the cleared polynomial.
    fn roots(&self, coeffs: &[BigRational]) -> Vec<BigRational> {
        let Some(top) = coeffs.iter().rposition(|c| !c.is_zero()) else {
            return Vec::new();
        };
        let coeffs = &coeffs[..=top];
        let mut out = Vec::new();
        let low = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if low > 0 {
            out.push(self.zero());
        }
        let reduced = &coeffs[low..];
        let lcm = reduced.iter().fold(BigInt::one(), |acc, c| num::integer::lcm(acc, c.denom().clone()));
        let ints: Vec<BigInt> = reduced.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        let (Some(a0), Some(an)) = (ints[0].to_i64(), ints.last().unwrap().to_i64()) else {
            return out;
        };
        let divisors = |n: i64| -> Vec<i64> {
            let n = n.unsigned_abs();
            if n > 1_000_000 {
                return Vec::new();
            }
            (1..=n).filter(|d| n.is_multiple_of(*d)).map(|d| d as i64).collect()
        };
        for p in divisors(a0) {
            for q in divisors(an) {
                for sign in [1, -1] {
                    let x = BigRational::new(BigInt::from(sign * p), BigInt::from(q));
                    if eval(self, reduced, &x).is_zero() && !out.contains(&x) {
                        out.push(x);
                    }
                }
            }
        }
        out
    }
}

/// Which field an algebra is defined over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Prime(u32),
    Rationals,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }
}

impl FieldSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            FieldSpec::Prime(p) => PrimeField::new(*p).map(|_| ()),
            FieldSpec::Rationals => Ok(()),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
            FieldSpec::Rationals => write!(f, "qq"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "qq" || s == "q" || s == "rationals" {
            return Ok(FieldSpec::Rationals);
        }
        let digits = s
            .strip_prefix("fp:")
            .ok_or_else(|| Error::Field(format!("unknown field `{s}`")))?;
        let p: u32 = digits
            .parse()
            .map_err(|_| Error::Field(format!("bad modulus `{digits}`")))?;
        let spec = FieldSpec::Prime(p);
        spec.validate()?;
        Ok(spec)
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Parse `n` or `n/d` into a reduced coefficient.
pub fn parse_coeff(s: &str) -> Result<Coeff> {
    let bad = || Error::Field(format!("bad coefficient `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Coeff::new(n, d))
        }
        None => Ok(Coeff::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

pub fn format_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Integer value of a rational if it is one and fits.
pub fn rational_to_i64(a: &BigRational) -> Option<i64> {
    if a.is_integer() {
        a.numer().to_i64()
    } else {
        None
    }
}
