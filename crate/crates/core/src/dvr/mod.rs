//! Exact arithmetic over `R = Z_(p)` and its fraction field `K = Q`, plus the
//! lattice machinery (Hermite and Smith forms, saturation, flat quotients)
//! that the Hopf-algebra constructions are built on.
//!
//! Scalars are plain [`BigRational`]s. Membership in `R`, `K` or the residue
//! field `k = F_p` is a property of the container that holds them, recorded
//! as a [`Location`].

mod lattice;
mod matrix;
mod smith;

pub use lattice::{flat_quotient, kaplansky_ranks, saturate, FlatQuotient, Lattice};
pub use matrix::Matrix;
pub use smith::{smith_form, SmithForm};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exact element of `K = Q`. Whether it must also lie in `R` is decided by
/// the [`Location`] of the object holding it.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// `p`-adic valuation, with `+∞` for zero ordered above every integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

/// The base ring `R = Z_(p)`; the uniformizer is `p` itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    p: u64,
}

impl RingSpec {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(RingSpec { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn prime(&self) -> BigInt {
        BigInt::from(self.p)
    }

    /// Exponent of `p` in a nonzero integer.
    pub fn int_valuation(&self, n: &BigInt) -> i64 {
        debug_assert!(!n.is_zero());
        let p = self.prime();
        let mut n = n.abs();
        let mut v = 0;
        loop {
            let (q, r) = n.div_rem(&p);
            if !r.is_zero() {
                return v;
            }
            n = q;
            v += 1;
        }
    }

    pub fn valuation(&self, x: &Scalar) -> Valuation {
        if x.is_zero() {
            return Valuation::Infinity;
        }
        Valuation::Finite(self.int_valuation(x.numer()) - self.int_valuation(x.denom()))
    }

    /// `x ∈ R`, i.e. the reduced denominator is prime to `p`.
    pub fn is_integral(&self, x: &Scalar) -> bool {
        x.denom().mod_floor(&self.prime()) != BigInt::zero()
    }

    pub fn is_unit(&self, x: &Scalar) -> bool {
        self.valuation(x) == Valuation::Finite(0)
    }

    /// `p^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Scalar {
        let base = self.prime();
        let magnitude = num_traits::pow(base, k.unsigned_abs() as usize);
        if k >= 0 {
            Scalar::from_integer(magnitude)
        } else {
            Scalar::new(BigInt::one(), magnitude)
        }
    }

    /// `x / p^{v(x)}`; a unit of `R`. Zero maps to zero.
    pub fn unit_part(&self, x: &Scalar) -> Scalar {
        match self.valuation(x) {
            Valuation::Infinity => Scalar::zero(),
            Valuation::Finite(v) => x / self.pow(v),
        }
    }

    /// Image of an integral scalar in `F_p`, as an integer in `0..p`.
    pub fn reduce(&self, x: &Scalar) -> Result<Scalar> {
        if !self.is_integral(x) {
            return Err(Error::Location {
                value: x.to_string(),
                location: Location::Integral,
            });
        }
        let p = self.prime();
        let den_inv = mod_inverse(&x.denom().mod_floor(&p), &p);
        Ok(Scalar::from_integer((x.numer() * den_inv).mod_floor(&p)))
    }

    /// Canonical representative of the class of `x` in `K / p^v R`.
    ///
    /// The representative is `c / p^e` with `p^e` the `p`-part of the
    /// denominator of `x` and `0 <= c < p^{v+e}`; it is zero when `v(x) >= v`.
    pub fn residue_rep(&self, x: &Scalar, v: i64) -> Scalar {
        let vx = self.valuation(x);
        if vx >= Valuation::Finite(v) {
            return Scalar::zero();
        }
        let e = self.int_valuation(x.denom());
        let p = self.prime();
        let cofactor = x.denom() / num_traits::pow(p.clone(), e as usize);
        let exponent = (v + e) as usize;
        let modulus = num_traits::pow(p.clone(), exponent);
        let inv = mod_inverse(&cofactor.mod_floor(&modulus), &modulus);
        let c = (x.numer() * inv).mod_floor(&modulus);
        Scalar::new(c, num_traits::pow(p, e as usize))
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_({})", self.p)
    }
}

/// Where the entries of an object live: `R`, its fraction field `K`, or the
/// residue field `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Location {
    #[serde(rename = "R")]
    Integral,
    #[serde(rename = "K")]
    Fraction,
    #[serde(rename = "k")]
    Residue,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Location::Integral => "R",
            Location::Fraction => "K",
            Location::Residue => "k",
        })
    }
}

impl Location {
    pub fn contains(self, ring: &RingSpec, x: &Scalar) -> bool {
        match self {
            Location::Fraction => true,
            Location::Integral => ring.is_integral(x),
            Location::Residue => {
                x.is_integer() && !x.is_negative() && x.numer() < &ring.prime()
            }
        }
    }

    /// Equality with zero in this location (modulo `p` for the residue field).
    pub fn is_zero(self, ring: &RingSpec, x: &Scalar) -> bool {
        match self {
            Location::Residue => {
                ring.is_integral(x) && ring.valuation(x) >= Valuation::Finite(1)
            }
            _ => x.is_zero(),
        }
    }

    pub fn is_unit(self, ring: &RingSpec, x: &Scalar) -> bool {
        match self {
            Location::Integral => ring.is_unit(x),
            Location::Fraction => !x.is_zero(),
            Location::Residue => !self.is_zero(ring, x),
        }
    }

    /// Canonical form of a scalar already known to lie in this location.
    pub fn normalize(self, ring: &RingSpec, x: &Scalar) -> Scalar {
        match self {
            Location::Residue => ring.reduce(x).expect("residue entries are integral"),
            _ => x.clone(),
        }
    }

    /// `a / c` computed in this location; `c` must be a unit there.
    pub fn divide(self, ring: &RingSpec, a: &Scalar, c: &Scalar) -> Scalar {
        match self {
            Location::Residue => {
                let p = ring.prime();
                let c = ring.reduce(c).expect("integral divisor");
                let inv = mod_inverse(&c.to_integer(), &p);
                ring.reduce(&(a * Scalar::from_integer(inv))).expect("integral quotient")
            }
            _ => a / c,
        }
    }
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let egcd = a.extended_gcd(m);
    debug_assert!(egcd.gcd.is_one(), "{a} is not invertible modulo {m}");
    egcd.x.mod_floor(m)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Parses `"a"` or `"a/b"` into a reduced rational; rejects a zero denominator.
pub fn parse_scalar(s: &str) -> std::result::Result<Scalar, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| format!("invalid rational `{s}`"))?;
    let den: BigInt = den.parse().map_err(|_| format!("invalid rational `{s}`"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Scalar::new(num, den))
}

pub fn scalar_to_i64(x: &Scalar) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64) -> RingSpec {
        RingSpec::new(p).unwrap()
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(ring(3).valuation(&frac(9, 2)), Valuation::Finite(2));
        assert_eq!(ring(5).valuation(&int(0)), Valuation::Infinity);
        assert_eq!(ring(2).valuation(&frac(3, 4)), Valuation::Finite(-2));
        assert!(Valuation::Infinity > Valuation::Finite(i64::MAX));
    }

    #[test]
    fn primality_is_checked() {
        assert!(RingSpec::new(4).is_err());
        assert!(RingSpec::new(1).is_err());
        assert!(RingSpec::new(7).is_ok());
    }

    #[test]
    fn residue_representatives() {
        let r = ring(2);
        // 1/2 mod R is 1/2; 3/4 mod 2R is 3/4; 5 mod 4 is 1
        assert_eq!(r.residue_rep(&frac(1, 2), 0), frac(1, 2));
        assert_eq!(r.residue_rep(&int(5), 2), int(1));
        assert_eq!(r.residue_rep(&frac(1, 3), 1), int(1));
        assert_eq!(r.residue_rep(&int(8), 2), int(0));
        let x = frac(-7, 12);
        let rep = r.residue_rep(&x, 1);
        assert!(r.valuation(&(&x - &rep)) >= Valuation::Finite(1));
    }

    #[test]
    fn reduction_mod_p() {
        let r = ring(3);
        assert_eq!(r.reduce(&frac(1, 2)).unwrap(), int(2));
        assert_eq!(r.reduce(&int(-1)).unwrap(), int(2));
        assert!(r.reduce(&frac(1, 3)).is_err());
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!(parse_scalar("1/0").is_err());
        assert_eq!(parse_scalar("-6/4").unwrap(), frac(-3, 2));
        assert_eq!(parse_scalar("7").unwrap(), int(7));
        assert!(parse_scalar("x").is_err());
    }
}
