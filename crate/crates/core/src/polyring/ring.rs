use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::PolyError;

/// Every coefficient is stored as an exact rational; the ring decides which
/// rationals are admissible and how they are canonicalized.
pub type Coeff = BigRational;

/// The coefficient ring of a polynomial.
///
/// All four rings embed in (a quotient of) the rationals, so values share the
/// `BigRational` carrier:
/// * `Integers`: denominator 1.
/// * `Rationals`: any fraction in lowest terms.
/// * `PrimeField(p)`: integer residue in `[0, p)`.
/// * `LocalizedIntegers(p)`: fraction whose denominator is coprime to `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum CoefficientRing {
    Integers,
    Rationals,
    PrimeField(u64),
    LocalizedIntegers(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl CoefficientRing {
    pub fn prime_field(p: u64) -> Result<Self, PolyError> {
        if is_prime(p) {
            Ok(Self::PrimeField(p))
        } else {
            Err(PolyError::NotPrime(p))
        }
    }

    pub fn localized(p: u64) -> Result<Self, PolyError> {
        if is_prime(p) {
            Ok(Self::LocalizedIntegers(p))
        } else {
            Err(PolyError::NotPrime(p))
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, Self::Rationals | Self::PrimeField(_))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Self::PrimeField(p) => *p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> Coeff {
        Coeff::zero()
    }

    pub fn one(&self) -> Coeff {
        Coeff::one()
    }

    pub fn from_int(&self, n: i64) -> Coeff {
        self.reduce_unchecked(Coeff::from_integer(BigInt::from(n)))
    }

    /// Checks that `c` lies in this ring and returns its canonical
    /// representative. This is the only entry point for outside values.
    pub fn coerce(&self, c: &Coeff) -> Result<Coeff, PolyError> {
        match self {
            Self::Rationals => Ok(c.clone()),
            Self::Integers => {
                if c.is_integer() {
                    Ok(c.clone())
                } else {
                    Err(PolyError::NotInRing { value: c.to_string(), ring: *self })
                }
            }
            Self::LocalizedIntegers(p) => {
                if c.denom().is_multiple_of(&BigInt::from(*p)) {
                    Err(PolyError::NotInRing { value: c.to_string(), ring: *self })
                } else {
                    Ok(c.clone())
                }
            }
            Self::PrimeField(p) => {
                let p_big = BigInt::from(*p);
                if c.denom().is_multiple_of(&p_big) {
                    return Err(PolyError::NotInRing { value: c.to_string(), ring: *self });
                }
                let inv = mod_inverse(&c.denom().mod_floor(&p_big), &p_big)
                    .expect("denominator is a unit mod p");
                let r = (c.numer().mod_floor(&p_big) * inv).mod_floor(&p_big);
                Ok(Coeff::from_integer(r))
            }
        }
    }

    /// Canonicalizes a value already known to be in the ring (closure of
    /// ring operations). Only prime fields need work here.
    fn reduce_unchecked(&self, c: Coeff) -> Coeff {
        match self {
            Self::PrimeField(p) => {
                let p_big = BigInt::from(*p);
                debug_assert!(c.is_integer());
                Coeff::from_integer(c.numer().mod_floor(&p_big))
            }
            _ => c,
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce_unchecked(a + b)
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce_unchecked(a - b)
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.reduce_unchecked(a * b)
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        self.reduce_unchecked(-a)
    }

    pub fn is_unit(&self, a: &Coeff) -> bool {
        if a.is_zero() {
            return false;
        }
        match self {
            Self::Rationals | Self::PrimeField(_) => true,
            Self::Integers => a.abs().is_one(),
            Self::LocalizedIntegers(p) => !a.numer().is_multiple_of(&BigInt::from(*p)),
        }
    }

    /// Exact quotient `a / b` inside the ring, if it exists.
    pub fn divide(&self, a: &Coeff, b: &Coeff) -> Option<Coeff> {
        if b.is_zero() {
            return None;
        }
        match self {
            Self::PrimeField(p) => {
                let p_big = BigInt::from(*p);
                let inv = mod_inverse(b.numer(), &p_big)?;
                Some(Coeff::from_integer((a.numer() * inv).mod_floor(&p_big)))
            }
            _ => self.coerce(&(a / b)).ok(),
        }
    }

    pub fn inverse(&self, a: &Coeff) -> Option<Coeff> {
        self.divide(&Coeff::one(), a)
    }

    /// Residue of `c` modulo the integer `n`, as an integer in `[0, n)`.
    /// Requires the denominator of `c` to be invertible mod `n`; this is how
    /// 2-torsion coefficients such as 8/3 are read in `Z/2`.
    pub fn residue_mod(&self, c: &Coeff, n: u64) -> Result<Coeff, PolyError> {
        let n_big = BigInt::from(n);
        let inv = mod_inverse(&c.denom().mod_floor(&n_big), &n_big)
            .ok_or_else(|| PolyError::NotInRing { value: c.to_string(), ring: *self })?;
        Ok(Coeff::from_integer((c.numer().mod_floor(&n_big) * inv).mod_floor(&n_big)))
    }

    pub fn short_name(&self) -> String {
        self.to_string()
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Integers => write!(f, "Z"),
            Self::Rationals => write!(f, "Q"),
            Self::PrimeField(p) => write!(f, "F{p}"),
            Self::LocalizedIntegers(p) => write!(f, "Z({p})"),
        }
    }
}

impl FromStr for CoefficientRing {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "Z" => return Ok(Self::Integers),
            "Q" => return Ok(Self::Rationals),
            _ => {}
        }
        let parse_p = |t: &str| t.parse::<u64>().map_err(|_| PolyError::UnknownRing(s.to_string()));
        if let Some(rest) = s.strip_prefix('F') {
            return Self::prime_field(parse_p(rest)?);
        }
        if let Some(rest) = s.strip_prefix("Z(").and_then(|r| r.strip_suffix(')')) {
            return Self::localized(parse_p(rest)?);
        }
        Err(PolyError::UnknownRing(s.to_string()))
    }
}

impl TryFrom<String> for CoefficientRing {
    type Error = PolyError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<CoefficientRing> for String {
    fn from(r: CoefficientRing) -> Self {
        r.to_string()
    }
}

/// Small helper for reports: an exact rational as `a` or `a/b`.
pub fn format_coeff(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn coeff_to_i64(c: &Coeff) -> Option<i64> {
    if c.is_integer() {
        c.numer().to_i64()
    } else {
        None
    }
}

pub fn rational(n: i64, d: i64) -> Coeff {
    Coeff::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_residues_are_canonical() {
        let f5 = CoefficientRing::prime_field(5).unwrap();
        assert_eq!(f5.coerce(&rational(-1, 1)).unwrap(), rational(4, 1));
        assert_eq!(f5.coerce(&rational(1, 2)).unwrap(), rational(3, 1));
        assert!(f5.coerce(&rational(1, 5)).is_err());
        assert_eq!(f5.add(&rational(3, 1), &rational(4, 1)), rational(2, 1));
        assert_eq!(f5.inverse(&rational(2, 1)).unwrap(), rational(3, 1));
    }

    #[test]
    fn localized_rejects_even_denominators() {
        let z2 = CoefficientRing::localized(2).unwrap();
        assert!(z2.coerce(&rational(8, 3)).is_ok());
        assert!(z2.coerce(&rational(3, 8)).is_err());
        assert!(z2.is_unit(&rational(3, 5)));
        assert!(!z2.is_unit(&rational(2, 3)));
        assert_eq!(z2.divide(&rational(1, 1), &rational(2, 1)), None);
        assert_eq!(z2.divide(&rational(1, 1), &rational(3, 1)), Some(rational(1, 3)));
    }

    #[test]
    fn residues_clear_odd_denominators() {
        let z2 = CoefficientRing::localized(2).unwrap();
        assert_eq!(z2.residue_mod(&rational(8, 3), 2).unwrap(), rational(0, 1));
        assert_eq!(z2.residue_mod(&rational(5, 3), 2).unwrap(), rational(1, 1));
        assert_eq!(z2.residue_mod(&rational(-1, 1), 2).unwrap(), rational(1, 1));
    }

    #[test]
    fn ring_names_round_trip() {
        for r in [
            CoefficientRing::Integers,
            CoefficientRing::Rationals,
            CoefficientRing::PrimeField(2),
            CoefficientRing::LocalizedIntegers(2),
        ] {
            assert_eq!(r.to_string().parse::<CoefficientRing>().unwrap(), r);
        }
        assert!("F4".parse::<CoefficientRing>().is_err());
        assert!("R".parse::<CoefficientRing>().is_err());
    }

    #[test]
    fn integers_only_admit_integers() {
        let z = CoefficientRing::Integers;
        assert!(z.coerce(&rational(1, 2)).is_err());
        assert_eq!(z.divide(&rational(6, 1), &rational(3, 1)), Some(rational(2, 1)));
        assert_eq!(z.divide(&rational(6, 1), &rational(4, 1)), None);
    }
}
