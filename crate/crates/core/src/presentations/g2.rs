//! Completeness of the relations `C2^2 = 4 C4`, `C2 C7 = 0`, `2 C7 = 0`.
//!
//! Given `P` vanishing under both detectors (rational torus restriction and
//! the mod-2 cycle map), produce `A, B, E` over `Z` with
//! `P = A (C2^2 - 4 C4) + B C2 C7 + E (2 C7)`:
//! 1. terms with `C7` go to `B` (if divisible by `C2`) or `E` (coefficient
//!    even, forced by the cycle map);
//! 2. the `C7`-free rest `R` is divided by `4 C4 - C2^2` over `Q` with
//!    respect to `C4`; the remainder lies in `Q[C2, C6]` and must vanish;
//! 3. `R` is divided by the monic (in `C2`) `C2^2 - 4 C4` over `Z`, giving
//!    `A` with zero remainder.

use serde::Serialize;
use thiserror::Error;

use crate::polyring::{CoefficientRing, Coeff, Monomial, PolyError, Polynomial};

/// Anything that maps a polynomial to a witness that must vanish.
pub trait Detector {
    fn detector_name(&self) -> String;
    fn detect(&self, p: &Polynomial) -> Result<Polynomial, String>;
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CompletenessError {
    #[error("P is not homogeneous")]
    NotHomogeneous,
    #[error("degree {0} exceeds the bound {1}")]
    DegreeTooLarge(i64, i64),
    #[error("P does not vanish: detector {detector} gives {image}")]
    DetectorNonzero { detector: String, image: String },
    #[error("detector {0} failed: {1}")]
    DetectorFailed(String, String),
    #[error("C7 term {0} has an odd coefficient and no C2 factor")]
    OddTorsionTerm(String),
    #[error("nonzero remainder after {stage}: {remainder}")]
    NonzeroRemainder { stage: &'static str, remainder: String },
    #[error("certificate does not expand to P")]
    BadCertificate,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `P = a (C2^2 - 4 C4) + b C2 C7 + e (2 C7)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct G2Certificate {
    pub a: Polynomial,
    pub b: Polynomial,
    pub e: Polynomial,
}

impl G2Certificate {
    pub fn expand(&self) -> Result<Polynomial, CompletenessError> {
        let v = self.a.vars().clone();
        let r = self.a.ring();
        let g1 = crate::polyring::parse_polynomial("c2^2 - 4*c4", r, &v)?;
        let g2 = crate::polyring::parse_polynomial("c2*c7", r, &v)?;
        let g3 = crate::polyring::parse_polynomial("2*c7", r, &v)?;
        Ok(&(&(&self.a * &g1) + &(&self.b * &g2)) + &(&self.e * &g3))
    }
}

/// Division of `p` by `d` with respect to the variable `var`, where the
/// leading coefficient of `d` in `var` is a unit constant: returns `(q, r)`
/// with `p = q d + r` and `deg_var r < deg_var d`.
pub fn divide_in_var(p: &Polynomial, d: &Polynomial, var: usize) -> Result<(Polynomial, Polynomial), CompletenessError> {
    let k = d.degree_in(var);
    let lead: Vec<(&Monomial, &Coeff)> = d.terms().filter(|(m, _)| m.exp(var) == k).collect();
    let (lm, lc) = match lead.as_slice() {
        [(m, c)] if m.total_degree() == k as i64 => ((*m).clone(), (*c).clone()),
        _ => return Err(PolyError::NotDivisible.into()),
    };
    let ring = p.ring();
    let inv = ring.inverse(&lc).filter(|_| ring.is_unit(&lc)).ok_or(PolyError::NotDivisible)?;
    let mut q = p.zero_like();
    let mut r = p.clone();
    loop {
        let e = r.degree_in(var);
        if r.is_zero() || e < k {
            break;
        }
        let mut part = p.zero_like();
        for (m, c) in r.terms().filter(|(m, _)| m.exp(var) == e) {
            part.add_term(lm.quotient_of(m).expect("var power divides"), &ring.mul(c, &inv));
        }
        r = &r - &(&part * d);
        q = &q + &part;
    }
    Ok((q, r))
}

pub fn completeness_check_g2(
    p: &Polynomial,
    max_degree: i64,
    detectors: &[&dyn Detector],
) -> Result<G2Certificate, CompletenessError> {
    let vars = p.vars().clone();
    let (i2, i4, i7) = (vars.require("c2")?, vars.require("c4")?, vars.require("c7")?);
    if !p.is_homogeneous() {
        return Err(CompletenessError::NotHomogeneous);
    }
    if let Some(d) = p.homogeneous_degree() {
        if d > max_degree {
            return Err(CompletenessError::DegreeTooLarge(d, max_degree));
        }
    }
    for det in detectors {
        let img = det.detect(p).map_err(|e| CompletenessError::DetectorFailed(det.detector_name(), e))?;
        if !img.is_zero() {
            return Err(CompletenessError::DetectorNonzero { detector: det.detector_name(), image: img.to_string() });
        }
    }
    let z = CoefficientRing::Integers;
    let p = p.change_ring(z)?;
    let c2c7 = Monomial::var(i2, &vars).mul(&Monomial::var(i7, &vars));
    let c7 = Monomial::var(i7, &vars);
    let mut b = p.zero_like();
    let mut e = p.zero_like();
    let mut rest = p.zero_like();
    for (m, c) in p.terms() {
        if m.exp(i7) == 0 {
            rest.add_term(m.clone(), c);
        } else if let Some(q) = c2c7.quotient_of(m) {
            b.add_term(q, c);
        } else {
            let half = c / Coeff::from_integer(2.into());
            if !half.is_integer() {
                return Err(CompletenessError::OddTorsionTerm(m.display(&vars)));
            }
            e.add_term(c7.quotient_of(m).expect("contains c7"), &half);
        }
    }
    // Stage 2: eliminate C4 over Q.
    let q_ring = CoefficientRing::Rationals;
    let rq = rest.change_ring(q_ring)?;
    let d4 = crate::polyring::parse_polynomial("4*c4 - c2^2", q_ring, &vars)?;
    let (_, r1) = divide_in_var(&rq, &d4, i4)?;
    if !r1.is_zero() {
        return Err(CompletenessError::NonzeroRemainder { stage: "division by 4C4 - C2^2", remainder: r1.to_string() });
    }
    // Stage 3: monic division in C2 over Z.
    let d2 = crate::polyring::parse_polynomial("c2^2 - 4*c4", z, &vars)?;
    let (a, r2) = divide_in_var(&rest, &d2, i2)?;
    if !r2.is_zero() {
        return Err(CompletenessError::NonzeroRemainder { stage: "division by C2^2 - 4C4", remainder: r2.to_string() });
    }
    let cert = G2Certificate { a, b, e };
    if cert.expand()? != p {
        return Err(CompletenessError::BadCertificate);
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, VarSet};

    fn g2(text: &str) -> Polynomial {
        let v = VarSet::new([("c2", 2), ("c4", 4), ("c6", 6), ("c7", 7)]).unwrap();
        parse_polynomial(text, CoefficientRing::Integers, &v).unwrap()
    }

    #[test]
    fn generator_certificate() {
        let c = completeness_check_g2(&g2("c2^2 - 4*c4"), 20, &[]).unwrap();
        assert_eq!(c.a, g2("1"));
        assert!(c.b.is_zero() && c.e.is_zero());
    }

    #[test]
    fn single_division_step() {
        let c = completeness_check_g2(&g2("c2^3 - 4*c2*c4"), 20, &[]).unwrap();
        assert_eq!(c.a, g2("c2"));
    }

    #[test]
    fn torsion_terms() {
        let c = completeness_check_g2(&g2("2*c2*c7"), 20, &[]).unwrap();
        assert_eq!(c.b, g2("2"));
        let c = completeness_check_g2(&g2("6*c4*c7"), 20, &[]).unwrap();
        assert_eq!(c.e, g2("3*c4"));
        assert!(matches!(
            completeness_check_g2(&g2("c4*c7"), 20, &[]),
            Err(CompletenessError::OddTorsionTerm(_))
        ));
    }

    #[test]
    fn non_members_leave_remainders() {
        assert!(completeness_check_g2(&g2("c4"), 20, &[]).is_err());
        assert!(completeness_check_g2(&g2("c2^2"), 20, &[]).is_err());
        assert!(matches!(
            completeness_check_g2(&g2("c2^12"), 20, &[]),
            Err(CompletenessError::DegreeTooLarge(24, 20))
        ));
    }

    #[test]
    fn divide_in_var_round_trip() {
        let p = g2("c2^4 + 3*c2^2*c6 + c4*c6");
        let d = g2("c2^2 - 4*c4");
        let (q, r) = divide_in_var(&p, &d, 0).unwrap();
        assert_eq!(&(&q * &d) + &r, p);
        assert!(r.degree_in(0) < 2);
    }
}
