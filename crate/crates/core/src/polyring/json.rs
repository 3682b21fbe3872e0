use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{CoefficientRing, Coeff, PolyError, Polynomial, VarSet};

/// Serialized form of a polynomial. Integers are strings so that values of
/// any size survive JSON readers that use doubles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub ring: CoefficientRing,
    #[serde(default)]
    pub laurent: bool,
    pub variables: Vec<String>,
    pub degrees: Vec<i64>,
    /// Leading term first.
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<i32>,
    pub num: String,
    #[serde(default = "one_string")]
    pub den: String,
}

fn one_string() -> String {
    "1".to_string()
}

impl From<&Polynomial> for PolynomialJson {
    fn from(p: &Polynomial) -> Self {
        Self {
            ring: p.ring(),
            laurent: p.is_laurent(),
            variables: p.vars().names().to_vec(),
            degrees: p.vars().degrees().to_vec(),
            terms: p
                .terms()
                .rev()
                .map(|(m, c)| TermJson {
                    exps: m.exps().to_vec(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }
}

impl PolynomialJson {
    pub fn to_polynomial(&self) -> Result<Polynomial, PolyError> {
        if self.variables.len() != self.degrees.len() {
            return Err(PolyError::BadVariables("variables and degrees differ in length".into()));
        }
        let vars: Arc<VarSet> = VarSet::new(self.variables.iter().cloned().zip(self.degrees.iter().copied()))?;
        self.to_polynomial_in(&vars)
    }

    /// Reads the polynomial into an existing variable set, which must match
    /// the serialized one exactly.
    pub fn to_polynomial_in(&self, vars: &Arc<VarSet>) -> Result<Polynomial, PolyError> {
        if vars.names() != self.variables.as_slice() || vars.degrees() != self.degrees.as_slice() {
            return Err(PolyError::Mismatch("serialized variables differ".into()));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let bad = |s: &str| PolyError::Parse { pos: 0, msg: format!("bad integer `{s}`") };
                let n: BigInt = t.num.parse().map_err(|_| bad(&t.num))?;
                let d: BigInt = t.den.parse().map_err(|_| bad(&t.den))?;
                if d == BigInt::from(0) {
                    return Err(PolyError::DivisionByZero);
                }
                Ok((t.exps.clone(), Coeff::new(n, d)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Polynomial::from_terms(self.ring, vars.clone(), self.laurent, terms)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolynomialJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        PolynomialJson::deserialize(d)?.to_polynomial().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_polynomial;

    #[test]
    fn json_round_trip() {
        let v = VarSet::new([("c2", 2), ("c4", 4)]).unwrap();
        let r = CoefficientRing::LocalizedIntegers(2);
        let p = parse_polynomial("8/3*c2^2 - 4*c4 + 1", r, &v).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"ring\":\"Z(2)\""));
        let q: Polynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn rejects_out_of_ring_coefficients() {
        let s = r#"{"ring":"Z","variables":["x"],"degrees":[1],"terms":[{"exps":[1],"num":"1","den":"2"}]}"#;
        assert!(serde_json::from_str::<Polynomial>(s).is_err());
        let s = r#"{"ring":"Q","variables":["x"],"degrees":[1],"terms":[{"exps":[-1],"num":"1"}]}"#;
        assert!(serde_json::from_str::<Polynomial>(s).is_err());
    }
}
