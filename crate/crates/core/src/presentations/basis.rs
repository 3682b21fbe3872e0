use serde::{Deserialize, Serialize};

use super::{GradedRingPresentation, PresentationError};
use crate::polyring::{monomials_of_degree, parse_polynomial, Monomial, VarSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    /// Free over the base ring (`Z` or `Z_(2)`).
    Free,
    /// An `F_2` summand.
    Torsion,
}

/// One summand `k[over] <generators>` of an additive basis description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisSummandSpec {
    pub kind: BasisKind,
    pub over: Vec<String>,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BasisMonomial {
    pub monomial: Monomial,
    pub kind: BasisKind,
}

impl GradedRingPresentation {
    /// Additive generators in one degree, from the declared description.
    pub fn additive_basis(&self, degree: i64) -> Result<Vec<BasisMonomial>, PresentationError> {
        let summands = self
            .spec
            .basis
            .as_ref()
            .ok_or_else(|| PresentationError::NoBasis(self.name.clone()))?;
        let mut out = Vec::new();
        for s in summands {
            let over_idx = s
                .over
                .iter()
                .map(|n| self.vars.require(n))
                .collect::<Result<Vec<_>, _>>()?;
            let sub = VarSet::new(over_idx.iter().map(|&i| (self.vars.name(i).to_string(), self.vars.degree(i))))?;
            for g in &s.generators {
                let gp = parse_polynomial(g, self.ring, &self.vars)?;
                let gm = match gp.leading_term() {
                    Some((m, _)) if gp.len() == 1 => m.clone(),
                    _ => {
                        return Err(PresentationError::Invalid(
                            self.name.clone(),
                            format!("basis generator `{g}` is not a monomial"),
                        ))
                    }
                };
                for m in monomials_of_degree(&sub, degree - gm.degree()) {
                    let mut exps = gm.exps().to_vec();
                    for (k, &i) in over_idx.iter().enumerate() {
                        exps[i] += m.exp(k);
                    }
                    out.push(BasisMonomial { monomial: Monomial::new(exps, &self.vars), kind: s.kind });
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::presentations::tests::g2_spec;
    use crate::presentations::Params;

    #[test]
    fn g2_low_degrees() {
        let g = Arc::new(GradedRingPresentation::from_spec(&g2_spec(), &Params::new()).unwrap());
        let b7 = g.additive_basis(7).unwrap();
        assert_eq!(b7.len(), 1);
        assert_eq!(b7[0].kind, BasisKind::Torsion);
        assert_eq!(b7[0].monomial.display(g.vars()), "c7");
        let b2 = g.additive_basis(2).unwrap();
        assert_eq!(b2.len(), 1);
        assert_eq!(b2[0].kind, BasisKind::Free);
        assert!(g.additive_basis(1).unwrap().is_empty());
        assert_eq!(g.additive_basis(0).unwrap().len(), 1);
    }

    #[test]
    fn g2_basis_matches_irreducible_monomials() {
        let g = GradedRingPresentation::from_spec(&g2_spec(), &Params::new()).unwrap();
        for d in 0..=20 {
            let mut basis: Vec<Monomial> = g.additive_basis(d).unwrap().into_iter().map(|b| b.monomial).collect();
            basis.sort();
            assert_eq!(basis, g.irreducible_monomials(d), "degree {d}");
        }
    }
}
