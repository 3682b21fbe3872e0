//! Finite matrix groups acting linearly on polynomial rings, and their
//! invariants degree by degree.

pub mod dickson;
pub mod space;

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::catalog::{Catalog, CatalogError, GroupSpec};
use crate::polyring::{CoefficientRing, Coeff, Monomial, PolyError, Polynomial, VarSet};

pub use dickson::{degree_doubling_check, dickson_invariants, DicksonInvariant, DoublingReport};
pub use space::{
    hilbert_coefficients, invariant_space, molien_coefficients, verify_invariant_ring, DegreeComparison,
    InvariantRingReport, InvariantSpace,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("matrix {0} is not {1}x{1}")]
    BadShape(usize, usize),
    #[error("matrix {0} is not invertible over {1}")]
    Singular(usize, CoefficientRing),
    #[error("{0} requires a field")]
    NotAField(CoefficientRing),
    #[error("closure exceeded {0} elements")]
    TooLarge(usize),
    #[error("group has {found} elements, expected {expected}")]
    WrongOrder { found: usize, expected: usize },
    #[error("Molien series needs characteristic 0")]
    ModularMolien,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl From<CatalogError> for InvariantError {
    fn from(e: CatalogError) -> Self {
        InvariantError::Poly(PolyError::Mismatch(e.to_string()))
    }
}

pub type Mat = Vec<Vec<Coeff>>;

fn mat_mul(f: CoefficientRing, a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(Coeff::zero(), |acc, k| f.add(&acc, &f.mul(&a[i][k], &b[k][j]))))
                .collect()
        })
        .collect()
}

fn identity(f: CoefficientRing, n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect()
}

/// A finite group given by matrices `M`, acting by `x_i -> sum_j M[i][j] x_j`.
#[derive(Clone, Debug)]
pub struct GroupAction {
    name: String,
    field: CoefficientRing,
    vars: Arc<VarSet>,
    generators: Vec<Mat>,
    elements: Vec<Mat>,
}

const MAX_ORDER: usize = 100_000;

impl GroupAction {
    /// Closes the generators under multiplication.
    pub fn from_generators(
        name: &str,
        field: CoefficientRing,
        vars: Arc<VarSet>,
        generators: &[Vec<Vec<i64>>],
    ) -> Result<Self, InvariantError> {
        if !field.is_field() {
            return Err(InvariantError::NotAField(field));
        }
        let n = vars.len();
        let mut gens = Vec::new();
        for (k, g) in generators.iter().enumerate() {
            if g.len() != n || g.iter().any(|r| r.len() != n) {
                return Err(InvariantError::BadShape(k, n));
            }
            let m: Mat = g.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect();
            if crate::linalg::Matrix::from_rows(field, n, m.clone()).rank() < n {
                return Err(InvariantError::Singular(k, field));
            }
            gens.push(m);
        }
        let id = identity(field, n);
        let mut seen: BTreeSet<Mat> = BTreeSet::new();
        seen.insert(id.clone());
        let mut elements = vec![id];
        let mut i = 0;
        while i < elements.len() {
            for g in &gens {
                let p = mat_mul(field, &elements[i], g);
                if seen.insert(p.clone()) {
                    elements.push(p);
                    if elements.len() > MAX_ORDER {
                        return Err(InvariantError::TooLarge(MAX_ORDER));
                    }
                }
            }
            i += 1;
        }
        Ok(Self { name: name.into(), field, vars, generators: gens, elements })
    }

    /// Builds a catalog group and checks its declared order.
    pub fn from_catalog(catalog: &Catalog, name: &str) -> Result<Self, InvariantError> {
        let spec: &GroupSpec = catalog.group(name)?;
        let vars = catalog.group_vars(spec)?;
        let g = Self::from_generators(&spec.name, spec.field, vars, &spec.generators)?;
        if g.order() != spec.order {
            return Err(InvariantError::WrongOrder { found: g.order(), expected: spec.order });
        }
        Ok(g)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> CoefficientRing {
        self.field
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Mat] {
        &self.generators
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    /// Products of elements stay in the group.
    pub fn is_closed(&self) -> bool {
        let set: BTreeSet<&Mat> = self.elements.iter().collect();
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| set.contains(&mat_mul(self.field, a, b))))
    }

    /// Images of the variables under `m`.
    pub fn variable_images(&self, m: &Mat) -> Vec<Polynomial> {
        m.iter()
            .map(|row| {
                let mut p = Polynomial::zero(self.field, self.vars.clone());
                for (j, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        p.add_term(Monomial::var(j, &self.vars), c);
                    }
                }
                p
            })
            .collect()
    }

    pub fn act(&self, m: &Mat, p: &Polynomial) -> Result<Polynomial, InvariantError> {
        let p = p.embed(&self.vars)?.change_ring(self.field)?;
        Ok(p.substitute_into(&self.variable_images(m), self.field, self.vars.clone())?)
    }

    /// Fixed by the generators (hence by the group).
    pub fn is_invariant(&self, p: &Polynomial) -> Result<bool, InvariantError> {
        let q = p.embed(&self.vars)?.change_ring(self.field)?;
        for g in &self.generators {
            if self.act(g, &q)? != q {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Fixed by every element, checked one by one.
    pub fn is_invariant_full_sweep(&self, p: &Polynomial) -> Result<bool, InvariantError> {
        let q = p.embed(&self.vars)?.change_ring(self.field)?;
        for g in &self.elements {
            if self.act(g, &q)? != q {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_g2_has_order_12() {
        let c = Catalog::builtin();
        let w = GroupAction::from_catalog(&c, "W_G2").unwrap();
        assert_eq!(w.order(), 12);
        assert!(w.is_closed());
    }

    #[test]
    fn gl3_f2_has_order_168() {
        let c = Catalog::builtin();
        let g = GroupAction::from_catalog(&c, "GL3_F2").unwrap();
        assert_eq!(g.order(), 168);
    }

    #[test]
    fn singular_generator_is_rejected() {
        let v = VarSet::uniform(["a", "b"]).unwrap();
        let r = GroupAction::from_generators("s", CoefficientRing::PrimeField(2), v, &[vec![vec![1, 1], vec![1, 1]]]);
        assert!(matches!(r, Err(InvariantError::Singular(0, _))));
    }

    #[test]
    fn swap_action() {
        let v = VarSet::uniform(["a", "b"]).unwrap();
        let g = GroupAction::from_generators("s2", CoefficientRing::Rationals, v.clone(), &[vec![vec![0, 1], vec![1, 0]]])
            .unwrap();
        assert_eq!(g.order(), 2);
        let p = crate::polyring::parse_polynomial("a^2*b + a*b^2", CoefficientRing::Rationals, &v).unwrap();
        assert!(g.is_invariant(&p).unwrap());
        let q = crate::polyring::parse_polynomial("a^2*b", CoefficientRing::Rationals, &v).unwrap();
        assert!(!g.is_invariant(&q).unwrap());
    }
}
