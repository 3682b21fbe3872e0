//! Exact sparse multivariate polynomials over exchangeable coefficient rings.
//!
//! Polynomials are immutable values: a coefficient ring, a shared ordered
//! variable set (each variable carries a positive Chow degree) and a sparse
//! map from monomials to nonzero coefficients. Monomials are ordered by
//! weighted degree, then lexicographically with the first variable largest;
//! this order is fixed so that serialized output is reproducible.

mod json;
mod monomial;
mod parse;
mod poly;
mod ring;

use std::sync::Arc;

use thiserror::Error;

pub use json::{PolynomialJson, TermJson};
pub use monomial::{monomials_of_degree, Monomial};
pub use parse::{parse_polynomial, parse_polynomial_with};
pub use poly::Polynomial;
pub use ring::{coeff_to_i64, format_coeff, rational, CoefficientRing, Coeff};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unknown coefficient ring `{0}`")]
    UnknownRing(String),
    #[error("{value} is not an element of {ring}")]
    NotInRing { value: String, ring: CoefficientRing },
    #[error("operands live in different rings or variable sets ({0})")]
    Mismatch(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no image assigned to variable `{0}`")]
    MissingAssignment(String),
    #[error("negative exponent on `{0}` outside Laurent mode")]
    NegativeExponent(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not divisible")]
    NotDivisible,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid variable set: {0}")]
    BadVariables(String),
}

/// Ordered, named variables with their Chow degrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSet {
    names: Vec<String>,
    degrees: Vec<i64>,
}

impl VarSet {
    pub fn new<S: Into<String>>(
        vars: impl IntoIterator<Item = (S, i64)>,
    ) -> Result<Arc<Self>, PolyError> {
        let (names, degrees): (Vec<String>, Vec<i64>) =
            vars.into_iter().map(|(n, d)| (n.into(), d)).unzip();
        for (i, n) in names.iter().enumerate() {
            let ok_ident = n
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok_ident {
                return Err(PolyError::BadVariables(format!("`{n}` is not an identifier")));
            }
            if names[..i].contains(n) {
                return Err(PolyError::BadVariables(format!("duplicate variable `{n}`")));
            }
            if degrees[i] <= 0 {
                return Err(PolyError::BadVariables(format!("`{n}` must have positive degree")));
            }
        }
        Ok(Arc::new(Self { names, degrees }))
    }

    /// Variables that all have degree 1, as for a torus.
    pub fn uniform<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>, PolyError> {
        Self::new(names.into_iter().map(|n| (n, 1)))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize, PolyError> {
        self.index_of(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    /// The same variables with one removed.
    pub fn without(&self, i: usize) -> Arc<Self> {
        let mut names = self.names.clone();
        let mut degrees = self.degrees.clone();
        names.remove(i);
        degrees.remove(i);
        Arc::new(Self { names, degrees })
    }
}
