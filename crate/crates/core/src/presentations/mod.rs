//! Finitely presented graded commutative rings with 2-torsion generators.
//!
//! A presentation is read from relations: a relation `2*g` for a generator
//! `g` declares `g` as 2-torsion (every monomial containing `g` then has an
//! `F_2` coefficient); every other relation is oriented into a rewrite rule
//! whose left side is its largest monomial under the rewrite order
//! (weighted degree, then number of "heavy" generator factors, then
//! graded-lex). The order is multiplicative and has finitely many monomials
//! per degree, so rewriting terminates.

mod basis;
pub mod g2;
pub mod membership;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyring::{
    parse_polynomial_with, CoefficientRing, Coeff, Monomial, PolyError, Polynomial, VarSet,
};

pub use basis::{BasisKind, BasisMonomial, BasisSummandSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("presentation `{0}`: relation `{1}` is not homogeneous")]
    NotHomogeneous(String, String),
    #[error("presentation `{0}`: leading coefficient of relation `{1}` is not a unit")]
    NonUnitLeading(String, String),
    #[error("presentation `{0}` needs a value for parameter `{1}`")]
    MissingParameter(String, String),
    #[error("presentation `{0}` has no declared additive basis")]
    NoBasis(String),
    #[error("presentation `{0}`: {1}")]
    Invalid(String, String),
    #[error("element does not belong to presentation `{0}`")]
    WrongPresentation(String),
    #[error("{0} requires field coefficients")]
    NotAField(CoefficientRing),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: i64,
    #[serde(default)]
    pub heavy: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSpec {
    pub id: String,
    pub text: String,
    #[serde(default)]
    pub anchor: String,
}

/// Serialized presentation as stored in the catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationSpec {
    pub name: String,
    pub ring: CoefficientRing,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub parameters: Vec<String>,
    #[serde(default)]
    pub relations: Vec<RelationSpec>,
    #[serde(default)]
    pub basis: Option<Vec<BasisSummandSpec>>,
    /// Set for polynomial rings of a torus.
    #[serde(default)]
    pub coordinate_system: Option<String>,
}

/// Scalar parameter values, e.g. `delta1 -> 0`.
pub type Params = BTreeMap<String, Coeff>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub id: String,
    pub anchor: String,
    pub poly: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub relation: String,
    pub lhs: Monomial,
    pub rhs: Polynomial,
}

#[derive(Debug)]
pub struct GradedRingPresentation {
    name: String,
    spec: PresentationSpec,
    params: Params,
    ring: CoefficientRing,
    vars: Arc<VarSet>,
    heavy: Vec<bool>,
    torsion: Vec<bool>,
    relations: Vec<Relation>,
    rules: Vec<RewriteRule>,
    memo: Mutex<HashMap<Monomial, Polynomial>>,
}

impl GradedRingPresentation {
    pub fn from_spec(spec: &PresentationSpec, params: &Params) -> Result<Self, PresentationError> {
        let mut used = Params::new();
        for p in &spec.parameters {
            let v = params
                .get(p)
                .ok_or_else(|| PresentationError::MissingParameter(spec.name.clone(), p.clone()))?;
            used.insert(p.clone(), v.clone());
        }
        let name = if used.is_empty() {
            spec.name.clone()
        } else {
            let inst: Vec<String> = used.iter().map(|(k, v)| format!("{k}={v}")).collect();
            format!("{}[{}]", spec.name, inst.join(","))
        };
        let vars = VarSet::new(spec.generators.iter().map(|g| (g.name.clone(), g.degree)))?;
        let heavy = spec.generators.iter().map(|g| g.heavy).collect();
        let mut pres = Self {
            name,
            spec: spec.clone(),
            params: used,
            ring: spec.ring,
            vars,
            heavy,
            torsion: vec![false; spec.generators.len()],
            relations: Vec::new(),
            rules: Vec::new(),
            memo: Mutex::new(HashMap::new()),
        };
        for r in &spec.relations {
            let poly = parse_polynomial_with(&r.text, pres.ring, &pres.vars, &pres.params)?;
            if !poly.is_homogeneous() {
                return Err(PresentationError::NotHomogeneous(pres.name.clone(), r.id.clone()));
            }
            pres.relations.push(Relation { id: r.id.clone(), anchor: r.anchor.clone(), poly });
        }
        for r in &pres.relations {
            if let Some(g) = pres.torsion_declaration(&r.poly) {
                pres.torsion[g] = true;
            }
        }
        let mut rules = Vec::new();
        for r in &pres.relations {
            if r.poly.is_zero() || pres.torsion_declaration(&r.poly).is_some() {
                continue;
            }
            let (lhs, lc) = r
                .poly
                .terms()
                .max_by(|a, b| pres.rewrite_cmp(a.0, b.0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .expect("nonzero relation");
            let inv = pres
                .ring
                .inverse(&lc)
                .filter(|_| pres.ring.is_unit(&lc))
                .ok_or_else(|| PresentationError::NonUnitLeading(pres.name.clone(), r.id.clone()))?;
            let mut rhs = r.poly.scale_unchecked(&pres.ring.neg(&inv));
            rhs.remove_term(&lhs);
            rules.push(RewriteRule { relation: r.id.clone(), lhs, rhs });
        }
        pres.rules = rules;
        for r in &pres.relations {
            if !pres.normal_form(&r.poly).is_zero() {
                return Err(PresentationError::Invalid(
                    pres.name.clone(),
                    format!("relation {} does not reduce to zero", r.id),
                ));
            }
        }
        Ok(pres)
    }

    /// `Some(g)` when `p = 2 * g` for a generator `g`.
    fn torsion_declaration(&self, p: &Polynomial) -> Option<usize> {
        if p.len() != 1 {
            return None;
        }
        let (m, c) = p.leading_term()?;
        if c != &Coeff::from_integer(2.into()) || m.total_degree() != 1 {
            return None;
        }
        m.exps().iter().position(|&e| e == 1)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn spec(&self) -> &PresentationSpec {
        &self.spec
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, id: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.id == id)
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn coordinate_system(&self) -> Option<&str> {
        self.spec.coordinate_system.as_deref()
    }

    pub fn is_torsion_generator(&self, i: usize) -> bool {
        self.torsion[i]
    }

    /// A monomial is 2-torsion when it contains a torsion generator.
    pub fn is_torsion_monomial(&self, m: &Monomial) -> bool {
        m.exps().iter().zip(&self.torsion).any(|(&e, &t)| t && e > 0)
    }

    fn heavy_count(&self, m: &Monomial) -> i64 {
        m.exps().iter().zip(&self.heavy).filter(|(_, &h)| h).map(|(&e, _)| e as i64).sum()
    }

    /// The rewrite order.
    pub fn rewrite_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| self.heavy_count(a).cmp(&self.heavy_count(b)))
            .then_with(|| a.cmp(b))
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.ring, self.vars.clone())
    }

    pub fn generator(&self, name: &str) -> Result<Polynomial, PresentationError> {
        Ok(Polynomial::var(self.ring, self.vars.clone(), name)?)
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial, PresentationError> {
        Ok(parse_polynomial_with(text, self.ring, &self.vars, &self.params)?)
    }

    pub fn require_own(&self, p: &Polynomial) -> Result<(), PresentationError> {
        if p.ring() == self.ring && p.vars() == &self.vars {
            Ok(())
        } else {
            Err(PresentationError::WrongPresentation(self.name.clone()))
        }
    }

    /// Fully rewritten form of `m`, before torsion coefficients are reduced.
    fn reduce_monomial(&self, m: &Monomial) -> Polynomial {
        if let Some(p) = self.memo.lock().expect("memo lock").get(m) {
            return p.clone();
        }
        let rule = self.rules.iter().find(|r| r.lhs.divides(m));
        let out = match rule {
            None => Polynomial::monomial(self.ring, self.vars.clone(), m.clone(), Coeff::one())
                .expect("unit coefficient"),
            Some(r) => {
                let q = r.lhs.quotient_of(m).expect("lhs divides m");
                let mut acc = self.zero();
                for (t, c) in r.rhs.terms() {
                    let sub = self.reduce_monomial(&q.mul(t));
                    acc = &acc + &sub.scale_unchecked(c);
                }
                acc
            }
        };
        self.memo.lock().expect("memo lock").insert(m.clone(), out.clone());
        out
    }

    /// Replaces coefficients of torsion monomials by their residue mod 2.
    fn reduce_torsion(&self, p: &Polynomial) -> Polynomial {
        if !self.torsion.iter().any(|&t| t) {
            return p.clone();
        }
        p.map_terms(|m, c| {
            if self.is_torsion_monomial(m) {
                let r = self.ring.residue_mod(c, 2).expect("2-local coefficient on a torsion monomial");
                (!r.is_zero()).then_some(r)
            } else {
                Some(c.clone())
            }
        })
    }

    /// Canonical representative: no rewrite rule applies and torsion
    /// monomials carry coefficient 1.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        let mut acc = self.zero();
        for (m, c) in p.terms() {
            acc = &acc + &self.reduce_monomial(m).scale_unchecked(c);
        }
        self.reduce_torsion(&acc)
    }

    pub fn is_normal(&self, p: &Polynomial) -> bool {
        &self.normal_form(p) == p
    }

    pub fn element(self: &Arc<Self>, p: Polynomial) -> Result<RingElement, PresentationError> {
        self.require_own(&p)?;
        Ok(RingElement { value: self.normal_form(&p), pres: self.clone() })
    }

    pub fn element_from_text(self: &Arc<Self>, text: &str) -> Result<RingElement, PresentationError> {
        let p = self.parse(text)?;
        self.element(p)
    }

    /// Monomials of the given degree to which no rule applies.
    pub fn irreducible_monomials(&self, degree: i64) -> Vec<Monomial> {
        crate::polyring::monomials_of_degree(&self.vars, degree)
            .into_iter()
            .filter(|m| !self.rules.iter().any(|r| r.lhs.divides(m)))
            .collect()
    }

    /// Critical pairs of the rewrite system, each with both reductions.
    ///
    /// Two kinds: overlaps of two left sides, and a torsion generator
    /// dividing a left side (then `2 * rhs` must vanish).
    pub fn critical_pairs(&self) -> Vec<CriticalPair> {
        let mut out = Vec::new();
        for (i, r1) in self.rules.iter().enumerate() {
            for r2 in &self.rules[i + 1..] {
                if r1.lhs.coprime(&r2.lhs) {
                    continue;
                }
                let l = r1.lhs.lcm(&r2.lhs, &self.vars);
                let q1 = r1.lhs.quotient_of(&l).expect("divides lcm");
                let q2 = r2.lhs.quotient_of(&l).expect("divides lcm");
                let left = self.normal_form(&r1.rhs.mul_term(&q1, &Coeff::one()));
                let right = self.normal_form(&r2.rhs.mul_term(&q2, &Coeff::one()));
                out.push(CriticalPair {
                    rules: (r1.relation.clone(), r2.relation.clone()),
                    overlap: Polynomial::monomial(self.ring, self.vars.clone(), l, Coeff::one())
                        .expect("unit"),
                    left,
                    right,
                });
            }
        }
        for (g, _) in self.torsion.iter().enumerate().filter(|(_, &t)| t) {
            let gm = Monomial::var(g, &self.vars);
            for r in self.rules.iter().filter(|r| gm.divides(&r.lhs)) {
                out.push(CriticalPair {
                    rules: (format!("2*{}", self.vars.name(g)), r.relation.clone()),
                    overlap: Polynomial::monomial(self.ring, self.vars.clone(), r.lhs.clone(), Coeff::from_integer(2.into()))
                        .expect("2 lies in the ring"),
                    left: self.zero(),
                    right: self.normal_form(&r.rhs.scale_int(2)),
                });
            }
        }
        out
    }

    pub fn is_confluent(&self) -> bool {
        self.critical_pairs().iter().all(CriticalPair::resolves)
    }
}

#[derive(Clone, Debug)]
pub struct CriticalPair {
    pub rules: (String, String),
    pub overlap: Polynomial,
    pub left: Polynomial,
    pub right: Polynomial,
}

impl CriticalPair {
    pub fn resolves(&self) -> bool {
        self.left == self.right
    }
}

/// An element of a presented ring, always kept in normal form.
#[derive(Clone, Debug)]
pub struct RingElement {
    pres: Arc<GradedRingPresentation>,
    value: Polynomial,
}

impl RingElement {
    pub fn presentation(&self) -> &Arc<GradedRingPresentation> {
        &self.pres
    }

    pub fn value(&self) -> &Polynomial {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn same(&self, other: &Self) -> Result<(), PresentationError> {
        if Arc::ptr_eq(&self.pres, &other.pres) || self.pres.name == other.pres.name {
            Ok(())
        } else {
            Err(PresentationError::WrongPresentation(self.pres.name.clone()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PresentationError> {
        self.same(other)?;
        self.pres.element(self.value.try_add(&other.value)?)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PresentationError> {
        self.same(other)?;
        self.pres.element(self.value.try_sub(&other.value)?)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PresentationError> {
        self.same(other)?;
        self.pres.element(self.value.try_mul(&other.value)?)
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.pres.name == other.pres.name && self.value == other.value
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn g2_spec() -> PresentationSpec {
        serde_json::from_str(
            r#"{
            "name": "G2", "ring": "Z",
            "generators": [{"name":"c2","degree":2},{"name":"c4","degree":4},{"name":"c6","degree":6},{"name":"c7","degree":7}],
            "relations": [{"id":"a","text":"c2^2 - 4*c4"},{"id":"b","text":"c2*c7"},{"id":"c","text":"2*c7"}],
            "basis": [{"kind":"free","over":["c4","c6"],"generators":["1","c2"]},
                      {"kind":"torsion","over":["c4","c6","c7"],"generators":["c7"]}]
        }"#,
        )
        .unwrap()
    }

    fn g2() -> Arc<GradedRingPresentation> {
        Arc::new(GradedRingPresentation::from_spec(&g2_spec(), &Params::new()).unwrap())
    }

    #[test]
    fn g2_normal_forms() {
        let g = g2();
        assert_eq!(g.normal_form(&g.parse("c2^3").unwrap()), g.parse("4*c2*c4").unwrap());
        assert!(g.normal_form(&g.parse("2*c2*c7").unwrap()).is_zero());
        assert_eq!(g.normal_form(&g.parse("3*c7 + c2^2").unwrap()), g.parse("c7 + 4*c4").unwrap());
        assert!(g.normal_form(&g.parse("4*c4*c7^2").unwrap()).is_zero());
        assert!(g.is_torsion_generator(3));
        assert_eq!(g.rules().len(), 2);
    }

    #[test]
    fn normal_form_is_idempotent() {
        let g = g2();
        let p = g.parse("c2^5 + 7*c2^2*c7 + 3*c4*c7 - c6*c2^3").unwrap();
        let n = g.normal_form(&p);
        assert_eq!(g.normal_form(&n), n);
        assert!(g.is_normal(&n));
    }

    #[test]
    fn g2_is_confluent() {
        let g = g2();
        let pairs = g.critical_pairs();
        assert!(!pairs.is_empty());
        assert!(pairs.iter().all(CriticalPair::resolves));
    }

    #[test]
    fn non_unit_leading_coefficient_is_rejected() {
        let mut spec = g2_spec();
        spec.relations[0].text = "2*c2^2 - c4".into();
        assert!(matches!(
            GradedRingPresentation::from_spec(&spec, &Params::new()),
            Err(PresentationError::NonUnitLeading(..))
        ));
        spec.relations[0].text = "c2^2 - c2".into();
        assert!(matches!(
            GradedRingPresentation::from_spec(&spec, &Params::new()),
            Err(PresentationError::NotHomogeneous(..))
        ));
    }

    #[test]
    fn ring_elements_multiply_in_the_quotient() {
        let g = g2();
        let c2 = g.element_from_text("c2").unwrap();
        let c7 = g.element_from_text("c7").unwrap();
        assert!(c2.mul(&c7).unwrap().is_zero());
        let sq = c2.mul(&c2).unwrap();
        assert_eq!(sq.to_string(), "4*c4");
    }
}
