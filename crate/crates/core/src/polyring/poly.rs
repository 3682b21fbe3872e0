use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::ring::format_coeff;
use super::{CoefficientRing, Coeff, Monomial, PolyError, VarSet};

/// An exact sparse polynomial (or Laurent polynomial).
///
/// Canonical form: no stored coefficient is zero and every coefficient is the
/// ring's canonical representative, so structural equality is equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: CoefficientRing,
    vars: Arc<VarSet>,
    laurent: bool,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn zero(ring: CoefficientRing, vars: Arc<VarSet>) -> Self {
        Self { ring, vars, laurent: false, terms: BTreeMap::new() }
    }

    pub fn zero_laurent(ring: CoefficientRing, vars: Arc<VarSet>) -> Self {
        Self { ring, vars, laurent: true, terms: BTreeMap::new() }
    }

    pub fn one(ring: CoefficientRing, vars: Arc<VarSet>) -> Self {
        Self::constant(ring, vars, Coeff::one()).expect("1 lies in every ring")
    }

    pub fn constant(ring: CoefficientRing, vars: Arc<VarSet>, c: Coeff) -> Result<Self, PolyError> {
        let n = vars.len();
        let mut p = Self::zero(ring, vars);
        p.push_term(Monomial::one(n), ring.coerce(&c)?);
        Ok(p)
    }

    pub fn var(ring: CoefficientRing, vars: Arc<VarSet>, name: &str) -> Result<Self, PolyError> {
        let i = vars.require(name)?;
        let m = Monomial::var(i, &vars);
        let mut p = Self::zero(ring, vars);
        p.push_term(m, Coeff::one());
        Ok(p)
    }

    /// Builds a polynomial from raw exponent vectors and rational coefficients,
    /// validating every coefficient against the ring.
    pub fn from_terms(
        ring: CoefficientRing,
        vars: Arc<VarSet>,
        laurent: bool,
        terms: impl IntoIterator<Item = (Vec<i32>, Coeff)>,
    ) -> Result<Self, PolyError> {
        let mut p = Self { ring, vars, laurent, terms: BTreeMap::new() };
        for (exps, c) in terms {
            if exps.len() != p.vars.len() {
                return Err(PolyError::Mismatch(format!(
                    "exponent vector of length {} for {} variables",
                    exps.len(),
                    p.vars.len()
                )));
            }
            if !laurent {
                if let Some(i) = exps.iter().position(|&e| e < 0) {
                    return Err(PolyError::NegativeExponent(p.vars.name(i).to_string()));
                }
            }
            let m = Monomial::new(exps, &p.vars);
            let c = ring.coerce(&c)?;
            p.add_term(m, &c);
        }
        Ok(p)
    }

    pub fn monomial(ring: CoefficientRing, vars: Arc<VarSet>, m: Monomial, c: Coeff) -> Result<Self, PolyError> {
        let laurent = m.has_negative();
        let mut p = Self { ring, vars, laurent, terms: BTreeMap::new() };
        let c = ring.coerce(&c)?;
        p.push_term(m, c);
        Ok(p)
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn is_laurent(&self) -> bool {
        self.laurent
    }

    pub fn into_laurent(mut self) -> Self {
        self.laurent = true;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn constant_term(&self) -> Coeff {
        self.coeff(&Monomial::one(self.vars.len()))
    }

    /// Highest weighted degree of a term (`None` for zero).
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `Some(d)` when nonzero and every term has weighted degree `d`.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn homogeneous_part(&self, degree: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == degree)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Self { terms, ..self.empty_like() }
    }

    fn empty_like(&self) -> Self {
        Self { ring: self.ring, vars: self.vars.clone(), laurent: self.laurent, terms: BTreeMap::new() }
    }

    fn push_term(&mut self, m: Monomial, c: Coeff) {
        if !c.is_zero() {
            if m.has_negative() {
                self.laurent = true;
            }
            self.terms.insert(m, c);
        }
    }

    /// Adds `c * m` in place, keeping the canonical form.
    pub(crate) fn add_term(&mut self, m: Monomial, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        let ring = self.ring;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = ring.add(o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub(crate) fn remove_term(&mut self, m: &Monomial) -> Option<Coeff> {
        self.terms.remove(m)
    }

    fn check_compatible(&self, other: &Self) -> Result<(), PolyError> {
        if self.ring != other.ring {
            return Err(PolyError::Mismatch(format!("rings {} and {}", self.ring, other.ring)));
        }
        if self.vars != other.vars {
            return Err(PolyError::Mismatch(format!(
                "variables [{}] and [{}]",
                self.vars.names().join(","),
                other.vars.names().join(",")
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.laurent |= other.laurent;
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.empty_like();
        out.laurent |= other.laurent;
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &self.ring.mul(c1, c2));
            }
        }
        Ok(out)
    }

    fn neg_ref(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), self.ring.neg(c))).collect();
        Self { terms, ..self.empty_like() }
    }

    /// Multiplies by a ring element (given as a rational, coerced first).
    pub fn scale(&self, c: &Coeff) -> Result<Self, PolyError> {
        let c = self.ring.coerce(c)?;
        Ok(self.scale_unchecked(&c))
    }

    pub(crate) fn scale_unchecked(&self, c: &Coeff) -> Self {
        let mut out = self.empty_like();
        if c.is_zero() {
            return out;
        }
        for (m, d) in &self.terms {
            out.push_term(m.clone(), self.ring.mul(c, d));
        }
        out
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale_unchecked(&self.ring.from_int(n))
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Self {
        let mut out = self.empty_like();
        if c.is_zero() {
            return out;
        }
        for (m2, d) in &self.terms {
            out.push_term(m.mul(m2), self.ring.mul(c, d));
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.ring, self.vars.clone());
        result.laurent = self.laurent;
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Reduction modulo the ideal generated by the named variables: every
    /// term involving one of them is dropped.
    pub fn eliminate<S: AsRef<str>>(&self, names: &[S]) -> Result<Self, PolyError> {
        if self.laurent {
            return Err(PolyError::Mismatch("elimination is defined in polynomial mode".into()));
        }
        let idx = names
            .iter()
            .map(|n| self.vars.require(n.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| idx.iter().all(|&i| m.exp(i) == 0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Ok(Self { terms, ..self.empty_like() })
    }

    /// Ring homomorphism given by one image per variable (same order as this
    /// polynomial's variables). Coefficients are coerced into the images'
    /// ring; every image must share that ring and variable set.
    pub fn substitute_all(&self, images: &[Self]) -> Result<Self, PolyError> {
        if images.len() != self.vars.len() {
            return Err(PolyError::Mismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.vars.len()
            )));
        }
        let Some(first) = images.first() else {
            // no variables: the polynomial is a constant
            return Err(PolyError::Mismatch("cannot infer target ring from zero images".into()));
        };
        let (ring, vars) = (first.ring, first.vars.clone());
        for img in images {
            if img.ring != ring || img.vars != vars {
                return Err(PolyError::Mismatch("images live in different rings".into()));
            }
        }
        self.substitute_into(images, ring, vars)
    }

    /// Like [`substitute_all`](Self::substitute_all) with an explicit target,
    /// which also covers polynomials in zero variables.
    pub fn substitute_into(
        &self,
        images: &[Self],
        ring: CoefficientRing,
        vars: Arc<VarSet>,
    ) -> Result<Self, PolyError> {
        let mut powers: Vec<Vec<Self>> =
            images.iter().map(|_| vec![Self::one(ring, vars.clone())]).collect();
        let mut out = Self::zero(ring, vars.clone());
        for (m, c) in &self.terms {
            let c = ring.coerce(c)?;
            if c.is_zero() {
                continue;
            }
            let mut t = Self::constant(ring, vars.clone(), c)?;
            for (i, &e) in m.exps().iter().enumerate() {
                if e < 0 {
                    return Err(PolyError::NegativeExponent(self.vars.name(i).to_string()));
                }
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &images[i];
                    cache.push(next);
                }
                t = &t * &cache[e as usize];
                if t.is_zero() {
                    break;
                }
            }
            for (m2, c2) in t.terms {
                out.add_term(m2, &c2);
            }
        }
        Ok(out)
    }

    /// Substitutes by variable name; variables without an entry map to
    /// themselves (which requires the target to be this same ring).
    pub fn substitute(&self, assignment: &BTreeMap<String, Self>) -> Result<Self, PolyError> {
        for name in assignment.keys() {
            self.vars.require(name)?;
        }
        let images = self
            .vars
            .names()
            .iter()
            .map(|n| match assignment.get(n) {
                Some(p) => Ok(p.clone()),
                None => Self::var(self.ring, self.vars.clone(), n),
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.substitute_all(&images)
    }

    /// Substitution where every variable must be assigned.
    pub fn substitute_strict(&self, assignment: &BTreeMap<String, Self>) -> Result<Self, PolyError> {
        if let Some(missing) = self.vars.names().iter().find(|n| !assignment.contains_key(*n)) {
            return Err(PolyError::MissingAssignment(missing.clone()));
        }
        self.substitute(assignment)
    }

    /// Coefficient of `formal_var^k`, as a polynomial in the remaining
    /// variables.
    pub fn coefficient_of_degree(&self, formal_var: &str, k: i32) -> Result<Self, PolyError> {
        let i = self.vars.require(formal_var)?;
        let vars = self.vars.without(i);
        let dvar = self.vars.degree(i);
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(i) == k)
            .map(|(m, c)| (m.drop_var(i, dvar), c.clone()))
            .collect();
        Ok(Self { ring: self.ring, vars, laurent: self.laurent, terms })
    }

    /// Exact quotient `self / divisor`: returns `r` with `divisor * r == self`.
    ///
    /// Division by the leading term never needs to backtrack: if `divisor`
    /// divides `self`, the leading term of `self` is the product of the
    /// leading terms.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self, PolyError> {
        self.check_compatible(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(PolyError::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = self.empty_like();
        while let Some((m, c)) = rem.leading_term() {
            let q_m = if self.laurent || divisor.laurent {
                Monomial::new(
                    m.exps().iter().zip(lm.exps()).map(|(a, b)| a - b).collect(),
                    &self.vars,
                )
            } else {
                lm.quotient_of(m).ok_or(PolyError::NotDivisible)?
            };
            let q_c = self.ring.divide(c, lc).ok_or(PolyError::NotDivisible)?;
            rem = &rem - &divisor.mul_term(&q_m, &q_c);
            quot.add_term(q_m, &q_c);
            if quot.len() > self.len() * divisor.len() + 64 && self.laurent {
                // Laurent division has no well-founded order to stop on.
                return Err(PolyError::NotDivisible);
            }
        }
        Ok(quot)
    }

    /// Moves this polynomial into another ring with the same variables.
    pub fn change_ring(&self, ring: CoefficientRing) -> Result<Self, PolyError> {
        let mut out = Self { ring, vars: self.vars.clone(), laurent: self.laurent, terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &ring.coerce(c)?);
        }
        Ok(out)
    }

    /// Re-expresses this polynomial over a variable set that contains all of
    /// the variables it actually uses (matched by name).
    pub fn embed(&self, vars: &Arc<VarSet>) -> Result<Self, PolyError> {
        let map: Vec<Option<usize>> = self.vars.names().iter().map(|n| vars.index_of(n)).collect();
        let mut out = Self { ring: self.ring, vars: vars.clone(), laurent: self.laurent, terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            let mut exps = vec![0; vars.len()];
            for (i, &e) in m.exps().iter().enumerate() {
                if e != 0 {
                    let j = map[i].ok_or_else(|| PolyError::UnknownVariable(self.vars.name(i).to_string()))?;
                    if vars.degree(j) != self.vars.degree(i) {
                        return Err(PolyError::Mismatch(format!("degree of `{}` differs", self.vars.name(i))));
                    }
                    exps[j] = e;
                }
            }
            out.add_term(Monomial::new(exps, vars), c);
        }
        Ok(out)
    }

    /// Sum of all coefficients: the value at all variables equal to 1.
    pub fn evaluate_at_ones(&self) -> Coeff {
        self.terms.values().fold(Coeff::zero(), |acc, c| self.ring.add(&acc, c))
    }

    /// Indices of variables that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m.exp(i) != 0))
            .collect()
    }

    /// Highest exponent of variable `i` over all terms.
    pub fn degree_in(&self, i: usize) -> i32 {
        self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0)
    }

    pub(crate) fn map_terms(&self, f: impl Fn(&Monomial, &Coeff) -> Option<Coeff>) -> Self {
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            if let Some(d) = f(m, c) {
                out.push_term(m.clone(), d);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    /// Deterministic text form, leading term first: `16*x^12 + -1*y^6*z^6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{}", format_coeff(c))?;
            } else {
                write!(f, "{}*{}", format_coeff(c), m.display(&self.vars))?;
            }
        }
        Ok(())
    }
}

// Operator forms panic on mismatched operands; use the `try_*` methods where
// operands may come from different rings.

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, rational};

    fn ring_q(names: &[&str]) -> (CoefficientRing, Arc<VarSet>) {
        (CoefficientRing::Rationals, VarSet::uniform(names.iter().copied()).unwrap())
    }

    fn p(s: &str, r: CoefficientRing, v: &Arc<VarSet>) -> Polynomial {
        parse_polynomial(s, r, v).unwrap()
    }

    #[test]
    fn additive_inverse_and_merge() {
        let (r, v) = ring_q(&["t1", "t2"]);
        assert!((&p("t1^2", r, &v) + &p("-t1^2", r, &v)).is_zero());
        assert_eq!(
            &p("t1^2 + t2^2", r, &v) + &p("t1^2", r, &v),
            p("2*t1^2 + t2^2", r, &v)
        );
        let f2 = CoefficientRing::PrimeField(2);
        assert!((&p("t1", f2, &v) + &p("t1", f2, &v)).is_zero());
    }

    #[test]
    fn products() {
        let (r, v) = ring_q(&["t1", "t2", "X"]);
        assert_eq!(
            &p("1 + t1*X", r, &v) * &p("1 - t1*X", r, &v),
            p("1 - t1^2*X^2", r, &v)
        );
        assert_eq!(&p("t1 + t2", r, &v) * &p("t1 - t2", r, &v), p("t1^2 - t2^2", r, &v));
        let q = p("3*t1*t2 + X", r, &v);
        assert_eq!(&q * &Polynomial::one(r, v.clone()), q);
    }

    #[test]
    fn mismatch_is_an_error() {
        let (r, v) = ring_q(&["a"]);
        let w = VarSet::uniform(["b"]).unwrap();
        assert!(matches!(
            p("a", r, &v).try_add(&p("b", r, &w)),
            Err(PolyError::Mismatch(_))
        ));
        let z = CoefficientRing::Integers;
        assert!(p("a", r, &v).try_mul(&p("a", z, &v)).is_err());
    }

    #[test]
    fn elimination() {
        let (r, v) = ring_q(&["x", "y", "z"]);
        let e = p("16*x^12 + x^6*y^6", r, &v).eliminate(&["y", "z"]).unwrap();
        assert_eq!(e, p("16*x^12", r, &v));
        let q = p("x*y*z + x", r, &v);
        assert_eq!(q.eliminate::<&str>(&[]).unwrap(), q);
        assert!(p("x*y*z", r, &v).eliminate(&["z"]).unwrap().is_zero());
        assert!(matches!(q.eliminate(&["w"]), Err(PolyError::UnknownVariable(_))));
    }

    #[test]
    fn exact_division() {
        let (r, v) = ring_q(&["t1", "t2"]);
        assert_eq!(
            p("t1^2 - t2^2", r, &v).exact_divide(&p("t1 - t2", r, &v)).unwrap(),
            p("t1 + t2", r, &v)
        );
        assert_eq!(
            p("t1^2 + t2^2", r, &v).exact_divide(&p("t1 - t2", r, &v)),
            Err(PolyError::NotDivisible)
        );
        assert_eq!(
            p("t1", r, &v).exact_divide(&Polynomial::zero(r, v.clone())),
            Err(PolyError::DivisionByZero)
        );
        // over Z, 2x / 4 is not exact
        let z = CoefficientRing::Integers;
        assert_eq!(p("2*t1", z, &v).exact_divide(&p("4", z, &v)), Err(PolyError::NotDivisible));
    }

    #[test]
    fn substitution() {
        let chern = VarSet::new([("c2", 2), ("c4", 4), ("c7", 7)]).unwrap();
        let sl3 = VarSet::new([("x2", 2), ("x3", 3)]).unwrap();
        let z = CoefficientRing::Integers;
        let mut a = BTreeMap::new();
        a.insert("c2".to_string(), p("2*x2", z, &sl3));
        a.insert("c4".to_string(), p("x2^2", z, &sl3));
        a.insert("c7".to_string(), Polynomial::zero(z, sl3.clone()));
        assert!(p("c2^2 - 4*c4", z, &chern).substitute_strict(&a).unwrap().is_zero());
        assert!(p("c7", z, &chern).substitute_strict(&a).unwrap().is_zero());
        a.remove("c7");
        assert_eq!(
            p("c7", z, &chern).substitute_strict(&a),
            Err(PolyError::MissingAssignment("c7".into()))
        );
        let q = p("c2*c4 + 3*c7", z, &chern);
        assert_eq!(q.substitute(&BTreeMap::new()).unwrap(), q);
    }

    #[test]
    fn coefficient_extraction() {
        let (r, v) = ring_q(&["t1", "t2", "X"]);
        let total = p("1 - (t1^2 + t2^2)*X^2 + t1^2*t2^2*X^4", r, &v);
        let tv = VarSet::uniform(["t1", "t2"]).unwrap();
        assert_eq!(total.coefficient_of_degree("X", 2).unwrap(), p("-t1^2 - t2^2", r, &tv));
        assert!(total.coefficient_of_degree("X", 5).unwrap().is_zero());
        assert_eq!(total.coefficient_of_degree("X", 0).unwrap(), Polynomial::one(r, tv));
    }

    #[test]
    fn homogeneity_and_degrees() {
        let v = VarSet::new([("c2", 2), ("c4", 4)]).unwrap();
        let z = CoefficientRing::Integers;
        let a = p("c2^2 - 4*c4", z, &v);
        let b = p("c2", z, &v);
        assert_eq!(a.homogeneous_degree(), Some(4));
        assert_eq!((&a * &b).homogeneous_degree(), Some(6));
        assert_eq!(p("c2 + c4", z, &v).homogeneous_degree(), None);
        assert!(Polynomial::zero(z, v.clone()).is_homogeneous());
    }

    #[test]
    fn display_is_leading_first() {
        let (r, v) = ring_q(&["x", "y", "z"]);
        let q = p("-y^6*z^6 + 16*x^12", r, &v);
        assert_eq!(q.to_string(), "16*x^12 + -1*y^6*z^6");
        assert_eq!(p("8/3*x - 2", r, &v).to_string(), "8/3*x + -2");
        assert_eq!(Polynomial::zero(r, v).to_string(), "0");
    }

    #[test]
    fn localized_scaling_checks_denominators() {
        let z2 = CoefficientRing::LocalizedIntegers(2);
        let v = VarSet::uniform(["x"]).unwrap();
        let x = p("x", z2, &v);
        assert!(x.scale(&rational(8, 3)).is_ok());
        assert!(x.scale(&rational(1, 2)).is_err());
    }

    #[test]
    fn change_ring_reduces_mod_p() {
        let v = VarSet::uniform(["x"]).unwrap();
        let q = p("3*x + 2", CoefficientRing::Integers, &v);
        let f2 = q.change_ring(CoefficientRing::PrimeField(2)).unwrap();
        assert_eq!(f2.to_string(), "1*x");
    }
}
