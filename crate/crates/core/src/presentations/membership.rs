//! Ideal membership over a field via Buchberger's algorithm.
//!
//! The monomial order is the polynomials' own (weighted degree, then lex).

use num_traits::Zero;
use serde::Serialize;

use super::PresentationError;
use crate::polyring::{format_coeff, CoefficientRing, Coeff, Monomial, Polynomial};

/// One division step `p -= coeff * monomial * basis[index]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub basis_index: usize,
    pub coeff: String,
    pub monomial: String,
}

#[derive(Clone, Debug)]
pub struct MembershipCertificate {
    pub member: bool,
    /// Reduced standard basis the reduction was performed against.
    pub basis: Vec<Polynomial>,
    pub trace: Vec<ReductionStep>,
    pub remainder: Polynomial,
}

fn monic(p: &Polynomial) -> Polynomial {
    match p.leading_term() {
        Some((_, c)) => {
            let inv = p.ring().inverse(c).expect("field element");
            p.scale_unchecked(&inv)
        }
        None => p.clone(),
    }
}

/// Full reduction of `p` by `basis` (every term, not only the leading one),
/// recording each step.
pub fn reduce(p: &Polynomial, basis: &[Polynomial]) -> (Polynomial, Vec<ReductionStep>) {
    let ring = p.ring();
    let mut rem = p.zero_like();
    let mut work = p.clone();
    let mut trace = Vec::new();
    while let Some((m, c)) = work.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        let hit = basis.iter().enumerate().find_map(|(i, g)| {
            let (lm, lc) = g.leading_term()?;
            lm.quotient_of(&m).map(|q| (i, q, ring.divide(&c, lc).expect("field")))
        });
        match hit {
            Some((i, q, k)) => {
                work = &work - &basis[i].mul_term(&q, &k);
                trace.push(ReductionStep {
                    basis_index: i,
                    coeff: format_coeff(&k),
                    monomial: q.display(p.vars()),
                });
            }
            None => {
                work.remove_term(&m);
                rem.add_term(m, &c);
            }
        }
    }
    (rem, trace)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let l = fm.lcm(gm, f.vars());
    let ring = f.ring();
    let a = f.mul_term(&fm.quotient_of(&l).expect("divides"), &ring.inverse(fc).expect("field"));
    let b = g.mul_term(&gm.quotient_of(&l).expect("divides"), &ring.inverse(gc).expect("field"));
    &a - &b
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis(gens: &[Polynomial]) -> Result<Vec<Polynomial>, PresentationError> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    if !first.ring().is_field() {
        return Err(PresentationError::NotAField(first.ring()));
    }
    let mut basis: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(monic).collect();
    let mut pairs: Vec<(usize, usize)> =
        (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let (mi, mj) = (basis[i].leading_term().unwrap().0, basis[j].leading_term().unwrap().0);
        if mi.coprime(mj) {
            // Buchberger's first criterion: the S-polynomial reduces to 0.
            continue;
        }
        let (r, _) = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            let k = basis.len();
            basis.push(monic(&r));
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    // Minimalize, then inter-reduce.
    let leading: Vec<Monomial> = basis.iter().map(|g| g.leading_term().unwrap().0.clone()).collect();
    let mut keep: Vec<Polynomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = leading.iter().enumerate().any(|(j, lj)| {
            j != i && lj.divides(&leading[i]) && (lj != &leading[i] || j < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Polynomial> =
            keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let (lm, lc) = keep[i].leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut tail = keep[i].clone();
        tail.remove_term(&lm);
        let (r, _) = reduce(&tail, &others);
        let mut g = r;
        g.add_term(lm, &lc);
        reduced.push(monic(&g));
    }
    reduced.sort_by(|a, b| a.leading_term().unwrap().0.cmp(b.leading_term().unwrap().0));
    Ok(reduced)
}

/// Decides `p in (gens)` over a field; the certificate is the reduction
/// trace against the computed standard basis.
pub fn ideal_membership(p: &Polynomial, gens: &[Polynomial]) -> Result<MembershipCertificate, PresentationError> {
    if !p.ring().is_field() {
        return Err(PresentationError::NotAField(p.ring()));
    }
    for g in gens {
        p.try_add(g)?;
    }
    let basis = groebner_basis(gens)?;
    let (remainder, trace) = reduce(p, &basis);
    Ok(MembershipCertificate { member: remainder.is_zero(), basis, trace, remainder })
}

/// Replays a trace: `p - sum steps` must equal the remainder.
pub fn check_trace(p: &Polynomial, cert: &MembershipCertificate) -> bool {
    let mut acc = p.clone();
    for s in &cert.trace {
        let Some(g) = cert.basis.get(s.basis_index) else {
            return false;
        };
        let Ok(q) = crate::polyring::parse_polynomial(&s.monomial, CoefficientRing::Rationals, p.vars()) else {
            return false;
        };
        let Some((m, _)) = q.leading_term() else {
            return false;
        };
        let k = match crate::polyring::parse_polynomial(&s.coeff, CoefficientRing::Rationals, p.vars()) {
            Ok(k) if k.is_zero() => Coeff::zero(),
            Ok(k) => k.constant_term(),
            Err(_) => return false,
        };
        let Ok(k) = p.ring().coerce(&k) else {
            return false;
        };
        acc = &acc - &g.mul_term(m, &k);
    }
    acc == cert.remainder && (cert.member == cert.remainder.is_zero())
}

impl Polynomial {
    pub(crate) fn zero_like(&self) -> Polynomial {
        Polynomial::zero(self.ring(), self.vars().clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, VarSet};

    fn ring(r: CoefficientRing) -> (CoefficientRing, std::sync::Arc<VarSet>) {
        (r, VarSet::new([("C2", 2), ("C4", 4), ("C6", 6), ("C7", 7)]).unwrap())
    }

    #[test]
    fn generator_is_member() {
        let (r, v) = ring(CoefficientRing::Rationals);
        let g1 = parse_polynomial("C2^2 - 4*C4", r, &v).unwrap();
        let g2 = parse_polynomial("C2*C7", r, &v).unwrap();
        let c = ideal_membership(&g1, &[g1.clone(), g2]).unwrap();
        assert!(c.member);
        assert!(check_trace(&g1, &c));
    }

    #[test]
    fn c4_is_not_a_member() {
        let (r, v) = ring(CoefficientRing::Rationals);
        let g1 = parse_polynomial("C2^2 - 4*C4", r, &v).unwrap();
        let p = parse_polynomial("C4", r, &v).unwrap();
        let c = ideal_membership(&p, &[g1]).unwrap();
        assert!(!c.member);
        assert!(check_trace(&p, &c));
    }

    #[test]
    fn multiples_over_f2() {
        let (r, v) = ring(CoefficientRing::PrimeField(2));
        let g = parse_polynomial("C2*C7", r, &v).unwrap();
        let p = parse_polynomial("C2^2*C7", r, &v).unwrap();
        assert!(ideal_membership(&p, &[g]).unwrap().member);
    }

    #[test]
    fn integers_are_rejected() {
        let (r, v) = ring(CoefficientRing::Integers);
        let g = parse_polynomial("C2*C7", r, &v).unwrap();
        assert!(matches!(ideal_membership(&g, std::slice::from_ref(&g)), Err(PresentationError::NotAField(_))));
    }

    #[test]
    fn groebner_basis_of_two_quadrics() {
        let r = CoefficientRing::Rationals;
        let v = VarSet::uniform(["x", "y"]).unwrap();
        let f = parse_polynomial("x^2 - y", r, &v).unwrap();
        let g = parse_polynomial("x*y - 1", r, &v).unwrap();
        let gb = groebner_basis(&[f.clone(), g.clone()]).unwrap();
        for p in [&f, &g] {
            assert!(reduce(p, &gb).0.is_zero());
        }
        let h = parse_polynomial("y^3 - x*y^2", r, &v).unwrap();
        assert!(reduce(&(&h * &f), &gb).0.is_zero());
    }
}
