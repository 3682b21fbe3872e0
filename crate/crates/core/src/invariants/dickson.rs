use serde::Serialize;

use super::{space::generated_dimensions, GroupAction, InvariantError};
use crate::polyring::{monomials_of_degree, CoefficientRing, Monomial, Polynomial, VarSet};

#[derive(Clone, Debug)]
pub struct DicksonInvariant {
    /// `q^n - q^i`.
    pub degree: i64,
    pub poly: Polynomial,
}

/// Coefficients of `prod_{v in F_q^n} (X + l_v)` at `X^{q^i}`, in
/// `F_q[u1..un]`, ordered by increasing degree. Every other coefficient
/// must vanish.
pub fn dickson_invariants(n: usize, q: u64) -> Result<Vec<DicksonInvariant>, InvariantError> {
    let field = CoefficientRing::prime_field(q)?;
    let names: Vec<String> = (1..=n).map(|i| format!("u{i}")).chain(std::iter::once("X".into())).collect();
    let vars = VarSet::uniform(names)?;
    let x = Polynomial::var(field, vars.clone(), "X")?;
    let mut prod = Polynomial::one(field, vars.clone());
    let total = (q as usize).pow(n as u32);
    for k in 0..total {
        let mut l = x.clone();
        let mut r = k;
        for i in 0..n {
            let c = (r % q as usize) as i64;
            r /= q as usize;
            if c != 0 {
                l = &l + &Polynomial::monomial(field, vars.clone(), Monomial::var(i, &vars), field.from_int(c))?;
            }
        }
        prod = &prod * &l;
    }
    let base = VarSet::uniform((1..=n).map(|i| format!("u{i}")))?;
    let qn = total as i32;
    let powers: Vec<i32> = (0..n).map(|i| (q as i32).pow(i as u32)).collect();
    let mut out = Vec::new();
    for k in 0..qn {
        let c = prod.coefficient_of_degree("X", k)?.embed(&base)?;
        if powers.contains(&k) {
            out.push(DicksonInvariant { degree: (qn - k) as i64, poly: c });
        } else if !c.is_zero() {
            return Err(InvariantError::Poly(crate::polyring::PolyError::Mismatch(format!(
                "coefficient of X^{k} is nonzero"
            ))));
        }
    }
    out.sort_by_key(|d| d.degree);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoublingRow {
    pub degree: i64,
    pub expected: u64,
    pub span: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoublingReport {
    pub names: Vec<String>,
    pub square_degrees: Vec<i64>,
    pub squares_invariant: bool,
    pub rows: Vec<DoublingRow>,
}

impl DoublingReport {
    pub fn passed(&self) -> bool {
        self.squares_invariant && self.rows.iter().all(|r| r.expected == r.span as u64)
    }
}

/// The squares `D_i^2` (cycle images of Chow classes `d_i`) are invariant
/// and algebraically independent through `max_degree`: in each degree the
/// span of their products has the dimension of a free polynomial ring.
pub fn degree_doubling_check(
    a: &GroupAction,
    ds: &[Polynomial],
    names: &[&str],
    max_degree: i64,
) -> Result<DoublingReport, InvariantError> {
    let squares: Vec<Polynomial> = ds.iter().map(|d| d * d).collect();
    let mut squares_invariant = true;
    for s in &squares {
        squares_invariant &= a.is_invariant(s)?;
    }
    let degs: Vec<i64> = squares.iter().map(|s| s.homogeneous_degree().unwrap_or(0)).collect();
    let span = generated_dimensions(a.field(), a.vars(), &squares, max_degree)?;
    let count_vars = VarSet::new(degs.iter().enumerate().map(|(i, &d)| (format!("s{i}"), d.max(1))))?;
    let rows = (0..=max_degree)
        .map(|d| DoublingRow {
            degree: d,
            expected: monomials_of_degree(&count_vars, d).len() as u64,
            span: span[d as usize],
        })
        .collect();
    Ok(DoublingReport {
        names: names.iter().map(|s| s.to_string()).collect(),
        square_degrees: degs,
        squares_invariant,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::invariants::space::{hilbert_coefficients, invariant_space, verify_invariant_ring};

    fn gl3() -> GroupAction {
        GroupAction::from_catalog(&Catalog::builtin(), "GL3_F2").unwrap()
    }

    #[test]
    fn degrees() {
        let d: Vec<i64> = dickson_invariants(3, 2).unwrap().iter().map(|d| d.degree).collect();
        assert_eq!(d, vec![4, 6, 7]);
        let d: Vec<i64> = dickson_invariants(2, 2).unwrap().iter().map(|d| d.degree).collect();
        assert_eq!(d, vec![2, 3]);
        let d1 = dickson_invariants(1, 2).unwrap();
        assert_eq!(d1.len(), 1);
        assert_eq!(d1[0].poly.to_string(), "1*u1");
    }

    #[test]
    fn invariant_under_every_element() {
        let g = gl3();
        for d in dickson_invariants(3, 2).unwrap() {
            assert!(g.is_invariant_full_sweep(&d.poly).unwrap());
        }
    }

    #[test]
    fn dickson_algebra_is_the_invariant_ring() {
        let g = gl3();
        let ds: Vec<Polynomial> = dickson_invariants(3, 2).unwrap().into_iter().map(|d| d.poly).collect();
        let r = verify_invariant_ring(&g, &ds, 10).unwrap();
        assert!(r.passed(), "{r:?}");
        let h = hilbert_coefficients(&[4, 6, 7], 10);
        for row in &r.degrees {
            assert_eq!(row.invariant_dimension as u64, h[row.degree as usize]);
        }
        assert_eq!(invariant_space(&g, 2).unwrap().dimension(), 0);
    }

    #[test]
    fn squares_are_independent() {
        let g = gl3();
        let ds: Vec<Polynomial> = dickson_invariants(3, 2).unwrap().into_iter().map(|d| d.poly).collect();
        let r = degree_doubling_check(&g, &ds, &["d4", "d6", "d7"], 16).unwrap();
        assert!(r.passed());
        assert_eq!(r.square_degrees, vec![8, 12, 14]);
        assert_eq!(r.rows[14].expected, 1);
        assert_eq!(r.rows[2].span, 0);
    }
}
