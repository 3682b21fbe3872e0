//! Recomputes the numerical constants of the Spin7 relations from the torus
//! restrictions of the Chern classes of the vector and spin
//! representations, by elimination, exact division and linear solving.

use serde::Serialize;
use thiserror::Error;

use crate::chern::{chern_class, WeightSystem};
use crate::linalg::Matrix;
use crate::polyring::{format_coeff, CoefficientRing, Coeff, Monomial, PolyError, Polynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstantError {
    #[error("{0}: quotient is not a constant")]
    NotConstant(String),
    #[error("{0}: the identity has no solution")]
    Inconsistent(String),
    #[error("{0}: the identity does not determine the unknowns")]
    Underdetermined(String),
    #[error("{0}: {1}")]
    Division(String, PolyError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedConstant {
    pub name: String,
    #[serde(serialize_with = "ser_coeff")]
    pub value: Coeff,
    pub method: String,
    pub witness: String,
}

fn ser_coeff<S: serde::Serializer>(c: &Coeff, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_coeff(c))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantTable {
    pub entries: Vec<DerivedConstant>,
}

impl ConstantTable {
    pub fn get(&self, name: &str) -> Option<&Coeff> {
        self.entries.iter().find(|e| e.name == name).map(|e| &e.value)
    }
}

/// Unique `lambda` with `lhs = sum lambda_k terms_k`, by linear algebra on
/// coefficients.
pub fn solve_linear_identity(
    label: &str,
    lhs: &Polynomial,
    terms: &[Polynomial],
) -> Result<Vec<Coeff>, ConstantError> {
    let mut monos: Vec<Monomial> = lhs.terms().map(|(m, _)| m.clone()).collect();
    for t in terms {
        monos.extend(t.terms().map(|(m, _)| m.clone()));
    }
    monos.sort();
    monos.dedup();
    let q = CoefficientRing::Rationals;
    let rows: Vec<Vec<Coeff>> = monos.iter().map(|m| terms.iter().map(|t| t.coeff(m)).collect()).collect();
    let a = Matrix::from_rows(q, terms.len(), rows);
    if a.rank() < terms.len() {
        return Err(ConstantError::Underdetermined(label.into()));
    }
    let b: Vec<Coeff> = monos.iter().map(|m| lhs.coeff(m)).collect();
    a.solve(&b).ok_or_else(|| ConstantError::Inconsistent(label.into()))
}

fn constant_quotient(label: &str, num: &Polynomial, den: &Polynomial) -> Result<Coeff, ConstantError> {
    let q = num.exact_divide(den).map_err(|e| ConstantError::Division(label.into(), e))?;
    match q.homogeneous_degree() {
        Some(0) => Ok(q.constant_term()),
        _ => Err(ConstantError::NotConstant(label.into())),
    }
}

fn single_term(p: &Polynomial) -> Option<(String, String)> {
    match p.len() {
        1 => p.leading_term().map(|(m, c)| (format_coeff(c), m.display(p.vars()))),
        _ => None,
    }
}

struct Classes {
    c2p: Polynomial,
    c4p: Polynomial,
    c6p: Polynomial,
    c8p: Polynomial,
    c4: Polynomial,
    c6: Polynomial,
}

/// Derives every constant from the spin (`delta`) and vector (`v`) weights.
pub fn derive_constants(delta: &WeightSystem, v: &WeightSystem) -> Result<ConstantTable, ConstantError> {
    delta.coords().require_same(v.coords()).map_err(|e| ConstantError::Inconsistent(e.to_string()))?;
    let q = CoefficientRing::Rationals;
    let cls = |ws: &WeightSystem, i: usize| chern_class(ws, i).change_ring(q);
    let k = Classes {
        c2p: cls(delta, 2)?,
        c4p: cls(delta, 4)?,
        c6p: cls(delta, 6)?,
        c8p: cls(delta, 8)?,
        c4: cls(v, 4)?,
        c6: cls(v, 6)?,
    };
    let d4 = &k.c4p - &k.c4;
    let d6 = &k.c6p - &k.c6;
    let mut entries = Vec::new();
    let mut push = |name: &str, value: Coeff, method: &str, witness: String| {
        entries.push(DerivedConstant { name: name.into(), value, method: method.into(), witness });
    };

    let lhs6 = &(&k.c2p * &k.c2p) - &k.c4.scale_int(4);
    let coeff6 = constant_quotient("coeff6", &lhs6, &d4)?;
    push("coeff6", coeff6, "exact division (c2'^2 - 4c4)/(c4' - c4)", String::new());

    let lhs7 = &k.c2p * &d4;
    let coeff7 = constant_quotient("coeff7", &lhs7, &d6)?;
    push("coeff7", coeff7.clone(), "exact division c2'(c4' - c4)/(c6' - c6)", String::new());

    let lhs8 = &k.c2p * &d6;
    let sol8 = solve_linear_identity("coeff8", &lhs8, &[&k.c4 * &d4, k.c8p.clone()])?;
    push("coeff8_mu", sol8[0].clone(), "linear solve c2'(c6' - c6) = mu c4(c4' - c4) + lambda c8'", String::new());
    push("coeff8_lambda", sol8[1].clone(), "linear solve c2'(c6' - c6) = mu c4(c4' - c4) + lambda c8'", String::new());

    let coeff10 = constant_quotient("coeff10", &(&d4 * &d4), &k.c8p)?;
    push("coeff10", coeff10, "exact division (c4' - c4)^2 / c8'", String::new());

    let coeff11 = constant_quotient("coeff11", &(&d4 * &d6), &(&k.c2p * &k.c8p))?;
    push("coeff11", coeff11, "exact division (c4' - c4)(c6' - c6) / (c2' c8')", String::new());

    // (c6' - c6)^2 = A c8' c4' + B c8' c4.
    let lhs13 = &d6 * &d6;
    let ta = &k.c8p * &k.c4p;
    let tb = &k.c8p * &k.c4;
    let names = delta.coords().vars().names().to_vec();
    let (n1, n2) = (&names[1..], &names[2..]);
    let l_yz = lhs13.eliminate(n1)?;
    let a_yz = ta.eliminate(n1)?;
    let big_a = constant_quotient("A", &l_yz, &a_yz)?;
    let witness_a = match (single_term(&l_yz), single_term(&a_yz)) {
        (Some((cl, ml)), Some((ca, ma))) => format!("{cl}{ml} = {ca}A {ma}"),
        _ => format!("{l_yz} = A*({a_yz})"),
    };
    push("A", big_a.clone(), "eliminate the last two coordinates, exact division", witness_a);

    let p0 = (&lhs13 - &ta.scale(&big_a)?).eliminate(n2)?;
    let p1 = tb.eliminate(n2)?;
    let big_b = constant_quotient("B", &p0, &p1)?;
    push("B", big_b.clone(), "eliminate the last coordinate, exact division", format!("{} - B*({}) = 0", p0, p1));

    let sol13 = solve_linear_identity("coeff13", &lhs13, &[ta, tb])?;
    if sol13 != [big_a.clone(), big_b.clone()] {
        return Err(ConstantError::Inconsistent("A, B cross-check".into()));
    }

    // 2a = coeff7 and mu = 2b/a.
    let two = Coeff::from_integer(2.into());
    let a = &coeff7 / &two;
    let b = &sol8[0] * &a / &two;
    push("a", a, "coeff7 = 2a", String::new());
    push("b", b, "mu = 2b/a", String::new());
    Ok(ConstantTable { entries })
}

/// The identity `16 x^12 = 6 A x^12` in its printed form.
pub fn a_identity(table: &ConstantTable) -> Option<&str> {
    table.entries.iter().find(|e| e.name == "A").map(|e| e.witness.as_str())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::polyring::{parse_polynomial, rational, VarSet};

    fn table() -> ConstantTable {
        let c = Catalog::builtin();
        derive_constants(c.weight_system("Delta_spin7").unwrap(), c.weight_system("V_spin7").unwrap()).unwrap()
    }

    #[test]
    fn table_values() {
        let t = table();
        let want = [
            ("coeff6", rational(8, 3)),
            ("coeff7", rational(6, 1)),
            ("coeff8_mu", rational(2, 3)),
            ("coeff8_lambda", rational(16, 1)),
            ("coeff10", rational(36, 1)),
            ("coeff11", rational(6, 1)),
            ("A", rational(8, 3)),
            ("B", rational(4, 3)),
            ("a", rational(3, 1)),
            ("b", rational(1, 1)),
        ];
        for (n, v) in want {
            assert_eq!(t.get(n), Some(&v), "{n}");
        }
    }

    #[test]
    fn a_identity_text() {
        assert_eq!(a_identity(&table()), Some("16x^12 = 6A x^12"));
    }

    #[test]
    fn b_polynomial_matches_quoted_form() {
        let c = Catalog::builtin();
        let ws = c.weight_system("Delta_spin7").unwrap();
        let v = c.weight_system("V_spin7").unwrap();
        let q = CoefficientRing::Rationals;
        let vars = ws.coords().vars().clone();
        let d6 = &chern_class(ws, 6).change_ring(q).unwrap() - &chern_class(v, 6).change_ring(q).unwrap();
        let c8 = chern_class(ws, 8).change_ring(q).unwrap();
        let ta = &c8 * &chern_class(ws, 4).change_ring(q).unwrap();
        let tb = &c8 * &chern_class(v, 4).change_ring(q).unwrap();
        let p0 = (&(&d6 * &d6) - &ta.scale(&rational(8, 3)).unwrap()).eliminate(&["z"]).unwrap();
        let p1 = tb.eliminate(&["z"]).unwrap();
        let quoted0 = parse_polynomial(
            "128*x^6*y^6 - 256/3*x^8*y^4 + 64/3*x^10*y^2 + 64/3*y^10*x^2 - 256/3*y^8*x^4",
            q,
            &vars,
        )
        .unwrap();
        let quoted1 = parse_polynomial(
            "-16*y^10*x^2 - 16*x^10*y^2 + 64*x^8*y^4 + 64*y^8*x^4 - 96*x^6*y^6",
            q,
            &vars,
        )
        .unwrap();
        // quoted = s (p0 - B p1) for a global sign s.
        let s = if p0 == quoted0 { 1 } else { -1 };
        assert_eq!(p0.scale_int(s), quoted0);
        assert_eq!(p1.scale_int(-s), quoted1);
    }

    #[test]
    fn linear_identity_errors() {
        let v = VarSet::uniform(["x", "y"]).unwrap();
        let q = CoefficientRing::Rationals;
        let p = |t: &str| parse_polynomial(t, q, &v).unwrap();
        assert_eq!(
            solve_linear_identity("t", &p("3*x + 2*y"), &[p("x"), p("y")]).unwrap(),
            vec![rational(3, 1), rational(2, 1)]
        );
        assert!(matches!(
            solve_linear_identity("t", &p("x*y"), &[p("x^2")]),
            Err(ConstantError::Inconsistent(_))
        ));
        assert!(matches!(
            solve_linear_identity("t", &p("x"), &[p("x"), p("2*x")]),
            Err(ConstantError::Underdetermined(_))
        ));
    }
}
