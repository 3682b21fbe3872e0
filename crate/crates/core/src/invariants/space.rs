use serde::Serialize;

use num_traits::{One, Zero};

use super::{GroupAction, InvariantError};
use crate::linalg::Matrix;
use crate::polyring::{monomials_of_degree, CoefficientRing, Coeff, Polynomial, VarSet};

#[derive(Clone, Debug)]
pub struct InvariantSpace {
    pub degree: i64,
    /// Row-reduced: each element has a distinct leading monomial with
    /// coefficient 1.
    pub basis: Vec<Polynomial>,
}

impl InvariantSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

fn coordinates(p: &Polynomial, monos: &[crate::polyring::Monomial]) -> Vec<Coeff> {
    monos.iter().map(|m| p.coeff(m)).collect()
}

/// Solves `g p = p` for every generator `g` on the monomials of `degree`.
pub fn invariant_space(a: &GroupAction, degree: i64) -> Result<InvariantSpace, InvariantError> {
    let f = a.field();
    let monos = monomials_of_degree(a.vars(), degree);
    let n = monos.len();
    let mut sys = Matrix::zeros(f, 0, n);
    for g in a.generators() {
        let images = a.variable_images(g);
        // Column j holds the coordinates of g(m_j) - m_j.
        let mut cols = Vec::with_capacity(n);
        for m in &monos {
            let mp = Polynomial::monomial(f, a.vars().clone(), m.clone(), Coeff::one())?;
            let gm = mp.substitute_into(&images, f, a.vars().clone())?;
            cols.push(coordinates(&(&gm - &mp), &monos));
        }
        for r in 0..n {
            sys.push_row(cols.iter().map(|c| c[r].clone()).collect());
        }
    }
    let null = sys.nullspace();
    let mut vectors = Matrix::zeros(f, 0, n);
    for v in null {
        vectors.push_row(v);
    }
    let (red, pivots) = vectors.rref();
    let basis = (0..pivots.len())
        .map(|i| {
            let mut p = Polynomial::zero(f, a.vars().clone());
            for (j, m) in monos.iter().enumerate() {
                let c = red.get(i, j);
                if !c.is_zero() {
                    p.add_term(m.clone(), c);
                }
            }
            p
        })
        .collect();
    Ok(InvariantSpace { degree, basis })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeComparison {
    pub degree: i64,
    pub invariant_dimension: usize,
    pub generated_dimension: usize,
}

impl DegreeComparison {
    pub fn matches(&self) -> bool {
        self.invariant_dimension == self.generated_dimension
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantRingReport {
    pub group: String,
    pub non_invariant: Vec<String>,
    pub degrees: Vec<DegreeComparison>,
}

impl InvariantRingReport {
    pub fn passed(&self) -> bool {
        self.non_invariant.is_empty() && self.degrees.iter().all(DegreeComparison::matches)
    }
}

/// Dimension of the span of degree-`d` products of `gens`, for every `d`
/// up to `max_degree`.
pub fn generated_dimensions(
    field: CoefficientRing,
    vars: &std::sync::Arc<VarSet>,
    gens: &[Polynomial],
    max_degree: i64,
) -> Result<Vec<usize>, InvariantError> {
    let gvars = VarSet::new(
        gens.iter()
            .enumerate()
            .map(|(i, g)| (format!("g{i}"), g.homogeneous_degree().unwrap_or(0).max(1))),
    )?;
    let images: Vec<Polynomial> = gens
        .iter()
        .map(|g| g.embed(vars).and_then(|g| g.change_ring(field)))
        .collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for d in 0..=max_degree {
        let monos = monomials_of_degree(vars, d);
        let mut m = Matrix::zeros(field, 0, monos.len());
        for gm in monomials_of_degree(&gvars, d) {
            let p = Polynomial::monomial(field, gvars.clone(), gm, Coeff::one())?;
            let e = p.substitute_into(&images, field, vars.clone())?;
            m.push_row(coordinates(&e, &monos));
        }
        out.push(m.rank());
    }
    Ok(out)
}

/// Compares invariant dimensions with the dimensions spanned by products
/// of `gens`, degree by degree.
pub fn verify_invariant_ring(
    a: &GroupAction,
    gens: &[Polynomial],
    max_degree: i64,
) -> Result<InvariantRingReport, InvariantError> {
    let mut non_invariant = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if !g.is_homogeneous() || !a.is_invariant(g)? {
            non_invariant.push(format!("generator {i}: {g}"));
        }
    }
    let generated = generated_dimensions(a.field(), a.vars(), gens, max_degree)?;
    let mut degrees = Vec::new();
    for d in 0..=max_degree {
        degrees.push(DegreeComparison {
            degree: d,
            invariant_dimension: invariant_space(a, d)?.dimension(),
            generated_dimension: generated[d as usize],
        });
    }
    Ok(InvariantRingReport { group: a.name().to_string(), non_invariant, degrees })
}

/// Coefficients of `1 / prod (1 - s^{d_i})` through `s^max`.
pub fn hilbert_coefficients(degrees: &[i64], max: i64) -> Vec<u64> {
    let mut c = vec![0u64; max as usize + 1];
    c[0] = 1;
    for &d in degrees {
        for k in d as usize..=max as usize {
            c[k] += c[k - d as usize];
        }
    }
    c
}

type Series = Vec<Coeff>;

fn series_mul(a: &Series, b: &Series, len: usize) -> Series {
    let mut out = vec![Coeff::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate() {
            if i + j < len {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `det(1 - s M)` by permutation expansion.
fn det_one_minus(m: &super::Mat, len: usize) -> Series {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = vec![Coeff::zero(); len];
    loop {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        let mut prod: Series = vec![Coeff::one()];
        for (i, &j) in perm.iter().enumerate() {
            let mut entry = vec![Coeff::zero(), -m[i][j].clone()];
            if i == j {
                entry[0] = Coeff::one();
            }
            prod = series_mul(&prod, &entry, len);
        }
        for (t, p) in total.iter_mut().zip(&prod) {
            if inversions % 2 == 0 {
                *t += p;
            } else {
                *t -= p;
            }
        }
        // next permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).expect("successor exists");
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    total
}

fn series_inverse(a: &Series, len: usize) -> Series {
    let mut out = vec![Coeff::zero(); len];
    let inv0 = Coeff::one() / &a[0];
    out[0] = inv0.clone();
    for k in 1..len {
        let mut s = Coeff::zero();
        for i in 1..=k.min(a.len() - 1) {
            s += &a[i] * &out[k - i];
        }
        out[k] = -s * &inv0;
    }
    out
}

/// Molien series `1/|G| sum_g 1/det(1 - s g)` through `s^max`
/// (characteristic 0 only).
pub fn molien_coefficients(a: &GroupAction, max: i64) -> Result<Vec<Coeff>, InvariantError> {
    if a.field().characteristic() != 0 {
        return Err(InvariantError::ModularMolien);
    }
    let len = max as usize + 1;
    let mut total = vec![Coeff::zero(); len];
    for g in a.elements() {
        let inv = series_inverse(&det_one_minus(g, len), len);
        for (t, x) in total.iter_mut().zip(inv) {
            *t += x;
        }
    }
    let order = Coeff::from_integer((a.order() as i64).into());
    Ok(total.into_iter().map(|c| c / &order).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use crate::chern::chern_class;

    fn weyl() -> GroupAction {
        GroupAction::from_catalog(&Catalog::builtin(), "W_G2").unwrap()
    }

    #[test]
    fn low_degrees() {
        let w = weyl();
        assert_eq!(invariant_space(&w, 0).unwrap().dimension(), 1);
        assert_eq!(invariant_space(&w, 1).unwrap().dimension(), 0);
        assert_eq!(invariant_space(&w, 2).unwrap().dimension(), 1);
        assert_eq!(invariant_space(&w, 6).unwrap().dimension(), 2);
    }

    #[test]
    fn weyl_dimensions_match_hilbert_and_molien() {
        let w = weyl();
        let h = hilbert_coefficients(&[2, 6], 12);
        assert_eq!(h, vec![1, 0, 1, 0, 1, 0, 2, 0, 2, 0, 2, 0, 3]);
        let m = molien_coefficients(&w, 12).unwrap();
        for d in 0..=12 {
            let dim = invariant_space(&w, d).unwrap().dimension();
            assert_eq!(dim as u64, h[d as usize], "degree {d}");
            assert_eq!(m[d as usize], Coeff::from_integer((dim as i64).into()));
        }
    }

    #[test]
    fn chern_classes_generate_weyl_invariants() {
        let c = Catalog::builtin();
        let v = c.weight_system("V_g2").unwrap();
        let gens = [chern_class(v, 2), chern_class(v, 6)];
        let r = verify_invariant_ring(&weyl(), &gens, 12).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn a_non_invariant_generator_is_named() {
        let w = weyl();
        let x = Polynomial::var(CoefficientRing::Rationals, w.vars().clone(), "x1").unwrap();
        let r = verify_invariant_ring(&w, &[x], 2).unwrap();
        assert_eq!(r.non_invariant.len(), 1);
        assert!(!r.passed());
    }

    #[test]
    fn invariant_basis_is_fixed() {
        let w = weyl();
        for b in invariant_space(&w, 6).unwrap().basis {
            assert!(w.is_invariant_full_sweep(&b).unwrap());
        }
    }
}
