//! Weight systems of torus representations, their Chern classes and
//! characters.
//!
//! Chern classes live in `Z[t_1..t_r]` (torus coordinates of degree 1);
//! characters are Laurent polynomials in `a1..ar` over `Z`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyring::{CoefficientRing, Coeff, Monomial, PolyError, Polynomial, VarSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChernError {
    #[error("weight {index} has length {len}, expected {rank}")]
    BadWeight { index: usize, len: usize, rank: usize },
    #[error("coordinate systems `{0}` and `{1}` cannot be compared")]
    CoordinateMismatch(String, String),
    #[error("index {r} out of range 0..={m}")]
    OutOfRange { r: usize, m: usize },
    #[error("unknown coordinate system `{0}`")]
    UnknownCoordinates(String),
    #[error("invalid elimination for `{0}`")]
    BadElimination(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Serialized coordinate system: the listed variables, of which some may be
/// eliminated by an integer linear relation in the others.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinateSpec {
    pub name: String,
    pub variables: Vec<String>,
    /// Eliminated variable -> coefficients over `variables` (the eliminated
    /// variable itself must have coefficient 0).
    #[serde(default)]
    pub eliminate: BTreeMap<String, Vec<i64>>,
}

/// Torus coordinates after elimination: free variables of degree 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateSystem {
    name: String,
    spec: CoordinateSpec,
    vars: Arc<VarSet>,
    /// For every listed variable, its expression over the free ones.
    projection: Vec<Vec<i64>>,
}

impl CoordinateSystem {
    pub fn from_spec(spec: CoordinateSpec) -> Result<Self, ChernError> {
        let n = spec.variables.len();
        let free: Vec<usize> = (0..n).filter(|&i| !spec.eliminate.contains_key(&spec.variables[i])).collect();
        let vars = VarSet::uniform(free.iter().map(|&i| spec.variables[i].clone()))?;
        let mut projection = Vec::with_capacity(n);
        for (i, name) in spec.variables.iter().enumerate() {
            let row = match spec.eliminate.get(name) {
                None => {
                    let mut r = vec![0; free.len()];
                    r[free.iter().position(|&j| j == i).expect("free variable")] = 1;
                    r
                }
                Some(coeffs) => {
                    // Only free variables may appear on the right-hand side.
                    if coeffs.len() != n
                        || coeffs.iter().enumerate().any(|(j, &c)| c != 0 && !free.contains(&j))
                    {
                        return Err(ChernError::BadElimination(name.clone()));
                    }
                    free.iter().map(|&j| coeffs[j]).collect()
                }
            };
            projection.push(row);
        }
        for name in spec.eliminate.keys() {
            if !spec.variables.contains(name) {
                return Err(ChernError::BadElimination(name.clone()));
            }
        }
        Ok(Self { name: spec.name.clone(), spec, vars, projection })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn spec(&self) -> &CoordinateSpec {
        &self.spec
    }

    /// Free variables (degree 1), the ring `CH^*BT`.
    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn rank(&self) -> usize {
        self.vars.len()
    }

    /// Rewrites a weight given over all listed variables in free coordinates.
    pub fn project(&self, weight: &[i64]) -> Result<Vec<i64>, ChernError> {
        if weight.len() != self.projection.len() {
            return Err(ChernError::BadWeight { index: 0, len: weight.len(), rank: self.projection.len() });
        }
        let mut out = vec![0; self.rank()];
        for (w, row) in weight.iter().zip(&self.projection) {
            for (o, r) in out.iter_mut().zip(row) {
                *o += w * r;
            }
        }
        Ok(out)
    }

    pub fn require_same(&self, other: &Self) -> Result<(), ChernError> {
        if self.name == other.name && self.vars == other.vars {
            Ok(())
        } else {
            Err(ChernError::CoordinateMismatch(self.name.clone(), other.name.clone()))
        }
    }
}

/// Multiset of torus characters, in free coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSystem {
    name: String,
    coords: Arc<CoordinateSystem>,
    weights: Vec<Vec<i64>>,
}

impl WeightSystem {
    /// `weights` are given over the coordinate system's listed variables and
    /// projected to free coordinates.
    pub fn new(name: &str, coords: Arc<CoordinateSystem>, weights: &[Vec<i64>]) -> Result<Self, ChernError> {
        let n = coords.spec().variables.len();
        let weights = weights
            .iter()
            .enumerate()
            .map(|(index, w)| {
                if w.len() != n {
                    return Err(ChernError::BadWeight { index, len: w.len(), rank: n });
                }
                coords.project(w)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { name: name.to_string(), coords, weights })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn coords(&self) -> &Arc<CoordinateSystem> {
        &self.coords
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn dimension(&self) -> usize {
        self.weights.len()
    }

    pub fn is_self_dual(&self) -> bool {
        let mut a = self.weights.clone();
        let mut b: Vec<Vec<i64>> = self.weights.iter().map(|w| w.iter().map(|x| -x).collect()).collect();
        a.sort();
        b.sort();
        a == b
    }

    /// Multiset union (direct sum).
    pub fn direct_sum(&self, other: &Self) -> Result<Self, ChernError> {
        self.coords.require_same(&other.coords)?;
        let mut weights = self.weights.clone();
        weights.extend(other.weights.iter().cloned());
        Ok(Self { name: format!("{}+{}", self.name, other.name), coords: self.coords.clone(), weights })
    }

    /// Linear form of a weight in `Z[t]`.
    pub fn linear_form(&self, w: &[i64]) -> Polynomial {
        let vars = self.coords.vars().clone();
        let mut p = Polynomial::zero(CoefficientRing::Integers, vars.clone());
        for (i, &c) in w.iter().enumerate() {
            if c != 0 {
                p.add_term(Monomial::var(i, &vars), &Coeff::from_integer(BigInt::from(c)));
            }
        }
        p
    }
}

/// Chern classes `[c_0, c_1, .., c_n]`: `c_i` is the `i`-th elementary
/// symmetric polynomial in the weights' linear forms.
pub fn total_chern(ws: &WeightSystem) -> Vec<Polynomial> {
    let vars = ws.coords().vars().clone();
    let mut e = vec![Polynomial::one(CoefficientRing::Integers, vars.clone())];
    for w in ws.weights() {
        let l = ws.linear_form(w);
        e.push(Polynomial::zero(CoefficientRing::Integers, vars.clone()));
        for k in (1..e.len()).rev() {
            let t = &e[k - 1] * &l;
            e[k] = &e[k] + &t;
        }
    }
    e
}

/// `c_i(ws)`, zero above the dimension.
pub fn chern_class(ws: &WeightSystem, i: usize) -> Polynomial {
    total_chern(ws)
        .into_iter()
        .nth(i)
        .unwrap_or_else(|| Polynomial::zero(CoefficientRing::Integers, ws.coords().vars().clone()))
}

/// The total class `prod (1 + l_w X)` as a polynomial in the torus variables
/// and a formal variable `X` of degree 1 (appended last).
pub fn total_chern_series(ws: &WeightSystem, formal: &str) -> Result<Polynomial, ChernError> {
    let base = ws.coords().vars();
    let vars = VarSet::new(
        base.names()
            .iter()
            .map(|n| (n.clone(), 1))
            .chain(std::iter::once((formal.to_string(), 1))),
    )?;
    let x = Polynomial::var(CoefficientRing::Integers, vars.clone(), formal)?;
    let mut total = Polynomial::one(CoefficientRing::Integers, vars.clone());
    for w in ws.weights() {
        let l = ws.linear_form(w).embed(&vars)?;
        total = &total * &(&Polynomial::one(CoefficientRing::Integers, vars.clone()) + &(&l * &x));
    }
    Ok(total)
}

/// Variables `a1..am` for characters of a rank-`m` torus.
pub fn character_vars(m: usize) -> Arc<VarSet> {
    VarSet::uniform((1..=m).map(|i| format!("a{i}"))).expect("valid names")
}

fn laurent_monomial(vars: &Arc<VarSet>, exps: Vec<i32>) -> Polynomial {
    let m = Monomial::new(exps, vars);
    Polynomial::monomial(CoefficientRing::Integers, vars.clone(), m, Coeff::one()).expect("unit coefficient")
}

fn zero_char(m: usize) -> Polynomial {
    Polynomial::zero_laurent(CoefficientRing::Integers, character_vars(m))
}

/// `sum_w a^w`.
pub fn character_of(ws: &WeightSystem) -> Polynomial {
    let vars = character_vars(ws.coords().rank());
    let mut chi = Polynomial::zero_laurent(CoefficientRing::Integers, vars.clone());
    for w in ws.weights() {
        chi = &chi + &laurent_monomial(&vars, w.iter().map(|&e| e as i32).collect());
    }
    chi
}

/// `tau_r`: the `r`-th elementary symmetric function in `a_j + a_j^-1`.
pub fn tau(r: usize, m: usize) -> Result<Polynomial, ChernError> {
    if r > m {
        return Err(ChernError::OutOfRange { r, m });
    }
    let vars = character_vars(m);
    let mut e = vec![Polynomial::one(CoefficientRing::Integers, vars.clone()).into_laurent()];
    for j in 0..m {
        let mut up = vec![0; m];
        up[j] = 1;
        let mut down = vec![0; m];
        down[j] = -1;
        let s = &laurent_monomial(&vars, up) + &laurent_monomial(&vars, down);
        e.push(zero_char(m));
        for k in (1..e.len()).rev() {
            let t = &e[k - 1] * &s;
            e[k] = &e[k] + &t;
        }
    }
    Ok(e.swap_remove(r))
}

/// `tau_m^+` (`positive`) or `tau_m^-`: sum of `a_1^{e_1}..a_m^{e_m}` over
/// sign vectors whose product is `+1` or `-1`.
pub fn tau_pm(positive: bool, m: usize) -> Polynomial {
    let vars = character_vars(m);
    let mut chi = zero_char(m);
    for mask in 0u32..(1 << m) {
        let negs = mask.count_ones();
        if (negs % 2 == 0) != positive {
            continue;
        }
        let exps = (0..m).map(|j| if mask >> j & 1 == 1 { -1 } else { 1 }).collect();
        chi = &chi + &laurent_monomial(&vars, exps);
    }
    chi
}

fn central_binomial_half(k: usize) -> i64 {
    // C(2k, k) / 2 for k >= 1
    let mut c: i64 = 1;
    for i in 0..k {
        c = c * (2 * k - i) as i64 / (i + 1) as i64;
    }
    c / 2
}

/// `chi(lambda_m^+-) = tau_m^+- + sum_{k>=1} C(2k,k)/2 * tau_{m-2k}`.
pub fn lambda_pm_character(positive: bool, m: usize) -> Polynomial {
    let mut chi = tau_pm(positive, m);
    let mut k = 1;
    while 2 * k <= m {
        let t = tau(m - 2 * k, m).expect("index in range");
        chi = &chi + &t.scale_int(central_binomial_half(k));
        k += 1;
    }
    chi
}

/// Character of the `m`-th exterior power, by enumerating `m`-element
/// sub-multisets (index subsets) of the weights.
pub fn exterior_power_character(ws: &WeightSystem, m: usize) -> Result<Polynomial, ChernError> {
    let n = ws.dimension();
    if m > n {
        return Err(ChernError::OutOfRange { r: m, m: n });
    }
    let rank = ws.coords().rank();
    let vars = character_vars(rank);
    let mut chi = zero_char(rank);
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        let mut exps = vec![0i32; rank];
        for &i in &idx {
            for (e, w) in exps.iter_mut().zip(&ws.weights()[i]) {
                *e += *w as i32;
            }
        }
        chi = &chi + &laurent_monomial(&vars, exps);
        // next combination in lexicographic order
        let Some(i) = (0..m).rev().find(|&i| idx[i] < n - m + i) else {
            return Ok(chi);
        };
        idx[i] += 1;
        for j in i + 1..m {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Standard representation of `SO_{2m}` on its torus: weights `+-e_j`.
pub fn standard_so_weights(coords: Arc<CoordinateSystem>) -> Result<WeightSystem, ChernError> {
    let n = coords.spec().variables.len();
    let mut weights = Vec::new();
    for j in 0..n {
        for s in [1, -1] {
            let mut w = vec![0; n];
            w[j] = s;
            weights.push(w);
        }
    }
    WeightSystem::new("standard", coords, &weights)
}
