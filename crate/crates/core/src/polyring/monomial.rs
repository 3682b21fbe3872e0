use super::VarSet;

/// An exponent vector together with its weighted degree.
///
/// The derived ordering compares the weighted degree first and then the
/// exponents lexicographically (first variable largest): graded-lex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: i64,
    exps: Vec<i32>,
}

impl Monomial {
    pub fn new(exps: Vec<i32>, vars: &VarSet) -> Self {
        debug_assert_eq!(exps.len(), vars.len());
        let degree = exps
            .iter()
            .zip(vars.degrees())
            .map(|(&e, &d)| e as i64 * d)
            .sum();
        Self { degree, exps }
    }

    pub fn one(n: usize) -> Self {
        Self { degree: 0, exps: vec![0; n] }
    }

    pub fn var(i: usize, vars: &VarSet) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[i] = 1;
        Self { degree: vars.degree(i), exps }
    }

    pub fn exps(&self) -> &[i32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> i32 {
        self.exps[i]
    }

    /// Weighted (Chow) degree.
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn total_degree(&self) -> i64 {
        self.exps.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn has_negative(&self) -> bool {
        self.exps.iter().any(|&e| e < 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        self.divides(other).then(|| Self {
            degree: other.degree - self.degree,
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn lcm(&self, other: &Self, vars: &VarSet) -> Self {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        Self::new(exps, vars)
    }

    pub fn coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// The same exponents with variable `i` removed (its degree subtracted).
    pub(crate) fn drop_var(&self, i: usize, var_degree: i64) -> Self {
        let mut exps = self.exps.clone();
        let e = exps.remove(i);
        Self { degree: self.degree - e as i64 * var_degree, exps }
    }

    pub fn display(&self, vars: &VarSet) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| {
                if e == 1 {
                    vars.name(i).to_string()
                } else {
                    format!("{}^{}", vars.name(i), e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// All exponent vectors of weighted degree exactly `degree` in variables of
/// the given positive degrees, in ascending monomial order.
pub fn monomials_of_degree(vars: &VarSet, degree: i64) -> Vec<Monomial> {
    fn rec(degrees: &[i64], i: usize, left: i64, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if i == degrees.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let max = left / degrees[i];
        for e in 0..=max {
            cur.push(e as i32);
            rec(degrees, i + 1, left - e * degrees[i], cur, out);
            cur.pop();
        }
    }
    if degree < 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(vars.degrees(), 0, degree, &mut Vec::new(), &mut out);
    let mut monos: Vec<Monomial> = out.into_iter().map(|e| Monomial::new(e, vars)).collect();
    monos.sort();
    monos
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let v = VarSet::new([("a", 1), ("b", 1)]).unwrap();
        let a2 = Monomial::new(vec![2, 0], &v);
        let ab = Monomial::new(vec![1, 1], &v);
        let b3 = Monomial::new(vec![0, 3], &v);
        assert!(a2 > ab);
        assert!(b3 > a2);
    }

    #[test]
    fn weighted_enumeration_counts() {
        // c2^e c4^a c6^b c7^k of degree 7: only c7
        let v = VarSet::new([("c2", 2), ("c4", 4), ("c6", 6), ("c7", 7)]).unwrap();
        let m = monomials_of_degree(&v, 7);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].exps(), &[0, 0, 0, 1]);
        // degree 8: c2^4, c2^2 c4, c4^2, c2 c6
        assert_eq!(monomials_of_degree(&v, 8).len(), 4);
        assert_eq!(monomials_of_degree(&v, 0).len(), 1);
        assert!(monomials_of_degree(&v, 1).is_empty());
    }

    #[test]
    fn division_and_lcm() {
        let v = VarSet::uniform(["x", "y"]).unwrap();
        let m = Monomial::new(vec![2, 1], &v);
        let n = Monomial::new(vec![1, 3], &v);
        assert_eq!(m.lcm(&n, &v).exps(), &[2, 3]);
        assert!(!m.divides(&n));
        let q = Monomial::new(vec![1, 0], &v).quotient_of(&m).unwrap();
        assert_eq!(q.exps(), &[1, 1]);
        assert_eq!(q.degree(), 2);
    }
}
