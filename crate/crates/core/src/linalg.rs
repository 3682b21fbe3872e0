//! Dense exact linear algebra over `Q` or `F_p`.

use num_traits::Zero;

use crate::polyring::{CoefficientRing, Coeff};

/// Row-major matrix with entries in a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: CoefficientRing,
    rows: usize,
    cols: usize,
    data: Vec<Vec<Coeff>>,
}

impl Matrix {
    pub fn zeros(field: CoefficientRing, rows: usize, cols: usize) -> Self {
        assert!(field.is_field(), "linear algebra needs a field, got {field}");
        Self { field, rows, cols, data: vec![vec![Coeff::zero(); cols]; rows] }
    }

    /// Entries are coerced into the field (so `F_2` rows may be given as
    /// integers).
    pub fn from_rows(field: CoefficientRing, cols: usize, rows: Vec<Vec<Coeff>>) -> Self {
        let mut m = Self::zeros(field, 0, cols);
        for r in rows {
            m.push_row(r);
        }
        m
    }

    pub fn push_row(&mut self, row: Vec<Coeff>) {
        assert_eq!(row.len(), self.cols);
        let row = row
            .iter()
            .map(|c| self.field.coerce(c).expect("entry lies in the field"))
            .collect();
        self.data.push(row);
        self.rows += 1;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Coeff {
        &self.data[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Coeff) {
        self.data[r][c] = self.field.coerce(&v).expect("entry lies in the field");
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c][r] = self.data[r][c].clone();
            }
        }
        t
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.data[r][col].is_zero()) else {
                continue;
            };
            m.data.swap(row, p);
            let inv = f.inverse(&m.data[row][col]).expect("nonzero field element");
            for c in col..m.cols {
                m.data[row][c] = f.mul(&m.data[row][c], &inv);
            }
            for r in 0..m.rows {
                if r != row && !m.data[r][col].is_zero() {
                    let factor = m.data[r][col].clone();
                    for c in col..m.cols {
                        let t = f.mul(&factor, &m.data[row][c]);
                        m.data[r][c] = f.sub(&m.data[r][c], &t);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self * v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Coeff>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Coeff::zero(); self.cols];
                v[fc] = self.field.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.field.neg(&r.data[i][fc]);
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Coeff]) -> Option<Vec<Coeff>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.field, 0, self.cols + 1);
        for (row, rhs) in self.data.iter().zip(b) {
            let mut r = row.clone();
            r.push(rhs.clone());
            aug.push_row(r);
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Coeff::zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.data[i][self.cols].clone();
        }
        Some(x)
    }
}
