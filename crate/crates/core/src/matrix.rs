//! Dense matrices over F_p with exact Gaussian elimination.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GfMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl GfMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        GfMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Build from row vectors. Entries are reduced mod p; ragged input is an error.
    pub fn from_rows<R: AsRef<[u8]>>(field: Field, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::dim(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            data.extend(r.iter().map(|&v| v % field.order()));
        }
        Ok(GfMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Build from signed integers, reducing into the field.
    pub fn from_i64_rows(field: Field, rows: &[Vec<i64>]) -> Result<Self> {
        let reduced: Vec<Vec<u8>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.reduce(v)).collect())
            .collect();
        Self::from_rows(field, &reduced)
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v % self.field.order();
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::dim(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.field.order() as u32;
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0u32;
                for l in 0..self.cols {
                    acc += self.get(i, l) as u32 * other.get(l, j) as u32;
                }
                out.set(i, j, (acc % p) as u8);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Reduced row-echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("pivot is non-zero");
            for j in 0..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r {
                    let factor = m.get(i, c);
                    if factor != 0 {
                        for j in 0..m.cols {
                            let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                            m.set(i, j, v);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Row rank over F_p.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<u8>> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u8; self.cols];
                v[fc] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(i, fc));
                }
                v
            })
            .collect()
    }

    /// Whether `v` lies in the row space.
    pub fn row_space_contains(&self, v: &[u8]) -> bool {
        let mut rows = self.row_vecs();
        let before = self.rank();
        rows.push(v.to_vec());
        match Self::from_rows(self.field, &rows) {
            Ok(m) => m.rank() == before,
            Err(_) => false,
        }
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Result<u8> {
        if self.rows != self.cols {
            return Err(Error::dim("determinant of a non-square matrix"));
        }
        let f = self.field;
        let mut m = self.clone();
        let mut det = 1u8;
        for c in 0..m.cols {
            let Some(pr) = (c..m.rows).find(|&i| m.get(i, c) != 0) else {
                return Ok(0);
            };
            if pr != c {
                m.swap_rows(pr, c);
                det = f.neg(det);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv).expect("non-zero pivot");
            for i in c + 1..m.rows {
                let factor = f.mul(m.get(i, c), inv);
                if factor != 0 {
                    for j in c..m.cols {
                        let v = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                        m.set(i, j, v);
                    }
                }
            }
        }
        Ok(det)
    }

    /// Sub-matrix made of the listed rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c));
            }
        }
        m
    }
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GfMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: String = self.row(r).iter().map(|d| char::from(b'0' + d)).collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(GfMatrix::identity(Field::BINARY, 3).rank(), 3);
        assert_eq!(GfMatrix::zeros(Field::BINARY, 4, 6).rank(), 0);
        let five: Vec<Vec<u8>> = ["1100000101", "0110010010", "0011001001", "1001010100"]
            .iter()
            .map(|s| s.bytes().map(|b| b - b'0').collect())
            .collect();
        assert_eq!(GfMatrix::from_rows(Field::BINARY, &five).unwrap().rank(), 4);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m = GfMatrix::from_rows(Field::TERNARY, &[vec![1, 2, 0, 1], vec![0, 1, 1, 2]]).unwrap();
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            let col = GfMatrix::from_rows(Field::TERNARY, &[v]).unwrap().transpose();
            assert!(m.mul(&col).unwrap().is_zero());
        }
    }

    #[test]
    fn determinant_and_membership() {
        let m = GfMatrix::from_rows(Field::TERNARY, &[vec![1, 1], vec![1, 2]]).unwrap();
        assert_eq!(m.determinant().unwrap(), 1);
        let s = GfMatrix::from_rows(Field::TERNARY, &[vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(s.determinant().unwrap(), 0);
        assert!(s.row_space_contains(&[2, 1]));
        assert!(!s.row_space_contains(&[1, 1]));
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(GfMatrix::from_rows(Field::BINARY, &[vec![1, 0], vec![1]]).is_err());
    }
}
