//! Dense matrices over the rationals with exact elimination.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(x: i64) -> Q {
    BigRational::from_integer(BigInt::from(x))
}

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(k: usize) -> Mat {
        let mut m = Mat::zeros(k, k);
        for i in 0..k {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Q>]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Mat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Mat {
        assert_eq!(entries.len(), rows * cols);
        Mat { rows, cols, data: entries.iter().map(|x| q(*x)).collect() }
    }

    /// The matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<Q>]) -> Mat {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Q) {
        self.data[i * self.cols + j] = x;
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Q>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let y = o.get(k, j);
                    if !y.is_zero() {
                        let v = out.get(i, j) + x * y;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| (0..self.cols).fold(Q::zero(), |acc, j| acc + self.get(i, j) * &v[j])).collect()
    }

    /// `[self | o]`.
    pub fn hstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.rows, o.rows);
        let mut out = Mat::zeros(self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..o.cols {
                out.set(i, self.cols + j, o.get(i, j).clone());
            }
        }
        out
    }

    /// `[self ; o]`.
    pub fn vstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Mat { rows: self.rows + o.rows, cols: self.cols, data }
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, o: &Mat) -> Mat {
        let mut out = Mat::zeros(self.rows + o.rows, self.cols + o.cols);
        out.put_block(0, 0, self);
        out.put_block(self.rows, self.cols, o);
        out
    }

    pub fn put_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Mat {
        let mut out = Mat::zeros(rows.len(), cols.len());
        for (a, i) in rows.clone().enumerate() {
            for (b, j) in cols.clone().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, row * m.cols + j);
                }
            }
            let inv = m.get(row, col).recip();
            for j in col..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row || m.get(i, col).is_zero() {
                    continue;
                }
                let f = m.get(i, col).clone();
                for j in col..m.cols {
                    let v = m.get(i, j) - &f * m.get(row, j);
                    m.set(i, j, v);
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

    /// Basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    /// A maximal linearly independent subset of the columns, as a matrix.
    pub fn column_basis(&self) -> Mat {
        let (_, pivots) = self.rref();
        let cols: Vec<Vec<Q>> = pivots.iter().map(|&j| self.column(j)).collect();
        Mat::from_columns(self.rows, &cols)
    }

    /// Solves `self * X = y` for a matrix `self` of full column rank.
    pub fn solve_full_rank(&self, y: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, y.rows);
        let aug = self.hstack(y);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) || pivots.len() < self.cols {
            return None;
        }
        Some(r.submatrix(0..self.cols, self.cols..self.cols + y.cols))
    }

    /// Columns of `self` (assumed independent) followed by standard basis
    /// vectors completing them to a basis; returns only the added vectors.
    pub fn complement(&self) -> Mat {
        let mut cur = self.clone();
        let mut rank = cur.rank();
        let mut added = Vec::new();
        for k in 0..self.rows {
            if rank == self.rows {
                break;
            }
            let mut e = vec![Q::zero(); self.rows];
            e[k] = Q::one();
            let cand = cur.hstack(&Mat::from_columns(self.rows, std::slice::from_ref(&e)));
            let r = cand.rank();
            if r > rank {
                cur = cand;
                rank = r;
                added.push(e);
            }
        }
        Mat::from_columns(self.rows, &added)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel() {
        let m = Mat::from_i64(3, 3, &[1, 2, 3, 2, 4, 6, 1, 0, 1]);
        assert_eq!(m.rank(), 2);
        let k = m.nullspace();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
        assert_eq!(Mat::zeros(2, 3).rank(), 0);
        assert_eq!(Mat::identity(4).rank(), 4);
    }

    #[test]
    fn solving_and_complements() {
        let b = Mat::from_i64(3, 2, &[1, 0, 1, 1, 0, 1]);
        let y = Mat::from_i64(3, 1, &[2, 5, 3]);
        let x = b.solve_full_rank(&y).unwrap();
        assert_eq!(b.mul(&x), y);
        assert!(b.solve_full_rank(&Mat::from_i64(3, 1, &[1, 0, 0])).is_none());
        let c = b.complement();
        assert_eq!(c.cols(), 1);
        assert_eq!(b.hstack(&c).rank(), 3);
    }

    #[test]
    fn stacking() {
        let a = Mat::from_i64(1, 2, &[1, 2]);
        let b = Mat::from_i64(1, 2, &[3, 4]);
        assert_eq!(a.vstack(&b), Mat::from_i64(2, 2, &[1, 2, 3, 4]));
        assert_eq!(a.hstack(&b), Mat::from_i64(1, 4, &[1, 2, 3, 4]));
        assert_eq!(a.block_diag(&b).rows(), 2);
        assert_eq!(a.transpose().mul(&a), Mat::from_i64(2, 2, &[1, 2, 2, 4]));
    }
}
