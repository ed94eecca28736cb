//! Small dense matrices over a [`Ring`] and row reduction over a [`Field`].

use std::ops::{Index, IndexMut};

use num_traits::Zero;

use crate::ring::{Field, Ring};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<C> {
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl<C: Ring> Matrix<C> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![C::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = C::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> C) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<C>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Matrix<D> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<D: Ring, E>(&self, f: impl Fn(&C) -> Result<D, E>) -> Result<Matrix<D>, E> {
        let data = self.data.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].add_ref(&o[(i, j)]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].sub_ref(&o[(i, j)]))
    }

    pub fn scale(&self, k: &C) -> Self {
        self.map(|c| c.mul_ref(k))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        Matrix::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = C::zero();
            for k in 0..self.cols {
                let a = &self[(i, k)];
                let b = &o[(k, j)];
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add_ref(&a.mul_ref(b));
                }
            }
            acc
        })
    }

    pub fn pow(&self, p: u32) -> Self {
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..p {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Kronecker product `self ⊗ o`.
    pub fn kron(&self, o: &Self) -> Self {
        Matrix::from_fn(self.rows * o.rows, self.cols * o.cols, |i, j| {
            self[(i / o.rows, j / o.cols)].mul_ref(&o[(i % o.rows, j % o.cols)])
        })
    }

    /// Determinant by cofactor expansion; intended for the small matrices used here.
    pub fn det(&self) -> C {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let n = self.rows;
        if n == 0 {
            return C::one();
        }
        if n == 1 {
            return self[(0, 0)].clone();
        }
        let mut acc = C::zero();
        for j in 0..n {
            let a = &self[(0, j)];
            if a.is_zero() {
                continue;
            }
            let minor = Matrix::from_fn(n - 1, n - 1, |r, c| self[(r + 1, if c < j { c } else { c + 1 })].clone());
            let term = a.mul_ref(&minor.det());
            acc = if j % 2 == 0 { acc.add_ref(&term) } else { acc.sub_ref(&term) };
        }
        acc
    }
}

impl<C: Field> Matrix<C> {
    /// Reduced row echelon form; returns the pivot column of each nonzero row.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, col)].try_inv().expect("nonzero pivot");
            for j in col..self.cols {
                let v = self[(r, j)].mul_ref(&inv);
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, col)].is_zero() {
                    continue;
                }
                let f = self[(i, col)].clone();
                for j in col..self.cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let v = self[(i, j)].sub_ref(&f.mul_ref(&self[(r, j)]));
                    self[(i, j)] = v;
                }
            }
            pivots.push(col);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Inverse by Gauss–Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let n = self.rows;
        let mut aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                C::one()
            } else {
                C::zero()
            }
        });
        let piv = aug.rref();
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| aug[(i, j + n)].clone()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<C> Index<(usize, usize)> for Matrix<C> {
    type Output = C;
    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.data[i * self.cols + j]
    }
}

impl<C> IndexMut<(usize, usize)> for Matrix<C> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;
    use num_rational::BigRational;

    fn m(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect())
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.det(), rat(18, 1));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn rref_pivots() {
        let mut a = m(&[&[0, 1, 2], &[0, 2, 4], &[1, 0, 1]]);
        let piv = a.rref();
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(a.row(0), &[rat(1, 1), rat(0, 1), rat(1, 1)]);
    }

    #[test]
    fn kron_of_identities() {
        let i2: Matrix<BigRational> = Matrix::identity(2);
        assert_eq!(i2.kron(&i2), Matrix::identity(4));
    }
}
