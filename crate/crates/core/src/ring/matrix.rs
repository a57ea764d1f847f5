use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::{MPoly, Rat};
use crate::error::{Error, Result};

/// Small dense matrix over [`MPoly`], row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<MPoly>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![MPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, MPoly::one());
        }
        m
    }

    /// Builds from rows; panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<MPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| MPoly::int(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: MPoly) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &MPoly)> {
        self.data.iter().enumerate().map(move |(k, p)| (k / self.cols, k % self.cols, p))
    }

    pub fn map<F: FnMut(&MPoly) -> MPoly>(&self, f: F) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_truncated(other, None))
    }

    /// Product keeping only eps-exponents below `cap`.
    pub fn mul_truncated(&self, other: &Matrix, cap: Option<i64>) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = MPoly::zero();
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let t = if a.is_one() {
                        b.clone()
                    } else if b.is_one() {
                        a.clone()
                    } else {
                        a.mul_truncated(b, cap)
                    };
                    acc = &acc + &t;
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for (i, j, p) in self.entries() {
            out.set(j, i, p.clone());
        }
        out
    }

    pub fn trace(&self) -> MPoly {
        (0..self.rows.min(self.cols)).fold(MPoly::zero(), |acc, i| &acc + self.get(i, i))
    }

    /// Determinant by cofactor expansion (intended for the small sizes used here).
    pub fn det(&self) -> MPoly {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        match n {
            0 => MPoly::one(),
            1 => self.get(0, 0).clone(),
            2 => &(self.get(0, 0) * self.get(1, 1)) - &(self.get(0, 1) * self.get(1, 0)),
            _ => {
                let mut acc = MPoly::zero();
                for j in 0..n {
                    if self.get(0, j).is_zero() {
                        continue;
                    }
                    let minor = self.minor(0, j);
                    let t = self.get(0, j) * &minor.det();
                    acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
                }
                acc
            }
        }
    }

    fn minor(&self, r: usize, c: usize) -> Matrix {
        let rows = (0..self.rows)
            .filter(|&i| i != r)
            .map(|i| (0..self.cols).filter(|&j| j != c).map(|j| self.get(i, j).clone()).collect())
            .collect();
        Matrix::from_rows(rows)
    }

    pub fn scale_rat(&self, c: &Rat) -> Matrix {
        self.map(|p| p.scale_rat(c))
    }

    pub fn eps_substitute_power(&self, t: u32) -> Matrix {
        self.map(|p| p.eps_substitute_power(t))
    }

    pub fn eps_reflect(&self) -> Matrix {
        self.map(|p| p.eps_reflect())
    }

    pub fn eval_eps(&self, x: &Rat) -> Result<Matrix> {
        let data = self.data.iter().map(|p| p.eval_eps(x)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn eps_limit(&self) -> Result<Matrix> {
        let data = self.data.iter().map(|p| p.eps_limit()).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    /// Largest eps-exponent over all entries.
    pub fn error_degree(&self) -> Result<i64> {
        self.data.iter().filter_map(|p| p.max_eps_exp()).max().ok_or(Error::ZeroPolynomial)
    }

    pub fn min_eps_exp(&self) -> Option<i64> {
        self.data.iter().filter_map(|p| p.min_eps_exp()).min()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    /// Total number of (monomial, eps-exponent) terms across entries.
    pub fn size(&self) -> usize {
        self.data.iter().map(|p| p.size()).sum()
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.mul_truncated(rhs, None)
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
