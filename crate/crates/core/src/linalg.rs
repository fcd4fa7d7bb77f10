//! Tridiagonal storage and factorizations, plus small dense helpers.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use faer::Mat;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub trait Scalar:
    Copy
    + Default
    + Send
    + Sync
    + 'static
    + std::fmt::Debug
    + From<f64>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
{
    fn modulus(self) -> f64;
}

impl Scalar for f64 {
    fn modulus(self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn modulus(self) -> f64 {
        self.norm()
    }
}

/// Square tridiagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal<T> {
    pub lower: Vec<T>,
    pub diag: Vec<T>,
    pub upper: Vec<T>,
}

impl<T: Scalar> Tridiagonal<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            lower: vec![T::default(); n.saturating_sub(1)],
            diag: vec![T::default(); n],
            upper: vec![T::default(); n.saturating_sub(1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Adds v at (i, j), |i − j| ≤ 1.
    pub fn add(&mut self, i: usize, j: usize, v: T) {
        if i == j {
            self.diag[i] += v;
        } else if i == j + 1 {
            self.lower[j] += v;
        } else if j == i + 1 {
            self.upper[i] += v;
        } else {
            panic!("entry ({i}, {j}) outside the tridiagonal band");
        }
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        if i == j {
            self.diag[i]
        } else if i == j + 1 {
            self.lower[j]
        } else if j == i + 1 {
            self.upper[i]
        } else {
            T::default()
        }
    }

    pub fn apply<V>(&self, x: &[V]) -> Vec<V>
    where
        V: Scalar + Mul<T, Output = V>,
    {
        let n = self.dim();
        assert_eq!(x.len(), n);
        let mut y = vec![V::default(); n];
        for i in 0..n {
            let mut s = x[i] * self.diag[i];
            if i > 0 {
                s += x[i - 1] * self.lower[i - 1];
            }
            if i + 1 < n {
                s += x[i + 1] * self.upper[i];
            }
            y[i] = s;
        }
        y
    }

    /// αA + βB.
    pub fn combine(alpha: T, a: &Self, beta: T, b: &Self) -> Self {
        let f = |x: &[T], y: &[T]| x.iter().zip(y).map(|(p, q)| alpha * *p + beta * *q).collect();
        Self { lower: f(&a.lower, &b.lower), diag: f(&a.diag, &b.diag), upper: f(&a.upper, &b.upper) }
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn factor(&self) -> Result<TridiagonalLu<T>> {
        TridiagonalLu::new(self)
    }
}

impl Tridiagonal<f64> {
    pub fn to_complex(&self) -> Tridiagonal<Complex64> {
        let c = |v: &[f64]| v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Tridiagonal { lower: c(&self.lower), diag: c(&self.diag), upper: c(&self.upper) }
    }

    pub fn to_mat(&self) -> Mat<f64> {
        Mat::from_fn(self.dim(), self.dim(), |i, j| self.get(i, j))
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.apply(&vec![1.0; self.dim()])
    }
}

/// LU factorization with partial pivoting, in the layout of LAPACK's gttrf.
#[derive(Debug, Clone)]
pub struct TridiagonalLu<T> {
    dl: Vec<T>,
    d: Vec<T>,
    du: Vec<T>,
    du2: Vec<T>,
    swap: Vec<bool>,
}

impl<T: Scalar> TridiagonalLu<T> {
    pub fn new(a: &Tridiagonal<T>) -> Result<Self> {
        let n = a.dim();
        let mut dl = a.lower.clone();
        let mut d = a.diag.clone();
        let mut du = a.upper.clone();
        let mut du2 = vec![T::default(); n.saturating_sub(2)];
        let mut swap = vec![false; n.saturating_sub(1)];
        let scale = d
            .iter()
            .chain(&dl)
            .chain(&du)
            .fold(0.0f64, |m, v| m.max(v.modulus()));
        for i in 0..n.saturating_sub(1) {
            if d[i].modulus() >= dl[i].modulus() {
                if d[i].modulus() != 0.0 {
                    let fact = dl[i] / d[i];
                    dl[i] = fact;
                    d[i + 1] -= fact * du[i];
                }
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swap[i] = true;
            }
        }
        for (i, v) in d.iter().enumerate() {
            if !(v.modulus() > 1e-14 * scale) {
                return Err(Error::Factorization(format!(
                    "tridiagonal pivot {i} is {:e} (matrix scale {scale:e})",
                    v.modulus()
                )));
            }
        }
        Ok(Self { dl, d, du, du2, swap })
    }

    pub fn solve<V>(&self, b: &[V]) -> Vec<V>
    where
        V: Scalar + Mul<T, Output = V> + Div<T, Output = V>,
    {
        let n = self.d.len();
        let mut x = b.to_vec();
        for i in 0..n.saturating_sub(1) {
            if self.swap[i] {
                let temp = x[i] - x[i + 1] * self.dl[i];
                x[i] = x[i + 1];
                x[i + 1] = temp;
            } else {
                let v = x[i + 1] - x[i] * self.dl[i];
                x[i + 1] = v;
            }
        }
        x[n - 1] = x[n - 1] / self.d[n - 1];
        if n > 1 {
            x[n - 2] = (x[n - 2] - x[n - 1] * self.du[n - 2]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            x[i] = (x[i] - x[i + 1] * self.du[i] - x[i + 2] * self.du2[i]) / self.d[i];
        }
        x
    }
}

/// Cholesky factor L (lower bidiagonal) of a symmetric positive definite
/// tridiagonal matrix.
#[derive(Debug, Clone)]
pub struct TridiagonalCholesky {
    diag: Vec<f64>,
    sub: Vec<f64>,
}

impl TridiagonalCholesky {
    pub fn new(a: &Tridiagonal<f64>) -> Result<Self> {
        let n = a.dim();
        let mut diag = vec![0.0; n];
        let mut sub = vec![0.0; n.saturating_sub(1)];
        for i in 0..n {
            let mut v = a.diag[i];
            if i > 0 {
                sub[i - 1] = a.lower[i - 1] / diag[i - 1];
                v -= sub[i - 1] * sub[i - 1];
            }
            if !(v > 0.0) {
                return Err(Error::Factorization(format!("matrix not positive definite at row {i}")));
            }
            diag[i] = v.sqrt();
        }
        Ok(Self { diag, sub })
    }

    /// x ← L⁻¹ x
    pub fn solve_lower(&self, x: &mut [f64]) {
        for i in 0..x.len() {
            if i > 0 {
                x[i] -= self.sub[i - 1] * x[i - 1];
            }
            x[i] /= self.diag[i];
        }
    }

    /// x ← L⁻ᵀ x
    pub fn solve_upper(&self, x: &mut [f64]) {
        let n = x.len();
        for i in (0..n).rev() {
            if i + 1 < n {
                x[i] -= self.sub[i] * x[i + 1];
            }
            x[i] /= self.diag[i];
        }
    }
}

pub fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// y = A x for a dense complex matrix.
pub fn dense_apply(a: &Mat<Complex64>, x: &[Complex64]) -> Vec<Complex64> {
    let n = a.nrows();
    let m = a.ncols();
    assert_eq!(x.len(), m);
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..m {
        let xj = x[j];
        let col = a.col(j);
        for i in 0..n {
            y[i] += col[i] * xj;
        }
    }
    y
}

/// y = A x for a dense real matrix acting on a complex vector.
pub fn dense_apply_real(a: &Mat<f64>, x: &[Complex64]) -> Vec<Complex64> {
    let n = a.nrows();
    let m = a.ncols();
    assert_eq!(x.len(), m);
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..m {
        let xj = x[j];
        let col = a.col(j);
        for i in 0..n {
            y[i] += xj * col[i];
        }
    }
    y
}
