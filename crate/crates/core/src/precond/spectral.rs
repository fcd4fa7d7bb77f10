use faer::{Mat, Side};
use num_complex::Complex64;

use super::operator::{Cost, LinearOperator};
use crate::error::{Error, Result};
use crate::linalg::{Tridiagonal, TridiagonalCholesky};

/// Generalized eigenpairs X V = M V Λ with Vᵀ M V = I, eigenvalues ascending.
pub struct PencilEigen {
    pub values: Vec<f64>,
    pub vectors: Mat<f64>,
}

pub fn pencil_eigen(x: &Tridiagonal<f64>, m: &Tridiagonal<f64>) -> Result<PencilEigen> {
    let n = x.dim();
    if m.dim() != n {
        return Err(Error::Dimension(n, m.dim()));
    }
    let l = TridiagonalCholesky::new(m)?;
    // C = L⁻¹ X L⁻ᵀ = L⁻¹ (L⁻¹ X)ᵀ
    let mut y = Mat::<f64>::zeros(n, n);
    let mut col = vec![0.0; n];
    for j in 0..n {
        col.iter_mut().for_each(|v| *v = 0.0);
        for i in j.saturating_sub(1)..(j + 2).min(n) {
            col[i] = x.get(i, j);
        }
        l.solve_lower(&mut col);
        for i in 0..n {
            y[(j, i)] = col[i];
        }
    }
    let mut c = Mat::<f64>::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            col[i] = y[(i, j)];
        }
        l.solve_lower(&mut col);
        for i in 0..n {
            c[(i, j)] = col[i];
        }
    }
    drop(y);
    for j in 0..n {
        for i in 0..j {
            let s = 0.5 * (c[(i, j)] + c[(j, i)]);
            c[(i, j)] = s;
            c[(j, i)] = s;
        }
    }
    let eig = c
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Factorization(format!("symmetric eigensolver: {e:?}")))?;
    drop(c);
    let s = eig.S();
    let values: Vec<f64> = (0..n).map(|i| s[i]).collect();
    let u = eig.U();
    let mut vectors = Mat::<f64>::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            col[i] = u[(i, j)];
        }
        l.solve_upper(&mut col);
        for i in 0..n {
            vectors[(i, j)] = col[i];
        }
    }
    Ok(PencilEigen { values, vectors })
}

fn check_nonnegative(values: &[f64]) -> Result<()> {
    let top = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    match values.iter().find(|v| **v < -1e-10 * top) {
        Some(v) => Err(Error::NegativeEigenvalue(*v)),
        None => Ok(()),
    }
}

fn power(lambda: f64, exponent: f64) -> f64 {
    let l = lambda.max(0.0);
    if l == 0.0 {
        0.0
    } else {
        l.powf(exponent)
    }
}

/// Galerkin matrix [X^e]_p = M V f(Λ) Vᵀ M, f(λ) = λ^e, zero eigenvalues mapped to 0.
pub fn build_spectral_sqrt(x: &Tridiagonal<f64>, m: &Tridiagonal<f64>, exponent: f64) -> Result<Mat<f64>> {
    if exponent != 0.5 && exponent != -0.5 {
        return Err(Error::InvalidParameter(format!("exponent must be ±1/2, got {exponent}")));
    }
    let eig = pencil_eigen(x, m)?;
    check_nonnegative(&eig.values)?;
    let n = x.dim();
    // W = M V
    let mut w = Mat::<f64>::zeros(n, n);
    let mut col = vec![0.0; n];
    for j in 0..n {
        for i in 0..n {
            col[i] = eig.vectors[(i, j)];
        }
        let mc = m.apply(&col);
        for i in 0..n {
            w[(i, j)] = mc[i];
        }
    }
    let f: Vec<f64> = eig.values.iter().map(|&l| power(l, exponent)).collect();
    let wf = Mat::<f64>::from_fn(n, n, |i, j| w[(i, j)] * f[j]);
    Ok(&wf * w.transpose())
}

/// x ↦ V diag(f) Vᵀ x + c (uᵀx) u, applied in factored form.
pub struct SpectralMap {
    vectors: Mat<f64>,
    f: Vec<Complex64>,
    rank_one: Option<(Vec<f64>, f64)>,
}

impl SpectralMap {
    pub fn new(eig: PencilEigen, f: impl Fn(f64) -> Complex64) -> Self {
        let f = eig.values.iter().map(|&l| f(l)).collect();
        Self { vectors: eig.vectors, f, rank_one: None }
    }

    pub fn with_rank_one(mut self, u: Vec<f64>, c: f64) -> Self {
        self.rank_one = Some((u, c));
        self
    }

    /// 2 V Λ^{±1/2} Vᵀ for a positive semidefinite pencil.
    pub fn power(x: &Tridiagonal<f64>, m: &Tridiagonal<f64>, exponent: f64, scale: f64) -> Result<Self> {
        let eig = pencil_eigen(x, m)?;
        check_nonnegative(&eig.values)?;
        Ok(Self::new(eig, |l| Complex64::new(scale * power(l, exponent), 0.0)))
    }
}

impl LinearOperator for SpectralMap {
    fn dim(&self) -> usize {
        self.vectors.nrows()
    }

    fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        let v = &self.vectors;
        let mut coef = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            let c = v.col(j);
            let mut s = Complex64::new(0.0, 0.0);
            for i in 0..n {
                s += x[i] * c[i];
            }
            coef[j] = s * self.f[j];
        }
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            let c = v.col(j);
            let a = coef[j];
            for i in 0..n {
                y[i] += a * c[i];
            }
        }
        if let Some((u, c)) = &self.rank_one {
            let s: Complex64 = u.iter().zip(x).map(|(a, b)| b * *a).sum::<Complex64>() * *c;
            for (yi, ui) in y.iter_mut().zip(u) {
                *yi += s * *ui;
            }
        }
        y
    }

    fn cost(&self) -> Cost {
        let n = self.dim() as f64;
        Cost { dense_matvecs: 2, flops: 2.0 * n * n, ..Default::default() }
    }
}
