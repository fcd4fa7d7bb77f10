use faer::linalg::solvers::{PartialPivLu, Solve};
use faer::Mat;
use num_complex::Complex64;

use crate::assembly::{OperatorMatrix, Storage};
use crate::error::{Error, Result};
use crate::linalg::TridiagonalLu;

/// Operation counts of one application.
#[derive(Debug, Clone, Copy, Default, PartialEq, serde::Serialize)]
pub struct Cost {
    pub dense_matvecs: usize,
    pub dense_solves: usize,
    pub sparse_matvecs: usize,
    pub sparse_solves: usize,
    /// Estimated complex multiply-adds.
    pub flops: f64,
}

impl std::ops::Add for Cost {
    type Output = Cost;
    fn add(self, o: Cost) -> Cost {
        Cost {
            dense_matvecs: self.dense_matvecs + o.dense_matvecs,
            dense_solves: self.dense_solves + o.dense_solves,
            sparse_matvecs: self.sparse_matvecs + o.sparse_matvecs,
            sparse_solves: self.sparse_solves + o.sparse_solves,
            flops: self.flops + o.flops,
        }
    }
}

pub trait LinearOperator: Send + Sync {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[Complex64]) -> Vec<Complex64>;
    fn cost(&self) -> Cost;
}

impl LinearOperator for OperatorMatrix {
    fn dim(&self) -> usize {
        OperatorMatrix::dim(self)
    }

    fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        OperatorMatrix::apply(self, x)
    }

    fn cost(&self) -> Cost {
        let n = self.dim() as f64;
        match self.storage {
            Storage::DenseReal(_) | Storage::DenseComplex(_) => {
                Cost { dense_matvecs: 1, flops: n * n, ..Default::default() }
            }
            _ => Cost { sparse_matvecs: 1, flops: 3.0 * n, ..Default::default() },
        }
    }
}

#[derive(Debug, Clone)]
pub struct Identity(pub usize);

impl LinearOperator for Identity {
    fn dim(&self) -> usize {
        self.0
    }

    fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        x.to_vec()
    }

    fn cost(&self) -> Cost {
        Cost::default()
    }
}

/// x ↦ A⁻¹x for a real tridiagonal A.
#[derive(Debug, Clone)]
pub struct TridiagonalSolve {
    lu: TridiagonalLu<f64>,
    n: usize,
}

impl TridiagonalSolve {
    pub fn new(m: &OperatorMatrix) -> Result<Self> {
        let t = m
            .as_tridiagonal()
            .ok_or_else(|| Error::InvalidParameter("expected a sparse real matrix".into()))?;
        Ok(Self { lu: t.factor()?, n: t.dim() })
    }
}

impl LinearOperator for TridiagonalSolve {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.lu.solve(x)
    }

    fn cost(&self) -> Cost {
        Cost { sparse_solves: 1, flops: 5.0 * self.n as f64, ..Default::default() }
    }
}

/// x ↦ A⁻¹x for a dense complex A, factorized once.
pub struct DenseInverse {
    lu: PartialPivLu<Complex64>,
    n: usize,
}

impl DenseInverse {
    pub fn new(a: &Mat<Complex64>) -> Result<Self> {
        let n = a.nrows();
        let lu = a.partial_piv_lu();
        // cheap condition check: solve against a fixed vector and look for blow-up
        let probe = Mat::<Complex64>::from_fn(n, 1, |i, _| Complex64::new(1.0, (i % 7) as f64 * 0.1));
        let x = lu.solve(&probe);
        let xmax = (0..n).map(|i| x[(i, 0)].norm()).fold(0.0, f64::max);
        let amax = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm())
            .fold(0.0, f64::max);
        if !xmax.is_finite() || xmax * amax > 1e15 {
            return Err(Error::Factorization(format!(
                "dense matrix is numerically singular (condition estimate {:e})",
                xmax * amax
            )));
        }
        Ok(Self { lu, n })
    }
}

impl LinearOperator for DenseInverse {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let b = Mat::<Complex64>::from_fn(self.n, 1, |i, _| x[i]);
        let y = self.lu.solve(&b);
        (0..self.n).map(|i| y[(i, 0)]).collect()
    }

    fn cost(&self) -> Cost {
        let n = self.n as f64;
        Cost { dense_solves: 1, flops: n * n, ..Default::default() }
    }
}

/// Product of operators, applied right to left: the last entry acts first.
pub struct Product(pub Vec<Box<dyn LinearOperator>>);

impl LinearOperator for Product {
    fn dim(&self) -> usize {
        self.0[0].dim()
    }

    fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut v = x.to_vec();
        for op in self.0.iter().rev() {
            v = op.apply(&v);
        }
        v
    }

    fn cost(&self) -> Cost {
        self.0.iter().fold(Cost::default(), |c, op| c + op.cost())
    }
}

/// c·A.
pub struct Scaled(pub Complex64, pub Box<dyn LinearOperator>);

impl LinearOperator for Scaled {
    fn dim(&self) -> usize {
        self.1.dim()
    }

    fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.1.apply(x).into_iter().map(|v| v * self.0).collect()
    }

    fn cost(&self) -> Cost {
        self.1.cost()
    }
}

/// Dense matrix of a linear operator, column by column.
pub fn to_dense(op: &dyn LinearOperator) -> Mat<Complex64> {
    let n = op.dim();
    let mut m = Mat::<Complex64>::zeros(n, n);
    let mut e = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        e[j] = Complex64::new(1.0, 0.0);
        let col = op.apply(&e);
        for i in 0..n {
            m[(i, j)] = col[i];
        }
        e[j] = Complex64::new(0.0, 0.0);
    }
    m
}
