use std::io::Write;
use std::path::Path;

use faer::Mat;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{dense_apply, dense_apply_real, Tridiagonal};

#[derive(Debug, Clone)]
pub enum Storage {
    DenseReal(Mat<f64>),
    DenseComplex(Mat<Complex64>),
    SparseReal(Tridiagonal<f64>),
    SparseComplex(Tridiagonal<Complex64>),
}

#[derive(Debug, Clone)]
pub struct OperatorMatrix {
    pub storage: Storage,
    pub symmetric: bool,
}

impl OperatorMatrix {
    pub fn dense_real(m: Mat<f64>) -> Self {
        Self { storage: Storage::DenseReal(m), symmetric: true }
    }

    pub fn dense_complex(m: Mat<Complex64>) -> Self {
        Self { storage: Storage::DenseComplex(m), symmetric: true }
    }

    pub fn sparse_real(m: Tridiagonal<f64>) -> Self {
        Self { storage: Storage::SparseReal(m), symmetric: true }
    }

    pub fn dim(&self) -> usize {
        match &self.storage {
            Storage::DenseReal(m) => m.nrows(),
            Storage::DenseComplex(m) => m.nrows(),
            Storage::SparseReal(t) => t.dim(),
            Storage::SparseComplex(t) => t.dim(),
        }
    }

    pub fn storage_name(&self) -> &'static str {
        match &self.storage {
            Storage::DenseReal(_) => "dense-real",
            Storage::DenseComplex(_) => "dense-complex",
            Storage::SparseReal(_) => "sparse-real",
            Storage::SparseComplex(_) => "sparse-complex",
        }
    }

    pub fn is_complex(&self) -> bool {
        matches!(self.storage, Storage::DenseComplex(_) | Storage::SparseComplex(_))
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        match &self.storage {
            Storage::DenseReal(m) => Complex64::new(m[(i, j)], 0.0),
            Storage::DenseComplex(m) => m[(i, j)],
            Storage::SparseReal(t) => Complex64::new(t.get(i, j), 0.0),
            Storage::SparseComplex(t) => t.get(i, j),
        }
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        match &self.storage {
            Storage::DenseReal(m) => dense_apply_real(m, x),
            Storage::DenseComplex(m) => dense_apply(m, x),
            Storage::SparseReal(t) => t.apply(x),
            Storage::SparseComplex(t) => t.apply(x),
        }
    }

    pub fn to_dense_complex(&self) -> Mat<Complex64> {
        let n = self.dim();
        Mat::from_fn(n, n, |i, j| self.get(i, j))
    }

    /// Real part as a dense matrix.
    pub fn to_dense_real(&self) -> Mat<f64> {
        let n = self.dim();
        Mat::from_fn(n, n, |i, j| self.get(i, j).re)
    }

    pub fn as_tridiagonal(&self) -> Option<&Tridiagonal<f64>> {
        match &self.storage {
            Storage::SparseReal(t) => Some(t),
            _ => None,
        }
    }

    /// Largest |A_ij − A_ji|.
    pub fn asymmetry(&self) -> f64 {
        let n = self.dim();
        let mut m = 0.0f64;
        for i in 0..n {
            for j in 0..i {
                m = m.max((self.get(i, j) - self.get(j, i)).norm());
            }
        }
        m
    }

    /// Binary layout: b"SBMAT001", u64 rows, u64 cols, u64 kind (0 real,
    /// 1 complex), then the entries row-major as little-endian f64 (complex
    /// entries as re, im).
    pub fn write_binary(&self, path: &Path) -> Result<()> {
        let n = self.dim();
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        out.write_all(b"SBMAT001")?;
        out.write_all(&(n as u64).to_le_bytes())?;
        out.write_all(&(n as u64).to_le_bytes())?;
        let complex = self.is_complex();
        out.write_all(&(complex as u64).to_le_bytes())?;
        for i in 0..n {
            for j in 0..n {
                let v = self.get(i, j);
                out.write_all(&v.re.to_le_bytes())?;
                if complex {
                    out.write_all(&v.im.to_le_bytes())?;
                }
            }
        }
        out.flush()?;
        Ok(())
    }

    pub fn read_binary(path: &Path) -> Result<Mat<Complex64>> {
        let bytes = std::fs::read(path)?;
        let bad = || Error::InvalidParameter(format!("{} is not an SBMAT001 file", path.display()));
        if bytes.len() < 32 || &bytes[..8] != b"SBMAT001" {
            return Err(bad());
        }
        let word = |k: usize| u64::from_le_bytes(bytes[k..k + 8].try_into().unwrap());
        let (rows, cols, complex) = (word(8) as usize, word(16) as usize, word(24) == 1);
        let per = if complex { 16 } else { 8 };
        if bytes.len() != 32 + rows * cols * per {
            return Err(bad());
        }
        let f = |k: usize| f64::from_le_bytes(bytes[k..k + 8].try_into().unwrap());
        Ok(Mat::from_fn(rows, cols, |i, j| {
            let at = 32 + (i * cols + j) * per;
            Complex64::new(f(at), if complex { f(at + 8) } else { 0.0 })
        }))
    }

    /// Triplets `row,col,re,im` of the nonzero entries.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path).map_err(|e| Error::InvalidParameter(e.to_string()))?;
        let n = self.dim();
        let csv_err = |e: csv::Error| Error::InvalidParameter(e.to_string());
        w.write_record(["row", "col", "re", "im"]).map_err(csv_err)?;
        for i in 0..n {
            for j in 0..n {
                let v = self.get(i, j);
                if v != Complex64::new(0.0, 0.0) {
                    w.write_record([
                        i.to_string(),
                        j.to_string(),
                        format!("{:.17e}", v.re),
                        format!("{:.17e}", v.im),
                    ])
                    .map_err(csv_err)?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }
}
