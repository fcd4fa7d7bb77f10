use num_complex::Complex64;

/// T_n(x) by the three-term recurrence.
pub fn chebyshev_t(n: usize, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => x,
        _ => {
            let (mut a, mut b) = (1.0, x);
            for _ in 2..=n {
                let c = 2.0 * x * b - a;
                a = b;
                b = c;
            }
            b
        }
    }
}

/// U_n(x) by the three-term recurrence.
pub fn chebyshev_u(n: usize, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0 * x,
        _ => {
            let (mut a, mut b) = (1.0, 2.0 * x);
            for _ in 2..=n {
                let c = 2.0 * x * b - a;
                a = b;
                b = c;
            }
            b
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChebyshevKind {
    First,
    Second,
}

#[derive(Debug, Clone)]
pub struct ChebyshevSeries {
    pub kind: ChebyshevKind,
    pub coefficients: Vec<Complex64>,
}

impl ChebyshevSeries {
    pub fn new(kind: ChebyshevKind, coefficients: Vec<Complex64>) -> Self {
        Self { kind, coefficients }
    }

    pub fn from_real(kind: ChebyshevKind, coefficients: &[f64]) -> Self {
        Self::new(kind, coefficients.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Clenshaw evaluation.
    pub fn eval(&self, x: f64) -> Complex64 {
        let c = &self.coefficients;
        if c.is_empty() {
            return Complex64::new(0.0, 0.0);
        }
        let mut b1 = Complex64::new(0.0, 0.0);
        let mut b2 = Complex64::new(0.0, 0.0);
        for ck in c.iter().skip(1).rev() {
            let b0 = ck + b1 * (2.0 * x) - b2;
            b2 = b1;
            b1 = b0;
        }
        match self.kind {
            ChebyshevKind::First => c[0] + b1 * x - b2,
            ChebyshevKind::Second => c[0] + b1 * (2.0 * x) - b2,
        }
    }

    pub fn eval_direct(&self, x: f64) -> Complex64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(n, c)| {
                c * match self.kind {
                    ChebyshevKind::First => chebyshev_t(n, x),
                    ChebyshevKind::Second => chebyshev_u(n, x),
                }
            })
            .sum()
    }
}

/// Real Chebyshev-T expansion with divided differences, used for
/// cancellation-free chords of parametrized curves.
#[derive(Debug, Clone)]
pub struct RealChebyshev {
    pub coefficients: Vec<f64>,
}

impl RealChebyshev {
    /// Interpolates `f` at `n` Chebyshev points of the first kind.
    pub fn interpolate(n: usize, f: impl Fn(f64) -> f64) -> Self {
        let vals: Vec<f64> = (0..n)
            .map(|j| f((std::f64::consts::PI * (j as f64 + 0.5) / n as f64).cos()))
            .collect();
        Self::from_values(&vals)
    }

    /// Coefficients from values at x_j = cos(π(j + 1/2)/n), j = 0..n.
    pub fn from_values(vals: &[f64]) -> Self {
        let n = vals.len();
        let coefficients = (0..n)
            .map(|m| {
                let s: f64 = vals
                    .iter()
                    .enumerate()
                    .map(|(j, v)| v * (std::f64::consts::PI * m as f64 * (j as f64 + 0.5) / n as f64).cos())
                    .sum();
                s * if m == 0 { 1.0 } else { 2.0 } / n as f64
            })
            .collect();
        Self { coefficients }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let c = &self.coefficients;
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for ck in c.iter().skip(1).rev() {
            let b0 = ck + 2.0 * x * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        c.first().copied().unwrap_or(0.0) + x * b1 - b2
    }

    pub fn derivative(&self) -> Self {
        let c = &self.coefficients;
        let n = c.len();
        if n <= 1 {
            return Self { coefficients: vec![0.0] };
        }
        let mut d = vec![0.0; n + 1];
        for k in (0..n - 1).rev() {
            d[k] = d[k + 2] + 2.0 * (k as f64 + 1.0) * c[k + 1];
        }
        d[0] *= 0.5;
        d.truncate(n - 1);
        Self { coefficients: d }
    }

    /// (f(x) − f(y)) / (x − y), evaluated without forming x − y.
    pub fn divided_difference(&self, x: f64, y: f64) -> f64 {
        let c = &self.coefficients;
        let mut acc = 0.0;
        let (mut d_prev, mut d) = (0.0, 1.0);
        let (mut t_prev, mut t) = (1.0, y);
        for ck in c.iter().skip(1) {
            acc += ck * d;
            let d_next = 2.0 * x * d + 2.0 * t - d_prev;
            let t_next = 2.0 * y * t - t_prev;
            d_prev = d;
            d = d_next;
            t_prev = t;
            t = t_next;
        }
        acc
    }

    /// Trailing coefficient magnitude relative to the largest one.
    pub fn tail(&self, count: usize) -> f64 {
        let max = self.coefficients.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        let n = self.coefficients.len();
        let tail = self.coefficients[n.saturating_sub(count)..]
            .iter()
            .fold(0.0f64, |m, c| m.max(c.abs()));
        if max == 0.0 {
            0.0
        } else {
            tail / max
        }
    }
}
