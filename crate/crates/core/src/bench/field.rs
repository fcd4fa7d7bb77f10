use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::run::{write_atomic, Problem};
use super::scenario::RhsSpec;
use crate::assembly::Weight;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::quadrature::gauss_legendre;
use crate::specfun::green_radial_derivative;
use crate::specfun::kernel::green_unchecked;

/// Points closer than this to the arc are masked.
pub const MASK_DISTANCE: f64 = 1e-3;

const GAUSS_POINTS: usize = 8;
const MAX_DEPTH: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Grid {
    pub fn point(&self, i: usize, j: usize) -> Point {
        let f = |lo: f64, hi: f64, n: usize, i: usize| {
            if n == 1 {
                0.5 * (lo + hi)
            } else {
                lo + (hi - lo) * i as f64 / (n - 1) as f64
            }
        };
        [f(self.xmin, self.xmax, self.nx, i), f(self.ymin, self.ymax, self.ny, j)]
    }
}

/// "xmin,xmax,ymin,ymax,nx,ny"
impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = || Error::InvalidParameter(format!("grid '{s}' is not xmin,xmax,ymin,ymax,nx,ny"));
        if parts.len() != 6 {
            return Err(bad());
        }
        let f = |i: usize| parts[i].parse::<f64>().map_err(|_| bad());
        let u = |i: usize| parts[i].parse::<usize>().map_err(|_| bad());
        let g = Grid { xmin: f(0)?, xmax: f(1)?, ymin: f(2)?, ymax: f(3)?, nx: u(4)?, ny: u(5)? };
        if g.nx == 0 || g.ny == 0 || !(g.xmax >= g.xmin) || !(g.ymax >= g.ymin) {
            return Err(bad());
        }
        Ok(g)
    }
}

/// Row-major (y outer, x inner) field samples; masked points are None.
#[derive(Debug, Clone)]
pub struct FieldMap {
    pub grid: Grid,
    pub scattered: Vec<Option<Complex64>>,
    pub total: Vec<Option<Complex64>>,
}

/// Scattered field of a solved density: −S_kλ for Dirichlet data and the
/// double layer +D_kμ for Neumann data.
pub struct FieldEvaluator<'a> {
    problem: &'a Problem,
    density: &'a [Complex64],
}

impl<'a> FieldEvaluator<'a> {
    pub fn new(problem: &'a Problem, density: &'a [Complex64]) -> Result<Self> {
        if density.len() != problem.space.dof_count() {
            return Err(Error::Dimension(density.len(), problem.space.dof_count()));
        }
        Ok(Self { problem, density })
    }

    /// Integrand of the layer potential at local offset `off` of panel `p`,
    /// per unit of the integration variable.
    fn integrand(&self, z: Point, p: usize, off: f64) -> Complex64 {
        let space = &self.problem.space;
        let k = self.problem.k;
        let half = 0.5 * space.arc.length();
        let nd = space.node(p, off);
        let [i, j] = space.dofs(p);
        let c = self.density[i] * nd.phi[0] + self.density[j] * nd.phi[1];
        let d = [nd.point[0] - z[0], nd.point[1] - z[1]];
        let r = d[0].hypot(d[1]);
        if r == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        match space.weight {
            // λ dσ = α dτ
            Weight::InvOmega => -green_unchecked(k, r) * c,
            Weight::Unit => -green_unchecked(k, r) * c * half,
            // μ dσ = (L/2)² sin²τ β dτ
            Weight::Omega => {
                let dn = (d[0] * nd.normal[0] + d[1] * nd.normal[1]) / r;
                green_radial_derivative(k, r) * dn * c * (half * half * nd.s * nd.s)
            }
        }
    }

    fn segment(&self, z: Point, p: usize, a: f64, b: f64, depth: usize) -> Complex64 {
        let space = &self.problem.space;
        let pa = space.node(p, a).point;
        let pb = space.node(p, b).point;
        let pm = space.node(p, 0.5 * (a + b)).point;
        let len = (pa[0] - pb[0]).hypot(pa[1] - pb[1]).max(1e-300);
        let dist = [pa, pb, pm].iter().map(|q| (q[0] - z[0]).hypot(q[1] - z[1])).fold(f64::INFINITY, f64::min);
        if dist > 2.0 * len || depth >= MAX_DEPTH {
            let gl = gauss_legendre(GAUSS_POINTS);
            let h = 0.5 * (b - a);
            return gl
                .nodes
                .iter()
                .zip(&gl.weights)
                .map(|(x, w)| self.integrand(z, p, a + h * (x + 1.0)) * (h * w))
                .sum();
        }
        let m = 0.5 * (a + b);
        self.segment(z, p, a, m, depth + 1) + self.segment(z, p, m, b, depth + 1)
    }

    /// Scattered field at z, without masking.
    pub fn scattered(&self, z: Point) -> Complex64 {
        let space = &self.problem.space;
        (0..space.panels()).map(|p| self.segment(z, p, 0.0, space.width(p), 0)).sum()
    }

    pub fn incident(&self, z: Point) -> Option<Complex64> {
        match self.problem.scenario.rhs {
            RhsSpec::PlaneWave { angle } => {
                let k = self.problem.k;
                Some(Complex64::from_polar(1.0, k * (angle.cos() * z[0] + angle.sin() * z[1])))
            }
            _ => None,
        }
    }
}

/// Distance from z to the arc, measured on a fine polyline.
fn distance_to_arc(poly: &[Point], z: Point) -> f64 {
    poly.windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let ab = [b[0] - a[0], b[1] - a[1]];
            let az = [z[0] - a[0], z[1] - a[1]];
            let l2 = ab[0] * ab[0] + ab[1] * ab[1];
            let s = if l2 > 0.0 { ((az[0] * ab[0] + az[1] * ab[1]) / l2).clamp(0.0, 1.0) } else { 0.0 };
            (az[0] - s * ab[0]).hypot(az[1] - s * ab[1])
        })
        .fold(f64::INFINITY, f64::min)
}

fn polyline(problem: &Problem) -> Vec<Point> {
    let space = &problem.space;
    let mut pts = Vec::new();
    for p in 0..space.panels() {
        let h = space.width(p);
        for i in 0..8 {
            pts.push(space.node(p, h * i as f64 / 8.0).point);
        }
    }
    pts.push(space.node(space.panels() - 1, space.width(space.panels() - 1)).point);
    pts
}

/// Scattered and total field on a grid; points within 1e−3 of the arc are
/// masked.
pub fn field_map(problem: &Problem, density: &[Complex64], grid: &Grid) -> Result<FieldMap> {
    let ev = FieldEvaluator::new(problem, density)?;
    let poly = polyline(problem);
    let mut scattered = Vec::with_capacity(grid.nx * grid.ny);
    let mut total = Vec::with_capacity(grid.nx * grid.ny);
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            let z = grid.point(i, j);
            if distance_to_arc(&poly, z) < MASK_DISTANCE {
                scattered.push(None);
                total.push(None);
                continue;
            }
            let u = ev.scattered(z);
            scattered.push(Some(u));
            total.push(Some(u + ev.incident(z).unwrap_or_default()));
        }
    }
    Ok(FieldMap { grid: *grid, scattered, total })
}

impl FieldMap {
    /// "SBGRID01", u64 nx, u64 ny, f64 xmin, xmax, ymin, ymax, then the
    /// total field as (re, im) pairs, row-major with x fastest; masked points
    /// are NaN. All little-endian.
    pub fn write_binary(&self, path: &Path) -> Result<()> {
        let mut buf: Vec<u8> = Vec::with_capacity(48 + 16 * self.total.len());
        buf.write_all(b"SBGRID01")?;
        buf.write_all(&(self.grid.nx as u64).to_le_bytes())?;
        buf.write_all(&(self.grid.ny as u64).to_le_bytes())?;
        for v in [self.grid.xmin, self.grid.xmax, self.grid.ymin, self.grid.ymax] {
            buf.write_all(&v.to_le_bytes())?;
        }
        for v in &self.total {
            let c = v.unwrap_or(Complex64::new(f64::NAN, f64::NAN));
            buf.write_all(&c.re.to_le_bytes())?;
            buf.write_all(&c.im.to_le_bytes())?;
        }
        write_atomic(path, &buf)
    }

    pub fn read_binary(path: &Path) -> Result<(Grid, Vec<Complex64>)> {
        let bytes = std::fs::read(path)?;
        let bad = || Error::InvalidParameter(format!("{} is not a grid file", path.display()));
        if bytes.len() < 56 || &bytes[..8] != b"SBGRID01" {
            return Err(bad());
        }
        let u = |o: usize| u64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
        let f = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
        let grid = Grid { nx: u(8) as usize, ny: u(16) as usize, xmin: f(24), xmax: f(32), ymin: f(40), ymax: f(48) };
        let count = grid.nx * grid.ny;
        if bytes.len() != 56 + 16 * count {
            return Err(bad());
        }
        let values = (0..count).map(|i| Complex64::new(f(56 + 16 * i), f(64 + 16 * i))).collect();
        Ok((grid, values))
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("x,y,scattered_re,scattered_im,total_re,total_im\n");
        for j in 0..self.grid.ny {
            for i in 0..self.grid.nx {
                let z = self.grid.point(i, j);
                let idx = j * self.grid.nx + i;
                let c = |v: Option<Complex64>| match v {
                    Some(c) => format!("{:.10e},{:.10e}", c.re, c.im),
                    None => "nan,nan".into(),
                };
                s.push_str(&format!("{:.6},{:.6},{},{}\n", z[0], z[1], c(self.scattered[idx]), c(self.total[idx])));
            }
        }
        s
    }
}
