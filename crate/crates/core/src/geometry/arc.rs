use std::f64::consts::PI;
use std::sync::Arc as Shared;

use serde::{Deserialize, Serialize};

use super::spline::CubicSpline;
use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;
use crate::specfun::RealChebyshev;

pub type Point = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ArcKind {
    FlatSegment,
    Spiral,
    VShape { angle: f64 },
    Custom,
}

type CurveFn = Shared<dyn Fn(f64) -> Point + Send + Sync>;

/// A parametrized curve that is not (yet) constant speed.
///
/// `breaks` lists the parameters where the curve may fail to be smooth,
/// including both endpoints.
#[derive(Clone)]
pub struct RawCurve {
    pub kind: ArcKind,
    pub breaks: Vec<f64>,
    pub point: CurveFn,
    pub derivative: CurveFn,
}

impl std::fmt::Debug for RawCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RawCurve").field("kind", &self.kind).field("breaks", &self.breaks).finish()
    }
}

impl RawCurve {
    pub fn spiral() -> Self {
        let point = |u: f64| {
            let e = (0.4 * (u - 0.2)).exp();
            let a = 2.0 * (u - 0.2);
            [e * a.cos(), e * a.sin()]
        };
        let derivative = |u: f64| {
            let e = (0.4 * (u - 0.2)).exp();
            let (s, c) = (2.0 * (u - 0.2)).sin_cos();
            [e * (0.4 * c - 2.0 * s), e * (0.4 * s + 2.0 * c)]
        };
        Self {
            kind: ArcKind::Spiral,
            breaks: vec![-1.0, 1.0],
            point: Shared::new(point),
            derivative: Shared::new(derivative),
        }
    }

    /// Cubic spline through samples; the parameter range is mapped to [−1, 1].
    pub fn from_samples(t: &[f64], x: &[f64], y: &[f64]) -> Result<Self> {
        if t.len() < 3 || x.len() != t.len() || y.len() != t.len() {
            return Err(Error::InvalidParameter("need at least 3 samples of (t, x, y)".into()));
        }
        if t.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameter("sample parameters must be strictly increasing".into()));
        }
        let (t0, t1) = (t[0], t[t.len() - 1]);
        let u: Vec<f64> = t.iter().map(|v| -1.0 + 2.0 * (v - t0) / (t1 - t0)).collect();
        let sx = Shared::new(CubicSpline::natural(&u, x));
        let sy = Shared::new(CubicSpline::natural(&u, y));
        let (px, py) = (sx.clone(), sy.clone());
        let raw = Self {
            kind: ArcKind::Custom,
            breaks: vec![-1.0, 1.0],
            point: Shared::new(move |u| [px.eval(u), py.eval(u)]),
            derivative: Shared::new(move |u| [sx.derivative(u), sy.derivative(u)]),
        };
        raw.check_simple(512)?;
        Ok(raw)
    }

    /// Rejects curves whose sampled polyline has two intersecting
    /// non-adjacent segments.
    pub fn check_simple(&self, segments: usize) -> Result<()> {
        let (a, b) = (self.breaks[0], self.breaks[self.breaks.len() - 1]);
        let pts: Vec<Point> = (0..=segments)
            .map(|i| (self.point)(a + (b - a) * i as f64 / segments as f64))
            .collect();
        for i in 0..segments {
            for j in (i + 2)..segments {
                if segments_intersect(pts[i], pts[i + 1], pts[j], pts[j + 1]) {
                    return Err(Error::SelfIntersecting(i, j));
                }
            }
        }
        Ok(())
    }
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    d1 * d2 <= 0.0 && d3 * d4 <= 0.0 && !(d1 == 0.0 && d2 == 0.0 && d3 == 0.0 && d4 == 0.0)
}

/// One smooth piece of a normalized curve: Chebyshev expansions of the
/// coordinates in the local variable ξ ∈ [−1, 1] on parameters [lo, hi].
#[derive(Debug, Clone)]
struct Piece {
    lo: f64,
    hi: f64,
    x: RealChebyshev,
    y: RealChebyshev,
    dx: RealChebyshev,
    dy: RealChebyshev,
}

impl Piece {
    fn local(&self, t: f64) -> f64 {
        ((2.0 * t - self.lo - self.hi) / (self.hi - self.lo)).clamp(-1.0, 1.0)
    }

    fn scale(&self) -> f64 {
        2.0 / (self.hi - self.lo)
    }
}

#[derive(Debug, Clone)]
enum Repr {
    Flat,
    VShape { sin: f64, cos: f64 },
    Pieces(Vec<Piece>),
}

/// Constant-speed parametrization t ∈ [−1, 1] of an open arc of length L,
/// so that |r′(t)| = L/2.
#[derive(Debug, Clone)]
pub struct Arc {
    kind: ArcKind,
    length: f64,
    repr: Repr,
}

/// Chord length below which the cancellation-free divided differences are used.
const NEAR_CHORD: f64 = 0.05;

impl Arc {
    pub fn flat_segment() -> Self {
        Self { kind: ArcKind::FlatSegment, length: 2.0, repr: Repr::Flat }
    }

    /// V-shaped arc x = t sin(θ/2), y = |t| cos(θ/2).
    pub fn v_shape(angle: f64) -> Result<Self> {
        if !(angle > 0.0 && angle <= PI) {
            return Err(Error::InvalidParameter(format!("V-shape angle {angle} outside (0, π]")));
        }
        let (sin, cos) = (0.5 * angle).sin_cos();
        Ok(Self { kind: ArcKind::VShape { angle }, length: 2.0, repr: Repr::VShape { sin, cos } })
    }

    pub fn spiral() -> Result<Self> {
        normalize_parametrization(&RawCurve::spiral())
    }

    pub fn kind(&self) -> &ArcKind {
        &self.kind
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Parameter of the corner, if any.
    pub fn corners(&self) -> Vec<f64> {
        match &self.repr {
            Repr::Flat => vec![],
            Repr::VShape { .. } => vec![0.0],
            Repr::Pieces(p) => p.iter().skip(1).map(|q| q.lo).collect(),
        }
    }

    fn piece(pieces: &[Piece], t: f64) -> &Piece {
        pieces.iter().find(|p| t <= p.hi).unwrap_or(&pieces[pieces.len() - 1])
    }

    pub fn point(&self, t: f64) -> Point {
        match &self.repr {
            Repr::Flat => [t, 0.0],
            Repr::VShape { sin, cos } => [t * sin, t.abs() * cos],
            Repr::Pieces(p) => {
                let q = Self::piece(p, t);
                let xi = q.local(t);
                [q.x.eval(xi), q.y.eval(xi)]
            }
        }
    }

    /// r′(t); at a corner the right-sided derivative.
    pub fn derivative(&self, t: f64) -> Point {
        match &self.repr {
            Repr::Flat => [1.0, 0.0],
            Repr::VShape { sin, cos } => [*sin, if t < 0.0 { -cos } else { *cos }],
            Repr::Pieces(p) => {
                let q = p.iter().find(|q| t < q.hi).unwrap_or(&p[p.len() - 1]);
                let xi = q.local(t);
                [q.dx.eval(xi) * q.scale(), q.dy.eval(xi) * q.scale()]
            }
        }
    }

    pub fn weight_omega(&self, t: f64) -> f64 {
        0.5 * self.length * (1.0 - t * t).max(0.0).sqrt()
    }

    /// Unit normal: the unit tangent rotated by +90°.
    pub fn normal(&self, t: f64) -> Result<Point> {
        if self.corners().iter().any(|c| *c == t) {
            return Err(Error::UndefinedNormal(t));
        }
        let d = self.derivative(t);
        let n = d[0].hypot(d[1]);
        Ok([-d[1] / n, d[0] / n])
    }

    /// |r(t) − r(s)| given an accurate `dt = t − s`.
    pub fn chord(&self, t: f64, s: f64, dt: f64) -> f64 {
        match &self.repr {
            Repr::Flat => dt.abs(),
            Repr::VShape { .. } => {
                if (t >= 0.0) == (s >= 0.0) || t == 0.0 || s == 0.0 {
                    dt.abs()
                } else {
                    let (a, b) = (self.point(t), self.point(s));
                    (a[0] - b[0]).hypot(a[1] - b[1])
                }
            }
            Repr::Pieces(p) => {
                let qt = Self::piece(p, t);
                let qs = Self::piece(p, s);
                if dt.abs() < NEAR_CHORD && std::ptr::eq(qt, qs) {
                    let (xt, xs) = (qt.local(t), qt.local(s));
                    let sc = qt.scale();
                    let ddx = qt.x.divided_difference(xt, xs) * sc;
                    let ddy = qt.y.divided_difference(xt, xs) * sc;
                    dt.abs() * ddx.hypot(ddy)
                } else {
                    let (a, b) = (self.point(t), self.point(s));
                    (a[0] - b[0]).hypot(a[1] - b[1])
                }
            }
        }
    }

    /// The arc viewed as a raw curve (for re-normalization).
    pub fn to_raw(&self) -> RawCurve {
        let me = Shared::new(self.clone());
        let (a, b) = (me.clone(), me.clone());
        let mut breaks = vec![-1.0];
        breaks.extend(self.corners());
        breaks.push(1.0);
        RawCurve {
            kind: self.kind.clone(),
            breaks,
            point: Shared::new(move |t| a.point(t)),
            derivative: Shared::new(move |t| b.derivative(t)),
        }
    }
}

const TABLE_INTERVALS: usize = 128;
const TABLE_ORDER: usize = 16;

/// Cumulative arclength of one smooth piece, tabulated on a uniform grid
/// with a Gauss rule per cell (2048 points per piece).
struct ArclengthTable<'a> {
    raw: &'a RawCurve,
    a: f64,
    b: f64,
    cum: Vec<f64>,
}

impl<'a> ArclengthTable<'a> {
    fn new(raw: &'a RawCurve, a: f64, b: f64) -> Result<Self> {
        let mut cum = vec![0.0; TABLE_INTERVALS + 1];
        let h = (b - a) / TABLE_INTERVALS as f64;
        let mut vmin = f64::INFINITY;
        let mut vmax = 0.0f64;
        let rule = gauss_legendre(TABLE_ORDER);
        for i in 0..TABLE_INTERVALS {
            let (lo, hi) = (a + i as f64 * h, a + (i + 1) as f64 * h);
            let mut s = 0.0;
            for (x, w) in rule.nodes.iter().zip(&rule.weights) {
                let u = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x;
                let d = (raw.derivative)(u);
                let v = d[0].hypot(d[1]);
                vmin = vmin.min(v);
                vmax = vmax.max(v);
                s += 0.5 * (hi - lo) * w * v;
            }
            cum[i + 1] = cum[i] + s;
        }
        if !(vmin > 1e-10 * vmax) {
            return Err(Error::InvalidParameter("raw speed vanishes; degenerate parametrization".into()));
        }
        Ok(Self { raw, a, b, cum })
    }

    fn total(&self) -> f64 {
        self.cum[TABLE_INTERVALS]
    }

    fn speed(&self, u: f64) -> f64 {
        let d = (self.raw.derivative)(u);
        d[0].hypot(d[1])
    }

    fn arclength(&self, u: f64) -> f64 {
        let h = (self.b - self.a) / TABLE_INTERVALS as f64;
        let i = (((u - self.a) / h).floor() as usize).min(TABLE_INTERVALS - 1);
        let lo = self.a + i as f64 * h;
        let rule = gauss_legendre(TABLE_ORDER);
        let mut s = 0.0;
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            let v = 0.5 * (lo + u) + 0.5 * (u - lo) * x;
            s += 0.5 * (u - lo) * w * self.speed(v);
        }
        self.cum[i] + s
    }

    /// Solves s(u) = target by safeguarded Newton inside the bracketing cell.
    fn invert(&self, target: f64) -> Result<f64> {
        if target <= 0.0 {
            return Ok(self.a);
        }
        if target >= self.total() {
            return Ok(self.b);
        }
        let h = (self.b - self.a) / TABLE_INTERVALS as f64;
        let i = match self.cum.binary_search_by(|v| v.total_cmp(&target)) {
            Ok(i) => return Ok(self.a + i as f64 * h),
            Err(i) => i - 1,
        };
        let (mut lo, mut hi) = (self.a + i as f64 * h, self.a + (i + 1) as f64 * h);
        let mut u = lo + (hi - lo) * (target - self.cum[i]) / (self.cum[i + 1] - self.cum[i]);
        for _ in 0..100 {
            let f = self.arclength(u) - target;
            if f > 0.0 {
                hi = u;
            } else {
                lo = u;
            }
            let mut next = u - f / self.speed(u);
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if (next - u).abs() <= 2e-16 * (1.0 + u.abs()) || hi - lo <= 4e-16 * (1.0 + u.abs()) {
                return Ok(next);
            }
            u = next;
        }
        Err(Error::ArclengthInversion(target))
    }
}

/// Reparametrizes a raw curve to constant speed |r′| = L/2 on [−1, 1].
/// Each smooth piece is stored as a Chebyshev interpolant of the
/// reparametrized coordinates.
pub fn normalize_parametrization(raw: &RawCurve) -> Result<Arc> {
    let mut tables = Vec::new();
    for w in raw.breaks.windows(2) {
        tables.push(ArclengthTable::new(raw, w[0], w[1])?);
    }
    let length: f64 = tables.iter().map(|t| t.total()).sum();
    let mut pieces = Vec::new();
    let mut s0 = 0.0;
    for table in &tables {
        let lo = -1.0 + 2.0 * s0 / length;
        let hi = -1.0 + 2.0 * (s0 + table.total()) / length;
        let hi = if std::ptr::eq(table, tables.last().unwrap()) { 1.0 } else { hi };
        let mut degree = 32;
        let piece = loop {
            let mut err = None;
            let samples: Vec<Point> = (0..degree)
                .map(|j| {
                    let xi = (PI * (j as f64 + 0.5) / degree as f64).cos();
                    let t = 0.5 * (lo + hi) + 0.5 * (hi - lo) * xi;
                    let s = 0.5 * length * (t + 1.0) - s0;
                    match table.invert(s) {
                        Ok(u) => (raw.point)(u),
                        Err(e) => {
                            err = Some(e);
                            [0.0, 0.0]
                        }
                    }
                })
                .collect();
            if let Some(e) = err {
                return Err(e);
            }
            let fit = |c: usize| RealChebyshev::from_values(&samples.iter().map(|p| p[c]).collect::<Vec<_>>());
            let x = fit(0);
            let y = fit(1);
            if (x.tail(4).max(y.tail(4)) < 1e-15) || degree >= 1024 {
                let dx = x.derivative();
                let dy = y.derivative();
                break Piece { lo, hi, x, y, dx, dy };
            }
            degree *= 2;
        };
        pieces.push(piece);
        s0 += table.total();
    }
    let repr = Repr::Pieces(pieces);
    Ok(Arc { kind: raw.kind.clone(), length, repr })
}

/// Builds an arc from a kind and its parameters.
pub fn make_arc(kind: &ArcKind) -> Result<Arc> {
    match kind {
        ArcKind::FlatSegment => Ok(Arc::flat_segment()),
        ArcKind::Spiral => Arc::spiral(),
        ArcKind::VShape { angle } => Arc::v_shape(*angle),
        ArcKind::Custom => Err(Error::InvalidParameter("custom arcs are built from samples".into())),
    }
}

/// Reads `t,x,y` rows (optional header, `#` comments) and builds the
/// normalized spline arc.
pub fn load_custom_csv(path: &std::path::Path) -> Result<Arc> {
    let text = std::fs::read_to_string(path)?;
    parse_custom_csv(&text)
}

pub fn parse_custom_csv(text: &str) -> Result<Arc> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let (mut t, mut x, mut y) = (Vec::new(), Vec::new(), Vec::new());
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
        let vals: Vec<Option<f64>> = record.iter().map(|f| f.parse().ok()).collect();
        if vals.len() != 3 {
            return Err(Error::InvalidParameter(format!("row {row}: expected 3 columns")));
        }
        match (vals[0], vals[1], vals[2]) {
            (Some(a), Some(b), Some(c)) => {
                t.push(a);
                x.push(b);
                y.push(c);
            }
            _ if row == 0 => continue,
            _ => return Err(Error::InvalidParameter(format!("row {row}: not numeric"))),
        }
    }
    normalize_parametrization(&RawCurve::from_samples(&t, &x, &y)?)
}
