//! Galerkin matrices of the logarithmic layer potentials.
//!
//! The kernel is split as G = a(r) ln r + b(r). On touching panel pairs the
//! logarithm is written as ln r = Σ ln d_m + smooth, where the d_m vanish on
//! the singular lines of the pair: τ = σ, and for the first and last panel of
//! a cosine mesh also τ + σ = 0 and τ + σ = 2π. Each a·ln d_m term is
//! integrated by a product rule with logarithmic weight, the smooth rest by a
//! tensor Gauss rule.

use std::f64::consts::PI;

use faer::Mat;
use num_complex::Complex64;

use super::matrix::OperatorMatrix;
use super::space::{GalerkinSpace, NodeInfo, Weight};
use crate::error::{Error, Result};
use crate::quadrature::{gauss_legendre, gauss_log};
use crate::specfun::kernel::green_unchecked as green;
use crate::specfun::log_split;

const ORDER_LOG: usize = 10;
const ORDER_INNER: usize = 10;
const ORDER_NEAR: usize = 12;
const MAX_ORDER: usize = 48;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayerKind {
    /// (1/π) ∬ G φ_j φ_i dτ dσ
    SingleLayerWeighted,
    /// ∬ G [curl(ω φ_j) curl(ω φ_i) − k² n_x·n_y ω φ_j ω φ_i] dσ dσ
    Hypersingular,
    /// ∬ G φ_j φ_i dσ dσ
    SingleLayerStandard,
}

impl LayerKind {
    fn weight(self) -> Weight {
        match self {
            LayerKind::SingleLayerWeighted => Weight::InvOmega,
            LayerKind::Hypersingular => Weight::Omega,
            LayerKind::SingleLayerStandard => Weight::Unit,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AssemblyOptions {
    /// Extra points added to every Gauss rule.
    pub boost: usize,
    /// Recompute a sample of panel pairs with boosted rules and fail when
    /// they differ by more than `check_tolerance` (relative).
    pub check: bool,
    pub check_tolerance: f64,
}

impl Default for AssemblyOptions {
    fn default() -> Self {
        Self { boost: 0, check: false, check_tolerance: 1e-8 }
    }
}

pub fn assemble_single_layer_weighted(space: &GalerkinSpace, k: f64) -> Result<OperatorMatrix> {
    assemble_layer(space, LayerKind::SingleLayerWeighted, k, &AssemblyOptions::default())
}

pub fn assemble_hypersingular_weighted(space: &GalerkinSpace, k: f64) -> Result<OperatorMatrix> {
    assemble_layer(space, LayerKind::Hypersingular, k, &AssemblyOptions::default())
}

pub fn assemble_single_layer_standard(space: &GalerkinSpace, k: f64) -> Result<OperatorMatrix> {
    assemble_layer(space, LayerKind::SingleLayerStandard, k, &AssemblyOptions::default())
}

#[derive(Clone, Copy)]
struct Eval {
    info: NodeInfo,
    a: [f64; 2],
    b: [f64; 2],
    w: f64,
}

#[derive(Clone, Copy, Default)]
struct Handled {
    diag: bool,
    sum: bool,
    sum_bar: bool,
}

/// Points (x offset, y offset, weight) of a rule on a panel pair.
type PairRule = Vec<(f64, f64, f64)>;

struct Assembler<'a> {
    space: &'a GalerkinSpace,
    kind: LayerKind,
    k: f64,
    half: f64,
    boost: usize,
    tau: bool,
    tables: Vec<Option<Vec<Vec<Eval>>>>,
}

pub fn assemble_layer(
    space: &GalerkinSpace,
    kind: LayerKind,
    k: f64,
    opts: &AssemblyOptions,
) -> Result<OperatorMatrix> {
    if space.weight != kind.weight() {
        return Err(Error::WeightMismatch { expected: kind.weight().name(), got: space.weight.name() });
    }
    if !(k >= 0.0 && k.is_finite()) {
        return Err(Error::InvalidParameter(format!("wavenumber must be finite and nonnegative, got {k}")));
    }
    let mut asm = Assembler::new(space, kind, k, opts.boost);
    let n = space.dof_count();
    let np = space.panels();
    let mut m = Mat::<Complex64>::zeros(n, n);
    let mut near_cache: Option<(f64, PairRule, PairRule, PairRule)> = None;
    for p in 0..np {
        for q in p..np {
            let block = asm.pair_block(p, q, &mut near_cache);
            scatter(&mut m, space, p, q, &block);
        }
    }
    if opts.check {
        let mut check = Assembler::new(space, kind, k, opts.boost + 6);
        let stride = (np / 7).max(1);
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for p in (0..np).step_by(stride).chain([np - 1]) {
            for q in [p, p + 1, p + 2, p + 5, np - 1] {
                if q < np && q >= p {
                    pairs.push((p, q));
                }
            }
        }
        for (p, q) in pairs {
            let mut c1 = None;
            let mut c2 = None;
            let b1 = asm.pair_block(p, q, &mut c1);
            let b2 = check.pair_block(p, q, &mut c2);
            let scale = b2.iter().flatten().fold(0.0f64, |s, v| s.max(v.norm()));
            let diff = b1.iter().flatten().zip(b2.iter().flatten()).fold(0.0f64, |s, (x, y)| s.max((x - y).norm()));
            if diff > opts.check_tolerance * scale {
                return Err(Error::QuadratureCheck { p, q, rel: diff / scale });
            }
        }
    }
    if k == 0.0 {
        Ok(OperatorMatrix::dense_real(Mat::from_fn(n, n, |i, j| m[(i, j)].re)))
    } else {
        Ok(OperatorMatrix::dense_complex(m))
    }
}

fn scatter(m: &mut Mat<Complex64>, space: &GalerkinSpace, p: usize, q: usize, block: &[[Complex64; 2]; 2]) {
    let dp = space.dofs(p);
    let dq = space.dofs(q);
    for a in 0..2 {
        for b in 0..2 {
            m[(dp[a], dq[b])] += block[a][b];
            if p != q {
                m[(dq[b], dp[a])] += block[a][b];
            }
        }
    }
}

#[inline]
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// ∬_{[0,h]²} F(x, y) ln|x − y|.
fn self_rule(h: f64) -> PairRule {
    let gl = gauss_legendre(ORDER_LOG);
    let lg = gauss_log(ORDER_LOG);
    let inner = gauss_legendre(ORDER_INNER);
    let mut out = Vec::new();
    let mut outer: Vec<(f64, f64)> = Vec::new();
    for (x, w) in gl.nodes.iter().zip(&gl.weights) {
        outer.push((0.5 * (x + 1.0), 0.5 * w * h * h.ln()));
    }
    for (x, w) in lg.nodes.iter().zip(&lg.weights) {
        outer.push((*x, -w * h));
    }
    for (z, wo) in outer {
        let u = h * z;
        let len = h - u;
        for (x, w) in inner.nodes.iter().zip(&inner.weights) {
            let v = 0.5 * len * (x + 1.0);
            let wt = wo * 0.5 * len * w;
            out.push((v + u, v, wt));
            out.push((v, v + u, wt));
        }
    }
    out
}

/// ∬_{[0,h1]×[0,h2]} F(a, b) ln(a + b), returned as (a, b, w).
fn corner_rule(h1: f64, h2: f64) -> PairRule {
    let gl = gauss_legendre(ORDER_LOG);
    let lg = gauss_log(ORDER_LOG);
    let v: Vec<(f64, f64)> = gl.nodes.iter().zip(&gl.weights).map(|(x, w)| (0.5 * (x + 1.0), 0.5 * w)).collect();
    let mut out = Vec::new();
    let area = h1 * h2;
    for flip in [false, true] {
        for &(vm, wv) in &v {
            let extra = if flip { (h1 * vm + h2).ln() } else { (h1 + h2 * vm).ln() };
            let place = |rho: f64| if flip { (h1 * rho * vm, h2 * rho) } else { (h1 * rho, h2 * rho * vm) };
            for (rho, wl) in lg.nodes.iter().zip(&lg.weights) {
                let (a, b) = place(*rho);
                out.push((a, b, -area * wl * rho * wv));
            }
            for &(rho, wg) in &v {
                let (a, b) = place(rho);
                out.push((a, b, area * wg * rho * wv * extra));
            }
        }
    }
    out
}

fn tensor_rule(h1: f64, h2: f64, n: usize) -> PairRule {
    let gl = gauss_legendre(n);
    let mut out = Vec::with_capacity(n * n);
    for (x, wx) in gl.nodes.iter().zip(&gl.weights) {
        for (y, wy) in gl.nodes.iter().zip(&gl.weights) {
            out.push((0.5 * h1 * (x + 1.0), 0.5 * h2 * (y + 1.0), 0.25 * h1 * h2 * wx * wy));
        }
    }
    out
}

impl<'a> Assembler<'a> {
    fn new(space: &'a GalerkinSpace, kind: LayerKind, k: f64, boost: usize) -> Self {
        Self {
            space,
            kind,
            k,
            half: 0.5 * space.arc.length(),
            boost,
            tau: space.uses_tau(),
            tables: vec![None; MAX_ORDER + 1],
        }
    }

    fn eval(&self, panel: usize, off: f64, w: f64) -> Eval {
        let info = self.space.node(panel, off);
        let (a, b) = match self.kind {
            LayerKind::SingleLayerWeighted => {
                let c = 1.0 / PI.sqrt();
                ([c * info.phi[0], c * info.phi[1]], [0.0; 2])
            }
            LayerKind::SingleLayerStandard => ([self.half * info.phi[0], self.half * info.phi[1]], [0.0; 2]),
            LayerKind::Hypersingular => {
                let (t, s2) = (info.t, info.s * info.s);
                let d = |i: usize| self.half * (-t * info.phi[i] + s2 * info.dphi[i]);
                let wv = |i: usize| self.half * self.half * s2 * info.phi[i];
                ([d(0), d(1)], [wv(0), wv(1)])
            }
        };
        Eval { info, a, b, w }
    }

    fn ensure_table(&mut self, order: usize) {
        if self.tables[order].is_none() {
            let gl = gauss_legendre(order);
            let t: Vec<Vec<Eval>> = (0..self.space.panels())
                .map(|p| {
                    let h = self.space.width(p);
                    gl.nodes
                        .iter()
                        .zip(&gl.weights)
                        .map(|(x, w)| self.eval(p, 0.5 * h * (x + 1.0), 0.5 * h * w))
                        .collect()
                })
                .collect();
            self.tables[order] = Some(t);
        }
    }

    /// Physical length of a panel.
    fn panel_length(&self, p: usize) -> f64 {
        self.half * (self.space.mesh.t[p + 1] - self.space.mesh.t[p])
    }

    fn far_order(&self, p: usize, q: usize) -> usize {
        let np = self.space.panels();
        let delta = if self.tau {
            let gap = (q - p - 1) as f64;
            gap.min((p + q) as f64).min((2 * np - p - q - 2) as f64)
        } else {
            let t = &self.space.mesh.t;
            let gap = t[q] - t[p + 1];
            gap / (t[p + 1] - t[p]).max(t[q + 1] - t[q])
        };
        let d = 1.0 + 2.0 * delta;
        let rho = d + (d * d - 1.0).sqrt();
        let geo = (13.8 / rho.ln()).ceil() as usize;
        let osc = if self.k > 0.0 {
            3 + (1.5 * self.k * self.panel_length(p).max(self.panel_length(q))).ceil() as usize
        } else {
            0
        };
        (geo.max(osc).max(4) + self.boost).min(MAX_ORDER)
    }

    #[inline]
    fn combine(&self, x: &Eval, y: &Eval, kval: Complex64, w: f64, block: &mut [[Complex64; 2]; 2]) {
        let kw = kval * w;
        let c = match self.kind {
            LayerKind::Hypersingular => {
                -self.k * self.k * (x.info.normal[0] * y.info.normal[0] + x.info.normal[1] * y.info.normal[1])
            }
            _ => 0.0,
        };
        for i in 0..2 {
            for j in 0..2 {
                block[i][j] += kw * (x.a[i] * y.a[j] + c * x.b[i] * y.b[j]);
            }
        }
    }

    fn pair_block(
        &mut self,
        p: usize,
        q: usize,
        near_cache: &mut Option<(f64, PairRule, PairRule, PairRule)>,
    ) -> [[Complex64; 2]; 2] {
        let zero = Complex64::new(0.0, 0.0);
        let mut block = [[zero; 2]; 2];
        if q > p + 1 {
            let order = self.far_order(p, q);
            let k = self.k;
            self.ensure_table(order);
            let table = self.tables[order].as_ref().unwrap();
            for x in &table[p] {
                for y in &table[q] {
                    let r = (x.info.point[0] - y.info.point[0]).hypot(x.info.point[1] - y.info.point[1]);
                    self.combine(x, y, green(k, r), x.w * y.w, &mut block);
                }
            }
            return block;
        }
        let np = self.space.panels();
        let (hp, hq) = (self.space.width(p), self.space.width(q));
        let regular_order = ORDER_NEAR + self.boost;
        let rules = match near_cache {
            Some(c) if self.tau && c.0 == hp => c,
            _ => {
                *near_cache = Some((hp, self_rule(hp), corner_rule(hp, hq), tensor_rule(hp, hq, regular_order)));
                near_cache.as_mut().unwrap()
            }
        };
        let (self_pts, corner_pts, tensor_pts) = if self.tau {
            (rules.1.clone(), rules.2.clone(), rules.3.clone())
        } else if p == q {
            (self_rule(hp), Vec::new(), tensor_rule(hp, hq, regular_order))
        } else {
            (Vec::new(), corner_rule(hp, hq), tensor_rule(hp, hq, regular_order))
        };
        let mut handled = Handled { diag: true, ..Default::default() };
        if p == q {
            for &(ox, oy, w) in &self_pts {
                self.log_point(p, ox, q, oy, w, &mut block);
            }
            if self.tau && p == 0 {
                handled.sum = true;
                for &(a, b, w) in &corner_pts {
                    self.log_point(p, a, q, b, w, &mut block);
                }
            }
            if self.tau && p == np - 1 {
                handled.sum_bar = true;
                for &(a, b, w) in &corner_pts {
                    self.log_point(p, hp - a, q, hq - b, w, &mut block);
                }
            }
        } else {
            for &(a, b, w) in &corner_pts {
                self.log_point(p, hp - a, q, b, w, &mut block);
            }
        }
        for &(ox, oy, w) in &tensor_pts {
            self.regular_point(p, ox, q, oy, w, handled, &mut block);
        }
        block
    }

    fn log_point(&self, p: usize, ox: f64, q: usize, oy: f64, w: f64, block: &mut [[Complex64; 2]; 2]) {
        let x = self.eval(p, ox, 1.0);
        let y = self.eval(q, oy, 1.0);
        let r = self.distance(&x, &y).0;
        let (a, _) = log_split(self.k, r);
        self.combine(&x, &y, Complex64::new(a, 0.0), w, block);
    }

    /// (r, t − s, integration-variable difference, τ + σ, 2π − τ − σ).
    fn distance(&self, x: &Eval, y: &Eval) -> (f64, f64, f64, f64, f64) {
        let (p, q) = (x.info.panel, y.info.panel);
        if self.tau {
            let np = self.space.panels();
            let h = PI / np as f64;
            let diff = (p as f64 - q as f64) * h + (x.info.off - y.info.off);
            let sum = (p + q) as f64 * h + x.info.off + y.info.off;
            let sum_bar = (2 * np - p - q) as f64 * h - x.info.off - y.info.off;
            let half_sin = if sum <= PI { (0.5 * sum).sin() } else { (0.5 * sum_bar).sin() };
            let dt = 2.0 * half_sin * (0.5 * diff).sin();
            let r = self.space.arc.chord(x.info.t, y.info.t, dt);
            (r, dt, diff, sum, sum_bar)
        } else {
            let t = &self.space.mesh.t;
            let dt = (t[p] - t[q]) + (x.info.off - y.info.off);
            let r = self.space.arc.chord(x.info.t, y.info.t, dt);
            (r, dt, dt, 0.0, 0.0)
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn regular_point(
        &self,
        p: usize,
        ox: f64,
        q: usize,
        oy: f64,
        w: f64,
        handled: Handled,
        block: &mut [[Complex64; 2]; 2],
    ) {
        let x = self.eval(p, ox, 1.0);
        let y = self.eval(q, oy, 1.0);
        let (r, dt, diff, sum, sum_bar) = self.distance(&x, &y);
        let ratio = if dt == 0.0 || r == 0.0 { self.half } else { r / dt.abs() };
        // ln r − Σ_handled ln d_m
        let mut lr = ratio.ln();
        if self.tau {
            lr += sinc(0.5 * diff).ln();
            lr += if handled.sum {
                (0.5 * sinc(0.5 * sum)).ln()
            } else if handled.sum_bar {
                (0.5 * sinc(0.5 * sum_bar)).ln()
            } else if sum <= PI {
                (0.5 * sum).sin().ln()
            } else {
                (0.5 * sum_bar).sin().ln()
            };
        }
        if !handled.diag {
            lr += diff.abs().ln();
        }
        let (a, b) = log_split(self.k, ratio * dt.abs());
        self.combine(&x, &y, a * lr + b, w, block);
    }
}
