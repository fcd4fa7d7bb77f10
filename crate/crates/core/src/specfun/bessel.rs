//! Bessel functions of the first and second kind, orders 0 and 1.
//!
//! Power series below 8, Miller backward recurrence (with the Neumann series
//! for Y) on [8, 20), Hankel asymptotic expansion from 20 on.

use std::f64::consts::{FRAC_2_PI, PI};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const SERIES_LIMIT: f64 = 8.0;
const ASYMPTOTIC_LIMIT: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bessel01 {
    pub j0: f64,
    pub y0: f64,
    pub j1: f64,
    pub y1: f64,
}

/// J0(x) together with the regular part Y0(x) − (2/π) ln(x/2) J0(x).
pub fn j0_y0_regular(x: f64) -> (f64, f64) {
    if x < SERIES_LIMIT {
        let (j0, y0r, _, _) = series(x);
        (j0, y0r)
    } else {
        let b = bessel01(x);
        (b.j0, b.y0 - FRAC_2_PI * (0.5 * x).ln() * b.j0)
    }
}

/// J0 and Y0 only.
pub fn j0_y0(x: f64) -> (f64, f64) {
    if x < SERIES_LIMIT {
        let (j0, y0r, _, _) = series(x);
        (j0, y0r + FRAC_2_PI * (0.5 * x).ln() * j0)
    } else if x < ASYMPTOTIC_LIMIT {
        let b = miller(x);
        (b.j0, b.y0)
    } else {
        let (j0, y0) = hankel(0.0, x);
        (j0, y0)
    }
}

pub fn bessel01(x: f64) -> Bessel01 {
    assert!(x >= 0.0, "Bessel argument must be nonnegative");
    if x < SERIES_LIMIT {
        let (j0, y0r, j1, y0r_prime) = series(x);
        let l = (0.5 * x).ln();
        let y0 = y0r + FRAC_2_PI * l * j0;
        let y1 = -(FRAC_2_PI * (j0 / x - l * j1) + y0r_prime);
        Bessel01 { j0, y0, j1, y1 }
    } else if x < ASYMPTOTIC_LIMIT {
        miller(x)
    } else {
        let (j0, y0) = hankel(0.0, x);
        let (j1, y1) = hankel(1.0, x);
        Bessel01 { j0, y0, j1, y1 }
    }
}

pub fn j0(x: f64) -> f64 {
    j0_y0(x).0
}

pub fn y0(x: f64) -> f64 {
    j0_y0(x).1
}

pub fn j1(x: f64) -> f64 {
    bessel01(x).j1
}

pub fn y1(x: f64) -> f64 {
    bessel01(x).y1
}

/// Returns (J0, Y0 regular part, J1, derivative of the Y0 regular part).
fn series(x: f64) -> (f64, f64, f64, f64) {
    let q = 0.25 * x * x;
    let half = 0.5 * x;
    let mut term = 1.0; // (−q)^m/(m!)²
    let mut j0 = 1.0;
    let mut j1 = half;
    let mut term1 = half; // (−1)^m (x/2)^{2m+1}/(m!(m+1)!)
    let mut harmonic = 0.0;
    let mut s = 0.0;
    let mut sp = 0.0;
    for m in 1..80 {
        let mf = m as f64;
        term *= -q / (mf * mf);
        term1 *= -q / (mf * (mf + 1.0));
        harmonic += 1.0 / mf;
        j0 += term;
        j1 += term1;
        s -= harmonic * term;
        // d/dx of (−q)^m/(m!)² is −m (−q)^{m−1} ... expressed through term
        sp -= harmonic * term * 2.0 * mf / x;
        if term.abs() < 1e-18 * j0.abs().max(1e-3) && m > 4 {
            break;
        }
    }
    let y0r = FRAC_2_PI * (EULER_GAMMA * j0 + s);
    let y0r_prime = FRAC_2_PI * (-EULER_GAMMA * j1 + sp);
    (j0, y0r, j1, y0r_prime)
}

fn miller(x: f64) -> Bessel01 {
    let mut top = (x as usize + 40) & !1;
    if top < 40 {
        top = 40;
    }
    let mut jn = vec![0.0; top + 2];
    jn[top] = 1e-300;
    for n in (1..=top).rev() {
        jn[n - 1] = 2.0 * n as f64 / x * jn[n] - jn[n + 1];
        if jn[n - 1].abs() > 1e250 {
            for v in jn.iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    let mut norm = jn[0];
    let mut k = 2;
    while k <= top {
        norm += 2.0 * jn[k];
        k += 2;
    }
    for v in jn.iter_mut() {
        *v /= norm;
    }
    let l = (0.5 * x).ln() + EULER_GAMMA;
    let mut s = 0.0;
    let mut sp = 0.0;
    let mut k = 1;
    while 2 * k < top {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        s += sign * jn[2 * k] / k as f64;
        sp += sign * 0.5 * (jn[2 * k - 1] - jn[2 * k + 1]) / k as f64;
        k += 1;
    }
    let y0 = FRAC_2_PI * (l * jn[0] - 2.0 * s);
    let y0p = FRAC_2_PI * (jn[0] / x - l * jn[1] - 2.0 * sp);
    Bessel01 { j0: jn[0], y0, j1: jn[1], y1: -y0p }
}

fn hankel(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        a *= (mu - odd * odd) / (kf * 8.0 * x);
        if a.abs() > last {
            break;
        }
        last = a.abs();
        match k % 4 {
            1 => q += a,
            2 => p -= a,
            3 => q -= a,
            _ => p += a,
        }
        if a.abs() < 1e-17 {
            break;
        }
    }
    let phase = (0.5 * nu + 0.25) * PI;
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = phase.sin_cos();
    let cos_chi = cx * cp + sx * sp;
    let sin_chi = sx * cp - cx * sp;
    let amp = (FRAC_2_PI / x).sqrt();
    (amp * (p * cos_chi - q * sin_chi), amp * (p * sin_chi + q * cos_chi))
}

#[cfg(test)]
mod tests {
    use super::*;

    // scipy.special j0, y0, j1, y1
    const TABLE: &[(f64, f64, f64, f64, f64)] = &[
        (1e-06, 0.99999999999975, -8.869031481659443, 4.999999999999375e-07, -636619.772372175),
        (0.1, 0.99750156206604, -1.5342386513503667, 0.049937526036242, -6.458951094702027),
        (1.0, 0.7651976865579665, 0.08825696421567697, 0.44005058574493355, -0.7812128213002888),
        (2.5, -0.04838377646819804, 0.498070359615232, 0.497094102464274, 0.14591813796678577),
        (5.0, -0.1775967713143383, -0.30851762524903303, -0.3275791375914653, 0.14786314339122691),
        (7.9, 0.1943618448412782, 0.20652094814437574, 0.21917939992175126, -0.1817210772805731),
        (8.0, 0.1716508071375539, 0.22352148938756622, 0.2346363468539146, -0.15806046173124746),
        (8.1, 0.14751745404437763, 0.23809132870223482, 0.24760776698159287, -0.13314879595249587),
        (10.0, -0.24593576445134832, 0.05567116728359961, 0.04347274616886141, 0.24901542420695388),
        (13.7, 0.20322083263300725, 0.07168830401567913, 0.07914276510011471, -0.2007421453277555),
        (19.9, 0.17287775639261851, 0.04576209415938532, 0.05011742480737991, -0.17178303121049252),
        (20.0, 0.16702466434058322, 0.06264059680938369, 0.0668331241758502, -0.1655116143625212),
        (20.1, 0.15953606793729713, 0.07881059242875016, 0.0828010057602099, -0.15762598074781148),
        (35.0, -0.12684568275631272, 0.0457979871951553, 0.043990942179625514, 0.12751273354559015),
        (100.0, 0.01998585030422333, -0.0772443133650831, -0.0771453520141123, -0.02037231200275932),
        (1234.5, -0.013550379618034219, 0.018222995047413672, 0.018217508337392774, 0.013557761447179966),
    ];

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 2e-13 * b.abs().max(1.0)
    }

    #[test]
    fn against_reference_table() {
        for &(x, j0r, y0r, j1r, y1r) in TABLE {
            let b = bessel01(x);
            assert!(close(b.j0, j0r), "J0({x}) = {} vs {j0r}", b.j0);
            assert!(close(b.y0, y0r), "Y0({x}) = {} vs {y0r}", b.y0);
            assert!(close(b.j1, j1r), "J1({x}) = {} vs {j1r}", b.j1);
            assert!(close(b.y1, y1r), "Y1({x}) = {} vs {y1r}", b.y1);
            let (a, c) = j0_y0(x);
            assert!(close(a, j0r) && close(c, y0r));
        }
    }

    #[test]
    fn wronskian_across_regimes() {
        let mut x = 0.05;
        while x < 60.0 {
            let b = bessel01(x);
            let w = b.j1 * b.y0 - b.j0 * b.y1;
            assert!((w - 2.0 / (PI * x)).abs() < 1e-13 * (1.0 + 1.0 / x), "x={x} w={w}");
            x += 0.173;
        }
    }

    #[test]
    fn regular_part_is_smooth_near_zero() {
        let (_, a) = j0_y0_regular(1e-8);
        assert!((a - FRAC_2_PI * EULER_GAMMA).abs() < 1e-14);
    }
}
