//! Airy functions, Bessel J0 and Laguerre polynomials.
//!
//! Airy: Maclaurin series for |x| <= x_switch, asymptotic expansions far out,
//! and high-order Taylor stepping of y'' = x y in the band between, started
//! from the asymptotic values. Positive arguments step towards the origin so
//! the recessive solution is integrated in its stable direction.

use crate::error::{Error, Result};
use std::f64::consts::{FRAC_PI_4, PI};

pub const AI0: f64 = 0.355_028_053_887_817_2;
pub const AIP0: f64 = -0.258_819_403_792_806_8;
pub const AIRY_MAX_ARG: f64 = 100.0;
pub const DEFAULT_X_SWITCH: f64 = 5.0;

// Beyond these the asymptotic series is accurate to rounding.
const ASYM_POS: f64 = 8.0;
const ASYM_NEG: f64 = -10.0;
const TAYLOR_STEP: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Series,
    Asymptotic,
    Continuation,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialValue {
    pub value: f64,
    pub regime: Method,
}

pub fn airy_ai(x: f64) -> Result<f64> {
    airy(x).map(|(a, _)| a)
}

pub fn airy_ai_prime(x: f64) -> Result<f64> {
    airy(x).map(|(_, d)| d)
}

/// (Ai(x), Ai'(x)).
pub fn airy(x: f64) -> Result<(f64, f64)> {
    airy_with_switch(x, DEFAULT_X_SWITCH).map(|(a, d, _)| (a, d))
}

pub fn airy_tagged(x: f64) -> Result<(SpecialValue, SpecialValue)> {
    let (a, d, m) = airy_with_switch(x, DEFAULT_X_SWITCH)?;
    Ok((
        SpecialValue { value: a, regime: m },
        SpecialValue { value: d, regime: m },
    ))
}

pub fn airy_with_switch(x: f64, x_switch: f64) -> Result<(f64, f64, Method)> {
    if !x.is_finite() || x.abs() > AIRY_MAX_ARG {
        return Err(Error::DomainOverflow(x));
    }
    if x.abs() <= x_switch {
        let (a, d) = airy_series(x);
        return Ok((a, d, Method::Series));
    }
    if x >= ASYM_POS {
        let (a, d) = airy_asymptotic_positive(x);
        return Ok((a, d, Method::Asymptotic));
    }
    if x <= ASYM_NEG {
        let (a, d) = airy_asymptotic_oscillatory(-x);
        return Ok((a, d, Method::Asymptotic));
    }
    let (x0, (a0, d0)) = if x > 0.0 {
        (ASYM_POS, airy_asymptotic_positive(ASYM_POS))
    } else {
        (ASYM_NEG, airy_asymptotic_oscillatory(-ASYM_NEG))
    };
    let (a, d) = taylor_walk(x0, a0, d0, x);
    Ok((a, d, Method::Continuation))
}

/// Maclaurin series of Ai and Ai'.
pub fn airy_series(x: f64) -> (f64, f64) {
    let x3 = x * x * x;
    let (mut f, mut g, mut fp, mut gp) = (1.0, x, 0.0, 1.0);
    let (mut tf, mut tg) = (1.0, x);
    let mut tfp = x * x / 2.0;
    let mut tgp = 1.0;
    fp += tfp;
    for k in 0..200 {
        let k3 = 3.0 * k as f64;
        tf *= x3 / ((k3 + 2.0) * (k3 + 3.0));
        tg *= x3 / ((k3 + 3.0) * (k3 + 4.0));
        tgp *= x3 / ((k3 + 1.0) * (k3 + 3.0));
        f += tf;
        g += tg;
        gp += tgp;
        if k > 0 {
            tfp *= x3 / (k3 * (k3 + 2.0));
            fp += tfp;
        }
        let scale = f.abs() + g.abs() + fp.abs() + gp.abs() + 1.0;
        if (tf.abs() + tg.abs() + tfp.abs() + tgp.abs()) < 1e-18 * scale {
            break;
        }
    }
    (AI0 * f + AIP0 * g, AI0 * fp + AIP0 * gp)
}

fn u_coefficients(count: usize) -> Vec<f64> {
    let mut u = vec![1.0; count];
    for k in 1..count {
        let kf = k as f64;
        u[k] = u[k - 1] * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
            / ((2.0 * kf - 1.0) * 216.0 * kf);
    }
    u
}

/// Ai, Ai' for large positive x (exponentially decaying side).
fn airy_asymptotic_positive(x: f64) -> (f64, f64) {
    let z = 2.0 / 3.0 * x.powf(1.5);
    let u = u_coefficients(40);
    let (mut sa, mut sd) = (0.0, 0.0);
    let mut last = f64::INFINITY;
    let mut zp = 1.0;
    for k in 0..u.len() {
        let vk = if k == 0 { 1.0 } else { -(6.0 * k as f64 + 1.0) / (6.0 * k as f64 - 1.0) * u[k] };
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let ta = sign * u[k] / zp;
        if ta.abs() > last {
            break;
        }
        last = ta.abs();
        sa += ta;
        sd += sign * vk / zp;
        if last < 1e-17 {
            break;
        }
        zp *= z;
    }
    let e = (-z).exp() / (2.0 * PI.sqrt());
    let x4 = x.powf(0.25);
    (e / x4 * sa, -x4 * e * sd)
}

/// Ai(-x), Ai'(-x) for large positive x (oscillatory side).
fn airy_asymptotic_oscillatory(x: f64) -> (f64, f64) {
    let z = 2.0 / 3.0 * x.powf(1.5);
    let u = u_coefficients(60);
    let v: Vec<f64> = (0..u.len())
        .map(|k| if k == 0 { 1.0 } else { -(6.0 * k as f64 + 1.0) / (6.0 * k as f64 - 1.0) * u[k] })
        .collect();
    let (mut pu, mut qu, mut pv, mut qv) = (0.0, 0.0, 0.0, 0.0);
    let mut last = f64::INFINITY;
    let mut zp = 1.0;
    for k in 0..u.len() {
        let t = u[k] / zp;
        if t.abs() > last {
            break;
        }
        last = t.abs();
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            pu += sign * u[k] / zp;
            pv += sign * v[k] / zp;
        } else {
            qu += sign * u[k] / zp;
            qv += sign * v[k] / zp;
        }
        if last < 1e-17 {
            break;
        }
        zp *= z;
    }
    let (s, c) = (z - FRAC_PI_4).sin_cos();
    let x4 = x.powf(0.25);
    let a = (c * pu + s * qu) / (PI.sqrt() * x4);
    let d = x4 * (s * pv - c * qv) / PI.sqrt();
    (a, d)
}

/// Integrate y'' = x y from (x0, y, y') to x1 with Taylor steps.
fn taylor_walk(x0: f64, mut y: f64, mut yp: f64, x1: f64) -> (f64, f64) {
    let n = ((x1 - x0).abs() / TAYLOR_STEP).ceil().max(1.0) as usize;
    let h = (x1 - x0) / n as f64;
    let mut xc = x0;
    for _ in 0..n {
        let (ny, nyp) = taylor_step(xc, y, yp, h);
        y = ny;
        yp = nyp;
        xc += h;
    }
    (y, yp)
}

fn taylor_step(x0: f64, y: f64, yp: f64, h: f64) -> (f64, f64) {
    let (mut am1, mut a0, mut a1) = (0.0, y, yp);
    let mut hp = 1.0;
    let (mut sy, mut sd) = (y, 0.0);
    let scale = y.abs() + yp.abs();
    for k in 0..80 {
        let kf = k as f64;
        // a_{k+2} from a_k and a_{k-1}
        let a2 = (x0 * a0 + am1) / ((kf + 1.0) * (kf + 2.0));
        sd += (kf + 1.0) * a1 * hp;
        hp *= h;
        sy += a1 * hp;
        if k > 6 && (a1 * hp).abs() < 1e-19 * scale && (a2 * hp * h).abs() < 1e-19 * scale {
            break;
        }
        am1 = a0;
        a0 = a1;
        a1 = a2;
    }
    (sy, sd)
}

/// Leading-order forms for large negative argument -x:
/// (cos(2/3 x^{3/2} - pi/4) / (sqrt(pi) x^{1/4}), x^{1/4} sin(2/3 x^{3/2} - pi/4) / sqrt(pi)).
/// Both diverge or vanish as x -> 0+, callers guard small x.
pub fn airy_asymptotic_negative(x: f64) -> (f64, f64) {
    let w = 2.0 / 3.0 * x.powf(1.5) - FRAC_PI_4;
    let x4 = x.powf(0.25);
    (w.cos() / (PI.sqrt() * x4), x4 * w.sin() / PI.sqrt())
}

/// (Ai(−ζ), Ai′(−ζ)) as consumed by the uniform formulas.
pub type AiryKernel = fn(f64) -> Result<(f64, f64)>;

pub fn airy_reflected(zeta: f64) -> Result<(f64, f64)> {
    airy(-zeta)
}

/// Leading asymptotics in place of the Airy pair; only meaningful for ζ > 0.
pub fn airy_reflected_asymptotic(zeta: f64) -> Result<(f64, f64)> {
    Ok(airy_asymptotic_negative(zeta))
}

const J0_SWITCH: f64 = 14.0;

pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x <= J0_SWITCH {
        let q = -x * x / 4.0;
        let (mut sum, mut t) = (1.0, 1.0);
        for k in 1..200 {
            let kf = k as f64;
            t *= q / (kf * kf);
            sum += t;
            if t.abs() < 1e-18 * sum.abs().max(1e-3) {
                break;
            }
        }
        sum
    } else {
        let (p, q) = hankel_pq(x);
        let (s, c) = x.sin_cos();
        // cos(x - pi/4) and sin(x - pi/4) without cancellation in x - pi/4
        let cc = (c + s) / 2f64.sqrt();
        let ss = (s - c) / 2f64.sqrt();
        (2.0 / (PI * x)).sqrt() * (p * cc - q * ss)
    }
}

fn hankel_pq(x: f64) -> (f64, f64) {
    let (mut p, mut q) = (0.0, 0.0);
    let mut a = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..200usize {
        let term = a / x.powi(k as i32);
        if term.abs() > last {
            break;
        }
        last = term.abs();
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if last < 1e-17 {
            break;
        }
        let j = (2 * k + 1) as f64;
        a *= -(j * j) / ((k + 1) as f64 * 8.0);
    }
    (p, q)
}

/// Large-argument cosine form of J0.
pub fn bessel_j0_asymptotic(x: f64) -> f64 {
    (2.0 / (PI * x)).sqrt() * (x - FRAC_PI_4).cos()
}

/// L_n(x) by the three-term recurrence.
pub fn laguerre(n: u32, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 1.0 - x);
    if n == 0 {
        return 1.0;
    }
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// e^{-x/2} L_n(x), rescaling the recurrence on the fly so that large n x
/// neither overflows nor underflows.
pub fn laguerre_weighted(n: u32, x: f64) -> f64 {
    if n == 0 {
        return (-x / 2.0).exp();
    }
    let (mut prev, mut cur) = (1.0, 1.0 - x);
    let mut log_scale = 0.0;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
        if cur.abs() > 1e100 {
            prev *= 1e-100;
            cur *= 1e-100;
            log_scale += 100.0 * std::f64::consts::LN_10;
        }
    }
    cur * (log_scale - x / 2.0).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn airy_origin() {
        let (a, d) = airy(0.0).unwrap();
        assert!((a - 0.355028053887817).abs() < 1e-15);
        assert!((d + 0.258819403792807).abs() < 1e-15);
    }

    #[test]
    fn airy_rejects_huge() {
        assert_eq!(airy(150.0), Err(Error::DomainOverflow(150.0)));
    }

    #[test]
    fn laguerre_small() {
        assert_eq!(laguerre(1, 1.0), 0.0);
        assert!((laguerre(2, 2.0) + 1.0).abs() < 1e-15);
        for n in 0..20 {
            assert_eq!(laguerre(n, 0.0), 1.0);
        }
    }

    #[test]
    fn j0_zero() {
        assert_eq!(bessel_j0(0.0), 1.0);
        assert!(bessel_j0(2.404825557695773).abs() < 1e-13);
    }
}
