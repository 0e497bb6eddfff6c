//! Quantized convex level curves of H = p²/2 + V(q) and their angle-variable
//! parametrization.
//!
//! The perturbation strength is measured against the classical radius
//! R0 = sqrt(2ℏ(n + ½)): the cubic family uses V = q²/2 + β q³/R0 and the
//! quartic family V = q²/2 + β q⁴/R0², so a given β describes the same shape
//! at every n and ℏ.

use crate::error::{Error, Result};
use crate::geom::{ChordVector, PhasePoint, Sym2};
use crate::numeric::{bisect, golden_min};
use std::f64::consts::PI;

pub const SAMPLES: usize = 2048;
const SUBSTEPS: usize = 4;
const ACTION_NODES: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Circle,
    CubicPerturbed { beta: f64 },
    QuarticPerturbed { beta: f64 },
}

impl Family {
    pub fn from_name(name: &str, params: &[f64]) -> Result<Family> {
        let beta = || {
            params
                .first()
                .copied()
                .ok_or_else(|| Error::InvalidParameter(format!("family {name} needs a beta parameter")))
        };
        match name {
            "circle" => Ok(Family::Circle),
            "cubic-perturbed" | "cubic" => Ok(Family::CubicPerturbed { beta: beta()? }),
            "quartic-perturbed" | "quartic" => Ok(Family::QuarticPerturbed { beta: beta()? }),
            _ => Err(Error::InvalidParameter(format!("unknown curve family {name}"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Circle => "circle",
            Family::CubicPerturbed { .. } => "cubic-perturbed",
            Family::QuarticPerturbed { .. } => "quartic-perturbed",
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            Family::Circle => vec![],
            Family::CubicPerturbed { beta } | Family::QuarticPerturbed { beta } => vec![beta],
        }
    }

    /// Invariant under x -> -x.
    pub fn centrally_symmetric(&self) -> bool {
        !matches!(self, Family::CubicPerturbed { beta } if *beta != 0.0)
    }
}

/// Potential V(q) = q²/2 + c3 q³ + c4 q⁴ restricted to its central well.
#[derive(Debug, Clone, Copy)]
struct Well {
    c3: f64,
    c4: f64,
    q_left: f64,
    q_right: f64,
    e_max: f64,
}

impl Well {
    fn new(c3: f64, c4: f64) -> Well {
        let mut w = Well { c3, c4, q_left: f64::NEG_INFINITY, q_right: f64::INFINITY, e_max: f64::INFINITY };
        if c3 != 0.0 {
            let qb = -1.0 / (3.0 * c3);
            if qb < 0.0 {
                w.q_left = qb;
            } else {
                w.q_right = qb;
            }
        }
        if c4 < 0.0 {
            let qb = (-1.0 / (4.0 * c4)).sqrt();
            w.q_left = w.q_left.max(-qb);
            w.q_right = w.q_right.min(qb);
        }
        let vl = if w.q_left.is_finite() { w.v(w.q_left) } else { f64::INFINITY };
        let vr = if w.q_right.is_finite() { w.v(w.q_right) } else { f64::INFINITY };
        w.e_max = vl.min(vr);
        w
    }

    fn v(&self, q: f64) -> f64 {
        q * q * (0.5 + q * (self.c3 + q * self.c4))
    }

    fn dv(&self, q: f64) -> f64 {
        q + q * q * (3.0 * self.c3 + 4.0 * self.c4 * q)
    }

    fn d2v(&self, q: f64) -> f64 {
        1.0 + q * (6.0 * self.c3 + 12.0 * self.c4 * q)
    }

    fn contains(&self, q: f64) -> bool {
        q > self.q_left && q < self.q_right
    }

    fn turning_points(&self, e: f64) -> Result<(f64, f64)> {
        if !(e > 0.0) || e >= self.e_max {
            return Err(Error::OutsideActionDomain);
        }
        let f = |q: f64| self.v(q) - e;
        let guess = (2.0 * e).sqrt();
        let hi = if self.q_right.is_finite() {
            self.q_right
        } else {
            let mut b = 2.0 * guess + 1.0;
            while f(b) < 0.0 {
                b *= 2.0;
            }
            b
        };
        let lo = if self.q_left.is_finite() {
            self.q_left
        } else {
            let mut b = -2.0 * guess - 1.0;
            while f(b) < 0.0 {
                b *= 2.0;
            }
            b
        };
        let q1 = bisect(f, 0.0, hi, 1e-15 * hi.abs().max(1.0))?;
        let q0 = bisect(f, lo, 0.0, 1e-15 * lo.abs().max(1.0))?;
        Ok((q0, q1))
    }

    /// E − V(q) = (q − q0)(q1 − q) g(q); returns the coefficients of g.
    fn reduced(&self, e: f64, q0: f64, q1: f64) -> [f64; 3] {
        // E − V = -(c4 q⁴ + c3 q³ + q²/2 − E); divide c4 q⁴ + c3 q³ + ½ q² + 0 q − E by q² − s q + t
        let s = q0 + q1;
        let t = q0 * q1;
        let c = [-e, 0.0, 0.5, self.c3, self.c4];
        let r2 = c[4];
        let r1 = c[3] + s * r2;
        let r0 = c[2] + s * r1 - t * r2;
        // P = (q - q0)(q - q1) R, and E - V = -P = (q - q0)(q1 - q) R
        [r0, r1, r2]
    }

    fn action_and_derivative(&self, e: f64) -> Result<(f64, f64)> {
        if e <= 0.0 {
            return Ok((0.0, 1.0 / self.d2v(0.0).sqrt()));
        }
        let (q0, q1) = self.turning_points(e)?;
        let g = self.reduced(e, q0, q1);
        let c = 0.5 * (q0 + q1);
        let h = 0.5 * (q1 - q0);
        let n = ACTION_NODES;
        let (mut si, mut sd) = (0.0, 0.0);
        for k in 0..=n {
            let phi = PI * k as f64 / n as f64;
            let q = c - h * phi.cos();
            let gv = g[0] + q * (g[1] + q * g[2]);
            if gv <= 0.0 {
                return Err(Error::NoConvexLevel(format!("reduced momentum vanishes at q={q}")));
            }
            let w = if k == 0 || k == n { 0.5 } else { 1.0 };
            let sg = gv.sqrt();
            si += w * phi.sin().powi(2) * sg;
            sd += w / sg;
        }
        let dphi = PI / n as f64;
        let action = 2f64.sqrt() * h * h / PI * si * dphi;
        let deriv = sd * dphi / (PI * 2f64.sqrt());
        Ok((action, deriv))
    }
}

/// Quantized convex curve H(x) = E with enclosed area 2πℏ(n + ½).
#[derive(Debug, Clone)]
pub struct ConvexCurve {
    pub family: Family,
    pub energy: f64,
    /// ℐ = ℏ(n + ½)
    pub action: f64,
    pub hbar: f64,
    pub n: u32,
    /// T(E)/2π = dI/dE
    pub angle_rescale: f64,
    well: Well,
    // (p, q, ½∫x∧ẋ dθ from the anchor)
    samples: Vec<[f64; 3]>,
    loop_area: f64,
}

pub fn build_curve(family: &str, params: &[f64], n: u32, hbar: f64) -> Result<ConvexCurve> {
    ConvexCurve::new(Family::from_name(family, params)?, n, hbar)
}

impl ConvexCurve {
    pub fn new(family: Family, n: u32, hbar: f64) -> Result<ConvexCurve> {
        if !(hbar > 0.0) || !hbar.is_finite() {
            return Err(Error::InvalidParameter(format!("hbar must be positive, got {hbar}")));
        }
        let action = hbar * (n as f64 + 0.5);
        let r0 = (2.0 * action).sqrt();
        let (c3, c4) = match family {
            Family::Circle => (0.0, 0.0),
            Family::CubicPerturbed { beta } => (beta / r0, 0.0),
            Family::QuarticPerturbed { beta } => (0.0, beta / (r0 * r0)),
        };
        for b in family.params() {
            if !b.is_finite() {
                return Err(Error::InvalidParameter("non-finite beta".into()));
            }
        }
        let well = Well::new(c3, c4);
        let energy = solve_energy(&well, action)?;
        let (_, angle_rescale) = well.action_and_derivative(energy)?;
        let (q0, q1) = well.turning_points(energy)?;
        // curvature of the level set has the sign of 2(E−V)V'' + V'²
        for k in 0..=400 {
            let q = q0 + (q1 - q0) * k as f64 / 400.0;
            if 2.0 * (energy - well.v(q)) * well.d2v(q) + well.dv(q).powi(2) <= 0.0 {
                return Err(Error::NoConvexLevel(format!("level curve not convex near q={q:.4}")));
            }
        }
        let mut curve = ConvexCurve {
            family,
            energy,
            action,
            hbar,
            n,
            angle_rescale,
            well,
            samples: Vec::with_capacity(SAMPLES + 1),
            loop_area: 0.0,
        };
        curve.trace(q1)?;
        Ok(curve)
    }

    fn field(&self, s: [f64; 3]) -> [f64; 3] {
        let (p, q) = (s[0], s[1]);
        let w = self.angle_rescale;
        let dv = self.well.dv(q);
        [-w * dv, w * p, 0.5 * w * (p * p + q * dv)]
    }

    fn rk4(&self, s: [f64; 3], h: f64) -> [f64; 3] {
        let add = |a: [f64; 3], b: [f64; 3], f: f64| [a[0] + f * b[0], a[1] + f * b[1], a[2] + f * b[2]];
        let k1 = self.field(s);
        let k2 = self.field(add(s, k1, h / 2.0));
        let k3 = self.field(add(s, k2, h / 2.0));
        let k4 = self.field(add(s, k3, h));
        [
            s[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            s[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
            s[2] + h / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]),
        ]
    }

    fn project(&self, s: [f64; 3]) -> [f64; 3] {
        let mut x = PhasePoint::new(s[0], s[1]);
        for _ in 0..2 {
            let g = self.grad_h(x);
            let r = (self.hamiltonian(x) - self.energy) / g.dot(g);
            x = x - g * r;
        }
        [x.p, x.q, s[2]]
    }

    fn trace(&mut self, q1: f64) -> Result<()> {
        let dtheta = 2.0 * PI / SAMPLES as f64;
        let h = dtheta / SUBSTEPS as f64;
        let mut s = [0.0, q1, 0.0];
        self.samples.push(s);
        for _ in 0..SAMPLES {
            for _ in 0..SUBSTEPS {
                s = self.rk4(s, h);
            }
            s = self.project(s);
            self.samples.push(s);
        }
        let end = self.samples[SAMPLES];
        let r0 = (2.0 * self.action).sqrt();
        if (end[0].hypot(end[1] - q1)) > 1e-8 * r0 {
            return Err(Error::NoConvexLevel("angle flow does not close after one period".into()));
        }
        self.loop_area = end[2];
        let target = 2.0 * PI * self.action;
        if ((self.loop_area - target) / target).abs() > 1e-10 {
            return Err(Error::NoConvexLevel(format!(
                "enclosed area {} differs from 2πℏ(n+½) = {target}",
                self.loop_area
            )));
        }
        for k in 0..SAMPLES {
            let x = PhasePoint::new(self.samples[k][0], self.samples[k][1]);
            let v = self.velocity_on_curve(x);
            if self.hessian_at_energy(x).form(v) <= 0.0 {
                return Err(Error::NoConvexLevel("curvature changes sign".into()));
            }
        }
        Ok(())
    }

    pub fn hamiltonian(&self, x: PhasePoint) -> f64 {
        0.5 * x.p * x.p + self.well.v(x.q)
    }

    pub fn grad_h(&self, x: PhasePoint) -> ChordVector {
        ChordVector::new(x.p, self.well.dv(x.q))
    }

    pub fn hess_h(&self, x: PhasePoint) -> Sym2 {
        Sym2 { pp: 1.0, pq: 0.0, qq: self.well.d2v(x.q) }
    }

    /// Classical radius sqrt(2ℐ).
    pub fn scale(&self) -> f64 {
        (2.0 * self.action).sqrt()
    }

    pub fn enclosed_area(&self) -> f64 {
        self.loop_area
    }

    /// 2πℏ(n + ½).
    pub fn quantized_area(&self) -> f64 {
        2.0 * PI * self.action
    }

    pub fn is_centrally_symmetric(&self) -> bool {
        self.family.centrally_symmetric()
    }

    pub fn turning_points(&self) -> (f64, f64) {
        self.well.turning_points(self.energy).expect("validated at construction")
    }

    pub fn in_action_domain(&self, x: PhasePoint) -> bool {
        self.well.contains(x.q) && self.hamiltonian(x) < self.well.e_max
    }

    /// I(E) and dI/dE.
    pub fn action_of_energy(&self, e: f64) -> Result<(f64, f64)> {
        self.well.action_and_derivative(e)
    }

    fn check_domain(&self, x: PhasePoint) -> Result<f64> {
        if !x.is_finite() || !self.in_action_domain(x) {
            return Err(Error::OutsideActionDomain);
        }
        Ok(self.hamiltonian(x))
    }

    /// Action function I(x) = I(H(x)).
    pub fn action_at(&self, x: PhasePoint) -> Result<f64> {
        let e = self.check_domain(x)?;
        Ok(self.well.action_and_derivative(e)?.0)
    }

    fn second_derivative(&self, e: f64) -> Result<f64> {
        let h = 1e-4 * e.max(self.energy * 1e-3);
        let up = self.well.action_and_derivative(e + h);
        let lo = self.well.action_and_derivative(e - h);
        let mid = self.well.action_and_derivative(e)?.1;
        match (lo, up) {
            (Ok(l), Ok(u)) => Ok((u.1 - l.1) / (2.0 * h)),
            (Ok(l), Err(_)) => Ok((mid - l.1) / h),
            (Err(_), Ok(u)) => Ok((u.1 - mid) / h),
            (Err(e), Err(_)) => Err(e),
        }
    }

    /// ẋ = J∇I for the angle-rescaled action flow.
    pub fn velocity(&self, x: PhasePoint) -> Result<ChordVector> {
        let e = self.check_domain(x)?;
        let g = self.grad_h(x);
        if g.norm() < 1e-14 * self.scale() {
            return Err(Error::GradientVanishes);
        }
        let w = self.well.action_and_derivative(e)?.1;
        Ok(ChordVector::new(-w * g.xi_q, w * g.xi_p))
    }

    /// ẋ using the curve's own period, for points on the level set.
    pub fn velocity_on_curve(&self, x: PhasePoint) -> ChordVector {
        let g = self.grad_h(x);
        let w = self.angle_rescale;
        ChordVector::new(-w * g.xi_q, w * g.xi_p)
    }

    /// ∇I(x).
    pub fn action_gradient(&self, x: PhasePoint) -> Result<ChordVector> {
        let e = self.check_domain(x)?;
        let w = self.well.action_and_derivative(e)?.1;
        Ok(self.grad_h(x) * w)
    }

    /// Hessian of I at x.
    pub fn hessian(&self, x: PhasePoint) -> Result<Sym2> {
        let e = self.check_domain(x)?;
        let w = self.well.action_and_derivative(e)?.1;
        let w2 = self.second_derivative(e)?;
        Ok(self.hessian_with(x, w, w2))
    }

    fn hessian_at_energy(&self, x: PhasePoint) -> Sym2 {
        let w2 = self.second_derivative(self.energy).unwrap_or(0.0);
        self.hessian_with(x, self.angle_rescale, w2)
    }

    fn hessian_with(&self, x: PhasePoint, w: f64, w2: f64) -> Sym2 {
        let g = self.grad_h(x);
        let hh = self.hess_h(x);
        Sym2 {
            pp: w * hh.pp + w2 * g.xi_p * g.xi_p,
            pq: w * hh.pq + w2 * g.xi_p * g.xi_q,
            qq: w * hh.qq + w2 * g.xi_q * g.xi_q,
        }
    }

    /// v·𝒥_x·v.
    pub fn hessian_form(&self, x: PhasePoint, v: ChordVector) -> Result<f64> {
        Ok(self.hessian(x)?.form(v))
    }

    /// Euclidean curvature of the level curve through x, Q/|ẋ|³.
    pub fn curvature(&self, x: PhasePoint) -> Result<f64> {
        let v = self.velocity(x)?;
        Ok(self.hessian(x)?.form(v) / v.norm().powi(3))
    }

    fn state_at(&self, theta: f64) -> [f64; 3] {
        let t = theta.rem_euclid(2.0 * PI);
        let d = 2.0 * PI / SAMPLES as f64;
        let k = ((t / d).round() as usize).min(SAMPLES);
        let dt = t - k as f64 * d;
        let s = self.samples[k];
        if dt == 0.0 {
            return s;
        }
        self.project(self.rk4(s, dt))
    }

    /// x(θ), θ = 0 at the positive-q turning point, counterclockwise.
    pub fn point_at(&self, theta: f64) -> PhasePoint {
        let s = self.state_at(theta);
        PhasePoint::new(s[0], s[1])
    }

    /// Cached sample k of SAMPLES, θ = 2πk/SAMPLES.
    pub fn sample(&self, k: usize) -> PhasePoint {
        let s = self.samples[k % SAMPLES];
        PhasePoint::new(s[0], s[1])
    }

    pub fn sample_theta(k: usize) -> f64 {
        2.0 * PI * k as f64 / SAMPLES as f64
    }

    /// ½∫ x∧ẋ dθ counterclockwise from θa to θb.
    pub fn arc_integral(&self, theta_a: f64, theta_b: f64) -> f64 {
        let ta = theta_a.rem_euclid(2.0 * PI);
        let tb = theta_b.rem_euclid(2.0 * PI);
        let ca = self.state_at(ta)[2];
        let cb = self.state_at(tb)[2];
        if tb >= ta {
            cb - ca
        } else {
            cb + self.loop_area - ca
        }
    }

    /// Angle parameter of a point on (or very near) the curve.
    pub fn theta_of(&self, x: PhasePoint) -> f64 {
        let mut best = (f64::INFINITY, 0usize);
        for k in 0..SAMPLES {
            let s = self.samples[k];
            let d = (s[0] - x.p).powi(2) + (s[1] - x.q).powi(2);
            if d < best.0 {
                best = (d, k);
            }
        }
        let mut theta = Self::sample_theta(best.1);
        for _ in 0..4 {
            let y = self.point_at(theta);
            let v = self.velocity_on_curve(y);
            theta += (x - y).dot(v) / v.dot(v);
        }
        theta.rem_euclid(2.0 * PI)
    }

    /// Counterclockwise angle from the tangent at θa to the tangent at θb, in [0, 2π).
    pub fn tangent_turn(&self, theta_a: f64, theta_b: f64) -> f64 {
        let va = self.velocity_on_curve(self.point_at(theta_a));
        let vb = self.velocity_on_curve(self.point_at(theta_b));
        let a = crate::geom::wedge(va, vb).atan2(va.dot(vb));
        a.rem_euclid(2.0 * PI)
    }

    /// Parameter of the point whose tangent is antiparallel to the one at θa.
    pub fn antipode(&self, theta_a: f64) -> Result<f64> {
        let eps = 1e-9;
        let f = |tb: f64| self.tangent_turn(theta_a, tb) - PI;
        let tb = bisect(f, theta_a + eps, theta_a + 2.0 * PI - eps, 1e-13)?;
        Ok(tb.rem_euclid(2.0 * PI))
    }

    /// Largest |x| on the curve, from the cached samples refined by golden section.
    pub fn max_radius(&self) -> f64 {
        let mut best = (0.0, 0usize);
        for k in 0..SAMPLES {
            let r = self.sample(k).norm();
            if r > best.0 {
                best = (r, k);
            }
        }
        let t = Self::sample_theta(best.1);
        let d = 2.0 * PI / SAMPLES as f64;
        let (_, v) = golden_min(|th| -self.point_at(th).norm(), t - d, t + d, 1e-12);
        -v
    }
}

fn solve_energy(well: &Well, action: f64) -> Result<f64> {
    let f = |e: f64| match well.action_and_derivative(e) {
        Ok((i, _)) => i - action,
        Err(_) => f64::NAN,
    };
    let top = if well.e_max.is_finite() { well.e_max * (1.0 - 1e-9) } else { f64::INFINITY };
    let mut hi = (1.5 * action).min(top);
    for _ in 0..200 {
        if f(hi) > 0.0 {
            let lo = hi * 1e-6;
            if !(f(lo) < 0.0) {
                return Err(Error::QuantizationRootNotBracketed);
            }
            return bisect(f, lo, hi, 1e-15 * hi);
        }
        if hi >= top {
            return Err(Error::NoConvexLevel(format!(
                "action {action} exceeds the largest bound orbit (barrier energy {})",
                well.e_max
            )));
        }
        hi = (2.0 * hi).min(top);
    }
    Err(Error::QuantizationRootNotBracketed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_ground_state() {
        let c = build_curve("circle", &[], 0, 1.0).unwrap();
        assert!((c.action - 0.5).abs() < 1e-15);
        assert!((c.energy - 0.5).abs() < 1e-12);
        let x = c.point_at(0.0);
        assert!(x.p.abs() < 1e-14 && (x.q - 1.0).abs() < 1e-12);
        let y = c.point_at(PI);
        assert!(y.p.abs() < 1e-10 && (y.q + 1.0).abs() < 1e-10);
    }

    #[test]
    fn circle_rescale_is_unit() {
        let c = build_curve("circle", &[], 10, 1.0).unwrap();
        assert!((c.angle_rescale - 1.0).abs() < 1e-12);
        assert!((c.scale() - 21f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn cubic_quantized() {
        let c = build_curve("cubic-perturbed", &[0.05], 10, 1.0).unwrap();
        assert!((c.enclosed_area() - 21.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn unbound_rejected() {
        assert!(matches!(build_curve("cubic", &[0.4], 10, 1.0), Err(Error::NoConvexLevel(_))));
    }
}
