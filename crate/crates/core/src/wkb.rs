//! Brute-force oracle: WKB wave function of the curve and numeric quadrature
//! of the chord and Wigner integrals.
//!
//! The momentum branches are found directly from H(x) = E along lines of
//! fixed q′ in a rotated frame. The wave function is continued through both
//! turning points with its local Airy form, so the integrals can run over the
//! whole real line without turning-point exclusions.

use crate::curve::ConvexCurve;
use crate::error::{Error, Result};
use crate::evaluators::{ChordRegime, ChordValue};
use crate::geom::{wedge, ChordVector, PhasePoint};
use crate::numeric::{bisect, cumulative_simpson, golden_min, lagrange4};
use crate::special::airy;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

const NODES: usize = 4096;
const BLEND_HALF_WIDTH: f64 = 0.25;
/// Airy widths of forbidden region kept beyond each turning point.
const TAIL_WIDTHS: f64 = 9.0;

/// Symplectic frame rotated by `angle`: x = p′ e_p + q′ e_q.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub angle: f64,
    pub e_p: ChordVector,
    pub e_q: ChordVector,
}

impl Frame {
    pub fn new(angle: f64) -> Frame {
        let (s, c) = angle.sin_cos();
        Frame { angle, e_p: ChordVector::new(c, s), e_q: ChordVector::new(-s, c) }
    }

    pub fn point(&self, p: f64, q: f64) -> PhasePoint {
        PhasePoint::ORIGIN + self.e_p * p + self.e_q * q
    }

    /// Components (p′, q′) of a vector.
    pub fn components(&self, v: ChordVector) -> (f64, f64) {
        (v.dot(self.e_p), v.dot(self.e_q))
    }
}

/// Momentum branches and their actions in one frame, tabulated on the grid
/// q′ = c − h cos φ, φ ∈ [0, π].
#[derive(Debug, Clone)]
pub struct BranchAction {
    pub frame: Frame,
    pub q0: f64,
    pub q1: f64,
    pub hbar: f64,
    pub n_squared: f64,
    pub maslov_phase: f64,
    energy: f64,
    period: f64,
    bound: f64,
    p_plus: Vec<f64>,
    p_minus: Vec<f64>,
    s_plus: Vec<f64>,
    s_minus: Vec<f64>,
    left: AiryTable,
    right: AiryTable,
    curve: ConvexCurve,
}

/// Smooth ingredients of the Airy form near one turning point.
#[derive(Debug, Clone)]
struct AiryTable {
    f: Vec<f64>,
    g: Vec<f64>,
    zeta: Vec<f64>,
    mean: Vec<f64>,
    slope: f64,
    p_turn: f64,
}

fn extrapolate_ends(y: &mut [f64]) {
    let n = y.len();
    y[0] = 4.0 * y[1] - 6.0 * y[2] + 4.0 * y[3] - y[4];
    y[n - 1] = 4.0 * y[n - 2] - 6.0 * y[n - 3] + 4.0 * y[n - 4] - y[n - 5];
}

impl BranchAction {
    fn dphi() -> f64 {
        PI / NODES as f64
    }

    fn q_of_phi(&self, phi: f64) -> f64 {
        0.5 * (self.q0 + self.q1) - 0.5 * (self.q1 - self.q0) * phi.cos()
    }

    fn phi_of_q(&self, q: f64) -> f64 {
        let c = 0.5 * (self.q0 + self.q1);
        let h = 0.5 * (self.q1 - self.q0);
        ((c - q) / h).clamp(-1.0, 1.0).acos()
    }

    fn interp(&self, y: &[f64], q: f64) -> f64 {
        lagrange4(y, 0.0, Self::dphi(), self.phi_of_q(q))
    }

    pub fn p_plus(&self, q: f64) -> f64 {
        self.interp(&self.p_plus, q)
    }

    pub fn p_minus(&self, q: f64) -> f64 {
        self.interp(&self.p_minus, q)
    }

    /// S₊(q) = ∫_{q0}^{q} p₊ dq′
    pub fn s_plus(&self, q: f64) -> f64 {
        self.interp(&self.s_plus, q)
    }

    pub fn s_minus(&self, q: f64) -> f64 {
        self.interp(&self.s_minus, q)
    }

    /// S₊(q1) − S₋(q1), the enclosed area.
    pub fn loop_action(&self) -> f64 {
        self.s_plus[NODES] - self.s_minus[NODES]
    }

    /// Airy width of the turning-point region at q0 and q1.
    pub fn airy_widths(&self) -> (f64, f64) {
        (1.0 / self.left.slope, 1.0 / self.right.slope)
    }

    /// Range outside which the continued wave function is negligible.
    pub fn support(&self) -> (f64, f64) {
        let (w0, w1) = self.airy_widths();
        (self.q0 - TAIL_WIDTHS * w0, self.q1 + TAIL_WIDTHS * w1)
    }

    fn h_line(&self, q: f64) -> impl Fn(f64) -> f64 + '_ {
        move |p: f64| self.curve.hamiltonian(self.frame.point(p, q)) - self.energy
    }

    fn amplitude_at(&self, p: f64, q: f64) -> f64 {
        let dh = self.curve.grad_h(self.frame.point(p, q)).dot(self.frame.e_p).abs();
        (self.period * dh).powf(-0.5)
    }

    /// |∂I/∂p′|^{−1/2} on both branches at q′, from freshly solved momenta.
    pub fn amplitudes(&self, q: f64) -> Result<(f64, f64)> {
        let (pp, pm) = momenta(self, q)?;
        Ok((self.amplitude_at(pp, q), self.amplitude_at(pm, q)))
    }
}

fn line_minimum(ba: &BranchAction, q: f64) -> (f64, f64) {
    let f = ba.h_line(q);
    let b = ba.bound;
    let m = 64;
    let mut best = (f64::INFINITY, 0usize);
    for k in 0..=m {
        let v = f(-b + 2.0 * b * k as f64 / m as f64);
        if v < best.0 {
            best = (v, k);
        }
    }
    let step = 2.0 * b / m as f64;
    let c = -b + step * best.1 as f64;
    golden_min(&f, c - step, c + step, 1e-13 * b)
}

fn momenta(ba: &BranchAction, q: f64) -> Result<(f64, f64)> {
    let (pmin, vmin) = line_minimum(ba, q);
    if vmin > 0.0 {
        return Err(Error::BranchResolutionFailure(format!("no momentum at q' = {q}")));
    }
    let f = ba.h_line(q);
    let tol = 1e-15 * ba.bound;
    let pp = bisect(&f, pmin, ba.bound, tol).map_err(|_| Error::BranchResolutionFailure("upper branch".into()))?;
    let pm = bisect(&f, -ba.bound, pmin, tol).map_err(|_| Error::BranchResolutionFailure("lower branch".into()))?;
    Ok((pp, pm))
}

/// Branch tables in the unrotated frame.
pub fn branch_actions(curve: &ConvexCurve) -> Result<BranchAction> {
    branch_actions_in_frame(curve, 0.0)
}

pub fn branch_actions_in_frame(curve: &ConvexCurve, angle: f64) -> Result<BranchAction> {
    let frame = Frame::new(angle);
    let mut ba = BranchAction {
        frame,
        q0: 0.0,
        q1: 0.0,
        hbar: curve.hbar,
        n_squared: 1.0 / (2.0 * PI),
        maslov_phase: FRAC_PI_2,
        energy: curve.energy,
        period: curve.angle_rescale,
        bound: 1.6 * curve.max_radius(),
        p_plus: vec![],
        p_minus: vec![],
        s_plus: vec![],
        s_minus: vec![],
        left: empty_table(),
        right: empty_table(),
        curve: curve.clone(),
    };
    // q′ extent of the level set from the sign of min_p H − E
    let r = curve.max_radius();
    let m = |q: f64| line_minimum(&ba, q).1;
    let (mut lo, mut hi) = (0.0, 0.0);
    let mut qc = f64::NAN;
    for k in 0..=64 {
        let q = -r + 2.0 * r * k as f64 / 64.0;
        if m(q) < 0.0 {
            if qc.is_nan() {
                lo = q;
            }
            hi = q;
            qc = q;
        }
    }
    if qc.is_nan() {
        return Err(Error::BranchResolutionFailure("level set not found in frame".into()));
    }
    let step = 2.0 * r / 64.0;
    let tol = 1e-14 * r;
    let q0 = bisect(m, lo - step, lo, tol).map_err(|_| Error::BranchResolutionFailure("turning point q0".into()))?;
    let q1 = bisect(m, hi, hi + step, tol).map_err(|_| Error::BranchResolutionFailure("turning point q1".into()))?;
    ba.q0 = q0;
    ba.q1 = q1;

    let n = NODES + 1;
    let dphi = BranchAction::dphi();
    let half = 0.5 * (ba.q1 - ba.q0);
    let mut pp = vec![0.0; n];
    let mut pm = vec![0.0; n];
    for k in 0..n {
        let q = ba.q_of_phi(k as f64 * dphi);
        if k == 0 || k == NODES {
            let p = line_minimum(&ba, q).0;
            pp[k] = p;
            pm[k] = p;
        } else {
            let (a, b) = momenta(&ba, q)?;
            pp[k] = a;
            pm[k] = b;
        }
    }
    let w: Vec<f64> = (0..n).map(|k| half * (k as f64 * dphi).sin()).collect();
    let diff: Vec<f64> = (0..n).map(|k| (pp[k] - pm[k]) * w[k]).collect();
    let sum: Vec<f64> = (0..n).map(|k| (pp[k] + pm[k]) * w[k]).collect();
    let d = cumulative_simpson(&diff, dphi);
    let s = cumulative_simpson(&sum, dphi);
    ba.s_plus = (0..n).map(|k| 0.5 * (s[k] + d[k])).collect();
    ba.s_minus = (0..n).map(|k| 0.5 * (s[k] - d[k])).collect();
    ba.p_plus = pp;
    ba.p_minus = pm;

    let h = ba.hbar;
    let total = d[NODES];
    let mut left = empty_table();
    let mut right = empty_table();
    for t in [&mut left, &mut right] {
        t.f = vec![0.0; n];
        t.g = vec![0.0; n];
        t.zeta = vec![0.0; n];
        t.mean = vec![0.0; n];
    }
    let mut ratio0 = vec![0.0; n];
    let mut ratio1 = vec![0.0; n];
    let (sp1, sm1) = (ba.s_plus[NODES], ba.s_minus[NODES]);
    for k in 1..NODES {
        let q = ba.q_of_phi(k as f64 * dphi);
        let ap = ba.amplitude_at(ba.p_plus[k], q);
        let am = ba.amplitude_at(ba.p_minus[k], q);
        let z0 = (0.75 * d[k] / h).powf(2.0 / 3.0);
        left.zeta[k] = z0;
        left.f[k] = (ap + am) * z0.powf(0.25);
        left.g[k] = (ap - am) * z0.powf(-0.25);
        left.mean[k] = 0.5 * (ba.s_plus[k] + ba.s_minus[k]);
        ratio0[k] = z0 / (q - ba.q0);
        let z1 = (0.75 * (total - d[k]) / h).powf(2.0 / 3.0);
        right.zeta[k] = z1;
        right.f[k] = (am + ap) * z1.powf(0.25);
        right.g[k] = (am - ap) * z1.powf(-0.25);
        right.mean[k] = 0.5 * (ba.s_plus[k] - sp1 + ba.s_minus[k] - sm1);
        ratio1[k] = z1 / (ba.q1 - q);
    }
    for y in [&mut left.f, &mut left.g, &mut right.f, &mut right.g, &mut ratio0, &mut ratio1] {
        extrapolate_ends(y);
    }
    left.zeta[0] = 0.0;
    right.zeta[NODES] = 0.0;
    left.mean[0] = 0.0;
    right.mean[NODES] = 0.0;
    left.slope = ratio0[0];
    right.slope = ratio1[NODES];
    left.p_turn = ba.p_plus[0];
    right.p_turn = ba.p_plus[NODES];
    ba.left = left;
    ba.right = right;
    Ok(ba)
}

fn empty_table() -> AiryTable {
    AiryTable { f: vec![], g: vec![], zeta: vec![], mean: vec![], slope: 1.0, p_turn: 0.0 }
}

fn smoothstep(t: f64) -> f64 {
    let t = t.clamp(0.0, 1.0);
    t * t * (3.0 - 2.0 * t)
}

impl BranchAction {
    /// √π e^{iπ/4} e^{iM/ℏ} [F Ai(−ζ) + i G Ai′(−ζ)]
    fn airy_form(&self, f: f64, g: f64, zeta: f64, mean: f64) -> Result<Complex64> {
        if -zeta > 90.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let (ai, aip) = airy(-zeta)?;
        let c = Complex64::from_polar(PI.sqrt(), FRAC_PI_4 + mean / self.hbar);
        Ok(c * Complex64::new(f * ai, g * aip))
    }

    fn psi_left(&self, q: f64) -> Result<Complex64> {
        let t = &self.left;
        if q <= self.q0 {
            return self.airy_form(t.f[0], t.g[0], t.slope * (q - self.q0), t.p_turn * (q - self.q0));
        }
        let i = |y: &[f64]| self.interp(y, q);
        self.airy_form(i(&t.f), i(&t.g), i(&t.zeta), i(&t.mean))
    }

    fn psi_right(&self, q: f64) -> Result<Complex64> {
        let t = &self.right;
        let lead = Complex64::from_polar(1.0, FRAC_PI_2 + self.s_minus[NODES] / self.hbar);
        let v = if q >= self.q1 {
            self.airy_form(t.f[NODES], t.g[NODES], t.slope * (self.q1 - q), t.p_turn * (q - self.q1))?
        } else {
            let i = |y: &[f64]| self.interp(y, q);
            self.airy_form(i(&t.f), i(&t.g), i(&t.zeta), i(&t.mean))?
        };
        Ok(lead * v)
    }

    /// Wave function continued through the turning points with the local Airy forms.
    pub fn psi(&self, q: f64) -> Result<Complex64> {
        let n = self.n_squared.sqrt();
        let phi = if q <= self.q0 {
            0.0
        } else if q >= self.q1 {
            PI
        } else {
            self.phi_of_q(q)
        };
        let w = smoothstep((phi - (FRAC_PI_2 - BLEND_HALF_WIDTH)) / (2.0 * BLEND_HALF_WIDTH));
        let mut v = Complex64::new(0.0, 0.0);
        if w < 1.0 {
            v += self.psi_left(q)? * (1.0 - w);
        }
        if w > 0.0 {
            v += self.psi_right(q)? * w;
        }
        Ok(v * n)
    }
}

/// Two-branch WKB sum with relative phase e^{iπ/2}, away from the turning points.
pub fn wkb_psi(ba: &BranchAction, q: f64) -> Result<Complex64> {
    let (w0, w1) = ba.airy_widths();
    if !(q > ba.q0 + w0 && q < ba.q1 - w1) {
        return Err(Error::TurningPointRegion);
    }
    let (ap, am) = ba.amplitudes(q)?;
    let h = ba.hbar;
    let plus = Complex64::from_polar(ap, ba.s_plus(q) / h);
    let minus = Complex64::from_polar(am, ba.s_minus(q) / h + ba.maslov_phase);
    Ok((plus + minus) * ba.n_squared.sqrt())
}

/// Composite Simpson of a complex integrand on [a, b] with `panels` (even) intervals.
fn simpson_complex<F: FnMut(f64) -> Result<Complex64>>(mut f: F, a: f64, b: f64, panels: usize) -> Result<Complex64> {
    let h = (b - a) / panels as f64;
    let mut s = f(a)? + f(b)?;
    for k in 1..panels {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        s += f(a + k as f64 * h)? * w;
    }
    Ok(s * (h / 3.0))
}

/// Integrate with doubling until the Richardson estimate is below `tol`.
fn integrate_converged<F: FnMut(f64) -> Result<Complex64>>(
    mut f: F,
    a: f64,
    b: f64,
    start: usize,
    tol: f64,
) -> Result<(Complex64, f64)> {
    let mut panels = start.max(16) & !1;
    let mut prev = simpson_complex(&mut f, a, b, panels)?;
    for _ in 0..6 {
        panels *= 2;
        let cur = simpson_complex(&mut f, a, b, panels)?;
        let err = (cur - prev).norm() / 15.0;
        if err <= tol {
            return Ok((cur, err));
        }
        prev = cur;
    }
    Err(Error::QuadratureNotConverged(format!("{panels} panels")))
}

/// Numeric chord function with its quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericChord {
    pub value: Complex64,
    pub error: f64,
}

impl NumericChord {
    pub fn as_chord_value(&self) -> ChordValue {
        ChordValue::new(self.value, ChordRegime::Uniform)
    }
}

/// Chord function by quadrature in the frame whose p′ axis lies along ξ,
/// where both realizations join the two momentum branches.
pub fn chord_integral_numeric(curve: &ConvexCurve, xi: ChordVector) -> Result<NumericChord> {
    if xi.norm() == 0.0 {
        return Err(Error::AtOrigin);
    }
    let ba = branch_actions_in_frame(curve, xi.angle())?;
    chord_integral_with(&ba, xi)
}

/// Chord function by quadrature in a frame rotated by `angle`.
pub fn chord_integral_in_frame(curve: &ConvexCurve, xi: ChordVector, angle: f64) -> Result<NumericChord> {
    let ba = branch_actions_in_frame(curve, angle)?;
    if let Ok(g) = crate::chords::find_chord_realizations(curve, xi) {
        for r in [g.r1, g.r2] {
            let (pa, qa) = ba.frame.components(r.x_minus.as_chord());
            let (pb, qb) = ba.frame.components(r.x_plus.as_chord());
            let upper = |p: f64, q: f64| p > 0.5 * (ba.p_plus(q) + ba.p_minus(q));
            if upper(pa, qa) == upper(pb, qb) {
                return Err(Error::NoCrossedFrame);
            }
        }
    }
    chord_integral_with(&ba, xi)
}

/// (1/2πℏ) ∫ ψ(q + ξ_q/2) ψ*(q − ξ_q/2) e^{−iξ_p q/ℏ} dq with frame components of ξ.
pub fn chord_integral_with(ba: &BranchAction, xi: ChordVector) -> Result<NumericChord> {
    let (xp, xq) = ba.frame.components(xi);
    let h = ba.hbar;
    let (lo, hi) = ba.support();
    let a = lo + 0.5 * xq.abs();
    let b = hi - 0.5 * xq.abs();
    let scale = 1.0 / (2.0 * PI * h);
    if a >= b {
        return Ok(NumericChord { value: Complex64::new(0.0, 0.0), error: 0.0 });
    }
    let pmax = ba.p_plus.iter().chain(ba.p_minus.iter()).fold(0.0f64, |m, p| m.max(p.abs()));
    let freq = (xp.abs() + 2.0 * pmax) / h;
    let start = ((b - a) * freq * 2.0) as usize + 256;
    let f = |q: f64| -> Result<Complex64> {
        let u = ba.psi(q + 0.5 * xq)?;
        let v = ba.psi(q - 0.5 * xq)?;
        Ok(u * v.conj() * Complex64::from_polar(1.0, -xp * q / h))
    };
    let (v, err) = integrate_converged(f, a, b, start, 1e-9)?;
    Ok(NumericChord { value: v * scale, error: err * scale })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericWigner {
    pub value: f64,
    /// |Im W| / |W|
    pub imag_residual: f64,
    pub error: f64,
}

/// (1/2πℏ) ∫ ψ(q + y/2) ψ*(q − y/2) e^{−ipy/ℏ} dy in the unrotated frame.
pub fn wigner_integral_numeric(curve: &ConvexCurve, x: PhasePoint) -> Result<NumericWigner> {
    let ba = branch_actions(curve)?;
    wigner_integral_with(&ba, x)
}

pub fn wigner_integral_with(ba: &BranchAction, x: PhasePoint) -> Result<NumericWigner> {
    let h = ba.hbar;
    let (p, q) = ba.frame.components(x.as_chord());
    let (lo, hi) = ba.support();
    let y = 2.0 * (q - lo).min(hi - q);
    if y <= 0.0 {
        return Ok(NumericWigner { value: 0.0, imag_residual: 0.0, error: 0.0 });
    }
    let pmax = ba.p_plus.iter().chain(ba.p_minus.iter()).fold(0.0f64, |m, v| m.max(v.abs()));
    let start = (2.0 * y * (p.abs() + pmax) / h) as usize + 256;
    let f = |s: f64| -> Result<Complex64> {
        Ok(ba.psi(q + 0.5 * s)? * ba.psi(q - 0.5 * s)?.conj() * Complex64::from_polar(1.0, -p * s / h))
    };
    let (v, err) = integrate_converged(f, -y, y, start, 1e-9)?;
    let w = v / (2.0 * PI * h);
    let residual = if w.re == 0.0 { 0.0 } else { w.im.abs() / w.re.abs() };
    if residual > 1e-3 && w.im.abs() > 1e-9 {
        return Err(Error::QuadratureNotConverged(format!("imaginary residual {residual:.2e}")));
    }
    Ok(NumericWigner { value: w.re, imag_residual: residual, error: err / (2.0 * PI * h) })
}

/// Square grid of chords centred on the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordGrid {
    /// Half-width of the grid along each axis.
    pub extent: f64,
    /// Nodes per axis.
    pub count: usize,
}

/// W(x) = (1/2πℏ) ∫ χ(ξ) e^{iξ∧x/ℏ} d²ξ by direct summation over the grid.
pub fn wigner_from_chord<F>(chi: F, x: PhasePoint, grid: &ChordGrid, hbar: f64) -> Result<f64>
where
    F: Fn(ChordVector) -> Result<Complex64>,
{
    if grid.count < 3 || !(grid.extent > 0.0) {
        return Err(Error::InvalidParameter("chord grid needs at least 3 nodes and a positive extent".into()));
    }
    let d = 2.0 * grid.extent / (grid.count - 1) as f64;
    if d * (x.norm() + 0.5 * grid.extent) / hbar > PI {
        return Err(Error::GridTooCoarse(format!("step {d:.3e} aliases at |x| = {:.3e}", x.norm())));
    }
    let mut s = Complex64::new(0.0, 0.0);
    for i in 0..grid.count {
        for j in 0..grid.count {
            let xi = ChordVector::new(-grid.extent + d * i as f64, -grid.extent + d * j as f64);
            let wi = if i == 0 || i == grid.count - 1 { 0.5 } else { 1.0 };
            let wj = if j == 0 || j == grid.count - 1 { 0.5 } else { 1.0 };
            s += chi(xi)? * Complex64::from_polar(wi * wj, wedge(xi, x.as_chord()) / hbar);
        }
    }
    Ok(s.re * d * d / (2.0 * PI * hbar))
}
