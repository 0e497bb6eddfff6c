//! Semiclassical chord function: uniform, asymptotic and transitional forms.

use crate::chords::{
    diameter_along, find_chord_realizations, fold_data, ingredients_at, ChordGeometry, FoldData,
};
use crate::curve::ConvexCurve;
use crate::error::{Error, Result};
use crate::geom::{wedge, ChordVector};
use crate::special::{airy, airy_reflected, AiryKernel};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_4, PI};

/// Squared normalization constant N², 1/2π by default.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalization {
    pub n_squared: f64,
}

impl Default for Normalization {
    fn default() -> Self {
        Normalization { n_squared: 1.0 / (2.0 * PI) }
    }
}

/// Regime boundaries shared by the chord and Wigner evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    /// Oscillatory once the pair area reaches this many ℏ.
    pub oscillatory: f64,
    /// Transitional window for ζ at or below this.
    pub transitional_zeta: f64,
    /// Evanescent once the positive Airy argument exceeds this.
    pub evanescent_arg: f64,
    /// Largest ζ accepted by the transitional forms.
    pub transitional_reach: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { oscillatory: 8.0, transitional_zeta: 1.5, evanescent_arg: 4.0, transitional_reach: 6.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EvalOptions {
    pub norm: Normalization,
    pub thresholds: Thresholds,
}

impl EvalOptions {
    pub fn with_n_squared(n_squared: f64) -> Self {
        EvalOptions { norm: Normalization { n_squared }, ..Default::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChordRegime {
    Uniform,
    Asymptotic,
    Transitional,
    Evanescent,
}

impl ChordRegime {
    pub fn tag(self) -> &'static str {
        match self {
            ChordRegime::Uniform => "uniform",
            ChordRegime::Asymptotic => "asymptotic",
            ChordRegime::Transitional => "transitional",
            ChordRegime::Evanescent => "evanescent",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordValue {
    pub re: f64,
    pub im: f64,
    pub regime: ChordRegime,
}

impl ChordValue {
    pub fn new(z: Complex64, regime: ChordRegime) -> Self {
        ChordValue { re: z.re, im: z.im, regime }
    }

    pub fn complex(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

/// Classification of a chord by distance to the diameter locus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegimeWindow {
    Oscillatory,
    UniformWindow,
    TransitionalWindow,
    Evanescent,
}

impl RegimeWindow {
    pub fn tag(self) -> &'static str {
        match self {
            RegimeWindow::Oscillatory => "oscillatory",
            RegimeWindow::UniformWindow => "uniform-window",
            RegimeWindow::TransitionalWindow => "transitional-window",
            RegimeWindow::Evanescent => "evanescent",
        }
    }
}

/// Coefficient of the leading Airy combination, N²/(i√(2ℏ)).
fn prefactor(opts: &EvalOptions, hbar: f64) -> Complex64 {
    Complex64::new(0.0, -opts.norm.n_squared / (2.0 * hbar).sqrt())
}

fn phase(angle: f64) -> Complex64 {
    Complex64::from_polar(1.0, angle)
}

pub fn chord_uniform(curve: &ConvexCurve, xi: ChordVector) -> Result<ChordValue> {
    chord_uniform_with(curve, xi, &EvalOptions::default())
}

pub fn chord_uniform_with(curve: &ConvexCurve, xi: ChordVector, opts: &EvalOptions) -> Result<ChordValue> {
    match find_chord_realizations(curve, xi) {
        Ok(g) => Ok(ChordValue::new(uniform_value(curve, &g, opts)?, ChordRegime::Uniform)),
        Err(Error::OutsideCaustic { .. }) => Ok(ChordValue { regime: ChordRegime::Evanescent, ..transitional_any(curve, xi, opts)? }),
        Err(Error::NearCausticDegenerate) => transitional_any(curve, xi, opts),
        Err(e) => Err(e),
    }
}

/// The two-term Airy combination for resolved realizations.
pub fn uniform_value(curve: &ConvexCurve, g: &ChordGeometry, opts: &EvalOptions) -> Result<Complex64> {
    uniform_value_kernel(curve, g, opts, airy_reflected)
}

pub fn uniform_value_kernel(
    curve: &ConvexCurve,
    g: &ChordGeometry,
    opts: &EvalOptions,
    kernel: AiryKernel,
) -> Result<Complex64> {
    let h = curve.hbar;
    let z = g.zeta;
    let (ai, aip) = kernel(z)?;
    let bracket = Complex64::new(z.powf(0.25) * g.sigma_i * ai, z.powf(-0.25) * g.delta_i * aip);
    let bracket = if z == 0.0 { Complex64::new(0.0, 0.0) } else { bracket };
    Ok(prefactor(opts, h) * phase(g.mean_phase() / h) * bracket)
}

pub fn chord_asymptotic(curve: &ConvexCurve, xi: ChordVector) -> Result<ChordValue> {
    chord_asymptotic_with(curve, xi, &EvalOptions::default())
}

pub fn chord_asymptotic_with(curve: &ConvexCurve, xi: ChordVector, opts: &EvalOptions) -> Result<ChordValue> {
    let g = oscillatory_geometry(curve, xi, opts)?;
    Ok(ChordValue::new(asymptotic_value(curve, &g, opts), ChordRegime::Asymptotic))
}

/// Sum of the two stationary-phase terms.
pub fn asymptotic_value(curve: &ConvexCurve, g: &ChordGeometry, opts: &EvalOptions) -> Complex64 {
    let h = curve.hbar;
    let c = Complex64::new(0.0, -opts.norm.n_squared / (2.0 * PI * h).sqrt());
    let a1 = g.r1.bracket.abs().powf(-0.5);
    let a2 = g.r2.bracket.abs().powf(-0.5);
    c * (phase(g.r1.phase / h - FRAC_PI_4) * a1 + phase(g.r2.phase / h + FRAC_PI_4) * a2)
}

fn oscillatory_geometry(curve: &ConvexCurve, xi: ChordVector, opts: &EvalOptions) -> Result<ChordGeometry> {
    let threshold = opts.thresholds.oscillatory * curve.hbar;
    let g = match find_chord_realizations(curve, xi) {
        Ok(g) => g,
        Err(Error::OutsideCaustic { .. }) | Err(Error::NearCausticDegenerate) => {
            return Err(Error::TooCloseToCaustic { area: 0.0, threshold })
        }
        Err(e) => return Err(e),
    };
    if g.area_diff < threshold {
        return Err(Error::TooCloseToCaustic { area: g.area_diff, threshold });
    }
    Ok(g)
}

/// Airy argument, amplitude and mean phase of the transitional form,
/// χ = 2N²/(i√(2ℏ)) · e^{iΦ̄/ℏ} · amplitude · Ai(−ζ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionalForm {
    pub zeta: f64,
    pub amplitude: f64,
    pub mean_phase: f64,
}

/// Below this ζ the near-caustic ingredients are replaced by the fold normal form.
const NORMAL_FORM_ZETA: f64 = 1e-3;

pub fn transitional_form(curve: &ConvexCurve, xi: ChordVector) -> Result<TransitionalForm> {
    if !(xi.norm() > 1e-12 * curve.scale()) {
        return Err(Error::AtOrigin);
    }
    let h = curve.hbar;
    if curve.is_centrally_symmetric() {
        let x = crate::geom::PhasePoint::ORIGIN + xi * 0.5;
        let s = curve.action - curve.action_at(x)?;
        let q = curve.hessian_form(x, curve.velocity(x)?)?;
        return Ok(TransitionalForm {
            zeta: 2.0 * s / (h * h * q).cbrt(),
            amplitude: h.powf(-1.0 / 6.0) * q.powf(-1.0 / 3.0) / 2f64.sqrt(),
            mean_phase: curve.enclosed_area() / 2.0,
        });
    }
    match find_chord_realizations(curve, xi) {
        Ok(g) => {
            let t = ingredients_at(curve, g.midpoint, xi)?;
            if t.inside {
                let sum = t.s_plus.powf(1.5) / t.qform_plus.sqrt() + t.s_minus.powf(1.5) / t.qform_minus.sqrt();
                let zeta = (2f64.sqrt() * sum / h).powf(2.0 / 3.0);
                if zeta > NORMAL_FORM_ZETA {
                    return Ok(TransitionalForm {
                        zeta,
                        amplitude: zeta.powf(0.25) * t.bracket_estimate.abs().powf(-0.5),
                        mean_phase: g.mean_phase(),
                    });
                }
            }
            let nf = fold_normal_form(curve, xi)?;
            Ok(TransitionalForm { mean_phase: g.mean_phase(), ..nf })
        }
        Err(Error::OutsideCaustic { .. }) | Err(Error::NearCausticDegenerate) => fold_normal_form(curve, xi),
        Err(e) => Err(e),
    }
}

/// Local quadratic model of the two arcs meeting at the diameter along ξ.
pub fn fold_normal_form(curve: &ConvexCurve, xi: ChordVector) -> Result<TransitionalForm> {
    let fd: FoldData = fold_data(curve, diameter_along(curve, xi)?)?;
    let d = fd.diameter;
    let u = xi.unit();
    let gap = (d.xi_d.norm() - xi.norm()) * u.dot(fd.normal_b);
    let k = fd.curvature_a + fd.curvature_b;
    let h = curve.hbar;
    Ok(TransitionalForm {
        zeta: gap * (2.0 / k).cbrt() * h.powf(-2.0 / 3.0),
        amplitude: h.powf(-1.0 / 6.0) * (fd.speed_a * fd.speed_b).powf(-0.5) * 2f64.powf(-1.0 / 6.0) * k.powf(-1.0 / 3.0),
        mean_phase: fd.phase + wedge(d.x_d.as_chord(), xi - d.xi_d),
    })
}

pub fn chord_transitional(curve: &ConvexCurve, xi: ChordVector) -> Result<ChordValue> {
    chord_transitional_with(curve, xi, &EvalOptions::default())
}

pub fn chord_transitional_with(curve: &ConvexCurve, xi: ChordVector, opts: &EvalOptions) -> Result<ChordValue> {
    let f = transitional_form(curve, xi)?;
    if f.zeta > opts.thresholds.transitional_reach {
        return Err(Error::TooFarFromCaustic);
    }
    transitional_value(curve, &f, opts)
}

fn transitional_any(curve: &ConvexCurve, xi: ChordVector, opts: &EvalOptions) -> Result<ChordValue> {
    transitional_value(curve, &transitional_form(curve, xi)?, opts)
}

fn transitional_value(curve: &ConvexCurve, f: &TransitionalForm, opts: &EvalOptions) -> Result<ChordValue> {
    let (ai, _) = airy(-f.zeta)?;
    let z = prefactor(opts, curve.hbar) * 2.0 * phase(f.mean_phase / curve.hbar) * (f.amplitude * ai);
    let regime = if f.zeta < 0.0 { ChordRegime::Evanescent } else { ChordRegime::Transitional };
    Ok(ChordValue::new(z, regime))
}

pub fn select_regime(curve: &ConvexCurve, xi: ChordVector) -> Result<RegimeWindow> {
    select_regime_with(curve, xi, &EvalOptions::default())
}

pub fn select_regime_with(curve: &ConvexCurve, xi: ChordVector, opts: &EvalOptions) -> Result<RegimeWindow> {
    let t = &opts.thresholds;
    match find_chord_realizations(curve, xi) {
        Ok(g) => Ok(if g.area_diff >= t.oscillatory * curve.hbar {
            RegimeWindow::Oscillatory
        } else if g.zeta <= t.transitional_zeta {
            RegimeWindow::TransitionalWindow
        } else {
            RegimeWindow::UniformWindow
        }),
        Err(Error::OutsideCaustic { .. }) => {
            let f = transitional_form(curve, xi)?;
            Ok(if -f.zeta > t.evanescent_arg { RegimeWindow::Evanescent } else { RegimeWindow::TransitionalWindow })
        }
        Err(Error::NearCausticDegenerate) => Ok(RegimeWindow::TransitionalWindow),
        Err(e) => Err(e),
    }
}

/// Regime-selected chord function: the uniform form where realizations are
/// resolved and away from the caustic, the transitional form near and beyond it.
pub fn chord_evaluate(curve: &ConvexCurve, xi: ChordVector) -> Result<ChordValue> {
    chord_evaluate_with(curve, xi, &EvalOptions::default())
}

pub fn chord_evaluate_with(curve: &ConvexCurve, xi: ChordVector, opts: &EvalOptions) -> Result<ChordValue> {
    match select_regime_with(curve, xi, opts)? {
        RegimeWindow::Oscillatory | RegimeWindow::UniformWindow => chord_uniform_with(curve, xi, opts),
        RegimeWindow::TransitionalWindow | RegimeWindow::Evanescent => transitional_any(curve, xi, opts),
    }
}

/// C(ξ) = (2πℏ)²|χ(ξ)|² from the two-term stationary-phase modulus.
pub fn correlation_semiclassical(curve: &ConvexCurve, xi: ChordVector) -> Result<f64> {
    correlation_semiclassical_with(curve, xi, &EvalOptions::default())
}

pub fn correlation_semiclassical_with(curve: &ConvexCurve, xi: ChordVector, opts: &EvalOptions) -> Result<f64> {
    let g = oscillatory_geometry(curve, xi, opts)?;
    let h = curve.hbar;
    let b1 = g.r1.bracket.abs();
    let b2 = g.r2.bracket.abs();
    let n4 = opts.norm.n_squared * opts.norm.n_squared;
    Ok(2.0 * PI * h * n4 * (1.0 / b1 + 1.0 / b2 + 2.0 * (b1 * b2).powf(-0.5) * (g.area_diff / h).sin()))
}

/// (2πℏ)²|χ(ξ)|² from the regime-selected chord function, valid near the caustic.
pub fn correlation_near_caustic(curve: &ConvexCurve, xi: ChordVector) -> Result<f64> {
    correlation_near_caustic_with(curve, xi, &EvalOptions::default())
}

pub fn correlation_near_caustic_with(curve: &ConvexCurve, xi: ChordVector, opts: &EvalOptions) -> Result<f64> {
    let chi = chord_evaluate_with(curve, xi, opts)?;
    let s = 2.0 * PI * curve.hbar;
    Ok(s * s * chi.complex().norm_sqr())
}

/// Chord function of the state translated by ξ′.
pub fn origin_shift(chi: ChordValue, xi_prime: ChordVector, xi: ChordVector, hbar: f64) -> ChordValue {
    ChordValue::new(chi.complex() * phase(wedge(xi_prime, xi) / hbar), chi.regime)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::build_curve;

    #[test]
    fn symmetric_derivative_term_vanishes() {
        let c = build_curve("quartic", &[0.05], 6, 1.0).unwrap();
        let g = find_chord_realizations(&c, ChordVector::polar(0.8 * c.scale(), 0.4)).unwrap();
        assert!(g.delta_i.abs() < 1e-9 * g.sigma_i);
    }

    #[test]
    fn shift_by_pi_flips_sign() {
        let chi = ChordValue { re: 0.3, im: -0.1, regime: ChordRegime::Uniform };
        let xi = ChordVector::new(1.0, 0.0);
        let s = origin_shift(chi, ChordVector::new(0.0, PI), xi, 1.0);
        assert!((s.re + 0.3).abs() < 1e-15 && (s.im - 0.1).abs() < 1e-15);
    }
}
