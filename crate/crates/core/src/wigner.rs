//! Semiclassical Wigner function from centred chords.
//!
//! Each isolated chord contributes 4N²/√(2πℏ) |b|^{−1/2} cos(Ã/ℏ − π/4).
//! In the three-chord region the coalescing pair is combined through Ai and
//! Ai′ with carriers sin(ΣA/2ℏ) and cos(ΣA/2ℏ), where A₁ = ∮ − Ã_a, A₂ = Ã_b.

use crate::centres::{centre_chords_raw, find_centre_chords, CentreChord, CentreGeometry, CentrePair, CentreRegion};
use crate::chords::{theta_k, Scan};
use crate::curve::{ConvexCurve, SAMPLES};
use crate::error::{Error, Result};
use crate::evaluators::EvalOptions;
use crate::geom::{wedge, wedge_pts, PhasePoint};
use crate::numeric::golden_min;
use crate::special::{airy, airy_reflected, AiryKernel};
use std::f64::consts::{FRAC_PI_4, PI};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WignerRegime {
    Uniform,
    Asymptotic,
    Transitional,
}

impl WignerRegime {
    pub fn tag(self) -> &'static str {
        match self {
            WignerRegime::Uniform => "uniform",
            WignerRegime::Asymptotic => "asymptotic",
            WignerRegime::Transitional => "transitional",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerValue {
    pub value: f64,
    pub regime: WignerRegime,
    pub contributing_chords: usize,
}

fn locate(curve: &ConvexCurve, x: PhasePoint) -> Result<CentreGeometry> {
    find_centre_chords(curve, x).map_err(|e| match e {
        Error::OnCurve => Error::OnShortChordCaustic,
        Error::OnSymmetryCentre => Error::SymmetricDegenerate,
        e => e,
    })
}

/// 4N²/√(2πℏ) |b|^{−1/2} cos(Ã/ℏ − π/4)
pub fn isolated_term(curve: &ConvexCurve, c: &CentreChord, opts: &EvalOptions) -> f64 {
    let h = curve.hbar;
    4.0 * opts.norm.n_squared / (2.0 * PI * h).sqrt() * c.bracket.abs().powf(-0.5) * (c.area / h - FRAC_PI_4).cos()
}

/// Contribution of chord `index` (pair first, isolated chord last).
pub fn wigner_branch_term(curve: &ConvexCurve, x: PhasePoint, index: usize) -> Result<f64> {
    wigner_branch_term_with(curve, x, index, &EvalOptions::default())
}

pub fn wigner_branch_term_with(curve: &ConvexCurve, x: PhasePoint, index: usize, opts: &EvalOptions) -> Result<f64> {
    let g = locate(curve, x)?;
    let c = g
        .chords
        .get(index)
        .ok_or_else(|| Error::InvalidParameter(format!("chord index {index} of {}", g.chords.len())))?;
    if let Some(p) = g.pair(curve) {
        if index < 2 && p.area_diff() < opts.thresholds.oscillatory * curve.hbar {
            return Err(Error::ChordNearCoalescence);
        }
    }
    Ok(isolated_term(curve, c, opts))
}

fn pair_prefactor(curve: &ConvexCurve, opts: &EvalOptions) -> f64 {
    2.0 * 2f64.sqrt() * opts.norm.n_squared / curve.hbar.sqrt()
}

/// Airy combination of the coalescing pair.
pub fn pair_uniform(curve: &ConvexCurve, p: &CentrePair, opts: &EvalOptions) -> Result<f64> {
    pair_uniform_kernel(curve, p, opts, airy_reflected)
}

pub fn pair_uniform_kernel(curve: &ConvexCurve, p: &CentrePair, opts: &EvalOptions, kernel: AiryKernel) -> Result<f64> {
    let h = curve.hbar;
    let zeta = (0.75 * p.area_diff().max(0.0) / h).powf(2.0 / 3.0);
    let ia = p.a.bracket.abs().powf(-0.5);
    let ib = p.b.bracket.abs().powf(-0.5);
    let carrier = p.area_sum() / (2.0 * h);
    if zeta == 0.0 {
        return Err(Error::ChordNearCoalescence);
    }
    let (ai, aip) = kernel(zeta)?;
    Ok(pair_prefactor(curve, opts)
        * (zeta.powf(0.25) * (ia + ib) * carrier.sin() * ai + zeta.powf(-0.25) * (ia - ib) * carrier.cos() * aip))
}

pub fn wigner_uniform(curve: &ConvexCurve, x: PhasePoint) -> Result<WignerValue> {
    wigner_uniform_with(curve, x, &EvalOptions::default())
}

pub fn wigner_uniform_with(curve: &ConvexCurve, x: PhasePoint, opts: &EvalOptions) -> Result<WignerValue> {
    let g = locate(curve, x)?;
    let third = isolated_term(curve, g.isolated(), opts);
    let value = match g.pair(curve) {
        Some(p) => pair_uniform(curve, &p, opts)? + third,
        None => third,
    };
    Ok(WignerValue { value, regime: WignerRegime::Uniform, contributing_chords: g.region.chord_count() })
}

pub fn wigner_asymptotic(curve: &ConvexCurve, x: PhasePoint) -> Result<WignerValue> {
    wigner_asymptotic_with(curve, x, &EvalOptions::default())
}

pub fn wigner_asymptotic_with(curve: &ConvexCurve, x: PhasePoint, opts: &EvalOptions) -> Result<WignerValue> {
    let g = locate(curve, x)?;
    let p = g.pair(curve).ok_or(Error::OneChordRegion)?;
    let threshold = opts.thresholds.oscillatory * curve.hbar;
    if p.area_diff() < threshold {
        return Err(Error::TooCloseToCaustic { area: p.area_diff(), threshold });
    }
    let value = g.chords.iter().map(|c| isolated_term(curve, c, opts)).sum();
    Ok(WignerValue { value, regime: WignerRegime::Asymptotic, contributing_chords: 3 })
}

/// Airy argument, the amplitude standing in for ζ^{1/4}|b|^{−1/2}, and the
/// carrier ΣA/2 of the coalescing pair near the fold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoldForm {
    pub zeta: f64,
    pub amplitude: f64,
    pub half_area_sum: f64,
}

const NORMAL_FORM_ZETA: f64 = 1e-3;

/// Near-contact of the curve with its reflection through x: the local
/// minimum of H(2x − x(θ)) − E that is not the global one.
fn near_contact(curve: &ConvexCurve, x: PhasePoint) -> Result<f64> {
    let e = curve.energy;
    let reflect = |y: PhasePoint| PhasePoint::new(2.0 * x.p - y.p, 2.0 * x.q - y.q);
    let g = |th: f64| curve.hamiltonian(reflect(curve.point_at(th))) - e;
    let scan = Scan::new(curve, |y| curve.hamiltonian(reflect(y)) - e);
    let mut minima = Vec::new();
    for k in 0..SAMPLES as isize {
        let v = scan.at(k);
        if v <= scan.at(k - 1) && v < scan.at(k + 1) {
            let (t, fv) = golden_min(&g, theta_k(k - 1), theta_k(k + 1), 1e-13);
            minima.push((t, fv));
        }
    }
    if minima.len() < 2 {
        return Err(Error::TooFarFromCaustic);
    }
    let global = minima.iter().enumerate().min_by(|a, b| a.1 .1.total_cmp(&b.1 .1)).map(|(i, _)| i).unwrap();
    minima.remove(global);
    let best = minima.iter().min_by(|a, b| a.1.abs().total_cmp(&b.1.abs())).unwrap();
    Ok(best.0)
}

/// Normal form of the fold at the near-contact of the curve and its reflection.
pub fn wigner_fold_normal_form(curve: &ConvexCurve, x: PhasePoint) -> Result<FoldForm> {
    let theta = near_contact(curve, x)?;
    let t = curve.point_at(theta);
    let u = PhasePoint::new(2.0 * x.p - t.p, 2.0 * x.q - t.q);
    let theta_u = curve.theta_of(u);
    let uc = curve.point_at(theta_u);
    let gap = -(curve.hamiltonian(u) - curve.energy) / curve.grad_h(u).norm();
    let dk = (curve.curvature(uc)? - curve.curvature(t)?).abs();
    let h = curve.hbar;
    let vt = curve.velocity_on_curve(t).norm();
    let vu = curve.velocity_on_curve(uc).norm();
    let xi = uc - t;
    let mid = t.midpoint(uc);
    let right = curve.arc_integral(theta, theta_u) + 0.5 * wedge_pts(uc, t);
    let left = curve.enclosed_area() - right;
    Ok(FoldForm {
        zeta: gap * (2.0 / dk).cbrt() * h.powf(-2.0 / 3.0),
        amplitude: h.powf(-1.0 / 6.0) * 2f64.powf(-1.0 / 6.0) * (vt * vu).powf(-0.5) * dk.powf(-1.0 / 3.0),
        half_area_sum: left - wedge(xi, x - mid),
    })
}

/// Fold form from the transitional ingredients of the mean pair chord.
pub fn wigner_fold_form(curve: &ConvexCurve, x: PhasePoint) -> Result<FoldForm> {
    if curve.is_centrally_symmetric() {
        return Err(Error::SymmetricDegenerate);
    }
    let g = match locate(curve, x) {
        Err(Error::SymmetricDegenerate) => return Err(Error::SymmetricDegenerate),
        r => r?,
    };
    let Some(p) = g.pair(curve) else {
        return wigner_fold_normal_form(curve, x);
    };
    let h = curve.hbar;
    let bar = (p.a.xi - p.b.xi) * 0.5;
    let yp = x + bar * 0.5;
    let ym = x - bar * 0.5;
    let sp = curve.action - curve.action_at(yp)?;
    let sm = curve.action - curve.action_at(ym)?;
    let vp = curve.velocity(yp)?;
    let vm = curve.velocity(ym)?;
    let jp = curve.hessian(yp)?;
    let jm = curve.hessian(ym)?;
    let qp = jp.form(vp);
    let qm = jm.form(vm);
    let half = 0.5 * p.area_sum();
    if sp <= 0.0 || sm <= 0.0 {
        return Ok(FoldForm { half_area_sum: half, ..wigner_fold_normal_form(curve, x)? });
    }
    let diff = sp.powf(1.5) / qp.sqrt() - sm.powf(1.5) / qm.sqrt();
    let zeta = 2f64.cbrt() * diff.abs().powf(2.0 / 3.0) / h.powf(2.0 / 3.0);
    if zeta <= NORMAL_FORM_ZETA {
        return Ok(FoldForm { half_area_sum: half, ..wigner_fold_normal_form(curve, x)? });
    }
    let tp = (8.0 * sp / qp).sqrt();
    let tm = (8.0 * sm / qm).sqrt();
    let b = 0.5 * (tm * jm.bilinear(vp, vm) - tp * jp.bilinear(vm, vp));
    Ok(FoldForm { zeta, amplitude: zeta.powf(0.25) * b.abs().powf(-0.5), half_area_sum: half })
}

pub fn wigner_transitional(curve: &ConvexCurve, x: PhasePoint) -> Result<WignerValue> {
    wigner_transitional_with(curve, x, &EvalOptions::default())
}

pub fn wigner_transitional_with(curve: &ConvexCurve, x: PhasePoint, opts: &EvalOptions) -> Result<WignerValue> {
    let f = wigner_fold_form(curve, x)?;
    if f.zeta > opts.thresholds.transitional_reach || -f.zeta > 2.0 * opts.thresholds.transitional_reach {
        return Err(Error::TooFarFromCaustic);
    }
    let g = locate(curve, x)?;
    let (ai, _) = airy(-f.zeta)?;
    let pair = pair_prefactor(curve, opts) * 2.0 * f.amplitude * (f.half_area_sum / curve.hbar).sin() * ai;
    let value = pair + isolated_term(curve, g.isolated(), opts);
    Ok(WignerValue { value, regime: WignerRegime::Transitional, contributing_chords: g.region.chord_count() })
}

/// Regime-selected Wigner function.
pub fn wigner_evaluate(curve: &ConvexCurve, x: PhasePoint) -> Result<WignerValue> {
    wigner_evaluate_with(curve, x, &EvalOptions::default())
}

pub fn wigner_evaluate_with(curve: &ConvexCurve, x: PhasePoint, opts: &EvalOptions) -> Result<WignerValue> {
    if curve.is_centrally_symmetric() {
        return wigner_uniform_with(curve, x, opts);
    }
    let t = &opts.thresholds;
    let g = locate(curve, x)?;
    let near = match g.region {
        CentreRegion::ThreeChord => {
            let p = g.pair(curve).expect("three-chord region has a pair");
            (0.75 * p.area_diff() / curve.hbar).powf(2.0 / 3.0) <= t.transitional_zeta
        }
        CentreRegion::OneChord => matches!(wigner_fold_form(curve, x), Ok(f) if -f.zeta <= t.evanescent_arg),
    };
    if near {
        if let Ok(v) = wigner_transitional_with(curve, x, opts) {
            return Ok(v);
        }
    }
    wigner_uniform_with(curve, x, opts)
}

/// Centred chords without the cusp exclusion, for diagnostics.
pub fn centre_chord_count(curve: &ConvexCurve, x: PhasePoint) -> Result<usize> {
    Ok(centre_chords_raw(curve, x)?.region.chord_count())
}
