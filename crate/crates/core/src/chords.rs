//! Chord realizations, diameters and near-caustic ingredients.
//!
//! A realization of ξ is a pair of curve points x⁻, x⁺ = x⁻ + ξ. Its area is
//! the region to the right of the directed chord x⁻ → x⁺ (the counterclockwise
//! arc from x⁻ to x⁺ closed by the chord), and its phase is Φ = 𝒜 + x_c ∧ ξ
//! with x_c the chord centre. Realization 1 carries the larger phase, so that
//! 𝒜₁₂ = Φ₁ − Φ₂ ≥ 0; its bracket {I⁺, I⁻} = ẋ⁺ ∧ ẋ⁻ is positive.

use crate::curve::{ConvexCurve, SAMPLES};
use crate::error::{Error, Result};
use crate::geom::{wedge, wedge_pts, ChordVector, PhasePoint};
use crate::numeric::{bisect, golden_min};
use std::f64::consts::PI;

/// Roots closer than this (in θ) count as coalesced.
pub const MERGE_TOLERANCE: f64 = 1e-4 * 2.0 * PI;
const THETA_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordRealization {
    pub theta_minus: f64,
    pub theta_plus: f64,
    pub x_minus: PhasePoint,
    pub x_plus: PhasePoint,
    pub centre: PhasePoint,
    /// {I⁺, I⁻} = ẋ⁺ ∧ ẋ⁻
    pub bracket: f64,
    /// Area to the right of x⁻ → x⁺.
    pub area: f64,
    /// 𝒜 + centre ∧ ξ.
    pub phase: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordGeometry {
    pub xi: ChordVector,
    pub r1: ChordRealization,
    pub r2: ChordRealization,
    /// centre₁ − centre₂
    pub eta: ChordVector,
    /// Midpoint of the two centres.
    pub midpoint: PhasePoint,
    pub area_sum: f64,
    /// 𝒜₁₂ = 𝒜₁ − 𝒜₂ + η ∧ ξ
    pub area_diff: f64,
    pub zeta: f64,
    pub sigma_i: f64,
    pub delta_i: f64,
}

impl ChordGeometry {
    /// Mean phase (Φ₁ + Φ₂)/2 with the caller's origin.
    pub fn mean_phase(&self) -> f64 {
        0.5 * (self.r1.phase + self.r2.phase)
    }

    /// Centre of realization j (1 or 2) measured from the midpoint origin.
    pub fn centre_from_midpoint(&self, j: usize) -> ChordVector {
        let c = if j == 1 { self.r1.centre } else { self.r2.centre };
        c - self.midpoint
    }
}

/// Build the realization whose tail sits at θ⁻.
pub fn realization_at(curve: &ConvexCurve, theta_minus: f64, xi: ChordVector) -> ChordRealization {
    let x_minus = curve.point_at(theta_minus);
    let x_plus = x_minus + xi;
    let theta_plus = curve.theta_of(x_plus);
    let area = curve.arc_integral(theta_minus, theta_plus) + 0.5 * wedge_pts(x_plus, x_minus);
    let vm = curve.velocity_on_curve(x_minus);
    let vp = curve.velocity_on_curve(x_plus);
    let centre = x_minus.midpoint(x_plus);
    ChordRealization {
        theta_minus: theta_minus.rem_euclid(2.0 * PI),
        theta_plus,
        x_minus,
        x_plus,
        centre,
        bracket: wedge(vp, vm),
        area,
        phase: area + wedge(centre.as_chord(), xi),
    }
}

/// Recompute the realization area from its tip parameters.
pub fn chord_area(curve: &ConvexCurve, r: &ChordRealization) -> f64 {
    curve.arc_integral(r.theta_minus, r.theta_plus) + 0.5 * wedge_pts(r.x_plus, r.x_minus)
}

/// {I⁺, I⁻} = ẋ(x⁺) ∧ ẋ(x⁻).
pub fn poisson_bracket(curve: &ConvexCurve, r: &ChordRealization) -> f64 {
    wedge(curve.velocity_on_curve(r.x_plus), curve.velocity_on_curve(r.x_minus))
}

/// Outcome of the sign scan of a function of θ on the cached samples.
pub(crate) struct Scan {
    pub values: Vec<f64>,
}

impl Scan {
    pub fn new<F: Fn(PhasePoint) -> f64>(curve: &ConvexCurve, f: F) -> Scan {
        Scan { values: (0..SAMPLES).map(|k| f(curve.sample(k))).collect() }
    }

    pub fn at(&self, k: isize) -> f64 {
        self.values[k.rem_euclid(SAMPLES as isize) as usize]
    }
}

pub(crate) fn theta_k(k: isize) -> f64 {
    2.0 * PI * k as f64 / SAMPLES as f64
}

/// Bisect a root of f(θ) between sample k and k + 1.
pub(crate) fn refine_root<F: Fn(f64) -> f64>(f: &F, k: isize) -> Result<f64> {
    let a = theta_k(k);
    let b = theta_k(k + 1);
    Ok(bisect(f, a, b, THETA_TOL)?.rem_euclid(2.0 * PI))
}

/// Cyclic distance between two angles.
pub fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// The two roots of F(θ) = H(x(θ) + ξ) − E around the negative interval, or
/// the refined minimum when F stays positive.
enum RootSearch {
    Pair(f64, f64),
    Positive,
}

fn search_roots(curve: &ConvexCurve, xi: ChordVector) -> Result<RootSearch> {
    let e = curve.energy;
    let f = |th: f64| curve.hamiltonian(curve.point_at(th) + xi) - e;
    let scan = Scan::new(curve, |x| curve.hamiltonian(x + xi) - e);
    let (kmin, fmin) = scan
        .values
        .iter()
        .enumerate()
        .fold((0usize, f64::INFINITY), |b, (k, &v)| if v < b.1 { (k, v) } else { b });
    let kmin = kmin as isize;
    if fmin >= 0.0 {
        let (t, v) = golden_min(&f, theta_k(kmin - 1), theta_k(kmin + 1), 1e-13);
        if v >= 0.0 {
            return Ok(RootSearch::Positive);
        }
        let a = bisect(&f, theta_k(kmin - 1), t, THETA_TOL)?;
        let b = bisect(&f, t, theta_k(kmin + 1), THETA_TOL)?;
        return Ok(RootSearch::Pair(a.rem_euclid(2.0 * PI), b.rem_euclid(2.0 * PI)));
    }
    let n = SAMPLES as isize;
    let mut kl = kmin;
    while scan.at(kl - 1) < 0.0 {
        kl -= 1;
        if kmin - kl >= n {
            return Err(Error::InvalidParameter("chord too short to resolve on the sample grid".into()));
        }
    }
    let mut kr = kmin;
    while scan.at(kr + 1) < 0.0 {
        kr += 1;
    }
    let a = refine_root(&f, kl - 1)?;
    let b = refine_root(&f, kr)?;
    Ok(RootSearch::Pair(a, b))
}

pub fn find_chord_realizations(curve: &ConvexCurve, xi: ChordVector) -> Result<ChordGeometry> {
    if !(xi.norm() > 1e-12 * curve.scale()) {
        return Err(Error::AtOrigin);
    }
    match search_roots(curve, xi)? {
        RootSearch::Positive => {
            let d = diameter_along(curve, xi)?;
            let distance = xi.norm() - d.xi_d.norm();
            if distance > 0.0 {
                Err(Error::OutsideCaustic { distance })
            } else {
                Err(Error::NearCausticDegenerate)
            }
        }
        RootSearch::Pair(a, b) => {
            if angle_gap(a, b) < MERGE_TOLERANCE {
                return Err(Error::NearCausticDegenerate);
            }
            let ra = realization_at(curve, a, xi);
            let rb = realization_at(curve, b, xi);
            Ok(assemble(curve, xi, ra, rb))
        }
    }
}

fn assemble(curve: &ConvexCurve, xi: ChordVector, ra: ChordRealization, rb: ChordRealization) -> ChordGeometry {
    let (r1, r2) = if ra.phase > rb.phase || (ra.phase == rb.phase && tie_first(&ra, &rb)) {
        (ra, rb)
    } else {
        (rb, ra)
    };
    let eta = r1.centre - r2.centre;
    let area_diff = (r1.phase - r2.phase).max(0.0);
    let a1 = r1.bracket.abs().powf(-0.5);
    let a2 = r2.bracket.abs().powf(-0.5);
    ChordGeometry {
        xi,
        r1,
        r2,
        eta,
        midpoint: r1.centre.midpoint(r2.centre),
        area_sum: r1.area + r2.area,
        area_diff,
        zeta: (0.75 * area_diff / curve.hbar).powf(2.0 / 3.0),
        sigma_i: a1 + a2,
        delta_i: a1 - a2,
    }
}

fn tie_first(a: &ChordRealization, b: &ChordRealization) -> bool {
    a.centre.q > b.centre.q || (a.centre.q == b.centre.q && a.centre.p > b.centre.p)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiameterSample {
    pub theta_a: f64,
    pub theta_b: f64,
    /// x(θb) − x(θa)
    pub xi_d: ChordVector,
    pub x_d: PhasePoint,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiameterCaustic {
    pub samples: Vec<DiameterSample>,
}

pub fn diameter_at(curve: &ConvexCurve, theta_a: f64) -> Result<DiameterSample> {
    let theta_b = curve.antipode(theta_a)?;
    let xa = curve.point_at(theta_a);
    let xb = curve.point_at(theta_b);
    Ok(DiameterSample { theta_a: theta_a.rem_euclid(2.0 * PI), theta_b, xi_d: xb - xa, x_d: xa.midpoint(xb) })
}

/// Locus of diameters: samples come in centrally symmetric pairs, the second
/// half being the first half traversed from the opposite tip.
pub fn diameter_locus(curve: &ConvexCurve, m: usize) -> Result<DiameterCaustic> {
    if m < 8 {
        return Err(Error::InvalidParameter(format!("diameter locus needs at least 8 samples, got {m}")));
    }
    let half = m.div_ceil(2);
    let t0 = 0.0;
    let t1 = curve.antipode(t0)?;
    let span = (t1 - t0).rem_euclid(2.0 * PI);
    let mut first = Vec::with_capacity(half);
    for k in 0..half {
        first.push(diameter_at(curve, t0 + span * k as f64 / half as f64)?);
    }
    let mut samples = first.clone();
    for d in first.iter().take(m - half) {
        samples.push(DiameterSample { theta_a: d.theta_b, theta_b: d.theta_a, xi_d: -d.xi_d, x_d: d.x_d });
    }
    Ok(DiameterCaustic { samples })
}

/// The diameter parallel to (and oriented with) `direction`.
pub fn diameter_along(curve: &ConvexCurve, direction: ChordVector) -> Result<DiameterSample> {
    let u = direction.unit();
    let mis = |t: f64| -> f64 {
        match diameter_at(curve, t) {
            Ok(d) => wedge(u, d.xi_d).atan2(u.dot(d.xi_d)),
            Err(_) => f64::NAN,
        }
    };
    // sin of the misalignment decreases through zero where ξ_D turns past u
    let m = 64;
    let mut prev = mis(0.0);
    for k in 1..=m {
        let t = 2.0 * PI * k as f64 / m as f64;
        let cur = mis(t);
        if prev <= 0.0 && cur >= 0.0 && (cur - prev).abs() < PI {
            let ta = bisect(mis, t - 2.0 * PI / m as f64, t, THETA_TOL)?;
            return diameter_at(curve, ta);
        }
        prev = cur;
    }
    Err(Error::RootNotBracketed("no diameter along the requested direction".into()))
}

/// Local data of the two arcs meeting at a diameter: speeds and curvatures at
/// the tips and the outward unit normal at the head x(θb).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoldData {
    pub diameter: DiameterSample,
    pub speed_a: f64,
    pub speed_b: f64,
    pub curvature_a: f64,
    pub curvature_b: f64,
    pub normal_b: ChordVector,
    /// Φ_D = 𝒜_D + x_D ∧ ξ_D
    pub phase: f64,
}

pub fn fold_data(curve: &ConvexCurve, d: DiameterSample) -> Result<FoldData> {
    let xa = curve.point_at(d.theta_a);
    let xb = curve.point_at(d.theta_b);
    let gb = curve.grad_h(xb);
    let area = curve.arc_integral(d.theta_a, d.theta_b) + 0.5 * wedge_pts(xb, xa);
    Ok(FoldData {
        diameter: d,
        speed_a: curve.velocity_on_curve(xa).norm(),
        speed_b: curve.velocity_on_curve(xb).norm(),
        curvature_a: curve.curvature(xa)?,
        curvature_b: curve.curvature(xb)?,
        normal_b: gb.unit(),
        phase: area + wedge(d.x_d.as_chord(), d.xi_d),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionalIngredients {
    /// Origin o: midpoint of the centres inside, the diameter midpoint outside.
    pub origin: PhasePoint,
    /// True when both X± = o ± ξ/2 lie inside the curve.
    pub inside: bool,
    /// ℐ − I(X±)
    pub s_plus: f64,
    pub s_minus: f64,
    /// sqrt(8|s±|/qform±); imaginary magnitudes when outside.
    pub tau_plus: f64,
    pub tau_minus: f64,
    pub qform_plus: f64,
    pub qform_minus: f64,
    pub velocity_plus: ChordVector,
    pub velocity_minus: ChordVector,
    /// (τ₊³Q₊ + τ₋³Q₋)/12
    pub area_estimate: f64,
    /// ½[τ₊ Ẋ⁻𝒥₊Ẋ⁺ + τ₋ Ẋ⁺𝒥₋Ẋ⁻]
    pub bracket_estimate: f64,
}

pub fn transitional_ingredients(curve: &ConvexCurve, xi: ChordVector) -> Result<TransitionalIngredients> {
    let origin = match find_chord_realizations(curve, xi) {
        Ok(g) => g.midpoint,
        Err(Error::OutsideCaustic { .. }) | Err(Error::NearCausticDegenerate) => diameter_along(curve, xi)?.x_d,
        Err(e) => return Err(e),
    };
    ingredients_at(curve, origin, xi)
}

pub fn ingredients_at(curve: &ConvexCurve, origin: PhasePoint, xi: ChordVector) -> Result<TransitionalIngredients> {
    let xp = origin + xi * 0.5;
    let xm = origin - xi * 0.5;
    let s_plus = curve.action - curve.action_at(xp)?;
    let s_minus = curve.action - curve.action_at(xm)?;
    let vp = curve.velocity(xp)?;
    let vm = curve.velocity(xm)?;
    let jp = curve.hessian(xp)?;
    let jm = curve.hessian(xm)?;
    let qp = jp.form(vp);
    let qm = jm.form(vm);
    let tau_plus = (8.0 * s_plus.abs() / qp).sqrt();
    let tau_minus = (8.0 * s_minus.abs() / qm).sqrt();
    Ok(TransitionalIngredients {
        origin,
        inside: s_plus > 0.0 && s_minus > 0.0,
        s_plus,
        s_minus,
        tau_plus,
        tau_minus,
        qform_plus: qp,
        qform_minus: qm,
        velocity_plus: vp,
        velocity_minus: vm,
        area_estimate: (tau_plus.powi(3) * qp + tau_minus.powi(3) * qm) / 12.0,
        bracket_estimate: 0.5 * (tau_plus * jp.bilinear(vm, vp) + tau_minus * jm.bilinear(vp, vm)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::build_curve;

    fn lens(r: f64, l: f64) -> f64 {
        2.0 * r * r * (l / (2.0 * r)).acos() - l * (r * r - l * l / 4.0).sqrt()
    }

    #[test]
    fn circle_lens_and_bracket() {
        let c = build_curve("circle", &[], 3, 0.1).unwrap();
        let r = c.scale();
        for &(l, ang) in &[(0.3, 0.2), (1.0, 1.3), (1.6, -2.0)] {
            let xi = ChordVector::polar(l, ang);
            let g = find_chord_realizations(&c, xi).unwrap();
            assert!((g.area_diff - lens(r, l)).abs() < 1e-9, "{} {}", g.area_diff, lens(r, l));
            let b = l * (r * r - l * l / 4.0).sqrt();
            assert!((g.r1.bracket - b).abs() < 1e-9);
            assert!((g.r2.bracket + b).abs() < 1e-9);
            assert!(g.midpoint.norm() < 1e-9);
        }
    }

    #[test]
    fn outside_reports_distance() {
        let c = build_curve("circle", &[], 3, 0.1).unwrap();
        let d = 2.0 * c.scale();
        match find_chord_realizations(&c, ChordVector::new(0.0, d + 0.05)) {
            Err(Error::OutsideCaustic { distance }) => assert!((distance - 0.05).abs() < 1e-8),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cubic_diameter_direction() {
        let c = build_curve("cubic", &[0.05], 10, 1.0).unwrap();
        let u = ChordVector::polar(1.0, 0.7);
        let d = diameter_along(&c, u).unwrap();
        assert!(wedge(u, d.xi_d).abs() < 1e-9 * d.xi_d.norm());
        assert!(u.dot(d.xi_d) > 0.0);
        let ta = c.velocity_on_curve(c.point_at(d.theta_a));
        let tb = c.velocity_on_curve(c.point_at(d.theta_b));
        assert!(wedge(ta, tb).abs() < 1e-9 * ta.norm() * tb.norm());
    }

    #[test]
    fn ingredients_circle_symmetric() {
        let c = build_curve("circle", &[], 2, 0.2).unwrap();
        let t = transitional_ingredients(&c, ChordVector::new(0.0, 1.9 * c.scale())).unwrap();
        assert!((t.qform_plus - t.qform_minus).abs() < 1e-9);
        assert!(t.inside);
    }
}
