//! Chords centred on a phase-space point.
//!
//! A centred chord of x has tips x ± ξ/2 on the curve. It is oriented so that
//! ẋ(x⁺) ∧ ẋ(x⁻) > 0, and its area is the region to the left of x⁻ → x⁺.
//! Inside the curve there are one or three such chords; in the three-chord
//! region two of them coalesce on the fold and the third stays isolated.

use crate::chords::{refine_root, theta_k, Scan};
use crate::curve::{ConvexCurve, SAMPLES};
use crate::error::{Error, Result};
use crate::geom::{wedge, wedge_pts, ChordVector, PhasePoint};

/// Relative radius of the cusp exclusion, in units of the curve diameter.
pub const CUSP_RADIUS: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentreChord {
    pub xi: ChordVector,
    pub theta_minus: f64,
    pub theta_plus: f64,
    pub x_minus: PhasePoint,
    pub x_plus: PhasePoint,
    /// ẋ⁺ ∧ ẋ⁻, positive by orientation.
    pub bracket: f64,
    /// Area to the left of x⁻ → x⁺.
    pub area: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentreRegion {
    OneChord,
    ThreeChord,
}

impl CentreRegion {
    pub fn chord_count(self) -> usize {
        match self {
            CentreRegion::OneChord => 1,
            CentreRegion::ThreeChord => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CentreGeometry {
    pub x: PhasePoint,
    pub region: CentreRegion,
    /// In the three-chord region: the coalescing pair first, the isolated chord last.
    pub chords: Vec<CentreChord>,
}

/// Coalescing pair in the three-chord region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentrePair {
    pub a: CentreChord,
    pub b: CentreChord,
    /// A₁ = ∮ − Ã_a
    pub area_1: f64,
    /// A₂ = Ã_b
    pub area_2: f64,
}

impl CentrePair {
    pub fn area_sum(&self) -> f64 {
        self.area_1 + self.area_2
    }

    pub fn area_diff(&self) -> f64 {
        self.area_1 - self.area_2
    }
}

impl CentreGeometry {
    pub fn pair(&self, curve: &ConvexCurve) -> Option<CentrePair> {
        if self.region != CentreRegion::ThreeChord {
            return None;
        }
        let (a, b) = (self.chords[0], self.chords[1]);
        Some(CentrePair { a, b, area_1: curve.enclosed_area() - a.area, area_2: b.area })
    }

    pub fn isolated(&self) -> &CentreChord {
        self.chords.last().expect("at least one chord")
    }
}

/// Left-area of x⁻ → x⁺ for a chord with the given tip parameters.
pub fn centre_area(curve: &ConvexCurve, c: &CentreChord) -> f64 {
    if c.xi.norm() == 0.0 {
        // limit of a short chord with the bracket orientation
        return 0.0;
    }
    let right = curve.arc_integral(c.theta_minus, c.theta_plus) + 0.5 * wedge_pts(c.x_plus, c.x_minus);
    curve.enclosed_area() - right
}

fn oriented(curve: &ConvexCurve, ta: f64, tb: f64) -> CentreChord {
    let ya = curve.point_at(ta);
    let yb = curve.point_at(tb);
    let b = wedge(curve.velocity_on_curve(yb), curve.velocity_on_curve(ya));
    let (tm, tp, xm, xp, b) = if b > 0.0 { (ta, tb, ya, yb, b) } else { (tb, ta, yb, ya, -b) };
    let mut c = CentreChord { xi: xp - xm, theta_minus: tm, theta_plus: tp, x_minus: xm, x_plus: xp, bracket: b, area: 0.0 };
    c.area = centre_area(curve, &c);
    c
}

/// Locate the centred chords of x without the cusp check.
pub fn centre_chords_raw(curve: &ConvexCurve, x: PhasePoint) -> Result<CentreGeometry> {
    let e = curve.energy;
    let h = curve.hamiltonian(x);
    if !x.is_finite() {
        return Err(Error::InvalidParameter("non-finite point".into()));
    }
    if (h - e).abs() < 1e-9 * e {
        return Err(Error::OnCurve);
    }
    if h > e {
        return Err(Error::OutsideCurve);
    }
    let scale = curve.scale();
    if curve.is_centrally_symmetric() && x.norm() < 1e-9 * scale {
        return Err(Error::OnSymmetryCentre);
    }
    let reflect = |y: PhasePoint| PhasePoint::new(2.0 * x.p - y.p, 2.0 * x.q - y.q);
    let g = |th: f64| curve.hamiltonian(reflect(curve.point_at(th))) - e;
    let scan = Scan::new(curve, |y| curve.hamiltonian(reflect(y)) - e);
    let mut roots = Vec::new();
    for k in 0..SAMPLES as isize {
        let (a, b) = (scan.at(k), scan.at(k + 1));
        if a == 0.0 {
            roots.push(theta_k(k));
        } else if a.signum() != b.signum() && b != 0.0 {
            roots.push(refine_root(&g, k)?);
        }
    }
    // Any other count means tips coalesce below the scan resolution.
    if roots.len() != 2 && roots.len() != 6 {
        return Err(Error::NearCausticDegenerate);
    }
    let pts: Vec<PhasePoint> = roots.iter().map(|&t| curve.point_at(t)).collect();
    let mut used = vec![false; roots.len()];
    let mut chords = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let target = reflect(pts[i]);
        let j = (0..roots.len())
            .filter(|&j| !used[j])
            .min_by(|&a, &b| (pts[a] - target).norm().total_cmp(&(pts[b] - target).norm()))
            .ok_or(Error::NearCausticDegenerate)?;
        if (pts[j] - target).norm() > 1e-6 * scale {
            return Err(Error::NearCausticDegenerate);
        }
        used[j] = true;
        chords.push(oriented(curve, roots[i], roots[j]));
    }
    if chords.len() == 1 {
        return Ok(CentreGeometry { x, region: CentreRegion::OneChord, chords });
    }
    let total = curve.enclosed_area();
    let mut best: Option<(f64, usize, usize)> = None;
    for a in 0..3 {
        for b in 0..3 {
            if a == b || chords[a].xi.dot(chords[b].xi) >= 0.0 {
                continue;
            }
            let d = total - chords[a].area - chords[b].area;
            if d >= -1e-12 * total && best.is_none_or(|(v, _, _)| d < v) {
                best = Some((d, a, b));
            }
        }
    }
    let (_, a, b) = best.ok_or_else(|| Error::RootNotBracketed("no coalescing pair among three chords".into()))?;
    let c = 3 - a - b;
    let ordered = vec![chords[a], chords[b], chords[c]];
    Ok(CentreGeometry { x, region: CentreRegion::ThreeChord, chords: ordered })
}

/// Centred chords of x, refusing points near a cusp of the fold.
pub fn find_centre_chords(curve: &ConvexCurve, x: PhasePoint) -> Result<CentreGeometry> {
    let g = centre_chords_raw(curve, x)?;
    if g.region == CentreRegion::ThreeChord {
        let radius = CUSP_RADIUS * 2.0 * curve.scale();
        let third = g.chords[2].xi;
        for c in &g.chords[..2] {
            if (c.xi - third).norm() < radius || (c.xi + third).norm() < radius {
                return Err(Error::AtCusp);
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::build_curve;

    #[test]
    fn circle_single_chord_is_minor_segment() {
        let c = build_curve("circle", &[], 4, 0.5).unwrap();
        let r = c.scale();
        let x = PhasePoint::new(0.4 * r, 0.0);
        let g = find_centre_chords(&c, x).unwrap();
        assert_eq!(g.region, CentreRegion::OneChord);
        let ch = g.chords[0];
        let half = (r * r - x.p * x.p).sqrt();
        assert!((ch.xi.norm() - 2.0 * half).abs() < 1e-9);
        let alpha = (x.p / r).acos();
        let minor = r * r * alpha - x.p * half;
        assert!((ch.area - minor).abs() < 1e-9, "{} {}", ch.area, minor);
        assert!((ch.bracket - 2.0 * x.p * half).abs() < 1e-9);
    }

    #[test]
    fn degenerate_points() {
        let c = build_curve("circle", &[], 4, 0.5).unwrap();
        assert_eq!(find_centre_chords(&c, PhasePoint::ORIGIN), Err(Error::OnSymmetryCentre));
        assert_eq!(find_centre_chords(&c, PhasePoint::new(0.0, 2.0 * c.scale())), Err(Error::OutsideCurve));
        assert_eq!(find_centre_chords(&c, PhasePoint::new(0.0, c.scale())), Err(Error::OnCurve));
    }
}
