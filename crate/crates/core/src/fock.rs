//! Closed forms for harmonic-oscillator eigenstates.

use crate::error::{Error, Result};
use crate::geom::{ChordVector, PhasePoint};
use crate::numeric::gauss_legendre;
use crate::special::{airy_ai, bessel_j0, laguerre_weighted};
use std::f64::consts::{FRAC_PI_4, PI};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockState {
    pub n: u32,
    pub hbar: f64,
}

impl FockState {
    pub fn new(n: u32, hbar: f64) -> Result<FockState> {
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::InvalidParameter(format!("hbar must be positive, got {hbar}")));
        }
        Ok(FockState { n, hbar })
    }

    /// ℐ = ℏ(n + ½)
    pub fn action(&self) -> f64 {
        self.hbar * (self.n as f64 + 0.5)
    }

    pub fn radius(&self) -> f64 {
        (2.0 * self.action()).sqrt()
    }

    pub fn diameter(&self) -> f64 {
        2.0 * self.radius()
    }

    fn sign(&self) -> f64 {
        if self.n.is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    fn check_length(&self, xi: ChordVector) -> Result<f64> {
        let l = xi.norm();
        if l > self.diameter() * (1.0 + 1e-12) {
            return Err(Error::BeyondDiameter);
        }
        Ok(l.min(self.diameter()))
    }
}

/// e^{−ξ²/4ℏ} Lₙ(ξ²/2ℏ) / 2πℏ
pub fn fock_chord_exact(state: &FockState, xi: ChordVector) -> f64 {
    let h = state.hbar;
    let x = (xi.xi_p * xi.xi_p + xi.xi_q * xi.xi_q) / (2.0 * h);
    laguerre_weighted(state.n, x) / (2.0 * PI * h)
}

/// J₀(√(2ℐ)|ξ|/ℏ) / 2πℏ
pub fn fock_chord_small(state: &FockState, xi: ChordVector) -> f64 {
    bessel_j0(state.radius() * xi.norm() / state.hbar) / (2.0 * PI * state.hbar)
}

/// Large-argument cosine form of the small-chord Bessel function.
pub fn fock_chord_small_asymptotic(state: &FockState, xi: ChordVector) -> f64 {
    let z = state.radius() * xi.norm() / state.hbar;
    (2.0 / (PI * z)).sqrt() * (z - FRAC_PI_4).cos() / (2.0 * PI * state.hbar)
}

/// Area of the lens between the circle and its translate by ξ.
pub fn fock_area(state: &FockState, xi: ChordVector) -> Result<f64> {
    let l = state.check_length(xi)?;
    let i = state.action();
    let r = state.radius();
    Ok((2.0 * PI * i - l * (2.0 * i - l * l / 4.0).max(0.0).sqrt() - 4.0 * i * (l / (2.0 * r)).min(1.0).asin()).max(0.0))
}

/// |ξ| √(2ℐ − ξ²/4)
pub fn fock_bracket(state: &FockState, xi: ChordVector) -> Result<f64> {
    let l = state.check_length(xi)?;
    Ok(l * (2.0 * state.action() - l * l / 4.0).max(0.0).sqrt())
}

/// Uniform Airy approximation with N² = 1/2π.
pub fn fock_chord_uniform(state: &FockState, xi: ChordVector) -> Result<f64> {
    fock_chord_uniform_with(state, xi, 1.0 / (2.0 * PI))
}

pub fn fock_chord_uniform_with(state: &FockState, xi: ChordVector, n_squared: f64) -> Result<f64> {
    let h = state.hbar;
    let a = fock_area(state, xi)?;
    let b = fock_bracket(state, xi)?;
    let zeta = (0.75 * a / h).powf(2.0 / 3.0);
    let ai = airy_ai(-zeta)?;
    if a <= 1e-12 * state.action() || b <= 1e-12 * state.action() {
        // caustic limit of ζ^{1/4}|b|^{-1/2}
        return Ok(state.sign() * n_squared * h.powf(-2.0 / 3.0) * state.radius().powf(-2.0 / 3.0) * ai);
    }
    Ok(state.sign() * 2f64.sqrt() * n_squared * (0.75 * a).powf(1.0 / 6.0) * h.powf(-2.0 / 3.0) * b.powf(-0.5) * ai)
}

/// Airy asymptotics extrapolated to small chords, with the small-chord bracket √(2ℐ)|ξ|.
pub fn fock_chord_uniform_asymptotic(state: &FockState, xi: ChordVector) -> Result<f64> {
    let n2 = 1.0 / (2.0 * PI);
    let a = fock_area(state, xi)?;
    let h = state.hbar;
    Ok(state.sign() * (2.0 / PI).sqrt() * n2 / h.sqrt() * (state.radius() * xi.norm()).powf(-0.5)
        * (a / (2.0 * h) - FRAC_PI_4).cos())
}

/// C(ξ) = (2πℏ)² χ(ξ)²
pub fn fock_correlation(state: &FockState, xi: ChordVector) -> f64 {
    let c = 2.0 * PI * state.hbar * fock_chord_exact(state, xi);
    c * c
}

/// 2πℏ ∫|χ|² d²ξ, which is 1 for a pure state.
pub fn purity_check(state: &FockState) -> Result<f64> {
    let h = state.hbar;
    let cutoff = (2.0 * h).sqrt() * ((2.0 * state.n as f64 + 1.0).sqrt() + 8.0);
    let f = |r: f64| {
        let c = fock_chord_exact(state, ChordVector::new(r, 0.0));
        c * c * r
    };
    let panels = 64 + 8 * state.n as usize;
    let coarse = gauss_legendre(f, 0.0, cutoff, panels);
    let fine = gauss_legendre(f, 0.0, cutoff, 2 * panels);
    let scale = 2.0 * PI * h * 2.0 * PI;
    if !fine.is_finite() || (scale * (fine - coarse)).abs() > 1e-10 {
        return Err(Error::QuadratureNotConverged(format!("purity integral for n = {}", state.n)));
    }
    Ok(scale * fine)
}

/// (−1)ⁿ e^{−r²/ℏ} Lₙ(2r²/ℏ) / πℏ
pub fn fock_wigner_exact(state: &FockState, x: PhasePoint) -> f64 {
    let h = state.hbar;
    let r2 = x.p * x.p + x.q * x.q;
    state.sign() * laguerre_weighted(state.n, 2.0 * r2 / h) / (PI * h)
}
