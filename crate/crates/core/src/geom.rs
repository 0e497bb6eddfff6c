use std::ops::{Add, Mul, Neg, Sub};

/// Phase-space point x = (p, q).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhasePoint {
    pub p: f64,
    pub q: f64,
}

/// Chord (or any phase-space displacement) ξ = (ξ_p, ξ_q).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ChordVector {
    pub xi_p: f64,
    pub xi_q: f64,
}

impl PhasePoint {
    pub const ORIGIN: PhasePoint = PhasePoint { p: 0.0, q: 0.0 };

    pub fn new(p: f64, q: f64) -> Self {
        PhasePoint { p, q }
    }

    pub fn as_chord(self) -> ChordVector {
        ChordVector::new(self.p, self.q)
    }

    pub fn norm(self) -> f64 {
        self.p.hypot(self.q)
    }

    pub fn midpoint(self, other: PhasePoint) -> PhasePoint {
        PhasePoint::new(0.5 * (self.p + other.p), 0.5 * (self.q + other.q))
    }

    pub fn is_finite(self) -> bool {
        self.p.is_finite() && self.q.is_finite()
    }
}

impl ChordVector {
    pub const ZERO: ChordVector = ChordVector { xi_p: 0.0, xi_q: 0.0 };

    pub fn new(xi_p: f64, xi_q: f64) -> Self {
        ChordVector { xi_p, xi_q }
    }

    pub fn polar(length: f64, angle: f64) -> Self {
        ChordVector::new(length * angle.cos(), length * angle.sin())
    }

    pub fn as_point(self) -> PhasePoint {
        PhasePoint::new(self.xi_p, self.xi_q)
    }

    pub fn norm(self) -> f64 {
        self.xi_p.hypot(self.xi_q)
    }

    pub fn dot(self, o: ChordVector) -> f64 {
        self.xi_p * o.xi_p + self.xi_q * o.xi_q
    }

    pub fn unit(self) -> ChordVector {
        self * (1.0 / self.norm())
    }

    pub fn angle(self) -> f64 {
        self.xi_q.atan2(self.xi_p)
    }
}

/// a ∧ b = a_p b_q − a_q b_p.
pub fn wedge(a: ChordVector, b: ChordVector) -> f64 {
    a.xi_p * b.xi_q - a.xi_q * b.xi_p
}

/// Wedge of two points read as vectors from the origin.
pub fn wedge_pts(a: PhasePoint, b: PhasePoint) -> f64 {
    a.p * b.q - a.q * b.p
}

impl Add<ChordVector> for PhasePoint {
    type Output = PhasePoint;
    fn add(self, v: ChordVector) -> PhasePoint {
        PhasePoint::new(self.p + v.xi_p, self.q + v.xi_q)
    }
}

impl Sub<ChordVector> for PhasePoint {
    type Output = PhasePoint;
    fn sub(self, v: ChordVector) -> PhasePoint {
        PhasePoint::new(self.p - v.xi_p, self.q - v.xi_q)
    }
}

impl Sub for PhasePoint {
    type Output = ChordVector;
    fn sub(self, o: PhasePoint) -> ChordVector {
        ChordVector::new(self.p - o.p, self.q - o.q)
    }
}

impl Add for ChordVector {
    type Output = ChordVector;
    fn add(self, o: ChordVector) -> ChordVector {
        ChordVector::new(self.xi_p + o.xi_p, self.xi_q + o.xi_q)
    }
}

impl Sub for ChordVector {
    type Output = ChordVector;
    fn sub(self, o: ChordVector) -> ChordVector {
        ChordVector::new(self.xi_p - o.xi_p, self.xi_q - o.xi_q)
    }
}

impl Neg for ChordVector {
    type Output = ChordVector;
    fn neg(self) -> ChordVector {
        ChordVector::new(-self.xi_p, -self.xi_q)
    }
}

impl Mul<f64> for ChordVector {
    type Output = ChordVector;
    fn mul(self, s: f64) -> ChordVector {
        ChordVector::new(self.xi_p * s, self.xi_q * s)
    }
}

/// Symmetric 2×2 matrix [[pp, pq], [pq, qq]] in (p, q) order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sym2 {
    pub pp: f64,
    pub pq: f64,
    pub qq: f64,
}

impl Sym2 {
    pub fn form(&self, v: ChordVector) -> f64 {
        self.pp * v.xi_p * v.xi_p + 2.0 * self.pq * v.xi_p * v.xi_q + self.qq * v.xi_q * v.xi_q
    }

    pub fn bilinear(&self, a: ChordVector, b: ChordVector) -> f64 {
        self.pp * a.xi_p * b.xi_p + self.pq * (a.xi_p * b.xi_q + a.xi_q * b.xi_p) + self.qq * a.xi_q * b.xi_q
    }
}
