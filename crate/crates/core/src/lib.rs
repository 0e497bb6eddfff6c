//! Semiclassical chord and Wigner functions of quantized convex curves,
//! with uniform Airy approximations through the diameter caustic.

pub mod error;
pub mod special;

pub use error::{Error, Result};
pub mod centres;
pub mod chords;
pub mod curve;
pub mod evaluators;
pub mod fock;
pub mod geom;
pub mod numeric;
pub mod wigner;
pub mod wkb;

pub use chords::{find_chord_realizations, ChordGeometry, ChordRealization};
pub use curve::{build_curve, ConvexCurve, Family};
pub use geom::{wedge, ChordVector, PhasePoint};
