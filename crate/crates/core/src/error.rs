use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("argument {0} outside the supported domain")]
    DomainOverflow(f64),
    #[error("no convex closed level curve: {0}")]
    NoConvexLevel(String),
    #[error("quantization root not bracketed")]
    QuantizationRootNotBracketed,
    #[error("gradient of the action vanishes")]
    GradientVanishes,
    #[error("point is outside the domain of the action function")]
    OutsideActionDomain,
    #[error("chord outside the diameter caustic (distance {distance:.3e})")]
    OutsideCaustic { distance: f64 },
    #[error("chord realizations too close to coalescence")]
    NearCausticDegenerate,
    #[error("zero chord (short-chord caustic)")]
    AtOrigin,
    #[error("point lies on the curve (short-chord caustic)")]
    OnCurve,
    #[error("point lies outside the curve")]
    OutsideCurve,
    #[error("point is the centre of symmetry of the curve")]
    OnSymmetryCentre,
    #[error("root not bracketed: {0}")]
    RootNotBracketed(String),
    #[error("chord is not centred on the given point")]
    NotACentredChord,
    #[error("chord midpoint lies outside the curve")]
    NegativeDiscriminant,
    #[error("too close to the caustic (area {area:.3e} below {threshold:.3e})")]
    TooCloseToCaustic { area: f64, threshold: f64 },
    #[error("too far from the caustic")]
    TooFarFromCaustic,
    #[error("chord is part of a coalescing pair")]
    ChordNearCoalescence,
    #[error("point has a single centred chord")]
    OneChordRegion,
    #[error("point within the cusp exclusion radius")]
    AtCusp,
    #[error("point on the short-chord caustic")]
    OnShortChordCaustic,
    #[error("caustic degenerates for centrally symmetric curves")]
    SymmetricDegenerate,
    #[error("chord longer than the diameter")]
    BeyondDiameter,
    #[error("quadrature did not converge: {0}")]
    QuadratureNotConverged(String),
    #[error("inside the turning-point exclusion")]
    TurningPointRegion,
    #[error("momentum branches not resolved: {0}")]
    BranchResolutionFailure(String),
    #[error("no frame with crossed realizations")]
    NoCrossedFrame,
    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),
}

impl Error {
    /// Short stable tag used in tabular output.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::DomainOverflow(_) => "DomainOverflow",
            Error::NoConvexLevel(_) => "NoConvexLevel",
            Error::QuantizationRootNotBracketed => "QuantizationRootNotBracketed",
            Error::GradientVanishes => "GradientVanishes",
            Error::OutsideActionDomain => "OutsideActionDomain",
            Error::OutsideCaustic { .. } => "OutsideCaustic",
            Error::NearCausticDegenerate => "NearCausticDegenerate",
            Error::AtOrigin => "AtOrigin",
            Error::OnCurve => "OnCurve",
            Error::OutsideCurve => "OutsideCurve",
            Error::OnSymmetryCentre => "OnSymmetryCentre",
            Error::RootNotBracketed(_) => "RootNotBracketed",
            Error::NotACentredChord => "NotACentredChord",
            Error::NegativeDiscriminant => "NegativeDiscriminant",
            Error::TooCloseToCaustic { .. } => "TooCloseToCaustic",
            Error::TooFarFromCaustic => "TooFarFromCaustic",
            Error::ChordNearCoalescence => "ChordNearCoalescence",
            Error::OneChordRegion => "OneChordRegion",
            Error::AtCusp => "AtCusp",
            Error::OnShortChordCaustic => "OnShortChordCaustic",
            Error::SymmetricDegenerate => "SymmetricDegenerate",
            Error::BeyondDiameter => "BeyondDiameter",
            Error::QuadratureNotConverged(_) => "QuadratureNotConverged",
            Error::TurningPointRegion => "TurningPointRegion",
            Error::BranchResolutionFailure(_) => "BranchResolutionFailure",
            Error::NoCrossedFrame => "NoCrossedFrame",
            Error::GridTooCoarse(_) => "GridTooCoarse",
        }
    }

    /// True for documented degenerate inputs, as opposed to numerical failures.
    pub fn is_degenerate_input(&self) -> bool {
        matches!(
            self,
            Error::OnCurve
                | Error::OutsideCurve
                | Error::OnSymmetryCentre
                | Error::SymmetricDegenerate
                | Error::AtCusp
                | Error::OnShortChordCaustic
                | Error::AtOrigin
                | Error::NearCausticDegenerate
                | Error::OutsideActionDomain
        )
    }
}
