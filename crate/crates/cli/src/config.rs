use crate::CliError;
use chordwig::{build_curve, ConvexCurve};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub family: String,
    #[serde(default)]
    pub params: Vec<f64>,
    pub n: u32,
    pub hbar: f64,
}

impl CurveSpec {
    pub fn build(&self) -> Result<ConvexCurve, CliError> {
        if !(self.hbar > 0.0 && self.hbar.is_finite()) {
            return Err(CliError::Config(format!("hbar must be positive, got {}", self.hbar)));
        }
        if self.params.iter().any(|p| !p.is_finite()) {
            return Err(CliError::Config("curve params must be finite".into()));
        }
        build_curve(&self.family, &self.params, self.n, self.hbar).map_err(|e| match e {
            chordwig::Error::InvalidParameter(m) => CliError::Config(m),
            e => CliError::Eval(format!("curve construction failed: {e}")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    #[default]
    Chord,
    Wigner,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    /// Chord rays scale with the diameter along the ray, Wigner rays with the curve radius.
    #[default]
    Relative,
    Absolute,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub from: f64,
    pub to: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GridSpec {
    Ray {
        angle: f64,
        from: f64,
        to: f64,
        count: usize,
        #[serde(default)]
        units: Units,
    },
    Segment {
        start: [f64; 2],
        end: [f64; 2],
        count: usize,
    },
    Rect {
        p: Axis,
        q: Axis,
    },
    Locus {
        count: usize,
    },
}

impl GridSpec {
    pub fn validate(&self) -> Result<(), CliError> {
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        let ok = match self {
            GridSpec::Ray { angle, from, to, count, .. } => *count >= 2 && finite(&[*angle, *from, *to]),
            GridSpec::Segment { start, end, count } => *count >= 2 && finite(start) && finite(end),
            GridSpec::Rect { p, q } => {
                p.count >= 2 && q.count >= 2 && finite(&[p.from, p.to, q.from, q.to])
            }
            GridSpec::Locus { count } => *count >= 8,
        };
        if ok {
            Ok(())
        } else {
            Err(CliError::Config(format!(
                "invalid grid {self:?}: ranges must be finite, counts at least 2 (8 for a locus)"
            )))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Target>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evaluator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<[f64; 2]>,
    /// Overrides N² in the semiclassical evaluators; oracles keep their own normalization.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_squared: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

/// Inline JSON when the argument starts with '{', otherwise a file path.
pub fn read_json_arg<T: serde::de::DeserializeOwned>(arg: &str, what: &str) -> Result<T, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg))
            .map_err(|e| CliError::Config(format!("cannot read {what} file {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("invalid {what}: {e}")))
}

pub fn parse_window(s: &str) -> Result<[f64; 2], CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || CliError::Config(format!("window must be 'lo,hi', got {s}"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let lo: f64 = parts[0].parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].parse().map_err(|_| bad())?;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(bad());
    }
    Ok([lo, hi])
}

pub fn parse_enum<T: serde::de::DeserializeOwned>(s: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_value(serde_json::Value::String(s.to_string()))
        .map_err(|_| CliError::Config(format!("unknown {what} '{s}'")))
}

impl RunConfig {
    pub fn curve(&self) -> Result<&CurveSpec, CliError> {
        self.curve.as_ref().ok_or_else(|| CliError::Config("no curve given".into()))
    }

    pub fn grid(&self) -> Result<&GridSpec, CliError> {
        let g = self.grid.as_ref().ok_or_else(|| CliError::Config("no grid given".into()))?;
        g.validate()?;
        Ok(g)
    }

    pub fn n_squared(&self) -> Result<Option<f64>, CliError> {
        match self.n_squared {
            Some(v) if !(v > 0.0 && v.is_finite()) => {
                Err(CliError::Config(format!("n_squared must be positive, got {v}")))
            }
            v => Ok(v),
        }
    }
}
