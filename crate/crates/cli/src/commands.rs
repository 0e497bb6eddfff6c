use crate::config::{Format, GridSpec, RunConfig, Target, Units};
use crate::table::{emit, Cell, Table};
use crate::CliError;
use chordwig::chords::{diameter_along, diameter_locus};
use chordwig::evaluators::{
    chord_asymptotic_with, chord_evaluate_with, chord_transitional_with, chord_uniform_with,
    correlation_near_caustic_with, correlation_semiclassical_with, select_regime_with, EvalOptions,
};
use chordwig::fock::{fock_chord_exact, fock_chord_small, fock_correlation, fock_wigner_exact, FockState};
use chordwig::wigner::{
    centre_chord_count, wigner_asymptotic_with, wigner_evaluate_with, wigner_transitional_with,
    wigner_uniform_with,
};
use chordwig::wkb::{branch_actions, chord_integral_numeric, wigner_integral_with, BranchAction};
use chordwig::{ChordVector, ConvexCurve, Error, Family, PhasePoint};
use rayon::prelude::*;

/// A grid node: ray or segment parameter `s` (NaN on rectangles) and coordinates.
#[derive(Debug, Clone, Copy)]
pub struct Node {
    pub s: f64,
    pub p: f64,
    pub q: f64,
}

pub fn nodes(curve: &ConvexCurve, grid: &GridSpec, target: Target) -> Result<Vec<Node>, CliError> {
    let lin = |a: f64, b: f64, n: usize, i: usize| a + (b - a) * i as f64 / (n - 1) as f64;
    Ok(match *grid {
        GridSpec::Ray { angle, from, to, count, units } => {
            let u = ChordVector::polar(1.0, angle);
            let scale = match (units, target) {
                (Units::Absolute, _) => 1.0,
                (Units::Relative, Target::Chord) => diameter_along(curve, u)
                    .map_err(|e| CliError::Eval(format!("diameter along angle {angle}: {e}")))?
                    .xi_d
                    .norm(),
                (Units::Relative, Target::Wigner) => curve.scale(),
            };
            (0..count)
                .map(|i| {
                    let s = lin(from, to, count, i);
                    Node { s, p: s * scale * u.xi_p, q: s * scale * u.xi_q }
                })
                .collect()
        }
        GridSpec::Segment { start, end, count } => (0..count)
            .map(|i| {
                let t = lin(0.0, 1.0, count, i);
                Node { s: t, p: lin(start[0], end[0], count, i), q: lin(start[1], end[1], count, i) }
            })
            .collect(),
        GridSpec::Rect { p, q } => {
            let mut out = Vec::with_capacity(p.count * q.count);
            for i in 0..p.count {
                for j in 0..q.count {
                    out.push(Node { s: f64::NAN, p: lin(p.from, p.to, p.count, i), q: lin(q.from, q.to, q.count, j) });
                }
            }
            out
        }
        GridSpec::Locus { .. } => return Err(CliError::Config("a locus grid only applies to caustic".into())),
    })
}

/// Failures that describe where a point sits rather than a numerical breakdown;
/// they become marker rows instead of aborting the run.
fn is_marker(e: &Error) -> bool {
    e.is_degenerate_input()
        || matches!(
            e,
            Error::TooCloseToCaustic { .. }
                | Error::TooFarFromCaustic
                | Error::OneChordRegion
                | Error::ChordNearCoalescence
                | Error::OutsideCaustic { .. }
                | Error::BeyondDiameter
                | Error::NegativeDiscriminant
                | Error::TurningPointRegion
                | Error::NoCrossedFrame
        )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Evaluator {
    Evaluate,
    Uniform,
    Asymptotic,
    Transitional,
    Numeric,
    Exact,
    Small,
}

impl Evaluator {
    fn parse(s: &str, target: Target) -> Result<Evaluator, CliError> {
        let e = match s {
            "evaluate" => Evaluator::Evaluate,
            "uniform" => Evaluator::Uniform,
            "asymptotic" => Evaluator::Asymptotic,
            "transitional" => Evaluator::Transitional,
            "numeric" => Evaluator::Numeric,
            "exact" => Evaluator::Exact,
            "small" | "smallchord" if target == Target::Chord => Evaluator::Small,
            _ => return Err(CliError::Config(format!("unknown {target:?} evaluator '{s}'"))),
        };
        Ok(e)
    }

    fn needs_circle(self) -> bool {
        matches!(self, Evaluator::Exact | Evaluator::Small)
    }
}

/// Everything a grid evaluation needs, built once per run.
struct Context {
    curve: ConvexCurve,
    opts: EvalOptions,
    fock: Option<FockState>,
    branches: Option<BranchAction>,
}

impl Context {
    fn new(config: &RunConfig, evaluators: &[Evaluator], target: Target) -> Result<Context, CliError> {
        let curve = config.curve()?.build()?;
        let opts = match config.n_squared()? {
            Some(v) => EvalOptions::with_n_squared(v),
            None => EvalOptions::default(),
        };
        let circle = curve.family == Family::Circle;
        if evaluators.iter().any(|e| e.needs_circle()) && !circle {
            return Err(CliError::Config("exact and small-chord oracles need the circle family".into()));
        }
        let fock = if circle { FockState::new(curve.n, curve.hbar).ok() } else { None };
        let branches = if target == Target::Wigner && evaluators.contains(&Evaluator::Numeric) {
            Some(branch_actions(&curve).map_err(|e| CliError::Eval(format!("WKB branches: {e}")))?)
        } else {
            None
        };
        Ok(Context { curve, opts, fock, branches })
    }

    fn fock(&self) -> &FockState {
        self.fock.as_ref().expect("circle checked at construction")
    }

    /// (re, im, regime tag)
    fn chord(&self, e: Evaluator, xi: ChordVector) -> chordwig::Result<(f64, f64, &'static str)> {
        let (c, o) = (&self.curve, &self.opts);
        let v = match e {
            Evaluator::Evaluate => chord_evaluate_with(c, xi, o)?,
            Evaluator::Uniform => chord_uniform_with(c, xi, o)?,
            Evaluator::Asymptotic => chord_asymptotic_with(c, xi, o)?,
            Evaluator::Transitional => chord_transitional_with(c, xi, o)?,
            Evaluator::Numeric => {
                let v = chord_integral_numeric(c, xi)?.value;
                return Ok((v.re, v.im, "numeric"));
            }
            Evaluator::Exact => return Ok((fock_chord_exact(self.fock(), xi), 0.0, "exact")),
            Evaluator::Small => return Ok((fock_chord_small(self.fock(), xi), 0.0, "small-chord")),
        };
        Ok((v.re, v.im, v.regime.tag()))
    }

    /// (value, regime tag)
    fn wigner(&self, e: Evaluator, x: PhasePoint) -> chordwig::Result<(f64, &'static str)> {
        let (c, o) = (&self.curve, &self.opts);
        let v = match e {
            Evaluator::Evaluate => wigner_evaluate_with(c, x, o)?,
            Evaluator::Uniform => wigner_uniform_with(c, x, o)?,
            Evaluator::Asymptotic => wigner_asymptotic_with(c, x, o)?,
            Evaluator::Transitional => wigner_transitional_with(c, x, o)?,
            Evaluator::Numeric => {
                let ba = self.branches.as_ref().expect("branches built for numeric runs");
                return Ok((wigner_integral_with(ba, x)?.value, "numeric"));
            }
            Evaluator::Exact => return Ok((fock_wigner_exact(self.fock(), x), "exact")),
            Evaluator::Small => unreachable!("rejected by Evaluator::parse"),
        };
        Ok((v.value, v.regime.tag()))
    }

    /// Same as `chord`/`wigner` but with the imaginary part zero for Wigner.
    fn value(&self, e: Evaluator, target: Target, n: &Node) -> chordwig::Result<(f64, f64)> {
        match target {
            Target::Chord => self.chord(e, ChordVector::new(n.p, n.q)).map(|(re, im, _)| (re, im)),
            Target::Wigner => self.wigner(e, PhasePoint::new(n.p, n.q)).map(|(v, _)| (v, 0.0)),
        }
    }
}

fn point_error(n: &Node, e: &Error) -> CliError {
    CliError::Eval(format!("evaluation failed at ({:.17e}, {:.17e}): {e}", n.p, n.q))
}

/// The resolved configuration, minus where the output went.
fn meta(config: &RunConfig) -> serde_json::Value {
    let config = RunConfig { output: None, ..config.clone() };
    serde_json::to_value(config).expect("config serialization")
}

fn format_of(config: &RunConfig) -> Format {
    config.format.unwrap_or_default()
}

pub fn cmd_eval(config: &RunConfig) -> Result<(), CliError> {
    let target = config.target.unwrap_or_default();
    let evaluator = Evaluator::parse(config.evaluator.as_deref().unwrap_or("evaluate"), target)?;
    let grid = config.grid()?;
    let ctx = Context::new(config, &[evaluator], target)?;
    let pts = nodes(&ctx.curve, grid, target)?;
    let table = match target {
        Target::Chord => {
            let rows: Vec<Result<Vec<Cell>, CliError>> = pts
                .par_iter()
                .map(|n| {
                    let xi = ChordVector::new(n.p, n.q);
                    let window = select_regime_with(&ctx.curve, xi, &ctx.opts).ok().map(|w| w.tag());
                    let window = window.map_or(Cell::Missing, Cell::text);
                    match ctx.chord(evaluator, xi) {
                        Ok((re, im, tag)) => Ok(vec![
                            Cell::Num(n.p),
                            Cell::Num(n.q),
                            Cell::Num(re),
                            Cell::Num(im),
                            Cell::Num(re.hypot(im)),
                            Cell::text(tag),
                            window,
                        ]),
                        Err(e) if is_marker(&e) => Ok(vec![
                            Cell::Num(n.p),
                            Cell::Num(n.q),
                            Cell::Missing,
                            Cell::Missing,
                            Cell::Missing,
                            Cell::text(e.tag()),
                            window,
                        ]),
                        Err(e) => Err(point_error(n, &e)),
                    }
                })
                .collect();
            collect(Table::new(&["xi_p", "xi_q", "re", "im", "abs", "regime", "window"]), rows)?
        }
        Target::Wigner => {
            let rows: Vec<Result<Vec<Cell>, CliError>> = pts
                .par_iter()
                .map(|n| {
                    let x = PhasePoint::new(n.p, n.q);
                    let count = centre_chord_count(&ctx.curve, x).ok().map_or(Cell::Missing, |c| Cell::Int(c as i64));
                    match ctx.wigner(evaluator, x) {
                        Ok((v, tag)) => Ok(vec![Cell::Num(n.p), Cell::Num(n.q), Cell::Num(v), Cell::text(tag), count]),
                        Err(e) if is_marker(&e) => {
                            Ok(vec![Cell::Num(n.p), Cell::Num(n.q), Cell::Missing, Cell::text(e.tag()), count])
                        }
                        Err(e) => Err(point_error(n, &e)),
                    }
                })
                .collect();
            collect(Table::new(&["p", "q", "value", "regime", "chord_count"]), rows)?
        }
    };
    emit(&table, format_of(config), config.output.as_deref(), &meta(config), None)
}

fn collect(mut table: Table, rows: Vec<Result<Vec<Cell>, CliError>>) -> Result<Table, CliError> {
    for r in rows {
        table.push(r?);
    }
    Ok(table)
}

pub fn cmd_caustic(config: &RunConfig) -> Result<(), CliError> {
    let curve = config.curve()?.build()?;
    let m = match config.grid.as_ref() {
        None => 64,
        Some(g @ GridSpec::Locus { count }) => {
            g.validate()?;
            *count
        }
        Some(_) => return Err(CliError::Config("caustic takes a locus grid {\"kind\":\"locus\",\"count\":m}".into())),
    };
    let locus = diameter_locus(&curve, m).map_err(|e| match e {
        Error::InvalidParameter(msg) => CliError::Config(msg),
        e => CliError::Eval(format!("diameter locus: {e}")),
    })?;
    let mut table = Table::new(&["theta_a", "theta_b", "xi_p", "xi_q", "xD_p", "xD_q"]);
    for s in &locus.samples {
        table.push(vec![
            Cell::Num(s.theta_a),
            Cell::Num(s.theta_b),
            Cell::Num(s.xi_d.xi_p),
            Cell::Num(s.xi_d.xi_q),
            Cell::Num(s.x_d.p),
            Cell::Num(s.x_d.q),
        ]);
    }
    emit(&table, format_of(config), config.output.as_deref(), &meta(config), None)
}

pub fn cmd_correlate(config: &RunConfig) -> Result<(), CliError> {
    if config.target.unwrap_or_default() != Target::Chord {
        return Err(CliError::Config("correlate works on chords".into()));
    }
    let curve = config.curve()?.build()?;
    let circle = curve.family == Family::Circle;
    let method = config.method.clone().unwrap_or_else(|| if circle { "exact" } else { "semiclassical" }.into());
    let opts = match config.n_squared()? {
        Some(v) => EvalOptions::with_n_squared(v),
        None => EvalOptions::default(),
    };
    let fock = match method.as_str() {
        "exact" if circle => Some(FockState::new(curve.n, curve.hbar).map_err(|e| CliError::Config(e.to_string()))?),
        "exact" => return Err(CliError::Config("exact correlation needs the circle family".into())),
        "semiclassical" | "near-caustic" => None,
        m => return Err(CliError::Config(format!("unknown correlation method '{m}'"))),
    };
    let pts = nodes(&curve, config.grid()?, Target::Chord)?;
    let tag = method.as_str();
    let rows: Vec<Result<Vec<Cell>, CliError>> = pts
        .par_iter()
        .map(|n| {
            let xi = ChordVector::new(n.p, n.q);
            let c = match (&fock, tag) {
                (Some(s), _) => Ok(fock_correlation(s, xi)),
                (None, "semiclassical") => correlation_semiclassical_with(&curve, xi, &opts),
                _ => correlation_near_caustic_with(&curve, xi, &opts),
            };
            match c {
                Ok(c) => Ok(vec![Cell::Num(xi.norm()), Cell::Num(c), Cell::text(tag)]),
                Err(e) if is_marker(&e) => Ok(vec![Cell::Num(xi.norm()), Cell::Missing, Cell::text(e.tag())]),
                Err(e) => Err(point_error(n, &e)),
            }
        })
        .collect();
    let table = collect(Table::new(&["xi_abs", "C", "method"]), rows)?;
    emit(&table, format_of(config), config.output.as_deref(), &meta(config), None)
}

/// (left evaluator, right evaluator); errors are measured against the right one.
fn pair_evaluators(pair: &str) -> Result<(Evaluator, Evaluator), CliError> {
    Ok(match pair {
        "uniform-vs-exact" => (Evaluator::Uniform, Evaluator::Exact),
        "uniform-vs-asymptotic" => (Evaluator::Uniform, Evaluator::Asymptotic),
        "uniform-vs-numeric" => (Evaluator::Uniform, Evaluator::Numeric),
        "transitional-vs-uniform" => (Evaluator::Transitional, Evaluator::Uniform),
        "smallchord-vs-uniform" => (Evaluator::Small, Evaluator::Uniform),
        p => return Err(CliError::Config(format!("unknown comparison pair '{p}'"))),
    })
}

/// Documented relative L∞ tolerance of each comparison.
pub fn tolerance(pair: &str, target: Target) -> Option<f64> {
    match (target, pair) {
        (Target::Chord, "uniform-vs-exact") => Some(0.10),
        (Target::Chord, "uniform-vs-asymptotic") => Some(0.02),
        (Target::Chord, "uniform-vs-numeric") => Some(0.05),
        (Target::Chord, "transitional-vs-uniform") => Some(0.05),
        (Target::Chord, "smallchord-vs-uniform") => Some(0.05),
        (Target::Wigner, "uniform-vs-exact") => Some(0.10),
        (Target::Wigner, "uniform-vs-asymptotic") => Some(0.03),
        (Target::Wigner, "uniform-vs-numeric") => Some(0.10),
        (Target::Wigner, "transitional-vs-uniform") => Some(0.10),
        _ => None,
    }
}

pub fn cmd_compare(config: &RunConfig) -> Result<(), CliError> {
    let target = config.target.unwrap_or_default();
    let pair = config.pair.as_deref().ok_or_else(|| CliError::Config("compare needs --pair".into()))?;
    let (left, right) = pair_evaluators(pair)?;
    let tol = tolerance(pair, target)
        .ok_or_else(|| CliError::Config(format!("pair '{pair}' is not defined for {target:?}")))?;
    let grid = config.grid()?;
    let ctx = Context::new(config, &[left, right], target)?;
    let pts = nodes(&ctx.curve, grid, target)?;
    let window = config.window;
    let in_window = |n: &Node| match window {
        Some([lo, hi]) if n.s.is_finite() => n.s >= lo && n.s <= hi,
        _ => true,
    };

    type Pairs = Option<((f64, f64), (f64, f64))>;
    let values: Vec<Result<(Pairs, Option<&'static str>), CliError>> = pts
        .par_iter()
        .map(|n| {
            let a = ctx.value(left, target, n);
            let b = ctx.value(right, target, n);
            match (a, b) {
                (Ok(a), Ok(b)) => Ok((Some((a, b)), None)),
                (Err(e), _) | (_, Err(e)) if is_marker(&e) => Ok((None, Some(e.tag()))),
                (Err(e), _) | (_, Err(e)) => Err(point_error(n, &e)),
            }
        })
        .collect();

    let (p_name, q_name) = match target {
        Target::Chord => ("xi_p", "xi_q"),
        Target::Wigner => ("p", "q"),
    };
    let mut table = Table::new(&[
        "s", p_name, q_name, "a_re", "a_im", "b_re", "b_im", "abs_err", "rel_err", "in_window", "note",
    ]);
    let (mut max_abs, mut sum_abs, mut max_ref, mut sum_rel) = (0.0f64, 0.0, 0.0f64, 0.0);
    let (mut used, mut skipped) = (0usize, 0usize);
    for (n, v) in pts.iter().zip(values) {
        let (vals, note) = v?;
        let inside = in_window(n);
        let s = if n.s.is_finite() { Cell::Num(n.s) } else { Cell::Missing };
        let flag = Cell::Int(inside as i64);
        let note = note.map_or(Cell::Missing, Cell::text);
        match vals {
            Some(((ar, ai), (br, bi))) => {
                let err = (ar - br).hypot(ai - bi);
                let b_abs = br.hypot(bi);
                let rel = if b_abs > 0.0 { err / b_abs } else { f64::INFINITY };
                if inside {
                    used += 1;
                    max_abs = max_abs.max(err);
                    sum_abs += err;
                    max_ref = max_ref.max(b_abs);
                    sum_rel += if rel.is_finite() { rel } else { 0.0 };
                }
                table.push(vec![
                    s,
                    Cell::Num(n.p),
                    Cell::Num(n.q),
                    Cell::Num(ar),
                    Cell::Num(ai),
                    Cell::Num(br),
                    Cell::Num(bi),
                    Cell::Num(err),
                    Cell::Num(rel),
                    flag,
                    note,
                ]);
            }
            None => {
                skipped += inside as usize;
                table.push(vec![
                    s,
                    Cell::Num(n.p),
                    Cell::Num(n.q),
                    Cell::Missing,
                    Cell::Missing,
                    Cell::Missing,
                    Cell::Missing,
                    Cell::Missing,
                    Cell::Missing,
                    flag,
                    note,
                ]);
            }
        }
    }
    if used == 0 {
        return Err(CliError::Eval(format!("no comparable points in the window for {pair}")));
    }
    let linf = max_abs / max_ref;
    let pass = linf <= tol;
    let summary = [
        ("pair", Cell::text(pair)),
        ("target", Cell::text(if target == Target::Chord { "chord" } else { "wigner" })),
        ("points", Cell::Int(used as i64)),
        ("skipped", Cell::Int(skipped as i64)),
        ("max_abs_err", Cell::Num(max_abs)),
        ("mean_abs_err", Cell::Num(sum_abs / used as f64)),
        ("max_ref", Cell::Num(max_ref)),
        ("linf_rel", Cell::Num(linf)),
        ("mean_rel", Cell::Num(sum_rel / used as f64)),
        ("tolerance", Cell::Num(tol)),
        ("pass", Cell::Bool(pass)),
    ];
    emit(&table, format_of(config), config.output.as_deref(), &meta(config), Some(&summary))?;
    let line = format!(
        "{pair} ({}): linf_rel {:.4e} tolerance {:.2e} over {used} points, {skipped} skipped: {}",
        if target == Target::Chord { "chord" } else { "wigner" },
        linf,
        tol,
        if pass { "PASS" } else { "FAIL" }
    );
    match config.output.as_deref() {
        None | Some("-") => eprintln!("{line}"),
        Some(_) => println!("{line}"),
    }
    if pass {
        Ok(())
    } else {
        Err(CliError::Tolerance(format!("{pair}: linf_rel {linf:.4e} exceeds {tol:.2e}")))
    }
}
