use std::path::Path;

use invariant_metrics::domain::DomainError;
use invariant_metrics::indicatrix::{IndicatrixError, IndicatrixModel, LINE_DEDUP_TOL};
use invariant_metrics::lempert::{lempert_gap, metric_gap, LempertError, LempertOptions};
use invariant_metrics::rigidity::{
    classify_map, classify_point, ClassifyOptions, Grid, GridDocument, MapDocument, RigidityError,
};
use invariant_metrics::rlinear::{norm_map_verdict, RLinearError, RLinearMap1};
use invariant_metrics::{Complex64, DomainSpec, Vec2};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::{Command, Options};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Config(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 2,
            CliError::Config(_) => 3,
        }
    }
}

impl From<DomainError> for CliError {
    fn from(e: DomainError) -> Self {
        match e {
            DomainError::Outside(_) | DomainError::MemberOutsideDisc { .. } | DomainError::Eval(_) => {
                CliError::Domain(e.to_string())
            }
            DomainError::Parameter(_)
            | DomainError::Parse { .. }
            | DomainError::NotHolomorphic { .. }
            | DomainError::Document(_) => CliError::Config(e.to_string()),
        }
    }
}

impl From<IndicatrixError> for CliError {
    fn from(e: IndicatrixError) -> Self {
        match e {
            IndicatrixError::Domain(d) => d.into(),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<RigidityError> for CliError {
    fn from(e: RigidityError) -> Self {
        match e {
            RigidityError::Domain(d) => d.into(),
            RigidityError::Indicatrix(i) => i.into(),
            RigidityError::Grid(_) | RigidityError::Parse { .. } => CliError::Config(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<RLinearError> for CliError {
    fn from(e: RLinearError) -> Self {
        match e {
            RLinearError::NoSamples => CliError::Config(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<LempertError> for CliError {
    fn from(e: LempertError) -> Self {
        match e {
            LempertError::Domain(d) => d.into(),
            LempertError::Options(_) => CliError::Config(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

/// The document to print, and a message when it records a contradiction.
pub struct Outcome {
    pub document: Value,
    pub contradiction: Option<String>,
}

impl Outcome {
    fn ok(v: impl Serialize) -> Result<Self, CliError> {
        Ok(Outcome {
            document: to_value(v),
            contradiction: None,
        })
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("documents serialize to JSON")
}

pub fn run(command: &Command, opts: &Options) -> Result<Outcome, CliError> {
    if let Some(tol) = opts.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::Config(format!("--tol must be positive, got {tol}")));
        }
    }
    match command {
        Command::Dist => dist(opts),
        Command::Metric => metric(opts),
        Command::Indicatrix => indicatrix(opts),
        Command::Faces => faces(opts),
        Command::Classify => classify(opts),
        Command::IsometryCheck => isometry_check(opts),
        Command::LempertGap => lempert(opts),
        Command::CircleImage { a, b } => {
            let map = RLinearMap1::new(parse_complex(a, "--a")?, parse_complex(b, "--b")?);
            Outcome::ok(map.circle_image_radii())
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn load_spec(path: Option<&Path>, flag: &str) -> Result<DomainSpec, CliError> {
    let path = path.ok_or_else(|| CliError::Config(format!("{flag} is required")))?;
    Ok(DomainSpec::from_json(&read(path)?)?)
}

fn parse_reals<const N: usize>(text: &str, flag: &str) -> Result<[f64; N], CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(CliError::Config(format!(
            "{flag} expects {N} comma-separated numbers, got {text:?}"
        )));
    }
    let mut out = [0.0; N];
    for (slot, p) in out.iter_mut().zip(&parts) {
        *slot = p
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| CliError::Config(format!("{flag}: bad number {p:?}")))?;
    }
    Ok(out)
}

fn parse_vec2(text: &str, flag: &str) -> Result<Vec2, CliError> {
    let [a, b, c, d] = parse_reals::<4>(text, flag)?;
    Ok(Vec2::from_parts(a, b, c, d))
}

fn parse_complex(text: &str, flag: &str) -> Result<Complex64, CliError> {
    if text.contains(',') {
        let [re, im] = parse_reals::<2>(text, flag)?;
        Ok(Complex64::new(re, im))
    } else {
        let [re] = parse_reals::<1>(text, flag)?;
        Ok(Complex64::new(re, 0.0))
    }
}

fn points(opts: &Options) -> Result<Vec<Vec2>, CliError> {
    opts.points.iter().map(|p| parse_vec2(p, "--point")).collect()
}

fn exactly<const N: usize>(opts: &Options) -> Result<[Vec2; N], CliError> {
    let pts = points(opts)?;
    let n = pts.len();
    pts.try_into()
        .map_err(|_| CliError::Config(format!("expected {N} --point value(s), got {n}")))
}

fn vector(opts: &Options) -> Result<Vec2, CliError> {
    let text = opts
        .vector
        .as_deref()
        .ok_or_else(|| CliError::Config("--vector is required".into()))?;
    parse_vec2(text, "--vector")
}

fn dist(opts: &Options) -> Result<Outcome, CliError> {
    let spec = load_spec(opts.spec.as_deref(), "--spec")?;
    let [z, w] = exactly::<2>(opts)?;
    let c = spec.caratheodory_distance(&z, &w)?;
    Outcome::ok(json!({ "z": z, "w": w, "distance": c }))
}

fn metric(opts: &Options) -> Result<Outcome, CliError> {
    let spec = load_spec(opts.spec.as_deref(), "--spec")?;
    let [p] = exactly::<1>(opts)?;
    let x = vector(opts)?;
    let gamma = spec.caratheodory_metric(&p, &x)?;
    Outcome::ok(json!({ "point": p, "vector": x, "metric": gamma }))
}

fn indicatrix(opts: &Options) -> Result<Outcome, CliError> {
    let spec = load_spec(opts.spec.as_deref(), "--spec")?;
    let [p] = exactly::<1>(opts)?;
    let model = IndicatrixModel::build(&spec, &p)?;
    Outcome::ok(model.export(opts.tol.unwrap_or(LINE_DEDUP_TOL)))
}

fn faces(opts: &Options) -> Result<Outcome, CliError> {
    let spec = load_spec(opts.spec.as_deref(), "--spec")?;
    let [p] = exactly::<1>(opts)?;
    let q = vector(opts)?;
    let model = IndicatrixModel::build(&spec, &p)?;
    let face = model.face_at(&q)?;
    Outcome::ok(json!({
        "face": face,
        "safe_radius": face.safe_radius(&model),
        "minkowski": model.minkowski(&q),
    }))
}

fn classify(opts: &Options) -> Result<Outcome, CliError> {
    let path = opts
        .map
        .as_deref()
        .ok_or_else(|| CliError::Config("--map is required".into()))?;
    let doc: MapDocument = read_json(path)?;

    if let MapDocument::Linear(t) = &doc {
        let tol = opts.tol.unwrap_or(invariant_metrics::rlinear::VERDICT_TOL);
        let classification = t.classify(tol);
        let Some(spec_path) = opts.spec.as_deref() else {
            return Outcome::ok(json!({ "classification": classification }));
        };
        // Indicatrices of --spec at the first point and of --spec2 (or the
        // same domain) at the second point, both defaulting to the origin.
        let src = DomainSpec::from_json(&read(spec_path)?)?;
        let dst = match opts.spec2.as_deref() {
            Some(p) => DomainSpec::from_json(&read(p)?)?,
            None => src.clone(),
        };
        let pts = points(opts)?;
        if pts.len() > 2 {
            return Err(CliError::Config("at most two --point values for a linear map".into()));
        }
        let p = pts.first().copied().unwrap_or(Vec2::ZERO);
        let q = pts.get(1).copied().unwrap_or(p);
        let src_model = IndicatrixModel::build(&src, &p)?;
        let dst_model = IndicatrixModel::build(&dst, &q)?;
        let verdict = norm_map_verdict(t, &src_model, &dst_model, opts.seed)?;
        let contradiction = verdict.contradiction.then(|| {
            "norm-preserving map sends kernel lines to kernel lines but is neither C-linear nor anti-C-linear"
                .to_string()
        });
        return Ok(Outcome {
            document: json!({ "classification": classification, "verdict": verdict }),
            contradiction,
        });
    }

    let spec = load_spec(opts.spec.as_deref(), "--spec")?;
    let target = match opts.spec2.as_deref() {
        Some(p) => Some(DomainSpec::from_json(&read(p)?)?),
        None => None,
    };
    let map = doc.into_point_map()?;
    let mut pts = points(opts)?;
    if pts.is_empty() {
        pts.push(Vec2::ZERO);
    }
    let copts = classify_options(opts);
    let records = pts
        .iter()
        .map(|p| classify_point(map.as_ref(), &spec, target.as_ref(), p, &copts))
        .collect::<Result<Vec<_>, _>>()?;
    Outcome::ok(json!({ "points": records }))
}

fn classify_options(opts: &Options) -> ClassifyOptions {
    let mut c = ClassifyOptions {
        seed: opts.seed,
        ..Default::default()
    };
    if let Some(tol) = opts.tol {
        c.tol = tol;
    }
    c
}

/// Used when no --grid is given: 3⁴ points around the origin.
fn default_grid() -> Grid {
    Grid::axis(Vec2::ZERO, 0.05, 3)
}

fn isometry_check(opts: &Options) -> Result<Outcome, CliError> {
    let path = opts
        .map
        .as_deref()
        .ok_or_else(|| CliError::Config("--map is required".into()))?;
    let doc: MapDocument = read_json(path)?;
    let src = load_spec(opts.spec.as_deref(), "--spec")?;
    let dst = match opts.spec2.as_deref() {
        Some(p) => DomainSpec::from_json(&read(p)?)?,
        None => src.clone(),
    };
    let grid = match opts.grid.as_deref() {
        Some(p) => read_json::<GridDocument>(p)?.into_grid()?,
        None => default_grid(),
    };
    let map = doc.into_point_map()?;
    let verdict = classify_map(map.as_ref(), &src, Some(&dst), &grid, &classify_options(opts))?;
    Outcome::ok(verdict)
}

fn lempert(opts: &Options) -> Result<Outcome, CliError> {
    let spec = load_spec(opts.spec.as_deref(), "--spec")?;
    let lopts = LempertOptions {
        degree: opts.degree,
        budget: opts.budget,
        seed: opts.seed,
        ..Default::default()
    };
    let report = match opts.vector {
        Some(_) => {
            let [p] = exactly::<1>(opts)?;
            metric_gap(&spec, &p, &vector(opts)?, &lopts)?
        }
        None => {
            let [z, w] = exactly::<2>(opts)?;
            lempert_gap(&spec, &z, &w, &lopts)?
        }
    };
    let contradiction = (!report.lower_bound_ok).then(|| {
        format!(
            "disc upper bound {} is below the Carathéodory lower bound {}",
            report.upper, report.lower
        )
    });
    Ok(Outcome {
        document: to_value(&report),
        contradiction,
    })
}
