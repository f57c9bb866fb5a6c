//! Holomorphy classification of sampled maps between domains.
//!
//! At each sample point the real Fréchet derivative is estimated by central
//! differences and split into Wirtinger blocks `A = f_z`, `B = f_z̄`. A
//! Kobayashi isometry between domains whose indicatrices carry at least
//! three kernel lines has `A = 0` or `B = 0` at every point, and on a
//! connected domain the same alternative holds globally. This module checks
//! that conclusion on a connected grid; it does not prove anything between
//! grid points, and `C¹` smoothness of the map is an input assumption.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domain::{DomainError, DomainSpec};
use crate::expr::{self, Constants, EvalError, Expr, ParseError};
use crate::indicatrix::{IndicatrixError, IndicatrixModel};
use crate::linalg::{random_unit_vectors, Vec2};
use crate::rlinear::{MapClass, RLinearMap2};

/// Default central-difference step.
pub const DEFAULT_STEP: f64 = 1e-5;
/// Number of times the step is halved when the stencil leaves the domain.
pub const MAX_HALVINGS: usize = 3;
/// Holo/Anti tolerance on the relative Wirtinger block norms.
pub const DEFAULT_TOL: f64 = 1e-4;
/// Matching tolerance for tabulated sample points.
pub const TABLE_MATCH_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MapError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("no tabulated value at {0}")]
    NotTabulated(Vec2),
    #[error("map produced a non-finite value at {0}")]
    NonFinite(Vec2),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RigidityError {
    #[error("difference stencil of radius {h:e} around {point} leaves the source domain; use a smaller step")]
    StepTooLarge { point: Vec2, h: f64 },
    #[error("image {image} of {point} is outside the target domain")]
    Range { point: Vec2, image: Vec2 },
    #[error("grid point {index} ({point}) is outside the source domain")]
    PointOutside { index: usize, point: Vec2 },
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("map component {index} ({source_text:?}): {error}")]
    Parse {
        index: usize,
        source_text: String,
        error: ParseError,
    },
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Indicatrix(#[from] IndicatrixError),
}

/// A map ℂ² → ℂ² that can be sampled pointwise, possibly from several
/// threads at once.
pub trait PointMap: Sync {
    fn eval(&self, z: &Vec2) -> Result<Vec2, MapError>;

    /// Whether the map can be evaluated at arbitrary points (needed for
    /// step halving and isometry checks).
    fn is_dense(&self) -> bool {
        true
    }
}

/// Wraps a plain closure.
pub struct FnMap<F>(pub F);

impl<F> PointMap for FnMap<F>
where
    F: Fn(&Vec2) -> Vec2 + Sync,
{
    fn eval(&self, z: &Vec2) -> Result<Vec2, MapError> {
        let w = (self.0)(z);
        if w.is_finite() {
            Ok(w)
        } else {
            Err(MapError::NonFinite(*z))
        }
    }
}

impl PointMap for RLinearMap2 {
    fn eval(&self, z: &Vec2) -> Result<Vec2, MapError> {
        Ok(self.apply(z))
    }
}

/// Map given by two component expressions; `conj` of variables is allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct ExprMap {
    pub components: [Expr; 2],
}

impl ExprMap {
    pub fn parse(components: [&str; 2], constants: &Constants) -> Result<Self, RigidityError> {
        let parse_one = |index: usize| {
            expr::parse(components[index], constants).map_err(|error| RigidityError::Parse {
                index,
                source_text: components[index].to_string(),
                error,
            })
        };
        Ok(ExprMap {
            components: [parse_one(0)?, parse_one(1)?],
        })
    }
}

impl PointMap for ExprMap {
    fn eval(&self, z: &Vec2) -> Result<Vec2, MapError> {
        Ok(Vec2([self.components[0].eval(z)?, self.components[1].eval(z)?]))
    }
}

/// Map known only at tabulated points; no interpolation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    pub z: Vec2,
    pub f: Vec2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedMap {
    entries: Vec<TableEntry>,
}

impl TabulatedMap {
    pub fn new(entries: Vec<TableEntry>) -> Self {
        TabulatedMap { entries }
    }

    /// Tabulate `map` on every grid point and its `h`-stencil.
    pub fn sample(map: &dyn PointMap, points: &[Vec2], h: f64) -> Result<Self, MapError> {
        let mut entries = Vec::new();
        for p in points {
            for q in std::iter::once(*p).chain(stencil(p, h)) {
                entries.push(TableEntry { z: q, f: map.eval(&q)? });
            }
        }
        Ok(TabulatedMap { entries })
    }
}

impl PointMap for TabulatedMap {
    fn eval(&self, z: &Vec2) -> Result<Vec2, MapError> {
        self.entries
            .iter()
            .find(|e| (e.z - *z).max_modulus() <= TABLE_MATCH_TOL)
            .map(|e| e.f)
            .ok_or(MapError::NotTabulated(*z))
    }

    fn is_dense(&self) -> bool {
        false
    }
}

/// Serialized map input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapDocument {
    Linear(RLinearMap2),
    Expressions {
        #[serde(default)]
        constants: Constants,
        components: [String; 2],
    },
    Table {
        table: Vec<TableEntry>,
    },
}

impl MapDocument {
    pub fn into_point_map(self) -> Result<Box<dyn PointMap + Send>, RigidityError> {
        Ok(match self {
            MapDocument::Linear(t) => Box::new(t),
            MapDocument::Expressions {
                constants,
                components,
            } => Box::new(ExprMap::parse(
                [components[0].as_str(), components[1].as_str()],
                &constants,
            )?),
            MapDocument::Table { table } => Box::new(TabulatedMap::new(table)),
        })
    }
}

/// The 8 points `p ± h e_k` along the real coordinates.
fn stencil(p: &Vec2, h: f64) -> impl Iterator<Item = Vec2> + '_ {
    (0..4).flat_map(move |k| {
        let mut e = [0.0; 4];
        e[k] = h;
        let d = Vec2::from_real(e);
        [*p + d, *p - d]
    })
}

/// Central-difference real Jacobian at `p`, split into Wirtinger blocks.
pub fn real_jacobian(
    map: &dyn PointMap,
    source: &DomainSpec,
    p: &Vec2,
    h: f64,
) -> Result<RLinearMap2, RigidityError> {
    if !stencil(p, h).all(|q| source.contains(&q)) {
        return Err(RigidityError::StepTooLarge { point: *p, h });
    }
    let mut m = [[0.0; 4]; 4];
    for k in 0..4 {
        let mut e = [0.0; 4];
        e[k] = h;
        let d = Vec2::from_real(e);
        let fp = map.eval(&(*p + d))?.to_real();
        let fm = map.eval(&(*p - d))?.to_real();
        for row in 0..4 {
            m[row][k] = (fp[row] - fm[row]) / (2.0 * h);
        }
    }
    Ok(RLinearMap2::from_real(&m))
}

/// [`real_jacobian`] with up to [`MAX_HALVINGS`] halvings of `h` when the
/// stencil leaves the domain. Returns the Jacobian and the step used.
pub fn real_jacobian_adaptive(
    map: &dyn PointMap,
    source: &DomainSpec,
    p: &Vec2,
    h: f64,
) -> Result<(RLinearMap2, f64), RigidityError> {
    let mut step = h;
    let halvings = if map.is_dense() { MAX_HALVINGS } else { 0 };
    for attempt in 0..=halvings {
        match real_jacobian(map, source, p, step) {
            Ok(j) => return Ok((j, step)),
            Err(RigidityError::StepTooLarge { .. }) if attempt < halvings => step *= 0.5,
            Err(e) => return Err(e),
        }
    }
    unreachable!("loop returns on its last attempt")
}

/// Worst relative isometry residual
/// `max_X |κ_N(F(p); F'(p)X) − κ_M(p; X)| / κ_M(p; X)` over `n_dirs` seeded
/// unit directions, using `κ = γ` on both domains.
pub fn check_isometry_at(
    map: &dyn PointMap,
    source: &DomainSpec,
    target: &DomainSpec,
    p: &Vec2,
    n_dirs: usize,
    h: f64,
    seed: u64,
) -> Result<f64, RigidityError> {
    let (jac, _) = real_jacobian_adaptive(map, source, p, h)?;
    isometry_residual(map, &jac, source, target, p, n_dirs, seed)
}

fn isometry_residual(
    map: &dyn PointMap,
    jac: &RLinearMap2,
    source: &DomainSpec,
    target: &DomainSpec,
    p: &Vec2,
    n_dirs: usize,
    seed: u64,
) -> Result<f64, RigidityError> {
    let image = map.eval(p)?;
    if !target.contains(&image) {
        return Err(RigidityError::Range { point: *p, image });
    }
    let src = IndicatrixModel::build(source, p)?;
    let dst = IndicatrixModel::build(target, &image)?;
    Ok(random_unit_vectors(n_dirs, seed)
        .iter()
        .map(|x| {
            let k = src.minkowski(x);
            (dst.minkowski(&jac.apply(x)) - k).abs() / k
        })
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointLabel {
    Holo,
    Anti,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointClassification {
    pub point: Vec2,
    pub jacobian: RLinearMap2,
    /// `‖f_z‖_F`.
    pub wirtinger_z_norm: f64,
    /// `‖f_z̄‖_F`.
    pub wirtinger_zbar_norm: f64,
    pub label: PointLabel,
    /// Both blocks below `tol`; the label is then the smaller block's side.
    pub degenerate: bool,
    pub isometry_residual: Option<f64>,
    pub step: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    pub h: f64,
    pub tol: f64,
    pub n_dirs: usize,
    pub seed: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            h: DEFAULT_STEP,
            tol: DEFAULT_TOL,
            n_dirs: 64,
            seed: 0,
        }
    }
}

/// Label the derivative of `map` at `p`. When `target` is given the
/// isometry residual is attached as well.
pub fn classify_point(
    map: &dyn PointMap,
    source: &DomainSpec,
    target: Option<&DomainSpec>,
    p: &Vec2,
    opts: &ClassifyOptions,
) -> Result<PointClassification, RigidityError> {
    let (jacobian, step) = real_jacobian_adaptive(map, source, p, opts.h)?;
    let c = jacobian.classify(opts.tol);
    let degenerate = c.a_norm <= opts.tol && c.b_norm <= opts.tol;
    let label = if degenerate {
        if c.b_norm <= c.a_norm {
            PointLabel::Holo
        } else {
            PointLabel::Anti
        }
    } else {
        match c.class {
            MapClass::CLinear => PointLabel::Holo,
            MapClass::AntiCLinear => PointLabel::Anti,
            MapClass::Neither => PointLabel::Mixed,
        }
    };
    let isometry_residual = match target {
        Some(t) if map.is_dense() => Some(isometry_residual(
            map, &jacobian, source, t, p, opts.n_dirs, opts.seed,
        )?),
        _ => None,
    };
    Ok(PointClassification {
        point: *p,
        jacobian,
        wirtinger_z_norm: c.a_norm,
        wirtinger_zbar_norm: c.b_norm,
        label,
        degenerate,
        isometry_residual,
        step,
    })
}

/// Sample points with caller-declared adjacency.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub points: Vec<Vec2>,
    pub edges: Vec<(usize, usize)>,
}

/// Serialized grid: explicit points and edges, or an axis-aligned lattice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridDocument {
    Explicit {
        points: Vec<Vec2>,
        edges: Vec<(usize, usize)>,
    },
    Axis {
        center: Vec2,
        spacing: f64,
        n: usize,
    },
}

impl GridDocument {
    pub fn into_grid(self) -> Result<Grid, RigidityError> {
        match self {
            GridDocument::Explicit { points, edges } => Ok(Grid { points, edges }),
            GridDocument::Axis { center, spacing, n } => {
                if n == 0 || !(spacing > 0.0) {
                    return Err(RigidityError::Grid(
                        "axis grid needs n >= 1 and positive spacing".into(),
                    ));
                }
                Ok(Grid::axis(center, spacing, n))
            }
        }
    }
}

impl Grid {
    /// `n⁴` points `center + spacing·(i_k − (n−1)/2)` along the four real
    /// coordinates, with edges between axis neighbours.
    pub fn axis(center: Vec2, spacing: f64, n: usize) -> Grid {
        let offset = (n as f64 - 1.0) / 2.0;
        let index = |i: [usize; 4]| ((i[0] * n + i[1]) * n + i[2]) * n + i[3];
        let mut points = Vec::with_capacity(n.pow(4));
        let mut edges = Vec::new();
        for flat in 0..n.pow(4) {
            let i = [flat / n.pow(3), (flat / n.pow(2)) % n, (flat / n) % n, flat % n];
            let r: [f64; 4] = std::array::from_fn(|k| spacing * (i[k] as f64 - offset));
            points.push(center + Vec2::from_real(r));
            for k in 0..4 {
                if i[k] + 1 < n {
                    let mut j = i;
                    j[k] += 1;
                    edges.push((flat, index(j)));
                }
            }
        }
        Grid { points, edges }
    }

    /// Validate indices and check connectivity by breadth-first search.
    pub fn check_connected(&self) -> Result<(), RigidityError> {
        let n = self.points.len();
        if n == 0 {
            return Err(RigidityError::Grid("grid has no points".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            if a >= n || b >= n {
                return Err(RigidityError::Grid(format!(
                    "edge ({a}, {b}) refers to a missing point"
                )));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        if count == n {
            Ok(())
        } else {
            Err(RigidityError::Grid(format!(
                "grid is disconnected: {count} of {n} points reachable from point 0"
            )))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GlobalVerdict {
    Holomorphic,
    Antiholomorphic,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MapVerdict {
    pub verdict: GlobalVerdict,
    pub points: Vec<PointClassification>,
    /// Grid edges whose endpoints carry different labels.
    pub label_changes: Vec<(usize, usize)>,
    pub degenerate_points: usize,
    pub worst_isometry_residual: Option<f64>,
    /// Largest `‖f_z̄‖` over Holo points and `‖f_z‖` over Anti points.
    pub worst_off_block: f64,
}

/// Classify every grid point and combine the labels into a global verdict.
pub fn classify_map(
    map: &dyn PointMap,
    source: &DomainSpec,
    target: Option<&DomainSpec>,
    grid: &Grid,
    opts: &ClassifyOptions,
) -> Result<MapVerdict, RigidityError> {
    grid.check_connected()?;
    if let Some((index, point)) = grid
        .points
        .iter()
        .enumerate()
        .find(|(_, p)| !source.contains(p))
    {
        return Err(RigidityError::PointOutside {
            index,
            point: *point,
        });
    }
    let points = grid
        .points
        .par_iter()
        .map(|p| classify_point(map, source, target, p, opts))
        .collect::<Result<Vec<_>, _>>()?;

    let verdict = if points.iter().all(|c| c.label == PointLabel::Holo) {
        GlobalVerdict::Holomorphic
    } else if points.iter().all(|c| c.label == PointLabel::Anti) {
        GlobalVerdict::Antiholomorphic
    } else {
        GlobalVerdict::Mixed
    };
    let label_changes = grid
        .edges
        .iter()
        .copied()
        .filter(|&(a, b)| points[a].label != points[b].label)
        .collect();
    let worst_isometry_residual = points
        .iter()
        .filter_map(|c| c.isometry_residual)
        .reduce(f64::max);
    let worst_off_block = points
        .iter()
        .map(|c| match c.label {
            PointLabel::Holo => c.wirtinger_zbar_norm,
            PointLabel::Anti => c.wirtinger_z_norm,
            PointLabel::Mixed => 0.0,
        })
        .fold(0.0, f64::max);
    Ok(MapVerdict {
        verdict,
        degenerate_points: points.iter().filter(|c| c.degenerate).count(),
        points,
        label_changes,
        worst_isometry_residual,
        worst_off_block,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CMat2;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn dab66() -> DomainSpec {
        DomainSpec::dab(c(0.6, 0.0), c(0.6, 0.0)).unwrap()
    }

    fn expr_map(a: &str, b: &str) -> ExprMap {
        ExprMap::parse([a, b], &Constants::new()).unwrap()
    }

    #[test]
    fn jacobian_examples() {
        let bi = DomainSpec::bidisc();
        let p = Vec2::from_parts(0.1, 0.2, -0.3, 0.1);
        let j = real_jacobian(&expr_map("z1", "z2"), &bi, &p, 1e-5).unwrap();
        assert!((j.a - CMat2::identity()).frobenius() < 1e-9);
        assert!(j.b.frobenius() < 1e-9);

        let j = real_jacobian(&expr_map("conj(z1)", "conj(z2)"), &bi, &p, 1e-5).unwrap();
        assert!(j.a.frobenius() < 1e-9);
        assert!((j.b - CMat2::identity()).frobenius() < 1e-9);

        let j = real_jacobian(&expr_map("z1*z1", "z2"), &bi, &Vec2::real(0.3, 0.0), 1e-5).unwrap();
        assert!((j.a - CMat2::diag(c(0.6, 0.0), c(1.0, 0.0))).frobenius() < 1e-9);
        assert!(j.b.frobenius() < 1e-9);
    }

    #[test]
    fn stencil_leaving_domain() {
        let bi = DomainSpec::bidisc();
        let p = Vec2::real(1.0 - 1e-6, 0.0);
        let id = expr_map("z1", "z2");
        assert!(matches!(
            real_jacobian(&id, &bi, &p, 1e-5),
            Err(RigidityError::StepTooLarge { .. })
        ));
        // Three halvings reach 1.25e-6, still too large.
        assert!(real_jacobian_adaptive(&id, &bi, &p, 1e-5).is_err());
        let q = Vec2::real(1.0 - 4e-6, 0.0);
        let (_, h) = real_jacobian_adaptive(&id, &bi, &q, 1e-5).unwrap();
        assert_eq!(h, 2.5e-6);
    }

    #[test]
    fn isometry_examples() {
        let d = dab66();
        let p = Vec2::from_parts(0.1, -0.05, 0.2, 0.1);
        let r = check_isometry_at(&expr_map("z1", "z2"), &d, &d, &p, 64, 1e-5, 1).unwrap();
        assert!(r <= 1e-7, "{r}");

        let bi = DomainSpec::bidisc();
        let r = check_isometry_at(&expr_map("z1", "conj(z2)"), &bi, &bi, &p, 64, 1e-5, 1).unwrap();
        assert!(r <= 1e-7, "{r}");

        let half = expr_map("0.5*z1", "0.5*z2");
        let r = check_isometry_at(&half, &bi, &bi, &Vec2::ZERO, 64, 1e-5, 1).unwrap();
        assert!((r - 0.5).abs() < 1e-9, "{r}");

        let out = expr_map("z1 + 2", "z2");
        assert!(matches!(
            check_isometry_at(&out, &bi, &bi, &Vec2::ZERO, 8, 1e-5, 1),
            Err(RigidityError::Range { .. })
        ));
    }

    #[test]
    fn point_labels() {
        let bi = DomainSpec::bidisc();
        let p = Vec2::real(0.1, 0.2);
        let opts = ClassifyOptions::default();
        let label = |m: &ExprMap| classify_point(m, &bi, None, &p, &opts).unwrap().label;
        assert_eq!(label(&expr_map("z1", "z2")), PointLabel::Holo);
        assert_eq!(label(&expr_map("conj(z1)", "conj(z2)")), PointLabel::Anti);
        assert_eq!(label(&expr_map("z1", "conj(z2)")), PointLabel::Mixed);

        let flat = classify_point(&expr_map("0.3", "0.1*i"), &bi, None, &Vec2::ZERO, &opts).unwrap();
        assert!(flat.degenerate);
        assert_eq!(flat.label, PointLabel::Holo);
    }

    #[test]
    fn grid_connectivity() {
        let g = Grid::axis(Vec2::ZERO, 0.1, 3);
        assert_eq!(g.points.len(), 81);
        assert_eq!(g.edges.len(), 4 * 2 * 27);
        assert!(g.check_connected().is_ok());
        let split = Grid {
            points: vec![Vec2::ZERO, Vec2::real(0.1, 0.0), Vec2::real(0.2, 0.0)],
            edges: vec![(0, 1)],
        };
        assert!(matches!(split.check_connected(), Err(RigidityError::Grid(_))));
        let empty = Grid {
            points: vec![],
            edges: vec![],
        };
        assert!(empty.check_connected().is_err());
    }

    #[test]
    fn map_verdicts() {
        let d = dab66();
        let grid = Grid::axis(Vec2::ZERO, 0.05, 3);
        let opts = ClassifyOptions::default();
        let v = classify_map(&expr_map("z1", "z2"), &d, Some(&d), &grid, &opts).unwrap();
        assert_eq!(v.verdict, GlobalVerdict::Holomorphic);
        assert!(v.label_changes.is_empty());
        let v = classify_map(&expr_map("conj(z1)", "conj(z2)"), &d, Some(&d), &grid, &opts).unwrap();
        assert_eq!(v.verdict, GlobalVerdict::Antiholomorphic);
        assert!(v.worst_isometry_residual.unwrap() <= 1e-6);

        let bi = DomainSpec::bidisc();
        let v = classify_map(&expr_map("z1", "conj(z2)"), &bi, Some(&bi), &grid, &opts).unwrap();
        assert_eq!(v.verdict, GlobalVerdict::Mixed);
        assert!(v.points.iter().all(|p| p.label == PointLabel::Mixed));
    }

    #[test]
    fn label_change_edges_are_reported() {
        // Holomorphic for Re z1 < 0, conjugate for Re z1 > 0 (not C¹, on purpose).
        let piecewise = FnMap(|z: &Vec2| if z[0].re < 0.0 { *z } else { z.conj() });
        let grid = Grid {
            points: vec![Vec2::real(-0.2, 0.0), Vec2::real(0.2, 0.0)],
            edges: vec![(0, 1)],
        };
        let bi = DomainSpec::bidisc();
        let v = classify_map(&piecewise, &bi, None, &grid, &ClassifyOptions::default()).unwrap();
        assert_eq!(v.verdict, GlobalVerdict::Mixed);
        assert_eq!(v.label_changes, vec![(0, 1)]);
    }

    #[test]
    fn tabulated_maps_classify_without_isometry() {
        let bi = DomainSpec::bidisc();
        let grid = Grid::axis(Vec2::real(0.1, -0.1), 0.1, 2);
        let table = TabulatedMap::sample(&expr_map("conj(z1)", "conj(z2)"), &grid.points, DEFAULT_STEP)
            .unwrap();
        let v = classify_map(&table, &bi, Some(&bi), &grid, &ClassifyOptions::default()).unwrap();
        assert_eq!(v.verdict, GlobalVerdict::Antiholomorphic);
        assert_eq!(v.worst_isometry_residual, None);
        assert!(matches!(
            table.eval(&Vec2::real(0.77, 0.0)),
            Err(MapError::NotTabulated(_))
        ));
    }

    #[test]
    fn documents() {
        let m: MapDocument = serde_json::from_str(r#"{"components":["z1","conj(z2)"]}"#).unwrap();
        let pm = m.into_point_map().unwrap();
        assert_eq!(
            pm.eval(&Vec2::from_parts(0.1, 0.2, 0.3, 0.4)).unwrap(),
            Vec2::from_parts(0.1, 0.2, 0.3, -0.4)
        );
        let m: MapDocument = serde_json::from_str(
            r#"{"A":[[[1,0],[0,0]],[[0,0],[1,0]]],"B":[[[0,0],[0,0]],[[0,0],[0,0]]]}"#,
        )
        .unwrap();
        assert_eq!(m, MapDocument::Linear(RLinearMap2::identity()));
        let g: GridDocument =
            serde_json::from_str(r#"{"center":[[0,0],[0,0]],"spacing":0.1,"n":3}"#).unwrap();
        assert_eq!(g.into_grid().unwrap().points.len(), 81);
        let g: GridDocument = serde_json::from_str(
            r#"{"points":[[[0,0],[0,0]],[[0.1,0],[0,0]]],"edges":[[0,1]]}"#,
        )
        .unwrap();
        assert_eq!(g.into_grid().unwrap().edges, vec![(0, 1)]);
    }
}
