//! Kobayashi indicatrix of a domain with a finite universal set.
//!
//! At a base point `p` the indicatrix is `⋂ {X : |L_i(X)| < 1}` with
//! `L_i(X) = F_i'(p) X / (1 − |F_i(p)|²)`. Its gauge (Minkowski functional)
//! is `μ(X) = max_i |L_i(X)|`, which on a Lempert domain is `κ(p; X)`.
//!
//! Where exactly one `|L_i(q)|` reaches 1, the face of the closed body
//! through `q` is the complex line `q + Ker L_i`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domain::{DomainError, DomainSpec};
use crate::linalg::Vec2;

/// Default tolerance for deciding which constraints are active.
pub const ACTIVE_TOL: f64 = 1e-9;
/// Default tolerance for merging projectively equal kernel lines.
pub const LINE_DEDUP_TOL: f64 = 1e-9;
/// Smallest singular value of the functional matrix for a bounded body.
pub const BOUNDEDNESS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IndicatrixError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("functional {0} is the zero covector")]
    DegenerateFunctional(usize),
    #[error("indicatrix is unbounded: smallest singular value {0:e}")]
    Unbounded(f64),
    #[error("zero vector has no boundary point")]
    ZeroVector,
    #[error("point is not on the boundary: minkowski value {0}")]
    NotOnBoundary(f64),
    #[error("no smooth face: active set {0:?}")]
    NotSmoothFace(Vec<usize>),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Functional {
    pub l: Vec2,
    /// Index of the universal-set member that produced it.
    pub source_index: usize,
}

impl Functional {
    pub fn eval(&self, x: &Vec2) -> num_complex::Complex64 {
        self.l.apply(x)
    }

    /// Unit vector spanning `Ker L = ℂ·(−l₂, l₁)`.
    pub fn kernel_direction(&self) -> Vec2 {
        Vec2([-self.l[1], self.l[0]])
            .normalized()
            .unwrap_or(Vec2::ZERO)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndicatrixModel {
    base_point: Vec2,
    functionals: Vec<Functional>,
}

/// A smooth face `base + ℂ·kernel_direction` of the closed indicatrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Face {
    pub base: Vec2,
    pub active_index: usize,
    pub kernel_direction: Vec2,
}

/// Distinct complex lines `Ker L_i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineConfiguration {
    /// Unit spanning vectors.
    pub lines: Vec<Vec2>,
    /// For each line, the functionals whose kernel it is.
    pub sources: Vec<Vec<usize>>,
}

impl LineConfiguration {
    pub fn count(&self) -> usize {
        self.lines.len()
    }
}

/// `σ_min² = λ_min(Σ l_i^H l_i)` of the k×2 functional matrix.
fn smallest_singular_value(functionals: &[Functional]) -> f64 {
    let (mut g11, mut g22) = (0.0, 0.0);
    let mut g12 = num_complex::Complex64::new(0.0, 0.0);
    for f in functionals {
        let (a, b) = (f.l[0], f.l[1]);
        g11 += a.norm_sqr();
        g22 += b.norm_sqr();
        g12 += a.conj() * b;
    }
    let tr = g11 + g22;
    let disc = ((g11 - g22).powi(2) + 4.0 * g12.norm_sqr()).sqrt();
    // λ_min = det / λ_max avoids cancellation.
    let lmax = 0.5 * (tr + disc);
    let det = g11 * g22 - g12.norm_sqr();
    if lmax <= 0.0 {
        0.0
    } else {
        (det / lmax).max(0.0).sqrt()
    }
}

/// Kernel lines of `functionals`, merged when
/// `|⟨u, v⟩| > (1 − tol)·|u||v|`.
pub fn kernel_lines(functionals: &[Functional], tol: f64) -> LineConfiguration {
    let mut config = LineConfiguration {
        lines: Vec::new(),
        sources: Vec::new(),
    };
    for (i, f) in functionals.iter().enumerate() {
        let u = f.kernel_direction();
        if u == Vec2::ZERO {
            continue;
        }
        match config
            .lines
            .iter()
            .position(|v| v.inner(&u).norm() > (1.0 - tol) * u.norm() * v.norm())
        {
            Some(k) => config.sources[k].push(i),
            None => {
                config.lines.push(u);
                config.sources.push(vec![i]);
            }
        }
    }
    config
}

impl IndicatrixModel {
    /// Validate and wrap a list of functionals.
    pub fn new(base_point: Vec2, functionals: Vec<Functional>) -> Result<Self, IndicatrixError> {
        if let Some(f) = functionals.iter().find(|f| f.l.norm() == 0.0) {
            return Err(IndicatrixError::DegenerateFunctional(f.source_index));
        }
        let smin = smallest_singular_value(&functionals);
        if !(smin > BOUNDEDNESS_TOL) {
            return Err(IndicatrixError::Unbounded(smin));
        }
        Ok(IndicatrixModel {
            base_point,
            functionals,
        })
    }

    /// Indicatrix of `spec` at `p`.
    pub fn build(spec: &DomainSpec, p: &Vec2) -> Result<Self, IndicatrixError> {
        let functionals = spec
            .metric_functionals(p)?
            .into_iter()
            .enumerate()
            .map(|(source_index, l)| Functional { l, source_index })
            .collect();
        Self::new(*p, functionals)
    }

    pub fn base_point(&self) -> &Vec2 {
        &self.base_point
    }

    pub fn functionals(&self) -> &[Functional] {
        &self.functionals
    }

    /// `max_i |L_i(X)|`.
    pub fn minkowski(&self, x: &Vec2) -> f64 {
        self.functionals
            .iter()
            .map(|f| f.eval(x).norm())
            .fold(0.0, f64::max)
    }

    /// Radial projection `X / μ(X)` onto the boundary.
    pub fn boundary_point(&self, x: &Vec2) -> Result<Vec2, IndicatrixError> {
        let mu = self.minkowski(x);
        if mu == 0.0 {
            return Err(IndicatrixError::ZeroVector);
        }
        Ok(*x * (1.0 / mu))
    }

    /// Indices `i` with `|L_i(q)| ≥ 1 − tol`, for `q` on the boundary.
    pub fn active_set(&self, q: &Vec2, tol: f64) -> Result<Vec<usize>, IndicatrixError> {
        let mu = self.minkowski(q);
        if (mu - 1.0).abs() > tol {
            return Err(IndicatrixError::NotOnBoundary(mu));
        }
        Ok(self
            .functionals
            .iter()
            .enumerate()
            .filter(|(_, f)| f.eval(q).norm() >= 1.0 - tol)
            .map(|(i, _)| i)
            .collect())
    }

    /// The face through `q`, which must have exactly one active constraint.
    pub fn face_at(&self, q: &Vec2) -> Result<Face, IndicatrixError> {
        let active = self.active_set(q, ACTIVE_TOL)?;
        match active.as_slice() {
            [i] => Ok(Face {
                base: *q,
                active_index: *i,
                kernel_direction: self.functionals[*i].kernel_direction(),
            }),
            _ => Err(IndicatrixError::NotSmoothFace(active)),
        }
    }

    /// Distinct kernel lines of the functionals.
    pub fn line_configuration(&self, tol: f64) -> LineConfiguration {
        kernel_lines(&self.functionals, tol)
    }

    pub fn export(&self, tol: f64) -> IndicatrixExport {
        let lines = self.line_configuration(tol);
        IndicatrixExport {
            base_point: self.base_point,
            functionals: self.functionals.iter().map(|f| f.l).collect(),
            line_count: lines.count(),
            lines: lines.lines,
        }
    }
}

impl Face {
    /// Step size along the kernel that keeps every inactive constraint
    /// strictly below 1:
    /// `0.01·(1 − max inactive |L_i(q)|) / max_i |L_i(v)|`.
    pub fn safe_radius(&self, model: &IndicatrixModel) -> f64 {
        let slack = model
            .functionals
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != self.active_index)
            .map(|(_, f)| f.eval(&self.base).norm())
            .fold(0.0, f64::max);
        let growth = model
            .functionals
            .iter()
            .map(|f| f.eval(&self.kernel_direction).norm())
            .fold(0.0, f64::max);
        if growth == 0.0 {
            return f64::INFINITY;
        }
        0.01 * (1.0 - slack) / growth
    }

    /// Largest `μ(q + ε e^{iθ} v)` over `n_phases` equally spaced phases.
    pub fn max_along(&self, model: &IndicatrixModel, v: &Vec2, eps: f64, n_phases: usize) -> f64 {
        (0..n_phases)
            .map(|k| {
                let theta = std::f64::consts::TAU * k as f64 / n_phases as f64;
                let step = num_complex::Complex64::from_polar(eps, theta);
                model.minkowski(&(self.base + *v * step))
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Serialized indicatrix: base point, functionals and kernel lines.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndicatrixExport {
    pub base_point: Vec2,
    pub functionals: Vec<Vec2>,
    pub line_count: usize,
    pub lines: Vec<Vec2>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn dab66() -> DomainSpec {
        DomainSpec::dab(Complex64::new(0.6, 0.0), Complex64::new(0.6, 0.0)).unwrap()
    }

    fn bidisc_model() -> IndicatrixModel {
        IndicatrixModel::build(&DomainSpec::bidisc(), &Vec2::ZERO).unwrap()
    }

    fn dab_model() -> IndicatrixModel {
        IndicatrixModel::build(&dab66(), &Vec2::ZERO).unwrap()
    }

    fn approx(a: &Vec2, b: &Vec2, tol: f64) -> bool {
        (*a - *b).norm() <= tol
    }

    #[test]
    fn build_examples() {
        let ls: Vec<Vec2> = bidisc_model().functionals().iter().map(|f| f.l).collect();
        assert_eq!(ls, vec![Vec2::e1(), Vec2::e2()]);
        let ls: Vec<Vec2> = dab_model().functionals().iter().map(|f| f.l).collect();
        assert_eq!(ls.len(), 3);
        assert!(approx(&ls[0], &Vec2::e1(), 1e-15));
        assert!(approx(&ls[1], &Vec2::e2(), 1e-15));
        assert!(approx(&ls[2], &Vec2::real(-0.6, -0.6), 1e-15));
    }

    #[test]
    fn minkowski_examples() {
        assert_eq!(bidisc_model().minkowski(&Vec2::real(1.0, 1.0)), 1.0);
        assert!((dab_model().minkowski(&Vec2::real(1.0, -1.0)) - 1.0).abs() < 1e-15);
        assert_eq!(dab_model().minkowski(&Vec2::ZERO), 0.0);
    }

    #[test]
    fn boundary_point_examples() {
        let m = bidisc_model();
        assert_eq!(m.boundary_point(&Vec2::real(2.0, 0.0)).unwrap(), Vec2::e1());
        let d = dab_model();
        let q = d.boundary_point(&Vec2::real(1.0, 1.0)).unwrap();
        assert!(approx(&q, &Vec2::real(1.0 / 1.2, 1.0 / 1.2), 1e-15));
        let x = Vec2::from_parts(0.3, -0.2, 0.9, 0.4);
        let q = d.boundary_point(&x).unwrap();
        assert!((d.minkowski(&q) - 1.0).abs() < 1e-12);
        assert!(approx(&d.boundary_point(&q).unwrap(), &q, 1e-15));
        assert_eq!(d.boundary_point(&Vec2::ZERO), Err(IndicatrixError::ZeroVector));
    }

    #[test]
    fn active_set_examples() {
        let m = bidisc_model();
        assert_eq!(m.active_set(&Vec2::real(1.0, 0.5), 1e-9).unwrap(), vec![0]);
        assert_eq!(m.active_set(&Vec2::real(1.0, 1.0), 1e-9).unwrap(), vec![0, 1]);
        let d = dab_model();
        let q = Vec2::real(1.0, 0.5);
        assert!((d.functionals()[2].eval(&q).norm() - 0.9).abs() < 1e-15);
        assert_eq!(d.active_set(&q, 1e-9).unwrap(), vec![0]);
        assert!(matches!(
            m.active_set(&Vec2::real(0.5, 0.5), 1e-9),
            Err(IndicatrixError::NotOnBoundary(_))
        ));
    }

    #[test]
    fn face_examples() {
        let f = bidisc_model().face_at(&Vec2::real(1.0, 0.5)).unwrap();
        assert_eq!(f.active_index, 0);
        // Ker of (1, 0) is spanned by (0, 1) up to a unimodular factor.
        assert!((f.kernel_direction.det(&Vec2::e2())).norm() < 1e-15);
        assert!((f.kernel_direction.norm() - 1.0).abs() < 1e-15);

        let f = dab_model().face_at(&Vec2::real(0.5, 1.0)).unwrap();
        assert_eq!(f.active_index, 1);
        assert!((f.kernel_direction.det(&Vec2::e1())).norm() < 1e-15);

        assert_eq!(
            bidisc_model().face_at(&Vec2::real(1.0, 1.0)),
            Err(IndicatrixError::NotSmoothFace(vec![0, 1]))
        );
    }

    #[test]
    fn line_configuration_examples() {
        let c = bidisc_model().line_configuration(LINE_DEDUP_TOL);
        assert_eq!(c.count(), 2);
        assert!(c.lines[0].det(&Vec2::e2()).norm() < 1e-15);
        assert!(c.lines[1].det(&Vec2::e1()).norm() < 1e-15);

        let c = dab_model().line_configuration(LINE_DEDUP_TOL);
        assert_eq!(c.count(), 3);
        assert!(c.lines[2].det(&Vec2::real(1.0, -1.0)).norm() < 1e-15);

        let l1 = Functional {
            l: Vec2::from_parts(0.3, 0.1, -0.7, 0.2),
            source_index: 0,
        };
        let l2 = Functional {
            l: l1.l * 2.0,
            source_index: 1,
        };
        let c = kernel_lines(&[l1, l2], LINE_DEDUP_TOL);
        assert_eq!(c.count(), 1);
        assert_eq!(c.sources, vec![vec![0, 1]]);
    }

    #[test]
    fn construction_errors() {
        let zero = Functional {
            l: Vec2::ZERO,
            source_index: 4,
        };
        assert_eq!(
            IndicatrixModel::new(Vec2::ZERO, vec![zero]),
            Err(IndicatrixError::DegenerateFunctional(4))
        );
        let l = Functional {
            l: Vec2::e1(),
            source_index: 0,
        };
        assert!(matches!(
            IndicatrixModel::new(Vec2::ZERO, vec![l, l]),
            Err(IndicatrixError::Unbounded(_))
        ));
        assert!(matches!(
            IndicatrixModel::build(&DomainSpec::bidisc(), &Vec2::real(1.5, 0.0)),
            Err(IndicatrixError::Domain(DomainError::Outside(_)))
        ));
    }

    #[test]
    fn flat_and_maximal_face() {
        let d = dab_model();
        let q = d.boundary_point(&Vec2::from_parts(0.9, 0.1, 0.2, -0.3)).unwrap();
        let face = d.face_at(&q).unwrap();
        let r = face.safe_radius(&d);
        for k in 0..8 {
            let eps = Complex64::from_polar(r, k as f64);
            let mu = d.minkowski(&(q + face.kernel_direction * eps));
            assert!((mu - 1.0).abs() < 1e-9);
        }
        let v = Vec2::from_parts(0.2, 0.5, -0.4, 0.1);
        assert!(face.max_along(&d, &v, 1e-3, 16) > 1.0 + 1e-7);
    }

    #[test]
    fn export_shape() {
        let e = dab_model().export(LINE_DEDUP_TOL);
        assert_eq!(e.line_count, 3);
        assert_eq!(e.functionals.len(), 3);
        let text = serde_json::to_string(&e).unwrap();
        let back: IndicatrixExport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, e);
    }
}
