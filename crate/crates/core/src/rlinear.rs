//! ℝ-linear maps of ℂ and ℂ² and their ℂ-linearity.
//!
//! Every ℝ-linear `T: ℂ² → ℂ²` has a unique split `T(X) = A X + B X̄` with
//! complex 2×2 matrices `A` (the ℂ-linear block) and `B` (the
//! conjugate-linear block). `T` is ℂ-linear iff `B = 0`, equivalently
//! `[T][J] = [J][T]`, and anti-ℂ-linear iff `A = 0`.
//!
//! The line-mapping and norm-preservation checks here are the two
//! hypotheses under which a norm-preserving map between two indicatrices
//! with at least three kernel lines must be ℂ-linear or anti-ℂ-linear.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::indicatrix::{IndicatrixModel, LINE_DEDUP_TOL};
use crate::linalg::{
    complex_structure, random_unit_vectors, rmat4_frobenius, rmat4_mul, CMat2, RMat4, Vec2,
};

/// Relative tolerance for the image of a circle to count as a circle.
pub const CIRCLE_TOL: f64 = 1e-12;
/// Tolerances used by [`norm_map_verdict`].
pub const VERDICT_TOL: f64 = 1e-8;
pub const VERDICT_SAMPLES: usize = 2000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RLinearError {
    #[error("line lists differ in length: {src} source vs {dst} target")]
    LengthMismatch { src: usize, dst: usize },
    #[error("zero spanning vector at index {0}")]
    ZeroLine(usize),
    #[error("{side} indicatrix has {count} kernel lines; at least 3 are required")]
    Hypothesis { side: &'static str, count: usize },
    #[error("need at least one sample")]
    NoSamples,
}

/// `A(z) = a z + b z̄` on ℂ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RLinearMap1 {
    pub a: Complex64,
    pub b: Complex64,
}

/// Radii of the image of the unit circle under an [`RLinearMap1`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleImage {
    pub min: f64,
    pub max: f64,
    pub is_circle: bool,
}

impl RLinearMap1 {
    pub fn new(a: Complex64, b: Complex64) -> Self {
        RLinearMap1 { a, b }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.a * z + self.b * z.conj()
    }

    /// `|a e^{iθ} + b e^{−iθ}|² = |a|² + |b|² + 2 Re(a b̄ e^{2iθ})`, so the
    /// image radii range over `[||a| − |b||, |a| + |b|]` and the image is a
    /// circle iff `a = 0` or `b = 0`.
    pub fn circle_image_radii(&self) -> CircleImage {
        let (ma, mb) = (self.a.norm(), self.b.norm());
        let min = (ma - mb).abs();
        let max = ma + mb;
        CircleImage {
            min,
            max,
            is_circle: max - min <= CIRCLE_TOL * max.max(1.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapClass {
    CLinear,
    AntiCLinear,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub class: MapClass,
    /// `‖A‖_F`, the ℂ-linear block.
    pub a_norm: f64,
    /// `‖B‖_F`, the conjugate-linear block.
    pub b_norm: f64,
    /// `‖MJ − JM‖ / ‖MJ + JM‖` on the real matrix (diagnostic only).
    pub commutator_ratio: f64,
}

/// `T(X) = A X + B X̄` on ℂ².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RLinearMap2 {
    #[serde(rename = "A")]
    pub a: CMat2,
    #[serde(rename = "B")]
    pub b: CMat2,
}

impl RLinearMap2 {
    pub fn new(a: CMat2, b: CMat2) -> Self {
        RLinearMap2 { a, b }
    }

    pub fn identity() -> Self {
        RLinearMap2::new(CMat2::identity(), CMat2::zero())
    }

    /// `X ↦ X̄`.
    pub fn conjugation() -> Self {
        RLinearMap2::new(CMat2::zero(), CMat2::identity())
    }

    pub fn apply(&self, x: &Vec2) -> Vec2 {
        self.a.mul_vec(x) + self.b.mul_vec(&x.conj())
    }

    /// Recover `(A, B)` from the values of `T` on `e_k` and `i e_k`:
    /// `A e_k = (T e_k − i T(i e_k)) / 2`, `B e_k = (T e_k + i T(i e_k)) / 2`.
    pub fn from_fn(t: impl Fn(&Vec2) -> Vec2) -> Self {
        let i = Complex64::new(0.0, 1.0);
        let cols: [(Vec2, Vec2); 2] = std::array::from_fn(|k| {
            let e = if k == 0 { Vec2::e1() } else { Vec2::e2() };
            let te = t(&e);
            let tie = t(&(e * i));
            ((te - tie * i) * 0.5, (te + tie * i) * 0.5)
        });
        RLinearMap2::new(
            CMat2::from_columns(cols[0].0, cols[1].0),
            CMat2::from_columns(cols[0].1, cols[1].1),
        )
    }

    /// Real 4×4 matrix in the basis `(Re X₁, Re X₂, Im X₁, Im X₂)`.
    pub fn to_real(&self) -> RMat4 {
        let i = Complex64::new(0.0, 1.0);
        let mut m = [[0.0; 4]; 4];
        let basis = [Vec2::e1(), Vec2::e2(), Vec2::e1() * i, Vec2::e2() * i];
        for (col, e) in basis.iter().enumerate() {
            let image = self.apply(e).to_real();
            for (row, v) in image.iter().enumerate() {
                m[row][col] = *v;
            }
        }
        m
    }

    pub fn from_real(m: &RMat4) -> Self {
        RLinearMap2::from_fn(|x| {
            let r = x.to_real();
            Vec2::from_real(std::array::from_fn(|i| (0..4).map(|k| m[i][k] * r[k]).sum()))
        })
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RLinearMap2) -> RLinearMap2 {
        RLinearMap2::new(
            self.a.mul_mat(&inner.a) + self.b.mul_mat(&inner.b.conj()),
            self.a.mul_mat(&inner.b) + self.b.mul_mat(&inner.a.conj()),
        )
    }

    /// `‖MJ − JM‖_F` and `‖MJ + JM‖_F`.
    pub fn commutators(&self) -> (f64, f64) {
        let m = self.to_real();
        let j = complex_structure();
        let mj = rmat4_mul(&m, &j);
        let jm = rmat4_mul(&j, &m);
        let mut minus = [[0.0; 4]; 4];
        let mut plus = [[0.0; 4]; 4];
        for r in 0..4 {
            for c in 0..4 {
                minus[r][c] = mj[r][c] - jm[r][c];
                plus[r][c] = mj[r][c] + jm[r][c];
            }
        }
        (rmat4_frobenius(&minus), rmat4_frobenius(&plus))
    }

    /// ℂ-linear iff `‖B‖ ≤ tol (1 + ‖A‖)`, anti-ℂ-linear iff
    /// `‖A‖ ≤ tol (1 + ‖B‖)`, otherwise neither.
    pub fn classify(&self, tol: f64) -> Classification {
        let a_norm = self.a.frobenius();
        let b_norm = self.b.frobenius();
        let class = if b_norm <= tol * (1.0 + a_norm) {
            MapClass::CLinear
        } else if a_norm <= tol * (1.0 + b_norm) {
            MapClass::AntiCLinear
        } else {
            MapClass::Neither
        };
        let (minus, plus) = self.commutators();
        let commutator_ratio = if plus == 0.0 {
            if minus == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            minus / plus
        };
        Classification {
            class,
            a_norm,
            b_norm,
            commutator_ratio,
        }
    }
}

/// `u ∈ ℂ·w` up to the projective tolerance `|det(w, u)| ≤ tol |w||u|`.
fn in_complex_line(u: &Vec2, w: &Vec2, tol: f64) -> bool {
    let nu = u.norm();
    nu > 0.0 && w.det(u).norm() <= tol * nu * w.norm()
}

/// Outcome of [`maps_lines`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineMatch {
    /// `T(ℂ·src[j]) = ℂ·dst[perm[j]]`.
    Permutation(Vec<usize>),
    Failure { source_index: usize, detail: String },
}

impl LineMatch {
    pub fn permutation(&self) -> Option<&[usize]> {
        match self {
            LineMatch::Permutation(p) => Some(p),
            LineMatch::Failure { .. } => None,
        }
    }
}

/// Find σ with `T(v_j), T(i v_j) ∈ ℂ·w_{σ(j)}` for every source line.
pub fn maps_lines(
    t: &RLinearMap2,
    src: &[Vec2],
    dst: &[Vec2],
    tol: f64,
) -> Result<LineMatch, RLinearError> {
    if src.len() != dst.len() {
        return Err(RLinearError::LengthMismatch {
            src: src.len(),
            dst: dst.len(),
        });
    }
    for (k, v) in src.iter().chain(dst).enumerate() {
        if v.norm() == 0.0 {
            return Err(RLinearError::ZeroLine(k % src.len().max(1)));
        }
    }
    let i = Complex64::new(0.0, 1.0);
    let mut used = vec![false; dst.len()];
    let mut perm = Vec::with_capacity(src.len());
    for (j, v) in src.iter().enumerate() {
        let tv = t.apply(v);
        let tiv = t.apply(&(*v * i));
        let hit = (0..dst.len())
            .find(|&k| !used[k] && in_complex_line(&tv, &dst[k], tol) && in_complex_line(&tiv, &dst[k], tol));
        match hit {
            Some(k) => {
                used[k] = true;
                perm.push(k);
            }
            None => {
                let detail = if (0..dst.len()).any(|k| !used[k] && in_complex_line(&tv, &dst[k], tol)) {
                    "T(v) lies in a target line but T(iv) does not: the real plane is not sent to a complex line"
                } else {
                    "T(v) lies in no unused target line"
                };
                return Ok(LineMatch::Failure {
                    source_index: j,
                    detail: detail.to_string(),
                });
            }
        }
    }
    Ok(LineMatch::Permutation(perm))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormCheck {
    pub passed: bool,
    /// `max |μ₂(T X) − μ₁(X)| / μ₁(X)` over the samples.
    pub max_deviation: f64,
    pub samples: usize,
}

/// Sampled check of `μ_dst(T X) = μ_src(X)` on seeded unit vectors.
pub fn preserves_norm(
    t: &RLinearMap2,
    src: &IndicatrixModel,
    dst: &IndicatrixModel,
    n_samples: usize,
    tol: f64,
    seed: u64,
) -> Result<NormCheck, RLinearError> {
    if n_samples == 0 {
        return Err(RLinearError::NoSamples);
    }
    let max_deviation = random_unit_vectors(n_samples, seed)
        .iter()
        .map(|x| {
            let mu = src.minkowski(x);
            (dst.minkowski(&t.apply(x)) - mu).abs() / mu
        })
        .fold(0.0, f64::max);
    Ok(NormCheck {
        passed: max_deviation <= tol,
        max_deviation,
        samples: n_samples,
    })
}

/// Full diagnostic record for a norm-preserving-map test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormMapVerdict {
    pub classification: Classification,
    pub norm_check: NormCheck,
    pub line_match: LineMatch,
    pub hypotheses_hold: bool,
    /// Both hypotheses hold yet the map is neither ℂ- nor anti-ℂ-linear.
    pub contradiction: bool,
}

/// Check the hypotheses (norm preservation, kernel lines mapped to kernel
/// lines) and classify `t`. Requires at least three kernel lines on each side.
pub fn norm_map_verdict(
    t: &RLinearMap2,
    src: &IndicatrixModel,
    dst: &IndicatrixModel,
    seed: u64,
) -> Result<NormMapVerdict, RLinearError> {
    let src_lines = src.line_configuration(LINE_DEDUP_TOL);
    let dst_lines = dst.line_configuration(LINE_DEDUP_TOL);
    if src_lines.count() < 3 {
        return Err(RLinearError::Hypothesis {
            side: "source",
            count: src_lines.count(),
        });
    }
    if dst_lines.count() < 3 {
        return Err(RLinearError::Hypothesis {
            side: "target",
            count: dst_lines.count(),
        });
    }
    let norm_check = preserves_norm(t, src, dst, VERDICT_SAMPLES, VERDICT_TOL, seed)?;
    let line_match = match maps_lines(t, &src_lines.lines, &dst_lines.lines, VERDICT_TOL) {
        Ok(m) => m,
        Err(RLinearError::LengthMismatch { src, dst }) => LineMatch::Failure {
            source_index: src.min(dst),
            detail: format!("{src} source lines vs {dst} target lines"),
        },
        Err(e) => return Err(e),
    };
    let classification = t.classify(VERDICT_TOL);
    let hypotheses_hold = norm_check.passed && line_match.permutation().is_some();
    Ok(NormMapVerdict {
        classification,
        norm_check,
        line_match,
        hypotheses_hold,
        contradiction: hypotheses_hold && classification.class == MapClass::Neither,
    })
}
