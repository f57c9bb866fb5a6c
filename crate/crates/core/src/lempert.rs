//! Upper bounds for the Lempert function and the Kobayashi metric from
//! polynomial analytic discs.
//!
//! A competitor is a polynomial disc `f(λ) = Σ_{j≤d} c_j λ^j` with
//! `f(0) = z`. For the Lempert function the second point is reached at
//! `f(t) = w` with `t ∈ (0, 1)` and the bound is `artanh t`; for the metric
//! `f'(0) = X / α` and the bound is `α`. In both cases shrinking the disc
//! (`λ ↦ f(sλ)`, `s < 1`) keeps it feasible, so the feasible parameters form
//! an interval `[s*, ∞)` and the search is a bisection on `s` with an inner
//! feasibility problem over the free coefficients `c_2 … c_d`.
//!
//! The Carathéodory quantities are lower bounds, so `gap = upper − c` is
//! nonnegative for every certified disc and a small gap is numerical
//! evidence of `c = l` (resp. `γ = κ`).

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::domain::{DomainError, DomainSpec};
use crate::linalg::Vec2;
use crate::optim::{nelder_mead, NelderMeadOptions};

/// Boundary samples used while optimizing.
pub const OPT_SAMPLES: usize = 64;
/// Boundary samples used to certify a witness.
pub const CERTIFY_SAMPLES: usize = 256;
/// Required depth of every constraint slack.
pub const MARGIN: f64 = 1e-7;
pub const N_STARTS: usize = 8;
/// Bisection passes over the bracket.
const MAX_ROUNDS: usize = 4;
/// Lower-bound violations larger than this indicate a bug.
pub const LOWER_BOUND_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LempertError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("the two points coincide")]
    SamePoint,
    #[error("tangent vector is zero")]
    ZeroVector,
    #[error("invalid options: {0}")]
    Options(String),
}

/// Polynomial map 𝔻 → ℂ², coefficients `c_0 … c_d` with `c_0 = f(0)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyticDisc {
    coeffs: Vec<Vec2>,
}

impl AnalyticDisc {
    /// `coeffs` must be nonempty; `coeffs[0]` is the anchor `f(0)`.
    pub fn new(coeffs: Vec<Vec2>) -> Self {
        assert!(!coeffs.is_empty(), "a disc needs at least its anchor");
        AnalyticDisc { coeffs }
    }

    pub fn constant(z: Vec2) -> Self {
        AnalyticDisc { coeffs: vec![z] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[Vec2] {
        &self.coeffs
    }

    pub fn anchor(&self) -> Vec2 {
        self.coeffs[0]
    }

    /// `f'(0) = c_1`.
    pub fn derivative_at_zero(&self) -> Vec2 {
        self.coeffs.get(1).copied().unwrap_or(Vec2::ZERO)
    }

    /// Horner evaluation.
    pub fn eval(&self, lambda: Complex64) -> Vec2 {
        self.coeffs
            .iter()
            .rev()
            .fold(Vec2::ZERO, |acc, c| acc * lambda + *c)
    }

    /// Same disc with zero coefficients appended up to `degree`.
    pub fn padded(&self, degree: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(coeffs.len().max(degree + 1), Vec2::ZERO);
        AnalyticDisc { coeffs }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Feasibility {
    pub feasible: bool,
    /// Largest constraint slack over all samples (negative inside).
    pub worst_slack: f64,
}

/// Sample points `λ` used for certification: the `n` roots of unity, plus
/// the centre and three interior circles with `n / 4` points each.
fn certification_samples(n: usize) -> Vec<Complex64> {
    let mut out = roots_of_unity(n);
    out.push(Complex64::new(0.0, 0.0));
    let ring = (n / 4).max(4);
    for r in [0.25, 0.5, 0.75] {
        // Half-step phase offset so the rings do not line up with the boundary samples.
        let twist = Complex64::from_polar(r, std::f64::consts::PI / ring as f64);
        out.extend(roots_of_unity(ring).into_iter().map(|u| u * twist));
    }
    out
}

fn roots_of_unity(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|m| Complex64::from_polar(1.0, std::f64::consts::TAU * m as f64 / n as f64))
        .collect()
}

/// Check every membership constraint of `spec` along the disc at the
/// `n_boundary`-th roots of unity (and a few interior circles), requiring
/// slack `≤ −margin`. Slacks are `|z_j|² − 1` for coordinate constraints and
/// `|N|² − |Dn|²` for the `D_{a,b}` constraint.
pub fn disc_feasible(
    disc: &AnalyticDisc,
    spec: &DomainSpec,
    n_boundary: usize,
    margin: f64,
) -> Result<Feasibility, LempertError> {
    if n_boundary < 8 {
        return Err(LempertError::Options(format!(
            "need at least 8 boundary samples, got {n_boundary}"
        )));
    }
    let worst_slack = certification_samples(n_boundary)
        .into_iter()
        .map(|l| spec.max_slack(&disc.eval(l)))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(Feasibility {
        feasible: worst_slack <= -margin,
        worst_slack,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LempertOptions {
    pub degree: usize,
    /// Total number of penalty evaluations (one evaluation = every
    /// constraint at every optimization sample).
    pub budget: usize,
    pub seed: u64,
    pub n_boundary: usize,
    pub n_certify: usize,
    pub margin: f64,
    pub n_starts: usize,
    /// Bisection stops once the bracket on the reported value is this narrow.
    pub value_tol: f64,
}

impl Default for LempertOptions {
    fn default() -> Self {
        LempertOptions {
            degree: 1,
            budget: 20_000,
            seed: 0,
            n_boundary: OPT_SAMPLES,
            n_certify: CERTIFY_SAMPLES,
            margin: MARGIN,
            n_starts: N_STARTS,
            value_tol: 1e-9,
        }
    }
}

impl LempertOptions {
    fn validate(&self) -> Result<(), LempertError> {
        if self.degree == 0 {
            return Err(LempertError::Options("degree must be at least 1".into()));
        }
        if self.n_boundary < 8 || self.n_certify < 8 {
            return Err(LempertError::Options("need at least 8 samples".into()));
        }
        if !(self.margin >= 0.0) || !(self.value_tol > 0.0) {
            return Err(LempertError::Options(
                "margin must be nonnegative and value_tol positive".into(),
            ));
        }
        if self.n_starts == 0 {
            return Err(LempertError::Options("need at least one start".into()));
        }
        Ok(())
    }
}

fn serialize_extended<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_none()
    }
}

/// Result of an upper-bound search. `value` is `+∞` when no feasible disc
/// was found within the budget; JSON renders it as `null`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscBound {
    #[serde(serialize_with = "serialize_extended")]
    pub value: f64,
    /// The disc parameter: `t` for the Lempert function, `α` for the metric.
    #[serde(serialize_with = "serialize_extended")]
    pub parameter: f64,
    pub witness: Option<AnalyticDisc>,
    pub degree: usize,
    pub evaluations: usize,
    /// Worst slack of the witness at the certification density.
    #[serde(serialize_with = "serialize_extended")]
    pub worst_slack: f64,
    pub diagnostics: Vec<String>,
}

impl DiscBound {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }
}

/// The two scaled disc families share one search.
trait DiscFamily {
    /// Disc for parameter `s` and free coefficients `c_2 … c_d`.
    fn disc(&self, s: f64, free: &[Vec2]) -> AnalyticDisc;
    /// Value reported for parameter `s`.
    fn value(&self, s: f64) -> f64;
    /// Parameters to try, in order, when looking for a first feasible one.
    fn upper_candidates(&self, lower: f64) -> Vec<f64>;
}

struct TwoPointFamily {
    z: Vec2,
    w: Vec2,
}

impl DiscFamily for TwoPointFamily {
    /// `c_1 = (w − z − Σ_{j≥2} c_j t^j) / t` so that `f(t) = w`.
    fn disc(&self, t: f64, free: &[Vec2]) -> AnalyticDisc {
        let mut rest = self.w - self.z;
        let mut tj = t;
        for c in free {
            tj *= t;
            rest = rest - *c * tj;
        }
        let mut coeffs = Vec::with_capacity(free.len() + 2);
        coeffs.push(self.z);
        coeffs.push(rest * (1.0 / t));
        coeffs.extend_from_slice(free);
        AnalyticDisc::new(coeffs)
    }

    fn value(&self, t: f64) -> f64 {
        t.atanh()
    }

    fn upper_candidates(&self, lower: f64) -> Vec<f64> {
        (1..=12)
            .map(|k| 1.0 - (1.0 - lower) * 0.5f64.powi(k))
            .collect()
    }
}

struct TangentFamily {
    p: Vec2,
    x: Vec2,
}

impl DiscFamily for TangentFamily {
    /// `c_1 = X / α`.
    fn disc(&self, alpha: f64, free: &[Vec2]) -> AnalyticDisc {
        let mut coeffs = Vec::with_capacity(free.len() + 2);
        coeffs.push(self.p);
        coeffs.push(self.x * (1.0 / alpha));
        coeffs.extend_from_slice(free);
        AnalyticDisc::new(coeffs)
    }

    fn value(&self, alpha: f64) -> f64 {
        alpha
    }

    fn upper_candidates(&self, lower: f64) -> Vec<f64> {
        (1..=12).map(|k| lower * 2f64.powi(k)).collect()
    }
}

/// Precomputed powers `λ_m^j` at the optimization samples.
struct SampleTable {
    powers: Vec<Vec<Complex64>>,
}

impl SampleTable {
    fn new(n: usize, degree: usize) -> Self {
        let powers = roots_of_unity(n)
            .into_iter()
            .map(|l| {
                let mut row = Vec::with_capacity(degree + 1);
                let mut acc = Complex64::new(1.0, 0.0);
                for _ in 0..=degree {
                    row.push(acc);
                    acc *= l;
                }
                row
            })
            .collect();
        SampleTable { powers }
    }

    /// `Σ_m Σ_constraints max(0, slack + margin)²`.
    fn penalty(&self, disc: &AnalyticDisc, spec: &DomainSpec, margin: f64) -> f64 {
        let mut total = 0.0;
        for row in &self.powers {
            let mut point = Vec2::ZERO;
            for (c, p) in disc.coeffs.iter().zip(row) {
                point = point + *c * *p;
            }
            spec.for_each_slack(&point, |s| {
                let excess = s + margin;
                if excess > 0.0 {
                    total += excess * excess;
                }
            });
        }
        total
    }
}

fn pack(free: &[Vec2]) -> Vec<f64> {
    free.iter()
        .flat_map(|c| [c[0].re, c[0].im, c[1].re, c[1].im])
        .collect()
}

fn unpack(x: &[f64]) -> Vec<Vec2> {
    x.chunks_exact(4)
        .map(|r| Vec2::from_parts(r[0], r[1], r[2], r[3]))
        .collect()
}

/// Coefficients `c_j (s_from / s_to)^j`, i.e. the disc `λ ↦ f(λ s_from/s_to)`
/// re-expressed at the new parameter. Free coefficients start at `j = 2`.
fn rescale(free: &[Vec2], ratio: f64) -> Vec<Vec2> {
    let mut out = Vec::with_capacity(free.len());
    let mut r = ratio;
    for c in free {
        r *= ratio;
        out.push(*c * r);
    }
    out
}

struct Search<'a, F: DiscFamily> {
    family: F,
    spec: &'a DomainSpec,
    opts: &'a LempertOptions,
    table: SampleTable,
    rng: ChaCha8Rng,
    evaluations: usize,
    n_free: usize,
    /// Typical coefficient size, used for start perturbations.
    scale: f64,
}

impl<F: DiscFamily> Search<'_, F> {
    fn remaining(&self) -> usize {
        self.opts.budget.saturating_sub(self.evaluations)
    }

    fn certify(&mut self, disc: &AnalyticDisc) -> Feasibility {
        self.evaluations += (self.opts.n_certify / self.opts.n_boundary).max(1);
        disc_feasible(disc, self.spec, self.opts.n_certify, self.opts.margin)
            .expect("sample counts validated")
    }

    /// Try to find certified free coefficients at parameter `s`, starting
    /// from `warm`. Spends at most `allowance` evaluations.
    fn feasible_at(&mut self, s: f64, warm: &[Vec2], allowance: usize) -> Option<Vec<Vec2>> {
        if self.remaining() == 0 {
            return None;
        }
        let stop_at = self.evaluations + allowance.min(self.remaining());
        let disc = self.family.disc(s, warm);
        self.evaluations += 1;
        if self.table.penalty(&disc, self.spec, self.opts.margin) == 0.0
            && self.certify(&disc).feasible
        {
            return Some(warm.to_vec());
        }
        if self.n_free == 0 {
            return None;
        }
        let normal = Normal::new(0.0, 1.0).expect("unit normal");
        let mut best = (pack(warm), f64::INFINITY);
        for start in 0..self.opts.n_starts {
            let left = stop_at.saturating_sub(self.evaluations);
            if left < 2 {
                return None;
            }
            // The warm start is usually close; it gets half of what is left.
            let per_start = if start == 0 && self.opts.n_starts > 1 {
                left / 2
            } else {
                left / (self.opts.n_starts - start)
            };
            // Later starts restart from the best point so far, alternating
            // a fresh simplex with a random kick of shrinking size.
            let mut x0 = best.0.clone();
            if start % 2 == 0 && start > 0 {
                let spread = 0.1 * self.scale * 0.5f64.powi(start as i32 / 2 - 1);
                for v in &mut x0 {
                    *v += spread * normal.sample(&mut self.rng);
                }
            }
            let (family, spec, table, margin) = (&self.family, self.spec, &self.table, self.opts.margin);
            let m = nelder_mead(
                |x| table.penalty(&family.disc(s, &unpack(x)), spec, margin),
                &x0,
                &NelderMeadOptions {
                    initial_step: 0.1 * self.scale,
                    max_evaluations: per_start.max(2),
                    target: 0.0,
                    f_tol: 0.0,
                    x_tol: 1e-12,
                },
            );
            self.evaluations += m.evaluations;
            if m.value < best.1 {
                best = (m.x.clone(), m.value);
            }
            if m.value == 0.0 {
                let free = unpack(&m.x);
                let disc = self.family.disc(s, &free);
                if self.certify(&disc).feasible {
                    return Some(free);
                }
            }
        }
        None
    }

    /// Bisection on the parameter. `lower` is known infeasible; `warm` is an
    /// optional certified `(s, free)` pair to start from.
    fn run(mut self, lower: f64, warm: Option<(f64, Vec<Vec2>)>) -> DiscBound {
        let mut diagnostics = Vec::new();
        let mut lo = lower;
        let mut best: Option<(f64, Vec<Vec2>)> = None;

        if let Some((s, free)) = warm {
            let disc = self.family.disc(s, &free);
            if self.certify(&disc).feasible {
                best = Some((s, free));
            } else {
                diagnostics.push("warm start failed certification; ignored".into());
            }
        }

        if best.is_none() {
            let zero = vec![Vec2::ZERO; self.n_free];
            let candidates = self.family.upper_candidates(lower);
            let allowance = self.remaining() / (2 * candidates.len()).max(1);
            for s in candidates {
                if let Some(free) = self.feasible_at(s, &zero, allowance) {
                    best = Some((s, free));
                    break;
                }
                lo = s;
            }
        }

        let Some((mut hi, mut free)) = best else {
            diagnostics.push(format!(
                "no feasible disc found within {} evaluations",
                self.evaluations
            ));
            return DiscBound {
                value: f64::INFINITY,
                parameter: f64::INFINITY,
                witness: None,
                degree: self.opts.degree,
                evaluations: self.evaluations,
                worst_slack: f64::INFINITY,
                diagnostics,
            };
        };

        // A failed step only means its allowance ran out, so once the bracket
        // closes the leftover budget reopens it from the certified lower bound.
        for _ in 0..MAX_ROUNDS {
            let mut steps_left = 48usize;
            while self.family.value(hi) - self.family.value(lo) > self.opts.value_tol
                && self.remaining() > 0
                && steps_left > 0
            {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let needed = ((self.family.value(hi) - self.family.value(lo))
                    / self.opts.value_tol)
                    .log2()
                    .ceil()
                    .clamp(1.0, steps_left as f64) as usize;
                let allowance = (self.remaining() / needed).max(1);
                let warm = rescale(&free, hi / mid);
                match self.feasible_at(mid, &warm, allowance) {
                    Some(f) => {
                        hi = mid;
                        free = f;
                    }
                    None => lo = mid,
                }
                steps_left -= 1;
            }
            if self.remaining() < self.opts.budget / 20
                || self.family.value(hi) - self.family.value(lower) <= self.opts.value_tol
            {
                break;
            }
            lo = lower;
        }

        let witness = self.family.disc(hi, &free);
        let cert = self.certify(&witness);
        if !cert.feasible {
            diagnostics.push("final witness failed certification".into());
        }
        DiscBound {
            value: self.family.value(hi),
            parameter: hi,
            witness: Some(witness),
            degree: self.opts.degree,
            evaluations: self.evaluations,
            worst_slack: cert.worst_slack,
            diagnostics,
        }
    }
}

fn coefficient_scale(spec: &DomainSpec, anchor: &Vec2) -> f64 {
    // Distance-to-boundary proxy: the coordinate slack at the anchor.
    (1.0 - anchor.max_modulus()).clamp(0.05, 1.0) * (-spec.max_slack(anchor)).clamp(0.05, 1.0).sqrt()
}

/// Upper bound for the Lempert function `l(z, w)`, optionally warm-started
/// from a lower-degree result for the same pair.
pub fn lempert_upper_from(
    spec: &DomainSpec,
    z: &Vec2,
    w: &Vec2,
    opts: &LempertOptions,
    warm: Option<&DiscBound>,
) -> Result<DiscBound, LempertError> {
    opts.validate()?;
    let c = spec.caratheodory_distance(z, w)?;
    if z == w {
        return Err(LempertError::SamePoint);
    }
    let family = TwoPointFamily { z: *z, w: *w };
    let warm = warm
        .and_then(|b| b.witness.as_ref().map(|d| (b.parameter, d)))
        .filter(|(_, d)| d.degree() <= opts.degree && d.anchor() == *z)
        .map(|(t, d)| (t, d.padded(opts.degree).coeffs[2..].to_vec()));
    let search = Search {
        n_free: opts.degree - 1,
        scale: coefficient_scale(spec, z),
        table: SampleTable::new(opts.n_boundary, opts.degree),
        rng: ChaCha8Rng::seed_from_u64(opts.seed),
        evaluations: 0,
        family,
        spec,
        opts,
    };
    Ok(search.run(c.tanh(), warm))
}

/// Upper bound for the Lempert function `l(z, w)`.
pub fn lempert_upper(
    spec: &DomainSpec,
    z: &Vec2,
    w: &Vec2,
    opts: &LempertOptions,
) -> Result<DiscBound, LempertError> {
    lempert_upper_from(spec, z, w, opts, None)
}

/// Upper bound for the Kobayashi metric `κ(p; X)`, optionally warm-started
/// from a lower-degree result for the same `(p, X)`.
pub fn kobayashi_metric_upper_from(
    spec: &DomainSpec,
    p: &Vec2,
    x: &Vec2,
    opts: &LempertOptions,
    warm: Option<&DiscBound>,
) -> Result<DiscBound, LempertError> {
    opts.validate()?;
    if x.norm() == 0.0 {
        return Err(LempertError::ZeroVector);
    }
    let gamma = spec.caratheodory_metric(p, x)?;
    let warm = warm
        .and_then(|b| b.witness.as_ref().map(|d| (b.parameter, d)))
        .filter(|(_, d)| d.degree() <= opts.degree && d.anchor() == *p)
        .map(|(alpha, d)| (alpha, d.padded(opts.degree).coeffs[2..].to_vec()));
    let search = Search {
        n_free: opts.degree - 1,
        scale: coefficient_scale(spec, p),
        table: SampleTable::new(opts.n_boundary, opts.degree),
        rng: ChaCha8Rng::seed_from_u64(opts.seed),
        evaluations: 0,
        family: TangentFamily { p: *p, x: *x },
        spec,
        opts,
    };
    Ok(search.run(gamma, warm))
}

/// Upper bound for the Kobayashi metric `κ(p; X)`.
pub fn kobayashi_metric_upper(
    spec: &DomainSpec,
    p: &Vec2,
    x: &Vec2,
    opts: &LempertOptions,
) -> Result<DiscBound, LempertError> {
    kobayashi_metric_upper_from(spec, p, x, opts, None)
}

/// Lower bound against the best disc bound over degrees `1 ..= degree`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapReport {
    /// Carathéodory distance or metric.
    pub lower: f64,
    #[serde(serialize_with = "serialize_extended")]
    pub upper: f64,
    #[serde(serialize_with = "serialize_extended")]
    pub gap: f64,
    pub degree: usize,
    pub budget: usize,
    pub budget_used: usize,
    /// `t` for the Lempert function, `α` for the metric.
    #[serde(serialize_with = "serialize_extended")]
    pub parameter: f64,
    pub witness: Option<Vec<Vec2>>,
    #[serde(serialize_with = "serialize_extended")]
    pub worst_boundary_slack: f64,
    /// `gap ≥ −1e−9`; false signals a bug.
    pub lower_bound_ok: bool,
    pub diagnostics: Vec<String>,
}

/// Runs degrees `1 ..= opts.degree` in turn, each warm-started from the best
/// witness so far, so the bound never increases with degree.
fn degree_ladder(
    lower: f64,
    opts: &LempertOptions,
    mut solve: impl FnMut(&LempertOptions, Option<&DiscBound>) -> Result<DiscBound, LempertError>,
) -> Result<GapReport, LempertError> {
    opts.validate()?;
    let mut used = 0;
    let mut best: Option<DiscBound> = None;
    let mut diagnostics = Vec::new();
    for d in 1..=opts.degree {
        let left = opts.budget.saturating_sub(used);
        let step_opts = LempertOptions {
            degree: d,
            budget: left / (opts.degree - d + 1),
            seed: opts.seed.wrapping_add(d as u64),
            ..opts.clone()
        };
        let bound = solve(&step_opts, best.as_ref())?;
        used += bound.evaluations;
        diagnostics.extend(bound.diagnostics.iter().map(|m| format!("degree {d}: {m}")));
        if best.as_ref().is_none_or(|b| bound.value <= b.value) {
            best = Some(bound);
        }
    }
    let best = best.expect("degree >= 1");
    let gap = best.value - lower;
    Ok(GapReport {
        lower,
        upper: best.value,
        gap,
        degree: best.degree,
        budget: opts.budget,
        budget_used: used,
        parameter: best.parameter,
        witness: best.witness.as_ref().map(|d| d.coeffs.clone()),
        worst_boundary_slack: best.worst_slack,
        lower_bound_ok: !(gap < -LOWER_BOUND_SLACK),
        diagnostics,
    })
}

/// `l_upper − c` for the pair `(z, w)`.
pub fn lempert_gap(
    spec: &DomainSpec,
    z: &Vec2,
    w: &Vec2,
    opts: &LempertOptions,
) -> Result<GapReport, LempertError> {
    let c = spec.caratheodory_distance(z, w)?;
    if z == w {
        return Err(LempertError::SamePoint);
    }
    degree_ladder(c, opts, |o, warm| lempert_upper_from(spec, z, w, o, warm))
}

/// `κ_upper − γ` at `(p, X)`.
pub fn metric_gap(
    spec: &DomainSpec,
    p: &Vec2,
    x: &Vec2,
    opts: &LempertOptions,
) -> Result<GapReport, LempertError> {
    if x.norm() == 0.0 {
        return Err(LempertError::ZeroVector);
    }
    let gamma = spec.caratheodory_metric(p, x)?;
    degree_ladder(gamma, opts, |o, warm| {
        kobayashi_metric_upper_from(spec, p, x, o, warm)
    })
}
