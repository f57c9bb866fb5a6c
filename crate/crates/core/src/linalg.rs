//! Small fixed-size complex linear algebra on ℂ².
//!
//! Everything in this crate lives in two complex dimensions, so points,
//! tangent vectors and covectors are all [`Vec2`], and complex 2×2 matrices
//! are [`CMat2`]. Both serialize as nested `[re, im]` arrays.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

/// A point, tangent vector or covector in ℂ².
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vec2(pub [Complex64; 2]);

impl Vec2 {
    pub const ZERO: Vec2 = Vec2([Complex64::new(0.0, 0.0); 2]);

    pub fn new(z1: Complex64, z2: Complex64) -> Self {
        Vec2([z1, z2])
    }

    /// Build from real parts only.
    pub fn real(x1: f64, x2: f64) -> Self {
        Vec2([Complex64::new(x1, 0.0), Complex64::new(x2, 0.0)])
    }

    /// Build from the four real coordinates `(re1, im1, re2, im2)`.
    pub fn from_parts(re1: f64, im1: f64, re2: f64, im2: f64) -> Self {
        Vec2([Complex64::new(re1, im1), Complex64::new(re2, im2)])
    }

    pub fn e1() -> Self {
        Vec2::real(1.0, 0.0)
    }

    pub fn e2() -> Self {
        Vec2::real(0.0, 1.0)
    }

    pub fn conj(&self) -> Self {
        Vec2([self.0[0].conj(), self.0[1].conj()])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0[0].norm_sqr() + self.0[1].norm_sqr()
    }

    /// Euclidean norm on ℂ² = ℝ⁴.
    pub fn norm(&self) -> f64 {
        self.0[0].norm().hypot(self.0[1].norm())
    }

    /// Largest coordinate modulus.
    pub fn max_modulus(&self) -> f64 {
        self.0[0].norm().max(self.0[1].norm())
    }

    /// Bilinear pairing `l₁x₁ + l₂x₂`, i.e. a covector applied to a vector.
    pub fn apply(&self, x: &Vec2) -> Complex64 {
        self.0[0] * x.0[0] + self.0[1] * x.0[1]
    }

    /// Hermitian inner product `⟨self, other⟩ = Σ self̄ⱼ otherⱼ`.
    pub fn inner(&self, other: &Vec2) -> Complex64 {
        self.0[0].conj() * other.0[0] + self.0[1].conj() * other.0[1]
    }

    /// `x₁y₂ − x₂y₁`; vanishes iff the two vectors are ℂ-proportional.
    pub fn det(&self, other: &Vec2) -> Complex64 {
        self.0[0] * other.0[1] - self.0[1] * other.0[0]
    }

    /// Real coordinates in the order `(Re X₁, Re X₂, Im X₁, Im X₂)`.
    pub fn to_real(&self) -> [f64; 4] {
        [self.0[0].re, self.0[1].re, self.0[0].im, self.0[1].im]
    }

    /// Inverse of [`Vec2::to_real`].
    pub fn from_real(r: [f64; 4]) -> Self {
        Vec2([Complex64::new(r[0], r[2]), Complex64::new(r[1], r[3])])
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Unit vector in direction `self`; `None` for the zero vector.
    pub fn normalized(&self) -> Option<Vec2> {
        let n = self.norm();
        (n > 0.0).then(|| *self * (1.0 / n))
    }
}

/// `(a+bi, c+di)`.
impl std::fmt::Display for Vec2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.0[0], self.0[1])
    }
}

impl Index<usize> for Vec2 {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vec2 {
    fn index_mut(&mut self, i: usize) -> &mut Complex64 {
        &mut self.0[i]
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1]])
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2([self.0[0] - rhs.0[0], self.0[1] - rhs.0[1]])
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2([-self.0[0], -self.0[1]])
    }
}

impl Mul<Complex64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: Complex64) -> Vec2 {
        Vec2([self.0[0] * s, self.0[1] * s])
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2([self.0[0] * s, self.0[1] * s])
    }
}

/// Complex 2×2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CMat2(pub [[Complex64; 2]; 2]);

impl CMat2 {
    pub fn zero() -> Self {
        CMat2::default()
    }

    pub fn identity() -> Self {
        CMat2::diag(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))
    }

    pub fn diag(d1: Complex64, d2: Complex64) -> Self {
        let z = Complex64::new(0.0, 0.0);
        CMat2([[d1, z], [z, d2]])
    }

    /// Build from two columns.
    pub fn from_columns(c0: Vec2, c1: Vec2) -> Self {
        CMat2([[c0[0], c1[0]], [c0[1], c1[1]]])
    }

    pub fn column(&self, j: usize) -> Vec2 {
        Vec2([self.0[0][j], self.0[1][j]])
    }

    pub fn mul_vec(&self, x: &Vec2) -> Vec2 {
        Vec2([
            self.0[0][0] * x[0] + self.0[0][1] * x[1],
            self.0[1][0] * x[0] + self.0[1][1] * x[1],
        ])
    }

    pub fn mul_mat(&self, rhs: &CMat2) -> CMat2 {
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j];
            }
        }
        CMat2(out)
    }

    /// Entrywise conjugate (not the adjoint).
    pub fn conj(&self) -> CMat2 {
        CMat2(self.0.map(|row| row.map(|c| c.conj())))
    }

    pub fn scale(&self, s: Complex64) -> CMat2 {
        CMat2(self.0.map(|row| row.map(|c| c * s)))
    }

    pub fn frobenius(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

impl Add for CMat2 {
    type Output = CMat2;
    fn add(self, rhs: CMat2) -> CMat2 {
        let mut out = self.0;
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry += rhs.0[i][j];
            }
        }
        CMat2(out)
    }
}

impl Sub for CMat2 {
    type Output = CMat2;
    fn sub(self, rhs: CMat2) -> CMat2 {
        self + rhs.scale(Complex64::new(-1.0, 0.0))
    }
}

/// Real 4×4 matrix, row-major.
pub type RMat4 = [[f64; 4]; 4];

pub fn rmat4_mul(a: &RMat4, b: &RMat4) -> RMat4 {
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn rmat4_frobenius(a: &RMat4) -> f64 {
    a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn rmat4_apply(a: &RMat4, x: &[f64; 4]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for (i, o) in out.iter_mut().enumerate() {
        *o = (0..4).map(|k| a[i][k] * x[k]).sum();
    }
    out
}

/// The complex structure `J = [[0, −I], [I, 0]]` in the basis
/// `(Re X₁, Re X₂, Im X₁, Im X₂)`.
pub fn complex_structure() -> RMat4 {
    [
        [0.0, 0.0, -1.0, 0.0],
        [0.0, 0.0, 0.0, -1.0],
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
    ]
}

/// `n` Euclidean-unit vectors of ℂ², uniform on the sphere S³, from a
/// seeded generator.
pub fn random_unit_vectors(n: usize, seed: u64) -> Vec<Vec2> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let r: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(&mut rng));
        if let Some(u) = Vec2::from_real(r).normalized() {
            out.push(u);
        }
    }
    out
}
