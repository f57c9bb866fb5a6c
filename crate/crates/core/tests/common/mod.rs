//! Shared generators for the integration tests.

#![allow(dead_code)]

use invariant_metrics::expr::Expr;
use invariant_metrics::rlinear::RLinearMap2;
use invariant_metrics::{CMat2, Complex64, DomainSpec, Vec2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex_in_disc(rng: &mut impl Rng, r: f64) -> Complex64 {
    Complex64::from_polar(r * rng.random::<f64>().sqrt(), rng.random_range(0.0..std::f64::consts::TAU))
}

pub fn gaussian_complex(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn gaussian_cmat(rng: &mut impl Rng) -> CMat2 {
    CMat2([
        [gaussian_complex(rng), gaussian_complex(rng)],
        [gaussian_complex(rng), gaussian_complex(rng)],
    ])
}

pub fn unit_vector(rng: &mut impl Rng) -> Vec2 {
    loop {
        if let Some(v) = Vec2([gaussian_complex(rng), gaussian_complex(rng)]).normalized() {
            return v;
        }
    }
}

/// `(a, b)` whose moduli form a triangle with 1, with at least `slack` to spare
/// in each strict inequality.
pub fn dab_params(rng: &mut impl Rng, slack: f64) -> (Complex64, Complex64) {
    loop {
        let ra: f64 = rng.random_range(0.05..0.95);
        let rb: f64 = rng.random_range(0.05..0.95);
        if ra + rb > 1.0 + slack && ra + 1.0 > rb + slack && rb + 1.0 > ra + slack {
            let a = Complex64::from_polar(ra, rng.random_range(0.0..std::f64::consts::TAU));
            let b = Complex64::from_polar(rb, rng.random_range(0.0..std::f64::consts::TAU));
            return (a, b);
        }
    }
}

pub fn dab(rng: &mut impl Rng) -> DomainSpec {
    let (a, b) = dab_params(rng, 0.05);
    DomainSpec::dab(a, b).unwrap()
}

/// Point with both coordinates in the disc of radius `r` and every
/// membership slack at most `-margin`.
pub fn interior_point(spec: &DomainSpec, rng: &mut impl Rng, r: f64, margin: f64) -> Vec2 {
    loop {
        let z = Vec2([complex_in_disc(rng, r), complex_in_disc(rng, r)]);
        if spec.max_slack(&z) <= -margin {
            return z;
        }
    }
}

/// Point within Euclidean distance `r` of the origin, inside `spec`.
pub fn point_near_origin(spec: &DomainSpec, rng: &mut impl Rng, r: f64) -> Vec2 {
    loop {
        let z = Vec2([complex_in_disc(rng, r), complex_in_disc(rng, r)]);
        if z.norm() < r && spec.max_slack(&z) < -1e-3 {
            return z;
        }
    }
}

/// Random holomorphic expression, pole-free on the closed unit bidisc.
/// Division only happens by `c + z_j / 2` with `|c| = 3`.
pub fn random_expr(rng: &mut impl Rng, depth: usize) -> Expr {
    use Expr::*;
    let leaf = |rng: &mut dyn rand::RngCore| -> Expr {
        match rng.random_range(0..4) {
            0 => Var(0),
            1 => Var(1),
            2 => Const(Complex64::new(
                rng.random_range(-2.0..2.0f64),
                rng.random_range(-2.0..2.0f64),
            )),
            _ => Conj(Box::new(Const(Complex64::new(
                rng.random_range(-1.0..1.0f64),
                rng.random_range(-1.0..1.0f64),
            )))),
        }
    };
    if depth == 0 {
        return leaf(rng);
    }
    let sub = |rng: &mut ChaCha8Rng| Box::new(random_expr(rng, depth - 1));
    let mut local = ChaCha8Rng::seed_from_u64(rng.random());
    match local.random_range(0..6) {
        0 => leaf(&mut local),
        1 => Neg(sub(&mut local)),
        2 => Add(sub(&mut local), sub(&mut local)),
        3 => Sub(sub(&mut local), sub(&mut local)),
        4 => Mul(sub(&mut local), sub(&mut local)),
        _ => {
            let c = Complex64::from_polar(3.0, local.random_range(0.0..std::f64::consts::TAU));
            let j = local.random_range(0..2);
            Div(
                sub(&mut local),
                Box::new(Add(
                    Box::new(Const(c)),
                    Box::new(Mul(Box::new(Const(Complex64::new(0.5, 0.0))), Box::new(Var(j)))),
                )),
            )
        }
    }
}

pub fn random_clinear(rng: &mut impl Rng) -> RLinearMap2 {
    RLinearMap2::new(gaussian_cmat(rng), CMat2::zero())
}

pub fn random_anti(rng: &mut impl Rng) -> RLinearMap2 {
    RLinearMap2::new(CMat2::zero(), gaussian_cmat(rng))
}

/// Both blocks have Frobenius norm at least 0.5.
pub fn random_mixed(rng: &mut impl Rng) -> RLinearMap2 {
    loop {
        let (a, b) = (gaussian_cmat(rng), gaussian_cmat(rng));
        if a.frobenius() >= 0.5 && b.frobenius() >= 0.5 {
            return RLinearMap2::new(a, b);
        }
    }
}

/// Point at which every universal-set member has modulus at most `bound`.
/// Keeps first-order expansions of the distance accurate at a fixed step.
pub fn point_with_members_below(spec: &DomainSpec, rng: &mut impl Rng, bound: f64) -> Vec2 {
    loop {
        let z = Vec2([complex_in_disc(rng, bound), complex_in_disc(rng, bound)]);
        if spec.contains(&z)
            && spec
                .member_values(&z)
                .is_ok_and(|v| v.iter().all(|m| m.value().norm() <= bound))
        {
            return z;
        }
    }
}
