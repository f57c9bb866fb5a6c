//! Rational expressions in `z1`, `z2` with complex constants.
//!
//! These define universal-set members and sampled maps. The grammar is
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | primary
//! primary := number | 'i' | 'z1' | 'z2' | 'conj' '(' expr ')' | name | '(' expr ')'
//! ```
//!
//! Numbers are decimal literals with an optional exponent. Complex constants
//! are written `re`, `im*i` or `re+im*i`, or bound by name through a
//! [`Constants`] table at parse time.

mod parser;

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::Vec2;

pub use parser::{parse, ParseError};

/// Denominator modulus below which evaluation reports a pole.
pub const POLE_TOL: f64 = 1e-15;

/// Named constants available to the parser.
pub type Constants = BTreeMap<String, Complex64>;

/// Identifiers with fixed meaning; constant tables may not rebind them.
pub const RESERVED_NAMES: [&str; 4] = ["i", "z1", "z2", "conj"];

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(Complex64),
    /// Coordinate `z1` (index 0) or `z2` (index 1).
    Var(usize),
    Conj(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("pole at ({}{:+}i, {}{:+}i): denominator modulus {modulus:e}", .point[0].re, .point[0].im, .point[1].re, .point[1].im)]
    Pole { point: Vec2, modulus: f64 },
}

/// A `conj` node whose argument depends on `z1` or `z2`.
#[derive(Debug, Clone, PartialEq)]
pub struct HolomorphyViolation {
    /// Pre-order index of the offending `conj` node.
    pub node_index: usize,
    pub subtree: String,
}

impl fmt::Display for HolomorphyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "node {}: {}", self.node_index, self.subtree)
    }
}

fn zero() -> Expr {
    Expr::Const(Complex64::new(0.0, 0.0))
}

fn one() -> Expr {
    Expr::Const(Complex64::new(1.0, 0.0))
}

impl Expr {
    pub fn z1() -> Expr {
        Expr::Var(0)
    }

    pub fn z2() -> Expr {
        Expr::Var(1)
    }

    pub fn constant(c: Complex64) -> Expr {
        Expr::Const(c)
    }

    fn is_zero(&self) -> bool {
        matches!(self, Expr::Const(c) if c.re == 0.0 && c.im == 0.0)
    }

    fn is_one(&self) -> bool {
        matches!(self, Expr::Const(c) if c.re == 1.0 && c.im == 0.0)
    }

    // Smart constructors used by differentiation; they only drop exact zeros
    // and ones so the derivative tree stays small.
    fn add(a: Expr, b: Expr) -> Expr {
        match (a.is_zero(), b.is_zero()) {
            (true, _) => b,
            (_, true) => a,
            _ => Expr::Add(Box::new(a), Box::new(b)),
        }
    }

    fn sub(a: Expr, b: Expr) -> Expr {
        match (a.is_zero(), b.is_zero()) {
            (_, true) => a,
            (true, _) => Expr::neg(b),
            _ => Expr::Sub(Box::new(a), Box::new(b)),
        }
    }

    fn neg(a: Expr) -> Expr {
        if a.is_zero() {
            a
        } else {
            Expr::Neg(Box::new(a))
        }
    }

    fn mul(a: Expr, b: Expr) -> Expr {
        if a.is_zero() || b.is_zero() {
            zero()
        } else if a.is_one() {
            b
        } else if b.is_one() {
            a
        } else {
            Expr::Mul(Box::new(a), Box::new(b))
        }
    }

    fn div(a: Expr, b: Expr) -> Expr {
        if a.is_zero() {
            zero()
        } else {
            Expr::Div(Box::new(a), Box::new(b))
        }
    }

    /// True if the subtree mentions `z1` or `z2`.
    pub fn has_var(&self) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var(_) => true,
            Expr::Conj(e) | Expr::Neg(e) => e.has_var(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.has_var() || b.has_var()
            }
        }
    }

    /// Check that every `conj` node wraps a constant-only subtree.
    pub fn validate_holomorphic(&self) -> Result<(), Vec<HolomorphyViolation>> {
        let mut violations = Vec::new();
        let mut counter = 0;
        self.collect_violations(&mut counter, &mut violations);
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    fn collect_violations(&self, counter: &mut usize, out: &mut Vec<HolomorphyViolation>) {
        let index = *counter;
        *counter += 1;
        match self {
            Expr::Const(_) | Expr::Var(_) => {}
            Expr::Conj(e) => {
                if e.has_var() {
                    out.push(HolomorphyViolation {
                        node_index: index,
                        subtree: self.to_string(),
                    });
                }
                e.collect_violations(counter, out);
            }
            Expr::Neg(e) => e.collect_violations(counter, out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_violations(counter, out);
                b.collect_violations(counter, out);
            }
        }
    }

    pub fn is_holomorphic(&self) -> bool {
        self.validate_holomorphic().is_ok()
    }

    /// Evaluate at `z`. `conj` of variable subtrees is evaluated literally,
    /// which is what sampled (possibly antiholomorphic) maps need.
    pub fn eval(&self, z: &Vec2) -> Result<Complex64, EvalError> {
        Ok(match self {
            Expr::Const(c) => *c,
            Expr::Var(j) => z[*j],
            Expr::Conj(e) => e.eval(z)?.conj(),
            Expr::Neg(e) => -e.eval(z)?,
            Expr::Add(a, b) => a.eval(z)? + b.eval(z)?,
            Expr::Sub(a, b) => a.eval(z)? - b.eval(z)?,
            Expr::Mul(a, b) => a.eval(z)? * b.eval(z)?,
            Expr::Div(a, b) => {
                let den = b.eval(z)?;
                let modulus = den.norm();
                if modulus < POLE_TOL || !modulus.is_finite() {
                    return Err(EvalError::Pole { point: *z, modulus });
                }
                a.eval(z)? / den
            }
        })
    }

    /// Formal partial derivative `∂/∂z_j` (`j` is 0 or 1).
    ///
    /// Only meaningful for holomorphic expressions: `conj` nodes are treated
    /// as constants and differentiate to zero.
    pub fn d_dz(&self, j: usize) -> Expr {
        debug_assert!(j < 2);
        match self {
            Expr::Const(_) | Expr::Conj(_) => zero(),
            Expr::Var(k) => {
                if *k == j {
                    one()
                } else {
                    zero()
                }
            }
            Expr::Neg(e) => Expr::neg(e.d_dz(j)),
            Expr::Add(a, b) => Expr::add(a.d_dz(j), b.d_dz(j)),
            Expr::Sub(a, b) => Expr::sub(a.d_dz(j), b.d_dz(j)),
            Expr::Mul(a, b) => Expr::add(
                Expr::mul(a.d_dz(j), (**b).clone()),
                Expr::mul((**a).clone(), b.d_dz(j)),
            ),
            Expr::Div(a, b) => {
                let da = a.d_dz(j);
                let db = b.d_dz(j);
                if db.is_zero() {
                    Expr::div(da, (**b).clone())
                } else {
                    Expr::div(
                        Expr::sub(
                            Expr::mul(da, (**b).clone()),
                            Expr::mul((**a).clone(), db),
                        ),
                        Expr::mul((**b).clone(), (**b).clone()),
                    )
                }
            }
        }
    }

    /// Fold every variable-free subtree into a single constant.
    pub fn normalize(&self) -> Expr {
        if !self.has_var() {
            if let Ok(c) = self.eval(&Vec2::ZERO) {
                return Expr::Const(c);
            }
        }
        match self {
            Expr::Const(_) | Expr::Var(_) => self.clone(),
            Expr::Conj(e) => Expr::Conj(Box::new(e.normalize())),
            Expr::Neg(e) => Expr::Neg(Box::new(e.normalize())),
            Expr::Add(a, b) => Expr::Add(Box::new(a.normalize()), Box::new(b.normalize())),
            Expr::Sub(a, b) => Expr::Sub(Box::new(a.normalize()), Box::new(b.normalize())),
            Expr::Mul(a, b) => Expr::Mul(Box::new(a.normalize()), Box::new(b.normalize())),
            Expr::Div(a, b) => Expr::Div(Box::new(a.normalize()), Box::new(b.normalize())),
        }
    }

    /// Fully parenthesized source text; parses back to an expression with the
    /// same [`normalize`](Expr::normalize)d form.
    pub fn pretty(&self) -> String {
        self.to_string()
    }
}

fn write_real(f: &mut fmt::Formatter<'_>, x: f64) -> fmt::Result {
    // `{:?}` is the shortest representation that round-trips through parse.
    write!(f, "{x:?}")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => {
                if c.im == 0.0 && c.re.is_sign_positive() {
                    write_real(f, c.re)
                } else if c.im == 0.0 {
                    write!(f, "(")?;
                    write_real(f, c.re)?;
                    write!(f, ")")
                } else {
                    write!(f, "(")?;
                    write_real(f, c.re)?;
                    write!(f, "{}", if c.im.is_sign_negative() { "-" } else { "+" })?;
                    write_real(f, c.im.abs())?;
                    write!(f, "*i)")
                }
            }
            Expr::Var(j) => write!(f, "z{}", j + 1),
            Expr::Conj(e) => write!(f, "conj({e})"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
        }
    }
}
