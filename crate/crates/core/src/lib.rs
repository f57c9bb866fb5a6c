//! Invariant metrics on two-dimensional domains with a finite Carathéodory
//! universal set.
//!
//! The crate computes Carathéodory distances and metrics, builds Kobayashi
//! indicatrices and their faces, classifies ℝ-linear maps of ℂ² as
//! ℂ-linear / anti-ℂ-linear / neither, runs a discretized holomorphy
//! classification for Kobayashi isometries, and bounds the Lempert function
//! and Kobayashi metric from above with polynomial analytic discs.

pub mod disc;
pub mod domain;
pub mod expr;
pub mod indicatrix;
pub mod lempert;
pub mod linalg;
pub mod optim;
pub mod rigidity;
pub mod rlinear;

pub use disc::{mobius, poincare_distance, poincare_metric, DiscError, UnitDiscPoint};
pub use domain::{DomainDocument, DomainError, DomainKind, DomainSpec, UniversalSet};
pub use expr::{parse, Constants, Expr};
pub use linalg::{CMat2, Vec2};
pub use num_complex::Complex64;
