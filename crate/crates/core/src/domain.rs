//! Domains in ℂ² described by a finite Carathéodory universal set.
//!
//! For such a domain the Carathéodory distance and metric are a max over
//! finitely many holomorphic functions into the disc:
//!
//! ```text
//! c(z, w)  = max_i ρ(F_i(z), F_i(w))
//! γ(p; X)  = max_i |F_i'(p) X| / (1 − |F_i(p)|²)
//! ```
//!
//! Three families are supported: the bidisc with `{z₁, z₂}`, the domains
//! `D_{a,b} = {z ∈ 𝔻² : |a z₁ + b z₂ − z₁z₂| < |b̄ z₁ + ā z₂ − 1|}` with
//! `{z₁, z₂, F₃}`, and user-supplied expression lists.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::disc::{poincare_distance, UnitDiscPoint};
use crate::expr::{self, Constants, EvalError, Expr, ParseError, RESERVED_NAMES};
use crate::linalg::Vec2;

/// Source of the third universal-set member of `D_{a,b}`. The denominator is
/// the one appearing in the membership inequality, so that the domain is
/// exactly `{z ∈ 𝔻² : |F₃(z)| < 1}`.
pub const DAB_F3_SOURCE: &str = "(a*z1+b*z2-z1*z2)/(conj(b)*z1+conj(a)*z2-1)";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("point {0} is not in the domain")]
    Outside(Vec2),
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("expression {index} ({source_text:?}): {error}")]
    Parse {
        index: usize,
        source_text: String,
        error: ParseError,
    },
    #[error("expression {index} ({source_text:?}) is not holomorphic: conj applied to a variable")]
    NotHolomorphic { index: usize, source_text: String },
    #[error("universal-set member {index} takes value of modulus {modulus} at {point}")]
    MemberOutsideDisc {
        index: usize,
        point: Vec2,
        modulus: f64,
    },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("malformed domain document: {0}")]
    Document(String),
}

/// One universal-set member together with its two formal partials.
#[derive(Debug, Clone, PartialEq)]
pub struct Member {
    pub source: String,
    pub f: Expr,
    pub grad: [Expr; 2],
}

impl Member {
    fn new(source: String, f: Expr) -> Self {
        let grad = [f.d_dz(0), f.d_dz(1)];
        Member { source, f, grad }
    }

    pub fn value(&self, z: &Vec2) -> Result<Complex64, EvalError> {
        self.f.eval(z)
    }

    /// The complex gradient `(∂F/∂z₁, ∂F/∂z₂)` at `z`.
    pub fn gradient(&self, z: &Vec2) -> Result<Vec2, EvalError> {
        Ok(Vec2([self.grad[0].eval(z)?, self.grad[1].eval(z)?]))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniversalSet {
    members: Vec<Member>,
}

impl UniversalSet {
    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DomainKind {
    Bidisc,
    Dab { a: Complex64, b: Complex64 },
    /// Membership is `|g(z)| < 1` for every constraint `g`.
    Custom { constraints: Vec<Expr> },
}

/// Serialized form of a domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum DomainDocument {
    Bidisc,
    Dab {
        a: Complex64,
        b: Complex64,
    },
    Custom {
        #[serde(default)]
        constants: Constants,
        members: Vec<String>,
        membership: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DomainSpec {
    kind: DomainKind,
    universal_set: UniversalSet,
}

fn coordinate_members() -> Vec<Member> {
    vec![
        Member::new("z1".into(), Expr::z1()),
        Member::new("z2".into(), Expr::z2()),
    ]
}

fn parse_holomorphic(
    index: usize,
    src: &str,
    constants: &Constants,
) -> Result<Expr, DomainError> {
    let e = expr::parse(src, constants).map_err(|error| DomainError::Parse {
        index,
        source_text: src.to_string(),
        error,
    })?;
    if !e.is_holomorphic() {
        return Err(DomainError::NotHolomorphic {
            index,
            source_text: src.to_string(),
        });
    }
    Ok(e)
}

impl DomainSpec {
    /// The bidisc 𝔻², universal set `{z₁, z₂}`.
    pub fn bidisc() -> Self {
        DomainSpec {
            kind: DomainKind::Bidisc,
            universal_set: UniversalSet {
                members: coordinate_members(),
            },
        }
    }

    /// `D_{a,b}`; `(|a|, |b|, 1)` must be the sides of a non-degenerate triangle.
    pub fn dab(a: Complex64, b: Complex64) -> Result<Self, DomainError> {
        let (ma, mb) = (a.norm(), b.norm());
        if !(ma.is_finite() && mb.is_finite()) {
            return Err(DomainError::Parameter("a and b must be finite".into()));
        }
        if !(ma < mb + 1.0) {
            return Err(DomainError::Parameter(format!(
                "triangle inequality |a| < |b| + 1 fails: {ma} >= {}",
                mb + 1.0
            )));
        }
        if !(mb < ma + 1.0) {
            return Err(DomainError::Parameter(format!(
                "triangle inequality |b| < |a| + 1 fails: {mb} >= {}",
                ma + 1.0
            )));
        }
        if !(1.0 < ma + mb) {
            return Err(DomainError::Parameter(format!(
                "triangle inequality 1 < |a| + |b| fails: 1 >= {}",
                ma + mb
            )));
        }
        let constants: Constants = [("a".to_string(), a), ("b".to_string(), b)].into();
        let f3 = expr::parse(DAB_F3_SOURCE, &constants).expect("built-in F3 source parses");
        let mut members = coordinate_members();
        members.push(Member::new(DAB_F3_SOURCE.to_string(), f3));
        Ok(DomainSpec {
            kind: DomainKind::Dab { a, b },
            universal_set: UniversalSet { members },
        })
    }

    /// A domain given by holomorphic universal-set members and `|g| < 1`
    /// membership constraints.
    pub fn custom(
        constants: &Constants,
        members: &[String],
        membership: &[String],
    ) -> Result<Self, DomainError> {
        if let Some(bad) = constants.keys().find(|k| RESERVED_NAMES.contains(&k.as_str())) {
            return Err(DomainError::Document(format!(
                "constant name {bad:?} is reserved"
            )));
        }
        if members.is_empty() {
            return Err(DomainError::Document("universal set is empty".into()));
        }
        if membership.is_empty() {
            return Err(DomainError::Document("no membership constraints".into()));
        }
        let members = members
            .iter()
            .enumerate()
            .map(|(i, src)| Ok(Member::new(src.clone(), parse_holomorphic(i, src, constants)?)))
            .collect::<Result<Vec<_>, DomainError>>()?;
        let constraints = membership
            .iter()
            .enumerate()
            .map(|(i, src)| parse_holomorphic(i, src, constants))
            .collect::<Result<Vec<_>, _>>()?;
        let spec = DomainSpec {
            kind: DomainKind::Custom { constraints },
            universal_set: UniversalSet { members },
        };
        // The origin is the reference sample whenever it lies in the domain.
        if spec.contains(&Vec2::ZERO) {
            spec.member_values(&Vec2::ZERO)?;
        }
        Ok(spec)
    }

    pub fn from_document(doc: &DomainDocument) -> Result<Self, DomainError> {
        match doc {
            DomainDocument::Bidisc => Ok(Self::bidisc()),
            DomainDocument::Dab { a, b } => Self::dab(*a, *b),
            DomainDocument::Custom {
                constants,
                members,
                membership,
            } => Self::custom(constants, members, membership),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, DomainError> {
        let doc: DomainDocument =
            serde_json::from_str(text).map_err(|e| DomainError::Document(e.to_string()))?;
        Self::from_document(&doc)
    }

    pub fn kind(&self) -> &DomainKind {
        &self.kind
    }

    pub fn universal_set(&self) -> &UniversalSet {
        &self.universal_set
    }

    /// Strict membership test.
    pub fn contains(&self, z: &Vec2) -> bool {
        if !z.is_finite() {
            return false;
        }
        match &self.kind {
            DomainKind::Bidisc => z[0].norm() < 1.0 && z[1].norm() < 1.0,
            DomainKind::Dab { a, b } => {
                if !(z[0].norm() < 1.0 && z[1].norm() < 1.0) {
                    return false;
                }
                let (n, d) = dab_parts(*a, *b, z);
                n.norm() < d.norm()
            }
            DomainKind::Custom { constraints } => constraints
                .iter()
                .all(|g| matches!(g.eval(z), Ok(v) if v.norm() < 1.0)),
        }
    }

    /// Constraint slacks at `z`; `z` is inside iff every slack is negative.
    ///
    /// Coordinate constraints contribute `|z_j|² − 1`, the `D_{a,b}`
    /// constraint `|N|² − |Dn|²`, and custom constraints `|g|² − 1`
    /// (`+∞` at a pole).
    pub fn constraint_slacks(&self, z: &Vec2) -> Vec<f64> {
        let mut out = Vec::with_capacity(3);
        self.for_each_slack(z, |s| out.push(s));
        out
    }

    /// Largest constraint slack at `z`.
    pub fn max_slack(&self, z: &Vec2) -> f64 {
        let mut worst = f64::NEG_INFINITY;
        self.for_each_slack(z, |s| worst = worst.max(s));
        worst
    }

    /// Calls `f` on each slack at `z` without allocating.
    pub fn for_each_slack(&self, z: &Vec2, mut f: impl FnMut(f64)) {
        let nan_to_inf = |s: f64| if s.is_nan() { f64::INFINITY } else { s };
        match &self.kind {
            DomainKind::Bidisc => {
                f(nan_to_inf(z[0].norm_sqr() - 1.0));
                f(nan_to_inf(z[1].norm_sqr() - 1.0));
            }
            DomainKind::Dab { a, b } => {
                f(nan_to_inf(z[0].norm_sqr() - 1.0));
                f(nan_to_inf(z[1].norm_sqr() - 1.0));
                let (n, d) = dab_parts(*a, *b, z);
                f(nan_to_inf(n.norm_sqr() - d.norm_sqr()));
            }
            DomainKind::Custom { constraints } => {
                for g in constraints {
                    f(match g.eval(z) {
                        Ok(v) => nan_to_inf(v.norm_sqr() - 1.0),
                        Err(_) => f64::INFINITY,
                    });
                }
            }
        }
    }

    fn require_inside(&self, z: &Vec2) -> Result<(), DomainError> {
        if self.contains(z) {
            Ok(())
        } else {
            Err(DomainError::Outside(*z))
        }
    }

    /// Values `F_i(z)` as points of the unit disc.
    pub fn member_values(&self, z: &Vec2) -> Result<Vec<UnitDiscPoint>, DomainError> {
        self.universal_set
            .members
            .iter()
            .enumerate()
            .map(|(index, m)| {
                let v = m.value(z)?;
                UnitDiscPoint::new(v).map_err(|_| DomainError::MemberOutsideDisc {
                    index,
                    point: *z,
                    modulus: v.norm(),
                })
            })
            .collect()
    }

    /// Carathéodory distance `max_i ρ(F_i(z), F_i(w))`.
    pub fn caratheodory_distance(&self, z: &Vec2, w: &Vec2) -> Result<f64, DomainError> {
        self.require_inside(z)?;
        self.require_inside(w)?;
        let fz = self.member_values(z)?;
        let fw = self.member_values(w)?;
        Ok(fz
            .into_iter()
            .zip(fw)
            .map(|(a, b)| poincare_distance(a, b))
            .fold(0.0, f64::max))
    }

    /// Carathéodory metric `max_i |F_i'(p) X| / (1 − |F_i(p)|²)`.
    pub fn caratheodory_metric(&self, p: &Vec2, x: &Vec2) -> Result<f64, DomainError> {
        Ok(self
            .metric_functionals(p)?
            .iter()
            .map(|l| l.apply(x).norm())
            .fold(0.0, f64::max))
    }

    /// Covectors `F_i'(p) / (1 − |F_i(p)|²)`, one per universal-set member.
    pub fn metric_functionals(&self, p: &Vec2) -> Result<Vec<Vec2>, DomainError> {
        self.require_inside(p)?;
        let values = self.member_values(p)?;
        self.universal_set
            .members
            .iter()
            .zip(values)
            .map(|(m, v)| {
                let scale = 1.0 / (1.0 - v.value().norm_sqr());
                Ok(m.gradient(p)? * scale)
            })
            .collect()
    }

    pub fn to_document(&self) -> DomainDocument {
        match &self.kind {
            DomainKind::Bidisc => DomainDocument::Bidisc,
            DomainKind::Dab { a, b } => DomainDocument::Dab { a: *a, b: *b },
            DomainKind::Custom { constraints } => DomainDocument::Custom {
                constants: Constants::new(),
                members: self
                    .universal_set
                    .members
                    .iter()
                    .map(|m| m.f.pretty())
                    .collect(),
                membership: constraints.iter().map(Expr::pretty).collect(),
            },
        }
    }
}

/// Numerator `a z₁ + b z₂ − z₁z₂` and denominator `b̄ z₁ + ā z₂ − 1` of `F₃`.
fn dab_parts(a: Complex64, b: Complex64, z: &Vec2) -> (Complex64, Complex64) {
    let n = a * z[0] + b * z[1] - z[0] * z[1];
    let d = b.conj() * z[0] + a.conj() * z[1] - 1.0;
    (n, d)
}
