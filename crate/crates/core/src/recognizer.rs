//! Decides the isomorphism class of a real 3-dimensional Lie algebra.
//!
//! The decision follows the dimension of the derived algebra `[g, g]`:
//! nilpotency separates the Heisenberg and affine algebras in dimension 1,
//! the Jordan type of `ad_X` on `[g, g]` separates the solvable families in
//! dimension 2, and the sign of the Killing form separates `sl(2)` from
//! `su(2)` in dimension 3.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Serialize, Serializer};

use crate::algebra::{LieAlgebra3, Vector3};
use crate::error::{Error, Result};
use crate::num::{fmt12, side, Side};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LieAlgebraClass {
    /// Abelian.
    L30,
    /// Heisenberg.
    L31,
    /// `aff(1) ⊕ R`.
    L3Minus1,
    /// `0 < |eta| ≤ 1`.
    L32 { eta: f64 },
    L33,
    /// `eta ≥ 0`.
    L34 { eta: f64 },
    /// `sl(2, R)`.
    L35,
    /// `su(2)`.
    L36,
}

impl LieAlgebraClass {
    pub fn eta(&self) -> Option<f64> {
        match *self {
            Self::L32 { eta } | Self::L34 { eta } => Some(eta),
            _ => None,
        }
    }

    /// Tag without the parameter, e.g. `L(3,2)`.
    pub fn tag(&self) -> &'static str {
        match self {
            Self::L30 => "L(3,0)",
            Self::L31 => "L(3,1)",
            Self::L3Minus1 => "L(3,-1)",
            Self::L32 { .. } => "L(3,2)",
            Self::L33 => "L(3,3)",
            Self::L34 { .. } => "L(3,4)",
            Self::L35 => "L(3,5)",
            Self::L36 => "L(3,6)",
        }
    }

    /// Brings the parameter into its admissible range using the
    /// identifications `L(3,2,η) ≅ L(3,2,1/η)` and `L(3,4,η) ≅ L(3,4,-η)`.
    pub fn canonicalized(&self) -> Self {
        match *self {
            Self::L32 { eta } if eta.abs() > 1.0 => Self::L32 { eta: 1.0 / eta },
            Self::L34 { eta } => Self::L34 { eta: eta.abs() },
            other => other,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::L32 { eta } if !(eta.is_finite() && eta != 0.0 && eta.abs() <= 1.0) => {
                Err(Error::BadParameter(format!("L(3,2,η) needs 0 < |η| ≤ 1, got {eta}")))
            }
            Self::L34 { eta } if !(eta.is_finite() && eta >= 0.0) => {
                Err(Error::BadParameter(format!("L(3,4,η) needs η ≥ 0, got {eta}")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for LieAlgebraClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.eta() {
            Some(eta) => write!(f, "{},{})", self.tag().trim_end_matches(')'), fmt12(eta)),
            None => f.write_str(self.tag()),
        }
    }
}

impl Serialize for LieAlgebraClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for LieAlgebraClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("unrecognized algebra class {s:?}"));
        let inner = s
            .trim()
            .strip_prefix("L(3,")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let mut parts = inner.split(',').map(str::trim);
        let tag = parts.next().ok_or_else(bad)?;
        let eta = parts.next().map(|e| e.parse::<f64>().map_err(|_| bad())).transpose()?;
        if parts.next().is_some() {
            return Err(bad());
        }
        match (tag, eta) {
            ("0", None) => Ok(Self::L30),
            ("1", None) => Ok(Self::L31),
            ("-1", None) => Ok(Self::L3Minus1),
            ("2", Some(eta)) => Ok(Self::L32 { eta }),
            ("3", None) => Ok(Self::L33),
            ("4", Some(eta)) => Ok(Self::L34 { eta }),
            ("5", None) => Ok(Self::L35),
            ("6", None) => Ok(Self::L36),
            _ => Err(bad()),
        }
    }
}

/// A recognized class; `marginal` when a branch decision fell inside the
/// tolerance band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Recognition {
    pub class: LieAlgebraClass,
    pub marginal: bool,
}

pub fn recognize(alg: &LieAlgebra3) -> Result<Recognition> {
    alg.check_jacobi()?;
    let tol = alg.tolerance();
    let derived = alg.derived_algebra();
    let basis = [Vector3::x(), Vector3::y(), Vector3::z()];

    let plain = |class| Recognition { class, marginal: false };
    match derived.dim() {
        0 => Ok(plain(LieAlgebraClass::L30)),
        1 => {
            // [g, [g, g]] = 0 exactly for the Heisenberg algebra.
            let z = derived.basis()[0];
            let worst = basis
                .iter()
                .map(|e| alg.bracket(e, &z).norm())
                .fold(0.0_f64, f64::max);
            Ok(match side(worst, tol * alg.scale()) {
                Side::On { marginal } => Recognition { class: LieAlgebraClass::L31, marginal },
                _ => plain(LieAlgebraClass::L3Minus1),
            })
        }
        2 => {
            let x = *basis
                .iter()
                .max_by(|a, b| derived.residual(a).total_cmp(&derived.residual(b)))
                .expect("three basis vectors");
            let m = alg.ad_matrix(&x, &derived)?;
            Ok(classify_solvable(&m, tol))
        }
        _ => {
            let eig = alg.killing_form().eigenvalues();
            let scale = eig.iter().fold(0.0_f64, |m, e| m.max(e.abs()));
            let marginal = eig.iter().any(|e| e.abs() <= tol * scale);
            let class = if eig[2] < -tol * scale {
                LieAlgebraClass::L36
            } else {
                LieAlgebraClass::L35
            };
            Ok(Recognition { class, marginal })
        }
    }
}

/// Jordan type of the 2×2 restriction of `ad_X` to the derived algebra.
fn classify_solvable(m: &DMatrix<f64>, tol: f64) -> Recognition {
    let trace = m[(0, 0)] + m[(1, 1)];
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let disc = trace * trace - 4.0 * det;
    let scale2 = m.norm_squared();

    match side(disc, tol * scale2) {
        Side::Above => {
            let root = disc.sqrt();
            let big = if trace >= 0.0 { (trace + root) / 2.0 } else { (trace - root) / 2.0 };
            let small = det / big;
            Recognition {
                class: LieAlgebraClass::L32 { eta: small / big },
                marginal: false,
            }
        }
        Side::Below => Recognition {
            class: LieAlgebraClass::L34 { eta: trace.abs() / (-disc).sqrt() },
            marginal: false,
        },
        Side::On { marginal } => {
            let half = trace / 2.0;
            let off = (m[(0, 0)] - half).powi(2)
                + (m[(1, 1)] - half).powi(2)
                + m[(0, 1)].powi(2)
                + m[(1, 0)].powi(2);
            let class = if off.sqrt() <= tol * scale2.sqrt() {
                LieAlgebraClass::L32 { eta: 1.0 }
            } else {
                LieAlgebraClass::L33
            };
            Recognition { class, marginal }
        }
    }
}

/// The model algebra of each class in its standard basis.
pub fn canonical_model(class: &LieAlgebraClass) -> Result<LieAlgebra3> {
    class.validate()?;
    let v = Vector3::new;
    let zero = Vector3::zeros();
    Ok(match *class {
        LieAlgebraClass::L30 => LieAlgebra3::abelian(),
        LieAlgebraClass::L31 => LieAlgebra3::heisenberg(),
        LieAlgebraClass::L3Minus1 => LieAlgebra3::new(v(1.0, 0.0, 0.0), zero, zero),
        LieAlgebraClass::L32 { eta } => LieAlgebra3::new(zero, v(1.0, 0.0, 0.0), v(0.0, eta, 0.0)),
        LieAlgebraClass::L33 => LieAlgebra3::new(zero, v(1.0, 0.0, 0.0), v(1.0, 1.0, 0.0)),
        LieAlgebraClass::L34 { eta } => LieAlgebra3::new(zero, v(eta, -1.0, 0.0), v(1.0, eta, 0.0)),
        LieAlgebraClass::L35 => LieAlgebra3::new(v(1.0, 0.0, 0.0), v(0.0, -2.0, 0.0), v(0.0, 0.0, 1.0)),
        LieAlgebraClass::L36 => LieAlgebra3::new(v(0.0, 0.0, 1.0), v(0.0, -1.0, 0.0), v(1.0, 0.0, 0.0)),
    })
}

/// Same tag and, after canonicalization, parameters within
/// `eta_tol · max(1, |η|)`.
pub fn same_class(x: &LieAlgebraClass, y: &LieAlgebraClass, eta_tol: f64) -> bool {
    let (x, y) = (x.canonicalized(), y.canonicalized());
    if x.tag() != y.tag() {
        return false;
    }
    match (x.eta(), y.eta()) {
        (Some(a), Some(b)) => (a - b).abs() <= eta_tol * a.abs().max(1.0),
        _ => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Matrix3;

    fn v(x: f64, y: f64, z: f64) -> Vector3 {
        Vector3::new(x, y, z)
    }

    fn recognized(alg: &LieAlgebra3) -> LieAlgebraClass {
        recognize(alg).unwrap().class
    }

    #[test]
    fn recognizes_examples() {
        assert_eq!(recognized(&LieAlgebra3::abelian()), LieAlgebraClass::L30);
        let half = LieAlgebra3::new(Vector3::zeros(), v(1.0, 0.0, 0.0), v(0.0, 0.5, 0.0));
        assert_eq!(recognized(&half), LieAlgebraClass::L32 { eta: 0.5 });
        let l36 = canonical_model(&LieAlgebraClass::L36).unwrap();
        assert_eq!(recognized(&l36), LieAlgebraClass::L36);
        assert_eq!(*l36.killing_form().matrix(), Matrix3::identity() * -2.0);
    }

    #[test]
    fn l34_after_basis_change() {
        let model = canonical_model(&LieAlgebraClass::L34 { eta: 1.0 }).unwrap();
        let p = Matrix3::new(0.8, -0.3, 1.1, 0.2, 1.4, -0.6, -0.5, 0.4, 0.9);
        let r = recognized(&model.change_basis(&p).unwrap());
        assert!(same_class(&r, &LieAlgebraClass::L34 { eta: 1.0 }, 1e-6), "{r}");
    }

    #[test]
    fn canonical_models_match_relations() {
        let l31 = canonical_model(&LieAlgebraClass::L31).unwrap();
        assert_eq!(l31.brackets(), &[Vector3::z(), Vector3::zeros(), Vector3::zeros()]);
        let l35 = canonical_model(&LieAlgebraClass::L35).unwrap();
        assert_eq!(l35.brackets(), &[v(1.0, 0.0, 0.0), v(0.0, -2.0, 0.0), v(0.0, 0.0, 1.0)]);
        let p11 = canonical_model(&LieAlgebraClass::L32 { eta: -1.0 }).unwrap();
        assert_eq!(p11.brackets(), &[Vector3::zeros(), v(1.0, 0.0, 0.0), v(0.0, -1.0, 0.0)]);
    }

    #[test]
    fn bad_parameters_are_rejected() {
        for c in [
            LieAlgebraClass::L32 { eta: 0.0 },
            LieAlgebraClass::L32 { eta: 1.5 },
            LieAlgebraClass::L34 { eta: -0.1 },
            LieAlgebraClass::L34 { eta: f64::NAN },
        ] {
            assert!(matches!(canonical_model(&c), Err(Error::BadParameter(_))));
        }
    }

    #[test]
    fn same_class_identifications() {
        assert!(same_class(&LieAlgebraClass::L32 { eta: 0.5 }, &LieAlgebraClass::L32 { eta: 2.0 }, 1e-12));
        assert!(same_class(&LieAlgebraClass::L34 { eta: 1.0 }, &LieAlgebraClass::L34 { eta: -1.0 }, 1e-12));
        assert!(!same_class(&LieAlgebraClass::L35, &LieAlgebraClass::L36, 1e-12));
        assert!(!same_class(&LieAlgebraClass::L32 { eta: 0.5 }, &LieAlgebraClass::L32 { eta: -0.5 }, 1e-12));
    }

    #[test]
    fn l321_is_not_confused_with_l33() {
        let p = Matrix3::new(1.0, 2.0, 0.0, -1.0, 0.5, 0.3, 0.2, 0.0, 1.0);
        for class in [LieAlgebraClass::L32 { eta: 1.0 }, LieAlgebraClass::L33] {
            let alg = canonical_model(&class).unwrap().change_basis(&p).unwrap();
            assert!(same_class(&recognized(&alg), &class, 1e-9));
        }
    }

    #[test]
    fn dimension_one_split() {
        let aff = canonical_model(&LieAlgebraClass::L3Minus1).unwrap();
        assert_eq!(recognized(&aff), LieAlgebraClass::L3Minus1);
        assert_eq!(recognized(&LieAlgebra3::heisenberg()), LieAlgebraClass::L31);
    }

    #[test]
    fn non_lie_input_is_rejected() {
        let bad = LieAlgebra3::new(v(0.0, 0.0, 1.0), v(1.0, 0.0, 0.0), Vector3::zeros());
        assert!(matches!(recognize(&bad), Err(Error::JacobiViolation { .. })));
    }

    #[test]
    fn display_and_parse() {
        let c = LieAlgebraClass::L32 { eta: -0.5 };
        assert_eq!(c.to_string(), "L(3,2,-0.5)");
        assert_eq!("L(3,2,-0.5)".parse::<LieAlgebraClass>().unwrap(), c);
        assert_eq!("L(3,-1)".parse::<LieAlgebraClass>().unwrap(), LieAlgebraClass::L3Minus1);
        assert!("L(3,7)".parse::<LieAlgebraClass>().is_err());
    }
}
