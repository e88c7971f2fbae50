//! Cartan-gauge coefficients and the invariants κ, h, χ, τ of a left-invariant
//! structure, together with the SO⁺(1,1) action on h and its normal forms.
//!
//! In the left-invariant setting every frame derivative of a structure function
//! vanishes, so the gauge and curvature coefficients are polynomial in the
//! structure functions.

use nalgebra::Matrix2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame::{boost, AdaptedStructure};

/// Coefficients of `ω4 = β1 θ1 + β2 θ2 + β3 θ3` in the normalized gauge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaugeCoefficients {
    pub beta1: f64,
    pub beta2: f64,
    pub beta3: f64,
}

pub fn gauge_coefficients(s: &AdaptedStructure) -> GaugeCoefficients {
    let sf = &s.sf;
    GaugeCoefficients {
        beta1: sf.c112,
        beta2: -sf.c212,
        beta3: sf.c212 * sf.c212 - sf.c112 * sf.c112,
    }
}

/// Coefficients of `ωi ∧ ω3` in the curvature components Ω1, Ω2, Ω4
/// (Ω3 vanishes identically).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureGauge {
    pub omega1_13: f64,
    pub omega1_23: f64,
    pub omega2_13: f64,
    pub omega2_23: f64,
    pub omega4_13: f64,
    pub omega4_23: f64,
}

pub fn curvature_gauge(s: &AdaptedStructure) -> CurvatureGauge {
    let sf = &s.sf;
    let GaugeCoefficients { beta1, beta2, beta3 } = gauge_coefficients(s);
    CurvatureGauge {
        omega1_13: -sf.c,
        omega1_23: -(sf.c123 + beta3),
        omega2_13: -(sf.c213 + beta3),
        omega2_23: sf.c,
        omega4_13: -beta1 * sf.c - beta2 * sf.c213,
        omega4_23: -beta1 * sf.c123 + beta2 * sf.c,
    }
}

/// The scalar invariant κ.
pub fn kappa(s: &AdaptedStructure) -> f64 {
    let sf = &s.sf;
    sf.c212 * sf.c212 - sf.c112 * sf.c112 + (sf.c123 + sf.c213) / 2.0
}

/// The trace-free tensor `h = ((a, b), (-b, -a))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HTensor {
    pub a: f64,
    pub b: f64,
}

impl HTensor {
    pub fn new(a: f64, b: f64) -> Self {
        Self { a, b }
    }

    /// `det h = b² - a²`
    pub fn det(&self) -> f64 {
        (self.b - self.a) * (self.b + self.a)
    }

    pub fn matrix(&self) -> Matrix2<f64> {
        Matrix2::new(self.a, self.b, -self.b, -self.a)
    }
}

pub fn h_tensor(s: &AdaptedStructure) -> HTensor {
    HTensor {
        a: s.sf.c,
        b: (s.sf.c123 - s.sf.c213) / 2.0,
    }
}

/// `T⁻¹ h T` for the boost `T = ((cosh t, sinh t), (sinh t, cosh t))`.
pub fn so11_conjugate(h: &HTensor, t: f64) -> HTensor {
    let (sh, ch) = ((2.0 * t).sinh(), (2.0 * t).cosh());
    HTensor {
        a: ch * h.a + sh * h.b,
        b: sh * h.a + ch * h.b,
    }
}

/// SO⁺(1,1) orbit types of h. The degenerate classes are named by the signs
/// of `(a, b)` in the unit-amplitude representative, e.g. `DegeneratePM` is
/// `((1, -1), (1, -1))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HClass {
    Zero,
    DegeneratePP,
    DegeneratePM,
    DegenerateMP,
    DegenerateMM,
    DetPos,
    DetNeg,
}

impl HClass {
    pub fn is_degenerate(self) -> bool {
        matches!(
            self,
            Self::DegeneratePP | Self::DegeneratePM | Self::DegenerateMP | Self::DegenerateMM
        )
    }

    /// Unit-amplitude `(a, b)` of a degenerate class.
    pub fn degenerate_signs(self) -> Option<(f64, f64)> {
        match self {
            Self::DegeneratePP => Some((1.0, 1.0)),
            Self::DegeneratePM => Some((1.0, -1.0)),
            Self::DegenerateMP => Some((-1.0, 1.0)),
            Self::DegenerateMM => Some((-1.0, -1.0)),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Zero => "zero",
            Self::DegeneratePP => "degenerate-pp",
            Self::DegeneratePM => "degenerate-pm",
            Self::DegenerateMP => "degenerate-mp",
            Self::DegenerateMM => "degenerate-mm",
            Self::DetPos => "det-pos",
            Self::DetNeg => "det-neg",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        [
            Self::Zero,
            Self::DegeneratePP,
            Self::DegeneratePM,
            Self::DegenerateMP,
            Self::DegenerateMM,
            Self::DetPos,
            Self::DetNeg,
        ]
        .into_iter()
        .find(|c| c.name() == name)
    }
}

/// Normal form of h: `so11_conjugate(h, t)` is the canonical representative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HNormalForm {
    pub class: HClass,
    pub t: f64,
    /// Amplitude of the `det h ≠ 0` normal forms `((0, χ), (-χ, 0))` and
    /// `((χ, 0), (0, -χ))`.
    pub chi: Option<f64>,
    /// Set when `|det h|` lies within a factor of ten below the threshold.
    pub marginal: bool,
}

impl HNormalForm {
    /// The canonical representative of the orbit.
    pub fn representative(&self) -> HTensor {
        match (self.class, self.chi) {
            (HClass::DetPos, Some(chi)) => HTensor::new(0.0, chi),
            (HClass::DetNeg, Some(chi)) => HTensor::new(chi, 0.0),
            (class, _) => {
                let (a, b) = class.degenerate_signs().unwrap_or((0.0, 0.0));
                HTensor::new(a, b)
            }
        }
    }
}

/// Reduces h to its SO⁺(1,1) normal form.
///
/// `|h| = |a| + |b| ≤ eps` counts as zero; `det h` is compared against
/// `eps · |h| · max(1, |h|)`, which tracks the rounding error of `det h` both
/// for large h and for small h computed from order-one structure constants.
pub fn normalize_h(h: &HTensor, eps: f64) -> HNormalForm {
    let HTensor { a, b } = *h;
    let size = a.abs() + b.abs();
    if size <= eps {
        return HNormalForm { class: HClass::Zero, t: 0.0, chi: None, marginal: false };
    }
    let det = h.det();
    let threshold = eps * size * size.max(1.0);
    if det > threshold {
        HNormalForm {
            class: HClass::DetPos,
            t: 0.25 * ((b - a) / (b + a)).ln(),
            chi: Some((a + b).signum() * det.sqrt()),
            marginal: false,
        }
    } else if det < -threshold {
        HNormalForm {
            class: HClass::DetNeg,
            t: 0.25 * ((a - b) / (a + b)).ln(),
            chi: Some((a + b).signum() * (-det).sqrt()),
            marginal: false,
        }
    } else {
        // h ≈ a ((1, s), (-s, -1)) and the boost acts by exp(2 s t).
        let s = if a * b >= 0.0 { 1.0 } else { -1.0 };
        let amplitude = 0.5 * (a.abs() + b.abs());
        let class = match (a >= 0.0, b >= 0.0) {
            (true, true) => HClass::DegeneratePP,
            (true, false) => HClass::DegeneratePM,
            (false, true) => HClass::DegenerateMP,
            (false, false) => HClass::DegenerateMM,
        };
        HNormalForm {
            class,
            t: -s * amplitude.ln() / 2.0,
            chi: None,
            marginal: det.abs() > threshold / 10.0,
        }
    }
}

/// The canonical frame in which h takes its normal form. For `h = 0` there is
/// no distinguished frame and the structure is returned unchanged.
pub fn normalized_frame(s: &AdaptedStructure) -> Result<AdaptedStructure> {
    let form = normalize_h(&h_tensor(s), s.tolerance());
    if form.class == HClass::Zero || form.t == 0.0 {
        return Ok(s.clone());
    }
    boost(s, form.t)
}

/// `c1_12` in the normalized frame; defined only for degenerate nonzero h.
pub fn tau(s: &AdaptedStructure) -> Result<f64> {
    let form = normalize_h(&h_tensor(s), s.tolerance());
    if !form.class.is_degenerate() {
        return Err(Error::NotDefined("tau"));
    }
    Ok(normalized_frame(s)?.sf.c112)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvariantSet {
    pub kappa: f64,
    pub h: HTensor,
    pub hform: HNormalForm,
    pub tau: Option<f64>,
}

pub fn invariant_set(s: &AdaptedStructure) -> Result<InvariantSet> {
    let h = h_tensor(s);
    let hform = normalize_h(&h, s.tolerance());
    let tau = if hform.class.is_degenerate() { Some(tau(s)?) } else { None };
    Ok(InvariantSet {
        kappa: kappa(s),
        h,
        hform,
        tau,
    })
}
