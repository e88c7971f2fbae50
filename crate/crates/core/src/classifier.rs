//! Table of isometry classes: row selection, canonical constructions for each
//! solution branch, and the grid verification report.

use std::fmt;

use serde::Serialize;

use crate::algebra::DEFAULT_TOLERANCE;
use crate::error::{Error, Result};
use crate::frame::{AdaptedStructure, StructureFunctions};
use crate::invariants::{invariant_set, normalized_frame, HClass, HNormalForm, InvariantSet};
use crate::num::{side, Side};
use crate::recognizer::{recognize, same_class, LieAlgebraClass};

/// Relative tolerance for comparing the continuous parameter of `L(3,2,η)`
/// and `L(3,4,η)` against the value predicted by the table.
pub const ETA_TOLERANCE: f64 = 1e-6;

/// The explicit solution branches of the structure equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolutionId {
    /// `h = 0`, `c1_13 = c2_13 = c1_23 = 0`.
    AlgebraA,
    /// `h = 0`, `c1_12 = c2_12 = 0`.
    AlgebraB,
    Degenerate1,
    Degenerate2,
    Degenerate3,
    DetPos1,
    DetPos2,
    DetPos3,
    DetNeg,
}

impl SolutionId {
    pub const ALL: [SolutionId; 9] = [
        Self::AlgebraA,
        Self::AlgebraB,
        Self::Degenerate1,
        Self::Degenerate2,
        Self::Degenerate3,
        Self::DetPos1,
        Self::DetPos2,
        Self::DetPos3,
        Self::DetNeg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::AlgebraA => "algebra-a",
            Self::AlgebraB => "algebra-b",
            Self::Degenerate1 => "degenerate-1",
            Self::Degenerate2 => "degenerate-2",
            Self::Degenerate3 => "degenerate-3",
            Self::DetPos1 => "det-pos-1",
            Self::DetPos2 => "det-pos-2",
            Self::DetPos3 => "det-pos-3",
            Self::DetNeg => "det-neg",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }

    /// Whether an h class can carry this solution.
    pub fn admits(self, h_class: HClass) -> bool {
        use HClass::*;
        match self {
            Self::AlgebraA | Self::AlgebraB => h_class == Zero,
            Self::Degenerate1 => matches!(h_class, DegeneratePM | DegenerateMM),
            Self::Degenerate2 => matches!(h_class, DegeneratePP | DegenerateMP),
            Self::Degenerate3 => h_class.is_degenerate(),
            Self::DetPos1 | Self::DetPos2 | Self::DetPos3 => h_class == DetPos,
            Self::DetNeg => h_class == DetNeg,
        }
    }

    /// Default h class used when none is given.
    pub fn default_h_class(self) -> HClass {
        match self {
            Self::AlgebraA | Self::AlgebraB => HClass::Zero,
            Self::Degenerate1 => HClass::DegeneratePM,
            Self::Degenerate2 | Self::Degenerate3 => HClass::DegeneratePP,
            Self::DetPos1 | Self::DetPos2 | Self::DetPos3 => HClass::DetPos,
            Self::DetNeg => HClass::DetNeg,
        }
    }
}

impl fmt::Display for SolutionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The rows of the classification table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowId {
    ZeroFlat,
    ZeroCurved,
    DegenerateTauTwo,
    DegenerateTauAbove,
    DegenerateTauBelow,
    DegenerateSecondCurved,
    DegenerateFlat,
    DegenerateFirstCurved,
    DetPosCompact,
    DetPosSplit,
    DetPosEdgePositive,
    DetPosEdgeNegative,
    DetPosSecondJordan,
    DetPosSecondReal,
    DetPosSecondComplex,
    DetPosThirdJordan,
    DetPosThirdReal,
    DetPosThirdComplex,
    DetNeg,
}

impl RowId {
    pub const ALL: [RowId; 19] = [
        Self::ZeroFlat,
        Self::ZeroCurved,
        Self::DegenerateTauTwo,
        Self::DegenerateTauAbove,
        Self::DegenerateTauBelow,
        Self::DegenerateSecondCurved,
        Self::DegenerateFlat,
        Self::DegenerateFirstCurved,
        Self::DetPosCompact,
        Self::DetPosSplit,
        Self::DetPosEdgePositive,
        Self::DetPosEdgeNegative,
        Self::DetPosSecondJordan,
        Self::DetPosSecondReal,
        Self::DetPosSecondComplex,
        Self::DetPosThirdJordan,
        Self::DetPosThirdReal,
        Self::DetPosThirdComplex,
        Self::DetNeg,
    ];

    /// The h representatives of the row followed by its defining condition.
    pub fn condition(self) -> &'static str {
        match self {
            Self::ZeroFlat => "h = 0; kappa = 0",
            Self::ZeroCurved => "h = 0; kappa != 0",
            Self::DegenerateTauTwo => "h ~ ((1,1),(-1,-1)) or ((-1,1),(-1,1)); kappa = 0, |tau| = 2",
            Self::DegenerateTauAbove => "h ~ ((1,1),(-1,-1)) or ((-1,1),(-1,1)); kappa = 0, |tau| > 2",
            Self::DegenerateTauBelow => "h ~ ((1,1),(-1,-1)) or ((-1,1),(-1,1)); kappa = 0, |tau| < 2",
            Self::DegenerateSecondCurved => "h ~ ((1,1),(-1,-1)) or ((-1,1),(-1,1)); kappa != 0",
            Self::DegenerateFlat => "h ~ ((1,-1),(1,-1)) or ((-1,-1),(1,1)); kappa = 0",
            Self::DegenerateFirstCurved => "h ~ ((1,-1),(1,-1)) or ((-1,-1),(1,1)); kappa != 0",
            Self::DetPosCompact => "h ~ ((0,-chi),(chi,0)), first; |kappa| < -chi",
            Self::DetPosSplit => "h ~ ((0,-chi),(chi,0)), first; |kappa| > -chi, |kappa| != |chi|",
            Self::DetPosEdgePositive => "h ~ ((0,-chi),(chi,0)), first; chi = +-kappa > 0",
            Self::DetPosEdgeNegative => "h ~ ((0,-chi),(chi,0)), first; chi = +-kappa < 0",
            Self::DetPosSecondJordan => "h ~ ((0,-chi),(chi,0)), second; kappa = -7 chi",
            Self::DetPosSecondReal => "h ~ ((0,-chi),(chi,0)), second; kappa > -7 chi",
            Self::DetPosSecondComplex => "h ~ ((0,-chi),(chi,0)), second; kappa < -7 chi",
            Self::DetPosThirdJordan => "h ~ ((0,-chi),(chi,0)), third; kappa = 7 chi",
            Self::DetPosThirdReal => "h ~ ((0,-chi),(chi,0)), third; kappa < 7 chi",
            Self::DetPosThirdComplex => "h ~ ((0,-chi),(chi,0)), third; kappa > 7 chi",
            Self::DetNeg => "h ~ ((chi,0),(0,-chi)); kappa real",
        }
    }
}

/// A row of the table instantiated at concrete invariants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TableRow {
    pub id: RowId,
    pub h_class: HClass,
    pub kappa: f64,
    /// `τ` for degenerate h, `χ` for `det h ≠ 0`.
    pub tau_or_chi: Option<f64>,
    pub expected_algebra: LieAlgebraClass,
    pub solution_id: SolutionId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Canonical,
    NonCanonicalRealization,
    Inconsistent,
    Marginal,
}

/// Decisions that fell inside the tolerance band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct MarginalFlags {
    pub h_normal_form: bool,
    pub row_boundary: bool,
    pub recognizer: bool,
}

impl MarginalFlags {
    pub fn any(&self) -> bool {
        self.h_normal_form || self.row_boundary || self.recognizer
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub row: TableRow,
    pub realized_algebra: LieAlgebraClass,
    pub status: Status,
    pub invariants: InvariantSet,
    /// Structure functions in the frame where h is in normal form.
    pub normalized: StructureFunctions,
    pub marginal: MarginalFlags,
    pub jacobi_defect: f64,
}

fn canonical_l32(eta: f64) -> LieAlgebraClass {
    LieAlgebraClass::L32 { eta }.canonicalized()
}

/// Selects the table row for the given invariants and solution branch.
///
/// `tau_or_chi` is `τ` for the flat degenerate solutions and `χ` for
/// `det h ≠ 0`; boundary comparisons use `tol · max(1, |κ|, |aux|)`.
pub fn table_row(
    h_class: HClass,
    kappa: f64,
    tau_or_chi: Option<f64>,
    solution: SolutionId,
    tol: f64,
) -> Result<(TableRow, bool)> {
    if !solution.admits(h_class) {
        return Err(Error::InfeasibleParameters(format!(
            "solution {solution} does not occur for h class {}",
            h_class.name()
        )));
    }
    let aux = |what: &str| {
        tau_or_chi.ok_or_else(|| Error::InfeasibleParameters(format!("solution {solution} needs {what}")))
    };
    let scale = 1.0_f64.max(kappa.abs()).max(tau_or_chi.map_or(0.0, f64::abs));
    let cmp = |q: f64| side(q, tol * scale);
    let mut marginal = false;
    let mut on = |s: Side| match s {
        Side::On { marginal: m } => {
            marginal |= m;
            true
        }
        _ => false,
    };

    use LieAlgebraClass as L;
    let (id, expected) = match solution {
        SolutionId::AlgebraA | SolutionId::AlgebraB => {
            if on(cmp(kappa)) {
                (RowId::ZeroFlat, L::L31)
            } else {
                (RowId::ZeroCurved, L::L35)
            }
        }
        SolutionId::Degenerate1 | SolutionId::Degenerate2 | SolutionId::Degenerate3 => {
            let first = matches!(h_class, HClass::DegeneratePM | HClass::DegenerateMM);
            let flat = solution != SolutionId::Degenerate3 && on(cmp(kappa));
            match (first, flat) {
                (true, false) => (RowId::DegenerateFirstCurved, L::L35),
                (false, false) => (RowId::DegenerateSecondCurved, L::L35),
                (true, true) => {
                    let tau = aux("tau")?;
                    let root = (tau * tau + 4.0).sqrt();
                    (RowId::DegenerateFlat, canonical_l32((tau - root) / (tau + root)))
                }
                (false, true) => {
                    let tau = aux("tau")?;
                    match cmp(tau.abs() - 2.0) {
                        s if on(s) => (RowId::DegenerateTauTwo, L::L33),
                        Side::Above => {
                            let root = (tau * tau - 4.0).sqrt();
                            (RowId::DegenerateTauAbove, canonical_l32((-tau - root) / (-tau + root)))
                        }
                        _ => (
                            RowId::DegenerateTauBelow,
                            L::L34 { eta: tau.abs() / (4.0 - tau * tau).sqrt() },
                        ),
                    }
                }
            }
        }
        SolutionId::DetPos1 => {
            let chi = aux("chi")?;
            if on(cmp(kappa.abs() - chi.abs())) {
                if chi > 0.0 {
                    (RowId::DetPosEdgePositive, L::L32 { eta: -1.0 })
                } else {
                    (RowId::DetPosEdgeNegative, L::L34 { eta: 0.0 })
                }
            } else if cmp(kappa.abs() + chi) == Side::Below {
                (RowId::DetPosCompact, L::L36)
            } else {
                (RowId::DetPosSplit, L::L35)
            }
        }
        SolutionId::DetPos2 => {
            let chi = aux("chi")?;
            let lead = (kappa - chi).abs().sqrt();
            match cmp(kappa + 7.0 * chi) {
                s if on(s) => (RowId::DetPosSecondJordan, L::L33),
                Side::Above => {
                    let tail = (kappa + 7.0 * chi).sqrt();
                    (RowId::DetPosSecondReal, canonical_l32((lead - tail) / (lead + tail)))
                }
                _ => (
                    RowId::DetPosSecondComplex,
                    L::L34 { eta: lead / (-7.0 * chi - kappa).sqrt() },
                ),
            }
        }
        SolutionId::DetPos3 => {
            let chi = aux("chi")?;
            let lead = (chi + kappa).abs().sqrt();
            match cmp(kappa - 7.0 * chi) {
                s if on(s) => (RowId::DetPosThirdJordan, L::L33),
                Side::Below => {
                    let tail = (7.0 * chi - kappa).sqrt();
                    (RowId::DetPosThirdReal, canonical_l32((lead - tail) / (lead + tail)))
                }
                _ => (
                    RowId::DetPosThirdComplex,
                    L::L34 { eta: lead / (kappa - 7.0 * chi).sqrt() },
                ),
            }
        }
        SolutionId::DetNeg => (RowId::DetNeg, L::L35),
    };
    let row = TableRow {
        id,
        h_class,
        kappa,
        tau_or_chi,
        expected_algebra: expected,
        solution_id: solution,
    };
    Ok((row, marginal))
}

/// Builds the structure of a solution branch from its invariants.
///
/// `aux` is `c1_12` for [`SolutionId::AlgebraA`] (default 0), `τ` for
/// degenerate solutions (1) and (2), and `χ` for `det h ≠ 0`. Classes with a
/// negative first sign are obtained from the positive ones by reversing the
/// time orientation.
pub fn construct_from_invariants(
    h_class: HClass,
    kappa: f64,
    aux: Option<f64>,
    solution: SolutionId,
) -> Result<AdaptedStructure> {
    let sf = structure_functions_for(h_class, kappa, aux, solution)?;
    AdaptedStructure::from_structure_functions(&sf, DEFAULT_TOLERANCE)
}

/// The structure functions behind [`construct_from_invariants`].
pub fn structure_functions_for(
    h_class: HClass,
    kappa: f64,
    aux: Option<f64>,
    solution: SolutionId,
) -> Result<StructureFunctions> {
    let infeasible = |msg: String| Err(Error::InfeasibleParameters(msg));
    if !solution.admits(h_class) {
        return infeasible(format!("solution {solution} does not occur for h class {}", h_class.name()));
    }
    if !kappa.is_finite() || aux.is_some_and(|a| !a.is_finite()) {
        return infeasible("parameters must be finite".into());
    }
    let need = |what: &str| aux.ok_or_else(|| Error::InfeasibleParameters(format!("solution {solution} needs {what}")));
    let nonzero_chi = || match need("chi")? {
        0.0 => Err(Error::InfeasibleParameters("chi must be nonzero".into())),
        chi => Ok(chi),
    };
    let flat_only = || {
        if kappa != 0.0 {
            Err(Error::InfeasibleParameters(format!("solution {solution} requires kappa = 0")))
        } else {
            Ok(())
        }
    };

    let sf = |c, c213, c123, c112, c212| StructureFunctions { c, c213, c123, c112, c212 };
    let base = match solution {
        SolutionId::AlgebraA => {
            let c112 = aux.unwrap_or(0.0);
            let square = kappa + c112 * c112;
            if square < 0.0 {
                return infeasible(format!("algebra A needs kappa + c112^2 >= 0, got {square}"));
            }
            sf(0.0, 0.0, 0.0, c112, square.sqrt())
        }
        SolutionId::AlgebraB => sf(0.0, kappa, kappa, 0.0, 0.0),
        SolutionId::Degenerate1 => {
            flat_only()?;
            let tau = need("tau")?;
            sf(1.0, 1.0, -1.0, tau, tau)
        }
        SolutionId::Degenerate2 => {
            flat_only()?;
            let tau = need("tau")?;
            sf(1.0, -1.0, 1.0, tau, -tau)
        }
        SolutionId::Degenerate3 => {
            if kappa == 0.0 {
                return infeasible("degenerate solution (3) requires kappa != 0".into());
            }
            if matches!(h_class, HClass::DegeneratePP | HClass::DegenerateMP) {
                sf(1.0, kappa - 1.0, kappa + 1.0, 0.0, 0.0)
            } else {
                sf(1.0, kappa + 1.0, kappa - 1.0, 0.0, 0.0)
            }
        }
        SolutionId::DetPos1 => {
            let chi = nonzero_chi()?;
            sf(0.0, kappa + chi, kappa - chi, 0.0, 0.0)
        }
        SolutionId::DetPos2 => {
            let chi = nonzero_chi()?;
            if kappa - chi < 0.0 {
                return infeasible(format!("det h > 0 solution (2) needs kappa - chi >= 0, got {}", kappa - chi));
            }
            sf(0.0, 2.0 * chi, 0.0, 0.0, (kappa - chi).sqrt())
        }
        SolutionId::DetPos3 => {
            let chi = nonzero_chi()?;
            if -kappa - chi < 0.0 {
                return infeasible(format!("det h > 0 solution (3) needs -kappa - chi >= 0, got {}", -kappa - chi));
            }
            sf(0.0, 0.0, -2.0 * chi, (-kappa - chi).sqrt(), 0.0)
        }
        SolutionId::DetNeg => {
            let chi = nonzero_chi()?;
            sf(chi, kappa, kappa, 0.0, 0.0)
        }
    };
    Ok(match h_class {
        HClass::DegenerateMP | HClass::DegenerateMM => StructureFunctions {
            c: -base.c,
            c212: -base.c212,
            ..base
        },
        _ => base,
    })
}

/// `χ` as used by the table rows: the amplitude of `((0, -χ), (χ, 0))` for
/// `det h > 0` and of `((χ, 0), (0, -χ))` for `det h < 0`.
pub fn table_chi(form: &HNormalForm) -> Option<f64> {
    match form.class {
        HClass::DetPos => form.chi.map(|b| -b),
        HClass::DetNeg => form.chi,
        _ => None,
    }
}

fn near_zero(x: f64, tol: f64) -> bool {
    x.abs() <= tol
}

/// Identifies the solution branch and the table parameter of a structure
/// whose frame already puts h in normal form.
fn solution_of(inv: &InvariantSet, sf: &StructureFunctions, tol: f64) -> (SolutionId, Option<f64>) {
    let tol = tol * sf.scale();
    let class = inv.hform.class;
    match class {
        HClass::Zero => {
            if near_zero(sf.c112, tol) && near_zero(sf.c212, tol) {
                (SolutionId::AlgebraB, None)
            } else {
                (SolutionId::AlgebraA, None)
            }
        }
        HClass::DetNeg => (SolutionId::DetNeg, table_chi(&inv.hform)),
        HClass::DetPos => {
            let chi = table_chi(&inv.hform);
            let id = match (near_zero(sf.c112, tol), near_zero(sf.c212, tol)) {
                (true, true) => SolutionId::DetPos1,
                (true, false) => SolutionId::DetPos2,
                _ => SolutionId::DetPos3,
            };
            (id, chi)
        }
        _ if !near_zero(inv.kappa, tol) => (SolutionId::Degenerate3, None),
        HClass::DegeneratePM | HClass::DegenerateMM => (SolutionId::Degenerate1, inv.tau),
        _ => (SolutionId::Degenerate2, inv.tau),
    }
}

/// Whether `realized` is a locally isometric model of the row.
fn admissible_alternative(row: &TableRow, realized: &LieAlgebraClass) -> bool {
    matches!(row.id, RowId::ZeroFlat | RowId::ZeroCurved) && *realized == LieAlgebraClass::L3Minus1
}

/// Maps an adapted structure to its table row and checks the row against the
/// algebra that actually carries it.
pub fn classify(s: &AdaptedStructure) -> Result<ClassificationReport> {
    s.alg.check_jacobi()?;
    let tol = s.tolerance();
    let inv = invariant_set(s)?;
    let normalized = normalized_frame(s)?.sf;
    let (solution, aux) = solution_of(&inv, &normalized, tol);
    let (row, row_marginal) = table_row(inv.hform.class, inv.kappa, aux, solution, tol)?;
    let recognition = recognize(&s.alg)?;
    let realized = recognition.class;
    let marginal = MarginalFlags {
        h_normal_form: inv.hform.marginal,
        row_boundary: row_marginal,
        recognizer: recognition.marginal,
    };

    let status = if same_class(&realized, &row.expected_algebra, ETA_TOLERANCE) {
        if marginal.any() { Status::Marginal } else { Status::Canonical }
    } else if admissible_alternative(&row, &realized) {
        if marginal.any() { Status::Marginal } else { Status::NonCanonicalRealization }
    } else if marginal.any() {
        Status::Marginal
    } else {
        Status::Inconsistent
    };

    Ok(ClassificationReport {
        row,
        realized_algebra: realized,
        status,
        invariants: inv,
        normalized,
        marginal,
        jacobi_defect: s.alg.jacobi_defect(),
    })
}

/// Parameter ranges scanned by [`table_report`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grid {
    pub kappas: Vec<f64>,
    pub chis: Vec<f64>,
    pub taus: Vec<f64>,
    /// `c1_12` values for algebra A.
    pub algebra_a_c112: Vec<f64>,
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            kappas: vec![-3.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0],
            chis: vec![-2.0, -1.0, -0.5, 0.5, 1.0, 2.0],
            taus: vec![-3.0, -2.5, -2.0, -1.0, 0.0, 1.0, 2.0, 2.5, 3.0],
            algebra_a_c112: vec![0.0, 2.0],
        }
    }
}

impl Grid {
    /// A handful of points per row, for quick checks.
    pub fn small() -> Self {
        Self {
            kappas: vec![-1.0, 0.0, 2.0],
            chis: vec![-1.0, 1.0],
            taus: vec![-2.0, 1.0, 3.0],
            algebra_a_c112: vec![2.0],
        }
    }

    /// All grid inputs, including the `κ = ∓7χ` points of the second and
    /// third `det h > 0` solutions, in deterministic order.
    pub fn points(&self) -> Vec<GridPoint> {
        let mut points = Vec::new();
        let mut push = |solution, h_class, kappa, aux| points.push(GridPoint { solution, h_class, kappa, aux });
        for &kappa in &self.kappas {
            for &c112 in &self.algebra_a_c112 {
                push(SolutionId::AlgebraA, HClass::Zero, kappa, Some(c112));
            }
            push(SolutionId::AlgebraB, HClass::Zero, kappa, None);
        }
        for (solution, classes) in [
            (SolutionId::Degenerate1, [HClass::DegeneratePM, HClass::DegenerateMM]),
            (SolutionId::Degenerate2, [HClass::DegeneratePP, HClass::DegenerateMP]),
        ] {
            for h_class in classes {
                for &tau in &self.taus {
                    push(solution, h_class, 0.0, Some(tau));
                }
            }
        }
        for h_class in [HClass::DegeneratePP, HClass::DegeneratePM, HClass::DegenerateMP, HClass::DegenerateMM] {
            for &kappa in self.kappas.iter().filter(|k| **k != 0.0) {
                push(SolutionId::Degenerate3, h_class, kappa, None);
            }
        }
        for &chi in &self.chis {
            for solution in [SolutionId::DetPos1, SolutionId::DetPos2, SolutionId::DetPos3, SolutionId::DetNeg] {
                let mut kappas = self.kappas.clone();
                match solution {
                    SolutionId::DetPos2 => kappas.push(-7.0 * chi),
                    SolutionId::DetPos3 => kappas.push(7.0 * chi),
                    _ => {}
                }
                kappas.sort_by(f64::total_cmp);
                kappas.dedup();
                for kappa in kappas {
                    push(solution, solution.default_h_class(), kappa, Some(chi));
                }
            }
        }
        points
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridPoint {
    pub solution: SolutionId,
    pub h_class: HClass,
    pub kappa: f64,
    pub aux: Option<f64>,
}

impl GridPoint {
    /// Points excluded from the scan: infeasible parameters, and the second
    /// and third `det h > 0` solutions at `c2_12 = 0` or `c1_12 = 0`, where
    /// they coincide with the first solution.
    pub fn skip_reason(&self) -> Option<String> {
        if let Err(e) = structure_functions_for(self.h_class, self.kappa, self.aux, self.solution) {
            return Some(e.to_string());
        }
        let chi = self.aux.unwrap_or(0.0);
        match self.solution {
            SolutionId::DetPos2 if self.kappa == chi => Some("coincides with det h > 0 solution (1)".into()),
            SolutionId::DetPos3 if self.kappa == -chi => Some("coincides with det h > 0 solution (1)".into()),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRecord {
    pub input: GridPoint,
    pub expected: TableRow,
    pub classified: Option<TableRow>,
    pub realized_algebra: Option<LieAlgebraClass>,
    pub status: Option<Status>,
    pub matches: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedPoint {
    pub input: GridPoint,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableReport {
    pub records: Vec<TableRecord>,
    pub skipped: Vec<SkippedPoint>,
    pub footnotes: Vec<&'static str>,
}

impl TableReport {
    pub fn mismatches(&self) -> usize {
        self.records.iter().filter(|r| !r.matches).count()
    }

    /// Distinct rows hit by at least one matching record.
    pub fn rows_covered(&self) -> Vec<RowId> {
        let mut rows: Vec<RowId> = self.records.iter().filter(|r| r.matches).map(|r| r.expected.id).collect();
        rows.sort();
        rows.dedup();
        rows
    }
}

/// Tolerance for the reproduced invariants in [`table_report`].
pub const ROUND_TRIP_TOLERANCE: f64 = 1e-8;

pub const TABLE_FOOTNOTES: [&str; 2] = [
    "For |tau| < 2 the degenerate row is L(3,4, |tau| / sqrt(4 - tau^2)); the variant with sqrt(tau^2 - 4) would be imaginary.",
    "Degenerate h labels follow direct computation: solution (1) has h ~ ((1,-1),(1,-1)) or ((-1,-1),(1,1)), solution (2) has h ~ ((1,1),(-1,-1)) or ((-1,1),(-1,1)).",
];

fn evaluate(point: &GridPoint) -> Result<TableRecord> {
    let (expected, _) = table_row(point.h_class, point.kappa, expected_aux(point), point.solution, DEFAULT_TOLERANCE)?;
    let s = construct_from_invariants(point.h_class, point.kappa, point.aux, point.solution)?;
    let report = classify(&s)?;
    let mut notes = Vec::new();
    if report.row.id != expected.id {
        notes.push(format!("classified as row {:?}", report.row.id));
    }
    if !matches!(report.status, Status::Canonical | Status::NonCanonicalRealization) {
        notes.push(format!("status {:?}", report.status));
    }
    if !same_class(&report.realized_algebra, &expected.expected_algebra, ETA_TOLERANCE) {
        let admissible = admissible_alternative(&expected, &report.realized_algebra);
        if !admissible {
            notes.push(format!("realized {}", report.realized_algebra));
        }
    }
    let close = |x: f64, y: f64| (x - y).abs() <= ROUND_TRIP_TOLERANCE * x.abs().max(1.0);
    if !close(report.invariants.kappa, point.kappa) {
        notes.push(format!("kappa reproduced as {}", report.invariants.kappa));
    }
    if report.invariants.hform.class != point.h_class {
        notes.push(format!("h class reproduced as {}", report.invariants.hform.class.name()));
    }
    match (expected.tau_or_chi, report.row.tau_or_chi) {
        (Some(want), Some(got)) if !close(want, got) => notes.push(format!("parameter reproduced as {got}")),
        (Some(_), None) => notes.push("parameter not reproduced".into()),
        _ => {}
    }
    Ok(TableRecord {
        input: *point,
        expected,
        classified: Some(report.row),
        realized_algebra: Some(report.realized_algebra),
        status: Some(report.status),
        matches: notes.is_empty(),
        note: (!notes.is_empty()).then(|| notes.join("; ")),
    })
}

/// The table parameter for a grid point: `c1_12` of algebra A is not one.
fn expected_aux(point: &GridPoint) -> Option<f64> {
    match point.solution {
        SolutionId::AlgebraA | SolutionId::AlgebraB | SolutionId::Degenerate3 => None,
        _ => point.aux,
    }
}

/// Constructs, classifies and recognizes every grid point.
pub fn table_report(grid: &Grid) -> TableReport {
    let mut records = Vec::new();
    let mut skipped = Vec::new();
    for point in grid.points() {
        if let Some(reason) = point.skip_reason() {
            skipped.push(SkippedPoint { input: point, reason });
            continue;
        }
        match evaluate(&point) {
            Ok(record) => records.push(record),
            Err(e) => {
                let expected = table_row(point.h_class, point.kappa, expected_aux(&point), point.solution, DEFAULT_TOLERANCE)
                    .map(|(row, _)| row);
                match expected {
                    Ok(expected) => records.push(TableRecord {
                        input: point,
                        expected,
                        classified: None,
                        realized_algebra: None,
                        status: None,
                        matches: false,
                        note: Some(e.to_string()),
                    }),
                    Err(reason) => skipped.push(SkippedPoint { input: point, reason: reason.to_string() }),
                }
            }
        }
    }
    TableReport {
        records,
        skipped,
        footnotes: TABLE_FOOTNOTES.to_vec(),
    }
}
