//! Command-line front end.
//!
//! Structures are read as TOML (or JSON when the document starts with `{`):
//!
//! ```toml
//! basis = ["E1", "E2", "E3"]
//! time_orientation = 1
//! space_orientation = 1
//! metric = [[-1.0, 0.0], [0.0, 1.0]]
//!
//! [brackets]
//! "E1,E2" = [0.0, 0.0, 1.0]
//!
//! [distribution]
//! v1 = [1.0, 0.0, 0.0]
//! v2 = [0.0, 1.0, 0.0]
//! ```
//!
//! Missing brackets are zero and the metric is the Gram matrix of `(v1, v2)`.
//! Reports are flat `key = value` lines, or a JSON object with `--json`;
//! every number is printed with 12 significant digits.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::{DMatrix, Matrix2};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::algebra::{LieAlgebra3, Vector3, DEFAULT_TOLERANCE};
use crate::classifier::{
    classify, construct_from_invariants, table_chi, table_report, ClassificationReport, Grid, SolutionId, Status,
};
use crate::error::Error;
use crate::frame::{adapt, AdaptedStructure, MetricOnH, Orientation, OrientationFlags, StructureFunctions};
use crate::invariants::{curvature_gauge, invariant_set, HClass, InvariantSet};
use crate::num::{fmt12, round12};
use crate::prolongation::{kernel, GradedSymbol};
use crate::recognizer::recognize;

/// Environment variable overriding the default tolerance.
pub const TOLERANCE_ENV: &str = "SLC_TOLERANCE";

pub const EXIT_OK: i32 = 0;
pub const EXIT_MALFORMED: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;
pub const EXIT_MARGINAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sublorentz", version, about = "Classify left-invariant sub-Lorentzian contact structures on 3D Lie groups")]
struct Cli {
    /// Zero tolerance for every sign and rank decision.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Exit with status 3 when a decision fell inside the tolerance band.
    #[arg(long, global = true)]
    strict: bool,
    /// Emit JSON instead of key = value lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the Jacobi identity, the metric and the contact condition.
    Validate {
        /// Input document, `-` for stdin.
        #[arg(default_value = "-")]
        input: String,
    },
    /// Print the adapted frame and its structure functions.
    Adapt {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Print κ, h, its normal form, and χ or τ.
    Invariants {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Select the table row and compare it with the recognized algebra.
    Classify {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Recognize the Lie algebra; distribution and metric are optional.
    Recognize {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Emit the input document of a canonical structure.
    Construct {
        #[arg(long = "case", value_enum)]
        case: Case,
        /// Solution branch (1 to 3) for degenerate and det-pos.
        #[arg(long)]
        solution: Option<u8>,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        kappa: f64,
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<f64>,
        /// `c1_12` for zero-a.
        #[arg(long, allow_hyphen_values = true)]
        c112: Option<f64>,
        /// Sign class of a degenerate h.
        #[arg(long = "h-class", value_enum)]
        h_class: Option<DegenerateSigns>,
    },
    /// Regenerate the classification table over a parameter grid.
    Table {
        #[arg(long, value_enum, default_value_t = GridChoice::Default)]
        grid: GridChoice,
    },
    /// Dimension of the first prolongation of a graded symbol.
    Prolongation {
        #[arg(long, value_enum, default_value_t = SymbolChoice::HeisenbergBoost)]
        symbol: SymbolChoice,
        /// TOML or JSON symbol document, overrides --symbol.
        #[arg(long)]
        input: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Case {
    ZeroA,
    ZeroB,
    Degenerate,
    DetPos,
    DetNeg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DegenerateSigns {
    Pp,
    Pm,
    Mp,
    Mm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GridChoice {
    Default,
    Small,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SymbolChoice {
    HeisenbergBoost,
    Heisenberg,
    Line,
}

/// The structure description read by `validate`, `adapt`, `invariants`,
/// `classify` and `recognize`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default = "default_basis")]
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default = "positive")]
    pub time_orientation: i64,
    #[serde(default = "positive")]
    pub space_orientation: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<[[f64; 2]; 2]>,
    #[serde(default)]
    pub brackets: BTreeMap<String, [f64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distribution: Option<Distribution>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Distribution {
    pub v1: [f64; 3],
    pub v2: [f64; 3],
}

fn default_basis() -> Vec<String> {
    vec!["E1".into(), "E2".into(), "E3".into()]
}

fn positive() -> i64 {
    1
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, Error> {
        if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| Error::Input(format!("invalid JSON document: {e}")))
        } else {
            toml::from_str(text).map_err(|e| Error::Input(format!("invalid TOML document: {e}")))
        }
    }

    /// The document describing an adapted structure in its own frame.
    pub fn from_structure_functions(sf: &StructureFunctions) -> Self {
        let alg = sf.algebra();
        let basis = default_basis();
        let mut brackets = BTreeMap::new();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let b = alg.basis_bracket(i, j);
            brackets.insert(format!("{},{}", basis[i], basis[j]), [b.x + 0.0, b.y + 0.0, b.z + 0.0]);
        }
        Self {
            basis,
            tolerance: None,
            time_orientation: 1,
            space_orientation: 1,
            metric: Some([[-1.0, 0.0], [0.0, 1.0]]),
            brackets,
            distribution: Some(Distribution {
                v1: [1.0, 0.0, 0.0],
                v2: [0.0, 1.0, 0.0],
            }),
        }
    }

    pub fn to_toml(&self) -> Result<String, Error> {
        toml::to_string(self).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn algebra(&self, tolerance: f64) -> Result<LieAlgebra3, Error> {
        if self.basis.len() != 3 {
            return Err(Error::Input(format!("basis needs 3 labels, got {}", self.basis.len())));
        }
        let index = |label: &str| {
            self.basis
                .iter()
                .position(|b| b == label)
                .ok_or_else(|| Error::Input(format!("unknown basis label {label:?}")))
        };
        for (k, label) in self.basis.iter().enumerate() {
            if self.basis[..k].contains(label) {
                return Err(Error::Input(format!("duplicate basis label {label:?}")));
            }
        }
        let mut brackets: [Option<Vector3>; 3] = [None; 3];
        for (key, value) in &self.brackets {
            let (left, right) = key
                .split_once(',')
                .ok_or_else(|| Error::Input(format!("bracket key {key:?} is not of the form \"A,B\"")))?;
            let (i, j) = (index(left.trim())?, index(right.trim())?);
            let v = Vector3::from(*value);
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::Input(format!("bracket {key:?} has a non-finite entry")));
            }
            if i == j {
                if v.norm() != 0.0 {
                    return Err(Error::Input(format!("bracket {key:?} of a vector with itself must vanish")));
                }
                continue;
            }
            let (slot, v) = match (i, j) {
                (0, 1) => (0, v),
                (1, 0) => (0, -v),
                (0, 2) => (1, v),
                (2, 0) => (1, -v),
                (1, 2) => (2, v),
                _ => (2, -v),
            };
            match brackets[slot] {
                Some(prev) if (prev - v).norm() > tolerance * prev.norm().max(1.0) => {
                    return Err(Error::Input(format!("bracket {key:?} contradicts its reversed entry")));
                }
                _ => brackets[slot] = Some(v),
            }
        }
        let [e12, e13, e23] = brackets.map(|b| b.unwrap_or_else(Vector3::zeros));
        Ok(LieAlgebra3::new(e12, e13, e23).with_tolerance(tolerance))
    }

    pub fn flags(&self) -> Result<OrientationFlags, Error> {
        Ok(OrientationFlags {
            time: Orientation::from_sign(self.time_orientation)?,
            space: Orientation::from_sign(self.space_orientation)?,
        })
    }

    /// Distribution basis and metric, both required for frame adaptation.
    pub fn horizontal(&self, tolerance: f64) -> Result<([Vector3; 2], MetricOnH), Error> {
        let d = self
            .distribution
            .ok_or_else(|| Error::Input("document has no [distribution]".into()))?;
        let m = self.metric.ok_or_else(|| Error::Input("document has no metric".into()))?;
        let gram = Matrix2::new(m[0][0], m[0][1], m[1][0], m[1][1]);
        if gram.iter().any(|x| !x.is_finite()) || d.v1.iter().chain(&d.v2).any(|x| !x.is_finite()) {
            return Err(Error::Input("distribution and metric must be finite".into()));
        }
        Ok(([Vector3::from(d.v1), Vector3::from(d.v2)], MetricOnH::new(gram, tolerance)?))
    }

    pub fn adapted(&self, tolerance: f64) -> Result<AdaptedStructure, Error> {
        let alg = self.algebra(tolerance)?;
        let (h_basis, metric) = self.horizontal(tolerance)?;
        alg.check_jacobi()?;
        adapt(&alg, &h_basis, &metric, self.flags()?)
    }
}

/// Exit status for an engine error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_)
        | Error::BadParameter(_)
        | Error::InfeasibleParameters(_)
        | Error::SignatureMismatch(..)
        | Error::DegenerateDistribution => EXIT_MALFORMED,
        _ => EXIT_INCONSISTENT,
    }
}

fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(round12(x) + 0.0)
    } else {
        Value::Null
    }
}

fn opt(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

fn vector(v: &Vector3) -> Value {
    Value::Array(v.iter().map(|x| num(*x)).collect())
}

fn structure_functions_json(sf: &StructureFunctions) -> Value {
    json!({
        "c": num(sf.c),
        "c1_12": num(sf.c112),
        "c2_12": num(sf.c212),
        "c2_13": num(sf.c213),
        "c1_23": num(sf.c123),
    })
}

fn residuals_json(s: &AdaptedStructure) -> Value {
    json!({
        "jacobi_defect": num(s.alg.jacobi_defect()),
        "trace": num(s.residuals.trace),
        "reeb": num(s.residuals.reeb),
        "transversal": num(s.residuals.transversal),
        "normalization": num(s.residuals.normalization),
    })
}

fn invariants_json(inv: &InvariantSet) -> Value {
    let rep = inv.hform.representative();
    json!({
        "kappa": num(inv.kappa),
        "h": [num(inv.h.a), num(inv.h.b)],
        "h_class": inv.hform.class.name(),
        "boost": num(inv.hform.t),
        "normal_form": [num(rep.a), num(rep.b)],
        "chi": opt(table_chi(&inv.hform)),
        "tau": opt(inv.tau),
        "marginal": inv.hform.marginal,
    })
}

fn status_name(status: Status) -> &'static str {
    match status {
        Status::Canonical => "canonical",
        Status::NonCanonicalRealization => "non-canonical-realization",
        Status::Inconsistent => "inconsistent",
        Status::Marginal => "marginal",
    }
}

fn report_json(s: &AdaptedStructure, report: &ClassificationReport) -> Value {
    let row = &report.row;
    json!({
        "structure_functions": structure_functions_json(&s.sf),
        "normalized_structure_functions": structure_functions_json(&report.normalized),
        "invariants": invariants_json(&report.invariants),
        "row": {
            "id": serde_json::to_value(row.id).unwrap_or(Value::Null),
            "condition": row.id.condition(),
            "solution": row.solution_id.name(),
            "tau_or_chi": opt(row.tau_or_chi),
            "expected_algebra": row.expected_algebra.to_string(),
        },
        "realized_algebra": report.realized_algebra.to_string(),
        "status": status_name(report.status),
        "marginal": {
            "h_normal_form": report.marginal.h_normal_form,
            "row_boundary": report.marginal.row_boundary,
            "recognizer": report.marginal.recognizer,
        },
        "residuals": residuals_json(s),
    })
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::Null => "none".into(),
        Value::Number(n) => n.as_f64().map_or_else(|| n.to_string(), fmt12),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Array(items) => format!("[{}]", items.iter().map(scalar_text).collect::<Vec<_>>().join(", ")),
        Value::Object(_) => "{...}".into(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, child, out);
            }
        }
        _ => out.push(format!("{prefix} = {}", scalar_text(v))),
    }
}

/// Renders a report as JSON or as sorted `key = value` lines.
pub fn render(doc: &Value, as_json: bool) -> String {
    if as_json {
        let mut s = serde_json::to_string_pretty(doc).unwrap_or_default();
        s.push('\n');
        s
    } else {
        let mut lines = Vec::new();
        flatten("", doc, &mut lines);
        lines.join("\n") + "\n"
    }
}

struct Context {
    tolerance: f64,
    tolerance_given: bool,
    strict: bool,
    json: bool,
}

struct Outcome {
    doc: Option<Value>,
    raw: Option<String>,
    code: i32,
}

impl Outcome {
    fn report(doc: Value) -> Self {
        Self { doc: Some(doc), raw: None, code: EXIT_OK }
    }
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String, Error> {
    if path == "-" {
        let mut text = String::new();
        stdin
            .read_to_string(&mut text)
            .map_err(|e| Error::Input(format!("cannot read stdin: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {path}: {e}")))
    }
}

fn resolve_tolerance(flag: Option<f64>, doc: Option<f64>) -> Result<(f64, bool), Error> {
    let env = match std::env::var(TOLERANCE_ENV) {
        Ok(v) => Some(
            v.trim()
                .parse::<f64>()
                .map_err(|_| Error::Input(format!("{TOLERANCE_ENV} is not a number: {v:?}")))?,
        ),
        Err(_) => None,
    };
    let tol = flag.or(doc).or(env).unwrap_or(DEFAULT_TOLERANCE);
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Input(format!("tolerance must be positive, got {tol}")));
    }
    Ok((tol, flag.is_some()))
}

fn with_tolerance(ctx: &Context, mut doc: Value) -> Value {
    if let Value::Object(map) = &mut doc {
        map.insert("tolerance".into(), num(ctx.tolerance));
    }
    doc
}

fn load(ctx: &mut Context, cli_tol: Option<f64>, path: &str, stdin: &mut dyn Read) -> Result<InputDocument, Error> {
    let doc = InputDocument::parse(&read_input(path, stdin)?)?;
    let (tol, given) = resolve_tolerance(cli_tol, doc.tolerance)?;
    ctx.tolerance = tol;
    ctx.tolerance_given = given;
    Ok(doc)
}

fn marginal_exit(ctx: &Context, marginal: bool) -> i32 {
    if ctx.strict && marginal {
        EXIT_MARGINAL
    } else {
        EXIT_OK
    }
}

fn run_validate(ctx: &Context, input: &InputDocument) -> Result<Outcome, Error> {
    let alg = input.algebra(ctx.tolerance)?;
    input.flags()?;
    alg.check_jacobi()?;
    let mut doc = Map::new();
    doc.insert("valid".into(), json!(true));
    doc.insert("jacobi_defect".into(), num(alg.jacobi_defect()));
    doc.insert("jacobi_tolerance".into(), num(alg.jacobi_tolerance()));
    if input.distribution.is_some() || input.metric.is_some() {
        let (h_basis, metric) = input.horizontal(ctx.tolerance)?;
        let s = adapt(&alg, &h_basis, &metric, input.flags()?)?;
        doc.insert("contact".into(), json!(true));
        doc.insert("residuals".into(), residuals_json(&s));
    }
    Ok(Outcome::report(Value::Object(doc)))
}

fn run_adapt(ctx: &Context, input: &InputDocument) -> Result<Outcome, Error> {
    let s = input.adapted(ctx.tolerance)?;
    Ok(Outcome::report(json!({
        "frame": { "x1": vector(&s.x1), "x2": vector(&s.x2), "x3": vector(&s.x3) },
        "contact_form": vector(&s.eta),
        "orientation": { "time": s.flags.time.sign() as i64, "space": s.flags.space.sign() as i64 },
        "structure_functions": structure_functions_json(&s.sf),
        "residuals": residuals_json(&s),
    })))
}

fn run_invariants(ctx: &Context, input: &InputDocument) -> Result<Outcome, Error> {
    let s = input.adapted(ctx.tolerance)?;
    let inv = invariant_set(&s)?;
    let gauge = curvature_gauge(&s);
    let mut outcome = Outcome::report(json!({
        "structure_functions": structure_functions_json(&s.sf),
        "invariants": invariants_json(&inv),
        "curvature": {
            "omega1_13": num(gauge.omega1_13),
            "omega1_23": num(gauge.omega1_23),
            "omega2_13": num(gauge.omega2_13),
            "omega2_23": num(gauge.omega2_23),
            "omega4_13": num(gauge.omega4_13),
            "omega4_23": num(gauge.omega4_23),
        },
        "residuals": residuals_json(&s),
    }));
    outcome.code = marginal_exit(ctx, inv.hform.marginal);
    Ok(outcome)
}

fn run_classify(ctx: &Context, input: &InputDocument) -> Result<Outcome, Error> {
    let s = input.adapted(ctx.tolerance)?;
    let report = classify(&s)?;
    let mut outcome = Outcome::report(report_json(&s, &report));
    outcome.code = match report.status {
        Status::Inconsistent => EXIT_INCONSISTENT,
        Status::Marginal => marginal_exit(ctx, true),
        _ => EXIT_OK,
    };
    Ok(outcome)
}

fn run_recognize(ctx: &Context, input: &InputDocument) -> Result<Outcome, Error> {
    let alg = input.algebra(ctx.tolerance)?;
    let r = recognize(&alg)?;
    let mut outcome = Outcome::report(json!({
        "algebra": r.class.to_string(),
        "class": r.class.tag(),
        "eta": opt(r.class.eta()),
        "derived_dimension": alg.derived_algebra().dim(),
        "marginal": r.marginal,
        "jacobi_defect": num(alg.jacobi_defect()),
    }));
    outcome.code = marginal_exit(ctx, r.marginal);
    Ok(outcome)
}

#[allow(clippy::too_many_arguments)]
fn run_construct(
    ctx: &Context,
    case: Case,
    solution: Option<u8>,
    kappa: f64,
    chi: Option<f64>,
    tau: Option<f64>,
    c112: Option<f64>,
    signs: Option<DegenerateSigns>,
) -> Result<Outcome, Error> {
    let bad = |msg: &str| Error::Input(msg.to_string());
    let id = match (case, solution) {
        (Case::ZeroA, None) => SolutionId::AlgebraA,
        (Case::ZeroB, None) => SolutionId::AlgebraB,
        (Case::DetNeg, None) => SolutionId::DetNeg,
        (Case::Degenerate, Some(1)) => SolutionId::Degenerate1,
        (Case::Degenerate, Some(2)) => SolutionId::Degenerate2,
        (Case::Degenerate, Some(3)) => SolutionId::Degenerate3,
        (Case::DetPos, Some(1)) => SolutionId::DetPos1,
        (Case::DetPos, Some(2)) => SolutionId::DetPos2,
        (Case::DetPos, Some(3)) => SolutionId::DetPos3,
        (Case::Degenerate | Case::DetPos, None) => return Err(bad("--solution is required for this case")),
        (Case::Degenerate | Case::DetPos, Some(_)) => return Err(bad("--solution must be 1, 2 or 3")),
        _ => return Err(bad("--solution only applies to degenerate and det-pos")),
    };
    let h_class = match (case, signs) {
        (Case::Degenerate, Some(DegenerateSigns::Pp)) => HClass::DegeneratePP,
        (Case::Degenerate, Some(DegenerateSigns::Pm)) => HClass::DegeneratePM,
        (Case::Degenerate, Some(DegenerateSigns::Mp)) => HClass::DegenerateMP,
        (Case::Degenerate, Some(DegenerateSigns::Mm)) => HClass::DegenerateMM,
        (_, Some(_)) => return Err(bad("--h-class only applies to the degenerate case")),
        (_, None) => id.default_h_class(),
    };
    let aux = match id {
        SolutionId::AlgebraA => c112,
        SolutionId::Degenerate1 | SolutionId::Degenerate2 => Some(tau.ok_or_else(|| bad("--tau is required"))?),
        SolutionId::DetPos1 | SolutionId::DetPos2 | SolutionId::DetPos3 | SolutionId::DetNeg => {
            Some(chi.ok_or_else(|| bad("--chi is required"))?)
        }
        _ => None,
    };
    let s = construct_from_invariants(h_class, kappa, aux, id)?;
    let mut doc = InputDocument::from_structure_functions(&s.sf);
    if ctx.tolerance_given {
        doc.tolerance = Some(ctx.tolerance);
    }
    if ctx.json {
        return Ok(Outcome {
            doc: None,
            raw: Some(serde_json::to_string_pretty(&doc).unwrap_or_default() + "\n"),
            code: EXIT_OK,
        });
    }
    let mut text = format!(
        "# {} with h class {}, kappa = {}{}\n",
        id,
        h_class.name(),
        fmt12(kappa),
        aux.map(|a| format!(", parameter = {}", fmt12(a))).unwrap_or_default()
    );
    text.push_str(&doc.to_toml()?);
    Ok(Outcome { doc: None, raw: Some(text), code: EXIT_OK })
}

fn run_table(ctx: &Context, grid: GridChoice) -> Result<Outcome, Error> {
    let grid = match grid {
        GridChoice::Default => Grid::default(),
        GridChoice::Small => Grid::small(),
    };
    let report = table_report(&grid);
    let mismatches = report.mismatches();
    let code = if mismatches == 0 { EXIT_OK } else { EXIT_INCONSISTENT };

    let records: Vec<Value> = report
        .records
        .iter()
        .map(|r| {
            json!({
                "solution": r.input.solution.name(),
                "h_class": r.input.h_class.name(),
                "kappa": num(r.input.kappa),
                "parameter": opt(r.input.aux),
                "row": serde_json::to_value(r.expected.id).unwrap_or(Value::Null),
                "expected_algebra": r.expected.expected_algebra.to_string(),
                "realized_algebra": r.realized_algebra.map(|c| c.to_string()),
                "status": r.status.map(status_name),
                "matches": r.matches,
                "note": r.note,
            })
        })
        .collect();
    let summary = json!({
        "records": report.records.len(),
        "mismatches": mismatches,
        "skipped": report.skipped.len(),
        "rows_covered": report.rows_covered().len(),
        "rows_total": crate::classifier::RowId::ALL.len(),
    });

    if ctx.json {
        let doc = json!({
            "tolerance": num(ctx.tolerance),
            "records": records,
            "skipped": report.skipped.iter().map(|s| json!({
                "solution": s.input.solution.name(),
                "h_class": s.input.h_class.name(),
                "kappa": num(s.input.kappa),
                "parameter": opt(s.input.aux),
                "reason": s.reason,
            })).collect::<Vec<_>>(),
            "summary": summary,
            "footnotes": report.footnotes,
        });
        return Ok(Outcome { doc: None, raw: Some(render(&doc, true)), code });
    }

    let mut text = String::new();
    for r in &report.records {
        text.push_str(&format!(
            "{:<12} {:<14} kappa={:<5} param={:<5} row={:<22} expected={:<24} realized={:<24} {}{}\n",
            r.input.solution.name(),
            r.input.h_class.name(),
            fmt12(r.input.kappa),
            r.input.aux.map_or("-".into(), fmt12),
            serde_json::to_value(r.expected.id).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
            r.expected.expected_algebra.to_string(),
            r.realized_algebra.map_or("-".into(), |c| c.to_string()),
            if r.matches { "ok" } else { "MISMATCH" },
            r.note.as_ref().map(|n| format!(" ({n})")).unwrap_or_default(),
        ));
    }
    text.push_str(&format!(
        "tolerance = {}\nrecords = {}\nmismatches = {}\nskipped = {}\nrows_covered = {}/{}\n",
        fmt12(ctx.tolerance),
        report.records.len(),
        mismatches,
        report.skipped.len(),
        report.rows_covered().len(),
        crate::classifier::RowId::ALL.len(),
    ));
    for note in &report.footnotes {
        text.push_str(&format!("note: {note}\n"));
    }
    Ok(Outcome { doc: None, raw: Some(text), code })
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SymbolDocument {
    dim_minus1: usize,
    dim_minus2: usize,
    #[serde(default)]
    brackets: Vec<Vec<Vec<f64>>>,
    #[serde(default)]
    generators: Vec<Vec<Vec<f64>>>,
}

fn matrix(rows: &[Vec<f64>], what: &str) -> Result<DMatrix<f64>, Error> {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != m) {
        return Err(Error::Input(format!("{what} has rows of unequal length")));
    }
    Ok(DMatrix::from_row_iterator(n, m, rows.iter().flatten().copied()))
}

fn run_prolongation(
    ctx: &mut Context,
    cli_tol: Option<f64>,
    symbol: SymbolChoice,
    input: Option<&str>,
    stdin: &mut dyn Read,
) -> Result<Outcome, Error> {
    let (tol, _) = resolve_tolerance(cli_tol, None)?;
    ctx.tolerance = tol;
    let (name, s) = match input {
        Some(path) => {
            let text = read_input(path, stdin)?;
            let doc: SymbolDocument = if text.trim_start().starts_with('{') {
                serde_json::from_str(&text).map_err(|e| Error::Input(format!("invalid JSON symbol: {e}")))?
            } else {
                toml::from_str(&text).map_err(|e| Error::Input(format!("invalid TOML symbol: {e}")))?
            };
            let brackets = doc.brackets.iter().map(|b| matrix(b, "bracket")).collect::<Result<_, _>>()?;
            let generators = doc.generators.iter().map(|g| matrix(g, "generator")).collect::<Result<_, _>>()?;
            ("custom", GradedSymbol::new(doc.dim_minus1, doc.dim_minus2, brackets, generators, tol)?)
        }
        None => match symbol {
            SymbolChoice::HeisenbergBoost => ("heisenberg-boost", GradedSymbol::heisenberg_boost()),
            SymbolChoice::Heisenberg => ("heisenberg", GradedSymbol::heisenberg(vec![])?),
            SymbolChoice::Line => ("line", GradedSymbol::line_with_scalars()),
        },
    };
    let basis = kernel(&s);
    let (n1, n2) = s.dims();
    Ok(Outcome::report(json!({
        "symbol": name,
        "dim_minus1": n1,
        "dim_minus2": n2,
        "g0_dimension": s.generators().len(),
        "prolongation_dim": basis.len(),
    })))
}

fn dispatch(cli: Cli, ctx: &mut Context, stdin: &mut dyn Read) -> Result<Outcome, Error> {
    let tol = cli.tolerance;
    match cli.command {
        Command::Validate { input } => {
            let doc = load(ctx, tol, &input, stdin)?;
            run_validate(ctx, &doc)
        }
        Command::Adapt { input } => {
            let doc = load(ctx, tol, &input, stdin)?;
            run_adapt(ctx, &doc)
        }
        Command::Invariants { input } => {
            let doc = load(ctx, tol, &input, stdin)?;
            run_invariants(ctx, &doc)
        }
        Command::Classify { input } => {
            let doc = load(ctx, tol, &input, stdin)?;
            run_classify(ctx, &doc)
        }
        Command::Recognize { input } => {
            let doc = load(ctx, tol, &input, stdin)?;
            run_recognize(ctx, &doc)
        }
        Command::Construct { case, solution, kappa, chi, tau, c112, h_class } => {
            let (t, given) = resolve_tolerance(tol, None)?;
            ctx.tolerance = t;
            ctx.tolerance_given = given;
            run_construct(ctx, case, solution, kappa, chi, tau, c112, h_class)
        }
        Command::Table { grid } => {
            ctx.tolerance = resolve_tolerance(tol, None)?.0;
            run_table(ctx, grid)
        }
        Command::Prolongation { symbol, input } => run_prolongation(ctx, tol, symbol, input.as_deref(), stdin),
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit status.
pub fn run_command<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let mut ctx = Context {
        tolerance: DEFAULT_TOLERANCE,
        tolerance_given: false,
        strict: cli.strict,
        json: cli.json,
    };
    match dispatch(cli, &mut ctx, stdin) {
        Ok(outcome) => {
            if let Some(doc) = outcome.doc {
                let _ = stdout.write_all(render(&with_tolerance(&ctx, doc), ctx.json).as_bytes());
            }
            if let Some(raw) = outcome.raw {
                let _ = stdout.write_all(raw.as_bytes());
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}
