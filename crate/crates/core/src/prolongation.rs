//! First Tanaka prolongation of a depth-two graded symbol `(m, g0)`.
//!
//! A degree-one element is a pair of maps `φ: m₋₁ → g0` and `φ: m₋₂ → m₋₁`
//! satisfying `φ([X, Y]) = [φ(X), Y] + [X, φ(Y)]` on `m`. The prolongation
//! dimension is the nullity of that linear system.

use nalgebra::{DMatrix, DVector};

use crate::algebra::DEFAULT_TOLERANCE;
use crate::error::{Error, Result};

/// `m = m₋₁ ⊕ m₋₂` with `[m₋₁, m₋₁] ⊂ m₋₂` and `m₋₂` central, together with
/// a list of degree-zero derivations spanning `g0`.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedSymbol {
    dim_minus1: usize,
    dim_minus2: usize,
    /// Component `f` of `[X_i, X_j]`, one antisymmetric matrix per `f`.
    brackets: Vec<DMatrix<f64>>,
    /// Matrices on `m` in the basis `(m₋₁, m₋₂)`.
    generators: Vec<DMatrix<f64>>,
    tolerance: f64,
}

impl GradedSymbol {
    pub fn new(
        dim_minus1: usize,
        dim_minus2: usize,
        brackets: Vec<DMatrix<f64>>,
        generators: Vec<DMatrix<f64>>,
        tolerance: f64,
    ) -> Result<Self> {
        let n = dim_minus1 + dim_minus2;
        let bad = |msg: String| Err(Error::Input(msg));
        if brackets.len() != dim_minus2 {
            return bad(format!("expected {dim_minus2} bracket components, got {}", brackets.len()));
        }
        for (f, b) in brackets.iter().enumerate() {
            if b.shape() != (dim_minus1, dim_minus1) {
                return bad(format!("bracket component {f} has shape {:?}", b.shape()));
            }
            if (b + b.transpose()).amax() > tolerance * b.amax().max(1.0) {
                return bad(format!("bracket component {f} is not antisymmetric"));
            }
        }
        let symbol = Self {
            dim_minus1,
            dim_minus2,
            brackets,
            generators,
            tolerance,
        };
        for (k, d) in symbol.generators.iter().enumerate() {
            if d.shape() != (n, n) {
                return bad(format!("generator {k} has shape {:?}", d.shape()));
            }
            let off = d.view((0, dim_minus1), (dim_minus1, dim_minus2)).amax()
                .max(d.view((dim_minus1, 0), (dim_minus2, dim_minus1)).amax());
            if off > tolerance * d.amax().max(1.0) {
                return bad(format!("generator {k} does not preserve the grading"));
            }
            let residual = symbol.derivation_residual(d);
            if residual > tolerance * d.amax().max(1.0) * symbol.bracket_scale() {
                return bad(format!("generator {k} is not a derivation (residual {residual:e})"));
            }
        }
        Ok(symbol)
    }

    /// The Heisenberg algebra `[e1, e2] = e3` with the given degree-zero part.
    pub fn heisenberg(generators: Vec<DMatrix<f64>>) -> Result<Self> {
        let bracket = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
        Self::new(2, 1, vec![bracket], generators, DEFAULT_TOLERANCE)
    }

    /// Heisenberg with `g0` spanned by the boost `e1 ↦ e2, e2 ↦ e1`.
    pub fn heisenberg_boost() -> Self {
        let boost = DMatrix::from_row_slice(3, 3, &[0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        Self::heisenberg(vec![boost]).expect("the boost is a grading-preserving derivation")
    }

    /// The line `m = m₋₁ = R` with `g0` the scalars.
    pub fn line_with_scalars() -> Self {
        Self::new(1, 0, vec![], vec![DMatrix::identity(1, 1)], DEFAULT_TOLERANCE)
            .expect("scalars act on a line")
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_minus1, self.dim_minus2)
    }

    pub fn generators(&self) -> &[DMatrix<f64>] {
        &self.generators
    }

    /// `[e_i, e_j]` for basis vectors of `m₋₁`, as coordinates in `m₋₂`.
    fn bracket(&self, i: usize, j: usize) -> DVector<f64> {
        DVector::from_iterator(self.dim_minus2, self.brackets.iter().map(|b| b[(i, j)]))
    }

    /// `[u, v]` for arbitrary vectors of `m₋₁`.
    fn bracket_vectors(&self, u: &DVector<f64>, v: &DVector<f64>) -> DVector<f64> {
        DVector::from_iterator(self.dim_minus2, self.brackets.iter().map(|b| u.dot(&(b * v))))
    }

    fn bracket_scale(&self) -> f64 {
        self.brackets.iter().fold(1.0_f64, |m, b| m.max(b.amax()))
    }

    fn derivation_residual(&self, d: &DMatrix<f64>) -> f64 {
        let n1 = self.dim_minus1;
        let d1 = d.view((0, 0), (n1, n1)).into_owned();
        let d2 = d.view((n1, n1), (self.dim_minus2, self.dim_minus2)).into_owned();
        let mut worst = 0.0_f64;
        for i in 0..n1 {
            for j in (i + 1)..n1 {
                let lhs = &d2 * self.bracket(i, j);
                let rhs = self.bracket_vectors(&d1.column(i).into_owned(), &unit(n1, j))
                    + self.bracket_vectors(&unit(n1, i), &d1.column(j).into_owned());
                worst = worst.max((lhs - rhs).amax());
            }
        }
        worst
    }

    /// The same symbol in the basis given by the columns of a
    /// grading-preserving `p`, with generators conjugated accordingly.
    pub fn change_basis(&self, p: &DMatrix<f64>) -> Result<Self> {
        let (n1, n2) = (self.dim_minus1, self.dim_minus2);
        let n = n1 + n2;
        if p.shape() != (n, n) {
            return Err(Error::Input(format!("basis change has shape {:?}", p.shape())));
        }
        let p_inv = p.clone().try_inverse().ok_or(Error::SingularMatrix { det: p.determinant() })?;
        let p1 = p.view((0, 0), (n1, n1)).into_owned();
        let q_inv = p_inv.view((n1, n1), (n2, n2)).into_owned();
        let mut brackets = vec![DMatrix::zeros(n1, n1); n2];
        for i in 0..n1 {
            for j in 0..n1 {
                let value = &q_inv * self.bracket_vectors(&p1.column(i).into_owned(), &p1.column(j).into_owned());
                for (f, b) in brackets.iter_mut().enumerate() {
                    b[(i, j)] = value[f];
                }
            }
        }
        let generators = self.generators.iter().map(|d| &p_inv * d * p).collect();
        Self::new(n1, n2, brackets, generators, self.tolerance)
    }

    /// The linear system whose kernel is the first prolongation. Unknowns are
    /// the coefficients of `φ(e_i) ∈ g0` followed by those of `φ(f) ∈ m₋₁`.
    pub fn system(&self) -> DMatrix<f64> {
        let (n1, n2) = (self.dim_minus1, self.dim_minus2);
        let r = self.generators.len();
        let unknowns = n1 * r + n2 * n1;
        let alpha = |i: usize, k: usize| i * r + k;
        let beta = |f: usize, i: usize| n1 * r + f * n1 + i;
        let mut rows: Vec<DVector<f64>> = Vec::new();

        // φ([X_i, X_j]) - D_{φ(X_i)} X_j + D_{φ(X_j)} X_i = 0 in m₋₁.
        for i in 0..n1 {
            for j in (i + 1)..n1 {
                let b = self.bracket(i, j);
                for out in 0..n1 {
                    let mut row = DVector::zeros(unknowns);
                    for f in 0..n2 {
                        row[beta(f, out)] += b[f];
                    }
                    for (k, d) in self.generators.iter().enumerate() {
                        row[alpha(i, k)] -= d[(out, j)];
                        row[alpha(j, k)] += d[(out, i)];
                    }
                    rows.push(row);
                }
            }
        }
        // D_{φ(X_i)} f + [X_i, φ(f)] = 0 in m₋₂.
        for i in 0..n1 {
            for f in 0..n2 {
                for out in 0..n2 {
                    let mut row = DVector::zeros(unknowns);
                    for (k, d) in self.generators.iter().enumerate() {
                        row[alpha(i, k)] += d[(n1 + out, n1 + f)];
                    }
                    for m in 0..n1 {
                        row[beta(f, m)] += self.brackets[out][(i, m)];
                    }
                    rows.push(row);
                }
            }
        }
        let mut a = DMatrix::zeros(rows.len(), unknowns);
        for (r, row) in rows.iter().enumerate() {
            a.set_row(r, &row.transpose());
        }
        a
    }
}

fn unit(n: usize, i: usize) -> DVector<f64> {
    let mut v = DVector::zeros(n);
    v[i] = 1.0;
    v
}

/// Basis of the first prolongation as vectors of unknowns (see
/// [`GradedSymbol::system`]).
pub fn kernel(s: &GradedSymbol) -> Vec<DVector<f64>> {
    let a = s.system();
    let unknowns = a.ncols();
    if unknowns == 0 {
        return Vec::new();
    }
    // Pad to a square system so the SVD yields a full set of right vectors.
    let rows = a.nrows().max(unknowns);
    let mut padded = DMatrix::zeros(rows, unknowns);
    padded.view_mut((0, 0), (a.nrows(), unknowns)).copy_from(&a);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let cutoff = s.tolerance * svd.singular_values.max().max(1.0);
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, sigma)| **sigma <= cutoff)
        .map(|(k, _)| v_t.row(k).transpose())
        .collect()
}

pub fn prolongation_dim(s: &GradedSymbol) -> usize {
    kernel(s).len()
}
