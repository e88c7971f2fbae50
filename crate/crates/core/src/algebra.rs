//! Real 3-dimensional Lie algebras given by structure constants.
//!
//! An algebra is stored through the three brackets `[E1,E2]`, `[E1,E3]`,
//! `[E2,E3]` of a fixed basis; antisymmetry is therefore structural. All
//! zero/sign decisions use the algebra's tolerance, and rank decisions compare
//! singular values against `tolerance * largest singular value`.

use nalgebra::{DMatrix, DVector, Matrix3, SymmetricEigen};

use crate::error::{Error, Result};

pub type Vector3 = nalgebra::Vector3<f64>;

/// Default tolerance for all zero tests.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Basis changes with a larger condition number are rejected.
pub const MAX_CONDITION: f64 = 1e8;

/// Index pairs `(i, j)`, `i < j`, in storage order.
const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra3 {
    brackets: [Vector3; 3],
    tolerance: f64,
}

impl LieAlgebra3 {
    /// Builds the algebra from `[E1,E2]`, `[E1,E3]` and `[E2,E3]`.
    pub fn new(e12: Vector3, e13: Vector3, e23: Vector3) -> Self {
        Self {
            brackets: [e12, e13, e23],
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn abelian() -> Self {
        Self::new(Vector3::zeros(), Vector3::zeros(), Vector3::zeros())
    }

    /// `[E1,E2] = E3`, all other brackets zero.
    pub fn heisenberg() -> Self {
        Self::new(Vector3::z(), Vector3::zeros(), Vector3::zeros())
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// The stored brackets `[E1,E2]`, `[E1,E3]`, `[E2,E3]`.
    pub fn brackets(&self) -> &[Vector3; 3] {
        &self.brackets
    }

    /// `[E_i, E_j]` for zero-based indices.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vector3 {
        match (i, j) {
            (0, 1) => self.brackets[0],
            (0, 2) => self.brackets[1],
            (1, 2) => self.brackets[2],
            (1, 0) => -self.brackets[0],
            (2, 0) => -self.brackets[1],
            (2, 1) => -self.brackets[2],
            _ => Vector3::zeros(),
        }
    }

    /// Largest absolute structure constant.
    pub fn scale(&self) -> f64 {
        self.brackets
            .iter()
            .flat_map(|b| b.iter())
            .fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    /// Bilinear extension of the basis brackets.
    pub fn bracket(&self, u: &Vector3, v: &Vector3) -> Vector3 {
        PAIRS
            .iter()
            .zip(&self.brackets)
            .fold(Vector3::zeros(), |acc, (&(i, j), b)| {
                acc + b * (u[i] * v[j] - u[j] * v[i])
            })
    }

    /// Matrix of `ad_x` in the algebra basis (column `j` is `[x, E_j]`).
    pub fn ad(&self, x: &Vector3) -> Matrix3<f64> {
        Matrix3::from_columns(&[
            self.bracket(x, &Vector3::x()),
            self.bracket(x, &Vector3::y()),
            self.bracket(x, &Vector3::z()),
        ])
    }

    /// Max over basis triples of `|[E_i,[E_j,E_k]] + [E_j,[E_k,E_i]] + [E_k,[E_i,E_j]]|`.
    pub fn jacobi_defect(&self) -> f64 {
        let e = [Vector3::x(), Vector3::y(), Vector3::z()];
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let cyc = self.bracket(&e[i], &self.basis_bracket(j, k))
                        + self.bracket(&e[j], &self.basis_bracket(k, i))
                        + self.bracket(&e[k], &self.basis_bracket(i, j));
                    worst = worst.max(cyc.norm());
                }
            }
        }
        worst
    }

    /// Threshold used when deciding whether the Jacobi defect is zero.
    /// The defect is quadratic in the structure constants, so the tolerance
    /// scales with the square of their magnitude.
    pub fn jacobi_tolerance(&self) -> f64 {
        self.tolerance * self.scale().powi(2).max(1.0)
    }

    pub fn check_jacobi(&self) -> Result<()> {
        let defect = self.jacobi_defect();
        let tolerance = self.jacobi_tolerance();
        if defect > tolerance {
            Err(Error::JacobiViolation { defect, tolerance })
        } else {
            Ok(())
        }
    }

    /// Structure constants in the basis `E'_i = Σ_k P[k][i] E_k`
    /// (the columns of `p` are the new basis vectors).
    pub fn change_basis(&self, p: &Matrix3<f64>) -> Result<Self> {
        let det = p.determinant();
        if det.abs() <= self.tolerance {
            return Err(Error::SingularMatrix { det });
        }
        let cond = condition_number(p);
        if cond > MAX_CONDITION {
            return Err(Error::IllConditioned {
                cond,
                limit: MAX_CONDITION,
            });
        }
        let inv = p.try_inverse().ok_or(Error::SingularMatrix { det })?;
        let col = |i: usize| p.column(i).into_owned();
        let new = |i: usize, j: usize| inv * self.bracket(&col(i), &col(j));
        Ok(Self {
            brackets: [new(0, 1), new(0, 2), new(1, 2)],
            tolerance: self.tolerance,
        })
    }

    /// `[g, g]`, with an orthonormal basis chosen from the singular vectors.
    pub fn derived_algebra(&self) -> Subspace {
        let m = Matrix3::from_columns(&self.brackets);
        let svd = m.svd(true, false);
        let u = svd.u.expect("requested U");
        let mut order: Vec<usize> = (0..3).collect();
        order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
        let top = svd.singular_values[order[0]];
        let basis = if top <= self.tolerance {
            Vec::new()
        } else {
            order
                .iter()
                .filter(|&&i| svd.singular_values[i] > self.tolerance * top)
                .map(|&i| canonical_sign(u.column(i).into_owned()))
                .collect()
        };
        Subspace { basis }
    }

    /// Matrix of `ad_x` restricted to `s`, in the basis of `s`
    /// (column `j` holds the coordinates of `[x, s_j]`).
    pub fn ad_matrix(&self, x: &Vector3, s: &Subspace) -> Result<DMatrix<f64>> {
        let k = s.dim();
        let mut out = DMatrix::zeros(k, k);
        if k == 0 {
            return Ok(out);
        }
        let ad = self.ad(x);
        let scale = ad.norm().max(1.0);
        for (j, b) in s.basis.iter().enumerate() {
            let image = ad * b;
            let (coords, residual) = s.coordinates(&image);
            if residual > self.tolerance * scale * b.norm().max(1.0) {
                return Err(Error::NotInvariantSubspace { residual });
            }
            out.set_column(j, &coords);
        }
        Ok(out)
    }

    /// `K(x, y) = tr(ad_x ad_y)` in the algebra basis.
    pub fn killing_form(&self) -> SymMatrix3 {
        let ads = [
            self.ad(&Vector3::x()),
            self.ad(&Vector3::y()),
            self.ad(&Vector3::z()),
        ];
        let mut k = Matrix3::zeros();
        for i in 0..3 {
            for j in i..3 {
                let v = (ads[i] * ads[j]).trace();
                k[(i, j)] = v;
                k[(j, i)] = v;
            }
        }
        SymMatrix3(k)
    }
}

/// Ratio of extreme singular values.
pub fn condition_number(p: &Matrix3<f64>) -> f64 {
    let sv = p.singular_values();
    let max = sv.max();
    let min = sv.min();
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Flips `v` so that its largest-magnitude entry is positive.
fn canonical_sign(v: Vector3) -> Vector3 {
    let lead = v.iter().fold(0.0_f64, |m, &x| if x.abs() > m.abs() { x } else { m });
    if lead < 0.0 {
        -v
    } else {
        v
    }
}

/// A linear subspace of the algebra, held by a linearly independent basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    basis: Vec<Vector3>,
}

impl Subspace {
    /// Validates independence through the singular values of the basis matrix.
    pub fn new(basis: Vec<Vector3>, tolerance: f64) -> Result<Self> {
        if basis.len() > 3 {
            return Err(Error::DependentBasis);
        }
        if !basis.is_empty() {
            let m = DMatrix::from_columns(&basis.iter().map(|v| DVector::from_column_slice(v.as_slice())).collect::<Vec<_>>());
            let sv = m.singular_values();
            let max = sv.max();
            if max <= tolerance || sv.min() <= tolerance * max {
                return Err(Error::DependentBasis);
            }
        }
        Ok(Self { basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector3] {
        &self.basis
    }

    /// Least-squares coordinates of `v` in this basis and the residual norm.
    pub fn coordinates(&self, v: &Vector3) -> (DVector<f64>, f64) {
        let k = self.dim();
        if k == 0 {
            return (DVector::zeros(0), v.norm());
        }
        let b = DMatrix::from_fn(3, k, |r, c| self.basis[c][r]);
        let rhs = DVector::from_column_slice(v.as_slice());
        let svd = b.clone().svd(true, true);
        let coords = svd
            .solve(&rhs, f64::EPSILON)
            .unwrap_or_else(|_| DVector::zeros(k));
        let residual = (&b * &coords - rhs).norm();
        (coords, residual)
    }

    /// Distance from `v` to the subspace.
    pub fn residual(&self, v: &Vector3) -> f64 {
        self.coordinates(v).1
    }
}

/// A symmetric 3×3 matrix (symmetric by construction).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymMatrix3(Matrix3<f64>);

impl SymMatrix3 {
    /// Symmetrizes `m`.
    pub fn from_matrix(m: &Matrix3<f64>) -> Self {
        Self((m + m.transpose()) * 0.5)
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 3] {
        let e = SymmetricEigen::new(self.0).eigenvalues;
        let mut v = [e[0], e[1], e[2]];
        v.sort_by(f64::total_cmp);
        v
    }

    /// `Pᵀ K P`, the form expressed in the basis given by the columns of `p`.
    pub fn congruent(&self, p: &Matrix3<f64>) -> Self {
        Self::from_matrix(&(p.transpose() * self.0 * p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: f64, y: f64, z: f64) -> Vector3 {
        Vector3::new(x, y, z)
    }

    fn sl2() -> LieAlgebra3 {
        LieAlgebra3::new(v(1.0, 0.0, 0.0), v(0.0, -2.0, 0.0), v(0.0, 0.0, 1.0))
    }

    fn su2() -> LieAlgebra3 {
        LieAlgebra3::new(v(0.0, 0.0, 1.0), v(0.0, -1.0, 0.0), v(1.0, 0.0, 0.0))
    }

    #[test]
    fn heisenberg_bracket() {
        let h = LieAlgebra3::heisenberg();
        assert_eq!(h.bracket(&Vector3::x(), &Vector3::y()), Vector3::z());
        let u = v(0.3, -1.0, 2.0);
        assert_eq!(h.bracket(&u, &u), Vector3::zeros());
    }

    #[test]
    fn sl2_bracket_expands_bilinearly() {
        let got = sl2().bracket(&v(1.0, 1.0, 0.0), &Vector3::z());
        assert_eq!(got, v(0.0, -2.0, 1.0));
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(LieAlgebra3::heisenberg().jacobi_defect(), 0.0);
        assert_eq!(su2().jacobi_defect(), 0.0);
        let bad = LieAlgebra3::new(v(0.0, 0.0, 1.0), v(1.0, 0.0, 0.0), Vector3::zeros());
        assert!((bad.jacobi_defect() - 1.0).abs() < 1e-15);
        assert!(matches!(bad.check_jacobi(), Err(Error::JacobiViolation { .. })));
    }

    #[test]
    fn change_basis_identity_and_scaling() {
        let h = LieAlgebra3::heisenberg();
        assert_eq!(h.change_basis(&Matrix3::identity()).unwrap(), h);
        let p = Matrix3::from_diagonal(&v(1.0, 1.0, 2.0));
        let scaled = h.change_basis(&p).unwrap();
        assert_eq!(scaled.brackets()[0], v(0.0, 0.0, 0.5));
    }

    #[test]
    fn change_basis_rejects_singular_and_ill_conditioned() {
        let h = LieAlgebra3::heisenberg();
        let singular = Matrix3::from_diagonal(&v(1.0, 1.0, 0.0));
        assert!(matches!(h.change_basis(&singular), Err(Error::SingularMatrix { .. })));
        let ill = Matrix3::from_diagonal(&v(1.0, 1.0, 1e-9));
        assert!(matches!(h.change_basis(&ill), Err(Error::SingularMatrix { .. })));
        let ill = Matrix3::from_diagonal(&v(1e5, 1.0, 1e-4));
        assert!(matches!(h.change_basis(&ill), Err(Error::IllConditioned { .. })));
    }

    #[test]
    fn algebra_b_maps_to_sl2_relations() {
        let k = 1.7;
        let b = LieAlgebra3::new(v(0.0, 0.0, 1.0), v(0.0, k, 0.0), v(k, 0.0, 0.0));
        let p = Matrix3::from_columns(&[v(1.0, 1.0, 0.0), v(0.0, 0.0, 1.0 / k), v(1.0 / k, -1.0 / k, 0.0)]);
        let e = b.change_basis(&p).unwrap();
        for (got, want) in e.brackets().iter().zip(sl2().brackets()) {
            assert!((got - want).norm() < 1e-12);
        }
    }

    #[test]
    fn derived_algebra_dimensions() {
        let d = LieAlgebra3::heisenberg().derived_algebra();
        assert_eq!(d.dim(), 1);
        assert!((d.basis()[0] - Vector3::z()).norm() < 1e-14);
        let l32 = LieAlgebra3::new(Vector3::zeros(), v(1.0, 0.0, 0.0), v(0.0, -0.5, 0.0));
        let d = l32.derived_algebra();
        assert_eq!(d.dim(), 2);
        assert!(d.residual(&Vector3::x()) < 1e-14 && d.residual(&Vector3::y()) < 1e-14);
        assert_eq!(sl2().derived_algebra().dim(), 3);
        assert_eq!(LieAlgebra3::abelian().derived_algebra().dim(), 0);
    }

    #[test]
    fn ad_matrix_on_l33() {
        let l33 = LieAlgebra3::new(Vector3::zeros(), v(1.0, 0.0, 0.0), v(1.0, 1.0, 0.0));
        let s = Subspace::new(vec![Vector3::x(), Vector3::y()], 1e-9).unwrap();
        let m = l33.ad_matrix(&-Vector3::z(), &s).unwrap();
        let want = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]);
        assert!((m - want).norm() < 1e-14);
    }

    #[test]
    fn ad_matrix_on_degenerate_solution_two() {
        let tau = 1.3;
        let alg = LieAlgebra3::new(v(tau, -tau, 1.0), v(1.0, -1.0, 0.0), v(1.0, -1.0, 0.0));
        let s = Subspace::new(vec![v(1.0, -1.0, 0.0), Vector3::z()], 1e-9).unwrap();
        let m = alg.ad_matrix(&Vector3::x(), &s).unwrap();
        let want = DMatrix::from_row_slice(2, 2, &[-tau, 1.0, -1.0, 0.0]);
        assert!((m - want).norm() < 1e-13);
    }

    #[test]
    fn ad_matrix_errors_and_abelian() {
        let s = Subspace::new(vec![Vector3::x()], 1e-9).unwrap();
        let m = LieAlgebra3::abelian().ad_matrix(&v(1.0, 2.0, 3.0), &s).unwrap();
        assert_eq!(m, DMatrix::zeros(1, 1));
        let err = LieAlgebra3::heisenberg().ad_matrix(&Vector3::y(), &s);
        assert!(matches!(err, Err(Error::NotInvariantSubspace { .. })));
    }

    #[test]
    fn subspace_rejects_dependent_vectors() {
        let r = Subspace::new(vec![v(1.0, 2.0, 3.0), v(2.0, 4.0, 6.0)], 1e-9);
        assert_eq!(r, Err(Error::DependentBasis));
    }

    #[test]
    fn killing_forms() {
        assert_eq!(*su2().killing_form().matrix(), Matrix3::identity() * -2.0);
        assert_eq!(*LieAlgebra3::abelian().killing_form().matrix(), Matrix3::zeros());
        let (kappa, chi) = (0.7, -1.3);
        let alg = LieAlgebra3::new(v(0.0, 0.0, 1.0), v(chi, kappa, 0.0), v(kappa, -chi, 0.0));
        let k = alg.killing_form();
        let want = Matrix3::new(
            2.0 * kappa, -2.0 * chi, 0.0,
            -2.0 * chi, -2.0 * kappa, 0.0,
            0.0, 0.0, 2.0 * (kappa * kappa + chi * chi),
        );
        assert!((k.matrix() - want).norm() < 1e-12);
    }
}
