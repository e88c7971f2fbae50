//! Adapted frames for a left-invariant contact distribution with a Lorentzian
//! metric: orthonormalization of the distribution, the normalized contact
//! form, its Reeb vector and the resulting structure functions.
//!
//! Conventions: `g(X1,X1) = -1`, `g(X1,X2) = 0`, `g(X2,X2) = 1`,
//! `η([X2,X1]) = 1`, `η(X3) = -1`, and `X3` is annihilated by `dη`. In such a
//! frame
//!
//! ```text
//! [X1,X3] = c X1 + c2_13 X2
//! [X2,X3] = c1_23 X1 - c X2
//! [X1,X2] = c1_12 X1 + c2_12 X2 + X3
//! ```

use nalgebra::{Matrix2, Matrix3, SymmetricEigen, Vector2};
use serde::{Deserialize, Serialize};

use crate::algebra::{LieAlgebra3, Vector3};
use crate::error::{Error, Result};

/// Gram matrix of the metric on a basis of H.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricOnH {
    gram: Matrix2<f64>,
}

impl MetricOnH {
    /// Accepts a symmetric matrix with one negative and one positive eigenvalue.
    pub fn new(gram: Matrix2<f64>, tolerance: f64) -> Result<Self> {
        let scale = gram.abs().max().max(f64::MIN_POSITIVE);
        if (gram[(0, 1)] - gram[(1, 0)]).abs() > tolerance * scale {
            return Err(Error::Input("metric Gram matrix is not symmetric".into()));
        }
        let eig = SymmetricEigen::new(gram).eigenvalues;
        let (lo, hi) = if eig[0] <= eig[1] { (eig[0], eig[1]) } else { (eig[1], eig[0]) };
        if lo >= -tolerance * scale || hi <= tolerance * scale {
            return Err(Error::SignatureMismatch(lo, hi));
        }
        Ok(Self { gram })
    }

    /// The standard form `diag(-1, 1)`.
    pub fn minkowski() -> Self {
        Self {
            gram: Matrix2::new(-1.0, 0.0, 0.0, 1.0),
        }
    }

    pub fn gram(&self) -> &Matrix2<f64> {
        &self.gram
    }

    fn pair(&self, u: &Vector2<f64>, w: &Vector2<f64>) -> f64 {
        (u.transpose() * self.gram * w)[0]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn from_sign(sign: i64) -> Result<Self> {
        match sign {
            1 => Ok(Self::Positive),
            -1 => Ok(Self::Negative),
            other => Err(Error::Input(format!("orientation must be +1 or -1, got {other}"))),
        }
    }

    pub fn sign(self) -> f64 {
        match self {
            Self::Positive => 1.0,
            Self::Negative => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Self::Positive => Self::Negative,
            Self::Negative => Self::Positive,
        }
    }
}

/// Time orientation selects the sign of `X1`, space orientation that of `X2`.
///
/// The reference representative of each leg is the one whose largest
/// coefficient in the given basis of H is positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrientationFlags {
    pub time: Orientation,
    pub space: Orientation,
}

impl Default for OrientationFlags {
    fn default() -> Self {
        Self {
            time: Orientation::Positive,
            space: Orientation::Positive,
        }
    }
}

/// Which legs of the frame to reverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flip {
    Time,
    Space,
    Both,
}

/// The five independent structure functions of an adapted frame
/// (`c = c1_13 = -c2_23`).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct StructureFunctions {
    pub c: f64,
    pub c213: f64,
    pub c123: f64,
    pub c112: f64,
    pub c212: f64,
}

impl StructureFunctions {
    /// The algebra whose basis `(E1, E2, E3)` is this adapted frame.
    pub fn algebra(&self) -> LieAlgebra3 {
        LieAlgebra3::new(
            Vector3::new(self.c112, self.c212, 1.0),
            Vector3::new(self.c, self.c213, 0.0),
            Vector3::new(self.c123, -self.c, 0.0),
        )
    }

    pub fn scale(&self) -> f64 {
        [self.c, self.c213, self.c123, self.c112, self.c212]
            .iter()
            .fold(1.0_f64, |m, x| m.max(x.abs()))
    }
}

/// Numerical residuals of a frame adaptation.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct FrameResiduals {
    /// `|c1_13 + c2_23|`
    pub trace: f64,
    /// Residual of the linear solve for `X3`.
    pub reeb: f64,
    /// `X3`-components of `[X1,X3]` and `[X2,X3]`.
    pub transversal: f64,
    /// Deviation of the `X3`-coefficient of `[X1,X2]` from 1.
    pub normalization: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdaptedStructure {
    pub alg: LieAlgebra3,
    pub x1: Vector3,
    pub x2: Vector3,
    pub x3: Vector3,
    pub sf: StructureFunctions,
    pub flags: OrientationFlags,
    /// The contact form as a covector in the algebra basis.
    pub eta: Vector3,
    pub residuals: FrameResiduals,
}

impl AdaptedStructure {
    /// The structure whose frame is the basis of [`StructureFunctions::algebra`].
    pub fn from_structure_functions(sf: &StructureFunctions, tolerance: f64) -> Result<Self> {
        let alg = sf.algebra().with_tolerance(tolerance);
        reeb_frame(&alg, &Vector3::x(), &Vector3::y())
    }

    pub fn tolerance(&self) -> f64 {
        self.alg.tolerance()
    }

    pub fn frame(&self) -> Matrix3<f64> {
        Matrix3::from_columns(&[self.x1, self.x2, self.x3])
    }
}

/// Pseudo-Gram-Schmidt on H: the timelike leg comes from the negative
/// eigendirection of the Gram matrix, the spacelike leg from the positive one
/// after projecting out the timelike component.
pub fn orthonormalize_h(
    alg: &LieAlgebra3,
    h_basis: &[Vector3; 2],
    g: &MetricOnH,
    flags: OrientationFlags,
) -> Result<(Vector3, Vector3)> {
    let tol = alg.tolerance();
    check_independent(&h_basis[0], &h_basis[1], tol)?;

    let eig = SymmetricEigen::new(*g.gram());
    let (neg, pos) = if eig.eigenvalues[0] < eig.eigenvalues[1] { (0, 1) } else { (1, 0) };
    let (lo, hi) = (eig.eigenvalues[neg], eig.eigenvalues[pos]);
    let scale = lo.abs().max(hi.abs());
    if lo >= -tol * scale || hi <= tol * scale {
        return Err(Error::SignatureMismatch(lo, hi));
    }

    let mut u: Vector2<f64> = eig.eigenvectors.column(neg).into_owned();
    u /= (-g.pair(&u, &u)).sqrt();
    u = lead_positive(u) * flags.time.sign();

    let mut w: Vector2<f64> = eig.eigenvectors.column(pos).into_owned();
    w += u * g.pair(&w, &u);
    w /= g.pair(&w, &w).sqrt();
    w = lead_positive(w) * flags.space.sign();

    let combine = |c: &Vector2<f64>| h_basis[0] * c[0] + h_basis[1] * c[1];
    Ok((combine(&u), combine(&w)))
}

fn lead_positive(v: Vector2<f64>) -> Vector2<f64> {
    let lead = if v[1].abs() > v[0].abs() { v[1] } else { v[0] };
    if lead < 0.0 {
        -v
    } else {
        v
    }
}

fn check_independent(a: &Vector3, b: &Vector3, tol: f64) -> Result<()> {
    let m = nalgebra::Matrix3x2::from_columns(&[*a, *b]);
    let sv = m.singular_values();
    let max = sv.max();
    if max <= tol || sv.min() <= tol * max {
        return Err(Error::DegenerateDistribution);
    }
    Ok(())
}

/// Completes an orthonormal pair `(X1, X2)` of H to the adapted frame.
/// The result carries default `(+,+)` orientation flags.
pub fn reeb_frame(alg: &LieAlgebra3, x1: &Vector3, x2: &Vector3) -> Result<AdaptedStructure> {
    let tol = alg.tolerance();
    check_independent(x1, x2, tol)?;

    let z = alg.bracket(x1, x2);
    let span = Matrix3::from_columns(&[*x1, *x2, z]).singular_values();
    if span.min() <= tol * span.max() {
        return Err(Error::ContactViolation);
    }

    // η kills H and satisfies η([X2,X1]) = 1, i.e. η([X1,X2]) = -1.
    let normal = x1.cross(x2);
    let eta = -normal / normal.dot(&z);

    // η(X3) = -1 and η([X3, Xi]) = 0 for i = 1, 2.
    let rows = Matrix3::from_rows(&[
        eta.transpose(),
        eta.transpose() * alg.ad(x1),
        eta.transpose() * alg.ad(x2),
    ]);
    let rhs = Vector3::new(-1.0, 0.0, 0.0);
    let sv = rows.singular_values();
    if sv.min() <= tol * sv.max() {
        return Err(Error::ReebSolveFailure);
    }
    let x3 = rows.lu().solve(&rhs).ok_or(Error::ReebSolveFailure)?;
    let reeb = (rows * x3 - rhs).norm();

    let frame = Matrix3::from_columns(&[*x1, *x2, x3]);
    let inv = frame.try_inverse().ok_or(Error::ReebSolveFailure)?;
    let b13 = inv * alg.bracket(x1, &x3);
    let b23 = inv * alg.bracket(x2, &x3);
    let b12 = inv * z;

    let sf = StructureFunctions {
        c: b13[0],
        c213: b13[1],
        c123: b23[0],
        c112: b12[0],
        c212: b12[1],
    };
    let trace = (b13[0] + b23[1]).abs();
    if trace > tol * sf.scale() {
        return Err(Error::TraceConstraint { residual: trace });
    }

    Ok(AdaptedStructure {
        alg: alg.clone(),
        x1: *x1,
        x2: *x2,
        x3,
        sf,
        flags: OrientationFlags::default(),
        eta,
        residuals: FrameResiduals {
            trace,
            reeb,
            transversal: b13[2].abs().max(b23[2].abs()),
            normalization: (b12[2] - 1.0).abs(),
        },
    })
}

/// Orthonormalizes the given basis of H and builds the adapted frame.
pub fn adapt(
    alg: &LieAlgebra3,
    h_basis: &[Vector3; 2],
    g: &MetricOnH,
    flags: OrientationFlags,
) -> Result<AdaptedStructure> {
    let (x1, x2) = orthonormalize_h(alg, h_basis, g, flags)?;
    let mut s = reeb_frame(alg, &x1, &x2)?;
    s.flags = flags;
    Ok(s)
}

/// Reverses the time and/or space leg and recomputes the frame.
pub fn flip_orientation(s: &AdaptedStructure, which: Flip) -> Result<AdaptedStructure> {
    let (flip_time, flip_space) = match which {
        Flip::Time => (true, false),
        Flip::Space => (false, true),
        Flip::Both => (true, true),
    };
    let x1 = if flip_time { -s.x1 } else { s.x1 };
    let x2 = if flip_space { -s.x2 } else { s.x2 };
    let mut out = reeb_frame(&s.alg, &x1, &x2)?;
    out.flags = OrientationFlags {
        time: if flip_time { s.flags.time.flipped() } else { s.flags.time },
        space: if flip_space { s.flags.space.flipped() } else { s.flags.space },
    };
    Ok(out)
}

/// Applies the boost `X1' = cosh t X1 + sinh t X2`, `X2' = sinh t X1 + cosh t X2`.
pub fn boost(s: &AdaptedStructure, t: f64) -> Result<AdaptedStructure> {
    let (sh, ch) = (t.sinh(), t.cosh());
    let x1 = s.x1 * ch + s.x2 * sh;
    let x2 = s.x1 * sh + s.x2 * ch;
    let mut out = reeb_frame(&s.alg, &x1, &x2)?;
    out.flags = s.flags;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: f64, y: f64, z: f64) -> Vector3 {
        Vector3::new(x, y, z)
    }

    fn algebra_b(gamma: f64) -> LieAlgebra3 {
        LieAlgebra3::new(v(0.0, 0.0, 1.0), v(0.0, gamma, 0.0), v(gamma, 0.0, 0.0))
    }

    fn close(a: &StructureFunctions, b: &StructureFunctions, tol: f64) -> bool {
        (a.c - b.c).abs() < tol
            && (a.c213 - b.c213).abs() < tol
            && (a.c123 - b.c123).abs() < tol
            && (a.c112 - b.c112).abs() < tol
            && (a.c212 - b.c212).abs() < tol
    }

    #[test]
    fn orthonormal_basis_is_kept() {
        let alg = LieAlgebra3::heisenberg();
        let basis = [v(1.0, 0.5, 0.0), v(0.0, 1.0, 2.0)];
        let (x1, x2) = orthonormalize_h(&alg, &basis, &MetricOnH::minkowski(), Default::default()).unwrap();
        assert!((x1 - basis[0]).norm() < 1e-15);
        assert!((x2 - basis[1]).norm() < 1e-15);
    }

    #[test]
    fn timelike_leg_is_rescaled() {
        let alg = LieAlgebra3::heisenberg();
        let basis = [Vector3::x(), Vector3::y()];
        let g = MetricOnH::new(Matrix2::new(-4.0, 0.0, 0.0, 1.0), 1e-9).unwrap();
        let (x1, x2) = orthonormalize_h(&alg, &basis, &g, Default::default()).unwrap();
        assert!((x1 - Vector3::x() * 0.5).norm() < 1e-15);
        assert!((x2 - Vector3::y()).norm() < 1e-15);
    }

    #[test]
    fn general_metric_gives_orthonormal_pair() {
        let alg = LieAlgebra3::heisenberg();
        let basis = [v(1.0, 0.0, 0.0), v(0.0, 1.0, 0.0)];
        let gram = Matrix2::new(1.0, 2.0, 2.0, 0.5);
        let g = MetricOnH::new(gram, 1e-9).unwrap();
        let flags = OrientationFlags { time: Orientation::Negative, space: Orientation::Positive };
        let (x1, x2) = orthonormalize_h(&alg, &basis, &g, flags).unwrap();
        let pair = |a: &Vector3, b: &Vector3| (Vector2::new(a[0], a[1]).transpose() * gram * Vector2::new(b[0], b[1]))[0];
        assert!((pair(&x1, &x1) + 1.0).abs() < 1e-12);
        assert!(pair(&x1, &x2).abs() < 1e-12);
        assert!((pair(&x2, &x2) - 1.0).abs() < 1e-12);
        let (y1, _) = orthonormalize_h(&alg, &basis, &g, Default::default()).unwrap();
        assert!((x1 + y1).norm() < 1e-15);
    }

    #[test]
    fn signature_and_degeneracy_errors() {
        assert!(matches!(
            MetricOnH::new(Matrix2::identity(), 1e-9),
            Err(Error::SignatureMismatch(..))
        ));
        let alg = LieAlgebra3::heisenberg();
        let r = orthonormalize_h(&alg, &[v(1.0, 1.0, 0.0), v(2.0, 2.0, 0.0)], &MetricOnH::minkowski(), Default::default());
        assert_eq!(r, Err(Error::DegenerateDistribution));
    }

    #[test]
    fn heisenberg_frame_is_flat() {
        let s = reeb_frame(&LieAlgebra3::heisenberg(), &Vector3::x(), &Vector3::y()).unwrap();
        assert!((s.x3 - Vector3::z()).norm() < 1e-15);
        assert_eq!(s.sf, StructureFunctions::default());
        assert!((s.eta.dot(&s.alg.bracket(&s.x2, &s.x1)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn algebra_b_structure_functions() {
        let s = reeb_frame(&algebra_b(2.5), &Vector3::x(), &Vector3::y()).unwrap();
        let want = StructureFunctions { c: 0.0, c213: 2.5, c123: 2.5, c112: 0.0, c212: 0.0 };
        assert!(close(&s.sf, &want, 1e-14));
    }

    #[test]
    fn abelian_is_not_contact() {
        let r = reeb_frame(&LieAlgebra3::abelian(), &Vector3::x(), &Vector3::y());
        assert_eq!(r, Err(Error::ContactViolation));
    }

    #[test]
    fn frame_normalizations_hold_in_a_skewed_basis() {
        // su(2) in a non-orthogonal basis with a non-orthonormal H basis.
        let su2 = LieAlgebra3::new(v(0.0, 0.0, 1.0), v(0.0, -1.0, 0.0), v(1.0, 0.0, 0.0));
        let p = Matrix3::new(1.0, 0.3, -0.2, 0.1, 2.0, 0.5, 0.0, -0.4, 1.5);
        let alg = su2.change_basis(&p).unwrap();
        let basis = [v(1.0, 0.2, 0.0), v(-0.3, 1.0, 0.4)];
        let g = MetricOnH::new(Matrix2::new(-2.0, 0.3, 0.3, 1.0), 1e-9).unwrap();
        let s = adapt(&alg, &basis, &g, Default::default()).unwrap();
        assert!(s.eta.dot(&s.x1).abs() < 1e-12 && s.eta.dot(&s.x2).abs() < 1e-12);
        assert!((s.eta.dot(&s.x3) + 1.0).abs() < 1e-12);
        assert!((s.eta.dot(&alg.bracket(&s.x2, &s.x1)) - 1.0).abs() < 1e-12);
        let r = alg.bracket(&s.x1, &s.x2) - s.x1 * s.sf.c112 - s.x2 * s.sf.c212 - s.x3;
        assert!(r.norm() < 1e-12);
        assert!(s.residuals.trace < 1e-12 && s.residuals.transversal < 1e-12);
    }

    #[test]
    fn rescaling_the_transversal_basis_vector_does_not_change_the_frame() {
        let alg = algebra_b(1.5);
        let s = reeb_frame(&alg, &Vector3::x(), &Vector3::y()).unwrap();
        let p = Matrix3::from_diagonal(&v(1.0, 1.0, 7.0));
        let scaled = alg.change_basis(&p).unwrap();
        let t = reeb_frame(&scaled, &Vector3::x(), &Vector3::y()).unwrap();
        assert!(close(&s.sf, &t.sf, 1e-13));
        assert!((t.x3 - Vector3::z() / 7.0).norm() < 1e-14);
    }

    #[test]
    fn orientation_flips() {
        let h = reeb_frame(&LieAlgebra3::heisenberg(), &Vector3::x(), &Vector3::y()).unwrap();
        assert_eq!(flip_orientation(&h, Flip::Both).unwrap().sf, h.sf);

        // Degenerate h with c = -1 (solution-one brackets with time reversed).
        let sf = StructureFunctions { c: -1.0, c213: 1.0, c123: -1.0, c112: 0.4, c212: -0.4 };
        let s = AdaptedStructure::from_structure_functions(&sf, 1e-9).unwrap();
        let f = flip_orientation(&s, Flip::Time).unwrap();
        assert!((f.sf.c - 1.0).abs() < 1e-14);
        assert_eq!(f.flags.time, Orientation::Negative);
        let back = flip_orientation(&f, Flip::Time).unwrap();
        assert!(close(&back.sf, &s.sf, 1e-12));
        assert_eq!(back.flags, s.flags);

        let both = flip_orientation(&s, Flip::Both).unwrap();
        let want = StructureFunctions { c112: -sf.c112, c212: -sf.c212, ..sf };
        assert!(close(&both.sf, &want, 1e-14));
    }
}
