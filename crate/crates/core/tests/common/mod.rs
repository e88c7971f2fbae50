#![allow(dead_code)]

use nalgebra::{Matrix2, Matrix3};
use rand::Rng;
use sublorentz::algebra::condition_number;
use sublorentz::classifier::structure_functions_for;
use sublorentz::frame::{adapt, AdaptedStructure, MetricOnH, Orientation, OrientationFlags, StructureFunctions};
use sublorentz::{HClass, SolutionId, Vector3};

pub fn random_basis_change<R: Rng>(rng: &mut R, max_condition: f64) -> Matrix3<f64> {
    loop {
        let p = Matrix3::<f64>::from_fn(|_, _| rng.random_range(-1.0..1.0));
        if p.determinant().abs() > 1e-3 && condition_number(&p) < max_condition {
            return p;
        }
    }
}

fn random_chi<R: Rng>(rng: &mut R) -> f64 {
    let chi = rng.random_range(0.5..2.5);
    if rng.random_bool(0.5) { chi } else { -chi }
}

/// Invariants `(h class, κ, aux, solution)` accepted by the constructor.
pub fn random_parameters<R: Rng>(rng: &mut R) -> (HClass, f64, Option<f64>, SolutionId) {
    loop {
        let solution = SolutionId::ALL[rng.random_range(0..SolutionId::ALL.len())];
        let degenerate = [HClass::DegeneratePP, HClass::DegeneratePM, HClass::DegenerateMP, HClass::DegenerateMM];
        let h_class = match solution {
            SolutionId::Degenerate1 | SolutionId::Degenerate2 | SolutionId::Degenerate3 => {
                let admissible: Vec<HClass> = degenerate.into_iter().filter(|c| solution.admits(*c)).collect();
                admissible[rng.random_range(0..admissible.len())]
            }
            _ => solution.default_h_class(),
        };
        let kappa = rng.random_range(-3.0..3.0);
        let (kappa, aux) = match solution {
            SolutionId::AlgebraA => {
                let c112: f64 = rng.random_range(-2.0..2.0);
                (rng.random_range(-c112 * c112..3.0), Some(c112))
            }
            SolutionId::AlgebraB | SolutionId::Degenerate3 => (kappa, None),
            SolutionId::Degenerate1 | SolutionId::Degenerate2 => (0.0, Some(rng.random_range(-3.0..3.0))),
            SolutionId::DetPos2 => {
                let chi = random_chi(rng);
                (chi + rng.random_range(0.1..4.0), Some(chi))
            }
            SolutionId::DetPos3 => {
                let chi = random_chi(rng);
                (-chi - rng.random_range(0.1..4.0), Some(chi))
            }
            _ => (kappa, Some(random_chi(rng))),
        };
        if structure_functions_for(h_class, kappa, aux, solution).is_ok() {
            return (h_class, kappa, aux, solution);
        }
    }
}

/// The structure of `sf` presented in a random basis of the algebra, with a
/// random basis of the distribution and random orientation flags.
pub fn disguise<R: Rng>(rng: &mut R, sf: &StructureFunctions, max_condition: f64) -> AdaptedStructure {
    let p = random_basis_change(rng, max_condition);
    let alg = sf.algebra().change_basis(&p).expect("well-conditioned basis change");
    let p_inv = p.try_inverse().expect("invertible");
    let (x1, x2) = (p_inv * Vector3::x(), p_inv * Vector3::y());
    let mix = loop {
        let m = Matrix2::<f64>::from_fn(|_, _| rng.random_range(-1.0..1.0));
        if m.determinant().abs() > 0.2 {
            break m;
        }
    };
    let v1 = x1 * mix[(0, 0)] + x2 * mix[(1, 0)];
    let v2 = x1 * mix[(0, 1)] + x2 * mix[(1, 1)];
    let gram = mix.transpose() * Matrix2::new(-1.0, 0.0, 0.0, 1.0) * mix;
    let metric = MetricOnH::new(gram, alg.tolerance()).expect("Lorentzian Gram matrix");
    let sign = |rng: &mut R| if rng.random_bool(0.5) { Orientation::Positive } else { Orientation::Negative };
    let flags = OrientationFlags { time: sign(rng), space: sign(rng) };
    adapt(&alg, &[v1, v2], &metric, flags).expect("contact structure")
}

pub fn random_structure<R: Rng>(rng: &mut R, max_condition: f64) -> AdaptedStructure {
    let (h_class, kappa, aux, solution) = random_parameters(rng);
    let sf = structure_functions_for(h_class, kappa, aux, solution).unwrap();
    disguise(rng, &sf, max_condition)
}
