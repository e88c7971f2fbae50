// One structure per solution branch, built from its invariants and
// classified back.

use sublorentz::{classify, construct_from_invariants, HClass, SolutionId};

fn main() {
    let cases = [
        (HClass::Zero, 0.0, Some(0.0), SolutionId::AlgebraA),
        (HClass::Zero, 1.5, None, SolutionId::AlgebraB),
        (HClass::DegeneratePM, 0.0, Some(1.0), SolutionId::Degenerate1),
        (HClass::DegeneratePP, 0.0, Some(2.0), SolutionId::Degenerate2),
        (HClass::DegenerateMP, 0.0, Some(1.0), SolutionId::Degenerate2),
        (HClass::DegenerateMM, -2.0, None, SolutionId::Degenerate3),
        (HClass::DetPos, 0.0, Some(-1.0), SolutionId::DetPos1),
        (HClass::DetPos, 3.0, Some(1.0), SolutionId::DetPos1),
        (HClass::DetPos, 7.0, Some(-1.0), SolutionId::DetPos2),
        (HClass::DetPos, -3.0, Some(0.5), SolutionId::DetPos3),
        (HClass::DetNeg, 2.0, Some(0.5), SolutionId::DetNeg),
    ];
    for (h, kappa, aux, solution) in cases {
        let s = construct_from_invariants(h, kappa, aux, solution).expect("feasible parameters");
        let r = classify(&s).expect("a Lie algebra");
        println!(
            "{:<13} {:<14} kappa {:>5} aux {:>6}: {:<20} {:<55} {:?}",
            solution.name(),
            h.name(),
            kappa,
            aux.map_or("-".to_string(), |a| a.to_string()),
            r.realized_algebra.to_string(),
            r.row.id.condition(),
            r.status,
        );
    }
}
