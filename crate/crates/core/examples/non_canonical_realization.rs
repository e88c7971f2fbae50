// Two structures with h = 0 and κ = 4 live on different groups: algebra B is
// sl(2), algebra A is aff(1) ⊕ R. They are locally isometric, so the table row
// is the same and algebra A is reported as a non-canonical realization.

use sublorentz::{classify, construct_from_invariants, HClass, SolutionId};

fn main() {
    for (solution, aux) in [(SolutionId::AlgebraB, None), (SolutionId::AlgebraA, Some(0.0))] {
        let s = construct_from_invariants(HClass::Zero, 4.0, aux, solution).unwrap();
        let r = classify(&s).unwrap();
        println!(
            "{}: {:?} -> row expects {}, realized {}, {:?}",
            solution.name(),
            s.sf,
            r.row.expected_algebra,
            r.realized_algebra,
            r.status
        );
    }
}
