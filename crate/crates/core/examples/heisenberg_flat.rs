// The Heisenberg group with its standard contact plane is the flat model:
// h = 0, κ = 0, and the table row names L(3,1) itself.

use sublorentz::frame::{adapt, MetricOnH, OrientationFlags};
use sublorentz::{classify, invariant_set, LieAlgebra3, Vector3};

fn main() {
    let alg = LieAlgebra3::heisenberg();
    let s = adapt(&alg, &[Vector3::x(), Vector3::y()], &MetricOnH::minkowski(), OrientationFlags::default())
        .expect("the plane span{E1, E2} is contact");
    let inv = invariant_set(&s).expect("invariants");
    println!("structure functions: {:?}", s.sf);
    println!("kappa = {}, h = ({}, {}), class {}", inv.kappa, inv.h.a, inv.h.b, inv.hform.class.name());

    let report = classify(&s).expect("a Lie algebra");
    println!("row: {}", report.row.id.condition());
    println!("expected {}, realized {}, {:?}", report.row.expected_algebra, report.realized_algebra, report.status);
}
