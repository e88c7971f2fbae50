// κ is boost invariant while h moves along its SO(1,1) orbit; the normal
// form and τ are recovered from any boosted frame.

use sublorentz::frame::{boost, AdaptedStructure, StructureFunctions};
use sublorentz::invariants::{curvature_gauge, h_tensor, kappa, normalize_h, so11_conjugate, tau};

fn main() {
    // Degenerate h with τ = 0.7.
    let sf = StructureFunctions { c: 1.0, c213: -1.0, c123: 1.0, c112: 0.7, c212: -0.7 };
    let s = AdaptedStructure::from_structure_functions(&sf, 1e-9).expect("adapted frame");
    println!("curvature: {:?}", curvature_gauge(&s));

    for t in [-1.0, 0.0, 0.4, 1.1] {
        let b = boost(&s, t).expect("boosted frame");
        let h = h_tensor(&b);
        let predicted = so11_conjugate(&h_tensor(&s), t);
        let form = normalize_h(&h, 1e-9);
        println!(
            "t = {t:5.2}: kappa = {:.12}, h = ({:.6}, {:.6}) predicted ({:.6}, {:.6}), {} , tau = {:.12}",
            kappa(&b),
            h.a,
            h.b,
            predicted.a,
            predicted.b,
            form.class.name(),
            tau(&b).expect("degenerate h"),
        );
    }
}
