// Every model algebra, written in a skewed basis, is recognized again.

use nalgebra::Matrix3;
use sublorentz::{canonical_model, recognize, LieAlgebraClass};

fn main() {
    let p = Matrix3::new(0.9, -0.4, 0.3, 0.2, 1.1, -0.7, -0.5, 0.6, 0.8);
    let classes = [
        LieAlgebraClass::L30,
        LieAlgebraClass::L31,
        LieAlgebraClass::L3Minus1,
        LieAlgebraClass::L32 { eta: -0.5 },
        LieAlgebraClass::L32 { eta: 1.0 },
        LieAlgebraClass::L33,
        LieAlgebraClass::L34 { eta: 0.75 },
        LieAlgebraClass::L35,
        LieAlgebraClass::L36,
    ];
    for class in classes {
        let disguised = canonical_model(&class).unwrap().change_basis(&p).unwrap();
        let r = recognize(&disguised).unwrap();
        println!(
            "{:<12} -> {:<20} derived dim {}, Killing eigenvalues {:?}",
            class.to_string(),
            r.class.to_string(),
            disguised.derived_algebra().dim(),
            disguised.killing_form().eigenvalues().map(|e| (e * 1e6).round() / 1e6),
        );
    }
}
