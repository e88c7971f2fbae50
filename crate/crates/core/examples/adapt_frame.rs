// Frame adaptation from an arbitrary basis of the plane and an arbitrary
// Lorentzian Gram matrix, followed by orientation reversals.

use nalgebra::Matrix2;
use sublorentz::frame::{adapt, flip_orientation, Flip, MetricOnH, OrientationFlags};
use sublorentz::{LieAlgebra3, Vector3};

fn main() {
    // su(2): [A, B] = C, [B, C] = A, [C, A] = B.
    let alg = LieAlgebra3::new(Vector3::z(), -Vector3::y(), Vector3::x());
    let plane = [Vector3::new(1.0, 0.5, 0.0), Vector3::new(0.0, 1.0, -1.0)];
    let metric = MetricOnH::new(Matrix2::new(-2.0, 0.3, 0.3, 1.0), 1e-9).expect("signature (-,+)");

    let s = adapt(&alg, &plane, &metric, OrientationFlags::default()).expect("contact plane");
    println!("X1 = {:?}", s.x1.as_slice());
    println!("X2 = {:?}", s.x2.as_slice());
    println!("X3 = {:?} (Reeb field)", s.x3.as_slice());
    println!("contact form = {:?}", s.eta.as_slice());
    println!("structure functions: {:?}", s.sf);
    println!("residuals: {:?}", s.residuals);

    for flip in [Flip::Time, Flip::Space, Flip::Both] {
        let f = flip_orientation(&s, flip).expect("flipped frame");
        println!("{flip:?} flip: c = {:.6}, c1_12 = {:.6}, c2_12 = {:.6}", f.sf.c, f.sf.c112, f.sf.c212);
    }
}
