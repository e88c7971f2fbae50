// First prolongation of graded symbols: it vanishes for the Heisenberg
// algebra with the boost as degree-zero part, so the symmetry algebra of a
// sub-Lorentzian contact structure is at most 4-dimensional.

use sublorentz::prolongation::{prolongation_dim, GradedSymbol};

fn main() {
    let symbols = [
        ("Heisenberg + boost", GradedSymbol::heisenberg_boost()),
        ("Heisenberg alone", GradedSymbol::heisenberg(vec![]).unwrap()),
        ("line + scalars", GradedSymbol::line_with_scalars()),
    ];
    for (name, s) in &symbols {
        let (n1, n2) = s.dims();
        println!("{name:<20} dims ({n1}, {n2}), dim g0 = {}: first prolongation {}", s.generators().len(), prolongation_dim(s));
    }
}
