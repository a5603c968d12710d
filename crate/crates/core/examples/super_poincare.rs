//! The N=2 super-Poincare algebra over Q(i) with the Z_4 R-symmetry
//! `Q -> iQ`, `Qb -> -iQb`.
//!
//! ```text
//! cargo run --release --example super_poincare
//! ```

use std::time::Instant;

use supercohom::cli::{fixture, Workspace};
use supercohom::cochain::cohomology;
use supercohom::group::validate_action;
use supercohom::superalgebra::validate_superalgebra;

fn main() {
    let ws = Workspace::parse(fixture("super_poincare").unwrap()).unwrap();
    let l = ws.algebra.structure();
    println!("{}: dim {}", ws.title(), l.dim());
    println!("super Jacobi: {}", validate_superalgebra(l).ok());
    let rep = &ws.group.as_ref().unwrap().action;
    println!("Z_4 acts by automorphisms: {}", validate_action(rep, l).ok());
    for module in ["PQ", "adjoint"] {
        let m = &ws.modules[module].module;
        let sym = ws.symmetry(module);
        for n in 0..=1 {
            let t = Instant::now();
            let r = cohomology(n, l, m, sym.as_ref()).unwrap();
            println!(
                "H^{n}_G(L; {module}): even {}, odd {} ({:.2}s)",
                r.even.cohomology,
                r.odd.cohomology,
                t.elapsed().as_secs_f64()
            );
        }
    }
}
