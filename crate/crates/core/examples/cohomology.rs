//! Dimensions of `H^n_G(L; M)` for the shipped workspaces.
//!
//! ```text
//! cargo run --release --example cohomology
//! ```

use supercohom::cli::{fixture, Workspace, ADJOINT};
use supercohom::cochain::{cohomology, derivations};

fn main() {
    for name in ["gl11_z2", "sl11", "gl21"] {
        let ws = Workspace::parse(fixture(name).unwrap()).unwrap();
        let m = &ws.modules[ADJOINT].module;
        let sym = ws.symmetry(ADJOINT);
        println!("{}", ws.title());
        for n in 0..=2 {
            let r = cohomology(n, ws.algebra.structure(), m, sym.as_ref()).unwrap();
            println!(
                "  H^{n}: even {} (cochains {}, cocycles {}, coboundaries {}), odd {}",
                r.even.cohomology, r.even.cochains, r.even.cocycles, r.even.coboundaries, r.odd.cohomology
            );
        }
        let d = derivations(ws.algebra.structure(), m, sym.as_ref());
        println!("  derivations {}, inner {}, outer {}", d.derivations.len(), d.inner.len(), d.outer_dimension());
    }
}
