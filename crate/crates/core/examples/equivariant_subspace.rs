//! Bases of `C^n_G(L; M)`: the cochains fixed by the group, per parity.

use supercohom::cli::{fixture, Workspace, ADJOINT};
use supercohom::cochain::{cochain_bases, CochainSpace};

fn main() {
    for name in ["gl11_z2", "sl11", "super_heisenberg"] {
        let ws = Workspace::parse(fixture(name).unwrap()).unwrap();
        let l = ws.algebra.structure();
        let m = &ws.modules[ADJOINT].module;
        let sym = ws.symmetry(ADJOINT);
        println!("{}", ws.title());
        for n in 0..=3 {
            let space = CochainSpace::for_pair(l, m, n);
            let [even, odd] = cochain_bases(&space, sym.as_ref()).unwrap();
            println!(
                "  n={n}: {} coordinates, invariant even {}, invariant odd {}",
                space.dim(),
                even.dim(),
                odd.dim()
            );
        }
    }
}
