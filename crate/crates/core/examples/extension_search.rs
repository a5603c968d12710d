//! Searches the built-in pool for pairs `(L, M)` with a symmetry where the
//! even part of `H^2_G(L; M)` is nonzero, then builds a non-split
//! extension and checks it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use supercohom::extension::{build_extension, classify_extensions, extensions_equivalent};
use supercohom::cochain::Cochain;
use supercohom::random::{pool, random_symmetry, ModuleKind};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for inst in pool() {
        for kind in [ModuleKind::Adjoint, ModuleKind::Trivial] {
            let (m, sym) = random_symmetry(&mut rng, &inst, kind);
            let l = inst.algebra.structure();
            let reps = classify_extensions(l, &m, Some(&sym)).unwrap();
            println!("{} {kind:?} |G|={}: dim (H^2_G)_0 = {}", inst.name, sym.group().order(), reps.len());
            if let Some(h) = reps.first() {
                let ext = build_extension(l, &m, h).unwrap();
                let zero = Cochain::zero(h.space().clone(), h.parity());
                let split = extensions_equivalent(l, &m, Some(&sym), h, &zero).unwrap().is_some();
                println!(
                    "  E_h: dim {}, Jacobi {}, equivalent to the split extension: {split}",
                    ext.structure.dim(),
                    ext.structure.validate().ok()
                );
            }
        }
    }
}
