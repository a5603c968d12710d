//! A bracket is a Lie superbracket exactly when its element `F0` of the
//! Nijenhuis-Richardson algebra satisfies `[F0, F0] = 0`.

use supercohom::cli::{fixture, Workspace};
use supercohom::nr::{bracket_to_element, mc_check, nr_bracket};

fn main() {
    let ws = Workspace::parse(fixture("gl11_z2").unwrap()).unwrap();
    let l = ws.algebra.structure();
    let rep = ws.group.as_ref().map(|g| &g.action);
    let f0 = bracket_to_element(l);
    let r = mc_check(&f0, rep).unwrap();
    println!("gl(1|1): [F0, F0] = 0: {}, Jacobi loop agrees: {}", r.is_mc, r.jacobi_ok);

    // Flip one structure constant and try again.
    let mut bad = l.clone();
    let (i, j) = (l.basis().index_of("e11").unwrap(), l.basis().index_of("e12").unwrap());
    bad.set_pair(i, j, l.bracket_basis(i, j).neg());
    let f1 = bracket_to_element(&bad);
    let r = mc_check(&f1, None).unwrap();
    println!("with [e11, e12] negated: [F0, F0] = 0: {}, Jacobi loop agrees: {}", r.is_mc, r.jacobi_ok);
    let residual = nr_bracket(&f1, &f1).unwrap();
    let c = residual.cochain().unwrap();
    let nonzero = c.space().tuples().iter().filter(|t| !c.eval_basis(t).is_zero()).count();
    println!("  [F1, F1] is nonzero on {nonzero} canonical triples");
}
