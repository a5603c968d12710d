//! Formal deformations of gl(1|1): validation order by order, the
//! obstruction to extending, and gauge equivalence.

use supercohom::cli::{fixture, Workspace};
use supercohom::deformation::{
    gauge_transform, infinitesimals_cohomologous, obstruction, validate, GaugeTransform, Mode,
};
use supercohom::linalg::Matrix;

fn main() {
    let ws = Workspace::parse(fixture("gl11_z2").unwrap()).unwrap();
    for name in ["mu_exact", "mu_gauge", "mu_star"] {
        let d = ws.deformation(name).unwrap().unwrap();
        let r = validate(&d, Mode::Truncated);
        match r.first_failure() {
            None => println!("{name}: satisfies the deformation equation through order {}", d.order()),
            Some(o) => println!("{name}: fails at order {}", o.r),
        }
    }

    let d = ws.deformation("mu_exact").unwrap().unwrap();
    let ob = obstruction(&d).unwrap();
    println!("mu_exact: obstruction closed {}, extendable {}", ob.closed, ob.next_term.is_some());

    let l = ws.algebra.clone();
    let f = l.field();
    let rep = ws.group.as_ref().unwrap().action.clone();
    let mut shift = Matrix::zeros(f, 4, 4);
    shift.set(2, 2, f.from_int(3));
    shift.set(3, 3, f.from_int(3));
    let g = GaugeTransform::new(&l, Some(&rep), vec![Matrix::identity(f, 4), shift]).unwrap();
    let dt = gauge_transform(&d, &g).unwrap();
    println!(
        "after gauge by I + 3t on the odd part: valid {}, same infinitesimal class {}",
        validate(&dt, Mode::Truncated).ok(),
        infinitesimals_cohomologous(&d, &dt).unwrap()
    );
}
