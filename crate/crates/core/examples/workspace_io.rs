//! Builds workspaces in code and prints their canonical JSON form; this is how
//! the shipped fixtures are produced.
//!
//! ```text
//! cargo run --example workspace_io -- super_poincare
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use supercohom::cli::{fixture, CochainEntry, GroupEntry, ModuleEntry, ModuleKind, Workspace, ADJOINT};
use supercohom::cochain::{coboundary, Cochain, CochainSpace};
use supercohom::deformation::{gauge_transform, Deformation, GaugeTransform};
use supercohom::graded::{GradedBasis, Parity, Vector};
use supercohom::group::{ActionRep, FiniteGroup};
use supercohom::linalg::Matrix;
use supercohom::scalar::FieldSpec;
use supercohom::superalgebra::{make_gl, make_sl, make_super_poincare, LModule, LieSuperalgebra};

fn permutation(field: FieldSpec, images: &[usize]) -> Matrix {
    let mut m = Matrix::zeros(field, images.len(), images.len());
    for (j, &i) in images.iter().enumerate() {
        m.set(i, j, field.one());
    }
    m
}

fn with_cyclic(ws: &mut Workspace, n: usize, generator: Matrix) {
    let g = Arc::new(FiniteGroup::cyclic(n));
    let rep = ActionRep::cyclic_from_generator(g.clone(), ws.algebra.basis().clone(), generator).unwrap();
    ws.modules.get_mut(ADJOINT).unwrap().action = Some(rep.clone());
    ws.group = Some(GroupEntry {
        group: g,
        cyclic: true,
        action: rep,
    });
}

fn gl21() -> Workspace {
    Workspace::from_algebra(make_gl(2, 1), Some("gl(2|1)".into()))
}

fn sl11() -> Workspace {
    let mut ws = Workspace::from_algebra(make_sl(1, 1), Some("sl(1|1)".into()));
    with_cyclic(&mut ws, 2, permutation(FieldSpec::Rational, &[0, 2, 1]));
    ws
}

fn super_poincare() -> Workspace {
    let l = make_super_poincare();
    let f = l.field();
    let mut ws = Workspace::from_algebra(l.clone(), Some("super-Poincare".into()));
    let mut gen = Matrix::identity(f, 14);
    for (label, k) in [("Q1", 1), ("Q2", 1), ("Qb1", 3), ("Qb2", 3)] {
        let i = l.basis().index_of(label).unwrap();
        gen.set(i, i, f.root_of_unity(k).unwrap());
    }
    with_cyclic(&mut ws, 4, gen);
    let labels: Vec<String> = ["P0", "P1", "P2", "P3", "Q1", "Q2", "Qb1", "Qb2"].map(String::from).to_vec();
    let idx: Vec<usize> = labels.iter().map(|s| l.basis().index_of(s).unwrap()).collect();
    let module = LModule::adjoint_restriction(&l, &idx).unwrap();
    let rep = ws.group.as_ref().unwrap().action.clone();
    let mats = rep
        .matrices()
        .iter()
        .map(|m| m.select_rows(&idx).select_columns(&idx))
        .collect();
    let action = ActionRep::new(rep.group().clone(), module.space().clone(), mats).unwrap();
    ws.modules.insert(
        "PQ".into(),
        ModuleEntry {
            kind: ModuleKind::Restriction(labels),
            module,
            action: Some(action),
        },
    );
    ws
}

/// Abelian `span{a | x}`, `Z_2` acting by `x -> -x`, trivial module `span{z}`.
fn super_heisenberg() -> Workspace {
    let f = FieldSpec::Rational;
    let basis = Arc::new(GradedBasis::from_parts(["a"], ["x"]).unwrap());
    let l = LieSuperalgebra::abelian(f, basis);
    let mut ws = Workspace::from_algebra(l.clone(), Some("abelian(1|1)".into()));
    let mut gen = Matrix::identity(f, 2);
    gen.set(1, 1, f.from_int(-1));
    with_cyclic(&mut ws, 2, gen);
    let zspace = Arc::new(GradedBasis::from_parts(["z"], []).unwrap());
    let m = LModule::trivial(&l, zspace.clone());
    let g = ws.group.as_ref().unwrap().group.clone();
    ws.modules.insert(
        "z".into(),
        ModuleEntry {
            kind: ModuleKind::Trivial,
            module: m.clone(),
            action: Some(ActionRep::trivial(f, g, zspace)),
        },
    );
    let space = CochainSpace::for_pair(&l, &m, 2);
    let t = space.tuple_index(&[1, 1]).unwrap();
    let h = Cochain::new(space.clone(), Parity::Even, Vector::basis(f, space.dim(), space.coord(t, 0))).unwrap();
    ws.cochains.insert(
        "h_xx".into(),
        CochainEntry {
            module: "z".into(),
            cochain: h,
        },
    );
    ws
}

/// The shipped gl(1|1) file plus deformations that do satisfy the equation:
/// `delta psi` for an equivariant `psi`, and a gauge transform of the
/// undeformed bracket to second order.
fn gl11_z2() -> Workspace {
    let mut ws = Workspace::parse(fixture("gl11_z2").unwrap()).unwrap();
    let l = ws.algebra.clone();
    let f = l.field();
    let adj = LModule::adjoint(&l);
    let rep = ws.group.as_ref().unwrap().action.clone();
    // psi: e12 -> e12, e21 -> e21, commuting with the swap.
    let mut psi = Matrix::zeros(f, 4, 4);
    psi.set(2, 2, f.one());
    psi.set(3, 3, f.one());
    let s1 = CochainSpace::for_pair(&l, &adj, 1);
    let psi_c = supercohom::deformation::matrix_to_cochain(s1, Parity::Even, &psi).unwrap();
    let exact = coboundary(&psi_c, &l, &adj, None).unwrap();
    let mut insert = |name: &str, c: Cochain| {
        ws.cochains.insert(
            name.to_string(),
            CochainEntry {
                module: ADJOINT.into(),
                cochain: c,
            },
        );
    };
    insert("mu1_exact", exact);
    let s2 = CochainSpace::for_pair(&l, &adj, 2);
    let zero = Cochain::zero(s2, Parity::Even);
    let d0 = Deformation::new(l.clone(), Some(rep.clone()), vec![zero.clone(), zero]).unwrap();
    let mut psi2 = Matrix::zeros(f, 4, 4);
    psi2.set(0, 1, f.one());
    psi2.set(1, 0, f.one());
    let g = GaugeTransform::new(&l, Some(&rep), vec![Matrix::identity(f, 4), psi, psi2]).unwrap();
    let d = gauge_transform(&d0, &g).unwrap();
    insert("mu1_gauge", d.terms()[1].clone());
    insert("mu2_gauge", d.terms()[2].clone());
    let mut defs = BTreeMap::new();
    defs.insert("mu_exact".to_string(), vec!["mu1_exact".to_string()]);
    defs.insert("mu_gauge".to_string(), vec!["mu1_gauge".to_string(), "mu2_gauge".to_string()]);
    defs.insert("mu_star".to_string(), vec!["mu1_star".to_string()]);
    ws.deformations = defs;
    ws
}

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "sl11".into());
    let ws = match name.as_str() {
        "gl11_z2" => gl11_z2(),
        "gl21" => gl21(),
        "sl11" => sl11(),
        "super_poincare" => super_poincare(),
        "super_heisenberg" => super_heisenberg(),
        other => {
            eprintln!("unknown workspace {other}; try gl11_z2, gl21, sl11, super_poincare, super_heisenberg");
            std::process::exit(2);
        }
    };
    let text = ws.serialize();
    let back = Workspace::parse(&text).expect("canonical form parses");
    assert_eq!(back, ws, "round trip");
    print!("{text}");
}
