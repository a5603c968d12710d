//! Random valid instances for property tests: small Lie superalgebras in
//! random bases, together with finite groups of automorphisms.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cochain::{cochain_bases, Cochain, CochainSpace};
use crate::graded::{GradedBasis, Parity, Vector};
use crate::group::{ActionRep, FiniteGroup, Symmetry};
use crate::linalg::Matrix;
use crate::scalar::{FieldSpec, Scalar};
use crate::superalgebra::{make_gl, make_osp12_over, make_sl, LModule, LieSuperalgebra, StructureConstants};

/// A superalgebra together with commuting involutive automorphisms
/// (besides the parity automorphism, which is always available).
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub algebra: LieSuperalgebra,
    pub involutions: Vec<Matrix>,
}

fn q() -> FieldSpec {
    FieldSpec::Rational
}

fn from_pairs(even: &[&str], odd: &[&str], pairs: &[(usize, usize, &[(usize, i64)])]) -> LieSuperalgebra {
    let basis = Arc::new(GradedBasis::from_parts(even.iter().copied(), odd.iter().copied()).unwrap());
    let d = basis.dim();
    let mut sc = StructureConstants::zero(q(), basis);
    for (i, j, terms) in pairs {
        let v = Vector::from_sparse(q(), d, terms.iter().map(|&(k, c)| (k, q().from_int(c))).collect());
        sc.set_pair(*i, *j, v);
    }
    LieSuperalgebra::new(sc).expect("pool algebra is valid")
}

fn diag(entries: &[i64]) -> Matrix {
    let mut m = Matrix::zeros(q(), entries.len(), entries.len());
    for (i, &e) in entries.iter().enumerate() {
        m.set(i, i, q().from_int(e));
    }
    m
}

fn perm(images: &[usize]) -> Matrix {
    let n = images.len();
    let mut m = Matrix::zeros(q(), n, n);
    for (c, &r) in images.iter().enumerate() {
        m.set(r, c, q().one());
    }
    m
}

/// Parity automorphism `x -> (-1)^{|x|} x`.
pub fn parity_automorphism(basis: &GradedBasis) -> Matrix {
    diag(&basis.parities().iter().map(|p| p.sign()).collect::<Vec<_>>())
}

/// The base algebras, all with parity dimensions at most (3|2).
pub fn pool() -> Vec<Instance> {
    let mut out = Vec::new();
    for (a, b) in [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (3, 2)] {
        let basis = Arc::new(
            GradedBasis::from_parts((0..a).map(|i| format!("a{i}")), (0..b).map(|i| format!("x{i}"))).unwrap(),
        );
        let mut flip = vec![1; a + b];
        flip[0] = -1;
        out.push(Instance {
            name: format!("abelian({a}|{b})"),
            algebra: LieSuperalgebra::abelian(q(), basis),
            involutions: vec![diag(&flip)],
        });
    }
    out.push(Instance {
        name: "gl(1|1)".into(),
        algebra: make_gl(1, 1),
        involutions: vec![perm(&[1, 0, 3, 2])],
    });
    out.push(Instance {
        name: "sl(1|1)".into(),
        algebra: make_sl(1, 1),
        involutions: vec![perm(&[0, 2, 1])],
    });
    out.push(Instance {
        name: "osp(1|2)".into(),
        algebra: make_osp12_over(q()),
        involutions: vec![],
    });
    out.push(Instance {
        name: "heisenberg(1|1)".into(),
        algebra: from_pairs(&["h"], &["x"], &[(1, 1, &[(0, 1)])]),
        involutions: vec![],
    });
    out.push(Instance {
        name: "heisenberg(1|2)".into(),
        algebra: from_pairs(&["h"], &["x", "y"], &[(1, 2, &[(0, 1)])]),
        involutions: vec![perm(&[0, 2, 1])],
    });
    out.push(Instance {
        name: "sl2".into(),
        algebra: from_pairs(&["h", "e", "f"], &[], &[(0, 1, &[(1, 2)]), (0, 2, &[(2, -2)]), (1, 2, &[(0, 1)])]),
        involutions: vec![diag(&[1, -1, -1])],
    });
    out.push(Instance {
        name: "aff(1)".into(),
        algebra: from_pairs(&["a", "b"], &[], &[(0, 1, &[(1, 1)])]),
        involutions: vec![diag(&[1, -1])],
    });
    // [a, x] = x, [a, y] = -y, [x, y] = z: a (2|2) solvable algebra.
    out.push(Instance {
        name: "solvable(2|2)".into(),
        algebra: from_pairs(&["a", "z"], &["x", "y"], &[(0, 2, &[(2, 1)]), (0, 3, &[(3, -1)]), (2, 3, &[(1, 1)])]),
        involutions: vec![],
    });
    let sums = [("gl(1|1)", "abelian(1|0)"), ("sl(1|1)", "aff(1)"), ("heisenberg(1|2)", "aff(1)"), ("heisenberg(1|1)", "aff(1)")];
    for (x, y) in sums {
        let a = out.iter().find(|i| i.name == x).unwrap().clone();
        let b = out.iter().find(|i| i.name == y).unwrap().clone();
        out.push(direct_sum(&a, &b));
    }
    out
}

/// `A (+) B`, basis reordered evens first; involutions act on one summand.
pub fn direct_sum(a: &Instance, b: &Instance) -> Instance {
    let (ba, bb) = (a.algebra.basis(), b.algebra.basis());
    let mut names = Vec::new();
    let mut parities = Vec::new();
    let mut pa = vec![0; ba.dim()];
    let mut pb = vec![0; bb.dim()];
    for p in [Parity::Even, Parity::Odd] {
        for i in (0..ba.dim()).filter(|&i| ba.parity(i) == p) {
            pa[i] = names.len();
            names.push(format!("{}_1", ba.name(i)));
            parities.push(p);
        }
        for i in (0..bb.dim()).filter(|&i| bb.parity(i) == p) {
            pb[i] = names.len();
            names.push(format!("{}_2", bb.name(i)));
            parities.push(p);
        }
    }
    let basis = Arc::new(GradedBasis::new(names, parities).unwrap());
    let d = basis.dim();
    let mut sc = StructureConstants::zero(q(), basis);
    for (alg, pos) in [(&a.algebra, &pa), (&b.algebra, &pb)] {
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let v = alg.bracket_basis(i, j);
                let w = Vector::from_sparse(q(), d, v.coords().iter().map(|(k, c)| (pos[*k], c.clone())).collect());
                sc.set_entry(pos[i], pos[j], w);
            }
        }
    }
    let lift = |m: &Matrix, pos: &[usize]| {
        let mut out = Matrix::identity(q(), d);
        for &p in pos {
            out.set(p, p, q().zero());
        }
        for r in 0..m.nrows() {
            for (c, v) in m.row(r) {
                out.set(pos[r], pos[*c], v.clone());
            }
        }
        out
    };
    let mut involutions: Vec<Matrix> = a.involutions.iter().map(|m| lift(m, &pa)).collect();
    involutions.extend(b.involutions.iter().map(|m| lift(m, &pb)));
    Instance {
        name: format!("{} + {}", a.name, b.name),
        algebra: LieSuperalgebra::new(sc).expect("direct sum is valid"),
        involutions,
    }
}

pub fn small_scalar<R: Rng>(rng: &mut R, field: FieldSpec, bound: i64) -> Scalar {
    field.from_int(rng.gen_range(-bound..=bound))
}

/// Random unimodular parity-preserving matrix (product of unitriangular
/// factors within each parity block).
pub fn random_basis_change<R: Rng>(rng: &mut R, basis: &GradedBasis) -> Matrix {
    let d = basis.dim();
    let f = q();
    let mut lower = Matrix::identity(f, d);
    let mut upper = Matrix::identity(f, d);
    for i in 0..d {
        for j in 0..d {
            if basis.parity(i) != basis.parity(j) || rng.gen_bool(0.5) {
                continue;
            }
            if i > j {
                lower.set(i, j, small_scalar(rng, f, 2));
            } else if i < j {
                upper.set(i, j, small_scalar(rng, f, 2));
            }
        }
    }
    lower.mul(&upper)
}

fn invert(m: &Matrix) -> Matrix {
    m.solve_matrix(&Matrix::identity(m.field(), m.nrows())).expect("invertible")
}

/// The same algebra written in the basis `T e_i`.
pub fn change_basis(inst: &Instance, t: &Matrix) -> Instance {
    let l = &inst.algebra;
    let f = l.field();
    let d = l.dim();
    let tinv = invert(t);
    let cols: Vec<Vector> = (0..d).map(|i| Vector::from_dense(f, &t.column(i))).collect();
    let mut sc = StructureConstants::zero(f, l.basis().clone());
    for i in 0..d {
        for j in 0..d {
            let br = l.bracket(&cols[i], &cols[j]);
            sc.set_entry(i, j, Vector::from_dense(f, &tinv.mul_vec(&br.to_dense())));
        }
    }
    Instance {
        name: inst.name.clone(),
        algebra: LieSuperalgebra::new(sc).expect("basis change preserves the axioms"),
        involutions: inst.involutions.iter().map(|r| tinv.mul(r).mul(t)).collect(),
    }
}

/// A pool algebra in a random basis.
pub fn random_instance<R: Rng>(rng: &mut R) -> Instance {
    let p = pool();
    let base = p.choose(rng).unwrap();
    let t = random_basis_change(rng, base.algebra.basis());
    change_basis(base, &t)
}

/// Which module to pair with a random algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleKind {
    Adjoint,
    /// Zero action on a (1|1) space.
    Trivial,
}

/// A random group of order at most 4 generated by commuting involutions
/// (the parity automorphism and the instance's own), acting on `L` and on
/// the chosen module.
pub fn random_symmetry<R: Rng>(rng: &mut R, inst: &Instance, kind: ModuleKind) -> (LModule, Symmetry) {
    let l = &inst.algebra;
    let f = l.field();
    let mut gens = vec![parity_automorphism(l.basis())];
    gens.extend(inst.involutions.iter().cloned());
    gens.shuffle(rng);
    let k = rng.gen_range(0..=gens.len().min(2));
    let chosen = &gens[..k];
    let group = Arc::new(match k {
        0 => FiniteGroup::trivial(),
        1 => FiniteGroup::cyclic(2),
        _ => FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
    });
    let elements = |mats: &[Matrix], dim: usize| -> Vec<Matrix> {
        let id = Matrix::identity(f, dim);
        match mats.len() {
            0 => vec![id],
            1 => vec![id, mats[0].clone()],
            _ => vec![id, mats[1].clone(), mats[0].clone(), mats[0].mul(&mats[1])],
        }
    };
    let algebra = ActionRep::new(group.clone(), l.basis().clone(), elements(chosen, l.dim())).unwrap();
    match kind {
        ModuleKind::Adjoint => (LModule::adjoint(l), Symmetry::new(algebra.clone(), algebra).unwrap()),
        ModuleKind::Trivial => {
            let space = Arc::new(GradedBasis::from_parts(["u"], ["v"]).unwrap());
            let m = LModule::trivial(l, space.clone());
            let on_m: Vec<Matrix> = (0..chosen.len()).map(|i| if i == 0 { diag(&[1, -1]) } else { diag(&[-1, 1]) }).collect();
            let module = ActionRep::new(group, space, elements(&on_m, 2)).unwrap();
            (m, Symmetry::new(algebra, module).unwrap())
        }
    }
}

/// A random cochain of the given parity with small integer coordinates.
pub fn random_cochain<R: Rng>(rng: &mut R, space: Arc<CochainSpace>, parity: Parity) -> Cochain {
    let f = space.field();
    let coords = space
        .block(parity)
        .into_iter()
        .filter_map(|i| {
            let c = small_scalar(rng, f, 3);
            (!c.is_zero()).then_some((i, c))
        })
        .collect();
    let v = Vector::from_sparse(f, space.dim(), coords);
    Cochain::new(space, parity, v).expect("homogeneous by construction")
}

/// A random combination of the equivariant basis of the given parity.
pub fn random_equivariant_cochain<R: Rng>(rng: &mut R, space: Arc<CochainSpace>, sym: Option<&Symmetry>, parity: Parity) -> Cochain {
    let bases = cochain_bases(&space, sym).expect("fixed spaces agree");
    let b = &bases[parity.bit() as usize];
    let f = space.field();
    let x: Vec<Scalar> = (0..b.dim()).map(|_| small_scalar(rng, f, 3)).collect();
    let v = Vector::from_dense(f, &b.columns.mul_vec(&x));
    Cochain::new(space, parity, v).expect("homogeneous by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pool_is_valid_and_small() {
        for inst in pool() {
            let (d0, d1) = inst.algebra.basis().dims();
            assert!(d0 <= 3 && d1 <= 2, "{}", inst.name);
            for r in &inst.involutions {
                let g = Arc::new(FiniteGroup::cyclic(2));
                let rep = ActionRep::cyclic_from_generator(g, inst.algebra.basis().clone(), r.clone()).unwrap();
                assert!(crate::group::validate_action(&rep, &inst.algebra).ok(), "{}", inst.name);
            }
        }
    }

    #[test]
    fn random_symmetries_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let inst = random_instance(&mut rng);
            for kind in [ModuleKind::Adjoint, ModuleKind::Trivial] {
                let (m, sym) = random_symmetry(&mut rng, &inst, kind);
                let r = sym.validate(&inst.algebra, &m);
                assert!(r.ok(), "{}: {:?}", inst.name, r.failures);
            }
        }
    }
}
