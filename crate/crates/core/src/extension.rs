//! Extensions `0 -> M -> E_h -> L -> 0` of `L` by an abelian module, built
//! from even equivariant 2-cochains.

use std::sync::Arc;

use thiserror::Error;

use crate::cochain::{cohomology_with_representatives, coboundary, solve_coboundary, Cochain, CochainError};
use crate::graded::{GradedBasis, Parity, Vector};
use crate::group::{ActionRep, GroupError, Symmetry};
use crate::linalg::Matrix;
use crate::superalgebra::{LModule, StructureConstants};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("h must be an even 2-cochain with values in the module")]
    BadCochain,
    #[error("h is not equivariant")]
    NotEquivariant,
    #[error("{0} is not a cocycle")]
    NotCocycle(&'static str),
    #[error("Jacobi check ({jacobi}) and cocycle check ({cocycle}) disagree")]
    OracleDisagreement { jacobi: bool, cocycle: bool },
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `E_h` on `L (+) M` with basis order: even of `L`, even of `M`, odd of `L`,
/// odd of `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub structure: StructureConstants,
    /// Position of each `L` basis vector in the combined basis.
    pub l_positions: Vec<usize>,
    /// Position of each `M` basis vector in the combined basis.
    pub m_positions: Vec<usize>,
}

fn combined_basis(l: &GradedBasis, m: &GradedBasis) -> (GradedBasis, Vec<usize>, Vec<usize>) {
    let clash = m.names().iter().any(|n| l.index_of(n).is_some());
    let mname = |j: usize| {
        if clash {
            format!("M.{}", m.name(j))
        } else {
            m.name(j).to_string()
        }
    };
    let mut names = Vec::new();
    let mut parities = Vec::new();
    let mut lpos = vec![0; l.dim()];
    let mut mpos = vec![0; m.dim()];
    for p in [Parity::Even, Parity::Odd] {
        for i in (0..l.dim()).filter(|&i| l.parity(i) == p) {
            lpos[i] = names.len();
            names.push(l.name(i).to_string());
            parities.push(p);
        }
        for j in (0..m.dim()).filter(|&j| m.parity(j) == p) {
            mpos[j] = names.len();
            names.push(mname(j));
            parities.push(p);
        }
    }
    let basis = GradedBasis::new(names, parities).expect("labels are distinct");
    (basis, lpos, mpos)
}

/// `[(x,m),(y,n)] = ([x,y], [x,n] - (-1)^{my}[y,m] + h(x,y))`, `[M, M] = 0`.
/// `h` need not be a cocycle.
pub fn build_extension(l: &StructureConstants, m: &LModule, h: &Cochain) -> Result<Extension, ExtensionError> {
    if h.arity() != 2 || h.parity() != Parity::Even || **h.space().algebra() != **l.basis() || **h.space().module() != **m.space() {
        return Err(ExtensionError::BadCochain);
    }
    let (basis, lpos, mpos) = combined_basis(l.basis(), m.space());
    let field = l.field();
    let d = basis.dim();
    let embed_l = |v: &Vector| Vector::from_sparse(field, d, v.coords().iter().map(|(k, c)| (lpos[*k], c.clone())).collect());
    let embed_m = |v: &Vector| Vector::from_sparse(field, d, v.coords().iter().map(|(k, c)| (mpos[*k], c.clone())).collect());
    let mut sc = StructureConstants::zero(field, Arc::new(basis));
    for i in 0..l.dim() {
        for j in 0..l.dim() {
            let v = embed_l(l.bracket_basis(i, j)).add(&embed_m(&h.eval_basis(&[i, j])));
            sc.set_entry(lpos[i], lpos[j], v);
        }
        for j in 0..m.dim() {
            let v = embed_m(m.act_basis(i, j));
            // [m_j, e_i] = -(-1)^{m_j e_i} [e_i, m_j]
            let s = field.from_int(-(m.space().parity(j) * l.basis().parity(i)).sign());
            sc.set_entry(mpos[j], lpos[i], v.scale(&s));
            sc.set_entry(lpos[i], mpos[j], v);
        }
    }
    Ok(Extension {
        structure: sc,
        l_positions: lpos,
        m_positions: mpos,
    })
}

impl Extension {
    /// The group action on `L (+) M`, block diagonal.
    pub fn action(&self, sym: &Symmetry) -> ActionRep {
        let d = self.structure.dim();
        let field = self.structure.field();
        let mats = (0..sym.group().order())
            .map(|g| {
                let mut out = Matrix::zeros(field, d, d);
                for (rep, pos) in [(&sym.algebra, &self.l_positions), (&sym.module, &self.m_positions)] {
                    let a = rep.matrix(g);
                    for r in 0..a.nrows() {
                        for (c, v) in a.row(r) {
                            out.set(pos[r], pos[*c], v.clone());
                        }
                    }
                }
                out
            })
            .collect();
        ActionRep::new(sym.group().clone(), self.structure.basis().clone(), mats).expect("sizes match")
    }

    /// `i(M)` is an abelian ideal and the projection onto `L` is a bracket
    /// homomorphism.
    pub fn check_structure(&self, l: &StructureConstants) -> bool {
        let d = self.structure.dim();
        let in_m = |v: &Vector| v.coords().iter().all(|(k, _)| self.m_positions.contains(k));
        for &a in &self.m_positions {
            for &b in &self.m_positions {
                if !self.structure.bracket_basis(a, b).is_zero() {
                    return false;
                }
            }
            for x in 0..d {
                if !in_m(self.structure.bracket_basis(x, a)) {
                    return false;
                }
            }
        }
        let project = |v: &Vector| {
            let coords = self
                .l_positions
                .iter()
                .enumerate()
                .filter_map(|(i, &p)| {
                    let c = v.get(p);
                    (!c.is_zero()).then_some((i, c))
                })
                .collect();
            Vector::from_sparse(l.field(), l.dim(), coords)
        };
        for i in 0..l.dim() {
            for j in 0..l.dim() {
                let v = self.structure.bracket_basis(self.l_positions[i], self.l_positions[j]);
                if project(v) != *l.bracket_basis(i, j) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JacobiCocycle {
    pub jacobi: bool,
    pub is_cocycle: bool,
}

/// `E_h` satisfies Jacobi iff `delta^2 h = 0`; both sides computed independently.
pub fn jacobi_iff_cocycle(l: &StructureConstants, m: &LModule, h: &Cochain) -> Result<JacobiCocycle, ExtensionError> {
    let ext = build_extension(l, m, h)?;
    let jacobi = ext.structure.validate().ok();
    let is_cocycle = coboundary(h, l, m, None)?.is_zero();
    if jacobi != is_cocycle {
        return Err(ExtensionError::OracleDisagreement {
            jacobi,
            cocycle: is_cocycle,
        });
    }
    Ok(JacobiCocycle { jacobi, is_cocycle })
}

/// An equivariant even 1-cochain `f` with `delta f = h1 - h2`, if one exists.
/// Then `(x, m) -> (x, m + f(x))` is an isomorphism `E_{h1} -> E_{h2}`.
pub fn extensions_equivalent(
    l: &StructureConstants,
    m: &LModule,
    sym: Option<&Symmetry>,
    h1: &Cochain,
    h2: &Cochain,
) -> Result<Option<Cochain>, ExtensionError> {
    for (h, name) in [(h1, "h1"), (h2, "h2")] {
        if !coboundary(h, l, m, None)?.is_zero() {
            return Err(ExtensionError::NotCocycle(name));
        }
        if let Some(s) = sym {
            if !h.is_equivariant(s) {
                return Err(ExtensionError::NotEquivariant);
            }
        }
    }
    let diff = h1.add(&h2.neg());
    Ok(solve_coboundary(&diff, l, m, sym)?)
}

/// Matrix of `(x, m) -> (x, m + f(x))` on the combined basis.
pub fn certificate_map(ext: &Extension, f: &Cochain) -> Matrix {
    let field = ext.structure.field();
    let d = ext.structure.dim();
    let mut psi = Matrix::identity(field, d);
    for (i, &p) in ext.l_positions.iter().enumerate() {
        for (k, c) in f.eval_basis(&[i]).coords() {
            psi.set(ext.m_positions[*k], p, c.clone());
        }
    }
    psi
}

/// `psi` is invertible, parity preserving, maps brackets of `a` to brackets
/// of `b`, and commutes with the group when a symmetry is given.
pub fn verify_isomorphism(a: &Extension, b: &Extension, psi: &Matrix, sym: Option<&Symmetry>) -> bool {
    let d = a.structure.dim();
    let field = a.structure.field();
    if psi.rank() != d {
        return false;
    }
    let basis = a.structure.basis();
    for r in 0..d {
        if psi.row(r).iter().any(|(c, _)| basis.parity(*c) != basis.parity(r)) {
            return false;
        }
    }
    let img: Vec<Vector> = (0..d).map(|i| Vector::from_dense(field, &psi.column(i))).collect();
    for i in 0..d {
        for j in 0..d {
            let lhs = b.structure.bracket(&img[i], &img[j]);
            let rhs = Vector::from_dense(field, &psi.mul_vec(&a.structure.bracket_basis(i, j).to_dense()));
            if lhs != rhs {
                return false;
            }
        }
    }
    if let Some(s) = sym {
        let (ra, rb) = (a.action(s), b.action(s));
        for g in 0..s.group().order() {
            if psi.mul(ra.matrix(g)) != rb.matrix(g).mul(psi) {
                return false;
            }
        }
    }
    true
}

/// One cocycle per basis class of the even part of `H^2_G(L; M)`.
pub fn classify_extensions(l: &StructureConstants, m: &LModule, sym: Option<&Symmetry>) -> Result<Vec<Cochain>, ExtensionError> {
    let report = cohomology_with_representatives(2, l, m, sym)?;
    Ok(report.even.representatives)
}
