//! Truncated equivariant formal deformations `mu_t = mu_0 + mu_1 t + .. + mu_N t^N`.

use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::cochain::{coboundary, solve_coboundary, Cochain, CochainError, CochainSpace};
use crate::graded::{Parity, Vector};
use crate::group::{ActionRep, Symmetry};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::superalgebra::{LModule, LieSuperalgebra, StructureConstants};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeformationError {
    #[error("term mu_{0} must be an even 2-cochain on the base algebra")]
    BadTerm(usize),
    #[error("term mu_{0} is not equivariant")]
    NotEquivariant(usize),
    #[error("mu_0 differs from the bracket of the base algebra")]
    BaseMismatch,
    #[error("every term of order >= 1 vanishes")]
    AllZero,
    #[error("deformation does not satisfy the deformation equation up to its order")]
    NotValidated,
    #[error("gauge map psi_0 must be the identity")]
    GaugeNotIdentity,
    #[error("gauge map psi_{0} changes parity")]
    GaugeParity(usize),
    #[error("gauge map psi_{0} is not equivariant")]
    GaugeNotEquivariant(usize),
    #[error("gauge map psi_{0} has the wrong size")]
    GaugeSize(usize),
    #[error(transparent)]
    Cochain(#[from] CochainError),
}

/// A deformation truncated at order `N = terms.len() - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deformation {
    base: LieSuperalgebra,
    rep: Option<ActionRep>,
    terms: Vec<Cochain>,
}

impl Deformation {
    /// `mu_0` is the base bracket; `higher` lists `mu_1, .., mu_N`.
    pub fn new(base: LieSuperalgebra, rep: Option<ActionRep>, higher: Vec<Cochain>) -> Result<Deformation, DeformationError> {
        let space = adjoint_space(&base, 2);
        let mu0 = Cochain::from_map(space, &base.as_multilinear())?;
        let mut terms = vec![mu0];
        terms.extend(higher);
        Deformation::from_terms(base, rep, terms)
    }

    pub fn from_terms(base: LieSuperalgebra, rep: Option<ActionRep>, terms: Vec<Cochain>) -> Result<Deformation, DeformationError> {
        let space = adjoint_space(&base, 2);
        let sym = rep.as_ref().map(|r| Symmetry {
            algebra: r.clone(),
            module: r.clone(),
        });
        for (i, t) in terms.iter().enumerate() {
            if **t.space() != *space || t.parity() != Parity::Even {
                return Err(DeformationError::BadTerm(i));
            }
            if let Some(s) = &sym {
                if !t.is_equivariant(s) {
                    return Err(DeformationError::NotEquivariant(i));
                }
            }
        }
        let mu0 = Cochain::from_map(space, &base.as_multilinear())?;
        if terms.first() != Some(&mu0) {
            return Err(DeformationError::BaseMismatch);
        }
        Ok(Deformation { base, rep, terms })
    }

    pub fn base(&self) -> &LieSuperalgebra {
        &self.base
    }

    pub fn rep(&self) -> Option<&ActionRep> {
        self.rep.as_ref()
    }

    pub fn symmetry(&self) -> Option<Symmetry> {
        self.rep.as_ref().map(|r| Symmetry {
            algebra: r.clone(),
            module: r.clone(),
        })
    }

    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn terms(&self) -> &[Cochain] {
        &self.terms
    }

    /// `mu_i`, zero beyond the truncation order.
    pub fn term(&self, i: usize) -> Option<&Cochain> {
        self.terms.get(i)
    }

    fn adjoint(&self) -> LModule {
        LModule::adjoint(&self.base)
    }
}

fn adjoint_space(l: &StructureConstants, n: usize) -> Arc<CochainSpace> {
    Arc::new(CochainSpace::new(l.field(), l.basis().clone(), l.basis().clone(), n))
}

/// `mu(e_a, v)`.
fn mu_left(mu: &Cochain, a: usize, v: &Vector) -> Vector {
    let mut out = Vector::zero(v.field(), v.dim());
    for (k, c) in v.coords() {
        out.add_assign_scaled(c, &mu.eval_basis(&[a, *k]));
    }
    out
}

/// `mu(v, e_c)`.
fn mu_right(mu: &Cochain, v: &Vector, c: usize) -> Vector {
    let mut out = Vector::zero(v.field(), v.dim());
    for (k, x) in v.coords() {
        out.add_assign_scaled(x, &mu.eval_basis(&[*k, c]));
    }
    out
}

/// `sum over (i, j) of mu_i(a, mu_j(b, c)) - mu_i(mu_j(a, b), c) - (-1)^{ab} mu_i(b, mu_j(a, c))`
/// on the canonical triples, as a 3-cochain.
fn jacobiator(l: &StructureConstants, pairs: &[(&Cochain, &Cochain)]) -> Cochain {
    let space = adjoint_space(l, 3);
    let dm = l.dim();
    let field = l.field();
    let parts: Vec<Vec<(usize, Scalar)>> = space
        .tuples()
        .par_iter()
        .enumerate()
        .map(|(t, x)| {
            let (a, b, c) = (x[0], x[1], x[2]);
            let sign = field.from_int((l.basis().parity(a) * l.basis().parity(b)).sign());
            let mut v = Vector::zero(field, dm);
            for (mi, mj) in pairs {
                v = v.add(&mu_left(mi, a, &mj.eval_basis(&[b, c])));
                v = v.sub(&mu_right(mi, &mj.eval_basis(&[a, b]), c));
                v = v.axpy(&-&sign, &mu_left(mi, b, &mj.eval_basis(&[a, c])));
            }
            v.coords().iter().map(|(k, s)| (t * dm + k, s.clone())).collect()
        })
        .collect();
    let coords = Vector::from_sparse(field, space.dim(), parts.concat());
    Cochain::new(space, Parity::Even, coords).expect("even residual")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderReport {
    pub r: usize,
    pub ok: bool,
    /// Residual on canonical basis triples.
    pub residual: Cochain,
}

/// The deformation equation at order `r`: `sum_{i+j=r}` of the Jacobiator
/// terms, zero iff the identity holds at `t^r`.
pub fn check_order(d: &Deformation, r: usize) -> OrderReport {
    let pairs: Vec<(&Cochain, &Cochain)> = (0..=r)
        .filter_map(|i| Some((d.term(i)?, d.term(r - i)?)))
        .collect();
    let residual = jacobiator(&d.base, &pairs);
    OrderReport {
        r,
        ok: residual.is_zero(),
        residual,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Orders `0..=N`: the identity modulo `t^{N+1}`.
    Truncated,
    /// Orders `0..=2N`: the identity for the polynomial `mu_t` itself.
    Strict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationReport {
    pub mode: Mode,
    pub orders: Vec<OrderReport>,
    pub terms_ok: bool,
}

impl DeformationReport {
    pub fn ok(&self) -> bool {
        self.terms_ok && self.orders.iter().all(|o| o.ok)
    }

    pub fn first_failure(&self) -> Option<&OrderReport> {
        self.orders.iter().find(|o| !o.ok)
    }
}

pub fn validate(d: &Deformation, mode: Mode) -> DeformationReport {
    let top = match mode {
        Mode::Truncated => d.order(),
        Mode::Strict => 2 * d.order(),
    };
    let sym = d.symmetry();
    let terms_ok = d.terms.iter().all(|t| {
        t.parity() == Parity::Even && sym.as_ref().is_none_or(|s| t.is_equivariant(s))
    });
    let orders = (0..=top).into_par_iter().map(|r| check_order(d, r)).collect();
    DeformationReport { mode, orders, terms_ok }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Infinitesimal {
    pub k: usize,
    pub term: Cochain,
    pub is_cocycle: bool,
}

/// The lowest nonzero `mu_k`, `k >= 1`, and whether it is a 2-cocycle.
pub fn infinitesimal(d: &Deformation) -> Result<Infinitesimal, DeformationError> {
    let (k, term) = d
        .terms
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, t)| !t.is_zero())
        .ok_or(DeformationError::AllZero)?;
    let m = d.adjoint();
    let is_cocycle = coboundary(term, &d.base, &m, None)?.is_zero();
    Ok(Infinitesimal {
        k,
        term: term.clone(),
        is_cocycle,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    /// Terms of the order `N + 1` equation not involving `mu_{N+1}`.
    pub obstruction: Cochain,
    /// `delta^3` of the obstruction vanishes.
    pub closed: bool,
    /// An equivariant `mu_{N+1}` with `delta^2(-mu_{N+1}) = obstruction`.
    pub next_term: Option<Cochain>,
}

impl ObstructionReport {
    pub fn extendable(&self) -> bool {
        self.next_term.is_some()
    }
}

pub fn obstruction(d: &Deformation) -> Result<ObstructionReport, DeformationError> {
    if !validate(d, Mode::Truncated).ok() {
        return Err(DeformationError::NotValidated);
    }
    let n1 = d.order() + 1;
    let pairs: Vec<(&Cochain, &Cochain)> = (1..n1).map(|i| (&d.terms[i], &d.terms[n1 - i])).collect();
    let obs = jacobiator(&d.base, &pairs);
    let m = d.adjoint();
    let sym = d.symmetry();
    let closed = coboundary(&obs, &d.base, &m, None)?.is_zero();
    let next_term = match solve_coboundary(&obs, &d.base, &m, sym.as_ref())? {
        Some(neg) => Some(neg.neg()),
        None => None,
    };
    Ok(ObstructionReport {
        obstruction: obs,
        closed,
        next_term,
    })
}

/// `Psi_t = id + psi_1 t + .. + psi_N t^N`, each `psi_i` an even linear map
/// commuting with the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeTransform {
    maps: Vec<Matrix>,
}

impl GaugeTransform {
    pub fn new(l: &StructureConstants, rep: Option<&ActionRep>, maps: Vec<Matrix>) -> Result<GaugeTransform, DeformationError> {
        let d = l.dim();
        let field = l.field();
        for (i, m) in maps.iter().enumerate() {
            if m.nrows() != d || m.ncols() != d {
                return Err(DeformationError::GaugeSize(i));
            }
        }
        if maps.first() != Some(&Matrix::identity(field, d)) {
            return Err(DeformationError::GaugeNotIdentity);
        }
        for (i, m) in maps.iter().enumerate() {
            for r in 0..d {
                if m.row(r).iter().any(|(c, _)| l.basis().parity(*c) != l.basis().parity(r)) {
                    return Err(DeformationError::GaugeParity(i));
                }
            }
            if let Some(rep) = rep {
                for g in 0..rep.group().order() {
                    let a = rep.matrix(g);
                    if a.mul(m) != m.mul(a) {
                        return Err(DeformationError::GaugeNotEquivariant(i));
                    }
                }
            }
        }
        Ok(GaugeTransform { maps })
    }

    pub fn identity(l: &StructureConstants) -> GaugeTransform {
        GaugeTransform {
            maps: vec![Matrix::identity(l.field(), l.dim())],
        }
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn order(&self) -> usize {
        self.maps.len() - 1
    }

    /// Series inverse up to order `n`: `phi_0 = id`, `phi_k = -sum_{i=1..k} psi_i phi_{k-i}`.
    pub fn inverse_series(&self, n: usize) -> Vec<Matrix> {
        let d = self.maps[0].nrows();
        let field = self.maps[0].field();
        let mut phi = vec![Matrix::identity(field, d)];
        for k in 1..=n {
            let mut acc = Matrix::zeros(field, d, d);
            for i in 1..=k.min(self.order()) {
                acc = acc.add(&self.maps[i].mul(&phi[k - i]));
            }
            phi.push(acc.scale(&-field.one()));
        }
        phi
    }

    pub fn inverse(&self) -> GaugeTransform {
        GaugeTransform {
            maps: self.inverse_series(self.order()),
        }
    }
}

/// `mu~_t = Psi_t o mu_t o (Psi_t^-1 x Psi_t^-1)`, truncated at the order of `d`:
/// `mu~_r = sum_{i+j+k+l=r} psi_i mu_j(phi_k a, phi_l b)`.
pub fn gauge_transform(d: &Deformation, g: &GaugeTransform) -> Result<Deformation, DeformationError> {
    let n = d.order();
    let l = &d.base;
    let field = l.field();
    let dim = l.dim();
    let phi = g.inverse_series(n);
    let psi = |i: usize| g.maps.get(i);
    let space = adjoint_space(l, 2);
    let cols: Vec<Vec<Vector>> = phi
        .iter()
        .map(|p| (0..dim).map(|a| Vector::from_dense(field, &p.column(a))).collect())
        .collect();
    let mut terms = Vec::with_capacity(n + 1);
    for r in 0..=n {
        let parts: Vec<Vec<(usize, Scalar)>> = space
            .tuples()
            .par_iter()
            .enumerate()
            .map(|(t, x)| {
                let mut v = Vector::zero(field, dim);
                for i in 0..=r {
                    let Some(ps) = psi(i) else { continue };
                    for j in 0..=r - i {
                        let Some(mu) = d.term(j) else { continue };
                        for k in 0..=r - i - j {
                            let lidx = r - i - j - k;
                            let w = mu.eval(&[cols[k][x[0]].clone(), cols[lidx][x[1]].clone()]);
                            if !w.is_zero() {
                                v = v.add(&Vector::from_dense(field, &ps.mul_vec(&w.to_dense())));
                            }
                        }
                    }
                }
                v.coords().iter().map(|(k, s)| (t * dim + k, s.clone())).collect()
            })
            .collect();
        let coords = Vector::from_sparse(field, space.dim(), parts.concat());
        terms.push(Cochain::new(space.clone(), Parity::Even, coords)?);
    }
    Deformation::from_terms(d.base.clone(), d.rep.clone(), terms)
}

/// An equivariant even 1-cochain `f` with `delta f = mu_1(d1) - mu_1(d2)`.
pub fn cohomologous_certificate(d1: &Deformation, d2: &Deformation) -> Result<Option<Cochain>, DeformationError> {
    let l = &d1.base;
    let space = adjoint_space(l, 2);
    let zero = Cochain::zero(space, Parity::Even);
    let a = d1.term(1).unwrap_or(&zero);
    let b = d2.term(1).unwrap_or(&zero);
    let diff = a.add(&b.neg());
    let m = LModule::adjoint(l);
    Ok(solve_coboundary(&diff, l, &m, d1.symmetry().as_ref())?)
}

pub fn infinitesimals_cohomologous(d1: &Deformation, d2: &Deformation) -> Result<bool, DeformationError> {
    Ok(cohomologous_certificate(d1, d2)?.is_some())
}

/// A 1-cochain viewed as a linear map `L -> L`.
pub fn cochain_to_matrix(f: &Cochain) -> Matrix {
    let d = f.space().algebra().dim();
    let field = f.space().field();
    let cols: Vec<Vec<Scalar>> = (0..d).map(|a| f.eval_basis(&[a]).to_dense()).collect();
    Matrix::from_columns(field, f.space().module().dim(), &cols)
}

/// A linear map `L -> M` as a 1-cochain of the given parity.
pub fn matrix_to_cochain(space: Arc<CochainSpace>, parity: Parity, m: &Matrix) -> Result<Cochain, CochainError> {
    let dm = space.module().dim();
    let mut coords = Vec::new();
    for (t, tuple) in space.tuples().iter().enumerate() {
        for r in 0..m.nrows() {
            let v = m.get(r, tuple[0]);
            if !v.is_zero() {
                coords.push((t * dm + r, v));
            }
        }
    }
    let v = Vector::from_sparse(space.field(), space.dim(), coords);
    Cochain::new(space, parity, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::make_gl;

    #[test]
    fn trivial_and_order_one_residual() {
        let gl = make_gl(1, 1);
        let d = Deformation::new(gl.clone(), None, vec![]).unwrap();
        assert!(validate(&d, Mode::Strict).ok());
        assert_eq!(infinitesimal(&d), Err(DeformationError::AllZero));

        // mu_1 = delta psi for psi = e11 -> e11: a coboundary, hence a cocycle.
        let m = LModule::adjoint(&gl);
        let s1 = adjoint_space(&gl, 1);
        let mut psi = Matrix::zeros(gl.field(), 4, 4);
        psi.set(0, 0, gl.field().one());
        let f = matrix_to_cochain(s1, Parity::Even, &psi).unwrap();
        let mu1 = coboundary(&f, &gl, &m, None).unwrap();
        let d = Deformation::new(gl.clone(), None, vec![mu1.clone()]).unwrap();
        let r1 = check_order(&d, 1);
        assert!(r1.ok);
        assert_eq!(r1.residual, coboundary(&mu1, &gl, &m, None).unwrap());
        let inf = infinitesimal(&d).unwrap();
        assert_eq!(inf.k, 1);
        assert!(inf.is_cocycle);
    }

    #[test]
    fn gauge_order_one_identity() {
        let gl = make_gl(1, 1);
        let f = gl.field();
        let d = Deformation::new(gl.clone(), None, vec![Cochain::zero(adjoint_space(&gl, 2), Parity::Even)]).unwrap();
        let mut psi1 = Matrix::zeros(f, 4, 4);
        psi1.set(0, 1, f.from_int(2));
        psi1.set(2, 3, f.from_int(-1));
        let g = GaugeTransform::new(&gl, None, vec![Matrix::identity(f, 4), psi1.clone()]).unwrap();
        let dt = gauge_transform(&d, &g).unwrap();
        let m = LModule::adjoint(&gl);
        let dpsi = coboundary(&matrix_to_cochain(adjoint_space(&gl, 1), Parity::Even, &psi1).unwrap(), &gl, &m, None).unwrap();
        assert_eq!(d.terms()[1].add(&dt.terms()[1].neg()), dpsi);
        assert!(infinitesimals_cohomologous(&d, &dt).unwrap());
        let back = gauge_transform(&dt, &g.inverse()).unwrap();
        assert_eq!(back, d);
    }
}
