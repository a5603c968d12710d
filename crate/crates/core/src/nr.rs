//! The graded Lie algebra of super-alternating maps `V^{n+1} -> V` and its
//! Maurer-Cartan elements.

use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::cochain::{coboundary, Cochain, CochainError, CochainSpace};
use crate::graded::{koszul_sign, GradedBasis, MultilinearMap, Parity, Perm, Vector};
use crate::group::{ActionRep, Symmetry};
use crate::scalar::{FieldSpec, Scalar};
use crate::superalgebra::{LModule, StructureConstants};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NrError {
    #[error("degree {0} is out of range for this operation")]
    DegreeOutOfRange(i64),
    #[error("expected an element of degree (1, 0), got ({0}, {1})")]
    WrongBidegree(i64, Parity),
    #[error("operands live on different spaces")]
    SpaceMismatch,
    #[error("element is not equivariant")]
    NotEquivariant,
    #[error("Maurer-Cartan verdict {mc} disagrees with the Jacobi check {jacobi}")]
    OracleDisagreement { mc: bool, jacobi: bool },
    #[error(transparent)]
    Cochain(#[from] CochainError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Payload {
    Vector(Vector),
    Map(Cochain),
}

/// Homogeneous element of degree `(n, f)`: a super-alternating map of arity
/// `n + 1` and parity `f` (for `n = -1`, a vector of parity `f`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NRElement {
    field: FieldSpec,
    basis: Arc<GradedBasis>,
    degree: i64,
    parity: Parity,
    payload: Payload,
}

impl NRElement {
    pub fn from_cochain(c: Cochain) -> Result<NRElement, NrError> {
        if c.space().algebra() != c.space().module() {
            return Err(NrError::SpaceMismatch);
        }
        if c.arity() == 0 {
            return NRElement::from_vector(c.space().module().clone(), c.coords().clone(), c.parity());
        }
        Ok(NRElement {
            field: c.space().field(),
            basis: c.space().algebra().clone(),
            degree: c.arity() as i64 - 1,
            parity: c.parity(),
            payload: Payload::Map(c),
        })
    }

    pub fn from_vector(basis: Arc<GradedBasis>, v: Vector, parity: Parity) -> Result<NRElement, NrError> {
        if v.coords().iter().any(|(i, _)| basis.parity(*i) != parity) {
            return Err(NrError::Cochain(CochainError::Inhomogeneous(parity)));
        }
        Ok(NRElement {
            field: v.field(),
            basis,
            degree: -1,
            parity,
            payload: Payload::Vector(v),
        })
    }

    pub fn zero(field: FieldSpec, basis: Arc<GradedBasis>, degree: i64, parity: Parity) -> NRElement {
        assert!(degree >= -1);
        if degree == -1 {
            let v = Vector::zero(field, basis.dim());
            return NRElement {
                field,
                basis,
                degree,
                parity,
                payload: Payload::Vector(v),
            };
        }
        let space = Arc::new(CochainSpace::new(field, basis.clone(), basis.clone(), degree as usize + 1));
        NRElement {
            field,
            basis,
            degree,
            parity,
            payload: Payload::Map(Cochain::zero(space, parity)),
        }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn arity(&self) -> usize {
        (self.degree + 1) as usize
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn cochain(&self) -> Option<&Cochain> {
        match &self.payload {
            Payload::Map(c) => Some(c),
            Payload::Vector(_) => None,
        }
    }

    pub fn vector(&self) -> Option<&Vector> {
        match &self.payload {
            Payload::Vector(v) => Some(v),
            Payload::Map(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.payload {
            Payload::Vector(v) => v.is_zero(),
            Payload::Map(c) => c.is_zero(),
        }
    }

    /// Value on a basis tuple of length `n + 1`.
    pub fn eval_basis(&self, tuple: &[usize]) -> Vector {
        match &self.payload {
            Payload::Vector(v) => {
                assert!(tuple.is_empty());
                v.clone()
            }
            Payload::Map(c) => c.eval_basis(tuple),
        }
    }

    /// `F(e_{x_1}, .., e_{x_n}, v)` for a vector in the last slot.
    fn eval_last(&self, prefix: &[usize], v: &Vector) -> Vector {
        let mut out = Vector::zero(self.field, self.basis.dim());
        let mut args = prefix.to_vec();
        args.push(0);
        for (k, c) in v.coords() {
            *args.last_mut().unwrap() = *k;
            out.add_assign_scaled(c, &self.eval_basis(&args));
        }
        out
    }

    pub fn add(&self, other: &NRElement) -> NRElement {
        self.combine(other, &self.field.one())
    }

    /// `self + s * other`.
    pub fn combine(&self, other: &NRElement, s: &Scalar) -> NRElement {
        assert_eq!((self.degree, self.parity), (other.degree, other.parity));
        let payload = match (&self.payload, &other.payload) {
            (Payload::Vector(a), Payload::Vector(b)) => Payload::Vector(a.axpy(s, b)),
            (Payload::Map(a), Payload::Map(b)) => Payload::Map(a.add(&b.scale(s))),
            _ => unreachable!(),
        };
        NRElement {
            payload,
            ..self.clone()
        }
    }

    pub fn scale(&self, s: &Scalar) -> NRElement {
        let payload = match &self.payload {
            Payload::Vector(a) => Payload::Vector(a.scale(s)),
            Payload::Map(a) => Payload::Map(a.scale(s)),
        };
        NRElement {
            payload,
            ..self.clone()
        }
    }

    pub fn is_equivariant(&self, rep: &ActionRep) -> bool {
        match &self.payload {
            Payload::Vector(v) => (0..rep.group().order()).all(|g| rep.apply(g, v) == *v),
            Payload::Map(c) => c.is_equivariant(&Symmetry {
                algebra: rep.clone(),
                module: rep.clone(),
            }),
        }
    }
}

fn check_operands(a: &NRElement, b: &NRElement) -> Result<(), NrError> {
    if a.basis != b.basis || a.field != b.field {
        return Err(NrError::SpaceMismatch);
    }
    if a.degree < 0 {
        return Err(NrError::DegreeOutOfRange(a.degree));
    }
    if b.degree < -1 {
        return Err(NrError::DegreeOutOfRange(b.degree));
    }
    Ok(())
}

/// `(F * F')(X) = (-1)^{f'(x_1 + .. + x_n)} F(X_1, .., X_n, F'(X_{n+1}, ..))`
/// on one basis tuple of length `n + n' + 1`.
pub fn star_eval(f: &NRElement, g: &NRElement, x: &[usize]) -> Vector {
    let n = f.degree as usize;
    let head = &x[..n];
    let inner = g.eval_basis(&x[n..]);
    let v = f.eval_last(head, &inner);
    if (g.parity * f.basis.tuple_parity(head)).is_odd() {
        v.neg()
    } else {
        v
    }
}

/// The raw (not super-alternating) map `F * F'` on all tuples.
pub fn star(f: &NRElement, g: &NRElement) -> Result<MultilinearMap, NrError> {
    check_operands(f, g)?;
    let arity = (f.degree + g.degree + 1) as usize;
    let mut out = MultilinearMap::zero(f.field, arity, f.parity + g.parity, f.basis.clone(), f.basis.clone());
    for t in MultilinearMap::all_tuples(f.basis.dim(), arity) {
        let v = star_eval(f, g, &t);
        if !v.is_zero() {
            out.set(t, v).expect("star preserves homogeneity");
        }
    }
    Ok(out)
}

/// `(F o F')(X) = sum over (n, n'+1)-shuffles of eps(s, X) (F * F')(s^-1 X)`
/// on any basis tuple.
pub fn circ_eval(f: &NRElement, g: &NRElement, shuffles: &[Perm], x: &[usize]) -> Vector {
    let pars: Vec<Parity> = x.iter().map(|&i| f.basis.parity(i)).collect();
    let mut out = Vector::zero(f.field, f.basis.dim());
    for s in shuffles {
        let eps = koszul_sign(s, &pars).expect("degrees match");
        let y = s.act_inverse_on(x);
        let v = star_eval(f, g, &y);
        out.add_assign_scaled(&f.field.from_int(eps), &v);
    }
    out
}

fn shuffles_for(f: &NRElement, g: &NRElement) -> Vec<Perm> {
    Perm::shuffles(f.degree as usize, (g.degree + 1) as usize)
}

fn from_canonical_values<F>(field: FieldSpec, basis: &Arc<GradedBasis>, degree: i64, parity: Parity, value: F) -> NRElement
where
    F: Fn(&[usize]) -> Vector + Sync,
{
    if degree == -1 {
        let v = value(&[]);
        return NRElement::from_vector(basis.clone(), v, parity).expect("homogeneous");
    }
    let space = Arc::new(CochainSpace::new(field, basis.clone(), basis.clone(), degree as usize + 1));
    let dm = basis.dim();
    let parts: Vec<Vec<(usize, Scalar)>> = space
        .tuples()
        .par_iter()
        .enumerate()
        .map(|(t, tuple)| {
            value(tuple)
                .coords()
                .iter()
                .map(|(k, c)| (t * dm + k, c.clone()))
                .collect()
        })
        .collect();
    let coords = Vector::from_sparse(field, space.dim(), parts.concat());
    let c = Cochain::new(space, parity, coords).expect("homogeneous");
    NRElement::from_cochain(c).expect("same space")
}

/// `F o F'`, in canonical coordinates of degree `(n + n', f + f')`.
pub fn circ(f: &NRElement, g: &NRElement) -> Result<NRElement, NrError> {
    check_operands(f, g)?;
    let sh = shuffles_for(f, g);
    Ok(from_canonical_values(
        f.field,
        &f.basis,
        f.degree + g.degree,
        f.parity + g.parity,
        |x| circ_eval(f, g, &sh, x),
    ))
}

/// `[F, F'] = F o F' - (-1)^{nn' + ff'} F' o F`.
pub fn nr_bracket(f: &NRElement, g: &NRElement) -> Result<NRElement, NrError> {
    for e in [f, g] {
        if e.degree < 0 {
            return Err(NrError::DegreeOutOfRange(e.degree));
        }
    }
    let a = circ(f, g)?;
    let b = circ(g, f)?;
    let odd = (f.degree * g.degree) % 2 != 0;
    let s = if odd != (f.parity * g.parity).is_odd() { 1 } else { -1 };
    Ok(a.combine(&b, &f.field.from_int(s)))
}

/// The bracket of a Lie superalgebra as an element of degree `(1, 0)`.
pub fn bracket_to_element(l: &StructureConstants) -> NRElement {
    let space = Arc::new(CochainSpace::new(l.field(), l.basis().clone(), l.basis().clone(), 2));
    let c = Cochain::from_map(space, &l.as_multilinear()).expect("bracket is even");
    NRElement::from_cochain(c).expect("same space")
}

/// Inverse of [`bracket_to_element`]; the result is not validated.
pub fn element_to_bracket(f0: &NRElement) -> Result<StructureConstants, NrError> {
    if f0.degree != 1 || f0.parity != Parity::Even {
        return Err(NrError::WrongBidegree(f0.degree, f0.parity));
    }
    let d = f0.basis.dim();
    let mut table = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            table.push(f0.eval_basis(&[i, j]));
        }
    }
    Ok(StructureConstants::from_table(f0.field, f0.basis.clone(), table).expect("sizes match"))
}

#[derive(Debug, Clone)]
pub struct McReport {
    pub is_mc: bool,
    pub jacobi_ok: bool,
    pub residual: NRElement,
}

/// Whether `[F0, F0] = 0`, cross-checked against the Jacobi loop on the
/// bracket that `F0` encodes.
pub fn mc_check(f0: &NRElement, rep: Option<&ActionRep>) -> Result<McReport, NrError> {
    if f0.degree != 1 || f0.parity != Parity::Even {
        return Err(NrError::WrongBidegree(f0.degree, f0.parity));
    }
    if let Some(r) = rep {
        if !f0.is_equivariant(r) {
            return Err(NrError::NotEquivariant);
        }
    }
    let residual = nr_bracket(f0, f0)?;
    let is_mc = residual.is_zero();
    let jacobi_ok = element_to_bracket(f0)?.validate().jacobi_ok;
    if is_mc != jacobi_ok {
        return Err(NrError::OracleDisagreement { mc: is_mc, jacobi: jacobi_ok });
    }
    Ok(McReport {
        is_mc,
        jacobi_ok,
        residual,
    })
}

/// Empirical relation between the coboundary and bracketing with `F0`: for
/// an `n`-cochain `f` (an element of degree `n - 1`), the sign `s` with
/// `delta f = s [F0, f]`, if one sign fits every probe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignEntry {
    pub arity: usize,
    pub parity: Parity,
    /// `Some(s)` when a single sign fits every nonzero probe, `None` when no
    /// sign does, and `Some(0)` when every probe had `delta f = 0`.
    pub sign: Option<i64>,
}

/// Probes every basis cochain of arity `1..=max_arity` of both parities.
pub fn coboundary_sign_table(l: &StructureConstants, max_arity: usize) -> Result<Vec<SignEntry>, NrError> {
    let f0 = bracket_to_element(l);
    let m = LModule::adjoint(l);
    let mut out = Vec::new();
    for arity in 1..=max_arity {
        let space = CochainSpace::for_pair(l, &m, arity);
        for p in [Parity::Even, Parity::Odd] {
            let mut found: Option<i64> = Some(0);
            for c in space.block(p) {
                let f = Cochain::new(space.clone(), p, Vector::basis(l.field(), space.dim(), c))?;
                let df = coboundary(&f, l, &m, None)?;
                let br = nr_bracket(&f0, &NRElement::from_cochain(f)?)?;
                let br = br.cochain().expect("positive degree").coords().clone();
                let d = df.coords().clone();
                let s = if d.is_zero() && br.is_zero() {
                    continue;
                } else if d == br {
                    1
                } else if d == br.neg() {
                    -1
                } else {
                    found = None;
                    break;
                };
                match found {
                    Some(0) => found = Some(s),
                    Some(t) if t == s => {}
                    _ => {
                        found = None;
                        break;
                    }
                }
            }
            out.push(SignEntry {
                arity,
                parity: p,
                sign: found,
            });
        }
    }
    Ok(out)
}
