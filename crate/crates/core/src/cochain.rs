//! Equivariant cochains, the coboundary, and cohomology dimensions.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::graded::{canonicalize, superalt_basis, superalt_expand, GradedBasis, GradedError, MultilinearMap, Parity, Vector};
use crate::group::{fixed_subspace, induced_action_on_cochains, GroupError, Symmetry};
use crate::linalg::{Echelon, Matrix, SparseRow};
use crate::scalar::{FieldSpec, Scalar};
use crate::superalgebra::{LModule, StructureConstants};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CochainError {
    #[error("basis mismatch: expected dimension {expected}, got {got}")]
    BasisMismatch { expected: usize, got: usize },
    #[error("cochain coordinates are not homogeneous of parity {0}")]
    Inhomogeneous(Parity),
    #[error("cochain is not equivariant")]
    NotEquivariant,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

/// Coordinates for super-alternating `n`-linear maps `L^n -> M`: one slot per
/// (canonical tuple `t`, module basis vector `m`), at index `t * dim M + m`.
pub struct CochainSpace {
    field: FieldSpec,
    algebra: Arc<GradedBasis>,
    module: Arc<GradedBasis>,
    arity: usize,
    tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl fmt::Debug for CochainSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CochainSpace(n={}, {} tuples x {} module dims)",
            self.arity,
            self.tuples.len(),
            self.module.dim()
        )
    }
}

impl PartialEq for CochainSpace {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.arity == other.arity
            && self.algebra == other.algebra
            && self.module == other.module
    }
}

impl Eq for CochainSpace {}

impl CochainSpace {
    pub fn new(field: FieldSpec, algebra: Arc<GradedBasis>, module: Arc<GradedBasis>, arity: usize) -> CochainSpace {
        let tuples = superalt_basis(&algebra, arity);
        let index = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        CochainSpace {
            field,
            algebra,
            module,
            arity,
            tuples,
            index,
        }
    }

    pub fn for_pair(l: &StructureConstants, m: &LModule, arity: usize) -> Arc<CochainSpace> {
        Arc::new(CochainSpace::new(l.field(), l.basis().clone(), m.space().clone(), arity))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn algebra(&self) -> &Arc<GradedBasis> {
        &self.algebra
    }

    pub fn module(&self) -> &Arc<GradedBasis> {
        &self.module
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn tuple_index(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn dim(&self) -> usize {
        self.tuples.len() * self.module.dim()
    }

    pub fn coord(&self, tuple: usize, m: usize) -> usize {
        tuple * self.module.dim() + m
    }

    /// Parity of the cochain that is nonzero only in this coordinate.
    pub fn coord_parity(&self, idx: usize) -> Parity {
        let dm = self.module.dim();
        self.algebra.tuple_parity(&self.tuples[idx / dm]) + self.module.parity(idx % dm)
    }

    pub fn block(&self, p: Parity) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.coord_parity(i) == p).collect()
    }
}

/// A homogeneous super-alternating cochain in canonical coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct Cochain {
    space: Arc<CochainSpace>,
    parity: Parity,
    coords: Vector,
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain(n={}, parity {}) {{", self.arity(), self.parity)?;
        let dm = self.space.module.dim();
        for (i, c) in self.coords.coords() {
            let t: Vec<&str> = self.space.tuples[i / dm].iter().map(|&k| self.space.algebra.name(k)).collect();
            write!(f, " ({}) -> {}*{};", t.join(","), c, self.space.module.name(i % dm))?;
        }
        write!(f, " }}")
    }
}

impl Cochain {
    pub fn new(space: Arc<CochainSpace>, parity: Parity, coords: Vector) -> Result<Cochain, CochainError> {
        if coords.dim() != space.dim() {
            return Err(CochainError::BasisMismatch {
                expected: space.dim(),
                got: coords.dim(),
            });
        }
        if coords.coords().iter().any(|(i, _)| space.coord_parity(*i) != parity) {
            return Err(CochainError::Inhomogeneous(parity));
        }
        Ok(Cochain { space, parity, coords })
    }

    pub fn zero(space: Arc<CochainSpace>, parity: Parity) -> Cochain {
        let coords = Vector::zero(space.field, space.dim());
        Cochain { space, parity, coords }
    }

    /// The 0-cochain given by a homogeneous module element.
    pub fn from_module_element(space: Arc<CochainSpace>, m: &Vector) -> Result<Cochain, CochainError> {
        assert_eq!(space.arity, 0);
        let p = m.parity_in(&space.module).unwrap_or(Parity::Even);
        Cochain::new(space, p, m.clone())
    }

    /// Reads off canonical coordinates of a super-alternating map.
    pub fn from_map(space: Arc<CochainSpace>, f: &MultilinearMap) -> Result<Cochain, CochainError> {
        let mut coords = Vec::new();
        for (t, tuple) in space.tuples.iter().enumerate() {
            for (m, c) in f.eval(tuple).coords() {
                coords.push((space.coord(t, *m), c.clone()));
            }
        }
        let v = Vector::from_sparse(space.field, space.dim(), coords);
        Cochain::new(space, f.parity(), v)
    }

    /// Expands to the full component table on all tuples.
    pub fn to_map(&self) -> MultilinearMap {
        let per_tuple: Vec<Vector> = (0..self.space.tuples.len()).map(|t| self.slot(t)).collect();
        superalt_expand(
            self.space.field,
            self.space.algebra.clone(),
            self.space.module.clone(),
            self.space.arity,
            self.parity,
            &per_tuple,
        )
        .expect("coordinates match the canonical basis")
    }

    pub fn space(&self) -> &Arc<CochainSpace> {
        &self.space
    }

    pub fn arity(&self) -> usize {
        self.space.arity
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn coords(&self) -> &Vector {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    /// Value on the canonical tuple with index `t`.
    fn slot(&self, t: usize) -> Vector {
        let dm = self.space.module.dim();
        let lo = t * dm;
        let c = self.coords.coords();
        let start = c.partition_point(|(i, _)| *i < lo);
        let end = c.partition_point(|(i, _)| *i < lo + dm);
        let entries: SparseRow = c[start..end].iter().map(|(i, v)| (i - lo, v.clone())).collect();
        Vector::from_sparse(self.space.field, dm, entries)
    }

    /// `f(e_{x_1}, .., e_{x_n})` for any index tuple.
    pub fn eval_basis(&self, tuple: &[usize]) -> Vector {
        let dm = self.space.module.dim();
        match canonicalize(tuple, self.space.algebra.parities()) {
            None => Vector::zero(self.space.field, dm),
            Some((sign, t)) => {
                let v = self.slot(self.space.index[&t]);
                if sign > 0 {
                    v
                } else {
                    v.neg()
                }
            }
        }
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn eval(&self, args: &[Vector]) -> Vector {
        assert_eq!(args.len(), self.arity());
        let f = self.space.field;
        let mut out = Vector::zero(f, self.space.module.dim());
        let mut stack: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), f.one())];
        for a in args {
            let mut next = Vec::new();
            for (prefix, c) in &stack {
                for (k, x) in a.coords() {
                    let mut p = prefix.clone();
                    p.push(*k);
                    next.push((p, c * x));
                }
            }
            stack = next;
        }
        for (t, c) in stack {
            out.add_assign_scaled(&c, &self.eval_basis(&t));
        }
        out
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.parity, other.parity);
        Cochain {
            space: self.space.clone(),
            parity: self.parity,
            coords: self.coords.add(&other.coords),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Cochain {
        Cochain {
            space: self.space.clone(),
            parity: self.parity,
            coords: self.coords.scale(s),
        }
    }

    pub fn neg(&self) -> Cochain {
        self.scale(&-self.space.field.one())
    }

    /// Whether `g.f = f` for every group element.
    pub fn is_equivariant(&self, sym: &Symmetry) -> bool {
        let ind = induced_action_on_cochains(sym, self.arity());
        let v = self.coords.to_dense();
        ind.matrices().iter().all(|m| m.mul_vec(&v) == v)
    }
}

fn parity_sum(b: &GradedBasis, idx: &[usize]) -> Parity {
    b.tuple_parity(idx)
}

fn check_pair(f: &Cochain, l: &StructureConstants, m: &LModule) -> Result<(), CochainError> {
    if *f.space.algebra != **l.basis() {
        return Err(CochainError::BasisMismatch {
            expected: l.dim(),
            got: f.space.algebra.dim(),
        });
    }
    if *f.space.module != **m.space() || m.algebra_dim() != l.dim() {
        return Err(CochainError::BasisMismatch {
            expected: m.dim(),
            got: f.space.module.dim(),
        });
    }
    Ok(())
}

/// `(delta f)(x_0, .., x_n)` on a basis tuple of length `n + 1` (0-based
/// positions), by the two-sum formula.
pub fn coboundary_eval(f: &Cochain, l: &StructureConstants, m: &LModule, x: &[usize]) -> Vector {
    let field = l.field();
    let b = l.basis();
    let dm = m.dim();
    let n1 = x.len();
    assert_eq!(n1, f.arity() + 1);
    let p = |k: usize| b.parity(x[k]);
    let mut out = Vector::zero(field, dm);
    for i in 0..n1 {
        for j in i + 1..n1 {
            let e = Parity::from_bit(((i + j) % 2) as u8)
                + (p(i) + p(j)) * parity_sum(b, &x[..i])
                + p(j) * parity_sum(b, &x[i + 1..j]);
            let rest: Vec<usize> = (0..n1).filter(|&k| k != i && k != j).map(|k| x[k]).collect();
            let br = l.bracket_basis(x[i], x[j]);
            for (k, c) in br.coords() {
                let mut args = Vec::with_capacity(n1 - 1);
                args.push(*k);
                args.extend_from_slice(&rest);
                let s = if e.is_odd() { -c } else { c.clone() };
                out.add_assign_scaled(&s, &f.eval_basis(&args));
            }
        }
    }
    for i in 0..n1 {
        let e = Parity::from_bit((i % 2) as u8) + p(i) * (f.parity + parity_sum(b, &x[..i]));
        let rest: Vec<usize> = (0..n1).filter(|&k| k != i).map(|k| x[k]).collect();
        let v = m.act_left(x[i], &f.eval_basis(&rest));
        let s = if e.is_odd() { -field.one() } else { field.one() };
        out.add_assign_scaled(&s, &v);
    }
    out
}

/// `delta^n f` in canonical coordinates of arity `n + 1`. With a symmetry,
/// `f` must be equivariant.
pub fn coboundary(
    f: &Cochain,
    l: &StructureConstants,
    m: &LModule,
    sym: Option<&Symmetry>,
) -> Result<Cochain, CochainError> {
    check_pair(f, l, m)?;
    if let Some(s) = sym {
        if !f.is_equivariant(s) {
            return Err(CochainError::NotEquivariant);
        }
    }
    let target = Arc::new(CochainSpace::new(l.field(), l.basis().clone(), m.space().clone(), f.arity() + 1));
    let mut coords = Vec::new();
    for (t, tuple) in target.tuples.iter().enumerate() {
        for (k, c) in coboundary_eval(f, l, m, tuple).coords() {
            coords.push((target.coord(t, *k), c.clone()));
        }
    }
    let v = Vector::from_sparse(l.field(), target.dim(), coords);
    Cochain::new(target, f.parity, v)
}

/// Sparse matrix of `delta^n` on all `n`-cochains (both parities), assembled
/// row by row from the formula.
pub fn coboundary_matrix_full(n: usize, l: &StructureConstants, m: &LModule) -> Matrix {
    let field = l.field();
    let src = CochainSpace::new(field, l.basis().clone(), m.space().clone(), n);
    let dst = CochainSpace::new(field, l.basis().clone(), m.space().clone(), n + 1);
    let b = l.basis();
    let dm = m.dim();
    let pars = b.parities();
    let mut rows: Vec<std::collections::BTreeMap<usize, Scalar>> = vec![Default::default(); dst.dim()];
    let add = |rows: &mut Vec<std::collections::BTreeMap<usize, Scalar>>, r: usize, c: usize, v: Scalar| {
        let e = rows[r].entry(c).or_insert_with(|| field.zero());
        *e = &*e + &v;
    };
    for (s, x) in dst.tuples.iter().enumerate() {
        let n1 = x.len();
        let mut prefix = vec![Parity::Even; n1 + 1];
        for k in 0..n1 {
            prefix[k + 1] = prefix[k] + pars[x[k]];
        }
        let between = |i: usize, j: usize| prefix[j] + prefix[i + 1];
        for i in 0..n1 {
            for j in i + 1..n1 {
                let (pi, pj) = (pars[x[i]], pars[x[j]]);
                let e = Parity::from_bit(((i + j) % 2) as u8) + (pi + pj) * prefix[i] + pj * between(i, j);
                for (k, c) in l.bracket_basis(x[i], x[j]).coords() {
                    let mut args = vec![*k];
                    args.extend((0..n1).filter(|&q| q != i && q != j).map(|q| x[q]));
                    let Some((sg, t)) = canonicalize(&args, pars) else {
                        continue;
                    };
                    let t = src.index[&t];
                    let mut v = c.clone();
                    if e.is_odd() != (sg < 0) {
                        v = -v;
                    }
                    for mm in 0..dm {
                        add(&mut rows, s * dm + mm, t * dm + mm, v.clone());
                    }
                }
            }
        }
        for i in 0..n1 {
            let pi = pars[x[i]];
            let rest: Vec<usize> = (0..n1).filter(|&q| q != i).map(|q| x[q]).collect();
            let Some((sg, t)) = canonicalize(&rest, pars) else {
                continue;
            };
            let t = src.index[&t];
            let tp = b.tuple_parity(&src.tuples[t]);
            for mm in 0..dm {
                let fp = tp + m.space().parity(mm);
                let e = Parity::from_bit((i % 2) as u8) + pi * (fp + prefix[i]);
                let neg = e.is_odd() != (sg < 0);
                for (mo, a) in m.act_basis(x[i], mm).coords() {
                    let v = if neg { -a } else { a.clone() };
                    add(&mut rows, s * dm + mo, t * dm + mm, v);
                }
            }
        }
    }
    let rows: Vec<SparseRow> = rows
        .into_iter()
        .map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect())
        .collect();
    Matrix::from_sparse_rows(field, src.dim(), rows)
}

/// Basis of the (equivariant) `n`-cochains of one parity, as columns in full
/// canonical coordinates. Every column has a unit entry at its pivot row,
/// where all other columns vanish.
#[derive(Debug, Clone)]
pub struct CochainBasis {
    pub parity: Parity,
    pub columns: Matrix,
    pub pivots: Vec<usize>,
}

impl CochainBasis {
    pub fn dim(&self) -> usize {
        self.columns.ncols()
    }

    /// Coordinates of `v` in this basis, verified exactly.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let c: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        (self.columns.mul_vec(&c) == v).then_some(c)
    }
}

/// Equivariant cochain bases for both parities (all cochains if `sym` is None).
pub fn cochain_bases(
    space: &CochainSpace,
    sym: Option<&Symmetry>,
) -> Result<[CochainBasis; 2], CochainError> {
    let field = space.field;
    let full = space.dim();
    let ind = sym.map(|s| induced_action_on_cochains(s, space.arity));
    let build = |p: Parity| -> Result<CochainBasis, CochainError> {
        let block = space.block(p);
        let local = match &ind {
            None => Matrix::identity(field, block.len()),
            Some(_) if block.is_empty() => Matrix::zeros(field, 0, 0),
            Some(rep) => {
                let mats: Vec<Matrix> = rep
                    .matrices()
                    .iter()
                    .map(|a| a.select_rows(&block).select_columns(&block))
                    .collect();
                fixed_subspace(rep.group().order(), &mats)?
            }
        };
        let mut rows: Vec<SparseRow> = vec![Vec::new(); full];
        for (lr, &gr) in block.iter().enumerate() {
            rows[gr] = local.row(lr).clone();
        }
        let columns = Matrix::from_sparse_rows(field, local.ncols(), rows);
        let t = columns.transpose();
        let pivots = (0..columns.ncols()).map(|c| t.row(c)[0].0).collect();
        Ok(CochainBasis {
            parity: p,
            columns,
            pivots,
        })
    };
    let (e, o) = rayon::join(|| build(Parity::Even), || build(Parity::Odd));
    Ok([e?, o?])
}

/// Matrix of `delta^n` restricted to one parity block of the equivariant
/// cochains, in the bases from [`cochain_bases`].
fn restricted_block(
    full: &Matrix,
    src: &CochainBasis,
    dst: &CochainBasis,
) -> Result<Matrix, CochainError> {
    let field = full.field();
    let image = full.mul(&src.columns);
    let mut cols = Vec::with_capacity(image.ncols());
    for v in image.columns() {
        let c = dst.coordinates(&v).ok_or(CochainError::NotEquivariant)?;
        cols.push(c);
    }
    Ok(Matrix::from_columns(field, dst.dim(), &cols))
}

/// Matrix of `delta^n`; with a symmetry, restricted to equivariant cochains
/// and written in the bases of [`cochain_bases`] (even columns first). The
/// odd-to-even and even-to-odd blocks are zero.
pub fn coboundary_matrix(
    n: usize,
    l: &StructureConstants,
    m: &LModule,
    sym: Option<&Symmetry>,
) -> Result<Matrix, CochainError> {
    let full = coboundary_matrix_full(n, l, m);
    let Some(sym) = sym else {
        return Ok(full);
    };
    let src = CochainSpace::new(l.field(), l.basis().clone(), m.space().clone(), n);
    let dst = CochainSpace::new(l.field(), l.basis().clone(), m.space().clone(), n + 1);
    let [se, so] = cochain_bases(&src, Some(sym))?;
    let [de, d_o] = cochain_bases(&dst, Some(sym))?;
    let even = restricted_block(&full, &se, &de)?;
    let odd = restricted_block(&full, &so, &d_o)?;
    let field = l.field();
    let top = even.hstack(&Matrix::zeros(field, de.dim(), so.dim()));
    let bottom = Matrix::zeros(field, d_o.dim(), se.dim()).hstack(&odd);
    Ok(top.vstack(&bottom))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCohomology {
    pub cochains: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub cohomology: usize,
    /// Cocycles whose classes form a basis of the cohomology (only filled
    /// when requested).
    pub representatives: Vec<Cochain>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    pub n: usize,
    pub even: ParityCohomology,
    pub odd: ParityCohomology,
}

impl CohomologyReport {
    pub fn block(&self, p: Parity) -> &ParityCohomology {
        match p {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }
}

/// Equivariant `H^n(L; M)` per parity; ordinary cohomology when `sym` is None.
pub fn cohomology(
    n: usize,
    l: &StructureConstants,
    m: &LModule,
    sym: Option<&Symmetry>,
) -> Result<CohomologyReport, CochainError> {
    cohomology_impl(n, l, m, sym, false)
}

/// As [`cohomology`], also returning representative cocycles.
pub fn cohomology_with_representatives(
    n: usize,
    l: &StructureConstants,
    m: &LModule,
    sym: Option<&Symmetry>,
) -> Result<CohomologyReport, CochainError> {
    cohomology_impl(n, l, m, sym, true)
}

fn cohomology_impl(
    n: usize,
    l: &StructureConstants,
    m: &LModule,
    sym: Option<&Symmetry>,
    reps: bool,
) -> Result<CohomologyReport, CochainError> {
    let field = l.field();
    let spaces: Vec<Arc<CochainSpace>> = (n.saturating_sub(1)..=n + 1)
        .map(|k| CochainSpace::for_pair(l, m, k))
        .collect();
    let bases: Vec<[CochainBasis; 2]> = spaces
        .iter()
        .map(|s| cochain_bases(s, sym))
        .collect::<Result<_, _>>()?;
    let (d_next, d_prev) = rayon::join(
        || coboundary_matrix_full(n, l, m),
        || (n > 0).then(|| coboundary_matrix_full(n - 1, l, m)),
    );
    let here = if n > 0 { 1 } else { 0 };
    let mut blocks = Vec::new();
    for (pi, p) in [Parity::Even, Parity::Odd].into_iter().enumerate() {
        let cur = &bases[here][pi];
        let next = &bases[here + 1][pi];
        let dn = restricted_block(&d_next, cur, next)?;
        let dprev = match &d_prev {
            Some(d) => Some(restricted_block(d, &bases[0][pi], cur)?),
            None => None,
        };
        let (rank_n, rank_prev) = rayon::join(|| dn.rank(), || dprev.as_ref().map_or(0, |d| d.rank()));
        let cochains = cur.dim();
        let cocycles = cochains - rank_n;
        let mut representatives = Vec::new();
        if reps {
            let mut ech = Echelon::new(field, cochains);
            if let Some(d) = &dprev {
                for col in d.columns() {
                    ech.insert(crate::linalg::sparse_from_dense(&col));
                }
            }
            let z = dn.nullspace();
            for col in z.columns() {
                let row = crate::linalg::sparse_from_dense(&col);
                if ech.insert(row) {
                    let full = cur.columns.mul_vec(&col);
                    let v = Vector::from_dense(field, &full);
                    representatives.push(Cochain::new(spaces[here].clone(), p, v)?);
                }
            }
        }
        blocks.push(ParityCohomology {
            cochains,
            cocycles,
            coboundaries: rank_prev,
            cohomology: cocycles - rank_prev,
            representatives,
        });
    }
    let odd = blocks.pop().unwrap();
    let even = blocks.pop().unwrap();
    Ok(CohomologyReport { n, even, odd })
}

/// An equivariant cochain `f` of arity `n - 1` and the parity of `target`
/// with `delta f = target`, if one exists. The answer is verified by
/// recomputing `delta f` directly.
pub fn solve_coboundary(
    target: &Cochain,
    l: &StructureConstants,
    m: &LModule,
    sym: Option<&Symmetry>,
) -> Result<Option<Cochain>, CochainError> {
    check_pair(target, l, m)?;
    let n = target.arity();
    assert!(n >= 1, "0-cochains are never coboundaries");
    let src = CochainSpace::for_pair(l, m, n - 1);
    let p = target.parity();
    let basis = &cochain_bases(&src, sym)?[p.bit() as usize];
    let image = coboundary_matrix_full(n - 1, l, m).mul(&basis.columns);
    let Some(x) = image.solve(&target.coords().to_dense()) else {
        return Ok(None);
    };
    let v = Vector::from_dense(l.field(), &basis.columns.mul_vec(&x));
    let f = Cochain::new(src, p, v)?;
    if coboundary(&f, l, m, sym)? != *target {
        return Err(CochainError::Group(GroupError::OracleDisagreement(
            "coboundary solve does not reproduce its target".into(),
        )));
    }
    Ok(Some(f))
}

/// Whether `delta f = 0`.
pub fn is_cocycle(f: &Cochain, l: &StructureConstants, m: &LModule) -> Result<bool, CochainError> {
    Ok(coboundary(f, l, m, None)?.is_zero())
}

/// `{m in M_0 : [x, m] = 0 for all x}`, intersected with the fixed points of
/// the group when a symmetry is given. Columns in module coordinates.
pub fn annihilator(l: &StructureConstants, m: &LModule, sym: Option<&Symmetry>) -> Matrix {
    let field = l.field();
    let even: Vec<usize> = (0..m.dim()).filter(|&j| !m.space().parity(j).is_odd()).collect();
    let mut rows: Vec<SparseRow> = Vec::new();
    for i in 0..l.dim() {
        rows.extend(m.action_matrix(i).select_columns(&even).rows().iter().cloned());
    }
    if let Some(s) = sym {
        let id = Matrix::identity(field, m.dim());
        for g in 0..s.group().order() {
            let d = s.module.matrix(g).sub(&id).select_columns(&even);
            rows.extend(d.rows().iter().cloned());
        }
    }
    let rows: Vec<SparseRow> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let k = Matrix::from_sparse_rows(field, even.len(), rows).nullspace();
    let mut out: Vec<SparseRow> = vec![Vec::new(); m.dim()];
    for (lr, &gr) in even.iter().enumerate() {
        out[gr] = k.row(lr).clone();
    }
    Matrix::from_sparse_rows(field, k.ncols(), out)
}

/// Even equivariant derivations `L -> M` and the inner ones, each as a
/// `dim M x dim L` matrix (column `k` is the image of `e_k`).
#[derive(Debug, Clone)]
pub struct Derivations {
    pub derivations: Vec<Matrix>,
    pub inner: Vec<Matrix>,
}

impl Derivations {
    pub fn outer_dimension(&self) -> usize {
        self.derivations.len() - self.inner.len()
    }
}

/// Solves `D[a,b] = [a, Db] - (-1)^{ab} [b, Da]` and `g D = D g` directly
/// for even maps `D`.
pub fn derivations(l: &StructureConstants, m: &LModule, sym: Option<&Symmetry>) -> Derivations {
    let field = l.field();
    let (dl, dm) = (l.dim(), m.dim());
    let lb = l.basis();
    let mb = m.space();
    let mut var = HashMap::new();
    let mut vars = Vec::new();
    for k in 0..dl {
        for j in 0..dm {
            if lb.parity(k) == mb.parity(j) {
                var.insert((k, j), vars.len());
                vars.push((k, j));
            }
        }
    }
    let nv = vars.len();
    let mut rows: Vec<SparseRow> = Vec::new();
    let mut push = |acc: HashMap<usize, Scalar>| {
        let mut r: SparseRow = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        r.sort_by_key(|(c, _)| *c);
        if !r.is_empty() {
            rows.push(r);
        }
    };
    let bump = |acc: &mut HashMap<usize, Scalar>, c: usize, v: Scalar| {
        let e = acc.entry(c).or_insert_with(|| field.zero());
        *e = &*e + &v;
    };
    for a in 0..dl {
        for b in 0..dl {
            let sign = (lb.parity(a) * lb.parity(b)).sign();
            for out in 0..dm {
                let mut acc = HashMap::new();
                for (k, c) in l.bracket_basis(a, b).coords() {
                    if let Some(&v) = var.get(&(*k, out)) {
                        bump(&mut acc, v, c.clone());
                    }
                }
                for j in 0..dm {
                    let ab = m.act_basis(a, j).get(out);
                    if let (false, Some(&v)) = (ab.is_zero(), var.get(&(b, j))) {
                        bump(&mut acc, v, -ab);
                    }
                    let ba = m.act_basis(b, j).get(out);
                    if let (false, Some(&v)) = (ba.is_zero(), var.get(&(a, j))) {
                        bump(&mut acc, v, ba * field.from_int(sign));
                    }
                }
                push(acc);
            }
        }
    }
    if let Some(s) = sym {
        for g in 0..s.group().order() {
            let rm = s.module.matrix(g);
            let rl = s.algebra.matrix(g);
            for jo in 0..dm {
                for k in 0..dl {
                    let mut acc = HashMap::new();
                    for (j, c) in rm.row(jo) {
                        if let Some(&v) = var.get(&(k, *j)) {
                            bump(&mut acc, v, c.clone());
                        }
                    }
                    for kp in 0..dl {
                        let c = rl.get(kp, k);
                        if let (false, Some(&v)) = (c.is_zero(), var.get(&(kp, jo))) {
                            bump(&mut acc, v, -c);
                        }
                    }
                    push(acc);
                }
            }
        }
    }
    let kernel = Matrix::from_sparse_rows(field, nv, rows).nullspace();
    let to_matrix = |col: &[Scalar]| {
        let mut d = Matrix::zeros(field, dm, dl);
        for (idx, &(k, j)) in vars.iter().enumerate() {
            if !col[idx].is_zero() {
                d.set(j, k, col[idx].clone());
            }
        }
        d
    };
    let derivs: Vec<Matrix> = kernel.columns().iter().map(|c| to_matrix(c)).collect();

    // Inner: x -> [x, m] for m in M_0 fixed by the group.
    let even: Vec<usize> = (0..dm).filter(|&j| !mb.parity(j).is_odd()).collect();
    let fixed = match s_fixed_even(sym, &even, field, dm) {
        Some(f) => f,
        None => Matrix::identity(field, even.len()),
    };
    let mut ech = Echelon::new(field, dm * dl);
    let mut inner = Vec::new();
    for col in fixed.columns() {
        let mut mv = vec![field.zero(); dm];
        for (lr, &gr) in even.iter().enumerate() {
            mv[gr] = col[lr].clone();
        }
        let mvec = Vector::from_dense(field, &mv);
        let mut d = Matrix::zeros(field, dm, dl);
        for k in 0..dl {
            for (j, c) in m.act_left(k, &mvec).coords() {
                d.set(*j, k, c.clone());
            }
        }
        let flat: SparseRow = (0..dm)
            .flat_map(|j| d.row(j).iter().map(move |(k, c)| (j * dl + k, c.clone())))
            .collect();
        if ech.insert(flat) {
            inner.push(d);
        }
    }
    Derivations {
        derivations: derivs,
        inner,
    }
}

fn s_fixed_even(sym: Option<&Symmetry>, even: &[usize], field: FieldSpec, dm: usize) -> Option<Matrix> {
    let s = sym?;
    let id = Matrix::identity(field, dm);
    let mut rows = Vec::new();
    for g in 0..s.group().order() {
        let d = s.module.matrix(g).sub(&id).select_columns(even);
        rows.extend(d.rows().iter().filter(|r| !r.is_empty()).cloned());
    }
    Some(Matrix::from_sparse_rows(field, even.len(), rows).nullspace())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{ActionRep, FiniteGroup};
    use crate::superalgebra::make_gl;

    fn gl11_swap() -> (crate::superalgebra::LieSuperalgebra, LModule, Symmetry) {
        let gl = make_gl(1, 1);
        let f = gl.field();
        let mut swap = Matrix::zeros(f, 4, 4);
        for (c, r) in [(0, 1), (1, 0), (2, 3), (3, 2)] {
            swap.set(r, c, f.one());
        }
        let g = Arc::new(FiniteGroup::cyclic(2));
        let rep = ActionRep::cyclic_from_generator(g, gl.basis().clone(), swap).unwrap();
        let m = LModule::adjoint(&gl);
        let sym = Symmetry::new(rep.clone(), rep).unwrap();
        (gl, m, sym)
    }

    #[test]
    fn delta_zero_and_one_match_closed_forms() {
        let (gl, m, _) = gl11_swap();
        let f = gl.field();
        let s0 = CochainSpace::for_pair(&gl, &m, 0);
        let mv = Vector::basis(f, 4, 0).add(&Vector::basis(f, 4, 1).scale(&f.from_int(3)));
        let c0 = Cochain::from_module_element(s0, &mv).unwrap();
        let d0 = coboundary(&c0, &gl, &m, None).unwrap();
        for x in 0..4 {
            assert_eq!(d0.eval_basis(&[x]), m.act_left(x, &mv));
        }
        // an odd 1-cochain: e11 -> e12, e12 -> e22
        let s1 = CochainSpace::for_pair(&gl, &m, 1);
        let mut coords = Vector::zero(f, s1.dim());
        coords = coords.add(&Vector::basis(f, s1.dim(), s1.coord(0, 2)));
        coords = coords.add(&Vector::basis(f, s1.dim(), s1.coord(2, 1)));
        let c1 = Cochain::new(s1, Parity::Odd, coords).unwrap();
        let d1 = coboundary(&c1, &gl, &m, None).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let pa = gl.basis().parity(a);
                let pb = gl.basis().parity(b);
                let br = c1.eval(&[gl.bracket_basis(a, b).clone()]);
                let t1 = m.act_left(a, &c1.eval_basis(&[b]));
                let t2 = m.act_left(b, &c1.eval_basis(&[a]));
                // delta^1 f(x1,x2) = -f([x1,x2]) + (-1)^{x1 f}[x1,f(x2)] - (-1)^{x2(f+x1)}[x2,f(x1)]
                let s1 = f.from_int((pa * Parity::Odd).sign());
                let s2 = f.from_int((pb * (Parity::Odd + pa)).sign());
                let expect = br.neg().axpy(&s1, &t1).axpy(&-s2, &t2);
                assert_eq!(d1.eval_basis(&[a, b]), expect);
            }
        }
    }

    #[test]
    fn matrix_matches_direct_evaluation_and_squares_to_zero() {
        let (gl, m, _) = gl11_swap();
        for n in 0..3 {
            let d = coboundary_matrix_full(n, &gl, &m);
            let space = CochainSpace::for_pair(&gl, &m, n);
            for c in 0..space.dim() {
                let p = space.coord_parity(c);
                let f = Cochain::new(space.clone(), p, Vector::basis(gl.field(), space.dim(), c)).unwrap();
                let df = coboundary(&f, &gl, &m, None).unwrap();
                assert_eq!(df.coords().to_dense(), d.column(c));
            }
            let d2 = coboundary_matrix_full(n + 1, &gl, &m);
            assert!(d2.mul(&d).is_zero());
        }
    }

    #[test]
    fn equivariant_cohomology_of_fixture() {
        let (gl, m, sym) = gl11_swap();
        for n in 0..3 {
            let a = cohomology(n, &gl, &m, Some(&sym)).unwrap();
            for p in [Parity::Even, Parity::Odd] {
                let b = a.block(p);
                assert_eq!(b.cohomology, b.cocycles - b.coboundaries);
            }
        }
        let h0 = cohomology(0, &gl, &m, Some(&sym)).unwrap();
        assert_eq!(h0.even.cohomology, annihilator(&gl, &m, Some(&sym)).ncols());
        let h1 = cohomology(1, &gl, &m, Some(&sym)).unwrap();
        let der = derivations(&gl, &m, Some(&sym));
        assert_eq!(h1.even.cohomology, der.outer_dimension());
        assert_eq!(h1.even.cocycles, der.derivations.len());
    }

    #[test]
    fn annihilator_contains_identity() {
        let (gl, m, _) = gl11_swap();
        let ann = annihilator(&gl, &m, None);
        let f = gl.field();
        let id = vec![f.one(), f.one(), f.zero(), f.zero()];
        assert!(ann.hstack(&Matrix::from_columns(f, 4, &[id])).rank() == ann.ncols());
    }
}
