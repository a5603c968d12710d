//! Lie superalgebras and their modules, given by structure constants.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::graded::{GradedBasis, GradedError, MultilinearMap, Parity, Vector};
use crate::linalg::Matrix;
use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("basis mismatch: expected dimension {expected}, got {got}")]
    BasisMismatch { expected: usize, got: usize },
    #[error("structure constants violate {axiom}: {detail}")]
    Axiom { axiom: Axiom, detail: String },
    #[error("span is not closed under the bracket: {0}")]
    NotClosed(String),
    #[error("inconsistent structure constant for [{0}, {1}] and [{1}, {0}]")]
    InconsistentPair(String, String),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

/// The axioms checked by [`validate_superalgebra`] and [`validate_module`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Homogeneity,
    SuperAntisymmetry,
    SuperJacobi,
    ModuleJacobi,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Homogeneity => "homogeneity",
            Axiom::SuperAntisymmetry => "super-antisymmetry",
            Axiom::SuperJacobi => "super Jacobi identity",
            Axiom::ModuleJacobi => "module axiom",
        };
        f.write_str(s)
    }
}

/// A failing basis instance: both sides of the axiom, evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub axiom: Axiom,
    pub indices: Vec<usize>,
    pub lhs: Vector,
    pub rhs: Vector,
}

/// Cap on stored counterexamples per report; verdicts always use every instance.
pub const MAX_COUNTEREXAMPLES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub homogeneity_ok: bool,
    pub antisymmetry_ok: bool,
    pub jacobi_ok: bool,
    pub counterexamples: Vec<Counterexample>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.homogeneity_ok && self.antisymmetry_ok && self.jacobi_ok
    }

    fn first_failure(&self) -> Option<AlgebraError> {
        let c = self.counterexamples.first()?;
        Some(AlgebraError::Axiom {
            axiom: c.axiom,
            detail: format!("basis indices {:?}: {:?} != {:?}", c.indices, c.lhs, c.rhs),
        })
    }
}

/// Candidate bracket data: a graded basis and the full table `[e_i, e_j]`.
/// Nothing is assumed about the axioms; see [`LieSuperalgebra`] for the
/// validated form.
#[derive(Clone, PartialEq, Eq)]
pub struct StructureConstants {
    field: FieldSpec,
    basis: Arc<GradedBasis>,
    table: Vec<Vector>,
}

impl fmt::Debug for StructureConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "StructureConstants over {} on {:?}", self.field, self.basis.names())?;
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let v = &self.table[i * d + j];
                if !v.is_zero() {
                    writeln!(f, "  [{}, {}] = {:?}", self.basis.name(i), self.basis.name(j), v)?;
                }
            }
        }
        Ok(())
    }
}

impl StructureConstants {
    pub fn zero(field: FieldSpec, basis: Arc<GradedBasis>) -> StructureConstants {
        let d = basis.dim();
        StructureConstants {
            field,
            basis,
            table: vec![Vector::zero(field, d); d * d],
        }
    }

    /// Full table, row-major in `(i, j)`.
    pub fn from_table(
        field: FieldSpec,
        basis: Arc<GradedBasis>,
        table: Vec<Vector>,
    ) -> Result<StructureConstants, AlgebraError> {
        let d = basis.dim();
        if table.len() != d * d {
            return Err(AlgebraError::BasisMismatch {
                expected: d * d,
                got: table.len(),
            });
        }
        if let Some(v) = table.iter().find(|v| v.dim() != d) {
            return Err(AlgebraError::BasisMismatch {
                expected: d,
                got: v.dim(),
            });
        }
        Ok(StructureConstants { field, basis, table })
    }

    /// Sets `[e_i, e_j] = v` and infers `[e_j, e_i]` by super-antisymmetry.
    pub fn set_pair(&mut self, i: usize, j: usize, v: Vector) {
        let d = self.dim();
        let s = -(self.basis.parity(i) * self.basis.parity(j)).sign();
        self.table[j * d + i] = v.scale(&self.field.from_int(s));
        self.table[i * d + j] = v;
    }

    pub fn set_entry(&mut self, i: usize, j: usize, v: Vector) {
        let d = self.dim();
        self.table[i * d + j] = v;
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim() + j]
    }

    pub fn table(&self) -> &[Vector] {
        &self.table
    }

    /// Bilinear extension of the table.
    pub fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zero(self.field, self.dim());
        for (i, a) in x.coords() {
            for (j, b) in y.coords() {
                out.add_assign_scaled(&(a * b), self.bracket_basis(*i, *j));
            }
        }
        out
    }

    /// `[e_i, v]` for a basis element on the left.
    pub fn bracket_left(&self, i: usize, y: &Vector) -> Vector {
        let mut out = Vector::zero(self.field, self.dim());
        for (j, b) in y.coords() {
            out.add_assign_scaled(b, self.bracket_basis(i, *j));
        }
        out
    }

    pub fn as_multilinear(&self) -> MultilinearMap {
        let d = self.dim();
        let mut m = MultilinearMap::zero(self.field, 2, Parity::Even, self.basis.clone(), self.basis.clone());
        for i in 0..d {
            for j in 0..d {
                let v = self.bracket_basis(i, j).clone();
                if !v.is_zero() {
                    // Inhomogeneous entries cannot be represented; validation reports them.
                    let _ = m.set(vec![i, j], v);
                }
            }
        }
        m
    }

    /// Exhaustive check of homogeneity, super-antisymmetry and super Jacobi.
    pub fn validate(&self) -> AxiomReport {
        validate_superalgebra(self)
    }
}

/// Exhaustive basis check of the Lie superalgebra axioms.
pub fn validate_superalgebra(sc: &StructureConstants) -> AxiomReport {
    let d = sc.dim();
    let f = sc.field;
    let b = &sc.basis;
    let mut report = AxiomReport {
        homogeneity_ok: true,
        antisymmetry_ok: true,
        jacobi_ok: true,
        counterexamples: Vec::new(),
    };
    let push = |report: &mut AxiomReport, c: Counterexample| {
        if report.counterexamples.len() < MAX_COUNTEREXAMPLES {
            report.counterexamples.push(c);
        }
    };
    for i in 0..d {
        for j in 0..d {
            let v = sc.bracket_basis(i, j);
            let want = b.parity(i) + b.parity(j);
            if v.coords().iter().any(|(k, _)| b.parity(*k) != want) {
                report.homogeneity_ok = false;
                push(
                    &mut report,
                    Counterexample {
                        axiom: Axiom::Homogeneity,
                        indices: vec![i, j],
                        lhs: v.clone(),
                        rhs: Vector::zero(f, d),
                    },
                );
            }
            let s = -(b.parity(i) * b.parity(j)).sign();
            let rhs = sc.bracket_basis(j, i).scale(&f.from_int(s));
            if *v != rhs {
                report.antisymmetry_ok = false;
                push(
                    &mut report,
                    Counterexample {
                        axiom: Axiom::SuperAntisymmetry,
                        indices: vec![i, j],
                        lhs: v.clone(),
                        rhs,
                    },
                );
            }
        }
    }
    for a in 0..d {
        for bb in 0..d {
            let ab = sc.bracket_basis(a, bb);
            let sign = f.from_int((b.parity(a) * b.parity(bb)).sign());
            for c in 0..d {
                let lhs = sc.bracket_left(a, sc.bracket_basis(bb, c));
                let t1 = sc.bracket(ab, &Vector::basis(f, d, c));
                let t2 = sc.bracket_left(bb, sc.bracket_basis(a, c));
                let rhs = t1.axpy(&sign, &t2);
                if lhs != rhs {
                    report.jacobi_ok = false;
                    push(
                        &mut report,
                        Counterexample {
                            axiom: Axiom::SuperJacobi,
                            indices: vec![a, bb, c],
                            lhs,
                            rhs,
                        },
                    );
                }
            }
        }
    }
    report
}

/// A validated Lie superalgebra.
#[derive(Clone, PartialEq, Eq)]
pub struct LieSuperalgebra {
    sc: StructureConstants,
}

impl fmt::Debug for LieSuperalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.sc.fmt(f)
    }
}

impl std::ops::Deref for LieSuperalgebra {
    type Target = StructureConstants;
    fn deref(&self) -> &StructureConstants {
        &self.sc
    }
}

impl LieSuperalgebra {
    pub fn new(sc: StructureConstants) -> Result<LieSuperalgebra, AlgebraError> {
        let report = sc.validate();
        match report.first_failure() {
            Some(err) => Err(err),
            None => Ok(LieSuperalgebra { sc }),
        }
    }

    pub fn structure(&self) -> &StructureConstants {
        &self.sc
    }

    pub fn into_structure(self) -> StructureConstants {
        self.sc
    }

    /// The abelian superalgebra on a basis.
    pub fn abelian(field: FieldSpec, basis: Arc<GradedBasis>) -> LieSuperalgebra {
        LieSuperalgebra {
            sc: StructureConstants::zero(field, basis),
        }
    }
}

/// `[x, y]` in `L`, checking coordinate dimensions.
pub fn bracket_eval(l: &StructureConstants, x: &Vector, y: &Vector) -> Result<Vector, AlgebraError> {
    for v in [x, y] {
        if v.dim() != l.dim() {
            return Err(AlgebraError::BasisMismatch {
                expected: l.dim(),
                got: v.dim(),
            });
        }
    }
    Ok(l.bracket(x, y))
}

/// A module over a Lie superalgebra: the action table `[e_i, m_j]`.
#[derive(Clone, PartialEq, Eq)]
pub struct LModule {
    field: FieldSpec,
    algebra_dim: usize,
    space: Arc<GradedBasis>,
    action: Vec<Vector>,
}

impl fmt::Debug for LModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LModule")
            .field("space", &self.space.names())
            .field("action", &self.action)
            .finish()
    }
}

impl LModule {
    /// Action table row-major in `(algebra index, module index)`.
    pub fn new(
        field: FieldSpec,
        algebra_dim: usize,
        space: Arc<GradedBasis>,
        action: Vec<Vector>,
    ) -> Result<LModule, AlgebraError> {
        let dm = space.dim();
        if action.len() != algebra_dim * dm {
            return Err(AlgebraError::BasisMismatch {
                expected: algebra_dim * dm,
                got: action.len(),
            });
        }
        if let Some(v) = action.iter().find(|v| v.dim() != dm) {
            return Err(AlgebraError::BasisMismatch {
                expected: dm,
                got: v.dim(),
            });
        }
        Ok(LModule {
            field,
            algebra_dim,
            space,
            action,
        })
    }

    /// `L` acting on itself by the bracket.
    pub fn adjoint(l: &StructureConstants) -> LModule {
        LModule {
            field: l.field(),
            algebra_dim: l.dim(),
            space: l.basis().clone(),
            action: l.table().to_vec(),
        }
    }

    /// The zero action on a graded space.
    pub fn trivial(l: &StructureConstants, space: Arc<GradedBasis>) -> LModule {
        let dm = space.dim();
        LModule {
            field: l.field(),
            algebra_dim: l.dim(),
            space,
            action: vec![Vector::zero(l.field(), dm); l.dim() * dm],
        }
    }

    /// Restriction of the adjoint action to the span of some basis vectors,
    /// which must be stable under the bracket with all of `L`.
    pub fn adjoint_restriction(l: &StructureConstants, indices: &[usize]) -> Result<LModule, AlgebraError> {
        let mut names = Vec::new();
        let mut parities = Vec::new();
        let mut sorted: Vec<usize> = indices.to_vec();
        sorted.sort_by_key(|&i| (l.basis().parity(i), i));
        for &i in &sorted {
            names.push(l.basis().name(i).to_string());
            parities.push(l.basis().parity(i));
        }
        let space = Arc::new(GradedBasis::new(names, parities)?);
        let pos = |k: usize| sorted.iter().position(|&i| i == k);
        let mut action = Vec::new();
        for x in 0..l.dim() {
            for &m in &sorted {
                let v = l.bracket_basis(x, m);
                let mut coords = Vec::new();
                for (k, c) in v.coords() {
                    let Some(p) = pos(*k) else {
                        return Err(AlgebraError::NotClosed(format!(
                            "[{}, {}] has a component on {}",
                            l.basis().name(x),
                            l.basis().name(m),
                            l.basis().name(*k)
                        )));
                    };
                    coords.push((p, c.clone()));
                }
                action.push(Vector::from_sparse(l.field(), sorted.len(), coords));
            }
        }
        LModule::new(l.field(), l.dim(), space, action)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn space(&self) -> &Arc<GradedBasis> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    pub fn action_table(&self) -> &[Vector] {
        &self.action
    }

    /// `[e_i, m_j]`.
    pub fn act_basis(&self, i: usize, j: usize) -> &Vector {
        &self.action[i * self.dim() + j]
    }

    /// `[e_i, v]`.
    pub fn act_left(&self, i: usize, v: &Vector) -> Vector {
        let mut out = Vector::zero(self.field, self.dim());
        for (j, c) in v.coords() {
            out.add_assign_scaled(c, self.act_basis(i, *j));
        }
        out
    }

    /// `[x, v]` for arbitrary `x` in `L`.
    pub fn act(&self, x: &Vector, v: &Vector) -> Vector {
        let mut out = Vector::zero(self.field, self.dim());
        for (i, a) in x.coords() {
            out.add_assign_scaled(a, &self.act_left(*i, v));
        }
        out
    }

    /// Matrix of `m -> [e_i, m]`.
    pub fn action_matrix(&self, i: usize) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|j| self.act_basis(i, j).to_dense()).collect();
        Matrix::from_columns(self.field, self.dim(), &cols)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleReport {
    pub homogeneity_ok: bool,
    pub axiom_ok: bool,
    pub counterexamples: Vec<Counterexample>,
}

impl ModuleReport {
    pub fn ok(&self) -> bool {
        self.homogeneity_ok && self.axiom_ok
    }
}

/// Exhaustive check of `[a,[b,m]] = [[a,b],m] + (-1)^{ab} [b,[a,m]]`.
pub fn validate_module(l: &StructureConstants, m: &LModule) -> ModuleReport {
    let f = l.field();
    let dl = l.dim();
    let dm = m.dim();
    let mut report = ModuleReport {
        homogeneity_ok: m.algebra_dim == dl,
        axiom_ok: m.algebra_dim == dl,
        counterexamples: Vec::new(),
    };
    if m.algebra_dim != dl {
        return report;
    }
    for i in 0..dl {
        for j in 0..dm {
            let want = l.basis().parity(i) + m.space.parity(j);
            let v = m.act_basis(i, j);
            if v.coords().iter().any(|(k, _)| m.space.parity(*k) != want) {
                report.homogeneity_ok = false;
                if report.counterexamples.len() < MAX_COUNTEREXAMPLES {
                    report.counterexamples.push(Counterexample {
                        axiom: Axiom::Homogeneity,
                        indices: vec![i, j],
                        lhs: v.clone(),
                        rhs: Vector::zero(f, dm),
                    });
                }
            }
        }
    }
    for a in 0..dl {
        for b in 0..dl {
            let sign = f.from_int((l.basis().parity(a) * l.basis().parity(b)).sign());
            let ab = l.bracket_basis(a, b);
            for k in 0..dm {
                let lhs = m.act_left(a, m.act_basis(b, k));
                let t1 = m.act(ab, &Vector::basis(f, dm, k));
                let t2 = m.act_left(b, m.act_basis(a, k));
                let rhs = t1.axpy(&sign, &t2);
                if lhs != rhs {
                    report.axiom_ok = false;
                    if report.counterexamples.len() < MAX_COUNTEREXAMPLES {
                        report.counterexamples.push(Counterexample {
                            axiom: Axiom::ModuleJacobi,
                            indices: vec![a, b, k],
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
    }
    report
}

// ---------------------------------------------------------------------------
// Built-in algebras.

fn label_pair(i: usize, j: usize, size: usize) -> String {
    if size < 10 {
        format!("e{i}{j}")
    } else {
        format!("e{i}_{j}")
    }
}

/// Parity of the row/column index `i` (1-based) of an (m|n) space.
fn index_parity(m: usize, i: usize) -> Parity {
    if i <= m {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// Matrix units `e_ij` of gl(m|n) in basis order: even units first, each
/// group in lexicographic `(i, j)` order. Returns the 1-based index pairs.
pub fn gl_units(m: usize, n: usize) -> Vec<(usize, usize)> {
    let size = m + n;
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for i in 1..=size {
        for j in 1..=size {
            if index_parity(m, i) == index_parity(m, j) {
                even.push((i, j));
            } else {
                odd.push((i, j));
            }
        }
    }
    even.extend(odd);
    even
}

/// The general linear superalgebra gl(m|n) = End(K^{m|n}) with the
/// supercommutator.
pub fn make_gl_over(field: FieldSpec, m: usize, n: usize) -> LieSuperalgebra {
    assert!(m + n >= 1, "gl(m|n) needs m + n >= 1");
    let size = m + n;
    let units = gl_units(m, n);
    let parity = |(i, j): (usize, usize)| index_parity(m, i) + index_parity(m, j);
    let basis = Arc::new(
        GradedBasis::new(
            units.iter().map(|&(i, j)| label_pair(i, j, size)).collect(),
            units.iter().map(|&u| parity(u)).collect(),
        )
        .expect("gl basis"),
    );
    let pos = |u: (usize, usize)| units.iter().position(|&v| v == u).unwrap();
    let d = units.len();
    let mut sc = StructureConstants::zero(field, basis);
    for (a, &(i, j)) in units.iter().enumerate() {
        for (b, &(k, l)) in units.iter().enumerate() {
            let mut v = Vector::zero(field, d);
            // [e_ij, e_kl] = d_jk e_il - (-1)^{|e_ij||e_kl|} d_li e_kj
            if j == k {
                v = v.add(&Vector::basis(field, d, pos((i, l))));
            }
            if l == i {
                let s = field.from_int(-(parity((i, j)) * parity((k, l))).sign());
                v = v.axpy(&s, &Vector::basis(field, d, pos((k, j))));
            }
            sc.set_entry(a, b, v);
        }
    }
    LieSuperalgebra::new(sc).expect("gl(m|n) satisfies the axioms")
}

pub fn make_gl(m: usize, n: usize) -> LieSuperalgebra {
    make_gl_over(FieldSpec::Rational, m, n)
}

/// `tr(alpha) - tr(delta)` for `a` in gl(m|n) coordinates.
pub fn supertrace(m: usize, n: usize, a: &Vector) -> Result<Scalar, AlgebraError> {
    let units = gl_units(m, n);
    if a.dim() != units.len() {
        return Err(AlgebraError::BasisMismatch {
            expected: units.len(),
            got: a.dim(),
        });
    }
    let f = a.field();
    let mut s = f.zero();
    for (k, &(i, j)) in units.iter().enumerate() {
        if i == j {
            let c = a.get(k);
            s = if i <= m { s + c } else { s - c };
        }
    }
    Ok(s)
}

/// The sl(m|n) basis expressed in gl(m|n) coordinates: one column per sl
/// basis vector, plus the labels and parities.
pub fn sl_embedding(field: FieldSpec, m: usize, n: usize) -> (Matrix, Vec<String>, Vec<Parity>) {
    let size = m + n;
    let units = gl_units(m, n);
    let pos = |u: (usize, usize)| units.iter().position(|&v| v == u).unwrap();
    let d = units.len();
    let str_sign = |i: usize| if i <= m { 1 } else { -1 };
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    let mut names = Vec::new();
    let mut parities = Vec::new();
    // h_i = e_ii - s_i s_{i+1} e_{i+1,i+1}, supertrace zero.
    for i in 1..size {
        let mut c = vec![field.zero(); d];
        c[pos((i, i))] = field.one();
        c[pos((i + 1, i + 1))] = field.from_int(-str_sign(i) * str_sign(i + 1));
        cols.push(c);
        names.push(format!("h{i}"));
        parities.push(Parity::Even);
    }
    for &(i, j) in &units {
        if i != j {
            let mut c = vec![field.zero(); d];
            c[pos((i, j))] = field.one();
            cols.push(c);
            names.push(label_pair(i, j, size));
            parities.push(index_parity(m, i) + index_parity(m, j));
        }
    }
    // Evens first: keep relative order inside each parity.
    let mut order: Vec<usize> = (0..cols.len()).collect();
    order.sort_by_key(|&k| parities[k]);
    let cols: Vec<Vec<Scalar>> = order.iter().map(|&k| cols[k].clone()).collect();
    let names = order.iter().map(|&k| names[k].clone()).collect();
    let parities = order.iter().map(|&k| parities[k]).collect();
    (Matrix::from_columns(field, d, &cols), names, parities)
}

/// The special linear superalgebra sl(m|n), supertrace-zero matrices.
pub fn make_sl_over(field: FieldSpec, m: usize, n: usize) -> LieSuperalgebra {
    assert!(m + n >= 2, "sl(m|n) needs m + n >= 2");
    let gl = make_gl_over(field, m, n);
    let (emb, names, parities) = sl_embedding(field, m, n);
    let basis = Arc::new(GradedBasis::new(names, parities).expect("sl basis"));
    let d = basis.dim();
    let cols = emb.columns();
    let mut sc = StructureConstants::zero(field, basis);
    for a in 0..d {
        for b in 0..d {
            let x = Vector::from_dense(field, &cols[a]);
            let y = Vector::from_dense(field, &cols[b]);
            let z = gl.bracket(&x, &y).to_dense();
            let coords = emb.solve(&z).expect("sl(m|n) is closed under the bracket");
            sc.set_entry(a, b, Vector::from_dense(field, &coords));
        }
    }
    LieSuperalgebra::new(sc).expect("sl(m|n) satisfies the axioms")
}

pub fn make_sl(m: usize, n: usize) -> LieSuperalgebra {
    make_sl_over(FieldSpec::Rational, m, n)
}

/// Labels of the super-Poincare basis, in basis order.
pub const SUPER_POINCARE_LABELS: [&str; 14] = [
    "J01", "J02", "J03", "J12", "J13", "J23", "P0", "P1", "P2", "P3", "Q1", "Q2", "Qb1", "Qb2",
];

/// Default Minkowski metric diag(+,-,-,-).
pub const MOSTLY_MINUS: [i64; 4] = [1, -1, -1, -1];

type Mat2 = [[Scalar; 2]; 2];

fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let f = a[0][0].field();
    let mut out: Mat2 = [[f.zero(), f.zero()], [f.zero(), f.zero()]];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        }
    }
    out
}

fn mat2_lin(a: &Mat2, sa: &Scalar, b: &Mat2, sb: &Scalar) -> Mat2 {
    let f = sa.field();
    let mut out: Mat2 = [[f.zero(), f.zero()], [f.zero(), f.zero()]];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = &(sa * &a[i][j]) + &(sb * &b[i][j]);
        }
    }
    out
}

/// `sigma^mu = (1, sigma^i)` and `sigma-bar^mu = (1, -sigma^i)` over Q(i).
pub fn pauli_four_vectors(field: FieldSpec) -> ([Mat2; 4], [Mat2; 4]) {
    let i = field.root_of_unity(1).expect("needs Q(zeta_4)");
    let z = field.zero();
    let o = field.one();
    let m = |a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar| -> Mat2 {
        [[a.clone(), b.clone()], [c.clone(), d.clone()]]
    };
    let s0 = m(&o, &z, &z, &o);
    let s1 = m(&z, &o, &o, &z);
    let s2 = m(&z, &-&i, &i, &z);
    let s3 = m(&o, &z, &z, &-&o);
    let neg = |a: &Mat2| mat2_lin(a, &-&o, a, &z);
    let sig = [s0.clone(), s1.clone(), s2.clone(), s3.clone()];
    let sigb = [s0, neg(&s1), neg(&s2), neg(&s3)];
    (sig, sigb)
}

/// The N = 1 super-Poincare algebra over Q(zeta_4) with metric `eta`.
///
/// Brackets (i = zeta_4):
/// `i[J^{mn}, J^{rs}] = eta^{nr} J^{ms} - eta^{mr} J^{ns} - eta^{sm} J^{rn} + eta^{sn} J^{rm}`,
/// `i[P^m, J^{rs}] = eta^{mr} P^s - eta^{ms} P^r`,
/// `[Q_a, J^{mn}] = (sigma^{mn})_a^b Q_b`, `[Qb^a, J^{mn}] = (sigma-bar^{mn})^a_b Qb^b`,
/// `{Q_a, Qb^b} = 2 (sigma^m)_{a c} eps^{c b} P_m` with `eps^{12} = +1`,
/// everything else zero.
pub fn super_poincare_with_metric(eta: [i64; 4]) -> Result<LieSuperalgebra, AlgebraError> {
    let f = FieldSpec::cyclotomic(4);
    let i = f.root_of_unity(1).expect("zeta_4");
    let basis = Arc::new(GradedBasis::from_parts(
        SUPER_POINCARE_LABELS[..10].iter().copied(),
        SUPER_POINCARE_LABELS[10..].iter().copied(),
    )?);
    let d = 14;
    let jpairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let et = |a: usize, b: usize| -> i64 { if a == b { eta[a] } else { 0 } };
    // J^{mn} as a vector, antisymmetric in (m, n).
    let jvec = |m: usize, n: usize| -> Vector {
        if m == n {
            return Vector::zero(f, d);
        }
        let (a, b, s) = if m < n { (m, n, 1) } else { (n, m, -1) };
        let k = jpairs.iter().position(|&p| p == (a, b)).unwrap();
        Vector::basis(f, d, k).scale(&f.from_int(s))
    };
    let pvec = |m: usize| Vector::basis(f, d, 6 + m);
    let minus_i = -&i;
    let mut sc = StructureConstants::zero(f, basis);

    for (ja, &(m, n)) in jpairs.iter().enumerate() {
        for (jb, &(r, s)) in jpairs.iter().enumerate() {
            let v = jvec(m, s)
                .scale(&f.from_int(et(n, r)))
                .add(&jvec(n, s).scale(&f.from_int(-et(m, r))))
                .add(&jvec(r, n).scale(&f.from_int(-et(s, m))))
                .add(&jvec(r, m).scale(&f.from_int(et(s, n))));
            sc.set_entry(ja, jb, v.scale(&minus_i));
        }
    }
    for mu in 0..4 {
        for (jb, &(r, s)) in jpairs.iter().enumerate() {
            let v = pvec(s)
                .scale(&f.from_int(et(mu, r)))
                .add(&pvec(r).scale(&f.from_int(-et(mu, s))))
                .scale(&minus_i);
            sc.set_pair(6 + mu, jb, v);
        }
    }
    let (sig, sigb) = pauli_four_vectors(f);
    let quarter = f.from_frac(-1, 4) * &i;
    let neg_quarter = -&quarter;
    for (jb, &(m, n)) in jpairs.iter().enumerate() {
        let smn = mat2_lin(&mat2_mul(&sig[m], &sigb[n]), &quarter, &mat2_mul(&sig[n], &sigb[m]), &neg_quarter);
        let sbmn = mat2_lin(&mat2_mul(&sigb[m], &sig[n]), &quarter, &mat2_mul(&sigb[n], &sig[m]), &neg_quarter);
        for a in 0..2 {
            let q = Vector::from_sparse(f, d, vec![(10, smn[a][0].clone()), (11, smn[a][1].clone())]);
            sc.set_pair(10 + a, jb, q);
            let qb = Vector::from_sparse(f, d, vec![(12, sbmn[a][0].clone()), (13, sbmn[a][1].clone())]);
            sc.set_pair(12 + a, jb, qb);
        }
    }
    // eps^{12} = +1 raises the dotted index of sigma^mu.
    let eps = [[f.zero(), f.one()], [-f.one(), f.zero()]];
    for a in 0..2 {
        for b in 0..2 {
            let mut v = Vector::zero(f, d);
            for (mu, s) in sig.iter().enumerate() {
                let c = &(&s[a][0] * &eps[0][b]) + &(&s[a][1] * &eps[1][b]);
                // P_mu = eta_{mu mu} P^mu
                v = v.axpy(&(f.from_int(2 * eta[mu]) * c), &pvec(mu));
            }
            sc.set_pair(10 + a, 12 + b, v);
        }
    }
    LieSuperalgebra::new(sc)
}

pub fn make_super_poincare() -> LieSuperalgebra {
    super_poincare_with_metric(MOSTLY_MINUS).expect("super-Poincare algebra satisfies the axioms")
}

/// osp(1|2): even `h, e, f`, odd `x, y` with `[h,e]=2e, [h,f]=-2f, [e,f]=h,
/// [h,x]=x, [h,y]=-y, [e,y]=-x, [f,x]=-y, [x,x]=2e, [x,y]=h, [y,y]=-2f`.
pub fn make_osp12_over(field: FieldSpec) -> LieSuperalgebra {
    let basis = Arc::new(GradedBasis::from_parts(["h", "e", "f"], ["x", "y"]).expect("osp basis"));
    let d = 5;
    let v = |pairs: &[(usize, i64)]| {
        Vector::from_sparse(field, d, pairs.iter().map(|&(k, c)| (k, field.from_int(c))).collect())
    };
    let mut sc = StructureConstants::zero(field, basis);
    sc.set_pair(0, 1, v(&[(1, 2)]));
    sc.set_pair(0, 2, v(&[(2, -2)]));
    sc.set_pair(1, 2, v(&[(0, 1)]));
    sc.set_pair(0, 3, v(&[(3, 1)]));
    sc.set_pair(0, 4, v(&[(4, -1)]));
    sc.set_pair(1, 4, v(&[(3, -1)]));
    sc.set_pair(2, 3, v(&[(4, -1)]));
    sc.set_pair(3, 3, v(&[(1, 2)]));
    sc.set_pair(3, 4, v(&[(0, 1)]));
    sc.set_pair(4, 4, v(&[(2, -2)]));
    LieSuperalgebra::new(sc).expect("osp(1|2) satisfies the axioms")
}
