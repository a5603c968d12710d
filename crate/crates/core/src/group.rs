//! Finite groups acting on superalgebras and modules by even linear maps.

use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::graded::{canonicalize, superalt_basis, GradedBasis, Vector};
use crate::linalg::{Matrix, SparseRow};
use crate::scalar::{FieldSpec, Scalar};
use crate::superalgebra::{LModule, StructureConstants};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("Cayley table must be a non-empty square table, got {0}")]
    BadShape(String),
    #[error("Cayley table is not a Latin square (row or column {0})")]
    NotLatin(usize),
    #[error("no identity element in the Cayley table")]
    NoIdentity,
    #[error("multiplication is not associative: ({0}{1}){2} != {0}({1}{2})")]
    NotAssociative(usize, usize, usize),
    #[error("action has {got} matrices for a group of order {expected}")]
    WrongCount { expected: usize, got: usize },
    #[error("action matrix for element {element} is {rows}x{cols}, expected {dim}x{dim}")]
    WrongSize {
        element: usize,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("the two fixed-space computations disagree: {0}")]
    OracleDisagreement(String),
    #[error("actions on the algebra and the module use different groups")]
    GroupMismatch,
}

/// A finite group given by its Cayley table: `table[a][b]` is the index of `ab`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    names: Vec<String>,
    odd: Vec<bool>,
}

impl FiniteGroup {
    pub fn new(table: Vec<Vec<usize>>) -> Result<FiniteGroup, GroupError> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n) {
            return Err(GroupError::BadShape(format!("{} rows", n)));
        }
        for i in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for j in 0..n {
                let (r, c) = (table[i][j], table[j][i]);
                if r >= n || c >= n || row[r] || col[c] {
                    return Err(GroupError::NotLatin(i));
                }
                row[r] = true;
                col[c] = true;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or(GroupError::NoIdentity)?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == identity).unwrap())
            .collect();
        Ok(FiniteGroup {
            names: (0..n).map(|i| format!("g{i}")).collect(),
            odd: vec![false; n],
            table,
            identity,
            inverses,
        })
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::cyclic(1)
    }

    /// Z_n with element `k` standing for `g^k`.
    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let mut g = FiniteGroup::new(table).expect("cyclic group");
        g.names = (0..n).map(|k| format!("g^{k}")).collect();
        g
    }

    /// `G x H` with `(a, b)` at index `a * |H| + b`.
    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let (na, nb) = (a.order(), b.order());
        let mut table = vec![vec![0; na * nb]; na * nb];
        for x in 0..na * nb {
            for y in 0..na * nb {
                table[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
            }
        }
        let mut g = FiniteGroup::new(table).expect("direct product");
        g.names = (0..na * nb)
            .map(|x| format!("({},{})", a.names[x / nb], b.names[x % nb]))
            .collect();
        g
    }

    pub fn with_names(mut self, names: Vec<String>) -> FiniteGroup {
        assert_eq!(names.len(), self.order());
        self.names = names;
        self
    }

    /// Tags group elements as odd. Such groups are representable but every
    /// action validation rejects them.
    pub fn with_odd_elements(mut self, odd: Vec<bool>) -> FiniteGroup {
        assert_eq!(odd.len(), self.order());
        self.odd = odd;
        self
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn odd_elements(&self) -> Vec<usize> {
        (0..self.order()).filter(|&g| self.odd[g]).collect()
    }
}

/// A linear action of a finite group on a graded space: one matrix per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionRep {
    group: Arc<FiniteGroup>,
    space: Arc<GradedBasis>,
    matrices: Vec<Matrix>,
}

impl ActionRep {
    pub fn new(group: Arc<FiniteGroup>, space: Arc<GradedBasis>, matrices: Vec<Matrix>) -> Result<ActionRep, GroupError> {
        if matrices.len() != group.order() {
            return Err(GroupError::WrongCount {
                expected: group.order(),
                got: matrices.len(),
            });
        }
        let dim = space.dim();
        for (g, m) in matrices.iter().enumerate() {
            if m.nrows() != dim || m.ncols() != dim {
                return Err(GroupError::WrongSize {
                    element: g,
                    rows: m.nrows(),
                    cols: m.ncols(),
                    dim,
                });
            }
        }
        Ok(ActionRep { group, space, matrices })
    }

    /// Every element acts as the identity.
    pub fn trivial(field: FieldSpec, group: Arc<FiniteGroup>, space: Arc<GradedBasis>) -> ActionRep {
        let m = Matrix::identity(field, space.dim());
        let matrices = vec![m; group.order()];
        ActionRep { group, space, matrices }
    }

    /// The action of a cyclic group determined by the matrix of its generator.
    pub fn cyclic_from_generator(
        group: Arc<FiniteGroup>,
        space: Arc<GradedBasis>,
        generator: Matrix,
    ) -> Result<ActionRep, GroupError> {
        let n = group.order();
        let mut mats = Vec::with_capacity(n);
        let mut cur = Matrix::identity(generator.field(), space.dim());
        for _ in 0..n {
            mats.push(cur.clone());
            cur = generator.mul(&cur);
        }
        ActionRep::new(group, space, mats)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn space(&self) -> &Arc<GradedBasis> {
        &self.space
    }

    pub fn matrix(&self, g: usize) -> &Matrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn apply(&self, g: usize, v: &Vector) -> Vector {
        Vector::from_dense(v.field(), &self.matrices[g].mul_vec(&v.to_dense()))
    }

    /// Checks identity, degree zero and the homomorphism property.
    pub fn validate(&self) -> ActionReport {
        let mut rep = ActionReport::default();
        let g = &self.group;
        let field = self.matrices[0].field();
        let odd = g.odd_elements();
        if !odd.is_empty() {
            rep.group_even_ok = false;
            rep.failures.push(format!(
                "group elements {:?} are odd; only degree-0 actions are supported",
                odd
            ));
        }
        if self.matrices[g.identity()] != Matrix::identity(field, self.space.dim()) {
            rep.identity_ok = false;
            rep.failures.push("identity element does not act trivially".into());
        }
        for (k, m) in self.matrices.iter().enumerate() {
            for r in 0..m.nrows() {
                for (c, _) in m.row(r) {
                    if self.space.parity(r) != self.space.parity(*c) {
                        rep.degree_zero_ok = false;
                        rep.failures.push(format!(
                            "{} maps {} onto {}, changing parity",
                            g.names()[k],
                            self.space.name(*c),
                            self.space.name(r)
                        ));
                    }
                }
            }
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                if self.matrices[g.mul(a, b)] != self.matrices[a].mul(&self.matrices[b]) {
                    rep.homomorphism_ok = false;
                    rep.failures.push(format!(
                        "rho({}{}) != rho({}) rho({})",
                        g.names()[a],
                        g.names()[b],
                        g.names()[a],
                        g.names()[b]
                    ));
                }
            }
        }
        rep
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionReport {
    pub group_even_ok: bool,
    pub identity_ok: bool,
    pub degree_zero_ok: bool,
    pub homomorphism_ok: bool,
    pub equivariance_ok: bool,
    pub failures: Vec<String>,
}

impl Default for ActionReport {
    fn default() -> Self {
        ActionReport {
            group_even_ok: true,
            identity_ok: true,
            degree_zero_ok: true,
            homomorphism_ok: true,
            equivariance_ok: true,
            failures: Vec::new(),
        }
    }
}

impl ActionReport {
    pub fn ok(&self) -> bool {
        self.group_even_ok && self.identity_ok && self.degree_zero_ok && self.homomorphism_ok && self.equivariance_ok
    }

    fn merge(&mut self, other: ActionReport) {
        self.group_even_ok &= other.group_even_ok;
        self.identity_ok &= other.identity_ok;
        self.degree_zero_ok &= other.degree_zero_ok;
        self.homomorphism_ok &= other.homomorphism_ok;
        self.equivariance_ok &= other.equivariance_ok;
        self.failures.extend(other.failures);
    }
}

/// The action axioms for `G` on `L`, including `[gx, gy] = g[x, y]`.
pub fn validate_action(rep: &ActionRep, l: &StructureConstants) -> ActionReport {
    let mut report = rep.validate();
    if rep.space.dim() != l.dim() {
        report.equivariance_ok = false;
        report.failures.push("action space does not match the algebra".into());
        return report;
    }
    let f = l.field();
    let d = l.dim();
    for g in 0..rep.group.order() {
        let images: Vec<Vector> = (0..d).map(|i| rep.apply(g, &Vector::basis(f, d, i))).collect();
        for i in 0..d {
            for j in 0..d {
                let lhs = l.bracket(&images[i], &images[j]);
                let rhs = rep.apply(g, l.bracket_basis(i, j));
                if lhs != rhs {
                    report.equivariance_ok = false;
                    report.failures.push(format!(
                        "[{g}.{a}, {g}.{b}] != {g}.[{a}, {b}]",
                        g = rep.group.names()[g],
                        a = l.basis().name(i),
                        b = l.basis().name(j)
                    ));
                }
            }
        }
    }
    report
}

/// Compatible actions on `L` and on an `L`-module `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symmetry {
    pub algebra: ActionRep,
    pub module: ActionRep,
}

impl Symmetry {
    pub fn new(algebra: ActionRep, module: ActionRep) -> Result<Symmetry, GroupError> {
        if algebra.group != module.group {
            return Err(GroupError::GroupMismatch);
        }
        Ok(Symmetry { algebra, module })
    }

    /// The trivial group acting trivially on both.
    pub fn trivial(l: &StructureConstants, m: &LModule) -> Symmetry {
        let g = Arc::new(FiniteGroup::trivial());
        Symmetry {
            algebra: ActionRep::trivial(l.field(), g.clone(), l.basis().clone()),
            module: ActionRep::trivial(l.field(), g, m.space().clone()),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.algebra.group
    }

    /// Axioms for both actions plus `g[x, m] = [gx, gm]`.
    pub fn validate(&self, l: &StructureConstants, m: &LModule) -> ActionReport {
        let mut report = validate_action(&self.algebra, l);
        report.merge(self.module.validate());
        report.group_even_ok = self.group().odd_elements().is_empty();
        if self.module.space.dim() != m.dim() {
            report.equivariance_ok = false;
            report.failures.push("action space does not match the module".into());
            return report;
        }
        let f = l.field();
        for g in 0..self.group().order() {
            for i in 0..l.dim() {
                let gx = self.algebra.apply(g, &Vector::basis(f, l.dim(), i));
                for j in 0..m.dim() {
                    let gm = self.module.apply(g, &Vector::basis(f, m.dim(), j));
                    let lhs = m.act(&gx, &gm);
                    let rhs = self.module.apply(g, m.act_basis(i, j));
                    if lhs != rhs {
                        report.equivariance_ok = false;
                        report.failures.push(format!(
                            "[{g}.{x}, {g}.{v}] != {g}.[{x}, {v}]",
                            g = self.group().names()[g],
                            x = l.basis().name(i),
                            v = m.space().name(j)
                        ));
                    }
                }
            }
        }
        report
    }
}

/// Matrix of `f -> g.f`, `(g.f)(x_1..x_n) = g f(g^-1 x_1, .., g^-1 x_n)`, on
/// the canonical tuples of arity `n` only (no module factor).
///
/// Entry `(s, t)` is the coefficient of `f(e_t)` in `f(g^-1 e_{s_1}, ..)`.
pub fn tuple_action_matrix(rep_l: &ActionRep, g: usize, n: usize) -> Matrix {
    let basis = &rep_l.space;
    let field = rep_l.matrices[0].field();
    let tuples = superalt_basis(basis, n);
    let index: std::collections::HashMap<&Vec<usize>, usize> =
        tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let ginv = rep_l.matrix(rep_l.group.inverse(g));
    let cols: Vec<SparseRow> = (0..basis.dim())
        .map(|c| {
            (0..basis.dim())
                .filter_map(|r| {
                    let v = ginv.get(r, c);
                    (!v.is_zero()).then_some((r, v))
                })
                .collect()
        })
        .collect();
    let rows: Vec<SparseRow> = tuples
        .iter()
        .map(|s| {
            let mut acc: std::collections::BTreeMap<usize, Scalar> = Default::default();
            let mut stack: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), field.one())];
            for &si in s {
                let mut next = Vec::new();
                for (prefix, c) in &stack {
                    for (k, a) in &cols[si] {
                        let mut p = prefix.clone();
                        p.push(*k);
                        next.push((p, c * a));
                    }
                }
                stack = next;
            }
            for (k, c) in stack {
                if let Some((sign, t)) = canonicalize(&k, basis.parities()) {
                    let e = acc.entry(index[&t]).or_insert_with(|| field.zero());
                    *e = if sign > 0 { &*e + &c } else { &*e - &c };
                }
            }
            acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
        })
        .collect();
    Matrix::from_sparse_rows(field, tuples.len(), rows)
}

/// `T (x) rho_M(g)` with coordinate index `t * dim M + m`.
fn kron(t: &Matrix, m: &Matrix) -> Matrix {
    let dm = m.nrows();
    let field = t.field();
    let mut rows = Vec::with_capacity(t.nrows() * dm);
    for s in 0..t.nrows() {
        for mp in 0..dm {
            let mut row: SparseRow = Vec::new();
            for (tc, a) in t.row(s) {
                for (mc, b) in m.row(mp) {
                    row.push((tc * dm + mc, a * b));
                }
            }
            rows.push(row);
        }
    }
    Matrix::from_sparse_rows(field, t.ncols() * dm, rows)
}

/// The induced action on `n`-cochains in canonical coordinates, one matrix
/// per group element.
pub fn induced_action_on_cochains(sym: &Symmetry, n: usize) -> ActionRep {
    let tuples = superalt_basis(&sym.algebra.space, n);
    let dm = sym.module.space.dim();
    let mut names = Vec::with_capacity(tuples.len() * dm);
    let mut parities = Vec::with_capacity(tuples.len() * dm);
    for t in &tuples {
        let p = sym.algebra.space.tuple_parity(t);
        for j in 0..dm {
            names.push(format!("{:?}->{}", t, sym.module.space.name(j)));
            parities.push(p + sym.module.space.parity(j));
        }
    }
    let matrices: Vec<Matrix> = (0..sym.group().order())
        .into_par_iter()
        .map(|g| kron(&tuple_action_matrix(&sym.algebra, g, n), sym.module.matrix(g)))
        .collect();
    // Coordinate parities need not be sorted even-first, so the space is
    // described by a plain (unordered) tag list.
    ActionRep {
        group: sym.group().clone(),
        space: Arc::new(GradedBasis::unordered(names, parities)),
        matrices,
    }
}

/// Basis (as columns) of the vectors fixed by every `rho(g)`.
///
/// Computed twice: from the column space of the Reynolds operator and from
/// the kernel of the stacked `rho(g) - I`. The spans must agree, and their
/// dimension must match the character formula.
pub fn equivariant_subspace(rep: &ActionRep) -> Result<Matrix, GroupError> {
    fixed_subspace(rep.group.order(), &rep.matrices)
}

pub(crate) fn fixed_subspace(order: usize, matrices: &[Matrix]) -> Result<Matrix, GroupError> {
    let field = matrices[0].field();
    let dim = matrices[0].nrows();
    let id = Matrix::identity(field, dim);
    let (reynolds, kernel) = rayon::join(
        || {
            let mut sum = Matrix::zeros(field, dim, dim);
            for m in matrices {
                sum = sum.add(m);
            }
            let p = sum.scale(&field.from_frac(1, order as i64));
            (p.column_space(), p)
        },
        || {
            let mut rows = Vec::new();
            for m in matrices {
                let d = m.sub(&id);
                rows.extend(d.rows().iter().filter(|r| !r.is_empty()).cloned());
            }
            Matrix::from_sparse_rows(field, dim, rows).nullspace()
        },
    );
    let (basis, p) = reynolds;
    if p.mul(&p) != p {
        return Err(GroupError::OracleDisagreement("Reynolds operator is not idempotent".into()));
    }
    if basis.ncols() != kernel.ncols() || basis.hstack(&kernel).rank() != basis.ncols() {
        return Err(GroupError::OracleDisagreement(format!(
            "Reynolds image has dimension {}, joint kernel has dimension {}",
            basis.ncols(),
            kernel.ncols()
        )));
    }
    let mut tr = field.zero();
    for m in matrices {
        tr = tr + m.trace();
    }
    let chi = tr * field.from_frac(1, order as i64);
    if chi != field.from_int(basis.ncols() as i64) {
        return Err(GroupError::OracleDisagreement(format!(
            "character formula gives {}, fixed space has dimension {}",
            chi,
            basis.ncols()
        )));
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::{make_gl, make_super_poincare};

    fn perm_matrix(field: FieldSpec, images: &[usize]) -> Matrix {
        let n = images.len();
        let mut m = Matrix::zeros(field, n, n);
        for (c, &r) in images.iter().enumerate() {
            m.set(r, c, field.one());
        }
        m
    }

    #[test]
    fn group_tables() {
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(z4.inverse(1), 3);
        assert_eq!(z4.mul(3, 3), 2);
        let k = FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert_eq!(k.order(), 4);
        assert!((0..4).all(|g| k.mul(g, g) == k.identity()));
        assert!(matches!(FiniteGroup::new(vec![vec![0, 1], vec![0, 1]]), Err(GroupError::NotLatin(_))));
        // Latin square without associativity
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::new(t), Err(GroupError::NotAssociative(..))));
    }

    #[test]
    fn swap_action_on_gl11() {
        let gl = make_gl(1, 1);
        let f = gl.field();
        let g = Arc::new(FiniteGroup::cyclic(2));
        let swap = perm_matrix(f, &[1, 0, 3, 2]);
        let rep = ActionRep::cyclic_from_generator(g.clone(), gl.basis().clone(), swap).unwrap();
        assert!(validate_action(&rep, &gl).ok());
        assert!(validate_action(&ActionRep::trivial(f, g, gl.basis().clone()), &gl).ok());
    }

    #[test]
    fn parity_changing_and_odd_groups_are_rejected() {
        let gl = make_gl(1, 1);
        let f = gl.field();
        let g = Arc::new(FiniteGroup::cyclic(2));
        let bad = perm_matrix(f, &[2, 3, 0, 1]);
        let rep = ActionRep::cyclic_from_generator(g, gl.basis().clone(), bad).unwrap();
        let r = validate_action(&rep, &gl);
        assert!(!r.degree_zero_ok);

        let odd = Arc::new(FiniteGroup::cyclic(2).with_odd_elements(vec![false, true]));
        let rep = ActionRep::trivial(f, odd, gl.basis().clone());
        assert!(!validate_action(&rep, &gl).group_even_ok);
    }

    #[test]
    fn regular_rep_fixed_line() {
        let f = FieldSpec::Rational;
        let g = Arc::new(FiniteGroup::cyclic(2));
        let space = Arc::new(GradedBasis::from_parts(["u", "v"], []).unwrap());
        let rep = ActionRep::cyclic_from_generator(g, space, perm_matrix(f, &[1, 0])).unwrap();
        let fixed = equivariant_subspace(&rep).unwrap();
        assert_eq!(fixed.ncols(), 1);
        assert_eq!(fixed.column(0), vec![f.one(), f.one()]);

        let triv = ActionRep::trivial(f, Arc::new(FiniteGroup::trivial()), rep.space().clone());
        assert_eq!(equivariant_subspace(&triv).unwrap().ncols(), 2);
    }

    #[test]
    fn induced_action_is_a_representation() {
        let sp = make_super_poincare();
        let f = sp.field();
        let i = f.root_of_unity(1).unwrap();
        let i3 = f.root_of_unity(3).unwrap();
        let mut gen = Matrix::identity(f, 14);
        gen.set(10, 10, i.clone());
        gen.set(11, 11, i.clone());
        gen.set(12, 12, i3.clone());
        gen.set(13, 13, i3.clone());
        let g = Arc::new(FiniteGroup::cyclic(4));
        let rep = ActionRep::cyclic_from_generator(g, sp.basis().clone(), gen).unwrap();
        assert!(validate_action(&rep, &sp).ok());
        let m = LModule::adjoint(&sp);
        let sym = Symmetry::new(rep.clone(), rep).unwrap();
        assert!(sym.validate(&sp, &m).ok());
        let ind = induced_action_on_cochains(&sym, 2);
        let r = ind.validate();
        assert!(r.identity_ok && r.homomorphism_ok && r.degree_zero_ok, "{:?}", r.failures);
    }
}
