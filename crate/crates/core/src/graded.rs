//! Z2-graded vector spaces, homogeneous multilinear maps and Koszul signs.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::{Add, Mul};
use std::sync::Arc;

use thiserror::Error;

use crate::linalg::{axpy_row, dense_from_sparse, sparse_from_dense, SparseRow};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("permutation of degree {perm} applied to a map of arity {arity}")]
    DegreeMismatch { perm: usize, arity: usize },
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("basis vectors must list every even vector before every odd one (offending label {0:?})")]
    ParityOrder(String),
    #[error("component at {tuple:?} is not homogeneous of parity {parity}")]
    Inhomogeneous { tuple: Vec<usize>, parity: Parity },
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
}

/// An element of Z2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u8) -> Parity {
        if bit % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^self` as an integer.
    pub fn sign(self) -> i64 {
        if self.is_odd() {
            -1
        } else {
            1
        }
    }

    pub fn sum<I: IntoIterator<Item = Parity>>(it: I) -> Parity {
        it.into_iter().fold(Parity::Even, |a, b| a + b)
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() ^ rhs.bit())
    }
}

impl Mul for Parity {
    type Output = Parity;
    fn mul(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() & rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

/// `(-1)^p` as a field element.
pub fn sign_scalar(field: FieldSpec, p: Parity) -> Scalar {
    field.from_int(p.sign())
}

/// Ordered homogeneous basis of a super vector space, evens first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    names: Vec<String>,
    parities: Vec<Parity>,
    n_even: usize,
}

impl GradedBasis {
    pub fn new(names: Vec<String>, parities: Vec<Parity>) -> Result<GradedBasis, GradedError> {
        if names.len() != parities.len() {
            return Err(GradedError::LengthMismatch {
                expected: names.len(),
                got: parities.len(),
            });
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(GradedError::DuplicateLabel(n.clone()));
            }
        }
        let n_even = parities.iter().take_while(|p| !p.is_odd()).count();
        if let Some(i) = parities[n_even..].iter().position(|p| !p.is_odd()) {
            return Err(GradedError::ParityOrder(names[n_even + i].clone()));
        }
        Ok(GradedBasis {
            names,
            parities,
            n_even,
        })
    }

    /// Homogeneous basis in arbitrary parity order. Suitable for coordinate
    /// spaces that are only queried for parities, not for tuple bases.
    pub fn unordered(names: Vec<String>, parities: Vec<Parity>) -> GradedBasis {
        assert_eq!(names.len(), parities.len());
        let n_even = parities.iter().filter(|p| !p.is_odd()).count();
        GradedBasis {
            names,
            parities,
            n_even,
        }
    }

    /// Basis from separate even and odd label lists.
    pub fn from_parts<S: Into<String>>(
        even: impl IntoIterator<Item = S>,
        odd: impl IntoIterator<Item = S>,
    ) -> Result<GradedBasis, GradedError> {
        let mut names: Vec<String> = even.into_iter().map(Into::into).collect();
        let n_even = names.len();
        names.extend(odd.into_iter().map(Into::into));
        let parities = (0..names.len())
            .map(|i| if i < n_even { Parity::Even } else { Parity::Odd })
            .collect();
        GradedBasis::new(names, parities)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    /// `(dim V_0, dim V_1)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.n_even, self.names.len() - self.n_even)
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn tuple_parity(&self, tuple: &[usize]) -> Parity {
        Parity::sum(tuple.iter().map(|&i| self.parities[i]))
    }
}

/// A vector in coordinates over some basis of dimension `dim`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    field: FieldSpec,
    dim: usize,
    coords: SparseRow,
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|(i, v)| format!("{i}:{v}")).collect();
        write!(f, "Vector{{{}}}", parts.join(", "))
    }
}

impl Vector {
    pub fn zero(field: FieldSpec, dim: usize) -> Vector {
        Vector {
            field,
            dim,
            coords: Vec::new(),
        }
    }

    pub fn basis(field: FieldSpec, dim: usize, i: usize) -> Vector {
        assert!(i < dim);
        Vector {
            field,
            dim,
            coords: vec![(i, field.one())],
        }
    }

    pub fn from_sparse(field: FieldSpec, dim: usize, mut coords: SparseRow) -> Vector {
        coords.retain(|(_, v)| !v.is_zero());
        coords.sort_by_key(|(i, _)| *i);
        debug_assert!(coords.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(coords.iter().all(|(i, _)| *i < dim));
        Vector { field, dim, coords }
    }

    pub fn from_dense(field: FieldSpec, v: &[Scalar]) -> Vector {
        Vector {
            field,
            dim: v.len(),
            coords: sparse_from_dense(v),
        }
    }

    pub fn to_dense(&self) -> Vec<Scalar> {
        dense_from_sparse(self.field, self.dim, &self.coords)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> &SparseRow {
        &self.coords
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.coords.binary_search_by_key(&i, |(k, _)| *k) {
            Ok(p) => self.coords[p].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: &Scalar, other: &Vector) -> Vector {
        assert_eq!(self.dim, other.dim, "vector dimension mismatch");
        Vector {
            field: self.field,
            dim: self.dim,
            coords: axpy_row(&self.coords, s, &other.coords),
        }
    }

    pub fn add_assign_scaled(&mut self, s: &Scalar, other: &Vector) {
        if s.is_zero() || other.is_zero() {
            return;
        }
        self.coords = axpy_row(&self.coords, s, &other.coords);
    }

    pub fn add(&self, other: &Vector) -> Vector {
        self.axpy(&self.field.one(), other)
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        self.axpy(&-self.field.one(), other)
    }

    pub fn scale(&self, s: &Scalar) -> Vector {
        Vector::zero(self.field, self.dim).axpy(s, self)
    }

    pub fn neg(&self) -> Vector {
        self.scale(&-self.field.one())
    }

    /// Parity of a homogeneous vector; `None` for zero or mixed vectors.
    pub fn parity_in(&self, basis: &GradedBasis) -> Option<Parity> {
        let mut it = self.coords.iter().map(|(i, _)| basis.parity(*i));
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }
}

/// A permutation of `{0, .., n-1}` stored as its image list: `sigma[i] = sigma(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Perm, GradedError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(GradedError::NotAPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    pub fn identity(n: usize) -> Perm {
        Perm((0..n).collect())
    }

    /// The transposition of positions `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Perm {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(i, j);
        Perm(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &s) in self.0.iter().enumerate() {
            inv[s] = i;
        }
        Perm(inv)
    }

    /// Signature, `+1` or `-1`.
    pub fn signature(&self) -> i64 {
        let mut inversions = 0;
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All permutations of degree `n`, in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Perm> {
        fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if cur.len() == used.len() {
                out.push(Perm(cur.clone()));
                return;
            }
            for i in 0..used.len() {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    /// The (p, q)-shuffles: `sigma(0) < .. < sigma(p-1)` and
    /// `sigma(p) < .. < sigma(p+q-1)`. Generated by choosing the image set of
    /// the first block, so each shuffle appears exactly once.
    pub fn shuffles(p: usize, q: usize) -> Vec<Perm> {
        let n = p + q;
        let mut out = Vec::new();
        for first in combinations(n, p) {
            let mut images = first.clone();
            images.extend((0..n).filter(|i| !first.contains(i)));
            out.push(Perm(images));
        }
        out
    }

    /// `sigma . X = (X_{sigma^-1(0)}, ..)`.
    pub fn act_on<T: Clone>(&self, xs: &[T]) -> Vec<T> {
        let inv = self.inverse();
        (0..xs.len()).map(|k| xs[inv.0[k]].clone()).collect()
    }

    /// `sigma^-1 . X = (X_{sigma(0)}, ..)`.
    pub fn act_inverse_on<T: Clone>(&self, xs: &[T]) -> Vec<T> {
        self.0.iter().map(|&i| xs[i].clone()).collect()
    }
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Number of inverted odd-odd pairs: `#{(i, j) : i < j, X_{sigma(i)}, X_{sigma(j)} odd, sigma(j) < sigma(i)}`.
pub fn koszul_count(sigma: &Perm, parities: &[Parity]) -> Result<usize, GradedError> {
    if parities.len() != sigma.degree() {
        return Err(GradedError::LengthMismatch {
            expected: sigma.degree(),
            got: parities.len(),
        });
    }
    let s = sigma.images();
    let mut count = 0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            if parities[s[i]].is_odd() && parities[s[j]].is_odd() && s[j] < s[i] {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// The Koszul sign `sign(sigma) * (-1)^K(sigma, X)`.
pub fn koszul_sign(sigma: &Perm, parities: &[Parity]) -> Result<i64, GradedError> {
    let k = koszul_count(sigma, parities)?;
    Ok(sigma.signature() * if k % 2 == 0 { 1 } else { -1 })
}

/// Canonical super-alternating index tuples of arity `n`: even indices
/// strictly increasing, then odd indices weakly increasing.
pub fn superalt_basis(basis: &GradedBasis, n: usize) -> Vec<Vec<usize>> {
    fn rec(basis: &GradedBasis, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let start = match cur.last() {
            None => 0,
            Some(&l) if basis.parity(l).is_odd() => l,
            Some(&l) => l + 1,
        };
        for i in start..basis.dim() {
            cur.push(i);
            rec(basis, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(basis, n, &mut Vec::new(), &mut out);
    out
}

/// `sum_k C(d0, k) C(d1 + n - k - 1, n - k)`.
pub fn superalt_dimension(d0: usize, d1: usize, n: usize) -> usize {
    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
    }
    (0..=n.min(d0))
        .map(|k| {
            let rest = n - k;
            let odd = if rest == 0 {
                1
            } else if d1 == 0 {
                0
            } else {
                binom(d1 + rest - 1, rest)
            };
            binom(d0, k) * odd
        })
        .sum()
}

/// Sorts an index tuple into canonical order, tracking the super-alternating
/// sign. Returns `None` when the tuple repeats an even index (the value of any
/// super-alternating map there is zero).
pub fn canonicalize(tuple: &[usize], parities: &[Parity]) -> Option<(i64, Vec<usize>)> {
    let mut t = tuple.to_vec();
    let mut sign = 1;
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            // f(.., a, b, ..) = -(-1)^{ab} f(.., b, a, ..)
            if !(parities[t[j - 1]].is_odd() && parities[t[j]].is_odd()) {
                sign = -sign;
            }
            t.swap(j - 1, j);
            j -= 1;
        }
    }
    if t.windows(2).any(|w| w[0] == w[1] && !parities[w[0]].is_odd()) {
        return None;
    }
    Some((sign, t))
}

/// A homogeneous n-linear map `V x .. x V -> W`, stored by basis components.
#[derive(Clone, PartialEq, Eq)]
pub struct MultilinearMap {
    arity: usize,
    parity: Parity,
    field: FieldSpec,
    source: Arc<GradedBasis>,
    target: Arc<GradedBasis>,
    components: BTreeMap<Vec<usize>, Vector>,
}

impl fmt::Debug for MultilinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultilinearMap")
            .field("arity", &self.arity)
            .field("parity", &self.parity)
            .field("components", &self.components)
            .finish()
    }
}

impl MultilinearMap {
    pub fn zero(
        field: FieldSpec,
        arity: usize,
        parity: Parity,
        source: Arc<GradedBasis>,
        target: Arc<GradedBasis>,
    ) -> MultilinearMap {
        MultilinearMap {
            arity,
            parity,
            field,
            source,
            target,
            components: BTreeMap::new(),
        }
    }

    /// Builds a map from components, rejecting inhomogeneous ones.
    pub fn new(
        field: FieldSpec,
        arity: usize,
        parity: Parity,
        source: Arc<GradedBasis>,
        target: Arc<GradedBasis>,
        components: BTreeMap<Vec<usize>, Vector>,
    ) -> Result<MultilinearMap, GradedError> {
        let mut map = MultilinearMap::zero(field, arity, parity, source, target);
        for (tuple, v) in components {
            map.set(tuple, v)?;
        }
        Ok(map)
    }

    pub fn set(&mut self, tuple: Vec<usize>, v: Vector) -> Result<(), GradedError> {
        if tuple.len() != self.arity {
            return Err(GradedError::LengthMismatch {
                expected: self.arity,
                got: tuple.len(),
            });
        }
        let want = self.parity + self.source.tuple_parity(&tuple);
        if v.coords().iter().any(|(i, _)| self.target.parity(*i) != want) {
            return Err(GradedError::Inhomogeneous {
                tuple,
                parity: self.parity,
            });
        }
        if v.is_zero() {
            self.components.remove(&tuple);
        } else {
            self.components.insert(tuple, v);
        }
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn source(&self) -> &Arc<GradedBasis> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedBasis> {
        &self.target
    }

    pub fn components(&self) -> &BTreeMap<Vec<usize>, Vector> {
        &self.components
    }

    pub fn eval(&self, tuple: &[usize]) -> Vector {
        self.components
            .get(tuple)
            .cloned()
            .unwrap_or_else(|| Vector::zero(self.field, self.target.dim()))
    }

    /// Multilinear extension to arbitrary argument vectors.
    pub fn eval_vectors(&self, args: &[Vector]) -> Vector {
        assert_eq!(args.len(), self.arity);
        let mut out = Vector::zero(self.field, self.target.dim());
        for (tuple, v) in &self.components {
            let mut coef = self.field.one();
            for (k, &i) in tuple.iter().enumerate() {
                let a = args[k].get(i);
                if a.is_zero() {
                    coef = self.field.zero();
                    break;
                }
                coef = &coef * &a;
            }
            out.add_assign_scaled(&coef, v);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Every index tuple of the full table, lexicographically.
    pub fn all_tuples(dim: usize, arity: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for _ in 0..arity {
            out = out
                .into_iter()
                .flat_map(|t| {
                    (0..dim).map(move |i| {
                        let mut t2 = t.clone();
                        t2.push(i);
                        t2
                    })
                })
                .collect();
        }
        out
    }

    pub fn is_super_alternating(&self) -> bool {
        (0..self.arity.saturating_sub(1)).all(|i| {
            let tau = Perm::transposition(self.arity, i, i + 1);
            act_permutation(&tau, self).map(|m| m == *self).unwrap_or(false)
        })
    }

    /// Values on the canonical tuples, in [`superalt_basis`] order.
    pub fn restrict_to_canonical(&self) -> Vec<Vector> {
        superalt_basis(&self.source, self.arity)
            .iter()
            .map(|t| self.eval(t))
            .collect()
    }
}

/// `(sigma . F)(X) = eps(sigma, X) F(sigma^-1 X)`.
pub fn act_permutation(sigma: &Perm, f: &MultilinearMap) -> Result<MultilinearMap, GradedError> {
    if sigma.degree() != f.arity {
        return Err(GradedError::DegreeMismatch {
            perm: sigma.degree(),
            arity: f.arity,
        });
    }
    let mut out = MultilinearMap::zero(f.field, f.arity, f.parity, f.source.clone(), f.target.clone());
    // F(Y) contributes to X with Y = sigma^-1 X, i.e. X = sigma . Y.
    for (y, v) in &f.components {
        let x = sigma.act_on(y);
        let pars: Vec<Parity> = x.iter().map(|&i| f.source.parity(i)).collect();
        let eps = koszul_sign(sigma, &pars)?;
        out.components.insert(x, v.scale(&f.field.from_int(eps)));
    }
    Ok(out)
}

/// Expands canonical coordinates into the full component table.
pub fn superalt_expand(
    field: FieldSpec,
    source: Arc<GradedBasis>,
    target: Arc<GradedBasis>,
    arity: usize,
    parity: Parity,
    coords: &[Vector],
) -> Result<MultilinearMap, GradedError> {
    let canon = superalt_basis(&source, arity);
    if coords.len() != canon.len() {
        return Err(GradedError::LengthMismatch {
            expected: canon.len(),
            got: coords.len(),
        });
    }
    let index: std::collections::HashMap<&Vec<usize>, usize> =
        canon.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut out = MultilinearMap::zero(field, arity, parity, source.clone(), target);
    for tuple in MultilinearMap::all_tuples(source.dim(), arity) {
        if let Some((sign, c)) = canonicalize(&tuple, source.parities()) {
            let v = &coords[index[&c]];
            if !v.is_zero() {
                out.set(tuple, v.scale(&field.from_int(sign)))?;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const E: Parity = Parity::Even;
    const O: Parity = Parity::Odd;

    fn basis22() -> Arc<GradedBasis> {
        Arc::new(GradedBasis::from_parts(["a", "b"], ["x", "y"]).unwrap())
    }

    #[test]
    fn koszul_count_examples() {
        let id = Perm::identity(3);
        assert_eq!(koszul_count(&id, &[O, O, O]).unwrap(), 0);
        let t = Perm::transposition(2, 0, 1);
        assert_eq!(koszul_count(&t, &[O, O]).unwrap(), 1);
        assert_eq!(koszul_count(&t, &[E, O]).unwrap(), 0);
        assert_eq!(koszul_sign(&t, &[O, O]).unwrap(), 1);
        assert_eq!(koszul_sign(&t, &[E, O]).unwrap(), -1);
        assert!(matches!(
            koszul_count(&t, &[O]),
            Err(GradedError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn koszul_sign_cocycle_on_s3() {
        // eps(sigma sigma', X) = eps(sigma, X) eps(sigma', sigma^-1 X), 36 * 8 cases.
        let mut cases = 0;
        for s in Perm::all(3) {
            for t in Perm::all(3) {
                for bits in 0..8u8 {
                    let x: Vec<Parity> = (0..3).map(|k| Parity::from_bit(bits >> k)).collect();
                    let lhs = koszul_sign(&s.compose(&t), &x).unwrap();
                    let rhs = koszul_sign(&s, &x).unwrap() * koszul_sign(&t, &s.act_inverse_on(&x)).unwrap();
                    assert_eq!(lhs, rhs, "sigma={s:?} sigma'={t:?} X={x:?}");
                    cases += 1;
                }
            }
        }
        assert_eq!(cases, 288);
    }

    #[test]
    fn superalt_counts() {
        let b = basis22();
        assert_eq!(superalt_basis(&b, 1).len(), 4);
        assert_eq!(superalt_basis(&b, 2).len(), 8);
        let one = GradedBasis::from_parts(["h"], Vec::<&str>::new()).unwrap();
        assert_eq!(superalt_basis(&one, 2).len(), 0);
        // Enumeration oracle: count sorted tuples with no repeated even index.
        for (d0, d1) in [(0, 3), (2, 2), (3, 2), (4, 1), (1, 0)] {
            let evens: Vec<String> = (0..d0).map(|i| format!("e{i}")).collect();
            let odds: Vec<String> = (0..d1).map(|i| format!("o{i}")).collect();
            let b = GradedBasis::from_parts(evens, odds).unwrap();
            for n in 0..5 {
                let brute = MultilinearMap::all_tuples(b.dim(), n)
                    .into_iter()
                    .filter(|t| t.windows(2).all(|w| w[0] <= w[1]))
                    .filter(|t| t.windows(2).all(|w| w[0] != w[1] || b.parity(w[0]).is_odd()))
                    .count();
                assert_eq!(superalt_basis(&b, n).len(), brute);
                assert_eq!(superalt_dimension(d0, d1, n), brute, "({d0}|{d1}) n={n}");
            }
        }
    }

    fn random_map(seed: u64, arity: usize, parity: Parity) -> MultilinearMap {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let b = basis22();
        let f = FieldSpec::Rational;
        let mut m = MultilinearMap::zero(f, arity, parity, b.clone(), b.clone());
        for t in MultilinearMap::all_tuples(4, arity) {
            let want = parity + b.tuple_parity(&t);
            let mut coords: SparseRow = Vec::new();
            for i in 0..4 {
                if b.parity(i) == want && rng.gen_bool(0.5) {
                    coords.push((i, f.from_int(rng.gen_range(1..5))));
                }
            }
            m.set(t, Vector::from_sparse(f, 4, coords)).unwrap();
        }
        m
    }

    #[test]
    fn permutation_action_is_a_group_action() {
        for (seed, parity) in [(1, E), (2, O)] {
            let f = random_map(seed, 3, parity);
            assert_eq!(act_permutation(&Perm::identity(3), &f).unwrap(), f);
            for s in Perm::all(3) {
                for t in Perm::all(3) {
                    let lhs = act_permutation(&s.compose(&t), &f).unwrap();
                    let rhs = act_permutation(&s, &act_permutation(&t, &f).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
            let tau = Perm::transposition(3, 0, 2);
            let twice = act_permutation(&tau, &act_permutation(&tau, &f).unwrap()).unwrap();
            assert_eq!(twice, f);
        }
        let f = random_map(3, 2, E);
        assert!(matches!(
            act_permutation(&Perm::identity(3), &f),
            Err(GradedError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn expand_restrict_roundtrip_and_symmetry() {
        let b = basis22();
        let f = FieldSpec::Rational;
        let canon = superalt_basis(&b, 2);
        let coords: Vec<Vector> = canon
            .iter()
            .enumerate()
            .map(|(k, t)| {
                let want = Parity::Odd + b.tuple_parity(t);
                let i = (0..4).find(|&i| b.parity(i) == want).unwrap();
                Vector::from_sparse(f, 4, vec![(i, f.from_int(k as i64 + 1))])
            })
            .collect();
        let m = superalt_expand(f, b.clone(), b.clone(), 2, O, &coords).unwrap();
        assert_eq!(m.restrict_to_canonical(), coords);
        assert!(m.is_super_alternating());
        // odd-odd self pair is symmetric
        let xx = canon.iter().position(|t| t == &vec![2, 2]).unwrap();
        assert_eq!(m.eval(&[2, 2]), coords[xx]);
        // permuted tuples equal the eps-signed canonical component
        for s in Perm::all(2) {
            assert_eq!(act_permutation(&s, &m).unwrap(), m);
        }
        let zero = superalt_expand(f, b.clone(), b.clone(), 2, O, &vec![Vector::zero(f, 4); 8]).unwrap();
        assert!(zero.is_zero());
        assert!(superalt_expand(f, b.clone(), b, 2, O, &[]).is_err());
    }

    #[test]
    fn invariance_characterizes_superalternating_maps() {
        // A random full table is generally not invariant; its symmetrization is,
        // and invariant maps are exactly the expansions of their canonical values.
        for seed in 0..6 {
            let parity = if seed % 2 == 0 { E } else { O };
            let f = random_map(10 + seed, 3, parity);
            assert!(!f.is_super_alternating());
            let mut sym = MultilinearMap::zero(f.field(), 3, parity, f.source().clone(), f.target().clone());
            for s in Perm::all(3) {
                let g = act_permutation(&s, &f).unwrap();
                for t in MultilinearMap::all_tuples(4, 3) {
                    let v = sym.eval(&t).add(&g.eval(&t));
                    sym.set(t, v).unwrap();
                }
            }
            assert!(sym.is_super_alternating());
            let again = superalt_expand(
                sym.field(),
                sym.source().clone(),
                sym.target().clone(),
                3,
                parity,
                &sym.restrict_to_canonical(),
            )
            .unwrap();
            assert_eq!(again, sym);
        }
    }

    #[test]
    fn basis_validation() {
        assert!(matches!(
            GradedBasis::new(vec!["x".into(), "h".into()], vec![O, E]),
            Err(GradedError::ParityOrder(_))
        ));
        assert!(matches!(
            GradedBasis::from_parts(["h", "h"], Vec::<&str>::new()),
            Err(GradedError::DuplicateLabel(_))
        ));
    }

    #[test]
    fn shuffle_counts() {
        assert_eq!(Perm::shuffles(0, 3).len(), 1);
        assert_eq!(Perm::shuffles(1, 2).len(), 3);
        assert_eq!(Perm::shuffles(2, 2).len(), 6);
        for s in Perm::shuffles(2, 3) {
            let im = s.images();
            assert!(im[0] < im[1] && im[2] < im[3] && im[3] < im[4]);
        }
    }
}
