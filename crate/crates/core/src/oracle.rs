//! Explicit matrices over `X`, used to certify the closed-form results.
//!
//! Rows and columns are indexed by point encodings. All linear algebra is
//! exact elimination over the coefficient field.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::index::RelIndex;
use crate::linalg::{EchelonBasis, SparseVec};
use crate::scheme::{Point, PointSet};

/// A square matrix with entries in `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix<F: Field> {
    field: F,
    n: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> DenseMatrix<F> {
    pub fn zeros(field: F, n: usize) -> Self {
        DenseMatrix { data: vec![field.zero(); n * n], field, n }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n);
        for k in 0..n {
            m.data[k * n + k] = m.field.one();
        }
        m
    }

    pub fn from_fn(field: F, n: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        DenseMatrix { field, n, data }
    }

    /// Rebuilds a matrix from its row-major coordinate vector.
    pub fn from_sparse(field: F, n: usize, v: &SparseVec<F::Elem>) -> Self {
        let mut m = Self::zeros(field, n);
        for (p, x) in v {
            m.data[*p] = x.clone();
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.n + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn trace(&self) -> F::Elem {
        (0..self.n).fold(self.field.zero(), |acc, k| self.field.add(&acc, self.get(k, k)))
    }

    /// Row-major coordinate vector over the `n²` entries.
    pub fn to_sparse(&self) -> SparseVec<F::Elem> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(p, x)| (p, x.clone()))
            .collect()
    }

    fn sparse_rows(&self) -> Vec<Vec<(usize, &F::Elem)>> {
        (0..self.n)
            .map(|r| {
                (0..self.n)
                    .filter_map(|c| {
                        let x = self.get(r, c);
                        (!x.is_zero()).then_some((c, x))
                    })
                    .collect()
            })
            .collect()
    }

    fn check_size(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!("{}x{} vs {}x{}", self.n, self.n, other.n, other.n)))
        }
    }

    /// The diagonal entries, when every off-diagonal entry is zero.
    pub fn diagonal(&self) -> Option<Vec<F::Elem>> {
        for r in 0..self.n {
            for c in 0..self.n {
                if r != c && !self.get(r, c).is_zero() {
                    return None;
                }
            }
        }
        Some((0..self.n).map(|r| self.get(r, r).clone()).collect())
    }

    /// `self·other - other·self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        match other.diagonal() {
            // entry (r, c) picks up d_c - d_r
            Some(d) => {
                let f = &self.field;
                Ok(Self::from_fn(f.clone(), self.n, |r, c| {
                    let x = self.get(r, c);
                    if x.is_zero() {
                        f.zero()
                    } else {
                        f.mul(x, &f.sub(&d[c], &d[r]))
                    }
                }))
            }
            None => self.mul(other)?.sub(&other.mul(self)?),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let f = &self.field;
        let rhs = other.sparse_rows();
        let mut out = Self::zeros(f.clone(), self.n);
        for r in 0..self.n {
            let row = &mut out.data[r * self.n..(r + 1) * self.n];
            for k in 0..self.n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for (c, b) in &rhs[k] {
                    f.add_mul_assign(&mut row[*c], a, b);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.add(a, b)).collect();
        Ok(DenseMatrix { field: self.field.clone(), n: self.n, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_size(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.sub(a, b)).collect();
        Ok(DenseMatrix { field: self.field.clone(), n: self.n, data })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(c, a)).collect();
        DenseMatrix { field: self.field.clone(), n: self.n, data }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field.clone(), self.n, |r, c| self.get(c, r).clone())
    }
}

/// `A_g`: the 0/1 matrix with `A_g(y, z) = 1` iff `z ∈ yR_g`.
pub fn adjacency_matrix<F: Field>(g: RelIndex, points: &PointSet, field: &F) -> Result<DenseMatrix<F>> {
    points.params().check(g)?;
    Ok(DenseMatrix::from_fn(field.clone(), points.len(), |y, z| {
        if points.rel_idx(y, z) == g {
            field.one()
        } else {
            field.zero()
        }
    }))
}

/// `E_g*(x)`: the diagonal 0/1 matrix with `E_g*(x)(y, y) = 1` iff `y ∈ xR_g`.
pub fn dual_idempotent<F: Field>(g: RelIndex, x: &Point, points: &PointSet, field: &F) -> Result<DenseMatrix<F>> {
    let params = points.params();
    params.check(g)?;
    let x = Point::new(x.coords().to_vec(), params)?.encode(params);
    Ok(DenseMatrix::from_fn(field.clone(), points.len(), |r, c| {
        if r == c && points.rel_idx(x, r) == g {
            field.one()
        } else {
            field.zero()
        }
    }))
}

/// A subspace of `M_N(F)` closed under multiplication, kept in reduced echelon
/// form, together with the generators it was built from.
#[derive(Debug, Clone)]
pub struct SpannedAlgebra<F: Field> {
    n: usize,
    span: EchelonBasis<F>,
    generators: Vec<DenseMatrix<F>>,
    words: Vec<DenseMatrix<F>>,
}

impl<F: Field> SpannedAlgebra<F> {
    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[DenseMatrix<F>] {
        &self.generators
    }

    /// The reduced basis, in ascending pivot order.
    pub fn basis(&self) -> Vec<DenseMatrix<F>> {
        self.span
            .rows()
            .map(|v| DenseMatrix::from_sparse(self.span.field().clone(), self.n, v))
            .collect()
    }

    /// A basis of words in the generators, in discovery order. These keep the
    /// sparsity of the generators, unlike the reduced rows.
    pub fn words(&self) -> &[DenseMatrix<F>] {
        &self.words
    }

    pub fn contains(&self, m: &DenseMatrix<F>) -> bool {
        m.size() == self.n && self.span.contains(&m.to_sparse())
    }
}

fn common_size<F: Field>(mats: &[DenseMatrix<F>]) -> Result<(F, usize)> {
    let first = mats.first().ok_or(Error::EmptyInput)?;
    if let Some(bad) = mats.iter().find(|m| m.size() != first.size()) {
        return Err(Error::DimensionMismatch(format!("{} vs {}", first.size(), bad.size())));
    }
    Ok((first.field().clone(), first.size()))
}

/// The smallest unital subalgebra containing `generators`.
///
/// Seeds the span with `I` and the generators, then left-multiplies every
/// newly independent element by each generator until nothing new appears.
/// The result is the span of all words in the generators.
pub fn algebra_closure<F: Field>(generators: &[DenseMatrix<F>]) -> Result<SpannedAlgebra<F>> {
    let (field, n) = common_size(generators)?;
    let mut span = EchelonBasis::new(field.clone(), n * n);
    let mut words = Vec::new();
    for m in std::iter::once(DenseMatrix::identity(field, n)).chain(generators.iter().cloned()) {
        if span.insert(&m.to_sparse()) {
            words.push(m);
        }
    }
    let mut next = 0;
    while next < words.len() {
        for g in generators {
            let prod = g.mul(&words[next])?;
            if span.insert(&prod.to_sparse()) {
                words.push(prod);
            }
        }
        next += 1;
    }
    Ok(SpannedAlgebra { n, span, generators: generators.to_vec(), words })
}

/// `dim Z(alg)`: the nullity of `c ↦ Σ c_k [M_k, G]` over all generators `G`.
pub fn center_dim<F: Field>(alg: &SpannedAlgebra<F>) -> Result<usize> {
    let basis = alg.words();
    let nn = alg.n * alg.n;
    let field = alg.span.field().clone();
    // each basis element becomes the concatenation of its commutators; the
    // center is the kernel of the map sending coefficients to that vector
    let mut rows = EchelonBasis::new(field, nn * alg.generators.len());
    for m in basis {
        let mut v = Vec::new();
        for (t, g) in alg.generators.iter().enumerate() {
            let comm = m.commutator(g)?;
            v.extend(comm.to_sparse().into_iter().map(|(p, x)| (t * nn + p, x)));
        }
        rows.insert(&v);
    }
    Ok(basis.len() - rows.dim())
}

/// Whether `span` is closed under left and right multiplication by `alg`.
///
/// `alg` is generated by its generators and `I`, so testing them suffices.
pub fn is_two_sided_ideal<F: Field>(span: &[DenseMatrix<F>], alg: &SpannedAlgebra<F>) -> Result<bool> {
    let nonzero: Vec<&DenseMatrix<F>> = span.iter().filter(|m| !m.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(true);
    }
    let mut ideal = EchelonBasis::new(alg.span.field().clone(), alg.n * alg.n);
    for m in &nonzero {
        if m.size() != alg.n {
            return Err(Error::DimensionMismatch(format!("{} vs {}", m.size(), alg.n)));
        }
        ideal.insert(&m.to_sparse());
    }
    let basis: Vec<DenseMatrix<F>> =
        ideal.rows().map(|v| DenseMatrix::from_sparse(alg.span.field().clone(), alg.n, v)).collect();
    for s in &basis {
        if !alg.contains(s) {
            return Ok(false);
        }
        for g in &alg.generators {
            if !ideal.contains(&g.mul(s)?.to_sparse()) || !ideal.contains(&s.mul(g)?.to_sparse()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Least `h` with `span^h = 0`; 1 for the zero span.
///
/// A nilpotent set of `N×N` matrices has `span^N = 0`, so failing to vanish
/// by step `N + 1` proves the input is not nilpotent.
pub fn nilpotency_index<F: Field>(span: &[DenseMatrix<F>]) -> Result<usize> {
    let nonzero: Vec<DenseMatrix<F>> = span.iter().filter(|m| !m.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Ok(1);
    }
    let (field, n) = common_size(&nonzero)?;
    let mut base = EchelonBasis::new(field.clone(), n * n);
    for m in &nonzero {
        base.insert(&m.to_sparse());
    }
    let base: Vec<DenseMatrix<F>> = base.rows().map(|v| DenseMatrix::from_sparse(field.clone(), n, v)).collect();
    let mut power = base.clone();
    let mut h = 1;
    while !power.is_empty() {
        if h > n {
            return Err(Error::NotNilpotent);
        }
        let mut next = EchelonBasis::new(field.clone(), n * n);
        for p in &power {
            for s in &base {
                next.insert(&p.mul(s)?.to_sparse());
            }
        }
        power = next.rows().map(|v| DenseMatrix::from_sparse(field.clone(), n, v)).collect();
        h += 1;
    }
    Ok(h)
}

/// Adjacency matrices and dual idempotents at one base point.
#[derive(Debug, Clone)]
pub struct Oracle<F: Field> {
    field: F,
    points: PointSet,
    base: Point,
    adjacency: Vec<DenseMatrix<F>>,
    duals: Vec<DenseMatrix<F>>,
}

impl<F: Field> Oracle<F> {
    pub fn new(points: &PointSet, field: F, base: &Point) -> Result<Self> {
        let params = points.params();
        let base = Point::new(base.coords().to_vec(), params)?;
        let adjacency = params
            .relations()
            .map(|g| adjacency_matrix(g, points, &field))
            .collect::<Result<Vec<_>>>()?;
        let duals = params
            .relations()
            .map(|g| dual_idempotent(g, &base, points, &field))
            .collect::<Result<Vec<_>>>()?;
        Ok(Oracle { field, points: points.clone(), base, adjacency, duals })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn adjacency(&self, g: RelIndex) -> Result<&DenseMatrix<F>> {
        self.points.params().check(g)?;
        Ok(&self.adjacency[g.0 as usize])
    }

    pub fn dual(&self, g: RelIndex) -> Result<&DenseMatrix<F>> {
        self.points.params().check(g)?;
        Ok(&self.duals[g.0 as usize])
    }

    /// `E_g* A_h E_i*`.
    pub fn eae(&self, g: RelIndex, h: RelIndex, i: RelIndex) -> Result<DenseMatrix<F>> {
        self.dual(g)?.mul(self.adjacency(h)?)?.mul(self.dual(i)?)
    }

    /// All adjacency matrices followed by all dual idempotents.
    pub fn generators(&self) -> Vec<DenseMatrix<F>> {
        self.adjacency.iter().chain(&self.duals).cloned().collect()
    }

    /// `T(x)` by span closure.
    pub fn terwilliger_algebra(&self) -> Result<SpannedAlgebra<F>> {
        algebra_closure(&self.generators())
    }
}
