//! Tensor-matrix indexing and cochain storage.
//!
//! A basis element of `A^{⊗n} ⊗ B^{⊗n(n-1)/2}` is an upper-triangular array
//! with basis indices `a_1..a_n` on the diagonal and `b_{p,q}` (`p < q`) above
//! it. Pairs are ordered row-major: `(1,2), (1,3), …, (1,n), (2,3), …,
//! (n-1,n)`. Basis elements are enumerated in mixed radix over
//! `(a_1, …, a_n, b_{1,2}, …, b_{n-1,n})`, last coordinate fastest.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::scalar::{Field, Scalar};
use crate::structures::{to_dense, to_sparse, Element, SparseElement, TripleContext};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CochainError {
    #[error("degree mismatch: expected {expected}, found {found}")]
    Degree { expected: usize, found: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("rows {first}..{last} are outside 1..{n}")]
    Range { first: usize, last: usize, n: usize },
}

/// Number of `b` entries of a degree-`n` tensor matrix.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of the 0-based pair `(p, q)`, `p < q < n`, in row-major order.
pub fn pair_position(n: usize, p: usize, q: usize) -> usize {
    debug_assert!(p < q && q < n);
    p * (2 * n - p - 1) / 2 + (q - p - 1)
}

/// `dim(A)^n · dim(B)^{n(n-1)/2}`, saturating at `usize::MAX`.
pub fn domain_dimension(ctx: &TripleContext, n: usize) -> usize {
    shape_len(n, ctx.dim_a(), ctx.dim_b())
}

fn shape_len(n: usize, dim_a: usize, dim_b: usize) -> usize {
    let pa = u32::try_from(n).ok().and_then(|n| dim_a.checked_pow(n));
    let pb = u32::try_from(pair_count(n)).ok().and_then(|k| dim_b.checked_pow(k));
    match (pa, pb) {
        (Some(x), Some(y)) => x.saturating_mul(y),
        _ => usize::MAX,
    }
}

/// One basis tensor matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorIndex {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl TensorIndex {
    pub fn degree(&self) -> usize {
        self.a.len()
    }

    /// `b_{p,q}` for 0-based `p < q`.
    pub fn b_at(&self, p: usize, q: usize) -> usize {
        self.b[pair_position(self.degree(), p, q)]
    }

    /// Rows `k+1 ..= k+p` (1-based) as a degree-`p` index.
    pub fn sub(&self, k: usize, p: usize) -> TensorIndex {
        let a = self.a[k..k + p].to_vec();
        let mut b = Vec::with_capacity(pair_count(p));
        for u in 0..p {
            for v in u + 1..p {
                b.push(self.b_at(k + u, k + v));
            }
        }
        TensorIndex { a, b }
    }
}

/// Mixed-radix enumeration of degree-`n` tensor indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorShape {
    pub n: usize,
    pub dim_a: usize,
    pub dim_b: usize,
}

impl TensorShape {
    pub fn new(ctx: &TripleContext, n: usize) -> Self {
        TensorShape {
            n,
            dim_a: ctx.dim_a(),
            dim_b: ctx.dim_b(),
        }
    }

    pub fn len(&self) -> usize {
        shape_len(self.n, self.dim_a, self.dim_b)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ordinal(&self, idx: &TensorIndex) -> usize {
        let mut ord = 0;
        for &a in &idx.a {
            ord = ord * self.dim_a + a;
        }
        for &b in &idx.b {
            ord = ord * self.dim_b + b;
        }
        ord
    }

    pub fn index(&self, mut ord: usize) -> TensorIndex {
        let mut b = vec![0; pair_count(self.n)];
        for slot in b.iter_mut().rev() {
            *slot = ord % self.dim_b;
            ord /= self.dim_b;
        }
        let mut a = vec![0; self.n];
        for slot in a.iter_mut().rev() {
            *slot = ord % self.dim_a;
            ord /= self.dim_a;
        }
        TensorIndex { a, b }
    }

    pub fn iter(&self) -> impl Iterator<Item = TensorIndex> + '_ {
        (0..self.len()).map(move |o| self.index(o))
    }
}

pub fn enumerate_indices(ctx: &TripleContext, n: usize) -> Vec<TensorIndex> {
    TensorShape::new(ctx, n).iter().collect()
}

/// A tensor matrix with arbitrary (non-basis) entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralTensorArgs {
    a: Vec<SparseElement>,
    b: Vec<SparseElement>,
}

impl GeneralTensorArgs {
    /// `b` is given in row-major pair order.
    pub fn new(a: Vec<Element>, b: Vec<Element>) -> Result<Self, CochainError> {
        let n = a.len();
        if b.len() != pair_count(n) {
            return Err(CochainError::Shape(format!(
                "degree {n} needs {} b-entries, found {}",
                pair_count(n),
                b.len()
            )));
        }
        Ok(GeneralTensorArgs {
            a: a.iter().map(|x| to_sparse(x)).collect(),
            b: b.iter().map(|x| to_sparse(x)).collect(),
        })
    }

    pub(crate) fn from_sparse(a: Vec<SparseElement>, b: Vec<SparseElement>) -> Self {
        debug_assert_eq!(b.len(), pair_count(a.len()));
        GeneralTensorArgs { a, b }
    }

    pub fn basis(ctx: &TripleContext, idx: &TensorIndex) -> Self {
        let one = ctx.field().one();
        GeneralTensorArgs {
            a: idx.a.iter().map(|&i| vec![(i, one.clone())]).collect(),
            b: idx.b.iter().map(|&i| vec![(i, one.clone())]).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.a.len()
    }

    pub fn a_entry(&self, ctx: &TripleContext, p: usize) -> Element {
        to_dense(ctx.field(), ctx.dim_a(), &self.a[p])
    }

    pub fn b_entry(&self, ctx: &TripleContext, p: usize, q: usize) -> Element {
        to_dense(ctx.field(), ctx.dim_b(), &self.b[pair_position(self.degree(), p, q)])
    }

    pub(crate) fn b_sparse(&self, p: usize, q: usize) -> &SparseElement {
        &self.b[pair_position(self.degree(), p, q)]
    }

    pub fn set_a(&mut self, p: usize, x: &[Scalar]) {
        self.a[p] = to_sparse(x);
    }

    pub fn set_b(&mut self, p: usize, q: usize, x: &[Scalar]) {
        let n = self.degree();
        self.b[pair_position(n, p, q)] = to_sparse(x);
    }

    /// Multilinear expansion into `(ordinal, coefficient)` pairs.
    pub fn expand(&self, ctx: &TripleContext) -> Vec<(usize, Scalar)> {
        self.expand_in(ctx.field(), &TensorShape::new(ctx, self.degree()))
    }

    pub(crate) fn expand_in(&self, field: Field, shape: &TensorShape) -> Vec<(usize, Scalar)> {
        let mut terms = vec![(0usize, field.one())];
        let slots = self
            .a
            .iter()
            .map(|s| (s, shape.dim_a))
            .chain(self.b.iter().map(|s| (s, shape.dim_b)));
        for (slot, radix) in slots {
            if slot.is_empty() {
                return Vec::new();
            }
            let mut next = Vec::with_capacity(terms.len() * slot.len());
            for (ord, c) in &terms {
                for (i, v) in slot {
                    let coef = if c.is_one() { v.clone() } else { c * v };
                    next.push((ord * radix + i, coef));
                }
            }
            terms = next;
        }
        terms
    }
}

/// Rows `k+1 ..= k+p` (1-based) of a tensor matrix.
pub fn sub_matrix(args: &GeneralTensorArgs, k: usize, p: usize) -> Result<GeneralTensorArgs, CochainError> {
    let n = args.degree();
    if k + p > n {
        return Err(CochainError::Range {
            first: k + 1,
            last: k + p,
            n,
        });
    }
    let a = args.a[k..k + p].to_vec();
    let mut b = Vec::with_capacity(pair_count(p));
    for u in 0..p {
        for v in u + 1..p {
            b.push(args.b_sparse(k + u, k + v).clone());
        }
    }
    Ok(GeneralTensorArgs { a, b })
}

/// A degree-`n` cochain: one `M`-value per basis tensor matrix, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    dim_m: usize,
    field: Field,
    values: Vec<Scalar>,
}

impl Cochain {
    pub fn zero(ctx: &TripleContext, degree: usize) -> Self {
        let len = domain_dimension(ctx, degree) * ctx.dim_m();
        Cochain {
            degree,
            dim_m: ctx.dim_m(),
            field: ctx.field(),
            values: vec![ctx.field().zero(); len],
        }
    }

    /// Builds a cochain from flattened coordinates (`ordinal * dim(M) + r`).
    pub fn from_coordinates(ctx: &TripleContext, degree: usize, values: Vec<Scalar>) -> Result<Self, CochainError> {
        let len = domain_dimension(ctx, degree) * ctx.dim_m();
        if values.len() != len {
            return Err(CochainError::Shape(format!(
                "degree {degree} cochain needs {len} coordinates, found {}",
                values.len()
            )));
        }
        if values.iter().any(|v| v.field() != ctx.field()) {
            return Err(CochainError::Shape("coefficients from a different field".into()));
        }
        Ok(Cochain {
            degree,
            dim_m: ctx.dim_m(),
            field: ctx.field(),
            values,
        })
    }

    /// Builds a cochain from one `M`-value per basis index.
    pub fn from_values(ctx: &TripleContext, degree: usize, values: Vec<Element>) -> Result<Self, CochainError> {
        if values.iter().any(|v| v.len() != ctx.dim_m()) {
            return Err(CochainError::Shape(format!("values must have length {}", ctx.dim_m())));
        }
        Self::from_coordinates(ctx, degree, values.into_iter().flatten().collect())
    }

    /// Builds a cochain by evaluating `value` on every basis index.
    pub fn from_fn(ctx: &TripleContext, degree: usize, mut value: impl FnMut(&TensorIndex) -> Element) -> Self {
        let shape = TensorShape::new(ctx, degree);
        let mut values = Vec::with_capacity(shape.len() * ctx.dim_m());
        for idx in shape.iter() {
            let v = value(&idx);
            debug_assert_eq!(v.len(), ctx.dim_m());
            values.extend(v);
        }
        Cochain {
            degree,
            dim_m: ctx.dim_m(),
            field: ctx.field(),
            values,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim_m(&self) -> usize {
        self.dim_m
    }

    /// Number of basis tensor matrices.
    pub fn domain_len(&self) -> usize {
        self.values.len() / self.dim_m
    }

    pub fn coordinates(&self) -> &[Scalar] {
        &self.values
    }

    pub fn into_coordinates(self) -> Vec<Scalar> {
        self.values
    }

    pub fn value(&self, ord: usize) -> &[Scalar] {
        &self.values[ord * self.dim_m..(ord + 1) * self.dim_m]
    }

    pub fn value_at(&self, ctx: &TripleContext, idx: &TensorIndex) -> &[Scalar] {
        self.value(TensorShape::new(ctx, self.degree).ordinal(idx))
    }

    pub fn values(&self) -> impl Iterator<Item = &[Scalar]> {
        self.values.chunks(self.dim_m)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    /// Number of nonzero coordinates.
    pub fn nnz(&self) -> usize {
        self.values.iter().filter(|v| !v.is_zero()).count()
    }

    /// First coordinate where `self` and `other` differ.
    pub fn first_difference(&self, other: &Cochain) -> Option<usize> {
        if self.degree != other.degree || self.values.len() != other.values.len() {
            return Some(0);
        }
        self.values.iter().zip(&other.values).position(|(a, b)| a != b)
    }

    fn check_compatible(&self, other: &Cochain) {
        assert_eq!(self.degree, other.degree, "cochain degrees differ");
        assert_eq!(self.values.len(), other.values.len(), "cochain shapes differ");
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        self.check_compatible(other);
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.check_compatible(other);
        let mut out = self.clone();
        out.add_scaled(&-self.field.one(), other);
        out
    }

    pub fn add_assign(&mut self, other: &Cochain) {
        self.check_compatible(other);
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += b;
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &Cochain) {
        self.check_compatible(other);
        if c.is_zero() {
            return;
        }
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            a.add_product(c, b);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        Cochain {
            values: self.values.iter().map(|v| v * c).collect(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> Cochain {
        self.scale(&-self.field.one())
    }

    /// Sum of `c_ord · f[ord]` over an expansion.
    pub(crate) fn eval_expansion(&self, expansion: &[(usize, Scalar)]) -> Element {
        let mut out = vec![self.field.zero(); self.dim_m];
        for (ord, c) in expansion {
            for (o, v) in out.iter_mut().zip(self.value(*ord)) {
                o.add_product(c, v);
            }
        }
        out
    }
}

/// `f` on an arbitrary tensor matrix, by multilinear expansion.
pub fn evaluate(ctx: &TripleContext, f: &Cochain, args: &GeneralTensorArgs) -> Result<Element, CochainError> {
    if args.degree() != f.degree() {
        return Err(CochainError::Degree {
            expected: f.degree(),
            found: args.degree(),
        });
    }
    if f.dim_m() != ctx.dim_m() {
        return Err(CochainError::Shape("cochain was built for a different module".into()));
    }
    let shape = TensorShape::new(ctx, f.degree());
    Ok(f.eval_expansion(&args.expand_in(ctx.field(), &shape)))
}

/// Deterministic pseudo-random cochain.
///
/// The generator is ChaCha8 seeded with `seed`; coordinates are drawn in
/// canonical order as integers uniform in `[-3, 3]` and mapped into the field.
pub fn random_cochain(ctx: &TripleContext, n: usize, seed: u64) -> Cochain {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = domain_dimension(ctx, n) * ctx.dim_m();
    let values = (0..len).map(|_| ctx.field().from_i64(rng.random_range(-3..=3))).collect();
    Cochain {
        degree: n,
        dim_m: ctx.dim_m(),
        field: ctx.field(),
        values,
    }
}
