//! The triple `(A, B, ε)`, the coefficient bimodule `M` and the bilinear form.

use std::fmt;

use thiserror::Error;

use crate::linalg::{LinalgError, Matrix};
use crate::scalar::{Field, Scalar};

/// Dense coordinate vector of an algebra or module element.
pub type Element = Vec<Scalar>;

/// Sparse coordinate vector, `(basis index, coefficient)` with no zeros.
pub type SparseElement = Vec<(usize, Scalar)>;

pub fn to_sparse(x: &[Scalar]) -> SparseElement {
    x.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

pub fn to_dense(field: Field, dim: usize, x: &[(usize, Scalar)]) -> Element {
    let mut out = vec![field.zero(); dim];
    for (i, v) in x {
        out[*i] += v;
    }
    out
}

/// Which algebra a check refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    A,
    B,
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Which::A => write!(f, "A"),
            Which::B => write!(f, "B"),
        }
    }
}

/// One failed axiom, with the basis indices that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum AxiomViolation {
    #[error("{algebra} is not associative: (e{i} e{j}) e{k} != e{i} (e{j} e{k})")]
    Associativity { algebra: Which, i: usize, j: usize, k: usize },
    #[error("unit of {algebra} is not a two-sided identity on e{i}")]
    Unit { algebra: Which, i: usize },
    #[error("B is not commutative: e{i} e{j} != e{j} e{i}")]
    Commutativity { i: usize, j: usize },
    #[error("epsilon does not send 1_B to 1_A")]
    EpsilonUnit,
    #[error("epsilon is not multiplicative on (e{i}, e{j})")]
    EpsilonHomomorphism { i: usize, j: usize },
    #[error("epsilon(e{b}) does not commute with e{a} of A")]
    EpsilonCentrality { b: usize, a: usize },
    #[error("form is not symmetric at ({k}, {l})")]
    FormSymmetry { k: usize, l: usize },
    #[error("form is not invariant: <e{i} e{j}, e{k}> != <e{i}, e{j} e{k}>")]
    FormInvariance { i: usize, j: usize, k: usize },
    #[error("form is degenerate (Gram matrix is singular)")]
    FormDegenerate,
    #[error("M is not a left module: (e{i} e{j}) m != e{i} (e{j} m)")]
    ModuleLeftAssociativity { i: usize, j: usize },
    #[error("M is not a right module: m (e{i} e{j}) != (m e{i}) e{j}")]
    ModuleRightAssociativity { i: usize, j: usize },
    #[error("left and right actions do not commute for (e{i}, e{j})")]
    ModuleBimodule { i: usize, j: usize },
    #[error("unit of A does not act as the identity on M ({side})")]
    ModuleUnit { side: &'static str },
    #[error("epsilon(e{b}) m != m epsilon(e{b}) on M basis vector {m}")]
    ModuleEpsilon { b: usize, m: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("malformed input: {0}")]
    Shape(String),
    #[error("{} axiom violation(s): {}", .0.len(), join(.0))]
    Axioms(Vec<AxiomViolation>),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no bilinear form configured")]
    NoForm,
    #[error("operation requires coefficients M = A")]
    ModuleNotRegular,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn join(v: &[AxiomViolation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

fn check_len(expected: usize, x: &[Scalar]) -> Result<(), StructureError> {
    if x.len() == expected {
        Ok(())
    } else {
        Err(StructureError::DimensionMismatch {
            expected,
            found: x.len(),
        })
    }
}

/// A finite-dimensional unital algebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    field: Field,
    labels: Vec<String>,
    structure: Vec<Vec<Element>>,
    unit: Element,
    sparse: Vec<Vec<SparseElement>>,
    unit_sparse: SparseElement,
}

impl AlgebraSpec {
    /// `structure[i][j]` holds the coordinates of `e_i e_j`.
    pub fn new(
        field: Field,
        labels: Vec<String>,
        structure: Vec<Vec<Element>>,
        unit: Element,
    ) -> Result<Self, StructureError> {
        let dim = labels.len();
        if dim == 0 {
            return Err(StructureError::Shape("algebra dimension must be positive".into()));
        }
        if structure.len() != dim || structure.iter().any(|r| r.len() != dim) {
            return Err(StructureError::Shape(format!("structure table must be {dim}x{dim}")));
        }
        if structure.iter().flatten().any(|v| v.len() != dim) || unit.len() != dim {
            return Err(StructureError::Shape(format!("coordinate vectors must have length {dim}")));
        }
        if structure.iter().flatten().flatten().chain(&unit).any(|s| s.field() != field) {
            return Err(StructureError::Shape("entries from a different field".into()));
        }
        let sparse = structure
            .iter()
            .map(|r| r.iter().map(|v| to_sparse(v)).collect())
            .collect();
        let unit_sparse = to_sparse(&unit);
        Ok(AlgebraSpec {
            field,
            labels,
            structure,
            unit,
            sparse,
            unit_sparse,
        })
    }

    /// The one-dimensional algebra `k`.
    pub fn ground(field: Field) -> Self {
        Self::new(field, vec!["1".into()], vec![vec![vec![field.one()]]], vec![field.one()])
            .expect("ground field is well formed")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure(&self) -> &[Vec<Element>] {
        &self.structure
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    pub fn unit_sparse(&self) -> &SparseElement {
        &self.unit_sparse
    }

    pub fn basis(&self, i: usize) -> Element {
        let mut e = vec![self.field.zero(); self.dim()];
        e[i] = self.field.one();
        e
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseElement {
        &self.sparse[i][j]
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Element, StructureError> {
        check_len(self.dim(), x)?;
        check_len(self.dim(), y)?;
        Ok(to_dense(
            self.field,
            self.dim(),
            &self.mul_sparse(&to_sparse(x), &to_sparse(y)),
        ))
    }

    pub fn mul_sparse(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> SparseElement {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, xi) in x {
            for (j, yj) in y {
                let c = if xi.is_one() { yj.clone() } else { xi * yj };
                for (k, s) in &self.sparse[*i][*j] {
                    out[*k].add_product(&c, s);
                }
            }
        }
        to_sparse(&out)
    }

    /// Product of a sequence of elements; the empty product is the unit.
    pub fn product_sparse<'a>(&self, factors: impl IntoIterator<Item = &'a SparseElement>) -> SparseElement {
        let mut acc: Option<SparseElement> = None;
        for f in factors {
            acc = Some(match acc {
                None => f.clone(),
                Some(a) => self.mul_sparse(&a, f),
            });
        }
        acc.unwrap_or_else(|| self.unit_sparse.clone())
    }

    fn check_axioms(&self, which: Which, out: &mut Vec<AxiomViolation>) {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.mul_sparse(&self.sparse[i][j], &[(k, self.field.one())]);
                    let rhs = self.mul_sparse(&[(i, self.field.one())], &self.sparse[j][k]);
                    if lhs != rhs {
                        out.push(AxiomViolation::Associativity { algebra: which, i, j, k });
                    }
                }
            }
        }
        for i in 0..n {
            let e = vec![(i, self.field.one())];
            if self.mul_sparse(&self.unit_sparse, &e) != e || self.mul_sparse(&e, &self.unit_sparse) != e {
                out.push(AxiomViolation::Unit { algebra: which, i });
            }
        }
    }
}

/// An `A`-bimodule given by left and right action matrices.
///
/// `left[k]` is the matrix of `m ↦ e_k m`; column `s` holds the coordinates of
/// `e_k m_s`. `right[k]` likewise for `m ↦ m e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleSpec {
    dim: usize,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl BimoduleSpec {
    pub fn new(dim: usize, left: Vec<Matrix>, right: Vec<Matrix>) -> Result<Self, StructureError> {
        if dim == 0 {
            return Err(StructureError::Shape("module dimension must be positive".into()));
        }
        if left.len() != right.len() {
            return Err(StructureError::Shape("left and right action tables differ in length".into()));
        }
        if left.iter().chain(&right).any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(StructureError::Shape(format!("action matrices must be {dim}x{dim}")));
        }
        Ok(BimoduleSpec { dim, left, right })
    }

    /// `A` acting on itself by multiplication.
    pub fn regular(a: &AlgebraSpec) -> Self {
        let n = a.dim();
        let field = a.field();
        let mut left = Vec::with_capacity(n);
        let mut right = Vec::with_capacity(n);
        for k in 0..n {
            let mut l = Matrix::zeros(field, n, n);
            let mut r = Matrix::zeros(field, n, n);
            for s in 0..n {
                for rr in 0..n {
                    l.set(rr, s, a.structure()[k][s][rr].clone());
                    r.set(rr, s, a.structure()[s][k][rr].clone());
                }
            }
            left.push(l);
            right.push(r);
        }
        BimoduleSpec { dim: n, left, right }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn left_action(&self) -> &[Matrix] {
        &self.left
    }

    pub fn right_action(&self) -> &[Matrix] {
        &self.right
    }

    /// Matrix of `m ↦ u m` (or `m ↦ m u` when `on_right`).
    pub fn action_matrix(&self, field: Field, u: &[(usize, Scalar)], on_right: bool) -> Matrix {
        let table = if on_right { &self.right } else { &self.left };
        let mut out = Matrix::zeros(field, self.dim, self.dim);
        for (k, c) in u {
            for r in 0..self.dim {
                for s in 0..self.dim {
                    let v = table[*k].get(r, s);
                    if !v.is_zero() {
                        let mut cur = out.get(r, s).clone();
                        cur.add_product(c, v);
                        out.set(r, s, cur);
                    }
                }
            }
        }
        out
    }

    pub fn act(&self, field: Field, u: &[(usize, Scalar)], m: &[Scalar], on_right: bool) -> Element {
        let table = if on_right { &self.right } else { &self.left };
        let mut out = vec![field.zero(); self.dim];
        for (k, c) in u {
            let t = &table[*k];
            for (s, ms) in m.iter().enumerate() {
                if ms.is_zero() {
                    continue;
                }
                let cm = c * ms;
                for (r, o) in out.iter_mut().enumerate() {
                    o.add_product(&cm, t.get(r, s));
                }
            }
        }
        out
    }

    fn check_axioms(&self, ctx_a: &AlgebraSpec, eps_cols: &[SparseElement], out: &mut Vec<AxiomViolation>) {
        let field = ctx_a.field();
        let n = ctx_a.dim();
        if self.left.len() != n {
            out.push(AxiomViolation::ModuleUnit { side: "action tables do not match dim(A)" });
            return;
        }
        let unit = ctx_a.unit_sparse();
        let id = Matrix::identity(field, self.dim);
        if self.action_matrix(field, unit, false) != id {
            out.push(AxiomViolation::ModuleUnit { side: "left" });
        }
        if self.action_matrix(field, unit, true) != id {
            out.push(AxiomViolation::ModuleUnit { side: "right" });
        }
        for i in 0..n {
            for j in 0..n {
                let prod = ctx_a.basis_product(i, j);
                let l_ij = self.action_matrix(field, prod, false);
                if l_ij != self.left[i].mul(&self.left[j]).expect("square") {
                    out.push(AxiomViolation::ModuleLeftAssociativity { i, j });
                }
                let r_ij = self.action_matrix(field, prod, true);
                if r_ij != self.right[j].mul(&self.right[i]).expect("square") {
                    out.push(AxiomViolation::ModuleRightAssociativity { i, j });
                }
                let lr = self.left[i].mul(&self.right[j]).expect("square");
                let rl = self.right[j].mul(&self.left[i]).expect("square");
                if lr != rl {
                    out.push(AxiomViolation::ModuleBimodule { i, j });
                }
            }
        }
        for (b, eb) in eps_cols.iter().enumerate() {
            let l = self.action_matrix(field, eb, false);
            let r = self.action_matrix(field, eb, true);
            if l != r {
                let m = (0..self.dim)
                    .find(|&s| l.column(s) != r.column(s))
                    .unwrap_or(0);
                out.push(AxiomViolation::ModuleEpsilon { b, m });
            }
        }
    }
}

/// A symmetric non-degenerate invariant form on `A` with cached inverse Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearFormSpec {
    gram: Matrix,
    gram_inverse: Matrix,
    /// `gram · 1_A`, so that `<x, 1> = x · unit_pairing`.
    unit_pairing: Element,
}

impl BilinearFormSpec {
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &Matrix {
        &self.gram_inverse
    }

    pub fn unit_pairing(&self) -> &Element {
        &self.unit_pairing
    }
}

/// Unvalidated data for a triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleCandidate {
    pub field: Field,
    pub a: AlgebraSpec,
    pub b: AlgebraSpec,
    /// `dim(A) x dim(B)`; column `j` is `ε(e_j)`.
    pub epsilon: Matrix,
    pub form: Option<Matrix>,
    /// `None` means `M = A`.
    pub module: Option<BimoduleSpec>,
}

/// A validated triple. Immutable; share freely across threads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleContext {
    field: Field,
    a: AlgebraSpec,
    b: AlgebraSpec,
    epsilon: Matrix,
    eps_cols: Vec<SparseElement>,
    form: Option<BilinearFormSpec>,
    module: BimoduleSpec,
    regular: bool,
}

/// Which product [`TripleContext::multiply`] computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
    /// `a · m` with `a ∈ A`, `m ∈ M`.
    ModuleLeft,
    /// `m · a` with `m ∈ M`, `a ∈ A`.
    ModuleRight,
}

/// Checks every axiom of the triple and caches derived data.
///
/// All violations are collected, not just the first.
pub fn validate_triple(raw: TripleCandidate) -> Result<TripleContext, StructureError> {
    let TripleCandidate {
        field,
        a,
        b,
        epsilon,
        form,
        module,
    } = raw;
    if a.field() != field || b.field() != field {
        return Err(StructureError::Shape("algebras use a different field".into()));
    }
    if epsilon.rows() != a.dim() || epsilon.cols() != b.dim() {
        return Err(StructureError::Shape(format!(
            "epsilon must be {}x{}, found {}x{}",
            a.dim(),
            b.dim(),
            epsilon.rows(),
            epsilon.cols()
        )));
    }
    epsilon.check_field()?;
    let eps_cols: Vec<SparseElement> = (0..b.dim()).map(|j| to_sparse(&epsilon.column(j))).collect();

    let mut violations = Vec::new();
    a.check_axioms(Which::A, &mut violations);
    b.check_axioms(Which::B, &mut violations);
    for i in 0..b.dim() {
        for j in 0..i {
            if b.basis_product(i, j) != b.basis_product(j, i) {
                violations.push(AxiomViolation::Commutativity { i: j, j: i });
            }
        }
    }

    let eps = |x: &[(usize, Scalar)]| eps_apply(field, a.dim(), &eps_cols, x);
    if eps(b.unit_sparse()) != *a.unit_sparse() {
        violations.push(AxiomViolation::EpsilonUnit);
    }
    for i in 0..b.dim() {
        for j in 0..b.dim() {
            let lhs = eps(b.basis_product(i, j));
            let rhs = a.mul_sparse(&eps_cols[i], &eps_cols[j]);
            if lhs != rhs {
                violations.push(AxiomViolation::EpsilonHomomorphism { i, j });
            }
        }
    }
    for (bi, eb) in eps_cols.iter().enumerate() {
        for ai in 0..a.dim() {
            let e = vec![(ai, field.one())];
            if a.mul_sparse(eb, &e) != a.mul_sparse(&e, eb) {
                violations.push(AxiomViolation::EpsilonCentrality { b: bi, a: ai });
            }
        }
    }

    let form = match form {
        None => None,
        Some(gram) => check_form(&a, gram, &mut violations)?,
    };

    let regular = module.is_none();
    let module = module.unwrap_or_else(|| BimoduleSpec::regular(&a));
    if !regular {
        for m in module.left.iter().chain(&module.right) {
            m.check_field()?;
        }
        module.check_axioms(&a, &eps_cols, &mut violations);
    }

    if !violations.is_empty() {
        return Err(StructureError::Axioms(violations));
    }
    Ok(TripleContext {
        field,
        a,
        b,
        epsilon,
        eps_cols,
        form,
        module,
        regular,
    })
}

fn check_form(
    a: &AlgebraSpec,
    gram: Matrix,
    violations: &mut Vec<AxiomViolation>,
) -> Result<Option<BilinearFormSpec>, StructureError> {
    let n = a.dim();
    if gram.rows() != n || gram.cols() != n {
        return Err(StructureError::Shape(format!("form must be {n}x{n}")));
    }
    gram.check_field()?;
    for k in 0..n {
        for l in 0..k {
            if gram.get(k, l) != gram.get(l, k) {
                violations.push(AxiomViolation::FormSymmetry { k: l, l: k });
            }
        }
    }
    let field = a.field();
    let pair = |x: &[(usize, Scalar)], y: &[(usize, Scalar)]| {
        let mut acc = field.zero();
        for (i, xi) in x {
            for (j, yj) in y {
                acc.add_product(&(xi * yj), gram.get(*i, *j));
            }
        }
        acc
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = pair(a.basis_product(i, j), &[(k, field.one())]);
                let rhs = pair(&[(i, field.one())], a.basis_product(j, k));
                if lhs != rhs {
                    violations.push(AxiomViolation::FormInvariance { i, j, k });
                }
            }
        }
    }
    match gram.inverse()? {
        None => {
            violations.push(AxiomViolation::FormDegenerate);
            Ok(None)
        }
        Some(gram_inverse) => {
            let unit_pairing = gram.mul_vec(a.unit())?;
            Ok(Some(BilinearFormSpec {
                gram,
                gram_inverse,
                unit_pairing,
            }))
        }
    }
}

fn eps_apply(field: Field, dim_a: usize, cols: &[SparseElement], x: &[(usize, Scalar)]) -> SparseElement {
    let mut out = vec![field.zero(); dim_a];
    for (j, c) in x {
        for (i, v) in &cols[*j] {
            out[*i].add_product(c, v);
        }
    }
    to_sparse(&out)
}

impl TripleContext {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn a(&self) -> &AlgebraSpec {
        &self.a
    }

    pub fn b(&self) -> &AlgebraSpec {
        &self.b
    }

    pub fn epsilon(&self) -> &Matrix {
        &self.epsilon
    }

    pub fn form(&self) -> Option<&BilinearFormSpec> {
        self.form.as_ref()
    }

    pub fn module(&self) -> &BimoduleSpec {
        &self.module
    }

    /// True when the coefficients are `A` itself.
    pub fn is_regular(&self) -> bool {
        self.regular
    }

    pub fn dim_a(&self) -> usize {
        self.a.dim()
    }

    pub fn dim_b(&self) -> usize {
        self.b.dim()
    }

    pub fn dim_m(&self) -> usize {
        self.module.dim()
    }

    pub fn require_regular(&self) -> Result<(), StructureError> {
        if self.regular {
            Ok(())
        } else {
            Err(StructureError::ModuleNotRegular)
        }
    }

    pub fn require_form(&self) -> Result<&BilinearFormSpec, StructureError> {
        self.form.as_ref().ok_or(StructureError::NoForm)
    }

    /// The raw data this context was validated from.
    pub fn to_candidate(&self) -> TripleCandidate {
        TripleCandidate {
            field: self.field,
            a: self.a.clone(),
            b: self.b.clone(),
            epsilon: self.epsilon.clone(),
            form: self.form.as_ref().map(|f| f.gram().clone()),
            module: (!self.regular).then(|| self.module.clone()),
        }
    }

    /// Same triple with the form dropped.
    pub fn without_form(&self) -> TripleContext {
        TripleContext {
            form: None,
            ..self.clone()
        }
    }

    pub fn multiply(&self, side: Side, x: &[Scalar], y: &[Scalar]) -> Result<Element, StructureError> {
        match side {
            Side::A => self.a.multiply(x, y),
            Side::B => self.b.multiply(x, y),
            Side::ModuleLeft => {
                check_len(self.dim_a(), x)?;
                check_len(self.dim_m(), y)?;
                Ok(self.module.act(self.field, &to_sparse(x), y, false))
            }
            Side::ModuleRight => {
                check_len(self.dim_m(), x)?;
                check_len(self.dim_a(), y)?;
                Ok(self.module.act(self.field, &to_sparse(y), x, true))
            }
        }
    }

    pub fn apply_epsilon(&self, b: &[Scalar]) -> Result<Element, StructureError> {
        check_len(self.dim_b(), b)?;
        Ok(to_dense(self.field, self.dim_a(), &self.eps_sparse(&to_sparse(b))))
    }

    pub fn eps_sparse(&self, b: &[(usize, Scalar)]) -> SparseElement {
        eps_apply(self.field, self.dim_a(), &self.eps_cols, b)
    }

    pub fn form_pair(&self, x: &[Scalar], y: &[Scalar]) -> Result<Scalar, StructureError> {
        let form = self.require_form()?;
        check_len(self.dim_a(), x)?;
        check_len(self.dim_a(), y)?;
        let gy = form.gram.mul_vec(y)?;
        let mut acc = self.field.zero();
        for (a, b) in x.iter().zip(&gy) {
            acc.add_product(a, b);
        }
        Ok(acc)
    }

    /// `<x, 1_A>`.
    pub fn pair_with_unit(&self, x: &[Scalar]) -> Result<Scalar, StructureError> {
        let form = self.require_form()?;
        let mut acc = self.field.zero();
        for (a, b) in x.iter().zip(&form.unit_pairing) {
            acc.add_product(a, b);
        }
        Ok(acc)
    }

    /// The unique `t ∈ A` with `<t, e_k> = phi[k]` for every basis vector.
    pub fn dual_solve(&self, phi: &[Scalar]) -> Result<Element, StructureError> {
        let form = self.require_form()?;
        check_len(self.dim_a(), phi)?;
        Ok(form.gram_inverse.mul_vec(phi)?)
    }
}
