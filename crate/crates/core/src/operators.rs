//! Cochain-level operators: the differential, dot product, circle products,
//! bracket, the Δ family and the BV defect.
//!
//! Degrees: `f ∈ C^n`, `g ∈ C^m`. Row and slot numbers in the public API are
//! 1-based, matching the usual tensor-matrix notation.

use thiserror::Error;

use crate::cochains::{pair_count, Cochain, CochainError, GeneralTensorArgs, TensorIndex, TensorShape};
use crate::linalg::{SparseMatrix, SparseRow};
use crate::scalar::{sign, Field, Scalar};
use crate::structures::{to_sparse, Element, SparseElement, StructureError, TripleContext};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperatorError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error("{op} is undefined on degree {degree}")]
    Degree { op: &'static str, degree: usize },
    #[error("slot {slot} is outside 1..={max}")]
    Slot { slot: usize, max: usize },
    #[error("cochain was built for a different triple")]
    Mismatch,
}

/// Sign exponents for every operator, kept in one place.
///
/// Each function returns the exponent `e` of `(-1)^e`.
pub mod signs {
    /// `Δ = Σ_i (-1)^{i n} Δ_i` on `C^{n+1}`.
    pub fn delta_bv(i: usize, n: usize) -> usize {
        i * n
    }

    /// `f ∘ g = Σ_j (-1)^{(j-1)(m-1)} f ∘_j g`; `m = 0` counts `m - 1` as odd.
    pub fn circle(j: usize, m: usize) -> usize {
        (j - 1) * (m + 1)
    }

    /// `ρ¹`, `ρ²`: `(-1)^{i(n+m-1)}`.
    pub fn rho(i: usize, n: usize, m: usize) -> usize {
        i * (n + m + 1)
    }

    /// `H = Σ (-1)^{(j-1)(m-1) + i(n+m) + 1} Δ_i(f ∘_j g)`.
    pub fn homotopy(i: usize, j: usize, n: usize, m: usize) -> usize {
        circle(j, m) + i * (n + m) + 1
    }

    /// `[f, g] = f∘g - (-1)^{(n-1)(m-1)} g∘f`.
    pub fn bracket(n: usize, m: usize) -> usize {
        (n + 1) * (m + 1)
    }

    /// Prefactor `(-1)^{(n-1)m}` of the BV expression; `(-1)^{m(n+1)}` is the same parity.
    pub fn bv_prefactor(n: usize, m: usize) -> usize {
        (n + 1) * m
    }
}

fn check(ctx: &TripleContext, f: &Cochain) -> Result<(), OperatorError> {
    if f.dim_m() != ctx.dim_m() || f.field() != ctx.field() || f.domain_len() != TensorShape::new(ctx, f.degree()).len() {
        return Err(OperatorError::Mismatch);
    }
    Ok(())
}

/// How a stored value enters one term of the differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Action {
    Identity,
    Left(SparseElement),
    Right(SparseElement),
}

/// `coeff · action(f[ord])`.
#[derive(Clone, Debug)]
pub(crate) struct LinearTerm {
    pub coeff: Scalar,
    pub ord: usize,
    pub action: Action,
}

fn basis_elem(field: Field, i: usize) -> SparseElement {
    vec![(i, field.one())]
}

/// Product in `B` of the basis elements `b_{p,q}` of `x` over the given pairs.
fn b_product(ctx: &TripleContext, x: &TensorIndex, pairs: impl IntoIterator<Item = (usize, usize)>) -> SparseElement {
    let field = ctx.field();
    let factors: Vec<SparseElement> = pairs.into_iter().map(|(p, q)| basis_elem(field, x.b_at(p, q))).collect();
    ctx.b().product_sparse(&factors)
}

/// The terms of `δ^n f` at the degree-`n+1` basis index `x`.
pub(crate) fn differential_terms(ctx: &TripleContext, x: &TensorIndex) -> Vec<LinearTerm> {
    let field = ctx.field();
    let n = x.degree() - 1;
    let shape_n = TensorShape::new(ctx, n);
    let mut terms = Vec::with_capacity(n + 2);

    // a_1 ε(b_{1,2} ⋯ b_{1,n+1}) f(rows 2..n+1)
    let lead = ctx.eps_sparse(&b_product(ctx, x, (1..=n).map(|q| (0, q))));
    let u = ctx.a().mul_sparse(&basis_elem(field, x.a[0]), &lead);
    if !u.is_empty() {
        terms.push(LinearTerm {
            coeff: field.one(),
            ord: shape_n.ordinal(&x.sub(1, n)),
            action: Action::Left(u),
        });
    }

    // Σ_i (-1)^i f(rows i and i+1 merged)
    for i0 in 0..n {
        let old = |r: usize| if r <= i0 { r } else { r + 1 };
        let eps_ii = ctx.eps_sparse(&basis_elem(field, x.b_at(i0, i0 + 1)));
        let aa = ctx.a().mul_sparse(&basis_elem(field, x.a[i0]), &basis_elem(field, x.a[i0 + 1]));
        let merged_a = ctx.a().mul_sparse(&eps_ii, &aa);
        let a: Vec<SparseElement> = (0..n)
            .map(|p| if p == i0 { merged_a.clone() } else { basis_elem(field, x.a[old(p)]) })
            .collect();
        let mut b = Vec::with_capacity(pair_count(n));
        for p in 0..n {
            for q in p + 1..n {
                let entry = if q == i0 {
                    b_product(ctx, x, [(p, i0), (p, i0 + 1)])
                } else if p == i0 {
                    b_product(ctx, x, [(i0, old(q)), (i0 + 1, old(q))])
                } else {
                    basis_elem(field, x.b_at(old(p), old(q)))
                };
                b.push(entry);
            }
        }
        let s = sign(field, i0 + 1);
        for (ord, c) in GeneralTensorArgs::from_sparse(a, b).expand_in(field, &shape_n) {
            terms.push(LinearTerm {
                coeff: &s * &c,
                ord,
                action: Action::Identity,
            });
        }
    }

    // (-1)^{n+1} f(rows 1..n) ε(b_{1,n+1} ⋯ b_{n,n+1}) a_{n+1}
    let tail = ctx.eps_sparse(&b_product(ctx, x, (0..n).map(|p| (p, n))));
    let v = ctx.a().mul_sparse(&tail, &basis_elem(field, x.a[n]));
    if !v.is_empty() {
        terms.push(LinearTerm {
            coeff: sign(field, n + 1),
            ord: shape_n.ordinal(&x.sub(0, n)),
            action: Action::Right(v),
        });
    }
    terms
}

fn apply_terms(ctx: &TripleContext, f: &Cochain, terms: &[LinearTerm]) -> Element {
    let field = ctx.field();
    let module = ctx.module();
    let mut out = vec![field.zero(); ctx.dim_m()];
    for t in terms {
        let v = f.value(t.ord);
        let acted;
        let v = match &t.action {
            Action::Identity => v,
            Action::Left(u) => {
                acted = module.act(field, u, v, false);
                &acted[..]
            }
            Action::Right(u) => {
                acted = module.act(field, u, v, true);
                &acted[..]
            }
        };
        for (o, x) in out.iter_mut().zip(v) {
            o.add_product(&t.coeff, x);
        }
    }
    out
}

/// `δ^n f ∈ C^{n+1}` with coefficients in any bimodule.
pub fn differential(ctx: &TripleContext, f: &Cochain) -> Result<Cochain, OperatorError> {
    check(ctx, f)?;
    Ok(Cochain::from_fn(ctx, f.degree() + 1, |x| {
        apply_terms(ctx, f, &differential_terms(ctx, x))
    }))
}

/// Sparse matrix of `δ^n` in cochain coordinates (`ordinal · dim(M) + r`).
pub fn differential_sparse(ctx: &TripleContext, n: usize) -> SparseMatrix {
    let field = ctx.field();
    let dm = ctx.dim_m();
    let module = ctx.module();
    let out_shape = TensorShape::new(ctx, n + 1);
    let in_len = TensorShape::new(ctx, n).len() * dm;
    let mut rows: Vec<SparseRow> = Vec::with_capacity(out_shape.len() * dm);
    for x in out_shape.iter() {
        let mut block: Vec<std::collections::BTreeMap<usize, Scalar>> = vec![Default::default(); dm];
        for t in differential_terms(ctx, &x) {
            let mat = match &t.action {
                Action::Identity => None,
                Action::Left(u) => Some(module.action_matrix(field, u, false)),
                Action::Right(u) => Some(module.action_matrix(field, u, true)),
            };
            for (r, row) in block.iter_mut().enumerate() {
                for s in 0..dm {
                    let entry = match &mat {
                        None if r == s => t.coeff.clone(),
                        None => continue,
                        Some(m) => {
                            let v = m.get(r, s);
                            if v.is_zero() {
                                continue;
                            }
                            &t.coeff * v
                        }
                    };
                    *row.entry(t.ord * dm + s).or_insert_with(|| field.zero()) += &entry;
                }
            }
        }
        for row in block {
            rows.push(row.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        }
    }
    SparseMatrix::new(field, in_len, rows)
}

/// `f · g ∈ C^{n+m}`: `f(top n rows) · ε(∏_{p ≤ n < q} b_{p,q}) · g(bottom m rows)`.
pub fn dot(ctx: &TripleContext, f: &Cochain, g: &Cochain) -> Result<Cochain, OperatorError> {
    ctx.require_regular()?;
    check(ctx, f)?;
    check(ctx, g)?;
    let (n, m) = (f.degree(), g.degree());
    let shape_f = TensorShape::new(ctx, n);
    let shape_g = TensorShape::new(ctx, m);
    let a = ctx.a();
    Ok(Cochain::from_fn(ctx, n + m, |x| {
        let fv = to_sparse(f.value(shape_f.ordinal(&x.sub(0, n))));
        let gv = to_sparse(g.value(shape_g.ordinal(&x.sub(n, m))));
        let mut out = vec![ctx.field().zero(); a.dim()];
        if fv.is_empty() || gv.is_empty() {
            return out;
        }
        let cross = b_product(ctx, x, (0..n).flat_map(|p| (n..n + m).map(move |q| (p, q))));
        let prod = a.mul_sparse(&a.mul_sparse(&fv, &ctx.eps_sparse(&cross)), &gv);
        for (k, v) in prod {
            out[k] = v;
        }
        out
    }))
}

/// `f ∘_j g ∈ C^{n+m-1}`: `g` evaluated on rows `j..j+m-1` fills slot `j` of `f`,
/// and `b` entries crossing the inserted block are multiplied along it.
pub fn circle_at(ctx: &TripleContext, f: &Cochain, g: &Cochain, j: usize) -> Result<Cochain, OperatorError> {
    ctx.require_regular()?;
    check(ctx, f)?;
    check(ctx, g)?;
    let (n, m) = (f.degree(), g.degree());
    if n == 0 {
        return Err(OperatorError::Degree { op: "circle product", degree: 0 });
    }
    if j == 0 || j > n {
        return Err(OperatorError::Slot { slot: j, max: n });
    }
    let field = ctx.field();
    let j0 = j - 1;
    let shape_f = TensorShape::new(ctx, n);
    let shape_g = TensorShape::new(ctx, m);
    // row of the outer matrix for slot p != j0 of f
    let outer = |p: usize| if p < j0 { p } else { p + m - 1 };
    Ok(Cochain::from_fn(ctx, n + m - 1, |x| {
        let inserted = to_sparse(g.value(shape_g.ordinal(&x.sub(j0, m))));
        if inserted.is_empty() {
            return vec![field.zero(); ctx.dim_m()];
        }
        let a: Vec<SparseElement> = (0..n)
            .map(|p| if p == j0 { inserted.clone() } else { basis_elem(field, x.a[outer(p)]) })
            .collect();
        let mut b = Vec::with_capacity(pair_count(n));
        for p in 0..n {
            for q in p + 1..n {
                let entry = if q == j0 {
                    b_product(ctx, x, (0..m).map(|k| (p, j0 + k)))
                } else if p == j0 {
                    b_product(ctx, x, (0..m).map(|k| (j0 + k, outer(q))))
                } else {
                    basis_elem(field, x.b_at(outer(p), outer(q)))
                };
                b.push(entry);
            }
        }
        f.eval_expansion(&GeneralTensorArgs::from_sparse(a, b).expand_in(field, &shape_f))
    }))
}

/// `f ∘ g = Σ_j (-1)^{(j-1)(m-1)} f ∘_j g`.
pub fn circle(ctx: &TripleContext, f: &Cochain, g: &Cochain) -> Result<Cochain, OperatorError> {
    let n = f.degree();
    if n == 0 {
        return Err(OperatorError::Degree { op: "circle product", degree: 0 });
    }
    let mut acc = circle_at(ctx, f, g, 1)?;
    for j in 2..=n {
        acc.add_scaled(&sign(ctx.field(), signs::circle(j, g.degree())), &circle_at(ctx, f, g, j)?);
    }
    Ok(acc)
}

/// `[f, g] = f ∘ g - (-1)^{(n-1)(m-1)} g ∘ f`.
pub fn bracket(ctx: &TripleContext, f: &Cochain, g: &Cochain) -> Result<Cochain, OperatorError> {
    let (n, m) = (f.degree(), g.degree());
    if n == 0 || m == 0 {
        return Err(OperatorError::Degree { op: "bracket", degree: 0 });
    }
    let mut out = circle(ctx, f, g)?;
    out.add_scaled(&-sign(ctx.field(), signs::bracket(n, m)), &circle(ctx, g, f)?);
    Ok(out)
}

/// `Δ_i f ∈ C^n` for `f ∈ C^{n+1}`, `1 ≤ i ≤ n+1`, defined by
/// `<Δ_i f(X), a> = <f(R_i(X, a)), 1>`, where `R_i` lists rows `i..n` of `X`,
/// then `a` (with unit `b` entries), then rows `1..i-1`, keeping each
/// `b_{p,q}` on the pair of rows it connected.
pub fn delta_i(ctx: &TripleContext, f: &Cochain, i: usize) -> Result<Cochain, OperatorError> {
    ctx.require_regular()?;
    let form = ctx.require_form()?;
    check(ctx, f)?;
    if f.degree() == 0 {
        return Err(OperatorError::Degree { op: "Δ", degree: 0 });
    }
    let n = f.degree() - 1;
    if i == 0 || i > n + 1 {
        return Err(OperatorError::Slot { slot: i, max: n + 1 });
    }
    let field = ctx.field();
    let i0 = i - 1;
    let dim_a = ctx.dim_a();
    let shape_f = TensorShape::new(ctx, n + 1);
    let unit_b = ctx.b().unit_sparse().clone();
    // position -> Some(old row) or None for the new row
    let order: Vec<Option<usize>> = (i0..n).map(Some).chain([None]).chain((0..i0).map(Some)).collect();
    let new_pos = n - i0;
    let w = form.unit_pairing();
    Ok(Cochain::from_fn(ctx, n, |x| {
        let mut a: Vec<SparseElement> = order
            .iter()
            .map(|r| r.map_or_else(Vec::new, |r| basis_elem(field, x.a[r])))
            .collect();
        let mut b = Vec::with_capacity(pair_count(n + 1));
        for (u, ru) in order.iter().enumerate() {
            for rv in &order[u + 1..] {
                b.push(match (ru, rv) {
                    (Some(r), Some(s)) => basis_elem(field, x.b_at(*r.min(s), *r.max(s))),
                    _ => unit_b.clone(),
                });
            }
        }
        let mut phi = Vec::with_capacity(dim_a);
        for k in 0..dim_a {
            a[new_pos] = basis_elem(field, k);
            let args = GeneralTensorArgs::from_sparse(a.clone(), b.clone());
            let value = f.eval_expansion(&args.expand_in(field, &shape_f));
            let mut pk = field.zero();
            for (v, wk) in value.iter().zip(w) {
                pk.add_product(v, wk);
            }
            phi.push(pk);
        }
        form.gram_inverse().mul_vec(&phi).expect("gram inverse is dim(A) square")
    }))
}

/// `Δ = Σ_{i=1}^{n+1} (-1)^{in} Δ_i` on `C^{n+1}`.
pub fn delta_bv(ctx: &TripleContext, f: &Cochain) -> Result<Cochain, OperatorError> {
    if f.degree() == 0 {
        return Err(OperatorError::Degree { op: "Δ", degree: 0 });
    }
    let n = f.degree() - 1;
    signed_delta_sum(ctx, f, 1..=n + 1, |i| signs::delta_bv(i, n))
}

fn signed_delta_sum(
    ctx: &TripleContext,
    f: &Cochain,
    range: std::ops::RangeInclusive<usize>,
    exponent: impl Fn(usize) -> usize,
) -> Result<Cochain, OperatorError> {
    if f.degree() == 0 {
        return Err(OperatorError::Degree { op: "Δ", degree: 0 });
    }
    let mut acc = Cochain::zero(ctx, f.degree() - 1);
    for i in range {
        acc.add_scaled(&sign(ctx.field(), exponent(i)), &delta_i(ctx, f, i)?);
    }
    Ok(acc)
}

fn rho(ctx: &TripleContext, f: &Cochain, g: &Cochain, first: bool) -> Result<Cochain, OperatorError> {
    let (n, m) = (f.degree(), g.degree());
    if n == 0 || m == 0 {
        return Err(OperatorError::Degree { op: "ρ", degree: 0 });
    }
    let fg = dot(ctx, f, g)?;
    let range = if first { 1..=m } else { m + 1..=m + n };
    signed_delta_sum(ctx, &fg, range, |i| signs::rho(i, n, m))
}

/// `ρ¹(f ⊗ g) = Σ_{i=1}^{m} (-1)^{i(n+m-1)} Δ_i(f·g)`.
pub fn rho1(ctx: &TripleContext, f: &Cochain, g: &Cochain) -> Result<Cochain, OperatorError> {
    rho(ctx, f, g, true)
}

/// `ρ²(f ⊗ g) = Σ_{i=m+1}^{m+n} (-1)^{i(n+m-1)} Δ_i(f·g)`.
pub fn rho2(ctx: &TripleContext, f: &Cochain, g: &Cochain) -> Result<Cochain, OperatorError> {
    rho(ctx, f, g, false)
}

/// `H(f, g) = Σ_{i,j ≥ 1, i+j ≤ n} (-1)^{(j-1)(m-1)+i(n+m)+1} Δ_i(f ∘_j g)`.
pub fn homotopy_h(ctx: &TripleContext, f: &Cochain, g: &Cochain) -> Result<Cochain, OperatorError> {
    let (n, m) = (f.degree(), g.degree());
    if n + m < 2 {
        return Err(OperatorError::Degree { op: "H", degree: n + m });
    }
    ctx.require_regular()?;
    ctx.require_form()?;
    let mut acc = Cochain::zero(ctx, n + m - 2);
    for j in 1..n {
        let fj = circle_at(ctx, f, g, j)?;
        for i in 1..=n - j {
            acc.add_scaled(&sign(ctx.field(), signs::homotopy(i, j, n, m)), &delta_i(ctx, &fj, i)?);
        }
    }
    Ok(acc)
}

/// `Δ(f)·g + (-1)^n f·Δ(g) - Δ(f·g)`.
fn bv_expression(ctx: &TripleContext, f: &Cochain, g: &Cochain) -> Result<Cochain, OperatorError> {
    let (n, m) = (f.degree(), g.degree());
    if n == 0 || m == 0 {
        return Err(OperatorError::Degree { op: "BV bracket", degree: 0 });
    }
    let field = ctx.field();
    let mut out = dot(ctx, &delta_bv(ctx, f)?, g)?;
    out.add_scaled(&sign(field, n), &dot(ctx, f, &delta_bv(ctx, g)?)?);
    out.add_scaled(&-field.one(), &delta_bv(ctx, &dot(ctx, f, g)?)?);
    Ok(out)
}

/// `(-1)^{(n-1)m} (Δ(f)·g + (-1)^n f·Δ(g) - Δ(f·g))`, the bracket as computed from Δ.
pub fn bv_bracket(ctx: &TripleContext, f: &Cochain, g: &Cochain) -> Result<Cochain, OperatorError> {
    let e = bv_expression(ctx, f, g)?;
    Ok(e.scale(&sign(ctx.field(), signs::bv_prefactor(f.degree(), g.degree()))))
}

/// Same as [`bv_bracket`] with `(-1)^n f·Δ(g)` replaced by `(-1)^{n + n(m-1)} Δ(g)·f`,
/// i.e. before graded commutativity is applied at cochain level.
pub fn bv_bracket_unswapped(ctx: &TripleContext, f: &Cochain, g: &Cochain) -> Result<Cochain, OperatorError> {
    let (n, m) = (f.degree(), g.degree());
    if n == 0 || m == 0 {
        return Err(OperatorError::Degree { op: "BV bracket", degree: 0 });
    }
    let field = ctx.field();
    let mut out = dot(ctx, &delta_bv(ctx, f)?, g)?;
    out.add_scaled(&sign(field, n + n * (m + 1)), &dot(ctx, &delta_bv(ctx, g)?, f)?);
    out.add_scaled(&-field.one(), &delta_bv(ctx, &dot(ctx, f, g)?)?);
    Ok(out.scale(&sign(field, signs::bv_prefactor(n, m))))
}

/// `[f, g] - (-1)^{(n-1)m} (Δ(f)·g + (-1)^n f·Δ(g) - Δ(f·g))`.
pub fn bv_defect(ctx: &TripleContext, f: &Cochain, g: &Cochain) -> Result<Cochain, OperatorError> {
    Ok(bracket(ctx, f, g)?.sub(&bv_bracket(ctx, f, g)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochains::{enumerate_indices, random_cochain};
    use crate::fixtures::{self, ints};

    const Q: Field = Field::Rational;

    fn cochain_of(ctx: &TripleContext, n: usize, f: impl Fn(&TensorIndex) -> Vec<i64>) -> Cochain {
        Cochain::from_fn(ctx, n, |x| ints(ctx.field(), &f(x)))
    }

    fn identity_a(ctx: &TripleContext) -> Cochain {
        Cochain::from_fn(ctx, 1, |x| ctx.a().basis(x.a[0]))
    }

    #[test]
    fn differential_of_unit_vanishes() {
        for (name, t) in fixtures::all(Q) {
            let one = Cochain::from_values(&t, 0, vec![t.a().unit().clone()]).unwrap();
            assert!(differential(&t, &one).unwrap().is_zero(), "{name}");
        }
    }

    #[test]
    fn differential_of_identity_is_multiplication() {
        let t = fixtures::t2(Q);
        let d = differential(&t, &identity_a(&t)).unwrap();
        for x in enumerate_indices(&t, 2) {
            let prod = t.a().multiply(&t.a().basis(x.a[0]), &t.a().basis(x.a[1])).unwrap();
            assert_eq!(d.value_at(&t, &x), &prod[..]);
        }
    }

    #[test]
    fn differential_squares_to_zero() {
        for (name, t) in fixtures::all(Q) {
            for n in 0..3 {
                if name == "T4" && n > 1 {
                    continue;
                }
                let f = random_cochain(&t, n, 7 + n as u64);
                let dd = differential(&t, &differential(&t, &f).unwrap()).unwrap();
                assert!(dd.is_zero(), "{name} degree {n}");
            }
        }
    }

    #[test]
    fn sparse_differential_matches_direct() {
        let t = fixtures::t3(Q);
        for n in 0..3 {
            let f = random_cochain(&t, n, 3);
            let direct = differential(&t, &f).unwrap();
            let via = differential_sparse(&t, n).mul_vec(f.coordinates()).unwrap();
            assert_eq!(direct.coordinates(), &via[..]);
        }
    }

    #[test]
    fn dot_in_degree_zero_is_product() {
        let t = fixtures::t4(Q);
        let f = random_cochain(&t, 0, 1);
        let g = random_cochain(&t, 0, 2);
        let fg = dot(&t, &f, &g).unwrap();
        assert_eq!(fg.value(0), &t.a().multiply(f.value(0), g.value(0)).unwrap()[..]);
    }

    #[test]
    fn unit_is_dot_identity() {
        let t = fixtures::t3(Q);
        let one = Cochain::from_values(&t, 0, vec![t.a().unit().clone()]).unwrap();
        let g = random_cochain(&t, 2, 4);
        assert_eq!(dot(&t, &one, &g).unwrap(), g);
        assert_eq!(dot(&t, &g, &one).unwrap(), g);
    }

    #[test]
    fn dot_with_trivial_b_is_cup_product() {
        let t = fixtures::t2(Q);
        let f = random_cochain(&t, 1, 10);
        let g = random_cochain(&t, 1, 11);
        let fg = dot(&t, &f, &g).unwrap();
        for x in enumerate_indices(&t, 2) {
            let expected = t.a().multiply(f.value(x.a[0]), g.value(x.a[1])).unwrap();
            assert_eq!(fg.value_at(&t, &x), &expected[..]);
        }
    }

    #[test]
    fn circle_of_linear_maps_is_composition() {
        let t = fixtures::t4(Q);
        let f = random_cochain(&t, 1, 1);
        let g = random_cochain(&t, 1, 2);
        let fg = circle_at(&t, &f, &g, 1).unwrap();
        for a in 0..4 {
            let ga = g.value(a).to_vec();
            let expected: Vec<Scalar> = (0..4)
                .map(|r| {
                    let mut acc = Q.zero();
                    for (k, c) in ga.iter().enumerate() {
                        acc.add_product(c, &f.value(k)[r]);
                    }
                    acc
                })
                .collect();
            assert_eq!(fg.value(a), &expected[..]);
        }
        assert_eq!(circle(&t, &f, &g).unwrap(), fg);
    }

    #[test]
    fn inserting_identity_changes_nothing() {
        let t = fixtures::t3(Q);
        let id = identity_a(&t);
        let f = random_cochain(&t, 3, 21);
        for j in 1..=3 {
            assert_eq!(circle_at(&t, &f, &id, j).unwrap(), f, "slot {j}");
        }
    }

    #[test]
    fn circle_first_slot_with_trivial_b() {
        let t = fixtures::t2(Q);
        let f = random_cochain(&t, 2, 8);
        let g = random_cochain(&t, 1, 9);
        let fg = circle_at(&t, &f, &g, 1).unwrap();
        let shape = TensorShape::new(&t, 2);
        for x in enumerate_indices(&t, 2) {
            let mut expected = vec![Q.zero(); 2];
            for (k, c) in g.value(x.a[0]).iter().enumerate() {
                let v = f.value(shape.ordinal(&TensorIndex { a: vec![k, x.a[1]], b: vec![0] }));
                for (e, vv) in expected.iter_mut().zip(v) {
                    e.add_product(c, vv);
                }
            }
            assert_eq!(fg.value_at(&t, &x), &expected[..]);
        }
    }

    #[test]
    fn circle_sign_instantiation() {
        let t = fixtures::t3(Q);
        let f = random_cochain(&t, 2, 30);
        let g = random_cochain(&t, 2, 31);
        let expected = circle_at(&t, &f, &g, 1).unwrap().sub(&circle_at(&t, &f, &g, 2).unwrap());
        assert_eq!(circle(&t, &f, &g).unwrap(), expected);
        let h = random_cochain(&t, 1, 32);
        let plus = circle_at(&t, &f, &h, 1).unwrap().add(&circle_at(&t, &f, &h, 2).unwrap());
        assert_eq!(circle(&t, &f, &h).unwrap(), plus);
    }

    #[test]
    fn circle_errors() {
        let t = fixtures::t2(Q);
        let f = random_cochain(&t, 2, 1);
        let z = random_cochain(&t, 0, 1);
        assert_eq!(circle_at(&t, &f, &f, 3).unwrap_err(), OperatorError::Slot { slot: 3, max: 2 });
        assert_eq!(circle_at(&t, &f, &f, 0).unwrap_err(), OperatorError::Slot { slot: 0, max: 2 });
        assert!(matches!(circle(&t, &z, &f), Err(OperatorError::Degree { .. })));
        assert!(matches!(bracket(&t, &f, &z), Err(OperatorError::Degree { .. })));
    }

    #[test]
    fn bracket_of_linear_maps_is_commutator() {
        let t = fixtures::t2(Q);
        let f = random_cochain(&t, 1, 3);
        let g = random_cochain(&t, 1, 4);
        let expected = circle_at(&t, &f, &g, 1).unwrap().sub(&circle_at(&t, &g, &f, 1).unwrap());
        assert_eq!(bracket(&t, &f, &g).unwrap(), expected);
    }

    #[test]
    fn self_bracket_in_even_degree_doubles() {
        let t = fixtures::t3(Q);
        let f = random_cochain(&t, 2, 12);
        let ff = circle(&t, &f, &f).unwrap();
        assert_eq!(bracket(&t, &f, &f).unwrap(), ff.add(&ff));
    }

    #[test]
    fn bracket_is_graded_antisymmetric() {
        let t = fixtures::t5(Q);
        for (n, m) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
            let f = random_cochain(&t, n, 40 + n as u64);
            let g = random_cochain(&t, m, 50 + m as u64);
            let mut sum = bracket(&t, &f, &g).unwrap();
            sum.add_scaled(&sign(Q, signs::bracket(n, m)), &bracket(&t, &g, &f).unwrap());
            assert!(sum.is_zero(), "({n},{m})");
        }
    }

    #[test]
    fn delta_of_identity_is_unit() {
        for (name, t) in fixtures::all(Q) {
            let d = delta_i(&t, &identity_a(&t), 1).unwrap();
            assert_eq!(d.value(0), &t.a().unit()[..], "{name}");
            assert_eq!(delta_bv(&t, &identity_a(&t)).unwrap(), d);
        }
    }

    #[test]
    fn delta_on_dual_numbers_by_hand() {
        // f(1) = x, f(x) = 1: <t, 1> = <x, 1> = 1 and <t, x> = <1, 1> = 0, so t = x.
        let t = fixtures::t2(Q);
        let f = cochain_of(&t, 1, |x| if x.a[0] == 0 { vec![0, 1] } else { vec![1, 0] });
        assert_eq!(delta_i(&t, &f, 1).unwrap().value(0), &ints(Q, &[0, 1])[..]);
    }

    #[test]
    fn delta_two_matches_rotated_pairing() {
        // <Δ₂f(a₁), a₂> = <f(a₂ ⊗ a₁ with b = 1_B), 1>
        for (name, t) in fixtures::all(Q) {
            let f = random_cochain(&t, 2, 77);
            let d = delta_i(&t, &f, 2).unwrap();
            let shape = TensorShape::new(&t, 2);
            for a1 in 0..t.dim_a() {
                for a2 in 0..t.dim_a() {
                    let lhs = t.form_pair(d.value(a1), &t.a().basis(a2)).unwrap();
                    let args = GeneralTensorArgs::from_sparse(
                        vec![vec![(a2, Q.one())], vec![(a1, Q.one())]],
                        vec![t.b().unit_sparse().clone()],
                    );
                    let v = f.eval_expansion(&args.expand_in(Q, &shape));
                    let rhs = t.form_pair(&v, t.a().unit()).unwrap();
                    assert_eq!(lhs, rhs, "{name} ({a1},{a2})");
                }
            }
        }
    }

    #[test]
    fn delta_in_degree_two_signs() {
        let t = fixtures::t3(Q);
        let f = random_cochain(&t, 2, 5);
        let expected = delta_i(&t, &f, 2).unwrap().sub(&delta_i(&t, &f, 1).unwrap());
        assert_eq!(delta_bv(&t, &f).unwrap(), expected);
    }

    #[test]
    fn delta_requirements() {
        let t = fixtures::t2(Q);
        let f0 = random_cochain(&t, 0, 1);
        assert!(matches!(delta_bv(&t, &f0), Err(OperatorError::Degree { .. })));
        let f = random_cochain(&t, 2, 1);
        assert_eq!(delta_i(&t, &f, 3).unwrap_err(), OperatorError::Slot { slot: 3, max: 2 });
        let bare = t.without_form();
        assert_eq!(
            delta_i(&bare, &f, 1).unwrap_err(),
            OperatorError::Structure(StructureError::NoForm)
        );
    }

    #[test]
    fn rho_partition_sums_to_delta_of_dot() {
        let t = fixtures::t3(Q);
        for (n, m) in [(1, 1), (1, 2), (2, 1)] {
            let f = random_cochain(&t, n, 60);
            let g = random_cochain(&t, m, 61);
            let sum = rho1(&t, &f, &g).unwrap().add(&rho2(&t, &f, &g).unwrap());
            assert_eq!(sum, delta_bv(&t, &dot(&t, &f, &g).unwrap()).unwrap(), "({n},{m})");
        }
    }

    #[test]
    fn rho_lemma_on_dual_numbers_by_hand() {
        // n = m = 1 over k[x]/(x²), B = k. With f ⊗ g in C²:
        // ρ¹(f⊗g) = -Δ₁(f·g), ρ²(g⊗f) = Δ₂(g·f), and the identity reads
        // <f(a)g(b), 1> = <g(b)f(a), 1> after pairing with b.
        let t = fixtures::t2(Q);
        let f = cochain_of(&t, 1, |x| if x.a[0] == 0 { vec![2, -1] } else { vec![0, 3] });
        let g = cochain_of(&t, 1, |x| if x.a[0] == 0 { vec![1, 1] } else { vec![-2, 0] });
        let lhs = rho1(&t, &f, &g).unwrap();
        let rhs = rho2(&t, &g, &f).unwrap().neg();
        // hand values: <Δ₁(f·g)(a), b> = <f(a) g(b), 1> = coefficient of x in f(a)g(b)
        // f(1)g(1) = (2-x)(1+x) = 2 + x, f(1)g(x) = (2-x)(-2) = -4 + 2x,
        // f(x)g(1) = 3x(1+x) = 3x,     f(x)g(x) = 3x(-2) = -6x.
        // Δ₁(f·g)(a) = t with <t,1> = [b=1], <t,x> = [b=x]: t = (c_x, c_1) where c_b = <f(a)g(b),1>.
        // a = 1: c_1 = 1, c_x = 2 → t = 2 + x; a = x: c_1 = 3, c_x = -6 → t = -6 + 3x.
        assert_eq!(lhs.value(0), &ints(Q, &[-2, -1])[..]);
        assert_eq!(lhs.value(1), &ints(Q, &[6, -3])[..]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn homotopy_small_degrees() {
        let t = fixtures::t3(Q);
        let f1 = random_cochain(&t, 1, 1);
        let g = random_cochain(&t, 1, 2);
        assert!(homotopy_h(&t, &f1, &g).unwrap().is_zero());
        let f2 = random_cochain(&t, 2, 3);
        let h = homotopy_h(&t, &f2, &g).unwrap();
        assert_eq!(h, delta_i(&t, &circle_at(&t, &f2, &g, 1).unwrap(), 1).unwrap());
    }

    #[test]
    fn defect_of_zero_is_zero() {
        let t = fixtures::t3(Q);
        let z = Cochain::zero(&t, 1);
        assert!(bv_defect(&t, &z, &z).unwrap().is_zero());
    }

    #[test]
    fn module_coefficients_refuse_products() {
        let raw = fixtures::t2_candidate(Q);
        let module = crate::structures::BimoduleSpec::regular(&raw.a);
        let t = crate::structures::validate_triple(crate::structures::TripleCandidate {
            module: Some(module),
            ..raw
        })
        .unwrap();
        let f = random_cochain(&t, 1, 1);
        assert_eq!(
            dot(&t, &f, &f).unwrap_err(),
            OperatorError::Structure(StructureError::ModuleNotRegular)
        );
        // δ works for any bimodule
        assert!(differential(&t, &differential(&t, &f).unwrap()).unwrap().is_zero());
    }
}
