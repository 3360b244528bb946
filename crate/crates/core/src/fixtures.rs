//! Bundled test triples.
//!
//! | name | A | B | ε |
//! |------|---|---|---|
//! | T1 | k | k | id |
//! | T2 | k[x]/(x²), form [[0,1],[1,0]] | k | unit |
//! | T3 | k[x]/(x²), form [[0,1],[1,0]] | k[y]/(y²) | y ↦ 0 |
//! | T4 | 2×2 matrices, trace form | k[y]/(y²) | y ↦ 0 |
//! | T5 | k[C₂], <g,h> = 1 iff gh = 1 | k[C₂] | id |

use crate::linalg::Matrix;
use crate::scalar::{Field, Scalar};
use crate::structures::{validate_triple, AlgebraSpec, Element, TripleCandidate, TripleContext};

pub const NAMES: [&str; 5] = ["T1", "T2", "T3", "T4", "T5"];

pub fn ints(field: Field, v: &[i64]) -> Element {
    v.iter().map(|&x| field.from_i64(x)).collect()
}

/// Builds an algebra from a product rule on basis indices.
fn algebra(field: Field, labels: &[&str], unit: &[i64], rule: impl Fn(usize, usize) -> Vec<i64>) -> AlgebraSpec {
    let n = labels.len();
    let structure = (0..n)
        .map(|i| (0..n).map(|j| ints(field, &rule(i, j))).collect())
        .collect();
    AlgebraSpec::new(
        field,
        labels.iter().map(|s| s.to_string()).collect(),
        structure,
        ints(field, unit),
    )
    .expect("fixture algebra is well formed")
}

/// `k[x]/(x²)` with basis `{1, x}`.
pub fn dual_numbers(field: Field, var: &str) -> AlgebraSpec {
    algebra(field, &["1", var], &[1, 0], |i, j| match i + j {
        0 => vec![1, 0],
        1 => vec![0, 1],
        _ => vec![0, 0],
    })
}

/// `k[C₂]` with basis `{1, g}`.
pub fn group_algebra_c2(field: Field) -> AlgebraSpec {
    algebra(field, &["1", "g"], &[1, 0], |i, j| {
        if (i + j) % 2 == 0 {
            vec![1, 0]
        } else {
            vec![0, 1]
        }
    })
}

/// 2×2 matrices with basis `E11, E12, E21, E22` (index `2r + c`).
pub fn matrix_algebra(field: Field) -> AlgebraSpec {
    algebra(field, &["E11", "E12", "E21", "E22"], &[1, 0, 0, 1], |i, j| {
        let (r1, c1) = (i / 2, i % 2);
        let (r2, c2) = (j / 2, j % 2);
        let mut v = vec![0; 4];
        if c1 == r2 {
            v[2 * r1 + c2] = 1;
        }
        v
    })
}

fn matrix(field: Field, rows: &[&[i64]]) -> Matrix {
    Matrix::from_i64(field, rows)
}

pub fn t1_candidate(field: Field) -> TripleCandidate {
    TripleCandidate {
        field,
        a: AlgebraSpec::ground(field),
        b: AlgebraSpec::ground(field),
        epsilon: matrix(field, &[&[1]]),
        form: Some(matrix(field, &[&[1]])),
        module: None,
    }
}

pub fn t2_candidate(field: Field) -> TripleCandidate {
    TripleCandidate {
        field,
        a: dual_numbers(field, "x"),
        b: AlgebraSpec::ground(field),
        epsilon: matrix(field, &[&[1], &[0]]),
        form: Some(matrix(field, &[&[0, 1], &[1, 0]])),
        module: None,
    }
}

pub fn t3_candidate(field: Field) -> TripleCandidate {
    TripleCandidate {
        field,
        a: dual_numbers(field, "x"),
        b: dual_numbers(field, "y"),
        epsilon: matrix(field, &[&[1, 0], &[0, 0]]),
        form: Some(matrix(field, &[&[0, 1], &[1, 0]])),
        module: None,
    }
}

pub fn t4_candidate(field: Field) -> TripleCandidate {
    // trace form: <E_ij, E_kl> = tr(E_ij E_kl) = [j = k][i = l]
    let mut gram = Matrix::zeros(field, 4, 4);
    for i in 0..4 {
        for j in 0..4 {
            let (r1, c1) = (i / 2, i % 2);
            let (r2, c2) = (j / 2, j % 2);
            if c1 == r2 && r1 == c2 {
                gram.set(i, j, field.one());
            }
        }
    }
    TripleCandidate {
        field,
        a: matrix_algebra(field),
        b: dual_numbers(field, "y"),
        epsilon: matrix(field, &[&[1, 0], &[0, 0], &[0, 0], &[1, 0]]),
        form: Some(gram),
        module: None,
    }
}

pub fn t5_candidate(field: Field) -> TripleCandidate {
    TripleCandidate {
        field,
        a: group_algebra_c2(field),
        b: group_algebra_c2(field),
        epsilon: Matrix::identity(field, 2),
        form: Some(matrix(field, &[&[1, 0], &[0, 1]])),
        module: None,
    }
}

/// Replaces `B` by the ground field, keeping `A` and the form.
pub fn with_trivial_b(raw: TripleCandidate) -> TripleCandidate {
    let field = raw.field;
    let mut eps = Matrix::zeros(field, raw.a.dim(), 1);
    for (i, v) in raw.a.unit().iter().enumerate() {
        eps.set(i, 0, v.clone());
    }
    TripleCandidate {
        b: AlgebraSpec::ground(field),
        epsilon: eps,
        ..raw
    }
}

pub fn candidate(name: &str, field: Field) -> Option<TripleCandidate> {
    Some(match name.to_ascii_uppercase().as_str() {
        "T1" => t1_candidate(field),
        "T2" => t2_candidate(field),
        "T3" => t3_candidate(field),
        "T4" => t4_candidate(field),
        "T5" => t5_candidate(field),
        _ => return None,
    })
}

pub fn by_name(name: &str, field: Field) -> Option<TripleContext> {
    candidate(name, field).map(|c| validate_triple(c).expect("fixture triple is valid"))
}

pub fn t1(field: Field) -> TripleContext {
    by_name("T1", field).unwrap()
}

pub fn t2(field: Field) -> TripleContext {
    by_name("T2", field).unwrap()
}

pub fn t3(field: Field) -> TripleContext {
    by_name("T3", field).unwrap()
}

pub fn t4(field: Field) -> TripleContext {
    by_name("T4", field).unwrap()
}

pub fn t5(field: Field) -> TripleContext {
    by_name("T5", field).unwrap()
}

pub fn all(field: Field) -> Vec<(&'static str, TripleContext)> {
    NAMES.iter().map(|&n| (n, by_name(n, field).unwrap())).collect()
}

/// Scalar helper for tests: `v` as an element of `field`.
pub fn s(field: Field, v: i64) -> Scalar {
    field.from_i64(v)
}
