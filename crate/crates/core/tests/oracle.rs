mod common;

use sechoch::cohomology::{cohomology_dims, Limits};
use sechoch::fixtures::{self, t2_candidate, t4_candidate, with_trivial_b};
use sechoch::{validate_triple, Field, TripleContext};

fn trivial_b_triples() -> Vec<(&'static str, TripleContext)> {
    let q = Field::Rational;
    vec![
        ("T1", fixtures::t1(q)),
        ("T2", validate_triple(with_trivial_b(t2_candidate(q))).unwrap()),
        ("T4/k", validate_triple(with_trivial_b(t4_candidate(q))).unwrap()),
    ]
}

#[test]
fn differential_matches_ordinary_hochschild() {
    for (name, ctx) in trivial_b_triples() {
        for n in 0..=3 {
            common::compare_differential(&ctx, n).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }
}

#[test]
fn cohomology_matches_ordinary_hochschild() {
    for (name, ctx) in trivial_b_triples() {
        let alg = common::Algebra::of(&ctx);
        let want = common::hochschild_dims(&alg, 3);
        let got: Vec<usize> = cohomology_dims(&ctx, 3, &Limits::default())
            .unwrap()
            .degrees
            .iter()
            .map(|d| d.dim_h)
            .collect();
        assert_eq!(got, want, "{name}");
    }
}

#[test]
fn oracle_knows_dual_numbers() {
    // HH^n(k[x]/(x²)) over Q: 2, 1, 1, 1
    let alg = common::Algebra::of(&fixtures::t2(Field::Rational));
    assert_eq!(common::hochschild_dims(&alg, 3), vec![2, 1, 1, 1]);
}

#[test]
fn oracle_knows_matrix_algebra() {
    // M_2(k) is separable: HH^0 = k, HH^n = 0 for n > 0
    let alg = common::Algebra::of(&fixtures::t4(Field::Rational));
    assert_eq!(common::hochschild_dims(&alg, 3), vec![1, 0, 0, 0]);
}
