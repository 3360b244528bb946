//! Differential matrices, cohomology dimensions, coboundary membership and the
//! comparison of the two bracket constructions on cohomology classes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::cochains::{domain_dimension, Cochain};
use crate::io;
use crate::linalg::{LinalgError, RowEchelon, SparseMatrix};
use crate::operators::{self, OperatorError};
use crate::structures::TripleContext;

/// Largest number of coordinates of `C^{n+1}` we are willing to assemble.
pub const DEFAULT_MAX_COORDINATES: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_coordinates: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_coordinates: DEFAULT_MAX_COORDINATES,
        }
    }
}

impl Limits {
    pub fn unlimited() -> Self {
        Limits {
            max_coordinates: usize::MAX,
        }
    }

    /// Fails if `δ^n` would touch more coordinates than allowed.
    pub fn check(&self, ctx: &TripleContext, n: usize) -> Result<(), CohomologyError> {
        let coordinates = domain_dimension(ctx, n + 1).saturating_mul(ctx.dim_m());
        if coordinates > self.max_coordinates {
            return Err(CohomologyError::ResourceCap {
                degree: n,
                coordinates,
                cap: self.max_coordinates,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("δ^{degree} needs {coordinates} coordinates, above the cap of {cap}")]
    ResourceCap { degree: usize, coordinates: usize, cap: usize },
    #[error("Z^{degree} = 0, no cocycle to sample")]
    NoCocycles { degree: usize },
    #[error("{which} is not a cocycle: δ{which} has {nonzero} nonzero coordinates")]
    NotCocycle { which: &'static str, nonzero: usize },
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Matrix of `δ^n`, coordinates ordered as `ordinal · dim(M) + r`.
pub fn differential_matrix(ctx: &TripleContext, n: usize) -> SparseMatrix {
    operators::differential_sparse(ctx, n)
}

pub fn differential_matrix_capped(ctx: &TripleContext, n: usize, limits: &Limits) -> Result<SparseMatrix, CohomologyError> {
    limits.check(ctx, n)?;
    Ok(differential_matrix(ctx, n))
}

/// Rank computed on whichever side of the matrix is smaller.
fn sparse_rank(m: &SparseMatrix) -> usize {
    if m.nrows() <= m.ncols() {
        return m.rank().expect("assembled over one field");
    }
    let mut columns = vec![Vec::new(); m.ncols()];
    for (r, row) in m.rows().iter().enumerate() {
        for (c, v) in row {
            columns[*c].push((r, v.clone()));
        }
    }
    let mut ech = RowEchelon::new(m.field(), m.nrows());
    for col in &columns {
        ech.insert(col);
        if ech.rank() == m.ncols() {
            break;
        }
    }
    ech.rank()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeDims {
    pub degree: usize,
    pub dim_c: usize,
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_h: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub triple_id: String,
    pub field: String,
    pub degrees: Vec<DegreeDims>,
}

impl CohomologyReport {
    pub fn h(&self, n: usize) -> usize {
        self.degrees[n].dim_h
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::from("n\tdim_C\tdim_Z\tdim_B\tdim_H\n");
        for d in &self.degrees {
            s.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", d.degree, d.dim_c, d.dim_z, d.dim_b, d.dim_h));
        }
        s
    }
}

pub fn cohomology_dims(ctx: &TripleContext, max_degree: usize, limits: &Limits) -> Result<CohomologyReport, CohomologyError> {
    for n in 0..=max_degree {
        limits.check(ctx, n)?;
    }
    let mut degrees = Vec::with_capacity(max_degree + 1);
    let mut prev_rank = 0;
    for n in 0..=max_degree {
        let d = differential_matrix(ctx, n);
        let rank = sparse_rank(&d);
        let dim_c = d.ncols();
        let dim_z = dim_c - rank;
        degrees.push(DegreeDims {
            degree: n,
            dim_c,
            dim_z,
            dim_b: prev_rank,
            dim_h: dim_z - prev_rank,
        });
        prev_rank = rank;
    }
    Ok(CohomologyReport {
        triple_id: io::triple_id(ctx),
        field: ctx.field().to_string(),
        degrees,
    })
}

/// Outcome of `δw = z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `witness` is `None` only for the zero cochain in degree 0.
    Coboundary { witness: Option<Cochain> },
    NotCoboundary,
}

impl Membership {
    pub fn is_coboundary(&self) -> bool {
        matches!(self, Membership::Coboundary { .. })
    }

    pub fn witness(&self) -> Option<&Cochain> {
        match self {
            Membership::Coboundary { witness } => witness.as_ref(),
            Membership::NotCoboundary => None,
        }
    }
}

pub fn is_coboundary(ctx: &TripleContext, z: &Cochain) -> Result<Membership, CohomologyError> {
    is_coboundary_capped(ctx, z, &Limits::default())
}

pub fn is_coboundary_capped(ctx: &TripleContext, z: &Cochain, limits: &Limits) -> Result<Membership, CohomologyError> {
    let n = z.degree();
    if n == 0 {
        return Ok(if z.is_zero() {
            Membership::Coboundary { witness: None }
        } else {
            Membership::NotCoboundary
        });
    }
    if z.is_zero() {
        return Ok(Membership::Coboundary {
            witness: Some(Cochain::zero(ctx, n - 1)),
        });
    }
    let d = differential_matrix_capped(ctx, n - 1, limits)?;
    Ok(match d.solve(z.coordinates())? {
        Some(w) => Membership::Coboundary {
            witness: Some(Cochain::from_coordinates(ctx, n - 1, w).expect("solution has the column count")),
        },
        None => Membership::NotCoboundary,
    })
}

/// Basis of `Z^n` in cochain coordinates.
pub fn cocycle_basis(ctx: &TripleContext, n: usize) -> Vec<Cochain> {
    differential_matrix(ctx, n)
        .kernel_basis()
        .expect("assembled over one field")
        .into_iter()
        .map(|v| Cochain::from_coordinates(ctx, n, v).expect("kernel vector has the column count"))
        .collect()
}

/// Integer combination (coefficients in `-3..=3`) of the kernel basis of `δ^n`,
/// redrawn until nonzero. Deterministic in `seed`.
pub fn sample_cocycle(ctx: &TripleContext, n: usize, seed: u64) -> Result<Cochain, CohomologyError> {
    let basis = cocycle_basis(ctx, n);
    if basis.is_empty() {
        return Err(CohomologyError::NoCocycles { degree: n });
    }
    Ok(combine(ctx, n, &basis, seed))
}

pub(crate) fn combine(ctx: &TripleContext, n: usize, basis: &[Cochain], seed: u64) -> Cochain {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut out = Cochain::zero(ctx, n);
        for v in basis {
            let c: i64 = rng.random_range(-3..=3);
            if c != 0 {
                out.add_scaled(&ctx.field().from_i64(c), v);
            }
        }
        if !out.is_zero() {
            return out;
        }
    }
}

/// The two bracket constructions on a pair of cocycles, with the class comparison.
#[derive(Clone, Debug)]
pub struct BracketComparison {
    /// `[f, g]` via ∘.
    pub z1: Cochain,
    /// The bracket computed from Δ.
    pub z2: Cochain,
    pub z2_is_cocycle: bool,
    /// Class of `z1 - z2`.
    pub difference: Membership,
    /// `δ(witness)` recomputed and compared with `z1 - z2` coefficientwise.
    pub witness_verified: bool,
    /// Same comparison with `Δ(g)·f` kept in place of its graded-commuted form.
    pub variant_difference: Membership,
}

impl BracketComparison {
    pub fn classes_equal(&self) -> bool {
        self.z2_is_cocycle && self.difference.is_coboundary() && self.witness_verified
    }
}

pub fn check_cocycle(ctx: &TripleContext, f: &Cochain, which: &'static str) -> Result<(), CohomologyError> {
    let df = operators::differential(ctx, f)?;
    if !df.is_zero() {
        return Err(CohomologyError::NotCocycle {
            which,
            nonzero: df.nnz(),
        });
    }
    Ok(())
}

/// Verifies a coboundary verdict by recomputing `δw`.
pub fn verify_witness(ctx: &TripleContext, z: &Cochain, m: &Membership) -> Result<bool, CohomologyError> {
    Ok(match m {
        Membership::Coboundary { witness: Some(w) } => operators::differential(ctx, w)? == *z,
        Membership::Coboundary { witness: None } => z.degree() == 0 && z.is_zero(),
        Membership::NotCoboundary => false,
    })
}

pub fn bracket_class_compare(ctx: &TripleContext, f: &Cochain, g: &Cochain) -> Result<BracketComparison, CohomologyError> {
    check_cocycle(ctx, f, "f")?;
    check_cocycle(ctx, g, "g")?;
    let z1 = operators::bracket(ctx, f, g)?;
    let z2 = operators::bv_bracket(ctx, f, g)?;
    let z2_is_cocycle = operators::differential(ctx, &z2)?.is_zero();
    let diff = z1.sub(&z2);
    let difference = is_coboundary(ctx, &diff)?;
    let witness_verified = verify_witness(ctx, &diff, &difference)?;
    let variant = z1.sub(&operators::bv_bracket_unswapped(ctx, f, g)?);
    let variant_difference = is_coboundary(ctx, &variant)?;
    Ok(BracketComparison {
        z1,
        z2,
        z2_is_cocycle,
        difference,
        witness_verified,
        variant_difference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochains::random_cochain;
    use crate::fixtures;
    use crate::scalar::Field;

    const Q: Field = Field::Rational;

    fn dims(ctx: &TripleContext, max: usize) -> Vec<usize> {
        let r = cohomology_dims(ctx, max, &Limits::default()).unwrap();
        r.degrees.iter().map(|d| d.dim_h).collect()
    }

    #[test]
    fn ground_field_matrices() {
        let t = fixtures::t1(Q);
        assert!(differential_matrix(&t, 0).is_zero());
        let d1 = differential_matrix(&t, 1);
        assert_eq!((d1.nrows(), d1.ncols()), (1, 1));
        assert_eq!(d1.get(0, 0), Q.one());
    }

    #[test]
    fn consecutive_matrices_compose_to_zero() {
        for (name, t) in fixtures::all(Q) {
            let top = if name == "T4" { 2 } else { 3 };
            for n in 0..top {
                let p = differential_matrix(&t, n + 1).mul(&differential_matrix(&t, n)).unwrap();
                assert!(p.is_zero(), "{name} degree {n}");
            }
        }
    }

    #[test]
    fn known_dimensions() {
        assert_eq!(dims(&fixtures::t1(Q), 2), vec![1, 0, 0]);
        let h = dims(&fixtures::t2(Q), 1);
        assert_eq!(h, vec![2, 1]);
        let m = fixtures::with_trivial_b(fixtures::t4_candidate(Q));
        let t = crate::structures::validate_triple(m).unwrap();
        assert_eq!(dims(&t, 0), vec![1]);
    }

    #[test]
    fn report_invariants() {
        for (name, t) in fixtures::all(Q) {
            let top = if name == "T4" { 2 } else { 3 };
            let r = cohomology_dims(&t, top, &Limits::default()).unwrap();
            for d in &r.degrees {
                assert!(d.dim_b <= d.dim_z, "{name}");
                assert_eq!(d.dim_h, d.dim_z - d.dim_b);
                assert_eq!(d.dim_c, domain_dimension(&t, d.degree) * t.dim_m());
            }
        }
    }

    #[test]
    fn resource_cap_is_enforced() {
        let t = fixtures::t3(Q);
        let tiny = Limits { max_coordinates: 10 };
        assert!(matches!(
            cohomology_dims(&t, 3, &tiny),
            Err(CohomologyError::ResourceCap { degree: 1, .. })
        ));
        let t4 = fixtures::t4(Q);
        assert!(matches!(
            cohomology_dims(&t4, 4, &Limits::default()),
            Err(CohomologyError::ResourceCap { degree: 4, .. })
        ));
    }

    #[test]
    fn coboundary_membership() {
        let t = fixtures::t3(Q);
        let zero = Cochain::zero(&t, 2);
        assert_eq!(
            is_coboundary(&t, &zero).unwrap().witness().unwrap(),
            &Cochain::zero(&t, 1)
        );
        let w = random_cochain(&t, 1, 5);
        let z = operators::differential(&t, &w).unwrap();
        let m = is_coboundary(&t, &z).unwrap();
        assert!(verify_witness(&t, &z, &m).unwrap());
        let nonzero0 = random_cochain(&t, 0, 1);
        assert_eq!(is_coboundary(&t, &nonzero0).unwrap(), Membership::NotCoboundary);
        assert!(is_coboundary(&t, &Cochain::zero(&t, 0)).unwrap().is_coboundary());
    }

    #[test]
    fn nonzero_h1_class_is_not_a_coboundary() {
        let t = fixtures::t2(Q);
        let image = differential_matrix(&t, 0);
        let mut found = false;
        for z in cocycle_basis(&t, 1) {
            if !is_coboundary(&t, &z).unwrap().is_coboundary() {
                found = true;
            }
        }
        assert!(found);
        assert!(image.rank().unwrap() < cocycle_basis(&t, 1).len());
    }

    #[test]
    fn sampled_cocycles() {
        let t = fixtures::t3(Q);
        for n in 0..3 {
            let z = sample_cocycle(&t, n, 9).unwrap();
            assert!(operators::differential(&t, &z).unwrap().is_zero());
            assert_eq!(z, sample_cocycle(&t, n, 9).unwrap());
        }
        // commutative A: every 0-cochain is a cocycle
        let t2 = fixtures::t2(Q);
        assert_eq!(cocycle_basis(&t2, 0).len(), 2);
    }

    #[test]
    fn no_cocycles_error() {
        let t = fixtures::t1(Q);
        assert_eq!(sample_cocycle(&t, 1, 0).unwrap_err(), CohomologyError::NoCocycles { degree: 1 });
        // k[C₂] is separable and commutative: no nonzero derivations
        let t5 = fixtures::t5(Q);
        assert_eq!(sample_cocycle(&t5, 1, 0).unwrap_err(), CohomologyError::NoCocycles { degree: 1 });
    }

    #[test]
    fn compare_on_dual_numbers() {
        let t = fixtures::t2(Q);
        for seed in 0..3 {
            let f = sample_cocycle(&t, 1, seed).unwrap();
            let g = sample_cocycle(&t, 1, seed + 100).unwrap();
            let c = bracket_class_compare(&t, &f, &g).unwrap();
            assert!(c.classes_equal());
        }
    }

    #[test]
    fn compare_with_a_coboundary() {
        let t = fixtures::t3(Q);
        let f = operators::differential(&t, &random_cochain(&t, 0, 3)).unwrap();
        let g = sample_cocycle(&t, 1, 4).unwrap();
        let c = bracket_class_compare(&t, &f, &g).unwrap();
        assert!(is_coboundary(&t, &c.z1).unwrap().is_coboundary());
        assert!(c.classes_equal());
    }

    #[test]
    fn compare_rejects_non_cocycles() {
        let t = fixtures::t2(Q);
        let f = random_cochain(&t, 1, 1);
        let g = sample_cocycle(&t, 1, 1).unwrap();
        assert!(matches!(
            bracket_class_compare(&t, &f, &g),
            Err(CohomologyError::NotCocycle { which: "f", .. })
        ));
    }

    #[test]
    fn defect_of_non_cocycles_can_fail() {
        // seed 0 on T2 at (1,1) is a documented counterexample without the cocycle hypothesis
        let t = fixtures::t2(Q);
        let f = random_cochain(&t, 1, 0);
        let g = random_cochain(&t, 1, 1);
        let defect = operators::bv_defect(&t, &f, &g).unwrap();
        assert!(!is_coboundary(&t, &defect).unwrap().is_coboundary());
    }
}
