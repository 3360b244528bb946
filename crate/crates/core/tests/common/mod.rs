//! Ordinary Hochschild cochains `Hom(A^{⊗n}, A)`, written from scratch for
//! comparison against the library when `B = k`.

#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::{One, Zero};

use sechoch::{Scalar, TripleContext};

pub type Q = BigRational;

pub fn q(s: &Scalar) -> Q {
    let (n, d) = s.to_ratio();
    Q::new(n, d)
}

/// Structure constants `c[i][j][k]` with `e_i e_j = Σ_k c[i][j][k] e_k`.
pub struct Algebra {
    pub dim: usize,
    pub c: Vec<Vec<Vec<Q>>>,
}

impl Algebra {
    pub fn of(ctx: &TripleContext) -> Self {
        let st = ctx.a().structure();
        let c = st
            .iter()
            .map(|row| row.iter().map(|e| e.iter().map(q).collect()).collect())
            .collect();
        Algebra { dim: ctx.dim_a(), c }
    }

    fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                for k in 0..self.dim {
                    out[k] += xi * yj * &self.c[i][j][k];
                }
            }
        }
        out
    }

    fn unit_vec(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim];
        v[i] = Q::one();
        v
    }
}

fn digits(mut ord: usize, n: usize, d: usize) -> Vec<usize> {
    let mut v = vec![0; n];
    for s in v.iter_mut().rev() {
        *s = ord % d;
        ord /= d;
    }
    v
}

fn number(ds: &[usize], d: usize) -> usize {
    ds.iter().fold(0, |acc, &x| acc * d + x)
}

/// Dense matrix of `d: Hom(A^{⊗n}, A) → Hom(A^{⊗n+1}, A)` in coordinates
/// `ord(a_1..a_n) · dim + component`, rows indexing the output.
pub fn hochschild_matrix(alg: &Algebra, n: usize) -> Vec<Vec<Q>> {
    let d = alg.dim;
    let cols = d.pow(n as u32) * d;
    let rows = d.pow(n as u32 + 1) * d;
    let mut m = vec![vec![Q::zero(); cols]; rows];
    // f = basis cochain sending word w to e_c; compute (df)(x) for every word x.
    for x_ord in 0..d.pow(n as u32 + 1) {
        let x = digits(x_ord, n + 1, d);
        // a_1 f(a_2..a_{n+1})
        let w = number(&x[1..], d);
        for c in 0..d {
            let v = alg.mul(&alg.unit_vec(x[0]), &alg.unit_vec(c));
            for (k, val) in v.iter().enumerate() {
                m[x_ord * d + k][w * d + c] += val;
            }
        }
        // Σ (-1)^i f(.., a_i a_{i+1}, ..)
        for i in 0..n {
            let prod = alg.mul(&alg.unit_vec(x[i]), &alg.unit_vec(x[i + 1]));
            let s = if (i + 1) % 2 == 0 { Q::one() } else { -Q::one() };
            for (e, coeff) in prod.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let mut word: Vec<usize> = x[..i].to_vec();
                word.push(e);
                word.extend_from_slice(&x[i + 2..]);
                let w = number(&word, d);
                for c in 0..d {
                    m[x_ord * d + c][w * d + c] += &s * coeff;
                }
            }
        }
        // (-1)^{n+1} f(a_1..a_n) a_{n+1}
        let w = number(&x[..n], d);
        let s = if (n + 1) % 2 == 0 { Q::one() } else { -Q::one() };
        for c in 0..d {
            let v = alg.mul(&alg.unit_vec(c), &alg.unit_vec(x[n]));
            for (k, val) in v.iter().enumerate() {
                m[x_ord * d + k][w * d + c] += &s * val;
            }
        }
    }
    m
}

pub fn rank(mut m: Vec<Vec<Q>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for k in c..cols {
            let v = &m[r][k] * &inv;
            m[r][k] = v;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..cols {
                    let v = &f * &m[r][k];
                    m[i][k] -= v;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// `dim HH^n` for `n = 0..=max`.
pub fn hochschild_dims(alg: &Algebra, max: usize) -> Vec<usize> {
    let mut ranks = Vec::new();
    for n in 0..=max {
        ranks.push(rank(hochschild_matrix(alg, n)));
    }
    (0..=max)
        .map(|n| {
            let dim_c = alg.dim.pow(n as u32) * alg.dim;
            let prev = if n == 0 { 0 } else { ranks[n - 1] };
            dim_c - ranks[n] - prev
        })
        .collect()
}

/// Compares the assembled secondary differential with the oracle entrywise.
pub fn compare_differential(ctx: &TripleContext, n: usize) -> Result<(), String> {
    let alg = Algebra::of(ctx);
    let want = hochschild_matrix(&alg, n);
    let got = sechoch::cohomology::differential_matrix(ctx, n);
    if got.nrows() != want.len() || got.ncols() != want.first().map_or(0, |r| r.len()) {
        return Err(format!(
            "shape {}x{} vs {}x{}",
            got.nrows(),
            got.ncols(),
            want.len(),
            want[0].len()
        ));
    }
    for (r, row) in want.iter().enumerate() {
        for (c, w) in row.iter().enumerate() {
            let g = q(&got.get(r, c));
            if &g != w {
                return Err(format!("degree {n}: entry ({r}, {c}) is {g}, oracle says {w}"));
            }
        }
    }
    Ok(())
}
