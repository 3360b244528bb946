//! Seeded verification suites. Each identity is checked by exact cochain
//! equality (or exact coboundary membership) over a number of trials.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::cochains::{domain_dimension, random_cochain, Cochain};
use crate::cohomology::{self, CohomologyError, Limits, Membership};
use crate::io;
use crate::operators::{self as ops, signs, OperatorError};
use crate::scalar::sign;
use crate::structures::{StructureError, TripleContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Complex,
    Hga,
    LemmaDelta,
    LemmaH,
    BvTheorem,
    Classes,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = ["complex", "hga", "lemma-delta", "lemma-h", "bv-theorem", "classes", "all"];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Complex => "complex",
            Suite::Hga => "hga",
            Suite::LemmaDelta => "lemma-delta",
            Suite::LemmaH => "lemma-h",
            Suite::BvTheorem => "bv-theorem",
            Suite::Classes => "classes",
            Suite::All => "all",
        }
    }

    pub fn needs_form(self) -> bool {
        matches!(self, Suite::LemmaDelta | Suite::LemmaH | Suite::BvTheorem | Suite::All)
    }

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::Complex,
                Suite::Hga,
                Suite::LemmaDelta,
                Suite::LemmaH,
                Suite::BvTheorem,
                Suite::Classes,
            ],
            s => vec![s],
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "complex" => Suite::Complex,
            "hga" => Suite::Hga,
            "lemma-delta" => Suite::LemmaDelta,
            "lemma-h" => Suite::LemmaH,
            "bv-theorem" => Suite::BvTheorem,
            "classes" => Suite::Classes,
            "all" => Suite::All,
            _ => return Err(format!("unknown suite `{s}`; expected one of {}", Suite::NAMES.join(", "))),
        })
    }
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("suite {0} needs a bilinear form, but the triple has none")]
    NeedsForm(&'static str),
    #[error("suite {0} needs coefficients M = A")]
    NeedsRegular(&'static str),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub suite: Suite,
    /// Restrict to one degree pair; `None` runs the suite defaults.
    pub degrees: Option<(usize, usize)>,
    pub trials: usize,
    pub seed: u64,
    pub limits: Limits,
    /// Highest `n` for which `δ^{n+1} δ^n = 0` is checked.
    pub complex_max_degree: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            suite: Suite::All,
            degrees: None,
            trials: 5,
            seed: 0,
            limits: Limits::default(),
            complex_max_degree: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub identity: &'static str,
    pub degrees: String,
    pub trials: usize,
    pub passed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Value>,
}

impl CheckResult {
    fn new(suite: Suite, identity: &'static str, degrees: String) -> Self {
        CheckResult {
            suite: suite.name(),
            identity,
            degrees,
            trials: 0,
            passed: 0,
            skipped: None,
            first_failure: None,
            notes: Vec::new(),
            witnesses: Vec::new(),
        }
    }

    pub fn ok(&self) -> bool {
        self.skipped.is_some() || self.passed == self.trials
    }

    fn record(&mut self, trial: usize, outcome: Result<(), String>) {
        self.trials += 1;
        match outcome {
            Ok(()) => self.passed += 1,
            Err(msg) => {
                if self.first_failure.is_none() {
                    self.first_failure = Some(format!("trial {trial}: {msg}"));
                }
            }
        }
    }

    fn skip(mut self, why: String) -> Self {
        self.skipped = Some(why);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: &'static str,
    pub triple_id: String,
    pub field: String,
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(CheckResult::ok)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "# suite={} triple={} field={} seed={} trials={}\n",
            self.suite, self.triple_id, self.field, self.seed, self.trials
        );
        for c in &self.checks {
            let status = match (&c.skipped, c.ok()) {
                (Some(_), _) => "SKIP",
                (None, true) => "PASS",
                (None, false) => "FAIL",
            };
            let _ = write!(s, "{status}\t{}\t{}\t{}\t{}/{}", c.suite, c.identity, c.degrees, c.passed, c.trials);
            if let Some(why) = &c.skipped {
                let _ = write!(s, "\t{why}");
            }
            if let Some(f) = &c.first_failure {
                let _ = write!(s, "\t{f}");
            }
            for n in &c.notes {
                let _ = write!(s, "\t[{n}]");
            }
            s.push('\n');
        }
        s
    }
}

/// Seed of the `slot`-th random input of trial `trial`.
pub fn trial_seed(seed: u64, trial: usize, slot: u64) -> u64 {
    seed.wrapping_mul(1_000_003).wrapping_add(((trial as u64) << 8) | slot)
}

fn compare(lhs: &Cochain, rhs: &Cochain, dim_m: usize) -> Result<(), String> {
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some(c) => Err(format!(
            "first difference at coordinate {c} (domain index {}, component {})",
            c / dim_m,
            c % dim_m
        )),
    }
}

fn coboundary(ctx: &TripleContext, z: &Cochain) -> Result<Result<Membership, String>, VerifyError> {
    let m = cohomology::is_coboundary(ctx, z)?;
    if !m.is_coboundary() {
        return Ok(Err("not a coboundary".into()));
    }
    if !cohomology::verify_witness(ctx, z, &m)? {
        return Ok(Err("witness does not reproduce the cochain".into()));
    }
    Ok(Ok(m))
}

struct Runner<'a> {
    ctx: &'a TripleContext,
    cfg: &'a VerifyConfig,
    out: Vec<CheckResult>,
}

impl<'a> Runner<'a> {
    fn fits(&self, degree: usize) -> bool {
        domain_dimension(self.ctx, degree).saturating_mul(self.ctx.dim_m()) <= self.cfg.limits.max_coordinates
    }

    fn cap_note(&self, degree: usize) -> String {
        format!(
            "resource cap: C^{degree} has {} coordinates > {}",
            domain_dimension(self.ctx, degree).saturating_mul(self.ctx.dim_m()),
            self.cfg.limits.max_coordinates
        )
    }

    fn random(&self, n: usize, trial: usize, slot: u64) -> Cochain {
        random_cochain(self.ctx, n, trial_seed(self.cfg.seed, trial, slot))
    }

    /// A seeded cocycle, or the zero cochain when `Z^n = 0`.
    fn cocycle(&self, basis: &[Cochain], n: usize, trial: usize, slot: u64) -> Cochain {
        if basis.is_empty() {
            return Cochain::zero(self.ctx, n);
        }
        cohomology::combine(self.ctx, n, basis, trial_seed(self.cfg.seed, trial, slot))
    }

    fn pairs(&self, defaults: &[(usize, usize)]) -> Vec<(usize, usize)> {
        match self.cfg.degrees {
            Some(p) => vec![p],
            None => defaults.to_vec(),
        }
    }

    fn complex(&mut self) {
        for n in 0..=self.cfg.complex_max_degree {
            let mut c = CheckResult::new(Suite::Complex, "δ^{n+1} δ^n = 0", format!("n={n}"));
            if !self.fits(n + 2) {
                self.out.push(c.skip(self.cap_note(n + 2)));
                continue;
            }
            let d0 = cohomology::differential_matrix(self.ctx, n);
            let d1 = cohomology::differential_matrix(self.ctx, n + 1);
            let prod = d1.mul(&d0).expect("matching shapes");
            let outcome = if prod.is_zero() {
                Ok(())
            } else {
                let (r, row) = prod.rows().iter().enumerate().find(|(_, r)| !r.is_empty()).unwrap();
                Err(format!("nonzero entry at ({r}, {})", row[0].0))
            };
            c.record(0, outcome);
            self.out.push(c);
        }
    }

    fn hga(&mut self) -> Result<(), VerifyError> {
        let ctx = self.ctx;
        let field = ctx.field();
        let dm = ctx.dim_m();
        let trials = self.cfg.trials;

        let leibniz_pairs = self.pairs(&[(0, 0), (0, 1), (1, 0), (1, 1), (1, 2), (2, 1), (2, 2)]);
        for (n, m) in leibniz_pairs {
            let mut c = CheckResult::new(Suite::Hga, "δ(f·g) = δf·g + (-1)^n f·δg", format!("({n},{m})"));
            if !self.fits(n + m + 1) {
                self.out.push(c.skip(self.cap_note(n + m + 1)));
                continue;
            }
            for t in 0..trials {
                let f = self.random(n, t, 0);
                let g = self.random(m, t, 1);
                let lhs = ops::differential(ctx, &ops::dot(ctx, &f, &g)?)?;
                let mut rhs = ops::dot(ctx, &ops::differential(ctx, &f)?, &g)?;
                rhs.add_scaled(&sign(field, n), &ops::dot(ctx, &f, &ops::differential(ctx, &g)?)?);
                c.record(t, compare(&lhs, &rhs, dm));
            }
            self.out.push(c);
        }

        let pairs = self.pairs(&[(1, 1), (1, 2), (2, 1), (2, 2)]);
        for &(n, m) in &pairs {
            let mut c = CheckResult::new(
                Suite::Hga,
                "δ(f∘g) - δf∘g - (-1)^{n-1} f∘δg = (-1)^{(n-1)(m-1)+1} g·f - f·g",
                format!("({n},{m})"),
            );
            if n == 0 || m == 0 {
                self.out.push(c.skip("needs n, m ≥ 1".into()));
                continue;
            }
            if !self.fits(n + m) {
                self.out.push(c.skip(self.cap_note(n + m)));
                continue;
            }
            for t in 0..trials {
                let f = self.random(n, t, 0);
                let g = self.random(m, t, 1);
                let mut lhs = ops::differential(ctx, &ops::circle(ctx, &f, &g)?)?;
                lhs.add_scaled(&-field.one(), &ops::circle(ctx, &ops::differential(ctx, &f)?, &g)?);
                lhs.add_scaled(&-sign(field, n + 1), &ops::circle(ctx, &f, &ops::differential(ctx, &g)?)?);
                let mut rhs = ops::dot(ctx, &g, &f)?.scale(&sign(field, (n + 1) * (m + 1) + 1));
                rhs.add_scaled(&-field.one(), &ops::dot(ctx, &f, &g)?);
                c.record(t, compare(&lhs, &rhs, dm));
            }
            self.out.push(c);
        }

        // the same identity with the signs that match this δ, · and ∘
        for &(n, m) in &pairs {
            let mut c = CheckResult::new(
                Suite::Hga,
                "δ(f∘g) - (-1)^{m-1} δf∘g - f∘δg = (-1)^m g·f - (-1)^{(n+1)m} f·g",
                format!("({n},{m})"),
            );
            if n == 0 || m == 0 {
                self.out.push(c.skip("needs n, m ≥ 1".into()));
                continue;
            }
            if !self.fits(n + m) {
                self.out.push(c.skip(self.cap_note(n + m)));
                continue;
            }
            for t in 0..trials {
                let f = self.random(n, t, 0);
                let g = self.random(m, t, 1);
                let mut lhs = ops::differential(ctx, &ops::circle(ctx, &f, &g)?)?;
                lhs.add_scaled(&-sign(field, m + 1), &ops::circle(ctx, &ops::differential(ctx, &f)?, &g)?);
                lhs.add_scaled(&-field.one(), &ops::circle(ctx, &f, &ops::differential(ctx, &g)?)?);
                let mut rhs = ops::dot(ctx, &g, &f)?.scale(&sign(field, m));
                rhs.add_scaled(&-sign(field, (n + 1) * m), &ops::dot(ctx, &f, &g)?);
                c.record(t, compare(&lhs, &rhs, dm));
            }
            self.out.push(c);
        }

        for &(n, m) in &pairs {
            let l = 1;
            let mut c = CheckResult::new(
                Suite::Hga,
                "(f·g)∘h = f·(g∘h) + (-1)^{(m-1)(l-1)} (f∘h)·g",
                format!("({n},{m},{l})"),
            );
            if n == 0 || m == 0 {
                self.out.push(c.skip("needs n, m ≥ 1".into()));
                continue;
            }
            if !self.fits(n + m + l - 1) {
                self.out.push(c.skip(self.cap_note(n + m + l - 1)));
                continue;
            }
            for t in 0..trials {
                let f = self.random(n, t, 0);
                let g = self.random(m, t, 1);
                let h = self.random(l, t, 2);
                let lhs = ops::circle(ctx, &ops::dot(ctx, &f, &g)?, &h)?;
                let mut rhs = ops::dot(ctx, &f, &ops::circle(ctx, &g, &h)?)?;
                rhs.add_scaled(&sign(field, (m + 1) * (l + 1)), &ops::dot(ctx, &ops::circle(ctx, &f, &h)?, &g)?);
                c.record(t, compare(&lhs, &rhs, dm));
            }
            self.out.push(c);
        }
        Ok(())
    }

    fn lemma_delta(&mut self) -> Result<(), VerifyError> {
        let ctx = self.ctx;
        for (n, m) in self.pairs(&[(1, 1), (1, 2), (2, 1), (2, 2)]) {
            let mut c = CheckResult::new(Suite::LemmaDelta, "ρ¹(f⊗g) = (-1)^{nm} ρ²(g⊗f)", format!("({n},{m})"));
            if n == 0 || m == 0 {
                self.out.push(c.skip("needs n, m ≥ 1".into()));
                continue;
            }
            if !self.fits(n + m) {
                self.out.push(c.skip(self.cap_note(n + m)));
                continue;
            }
            for t in 0..self.cfg.trials {
                let f = self.random(n, t, 0);
                let g = self.random(m, t, 1);
                let lhs = ops::rho1(ctx, &f, &g)?;
                let rhs = ops::rho2(ctx, &g, &f)?.scale(&sign(ctx.field(), n * m));
                c.record(t, compare(&lhs, &rhs, ctx.dim_m()));
            }
            self.out.push(c);
        }
        Ok(())
    }

    fn basis_note(c: &mut CheckResult, basis: &[Cochain], n: usize) {
        if basis.is_empty() {
            let note = format!("Z^{n} = 0, zero cocycle used");
            if !c.notes.contains(&note) {
                c.notes.push(note);
            }
        }
    }

    fn lemma_h(&mut self) -> Result<(), VerifyError> {
        let ctx = self.ctx;
        let field = ctx.field();
        for (n, m) in self.pairs(&[(1, 1), (1, 2), (2, 2)]) {
            let mut c = CheckResult::new(
                Suite::LemmaH,
                "δH = f∘g - (-1)^{(n-1)m} Δf·g + (-1)^{(n-1)m} ρ²(f⊗g)",
                format!("({n},{m})"),
            );
            if n == 0 || m == 0 {
                self.out.push(c.skip("needs n, m ≥ 1".into()));
                continue;
            }
            if !self.fits(n + m + 1) {
                self.out.push(c.skip(self.cap_note(n + m + 1)));
                continue;
            }
            let bf = cohomology::cocycle_basis(ctx, n);
            let bg = cohomology::cocycle_basis(ctx, m);
            Self::basis_note(&mut c, &bf, n);
            Self::basis_note(&mut c, &bg, m);
            let s = sign(field, signs::bv_prefactor(n, m));
            for t in 0..self.cfg.trials {
                let f = self.cocycle(&bf, n, t, 0);
                let g = self.cocycle(&bg, m, t, 1);
                let lhs = ops::differential(ctx, &ops::homotopy_h(ctx, &f, &g)?)?;
                let mut rhs = ops::circle(ctx, &f, &g)?;
                rhs.add_scaled(&-&s, &ops::dot(ctx, &ops::delta_bv(ctx, &f)?, &g)?);
                rhs.add_scaled(&s, &ops::rho2(ctx, &f, &g)?);
                c.record(t, compare(&lhs, &rhs, ctx.dim_m()));
            }
            self.out.push(c);
        }
        Ok(())
    }

    fn bv_theorem(&mut self) -> Result<(), VerifyError> {
        let ctx = self.ctx;
        for (n, m) in self.pairs(&[(1, 1), (1, 2), (2, 1), (2, 2)]) {
            let deg = format!("({n},{m})");
            let mut cyc = CheckResult::new(Suite::BvTheorem, "δz₂ = 0", deg.clone());
            let mut cls = CheckResult::new(Suite::BvTheorem, "z₁ - z₂ is a coboundary (witness verified)", deg.clone());
            let mut rep = CheckResult::new(Suite::BvTheorem, "verdicts unchanged under f ↦ f + δw", deg.clone());
            let mut variant = CheckResult::new(
                Suite::BvTheorem,
                "report: z₁ - z₂ with Δg·f in place of its commuted form",
                deg,
            );
            if n == 0 || m == 0 {
                for c in [cyc, cls, rep, variant] {
                    self.out.push(c.skip("needs n, m ≥ 1".into()));
                }
                continue;
            }
            if !self.fits(n + m) {
                let why = self.cap_note(n + m);
                for c in [cyc, cls, rep, variant] {
                    self.out.push(c.skip(why.clone()));
                }
                continue;
            }
            let bf = cohomology::cocycle_basis(ctx, n);
            let bg = cohomology::cocycle_basis(ctx, m);
            for c in [&mut cyc, &mut cls, &mut rep] {
                Self::basis_note(c, &bf, n);
                Self::basis_note(c, &bg, m);
            }
            let mut variant_yes = 0;
            for t in 0..self.cfg.trials {
                let f = self.cocycle(&bf, n, t, 0);
                let g = self.cocycle(&bg, m, t, 1);
                let cmp = cohomology::bracket_class_compare(ctx, &f, &g)?;
                cyc.record(t, if cmp.z2_is_cocycle { Ok(()) } else { Err("δz₂ ≠ 0".into()) });
                let base_ok = cmp.difference.is_coboundary() && cmp.witness_verified;
                cls.record(
                    t,
                    if base_ok {
                        Ok(())
                    } else {
                        Err("z₁ - z₂ not a coboundary".into())
                    },
                );
                if let Some(w) = cmp.difference.witness() {
                    cls.witnesses.push(io::cochain_to_json(w));
                }

                let w = self.random(n - 1, t, 2);
                let f2 = f.add(&ops::differential(ctx, &w)?);
                let cmp2 = cohomology::bracket_class_compare(ctx, &f2, &g)?;
                let same_verdict = cmp2.classes_equal() == cmp.classes_equal()
                    && cmp2.variant_difference.is_coboundary() == cmp.variant_difference.is_coboundary();
                let z1_shift = cmp2.z1.sub(&cmp.z1);
                let outcome = if !same_verdict {
                    Err("verdict changed".to_string())
                } else {
                    coboundary(ctx, &z1_shift)?.map(|_| ()).map_err(|e| format!("[f + δw, g] - [f, g]: {e}"))
                };
                rep.record(t, outcome);

                if cmp.variant_difference.is_coboundary() {
                    variant_yes += 1;
                }
                variant.record(t, Ok(()));
            }
            variant
                .notes
                .push(format!("coboundary in {variant_yes}/{} trials", self.cfg.trials));
            for c in [cyc, cls, rep, variant] {
                self.out.push(c);
            }
        }
        Ok(())
    }

    fn classes(&mut self) -> Result<(), VerifyError> {
        let ctx = self.ctx;
        let field = ctx.field();
        for (n, m) in self.pairs(&[(0, 1), (1, 1), (1, 2), (2, 2)]) {
            let mut c = CheckResult::new(Suite::Classes, "f·g - (-1)^{nm} g·f is a coboundary", format!("({n},{m})"));
            if !self.fits(n + m) {
                self.out.push(c.skip(self.cap_note(n + m)));
                continue;
            }
            let bf = cohomology::cocycle_basis(ctx, n);
            let bg = cohomology::cocycle_basis(ctx, m);
            Self::basis_note(&mut c, &bf, n);
            Self::basis_note(&mut c, &bg, m);
            for t in 0..self.cfg.trials {
                let f = self.cocycle(&bf, n, t, 0);
                let g = self.cocycle(&bg, m, t, 1);
                let mut z = ops::dot(ctx, &f, &g)?;
                z.add_scaled(&-sign(field, n * m), &ops::dot(ctx, &g, &f)?);
                c.record(t, coboundary(ctx, &z)?.map(|_| ()));
            }
            self.out.push(c);
        }

        let mut c = CheckResult::new(Suite::Classes, "[[f,g],h] + [[g,h],f] + [[h,f],g] is a coboundary", "(1,1,1)".into());
        if self.fits(2) {
            let b1 = cohomology::cocycle_basis(ctx, 1);
            Self::basis_note(&mut c, &b1, 1);
            for t in 0..self.cfg.trials {
                let f = self.cocycle(&b1, 1, t, 0);
                let g = self.cocycle(&b1, 1, t, 1);
                let h = self.cocycle(&b1, 1, t, 2);
                let br = |x: &Cochain, y: &Cochain| ops::bracket(ctx, x, y);
                let mut z = br(&br(&f, &g)?, &h)?;
                z.add_assign(&br(&br(&g, &h)?, &f)?);
                z.add_assign(&br(&br(&h, &f)?, &g)?);
                c.record(t, coboundary(ctx, &z)?.map(|_| ()));
            }
            self.out.push(c);
        } else {
            self.out.push(c.skip(self.cap_note(2)));
        }

        for (n, m) in self.pairs(&[(1, 1), (1, 2), (2, 1)]) {
            let mut c = CheckResult::new(Suite::Classes, "[f + δw, g] - [f, g] is a coboundary", format!("({n},{m})"));
            if n == 0 || m == 0 {
                self.out.push(c.skip("needs n, m ≥ 1".into()));
                continue;
            }
            if !self.fits(n + m) {
                self.out.push(c.skip(self.cap_note(n + m)));
                continue;
            }
            let bf = cohomology::cocycle_basis(ctx, n);
            let bg = cohomology::cocycle_basis(ctx, m);
            Self::basis_note(&mut c, &bf, n);
            Self::basis_note(&mut c, &bg, m);
            for t in 0..self.cfg.trials {
                let f = self.cocycle(&bf, n, t, 0);
                let g = self.cocycle(&bg, m, t, 1);
                let w = self.random(n - 1, t, 2);
                let f2 = f.add(&ops::differential(ctx, &w)?);
                let z = ops::bracket(ctx, &f2, &g)?.sub(&ops::bracket(ctx, &f, &g)?);
                c.record(t, coboundary(ctx, &z)?.map(|_| ()));
            }
            self.out.push(c);
        }
        Ok(())
    }
}

pub fn run(ctx: &TripleContext, cfg: &VerifyConfig) -> Result<VerifyReport, VerifyError> {
    let name = cfg.suite.name();
    if cfg.suite.needs_form() && ctx.form().is_none() {
        return Err(VerifyError::NeedsForm(name));
    }
    if cfg.suite != Suite::Complex && !ctx.is_regular() {
        return Err(VerifyError::NeedsRegular(name));
    }
    let mut r = Runner {
        ctx,
        cfg,
        out: Vec::new(),
    };
    for s in cfg.suite.members() {
        match s {
            Suite::Complex => r.complex(),
            Suite::Hga => r.hga()?,
            Suite::LemmaDelta => r.lemma_delta()?,
            Suite::LemmaH => r.lemma_h()?,
            Suite::BvTheorem => r.bv_theorem()?,
            Suite::Classes => r.classes()?,
            Suite::All => unreachable!(),
        }
    }
    Ok(VerifyReport {
        suite: name,
        triple_id: io::triple_id(ctx),
        field: ctx.field().to_string(),
        seed: cfg.seed,
        trials: cfg.trials,
        checks: r.out,
    })
}

impl From<StructureError> for VerifyError {
    fn from(e: StructureError) -> Self {
        VerifyError::Operator(OperatorError::Structure(e))
    }
}
