//! Numerical search for curves of class `(1, n)` meeting the branch curve
//! in two simple points and `2n + 1` tangencies.

mod certificate;
mod lines;
mod system;

pub use certificate::{certify, expected_profile, summary, Certificate, CertifyReport, Tolerances};
pub use lines::{exact_tangent_lines, line_discriminant, TangentLine, TangentLines};
use system::norm;
pub use system::{Gauge, NewtonOptions, NewtonRun, NewtonStatus, StartMode, SystemPoint, TangencySystem};

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_xoshiro::SplitMix64;

use crate::forms::FormError;
use crate::quadric::{BiForm, BranchReport, QuadricError};
use crate::severi::SeveriError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SeekerError {
    #[error(transparent)]
    Quadric(#[from] QuadricError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("branch curve is not admissible: {0:?}")]
    Inadmissible(BranchReport),
    #[error("a gauge coefficient vanishes")]
    DegenerateGauge,
    #[error("the line discriminant vanishes identically")]
    ZeroDiscriminant,
    #[error(transparent)]
    Severi(#[from] SeveriError),
    #[error("m must be at least 1")]
    BadM,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeekOptions {
    /// Number of random starts.
    pub seeds: usize,
    /// Seed of the SplitMix64 stream that produces the per-start seeds.
    pub master_seed: u64,
    /// Cap on the total number of Newton iterations over all starts.
    pub budget: Option<usize>,
    pub newton: NewtonOptions,
    pub tolerances: Tolerances,
    /// Distance below which two curves count as the same solution.
    pub dedup_distance: f64,
    /// Report one representative per orbit of the involution.
    pub quotient_sigma: bool,
}

impl Default for SeekOptions {
    fn default() -> Self {
        SeekOptions {
            seeds: 64,
            master_seed: 0,
            budget: None,
            newton: NewtonOptions::default(),
            tolerances: Tolerances::default(),
            dedup_distance: 1e-6,
            quotient_sigma: true,
        }
    }
}

/// Per-start seeds: `count` outputs of SplitMix64 seeded with `master`.
pub fn seed_stream(master: u64, count: usize) -> Vec<u64> {
    let mut rng = SplitMix64::seed_from_u64(master);
    (0..count).map(|_| rng.next_u64()).collect()
}

/// Result of one random start.
#[derive(Clone, Debug, PartialEq)]
pub struct SeedResult {
    pub seed: u64,
    pub status: NewtonStatus,
    pub iterations: usize,
    /// Present when Newton converged; check `report.passed()`.
    pub certificate: Option<Certificate>,
}

/// Newton from the start drawn by `ChaCha8Rng::seed_from_u64(seed)`.
pub fn newton_solve(sys: &TangencySystem, seed: u64, options: &SeekOptions) -> SeedResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = sys.random_start(&mut rng, options.newton.start);
    let run = sys.newton(start, &options.newton);
    let certificate = (run.status == NewtonStatus::Converged)
        .then(|| Certificate::assemble(sys, &run.point, run.gauge, Some(seed), options.tolerances));
    SeedResult { seed, status: run.status, iterations: run.iterations, certificate }
}

/// Distance between the points of projective space spanned by `u` and `v`:
/// the norm of the difference of unit representatives after phase alignment.
pub fn projective_distance(u: &[Complex64], v: &[Complex64]) -> f64 {
    let nu = norm(u);
    let nv = norm(v);
    if nu == 0.0 || nv == 0.0 {
        return if nu == nv { 0.0 } else { f64::INFINITY };
    }
    let ip: Complex64 = u.iter().zip(v).map(|(a, b)| a.conj() * b).sum();
    let phase = if ip.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { ip.conj() / ip.norm() };
    let d2: f64 = u.iter().zip(v).map(|(a, b)| (a / nu - b * phase / nv).norm_sqr()).sum();
    libm::sqrt(d2)
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SeekOutcome {
    pub m: u32,
    /// Distinct certified solutions, in seed order.
    pub certificates: Vec<Certificate>,
    pub attempted: usize,
    pub iterations: usize,
    pub budget_exhausted: bool,
    pub status_counts: BTreeMap<NewtonStatus, usize>,
    /// Converged starts that failed certification, by failed check.
    pub rejections: BTreeMap<&'static str, usize>,
    pub certified: usize,
    pub duplicates: usize,
    /// Solutions dropped because their image under the involution was kept.
    pub sigma_duplicates: usize,
    /// Kept solutions that are their own image under the involution.
    pub sigma_fixed: usize,
}

/// Folds seed results, in seed order, into a `SeekOutcome`. Results are
/// independent of how they were computed, so a parallel driver that pushes
/// them in seed order gets the sequential answer.
#[derive(Clone, Debug)]
pub struct SeekMerger {
    options: SeekOptions,
    outcome: SeekOutcome,
}

impl SeekMerger {
    pub fn new(m: u32, options: &SeekOptions) -> Self {
        SeekMerger { options: *options, outcome: SeekOutcome { m, ..Default::default() } }
    }

    pub fn is_done(&self) -> bool {
        self.outcome.budget_exhausted
    }

    /// Adds the next result; returns `false` once the budget is spent.
    pub fn push(&mut self, r: SeedResult) -> bool {
        if self.is_done() {
            return false;
        }
        let out = &mut self.outcome;
        if let Some(budget) = self.options.budget {
            if out.iterations + r.iterations > budget {
                out.budget_exhausted = true;
                return false;
            }
        }
        out.attempted += 1;
        out.iterations += r.iterations;
        *out.status_counts.entry(r.status).or_default() += 1;
        if let Some(cert) = r.certificate {
            let failures = cert.report.failures();
            if failures.is_empty() {
                out.certified += 1;
                self.keep(cert);
            } else {
                for f in failures {
                    *self.outcome.rejections.entry(f).or_default() += 1;
                }
            }
        }
        true
    }

    fn keep(&mut self, cert: Certificate) {
        let eps = self.options.dedup_distance;
        let v = cert.curve_direction();
        let out = &mut self.outcome;
        if out.certificates.iter().any(|k| projective_distance(&k.curve_direction(), &v) < eps) {
            out.duplicates += 1;
            return;
        }
        let w = cert.curve.sigma_act().coefficient_vector();
        if self.options.quotient_sigma && out.certificates.iter().any(|k| projective_distance(&k.curve_direction(), &w) < eps)
        {
            out.sigma_duplicates += 1;
            return;
        }
        if projective_distance(&v, &w) < eps {
            out.sigma_fixed += 1;
        }
        out.certificates.push(cert);
    }

    pub fn finish(self) -> SeekOutcome {
        self.outcome
    }
}

/// Searches for curves of class `(1, m - 1)` with contact profile
/// `{1, 1, 2^(2m-1)}`. For `m = 1` the lines are found from the
/// discriminant instead of by random starts, and all of them are returned.
pub fn seek(b: &BiForm, m: u32, options: &SeekOptions) -> Result<SeekOutcome, SeekerError> {
    match m {
        0 => Err(SeekerError::BadM),
        1 => {
            let found = exact_tangent_lines(b, &options.tolerances)?;
            let mut out = SeekOutcome { m, attempted: found.roots.len(), ..Default::default() };
            out.certified = found.lines.len();
            out.certificates = found.lines.into_iter().filter(|l| l.member).map(|l| l.certificate).collect();
            Ok(out)
        }
        m => {
            let sys = TangencySystem::build(b, m as usize - 1)?;
            let mut merger = SeekMerger::new(m, options);
            for seed in seed_stream(options.master_seed, options.seeds) {
                if !merger.push(newton_solve(&sys, seed, options)) {
                    break;
                }
            }
            Ok(merger.finish())
        }
    }
}
